//! The palindrome index: size-classed queues of explicit locally maximal
//! palindromes and periodic palindromes clusters, maintained under
//! single-character substitutions.
//!
//! Every maximal palindrome of the current text is present either explicitly
//! in some `Q[i]` or implicitly as a lattice prefix/suffix of some cluster.
//! A substitution at `x` touches O(1) stored elements per class: explicit
//! palindromes are re-measured at their centers, clusters are cut, extended,
//! or exploded, and every re-measured palindrome is re-inserted through the
//! containment-resolving insert, which is where clusters are born.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::cluster::{lattice_top, other_side_len, Cluster};
use crate::error::{internal, Error, Result};
use crate::hashed_text::DynamicText;
use crate::lce::{self, Center};
use crate::oracle;
use crate::schedule::ClassSchedule;

/// An explicit locally maximal palindrome, as a closed 1-based interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lmp {
    pub start: usize,
    pub end: usize,
}

impl Lmp {
    pub fn new(start: usize, end: usize) -> Lmp {
        Lmp { start, end }
    }

    /// Interval length; never zero, palindromes here have length >= 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    /// Center encoded as `start + end`; even values are character centers,
    /// odd values are gaps.
    pub fn center_id(&self) -> usize {
        self.start + self.end
    }

    pub fn contains(&self, other: &Lmp) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// Theorem-level period formula for a nested pair of same-class maximal
/// palindromes: after reflecting `inner` to the instance left of the
/// container's center, the symmetric trim of the container is periodic with
/// period `|container| - |inner| - 2d`, `d` the start distance.
pub fn nested_pair_period(container: Lmp, inner: Lmp) -> Option<usize> {
    if !container.contains(&inner) || container == inner {
        return None;
    }
    let inner = if inner.center_id() > container.center_id() {
        Lmp {
            start: container.start + (container.end - inner.end),
            end: container.end - (inner.start - container.start),
        }
    } else {
        inner
    };
    if inner.center_id() == container.center_id() {
        return None;
    }
    let d = inner.start - container.start;
    let diff = container.len() - inner.len();
    if diff > 2 * d {
        Some(diff - 2 * d)
    } else {
        None
    }
}

#[derive(Default)]
struct LmpQueue {
    set: BTreeSet<(usize, usize)>,
    by_len: BTreeSet<(usize, Reverse<usize>)>,
}

#[derive(Default)]
struct CppQueue {
    map: BTreeMap<(usize, usize), Cluster>,
    /// `(end, start)` for suffix-aligned lookups.
    by_end: BTreeSet<(usize, usize)>,
    /// `(repr_len, Reverse(repr_start), start, end)`.
    by_len: BTreeSet<(usize, Reverse<usize>, usize, usize)>,
}

/// The full structure over one mutable text.
pub struct PalindromeIndex {
    text: DynamicText,
    schedule: ClassSchedule,
    q: Vec<LmpQueue>,
    q_nonempty: BTreeSet<usize>,
    cpp: Vec<CppQueue>,
    cpp_nonempty: BTreeSet<usize>,
    queue_ops: u64,
    updates: u64,
}

impl PalindromeIndex {
    /// Builds the index by enumerating all maximal palindromes of `input` and
    /// inserting them longest-first through the containment-resolving path.
    pub fn build(input: &[u8], seed: u64) -> PalindromeIndex {
        let text = DynamicText::new(input, seed);
        let schedule = ClassSchedule::new(input.len());
        let classes = schedule.classes();
        let mut idx = PalindromeIndex {
            text,
            schedule,
            q: (0..classes).map(|_| LmpQueue::default()).collect(),
            q_nonempty: BTreeSet::new(),
            cpp: (0..classes).map(|_| CppQueue::default()).collect(),
            cpp_nonempty: BTreeSet::new(),
            queue_ops: 0,
            updates: 0,
        };
        let report = oracle::all_maximal_palindromes_fast(input);
        let mut pals: Vec<Lmp> =
            report.palindromes.iter().map(|&(s, e)| Lmp::new(s, e)).collect();
        pals.sort_by_key(|l| (Reverse(l.len()), l.start));
        for p in pals {
            idx.insert_candidate(p, &[])
                .expect("inserting oracle-enumerated palindromes cannot fail");
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &DynamicText {
        &self.text
    }

    pub fn schedule(&self) -> &ClassSchedule {
        &self.schedule
    }

    /// Enables character-level verification of every fingerprint decision.
    pub fn set_verify(&mut self, on: bool) {
        self.text.set_verify(on);
    }

    /// Cumulative ordered-queue operations.
    pub fn queue_ops(&self) -> u64 {
        self.queue_ops
    }

    /// Cumulative fingerprint comparisons (the unit of LCE work).
    pub fn lce_ops(&self) -> u64 {
        self.text.cmp_count()
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }

    pub fn collisions(&self) -> u64 {
        self.text.collision_count()
    }

    pub fn reset_counters(&mut self) {
        self.queue_ops = 0;
        self.updates = 0;
        self.text.reset_cmp_count();
    }

    /// `(start, length)` of the longest palindromic substring, smallest start
    /// on ties.
    pub fn longest(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None; // (len, start)
        let better = |best: &Option<(usize, usize)>, len: usize, start: usize| {
            best.is_none_or(|(bl, bs)| len > bl || (len == bl && start < bs))
        };
        for &i in &self.q_nonempty {
            if let Some(&(len, Reverse(start))) = self.q[i].by_len.last() {
                if better(&best, len, start) {
                    best = Some((len, start));
                }
            }
        }
        for &i in &self.cpp_nonempty {
            if let Some(&(len, Reverse(start), _, _)) = self.cpp[i].by_len.last() {
                if better(&best, len, start) {
                    best = Some((len, start));
                }
            }
        }
        best.map(|(len, start)| (start, len))
    }

    /// Every maximal palindrome of the current text: the union of all
    /// explicit entries and all cluster-represented intervals, deduplicated.
    /// Test surface; costs time linear in the number of palindromes.
    pub fn all_maximal_palindromes(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for q in &self.q {
            for &(s, e) in &q.set {
                out.insert((s, e));
            }
        }
        for cq in &self.cpp {
            for k in cq.map.values() {
                let len = k.len();
                // the whole-run lattice value is a maximal palindrome only
                // when the characters flanking the run differ
                let full_ok = !self.text.flank_eq(k.start - 1, k.end + 1);
                for m in k.prefix_lens(1, k.mpp()) {
                    if m == len && !full_ok {
                        continue;
                    }
                    out.insert((k.start, k.start + m - 1));
                }
                for m in k.suffix_lens(1, k.mps()) {
                    if m == len && !full_ok {
                        continue;
                    }
                    out.insert((k.end + 1 - m, k.end));
                }
            }
        }
        out
    }

    /// `(start, end, period)` of every stored cluster. Test surface.
    pub fn cluster_intervals(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for cq in &self.cpp {
            for k in cq.map.values() {
                out.push((k.start, k.end, k.period));
            }
        }
        out.sort_unstable();
        out
    }

    /// Substitutes `c` at position `x` and restores every invariant.
    pub fn substitute(&mut self, x: usize, c: u8) -> Result<()> {
        let n = self.text.len();
        if x == 0 || x > n {
            return Err(Error::OutOfRange { pos: x, len: n });
        }
        self.updates += 1;
        if self.text.char_at(x)? == c {
            return Ok(());
        }
        self.text.substitute_char(x, c)?;

        let mut centers: BTreeSet<usize> = BTreeSet::new();

        // explicit palindromes whose interval or flank meets x
        let q_classes: Vec<usize> = self.q_nonempty.iter().copied().collect();
        for i in q_classes {
            let lo = x.saturating_sub(self.schedule.upper(i) + 1);
            self.queue_ops += 1;
            let touched: Vec<(usize, usize)> = self.q[i]
                .set
                .range((lo, 0)..=(x + 1, usize::MAX))
                .filter(|&&(_, e)| e + 1 >= x)
                .copied()
                .collect();
            for key in touched {
                self.remove_lmp(i, key);
                centers.insert(key.0 + key.1);
            }
        }

        // clusters whose run or flank meets x
        let k_classes: Vec<usize> = self.cpp_nonempty.iter().copied().collect();
        let mut touched_clusters: Vec<Cluster> = Vec::new();
        for i in k_classes {
            let lo = x.saturating_sub(2 * self.schedule.upper(i) + 1);
            self.queue_ops += 1;
            let touched: Vec<Cluster> = self.cpp[i]
                .map
                .range((lo, 0)..=(x + 1, usize::MAX))
                .map(|(_, k)| *k)
                .filter(|k| k.end + 1 >= x)
                .collect();
            for k in touched {
                self.remove_cluster_entry(i, &k);
                touched_clusters.push(k);
            }
        }
        for k in touched_clusters {
            self.process_touched_cluster(k, x, &mut centers)?;
        }

        // the three centers meeting x itself
        centers.insert(2 * x);
        if x >= 2 {
            centers.insert(2 * x - 1);
        }
        if x < n {
            centers.insert(2 * x + 1);
        }

        // re-measure every collected center against the new text
        let mut results: Vec<Lmp> = Vec::with_capacity(centers.len());
        for id in centers {
            if let Some(lmp) = self.probe(id)? {
                results.push(lmp);
            }
        }
        results.sort_by_key(|l| (Reverse(l.len()), l.start));
        let pending = results.clone();
        for lmp in results {
            self.insert_candidate(lmp, &pending)?;
        }
        Ok(())
    }

    fn probe(&self, center_id: usize) -> Result<Option<Lmp>> {
        Ok(lce::max_palindrome(&self.text, Center::from_id(center_id))?
            .map(|(s, e)| Lmp::new(s, e)))
    }

    fn class_of_len(&self, len: usize) -> Result<usize> {
        self.schedule
            .class_of(len)
            .map_err(|_| internal(format!("length {len} outside the class schedule")))
    }

    /// A cut or extended cluster: re-measure the maximal palindromes at its
    /// prefix/suffix lattice tops. Those are the only represented palindromes
    /// that can outgrow the run.
    fn emit_cluster_probes(&self, k: &Cluster, centers: &mut BTreeSet<usize>) {
        centers.insert(2 * k.start + k.mpp() - 1);
        centers.insert(2 * k.end + 1 - k.mps());
    }

    /// Cheap runtime validation of a cluster about to be stored: the run is
    /// periodic and maximal, and both lattice tops are palindromes. Each check
    /// is O(1) fingerprint work.
    fn verify_cluster(&self, k: &Cluster) -> Result<()> {
        if k.period == 0 || k.len() < 2 * k.period {
            return Err(internal(format!("cluster {k:?} shorter than two periods")));
        }
        let (mpp, mps) = (k.mpp(), k.mps());
        if mpp == 0 || mps == 0 {
            return Err(internal(format!("cluster {k:?} has an empty lattice")));
        }
        if !self.text.eq_fwd(k.start, k.start + k.period, k.len() - k.period) {
            return Err(internal(format!("cluster {k:?} is not periodic")));
        }
        if !self.text.is_palindrome(k.start, k.start + mpp - 1)
            || !self.text.is_palindrome(k.end + 1 - mps, k.end)
        {
            return Err(internal(format!("cluster {k:?} lattice top is not a palindrome")));
        }
        if self.text.flank_eq(k.start - 1, k.start - 1 + k.period)
            || self.text.flank_eq(k.end + 1, k.end + 1 - k.period)
        {
            return Err(internal(format!("cluster {k:?} run is not maximal")));
        }
        Ok(())
    }

    /// Applies a substitution at `x` to one stored cluster: extension when `x`
    /// repairs a flank, a symmetric cut when `x` lands inside, explosion into
    /// probe centers when a piece drops under two periods.
    fn process_touched_cluster(
        &mut self,
        k: Cluster,
        x: usize,
        centers: &mut BTreeSet<usize>,
    ) -> Result<()> {
        let p = k.period;
        if x + 1 == k.start || x == k.end + 1 {
            let extends = if x == k.end + 1 {
                self.text.flank_eq(x, x - p)
            } else {
                self.text.flank_eq(x, x + p)
            };
            let k2 = if !extends {
                k
            } else if x == k.end + 1 {
                let ext = lce::lcp(&self.text, k.start, k.start + p)?;
                let end = k.start + p - 1 + ext;
                let len = end - k.start + 1;
                let mpp = lattice_top(k.r_p, p, len);
                let r_s = other_side_len(len, p, mpp) % p;
                Cluster { start: k.start, end, period: p, r_p: k.r_p, r_s }
            } else {
                let ext = lce::lcs_back(&self.text, k.end - p, k.end)?;
                let start = k.end - p - ext + 1;
                let len = k.end - start + 1;
                let mps = lattice_top(k.r_s, p, len);
                let r_p = other_side_len(len, p, mps) % p;
                Cluster { start, end: k.end, period: p, r_p, r_s: k.r_s }
            };
            self.verify_cluster(&k2)?;
            self.emit_cluster_probes(&k2, centers);
            return self.insert_cluster(k2);
        }

        debug_assert!(k.start <= x && x <= k.end);
        // left piece [k.start ..= x-1]
        let llen = x - k.start;
        if llen >= 2 * p {
            let mpp = lattice_top(k.r_p, p, llen);
            let r_s = other_side_len(llen, p, mpp) % p;
            let piece = Cluster { start: k.start, end: x - 1, period: p, r_p: k.r_p, r_s };
            self.verify_cluster(&piece)?;
            self.emit_cluster_probes(&piece, centers);
            self.insert_cluster(piece)?;
        } else if llen >= 1 {
            // explode: probe every represented center that can land in the
            // piece, whether its palindrome survives untouched or trimmed
            for m in k.prefix_lens(1, (2 * llen - 1).min(k.mpp())) {
                centers.insert(2 * k.start + m - 1);
            }
            for m in k.suffix_lens(2 * (k.end - x) + 1, k.mps()) {
                centers.insert(2 * k.end + 1 - m);
            }
        }
        // right piece [x+1 ..= k.end]
        let rlen = k.end - x;
        if rlen >= 2 * p {
            let mps = lattice_top(k.r_s, p, rlen);
            let r_p = other_side_len(rlen, p, mps) % p;
            let piece = Cluster { start: x + 1, end: k.end, period: p, r_p, r_s: k.r_s };
            self.verify_cluster(&piece)?;
            self.emit_cluster_probes(&piece, centers);
            self.insert_cluster(piece)?;
        } else if rlen >= 1 {
            for m in k.suffix_lens(1, (2 * rlen - 1).min(k.mps())) {
                centers.insert(2 * k.end + 1 - m);
            }
            for m in k.prefix_lens(2 * (x - k.start) + 1, k.mpp()) {
                centers.insert(2 * k.start + m - 1);
            }
        }
        Ok(())
    }

    /// Inserts one maximal palindrome of the current text. A candidate that a
    /// cluster already represents is dropped; a same-class containment with a
    /// stored entry spawns (or refreshes) the periodic cluster instead.
    fn insert_candidate(&mut self, p: Lmp, pending: &[Lmp]) -> Result<()> {
        let class = self.class_of_len(p.len())?;

        // already implied by a stored cluster?
        let upper: Vec<usize> = self.cpp_nonempty.range(class..).copied().collect();
        for j in upper {
            self.queue_ops += 2;
            for (_, k) in self.cpp[j].map.range((p.start, 0)..=(p.start, usize::MAX)) {
                if k.represents(p.start, p.end) {
                    return Ok(());
                }
            }
            for &(e, s) in self.cpp[j].by_end.range((p.end, 0)..=(p.end, usize::MAX)) {
                if self.cpp[j].map[&(s, e)].represents(p.start, p.end) {
                    return Ok(());
                }
            }
        }

        self.queue_ops += 1;
        if self.q[class].set.contains(&(p.start, p.end)) {
            return Ok(());
        }

        // the only queue entry that can contain p is the predecessor of its
        // start; the only entries p can contain begin at its successor
        self.queue_ops += 1;
        let pred = self.q[class].set.range(..=(p.start, usize::MAX)).next_back().copied();
        if let Some((s, e)) = pred {
            let cand = Lmp::new(s, e);
            if cand.contains(&p) {
                return self.resolve_containment(cand, p, true, pending);
            }
        }
        self.queue_ops += 1;
        let succ = self.q[class].set.range((p.start, 0)..).next().copied();
        if let Some((s, e)) = succ {
            let cand = Lmp::new(s, e);
            if p.contains(&cand) {
                return self.resolve_containment(p, cand, false, pending);
            }
        }

        self.insert_lmp(class, p);
        Ok(())
    }

    /// Turns a nested same-class pair into its periodic palindromes cluster,
    /// removing every queue entry the new cluster represents.
    fn resolve_containment(
        &mut self,
        container: Lmp,
        inner: Lmp,
        container_in_queue: bool,
        pending: &[Lmp],
    ) -> Result<()> {
        let class = self.class_of_len(container.len())?;
        let k = self.form_cluster(container, inner, pending)?;

        self.queue_ops += 1;
        let doomed: Vec<(usize, usize)> = self.q[class]
            .set
            .range((k.start, 0)..=(k.end, usize::MAX))
            .filter(|&&(s, e)| e <= k.end && k.represents(s, e))
            .copied()
            .collect();
        for key in doomed {
            self.remove_lmp(class, key);
        }
        self.insert_cluster(k)?;

        if !k.represents(inner.start, inner.end) {
            return Err(internal(format!("inner palindrome {inner:?} escaped cluster {k:?}")));
        }
        if !k.represents(container.start, container.end) {
            if container.start >= k.start && container.end <= k.end {
                return Err(internal(format!(
                    "container {container:?} inside run of {k:?} but unrepresented"
                )));
            }
            // the container outgrows the run (e.g. "baaaab" around an "aaaa"
            // run); it stays an explicit entry
            if !container_in_queue {
                self.insert_lmp(class, container);
            }
        }
        Ok(())
    }

    /// Theorem-formula core, minimal period, run extension, and residue
    /// derivation for a brand-new cluster.
    fn form_cluster(&mut self, container: Lmp, inner: Lmp, pending: &[Lmp]) -> Result<Cluster> {
        let class = self.class_of_len(container.len())?;
        let q0 = nested_pair_period(container, inner)
            .ok_or_else(|| internal(format!("bad nested pair {container:?} / {inner:?}")))?;
        if q0 > self.schedule.window(class) {
            return Err(internal(format!(
                "pair period {q0} exceeds window {} of class {class}",
                self.schedule.window(class)
            )));
        }
        let inner_left = if inner.center_id() > container.center_id() {
            Lmp {
                start: container.start + (container.end - inner.end),
                end: container.end - (inner.start - container.start),
            }
        } else {
            inner
        };
        let d = inner_left.start - container.start;
        let c0 = Lmp::new(container.start + d, container.end - d);
        let p = self.find_cpp_period(container, c0, q0, pending)?;

        // run extent under the current text: one LCE per direction
        let ext_r = lce::lcp(&self.text, c0.start, c0.start + p)?;
        let end = c0.start + p - 1 + ext_r;
        let ext_l = lce::lcs_back(&self.text, c0.end - p, c0.end)?;
        let start = c0.end - p - ext_l + 1;
        if start > c0.start || end < c0.end {
            return Err(internal("periodic run does not cover its own core"));
        }

        let m0 = lce::max_palindrome(&self.text, Center::of_interval(c0.start, c0.end))?
            .ok_or_else(|| internal("cluster core has an empty center"))?;
        let (lp, ls) = self.derive_remainders(start, end, p, m0)?;
        let k = Cluster { start, end, period: p, r_p: lp % p, r_s: ls % p };
        self.verify_cluster(&k)?;
        Ok(k)
    }

    /// Palindromic prefix/suffix lengths of the run `[s..=e]` with minimal
    /// period `p`, given the maximal palindrome `m` around the core's center.
    /// A palindrome inside a run extends symmetrically until it meets a run
    /// boundary, so `m` reaches at least one boundary; clamping it back to the
    /// run yields one side, and sliding that palindrome period by period
    /// yields the other.
    fn derive_remainders(
        &self,
        s: usize,
        e: usize,
        p: usize,
        m: (usize, usize),
    ) -> Result<(usize, usize)> {
        let len = e - s + 1;
        let (ms, me) = m;
        if ms > s && me < e {
            return Err(internal("palindrome strictly inside a run reached no boundary"));
        }
        let c2 = ms + me;
        let rc2 = s + e;
        let (lp, ls) = if c2 < rc2 {
            if c2 < 2 * s {
                return Err(internal("core palindrome left of its run"));
            }
            let lp = c2 + 1 - 2 * s;
            (lp, other_side_len(len, p, lp))
        } else if c2 > rc2 {
            if 2 * e < c2 {
                return Err(internal("core palindrome right of its run"));
            }
            let ls = 2 * e + 1 - c2;
            (other_side_len(len, p, ls), ls)
        } else {
            (len, len)
        };
        if lp == 0 || lp > len || ls == 0 || ls > len {
            return Err(internal("derived palindrome lengths out of range"));
        }
        if !self.text.is_palindrome(s, s + lp - 1) || !self.text.is_palindrome(e + 1 - ls, e) {
            return Err(internal("derived palindrome lengths failed verification"));
        }
        Ok((lp, ls))
    }

    /// Minimal period of the periodic core `c0`. Collects a Theorem-formula
    /// candidate from every same-class palindrome that could be the largest
    /// one nested in `container` — queue successors, pending re-measurements,
    /// and the lattice tops of nearby clusters — then drives the minimum down
    /// its divisor chain with one LCE test per prime factor.
    fn find_cpp_period(
        &mut self,
        container: Lmp,
        c0: Lmp,
        q0: usize,
        pending: &[Lmp],
    ) -> Result<usize> {
        let class = self.class_of_len(container.len())?;
        let mut candidates: Vec<Lmp> = Vec::new();

        self.queue_ops += 1;
        let succs: Vec<Lmp> = self.q[class]
            .set
            .range((container.start, 0)..)
            .take(4)
            .map(|&(s, e)| Lmp::new(s, e))
            .collect();
        candidates.extend(succs);
        candidates.extend(pending.iter().copied());

        let w = self.schedule.window(class);
        let upper: Vec<usize> = self.cpp_nonempty.range(class..).copied().collect();
        for j in upper {
            self.queue_ops += 2;
            let starting: Vec<Cluster> = self.cpp[j]
                .map
                .range((container.start, 0)..=(container.start + w, usize::MAX))
                .take(4)
                .map(|(_, k)| *k)
                .collect();
            for k in starting {
                let cap = (container.end + 1).saturating_sub(k.start).min(k.mpp());
                let mut m = lattice_top(k.r_p, k.period, cap);
                if m >= 1 && Lmp::new(k.start, k.start + m - 1) == container {
                    m = m.saturating_sub(k.period);
                }
                if m >= 1 {
                    candidates.push(Lmp::new(k.start, k.start + m - 1));
                }
            }
            let lo = container.end.saturating_sub(w);
            let ending: Vec<(usize, usize)> = self.cpp[j]
                .by_end
                .range((lo, 0)..=(container.end, usize::MAX))
                .rev()
                .take(4)
                .copied()
                .collect();
            for (e2, s2) in ending {
                let k = self.cpp[j].map[&(s2, e2)];
                let cap = (k.end + 1).saturating_sub(container.start).min(k.mps());
                let mut m = lattice_top(k.r_s, k.period, cap);
                if m >= 1 && Lmp::new(k.end + 1 - m, k.end) == container {
                    m = m.saturating_sub(k.period);
                }
                if m >= 1 {
                    candidates.push(Lmp::new(k.end + 1 - m, k.end));
                }
            }
        }

        let mut best = q0;
        for cand in candidates {
            if self.schedule.class_of(cand.len()) != Ok(class) {
                continue;
            }
            if let Some(q) = nested_pair_period(container, cand) {
                if q < best && self.is_core_period(c0, q)? {
                    best = q;
                }
            }
        }

        // the minimal period divides every collected period; walk down
        let mut p = best;
        'reduce: loop {
            for f in distinct_prime_factors(p) {
                if self.is_core_period(c0, p / f)? {
                    p /= f;
                    continue 'reduce;
                }
            }
            break;
        }
        Ok(p)
    }

    fn is_core_period(&self, c0: Lmp, d: usize) -> Result<bool> {
        if d == 0 || 2 * d > c0.len() {
            return Ok(false);
        }
        Ok(lce::lcp(&self.text, c0.start, c0.start + d)? >= c0.len() - d)
    }

    fn insert_lmp(&mut self, class: usize, p: Lmp) {
        self.queue_ops += 2;
        self.q[class].set.insert((p.start, p.end));
        self.q[class].by_len.insert((p.len(), Reverse(p.start)));
        self.q_nonempty.insert(class);
    }

    fn remove_lmp(&mut self, class: usize, key: (usize, usize)) {
        self.queue_ops += 2;
        self.q[class].set.remove(&key);
        self.q[class].by_len.remove(&(key.1 - key.0 + 1, Reverse(key.0)));
        if self.q[class].set.is_empty() {
            self.q_nonempty.remove(&class);
        }
    }

    fn insert_cluster(&mut self, k: Cluster) -> Result<()> {
        let class = self.class_of_len(k.repr_len())?;
        let key = (k.start, k.end);
        self.queue_ops += 1;
        if let Some(&old) = self.cpp[class].map.get(&key) {
            if old == k {
                return Ok(());
            }
            self.remove_cluster_entry(class, &old);
        }
        self.queue_ops += 3;
        self.cpp[class].map.insert(key, k);
        self.cpp[class].by_end.insert((k.end, k.start));
        self.cpp[class].by_len.insert((k.repr_len(), Reverse(k.repr_start()), k.start, k.end));
        self.cpp_nonempty.insert(class);
        Ok(())
    }

    fn remove_cluster_entry(&mut self, class: usize, k: &Cluster) {
        self.queue_ops += 3;
        self.cpp[class].map.remove(&(k.start, k.end));
        self.cpp[class].by_end.remove(&(k.end, k.start));
        self.cpp[class].by_len.remove(&(k.repr_len(), Reverse(k.repr_start()), k.start, k.end));
        if self.cpp[class].map.is_empty() {
            self.cpp_nonempty.remove(&class);
        }
    }

    /// Structural self-check: queue classing and non-containment, cluster
    /// validity, cache consistency. Test and verify-mode surface.
    pub fn validate(&self) -> Result<()> {
        for (i, q) in self.q.iter().enumerate() {
            let mut prev: Option<(usize, usize)> = None;
            let mut max_end = 0usize;
            for &(s, e) in &q.set {
                if self.schedule.class_of(e - s + 1) != Ok(i) {
                    return Err(internal(format!("Q[{i}] holds misclassed ({s},{e})")));
                }
                if let Some((ps, _)) = prev {
                    if ps == s {
                        return Err(internal(format!("Q[{i}] same-start pair at ({s},{e})")));
                    }
                }
                if prev.is_some() && max_end >= e {
                    return Err(internal(format!("Q[{i}] containment at ({s},{e})")));
                }
                if !self.text.is_palindrome(s, e) {
                    return Err(internal(format!("Q[{i}] entry ({s},{e}) is not a palindrome")));
                }
                if self.text.flank_eq(s - 1, e + 1) {
                    return Err(internal(format!("Q[{i}] entry ({s},{e}) is not maximal")));
                }
                max_end = max_end.max(e);
                prev = Some((s, e));
            }
            if q.set.len() != q.by_len.len() {
                return Err(internal(format!("Q[{i}] cache size mismatch")));
            }
            let want = q.set.iter().map(|&(s, e)| (e - s + 1, Reverse(s))).max();
            if want.as_ref() != q.by_len.last() {
                return Err(internal(format!("Q[{i}] cached maximum is stale")));
            }
            if q.set.is_empty() != !self.q_nonempty.contains(&i) {
                return Err(internal(format!("Q[{i}] emptiness cache is stale")));
            }
        }
        for (i, cq) in self.cpp.iter().enumerate() {
            let entries: Vec<Cluster> = cq.map.values().copied().collect();
            for (idx_a, a) in entries.iter().enumerate() {
                if (a.start, a.end) != *cq.map.keys().nth(idx_a).unwrap() {
                    return Err(internal("cluster key mismatch".to_string()));
                }
                self.verify_cluster(a)?;
                if self.schedule.class_of(a.repr_len()) != Ok(i) {
                    return Err(internal(format!("CPP[{i}] holds misclassed {a:?}")));
                }
                if a.len() <= 64 {
                    let bytes: Vec<u8> =
                        (a.start..=a.end).map(|p| self.text.char_at(p).unwrap()).collect();
                    if oracle::minimal_period(&bytes) != a.period {
                        return Err(internal(format!("CPP[{i}] {a:?} period is not minimal")));
                    }
                }
                for b in &entries[idx_a + 1..] {
                    if (a.start <= b.start && b.end <= a.end)
                        || (b.start <= a.start && a.end <= b.end)
                    {
                        return Err(internal(format!("CPP[{i}] nested clusters {a:?} / {b:?}")));
                    }
                }
            }
            if cq.map.len() != cq.by_end.len() || cq.map.len() != cq.by_len.len() {
                return Err(internal(format!("CPP[{i}] cache size mismatch")));
            }
            if cq.map.is_empty() != !self.cpp_nonempty.contains(&i) {
                return Err(internal(format!("CPP[{i}] emptiness cache is stale")));
            }
        }
        Ok(())
    }

    /// Human-readable structure dump for verify-mode diagnostics.
    pub fn dump_state(&self) -> String {
        let mut out = String::new();
        let bytes = self.text.as_bytes();
        let shown = String::from_utf8_lossy(&bytes[..bytes.len().min(200)]);
        let _ = writeln!(out, "text (len {}): {:?}{}", bytes.len(), shown, if bytes.len() > 200 { "…" } else { "" });
        for (i, q) in self.q.iter().enumerate() {
            if q.set.is_empty() {
                continue;
            }
            let _ = writeln!(out, "Q[{i}] ({}..{}): {:?}", self.schedule.lower(i), self.schedule.upper(i), q.set);
        }
        for (i, cq) in self.cpp.iter().enumerate() {
            if cq.map.is_empty() {
                continue;
            }
            let _ = write!(out, "CPP[{i}]:");
            for k in cq.map.values() {
                let _ = write!(
                    out,
                    " [{}..{}] p={} r_p={} r_s={};",
                    k.start, k.end, k.period, k.r_p, k.r_s
                );
            }
            let _ = writeln!(out);
        }
        out
    }
}

fn distinct_prime_factors(mut x: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= x {
        if x.is_multiple_of(f) {
            out.push(f);
            while x.is_multiple_of(f) {
                x /= f;
            }
        }
        f += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}
