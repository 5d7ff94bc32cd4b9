//! Integer-safe exponential size classes.
//!
//! Thresholds follow `t_0 = 1`, `t_{i+1} = t_i + max(1, t_i / 8)`; class i
//! holds lengths in `[t_i, t_{i+1})`. The within-class ratio never exceeds
//! 9/8, so every window/periodicity lemma stated for ratio 1 + 1/7 applies
//! with slack, and no floating point is involved anywhere.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ClassSchedule {
    /// `thresholds[i] = t_i`; the last entry is the first threshold beyond
    /// the maximum supported length.
    thresholds: Vec<usize>,
}

impl ClassSchedule {
    /// Schedule covering lengths `1..=max_len`.
    pub fn new(max_len: usize) -> Self {
        let mut thresholds = vec![1usize];
        while *thresholds.last().unwrap() <= max_len {
            let t = *thresholds.last().unwrap();
            thresholds.push(t + (t / 8).max(1));
        }
        ClassSchedule { thresholds }
    }

    /// Number of classes.
    pub fn classes(&self) -> usize {
        self.thresholds.len() - 1
    }

    /// Lower threshold `t_i` of class `i`.
    pub fn lower(&self, i: usize) -> usize {
        self.thresholds[i]
    }

    /// Exclusive upper bound `t_{i+1}` of class `i`.
    pub fn upper(&self, i: usize) -> usize {
        self.thresholds[i + 1]
    }

    /// Probe-window width `w_i = max(1, t_i / 8)`.
    pub fn window(&self, i: usize) -> usize {
        (self.thresholds[i] / 8).max(1)
    }

    /// The unique class with `t_i <= length < t_{i+1}`.
    pub fn class_of(&self, length: usize) -> Result<usize> {
        if length == 0 || self.classes() == 0 || length >= *self.thresholds.last().unwrap() {
            return Err(Error::OutOfRange { pos: length, len: self.classes() });
        }
        Ok(self.thresholds.partition_point(|&t| t <= length) - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_and_bounds() {
        let s = ClassSchedule::new(1_000_000);
        assert_eq!(s.lower(0), 1);
        for i in 0..s.classes() {
            let (t, t1) = (s.lower(i), s.upper(i));
            assert_eq!(t1, t + (t / 8).max(1));
            if t >= 8 {
                // within-class ratio <= 9/8
                assert!(t1 * 8 <= t * 9);
            } else {
                // below 8 each class holds a single length
                assert_eq!(t1, t + 1);
            }
            // window stays within epsilon * t_i for epsilon = 1/8 <= 1/7
            assert!(s.window(i) >= 1 && s.window(i) * 8 <= t.max(8));
        }
        // O(log n) classes
        assert!(s.classes() < 120, "classes = {}", s.classes());
    }

    #[test]
    fn class_examples() {
        let s = ClassSchedule::new(100);
        assert_eq!(s.class_of(1).unwrap(), 0);
        assert_eq!(s.class_of(5).unwrap(), 4);
        // derived by running the recurrence: t_15 = 16, t_16 = 18, t_17 = 20
        assert_eq!(s.lower(15), 16);
        assert_eq!(s.lower(16), 18);
        assert_eq!(s.class_of(18).unwrap(), 16);
        assert_eq!(s.class_of(17).unwrap(), 15);
        // boundary: class_of(t_i) == i
        for i in 0..s.classes() {
            if s.lower(i) <= 100 {
                assert_eq!(s.class_of(s.lower(i)).unwrap(), i);
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let s = ClassSchedule::new(10);
        assert!(s.class_of(0).is_err());
        assert!(s.class_of(1).is_ok());
        assert!(s.class_of(10).is_ok());
        let empty = ClassSchedule::new(0);
        assert_eq!(empty.classes(), 0);
        assert!(empty.class_of(1).is_err());
    }
}
