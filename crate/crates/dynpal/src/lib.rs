//! Longest palindromic substring of a mutable text, maintained in
//! polylogarithmic time per single-character substitution.
//!
//! The structure keeps every maximal palindrome of the text, bucketed into
//! geometric size classes: isolated ones explicitly, families induced by
//! periodic runs as compact clusters. Queries and updates ride on dynamic
//! longest-common-extension queries over a double rolling hash.
//!
//! ```
//! use dynpal::PalindromeIndex;
//!
//! let mut idx = PalindromeIndex::build(b"abbbbba", 0);
//! assert_eq!(idx.longest(), Some((1, 7)));
//! idx.substitute(4, b'a').unwrap();
//! assert_eq!(idx.longest(), Some((1, 7))); // "abbabba"
//! ```

pub mod cluster;
pub mod error;
pub mod hashed_text;
pub mod index;
pub mod lce;
pub mod oracle;
pub mod schedule;

pub use cluster::Cluster;
pub use error::{Error, Result};
pub use hashed_text::{DynamicText, Fingerprint};
pub use index::{Lmp, PalindromeIndex};
pub use lce::Center;
pub use schedule::ClassSchedule;
