//! Length-two signatures and interlacing.

use serde::{Deserialize, Serialize};

/// A pair `(l1, l2)`: an element of `Sign_2` when `l1 >= l2` (geometric
/// model), or an unconstrained real pair (log-gamma model).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Signature2<T> {
    /// First part.
    pub l1: T,
    /// Second part.
    pub l2: T,
}

impl<T: Copy + PartialOrd + std::ops::Add<Output = T>> Signature2<T> {
    /// The pair `(l1, l2)`.
    pub fn new(l1: T, l2: T) -> Self {
        Self { l1, l2 }
    }

    /// `l1 >= l2`.
    pub fn is_ordered(&self) -> bool {
        self.l1 >= self.l2
    }

    /// `|self| = l1 + l2`.
    pub fn size(&self) -> T {
        self.l1 + self.l2
    }

    /// `self` interlaces over `below`: `self.l1 >= below.l1 >= self.l2 >= below.l2`.
    pub fn covers(&self, below: &Self) -> bool {
        self.l1 >= below.l1 && below.l1 >= self.l2 && self.l2 >= below.l2
    }

    /// Adds `x` to both parts.
    pub fn shift(&self, x: T) -> Self {
        Self {
            l1: self.l1 + x,
            l2: self.l2 + x,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interlacing() {
        let pi = Signature2::new(5i64, 1);
        assert!(pi.covers(&Signature2::new(3, 0)));
        assert!(pi.covers(&Signature2::new(1, -4)));
        assert!(!pi.covers(&Signature2::new(6, 0)));
        assert!(!pi.covers(&Signature2::new(0, 0)));
        assert!(!pi.covers(&Signature2::new(3, 2)));
        assert_eq!(pi.size(), 6);
        assert!(pi.shift(3).covers(&Signature2::new(3, 0).shift(3)));
    }
}
