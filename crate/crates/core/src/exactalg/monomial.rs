use std::fmt;

use crate::error::{Error, Result};

/// Product `eta^{i1} ... eta^{ik}` with `i1 < ... < ik`, stored as a bitmask
/// over zero-based generator indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtMonomial(u32);

pub const MAX_ODD: usize = 31;

impl ExtMonomial {
    pub const ONE: ExtMonomial = ExtMonomial(0);

    pub fn from_bits(bits: u32) -> Self {
        ExtMonomial(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Single generator `eta^{i+1}`.
    pub fn gen(i: usize) -> Self {
        assert!(i < MAX_ODD, "odd generator index {} too large", i);
        ExtMonomial(1 << i)
    }

    /// Build from a strictly increasing index list; anything else is rejected.
    pub fn from_indices(indices: &[usize], r: usize) -> Result<Self> {
        let mut bits = 0u32;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= r {
                return Err(Error::IndexOutOfRange { what: "odd generator", index: i + 1, bound: r });
            }
            if let Some(p) = prev {
                if i <= p {
                    return Err(Error::NotCanonical(format!("{:?}", indices)));
                }
            }
            prev = Some(i);
            bits |= 1 << i;
        }
        Ok(ExtMonomial(bits))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_odd(self) -> bool {
        self.0.count_ones() % 2 == 1
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    /// `self * other` as `(sign, monomial)`, or `None` if a generator repeats.
    pub fn mul(self, other: ExtMonomial) -> Option<(bool, ExtMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each pair (i in self, j in other) with i > j is one transposition.
        let mut inversions = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            inversions += (self.0 >> (j + 1)).count_ones();
            b &= b - 1;
        }
        Some((inversions % 2 == 1, ExtMonomial(self.0 | other.0)))
    }

    /// Left contraction with `d/d eta^{i+1}`: `(negative, remaining)`.
    pub fn contract(self, i: usize) -> Option<(bool, ExtMonomial)> {
        if !self.contains(i) {
            return None;
        }
        let before = (self.0 & ((1u32 << i) - 1)).count_ones();
        Some((before % 2 == 1, ExtMonomial(self.0 & !(1 << i))))
    }

    /// All monomials in `r` generators, ordered by degree.
    pub fn all(r: usize) -> Vec<ExtMonomial> {
        assert!(r <= MAX_ODD);
        let mut v: Vec<ExtMonomial> = (0..(1u32 << r)).map(ExtMonomial).collect();
        v.sort_by_key(|m| (m.degree(), m.0));
        v
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("eta{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}
