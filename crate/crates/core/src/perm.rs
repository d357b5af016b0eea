//! Circulant permutation mappings `x -> x + b (mod P)`.
//!
//! Every block of every matrix in this crate is one of these, so composition
//! and inversion reduce to modular addition and negation of the shift.

use crate::error::{Error, Result};
use std::fmt;

/// An affine shift on `Z_P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermMapping {
    shift: u64,
    modulus: u64,
}

impl PermMapping {
    /// Builds `x -> x + shift (mod modulus)`, reducing `shift` into `Z_P`.
    pub fn new(shift: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("circulant size must be positive".into()));
        }
        Ok(PermMapping {
            shift: shift % modulus,
            modulus,
        })
    }

    pub fn identity(modulus: u64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn apply(&self, x: u64) -> u64 {
        (x % self.modulus + self.shift) % self.modulus
    }

    /// `self ∘ other`. Shifts commute, so the order only matters for the
    /// modulus check.
    pub fn compose(&self, other: &PermMapping) -> Result<PermMapping> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(PermMapping {
            shift: (self.shift + other.shift) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn invert(&self) -> PermMapping {
        PermMapping {
            shift: (self.modulus - self.shift) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0
    }
}

impl fmt::Display for PermMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x+{} mod {}", self.shift, self.modulus)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Length of every orbit of `x -> x + shift` on `Z_P`, i.e. `P / gcd(shift, P)`.
pub fn orbit_length(f: &PermMapping) -> u64 {
    f.modulus / gcd(f.shift, f.modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(b: u64, p: u64) -> PermMapping {
        PermMapping::new(b, p).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(m(3, 7).compose(&m(5, 7)).unwrap(), m(1, 7));
        assert_eq!(m(0, 11).compose(&m(6, 11)).unwrap(), m(6, 11));
        assert_eq!(m(1, 49).compose(&m(48, 49)).unwrap(), m(0, 49));
    }

    #[test]
    fn compose_rejects_mismatched_modulus() {
        assert_eq!(
            m(1, 7).compose(&m(1, 8)),
            Err(Error::ModulusMismatch(7, 8))
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(m(8, 49).invert(), m(41, 49));
        assert_eq!(m(32, 49).invert(), m(17, 49));
        assert_eq!(m(0, 13).invert(), m(0, 13));
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(PermMapping::new(1, 0).is_err());
    }

    #[test]
    fn algebra_exhaustive_small_moduli() {
        for p in 1..=64u64 {
            for a in 0..p {
                let fa = m(a, p);
                assert!(fa.compose(&fa.invert()).unwrap().is_identity());
                for b in 0..p {
                    let fb = m(b, p);
                    assert_eq!(fa.compose(&fb).unwrap(), fb.compose(&fa).unwrap());
                    // associativity, sampled third operand
                    let fc = m((a * 7 + b) % p, p);
                    assert_eq!(
                        fa.compose(&fb).unwrap().compose(&fc).unwrap(),
                        fa.compose(&fb.compose(&fc).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn bijection_and_cycle_structure_exhaustive() {
        for p in 1..=64u64 {
            for b in 0..p {
                let f = m(b, p);
                let mut seen = vec![false; p as usize];
                for x in 0..p {
                    let y = f.apply(x) as usize;
                    assert!(!seen[y]);
                    seen[y] = true;
                }
                // every orbit has the same length P / gcd(b, P)
                let len = orbit_length(&f);
                let mut visited = vec![false; p as usize];
                let mut orbits = 0;
                for x0 in 0..p {
                    if visited[x0 as usize] {
                        continue;
                    }
                    orbits += 1;
                    let mut x = x0;
                    let mut n = 0;
                    loop {
                        visited[x as usize] = true;
                        x = f.apply(x);
                        n += 1;
                        if x == x0 {
                            break;
                        }
                    }
                    assert_eq!(n, len);
                }
                assert_eq!(orbits, gcd(b, p));
            }
        }
    }
}
