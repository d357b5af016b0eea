//! GF(2^e) arithmetic with log/antilog tables, `1 <= e <= 16`.

use crate::error::{Error, Result};
use serde::Serialize;

pub const MAX_DEGREE: u32 = 16;

/// Carry-less product of two polynomials over GF(2).
fn clmul(a: u32, b: u32) -> u32 {
    let mut r = 0u32;
    for i in 0..32 {
        if (b >> i) & 1 == 1 {
            r ^= a << i;
        }
    }
    r
}

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most half.
pub fn is_irreducible(poly: u32) -> bool {
    let d = degree(poly);
    if d < 1 {
        return false;
    }
    for q in 2u32..(1u32 << (d / 2 + 1)) {
        if degree(q) >= 1 && degree(q) <= d / 2 && poly_mod(poly, q) == 0 {
            return false;
        }
    }
    true
}

/// A field `GF(2^e)` defined by an irreducible polynomial (bitmask with bit
/// `e` set), together with its log/antilog tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    e: u32,
    poly: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldMeta {
    pub e: u32,
    pub primitive_poly: u32,
}

impl FieldSpec {
    pub fn new(e: u32, poly: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&e) {
            return Err(Error::InvalidParameter(format!("extension degree must be in 1..=16, got {e}")));
        }
        if degree(poly) != e as i32 || !is_irreducible(poly) {
            return Err(Error::InvalidParameter(format!(
                "{poly:#x} is not an irreducible polynomial of degree {e}"
            )));
        }
        let q = 1u32 << e;
        let mulmod = |a: u32, b: u32| poly_mod(clmul(a, b), poly);
        // smallest element of multiplicative order q-1
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1u32;
                for k in 1..q {
                    x = mulmod(x, g);
                    if x == 1 {
                        return k == q - 1;
                    }
                }
                false
            })
            .expect("a finite field has a primitive element");
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = mulmod(x, generator);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }
        Ok(FieldSpec {
            e,
            poly,
            generator,
            exp,
            log,
        })
    }

    /// The field with the smallest primitive polynomial of degree `e`.
    pub fn default_for(e: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&e) {
            return Err(Error::InvalidParameter(format!("extension degree must be in 1..=16, got {e}")));
        }
        if e == 1 {
            return Self::new(1, 0b11);
        }
        let poly = ((1u32 << e)..(1u32 << (e + 1)))
            .find(|&p| is_irreducible(p) && Self::new(e, p).map_or(false, |f| f.generator == 2))
            .expect("primitive polynomials exist in every degree");
        Self::new(e, poly)
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn order(&self) -> u32 {
        1 << self.e
    }

    pub fn meta(&self) -> FieldMeta {
        FieldMeta {
            e: self.e,
            primitive_poly: self.poly,
        }
    }

    /// Size of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u32 {
        (1 << self.e) - 1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse(self.e));
        }
        let n = self.group_order();
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `g^k` for the table generator `g`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % self.group_order() as u64) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0 && a < self.order()).then(|| self.log[a as usize])
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order()
    }
}
