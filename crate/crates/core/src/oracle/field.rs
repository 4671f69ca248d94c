//! Small finite fields `F_p` and `F_{p^2}` with table-driven arithmetic.
//!
//! `F_{p^2}` is `F_p[x]/(f)` where `f = x^2 + c1 x + c0` is the first monic
//! irreducible quadratic in the order `(c1, c0)` ascending. An element
//! `a0 + a1 x` is encoded as the integer `a0 + a1 p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::roottypes::is_prime;

/// An element of a [`FiniteField`]; meaningless without its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElement(pub u16);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);
    pub const ONE: FqElement = FqElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
pub struct FiniteField {
    p: u16,
    degree: u8,
    // x^2 = -c1 x - c0 when degree == 2
    modulus: (u16, u16),
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField(F_{}", self.size())?;
        if self.degree == 2 {
            write!(f, ", x^2 + {}x + {}", self.modulus.0, self.modulus.1)?;
        }
        write!(f, ")")
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.degree, self.modulus) == (other.p, other.degree, other.modulus)
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// `F_{p^degree}` for a prime `p <= 31` and `degree` in `{1, 2}`.
    pub fn new(p: u16, degree: u8) -> Result<Self> {
        if !is_prime(p as u64) || p > 31 {
            return Err(Error::UnsupportedField(format!("characteristic {p} must be a prime <= 31")));
        }
        if !(1..=2).contains(&degree) {
            return Err(Error::UnsupportedField(format!("degree {degree} (only 1 and 2 are supported)")));
        }
        let modulus = if degree == 2 { smallest_irreducible_quadratic(p) } else { (0, 0) };
        let q = (p as usize).pow(degree as u32);
        let mut f = FiniteField {
            p,
            degree,
            modulus,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
            frob: vec![0; q],
        };
        for a in 0..q {
            for b in 0..q {
                f.add[a * q + b] = f.slow_add(a as u16, b as u16);
                f.mul[a * q + b] = f.slow_mul(a as u16, b as u16);
            }
        }
        for a in 0..q {
            f.neg[a] = (0..q).find(|&b| f.add[a * q + b] == 0).unwrap() as u16;
            f.inv[a] = if a == 0 { 0 } else { (1..q).find(|&b| f.mul[a * q + b] == 1).unwrap() as u16 };
        }
        for a in 0..q {
            let mut x = 1u16;
            for _ in 0..p {
                x = f.mul[x as usize * q + a];
            }
            f.frob[a] = x;
        }
        Ok(f)
    }

    /// The field with `q` elements, for `q = p` or `q = p^2`.
    pub fn with_size(q: u32) -> Result<Self> {
        if q >= 2 && is_prime(q as u64) && q <= 31 {
            return Self::new(q as u16, 1);
        }
        let r = (q as f64).sqrt().round() as u32;
        if r * r == q && is_prime(r as u64) {
            return Self::new(r as u16, 2);
        }
        Err(Error::UnsupportedField(format!("no field of size {q} (need p or p^2)")))
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.degree as u32)
    }

    /// Coefficients `(c1, c0)` of the defining quadratic `x^2 + c1 x + c0`.
    pub fn modulus(&self) -> Option<(u16, u16)> {
        (self.degree == 2).then_some(self.modulus)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.size() as u16).map(FqElement)
    }

    /// The class of the polynomial `a0 + a1 x`.
    pub fn element(&self, a0: u16, a1: u16) -> FqElement {
        let p = self.p;
        if self.degree == 1 {
            assert_eq!(a1 % p, 0, "F_{p} has no x");
        }
        FqElement(a0 % p + if self.degree == 2 { (a1 % p) * p } else { 0 })
    }

    /// The image of an integer.
    pub fn from_int(&self, x: i64) -> FqElement {
        FqElement(x.rem_euclid(self.p as i64) as u16)
    }

    /// The class of `x` in `F_{p^2}`.
    pub fn generator(&self) -> Option<FqElement> {
        (self.degree == 2).then(|| self.element(0, 1))
    }

    #[inline]
    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        FqElement(self.add[a.0 as usize * self.size() + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        FqElement(self.mul[a.0 as usize * self.size() + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FqElement) -> FqElement {
        FqElement(self.neg[a.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElement) -> Option<FqElement> {
        (!a.is_zero()).then(|| FqElement(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut base = a;
        let mut acc = FqElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^p`, the absolute Frobenius.
    #[inline]
    pub fn frobenius(&self, a: FqElement) -> FqElement {
        FqElement(self.frob[a.0 as usize])
    }

    pub fn format(&self, a: FqElement) -> String {
        let p = self.p;
        let (a0, a1) = (a.0 % p, a.0 / p);
        match (self.degree, a1) {
            (1, _) | (_, 0) => a0.to_string(),
            (_, _) => {
                let x = if a1 == 1 { "x".to_string() } else { format!("{a1}x") };
                if a0 == 0 {
                    x
                } else {
                    format!("{x}+{a0}")
                }
            }
        }
    }

    fn slow_add(&self, a: u16, b: u16) -> u16 {
        let p = self.p;
        (a % p + b % p) % p + ((a / p + b / p) % p) * p
    }

    fn slow_mul(&self, a: u16, b: u16) -> u16 {
        let p = self.p as u32;
        let (a0, a1) = (a as u32 % p, a as u32 / p);
        let (b0, b1) = (b as u32 % p, b as u32 / p);
        // (a0 + a1 x)(b0 + b1 x) = a0 b0 + (a0 b1 + a1 b0) x + a1 b1 x^2
        let (c1, c0) = (self.modulus.0 as u32, self.modulus.1 as u32);
        let top = a1 * b1 % p;
        let r0 = (a0 * b0 + top * (p - c0) % p) % p;
        let r1 = (a0 * b1 + a1 * b0 + top * (p - c1) % p) % p;
        (r0 + r1 * p) as u16
    }
}

fn smallest_irreducible_quadratic(p: u16) -> (u16, u16) {
    for c1 in 0..p {
        for c0 in 0..p {
            let has_root = (0..p).any(|x| {
                let (x, c1, c0, p) = (x as u32, c1 as u32, c0 as u32, p as u32);
                (x * x + c1 * x + c0) % p == 0
            });
            if !has_root {
                return (c1, c0);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}
