//! Square matrices over a [`FiniteField`].

use crate::error::{Error, Result};
use crate::orbits::Partition;

use super::field::{FiniteField, FqElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<FqElement>,
}

impl FqMatrix {
    pub fn zero(n: usize) -> Self {
        FqMatrix { n, entries: vec![FqElement::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, FqElement::ONE);
        }
        m
    }

    /// Row-major entries; panics unless there are `n * n` of them.
    pub fn from_entries(n: usize, entries: Vec<FqElement>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {n}x{n} entries");
        FqMatrix { n, entries }
    }

    /// Block-diagonal nilpotent Jordan matrix with ones on the superdiagonal.
    pub fn jordan(partition: &Partition) -> Self {
        let n = partition.total();
        let mut m = Self::zero(n);
        let mut start = 0;
        for &d in partition.parts() {
            for i in start..start + d - 1 {
                m.set(i, i + 1, FqElement::ONE);
            }
            start += d;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElement {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FqElement) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[FqElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn map(&self, f: impl Fn(FqElement) -> FqElement) -> Self {
        FqMatrix { n: self.n, entries: self.entries.iter().map(|&x| f(x)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &FiniteField, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn trace(&self, field: &FiniteField) -> FqElement {
        (0..self.n).fold(FqElement::ZERO, |acc, i| field.add(acc, self.get(i, i)))
    }

    /// `M^n = 0`, checked by repeated multiplication with early exit.
    pub fn is_nilpotent(&self, field: &FiniteField) -> bool {
        let mut power = self.clone();
        for _ in 1..self.n {
            if power.is_zero() {
                return true;
            }
            power = power.mul(field, self);
        }
        power.is_zero()
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, piv * n + j);
            }
            let inv = field.inv(m[rank * n + col]).expect("pivot is nonzero");
            for r in rank + 1..n {
                let factor = field.mul(m[r * n + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    m[r * n + j] = field.sub(m[r * n + j], field.mul(factor, m[rank * n + j]));
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss–Jordan elimination, `None` when singular.
    pub fn inverse(&self, field: &FiniteField) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.entries.swap(col * n + j, piv * n + j);
                b.entries.swap(col * n + j, piv * n + j);
            }
            let inv = field.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, field.mul(a.get(col, j), inv));
                b.set(col, j, field.mul(b.get(col, j), inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, field.sub(a.get(r, j), field.mul(f, a.get(col, j))));
                    b.set(r, j, field.sub(b.get(r, j), field.mul(f, b.get(col, j))));
                }
            }
        }
        Some(b)
    }

    /// Entries as strings in the field's polynomial notation, row by row.
    pub fn to_rows(&self, field: &FiniteField) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| field.format(self.get(i, j))).collect()).collect()
    }
}

/// Jordan type of a nilpotent matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanType(pub Partition);

impl JordanType {
    pub fn partition(&self) -> &Partition {
        &self.0
    }
}

/// Reads the Jordan type off the ranks of `M^0, M^1, ...`: the number of
/// blocks of size at least `j` is `rank(M^{j-1}) - rank(M^j)`.
pub fn jordan_type(field: &FiniteField, m: &FqMatrix) -> Result<JordanType> {
    let n = m.size();
    if n == 0 {
        return Err(Error::InvalidLabel("0x0 matrix".into()));
    }
    let mut ranks = vec![n];
    let mut power = m.clone();
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(Error::NotNilpotent);
        }
        ranks.push(power.rank(field));
        power = power.mul(field, m);
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = vec![];
    for (j, &count) in at_least.iter().enumerate() {
        let exact = count - at_least.get(j + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(j + 1, exact));
    }
    Ok(JordanType(Partition::new(parts)?))
}

/// Entrywise `x -> x^q`.
pub fn standard_frobenius(field: &FiniteField, m: &FqMatrix, q: u64) -> FqMatrix {
    if q == field.characteristic() as u64 {
        m.map(|x| field.frobenius(x))
    } else {
        m.map(|x| field.pow(x, q))
    }
}

/// `M -> -(M^(q))^T`: the outer automorphism of `sl_n` composed with the
/// entrywise Frobenius.
pub fn twisted_frobenius_a(field: &FiniteField, m: &FqMatrix, q: u64) -> FqMatrix {
    standard_frobenius(field, m, q).transpose().map(|x| field.neg(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn jt(field: &FiniteField, m: &FqMatrix) -> Vec<usize> {
        jordan_type(field, m).unwrap().partition().parts().to_vec()
    }

    #[test]
    fn jordan_type_examples() {
        let f3 = FiniteField::with_size(3).unwrap();
        assert_eq!(jt(&f3, &FqMatrix::jordan(&part(&[3]))), [3]);
        assert_eq!(jt(&f3, &FqMatrix::zero(4)), [1, 1, 1, 1]);
        let j22 = FqMatrix::jordan(&part(&[2, 2]));
        assert_eq!(jt(&f3, &j22), [2, 2]);
        assert_eq!(j22.rank(&f3), 2);
        assert!(matches!(jordan_type(&f3, &FqMatrix::identity(2)), Err(Error::NotNilpotent)));
    }

    #[test]
    fn jordan_types_of_block_matrices() {
        let f = FiniteField::with_size(9).unwrap();
        for n in 1..=7 {
            for p in Partition::all(n) {
                assert_eq!(jordan_type(&f, &FqMatrix::jordan(&p)).unwrap().0, p);
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f4 = FiniteField::with_size(4).unwrap();
        let w = f4.generator().unwrap();
        let mut m = FqMatrix::zero(2);
        m.set(0, 0, w);
        let img = standard_frobenius(&f4, &m, 2);
        assert_eq!(img.get(0, 0), f4.mul(w, w));

        let f3 = FiniteField::with_size(3).unwrap();
        let m = FqMatrix::from_entries(2, [1, 2, 0, 1].map(FqElement).to_vec());
        assert_eq!(standard_frobenius(&f3, &m, 3), m);

        let j3 = FqMatrix::jordan(&part(&[3]));
        assert_eq!(standard_frobenius(&f4, &j3, 2), j3);
    }

    #[test]
    fn twisted_examples() {
        let f2 = FiniteField::with_size(2).unwrap();
        assert!(twisted_frobenius_a(&f2, &FqMatrix::zero(3), 2).is_zero());
        let j2 = FqMatrix::jordan(&part(&[2]));
        let t = twisted_frobenius_a(&f2, &j2, 2);
        assert_eq!(t.entries(), &[0, 0, 1, 0].map(FqElement));

        let f4 = FiniteField::with_size(4).unwrap();
        let w = f4.generator().unwrap();
        let mut m = FqMatrix::jordan(&part(&[3]));
        m.set(0, 2, w);
        let t = twisted_frobenius_a(&f4, &m, 2);
        assert!(t.is_nilpotent(&f4));
        assert_eq!(jt(&f4, &t), [3]);
        // applying the twisted map twice with q = 2 over F_4 is the identity
        assert_eq!(twisted_frobenius_a(&f4, &t, 2), m);
    }

    #[test]
    fn inverse_and_conjugation() {
        let f = FiniteField::with_size(5).unwrap();
        let p = FqMatrix::from_entries(3, [1, 2, 0, 0, 1, 3, 4, 0, 2].map(FqElement).to_vec());
        let pi = p.inverse(&f).unwrap();
        assert_eq!(p.mul(&f, &pi), FqMatrix::identity(3));
        let j = FqMatrix::jordan(&part(&[2, 1]));
        let c = p.mul(&f, &j).mul(&f, &pi);
        assert_eq!(jt(&f, &c), [2, 1]);
        assert!(FqMatrix::jordan(&part(&[3])).inverse(&f).is_none());
    }

    #[test]
    fn nilpotency() {
        let f = FiniteField::with_size(2).unwrap();
        assert!(FqMatrix::jordan(&part(&[4])).is_nilpotent(&f));
        assert!(!FqMatrix::identity(3).is_nilpotent(&f));
        assert!(FqMatrix::zero(1).is_nilpotent(&f));
    }
}
