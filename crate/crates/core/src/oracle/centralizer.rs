//! Centralizer dimensions over the rationals.
//!
//! `dim c(J) = dim a - rank(ad J |_a)` for the ambient algebra `a`, computed
//! with exact elimination. The orthogonal algebra is `so(B)` for the split
//! form `B = antidiag(1, ..., 1)`, i.e. `X^T B + B X = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, RationalMatrix};
use crate::orbits::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `gl_n`
    General,
    /// `so_n` for the anti-diagonal form
    Orthogonal,
}

/// Nilpotent Jordan matrix over the rationals, ones on the superdiagonal.
pub fn rational_jordan(p: &Partition) -> RationalMatrix {
    let n = p.total();
    let mut m = RationalMatrix::zeros(n, n);
    let mut start = 0;
    for &d in p.parts() {
        for i in start..start + d - 1 {
            m.set(i, i + 1, rat(1));
        }
        start += d;
    }
    m
}

fn antidiagonal_form(n: usize) -> RationalMatrix {
    let mut b = RationalMatrix::zeros(n, n);
    for i in 0..n {
        b.set(i, n - 1 - i, rat(1));
    }
    b
}

fn in_orthogonal_algebra(x: &RationalMatrix) -> bool {
    let b = antidiagonal_form(x.rows());
    x.transpose().mul(&b).add(&b.mul(x)).is_zero()
}

fn unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    let mut e = RationalMatrix::zeros(n, n);
    e.set(i, j, rat(1));
    e
}

/// A basis of the ambient algebra inside `gl_n`.
pub fn ambient_basis(n: usize, ambient: Ambient) -> Vec<RationalMatrix> {
    match ambient {
        Ambient::General => (0..n).flat_map(|i| (0..n).map(move |j| unit(n, i, j))).collect(),
        Ambient::Orthogonal => {
            // (X^T B + B X)_{ij} = X_{n-1-j, i} + X_{n-1-i, j}
            let mut eqs = RationalMatrix::zeros(n * n, n * n);
            for i in 0..n {
                for j in 0..n {
                    let row = i * n + j;
                    let a = (n - 1 - j) * n + i;
                    let b = (n - 1 - i) * n + j;
                    eqs.set(row, a, eqs.get(row, a) + rat(1));
                    eqs.set(row, b, eqs.get(row, b) + rat(1));
                }
            }
            eqs.nullspace()
                .into_iter()
                .map(|v| {
                    let mut m = RationalMatrix::zeros(n, n);
                    for (k, x) in v.into_iter().enumerate() {
                        m.set(k / n, k % n, x);
                    }
                    m
                })
                .collect()
        }
    }
}

/// Dimension of `{X in ambient : JX - XJ = 0}`.
pub fn centralizer_dim(j: &RationalMatrix, ambient: Ambient) -> Result<usize> {
    let n = j.rows();
    if j.cols() != n {
        return Err(Error::NotInAlgebra("matrix is not square".into()));
    }
    if ambient == Ambient::Orthogonal && !in_orthogonal_algebra(j) {
        return Err(Error::NotInAlgebra("X^T B + B X != 0 for the anti-diagonal form B".into()));
    }
    let basis = ambient_basis(n, ambient);
    // columns: ad J applied to each basis element, flattened
    let mut ad = RationalMatrix::zeros(n * n, basis.len());
    for (c, x) in basis.iter().enumerate() {
        let bracket = j.mul(x).sub(&x.mul(j));
        for (k, v) in bracket.entries().iter().enumerate() {
            ad.set(k, c, v.clone());
        }
    }
    Ok(basis.len() - ad.rank())
}

/// Jordan type of a nilpotent rational matrix, from the ranks of its powers.
pub fn rational_jordan_type(x: &RationalMatrix) -> Result<Partition> {
    let n = x.rows();
    let mut ranks = vec![n];
    let mut power = x.clone();
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(Error::NotNilpotent);
        }
        ranks.push(power.rank());
        power = power.mul(x);
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = vec![];
    for (k, &c) in at_least.iter().enumerate() {
        let exact = c - at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, exact));
    }
    Partition::new(parts)
}

/// Strictly upper triangular basis of `so(B)`: `E_{ij} - E_{n-1-j, n-1-i}`
/// for `i < j` and `i + j < n - 1`.
fn positive_root_vectors(n: usize) -> Vec<RationalMatrix> {
    let mut out = vec![];
    for i in 0..n {
        for j in i + 1..n {
            if i + j < n - 1 {
                let mut m = unit(n, i, j);
                m.set(n - 1 - j, n - 1 - i, Rational::from_integer((-1).into()));
                out.push(m);
            }
        }
    }
    out
}

/// Finds one nilpotent element of `so(B)` in `dim x dim` matrices for every
/// partition in `targets`, by a seeded random search over sums of positive
/// root vectors. Each found matrix is checked to lie in the algebra and to
/// have the requested Jordan type.
pub fn orthogonal_representatives(dim: usize, targets: &[Partition], seed: u64) -> Result<Vec<(Partition, RationalMatrix)>> {
    let roots = positive_root_vectors(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Option<RationalMatrix>> = vec![None; targets.len()];
    for attempt in 0..20_000 {
        if found.iter().all(Option::is_some) {
            break;
        }
        let density = 0.02 + 0.96 * ((attempt % 50) as f64 / 49.0);
        let mut x = RationalMatrix::zeros(dim, dim);
        for r in &roots {
            if rng.gen_bool(density) {
                x = x.add(r);
            }
        }
        let ty = rational_jordan_type(&x)?;
        if let Some(k) = targets.iter().position(|t| *t == ty) {
            if found[k].is_none() {
                found[k] = Some(x);
            }
        }
    }
    targets
        .iter()
        .zip(found)
        .map(|(t, m)| {
            let m = m.ok_or_else(|| Error::NotInAlgebra(format!("no representative of {t} found")))?;
            debug_assert!(in_orthogonal_algebra(&m));
            Ok((t.clone(), m))
        })
        .collect()
}

/// Conjugation by the swap of the two middle basis vectors. It preserves
/// the anti-diagonal form and has determinant `-1`, so it exchanges the two
/// orbits of a very even partition.
pub fn outer_swap(x: &RationalMatrix) -> RationalMatrix {
    let n = x.rows();
    let (a, b) = (n / 2 - 1, n / 2);
    let mut perm = RationalMatrix::identity(n);
    perm.set(a, a, rat(0));
    perm.set(b, b, rat(0));
    perm.set(a, b, rat(1));
    perm.set(b, a, rat(1));
    perm.mul(x).mul(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn gl_examples() {
        assert_eq!(centralizer_dim(&rational_jordan(&part(&[3])), Ambient::General).unwrap(), 3);
        assert_eq!(centralizer_dim(&RationalMatrix::zeros(4, 4), Ambient::General).unwrap(), 16);
        assert_eq!(centralizer_dim(&rational_jordan(&part(&[2, 1])), Ambient::General).unwrap(), 5);
    }

    #[test]
    fn gl_centralizer_formula() {
        // dim c(J_d) = sum over i of (2i - 1) d_i for the conjugate partition,
        // equivalently sum_{i,j} min(d_i, d_j)
        for n in 1..=5 {
            for p in Partition::all(n) {
                let expect: usize = p.parts().iter().flat_map(|a| p.parts().iter().map(move |b| *a.min(b))).sum();
                assert_eq!(centralizer_dim(&rational_jordan(&p), Ambient::General).unwrap(), expect, "{p}");
            }
        }
    }

    #[test]
    fn orthogonal_basis_dimension() {
        for n in [4, 6, 8] {
            let basis = ambient_basis(n, Ambient::Orthogonal);
            assert_eq!(basis.len(), n * (n - 1) / 2);
            assert!(basis.iter().all(in_orthogonal_algebra));
        }
        assert_eq!(positive_root_vectors(8).len(), 12);
    }

    #[test]
    fn orthogonal_rejects_outsiders() {
        let j = rational_jordan(&part(&[2, 1, 1, 1, 1, 1, 1]));
        assert!(matches!(centralizer_dim(&j, Ambient::Orthogonal), Err(Error::NotInAlgebra(_))));
        assert_eq!(centralizer_dim(&RationalMatrix::zeros(8, 8), Ambient::Orthogonal).unwrap(), 28);
    }

    #[test]
    fn outer_swap_preserves_the_algebra() {
        let reps = orthogonal_representatives(8, &[part(&[4, 4])], 7).unwrap();
        let x = &reps[0].1;
        let y = outer_swap(x);
        assert!(in_orthogonal_algebra(&y));
        assert_eq!(rational_jordan_type(&y).unwrap(), part(&[4, 4]));
    }
}
