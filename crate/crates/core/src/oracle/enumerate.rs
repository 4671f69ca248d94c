//! Exhaustive scans of the nilpotent cone of `gl_n(F_q)`.
//!
//! Candidates are enumerated in row-major odometer order with the last
//! diagonal entry fixed by `trace = 0`, which every nilpotent matrix
//! satisfies. Parallel scans split on a prefix of the leading entries and
//! merge results so that output never depends on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbits::Partition;

use super::field::{FiniteField, FqElement};
use super::matrix::{jordan_type, standard_frobenius, twisted_frobenius_a, FqMatrix};

/// Default cap on the raw search space `q^(n^2)`: `n <= 3` over `F_9`.
pub const DEFAULT_BUDGET: u128 = 387_420_489;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "NILORBIT_BUDGET";

/// [`DEFAULT_BUDGET`] unless overridden by the environment.
pub fn budget_from_env() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={s:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Which Frobenius map to apply to matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixFrobenius {
    Standard,
    Twisted,
}

impl MatrixFrobenius {
    pub fn apply(self, field: &FiniteField, m: &FqMatrix) -> FqMatrix {
        let p = field.characteristic() as u64;
        match self {
            MatrixFrobenius::Standard => standard_frobenius(field, m, p),
            MatrixFrobenius::Twisted => twisted_frobenius_a(field, m, p),
        }
    }
}

impl std::str::FromStr for MatrixFrobenius {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" | "split" => Ok(MatrixFrobenius::Standard),
            "twisted" => Ok(MatrixFrobenius::Twisted),
            _ => Err(Error::Parse(format!("map must be 'standard' or 'twisted', got {s:?}"))),
        }
    }
}

fn search_space(n: usize, field: &FiniteField) -> u128 {
    (field.size() as u128).saturating_pow((n * n) as u32)
}

fn check_budget(n: usize, field: &FiniteField, budget: u128) -> Result<()> {
    let required = search_space(n, field);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// The free entries: every position except the last diagonal one.
fn free_cells(n: usize) -> usize {
    n * n - 1
}

/// Odometer over trace-zero matrices whose first `prefix.len()` free cells
/// are fixed, yielding only the nilpotent ones. Candidates are tested in
/// place; a matrix is allocated only for a hit.
struct NilpotentScan<'a> {
    field: &'a FiniteField,
    n: usize,
    fixed: usize,
    entries: Vec<FqElement>,
    power: Vec<FqElement>,
    next_power: Vec<FqElement>,
    done: bool,
}

impl<'a> NilpotentScan<'a> {
    fn new(field: &'a FiniteField, n: usize, prefix: &[u16]) -> Self {
        let mut entries = vec![FqElement::ZERO; n * n];
        for (e, &d) in entries.iter_mut().zip(prefix) {
            *e = FqElement(d);
        }
        let mut scan = NilpotentScan {
            field,
            n,
            fixed: prefix.len(),
            entries,
            power: vec![FqElement::ZERO; n * n],
            next_power: vec![FqElement::ZERO; n * n],
            done: false,
        };
        scan.fix_trace();
        scan
    }

    fn fix_trace(&mut self) {
        let n = self.n;
        let partial = (0..n - 1).fold(FqElement::ZERO, |acc, i| self.field.add(acc, self.entries[i * n + i]));
        self.entries[n * n - 1] = self.field.neg(partial);
    }

    fn advance(&mut self) {
        let q = self.field.size() as u16;
        for i in (self.fixed..free_cells(self.n)).rev() {
            let d = self.entries[i].0 + 1;
            if d < q {
                self.entries[i] = FqElement(d);
                self.fix_trace();
                return;
            }
            self.entries[i] = FqElement::ZERO;
        }
        self.done = true;
    }

    /// `M^n = 0` for the current candidate. The last power is computed entry
    /// by entry and abandoned at the first nonzero entry.
    fn current_is_nilpotent(&mut self) -> bool {
        let (n, f) = (self.n, self.field);
        let m = &self.entries;
        self.power.copy_from_slice(m);
        for k in 2..=n {
            let last = k == n;
            let mut all_zero = true;
            for i in 0..n {
                for j in 0..n {
                    let mut acc = FqElement::ZERO;
                    for l in 0..n {
                        acc = f.add(acc, f.mul(self.power[i * n + l], m[l * n + j]));
                    }
                    if !acc.is_zero() {
                        if last {
                            return false;
                        }
                        all_zero = false;
                    }
                    self.next_power[i * n + j] = acc;
                }
            }
            if all_zero {
                return true;
            }
            std::mem::swap(&mut self.power, &mut self.next_power);
        }
        n == 1 && m[0].is_zero()
    }
}

impl Iterator for NilpotentScan<'_> {
    type Item = FqMatrix;

    fn next(&mut self) -> Option<FqMatrix> {
        while !self.done {
            let hit = self.current_is_nilpotent();
            let m = hit.then(|| FqMatrix::from_entries(self.n, self.entries.clone()));
            self.advance();
            if m.is_some() {
                return m;
            }
        }
        None
    }
}

/// Every nilpotent `n x n` matrix over `field`, in a fixed order.
pub fn enumerate_nilpotent(n: usize, field: &FiniteField, budget: u128) -> Result<impl Iterator<Item = FqMatrix> + '_> {
    if n == 0 {
        return Err(Error::InvalidLabel("matrix size must be positive".into()));
    }
    check_budget(n, field, budget)?;
    Ok(NilpotentScan::new(field, n, &[]))
}

/// Prefixes used to split a scan across workers, in enumeration order.
fn prefixes(n: usize, field: &FiniteField) -> Vec<Vec<u16>> {
    let q = field.size() as u16;
    let len = free_cells(n).min(2);
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p| (0..q).map(move |d| [p.clone(), vec![d]].concat())).collect();
    }
    out
}

fn nilpotents_with_prefix<'a>(n: usize, field: &'a FiniteField, prefix: &[u16]) -> impl Iterator<Item = FqMatrix> + 'a {
    NilpotentScan::new(field, n, prefix)
}

/// Number of nilpotent matrices, counted in parallel.
pub fn count_nilpotent(n: usize, field: &FiniteField, budget: u128) -> Result<u64> {
    check_budget(n, field, budget)?;
    Ok(prefixes(n, field)
        .par_iter()
        .map(|p| nilpotents_with_prefix(n, field, p).count() as u64)
        .sum())
}

/// Result of checking that a Frobenius map preserves every Jordan type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub field_size: usize,
    pub map: MatrixFrobenius,
    pub nilpotent_count: u64,
    /// Number of nilpotent matrices of each Jordan type.
    pub jordan_type_counts: BTreeMap<String, u64>,
    pub pass: bool,
    /// The first matrix whose image has a different Jordan type, row-major.
    pub counterexample: Option<Vec<Vec<String>>>,
    /// For twisted maps over `F_{p^2}`: one fixed point per Jordan type.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<BTreeMap<String, Option<Vec<Vec<String>>>>>,
}

#[derive(Default)]
struct Tally {
    counts: BTreeMap<Partition, u64>,
    // (prefix index, matrix) of the first failure
    failure: Option<(usize, FqMatrix)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.failure = match (self.failure, other.failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Checks that `map` sends every nilpotent matrix to a nilpotent matrix of
/// the same Jordan type.
pub fn verify_orbit_stability(n: usize, field: &FiniteField, map: MatrixFrobenius, budget: u128) -> Result<VerificationReport> {
    check_budget(n, field, budget)?;
    let tally = prefixes(n, field)
        .par_iter()
        .enumerate()
        .map(|(idx, prefix)| {
            let mut t = Tally::default();
            for m in nilpotents_with_prefix(n, field, prefix) {
                let ty = jordan_type(field, &m).expect("enumerated matrices are nilpotent");
                *t.counts.entry(ty.0.clone()).or_default() += 1;
                if t.failure.is_none() {
                    let image = map.apply(field, &m);
                    let same = jordan_type(field, &image).map(|j| j == ty).unwrap_or(false);
                    if !same {
                        t.failure = Some((idx, m));
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let fixed_points = if map == MatrixFrobenius::Twisted && field.degree() == 2 {
        let mut fp = BTreeMap::new();
        for p in tally.counts.keys() {
            let found = find_fixed_point(p, field, map, budget)?;
            fp.insert(p.to_string(), found.map(|m| m.to_rows(field)));
        }
        Some(fp)
    } else {
        None
    };
    let all_fixed = fixed_points.as_ref().is_none_or(|fp| fp.values().all(Option::is_some));

    Ok(VerificationReport {
        n,
        field_size: field.size(),
        map,
        nilpotent_count: tally.counts.values().sum(),
        jordan_type_counts: tally.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        pass: tally.failure.is_none() && all_fixed,
        counterexample: tally.failure.map(|(_, m)| m.to_rows(field)),
        fixed_points,
    })
}

/// First nilpotent matrix (in enumeration order) of the given Jordan type
/// that `map` fixes.
pub fn find_fixed_point(jordan: &Partition, field: &FiniteField, map: MatrixFrobenius, budget: u128) -> Result<Option<FqMatrix>> {
    let n = jordan.total();
    check_budget(n, field, budget)?;
    let hit = prefixes(n, field).par_iter().find_map_first(|prefix| {
        nilpotents_with_prefix(n, field, prefix)
            .find(|m| map.apply(field, m) == *m && jordan_type(field, m).map(|j| j.0 == *jordan).unwrap_or(false))
    });
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn census_examples() {
        let f2 = FiniteField::with_size(2).unwrap();
        let f3 = FiniteField::with_size(3).unwrap();
        assert_eq!(enumerate_nilpotent(2, &f2, DEFAULT_BUDGET).unwrap().count(), 4);
        assert_eq!(enumerate_nilpotent(2, &f3, DEFAULT_BUDGET).unwrap().count(), 9);
        let ones: Vec<_> = enumerate_nilpotent(1, &f3, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(ones, vec![FqMatrix::zero(1)]);
        assert_eq!(count_nilpotent(3, &f2, DEFAULT_BUDGET).unwrap(), 64);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let f = FiniteField::with_size(4).unwrap();
        let seq: Vec<_> = enumerate_nilpotent(2, &f, DEFAULT_BUDGET).unwrap().collect();
        let par: Vec<_> = prefixes(2, &f).iter().flat_map(|p| nilpotents_with_prefix(2, &f, p).collect::<Vec<_>>()).collect();
        assert_eq!(seq, par);
        assert!(seq.iter().all(|m| m.is_nilpotent(&f)));
        // brute force over all q^(n^2) matrices, no trace shortcut
        let q = f.size() as u16;
        let brute = (0..q.pow(4))
            .map(|mut k| {
                let e = (0..4)
                    .map(|_| {
                        let d = k % q;
                        k /= q;
                        FqElement(d)
                    })
                    .collect();
                FqMatrix::from_entries(2, e)
            })
            .filter(|m| m.is_nilpotent(&f))
            .count();
        assert_eq!(brute, seq.len());
    }

    #[test]
    fn budget_is_enforced() {
        let f4 = FiniteField::with_size(4).unwrap();
        let err = enumerate_nilpotent(4, &f4, DEFAULT_BUDGET).err().unwrap();
        assert_eq!(err, Error::BudgetExceeded { required: 4u128.pow(16), budget: DEFAULT_BUDGET });
        let f2 = FiniteField::with_size(2).unwrap();
        assert!(count_nilpotent(3, &f2, 511).is_err());
        assert_eq!(count_nilpotent(4, &f2, DEFAULT_BUDGET).unwrap(), 2u64.pow(12));
    }

    #[test]
    fn verify_examples() {
        let f2 = FiniteField::with_size(2).unwrap();
        let r = verify_orbit_stability(3, &f2, MatrixFrobenius::Standard, DEFAULT_BUDGET).unwrap();
        assert!(r.pass);
        assert_eq!(r.nilpotent_count, 64);
        assert_eq!(r.jordan_type_counts.len(), 3);
        assert!(r.fixed_points.is_none());

        let f4 = FiniteField::with_size(4).unwrap();
        let r = verify_orbit_stability(3, &f4, MatrixFrobenius::Twisted, DEFAULT_BUDGET).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.fixed_points.as_ref().unwrap().values().all(Option::is_some));

        let f3 = FiniteField::with_size(3).unwrap();
        assert!(verify_orbit_stability(2, &f3, MatrixFrobenius::Standard, DEFAULT_BUDGET).unwrap().pass);
    }

    #[test]
    fn fixed_point_examples() {
        let f4 = FiniteField::with_size(4).unwrap();
        let tw = MatrixFrobenius::Twisted;
        let m = find_fixed_point(&part(&[2]), &f4, tw, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(tw.apply(&f4, &m), m);
        assert_eq!(find_fixed_point(&part(&[1, 1]), &f4, tw, DEFAULT_BUDGET).unwrap(), Some(FqMatrix::zero(2)));
        let m = find_fixed_point(&part(&[3]), &f4, tw, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(jordan_type(&f4, &m).unwrap().0, part(&[3]));
    }

    #[test]
    fn map_names() {
        assert_eq!("twisted".parse::<MatrixFrobenius>().unwrap(), MatrixFrobenius::Twisted);
        assert!("other".parse::<MatrixFrobenius>().is_err());
        assert_eq!(serde_json::to_string(&MatrixFrobenius::Standard).unwrap(), "\"standard\"");
    }
}
