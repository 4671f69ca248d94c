//! Root systems and Dynkin diagrams.
//!
//! Nodes are numbered `1..=rank` following Bourbaki, with one convention fixed
//! for type `D`: the chain runs `1..=n-2`, node `n-1` is the *top* fork node
//! and node `n` is the *right* fork node. For `D4` this reads
//!
//! ```text
//!         3 (top)
//!         |
//!  1 ---- 2 ---- 4
//! ```
//!
//! Roots are integer coefficient vectors in the simple-root basis and the
//! Cartan matrix is `C[i][j] = <alpha_i, alpha_j^vee>`, so every pairing in
//! this crate is an exact integer computation.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan–Killing family letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Dynkin type such as `A3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank { family: family.letter(), rank });
        }
        Ok(DynkinType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every valid type of rank at most `max_rank`, in family order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<DynkinType> {
        use Family::*;
        [A, B, C, D, E, F, G]
            .into_iter()
            .flat_map(|f| (1..=max_rank).filter_map(move |r| DynkinType::new(f, r).ok()))
            .collect()
    }

    /// Dimension of the simple Lie algebra of this type.
    pub fn algebra_dim(&self) -> usize {
        self.rank + 2 * positive_root_count(*self)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid Dynkin type {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        DynkinType::new(family, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Closed-form number of positive roots.
pub(crate) fn positive_root_count(t: DynkinType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

/// Cartan matrix, 0-indexed, `C[i][j] = <alpha_i, alpha_j^vee>`.
pub fn cartan_matrix(t: DynkinType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t.family {
        Family::A => (1..n).for_each(|i| link(i - 1, i)),
        Family::B | Family::C => (1..n).for_each(|i| link(i - 1, i)),
        Family::D => {
            (1..n - 1).for_each(|i| link(i - 1, i));
            link(n - 3, n - 1);
        }
        Family::E => {
            // 1-3-4-5-6(-7-8), node 2 hangs off node 4
            link(0, 2);
            link(1, 3);
            (3..n).for_each(|i| link(i - 1, i));
        }
        Family::F | Family::G => link(0, 1),
    }
    if t.family == Family::F {
        link(1, 2);
        link(2, 3);
    }
    match t.family {
        // alpha_n short
        Family::B => c[n - 2][n - 1] = -2,
        // alpha_n long
        Family::C => c[n - 1][n - 2] = -2,
        // alpha_2 long, alpha_3 short
        Family::F => c[1][2] = -2,
        // alpha_1 short, alpha_2 long
        Family::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// A root system with its positive roots listed by height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    dynkin_type: DynkinType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    pub fn rank(&self) -> usize {
        self.dynkin_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots sorted by height; the first `rank` are the simple roots.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn node_ids(&self) -> impl Iterator<Item = usize> {
        1..=self.rank()
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("root systems are nonempty")
    }

    /// `<beta, alpha_i^vee>` for a root `beta` given in the simple-root basis.
    pub fn pair_with_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan).map(|(c, row)| c * row[i]).sum()
    }

    /// Dimension of the Lie algebra: rank plus the number of roots.
    pub fn algebra_dim(&self) -> usize {
        self.rank() + 2 * self.positive_roots.len()
    }
}

/// Generates the positive roots by breadth-first closure from the simple
/// roots, using the `alpha_i`-string through each root.
pub fn build_root_system(t: DynkinType) -> RootSystem {
    let cartan = cartan_matrix(t);
    let n = t.rank;
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut queue: VecDeque<usize> = (0..n).collect();

    while let Some(idx) = queue.pop_front() {
        let beta = roots[idx].clone();
        for i in 0..n {
            // r: how far down the alpha_i-string goes from beta
            let mut r = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if down[i] < 0 || !seen.contains(&down) {
                    break;
                }
                r += 1;
            }
            let pairing: i64 = beta.iter().zip(&cartan).map(|(c, row)| c * row[i]).sum();
            if r - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if seen.insert(up.clone()) {
                    roots.push(up);
                    queue.push_back(roots.len() - 1);
                }
            }
        }
    }
    // BFS visits in height order already; sort for a canonical listing.
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    RootSystem { dynkin_type: t, cartan, positive_roots: roots }
}

/// A node permutation preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    dynkin_type: DynkinType,
    // perm[i] = image of node i+1, stored 0-indexed
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(t: DynkinType) -> Self {
        DiagramAutomorphism { dynkin_type: t, perm: (0..t.rank).collect() }
    }

    /// Builds an automorphism from a 1-indexed image list: `images[i-1] = gamma(i)`.
    pub fn from_images(t: DynkinType, images: &[usize]) -> Result<Self> {
        let n = t.rank;
        if images.len() != n {
            return Err(Error::NotAnAutomorphism(format!("expected {n} images, got {}", images.len())));
        }
        let perm: Vec<usize> = images.iter().map(|&j| j.wrapping_sub(1)).collect();
        let mut hit = vec![false; n];
        for &j in &perm {
            if j >= n || std::mem::replace(&mut hit[j], true) {
                return Err(Error::NotAnAutomorphism(format!("{images:?} is not a permutation of 1..={n}")));
            }
        }
        let c = cartan_matrix(t);
        for i in 0..n {
            for j in 0..n {
                if c[perm[i]][perm[j]] != c[i][j] {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{images:?} does not preserve the Cartan matrix of {t}"
                    )));
                }
            }
        }
        Ok(DiagramAutomorphism { dynkin_type: t, perm })
    }

    /// The transposition of two nodes (1-indexed), if it is an automorphism.
    pub fn transposition(t: DynkinType, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=t.rank).collect();
        if a == 0 || b == 0 || a > t.rank || b > t.rank {
            return Err(Error::NotAnAutomorphism(format!("nodes ({a} {b}) out of range for {t}")));
        }
        images.swap(a - 1, b - 1);
        Self::from_images(t, &images)
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    /// Image of a 1-indexed node.
    pub fn image(&self, node: usize) -> usize {
        self.perm[node - 1] + 1
    }

    /// 1-indexed image list.
    pub fn images(&self) -> Vec<usize> {
        self.perm.iter().map(|j| j + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dynkin_type != other.dynkin_type {
            return Err(Error::TypeMismatch { left: self.dynkin_type, right: other.dynkin_type });
        }
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        Ok(DiagramAutomorphism { dynkin_type: self.dynkin_type, perm })
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
        }
        DiagramAutomorphism { dynkin_type: self.dynkin_type, perm }
    }

    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = self.compose(&g).expect("same type");
            k += 1;
        }
        k
    }

    pub(crate) fn perm0(&self) -> &[usize] {
        &self.perm
    }
}

impl fmt::Display for DiagramAutomorphism {
    /// Cycle notation on 1-indexed nodes, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.perm.len();
        let mut done = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if done[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = vec![];
            let mut i = start;
            while !done[i] {
                done[i] = true;
                cycle.push(i + 1);
                i = self.perm[i];
            }
            write!(f, "({})", cycle.iter().join(" "))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// All Cartan-matrix-preserving permutations of the nodes, identity first.
///
/// Backtracking over node images, pruning as soon as a partial assignment
/// breaks an entry of the Cartan matrix.
pub fn diagram_automorphisms(t: DynkinType) -> Vec<DiagramAutomorphism> {
    fn extend(c: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == c.len() {
            out.push(perm.clone());
            return;
        }
        for j in 0..c.len() {
            if used[j] || c[j][j] != c[i][i] {
                continue;
            }
            if (0..i).all(|k| c[perm[k]][j] == c[k][i] && c[j][perm[k]] == c[i][k]) {
                used[j] = true;
                perm.push(j);
                extend(c, perm, used, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    let c = cartan_matrix(t);
    let mut perms = vec![];
    extend(&c, &mut vec![], &mut vec![false; t.rank], &mut perms);
    perms.sort();
    perms.into_iter().map(|perm| DiagramAutomorphism { dynkin_type: t, perm }).collect()
}

/// Whether `p` exceeds every coefficient of every positive root.
pub fn good_prime(t: DynkinType, p: u64) -> bool {
    let rs = build_root_system(t);
    let max = rs
        .positive_roots()
        .iter()
        .flat_map(|r| r.iter().copied())
        .max()
        .unwrap_or(1);
    p > max as u64
}

/// Coxeter number, computed as (number of roots) / rank.
pub fn coxeter_number(t: DynkinType) -> usize {
    let rs = build_root_system(t);
    2 * rs.positive_roots().len() / t.rank
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
