//! Orbit labels: partitions, very-even decorations and the dominance order.
//!
//! Nilpotent orbits in `sl(n+1)` correspond to partitions of `n+1`. In
//! `so(2n)` they correspond to partitions of `2n` in which every even part
//! has even multiplicity, except that a very even partition names two orbits,
//! decorated `I` and `II`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roottypes::{DynkinType, Family};

/// A partition, stored with parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Canonicalizes `parts` into weakly decreasing order. Zero parts and the
    /// empty partition are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidLabel("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidLabel(format!("zero part in {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of times `value` occurs as a part.
    pub fn multiplicity(&self, value: usize) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.parts.iter().dedup_with_count().map(|(m, &p)| (p, m)).collect()
    }

    /// All partitions of `n`, in descending lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rem.min(max)).rev() {
                cur.push(k);
                go(rem - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        if n > 0 {
            go(n, n, &mut vec![], &mut out);
        }
        out
    }

    /// Compact form with superscript exponents, e.g. `[3,2²,1]`.
    pub fn exponent_notation(&self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let body = self
            .multiplicities()
            .into_iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    let exp: String = m.to_string().chars().map(|c| SUP[c as usize - '0' as usize]).collect();
                    format!("{p}{exp}")
                }
            })
            .join(",");
        format!("[{body}]")
    }

    fn prefix_sums(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.parts.iter().join(","))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the part sequences. This refines dominance.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

/// All parts even, each value occurring an even number of times.
pub fn is_very_even(p: &Partition) -> bool {
    p.multiplicities().iter().all(|&(part, m)| part % 2 == 0 && m % 2 == 0)
}

/// Dominance order: every prefix sum of `a` is at most the matching prefix
/// sum of `b` (missing parts count as zero).
pub fn dominance_leq(a: &Partition, b: &Partition) -> Result<bool> {
    if a.total() != b.total() {
        return Err(Error::UnequalTotals(a.total(), b.total()));
    }
    let (sa, sb): (Vec<_>, Vec<_>) = (a.prefix_sums().collect(), b.prefix_sums().collect());
    let at = |s: &[usize], k: usize| s.get(k).copied().unwrap_or(a.total());
    Ok((0..sa.len().max(sb.len())).all(|k| at(&sa, k) <= at(&sb, k)))
}

/// The `I`/`II` tag distinguishing the two orbits of a very even partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    I,
    II,
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decoration::I => "I",
            Decoration::II => "II",
        })
    }
}

/// The name of a nilpotent orbit, e.g. `A3:[2,2]` or `D4:[4,4]:I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitLabel {
    dynkin_type: DynkinType,
    partition: Partition,
    decoration: Option<Decoration>,
}

impl OrbitLabel {
    pub fn new(dynkin_type: DynkinType, partition: Partition, decoration: Option<Decoration>) -> Result<Self> {
        let n = dynkin_type.rank();
        let invalid = |why: &str| Error::InvalidLabel(format!("{dynkin_type} {partition}: {why}"));
        match dynkin_type.family() {
            Family::A => {
                if partition.total() != n + 1 {
                    return Err(invalid(&format!("parts must sum to {}", n + 1)));
                }
                if decoration.is_some() {
                    return Err(invalid("type A labels carry no decoration"));
                }
            }
            Family::D => {
                if partition.total() != 2 * n {
                    return Err(invalid(&format!("parts must sum to {}", 2 * n)));
                }
                if partition.multiplicities().iter().any(|&(p, m)| p % 2 == 0 && m % 2 == 1) {
                    return Err(invalid("even parts must occur with even multiplicity"));
                }
                match (is_very_even(&partition), decoration) {
                    (true, None) => return Err(invalid("very even partitions need an I/II decoration")),
                    (false, Some(_)) => return Err(invalid("only very even partitions take a decoration")),
                    _ => {}
                }
            }
            _ => return Err(Error::UnsupportedFamily(dynkin_type)),
        }
        Ok(OrbitLabel { dynkin_type, partition, decoration })
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn decoration(&self) -> Option<Decoration> {
        self.decoration
    }

    /// Label in exponent notation, e.g. `D4:[4²]:I`.
    pub fn pretty(&self) -> String {
        let mut s = format!("{}:{}", self.dynkin_type, self.partition.exponent_notation());
        if let Some(d) = self.decoration {
            s.push_str(&format!(":{d}"));
        }
        s
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dynkin_type, self.partition)?;
        if let Some(d) = self.decoration {
            write!(f, ":{d}")?;
        }
        Ok(())
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    /// Grammar: `<family><rank>:[p1,p2,...]` with an optional `:I` or `:II`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("orbit label {s:?}: {why}"));
        let s = s.trim();
        let (ty, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let dynkin_type: DynkinType = ty.parse()?;
        let rest = rest.strip_prefix('[').ok_or_else(|| bad("expected '['"))?;
        let (body, tail) = rest.split_once(']').ok_or_else(|| bad("expected ']'"))?;
        let parts = body
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad("parts must be positive integers")))
            .collect::<Result<Vec<_>>>()?;
        let decoration = match tail {
            "" => None,
            ":I" => Some(Decoration::I),
            ":II" => Some(Decoration::II),
            _ => return Err(bad("decoration must be ':I' or ':II'")),
        };
        OrbitLabel::new(dynkin_type, Partition::new(parts)?, decoration)
    }
}

impl PartialOrd for OrbitLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Output order: type, then partitions descending, then `I` before `II`.
impl Ord for OrbitLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dynkin_type
            .cmp(&other.dynkin_type)
            .then_with(|| other.partition.cmp(&self.partition))
            .then_with(|| self.decoration.cmp(&other.decoration))
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Every orbit label of a type-A or type-D algebra, in output order.
pub fn enumerate_orbit_labels(t: DynkinType) -> Result<Vec<OrbitLabel>> {
    let n = t.rank();
    let mut out = vec![];
    match t.family() {
        Family::A => {
            for p in Partition::all(n + 1) {
                out.push(OrbitLabel { dynkin_type: t, partition: p, decoration: None });
            }
        }
        Family::D => {
            for p in Partition::all(2 * n) {
                if p.multiplicities().iter().any(|&(part, m)| part % 2 == 0 && m % 2 == 1) {
                    continue;
                }
                if is_very_even(&p) {
                    for d in [Decoration::I, Decoration::II] {
                        out.push(OrbitLabel { dynkin_type: t, partition: p.clone(), decoration: Some(d) });
                    }
                } else {
                    out.push(OrbitLabel { dynkin_type: t, partition: p, decoration: None });
                }
            }
        }
        _ => return Err(Error::UnsupportedFamily(t)),
    }
    Ok(out)
}

fn require_closure_domain(label: &OrbitLabel) -> Result<()> {
    if label.decoration.is_some() {
        return Err(Error::DecoratedClosure(label.to_string()));
    }
    if label.dynkin_type.family() != Family::A {
        return Err(Error::ClosureUnsupported(label.dynkin_type));
    }
    Ok(())
}

/// Labels whose orbits lie in the closure of `label`'s orbit: the
/// partitions dominated by it. Type A only.
pub fn closure(label: &OrbitLabel) -> Result<Vec<OrbitLabel>> {
    require_closure_domain(label)?;
    let mut out = vec![];
    for other in enumerate_orbit_labels(label.dynkin_type)? {
        if dominance_leq(&other.partition, &label.partition)? {
            out.push(other);
        }
    }
    Ok(out)
}

/// A finite poset given by its elements and covering relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HassePoset {
    pub labels: Vec<OrbitLabel>,
    /// `(upper, lower)` index pairs with `upper` covering `lower`.
    pub covers: Vec<(usize, usize)>,
}

impl HassePoset {
    fn from_labels(labels: Vec<OrbitLabel>) -> Result<Self> {
        let n = labels.len();
        let mut lt = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                lt[i][j] = i != j && dominance_leq(&labels[i].partition, &labels[j].partition)?;
            }
        }
        let mut covers = vec![];
        for hi in 0..n {
            for lo in 0..n {
                if lt[lo][hi] && !(0..n).any(|m| lt[lo][m] && lt[m][hi]) {
                    covers.push((hi, lo));
                }
            }
        }
        Ok(HassePoset { labels, covers })
    }

    /// Graphviz rendering of the covering edges, larger orbits on top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph closure {\n  rankdir=TB;\n  node [shape=box];\n");
        for l in &self.labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        for &(hi, lo) in &self.covers {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", self.labels[hi], self.labels[lo]));
        }
        s.push_str("}\n");
        s
    }
}

/// Hasse diagram of the closure order on all orbits of a type-A algebra.
pub fn closure_poset(t: DynkinType) -> Result<HassePoset> {
    if t.family() != Family::A {
        return Err(Error::ClosureUnsupported(t));
    }
    HassePoset::from_labels(enumerate_orbit_labels(t)?)
}

/// Hasse diagram restricted to the closure of one orbit.
pub fn closure_hasse(label: &OrbitLabel) -> Result<HassePoset> {
    HassePoset::from_labels(closure(label)?)
}
