//! Weighted Dynkin diagrams.
//!
//! A nilpotent orbit is determined by its weighted Dynkin diagram, a labelling
//! of the nodes by `0`, `1` or `2`. For types `A` and `D` the labels come
//! from the *h-list* of the partition: each part `d` contributes the weights
//! `d-1, d-3, ..., -d+1`, and the merged list is sorted in non-increasing
//! order as `h_1 >= h_2 >= ...`.
//!
//! * type `A`: node `i` gets `h_i - h_{i+1}`;
//! * type `D_n`: chain node `i <= n-2` gets `h_i - h_{i+1}`, and with
//!   `a = h_{n-1} - h_n`, `b = h_{n-1} + h_n` the fork gets `(top, right) =
//!   (a, b)`. For very even partitions `a = 0`; decoration `I` keeps this
//!   assignment and `II` swaps the fork labels.
//!
//! `D4` diagrams are served from a fixed table, see [`d4_table`].
//!
//! A diagram determines a cocharacter `lambda = sum a_i alpha_i^vee` with
//! `<alpha_j, lambda> = b_j`; the eigenvalues of `lambda` grade the algebra
//! and give the orbit dimension as `dim g - dim g(0) - dim g(1)`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, to_integer, RationalMatrix};
use crate::orbits::{is_very_even, Decoration, OrbitLabel, Partition};
use crate::roottypes::{build_root_system, DiagramAutomorphism, DynkinType, Family, RootSystem};

/// The merged sl2-weights of a partition, non-increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HList(Vec<i64>);

impl HList {
    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `h_i`, 1-indexed.
    pub fn h(&self, i: usize) -> i64 {
        self.0[i - 1]
    }
}

pub fn h_list(p: &Partition) -> HList {
    let mut w: Vec<i64> = p
        .parts()
        .iter()
        .flat_map(|&d| {
            let d = d as i64;
            (0..d).map(move |k| d - 1 - 2 * k)
        })
        .collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    HList(w)
}

/// Node labels of a Dynkin diagram, each in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedDynkinDiagram {
    dynkin_type: DynkinType,
    labels: Vec<i64>,
}

impl WeightedDynkinDiagram {
    /// `labels[i]` is the label of node `i + 1`.
    pub fn new(dynkin_type: DynkinType, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != dynkin_type.rank() {
            return Err(Error::InvalidDiagram(format!(
                "{dynkin_type} has {} nodes, got {} labels",
                dynkin_type.rank(),
                labels.len()
            )));
        }
        if let Some(x) = labels.iter().find(|x| !(0..=2).contains(*x)) {
            return Err(Error::InvalidDiagram(format!("label {x} outside {{0,1,2}}")));
        }
        Ok(WeightedDynkinDiagram { dynkin_type, labels })
    }

    pub fn zero(t: DynkinType) -> Self {
        WeightedDynkinDiagram { dynkin_type: t, labels: vec![0; t.rank()] }
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Label of a 1-indexed node.
    pub fn label(&self, node: usize) -> i64 {
        self.labels[node - 1]
    }

    pub fn is_palindrome(&self) -> bool {
        self.labels.iter().eq(self.labels.iter().rev())
    }
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.labels.iter().join(","))
    }
}

impl Serialize for WeightedDynkinDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Labels<'a>(&'a [i64]);
        impl Serialize for Labels<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (i, x) in self.0.iter().enumerate() {
                    m.serialize_entry(&(i + 1).to_string(), x)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("type", &self.dynkin_type)?;
        m.serialize_entry("labels", &Labels(&self.labels))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for WeightedDynkinDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "type")]
            dynkin_type: DynkinType,
            labels: BTreeMap<String, i64>,
        }
        let raw = Raw::deserialize(d)?;
        let n = raw.dynkin_type.rank();
        let mut labels = vec![None; n];
        for (k, v) in raw.labels {
            let node: usize = k.parse().map_err(|_| D::Error::custom(format!("bad node id {k:?}")))?;
            if node == 0 || node > n {
                return Err(D::Error::custom(format!("node {node} out of range for {}", raw.dynkin_type)));
            }
            labels[node - 1] = Some(v);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| D::Error::custom(format!("missing label for node {}", i + 1))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        WeightedDynkinDiagram::new(raw.dynkin_type, labels).map_err(D::Error::custom)
    }
}

/// The label at node `gamma(i)` of the result is the label at node `i` of `d`.
pub fn apply_automorphism(gamma: &DiagramAutomorphism, d: &WeightedDynkinDiagram) -> Result<WeightedDynkinDiagram> {
    if gamma.dynkin_type() != d.dynkin_type {
        return Err(Error::TypeMismatch { left: gamma.dynkin_type(), right: d.dynkin_type });
    }
    let mut labels = vec![0; d.labels.len()];
    for (i, &j) in gamma.perm0().iter().enumerate() {
        labels[j] = d.labels[i];
    }
    Ok(WeightedDynkinDiagram { dynkin_type: d.dynkin_type, labels })
}

fn require_family(label: &OrbitLabel, family: Family) -> Result<()> {
    if label.dynkin_type().family() != family {
        return Err(Error::InvalidLabel(format!("{label} is not a type {family:?} label")));
    }
    Ok(())
}

pub fn wdd_type_a(label: &OrbitLabel) -> Result<WeightedDynkinDiagram> {
    require_family(label, Family::A)?;
    let h = h_list(label.partition());
    let labels = h.weights().windows(2).map(|w| w[0] - w[1]).collect();
    WeightedDynkinDiagram::new(label.dynkin_type(), labels)
}

/// The general type-`D` formula, valid for every `n >= 4`.
pub fn wdd_type_d(label: &OrbitLabel) -> Result<WeightedDynkinDiagram> {
    require_family(label, Family::D)?;
    let n = label.dynkin_type().rank();
    let h = h_list(label.partition());
    let mut labels: Vec<i64> = (1..=n - 2).map(|i| h.h(i) - h.h(i + 1)).collect();
    let a = h.h(n - 1) - h.h(n);
    let b = h.h(n - 1) + h.h(n);
    debug_assert_eq!(label.decoration().is_some(), is_very_even(label.partition()));
    match label.decoration() {
        None | Some(Decoration::I) => labels.extend([a, b]),
        Some(Decoration::II) => labels.extend([b, a]),
    }
    WeightedDynkinDiagram::new(label.dynkin_type(), labels)
}

/// The twelve `D4` diagrams, node order (left, central, top, right).
///
/// Ten rows are fixed data. `[3²,1²]` and `[3,2²,1]` are filled in by
/// [`wdd_type_d`].
pub fn d4_table() -> Vec<(OrbitLabel, WeightedDynkinDiagram)> {
    const FIXED: [(&str, [i64; 4]); 10] = [
        ("D4:[7,1]", [2, 2, 2, 2]),
        ("D4:[5,3]", [2, 0, 2, 2]),
        ("D4:[5,1,1,1]", [2, 2, 0, 0]),
        ("D4:[4,4]:I", [0, 2, 0, 2]),
        ("D4:[4,4]:II", [0, 2, 2, 0]),
        ("D4:[3,1,1,1,1,1]", [2, 0, 0, 0]),
        ("D4:[2,2,2,2]:I", [0, 0, 0, 2]),
        ("D4:[2,2,2,2]:II", [0, 0, 2, 0]),
        ("D4:[2,2,1,1,1,1]", [0, 1, 0, 0]),
        ("D4:[1,1,1,1,1,1,1,1]", [0, 0, 0, 0]),
    ];
    let d4: DynkinType = "D4".parse().expect("valid type");
    let mut table: Vec<(OrbitLabel, WeightedDynkinDiagram)> = FIXED
        .iter()
        .map(|(s, l)| {
            let label: OrbitLabel = s.parse().expect("valid D4 label");
            (label, WeightedDynkinDiagram { dynkin_type: d4, labels: l.to_vec() })
        })
        .collect();
    for s in ["D4:[3,3,1,1]", "D4:[3,2,2,1]"] {
        let label: OrbitLabel = s.parse().expect("valid D4 label");
        let d = wdd_type_d(&label).expect("valid D4 label");
        table.push((label, d));
    }
    table.sort_by(|a, b| a.0.cmp(&b.0));
    table
}

/// Diagram of any type-`A` or type-`D` orbit label.
pub fn weighted_diagram(label: &OrbitLabel) -> Result<WeightedDynkinDiagram> {
    let t = label.dynkin_type();
    match t.family() {
        Family::A => wdd_type_a(label),
        Family::D if t.rank() == 4 => {
            let d = d4_table()
                .into_iter()
                .find(|(l, _)| l == label)
                .map(|(_, d)| d)
                .ok_or_else(|| Error::InvalidLabel(label.to_string()))?;
            debug_assert_eq!(Ok(&d), wdd_type_d(label).as_ref());
            Ok(d)
        }
        Family::D => wdd_type_d(label),
        _ => Err(Error::DiagramUnavailable(label.to_string())),
    }
}

/// Cocharacter `sum a_i alpha_i^vee` in coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    dynkin_type: DynkinType,
    coefficients: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// `<beta, lambda>` for a root `beta` in the simple-root basis.
    pub fn pairing(&self, rs: &RootSystem, beta: &[i64]) -> i64 {
        let c = rs.cartan_matrix();
        beta.iter()
            .enumerate()
            .map(|(j, bj)| bj * self.coefficients.iter().enumerate().map(|(i, a)| a * c[j][i]).sum::<i64>())
            .sum()
    }

    /// `<alpha_j, lambda>` for every simple root.
    pub fn simple_pairings(&self) -> Vec<i64> {
        let rs = build_root_system(self.dynkin_type);
        (0..self.coefficients.len())
            .map(|j| {
                let mut e = vec![0; self.coefficients.len()];
                e[j] = 1;
                self.pairing(&rs, &e)
            })
            .collect()
    }
}

/// Solves `sum_i a_i C[j][i] = b_j` exactly and insists on integer `a`.
pub fn one_param_subgroup(d: &WeightedDynkinDiagram) -> Result<OneParamSubgroup> {
    let t = d.dynkin_type;
    let c = crate::roottypes::cartan_matrix(t);
    let system = RationalMatrix::from_i64(&c);
    let rhs: Vec<_> = d.labels.iter().map(|&b| rat(b)).collect();
    let sol = system
        .solve(&rhs)
        .ok_or_else(|| Error::NotIntegral(format!("{d} on {t}: singular Cartan system")))?;
    let coefficients = sol
        .iter()
        .map(to_integer)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotIntegral(format!("{d} on {t}: coroot coefficients {}", sol.iter().join(", "))))?;
    Ok(OneParamSubgroup { dynkin_type: t, coefficients })
}

fn root_pairings(d: &WeightedDynkinDiagram) -> Result<(RootSystem, Vec<i64>)> {
    let rs = build_root_system(d.dynkin_type);
    let lambda = one_param_subgroup(d)?;
    let pairings = rs.positive_roots().iter().map(|r| lambda.pairing(&rs, r)).collect();
    Ok((rs, pairings))
}

/// `dim g(lambda, i)`: roots of either sign pairing to `i`, plus the Cartan
/// subalgebra when `i = 0`.
pub fn grading_dimension(d: &WeightedDynkinDiagram, i: i64) -> Result<usize> {
    let (rs, pairings) = root_pairings(d)?;
    let roots = pairings.iter().filter(|&&x| x == i || x == -i).count() * if i == 0 { 2 } else { 1 };
    Ok(roots + if i == 0 { rs.rank() } else { 0 })
}

pub fn orbit_dimension(d: &WeightedDynkinDiagram) -> Result<usize> {
    let dim = d.dynkin_type.algebra_dim();
    Ok(dim - grading_dimension(d, 0)? - grading_dimension(d, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::enumerate_orbit_labels;
    use std::collections::HashSet;

    fn label(s: &str) -> OrbitLabel {
        s.parse().unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn diag(t: &str, l: &[i64]) -> WeightedDynkinDiagram {
        WeightedDynkinDiagram::new(t.parse().unwrap(), l.to_vec()).unwrap()
    }

    #[test]
    fn h_list_examples() {
        assert_eq!(h_list(&part(&[2, 1])).weights(), &[1, 0, -1]);
        assert_eq!(h_list(&part(&[1, 1, 1, 1])).weights(), &[0, 0, 0, 0]);
        assert_eq!(h_list(&part(&[4, 4])).weights(), &[3, 3, 1, 1, -1, -1, -3, -3]);
        assert_eq!(h_list(&part(&[3, 3, 1, 1])).weights(), &[2, 2, 0, 0, 0, 0, -2, -2]);
    }

    #[test]
    fn h_lists_are_negation_symmetric() {
        for n in 1..=12 {
            for p in Partition::all(n) {
                let w = h_list(&p);
                assert_eq!(w.weights().len(), n);
                let neg: Vec<i64> = w.weights().iter().rev().map(|x| -x).collect();
                assert_eq!(neg, w.weights());
            }
        }
    }

    #[test]
    fn type_a_examples() {
        assert_eq!(wdd_type_a(&label("A2:[3]")).unwrap().labels(), &[2, 2]);
        assert_eq!(wdd_type_a(&label("A2:[1,1,1]")).unwrap().labels(), &[0, 0]);
        assert_eq!(wdd_type_a(&label("A2:[2,1]")).unwrap().labels(), &[1, 1]);
        assert!(wdd_type_a(&label("D4:[5,3]")).is_err());
    }

    #[test]
    fn type_d_examples() {
        assert_eq!(wdd_type_d(&label("D4:[4,4]:I")).unwrap().labels(), &[0, 2, 0, 2]);
        assert_eq!(wdd_type_d(&label("D4:[1,1,1,1,1,1,1,1]")).unwrap().labels(), &[0, 0, 0, 0]);
        let d5 = label("D5:[2,2,2,2,1,1]");
        assert_eq!(&h_list(d5.partition()).weights()[..5], &[1, 1, 1, 1, 0]);
        assert_eq!(wdd_type_d(&d5).unwrap().labels(), &[0, 0, 0, 1, 1]);
    }

    #[test]
    fn d4_table_rows() {
        let table: Vec<(String, Vec<i64>)> =
            d4_table().into_iter().map(|(l, d)| (l.to_string(), d.labels().to_vec())).collect();
        assert_eq!(table.len(), 12);
        let get = |s: &str| table.iter().find(|(l, _)| l == s).unwrap().1.clone();
        assert_eq!(get("D4:[5,3]"), [2, 0, 2, 2]);
        assert_eq!(get("D4:[2,2,2,2]:II"), [0, 0, 2, 0]);
        assert_eq!(get("D4:[3,3,1,1]"), [0, 2, 0, 0]);
        assert_eq!(get("D4:[3,2,2,1]"), [1, 0, 1, 1]);
    }

    #[test]
    fn d4_table_agrees_with_general_formula() {
        for (l, d) in d4_table() {
            assert_eq!(wdd_type_d(&l).unwrap(), d, "{l}");
            if l.decoration().is_some() {
                assert_eq!(d.label(3).min(d.label(4)), 0, "{l}: a = 0 for very even");
            }
        }
    }

    #[test]
    fn apply_automorphism_examples() {
        let d4: DynkinType = "D4".parse().unwrap();
        let s1 = DiagramAutomorphism::transposition(d4, 3, 4).unwrap();
        assert_eq!(apply_automorphism(&s1, &diag("D4", &[0, 2, 0, 2])).unwrap().labels(), &[0, 2, 2, 0]);
        let a2: DynkinType = "A2".parse().unwrap();
        let rev = DiagramAutomorphism::from_images(a2, &[2, 1]).unwrap();
        assert_eq!(apply_automorphism(&rev, &diag("A2", &[1, 1])).unwrap().labels(), &[1, 1]);
        assert_eq!(apply_automorphism(&rev, &diag("A2", &[2, 0])).unwrap().labels(), &[0, 2]);
        let id = DiagramAutomorphism::identity(d4);
        let d = diag("D4", &[1, 0, 1, 1]);
        assert_eq!(apply_automorphism(&id, &d).unwrap(), d);
        assert!(apply_automorphism(&rev, &d).is_err());
    }

    #[test]
    fn automorphisms_act_as_a_group() {
        for t in ["D4", "A5", "D6", "E6"] {
            let t: DynkinType = t.parse().unwrap();
            let group = crate::roottypes::diagram_automorphisms(t);
            let d = WeightedDynkinDiagram::new(t, (0..t.rank()).map(|i| (i % 3) as i64).collect()).unwrap();
            for g in &group {
                for h in &group {
                    let lhs = apply_automorphism(g, &apply_automorphism(h, &d).unwrap()).unwrap();
                    let rhs = apply_automorphism(&g.compose(h).unwrap(), &d).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn labels_stay_in_range_and_diagrams_are_injective() {
        for n in 1..=12 {
            let t: DynkinType = format!("A{n}").parse().unwrap();
            let mut seen = HashSet::new();
            for l in enumerate_orbit_labels(t).unwrap() {
                let d = weighted_diagram(&l).unwrap();
                assert!(d.is_palindrome(), "{l}");
                assert!(seen.insert(d), "{l}");
            }
        }
        for n in 4..=8 {
            let t: DynkinType = format!("D{n}").parse().unwrap();
            let mut seen = HashSet::new();
            for l in enumerate_orbit_labels(t).unwrap() {
                let d = weighted_diagram(&l).unwrap();
                assert!(seen.insert(d), "{l}");
            }
        }
    }

    #[test]
    fn one_param_subgroup_examples() {
        assert_eq!(one_param_subgroup(&diag("A2", &[2, 2])).unwrap().coefficients(), &[2, 2]);
        assert_eq!(one_param_subgroup(&diag("A2", &[1, 1])).unwrap().coefficients(), &[1, 1]);
        for t in ["A1", "B3", "C4", "D5", "E8", "F4", "G2"] {
            let t: DynkinType = t.parse().unwrap();
            let z = one_param_subgroup(&WeightedDynkinDiagram::zero(t)).unwrap();
            assert!(z.coefficients().iter().all(|&a| a == 0));
        }
        assert!(matches!(one_param_subgroup(&diag("A1", &[1])), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn one_param_subgroups_round_trip() {
        for t in ["A6", "D4", "D7"] {
            let t: DynkinType = t.parse().unwrap();
            for l in enumerate_orbit_labels(t).unwrap() {
                let d = weighted_diagram(&l).unwrap();
                let lambda = one_param_subgroup(&d).unwrap();
                assert_eq!(lambda.simple_pairings(), d.labels(), "{l}");
            }
        }
    }

    #[test]
    fn grading_examples() {
        let d = diag("A2", &[1, 1]);
        assert_eq!(grading_dimension(&d, 0).unwrap(), 2);
        assert_eq!(grading_dimension(&d, 1).unwrap(), 2);
        assert_eq!(grading_dimension(&d, 2).unwrap(), 1);
        assert_eq!(grading_dimension(&d, 3).unwrap(), 0);
        assert_eq!(grading_dimension(&d, -2).unwrap(), 1);
    }

    #[test]
    fn grading_sums_to_algebra_dim() {
        let d = weighted_diagram(&label("D4:[3,2,2,1]")).unwrap();
        let total: usize = (-10..=10).map(|i| grading_dimension(&d, i).unwrap()).sum();
        assert_eq!(total, 28);
    }

    #[test]
    fn orbit_dimension_examples() {
        assert_eq!(orbit_dimension(&diag("A2", &[2, 2])).unwrap(), 6);
        assert_eq!(orbit_dimension(&diag("A2", &[1, 1])).unwrap(), 4);
        assert_eq!(orbit_dimension(&WeightedDynkinDiagram::zero("E6".parse().unwrap())).unwrap(), 0);
        // the regular orbit of D4 has dimension 28 - 4
        assert_eq!(orbit_dimension(&diag("D4", &[2, 2, 2, 2])).unwrap(), 24);
    }

    #[test]
    fn diagram_json() {
        let d = diag("D4", &[0, 2, 0, 2]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"type":"D4","labels":{"1":0,"2":2,"3":0,"4":2}}"#);
        assert_eq!(serde_json::from_str::<WeightedDynkinDiagram>(&json).unwrap(), d);
        for bad in [
            r#"{"type":"D4","labels":{"1":0,"2":2,"3":0}}"#,
            r#"{"type":"D4","labels":{"1":0,"2":2,"3":0,"4":3}}"#,
            r#"{"type":"D4","labels":{"1":0,"2":2,"3":0,"5":2}}"#,
            r#"{"type":"D3","labels":{}}"#,
        ] {
            assert!(serde_json::from_str::<WeightedDynkinDiagram>(bad).is_err(), "{bad}");
        }
    }
}
