//! Frobenius–Lie morphisms and the stability of nilpotent orbits.
//!
//! Up to equivalence a Frobenius morphism on a simple Lie algebra is a split
//! one followed by a diagram automorphism `gamma`. An orbit is stable under
//! it exactly when its weighted Dynkin diagram is fixed by `gamma`, and a
//! stable orbit carries `F_q`-rational points. Everything here therefore
//! reduces to permuting diagram labels.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbits::{enumerate_orbit_labels, OrbitLabel};
use crate::roottypes::{coxeter_number, diagram_automorphisms, good_prime, is_prime, DiagramAutomorphism, DynkinType, Family};
use crate::wdd::{apply_automorphism, weighted_diagram, WeightedDynkinDiagram};

/// A Frobenius morphism named by its twisting diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDescriptor {
    twist: DiagramAutomorphism,
    name: String,
}

impl FrobeniusDescriptor {
    /// Wraps an arbitrary diagram automorphism under a caller-chosen name.
    pub fn from_twist(twist: DiagramAutomorphism, name: impl Into<String>) -> Self {
        FrobeniusDescriptor { twist, name: name.into() }
    }

    pub fn split(t: DynkinType) -> Self {
        Self::from_twist(DiagramAutomorphism::identity(t), "F0")
    }

    /// Looks up a descriptor by name: `F0`/`split`, `F1`/`twisted` for types
    /// with a single twist, `F1`, `F2`, `F3` for `D4` (twists `(3 4)`,
    /// `(1 3)`, `(1 4)`).
    pub fn by_name(t: DynkinType, name: &str) -> Result<Self> {
        let unknown = || Error::UnknownFrobenius { dynkin_type: t, name: name.to_string() };
        let key = name.trim();
        if key.eq_ignore_ascii_case("split") || key.eq_ignore_ascii_case("F0") {
            return Ok(Self::split(t));
        }
        if is_d4(t) {
            let (a, b) = match key.to_ascii_uppercase().as_str() {
                "F1" => (3, 4),
                "F2" => (1, 3),
                "F3" => (1, 4),
                _ => return Err(unknown()),
            };
            let twist = DiagramAutomorphism::transposition(t, a, b)?;
            return Ok(Self::from_twist(twist, key.to_ascii_uppercase()));
        }
        if key.eq_ignore_ascii_case("twisted") || key.eq_ignore_ascii_case("F1") {
            let twist = diagram_automorphisms(t).into_iter().find(|g| !g.is_identity()).ok_or_else(unknown)?;
            return Ok(Self::from_twist(twist, "F1"));
        }
        Err(unknown())
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.twist.dynkin_type()
    }

    pub fn twist(&self) -> &DiagramAutomorphism {
        &self.twist
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_split(&self) -> bool {
        self.twist.is_identity()
    }
}

impl fmt::Display for FrobeniusDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_split() {
            write!(f, "{} (split)", self.name)
        } else {
            write!(f, "{} = {}", self.name, self.twist)
        }
    }
}

fn is_d4(t: DynkinType) -> bool {
    t.family() == Family::D && t.rank() == 4
}

/// One representative per equivalence class of Frobenius morphism.
pub fn frobenius_classes(t: DynkinType) -> Vec<FrobeniusDescriptor> {
    let names: &[&str] = if is_d4(t) {
        &["F0", "F1", "F2"]
    } else if diagram_automorphisms(t).len() > 1 {
        &["F0", "F1"]
    } else {
        &["F0"]
    };
    names.iter().map(|n| FrobeniusDescriptor::by_name(t, n).expect("class name resolves")).collect()
}

/// Stability of a given diagram under `f`: the diagram is fixed by the twist.
pub fn is_stable_diagram(d: &WeightedDynkinDiagram, f: &FrobeniusDescriptor) -> Result<bool> {
    Ok(apply_automorphism(f.twist(), d)? == *d)
}

pub fn is_stable(label: &OrbitLabel, f: &FrobeniusDescriptor) -> Result<bool> {
    if label.dynkin_type() != f.dynkin_type() {
        return Err(Error::TypeMismatch { left: label.dynkin_type(), right: f.dynkin_type() });
    }
    if f.is_split() {
        return Ok(true);
    }
    is_stable_diagram(&weighted_diagram(label)?, f)
}

/// The permutation of orbit labels induced by `f`, as `(orbit, image)` pairs
/// in label order.
pub fn orbit_action(f: &FrobeniusDescriptor) -> Result<Vec<(OrbitLabel, OrbitLabel)>> {
    let labels = enumerate_orbit_labels(f.dynkin_type())?;
    let diagrams = labels.iter().map(weighted_diagram).collect::<Result<Vec<_>>>()?;
    let by_diagram: HashMap<&WeightedDynkinDiagram, &OrbitLabel> = diagrams.iter().zip(&labels).collect();
    labels
        .iter()
        .zip(&diagrams)
        .map(|(l, d)| {
            let image = apply_automorphism(f.twist(), d)?;
            let target = by_diagram
                .get(&image)
                .ok_or_else(|| Error::InvalidDiagram(format!("{image} is not the diagram of any orbit")))?;
            Ok((l.clone(), (*target).clone()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub orbit: OrbitLabel,
    pub frobenius: String,
    pub stable: bool,
    pub image: OrbitLabel,
    #[serde(rename = "rational_point")]
    pub has_rational_point: bool,
}

/// Stability of every orbit of a type under one Frobenius morphism over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityReport {
    #[serde(rename = "type")]
    pub dynkin_type: DynkinType,
    pub frobenius: String,
    pub p: u64,
    pub q: u64,
    pub coxeter_number: usize,
    /// `p >= h`, in which case the nilpotent cone equals the restricted nullcone.
    pub nilpotent_cone_restricted: bool,
    pub orbits: Vec<StabilityReport>,
}

impl RationalityReport {
    pub fn stable_count(&self) -> usize {
        self.orbits.iter().filter(|r| r.stable).count()
    }
}

/// Checks the standing hypotheses: `p` a good prime with `p > 3`, `q` a power of `p`.
pub fn check_characteristic(t: DynkinType, p: u64, q: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::BadCharacteristic(format!("p = {p} is not prime")));
    }
    if p <= 3 {
        return Err(Error::BadCharacteristic(format!("p = {p} but p > 3 is required")));
    }
    if !good_prime(t, p) {
        return Err(Error::BadCharacteristic(format!("p = {p} is not a good prime for {t}")));
    }
    let mut x = q;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    if q < p || x != 1 {
        return Err(Error::BadCharacteristic(format!("q = {q} is not a power of p = {p}")));
    }
    Ok(())
}

pub fn rationality_report(f: &FrobeniusDescriptor, p: u64, q: u64) -> Result<RationalityReport> {
    let t = f.dynkin_type();
    check_characteristic(t, p, q)?;
    let action = orbit_action(f)?;
    let orbits = action
        .into_par_iter()
        .map(|(orbit, image)| {
            let stable = orbit == image;
            StabilityReport { orbit, frobenius: f.name().to_string(), stable, image, has_rational_point: stable }
        })
        .collect();
    let h = coxeter_number(t);
    Ok(RationalityReport {
        dynkin_type: t,
        frobenius: f.name().to_string(),
        p,
        q,
        coxeter_number: h,
        nilpotent_cone_restricted: p as usize >= h,
        orbits,
    })
}

/// Stability of a caller-supplied diagram, for types without built-in orbit data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStability {
    pub diagram: WeightedDynkinDiagram,
    pub frobenius: String,
    pub stable: bool,
    pub image: WeightedDynkinDiagram,
    #[serde(rename = "rational_point")]
    pub has_rational_point: bool,
}

pub fn diagram_stability(d: &WeightedDynkinDiagram, f: &FrobeniusDescriptor, p: u64, q: u64) -> Result<DiagramStability> {
    check_characteristic(f.dynkin_type(), p, q)?;
    let image = apply_automorphism(f.twist(), d)?;
    let stable = image == *d;
    Ok(DiagramStability {
        diagram: d.clone(),
        frobenius: f.name().to_string(),
        stable,
        image,
        has_rational_point: stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    fn label(s: &str) -> OrbitLabel {
        s.parse().unwrap()
    }

    fn moved(f: &FrobeniusDescriptor) -> Vec<(String, String)> {
        orbit_action(f)
            .unwrap()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn class_lists() {
        let names = |t: &str| frobenius_classes(ty(t)).iter().map(|f| f.to_string()).collect::<Vec<_>>();
        assert_eq!(names("C3"), ["F0 (split)"]);
        assert_eq!(names("A4"), ["F0 (split)", "F1 = (1 4)(2 3)"]);
        assert_eq!(names("D4"), ["F0 (split)", "F1 = (3 4)", "F2 = (1 3)"]);
        assert_eq!(names("E6"), ["F0 (split)", "F1 = (1 6)(3 5)"]);
        assert_eq!(names("A1"), ["F0 (split)"]);
    }

    #[test]
    fn lookup_by_name() {
        assert!(FrobeniusDescriptor::by_name(ty("A5"), "twisted").unwrap().twist().order() == 2);
        assert!(FrobeniusDescriptor::by_name(ty("D4"), "f3").unwrap().twist().image(4) == 1);
        assert!(FrobeniusDescriptor::by_name(ty("B3"), "twisted").is_err());
        assert!(FrobeniusDescriptor::by_name(ty("D4"), "twisted").is_err());
        assert!(FrobeniusDescriptor::by_name(ty("D5"), "F2").is_err());
        assert!(FrobeniusDescriptor::by_name(ty("G2"), "split").unwrap().is_split());
    }

    #[test]
    fn stability_examples() {
        let split = FrobeniusDescriptor::split(ty("D4"));
        assert!(is_stable(&label("D4:[4,4]:I"), &split).unwrap());
        let tw = FrobeniusDescriptor::by_name(ty("A5"), "twisted").unwrap();
        assert!(is_stable(&label("A5:[4,2]"), &tw).unwrap());
        let f1 = FrobeniusDescriptor::by_name(ty("D4"), "F1").unwrap();
        assert!(!is_stable(&label("D4:[4,4]:I"), &f1).unwrap());
        assert!(is_stable(&label("A5:[4,2]"), &f1).is_err());
    }

    #[test]
    fn d6_twist_swaps_very_even_pairs() {
        let f = FrobeniusDescriptor::by_name(ty("D6"), "twisted").unwrap();
        let m = moved(&f);
        assert!(m.contains(&("D6:[4,4,2,2]:I".into(), "D6:[4,4,2,2]:II".into())));
        assert!(m.iter().all(|(a, b)| a.ends_with('I') && b.ends_with('I')));
        // [6,6], [4,4,2,2], [2^6] and their mates
        assert_eq!(m.len(), 6);
    }

    #[test]
    fn d4_exchanges() {
        let f = |n: &str| FrobeniusDescriptor::by_name(ty("D4"), n).unwrap();
        let pair = |a: &str, b: &str| [(a.to_string(), b.to_string()), (b.to_string(), a.to_string())];
        let mut expect_f2: Vec<_> =
            pair("D4:[2,2,2,2]:II", "D4:[3,1,1,1,1,1]").into_iter().chain(pair("D4:[4,4]:II", "D4:[5,1,1,1]")).collect();
        let mut got = moved(&f("F2"));
        expect_f2.sort();
        got.sort();
        assert_eq!(got, expect_f2);
        assert!(moved(&f("F0")).is_empty());
    }

    #[test]
    fn reports() {
        let tw = FrobeniusDescriptor::by_name(ty("A3"), "twisted").unwrap();
        let r = rationality_report(&tw, 5, 5).unwrap();
        assert_eq!((r.orbits.len(), r.stable_count()), (5, 5));
        assert!(r.orbits.iter().all(|o| o.has_rational_point));
        assert!(r.nilpotent_cone_restricted);

        let f1 = FrobeniusDescriptor::by_name(ty("D4"), "F1").unwrap();
        let r = rationality_report(&f1, 5, 25).unwrap();
        assert_eq!((r.orbits.len(), r.stable_count()), (12, 8));
        assert!(!r.nilpotent_cone_restricted);
        for o in &r.orbits {
            assert_eq!(o.stable, o.image == o.orbit);
            assert_eq!(o.has_rational_point, o.stable);
        }
        let line = serde_json::to_string(&r.orbits[3]).unwrap();
        assert_eq!(line, r#"{"orbit":"D4:[4,4]:I","frobenius":"F1","stable":false,"image":"D4:[4,4]:II","rational_point":false}"#);
    }

    #[test]
    fn characteristic_hypotheses() {
        let f1 = FrobeniusDescriptor::by_name(ty("D4"), "F1").unwrap();
        for (p, q) in [(3, 9), (2, 4), (5, 10), (5, 3), (4, 16), (5, 1)] {
            assert!(matches!(rationality_report(&f1, p, q), Err(Error::BadCharacteristic(_))), "p={p} q={q}");
        }
        assert!(check_characteristic(ty("E8"), 5, 5).is_err());
        assert!(check_characteristic(ty("E8"), 7, 49).is_ok());
    }

    #[test]
    fn supplied_diagram_for_e6() {
        let e6 = ty("E6");
        let tw = FrobeniusDescriptor::by_name(e6, "twisted").unwrap();
        let sym = WeightedDynkinDiagram::new(e6, vec![1, 0, 0, 1, 0, 1]).unwrap();
        assert!(diagram_stability(&sym, &tw, 5, 5).unwrap().stable);
        let asym = WeightedDynkinDiagram::new(e6, vec![2, 0, 0, 0, 0, 0]).unwrap();
        let r = diagram_stability(&asym, &tw, 5, 5).unwrap();
        assert!(!r.stable);
        assert_eq!(r.image.labels(), &[0, 0, 0, 0, 0, 2]);
        assert!(is_stable(&label("A2:[3]"), &FrobeniusDescriptor::split(ty("A2"))).unwrap());
    }
}
