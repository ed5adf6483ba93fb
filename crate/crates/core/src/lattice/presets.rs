//! The blowup `X` of projective 3-space along a twisted cubic `C` and a disjoint line `L`,
//! together with the three surfaces used in its stability analysis.
//!
//! The tensor follows from the blowup formulas for a smooth curve of degree `d`
//! and genus `g`: `H.E^2 = -d`, `E^3 = -deg N = -(4d + 2g - 2)`.

use std::sync::Arc;

use super::{CurvePairing, DivisorClass, LatticeBasis, RestrictionMap, SurfaceForm, SurfaceModel, ThreefoldForm, ThreefoldModel};
use crate::ratmath::{int, Rational};

fn basis(names: &[&str]) -> Arc<LatticeBasis> {
    LatticeBasis::new(names).expect("preset basis")
}

fn class(b: &Arc<LatticeBasis>, terms: &[(&str, i64)]) -> DivisorClass<Rational> {
    let terms: Vec<(&str, Rational)> = terms.iter().map(|(n, c)| (*n, int(*c))).collect();
    DivisorClass::from_terms(b, &terms).expect("preset class")
}

pub fn threefold_basis() -> Arc<LatticeBasis> {
    basis(&["H", "EC", "EL"])
}

pub fn threefold_form() -> ThreefoldForm {
    let b = threefold_basis();
    ThreefoldForm::new(
        &b,
        &[
            ("H", "H", "H", int(1)),
            ("H", "EC", "EC", int(-3)),
            ("H", "EL", "EL", int(-1)),
            ("EC", "EC", "EC", int(-10)),
            ("EL", "EL", "EL", int(-2)),
        ],
    )
    .expect("preset tensor")
}

pub fn anticanonical() -> DivisorClass<Rational> {
    class(&threefold_basis(), &[("H", 4), ("EC", -1), ("EL", -1)])
}

/// The surface swept by the secant lines of `C` meeting `L`.
pub fn r_class() -> DivisorClass<Rational> {
    class(&threefold_basis(), &[("H", 4), ("EC", -2), ("EL", -1)])
}

/// Fibres of the two exceptional divisors and the curve `l_R` in `R`.
pub fn mori_curves() -> Vec<CurvePairing> {
    let b = threefold_basis();
    let c = |name, v: [i64; 3]| CurvePairing::from_values(name, &b, v.iter().map(|&x| int(x)).collect()).unwrap();
    vec![c("lL", [0, 0, -1]), c("lC", [0, -1, 0]), c("lR", [1, 2, 1])]
}

/// Generators of the effective cone over the integers.
pub fn effective_generators_integral() -> Vec<(String, DivisorClass<Rational>)> {
    let b = threefold_basis();
    vec![
        ("H-EL".into(), class(&b, &[("H", 1), ("EL", -1)])),
        ("2H-EC".into(), class(&b, &[("H", 2), ("EC", -1)])),
        ("R".into(), r_class()),
        ("EL".into(), class(&b, &[("EL", 1)])),
        ("EC".into(), class(&b, &[("EC", 1)])),
    ]
}

/// Generators of the effective cone over the rationals (`2H - EC` is redundant).
pub fn effective_generators_rational() -> Vec<(String, DivisorClass<Rational>)> {
    let b = threefold_basis();
    vec![
        ("H-EL".into(), class(&b, &[("H", 1), ("EL", -1)])),
        ("R".into(), r_class()),
        ("EL".into(), class(&b, &[("EL", 1)])),
        ("EC".into(), class(&b, &[("EC", 1)])),
    ]
}

pub fn threefold() -> ThreefoldModel {
    ThreefoldModel {
        form: threefold_form(),
        anticanonical: anticanonical(),
        mori: mori_curves(),
        effective: effective_generators_rational(),
    }
}

/// Proper transform of a general plane through an invariant line: a quintic del Pezzo.
pub fn plane_surface() -> SurfaceModel {
    let x = threefold_basis();
    let s = basis(&["l", "E1", "E2", "E3", "E4"]);
    let mut entries = vec![("l", "l", int(1))];
    for e in ["E1", "E2", "E3", "E4"] {
        entries.push((e, e, int(-1)));
    }
    let form = SurfaceForm::new(&s, &entries).unwrap();
    let restriction = RestrictionMap::new(
        &x,
        &s,
        &[
            ("H", class(&s, &[("l", 1)])),
            ("EC", class(&s, &[("E2", 1), ("E3", 1), ("E4", 1)])),
            ("EL", class(&s, &[("E1", 1)])),
        ],
    )
    .unwrap();
    let mut curves = vec![];
    for e in ["E1", "E2", "E3", "E4"] {
        curves.push((e.to_string(), class(&s, &[(e, 1)])));
    }
    for i in 1..=4 {
        for j in i + 1..=4 {
            let (ei, ej) = (format!("E{i}"), format!("E{j}"));
            curves.push((format!("L{i}{j}"), class(&s, &[("l", 1), (&ei, -1), (&ej, -1)])));
        }
    }
    SurfaceModel {
        name: "S".into(),
        class: class(&x, &[("H", 1)]),
        form,
        restriction,
        curves,
    }
}

/// The exceptional divisor over `L`, a quadric surface with rulings `s` (fibre) and `l`.
pub fn exceptional_line_surface() -> SurfaceModel {
    let x = threefold_basis();
    let q = basis(&["s", "l"]);
    let form = SurfaceForm::new(&q, &[("s", "l", int(1))]).unwrap();
    let restriction = RestrictionMap::new(
        &x,
        &q,
        &[
            ("H", class(&q, &[("l", 1)])),
            ("EC", class(&q, &[])),
            ("EL", class(&q, &[("s", -1), ("l", 1)])),
        ],
    )
    .unwrap();
    SurfaceModel {
        name: "EL".into(),
        class: class(&x, &[("EL", 1)]),
        form,
        restriction,
        curves: vec![("s".into(), class(&q, &[("s", 1)])), ("l".into(), class(&q, &[("l", 1)]))],
    }
}

/// Proper transform of a quadric containing `C`: a quadric blown up in the two points on `L`.
pub fn quadric_surface() -> SurfaceModel {
    let x = threefold_basis();
    let q = basis(&["l1", "l2", "e1", "e2"]);
    let form = SurfaceForm::new(&q, &[("l1", "l2", int(1)), ("e1", "e1", int(-1)), ("e2", "e2", int(-1))]).unwrap();
    let restriction = RestrictionMap::new(
        &x,
        &q,
        &[
            ("H", class(&q, &[("l1", 1), ("l2", 1)])),
            ("EC", class(&q, &[("l1", 1), ("l2", 2)])),
            ("EL", class(&q, &[("e1", 1), ("e2", 1)])),
        ],
    )
    .unwrap();
    let mut curves = vec![
        ("e1".to_string(), class(&q, &[("e1", 1)])),
        ("e2".to_string(), class(&q, &[("e2", 1)])),
    ];
    for (i, li) in ["l1", "l2"].iter().enumerate() {
        for (j, ej) in ["e1", "e2"].iter().enumerate() {
            curves.push((format!("F{}{}", i + 1, j + 1), class(&q, &[(li, 1), (ej, -1)])));
        }
    }
    SurfaceModel {
        name: "Q".into(),
        class: class(&x, &[("H", 2), ("EC", -1)]),
        form,
        restriction,
        curves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticanonical_degree() {
        assert_eq!(threefold().degree(), int(28));
    }

    #[test]
    fn curve_table() {
        let t = mori_curves();
        let ec = class(&threefold_basis(), &[("EC", 1)]);
        let h = class(&threefold_basis(), &[("H", 1)]);
        assert_eq!(t[2].pair(&ec).unwrap(), int(2));
        assert_eq!(t[1].pair(&h).unwrap(), int(0));
        assert_eq!(t[2].pair(&r_class()).unwrap(), int(-1));
    }

    #[test]
    fn restrictions() {
        let q = quadric_surface();
        let ec = class(&threefold_basis(), &[("EC", 1)]);
        assert_eq!(q.restriction.restrict(&ec).unwrap().to_string(), "l1 + 2*l2");
        let s = plane_surface();
        let el = class(&threefold_basis(), &[("EL", 1)]);
        assert_eq!(s.restriction.restrict(&el).unwrap().to_string(), "E1");
        let zero = DivisorClass::<Rational>::zero(&threefold_basis());
        assert!(s.restriction.restrict(&zero).unwrap().is_zero());
        let e = exceptional_line_surface();
        assert_eq!(e.restriction.restrict(&r_class()).unwrap().to_string(), "s + 3*l");
    }
}
