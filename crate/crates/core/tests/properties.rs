use std::f64::consts::PI;

use krein_core::factor::{divide_single, factorize, ExpRep, PickFunction, PsiPiece};
use krein_core::interp::{build_function, construct_o, satisfies_endpoint_condition, InterpProblem};
use krein_core::krein::{log_p, p_eval, KreinProduct};
use krein_core::moebius::HalfPlaneAuto;
use krein_core::nevanlinna::{boole_superlevel_measure, Measure, NevanlinnaRep};
use krein_core::{Arc, ArcSet, Complex64, ExtComplex, ExtPoint};
use proptest::prelude::*;

fn distinct(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-6.0..6.0f64, n).prop_filter_map("points too close", |mut v| {
        v.sort_by(f64::total_cmp);
        v.windows(2).all(|w| w[1] - w[0] > 0.05).then_some(v)
    })
}

fn point() -> impl Strategy<Value = Complex64> {
    (-6.0..6.0f64, 0.05..5.0f64).prop_map(|(x, y)| Complex64::new(x, y))
}

fn arc() -> impl Strategy<Value = Arc> {
    (distinct(2), 0..4u8).prop_map(|(p, kind)| match kind {
        0 => Arc::finite(p[0], p[1]).unwrap(),
        1 => Arc::finite(p[1], p[0]).unwrap(),
        2 => Arc::new(ExtPoint::Infinity, ExtPoint::Finite(p[0])).unwrap(),
        _ => Arc::new(ExtPoint::Finite(p[0]), ExtPoint::Infinity).unwrap(),
    })
}

/// Arbitrary arcs, possibly overlapping.
fn arcs() -> impl Strategy<Value = Vec<Arc>> {
    prop::collection::vec(arc(), 0..5)
}

/// Disjoint arcs between sorted points, optionally shifted to wrap.
fn disjoint_set() -> impl Strategy<Value = ArcSet> {
    (1..4usize).prop_flat_map(|k| (distinct(2 * k), any::<bool>())).prop_map(|(p, wrap)| {
        let n = p.len();
        let k = n / 2;
        ArcSet::normalize((0..k).map(|i| if wrap { Arc::finite(p[2 * i + 1], p[(2 * i + 2) % n]) } else { Arc::finite(p[2 * i], p[2 * i + 1]) }.unwrap()))
    })
}

fn atomic_rep() -> impl Strategy<Value = NevanlinnaRep> {
    (1..6usize)
        .prop_flat_map(|n| (distinct(n), prop::collection::vec(0.1..2.0f64, n), prop_oneof![Just(0.0), 0.1..2.0f64], -2.0..2.0f64))
        .prop_map(|(ts, ws, alpha, beta)| NevanlinnaRep::new(alpha, beta, Measure::atomic(ts.into_iter().zip(ws).collect()).unwrap()).unwrap())
}

fn value(k: &KreinProduct, z: Complex64) -> Complex64 {
    k.eval(z.into()).unwrap().value.finite().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(v in arcs()) {
        let once = ArcSet::normalize(v);
        if once.is_full() {
            prop_assert!(once.arcs().is_empty());
        } else {
            prop_assert_eq!(ArcSet::normalize(once.arcs().to_vec()), once.clone());
        }
        let reg = once.regularize();
        prop_assert!(reg.is_regular());
        prop_assert_eq!(reg.regularize(), reg);
    }

    #[test]
    fn union_contains_both(u in arcs(), v in arcs()) {
        let (u, v) = (ArcSet::normalize(u), ArcSet::normalize(v));
        let w = u.union(&v);
        prop_assert!(u.is_subset_of(&w) && v.is_subset_of(&w));
    }

    #[test]
    fn log_p_exponentiates_to_p(j in arc(), z in point()) {
        let p = p_eval(&j, z.into()).finite().unwrap();
        prop_assert!((log_p(&j, z).exp() - p).norm() <= 1e-12 * p.norm().max(1.0));
        prop_assert!((log_p(&j, z).im - j.angle_at(z)).abs() <= 1e-12);
    }

    #[test]
    fn angles_add_over_disjoint_arcs(o in disjoint_set(), z in point()) {
        let total: f64 = o.arcs().iter().map(|j| j.angle_at(z)).sum();
        prop_assert!((o.angle_subtended(z) - total).abs() <= 1e-12);
        prop_assert!(total > 0.0 && total < PI);
        let k = value(&KreinProduct::explicit(o), z);
        prop_assert!(k.im >= 0.0);
    }

    #[test]
    fn products_are_equivariant(o in disjoint_set(), z in point(), a in 0.3..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64) {
        let phi = HalfPlaneAuto::new(a, b, c, (1.0 + b * c) / a).unwrap();
        let pulled = phi.pullback_arcset(&o);
        let k = KreinProduct::explicit(o);
        let norm = match k.eval(phi.apply(Complex64::new(0.0, 1.0))).unwrap().value {
            ExtComplex::Finite(v) => v.norm(),
            ExtComplex::Infinity => return Ok(()),
        };
        let rhs = match k.eval(phi.apply(z)).unwrap().value {
            ExtComplex::Finite(v) => v / norm,
            ExtComplex::Infinity => return Ok(()),
        };
        let lhs = value(&KreinProduct::explicit(pulled), z);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
    }

    #[test]
    fn pick_functions_map_into_closed_upper_half_plane(rep in atomic_rep(), z in point()) {
        let v = rep.eval(z).unwrap().finite().unwrap();
        prop_assert!(v.im >= 0.0);
    }

    #[test]
    fn boole_identity(ts in distinct(4), ws in prop::collection::vec(0.05..3.0f64, 4), y in 0.1..5.0f64) {
        let mu = Measure::atomic(ts.into_iter().zip(ws).collect()).unwrap();
        let s = boole_superlevel_measure(&mu, y).unwrap();
        let want = mu.total_mass() / y;
        prop_assert!((s.plus - want).abs() <= 1e-8 * want.max(1.0));
        prop_assert!((s.minus - want).abs() <= 1e-8 * want.max(1.0));
    }

    #[test]
    fn dividing_by_a_component_is_undone_by_the_factor(rep in atomic_rep(), z in point()) {
        let f = PickFunction::Rep(rep.clone());
        let fac = factorize(&f).unwrap();
        for j in fac.gamma.arcs() {
            let g = divide_single(&f, j).unwrap();
            let back = g.eval(z).unwrap().finite().unwrap() * p_eval(j, z.into()).finite().unwrap();
            let fz = rep.eval(z).unwrap().finite().unwrap();
            prop_assert!((back - fz).norm() <= 1e-10 * fz.norm().max(1.0));
        }
    }

    #[test]
    fn factorization_does_not_depend_on_division_order(rep in atomic_rep(), z in point()) {
        let f = PickFunction::Rep(rep);
        let fac = factorize(&f).unwrap();
        prop_assert!(fac.posts.iter().all(|c| c.passed));
        let mut reversed = f.clone();
        for j in fac.gamma.arcs().iter().rev() {
            reversed = divide_single(&reversed, j).unwrap();
        }
        let (u, v) = (fac.g.eval(z).unwrap().finite().unwrap(), reversed.eval(z).unwrap().finite().unwrap());
        prop_assert!((u - v).norm() <= 1e-9 * u.norm().max(1.0));
    }

    #[test]
    fn exponential_argument_stays_inside(p in distinct(4), psi in prop::collection::vec(0.01..0.99f64, 2), z in point()) {
        let pieces = vec![PsiPiece { l: p[0], r: p[1], value: psi[0] }, PsiPiece { l: p[2], r: p[3], value: psi[1] }];
        let h = ExpRep::new(0.0, pieces).unwrap().h(z).unwrap();
        prop_assert!(h.im > 0.0 && h.im < PI);
    }

    #[test]
    fn interpolant_inclusions(pts in distinct(6), kinds in prop::collection::vec(0..3u8, 6)) {
        let pick = |k: u8| pts.iter().zip(&kinds).filter(|(_, &c)| c == k).map(|(x, _)| *x).collect::<Vec<_>>();
        let p = InterpProblem::from_reals(&pick(0), &pick(1), &pick(2)).unwrap();
        if let Ok(o) = construct_o(&p) {
            prop_assert!(satisfies_endpoint_condition(&p, &o));
            let f = build_function(&p).unwrap();
            prop_assert!(f.passed(), "{:?}", f.checks);
            for q in f.extra_poles.iter().chain(&f.extra_zeros) {
                prop_assert!(p.singular().iter().any(|y| y.same(*q)));
            }
        }
    }
}

/// Adding an arc on an empty component keeps the endpoint condition, so
/// solutions are not unique.
#[test]
fn empty_component_gives_a_second_solution() {
    let p = InterpProblem::from_reals(&[1.0], &[0.0], &[2.0, 3.0]).unwrap();
    let o = construct_o(&p).unwrap();
    assert!(satisfies_endpoint_condition(&p, &o));
    let extra = o.union(&ArcSet::single(Arc::finite(2.0, 3.0).unwrap()));
    assert_ne!(extra, o);
    assert!(satisfies_endpoint_condition(&p, &extra));
}
