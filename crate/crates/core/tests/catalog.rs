use dcech::charts::ExtensionKind;
use dcech::scalar::{frac, q};
use dcech::sl2cat::{
    casimir_scalar, composition_factors, identify, is_isomorphic_in_window, is_simple_in_window,
    make_catalog, minus_twist, relaxed, vee_dual, CatalogName, RClassKind,
};
use dcech::verify::compute;
use dcech::{build_complex, verify_chain_map, WeightModule, WeightWindow, Q};

const HALF: i64 = 16;

fn window(rep: Q) -> WeightWindow {
    WeightWindow::centered(&rep, HALF)
}

fn catalog(name: &str, rep: Q) -> WeightModule {
    make_catalog(&name.parse().unwrap(), &window(rep)).unwrap()
}

fn weights_with_dims(m: &WeightModule) -> Vec<(Q, usize)> {
    m.interior_dims()
        .into_iter()
        .map(|(n, d)| (m.weight(n), d))
        .collect()
}

fn factors(m: &WeightModule, lambda: i64) -> Vec<(String, usize)> {
    let mut v: Vec<_> = composition_factors(m, lambda)
        .unwrap_or_else(|e| panic!("λ={lambda}: {e}"))
        .into_iter()
        .map(|(n, k)| (n.to_string(), k))
        .collect();
    v.sort();
    v
}

fn sorted(v: &[(&str, usize)]) -> Vec<(String, usize)> {
    let mut v: Vec<_> = v.iter().map(|(n, k)| (n.to_string(), *k)).collect();
    v.sort();
    v
}

#[test]
fn lfd_one() {
    let m = catalog("L(1)", q(1));
    assert_eq!(weights_with_dims(&m), vec![(q(-1), 1), (q(1), 1)]);
    let lo = m.window().index_of(&q(-1)).unwrap();
    assert_eq!(m.f_map(lo).rank(), 1);
    assert_eq!(m.e_map(lo + 1).rank(), 1);
}

#[test]
fn lfd_dimension_by_ladder_termination() {
    // Walk f from the lowest weight until it vanishes.
    for n in 0..7 {
        let m = catalog(&format!("L({n})"), q(n));
        let mut k = m.window().index_of(&q(-n)).unwrap();
        let mut len = 1;
        while m.f_map(k).rank() > 0 {
            k += 1;
            len += 1;
        }
        assert_eq!(len as i64, n + 1);
        assert_eq!(m.total_interior_dim() as i64, n + 1);
    }
}

#[test]
fn verma_is_bounded_below() {
    let m = catalog("M(-2)", q(0));
    let ws = weights_with_dims(&m);
    assert_eq!(ws[0], (q(2), 1));
    assert!(ws.iter().all(|(w, d)| *d == 1 && *w >= q(2)));
    assert_eq!(ws[1].0, q(4));
}

#[test]
fn nonintegral_relaxed_is_dense() {
    let m = relaxed(0, &frac(1, 2), &window(q(-1))).unwrap();
    let (lo, hi) = m.interior_support().unwrap();
    for n in lo..=hi {
        assert_eq!(m.dim(n), 1);
    }
    for n in lo..hi {
        assert_eq!(m.f_map(n).rank(), 1);
        assert_eq!(m.e_map(n + 1).rank(), 1);
    }
    assert!(is_simple_in_window(&m));
}

#[test]
fn casimir_values() {
    // Closed form ½λ(λ−2).
    let chi = |l: i64| frac(l * (l - 2), 2);
    assert_eq!(
        casimir_scalar(&catalog("M(1)", q(-1))).unwrap(),
        Some(chi(3))
    );
    assert_eq!(chi(3), frac(3, 2));
    assert_eq!(casimir_scalar(&catalog("L(0)", q(0))).unwrap(), Some(q(0)));
    let r = relaxed(4, &frac(1, 3), &window(frac(-14, 3))).unwrap();
    assert_eq!(casimir_scalar(&r).unwrap(), Some(q(4)));
    for l in -4..=4 {
        let m = relaxed(l, &frac(2, 5), &window(frac(-4, 5) - q(l))).unwrap();
        assert_eq!(casimir_scalar(&m).unwrap(), Some(chi(l)));
    }
}

#[test]
fn simplicity() {
    for l in -3..=3 {
        let m = relaxed(l, &frac(1, 2), &window(q(-1 - l))).unwrap();
        assert!(is_simple_in_window(&m), "R({l},1/2)");
    }
    assert!(!is_simple_in_window(&catalog("R(3,=)", q(-3))));
    assert!(is_simple_in_window(&catalog("L(5)", q(1))));
}

#[test]
fn identification() {
    assert_eq!(
        identify(&WeightModule::zero(window(q(0))), 0).unwrap(),
        CatalogName::Zero
    );
    let (h0, _) = compute(&ExtensionKind::JDot(q(0)), 1, HALF).unwrap();
    assert_eq!(
        identify(&h0, 1).unwrap(),
        CatalogName::sum(CatalogName::Verma(-1), CatalogName::VermaMinus(-1))
    );
    for alpha in [-2, -1, 0, 2] {
        let (h0, h1) = compute(&ExtensionKind::JShriekXDotZ(q(alpha)), 3, HALF).unwrap();
        assert_eq!(
            identify(&h0, 3).unwrap(),
            CatalogName::RClass(3, RClassKind::Less)
        );
        assert!(h1.is_zero());
    }
}

#[test]
fn composition_factor_examples() {
    assert_eq!(
        factors(&catalog("R(3,=)", q(-3)), 3),
        sorted(&[("M(-3)", 1), ("M(-3)⁻", 1), ("L(1)", 1)])
    );
    assert_eq!(
        factors(&catalog("R(1,<)", q(-1)), 1),
        sorted(&[("M(-1)", 1), ("M(-1)⁻", 1)])
    );
    assert_eq!(factors(&catalog("L(4)", q(0)), 6), sorted(&[("L(4)", 1)]));
}

#[test]
fn isomorphism_examples() {
    let w = window(q(-1));
    let a = relaxed(3, &q(-1), &w).unwrap();
    let b = make_catalog(&CatalogName::RClass(3, RClassKind::Equal), &w).unwrap();
    assert!(is_isomorphic_in_window(&a, &b));

    let w = window(q(0));
    let a = relaxed(0, &q(5), &w).unwrap();
    let b = make_catalog(&CatalogName::RClass(0, RClassKind::Greater), &w).unwrap();
    assert!(is_isomorphic_in_window(&a, &b));

    let v = catalog("M(0)", q(0));
    assert!(!is_isomorphic_in_window(&v, &vee_dual(&v)));
    // Duality is harmless off the dominant integral weights.
    let v = catalog("M(-1)", q(1));
    assert!(is_isomorphic_in_window(&v, &vee_dual(&v)));

    let r = catalog("R(2,=)", q(-2));
    assert!(!is_isomorphic_in_window(&r, &vee_dual(&r)));
    assert_eq!(
        identify(&vee_dual(&r), 2).unwrap(),
        CatalogName::RClassDual(2)
    );
}

#[test]
fn minus_twist_swaps_verma_sides() {
    let v = catalog("M(-2)", q(0));
    let t = minus_twist(&v);
    let ws = weights_with_dims(&t);
    assert_eq!(ws.last().unwrap().0, q(-2));
    assert_eq!(identify(&t, 0).unwrap(), CatalogName::VermaMinus(-2));
}

#[test]
fn character_additivity_for_jdot() {
    // 0 → j_x·Ω → j·Ω → ι_z → 0 with H¹ of the left term zero.
    for l in -3..=3 {
        let (a, a1) = compute(&ExtensionKind::JxDot, l, HALF).unwrap();
        let (b, _) = compute(&ExtensionKind::JDot(q(0)), l, HALF).unwrap();
        let (c, _) = compute(&ExtensionKind::IotaZ, l, HALF).unwrap();
        assert!(a1.is_zero());
        for n in b.window().interior() {
            assert_eq!(b.dim(n), a.dim(n) + c.dim(n), "λ={l} n={n}");
        }
    }
}

#[test]
fn chain_maps_on_catalog_complexes() {
    let kind = ExtensionKind::JShriekXDotZ(q(-2));
    let w = WeightWindow::for_parameters(3, &q(-2), 20);
    assert!(verify_chain_map(&build_complex(&kind, 3, &w).unwrap()));
}
