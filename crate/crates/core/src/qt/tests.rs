use super::*;
use crate::double::build_double;
use crate::exactnum::q;
use crate::groupoid::FiniteGroupoid;
use crate::linalg::Subspace;
use crate::report::Status;
use crate::wmha::{function_algebra, groupoid_algebra};

fn zoo() -> Vec<(&'static str, FiniteGroupoid)> {
    let z2 = FiniteGroupoid::cyclic(2).unwrap();
    vec![
        ("trivial", FiniteGroupoid::trivial()),
        ("z2", z2.clone()),
        ("z3", FiniteGroupoid::cyclic(3).unwrap()),
        ("pair2", FiniteGroupoid::pair(2).unwrap()),
        ("pair3", FiniteGroupoid::pair(3).unwrap()),
        ("z2+1", FiniteGroupoid::disjoint_union(&[z2, FiniteGroupoid::trivial()]).unwrap()),
    ]
}

fn canonical_of(g: &FiniteGroupoid) -> CanonicalElement {
    canonical_element(&build_double(&WmhaPairing::canonical(g)).unwrap()).unwrap()
}

fn idx(w: &WeakHopf, label: &str) -> usize {
    w.alg.labels().iter().position(|l| l == label).unwrap_or_else(|| panic!("no basis element {label}"))
}

fn assert_all_pass(name: &str, r: &Report) {
    let fails: Vec<_> = r.failures().map(|c| format!("{}: {:?}", c.id, c.witness)).collect();
    assert!(fails.is_empty(), "{name}: {fails:?}");
}

#[test]
fn zoo_is_quasitriangular() {
    for (name, g) in zoo() {
        let c = canonical_of(&g);
        assert_all_pass(name, &c.report);
        let v = verify_qt(&c.qt);
        assert_all_pass(name, &v);
        for id in ["qt.e_inverse.unique", "qt.ybe", "qt.slide.r6", "qt.rbar.inverse_right", "qt.legs.eps_t_right"] {
            assert_eq!(v.status_of(id), Some(Status::Pass), "{name} {id}");
        }
        assert_all_pass(name, &drinfeld_element(&c.qt).unwrap().report);
        assert_all_pass(name, &factorisable_check(&c.qt));
    }
}

#[test]
fn groupoid_r_is_sum_over_arrows() {
    for (name, g) in zoo() {
        let d = build_double(&WmhaPairing::canonical(&g)).unwrap();
        let n = g.num_arrows();
        let t = canonical_tensor(&d.pairing).unwrap();
        assert_eq!(t, SparseVec::from_terms((0..n).map(|p| (p * n + p, q(1)))), "{name}");
        let c = canonical_element(&d).unwrap();
        let h = &c.qt.host;
        let mut acc = crate::linalg::Accum::new();
        for p in 0..n {
            acc.add_scaled(&q(1), &h.t2(d.f1.column(p), d.f2.column(p)));
        }
        assert_eq!(c.qt.r, acc.finish(), "{name}");
    }
}

#[test]
fn trivial_r_is_one() {
    let c = canonical_of(&FiniteGroupoid::trivial());
    assert_eq!(c.qt.r, SparseVec::unit(0));
    assert_eq!(c.qt.rbar, SparseVec::unit(0));
    let d = drinfeld_element(&c.qt).unwrap();
    assert_eq!(d.u, c.qt.host.one());
}

/// `u = Σ_k δ_{g^k}⊗λ_{g^{-k}}` on the double of a cyclic group.
fn cyclic_u(h: &WeakHopf, n: usize) -> SparseVec {
    let label = |k: usize| match k % n {
        0 => "e".to_string(),
        1 => "g".to_string(),
        k => format!("g^{k}"),
    };
    SparseVec::from_terms((0..n).map(|k| (idx(h, &format!("δ_{}⊗λ_{}", label(k), label(n - k))), q(1))))
}

#[test]
fn drinfeld_element_on_cyclic_groups() {
    for n in [2, 3] {
        let c = canonical_of(&FiniteGroupoid::cyclic(n).unwrap());
        let h = &c.qt.host;
        let d = drinfeld_element(&c.qt).unwrap();
        assert_eq!(d.u, cyclic_u(h, n));
        let squared = h.mul(&d.u, &d.u);
        assert_eq!(squared == h.one(), n == 2);
        assert_eq!(d.report.info["u_squared_is_one"], serde_json::json!(n == 2));
        assert_eq!(d.report.info["h_grouplike_without_e"], serde_json::json!(true));
    }
}

#[test]
fn drinfeld_on_pair_groupoids() {
    for n in [2, 3] {
        let g = FiniteGroupoid::pair(n).unwrap();
        let c = canonical_of(&g);
        let h = &c.qt.host;
        let d = drinfeld_element(&c.qt).unwrap();
        let expect = SparseVec::from_terms((1..=n).map(|i| (idx(h, &format!("δ_({i},{i})⊗λ_({i},{i})")), q(1))));
        assert_eq!(d.u, expect);
        assert_eq!(h.mul(&d.u, &d.u), h.one());
        // Δ(h) = h⊗h would need Δ(1) = 1⊗1
        assert_eq!(d.report.info["h_grouplike_without_e"], serde_json::json!(false));
    }
}

#[test]
fn rbar_r_is_e_on_pair2() {
    let c = canonical_of(&FiniteGroupoid::pair(2).unwrap());
    let h = &c.qt.host;
    assert_eq!(h.mul2(&c.qt.rbar, &c.qt.r), h.e);
    assert_eq!(h.mul2(&c.qt.r, &c.qt.rbar), h.e_cop());
    assert_ne!(h.e, h.one2());
}

#[test]
fn s3_double() {
    let c = canonical_of(&FiniteGroupoid::symmetric(3).unwrap());
    let h = &c.qt.host;
    assert_eq!(h.dim(), 36);
    let v = verify_qt(&c.qt);
    assert_all_pass("s3", &v);
    assert_eq!(v.info["ybe_noncommuting_pairs"], serde_json::json!(["12,23", "13,23"]));
    let d = drinfeld_element(&c.qt).unwrap();
    assert_all_pass("s3", &d.report);
    for a in 0..h.dim() {
        let x = SparseVec::unit(a);
        assert_eq!(h.s(&h.s(&x)), h.mul(&h.mul(&d.u, &x), &d.u_inv));
    }
    assert_eq!(d.report.info["u_squared_is_one"], serde_json::json!(false));
}

#[test]
fn nilpotent_perturbation_breaks_e_inverse() {
    let c = canonical_of(&FiniteGroupoid::symmetric(3).unwrap());
    let h = c.qt.host.clone();
    let x = SparseVec::unit(idx(&h, "δ_(12)⊗λ_(13)"));
    assert!(h.mul(&x, &x).is_zero());
    let r = c.qt.r.add(&h.t2(&x, &x));
    let bad = QtStructure::new(h, r, c.qt.rbar.clone()).unwrap();
    let v = verify_qt(&bad);
    let first = v.failures().find(|c| c.id.starts_with("qt.e_inverse")).expect("an E-inverse failure");
    assert_eq!(first.status, Status::Fail);
    assert!(first.witness.as_ref().is_some_and(|w| !w.is_empty()));
}

#[test]
fn integrals_give_the_canonical_tensor() {
    for g in [
        FiniteGroupoid::cyclic(2).unwrap(),
        FiniteGroupoid::pair(2).unwrap(),
        FiniteGroupoid::pair(3).unwrap(),
    ] {
        for w in [groupoid_algebra(&g), function_algebra(&g)] {
            let ic = canonical_from_integrals(&w).unwrap();
            assert_all_pass("integrals", &ic.report);
            let p = WmhaPairing::dual_pairing(&w).unwrap().transposed();
            assert_eq!(ic.r, canonical_tensor(&p).unwrap());
        }
    }
    let w = groupoid_algebra(&FiniteGroupoid::pair(3).unwrap());
    assert_eq!(canonical_from_integrals(&w).unwrap().r.nnz(), 9);
}

#[test]
fn cointegrals_on_z2() {
    let g = FiniteGroupoid::cyclic(2).unwrap();
    let w = groupoid_algebra(&g);
    let ci = cointegrals(&w).unwrap();
    assert_all_pass("group", &ci.report);
    let sum = SparseVec::from_terms([(idx(&w, "λ_e"), q(1)), (idx(&w, "λ_g"), q(1))]);
    assert!(Subspace::span(w.dim(), ci.left.iter()).equals(&Subspace::span(w.dim(), [&sum])));
    assert_eq!(ci.t.as_ref().unwrap().dot(ci.phi.as_ref().unwrap()), q(1));

    let w = function_algebra(&g);
    let ci = cointegrals(&w).unwrap();
    assert_all_pass("function", &ci.report);
    let delta_e = SparseVec::unit(idx(&w, "δ_e"));
    assert!(Subspace::span(w.dim(), ci.left.iter()).equals(&Subspace::span(w.dim(), [&delta_e])));
}

#[test]
fn cointegral_normalisation_on_pair2() {
    let w = groupoid_algebra(&FiniteGroupoid::pair(2).unwrap());
    let ci = cointegrals(&w).unwrap();
    assert_eq!(ci.report.status_of("cointegral.equivalence"), Some(Status::Pass));
    assert_eq!(ci.report.status_of("cointegral.canonical"), Some(Status::Fail));
    assert_eq!(ci.report.info["canonical_phi_of_t"], serde_json::json!("2"));
}

#[test]
fn factorisable_info() {
    let expect = [("z2", true, 4), ("pair2", false, 2), ("pair3", false, 3), ("z2+1", true, 5)];
    for (name, g) in zoo() {
        let Some(&(_, surj, dim)) = expect.iter().find(|e| e.0 == name) else { continue };
        let r = factorisable_check(&canonical_of(&g).qt);
        assert_eq!(r.info["surjective_onto_algebra"], serde_json::json!(surj), "{name}");
        assert_eq!(r.info["dim_image"], serde_json::json!(dim), "{name}");
        assert_eq!(r.info["surjective_onto_centralizer"], serde_json::json!(true), "{name}");
    }
}

#[test]
fn json_round_trip() {
    let c = canonical_of(&FiniteGroupoid::pair(2).unwrap());
    let v = c.qt.to_json();
    assert_eq!(v["kind"], "quasitriangular");
    assert_eq!(QtStructure::from_json(&v).unwrap(), c.qt);
    let mut broken = v.clone();
    broken.as_object_mut().unwrap().remove("rbar");
    assert!(QtStructure::from_json(&broken).is_err());
}

#[test]
fn shape_is_checked() {
    let w = groupoid_algebra(&FiniteGroupoid::cyclic(2).unwrap());
    let r = SparseVec::unit(4);
    assert!(matches!(QtStructure::new(w, r.clone(), r), Err(QtError::Shape(_))));
}
