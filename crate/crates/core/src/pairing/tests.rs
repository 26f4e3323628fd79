use super::*;
use crate::algebra::embed_as_multiplier;
use crate::exactnum::q;
use crate::report::{Report, Status};

fn z2() -> FiniteGroupoid {
    FiniteGroupoid::cyclic(2).unwrap()
}

fn pair(n: usize) -> FiniteGroupoid {
    FiniteGroupoid::pair(n).unwrap()
}

fn idx(w: &WeakHopf, label: &str) -> usize {
    w.alg.labels().iter().position(|l| l == label).unwrap()
}

fn assert_all_pass(r: &Report) {
    let fails: Vec<_> = r.failures().map(|c| format!("{}: {:?}", c.id, c.witness)).collect();
    assert!(fails.is_empty(), "failures: {fails:?}");
}

#[test]
fn canonical_form_is_identity() {
    let p = WmhaPairing::canonical(&pair(2));
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(p.pair(i, j), if i == j { q(1) } else { q(0) });
        }
    }
    let t = WmhaPairing::canonical(&FiniteGroupoid::trivial());
    assert_eq!(t.form, LinearMap::identity(1));
}

#[test]
fn product_pattern_on_z2() {
    let p = WmhaPairing::canonical(&z2());
    let e = idx(&p.a, "δ_e");
    let le = idx(&p.b, "λ_e");
    let ee = p.a.alg.mul_basis(e, e).clone();
    assert_eq!(p.pair_vec(&ee, &SparseVec::unit(le)), p.pair(e, le) * p.pair(e, le));
}

#[test]
fn verify_canonical_s3_and_pair3() {
    for g in [FiniteGroupoid::symmetric(3).unwrap(), pair(3)] {
        let r = verify_pairing(&WmhaPairing::canonical(&g));
        assert_all_pass(&r);
    }
}

#[test]
fn verify_mixed_and_trivial() {
    let g = FiniteGroupoid::disjoint_union(&[z2(), FiniteGroupoid::trivial()]).unwrap();
    for g in [g, FiniteGroupoid::trivial(), pair(2)] {
        let r = verify_pairing(&WmhaPairing::canonical(&g));
        assert_all_pass(&r);
        assert_eq!(r.summary.skipped, 0);
    }
}

#[test]
fn g2_adjunction_needs_p2t2() {
    let r = verify_pairing(&WmhaPairing::canonical(&pair(2)));
    assert_eq!(r.status_of("pairing.e_g2_adjoint"), Some(Status::Pass));
    assert_eq!(r.info["g2_as_t2p2_holds"], false);
}

#[test]
fn perturbed_form_fails_with_witness() {
    let p = WmhaPairing::canonical(&z2());
    let mut cols = p.form.columns().to_vec();
    cols[0] = cols[0].add(&SparseVec::single(1, q(1)));
    let bad = WmhaPairing::new(p.a.clone(), p.b.clone(), LinearMap::from_columns(2, cols)).unwrap();
    let r = verify_pairing(&bad);
    assert_eq!(r.status_of("pairing.nondegenerate"), Some(Status::Pass));
    let c = r.get("pairing.product_b").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.witness.as_deref().unwrap().starts_with("b⊗b' = "));
}

#[test]
fn canonical_actions() {
    let g = pair(2);
    let p = WmhaPairing::canonical(&g);
    let acts = p.actions();
    let nb = p.nb();
    for qa in 0..4 {
        for pb in 0..4 {
            let expect = if qa == pb { SparseVec::unit(pb) } else { SparseVec::zero() };
            assert_eq!(acts.rhd_ab.column(qa * nb + pb), &expect);
        }
    }
    let t = WmhaPairing::canonical(&FiniteGroupoid::trivial());
    let a = t.actions();
    for m in [&a.rhd_ab, &a.lhd_ba, &a.rhd_ba, &a.lhd_ab] {
        assert_eq!(m, &LinearMap::identity(1));
    }
}

#[test]
fn lambda_acts_on_delta_by_translation() {
    // λ_p▷δ_q = δ_{q p^{-1}} when composable
    let g = pair(2);
    let p = WmhaPairing::canonical(&g);
    let acts = p.actions();
    let na = p.na();
    for lp in 0..na {
        for dq in 0..na {
            let got = acts.rhd_ba.column(lp * na + dq);
            let expect = match g.compose(dq, g.inverse(lp)) {
                Some(r) => SparseVec::unit(r),
                None => SparseVec::zero(),
            };
            assert_eq!(got, &expect, "λ_{} ▷ δ_{}", g.arrow_id(lp), g.arrow_id(dq));
        }
    }
}

#[test]
fn r_on_z2() {
    let p = WmhaPairing::canonical(&z2());
    let nb = p.nb();
    let (de, ds) = (idx(&p.a, "δ_e"), idx(&p.a, "δ_g"));
    let ls = idx(&p.b, "λ_g");
    let r = p.map_r();
    assert_eq!(r.column(de * nb + ls), &SparseVec::unit(ds * nb + ls));
    let rp = p.map_r_prime();
    assert_eq!(r.compose(&rp), LinearMap::identity(4));
    assert_eq!(rp.compose(&r), LinearMap::identity(4));
    let ro = p.map_r_opcop();
    assert_eq!(ro.compose(&r), r.compose(&ro));
}

#[test]
fn r_on_trivial_is_identity() {
    let p = WmhaPairing::canonical(&FiniteGroupoid::trivial());
    assert_eq!(p.map_r(), LinearMap::identity(1));
    assert_eq!(p.map_r_prime(), LinearMap::identity(1));
    for m in p.map_r_variants() {
        assert_eq!(m, LinearMap::identity(1));
    }
}

#[test]
fn canonical_r_acts_by_lambda() {
    // R(f⊗λ_p) = λ_p▷f ⊗ λ_p; the range is spanned by δ_r⊗λ_q with src r = tgt q
    let g = pair(2);
    let p = WmhaPairing::canonical(&g);
    let (na, nb) = (p.na(), p.nb());
    let r = p.map_r();
    let expect = crate::linalg::Subspace::span_owned(
        na * nb,
        (0..na * nb).filter(|k| g.src(k / nb) == g.tgt(k % nb)).map(SparseVec::unit),
    );
    assert!(r.range().equals(&expect));
    assert_eq!(expect.dim(), 8);
    let acts = p.actions();
    for f in 0..na {
        for lp in 0..nb {
            let expect = crate::linalg::tensor(acts.rhd_ba.column(lp * na + f), &SparseVec::unit(lp), nb);
            assert_eq!(r.column(f * nb + lp), &expect);
        }
    }
}

#[test]
fn n_range_on_pair2() {
    let p = WmhaPairing::canonical(&pair(2));
    let n = p.map_r().compose(&p.map_r_prime());
    assert_eq!(n.compose(&n), n);
    assert!(n.range().equals(&p.map_r().range()));
    let span = crate::linalg::Subspace::span_owned(16, p.e_b_action_span());
    assert!(n.range().equals(&span));
}

#[test]
fn unit_extensions() {
    let p = WmhaPairing::dual_pairing(&function_algebra(&z2())).unwrap();
    let ds = idx(&p.a, "δ_g");
    assert_eq!(p.pair_vec(&SparseVec::unit(ds), &p.b.one()), q(0));

    let p = WmhaPairing::canonical(&pair(2));
    let l12 = idx(&p.b, "λ_(1,2)");
    assert_eq!(p.pair_vec(&p.a.one(), &SparseVec::unit(l12)), q(1));
}

#[test]
fn multiplier_extension() {
    let p = WmhaPairing::canonical(&pair(2));
    let one = embed_as_multiplier(&p.b.alg, &p.b.one());
    for i in 0..p.na() {
        let a = SparseVec::unit(i);
        assert_eq!(p.extend_to_multiplier(&one, &a).unwrap(), p.a.counit[i]);
        for j in 0..p.nb() {
            let m = embed_as_multiplier(&p.b.alg, &SparseVec::unit(j));
            assert_eq!(p.extend_to_multiplier(&m, &a).unwrap(), p.pair(i, j));
        }
    }
}

#[test]
fn functionals_to_multipliers() {
    let p = WmhaPairing::canonical(&z2());
    let m = p.functional_to_multiplier(&SparseVec::from_dense(&p.a.counit)).unwrap();
    assert_eq!(m, embed_as_multiplier(&p.b.alg, &p.b.one()));

    let b = SparseVec::single(1, q(3));
    let omega = p.form.apply(&b);
    assert_eq!(p.functional_to_multiplier(&omega).unwrap(), embed_as_multiplier(&p.b.alg, &b));

    let ds = idx(&p.a, "δ_g");
    let m = p.functional_to_multiplier(&SparseVec::unit(ds)).unwrap();
    for i in 0..2 {
        let expect = if i == ds { q(1) } else { q(0) };
        assert_eq!(p.extend_to_multiplier(&m, &SparseVec::unit(i)).unwrap(), expect);
    }
}

#[test]
fn dual_pairing_matches_canonical() {
    for g in [z2(), pair(2), FiniteGroupoid::symmetric(3).unwrap()] {
        let d = WmhaPairing::dual_pairing(&function_algebra(&g)).unwrap();
        let c = WmhaPairing::canonical(&g);
        assert_eq!(d.form, c.form);
        assert_eq!(d.b.delta, c.b.delta);
        assert_eq!(d.b.antipode, c.b.antipode);
        assert_all_pass(&verify_pairing(&d));
    }
}

#[test]
fn transposed_pairing_verifies() {
    let p = WmhaPairing::canonical(&pair(2)).transposed();
    assert_all_pass(&verify_pairing(&p));
}

#[test]
fn right_module_check_detects_identity_action() {
    let p = WmhaPairing::canonical(&pair(2));
    let (na, nb) = (p.na(), p.nb());
    // r◁a = ε(a)/2 r is unital on pair(2) but not associative
    let fake = LinearMap::from_fn(nb, nb * na, |k| SparseVec::single(k / na, &p.a.counit[k % na] * &crate::exactnum::qr(1, 2)));
    let r = right_module_algebra_check(&p.a, &p.b.alg, &fake);
    assert_eq!(r.status_of("module.unital"), Some(Status::Pass));
    assert_eq!(r.status_of("module.associative"), Some(Status::Fail));
}

#[test]
fn shape_mismatch_is_rejected() {
    let g = z2();
    let err = WmhaPairing::new(function_algebra(&g), groupoid_algebra(&g), LinearMap::identity(1)).unwrap_err();
    assert!(matches!(err, PairingError::Shape(_)));
}

#[test]
fn json_form_round_trip() {
    let p = WmhaPairing::canonical(&pair(2));
    let v = p.to_json_with(serde_json::json!("a.json"), serde_json::json!("b.json"));
    assert_eq!(v["kind"], "pairing");
    assert_eq!(WmhaPairing::form_from_json(&v).unwrap(), p.form);
}
