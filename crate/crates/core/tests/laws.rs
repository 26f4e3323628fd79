use proptest::prelude::*;
use serde_json::Value;

use wmha_core::double::build_double;
use wmha_core::exactnum::q;
use wmha_core::groupoid::FiniteGroupoid;
use wmha_core::linalg::{Accum, LinearMap, SparseVec};
use wmha_core::pairing::WmhaPairing;
use wmha_core::qt::{canonical_element, canonical_tensor, drinfeld_element, verify_qt};
use wmha_core::report::{Report, Status};
use wmha_core::wmha::{function_algebra, groupoid_algebra, verify_wmha, WeakHopf};

#[derive(Clone, Debug)]
enum Piece {
    Cyclic(usize),
    Pair(usize),
}

impl Piece {
    fn build(&self) -> FiniteGroupoid {
        match *self {
            Piece::Cyclic(n) => FiniteGroupoid::cyclic(n).unwrap(),
            Piece::Pair(n) => FiniteGroupoid::pair(n).unwrap(),
        }
    }

    fn arrows(&self) -> usize {
        match *self {
            Piece::Cyclic(n) => n,
            Piece::Pair(n) => n * n,
        }
    }
}

/// Disjoint unions of small cyclic groups and pair groupoids.
fn groupoid(max_arrows: usize) -> impl Strategy<Value = FiniteGroupoid> {
    let piece = prop_oneof![(1usize..4).prop_map(Piece::Cyclic), (1usize..3).prop_map(Piece::Pair)];
    proptest::collection::vec(piece, 1..3)
        .prop_filter("too many arrows", move |ps| ps.iter().map(Piece::arrows).sum::<usize>() <= max_arrows)
        .prop_map(|ps| match ps.as_slice() {
            [p] => p.build(),
            _ => FiniteGroupoid::disjoint_union(&ps.iter().map(Piece::build).collect::<Vec<_>>()).unwrap(),
        })
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-2i64..3, dim).prop_map(|xs| SparseVec::from_dense(&xs.into_iter().map(q).collect::<Vec<_>>()))
}

fn assert_report_shape(r: &Report) {
    for c in &r.checks {
        assert_eq!(c.witness.is_some(), c.status == Status::Fail, "{}", c.id);
    }
    let s = &r.summary;
    assert_eq!(s.total, s.passed + s.failed + s.skipped);
    assert_eq!(s.total, r.checks.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn groupoid_algebras_are_wmhas(g in groupoid(6)) {
        prop_assert!(g.validate().all_pass());
        for w in [function_algebra(&g), groupoid_algebra(&g)] {
            let r = verify_wmha(&w);
            assert_report_shape(&r);
            let fails: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
            prop_assert!(fails.is_empty(), "{}: {:?}", w.name, fails);
            prop_assert_eq!(WeakHopf::from_json(&w.to_json()).unwrap(), w);
        }
        let back = FiniteGroupoid::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.num_arrows(), g.num_arrows());
        prop_assert_eq!(back.composable_pairs(), g.composable_pairs());
    }

    #[test]
    fn canonical_tensor_inverts_the_form(
        diag in proptest::collection::vec(prop_oneof![-3i64..0, 1i64..4], 4),
        upper in proptest::collection::vec(-2i64..3, 6),
    ) {
        let g = FiniteGroupoid::pair(2).unwrap();
        let form = LinearMap::from_fn(4, 4, |j| {
            let mut col: Vec<_> = (0..4).map(|_| q(0)).collect();
            for (i, c) in col.iter_mut().enumerate().take(j) {
                *c = q(upper[j * (j - 1) / 2 + i]);
            }
            col[j] = q(diag[j]);
            SparseVec::from_dense(&col)
        });
        let p = WmhaPairing::new(function_algebra(&g), groupoid_algebra(&g), form.clone()).unwrap();
        let t = canonical_tensor(&p).unwrap();
        // Σ_k X_kl ⟨a_k, b_m⟩ = [l = m]
        for l in 0..4 {
            for m in 0..4 {
                let mut acc = Accum::new();
                for (ix, c) in t.iter() {
                    if ix % 4 == l {
                        acc.add(0, c * &form.entry(ix / 4, m));
                    }
                }
                let expect = if l == m { SparseVec::unit(0) } else { SparseVec::zero() };
                prop_assert_eq!(acc.finish(), expect);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn doubles_are_quasitriangular(g in groupoid(5)) {
        let d = build_double(&WmhaPairing::canonical(&g)).unwrap();
        let c = canonical_element(&d).unwrap();
        let r = verify_qt(&c.qt);
        assert_report_shape(&r);
        prop_assert!(r.all_pass(), "{:?}", r.failures().map(|c| &c.id).collect::<Vec<_>>());
        let de = drinfeld_element(&c.qt).unwrap();
        prop_assert!(de.report.all_pass());
    }
}

fn host(g: &FiniteGroupoid) -> (WeakHopf, SparseVec, SparseVec, SparseVec) {
    let c = canonical_element(&build_double(&WmhaPairing::canonical(g)).unwrap()).unwrap();
    let de = drinfeld_element(&c.qt).unwrap();
    (c.qt.host, c.qt.r, de.u, de.u_inv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn double_laws_on_random_elements(which in 0usize..3, xs in element(36), ys in element(36)) {
        let g = match which {
            0 => FiniteGroupoid::cyclic(3).unwrap(),
            1 => FiniteGroupoid::pair(2).unwrap(),
            _ => FiniteGroupoid::symmetric(3).unwrap(),
        };
        let (h, r, u, w) = host(&g);
        let n = h.dim();
        let x = SparseVec::from_terms(xs.iter().filter(|(i, _)| *i < n).map(|(i, c)| (i, c.clone())));
        let y = SparseVec::from_terms(ys.iter().filter(|(i, _)| *i < n).map(|(i, c)| (i, c.clone())));
        let xy = h.mul(&x, &y);
        prop_assert_eq!(h.delta_of(&xy), h.mul2(&h.delta_of(&x), &h.delta_of(&y)));
        prop_assert_eq!(h.mul2(&h.flip2(&h.delta_of(&x)), &r), h.mul2(&r, &h.delta_of(&x)));
        prop_assert_eq!(h.s(&h.s(&x)), h.mul(&h.mul(&u, &x), &w));
        prop_assert_eq!(h.s(&xy), h.mul(&h.s(&y), &h.s(&x)));
        prop_assert_eq!(h.eps(&xy), {
            // ε(xy) = ε(x1_(1))ε(1_(2)y)
            let mut acc = q(0);
            for (i, j, c) in h.terms2(&h.e) {
                acc = &acc + &(c * &(h.eps(&h.mul(&x, &SparseVec::unit(i))) * h.eps(&h.mul(&SparseVec::unit(j), &y))));
            }
            acc
        });
    }

    #[test]
    fn corrupted_dumps_fail_with_witnesses(field in 0usize..3, col in 0usize..3, entry in 0usize..3, val in 2i64..4) {
        let w = groupoid_algebra(&FiniteGroupoid::cyclic(3).unwrap());
        let mut v = w.to_json();
        let key = entry.to_string();
        match field {
            0 => v["antipode"]["columns"][col][&key] = Value::from(val.to_string()),
            1 => v["delta"]["columns"][col][(entry * 3 + col).to_string()] = Value::from(val.to_string()),
            _ => v["e"][(entry * 4).to_string()] = Value::from(val.to_string()),
        }
        let bad = WeakHopf::from_json(&v).unwrap();
        prop_assume!(bad != w);
        let r = verify_wmha(&bad);
        assert_report_shape(&r);
        prop_assert!(!r.all_pass());
        prop_assert!(r.failures().all(|c| c.witness.as_ref().is_some_and(|s| !s.is_empty())));
    }
}
