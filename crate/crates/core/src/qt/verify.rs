use crate::linalg::{LinearMap, SparseVec};
use crate::report::{ensure, first_failure, Outcome, Report};
use crate::wmha::WeakHopf;

use super::QtStructure;

fn equal(h: &WeakHopf, lhs: &SparseVec, rhs: &SparseVec, legs: usize) -> Outcome {
    ensure(lhs == rhs, || {
        format!("difference {}", h.show_tensor(&lhs.sub(rhs), legs))
    })
}

/// Three-leg placements `X¹², X¹³, X²³` and `X²¹` of an element of `A⊗A`.
pub(crate) struct Legs<'a> {
    h: &'a WeakHopf,
}

impl<'a> Legs<'a> {
    pub(crate) fn new(h: &'a WeakHopf) -> Self {
        Legs { h }
    }

    pub(crate) fn at(&self, x: &SparseVec, i: usize, j: usize) -> SparseVec {
        self.h.place(x, 2, &[i, j], 3)
    }

    pub(crate) fn m3(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.h.mul3(x, y)
    }
}

/// The axioms of a quasitriangular structure and the identities derived
/// from them, checked exactly on basis elements.
pub fn verify_qt(q: &QtStructure) -> Report {
    let mut rep = Report::new();
    let h = &q.host;
    let n = h.dim();
    let (r, rb) = (&q.r, &q.rbar);
    let e = &h.e;
    let ecop = h.e_cop();
    let m2 = |x: &SparseVec, y: &SparseVec| h.mul2(x, y);

    e_inverse_checks(q, &ecop, &mut rep);

    let legs = Legs::new(h);
    let (r12, r13, r23) = (legs.at(r, 0, 1), legs.at(r, 0, 2), legs.at(r, 1, 2));
    let m = legs.m3(&r13, &r23);
    rep.record("qt.axiom.delta_left", "(Δ⊗id)(R) = R¹³R²³", equal(h, &h.delta_leg(r, 0), &m, 3));
    let m_right = legs.m3(&r13, &r12);
    rep.record("qt.axiom.delta_right", "(id⊗Δ)(R) = R¹³R¹²", equal(h, &h.delta_leg(r, 1), &m_right, 3));
    rep.record(
        "qt.axiom.intertwine",
        "Δ^cop(a)R = RΔ(a)",
        first_failure(n, |a| {
            let da = h.delta_of(&SparseVec::unit(a));
            ensure(m2(&h.flip2(&da), r) == m2(r, &da), || format!("a = {}", h.label(a)))
        }),
    );

    let lhs = legs.m3(&legs.m3(&r12, &r13), &r23);
    let rhs = legs.m3(&legs.m3(&r23, &r13), &r12);
    rep.record("qt.ybe", "R¹²R¹³R²³ = R²³R¹³R¹²", equal(h, &lhs, &rhs, 3));
    let pairs = [("12,13", &r12, &r13), ("12,23", &r12, &r23), ("13,23", &r13, &r23)];
    let noncommuting: Vec<&str> = pairs
        .iter()
        .filter(|(_, x, y)| legs.m3(x, y) != legs.m3(y, x))
        .map(|(name, _, _)| *name)
        .collect();
    rep.note("ybe_noncommuting_pairs", noncommuting);

    rep.record(
        "qt.counit",
        "(ε⊗id)(R) = (id⊗ε)(R) = 1",
        ensure(h.eps_leg(r, 0) == h.one() && h.eps_leg(r, 1) == h.one(), || {
            format!("(ε⊗id)R = {}, (id⊗ε)R = {}", h.show(&h.eps_leg(r, 0)), h.show(&h.eps_leg(r, 1)))
        }),
    );

    let st = h.source_target();
    slide_checks(q, &st.a_t.basis(), &st.a_s.basis(), &mut rep);

    let id = LinearMap::identity(n);
    let leg_maps: [(&str, &str, Option<LinearMap>, bool, SparseVec); 6] = [
        ("qt.legs.eps_s_left", "(ε_s⊗id)(R) = E", Some(st.eps_s.clone()), true, e.clone()),
        ("qt.legs.eps_s_prime_right", "(id⊗ε'_s)(R) = E^cop", st.eps_s_prime.clone(), false, ecop.clone()),
        ("qt.legs.eps_t_left", "(ε_t⊗id)(R) = E^cop", Some(st.eps_t.clone()), true, ecop.clone()),
        ("qt.legs.eps_t_prime_right", "(id⊗ε'_t)(R) = E", st.eps_t_prime.clone(), false, e.clone()),
        (
            "qt.legs.eps_s_right",
            "(id⊗ε_s)(R) = (S⊗id)(E^cop)",
            Some(st.eps_s.clone()),
            false,
            h.apply2(&ecop, &h.antipode, &id),
        ),
        (
            "qt.legs.eps_t_right",
            "(id⊗ε_t)(R) = (S⊗id)(E)",
            Some(st.eps_t.clone()),
            false,
            h.apply2(e, &h.antipode, &id),
        ),
    ];
    for (cid, anchor, map, first, expect) in leg_maps {
        match map {
            Some(f) => {
                let got = if first { h.apply2(r, &f, &id) } else { h.apply2(r, &id, &f) };
                rep.record(cid, anchor, equal(h, &got, &expect, 2));
            }
            None => rep.skip(cid, anchor, "antipode not invertible"),
        }
    }

    rep.record(
        "qt.antipode.s_left",
        "(S⊗id)(R) = R̄",
        equal(h, &h.apply2(r, &h.antipode, &id), rb, 2),
    );
    match &h.antipode_inv {
        Some(si) => rep.record("qt.antipode.sinv_right", "(id⊗S⁻¹)(R) = R̄", equal(h, &h.apply2(r, &id, si), rb, 2)),
        None => rep.skip("qt.antipode.sinv_right", "(id⊗S⁻¹)(R) = R̄", "antipode not invertible"),
    }
    rep.record(
        "qt.antipode.s_s",
        "(S⊗S)(R) = R",
        equal(h, &h.apply2(r, &h.antipode, &h.antipode), r, 2),
    );

    rbar_checks(q, &legs, &ecop, &m, &mut rep);
    rep
}

fn e_inverse_checks(q: &QtStructure, ecop: &SparseVec, rep: &mut Report) {
    let h = &q.host;
    let n = h.dim();
    let (r, rb, e) = (&q.r, &q.rbar, &h.e);
    let m2 = |x: &SparseVec, y: &SparseVec| h.mul2(x, y);
    rep.record("qt.e_inverse.r_rbar", "RR̄ = E^cop", equal(h, &m2(r, rb), ecop, 2));
    rep.record("qt.e_inverse.rbar_r", "R̄R = E", equal(h, &m2(rb, r), e, 2));
    rep.record("qt.e_inverse.r_e", "RE = R", equal(h, &m2(r, e), r, 2));
    rep.record("qt.e_inverse.rbar_ecop", "R̄E^cop = R̄", equal(h, &m2(rb, ecop), rb, 2));
    rep.record(
        "qt.e_inverse.generalized",
        "RR̄R = R and R̄RR̄ = R̄",
        ensure(m2(&m2(r, rb), r) == *r && m2(&m2(rb, r), rb) == *rb, || "a triple product differs".into()),
    );
    // X -> (RX, XR, XE^cop - X) is injective iff R̄ is the only solution
    let n2 = n * n;
    let hom = LinearMap::from_fn_par(3 * n2, n2, |k| {
        let x = SparseVec::unit(k);
        let a = m2(r, &x);
        let b = m2(&x, r);
        let c = m2(&x, ecop).sub(&x);
        let mut terms: Vec<(usize, crate::exactnum::Scalar)> = a.iter().map(|(i, v)| (i, v.clone())).collect();
        terms.extend(b.iter().map(|(i, v)| (n2 + i, v.clone())));
        terms.extend(c.iter().map(|(i, v)| (2 * n2 + i, v.clone())));
        SparseVec::from_terms(terms)
    });
    let kernel = hom.kernel();
    rep.record(
        "qt.e_inverse.unique",
        "R̄ is the only E-inverse of R",
        ensure(kernel.is_empty(), || {
            format!("another solution differs by {}", h.show_tensor(&kernel[0], 2))
        }),
    );
}

fn slide_checks(q: &QtStructure, at: &[SparseVec], as_: &[SparseVec], rep: &mut Report) {
    let h = &q.host;
    let r = &q.r;
    let m2 = |x: &SparseVec, y: &SparseVec| h.mul2(x, y);
    type Side<'a> = &'a (dyn Fn(&SparseVec) -> (SparseVec, SparseVec) + Sync);
    let target: [(&str, &str, Side); 3] = [
        ("qt.slide.r1", "(1⊗x)R = R(x⊗1)", &|x| (m2(&h.one_x(x), r), m2(r, &h.x1(x)))),
        ("qt.slide.r2", "(x⊗1)R = (1⊗S(x))R", &|x| (m2(&h.x1(x), r), m2(&h.one_x(&h.s(x)), r))),
        ("qt.slide.r3", "R(1⊗x) = R(S(x)⊗1)", &|x| (m2(r, &h.one_x(x)), m2(r, &h.x1(&h.s(x))))),
    ];
    for (cid, anchor, f) in target {
        rep.record(
            cid,
            anchor,
            first_failure(at.len(), |k| {
                let (lhs, rhs) = f(&at[k]);
                ensure(lhs == rhs, || format!("x = {}", h.show(&at[k])))
            }),
        );
    }
    let source: [(&str, &str, Side); 3] = [
        ("qt.slide.r4", "R(y⊗1) = R(1⊗S(y))", &|y| (m2(r, &h.x1(y)), m2(r, &h.one_x(&h.s(y))))),
        ("qt.slide.r5", "(y⊗1)R = R(1⊗y)", &|y| (m2(&h.x1(y), r), m2(r, &h.one_x(y)))),
        ("qt.slide.r6", "(1⊗y)R = (S(y)⊗1)R", &|y| (m2(&h.one_x(y), r), m2(&h.x1(&h.s(y)), r))),
    ];
    for (cid, anchor, f) in source {
        rep.record(
            cid,
            anchor,
            first_failure(as_.len(), |k| {
                let (lhs, rhs) = f(&as_[k]);
                ensure(lhs == rhs, || format!("y = {}", h.show(&as_[k])))
            }),
        );
    }
}

/// `XM = N, NX = X, MN = M, MX = Q, XQ = X, QM = M`.
fn generalized_inverse_relations(legs: &Legs, x: &SparseVec, m: &SparseVec, n: &SparseVec, q: &SparseVec) -> Outcome {
    let rels: [(&str, SparseVec, &SparseVec); 6] = [
        ("XM = N", legs.m3(x, m), n),
        ("NX = X", legs.m3(n, x), x),
        ("MN = M", legs.m3(m, n), m),
        ("MX = Q", legs.m3(m, x), q),
        ("XQ = X", legs.m3(x, q), x),
        ("QM = M", legs.m3(q, m), m),
    ];
    for (name, lhs, rhs) in rels {
        if lhs != *rhs {
            return Err(name.to_string());
        }
    }
    Ok(())
}

fn rbar_checks(q: &QtStructure, legs: &Legs, ecop: &SparseVec, m: &SparseVec, rep: &mut Report) {
    let h = &q.host;
    let (r, rb, e) = (&q.r, &q.rbar, &h.e);
    let (b12, b13, b23) = (legs.at(rb, 0, 1), legs.at(rb, 0, 2), legs.at(rb, 1, 2));

    let x = legs.m3(&b23, &b13);
    rep.record("qt.rbar.delta_left", "(Δ⊗id)(R̄) = R̄²³R̄¹³", equal(h, &h.delta_leg(rb, 0), &x, 3));
    rep.record(
        "qt.rbar.inverse_left",
        "R̄²³R̄¹³ is the generalized inverse of R¹³R²³ relative to (Δ⊗id)(E), (Δ⊗id)(E^cop)",
        generalized_inverse_relations(legs, &x, m, &h.delta_leg(e, 0), &h.delta_leg(ecop, 0)),
    );

    let x = legs.m3(&b12, &b13);
    rep.record("qt.rbar.delta_right", "(id⊗Δ)(R̄) = R̄¹²R̄¹³", equal(h, &h.delta_leg(rb, 1), &x, 3));
    let m_right = h.delta_leg(r, 1);
    rep.record(
        "qt.rbar.inverse_right",
        "R̄¹²R̄¹³ is the generalized inverse of R¹³R¹² relative to (id⊗Δ)(E), (id⊗Δ)(E^cop)",
        generalized_inverse_relations(legs, &x, &m_right, &h.delta_leg(e, 1), &h.delta_leg(ecop, 1)),
    );
    let m_lit = legs.m3(&legs.at(r, 0, 1), &legs.at(r, 0, 2));
    let lit = legs.m3(&legs.m3(&x, &m_lit), &x) == x && legs.m3(&legs.m3(&m_lit, &x), &m_lit) == m_lit;
    rep.note("rbar12_rbar13_inverts_r12_r13", lit);
}
