use crate::linalg::{Accum, LinearMap, SparseVec, Subspace};
use crate::report::{ensure, first_failure, Report};

use super::{QtError, QtStructure};

#[derive(Clone, Debug)]
pub struct DrinfeldElement {
    /// `u = Σ S(R₂)R₁`.
    pub u: SparseVec,
    /// `w = Σ S⁻¹(R̄₂)R̄₁`.
    pub u_inv: SparseVec,
    /// `v = S(u)`.
    pub v: SparseVec,
    pub v_inv: SparseVec,
    /// `h = uv⁻¹`.
    pub h: SparseVec,
    pub h_inv: SparseVec,
    pub report: Report,
}

/// `Σ f(x₂)x₁` over the terms of `x ∈ A⊗A`.
fn contract(q: &QtStructure, x: &SparseVec, f: &LinearMap) -> SparseVec {
    let h = &q.host;
    let mut acc = Accum::new();
    for (i, j, c) in h.terms2(x) {
        acc.add_scaled(c, &h.mul(f.column(j), &SparseVec::unit(i)));
    }
    acc.finish()
}

/// Builds `u`, its inverse `w` and `v`, `h`, and checks the conjugation
/// and coproduct laws. Fails when `uw ≠ 1`.
pub fn drinfeld_element(q: &QtStructure) -> Result<DrinfeldElement, QtError> {
    let w_h = &q.host;
    let n = w_h.dim();
    let s = &w_h.antipode;
    let s_inv = w_h
        .antipode_inv
        .as_ref()
        .ok_or_else(|| QtError::Refused("antipode not invertible".into()))?;
    let one = w_h.one();
    let mul = |x: &SparseVec, y: &SparseVec| w_h.mul(x, y);

    let u = contract(q, &q.r, s);
    let w = contract(q, &q.rbar, s_inv);
    let uw = mul(&u, &w);
    if uw != one {
        return Err(QtError::NotInvertible(format!("uw = {}", w_h.show(&uw))));
    }
    let mut rep = Report::new();
    rep.record(
        "drinfeld.inverse",
        "uw = wu = 1",
        ensure(mul(&w, &u) == one, || format!("wu = {}", w_h.show(&mul(&w, &u)))),
    );
    rep.record(
        "drinfeld.u.left",
        "ua = Σ S(R₂)R₁a",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            let mut acc = Accum::new();
            for (i, j, c) in w_h.terms2(&q.r) {
                acc.add_scaled(c, &mul(s.column(j), w_h.alg.mul_basis(i, a)));
            }
            ensure(acc.finish() == mul(&u, &x), || format!("a = {}", w_h.label(a)))
        }),
    );
    let s2 = s.compose(s);
    let s_inv2 = s_inv.compose(s_inv);
    rep.record(
        "drinfeld.u.right",
        "au = uS⁻²(a)",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            ensure(mul(&x, &u) == mul(&u, s_inv2.column(a)), || format!("a = {}", w_h.label(a)))
        }),
    );
    rep.record(
        "drinfeld.w.right",
        "aw = wS²(a)",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            ensure(mul(&x, &w) == mul(&w, s2.column(a)), || format!("a = {}", w_h.label(a)))
        }),
    );
    rep.record(
        "drinfeld.s2",
        "S²(a) = uau⁻¹",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            ensure(*s2.column(a) == mul(&mul(&u, &x), &w), || format!("a = {}", w_h.label(a)))
        }),
    );

    let rr = w_h.mul2(&q.rbar, &w_h.flip2(&q.rbar));
    let uu = w_h.t2(&u, &u);
    let du = w_h.delta_of(&u);
    rep.record(
        "drinfeld.delta_u",
        "Δ(u) = R̄R̄²¹(u⊗u) = (u⊗u)R̄R̄²¹",
        ensure(du == w_h.mul2(&rr, &uu) && du == w_h.mul2(&uu, &rr), || {
            format!("Δ(u) = {}", w_h.show_tensor(&du, 2))
        }),
    );

    let v = w_h.s(&u);
    let v_inv = w_h.s(&w);
    rep.record(
        "drinfeld.v.inverse",
        "S(u)S(w) = S(w)S(u) = 1",
        ensure(mul(&v, &v_inv) == one && mul(&v_inv, &v) == one, || "S(w) does not invert S(u)".into()),
    );
    let vv = w_h.t2(&v, &v);
    let dv = w_h.delta_of(&v);
    rep.record(
        "drinfeld.delta_v",
        "Δ(v) = (v⊗v)R̄R̄²¹ = R̄R̄²¹(v⊗v)",
        ensure(dv == w_h.mul2(&vv, &rr) && dv == w_h.mul2(&rr, &vv), || {
            format!("Δ(v) = {}", w_h.show_tensor(&dv, 2))
        }),
    );
    rep.record(
        "drinfeld.v.s_minus2",
        "S⁻²(a) = vav⁻¹",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            ensure(*s_inv2.column(a) == mul(&mul(&v, &x), &v_inv), || format!("a = {}", w_h.label(a)))
        }),
    );
    let uv = mul(&u, &v);
    rep.record(
        "drinfeld.uv_commute",
        "uv = vu",
        ensure(uv == mul(&v, &u), || format!("uv = {}, vu = {}", w_h.show(&uv), w_h.show(&mul(&v, &u)))),
    );
    rep.record(
        "drinfeld.uv_central",
        "uv is central",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            ensure(mul(&uv, &x) == mul(&x, &uv), || format!("a = {}", w_h.label(a)))
        }),
    );

    let hh = mul(&u, &v_inv);
    let hh_inv = mul(&v, &w);
    let s4 = s2.compose(&s2);
    rep.record(
        "drinfeld.h.inverse",
        "h = uv⁻¹ has inverse vu⁻¹",
        ensure(mul(&hh, &hh_inv) == one && mul(&hh_inv, &hh) == one, || "vw does not invert h".into()),
    );
    rep.record(
        "drinfeld.s4",
        "S⁴(a) = hah⁻¹",
        first_failure(n, |a| {
            let x = SparseVec::unit(a);
            ensure(*s4.column(a) == mul(&mul(&hh, &x), &hh_inv), || format!("a = {}", w_h.label(a)))
        }),
    );
    let dh = w_h.delta_of(&hh);
    let h2 = w_h.t2(&hh, &hh);
    rep.record(
        "drinfeld.h.grouplike",
        "Δ(h) = (h⊗h)E = E(h⊗h)",
        ensure(dh == w_h.mul2(&h2, &w_h.e) && dh == w_h.mul2(&w_h.e, &h2), || {
            format!("Δ(h) = {}", w_h.show_tensor(&dh, 2))
        }),
    );
    rep.note("h_grouplike_without_e", dh == h2);
    let g = mul(&u, &w_h.s_inv(&u).unwrap());
    rep.note("u_sinv_u_grouplike_without_e", w_h.delta_of(&g) == w_h.t2(&g, &g));
    rep.note("u", w_h.show(&u));
    rep.note("u_squared_is_one", mul(&u, &u) == one);

    Ok(DrinfeldElement {
        u,
        u_inv: w,
        v,
        v_inv,
        h: hh,
        h_inv: hh_inv,
        report: rep,
    })
}

/// `F(φ) = (φ⊗id)(W)` and `F'(φ) = (id⊗φ)(W)` with `W = R²¹R`, their
/// images against the whole algebra and the centralizer of `A_s`, and the
/// adjoint invariance of `(S⊗id)(W)`.
pub fn factorisable_check(q: &QtStructure) -> Report {
    let mut rep = Report::new();
    let h = &q.host;
    let n = h.dim();
    let w = h.mul2(&h.flip2(&q.r), &q.r);
    let mut rows: Vec<Accum> = (0..n).map(|_| Accum::new()).collect();
    let mut cols: Vec<Accum> = (0..n).map(|_| Accum::new()).collect();
    for (i, j, c) in h.terms2(&w) {
        rows[i].add_ref(j, c);
        cols[j].add_ref(i, c);
    }
    let image = Subspace::span_owned(n, rows.into_iter().map(Accum::finish));
    let image_prime = Subspace::span_owned(n, cols.into_iter().map(Accum::finish));

    let as_ = h.source_target().a_s.basis();
    let comm = LinearMap::from_fn(n * as_.len().max(1), n, |z| {
        let z = SparseVec::unit(z);
        let mut acc = Accum::new();
        for (k, y) in as_.iter().enumerate() {
            for (i, c) in h.mul(&z, y).sub(&h.mul(y, &z)).iter() {
                acc.add_ref(k * n + i, c);
            }
        }
        acc.finish()
    });
    let centralizer = Subspace::span_owned(n, comm.kernel());

    rep.record(
        "factorisable.centralizer",
        "the image of F lies in the centralizer of A_s",
        ensure(centralizer.contains_all(&image), || {
            let bad = image.basis().into_iter().find(|v| !centralizer.contains(v)).unwrap();
            format!("F(φ) = {}", h.show(&bad))
        }),
    );
    let ss = h.apply2(&w, &h.antipode, &h.antipode);
    rep.record(
        "factorisable.antipode",
        "(S⊗S)(W) = W²¹",
        ensure(ss == h.flip2(&w), || format!("(S⊗S)(W) = {}", h.show_tensor(&ss, 2))),
    );
    rep.note("dim_image", image.dim());
    rep.note("dim_image_prime", image_prime.dim());
    rep.note("dim_centralizer", centralizer.dim());
    rep.note("surjective_onto_algebra", image.dim() == n);
    rep.note("surjective_onto_centralizer", image.equals(&centralizer));
    rep.note("prime_surjective_onto_algebra", image_prime.dim() == n);
    rep.note("prime_surjective_onto_centralizer", image_prime.equals(&centralizer));

    // a·X = Σ a₍₁₎X₁S(a₍₂₎) ⊗ a₍₃₎X₂S(a₍₄₎) for X = (S⊗id)(W)
    let x = h.apply2(&w, &h.antipode, &LinearMap::identity(n));
    let adj: Vec<LinearMap> = (0..n)
        .map(|i| {
            LinearMap::from_fn(n, n, |g| {
                let mut acc = Accum::new();
                for (p, r, c) in h.terms2(h.delta.column(i)) {
                    acc.add_scaled(c, &h.mul(h.alg.mul_basis(p, g), h.antipode.column(r)));
                }
                acc.finish()
            })
        })
        .collect();
    let eps_t = h.eps_t();
    rep.record(
        "factorisable.adjoint_invariance",
        "a·(S⊗id)(W) = ε_t(a)(S⊗id)(W)",
        first_failure(n, |a| {
            let mut acc = Accum::new();
            for (i, j, c) in h.terms2(h.delta.column(a)) {
                acc.add_scaled(c, &h.apply2(&x, &adj[i], &adj[j]));
            }
            let rhs = h.mul2(&h.x1(eps_t.column(a)), &x);
            ensure(acc.finish() == rhs, || format!("a = {}", h.label(a)))
        }),
    );
    rep
}
