use crate::exactnum::Scalar;
use crate::linalg::{Accum, LinearMap, SparseVec, Subspace};
use crate::report::{ensure, first_failure, Outcome, Report};
use crate::wmha::{dual, faithful, integrals, WeakHopf};

use super::QtError;

/// `R ∈ Â⊗A` built from integrals, indexed `functional * n + element`.
#[derive(Clone, Debug)]
pub struct IntegralCanonical {
    pub r: SparseVec,
    /// The left integral `φ` used, in the dual basis.
    pub phi: SparseVec,
    pub psi: SparseVec,
    pub report: Report,
}

#[derive(Clone, Debug)]
pub struct Cointegrals {
    /// Basis of the left cointegrals together with zero.
    pub left: Vec<SparseVec>,
    pub phi: Option<SparseVec>,
    /// The cointegral with `φ(t) = 1`.
    pub t: Option<SparseVec>,
    /// `Σ φ(·t₂)⊗S⁻¹(t₁)` in `Â⊗A`.
    pub canonical: Option<SparseVec>,
    pub report: Report,
}

/// A single functional from `space` whose translates span `Â`.
fn single_faithful(w: &WeakHopf, space: &[SparseVec]) -> Option<SparseVec> {
    let weighted = |p: u32| {
        let mut acc = Accum::new();
        for (j, f) in space.iter().enumerate() {
            acc.add_scaled(&crate::exactnum::q((j as i64 + 1).pow(p)), f);
        }
        acc.finish()
    };
    let mut candidates = vec![weighted(0)];
    candidates.extend(space.iter().cloned());
    candidates.extend((1..4).map(weighted));
    candidates.into_iter().find(|f| !f.is_zero() && faithful(w, std::slice::from_ref(f)))
}

/// `φ(x·)` and `φ(·x)` in the dual basis.
fn left_translate(w: &WeakHopf, phi: &SparseVec, x: &SparseVec) -> SparseVec {
    let n = w.dim();
    SparseVec::from_terms((0..n).map(|k| (k, w.mul(x, &SparseVec::unit(k)).dot(phi))))
}

fn right_translate(w: &WeakHopf, phi: &SparseVec, x: &SparseVec) -> SparseVec {
    let n = w.dim();
    SparseVec::from_terms((0..n).map(|k| (k, w.mul(&SparseVec::unit(k), x).dot(phi))))
}

/// `⟨R, f⊗b⟩ = ⟨f, b⟩` for the evaluation pairing, both ways.
pub(crate) fn canonical_outcome(w: &WeakHopf, r: &SparseVec) -> Outcome {
    let n = w.dim();
    first_failure(2 * n, |k| {
        let mut acc = Accum::new();
        if k < n {
            for (f, a, c) in w.terms2(r) {
                if f == k {
                    acc.add_ref(a, c);
                }
            }
            ensure(acc.finish() == SparseVec::unit(k), || format!("b = {}", w.label(k)))
        } else {
            let b = k - n;
            for (f, a, c) in w.terms2(r) {
                if a == b {
                    acc.add_ref(f, c);
                }
            }
            ensure(acc.finish() == SparseVec::unit(b), || format!("f = ω[{}]", w.label(b)))
        }
    })
}

/// `R(φ(a·)⊗a′) = Σ φ(a₂·)⊗S(a₁)a′` with `R = R(ε⊗1)`, checked on all
/// basis pairs together with the right-handed formula for `ψ`.
pub fn canonical_from_integrals(w: &WeakHopf) -> Result<IntegralCanonical, QtError> {
    let n = w.dim();
    let ints = integrals(w);
    let phi = single_faithful(w, &ints.left)
        .ok_or_else(|| QtError::Refused("no faithful left integral".into()))?;
    let psi = single_faithful(w, &ints.right)
        .ok_or_else(|| QtError::Refused("no faithful right integral".into()))?;
    let hat = dual(w)?;
    let view = [&hat.alg, &w.alg];
    let view = crate::algebra::TensorView::new(&view);

    // a₀ with φ(a₀·) = ε
    let trans = LinearMap::from_fn(n, n, |x| left_translate(w, &phi, &SparseVec::unit(x)));
    let a0 = trans
        .solve(&SparseVec::from_dense(&w.counit))
        .ok_or_else(|| QtError::Refused("ε is not a left translate of φ".into()))?;
    let lhs_of = |a: &SparseVec, ap: &SparseVec| {
        let mut acc = Accum::new();
        for (p, q, c) in w.terms2(&w.delta_of(a)) {
            let f = left_translate(w, &phi, &SparseVec::unit(q));
            let b = w.mul(w.antipode.column(p), ap);
            acc.add_scaled(c, &crate::linalg::tensor(&f, &b, n));
        }
        acc.finish()
    };
    let r = lhs_of(&a0, &w.one());

    let mut rep = Report::new();
    rep.record(
        "integrals.left_formula",
        "R(φ(a·)⊗a′) = Σ φ(a₂·)⊗S(a₁)a′",
        first_failure(n * n, |k| {
            let (a, ap) = (SparseVec::unit(k / n), SparseVec::unit(k % n));
            let arg = crate::linalg::tensor(&left_translate(w, &phi, &a), &ap, n);
            ensure(view.mul(&r, &arg) == lhs_of(&a, &ap), || {
                format!("a = {}, a′ = {}", w.label(k / n), w.label(k % n))
            })
        }),
    );
    rep.record(
        "integrals.right_formula",
        "(ψ(·a)⊗a′)R = Σ ψ(·a₁)⊗a′S(a₂)",
        first_failure(n * n, |k| {
            let (a, ap) = (SparseVec::unit(k / n), SparseVec::unit(k % n));
            let arg = crate::linalg::tensor(&right_translate(w, &psi, &a), &ap, n);
            let mut rhs = Accum::new();
            for (p, q, c) in w.terms2(&w.delta_of(&a)) {
                let f = right_translate(w, &psi, &SparseVec::unit(p));
                let b = w.mul(&ap, w.antipode.column(q));
                rhs.add_scaled(c, &crate::linalg::tensor(&f, &b, n));
            }
            ensure(view.mul(&arg, &r) == rhs.finish(), || {
                format!("a = {}, a′ = {}", w.label(k / n), w.label(k % n))
            })
        }),
    );
    rep.record("integrals.canonical", "⟨R, f⊗b⟩ = ⟨f, b⟩", canonical_outcome(w, &r));
    Ok(IntegralCanonical { r, phi, psi, report: rep })
}

/// `Σ φ(·t₂)⊗S⁻¹(t₁)`.
fn cointegral_element(w: &WeakHopf, phi: &SparseVec, t: &SparseVec) -> SparseVec {
    let n = w.dim();
    let s_inv = w.antipode_inv.as_ref().expect("checked by caller");
    let mut acc = Accum::new();
    for (p, q, c) in w.terms2(&w.delta_of(t)) {
        let f = right_translate(w, phi, &SparseVec::unit(q));
        acc.add_scaled(c, &crate::linalg::tensor(&f, s_inv.column(p), n));
    }
    acc.finish()
}

/// Solves `ah = ε_t(a)h`, compares with `(1⊗a)Δ(h) = (S(a)⊗1)Δ(h)`, and
/// builds the canonical element from a cointegral with `φ(t) = 1`.
pub fn cointegrals(w: &WeakHopf) -> Result<Cointegrals, QtError> {
    let n = w.dim();
    if w.antipode_inv.is_none() {
        return Err(QtError::Refused("antipode not invertible".into()));
    }
    let eps_t = w.eps_t();
    let cond = LinearMap::from_fn_par(n * n, n, |hh| {
        let x = SparseVec::unit(hh);
        let mut acc = Accum::new();
        for a in 0..n {
            let d = w.alg.mul_basis(a, hh).sub(&w.mul(eps_t.column(a), &x));
            for (i, c) in d.iter() {
                acc.add_ref(a * n + i, c);
            }
        }
        acc.finish()
    });
    let left = cond.kernel();
    let cond2 = LinearMap::from_fn_par(n * n * n, n, |hh| {
        let dh = w.delta_of(&SparseVec::unit(hh));
        let mut acc = Accum::new();
        for a in 0..n {
            let x = SparseVec::unit(a);
            let d = w.mul2(&w.one_x(&x), &dh).sub(&w.mul2(&w.x1(&w.s(&x)), &dh));
            for (i, c) in d.iter() {
                acc.add_ref(a * n * n + i, c);
            }
        }
        acc.finish()
    });
    let left2 = cond2.kernel();

    let mut rep = Report::new();
    rep.note("dim_cointegrals", left.len());
    rep.record(
        "cointegral.equivalence",
        "ah = ε_t(a)h for all a iff (1⊗a)Δ(h) = (S(a)⊗1)Δ(h) for all a",
        ensure(Subspace::span(n, left.iter()).equals(&Subspace::span(n, left2.iter())), || {
            format!("solution spaces of dimensions {} and {}", left.len(), left2.len())
        }),
    );
    rep.record(
        "cointegral.exists",
        "a nonzero left cointegral exists",
        ensure(!left.is_empty(), || "only h = 0 solves ah = ε_t(a)h".into()),
    );

    let ints = integrals(w);
    let phi = single_faithful(w, &ints.left);
    let anchor = "Σ φ(·t₂)⊗S⁻¹(t₁) is canonical when φ(t) = 1";
    let Some(phi_v) = phi.clone() else {
        rep.skip("cointegral.canonical", anchor, "no faithful left integral");
        return Ok(Cointegrals { left, phi, t: None, canonical: None, report: rep });
    };
    let found = left.iter().find_map(|t| {
        let v = t.dot(&phi_v);
        (!v.is_zero()).then(|| t.scale(&v.inv().expect("nonzero")))
    });
    let Some(t) = found else {
        rep.skip("cointegral.canonical", anchor, "φ vanishes on every cointegral");
        return Ok(Cointegrals { left, phi, t: None, canonical: None, report: rep });
    };
    let c = cointegral_element(w, &phi_v, &t);
    rep.record("cointegral.canonical", anchor, canonical_outcome(w, &c));

    // which cointegrals make the element canonical, and the value of φ there
    let target = SparseVec::from_terms((0..n).map(|i| (i * n + i, Scalar::ONE)));
    let span = LinearMap::from_columns(n * n, left.iter().map(|t| cointegral_element(w, &phi_v, t)).collect());
    match span.solve(&target) {
        Some(alpha) => {
            let mut acc = Accum::new();
            for (k, a) in alpha.iter() {
                acc.add_scaled(a, &left[k]);
            }
            rep.note("canonical_phi_of_t", acc.finish().dot(&phi_v).to_string());
        }
        None => rep.note("canonical_phi_of_t", serde_json::Value::Null),
    }
    Ok(Cointegrals {
        left,
        phi,
        t: Some(t),
        canonical: Some(c),
        report: rep,
    })
}
