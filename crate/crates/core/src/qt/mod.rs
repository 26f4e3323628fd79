//! Quasitriangular structures: E-inverse elements, the axioms and their
//! consequences, the Drinfeld element, factorisability and canonical
//! elements of pairings.
//!
//! `R` and `R̄` are stored as elements of `host⊗host`.

mod drinfeld;
mod integrals;
mod verify;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{vec_from_json, vec_to_json, AlgebraError, FiniteAlgebra, TensorView};
use crate::double::{apply_kron, DoubleAlgebra, DoubleError};
use crate::linalg::{Accum, LinearMap, Shape, SparseVec};
use crate::pairing::WmhaPairing;
use crate::report::{ensure, first_failure, Report};
use crate::wmha::{WeakHopf, WmhaError};

pub use drinfeld::{drinfeld_element, factorisable_check, DrinfeldElement};
pub use integrals::{canonical_from_integrals, cointegrals, Cointegrals, IntegralCanonical};
pub use verify::verify_qt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QtError {
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    Wmha(#[from] WmhaError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("embedding failure: {0}")]
    Embedding(String),
    #[error("{0}")]
    Refused(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtStructure {
    pub host: WeakHopf,
    pub r: SparseVec,
    pub rbar: SparseVec,
}

impl QtStructure {
    pub fn new(host: WeakHopf, r: SparseVec, rbar: SparseVec) -> Result<Self, QtError> {
        let n2 = host.dim() * host.dim();
        if r.max_index().is_some_and(|m| m >= n2) || rbar.max_index().is_some_and(|m| m >= n2) {
            return Err(QtError::Shape(format!("R and R̄ must lie in a space of dimension {n2}")));
        }
        Ok(QtStructure { host, r, rbar })
    }

    /// `R̄ = (S⊗id)(R)`.
    pub fn with_antipode(host: WeakHopf, r: SparseVec) -> Result<Self, QtError> {
        let n = host.dim();
        let rbar = host.apply2(&r, &host.antipode, &LinearMap::identity(n));
        Self::new(host, r, rbar)
    }

    pub fn dim(&self) -> usize {
        self.host.dim()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "quasitriangular",
            "host": self.host.to_json(),
            "r": vec_to_json(&self.r),
            "rbar": vec_to_json(&self.rbar),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, QtError> {
        let fmt = |m: &str| QtError::Algebra(AlgebraError::Format(m.to_string()));
        let host = WeakHopf::from_json(v.get("host").ok_or_else(|| fmt("missing host"))?)?;
        let n2 = host.dim() * host.dim();
        let r = vec_from_json(v.get("r").ok_or_else(|| fmt("missing r"))?, n2)?;
        let rbar = vec_from_json(v.get("rbar").ok_or_else(|| fmt("missing rbar"))?, n2)?;
        Self::new(host, r, rbar)
    }
}

/// Legs of `x`, an element of the tensor product of spaces with dimensions
/// `src`, placed at `positions` among `factors`; the other legs carry units.
pub(crate) fn place_mixed(x: &SparseVec, src: &[usize], positions: &[usize], factors: &[&FiniteAlgebra]) -> SparseVec {
    let src_shape = Shape(src.to_vec());
    let dst = Shape(factors.iter().map(|a| a.dim()).collect());
    let ones: Vec<SparseVec> = factors.iter().map(|a| a.one()).collect();
    let mut acc = Accum::new();
    for (i, c) in x.iter() {
        let d = src_shape.decode(i);
        let mut partial: Vec<(Vec<usize>, crate::exactnum::Scalar)> = vec![(vec![0; factors.len()], c.clone())];
        for slot in 0..factors.len() {
            let mut next = Vec::new();
            for (ix, cc) in &partial {
                match positions.iter().position(|&p| p == slot) {
                    Some(leg) => {
                        let mut ix2 = ix.clone();
                        ix2[slot] = d[leg];
                        next.push((ix2, cc.clone()));
                    }
                    None => {
                        for (u, uc) in ones[slot].iter() {
                            let mut ix2 = ix.clone();
                            ix2[slot] = u;
                            next.push((ix2, cc * uc));
                        }
                    }
                }
            }
            partial = next;
        }
        for (ix, cc) in partial {
            acc.add(dst.encode(&ix), cc);
        }
    }
    acc.finish()
}

/// The canonical element `Σ X_kl a_k⊗b_l` of a pairing, with
/// `Σ_k ⟨a_k, b_m⟩ X_kl = [l = m]`.
pub fn canonical_tensor(p: &WmhaPairing) -> Result<SparseVec, QtError> {
    let (na, nb) = (p.na(), p.nb());
    if na != nb {
        return Err(QtError::Refused(format!("form is {na}x{nb}")));
    }
    let inv = p
        .form
        .inverse()
        .ok_or_else(|| QtError::Refused("form matrix is singular".into()))?;
    // X = (F^T)^{-1}, so X_kl = (F^{-1})_lk
    Ok(SparseVec::from_terms((0..na).flat_map(|k| {
        let col = inv.column(k);
        col.iter().map(move |(l, c)| (k * nb + l, c.clone())).collect::<Vec<_>>()
    })))
}

/// Canonical element of the pairing embedded into `D⊗D`, together with the
/// identities it satisfies before and after embedding.
#[derive(Clone, Debug)]
pub struct CanonicalElement {
    pub qt: QtStructure,
    /// The element of `A⊗B`.
    pub tensor: SparseVec,
    pub report: Report,
}

pub fn canonical_element(d: &DoubleAlgebra) -> Result<CanonicalElement, QtError> {
    let p = &d.pairing;
    let (nb, m) = (d.nb(), d.dim());
    let t = canonical_tensor(p)?;
    let h = &d.hopf;
    for (name, f, src) in [("a ↦ a⊗_D 1", &d.f1, &p.a.alg), ("b ↦ 1⊗_D b", &d.f2, &p.b.alg)] {
        let k = src.dim();
        if f.apply(&src.one()) != h.one() {
            return Err(QtError::Embedding(format!("{name} is not unital")));
        }
        for i in 0..k {
            for j in 0..k {
                if f.apply(src.mul_basis(i, j)) != h.mul(f.column(i), f.column(j)) {
                    return Err(QtError::Embedding(format!(
                        "{name} is not multiplicative on {}, {}",
                        src.label(i),
                        src.label(j)
                    )));
                }
            }
        }
    }
    let r = apply_kron(&d.f1, &d.f2, &t, nb, m);
    let qt = QtStructure::with_antipode(h.clone(), r)?;
    let report = canonical_checks(d, &t, &qt.r);
    Ok(CanonicalElement { qt, tensor: t, report })
}

fn canonical_checks(d: &DoubleAlgebra, t: &SparseVec, r: &SparseVec) -> Report {
    let mut rep = Report::new();
    let p = &d.pairing;
    let (a, b, h) = (&p.a, &p.b, &d.hopf);
    let (na, nb, m) = (d.na(), d.nb(), d.dim());
    let terms: Vec<(usize, usize, crate::exactnum::Scalar)> =
        t.iter().map(|(k, c)| (k / nb, k % nb, c.clone())).collect();

    rep.record(
        "canonical.pairing",
        "(⟨·,b⟩⊗id)R = b and (id⊗⟨a,·⟩)R = a",
        first_failure(na + nb, |k| {
            if k < nb {
                let mut acc = Accum::new();
                for (x, y, c) in &terms {
                    acc.add(*y, c * &p.pair(*x, k));
                }
                ensure(acc.finish() == SparseVec::unit(k), || format!("b = {}", b.label(k)))
            } else {
                let i = k - nb;
                let mut acc = Accum::new();
                for (x, y, c) in &terms {
                    acc.add(*x, c * &p.pair(i, *y));
                }
                ensure(acc.finish() == SparseVec::unit(i), || format!("a = {}", a.label(i)))
            }
        }),
    );

    let aab = [&a.alg, &a.alg, &b.alg];
    let abb = [&a.alg, &b.alg, &b.alg];
    let lhs = Shape(vec![na, nb]).apply_leg(t, 0, &a.delta);
    let r13 = place_mixed(t, &[na, nb], &[0, 2], &aab);
    let r23 = place_mixed(t, &[na, nb], &[1, 2], &aab);
    rep.record(
        "canonical.delta_a",
        "(Δ_A⊗id)R = R¹³R²³",
        ensure(lhs == TensorView::new(&aab).mul(&r13, &r23), || "in A⊗A⊗B".into()),
    );
    let lhs = Shape(vec![na, nb]).apply_leg(t, 1, &b.delta);
    let r12 = place_mixed(t, &[na, nb], &[0, 1], &abb);
    let r13 = place_mixed(t, &[na, nb], &[0, 2], &abb);
    rep.record(
        "canonical.delta_b",
        "(id⊗Δ_B)R = R¹²R¹³",
        ensure(lhs == TensorView::new(&abb).mul(&r12, &r13), || "in A⊗B⊗B".into()),
    );
    let mut left = Accum::new();
    let mut right = Accum::new();
    for (x, y, c) in &terms {
        right.add(*x, c * &b.counit[*y]);
        left.add(*y, c * &a.counit[*x]);
    }
    let (left, right) = (left.finish(), right.finish());
    rep.record(
        "canonical.counit",
        "(id⊗ε_B)R = 1 and (ε_A⊗id)R = 1",
        ensure(right == a.one() && left == b.one(), || {
            format!("(id⊗ε)R = {}, (ε⊗id)R = {}", a.show(&right), b.show(&left))
        }),
    );

    let acts = p.actions();
    let f1 = |x: &SparseVec| d.f1.apply(x);
    let f2 = |y: &SparseVec| d.f2.apply(y);
    rep.record(
        "canonical.exchange",
        "Σ⟨a₁,b₂⟩(1⊗_D b₁)(a₂⊗_D 1) = Σ(a₁⊗_D 1)(1⊗_D b◁a₂)",
        first_failure(na * nb, |k| {
            let (x, y) = (k / nb, k % nb);
            let mut lhs = Accum::new();
            for (a1, a2, c) in a.terms2(a.delta.column(x)) {
                for (b1, b2, e) in b.terms2(b.delta.column(y)) {
                    let f = p.pair(a1, b2);
                    if f.is_zero() {
                        continue;
                    }
                    let prod = h.mul(d.f2.column(b1), d.f1.column(a2));
                    lhs.add_scaled(&(c * e * f), &prod);
                }
            }
            let mut rhs = Accum::new();
            for (a1, a2, c) in a.terms2(a.delta.column(x)) {
                let moved = acts.lhd_ba.column(y * na + a2);
                rhs.add_scaled(c, &h.mul(d.f1.column(a1), &f2(moved)));
            }
            ensure(lhs.finish() == rhs.finish(), || p.label_ab(k))
        }),
    );

    let flip = |x: &SparseVec| h.flip2(x);
    rep.record(
        "canonical.intertwine_a",
        "Δ^cop(a)R = RΔ(a) for a⊗_D 1",
        first_failure(na, |x| {
            let da = h.delta_of(&f1(&SparseVec::unit(x)));
            ensure(h.mul2(&flip(&da), r) == h.mul2(r, &da), || format!("a = {}", a.label(x)))
        }),
    );
    rep.record(
        "canonical.intertwine_b",
        "RΔ^cop(b) = Δ(b)R for 1⊗_D b",
        first_failure(nb, |y| {
            let db = h.delta_of(&f2(&SparseVec::unit(y)));
            ensure(h.mul2(r, &flip(&db)) == h.mul2(&db, r), || format!("b = {}", b.label(y)))
        }),
    );

    // R¹² ∈ A⊗D, R¹³ ∈ A⊗B, R²³ ∈ D⊗B, all inside A⊗D⊗B
    let adb = [&a.alg, &h.alg, &b.alg];
    let view = TensorView::new(&adb);
    let t12 = apply_kron(&LinearMap::identity(na), &d.f2, t, nb, m);
    let t23 = apply_kron(&d.f1, &LinearMap::identity(nb), t, nb, nb);
    let x12 = place_mixed(&t12, &[na, m], &[0, 1], &adb);
    let x13 = place_mixed(t, &[na, nb], &[0, 2], &adb);
    let x23 = place_mixed(&t23, &[m, nb], &[1, 2], &adb);
    rep.record(
        "canonical.ybe_mixed",
        "R¹²R¹³R²³ = R²³R¹³R¹² in A⊗D⊗B",
        ensure(view.mul3(&x12, &x13, &x23) == view.mul3(&x23, &x13, &x12), || {
            "the two triple products differ".into()
        }),
    );
    rep
}

#[cfg(test)]
mod tests;
