//! Non-degenerate pairings `⟨A, B⟩` of weak multiplier Hopf algebras.

mod rmaps;
mod verify;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{map_from_json, map_to_json, Multiplier};
use crate::exactnum::Scalar;
use crate::groupoid::FiniteGroupoid;
use crate::linalg::{Accum, LinearMap, SparseVec};
use crate::wmha::{dual, function_algebra, groupoid_algebra, WeakHopf, WmhaError};

pub use verify::{right_module_algebra_check, verify_pairing};
pub(crate) use verify::apply_bilinear;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    NotRegular(String),
    #[error(transparent)]
    Wmha(#[from] WmhaError),
    #[error("multiplier extension is not well defined: {0}")]
    IllDefined(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmhaPairing {
    pub a: WeakHopf,
    pub b: WeakHopf,
    /// Column `j` holds `⟨e_i, f_j⟩` over `i`.
    pub form: LinearMap,
    /// `⟨S_A^{-1}(e_i), f_j⟩`.
    form_sinv: LinearMap,
}

/// The four actions, each indexed by the row-major basis of its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairActions {
    /// `a▷b = ⟨a, b_(2)⟩ b_(1)` on `A⊗B`.
    pub rhd_ab: LinearMap,
    /// `b◁a = ⟨a, b_(1)⟩ b_(2)` on `B⊗A`.
    pub lhd_ba: LinearMap,
    /// `b▷a = a_(1) ⟨a_(2), b⟩` on `B⊗A`.
    pub rhd_ba: LinearMap,
    /// `a◁b = a_(2) ⟨a_(1), b⟩` on `A⊗B`.
    pub lhd_ab: LinearMap,
}

impl WmhaPairing {
    pub fn new(a: WeakHopf, b: WeakHopf, form: LinearMap) -> Result<Self, PairingError> {
        if (form.rows, form.cols) != (a.dim(), b.dim()) {
            return Err(PairingError::Shape(format!(
                "form is {}x{}, algebras have dimensions {} and {}",
                form.rows,
                form.cols,
                a.dim(),
                b.dim()
            )));
        }
        let sinv = a
            .antipode_inv
            .clone()
            .ok_or_else(|| PairingError::NotRegular(format!("antipode of {} is not invertible", a.name)))?;
        if b.antipode_inv.is_none() {
            return Err(PairingError::NotRegular(format!("antipode of {} is not invertible", b.name)));
        }
        let form_sinv = sinv.transpose().compose(&form);
        Ok(WmhaPairing { a, b, form, form_sinv })
    }

    /// `⟨δ_p, λ_q⟩ = [p = q]`.
    pub fn canonical(g: &FiniteGroupoid) -> Self {
        let n = g.num_arrows();
        Self::new(function_algebra(g), groupoid_algebra(g), LinearMap::identity(n)).expect("canonical pairing shape")
    }

    /// `⟨a, f⟩ = f(a)` between `W` and its dual.
    pub fn dual_pairing(w: &WeakHopf) -> Result<Self, PairingError> {
        let d = dual(w)?;
        Self::new(w.clone(), d, LinearMap::identity(w.dim()))
    }

    /// The same form read as a pairing of `B` with `A`.
    pub fn transposed(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone(), self.form.transpose()).expect("transposed pairing shape")
    }

    pub fn na(&self) -> usize {
        self.a.dim()
    }

    pub fn nb(&self) -> usize {
        self.b.dim()
    }

    pub fn pair(&self, i: usize, j: usize) -> Scalar {
        self.form.entry(i, j)
    }

    /// `⟨S_A^{-1}(e_i), f_j⟩`.
    pub fn pair_sinv(&self, i: usize, j: usize) -> Scalar {
        self.form_sinv.entry(i, j)
    }

    pub fn pair_vec(&self, x: &SparseVec, y: &SparseVec) -> Scalar {
        let mut acc = Scalar::ZERO;
        for (j, c) in y.iter() {
            let col = self.form.column(j);
            let v = x.dot(col);
            if !v.is_zero() {
                acc += c * &v;
            }
        }
        acc
    }

    /// `⟨a⊗a', b⊗b'⟩ = ⟨a, b⟩⟨a', b'⟩` on tensors of equal length.
    pub fn pair_tensor(&self, x: &SparseVec, y: &SparseVec, legs: usize) -> Scalar {
        let (na, nb) = (self.na(), self.nb());
        let mut acc = Scalar::ZERO;
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                let (mut ii, mut jj) = (i, j);
                let mut v = c * d;
                for _ in 0..legs {
                    let f = self.pair(ii % na, jj % nb);
                    if f.is_zero() {
                        v = Scalar::ZERO;
                        break;
                    }
                    v *= f;
                    ii /= na;
                    jj /= nb;
                }
                if !v.is_zero() {
                    acc += v;
                }
            }
        }
        acc
    }

    pub fn label_ab(&self, k: usize) -> String {
        format!("{}⊗{}", self.a.label(k / self.nb()), self.b.label(k % self.nb()))
    }

    pub fn label_ba(&self, k: usize) -> String {
        format!("{}⊗{}", self.b.label(k / self.na()), self.a.label(k % self.na()))
    }

    pub fn actions(&self) -> PairActions {
        let (na, nb) = (self.na(), self.nb());
        let rhd_ab = LinearMap::from_fn(nb, na * nb, |k| {
            let (a, b) = (k / nb, k % nb);
            let mut acc = Accum::new();
            for (i, j, c) in self.b.terms2(self.b.delta.column(b)) {
                let f = self.pair(a, j);
                if !f.is_zero() {
                    acc.add(i, c * &f);
                }
            }
            acc.finish()
        });
        let lhd_ba = LinearMap::from_fn(nb, nb * na, |k| {
            let (b, a) = (k / na, k % na);
            let mut acc = Accum::new();
            for (i, j, c) in self.b.terms2(self.b.delta.column(b)) {
                let f = self.pair(a, i);
                if !f.is_zero() {
                    acc.add(j, c * &f);
                }
            }
            acc.finish()
        });
        let rhd_ba = LinearMap::from_fn(na, nb * na, |k| {
            let (b, a) = (k / na, k % na);
            let mut acc = Accum::new();
            for (i, j, c) in self.a.terms2(self.a.delta.column(a)) {
                let f = self.pair(j, b);
                if !f.is_zero() {
                    acc.add(i, c * &f);
                }
            }
            acc.finish()
        });
        let lhd_ab = LinearMap::from_fn(na, na * nb, |k| {
            let (a, b) = (k / nb, k % nb);
            let mut acc = Accum::new();
            for (i, j, c) in self.a.terms2(self.a.delta.column(a)) {
                let f = self.pair(i, b);
                if !f.is_zero() {
                    acc.add(j, c * &f);
                }
            }
            acc.finish()
        });
        PairActions {
            rhd_ab,
            lhd_ba,
            rhd_ba,
            lhd_ab,
        }
    }

    /// `⟨a, m⟩` for a multiplier `m` of `B`: write `a = Σ b_i▷a_i` and
    /// return `Σ ⟨a_i, m b_i⟩`, cross-checked on a second decomposition.
    pub fn extend_to_multiplier(&self, m: &Multiplier, a: &SparseVec) -> Result<Scalar, PairingError> {
        let na = self.na();
        let acts = self.actions();
        let x = acts
            .rhd_ba
            .solve(a)
            .ok_or_else(|| PairingError::IllDefined("B▷A does not reach the element".into()))?;
        let value = |x: &SparseVec| {
            let mut acc = Scalar::ZERO;
            for (k, c) in x.iter() {
                let (b, ai) = (k / na, k % na);
                let mb = m.left.column(b);
                acc += c * &self.pair_vec(&SparseVec::unit(ai), mb);
            }
            acc
        };
        let v1 = value(&x);
        if let Some(k) = acts.rhd_ba.kernel().into_iter().next() {
            let v2 = value(&x.add(&k));
            if v1 != v2 {
                return Err(PairingError::IllDefined(format!("decompositions give {v1} and {v2}")));
            }
        }
        Ok(v1)
    }

    /// The multiplier `m` of `B` with `⟨a, m⟩ = ω(a)`. The slices
    /// `(ω⊗id)Δ(a)` and `(id⊗ω)Δ(a)` always lie in a finite-dimensional `A`,
    /// so this only fails when the form cannot represent `ω`.
    pub fn functional_to_multiplier(&self, omega: &SparseVec) -> Option<Multiplier> {
        let m = self.form.solve(omega)?;
        Some(crate::algebra::embed_as_multiplier(&self.b.alg, &m))
    }

    pub fn to_json_with(&self, a_ref: Value, b_ref: Value) -> Value {
        json!({
            "kind": "pairing",
            "a": a_ref,
            "b": b_ref,
            "form": map_to_json(&self.form),
        })
    }

    /// Parses the form; the algebras are resolved by the caller.
    pub fn form_from_json(v: &Value) -> Result<LinearMap, PairingError> {
        let f = v.get("form").ok_or_else(|| PairingError::Shape("missing form".into()))?;
        map_from_json(f).map_err(|e| PairingError::Shape(e.to_string()))
    }
}

#[cfg(test)]
mod tests;
