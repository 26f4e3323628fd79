//! Finite weak multiplier Hopf algebras.
//!
//! In finite dimension every multiplier of `A (x) A` is an element, so the
//! coproduct is stored as a map into `A (x) A` and `E` as an element.

mod integrals;
mod verify;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{map_from_json, map_to_json, vec_from_json, vec_to_json, AlgebraError, FiniteAlgebra, TensorView};
use crate::exactnum::Scalar;
use crate::groupoid::FiniteGroupoid;
use crate::linalg::{tensor, Accum, LinearMap, Shape, SparseVec, Subspace};
use crate::report::{ensure, first_failure, Report};

pub(crate) use integrals::faithful;
pub use integrals::{counit_action, dual, integrals, module_algebra_check, IntegralSpace};
pub use verify::{verify_wmha, verify_wmha_seeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WmhaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Refused(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakHopf {
    pub name: String,
    pub alg: FiniteAlgebra,
    /// `A -> A (x) A`.
    pub delta: LinearMap,
    /// Values `ε(e_i)`.
    pub counit: Vec<Scalar>,
    pub antipode: LinearMap,
    /// `None` when the stored antipode is singular.
    pub antipode_inv: Option<LinearMap>,
    /// Canonical idempotent in `A (x) A`.
    pub e: SparseVec,
}

impl WeakHopf {
    pub fn new(
        name: impl Into<String>,
        alg: FiniteAlgebra,
        delta: LinearMap,
        counit: Vec<Scalar>,
        antipode: LinearMap,
        e: SparseVec,
    ) -> Result<Self, WmhaError> {
        let n = alg.dim();
        if alg.unit().is_none() {
            return Err(WmhaError::Shape("algebra must be unital".into()));
        }
        if (delta.rows, delta.cols) != (n * n, n)
            || counit.len() != n
            || (antipode.rows, antipode.cols) != (n, n)
            || e.max_index().is_some_and(|m| m >= n * n)
        {
            return Err(WmhaError::Shape(format!("structure maps do not match dimension {n}")));
        }
        let antipode_inv = antipode.inverse();
        Ok(WeakHopf {
            name: name.into(),
            alg,
            delta,
            counit,
            antipode,
            antipode_inv,
            e,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.alg.label(i)
    }

    pub fn show(&self, x: &SparseVec) -> String {
        self.alg.show(x)
    }

    /// Witness formatting for an element of a tensor power.
    pub fn show_tensor(&self, x: &SparseVec, legs: usize) -> String {
        let shape = Shape(vec![self.dim(); legs]);
        crate::algebra::show_with(x, |i| {
            shape
                .decode(i)
                .iter()
                .map(|&k| self.label(k).to_string())
                .collect::<Vec<_>>()
                .join("⊗")
        })
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.alg.mul(x, y)
    }

    pub fn one(&self) -> SparseVec {
        self.alg.one()
    }

    pub fn one2(&self) -> SparseVec {
        let u = self.one();
        tensor(&u, &u, self.dim())
    }

    pub fn delta_of(&self, x: &SparseVec) -> SparseVec {
        self.delta.apply(x)
    }

    pub fn eps(&self, x: &SparseVec) -> Scalar {
        x.dot_dense(&self.counit)
    }

    pub fn s(&self, x: &SparseVec) -> SparseVec {
        self.antipode.apply(x)
    }

    pub fn s_inv(&self, x: &SparseVec) -> Option<SparseVec> {
        self.antipode_inv.as_ref().map(|m| m.apply(x))
    }

    pub fn star(&self, x: &SparseVec) -> Option<SparseVec> {
        self.alg.star(x)
    }

    /// Multiplication in `A^{(x) k}`.
    pub fn mul_k(&self, k: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let f: Vec<&FiniteAlgebra> = vec![&self.alg; k];
        TensorView::new(&f).mul(x, y)
    }

    pub fn mul2(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul_k(2, x, y)
    }

    pub fn mul3(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul_k(3, x, y)
    }

    /// Terms `(i, j, c)` of an element of `A (x) A`.
    pub fn terms2<'a>(&self, x: &'a SparseVec) -> impl Iterator<Item = (usize, usize, &'a Scalar)> + 'a {
        let n = self.dim();
        x.iter().map(move |(k, c)| (k / n, k % n, c))
    }

    pub fn t2(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        tensor(x, y, self.dim())
    }

    /// `x (x) 1` and `1 (x) x`.
    pub fn x1(&self, x: &SparseVec) -> SparseVec {
        self.t2(x, &self.one())
    }

    pub fn one_x(&self, x: &SparseVec) -> SparseVec {
        self.t2(&self.one(), x)
    }

    /// Legs of an element of `A^{(x) k}` placed into `A^{(x) m}`; the
    /// remaining legs carry the unit.
    pub fn place(&self, x: &SparseVec, k: usize, positions: &[usize], m: usize) -> SparseVec {
        debug_assert_eq!(positions.len(), k);
        let n = self.dim();
        let src = Shape(vec![n; k]);
        let dst = Shape(vec![n; m]);
        let one = self.one();
        let free: Vec<usize> = (0..m).filter(|p| !positions.contains(p)).collect();
        let mut acc = Accum::new();
        for (i, c) in x.iter() {
            let d = src.decode(i);
            let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(vec![0; m], c.clone())];
            for (leg, &pos) in positions.iter().enumerate() {
                for t in partial.iter_mut() {
                    t.0[pos] = d[leg];
                }
            }
            for &f in &free {
                let mut next = Vec::with_capacity(partial.len() * one.nnz());
                for (ix, cc) in &partial {
                    for (u, uc) in one.iter() {
                        let mut ix2 = ix.clone();
                        ix2[f] = u;
                        next.push((ix2, cc * uc));
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

    /// `(f (x) g)` on `A (x) A`.
    pub fn apply2(&self, x: &SparseVec, f: &LinearMap, g: &LinearMap) -> SparseVec {
        let n = self.dim();
        let mut acc = Accum::new();
        for (i, j, c) in self.terms2(x) {
            for (a, ca) in f.column(i).iter() {
                let cca = c * ca;
                for (b, cb) in g.column(j).iter() {
                    acc.add(a * n + b, &cca * cb);
                }
            }
        }
        acc.finish()
    }

    pub fn flip2(&self, x: &SparseVec) -> SparseVec {
        crate::linalg::flip(x, self.dim(), self.dim())
    }

    /// `(Δ (x) id)Δ(x)`.
    pub fn delta2(&self, x: &SparseVec) -> SparseVec {
        let n = self.dim();
        Shape(vec![n, n]).apply_leg(&self.delta_of(x), 0, &self.delta)
    }

    /// Coproduct of a tensor leg: `(Δ (x) id)` or `(id (x) Δ)` on `A (x) A`.
    pub fn delta_leg(&self, x: &SparseVec, leg: usize) -> SparseVec {
        let n = self.dim();
        Shape(vec![n, n]).apply_leg(x, leg, &self.delta)
    }

    pub fn e_cop(&self) -> SparseVec {
        self.flip2(&self.e)
    }

    /// `ε` applied to leg `leg` of an element of `A (x) A`.
    pub fn eps_leg(&self, x: &SparseVec, leg: usize) -> SparseVec {
        let mut acc = Accum::new();
        for (i, j, c) in self.terms2(x) {
            let (keep, drop) = if leg == 0 { (j, i) } else { (i, j) };
            let e = &self.counit[drop];
            if !e.is_zero() {
                acc.add(keep, c * e);
            }
        }
        acc.finish()
    }

    fn map_from(&self, rows: usize, cols: usize, f: impl Fn(usize) -> SparseVec + Sync + Send) -> LinearMap {
        LinearMap::from_fn_par(rows, cols, f)
    }

    /// `T1(a (x) b) = Δ(a)(1 (x) b)`.
    pub fn t1(&self) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| {
            let (a, b) = (k / n, k % n);
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(a)) {
                for (r, x) in self.alg.mul_basis(j, b).iter() {
                    acc.add(i * n + r, c * x);
                }
            }
            acc.finish()
        })
    }

    /// `T2(a (x) b) = (a (x) 1)Δ(b)`.
    pub fn t2_map(&self) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| {
            let (a, b) = (k / n, k % n);
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(b)) {
                for (r, x) in self.alg.mul_basis(a, i).iter() {
                    acc.add(r * n + j, c * x);
                }
            }
            acc.finish()
        })
    }

    /// `T3(a (x) b) = (1 (x) b)Δ(a)`.
    pub fn t3(&self) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| {
            let (a, b) = (k / n, k % n);
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(a)) {
                for (r, x) in self.alg.mul_basis(b, j).iter() {
                    acc.add(i * n + r, c * x);
                }
            }
            acc.finish()
        })
    }

    /// `T4(a (x) b) = Δ(b)(a (x) 1)`.
    pub fn t4(&self) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| {
            let (a, b) = (k / n, k % n);
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(b)) {
                for (r, x) in self.alg.mul_basis(i, a).iter() {
                    acc.add(r * n + j, c * x);
                }
            }
            acc.finish()
        })
    }

    /// `P1(a (x) a') = a_(1) (x) S(a_(2)) a'`.
    pub fn p1(&self) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| {
            let (a, b) = (k / n, k % n);
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(a)) {
                let sb = self.mul(self.antipode.column(j), &SparseVec::unit(b));
                for (r, x) in sb.iter() {
                    acc.add(i * n + r, c * x);
                }
            }
            acc.finish()
        })
    }

    /// `P2(a (x) a') = a S(a'_(1)) (x) a'_(2)`.
    pub fn p2(&self) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| {
            let (a, b) = (k / n, k % n);
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(b)) {
                let as_ = self.mul(&SparseVec::unit(a), self.antipode.column(i));
                for (r, x) in as_.iter() {
                    acc.add(r * n + j, c * x);
                }
            }
            acc.finish()
        })
    }

    /// Left and right multiplication by an element of `A (x) A`.
    pub fn left_mult2(&self, x: &SparseVec) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| self.mul2(x, &SparseVec::unit(k)))
    }

    pub fn right_mult2(&self, x: &SparseVec) -> LinearMap {
        let n = self.dim();
        self.map_from(n * n, n * n, |k| self.mul2(&SparseVec::unit(k), x))
    }

    fn contract(&self, f: impl Fn(usize, usize) -> SparseVec + Sync + Send) -> LinearMap {
        let n = self.dim();
        self.map_from(n, n, |a| {
            let mut acc = Accum::new();
            for (i, j, c) in self.terms2(self.delta.column(a)) {
                acc.add_scaled(c, &f(i, j));
            }
            acc.finish()
        })
    }

    /// `ε_s(a) = S(a_(1)) a_(2)`.
    pub fn eps_s(&self) -> LinearMap {
        self.contract(|i, j| self.mul(self.antipode.column(i), &SparseVec::unit(j)))
    }

    /// `ε_t(a) = a_(1) S(a_(2))`.
    pub fn eps_t(&self) -> LinearMap {
        self.contract(|i, j| self.mul(&SparseVec::unit(i), self.antipode.column(j)))
    }

    /// `ε'_s(a) = a_(2) S^{-1}(a_(1))`.
    pub fn eps_s_prime(&self) -> Option<LinearMap> {
        let si = self.antipode_inv.as_ref()?;
        Some(self.contract(|i, j| self.mul(&SparseVec::unit(j), si.column(i))))
    }

    /// `S^{-1}(a_(2)) a_(1)`: the reading of ε'_t that is dual to ε'_s.
    pub fn eps_t_prime(&self) -> Option<LinearMap> {
        let si = self.antipode_inv.as_ref()?;
        Some(self.contract(|i, j| self.mul(si.column(j), &SparseVec::unit(i))))
    }

    /// `S^{-1}(a_(1)) a_(2)`: the other way to make sense of the repeated
    /// index in `S^{-1}(a_(2)) a_(2)`.
    pub fn eps_t_prime_alt(&self) -> Option<LinearMap> {
        let si = self.antipode_inv.as_ref()?;
        Some(self.contract(|i, j| self.mul(si.column(i), &SparseVec::unit(j))))
    }

    pub fn source_target(&self) -> SourceTargetData {
        SourceTargetData::compute(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "weak_hopf",
            "name": self.name,
            "algebra": self.alg.to_json(),
            "delta": map_to_json(&self.delta),
            "counit": self.counit,
            "antipode": map_to_json(&self.antipode),
            "e": vec_to_json(&self.e),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, WmhaError> {
        let fmt = |m: &str| WmhaError::Algebra(AlgebraError::Format(m.to_string()));
        let alg = FiniteAlgebra::from_json(v.get("algebra").ok_or_else(|| fmt("missing algebra"))?)?;
        let n = alg.dim();
        let delta = map_from_json(v.get("delta").ok_or_else(|| fmt("missing delta"))?)?;
        let counit = v
            .get("counit")
            .and_then(Value::as_array)
            .ok_or_else(|| fmt("missing counit"))?
            .iter()
            .map(|x| Scalar::from_json(x).map_err(|e| fmt(&e)))
            .collect::<Result<Vec<_>, _>>()?;
        let antipode = map_from_json(v.get("antipode").ok_or_else(|| fmt("missing antipode"))?)?;
        let e = vec_from_json(v.get("e").ok_or_else(|| fmt("missing e"))?, n * n)?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("dump").to_string();
        Self::new(name, alg, delta, counit, antipode, e)
    }
}

/// Source and target maps with their images.
#[derive(Clone, Debug)]
pub struct SourceTargetData {
    pub eps_s: LinearMap,
    pub eps_t: LinearMap,
    pub eps_s_prime: Option<LinearMap>,
    /// The validated reading of ε'_t, if any reading validates.
    pub eps_t_prime: Option<LinearMap>,
    /// `(name, map, validates)` for each candidate reading of ε'_t.
    pub eps_t_prime_candidates: Vec<(&'static str, LinearMap, bool)>,
    pub a_s: Subspace,
    pub a_t: Subspace,
    pub report: Report,
}

impl SourceTargetData {
    fn compute(w: &WeakHopf) -> Self {
        let n = w.dim();
        let eps_s = w.eps_s();
        let eps_t = w.eps_t();
        let a_s = eps_s.range();
        let a_t = eps_t.range();
        let mut report = Report::new();

        // ε'_t(a) = (ε (x) id)((a (x) 1)E) and ε'_s(a) = (id (x) ε)(E(1 (x) a))
        let target_t: Vec<SparseVec> = (0..n)
            .map(|a| w.eps_leg(&w.mul2(&w.x1(&SparseVec::unit(a)), &w.e), 0))
            .collect();
        let target_s: Vec<SparseVec> = (0..n)
            .map(|a| w.eps_leg(&w.mul2(&w.e, &w.one_x(&SparseVec::unit(a))), 1))
            .collect();

        let eps_s_prime = w.eps_s_prime();
        match &eps_s_prime {
            Some(m) => report.record(
                "source_target.eps_s_prime",
                "a_(2) S^-1(a_(1)) = (id⊗ε)(E(1⊗a))",
                first_failure(n, |a| {
                    ensure(m.column(a) == &target_s[a], || format!("a = {}", w.label(a)))
                }),
            ),
            None => report.skip(
                "source_target.eps_s_prime",
                "a_(2) S^-1(a_(1)) = (id⊗ε)(E(1⊗a))",
                "antipode not invertible",
            ),
        }

        let mut candidates = Vec::new();
        if let (Some(m1), Some(m2)) = (w.eps_t_prime(), w.eps_t_prime_alt()) {
            for (name, m) in [("S^-1(a_(2)) a_(1)", m1), ("S^-1(a_(1)) a_(2)", m2)] {
                let ok = (0..n).all(|a| m.column(a) == &target_t[a]);
                candidates.push((name, m, ok));
            }
        }
        let eps_t_prime = candidates.iter().find(|c| c.2).map(|c| c.1.clone());
        if candidates.is_empty() {
            report.skip(
                "source_target.eps_t_prime",
                "ε'_t(a) = (ε⊗id)((a⊗1)E)",
                "antipode not invertible",
            );
        } else {
            report.record(
                "source_target.eps_t_prime",
                "ε'_t(a) = (ε⊗id)((a⊗1)E)",
                ensure(eps_t_prime.is_some(), || "no reading of ε'_t matches".into()),
            );
            let readings: Vec<Value> = candidates
                .iter()
                .map(|(name, _, ok)| json!({"reading": name, "consistent": ok}))
                .collect();
            report.note("eps_t_prime_readings", readings);
        }

        let at = a_t.basis();
        let as_ = a_s.basis();
        report.record(
            "source_target.commute",
            "xy = yx for x in A_t, y in A_s",
            first_failure(at.len() * as_.len(), |k| {
                let (x, y) = (&at[k / as_.len()], &as_[k % as_.len()]);
                ensure(w.mul(x, y) == w.mul(y, x), || {
                    format!("x = {}, y = {}", w.show(x), w.show(y))
                })
            }),
        );
        report.record(
            "source_target.target_coproduct",
            "Δ(x) = (x⊗1)E = E(x⊗1) for x in A_t",
            first_failure(at.len(), |k| {
                let x = &at[k];
                let d = w.delta_of(x);
                ensure(d == w.mul2(&w.x1(x), &w.e) && d == w.mul2(&w.e, &w.x1(x)), || {
                    format!("x = {}", w.show(x))
                })
            }),
        );
        report.record(
            "source_target.source_coproduct",
            "Δ(y) = E(1⊗y) = (1⊗y)E for y in A_s",
            first_failure(as_.len(), |k| {
                let y = &as_[k];
                let d = w.delta_of(y);
                ensure(d == w.mul2(&w.e, &w.one_x(y)) && d == w.mul2(&w.one_x(y), &w.e), || {
                    format!("y = {}", w.show(y))
                })
            }),
        );
        report.record(
            "source_target.target_slide",
            "(1⊗x)E = (S(x)⊗1)E for x in A_t",
            first_failure(at.len(), |k| {
                let x = &at[k];
                ensure(w.mul2(&w.one_x(x), &w.e) == w.mul2(&w.x1(&w.s(x)), &w.e), || {
                    format!("x = {}", w.show(x))
                })
            }),
        );
        report.record(
            "source_target.source_slide",
            "E(y⊗1) = E(1⊗S(y)) for y in A_s",
            first_failure(as_.len(), |k| {
                let y = &as_[k];
                ensure(w.mul2(&w.e, &w.x1(y)) == w.mul2(&w.e, &w.one_x(&w.s(y))), || {
                    format!("y = {}", w.show(y))
                })
            }),
        );
        report.note("dim_A_s", a_s.dim());
        report.note("dim_A_t", a_t.dim());
        SourceTargetData {
            eps_s,
            eps_t,
            eps_s_prime,
            eps_t_prime,
            eps_t_prime_candidates: candidates,
            a_s,
            a_t,
            report,
        }
    }
}

/// Functions on `G` with pointwise product.
pub fn function_algebra(g: &FiniteGroupoid) -> WeakHopf {
    let n = g.num_arrows();
    let labels = (0..n).map(|p| format!("δ_{}", g.arrow_id(p))).collect();
    let ones = SparseVec::from_terms((0..n).map(|p| (p, Scalar::ONE)));
    let alg = FiniteAlgebra::from_fn(
        labels,
        |p, q| if p == q { SparseVec::unit(p) } else { SparseVec::zero() },
        Some(ones),
        Some((0..n).map(SparseVec::unit).collect()),
    )
    .expect("function algebra shape");
    let mut cols = vec![Vec::new(); n];
    let mut e_terms = Vec::new();
    for (u, v) in g.composable_pairs() {
        let r = g.compose(u, v).unwrap();
        cols[r].push((u * n + v, Scalar::ONE));
        e_terms.push((u * n + v, Scalar::ONE));
    }
    let delta = LinearMap::from_columns(n * n, cols.into_iter().map(SparseVec::from_terms).collect());
    let counit = (0..n)
        .map(|p| if g.is_identity(p) { Scalar::ONE } else { Scalar::ZERO })
        .collect();
    let antipode = LinearMap::from_fn(n, n, |p| SparseVec::unit(g.inverse(p)));
    WeakHopf::new("function_algebra", alg, delta, counit, antipode, SparseVec::from_terms(e_terms))
        .expect("function algebra shape")
}

/// The groupoid algebra with `λ_p λ_q = λ_pq`.
pub fn groupoid_algebra(g: &FiniteGroupoid) -> WeakHopf {
    let n = g.num_arrows();
    let labels = (0..n).map(|p| format!("λ_{}", g.arrow_id(p))).collect();
    let units = g.identity_arrows();
    let one = SparseVec::from_terms(units.iter().map(|&e| (e, Scalar::ONE)));
    let alg = FiniteAlgebra::from_fn(
        labels,
        |p, q| g.compose(p, q).map_or_else(SparseVec::zero, SparseVec::unit),
        Some(one),
        Some((0..n).map(|p| SparseVec::unit(g.inverse(p))).collect()),
    )
    .expect("groupoid algebra shape");
    let delta = LinearMap::from_fn(n * n, n, |p| SparseVec::unit(p * n + p));
    let counit = vec![Scalar::ONE; n];
    let antipode = LinearMap::from_fn(n, n, |p| SparseVec::unit(g.inverse(p)));
    let e = SparseVec::from_terms(units.iter().map(|&u| (u * n + u, Scalar::ONE)));
    WeakHopf::new("groupoid_algebra", alg, delta, counit, antipode, e).expect("groupoid algebra shape")
}

/// The six canonical maps `(T1, T2, T3, T4, P1, P2)`.
pub fn canonical_maps(w: &WeakHopf) -> [LinearMap; 6] {
    [w.t1(), w.t2_map(), w.t3(), w.t4(), w.p1(), w.p2()]
}

#[cfg(test)]
mod tests;
