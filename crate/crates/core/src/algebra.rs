//! Structure-constant algebras, tensor products and multipliers.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactnum::Scalar;
use crate::linalg::{Accum, LinearMap, Shape, SparseVec, Subspace};
use crate::report::{ensure, first_failure, Outcome, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed algebra data: {0}")]
    Format(String),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Option<SparseVec>,
    star: Option<Vec<SparseVec>>,
}

impl FiniteAlgebra {
    pub fn new(
        labels: Vec<String>,
        table: Vec<SparseVec>,
        unit: Option<SparseVec>,
        star: Option<Vec<SparseVec>>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(AlgebraError::Shape(format!(
                "{} structure entries for dimension {n}",
                table.len()
            )));
        }
        let in_range = |v: &SparseVec| v.max_index().map_or(true, |m| m < n);
        if !table.iter().all(in_range)
            || !unit.iter().all(in_range)
            || !star.iter().flatten().all(in_range)
            || star.as_ref().is_some_and(|s| s.len() != n)
        {
            return Err(AlgebraError::Shape("basis index out of range".into()));
        }
        Ok(FiniteAlgebra {
            labels,
            table,
            unit,
            star,
        })
    }

    pub fn from_fn(
        labels: Vec<String>,
        product: impl Fn(usize, usize) -> SparseVec,
        unit: Option<SparseVec>,
        star: Option<Vec<SparseVec>>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let table = (0..n * n).map(|k| product(k / n, k % n)).collect();
        Self::new(labels, table, unit, star)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let t = self.mul_basis(i, j);
                if !t.is_zero() {
                    acc.add_scaled(&(a * b), t);
                }
            }
        }
        acc.finish()
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    pub fn one(&self) -> SparseVec {
        self.unit.clone().expect("unital algebra")
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn star_table(&self) -> Option<&[SparseVec]> {
        self.star.as_deref()
    }

    /// Conjugate-linear extension of the star table.
    pub fn star(&self, x: &SparseVec) -> Option<SparseVec> {
        let st = self.star.as_ref()?;
        let mut acc = Accum::new();
        for (i, c) in x.iter() {
            acc.add_scaled(&c.conj(), &st[i]);
        }
        Some(acc.finish())
    }

    pub fn with_star(mut self, star: Option<Vec<SparseVec>>) -> Self {
        self.star = star;
        self
    }

    pub fn left_mult(&self, x: &SparseVec) -> LinearMap {
        let n = self.dim();
        LinearMap::from_fn(n, n, |j| self.mul(x, &SparseVec::unit(j)))
    }

    pub fn right_mult(&self, x: &SparseVec) -> LinearMap {
        let n = self.dim();
        LinearMap::from_fn(n, n, |j| self.mul(&SparseVec::unit(j), x))
    }

    pub fn element(&self, coeffs: SparseVec) -> AlgElement<'_> {
        AlgElement {
            parent: self,
            coeffs,
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgElement<'_> {
        self.element(SparseVec::unit(i))
    }

    /// Componentwise algebra on pairs of basis elements.
    pub fn tensor(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
        let nb = b.dim();
        let mut labels = Vec::with_capacity(a.dim() * nb);
        for x in &a.labels {
            for y in &b.labels {
                labels.push(format!("{x}⊗{y}"));
            }
        }
        let n = labels.len();
        let table = (0..n * n)
            .map(|k| {
                let (p, q) = (k / n, k % n);
                crate::linalg::tensor(
                    a.mul_basis(p / nb, q / nb),
                    b.mul_basis(p % nb, q % nb),
                    nb,
                )
            })
            .collect();
        let unit = match (&a.unit, &b.unit) {
            (Some(u), Some(v)) => Some(crate::linalg::tensor(u, v, nb)),
            _ => None,
        };
        let star = match (&a.star, &b.star) {
            (Some(s), Some(t)) => Some(
                (0..n)
                    .map(|p| crate::linalg::tensor(&s[p / nb], &t[p % nb], nb))
                    .collect(),
            ),
            _ => None,
        };
        FiniteAlgebra {
            labels,
            table,
            unit,
            star,
        }
    }

    /// Lists a vector with basis labels, for witnesses.
    pub fn show(&self, x: &SparseVec) -> String {
        show_with(x, |i| self.labels[i].clone())
    }

    pub fn check_associative(&self) -> Outcome {
        let n = self.dim();
        first_failure(n * n * n, |k| {
            let (i, j, l) = (k / (n * n), (k / n) % n, k % n);
            let left = self.mul(self.mul_basis(i, j), &SparseVec::unit(l));
            let right = self.mul(&SparseVec::unit(i), self.mul_basis(j, l));
            ensure(left == right, || {
                format!("({}, {}, {})", self.labels[i], self.labels[j], self.labels[l])
            })
        })
    }

    /// `a -> (a e_j)_j` and `a -> (e_j a)_j` are injective.
    pub fn check_nondegenerate(&self) -> Outcome {
        let n = self.dim();
        let stacked = |left: bool| {
            LinearMap::from_fn(n * n, n, |i| {
                let mut acc = Accum::new();
                for j in 0..n {
                    let p = if left { self.mul_basis(i, j) } else { self.mul_basis(j, i) };
                    for (k, c) in p.iter() {
                        acc.add_ref(j * n + k, c);
                    }
                }
                acc.finish()
            })
        };
        for (left, name) in [(true, "right factor"), (false, "left factor")] {
            let m = stacked(left);
            if let Some(k) = m.kernel().first() {
                return Err(format!("{} annihilated by every {name}", self.show(k)));
            }
        }
        Ok(())
    }

    pub fn check_idempotent(&self) -> Outcome {
        let span = Subspace::span(self.dim(), self.table.iter());
        ensure(span.dim() == self.dim(), || {
            format!("span of products has dimension {} < {}", span.dim(), self.dim())
        })
    }

    pub fn check_unit(&self) -> Outcome {
        let Some(u) = &self.unit else {
            return Err("no unit".into());
        };
        first_failure(self.dim(), |i| {
            let e = SparseVec::unit(i);
            ensure(self.mul(u, &e) == e && self.mul(&e, u) == e, || {
                format!("1·{0} or {0}·1", self.labels[i])
            })
        })
    }

    pub fn check_star(&self) -> Outcome {
        if self.star.is_none() {
            return Ok(());
        }
        let n = self.dim();
        first_failure(n, |i| {
            let e = SparseVec::unit(i);
            let ss = self.star(&self.star(&e).unwrap()).unwrap();
            ensure(ss == e, || format!("({})** ≠ {}", self.labels[i], self.labels[i]))
        })?;
        first_failure(n * n, |k| {
            let (i, j) = (k / n, k % n);
            let lhs = self.star(self.mul_basis(i, j)).unwrap();
            let rhs = self.mul(
                &self.star(&SparseVec::unit(j)).unwrap(),
                &self.star(&SparseVec::unit(i)).unwrap(),
            );
            ensure(lhs == rhs, || format!("(ab)* ≠ b*a* at ({}, {})", self.labels[i], self.labels[j]))
        })
    }

    /// Every algebra invariant as a report.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        r.record("algebra.associative", "(ab)c = a(bc)", self.check_associative());
        r.record(
            "algebra.nondegenerate",
            "ab = 0 for all b, or ba = 0 for all b, forces a = 0",
            self.check_nondegenerate(),
        );
        r.record("algebra.idempotent", "A² = A", self.check_idempotent());
        if self.unit.is_some() {
            r.record("algebra.unit", "1a = a = a1", self.check_unit());
        }
        if self.star.is_some() {
            r.record("algebra.star", "a** = a, (ab)* = b*a*", self.check_star());
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.mul_basis(i, j);
                if !v.is_zero() {
                    structure.push(json!([i, j, vec_to_json(v)]));
                }
            }
        }
        json!({
            "basis": self.labels,
            "structure": structure,
            "unit": self.unit.as_ref().map(vec_to_json),
            "star": self.star.as_ref().map(|s| s.iter().map(vec_to_json).collect::<Vec<_>>()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let fmt = |m: &str| AlgebraError::Format(m.to_string());
        let labels: Vec<String> = serde_json::from_value(
            v.get("basis").cloned().ok_or_else(|| fmt("missing basis"))?,
        )
        .map_err(|e| fmt(&e.to_string()))?;
        let n = labels.len();
        let mut table = vec![SparseVec::zero(); n * n];
        for t in v
            .get("structure")
            .and_then(Value::as_array)
            .ok_or_else(|| fmt("missing structure"))?
        {
            match t.as_array().map(Vec::as_slice) {
                Some([i, j, x]) => {
                    let (i, j) = (index_of(i, n)?, index_of(j, n)?);
                    table[i * n + j] = vec_from_json(x, n)?;
                }
                _ => return Err(fmt("structure entries are [i, j, {k: scalar}]")),
            }
        }
        let unit = match v.get("unit") {
            None | Some(Value::Null) => None,
            Some(u) => Some(vec_from_json(u, n)?),
        };
        let star = match v.get("star") {
            None | Some(Value::Null) => None,
            Some(Value::Array(s)) => Some(
                s.iter()
                    .map(|x| vec_from_json(x, n))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            Some(_) => return Err(fmt("star must be a list")),
        };
        Self::new(labels, table, unit, star)
    }
}

fn index_of(v: &Value, n: usize) -> Result<usize, AlgebraError> {
    let i = match v {
        Value::Number(x) => x.as_u64().map(|x| x as usize),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
    .ok_or_else(|| AlgebraError::Format(format!("bad index {v}")))?;
    if i >= n {
        return Err(AlgebraError::Shape(format!("index {i} out of range {n}")));
    }
    Ok(i)
}

/// `{ "index": scalar }` with only nonzero entries.
pub fn vec_to_json(v: &SparseVec) -> Value {
    let mut m = Map::new();
    for (i, c) in v.iter() {
        m.insert(i.to_string(), serde_json::to_value(c).unwrap());
    }
    Value::Object(m)
}

pub fn vec_from_json(v: &Value, n: usize) -> Result<SparseVec, AlgebraError> {
    let obj = v
        .as_object()
        .ok_or_else(|| AlgebraError::Format(format!("expected sparse vector, got {v}")))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (k, x) in obj {
        let i: usize = k
            .parse()
            .map_err(|_| AlgebraError::Format(format!("bad index `{k}`")))?;
        if i >= n {
            return Err(AlgebraError::Shape(format!("index {i} out of range {n}")));
        }
        terms.push((i, Scalar::from_json(x).map_err(AlgebraError::Format)?));
    }
    Ok(SparseVec::from_terms(terms))
}

/// Column-wise dump of a linear map.
pub fn map_to_json(m: &LinearMap) -> Value {
    json!({
        "rows": m.rows,
        "cols": m.cols,
        "columns": m.columns().iter().map(vec_to_json).collect::<Vec<_>>(),
    })
}

pub fn map_from_json(v: &Value) -> Result<LinearMap, AlgebraError> {
    let fmt = |m: &str| AlgebraError::Format(m.to_string());
    let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| fmt("missing rows"))? as usize;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| fmt("missing cols"))? as usize;
    let columns = v
        .get("columns")
        .and_then(Value::as_array)
        .ok_or_else(|| fmt("missing columns"))?
        .iter()
        .map(|c| vec_from_json(c, rows))
        .collect::<Result<Vec<_>, _>>()?;
    if columns.len() != cols {
        return Err(AlgebraError::Shape(format!("{} columns, expected {cols}", columns.len())));
    }
    Ok(LinearMap::from_columns(rows, columns))
}

/// Human-readable linear combination.
pub fn show_with(x: &SparseVec, label: impl Fn(usize) -> String) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = x
        .iter()
        .map(|(i, c)| {
            if c.is_one() {
                label(i)
            } else {
                format!("({c})·{}", label(i))
            }
        })
        .collect();
    terms.join(" + ")
}

/// An element together with the algebra it lives in.
#[derive(Clone, Debug)]
pub struct AlgElement<'a> {
    pub parent: &'a FiniteAlgebra,
    pub coeffs: SparseVec,
}

impl<'a> AlgElement<'a> {
    pub fn scale(&self, c: &Scalar) -> Self {
        self.parent.element(self.coeffs.scale(c))
    }

    pub fn star(&self) -> Option<Self> {
        self.parent.star(&self.coeffs).map(|c| self.parent.element(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

impl PartialEq for AlgElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.coeffs == other.coeffs
    }
}

impl<'a> Mul for &AlgElement<'a> {
    type Output = AlgElement<'a>;
    fn mul(self, rhs: &AlgElement<'a>) -> AlgElement<'a> {
        assert!(std::ptr::eq(self.parent, rhs.parent), "elements of different algebras");
        self.parent.element(self.parent.mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<'a> Add for &AlgElement<'a> {
    type Output = AlgElement<'a>;
    fn add(self, rhs: &AlgElement<'a>) -> AlgElement<'a> {
        self.parent.element(self.coeffs.add(&rhs.coeffs))
    }
}

impl<'a> Sub for &AlgElement<'a> {
    type Output = AlgElement<'a>;
    fn sub(self, rhs: &AlgElement<'a>) -> AlgElement<'a> {
        self.parent.element(self.coeffs.sub(&rhs.coeffs))
    }
}

/// Multiplication in a tensor product of algebras, without materializing
/// its structure table.
#[derive(Clone, Copy)]
pub struct TensorView<'a> {
    pub factors: &'a [&'a FiniteAlgebra],
}

impl<'a> TensorView<'a> {
    pub fn new(factors: &'a [&'a FiniteAlgebra]) -> Self {
        TensorView { factors }
    }

    pub fn shape(&self) -> Shape {
        Shape(self.factors.iter().map(|a| a.dim()).collect())
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let shape = self.shape();
        let xd: Vec<(Vec<usize>, &Scalar)> = x.iter().map(|(i, c)| (shape.decode(i), c)).collect();
        let yd: Vec<(Vec<usize>, &Scalar)> = y.iter().map(|(i, c)| (shape.decode(i), c)).collect();
        let mut acc = Accum::new();
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        let mut next: Vec<(usize, Scalar)> = Vec::new();
        for (xi, a) in &xd {
            for (yi, b) in &yd {
                terms.clear();
                terms.push((0, *a * *b));
                for (k, alg) in self.factors.iter().enumerate() {
                    let p = alg.mul_basis(xi[k], yi[k]);
                    if p.is_zero() {
                        terms.clear();
                        break;
                    }
                    next.clear();
                    let d = alg.dim();
                    for (idx, c) in &terms {
                        for (r, v) in p.iter() {
                            next.push((idx * d + r, c * v));
                        }
                    }
                    std::mem::swap(&mut terms, &mut next);
                }
                for (idx, c) in terms.drain(..) {
                    acc.add(idx, c);
                }
            }
        }
        acc.finish()
    }

    pub fn one(&self) -> SparseVec {
        let mut v = SparseVec::unit(0);
        for a in self.factors {
            v = crate::linalg::tensor(&v, &a.one(), a.dim());
        }
        v
    }

    pub fn mul3(&self, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
        self.mul(&self.mul(x, y), z)
    }
}

/// The pair `(ρ_l, ρ_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub left: LinearMap,
    pub right: LinearMap,
}

impl Multiplier {
    /// Product in M(A): `(ρ, σ) -> (ρ_l σ_l, σ_r ρ_r)`.
    pub fn compose(&self, other: &Multiplier) -> Multiplier {
        Multiplier {
            left: self.left.compose(&other.left),
            right: other.right.compose(&self.right),
        }
    }

    pub fn check(&self, alg: &FiniteAlgebra) -> Outcome {
        let n = alg.dim();
        first_failure(n * n, |k| {
            let (a, b) = (k / n, k % n);
            let (ea, eb) = (SparseVec::unit(a), SparseVec::unit(b));
            let ab = alg.mul_basis(a, b);
            let show = || format!("(a, b) = ({}, {})", alg.label(a), alg.label(b));
            ensure(self.left.apply(ab) == alg.mul(self.left.column(a), &eb), || {
                format!("ρ_l(ab) ≠ ρ_l(a)b at {}", show())
            })?;
            ensure(self.right.apply(ab) == alg.mul(&ea, self.right.column(b)), || {
                format!("ρ_r(ab) ≠ aρ_r(b) at {}", show())
            })?;
            ensure(
                alg.mul(self.right.column(a), &eb) == alg.mul(&ea, self.left.column(b)),
                || format!("ρ_r(a)b ≠ aρ_l(b) at {}", show()),
            )
        })
    }

    /// Recovers `a` when this multiplier is `embed(a)` in a unital algebra.
    pub fn to_element(&self, alg: &FiniteAlgebra) -> Option<SparseVec> {
        let a = self.left.apply(alg.unit()?);
        (embed_as_multiplier(alg, &a) == *self).then_some(a)
    }
}

pub fn embed_as_multiplier(alg: &FiniteAlgebra, a: &SparseVec) -> Multiplier {
    Multiplier {
        left: alg.left_mult(a),
        right: alg.right_mult(a),
    }
}

/// In a unital algebra every multiplier is `embed(a)` for a unique `a`.
pub fn multiplier_algebra_iso_check(alg: &FiniteAlgebra) -> Result<Report, AlgebraError> {
    if alg.unit().is_none() {
        return Err(AlgebraError::Unsupported(
            "multiplier algebra check needs a unital algebra".into(),
        ));
    }
    let n = alg.dim();
    let nn = n * n;
    // variables: L[r][c] at c*n + r, R[r][c] at nn + c*n + r
    // equation blocks of width n: three families over (a, b)
    let block = |fam: usize, a: usize, b: usize| (fam * nn + a * n + b) * n;
    let constraints = LinearMap::from_fn_par(3 * nn * n, 2 * nn, |var| {
        let (right, c, r) = (var >= nn, (var % nn) / n, var % n);
        let er = SparseVec::unit(r);
        let mut acc = Accum::new();
        let mut put = |base: usize, sign: &Scalar, v: &SparseVec| {
            for (k, x) in v.iter() {
                acc.add(base + k, sign * x);
            }
        };
        let (plus, minus) = (Scalar::ONE, -Scalar::ONE);
        for a in 0..n {
            for b in 0..n {
                let m = alg.mul_basis(a, b).coeff(c);
                if !m.is_zero() {
                    // ρ(e_a e_b) contributes m e_r
                    put(block(if right { 1 } else { 0 }, a, b), &m, &er);
                }
            }
        }
        for x in 0..n {
            if right {
                // ρ_r(e_a e_b) - e_a ρ_r(e_b), with b = c
                put(block(1, x, c), &minus, &alg.mul(&SparseVec::unit(x), &er));
                // ρ_r(e_a) e_b - e_a ρ_l(e_b), with a = c
                put(block(2, c, x), &plus, &alg.mul(&er, &SparseVec::unit(x)));
            } else {
                // ρ_l(e_a e_b) - ρ_l(e_a) e_b, with a = c
                put(block(0, c, x), &minus, &alg.mul(&er, &SparseVec::unit(x)));
                put(block(2, x, c), &minus, &alg.mul(&SparseVec::unit(x), &er));
            }
        }
        acc.finish()
    });
    let kernel = constraints.kernel();
    let as_var = |m: &Multiplier| {
        let mut acc = Accum::new();
        for c in 0..n {
            for (r, x) in m.left.column(c).iter() {
                acc.add_ref(c * n + r, x);
            }
            for (r, x) in m.right.column(c).iter() {
                acc.add_ref(nn + c * n + r, x);
            }
        }
        acc.finish()
    };
    let embeds: Vec<SparseVec> = (0..n)
        .map(|i| as_var(&embed_as_multiplier(alg, &SparseVec::unit(i))))
        .collect();
    let mut rep = Report::new();
    rep.record(
        "multiplier.embedding_satisfies_laws",
        "embed(a) is a multiplier",
        first_failure(n, |i| {
            ensure(constraints.apply(&embeds[i]).is_zero(), || {
                format!("a = {}", alg.label(i))
            })
        }),
    );
    let span = Subspace::span(2 * nn, embeds.iter());
    rep.record(
        "multiplier.embedding_injective",
        "a -> (λ_a, ρ_a) is injective",
        ensure(span.dim() == n, || format!("rank {} < {n}", span.dim())),
    );
    rep.record(
        "multiplier.unital_collapse",
        "M(A) = A for unital A",
        ensure(kernel.len() == n && kernel.iter().all(|k| span.contains(k)), || {
            format!("multiplier space has dimension {}, algebra {n}", kernel.len())
        }),
    );
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("shape mismatch: T is {t_rows}x{t_cols}, P is {p_rows}x{p_cols}")]
pub struct ShapeMismatch {
    pub t_rows: usize,
    pub t_cols: usize,
    pub p_rows: usize,
    pub p_cols: usize,
}

/// Checks `TPT = T` and `PTP = P`.
pub fn generalized_inverse_check(t: &LinearMap, p: &LinearMap) -> Result<Report, ShapeMismatch> {
    if t.rows != p.cols || t.cols != p.rows {
        return Err(ShapeMismatch {
            t_rows: t.rows,
            t_cols: t.cols,
            p_rows: p.rows,
            p_cols: p.cols,
        });
    }
    let mut r = Report::new();
    let tpt = t.compose(&p.compose(t));
    r.record(
        "generalized_inverse.tpt",
        "TPT = T",
        match tpt.first_difference(t) {
            None => Ok(()),
            Some(j) => Err(format!("column {j}")),
        },
    );
    let ptp = p.compose(&t.compose(p));
    r.record(
        "generalized_inverse.ptp",
        "PTP = P",
        match ptp.first_difference(p) {
            None => Ok(()),
            Some(j) => Err(format!("column {j}")),
        },
    );
    Ok(r)
}

pub fn range_basis(t: &LinearMap) -> Vec<SparseVec> {
    t.range().basis()
}

pub fn subspace_equal(ambient: usize, u: &[SparseVec], v: &[SparseVec]) -> Result<bool, AlgebraError> {
    if u.iter().chain(v).any(|x| x.max_index().is_some_and(|m| m >= ambient)) {
        return Err(AlgebraError::Shape("vector outside ambient space".into()));
    }
    Ok(Subspace::span(ambient, u).equals(&Subspace::span(ambient, v)))
}

/// Structure constants keyed by basis pair, for inspection in tests.
pub fn structure_map(alg: &FiniteAlgebra) -> BTreeMap<(usize, usize), SparseVec> {
    let n = alg.dim();
    let mut m = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let v = alg.mul_basis(i, j);
            if !v.is_zero() {
                m.insert((i, j), v.clone());
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    /// Q[Z/2] with basis λ_e, λ_s.
    fn z2_group_algebra() -> FiniteAlgebra {
        FiniteAlgebra::from_fn(
            vec!["λ_e".into(), "λ_s".into()],
            |i, j| SparseVec::unit((i + j) % 2),
            Some(SparseVec::unit(0)),
            Some(vec![SparseVec::unit(0), SparseVec::unit(1)]),
        )
        .unwrap()
    }

    fn diag2() -> FiniteAlgebra {
        FiniteAlgebra::from_fn(
            vec!["e1".into(), "e2".into()],
            |i, j| if i == j { SparseVec::unit(i) } else { SparseVec::zero() },
            Some(SparseVec::from_dense(&[q(1), q(1)])),
            None,
        )
        .unwrap()
    }

    #[test]
    fn tensor_product() {
        let a = z2_group_algebra();
        let t = FiniteAlgebra::tensor(&a, &a);
        assert_eq!(t.dim(), 4);
        assert_eq!(t.unit(), Some(&SparseVec::unit(0)));
        assert!(t.check_associative().is_ok());
        let view_factors = [&a, &a];
        let view = TensorView::new(&view_factors);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    view.mul(&SparseVec::unit(i), &SparseVec::unit(j)),
                    *t.mul_basis(i, j)
                );
            }
        }
        assert_eq!(view.one(), t.one());
    }

    #[test]
    fn multipliers() {
        let a = z2_group_algebra();
        let s = embed_as_multiplier(&a, &SparseVec::unit(1));
        assert_eq!(s.compose(&s), embed_as_multiplier(&a, &SparseVec::unit(0)));
        let one = embed_as_multiplier(&a, &a.one());
        assert_eq!(one.left, LinearMap::identity(2));
        assert_eq!(one.right, LinearMap::identity(2));
        let zero = embed_as_multiplier(&a, &SparseVec::zero());
        assert!(zero.left.is_zero() && zero.right.is_zero());
        assert!(s.check(&a).is_ok());
        assert_eq!(s.to_element(&a), Some(SparseVec::unit(1)));
        for alg in [a, diag2()] {
            let rep = multiplier_algebra_iso_check(&alg).unwrap();
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn generalized_inverse() {
        let id = LinearMap::identity(2);
        assert!(generalized_inverse_check(&id, &id).unwrap().all_pass());
        let z = LinearMap::zero(2, 2);
        assert!(generalized_inverse_check(&z, &z).unwrap().all_pass());
        let proj = LinearMap::from_columns(2, vec![SparseVec::unit(0), SparseVec::zero()]);
        let rep = generalized_inverse_check(&proj, &proj.scale(&q(2))).unwrap();
        assert_eq!(rep.status_of("generalized_inverse.ptp"), Some(crate::report::Status::Fail));
        assert!(generalized_inverse_check(&LinearMap::zero(2, 3), &z).is_err());
    }

    #[test]
    fn subspaces() {
        let e1 = SparseVec::unit(0);
        let e2 = SparseVec::unit(1);
        assert!(subspace_equal(2, &[e1.clone()], &[e1.scale(&q(2))]).unwrap());
        assert!(!subspace_equal(2, &[e1.clone()], &[e2]).unwrap());
        assert!(subspace_equal(2, &[e1.clone()], &[SparseVec::unit(5)]).is_err());
        assert_eq!(range_basis(&LinearMap::identity(3)).len(), 3);
        assert!(range_basis(&LinearMap::zero(3, 3)).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let a = z2_group_algebra();
        let back = FiniteAlgebra::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert!(FiniteAlgebra::from_json(&json!({"basis": ["x"], "structure": [[0, 3, {}]]})).is_err());
    }

    #[test]
    fn degenerate_algebra_detected() {
        let zero = FiniteAlgebra::from_fn(vec!["x".into()], |_, _| SparseVec::zero(), None, None).unwrap();
        assert!(zero.check_nondegenerate().is_err());
        assert!(zero.check_idempotent().is_err());
    }
}
