//! Sparse exact linear algebra over Q(i).
//!
//! Vectors are sorted `(index, coefficient)` lists. Maps are stored by
//! columns: column `j` is the image of the `j`-th basis vector.
//! Tensor indices are row-major: `(i, j)` in `U (x) V` is `i * dim V + j`.

use std::collections::HashMap;
use std::fmt;

use crate::exactnum::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, c)))
            .finish()
    }
}

/// Hash-based accumulator for building a `SparseVec` term by term.
#[derive(Default, Clone)]
pub struct Accum {
    map: HashMap<usize, Scalar>,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(v) => *v += c,
            None => {
                self.map.insert(i, c);
            }
        }
    }

    pub fn add_ref(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(v) => *v += c,
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (i, x) in v.iter() {
                self.add_ref(i, x);
            }
        } else {
            for (i, x) in v.iter() {
                self.add(i, c * x);
            }
        }
    }

    pub fn add_vec(&mut self, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.add_ref(i, x);
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut entries: Vec<(usize, Scalar)> =
            self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_unstable_by_key(|(i, _)| *i);
        SparseVec { entries }
    }
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::ONE)],
        }
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparseVec {
                entries: vec![(i, c)],
            }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(terms: I) -> Self {
        let mut acc = Accum::new();
        for (i, c) in terms {
            acc.add(i, c);
        }
        acc.finish()
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; n];
        for (i, c) in self.iter() {
            v[i] = c.clone();
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(k, _)| *k)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.get(i).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn first(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    pub fn conj(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.conj())).collect(),
        }
    }

    /// `self + c * other` via a sorted merge.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.nnz() + other.nnz());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b >= y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a >= x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, c * &y[b].1));
                b += 1;
            } else {
                let s = &x[a].1 + &(c * &y[b].1);
                if !s.is_zero() {
                    out.push((x[a].0, s));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Scalar::ONE, other)
    }

    /// Sum of `self[i] * w[i]`.
    pub fn dot_dense(&self, w: &[Scalar]) -> Scalar {
        let mut s = Scalar::ZERO;
        for (i, c) in self.iter() {
            if !w[i].is_zero() {
                s += c * &w[i];
            }
        }
        s
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut s = Scalar::ZERO;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                s += &self.entries[a].1 * &other.entries[b].1;
                a += 1;
                b += 1;
            }
        }
        s
    }

    /// Reindexes every term; colliding indices are summed.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_terms(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

/// Tensor product of two vectors; `ny` is the dimension of the right factor.
pub fn tensor(x: &SparseVec, y: &SparseVec, ny: usize) -> SparseVec {
    let mut entries = Vec::with_capacity(x.nnz() * y.nnz());
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            entries.push((i * ny + j, a * b));
        }
    }
    SparseVec { entries }
}

/// Mixed-radix shape of a tensor power or product of spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape(pub Vec<usize>);

impl Shape {
    pub fn size(&self) -> usize {
        self.0.iter().product()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            out[k] = idx % self.0[k];
            idx /= self.0[k];
        }
        out
    }

    pub fn encode(&self, ix: &[usize]) -> usize {
        ix.iter().zip(&self.0).fold(0, |acc, (i, d)| acc * d + i)
    }

    /// Permutes legs: leg `k` of the output is leg `perm[k]` of the input.
    pub fn permute(&self, x: &SparseVec, perm: &[usize]) -> SparseVec {
        let out = Shape(perm.iter().map(|&p| self.0[p]).collect());
        x.reindex(|i| {
            let d = self.decode(i);
            let e: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            out.encode(&e)
        })
    }

    /// Applies `f` to leg `leg`, identity elsewhere.
    pub fn apply_leg(&self, x: &SparseVec, leg: usize, f: &LinearMap) -> SparseVec {
        assert_eq!(f.cols, self.0[leg]);
        let mut out_dims = self.0.clone();
        out_dims[leg] = f.rows;
        let out = Shape(out_dims);
        let mut acc = Accum::new();
        for (i, c) in x.iter() {
            let mut d = self.decode(i);
            for (r, v) in f.column(d[leg]).iter() {
                d[leg] = r;
                acc.add(out.encode(&d), c * v);
            }
        }
        acc.finish()
    }
}

/// Swap of a two-fold tensor `U (x) V -> V (x) U`.
pub fn flip(x: &SparseVec, nu: usize, nv: usize) -> SparseVec {
    x.reindex(|i| (i % nv) * nu + i / nv)
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<SparseVec>,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({}x{}) ", self.rows, self.cols)?;
        f.debug_list().entries(self.columns.iter()).finish()
    }
}

impl LinearMap {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.max_index().map_or(true, |m| m < rows)));
        LinearMap {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize) -> SparseVec) -> Self {
        Self::from_columns(rows, (0..cols).map(f).collect())
    }

    /// Parallel variant of `from_fn`.
    pub fn from_fn_par(
        rows: usize,
        cols: usize,
        f: impl Fn(usize) -> SparseVec + Sync + Send,
    ) -> Self {
        use rayon::prelude::*;
        Self::from_columns(rows, (0..cols).into_par_iter().map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, SparseVec::unit)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_| SparseVec::zero())
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].coeff(i)
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (j, c) in x.iter() {
            acc.add_scaled(c, &self.columns[j]);
        }
        acc.finish()
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(self.cols, inner.rows, "dimension mismatch in compose");
        LinearMap::from_columns(
            self.rows,
            inner.columns.iter().map(|c| self.apply(c)).collect(),
        )
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinearMap::from_columns(
            self.rows,
            self.columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinearMap::from_columns(
            self.rows,
            self.columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap::from_columns(self.rows, self.columns.iter().map(|v| v.scale(c)).collect())
    }

    pub fn transpose(&self) -> LinearMap {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        LinearMap::from_columns(
            self.cols,
            rows.into_iter()
                .map(|entries| SparseVec { entries })
                .collect(),
        )
    }

    /// `self (x) other` on row-major tensor indices.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        LinearMap::from_fn(self.rows * other.rows, self.cols * other.cols, |j| {
            tensor(
                &self.columns[j / other.cols],
                &other.columns[j % other.cols],
                other.rows,
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    /// First column where the two maps differ.
    pub fn first_difference(&self, other: &LinearMap) -> Option<usize> {
        (0..self.cols.min(other.cols)).find(|&j| self.columns[j] != other.columns[j])
    }

    pub fn range(&self) -> Subspace {
        Subspace::span(self.rows, self.columns.iter())
    }

    pub fn rank(&self) -> usize {
        self.range().dim()
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::tracked(self.rows);
        let mut out = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if let Some(k) = ech.insert_tracked(c.clone(), SparseVec::unit(j)) {
                out.push(k);
            }
        }
        out
    }

    /// Some `x` with `self x = y`, if one exists.
    pub fn solve(&self, y: &SparseVec) -> Option<SparseVec> {
        let mut ech = Echelon::tracked(self.rows);
        for (j, c) in self.columns.iter().enumerate() {
            ech.insert_tracked(c.clone(), SparseVec::unit(j));
        }
        ech.express(y)
    }

    /// Two-sided inverse of a square map.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.rows != self.cols {
            return None;
        }
        let mut ech = Echelon::tracked(self.rows);
        for (j, c) in self.columns.iter().enumerate() {
            if ech.insert_tracked(c.clone(), SparseVec::unit(j)).is_some() {
                return None;
            }
        }
        let cols: Option<Vec<SparseVec>> =
            (0..self.rows).map(|i| ech.express(&SparseVec::unit(i))).collect();
        cols.map(|c| LinearMap::from_columns(self.cols, c))
    }

    pub fn map_columns(&self, rows: usize, f: impl Fn(&SparseVec) -> SparseVec) -> LinearMap {
        LinearMap::from_columns(rows, self.columns.iter().map(f).collect())
    }
}

/// Incremental reduced row echelon basis with lowest-index pivots.
///
/// Every stored vector has leading coefficient 1 at its pivot and zeros at
/// all other pivots, so reduction needs a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: HashMap::new(),
            combos: None,
        }
    }

    /// Also records how each basis vector is built from the inserted ones.
    pub fn tracked(dim: usize) -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Self::new(dim)
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors sorted by pivot.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&k| self.pivots[k]);
        idx.into_iter().map(|k| self.rows[k].clone()).collect()
    }

    /// Coefficients `c_k` on each pivot row, and the residual.
    fn decompose(&self, v: &SparseVec) -> (Vec<(usize, Scalar)>, SparseVec) {
        let coeffs: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(i, c)| self.pivot_row.get(&i).map(|&r| (r, c.clone())))
            .collect();
        if coeffs.is_empty() {
            return (coeffs, v.clone());
        }
        let mut acc = Accum::new();
        acc.add_vec(v);
        for (r, c) in &coeffs {
            acc.add_scaled(&-c, &self.rows[*r]);
        }
        (coeffs, acc.finish())
    }

    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.decompose(v).1
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residual(v).is_zero()
    }

    /// Inserts `v`; returns whether the span grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (_, r) = self.decompose(&v);
        if r.is_zero() {
            return false;
        }
        self.push_row(r, None);
        true
    }

    /// Inserts `v` built as `combo` of the caller's generators. On linear
    /// dependence returns the kernel combination instead.
    pub fn insert_tracked(&mut self, v: SparseVec, combo: SparseVec) -> Option<SparseVec> {
        let (coeffs, r) = self.decompose(&v);
        let combos = self.combos.as_ref().expect("tracked echelon");
        let mut acc = Accum::new();
        acc.add_vec(&combo);
        for (k, c) in &coeffs {
            acc.add_scaled(&-c, &combos[*k]);
        }
        let residual_combo = acc.finish();
        if r.is_zero() {
            return Some(residual_combo);
        }
        self.push_row(r, Some(residual_combo));
        None
    }

    fn push_row(&mut self, r: SparseVec, combo: Option<SparseVec>) {
        let (p, lead) = r.first().map(|(p, c)| (p, c.clone())).unwrap();
        let inv = lead.inv().expect("nonzero pivot");
        let row = r.scale(&inv);
        let combo = combo.map(|c| c.scale(&inv));
        // clear the new pivot from existing rows
        for k in 0..self.rows.len() {
            let c = self.rows[k].coeff(p);
            if !c.is_zero() {
                self.rows[k] = self.rows[k].axpy(&-&c, &row);
                if let (Some(cs), Some(nc)) = (self.combos.as_mut(), combo.as_ref()) {
                    cs[k] = cs[k].axpy(&-&c, nc);
                }
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        if let (Some(cs), Some(nc)) = (self.combos.as_mut(), combo) {
            cs.push(nc);
        }
    }

    /// Writes `y` as a combination of the tracked generators.
    pub fn express(&self, y: &SparseVec) -> Option<SparseVec> {
        let (coeffs, r) = self.decompose(y);
        if !r.is_zero() {
            return None;
        }
        let combos = self.combos.as_ref().expect("tracked echelon");
        let mut acc = Accum::new();
        for (k, c) in coeffs {
            acc.add_scaled(&c, &combos[k]);
        }
        Some(acc.finish())
    }

    /// Coordinates of `y` in the RREF basis returned by `basis()`.
    pub fn coordinates(&self, y: &SparseVec) -> Option<SparseVec> {
        let (coeffs, r) = self.decompose(y);
        if !r.is_zero() {
            return None;
        }
        let order = self.pivot_order();
        Some(SparseVec::from_terms(
            coeffs.into_iter().map(|(k, c)| (order[k], c)),
        ))
    }

    /// Position of each stored row in pivot-sorted order.
    fn pivot_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&k| self.pivots[k]);
        let mut pos = vec![0; idx.len()];
        for (p, k) in idx.into_iter().enumerate() {
            pos[k] = p;
        }
        pos
    }
}

/// A subspace given by its RREF basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, gens: I) -> Self {
        let mut ech = Echelon::new(ambient);
        for g in gens {
            if ech.dim() == ambient {
                break;
            }
            ech.insert(g.clone());
        }
        Subspace { ech }
    }

    pub fn span_owned<I: IntoIterator<Item = SparseVec>>(ambient: usize, gens: I) -> Self {
        let mut ech = Echelon::new(ambient);
        for g in gens {
            if ech.dim() == ambient {
                break;
            }
            ech.insert(g);
        }
        Subspace { ech }
    }

    pub fn whole(n: usize) -> Self {
        Self::span_owned(n, (0..n).map(SparseVec::unit))
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn ambient(&self) -> usize {
        self.ech.ambient_dim()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.ech.basis()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.ech.pivots().to_vec();
        p.sort_unstable();
        p
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.contains(v)
    }

    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.ech.residual(v)
    }

    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.ech.coordinates(v)
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// RREF bases are canonical, so equality is basis equality.
    pub fn equals(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.basis() == other.basis()
    }

    /// The map `v -> residual(v)` whose kernel is exactly this subspace.
    pub fn residual_map(&self) -> LinearMap {
        let n = self.ambient();
        LinearMap::from_fn(n, n, |j| self.residual(&SparseVec::unit(j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qr};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span_owned(3, vec![v(&[1, 2, 3]), v(&[2, 4, 7])]);
        let b = Subspace::span_owned(3, vec![v(&[0, 0, 1]), v(&[1, 2, 0])]);
        assert!(a.equals(&b));
        assert_eq!(a.basis(), vec![v(&[1, 2, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.pivots(), vec![0, 2]);
    }

    #[test]
    fn kernel_and_solve() {
        // columns (1,0), (0,1), (1,1)
        let m = LinearMap::from_columns(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
        let y = v(&[3, 5]);
        let x = m.solve(&y).unwrap();
        assert_eq!(m.apply(&x), y);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let m = LinearMap::from_columns(
            2,
            vec![
                SparseVec::from_dense(&[q(2), q(1)]),
                SparseVec::from_dense(&[q(1), qr(1, 2)]),
            ],
        );
        assert!(m.inverse().is_none());
        let m = LinearMap::from_columns(2, vec![v(&[2, 1]), v(&[1, 1])]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), LinearMap::identity(2));
        assert_eq!(inv.compose(&m), LinearMap::identity(2));
    }

    #[test]
    fn leg_operations() {
        let s = Shape(vec![2, 3]);
        let x = SparseVec::unit(s.encode(&[1, 2]));
        let f = flip(&x, 2, 3);
        assert_eq!(f, SparseVec::unit(Shape(vec![3, 2]).encode(&[2, 1])));
        assert_eq!(s.permute(&x, &[1, 0]), f);
        let m = LinearMap::from_columns(2, vec![v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]);
        let y = s.apply_leg(&x, 1, &m);
        assert_eq!(y, v(&[0, 0, 1, 1]));
    }

    fn arb_matrix() -> impl Strategy<Value = LinearMap> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                LinearMap::from_fn(r, c, |j| {
                    SparseVec::from_dense(&xs[j * r..(j + 1) * r].iter().map(|&x| q(x)).collect::<Vec<_>>())
                })
            })
        })
    }

    proptest! {
        #[test]
        fn elimination_reproduces_columns(m in arb_matrix()) {
            let range = m.range();
            for c in m.columns() {
                prop_assert!(range.contains(c));
                let x = m.solve(c).unwrap();
                prop_assert_eq!(&m.apply(&x), c);
            }
            let k = m.kernel();
            prop_assert_eq!(k.len() + range.dim(), m.cols);
            for z in &k {
                prop_assert!(m.apply(z).is_zero());
            }
            prop_assert_eq!(m.transpose().rank(), range.dim());
        }

        #[test]
        fn kron_matches_tensor(a in arb_matrix(), b in arb_matrix()) {
            let k = a.kron(&b);
            for i in 0..a.cols {
                for j in 0..b.cols {
                    let x = tensor(&SparseVec::unit(i), &SparseVec::unit(j), b.cols);
                    prop_assert_eq!(k.apply(&x), tensor(a.column(i), b.column(j), b.rows));
                }
            }
        }
    }
}
