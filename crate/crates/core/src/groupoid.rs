//! Finite groupoids given by explicit tables.
//!
//! `compose(p, q)` is "p after q" and is defined iff `src(p) == tgt(q)`.

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{ensure, first_failure, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("invalid groupoid: {0}")]
    Invalid(String),
    #[error("malformed groupoid spec: {0}")]
    Spec(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    units: Vec<String>,
    arrows: Vec<Arrow>,
    compose: Vec<Option<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    /// Builds from raw tables without checking the groupoid laws.
    pub fn from_tables(
        units: Vec<String>,
        arrows: Vec<Arrow>,
        compose: &[(usize, usize, usize)],
        inverse: Vec<usize>,
    ) -> Result<Self, GroupoidError> {
        let n = arrows.len();
        if inverse.len() != n {
            return Err(GroupoidError::Spec("inverse must be total".into()));
        }
        for a in &arrows {
            if a.src >= units.len() || a.tgt >= units.len() {
                return Err(GroupoidError::Spec(format!("arrow {} has unknown unit", a.id)));
            }
        }
        let mut table = vec![None; n * n];
        for &(p, q, r) in compose {
            if p >= n || q >= n || r >= n {
                return Err(GroupoidError::Spec("compose entry out of range".into()));
            }
            if table[p * n + q].replace(r).is_some() {
                return Err(GroupoidError::Spec(format!(
                    "compose({}, {}) listed twice",
                    arrows[p].id, arrows[q].id
                )));
            }
        }
        Ok(FiniteGroupoid {
            units,
            arrows,
            compose: table,
            inverse,
        })
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn num_units(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_id(&self, p: usize) -> &str {
        &self.arrows[p].id
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn src(&self, p: usize) -> usize {
        self.arrows[p].src
    }

    pub fn tgt(&self, p: usize) -> usize {
        self.arrows[p].tgt
    }

    pub fn compose(&self, p: usize, q: usize) -> Option<usize> {
        self.compose[p * self.arrows.len() + q]
    }

    pub fn inverse(&self, p: usize) -> usize {
        self.inverse[p]
    }

    /// Identity arrow of unit `u`: the arrow whose id is the unit id.
    pub fn identity(&self, u: usize) -> Option<usize> {
        let id = &self.units[u];
        self.arrows
            .iter()
            .position(|a| &a.id == id && a.src == u && a.tgt == u)
    }

    pub fn identity_arrows(&self) -> Vec<usize> {
        (0..self.units.len()).filter_map(|u| self.identity(u)).collect()
    }

    pub fn is_identity(&self, p: usize) -> bool {
        self.identity(self.arrows[p].src) == Some(p)
    }

    pub fn is_loop(&self, p: usize) -> bool {
        self.arrows[p].src == self.arrows[p].tgt
    }

    /// `p^{-1} r p` when both compositions are defined.
    pub fn conjugate(&self, p: usize, r: usize) -> Option<usize> {
        let rp = self.compose(r, p)?;
        self.compose(self.inverse(p), rp)
    }

    /// All `(p, q)` with `pq` defined.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.arrows.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if self.compose(p, q).is_some() {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Report {
        let n = self.arrows.len();
        let id = |p: usize| self.arrows[p].id.clone();
        let mut r = Report::new();

        r.record(
            "groupoid.identity_arrows",
            "every unit has an identity arrow",
            match (0..self.units.len()).find(|&u| self.identity(u).is_none()) {
                Some(u) => Err(format!("unit {} has no identity arrow", self.units[u])),
                None => Ok(()),
            },
        );

        r.record(
            "groupoid.compose_domain",
            "pq defined iff src(p) = tgt(q), with src(pq) = src(q), tgt(pq) = tgt(p)",
            first_failure(n * n, |k| {
                let (p, q) = (k / n, k % n);
                let ok = match self.compose(p, q) {
                    None => self.src(p) != self.tgt(q),
                    Some(pq) => {
                        self.src(p) == self.tgt(q)
                            && self.src(pq) == self.src(q)
                            && self.tgt(pq) == self.tgt(p)
                    }
                };
                ensure(ok, || match self.compose(p, q) {
                    Some(pq) => format!("(p, q, pq) = ({}, {}, {})", id(p), id(q), id(pq)),
                    None => format!("(p, q) = ({}, {}), pq undefined", id(p), id(q)),
                })
            }),
        );

        r.record(
            "groupoid.associativity",
            "(pq)r = p(qr) wherever both sides are defined",
            first_failure(n * n * n, |k| {
                let (p, q, s) = (k / (n * n), (k / n) % n, k % n);
                let left = self.compose(p, q).and_then(|pq| self.compose(pq, s));
                let right = self.compose(q, s).and_then(|qs| self.compose(p, qs));
                let ok = match (left, right) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                };
                ensure(ok, || format!("(p, q, r) = ({}, {}, {})", id(p), id(q), id(s)))
            }),
        );

        r.record(
            "groupoid.unit_laws",
            "id_tgt(p) p = p = p id_src(p)",
            first_failure(n, |p| {
                let t = self.identity(self.tgt(p));
                let s = self.identity(self.src(p));
                let ok = t.and_then(|t| self.compose(t, p)) == Some(p)
                    && s.and_then(|s| self.compose(p, s)) == Some(p);
                ensure(ok, || format!("p = {}", id(p)))
            }),
        );

        r.record(
            "groupoid.inverse_laws",
            "p p^-1 = id_tgt(p), p^-1 p = id_src(p)",
            first_failure(n, |p| {
                let pi = self.inverse(p);
                let ok = pi < n
                    && self.compose(p, pi) == self.identity(self.tgt(p))
                    && self.compose(pi, p) == self.identity(self.src(p))
                    && self.identity(self.tgt(p)).is_some();
                ensure(ok, || format!("p = {}", id(p)))
            }),
        );

        r.record(
            "groupoid.inverse_antihomomorphism",
            "(pq)^-1 = q^-1 p^-1",
            first_failure(n * n, |k| {
                let (p, q) = (k / n, k % n);
                let ok = match self.compose(p, q) {
                    Some(pq) => {
                        Some(self.inverse(pq)) == self.compose(self.inverse(q), self.inverse(p))
                    }
                    None => true,
                };
                ensure(ok, || format!("(p, q) = ({}, {})", id(p), id(q)))
            }),
        );
        r.note("units", self.units.len());
        r.note("arrows", n);
        r.note("composable_pairs", self.composable_pairs().len());
        r
    }

    fn checked(self) -> Result<Self, GroupoidError> {
        let rep = self.validate();
        let failure = rep.failures().next().map(|c| {
            format!("{} fails at {}", c.id, c.witness.clone().unwrap_or_default())
        });
        match failure {
            None => Ok(self),
            Some(msg) => Err(GroupoidError::Invalid(msg)),
        }
    }

    pub fn trivial() -> Self {
        Self::from_group_table(&[vec![0]], Some(vec!["e".into()])).expect("trivial group")
    }

    /// One-unit groupoid from a multiplication table `table[a][b] = ab`.
    pub fn from_group_table(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupoidError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupoidError::Invalid("table must be square over 0..n".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupoidError::Invalid(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupoidError::Invalid("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or_else(|| GroupoidError::Invalid(format!("element {a} has no inverse")))?;
        }
        let labels = labels.unwrap_or_else(|| {
            (0..n)
                .map(|k| if k == e { "e".to_string() } else { k.to_string() })
                .collect()
        });
        if labels.len() != n {
            return Err(GroupoidError::Spec("label count mismatch".into()));
        }
        let arrows = labels
            .iter()
            .map(|l| Arrow {
                id: l.clone(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let mut compose = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                compose.push((a, b, c));
            }
        }
        Self::from_tables(vec![labels[e].clone()], arrows, &compose, inverse)?.checked()
    }

    /// Z/n with elements e, g, g^2, ...
    pub fn cyclic(n: usize) -> Result<Self, GroupoidError> {
        if n == 0 {
            return Err(GroupoidError::Invalid("cyclic order must be positive".into()));
        }
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_group_table(&table, Some(labels))
    }

    /// Symmetric group on `n` letters, `(pq)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupoidError> {
        if n == 0 {
            return Err(GroupoidError::Invalid("symmetric degree must be positive".into()));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index[&q.iter().map(|&x| p[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_group_table(&table, Some(labels))
    }

    /// Pair groupoid: arrows (i,j) from j to i.
    pub fn pair(n: usize) -> Result<Self, GroupoidError> {
        if n == 0 {
            return Err(GroupoidError::Invalid("pair groupoid needs n >= 1".into()));
        }
        let name = |i: usize, j: usize| format!("({},{})", i + 1, j + 1);
        let units = (0..n).map(|i| name(i, i)).collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                arrows.push(Arrow {
                    id: name(i, j),
                    src: j,
                    tgt: i,
                });
            }
        }
        let mut compose = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    compose.push((i * n + j, j * n + k, i * n + k));
                }
            }
        }
        let inverse = (0..n * n).map(|p| (p % n) * n + p / n).collect();
        Self::from_tables(units, arrows, &compose, inverse)?.checked()
    }

    /// Tagged union of the parts, with no cross composition.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<Self, GroupoidError> {
        let tag = |k: usize, id: &str| format!("{k}.{id}");
        let mut units = Vec::new();
        let mut arrows = Vec::new();
        let mut compose = Vec::new();
        let mut inverse = Vec::new();
        for (k, g) in parts.iter().enumerate() {
            let (u0, a0) = (units.len(), arrows.len());
            units.extend(g.units.iter().map(|u| tag(k, u)));
            for a in &g.arrows {
                arrows.push(Arrow {
                    id: tag(k, &a.id),
                    src: a.src + u0,
                    tgt: a.tgt + u0,
                });
            }
            for (p, q) in g.composable_pairs() {
                compose.push((p + a0, q + a0, g.compose(p, q).unwrap() + a0));
            }
            inverse.extend(g.inverse.iter().map(|&p| p + a0));
        }
        Self::from_tables(units, arrows, &compose, inverse)?.checked()
    }

    pub fn product(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<Self, GroupoidError> {
        let (nu, nh) = (h.units.len(), h.arrows.len());
        let mut units = Vec::new();
        for a in &g.units {
            for b in &h.units {
                units.push(format!("({a},{b})"));
            }
        }
        let mut arrows = Vec::new();
        for a in &g.arrows {
            for b in &h.arrows {
                arrows.push(Arrow {
                    id: format!("({},{})", a.id, b.id),
                    src: a.src * nu + b.src,
                    tgt: a.tgt * nu + b.tgt,
                });
            }
        }
        let mut compose = Vec::new();
        for (p, q) in g.composable_pairs() {
            for (r, s) in h.composable_pairs() {
                compose.push((
                    p * nh + r,
                    q * nh + s,
                    g.compose(p, q).unwrap() * nh + h.compose(r, s).unwrap(),
                ));
            }
        }
        let inverse = (0..g.arrows.len() * nh)
            .map(|k| g.inverse(k / nh) * nh + h.inverse(k % nh))
            .collect();
        Self::from_tables(units, arrows, &compose, inverse)?.checked()
    }

    /// Parses an explicit or constructor-form spec.
    ///
    /// The explicit form is returned unchecked so that `validate` can
    /// report on it; constructor forms are always valid.
    pub fn from_json(v: &Value) -> Result<Self, GroupoidError> {
        let spec = |m: &str| GroupoidError::Spec(m.to_string());
        if let Some(ty) = v.get("type") {
            let ty = ty.as_str().ok_or_else(|| spec("type must be a string"))?;
            let usize_field = |k: &str| {
                v.get(k)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| spec(&format!("missing integer field `{k}`")))
            };
            let list = |k: &str| -> Result<Vec<FiniteGroupoid>, GroupoidError> {
                v.get(k)
                    .and_then(Value::as_array)
                    .ok_or_else(|| spec(&format!("missing list `{k}`")))?
                    .iter()
                    .map(|p| {
                        let g = FiniteGroupoid::from_json(p)?;
                        g.checked()
                    })
                    .collect()
            };
            return match ty {
                "trivial" => Ok(Self::trivial()),
                "cyclic" => Self::cyclic(usize_field("n")?),
                "symmetric" => Self::symmetric(usize_field("n")?),
                "pair" => Self::pair(usize_field("points")?),
                "group" => {
                    let table: Vec<Vec<usize>> = serde_json::from_value(
                        v.get("table").cloned().ok_or_else(|| spec("missing table"))?,
                    )
                    .map_err(|e| spec(&e.to_string()))?;
                    let labels: Option<Vec<String>> = match v.get("labels") {
                        Some(l) => Some(
                            serde_json::from_value(l.clone()).map_err(|e| spec(&e.to_string()))?,
                        ),
                        None => None,
                    };
                    Self::from_group_table(&table, labels)
                }
                "disjoint_union" => Self::disjoint_union(&list("parts")?),
                "product" => {
                    let fs = list("factors")?;
                    let mut it = fs.into_iter();
                    let first = it.next().ok_or_else(|| spec("product needs factors"))?;
                    it.try_fold(first, |acc, g| Self::product(&acc, &g))
                }
                other => Err(spec(&format!("unknown constructor `{other}`"))),
            };
        }
        let strs = |k: &str| -> Result<Vec<Value>, GroupoidError> {
            v.get(k)
                .and_then(Value::as_array)
                .cloned()
                .ok_or_else(|| spec(&format!("missing list `{k}`")))
        };
        let units: Vec<String> = strs("units")?
            .iter()
            .map(|u| u.as_str().map(String::from).ok_or_else(|| spec("unit ids must be strings")))
            .collect::<Result<_, _>>()?;
        let unit_ix: HashMap<&str, usize> =
            units.iter().enumerate().map(|(k, u)| (u.as_str(), k)).collect();
        let mut arrows = Vec::new();
        for a in strs("arrows")? {
            let field = |k: &str| {
                a.get(k)
                    .and_then(Value::as_str)
                    .ok_or_else(|| spec(&format!("arrow missing `{k}`")))
            };
            let unit = |k: &str| -> Result<usize, GroupoidError> {
                let s = field(k)?;
                unit_ix
                    .get(s)
                    .copied()
                    .ok_or_else(|| spec(&format!("unknown unit `{s}`")))
            };
            arrows.push(Arrow {
                id: field("id")?.to_string(),
                src: unit("src")?,
                tgt: unit("tgt")?,
            });
        }
        let arrow_ix: HashMap<String, usize> =
            arrows.iter().enumerate().map(|(k, a)| (a.id.clone(), k)).collect();
        if arrow_ix.len() != arrows.len() {
            return Err(spec("duplicate arrow ids"));
        }
        let look = |x: &Value| -> Result<usize, GroupoidError> {
            let s = x.as_str().ok_or_else(|| spec("arrow references must be strings"))?;
            arrow_ix
                .get(s)
                .copied()
                .ok_or_else(|| spec(&format!("unknown arrow `{s}`")))
        };
        let mut compose = Vec::new();
        for t in strs("compose")? {
            match t.as_array().map(Vec::as_slice) {
                Some([p, q, r]) => compose.push((look(p)?, look(q)?, look(r)?)),
                _ => return Err(spec("compose entries are [p, q, pq]")),
            }
        }
        let mut inverse = vec![usize::MAX; arrows.len()];
        for t in strs("inverse")? {
            match t.as_array().map(Vec::as_slice) {
                Some([p, pi]) => inverse[look(p)?] = look(pi)?,
                _ => return Err(spec("inverse entries are [p, pinv]")),
            }
        }
        if inverse.contains(&usize::MAX) {
            return Err(spec("inverse must be total"));
        }
        Self::from_tables(units, arrows, &compose, inverse)
    }

    /// Explicit-form spec.
    pub fn to_json(&self) -> Value {
        let id = |p: usize| self.arrows[p].id.clone();
        json!({
            "units": self.units,
            "arrows": self.arrows.iter().map(|a| json!({
                "id": a.id, "src": self.units[a.src], "tgt": self.units[a.tgt]
            })).collect::<Vec<_>>(),
            "compose": self.composable_pairs().into_iter()
                .map(|(p, q)| json!([id(p), id(q), id(self.compose(p, q).unwrap())]))
                .collect::<Vec<_>>(),
            "inverse": (0..self.arrows.len()).map(|p| json!([id(p), id(self.inverse(p))]))
                .collect::<Vec<_>>(),
        })
    }

    /// Redirects `compose(p, q)` to `r`, for corruption tests.
    pub fn with_compose_entry(&self, p: usize, q: usize, r: Option<usize>) -> Self {
        let mut g = self.clone();
        let n = g.arrows.len();
        g.compose[p * n + q] = r;
        g
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts() {
        let g = FiniteGroupoid::pair(2).unwrap();
        assert_eq!(g.num_arrows(), 4);
        assert_eq!(g.composable_pairs().len(), 8);
        let g3 = FiniteGroupoid::pair(3).unwrap();
        assert_eq!(g3.composable_pairs().len(), 27);
        let g1 = FiniteGroupoid::pair(1).unwrap();
        assert_eq!((g1.num_units(), g1.num_arrows()), (1, 1));
        assert!(FiniteGroupoid::pair(0).is_err());
    }

    #[test]
    fn composable_count_formula() {
        for g in [
            FiniteGroupoid::pair(3).unwrap(),
            FiniteGroupoid::symmetric(3).unwrap(),
            FiniteGroupoid::disjoint_union(&[
                FiniteGroupoid::pair(2).unwrap(),
                FiniteGroupoid::cyclic(2).unwrap(),
            ])
            .unwrap(),
        ] {
            let expected: usize = (0..g.num_units())
                .map(|u| {
                    let s = (0..g.num_arrows()).filter(|&p| g.src(p) == u).count();
                    let t = (0..g.num_arrows()).filter(|&p| g.tgt(p) == u).count();
                    s * t
                })
                .sum();
            assert_eq!(g.composable_pairs().len(), expected);
        }
    }

    #[test]
    fn conjugation() {
        let z2 = FiniteGroupoid::cyclic(2).unwrap();
        let g = z2.arrow_index("g").unwrap();
        assert_eq!(z2.conjugate(g, g), Some(g));
        let p2 = FiniteGroupoid::pair(2).unwrap();
        let ix = |s: &str| p2.arrow_index(s).unwrap();
        assert_eq!(p2.conjugate(ix("(1,2)"), ix("(1,1)")), Some(ix("(2,2)")));
        assert_eq!(p2.conjugate(ix("(1,2)"), ix("(2,2)")), None);
    }

    #[test]
    fn unions_and_products() {
        let z2 = FiniteGroupoid::cyclic(2).unwrap();
        let t = FiniteGroupoid::trivial();
        let u = FiniteGroupoid::disjoint_union(&[z2.clone(), t.clone()]).unwrap();
        assert_eq!((u.num_units(), u.num_arrows()), (2, 3));
        let tt = FiniteGroupoid::disjoint_union(&[t.clone(), t]).unwrap();
        assert_eq!((tt.num_units(), tt.num_arrows()), (2, 2));
        let pz = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(2).unwrap(), z2.clone()])
            .unwrap();
        assert_eq!((pz.num_units(), pz.num_arrows()), (3, 6));
        let prod = FiniteGroupoid::product(&FiniteGroupoid::pair(2).unwrap(), &z2).unwrap();
        assert_eq!((prod.num_units(), prod.num_arrows()), (2, 8));
    }

    #[test]
    fn group_tables() {
        let s3 = FiniteGroupoid::symmetric(3).unwrap();
        assert_eq!((s3.num_units(), s3.num_arrows()), (1, 6));
        // a Latin square that is not associative
        let latin = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroupoid::from_group_table(&latin, None).is_err());
    }

    #[test]
    fn broken_compose_is_reported() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let ix = |s: &str| g.arrow_index(s).unwrap();
        let bad = g.with_compose_entry(ix("(1,2)"), ix("(2,1)"), Some(ix("(2,2)")));
        let rep = bad.validate();
        assert!(!rep.all_pass());
        assert!(rep.failures().all(|c| c.witness.is_some()));
        assert!(rep.failures().any(|c| c.id == "groupoid.unit_laws" || c.id == "groupoid.associativity"
            || c.id == "groupoid.compose_domain"));
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupoid::disjoint_union(&[
            FiniteGroupoid::pair(2).unwrap(),
            FiniteGroupoid::cyclic(3).unwrap(),
        ])
        .unwrap();
        let back = FiniteGroupoid::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(back.validate().all_pass());
        let c = FiniteGroupoid::from_json(&json!({"type": "pair", "points": 3})).unwrap();
        assert_eq!(c.num_arrows(), 9);
        assert!(FiniteGroupoid::from_json(&json!({"type": "nope"})).is_err());
    }
}
