//! The Drinfeld double `A ⊗_D B` of a pairing `⟨A, B⟩`.
//!
//! The product `(μ_A⊗μ_B)(id⊗T⊗id)` is tabulated on all of `A⊗B`. For
//! multi-unit groupoids `Range(R)` contains two-sided annihilators, so `D`
//! is realized as the corner `e·Range(R)·e` cut out by the idempotent
//! `e = (E^B▷(1⊗1))²`, which is the quotient of the carrier by them.

mod smash;
mod verify;
pub(crate) mod yd;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{map_from_json, map_to_json, vec_from_json, vec_to_json, AlgebraError, FiniteAlgebra};
use crate::exactnum::Scalar;
use crate::linalg::{tensor, Accum, LinearMap, SparseVec, Subspace};
use crate::pairing::{PairingError, WmhaPairing};
use crate::wmha::{WeakHopf, WmhaError};

pub use smash::smash_comparison;
pub use verify::{example_checks, verify_double, verify_double_integrals, verify_double_seeded};
pub use yd::{
    enumerate_double_modules, enumerate_yd_modules, yd_check, yd_correspondence, yd_to_double_module,
    YdCorrespondence, YdModule,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Wmha(#[from] WmhaError),
    #[error("product leaves the carrier: {0}")]
    Closure(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{0}")]
    Refused(String),
    #[error("malformed double dump: {0}")]
    Format(String),
}

#[derive(Clone, Debug)]
pub struct DoubleAlgebra {
    pub pairing: WmhaPairing,
    /// `T: B⊗A -> A⊗B`.
    pub twist: LinearMap,
    /// `T^{-1}: A⊗B -> B⊗A`.
    pub twist_inv: LinearMap,
    /// `Range(R)` inside `A⊗B`.
    pub carrier: Subspace,
    /// `·_D` on basis pairs of `A⊗B`, index `k * dim(A⊗B) + l`.
    raw: Vec<SparseVec>,
    /// The idempotent cutting out the corner; it is the unit of `D`.
    pub corner: SparseVec,
    /// Columns: the basis of `D` inside `A⊗B`.
    pub incl: LinearMap,
    /// `x -> coordinates of e·x·e`.
    pub proj: LinearMap,
    pub hopf: WeakHopf,
    /// `a -> π(a⊗1)`.
    pub f1: LinearMap,
    /// `b -> π(1⊗b)`.
    pub f2: LinearMap,
}

impl DoubleAlgebra {
    pub fn na(&self) -> usize {
        self.pairing.na()
    }

    pub fn nb(&self) -> usize {
        self.pairing.nb()
    }

    /// `dim(A⊗B)`.
    pub fn n_raw(&self) -> usize {
        self.na() * self.nb()
    }

    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    pub fn raw_mul_basis(&self, k: usize, l: usize) -> &SparseVec {
        &self.raw[k * self.n_raw() + l]
    }

    pub fn raw_mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (k, c) in x.iter() {
            for (l, d) in y.iter() {
                let p = self.raw_mul_basis(k, l);
                if !p.is_zero() {
                    acc.add_scaled(&(c * d), p);
                }
            }
        }
        acc.finish()
    }

    /// The coproduct formula on `A⊗B`, before projecting.
    pub fn raw_delta(&self, x: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (k, c) in x.iter() {
            acc.add_scaled(c, &raw_delta(&self.pairing, k));
        }
        acc.finish()
    }

    pub fn pi(&self, x: &SparseVec) -> SparseVec {
        self.proj.apply(x)
    }

    pub fn iota(&self, d: &SparseVec) -> SparseVec {
        self.incl.apply(d)
    }

    /// `π⊗π` on `(A⊗B)⊗(A⊗B)`.
    pub fn pi2(&self, x: &SparseVec) -> SparseVec {
        apply_kron(&self.proj, &self.proj, x, self.n_raw(), self.dim())
    }

    /// `a⊗b` in `A⊗B` as a raw index.
    pub fn ab(&self, a: usize, b: usize) -> usize {
        a * self.nb() + b
    }

    pub fn label_raw(&self, k: usize) -> String {
        self.pairing.label_ab(k)
    }

    /// The flip `B⊗A -> A⊗B`.
    pub fn tau_ba(&self) -> LinearMap {
        flip_map(self.nb(), self.na())
    }

    /// The flip `A⊗B -> B⊗A`.
    pub fn tau_ab(&self) -> LinearMap {
        flip_map(self.na(), self.nb())
    }

    /// The corner's complement in the carrier: elements `x` with `e·x·e = 0`.
    pub fn annihilator(&self) -> Vec<SparseVec> {
        let basis = self.carrier.basis();
        let m = LinearMap::from_columns(self.dim(), basis.iter().map(|v| self.pi(v)).collect());
        m.kernel()
            .into_iter()
            .map(|k| {
                let mut acc = Accum::new();
                for (i, c) in k.iter() {
                    acc.add_scaled(c, &basis[i]);
                }
                acc.finish()
            })
            .collect()
    }

    /// The WeakHopf dump plus the data needed to re-verify the double.
    /// Reads a dump written by `to_json` against an already loaded pairing.
    pub fn from_json(v: &Value, pairing: WmhaPairing) -> Result<Self, DoubleError> {
        let fmt = |e: AlgebraError| DoubleError::Format(e.to_string());
        if v.get("kind").and_then(Value::as_str) != Some("double") {
            return Err(DoubleError::Format("kind is not \"double\"".into()));
        }
        let n = pairing.na() * pairing.nb();
        if v.get("raw_dimension").and_then(Value::as_u64) != Some(n as u64) {
            return Err(DoubleError::Format(format!("raw_dimension does not match the pairing ({n})")));
        }
        let field = |k: &str| v.get(k).ok_or_else(|| DoubleError::Format(format!("missing {k}")));
        let map = |k: &str| -> Result<LinearMap, DoubleError> { map_from_json(field(k)?).map_err(fmt) };
        let basis = field("carrier_basis")?
            .as_array()
            .ok_or_else(|| DoubleError::Format("carrier_basis is not an array".into()))?
            .iter()
            .map(|x| vec_from_json(x, n).map_err(fmt))
            .collect::<Result<Vec<_>, _>>()?;
        let twist = map("twist")?;
        let twist_inv = map("twist_inverse")?;
        if (twist.rows, twist.cols) != (n, n) || (twist_inv.rows, twist_inv.cols) != (n, n) {
            return Err(DoubleError::Format("twist has the wrong shape".into()));
        }
        let hopf = WeakHopf::from_json(field("weak_hopf")?)?;
        let m = hopf.dim();
        let incl = map("inclusion")?;
        let proj = map("projection")?;
        let f1 = map("f1")?;
        let f2 = map("f2")?;
        let shapes = [
            (&incl, n, m),
            (&proj, m, n),
            (&f1, m, pairing.na()),
            (&f2, m, pairing.nb()),
        ];
        if shapes.iter().any(|(f, r, c)| (f.rows, f.cols) != (*r, *c)) {
            return Err(DoubleError::Format("an embedding has the wrong shape".into()));
        }
        Ok(DoubleAlgebra {
            raw: raw_table(&pairing, &twist),
            carrier: Subspace::span_owned(n, basis),
            corner: vec_from_json(field("corner")?, n).map_err(fmt)?,
            pairing,
            twist,
            twist_inv,
            incl,
            proj,
            hopf,
            f1,
            f2,
        })
    }

    pub fn to_json(&self, pairing_ref: Value) -> Value {
        json!({
            "kind": "double",
            "pairing": pairing_ref,
            "raw_dimension": self.n_raw(),
            "carrier_basis": self.carrier.basis().iter().map(vec_to_json).collect::<Vec<_>>(),
            "corner": vec_to_json(&self.corner),
            "inclusion": map_to_json(&self.incl),
            "projection": map_to_json(&self.proj),
            "twist": map_to_json(&self.twist),
            "twist_inverse": map_to_json(&self.twist_inv),
            "f1": map_to_json(&self.f1),
            "f2": map_to_json(&self.f2),
            "weak_hopf": self.hopf.to_json(),
        })
    }
}

fn flip_map(nx: usize, ny: usize) -> LinearMap {
    LinearMap::from_fn(nx * ny, nx * ny, |k| SparseVec::unit((k % ny) * nx + k / ny))
}

/// `(f⊗g)x` for `x` in `X⊗X'` with `dim X' = n_in`; `g` lands in a space
/// of dimension `n_out`.
pub(crate) fn apply_kron(f: &LinearMap, g: &LinearMap, x: &SparseVec, n_in: usize, n_out: usize) -> SparseVec {
    let mut acc = Accum::new();
    for (k, c) in x.iter() {
        let (u, v) = (f.column(k / n_in), g.column(k % n_in));
        for (i, a) in u.iter() {
            let ca = c * a;
            for (j, b) in v.iter() {
                acc.add(i * n_out + j, &ca * b);
            }
        }
    }
    acc.finish()
}

/// `Δ_D(a⊗b) = a_(1)⊗b_(2) ⊗ a_(2)⊗b_(1)` on a basis tensor of `A⊗B`.
fn raw_delta(p: &WmhaPairing, k: usize) -> SparseVec {
    let nb = p.nb();
    let n = p.na() * nb;
    let (x, y) = (k / nb, k % nb);
    let mut acc = Accum::new();
    for (a1, a2, c) in p.a.terms2(p.a.delta.column(x)) {
        for (b1, b2, d) in p.b.terms2(p.b.delta.column(y)) {
            acc.add((a1 * nb + b2) * n + a2 * nb + b1, c * d);
        }
    }
    acc.finish()
}

pub fn twist(p: &WmhaPairing) -> (LinearMap, LinearMap) {
    let (na, nb) = (p.na(), p.nb());
    let tau_ba = flip_map(nb, na);
    let tau_ab = flip_map(na, nb);
    let t = p.map_r().compose(&p.map_r_opcop_prime()).compose(&tau_ba);
    let t_inv = tau_ab.compose(&p.map_r_opcop()).compose(&p.map_r_prime());
    (t, t_inv)
}

/// `E^B▷(1⊗1) = E^B_1▷1 ⊗ E^B_2`.
fn unit_corner(p: &WmhaPairing) -> SparseVec {
    let (na, nb) = (p.na(), p.nb());
    let acts = p.actions();
    let one_a = p.a.one();
    let mut acc = Accum::new();
    for (i, j, c) in p.b.terms2(&p.b.e) {
        let mut x = Accum::new();
        for (k, d) in one_a.iter() {
            x.add_scaled(d, acts.rhd_ba.column(i * na + k));
        }
        let x = x.finish();
        acc.add_vec(&tensor(&x, &SparseVec::unit(j), nb).scale(c));
    }
    acc.finish()
}

/// `(a⊗b)·_D(a'⊗b') = aT(b⊗a')_A ⊗ T(b⊗a')_B b'` on all basis pairs.
fn raw_table(p: &WmhaPairing, t: &LinearMap) -> Vec<SparseVec> {
    let (na, nb) = (p.na(), p.nb());
    let n = na * nb;
    let (a, b) = (&p.a, &p.b);
    let raw_map = LinearMap::from_fn_par(n, n * n, |kl| {
        let (k, l) = (kl / n, kl % n);
        let (a1, b1, a2, b2) = (k / nb, k % nb, l / nb, l % nb);
        let mut acc = Accum::new();
        for (xy, c) in t.column(b1 * na + a2).iter() {
            let (x, y) = (xy / nb, xy % nb);
            let left = a.alg.mul_basis(a1, x);
            let right = b.alg.mul_basis(y, b2);
            for (i, u) in left.iter() {
                let cu = c * u;
                for (j, v) in right.iter() {
                    acc.add(i * nb + j, &cu * v);
                }
            }
        }
        acc.finish()
    });
    raw_map.columns().to_vec()
}

pub fn build_double(p: &WmhaPairing) -> Result<DoubleAlgebra, DoubleError> {
    let (na, nb) = (p.na(), p.nb());
    let n = na * nb;
    let (a, b) = (&p.a, &p.b);
    let (t, t_inv) = twist(p);

    let raw = raw_table(p, &t);

    let carrier = p.map_r().range();
    let cb = carrier.basis();
    let mul = |x: &SparseVec, y: &SparseVec| {
        let mut acc = Accum::new();
        for (k, c) in x.iter() {
            for (l, d) in y.iter() {
                let q = &raw[k * n + l];
                if !q.is_zero() {
                    acc.add_scaled(&(c * d), q);
                }
            }
        }
        acc.finish()
    };
    for (i, u) in cb.iter().enumerate() {
        for (j, v) in cb.iter().enumerate() {
            if !carrier.contains(&mul(u, v)) {
                return Err(DoubleError::Closure(format!("carrier basis vectors {i} and {j}")));
            }
        }
    }

    let e0 = unit_corner(p);
    let corner = mul(&e0, &e0);
    if mul(&corner, &corner) != corner {
        return Err(DoubleError::Degenerate("corner element is not idempotent".into()));
    }
    let sandwich: Vec<SparseVec> = (0..n).map(|k| mul(&mul(&corner, &SparseVec::unit(k)), &corner)).collect();
    let space = Subspace::span(n, sandwich.iter());
    let basis = space.basis();
    let m = basis.len();
    if m == 0 {
        return Err(DoubleError::Degenerate("the double is zero".into()));
    }
    let incl = LinearMap::from_columns(n, basis.clone());
    let proj = LinearMap::from_columns(m, sandwich.iter().map(|v| space.coordinates(v).unwrap()).collect());

    let labels: Vec<String> = basis
        .iter()
        .map(|v| {
            let (k, _) = v.first().unwrap();
            let l = p.label_ab(k);
            if v.nnz() == 1 {
                l
            } else {
                format!("~{l}")
            }
        })
        .collect();

    let table: Vec<SparseVec> = (0..m * m)
        .map(|ij| proj.apply(&mul(&basis[ij / m], &basis[ij % m])))
        .collect();
    let star = match (a.alg.star_table(), b.alg.star_table()) {
        (Some(sa), Some(sb)) => Some(
            basis
                .iter()
                .map(|v| {
                    let mut acc = Accum::new();
                    for (k, c) in v.iter() {
                        let (x, y) = (k / nb, k % nb);
                        // (a⊗b)* = T(b*⊗a*)
                        let ba = tensor(&sb[y], &sa[x], na);
                        acc.add_scaled(&c.conj(), &t.apply(&ba));
                    }
                    proj.apply(&acc.finish())
                })
                .collect(),
        ),
        _ => None,
    };
    let unit = proj.apply(&corner);
    let alg = FiniteAlgebra::new(labels, table, Some(unit.clone()), star).map_err(WmhaError::from)?;

    let delta = LinearMap::from_fn(m * m, m, |i| {
        let mut acc = Accum::new();
        for (k, c) in basis[i].iter() {
            acc.add_scaled(c, &raw_delta(p, k));
        }
        apply_kron(&proj, &proj, &acc.finish(), n, m)
    });

    let eps_s_prime = b
        .eps_s_prime()
        .ok_or_else(|| DoubleError::Refused("B has no invertible antipode".into()))?;
    // ε_D(a⊗b) = ⟨a, ε'_s(b)⟩
    let counit: Vec<Scalar> = basis
        .iter()
        .map(|v| {
            let mut s = Scalar::ZERO;
            for (k, c) in v.iter() {
                s += c * &p.pair_vec(&SparseVec::unit(k / nb), eps_s_prime.column(k % nb));
            }
            s
        })
        .collect();

    // S_D = T∘τ∘(S_A⊗S_B^{-1})
    let sb_inv = b.antipode_inv.clone().unwrap();
    let s_raw = t.compose(&flip_map(na, nb)).compose(&a.antipode.kron(&sb_inv));
    let antipode = proj.compose(&s_raw).compose(&incl);

    // E_D = E^A_1 a⊗E^B_2 b ⊗ E^A_2 a'⊗E^B_1 b' on 1_D⊗1_D
    let mut e_raw = Accum::new();
    for (k, c) in corner.iter() {
        for (l, d) in corner.iter() {
            let cd = c * d;
            let (x, y, x2, y2) = (k / nb, k % nb, l / nb, l % nb);
            for (ea1, ea2, alpha) in a.terms2(&a.e) {
                let l1 = a.alg.mul_basis(ea1, x);
                let l2 = a.alg.mul_basis(ea2, x2);
                if l1.is_zero() || l2.is_zero() {
                    continue;
                }
                for (eb1, eb2, beta) in b.terms2(&b.e) {
                    let r1 = b.alg.mul_basis(eb2, y);
                    let r2 = b.alg.mul_basis(eb1, y2);
                    let coef = &cd * alpha * beta;
                    for (i1, u1) in l1.iter() {
                        for (j1, v1) in r1.iter() {
                            let k1 = i1 * nb + j1;
                            let c1 = &coef * u1 * v1;
                            for (i2, u2) in l2.iter() {
                                for (j2, v2) in r2.iter() {
                                    e_raw.add(k1 * n + i2 * nb + j2, &c1 * u2 * v2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let e = apply_kron(&proj, &proj, &e_raw.finish(), n, m);

    let name = format!("double({}, {})", a.name, b.name);
    let hopf = WeakHopf::new(name, alg, delta, counit, antipode, e)?;

    let one_a = a.one();
    let one_b = b.one();
    let f1 = LinearMap::from_fn(m, na, |x| proj.apply(&tensor(&SparseVec::unit(x), &one_b, nb)));
    let f2 = LinearMap::from_fn(m, nb, |y| proj.apply(&tensor(&one_a, &SparseVec::unit(y), nb)));

    Ok(DoubleAlgebra {
        pairing: p.clone(),
        twist: t,
        twist_inv: t_inv,
        carrier,
        raw,
        corner,
        incl,
        proj,
        hopf,
        f1,
        f2,
    })
}
