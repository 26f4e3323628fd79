use num_traits::ToPrimitive;

use crate::algebra::{generalized_inverse_check, FiniteAlgebra};
use crate::exactnum::{GaussianRational, Rational};
use crate::linalg::{Accum, LinearMap, SparseVec};
use crate::report::{ensure, first_failure, Report};
use crate::wmha::{dual, WeakHopf};

use super::{DoubleAlgebra, DoubleError};

/// A left-left Yetter-Drinfeld module over the second leg `H` of the
/// double's pairing. `H⊗V` is indexed `h*dim + v`.
#[derive(Debug, Clone, PartialEq)]
pub struct YdModule {
    pub dim: usize,
    /// `H⊗V -> V`
    pub action: LinearMap,
    /// `V -> H⊗V`
    pub coaction: LinearMap,
}

impl YdModule {
    pub fn new(dim: usize, action: LinearMap, coaction: LinearMap) -> Self {
        YdModule { dim, action, coaction }
    }

    /// One-dimensional module from a character `χ` and a grouplike `g`.
    pub fn one_dimensional(chi: &SparseVec, g: &SparseVec, nh: usize) -> Self {
        let action = LinearMap::from_fn(1, nh, |h| SparseVec::single(0, chi.coeff(h)));
        let coaction = LinearMap::from_columns(nh, vec![g.clone()]);
        YdModule { dim: 1, action, coaction }
    }

    fn act(&self, h: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = Accum::new();
        for (i, c) in h.iter() {
            for (j, d) in v.iter() {
                acc.add_scaled(&(c * d), self.action.column(i * self.dim + j));
            }
        }
        acc.finish()
    }
}

/// The pairing of `D` must read `⟨Ĥ, H⟩` with the identity form.
fn hopf_of(d: &DoubleAlgebra) -> Result<&WeakHopf, DoubleError> {
    let p = &d.pairing;
    let h = &p.b;
    let hat = dual(h)?;
    let dual_ok = p.form == LinearMap::identity(h.dim())
        && hat.alg.dim() == p.a.alg.dim()
        && (0..hat.dim()).all(|i| (0..hat.dim()).all(|j| hat.alg.mul_basis(i, j) == p.a.alg.mul_basis(i, j)))
        && hat.delta == p.a.delta;
    if dual_ok {
        Ok(h)
    } else {
        Err(DoubleError::Refused("the pairing is not a dual pairing ⟨Ĥ, H⟩".into()))
    }
}

pub fn yd_check(d: &DoubleAlgebra, v: &YdModule) -> Report {
    yd_check_over(&d.pairing.b, v)
}

fn yd_check_over(h: &WeakHopf, v: &YdModule) -> Report {
    let mut r = Report::new();
    let (nh, n) = (h.dim(), v.dim);
    let nv = nh * n;
    let shape_ok = (v.action.rows, v.action.cols) == (n, nv) && (v.coaction.rows, v.coaction.cols) == (nv, n);
    r.record(
        "yd.shape",
        "action H⊗V -> V and coaction V -> H⊗V",
        ensure(shape_ok, || format!("action {}x{}, coaction {}x{}", v.action.rows, v.action.cols, v.coaction.rows, v.coaction.cols)),
    );
    if !shape_ok {
        return r;
    }
    let u = SparseVec::unit;
    let one = h.one();
    r.record(
        "yd.action_unital",
        "1▷v = v",
        first_failure(n, |j| ensure(v.act(&one, &u(j)) == u(j), || format!("v = {j}"))),
    );
    r.record(
        "yd.action_associative",
        "(aa')▷v = a▷(a'▷v)",
        first_failure(nh * nh * n, |t| {
            let (a, b, j) = (t / (nh * n), (t / n) % nh, t % n);
            let lhs = v.act(h.alg.mul_basis(a, b), &u(j));
            let rhs = v.act(&u(a), &v.act(&u(b), &u(j)));
            ensure(lhs == rhs, || format!("a = {}, a' = {}, v = {j}", h.label(a), h.label(b)))
        }),
    );
    // (Δ⊗id)δ and (id⊗δ)δ in H⊗H⊗V
    let delta_v = |x: &SparseVec| {
        let mut acc = Accum::new();
        for (k, c) in x.iter() {
            for (hk, d) in h.delta.column(k / n).iter() {
                acc.add(hk * n + k % n, c * d);
            }
        }
        acc.finish()
    };
    let id_delta = |x: &SparseVec| {
        let mut acc = Accum::new();
        for (k, c) in x.iter() {
            for (hv, d) in v.coaction.column(k % n).iter() {
                acc.add((k / n) * nv + hv, c * d);
            }
        }
        acc.finish()
    };
    r.record(
        "yd.coaction_coassociative",
        "(Δ⊗id)δ = (id⊗δ)δ",
        first_failure(n, |j| {
            let x = v.coaction.column(j);
            ensure(delta_v(x) == id_delta(x), || format!("v = {j}"))
        }),
    );
    r.record(
        "yd.coaction_counital",
        "(ε⊗id)δ(v) = v",
        first_failure(n, |j| {
            let mut acc = Accum::new();
            for (k, c) in v.coaction.column(j).iter() {
                acc.add(k % n, c * &h.counit[k / n]);
            }
            ensure(acc.finish() == u(j), || format!("v = {j}"))
        }),
    );
    // left full: the Ĥ-action (x⊗id)δ reaches all of V
    let full = LinearMap::from_fn(n, nh * n, |t| {
        let (x, j) = (t / n, t % n);
        SparseVec::from_terms(v.coaction.column(j).iter().filter(|(k, _)| k / n == x).map(|(k, c)| (k % n, c.clone())))
    });
    r.record(
        "yd.coaction_full",
        "{(x⊗id)δ(v)} spans V",
        ensure(full.rank() == n, || format!("rank {} of {n}", full.rank())),
    );
    let coact = |j: usize| v.coaction.column(j);
    r.record(
        "yd.compatibility",
        "(a₍₁₎▷v)₍₋₁₎a₍₂₎a'⊗(a₍₁₎▷v)₍₀₎ = a₍₁₎v₍₋₁₎a'⊗a₍₂₎▷v₍₀₎",
        first_failure(nh * nh * n, |t| {
            let (a, a2, j) = (t / (nh * n), (t / n) % nh, t % n);
            let mut lhs = Accum::new();
            let mut rhs = Accum::new();
            for (x, y, c) in h.terms2(h.delta.column(a)) {
                let w = v.act(&u(x), &u(j));
                for (wj, cw) in w.iter() {
                    for (k, cd) in coact(wj).iter() {
                        let tail = h.mul(&h.mul(&u(k / n), &u(y)), &u(a2));
                        for (hh, ct) in tail.iter() {
                            lhs.add(hh * n + k % n, c * cw * cd * ct);
                        }
                    }
                }
                for (k, cd) in coact(j).iter() {
                    let head = h.mul(&h.mul(&u(x), &u(k / n)), &u(a2));
                    let tail = v.act(&u(y), &u(k % n));
                    for (hh, ch) in head.iter() {
                        for (vv, cv) in tail.iter() {
                            rhs.add(hh * n + vv, c * cd * ch * cv);
                        }
                    }
                }
            }
            ensure(lhs.finish() == rhs.finish(), || format!("a = {}, a' = {}, v = {j}", h.label(a), h.label(a2)))
        }),
    );
    let pi = projection(h, v);
    r.record(
        "yd.projection",
        "Πδ(v) = δ(v)",
        first_failure(n, |j| ensure(pi.apply(coact(j)) == *coact(j), || format!("v = {j}"))),
    );
    let (rho, rho_p) = corepresentation(h, v);
    match generalized_inverse_check(&rho, &rho_p) {
        Ok(rep) => r.merge("yd.corepresentation", rep),
        Err(e) => r.record("yd.corepresentation", "ρρ'ρ = ρ", Err(e.to_string())),
    }
    r
}

/// `Π(a⊗v) = E₁a⊗E₂▷v`.
pub fn projection(h: &WeakHopf, v: &YdModule) -> LinearMap {
    let n = v.dim;
    LinearMap::from_fn(h.dim() * n, h.dim() * n, |k| {
        let mut acc = Accum::new();
        for (e1, e2, c) in h.terms2(&h.e) {
            let head = h.alg.mul_basis(e1, k / n);
            let tail = v.act(&SparseVec::unit(e2), &SparseVec::unit(k % n));
            for (x, cx) in head.iter() {
                for (y, cy) in tail.iter() {
                    acc.add(x * n + y, c * cx * cy);
                }
            }
        }
        acc.finish()
    })
}

/// `ρ(a⊗v) = av₍₋₁₎⊗v₍₀₎` and `ρ'(a⊗v) = aS(v₍₋₁₎)⊗v₍₀₎`.
pub fn corepresentation(h: &WeakHopf, v: &YdModule) -> (LinearMap, LinearMap) {
    let n = v.dim;
    let nv = h.dim() * n;
    let build = |twist: bool| {
        LinearMap::from_fn(nv, nv, |k| {
            let mut acc = Accum::new();
            for (hv, c) in v.coaction.column(k % n).iter() {
                let leg = SparseVec::unit(hv / n);
                let leg = if twist { h.s(&leg) } else { leg };
                for (x, cx) in h.mul(&SparseVec::unit(k / n), &leg).iter() {
                    acc.add(x * n + hv % n, c * cx);
                }
            }
            acc.finish()
        })
    };
    (build(false), build(true))
}

/// The action `D⊗V -> V` induced by a Yetter-Drinfeld module, without
/// checking that the module is one. `literal` drops the `S⁻¹`.
pub fn induced_action(d: &DoubleAlgebra, v: &YdModule, literal: bool) -> LinearMap {
    let p = &d.pairing;
    let (nh, n) = (d.nb(), v.dim);
    let sinv = p.b.antipode_inv.clone().unwrap_or_else(|| p.b.antipode.clone());
    // (ω⊗a)▷v on the raw basis of Ĥ⊗H
    let raw = |k: usize, j: usize| {
        let (w, a) = (k / nh, k % nh);
        let av = v.act(&SparseVec::unit(a), &SparseVec::unit(j));
        let mut acc = Accum::new();
        for (x, c) in av.iter() {
            for (hv, cd) in v.coaction.column(x).iter() {
                let leg = if literal { SparseVec::unit(hv / n) } else { sinv.column(hv / n).clone() };
                let s = p.pair_vec(&SparseVec::unit(w), &leg);
                if !s.is_zero() {
                    acc.add(hv % n, c * cd * &s);
                }
            }
        }
        acc.finish()
    };
    LinearMap::from_fn(n, d.dim() * n, |t| {
        let (i, j) = (t / n, t % n);
        let mut acc = Accum::new();
        for (k, c) in d.incl.column(i).iter() {
            acc.add_scaled(c, &raw(k, j));
        }
        acc.finish()
    })
}

/// Unitality and associativity of an action `D⊗V -> V`.
pub fn double_module_check(d: &DoubleAlgebra, action: &LinearMap, n: usize) -> Report {
    let mut r = Report::new();
    let m = d.dim();
    let act = |x: &SparseVec, y: &SparseVec| {
        let mut acc = Accum::new();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                acc.add_scaled(&(c * e), action.column(i * n + j));
            }
        }
        acc.finish()
    };
    let one = d.hopf.one();
    let u = SparseVec::unit;
    r.record(
        "module.unital",
        "1_D▷v = v",
        first_failure(n, |j| ensure(act(&one, &u(j)) == u(j), || format!("v = {j}"))),
    );
    r.record(
        "module.associative",
        "d▷(d'▷v) = (dd')▷v",
        first_failure(m * m * n, |t| {
            let (a, b, j) = (t / (m * n), (t / n) % m, t % n);
            let lhs = act(&u(a), &act(&u(b), &u(j)));
            let rhs = act(d.hopf.alg.mul_basis(a, b), &u(j));
            ensure(lhs == rhs, || format!("d = {}, d' = {}, v = {j}", d.hopf.label(a), d.hopf.label(b)))
        }),
    );
    r
}

/// The `D`-module structure of a Yetter-Drinfeld module.
pub fn yd_to_double_module(d: &DoubleAlgebra, v: &YdModule) -> Result<LinearMap, DoubleError> {
    hopf_of(d)?;
    let rep = yd_check(d, v);
    if let Some(c) = rep.failures().next() {
        return Err(DoubleError::Refused(format!("not a Yetter-Drinfeld module: {} ({})", c.id, c.witness.clone().unwrap_or_default())));
    }
    Ok(induced_action(d, v, false))
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_big().to_f64().unwrap_or(f64::INFINITY)
}

/// Characters `χ: alg -> ℚ(i)` taking Gaussian-integer values on the basis.
pub fn characters(alg: &FiniteAlgebra) -> Vec<SparseVec> {
    let n = alg.dim();
    let one = alg.one();
    // (L_y^T χ)(x) = χ(yx)
    let lt = |y: usize| LinearMap::from_fn(n, n, |k| SparseVec::from_terms((0..n).map(|x| (x, alg.mul_basis(y, x).coeff(k)))));
    let mut spaces: Vec<Vec<SparseVec>> = vec![(0..n).map(SparseVec::unit).collect()];
    for y in 0..n {
        if spaces.iter().all(|w| w.len() <= 1) {
            break;
        }
        let m = lt(y);
        let frob: f64 = m.columns().iter().flat_map(|c| c.iter().map(|(_, s)| rational_to_f64(&s.norm_sqr()))).sum();
        let bound = frob.sqrt().ceil() as i64;
        let mut next = Vec::new();
        for w in spaces {
            if w.len() <= 1 {
                next.push(w);
                continue;
            }
            for re in -bound..=bound {
                for im in -bound..=bound {
                    if re * re + im * im > bound * bound {
                        continue;
                    }
                    let lambda = GaussianRational::new(Rational::from_int(re), Rational::from_int(im));
                    let restricted = LinearMap::from_columns(n, w.iter().map(|c| m.apply(c).axpy(&-lambda.clone(), c)).collect());
                    let ker = restricted.kernel();
                    if !ker.is_empty() {
                        next.push(
                            ker.iter()
                                .map(|coef| {
                                    let mut acc = Accum::new();
                                    for (j, c) in coef.iter() {
                                        acc.add_scaled(c, &w[j]);
                                    }
                                    acc.finish()
                                })
                                .collect(),
                        );
                    }
                }
            }
        }
        spaces = next;
    }
    let mut out: Vec<SparseVec> = Vec::new();
    for w in spaces {
        for cand in w {
            let at_one = cand.dot(&one);
            let Ok(inv) = at_one.inv() else { continue };
            let chi = cand.scale(&inv);
            let ok = (0..n).all(|x| (0..n).all(|y| alg.mul_basis(x, y).dot(&chi) == &chi.coeff(x) * &chi.coeff(y)));
            if ok && !out.contains(&chi) {
                out.push(chi);
            }
        }
    }
    out.sort_by_key(|c| format!("{c:?}"));
    out
}

/// Grouplikes `Δ(g) = g⊗g`, `ε(g) = 1`, read as characters of the dual.
pub fn grouplikes(h: &WeakHopf) -> Result<Vec<SparseVec>, DoubleError> {
    let hat = dual(h)?;
    let gs: Vec<SparseVec> = characters(&hat.alg);
    Ok(gs.into_iter().filter(|g| h.delta_of(g) == crate::linalg::tensor(g, g, h.dim()) && h.eps(g).is_one()).collect())
}

/// Yetter-Drinfeld modules of dimension `dim` over `H`, up to equality.
/// Only `dim <= 1` is supported.
pub fn enumerate_yd_modules(d: &DoubleAlgebra, dim: usize) -> Result<Vec<YdModule>, DoubleError> {
    let h = hopf_of(d)?;
    let nh = h.dim();
    match dim {
        0 => Ok(vec![YdModule::new(0, LinearMap::zero(0, 0), LinearMap::zero(0, 0))]),
        1 => {
            let chis = characters(&h.alg);
            let gs = grouplikes(h)?;
            let mut out = Vec::new();
            for chi in &chis {
                for g in &gs {
                    let v = YdModule::one_dimensional(chi, g, nh);
                    if yd_check(d, &v).all_pass() {
                        out.push(v);
                    }
                }
            }
            Ok(out)
        }
        _ => Err(DoubleError::Refused(format!("enumeration of dimension {dim} is not supported"))),
    }
}

/// One-dimensional `D`-modules, as characters of `D`.
pub fn enumerate_double_modules(d: &DoubleAlgebra, dim: usize) -> Result<Vec<SparseVec>, DoubleError> {
    match dim {
        0 => Ok(vec![SparseVec::zero()]),
        1 => Ok(characters(&d.hopf.alg)),
        _ => Err(DoubleError::Refused(format!("enumeration of dimension {dim} is not supported"))),
    }
}

#[derive(Debug, Clone)]
pub struct YdCorrespondence {
    pub yd: Vec<YdModule>,
    pub double: Vec<SparseVec>,
    /// `images[i]` is the index in `double` of the module induced by `yd[i]`.
    pub images: Vec<Option<usize>>,
    pub report: Report,
}

impl YdCorrespondence {
    pub fn is_bijection(&self) -> bool {
        let mut hit: Vec<usize> = self.images.iter().flatten().copied().collect();
        hit.sort_unstable();
        hit.dedup();
        self.images.iter().all(Option::is_some) && hit.len() == self.images.len() && hit.len() == self.double.len()
    }
}

/// Matches the one-dimensional Yetter-Drinfeld modules with the
/// one-dimensional `D`-modules through the induced action.
pub fn yd_correspondence(d: &DoubleAlgebra) -> Result<YdCorrespondence, DoubleError> {
    let yd = enumerate_yd_modules(d, 1)?;
    let double = enumerate_double_modules(d, 1)?;
    let mut r = Report::new();
    let mut images = Vec::new();
    let mut literal_ok = true;
    for (i, v) in yd.iter().enumerate() {
        let act = yd_to_double_module(d, v)?;
        r.merge(&format!("yd[{i}]"), double_module_check(d, &act, 1));
        literal_ok &= double_module_check(d, &induced_action(d, v, true), 1).all_pass();
        let chi = SparseVec::from_terms((0..d.dim()).map(|k| (k, act.column(k).coeff(0))));
        images.push(double.iter().position(|c| *c == chi));
    }
    r.note("yd_count", yd.len());
    r.note("double_count", double.len());
    r.note("literal_action_is_module", literal_ok);
    let corr = YdCorrespondence { yd, double, images, report: r };
    let bij = corr.is_bijection();
    let mut report = corr.report.clone();
    report.record(
        "yd.bijection",
        "Yetter-Drinfeld modules correspond to D-modules",
        ensure(bij, || format!("{} Yetter-Drinfeld modules, {} D-modules, images {:?}", corr.yd.len(), corr.double.len(), corr.images)),
    );
    Ok(YdCorrespondence { report, ..corr })
}
