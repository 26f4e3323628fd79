use crate::algebra::FiniteAlgebra;
use crate::linalg::{Accum, LinearMap, SparseVec, Subspace};
use crate::report::{ensure, first_failure, Report};

use super::{WeakHopf, WmhaError};

/// Integrals as functionals in the dual basis `{e^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSpace {
    pub left: Vec<SparseVec>,
    pub right: Vec<SparseVec>,
    pub left_faithful: bool,
    pub right_faithful: bool,
}

/// Kernel of `φ -> residual of (id⊗φ)Δ(e_a)` (or `(φ⊗id)Δ(e_a)` when
/// `first_leg`) modulo `target`, over all basis elements.
fn solve_integrals(w: &WeakHopf, target: &Subspace, first_leg: bool) -> Vec<SparseVec> {
    let n = w.dim();
    let cond = LinearMap::from_fn_par(n * n, n, |phi| {
        let mut acc = Accum::new();
        for a in 0..n {
            let mut slice = Accum::new();
            for (i, j, c) in w.terms2(w.delta.column(a)) {
                let (hit, keep) = if first_leg { (i, j) } else { (j, i) };
                if hit == phi {
                    slice.add_ref(keep, c);
                }
            }
            let res = target.residual(&slice.finish());
            for (k, x) in res.iter() {
                acc.add_ref(a * n + k, x);
            }
        }
        acc.finish()
    });
    cond.kernel()
}

/// `x -> (φ_i(x e_k))` (or `φ_i(e_k x)`) is injective.
pub(crate) fn faithful(w: &WeakHopf, fs: &[SparseVec]) -> bool {
    let n = w.dim();
    if fs.is_empty() {
        return n == 0;
    }
    let side = |right: bool| {
        LinearMap::from_fn(fs.len() * n, n, |x| {
            let mut acc = Accum::new();
            for (i, f) in fs.iter().enumerate() {
                for k in 0..n {
                    let p = if right { w.alg.mul_basis(x, k) } else { w.alg.mul_basis(k, x) };
                    let v = p.dot(f);
                    if !v.is_zero() {
                        acc.add(i * n + k, v);
                    }
                }
            }
            acc.finish()
        })
        .rank()
            == n
    };
    side(true) && side(false)
}

pub fn integrals(w: &WeakHopf) -> IntegralSpace {
    let st = w.source_target();
    let left = solve_integrals(w, &st.a_t, false);
    let right = solve_integrals(w, &st.a_s, true);
    let left_faithful = faithful(w, &left);
    let right_faithful = faithful(w, &right);
    IntegralSpace {
        left,
        right,
        left_faithful,
        right_faithful,
    }
}

/// The dual `Â = A'` in the dual basis, with structure transposed from `W`.
pub fn dual(w: &WeakHopf) -> Result<WeakHopf, WmhaError> {
    let ints = integrals(w);
    if !ints.left_faithful {
        return Err(WmhaError::Refused("no faithful set of left integrals".into()));
    }
    let n = w.dim();
    let labels = (0..n).map(|i| format!("ω[{}]", w.label(i))).collect();
    let table = (0..n * n)
        .map(|ij| {
            SparseVec::from_terms((0..n).filter_map(|k| w.delta.column(k).get(ij).map(|c| (k, c.clone()))))
        })
        .collect();
    let unit = SparseVec::from_dense(&w.counit);
    // f*(a) = conj f(S(a)*)
    let star = w.alg.star_table().map(|_| {
        (0..n)
            .map(|k| {
                SparseVec::from_terms((0..n).filter_map(|j| {
                    let sj = w.star(w.antipode.column(j)).unwrap();
                    sj.get(k).map(|c| (j, c.conj()))
                }))
            })
            .collect::<Vec<_>>()
    });
    let alg = FiniteAlgebra::new(labels, table, Some(unit), star)?;
    let delta = LinearMap::from_fn(n * n, n, |k| {
        SparseVec::from_terms((0..n * n).filter_map(|ij| w.alg.mul_basis(ij / n, ij % n).get(k).map(|c| (ij, c.clone()))))
    });
    let one = w.one();
    let counit = (0..n).map(|k| one.coeff(k)).collect();
    let antipode = w.antipode.transpose();
    let e = SparseVec::from_terms((0..n * n).filter_map(|ij| {
        let v = w.eps(w.alg.mul_basis(ij / n, ij % n));
        (!v.is_zero()).then_some((ij, v))
    }));
    WeakHopf::new(format!("dual({})", w.name), alg, delta, counit, antipode, e)
}

/// Module-algebra laws for `action: A (x) M -> M`, indexed `a * dim M + r`.
pub fn module_algebra_check(w: &WeakHopf, m: &FiniteAlgebra, action: &LinearMap) -> Report {
    let n = w.dim();
    let d = m.dim();
    let mut r = Report::new();
    if (action.rows, action.cols) != (d, n * d) {
        r.record(
            "module.shape",
            "action is a map A⊗M → M",
            Err(format!("action is {}x{}, expected {d}x{}", action.rows, action.cols, n * d)),
        );
        return r;
    }
    let act = |a: &SparseVec, x: &SparseVec| {
        let mut acc = Accum::new();
        for (i, c) in a.iter() {
            for (k, y) in x.iter() {
                acc.add_scaled(&(c * y), action.column(i * d + k));
            }
        }
        acc.finish()
    };
    let e = SparseVec::unit;
    let one = w.one();
    r.record(
        "module.unital",
        "1▷r = r",
        first_failure(d, |k| {
            ensure(act(&one, &e(k)) == e(k), || format!("r = {}", m.label(k)))
        }),
    );
    let am = action.range();
    r.record(
        "module.nondegenerate",
        "A▷M = M",
        ensure(am.dim() == d, || format!("A▷M has dimension {} < {d}", am.dim())),
    );
    r.record(
        "module.associative",
        "a▷(a'▷r) = (aa')▷r",
        first_failure(n * n * d, |t| {
            let (a, b, k) = (t / (n * d), (t / d) % n, t % d);
            let lhs = act(&e(a), &act(&e(b), &e(k)));
            let rhs = act(w.alg.mul_basis(a, b), &e(k));
            ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", w.label(a), w.label(b), m.label(k)))
        }),
    );
    r.record(
        "module.module_algebra",
        "a▷(rr') = (a_(1)▷r)(a_(2)▷r')",
        first_failure(n * d * d, |t| {
            let (a, k, l) = (t / (d * d), (t / d) % d, t % d);
            let lhs = act(&e(a), m.mul_basis(k, l));
            let mut rhs = Accum::new();
            for (i, j, c) in w.terms2(w.delta.column(a)) {
                rhs.add_scaled(c, &m.mul(&act(&e(i), &e(k)), &act(&e(j), &e(l))));
            }
            ensure(lhs == rhs.finish(), || format!("{} ⊗ {} ⊗ {}", w.label(a), m.label(k), m.label(l)))
        }),
    );
    r.record(
        "module.e_action",
        "μ(E▷(r⊗r')) = rr'",
        first_failure(d * d, |t| {
            let (k, l) = (t / d, t % d);
            let mut acc = Accum::new();
            for (i, j, c) in w.terms2(&w.e) {
                acc.add_scaled(c, &m.mul(&act(&e(i), &e(k)), &act(&e(j), &e(l))));
            }
            ensure(&acc.finish() == m.mul_basis(k, l), || format!("{} ⊗ {}", m.label(k), m.label(l)))
        }),
    );
    let a_s = w.source_target().a_s.basis();
    r.record(
        "module.source_slide",
        "(y▷r)r' = r(S(y)▷r') for y in A_s",
        first_failure(a_s.len() * d * d, |t| {
            let (y, k, l) = (&a_s[t / (d * d)], (t / d) % d, t % d);
            let lhs = m.mul(&act(y, &e(k)), &e(l));
            let rhs = m.mul(&e(k), &act(&w.s(y), &e(l)));
            ensure(lhs == rhs, || format!("y = {}, {} ⊗ {}", w.show(y), m.label(k), m.label(l)))
        }),
    );
    r.canonicalize();
    r
}

/// `a▷r = ε(a) r` on `M`.
pub fn counit_action(w: &WeakHopf, m: &FiniteAlgebra) -> LinearMap {
    let d = m.dim();
    LinearMap::from_fn(d, w.dim() * d, |k| SparseVec::single(k % d, w.counit[k / d].clone()))
}
