use crate::linalg::{tensor, Accum, SparseVec};
use crate::pairing::apply_bilinear;
use crate::report::{ensure, first_failure, Report};

use super::DoubleAlgebra;

/// Structure constants of `·₀` and of the smash product `Â#A` on the
/// basis of `Â⊗A`, indexed `k*n + l`.
pub fn smash_tables(d: &DoubleAlgebra) -> (Vec<SparseVec>, Vec<SparseVec>) {
    let p = &d.pairing;
    let acts = p.actions();
    let (na, nb) = (d.na(), d.nb());
    let n = na * nb;
    let u = SparseVec::unit;
    let zero = |k: usize, l: usize| {
        let (x, a, y, b) = (k / nb, k % nb, l / nb, l % nb);
        let mut acc = Accum::new();
        for (y1, y2, c) in p.a.terms2(p.a.delta.column(y)) {
            let moved = apply_bilinear(&acts.rhd_ab, &u(y1), &u(a), nb);
            let left = tensor(&u(x), &moved, nb);
            acc.add_scaled(c, &d.raw_mul(&left, &u(y2 * nb + b)));
        }
        acc.finish()
    };
    let smash = |k: usize, l: usize| {
        let (x, a, y, b) = (k / nb, k % nb, l / nb, l % nb);
        let mut acc = Accum::new();
        for (a1, a2, c) in p.b.terms2(p.b.delta.column(a)) {
            let moved = apply_bilinear(&acts.rhd_ba, &u(a1), &u(y), na);
            let left = p.a.mul(&u(x), &moved);
            let right = p.b.alg.mul_basis(a2, b);
            acc.add_scaled(c, &tensor(&left, right, nb));
        }
        acc.finish()
    };
    let t0 = (0..n * n).map(|kl| zero(kl / n, kl % n)).collect();
    let ts = (0..n * n).map(|kl| smash(kl / n, kl % n)).collect();
    (t0, ts)
}

/// Compares `(x⊗a)·₀(y⊗b) = (x⊗y₍₁₎▷a)(y₍₂₎⊗b)` with the smash product
/// `x(a₍₁₎▷y)⊗a₍₂₎b` entrywise, on `Â⊗A` and after projecting to `D`.
pub fn smash_comparison(d: &DoubleAlgebra) -> Report {
    let mut r = Report::new();
    let n = d.n_raw();
    let (t0, ts) = smash_tables(d);
    let lab = |kl: usize| format!("{} · {}", d.label_raw(kl / n), d.label_raw(kl % n));
    let raw_equal = t0 == ts;
    r.note("smash.raw_equal", raw_equal);
    r.note("smash.table_size", n * n);
    r.record(
        "smash.structure_tensor",
        "(x⊗a)·₀(y⊗b) = x(a₍₁₎▷y)⊗a₍₂₎b",
        first_failure(n * n, |kl| ensure(d.pi(&t0[kl]) == d.pi(&ts[kl]), || lab(kl))),
    );
    r.record(
        "smash.in_carrier",
        "both products land in A⊗_D B",
        first_failure(n * n, |kl| ensure(d.carrier.contains(&t0[kl]) && d.carrier.contains(&ts[kl]), || lab(kl))),
    );
    r
}
