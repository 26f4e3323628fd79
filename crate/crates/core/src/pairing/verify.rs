use crate::algebra::{generalized_inverse_check, FiniteAlgebra};
use crate::linalg::{Accum, LinearMap, SparseVec, Subspace};
use crate::report::{ensure, first_failure, Outcome, Report};
use crate::wmha::{module_algebra_check, WeakHopf};

use super::{PairActions, WmhaPairing};

fn same(lhs: &LinearMap, rhs: &LinearMap, witness: impl Fn(usize) -> String) -> Outcome {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(j) => Err(witness(j)),
    }
}

fn mult_map(alg: &FiniteAlgebra) -> LinearMap {
    let n = alg.dim();
    LinearMap::from_fn(n, n * n, |k| alg.mul_basis(k / n, k % n).clone())
}

/// Conjugate-linear `*⊗*` on `X⊗Y` applied to a vector.
fn star2(x: &SparseVec, sx: &[SparseVec], sy: &[SparseVec], ny: usize) -> SparseVec {
    let mut acc = Accum::new();
    for (k, c) in x.iter() {
        let c = c.conj();
        for (u, a) in sx[k / ny].iter() {
            for (v, b) in sy[k % ny].iter() {
                acc.add(u * ny + v, &c * a * b);
            }
        }
    }
    acc.finish()
}

pub fn verify_pairing(p: &WmhaPairing) -> Report {
    let (na, nb) = (p.na(), p.nb());
    let (a, b) = (&p.a, &p.b);
    let f = &p.form;
    let f2 = f.kron(f);
    let mut r = Report::new();
    let lb = |j: usize| format!("b = {}", b.label(j));
    let lbb = |k: usize| format!("b⊗b' = {}⊗{}", b.label(k / nb), b.label(k % nb));

    let rank = f.rank();
    r.record(
        "pairing.nondegenerate",
        "the form is non-degenerate",
        ensure(rank == na && rank == nb, || format!("rank {rank} for dimensions {na} and {nb}")),
    );
    let mu_a = mult_map(&a.alg);
    let mu_b = mult_map(&b.alg);
    r.record(
        "pairing.product_b",
        "⟨a, bb'⟩ = ⟨a_(1), b⟩⟨a_(2), b'⟩",
        same(&f.compose(&mu_b), &a.delta.transpose().compose(&f2), lbb),
    );
    r.record(
        "pairing.product_a",
        "⟨aa', b⟩ = ⟨a, b_(1)⟩⟨a', b_(2)⟩",
        same(&mu_a.transpose().compose(f), &f2.compose(&b.delta), lb),
    );
    r.record(
        "pairing.antipode_adjoint",
        "⟨S_A(a), b⟩ = ⟨a, S_B(b)⟩",
        same(&a.antipode.transpose().compose(f), &f.compose(&b.antipode), lb),
    );
    let (sta, stb) = (a.source_target(), b.source_target());
    r.record(
        "pairing.eps_t_adjoint",
        "⟨ε_t(a), b⟩ = ⟨a, ε_t(b)⟩",
        same(&sta.eps_t.transpose().compose(f), &f.compose(&stb.eps_t), lb),
    );
    r.record(
        "pairing.eps_s_adjoint",
        "⟨ε_s(a), b⟩ = ⟨a, ε_s(b)⟩",
        same(&sta.eps_s.transpose().compose(f), &f.compose(&stb.eps_s), lb),
    );
    r.record(
        "pairing.unit_extension",
        "⟨a, 1⟩ = ε_A(a) and ⟨1, b⟩ = ε_B(b)",
        ensure(
            f.apply(&b.one()) == SparseVec::from_dense(&a.counit)
                && f.transpose().apply(&a.one()) == SparseVec::from_dense(&b.counit),
            || "unit pairing differs from the counit".into(),
        ),
    );
    let eps_aa = SparseVec::from_terms((0..na * na).map(|k| (k, a.eps(a.alg.mul_basis(k / na, k % na)))));
    let eps_bb = SparseVec::from_terms((0..nb * nb).map(|k| (k, b.eps(b.alg.mul_basis(k / nb, k % nb)))));
    r.record(
        "pairing.e_b",
        "⟨a⊗a', E^B⟩ = ε_A(aa')",
        ensure(f2.apply(&b.e) == eps_aa, || "⟨·, E^B⟩ differs from ε_A(··)".into()),
    );
    r.record(
        "pairing.e_a",
        "⟨E^A, b⊗b'⟩ = ε_B(bb')",
        ensure(f2.transpose().apply(&a.e) == eps_bb, || "⟨E^A, ·⟩ differs from ε_B(··)".into()),
    );

    let acts = p.actions();
    delta_action_checks(p, &acts, &mut r);

    let [t1a, t2a, _, _, p1a, p2a] = crate::wmha::canonical_maps(a);
    let [t1b, t2b, _, _, p1b, p2b] = crate::wmha::canonical_maps(b);
    for (id, anchor, ma, nb_) in [
        ("pairing.t1_adjoint", "⟨T1(a⊗a'), b⊗b'⟩ = ⟨a⊗a', T2(b⊗b')⟩", &t1a, &t2b),
        ("pairing.t2_adjoint", "⟨T2(a⊗a'), b⊗b'⟩ = ⟨a⊗a', T1(b⊗b')⟩", &t2a, &t1b),
        ("pairing.p1_adjoint", "⟨P1(a⊗a'), b⊗b'⟩ = ⟨a⊗a', P2(b⊗b')⟩", &p1a, &p2b),
        ("pairing.p2_adjoint", "⟨P2(a⊗a'), b⊗b'⟩ = ⟨a⊗a', P1(b⊗b')⟩", &p2a, &p1b),
    ] {
        r.record(id, anchor, same(&ma.transpose().compose(&f2), &f2.compose(nb_), lbb));
    }
    let ea = a.left_mult2(&a.e);
    let eb = b.left_mult2(&b.e);
    let g2a = p2a.compose(&t2a);
    let g2b = p2b.compose(&t2b);
    r.record(
        "pairing.e_g2_adjoint",
        "⟨E^A(a⊗a'), b⊗b'⟩ = ⟨a⊗a', G2(b⊗b')⟩ with G2 = P2T2",
        same(&ea.transpose().compose(&f2), &f2.compose(&g2b), lbb),
    );
    r.record(
        "pairing.g2_e_adjoint",
        "⟨G2(a⊗a'), b⊗b'⟩ = ⟨a⊗a', E^B(b⊗b')⟩ with G2 = P2T2",
        same(&g2a.transpose().compose(&f2), &f2.compose(&eb), lbb),
    );
    // G2 written as T2P2 is right multiplication by E
    let literal = t2b.compose(&p2b);
    r.note(
        "g2_as_t2p2_holds",
        ea.transpose().compose(&f2) == f2.compose(&literal),
    );

    r.record(
        "pairing.antipode_action_a",
        "S_A(b▷a) = S_A(a)◁S_B^-1(b)",
        first_failure(nb * na, |k| {
            let (bj, ai) = (k / na, k % na);
            let lhs = a.s(acts.rhd_ba.column(k));
            let sbinv = b.s_inv(&SparseVec::unit(bj)).unwrap();
            let rhs = apply_bilinear(&acts.lhd_ab, a.antipode.column(ai), &sbinv, nb);
            ensure(lhs == rhs, || p.label_ba(k))
        }),
    );
    r.record(
        "pairing.antipode_action_b",
        "S_B(a▷b) = S_B(b)◁S_A^-1(a)",
        first_failure(na * nb, |k| {
            let (ai, bj) = (k / nb, k % nb);
            let lhs = b.s(acts.rhd_ab.column(k));
            let sainv = a.s_inv(&SparseVec::unit(ai)).unwrap();
            let rhs = apply_bilinear(&acts.lhd_ba, b.antipode.column(bj), &sainv, na);
            ensure(lhs == rhs, || p.label_ab(k))
        }),
    );

    if let (Some(sa), Some(sb)) = (a.alg.star_table(), b.alg.star_table()) {
        r.record(
            "pairing.star_b",
            "⟨a, b*⟩ = conj⟨S(a)*, b⟩",
            first_failure(na * nb, |k| {
                let (ai, bj) = (k / nb, k % nb);
                let lhs = p.pair_vec(&SparseVec::unit(ai), &sb[bj]);
                let sa_star = a.star(a.antipode.column(ai)).unwrap();
                let rhs = p.pair_vec(&sa_star, &SparseVec::unit(bj)).conj();
                ensure(lhs == rhs, || p.label_ab(k))
            }),
        );
        r.record(
            "pairing.star_a",
            "⟨a*, b⟩ = conj⟨a, S(b)*⟩",
            first_failure(na * nb, |k| {
                let (ai, bj) = (k / nb, k % nb);
                let lhs = p.pair_vec(&sa[ai], &SparseVec::unit(bj));
                let sb_star = b.star(b.antipode.column(bj)).unwrap();
                let rhs = p.pair_vec(&SparseVec::unit(ai), &sb_star).conj();
                ensure(lhs == rhs, || p.label_ab(k))
            }),
        );
    }

    r.merge("", acts.verify(p));
    r.merge("", verify_r_maps(p));
    r.canonicalize();
    r
}

/// `action(x⊗y)` for a bilinear action stored on the basis of `X⊗Y`.
pub(crate) fn apply_bilinear(action: &LinearMap, x: &SparseVec, y: &SparseVec, ny: usize) -> SparseVec {
    let mut acc = Accum::new();
    for (i, c) in x.iter() {
        for (j, d) in y.iter() {
            acc.add_scaled(&(c * d), action.column(i * ny + j));
        }
    }
    acc.finish()
}

fn delta_action_checks(p: &WmhaPairing, acts: &PairActions, r: &mut Report) {
    let (na, nb) = (p.na(), p.nb());
    let (a, b) = (&p.a, &p.b);
    // Δ_B(a▷b) = (id⊗a▷·)Δ_B(b)
    r.record(
        "pairing.delta_action_1",
        "Δ_B(a▷b) = (id⊗a▷·)Δ_B(b)",
        first_failure(na * nb, |k| {
            let (ai, bj) = (k / nb, k % nb);
            let lhs = b.delta_of(acts.rhd_ab.column(k));
            let mut rhs = Accum::new();
            for (i, j, c) in b.terms2(b.delta.column(bj)) {
                for (v, x) in acts.rhd_ab.column(ai * nb + j).iter() {
                    rhs.add(i * nb + v, c * x);
                }
            }
            ensure(lhs == rhs.finish(), || p.label_ab(k))
        }),
    );
    r.record(
        "pairing.delta_action_2",
        "Δ_B(b◁a) = (·◁a⊗id)Δ_B(b)",
        first_failure(nb * na, |k| {
            let (bj, ai) = (k / na, k % na);
            let lhs = b.delta_of(acts.lhd_ba.column(k));
            let mut rhs = Accum::new();
            for (i, j, c) in b.terms2(b.delta.column(bj)) {
                for (u, x) in acts.lhd_ba.column(i * na + ai).iter() {
                    rhs.add(u * nb + j, c * x);
                }
            }
            ensure(lhs == rhs.finish(), || p.label_ba(k))
        }),
    );
    r.record(
        "pairing.delta_action_3",
        "Δ_A(a◁b) = (·◁b⊗id)Δ_A(a)",
        first_failure(na * nb, |k| {
            let (ai, bj) = (k / nb, k % nb);
            let lhs = a.delta_of(acts.lhd_ab.column(k));
            let mut rhs = Accum::new();
            for (i, j, c) in a.terms2(a.delta.column(ai)) {
                for (u, x) in acts.lhd_ab.column(i * nb + bj).iter() {
                    rhs.add(u * na + j, c * x);
                }
            }
            ensure(lhs == rhs.finish(), || p.label_ab(k))
        }),
    );
    r.record(
        "pairing.delta_action_4",
        "Δ_A(b▷a) = (id⊗b▷·)Δ_A(a)",
        first_failure(nb * na, |k| {
            let (bj, ai) = (k / na, k % na);
            let lhs = a.delta_of(acts.rhd_ba.column(k));
            let mut rhs = Accum::new();
            for (i, j, c) in a.terms2(a.delta.column(ai)) {
                for (v, x) in acts.rhd_ba.column(bj * na + j).iter() {
                    rhs.add(i * na + v, c * x);
                }
            }
            ensure(lhs == rhs.finish(), || p.label_ba(k))
        }),
    );
}

/// Module laws for a right action `M⊗W → M`, indexed `r * dim W + a`.
pub fn right_module_algebra_check(w: &WeakHopf, m: &FiniteAlgebra, action: &LinearMap) -> Report {
    let n = w.dim();
    let d = m.dim();
    let mut r = Report::new();
    let e = SparseVec::unit;
    let act = |x: &SparseVec, a: &SparseVec| apply_bilinear(action, x, a, n);
    let one = w.one();
    r.record(
        "module.unital",
        "r◁1 = r",
        first_failure(d, |k| ensure(act(&e(k), &one) == e(k), || format!("r = {}", m.label(k)))),
    );
    let rank = action.rank();
    r.record(
        "module.nondegenerate",
        "M◁A = M",
        ensure(rank == d, || format!("M◁A has dimension {rank} < {d}")),
    );
    r.record(
        "module.associative",
        "(r◁a)◁a' = r◁(aa')",
        first_failure(d * n * n, |t| {
            let (k, a, b) = (t / (n * n), (t / n) % n, t % n);
            let lhs = act(&act(&e(k), &e(a)), &e(b));
            let rhs = act(&e(k), w.alg.mul_basis(a, b));
            ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", m.label(k), w.label(a), w.label(b)))
        }),
    );
    r.record(
        "module.module_algebra",
        "(rr')◁a = (r◁a_(1))(r'◁a_(2))",
        first_failure(d * d * n, |t| {
            let (k, l, a) = (t / (d * n), (t / n) % d, t % n);
            let lhs = act(m.mul_basis(k, l), &e(a));
            let mut rhs = Accum::new();
            for (i, j, c) in w.terms2(w.delta.column(a)) {
                rhs.add_scaled(c, &m.mul(&act(&e(k), &e(i)), &act(&e(l), &e(j))));
            }
            ensure(lhs == rhs.finish(), || format!("{} ⊗ {} ⊗ {}", m.label(k), m.label(l), w.label(a)))
        }),
    );
    r.record(
        "module.e_action",
        "μ((r⊗r')◁E) = rr'",
        first_failure(d * d, |t| {
            let (k, l) = (t / d, t % d);
            let mut acc = Accum::new();
            for (i, j, c) in w.terms2(&w.e) {
                acc.add_scaled(c, &m.mul(&act(&e(k), &e(i)), &act(&e(l), &e(j))));
            }
            ensure(&acc.finish() == m.mul_basis(k, l), || format!("{} ⊗ {}", m.label(k), m.label(l)))
        }),
    );
    r.canonicalize();
    r
}

impl PairActions {
    pub fn verify(&self, p: &WmhaPairing) -> Report {
        let (na, nb) = (p.na(), p.nb());
        let (a, b) = (&p.a, &p.b);
        let mut r = Report::new();
        r.merge("actions.rhd_ab", module_algebra_check(a, &b.alg, &self.rhd_ab));
        r.merge("actions.rhd_ba", module_algebra_check(b, &a.alg, &self.rhd_ba));
        r.merge("actions.lhd_ba", right_module_algebra_check(a, &b.alg, &self.lhd_ba));
        r.merge("actions.lhd_ab", right_module_algebra_check(b, &a.alg, &self.lhd_ab));

        let faithful = |m: &LinearMap, acting: usize, target: usize, acting_first: bool| {
            // t -> (x acting on t)_x is injective
            let stacked = LinearMap::from_fn(acting * target, target, |t| {
                let mut acc = Accum::new();
                for x in 0..acting {
                    let col = if acting_first { x * target + t } else { t * acting + x };
                    for (u, c) in m.column(col).iter() {
                        acc.add_ref(x * target + u, c);
                    }
                }
                acc.finish()
            });
            stacked.rank() == target
        };
        r.record(
            "actions.faithful",
            "each action separates points of the module",
            ensure(
                faithful(&self.rhd_ab, na, nb, true)
                    && faithful(&self.lhd_ba, na, nb, false)
                    && faithful(&self.rhd_ba, nb, na, true)
                    && faithful(&self.lhd_ab, nb, na, false),
                || "an action has a nonzero annihilated element".into(),
            ),
        );

        let e = SparseVec::unit;
        r.record(
            "actions.pair_left_a",
            "⟨aa', b⟩ = ⟨a, a'▷b⟩",
            first_failure(na * na * nb, |t| {
                let (x, y, z) = (t / (na * nb), (t / nb) % na, t % nb);
                let lhs = p.pair_vec(a.alg.mul_basis(x, y), &e(z));
                let rhs = p.pair_vec(&e(x), self.rhd_ab.column(y * nb + z));
                ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", a.label(x), a.label(y), b.label(z)))
            }),
        );
        r.record(
            "actions.pair_right_a",
            "⟨a'a, b⟩ = ⟨a, b◁a'⟩",
            first_failure(na * na * nb, |t| {
                let (x, y, z) = (t / (na * nb), (t / nb) % na, t % nb);
                let lhs = p.pair_vec(a.alg.mul_basis(y, x), &e(z));
                let rhs = p.pair_vec(&e(x), self.lhd_ba.column(z * na + y));
                ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", a.label(x), a.label(y), b.label(z)))
            }),
        );
        r.record(
            "actions.pair_left_b",
            "⟨a, bb'⟩ = ⟨a◁b, b'⟩",
            first_failure(na * nb * nb, |t| {
                let (x, y, z) = (t / (nb * nb), (t / nb) % nb, t % nb);
                let lhs = p.pair_vec(&e(x), b.alg.mul_basis(y, z));
                let rhs = p.pair_vec(self.lhd_ab.column(x * nb + y), &e(z));
                ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", a.label(x), b.label(y), b.label(z)))
            }),
        );
        r.record(
            "actions.pair_right_b",
            "⟨a, b'b⟩ = ⟨b▷a, b'⟩",
            first_failure(na * nb * nb, |t| {
                let (x, y, z) = (t / (nb * nb), (t / nb) % nb, t % nb);
                let lhs = p.pair_vec(&e(x), b.alg.mul_basis(z, y));
                let rhs = p.pair_vec(self.rhd_ba.column(y * na + x), &e(z));
                ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", a.label(x), b.label(y), b.label(z)))
            }),
        );
        r.record(
            "actions.bimodule_a",
            "(b▷a)◁b' = b▷(a◁b')",
            first_failure(nb * na * nb, |t| {
                let (x, y, z) = (t / (na * nb), (t / nb) % na, t % nb);
                let lhs = apply_bilinear(&self.lhd_ab, self.rhd_ba.column(x * na + y), &e(z), nb);
                let rhs = apply_bilinear(&self.rhd_ba, &e(x), self.lhd_ab.column(y * nb + z), na);
                ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", b.label(x), a.label(y), b.label(z)))
            }),
        );
        r.record(
            "actions.bimodule_b",
            "(a▷b)◁a' = a▷(b◁a')",
            first_failure(na * nb * na, |t| {
                let (x, y, z) = (t / (nb * na), (t / na) % nb, t % na);
                let lhs = apply_bilinear(&self.lhd_ba, self.rhd_ab.column(x * nb + y), &e(z), na);
                let rhs = apply_bilinear(&self.rhd_ab, &e(x), self.lhd_ba.column(y * na + z), nb);
                ensure(lhs == rhs, || format!("{} ⊗ {} ⊗ {}", a.label(x), b.label(y), a.label(z)))
            }),
        );
        r
    }
}

fn verify_r_maps(p: &WmhaPairing) -> Report {
    let (na, nb) = (p.na(), p.nb());
    let nab = na * nb;
    let (a, b) = (&p.a, &p.b);
    let mut r = Report::new();
    let rr = p.map_r();
    let rp = p.map_r_prime();
    let [rt, rtp, ro, rop] = p.map_r_variants();
    let wit = |k: usize| p.label_ab(k);
    let wit_ba = |k: usize| p.label_ba(k);

    // left legs of R(x)(a⊗b) and right legs of (a⊗b)R(x)
    let legs = |m: &LinearMap, n1: usize, n2: usize| {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for col in m.columns() {
            let mut s1: Vec<Accum> = (0..n2).map(|_| Accum::new()).collect();
            let mut s2: Vec<Accum> = (0..n1).map(|_| Accum::new()).collect();
            for (k, c) in col.iter() {
                s1[k % n2].add_ref(k / n2, c);
                s2[k / n2].add_ref(k % n2, c);
            }
            first.extend(s1.into_iter().map(Accum::finish));
            second.extend(s2.into_iter().map(Accum::finish));
        }
        (Subspace::span_owned(n1, first).dim(), Subspace::span_owned(n2, second).dim())
    };
    let (l1, l2) = legs(&rr, na, nb);
    r.record(
        "r.full",
        "left legs of R span A and right legs span B",
        ensure(l1 == na && l2 == nb, || format!("leg spans of dimension {l1} and {l2}")),
    );
    let (l1, l2) = legs(&rt, nb, na);
    r.record(
        "r_tilde.full",
        "left legs of R̃ span B and right legs span A",
        ensure(l1 == nb && l2 == na, || format!("leg spans of dimension {l1} and {l2}")),
    );
    let range = rr.range();
    let eb_span = Subspace::span_owned(nab, p.e_b_action_span());
    let ea_span = Subspace::span_owned(nab, p.e_a_action_span());
    r.record(
        "r.range",
        "Range(R) = E^B▷(A⊗B) = (A⊗B)◁E^A",
        ensure(range.equals(&eb_span) && range.equals(&ea_span), || {
            format!(
                "dimensions {} (R), {} (E^B▷), {} (◁E^A)",
                range.dim(),
                eb_span.dim(),
                ea_span.dim()
            )
        }),
    );
    for (tag, t, g) in [("r", &rr, &rp), ("r_tilde", &rt, &rtp), ("r_opcop", &ro, &rop)] {
        match generalized_inverse_check(t, g) {
            Ok(rep) => {
                let tpt = rep.get("generalized_inverse.tpt").map(|c| c.witness.clone());
                let ptp = rep.get("generalized_inverse.ptp").map(|c| c.witness.clone());
                r.record(
                    &format!("{tag}.generalized_inverse"),
                    "RR'R = R and R'RR' = R'",
                    match (tpt, ptp) {
                        (Some(None), Some(None)) => Ok(()),
                        (x, y) => Err(format!("{:?} {:?}", x.flatten(), y.flatten())),
                    },
                );
            }
            Err(e) => r.record(&format!("{tag}.generalized_inverse"), "RR'R = R", Err(e.to_string())),
        }
    }
    let n = rr.compose(&rp);
    let q = rp.compose(&rr);
    let id = LinearMap::identity(nab);
    let comp = id.sub(&q);
    r.record("r.n_idempotent", "N = RR' is idempotent", same(&n.compose(&n), &n, wit));
    r.record("r.q_idempotent", "Q = R'R is idempotent", same(&q.compose(&q), &q, wit));
    r.record(
        "r.range_n",
        "Range(N) = Range(R)",
        ensure(n.range().equals(&range), || format!("ranks {} and {}", n.rank(), range.dim())),
    );
    let rank_comp = comp.rank();
    r.record(
        "r.kernel",
        "Ker(R) = Range(1 - Q)",
        ensure(rr.compose(&comp).is_zero() && rank_comp + range.dim() == nab, || {
            format!("rank(1 - Q) = {rank_comp}, nullity {}", nab - range.dim())
        }),
    );
    r.record(
        "r.unique_inverse",
        "R' = QR'N is fixed by the projections onto Range(R) and along Ker(R)",
        same(&q.compose(&rp).compose(&n), &rp, wit),
    );

    let acts = p.actions();
    r.record(
        "r.left_module",
        "R(a⊗bb') = b▷R(a⊗b')",
        first_failure(na * nb * nb, |t| {
            let (x, y, z) = (t / (nb * nb), (t / nb) % nb, t % nb);
            let lhs = rr.apply(&crate::linalg::tensor(&SparseVec::unit(x), b.alg.mul_basis(y, z), nb));
            let mut rhs = Accum::new();
            for (k, c) in rr.column(x * nb + z).iter() {
                let (u, v) = (k / nb, k % nb);
                for (i, j, d) in b.terms2(b.delta.column(y)) {
                    let left = acts.rhd_ba.column(i * na + u);
                    let right = b.alg.mul_basis(j, v);
                    for (s, ls) in left.iter() {
                        for (t2, rt2) in right.iter() {
                            rhs.add(s * nb + t2, c * d * ls * rt2);
                        }
                    }
                }
            }
            ensure(lhs == rhs.finish(), || {
                format!("{} ⊗ {} ⊗ {}", a.label(x), b.label(y), b.label(z))
            })
        }),
    );
    let ia = LinearMap::identity(na);
    let ib = LinearMap::identity(nb);
    r.record(
        "r.delta_a",
        "(Δ_A⊗id)R = (id⊗R)(Δ_A⊗id)",
        same(
            &a.delta.kron(&ib).compose(&rr),
            &ia.kron(&rr).compose(&a.delta.kron(&ib)),
            wit,
        ),
    );
    r.record(
        "r.delta_b",
        "(id⊗Δ_B)R = (R⊗id)(id⊗Δ_B)",
        same(
            &ia.kron(&b.delta).compose(&rr),
            &rr.kron(&ib).compose(&ia.kron(&b.delta)),
            wit,
        ),
    );
    r.record(
        "r_tilde.left_module",
        "R̃(b⊗aa') = a▷R̃(b⊗a')",
        first_failure(nb * na * na, |t| {
            let (x, y, z) = (t / (na * na), (t / na) % na, t % na);
            let lhs = rt.apply(&crate::linalg::tensor(&SparseVec::unit(x), a.alg.mul_basis(y, z), na));
            let mut rhs = Accum::new();
            for (k, c) in rt.column(x * na + z).iter() {
                let (u, v) = (k / na, k % na);
                for (i, j, d) in a.terms2(a.delta.column(y)) {
                    let left = acts.rhd_ab.column(i * nb + u);
                    let right = a.alg.mul_basis(j, v);
                    for (s, ls) in left.iter() {
                        for (t2, rt2) in right.iter() {
                            rhs.add(s * na + t2, c * d * ls * rt2);
                        }
                    }
                }
            }
            ensure(lhs == rhs.finish(), || {
                format!("{} ⊗ {} ⊗ {}", b.label(x), a.label(y), a.label(z))
            })
        }),
    );
    r.record(
        "r_tilde.delta_b",
        "(Δ_B⊗id)R̃ = (id⊗R̃)(Δ_B⊗id)",
        same(
            &b.delta.kron(&ia).compose(&rt),
            &ib.kron(&rt).compose(&b.delta.kron(&ia)),
            wit_ba,
        ),
    );
    r.record(
        "r_tilde.delta_a",
        "(id⊗Δ_A)R̃ = (R̃⊗id)(id⊗Δ_A)",
        same(
            &ib.kron(&a.delta).compose(&rt),
            &rt.kron(&ia).compose(&ib.kron(&a.delta)),
            wit_ba,
        ),
    );
    r.record(
        "r.commutes_with_r_tilde",
        "(id⊗R)(R̃⊗id) = (R̃⊗id)(id⊗R)",
        same(
            &ib.kron(&rr).compose(&rt.kron(&ib)),
            &rt.kron(&ib).compose(&ib.kron(&rr)),
            |k| format!("index {k}"),
        ),
    );
    let sa = &a.antipode;
    let sai = a.antipode_inv.as_ref().unwrap();
    let sb = &b.antipode;
    let sbi = b.antipode_inv.as_ref().unwrap();
    let s_plus = sa.kron(sbi);
    let s_minus = sai.kron(sb);
    r.record(
        "r_opcop.antipode",
        "R^{op,cop}(S^±1⊗S^∓1) = (S^±1⊗S^∓1)R",
        same(&ro.compose(&s_plus), &s_plus.compose(&rr), wit)
            .and_then(|_| same(&ro.compose(&s_minus), &s_minus.compose(&rr), wit)),
    );
    r.record(
        "r_opcop.commutes",
        "R R^{op,cop} = R^{op,cop} R",
        same(&rr.compose(&ro), &ro.compose(&rr), wit),
    );
    if let (Some(sta), Some(stb)) = (a.alg.star_table(), b.alg.star_table()) {
        let star = |x: &SparseVec| star2(x, sta, stb, nb);
        let check = |m: &LinearMap, m2: &LinearMap| {
            first_failure(nab, |k| {
                let lhs = m.apply(&star(&SparseVec::unit(k)));
                let rhs = star(m2.column(k));
                ensure(lhs == rhs, || p.label_ab(k))
            })
        };
        r.record(
            "r.star",
            "R(*⊗*) = (*⊗*)R' and R'(*⊗*) = (*⊗*)R",
            check(&rr, &rp).and_then(|_| check(&rp, &rr)),
        );
        r.record(
            "r_opcop.star",
            "R^{op,cop}(*⊗*) = (*⊗*)R^{op,cop}' and conversely",
            check(&ro, &rop).and_then(|_| check(&rop, &ro)),
        );
    }
    r.note("rank_r", range.dim());
    r
}
