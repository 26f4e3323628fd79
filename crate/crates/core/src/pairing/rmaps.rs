use crate::linalg::{Accum, LinearMap, SparseVec};

use super::WmhaPairing;

/// Which contraction of `Δ_A(a)⊗Δ_B(b)` to form.
#[derive(Clone, Copy)]
enum Leg {
    /// `a_(1) ⟨a_(2), b_(1)⟩ ⊗ b_(2)`
    Plain,
    /// `a_(2) ⟨a_(1), b_(2)⟩ ⊗ b_(1)`
    OpCop,
}

impl WmhaPairing {
    fn r_family(&self, leg: Leg, inverse: bool) -> LinearMap {
        let (na, nb) = (self.na(), self.nb());
        LinearMap::from_fn_par(na * nb, na * nb, |k| {
            let (a, b) = (k / nb, k % nb);
            let mut acc = Accum::new();
            for (i, j, c) in self.a.terms2(self.a.delta.column(a)) {
                for (p, q, d) in self.b.terms2(self.b.delta.column(b)) {
                    let (paired_a, paired_b, keep_a, keep_b) = match leg {
                        Leg::Plain => (j, p, i, q),
                        Leg::OpCop => (i, q, j, p),
                    };
                    let f = if inverse {
                        self.pair_sinv(paired_a, paired_b)
                    } else {
                        self.pair(paired_a, paired_b)
                    };
                    if !f.is_zero() {
                        acc.add(keep_a * nb + keep_b, c * d * f);
                    }
                }
            }
            acc.finish()
        })
    }

    /// `R(a⊗b) = a_(1) ⟨a_(2), b_(1)⟩ ⊗ b_(2)`.
    pub fn map_r(&self) -> LinearMap {
        self.r_family(Leg::Plain, false)
    }

    /// `R'(a⊗b) = a_(1) ⟨S^{-1}(a_(2)), b_(1)⟩ ⊗ b_(2)`.
    pub fn map_r_prime(&self) -> LinearMap {
        self.r_family(Leg::Plain, true)
    }

    /// `R^{op,cop}(a⊗b) = a_(2) ⟨a_(1), b_(2)⟩ ⊗ b_(1)`.
    pub fn map_r_opcop(&self) -> LinearMap {
        self.r_family(Leg::OpCop, false)
    }

    /// `R^{op,cop}'(a⊗b) = a_(2) ⟨S^{-1}(a_(1)), b_(2)⟩ ⊗ b_(1)`.
    pub fn map_r_opcop_prime(&self) -> LinearMap {
        self.r_family(Leg::OpCop, true)
    }

    fn r_tilde_family(&self, inverse: bool) -> LinearMap {
        let (na, nb) = (self.na(), self.nb());
        LinearMap::from_fn_par(nb * na, nb * na, |k| {
            let (b, a) = (k / na, k % na);
            let mut acc = Accum::new();
            for (p, q, d) in self.b.terms2(self.b.delta.column(b)) {
                for (i, j, c) in self.a.terms2(self.a.delta.column(a)) {
                    let f = if inverse { self.pair_sinv(i, q) } else { self.pair(i, q) };
                    if !f.is_zero() {
                        acc.add(p * na + j, c * d * f);
                    }
                }
            }
            acc.finish()
        })
    }

    /// `R̃(b⊗a) = b_(1) ⟨a_(1), b_(2)⟩ ⊗ a_(2)` on `B⊗A`.
    pub fn map_r_tilde(&self) -> LinearMap {
        self.r_tilde_family(false)
    }

    /// `R̃'(b⊗a) = b_(1) ⟨S^{-1}(a_(1)), b_(2)⟩ ⊗ a_(2)`.
    pub fn map_r_tilde_prime(&self) -> LinearMap {
        self.r_tilde_family(true)
    }

    /// `(R̃, R̃', R^{op,cop}, R^{op,cop}')`.
    pub fn map_r_variants(&self) -> [LinearMap; 4] {
        [
            self.map_r_tilde(),
            self.map_r_tilde_prime(),
            self.map_r_opcop(),
            self.map_r_opcop_prime(),
        ]
    }

    /// `E^B▷(A⊗B)`: spanned by `E^B_1▷a ⊗ E^B_2 b`.
    pub fn e_b_action_span(&self) -> Vec<SparseVec> {
        let (na, nb) = (self.na(), self.nb());
        let acts = self.actions();
        (0..na * nb)
            .map(|k| {
                let (a, b) = (k / nb, k % nb);
                let mut acc = Accum::new();
                for (p, q, c) in self.b.terms2(&self.b.e) {
                    let x = acts.rhd_ba.column(p * na + a);
                    let y = self.b.alg.mul_basis(q, b);
                    for (u, xu) in x.iter() {
                        for (v, yv) in y.iter() {
                            acc.add(u * nb + v, c * xu * yv);
                        }
                    }
                }
                acc.finish()
            })
            .collect()
    }

    /// `(A⊗B)◁E^A`: spanned by `a E^A_1 ⊗ b◁E^A_2`.
    pub fn e_a_action_span(&self) -> Vec<SparseVec> {
        let (na, nb) = (self.na(), self.nb());
        let acts = self.actions();
        (0..na * nb)
            .map(|k| {
                let (a, b) = (k / nb, k % nb);
                let mut acc = Accum::new();
                for (p, q, c) in self.a.terms2(&self.a.e) {
                    let x = self.a.alg.mul_basis(a, p);
                    let y = acts.lhd_ba.column(b * na + q);
                    for (u, xu) in x.iter() {
                        for (v, yv) in y.iter() {
                            acc.add(u * nb + v, c * xu * yv);
                        }
                    }
                }
                acc.finish()
            })
            .collect()
    }
}
