//! Acceptance gate: one PASS/FAIL line per criterion, exact equality throughout.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use wmha_core::double::{
    build_double, example_checks, smash_comparison, verify_double, verify_double_integrals, yd_correspondence,
    DoubleAlgebra,
};
use wmha_core::exactnum::q;
use wmha_core::groupoid::FiniteGroupoid;
use wmha_core::linalg::{Accum, SparseVec};
use wmha_core::pairing::{verify_pairing, WmhaPairing};
use wmha_core::qt::{canonical_element, canonical_from_integrals, cointegrals, drinfeld_element, verify_qt};
use wmha_core::report::Report;
use wmha_core::wmha::{function_algebra, groupoid_algebra, verify_wmha, WeakHopf};

fn zoo() -> Vec<(&'static str, FiniteGroupoid)> {
    let z2 = FiniteGroupoid::cyclic(2).unwrap();
    vec![
        ("trivial", FiniteGroupoid::trivial()),
        ("z2", z2.clone()),
        ("z3", FiniteGroupoid::cyclic(3).unwrap()),
        ("s3", FiniteGroupoid::symmetric(3).unwrap()),
        ("pair2", FiniteGroupoid::pair(2).unwrap()),
        ("pair3", FiniteGroupoid::pair(3).unwrap()),
        ("z2+1", FiniteGroupoid::disjoint_union(&[z2, FiniteGroupoid::trivial()]).unwrap()),
    ]
}

/// The reasons a criterion fails, and lines worth printing either way.
#[derive(Default)]
struct Verdict {
    fails: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn report(&mut self, what: &str, r: &Report) {
        if let Some(c) = r.failures().next() {
            self.fails.push(format!("{what}: {} ({})", c.id, c.witness.as_deref().unwrap_or("")));
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fails.push(what());
        }
    }

    fn within(&mut self, what: &str, start: Instant, budget: Duration) {
        let t = start.elapsed();
        self.require(t <= budget, || format!("{what}: {t:?} over the {budget:?} budget"));
    }
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::default();
    for (name, g) in zoo() {
        let t = Instant::now();
        for (side, w) in [("function", function_algebra(&g)), ("group", groupoid_algebra(&g))] {
            v.report(&format!("{name}/{side}"), &verify_wmha(&w));
        }
        v.within(name, t, Duration::from_secs(10));
    }
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::default();
    for (name, g) in zoo() {
        let t = Instant::now();
        let r = verify_pairing(&WmhaPairing::canonical(&g));
        v.report(name, &r);
        for id in ["r.generalized_inverse", "r.range"] {
            v.require(r.get(id).is_some(), || format!("{name}: {id} was not run"));
        }
        v.within(name, t, Duration::from_secs(30));
    }
    v
}

fn canonical_double(g: &FiniteGroupoid) -> DoubleAlgebra {
    build_double(&WmhaPairing::canonical(g)).unwrap()
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::default();
    for (name, g) in zoo() {
        let d = canonical_double(&g);
        for c in example_checks(&d, &g).failures() {
            v.fails.push(format!("{name}: {} ({})", c.id, c.witness.as_deref().unwrap_or("")));
        }
    }
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::default();
    for (name, g) in zoo() {
        let t = Instant::now();
        let r = verify_double(&canonical_double(&g));
        v.report(name, &r);
        for id in ["double.antipode.square", "hopf.wmha.star_delta", "double.star.embeddings"] {
            v.require(r.get(id).is_some(), || format!("{name}: {id} was not run"));
        }
        v.within(name, t, Duration::from_secs(120));
    }
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::default();
    for (name, g) in zoo() {
        let r = verify_double_integrals(&canonical_double(&g));
        v.report(name, &r);
        for id in ["double.integrals.right", "double.integrals.eps_t", "double.integrals.faithful"] {
            v.require(r.status_of(id).is_some(), || format!("{name}: {id} was not run"));
        }
    }
    v
}

fn index_of(w: &WeakHopf, label: &str) -> usize {
    w.alg.labels().iter().position(|l| l == label).unwrap_or_else(|| panic!("no basis element {label}"))
}

/// `D(G)` for a group through the closed product
/// `(δ_x⊗λ_p)(δ_y⊗λ_q) = [x = pyp⁻¹] δ_x⊗λ_pq`, on pairs `(x, p)`.
struct GroupDouble<'a> {
    g: &'a FiniteGroupoid,
}

type Elem = BTreeMap<(usize, usize), i64>;

impl GroupDouble<'_> {
    fn op(&self, p: usize, q: usize) -> usize {
        self.g.compose(p, q).expect("group")
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for (&(x, p), c) in a {
            for (&(y, q), d) in b {
                if x == self.op(self.op(p, y), self.g.inverse(p)) {
                    *out.entry((x, self.op(p, q))).or_default() += c * d;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn one(&self) -> Elem {
        let e = self.g.identity(0).unwrap();
        (0..self.g.num_arrows()).map(|x| ((x, e), 1)).collect()
    }

    /// `u = Σ_p S(1⊗λ_p)(δ_p⊗1)` with `S(1⊗λ_p) = 1⊗λ_p⁻¹`.
    fn drinfeld_u(&self) -> Elem {
        let n = self.g.num_arrows();
        let e = self.g.identity(0).unwrap();
        let mut u = Elem::new();
        for p in 0..n {
            let s = (0..n).map(|x| ((x, self.g.inverse(p)), 1)).collect();
            for (k, c) in self.mul(&s, &Elem::from([((p, e), 1)])) {
                *u.entry(k).or_default() += c;
            }
        }
        u
    }

    fn embed(&self, h: &WeakHopf, a: &Elem) -> SparseVec {
        let mut acc = Accum::new();
        for (&(x, p), &c) in a {
            acc.add(index_of(h, &format!("δ_{}⊗λ_{}", self.g.arrow_id(x), self.g.arrow_id(p))), q(c));
        }
        acc.finish()
    }
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::default();
    for (name, g) in zoo() {
        let d = canonical_double(&g);
        let c = match canonical_element(&d) {
            Ok(c) => c,
            Err(e) => {
                v.fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        v.report(name, &c.report);
        let r = verify_qt(&c.qt);
        v.report(name, &r);
        match drinfeld_element(&c.qt) {
            Ok(de) => {
                v.report(name, &de.report);
                for id in ["drinfeld.inverse", "drinfeld.s2", "drinfeld.s4"] {
                    v.require(de.report.status_of(id).is_some(), || format!("{name}: {id} was not run"));
                }
            }
            Err(e) => v.fails.push(format!("{name}: {e}")),
        }
        if name == "s3" {
            let pairs = r.info.get("ybe_noncommuting_pairs").and_then(Value::as_array).map_or(0, Vec::len);
            v.require(pairs > 0, || "s3: every YBE triple commutes".into());
        }
    }

    let g = FiniteGroupoid::cyclic(2).unwrap();
    let oracle = GroupDouble { g: &g };
    let u = oracle.drinfeld_u();
    let (e, s) = (g.arrow_index("e").unwrap(), g.arrow_index("g").unwrap());
    v.require(u == Elem::from([((e, e), 1), ((s, s), 1)]), || format!("z2 oracle: u = {u:?}"));
    v.require(oracle.mul(&u, &u) == oracle.one(), || "z2 oracle: u² ≠ 1".into());
    let c = canonical_element(&canonical_double(&g)).unwrap();
    let h = &c.qt.host;
    let de = drinfeld_element(&c.qt).unwrap();
    v.require(de.u == oracle.embed(h, &u), || format!("z2: u = {}", h.show(&de.u)));
    v.require(h.mul(&de.u, &de.u) == h.one(), || "z2: u² ≠ 1".into());
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::default();
    for name in ["z2", "pair2"] {
        let g = if name == "z2" { FiniteGroupoid::cyclic(2).unwrap() } else { FiniteGroupoid::pair(2).unwrap() };
        // δ_p ∈ A is the dual basis of λ_p ∈ B, so A⊗B and Â⊗B share indices
        let c = canonical_element(&canonical_double(&g)).unwrap();
        let w = groupoid_algebra(&g);
        let ic = canonical_from_integrals(&w).unwrap();
        v.report(&format!("{name} integrals"), &ic.report);
        v.require(ic.r == c.tensor, || format!("{name}: integral construction differs from the canonical element"));
        let ci = cointegrals(&w).unwrap();
        v.report(&format!("{name} cointegral"), &ci.report);
        match &ci.canonical {
            Some(r) => v.require(*r == c.tensor, || format!("{name}: cointegral construction differs from the canonical element")),
            None => v.fails.push(format!("{name}: no cointegral construction")),
        }
    }
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::default();
    let z2 = FiniteGroupoid::cyclic(2).unwrap();
    let dual = |g: &FiniteGroupoid| build_double(&WmhaPairing::dual_pairing(&function_algebra(g)).unwrap().transposed()).unwrap();
    match yd_correspondence(&dual(&z2)) {
        Ok(c) => {
            v.report("z2", &c.report);
            v.require(c.yd.len() == 4 && c.double.len() == 4, || {
                format!("z2: {} Yetter-Drinfeld modules, {} D-modules", c.yd.len(), c.double.len())
            });
            v.require(c.is_bijection(), || "z2: not a bijection".into());
        }
        Err(e) => v.fails.push(format!("z2: {e}")),
    }
    for (name, g) in [("z2", z2.clone()), ("pair2", FiniteGroupoid::pair(2).unwrap())] {
        v.report(&format!("{name} smash"), &smash_comparison(&dual(&g)));
    }
    v
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Runs the binary and returns its exit code with the failing checks.
fn run_cli(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_wmha")).arg("--json").args(args).output().expect("binary runs");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let failing = report["checks"]
        .as_array()
        .map(|cs| cs.iter().filter(|c| c["status"] == "fail").cloned().collect())
        .unwrap_or_default();
    (out.status.code(), failing)
}

fn rewrite(path: &Path, edit: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    edit(&mut v);
    std::fs::write(path, v.to_string()).unwrap();
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::default();
    let dir = tempfile::tempdir().unwrap();
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let hopf = |tag: &str| {
        let p = dir.path().join(format!("{tag}.json"));
        let (code, _) = run_cli(&["wha", &s(&fixture("s3.json")), "--side", "group", "--out", &s(&p)]);
        assert_eq!(code, Some(0));
        p
    };
    let pairing = dir.path().join("pairing.json");
    assert_eq!(run_cli(&["pairing", &s(&fixture("z3.json")), "--out", &s(&pairing)]).0, Some(0));

    let antipode = hopf("antipode");
    rewrite(&antipode, |w| {
        let col = &mut w["antipode"]["columns"][1];
        let k: usize = col.as_object().unwrap().keys().next().unwrap().parse().unwrap();
        *col = json!({ ((k + 1) % 6).to_string(): "1" });
    });
    let e = hopf("e");
    rewrite(&e, |w| w["e"]["1"] = json!("1"));
    let delta = hopf("delta");
    rewrite(&delta, |w| w["delta"]["columns"][1]["2"] = json!("1"));
    rewrite(&pairing, |p| p["form"]["columns"][1] = json!({"1": "2"}));

    let cases: [(&str, &str, Vec<String>); 5] = [
        ("wrong antipode entry", "wmha.antipode_identity_1", vec!["wha".into(), s(&antipode), "--verify".into()]),
        ("broken E", "wmha.e_idempotent", vec!["wha".into(), s(&e), "--verify".into()]),
        ("perturbed pairing form", "pairing.product_a", vec!["pairing".into(), s(&pairing)]),
        ("non-coassociative Δ", "wmha.coassociative", vec!["wha".into(), s(&delta), "--verify".into()]),
        (
            "broken compose table",
            "groupoid.compose_domain",
            vec!["groupoid".into(), "validate".into(), s(&fixture("broken_compose.json"))],
        ),
    ];
    for (what, id, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, failing) = run_cli(&args);
        v.require(code.is_some_and(|c| c != 0), || format!("{what}: exit code {code:?}"));
        let hit = failing.iter().find(|c| c["id"] == id);
        match hit.and_then(|c| c["witness"].as_str()) {
            Some(w) if !w.is_empty() => {
                v.notes.push(format!("{what}: {id} ({w}), {} checks fail", failing.len()))
            }
            _ => v.fails.push(format!("{what}: {id} did not fail with a witness")),
        }
    }
    v
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("WMHA certification on the zoo, both algebras", criterion_1),
        ("pairing certification on the zoo", criterion_2),
        ("double closed forms of the groupoid example", criterion_3),
        ("double passes the WMHA suite", criterion_4),
        ("integrals of the double", criterion_5),
        ("quasitriangularity and the Drinfeld element", criterion_6),
        ("canonical element agreement on z2 and pair(2)", criterion_7),
        ("Yetter-Drinfeld correspondence and smash comparison", criterion_8),
        ("mutation sensitivity", criterion_9),
    ];
    let mut failed = 0;
    for (k, (what, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        let tag = if v.fails.is_empty() { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {what} [{:.2?}]", k + 1, t.elapsed());
        for line in v.fails.iter().chain(&v.notes) {
            println!("      {line}");
        }
        failed += usize::from(!v.fails.is_empty());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
