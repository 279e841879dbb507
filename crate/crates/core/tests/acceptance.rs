//! One PASS/FAIL line per acceptance criterion, written to stderr
//! directly so it shows without `--nocapture`. Every comparison is exact;
//! the only tolerances are the wall-clock limits below.
//!
//! Criteria listed in `EXPECTED_FAIL` are reported honestly as FAIL and the
//! test asserts that they still fail, so a change in either direction is seen.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superpi_core::exactlin::Rat;
use superpi_core::report::{ClaimResult, Report, Status, SuiteConfig};
use superpi_core::suites::run_suite;
use superpi_core::supercomm::{f_vars, SCPoly};

const LIMIT_SECONDS: [(u32, f64); 9] = [(1, 5.0), (2, 10.0), (3, 300.0), (4, 1800.0), (5, 120.0), (6, 1200.0), (7, 600.0), (8, 120.0), (9, 120.0)];

/// Odd k: the numerator of F(k) is not divisible by the x-differences.
const EXPECTED_FAIL: &[u32] = &[2];

const SC_CASES: usize = 10_000;

struct Suites {
    reports: BTreeMap<&'static str, (Report, f64)>,
}

impl Suites {
    fn run(names: &[&'static str]) -> Suites {
        let cfg = SuiteConfig::default();
        let mut reports = BTreeMap::new();
        for &n in names {
            let t = Instant::now();
            let r = run_suite(n, &cfg).unwrap();
            reports.insert(n, (r, t.elapsed().as_secs_f64()));
        }
        Suites { reports }
    }

    fn claim(&self, suite: &str, id: &str) -> Option<&ClaimResult> {
        self.reports[suite].0.claim(id)
    }

    fn claims<'a>(&'a self, suite: &str, prefix: &'a str) -> impl Iterator<Item = &'a ClaimResult> + 'a {
        self.reports[suite].0.claims.iter().filter(move |c| c.claim_id.starts_with(prefix))
    }

    fn secs(&self, suite: &str) -> f64 {
        self.reports[suite].1
    }

    fn secs_of(&self, suite: &str, prefix: &str) -> f64 {
        self.claims(suite, prefix).map(|c| c.wall_time).sum()
    }
}

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Check {
        Check { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn verified(&mut self, s: &Suites, suite: &str, id: &str) {
        match s.claim(suite, id) {
            Some(c) if c.detail.is_empty() => self.require(c.status == Status::Verified, format!("{id}: {}", c.status.as_str())),
            Some(c) => self.require(c.status == Status::Verified, format!("{id}: {} ({})", c.status.as_str(), c.detail)),
            None => self.require(false, format!("{id}: missing")),
        }
    }

    fn all_ok(&mut self, s: &Suites, suite: &str, prefix: &str, min: usize) {
        let cs: Vec<&ClaimResult> = s.claims(suite, prefix).collect();
        self.require(cs.len() >= min, format!("{prefix}*: {} claims, expected at least {min}", cs.len()));
        for c in cs {
            self.require(c.status.is_ok(), format!("{}: {}", c.claim_id, c.status.as_str()));
        }
    }
}

fn random_sc(rng: &mut ChaCha8Rng) -> SCPoly {
    use f_vars::*;
    let vars = [x1(), x2(), x1p(), x2p(), y1(), y2(), y1p(), y2p()];
    let mut p = int(0);
    for _ in 0..rng.gen_range(0..4) {
        let mut m = int(rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(0..4) {
            m = &m * &vars[rng.gen_range(0..vars.len())];
        }
        p = &p + &m;
    }
    p
}

fn supercommutative_laws() -> Check {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = [0usize; 3];
    for _ in 0..SC_CASES {
        let (a, b, d) = (random_sc(&mut rng), random_sc(&mut rng), random_sc(&mut rng));
        if &(&a * &b) * &d != &a * &(&b * &d) {
            bad[0] += 1;
        }
        let (pa, pb) = (rng.gen_range(0..2u32), rng.gen_range(0..2u32));
        let (ha, hb) = (a.z2_part(pa), b.z2_part(pb));
        let sign = if pa * pb == 1 { Rat::from_int(-1) } else { Rat::from_int(1) };
        if &ha * &hb != (&hb * &ha).scale(&sign) {
            bad[1] += 1;
        }
        let n = rng.gen_range(0..5u32);
        let mut rhs = SCPoly::zero(a.alphabet());
        for i in 0..=n {
            rhs = &rhs + &(&a.y_degree_component(i) * &b.y_degree_component(n - i));
        }
        if (&a * &b).y_degree_component(n) != rhs {
            bad[2] += 1;
        }
    }
    for (name, k) in ["associativity", "Koszul signs", "grading"].iter().zip(bad) {
        c.require(k == 0, format!("{name}: {k} of {SC_CASES} cases fail"));
    }
    c
}

#[test]
fn acceptance() {
    let all = ["relations", "identities", "s4-sweep", "basis", "pi-equivalence", "consequences", "two-variable", "popov"];
    let s = Suites::run(&all);
    let mut results: Vec<(u32, &str, Check, f64)> = Vec::new();

    let mut c = Check::new();
    for id in ["h_products", "h_in_annihilator", "qrs_recurrences", "q_difference", "power_closed_forms", "product_grading", "a_strongly_central"] {
        c.verified(&s, "relations", &format!("relations.{id}"));
    }
    results.push((1, "relations among h, q, r, s, powers of C1 and the grading", c, s.secs("relations")));

    let mut c = Check::new();
    c.verified(&s, "relations", "relations.ak_reconstruction");
    c.verified(&s, "relations", "relations.ak_divisible");
    results.push((2, "A(k) reconstruction with exact division for k <= 5", c, s.secs_of("relations", "relations.ak_")));

    let mut c = Check::new();
    c.all_ok(&s, "identities", "identities.span.", 3);
    c.all_ok(&s, "identities", "identities.random.", 3);
    c.verified(&s, "identities", "identities.split_algebra_s4");
    c.verified(&s, "s4-sweep", "s4_sweep.exponents");
    if let Some(e) = s.claim("s4-sweep", "s4_sweep.exponents") {
        c.require(e.dims.get("tuples") == Some(&6561) && e.dims.get("nonzero") == Some(&0), "sweep size or zeros");
    }
    for cl in s.claims("s4-sweep", "s4_sweep.internal.").filter(|cl| cl.critical) {
        c.require(cl.status == Status::Verified, format!("{}: {}", cl.claim_id, cl.status.as_str()));
    }
    results.push((3, "the three identities of F, the s4 exponent sweep and the split-algebra witness", c, s.secs("identities") + s.secs("s4-sweep")));

    let mut c = Check::new();
    let expect_codim = [(4, 8), (5, 15), (6, 24)];
    for (n, codim) in expect_codim {
        c.verified(&s, "basis", &format!("basis.pi_equal.n{n}"));
        c.verified(&s, "basis", &format!("basis.gamma_codim.n{n}"));
        if let Some(g) = s.claim("basis", &format!("basis.gamma_codim.n{n}")) {
            c.require(g.dims.get("codim") == Some(&codim) && g.dims.get("hook_sum") == Some(&codim), format!("n = {n}: codim {:?}", g.dims));
        }
    }
    results.push((4, "T(fbasis) = T(A1) on P_n and Γ_n(V) codimensions for n = 4, 5, 6", c, s.secs_of("basis", "basis.pi_equal.") + s.secs_of("basis", "basis.gamma_codim.")));

    let mut c = Check::new();
    c.all_ok(&s, "basis", "basis.nonzero.", 11);
    c.verified(&s, "popov", "popov.m11_witness.s4");
    c.verified(&s, "popov", "popov.m11_witness.commutator_of_product");
    c.all_ok(&s, "two-variable", "two_variable.dkl_nonzero.", 10);
    results.push((5, "non-identity witnesses", c, s.secs_of("basis", "basis.nonzero.") + s.secs_of("popov", "popov.m11_witness.") + s.secs_of("two-variable", "two_variable.dkl_nonzero.")));

    let mut c = Check::new();
    for id in ["contained_in_fbasis.n5", "contained_in_fbasis.n6", "vanishes_on_m11.k3", "vanishes_on_m11.k4", "young33.rows", "young33.columns"] {
        c.verified(&s, "popov", &format!("popov.{id}"));
    }
    for f in ["rows", "columns"] {
        if let Some(y) = s.claim("popov", &format!("popov.young33.{f}")) {
            c.require(y.dims.get("samples").copied().unwrap_or(0) >= 30, "fewer than 20 basis elements plus 10 random");
        }
    }
    results.push((6, "popov basis inside T(fbasis), vanishing on M11(E_k), (3,3) modules", c, s.secs("popov")));

    let mut c = Check::new();
    c.all_ok(&s, "consequences", "consequences.follows.", 14);
    c.all_ok(&s, "consequences", "consequences.not_follows.", 4);
    let displayed: Vec<&ClaimResult> = s.claims("consequences", "consequences.displayed.").collect();
    c.require(displayed.len() >= 2 * 10, "displayed equalities missing");
    c.require(displayed.iter().all(|d| !d.critical && !d.detail.is_empty()), "every displayed equality reports its level");
    c.require(displayed.iter().filter(|d| d.status == Status::Refuted).all(|d| d.witness.is_some()), "refuted equalities carry a residual");
    c.require(s.reports["consequences"].0.totals.refuted_critical == 0, "a critical claim is refuted");
    results.push((7, "consequence relations at n = 5, 6", c, s.secs_of("consequences", "consequences.displayed.") + s.secs_of("consequences", "consequences.follows.") + s.secs_of("consequences", "consequences.not_follows.")));

    let mut c = Check::new();
    c.verified(&s, "two-variable", "two_variable.h_vanishes");
    c.verified(&s, "two-variable", "two_variable.cube_vanishes");
    c.all_ok(&s, "two-variable", "two_variable.dkl_vanishes.", 8);
    c.all_ok(&s, "two-variable", "two_variable.d2l_from_h_and_d.", 4);
    results.push((8, "two-variable identities", c, s.secs_of("two-variable", "two_variable.h_") + s.secs_of("two-variable", "two_variable.cube") + s.secs_of("two-variable", "two_variable.dkl_vanishes.") + s.secs_of("two-variable", "two_variable.d2l")));

    let t = Instant::now();
    let mut c = supercommutative_laws();
    for n in 2..=7 {
        c.verified(&s, "basis", &format!("basis.gamma_dim.n{n}"));
    }
    let expected = [1u64, 2, 9, 44, 265, 1854];
    for (n, d) in (2..=7).zip(expected) {
        if let Some(g) = s.claim("basis", &format!("basis.gamma_dim.n{n}")) {
            c.require(g.dims.get("kernel_rank") == Some(&d), format!("dim Γ_{n}"));
        }
    }
    results.push((9, "dim Γ_n = D_n for n = 2..7 and supercommutative laws on 10^4 cases", c, t.elapsed().as_secs_f64() + s.secs_of("basis", "basis.gamma_dim.")));

    let mut unexpected = Vec::new();
    for (n, what, c, secs) in &results {
        let limit = LIMIT_SECONDS.iter().find(|(k, _)| k == n).unwrap().1;
        let pass = c.ok && *secs <= limit;
        let mut out = std::io::stderr().lock();
        writeln!(out, "{} criterion {n}: {what} ({secs:.1} s, limit {limit:.0} s)", if pass { "PASS" } else { "FAIL" }).unwrap();
        for note in &c.notes {
            writeln!(out, "     {note}").unwrap();
        }
        if *secs > limit {
            writeln!(out, "     over the time limit").unwrap();
        }
        if pass == EXPECTED_FAIL.contains(n) {
            unexpected.push(*n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with an unexpected outcome: {unexpected:?}");
}
