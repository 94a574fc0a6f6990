//! The acceptance matrix: one row per criterion, each reporting pass, fail
//! or skipped with a short detail.

use std::path::Path;
use std::time::{Duration, Instant};

use bogomolov::cohomology::{b0_oracle_with, SubgroupMode, DEFAULT_ORACLE_CAP};
use bogomolov::groupkit::{transgression_image, GroupTable};
use bogomolov::pcgroup::{catalog, parse_pc, CatalogParams, Element, PcGroup};
use bogomolov::wedge::{
    audit_trace, b0_class2, bindings_for, from_json_lines, nilpotency_class, power_comm_expand,
    to_json_lines, Certificate, Verdict as CertVerdict,
};
use bogomolov::zlattice::AbelianInvariants;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::commands::{certify, cmd_central_product, CentralProductInput, Certified};
use crate::report::versions;

pub const PHI28_CERT: &str = include_str!("../../../certs/phi28.json");
pub const PHI29_CERT: &str = include_str!("../../../certs/phi29.json");
pub const GLUED_SPEC: &str = include_str!("../../../specs/glued_freest_special_p2.json");
pub const B0_Z2_ORDER64: &str = include_str!("../../../data/b0_z2_order64.pc");

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Primes for the `p`-parametrised rows; `None` uses the defaults
    /// (5 and 7, plus 11 for certificates).
    pub primes: Option<Vec<u64>>,
    pub skip_oracle: bool,
    pub seed: u64,
    pub fuzz_samples: usize,
    pub oracle_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            primes: None,
            skip_oracle: false,
            seed: DEFAULT_SEED,
            fuzz_samples: 1000,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl SuiteConfig {
    fn class2_primes(&self) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| vec![5, 7])
    }

    fn certificate_primes(&self) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| vec![5, 7, 11])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub criterion: u8,
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl Row {
    /// `criterion N [PASS] name: detail`.
    pub fn line(&self) -> String {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        format!(
            "criterion {:>2} [{s}] {}: {}",
            self.criterion, self.name, self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<Row>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub seed: u64,
    pub versions: std::collections::BTreeMap<String, String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// A catalog or fixture group of the regression set.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub params: Option<CatalogParams>,
    pub pc: PcGroup,
}

impl Entry {
    fn catalog(params: CatalogParams) -> Self {
        let pc = PcGroup::new(catalog(&params).expect("valid catalog parameters"))
            .expect("consistent catalog group");
        Self {
            name: params.label(),
            params: Some(params),
            pc,
        }
    }

    fn order(&self) -> u128 {
        self.pc.order()
    }

    fn is_abelian(&self) -> bool {
        self.pc.presentation().comm_relations().next().is_none()
    }
}

pub fn cyclic(n: u64) -> CatalogParams {
    CatalogParams::Cyclic { n }
}

pub fn elab(p: u64, rank: usize) -> CatalogParams {
    CatalogParams::ElementaryAbelian { p, rank }
}

pub fn heis(r: u64, d: &[u64]) -> CatalogParams {
    CatalogParams::Heisenberg { r, d: d.to_vec() }
}

pub fn dp(factors: Vec<CatalogParams>) -> CatalogParams {
    CatalogParams::DirectProduct { factors }
}

pub fn fs(p: u64, d: usize) -> CatalogParams {
    CatalogParams::FreestSpecial { p, d }
}

/// The class-3 group of order 64 with `B0 = Z/2`.
pub fn b0_z2_fixture() -> Entry {
    let pc = PcGroup::new(parse_pc(B0_Z2_ORDER64).expect("fixture parses"))
        .expect("fixture is consistent");
    Entry {
        name: "b0_z2_order64".into(),
        params: None,
        pc,
    }
}

/// Catalog groups of order at most 64 plus the fixture.
pub fn regression_set() -> Vec<Entry> {
    let mut out: Vec<Entry> = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64]
        .into_iter()
        .map(|n| Entry::catalog(cyclic(n)))
        .collect();
    for (p, r) in [
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 2),
        (3, 3),
        (5, 2),
        (7, 2),
    ] {
        out.push(Entry::catalog(elab(p, r)));
    }
    for fs_ in [
        vec![4, 2],
        vec![4, 4],
        vec![8, 2],
        vec![4, 2, 2],
        vec![8, 4],
        vec![16, 2],
        vec![8, 8],
        vec![16, 4],
        vec![32, 2],
        vec![4, 4, 4],
        vec![3, 9],
    ] {
        out.push(Entry::catalog(dp(fs_.into_iter().map(cyclic).collect())));
    }
    for params in [
        heis(2, &[1]),
        heis(3, &[1]),
        heis(4, &[1]),
        heis(4, &[2]),
        heis(2, &[1, 1]),
        fs(2, 2),
        fs(3, 2),
        fs(2, 3),
        dp(vec![heis(2, &[1]), cyclic(2)]),
        dp(vec![heis(2, &[1]), cyclic(4)]),
        dp(vec![heis(2, &[1]), elab(2, 2)]),
        dp(vec![heis(2, &[1]), elab(2, 3)]),
        dp(vec![heis(2, &[1]), cyclic(8)]),
        dp(vec![heis(2, &[1]), heis(2, &[1])]),
    ] {
        out.push(Entry::catalog(params));
    }
    out.push(b0_z2_fixture());
    out
}

/// Pairs whose direct product has order at most 64.
pub fn direct_product_pairs() -> Vec<(CatalogParams, CatalogParams)> {
    vec![
        (heis(2, &[1]), cyclic(2)),
        (heis(2, &[1]), cyclic(4)),
        (heis(2, &[1]), elab(2, 2)),
        (heis(2, &[1]), heis(2, &[1])),
        (fs(2, 2), cyclic(8)),
        (cyclic(4), cyclic(4)),
        (fs(3, 2), cyclic(2)),
    ]
}

fn oracle(
    pc: &PcGroup,
    mode: SubgroupMode,
    n: Option<u64>,
    cap: usize,
) -> Result<AbelianInvariants, String> {
    let t = GroupTable::from_pc(pc, cap).map_err(|e| e.to_string())?;
    let n = n.unwrap_or(t.order() as u64);
    b0_oracle_with(&t, mode, n, cap).map_err(|e| e.to_string())
}

struct Ctx<'c> {
    cfg: &'c SuiteConfig,
    certified: Vec<(String, PcGroup, Certified)>,
}

type RowResult = Result<String, String>;

/// Runs the full matrix. Certificate rows feed the soundness-audit row.
/// Criterion number, name, whether skipping the oracle skips it, and the check.
type RowSpec = (u8, &'static str, bool, fn(&mut Ctx) -> RowResult);

pub fn run(cfg: &SuiteConfig) -> SuiteReport {
    let mut ctx = Ctx {
        cfg,
        certified: Vec::new(),
    };
    let mut rows = Vec::new();
    let table: [RowSpec; 10] = [
        (1, "oracle triviality floor", true, row_floor),
        (2, "Heisenberg groups", false, row_heisenberg),
        (3, "phi15 class-2 triviality", false, row_phi15),
        (4, "phi28/phi29 certificates", false, row_certificates),
        (
            5,
            "central product counterexample",
            false,
            row_glued_product,
        ),
        (6, "class-2 engine against oracle", true, row_duality),
        (7, "direct products", true, row_direct_products),
        (8, "commutator power identity fuzz", false, row_fuzz),
        (
            9,
            "oracle modulus and mode robustness",
            true,
            row_robustness,
        ),
        (10, "soundness audit", false, row_audit),
    ];
    for (criterion, name, oracle_only, f) in table {
        let start = Instant::now();
        let (status, detail) = if oracle_only && cfg.skip_oracle {
            (Status::Skipped, "oracle rows skipped".to_string())
        } else {
            match f(&mut ctx) {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            }
        };
        rows.push(Row {
            criterion,
            name: name.to_string(),
            status,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    SuiteReport {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        rows,
        seed: cfg.seed,
        versions: versions(),
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed > limit {
        return Err(format!(
            "{what} took {:.1} s, limit {} s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
    }
    Ok(())
}

fn row_floor(ctx: &mut Ctx) -> RowResult {
    let mut checked = 0;
    for e in regression_set() {
        if !(e.order() <= 16 || (e.is_abelian() && e.order() <= 64)) {
            continue;
        }
        let start = Instant::now();
        let inv = oracle(&e.pc, SubgroupMode::Abelian, None, ctx.cfg.oracle_cap)?;
        within(start.elapsed(), Duration::from_secs(10), &e.name)?;
        if !inv.is_trivial() {
            return Err(format!("B0({}) = {inv}", e.name));
        }
        checked += 1;
    }
    Ok(format!("B0 = 0 on {checked} groups"))
}

fn row_heisenberg(ctx: &mut Ctx) -> RowResult {
    let groups = [
        heis(2, &[1]),
        heis(4, &[1]),
        heis(4, &[2]),
        heis(2, &[1, 1]),
    ];
    let mut oracle_runs = 0;
    for params in groups {
        let e = Entry::catalog(params);
        let c2 = b0_class2(&e.pc).map_err(|er| format!("{}: {er}", e.name))?;
        if !c2.is_trivial() {
            return Err(format!("class-2 engine gives B0({}) = {c2}", e.name));
        }
        if !ctx.cfg.skip_oracle && e.order() <= 64 {
            let start = Instant::now();
            let o = oracle(&e.pc, SubgroupMode::Abelian, None, ctx.cfg.oracle_cap)?;
            within(start.elapsed(), Duration::from_secs(300), &e.name)?;
            if !o.is_trivial() {
                return Err(format!("oracle gives B0({}) = {o}", e.name));
            }
            oracle_runs += 1;
        }
    }
    Ok(format!(
        "B0 = 0 for 4 groups (class-2 engine), {oracle_runs} confirmed by the oracle"
    ))
}

fn row_phi15(ctx: &mut Ctx) -> RowResult {
    let primes = ctx.cfg.class2_primes();
    for &p in &primes {
        let e = Entry::catalog(CatalogParams::Phi15 { p });
        let start = Instant::now();
        let inv = b0_class2(&e.pc).map_err(|er| format!("{}: {er}", e.name))?;
        within(start.elapsed(), Duration::from_secs(60), &e.name)?;
        if !inv.is_trivial() {
            return Err(format!("B0({}) = {inv}", e.name));
        }
    }
    Ok(format!("B0 = 0 for p in {primes:?}"))
}

fn row_certificates(ctx: &mut Ctx) -> RowResult {
    let primes = ctx.cfg.certificate_primes();
    let certs = [("phi28", PHI28_CERT), ("phi29", PHI29_CERT)];
    for &p in &primes {
        for (family, text) in certs {
            let params = if family == "phi28" {
                CatalogParams::Phi28 { p }
            } else {
                CatalogParams::Phi29 { p }
            };
            let e = Entry::catalog(params.clone());
            let cert = Certificate::from_json(text).map_err(|er| er.to_string())?;
            let start = Instant::now();
            let c = certify(&e.pc, &cert, &bindings_for(&params))
                .map_err(|er| format!("{}: {er}", e.name))?;
            within(start.elapsed(), Duration::from_secs(10), &e.name)?;
            if c.verdict != CertVerdict::CertifiedTrivial {
                return Err(format!(
                    "{}: {:?} ({})",
                    e.name,
                    c.verdict,
                    c.reason.clone().unwrap_or_default()
                ));
            }
            ctx.certified.push((e.name.clone(), e.pc.clone(), c));
        }
    }
    let abelian = Entry::catalog(dp(vec![cyclic(4), cyclic(2)]));
    let empty =
        Certificate::from_json(r#"{"group": {"family": "direct_product"}, "witnesses": []}"#)
            .map_err(|er| er.to_string())?;
    let c = certify(&abelian.pc, &empty, &Default::default()).map_err(|er| er.to_string())?;
    if c.verdict != CertVerdict::CertifiedTrivial {
        return Err(format!(
            "empty certificate on {}: {:?}",
            abelian.name, c.verdict
        ));
    }
    ctx.certified
        .push((abelian.name.clone(), abelian.pc.clone(), c));
    Ok(format!(
        "Certified-Trivial for phi28 and phi29 at p in {primes:?}"
    ))
}

fn row_glued_product(ctx: &mut Ctx) -> RowResult {
    let input: CentralProductInput = serde_json::from_str(GLUED_SPEC).map_err(|e| e.to_string())?;
    let report = cmd_central_product(&input, Path::new("."), ctx.cfg.oracle_cap)
        .map_err(|e| e.to_string())?;
    let expect = AbelianInvariants::from_cyclic_orders([2]);
    let got = report.factors.clone().unwrap_or_default();
    if got != expect {
        return Err(format!("central product formula gives {got}, expected Z/2"));
    }
    let h = Entry::catalog(fs(2, 4));
    let t = GroupTable::from_pc(&h.pc, 1 << 12).map_err(|e| e.to_string())?;
    let a = t.id_of_word("c21*c43").map_err(|e| e.to_string())?;
    let h1 = t.closure(&[a]);
    let tr = transgression_image(&t, &h1).map_err(|e| e.to_string())?;
    if tr != expect {
        return Err(format!("transgression image {tr}, expected Z/2"));
    }
    Ok(format!("B0(G) = {got} and (H1 ∩ H')/<H1 ∩ K(H)> = {tr}"))
}

fn row_duality(ctx: &mut Ctx) -> RowResult {
    let mut n = 0;
    for e in regression_set() {
        if e.order() > 64 || nilpotency_class(&e.pc).map(|c| c > 2).unwrap_or(true) {
            continue;
        }
        let c2 = b0_class2(&e.pc).map_err(|er| format!("{}: {er}", e.name))?;
        let o = oracle(&e.pc, SubgroupMode::Abelian, None, ctx.cfg.oracle_cap)?;
        if c2 != o {
            return Err(format!("{}: class-2 engine {c2}, oracle {o}", e.name));
        }
        n += 1;
    }
    if n < 6 {
        return Err(format!("only {n} class-2 groups compared"));
    }
    Ok(format!("agreement on {n} class-2 groups"))
}

fn row_direct_products(ctx: &mut Ctx) -> RowResult {
    let pairs = direct_product_pairs();
    let cap = ctx.cfg.oracle_cap;
    for (a, b) in &pairs {
        let prod = Entry::catalog(dp(vec![a.clone(), b.clone()]));
        let ea = Entry::catalog(a.clone());
        let eb = Entry::catalog(b.clone());
        let whole = oracle(&prod.pc, SubgroupMode::Bicyclic, None, cap)?;
        let merged = oracle(&ea.pc, SubgroupMode::Bicyclic, None, cap)?.direct_sum(&oracle(
            &eb.pc,
            SubgroupMode::Bicyclic,
            None,
            cap,
        )?);
        if whole != merged {
            return Err(format!("{}: {whole} but factors give {merged}", prod.name));
        }
    }
    Ok(format!(
        "B0(G1 x G2) = B0(G1) + B0(G2) for {} pairs",
        pairs.len()
    ))
}

/// The prime of a group whose relative orders are powers of one prime.
fn prime_of(pc: &PcGroup) -> u64 {
    let m = pc.relative_orders().iter().copied().min().unwrap_or(2);
    (2..=m).find(|d| m % d == 0).unwrap_or(2)
}

fn random_element(pc: &PcGroup, rng: &mut StdRng) -> Element {
    Element(
        pc.relative_orders()
            .iter()
            .map(|&m| rng.gen_range(0..m) as u32)
            .collect(),
    )
}

fn row_fuzz(ctx: &mut Ctx) -> RowResult {
    let mut groups: Vec<Entry> = Vec::new();
    for p in ctx.cfg.class2_primes() {
        groups.push(Entry::catalog(CatalogParams::Phi15 { p }));
        groups.push(Entry::catalog(CatalogParams::Phi28 { p }));
        groups.push(Entry::catalog(CatalogParams::Phi29 { p }));
    }
    groups.push(Entry::catalog(heis(4, &[1])));
    groups.push(Entry::catalog(fs(3, 3)));
    groups.push(b0_z2_fixture());
    let mut rng = StdRng::seed_from_u64(ctx.cfg.seed);
    let mut total = 0;
    for e in &groups {
        let p = prime_of(&e.pc);
        for _ in 0..ctx.cfg.fuzz_samples {
            let x = random_element(&e.pc, &mut rng);
            let y = random_element(&e.pc, &mut rng);
            let n = rng.gen_range(0..=2 * p * p);
            let lhs =
                power_comm_expand(&e.pc, &x, &y, n).map_err(|er| format!("{}: {er}", e.name))?;
            let rhs = e.pc.commutator(&e.pc.power(&x, n as i64), &y);
            if lhs != rhs {
                return Err(format!(
                    "{}: x = {}, y = {}, n = {n}",
                    e.name,
                    e.pc.format(&x),
                    e.pc.format(&y)
                ));
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} samples over {} groups, 0 failures",
        groups.len()
    ))
}

fn row_robustness(ctx: &mut Ctx) -> RowResult {
    let cap = ctx.cfg.oracle_cap;
    let mut n = 0;
    for e in regression_set() {
        let order = e.order() as u64;
        let base = oracle(&e.pc, SubgroupMode::Abelian, Some(order), cap)?;
        let doubled = oracle(&e.pc, SubgroupMode::Abelian, Some(2 * order), cap)?;
        let bicyclic = oracle(&e.pc, SubgroupMode::Bicyclic, Some(order), cap)?;
        if base != doubled || base != bicyclic {
            return Err(format!(
                "{}: n=|G| {base}, n=2|G| {doubled}, bicyclic {bicyclic}",
                e.name
            ));
        }
        if e.params.is_none() && base != AbelianInvariants::from_cyclic_orders([2]) {
            return Err(format!("{}: expected Z/2, got {base}", e.name));
        }
        n += 1;
    }
    Ok(format!("modulus and subgroup-mode agreement on {n} groups"))
}

fn row_audit(ctx: &mut Ctx) -> RowResult {
    if ctx.certified.is_empty() {
        return Err("no Certified-Trivial runs to audit".into());
    }
    let mut steps = 0;
    for (name, pc, c) in &ctx.certified {
        let audit = c
            .audit
            .as_ref()
            .ok_or_else(|| format!("{name}: no audit"))?;
        if audit.verified != audit.steps || !audit.proves_trivial || !c.witnesses_recorded {
            return Err(format!(
                "{name}: {} of {} steps verified",
                audit.verified, audit.steps
            ));
        }
        let replayed =
            from_json_lines(&to_json_lines(&c.trace)).map_err(|e| format!("{name}: {e}"))?;
        let again = audit_trace(pc.presentation(), &replayed)
            .map_err(|e| format!("{name}: step {}: {}", e.step, e.reason))?;
        if again != *audit {
            return Err(format!("{name}: replay from JSON lines differs"));
        }
        steps += audit.steps;
    }
    Ok(format!(
        "{} runs, {steps} trace steps replayed, 0 unverified",
        ctx.certified.len()
    ))
}
