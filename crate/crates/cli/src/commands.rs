//! The subcommands as library functions; the binary only parses arguments
//! and prints.

use std::path::{Path, PathBuf};
use std::time::Instant;

use bogomolov::cohomology::{b0_oracle_with, SubgroupMode, DEFAULT_ORACLE_CAP};
use bogomolov::groupkit::{
    central_product_b0, transgression_image, CentralProduct, CentralProductSpec, FactorHypothesis,
    GroupTable, DEFAULT_ENUM_CAP,
};
use bogomolov::pcgroup::{catalog, CatalogParams, Element, PcGroup};
use bogomolov::wedge::{
    audit_trace, b0_class2, bindings_for, nilpotency_class, verify_certificate, AuditReport,
    Bindings, Certificate, GroupRef, RelationKind, TraceStep, Verdict as CertVerdict,
    SOUND_UPPER_BOUND,
};
use bogomolov::zlattice::AbelianInvariants;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::report::{Method, Report, TAG_EXACT, TAG_LOWER_BOUND};
use crate::source::{read, GroupSource, LoadedGroup};

/// Largest group order handed to the cocycle oracle, from `B0_ORACLE_CAP`.
pub fn oracle_cap() -> Result<usize, CliError> {
    match std::env::var("B0_ORACLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("B0_ORACLE_CAP: `{v}` is not a number"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

pub fn cmd_catalog(params: &CatalogParams) -> Result<String, CliError> {
    Ok(catalog(params)?.to_dsl())
}

#[derive(Clone, Debug, Serialize)]
pub struct Info {
    #[serde(flatten)]
    pub group: crate::source::GroupDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_orders: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_closed: Option<bool>,
}

/// Structural data; table-based fields are filled when the group fits the
/// oracle cap.
pub fn cmd_info(group: &mut LoadedGroup, cap: usize) -> Result<Info, CliError> {
    let mut info = Info {
        group: group.descriptor.clone(),
        generators: None,
        relative_orders: None,
        consistent: None,
        derived_order: None,
        center_order: None,
        commutator_closed: None,
    };
    if let Some(pc) = &group.pc {
        info.generators = Some(pc.presentation().names().to_vec());
        info.relative_orders = Some(pc.relative_orders().to_vec());
        info.consistent = Some(pc.consistency_report().is_consistent());
    }
    if group.descriptor.order <= cap as u128 {
        let t = group.table(cap)?;
        info.derived_order = Some(t.derived_subgroup().order());
        info.center_order = Some(t.center().order());
        info.commutator_closed = Some(t.is_commutator_closed());
    }
    Ok(info)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Oracle,
    Class2,
    Cert,
}

#[derive(Clone, Debug)]
pub struct B0Options {
    pub method: MethodChoice,
    pub cert: Option<PathBuf>,
    pub mode: SubgroupMode,
    pub modulus: Option<u64>,
    pub cap: usize,
}

impl Default for B0Options {
    fn default() -> Self {
        Self {
            method: MethodChoice::Auto,
            cert: None,
            mode: SubgroupMode::Abelian,
            modulus: None,
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

pub fn oracle_report(
    group: &mut LoadedGroup,
    mode: SubgroupMode,
    modulus: Option<u64>,
    cap: usize,
) -> Result<Report, CliError> {
    let order = group.descriptor.order;
    if order > cap as u128 {
        return Err(CliError::resource(format!(
            "group of order {order} exceeds the oracle cap {cap} (B0_ORACLE_CAP)"
        )));
    }
    let descriptor = group.descriptor.clone();
    let t = group.table(cap)?;
    let n = modulus.unwrap_or(t.order() as u64);
    let inv = b0_oracle_with(t, mode, n, cap)?;
    let mode_name = match mode {
        SubgroupMode::Abelian => "abelian",
        SubgroupMode::Bicyclic => "bicyclic",
    };
    Ok(Report::computed(descriptor, Method::Oracle, inv, TAG_EXACT)
        .detail("subgroup_mode", mode_name)
        .detail("modulus", n))
}

pub fn class2_report(group: &LoadedGroup) -> Result<Report, CliError> {
    let inv = b0_class2(group.pc()?)?;
    Ok(Report::computed(
        group.descriptor.clone(),
        Method::Class2,
        inv,
        TAG_EXACT,
    ))
}

/// A certificate run together with its independent audit.
#[derive(Clone, Debug)]
pub struct Certified {
    pub verdict: CertVerdict,
    pub bound: Option<AbelianInvariants>,
    pub reason: Option<String>,
    pub trace: Vec<TraceStep>,
    pub audit: Option<AuditReport>,
    /// Every witness pair appears in the trace as a checked witness record.
    pub witnesses_recorded: bool,
}

/// Verifies `cert` on `g`; certified-trivial outcomes are replayed by the
/// trace checker, and a failed replay is an internal error.
pub fn certify(g: &PcGroup, cert: &Certificate, vars: &Bindings) -> Result<Certified, CliError> {
    let outcome = verify_certificate(g, cert, vars)?;
    let mut out = Certified {
        verdict: outcome.verdict.clone(),
        bound: outcome.bound,
        reason: outcome.reason,
        trace: outcome.trace,
        audit: None,
        witnesses_recorded: false,
    };
    if out.verdict == CertVerdict::CertifiedTrivial {
        let audit = audit_trace(g.presentation(), &out.trace).map_err(|e| {
            CliError::internal(format!(
                "trace audit failed at step {}: {}",
                e.step, e.reason
            ))
        })?;
        if audit.verified != audit.steps || !audit.proves_trivial {
            return Err(CliError::internal(
                "trace audit does not establish the trivial bound",
            ));
        }
        let words = cert.witness_words(g, vars)?;
        out.witnesses_recorded = words.iter().all(|(u, v)| {
            let (eu, ev) = (g.collect(u), g.collect(v));
            match (eu, ev) {
                (Ok(eu), Ok(ev)) => witness_in_trace(g, &out.trace, &eu, &ev),
                _ => false,
            }
        });
        if !out.witnesses_recorded {
            return Err(CliError::internal(
                "a witness pair is missing from the trace",
            ));
        }
        out.audit = Some(audit);
    }
    Ok(out)
}

fn witness_in_trace(g: &PcGroup, trace: &[TraceStep], u: &Element, v: &Element) -> bool {
    let product = |xs: &[Vec<u32>]| {
        xs.iter()
            .fold(g.identity(), |acc, x| g.multiply(&acc, &Element(x.clone())))
    };
    trace.iter().any(|s| match s {
        TraceStep::Relator {
            kind: RelationKind::Witness,
            expansions,
            ..
        } => {
            expansions.len() == 1
                && product(&expansions[0].left) == *u
                && product(&expansions[0].right) == *v
        }
        _ => false,
    })
}

/// Loads a certificate and the group it speaks about. A group given on the
/// command line must agree with the certificate's reference.
pub fn resolve_certificate(
    path: &Path,
    given: Option<LoadedGroup>,
) -> Result<(Certificate, LoadedGroup, Bindings), CliError> {
    let cert = Certificate::from_json(&read(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let group = match (&cert.group, given) {
        (GroupRef::Catalog(params), Some(g)) => {
            if g.descriptor.params.as_ref() != Some(params) {
                return Err(CliError::usage(format!("certificate is for {}, not {}", params.label(), g.descriptor.name)));
            }
            g
        }
        (GroupRef::Catalog(params), None) => LoadedGroup::load(&GroupSource::Catalog(params.clone()))?,
        (GroupRef::Family { family }, Some(g)) => {
            if g.descriptor.params.as_ref().map(|p| p.family()) != Some(*family) {
                return Err(CliError::usage(format!(
                    "certificate is for the {} family, not {}",
                    family.tag(),
                    g.descriptor.name
                )));
            }
            g
        }
        (GroupRef::Family { family }, None) => {
            return Err(CliError::usage(format!(
                "certificate covers the whole {} family; select a member with --catalog {} and its parameters",
                family.tag(),
                family.tag()
            )))
        }
        (GroupRef::File { .. }, Some(g)) => g,
        (GroupRef::File { file }, None) => LoadedGroup::load(&GroupSource::Pc(dir.join(file)))?,
    };
    let vars = group
        .descriptor
        .params
        .as_ref()
        .map(bindings_for)
        .unwrap_or_default();
    Ok((cert, group, vars))
}

pub fn certificate_report(
    cert: &Certificate,
    group: &LoadedGroup,
    vars: &Bindings,
) -> Result<(Report, Certified), CliError> {
    let c = certify(group.pc()?, cert, vars)?;
    let report = match c.verdict {
        CertVerdict::Rejected => {
            return Err(CliError::usage(
                c.reason
                    .clone()
                    .unwrap_or_else(|| "certificate rejected".into()),
            ));
        }
        _ => Report::upper_bound(
            group.descriptor.clone(),
            c.bound.clone().unwrap_or_default(),
            SOUND_UPPER_BOUND,
        )
        .detail("certificate_verdict", &c.verdict)
        .detail("witnesses", cert.witnesses.len()),
    };
    let report = match &c.audit {
        Some(a) => report.detail("audit", a),
        None => report,
    };
    Ok((report, c))
}

/// `b0` with method dispatch. An inconclusive certificate is returned as a
/// report; the caller maps its verdict to the exit status.
pub fn cmd_b0(group: Option<LoadedGroup>, opts: &B0Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let cert_needed = opts.method == MethodChoice::Cert;
    if cert_needed && opts.cert.is_none() {
        return Err(CliError::usage("--method cert needs --cert FILE"));
    }
    let report = match (opts.method, group) {
        (MethodChoice::Cert, group) | (MethodChoice::Auto, group @ None) => {
            let path = opts
                .cert
                .as_ref()
                .ok_or_else(|| CliError::usage("no group given"))?;
            let (cert, group, vars) = resolve_certificate(path, group)?;
            certificate_report(&cert, &group, &vars)?.0
        }
        (MethodChoice::Oracle, Some(mut g)) => {
            oracle_report(&mut g, opts.mode, opts.modulus, opts.cap)?
        }
        (MethodChoice::Class2, Some(g)) => class2_report(&g)?,
        (MethodChoice::Auto, Some(mut g)) => {
            if g.descriptor.order <= opts.cap as u128 {
                oracle_report(&mut g, opts.mode, opts.modulus, opts.cap)?
            } else if g.pc.is_some() && nilpotency_class(g.pc()?).map(|c| c <= 2).unwrap_or(false) {
                class2_report(&g)?
            } else if let Some(path) = &opts.cert {
                let (cert, group, vars) = resolve_certificate(path, Some(g))?;
                certificate_report(&cert, &group, &vars)?.0
            } else {
                return Err(CliError::inconclusive(format!(
                    "Inconclusive: {} has order {} above the oracle cap {} and class above 2; supply a triviality certificate with --cert FILE",
                    g.descriptor.name, g.descriptor.order, opts.cap
                )));
            }
        }
        (_, None) => return Err(CliError::usage("no group given")),
    };
    Ok(report.timed(Some(start.elapsed())))
}

/// A group or element reference inside JSON specifications: a word over
/// the presentation's generators, or a table id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Id(u32),
    Word(String),
}

/// A factor of `central-product`: a bare path (a `.json` path is a
/// multiplication table, anything else a presentation) or a tagged source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SourceSpec {
    Path(PathBuf),
    Tagged(TaggedSource),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaggedSource {
    Catalog(CatalogParams),
    File(PathBuf),
    Table(PathBuf),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisSpec {
    /// Establish `B0 = 0` for both factors with the oracle or the class-2 engine.
    #[default]
    Verify,
    /// Take `B0 = 0` for both factors on trust.
    Asserted,
}

/// JSON input of `central-product`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralProductInput {
    pub left: SourceSpec,
    pub right: SourceSpec,
    #[serde(alias = "H1_gens")]
    pub h1: Vec<ElementRef>,
    #[serde(alias = "N1_gens")]
    pub n1: Vec<ElementRef>,
    pub xi: Vec<(ElementRef, ElementRef)>,
    #[serde(default)]
    pub hypothesis: HypothesisSpec,
}

fn load_spec_source(s: &SourceSpec, dir: &Path) -> Result<LoadedGroup, CliError> {
    LoadedGroup::load(&match s {
        SourceSpec::Path(f) if f.extension().is_some_and(|e| e == "json") => {
            GroupSource::Table(dir.join(f))
        }
        SourceSpec::Path(f) => GroupSource::Pc(dir.join(f)),
        SourceSpec::Tagged(TaggedSource::Catalog(p)) => GroupSource::Catalog(p.clone()),
        SourceSpec::Tagged(TaggedSource::File(f)) => GroupSource::Pc(dir.join(f)),
        SourceSpec::Tagged(TaggedSource::Table(f)) => GroupSource::Table(dir.join(f)),
    })
}

fn element_id(t: &GroupTable, e: &ElementRef) -> Result<u32, CliError> {
    match e {
        ElementRef::Id(i) if (*i as usize) < t.order() => Ok(*i),
        ElementRef::Id(i) => Err(CliError::usage(format!("element id {i} out of range"))),
        ElementRef::Word(w) => t
            .id_of_word(w)
            .map_err(|e| CliError::usage(format!("`{w}`: {e}"))),
    }
}

/// Establishes `B0 = 0` for a factor; returns how.
fn verify_factor(g: &mut LoadedGroup, cap: usize) -> Result<FactorHypothesis, CliError> {
    let (inv, how) = if g.descriptor.order <= cap as u128 {
        let r = oracle_report(g, SubgroupMode::Bicyclic, None, cap)?;
        (
            r.factors.unwrap_or_default(),
            FactorHypothesis::VerifiedByOracle,
        )
    } else if g.pc.is_some() && nilpotency_class(g.pc()?).map(|c| c <= 2).unwrap_or(false) {
        (b0_class2(g.pc()?)?, FactorHypothesis::VerifiedByClass2)
    } else {
        return Err(CliError::inconclusive(format!(
            "cannot establish B0({}) = 0: order above the oracle cap and class above 2; use \"hypothesis\": \"asserted\"",
            g.descriptor.name
        )));
    };
    if !inv.is_trivial() {
        return Err(CliError::usage(format!(
            "B0({}) = {inv} is not trivial; the formula does not apply",
            g.descriptor.name
        )));
    }
    Ok(how)
}

pub fn cmd_central_product(
    input: &CentralProductInput,
    dir: &Path,
    cap: usize,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut left = load_spec_source(&input.left, dir)?;
    let mut right = load_spec_source(&input.right, dir)?;
    let (hypothesis, right_hypothesis) = match input.hypothesis {
        HypothesisSpec::Asserted => (FactorHypothesis::Asserted, FactorHypothesis::Asserted),
        HypothesisSpec::Verify => (
            verify_factor(&mut left, cap)?,
            verify_factor(&mut right, cap)?,
        ),
    };
    let lt = left.table(DEFAULT_ENUM_CAP)?.clone();
    let rt = right.table(DEFAULT_ENUM_CAP)?.clone();
    let ids = |t: &GroupTable, xs: &[ElementRef]| {
        xs.iter()
            .map(|e| element_id(t, e))
            .collect::<Result<Vec<_>, _>>()
    };
    let spec = CentralProductSpec {
        h1_gens: ids(&lt, &input.h1)?,
        n1_gens: ids(&rt, &input.n1)?,
        xi: input
            .xi
            .iter()
            .map(|(a, b)| Ok((element_id(&lt, a)?, element_id(&rt, b)?)))
            .collect::<Result<Vec<_>, CliError>>()?,
        left: lt,
        right: rt,
    };
    let cp = CentralProduct::new(spec)?;
    let res = central_product_b0(&cp, Some(hypothesis))?;
    let descriptor = crate::source::GroupDescriptor {
        name: format!("({} x {})/Z", left.descriptor.name, right.descriptor.name),
        family: None,
        params: None,
        order: cp.order(),
        class: None,
    };
    Ok(Report::computed(
        descriptor,
        Method::CentralProductFormula,
        res.invariants.clone(),
        TAG_EXACT,
    )
    .detail("left_hypothesis", res.hypothesis)
    .detail("right_hypothesis", right_hypothesis)
    .detail("condition_i", res.condition_i)
    .detail("z_derived_order", res.z_derived_order)
    .detail("z_commutator_span_order", res.z_commutator_span_order)
    .timed(Some(start.elapsed())))
}

/// `(N ∩ G') / <N ∩ K(G)>` for the normal closure `N` of `normal`; a
/// nontrivial value is a lower bound for `B0(G/N)`.
pub fn cmd_transgression(
    group: &mut LoadedGroup,
    normal: &[ElementRef],
) -> Result<Report, CliError> {
    let start = Instant::now();
    let descriptor = group.descriptor.clone();
    let t = group.table(DEFAULT_ENUM_CAP)?;
    let gens = normal
        .iter()
        .map(|e| element_id(t, e))
        .collect::<Result<Vec<_>, _>>()?;
    let n = t.normal_closure(&gens);
    let inv = transgression_image(t, &n)?;
    Ok(Report::computed(
        descriptor,
        Method::TransgressionLowerBound,
        inv,
        TAG_LOWER_BOUND,
    )
    .detail("normal_order", n.order())
    .detail("bounds", "B0(G/N)")
    .timed(Some(start.elapsed())))
}
