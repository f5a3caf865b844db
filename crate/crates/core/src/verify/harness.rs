use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::checks::*;
use super::poset::{nagata_exhaustive, SamplePoset};
use super::{CheckResult, CheckVerdict};
use crate::error::{Error, Result};
use crate::fixture::{CheckSpec, Expect, Fixture};
use crate::invariants::{ModuleAnalysis, PrimeIdeal};
use crate::loci::{compute_locus, LocusKind};
use crate::qpoly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    AsExpected,
    Unexpected,
    Inconclusive,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::AsExpected => "as-expected",
            Outcome::Unexpected => "unexpected",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub kind: String,
    pub result: CheckResult,
    pub expected: Expect,
    /// Gate errors such as a failed hypothesis; the verdict is then
    /// inconclusive.
    pub error: Option<String>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub fixture: String,
    pub checks: Vec<CheckOutcome>,
    pub loci: Vec<Value>,
}

impl Report {
    /// 0 when every check met its expectation, 1 on any unexpected
    /// verdict, 2 when something was inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.outcome == Outcome::Unexpected) {
            1
        } else if self.checks.iter().any(|c| c.outcome == Outcome::Inconclusive) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({
                    "id": c.result.id,
                    "ref": c.result.reference,
                    "kind": c.kind,
                    "verdict": c.result.verdict,
                    "expected": c.expected.as_str(),
                    "outcome": c.outcome.as_str(),
                    "witness": c.result.witness,
                    "caveats": c.result.caveats,
                });
                if let Some(e) = &c.error {
                    v["error"] = json!(e);
                }
                v
            })
            .collect();
        json!({"fixture": self.fixture, "checks": checks, "loci": self.loci})
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let w = self.checks.iter().map(|c| c.result.id.len()).max().unwrap_or(2).max(2);
        let _ = writeln!(out, "fixture {}", self.fixture);
        let _ = writeln!(out, "{:<w$}  {:<18}  {:<12}  {:<17}  {:<12}  statement", "id", "kind", "verdict", "expected", "outcome");
        for c in &self.checks {
            let verdict = match c.result.verdict {
                CheckVerdict::Pass => "pass",
                CheckVerdict::Fail => "fail",
                CheckVerdict::Inconclusive => "inconclusive",
            };
            let _ = writeln!(
                out,
                "{:<w$}  {:<18}  {:<12}  {:<17}  {:<12}  {}",
                c.result.id,
                c.kind,
                verdict,
                c.expected.as_str(),
                c.outcome.as_str(),
                c.result.reference
            );
            if let Some(e) = &c.error {
                let _ = writeln!(out, "{:<w$}    {e}", "");
            }
        }
        out
    }
}

struct Ctx<'f> {
    fx: &'f Fixture,
    analyses: BTreeMap<String, Arc<ModuleAnalysis>>,
    poset: SamplePoset,
}

impl Ctx<'_> {
    fn analysis(&self, name: &str) -> Result<&ModuleAnalysis> {
        self.analyses.get(name).map(|a| a.as_ref()).ok_or_else(|| Error::NotFound(format!("module {name}")))
    }

    fn primes(&self, spec: &CheckSpec) -> Result<Vec<PrimeIdeal>> {
        match spec.arg("primes") {
            None => Ok(self.fx.sample_primes().to_vec()),
            Some(list) => list.split(',').map(|n| self.fx.prime(n.trim()).cloned()).collect(),
        }
    }
}

fn num<T: std::str::FromStr>(spec: &CheckSpec, key: &str, default: Option<T>) -> Result<T> {
    match spec.arg(key) {
        None => default.ok_or_else(|| Error::Validation(format!("check {}: missing argument `{key}`", spec.id))),
        Some(v) => v.trim().parse().map_err(|_| Error::Validation(format!("check {}: `{key}` must be a number", spec.id))),
    }
}

fn kinds(spec: &CheckSpec, default: &str) -> Result<Vec<LocusKind>> {
    let n: u32 = num(spec, "n", Some(2))?;
    let src = spec.arg("kinds").unwrap_or(default);
    if src == "all" {
        return Ok(LocusKind::all(n));
    }
    if src == "six" {
        use LocusKind::*;
        return Ok(vec![Fid, Gor, Cm, Mcm, Sn(n), Tn(n)]);
    }
    src.split(',').map(|k| k.trim().parse()).collect()
}

fn numbers(spec: &CheckSpec, key: &str) -> Result<Vec<usize>> {
    spec.require(key)?
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Validation(format!("check {}: bad number in `{key}`", spec.id))))
        .collect()
}

fn sequences(fx: &Fixture, src: Option<&str>) -> Result<Vec<Vec<Polynomial>>> {
    match src {
        None => Ok(Vec::new()),
        Some(s) => s.split(';').map(|seq| fx.polys(seq.trim())).collect(),
    }
}

fn run_check(ctx: &Ctx<'_>, spec: &CheckSpec) -> Result<CheckResult> {
    let fx = ctx.fx;
    let module = || ctx.analysis(spec.require("module")?);
    let prime = || fx.prime(spec.require("prime")?);
    match spec.kind.as_str() {
        "locus" => {
            let kind: LocusKind = spec.require("locus")?.parse()?;
            let expected = match (spec.arg("complement"), spec.arg("closed")) {
                (Some(c), None) => ExpectedSubset::Open(fx.ideal(c)?),
                (None, Some(c)) => ExpectedSubset::Closed(fx.ideal(c)?),
                _ => return Err(Error::Validation(format!("check {}: give exactly one of complement, closed", spec.id))),
            };
            let mut res = verify_locus(module()?, kind, &expected)?;
            if let Some(mode) = spec.arg("mode") {
                if res.witness["mode"] != json!(mode) {
                    res.verdict = CheckVerdict::Fail;
                    res.caveats.push(format!("expected mode {mode}"));
                }
            }
            Ok(res)
        }
        "oracle" => verify_oracle(module()?, &kinds(spec, "all")?, &ctx.primes(spec)?),
        "stability" => verify_stability(module()?, &kinds(spec, "all")?, &ctx.poset),
        "nagata" => Ok(nagata_exhaustive(&ctx.poset)),
        "gor_fid_mcm" => verify_gor_fid_mcm(module()?, &ctx.primes(spec)?),
        "filtration" => {
            let m = module()?.module();
            let i = fx.ideal(spec.require("ideal")?)?;
            verify_filtration_depth(m, &i, &ctx.primes(spec)?, &sequences(fx, spec.arg("sequences"))?)
        }
        "nc_star" => {
            let a = module()?;
            let primes = ctx.primes(spec)?;
            let mut per_kind = Vec::new();
            let mut caveats = Vec::new();
            for k in kinds(spec, "six")? {
                let r = verify_nc_star(a, k, &primes)?;
                if r.verdict != CheckVerdict::Pass {
                    return Ok(r);
                }
                caveats.extend(r.caveats);
                per_kind.push(r.witness);
            }
            caveats.sort();
            caveats.dedup();
            let mut out =
                CheckResult::new("nc-star", "the Nagata condition for modules holds", CheckVerdict::Pass, json!({ "kinds": per_kind }));
            out.caveats = caveats;
            Ok(out)
        }
        "mcm_sn" => verify_mcm_implies_sn_open(module()?, num(spec, "n", Some(2))?, &ctx.primes(spec)?),
        "gor_equivalence" => {
            let a = module()?;
            match spec.arg("prime") {
                Some(_) => verify_theorem_gor_equivalence(a, prime()?, fx.sample_primes()),
                None => verify_gor_equivalence_all(a, &ctx.primes(spec)?),
            }
        }
        "localization" => {
            let p = prime()?;
            match spec.require("item")? {
                "vanishing" => verify_constructive_localization(LocalizationItem::Vanishing {
                    module: module()?.module(),
                    prime: p,
                }),
                "regular" => {
                    let seq = fx.polys(spec.require("sequence")?)?;
                    verify_constructive_localization(LocalizationItem::Regular {
                        module: module()?.module(),
                        prime: p,
                        sequence: &seq,
                    })
                }
                "radical" => {
                    let i = fx.ideal(spec.require("ideal")?)?;
                    verify_constructive_localization(LocalizationItem::Radical {
                        ring: fx.ring(),
                        ideal: &i,
                        prime: p,
                        catalog: fx.sample_primes(),
                    })
                }
                other => Err(Error::Validation(format!("check {}: unknown localization item {other}", spec.id))),
            }
        }
        "fitting_invariance" => {
            let a = fx.module(spec.require("module_a")?)?;
            let b = fx.module(spec.require("module_b")?)?;
            verify_fitting_invariance(&a, &b)
        }
        "gorenstein_type" => {
            let expected = match spec.require("type")? {
                "not" => None,
                t => Some(t.parse().map_err(|_| Error::Validation(format!("check {}: bad type", spec.id)))?),
            };
            verify_gorenstein_type(module()?.module(), prime()?, expected)
        }
        "bass" => verify_bass(module()?, prime()?, &numbers(spec, "numbers")?),
        "resolution" => {
            let ranks = match spec.arg("ranks") {
                Some(_) => Some(numbers(spec, "ranks")?),
                None => None,
            };
            verify_resolution(module()?.module(), num(spec, "length", None)?, ranks.as_deref())
        }
        "ext" => {
            let i: usize = num(spec, "index", None)?;
            let expected = if spec.arg("zero") == Some("true") {
                ExpectedExt::Zero
            } else {
                ExpectedExt::Like { ann: fx.ideal(spec.require("ann")?)?, gens: num(spec, "gens", None)? }
            };
            verify_ext(module()?.module(), i, &expected)
        }
        other => Err(Error::Validation(format!("unknown check kind {other}"))),
    }
}

/// Errors that indicate a malformed fixture rather than a mathematical
/// outcome.
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. } | Error::UnknownVariable(_) | Error::Validation(_) | Error::NotFound(_) | Error::InvalidArgument(_)
    )
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::HypothesisFailed(_) => "hypothesis-failed",
        Error::HypothesisNotCertified(_) => "hypothesis-not-certified",
        Error::WitnessNotFound(_) => "witness-not-found",
        Error::ResourceLimit { .. } => "resource-limit",
        _ => "error",
    }
}

fn settle(ctx: &Ctx<'_>, spec: &CheckSpec) -> Result<CheckOutcome> {
    let (mut result, error) = match run_check(ctx, spec) {
        Ok(r) => (r, None),
        Err(e) if is_usage_error(&e) => return Err(e),
        Err(e) => {
            let witness = match &e {
                Error::ResourceLimit { what, budget } => json!({"exhausted": what, "budget": budget}),
                other => json!({ "message": other.to_string() }),
            };
            let mut r = CheckResult::new(&spec.id, error_tag(&e), CheckVerdict::Inconclusive, witness);
            r.caveats.push(e.to_string());
            (r, Some(error_tag(&e).to_string()))
        }
    };
    result.id = spec.id.clone();
    if result.verdict == CheckVerdict::Fail && !replays(ctx, spec, &result) {
        result.verdict = CheckVerdict::Inconclusive;
        result.caveats.push("failure witness did not replay".into());
    }
    let raw = match (&error, result.verdict) {
        (Some(tag), _) if tag == "hypothesis-failed" => Expect::HypothesisFailed,
        (_, CheckVerdict::Pass) => Expect::Pass,
        (_, CheckVerdict::Fail) => Expect::Fail,
        (_, CheckVerdict::Inconclusive) => Expect::Inconclusive,
    };
    let outcome = if raw == spec.expect {
        Outcome::AsExpected
    } else if raw == Expect::Inconclusive {
        Outcome::Inconclusive
    } else {
        Outcome::Unexpected
    };
    Ok(CheckOutcome { kind: spec.kind.clone(), result, expected: spec.expect, error, outcome })
}

/// Re-runs a failing check, restricted to the witness prime when there is
/// one, and confirms that it fails again.
fn replays(ctx: &Ctx<'_>, spec: &CheckSpec, result: &CheckResult) -> bool {
    let mut again = spec.clone();
    if let Some(p) = result.witness.get("prime").and_then(|p| p.as_str()) {
        if ctx.fx.prime(p).is_ok() && spec.arg("prime").is_none() && spec.kind != "localization" {
            again.args.insert("primes".into(), p.to_string());
        }
    }
    matches!(run_check(ctx, &again), Ok(r) if r.verdict == CheckVerdict::Fail)
}

/// Runs the checks of a fixture (all, or the one with id `only`). Checks
/// run concurrently; the report lists them sorted by id. Loci of every
/// module are included when running the whole fixture.
pub fn run_fixture(fx: &Fixture, only: Option<&str>) -> Result<Report> {
    let catalog = fx.sample_primes().to_vec();
    let analyses = fx
        .modules
        .iter()
        .map(|m| Ok((m.name.clone(), Arc::new(ModuleAnalysis::new(fx.module(&m.name)?).with_catalog(catalog.clone())))))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let mut declared = Vec::new();
    for (i, p) in fx.primes.iter().enumerate() {
        for q in &p.contains {
            let j = fx.primes.iter().position(|x| &x.name == q).ok_or_else(|| Error::NotFound(format!("prime {q}")))?;
            declared.push((j, i));
        }
    }
    let poset = SamplePoset::new(catalog, &declared)?;
    let ctx = Ctx { fx, analyses, poset };
    let specs: Vec<&CheckSpec> = match only {
        Some(id) => vec![fx.check(id)?],
        None => fx.checks.iter().collect(),
    };
    let mut checks = specs.par_iter().map(|s| settle(&ctx, s)).collect::<Result<Vec<_>>>()?;
    checks.sort_by(|a, b| a.result.id.cmp(&b.result.id));

    let mut loci = Vec::new();
    if only.is_none() {
        for (name, a) in &ctx.analyses {
            for k in LocusKind::all(2) {
                let mut v = match compute_locus(a, k) {
                    Ok(rep) => rep.to_json(fx.ring().names()),
                    Err(e) if is_usage_error(&e) => return Err(e),
                    Err(e) => json!({"kind": k, "error": e.to_string()}),
                };
                v["module"] = json!(name);
                loci.push(v);
            }
        }
    }
    Ok(Report { fixture: fx.name.clone(), checks, loci })
}
