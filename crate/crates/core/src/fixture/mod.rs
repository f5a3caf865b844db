//! Fixture files: a line-oriented sectioned format describing a ring,
//! modules over it, sample primes and checks.
//!
//! ```text
//! [ring]
//! name = hypersurface
//! vars = x, y
//! order = grevlex
//! relations = x*y
//!
//! [[module]]
//! name = Rx
//! ideal = x
//!
//! [[prime]]
//! name = m
//! gens = x, y
//! contains = px
//!
//! [[check]]
//! id = oracle-Rx
//! kind = oracle
//! module = Rx
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{minimal_primes, Ideal};
use crate::invariants::PrimeIdeal;
use crate::modres::{AffineRing, ModulePresentation};
use crate::qpoly::{parse_poly, split_top_level, Polynomial, TermOrder};

pub const CHECK_KINDS: &[&str] = &[
    "locus",
    "oracle",
    "stability",
    "nagata",
    "gor_fid_mcm",
    "filtration",
    "nc_star",
    "mcm_sn",
    "gor_equivalence",
    "localization",
    "fitting_invariance",
    "gorenstein_type",
    "bass",
    "resolution",
    "ext",
];

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleBody {
    /// `R^n`.
    Free(usize),
    /// `R/I`.
    Ideal(Vec<Polynomial>),
    /// Cokernel of a matrix given by columns.
    Presentation { gens: usize, columns: Vec<Vec<Polynomial>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleSpec {
    pub name: String,
    pub body: ModuleBody,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeSpec {
    pub name: String,
    pub gens: Vec<Polynomial>,
    /// Names of fixture primes contained in this one.
    pub contains: Vec<String>,
    /// `ring` (minimal over `J`) or a module name (minimal over its
    /// annihilator).
    pub minimal_over: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
    Inconclusive,
    HypothesisFailed,
}

impl Expect {
    pub fn as_str(self) -> &'static str {
        match self {
            Expect::Pass => "pass",
            Expect::Fail => "fail",
            Expect::Inconclusive => "inconclusive",
            Expect::HypothesisFailed => "hypothesis-failed",
        }
    }

    fn parse(s: &str) -> Option<Expect> {
        Some(match s {
            "pass" => Expect::Pass,
            "fail" => Expect::Fail,
            "inconclusive" => Expect::Inconclusive,
            "hypothesis-failed" => Expect::HypothesisFailed,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckSpec {
    pub id: String,
    pub kind: String,
    pub expect: Expect,
    pub args: BTreeMap<String, String>,
}

impl CheckSpec {
    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.arg(key).ok_or_else(|| Error::Validation(format!("check {}: missing argument `{key}`", self.id)))
    }
}

/// A parsed and validated fixture. Equality compares the declarations
/// only.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub vars: Vec<String>,
    pub order: String,
    pub relations: Vec<Polynomial>,
    pub gorenstein: bool,
    pub modules: Vec<ModuleSpec>,
    pub primes: Vec<PrimeSpec>,
    pub checks: Vec<CheckSpec>,
    ring: Arc<AffineRing>,
    built_primes: Vec<PrimeIdeal>,
}

impl PartialEq for Fixture {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
            && self.vars == o.vars
            && self.order == o.order
            && self.relations == o.relations
            && self.gorenstein == o.gorenstein
            && self.modules == o.modules
            && self.primes == o.primes
            && self.checks == o.checks
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Ring,
    Module,
    Prime,
    Check,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn split_list(v: &str) -> Vec<String> {
    if v.trim().is_empty() {
        return Vec::new();
    }
    split_top_level(v, b',').into_iter().map(|s| s.to_string()).collect()
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let mut section = Section::None;
        let mut ring: Vec<(usize, String, String)> = Vec::new();
        let mut blocks: Vec<(Section, usize, Vec<(usize, String, String)>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                section = match line {
                    "[ring]" => Section::Ring,
                    "[[module]]" => Section::Module,
                    "[[prime]]" => Section::Prime,
                    "[[check]]" => Section::Check,
                    _ => return Err(perr(ln, format!("unknown section header {line}"))),
                };
                if section == Section::Ring && !ring.is_empty() {
                    return Err(perr(ln, "duplicate [ring] section"));
                }
                if section != Section::Ring {
                    blocks.push((section, ln, Vec::new()));
                }
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(perr(ln, "expected `key = value`"));
            };
            let entry = (ln, k.trim().to_string(), v.trim().to_string());
            match section {
                Section::None => return Err(perr(ln, "entry before any section")),
                Section::Ring => ring.push(entry),
                _ => blocks.last_mut().unwrap().2.push(entry),
            }
        }

        let take = |entries: &[(usize, String, String)], key: &str| {
            entries.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (*l, v.clone()))
        };
        let reject_unknown = |entries: &[(usize, String, String)], allowed: &[&str]| -> Result<()> {
            let mut seen = Vec::new();
            for (l, k, _) in entries {
                if !allowed.contains(&k.as_str()) {
                    return Err(perr(*l, format!("unknown key `{k}`")));
                }
                if seen.contains(k) {
                    return Err(perr(*l, format!("duplicate key `{k}`")));
                }
                seen.push(k.clone());
            }
            Ok(())
        };

        if ring.is_empty() {
            return Err(perr(0, "missing [ring] section"));
        }
        reject_unknown(&ring, &["name", "vars", "order", "relations", "gorenstein"])?;
        let name = take(&ring, "name").map(|x| x.1).unwrap_or_default();
        let (vl, vs) = take(&ring, "vars").ok_or_else(|| perr(0, "[ring] needs `vars`"))?;
        let vars = split_list(&vs);
        if vars.is_empty() {
            return Err(perr(vl, "no variables declared"));
        }
        for (a, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(perr(vl, format!("bad variable name {v:?}")));
            }
            if vars[..a].contains(v) {
                return Err(perr(vl, format!("variable {v} declared twice")));
            }
        }
        let order = take(&ring, "order").map(|x| x.1).unwrap_or_else(|| "grevlex".into());
        if order != "grevlex" && order != "lex" {
            return Err(perr(take(&ring, "order").unwrap().0, format!("unknown order {order}")));
        }
        let polys = |line: usize, v: &str| -> Result<Vec<Polynomial>> {
            split_list(v)
                .iter()
                .map(|s| parse_poly(s, &vars).map_err(|e| perr(line, e.to_string())))
                .collect()
        };
        let relations = match take(&ring, "relations") {
            Some((l, v)) => polys(l, &v)?,
            None => Vec::new(),
        };
        let gorenstein = match take(&ring, "gorenstein") {
            None => false,
            Some((_, v)) if v == "declared" => true,
            Some((_, v)) if v == "no" => false,
            Some((l, v)) => return Err(perr(l, format!("gorenstein must be `declared` or `no`, got {v}"))),
        };

        let mut modules = Vec::new();
        let mut primes = Vec::new();
        let mut checks = Vec::new();
        for (sec, hl, entries) in &blocks {
            let name_of = |what: &str| -> Result<String> {
                take(entries, what).map(|x| x.1).ok_or_else(|| perr(*hl, format!("section needs `{what}`")))
            };
            match sec {
                Section::Module => {
                    reject_unknown(entries, &["name", "free", "ideal", "gens", "columns"])?;
                    let name = name_of("name")?;
                    let body = if let Some((l, v)) = take(entries, "free") {
                        ModuleBody::Free(v.parse().map_err(|_| perr(l, "free rank must be a number"))?)
                    } else if let Some((l, v)) = take(entries, "ideal") {
                        ModuleBody::Ideal(polys(l, &v)?)
                    } else {
                        let (gl, gv) = take(entries, "gens").ok_or_else(|| perr(*hl, "module needs free, ideal or gens"))?;
                        let gens: usize = gv.parse().map_err(|_| perr(gl, "gens must be a number"))?;
                        let mut columns = Vec::new();
                        if let Some((cl, cv)) = take(entries, "columns") {
                            for c in split_top_level(&cv, b';') {
                                let inner = c
                                    .strip_prefix('[')
                                    .and_then(|c| c.strip_suffix(']'))
                                    .ok_or_else(|| perr(cl, "columns look like [a, b]; [c, d]"))?;
                                let col = polys(cl, inner)?;
                                if col.len() != gens {
                                    return Err(perr(cl, format!("column has {} entries, expected {gens}", col.len())));
                                }
                                columns.push(col);
                            }
                        }
                        ModuleBody::Presentation { gens, columns }
                    };
                    modules.push(ModuleSpec { name, body });
                }
                Section::Prime => {
                    reject_unknown(entries, &["name", "gens", "contains", "minimal_over"])?;
                    let name = name_of("name")?;
                    let (gl, gv) = take(entries, "gens").ok_or_else(|| perr(*hl, "prime needs `gens`"))?;
                    primes.push(PrimeSpec {
                        name,
                        gens: polys(gl, &gv)?,
                        contains: take(entries, "contains").map(|x| split_list(&x.1)).unwrap_or_default(),
                        minimal_over: take(entries, "minimal_over").map(|x| split_list(&x.1)).unwrap_or_default(),
                    });
                }
                Section::Check => {
                    let id = name_of("id")?;
                    let (kl, kind) = take(entries, "kind").ok_or_else(|| perr(*hl, "check needs `kind`"))?;
                    if !CHECK_KINDS.contains(&kind.as_str()) {
                        return Err(perr(kl, format!("unknown check kind {kind}")));
                    }
                    let expect = match take(entries, "expect") {
                        None => Expect::Pass,
                        Some((l, v)) => Expect::parse(&v).ok_or_else(|| perr(l, format!("unknown expectation {v}")))?,
                    };
                    let mut args = BTreeMap::new();
                    for (l, k, v) in entries {
                        if k == "id" || k == "kind" || k == "expect" {
                            continue;
                        }
                        if args.insert(k.clone(), v.clone()).is_some() {
                            return Err(perr(*l, format!("duplicate key `{k}`")));
                        }
                    }
                    checks.push(CheckSpec { id, kind, expect, args });
                }
                _ => unreachable!(),
            }
        }
        Self::build(name, vars, order, relations, gorenstein, modules, primes, checks)
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        name: String,
        vars: Vec<String>,
        order: String,
        relations: Vec<Polynomial>,
        gorenstein: bool,
        modules: Vec<ModuleSpec>,
        primes: Vec<PrimeSpec>,
        checks: Vec<CheckSpec>,
    ) -> Result<Fixture> {
        let n = vars.len();
        let ord = if order == "lex" { TermOrder::lex(n) } else { TermOrder::grevlex(n) };
        let mut ring = AffineRing::with_order(vars.clone(), ord, Ideal::new(n, relations.iter().cloned()))?;
        if gorenstein {
            ring = ring.declare_gorenstein();
        }
        let unique = |names: Vec<&String>, what: &str| -> Result<()> {
            for (i, a) in names.iter().enumerate() {
                if names[..i].contains(a) {
                    return Err(Error::Validation(format!("duplicate {what} name {a}")));
                }
            }
            Ok(())
        };
        unique(modules.iter().map(|m| &m.name).collect(), "module")?;
        unique(primes.iter().map(|p| &p.name).collect(), "prime")?;
        unique(checks.iter().map(|c| &c.id).collect(), "check")?;

        let mut built = Vec::new();
        for p in &primes {
            let prime = PrimeIdeal::declared(&Ideal::new(n, p.gens.iter().cloned()))
                .map_err(|e| Error::Validation(format!("prime {}: {e}", p.name)))?
                .with_name(p.name.clone());
            if !prime.contains_ideal(ring.relations()) {
                return Err(Error::Validation(format!("prime {} does not contain the ring relations", p.name)));
            }
            built.push(prime);
        }
        let fx = Fixture { name, vars, order, relations, gorenstein, modules, primes, checks, ring, built_primes: built };
        fx.validate()?;
        Ok(fx)
    }

    fn validate(&self) -> Result<()> {
        for m in &self.modules {
            self.module(&m.name)?;
        }
        for (spec, p) in self.primes.iter().zip(&self.built_primes) {
            for q in &spec.contains {
                let q = self.prime(q)?;
                if !p.contains_ideal(q.ideal()) {
                    return Err(Error::Validation(format!(
                        "declared containment {} ⊆ {} fails",
                        q.name().unwrap_or("?"),
                        spec.name
                    )));
                }
            }
        }
        // declared minimal primes, grouped by the ideal they are minimal over
        let mut targets: BTreeMap<&str, Vec<PrimeIdeal>> = BTreeMap::new();
        for (spec, p) in self.primes.iter().zip(&self.built_primes) {
            for t in &spec.minimal_over {
                targets.entry(t.as_str()).or_default().push(p.clone());
            }
        }
        for (t, declared) in targets {
            let ideal = if t == "ring" {
                self.ring.relations().clone()
            } else {
                self.module(t)?.annihilator()?.sum(self.ring.relations())
            };
            let checked = crate::groebner::minimal_primes_declared(&ideal, &declared)
                .map_err(|e| Error::Validation(format!("minimal primes over {t}: {e}")))?;
            for p in &declared {
                if !checked.contains(p) {
                    return Err(Error::Validation(format!(
                        "prime {} is not minimal over {t}",
                        p.name().unwrap_or("?")
                    )));
                }
            }
            if let Ok(exact) = minimal_primes(&ideal) {
                for p in &declared {
                    if !exact.contains(p) {
                        return Err(Error::Validation(format!(
                            "prime {} is not among the minimal primes over {t}",
                            p.name().unwrap_or("?")
                        )));
                    }
                }
            }
        }
        for c in &self.checks {
            for key in ["module", "module_a", "module_b"] {
                if let Some(m) = c.arg(key) {
                    self.module(m)?;
                }
            }
            if let Some(p) = c.arg("prime") {
                self.prime(p)?;
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<AffineRing> {
        &self.ring
    }

    /// The declared primes, named, in file order.
    pub fn sample_primes(&self) -> &[PrimeIdeal] {
        &self.built_primes
    }

    pub fn prime(&self, name: &str) -> Result<&PrimeIdeal> {
        self.built_primes
            .iter()
            .find(|p| p.name() == Some(name))
            .ok_or_else(|| Error::NotFound(format!("prime {name}")))
    }

    pub fn module(&self, name: &str) -> Result<ModulePresentation> {
        let spec = self
            .modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::NotFound(format!("module {name}")))?;
        let r = self.ring.clone();
        Ok(match &spec.body {
            ModuleBody::Free(k) => ModulePresentation::free(r, *k),
            ModuleBody::Ideal(g) => ModulePresentation::cyclic(r.clone(), &Ideal::new(r.nvars(), g.iter().cloned())),
            ModuleBody::Presentation { gens, columns } => ModulePresentation::from_columns(r, *gens, columns.clone()),
        })
    }

    pub fn check(&self, id: &str) -> Result<&CheckSpec> {
        self.checks.iter().find(|c| c.id == id).ok_or_else(|| Error::NotFound(format!("check {id}")))
    }

    /// Parses a comma-separated list of polynomials in the fixture
    /// variables.
    pub fn polys(&self, src: &str) -> Result<Vec<Polynomial>> {
        split_list(src).iter().map(|s| parse_poly(s, &self.vars)).collect()
    }

    pub fn ideal(&self, src: &str) -> Result<Ideal> {
        Ok(Ideal::new(self.vars.len(), self.polys(src)?))
    }

    /// Canonical text; `parse(print(f)) == f`.
    pub fn print(&self) -> String {
        let list = |ps: &[Polynomial]| ps.iter().map(|p| p.fmt_with(&self.vars).to_string()).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        out.push_str("[ring]\n");
        if !self.name.is_empty() {
            let _ = writeln!(out, "name = {}", self.name);
        }
        let _ = writeln!(out, "vars = {}", self.vars.join(", "));
        let _ = writeln!(out, "order = {}", self.order);
        if !self.relations.is_empty() {
            let _ = writeln!(out, "relations = {}", list(&self.relations));
        }
        if self.gorenstein {
            out.push_str("gorenstein = declared\n");
        }
        for m in &self.modules {
            let _ = writeln!(out, "\n[[module]]\nname = {}", m.name);
            match &m.body {
                ModuleBody::Free(k) => {
                    let _ = writeln!(out, "free = {k}");
                }
                ModuleBody::Ideal(g) => {
                    let _ = writeln!(out, "ideal = {}", list(g));
                }
                ModuleBody::Presentation { gens, columns } => {
                    let _ = writeln!(out, "gens = {gens}");
                    if !columns.is_empty() {
                        let cols: Vec<String> = columns.iter().map(|c| format!("[{}]", list(c))).collect();
                        let _ = writeln!(out, "columns = {}", cols.join("; "));
                    }
                }
            }
        }
        for p in &self.primes {
            let _ = writeln!(out, "\n[[prime]]\nname = {}\ngens = {}", p.name, list(&p.gens));
            if !p.contains.is_empty() {
                let _ = writeln!(out, "contains = {}", p.contains.join(", "));
            }
            if !p.minimal_over.is_empty() {
                let _ = writeln!(out, "minimal_over = {}", p.minimal_over.join(", "));
            }
        }
        for c in &self.checks {
            let _ = writeln!(out, "\n[[check]]\nid = {}\nkind = {}", c.id, c.kind);
            if c.expect != Expect::Pass {
                let _ = writeln!(out, "expect = {}", c.expect.as_str());
            }
            for (k, v) in &c.args {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HYPER: &str = "\
[ring]
name = h
vars = x, y
relations = x*y

[[module]]
name = Rx
ideal = x

[[module]]
name = N
gens = 2
columns = [x, 0]; [y, x^2 - 1]

[[prime]]
name = px
gens = x
minimal_over = ring

[[prime]]
name = py
gens = y
minimal_over = ring

[[prime]]
name = m
gens = x, y
contains = px   # px ⊆ m

[[check]]
id = c1
kind = oracle
module = Rx
kinds = all
";

    #[test]
    fn ring_only() {
        let f = Fixture::parse("[ring]\nvars = x, y\nrelations = x*y\n").unwrap();
        assert!(f.modules.is_empty());
        assert_eq!(f.ring().nvars(), 2);
    }

    #[test]
    fn parses_and_round_trips() {
        let f = Fixture::parse(HYPER).unwrap();
        assert_eq!(f.modules.len(), 2);
        assert_eq!(f.sample_primes().len(), 3);
        assert_eq!(f.module("N").unwrap().num_gens(), 2);
        let again = Fixture::parse(&f.print()).unwrap();
        assert_eq!(again, f);
        assert_eq!(again.print(), f.print());
    }

    #[test]
    fn rejects_bad_input() {
        let undeclared = "[ring]\nvars = x, y\nrelations = x*z\n";
        assert!(matches!(Fixture::parse(undeclared), Err(Error::Parse { line: 3, .. })));
        let bad_containment = HYPER.replace("name = m\ngens = x, y", "name = m\ngens = x - 1, y");
        assert!(matches!(Fixture::parse(&bad_containment), Err(Error::Validation(_))));
        let not_minimal = HYPER.replace("gens = x\nminimal_over", "gens = x, y - 3\nminimal_over");
        assert!(matches!(Fixture::parse(&not_minimal), Err(Error::Validation(_))));
        let no_j = HYPER.replace("gens = x\n", "gens = x - 1\n");
        assert!(matches!(Fixture::parse(&no_j), Err(Error::Validation(_))));
        assert!(matches!(Fixture::parse("[ring]\nvars = x\n[bogus]\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(
            Fixture::parse("[ring]\nvars = x\n[[check]]\nid = a\nkind = nope\n"),
            Err(Error::Parse { line: 5, .. })
        ));
    }
}
