//! The four subcommands. Each returns a report; the caller turns it into an
//! exit code.

use std::fmt;
use std::sync::Arc;

use vabc::bicomplex::{
    check_composable, check_l0, check_lm1, check_shuffle, from_sexpr, probe_tuples, to_sexpr, Cochain, Evaluator, Grade,
    Tag,
};
use vabc::continual::{c2half_scenario, shortseq_scenario, ScenarioConfig, ScenarioReport};
use vabc::diffalg::{
    check_antisymmetry, check_basis_independence, check_leibniz, dot, residual_report, ProductContext, EPSILON,
};
use vabc::voa::{Heisenberg, InstanceDescriptor, Partition, Vector};
use vabc::Error;

use crate::config::RunConfig;
use crate::report::{Report, Status};

pub const SCENARIOS: [&str; 2] = ["shortseq", "c2half"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmdError {
    /// Bad input or configuration; exit code 2.
    Usage(String),
    /// Truncation or reconstruction trouble inside the engine; exit code 3.
    Internal(String),
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Usage(m) => write!(f, "usage error: {m}"),
            CmdError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Domain(_)
            | Error::InconsistentTags(_)
            | Error::ArityMismatch { .. }
            | Error::IndexOutOfRange { .. } => CmdError::Usage(e.to_string()),
            _ => CmdError::Internal(e.to_string()),
        }
    }
}

type CmdResult = Result<Report, CmdError>;

fn instance(n_max: u32) -> Result<Arc<Heisenberg>, CmdError> {
    Ok(Arc::new(Heisenberg::new(n_max)?))
}

fn show_labels(t: &[Partition]) -> String {
    let parts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Instance self-checks, the form and the Virasoro pins.
pub fn axioms(cfg: &RunConfig, instance_text: Option<&str>) -> CmdResult {
    let n_max = match instance_text {
        Some(t) => InstanceDescriptor::parse(t)?.n_max,
        None => cfg.n_max,
    };
    let va = instance(n_max)?;
    let mut rep = Report::new("axioms");
    rep.block(&va.descriptor().to_text());
    let dims: Vec<String> = (0..=n_max).map(|w| va.basis(w).len().to_string()).collect();
    rep.line(format!("graded dimensions: {}", dims.join(" ")));
    for (k, (name, ok)) in va.axiom_checks().into_iter().enumerate() {
        rep.check(format!("axioms.{k}"), if ok { Status::Pass } else { Status::Fail }, name);
    }
    Ok(rep)
}

/// `E^(n)_W(inputs; w)` on every component, with the truncation flag and,
/// for two inputs, the three-region duality comparison.
pub fn correlate(cfg: &RunConfig, inputs: &[String], w: &str) -> CmdResult {
    let vs: Vec<Vector> = inputs.iter().map(|s| s.parse::<Vector>()).collect::<vabc::Result<_>>()?;
    let w: Vector = w.parse()?;
    let va = instance(cfg.n_max)?;
    let ev = Evaluator::for_instance(va);
    let corr = ev.correlators();
    let mut rep = Report::new("correlate");
    let shown: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    rep.line(format!("E({}; {w})", shown.join(", ")));
    rep.block(&corr.e_map_w(&vs, &w)?.to_string());
    if corr.overflow_probe(&vs, &w)? {
        rep.check(
            "correlate.truncation",
            Status::Flag,
            format!("nonzero components above weight {} were dropped", cfg.n_max),
        );
    } else {
        rep.check("correlate.truncation", Status::Pass, "no components above the cutoff");
    }
    if let [u1, u2] = vs.as_slice() {
        let d = corr.duality_check(u1, u2, &w, cfg.order)?;
        rep.block(&d.to_string());
        match d.first_failure() {
            None => rep.check("correlate.duality", Status::Pass, format!("three regions agree through order {}", cfg.order)),
            Some(f) => rep.check("correlate.duality", Status::Fail, f),
        }
    }
    Ok(rep)
}

/// Generators with anchors of weight at most 2: arities 0 and 1 with the
/// indices 2 and 3 the coboundary checks need, and arity 2 with index 1 for
/// the shuffle condition.
pub fn generator_family(va: &Heisenberg) -> Vec<Cochain> {
    let mut out = Vec::new();
    for (n, ms) in [(0, &[2, 3][..]), (1, &[2, 3]), (2, &[1])] {
        for &m in ms {
            for b in va.basis_up_to(2) {
                out.push(Cochain::generator(Vector::basis(b), n, Grade::Whole(m)));
            }
        }
    }
    out
}

/// Parses a family file: one cochain expression per line.
pub fn parse_family(text: &str) -> Result<Vec<Cochain>, CmdError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| from_sexpr(l).map_err(CmdError::from))
        .collect()
}

/// The complex conditions over a cochain family.
pub fn complex(cfg: &RunConfig, family_text: Option<&str>) -> CmdResult {
    let family = family_text.map(parse_family).transpose()?;
    let va = instance(cfg.n_max)?;
    let ev = Evaluator::for_instance(va.clone());
    let family = family.unwrap_or_else(|| generator_family(&va));
    let mut rep = Report::new("complex");
    rep.line(format!("{} cochains, probe weight {}", family.len(), cfg.probe()));
    for (i, c) in family.iter().enumerate() {
        let tag = c.tag();
        rep.line(format!("cochain {i} in {tag}: {}", to_sexpr(c)));
        let id = |s: &str| format!("complex.{i}.{s}");
        if let Grade::Whole(m) = tag.m {
            if m >= 2 {
                let dd = c.delta()?.delta()?;
                rep.check_report(id("dd"), &residual_report(&ev, "delta delta", &dd, cfg.probe()));
            }
            if m == 2 && tag.n == 1 {
                let dd = c.delta()?.viewed_as(Tag::new(2, Grade::Half))?.delta_half()?;
                rep.check_report(id("dhalf-d"), &residual_report(&ev, "delta_1/2 delta", &dd, cfg.probe()));
            }
        }
        rep.check_report(id("l0"), &check_l0(&ev, c, cfg.probe()));
        rep.check_report(id("lm1"), &check_lm1(&ev, c, cfg.probe()));
        if c.arity() >= 2 {
            rep.check_report(id("shuffle"), &check_shuffle(&ev, c, 2, 1, cfg.probe()));
        }
        if let Grade::Whole(m) = tag.m {
            let comp = check_composable(&ev, c, m, cfg.probe());
            rep.check_report(id("composable1"), &comp.condition1);
            rep.check_report(id("composable2"), &comp.condition2);
            if let Some(w) = &comp.warning {
                rep.line(format!("note: {w}"));
            }
        }
    }
    Ok(rep)
}

fn gen(w: &str, n: usize, m: u32) -> Result<Cochain, CmdError> {
    Ok(Cochain::generator(w.parse()?, n, Grade::Whole(m)))
}

/// Product laws on two generators, then the chosen scenario.
pub fn algebra(cfg: &RunConfig) -> CmdResult {
    if !SCENARIOS.contains(&cfg.scenario.as_str()) {
        return Err(CmdError::Usage(format!(
            "unknown scenario `{}`; expected one of {}",
            cfg.scenario,
            SCENARIOS.join(", ")
        )));
    }
    let va = instance(cfg.n_max)?;
    let ev = Evaluator::for_instance(va);
    let mut rep = Report::new("algebra");
    let (phi, psi) = (gen("1", 1, 2)?, gen("a", 1, 2)?);
    let free = ProductContext::free();
    let fifi = dot(&phi, &phi, &ProductContext::diagonal(1, 0))?;
    rep.check_report("algebra.laws.self-dot", &residual_report(&ev, "dot(phi, phi)", &fifi, cfg.probe()));
    rep.check_report("algebra.laws.antisymmetry", &check_antisymmetry(&ev, &phi, &psi, &free, cfg.probe()));
    rep.check_report(
        "algebra.laws.basis",
        &check_basis_independence(&ev, &phi, &psi, &free, cfg.seed, cfg.probe()),
    );
    rep.check_report("algebra.laws.leibniz", &check_leibniz(&ev, &phi, &psi, &free, cfg.probe())?);

    let scfg = ScenarioConfig { probe: cfg.probe(), ansatz_weight: 2, max_steps: 3, jacobi: true };
    let s = if cfg.scenario == "shortseq" { shortseq_scenario(&ev, &scfg)? } else { c2half_scenario(&ev, &scfg)? };
    scenario_into(&mut rep, &s);
    if cfg.eps_eval {
        eps_sample(&mut rep, &ev, &s, cfg.probe())?;
    }
    Ok(rep)
}

fn scenario_into(rep: &mut Report, s: &ScenarioReport) {
    rep.line(format!("scenario {}", s.name));
    for g in &s.grading {
        rep.line(format!("grading: {g}"));
    }
    if let Some(c) = &s.chain {
        for e in &c.index_equations {
            rep.line(format!("index: {e}"));
        }
        rep.relation("algebra.chain.0", &c.premise);
        for (i, r) in c.relations.iter().enumerate() {
            rep.relation(format!("algebra.chain.{}", i + 1), r);
        }
        if !c.stop_reason.is_empty() {
            rep.line(format!("chain stops: {}", c.stop_reason));
        }
    }
    for u in &s.unknowns {
        let state = if u.value.is_some() { "solved" } else { "inconsistent" };
        rep.line(format!("unknown {} in {}: {state}, solution space dim {}", u.name, u.tag, u.solution_dim));
        for (v, c) in &u.coefficients {
            rep.line(format!("  {} * gen({v})", vabc::scalar::fmt_q(c)));
        }
    }
    for (name, c) in &s.model.registry {
        rep.line(format!("generator {name} in {}", c.tag()));
    }
    for (i, r) in s.model.relations.iter().enumerate() {
        rep.relation(format!("algebra.model.{i}"), r);
    }
    for n in &s.model.notes {
        rep.line(format!("note: {n}"));
    }
    for (i, j) in s.jacobi.iter().enumerate() {
        rep.check_report(format!("algebra.jacobi.{i}"), j);
    }
}

/// The first nonzero bracket of two registered generators, shown with the
/// sewing parameter set to 1.
fn eps_sample(rep: &mut Report, ev: &Evaluator, s: &ScenarioReport, probe: u32) -> Result<(), CmdError> {
    let reg = &s.model.registry;
    for (i, (a, x)) in reg.iter().enumerate() {
        for (b, y) in &reg[i + 1..] {
            let ctx = s.model.ctx.fitted(&[(x.tag(), y.tag())]);
            let Ok(p) = dot(x, y, &ctx) else { continue };
            for ins in probe_tuples(ev.va(), p.arity(), probe) {
                let val = ev.evaluate_labels(&p, &ins)?.eval_aux_one(EPSILON);
                if !val.is_zero() {
                    rep.line(format!("eps = 1: [{a}, {b}] on {}", show_labels(&ins)));
                    rep.block(&val.to_string());
                    return Ok(());
                }
            }
        }
    }
    rep.line("eps = 1: every registered bracket vanishes on the probe grid");
    Ok(())
}
