//! Algebra models read off bicomplex relation chains, and the two worked
//! scenarios: the short sequence `C^0_3 -> C^1_2` and the half-index space
//! `C^2_{1/2}`.

use std::fmt;

use crate::bicomplex::{CheckReport, Cochain, Evaluator, Grade, Tag};
use crate::diffalg::{
    aligned_reverse_dot, dot, grading_solutions, orthogonality_chain, residual_report, solve_unknown, ChainConfig,
    ProductContext, Relation, RelationChain, RelationStatus, SolvedUnknown,
};
use crate::error::{Error, Result};
use crate::scalar::sign;
use crate::voa::Vector;

/// Named generators with their brackets checked by evaluation.
#[derive(Debug, Clone)]
pub struct BicomplexAlgebraModel {
    pub registry: Vec<(String, Cochain)>,
    /// Context used for the bracket relations.
    pub ctx: ProductContext,
    pub relations: Vec<Relation>,
    /// Mismatches between the expected and the actual bidegrees of the
    /// generators.
    pub notes: Vec<String>,
}

impl BicomplexAlgebraModel {
    pub fn generator(&self, name: &str) -> Option<&Cochain> {
        self.registry.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn names(&self) -> Vec<&str> {
        self.registry.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.relations.iter().all(|r| r.status == RelationStatus::Verified)
    }

    /// One line per relation: `id|status|witness`.
    pub fn machine_lines(&self) -> Vec<String> {
        self.relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let (st, w) = match &r.status {
                    RelationStatus::Verified => ("pass", String::new()),
                    RelationStatus::Failed(w) => ("fail", w.clone()),
                    RelationStatus::Unverifiable(w) => ("unverifiable", w.clone()),
                };
                format!("model.{i}|{st}|{} == {} {w}", r.lhs, r.rhs).trim_end().to_string()
            })
            .collect()
    }
}

impl fmt::Display for BicomplexAlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in &self.registry {
            writeln!(f, "generator {name} in {}", c.tag())?;
        }
        for r in &self.relations {
            let tag = r.tag.map(|t| t.to_string()).unwrap_or_else(|| "?".into());
            writeln!(f, "{} == {}  [{tag}]  {}", r.lhs, r.rhs, r.status)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn need<'a>(m: &'a [(String, Cochain)], name: &str) -> Result<&'a Cochain> {
    m.iter().find(|(n, _)| n == name).map(|(_, c)| c).ok_or_else(|| Error::Domain(format!("generator {name} is not defined")))
}

/// Registers the generators of `chain` and re-verifies the bracket
/// relations `[H, X+1] = 0`, `[X+1, X-1] = H`, `[Y+1, X-1] = (-1)^n [Y-1, X+1]`,
/// `[Y+1, X-2] = 0`, `[Y+1, Y-i] = 0` and `[Y+1, X-(i+1)] = Y-i`.
/// Relations whose generators are missing are stamped unverifiable.
pub fn build_from_bicomplex(ev: &Evaluator, chain: &RelationChain, ctx: &ProductContext, probe: u32) -> BicomplexAlgebraModel {
    let reg = chain.registry.clone();
    let mut relations = Vec::new();
    let r = &reg;
    let n = need(r, "X+1").map(|c| c.arity() as i64).unwrap_or(0);
    relations.push(Relation::check(
        ev,
        "[H, X+1]",
        "0",
        need(r, "X+1").and_then(|x| aligned_reverse_dot(x, need(r, "H")?, ctx)),
        probe,
    ));
    relations.push(Relation::check(
        ev,
        "[X+1, X-1]",
        "H",
        need(r, "X-1").and_then(|a| dot(need(r, "X+1")?, a, ctx)?.sub(need(r, "H")?)),
        probe,
    ));
    relations.push(Relation::check(
        ev,
        "[Y+1, X-1]",
        &format!("({})[Y-1, X+1]", if n % 2 == 0 { "+1" } else { "-1" }),
        need(r, "X-1").and_then(|a| {
            let (y, ym, x) = (need(r, "Y+1")?, need(r, "Y-1")?, need(r, "X+1")?);
            let fit = ctx.fitted(&[(y.tag(), a.tag()), (ym.tag(), x.tag())]);
            let lhs = dot(y, a, &fit)?;
            let rhs = dot(ym, x, &fit)?;
            Cochain::linear(vec![(sign(0), lhs), (-sign(n), rhs)])
        }),
        probe,
    ));
    let fit_dot = |x: &Cochain, y: &Cochain| dot(x, y, &ctx.fitted(&[(x.tag(), y.tag())]));
    relations.push(Relation::check(ev, "[Y+1, X-2]", "0", need(r, "X-2").and_then(|a| fit_dot(need(r, "Y+1")?, a)), probe));
    let mut i = 1;
    while let Ok(yi) = need(r, &format!("Y-{i}")) {
        relations.push(Relation::check(ev, &format!("[Y+1, Y-{i}]"), "0", need(r, "Y+1").and_then(|y| fit_dot(y, yi)), probe));
        relations.push(Relation::check(
            ev,
            &format!("[Y+1, X-{}]", i + 1),
            &format!("Y-{i}"),
            need(r, &format!("X-{}", i + 1)).and_then(|a| fit_dot(need(r, "Y+1")?, a)?.sub(yi)),
            probe,
        ));
        i += 1;
    }
    let mut notes = Vec::new();
    if let Ok(x) = need(r, "X+1") {
        if x.tag() != Tag::whole(1, 2) {
            notes.push(format!("Y+1 is the coboundary of X+1 in {}, not of a C^1_2 cochain", x.tag()));
        }
    }
    let mut i = 1;
    while let Ok(a) = need(r, &format!("X-{i}")) {
        if a.arity() != 1 {
            notes.push(format!("Y-{i} is the coboundary of X-{i} in {}, not of a one-input cochain", a.tag()));
        }
        i += 1;
    }
    BicomplexAlgebraModel { registry: reg, ctx: ctx.clone(), relations, notes }
}

/// `[A, [B, C]] + [B, [C, A]] + [C, [A, B]]` for brackets without shared
/// slots or operators, with the last two terms permuted into the slot
/// layout `(A, B, C)` of the first.
pub fn jacobi_residual(a: &Cochain, b: &Cochain, c: &Cochain) -> Result<Cochain> {
    let free = ProductContext::free();
    let br = |x: &Cochain, y: &Cochain| dot(x, y, &free);
    let (ka, kb, kc) = (a.arity(), b.arity(), c.arity());
    let block_a: Vec<usize> = (0..ka).collect();
    let block_b: Vec<usize> = (ka..ka + kb).collect();
    let block_c: Vec<usize> = (ka + kb..ka + kb + kc).collect();
    let t1 = br(a, &br(b, c)?)?;
    let t2 = br(b, &br(c, a)?)?.perm([block_b.clone(), block_c.clone(), block_a.clone()].concat())?;
    let t3 = br(c, &br(a, b)?)?.perm([block_c, block_a, block_b].concat())?;
    Cochain::linear(vec![(sign(0), t1), (sign(0), t2), (sign(0), t3)])
}

/// Jacobi residuals for the given generator triples.
pub fn verify_jacobi(ev: &Evaluator, model: &BicomplexAlgebraModel, triples: &[[&str; 3]], probe: u32) -> Vec<CheckReport> {
    triples
        .iter()
        .map(|t| {
            let name = format!("Jacobi ({}, {}, {})", t[0], t[1], t[2]);
            let res = need(&model.registry, t[0]).and_then(|a| {
                jacobi_residual(a, need(&model.registry, t[1])?, need(&model.registry, t[2])?)
            });
            match res {
                Ok(r) => residual_report(ev, &name, &r, probe),
                Err(e) => {
                    let mut rep = CheckReport::new(name);
                    rep.fail(format!("error: {e}"));
                    rep
                }
            }
        })
        .collect()
}

/// All unordered triples of distinct registered generators.
pub fn registered_triples(model: &BicomplexAlgebraModel) -> Vec<[&str; 3]> {
    let names = model.names();
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            for k in j + 1..names.len() {
                out.push([names[i], names[j], names[k]]);
            }
        }
    }
    out
}

/// Parameters shared by the scenarios.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub probe: u32,
    pub ansatz_weight: u32,
    pub max_steps: usize,
    /// Whether to run the Jacobi identities on all registered triples.
    pub jacobi: bool,
}

/// Everything a scenario produces.
#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub name: String,
    pub chain: Option<RelationChain>,
    pub unknowns: Vec<SolvedUnknown>,
    pub model: BicomplexAlgebraModel,
    pub jacobi: Vec<CheckReport>,
    pub grading: Vec<String>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        let failed = |r: &Relation| matches!(r.status, RelationStatus::Failed(_));
        let chain_ok = self.chain.as_ref().is_none_or(|c| !failed(&c.premise) && !c.relations.iter().any(failed));
        chain_ok && !self.model.relations.iter().any(failed) && self.jacobi.iter().all(CheckReport::passed)
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}", self.name)?;
        for g in &self.grading {
            writeln!(f, "{g}")?;
        }
        if let Some(c) = &self.chain {
            write!(f, "{c}")?;
        }
        write!(f, "{}", self.model)?;
        for j in &self.jacobi {
            writeln!(f, "{j}")?;
        }
        Ok(())
    }
}

fn v(s: &str) -> Vector {
    s.parse().expect("literal vector")
}

/// `χ ∈ C^0_3`, `Φ ∈ C^1_2` with `Φ · δχ = 0`, `δχ = Φ · α`, `α ∈ C^1_1`,
/// and the model `H* = χ`, `H = δχ`, `X+ = Φ`, `X- = α`, `Y+ = δΦ`, `Y- = δα`.
pub fn shortseq_scenario(ev: &Evaluator, cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let chi = Cochain::generator(v("a"), 0, Grade::Whole(3));
    let phi = Cochain::generator(v("1"), 1, Grade::Whole(2));
    let ctx = ProductContext::diagonal(1, 1);
    let chain_cfg =
        ChainConfig { ctx: ctx.clone(), max_steps: cfg.max_steps, probe: cfg.probe, ansatz_weight: cfg.ansatz_weight };
    let chain = orthogonality_chain(ev, &chi, &phi, &chain_cfg)?;
    let mut model = build_from_bicomplex(ev, &chain, &ctx, cfg.probe);
    let r = &model.registry;
    let pair = ProductContext::diagonal(1, 0);
    let scen = vec![
        Relation::check(
            ev,
            "[X+(v1), X-(v2)]",
            "H",
            need(r, "X-1").and_then(|a| dot(need(r, "X+1")?, a, &ctx)?.sub(need(r, "H")?)),
            cfg.probe,
        ),
        Relation::check(
            ev,
            "[X+(v1), Y-(v1)]",
            "[X-(v2), Y+(v1)]",
            need(r, "Y-1").and_then(|y| dot(need(r, "X+1")?, y, &pair)?.sub(&dot(need(r, "X-1")?, need(r, "Y+1")?, &pair)?)),
            cfg.probe,
        ),
    ];
    model.relations.extend(scen);
    let jacobi = if cfg.jacobi { verify_jacobi(ev, &model, &registered_triples(&model), cfg.probe) } else { Vec::new() };
    let grading = vec![
        format!("n0+1 = n+n1-r: 1 = 1 + 1 - {}", ctx.r()),
        format!("m0-1 = m+m1-t: 2 = 2 + 1 - {}", ctx.t),
    ];
    Ok(ScenarioReport { name: "shortseq".into(), unknowns: chain.unknowns.clone(), chain: Some(chain), model, jacobi, grading })
}

/// `Φ ∈ C^2_1 ⊂ C^2_{1/2}` with `χ = Φ` viewed in `C^2_0`, the orthogonality
/// `χ · δ_{1/2}Φ = 0` and `δ_{1/2}Φ = χ · β`, `β ∈ C^2_0`; the model is
/// `H = χ`, `X+1 = Φ`, `X+2 = δ_{1/2}Φ`, `Y- = β`.
pub fn c2half_scenario(ev: &Evaluator, cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let phi = Cochain::generator(v("1"), 2, Grade::Whole(1));
    let chi = phi.viewed_as(Tag::whole(2, 0))?;
    let x2 = phi.delta_half()?;
    let ctx = ProductContext::diagonal(1, 0);
    let target = ctx.target(chi.tag(), Tag::whole(2, 0))?;
    let (n, n_prime, r) = (chi.arity(), 2, ctx.r());
    let sols = grading_solutions(3, 0, 3);
    let forced = sols.iter().all(|s| s.m == 0 && s.t == 0 && s.m_prime == 0);
    let mut grading = vec![
        format!("3=n+n'-r: 3 = {n} + {n_prime} - {r}"),
        "0=m+m'-t: 0 = 0 + 0 - 0".to_string(),
        format!(
            "forced m = t = m' = 0: {} ({} solutions of 3=n+n'-r, 0=m+m'-t with m, m' <= 3)",
            if forced { "yes" } else { "no" },
            sols.len()
        ),
    ];
    if target != x2.tag() {
        grading.push(format!("product chi.beta lands in {target}, but d_1/2 Phi is in {}", x2.tag()));
    }
    let beta =
        solve_unknown(ev, "beta", Tag::whole(2, 0), &x2, &|b| dot(&chi, b, &ctx), &ChainConfig {
            ctx: ctx.clone(),
            max_steps: cfg.max_steps,
            probe: cfg.probe,
            ansatz_weight: cfg.ansatz_weight,
        })?;
    let mut registry = vec![("H".to_string(), chi.clone()), ("X+1".into(), phi.clone()), ("X+2".into(), x2.clone())];
    if let Some(b) = &beta.value {
        registry.push(("Y-".into(), b.clone()));
    }
    let r = &registry;
    let relations = vec![
        Relation::check(ev, "[H, X+2]", "0", dot(&chi, &x2, &ctx), cfg.probe),
        Relation::check(ev, "[H, Y-]", "X+2", need(r, "Y-").and_then(|b| dot(&chi, b, &ctx)?.sub(&x2)), cfg.probe),
        Relation::check(ev, "[X-2, X+2]", "H", need(r, "X-2").and_then(|a| dot(a, &x2, &ctx)?.sub(&chi)), cfg.probe),
        Relation::check(
            ev,
            "[Y+, H0]",
            "X+2",
            need(r, "Y+").and_then(|y| dot(y, need(r, "H0")?, &ctx)?.sub(&x2)),
            cfg.probe,
        ),
    ];
    let model = BicomplexAlgebraModel { registry, ctx, relations, notes: Vec::new() };
    Ok(ScenarioReport { name: "c2half".into(), chain: None, unknowns: vec![beta], model, jacobi: Vec::new(), grading })
}
