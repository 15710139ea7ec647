use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use golfer_core::analysis::bounds::approx_ratio_eps;
use golfer_core::analysis::{
    characterize_matching_stuck, check_clique_stuck_characterization, check_extendable_with_budget,
    extend_via_hamiltonian, guarantee_bound, repair_plus_one, verify_rounds, verify_tournament,
};
use golfer_core::constructions::designs::{oberwolfach_solution, resolvable_design, DEFAULT_DESIGN_BUDGET};
use golfer_core::constructions::{
    construct_clique_adversary, construct_cycle_adversary_mod2_with, construct_cycle_adversary_mod4,
    construct_cycle_adversary_odd, construct_matching_adversary, round_robin_circle, Construction,
};
use golfer_core::oracle::{self, OracleConfig};
use golfer_core::tournament::parse_rounds;
use golfer_core::{run_greedy, Error, FactorShape, Rational, ShapeKind, Strategy, Tournament};

use crate::{Family, Format, Kind, OracleMode, Outcome, ShapeArgs, StrategyArg};

/// Search nodes spent on an extendability check before reporting "unknown".
const CHECK_BUDGET: u64 = 2_000_000;

fn shape_of(s: ShapeArgs) -> Result<FactorShape> {
    Ok(match s.shape {
        Kind::Clique => FactorShape::clique(s.k)?,
        Kind::Cycle => FactorShape::cycle(s.k)?,
    })
}

fn emit<T: Serialize>(fmt: Format, value: &T) -> Result<()> {
    let v = serde_json::to_value(value)?;
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&v)?),
        Format::Text => print!("{}", render_text(&v)),
    }
    Ok(())
}

/// `key: value` lines; nested values stay compact JSON.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) if s.contains('\n') => format!("{k}:\n{s}\n"),
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn read_tournament(path: &Path) -> Result<Tournament> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Tournament::from_text(&text)?)
}

fn write_tournament(path: &Path, t: &Tournament) -> Result<()> {
    fs::write(path, t.to_text()).with_context(|| format!("writing {}", path.display()))
}

fn lists(t: &Tournament) -> Vec<Vec<Vec<usize>>> {
    t.rounds().iter().map(|r| r.as_lists()).collect()
}

pub fn run(
    fmt: Format,
    n: usize,
    shape: ShapeArgs,
    strategy: StrategyArg,
    seed: u64,
    pool: usize,
    out: Option<&Path>,
) -> Result<Outcome> {
    let shape = shape_of(shape)?;
    let strategy = match strategy {
        StrategyArg::First => Strategy::FirstFound,
        StrategyArg::Random => Strategy::Random { seed, pool },
    };
    let report = run_greedy(n, shape, strategy)?;
    if let Some(p) = out {
        write_tournament(p, &report.tournament)?;
    }
    let violated = report.stuck && report.rounds_played < report.guarantee;
    match fmt {
        Format::Json => emit(fmt, &report)?,
        Format::Text => {
            println!(
                "n = {n}, {shape}, {}: {} rounds, stuck = {}, guarantee = {}",
                report.strategy, report.rounds_played, report.stuck, report.guarantee
            );
            println!("degree trace: {:?}", report.degree_trace);
            print!("{}", report.tournament.to_text());
        }
    }
    Ok(if violated { Outcome::Violated } else { Outcome::Held })
}

fn need(v: Option<usize>, name: &str, family: Family) -> Result<usize> {
    v.with_context(|| format!("--{name} is required for {family:?}"))
}

#[allow(clippy::too_many_arguments)]
pub fn construct(
    fmt: Format,
    family: Family,
    n: Option<usize>,
    k: Option<usize>,
    i: Option<usize>,
    seed: u64,
    out: Option<&Path>,
    explain: bool,
) -> Result<Outcome> {
    let adversary = !matches!(family, Family::RoundRobin | Family::Design | Family::Oberwolfach);
    let c: Construction = match family {
        Family::RoundRobin => plain(round_robin_circle(need(n, "n", family)?)?, "circle method"),
        Family::Matching => construct_matching_adversary(need(n, "n", family)?)?,
        Family::Clique => construct_clique_adversary(need(n, "n", family)?, need(k, "k", family)?)?,
        Family::CycleOdd => construct_cycle_adversary_odd(need(k, "k", family)?, need(i, "i", family)?)?,
        Family::CycleMod4 => construct_cycle_adversary_mod4(need(k, "k", family)?, need(i, "i", family)?)?,
        Family::CycleMod2 => construct_cycle_adversary_mod2_with(need(k, "k", family)?, need(i, "i", family)?, seed)?,
        Family::Design => {
            let (t, src) = resolvable_design(need(n, "n", family)?, need(k, "k", family)?, Some(DEFAULT_DESIGN_BUDGET))?;
            plain(t, &src.to_string())
        }
        Family::Oberwolfach => {
            let (t, src) = oberwolfach_solution(need(n, "n", family)?, need(k, "k", family)?, Some(DEFAULT_DESIGN_BUDGET))?;
            plain(t, &src.to_string())
        }
    };
    let t = &c.tournament;
    let valid = verify_tournament(t).valid;
    let extendable = if adversary {
        match check_extendable_with_budget(t, CHECK_BUDGET) {
            Ok(r) => Some(r.is_some()),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if let Some(p) = out {
        write_tournament(p, t)?;
    }
    match fmt {
        Format::Json => {
            let mut v = json!({
                "family": format!("{family:?}"),
                "shape": t.shape(),
                "n": t.n(),
                "rounds": t.len(),
                "valid": valid,
                "extendable": extendable,
            });
            if explain {
                v["split"] = json!({
                    "a": c.split.a().iter().collect::<Vec<_>>(),
                    "b": c.split.b().iter().collect::<Vec<_>>(),
                });
                v["provenance"] = json!(c.provenance);
            }
            if out.is_none() {
                v["tournament"] = json!(lists(t));
            }
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Text => {
            if explain {
                println!("# A = {:?}", c.split.a().iter().collect::<Vec<_>>());
                println!("# B = {:?}", c.split.b().iter().collect::<Vec<_>>());
                for line in &c.provenance {
                    println!("# {line}");
                }
                let ext = extendable.map_or("unknown".to_string(), |e| e.to_string());
                println!("# valid = {valid}, extendable = {ext}");
            }
            if out.is_none() {
                print!("{}", t.to_text());
            }
        }
    }
    Ok(if valid && extendable != Some(true) { Outcome::Held } else { Outcome::Violated })
}

fn plain(t: Tournament, source: &str) -> Construction {
    let n = t.n();
    Construction {
        split: golfer_core::constructions::VertexSplit::new(n, (0..n).collect()).expect("0..n is a valid split"),
        provenance: vec![format!("{} rounds from {source}", t.len())],
        tournament: t,
    }
}

pub fn verify(fmt: Format, file: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let (shape, n, rounds) = parse_rounds(&text)?;
    let report = verify_rounds(shape, n, &rounds);
    emit(fmt, &report)?;
    Ok(if report.valid { Outcome::Held } else { Outcome::Violated })
}

pub fn bound(fmt: Format, n: usize, shape: ShapeArgs, epsilon: &str) -> Result<Outcome> {
    let shape = shape_of(shape)?;
    let eps: Rational = epsilon.parse().map_err(|_| anyhow::anyhow!("epsilon {epsilon:?} is not a rational p/q"))?;
    let b = guarantee_bound::<Rational>(n, shape)?;
    let r = approx_ratio_eps::<Rational>(n, shape, eps)?;
    let v = json!({
        "n": n,
        "shape": shape,
        "guarantee": b.guarantee,
        "conditional_guarantee": b.conditional_guarantee,
        "opt_upper": b.opt_upper,
        "instance_ratio": r.instance.to_string(),
        "worst_case_ratio": r.worst_case.to_string(),
        "in_regime": r.in_regime,
        "ratio_holds": r.holds(),
    });
    emit(fmt, &v)?;
    Ok(if !r.in_regime || r.holds() { Outcome::Held } else { Outcome::Violated })
}

pub fn characterize(fmt: Format, file: &Path) -> Result<Outcome> {
    let t = read_tournament(file)?;
    let shape = t.shape();
    let verdict = match (shape.kind, shape.k) {
        (ShapeKind::Clique, 2) => characterize_matching_stuck(&t)?.verdict(),
        (ShapeKind::Clique, _) | (ShapeKind::Cycle, 3) => check_clique_stuck_characterization(&t)?.verdict(),
        _ => bail!("no stuck-state characterization is known for {shape}"),
    };
    emit(fmt, &verdict)?;
    Ok(if verdict.holds { Outcome::Held } else { Outcome::Violated })
}

pub fn repair(fmt: Format, file: &Path, out: Option<&Path>) -> Result<Outcome> {
    let t = read_tournament(file)?;
    let shape = t.shape();
    let (repaired, how) = if shape.kind == ShapeKind::Clique && shape.k == 2 {
        let (a, b) = extend_via_hamiltonian(&t)?;
        (t.extend(a)?.extend(b)?, "two alternating matchings of a Hamiltonian cycle")
    } else {
        (repair_plus_one(&t)?, "vertex exchange in the last round, then one more round")
    };
    let valid = verify_tournament(&repaired).valid;
    if let Some(p) = out {
        write_tournament(p, &repaired)?;
    }
    match fmt {
        Format::Json => {
            let mut v = json!({ "method": how, "rounds_before": t.len(), "rounds_after": repaired.len(), "valid": valid });
            if out.is_none() {
                v["tournament"] = json!(lists(&repaired));
            }
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Text => {
            println!("# {how}: {} -> {} rounds, valid = {valid}", t.len(), repaired.len());
            if out.is_none() {
                print!("{}", repaired.to_text());
            }
        }
    }
    Ok(if valid { Outcome::Held } else { Outcome::Violated })
}

pub fn oracle(
    fmt: Format,
    n: usize,
    shape: ShapeArgs,
    mode: OracleMode,
    cache_dir: Option<&Path>,
    canonical: bool,
) -> Result<Outcome> {
    let shape = shape_of(shape)?;
    let kind = match shape.kind {
        ShapeKind::Clique => "clique",
        ShapeKind::Cycle => "cycle",
    };
    let cache = cache_dir.map(|d| d.join(format!("oracle-{mode:?}-{kind}{}-n{n}.json", shape.k).to_lowercase()));
    let cached = cache.as_ref().filter(|p| p.exists()).map(|p| -> Result<Value> {
        Ok(serde_json::from_str(&fs::read_to_string(p)?)?)
    });
    let v = match cached {
        Some(v) => v?,
        None => {
            let v = oracle_value(n, shape, mode, canonical)?;
            if let Some(p) = &cache {
                if let Some(dir) = p.parent() {
                    fs::create_dir_all(dir)?;
                }
                fs::write(p, serde_json::to_string_pretty(&v)?)?;
            }
            v
        }
    };
    emit(fmt, &v)?;
    Ok(if v["holds"] == Value::Bool(true) { Outcome::Held } else { Outcome::Violated })
}

fn oracle_value(n: usize, shape: FactorShape, mode: OracleMode, canonical: bool) -> Result<Value> {
    let cfg = OracleConfig { canonical_keys: canonical, ..Default::default() };
    let b = guarantee_bound::<Rational>(n, shape)?;
    let mut v = match mode {
        OracleMode::Min => {
            let r = oracle::min_greedy_depth_with(n, shape, &cfg)?;
            let depth = r.min_greedy_depth.expect("min mode sets min depth");
            let mut v = serde_json::to_value(&r)?;
            v["holds"] = json!(depth >= b.guarantee && depth <= b.opt_upper);
            v
        }
        OracleMode::Max => {
            let r = oracle::max_tournament_depth_with(n, shape, &cfg)?;
            let depth = r.max_depth.expect("max mode sets max depth");
            let mut v = serde_json::to_value(&r)?;
            v["holds"] = json!(depth >= b.guarantee && depth <= b.opt_upper);
            v
        }
        OracleMode::Characterize => serde_json::to_value(oracle::exhaustive_characterization_check_with(n, shape, &cfg)?)?,
    };
    v["guarantee"] = json!(b.guarantee);
    v["opt_upper"] = json!(b.opt_upper);
    Ok(v)
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    guarantee: usize,
    conditional_guarantee: Option<usize>,
    trials: usize,
    min_observed: usize,
    max_observed: usize,
    stuck_frequency: f64,
    violations: usize,
    below_conditional: usize,
    /// First run that stopped below the guarantee.
    witness: Option<String>,
}

/// Seed of trial `t` at size `n`.
fn trial_seed(seed: u64, n: usize, t: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 32) ^ t as u64
}

pub fn sweep(
    fmt: Format,
    ns: &[usize],
    shape: ShapeArgs,
    trials: usize,
    seed: u64,
    pool: usize,
    strict: bool,
) -> Result<Outcome> {
    let shape = shape_of(shape)?;
    if trials == 0 {
        bail!("--trials must be positive");
    }
    let mut rows = Vec::new();
    for &n in ns {
        let b = match guarantee_bound::<Rational>(n, shape) {
            Ok(b) => b,
            Err(e @ Error::Divisibility { .. }) if !strict => {
                eprintln!("warning: skipping n = {n}: {e}");
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let reports = (0..trials)
            .into_par_iter()
            .map(|t| run_greedy(n, shape, Strategy::Random { seed: trial_seed(seed, n, t), pool }))
            .collect::<golfer_core::Result<Vec<_>>>()?;
        let depths: Vec<usize> = reports.iter().map(|r| r.rounds_played).collect();
        let conditional = b.conditional_guarantee.map(|c| c.rounds);
        let bad = reports.iter().find(|r| r.stuck && r.rounds_played < b.guarantee);
        rows.push(SweepRow {
            n,
            guarantee: b.guarantee,
            conditional_guarantee: conditional,
            trials,
            min_observed: *depths.iter().min().expect("trials > 0"),
            max_observed: *depths.iter().max().expect("trials > 0"),
            stuck_frequency: reports.iter().filter(|r| r.stuck).count() as f64 / trials as f64,
            violations: reports.iter().filter(|r| r.stuck && r.rounds_played < b.guarantee).count(),
            below_conditional: conditional.map_or(0, |c| reports.iter().filter(|r| r.stuck && r.rounds_played < c).count()),
            witness: bad.map(|r| r.tournament.to_text()),
        });
    }
    let violated = rows.iter().any(|r| r.violations > 0);
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json!({ "shape": shape, "rows": rows }))?),
        Format::Text => {
            println!("{:>5} {:>9} {:>11} {:>6} {:>6} {:>6} {:>10}", "n", "guarantee", "conditional", "min", "max", "stuck", "violations");
            for r in &rows {
                let c = r.conditional_guarantee.map_or("-".to_string(), |c| c.to_string());
                println!(
                    "{:>5} {:>9} {:>11} {:>6} {:>6} {:>6.2} {:>10}",
                    r.n, r.guarantee, c, r.min_observed, r.max_observed, r.stuck_frequency, r.violations
                );
            }
            for r in rows.iter().filter(|r| r.witness.is_some()) {
                println!("\nwitness for n = {}:\n{}", r.n, r.witness.as_deref().unwrap_or_default());
            }
        }
    }
    Ok(if violated { Outcome::Violated } else { Outcome::Held })
}
