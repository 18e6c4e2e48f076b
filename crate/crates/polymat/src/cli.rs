//! Command-line front end.
//!
//! Analysis commands write a JSON report to `--output` (or standard output)
//! and a one-line summary to standard error. Constructors (`veronese`,
//! `product`, `power`, `random`) write instance files instead.
//!
//! Exit codes: 0 pass, 1 check failed, 2 parse or configuration error,
//! 3 resource cap hit.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polymat_core::groebner::{buchberger, certify_generation, search_quadratic_order, MonomialOrder, OrderKind};
use polymat_core::invariants::{rees_generators, rees_presentation, HilbertData};
use polymat_core::toric::{exchange_relations, linear_relations, minimal_generators, single_column_moves, white_check};
use polymat_core::transversal::{gorenstein_candidate, hibi_order, hibi_relations, substitute_linear};
use polymat_core::{
    veronese_type, Binomial, MonomialBasis, MoveKind, MoveSet, Presentation, ProductStructure, DEFAULT_D_MAX,
    DEFAULT_FIBER_CAP, DEFAULT_STEP_CAP,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::formats::{self, Input, ParseError};
use crate::random;
use crate::report;
use crate::suites::{self, Caps, Suite};

#[derive(Debug, Parser)]
#[command(name = "polymat", version, about = "Discrete polymatroid bases and their toric algebras")]
pub struct Cli {
    /// Seed for random instances and corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for corpus runs (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report (or instance file) here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Truncation degree for fiber sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_D_MAX)]
    pub d_max: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_FIBER_CAP)]
    pub fiber_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_CAP)]
    pub step_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Moves {
    Proper,
    Generalized,
    SingleColumn,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Lex,
    Deglex,
    Degrevlex,
}

impl From<Order> for OrderKind {
    fn from(o: Order) -> Self {
        match o {
            Order::Lex => OrderKind::Lex,
            Order::Deglex => OrderKind::DegLex,
            Order::Degrevlex => OrderKind::DegRevLex,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exchange properties, profile and witnesses of a basis.
    Check { input: PathBuf },
    /// Symmetric exchange and linear relations.
    Exchange {
        input: PathBuf,
        #[arg(long)]
        generalized: bool,
    },
    /// Veronese-type basis of a profile.
    Veronese {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u64,
        #[arg(long, value_delimiter = ',')]
        lower: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        upper: Vec<u64>,
    },
    /// Product of the given bases or products.
    Product {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// k-th power as a product of k copies.
    Power {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Presentation variables, linear relations and minimal generators.
    Toric { input: PathBuf },
    /// Fiber-connectivity check of a move set up to --d-max.
    White {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Moves::Proper)]
        moves: Moves,
    },
    /// Gröbner basis of the minimal generators.
    Groebner {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Lex)]
        order: Order,
        /// Variables from largest to smallest, one-based.
        #[arg(long, value_delimiter = ',')]
        ranking: Option<Vec<usize>>,
        /// Search candidate orders for a quadratic Gröbner basis.
        #[arg(long)]
        search: bool,
    },
    /// Hibi relations of a transversal structure.
    Hibi { input: PathBuf },
    /// Hibi relations after removing the linear relation.
    TransGb { input: PathBuf },
    /// Hilbert function, dimension and h-vector.
    Hilbert {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Bidegrees of minimal generators of the Rees ideal.
    Rees {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        cap_x: usize,
        #[arg(long, default_value_t = 3)]
        cap_y: usize,
    },
    /// Palindromic h-vector evidence for a transversal structure.
    Gorenstein {
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        max_degree: usize,
    },
    /// Random products of Veronese-type bases.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u64,
        /// Number of factors.
        #[arg(long, default_value_t = 1)]
        factors: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Directory for the instance files.
        #[arg(long)]
        dir: PathBuf,
    },
    /// Property suites over seeded random corpora.
    Corpus {
        /// Suites to run (default: all).
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Where to write the reproducer of the first failing instance.
        #[arg(long, default_value = ".")]
        repro_dir: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] polymat_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_cap() => 3,
            _ => 2,
        }
    }
}

type Res<T> = Result<T, CliError>;

/// What a command produced: a JSON report or instance text, plus a verdict.
struct Output {
    text: String,
    pass: bool,
    summary: String,
    /// Exit code override for a non-passing verdict.
    code: Option<i32>,
}

fn config(cli: &Cli) -> Caps {
    Caps { d_max: cli.d_max, fiber_cap: cli.fiber_cap, step_cap: cli.step_cap }
}

fn load(path: &Path) -> Res<Input> {
    Ok(formats::read_file(path)?)
}

fn presentation(input: &Input) -> Res<Presentation> {
    Ok(match input {
        Input::Basis(b) => Presentation::from_basis(b),
        Input::Product(p) => Presentation::from_product(p)?,
        Input::Transversal(t) => t.presentation()?,
    })
}

fn flattened(input: &Input) -> Res<MonomialBasis> {
    Ok(match input {
        Input::Basis(b) => b.clone(),
        Input::Product(p) => p.flattened().clone(),
        Input::Transversal(t) => t.product()?.flattened().clone(),
    })
}

fn factors(input: &Input) -> Res<Vec<MonomialBasis>> {
    Ok(match input {
        Input::Basis(b) => vec![b.clone()],
        Input::Product(p) => p.factors().to_vec(),
        Input::Transversal(t) => t.product()?.factors().to_vec(),
    })
}

fn transversal(input: Input) -> Res<polymat_core::TransversalStructure> {
    match input {
        Input::Transversal(t) => Ok(t),
        _ => Err(CliError::Config("this command needs a TRANSVERSAL file".into())),
    }
}

fn json_output(command: &str, cfg: Value, pass: bool, results: Value, summary: String) -> Output {
    Output { text: report::render(&report::envelope(command, cfg, pass, results)), pass, summary, code: None }
}

fn input_name(p: &Path) -> Value {
    json!(p.display().to_string())
}

fn cmd_check(path: &Path) -> Res<Output> {
    let input = load(path)?;
    let b = flattened(&input)?;
    let profile = b.profile();
    let poly = b.polymatroidal_witness();
    let sym = b.verify_symmetric_exchange();
    let sep = b.sep_witness()?;
    let rebuilt = veronese_type(b.n(), b.degree(), &profile.lower, &profile.upper)?;
    let missing: Vec<Value> = rebuilt.iter().filter(|m| !b.contains(m)).map(report::monomial).collect();
    let shortcut = if sep.is_none() { Some(b.shortcut_property()?) } else { None };
    let factor_sep = factors(&input)?.iter().map(|f| f.has_sep()).collect::<Result<Vec<_>, _>>()?;
    let results = json!({
        "n": b.n(),
        "degree": b.degree(),
        "size": b.len(),
        "profile": {"lower": profile.lower, "upper": profile.upper},
        "polymatroidal": poly.is_none(),
        "polymatroidal_witness": poly.as_ref().map(|w| json!({
            "f": report::monomial(&w.f), "g": report::monomial(&w.g), "i": w.i + 1,
        })),
        "symmetric_exchange": sym,
        "sep": sep.is_none(),
        "sep_witness": sep.as_ref().map(|w| json!({
            "f": report::monomial(&w.f), "g": report::monomial(&w.g), "i": w.i + 1, "j": w.j + 1,
        })),
        "veronese_missing": missing,
        "shortcut": shortcut,
        "factor_sep": factor_sep,
    });
    // polymatroidal bases must satisfy symmetric exchange
    let pass = poly.is_none() && sym;
    let summary = format!("polymatroidal: {}, SEP: {}, symmetric exchange: {sym}", poly.is_none(), sep.is_none());
    Ok(json_output("check", json!({"input": input_name(path)}), pass, results, summary))
}

fn cmd_exchange(path: &Path, generalized: bool) -> Res<Output> {
    let pres = presentation(&load(path)?)?;
    let moves = exchange_relations(&pres, generalized);
    let linear = linear_relations(&pres);
    let results = json!({
        "kind": moves.kind.name(),
        "relations": report::binomials(&pres, moves.iter()),
        "linear": report::binomials(&pres, linear.iter()),
    });
    let summary = format!("{} exchange relations, {} linear", moves.len(), linear.len());
    let cfg = json!({"input": input_name(path), "generalized": generalized});
    Ok(json_output("exchange", cfg, true, results, summary))
}

fn instance_output(text: String, summary: String) -> Output {
    Output { text, pass: true, summary, code: None }
}

fn cmd_veronese(n: usize, d: u64, lower: &[u64], upper: &[u64]) -> Res<Output> {
    let lower = if lower.is_empty() { vec![0; n] } else { lower.to_vec() };
    let upper = if upper.is_empty() { vec![d; n] } else { upper.to_vec() };
    let b = veronese_type(n, d, &lower, &upper)?;
    Ok(instance_output(formats::write_basis(&b), format!("{} monomials", b.len())))
}

fn cmd_product(paths: &[PathBuf]) -> Res<Output> {
    let mut all = Vec::new();
    for p in paths {
        all.extend(factors(&load(p)?)?);
    }
    let p = ProductStructure::new(all)?;
    let summary = format!("{} factors, {} distinct monomials", p.factors().len(), p.flattened().len());
    Ok(instance_output(formats::write_product(&p), summary))
}

fn cmd_power(path: &Path, k: usize) -> Res<Output> {
    let base = factors(&load(path)?)?;
    if k == 0 {
        return Err(CliError::Config("--k must be positive".into()));
    }
    let p = ProductStructure::new(base.iter().cloned().cycle().take(base.len() * k).collect())?;
    let summary = format!("power {k}: {} distinct monomials, SEP {}", p.flattened().len(), p.flattened().has_sep()?);
    Ok(instance_output(formats::write_product(&p), summary))
}

fn cmd_toric(path: &Path, caps: Caps) -> Res<Output> {
    let pres = presentation(&load(path)?)?;
    let vars: Vec<Value> = pres
        .vars()
        .iter()
        .map(|v| json!({"label": v.label.to_string(), "image": report::monomial(&v.image)}))
        .collect();
    let linear = linear_relations(&pres);
    let gens = minimal_generators(&pres, caps.d_max, caps.fiber_cap)?;
    let results = json!({
        "variables": vars,
        "linear": report::binomials(&pres, linear.iter()),
        "minimal_generators": report::binomials(&pres, &gens),
    });
    let summary = format!("{} variables, {} minimal generators up to degree {}", pres.len(), gens.len(), caps.d_max);
    let cfg = json!({"input": input_name(path), "d_max": caps.d_max, "fiber_cap": caps.fiber_cap});
    Ok(json_output("toric", cfg, true, results, summary))
}

fn cmd_white(path: &Path, kind: Moves, caps: Caps) -> Res<Output> {
    let pres = presentation(&load(path)?)?;
    let moves = match kind {
        Moves::Proper => exchange_relations(&pres, false),
        Moves::Generalized => exchange_relations(&pres, true),
        Moves::SingleColumn => single_column_moves(&pres, caps.d_max, caps.fiber_cap)?,
        Moves::None => MoveSet::new(MoveKind::Custom),
    };
    let r = white_check(&pres, &moves, caps.d_max, caps.fiber_cap)?;
    let summary = match &r.first_failure {
        None => format!("pass: all fibers up to degree {} connected", caps.d_max),
        Some(f) => format!("FAIL: degree {} fiber over {} has {} components", f.degree, f.target, f.components.len()),
    };
    let cfg = json!({
        "input": input_name(path), "moves": kind.to_possible_value().unwrap().get_name(),
        "d_max": caps.d_max, "fiber_cap": caps.fiber_cap,
    });
    Ok(json_output("white", cfg, r.pass, report::white(&pres, &r), summary))
}

/// Candidate orders: each kind with the natural and the reversed ranking,
/// then every permutation when there are at most five variables.
fn candidate_orders(nvars: usize) -> Vec<MonomialOrder> {
    let kinds = [OrderKind::Lex, OrderKind::DegLex, OrderKind::DegRevLex];
    let mut rankings = vec![(0..nvars).collect::<Vec<_>>(), (0..nvars).rev().collect()];
    if nvars <= 5 {
        let mut perm: Vec<usize> = (0..nvars).collect();
        let mut all = Vec::new();
        permutations(&mut perm, 0, &mut all);
        rankings.extend(all);
    }
    let mut out = Vec::new();
    for r in &rankings {
        for &k in &kinds {
            let o = MonomialOrder::new(k, r.clone()).expect("permutation");
            if !out.contains(&o) {
                out.push(o);
            }
        }
    }
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn cmd_groebner(path: &Path, order: Order, ranking: Option<&[usize]>, search: bool, caps: Caps) -> Res<Output> {
    let pres = presentation(&load(path)?)?;
    let gens = minimal_generators(&pres, caps.d_max, caps.fiber_cap)?;
    let mut cfg = json!({
        "input": input_name(path), "d_max": caps.d_max, "step_cap": caps.step_cap, "search": search,
    });
    if search {
        let (trials, hit) = search_quadratic_order(&gens, candidate_orders(pres.len()), caps.step_cap);
        let tried: Vec<Value> = trials
            .iter()
            .map(|t| match &t.outcome {
                Ok(gb) => json!({"order": t.order.to_string(), "size": gb.len(), "max_degree": gb.max_degree()}),
                Err(e) => json!({"order": t.order.to_string(), "error": e.to_string()}),
            })
            .collect();
        let found = hit.map(|k| &trials[k]);
        let basis = found.and_then(|t| t.outcome.as_ref().ok()).map(|gb| report::binomials(&pres, &gb.binomials()));
        let results = json!({
            "generators": report::binomials(&pres, &gens),
            "trials": tried,
            "quadratic_order": found.map(|t| t.order.to_string()),
            "basis": basis,
        });
        let summary = match found {
            Some(t) => format!("quadratic Gröbner basis under {} after {} trials", t.order, trials.len()),
            None => format!("no quadratic Gröbner basis among {} orders (evidence only)", trials.len()),
        };
        return Ok(json_output("groebner", cfg, found.is_some(), results, summary));
    }
    let ranking = match ranking {
        Some(r) => r
            .iter()
            .map(|&v| v.checked_sub(1).ok_or_else(|| CliError::Config("ranking entries are one-based".into())))
            .collect::<Res<Vec<_>>>()?,
        None => (0..pres.len()).collect(),
    };
    let order = MonomialOrder::new(order.into(), ranking)?;
    cfg["order"] = json!(order.to_string());
    let cert = certify_generation(&pres, &gens, &order, caps.d_max, caps.step_cap, caps.fiber_cap)?;
    let gb = &cert.basis;
    let results = json!({
        "generators": report::binomials(&pres, &gens),
        "basis": report::binomials(&pres, &gb.binomials()),
        "size": gb.len(),
        "quadratic": gb.is_quadratic(),
        "s_pairs": gb.stats().s_pairs,
        "coprime_skipped": gb.stats().coprime_skipped,
        "added": gb.stats().added,
        "certified": cert.certified,
        "certification_failure": cert.failure.as_ref().map(|f| json!({
            "degree": f.degree, "target": report::monomial(&f.target), "standard_monomials": f.normal_forms,
        })),
    });
    let summary = format!(
        "{} elements, quadratic {}, certified up to degree {}: {}",
        gb.len(),
        gb.is_quadratic(),
        caps.d_max,
        cert.certified
    );
    Ok(json_output("groebner", cfg, cert.certified, results, summary))
}

fn leading_terms(pres: &Presentation, gb: &polymat_core::GroebnerBasis) -> Value {
    Value::Array(gb.elements().iter().map(|e| report::y_monomial(pres, &e.lead)).collect())
}

fn cmd_hibi(path: &Path, caps: Caps) -> Res<Output> {
    let t = transversal(load(path)?)?;
    let pres = t.presentation()?;
    let hibi = hibi_relations(&t)?;
    let order = hibi_order(&t)?;
    let gens: Vec<Binomial> = hibi.iter().cloned().collect();
    let gb = buchberger(&gens, &order, caps.step_cap)?;
    let unchanged = gb.binomials() == gens;
    let results = json!({
        "variables": pres.len(),
        "relations": report::binomials(&pres, &gens),
        "linear": report::binomials(&pres, linear_relations(&pres).iter()),
        "order": order.to_string(),
        "leading_terms": leading_terms(&pres, &gb),
        "added": gb.stats().added,
        "groebner_basis": unchanged,
    });
    let summary = format!("{} Hibi relations, Gröbner basis under the Hibi order: {unchanged}", gens.len());
    let cfg = json!({"input": input_name(path), "step_cap": caps.step_cap});
    Ok(json_output("hibi", cfg, unchanged, results, summary))
}

fn cmd_trans_gb(path: &Path, caps: Caps) -> Res<Output> {
    let t = transversal(load(path)?)?;
    let sub = substitute_linear(&t)?;
    let pres = sub.structure.presentation()?;
    let order = hibi_order(&sub.structure)?;
    let gens: Vec<Binomial> = sub.moves.iter().cloned().collect();
    let gb = buchberger(&gens, &order, caps.step_cap)?;
    let unchanged = gb.binomials() == gens;
    let quadratic = gb.is_quadratic();
    let results = json!({
        "orderings": formats::write_transversal(&sub.structure).lines().skip(1).collect::<Vec<_>>(),
        "removed": pres.vars()[sub.removed].label.to_string(),
        "kept": pres.vars()[sub.kept].label.to_string(),
        "relations": report::binomials(&pres, &gens),
        "order": order.to_string(),
        "added": gb.stats().added,
        "groebner_basis": unchanged,
        "quadratic": quadratic,
    });
    let summary = format!(
        "{} relations after {} -> {}; Gröbner basis: {unchanged}, quadratic: {quadratic}",
        gens.len(),
        pres.vars()[sub.removed].label,
        pres.vars()[sub.kept].label
    );
    let cfg = json!({"input": input_name(path), "step_cap": caps.step_cap});
    Ok(json_output("trans-gb", cfg, unchanged && quadratic, results, summary))
}

fn hilbert_json(h: &HilbertData) -> Value {
    json!({
        "values": h.values,
        "dim": h.dim,
        "h_vector": h.h_vector,
        "stabilized": h.stabilized,
        "palindromic": h.is_palindromic(),
    })
}

fn cmd_hilbert(path: &Path, max_degree: usize) -> Res<Output> {
    let b = flattened(&load(path)?)?;
    let h = HilbertData::compute(&b, max_degree)?;
    let summary = if h.stabilized {
        format!("dim {}, h-vector {:?}, palindromic: {}", h.dim, h.h_vector, h.is_palindromic())
    } else {
        format!("h-vector not stabilized by degree {max_degree}; raise --max-degree")
    };
    let cfg = json!({"input": input_name(path), "max_degree": max_degree});
    let mut out = json_output("hilbert", cfg, h.stabilized, hilbert_json(&h), summary);
    out.code = (!h.stabilized).then_some(3);
    Ok(out)
}

fn cmd_rees(path: &Path, cap_x: usize, cap_y: usize, caps: Caps) -> Res<Output> {
    let pres = presentation(&load(path)?)?;
    let rees = rees_presentation(&pres)?;
    let gens = rees_generators(&rees, cap_x, cap_y, caps.fiber_cap)?;
    let bidegrees: Vec<Value> = gens.iter().map(|g| json!([g.bidegree.x_degree, g.bidegree.y_degree])).collect();
    let allowed = |x: usize, y: usize| matches!((x, y), (0, 1) | (0, 2) | (1, 1));
    let outside = gens.iter().filter(|g| !allowed(g.bidegree.x_degree, g.bidegree.y_degree)).count();
    let linear = gens.iter().filter(|g| (g.bidegree.x_degree, g.bidegree.y_degree) == (0, 1)).count();
    let results = json!({
        "generators": gens.iter().map(|g| json!({
            "binomial": report::binomial(&rees, &g.binomial),
            "bidegree": [g.bidegree.x_degree, g.bidegree.y_degree],
        })).collect::<Vec<_>>(),
        "bidegrees": bidegrees,
        "degree_01": linear,
        "outside_01_02_11": outside,
    });
    let shown: Vec<String> = gens.iter().map(|g| g.bidegree.to_string()).collect();
    let mut summary = format!("bidegrees {{{}}}", shown.join(", "));
    if linear > 0 {
        summary.push_str(&format!("; {linear} of bidegree (0,1) from coincident generators"));
    }
    let cfg = json!({"input": input_name(path), "cap_x": cap_x, "cap_y": cap_y, "fiber_cap": caps.fiber_cap});
    Ok(json_output("rees", cfg, outside == 0, results, summary))
}

fn cmd_gorenstein(path: &Path, max_degree: usize) -> Res<Output> {
    let t = transversal(load(path)?)?;
    let r = gorenstein_candidate(&t, max_degree)?;
    let results = json!({
        "sizes": t.sizes(),
        "equal_sizes": r.equal_sizes,
        "normalizable": r.normalizable,
        "hilbert": hilbert_json(&r.hilbert),
        "palindromic": r.palindromic,
    });
    // equal sizes with a normalizable linear relation predict a palindrome
    let pass = !(r.equal_sizes && r.normalizable) || r.palindromic;
    let summary =
        format!("equal sizes: {}, h-vector {:?}, palindromic: {}", r.equal_sizes, r.hilbert.h_vector, r.palindromic);
    let cfg = json!({"input": input_name(path), "max_degree": max_degree});
    Ok(json_output("gorenstein", cfg, pass, results, summary))
}

fn cmd_random(cli: &Cli, n: usize, d: u64, s: usize, count: usize, dir: &Path) -> Res<Output> {
    if n == 0 || d == 0 || s == 0 {
        return Err(CliError::Config("--n, --degree and --factors must be positive".into()));
    }
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let mut files = Vec::new();
    for k in 0..count {
        let mut rng = random::rng_for(cli.seed, k as u64);
        let p = random::product(&mut rng, n, &vec![d; s]);
        let text = if s == 1 { formats::write_basis(&p.factors()[0]) } else { formats::write_product(&p) };
        let path = dir.join(format!("instance-{k:04}.txt"));
        std::fs::write(&path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        files.push(path.display().to_string());
    }
    let cfg = json!({"seed": cli.seed, "n": n, "degree": d, "factors": s, "count": count});
    let summary = format!("wrote {count} instances to {}", dir.display());
    Ok(json_output("random", cfg, true, json!({"files": files}), summary))
}

fn cmd_corpus(cli: &Cli, selected: &[Suite], count: usize, repro_dir: &Path) -> Res<Output> {
    let caps = config(cli);
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    let selected: Vec<Suite> = if selected.is_empty() { Suite::ALL.to_vec() } else { selected.to_vec() };
    let mut summaries = Vec::new();
    let mut repro = None;
    for &suite in &selected {
        let s = suites::run_suite(suite, cli.seed, count, caps, jobs);
        if let (None, Some(case)) = (&repro, &s.first_failure) {
            let path = repro_dir.join(format!("repro-{}-{}.txt", suite.name(), case.index));
            std::fs::write(&path, &case.instance)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            repro = Some(path.display().to_string());
        }
        summaries.push(s);
    }
    let pass = summaries.iter().all(|s| s.all_passed());
    let only_caps = summaries.iter().all(|s| s.failed == 0 && s.errors == 0);
    let lines: Vec<String> = summaries.iter().map(|s| format!("{} {}/{}", s.suite.name(), s.passed, s.count)).collect();
    let results = json!({
        "suites": summaries.iter().map(report::suite).collect::<Vec<_>>(),
        "reproducer": repro,
    });
    // jobs never changes results, so it is left out of the echoed config
    let cfg = json!({
        "seed": cli.seed, "count": count, "d_max": caps.d_max, "fiber_cap": caps.fiber_cap,
        "step_cap": caps.step_cap, "suites": selected.iter().map(|s| s.name()).collect::<Vec<_>>(),
    });
    let mut out = json_output("corpus", cfg, pass, results, lines.join(", "));
    out.code = (!pass && only_caps).then_some(3);
    Ok(out)
}

fn dispatch(cli: &Cli) -> Res<Output> {
    let caps = config(cli);
    if caps.d_max == 0 || caps.fiber_cap == 0 || caps.step_cap == 0 {
        return Err(CliError::Config("--d-max, --fiber-cap and --step-cap must be positive".into()));
    }
    match &cli.command {
        Command::Check { input } => cmd_check(input),
        Command::Exchange { input, generalized } => cmd_exchange(input, *generalized),
        Command::Veronese { n, degree, lower, upper } => cmd_veronese(*n, *degree, lower, upper),
        Command::Product { inputs } => cmd_product(inputs),
        Command::Power { input, k } => cmd_power(input, *k),
        Command::Toric { input } => cmd_toric(input, caps),
        Command::White { input, moves } => cmd_white(input, *moves, caps),
        Command::Groebner { input, order, ranking, search } => {
            cmd_groebner(input, *order, ranking.as_deref(), *search, caps)
        }
        Command::Hibi { input } => cmd_hibi(input, caps),
        Command::TransGb { input } => cmd_trans_gb(input, caps),
        Command::Hilbert { input, max_degree } => cmd_hilbert(input, *max_degree),
        Command::Rees { input, cap_x, cap_y } => cmd_rees(input, *cap_x, *cap_y, caps),
        Command::Gorenstein { input, max_degree } => cmd_gorenstein(input, *max_degree),
        Command::Random { n, degree, factors, count, dir } => cmd_random(cli, *n, *degree, *factors, *count, dir),
        Command::Corpus { suite, count, repro_dir } => cmd_corpus(cli, suite, *count, repro_dir),
    }
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let out = match dispatch(cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    eprintln!("{}", out.summary);
    if out.pass {
        0
    } else {
        out.code.unwrap_or(1)
    }
}
