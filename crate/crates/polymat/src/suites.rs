//! Property suites run over seeded random corpora.
//!
//! Each suite draws instance `k` from its own ChaCha stream, so runs are
//! reproducible and independent of the worker count. Product-based suites
//! share one stream family: `white` and `single-column` see the same products.

use std::collections::BTreeSet;

use clap::ValueEnum;
use polymat_core::groebner::{certify_generation, MonomialOrder, OrderKind};
use polymat_core::toric::{
    degree_components, exchange_relations, fibers_by_degree, linear_relations, minimal_generators, same_component,
    single_column_moves, white_check,
};
use polymat_core::{veronese_type, MonomialBasis, MoveSet, Presentation, ProductStructure, YMonomial};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::formats::{write_basis, write_product};
use crate::random::{self, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    /// Proper exchanges plus linear moves connect every fiber.
    White,
    /// Single-column plus linear moves connect every fiber.
    SingleColumn,
    /// SEP holds exactly when the basis is the Veronese type of its profile.
    SepVeronese,
    /// Powers `B^k`, `k <= 3`, of SEP bases keep the SEP.
    PowerSep,
    /// Products of polymatroidal bases are polymatroidal.
    ProductPolymatroidal,
    /// Polymatroidal bases satisfy symmetric exchange.
    SymmetricExchange,
    /// Generalized exchanges do not change fiber components.
    GeneralizedMoves,
    /// The shortcut property holds on SEP bases.
    Shortcut,
    /// Permuting one column of a factor matrix stays in one component.
    ColumnPermutation,
    /// Normal forms of a certified Gröbner basis separate exactly the fibers.
    GroebnerOracle,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::White,
        Suite::SingleColumn,
        Suite::SepVeronese,
        Suite::PowerSep,
        Suite::ProductPolymatroidal,
        Suite::SymmetricExchange,
        Suite::GeneralizedMoves,
        Suite::Shortcut,
        Suite::ColumnPermutation,
        Suite::GroebnerOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::White => "white",
            Suite::SingleColumn => "single-column",
            Suite::SepVeronese => "sep-veronese",
            Suite::PowerSep => "power-sep",
            Suite::ProductPolymatroidal => "product-polymatroidal",
            Suite::SymmetricExchange => "symmetric-exchange",
            Suite::GeneralizedMoves => "generalized-moves",
            Suite::Shortcut => "shortcut",
            Suite::ColumnPermutation => "column-permutation",
            Suite::GroebnerOracle => "groebner-oracle",
        }
    }

    /// Stream family; suites sharing a family draw identical instances.
    fn family(self) -> u64 {
        match self {
            Suite::White | Suite::SingleColumn => 0,
            other => 1 + Suite::ALL.iter().position(|&s| s == other).unwrap() as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub d_max: usize,
    pub fiber_cap: usize,
    pub step_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            d_max: polymat_core::DEFAULT_D_MAX,
            fiber_cap: polymat_core::DEFAULT_FIBER_CAP,
            step_cap: polymat_core::DEFAULT_STEP_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// An error other than a resource cap.
    Error,
    /// A fiber, enumeration or step cap was hit.
    ResourceCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub index: usize,
    pub outcome: Outcome,
    /// The instance in file format, prefixed with `#` comment lines.
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub resource_caps: usize,
    pub first_failure: Option<CaseResult>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.count
    }
}

type Check = Result<(bool, String), polymat_core::Error>;

/// Veronese-type bases with `n <= 4`, `d <= 3` and at least three elements.
fn small_veronese(rng: &mut impl Rng) -> MonomialBasis {
    random::sized_veronese(rng, 4, 3, 3, usize::MAX)
}

fn product_presentation(p: &ProductStructure) -> Result<Presentation, polymat_core::Error> {
    Presentation::from_product(p)
}

fn white_case(p: &ProductStructure, single: bool, caps: Caps) -> Check {
    let pres = product_presentation(p)?;
    let moves =
        if single { single_column_moves(&pres, caps.d_max, caps.fiber_cap)? } else { exchange_relations(&pres, false) };
    let report = white_check(&pres, &moves, caps.d_max, caps.fiber_cap)?;
    let detail = match &report.first_failure {
        Some(f) => format!("degree {} fiber over {} has {} components", f.degree, f.target, f.components.len()),
        None => format!("{} moves, {} linear", report.moves, report.linear_moves),
    };
    Ok((report.pass, detail))
}

fn sep_veronese_case(b: &MonomialBasis) -> Check {
    let p = b.profile();
    let rebuilt = veronese_type(b.n(), b.degree(), &p.lower, &p.upper)?;
    let sep = b.has_sep()?;
    Ok((sep == (&rebuilt == b), format!("sep {sep}, |B| {}, Veronese size {}", b.len(), rebuilt.len())))
}

fn power_case(b: &MonomialBasis, k: usize) -> Check {
    let power = ProductStructure::power(b, k)?;
    let sep = power.flattened().has_sep()?;
    Ok((sep, format!("k {k}, |B^k| {}", power.flattened().len())))
}

fn generalized_case(p: &ProductStructure, caps: Caps) -> Check {
    let pres = product_presentation(p)?;
    let proper = exchange_relations(&pres, false);
    let general = proper.union(&exchange_relations(&pres, true));
    for e in 2..=caps.d_max {
        let a = degree_components(&pres, &proper, e, caps.fiber_cap)?;
        let b = degree_components(&pres, &general, e, caps.fiber_cap)?;
        if let Some((target, _)) = a.iter().find(|(t, c)| b.get(*t) != Some(c)) {
            return Ok((false, format!("components differ over {target} in degree {e}")));
        }
    }
    Ok((true, format!("{} proper, {} with generalized", proper.len(), general.len())))
}

fn column_case(p: &ProductStructure, rng: &mut impl Rng) -> Check {
    let pres = product_presentation(p)?;
    let moves = exchange_relations(&pres, false).union(&linear_relations(&pres));
    let sizes = pres.factor_sizes().to_vec();
    // redraw until permuting one column changes the monomial; with a single
    // nontrivial factor it never can, so give up after a few attempts
    for attempt in 0.. {
        let d = rng.random_range(2..=3);
        let rows: Vec<Vec<usize>> = (0..d).map(|_| sizes.iter().map(|&k| rng.random_range(0..k)).collect()).collect();
        let col = rng.random_range(0..sizes.len());
        let mut permuted = rows.clone();
        let mut column: Vec<usize> = rows.iter().map(|r| r[col]).collect();
        column.shuffle(rng);
        for (r, c) in permuted.iter_mut().zip(column) {
            r[col] = c;
        }
        let (a, b) = (pres.from_matrix(&rows).expect("in range"), pres.from_matrix(&permuted).expect("in range"));
        if a != b || attempt == 31 {
            return column_verdict(&pres, &moves, &a, &b, col);
        }
    }
    unreachable!()
}

fn column_verdict(pres: &Presentation, moves: &MoveSet, a: &YMonomial, b: &YMonomial, col: usize) -> Check {
    let same = same_component(pres, moves, a, b, usize::MAX)?;
    Ok((same, format!("{} and {} (column {})", pres.display_monomial(a), pres.display_monomial(b), col + 1)))
}

fn oracle_case(b: &MonomialBasis, rng: &mut impl Rng, caps: Caps) -> Check {
    let pres = Presentation::from_basis(b);
    let gens = minimal_generators(&pres, caps.d_max, caps.fiber_cap)?;
    let kind = [OrderKind::Lex, OrderKind::DegLex, OrderKind::DegRevLex][rng.random_range(0..3)];
    let mut ranking: Vec<usize> = (0..pres.len()).collect();
    ranking.shuffle(rng);
    let order = MonomialOrder::new(kind, ranking)?;
    let cert = certify_generation(&pres, &gens, &order, caps.d_max, caps.step_cap, caps.fiber_cap)?;
    if !cert.certified {
        return Ok((false, format!("no certified Gröbner basis under {order}")));
    }
    for e in 1..=caps.d_max {
        let mut seen = BTreeSet::new();
        for fiber in fibers_by_degree(&pres, e, caps.fiber_cap)?.values() {
            let forms: BTreeSet<YMonomial> =
                fiber.iter().map(|m| cert.basis.normal_form(m)).collect::<Result<_, _>>()?;
            // one normal form per fiber, and never shared with another fiber
            if forms.len() != 1 || !seen.insert(forms.into_iter().next().unwrap()) {
                return Ok((false, format!("normal forms disagree with fibers in degree {e} under {order}")));
            }
        }
    }
    Ok((true, format!("{} generators, Gröbner basis of size {} under {order}", gens.len(), cert.basis.len())))
}

/// Runs instance `index` of `suite`.
pub fn run_case(suite: Suite, seed: u64, index: usize, caps: Caps) -> CaseResult {
    let mut rng = random::rng_for(seed, suite.family() << 32 | index as u64);
    let header = format!("# suite {} seed {seed} instance {index}\n", suite.name());
    let (instance, check): (String, Check) = match suite {
        Suite::White | Suite::SingleColumn => {
            let p = random::limited_product(&mut rng, Limits::default());
            (write_product(&p), white_case(&p, suite == Suite::SingleColumn, caps))
        }
        Suite::SepVeronese => {
            let mut b = small_veronese(&mut rng);
            // drop up to two elements so both verdicts occur
            let drop = rng.random_range(0..=2usize).min(b.len() - 2);
            let mut elems = b.elements().to_vec();
            elems.shuffle(&mut rng);
            elems.truncate(elems.len() - drop);
            b = MonomialBasis::new(elems).expect("nonempty");
            (write_basis(&b), sep_veronese_case(&b))
        }
        Suite::PowerSep => {
            let b = small_veronese(&mut rng);
            let k = rng.random_range(1..=3);
            (format!("# power {k}\n{}", write_basis(&b)), power_case(&b, k))
        }
        Suite::ProductPolymatroidal => {
            let s = rng.random_range(2..=3);
            let n = rng.random_range(2..=4);
            let factors: Vec<MonomialBasis> = (0..s)
                .map(|_| {
                    let degrees: Vec<u64> = (0..rng.random_range(1..=2)).map(|_| rng.random_range(1..=2)).collect();
                    random::product(&mut rng, n, &degrees).flattened().clone()
                })
                .collect();
            let check = (|| {
                let p = ProductStructure::new(factors.clone())?;
                let inputs = factors.iter().all(MonomialBasis::is_polymatroidal);
                let out = p.flattened().is_polymatroidal();
                Ok((inputs && out, format!("factors polymatroidal {inputs}, product polymatroidal {out}")))
            })();
            let p = ProductStructure::new(factors).expect("same n");
            (write_product(&p), check)
        }
        Suite::SymmetricExchange => {
            let limits = Limits { max_n: 4, max_degree: 2, variable_cap: 200, ..Limits::default() };
            let b = random::limited_product(&mut rng, limits).flattened().clone();
            let check = Ok((b.is_polymatroidal() && b.verify_symmetric_exchange(), format!("|B| {}", b.len())));
            (write_basis(&b), check)
        }
        Suite::GeneralizedMoves => {
            let limits = Limits { variable_cap: 30, ..Limits::default() };
            let p = random::limited_product(&mut rng, limits);
            (write_product(&p), generalized_case(&p, caps))
        }
        Suite::Shortcut => {
            let b = small_veronese(&mut rng);
            let check = b.shortcut_witness().map(|w| match w {
                None => (true, String::from("no witness")),
                Some(w) => (false, format!("no shortcut for {}, {}, i {}, l {}", w.f, w.g, w.i + 1, w.l + 1)),
            });
            (write_basis(&b), check)
        }
        Suite::ColumnPermutation => {
            // permutations need a second column with more than one choice
            let p = loop {
                let p = random::limited_product(&mut rng, Limits::default());
                if p.factors().iter().filter(|f| f.len() > 1).count() > 1 {
                    break p;
                }
            };
            let check = column_case(&p, &mut rng);
            (write_product(&p), check)
        }
        Suite::GroebnerOracle => {
            // skip bases whose toric ring is a polynomial ring
            let b = loop {
                let b = random::sized_veronese(&mut rng, 4, 3, 4, 12);
                let gens = minimal_generators(&Presentation::from_basis(&b), 2, caps.fiber_cap);
                if gens.map_or(true, |g| !g.is_empty()) {
                    break b;
                }
            };
            let check = oracle_case(&b, &mut rng, caps);
            (write_basis(&b), check)
        }
    };
    let (outcome, detail) = match check {
        Ok((true, d)) => (Outcome::Pass, d),
        Ok((false, d)) => (Outcome::Fail, d),
        Err(e) if e.is_resource_cap() => (Outcome::ResourceCap, e.to_string()),
        Err(e) => (Outcome::Error, e.to_string()),
    };
    CaseResult { index, outcome, instance: format!("{header}# {detail}\n{instance}"), detail }
}

/// Runs `count` instances on `jobs` workers; results are merged by index.
pub fn run_suite(suite: Suite, seed: u64, count: usize, caps: Caps, jobs: usize) -> SuiteSummary {
    let run = || (0..count).into_par_iter().map(|k| run_case(suite, seed, k, caps)).collect::<Vec<_>>();
    let results = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let tally = |o: Outcome| results.iter().filter(|r| r.outcome == o).count();
    SuiteSummary {
        suite,
        seed,
        count,
        passed: tally(Outcome::Pass),
        failed: tally(Outcome::Fail),
        errors: tally(Outcome::Error),
        resource_caps: tally(Outcome::ResourceCap),
        first_failure: results.into_iter().find(|r| r.outcome != Outcome::Pass),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible() {
        let caps = Caps::default();
        for suite in Suite::ALL {
            let a = run_case(suite, 11, 2, caps);
            assert_eq!(a, run_case(suite, 11, 2, caps));
            assert_eq!(a.outcome, Outcome::Pass, "{}: {}", suite.name(), a.detail);
        }
    }

    #[test]
    fn white_suites_share_instances() {
        let caps = Caps::default();
        let strip = |r: CaseResult| r.instance.lines().skip(2).collect::<Vec<_>>().join("\n");
        assert_eq!(strip(run_case(Suite::White, 5, 1, caps)), strip(run_case(Suite::SingleColumn, 5, 1, caps)));
    }

    #[test]
    fn summary_independent_of_jobs() {
        let caps = Caps::default();
        let a = run_suite(Suite::SepVeronese, 3, 12, caps, 1);
        let b = run_suite(Suite::SepVeronese, 3, 12, caps, 4);
        assert_eq!(a, b);
        assert!(a.all_passed());
        let empty = run_suite(Suite::White, 3, 0, caps, 2);
        assert!(empty.all_passed() && empty.first_failure.is_none());
    }
}
