//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs under `cargo test` (no libtest harness).

use std::time::{Duration, Instant};

use polymat::formats::{parse, Input};
use polymat::suites::{run_suite, Caps, Suite, SuiteSummary};
use polymat_core::groebner::{buchberger, MonomialOrder, OrderKind};
use polymat_core::invariants::{hilbert_function, is_palindromic, krull_dim, rees_bidegrees, HilbertData};
use polymat_core::toric::{linear_relations, minimal_generators};
use polymat_core::transversal::{hibi_order, hibi_relations, substitute_linear};
use polymat_core::{Bidegree, Binomial, MonomialBasis, Presentation};
use polymat_core::{DEFAULT_FIBER_CAP, DEFAULT_STEP_CAP};

const SEED: u64 = 20_240_601;

const EXAMPLE_ONE: &str = "4 3\n1 1 1 0\n1 0 2 0\n0 2 1 0\n0 1 2 0\n0 1 1 1\n0 0 2 1\n";
const PENTAGON: &str = "4 2\n1 1 0 0\n1 0 1 0\n0 1 1 0\n0 1 0 1\n0 0 1 1\n";
const FIVE_CYCLE: &str = "TRANSVERSAL 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n";

fn basis(text: &str) -> MonomialBasis {
    match parse(text).expect("fixture parses") {
        Input::Basis(b) => b,
        other => panic!("expected a basis, got {other:?}"),
    }
}

fn shown(pres: &Presentation, bs: &[Binomial]) -> Vec<String> {
    bs.iter().map(|b| pres.display_binomial(b)).collect()
}

type Verdict = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Verdict>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn example_one_generators() -> Verdict {
    let pres = Presentation::from_basis(&basis(EXAMPLE_ONE));
    let gens = minimal_generators(&pres, 2, DEFAULT_FIBER_CAP).map_err(err)?;
    let expected = ["y1*y4 - y2*y3", "y1*y6 - y2*y5", "y3*y6 - y4*y5"];
    ensure(shown(&pres, &gens) == expected, format!("generators {:?}", shown(&pres, &gens)))?;
    let gb = buchberger(&gens, &MonomialOrder::natural(OrderKind::Lex, 6), DEFAULT_STEP_CAP).map_err(err)?;
    ensure(gb.binomials() == gens, format!("Lex basis {:?}", shown(&pres, &gb.binomials())))?;
    Ok(format!("generators {expected:?}, Lex Gröbner basis unchanged ({} S-pairs)", gb.stats().s_pairs))
}

fn sep_classification() -> Verdict {
    let b = basis(EXAMPLE_ONE);
    ensure(b.is_polymatroidal(), "Example 1 not polymatroidal")?;
    let w = b.sep_witness().map_err(err)?.ok_or("Example 1 reported SEP")?;
    let got = (w.f.display_vars().to_string(), w.g.display_vars().to_string(), w.i + 1, w.j + 1);
    let want = ("x1*x2*x3".to_string(), "x3^2*x4".to_string(), 2, 4);
    ensure(got == want, format!("witness {got:?}"))?;
    let p = basis(PENTAGON);
    ensure(p.is_polymatroidal(), "pentagon not polymatroidal")?;
    ensure(!p.has_sep().map_err(err)?, "pentagon reported SEP")?;
    Ok(format!("Example 1: polymatroidal, not SEP, witness {got:?}; pentagon: polymatroidal, not SEP"))
}

fn five_cycle() -> Verdict {
    let Input::Transversal(t) = parse(FIVE_CYCLE).map_err(err)? else { return Err("not transversal".into()) };
    let pres = t.presentation().map_err(err)?;
    ensure(pres.len() == 32, format!("{} variables", pres.len()))?;
    let linear = linear_relations(&pres);
    let lin: Vec<String> = linear.iter().map(|b| pres.display_binomial(b)).collect();
    ensure(lin == ["y11111 - y22222"], format!("linear relations {lin:?}"))?;

    let hibi: Vec<Binomial> = hibi_relations(&t).map_err(err)?.iter().cloned().collect();
    let gb = buchberger(&hibi, &hibi_order(&t).map_err(err)?, DEFAULT_STEP_CAP).map_err(err)?;
    ensure(gb.stats().added == 0 && gb.binomials() == hibi, "Hibi relations are not a Gröbner basis")?;

    let sub = substitute_linear(&t).map_err(err)?;
    let moved: Vec<Binomial> = sub.moves.iter().cloned().collect();
    let gb2 = buchberger(&moved, &hibi_order(&sub.structure).map_err(err)?, DEFAULT_STEP_CAP).map_err(err)?;
    ensure(gb2.binomials() == moved, "substituted set is not a Gröbner basis")?;
    ensure(gb2.is_quadratic(), "substituted basis not quadratic")?;

    let flat = t.product().map_err(err)?.flattened().clone();
    let hf = hilbert_function(&flat, 2).map_err(err)?;
    ensure(hf[1..] == [31, 211], format!("HF {hf:?}"))?;
    let dim = krull_dim(&flat).map_err(err)?;
    ensure(dim == 5, format!("dim {dim}"))?;
    let h = HilbertData::compute(&flat, 6).map_err(err)?;
    ensure(h.stabilized && h.h_vector == [1, 26, 66, 26, 1], format!("h-vector {:?}", h.h_vector))?;
    ensure(is_palindromic(&h.h_vector), "h-vector not palindromic")?;
    Ok(format!(
        "32 variables, linear {lin:?}, {} Hibi relations (0 added), {} after substitution (quadratic), HF(1..2) {:?}, dim 5, h {:?}",
        hibi.len(),
        moved.len(),
        &hf[1..],
        h.h_vector
    ))
}

fn rees() -> Verdict {
    let bd = |x, y| Bidegree { x_degree: x, y_degree: y };
    let b = basis("2 2\n2 0\n1 1\n0 2\n");
    let got = rees_bidegrees(&Presentation::from_basis(&b), 2, 3, DEFAULT_FIBER_CAP).map_err(err)?;
    ensure(got == [bd(0, 2), bd(1, 1), bd(1, 1)], format!("{{x1^2,x1x2,x2^2}}: {got:?}"))?;
    let sep = basis("3 2\n1 1 0\n1 0 1\n0 1 1\n");
    let got2 = rees_bidegrees(&Presentation::from_basis(&sep), 2, 3, DEFAULT_FIBER_CAP).map_err(err)?;
    ensure(got2.iter().all(|&g| g == bd(0, 2) || g == bd(1, 1)), format!("{{x1x2,x1x3,x2x3}}: {got2:?}"))?;
    let fmt = |v: &[Bidegree]| v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
    Ok(format!("{{x1^2,x1x2,x2^2}}: {}; {{x1x2,x1x3,x2x3}}: {}", fmt(&got), fmt(&got2)))
}

fn suites(list: &[(Suite, usize)]) -> Verdict {
    let caps = Caps::default();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let results: Vec<SuiteSummary> = list.iter().map(|&(s, count)| run_suite(s, SEED, count, caps, jobs)).collect();
    let line = results.iter().map(|s| format!("{} {}/{}", s.suite.name(), s.passed, s.count)).collect::<Vec<_>>();
    match results.iter().find(|s| !s.all_passed()) {
        None => Ok(line.join(", ")),
        Some(s) => {
            let case = s.first_failure.as_ref().expect("a failing case");
            Err(format!(
                "{}; first failure in {} instance {}: {}",
                line.join(", "),
                s.suite.name(),
                case.index,
                case.detail
            ))
        }
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 Example 1 generators and Lex basis", Duration::from_secs(1), Box::new(example_one_generators)),
        ("2 SEP classification", Duration::from_secs(1), Box::new(sep_classification)),
        ("3 five-cycle transversal", Duration::from_secs(30), Box::new(five_cycle)),
        ("4 Rees bidegrees", Duration::from_secs(10), Box::new(rees)),
        (
            "5 White property suite",
            Duration::from_secs(300),
            Box::new(|| suites(&[(Suite::White, 100), (Suite::SingleColumn, 100)])),
        ),
        (
            "6 structural suites",
            Duration::from_secs(300),
            Box::new(|| {
                suites(&[
                    (Suite::SepVeronese, 100),
                    (Suite::PowerSep, 100),
                    (Suite::ProductPolymatroidal, 100),
                    (Suite::SymmetricExchange, 100),
                    (Suite::GeneralizedMoves, 100),
                    (Suite::Shortcut, 100),
                    (Suite::ColumnPermutation, 100),
                ])
            }),
        ),
        ("7 Gröbner/fiber oracle", Duration::from_secs(120), Box::new(|| suites(&[(Suite::GroebnerOracle, 50)]))),
    ];
    let mut failed = 0;
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = verdict.and_then(|detail| {
            if took <= *budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {took:.2?}, budget {budget:?}"))
            }
        });
        match verdict {
            Ok(detail) => println!("criterion {name}: PASS ({took:.2?}) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({took:.2?}) {detail}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
