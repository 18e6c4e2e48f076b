use polymat_core::groebner::{certify_generation, MonomialOrder, OrderKind};
use polymat_core::invariants::{hilbert_from_h, rees_generators, rees_presentation, HilbertData};
use polymat_core::toric::{
    degree_components, exchange_relations, fibers_by_degree, linear_relations, minimal_generators, same_component,
    single_column_moves, white_check,
};
use polymat_core::{
    veronese_type, MonomialBasis, Presentation, ProductStructure, YMonomial, DEFAULT_FIBER_CAP, DEFAULT_STEP_CAP,
};
use proptest::prelude::*;

fn veronese() -> impl Strategy<Value = MonomialBasis> {
    (2usize..5, 1u64..4)
        .prop_flat_map(|(n, d)| (Just(n), Just(d), proptest::collection::vec((0u64..2, 1u64..4), n)))
        .prop_filter_map("infeasible profile", |(n, d, bounds)| {
            let lower: Vec<u64> = bounds.iter().map(|&(l, _)| l.min(d)).collect();
            let upper: Vec<u64> = bounds.iter().map(|&(l, w)| (l + w).min(d)).collect();
            veronese_type(n, d, &lower, &upper).ok().filter(|b| b.len() > 1)
        })
}

/// Products of up to three Veronese-type bases in the same ambient ring.
fn product() -> impl Strategy<Value = ProductStructure> {
    (2usize..5, 1usize..4)
        .prop_flat_map(|(n, s)| proptest::collection::vec(veronese().prop_filter("ambient", move |b| b.n() == n), s))
        .prop_filter_map("size", |factors| {
            let p = ProductStructure::new(factors).ok()?;
            let len = Presentation::from_product(&p).ok()?.len();
            (len > 1 && len <= 30).then_some(p)
        })
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generalized_moves_have_the_same_components(p in product()) {
        let pres = Presentation::from_product(&p).unwrap();
        let proper = exchange_relations(&pres, false);
        let general = proper.union(&exchange_relations(&pres, true));
        for e in 2..=3 {
            let a = degree_components(&pres, &proper, e, DEFAULT_FIBER_CAP).unwrap();
            let b = degree_components(&pres, &general, e, DEFAULT_FIBER_CAP).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn column_permutations_are_reachable(p in product(), seed in any::<u64>()) {
        let pres = Presentation::from_product(&p).unwrap();
        let moves = exchange_relations(&pres, false).union(&linear_relations(&pres));
        let sizes = pres.factor_sizes().to_vec();
        let d = 2 + (seed % 2) as usize;
        // a pseudo-random factor matrix from the seed
        let mut state = seed;
        let mut next = |m: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as usize) % m
        };
        let rows: Vec<Vec<usize>> = (0..d).map(|_| sizes.iter().map(|&k| next(k)).collect()).collect();
        let col = next(sizes.len());
        let mut permuted = rows.clone();
        permuted.rotate_left(1);
        for (row, orig) in permuted.iter_mut().zip(&rows) {
            for (c, slot) in row.iter_mut().enumerate() {
                if c != col {
                    *slot = orig[c];
                }
            }
        }
        let a = pres.from_matrix(&rows).unwrap();
        let b = pres.from_matrix(&permuted).unwrap();
        prop_assert_eq!(pres.image(&a).unwrap(), pres.image(&b).unwrap());
        prop_assert!(same_component(&pres, &moves, &a, &b, DEFAULT_FIBER_CAP).unwrap());
    }

    #[test]
    fn white_check_passes_for_both_move_sets(p in product()) {
        let pres = Presentation::from_product(&p).unwrap();
        let proper = exchange_relations(&pres, false);
        prop_assert!(white_check(&pres, &proper, 3, DEFAULT_FIBER_CAP).unwrap().pass);
        let single = single_column_moves(&pres, 2, DEFAULT_FIBER_CAP).unwrap();
        prop_assert!(white_check(&pres, &single, 3, DEFAULT_FIBER_CAP).unwrap().pass);
    }

    #[test]
    fn groebner_normal_forms_match_fibers(b in veronese(), rev in any::<bool>()) {
        let pres = Presentation::from_basis(&b);
        prop_assume!(pres.len() <= 12);
        let gens = minimal_generators(&pres, 3, DEFAULT_FIBER_CAP).unwrap();
        let kind = if rev { OrderKind::DegRevLex } else { OrderKind::Lex };
        let order = MonomialOrder::natural(kind, pres.len());
        let cert = certify_generation(&pres, &gens, &order, 3, DEFAULT_STEP_CAP, DEFAULT_FIBER_CAP).unwrap();
        prop_assert!(cert.certified);
        for e in 1..=3 {
            for fiber in fibers_by_degree(&pres, e, DEFAULT_FIBER_CAP).unwrap().values() {
                let nf: Vec<YMonomial> = fiber.iter().map(|m| cert.basis.normal_form(m).unwrap()).collect();
                prop_assert!(nf.windows(2).all(|w| w[0] == w[1]));
                prop_assert_eq!(fiber.iter().filter(|m| cert.basis.is_standard(m).unwrap()).count(), 1);
            }
        }
    }

    #[test]
    fn h_vector_reconstructs_values(b in veronese()) {
        let data = HilbertData::stabilize(&b, 16).unwrap();
        prop_assert_eq!(data.h_vector[0], 1);
        prop_assert_eq!(data.values[1], b.len() as u64);
        for (e, &v) in data.values.iter().enumerate() {
            prop_assert_eq!(hilbert_from_h(&data.h_vector, data.dim, e), v as i128);
        }
    }

    #[test]
    fn rees_generators_stay_in_low_bidegrees(b in veronese()) {
        let pres = Presentation::from_basis(&b);
        prop_assume!(pres.len() <= 10);
        let rees = rees_presentation(&pres).unwrap();
        for g in rees_generators(&rees, 2, 3, DEFAULT_FIBER_CAP).unwrap() {
            let bd = (g.bidegree.x_degree, g.bidegree.y_degree);
            prop_assert!(bd == (0, 2) || bd == (1, 1), "unexpected bidegree {:?}", bd);
        }
    }
}
