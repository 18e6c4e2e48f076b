//! Seeded random instances.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`), seeded from a `u64` and
//! given one stream per (suite, instance) pair, so an instance depends only on
//! the seed and its index and never on thread scheduling or platform.

use polymat_core::{veronese_type, MonomialBasis, Presentation, ProductStructure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default bounds on the number of presentation variables of a corpus product.
pub const DEFAULT_VARIABLE_MIN: usize = 8;
pub const DEFAULT_VARIABLE_CAP: usize = 64;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random Veronese-type basis: `lower_i <= upper_i` drawn uniformly from
/// `0..=d`, redrawn until `sum lower <= d <= sum upper`.
pub fn veronese(rng: &mut impl Rng, n: usize, d: u64) -> MonomialBasis {
    loop {
        let lower: Vec<u64> = (0..n).map(|_| rng.random_range(0..=d)).collect();
        let upper: Vec<u64> = lower.iter().map(|&l| rng.random_range(l..=d)).collect();
        if let Ok(b) = veronese_type(n, d, &lower, &upper) {
            return b;
        }
    }
}

/// Random Veronese-type basis with `n` in `2..=max_n`, `d` in `1..=max_degree`
/// and `min_size <= |B| <= max_size`, redrawing until the size fits.
pub fn sized_veronese(
    rng: &mut impl Rng,
    max_n: usize,
    max_degree: u64,
    min_size: usize,
    max_size: usize,
) -> MonomialBasis {
    loop {
        let n = rng.random_range(2..=max_n.max(2));
        let d = rng.random_range(1..=max_degree.max(1));
        let b = veronese(rng, n, d);
        if (min_size..=max_size).contains(&b.len()) {
            return b;
        }
    }
}

/// Product of `degrees.len()` random Veronese-type bases in `n` variables.
pub fn product(rng: &mut impl Rng, n: usize, degrees: &[u64]) -> ProductStructure {
    let factors = degrees.iter().map(|&d| veronese(rng, n, d)).collect();
    ProductStructure::new(factors).expect("factors share n")
}

/// Shape limits for corpus products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_factors: usize,
    pub max_degree: u64,
    /// Products with fewer or more presentation variables than these bounds
    /// are rejected and redrawn.
    pub variable_min: usize,
    pub variable_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 5,
            max_factors: 3,
            max_degree: 3,
            variable_min: DEFAULT_VARIABLE_MIN,
            variable_cap: DEFAULT_VARIABLE_CAP,
        }
    }
}

/// `n` in `2..=max_n`, `s` in `1..=max_factors`, each `d_j` in `1..=max_degree`.
pub fn limited_product(rng: &mut impl Rng, limits: Limits) -> ProductStructure {
    loop {
        let n = rng.random_range(2..=limits.max_n.max(2));
        let s = rng.random_range(1..=limits.max_factors.max(1));
        let degrees: Vec<u64> = (0..s).map(|_| rng.random_range(1..=limits.max_degree.max(1))).collect();
        let p = product(rng, n, &degrees);
        let vars: usize = p.factors().iter().map(MonomialBasis::len).product();
        if (limits.variable_min..=limits.variable_cap).contains(&vars) {
            debug_assert_eq!(Presentation::from_product(&p).map(|pr| pr.len()).ok(), Some(vars));
            return p;
        }
    }
}
