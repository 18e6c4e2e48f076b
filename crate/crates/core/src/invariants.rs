//! Hilbert functions, Krull dimension, h-vectors and Rees-ideal bidegrees.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::basis::MonomialBasis;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::toric::{sweep_generators, BidegreeCaps, Binomial, Presentation, YLabel, YVariable};

/// Trailing zero coefficients required before an h-vector counts as stable.
pub const STABLE_TRAILING_ZEROS: usize = 2;

/// `HF(0..=max_degree)` of the toric ring: `HF(e)` is the number of distinct
/// monomials in `B^e`.
pub fn hilbert_function(b: &MonomialBasis, max_degree: usize) -> Result<Vec<u64>> {
    let mut values = alloc::vec![1u64];
    let mut current: BTreeSet<Monomial> = BTreeSet::new();
    current.insert(Monomial::one(b.n()));
    for _ in 0..max_degree {
        let mut next = BTreeSet::new();
        for m in &current {
            for f in b {
                next.insert(m.multiply(f)?);
            }
        }
        values.push(next.len() as u64);
        current = next;
    }
    Ok(values)
}

/// Rank over the rationals of the exponent matrix of `b`.
pub fn krull_dim(b: &MonomialBasis) -> Result<usize> {
    matrix_rank(b.iter().map(|m| m.exponents().iter().map(|&e| i128::from(e)).collect()).collect())
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Integer row reduction; each row is divided by its content after every
/// elimination step so entries stay small.
pub(crate) fn matrix_rank(mut rows: Vec<Vec<i128>>) -> Result<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let p = rows[rank].clone();
        for row in &mut rows[rank + 1..] {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &pc) in row.iter_mut().zip(&p) {
                *x = x
                    .checked_mul(p[col])
                    .and_then(|x| pc.checked_mul(factor).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow)?;
            }
            let g = row.iter().fold(0, |acc, &x| gcd(acc, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn binomial_coefficient(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

/// Raw numerator coefficients `h_k = sum_j (-1)^j C(dim, j) HF(k - j)` for
/// every computed degree, untrimmed.
pub fn h_coefficients(values: &[u64], dim: usize) -> Vec<i128> {
    (0..values.len())
        .map(|k| {
            (0..=k.min(dim))
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * binomial_coefficient(dim as i128, j as i128) * values[k - j] as i128
                })
                .sum()
        })
        .collect()
}

fn trimmed(raw: &[i128]) -> Vec<i64> {
    let end = raw.iter().rposition(|&h| h != 0).map_or(0, |p| p + 1);
    raw[..end].iter().map(|&h| h as i64).collect()
}

fn stabilized(raw: &[i128]) -> bool {
    raw.len() > STABLE_TRAILING_ZEROS && raw[raw.len() - STABLE_TRAILING_ZEROS..].iter().all(|&h| h == 0)
}

/// The h-vector with trailing zeros removed. Fails with
/// [`Error::NotStabilized`] unless the last [`STABLE_TRAILING_ZEROS`]
/// computed coefficients vanish.
pub fn h_vector(values: &[u64], dim: usize) -> Result<Vec<i64>> {
    let raw = h_coefficients(values, dim);
    if !stabilized(&raw) {
        return Err(Error::NotStabilized { max_degree: values.len().saturating_sub(1) });
    }
    Ok(trimmed(&raw))
}

/// `sum_k h_k C(e - k + dim - 1, dim - 1)`, the Hilbert function value the
/// h-vector predicts in degree `e`.
pub fn hilbert_from_h(h: &[i64], dim: usize, e: usize) -> i128 {
    if dim == 0 {
        return h.get(e).copied().unwrap_or(0) as i128;
    }
    h.iter()
        .enumerate()
        .filter(|(k, _)| *k <= e)
        .map(|(k, &hk)| hk as i128 * binomial_coefficient((e - k + dim - 1) as i128, dim as i128 - 1))
        .sum()
}

pub fn is_palindromic(h: &[i64]) -> bool {
    h.iter().eq(h.iter().rev())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub values: Vec<u64>,
    pub dim: usize,
    /// Trimmed numerator when stabilized; the raw coefficients otherwise.
    pub h_vector: Vec<i64>,
    pub stabilized: bool,
}

impl HilbertData {
    pub fn compute(b: &MonomialBasis, max_degree: usize) -> Result<Self> {
        let values = hilbert_function(b, max_degree)?;
        let dim = krull_dim(b)?;
        let raw = h_coefficients(&values, dim);
        let stabilized = stabilized(&raw);
        let h_vector = if stabilized { trimmed(&raw) } else { raw.iter().map(|&h| h as i64).collect() };
        Ok(HilbertData { values, dim, h_vector, stabilized })
    }

    /// Raises the degree bound from `dim + 2` until the h-vector stabilizes,
    /// giving up past `max_degree`.
    pub fn stabilize(b: &MonomialBasis, max_degree: usize) -> Result<Self> {
        let dim = krull_dim(b)?;
        let mut bound = (dim + 2).min(max_degree);
        loop {
            let data = Self::compute(b, bound)?;
            if data.stabilized {
                return Ok(data);
            }
            if bound >= max_degree {
                return Err(Error::NotStabilized { max_degree });
            }
            bound += 1;
        }
    }

    pub fn is_palindromic(&self) -> bool {
        self.stabilized && is_palindromic(&self.h_vector)
    }
}

/// A bidegree `(x-degree, y-degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub x_degree: usize,
    pub y_degree: usize,
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x_degree, self.y_degree)
    }
}

/// Presentation of the Rees algebra: ambient variables `x_i -> x_i` first,
/// then each `y -> image(y) * t`, with `t` stored as one extra exponent.
pub fn rees_presentation(pres: &Presentation) -> Result<Presentation> {
    let n = pres.image_len();
    let mut vars = Vec::with_capacity(n + pres.len());
    for i in 0..n {
        let mut e = alloc::vec![0u64; n + 1];
        e[i] = 1;
        vars.push(YVariable { label: YLabel::Ambient(i), image: Monomial::new(e) });
    }
    for v in pres.vars() {
        let mut e = v.image.exponents().to_vec();
        e.push(1);
        vars.push(YVariable { label: v.label.clone(), image: Monomial::new(e) });
    }
    Presentation::from_variables(n + 1, vars)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesGenerator {
    pub binomial: Binomial,
    pub bidegree: Bidegree,
}

/// Minimal generators of the Rees ideal with `x`-degree at most `cap_x` and
/// `y`-degree at most `cap_y`, sorted by total degree, then bidegree.
/// `rees` must come from [`rees_presentation`].
pub fn rees_generators(
    rees: &Presentation,
    cap_x: usize,
    cap_y: usize,
    fiber_cap: usize,
) -> Result<Vec<ReesGenerator>> {
    if cap_x == 0 || cap_y == 0 {
        return Err(Error::PreconditionViolation("Rees caps must be positive".into()));
    }
    let caps = BidegreeCaps { cap_x, cap_y };
    let gens = sweep_generators(rees, cap_x + cap_y, Some(caps), fiber_cap)?;
    let mut out: Vec<ReesGenerator> = gens
        .into_iter()
        .map(|binomial| {
            let x_degree = binomial
                .lhs()
                .vars()
                .iter()
                .filter(|&&v| matches!(rees.vars()[v as usize].label, YLabel::Ambient(_)))
                .count();
            let bidegree = Bidegree { x_degree, y_degree: binomial.lhs().degree() - x_degree };
            ReesGenerator { binomial, bidegree }
        })
        .collect();
    out.sort_by(|a, b| {
        let total = |g: &ReesGenerator| g.bidegree.x_degree + g.bidegree.y_degree;
        total(a).cmp(&total(b)).then(a.bidegree.cmp(&b.bidegree)).then_with(|| a.binomial.cmp(&b.binomial))
    });
    Ok(out)
}

/// Multiset (sorted list) of the bidegrees of minimal Rees-ideal generators.
pub fn rees_bidegrees(pres: &Presentation, cap_x: usize, cap_y: usize, fiber_cap: usize) -> Result<Vec<Bidegree>> {
    let rees = rees_presentation(pres)?;
    Ok(rees_generators(&rees, cap_x, cap_y, fiber_cap)?.into_iter().map(|g| g.bidegree).collect())
}
