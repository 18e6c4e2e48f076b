//! Polymatroidal bases, the strong exchange property, Veronese-type bases and
//! products of bases.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A nonempty set of monomials of one common degree, stored largest-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialBasis {
    n: usize,
    degree: u64,
    elements: Vec<Monomial>,
}

/// Entrywise minimum and maximum exponents over a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

/// `f`, `g` and a variable `i` with `deg_i f > deg_i g` for which the required
/// exchange partner `j` does not exist. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub f: Monomial,
    pub g: Monomial,
    pub i: usize,
}

/// `deg_i f > deg_i g`, `deg_j f < deg_j g` but `(x_j/x_i) f` is missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepWitness {
    pub f: Monomial,
    pub g: Monomial,
    pub i: usize,
    pub j: usize,
}

/// `f`, `g`, `i`, `l` for which no shortcut index `m` exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortcutWitness {
    pub f: Monomial,
    pub g: Monomial,
    pub i: usize,
    pub l: usize,
}

impl MonomialBasis {
    /// Sorts and deduplicates `elements`; all must share length and degree.
    pub fn new(elements: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let set: BTreeSet<Monomial> = elements.into_iter().collect();
        let first = set.iter().next().ok_or(Error::EmptyBasis)?;
        let (n, degree) = (first.n(), first.degree());
        for m in &set {
            if m.n() != n {
                return Err(Error::LengthMismatch { expected: n, found: m.n() });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: m.degree() });
            }
        }
        let elements = set.into_iter().rev().collect();
        Ok(MonomialBasis { n, degree, elements })
    }

    /// Convenience constructor from exponent rows.
    pub fn from_rows<R: AsRef<[u64]>>(rows: impl IntoIterator<Item = R>) -> Result<Self> {
        Self::new(rows.into_iter().map(|r| Monomial::new(r.as_ref().to_vec())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements from largest to smallest in lex order.
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Monomial> {
        self.elements.iter()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.elements.binary_search_by(|probe| m.cmp(probe)).ok()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index_of(m).is_some()
    }

    /// Whether `(x_j/x_i) f` is a monomial lying in the basis.
    fn exchange_in(&self, f: &Monomial, i: usize, j: usize) -> bool {
        f.exponent(i) >= 1 && f.exchange(i, j).map(|m| self.contains(&m)).unwrap_or(false)
    }

    /// Whether the Laurent monomial `(x_a/x_b) f` lies in the basis.
    fn ratio_in(&self, f: &Monomial, a: usize, b: usize) -> bool {
        if a == b {
            self.contains(f)
        } else {
            self.exchange_in(f, b, a)
        }
    }

    pub fn profile(&self) -> Profile {
        let mut lower = self.elements[0].exponents().to_vec();
        let mut upper = lower.clone();
        for m in &self.elements[1..] {
            for (k, &e) in m.exponents().iter().enumerate() {
                lower[k] = lower[k].min(e);
                upper[k] = upper[k].max(e);
            }
        }
        Profile { lower, upper }
    }

    /// First violation of the one-sided exchange axiom, scanning `f`, `g`, `i`
    /// in canonical order.
    pub fn polymatroidal_witness(&self) -> Option<ExchangeWitness> {
        self.exchange_scan(false)
    }

    pub fn is_polymatroidal(&self) -> bool {
        self.polymatroidal_witness().is_none()
    }

    /// First violation of the two-sided exchange: some `j` must make both
    /// `(x_j/x_i) f` and `(x_i/x_j) g` members.
    pub fn symmetric_exchange_witness(&self) -> Option<ExchangeWitness> {
        self.exchange_scan(true)
    }

    pub fn verify_symmetric_exchange(&self) -> bool {
        self.symmetric_exchange_witness().is_none()
    }

    fn exchange_scan(&self, symmetric: bool) -> Option<ExchangeWitness> {
        for f in &self.elements {
            for g in &self.elements {
                for i in 0..self.n {
                    if f.exponent(i) <= g.exponent(i) {
                        continue;
                    }
                    let found = (0..self.n).any(|j| {
                        f.exponent(j) < g.exponent(j)
                            && self.exchange_in(f, i, j)
                            && (!symmetric || self.exchange_in(g, j, i))
                    });
                    if !found {
                        return Some(ExchangeWitness { f: f.clone(), g: g.clone(), i });
                    }
                }
            }
        }
        None
    }

    fn sep_scan(&self) -> Option<SepWitness> {
        for f in &self.elements {
            for g in &self.elements {
                for i in (0..self.n).filter(|&i| f.exponent(i) > g.exponent(i)) {
                    for j in (0..self.n).filter(|&j| f.exponent(j) < g.exponent(j)) {
                        if !self.exchange_in(f, i, j) {
                            return Some(SepWitness { f: f.clone(), g: g.clone(), i, j });
                        }
                    }
                }
            }
        }
        None
    }

    /// Whether the basis is the full Veronese-type set of its own profile.
    pub fn is_veronese_of_profile(&self) -> bool {
        let p = self.profile();
        match enumerate_bounded(self.degree, &p.lower, &p.upper, Some(self.len())) {
            Some(all) => all.len() == self.len() && all.iter().all(|m| self.contains(m)),
            None => false,
        }
    }

    /// Strong-exchange check. Runs the direct definition and the Veronese
    /// criterion and reports [`Error::InternalInconsistency`] if they disagree.
    pub fn sep_witness(&self) -> Result<Option<SepWitness>> {
        let direct = self.sep_scan();
        if direct.is_none() != self.is_veronese_of_profile() {
            return Err(Error::InternalInconsistency(format!(
                "strong exchange check ({}) disagrees with the Veronese criterion",
                direct.is_none()
            )));
        }
        Ok(direct)
    }

    pub fn has_sep(&self) -> Result<bool> {
        Ok(self.sep_witness()?.is_none())
    }

    /// For a strong-exchange basis: whenever `(x_i/x_j) f` and `(x_k/x_l) g`
    /// are members (with `i != j`, `k != l`) some `m` makes `(x_i/x_m) f`,
    /// `(x_l/x_m) f` and `(x_m/x_l) g` members too.
    pub fn shortcut_witness(&self) -> Result<Option<ShortcutWitness>> {
        if !self.has_sep()? {
            return Err(Error::PreconditionViolation("shortcut property needs a strong-exchange basis".into()));
        }
        let n = self.n;
        // the conclusion does not involve j or k, so only the reachable i and l matter
        let raised: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|f| (0..n).filter(|&i| (0..n).any(|j| j != i && self.ratio_in(f, i, j))).collect())
            .collect();
        let lowered: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|g| (0..n).filter(|&l| (0..n).any(|k| k != l && self.ratio_in(g, k, l))).collect())
            .collect();
        for (f, is) in self.elements.iter().zip(&raised) {
            for (g, ls) in self.elements.iter().zip(&lowered) {
                for &i in is {
                    for &l in ls {
                        let ok =
                            (0..n).any(|m| self.ratio_in(f, i, m) && self.ratio_in(f, l, m) && self.ratio_in(g, m, l));
                        if !ok {
                            return Ok(Some(ShortcutWitness { f: f.clone(), g: g.clone(), i, l }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn shortcut_property(&self) -> Result<bool> {
        Ok(self.shortcut_witness()?.is_none())
    }
}

impl<'a> IntoIterator for &'a MonomialBasis {
    type Item = &'a Monomial;
    type IntoIter = core::slice::Iter<'a, Monomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// All exponent vectors `a` with `lower <= a <= upper` and `sum(a) = d`,
/// largest first. Gives up (returns `None`) once more than `limit` are found.
fn enumerate_bounded(d: u64, lower: &[u64], upper: &[u64], limit: Option<usize>) -> Option<Vec<Monomial>> {
    let n = lower.len();
    // suffix sums bound what the remaining coordinates can absorb
    let mut min_rest = alloc::vec![0u64; n + 1];
    let mut max_rest = alloc::vec![0u64; n + 1];
    for k in (0..n).rev() {
        min_rest[k] = min_rest[k + 1].saturating_add(lower[k]);
        max_rest[k] = max_rest[k + 1].saturating_add(upper[k]);
    }
    let mut out = Vec::new();
    let mut current = alloc::vec![0u64; n];
    fn go(
        k: usize,
        remaining: u64,
        bounds: (&[u64], &[u64], &[u64], &[u64]),
        current: &mut Vec<u64>,
        out: &mut Vec<Monomial>,
        limit: Option<usize>,
    ) -> bool {
        let (lower, upper, min_rest, max_rest) = bounds;
        if k == lower.len() {
            if remaining == 0 {
                out.push(Monomial::new(current.clone()));
                if limit.is_some_and(|l| out.len() > l) {
                    return false;
                }
            }
            return true;
        }
        if remaining < min_rest[k] || remaining > max_rest[k] {
            return true;
        }
        let hi = upper[k].min(remaining - min_rest[k + 1]);
        let lo = lower[k].max(remaining.saturating_sub(max_rest[k + 1]));
        let mut v = hi;
        while v >= lo {
            current[k] = v;
            if !go(k + 1, remaining - v, bounds, current, out, limit) {
                return false;
            }
            if v == 0 {
                break;
            }
            v -= 1;
        }
        true
    }
    let complete = go(0, d, (lower, upper, &min_rest, &max_rest), &mut current, &mut out, limit);
    complete.then_some(out)
}

/// The Veronese-type basis: all degree-`d` monomials in `n` variables whose
/// exponents lie between `lower` and `upper` entrywise.
pub fn veronese_type(n: usize, d: u64, lower: &[u64], upper: &[u64]) -> Result<MonomialBasis> {
    for v in [lower, upper] {
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: v.len() });
        }
    }
    let elements = enumerate_bounded(d, lower, upper, None).unwrap_or_default();
    MonomialBasis::new(elements)
}

/// A product `B_1 ⋯ B_s` that remembers its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductStructure {
    factors: Vec<MonomialBasis>,
    flattened: MonomialBasis,
}

impl ProductStructure {
    pub fn new(factors: Vec<MonomialBasis>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::PreconditionViolation("a product needs at least one factor".into()))?;
        let n = first.n();
        let mut acc: BTreeSet<Monomial> = BTreeSet::new();
        acc.insert(Monomial::one(n));
        for b in &factors {
            if b.n() != n {
                return Err(Error::LengthMismatch { expected: n, found: b.n() });
            }
            let mut next = BTreeSet::new();
            for a in &acc {
                for m in b {
                    next.insert(a.multiply(m)?);
                }
            }
            acc = next;
        }
        let flattened = MonomialBasis::new(acc)?;
        Ok(ProductStructure { factors, flattened })
    }

    pub fn product(b1: &MonomialBasis, b2: &MonomialBasis) -> Result<Self> {
        Self::new(alloc::vec![b1.clone(), b2.clone()])
    }

    /// The `k`-fold product of `b` with itself.
    pub fn power(b: &MonomialBasis, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::PreconditionViolation("power needs k >= 1".into()));
        }
        Self::new(alloc::vec![b.clone(); k])
    }

    pub fn factors(&self) -> &[MonomialBasis] {
        &self.factors
    }

    pub fn flattened(&self) -> &MonomialBasis {
        &self.flattened
    }

    pub fn n(&self) -> usize {
        self.flattened.n()
    }
}
