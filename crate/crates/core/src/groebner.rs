//! Buchberger's algorithm restricted to pure-difference binomials.
//!
//! S-polynomials and remainders of binomials `u - v` are again binomials or
//! zero, so no coefficient arithmetic is needed: a binomial is a pair of
//! monomials and reducing it reduces each side to its normal form.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::toric::{fibers_of_degree, Binomial, Presentation, YMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::DegLex => "deglex",
            OrderKind::DegRevLex => "degrevlex",
        })
    }
}

/// A monomial order on the presentation variables. `ranking[0]` is the
/// largest variable, `ranking[1]` the next, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
    rank_of: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ranking: Vec<usize>) -> Result<Self> {
        let mut rank_of = alloc::vec![usize::MAX; ranking.len()];
        for (rank, &v) in ranking.iter().enumerate() {
            if v >= ranking.len() || rank_of[v] != usize::MAX {
                return Err(Error::PreconditionViolation(format!(
                    "variable ranking is not a permutation of 0..{}",
                    ranking.len()
                )));
            }
            rank_of[v] = rank;
        }
        Ok(MonomialOrder { kind, ranking, rank_of })
    }

    /// Variables ranked by index: `y1 > y2 > ... `.
    pub fn natural(kind: OrderKind, nvars: usize) -> Self {
        Self::new(kind, (0..nvars).collect()).expect("identity permutation")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    fn dense(&self, m: &YMonomial) -> Result<Vec<u32>> {
        let mut d = alloc::vec![0u32; self.nvars()];
        for &v in m.vars() {
            let rank =
                *self.rank_of.get(v as usize).ok_or(Error::IndexOutOfRange { index: v as usize, n: self.nvars() })?;
            d[rank] += 1;
        }
        Ok(d)
    }

    fn sparse(&self, d: &[u32]) -> YMonomial {
        let mut vars = Vec::new();
        for (rank, &e) in d.iter().enumerate() {
            for _ in 0..e {
                vars.push(self.ranking[rank] as u32);
            }
        }
        YMonomial::new(vars)
    }

    fn cmp_dense(&self, a: &[u32], b: &[u32]) -> Ordering {
        let degree = |v: &[u32]| v.iter().map(|&e| e as u64).sum::<u64>();
        let lex = || a.iter().zip(b).find(|(x, y)| x != y).map_or(Ordering::Equal, |(x, y)| x.cmp(y));
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::DegLex => degree(a).cmp(&degree(b)).then_with(lex),
            OrderKind::DegRevLex => degree(a).cmp(&degree(b)).then_with(|| {
                // the last differing variable decides: a smaller exponent wins
                a.iter().zip(b).rev().find(|(x, y)| x != y).map_or(Ordering::Equal, |(x, y)| y.cmp(x))
            }),
        }
    }

    pub fn compare(&self, a: &YMonomial, b: &YMonomial) -> Result<Ordering> {
        Ok(self.cmp_dense(&self.dense(a)?, &self.dense(b)?))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.kind)?;
        for (k, v) in self.ranking.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

/// A Gröbner basis element `lead - tail` with `lead` the leading term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GbElement {
    pub lead: YMonomial,
    pub tail: YMonomial,
}

impl GbElement {
    pub fn degree(&self) -> usize {
        self.lead.degree().max(self.tail.degree())
    }

    pub fn binomial(&self) -> Binomial {
        Binomial::new(self.lead.clone(), self.tail.clone()).expect("lead differs from tail")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GbStats {
    /// S-pairs actually reduced.
    pub s_pairs: usize,
    /// Pairs skipped because their leading terms are coprime.
    pub coprime_skipped: usize,
    /// Nonzero remainders appended during the run.
    pub added: usize,
}

/// A reduced Gröbner basis, elements listed by decreasing leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<GbElement>,
    stats: GbStats,
    dense: Vec<DenseBinomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct DenseBinomial {
    lead: Vec<u32>,
    tail: Vec<u32>,
    support: Vec<(usize, u32)>,
}

impl DenseBinomial {
    fn new(lead: Vec<u32>, tail: Vec<u32>) -> Self {
        let support = lead.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k, e)).collect();
        DenseBinomial { lead, tail, support }
    }

    fn lead_divides(&self, m: &[u32]) -> bool {
        self.support.iter().all(|&(k, e)| m[k] >= e)
    }
}

fn normal_form(mut m: Vec<u32>, basis: &[DenseBinomial]) -> Vec<u32> {
    while let Some(g) = basis.iter().find(|g| g.lead_divides(&m)) {
        for (k, x) in m.iter_mut().enumerate() {
            *x = *x - g.lead[k] + g.tail[k];
        }
    }
    m
}

fn orient(order: &MonomialOrder, a: Vec<u32>, b: Vec<u32>) -> Option<DenseBinomial> {
    match order.cmp_dense(&a, &b) {
        Ordering::Greater => Some(DenseBinomial::new(a, b)),
        Ordering::Less => Some(DenseBinomial::new(b, a)),
        Ordering::Equal => None,
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`. At most
/// `step_cap` S-pairs are reduced before giving up with [`Error::Timeout`].
pub fn buchberger(gens: &[Binomial], order: &MonomialOrder, step_cap: usize) -> Result<GroebnerBasis> {
    let mut basis: Vec<DenseBinomial> = Vec::new();
    for b in gens {
        let (l, r) = (order.dense(b.lhs())?, order.dense(b.rhs())?);
        if let Some(d) = orient(order, l, r) {
            if !basis.contains(&d) {
                basis.push(d);
            }
        }
    }
    let mut stats = GbStats::default();
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (gi, gj) = (&basis[i], &basis[j]);
        if gi.support.iter().all(|&(k, _)| gj.lead[k] == 0) {
            stats.coprime_skipped += 1;
            continue;
        }
        stats.s_pairs += 1;
        if stats.s_pairs > step_cap {
            return Err(Error::Timeout { cap: step_cap });
        }
        let lcm: Vec<u32> = gi.lead.iter().zip(&gj.lead).map(|(a, b)| *a.max(b)).collect();
        let side = |g: &DenseBinomial| -> Vec<u32> { (0..lcm.len()).map(|k| lcm[k] - g.lead[k] + g.tail[k]).collect() };
        let (a, b) = (side(gi), side(gj));
        let (a, b) = (normal_form(a, &basis), normal_form(b, &basis));
        if let Some(d) = orient(order, a, b) {
            let k = basis.len();
            basis.push(d);
            stats.added += 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    reduce(order, basis, stats)
}

fn reduce(order: &MonomialOrder, basis: Vec<DenseBinomial>, stats: GbStats) -> Result<GroebnerBasis> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp_dense(&a.lead, &b.lead).then_with(|| order.cmp_dense(&a.tail, &b.tail)));
    let mut minimal: Vec<DenseBinomial> = Vec::new();
    for g in sorted {
        // sorted ascending, so any divisor of g's lead is already present
        if !minimal.iter().any(|h| h.lead_divides(&g.lead)) {
            minimal.push(g);
        }
    }
    let leads_only: Vec<DenseBinomial> = minimal.clone();
    let mut reduced = Vec::with_capacity(minimal.len());
    for g in minimal {
        let tail = normal_form(g.tail.clone(), &leads_only);
        if order.cmp_dense(&g.lead, &tail) != Ordering::Greater {
            return Err(Error::InternalInconsistency(
                "tail reduction produced a term not below the leading term".into(),
            ));
        }
        reduced.push(DenseBinomial::new(g.lead, tail));
    }
    reduced.sort_by(|a, b| order.cmp_dense(&b.lead, &a.lead));
    let elements =
        reduced.iter().map(|g| GbElement { lead: order.sparse(&g.lead), tail: order.sparse(&g.tail) }).collect();
    Ok(GroebnerBasis { order: order.clone(), elements, stats, dense: reduced })
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[GbElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    /// Elements as sign-normalized binomials, canonically sorted.
    pub fn binomials(&self) -> Vec<Binomial> {
        let mut out: Vec<Binomial> = self.elements.iter().map(GbElement::binomial).collect();
        out.sort();
        out
    }

    pub fn normal_form(&self, m: &YMonomial) -> Result<YMonomial> {
        Ok(self.order.sparse(&normal_form(self.order.dense(m)?, &self.dense)))
    }

    /// Whether no leading term divides `m`.
    pub fn is_standard(&self, m: &YMonomial) -> Result<bool> {
        let d = self.order.dense(m)?;
        Ok(!self.dense.iter().any(|g| g.lead_divides(&d)))
    }

    pub fn reduces_to_zero(&self, b: &Binomial) -> Result<bool> {
        Ok(self.normal_form(b.lhs())? == self.normal_form(b.rhs())?)
    }

    pub fn max_degree(&self) -> usize {
        self.elements.iter().map(GbElement::degree).max().unwrap_or(0)
    }

    /// Every element has degree two (vacuously true when empty).
    pub fn is_quadratic(&self) -> bool {
        self.elements.iter().all(|g| g.degree() == 2)
    }
}

pub fn is_quadratic(gb: &GroebnerBasis) -> bool {
    gb.is_quadratic()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationFailure {
    pub degree: usize,
    pub target: Monomial,
    /// Number of standard monomials found in the fiber (should be one).
    pub normal_forms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub certified: bool,
    pub d_max: usize,
    pub basis: GroebnerBasis,
    pub failure: Option<CertificationFailure>,
}

/// Runs Buchberger on `gens` (which must lie in the toric ideal) and checks
/// that every fiber of degree `<= d_max` holds exactly one standard monomial,
/// i.e. that the result is a Gröbner basis of the whole toric ideal up to
/// that degree.
pub fn certify_generation(
    pres: &Presentation,
    gens: &[Binomial],
    order: &MonomialOrder,
    d_max: usize,
    step_cap: usize,
    fiber_cap: usize,
) -> Result<Certification> {
    for g in gens {
        pres.check_move(g)?;
    }
    let basis = buchberger(gens, order, step_cap)?;
    for g in basis.elements() {
        if pres.image(&g.lead)? != pres.image(&g.tail)? {
            return Err(Error::InternalInconsistency("Gröbner element leaves the toric ideal".into()));
        }
    }
    let mut failure = None;
    'degrees: for e in 1..=d_max {
        for (target, fiber) in fibers_of_degree(pres, e, None, fiber_cap)? {
            let mut standard = 0;
            for m in &fiber {
                if basis.is_standard(m)? {
                    standard += 1;
                }
            }
            if standard != 1 {
                failure = Some(CertificationFailure { degree: e, target, normal_forms: standard });
                break 'degrees;
            }
        }
    }
    Ok(Certification { certified: failure.is_none(), d_max, basis, failure })
}

/// One attempted order in [`search_quadratic_order`].
#[derive(Debug, Clone)]
pub struct OrderTrial {
    pub order: MonomialOrder,
    pub outcome: Result<GroebnerBasis>,
}

/// Tries `candidates` in turn and stops at the first order giving a
/// quadratic Gröbner basis. Gathers evidence only; failure proves nothing.
pub fn search_quadratic_order(
    gens: &[Binomial],
    candidates: impl IntoIterator<Item = MonomialOrder>,
    step_cap: usize,
) -> (Vec<OrderTrial>, Option<usize>) {
    let mut trials = Vec::new();
    for order in candidates {
        let outcome = buchberger(gens, &order, step_cap);
        let hit = matches!(&outcome, Ok(gb) if gb.is_quadratic());
        trials.push(OrderTrial { order, outcome });
        if hit {
            let k = trials.len() - 1;
            return (trials, Some(k));
        }
    }
    (trials, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::MonomialBasis;
    use crate::toric::{minimal_generators, Presentation};
    use crate::{DEFAULT_FIBER_CAP, DEFAULT_STEP_CAP};
    use alloc::vec;

    fn ym(v: &[usize]) -> YMonomial {
        YMonomial::from_indices(v)
    }

    fn bin(a: &[usize], b: &[usize]) -> Binomial {
        Binomial::new(ym(a), ym(b)).unwrap()
    }

    fn example_one_gens() -> Vec<Binomial> {
        vec![bin(&[0, 3], &[1, 2]), bin(&[0, 5], &[1, 4]), bin(&[2, 5], &[3, 4])]
    }

    #[test]
    fn compare_examples() {
        let lex = MonomialOrder::natural(OrderKind::Lex, 6);
        assert_eq!(lex.compare(&ym(&[0, 3]), &ym(&[1, 2])).unwrap(), Ordering::Greater);
        let drl = MonomialOrder::natural(OrderKind::DegRevLex, 3);
        assert_eq!(drl.compare(&ym(&[2, 2, 2]), &ym(&[0, 0])).unwrap(), Ordering::Greater);
        assert_eq!(drl.compare(&ym(&[1, 1]), &ym(&[0, 2])).unwrap(), Ordering::Greater);
        // lex would say the opposite
        let lex3 = MonomialOrder::natural(OrderKind::Lex, 3);
        assert_eq!(lex3.compare(&ym(&[1, 1]), &ym(&[0, 2])).unwrap(), Ordering::Less);
        let dl = MonomialOrder::natural(OrderKind::DegLex, 3);
        assert_eq!(dl.compare(&ym(&[2, 2, 2]), &ym(&[0, 0])).unwrap(), Ordering::Greater);
        // a custom ranking reverses the variables
        let rev = MonomialOrder::new(OrderKind::Lex, vec![2, 1, 0]).unwrap();
        assert_eq!(rev.compare(&ym(&[0]), &ym(&[2])).unwrap(), Ordering::Less);
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn example_one_generators_are_a_lex_basis() {
        let gens = example_one_gens();
        let gb = buchberger(&gens, &MonomialOrder::natural(OrderKind::Lex, 6), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(gb.binomials(), gens);
        assert_eq!(gb.stats().added, 0);
        assert!(gb.is_quadratic());
        assert_eq!(gb.elements()[0].lead, ym(&[0, 3]));
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let g = vec![bin(&[0, 2], &[1, 1])];
        let gb = buchberger(&g, &MonomialOrder::natural(OrderKind::DegRevLex, 3), 10).unwrap();
        assert_eq!(gb.binomials(), g);
    }

    #[test]
    fn quadratic_checks() {
        let gb = buchberger(&[], &MonomialOrder::natural(OrderKind::Lex, 2), 10).unwrap();
        assert!(gb.is_quadratic());
        let cubic = vec![bin(&[0, 0, 0], &[1, 1, 2])];
        let gb = buchberger(&cubic, &MonomialOrder::natural(OrderKind::Lex, 3), 10).unwrap();
        assert!(!is_quadratic(&gb));
    }

    #[test]
    fn twisted_cubic_needs_new_elements() {
        // two of the three twisted-cubic quadrics; their S-pair leaves y2^2 y4 - y2 y3^2
        let gens = vec![bin(&[0, 2], &[1, 1]), bin(&[0, 3], &[1, 2])];
        let gb = buchberger(&gens, &MonomialOrder::natural(OrderKind::Lex, 4), 100).unwrap();
        assert!(gb.stats().added > 0);
        let again = buchberger(&gb.binomials(), gb.order(), 100).unwrap();
        assert_eq!(again.elements(), gb.elements());
    }

    #[test]
    fn step_cap_times_out() {
        let gens = vec![bin(&[0, 2], &[1, 1]), bin(&[0, 3], &[1, 2])];
        let err = buchberger(&gens, &MonomialOrder::natural(OrderKind::Lex, 4), 0).unwrap_err();
        assert_eq!(err, Error::Timeout { cap: 0 });
    }

    fn example_one_presentation() -> Presentation {
        Presentation::from_basis(
            &MonomialBasis::from_rows([
                [1, 1, 1, 0],
                [1, 0, 2, 0],
                [0, 2, 1, 0],
                [0, 1, 2, 0],
                [0, 1, 1, 1],
                [0, 0, 2, 1],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn certification_examples() {
        let pres = example_one_presentation();
        let lex = MonomialOrder::natural(OrderKind::Lex, 6);
        let cert =
            certify_generation(&pres, &example_one_gens(), &lex, 3, DEFAULT_STEP_CAP, DEFAULT_FIBER_CAP).unwrap();
        assert!(cert.certified);
        let cert = certify_generation(&pres, &[], &lex, 2, DEFAULT_STEP_CAP, DEFAULT_FIBER_CAP).unwrap();
        assert!(!cert.certified);
        assert_eq!(cert.failure.unwrap().normal_forms, 2);
        let bad = vec![bin(&[0, 1], &[0, 2])];
        assert_eq!(
            certify_generation(&pres, &bad, &lex, 2, DEFAULT_STEP_CAP, DEFAULT_FIBER_CAP).unwrap_err(),
            Error::NotInKernel
        );
    }

    #[test]
    fn normal_forms_agree_within_fibers() {
        let pres = example_one_presentation();
        let gens = minimal_generators(&pres, 3, DEFAULT_FIBER_CAP).unwrap();
        let drl = MonomialOrder::natural(OrderKind::DegRevLex, 6);
        let gb = buchberger(&gens, &drl, DEFAULT_STEP_CAP).unwrap();
        for e in 1..=3 {
            for fiber in fibers_of_degree(&pres, e, None, DEFAULT_FIBER_CAP).unwrap().values() {
                let nf = gb.normal_form(&fiber[0]).unwrap();
                for m in fiber {
                    assert_eq!(gb.normal_form(m).unwrap(), nf);
                }
            }
        }
    }

    #[test]
    fn order_search_stops_at_first_quadratic_hit() {
        let gens = example_one_gens();
        let candidates = [OrderKind::Lex, OrderKind::DegRevLex].map(|k| MonomialOrder::natural(k, 6));
        let (trials, hit) = search_quadratic_order(&gens, candidates, DEFAULT_STEP_CAP);
        assert_eq!(hit, Some(0));
        assert_eq!(trials.len(), 1);
    }
}
