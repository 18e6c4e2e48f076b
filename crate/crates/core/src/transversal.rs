//! Transversal polymatroids: products of variable subsets, Hibi relations and
//! the substitution that removes the single linear relation.
//!
//! Convention note: for index vectors `a`, `b` the relation emitted for an
//! incomparable pair is `y_a y_b - y_{a^b} y_{avb}` where `a^b` is the
//! componentwise *maximum* and `avb` the componentwise *minimum*. This is the
//! reverse of the usual lattice notation; only the binomials matter.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::basis::{MonomialBasis, ProductStructure};
use crate::error::{Error, Result};
use crate::groebner::{MonomialOrder, OrderKind};
use crate::invariants::HilbertData;
use crate::monomial::Monomial;
use crate::toric::{linear_relations, Binomial, MoveKind, MoveSet, Presentation, YMonomial};

/// Upper bound on the number of presentation variables for Hibi enumeration.
pub const HIBI_VARIABLE_CAP: usize = 10_000;

/// Ordered variable subsets `X_1, ..., X_s` of `x_1, ..., x_n` (zero-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalStructure {
    n: usize,
    subsets: Vec<Vec<usize>>,
}

impl TransversalStructure {
    pub fn new(n: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        if subsets.is_empty() || subsets.iter().any(Vec::is_empty) {
            return Err(Error::EmptyBasis);
        }
        for x in &subsets {
            if let Some(&index) = x.iter().find(|&&k| k >= n) {
                return Err(Error::IndexOutOfRange { index, n });
            }
            let mut sorted = x.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != x.len() {
                return Err(Error::PreconditionViolation("repeated variable in a subset".into()));
            }
        }
        Ok(TransversalStructure { n, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.subsets.iter().map(Vec::len).collect()
    }

    fn lists(&self) -> Vec<Vec<Monomial>> {
        self.subsets
            .iter()
            .map(|x| x.iter().map(|&k| Monomial::variable(k, self.n).expect("checked in new")).collect())
            .collect()
    }

    pub fn product(&self) -> Result<ProductStructure> {
        let factors = self.lists().into_iter().map(MonomialBasis::new).collect::<Result<Vec<_>>>()?;
        ProductStructure::new(factors)
    }

    /// Variables `y_a` indexed by position vectors in the given orderings,
    /// listed lexicographically.
    pub fn presentation(&self) -> Result<Presentation> {
        let total = self.sizes().iter().try_fold(1usize, |acc, &k| acc.checked_mul(k)).ok_or(Error::Overflow)?;
        if total > HIBI_VARIABLE_CAP {
            return Err(Error::EnumerationTooLarge { degree: 1, cap: HIBI_VARIABLE_CAP });
        }
        Presentation::from_factor_lists(self.n, &self.lists())
    }

    fn with_subsets(&self, subsets: Vec<Vec<usize>>) -> Self {
        TransversalStructure { n: self.n, subsets }
    }
}

/// Zero-based index vector of variable `v` (mixed radix over the sizes).
pub fn index_vector(sizes: &[usize], mut v: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; sizes.len()];
    for (slot, &size) in out.iter_mut().zip(sizes).rev() {
        *slot = v % size;
        v /= size;
    }
    out
}

fn var_of(sizes: &[usize], index: &[usize]) -> usize {
    index.iter().zip(sizes).fold(0, |acc, (&p, &size)| acc * size + p)
}

fn componentwise(a: &[usize], b: &[usize]) -> Option<Ordering> {
    let le = a.iter().zip(b).all(|(x, y)| x <= y);
    let ge = a.iter().zip(b).all(|(x, y)| x >= y);
    match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

/// One relation `y_a y_b - y_{max(a,b)} y_{min(a,b)}` per incomparable pair.
pub fn hibi_relations(t: &TransversalStructure) -> Result<MoveSet> {
    let sizes = t.sizes();
    let total = t.presentation()?.len();
    let mut set = Vec::new();
    for v in 0..total {
        let a = index_vector(&sizes, v);
        for w in v + 1..total {
            let b = index_vector(&sizes, w);
            if componentwise(&a, &b).is_some() {
                continue;
            }
            let meet: Vec<usize> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
            let join: Vec<usize> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
            let rhs = YMonomial::from_indices(&[var_of(&sizes, &meet), var_of(&sizes, &join)]);
            set.extend(Binomial::new(YMonomial::from_indices(&[v, w]), rhs));
        }
    }
    Ok(MoveSet::from_moves(MoveKind::Hibi, set))
}

/// DegRevLex with larger index vectors ranked higher: `y_{(|X_1|,...,|X_s|)}`
/// is the largest variable and `y_{(1,...,1)}` the smallest. Reverse lex on
/// index vectors is a linear extension of the componentwise order.
pub fn hibi_order(t: &TransversalStructure) -> Result<MonomialOrder> {
    let total = t.presentation()?.len();
    MonomialOrder::new(OrderKind::DegRevLex, (0..total).rev().collect())
}

/// Outcome of [`substitute_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    /// The structure with orderings rotated or reversed so that the linear
    /// relation joins the all-maximal and the all-ones index vectors.
    pub structure: TransversalStructure,
    /// Index of the all-maximal variable, rewritten away.
    pub removed: usize,
    /// Index of the all-ones variable (always 0).
    pub kept: usize,
    /// Hibi relations after the rewrite, zero binomials dropped.
    pub moves: MoveSet,
}

/// Rotations of `x` (and of its reversal) that put `first` at position 0 and
/// `last` at the end; `None` if there is none.
fn reorder(x: &[usize], first: usize, last: usize) -> Option<Vec<usize>> {
    let k = x.len();
    let reversed: Vec<usize> = x.iter().rev().copied().collect();
    for base in [x.to_vec(), reversed] {
        for r in 0..k {
            let cand: Vec<usize> = base[r..].iter().chain(&base[..r]).copied().collect();
            if cand[0] == first && cand[k - 1] == last {
                return Some(cand);
            }
        }
    }
    None
}

/// Normalizes the orderings so that the single linear relation reads
/// `y_max - y_ones`, checks that `y_max` divides no leading term of a Hibi
/// relation under [`hibi_order`], and rewrites `y_max` to `y_ones`.
pub fn substitute_linear(t: &TransversalStructure) -> Result<Substitution> {
    let pres = t.presentation()?;
    let linear = linear_relations(&pres);
    if linear.len() != 1 {
        return Err(Error::PreconditionViolation(alloc::format!(
            "expected exactly one linear relation, found {}",
            linear.len()
        )));
    }
    let rel = linear.iter().next().expect("one relation");
    let sizes = t.sizes();
    let v = index_vector(&sizes, rel.lhs().vars()[0] as usize);
    let w = index_vector(&sizes, rel.rhs().vars()[0] as usize);

    // Each X_j is handled independently; the identity ordering is tried first.
    let mut normalized = None;
    'orient: for (ones, max) in [(&v, &w), (&w, &v)] {
        let mut subsets = Vec::with_capacity(t.s());
        for (x, (&a, &b)) in t.subsets.iter().zip(ones.iter().zip(max.iter())) {
            match reorder(x, x[a], x[b]) {
                Some(order) => subsets.push(order),
                None => continue 'orient,
            }
        }
        normalized = Some(t.with_subsets(subsets));
        break;
    }
    let structure = normalized
        .ok_or_else(|| Error::PreconditionViolation("no rotation or reversal normalizes the linear relation".into()))?;

    let total = pres.len();
    let (removed, kept) = (total - 1, 0);
    let check = linear_relations(&structure.presentation()?);
    let expected = Binomial::new(YMonomial::var(kept), YMonomial::var(removed));
    if check.len() != 1 || check.iter().next() != expected.as_ref() {
        return Err(Error::InternalInconsistency("normalized linear relation is not y_max - y_ones".into()));
    }

    let hibi = hibi_relations(&structure)?;
    let order = hibi_order(&structure)?;
    for b in hibi.iter() {
        let lead = match order.compare(b.lhs(), b.rhs())? {
            Ordering::Less => b.rhs(),
            _ => b.lhs(),
        };
        if lead.vars().contains(&(removed as u32)) {
            return Err(Error::InternalInconsistency(String::from("y_max divides a Hibi leading term")));
        }
    }
    Ok(Substitution { structure, removed, kept, moves: hibi.substitute(removed, kept) })
}

/// Evidence for the Gorenstein property: equal subset sizes and a palindromic
/// h-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinReport {
    pub equal_sizes: bool,
    /// Whether [`substitute_linear`] applies (exactly one linear relation).
    pub normalizable: bool,
    pub hilbert: HilbertData,
    pub palindromic: bool,
}

/// Computes the report, raising the Hilbert degree bound up to `max_degree`
/// until the h-vector stabilizes.
pub fn gorenstein_candidate(t: &TransversalStructure, max_degree: usize) -> Result<GorensteinReport> {
    let sizes = t.sizes();
    let equal_sizes = sizes.windows(2).all(|w| w[0] == w[1]);
    let normalizable = match substitute_linear(t) {
        Ok(_) => true,
        Err(Error::PreconditionViolation(_)) => false,
        Err(e) => return Err(e),
    };
    let product = t.product()?;
    let hilbert = HilbertData::stabilize(product.flattened(), max_degree)?;
    let palindromic = hilbert.is_palindromic();
    Ok(GorensteinReport { equal_sizes, normalizable, hilbert, palindromic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, certify_generation};
    use crate::toric::{exchange_relations, same_component, white_check};
    use crate::{DEFAULT_FIBER_CAP, DEFAULT_STEP_CAP};
    use alloc::vec;

    pub(crate) fn five_cycle() -> TransversalStructure {
        TransversalStructure::new(5, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]]).unwrap()
    }

    fn var(pres: &Presentation, label: &str) -> usize {
        pres.vars().iter().position(|v| alloc::format!("{}", v.label) == label).unwrap()
    }

    #[test]
    fn five_cycle_presentation() {
        let t = five_cycle();
        let pres = t.presentation().unwrap();
        assert_eq!(pres.len(), 32);
        let lin = linear_relations(&pres);
        assert_eq!(lin.len(), 1);
        let shown = pres.display_binomial(lin.iter().next().unwrap());
        assert_eq!(shown, "y11111 - y22222");
    }

    #[test]
    fn hibi_examples() {
        let t = TransversalStructure::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let pres = t.presentation().unwrap();
        let hibi = hibi_relations(&t).unwrap();
        let shown: Vec<_> = hibi.iter().map(|b| pres.display_binomial(b)).collect();
        // y12 y21 - y22 y11, printed with the smaller monomial first
        assert_eq!(shown, vec!["y11*y22 - y12*y21"]);

        let t = five_cycle();
        let pres = t.presentation().unwrap();
        let hibi = hibi_relations(&t).unwrap();
        let a = YMonomial::from_indices(&[var(&pres, "y11122"), var(&pres, "y12221")]);
        let b = YMonomial::from_indices(&[var(&pres, "y12222"), var(&pres, "y11121")]);
        assert!(hibi.contains(&Binomial::new(a, b).unwrap()));
        for m in hibi.iter() {
            pres.check_move(m).unwrap();
        }
    }

    #[test]
    fn hibi_order_is_a_linear_extension() {
        let t = five_cycle();
        let order = hibi_order(&t).unwrap();
        let ranking = order.ranking();
        assert_eq!(ranking[0], 31);
        assert_eq!(ranking[31], 0);
        let sizes = t.sizes();
        let rank_of = |v: usize| ranking.iter().position(|&r| r == v).unwrap();
        for v in 0..32 {
            for w in 0..32 {
                if componentwise(&index_vector(&sizes, v), &index_vector(&sizes, w)) == Some(Ordering::Less) {
                    assert!(rank_of(w) < rank_of(v));
                }
            }
        }
        let single = TransversalStructure::new(3, vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(hibi_order(&single).unwrap().ranking(), &[2, 1, 0]);
    }

    #[test]
    fn hibi_leading_terms_and_groebner() {
        let t = five_cycle();
        let hibi = hibi_relations(&t).unwrap();
        let order = hibi_order(&t).unwrap();
        let gens: Vec<Binomial> = hibi.iter().cloned().collect();
        let sizes = t.sizes();
        for b in &gens {
            // the incomparable pair is the leading term
            let [v, w] = [b.lhs().vars()[0] as usize, b.lhs().vars()[1] as usize];
            let incomparable = componentwise(&index_vector(&sizes, v), &index_vector(&sizes, w)).is_none();
            let lead = if order.compare(b.lhs(), b.rhs()).unwrap() == Ordering::Greater { b.lhs() } else { b.rhs() };
            assert_eq!(incomparable, lead == b.lhs());
        }
        let gb = buchberger(&gens, &order, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(gb.stats().added, 0);
        assert_eq!(gb.binomials(), gens);
    }

    #[test]
    fn substitution_keeps_a_quadratic_groebner_basis() {
        let t = five_cycle();
        let sub = substitute_linear(&t).unwrap();
        assert_eq!(sub.structure, t);
        assert_eq!((sub.removed, sub.kept), (31, 0));
        let order = hibi_order(&sub.structure).unwrap();
        let gens: Vec<Binomial> = sub.moves.iter().cloned().collect();
        assert!(gens.iter().all(|b| !b.lhs().vars().contains(&31) && !b.rhs().vars().contains(&31)));
        let gb = buchberger(&gens, &order, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(gb.stats().added, 0);
        assert_eq!(gb.binomials(), gens);
        assert!(gb.is_quadratic());
    }

    #[test]
    fn smaller_first_ranking_breaks_the_substitution() {
        let t = five_cycle();
        let sub = substitute_linear(&t).unwrap();
        let order = MonomialOrder::new(OrderKind::DegRevLex, (0..32).collect()).unwrap();
        let gens: Vec<Binomial> = sub.moves.iter().cloned().collect();
        let gb = buchberger(&gens, &order, DEFAULT_STEP_CAP).unwrap();
        assert_ne!(gb.binomials(), gens);
    }

    #[test]
    fn normalization_rotates_orderings() {
        let t = TransversalStructure::new(5, vec![vec![1, 0], vec![1, 2], vec![3, 2], vec![3, 4], vec![4, 0]]).unwrap();
        let sub = substitute_linear(&t).unwrap();
        let lin = linear_relations(&sub.structure.presentation().unwrap());
        assert_eq!(lin.iter().next(), Binomial::new(YMonomial::var(0), YMonomial::var(31)).as_ref());
        let gens: Vec<Binomial> = sub.moves.iter().cloned().collect();
        let gb = buchberger(&gens, &hibi_order(&sub.structure).unwrap(), DEFAULT_STEP_CAP).unwrap();
        assert!(gb.is_quadratic());
    }

    #[test]
    fn substitution_preconditions() {
        let disjoint = TransversalStructure::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(substitute_linear(&disjoint), Err(Error::PreconditionViolation(_))));
        // {x1,x2} twice: one linear relation, normalized by reversing X_2
        let two = TransversalStructure::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(substitute_linear(&two).unwrap().structure.subsets(), &[vec![0, 1], vec![1, 0]]);
        let three = TransversalStructure::new(2, vec![vec![0, 1]; 3]).unwrap();
        assert!(matches!(substitute_linear(&three), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn hibi_with_linear_generates_and_certifies() {
        let t = five_cycle();
        let pres = t.presentation().unwrap();
        let moves = hibi_relations(&t).unwrap().union(&linear_relations(&pres));
        let report = white_check(&pres, &moves, 2, DEFAULT_FIBER_CAP).unwrap();
        assert!(report.pass);
        let gens: Vec<Binomial> = moves.iter().cloned().collect();
        let order = hibi_order(&t).unwrap();
        let cert = certify_generation(&pres, &gens, &order, 2, DEFAULT_STEP_CAP, DEFAULT_FIBER_CAP).unwrap();
        assert!(cert.certified);
    }

    #[test]
    fn hibi_relations_follow_from_exchanges() {
        let t = TransversalStructure::new(4, vec![vec![0, 1, 2], vec![1, 3], vec![0, 3]]).unwrap();
        let pres = t.presentation().unwrap();
        let moves = exchange_relations(&pres, false).union(&linear_relations(&pres));
        for b in hibi_relations(&t).unwrap().iter() {
            assert!(same_component(&pres, &moves, b.lhs(), b.rhs(), DEFAULT_FIBER_CAP).unwrap());
        }
    }

    #[test]
    fn gorenstein_examples() {
        let r = gorenstein_candidate(&five_cycle(), 12).unwrap();
        assert!(r.equal_sizes && r.normalizable && r.palindromic);
        assert_eq!(r.hilbert.h_vector, vec![1, 26, 66, 26, 1]);

        let uneven = TransversalStructure::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert!(!gorenstein_candidate(&uneven, 12).unwrap().equal_sizes);

        let line = TransversalStructure::new(2, vec![vec![0, 1]]).unwrap();
        let r = gorenstein_candidate(&line, 12).unwrap();
        assert_eq!(r.hilbert.h_vector, vec![1]);
        assert!(r.palindromic && !r.normalizable);
    }

    #[test]
    fn structure_validation() {
        assert_eq!(TransversalStructure::new(2, vec![]), Err(Error::EmptyBasis));
        assert_eq!(TransversalStructure::new(2, vec![vec![]]), Err(Error::EmptyBasis));
        assert_eq!(TransversalStructure::new(2, vec![vec![2]]), Err(Error::IndexOutOfRange { index: 2, n: 2 }));
        assert!(TransversalStructure::new(2, vec![vec![1, 1]]).is_err());
    }
}
