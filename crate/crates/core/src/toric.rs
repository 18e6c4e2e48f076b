//! The toric presentation of a basis and its fiber graphs.
//!
//! A [`Presentation`] lists the presentation variables together with their
//! images. The toric ideal is never materialized: two monomials in the
//! presentation variables are congruent iff they have the same image, and a
//! set of binomials generates the ideal iff every fiber graph is connected
//! under it. Everything here answers generation questions that way.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::basis::{MonomialBasis, ProductStructure};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::multiset;

/// How a presentation variable is named.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum YLabel {
    /// Position in a plain basis (zero-based; printed one-based).
    Basis(usize),
    /// One element per factor, by zero-based position in that factor.
    Factors(Vec<usize>),
    /// An ambient variable `x_i` (only in Rees presentations).
    Ambient(usize),
}

impl fmt::Display for YLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YLabel::Basis(i) => write!(f, "y{}", i + 1),
            YLabel::Ambient(i) => write!(f, "x{}", i + 1),
            YLabel::Factors(v) if v.iter().all(|&k| k < 9) => {
                f.write_str("y")?;
                v.iter().try_for_each(|k| write!(f, "{}", k + 1))
            }
            YLabel::Factors(v) => {
                f.write_str("y(")?;
                for (p, k) in v.iter().enumerate() {
                    if p > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", k + 1)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YVariable {
    pub label: YLabel,
    pub image: Monomial,
}

/// A monomial in the presentation variables: a sorted multiset of variable
/// indices. Ordered by degree, then lexicographically by index vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YMonomial(Vec<u32>);

impl YMonomial {
    pub fn new(mut vars: Vec<u32>) -> Self {
        vars.sort_unstable();
        YMonomial(vars)
    }

    pub fn from_indices(vars: &[usize]) -> Self {
        Self::new(vars.iter().map(|&v| v as u32).collect())
    }

    pub fn var(v: usize) -> Self {
        YMonomial(alloc::vec![v as u32])
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn multiply(&self, other: &YMonomial) -> YMonomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        YMonomial::new(v)
    }
}

impl PartialOrd for YMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for YMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// A pure difference `lhs - rhs` of two distinct monomials, stored with
/// `lhs < rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    lhs: YMonomial,
    rhs: YMonomial,
}

impl Binomial {
    /// `None` when both sides coincide (the zero binomial).
    pub fn new(a: YMonomial, b: YMonomial) -> Option<Self> {
        match a.cmp(&b) {
            Ordering::Less => Some(Binomial { lhs: a, rhs: b }),
            Ordering::Greater => Some(Binomial { lhs: b, rhs: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lhs(&self) -> &YMonomial {
        &self.lhs
    }

    pub fn rhs(&self) -> &YMonomial {
        &self.rhs
    }

    pub fn degree(&self) -> usize {
        self.lhs.degree().max(self.rhs.degree())
    }

    /// Rewrites every occurrence of variable `from` as `to`.
    pub fn substitute(&self, from: usize, to: usize) -> Option<Binomial> {
        let sub = |m: &YMonomial| {
            YMonomial::new(m.0.iter().map(|&v| if v as usize == from { to as u32 } else { v }).collect())
        };
        Binomial::new(sub(&self.lhs), sub(&self.rhs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    ProperExchange,
    GeneralizedExchange,
    Linear,
    SingleColumn,
    Hibi,
    Custom,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::ProperExchange => "proper-exchange",
            MoveKind::GeneralizedExchange => "generalized-exchange",
            MoveKind::Linear => "linear",
            MoveKind::SingleColumn => "single-column",
            MoveKind::Hibi => "hibi",
            MoveKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSet {
    pub kind: MoveKind,
    pub moves: BTreeSet<Binomial>,
}

impl MoveSet {
    pub fn new(kind: MoveKind) -> Self {
        MoveSet { kind, moves: BTreeSet::new() }
    }

    pub fn from_moves(kind: MoveKind, moves: impl IntoIterator<Item = Binomial>) -> Self {
        MoveSet { kind, moves: moves.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Binomial> {
        self.moves.iter()
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        self.moves.contains(b)
    }

    /// Union of `self` and `other`, keeping `self`'s kind.
    pub fn union(&self, other: &MoveSet) -> MoveSet {
        MoveSet { kind: self.kind, moves: self.moves.union(&other.moves).cloned().collect() }
    }

    pub fn substitute(&self, from: usize, to: usize) -> MoveSet {
        MoveSet::from_moves(self.kind, self.moves.iter().filter_map(|b| b.substitute(from, to)))
    }
}

/// Presentation variables and their images under the monomial map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    image_len: usize,
    vars: Vec<YVariable>,
    /// Factor sizes when the variables are indexed by factor vectors.
    factor_sizes: Vec<usize>,
}

impl Presentation {
    /// One variable per basis element, in canonical order.
    pub fn from_basis(b: &MonomialBasis) -> Self {
        let vars = b.iter().enumerate().map(|(k, m)| YVariable { label: YLabel::Basis(k), image: m.clone() }).collect();
        Presentation { image_len: b.n(), vars, factor_sizes: Vec::new() }
    }

    /// One variable per vector of factor elements, `prod |B_j|` in total.
    pub fn from_product(p: &ProductStructure) -> Result<Self> {
        let lists: Vec<Vec<Monomial>> = p.factors().iter().map(|b| b.elements().to_vec()).collect();
        Self::from_factor_lists(p.n(), &lists)
    }

    /// Like [`Presentation::from_product`] but keeps the given order inside
    /// each factor. Variables are listed lexicographically by index vector.
    pub fn from_factor_lists(n: usize, lists: &[Vec<Monomial>]) -> Result<Self> {
        if lists.is_empty() || lists.iter().any(|l| l.is_empty()) {
            return Err(Error::EmptyBasis);
        }
        let factor_sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
        let total: usize = factor_sizes.iter().product();
        let mut vars = Vec::with_capacity(total);
        let mut index = alloc::vec![0usize; lists.len()];
        for _ in 0..total {
            let mut image = Monomial::one(n);
            for (list, &k) in lists.iter().zip(&index) {
                image = image.multiply(&list[k])?;
            }
            vars.push(YVariable { label: YLabel::Factors(index.clone()), image });
            for pos in (0..index.len()).rev() {
                index[pos] += 1;
                if index[pos] < factor_sizes[pos] {
                    break;
                }
                index[pos] = 0;
            }
        }
        Ok(Presentation { image_len: n, vars, factor_sizes })
    }

    /// Arbitrary variables; used for bigraded (Rees) presentations.
    pub fn from_variables(image_len: usize, vars: Vec<YVariable>) -> Result<Self> {
        if let Some(v) = vars.iter().find(|v| v.image.n() != image_len) {
            return Err(Error::LengthMismatch { expected: image_len, found: v.image.n() });
        }
        Ok(Presentation { image_len, vars, factor_sizes: Vec::new() })
    }

    pub fn vars(&self) -> &[YVariable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn image_len(&self) -> usize {
        self.image_len
    }

    /// Number of factors (matrix columns); zero for a plain basis.
    pub fn columns(&self) -> usize {
        self.factor_sizes.len()
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.factor_sizes
    }

    /// Variable index for a vector of zero-based factor positions.
    pub fn var_for_factors(&self, positions: &[usize]) -> Option<usize> {
        if positions.len() != self.factor_sizes.len() || self.factor_sizes.is_empty() {
            return None;
        }
        let mut idx = 0;
        for (&p, &size) in positions.iter().zip(&self.factor_sizes) {
            if p >= size {
                return None;
            }
            idx = idx * size + p;
        }
        Some(idx)
    }

    pub fn image(&self, m: &YMonomial) -> Result<Monomial> {
        let mut acc = Monomial::one(self.image_len);
        for &v in m.vars() {
            let var =
                self.vars.get(v as usize).ok_or(Error::IndexOutOfRange { index: v as usize, n: self.vars.len() })?;
            acc = acc.multiply(&var.image)?;
        }
        Ok(acc)
    }

    /// A sign-normalized binomial after checking that both sides share an image.
    pub fn binomial(&self, a: YMonomial, b: YMonomial) -> Result<Option<Binomial>> {
        if self.image(&a)? != self.image(&b)? {
            return Err(Error::NotInKernel);
        }
        Ok(Binomial::new(a, b))
    }

    pub fn check_move(&self, b: &Binomial) -> Result<()> {
        if self.image(b.lhs())? != self.image(b.rhs())? {
            return Err(Error::NotInKernel);
        }
        Ok(())
    }

    /// Rows of the factor matrix of `m` (one row per variable, in order).
    pub fn matrix(&self, m: &YMonomial) -> Option<Vec<Vec<usize>>> {
        m.vars()
            .iter()
            .map(|&v| match &self.vars.get(v as usize)?.label {
                YLabel::Factors(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    /// The monomial whose factor matrix has the given rows.
    pub fn from_matrix(&self, rows: &[Vec<usize>]) -> Option<YMonomial> {
        let vars = rows.iter().map(|r| self.var_for_factors(r)).collect::<Option<Vec<_>>>()?;
        Some(YMonomial::from_indices(&vars))
    }

    pub fn display_monomial(&self, m: &YMonomial) -> String {
        if m.degree() == 0 {
            return String::from("1");
        }
        let mut out = String::new();
        let vars = m.vars();
        let mut k = 0;
        while k < vars.len() {
            let v = vars[k];
            let mut run = 1;
            while k + run < vars.len() && vars[k + run] == v {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            match self.vars.get(v as usize) {
                Some(var) => out.push_str(&format!("{}", var.label)),
                None => out.push_str(&format!("?{v}")),
            }
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            k += run;
        }
        out
    }

    pub fn display_binomial(&self, b: &Binomial) -> String {
        format!("{} - {}", self.display_monomial(b.lhs()), self.display_monomial(b.rhs()))
    }

    fn images_to_vars(&self) -> BTreeMap<&Monomial, Vec<usize>> {
        let mut map: BTreeMap<&Monomial, Vec<usize>> = BTreeMap::new();
        for (k, v) in self.vars.iter().enumerate() {
            map.entry(&v.image).or_default().push(k);
        }
        map
    }
}

/// All `y_v - y_w` with `v != w` and equal images.
pub fn linear_relations(pres: &Presentation) -> MoveSet {
    let mut set = MoveSet::new(MoveKind::Linear);
    for vars in pres.images_to_vars().values() {
        for (a, &v) in vars.iter().enumerate() {
            for &w in &vars[a + 1..] {
                set.moves.extend(Binomial::new(YMonomial::var(v), YMonomial::var(w)));
            }
        }
    }
    set
}

/// Symmetric exchange relations `y_r y_s - y_t y_u` with
/// `image(y_t) = (x_j/x_i) image(y_r)` and `image(y_u) = (x_i/x_j) image(y_s)`.
/// The proper ones also need `deg_i` to drop from `r` to `s` and `deg_j` to
/// rise; `generalized` drops those two conditions.
pub fn exchange_relations(pres: &Presentation, generalized: bool) -> MoveSet {
    let kind = if generalized { MoveKind::GeneralizedExchange } else { MoveKind::ProperExchange };
    let mut set = MoveSet::new(kind);
    let by_image = pres.images_to_vars();
    let n = pres.image_len();
    let vars = pres.vars();
    for (r, vr) in vars.iter().enumerate() {
        for (s, vs) in vars.iter().enumerate() {
            let (fr, fs) = (&vr.image, &vs.image);
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    if !generalized && !(fr.exponent(i) > fs.exponent(i) && fr.exponent(j) < fs.exponent(j)) {
                        continue;
                    }
                    if fr.exponent(i) == 0 || fs.exponent(j) == 0 {
                        continue;
                    }
                    let (Ok(ft), Ok(fu)) = (fr.exchange(i, j), fs.exchange(j, i)) else { continue };
                    let (Some(ts), Some(us)) = (by_image.get(&ft), by_image.get(&fu)) else { continue };
                    let left = YMonomial::from_indices(&[r, s]);
                    for &t in ts {
                        for &u in us {
                            set.moves.extend(Binomial::new(left.clone(), YMonomial::from_indices(&[t, u])));
                        }
                    }
                }
            }
        }
    }
    set
}

/// Restricts enumeration to bidegrees `(a, b)` with `a <= cap_x`, `b <= cap_y`,
/// where `a` counts ambient variables and `b` the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BidegreeCaps {
    pub cap_x: usize,
    pub cap_y: usize,
}

/// Every degree-`e` fiber, keyed by image.
pub fn fibers_by_degree(pres: &Presentation, e: usize, cap: usize) -> Result<BTreeMap<Monomial, Vec<YMonomial>>> {
    fibers_of_degree(pres, e, None, cap)
}

/// All degree-`e` monomials grouped by image, each group sorted.
pub(crate) fn fibers_of_degree(
    pres: &Presentation,
    e: usize,
    caps: Option<BidegreeCaps>,
    cap: usize,
) -> Result<BTreeMap<Monomial, Vec<YMonomial>>> {
    struct Walk<'a> {
        images: Vec<&'a [u64]>,
        ambient: Vec<bool>,
        caps: Option<BidegreeCaps>,
        cap: usize,
        e: usize,
        count: usize,
        exps: Vec<u64>,
        chosen: Vec<u32>,
        out: BTreeMap<Monomial, Vec<YMonomial>>,
    }
    impl Walk<'_> {
        fn go(&mut self, start: usize, x_used: usize) -> Result<()> {
            if self.chosen.len() == self.e {
                self.count += 1;
                if self.count > self.cap {
                    return Err(Error::EnumerationTooLarge { degree: self.e, cap: self.cap });
                }
                let target = Monomial::new(self.exps.clone());
                let fiber = self.out.entry(target).or_default();
                fiber.push(YMonomial(self.chosen.clone()));
                return Ok(());
            }
            for v in start..self.images.len() {
                let x = x_used + usize::from(self.ambient[v]);
                if let Some(c) = self.caps {
                    let y = self.chosen.len() + 1 - x;
                    if x > c.cap_x || y > c.cap_y {
                        continue;
                    }
                }
                for (acc, &d) in self.exps.iter_mut().zip(self.images[v]) {
                    *acc = acc.checked_add(d).ok_or(Error::Overflow)?;
                }
                self.chosen.push(v as u32);
                let res = self.go(v, x);
                self.chosen.pop();
                for (acc, &d) in self.exps.iter_mut().zip(self.images[v]) {
                    *acc -= d;
                }
                res?;
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        images: pres.vars.iter().map(|v| v.image.exponents()).collect(),
        ambient: pres.vars.iter().map(|v| matches!(v.label, YLabel::Ambient(_))).collect(),
        caps,
        cap,
        e,
        count: 0,
        exps: alloc::vec![0; pres.image_len],
        chosen: Vec::with_capacity(e),
        out: BTreeMap::new(),
    };
    walk.go(0, 0)?;
    for (target, fiber) in walk.out.iter_mut() {
        if fiber.len() > cap {
            return Err(Error::FiberTooLarge { target: target.clone(), degree: e, cap });
        }
        fiber.sort();
    }
    Ok(walk.out)
}

/// The degree-`e` monomials with image `target`, found by backtracking over
/// variables in canonical order with divisibility pruning.
pub fn fiber(pres: &Presentation, target: &Monomial, e: usize, cap: usize) -> Result<Vec<YMonomial>> {
    if target.n() != pres.image_len() {
        return Err(Error::LengthMismatch { expected: pres.image_len(), found: target.n() });
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        pres: &Presentation,
        start: usize,
        remaining: &Monomial,
        left: usize,
        chosen: &mut Vec<u32>,
        out: &mut Vec<YMonomial>,
        cap: usize,
        target: &Monomial,
    ) -> Result<()> {
        if left == 0 {
            if remaining.is_one() {
                out.push(YMonomial(chosen.clone()));
                if out.len() > cap {
                    return Err(Error::FiberTooLarge { target: target.clone(), degree: chosen.len(), cap });
                }
            }
            return Ok(());
        }
        for v in start..pres.vars.len() {
            if let Some(rest) = remaining.checked_div(&pres.vars[v].image) {
                chosen.push(v as u32);
                let res = go(pres, v, &rest, left - 1, chosen, out, cap, target);
                chosen.pop();
                res?;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(pres, 0, target, e, &mut Vec::with_capacity(e), &mut out, cap, target)?;
    out.sort();
    Ok(out)
}

/// Both orientations of a set of moves, keyed by the side to be replaced.
#[derive(Debug, Default)]
pub(crate) struct MoveIndex {
    by_side: BTreeMap<Vec<u32>, Vec<Vec<u32>>>,
    degrees: BTreeSet<usize>,
}

impl MoveIndex {
    pub(crate) fn new<'a>(moves: impl IntoIterator<Item = &'a Binomial>) -> Self {
        let mut index = MoveIndex::default();
        for b in moves {
            index.insert(b);
        }
        index
    }

    pub(crate) fn insert(&mut self, b: &Binomial) {
        self.degrees.insert(b.lhs.degree());
        self.degrees.insert(b.rhs.degree());
        self.by_side.entry(b.lhs.0.clone()).or_default().push(b.rhs.0.clone());
        self.by_side.entry(b.rhs.0.clone()).or_default().push(b.lhs.0.clone());
    }

    /// Every monomial reachable from `m` by one move.
    fn neighbors<F: FnMut(Vec<u32>)>(&self, m: &YMonomial, mut visit: F) {
        for &k in self.degrees.iter().take_while(|&&k| k <= m.degree()) {
            multiset::for_each_submultiset(&m.0, k, |part| {
                if let Some(others) = self.by_side.get(part) {
                    for other in others {
                        visit(multiset::replace(&m.0, part, other));
                    }
                }
            });
        }
    }
}

/// Connected components of a fiber graph, each sorted, ordered by their
/// smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberComponents {
    pub components: Vec<Vec<YMonomial>>,
}

impl FiberComponents {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn component_of(&self, m: &YMonomial) -> Option<usize> {
        self.components.iter().position(|c| c.binary_search(m).is_ok())
    }
}

pub(crate) fn components_with_index(fiber: &[YMonomial], index: &MoveIndex) -> FiberComponents {
    let mut sorted = fiber.to_vec();
    sorted.sort();
    sorted.dedup();
    let position: BTreeMap<&[u32], usize> = sorted.iter().enumerate().map(|(k, m)| (m.0.as_slice(), k)).collect();
    let mut parent: Vec<usize> = (0..sorted.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, m) in sorted.iter().enumerate() {
        index.neighbors(m, |other| {
            if let Some(&j) = position.get(other.as_slice()) {
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        });
    }
    let mut groups: BTreeMap<usize, Vec<YMonomial>> = BTreeMap::new();
    for (k, m) in sorted.iter().enumerate() {
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(m.clone());
    }
    // roots are the smallest member, so map order is already by smallest element
    FiberComponents { components: groups.into_values().collect() }
}

/// Components of the graph on `fiber` whose edges apply one move to a
/// sub-multiset of an element (landing inside `fiber`).
pub fn fiber_components(fiber: &[YMonomial], moves: &MoveSet) -> FiberComponents {
    components_with_index(fiber, &MoveIndex::new(moves.iter()))
}

/// Components of every degree-`e` fiber with at least two elements.
pub fn degree_components(
    pres: &Presentation,
    moves: &MoveSet,
    e: usize,
    cap: usize,
) -> Result<BTreeMap<Monomial, FiberComponents>> {
    let index = MoveIndex::new(moves.iter());
    Ok(fibers_of_degree(pres, e, None, cap)?
        .into_iter()
        .filter(|(_, fiber)| fiber.len() > 1)
        .map(|(target, fiber)| {
            let parts = components_with_index(&fiber, &index);
            (target, parts)
        })
        .collect())
}

pub fn fiber_connected(fiber: &[YMonomial], moves: &MoveSet) -> bool {
    fiber_components(fiber, moves).is_connected()
}

/// Components of the full fiber of `target` in degree `e` under `moves`.
pub fn fiber_partition(
    pres: &Presentation,
    target: &Monomial,
    e: usize,
    moves: &MoveSet,
    cap: usize,
) -> Result<FiberComponents> {
    Ok(fiber_components(&fiber(pres, target, e, cap)?, moves))
}

/// Whether `a` and `b` are joined by `moves` inside their common fiber.
pub fn same_component(pres: &Presentation, moves: &MoveSet, a: &YMonomial, b: &YMonomial, cap: usize) -> Result<bool> {
    if a.degree() != b.degree() {
        return Ok(false);
    }
    let target = pres.image(a)?;
    if pres.image(b)? != target {
        return Ok(false);
    }
    let parts = fiber_partition(pres, &target, a.degree(), moves, cap)?;
    Ok(parts.component_of(a).is_some() && parts.component_of(a) == parts.component_of(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degree: usize,
    /// Number of monomials of this degree in the presentation variables.
    pub monomials: usize,
    pub fibers: usize,
    pub nontrivial_fibers: usize,
    pub largest_fiber: usize,
    pub disconnected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingFiber {
    pub degree: usize,
    pub target: Monomial,
    pub components: Vec<Vec<YMonomial>>,
}

/// Outcome of a truncated generation check; it certifies nothing past `d_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteReport {
    pub pass: bool,
    pub d_max: usize,
    pub moves: usize,
    pub linear_moves: usize,
    pub per_degree: Vec<DegreeStats>,
    pub first_failure: Option<FailingFiber>,
}

/// Checks that every fiber of degree `<= d_max` is connected under
/// `moves` together with the linear relations.
pub fn white_check(pres: &Presentation, moves: &MoveSet, d_max: usize, cap: usize) -> Result<WhiteReport> {
    if d_max < 2 {
        return Err(Error::PreconditionViolation("white check needs d_max >= 2".into()));
    }
    let linear = linear_relations(pres);
    let combined = moves.union(&linear);
    let index = MoveIndex::new(combined.iter());
    let mut per_degree = Vec::new();
    let mut first_failure = None;
    for e in 1..=d_max {
        let fibers = fibers_of_degree(pres, e, None, cap)?;
        let mut stats = DegreeStats {
            degree: e,
            monomials: fibers.values().map(Vec::len).sum(),
            fibers: fibers.len(),
            nontrivial_fibers: 0,
            largest_fiber: fibers.values().map(Vec::len).max().unwrap_or(0),
            disconnected: 0,
        };
        for (target, fiber) in &fibers {
            if fiber.len() < 2 {
                continue;
            }
            stats.nontrivial_fibers += 1;
            let parts = components_with_index(fiber, &index);
            if !parts.is_connected() {
                stats.disconnected += 1;
                if first_failure.is_none() {
                    first_failure =
                        Some(FailingFiber { degree: e, target: target.clone(), components: parts.components });
                }
            }
        }
        per_degree.push(stats);
    }
    Ok(WhiteReport {
        pass: first_failure.is_none(),
        d_max,
        moves: moves.len(),
        linear_moves: linear.len(),
        per_degree,
        first_failure,
    })
}

/// Degree sweep that adds, fiber by fiber, one binomial per extra component
/// (joining the smallest element of the first component to the smallest of
/// each other one).
pub(crate) fn sweep_generators(
    pres: &Presentation,
    max_degree: usize,
    caps: Option<BidegreeCaps>,
    cap: usize,
) -> Result<Vec<Binomial>> {
    let mut index = MoveIndex::default();
    let mut gens = Vec::new();
    for e in 1..=max_degree {
        let mut found = Vec::new();
        for fiber in fibers_of_degree(pres, e, caps, cap)?.values() {
            if fiber.len() < 2 {
                continue;
            }
            let parts = components_with_index(fiber, &index);
            let base = &parts.components[0][0];
            for comp in &parts.components[1..] {
                found.extend(Binomial::new(base.clone(), comp[0].clone()));
            }
        }
        found.sort();
        for b in &found {
            index.insert(b);
        }
        gens.extend(found);
    }
    Ok(gens)
}

/// A minimal generating set of the toric ideal up to degree `d_max`, sorted
/// by degree and then canonically.
pub fn minimal_generators(pres: &Presentation, d_max: usize, cap: usize) -> Result<Vec<Binomial>> {
    sweep_generators(pres, d_max, None, cap)
}

/// Binomials of degree `<= max_degree` whose factor matrices agree, after
/// permuting rows, outside a single column.
pub fn single_column_moves(pres: &Presentation, max_degree: usize, cap: usize) -> Result<MoveSet> {
    let s = pres.columns();
    if s == 0 {
        return Err(Error::PreconditionViolation("single-column moves need a product presentation".into()));
    }
    let mut set = MoveSet::new(MoveKind::SingleColumn);
    for e in 1..=max_degree {
        for fiber in fibers_of_degree(pres, e, None, cap)?.values() {
            if fiber.len() < 2 {
                continue;
            }
            for c in 0..s {
                let mut groups: BTreeMap<Vec<Vec<usize>>, Vec<&YMonomial>> = BTreeMap::new();
                for m in fiber {
                    let mut rows: Vec<Vec<usize>> = pres
                        .matrix(m)
                        .expect("product presentation")
                        .into_iter()
                        .map(|mut r| {
                            r.remove(c);
                            r
                        })
                        .collect();
                    rows.sort();
                    groups.entry(rows).or_default().push(m);
                }
                for group in groups.values() {
                    for (a, f) in group.iter().enumerate() {
                        for g in &group[a + 1..] {
                            set.moves.extend(Binomial::new((*f).clone(), (*g).clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(set)
}
