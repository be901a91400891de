//! Finite preorders, posets, Heyting algebras and adjoints of monotone maps.
//!
//! Elements are dense indices `0..size`; every structure is an explicit table
//! so that laws can be checked by exhaustive enumeration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(usize, usize),
    #[error("relation table has wrong shape: expected {expected} entries, got {actual}")]
    BadShape { expected: usize, actual: usize },
    #[error("elements {0} and {1} lack a {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("poset has no {0} element")]
    NoBound(&'static str),
    #[error("residuation fails at x={0}, a={1}, b={2}")]
    NotHeyting(usize, usize, usize),
    #[error("map is not monotone: {0} <= {1} but images are unordered")]
    NotMonotone(usize, usize),
    #[error("map entry {index} = {value} is out of range for codomain of size {cod_size}")]
    MapOutOfRange {
        index: usize,
        value: usize,
        cod_size: usize,
    },
    #[error("map sizes do not match the given orders")]
    SizeMismatch,
}

/// A finite map `0..dom_size -> 0..cod_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinMap {
    dom_size: usize,
    cod_size: usize,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(cod_size: usize, table: Vec<usize>) -> Result<Self, OrderError> {
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= cod_size) {
            return Err(OrderError::MapOutOfRange {
                index,
                value,
                cod_size,
            });
        }
        Ok(Self {
            dom_size: table.len(),
            cod_size,
            table,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dom_size: n,
            cod_size: n,
            table: (0..n).collect(),
        }
    }

    /// The unique map into a one-point set.
    pub fn terminal(n: usize) -> Self {
        Self {
            dom_size: n,
            cod_size: 1,
            table: vec![0; n],
        }
    }

    pub fn dom_size(&self) -> usize {
        self.dom_size
    }

    pub fn cod_size(&self) -> usize {
        self.cod_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self` after `first`, i.e. `x -> self(first(x))`.
    pub fn after(&self, first: &FinMap) -> Option<FinMap> {
        if first.cod_size != self.dom_size {
            return None;
        }
        Some(FinMap {
            dom_size: first.dom_size,
            cod_size: self.cod_size,
            table: first.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod_size];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod_size];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom_size == self.cod_size && self.is_injective()
    }

    /// Right inverse choosing the least preimage; `None` unless surjective.
    pub fn least_section(&self) -> Option<FinMap> {
        let mut section = vec![usize::MAX; self.cod_size];
        for (x, &y) in self.table.iter().enumerate().rev() {
            section[y] = x;
        }
        if section.contains(&usize::MAX) {
            return None;
        }
        Some(FinMap {
            dom_size: self.cod_size,
            cod_size: self.dom_size,
            table: section,
        })
    }

    /// Elements of the fiber over `y`, in increasing order.
    pub fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v == y)
            .map(|(x, _)| x)
    }

    /// Every map `0..dom -> 0..cod`, in lexicographic order of tables
    /// (last position varies fastest).
    pub fn all(dom: usize, cod: usize) -> AllMaps {
        AllMaps {
            cod,
            next: if cod == 0 && dom > 0 {
                None
            } else {
                Some(vec![0; dom])
            },
        }
    }
}

/// Iterator over all maps between two finite cardinals.
pub struct AllMaps {
    cod: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllMaps {
    type Item = FinMap;

    fn next(&mut self) -> Option<FinMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.cod {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(FinMap {
            dom_size: current.len(),
            cod_size: self.cod,
            table: current,
        })
    }
}

/// A reflexive, transitive relation on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPreorder {
    size: usize,
    rel: Vec<bool>,
}

impl FinPreorder {
    /// Validates reflexivity and transitivity of a row-major `size x size` table.
    pub fn new(size: usize, rel: Vec<bool>) -> Result<Self, OrderError> {
        if rel.len() != size * size {
            return Err(OrderError::BadShape {
                expected: size * size,
                actual: rel.len(),
            });
        }
        let p = Self { size, rel };
        p.check()?;
        Ok(p)
    }

    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        let rel = (0..size * size)
            .map(|k| leq(k / size.max(1), k % size.max(1)))
            .collect();
        Self::new(size, rel)
    }

    fn check(&self) -> Result<(), OrderError> {
        let n = self.size;
        if let Some(i) = (0..n).find(|&i| !self.leq(i, i)) {
            return Err(OrderError::NotReflexive(i));
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(OrderError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.size + j]
    }
}

/// A finite partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset(FinPreorder);

impl FinPoset {
    pub fn new(size: usize, rel: Vec<bool>) -> Result<Self, OrderError> {
        Self::from_preorder(FinPreorder::new(size, rel)?)
    }

    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        Self::from_preorder(FinPreorder::from_fn(size, leq)?)
    }

    pub fn from_preorder(p: FinPreorder) -> Result<Self, OrderError> {
        for i in 0..p.size {
            for j in (i + 1)..p.size {
                if p.leq(i, j) && p.leq(j, i) {
                    return Err(OrderError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Self(p))
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self(FinPreorder {
            size: n,
            rel: (0..n * n).map(|k| k / n <= k % n).collect(),
        })
    }

    /// `0 < a, b < 1` with `a = 1`, `b = 2`, top `3`.
    pub fn diamond() -> Self {
        Self::from_fn(4, |i, j| i == j || i == 0 || j == 3).expect("diamond is a poset")
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.0.leq(i, j)
    }

    pub fn as_preorder(&self) -> &FinPreorder {
        &self.0
    }

    pub fn is_monotone(&self, f: &FinMap, cod: &FinPoset) -> Result<(), OrderError> {
        if f.dom_size() != self.size() || f.cod_size() != cod.size() {
            return Err(OrderError::SizeMismatch);
        }
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.leq(i, j) && !cod.leq(f.apply(i), f.apply(j)) {
                    return Err(OrderError::NotMonotone(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Quotient of a preorder by mutual comparability.
///
/// Classes are numbered in order of their least member, so the projection
/// is deterministic.
pub fn reflect(p: &FinPreorder) -> (FinPoset, FinMap) {
    let n = p.size();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for (j, slot) in class.iter_mut().enumerate().skip(i) {
            if p.leq(i, j) && p.leq(j, i) {
                *slot = c;
            }
        }
    }
    let k = reps.len();
    let rel = (0..k * k)
        .map(|idx| p.leq(reps[idx / k], reps[idx % k]))
        .collect();
    let poset = FinPoset(FinPreorder { size: k, rel });
    (
        poset,
        FinMap {
            dom_size: n,
            cod_size: k,
            table: class,
        },
    )
}

/// A finite Heyting algebra with explicit operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinHeyting {
    poset: FinPoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    top: usize,
    bot: usize,
}

impl FinHeyting {
    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size() + b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    /// Meet of an arbitrary family (top for the empty family).
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of an arbitrary family (bottom for the empty family).
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// Row-major table of a binary operation as nested rows.
    pub fn rows(&self, op: fn(&Self, usize, usize) -> usize) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n)
            .map(|a| (0..n).map(|b| op(self, a, b)).collect())
            .collect()
    }
}

fn extremum(
    p: &FinPoset,
    candidates: impl Iterator<Item = usize> + Clone,
    greatest: bool,
) -> Option<usize> {
    candidates.clone().find(|&c| {
        candidates
            .clone()
            .all(|d| if greatest { p.leq(d, c) } else { p.leq(c, d) })
    })
}

/// Computes meets, joins and relative pseudo-complements of a finite poset.
pub fn lattice_structure(p: &FinPoset) -> Result<FinHeyting, OrderError> {
    let n = p.size();
    let top = extremum(p, 0..n, true).ok_or(OrderError::NoBound("top"))?;
    let bot = extremum(p, 0..n, false).ok_or(OrderError::NoBound("bottom"))?;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower = (0..n).filter(move |&x| p.leq(x, a) && p.leq(x, b));
            meet[a * n + b] =
                extremum(p, lower, true).ok_or(OrderError::NotALattice(a, b, "meet"))?;
            let upper = (0..n).filter(move |&x| p.leq(a, x) && p.leq(b, x));
            join[a * n + b] =
                extremum(p, upper, false).ok_or(OrderError::NotALattice(a, b, "join"))?;
        }
    }
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let meet = &meet;
            let admissible = (0..n).filter(move |&x| p.leq(meet[x * n + a], b));
            imp[a * n + b] = match extremum(p, admissible, true) {
                Some(x) => x,
                None => return Err(OrderError::NotHeyting(top, a, b)),
            };
        }
    }
    for x in 0..n {
        for a in 0..n {
            for b in 0..n {
                if p.leq(meet[x * n + a], b) != p.leq(x, imp[a * n + b]) {
                    return Err(OrderError::NotHeyting(x, a, b));
                }
            }
        }
    }
    Ok(FinHeyting {
        poset: p.clone(),
        meet,
        join,
        imp,
        top,
        bot,
    })
}

/// Left and right adjoints of a monotone `f: p -> q`.
///
/// The left adjoint `L: q -> p` satisfies `L(y) <= x` iff `y <= f(x)`; the
/// right adjoint `R: q -> p` satisfies `x <= R(y)` iff `f(x) <= y`.
pub fn monotone_adjoints(
    f: &FinMap,
    p: &FinPoset,
    q: &FinPoset,
) -> Result<(Option<FinMap>, Option<FinMap>), OrderError> {
    p.is_monotone(f, q)?;
    let m = q.size();
    let left: Option<Vec<usize>> = (0..m)
        .map(|y| {
            extremum(
                p,
                (0..p.size()).filter(move |&x| q.leq(y, f.apply(x))),
                false,
            )
        })
        .collect();
    let right: Option<Vec<usize>> = (0..m)
        .map(|y| {
            extremum(
                p,
                (0..p.size()).filter(move |&x| q.leq(f.apply(x), y)),
                true,
            )
        })
        .collect();
    let finish = |table: Option<Vec<usize>>, is_left: bool| -> Option<FinMap> {
        let g = FinMap {
            dom_size: m,
            cod_size: p.size(),
            table: table?,
        };
        q.is_monotone(&g, p).ok()?;
        let ok = (0..m).all(|y| {
            (0..p.size()).all(|x| {
                if is_left {
                    p.leq(g.apply(y), x) == q.leq(y, f.apply(x))
                } else {
                    p.leq(x, g.apply(y)) == q.leq(f.apply(x), y)
                }
            })
        });
        ok.then_some(g)
    };
    Ok((finish(left, true), finish(right, false)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflect_total_collapse() {
        let p = FinPreorder::from_fn(2, |_, _| true).unwrap();
        let (q, proj) = reflect(&p);
        assert_eq!(q.size(), 1);
        assert_eq!(proj.table(), &[0, 0]);
    }

    #[test]
    fn reflect_chain_is_identity() {
        let p = FinPoset::chain(2);
        let (q, proj) = reflect(p.as_preorder());
        assert_eq!(q, p);
        assert_eq!(proj, FinMap::identity(2));
    }

    #[test]
    fn reflect_three_into_two_chain() {
        let p = FinPreorder::from_fn(3, |i, j| i == j || j == 2 || (i < 2 && j < 2)).unwrap();
        let (q, proj) = reflect(&p);
        // oracle: classes are the mutual-relation blocks
        let blocks: Vec<usize> = (0..3)
            .map(|i| (0..3).find(|&j| p.leq(i, j) && p.leq(j, i)).unwrap())
            .collect();
        assert_eq!(blocks, vec![0, 0, 2]);
        assert_eq!(proj.table(), &[0, 0, 1]);
        assert_eq!(q, FinPoset::chain(2));
    }

    #[test]
    fn preorder_errors_carry_witnesses() {
        assert_eq!(
            FinPreorder::from_fn(2, |i, j| i != j).unwrap_err(),
            OrderError::NotReflexive(0)
        );
        let rel = |i: usize, j: usize| i == j || (i, j) == (0, 1) || (i, j) == (1, 2);
        assert_eq!(
            FinPreorder::from_fn(3, rel).unwrap_err(),
            OrderError::NotTransitive(0, 1, 2)
        );
    }

    #[test]
    fn two_chain_heyting() {
        let h = lattice_structure(&FinPoset::chain(2)).unwrap();
        assert_eq!(h.rows(FinHeyting::imp), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(h.rows(FinHeyting::meet), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(h.rows(FinHeyting::join), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!((h.top(), h.bot()), (1, 0));
    }

    #[test]
    fn diamond_is_boolean() {
        let h = lattice_structure(&FinPoset::diamond()).unwrap();
        assert_eq!(h.imp(1, 0), 2);
        assert_eq!(h.imp(2, 0), 1);
        assert_eq!(h.meet(1, 2), 0);
        assert_eq!(h.join(1, 2), 3);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = FinPoset::from_fn(2, |i, j| i == j).unwrap();
        assert!(matches!(lattice_structure(&p), Err(OrderError::NoBound(_))));
    }

    #[test]
    fn adjoints_of_identity() {
        let p = FinPoset::diamond();
        let (l, r) = monotone_adjoints(&FinMap::identity(4), &p, &p).unwrap();
        assert_eq!(l, Some(FinMap::identity(4)));
        assert_eq!(r, Some(FinMap::identity(4)));
    }

    #[test]
    fn adjoints_of_chain_inclusion() {
        let f = FinMap::new(3, vec![0, 2]).unwrap();
        let (l, r) = monotone_adjoints(&f, &FinPoset::chain(2), &FinPoset::chain(3)).unwrap();
        assert_eq!(l.unwrap().table(), &[0, 1, 1]);
        assert_eq!(r.unwrap().table(), &[0, 0, 1]);
    }

    #[test]
    fn adjoints_into_point() {
        let (l, r) = monotone_adjoints(
            &FinMap::terminal(2),
            &FinPoset::chain(2),
            &FinPoset::chain(1),
        )
        .unwrap();
        assert_eq!(l.unwrap().table(), &[0]);
        assert_eq!(r.unwrap().table(), &[1]);
    }

    #[test]
    fn non_monotone_is_rejected() {
        let f = FinMap::new(2, vec![1, 0]).unwrap();
        let c = FinPoset::chain(2);
        assert_eq!(
            monotone_adjoints(&f, &c, &c).unwrap_err(),
            OrderError::NotMonotone(0, 1)
        );
    }

    #[test]
    fn missing_adjoint_is_reported() {
        // diagonal 2-chain -> 2x2 square has no left adjoint on the antichain part
        let square = FinPoset::from_fn(4, |i, j| (i & j) == i).unwrap();
        let antichain_pair = FinPoset::from_fn(2, |i, j| i == j).unwrap();
        let f = FinMap::new(4, vec![1, 2]).unwrap();
        let (l, r) = monotone_adjoints(&f, &antichain_pair, &square).unwrap();
        assert!(l.is_none());
        assert!(r.is_none());
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(FinMap::all(2, 3).count(), 9);
        assert_eq!(FinMap::all(0, 0).count(), 1);
        assert_eq!(FinMap::all(2, 0).count(), 0);
        assert_eq!(FinMap::all(0, 2).count(), 1);
    }

    #[test]
    fn least_section_picks_first_preimage() {
        let h = FinMap::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(h.least_section().unwrap().table(), &[0, 1]);
        assert!(FinMap::new(2, vec![1]).unwrap().least_section().is_none());
    }
}
