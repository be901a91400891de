//! Implicative structures and algebras over a finite complete lattice, and
//! the tripos they induce.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coded_tripos::{members, CodedTripos, Subset, TriposError, TriposTables};
use crate::finite_order::{FinHeyting, FinPoset, FinPreorder, OrderError};
use crate::report::{Coverage, LawEntry, LawReport, Witness};

/// Largest carrier for which the meet-distribution axiom is checked over all subsets.
pub const MAX_CARRIER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImpError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("carrier of size {0} exceeds the supported maximum")]
    CarrierTooLarge(usize),
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("elements {0} and {1} have no greatest lower bound")]
    NotALattice(usize, usize),
    #[error("order pair ({0}, {1}) mentions an element outside the carrier")]
    PairOutOfRange(usize, usize),
    #[error("implication table has wrong shape")]
    BadShape,
    #[error("implication entry ({0}, {1}) is not an element")]
    ImpOutOfRange(usize, usize),
    #[error("separator mask {0:#b} mentions elements outside the carrier")]
    SeparatorOutOfRange(u64),
    #[error("not a valid implicative algebra: law `{0}` fails")]
    NotValidAlgebra(String),
    #[error(transparent)]
    Tripos(#[from] TriposError),
}

/// Serialized form of an implicative algebra: the order is given by pairs
/// `(a, b)` meaning `a ≼ b`, closed reflexively and transitively on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraTables {
    pub size: usize,
    pub order: Vec<(usize, usize)>,
    pub imp: Vec<Vec<usize>>,
    pub separator: u64,
}

/// A complete lattice with an implication table. Meets are derived from the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpStructure {
    order: FinPoset,
    imp: Vec<usize>,
    meet2: Vec<usize>,
    top: usize,
    bot: usize,
}

fn glb(p: &FinPoset, a: usize, b: usize) -> Option<usize> {
    let n = p.size();
    let lower: Vec<usize> = (0..n).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
    lower
        .iter()
        .copied()
        .find(|&c| lower.iter().all(|&d| p.leq(d, c)))
}

impl ImpStructure {
    pub fn new(order: FinPoset, imp: Vec<Vec<usize>>) -> Result<Self, ImpError> {
        let n = order.size();
        if n == 0 {
            return Err(ImpError::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(ImpError::CarrierTooLarge(n));
        }
        if imp.len() != n || imp.iter().any(|r| r.len() != n) {
            return Err(ImpError::BadShape);
        }
        let flat: Vec<usize> = imp.into_iter().flatten().collect();
        if let Some(i) = flat.iter().position(|&v| v >= n) {
            return Err(ImpError::ImpOutOfRange(i / n, i % n));
        }
        let top = (0..n)
            .find(|&c| (0..n).all(|d| order.leq(d, c)))
            .ok_or(OrderError::NoBound("top"))?;
        let mut meet2 = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet2[a * n + b] = glb(&order, a, b).ok_or(ImpError::NotALattice(a, b))?;
            }
        }
        let bot = (0..n).fold(top, |acc, x| meet2[acc * n + x]);
        Ok(Self {
            order,
            imp: flat,
            meet2,
            top,
            bot,
        })
    }

    /// A complete Heyting algebra read as an implicative structure.
    pub fn from_heyting(h: &FinHeyting) -> Self {
        Self::new(h.poset().clone(), h.rows(FinHeyting::imp))
            .expect("Heyting algebras are complete lattices")
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size() + b]
    }

    #[inline]
    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet2[a * self.size() + b]
    }

    /// `⋀∅`.
    pub fn top(&self) -> usize {
        self.top
    }

    /// `⋀𝒜`.
    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn meet_of(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet2(acc, x))
    }

    pub fn meet(&self, s: Subset) -> usize {
        self.meet_of(members(s))
    }

    pub fn full_subset(&self) -> Subset {
        (1u64 << self.size()) - 1
    }

    /// The strict covering pairs of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn imp_rows(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n)
            .map(|a| (0..n).map(|b| self.imp(a, b)).collect())
            .collect()
    }
}

fn variance_witness(s: &ImpStructure) -> Option<Witness> {
    let n = s.size();
    for a in 0..n {
        for a2 in (0..n).filter(|&a2| s.leq(a2, a)) {
            for b in 0..n {
                for b2 in (0..n).filter(|&b2| s.leq(b, b2)) {
                    if !s.leq(s.imp(a, b), s.imp(a2, b2)) {
                        return Some(Witness::Variance { a, a2, b, b2 });
                    }
                }
            }
        }
    }
    None
}

fn distribution_witness(s: &ImpStructure) -> Option<Witness> {
    let n = s.size();
    for subset in 0..=s.full_subset() {
        let m = s.meet(subset);
        for a in 0..n {
            if s.imp(a, m) != s.meet_of(members(subset).map(|b| s.imp(a, b))) {
                return Some(Witness::MeetDistribution { a, subset });
            }
        }
    }
    None
}

/// Both structure axioms, exhaustively.
pub fn validate_structure(s: &ImpStructure) -> LawReport {
    let mut report = LawReport::new();
    report.push(LawEntry::from_search(
        "structure.variance",
        variance_witness(s),
        Coverage::Exhaustive,
    ));
    report.push(LawEntry::from_search(
        "structure.meet_distribution",
        distribution_witness(s),
        Coverage::Exhaustive,
    ));
    report
}

/// The values of `K`, `S` and `cc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Combinators {
    pub k: usize,
    pub s: usize,
    pub cc: usize,
}

pub fn combinators(st: &ImpStructure) -> Combinators {
    let n = st.size();
    let imp = |a, b| st.imp(a, b);
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let k = st.meet_of(pairs().map(|(a, b)| imp(a, imp(b, a))));
    let cc = st.meet_of(pairs().map(|(a, b)| imp(imp(imp(a, b), a), a)));
    let s =
        st.meet_of(pairs().flat_map(|(a, b)| {
            (0..n).map(move |c| imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c))))
        }));
    Combinators { k, s, cc }
}

/// An implicative structure with a separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpAlgebra {
    pub structure: ImpStructure,
    separator: Subset,
}

impl ImpAlgebra {
    pub fn new(structure: ImpStructure, separator: Subset) -> Result<Self, ImpError> {
        if separator & !structure.full_subset() != 0 {
            return Err(ImpError::SeparatorOutOfRange(separator));
        }
        Ok(Self {
            structure,
            separator,
        })
    }

    /// A finite Heyting algebra with separator `{⊤}`.
    pub fn heyting(h: &FinHeyting) -> Self {
        let s = ImpStructure::from_heyting(h);
        let sep = 1 << s.top();
        Self {
            structure: s,
            separator: sep,
        }
    }

    pub fn separator(&self) -> Subset {
        self.separator
    }

    #[inline]
    pub fn in_separator(&self, a: usize) -> bool {
        self.separator >> a & 1 == 1
    }

    pub fn combinators(&self) -> Combinators {
        combinators(&self.structure)
    }

    pub fn is_classical(&self) -> bool {
        self.in_separator(self.combinators().cc)
    }

    pub fn tables(&self) -> AlgebraTables {
        AlgebraTables {
            size: self.structure.size(),
            order: self.structure.covers(),
            imp: self.structure.imp_rows(),
            separator: self.separator,
        }
    }
}

impl TryFrom<AlgebraTables> for ImpAlgebra {
    type Error = ImpError;

    fn try_from(t: AlgebraTables) -> Result<Self, ImpError> {
        let n = t.size;
        if n == 0 {
            return Err(ImpError::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(ImpError::CarrierTooLarge(n));
        }
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(a, b) in &t.order {
            if a >= n || b >= n {
                return Err(ImpError::PairOutOfRange(a, b));
            }
            rel[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i * n + k] && rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
        let order = FinPoset::from_preorder(FinPreorder::new(n, rel)?)?;
        Self::new(ImpStructure::new(order, t.imp)?, t.separator)
    }
}

/// Upward closure, `K`/`S` membership and modus ponens; records classicality.
pub fn validate_separator(a: &ImpAlgebra) -> LawReport {
    let s = &a.structure;
    let n = s.size();
    let sep = |x| a.in_separator(x);
    let mut report = LawReport::new();

    let upward = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| sep(x) && s.leq(x, y) && !sep(y))
        .map(|(a, b)| Witness::UpwardClosure { a, b });
    report.push(LawEntry::from_search(
        "separator.upward_closed",
        upward,
        Coverage::Exhaustive,
    ));

    let c = a.combinators();
    for (id, name, value) in [("separator.k", "K", c.k), ("separator.s", "S", c.s)] {
        let found = (!sep(value)).then(|| Witness::Combinator {
            name: name.into(),
            value,
        });
        report.push(LawEntry::from_search(id, found, Coverage::Exhaustive));
    }

    let mp = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| sep(s.imp(x, y)) && sep(x) && !sep(y))
        .map(|(a, b)| Witness::ModusPonens { a, b });
    report.push(LawEntry::from_search(
        "separator.modus_ponens",
        mp,
        Coverage::Exhaustive,
    ));

    report.fact("k", c.k);
    report.fact("s", c.s);
    report.fact("cc", c.cc);
    report.fact("is_classical", sep(c.cc));
    report
}

/// Structure axioms followed by the separator conditions.
pub fn validate(a: &ImpAlgebra) -> LawReport {
    let mut report = validate_structure(&a.structure);
    report.extend(validate_separator(a));
    report
}

/// The tripos presented by the algebra: codes are carrier elements and
/// `Φ` is the separator. Conjunction, disjunction and existential codes use
/// the second-order encodings through `→` and `⋀`.
pub fn induced_tripos(a: &ImpAlgebra) -> Result<CodedTripos, ImpError> {
    let report = validate(a);
    if let Some(e) = report.failures().next() {
        return Err(ImpError::NotValidAlgebra(e.law_id.clone()));
    }
    let s = &a.structure;
    let n = s.size();
    let imp = |x, y| s.imp(x, y);
    let over_c = |f: &dyn Fn(usize) -> usize| s.meet_of((0..n).map(f));
    let and = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| over_c(&|c| imp(imp(x, imp(y, c)), c)))
                .collect()
        })
        .collect();
    let or = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| over_c(&|c| imp(imp(x, c), imp(imp(y, c), c))))
                .collect()
        })
        .collect();
    let subsets = 0..=s.full_subset();
    let tables = TriposTables {
        sigma_size: n,
        and,
        or,
        imp: s.imp_rows(),
        top: s.top(),
        bot: s.bot(),
        meet: subsets.clone().map(|m| s.meet(m)).collect(),
        join: subsets
            .map(|m| over_c(&|c| imp(s.meet_of(members(m).map(|xi| imp(xi, c))), c)))
            .collect(),
        filter: a.separator,
    };
    Ok(CodedTripos::try_from(tables)?)
}

/// Re-evaluates a structure or separator witness. `None` for other kinds.
pub fn replay(a: &ImpAlgebra, witness: &Witness) -> Option<bool> {
    let s = &a.structure;
    let n = s.size();
    let in_range = |xs: &[usize]| xs.iter().all(|&x| x < n).then_some(());
    let reproduced = match *witness {
        Witness::Variance { a: x, a2, b, b2 } => {
            in_range(&[x, a2, b, b2])?;
            s.leq(a2, x) && s.leq(b, b2) && !s.leq(s.imp(x, b), s.imp(a2, b2))
        }
        Witness::MeetDistribution { a: x, subset } => {
            in_range(&[x])?;
            if subset & !s.full_subset() != 0 {
                return None;
            }
            s.imp(x, s.meet(subset)) != s.meet_of(members(subset).map(|b| s.imp(x, b)))
        }
        Witness::UpwardClosure { a: x, b } => {
            in_range(&[x, b])?;
            a.in_separator(x) && s.leq(x, b) && !a.in_separator(b)
        }
        Witness::Combinator { ref name, value } => {
            let c = a.combinators();
            let expected = match name.as_str() {
                "K" => c.k,
                "S" => c.s,
                "cc" => c.cc,
                _ => return None,
            };
            expected == value && !a.in_separator(value)
        }
        Witness::ModusPonens { a: x, b } => {
            in_range(&[x, b])?;
            a.in_separator(s.imp(x, b)) && a.in_separator(x) && !a.in_separator(b)
        }
        _ => return None,
    };
    Some(reproduced)
}
