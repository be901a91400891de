//! Triposes presented by codes: a proposition set `Σ = 0..sigma_size` with
//! connective tables, quantifier tables indexed by subsets of `Σ`, and a
//! filter. Each `P X` is recovered as the poset reflection of `Σ^X` under
//! the entailment induced by the filter.
//!
//! The tables carry no algebraic laws; [`crate::law_suite`] checks them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_order::{
    lattice_structure, reflect, FinHeyting, FinMap, FinPreorder, OrderError,
};

/// A subset of `Σ` as a bitmask: bit `i` set iff code `i` is a member.
pub type Subset = u64;

/// Largest proposition set whose quantifier tables we are willing to allocate.
pub const MAX_SIGMA: usize = 20;

/// Largest code space `|Σ|^|X|` that [`px`] will reflect.
pub const MAX_PX_CODES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriposError {
    #[error("context mismatch: expected size {expected}, got {actual}")]
    CtxMismatch { expected: usize, actual: usize },
    #[error("|Σ| = {0} exceeds the supported maximum")]
    SigmaTooLarge(usize),
    #[error("empty proposition set")]
    EmptySigma,
    #[error("table `{table}` has wrong shape: expected {expected} entries, got {actual}")]
    BadShape {
        table: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("table `{table}` entry {index} = {value} is not a code")]
    OutOfRange {
        table: &'static str,
        index: usize,
        value: usize,
    },
    #[error("filter mask {0:#b} mentions codes outside Σ")]
    FilterOutOfRange(u64),
    #[error("recoding map is not surjective")]
    NotSurjective,
    #[error("recoding map targets a set of size {actual}, expected |Σ| = {expected}")]
    RecodeSizeMismatch { expected: usize, actual: usize },
}

/// The connective and unit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
    Imp,
    Top,
    Bot,
}

/// Raw tables of a presentation in row-major nested form.
///
/// This is the payload of the tripos fixture format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriposTables {
    pub sigma_size: usize,
    pub and: Vec<Vec<usize>>,
    pub or: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub top: usize,
    pub bot: usize,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    pub filter: u64,
}

/// A proposition set with connective codes, quantifier codes and a filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodedTripos {
    sigma_size: usize,
    and_code: Vec<usize>,
    or_code: Vec<usize>,
    imp_code: Vec<usize>,
    top_code: usize,
    bot_code: usize,
    meet_code: Vec<usize>,
    join_code: Vec<usize>,
    filter: Subset,
}

fn flatten(table: &'static str, rows: &[Vec<usize>], n: usize) -> Result<Vec<usize>, TriposError> {
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(TriposError::BadShape {
            table,
            expected: n * n,
            actual: flat.len(),
        });
    }
    check_range(table, &flat, n)?;
    Ok(flat)
}

fn check_range(table: &'static str, values: &[usize], n: usize) -> Result<(), TriposError> {
    match values.iter().enumerate().find(|(_, &v)| v >= n) {
        Some((index, &value)) => Err(TriposError::OutOfRange {
            table,
            index,
            value,
        }),
        None => Ok(()),
    }
}

fn unflatten(flat: &[usize], n: usize) -> Vec<Vec<usize>> {
    flat.chunks(n.max(1)).map(<[usize]>::to_vec).collect()
}

#[inline]
fn full_mask(n: usize) -> Subset {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the members of a subset in increasing order.
pub fn members(mut s: Subset) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let i = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(i)
    })
}

/// Every superset of `s` inside `full`, starting with `s` itself.
pub fn supersets(s: Subset, full: Subset) -> impl Iterator<Item = Subset> {
    let free = full & !s;
    let mut sub = Some(free);
    std::iter::from_fn(move || {
        let current = sub?;
        sub = if current == 0 {
            None
        } else {
            Some((current - 1) & free)
        };
        Some(s | current)
    })
}

impl TryFrom<TriposTables> for CodedTripos {
    type Error = TriposError;

    fn try_from(t: TriposTables) -> Result<Self, TriposError> {
        let n = t.sigma_size;
        if n == 0 {
            return Err(TriposError::EmptySigma);
        }
        if n > MAX_SIGMA {
            return Err(TriposError::SigmaTooLarge(n));
        }
        let subsets = 1usize << n;
        for (table, v) in [("meet", &t.meet), ("join", &t.join)] {
            if v.len() != subsets {
                return Err(TriposError::BadShape {
                    table,
                    expected: subsets,
                    actual: v.len(),
                });
            }
            check_range(table, v, n)?;
        }
        check_range("top", &[t.top], n)?;
        check_range("bot", &[t.bot], n)?;
        if t.filter & !full_mask(n) != 0 {
            return Err(TriposError::FilterOutOfRange(t.filter));
        }
        Ok(Self {
            sigma_size: n,
            and_code: flatten("and", &t.and, n)?,
            or_code: flatten("or", &t.or, n)?,
            imp_code: flatten("imp", &t.imp, n)?,
            top_code: t.top,
            bot_code: t.bot,
            meet_code: t.meet,
            join_code: t.join,
            filter: t.filter,
        })
    }
}

impl CodedTripos {
    pub fn tables(&self) -> TriposTables {
        let n = self.sigma_size;
        TriposTables {
            sigma_size: n,
            and: unflatten(&self.and_code, n),
            or: unflatten(&self.or_code, n),
            imp: unflatten(&self.imp_code, n),
            top: self.top_code,
            bot: self.bot_code,
            meet: self.meet_code.clone(),
            join: self.join_code.clone(),
            filter: self.filter,
        }
    }

    /// Edits the raw tables and revalidates.
    pub fn mutate(&self, edit: impl FnOnce(&mut TriposTables)) -> Result<Self, TriposError> {
        let mut tables = self.tables();
        edit(&mut tables);
        Self::try_from(tables)
    }

    pub fn sigma_size(&self) -> usize {
        self.sigma_size
    }

    pub fn full_subset(&self) -> Subset {
        full_mask(self.sigma_size)
    }

    #[inline]
    pub fn and(&self, a: usize, b: usize) -> usize {
        self.and_code[a * self.sigma_size + b]
    }

    #[inline]
    pub fn or(&self, a: usize, b: usize) -> usize {
        self.or_code[a * self.sigma_size + b]
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp_code[a * self.sigma_size + b]
    }

    pub fn top(&self) -> usize {
        self.top_code
    }

    pub fn bot(&self) -> usize {
        self.bot_code
    }

    #[inline]
    pub fn meet(&self, s: Subset) -> usize {
        self.meet_code[s as usize]
    }

    #[inline]
    pub fn join(&self, s: Subset) -> usize {
        self.join_code[s as usize]
    }

    /// `⋀̇` of the image set of a family of codes.
    #[inline]
    pub fn meet_of(&self, codes: impl IntoIterator<Item = usize>) -> usize {
        self.meet(image_set(codes))
    }

    #[inline]
    pub fn join_of(&self, codes: impl IntoIterator<Item = usize>) -> usize {
        self.join(image_set(codes))
    }

    pub fn filter(&self) -> Subset {
        self.filter
    }

    #[inline]
    pub fn in_filter(&self, code: usize) -> bool {
        self.filter >> code & 1 == 1
    }

    pub fn connective(&self, op: Connective, a: usize, b: usize) -> usize {
        match op {
            Connective::And => self.and(a, b),
            Connective::Or => self.or(a, b),
            Connective::Imp => self.imp(a, b),
            Connective::Top => self.top_code,
            Connective::Bot => self.bot_code,
        }
    }

    /// Pointwise application of a connective to two codes over one context.
    pub fn apply(
        &self,
        op: Connective,
        sigma: &PredCode,
        tau: &PredCode,
    ) -> Result<PredCode, TriposError> {
        same_ctx(sigma, tau)?;
        Ok(PredCode(
            sigma
                .0
                .iter()
                .zip(&tau.0)
                .map(|(&a, &b)| self.connective(op, a, b))
                .collect(),
        ))
    }

    pub fn constant(&self, code: usize, ctx_size: usize) -> PredCode {
        PredCode(vec![code; ctx_size])
    }

    /// Every code over a context of the given size, in index order.
    pub fn all_codes(&self, ctx_size: usize) -> impl Iterator<Item = PredCode> {
        FinMap::all(ctx_size, self.sigma_size).map(|m| PredCode(m.table().to_vec()))
    }

    pub fn code_count(&self, ctx_size: usize) -> Option<usize> {
        self.sigma_size.checked_pow(ctx_size as u32)
    }
}

/// Bitmask of the values produced by an iterator of codes.
#[inline]
pub fn image_set(codes: impl IntoIterator<Item = usize>) -> Subset {
    codes.into_iter().fold(0, |acc, c| acc | 1 << c)
}

/// A propositional function `σ ∈ Σ^X` over a finite context `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PredCode(pub Vec<usize>);

impl PredCode {
    pub fn ctx_size(&self) -> usize {
        self.0.len()
    }

    pub fn codes(&self) -> &[usize] {
        &self.0
    }

    /// Position of this code in [`CodedTripos::all_codes`] order.
    pub fn index(&self, sigma_size: usize) -> usize {
        self.0.iter().fold(0, |acc, &c| acc * sigma_size + c)
    }

    pub fn check_range(&self, t: &CodedTripos) -> Result<(), TriposError> {
        check_range("code", &self.0, t.sigma_size)
    }
}

impl From<Vec<usize>> for PredCode {
    fn from(v: Vec<usize>) -> Self {
        PredCode(v)
    }
}

fn same_ctx(a: &PredCode, b: &PredCode) -> Result<(), TriposError> {
    if a.ctx_size() != b.ctx_size() {
        return Err(TriposError::CtxMismatch {
            expected: a.ctx_size(),
            actual: b.ctx_size(),
        });
    }
    Ok(())
}

fn ctx_is(code: &PredCode, size: usize) -> Result<(), TriposError> {
    if code.ctx_size() != size {
        return Err(TriposError::CtxMismatch {
            expected: size,
            actual: code.ctx_size(),
        });
    }
    Ok(())
}

/// `σ ⊢ τ` iff `⋀̇{σ_x →̇ τ_x : x ∈ X} ∈ Φ`.
pub fn entails(t: &CodedTripos, sigma: &PredCode, tau: &PredCode) -> Result<bool, TriposError> {
    same_ctx(sigma, tau)?;
    Ok(entails_unchecked(t, sigma.codes(), tau.codes()))
}

#[inline]
pub(crate) fn entails_unchecked(t: &CodedTripos, sigma: &[usize], tau: &[usize]) -> bool {
    t.in_filter(t.meet_of(sigma.iter().zip(tau).map(|(&a, &b)| t.imp(a, b))))
}

/// Mutual entailment.
pub fn equivalent(t: &CodedTripos, sigma: &PredCode, tau: &PredCode) -> Result<bool, TriposError> {
    Ok(entails(t, sigma, tau)? && entails(t, tau, sigma)?)
}

/// Substitution along `f`: precomposition `τ ∘ f`.
pub fn subst(f: &FinMap, tau: &PredCode) -> Result<PredCode, TriposError> {
    ctx_is(tau, f.cod_size())?;
    Ok(PredCode(f.table().iter().map(|&x| tau.0[x]).collect()))
}

fn quantify(
    f: &FinMap,
    sigma: &PredCode,
    table: impl Fn(Subset) -> usize,
) -> Result<PredCode, TriposError> {
    ctx_is(sigma, f.dom_size())?;
    let mut fibers = vec![0 as Subset; f.cod_size()];
    for (x, &y) in f.table().iter().enumerate() {
        fibers[y] |= 1 << sigma.0[x];
    }
    Ok(PredCode(fibers.into_iter().map(table).collect()))
}

/// `y ↦ ⋁̇{σ_x : f(x) = y}`.
pub fn exists_along(
    t: &CodedTripos,
    f: &FinMap,
    sigma: &PredCode,
) -> Result<PredCode, TriposError> {
    quantify(f, sigma, |s| t.join(s))
}

/// `y ↦ ⋀̇{σ_x : f(x) = y}`.
pub fn forall_along(
    t: &CodedTripos,
    f: &FinMap,
    sigma: &PredCode,
) -> Result<PredCode, TriposError> {
    quantify(f, sigma, |s| t.meet(s))
}

/// Transports a presentation along a surjection `h: Σ′ → Σ`, using the
/// least-index section of `h` to map results back into `Σ′`.
pub fn recode(t: &CodedTripos, h: &FinMap) -> Result<CodedTripos, TriposError> {
    if h.cod_size() != t.sigma_size {
        return Err(TriposError::RecodeSizeMismatch {
            expected: t.sigma_size,
            actual: h.cod_size(),
        });
    }
    let back = h.least_section().ok_or(TriposError::NotSurjective)?;
    let m = h.dom_size();
    if m > MAX_SIGMA {
        return Err(TriposError::SigmaTooLarge(m));
    }
    let lift = |code: usize| back.apply(code);
    let binary = |op: fn(&CodedTripos, usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| lift(op(t, h.apply(a), h.apply(b))))
                    .collect()
            })
            .collect()
    };
    let push = |s: Subset| image_set(members(s).map(|x| h.apply(x)));
    let tables = TriposTables {
        sigma_size: m,
        and: binary(CodedTripos::and),
        or: binary(CodedTripos::or),
        imp: binary(CodedTripos::imp),
        top: lift(t.top()),
        bot: lift(t.bot()),
        meet: (0..1u64 << m).map(|s| lift(t.meet(push(s)))).collect(),
        join: (0..1u64 << m).map(|s| lift(t.join(push(s)))).collect(),
        filter: image_set((0..m).filter(|&x| t.in_filter(h.apply(x)))),
    };
    CodedTripos::try_from(tables)
}

/// The forcing presentation of a finite Heyting algebra: codes are the
/// elements themselves and the filter is `{⊤}`.
pub fn forcing_presentation(h: &FinHeyting) -> CodedTripos {
    let n = h.size();
    let subsets = 0..1u64 << n;
    let tables = TriposTables {
        sigma_size: n,
        and: h.rows(FinHeyting::meet),
        or: h.rows(FinHeyting::join),
        imp: h.rows(FinHeyting::imp),
        top: h.top(),
        bot: h.bot(),
        meet: subsets.clone().map(|s| h.meet_all(members(s))).collect(),
        join: subsets.map(|s| h.join_all(members(s))).collect(),
        filter: 1 << h.top(),
    };
    CodedTripos::try_from(tables).expect("forcing presentation tables are in range")
}

/// Forcing presentation of the 2-chain `0 < 1`.
pub fn ch2() -> CodedTripos {
    forcing_presentation(
        &lattice_structure(&crate::finite_order::FinPoset::chain(2)).expect("chain"),
    )
}

/// Forcing presentation of the 3-chain `0 < m < 1`, with `m` encoded as 1 and the top as 2.
pub fn ch3() -> CodedTripos {
    forcing_presentation(
        &lattice_structure(&crate::finite_order::FinPoset::chain(3)).expect("chain"),
    )
}

/// Forcing presentation of the four-element Boolean algebra `{0, a, b, 1}`
/// with `a = 1`, `b = 2`, top `3`.
pub fn b4() -> CodedTripos {
    forcing_presentation(
        &lattice_structure(&crate::finite_order::FinPoset::diamond()).expect("diamond"),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PxError {
    #[error(transparent)]
    Tripos(#[from] TriposError),
    #[error("code space |Σ|^{ctx_size} is too large to reflect")]
    CodeSpaceTooLarge { ctx_size: usize },
    #[error("entailment is not reflexive at {0:?}")]
    NotReflexive(PredCode),
    #[error("entailment is not transitive: {0:?} ⊢ {1:?} ⊢ {2:?}")]
    NotTransitive(PredCode, PredCode, PredCode),
    #[error("quotient is not a Heyting algebra: {0}")]
    NotHeyting(String),
    #[error("{op:?} code disagrees with the quotient operation at {sigma:?}, {tau:?}")]
    CodeOpMismatch {
        op: Connective,
        sigma: PredCode,
        tau: PredCode,
    },
}

/// `P X` computed from a presentation.
#[derive(Debug, Clone)]
pub struct PXResult {
    pub algebra: FinHeyting,
    pub representatives: Vec<PredCode>,
    sigma_size: usize,
    ctx_size: usize,
    classes: FinMap,
}

impl PXResult {
    pub fn ctx_size(&self) -> usize {
        self.ctx_size
    }

    /// Class index of a code.
    pub fn classify(&self, sigma: &PredCode) -> Result<usize, TriposError> {
        ctx_is(sigma, self.ctx_size)?;
        check_range("code", sigma.codes(), self.sigma_size)?;
        Ok(self.classes.apply(sigma.index(self.sigma_size)))
    }

    /// The quotient operation corresponding to a connective.
    pub fn operation(&self, op: Connective, a: usize, b: usize) -> usize {
        let h = &self.algebra;
        match op {
            Connective::And => h.meet(a, b),
            Connective::Or => h.join(a, b),
            Connective::Imp => h.imp(a, b),
            Connective::Top => h.top(),
            Connective::Bot => h.bot(),
        }
    }

    /// First pair of codes at which `op` fails to descend to the quotient.
    pub fn op_mismatch(&self, t: &CodedTripos, op: Connective) -> Option<(PredCode, PredCode)> {
        let codes: Vec<PredCode> = t.all_codes(self.ctx_size).collect();
        let binary = !matches!(op, Connective::Top | Connective::Bot);
        let seconds = if binary {
            &codes[..]
        } else {
            &codes[..1.min(codes.len())]
        };
        for sigma in &codes {
            for tau in seconds {
                let combined = t.apply(op, sigma, tau).expect("same context");
                let lhs = self.classes.apply(combined.index(t.sigma_size()));
                let rhs = self.operation(
                    op,
                    self.classes.apply(sigma.index(t.sigma_size())),
                    self.classes.apply(tau.index(t.sigma_size())),
                );
                if lhs != rhs {
                    return Some((sigma.clone(), tau.clone()));
                }
            }
            if !binary {
                break;
            }
        }
        None
    }
}

pub const CONNECTIVES: [Connective; 5] = [
    Connective::And,
    Connective::Or,
    Connective::Imp,
    Connective::Top,
    Connective::Bot,
];

/// Reflects the entailment preorder on `Σ^X` and computes its Heyting
/// structure, without checking that the connective codes descend.
pub fn px_quotient(t: &CodedTripos, ctx_size: usize) -> Result<PXResult, PxError> {
    let count = t
        .code_count(ctx_size)
        .filter(|&c| c <= MAX_PX_CODES)
        .ok_or(PxError::CodeSpaceTooLarge { ctx_size })?;
    let codes: Vec<PredCode> = t.all_codes(ctx_size).collect();
    debug_assert_eq!(codes.len(), count);
    let rel: Vec<bool> = (0..count * count)
        .map(|k| entails_unchecked(t, codes[k / count].codes(), codes[k % count].codes()))
        .collect();
    let pre = FinPreorder::new(count, rel).map_err(|e| match e {
        OrderError::NotReflexive(i) => PxError::NotReflexive(codes[i].clone()),
        OrderError::NotTransitive(i, j, k) => {
            PxError::NotTransitive(codes[i].clone(), codes[j].clone(), codes[k].clone())
        }
        other => PxError::NotHeyting(other.to_string()),
    })?;
    let (poset, classes) = reflect(&pre);
    let mut representatives = vec![None; poset.size()];
    for (i, &c) in classes.table().iter().enumerate() {
        representatives[c].get_or_insert_with(|| codes[i].clone());
    }
    let representatives: Vec<PredCode> = representatives
        .into_iter()
        .map(|r| r.expect("surjective"))
        .collect();
    let algebra = lattice_structure(&poset).map_err(|e| {
        let describe = |i: usize| format!("{:?}", representatives[i].codes());
        PxError::NotHeyting(match e {
            OrderError::NotALattice(a, b, what) => {
                format!("classes {} and {} lack a {what}", describe(a), describe(b))
            }
            OrderError::NotHeyting(x, a, b) => {
                format!(
                    "residuation fails at {}, {}, {}",
                    describe(x),
                    describe(a),
                    describe(b)
                )
            }
            other => other.to_string(),
        })
    })?;
    Ok(PXResult {
        algebra,
        representatives,
        sigma_size: t.sigma_size(),
        ctx_size,
        classes,
    })
}

/// `P X` with the connective and unit codes verified against the quotient.
pub fn px(t: &CodedTripos, ctx_size: usize) -> Result<PXResult, PxError> {
    let result = px_quotient(t, ctx_size)?;
    for op in CONNECTIVES {
        if let Some((sigma, tau)) = result.op_mismatch(t, op) {
            return Err(PxError::CodeOpMismatch { op, sigma, tau });
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(v: &[usize]) -> PredCode {
        PredCode(v.to_vec())
    }

    #[test]
    fn ch2_is_bit_exact() {
        let t = ch2().tables();
        assert_eq!(t.sigma_size, 2);
        assert_eq!(t.imp, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(t.and, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(t.or, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!((t.top, t.bot), (1, 0));
        assert_eq!(t.meet, vec![1, 0, 1, 0]);
        assert_eq!(t.join, vec![0, 0, 1, 1]);
        assert_eq!(t.filter, 0b10);
    }

    #[test]
    fn entails_examples() {
        let t = ch2();
        assert!(entails(&t, &code(&[0, 1]), &code(&[1, 1])).unwrap());
        assert!(!entails(&t, &code(&[1, 0]), &code(&[0, 0])).unwrap());
        assert!(entails(&t, &code(&[]), &code(&[])).unwrap());
        let broken = t.mutate(|tb| tb.meet[0] = 0).unwrap();
        assert!(!entails(&broken, &code(&[]), &code(&[])).unwrap());
        assert_eq!(
            entails(&t, &code(&[0]), &code(&[0, 1])),
            Err(TriposError::CtxMismatch {
                expected: 1,
                actual: 2
            })
        );
    }

    #[test]
    fn px_examples() {
        let t = ch2();
        let p1 = px(&t, 1).unwrap();
        assert_eq!(p1.algebra.size(), 2);
        assert!(p1.algebra.leq(
            p1.classify(&code(&[0])).unwrap(),
            p1.classify(&code(&[1])).unwrap()
        ));
        let p0 = px(&t, 0).unwrap();
        assert_eq!(p0.algebra.size(), 1);
        assert_eq!(p0.algebra.top(), p0.algebra.bot());
        let bad = t.mutate(|tb| tb.filter = 0b01).unwrap();
        assert_eq!(px(&bad, 1).unwrap_err(), PxError::NotReflexive(code(&[0])));
    }

    #[test]
    fn subst_examples() {
        let tau = code(&[1, 0]);
        assert_eq!(subst(&FinMap::identity(2), &tau).unwrap(), tau);
        assert_eq!(
            subst(&FinMap::terminal(2), &code(&[1])).unwrap(),
            code(&[1, 1])
        );
        let f = FinMap::new(2, vec![1]).unwrap();
        assert_eq!(subst(&f, &code(&[0, 1])).unwrap(), code(&[1]));
        assert!(matches!(
            subst(&f, &code(&[0])),
            Err(TriposError::CtxMismatch { .. })
        ));
    }

    #[test]
    fn quantifier_examples() {
        let t = ch2();
        let sigma = code(&[0, 1]);
        let collapse = FinMap::terminal(2);
        assert_eq!(exists_along(&t, &collapse, &sigma).unwrap(), code(&[1]));
        assert_eq!(forall_along(&t, &collapse, &sigma).unwrap(), code(&[0]));
        let id = FinMap::identity(2);
        assert_eq!(exists_along(&t, &id, &sigma).unwrap(), sigma);
        assert_eq!(forall_along(&t, &id, &sigma).unwrap(), sigma);
        let empty = FinMap::new(1, vec![]).unwrap();
        assert_eq!(exists_along(&t, &empty, &code(&[])).unwrap(), code(&[0]));
        assert_eq!(forall_along(&t, &empty, &code(&[])).unwrap(), code(&[1]));
    }

    #[test]
    fn recode_examples() {
        let t = ch2();
        assert_eq!(recode(&t, &FinMap::identity(2)).unwrap(), t);
        let h = FinMap::new(2, vec![0, 1, 1]).unwrap();
        let r = recode(&t, &h).unwrap();
        assert_eq!(r.sigma_size(), 3);
        assert_eq!(r.filter(), 0b110);
        for n in 0..=2 {
            for a in r.all_codes(n) {
                for b in r.all_codes(n) {
                    let pushed = |c: &PredCode| {
                        subst(&FinMap::new(3, c.0.clone()).unwrap(), &code(&[0, 1, 1])).unwrap()
                    };
                    assert_eq!(
                        entails(&r, &a, &b).unwrap(),
                        entails(&t, &pushed(&a), &pushed(&b)).unwrap()
                    );
                }
            }
        }
        let not_onto = FinMap::new(2, vec![0]).unwrap();
        assert_eq!(
            recode(&t, &not_onto).unwrap_err(),
            TriposError::NotSurjective
        );
    }

    #[test]
    fn supersets_enumeration() {
        let sups: Vec<Subset> = supersets(0b01, 0b111).collect();
        assert_eq!(sups, vec![0b111, 0b101, 0b011, 0b001]);
        assert_eq!(supersets(0b11, 0b11).collect::<Vec<_>>(), vec![0b11]);
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            ch2().mutate(|t| t.imp[0][0] = 2),
            Err(TriposError::OutOfRange { table: "imp", .. })
        ));
        assert!(matches!(
            ch2().mutate(|t| t.meet.pop().map(drop).unwrap()),
            Err(TriposError::BadShape { .. })
        ));
        assert!(matches!(
            ch2().mutate(|t| t.filter = 0b100),
            Err(TriposError::FilterOutOfRange(_))
        ));
    }
}
