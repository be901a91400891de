//! The implicative algebra extracted from a coded tripos.
//!
//! Elements of the extracted algebra are upward-closed sets of atoms, which
//! are infinite in general. They are represented here by the set of codes
//! their atoms convert to, a subset of `Σ`. Implication and meets only depend
//! on that image, so the quotient is exact for every tripos-level judgment.
//! [`explicit_upset_imp`] computes on actual atom sets and serves as the oracle.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coded_tripos::{
    entails, entails_unchecked, forall_along, image_set, members, px, supersets, CodedTripos,
    PXResult, PredCode, Subset, TriposError,
};
use crate::finite_order::{FinMap, FinPoset};
use crate::implicative::{induced_tripos, validate, ImpAlgebra, ImpError, ImpStructure};
use crate::law_suite::{run_all, CheckBudget};
use crate::report::{Coverage, LawEntry, LawReport, Status, TransferIdentity, Witness};

/// Largest `|Σ|` that can be extracted (the carrier has `2^|Σ|` elements).
pub const MAX_EXTRACT_SIGMA: usize = 4;

/// Largest `|Σ|` for the code-transfer checks, whose membership context has
/// `2^|Σ| · 2^(2^|Σ|) / 2` points.
pub const MAX_TRANSFER_SIGMA: usize = 3;

/// Largest atom universe whose upsets we enumerate.
pub const MAX_UNIVERSE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(transparent)]
    Tripos(#[from] TriposError),
    #[error(transparent)]
    Algebra(#[from] ImpError),
    #[error("|Σ| = {0} is too large for this check")]
    SigmaTooLarge(usize),
    #[error("atom {0:?} mentions codes outside Σ")]
    AtomOutOfRange(Atom),
    #[error("atom set is not upward closed: contains {lower:?} but not {upper:?}")]
    NotUpwardClosed { lower: Atom, upper: Atom },
    #[error("atom universe of {0} atoms is too large to enumerate upsets")]
    UniverseTooLarge(usize),
}

/// `Base(ξ)` is the code `ξ` itself; `Arrow(s, α)` is `s ↦ α`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Atom {
    Base(usize),
    Arrow(Subset, Box<Atom>),
}

impl Atom {
    pub fn arrow(s: Subset, body: Atom) -> Self {
        Atom::Arrow(s, Box::new(body))
    }

    pub fn depth(&self) -> usize {
        match self {
            Atom::Base(_) => 0,
            Atom::Arrow(_, body) => 1 + body.depth(),
        }
    }
}

/// All atoms of depth at most `depth`: bases first, then arrows ordered by
/// subset mask and then by body.
pub fn atom_enumerate(sigma_size: usize, depth: usize) -> Vec<Atom> {
    let bases: Vec<Atom> = (0..sigma_size).map(Atom::Base).collect();
    let mut level = bases.clone();
    for _ in 0..depth {
        let mut next = bases.clone();
        for s in 0..1u64 << sigma_size {
            next.extend(level.iter().map(|body| Atom::arrow(s, body.clone())));
        }
        level = next;
    }
    level
}

pub fn atom_leq(alpha: &Atom, beta: &Atom) -> bool {
    match (alpha, beta) {
        (Atom::Base(x), Atom::Base(y)) => x == y,
        (Atom::Arrow(s, a), Atom::Arrow(s2, b)) => s & !s2 == 0 && atom_leq(a, b),
        _ => false,
    }
}

/// `φ₀(ξ) = ξ`, `φ₀(s ↦ α) = ⋀̇s →̇ φ₀(α)`.
pub fn phi0(t: &CodedTripos, alpha: &Atom) -> Result<usize, ExtractError> {
    match alpha {
        Atom::Base(x) if *x < t.sigma_size() => Ok(*x),
        Atom::Arrow(s, body) if s & !t.full_subset() == 0 => Ok(t.imp(t.meet(*s), phi0(t, body)?)),
        _ => Err(ExtractError::AtomOutOfRange(alpha.clone())),
    }
}

/// The image of an atom set under `φ₀`.
pub fn phi0_image<'a>(
    t: &CodedTripos,
    set: impl IntoIterator<Item = &'a Atom>,
) -> Result<Subset, ExtractError> {
    let mut out = 0;
    for alpha in set {
        out |= 1 << phi0(t, alpha)?;
    }
    Ok(out)
}

/// `F→(s, u) = {⋀̇s′ →̇ ξ : s′ ⊇ s, ξ ∈ u}`.
pub fn f_imp(t: &CodedTripos, s: Subset, u: Subset) -> Subset {
    image_set(
        supersets(s, t.full_subset())
            .flat_map(|s2| members(u).map(move |xi| t.imp(t.meet(s2), xi))),
    )
}

pub fn check_upward_closed(set: &BTreeSet<Atom>, universe: &[Atom]) -> Result<(), ExtractError> {
    for lower in set {
        if let Some(upper) = universe
            .iter()
            .find(|b| atom_leq(lower, b) && !set.contains(*b))
        {
            return Err(ExtractError::NotUpwardClosed {
                lower: lower.clone(),
                upper: upper.clone(),
            });
        }
    }
    Ok(())
}

/// Every upward-closed subset of `universe`, in order of their membership masks.
pub fn upsets(universe: &[Atom]) -> Result<Vec<BTreeSet<Atom>>, ExtractError> {
    if universe.len() > MAX_UNIVERSE {
        return Err(ExtractError::UniverseTooLarge(universe.len()));
    }
    let n = universe.len();
    let above: Vec<u64> = universe
        .iter()
        .map(|a| image_set((0..n).filter(|&j| atom_leq(a, &universe[j]))))
        .collect();
    Ok((0..1u64 << n)
        .filter(|&m| members(m).all(|i| above[i] & !m == 0))
        .map(|m| members(m).map(|i| universe[i].clone()).collect())
        .collect())
}

/// `a → b = {s ↦ β : s ⊇ φ̃₀(a), β ∈ b}`, computed on atoms. Both arguments
/// must be upward closed in the universe of atoms of depth at most `depth`.
pub fn explicit_upset_imp(
    t: &CodedTripos,
    a: &BTreeSet<Atom>,
    b: &BTreeSet<Atom>,
    depth: usize,
) -> Result<BTreeSet<Atom>, ExtractError> {
    let universe = atom_enumerate(t.sigma_size(), depth);
    check_upward_closed(a, &universe)?;
    check_upward_closed(b, &universe)?;
    let image = phi0_image(t, a)?;
    let mut out = BTreeSet::new();
    for s in supersets(image, t.full_subset()) {
        for beta in b {
            out.insert(Atom::arrow(s, beta.clone()));
        }
    }
    Ok(out)
}

/// The extracted algebra with its conversions. Carrier element `s` is the
/// subset of `Σ` with mask `s`; the order is reverse inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedAlgebra {
    pub algebra: ImpAlgebra,
    /// `φ(s) = ⋀̇s`.
    pub phi: Vec<usize>,
    /// `ψ(ξ) = {ξ}`.
    pub psi: Vec<Subset>,
}

impl ExtractedAlgebra {
    pub fn rho(&self, a: &[usize]) -> PredCode {
        PredCode(a.iter().map(|&s| self.phi[s]).collect())
    }

    pub fn size(&self) -> usize {
        self.phi.len()
    }

    pub fn imp(&self, s: usize, u: usize) -> usize {
        self.algebra.structure.imp(s, u)
    }

    /// `entails_B(a, c)`: the union of the pointwise implications is in the separator.
    pub fn entails(&self, a: &[usize], c: &[usize]) -> bool {
        let u = a
            .iter()
            .zip(c)
            .fold(0, |acc, (&x, &y)| acc | self.imp(x, y));
        self.algebra.in_separator(u)
    }
}

pub fn extract(t: &CodedTripos) -> Result<ExtractedAlgebra, ExtractError> {
    let n = t.sigma_size();
    if n > MAX_EXTRACT_SIGMA {
        return Err(ExtractError::SigmaTooLarge(n));
    }
    let size = 1usize << n;
    let order = FinPoset::from_fn(size, |a, b| b & !a == 0).map_err(ImpError::from)?;
    let imp = (0..size)
        .map(|s| {
            (0..size)
                .map(|u| f_imp(t, s as Subset, u as Subset) as usize)
                .collect()
        })
        .collect();
    let structure = ImpStructure::new(order, imp)?;
    let phi: Vec<usize> = (0..size).map(|s| t.meet(s as Subset)).collect();
    let separator = image_set((0..size).filter(|&s| t.in_filter(phi[s])));
    let algebra = ImpAlgebra::new(structure, separator)?;
    Ok(ExtractedAlgebra {
        algebra,
        phi,
        psi: (0..n).map(|x| 1 << x).collect(),
    })
}

/// Extracts and validates. With a budget the law suite is run first and
/// recorded as `extract.precondition`; without one that entry is skipped.
pub fn extract_report(
    t: &CodedTripos,
    certify: Option<&CheckBudget>,
) -> Result<(ExtractedAlgebra, LawReport), ExtractError> {
    let mut report = LawReport::new();
    match certify {
        Some(budget) => {
            let laws = run_all(t, budget);
            let entry = match laws.failures().next() {
                Some(f) => LawEntry {
                    law_id: "extract.precondition".into(),
                    status: Status::Fail,
                    ..f.clone()
                },
                None => LawEntry::pass("extract.precondition", Coverage::Exhaustive),
            };
            report.push(entry);
        }
        None => {
            report.push(LawEntry::skipped(
                "extract.precondition",
                Coverage::Exhaustive,
            ));
            report.fact("warning", "laws not certified");
        }
    }
    let e = extract(t)?;
    report.extend(validate(&e.algebra));
    let cc = e.algebra.combinators().cc;
    report.fact("cc_decoded", e.phi[cc]);
    Ok((e, report))
}

fn tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = base.checked_pow(len as u32).unwrap_or(0);
    (0..count).map(move |mut i| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = i % base;
            i /= base;
        }
        v
    })
}

fn equiv(t: &CodedTripos, a: &PredCode, b: &PredCode) -> bool {
    entails_unchecked(t, a.codes(), b.codes()) && entails_unchecked(t, b.codes(), a.codes())
}

fn embedding_holds(t: &CodedTripos, e: &ExtractedAlgebra, a: &[usize], c: &[usize]) -> bool {
    e.entails(a, c) == entails_unchecked(t, e.rho(a).codes(), e.rho(c).codes())
}

fn surjectivity_holds(t: &CodedTripos, e: &ExtractedAlgebra, sigma: &PredCode) -> bool {
    let lifted: Vec<usize> = sigma.codes().iter().map(|&x| e.psi[x] as usize).collect();
    equiv(t, &e.rho(&lifted), sigma)
}

fn naturality_holds(e: &ExtractedAlgebra, f: &FinMap, a: &[usize]) -> bool {
    let pulled: Vec<usize> = f.table().iter().map(|&x| a[x]).collect();
    let lhs = e.rho(&pulled);
    let rhs = e.rho(a);
    lhs.codes()
        .iter()
        .zip(f.table())
        .all(|(&l, &x)| l == rhs.codes()[x])
}

fn iso_at(t: &CodedTripos, e: &ExtractedAlgebra, n: usize, m: usize) -> [Option<Witness>; 3] {
    let b = e.size();
    let embedding = tuples(b, n).find_map(|a| {
        tuples(b, n)
            .find(|c| !embedding_holds(t, e, &a, c))
            .map(|c| Witness::Embedding { a: a.clone(), c })
    });
    let surjectivity = tuples(t.sigma_size(), n)
        .map(PredCode)
        .find(|s| !surjectivity_holds(t, e, s))
        .map(|sigma| Witness::Surjectivity { sigma });
    let naturality = (0..=m).find_map(|k| {
        FinMap::all(k, n).find_map(|f| {
            tuples(b, n)
                .find(|a| !naturality_holds(e, &f, a))
                .map(|a| Witness::Naturality { map: f.clone(), a })
        })
    });
    [embedding, surjectivity, naturality]
}

const ISO_IDS: [&str; 3] = ["iso.embedding", "iso.surjectivity", "iso.naturality"];

/// Embedding, surjectivity through `ψ`, and naturality of `ρ = φ ∘ -`, over
/// every context up to `max_ctx`, plus seeded samples one size above.
pub fn iso_check(t: &CodedTripos, budget: &CheckBudget) -> Result<LawReport, ExtractError> {
    let e = extract(t)?;
    let mut found: [Option<Witness>; 3] = [None, None, None];
    for n in 0..=budget.max_ctx {
        for (slot, w) in found.iter_mut().zip(iso_at(t, &e, n, budget.max_ctx)) {
            if slot.is_none() {
                *slot = w;
            }
        }
    }
    let mut report = LawReport::new();
    for (id, w) in ISO_IDS.iter().zip(found) {
        report.push(LawEntry::from_search(*id, w, Coverage::Exhaustive));
    }
    if budget.samples > 0 {
        let big = budget.max_ctx + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let mut found: [Option<Witness>; 3] = [None, None, None];
        let b = e.size();
        for _ in 0..budget.samples {
            let a: Vec<usize> = (0..big).map(|_| rng.gen_range(0..b)).collect();
            let c: Vec<usize> = (0..big).map(|_| rng.gen_range(0..b)).collect();
            let sigma = PredCode((0..big).map(|_| rng.gen_range(0..t.sigma_size())).collect());
            let k = rng.gen_range(1..=big);
            let f = FinMap::new(big, (0..k).map(|_| rng.gen_range(0..big)).collect())
                .expect("in range");
            if found[0].is_none() && !embedding_holds(t, &e, &a, &c) {
                found[0] = Some(Witness::Embedding { a: a.clone(), c });
            }
            if found[1].is_none() && !surjectivity_holds(t, &e, &sigma) {
                found[1] = Some(Witness::Surjectivity { sigma });
            }
            if found[2].is_none() && !naturality_holds(&e, &f, &a) {
                found[2] = Some(Witness::Naturality { map: f, a });
            }
        }
        let coverage = Coverage::Sampled {
            count: budget.samples,
            seed: budget.seed,
        };
        for (id, w) in ISO_IDS.iter().zip(found) {
            report.push(LawEntry::from_search(*id, w, coverage));
        }
    }
    Ok(report)
}

fn transfer_sides(
    t: &CodedTripos,
    e: &ExtractedAlgebra,
    identity: TransferIdentity,
) -> (Vec<u64>, PredCode, PredCode) {
    let n = t.sigma_size();
    let (mut points, mut lhs, mut rhs) = (Vec::new(), Vec::new(), Vec::new());
    match identity {
        TransferIdentity::SupersetCollapse => {
            for s in 0..1u64 << n {
                for u in 0..1u64 << n {
                    points.push(s << n | u);
                    lhs.push(t.meet(f_imp(t, s, u)));
                    rhs.push(t.meet_of(members(u).map(|xi| t.imp(t.meet(s), xi))));
                }
            }
        }
        TransferIdentity::MembershipForall => {
            // E′ = {(a, A) : a ∈ A}, listed by A then a; e′₂ projects to A.
            let b = e.size();
            let mut proj = Vec::new();
            let mut first = Vec::new();
            for big_a in 0..1u64 << b {
                for a in members(big_a) {
                    proj.push(big_a as usize);
                    first.push(e.phi[a]);
                }
            }
            let e2 = FinMap::new(1 << b, proj).expect("in range");
            let forall = forall_along(t, &e2, &PredCode(first)).expect("context sizes agree");
            for big_a in 0..1u64 << b {
                points.push(big_a);
                let union = members(big_a).fold(0, |acc, a| acc | a);
                lhs.push(e.phi[union]);
            }
            rhs = forall.0;
        }
    }
    (points, PredCode(lhs), PredCode(rhs))
}

fn transfer_witness(
    t: &CodedTripos,
    e: &ExtractedAlgebra,
    identity: TransferIdentity,
) -> Option<Witness> {
    let (points, lhs, rhs) = transfer_sides(t, e, identity);
    if equiv(t, &lhs, &rhs) {
        return None;
    }
    let point = (0..points.len())
        .find(|&i| !equiv(t, &PredCode(vec![lhs.0[i]]), &PredCode(vec![rhs.0[i]])))
        .map(|i| vec![points[i]]);
    Some(Witness::Transfer { identity, point })
}

/// `φ ∘ (⋀ over fibers of f)` against `∀f (φ ∘ a)`.
fn fiber_meet_holds(t: &CodedTripos, e: &ExtractedAlgebra, f: &FinMap, a: &[usize]) -> bool {
    let meets: Vec<usize> = (0..f.cod_size())
        .map(|y| f.fiber(y).fold(0, |acc, x| acc | a[x]))
        .collect();
    match forall_along(t, f, &e.rho(a)) {
        Ok(forall) => equiv(t, &e.rho(&meets), &forall),
        Err(_) => false,
    }
}

/// `φ ∘ (a → b)` against `(φ ∘ a) →̇ (φ ∘ b)`.
fn implication_transfer_holds(
    t: &CodedTripos,
    e: &ExtractedAlgebra,
    a: &[usize],
    b: &[usize],
) -> bool {
    let arrows: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| e.imp(x, y)).collect();
    let rhs = PredCode(
        a.iter()
            .zip(b)
            .map(|(&x, &y)| t.imp(e.phi[x], e.phi[y]))
            .collect(),
    );
    equiv(t, &e.rho(&arrows), &rhs)
}

/// In `P X` of the tripos induced by the extracted algebra, the class of the
/// pointwise implication is the Heyting implication of the classes.
fn heyting_witness(e: &ExtractedAlgebra, max_ctx: usize) -> Option<Witness> {
    let tb = match induced_tripos(&e.algebra) {
        Ok(tb) => tb,
        Err(err) => {
            return Some(Witness::Quotient {
                ctx_size: 0,
                error: err.to_string(),
            })
        }
    };
    let b = e.size();
    for n in 0..=max_ctx {
        let p = match px(&tb, n) {
            Ok(p) => p,
            Err(err) => {
                return Some(Witness::Quotient {
                    ctx_size: n,
                    error: err.to_string(),
                })
            }
        };
        for a in tuples(b, n) {
            for c in tuples(b, n) {
                if !heyting_holds(&p, e, &a, &c) {
                    return Some(Witness::HeytingImplication {
                        ctx_size: n,
                        a,
                        b: c,
                    });
                }
            }
        }
    }
    None
}

fn heyting_holds(p: &PXResult, e: &ExtractedAlgebra, a: &[usize], c: &[usize]) -> bool {
    let arrows = PredCode(a.iter().zip(c).map(|(&x, &y)| e.imp(x, y)).collect());
    let classify = |v: &PredCode| p.classify(v).ok();
    match (
        classify(&arrows),
        classify(&PredCode(a.to_vec())),
        classify(&PredCode(c.to_vec())),
    ) {
        (Some(l), Some(x), Some(y)) => l == p.algebra.imp(x, y),
        _ => false,
    }
}

const TRANSFER_MAX_CTX: usize = 2;

/// The code-transfer identities of the extracted algebra, exhaustively.
pub fn check_extracted_codes(t: &CodedTripos) -> Result<LawReport, ExtractError> {
    let n = t.sigma_size();
    if n > MAX_TRANSFER_SIGMA {
        return Err(ExtractError::SigmaTooLarge(n));
    }
    let e = extract(t)?;
    let b = e.size();
    let mut report = LawReport::new();
    for (id, identity) in [
        (
            "transfer.superset_collapse",
            TransferIdentity::SupersetCollapse,
        ),
        (
            "transfer.membership_forall",
            TransferIdentity::MembershipForall,
        ),
    ] {
        report.push(LawEntry::from_search(
            id,
            transfer_witness(t, &e, identity),
            Coverage::Exhaustive,
        ));
    }

    let fiber = (0..=TRANSFER_MAX_CTX).find_map(|x| {
        (0..=TRANSFER_MAX_CTX).find_map(|y| {
            FinMap::all(x, y).find_map(|f| {
                tuples(b, x)
                    .find(|a| !fiber_meet_holds(t, &e, &f, a))
                    .map(|a| Witness::FiberMeet { map: f.clone(), a })
            })
        })
    });
    report.push(LawEntry::from_search(
        "transfer.fiber_meet",
        fiber,
        Coverage::Exhaustive,
    ));

    let implication = (0..=TRANSFER_MAX_CTX).find_map(|x| {
        tuples(b, x).find_map(|a| {
            tuples(b, x)
                .find(|c| !implication_transfer_holds(t, &e, &a, c))
                .map(|c| Witness::ImplicationTransfer { a: a.clone(), b: c })
        })
    });
    report.push(LawEntry::from_search(
        "transfer.implication",
        implication,
        Coverage::Exhaustive,
    ));

    report.push(LawEntry::from_search(
        "transfer.heyting_implication",
        heyting_witness(&e, TRANSFER_MAX_CTX),
        Coverage::Exhaustive,
    ));
    Ok(report)
}

/// Induces a tripos from `a`, extracts from it, and certifies that the tripos
/// induced by the extracted algebra is isomorphic to the induced one.
pub fn roundtrip(a: &ImpAlgebra, budget: &CheckBudget) -> Result<LawReport, ExtractError> {
    let t = induced_tripos(a)?;
    let mut report = run_all(&t, budget);
    report.extend(iso_check(&t, budget)?);
    let e = extract(&t)?;
    let tb = induced_tripos(&e.algebra)?;
    let mut found = None;
    for n in 0..=budget.max_ctx {
        if let Some(w) = px_iso_witness(&t, &tb, &e, n) {
            found = Some(w);
            break;
        }
    }
    report.push(LawEntry::from_search(
        "roundtrip.px_iso",
        found,
        Coverage::Exhaustive,
    ));
    Ok(report)
}

/// `ρ` descends to an order isomorphism `P_B X ≅ P X`.
fn px_iso_witness(
    t: &CodedTripos,
    tb: &CodedTripos,
    e: &ExtractedAlgebra,
    n: usize,
) -> Option<Witness> {
    let (p, pb) = match (px(t, n), px(tb, n)) {
        (Ok(p), Ok(pb)) => (p, pb),
        (Err(err), _) | (_, Err(err)) => {
            return Some(Witness::Quotient {
                ctx_size: n,
                error: err.to_string(),
            })
        }
    };
    let reps = &pb.representatives;
    for a in reps {
        for c in reps {
            let in_b = entails(tb, a, c).unwrap_or(false);
            if in_b != entails(t, &e.rho(a.codes()), &e.rho(c.codes())).unwrap_or(false) {
                return Some(Witness::Embedding {
                    a: a.0.clone(),
                    c: c.0.clone(),
                });
            }
        }
    }
    let hit: BTreeSet<usize> = reps
        .iter()
        .filter_map(|a| p.classify(&e.rho(a.codes())).ok())
        .collect();
    if hit.len() != p.algebra.size() {
        let missing = (0..p.algebra.size())
            .find(|k| !hit.contains(k))
            .expect("some class is missed");
        return Some(Witness::Surjectivity {
            sigma: p.representatives[missing].clone(),
        });
    }
    None
}

/// Re-evaluates an extraction witness against `t`. `None` for other kinds.
pub fn replay(t: &CodedTripos, witness: &Witness) -> Option<bool> {
    let e = extract(t).ok()?;
    let b = e.size();
    let in_b = |v: &[usize]| v.iter().all(|&x| x < b).then_some(());
    let reproduced = match witness {
        Witness::Embedding { a, c } => {
            in_b(a)?;
            in_b(c)?;
            (a.len() == c.len()).then_some(())?;
            !embedding_holds(t, &e, a, c)
        }
        Witness::Surjectivity { sigma } => {
            sigma.check_range(t).ok()?;
            !surjectivity_holds(t, &e, sigma)
        }
        Witness::Naturality { map, a } => {
            in_b(a)?;
            (map.cod_size() == a.len()).then_some(())?;
            !naturality_holds(&e, map, a)
        }
        Witness::Transfer { identity, .. } => {
            if t.sigma_size() > MAX_TRANSFER_SIGMA {
                return None;
            }
            transfer_witness(t, &e, *identity).is_some()
        }
        Witness::FiberMeet { map, a } => {
            in_b(a)?;
            (map.dom_size() == a.len()).then_some(())?;
            !fiber_meet_holds(t, &e, map, a)
        }
        Witness::ImplicationTransfer { a, b: c } => {
            in_b(a)?;
            in_b(c)?;
            (a.len() == c.len()).then_some(())?;
            !implication_transfer_holds(t, &e, a, c)
        }
        Witness::HeytingImplication { ctx_size, a, b: c } => {
            in_b(a)?;
            in_b(c)?;
            (a.len() == *ctx_size && c.len() == *ctx_size).then_some(())?;
            let tb = induced_tripos(&e.algebra).ok()?;
            let p = px(&tb, *ctx_size).ok()?;
            !heyting_holds(&p, &e, a, c)
        }
        _ => return None,
    };
    Some(reproduced)
}
