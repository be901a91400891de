//! Exhaustive and sampled checks of the tripos laws on a coded presentation.
//!
//! Every identity between predicates is tested as mutual entailment of
//! codes: the tables themselves satisfy no equations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coded_tripos::{
    entails, entails_unchecked, exists_along, forall_along, image_set, members, px_quotient, subst,
    CodedTripos, Connective, PredCode, PxError, Subset, CONNECTIVES,
};
use crate::finite_order::FinMap;
use crate::report::{
    Coverage, InverseCase, LawEntry, LawReport, QuantIdentity, Quantifier, Witness,
};

/// Largest `|Σ|` for which the quantifier identities are enumerated.
pub const MAX_QUANT_SIGMA: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckBudget {
    pub max_ctx: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckBudget {
    fn default() -> Self {
        Self {
            max_ctx: 2,
            samples: 200,
            seed: 0,
        }
    }
}

impl CheckBudget {
    pub fn exhaustive(max_ctx: usize) -> Self {
        Self {
            max_ctx,
            samples: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("|Σ| = {0} is too large to enumerate P(P(Σ))")]
    SigmaTooLarge(usize),
}

/// Maps and codes drawn for one law instance.
#[derive(Debug, Clone)]
struct Scenario {
    maps: Vec<FinMap>,
    codes: Vec<PredCode>,
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    /// `count` codes over one context.
    Codes { count: usize },
    /// `f: X -> Y` with codes over `X` then codes over `Y`.
    Map { dom_codes: usize, cod_codes: usize },
    /// `f: X -> Y`, `g: Y -> Z` and one code over `X`.
    Composable,
    /// `g1: X1 -> Y`, `g2: X2 -> Y` and one code over `X2`.
    Cospan,
    /// `f: Z -> Z'`, projection `Z' x X -> Z'` and one code over `Z' x X`.
    ProductSquare,
}

fn split_codes(flat: &[usize], sizes: &[usize]) -> Vec<PredCode> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut rest = flat;
    for &n in sizes {
        let (head, tail) = rest.split_at(n);
        out.push(PredCode(head.to_vec()));
        rest = tail;
    }
    out
}

/// Every tuple of codes over the given context sizes.
fn code_tuples(sigma: usize, sizes: Vec<usize>) -> impl Iterator<Item = Vec<PredCode>> {
    FinMap::all(sizes.iter().sum(), sigma).map(move |m| split_codes(m.table(), &sizes))
}

fn projection(rows: usize, cols: usize) -> FinMap {
    FinMap::new(rows, (0..rows * cols).map(|k| k / cols).collect()).expect("in range")
}

fn exhaustive(shape: Shape, sigma: usize, m: usize) -> Box<dyn Iterator<Item = Scenario>> {
    let sizes = 0..=m;
    match shape {
        Shape::Codes { count } => Box::new(sizes.flat_map(move |n| {
            code_tuples(sigma, vec![n; count]).map(|codes| Scenario {
                maps: vec![],
                codes,
            })
        })),
        Shape::Map {
            dom_codes,
            cod_codes,
        } => Box::new(sizes.flat_map(move |n| {
            (0..=m).flat_map(move |k| {
                FinMap::all(n, k).flat_map(move |f| {
                    let mut ctx = vec![n; dom_codes];
                    ctx.extend(vec![k; cod_codes]);
                    code_tuples(sigma, ctx).map(move |codes| Scenario {
                        maps: vec![f.clone()],
                        codes,
                    })
                })
            })
        })),
        Shape::Composable => Box::new(sizes.flat_map(move |n| {
            (0..=m).flat_map(move |k| {
                (0..=m).flat_map(move |l| {
                    FinMap::all(n, k).flat_map(move |f| {
                        FinMap::all(k, l).flat_map({
                            let f = f.clone();
                            move |g| {
                                let f = f.clone();
                                code_tuples(sigma, vec![n]).map(move |codes| Scenario {
                                    maps: vec![f.clone(), g.clone()],
                                    codes,
                                })
                            }
                        })
                    })
                })
            })
        })),
        Shape::Cospan => Box::new(sizes.flat_map(move |y| {
            (0..=m).flat_map(move |x1| {
                (0..=m).flat_map(move |x2| {
                    FinMap::all(x1, y).flat_map(move |g1| {
                        FinMap::all(x2, y).flat_map({
                            let g1 = g1.clone();
                            move |g2| {
                                let g1 = g1.clone();
                                code_tuples(sigma, vec![x2]).map(move |codes| Scenario {
                                    maps: vec![g1.clone(), g2.clone()],
                                    codes,
                                })
                            }
                        })
                    })
                })
            })
        })),
        Shape::ProductSquare => Box::new(sizes.flat_map(move |z| {
            (0..=m).flat_map(move |z2| {
                (0..=m).flat_map(move |x| {
                    let proj = projection(z2, x);
                    FinMap::all(z, z2).flat_map(move |f| {
                        let proj = proj.clone();
                        code_tuples(sigma, vec![z2 * x]).map(move |codes| Scenario {
                            maps: vec![f.clone(), proj.clone()],
                            codes,
                        })
                    })
                })
            })
        })),
    }
}

fn random_map(rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> FinMap {
    FinMap::new(cod, (0..dom).map(|_| rng.gen_range(0..cod)).collect()).expect("in range")
}

fn random_code(rng: &mut ChaCha8Rng, sigma: usize, n: usize) -> PredCode {
    PredCode((0..n).map(|_| rng.gen_range(0..sigma)).collect())
}

/// One scenario whose leading context has size `big`; other sizes range up to `big`.
fn sampled(shape: Shape, sigma: usize, big: usize, rng: &mut ChaCha8Rng) -> Scenario {
    let size = |rng: &mut ChaCha8Rng| rng.gen_range(1..=big);
    match shape {
        Shape::Codes { count } => Scenario {
            maps: vec![],
            codes: (0..count).map(|_| random_code(rng, sigma, big)).collect(),
        },
        Shape::Map {
            dom_codes,
            cod_codes,
        } => {
            let k = size(rng);
            let f = random_map(rng, big, k);
            let mut codes: Vec<PredCode> = (0..dom_codes)
                .map(|_| random_code(rng, sigma, big))
                .collect();
            codes.extend((0..cod_codes).map(|_| random_code(rng, sigma, k)));
            Scenario {
                maps: vec![f],
                codes,
            }
        }
        Shape::Composable => {
            let (k, l) = (size(rng), size(rng));
            let f = random_map(rng, big, k);
            let g = random_map(rng, k, l);
            Scenario {
                maps: vec![f, g],
                codes: vec![random_code(rng, sigma, big)],
            }
        }
        Shape::Cospan => {
            let (y, x2) = (size(rng), size(rng));
            let g1 = random_map(rng, big, y);
            let g2 = random_map(rng, x2, y);
            Scenario {
                maps: vec![g1, g2],
                codes: vec![random_code(rng, sigma, x2)],
            }
        }
        Shape::ProductSquare => {
            let (z2, x) = (size(rng), size(rng));
            let f = random_map(rng, big, z2);
            Scenario {
                maps: vec![f, projection(z2, x)],
                codes: vec![random_code(rng, sigma, z2 * x)],
            }
        }
    }
}

type LawFn = fn(&CodedTripos, &Scenario) -> Option<Witness>;

struct Law {
    id: &'static str,
    shape: Shape,
    check: LawFn,
}

fn equiv(t: &CodedTripos, a: &PredCode, b: &PredCode) -> bool {
    entails_unchecked(t, a.codes(), b.codes()) && entails_unchecked(t, b.codes(), a.codes())
}

fn quantify(t: &CodedTripos, q: Quantifier, f: &FinMap, sigma: &PredCode) -> PredCode {
    match q {
        Quantifier::Exists => exists_along(t, f, sigma),
        Quantifier::Forall => forall_along(t, f, sigma),
    }
    .expect("scenario contexts agree")
}

fn sub(f: &FinMap, tau: &PredCode) -> PredCode {
    subst(f, tau).expect("scenario contexts agree")
}

fn reflexivity(t: &CodedTripos, s: &Scenario) -> Option<Witness> {
    let sigma = &s.codes[0];
    (!entails_unchecked(t, sigma.codes(), sigma.codes())).then(|| Witness::Reflexivity {
        sigma: sigma.clone(),
    })
}

fn transitivity(t: &CodedTripos, s: &Scenario) -> Option<Witness> {
    let [a, b, c] = [&s.codes[0], &s.codes[1], &s.codes[2]];
    let violated = entails_unchecked(t, a.codes(), b.codes())
        && entails_unchecked(t, b.codes(), c.codes())
        && !entails_unchecked(t, a.codes(), c.codes());
    violated.then(|| Witness::Transitivity {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    })
}

fn adjunction_holds(
    t: &CodedTripos,
    q: Quantifier,
    f: &FinMap,
    sigma: &PredCode,
    tau: &PredCode,
) -> bool {
    let quantified = quantify(t, q, f, sigma);
    let pulled = sub(f, tau);
    match q {
        Quantifier::Exists => {
            entails_unchecked(t, quantified.codes(), tau.codes())
                == entails_unchecked(t, sigma.codes(), pulled.codes())
        }
        Quantifier::Forall => {
            entails_unchecked(t, tau.codes(), quantified.codes())
                == entails_unchecked(t, pulled.codes(), sigma.codes())
        }
    }
}

fn adjunction(q: Quantifier) -> LawFn {
    fn go(q: Quantifier, t: &CodedTripos, s: &Scenario) -> Option<Witness> {
        let (f, sigma, tau) = (&s.maps[0], &s.codes[0], &s.codes[1]);
        (!adjunction_holds(t, q, f, sigma, tau)).then(|| Witness::Adjunction {
            quantifier: q,
            map: f.clone(),
            sigma: sigma.clone(),
            tau: tau.clone(),
        })
    }
    match q {
        Quantifier::Exists => |t, s| go(Quantifier::Exists, t, s),
        Quantifier::Forall => |t, s| go(Quantifier::Forall, t, s),
    }
}

fn identity_holds(t: &CodedTripos, q: Quantifier, sigma: &PredCode) -> bool {
    equiv(
        t,
        &quantify(t, q, &FinMap::identity(sigma.ctx_size()), sigma),
        sigma,
    )
}

fn identity(q: Quantifier) -> LawFn {
    fn go(q: Quantifier, t: &CodedTripos, s: &Scenario) -> Option<Witness> {
        let sigma = &s.codes[0];
        (!identity_holds(t, q, sigma)).then(|| Witness::Identity {
            quantifier: q,
            sigma: sigma.clone(),
        })
    }
    match q {
        Quantifier::Exists => |t, s| go(Quantifier::Exists, t, s),
        Quantifier::Forall => |t, s| go(Quantifier::Forall, t, s),
    }
}

fn composition_holds(
    t: &CodedTripos,
    q: Quantifier,
    f: &FinMap,
    g: &FinMap,
    sigma: &PredCode,
) -> bool {
    let gf = g.after(f).expect("composable");
    equiv(
        t,
        &quantify(t, q, &gf, sigma),
        &quantify(t, q, g, &quantify(t, q, f, sigma)),
    )
}

fn composition(q: Quantifier) -> LawFn {
    fn go(q: Quantifier, t: &CodedTripos, s: &Scenario) -> Option<Witness> {
        let (f, g, sigma) = (&s.maps[0], &s.maps[1], &s.codes[0]);
        (!composition_holds(t, q, f, g, sigma)).then(|| Witness::Composition {
            quantifier: q,
            first: f.clone(),
            second: g.clone(),
            sigma: sigma.clone(),
        })
    }
    match q {
        Quantifier::Exists => |t, s| go(Quantifier::Exists, t, s),
        Quantifier::Forall => |t, s| go(Quantifier::Forall, t, s),
    }
}

/// `∃` preserves `∨̇`/`⊥̇` and `∀` preserves `∧̇`/`⊤̇`, up to `⊣⊢`.
fn preservation_holds(
    t: &CodedTripos,
    q: Quantifier,
    f: &FinMap,
    sigma: &PredCode,
    other: Option<&PredCode>,
) -> bool {
    let (op, unit) = match q {
        Quantifier::Exists => (Connective::Or, Connective::Bot),
        Quantifier::Forall => (Connective::And, Connective::Top),
    };
    match other {
        Some(other) => {
            let lhs = quantify(t, q, f, &t.apply(op, sigma, other).expect("same context"));
            let rhs = t
                .apply(op, &quantify(t, q, f, sigma), &quantify(t, q, f, other))
                .expect("same context");
            equiv(t, &lhs, &rhs)
        }
        None => {
            let unit_code = t.connective(unit, 0, 0);
            let lhs = quantify(t, q, f, &t.constant(unit_code, f.dom_size()));
            equiv(t, &lhs, &t.constant(unit_code, f.cod_size()))
        }
    }
}

fn preserves_binary(q: Quantifier) -> LawFn {
    fn go(q: Quantifier, t: &CodedTripos, s: &Scenario) -> Option<Witness> {
        let (f, sigma, other) = (&s.maps[0], &s.codes[0], &s.codes[1]);
        (!preservation_holds(t, q, f, sigma, Some(other))).then(|| Witness::Preservation {
            quantifier: q,
            map: f.clone(),
            sigma: sigma.clone(),
            other: Some(other.clone()),
        })
    }
    match q {
        Quantifier::Exists => |t, s| go(Quantifier::Exists, t, s),
        Quantifier::Forall => |t, s| go(Quantifier::Forall, t, s),
    }
}

fn preserves_unit(q: Quantifier) -> LawFn {
    fn go(q: Quantifier, t: &CodedTripos, s: &Scenario) -> Option<Witness> {
        let f = &s.maps[0];
        let sigma = t.constant(0, f.dom_size());
        (!preservation_holds(t, q, f, &sigma, None)).then(|| Witness::Preservation {
            quantifier: q,
            map: f.clone(),
            sigma,
            other: None,
        })
    }
    match q {
        Quantifier::Exists => |t, s| go(Quantifier::Exists, t, s),
        Quantifier::Forall => |t, s| go(Quantifier::Forall, t, s),
    }
}

/// Whether the inverse-map lemma case applies to `f`.
fn inverse_applies(case: InverseCase, f: &FinMap) -> bool {
    match case {
        InverseCase::Bijective => f.is_bijective(),
        InverseCase::Surjective => f.is_surjective(),
        // a left inverse Y -> X needs X nonempty or Y empty
        InverseCase::Injective => f.is_injective() && (f.dom_size() > 0 || f.cod_size() == 0),
    }
}

fn inverse_holds(
    t: &CodedTripos,
    case: InverseCase,
    q: Quantifier,
    f: &FinMap,
    code: &PredCode,
) -> bool {
    match case {
        InverseCase::Bijective => {
            let inv = f.least_section().expect("bijective");
            equiv(t, &quantify(t, q, f, code), &sub(&inv, code))
        }
        InverseCase::Surjective => equiv(t, &quantify(t, q, f, &sub(f, code)), code),
        InverseCase::Injective => equiv(t, &sub(f, &quantify(t, q, f, code)), code),
    }
}

fn inverse(case: InverseCase) -> LawFn {
    fn go(case: InverseCase, t: &CodedTripos, s: &Scenario) -> Option<Witness> {
        let f = &s.maps[0];
        if !inverse_applies(case, f) {
            return None;
        }
        let code = &s.codes[0];
        [Quantifier::Exists, Quantifier::Forall]
            .into_iter()
            .find(|&q| !inverse_holds(t, case, q, f, code))
            .map(|q| Witness::Inverse {
                case,
                quantifier: q,
                map: f.clone(),
                code: code.clone(),
            })
    }
    match case {
        InverseCase::Bijective => |t, s| go(InverseCase::Bijective, t, s),
        InverseCase::Surjective => |t, s| go(InverseCase::Surjective, t, s),
        InverseCase::Injective => |t, s| go(InverseCase::Injective, t, s),
    }
}

/// The canonical pullback `{(x1, x2) : g1 x1 = g2 x2}` with its projections.
pub fn pullback(g1: &FinMap, g2: &FinMap) -> (FinMap, FinMap) {
    let pairs: Vec<(usize, usize)> = (0..g1.dom_size())
        .flat_map(|x1| (0..g2.dom_size()).map(move |x2| (x1, x2)))
        .filter(|&(x1, x2)| g1.apply(x1) == g2.apply(x2))
        .collect();
    let f1 = FinMap::new(g1.dom_size(), pairs.iter().map(|p| p.0).collect()).expect("in range");
    let f2 = FinMap::new(g2.dom_size(), pairs.iter().map(|p| p.1).collect()).expect("in range");
    (f1, f2)
}

fn beck_chevalley_holds(
    t: &CodedTripos,
    q: Quantifier,
    g1: &FinMap,
    g2: &FinMap,
    sigma: &PredCode,
) -> bool {
    let (f1, f2) = pullback(g1, g2);
    let lhs = quantify(t, q, &f1, &sub(&f2, sigma));
    let rhs = sub(g1, &quantify(t, q, g2, sigma));
    equiv(t, &lhs, &rhs)
}

fn beck_chevalley(t: &CodedTripos, s: &Scenario) -> Option<Witness> {
    let (g1, g2, sigma) = (&s.maps[0], &s.maps[1], &s.codes[0]);
    [Quantifier::Exists, Quantifier::Forall]
        .into_iter()
        .find(|&q| !beck_chevalley_holds(t, q, g1, g2, sigma))
        .map(|q| Witness::BeckChevalley {
            quantifier: q,
            left: g1.clone(),
            right: g2.clone(),
            sigma: sigma.clone(),
        })
}

fn law_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a over the law id, so each law draws an independent stream
    id.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn run_law(t: &CodedTripos, law: &Law, budget: &CheckBudget, report: &mut LawReport) {
    let sigma = t.sigma_size();
    let found = exhaustive(law.shape, sigma, budget.max_ctx).find_map(|s| (law.check)(t, &s));
    report.push(LawEntry::from_search(law.id, found, Coverage::Exhaustive));
    if budget.samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(law_seed(budget.seed, law.id));
        let big = budget.max_ctx + 1;
        let found = (0..budget.samples)
            .find_map(|_| (law.check)(t, &sampled(law.shape, sigma, big, &mut rng)));
        let coverage = Coverage::Sampled {
            count: budget.samples,
            seed: budget.seed,
        };
        report.push(LawEntry::from_search(law.id, found, coverage));
    }
}

fn core_laws() -> Vec<Law> {
    use Quantifier::{Exists, Forall};
    let map = |dom_codes, cod_codes| Shape::Map {
        dom_codes,
        cod_codes,
    };
    vec![
        Law {
            id: "entails.reflexive",
            shape: Shape::Codes { count: 1 },
            check: reflexivity,
        },
        Law {
            id: "entails.transitive",
            shape: Shape::Codes { count: 3 },
            check: transitivity,
        },
        Law {
            id: "exists.adjunction",
            shape: map(1, 1),
            check: adjunction(Exists),
        },
        Law {
            id: "forall.adjunction",
            shape: map(1, 1),
            check: adjunction(Forall),
        },
        Law {
            id: "exists.identity",
            shape: Shape::Codes { count: 1 },
            check: identity(Exists),
        },
        Law {
            id: "forall.identity",
            shape: Shape::Codes { count: 1 },
            check: identity(Forall),
        },
        Law {
            id: "exists.composition",
            shape: Shape::Composable,
            check: composition(Exists),
        },
        Law {
            id: "forall.composition",
            shape: Shape::Composable,
            check: composition(Forall),
        },
        Law {
            id: "exists.join",
            shape: map(2, 0),
            check: preserves_binary(Exists),
        },
        Law {
            id: "exists.bottom",
            shape: map(0, 0),
            check: preserves_unit(Exists),
        },
        Law {
            id: "forall.meet",
            shape: map(2, 0),
            check: preserves_binary(Forall),
        },
        Law {
            id: "forall.top",
            shape: map(0, 0),
            check: preserves_unit(Forall),
        },
        Law {
            id: "inverse.bijective",
            shape: map(1, 0),
            check: inverse(InverseCase::Bijective),
        },
        Law {
            id: "inverse.surjective",
            shape: map(0, 1),
            check: inverse(InverseCase::Surjective),
        },
        Law {
            id: "inverse.injective",
            shape: map(1, 0),
            check: inverse(InverseCase::Injective),
        },
    ]
}

fn quotient_laws(t: &CodedTripos, max_ctx: usize, report: &mut LawReport) {
    let mut heyting = None;
    let mut connectives = None;
    let mut skipped = false;
    for n in 0..=max_ctx {
        match px_quotient(t, n) {
            Ok(p) => {
                if connectives.is_none() {
                    connectives = CONNECTIVES.iter().find_map(|&op| {
                        p.op_mismatch(t, op)
                            .map(|(sigma, tau)| Witness::Connective { op, sigma, tau })
                    });
                }
            }
            // preorder failures are reported by the entailment laws
            Err(PxError::NotReflexive(_) | PxError::NotTransitive(..)) => skipped = true,
            Err(e) => {
                heyting.get_or_insert(Witness::Quotient {
                    ctx_size: n,
                    error: e.to_string(),
                });
            }
        }
    }
    if skipped && heyting.is_none() {
        report.push(LawEntry::skipped("px.heyting", Coverage::Exhaustive));
    } else {
        report.push(LawEntry::from_search(
            "px.heyting",
            heyting.clone(),
            Coverage::Exhaustive,
        ));
    }
    if (skipped || heyting.is_some()) && connectives.is_none() {
        report.push(LawEntry::skipped("px.connectives", Coverage::Exhaustive));
    } else {
        report.push(LawEntry::from_search(
            "px.connectives",
            connectives,
            Coverage::Exhaustive,
        ));
    }
}

/// Preorder, quotient structure, adjunctions, functoriality, preservation and
/// the inverse-map lemma, for every context of size at most `max_ctx`.
pub fn check_core_laws(t: &CodedTripos, budget: &CheckBudget) -> LawReport {
    let mut report = LawReport::new();
    let laws = core_laws();
    for law in &laws[..2] {
        run_law(t, law, budget, &mut report);
    }
    quotient_laws(t, budget.max_ctx, &mut report);
    for law in &laws[2..] {
        run_law(t, law, budget, &mut report);
    }
    if budget.max_ctx >= 1 {
        // injective maps out of the empty set have no left inverse
        report.push(LawEntry::skipped(
            "inverse.injective.empty_domain",
            Coverage::Exhaustive,
        ));
    }
    report
}

/// Beck-Chevalley over every cospan with component sizes at most `max_ctx`,
/// plus the product-projection squares `Z x X -> Z` over `f: Z -> Z'`.
pub fn check_beck_chevalley(t: &CodedTripos, budget: &CheckBudget) -> LawReport {
    let mut report = LawReport::new();
    let laws = [
        Law {
            id: "beck_chevalley",
            shape: Shape::Cospan,
            check: beck_chevalley,
        },
        Law {
            id: "beck_chevalley.product",
            shape: Shape::ProductSquare,
            check: beck_chevalley,
        },
    ];
    for law in &laws {
        run_law(t, law, budget, &mut report);
    }
    report
}

/// Codes of both sides of a quantifier identity over its index context.
fn identity_sides(t: &CodedTripos, identity: QuantIdentity) -> (Vec<Vec<u64>>, PredCode, PredCode) {
    let n = t.sigma_size();
    let subsets: Vec<Subset> = (0..1u64 << n).collect();
    let mut points = Vec::new();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    match identity {
        QuantIdentity::MergeMeet | QuantIdentity::MergeJoin => {
            let table = |s: Subset| {
                if identity == QuantIdentity::MergeMeet {
                    t.meet(s)
                } else {
                    t.join(s)
                }
            };
            for family in 0..1u64 << subsets.len() {
                let chosen: Vec<Subset> = members(family).map(|i| subsets[i]).collect();
                points.push(vec![family]);
                lhs.push(table(image_set(chosen.iter().map(|&s| table(s)))));
                rhs.push(table(chosen.iter().fold(0, |acc, &s| acc | s)));
            }
        }
        QuantIdentity::Distributivity => {
            for theta in 0..n {
                for &s in &subsets {
                    points.push(vec![theta as u64, s]);
                    lhs.push(t.meet_of(members(s).map(|xi| t.imp(theta, xi))));
                    rhs.push(t.imp(theta, t.meet(s)));
                }
            }
        }
        QuantIdentity::JoinMonotone | QuantIdentity::MeetAntitone => {
            for &s in &subsets {
                for &s2 in &subsets {
                    if s & !s2 != 0 {
                        continue;
                    }
                    points.push(vec![s, s2]);
                    if identity == QuantIdentity::JoinMonotone {
                        lhs.push(t.join(s));
                        rhs.push(t.join(s2));
                    } else {
                        lhs.push(t.meet(s2));
                        rhs.push(t.meet(s));
                    }
                }
            }
        }
    }
    (points, PredCode(lhs), PredCode(rhs))
}

fn is_equivalence(identity: QuantIdentity) -> bool {
    matches!(
        identity,
        QuantIdentity::MergeMeet | QuantIdentity::MergeJoin | QuantIdentity::Distributivity
    )
}

fn quant_identity_holds(t: &CodedTripos, identity: QuantIdentity) -> bool {
    let (_, lhs, rhs) = identity_sides(t, identity);
    if is_equivalence(identity) {
        equiv(t, &lhs, &rhs)
    } else {
        entails_unchecked(t, lhs.codes(), rhs.codes())
    }
}

fn identity_witness(t: &CodedTripos, identity: QuantIdentity) -> Option<Witness> {
    if quant_identity_holds(t, identity) {
        return None;
    }
    let (points, lhs, rhs) = identity_sides(t, identity);
    let point = (0..points.len())
        .find(|&i| {
            let (a, b) = ([lhs.0[i]], [rhs.0[i]]);
            !entails_unchecked(t, &a, &b)
                || (is_equivalence(identity) && !entails_unchecked(t, &b, &a))
        })
        .map(|i| points[i].clone());
    Some(Witness::QuantIdentity { identity, point })
}

pub const QUANT_IDENTITIES: [(&str, QuantIdentity); 5] = [
    ("quant.merge_meet", QuantIdentity::MergeMeet),
    ("quant.merge_join", QuantIdentity::MergeJoin),
    ("quant.distributivity", QuantIdentity::Distributivity),
    ("quant.join_monotone", QuantIdentity::JoinMonotone),
    ("quant.meet_antitone", QuantIdentity::MeetAntitone),
];

/// Merging of quantifications, distributivity of `⋀̇` over `→̇`, and
/// (anti)monotonicity of `⋁̇`/`⋀̇` in the quantification domain.
pub fn check_quantifier_identities(t: &CodedTripos) -> Result<LawReport, LawError> {
    if t.sigma_size() > MAX_QUANT_SIGMA {
        return Err(LawError::SigmaTooLarge(t.sigma_size()));
    }
    let mut report = LawReport::new();
    for (id, identity) in QUANT_IDENTITIES {
        report.push(LawEntry::from_search(
            id,
            identity_witness(t, identity),
            Coverage::Exhaustive,
        ));
    }
    Ok(report)
}

/// All three suites, in canonical order.
pub fn run_all(t: &CodedTripos, budget: &CheckBudget) -> LawReport {
    let mut report = check_core_laws(t, budget);
    report.extend(check_beck_chevalley(t, budget));
    match check_quantifier_identities(t) {
        Ok(r) => report.extend(r),
        Err(LawError::SigmaTooLarge(_)) => {
            for (id, _) in QUANT_IDENTITIES {
                report.push(LawEntry::skipped(id, Coverage::Exhaustive));
            }
        }
    }
    report
}

/// Re-evaluates a witness produced by this module. Returns `Some(true)` when
/// the violation reproduces, `None` for witnesses of other kinds.
pub fn replay(t: &CodedTripos, witness: &Witness) -> Option<bool> {
    let reproduced = match witness {
        Witness::Reflexivity { sigma } => !entails(t, sigma, sigma).ok()?,
        Witness::Transitivity { a, b, c } => {
            entails(t, a, b).ok()? && entails(t, b, c).ok()? && !entails(t, a, c).ok()?
        }
        Witness::Quotient { ctx_size, .. } => px_quotient(t, *ctx_size).is_err(),
        Witness::Connective { op, sigma, tau } => {
            let p = px_quotient(t, sigma.ctx_size()).ok()?;
            let combined = t.apply(*op, sigma, tau).ok()?;
            let lhs = p.classify(&combined).ok()?;
            lhs != p.operation(*op, p.classify(sigma).ok()?, p.classify(tau).ok()?)
        }
        Witness::Adjunction {
            quantifier,
            map,
            sigma,
            tau,
        } => {
            check_ctx(map, sigma, Some(tau))?;
            !adjunction_holds(t, *quantifier, map, sigma, tau)
        }
        Witness::Identity { quantifier, sigma } => !identity_holds(t, *quantifier, sigma),
        Witness::Composition {
            quantifier,
            first,
            second,
            sigma,
        } => {
            first.after(&FinMap::identity(sigma.ctx_size()))?;
            second.after(first)?;
            !composition_holds(t, *quantifier, first, second, sigma)
        }
        Witness::Preservation {
            quantifier,
            map,
            sigma,
            other,
        } => {
            check_ctx(map, sigma, None)?;
            !preservation_holds(t, *quantifier, map, sigma, other.as_ref())
        }
        Witness::Inverse {
            case,
            quantifier,
            map,
            code,
        } => {
            if !inverse_applies(*case, map) {
                return None;
            }
            !inverse_holds(t, *case, *quantifier, map, code)
        }
        Witness::BeckChevalley {
            quantifier,
            left,
            right,
            sigma,
        } => {
            if left.cod_size() != right.cod_size() || sigma.ctx_size() != right.dom_size() {
                return None;
            }
            !beck_chevalley_holds(t, *quantifier, left, right, sigma)
        }
        Witness::QuantIdentity { identity, .. } => {
            if t.sigma_size() > MAX_QUANT_SIGMA {
                return None;
            }
            !quant_identity_holds(t, *identity)
        }
        _ => return None,
    };
    Some(reproduced)
}

fn check_ctx(map: &FinMap, sigma: &PredCode, tau: Option<&PredCode>) -> Option<()> {
    (sigma.ctx_size() == map.dom_size() && tau.is_none_or(|t| t.ctx_size() == map.cod_size()))
        .then_some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coded_tripos::{b4, ch2, ch3, TriposTables};
    use crate::report::Status;

    fn point_tripos() -> CodedTripos {
        CodedTripos::try_from(TriposTables {
            sigma_size: 1,
            and: vec![vec![0]],
            or: vec![vec![0]],
            imp: vec![vec![0]],
            top: 0,
            bot: 0,
            meet: vec![0, 0],
            join: vec![0, 0],
            filter: 1,
        })
        .unwrap()
    }

    #[test]
    fn ch2_core_laws_pass() {
        let r = check_core_laws(&ch2(), &CheckBudget::exhaustive(2));
        assert!(r.passed(), "{}", r.to_json());
        assert!(r.is_exhaustive());
    }

    #[test]
    fn mutated_join_breaks_adjunction() {
        let t = ch2().mutate(|tb| tb.join[0b11] = 0).unwrap();
        let r = check_core_laws(&t, &CheckBudget::exhaustive(2));
        let entry = r.entry("exists.adjunction").unwrap();
        assert_eq!(entry.status, Status::Fail);
        // the documented witness reproduces as well
        let documented = Witness::Adjunction {
            quantifier: Quantifier::Exists,
            map: FinMap::terminal(2),
            sigma: PredCode(vec![0, 1]),
            tau: PredCode(vec![0]),
        };
        assert_eq!(replay(&t, &documented), Some(true));
        assert_eq!(replay(&t, entry.witness.as_ref().unwrap()), Some(true));
    }

    #[test]
    fn point_presentation_is_trivial() {
        let t = point_tripos();
        let r = run_all(&t, &CheckBudget::exhaustive(2));
        assert!(r.passed(), "{}", r.to_json());
        for n in 0..=2 {
            assert_eq!(px_quotient(&t, n).unwrap().algebra.size(), 1);
        }
    }

    #[test]
    fn beck_chevalley_examples() {
        for t in [ch2(), ch3()] {
            let r = check_beck_chevalley(&t, &CheckBudget::exhaustive(2));
            assert!(r.passed(), "{}", r.to_json());
        }
        // disjoint images give an empty pullback
        let g1 = FinMap::new(2, vec![0]).unwrap();
        let g2 = FinMap::new(2, vec![1, 1]).unwrap();
        let (f1, f2) = pullback(&g1, &g2);
        assert_eq!(f1.dom_size(), 0);
        assert_eq!(f2.dom_size(), 0);
        assert!(beck_chevalley_holds(
            &ch2(),
            Quantifier::Exists,
            &g1,
            &g2,
            &PredCode(vec![0, 1])
        ));
        assert!(beck_chevalley_holds(
            &ch2(),
            Quantifier::Forall,
            &g1,
            &g2,
            &PredCode(vec![0, 1])
        ));
    }

    #[test]
    fn quantifier_identity_context_sizes() {
        let t = ch2();
        let sizes: Vec<usize> = [
            QuantIdentity::MergeMeet,
            QuantIdentity::Distributivity,
            QuantIdentity::JoinMonotone,
        ]
        .into_iter()
        .map(|i| identity_sides(&t, i).0.len())
        .collect();
        assert_eq!(sizes, vec![16, 8, 9]);
    }

    #[test]
    fn quantifier_identities_pass_on_fixtures() {
        for t in [ch2(), ch3(), b4()] {
            let r = check_quantifier_identities(&t).unwrap();
            assert!(r.passed(), "{}", r.to_json());
        }
    }

    #[test]
    fn empty_meet_mutation_breaks_distributivity() {
        let t = ch2().mutate(|tb| tb.meet[0] = 0).unwrap();
        let r = check_quantifier_identities(&t).unwrap();
        let entry = r.entry("quant.distributivity").unwrap();
        assert_eq!(entry.status, Status::Fail);
        assert_eq!(
            entry.witness,
            Some(Witness::QuantIdentity {
                identity: QuantIdentity::Distributivity,
                point: Some(vec![0, 0])
            })
        );
    }

    #[test]
    fn sigma_too_large_for_quantifier_identities() {
        let h = crate::finite_order::lattice_structure(&crate::finite_order::FinPoset::chain(5))
            .unwrap();
        let t = crate::coded_tripos::forcing_presentation(&h);
        assert_eq!(
            check_quantifier_identities(&t).unwrap_err(),
            LawError::SigmaTooLarge(5)
        );
        let r = run_all(&t, &CheckBudget::exhaustive(1));
        assert_eq!(r.entry("quant.merge_meet").unwrap().status, Status::Skipped);
    }

    #[test]
    fn sampled_entries_are_labelled() {
        let budget = CheckBudget {
            max_ctx: 1,
            samples: 20,
            seed: 7,
        };
        let r = run_all(&ch2(), &budget);
        assert!(r.passed());
        assert!(r
            .entries
            .iter()
            .any(|e| e.coverage == Coverage::Sampled { count: 20, seed: 7 }));
    }

    #[test]
    fn run_all_is_deterministic() {
        let budget = CheckBudget {
            max_ctx: 1,
            samples: 30,
            seed: 3,
        };
        let t = ch2().mutate(|tb| tb.join[0b11] = 0).unwrap();
        assert_eq!(
            run_all(&t, &budget).to_json(),
            run_all(&t, &budget).to_json()
        );
    }
}
