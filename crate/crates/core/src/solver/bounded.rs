use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::engine::{search, SearchConfig, SearchOutcome, Sizes};
use super::{find_coloring, CheckedGroup, ListAssignment, ShiftAssignment, SolverError, Verdict, Witness};
use crate::graph::{degeneracy_order, line_graph, Graph, GraphError};
use crate::group::{enumerate_abelian_groups, AbelianGroup, ElementSet};

#[derive(Debug, Clone)]
pub struct BoundedOptions {
    /// Answer `HoldsByTheorem("greedy")` when `degeneracy + 1 <= k`.
    pub fast_path: bool,
    pub search: SearchConfig,
}

impl Default for BoundedOptions {
    fn default() -> Self {
        BoundedOptions {
            fast_path: true,
            search: SearchConfig::default(),
        }
    }
}

/// Search every group of each order for an uncolourable instance with the
/// given list sizes.
fn run_orders(g: &Graph, sizes: &[usize], orders: &[usize], cfg: &SearchConfig) -> Result<Verdict, SolverError> {
    let mut checked = Vec::new();
    for &order in orders {
        for a in enumerate_abelian_groups(order)? {
            match search(g, &a, &Sizes::PerVertex(sizes.to_vec()), cfg)? {
                SearchOutcome::Refuted { lists, shift, .. } => {
                    return Ok(Verdict::Refuted {
                        witness: Box::new(Witness::new(g, a, lists, shift)),
                    })
                }
                SearchOutcome::Colorable(stats) => checked.push(CheckedGroup { group: a, stats }),
            }
        }
    }
    Ok(Verdict::VerifiedUpToBound {
        max_order: orders.iter().copied().max().unwrap_or(0),
        checked,
    })
}

/// Bounded check of k-group choosability over groups of order
/// `max(k, 2)..=max_order`. The trivial group is never used.
pub fn is_k_group_choosable_bounded(
    g: &Graph,
    k: usize,
    max_order: usize,
    opts: &BoundedOptions,
) -> Result<Verdict, SolverError> {
    if k == 0 {
        return Err(SolverError::InvalidArgument("k must be at least 1".into()));
    }
    if max_order < k {
        return Err(SolverError::InvalidArgument(format!(
            "max order {max_order} is below k = {k}"
        )));
    }
    if opts.fast_path && degeneracy_order(g).degeneracy < k {
        return Ok(Verdict::HoldsByTheorem { rule: "greedy".into() });
    }
    let orders: Vec<usize> = (k.max(2)..=max_order).collect();
    run_orders(g, &vec![k; g.n()], &orders, &opts.search)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerWitness {
    pub k: usize,
    pub witness: Witness,
}

/// Smallest `k` with no refutation found, plus refutations for every
/// smaller `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceNumber {
    pub value: usize,
    /// True when the upper bound is a theorem rather than a bounded search.
    pub exact: bool,
    pub lower: Vec<LowerWitness>,
    pub upper: Verdict,
}

pub fn group_choice_number_bounded(
    g: &Graph,
    k_max: usize,
    order_margin: usize,
    opts: &BoundedOptions,
) -> Result<ChoiceNumber, SolverError> {
    let mut lower = Vec::new();
    for k in 1..=k_max {
        let v = is_k_group_choosable_bounded(g, k, k + order_margin, opts)?;
        match v {
            Verdict::Refuted { witness } => lower.push(LowerWitness { k, witness: *witness }),
            upper => {
                return Ok(ChoiceNumber {
                    value: k,
                    exact: matches!(upper, Verdict::HoldsByTheorem { .. }),
                    lower,
                    upper,
                })
            }
        }
    }
    Err(SolverError::Exhausted(k_max))
}

/// The group choice number of the line graph.
pub fn edge_group_choice_number_bounded(
    g: &Graph,
    k_max: usize,
    order_margin: usize,
    opts: &BoundedOptions,
) -> Result<ChoiceNumber, SolverError> {
    group_choice_number_bounded(&line_graph(g)?, k_max, order_margin, opts)
}

/// Lists of size `d(v)` over groups of order `max(Δ, 2)..=max_order`.
pub fn is_d_group_choosable_bounded(
    g: &Graph,
    max_order: usize,
    opts: &BoundedOptions,
) -> Result<Verdict, SolverError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let orders: Vec<usize> = (g.max_degree().max(2)..=max_order).collect();
    run_orders(g, &g.degrees(), &orders, &opts.search)
}

/// Every group of each listed order, every list assignment with the given
/// sizes and every shift: colourable, or a witness.
pub fn check_reducible(
    h: &Graph,
    list_sizes: &[usize],
    orders: &[usize],
    opts: &BoundedOptions,
) -> Result<Verdict, SolverError> {
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    run_orders(h, list_sizes, &orders, &opts.search)
}

#[derive(Debug, Clone)]
pub struct AlOptions {
    /// Largest shift space `|A|^|E|` searched exhaustively.
    pub max_space: u128,
    /// `(samples, seed)` for over-cap instances.
    pub sample: Option<(u64, u64)>,
    pub search: SearchConfig,
}

impl Default for AlOptions {
    fn default() -> Self {
        AlOptions {
            max_space: 1 << 24,
            sample: None,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlOutcome {
    Colorable,
    NotColorable { shift: ShiftAssignment },
    NoFailureSampled { samples: u64 },
}

/// Is `(g, a, l)` colourable for every shift? The lists are fixed, so shift
/// normalisation cannot be used and every shift on every edge is searched.
pub fn is_al_colorable(
    g: &Graph,
    a: &AbelianGroup,
    l: &ListAssignment,
    opts: &AlOptions,
) -> Result<AlOutcome, SolverError> {
    l.validate(g, a)?;
    let space = (a.order() as u128).saturating_pow(g.m() as u32);
    if space > opts.max_space {
        let Some((samples, seed)) = opts.sample else {
            return Err(SolverError::OverCap {
                space,
                cap: opts.max_space,
            });
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let f = ShiftAssignment::new((0..g.m()).map(|_| rng.gen_range(0..a.order()) as u8).collect());
            if find_coloring(g, a, l, &f)?.is_none() {
                return Ok(AlOutcome::NotColorable { shift: f });
            }
        }
        return Ok(AlOutcome::NoFailureSampled { samples });
    }
    match search(g, a, &Sizes::Fixed(l.clone()), &opts.search)? {
        SearchOutcome::Colorable(_) => Ok(AlOutcome::Colorable),
        SearchOutcome::Refuted { shift, .. } => Ok(AlOutcome::NotColorable { shift }),
    }
}

/// Random instances with the given list sizes over every group of each
/// order, cycling through the groups. Never reports verification.
pub fn sample_refutation(
    g: &Graph,
    sizes: &[usize],
    orders: &[usize],
    samples: u64,
    seed: u64,
) -> Result<Verdict, SolverError> {
    let mut groups = Vec::new();
    for &o in orders {
        groups.extend(enumerate_abelian_groups(o)?);
    }
    if sizes.len() != g.n() {
        return Err(SolverError::Arity {
            what: "list sizes",
            expected: g.n(),
            actual: sizes.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !groups.is_empty() {
        for i in 0..samples {
            let a = &groups[(i % groups.len() as u64) as usize];
            if let Some(&big) = sizes.iter().find(|&&k| k > a.order()) {
                return Err(SolverError::ListTooLarge {
                    size: big,
                    order: a.order(),
                });
            }
            let lists = ListAssignment::new(
                sizes
                    .iter()
                    .map(|&k| {
                        sample(&mut rng, a.order(), k)
                            .into_iter()
                            .map(|x| x as u8)
                            .collect::<ElementSet>()
                    })
                    .collect(),
            );
            let f = ShiftAssignment::new((0..g.m()).map(|_| rng.gen_range(0..a.order()) as u8).collect());
            if find_coloring(g, a, &lists, &f)?.is_none() {
                return Ok(Verdict::Refuted {
                    witness: Box::new(Witness::new(g, a.clone(), lists, f)),
                });
            }
        }
    }
    Ok(Verdict::NoRefutationSampled {
        samples,
        seed,
        max_order: orders.iter().copied().max().unwrap_or(0),
    })
}
