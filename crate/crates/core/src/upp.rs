//! Uniform position: every subset of a given size has the Hilbert function
//! min{H(X, i), n}. Checked exhaustively or on sampled subsets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{collinear, PointConfiguration};
use crate::hilbert::{evaluation_matrix, profile, truncation_predict, HilbertProfile};
use crate::linalg::{kernel_basis, rank, ExactMatrix};

pub const DEFAULT_UPP_BUDGET: u128 = 1_000_000;

const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UppMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UppVerdict {
    Holds,
    Fails,
    HoldsOnSample,
}

/// Two subsets of the same size whose Hilbert values differ at `degree`.
/// `subset` breaks the truncation formula; `other` is the first subset of
/// the same size found with a different value, when one was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UppWitness {
    pub size: usize,
    pub degree: usize,
    pub predicted: usize,
    pub subset: Vec<usize>,
    pub value: usize,
    pub other: Option<Vec<usize>>,
    pub other_value: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeStats {
    pub size: usize,
    pub examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UppReport {
    pub mode: UppMode,
    pub verdict: UppVerdict,
    pub witness: Option<UppWitness>,
    pub stats: Vec<SizeStats>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Advance to the next k-subset of 0..n in lex order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

struct Checker<'a> {
    profile: HilbertProfile,
    /// evaluation matrices of X in degrees 0..
    matrices: &'a [ExactMatrix],
}

impl Checker<'_> {
    /// Degrees that need checking for subsets of size n: up to the first i
    /// with H(X, i) ≥ n, after which both sides equal n.
    fn degrees(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        let last = (0..).find(|&i| self.profile.value(i) >= n).unwrap();
        0..=last
    }

    fn value(&self, subset: &[usize], i: usize) -> usize {
        rank(&self.matrices[i].select_rows(subset))
    }

    /// First degree where the subset breaks the truncation formula.
    fn violation(&self, subset: &[usize]) -> Option<(usize, usize)> {
        let n = subset.len();
        self.degrees(n).find_map(|i| {
            let v = self.value(subset, i);
            (v != truncation_predict(&self.profile, n, i)).then_some((i, v))
        })
    }
}

fn witness_for<I>(checker: &Checker<'_>, subset: Vec<usize>, degree: usize, value: usize, candidates: I) -> UppWitness
where
    I: Iterator<Item = Vec<usize>>,
{
    let n = subset.len();
    let other = candidates
        .map(|c| {
            let v = checker.value(&c, degree);
            (c, v)
        })
        .find(|(_, v)| *v != value);
    UppWitness {
        size: n,
        degree,
        predicted: truncation_predict(&checker.profile, n, degree),
        subset,
        value,
        other_value: other.as_ref().map(|o| o.1),
        other: other.map(|o| o.0),
    }
}

struct Combinations {
    current: Option<Vec<usize>>,
    n: usize,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut c = out.clone();
        self.current = next_combination(&mut c, self.n).then_some(c);
        Some(out)
    }
}

fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        current: (k <= n).then(|| (0..k).collect()),
        n,
    }
}

/// Checks the truncation formula on subsets of X. Exhaustive mode visits
/// every nonempty subset (sizes in increasing order, stopping at the first
/// failing size) and refuses when their number exceeds `budget`. Sampled
/// mode draws `sample_count` subsets of each size from seeded shuffles and
/// never reports [`UppVerdict::Holds`].
pub fn upp_check(
    x: &PointConfiguration,
    mode: UppMode,
    sample_count: usize,
    seed: u64,
    budget: u128,
) -> Result<UppReport> {
    let big_n = x.len();
    let prof = profile(x)?;
    if mode == UppMode::Exhaustive {
        let needed: u128 = (1..=big_n).map(|k| binomial(big_n, k)).sum();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
    }
    let max_degree = prof.t;
    let matrices: Vec<ExactMatrix> = (0..=max_degree).map(|i| evaluation_matrix(x.points(), i)).collect();
    let checker = Checker {
        profile: prof,
        matrices: &matrices,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = Vec::new();
    for n in 1..=big_n {
        let subsets: Box<dyn Iterator<Item = Vec<usize>>> = match mode {
            UppMode::Exhaustive => Box::new(combinations(big_n, n)),
            UppMode::Sampled => {
                let mut idx: Vec<usize> = (0..big_n).collect();
                let samples: Vec<Vec<usize>> = (0..sample_count)
                    .map(|_| {
                        idx.shuffle(&mut rng);
                        let mut s = idx[..n].to_vec();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                Box::new(samples.into_iter())
            }
        };
        let mut examined = 0u64;
        let mut subsets = subsets.peekable();
        let mut found = None;
        while subsets.peek().is_some() {
            let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
            let hit = chunk
                .par_iter()
                .enumerate()
                .find_map_first(|(k, s)| checker.violation(s).map(|v| (k, v)));
            match hit {
                Some((k, (degree, value))) => {
                    examined += k as u64 + 1;
                    found = Some((chunk[k].clone(), degree, value, chunk));
                    break;
                }
                None => examined += chunk.len() as u64,
            }
        }
        stats.push(SizeStats { size: n, examined });
        if let Some((subset, degree, value, chunk)) = found {
            let witness = match mode {
                UppMode::Exhaustive => witness_for(&checker, subset, degree, value, combinations(big_n, n)),
                UppMode::Sampled => witness_for(&checker, subset, degree, value, chunk.into_iter().chain(subsets)),
            };
            return Ok(UppReport {
                mode,
                verdict: UppVerdict::Fails,
                witness: Some(witness),
                stats,
            });
        }
    }
    Ok(UppReport {
        mode,
        verdict: match mode {
            UppMode::Exhaustive => UppVerdict::Holds,
            UppMode::Sampled => UppVerdict::HoldsOnSample,
        },
        witness: None,
        stats,
    })
}

/// Index triples (i < j < k) of collinear points.
pub fn collinear_triples(x: &PointConfiguration) -> Vec<[usize; 3]> {
    let pts = x.points();
    let n = pts.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).flat_map(move |j| {
                (j + 1..n)
                    .filter(move |&k| collinear(&pts[i], &pts[j], &pts[k]))
                    .map(move |k| [i, j, k])
            })
        })
        .collect()
}

/// Outcome of testing whether degree-l curves through a subset X' must
/// contain all of X.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub degree: usize,
    pub subset_size: usize,
    /// h¹ of the ideal sheaf of X' twisted by l
    pub h1_subset: usize,
    pub h0_subset: usize,
    pub h0_full: usize,
    /// whether h¹ ≠ 0, so that the containment is predicted
    pub triggered: bool,
    /// canonical kernels of X' and X coincide (vacuously true when not triggered)
    pub holds: bool,
    /// X was verified or assumed to have uniform position
    pub upp_assumed: bool,
}

pub fn prop1_containment_check(
    x: &PointConfiguration,
    x_sub: &PointConfiguration,
    l: usize,
    upp_assumed: bool,
) -> Result<ContainmentReport> {
    if x_sub.field() != x.field() || x_sub.points().iter().any(|p| x.index_of(p).is_none()) {
        return Err(Error::NotASubset);
    }
    let sub_m = evaluation_matrix(x_sub.points(), l);
    let full_m = evaluation_matrix(x.points(), l);
    let cols = full_m.cols();
    let h_sub = if x_sub.is_empty() { 0 } else { rank(&sub_m) };
    let h_full = rank(&full_m);
    let h1_subset = x_sub.len() - h_sub;
    let triggered = h1_subset != 0;
    let holds = !triggered || kernel_basis(&sub_m) == kernel_basis(&full_m);
    Ok(ContainmentReport {
        degree: l,
        subset_size: x_sub.len(),
        h1_subset,
        h0_subset: cols - h_sub,
        h0_full: cols - h_full,
        triggered,
        holds,
        upp_assumed,
    })
}
