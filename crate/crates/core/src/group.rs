//! Cayley-style bipartite graphs over finite abelian groups: one class is the
//! translates {A + g}, the other the group elements, with edges given by
//! inclusion. The difference functionals h_t and Psi_2 drive both the odd-order
//! C4 formula and the search for good subsets.

use num_rational::Ratio;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::Rat;
use crate::error::{Error, Result};
use crate::graph::{binomial, BipartiteGraph};

/// A finite abelian group given as a product of cyclic factors. Elements are
/// mixed-radix indices into the tuple space, last factor fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    n: u64,
}

impl AbelianGroup {
    pub fn new(orders: impl Into<Vec<u64>>) -> Result<Self> {
        let orders = orders.into();
        if orders.is_empty() || orders.iter().any(|&o| o == 0) {
            return Err(Error::ElementOutOfRange { g: 0, n: 0 });
        }
        let n = orders.iter().product();
        Ok(AbelianGroup { orders, n })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn to_tuple(&self, mut g: u64) -> Vec<u64> {
        let mut t = vec![0; self.orders.len()];
        for (i, &o) in self.orders.iter().enumerate().rev() {
            t[i] = g % o;
            g /= o;
        }
        t
    }

    pub fn from_tuple(&self, t: &[u64]) -> u64 {
        t.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&c, &o)| acc * o + c % o)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ta, tb) = (self.to_tuple(a), self.to_tuple(b));
        let sum: Vec<u64> = ta
            .iter()
            .zip(&tb)
            .zip(&self.orders)
            .map(|((&x, &y), &o)| (x + y) % o)
            .collect();
        self.from_tuple(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let t: Vec<u64> = self
            .to_tuple(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &o)| (o - x) % o)
            .collect();
        self.from_tuple(&t)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn check_subset(&self, a: &[u64]) -> Result<Vec<u64>> {
        let mut set: Vec<u64> = a.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&g) = set.iter().find(|&&g| g >= self.n) {
            return Err(Error::ElementOutOfRange { g, n: self.n });
        }
        Ok(set)
    }
}

/// Ordered-difference counts c(g) = |{(a, a') : a - a' = g}| for all g,
/// indexed by group element. c(0) = |A|.
pub fn difference_counts(group: &AbelianGroup, a: &[u64]) -> Result<Vec<u64>> {
    let set = group.check_subset(a)?;
    let mut counts = vec![0u64; group.order() as usize];
    for &x in &set {
        for &y in &set {
            counts[group.sub(x, y) as usize] += 1;
        }
    }
    Ok(counts)
}

/// h_t = sum over nonzero g of c(g)^t.
pub fn h_t(group: &AbelianGroup, a: &[u64], t: u32) -> Result<u64> {
    let counts = difference_counts(group, a)?;
    Ok(counts.iter().skip(1).map(|&c| c.pow(t)).sum())
}

/// Psi_2 = sum over nonzero g of (c(g) - k(k-1)/(n-1))^2, exact.
pub fn psi2(group: &AbelianGroup, a: &[u64]) -> Result<Rat> {
    let counts = difference_counts(group, a)?;
    Ok(psi2_from_counts(&counts, group.order()))
}

fn psi2_from_counts(counts: &[u64], n: u64) -> Rat {
    let k = counts[0]; // c(0) = |A|
    let mean = Ratio::new((k * k.saturating_sub(1)) as i128, (n - 1) as i128);
    counts
        .iter()
        .skip(1)
        .map(|&c| {
            let d = Rat::from_integer(c as i128) - mean;
            d * d
        })
        .sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSubsetStats {
    pub orders: Vec<u64>,
    pub n: u64,
    pub set: Vec<u64>,
    pub counts: Vec<u64>,
    pub h1: u64,
    pub h2: u64,
    #[serde(skip)]
    pub psi2: Rat,
    #[serde(skip)]
    pub mean: Rat,
}

pub fn subset_stats(group: &AbelianGroup, a: &[u64]) -> Result<GroupSubsetStats> {
    let set = group.check_subset(a)?;
    let counts = difference_counts(group, &set)?;
    let k = set.len() as u64;
    let n = group.order();
    Ok(GroupSubsetStats {
        orders: group.orders().to_vec(),
        n,
        set,
        h1: counts.iter().skip(1).sum(),
        h2: counts.iter().skip(1).map(|&c| c * c).sum(),
        psi2: psi2_from_counts(&counts, n),
        mean: Ratio::new((k * k.saturating_sub(1)) as i128, (n - 1) as i128),
        counts,
    })
}

/// Construction: classes {A + g : g} and the group elements; x is adjacent to
/// the translate at g iff x - g lies in A. |A|-regular on both sides.
pub fn build_cayley_bipartite(group: &AbelianGroup, a: &[u64]) -> Result<BipartiteGraph> {
    let set = group.check_subset(a)?;
    let n = group.order() as usize;
    Ok(BipartiteGraph::from_rule(n, n, |x, g| {
        set.binary_search(&group.sub(x as u64, g as u64)).is_ok()
    }))
}

/// C4 count (n/4)(h2 - h1), valid only for odd group order.
pub fn c4_formula_odd(group: &AbelianGroup, a: &[u64]) -> Result<u64> {
    let n = group.order();
    if n % 2 == 0 {
        return Err(Error::EvenOrderFormula { n });
    }
    let counts = difference_counts(group, a)?;
    let h1: u64 = counts.iter().skip(1).sum();
    let h2: u64 = counts.iter().skip(1).map(|&c| c * c).sum();
    let num = n * (h2 - h1);
    assert_eq!(num % 4, 0, "n(h2 - h1) must be divisible by 4 for odd n");
    Ok(num / 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Local,
}

#[derive(Debug, Clone)]
pub struct TraceStep {
    pub evaluations: u64,
    pub value: Rat,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub mode: SearchMode,
    pub set: Vec<u64>,
    pub value: Rat,
    pub evaluations: u64,
    /// Value improvements in evaluation order.
    pub trace: Vec<TraceStep>,
}

pub const EXHAUSTIVE_CAP: u64 = 10_000_000;

/// Minimizes Psi_2 over k-subsets. Exhaustive mode returns the true minimum
/// with the lexicographically least witness; local mode hill-climbs by
/// single-element swaps (first improvement) from seeded random restarts and
/// returns the best value found, an upper bound on the minimum.
pub fn psi2_search(
    group: &AbelianGroup,
    k: u64,
    mode: SearchMode,
    seed: u64,
    budget: u64,
) -> Result<SearchResult> {
    let n = group.order();
    assert!(k >= 1 && k <= n, "k must be in 1..=n");
    match mode {
        SearchMode::Exhaustive => exhaustive_search(group, k),
        SearchMode::Local => local_search(group, k, seed, budget),
    }
}

fn exhaustive_search(group: &AbelianGroup, k: u64) -> Result<SearchResult> {
    let n = group.order();
    let total = binomial(n, k);
    if total > EXHAUSTIVE_CAP {
        return Err(Error::ExhaustiveCapExceeded {
            n,
            k,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let mut idx: Vec<u64> = (0..k).collect();
    let mut best: Option<(Rat, Vec<u64>)> = None;
    let mut evaluations = 0u64;
    let mut trace = Vec::new();
    loop {
        let value = psi2(group, &idx)?;
        evaluations += 1;
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            trace.push(TraceStep {
                evaluations,
                value,
            });
            best = Some((value, idx.clone()));
        }
        // next k-combination of 0..n in lexicographic order
        let mut i = k as usize;
        loop {
            if i == 0 {
                let (value, set) = best.unwrap();
                return Ok(SearchResult {
                    mode: SearchMode::Exhaustive,
                    set,
                    value,
                    evaluations,
                    trace,
                });
            }
            i -= 1;
            if idx[i] < n - (k - i as u64) {
                idx[i] += 1;
                for j in (i + 1)..k as usize {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn local_search(group: &AbelianGroup, k: u64, seed: u64, budget: u64) -> Result<SearchResult> {
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Rat, Vec<u64>)> = None;
    let mut evaluations = 0u64;
    let mut trace = Vec::new();
    let budget = budget.max(1);
    'restarts: while evaluations < budget {
        let mut pool: Vec<u64> = (0..n).collect();
        pool.shuffle(&mut rng);
        let mut current: Vec<u64> = pool[..k as usize].to_vec();
        current.sort_unstable();
        let mut value = psi2(group, &current)?;
        evaluations += 1;
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            trace.push(TraceStep {
                evaluations,
                value,
            });
            best = Some((value, current.clone()));
        }
        loop {
            let mut improved = false;
            'moves: for i in 0..k as usize {
                for g in 0..n {
                    if current.contains(&g) {
                        continue;
                    }
                    if evaluations >= budget {
                        break 'restarts;
                    }
                    let mut cand = current.clone();
                    cand[i] = g;
                    cand.sort_unstable();
                    let v = psi2(group, &cand)?;
                    evaluations += 1;
                    if v < value {
                        current = cand;
                        value = v;
                        if best.as_ref().map_or(true, |(b, _)| value < *b) {
                            trace.push(TraceStep {
                                evaluations,
                                value,
                            });
                            best = Some((value, current.clone()));
                        }
                        improved = true;
                        break 'moves;
                    }
                }
            }
            if !improved || value.is_zero() {
                break;
            }
        }
        if best.as_ref().map(|(b, _)| b.is_zero()) == Some(true) {
            break;
        }
        // keep the restart stream deterministic regardless of when climbing stops
        let _: u64 = rng.gen();
    }
    let (value, set) = best.unwrap();
    Ok(SearchResult {
        mode: SearchMode::Local,
        set,
        value,
        evaluations,
        trace,
    })
}
