//! Cyclic difference sets: the Singer construction, (almost) difference set
//! classification, completion elements, the geometric structure of the
//! non-completion translates, and developments (incidence graphs).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{prime_power, CubicExtension, FiniteField};
use crate::graph::BipartiteGraph;

/// A subset D of Z_n, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubset {
    n: u64,
    elems: Vec<u64>,
}

impl CyclicSubset {
    pub fn new(n: u64, elems: impl IntoIterator<Item = u64>) -> Result<Self> {
        assert!(n >= 1);
        let mut set = BTreeSet::new();
        for e in elems {
            if e >= n {
                return Err(Error::ElementOutOfRange { g: e, n });
            }
            set.insert(e);
        }
        Ok(CyclicSubset {
            n,
            elems: set.into_iter().collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, g: u64) -> bool {
        self.elems.binary_search(&g).is_ok()
    }

    pub fn with_element(&self, g: u64) -> Result<Self> {
        CyclicSubset::new(self.n, self.elems.iter().copied().chain(std::iter::once(g)))
    }

    pub fn translate(&self, s: u64) -> Self {
        CyclicSubset::new(self.n, self.elems.iter().map(|&d| (d + s) % self.n)).unwrap()
    }

    /// Parses a one-line comma-separated residue list, e.g. `"0,1,3,9"`.
    pub fn parse(n: u64, line: &str) -> Result<Self> {
        let elems: Vec<u64> = line
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>().map_err(|_| Error::MalformedGraphFile {
                    line: 1,
                    msg: format!("bad residue {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        CyclicSubset::new(n, elems)
    }

    pub fn to_line(&self) -> String {
        self.elems
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Ordered-difference counts of a subset: `count[g]` is the number of ordered
/// pairs (d, d') in D x D with d - d' = g mod n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    n: u64,
    counts: Vec<u64>,
}

impl DifferenceProfile {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn count(&self, g: u64) -> u64 {
        self.counts[g as usize]
    }

    /// Counts over nonzero residues, in residue order 1..n.
    pub fn nonzero_counts(&self) -> &[u64] {
        &self.counts[1..]
    }

    pub fn total(&self) -> u64 {
        self.nonzero_counts().iter().sum()
    }
}

pub fn difference_counts(d: &CyclicSubset) -> DifferenceProfile {
    let n = d.modulus();
    let mut counts = vec![0u64; n as usize];
    for &a in d.elements() {
        for &b in d.elements() {
            if a != b {
                counts[((a + n - b) % n) as usize] += 1;
            }
        }
    }
    counts[0] = 0;
    DifferenceProfile { n, counts }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    DifferenceSet { lambda: u64 },
    AlmostDifferenceSet { lambda: u64 },
    Neither,
}

impl Classification {
    pub fn label(&self) -> String {
        match self {
            Classification::DifferenceSet { lambda } => format!("difference_set({lambda})"),
            Classification::AlmostDifferenceSet { lambda } => {
                format!("almost_difference_set({lambda})")
            }
            Classification::Neither => "neither".to_string(),
        }
    }

    pub fn lambda(&self) -> Option<u64> {
        match self {
            Classification::DifferenceSet { lambda }
            | Classification::AlmostDifferenceSet { lambda } => Some(*lambda),
            Classification::Neither => None,
        }
    }
}

/// Classifies D by its nonzero difference counts. In strict mode an almost
/// difference set must realize both lambda and lambda + 1; relaxed mode
/// accepts counts contained in {lambda, lambda + 1}, so a set whose counts
/// are all equal still classifies as a difference set first.
pub fn classify_difference_structure(d: &CyclicSubset, strict: bool) -> Classification {
    let prof = difference_counts(d);
    let counts = prof.nonzero_counts();
    if counts.is_empty() {
        return Classification::DifferenceSet { lambda: 0 };
    }
    let lo = *counts.iter().min().unwrap();
    let hi = *counts.iter().max().unwrap();
    if lo == hi {
        return Classification::DifferenceSet { lambda: lo };
    }
    if hi == lo + 1 {
        // both values present here, so strict and relaxed agree
        return Classification::AlmostDifferenceSet { lambda: lo };
    }
    let _ = strict;
    Classification::Neither
}

/// Relaxed acceptance for completion checks: every nonzero count lies in
/// {lambda, lambda + 1} (a plain difference set with lambda or lambda + 1
/// everywhere also passes).
pub fn counts_within(d: &CyclicSubset, lambda: u64) -> bool {
    difference_counts(d)
        .nonzero_counts()
        .iter()
        .all(|&c| c == lambda || c == lambda + 1)
}

/// Singer planar difference set for a prime power q: with theta a primitive
/// element of GF(q^3), D = { i in [0, q^2+q+1) : theta^i in span(1, theta) }.
pub fn singer_difference_set(q: u64) -> Result<CyclicSubset> {
    let (p, h) = prime_power(q)?;
    let base = FiniteField::new(p, h, None)?;
    let ext = CubicExtension::new(base);
    let theta = ext.primitive_element();
    let n = q * q + q + 1;
    let mut elems = Vec::with_capacity((q + 1) as usize);
    let mut pow = ext.one();
    for i in 0..n {
        if ext.in_span_one_theta(&theta, &pow) {
            elems.push(i);
        }
        pow = ext.mul(&pow, &theta);
    }
    debug_assert_eq!(elems.len() as u64, q + 1);
    CyclicSubset::new(n, elems)
}

/// Completion elements of a planar difference set D in Z_n, n odd: all g with
/// D + {g} having every nonzero difference count in {1, 2}. Computed by the
/// halving exclusion rule (g excluded iff g in D or 2g = d + d' for distinct
/// d, d' in D) and cross-checked by reclassifying D + {g} for every g.
pub fn completion_elements(d: &CyclicSubset) -> Result<Vec<u64>> {
    let n = d.modulus();
    if n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    let prof = difference_counts(d);
    if prof.nonzero_counts().iter().any(|&c| c != 1) {
        return Err(Error::NotPlanar);
    }
    let inv2 = mod_inverse(2, n);
    let mut excluded = vec![false; n as usize];
    for &x in d.elements() {
        excluded[x as usize] = true;
    }
    for &x in d.elements() {
        for &y in d.elements() {
            if x < y {
                let g = ((x + y) % n * inv2) % n;
                excluded[g as usize] = true;
            }
        }
    }
    let completions: Vec<u64> = (0..n).filter(|&g| !excluded[g as usize]).collect();
    // double-entry check against the definition
    for g in 0..n {
        if d.contains(g) {
            continue;
        }
        let ok = counts_within(&d.with_element(g)?, 1);
        if ok != completions.binary_search(&g).is_ok() {
            return Err(Error::CompletionCrossCheck { g });
        }
    }
    Ok(completions)
}

/// Structure report for the non-completion translates d/2 + D/2, d in D.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NonCompletionStructure {
    pub blocks: Vec<Vec<u64>>,
    /// Blocks, the set D and the completion elements partition-check:
    /// union of blocks = Z_n minus the completion elements (D included).
    pub partition_ok: bool,
    pub pairwise_intersections_one: bool,
    pub no_triple_intersection: bool,
    pub q_even: bool,
    /// q even: every block is a translate of D (a line).
    pub blocks_are_lines: bool,
    /// q odd: no block has 3 points on a common translate of D.
    pub blocks_are_arcs: bool,
}

impl NonCompletionStructure {
    pub fn pass(&self) -> bool {
        self.partition_ok
            && self.pairwise_intersections_one
            && self.no_triple_intersection
            && if self.q_even {
                self.blocks_are_lines
            } else {
                self.blocks_are_arcs
            }
    }
}

pub fn non_completion_structure(d: &CyclicSubset) -> Result<NonCompletionStructure> {
    let n = d.modulus();
    if n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    let q = d.len() as u64 - 1; // |D| = q + 1 for a planar set
    let inv2 = mod_inverse(2, n);
    let blocks: Vec<Vec<u64>> = d
        .elements()
        .iter()
        .map(|&dd| {
            let mut b: Vec<u64> = d
                .elements()
                .iter()
                .map(|&dp| ((dd % n) * inv2 % n + (dp % n) * inv2 % n) % n)
                .collect();
            b.sort_unstable();
            b
        })
        .collect();

    let block_sets: Vec<BTreeSet<u64>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    let mut union = BTreeSet::new();
    for b in &block_sets {
        union.extend(b.iter().copied());
    }
    let completions: BTreeSet<u64> = completion_elements(d)?.into_iter().collect();
    let non_completion: BTreeSet<u64> = (0..n).filter(|g| !completions.contains(g)).collect();
    let partition_ok = union == non_completion;

    let mut pairwise = true;
    for i in 0..block_sets.len() {
        for j in (i + 1)..block_sets.len() {
            if block_sets[i].intersection(&block_sets[j]).count() != 1 {
                pairwise = false;
            }
        }
    }
    let mut no_triple = true;
    for g in 0..n {
        let hit = block_sets.iter().filter(|b| b.contains(&g)).count();
        if hit >= 3 {
            no_triple = false;
        }
    }

    let lines: BTreeSet<Vec<u64>> = (0..n)
        .map(|s| {
            let mut l: Vec<u64> = d.elements().iter().map(|&x| (x + s) % n).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let blocks_are_lines = blocks.iter().all(|b| lines.contains(b));
    let blocks_are_arcs = block_sets.iter().all(|b| {
        lines
            .iter()
            .all(|l| l.iter().filter(|x| b.contains(x)).count() <= 2)
    });

    Ok(NonCompletionStructure {
        blocks,
        partition_ok,
        pairwise_intersections_one: pairwise,
        no_triple_intersection: no_triple,
        q_even: q % 2 == 0,
        blocks_are_lines,
        blocks_are_arcs,
    })
}

/// Incidence graph between Z_n (points, class X) and the translates of D
/// (block indices g, class Y): i ~ g iff i - g in D.
pub fn development(d: &CyclicSubset) -> BipartiteGraph {
    let n = d.modulus() as usize;
    BipartiteGraph::from_rule(n, n, |i, g| {
        d.contains(((i + n - g) % n) as u64)
    })
}

pub fn mod_inverse(a: u64, n: u64) -> u64 {
    // extended Euclid; n odd and small here
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {n}");
    (t.rem_euclid(n as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> CyclicSubset {
        CyclicSubset::new(7, [1, 2, 4]).unwrap()
    }

    #[test]
    fn difference_counts_small() {
        let prof = difference_counts(&fano());
        assert!(prof.nonzero_counts().iter().all(|&c| c == 1));
        assert_eq!(prof.total(), 6);

        let d = CyclicSubset::new(5, [0, 1]).unwrap();
        let prof = difference_counts(&d);
        assert_eq!(prof.count(1), 1);
        assert_eq!(prof.count(4), 1);
        assert_eq!(prof.count(2), 0);
        assert_eq!(prof.count(3), 0);

        let d = CyclicSubset::new(5, [0, 1, 2]).unwrap();
        let prof = difference_counts(&d);
        assert_eq!(
            (prof.count(1), prof.count(2), prof.count(3), prof.count(4)),
            (2, 1, 1, 2)
        );
    }

    #[test]
    fn counts_sum_identity() {
        for (n, set) in [(7u64, vec![1, 2, 4]), (13, vec![0, 1, 3, 9]), (9, vec![0, 2, 3, 7])] {
            let d = CyclicSubset::new(n, set).unwrap();
            let k = d.len() as u64;
            assert_eq!(difference_counts(&d).total(), k * (k - 1));
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_difference_structure(&fano(), true),
            Classification::DifferenceSet { lambda: 1 }
        );
        let d = CyclicSubset::new(13, [0, 1, 3, 9, 4]).unwrap();
        assert_eq!(
            classify_difference_structure(&d, true),
            Classification::AlmostDifferenceSet { lambda: 1 }
        );
        // q=2 completion degenerates to a (7,4,2) difference set
        let d = CyclicSubset::new(7, [0, 1, 2, 4]).unwrap();
        assert_eq!(
            classify_difference_structure(&d, true),
            Classification::DifferenceSet { lambda: 2 }
        );
        assert!(counts_within(&d, 1));
    }

    #[test]
    fn singer_small() {
        for q in [2u64, 3, 4, 5] {
            let d = singer_difference_set(q).unwrap();
            assert_eq!(d.modulus(), q * q + q + 1);
            assert_eq!(d.len() as u64, q + 1);
            let prof = difference_counts(&d);
            assert!(prof.nonzero_counts().iter().all(|&c| c == 1), "q={q} not planar");
        }
        assert!(singer_difference_set(6).is_err());
    }

    #[test]
    fn completion_fano() {
        assert_eq!(completion_elements(&fano()).unwrap(), vec![0]);
    }

    #[test]
    fn completion_13() {
        let d = CyclicSubset::new(13, [0, 1, 3, 9]).unwrap();
        assert_eq!(completion_elements(&d).unwrap(), vec![4, 10, 12]);
    }

    #[test]
    fn completion_count_identity() {
        for q in [2u64, 3, 4, 5] {
            let d = singer_difference_set(q).unwrap();
            let n = d.modulus();
            let k = d.len() as u64;
            let comp = completion_elements(&d).unwrap();
            assert_eq!(comp.len() as u64, n - k - k * (k - 1) / 2);
            assert_eq!(comp.len() as u64, q * (q - 1) / 2);
            for &g in &comp {
                let c = classify_difference_structure(&d.with_element(g).unwrap(), false);
                assert_ne!(c, Classification::Neither);
            }
        }
    }

    #[test]
    fn completion_rejects_even_modulus() {
        let d = CyclicSubset::new(6, [0, 1]).unwrap();
        assert!(matches!(
            completion_elements(&d),
            Err(Error::EvenModulus { n: 6 })
        ));
    }

    #[test]
    fn geometry_q2_blocks_are_lines() {
        let s = non_completion_structure(&fano()).unwrap();
        assert_eq!(s.blocks.len(), 3);
        assert!(s.q_even);
        assert!(s.blocks_are_lines);
        assert!(s.pass());
    }

    #[test]
    fn geometry_q3_blocks_are_arcs() {
        let d = CyclicSubset::new(13, [0, 1, 3, 9]).unwrap();
        let s = non_completion_structure(&d).unwrap();
        assert_eq!(s.blocks.len(), 4);
        assert!(!s.q_even);
        assert!(s.blocks_are_arcs);
        assert!(s.pairwise_intersections_one);
        assert!(s.no_triple_intersection);
        assert!(s.pass());
    }

    #[test]
    fn development_heawood() {
        let g = development(&fano());
        assert_eq!((g.nx(), g.ny()), (7, 7));
        assert_eq!(g.edge_count(), 21);
        assert_eq!(g.is_regular(), Some(3));
        assert_eq!(g.count_c4(), 0);
    }

    #[test]
    fn development_z5() {
        let d = CyclicSubset::new(5, [0, 1, 2]).unwrap();
        let g = development(&d);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.is_regular(), Some(3));
        assert_eq!(g.count_c4(), 5);
    }

    #[test]
    fn development_adesign_13() {
        let d = CyclicSubset::new(13, [0, 1, 3, 9, 4]).unwrap();
        let g = development(&d);
        assert_eq!(g.edge_count(), 65);
        assert_eq!(g.is_regular(), Some(5));
        let hist = g.codegree_histogram(crate::graph::Side::X);
        assert!(hist.keys().all(|&c| c == 1 || c == 2));
    }

    #[test]
    fn development_codegree_matches_difference_counts() {
        // codegree(i, j) = |D intersect (D + (i - j))|
        for (n, set) in [(7u64, vec![1, 2, 4]), (13, vec![0, 1, 3, 9, 4]), (9, vec![0, 1, 2, 4])] {
            let d = CyclicSubset::new(n, set).unwrap();
            let g = development(&d);
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let diff = (i + n - j) % n;
                    let expect = d
                        .elements()
                        .iter()
                        .filter(|&&x| d.contains((x + diff) % n))
                        .count() as u64;
                    assert_eq!(
                        g.codegree(i as usize, j as usize, crate::graph::Side::X).unwrap(),
                        expect
                    );
                }
            }
        }
    }
}
