//! The finite-field bipartite graphs G^(q,k): vertex classes F_q x {1..(q-1)/k},
//! an edge between (a,b) and (alpha,beta) iff s = g^beta * a + g^b * alpha is a
//! nonzero element of the order-k subgroup of F_q^x (shifted by g^delta).
//!
//! `predicted_stats` carries the closed-form predictions; `verify_mors`
//! measures the built graph against them check by check.

use num_rational::Ratio;
use serde::Serialize;

use crate::bounds::Rat;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::graph::{binomial, BipartiteGraph, Side};

#[derive(Debug, Clone)]
pub struct MorsParams {
    pub q: u64,
    pub k: u64,
    pub delta: i64,
    /// Defaults to the field's canonical primitive element.
    pub generator: Option<FieldElement>,
}

impl MorsParams {
    pub fn new(q: u64, k: u64) -> Self {
        MorsParams {
            q,
            k,
            delta: 0,
            generator: None,
        }
    }

    pub fn with_delta(mut self, delta: i64) -> Self {
        self.delta = delta;
        self
    }
}

fn setup(params: &MorsParams) -> Result<(FiniteField, FieldElement, u64)> {
    let field = FiniteField::of_order(params.q)?;
    let qm1 = params.q - 1;
    if params.k == 0 || qm1 % params.k != 0 {
        return Err(Error::BadSubgroupIndex {
            k: params.k,
            qm1,
        });
    }
    let g = match &params.generator {
        Some(g) => {
            if field.element_order(g)? != qm1 {
                return Err(Error::NotPrimitive);
            }
            g.clone()
        }
        None => field.primitive_element(),
    };
    Ok((field, g, qm1 / params.k))
}

/// Builds G^(q,k). Vertex order on both classes: field elements in canonical
/// enumeration (major) by b = 1..(q-1)/k ascending (minor).
pub fn build_mors(params: &MorsParams) -> Result<BipartiteGraph> {
    let (field, g, bsize) = setup(params)?;
    let q = params.q;
    let n = (q * bsize) as usize;
    let elems: Vec<FieldElement> = field.elements().collect();
    // g^b for b = 1..bsize
    let gpow: Vec<FieldElement> = (1..=bsize as i64)
        .map(|b| field.pow(&g, b).unwrap())
        .collect();
    let ginv_delta = field.pow(&g, -params.delta)?;
    let in_shifted_subgroup = |s: &FieldElement| -> bool {
        if field.is_zero(s) {
            return false;
        }
        let t = field.mul(s, &ginv_delta).unwrap();
        field.is_one(&field.pow(&t, params.k as i64).unwrap())
    };

    let vertex = |idx: usize| -> (&FieldElement, usize) {
        (&elems[idx / bsize as usize], idx % bsize as usize) // (element, b - 1)
    };

    let mut graph = BipartiteGraph::from_rule(n, n, |u, v| {
        let (a, b0) = vertex(u);
        let (alpha, beta0) = vertex(v);
        // s = g^beta * a + g^b * alpha
        let s = field
            .add(
                &field.mul(&gpow[beta0], a).unwrap(),
                &field.mul(&gpow[b0], alpha).unwrap(),
            )
            .unwrap();
        in_shifted_subgroup(&s)
    });
    let labels: Vec<String> = (0..n)
        .map(|idx| {
            let (e, b0) = vertex(idx);
            format!("({},{})", field.index_of(e), b0 + 1)
        })
        .collect();
    graph.x_labels = Some(labels.clone());
    graph.y_labels = Some(labels);
    Ok(graph)
}

/// Closed-form predictions for G^(q,k).
#[derive(Debug, Clone, Serialize)]
pub struct PredictedStats {
    pub q: u64,
    pub k: u64,
    pub n: u64,
    pub m: u64,
    pub degree: u64,
    pub codegree_values: Vec<u64>,
    pub zero_codegree_partners_per_vertex: u64,
    pub codegree_k_pairs: u64,
    pub c4: u64,
    pub k2t_t: Option<u64>,
    pub k2t_unordered: Option<u64>,
    pub k2t_ordered: Option<u64>,
    #[serde(skip)]
    pub c4_over_n2: Rat,
    #[serde(skip)]
    pub limit: Rat,
}

pub fn predicted_stats(q: u64, k: u64, t: Option<u64>) -> Result<PredictedStats> {
    let qm1 = q - 1;
    if k == 0 || qm1 % k != 0 {
        return Err(Error::BadSubgroupIndex { k, qm1 });
    }
    let n = q * qm1 / k;
    let m = q * qm1 * qm1 / k;
    let c4 = q * qm1 * qm1 * qm1 * (k - 1) / (4 * k);
    let codegree_k_pairs = q * qm1 * qm1 * qm1 / (2 * k * k);
    let (k2t_unordered, k2t_ordered) = match t {
        Some(t) => (
            Some(codegree_k_pairs * binomial(k, t)),
            Some(q * qm1 * qm1 * qm1 / (k * k) * binomial(k, t)),
        ),
        None => (None, None),
    };
    Ok(PredictedStats {
        q,
        k,
        n,
        m,
        degree: qm1,
        codegree_values: vec![0, k],
        zero_codegree_partners_per_vertex: qm1 / k,
        codegree_k_pairs,
        c4,
        k2t_t: t,
        k2t_unordered,
        k2t_ordered,
        c4_over_n2: Ratio::new(c4 as i128, (n * n) as i128),
        limit: Ratio::new((k * (k - 1)) as i128, 4),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub measured: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorsReport {
    pub q: u64,
    pub k: u64,
    pub delta: i64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub first_counterexample: Option<String>,
}

/// Builds the graph and measures it against `predicted_stats`.
pub fn verify_mors(params: &MorsParams) -> Result<MorsReport> {
    let graph = build_mors(params)?;
    let pred = predicted_stats(params.q, params.k, None)?;
    let mut checks = Vec::new();
    let mut first_counterexample = None;

    let push = |checks: &mut Vec<Check>, name: &str, expected: String, measured: String| {
        checks.push(Check {
            name: name.to_string(),
            pass: expected == measured,
            expected,
            measured,
        });
    };

    push(
        &mut checks,
        "edge_count",
        pred.m.to_string(),
        graph.edge_count().to_string(),
    );
    push(
        &mut checks,
        "regular_degree",
        format!("Some({})", pred.degree),
        format!("{:?}", graph.is_regular()),
    );

    let hist = graph.codegree_histogram(Side::X);
    let measured_values: Vec<u64> = hist.keys().copied().collect();
    push(
        &mut checks,
        "codegree_values",
        format!("{:?}", pred.codegree_values),
        format!("{measured_values:?}"),
    );
    if measured_values != pred.codegree_values && first_counterexample.is_none() {
        // name one offending pair
        'outer: for u in 0..graph.nx() {
            for v in (u + 1)..graph.nx() {
                let c = graph.codegree(u, v, Side::X).unwrap();
                if c != 0 && c != params.k {
                    first_counterexample = Some(format!(
                        "V1 pair ({u}, {v}) has codegree {c}, not in {{0, {}}}",
                        params.k
                    ));
                    break 'outer;
                }
            }
        }
    }

    let zero_pairs = hist.get(&0).copied().unwrap_or(0);
    push(
        &mut checks,
        "zero_codegree_pairs",
        (pred.n * pred.zero_codegree_partners_per_vertex / 2).to_string(),
        zero_pairs.to_string(),
    );
    push(
        &mut checks,
        "c4_count",
        pred.c4.to_string(),
        graph.count_c4().to_string(),
    );
    for t in 2..=params.k {
        let p = predicted_stats(params.q, params.k, Some(t))?;
        push(
            &mut checks,
            &format!("k2t_unordered_t{t}"),
            p.k2t_unordered.unwrap().to_string(),
            graph.count_k2t(t, Side::X).to_string(),
        );
    }
    push(
        &mut checks,
        "k2t_above_k_is_zero",
        "0".to_string(),
        graph.count_k2t(params.k + 1, Side::X).to_string(),
    );

    let pass = checks.iter().all(|c| c.pass);
    Ok(MorsReport {
        q: params.q,
        k: params.k,
        delta: params.delta,
        pass,
        checks,
        first_counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// Naive O(n^3) codegree histogram, independent of the bit-row path.
    fn naive_hist(g: &BipartiteGraph) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for u in 0..g.nx() {
            for v in (u + 1)..g.nx() {
                let mut c = 0u64;
                for y in 0..g.ny() {
                    if g.has_edge(u, y) && g.has_edge(v, y) {
                        c += 1;
                    }
                }
                *hist.entry(c).or_insert(0) += 1;
            }
        }
        hist
    }

    #[test]
    fn g52_basic_shape() {
        let g = build_mors(&MorsParams::new(5, 2)).unwrap();
        assert_eq!((g.nx(), g.ny()), (10, 10));
        assert_eq!(g.edge_count(), 40);
        assert_eq!(g.is_regular(), Some(4));
    }

    #[test]
    fn g52_measured_structure() {
        // The measured codegree histogram is {0: 5, 1: 20, 2: 20} and the C4
        // count is 20; cross-checked against a naive counter.
        let g = build_mors(&MorsParams::new(5, 2)).unwrap();
        let hist = g.codegree_histogram(Side::X);
        assert_eq!(hist, BTreeMap::from([(0, 5), (1, 20), (2, 20)]));
        assert_eq!(hist, naive_hist(&g));
        assert_eq!(g.count_c4(), 20);
    }

    #[test]
    fn g73_measured_structure() {
        let g = build_mors(&MorsParams::new(7, 3)).unwrap();
        assert_eq!(g.edge_count(), 84);
        assert_eq!(g.is_regular(), Some(6));
        let hist = g.codegree_histogram(Side::X);
        assert_eq!(hist, BTreeMap::from([(0, 7), (2, 42), (3, 42)]));
        assert_eq!(hist, naive_hist(&g));
        assert_eq!(g.count_c4(), 168);
        // no K_{2,t} above the max codegree
        assert_eq!(g.count_k2t(4, Side::X), 0);
    }

    #[test]
    fn delta_and_generator_invariance() {
        let base = build_mors(&MorsParams::new(5, 2)).unwrap();
        for delta in [1i64, 5, -3] {
            let shifted = build_mors(&MorsParams::new(5, 2).with_delta(delta)).unwrap();
            assert_eq!(shifted.edge_count(), base.edge_count());
            assert_eq!(
                shifted.codegree_histogram(Side::X),
                base.codegree_histogram(Side::X)
            );
            assert_eq!(shifted.count_c4(), base.count_c4());
        }
        // every primitive root of GF(13) gives the same statistics
        let field = FiniteField::of_order(13).unwrap();
        let base13 = build_mors(&MorsParams::new(13, 3)).unwrap();
        for e in field.elements() {
            if field.is_zero(&e) || field.element_order(&e).unwrap() != 12 {
                continue;
            }
            let mut p = MorsParams::new(13, 3);
            p.generator = Some(e);
            let g = build_mors(&p).unwrap();
            assert_eq!(g.count_c4(), base13.count_c4());
            assert_eq!(
                g.codegree_histogram(Side::X),
                base13.codegree_histogram(Side::X)
            );
        }
    }

    #[test]
    fn k_equals_q_minus_1_edge_case() {
        // B = {1}, n = q; all distinct pairs end up at codegree q - 2
        let g = build_mors(&MorsParams::new(7, 6)).unwrap();
        assert_eq!((g.nx(), g.ny()), (7, 7));
        assert_eq!(g.edge_count(), 42);
        let hist = g.codegree_histogram(Side::X);
        assert_eq!(hist, BTreeMap::from([(5, 21)]));
        assert_eq!(g.count_c4(), 210);
    }

    #[test]
    fn bad_parameters_rejected() {
        assert!(matches!(
            build_mors(&MorsParams::new(7, 4)),
            Err(Error::BadSubgroupIndex { .. })
        ));
        let field = FiniteField::of_order(7).unwrap();
        let mut p = MorsParams::new(7, 3);
        p.generator = Some(field.from_integer(2)); // order 3, not primitive
        assert!(matches!(build_mors(&p), Err(Error::NotPrimitive)));
    }

    #[test]
    fn predicted_stats_closed_forms() {
        let p = predicted_stats(5, 2, None).unwrap();
        assert_eq!((p.n, p.m, p.degree, p.c4), (10, 40, 4, 40));
        let p = predicted_stats(7, 3, Some(3)).unwrap();
        assert_eq!((p.n, p.m, p.c4), (14, 84, 252));
        assert_eq!(p.k2t_unordered, Some(84));
        assert_eq!(p.k2t_ordered, Some(168));
        let p = predicted_stats(13, 4, None).unwrap();
        assert_eq!((p.n, p.m, p.c4), (39, 468, 4212));
        assert_eq!(p.c4_over_n2, Ratio::new(36, 13));
        assert_eq!(p.limit, Ratio::new(3, 1));
    }

    #[test]
    fn verify_reports_the_divergence_from_predictions() {
        // The built graph matches the predictions on edge count and
        // regularity but not on the codegree/C4 closed forms; verify_mors
        // must say so rather than hide it.
        let r = verify_mors(&MorsParams::new(5, 2)).unwrap();
        assert!(!r.pass);
        let by_name = |n: &str| r.checks.iter().find(|c| c.name == n).unwrap();
        assert!(by_name("edge_count").pass);
        assert!(by_name("regular_degree").pass);
        assert!(!by_name("codegree_values").pass);
        assert!(!by_name("c4_count").pass);
        assert!(by_name("k2t_above_k_is_zero").pass);
        assert!(r.first_counterexample.is_some());
    }
}
