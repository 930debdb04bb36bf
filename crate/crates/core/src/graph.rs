//! Bipartite graphs with bit-row adjacency and exact C4 / K_{2,t} / K_{a,b}
//! counting. Graphs are immutable after construction; adding edges yields a
//! new graph.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn label(&self) -> &'static str {
        match self {
            Side::X => "X",
            Side::Y => "Y",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    nx: usize,
    ny: usize,
    words: usize,
    /// nx rows of ny bits each.
    rows: Vec<u64>,
    /// Optional display labels, e.g. field pairs for the G^(q,k) vertices.
    pub x_labels: Option<Vec<String>>,
    pub y_labels: Option<Vec<String>>,
}

fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// C(n, k) with widening; exact for desk-scale arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(num).expect("binomial overflow")
}

impl BipartiteGraph {
    pub fn empty(nx: usize, ny: usize) -> Self {
        let words = ny.div_ceil(64);
        BipartiteGraph {
            nx,
            ny,
            words,
            rows: vec![0u64; nx * words],
            x_labels: None,
            y_labels: None,
        }
    }

    pub fn from_edges(nx: usize, ny: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(nx, ny);
        for (x, y) in edges {
            assert!(x < nx && y < ny, "edge ({x},{y}) out of range");
            g.rows[x * g.words + y / 64] |= 1u64 << (y % 64);
        }
        g
    }

    pub fn from_rule(nx: usize, ny: usize, rule: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(nx, ny);
        for x in 0..nx {
            for y in 0..ny {
                if rule(x, y) {
                    g.rows[x * g.words + y / 64] |= 1u64 << (y % 64);
                }
            }
        }
        g
    }

    /// A new graph with one extra edge.
    pub fn with_edge(&self, x: usize, y: usize) -> Self {
        let mut g = self.clone();
        g.rows[x * g.words + y / 64] |= 1u64 << (y % 64);
        g
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.rows[x * self.words..(x + 1) * self.words]
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.nx {
            for y in 0..self.ny {
                if self.has_edge(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Column bitsets (the transpose's rows).
    fn columns(&self) -> Vec<u64> {
        let words = self.nx.div_ceil(64);
        let mut cols = vec![0u64; self.ny * words];
        for x in 0..self.nx {
            for y in 0..self.ny {
                if self.has_edge(x, y) {
                    cols[y * words + x / 64] |= 1u64 << (x % 64);
                }
            }
        }
        cols
    }

    fn side_rows(&self, side: Side) -> (usize, usize, Vec<u64>) {
        match side {
            Side::X => (self.nx, self.words, self.rows.clone()),
            Side::Y => (self.ny, self.nx.div_ceil(64), self.columns()),
        }
    }

    pub fn degrees(&self, side: Side) -> Vec<u64> {
        match side {
            Side::X => (0..self.nx)
                .map(|x| self.row(x).iter().map(|w| w.count_ones() as u64).sum())
                .collect(),
            Side::Y => {
                let mut d = vec![0u64; self.ny];
                for x in 0..self.nx {
                    for y in 0..self.ny {
                        if self.has_edge(x, y) {
                            d[y] += 1;
                        }
                    }
                }
                d
            }
        }
    }

    pub fn codegree(&self, u: usize, v: usize, side: Side) -> Result<u64> {
        let (n, words, rows) = self.side_rows(side);
        if u >= n {
            return Err(Error::VertexOutOfRange { v: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        if u == v {
            return Err(Error::EqualVertices);
        }
        let a = &rows[u * words..(u + 1) * words];
        let b = &rows[v * words..(v + 1) * words];
        Ok(a.iter()
            .zip(b)
            .map(|(x, y)| (x & y).count_ones() as u64)
            .sum())
    }

    pub fn codegree_histogram(&self, side: Side) -> BTreeMap<u64, u64> {
        let (n, words, rows) = self.side_rows(side);
        let mut hist = BTreeMap::new();
        for u in 0..n {
            for v in (u + 1)..n {
                let a = &rows[u * words..(u + 1) * words];
                let b = &rows[v * words..(v + 1) * words];
                let c: u64 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| (x & y).count_ones() as u64)
                    .sum();
                *hist.entry(c).or_insert(0) += 1;
            }
        }
        hist
    }

    /// Number of distinct 4-cycles: sum over unordered X-pairs of C(codeg, 2).
    pub fn count_c4(&self) -> u64 {
        self.count_c4_side(Side::X)
    }

    pub fn count_c4_side(&self, side: Side) -> u64 {
        self.codegree_histogram(side)
            .iter()
            .map(|(&c, &cnt)| binom2(c) * cnt)
            .sum()
    }

    /// Unordered K_{2,t} copies whose 2-side lies in `side`.
    pub fn count_k2t(&self, t: u64, side: Side) -> u64 {
        assert!(t >= 2);
        self.codegree_histogram(side)
            .iter()
            .map(|(&c, &cnt)| binomial(c, t) * cnt)
            .sum()
    }

    /// K_{a,b} copies with the a-side in `side`: sum over a-subsets A of
    /// C(d(A), b). Intended for small a.
    pub fn count_kab(&self, a: u64, b: u64, side: Side) -> u64 {
        let (n, words, rows) = self.side_rows(side);
        if a == 0 || b == 0 || a > n as u64 {
            return 0;
        }
        let a = a as usize;
        let mut total = 0u64;
        let mut subset: Vec<usize> = (0..a).collect();
        let mut buf = vec![0u64; words];
        loop {
            buf.copy_from_slice(&rows[subset[0] * words..(subset[0] + 1) * words]);
            for &v in &subset[1..] {
                for (w, r) in buf.iter_mut().zip(&rows[v * words..(v + 1) * words]) {
                    *w &= r;
                }
            }
            let d: u64 = buf.iter().map(|w| w.count_ones() as u64).sum();
            total += binomial(d, b);
            // next a-combination of [0, n)
            let mut i = a;
            loop {
                if i == 0 {
                    return total;
                }
                i -= 1;
                if subset[i] != i + n - a {
                    subset[i] += 1;
                    for j in (i + 1)..a {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn is_regular(&self) -> Option<u64> {
        let dx = self.degrees(Side::X);
        let dy = self.degrees(Side::Y);
        let d = *dx.first().or(dy.first()).unwrap_or(&0);
        if dx.iter().chain(dy.iter()).all(|&x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Text format: line 1 `n_X n_Y m`, then m lines `x y`, 0-based, sorted
    /// lexicographically. `#` lines are comments.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        let edges = self.edges(); // already lexicographic
        writeln!(f, "{} {} {}", self.nx, self.ny, edges.len())?;
        for (x, y) in edges {
            writeln!(f, "{x} {y}")?;
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let f = BufReader::new(std::fs::File::open(path)?);
        let mut header: Option<(usize, usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, line) in f.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::MalformedGraphFile {
                        line: lineno + 1,
                        msg: format!("expected integer, got {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            match header {
                None => {
                    if nums.len() != 3 {
                        return Err(Error::MalformedGraphFile {
                            line: lineno + 1,
                            msg: "header must be `n_X n_Y m`".into(),
                        });
                    }
                    header = Some((nums[0], nums[1], nums[2]));
                }
                Some((nx, ny, _)) => {
                    if nums.len() != 2 || nums[0] >= nx || nums[1] >= ny {
                        return Err(Error::MalformedGraphFile {
                            line: lineno + 1,
                            msg: format!("bad edge line {line:?}"),
                        });
                    }
                    edges.push((nums[0], nums[1]));
                }
            }
        }
        let (nx, ny, m) = header.ok_or(Error::MalformedGraphFile {
            line: 1,
            msg: "missing header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::MalformedGraphFile {
                line: edges.len() + 1,
                msg: format!("header promises {m} edges, file has {}", edges.len()),
            });
        }
        Ok(Self::from_edges(nx, ny, edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heawood() -> BipartiteGraph {
        let d = [1u64, 2, 4];
        BipartiteGraph::from_rule(7, 7, |i, g| d.contains(&(((i + 7 - g) % 7) as u64)))
    }

    #[test]
    fn degrees_and_regularity() {
        let h = heawood();
        assert_eq!(h.degrees(Side::X), vec![3; 7]);
        assert_eq!(h.degrees(Side::Y), vec![3; 7]);
        assert_eq!(h.is_regular(), Some(3));

        let e = BipartiteGraph::empty(3, 3);
        assert_eq!(e.degrees(Side::X), vec![0, 0, 0]);

        let star = BipartiteGraph::from_edges(3, 3, [(0, 0), (0, 1), (0, 2)]);
        assert_eq!(star.is_regular(), None);
    }

    #[test]
    fn codegrees() {
        let h = heawood();
        for u in 0..7 {
            for v in (u + 1)..7 {
                assert_eq!(h.codegree(u, v, Side::X).unwrap(), 1);
            }
        }
        assert_eq!(h.codegree_histogram(Side::X), BTreeMap::from([(1, 21)]));

        let k33 = BipartiteGraph::from_rule(3, 3, |_, _| true);
        assert_eq!(k33.codegree(0, 2, Side::X).unwrap(), 3);
        assert!(matches!(h.codegree(1, 1, Side::X), Err(Error::EqualVertices)));
        assert!(h.codegree(0, 9, Side::X).is_err());
    }

    #[test]
    fn c4_counts() {
        assert_eq!(heawood().count_c4(), 0);
        // Fano development plus one non-incidence edge gains exactly 3 C4s
        let h = heawood();
        let (x, y) = (0..7)
            .flat_map(|x| (0..7).map(move |y| (x, y)))
            .find(|&(x, y)| !h.has_edge(x, y))
            .unwrap();
        assert_eq!(h.with_edge(x, y).count_c4(), 3);
    }

    #[test]
    fn c4_same_from_both_sides() {
        let d = [0u64, 1, 2];
        let g = BipartiteGraph::from_rule(5, 5, |i, b| d.contains(&(((i + 5 - b) % 5) as u64)));
        assert_eq!(g.count_c4_side(Side::X), g.count_c4_side(Side::Y));
        assert_eq!(g.count_c4(), 5);
    }

    #[test]
    fn double_counting_identity() {
        // sum over X-pairs of codegree = sum over y of C(d(y), 2)
        for g in [heawood(), BipartiteGraph::from_rule(4, 6, |x, y| (x * y) % 3 != 1)] {
            let lhs: u64 = g
                .codegree_histogram(Side::X)
                .iter()
                .map(|(&c, &cnt)| c * cnt)
                .sum();
            let rhs: u64 = g.degrees(Side::Y).iter().map(|&d| d * (d - 1) / 2).sum();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn k2t_and_kab() {
        let k33 = BipartiteGraph::from_rule(3, 3, |_, _| true);
        assert_eq!(k33.count_k2t(3, Side::X), 3);
        assert_eq!(k33.count_kab(3, 3, Side::X), 1);
        assert_eq!(heawood().count_k2t(2, Side::X), 0);
        assert_eq!(heawood().count_kab(2, 2, Side::X), 0);
        // t above the max codegree
        assert_eq!(k33.count_k2t(4, Side::X), 0);
    }

    #[test]
    fn kab_equals_c4_at_2_2() {
        for g in [
            heawood(),
            BipartiteGraph::from_rule(5, 5, |x, y| (x + 2 * y) % 5 < 3),
            BipartiteGraph::from_rule(6, 4, |x, y| (x ^ y) % 3 == 0),
        ] {
            assert_eq!(g.count_kab(2, 2, Side::X), g.count_c4());
        }
    }

    #[test]
    fn save_load_roundtrip() {
        let g = heawood();
        let dir = std::env::temp_dir().join("supersat-graph-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("heawood.graph");
        g.save(&path).unwrap();
        let g2 = BipartiteGraph::load(&path).unwrap();
        assert_eq!(g.edges(), g2.edges());
        assert_eq!((g.nx(), g.ny()), (g2.nx(), g2.ny()));
    }

    #[test]
    fn load_rejects_malformed() {
        let dir = std::env::temp_dir().join("supersat-graph-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.graph");
        std::fs::write(&path, "2 2 1\n5 0\n").unwrap();
        assert!(matches!(
            BipartiteGraph::load(&path),
            Err(Error::MalformedGraphFile { line: 2, .. })
        ));
        std::fs::write(&path, "2 2 3\n0 0\n").unwrap();
        assert!(BipartiteGraph::load(&path).is_err());
    }
}
