//! The k-deletion graph on `{0,1}^n`, kept implicit: adjacency is an LCS
//! test and neighborhoods are generated, never stored as a matrix.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lcsscs::{binomial, lcs_len};
use crate::limits::Limits;
use crate::packed;
use crate::report::{CensusReport, Stopwatch};
use crate::word::Word;

/// `u ~ v` iff `u != v` and `d(u, v) <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeletionGraph {
    n: usize,
    k: usize,
}

/// Upper bound `C(n,k)^2 2^k` on the size of a radius-`k` ball.
pub fn degree_bound(n: usize, k: usize) -> f64 {
    let c = binomial(n as i64, k as i64) as f64;
    c * c * 2f64.powi(k as i32)
}

impl DeletionGraph {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::input(format!(
                "need 1 <= k <= n, got n = {n}, k = {k}"
            )));
        }
        if n > 63 {
            return Err(Error::input(format!(
                "n = {n} is too long for a packed vertex"
            )));
        }
        Ok(DeletionGraph { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `2^n`.
    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    fn check_len(&self, u: &Word) -> Result<()> {
        if u.len() != self.n {
            return Err(Error::input(format!(
                "{u} has length {}, expected {}",
                u.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn adjacent(&self, u: &Word, v: &Word) -> Result<bool> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(u != v && lcs_len(u, v) + self.k >= self.n)
    }

    /// Neighbors of `u`, in lexicographic order.
    pub fn neighborhood(&self, u: &Word, limits: &Limits) -> Result<Vec<Word>> {
        self.check_len(u)?;
        let bound = degree_bound(self.n, self.k);
        if bound > limits.max_set_size as f64 {
            return Err(Error::resource(format!(
                "neighborhood in Γ({}, {}) may hold {bound:.3e} words, above the output guard ({})",
                self.n, self.k, limits.max_set_size
            )));
        }
        Ok(self
            .neighbors_packed(u.to_index())
            .into_iter()
            .map(|x| Word::from_index(x, self.n))
            .collect())
    }

    pub fn degree(&self, u: &Word) -> Result<usize> {
        self.check_len(u)?;
        Ok(self.neighbors_packed(u.to_index()).len())
    }

    /// Sorted packed neighbors of `x`. Index order is lexicographic order.
    pub fn neighbors_packed(&self, x: u64) -> Vec<u64> {
        let mut ball = packed::ball(x, self.n, self.k);
        ball.retain(|&y| y != x);
        ball
    }

    fn check_census(&self, what: &str, per_vertex: f64, limits: &Limits) -> Result<()> {
        limits.check_enum(self.n)?;
        limits.check_ops(what, self.vertex_count() as f64 * per_vertex)
    }

    pub fn max_degree(&self, limits: &Limits) -> Result<usize> {
        self.check_census("max degree", degree_bound(self.n, self.k), limits)?;
        Ok((0..self.vertex_count())
            .into_par_iter()
            .map(|x| self.neighbors_packed(x).len())
            .max()
            .unwrap_or(0))
    }

    /// Number of edges, as half the degree sum.
    pub fn edge_count(&self, limits: &Limits) -> Result<u64> {
        self.check_census("edge count", degree_bound(self.n, self.k), limits)?;
        let sum: u64 = (0..self.vertex_count())
            .into_par_iter()
            .map(|x| self.neighbors_packed(x).len() as u64)
            .sum();
        Ok(sum / 2)
    }

    /// Unordered triangles, each counted once as `u < v < w`.
    pub fn triangle_census(&self, limits: &Limits) -> Result<u64> {
        let d = degree_bound(self.n, self.k);
        self.check_census("triangle census", d * d, limits)?;
        let adj = Csr::build(self.vertex_count(), |x| self.neighbors_packed(x));
        Ok((0..self.vertex_count())
            .into_par_iter()
            .map(|u| {
                let nu = adj.row(u);
                let mut t = 0u64;
                for (i, &v) in nu.iter().enumerate() {
                    if (v as u64) < u {
                        continue;
                    }
                    t += count_common(&nu[i + 1..], adj.row(v as u64));
                }
                t
            })
            .sum())
    }

    pub fn stats(&self, limits: &Limits) -> Result<GraphStats> {
        let max_degree = self.max_degree(limits)?;
        let edges = self.edge_count(limits)?;
        let triangles = self.triangle_census(limits)?;
        let n_vertices = self.vertex_count();
        Ok(GraphStats {
            n: self.n,
            k: self.k,
            vertices: n_vertices,
            edges,
            max_degree: max_degree as u64,
            triangles,
            bollobas_bound: bollobas_bound(n_vertices, max_degree as u64, triangles),
            triangle_floor_applied: triangles == 0,
        })
    }
}

/// Sorted adjacency lists packed into one buffer.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn build<F>(vertices: u64, rows: F) -> Self
    where
        F: Fn(u64) -> Vec<u64> + Sync,
    {
        let lists: Vec<Vec<u32>> = (0..vertices)
            .into_par_iter()
            .map(|x| rows(x).into_iter().map(|y| y as u32).collect())
            .collect();
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for l in lists {
            targets.extend_from_slice(&l);
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    fn row(&self, x: u64) -> &[u32] {
        let x = x as usize;
        &self.targets[self.offsets[x]..self.offsets[x + 1]]
    }
}

fn count_common(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Summary of `Γ(n, k)`. `triangle_floor_applied` flags that the bound was
/// evaluated with one triangle in place of zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "N")]
    pub vertices: u64,
    pub edges: u64,
    pub max_degree: u64,
    pub triangles: u64,
    pub bollobas_bound: f64,
    pub triangle_floor_applied: bool,
}

/// `(N / 10Δ)(log Δ - ½ log(T/N))` with base-2 logarithms.
///
/// `T = 0` is evaluated as `T = 1`, and `Δ = 0` as `Δ = 1`.
pub fn bollobas_bound(n_vertices: u64, max_degree: u64, triangles: u64) -> f64 {
    let n = n_vertices as f64;
    let d = max_degree.max(1) as f64;
    let t = triangles.max(1) as f64;
    n / (10.0 * d) * (d.log2() - 0.5 * (t / n).log2())
}

/// Ordered triples `(u, v, w)` with `d(u,v) <= a`, `d(v,w) <= b`,
/// `d(w,u) <= c`. Repeated words are allowed.
pub fn good_triple_census(n: usize, a: usize, b: usize, c: usize, limits: &Limits) -> Result<u64> {
    if n == 0 || n > 63 {
        return Err(Error::input(format!("n must be in 1..=63, got {n}")));
    }
    if a.min(b).min(c) == 0 {
        return Err(Error::input("a, b, c must be at least 1"));
    }
    let (a, b, c) = (a.min(n), b.min(n), c.min(n));
    limits.check_enum(n)?;
    let n_vertices = 1u64 << n;
    limits.check_ops(
        "good-triple census",
        n_vertices as f64 * degree_bound(n, a) * (degree_bound(n, b) + degree_bound(n, c)),
    )?;
    let ball_b = Csr::build(n_vertices, |x| packed::ball(x, n, b));
    Ok((0..n_vertices)
        .into_par_iter()
        .map(|u| {
            let bc: Vec<u32> = packed::ball(u, n, c)
                .into_iter()
                .map(|y| y as u32)
                .collect();
            packed::ball(u, n, a)
                .into_iter()
                .map(|v| count_common(ball_b.row(v), &bc))
                .sum::<u64>()
        })
        .sum())
}

/// Census of [`good_triple_census`] with both reference curves.
pub fn good_triple_report(
    n: usize,
    a: usize,
    b: usize,
    c: usize,
    limits: &Limits,
) -> Result<CensusReport> {
    let clock = Stopwatch::start();
    let count = good_triple_census(n, a, b, c, limits)?;
    let mut r = CensusReport::new("good-triples")
        .param("n", n as u64)
        .param("a", a as u64)
        .param("b", b as u64)
        .param("c", c as u64);
    r.count = count;
    r.checked = n_cube(n).min(u64::MAX as u128) as u64;
    r.reference_value = Some(triple_reference(n, a, b, c));
    r.notes.push(format!(
        "alternate reference 2^n n^(a+b+c) (log n)^(a+b-c) = {:.6e}",
        triple_reference_alt(n, a, b, c)
    ));
    r.runtime_ms = Some(clock.elapsed_ms());
    Ok(r)
}

fn n_cube(n: usize) -> u128 {
    1u128 << (3 * n).min(127)
}

/// `2^n n^(a+b+c) (log n)^(b+c-a)`.
pub fn triple_reference(n: usize, a: usize, b: usize, c: usize) -> f64 {
    let nf = n as f64;
    2f64.powi(n as i32)
        * nf.powi((a + b + c) as i32)
        * nf.log2().powi(b as i32 + c as i32 - a as i32)
}

/// `2^n n^(a+b+c) (log n)^(a+b-c)`.
pub fn triple_reference_alt(n: usize, a: usize, b: usize, c: usize) -> f64 {
    let nf = n as f64;
    2f64.powi(n as i32)
        * nf.powi((a + b + c) as i32)
        * nf.log2().powi(a as i32 + b as i32 - c as i32)
}

/// `2^n n^(3k) (log n)^k`, the triangle curve.
pub fn triangle_reference(n: usize, k: usize) -> f64 {
    triple_reference(n, k, k, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// Adjacency matrix from the DP oracle.
    fn matrix(n: usize, k: usize) -> Vec<Vec<bool>> {
        let words: Vec<Word> = (0..1u64 << n).map(|x| Word::from_index(x, n)).collect();
        words
            .iter()
            .map(|u| {
                words
                    .iter()
                    .map(|v| u != v && lcs_len(u, v) + k >= n)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn gamma_2_1() {
        let g = DeletionGraph::new(2, 1).unwrap();
        assert!(g.adjacent(&w("00"), &w("01")).unwrap());
        assert!(!g.adjacent(&w("00"), &w("11")).unwrap());
        assert!(!g.adjacent(&w("01"), &w("01")).unwrap());
        assert!(g.adjacent(&w("0"), &w("01")).is_err());
        assert_eq!(
            g.neighborhood(&w("00"), &lim()).unwrap(),
            [w("01"), w("10")]
        );
        let s = g.stats(&lim()).unwrap();
        assert_eq!(
            (s.vertices, s.max_degree, s.triangles, s.edges),
            (4, 3, 2, 5)
        );
        assert_eq!(
            DeletionGraph::new(1, 1)
                .unwrap()
                .max_degree(&lim())
                .unwrap(),
            1
        );
        assert_eq!(
            DeletionGraph::new(1, 1)
                .unwrap()
                .triangle_census(&lim())
                .unwrap(),
            0
        );
        assert!(DeletionGraph::new(3, 0).is_err());
    }

    #[test]
    fn complete_when_k_is_n() {
        let g = DeletionGraph::new(5, 5).unwrap();
        assert_eq!(g.degree(&w("01101")).unwrap(), 31);
    }

    #[test]
    fn neighborhoods_match_oracle() {
        for n in 1..=7 {
            for k in 1..=n.min(3) {
                let g = DeletionGraph::new(n, k).unwrap();
                let m = matrix(n, k);
                for x in 0..1u64 << n {
                    let expect: Vec<u64> = (0..1u64 << n)
                        .filter(|&y| m[x as usize][y as usize])
                        .collect();
                    assert_eq!(g.neighbors_packed(x), expect);
                    assert!((expect.len() as f64) < degree_bound(n, k));
                }
            }
        }
    }

    #[test]
    fn triangles_match_ordered_triples() {
        for n in 1..=7 {
            for k in 1..=2.min(n) {
                let m = matrix(n, k);
                let size = 1usize << n;
                let mut ordered = 0u64;
                for u in 0..size {
                    for v in 0..size {
                        if !m[u][v] {
                            continue;
                        }
                        ordered += (0..size).filter(|&x| m[v][x] && m[x][u]).count() as u64;
                    }
                }
                let g = DeletionGraph::new(n, k).unwrap();
                assert_eq!(
                    g.triangle_census(&lim()).unwrap() * 6,
                    ordered,
                    "n={n} k={k}"
                );
                let edges: usize = m.iter().map(|r| r.iter().filter(|&&b| b).count()).sum();
                assert_eq!(g.edge_count(&lim()).unwrap() * 2, edges as u64);
            }
        }
    }

    #[test]
    fn good_triples_against_brute_force() {
        for n in 1..=5 {
            let size = 1u64 << n;
            let words: Vec<Word> = (0..size).map(|x| Word::from_index(x, n)).collect();
            let d = |x: usize, y: usize| n - lcs_len(&words[x], &words[y]);
            for (a, b, c) in [(1, 1, 1), (2, 1, 1), (3, 2, 1), (2, 2, 1)] {
                let mut expect = 0u64;
                for u in 0..size as usize {
                    for v in 0..size as usize {
                        for x in 0..size as usize {
                            if d(u, v) <= a && d(v, x) <= b && d(x, u) <= c {
                                expect += 1;
                            }
                        }
                    }
                }
                assert_eq!(good_triple_census(n, a, b, c, &lim()).unwrap(), expect);
            }
        }
    }

    #[test]
    fn good_triples_relations() {
        assert_eq!(good_triple_census(2, 1, 1, 1, &lim()).unwrap(), 46);
        assert_eq!(good_triple_census(4, 4, 4, 4, &lim()).unwrap(), 1 << 12);
        // Triangle inequality collapses a large first radius.
        assert_eq!(
            good_triple_census(6, 4, 2, 1, &lim()).unwrap(),
            good_triple_census(6, 3, 2, 1, &lim()).unwrap()
        );
        for n in 2..=8 {
            let g = DeletionGraph::new(n, 1).unwrap();
            let t = g.triangle_census(&lim()).unwrap();
            let e = g.edge_count(&lim()).unwrap();
            assert_eq!(
                good_triple_census(n, 1, 1, 1, &lim()).unwrap(),
                6 * t + 6 * e + (1 << n)
            );
        }
    }

    #[test]
    fn bound_values() {
        assert!((bollobas_bound(16, 3, 2) - 1.6453).abs() < 1e-3);
        // Δ = 1, T = 0: N/10 * (0 - ½ log2(1/N)).
        assert!((bollobas_bound(1024, 1, 0) - 102.4 * 5.0).abs() < 1e-9);
    }

    #[test]
    fn guard_refuses() {
        let tight = Limits {
            max_census_ops: 1e6,
            ..Limits::default()
        };
        let g = DeletionGraph::new(14, 2).unwrap();
        assert!(matches!(g.triangle_census(&tight), Err(Error::Resource(_))));
        let small = Limits {
            max_set_size: 10,
            ..Limits::default()
        };
        assert!(g.neighborhood(&Word::repeat(0, 14), &small).is_err());
    }
}
