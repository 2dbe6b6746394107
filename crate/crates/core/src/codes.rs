//! k-deletion codes: Varshamov-Tenengolts codes, greedy independent sets in
//! the deletion graph, and the validity checker.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::degree_bound;
use crate::lcsscs::scs_count;
use crate::limits::Limits;
use crate::packed;
use crate::report::{CensusReport, Stopwatch};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Vt,
    Greedy,
    External,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Vt => "vt",
            Construction::Greedy => "greedy",
            Construction::External => "external",
        })
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vt" => Ok(Construction::Vt),
            "greedy" => Ok(Construction::Greedy),
            "external" => Ok(Construction::External),
            _ => Err(Error::input(format!("unknown construction '{s}'"))),
        }
    }
}

/// A set of length-`n` words meant to correct `k` deletions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    pub n: usize,
    pub k: usize,
    /// Sorted lexicographically, no duplicates.
    pub words: Vec<Word>,
    pub construction: Construction,
}

impl Code {
    pub fn new(
        n: usize,
        k: usize,
        mut words: Vec<Word>,
        construction: Construction,
    ) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::input(format!(
                "codeword {w} has length {}, expected {n}",
                w.len()
            )));
        }
        words.sort();
        words.dedup();
        Ok(Code {
            n,
            k,
            words,
            construction,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Header line followed by one word per line.
    pub fn to_file_string(&self) -> String {
        let mut s = format!(
            "n={} k={} size={} construction={}\n",
            self.n,
            self.k,
            self.len(),
            self.construction
        );
        for w in &self.words {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::input("empty code file"))?;
        let (mut n, mut k, mut size, mut construction) = (None, None, None, None);
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::input(format!("malformed header field '{field}'")))?;
            let num = || {
                value.parse::<usize>().map_err(|_| {
                    Error::input(format!("header field {key} is not a number: '{value}'"))
                })
            };
            match key {
                "n" => n = Some(num()?),
                "k" => k = Some(num()?),
                "size" => size = Some(num()?),
                "construction" => construction = Some(value.parse::<Construction>()?),
                _ => return Err(Error::input(format!("unknown header field '{key}'"))),
            }
        }
        let missing = |f: &str| Error::input(format!("header lacks '{f}'"));
        let n = n.ok_or_else(|| missing("n"))?;
        let k = k.ok_or_else(|| missing("k"))?;
        let size = size.ok_or_else(|| missing("size"))?;
        let words = lines.map(Word::parse).collect::<Result<Vec<_>>>()?;
        if words.len() != size {
            return Err(Error::input(format!(
                "header declares {size} words, file has {}",
                words.len()
            )));
        }
        let code = Code::new(n, k, words, construction.unwrap_or(Construction::External))?;
        if code.len() != size {
            return Err(Error::input("code file contains duplicate words"));
        }
        Ok(code)
    }
}

/// Length above which the subsequence cross-check is skipped.
const CROSS_CHECK_MAX_LEN: usize = 20;

/// True iff every two codewords are at deletion distance greater than `k`.
///
/// For short words the answer is recomputed from the definition (no word
/// of length `n - k` lies under two codewords) and both must agree.
pub fn is_valid_code(code: &Code) -> Result<bool> {
    let n = code.n;
    if let Some(w) = code.words.iter().find(|w| w.len() != n) {
        return Err(Error::input(format!(
            "codeword {w} has length {}, expected {n}",
            w.len()
        )));
    }
    if code.k >= n {
        return Ok(code.len() <= 1);
    }
    if n > 63 {
        let ok = (0..code.len()).into_par_iter().all(|i| {
            code.words[i + 1..]
                .iter()
                .all(|t| crate::lcsscs::lcs_len(&code.words[i], t) + code.k < n)
        });
        return Ok(ok);
    }
    let xs: Vec<u64> = code.words.iter().map(Word::to_index).collect();
    let pairwise = (0..xs.len()).into_par_iter().all(|i| {
        xs[i + 1..]
            .iter()
            .all(|&y| packed::lcs_len(xs[i], n, y, n) + code.k < n)
    });
    if n <= CROSS_CHECK_MAX_LEN {
        let mut subs: Vec<u64> = xs
            .par_iter()
            .flat_map_iter(|&x| subsequences(x, n, code.k))
            .collect();
        let total = subs.len();
        subs.par_sort_unstable();
        subs.dedup();
        assert_eq!(
            pairwise,
            subs.len() == total,
            "pairwise LCS test and subsequence test disagree"
        );
    }
    Ok(pairwise)
}

/// Distinct subsequences of length `n - k`.
fn subsequences(x: u64, n: usize, k: usize) -> Vec<u64> {
    let mut level = vec![x];
    for len in (n - k + 1..=n).rev() {
        let mut next: Vec<u64> = level
            .iter()
            .flat_map(|&y| (0..len).map(move |i| packed::delete(y, len, i)))
            .collect();
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    level
}

/// `sum_i i * x_i` over 1-based positions.
fn vt_syndrome(x: u64, n: usize) -> u64 {
    (1..=n as u64)
        .filter(|&i| (x >> (n as u64 - i)) & 1 == 1)
        .sum()
}

/// `{x : sum i x_i = residue (mod n + 1)}`.
pub fn vt_code(n: usize, residue: usize, limits: &Limits) -> Result<Code> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    if residue > n {
        return Err(Error::input(format!(
            "residue must be in 0..={n}, got {residue}"
        )));
    }
    limits.check_enum(n)?;
    let m = n as u64 + 1;
    let words = (0..1u64 << n)
        .into_par_iter()
        .filter(|&x| vt_syndrome(x, n) % m == residue as u64)
        .map(|x| Word::from_index(x, n))
        .collect();
    Code::new(n, 1, words, Construction::Vt)
}

/// Size of every residue class, indexed by residue.
pub fn vt_sizes(n: usize, limits: &Limits) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    limits.check_enum(n)?;
    let m = n as u64 + 1;
    Ok((0..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, x| {
                acc[(vt_syndrome(x, n) % m) as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
}

/// Scan order for the greedy construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreedyOrder {
    #[default]
    Lex,
    Gray,
    Random(u64),
}

impl FromStr for GreedyOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(GreedyOrder::Lex),
            "gray" => Ok(GreedyOrder::Gray),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(GreedyOrder::Random)
                .ok_or_else(|| {
                    Error::input(format!("unknown order '{s}' (lex, gray, random:SEED)"))
                }),
        }
    }
}

impl fmt::Display for GreedyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreedyOrder::Lex => f.write_str("lex"),
            GreedyOrder::Gray => f.write_str("gray"),
            GreedyOrder::Random(s) => write!(f, "random:{s}"),
        }
    }
}

fn scan_order(n: usize, order: GreedyOrder) -> Vec<u64> {
    let size = 1u64 << n;
    match order {
        GreedyOrder::Lex => (0..size).collect(),
        GreedyOrder::Gray => (0..size).map(|i| i ^ (i >> 1)).collect(),
        GreedyOrder::Random(seed) => {
            let mut v: Vec<u64> = (0..size).collect();
            v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            v
        }
    }
}

/// Packed bitmap over `{0,1}^n`.
struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(n: usize) -> Self {
        Bitmap(vec![0; (1usize << n).div_ceil(64)])
    }

    fn get(&self, x: u64) -> bool {
        (self.0[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    fn set(&mut self, x: u64) {
        self.0[(x >> 6) as usize] |= 1 << (x & 63);
    }
}

fn check_greedy(n: usize, k: usize, limits: &Limits) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::input("n and k must be at least 1"));
    }
    limits.check_enum(n)?;
    limits.check_ops(
        "greedy code",
        2f64.powi(n as i32) * degree_bound(n, k.min(n)),
    )
}

/// Greedy maximal `k`-deletion code: accept each word, in scan order, that
/// is at distance more than `k` from every word accepted so far.
pub fn greedy_code(n: usize, k: usize, order: GreedyOrder, limits: &Limits) -> Result<Code> {
    check_greedy(n, k, limits)?;
    let mut blocked = Bitmap::new(n);
    let mut words = Vec::new();
    for x in scan_order(n, order) {
        if blocked.get(x) {
            continue;
        }
        words.push(Word::from_index(x, n));
        for y in packed::ball(x, n, k) {
            blocked.set(y);
        }
    }
    Code::new(n, k, words, Construction::Greedy)
}

/// True iff every length-`n` word is a codeword or adjacent to one.
pub fn is_maximal(code: &Code, limits: &Limits) -> Result<bool> {
    check_greedy(code.n, code.k, limits)?;
    let mut covered = Bitmap::new(code.n);
    for w in &code.words {
        for y in packed::ball(w.to_index(), code.n, code.k) {
            covered.set(y);
        }
    }
    Ok((0..1u64 << code.n).all(|x| covered.get(x)))
}

/// Largest exact independence number computed by [`independence_number`].
pub const EXACT_ALPHA_MAX_LEN: usize = 6;

/// Exact `D(n, k)` by branch and bound, for `n <= 6`.
pub fn independence_number(n: usize, k: usize) -> Result<usize> {
    if n == 0 || k == 0 {
        return Err(Error::input("n and k must be at least 1"));
    }
    if n > EXACT_ALPHA_MAX_LEN {
        return Err(Error::resource(format!(
            "exact independence number is limited to n <= {EXACT_ALPHA_MAX_LEN}"
        )));
    }
    let size = 1usize << n;
    let closed: Vec<u64> = (0..size as u64)
        .map(|x| {
            packed::ball(x, n, k)
                .into_iter()
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    let all = if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    };
    fn search(cand: u64, depth: usize, best: &mut usize, closed: &[u64]) {
        if cand == 0 {
            *best = (*best).max(depth);
            return;
        }
        if depth + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        search(cand & !closed[v], depth + 1, best, closed);
        search(cand & !(1u64 << v), depth, best, closed);
    }
    let mut best = 0;
    search(all, 0, &mut best, &closed);
    Ok(best)
}

/// Ordered pairs at distance exactly `k` with more than one SCS.
pub fn unique_scs_census(n: usize, k: usize, limits: &Limits) -> Result<CensusReport> {
    let clock = Stopwatch::start();
    if n == 0 || k == 0 {
        return Err(Error::input("n and k must be at least 1"));
    }
    let mut r = CensusReport::new("unique-scs")
        .param("n", n as u64)
        .param("k", k as u64);
    r.reference_value = Some(unique_scs_reference(n, k));
    if k > n {
        r.runtime_ms = Some(clock.elapsed_ms());
        return Ok(r);
    }
    limits.check_enum(n)?;
    limits.check_ops(
        "unique-SCS census",
        2f64.powi(n as i32) * degree_bound(n, k) * (n * n) as f64,
    )?;
    let (checked, count) = (0..1u64 << n)
        .into_par_iter()
        .map(|x| {
            let u = Word::from_index(x, n);
            let mut checked = 0u64;
            let mut count = 0u64;
            for y in packed::ball(x, n, k) {
                if packed::distance(x, y, n) != k {
                    continue;
                }
                checked += 1;
                if scs_count(&u, &Word::from_index(y, n)) > 1 {
                    count += 1;
                }
            }
            (checked, count)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    r.checked = checked;
    r.count = count;
    r.runtime_ms = Some(clock.elapsed_ms());
    Ok(r)
}

/// `2^n n^(2k-1) log n`.
pub fn unique_scs_reference(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    2f64.powi(n as i32) * nf.powi(2 * k as i32 - 1) * nf.log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcsscs::{lcs_len, scs_set};

    fn lim() -> Limits {
        Limits::default()
    }

    fn code(n: usize, k: usize, ws: &[&str]) -> Code {
        let words = ws.iter().map(|s| Word::parse(s).unwrap()).collect();
        Code::new(n, k, words, Construction::External).unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid_code(&code(2, 1, &["00", "11"])).unwrap());
        assert!(!is_valid_code(&code(2, 1, &["00", "01"])).unwrap());
        assert!(is_valid_code(&code(5, 2, &["01101"])).unwrap());
        assert!(Code::new(
            2,
            1,
            vec![Word::parse("0").unwrap()],
            Construction::External
        )
        .is_err());
    }

    #[test]
    fn vt_examples() {
        let c = vt_code(4, 0, &lim()).unwrap();
        let got: Vec<String> = c.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(got, ["0000", "0110", "1001", "1111"]);
        assert_eq!(
            vt_code(1, 0, &lim()).unwrap().words,
            [Word::parse("0").unwrap()]
        );
        assert!(vt_code(3, 4, &lim()).is_err());
    }

    #[test]
    fn vt_sizes_partition_and_validity() {
        for n in 1..=10 {
            let sizes = vt_sizes(n, &lim()).unwrap();
            assert_eq!(sizes.iter().sum::<u64>(), 1 << n);
            assert!(*sizes.iter().max().unwrap() * (n as u64 + 1) >= 1 << n);
            for (r, &size) in sizes.iter().enumerate() {
                let c = vt_code(n, r, &lim()).unwrap();
                assert_eq!(c.len() as u64, size);
                assert!(is_valid_code(&c).unwrap());
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_code(2, 1, GreedyOrder::Lex, &lim()).unwrap();
        assert_eq!(
            g.words,
            [Word::parse("00").unwrap(), Word::parse("11").unwrap()]
        );
        assert_eq!(
            greedy_code(5, 5, GreedyOrder::Lex, &lim()).unwrap().words,
            [Word::repeat(0, 5)]
        );
        let g4 = greedy_code(4, 1, GreedyOrder::Lex, &lim()).unwrap();
        let delta = crate::graph::DeletionGraph::new(4, 1)
            .unwrap()
            .max_degree(&lim())
            .unwrap();
        assert!(g4.len() * (delta + 1) >= 16);
    }

    #[test]
    fn greedy_is_lexicographic_first_fit() {
        // Direct first-fit using the DP oracle.
        for n in 1..=7 {
            for k in 1..=2 {
                let mut expect: Vec<Word> = Vec::new();
                for x in 0..1u64 << n {
                    let w = Word::from_index(x, n);
                    if expect.iter().all(|c| lcs_len(c, &w) + k < n) {
                        expect.push(w);
                    }
                }
                let g = greedy_code(n, k, GreedyOrder::Lex, &lim()).unwrap();
                assert_eq!(g.words, expect);
                assert!(is_maximal(&g, &lim()).unwrap());
            }
        }
    }

    #[test]
    fn other_orders_are_valid_and_maximal() {
        for order in [GreedyOrder::Gray, GreedyOrder::Random(7)] {
            let g = greedy_code(9, 1, order, &lim()).unwrap();
            assert!(is_valid_code(&g).unwrap());
            assert!(is_maximal(&g, &lim()).unwrap());
        }
        assert_eq!(
            "random:42".parse::<GreedyOrder>().unwrap(),
            GreedyOrder::Random(42)
        );
        assert!("spiral".parse::<GreedyOrder>().is_err());
        let mut sub = greedy_code(6, 1, GreedyOrder::Lex, &lim()).unwrap();
        sub.words.pop();
        assert!(!is_maximal(&sub, &lim()).unwrap());
    }

    #[test]
    fn exact_alpha_small() {
        assert_eq!(independence_number(2, 1).unwrap(), 2);
        assert_eq!(independence_number(3, 3).unwrap(), 1);
        for n in 1..=6 {
            let a = independence_number(n, 1).unwrap();
            assert!(a >= greedy_code(n, 1, GreedyOrder::Lex, &lim()).unwrap().len());
            assert!(a >= *vt_sizes(n, &lim()).unwrap().iter().max().unwrap() as usize);
        }
        assert!(independence_number(7, 1).is_err());
    }

    #[test]
    fn unique_scs_against_sets() {
        // Only (00, 11) and (11, 00) are at distance 2; d(01, 10) = 1.
        assert_eq!(unique_scs_census(2, 2, &lim()).unwrap().count, 2);
        assert_eq!(unique_scs_census(3, 4, &lim()).unwrap().count, 0);
        for n in 2..=6 {
            for k in 1..=2 {
                let mut expect = 0;
                for x in 0..1u64 << n {
                    for y in 0..1u64 << n {
                        let (u, v) = (Word::from_index(x, n), Word::from_index(y, n));
                        if n - lcs_len(&u, &v) == k && scs_set(&u, &v).unwrap().len() > 1 {
                            expect += 1;
                        }
                    }
                }
                assert_eq!(unique_scs_census(n, k, &lim()).unwrap().count, expect);
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let c = vt_code(5, 2, &lim()).unwrap();
        let text = c.to_file_string();
        assert!(text.starts_with(&format!("n=5 k=1 size={} construction=vt\n", c.len())));
        assert_eq!(Code::parse_file(&text).unwrap(), c);
        assert!(Code::parse_file("n=2 k=1 size=3 construction=vt\n00\n11\n").is_err());
        assert!(Code::parse_file("n=2 k=1 size=1\n0\n").is_err());
    }
}
