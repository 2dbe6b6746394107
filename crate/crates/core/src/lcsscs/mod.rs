//! Longest common subsequences, shortest common supersequences, minimal
//! common supersequences, and the LCS-to-SCS injection.
//!
//! Multiplicities count distinct strings, not alignments.

mod phi;

use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::word::Word;

pub use phi::{leftmost_embedding, phi, phi_invert, phi_with_trace, PhiStep};

/// Length of a longest common subsequence (quadratic table, two rows).
pub fn lcs_len(u: &Word, v: &Word) -> usize {
    let (m, n) = (u.len(), v.len());
    if m == 0 || n == 0 {
        return 0;
    }
    let vb = v.to_vec();
    let mut prev = vec![0usize; n + 1];
    let mut cur = vec![0usize; n + 1];
    for a in u.iter() {
        for j in 1..=n {
            cur[j] = if a == vb[j - 1] {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

/// `|u| + |v| - LCS(u, v)`.
pub fn scs_len(u: &Word, v: &Word) -> usize {
    u.len() + v.len() - lcs_len(u, v)
}

/// `n - LCS(u, v)` for words of common length `n`.
pub fn deletion_distance(u: &Word, v: &Word) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::input(format!(
            "deletion distance needs equal lengths, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(u.len() - lcs_len(u, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SetKind {
    #[serde(rename = "LCS")]
    Lcs,
    #[serde(rename = "SCS")]
    Scs,
    #[serde(rename = "MCS")]
    Mcs,
}

/// A deduplicated, lexicographically sorted set of optimal strings of a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalSet {
    pub kind: SetKind,
    /// Common length of the strings; `None` for minimal supersequences.
    pub opt_length: Option<usize>,
    pub count: usize,
    pub strings: Vec<Word>,
}

impl OptimalSet {
    fn new(kind: SetKind, opt_length: Option<usize>, mut strings: Vec<Word>) -> Self {
        strings.sort();
        strings.dedup();
        OptimalSet {
            kind,
            opt_length,
            count: strings.len(),
            strings,
        }
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.strings.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.strings.iter()
    }
}

/// Suffix LCS table: `t[i][j] = LCS(u[i..], v[j..])` (0-based offsets).
pub(crate) struct SuffixTable {
    pub(crate) u: Vec<u8>,
    pub(crate) v: Vec<u8>,
    cols: usize,
    cells: Vec<u32>,
}

impl SuffixTable {
    pub(crate) fn new(u: &Word, v: &Word) -> Self {
        let u = u.to_vec();
        let v = v.to_vec();
        let (m, n) = (u.len(), v.len());
        let cols = n + 1;
        let mut cells = vec![0u32; (m + 1) * cols];
        for i in (0..m).rev() {
            for j in (0..n).rev() {
                cells[i * cols + j] = if u[i] == v[j] {
                    cells[(i + 1) * cols + j + 1] + 1
                } else {
                    cells[(i + 1) * cols + j].max(cells[i * cols + j + 1])
                };
            }
        }
        SuffixTable { u, v, cols, cells }
    }

    #[inline]
    pub(crate) fn lcs(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.cols + j] as usize
    }

    /// SCS length of the suffixes.
    #[inline]
    pub(crate) fn scs(&self, i: usize, j: usize) -> usize {
        self.u.len() - i + self.v.len() - j - self.lcs(i, j)
    }
}

type Memo = Vec<Option<Rc<Vec<Word>>>>;

struct Enumerator<'a> {
    t: SuffixTable,
    limit: usize,
    memo: Memo,
    kind: SetKind,
    u: &'a Word,
    v: &'a Word,
}

impl Enumerator<'_> {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.t.v.len() + 1) + j
    }

    fn check(&self, size: usize) -> Result<()> {
        Limits {
            max_set_size: self.limit,
            ..Limits::default()
        }
        .check_set(size)
    }

    fn get(&mut self, i: usize, j: usize) -> Result<Rc<Vec<Word>>> {
        let k = self.idx(i, j);
        if let Some(s) = &self.memo[k] {
            return Ok(Rc::clone(s));
        }
        let set = match self.kind {
            SetKind::Lcs => self.lcs_cell(i, j)?,
            SetKind::Scs => self.scs_cell(i, j)?,
            SetKind::Mcs => self.mcs_cell(i, j)?,
        };
        self.check(set.len())?;
        let set = Rc::new(set);
        self.memo[k] = Some(Rc::clone(&set));
        Ok(set)
    }

    fn lcs_cell(&mut self, i: usize, j: usize) -> Result<Vec<Word>> {
        let (m, n) = (self.t.u.len(), self.t.v.len());
        if i == m || j == n || self.t.lcs(i, j) == 0 {
            return Ok(vec![Word::empty()]);
        }
        let a = self.t.u[i];
        if a == self.t.v[j] {
            // Every LCS of the suffixes starts with the shared symbol.
            let rest = self.get(i + 1, j + 1)?;
            return Ok(rest.iter().map(|w| w.prepend(a)).collect());
        }
        let here = self.t.lcs(i, j);
        let mut out = Vec::new();
        if self.t.lcs(i + 1, j) == here {
            out.extend(self.get(i + 1, j)?.iter().cloned());
        }
        if self.t.lcs(i, j + 1) == here {
            out.extend(self.get(i, j + 1)?.iter().cloned());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn scs_cell(&mut self, i: usize, j: usize) -> Result<Vec<Word>> {
        let (m, n) = (self.t.u.len(), self.t.v.len());
        if i == m {
            return Ok(vec![self.v.slice(j, n)]);
        }
        if j == n {
            return Ok(vec![self.u.slice(i, m)]);
        }
        let a = self.t.u[i];
        let b = self.t.v[j];
        if a == b {
            let rest = self.get(i + 1, j + 1)?;
            return Ok(rest.iter().map(|w| w.prepend(a)).collect());
        }
        // The two branches start with different symbols, so they are disjoint.
        let here = self.t.scs(i, j);
        let mut out = Vec::new();
        if self.t.scs(i + 1, j) + 1 == here {
            out.extend(self.get(i + 1, j)?.iter().map(|w| w.prepend(a)));
        }
        if self.t.scs(i, j + 1) + 1 == here {
            out.extend(self.get(i, j + 1)?.iter().map(|w| w.prepend(b)));
        }
        Ok(out)
    }

    fn mcs_cell(&mut self, i: usize, j: usize) -> Result<Vec<Word>> {
        let (m, n) = (self.t.u.len(), self.t.v.len());
        if i == m {
            return Ok(vec![self.v.slice(j, n)]);
        }
        if j == n {
            return Ok(vec![self.u.slice(i, m)]);
        }
        let a = self.t.u[i];
        let b = self.t.v[j];
        let mut out: Vec<Word> = if a == b {
            // A shared first symbol is shared by every minimal supersequence.
            self.get(i + 1, j + 1)?
                .iter()
                .map(|w| w.prepend(a))
                .collect()
        } else {
            let mut out: Vec<Word> = self.get(i + 1, j)?.iter().map(|w| w.prepend(a)).collect();
            out.extend(self.get(i, j + 1)?.iter().map(|w| w.prepend(b)));
            out
        };
        self.check(out.len())?;
        let us = self.u.slice(i, m);
        let vs = self.v.slice(j, n);
        out.retain(|y| is_minimal_supersequence(y, &us, &vs));
        Ok(out)
    }
}

/// True iff no single-symbol deletion of `y` still contains both `u` and `v`.
/// Checking single deletions suffices: any smaller common supersequence sits
/// inside some one-symbol deletion of `y`.
pub fn is_minimal_supersequence(y: &Word, u: &Word, v: &Word) -> bool {
    let bits = y.to_vec();
    (0..bits.len())
        .filter(|&i| i == 0 || bits[i] != bits[i - 1])
        .all(|i| {
            let z = y.without(i);
            !(u.is_subsequence_of(&z) && v.is_subsequence_of(&z))
        })
}

fn enumerate(kind: SetKind, u: &Word, v: &Word, limits: &Limits) -> Result<Vec<Word>> {
    let t = SuffixTable::new(u, v);
    let cells = (u.len() + 1) * (v.len() + 1);
    let mut e = Enumerator {
        t,
        limit: limits.max_set_size,
        memo: vec![None; cells],
        kind,
        u,
        v,
    };
    let top = e.get(0, 0)?;
    Ok(top.as_ref().clone())
}

/// All distinct longest common subsequences of `u` and `v`.
pub fn lcs_set(u: &Word, v: &Word) -> Result<OptimalSet> {
    lcs_set_bounded(u, v, &Limits::default())
}

pub fn lcs_set_bounded(u: &Word, v: &Word, limits: &Limits) -> Result<OptimalSet> {
    let strings = enumerate(SetKind::Lcs, u, v, limits)?;
    Ok(OptimalSet::new(SetKind::Lcs, Some(lcs_len(u, v)), strings))
}

/// All distinct shortest common supersequences of `u` and `v`.
pub fn scs_set(u: &Word, v: &Word) -> Result<OptimalSet> {
    scs_set_bounded(u, v, &Limits::default())
}

pub fn scs_set_bounded(u: &Word, v: &Word, limits: &Limits) -> Result<OptimalSet> {
    let strings = enumerate(SetKind::Scs, u, v, limits)?;
    Ok(OptimalSet::new(SetKind::Scs, Some(scs_len(u, v)), strings))
}

/// All minimal common supersequences of `u` and `v`.
pub fn mcs_set(u: &Word, v: &Word) -> Result<OptimalSet> {
    mcs_set_bounded(u, v, &Limits::default())
}

pub fn mcs_set_bounded(u: &Word, v: &Word, limits: &Limits) -> Result<OptimalSet> {
    let strings = enumerate(SetKind::Mcs, u, v, limits)?;
    Ok(OptimalSet::new(SetKind::Mcs, None, strings))
}

/// Number of distinct SCS's, without enumerating them. Saturates at
/// `u128::MAX`.
///
/// Over a binary alphabet the branches of the SCS recursion at a mismatch
/// begin with different symbols, so path counts equal string counts.
pub fn scs_count(u: &Word, v: &Word) -> u128 {
    let t = SuffixTable::new(u, v);
    let (m, n) = (t.u.len(), t.v.len());
    let cols = n + 1;
    let mut c = vec![0u128; (m + 1) * cols];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            c[i * cols + j] = if i == m || j == n {
                1
            } else if t.u[i] == t.v[j] {
                c[(i + 1) * cols + j + 1]
            } else {
                let here = t.scs(i, j);
                let mut s = 0u128;
                if t.scs(i + 1, j) + 1 == here {
                    s = s.saturating_add(c[(i + 1) * cols + j]);
                }
                if t.scs(i, j + 1) + 1 == here {
                    s = s.saturating_add(c[i * cols + j + 1]);
                }
                s
            };
        }
    }
    c[0]
}

/// `C(n, k)` with the convention `C(n, k) = 0` outside `0 <= k <= n`.
/// Saturates at `u128::MAX`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut r: u128 = 1;
    for i in 0..k {
        r = match r.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    r
}
