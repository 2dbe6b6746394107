use crate::error::{Error, Result};
use crate::word::Word;

use super::lcs_len;

/// `left(u, w)`: the lexicographically smallest set of 1-based positions
/// `S` with `u_S = w`. Greedy leftmost matching attains it.
pub fn leftmost_embedding(u: &Word, w: &Word) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(w.len());
    let mut it = u.iter().enumerate();
    for b in w.iter() {
        match it.by_ref().find(|&(_, c)| c == b) {
            Some((i, _)) => out.push(i + 1),
            None => return Err(Error::input(format!("{w} is not a subsequence of {u}"))),
        }
    }
    Ok(out)
}

/// Which branch of the LCS-to-SCS map produced a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiStep {
    /// Symbol copied from `u` at a position outside `left(u, w)`.
    FromU,
    /// Symbol copied from `v` at a position outside `left(v, w)`.
    FromV,
    /// Shared symbol; both pointers advance.
    Both,
}

fn check_lcs(u: &Word, v: &Word, w: &Word) -> Result<()> {
    if !w.is_subsequence_of(u) || !w.is_subsequence_of(v) {
        return Err(Error::input(format!("{w} is not a common subsequence")));
    }
    let l = lcs_len(u, v);
    if w.len() != l {
        return Err(Error::input(format!(
            "{w} has length {} but LCS(u, v) = {l}",
            w.len()
        )));
    }
    Ok(())
}

/// Maps an LCS `w` of `(u, v)` to an SCS of `(u, v)`, injectively.
pub fn phi(u: &Word, v: &Word, w: &Word) -> Result<Word> {
    phi_with_trace(u, v, w).map(|(y, _)| y)
}

/// [`phi`] together with the branch taken at every step.
pub fn phi_with_trace(u: &Word, v: &Word, w: &Word) -> Result<(Word, Vec<PhiStep>)> {
    check_lcs(u, v, w)?;
    let (m, n, l) = (u.len(), v.len(), w.len());
    let mut in_left_u = vec![false; m + 2];
    let mut in_left_v = vec![false; n + 2];
    for p in leftmost_embedding(u, w)? {
        in_left_u[p] = true;
    }
    for p in leftmost_embedding(v, w)? {
        in_left_v[p] = true;
    }

    let steps = m + n - l;
    let mut y = Word::with_capacity(steps);
    let mut trace = Vec::with_capacity(steps);
    let (mut i, mut j, mut r) = (1usize, 1usize, 0usize);
    for _ in 0..steps {
        if i <= m && !in_left_u[i] {
            y.push(u.get(i).unwrap());
            trace.push(PhiStep::FromU);
            i += 1;
        } else if j <= n && !in_left_v[j] {
            y.push(v.get(j).unwrap());
            trace.push(PhiStep::FromV);
            j += 1;
        } else if i <= m && j <= n {
            let (a, b) = (u.get(i).unwrap(), v.get(j).unwrap());
            // The r-th shared step emits w_r.
            assert!(a == b && Some(a) == w.get(r + 1), "shared step out of sync");
            y.push(a);
            trace.push(PhiStep::Both);
            i += 1;
            j += 1;
            r += 1;
        } else {
            unreachable!("pointers exhausted before {steps} steps");
        }
    }
    assert!(i == m + 1 && j == n + 1 && r == l);
    Ok((y, trace))
}

/// Recovers `w` from `phi(u, v, w)`.
///
/// A shared step happens exactly when `u_i = v_j`; otherwise the two
/// candidates differ and the emitted symbol tells which pointer moved.
pub fn phi_invert(u: &Word, v: &Word, y: &Word) -> Result<Word> {
    let (m, n) = (u.len(), v.len());
    let not_image = || Error::input(format!("{y} is not in the image of phi for ({u}, {v})"));
    let (mut i, mut j) = (1usize, 1usize);
    let mut w = Word::empty();
    for c in y.iter() {
        match (u.get(i), v.get(j)) {
            (Some(a), Some(b)) if a == b => {
                if c != a {
                    return Err(not_image());
                }
                w.push(c);
                i += 1;
                j += 1;
            }
            (Some(a), _) if a == c => i += 1,
            (_, Some(b)) if b == c => j += 1,
            _ => return Err(not_image()),
        }
    }
    if i != m + 1 || j != n + 1 {
        return Err(not_image());
    }
    match phi(u, v, &w) {
        Ok(back) if back == *y => Ok(w),
        _ => Err(not_image()),
    }
}
