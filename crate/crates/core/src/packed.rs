//! Kernels on words packed into a `u64` index, `u_1` in the most significant
//! of the low `n` bits. These back the exhaustive censuses, where allocating
//! a [`Word`](crate::Word) per vertex would dominate the running time.

#[inline]
pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// LCS length of two packed words, bit-parallel over the positions of `a`.
///
/// Both words are scanned last-symbol-first, which leaves the LCS length
/// unchanged.
#[inline]
pub fn lcs_len(a: u64, m: usize, b: u64, nb: usize) -> usize {
    if m == 0 || nb == 0 {
        return 0;
    }
    let mk = mask(m);
    let ones = a & mk;
    let zeros = !a & mk;
    let mut v = u64::MAX;
    for j in 0..nb {
        let pm = if (b >> j) & 1 == 1 { ones } else { zeros };
        let u = v & pm;
        v = v.wrapping_add(u) | (v & !pm);
    }
    (!v & mk).count_ones() as usize
}

/// Deletion distance of two packed words of common length `n`.
#[inline]
pub fn distance(a: u64, b: u64, n: usize) -> usize {
    n - lcs_len(a, n, b, n)
}

/// Removes the symbol at 0-based offset `i` (counted from `u_1`).
#[inline]
pub(crate) fn delete(x: u64, n: usize, i: usize) -> u64 {
    let idx = n - 1 - i;
    let low = x & mask(idx);
    let high = (x >> (idx + 1)) << idx;
    high | low
}

/// Inserts `bit` into gap `g` (after `u_g`, 0 meaning the front).
#[inline]
pub(crate) fn insert(x: u64, n: usize, g: usize, bit: u8) -> u64 {
    let tail = n - g;
    let low = x & mask(tail);
    let high = if tail >= 64 { 0 } else { x >> tail };
    (((high << 1) | bit as u64) << tail) | low
}

/// All words within deletion distance `k` of `x`, including `x`, sorted.
///
/// Generates every subsequence of length `n - k`, then every supersequence of
/// those of length `n`; together these are exactly the words `v` with
/// `LCS(x, v) >= n - k`.
pub fn ball(x: u64, n: usize, k: usize) -> Vec<u64> {
    let k = k.min(n);
    let mut level = vec![x];
    let mut len = n;
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * len);
        for &y in &level {
            for i in 0..len {
                next.push(delete(y, len, i));
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
        len -= 1;
    }
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * (len + 1) * 2);
        for &y in &level {
            for g in 0..=len {
                next.push(insert(y, len, g, 0));
                next.push(insert(y, len, g, 1));
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
        len += 1;
    }
    level
}

/// True iff all length-`lambda` windows of the packed word are distinct.
pub fn is_lambda_nonrepeating(x: u64, n: usize, lambda: usize) -> bool {
    if n <= lambda {
        return true;
    }
    let windows = n - lambda + 1;
    if lambda < 64 && windows as u128 > 1u128 << lambda {
        return false;
    }
    let wm = mask(lambda);
    let mut seen: Vec<u64> = (0..windows).map(|s| (x >> s) & wm).collect();
    seen.sort_unstable();
    seen.windows(2).all(|p| p[0] != p[1])
}
