//! Edit scripts: sequences of positioned insertions and deletions applied
//! right to left, so every position also names the original symbol of the
//! base word.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lcsscs::{deletion_distance, SuffixTable};
use crate::report::{CensusReport, Stopwatch};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Del,
    Ins0,
    Ins1,
}

impl OpKind {
    pub fn insert(bit: u8) -> Self {
        if bit == 0 {
            OpKind::Ins0
        } else {
            OpKind::Ins1
        }
    }

    pub fn is_del(self) -> bool {
        self == OpKind::Del
    }
}

/// `Del` at `pos` removes `u_pos`; `Ins0`/`Ins1` at `pos` insert after
/// `u_pos`, with `pos = 0` meaning before `u_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EditOp {
    pub pos: usize,
    pub kind: OpKind,
}

impl EditOp {
    pub fn del(pos: usize) -> Self {
        EditOp {
            pos,
            kind: OpKind::Del,
        }
    }

    pub fn ins(pos: usize, bit: u8) -> Self {
        EditOp {
            pos,
            kind: OpKind::insert(bit),
        }
    }
}

/// Ops in application order (first applied first) for a base word of
/// length `base_length`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EditScript {
    ops: Vec<EditOp>,
    base_length: usize,
}

impl EditScript {
    /// Builds a script without checking it; see [`EditScript::validate`].
    pub fn new(base_length: usize, ops: Vec<EditOp>) -> Self {
        EditScript { ops, base_length }
    }

    pub fn empty(base_length: usize) -> Self {
        EditScript::new(base_length, Vec::new())
    }

    /// Parses `D@7,I0@4,D@2`. The empty string is the empty script.
    pub fn parse(text: &str, base_length: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(EditScript::empty(base_length));
        }
        let ops = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let (kind, pos) = tok
                    .split_once('@')
                    .ok_or_else(|| Error::input(format!("bad op {tok:?}: expected KIND@POS")))?;
                let kind = match kind {
                    "D" => OpKind::Del,
                    "I0" => OpKind::Ins0,
                    "I1" => OpKind::Ins1,
                    _ => return Err(Error::input(format!("bad op kind {kind:?} in {tok:?}"))),
                };
                let pos = pos
                    .parse::<usize>()
                    .map_err(|_| Error::input(format!("bad position in {tok:?}")))?;
                Ok(EditOp { pos, kind })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EditScript::new(base_length, ops))
    }

    pub fn ops(&self) -> &[EditOp] {
        &self.ops
    }

    pub fn base_length(&self) -> usize {
        self.base_length
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn deletions(&self) -> usize {
        self.ops.iter().filter(|o| o.kind.is_del()).count()
    }

    pub fn insertions(&self) -> usize {
        self.len() - self.deletions()
    }

    /// Length of the word this script produces.
    pub fn result_length(&self) -> usize {
        self.base_length + self.insertions() - self.deletions()
    }

    /// Positions are nonincreasing and at most the base length, no deletion
    /// at position 0, and the op after a deletion sits strictly left of it.
    pub fn validate(&self) -> bool {
        self.ops
            .iter()
            .all(|o| o.pos <= self.base_length && !(o.kind.is_del() && o.pos == 0))
            && self.ops.windows(2).all(|p| {
                if p[0].kind.is_del() {
                    p[1].pos < p[0].pos
                } else {
                    p[1].pos <= p[0].pos
                }
            })
    }

    fn ensure_valid_for(&self, n: usize) -> Result<()> {
        if self.base_length != n {
            return Err(Error::input(format!(
                "script is for words of length {}, got {n}",
                self.base_length
            )));
        }
        if !self.validate() {
            return Err(Error::input(format!("invalid edit script {self}")));
        }
        Ok(())
    }

    /// Multiset of op positions, each with its multiplicity.
    fn position_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for o in &self.ops {
            *counts.entry(o.pos).or_insert(0) += 1;
        }
        counts
    }
}

impl fmt::Display for EditScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.ops.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let k = match o.kind {
                OpKind::Del => "D",
                OpKind::Ins0 => "I0",
                OpKind::Ins1 => "I1",
            };
            write!(f, "{k}@{}", o.pos)?;
        }
        Ok(())
    }
}

/// Applies `s` to `u`.
pub fn apply(u: &Word, s: &EditScript) -> Result<Word> {
    s.ensure_valid_for(u.len())?;
    let mut bits = u.to_vec();
    for o in &s.ops {
        match o.kind {
            OpKind::Del => {
                bits.remove(o.pos - 1);
            }
            OpKind::Ins0 => bits.insert(o.pos, 0),
            OpKind::Ins1 => bits.insert(o.pos, 1),
        }
    }
    Ok(Word::from_bits(bits))
}

/// Provenance of one symbol of an edited word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    /// The base word's symbol at this 1-based position.
    Orig(usize),
    Ins(u8),
}

/// Minimal script realizing a final token sequence. Base symbols missing
/// from `tokens` are deleted; each inserted run is anchored after the
/// nearest surviving base symbol to its left.
fn script_from_tokens(n: usize, tokens: &[Token]) -> EditScript {
    let mut survives = vec![false; n + 1];
    let mut groups: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    let mut anchor = 0;
    for t in tokens {
        match *t {
            Token::Orig(p) => {
                debug_assert!(p > anchor, "base symbols out of order");
                survives[p] = true;
                anchor = p;
            }
            Token::Ins(b) => groups.entry(anchor).or_default().push(b),
        }
    }
    let mut ops = Vec::new();
    for p in (0..=n).rev() {
        if p >= 1 && !survives[p] {
            ops.push(EditOp::del(p));
        } else if let Some(run) = groups.get(&p) {
            // Later insertions at one anchor land to the left of earlier ones.
            ops.extend(run.iter().rev().map(|&b| EditOp::ins(p, b)));
        }
    }
    EditScript::new(n, ops)
}

fn edit_tokens(tokens: &mut Vec<Token>, s: &EditScript) {
    for o in &s.ops {
        match o.kind {
            OpKind::Del => {
                tokens.remove(o.pos - 1);
            }
            OpKind::Ins0 => tokens.insert(o.pos, Token::Ins(0)),
            OpKind::Ins1 => tokens.insert(o.pos, Token::Ins(1)),
        }
    }
}

/// Canonical minimal script turning `u` into `v`.
///
/// Matches the lexicographically smallest LCS of `(u, v)` at its leftmost
/// embeddings in both words, deletes every other symbol of `u`, and inserts
/// every other symbol of `v` after the preceding matched symbol of `u`.
pub fn script_from_pair(u: &Word, v: &Word) -> EditScript {
    let t = SuffixTable::new(u, v);
    let (m, n) = (u.len(), v.len());
    let mut matched_v = vec![0usize; n + 1];
    let (mut i, mut j) = (0usize, 0usize);
    while t.lcs(i, j) > 0 {
        let here = t.lcs(i, j);
        let step = [0u8, 1].into_iter().find_map(|c| {
            let p = (i..m).find(|&p| t.u[p] == c)?;
            let q = (j..n).find(|&q| t.v[q] == c)?;
            (t.lcs(p + 1, q + 1) + 1 == here).then_some((p, q))
        });
        let (p, q) = step.expect("an LCS symbol always extends");
        matched_v[q + 1] = p + 1;
        i = p + 1;
        j = q + 1;
    }
    let tokens: Vec<Token> = (1..=n)
        .map(|q| match matched_v[q] {
            0 => Token::Ins(v.get(q).unwrap()),
            p => Token::Orig(p),
        })
        .collect();
    script_from_tokens(m, &tokens)
}

/// A single script on `u` with the effect of `s1` followed by `s2`.
///
/// Tracks which symbols of the intermediate word come from `u`; an
/// insertion of `s1` later deleted by `s2` cancels out, so the result has at
/// most `|s1| + |s2|` ops, two fewer per cancellation.
pub fn compose(u: &Word, s1: &EditScript, s2: &EditScript) -> Result<EditScript> {
    s1.ensure_valid_for(u.len())?;
    s2.ensure_valid_for(s1.result_length())?;
    let mut tokens: Vec<Token> = (1..=u.len()).map(Token::Orig).collect();
    edit_tokens(&mut tokens, s1);
    edit_tokens(&mut tokens, s2);
    let s3 = script_from_tokens(u.len(), &tokens);
    assert!(s3.len() <= s1.len() + s2.len());
    Ok(s3)
}

/// Positions `i` of the script with `lambda < i < n - lambda` and no other
/// op position within distance `2 * lambda`. A repeated position is never
/// isolated.
pub fn isolated_positions(s: &EditScript, lambda: usize) -> Result<BTreeSet<usize>> {
    if !s.validate() {
        return Err(Error::input(format!("invalid edit script {s}")));
    }
    let n = s.base_length;
    let counts = s.position_counts();
    let positions: Vec<usize> = counts.keys().copied().collect();
    let reach = 2 * lambda;
    Ok(positions
        .iter()
        .enumerate()
        .filter(|&(idx, &i)| {
            i > lambda
                && i + lambda < n
                && counts[&i] == 1
                && (idx == 0 || i - positions[idx - 1] > reach)
                && positions.get(idx + 1).is_none_or(|&j| j - i > reach)
        })
        .map(|(_, &i)| i)
        .collect())
}

/// Parameters of a sampled check of the isolation lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsolationParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub trials: u64,
    pub seed: u64,
}

const RESTARTS: usize = 64;
const SCRIPT_ATTEMPTS: usize = 256;

/// Random lambda-nonrepeating word by randomized depth-first extension over
/// unseen windows. `None` if the step budget runs out on every restart.
fn sample_nonrepeating(rng: &mut ChaCha8Rng, n: usize, lambda: usize) -> Option<Word> {
    if n <= lambda {
        return Some(Word::from_bits((0..n).map(|_| rng.random_range(0..2u8))));
    }
    let wmask = if lambda >= 64 {
        u64::MAX
    } else {
        (1u64 << lambda) - 1
    };
    let window = |bits: &[u8]| {
        bits[bits.len() - lambda..]
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64)
            & wmask
    };
    let budget = 200 * n;
    for _ in 0..RESTARTS {
        let mut bits: Vec<u8> = Vec::with_capacity(n);
        // Untried symbols at each depth; always one more entry than `bits`.
        let mut pending: Vec<Vec<u8>> = Vec::with_capacity(n + 1);
        let mut seen: HashSet<u64> = HashSet::new();
        let fresh = |rng: &mut ChaCha8Rng| {
            let mut order = vec![0u8, 1];
            order.shuffle(rng);
            order
        };
        pending.push(fresh(rng));
        for _ in 0..budget {
            match pending.last_mut().and_then(|c| c.pop()) {
                Some(b) => {
                    bits.push(b);
                    if bits.len() >= lambda && !seen.insert(window(&bits)) {
                        bits.pop();
                        continue;
                    }
                    if bits.len() == n {
                        return Some(Word::from_bits(bits));
                    }
                    pending.push(fresh(rng));
                }
                None => {
                    pending.pop();
                    if bits.is_empty() {
                        break;
                    }
                    if bits.len() >= lambda {
                        seen.remove(&window(&bits));
                    }
                    bits.pop();
                }
            }
        }
    }
    None
}

/// Random valid script on words of length `n` with equally many deletions
/// and insertions and at least `2k + 1` lambda-isolated positions.
///
/// Lays out `2k + 2` positions with pairwise gaps above `2 * lambda`; one of
/// them, at a random rank, balances the op count and may sit outside
/// `(lambda, n - lambda)`. Sometimes adds a clustered pair on top, keeping
/// the draw only if enough positions stayed isolated.
fn sample_isolated_script(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    lambda: usize,
) -> Option<EditScript> {
    let need = 2 * k + 1;
    let gap = 2 * lambda + 1;
    let lo = lambda + 1;
    let hi = n.checked_sub(lambda + 1)?;
    // Ranks the balancing op can take, with the slack each leaves.
    let layouts: Vec<(usize, usize, usize)> = [0, need / 2 + 1, need]
        .into_iter()
        .filter_map(|rank| {
            let lower = if rank == 0 { 0 } else { lo };
            let upper = if rank == need { n } else { hi };
            let slack = upper.checked_sub(lower + need * gap)?;
            Some((rank, lower, slack))
        })
        .collect();
    if layouts.is_empty() {
        return None;
    }
    for _ in 0..SCRIPT_ATTEMPTS {
        let (_, lower, slack) = layouts[rng.random_range(0..layouts.len())];
        let mut offs: Vec<usize> = (0..=need).map(|_| rng.random_range(0..=slack)).collect();
        offs.sort_unstable();
        let mut positions: Vec<usize> = offs
            .iter()
            .enumerate()
            .map(|(idx, &o)| lower + o + idx * gap)
            .collect();
        if rng.random_bool(0.5) {
            let p = rng.random_range(1..=n);
            positions.push(p);
            positions.push(rng.random_range(p.saturating_sub(2)..=p));
        }
        let total = positions.len();
        let mut dels: Vec<bool> = (0..total).map(|i| i < total / 2).collect();
        dels.shuffle(rng);
        let mut ops: Vec<EditOp> = positions
            .iter()
            .zip(dels)
            .map(|(&p, del)| {
                if del {
                    EditOp::del(p)
                } else {
                    EditOp::ins(p, rng.random_range(0..2u8))
                }
            })
            .collect();
        // Descending positions; at a tie the deletion goes last.
        ops.sort_by(|a, b| {
            b.pos
                .cmp(&a.pos)
                .then(a.kind.is_del().cmp(&b.kind.is_del()))
        });
        let s = EditScript::new(n, ops);
        if s.validate() && isolated_positions(&s, lambda).ok()?.len() >= need {
            return Some(s);
        }
    }
    None
}

/// Smallest `n` admitting a length-preserving script with `2k + 1`
/// lambda-isolated positions: those plus at least one more op, all more
/// than `2 * lambda` apart, with the isolated ones inside `(lambda, n - lambda)`.
pub fn min_length_for_isolated_script(k: usize, lambda: usize) -> usize {
    (2 * k + 1) * (2 * lambda + 1) + lambda + 1
}

#[derive(Default)]
struct TrialOutcome {
    tested: bool,
    counterexample: Option<String>,
}

/// Samples pairs `(u, s)` with `u` lambda-nonrepeating and `s` carrying at
/// least `2k + 1` lambda-isolated positions; whenever `v = apply(u, s)` is
/// also lambda-nonrepeating, checks `d(u, v) > k`.
///
/// Trial `t` draws from stream `t` of a ChaCha generator seeded with `seed`,
/// so results do not depend on the thread count.
pub fn verify_isolation_lemma(p: IsolationParams) -> Result<CensusReport> {
    let clock = Stopwatch::start();
    let IsolationParams {
        n,
        k,
        lambda,
        trials,
        seed,
    } = p;
    if n == 0 || k == 0 || lambda == 0 {
        return Err(Error::input("n, k and lambda must be at least 1"));
    }
    let mut report = CensusReport::new("isolation-lemma")
        .param("n", n as u64)
        .param("k", k as u64)
        .param("lambda", lambda as u64)
        .param("trials", trials)
        .param("seed", seed);
    if trials == 0 {
        report.passed = Some(true);
        report.runtime_ms = Some(clock.elapsed_ms());
        return Ok(report);
    }
    if lambda < 64 && (n + 1).saturating_sub(lambda) as u128 > 1u128 << lambda {
        return Err(Error::resource(format!(
            "no {lambda}-nonrepeating word of length {n} exists: {} windows but only {} distinct words of length {lambda}",
            n + 1 - lambda,
            1u128 << lambda
        )));
    }
    let min_n = min_length_for_isolated_script(k, lambda);
    if n < min_n {
        return Err(Error::input(format!(
            "no length-preserving script on words of length {n} has {} {lambda}-isolated positions (needs n >= {min_n})",
            2 * k + 1
        )));
    }

    let outcomes: Vec<Result<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let u = sample_nonrepeating(&mut rng, n, lambda).ok_or_else(|| {
                Error::resource(format!(
                    "could not sample a {lambda}-nonrepeating word of length {n}"
                ))
            })?;
            let s = sample_isolated_script(&mut rng, n, k, lambda).ok_or_else(|| {
                Error::resource("could not sample a script with enough isolated positions")
            })?;
            let v = apply(&u, &s)?;
            if !v.is_lambda_nonrepeating(lambda)? {
                return Ok(TrialOutcome::default());
            }
            let d = deletion_distance(&u, &v)?;
            Ok(TrialOutcome {
                tested: true,
                counterexample: (d <= k).then(|| format!("u={u} script={s} v={v} d={d}")),
            })
        })
        .collect();

    for o in outcomes {
        let o = o?;
        report.checked += o.tested as u64;
        if let Some(c) = o.counterexample {
            report.count += 1;
            if report.notes.len() < 10 {
                report.notes.push(c);
            }
        }
    }
    report.passed = Some(report.count == 0);
    report.runtime_ms = Some(clock.elapsed_ms());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcsscs::lcs_len;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn script(text: &str, n: usize) -> EditScript {
        EditScript::parse(text, n).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(script("D@2,D@1", 3).validate());
        assert!(!script("D@2,D@2", 3).validate());
        assert!(!script("D@0", 3).validate());
        assert!(!script("D@4", 3).validate());
        assert!(!script("I0@1,I1@2", 3).validate());
        assert!(script("I0@2,I1@2,D@2,I0@1", 3).validate());
        assert!(script("", 3).validate());
    }

    #[test]
    fn parse_and_display() {
        let s = script("D@7,I0@4,D@2", 9);
        assert_eq!(s.to_string(), "D@7,I0@4,D@2");
        assert_eq!(s.deletions(), 2);
        assert_eq!(s.insertions(), 1);
        assert!(EditScript::parse("X@1", 3).is_err());
        assert!(EditScript::parse("D1", 3).is_err());
        assert!(EditScript::parse("D@-1", 3).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply(&w("101"), &script("D@2", 3)).unwrap(), w("11"));
        assert_eq!(apply(&w("0"), &script("I1@1,I0@0", 1)).unwrap(), w("001"));
        assert_eq!(apply(&w("1000"), &script("", 4)).unwrap(), w("1000"));
        assert!(apply(&w("1000"), &script("D@2", 3)).is_err());
        assert!(apply(&w("100"), &script("D@2,D@2", 3)).is_err());
    }

    #[test]
    fn insertions_sharing_a_position_keep_script_order() {
        // The later insertion lands to the left of the earlier one.
        assert_eq!(apply(&w("11"), &script("I0@1,I1@1", 2)).unwrap(), w("1101"));
        // An insertion may precede a deletion at the same position.
        assert_eq!(apply(&w("11"), &script("I0@1,D@1", 2)).unwrap(), w("01"));
    }

    #[test]
    fn script_from_pair_examples() {
        assert!(script_from_pair(&w("10"), &w("10")).is_empty());
        let s = script_from_pair(&w("10"), &w("1"));
        assert_eq!(s.to_string(), "D@2");
        let s = script_from_pair(&w("0110"), &w("1001"));
        assert!(s.validate());
        assert_eq!(apply(&w("0110"), &s).unwrap(), w("1001"));
    }

    #[test]
    fn script_round_trip_exhaustive_small() {
        for lu in 0..=6 {
            for lv in 0..=6 {
                for x in 0..1u64 << lu {
                    for z in 0..1u64 << lv {
                        let (u, v) = (Word::from_index(x, lu), Word::from_index(z, lv));
                        let s = script_from_pair(&u, &v);
                        let l = lcs_len(&u, &v);
                        assert!(s.validate(), "{u} {v} {s}");
                        assert_eq!(apply(&u, &s).unwrap(), v);
                        assert_eq!(s.deletions(), lu - l);
                        assert_eq!(s.insertions(), lv - l);
                    }
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let u = w("0110100");
        let s = script("D@5,I1@2", 7);
        let c = compose(&u, &s, &EditScript::empty(s.result_length())).unwrap();
        assert_eq!(apply(&u, &c).unwrap(), apply(&u, &s).unwrap());
        assert!(c.len() <= s.len());

        // Insert 0 after u_1 of 11, then delete that 0 again.
        let u = w("11");
        let s1 = script("I0@1", 2);
        assert_eq!(apply(&u, &s1).unwrap(), w("101"));
        let s2 = script("D@2", 3);
        let c = compose(&u, &s1, &s2).unwrap();
        assert_eq!(apply(&u, &c).unwrap(), w("11"));
        assert!(c.len() < s1.len() + s2.len());
        assert!(c.is_empty());
    }

    #[test]
    fn compose_checks_preconditions() {
        let u = w("0110");
        assert!(compose(&u, &script("D@2", 3), &EditScript::empty(2)).is_err());
        assert!(compose(&u, &script("D@2", 4), &EditScript::empty(4)).is_err());
    }

    #[test]
    fn isolated_examples() {
        let s = |t: &str| script(t, 20);
        assert_eq!(
            isolated_positions(&s("D@10"), 3).unwrap(),
            BTreeSet::from([10])
        );
        assert!(isolated_positions(&s("D@12,D@10"), 3).unwrap().is_empty());
        assert!(isolated_positions(&s("D@2"), 3).unwrap().is_empty());
        assert!(isolated_positions(&s("I0@10,D@10"), 3).unwrap().is_empty());
        assert!(isolated_positions(&s("D@17"), 3).unwrap().is_empty());
        assert_eq!(
            isolated_positions(&s("D@16"), 3).unwrap(),
            BTreeSet::from([16])
        );
        assert_eq!(
            isolated_positions(&s("D@16,I1@9"), 3).unwrap(),
            BTreeSet::from([9, 16])
        );
        assert_eq!(
            isolated_positions(&s("D@11,I1@3"), 3).unwrap(),
            BTreeSet::from([11])
        );
        assert!(isolated_positions(&s("D@2,D@2"), 3).is_err());
    }

    #[test]
    fn isolation_lemma_empty_run() {
        let r = verify_isolation_lemma(IsolationParams {
            n: 40,
            k: 1,
            lambda: 6,
            trials: 0,
            seed: 1,
        })
        .unwrap();
        assert_eq!((r.count, r.checked, r.passed), (0, 0, Some(true)));
    }

    #[test]
    fn isolation_lemma_refuses_impossible_words() {
        // 38 windows of length 3 cannot be distinct among 8 words.
        let e = verify_isolation_lemma(IsolationParams {
            n: 40,
            k: 1,
            lambda: 3,
            trials: 10,
            seed: 1,
        });
        assert!(matches!(e, Err(Error::Resource(_))));
    }

    #[test]
    fn isolation_lemma_refuses_crowded_scripts() {
        assert_eq!(min_length_for_isolated_script(1, 6), 46);
        let e = verify_isolation_lemma(IsolationParams {
            n: 45,
            k: 1,
            lambda: 6,
            trials: 10,
            seed: 1,
        });
        assert!(matches!(e, Err(Error::Input(_))));
    }

    #[test]
    fn isolation_lemma_feasible_runs() {
        for (n, k, lambda) in [(53, 1, 7), (80, 1, 10), (116, 2, 10), (200, 2, 12)] {
            let r = verify_isolation_lemma(IsolationParams {
                n,
                k,
                lambda,
                trials: 200,
                seed: 7,
            })
            .unwrap();
            assert_eq!(r.count, 0, "{:?}", r.notes);
            assert!(r.checked > 0, "no trial produced a nonrepeating v");
        }
    }

    #[test]
    fn sampler_produces_nonrepeating_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = sample_nonrepeating(&mut rng, 60, 6).unwrap();
            assert_eq!(u.len(), 60);
            assert!(u.is_lambda_nonrepeating(6).unwrap());
        }
        // 64 windows of length 6: only de Bruijn-like words qualify.
        let u = sample_nonrepeating(&mut rng, 69, 6);
        assert!(u.is_none_or(|u| u.is_lambda_nonrepeating(6).unwrap()));
    }
}
