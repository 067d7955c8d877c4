//! Directive functions ψ given by an explicit table and a tail scheme.
//!
//! `ψ(n)` is either a letter or an index `1 ≤ ψ(n) ≤ n − 1`. The t-family
//! collects the indices where ψ is a letter or jumps back by at least two;
//! a function is *reduced* when every consecutive pair of the t-family
//! satisfies `ψ(t_k) ≠ ψ(t_{k−1})` and either `ψ(t_k)` is a letter or
//! `ψ(t_k) < t_{k−1}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lengths::{PalindromicProfile, Step};
use crate::oracle::{self, Abundance};
use crate::seq::{IntSequence, LetterSequence};
use crate::words::{Letter, WordStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PsiValue {
    Letter(Letter),
    Index(usize),
}

impl PsiValue {
    pub fn is_letter(self) -> bool {
        matches!(self, PsiValue::Letter(_))
    }

    pub fn index(self) -> Option<usize> {
        match self {
            PsiValue::Index(j) => Some(j),
            PsiValue::Letter(_) => None,
        }
    }
}

impl fmt::Display for PsiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiValue::Letter(l) => write!(f, "{l}"),
            PsiValue::Index(j) => write!(f, "{j}"),
        }
    }
}

/// How ψ continues past the explicit table `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// `ψ(i) = i − 1`.
    Prev,
    /// `ψ(i) = i − offsets[(i − m − 1) mod p]`.
    OffsetPeriodic { offsets: Vec<usize> },
    /// The characteristic Sturmian scheme of slope `[0; s_1, s_2, …]`:
    /// `ψ(t_k) = t_{k−1} − 1` on the t-family, `ψ(i) = i − 1` elsewhere,
    /// with the two leading letters fixed by `s_1`.
    Sturmian { s: IntSequence },
    /// `ψ(n)` is the last earlier position carrying the letter `δ_n` of the
    /// directive word, or the letter itself at its first occurrence.
    FromDelta { delta: LetterSequence },
    /// ψ is only known on the table (e.g. recovered from a finite prefix).
    Truncated,
}

/// Finitely described directive function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "json::SpecJson", try_from = "json::SpecJson")]
pub struct DirectiveFunctionSpec {
    table: Vec<PsiValue>,
    tail: Tail,
}

/// Region past which the offsets `i − ψ(i)` repeat: for `i ≥ start`,
/// `ψ(i + period) = ψ(i) + period` and ψ takes no letter values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailStructure {
    pub start: usize,
    pub period: usize,
    /// Largest offset `i − ψ(i)` in the region.
    pub max_offset: usize,
    /// Whether the region contains t-family members.
    pub has_jumps: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TFamily {
    pub indices: Vec<usize>,
    /// The family is provably finite and entirely listed.
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReducedCondition {
    /// `ψ(t_k) ≠ ψ(t_{k−1})`.
    Distinct,
    /// `ψ(t_k)` is a letter or `ψ(t_k) < t_{k−1}`.
    Behind,
}

impl ReducedCondition {
    pub fn number(self) -> u8 {
        match self {
            ReducedCondition::Distinct => 1,
            ReducedCondition::Behind => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reducedness {
    Reduced,
    /// `k` indexes the t-family from `t_0 = 1`; `t` is `t_k` itself.
    ViolationAt { k: usize, t: usize, condition: ReducedCondition },
    VerifiedUpTo(usize),
}

impl fmt::Display for Reducedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reducedness::Reduced => write!(f, "Reduced"),
            Reducedness::ViolationAt { k, t, condition } => {
                write!(f, "ViolationAt k={k} (t_k={t}) condition {}", condition.number())
            }
            Reducedness::VerifiedUpTo(h) => write!(f, "VerifiedUpTo {h}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Strictness {
    Strict,
    NotStrict(BTreeSet<Letter>),
    /// Every letter occurs in the second half of `δ_1 … δ_horizon`.
    VerifiedUpTo(usize),
    /// Some letters are absent from the second half of `δ_1 … δ_horizon`.
    MissingUpTo { missing: BTreeSet<Letter>, horizon: usize },
}

/// Letter-state cap for detecting the cycle of the directive word.
const CYCLE_SEARCH_LIMIT: usize = 4_000_000;

impl DirectiveFunctionSpec {
    pub fn new(table: Vec<PsiValue>, tail: Tail) -> Result<Self> {
        let spec = Self { table, tail };
        spec.validate()?;
        Ok(spec)
    }

    /// Table entries given as `(i, ψ(i))` pairs covering `1..=m` in any order.
    pub fn from_entries(mut entries: Vec<(usize, PsiValue)>, tail: Tail) -> Result<Self> {
        entries.sort_by_key(|e| e.0);
        for (k, (i, _)) in entries.iter().enumerate() {
            if *i != k + 1 {
                return Err(Error::InvalidSpec(format!("table must list indices 1..=m exactly once, found {i} at position {}", k + 1)));
            }
        }
        Self::new(entries.into_iter().map(|e| e.1).collect(), tail)
    }

    /// `ψ(1) = b, ψ(2) = a, ψ(i) = i − 2`: the Fibonacci word.
    pub fn fibonacci() -> Self {
        Self::new(
            vec![PsiValue::Letter(Letter::B), PsiValue::Letter(Letter::A)],
            Tail::OffsetPeriodic { offsets: vec![2] },
        )
        .expect("valid")
    }

    /// `ψ(1..=3) = a, b, c` and `ψ(n) = n − 3`: the Tribonacci word.
    pub fn tribonacci() -> Self {
        Self::new(
            vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B), PsiValue::Letter(Letter::C)],
            Tail::OffsetPeriodic { offsets: vec![3] },
        )
        .expect("valid")
    }

    /// `ψ(1) = letter, ψ(i) = i − 1`: the constant word.
    pub fn constant(letter: Letter) -> Self {
        Self::new(vec![PsiValue::Letter(letter)], Tail::Prev).expect("valid")
    }

    pub fn table(&self) -> &[PsiValue] {
        &self.table
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Index up to which ψ is defined, `None` when defined everywhere.
    pub fn defined_up_to(&self) -> Option<usize> {
        matches!(self.tail, Tail::Truncated).then_some(self.table.len())
    }

    fn validate(&self) -> Result<()> {
        let m = self.table.len();
        let needs_table = matches!(self.tail, Tail::Prev | Tail::OffsetPeriodic { .. } | Tail::Truncated);
        if needs_table && m == 0 {
            return Err(Error::InvalidSpec("table must define ψ(1)".into()));
        }
        match &self.tail {
            Tail::OffsetPeriodic { offsets } => {
                if offsets.is_empty() {
                    return Err(Error::InvalidSpec("offset list must be non-empty".into()));
                }
                for (k, &off) in offsets.iter().enumerate() {
                    let i = m + 1 + k;
                    if off == 0 || off >= i {
                        return Err(Error::InvalidSpec(format!("offset {off} at index {i} leaves 1..{}", i - 1)));
                    }
                }
            }
            Tail::Sturmian { s } => {
                IntSequence::new(s.preperiod().to_vec(), s.period().to_vec())
                    .map_err(|e| Error::InvalidSpec(e.to_string()))?;
            }
            Tail::FromDelta { delta } => {
                if delta.period().is_empty() {
                    return Err(Error::InvalidSpec("directive word must be infinite".into()));
                }
            }
            Tail::Prev | Tail::Truncated => {}
        }
        for (k, v) in self.table.iter().enumerate() {
            check_site(k + 1, *v)?;
        }
        Ok(())
    }

    /// `ψ(n)` for `n ≥ 1`.
    pub fn psi_value(&self, n: usize) -> Result<PsiValue> {
        if n == 0 {
            return Err(Error::InvalidParameters("ψ is indexed from 1".into()));
        }
        let m = self.table.len();
        if n <= m {
            return Ok(self.table[n - 1]);
        }
        let v = match &self.tail {
            Tail::Prev => PsiValue::Index(n - 1),
            Tail::OffsetPeriodic { offsets } => PsiValue::Index(n - offsets[(n - m - 1) % offsets.len()]),
            Tail::Sturmian { s } => SturmianScheme::new(s).value_at(n),
            Tail::FromDelta { delta } => delta_psi_at(delta, n),
            Tail::Truncated => return Err(Error::BeyondTable { index: n, table_len: m }),
        };
        check_site(n, v)?;
        Ok(v)
    }

    /// `ψ(1), ψ(2), …` computed incrementally.
    pub fn iter(&self) -> PsiIter<'_> {
        PsiIter::new(self)
    }

    /// `ψ(1..=count)`.
    pub fn materialize(&self, count: usize) -> Result<Vec<PsiValue>> {
        self.iter().take(count).collect()
    }

    /// Periodic offset structure of the tail, `None` for truncated tables.
    pub fn tail_structure(&self) -> Option<TailStructure> {
        let m = self.table.len();
        let (start, period) = match &self.tail {
            Tail::Truncated => return None,
            Tail::Prev => (m + 1, 1),
            Tail::OffsetPeriodic { offsets } => (m + 1, offsets.len()),
            Tail::Sturmian { s } => {
                let scheme = SturmianScheme::new(s);
                let q = s.preperiod().len();
                let first_periodic_block = if scheme.shifted { q.max(2) } else { (q + 1).max(2) };
                let t = scheme.t_value(first_periodic_block - 1);
                ((m + 1).max(t + 1), s.period().iter().map(|&x| x as usize).sum())
            }
            Tail::FromDelta { delta } => {
                let q = delta.preperiod().len();
                let r = delta.period().len();
                ((m + 1).max(q + r + 1), r)
            }
        };
        let values = self.materialize(start + period - 1).ok()?;
        let offsets: Vec<usize> = (start..start + period)
            .map(|i| i - values[i - 1].index().expect("no letters in the periodic region"))
            .collect();
        Some(TailStructure {
            start,
            period,
            max_offset: offsets.iter().copied().max().unwrap_or(1),
            has_jumps: offsets.iter().any(|&o| o >= 2),
        })
    }

    /// The slope `s` when ψ coincides, up to renaming the two letters, with
    /// the characteristic Sturmian scheme of an eventually periodic `s`.
    pub fn sturmian_slope(&self) -> Option<IntSequence> {
        let ts = self.tail_structure()?;
        if !ts.has_jumps {
            return None;
        }
        let limit = ts.start + 2 * ts.period + 1;
        let values = self.materialize(limit).ok()?;
        let t: Vec<usize> = (1..=limit).filter(|&n| is_jump(n, values[n - 1])).collect();
        match (values[0], values[t[1] - 1]) {
            (PsiValue::Letter(x), PsiValue::Letter(y)) if x != y => {}
            _ => return None,
        }
        if (2..t.len()).any(|k| values[t[k] - 1] != PsiValue::Index(t[k - 1] - 1)) {
            return None;
        }
        let p = t.iter().position(|&x| x >= ts.start)?;
        let gaps: Vec<u64> = t.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
        let c = t[p + 1..].iter().take_while(|&&x| x <= t[p] + ts.period).count();
        let mut pre = gaps[..p].to_vec();
        pre[0] += 1;
        IntSequence::new(pre, gaps[p..p + c].to_vec()).ok()
    }

    /// True when the t-family is infinite.
    pub fn has_infinite_t_family(&self) -> Option<bool> {
        self.tail_structure().map(|s| s.has_jumps)
    }

    /// Indices `n ≤ horizon` where ψ(n) is a letter or at most `n − 2`.
    pub fn t_family(&self, horizon: usize) -> Result<TFamily> {
        let horizon = self.defined_up_to().map_or(horizon, |m| horizon.min(m));
        let mut indices = Vec::new();
        for (k, v) in self.iter().take(horizon).enumerate() {
            if is_jump(k + 1, v?) {
                indices.push(k + 1);
            }
        }
        let exhaustive = match self.tail_structure() {
            Some(ts) => !ts.has_jumps && horizon + 1 >= ts.start,
            None => false,
        };
        Ok(TFamily { indices, exhaustive })
    }

    /// Checks both reducedness conditions on consecutive t-family pairs.
    /// For periodic tails two full periods past the start of the periodic
    /// region decide the question for all indices.
    pub fn is_reduced(&self, horizon: usize) -> Result<Reducedness> {
        let (limit, exact) = match self.tail_structure() {
            Some(ts) => (ts.start + 2 * ts.period + 1, true),
            None => (horizon.min(self.table.len()), false),
        };
        let mut prev: Option<(usize, PsiValue)> = None;
        let mut k = 0;
        for (idx, v) in self.iter().take(limit).enumerate() {
            let n = idx + 1;
            let v = v?;
            if !is_jump(n, v) {
                continue;
            }
            if let Some((t_prev, v_prev)) = prev {
                k += 1;
                if v == v_prev {
                    return Ok(Reducedness::ViolationAt { k, t: n, condition: ReducedCondition::Distinct });
                }
                if let PsiValue::Index(j) = v {
                    if j >= t_prev {
                        return Ok(Reducedness::ViolationAt { k, t: n, condition: ReducedCondition::Behind });
                    }
                }
            }
            prev = Some((n, v));
        }
        Ok(if exact { Reducedness::Reduced } else { Reducedness::VerifiedUpTo(limit) })
    }

    /// `δ_1 … δ_count` with `δ_n = ψ(n)` for letters and `δ_{ψ(n)}` otherwise.
    pub fn first_letters(&self, count: usize) -> Result<Vec<Letter>> {
        let mut delta = Vec::with_capacity(count);
        for v in self.iter().take(count) {
            delta.push(match v? {
                PsiValue::Letter(l) => l,
                PsiValue::Index(j) => delta[j - 1],
            });
        }
        if delta.len() < count {
            return Err(Error::BeyondTable { index: delta.len() + 1, table_len: self.table.len() });
        }
        Ok(delta)
    }

    /// Whether every letter of `alphabet` occurs infinitely often in the
    /// directive word. Exact for periodic tails: the word of first letters is
    /// then driven by a finite-state recurrence whose cycle is found directly.
    pub fn is_a_strict(&self, alphabet: &BTreeSet<Letter>, horizon: usize) -> Result<Strictness> {
        if let Some(ts) = self.tail_structure() {
            if let Some(recurrent) = self.recurrent_first_letters(ts)? {
                let missing: BTreeSet<Letter> = alphabet.difference(&recurrent).copied().collect();
                return Ok(if missing.is_empty() { Strictness::Strict } else { Strictness::NotStrict(missing) });
            }
        }
        let horizon = self.defined_up_to().map_or(horizon, |m| horizon.min(m));
        let delta = self.first_letters(horizon)?;
        let seen: BTreeSet<Letter> = delta[horizon / 2..].iter().copied().collect();
        let missing: BTreeSet<Letter> = alphabet.difference(&seen).copied().collect();
        Ok(if missing.is_empty() {
            Strictness::VerifiedUpTo(horizon)
        } else {
            Strictness::MissingUpTo { missing, horizon }
        })
    }

    /// Letters on the eventual cycle of the word of first letters.
    fn recurrent_first_letters(&self, ts: TailStructure) -> Result<Option<BTreeSet<Letter>>> {
        let window = ts.max_offset;
        let mut delta: Vec<Letter> = Vec::new();
        let mut seen: HashMap<(usize, Vec<Letter>), usize> = HashMap::new();
        for (idx, v) in self.iter().take(CYCLE_SEARCH_LIMIT).enumerate() {
            let n = idx + 1;
            if n >= ts.start + window {
                let state = ((n - ts.start) % ts.period, delta[n - 1 - window..].to_vec());
                if let Some(&first) = seen.get(&state) {
                    return Ok(Some(delta[first - 1..].iter().copied().collect()));
                }
                seen.insert(state, n);
            }
            delta.push(match v? {
                PsiValue::Letter(l) => l,
                PsiValue::Index(j) => delta[j - 1],
            });
        }
        Ok(None)
    }

    /// Same table, different tail.
    pub fn with_tail(&self, tail: Tail) -> Result<Self> {
        Self::new(self.table.clone(), tail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))
    }
}

fn is_jump(n: usize, v: PsiValue) -> bool {
    match v {
        PsiValue::Letter(_) => true,
        PsiValue::Index(j) => j + 2 <= n,
    }
}

fn check_site(n: usize, v: PsiValue) -> Result<()> {
    match v {
        PsiValue::Letter(_) => Ok(()),
        PsiValue::Index(_) if n == 1 => Err(Error::InvalidSpec("ψ(1) must be a letter".into())),
        PsiValue::Index(j) if j == 0 || j >= n => {
            Err(Error::InvalidSpec(format!("ψ({n}) = {j} is outside 1..{}", n - 1)))
        }
        PsiValue::Index(_) => Ok(()),
    }
}

/// The episturmian rule: last earlier occurrence of `δ_n`, or `δ_n` itself.
fn delta_psi_at(delta: &LetterSequence, n: usize) -> PsiValue {
    let letter = *delta.term(n);
    (1..n)
        .rev()
        .find(|&j| *delta.term(j) == letter)
        .map_or(PsiValue::Letter(letter), PsiValue::Index)
}

/// Incremental state of the Sturmian scheme. With gaps `g_k = t_k − t_{k−1}`,
/// `g_1 = s_1 − 1, g_k = s_k` when `s_1 ≥ 2` and `g_k = s_{k+1}` when `s_1 = 1`.
#[derive(Clone, Debug)]
struct SturmianScheme<'a> {
    s: &'a IntSequence,
    shifted: bool,
    letters: (Letter, Letter),
    k: usize,
    t_prev: usize,
    t_cur: usize,
}

impl<'a> SturmianScheme<'a> {
    fn new(s: &'a IntSequence) -> Self {
        let shifted = *s.term(1) == 1;
        let letters = if shifted { (Letter::B, Letter::A) } else { (Letter::A, Letter::B) };
        let mut scheme = Self { s, shifted, letters, k: 1, t_prev: 1, t_cur: 1 };
        scheme.t_cur = 1 + scheme.gap(1);
        scheme
    }

    fn gap(&self, k: usize) -> usize {
        let g = if self.shifted {
            *self.s.term(k + 1)
        } else if k == 1 {
            *self.s.term(1) - 1
        } else {
            *self.s.term(k)
        };
        g as usize
    }

    /// `t_k`.
    fn t_value(&self, k: usize) -> usize {
        1 + (1..=k).map(|j| self.gap(j)).sum::<usize>()
    }

    /// ψ(i) for non-decreasing `i` across calls.
    fn next_value(&mut self, i: usize) -> PsiValue {
        if i == 1 {
            return PsiValue::Letter(self.letters.0);
        }
        while i > self.t_cur {
            self.k += 1;
            self.t_prev = self.t_cur;
            self.t_cur += self.gap(self.k);
        }
        if i < self.t_cur {
            PsiValue::Index(i - 1)
        } else if self.k == 1 {
            PsiValue::Letter(self.letters.1)
        } else {
            PsiValue::Index(self.t_prev - 1)
        }
    }

    fn value_at(mut self, i: usize) -> PsiValue {
        self.next_value(i)
    }
}

enum TailState<'a> {
    Plain,
    Sturmian(SturmianScheme<'a>),
    Delta(HashMap<Letter, usize>),
}

/// Sequential evaluation of ψ; amortized O(1) per value for every tail.
pub struct PsiIter<'a> {
    spec: &'a DirectiveFunctionSpec,
    next: usize,
    state: TailState<'a>,
}

impl<'a> PsiIter<'a> {
    fn new(spec: &'a DirectiveFunctionSpec) -> Self {
        let state = match &spec.tail {
            Tail::Sturmian { s } => TailState::Sturmian(SturmianScheme::new(s)),
            Tail::FromDelta { .. } => TailState::Delta(HashMap::new()),
            _ => TailState::Plain,
        };
        Self { spec, next: 1, state }
    }
}

impl Iterator for PsiIter<'_> {
    type Item = Result<PsiValue>;

    fn next(&mut self) -> Option<Result<PsiValue>> {
        let n = self.next;
        self.next += 1;
        let m = self.spec.table.len();
        let tail_value = match (&mut self.state, &self.spec.tail) {
            (TailState::Sturmian(scheme), _) => Some(scheme.next_value(n)),
            (TailState::Delta(last), Tail::FromDelta { delta }) => {
                let letter = *delta.term(n);
                let v = last.get(&letter).map_or(PsiValue::Letter(letter), |&j| PsiValue::Index(j));
                last.insert(letter, n);
                Some(v)
            }
            _ => None,
        };
        if n <= m {
            return Some(Ok(self.spec.table[n - 1]));
        }
        if let Tail::Truncated = self.spec.tail {
            return None;
        }
        let v = match tail_value {
            Some(v) => v,
            None => match &self.spec.tail {
                Tail::Prev => PsiValue::Index(n - 1),
                Tail::OffsetPeriodic { offsets } => PsiValue::Index(n - offsets[(n - m - 1) % offsets.len()]),
                _ => unreachable!("stateful tails handled above"),
            },
        };
        Some(check_site(n, v).map(|_| v))
    }
}

/// The episturmian directive function of `Δ`.
pub fn episturmian_psi(delta: &LetterSequence) -> DirectiveFunctionSpec {
    DirectiveFunctionSpec::new(Vec::new(), Tail::FromDelta { delta: delta.clone() }).expect("valid")
}

/// Reads off the unique reduced ψ of a word from its palindromic prefixes.
/// Only prefixes of length at most half the scanned length are used. The
/// returned table covers every index `i` with `n_{i+1}` in that range.
pub fn recover_psi(stream: &mut WordStream, horizon_length: usize) -> Result<(DirectiveFunctionSpec, PalindromicProfile)> {
    let letters = stream.letters_up_to(horizon_length)?;
    let report = oracle::palindromic_prefixes(letters);
    let lengths = report.trusted();
    if let Abundance::FirstViolation(index) = oracle::abundance_check(lengths) {
        return Err(Error::NotAbundant { index });
    }
    let mut table = Vec::with_capacity(lengths.len());
    for (i0, pair) in lengths.windows(2).enumerate() {
        let (n, next) = (pair[0], pair[1]);
        let v = if next == 2 * n + 1 {
            PsiValue::Letter(letters[n])
        } else {
            let target = 2 * n - next;
            match lengths.binary_search(&target) {
                Ok(j0) => PsiValue::Index(j0 + 1),
                Err(_) => return Err(Error::MissingLength { index: i0 + 1, length: target }),
            }
        };
        table.push(v);
    }
    if table.is_empty() {
        return Err(Error::InvalidParameters("prefix too short to recover ψ(1)".into()));
    }
    let profile = PalindromicProfile::new(
        lengths.iter().map(|&n| BigUint::from(n)).collect(),
        table.iter().map(|&v| Step::Psi(v)).collect(),
    );
    Ok((DirectiveFunctionSpec::new(table, Tail::Truncated)?, profile))
}

mod json {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub(super) struct Entry {
        i: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        letter: Option<Letter>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        index: Option<usize>,
    }

    #[derive(Serialize, Deserialize)]
    pub(super) struct Seq<T> {
        #[serde(default = "Vec::new")]
        preperiod: Vec<T>,
        period: Vec<T>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", rename_all = "snake_case")]
    pub(super) enum TailJson {
        Prev,
        OffsetPeriodic { offsets: Vec<usize> },
        Sturmian { s: Seq<u64> },
        FromDelta { delta: Seq<Letter> },
        Truncated,
    }

    #[derive(Serialize, Deserialize)]
    pub(super) struct SpecJson {
        #[serde(default)]
        table: Vec<Entry>,
        tail: TailJson,
    }

    impl From<DirectiveFunctionSpec> for SpecJson {
        fn from(spec: DirectiveFunctionSpec) -> Self {
            let table = spec
                .table
                .iter()
                .enumerate()
                .map(|(k, v)| match *v {
                    PsiValue::Letter(l) => Entry { i: k + 1, letter: Some(l), index: None },
                    PsiValue::Index(j) => Entry { i: k + 1, letter: None, index: Some(j) },
                })
                .collect();
            let tail = match spec.tail {
                Tail::Prev => TailJson::Prev,
                Tail::OffsetPeriodic { offsets } => TailJson::OffsetPeriodic { offsets },
                Tail::Sturmian { s } => TailJson::Sturmian {
                    s: Seq { preperiod: s.preperiod().to_vec(), period: s.period().to_vec() },
                },
                Tail::FromDelta { delta } => TailJson::FromDelta {
                    delta: Seq { preperiod: delta.preperiod().to_vec(), period: delta.period().to_vec() },
                },
                Tail::Truncated => TailJson::Truncated,
            };
            SpecJson { table, tail }
        }
    }

    impl TryFrom<SpecJson> for DirectiveFunctionSpec {
        type Error = Error;

        fn try_from(j: SpecJson) -> Result<Self> {
            let entries = j
                .table
                .into_iter()
                .map(|e| match (e.letter, e.index) {
                    (Some(l), None) => Ok((e.i, PsiValue::Letter(l))),
                    (None, Some(x)) => Ok((e.i, PsiValue::Index(x))),
                    _ => Err(Error::InvalidSpec(format!("entry {} needs exactly one of letter/index", e.i))),
                })
                .collect::<Result<Vec<_>>>()?;
            let tail = match j.tail {
                TailJson::Prev => Tail::Prev,
                TailJson::OffsetPeriodic { offsets } => Tail::OffsetPeriodic { offsets },
                TailJson::Sturmian { s } => Tail::Sturmian { s: IntSequence::new(s.preperiod, s.period)? },
                TailJson::FromDelta { delta } => {
                    Tail::FromDelta { delta: LetterSequence::new(delta.preperiod, delta.period)? }
                }
                TailJson::Truncated => Tail::Truncated,
            };
            DirectiveFunctionSpec::from_entries(entries, tail)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FiniteWord;

    fn letters(s: &str) -> Vec<Letter> {
        FiniteWord::parse(s).unwrap().into_letters()
    }

    fn l(c: char) -> PsiValue {
        PsiValue::Letter(Letter::from_char(c).unwrap())
    }

    fn sturmian(pre: &[u64], per: &[u64]) -> DirectiveFunctionSpec {
        let s = IntSequence::new(pre.to_vec(), per.to_vec()).unwrap();
        DirectiveFunctionSpec::new(Vec::new(), Tail::Sturmian { s }).unwrap()
    }

    fn doubled_back_reference() -> DirectiveFunctionSpec {
        DirectiveFunctionSpec::new(vec![l('a'), l('b'), PsiValue::Index(2), PsiValue::Index(2)], Tail::Prev).unwrap()
    }

    #[test]
    fn psi_value_fixtures() {
        assert_eq!(DirectiveFunctionSpec::fibonacci().psi_value(7).unwrap(), PsiValue::Index(5));
        assert_eq!(DirectiveFunctionSpec::tribonacci().psi_value(4).unwrap(), PsiValue::Index(1));
        assert!(DirectiveFunctionSpec::constant(Letter::A).psi_value(1).unwrap().is_letter());
        assert!(sturmian(&[], &[3]).psi_value(1).unwrap().is_letter());
    }

    #[test]
    fn validation_rejects_bad_sites() {
        assert!(DirectiveFunctionSpec::new(vec![PsiValue::Index(1)], Tail::Prev).is_err());
        assert!(DirectiveFunctionSpec::new(vec![l('a'), PsiValue::Index(2)], Tail::Prev).is_err());
        assert!(DirectiveFunctionSpec::new(vec![l('a')], Tail::OffsetPeriodic { offsets: vec![2] }).is_err());
        assert!(DirectiveFunctionSpec::new(vec![l('a')], Tail::OffsetPeriodic { offsets: vec![1, 2] }).is_ok());
        assert!(DirectiveFunctionSpec::new(Vec::new(), Tail::Prev).is_err());
    }

    #[test]
    fn t_family_fixtures() {
        let fib = DirectiveFunctionSpec::fibonacci().t_family(10).unwrap();
        assert_eq!(fib.indices, (1..=10).collect::<Vec<_>>());
        assert!(!fib.exhaustive);
        let c = DirectiveFunctionSpec::constant(Letter::A).t_family(10).unwrap();
        assert_eq!(c.indices, vec![1]);
        assert!(c.exhaustive);
        assert_eq!(sturmian(&[2], &[3]).t_family(8).unwrap().indices, vec![1, 2, 5, 8]);
    }

    #[test]
    fn sturmian_scheme_unrolls() {
        let s2 = sturmian(&[], &[2]).materialize(6).unwrap();
        assert_eq!(s2, vec![l('a'), l('b'), PsiValue::Index(2), PsiValue::Index(1), PsiValue::Index(4), PsiValue::Index(3)]);
        let s1 = sturmian(&[], &[1]).materialize(6).unwrap();
        assert_eq!(s1, DirectiveFunctionSpec::fibonacci().materialize(6).unwrap());
        let spec = sturmian(&[1, 3], &[2, 1]);
        for n in 1..60 {
            assert_eq!(spec.psi_value(n).unwrap(), spec.materialize(n).unwrap()[n - 1]);
        }
    }

    #[test]
    fn reducedness_fixtures() {
        assert_eq!(DirectiveFunctionSpec::fibonacci().is_reduced(10).unwrap(), Reducedness::Reduced);
        assert_eq!(
            doubled_back_reference().is_reduced(10).unwrap(),
            Reducedness::ViolationAt { k: 2, t: 4, condition: ReducedCondition::Behind }
        );
        let twice = DirectiveFunctionSpec::new(vec![l('a'), l('a')], Tail::Prev).unwrap();
        assert!(matches!(
            twice.is_reduced(10).unwrap(),
            Reducedness::ViolationAt { k: 1, condition: ReducedCondition::Distinct, .. }
        ));
        for s in [&[1u64][..], &[2], &[3], &[2, 1], &[1, 4, 2]] {
            assert_eq!(sturmian(&[], s).is_reduced(10).unwrap(), Reducedness::Reduced);
        }
    }

    #[test]
    fn first_letters_fixtures() {
        assert_eq!(DirectiveFunctionSpec::tribonacci().first_letters(6).unwrap(), letters("abcabc"));
        assert_eq!(DirectiveFunctionSpec::fibonacci().first_letters(4).unwrap(), letters("baba"));
    }

    #[test]
    fn episturmian_psi_fixtures() {
        let abc = LetterSequence::periodic(letters("abc")).unwrap();
        let spec = episturmian_psi(&abc);
        assert_eq!(spec.materialize(10).unwrap(), DirectiveFunctionSpec::tribonacci().materialize(10).unwrap());
        assert_eq!(spec.first_letters(9).unwrap(), letters("abcabcabc"));
        let a = LetterSequence::periodic(letters("a")).unwrap();
        assert_eq!(episturmian_psi(&a).materialize(5).unwrap(), DirectiveFunctionSpec::constant(Letter::A).materialize(5).unwrap());
        assert_eq!(spec.is_reduced(10).unwrap(), Reducedness::Reduced);
        let mixed = LetterSequence::new(letters("aab"), letters("cab")).unwrap();
        let spec = episturmian_psi(&mixed);
        for n in 1..40 {
            assert_eq!(spec.psi_value(n).unwrap(), spec.materialize(n).unwrap()[n - 1]);
        }
    }

    #[test]
    fn strictness_fixtures() {
        let ab: BTreeSet<Letter> = [Letter::A, Letter::B].into();
        assert_eq!(DirectiveFunctionSpec::fibonacci().is_a_strict(&ab, 100).unwrap(), Strictness::Strict);
        let spec = DirectiveFunctionSpec::new(vec![l('a'), l('b'), l('c')], Tail::OffsetPeriodic { offsets: vec![2] }).unwrap();
        let abc: BTreeSet<Letter> = [Letter::A, Letter::B, Letter::C].into();
        assert_eq!(spec.is_a_strict(&abc, 100).unwrap(), Strictness::NotStrict([Letter::A].into()));
        let a: BTreeSet<Letter> = [Letter::A].into();
        assert_eq!(DirectiveFunctionSpec::constant(Letter::A).is_a_strict(&a, 100).unwrap(), Strictness::Strict);
    }

    #[test]
    fn recovery_fixtures() {
        let mut a = WordStream::periodic(letters("a")).unwrap();
        let (spec, _) = recover_psi(&mut a, 40).unwrap();
        assert_eq!(spec.table()[0], l('a'));
        assert!(spec.table()[1..].iter().enumerate().all(|(k, v)| *v == PsiValue::Index(k + 1)));

        let mut bad = WordStream::finite(FiniteWord::parse("abbbbbacccccccc").unwrap());
        assert_eq!(recover_psi(&mut bad, 15).unwrap_err(), Error::NotAbundant { index: 2 });
    }

    #[test]
    fn json_round_trip_and_format() {
        let fib = DirectiveFunctionSpec::fibonacci();
        let j = fib.to_json();
        assert_eq!(
            j,
            r#"{"table":[{"i":1,"letter":"b"},{"i":2,"letter":"a"}],"tail":{"kind":"offset_periodic","offsets":[2]}}"#
        );
        assert_eq!(DirectiveFunctionSpec::from_json(&j).unwrap(), fib);
        let st = sturmian(&[2], &[1, 3]);
        assert_eq!(DirectiveFunctionSpec::from_json(&st.to_json()).unwrap(), st);
        let d = episturmian_psi(&LetterSequence::new(letters("a"), letters("bc")).unwrap());
        assert_eq!(DirectiveFunctionSpec::from_json(&d.to_json()).unwrap(), d);
        assert!(DirectiveFunctionSpec::from_json(r#"{"table":[{"i":2,"letter":"a"}],"tail":{"kind":"prev"}}"#).is_err());
        assert!(DirectiveFunctionSpec::from_json(r#"{"table":[{"i":1,"index":1}],"tail":{"kind":"prev"}}"#).is_err());
    }
}
