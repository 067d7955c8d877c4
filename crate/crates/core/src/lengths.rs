//! The integer recurrence `n_{i+1} = 2 n_i − n_{ψ(i)}` (or `2 n_i + 1` on
//! letters), estimation of `δ(ψ) = limsup n_{i+1}/n_i`, companion sequences
//! with other initial values, and diagnostics on their asymptotics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::cf::{self, QuadraticValue};
use crate::error::{Error, Result};
use crate::psi::{DirectiveFunctionSpec, PsiValue, Reducedness};
use crate::words::Letter;

/// How `n_{i+1}` was obtained from the earlier terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Psi(PsiValue),
    /// `π_{i+1} = (π_i δ)⁽⁺⁾`.
    Closure(Letter),
    /// `π_{i+1} = π_i δ δ₀ … δ₀ δ π_i` with a fresh letter δ.
    Scarce(Letter),
    /// Inside a seed word.
    Seed,
    /// Read off a word.
    Observed,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Psi(v) => write!(f, "{v}"),
            Step::Closure(l) => write!(f, "closure:{l}"),
            Step::Scarce(l) => write!(f, "scarce:{}", l.0),
            Step::Seed => write!(f, "seed"),
            Step::Observed => write!(f, "observed"),
        }
    }
}

/// Lengths `n_1 = 0 < n_2 < …` with the step producing each next term:
/// `steps[i − 1]` takes `n_i` to `n_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromicProfile {
    pub n: Vec<BigUint>,
    pub steps: Vec<Step>,
}

impl PalindromicProfile {
    pub fn new(n: Vec<BigUint>, steps: Vec<Step>) -> Self {
        Self { n, steps }
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// Terms that fit in `usize`, in order, stopping at the first that does not.
    pub fn small_lengths(&self) -> Vec<usize> {
        self.n.iter().map_while(|x| x.to_usize()).collect()
    }

    /// `n_{i+1}/n_i` for `i ≥ 2`.
    pub fn ratios(&self) -> Vec<f64> {
        self.n[1..].windows(2).map(|w| ratio_f64(&w[1], &w[0])).collect()
    }

    /// CSV rows `i,n_i,psi_i,ratio` with `ratio = n_{i+1}/n_i` where defined.
    pub fn to_csv_rows(&self) -> Vec<[String; 4]> {
        (0..self.n.len())
            .map(|k| {
                let step = self.steps.get(k).map(|s| s.to_string()).unwrap_or_default();
                let ratio = match self.n.get(k + 1) {
                    Some(next) if !self.n[k].is_zero() => format!("{:.12}", ratio_f64(next, &self.n[k])),
                    _ => String::new(),
                };
                [(k + 1).to_string(), self.n[k].to_string(), step, ratio]
            })
            .collect()
    }
}

/// `a / b` as a float without overflowing on huge operands.
pub fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    let shift = a.bits().max(b.bits()).saturating_sub(900);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

fn serialize_exact<S: Serializer>(v: &Option<QuadraticValue>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

/// Numeric estimate of a limsup of ratios.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaEstimate {
    /// Supremum of the ratios in the window; infinite when the word has
    /// finitely many palindromic prefixes.
    pub value: f64,
    pub burn_in: usize,
    pub window: usize,
    /// Difference between the suprema of the window's two halves.
    pub spread: f64,
    #[serde(serialize_with = "serialize_exact")]
    pub exact: Option<QuadraticValue>,
}

impl DeltaEstimate {
    pub(crate) fn infinite(burn_in: usize) -> Self {
        Self { value: f64::INFINITY, burn_in, window: 0, spread: 0.0, exact: None }
    }

    /// Estimate from the ratios of a window.
    pub fn from_ratios(ratios: &[f64], burn_in: usize) -> Self {
        let sup = |r: &[f64]| r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let half = ratios.len() / 2;
        let value = sup(ratios);
        let spread = if half == 0 { 0.0 } else { (sup(&ratios[..half]) - sup(&ratios[half..])).abs() };
        Self { value, burn_in, window: ratios.len(), spread, exact: None }
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

impl fmt::Display for DeltaEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return write!(f, "infinity");
        }
        write!(f, "{:.6}", self.value)?;
        if let Some(q) = &self.exact {
            write!(f, " (exact {q})")?;
        }
        Ok(())
    }
}

pub const DEFAULT_BURN_IN: usize = 64;
pub const DEFAULT_WINDOW: usize = 256;

/// `n_1, …, n_count` from `n_1 = 0`.
pub fn length_sequence(spec: &DirectiveFunctionSpec, count: usize) -> Result<PalindromicProfile> {
    run_recurrence(spec, vec![BigUint::zero()], count)
}

/// The recurrence of ψ started from arbitrary increasing initial terms
/// `n'_1 … n'_k`, applied from index `k` on.
pub fn alt_length_sequence(spec: &DirectiveFunctionSpec, initial: &[BigUint], count: usize) -> Result<PalindromicProfile> {
    if initial.is_empty() {
        return Err(Error::InvalidParameters("initial segment must be non-empty".into()));
    }
    if let Some(k) = initial.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonIncreasing { index: k + 1 });
    }
    run_recurrence(spec, initial.to_vec(), count)
}

fn run_recurrence(spec: &DirectiveFunctionSpec, mut n: Vec<BigUint>, count: usize) -> Result<PalindromicProfile> {
    let mut steps = Vec::with_capacity(count);
    for _ in 1..n.len() {
        steps.push(Step::Seed);
    }
    let first = n.len();
    for (idx, v) in spec.iter().enumerate().skip(first - 1) {
        if n.len() >= count {
            break;
        }
        let i = idx + 1;
        let v = v?;
        let cur = &n[i - 1];
        let next = match v {
            PsiValue::Letter(_) => cur + cur + 1u32,
            PsiValue::Index(j) => {
                let twice = cur + cur;
                if twice <= n[j - 1] {
                    return Err(Error::NonIncreasing { index: i });
                }
                twice - &n[j - 1]
            }
        };
        if next <= *cur {
            return Err(Error::NonIncreasing { index: i });
        }
        n.push(next);
        steps.push(Step::Psi(v));
    }
    if n.len() < count {
        return Err(Error::BeyondTable { index: n.len(), table_len: spec.table().len() });
    }
    n.truncate(count.max(1));
    steps.truncate(n.len().saturating_sub(1));
    Ok(PalindromicProfile { n, steps })
}

/// Supremum of `n_{i+1}/n_i` over `i ∈ (m + burn_in, m + burn_in + window]`,
/// `m` the table length. The exact value is attached when ψ has the shape of
/// a characteristic Sturmian scheme, and is 1 when the t-family is finite.
pub fn delta_estimate(spec: &DirectiveFunctionSpec, burn_in: usize, window: usize) -> Result<DeltaEstimate> {
    if burn_in + window < 2 {
        return Err(Error::InvalidParameters("burn_in + window must be at least 2".into()));
    }
    let first = (spec.table().len() + burn_in + 1).max(2);
    let profile = length_sequence(spec, first + window)?;
    let mut ratios = Vec::with_capacity(window);
    for i in first..first + window {
        let (cur, next) = (&profile.n[i - 1], &profile.n[i]);
        if cur.is_zero() {
            return Err(Error::DegenerateSequence { index: i });
        }
        ratios.push(ratio_f64(next, cur));
    }
    let mut est = DeltaEstimate::from_ratios(&ratios, first - 1);
    est.exact = exact_delta(spec);
    Ok(est)
}

/// δ(ψ) in closed form when available.
pub fn exact_delta(spec: &DirectiveFunctionSpec) -> Option<QuadraticValue> {
    if spec.has_infinite_t_family() == Some(false) {
        return Some(QuadraticValue::from_integer(1));
    }
    spec.sturmian_slope().map(|s| cf::sturmian_delta(&s))
}

/// Appendix-style checks on a reduced ψ.
#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub terms: usize,
    /// t-family members `t ≥ 2` with `t + 1 ≤ terms` that were checked.
    pub growth_checked: usize,
    /// First `t_k` with `n_{t_k+1} ≤ n_{t_k} + n_{t_k−1}`.
    pub growth_failure: Option<usize>,
    /// Largest back-reference `i − ψ(i)` in the periodic tail.
    pub back_reference_bound: Option<usize>,
    /// `2 − 3^{−B}`.
    pub delta_ceiling: Option<f64>,
    pub delta: DeltaEstimate,
    pub ceiling_respected: Option<bool>,
    /// `α_i = ε_i / ε'_i` against a companion sequence, from the tail start.
    pub alpha: Vec<f64>,
    /// Width of the hull of the last `B` α values, per index.
    pub hull_width: Vec<f64>,
    /// The hull never widens (exact comparison).
    pub hull_monotone: bool,
    /// Largest `|I_{i+B}| / |I_i|` seen past the tail start.
    pub contraction: Option<f64>,
}

pub fn appendix_diagnostics(spec: &DirectiveFunctionSpec, count: usize) -> Result<AppendixReport> {
    match spec.is_reduced(count)? {
        Reducedness::ViolationAt { k, t, condition } => {
            return Err(Error::NotReduced(format!("t_{k} = {t} breaks condition {}", condition.number())))
        }
        Reducedness::Reduced | Reducedness::VerifiedUpTo(_) => {}
    }
    let structure = spec.tail_structure();
    let m = spec.table().len();
    let count = count.max(m + 8).max(structure.map_or(0, |s| s.start + 2 * s.period + 2));
    let profile = length_sequence(spec, count)?;
    let n = &profile.n;

    let family = spec.t_family(count - 1)?;
    let mut checked = 0;
    let mut failure = None;
    for &t in family.indices.iter().filter(|&&t| t >= 2) {
        checked += 1;
        if n[t] <= &n[t - 1] + &n[t - 2] && failure.is_none() {
            failure = Some(t);
        }
    }

    let burn_in = (count - m) / 4;
    let window = count - m - burn_in - 1;
    let delta = delta_estimate(spec, burn_in, window)?;

    let bound = structure.map(|s| s.max_offset);
    let ceiling = bound.map(|b| 2.0 - 3f64.powi(-(b as i32)));
    let respected = ceiling.map(|c| delta.value <= c);

    let (alpha, hull_width, hull_monotone, contraction) = match structure {
        Some(s) if s.has_jumps => alpha_trajectory(spec, n, s.start, s.max_offset, count)?,
        _ => (Vec::new(), Vec::new(), true, None),
    };

    Ok(AppendixReport {
        terms: count,
        growth_checked: checked,
        growth_failure: failure,
        back_reference_bound: bound,
        delta_ceiling: ceiling,
        delta,
        ceiling_respected: respected,
        alpha,
        hull_width,
        hull_monotone,
        contraction,
    })
}

type Trajectory = (Vec<f64>, Vec<f64>, bool, Option<f64>);

fn alpha_trajectory(spec: &DirectiveFunctionSpec, n: &[BigUint], start: usize, b: usize, count: usize) -> Result<Trajectory> {
    let initial: Vec<BigUint> = n[..start]
        .iter()
        .enumerate()
        .map(|(k, x)| x * 2u32 + k)
        .collect();
    let alt = alt_length_sequence(spec, &initial, count)?;
    let eps: Vec<BigUint> = n.windows(2).map(|w| &w[1] - &w[0]).collect();
    let eps_alt: Vec<BigUint> = alt.n.windows(2).map(|w| &w[1] - &w[0]).collect();
    // α as exact fractions (num, den), from index `start` on.
    let fracs: Vec<(&BigUint, &BigUint)> = (start - 1..eps.len()).map(|k| (&eps[k], &eps_alt[k])).collect();
    let cmp = |x: &(&BigUint, &BigUint), y: &(&BigUint, &BigUint)| (x.0 * y.1).cmp(&(y.0 * x.1));
    let alpha: Vec<f64> = fracs.iter().map(|(a, d)| ratio_f64(a, d)).collect();

    let mut hull_width = Vec::new();
    let mut monotone = true;
    let mut prev_hull: Option<(usize, usize)> = None;
    for end in b..=fracs.len() {
        let win = &fracs[end - b..end];
        let lo = (0..b).min_by(|&x, &y| cmp(&win[x], &win[y])).expect("non-empty") + end - b;
        let hi = (0..b).max_by(|&x, &y| cmp(&win[x], &win[y])).expect("non-empty") + end - b;
        if let Some((plo, phi)) = prev_hull {
            if cmp(&fracs[lo], &fracs[plo]) == Ordering::Less || cmp(&fracs[hi], &fracs[phi]) == Ordering::Greater {
                monotone = false;
            }
        }
        prev_hull = Some((lo, hi));
        hull_width.push(alpha[hi] - alpha[lo]);
    }
    let contraction = hull_width
        .iter()
        .zip(hull_width.iter().skip(b))
        .filter(|(w0, _)| **w0 > 1e-12)
        .map(|(w0, w1)| w1 / w0)
        .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
    Ok((alpha, hull_width, monotone, contraction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::Tail;
    use crate::seq::IntSequence;

    fn to_u64(p: &PalindromicProfile) -> Vec<u64> {
        p.n.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn length_fixtures() {
        let fib = length_sequence(&DirectiveFunctionSpec::fibonacci(), 6).unwrap();
        assert_eq!(to_u64(&fib), vec![0, 1, 3, 6, 11, 19]);
        let c = length_sequence(&DirectiveFunctionSpec::constant(Letter::A), 6).unwrap();
        assert_eq!(to_u64(&c), vec![0, 1, 2, 3, 4, 5]);
        let trib = length_sequence(&DirectiveFunctionSpec::tribonacci(), 8).unwrap();
        assert_eq!(to_u64(&trib), vec![0, 1, 3, 7, 14, 27, 51, 95]);
        assert_eq!(fib.steps.len(), 5);
    }

    #[test]
    fn fibonacci_lengths_follow_shifted_fibonacci_numbers() {
        let p = length_sequence(&DirectiveFunctionSpec::fibonacci(), 40).unwrap();
        let (mut f1, mut f2) = (1u64, 2u64);
        for (k, x) in to_u64(&p).into_iter().enumerate() {
            // n_i = F_{i+1} − 2 with F_1 = 1, F_2 = 2.
            assert_eq!(x, f2 - 2, "i = {}", k + 1);
            (f1, f2) = (f2, f1 + f2);
        }
    }

    #[test]
    fn delta_fixtures() {
        let fib = delta_estimate(&DirectiveFunctionSpec::fibonacci(), DEFAULT_BURN_IN, DEFAULT_WINDOW).unwrap();
        assert!((fib.value - 1.618_033_988_749_895).abs() < 1e-9);
        assert_eq!(fib.exact.unwrap().to_string(), "(1+sqrt(5))/2");
        let s3 = DirectiveFunctionSpec::new(Vec::new(), Tail::Sturmian { s: IntSequence::constant(3).unwrap() }).unwrap();
        let est = delta_estimate(&s3, DEFAULT_BURN_IN, DEFAULT_WINDOW).unwrap();
        assert_eq!(est.exact.clone().unwrap().to_string(), "(7+sqrt(13))/6");
        assert!((est.value - est.exact.unwrap().to_f64()).abs() < 1e-9);
        let c = delta_estimate(&DirectiveFunctionSpec::constant(Letter::A), 8, 8).unwrap();
        assert_eq!(c.exact, Some(QuadraticValue::from_integer(1)));
        assert!(delta_estimate(&DirectiveFunctionSpec::fibonacci(), 1, 0).is_err());
    }

    #[test]
    fn companion_sequences() {
        let fib = DirectiveFunctionSpec::fibonacci();
        let base = length_sequence(&fib, 30).unwrap();
        let same = alt_length_sequence(&fib, &[0u32.into(), 1u32.into()], 30).unwrap();
        assert_eq!(base.n, same.n);
        let alt = alt_length_sequence(&fib, &[0u32.into(), 5u32.into()], 200).unwrap();
        let long = length_sequence(&fib, 200).unwrap();
        let q: Vec<f64> = (150..200).map(|i| ratio_f64(&alt.n[i], &long.n[i])).collect();
        let spread = q.iter().copied().fold(f64::NEG_INFINITY, f64::max) - q.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(spread < 1e-12 && q[0] > 0.0);
        let a = DeltaEstimate::from_ratios(&alt.ratios()[150..], 150);
        let b = DeltaEstimate::from_ratios(&long.ratios()[150..], 150);
        assert!((a.value - b.value).abs() < 1e-6);
        assert_eq!(
            alt_length_sequence(&fib, &[3u32.into(), 2u32.into()], 10).unwrap_err(),
            Error::NonIncreasing { index: 1 }
        );
    }

    #[test]
    fn appendix_fixtures() {
        let r = appendix_diagnostics(&DirectiveFunctionSpec::fibonacci(), 200).unwrap();
        assert_eq!(r.growth_failure, None);
        assert!(r.growth_checked > 100);
        assert_eq!(r.back_reference_bound, Some(2));
        assert_eq!(r.ceiling_respected, Some(true));
        assert!(r.hull_monotone);
        let c = appendix_diagnostics(&DirectiveFunctionSpec::constant(Letter::A), 50).unwrap();
        assert_eq!(c.growth_failure, None);
        assert_eq!(c.back_reference_bound, Some(1));
        let bad = DirectiveFunctionSpec::new(
            vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::A)],
            Tail::Prev,
        )
        .unwrap();
        assert!(matches!(appendix_diagnostics(&bad, 20), Err(Error::NotReduced(_))));
    }
}
