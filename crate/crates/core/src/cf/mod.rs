//! Continued fractions, exact quadratic values, and the δ spectrum of
//! characteristic Sturmian words.
//!
//! For the characteristic Sturmian word of slope `[0; s_1, s_2, …]`,
//! `δ = limsup_k [1; 1, s_k, s_{k−1}, …, s_1]`. When `s` is eventually
//! periodic only finitely many tails occur in the limit and δ is the largest
//! of finitely many quadratic irrationals.

mod quadratic;
mod spectrum;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lengths::DeltaEstimate;
use crate::seq::IntSequence;

pub use quadratic::QuadraticValue;
pub use spectrum::{cassaigne_condition, spectrum, spectrum_scan, spectrum_value, SpectrumEntry};

/// `[head; (period)]`. All partial quotients are positive except possibly
/// a leading 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    head: Vec<u64>,
    period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(head: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        let all: Vec<&u64> = head.iter().chain(&period).collect();
        if all.is_empty() {
            return Err(Error::InvalidParameters("continued fraction has no partial quotients".into()));
        }
        if all.iter().skip(1).any(|&&x| x == 0) {
            return Err(Error::InvalidParameters("partial quotients after the first must be positive".into()));
        }
        if head.is_empty() && period.first() == Some(&0) {
            return Err(Error::InvalidParameters("a period cannot contain 0".into()));
        }
        Ok(Self { head, period })
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Partial quotients, the period repeated forever.
    pub fn quotients(&self) -> impl Iterator<Item = u64> + '_ {
        let tail = (!self.period.is_empty()).then(|| self.period.iter().cycle()).into_iter().flatten();
        self.head.iter().chain(tail).copied()
    }
}

impl fmt::Display for ContinuedFraction {
    /// `[a0; a1, a2, (p1, p2)]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.head.iter().map(|x| x.to_string()).collect();
        if !self.period.is_empty() {
            let p: Vec<String> = self.period.iter().map(|x| x.to_string()).collect();
            items.push(format!("({})", p.join(", ")));
        }
        match items.split_first() {
            Some((first, rest)) if !rest.is_empty() => write!(f, "[{first}; {}]", rest.join(", ")),
            Some((first, _)) => write!(f, "[{first}]"),
            None => write!(f, "[]"),
        }
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Accepts `[a0; a1, (p1, p2)]`, with `;` optional.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("continued fraction must be bracketed: {s:?}")))?;
        let (head_text, period_text) = match inner.find('(') {
            Some(open) => {
                let close = inner.rfind(')').ok_or_else(|| Error::Parse("unclosed period".into()))?;
                if !inner[close + 1..].trim().is_empty() {
                    return Err(Error::Parse("the period must come last".into()));
                }
                (&inner[..open], &inner[open + 1..close])
            }
            None => (inner, ""),
        };
        let numbers = |t: &str| -> Result<Vec<u64>> {
            t.split([',', ';'])
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad partial quotient {x:?}"))))
                .collect()
        };
        Self::new(numbers(head_text)?, numbers(period_text)?)
    }
}

/// Convergent from the first `depth` partial quotients.
pub fn cf_convergent(cf: &ContinuedFraction, depth: usize) -> BigRational {
    let (p, q) = convergent_terms(cf.quotients().take(depth.max(1)));
    BigRational::new(p.0, q.0)
}

/// `((p_n, p_{n−1}), (q_n, q_{n−1}))` for the given partial quotients.
fn convergent_terms(quotients: impl Iterator<Item = u64>) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    let (mut p, mut p_prev) = (BigInt::one(), BigInt::zero());
    let (mut q, mut q_prev) = (BigInt::zero(), BigInt::one());
    for a in quotients {
        let a = BigInt::from(a);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    ((p, p_prev), (q, q_prev))
}

/// Exact value of an eventually periodic continued fraction. The purely
/// periodic tail `x` solves `q_r x² + (q_{r−1} − p_r) x − p_{r−1} = 0`; the
/// head then acts on `x` as a Möbius transformation.
pub fn cf_exact(cf: &ContinuedFraction) -> Result<QuadraticValue> {
    if cf.period.is_empty() {
        return Err(Error::NotPeriodic);
    }
    let ((p, p_prev), (q, q_prev)) = convergent_terms(cf.period.iter().copied());
    // Positive root of q x² + (q_prev − p) x − p_prev.
    let b = &q_prev - &p;
    let disc = &b * &b + BigInt::from(4) * &q * &p_prev;
    let disc = u64::try_from(disc).map_err(|_| Error::Overflow("discriminant exceeds 64 bits".into()))?;
    let tail = QuadraticValue::new(-b, 1, BigInt::from(2) * &q, disc)?;
    if cf.head.is_empty() {
        return Ok(tail);
    }
    let ((hp, hp_prev), (hq, hq_prev)) = convergent_terms(cf.head.iter().copied());
    let lift = |x: &BigInt| QuadraticValue::new(x.clone(), 0, 1, 0).expect("integer");
    let numer = tail.checked_mul(&lift(&hp))?.checked_add(&lift(&hp_prev))?;
    let denom = tail.checked_mul(&lift(&hq))?.checked_add(&lift(&hq_prev))?;
    numer.checked_div(&denom)
}

/// `[1; 1, (R)]` for every rotation `R` of the reversed period of `s`.
fn reversed_tails(s: &IntSequence) -> Vec<ContinuedFraction> {
    let reversed: Vec<u64> = s.period().iter().rev().copied().collect();
    (0..reversed.len())
        .map(|r| {
            let mut rot = reversed.clone();
            rot.rotate_left(r);
            ContinuedFraction::new(vec![1, 1], rot).expect("positive quotients")
        })
        .collect()
}

/// Exact δ of the characteristic Sturmian word with slope `[0; s_1, s_2, …]`.
pub fn sturmian_delta(s: &IntSequence) -> QuadraticValue {
    reversed_tails(s)
        .iter()
        .map(|cf| cf_exact(cf).expect("small periodic continued fraction"))
        .max()
        .expect("period is non-empty")
}

/// Windowed supremum of `[1; 1, s_k, …, s_1]` over `k ∈ (burn_in, len]`
/// for an arbitrary finite prefix of `s`.
pub fn sturmian_delta_numeric(prefix: &[u64], burn_in: usize) -> DeltaEstimate {
    let values: Vec<f64> = (1..=prefix.len())
        .map(|k| {
            let quotients = [1, 1].into_iter().chain(prefix[..k].iter().rev().copied());
            let ((p, _), (q, _)) = convergent_terms(quotients);
            crate::lengths::ratio_f64(&p.to_biguint().expect("positive"), &q.to_biguint().expect("positive"))
        })
        .collect();
    let start = burn_in.min(values.len().saturating_sub(1));
    DeltaEstimate::from_ratios(&values[start..], start)
}

/// Exact δ together with the numeric supremum over deep reversed prefixes.
pub fn sturmian_delta_estimate(s: &IntSequence, burn_in: usize, window: usize) -> DeltaEstimate {
    let mut est = sturmian_delta_numeric(&s.prefix(burn_in + window), burn_in);
    est.exact = Some(sturmian_delta(s));
    est
}

/// `δ = (2ϱ − 3)/(ϱ − 1)` for Sturmian words with recurrence quotient ϱ.
pub fn delta_from_recurrence_quotient(rho: &QuadraticValue) -> Result<QuadraticValue> {
    let one = QuadraticValue::from_integer(1);
    if *rho <= one {
        return Err(Error::DomainError(format!("recurrence quotient must exceed 1, got {rho}")));
    }
    let numer = rho.checked_mul(&QuadraticValue::from_integer(2))?.checked_sub(&QuadraticValue::from_integer(3))?;
    numer.checked_div(&rho.checked_sub(&one)?)
}

/// The first terms `σ_0 < σ_1 < σ_2 < σ_3` of the bottom of the spectrum.
pub fn sigma(n: usize) -> Option<QuadraticValue> {
    let v = match n {
        0 => "1",
        1 => "(1+sqrt(5))/2",
        2 => "(2+sqrt(2))/2",
        3 => "(2+sqrt(10))/3",
        _ => return None,
    };
    Some(v.parse().expect("constant parses"))
}

/// Three-decimal approximation of the limit of the σ_n.
pub const SIGMA_INFINITY_APPROX: f64 = 1.721;

pub fn golden_ratio() -> QuadraticValue {
    sigma(1).expect("defined")
}

pub fn sqrt3() -> QuadraticValue {
    QuadraticValue::sqrt(3)
}

/// `(7 + √13)/6 = [1; 1, (3)]`.
pub fn gap_upper() -> QuadraticValue {
    "(7+sqrt(13))/6".parse().expect("constant parses")
}
