//! Ground-truth palindromic-prefix enumeration.
//!
//! Two independent enumerators are provided: a quadratic reference that tests
//! every prefix directly, and a linear one built on palindromic radii
//! (Manacher). Everything else in the crate is checked against these.

use std::ops::Add;

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::lengths::DeltaEstimate;
use crate::seq::primitive_root;
use crate::words::{is_palindrome, Letter, WordStream};

/// Palindromic prefixes found in a finite prefix of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    /// All `n ≤ scanned_length` such that the length-`n` prefix is a palindrome, starting with 0.
    pub lengths: Vec<usize>,
    /// Lengths up to here are final for every infinite extension of the prefix.
    pub safe_horizon: usize,
    pub scanned_length: usize,
}

impl OracleReport {
    /// The listed lengths that are at most the safe horizon.
    pub fn trusted(&self) -> &[usize] {
        let k = self.lengths.partition_point(|&n| n <= self.safe_horizon);
        &self.lengths[..k]
    }
}

/// Palindromic radii over the word interleaved with separators: entry `j`
/// (for `0 ≤ j ≤ 2|w|`) is the length of the longest palindrome of `w`
/// centred at half-position `j/2`.
pub fn palindromic_radii<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let m = 2 * w.len() + 1;
    let at = |j: usize| if j % 2 == 1 { Some(&w[j / 2]) } else { None };
    let mut radius = vec![0usize; m];
    let (mut centre, mut reach) = (0usize, 0usize);
    for j in 0..m {
        let mut k = if j < reach { radius[2 * centre - j].min(reach - j) } else { 0 };
        while j + k + 1 < m && j > k && at(j - k - 1) == at(j + k + 1) {
            k += 1;
        }
        radius[j] = k;
        if j + k > reach {
            centre = j;
            reach = j + k;
        }
    }
    radius
}

/// Lengths of all palindromic prefixes of `w`, in increasing order, from 0.
/// Linear time.
pub fn palindromic_prefix_lengths<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let radius = palindromic_radii(w);
    (0..=w.len()).filter(|&n| radius[n] >= n).collect()
}

/// Quadratic reference enumerator.
pub fn palindromic_prefix_lengths_naive<T: PartialEq>(w: &[T]) -> Vec<usize> {
    (0..=w.len()).filter(|&n| is_palindrome(&w[..n])).collect()
}

pub fn palindromic_prefixes(w: &[Letter]) -> OracleReport {
    report(palindromic_prefix_lengths(w), w.len())
}

pub fn palindromic_prefixes_naive(w: &[Letter]) -> OracleReport {
    report(palindromic_prefix_lengths_naive(w), w.len())
}

fn report(lengths: Vec<usize>, scanned_length: usize) -> OracleReport {
    OracleReport { lengths, safe_horizon: scanned_length / 2, scanned_length }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Abundance {
    Abundant,
    /// 1-based `i` of the first `n_{i+1} > 2 n_i + 1`.
    FirstViolation(usize),
}

/// Checks `n_{i+1} ≤ 2 n_i + 1` along an increasing list starting at `n_1`.
pub fn abundance_check<T>(lengths: &[T]) -> Abundance
where
    T: Clone + Ord + One + Add<Output = T>,
{
    lengths
        .windows(2)
        .position(|w| w[1] > w[0].clone() + w[0].clone() + T::one())
        .map_or(Abundance::Abundant, |k| Abundance::FirstViolation(k + 1))
}

/// Estimates δ from the letters of a word. The last trusted palindromic
/// prefix falling below a quarter of the scan is taken as evidence that the
/// word has finitely many palindromic prefixes, and δ is reported infinite.
pub fn delta_from_word(stream: &mut WordStream, scan_length: usize, burn_in: usize) -> Result<DeltaEstimate> {
    let letters = stream.letters_up_to(scan_length)?;
    let report = palindromic_prefixes(letters);
    Ok(delta_from_lengths(report.trusted(), report.scanned_length, burn_in))
}

pub(crate) fn delta_from_lengths(lengths: &[usize], scanned_length: usize, burn_in: usize) -> DeltaEstimate {
    let last = lengths.last().copied().unwrap_or(0);
    if lengths.len() < 3 || 4 * last < scanned_length {
        return DeltaEstimate::infinite(burn_in);
    }
    // ratios[k] = n_{k+2} / n_{k+1}; the ratio with n_1 = 0 is excluded.
    let ratios: Vec<f64> = lengths[1..].windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let start = burn_in.min(ratios.len() - 1);
    DeltaEstimate::from_ratios(&ratios[start..], start)
}

/// Parameters `(d, r)` of a purely periodic word: `d` is its least period
/// and every prefix of length `n ≥ d` is a palindrome iff `n ≡ r (mod d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PeriodicParams {
    Params { d: usize, r: usize },
    /// The word has only finitely many palindromic prefixes.
    NotApplicable,
}

/// Parameters of `period^ω`.
pub fn periodic_palindrome_params(period: &[Letter]) -> PeriodicParams {
    assert!(!period.is_empty(), "period must be non-empty");
    let root = primitive_root(period);
    let d = root.len();
    let unrolled: Vec<Letter> = root.iter().cycle().take(3 * d).copied().collect();
    let lengths = palindromic_prefix_lengths(&unrolled);
    match lengths.iter().find(|&&n| (d..2 * d).contains(&n)) {
        Some(&n) => {
            let r = if n == d { d } else { n - d };
            PeriodicParams::Params { d, r }
        }
        None => PeriodicParams::NotApplicable,
    }
}

/// Smallest `p ≥ 1` with `w[i] = w[i + p]` throughout, via the failure function.
pub fn smallest_period<T: PartialEq>(w: &[T]) -> usize {
    if w.is_empty() {
        return 0;
    }
    let mut border = vec![0usize; w.len() + 1];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = border[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i + 1] = k;
    }
    w.len() - border[w.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FiniteWord;
    use proptest::prelude::*;

    fn w(s: &str) -> FiniteWord {
        FiniteWord::parse(s).unwrap()
    }

    #[test]
    fn prefix_fixtures() {
        assert_eq!(palindromic_prefixes(&w("abacaba")).lengths, vec![0, 1, 3, 7]);
        assert_eq!(palindromic_prefixes(&w("babbababbabba")).lengths, vec![0, 1, 3, 6, 11]);
        assert_eq!(palindromic_prefixes(&w("aaaaa")).lengths, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(palindromic_prefixes(&w("")).lengths, vec![0]);
        let r = palindromic_prefixes(&w("babbababbabba"));
        assert_eq!(r.safe_horizon, 6);
        assert_eq!(r.trusted(), &[0, 1, 3, 6]);
    }

    #[test]
    fn abundance_fixtures() {
        assert_eq!(abundance_check(&[0u64, 1, 3, 6, 11]), Abundance::Abundant);
        assert_eq!(abundance_check(&[0u64, 1, 4]), Abundance::FirstViolation(2));
        assert_eq!(abundance_check(&[0u64, 1, 3, 9, 20]), Abundance::FirstViolation(3));
    }

    #[test]
    fn periodic_params_fixtures() {
        assert_eq!(periodic_palindrome_params(&w("aabb")), PeriodicParams::Params { d: 4, r: 2 });
        assert_eq!(periodic_palindrome_params(&w("a")), PeriodicParams::Params { d: 1, r: 1 });
        assert_eq!(periodic_palindrome_params(&w("abab")), PeriodicParams::Params { d: 2, r: 1 });
        assert_eq!(periodic_palindrome_params(&w("abc")), PeriodicParams::NotApplicable);
        assert_eq!(periodic_palindrome_params(&w("aab")), PeriodicParams::Params { d: 3, r: 2 });
    }

    #[test]
    fn periodic_params_agree_with_a_long_scan() {
        for p in ["aabb", "a", "ab", "abc", "abaab", "abba", "aab", "babbab", "abacaba", "aabaa"] {
            let period = w(p);
            let long: Vec<Letter> = period.iter().cycle().take(60 * period.len()).copied().collect();
            let lens = palindromic_prefix_lengths(&long);
            match periodic_palindrome_params(&period) {
                PeriodicParams::Params { d, r } => {
                    for n in d..long.len() {
                        assert_eq!(lens.contains(&n), n % d == r % d, "{p} at {n}");
                    }
                }
                PeriodicParams::NotApplicable => assert!(lens.iter().all(|&n| n < period.len()), "{p}"),
            }
        }
    }

    #[test]
    fn smallest_period_fixtures() {
        assert_eq!(smallest_period(&w("abab")), 2);
        assert_eq!(smallest_period(&w("abaab")), 3);
        assert_eq!(smallest_period(&w("aaaa")), 1);
        assert_eq!(smallest_period(&w("abc")), 3);
    }

    #[test]
    fn word_with_finitely_many_palindromic_prefixes_is_flagged() {
        let mut s = WordStream::ultimately_periodic(w("a").into_letters(), w("b").into_letters()).unwrap();
        assert!(delta_from_word(&mut s, 400, 2).unwrap().is_infinite());
        let mut a = WordStream::periodic(w("a").into_letters()).unwrap();
        let est = delta_from_word(&mut a, 2000, 200).unwrap();
        assert!(!est.is_infinite());
        assert!(est.value > 1.0 && est.value < 1.01);
    }

    proptest! {
        #[test]
        fn fast_and_naive_agree(v in prop::collection::vec(0u32..3, 0..200)) {
            let v: Vec<Letter> = v.into_iter().map(Letter).collect();
            prop_assert_eq!(palindromic_prefixes(&v), palindromic_prefixes_naive(&v));
        }

        #[test]
        fn smallest_period_is_minimal(v in prop::collection::vec(0u32..2, 1..40)) {
            let p = smallest_period(&v);
            prop_assert!((p..v.len()).all(|i| v[i] == v[i - p]));
            prop_assert!((1..p).all(|q| (q..v.len()).any(|i| v[i] != v[i - q])));
        }
    }
}
