//! Values `[1; 1, b_1, b_2, …]` over sequences `b` satisfying
//! `[b] ≥ [T^k b]` for every shift `T^k`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{cf_exact, ContinuedFraction, QuadraticValue};
use crate::seq::IntSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(serialize_with = "as_string")]
    pub b: IntSequence,
    #[serde(serialize_with = "as_string")]
    pub value: QuadraticValue,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `[b_{k+1}; b_{k+2}, …]`.
fn shift_value(b: &IntSequence, k: usize) -> QuadraticValue {
    let pre = b.preperiod();
    let (head, period) = if k < pre.len() {
        (pre[k..].to_vec(), b.period().to_vec())
    } else {
        let mut rot = b.period().to_vec();
        let r = (k - pre.len()) % rot.len();
        rot.rotate_left(r);
        (Vec::new(), rot)
    };
    let cf = ContinuedFraction::new(head, period).expect("positive entries");
    cf_exact(&cf).expect("periodic")
}

/// `[b] ≥ [T^k b]` for all `k ≥ 1`. Shifts past the preperiod are rotations
/// of the period, so `k ≤ preperiod + period` suffices.
pub fn cassaigne_condition(b: &IntSequence) -> bool {
    let first = *b.term(1);
    // [T^k b] ≥ b_{k+1} > [b] whenever b_{k+1} > b_1.
    if b.preperiod().iter().chain(b.period()).any(|&x| x > first) {
        return false;
    }
    let value = shift_value(b, 0);
    let horizon = b.preperiod().len() + b.period().len();
    (1..=horizon).all(|k| shift_value(b, k) <= value)
}

/// `[1; 1, b]`.
pub fn spectrum_value(b: &IntSequence) -> QuadraticValue {
    let head = [1, 1].into_iter().chain(b.preperiod().iter().copied()).collect();
    cf_exact(&ContinuedFraction::new(head, b.period().to_vec()).expect("positive entries")).expect("periodic")
}

/// Every admissible `b` with entries in `1..=max_entry`, primitive period of
/// length at most `max_period` and preperiod at most `max_preperiod`, sorted
/// by value.
pub fn spectrum(max_entry: u64, max_period: usize, max_preperiod: usize) -> Vec<SpectrumEntry> {
    let mut candidates = BTreeSet::new();
    for q in 0..=max_preperiod {
        for r in 1..=max_period {
            for pre in words(max_entry, q) {
                for per in words(max_entry, r) {
                    let b = IntSequence::new(pre.clone(), per).expect("positive entries").canonical();
                    candidates.insert(b);
                }
            }
        }
    }
    let candidates: Vec<IntSequence> = candidates.into_iter().collect();
    let mut out: Vec<SpectrumEntry> = candidates
        .into_par_iter()
        .filter(cassaigne_condition)
        .map(|b| {
            let value = spectrum_value(&b);
            SpectrumEntry { b, value }
        })
        .collect();
    out.sort_by(|x, y| x.value.cmp(&y.value).then_with(|| x.b.cmp(&y.b)));
    out
}

/// The entries of [`spectrum`] with `lo < value < hi`.
pub fn spectrum_scan(
    max_entry: u64,
    max_period: usize,
    max_preperiod: usize,
    lo: &QuadraticValue,
    hi: &QuadraticValue,
) -> Vec<SpectrumEntry> {
    spectrum(max_entry, max_period, max_preperiod)
        .into_iter()
        .filter(|e| *lo < e.value && e.value < *hi)
        .collect()
}

/// All words of length `len` over `1..=max_entry`.
fn words(max_entry: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=max_entry).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pre: &[u64], per: &[u64]) -> IntSequence {
        IntSequence::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    fn q(s: &str) -> QuadraticValue {
        s.parse().unwrap()
    }

    #[test]
    fn condition_fixtures() {
        assert!(cassaigne_condition(&seq(&[], &[2, 1])));
        assert!(!cassaigne_condition(&seq(&[], &[1, 2])));
        assert!(cassaigne_condition(&seq(&[], &[3])));
        assert!(cassaigne_condition(&seq(&[], &[1])));
        assert!(!cassaigne_condition(&seq(&[2, 2], &[2, 1, 2, 2])));
    }

    #[test]
    fn condition_matches_a_numeric_shift_scan() {
        for b in spectrum(2, 3, 2).iter().map(|e| e.b.clone()) {
            let base = shift_value(&b, 0).to_f64();
            for k in 1..12 {
                assert!(shift_value(&b, k).to_f64() <= base + 1e-12, "{b} shift {k}");
            }
        }
    }

    #[test]
    fn scan_fixtures() {
        let gamma = super::super::golden_ratio();
        let near = spectrum_scan(2, 3, 1, &q("1.608"), &q("1.628"));
        assert!(near.iter().any(|e| e.b == seq(&[], &[1]) && e.value == gamma));
        let sigma2 = spectrum_scan(2, 3, 1, &q("1.70"), &q("1.7072"));
        assert!(sigma2.iter().any(|e| e.b == seq(&[], &[2])));
        assert!(spectrum_scan(3, 3, 1, &q("sqrt(3)"), &q("(7+sqrt(13))/6")).is_empty());
    }

    #[test]
    fn sorted_and_deduplicated() {
        let all = spectrum(2, 4, 2);
        assert!(all.windows(2).all(|w| w[0].value <= w[1].value));
        let distinct: BTreeSet<_> = all.iter().map(|e| e.b.clone()).collect();
        assert_eq!(distinct.len(), all.len());
    }
}
