//! Eventually periodic sequences, used for partial-quotient sequences `s`
//! and for directive words Δ.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::Letter;

/// Sequence `u v v v …` with a finite preperiod `u` and a non-empty period `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodic<T> {
    preperiod: Vec<T>,
    period: Vec<T>,
}

/// Sequence of positive integers, e.g. the partial quotients `s_1, s_2, …`.
pub type IntSequence = EventuallyPeriodic<u64>;

/// Infinite letter sequence, e.g. a directive word Δ.
pub type LetterSequence = EventuallyPeriodic<Letter>;

/// Entry constraint for [`EventuallyPeriodic`].
pub trait Term: Clone + PartialEq {
    fn check(&self) -> Result<()>;
}

impl Term for u64 {
    fn check(&self) -> Result<()> {
        if *self == 0 {
            Err(Error::InvalidParameters("sequence entries must be positive".into()))
        } else {
            Ok(())
        }
    }
}

impl Term for Letter {
    fn check(&self) -> Result<()> {
        Ok(())
    }
}

impl<T: Term> EventuallyPeriodic<T> {
    pub fn new(preperiod: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameters("period must be non-empty".into()));
        }
        for t in preperiod.iter().chain(&period) {
            t.check()?;
        }
        Ok(Self { preperiod, period })
    }

    pub fn periodic(period: Vec<T>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn constant(value: T) -> Result<Self> {
        Self::new(Vec::new(), vec![value])
    }

    pub fn preperiod(&self) -> &[T] {
        &self.preperiod
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    /// The `k`-th term, 1-based.
    pub fn term(&self, k: usize) -> &T {
        assert!(k >= 1, "sequence terms are 1-based");
        let k = k - 1;
        if k < self.preperiod.len() {
            &self.preperiod[k]
        } else {
            &self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.preperiod.iter().chain(self.period.iter().cycle())
    }

    pub fn prefix(&self, n: usize) -> Vec<T> {
        self.iter().take(n).cloned().collect()
    }

    /// Same sequence written with the shortest period and preperiod.
    pub fn canonical(&self) -> Self {
        let mut period = primitive_root(&self.period).to_vec();
        let mut preperiod = self.preperiod.clone();
        while let Some(last) = preperiod.last() {
            if last == period.last().expect("period is non-empty") {
                preperiod.pop();
                period.rotate_right(1);
            } else {
                break;
            }
        }
        Self { preperiod, period }
    }
}

/// Shortest `r` with `v = r^k`.
pub(crate) fn primitive_root<T: PartialEq>(v: &[T]) -> &[T] {
    let n = v.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| v[i] == v[i - p]))
        .map(|p| &v[..p])
        .unwrap_or(v)
}

impl<T: fmt::Display> fmt::Display for EventuallyPeriodic<T> {
    /// Written as `u(v)`, e.g. `2(1,2)` for `2,1,2,1,2,…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[T]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if !self.preperiod.is_empty() {
            write!(f, "{},", join(&self.preperiod))?;
        }
        write!(f, "({})", join(&self.period))
    }
}

impl<T: Term + FromStr> FromStr for EventuallyPeriodic<T> {
    type Err = Error;

    /// Parses `u1,u2,(v1,v2)`. A piece that does not parse as one term is
    /// read character by character, so `ab(abc)` also works for letters.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::Parse(format!("missing parenthesized period in {s:?}")))?;
        let close = s
            .strip_suffix(')')
            .map(str::len)
            .ok_or_else(|| Error::Parse(format!("period must close the sequence in {s:?}")))?;
        let terms = |text: &str| -> Result<Vec<T>> {
            let mut out = Vec::new();
            for piece in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                match piece.parse() {
                    Ok(t) => out.push(t),
                    Err(_) => {
                        for c in piece.chars() {
                            out.push(c.to_string().parse().map_err(|_| Error::Parse(format!("bad term {piece:?}")))?);
                        }
                    }
                }
            }
            Ok(out)
        };
        Self::new(terms(&s[..open])?, terms(&s[open + 1..close])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_form() {
        let s: IntSequence = "2,(1,2)".parse().unwrap();
        assert_eq!(s, IntSequence::new(vec![2], vec![1, 2]).unwrap());
        assert_eq!(s.to_string().parse::<IntSequence>().unwrap(), s);
        let d: LetterSequence = "(abc)".parse().unwrap();
        assert_eq!(d.period(), &[Letter::A, Letter::B, Letter::C]);
        assert!("1,2".parse::<IntSequence>().is_err());
        assert!("(0)".parse::<IntSequence>().is_err());
    }

    #[test]
    fn terms_are_one_based() {
        let s = IntSequence::new(vec![5], vec![1, 2]).unwrap();
        assert_eq!(s.prefix(6), vec![5, 1, 2, 1, 2, 1]);
        assert_eq!(*s.term(1), 5);
        assert_eq!(*s.term(4), 1);
    }

    #[test]
    fn rejects_empty_period_and_zero_entries() {
        assert!(IntSequence::new(vec![1], vec![]).is_err());
        assert!(IntSequence::new(vec![0], vec![1]).is_err());
    }

    #[test]
    fn canonical_form_collapses_redundant_writing() {
        let s = IntSequence::new(vec![3, 1, 2], vec![1, 2, 1, 2]).unwrap();
        let c = s.canonical();
        assert_eq!(c.preperiod(), &[3]);
        assert_eq!(c.period(), &[1, 2]);
        assert_eq!(s.prefix(30), c.prefix(30));
    }
}
