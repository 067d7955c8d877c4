//! Letters, finite words and lazily materialized infinite words.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracle;

/// Alphabet symbol. Letters are small integer indices displayed as
/// `a, b, c, …` while the index is below 26 and as decimal numbers beyond.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub const A: Letter = Letter(0);
    pub const B: Letter = Letter(1);
    pub const C: Letter = Letter(2);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_char(c: char) -> Option<Letter> {
        c.is_ascii_lowercase().then(|| Letter(c as u32 - 'a' as u32))
    }

    pub fn to_char(self) -> Option<char> {
        (self.0 < 26).then(|| char::from(b'a' + self.0 as u8))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.0),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(l) = Letter::from_char(c) {
                return Ok(l);
            }
        }
        s.parse::<u32>()
            .map(Letter)
            .map_err(|_| Error::Parse(format!("not a letter: {s:?}")))
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite word over [`Letter`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn mirror(&self) -> FiniteWord {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    /// `p⁻¹w`: the word `w''` with `w = p w''`.
    pub fn strip_prefix(&self, prefix: &[Letter]) -> Result<FiniteWord> {
        self.0
            .strip_prefix(prefix)
            .map(|rest| Self(rest.to_vec()))
            .ok_or(Error::NotAPrefix)
    }

    /// `w s⁻¹`: the word `w'` with `w = w' s`.
    pub fn strip_suffix(&self, suffix: &[Letter]) -> Result<FiniteWord> {
        self.0
            .strip_suffix(suffix)
            .map(|rest| Self(rest.to_vec()))
            .ok_or(Error::NotASuffix)
    }

    pub fn concat(&self, other: &[Letter]) -> FiniteWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Self(v)
    }

    /// Shortest palindrome having `self` as a prefix.
    pub fn palindromic_closure(&self) -> FiniteWord {
        let mut v = self.0.clone();
        close_in_place(&mut v);
        Self(v)
    }

    /// True when every letter has a single-character rendering.
    pub fn is_small_alphabet(&self) -> bool {
        self.0.iter().all(|l| l.0 < 26)
    }

    /// One character per letter for alphabets of at most 26 letters,
    /// comma-separated indices otherwise.
    pub fn render(&self) -> String {
        render(&self.0)
    }

    /// Inverse of [`FiniteWord::render`]. Comma-separated input is read as
    /// indices, anything else as a string of lowercase letters.
    pub fn parse(s: &str) -> Result<FiniteWord> {
        let s = s.trim();
        if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map(Letter)
                        .map_err(|_| Error::Parse(format!("bad letter index {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Self)
        } else {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(Self)
        }
    }
}

pub fn is_palindrome<T: PartialEq>(w: &[T]) -> bool {
    w.iter().eq(w.iter().rev())
}

pub fn render(w: &[Letter]) -> String {
    if w.iter().all(|l| l.0 < 26) {
        w.iter().map(|l| l.to_string()).collect()
    } else {
        w.iter().map(|l| l.0.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Replace `w` by its palindromic closure: with `w = u s`, `s` the longest
/// palindromic suffix, the closure is `u s ũ`.
pub(crate) fn close_in_place(w: &mut Vec<Letter>) {
    let rev: Vec<Letter> = w.iter().rev().copied().collect();
    let longest = oracle::palindromic_prefix_lengths(&rev)
        .last()
        .copied()
        .unwrap_or(0);
    let u_len = w.len() - longest;
    for k in (0..u_len).rev() {
        let l = w[k];
        w.push(l);
    }
}

impl Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for FiniteWord {
    fn from(v: Vec<Letter>) -> Self {
        Self(v)
    }
}

impl From<&[Letter]> for FiniteWord {
    fn from(v: &[Letter]) -> Self {
        Self(v.to_vec())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FiniteWord::parse(s)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Deterministic generator of an infinite (or finite) word.
pub trait PrefixRule: Send {
    /// Append letters to `buf` until it holds at least `target` letters.
    /// Returning with a shorter buffer means the word ends there.
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<()>;
}

struct Periodic {
    head: Vec<Letter>,
    period: Vec<Letter>,
}

impl PrefixRule for Periodic {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<()> {
        while buf.len() < target {
            let i = buf.len();
            let l = if i < self.head.len() {
                self.head[i]
            } else {
                self.period[(i - self.head.len()) % self.period.len()]
            };
            buf.push(l);
        }
        Ok(())
    }
}

struct Finished;

impl PrefixRule for Finished {
    fn extend(&mut self, _: &mut Vec<Letter>, _: usize) -> Result<()> {
        Ok(())
    }
}

/// Lazily extended word queried by prefix length. The cache only ever grows,
/// so shorter prefixes are always prefixes of longer ones.
pub struct WordStream {
    rule: Box<dyn PrefixRule>,
    cache: Vec<Letter>,
}

impl WordStream {
    pub fn new(rule: impl PrefixRule + 'static) -> Self {
        Self::resume(rule, Vec::new())
    }

    /// Stream whose first letters are already known.
    pub fn resume(rule: impl PrefixRule + 'static, materialized: Vec<Letter>) -> Self {
        Self { rule: Box::new(rule), cache: materialized }
    }

    /// `period^ω`.
    pub fn periodic(period: Vec<Letter>) -> Result<Self> {
        Self::ultimately_periodic(Vec::new(), period)
    }

    /// `head · period^ω`.
    pub fn ultimately_periodic(head: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameters("period must be non-empty".into()));
        }
        Ok(Self::new(Periodic { head, period }))
    }

    /// A finite word; queries beyond its length fail with `StreamExhausted`.
    pub fn finite(word: FiniteWord) -> Self {
        Self::resume(Finished, word.into_letters())
    }

    pub fn materialized(&self) -> &[Letter] {
        &self.cache
    }

    /// First `n` letters, materializing in geometrically growing chunks.
    pub fn letters(&mut self, n: usize) -> Result<&[Letter]> {
        if self.cache.len() < n {
            let target = n.max(2 * self.cache.len()).max(64);
            self.rule.extend(&mut self.cache, target)?;
            if self.cache.len() < n {
                return Err(Error::StreamExhausted { requested: n, available: self.cache.len() });
            }
        }
        Ok(&self.cache[..n])
    }

    pub fn prefix(&mut self, n: usize) -> Result<FiniteWord> {
        self.letters(n).map(FiniteWord::from)
    }

    /// Like [`WordStream::letters`] but returns whatever exists when the
    /// word is shorter than `n`.
    pub fn letters_up_to(&mut self, n: usize) -> Result<&[Letter]> {
        match self.letters(n) {
            Ok(_) => Ok(&self.cache[..n]),
            Err(Error::StreamExhausted { .. }) => Ok(&self.cache[..]),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordStream").field("materialized", &self.cache.len()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> FiniteWord {
        FiniteWord::parse(s).unwrap()
    }

    #[test]
    fn mirror_and_palindromes() {
        assert_eq!(w("").mirror(), w(""));
        assert_eq!(w("ab").mirror(), w("ba"));
        assert_eq!(w("abacaba").mirror(), w("abacaba"));
        assert!(w("").is_palindrome());
        assert!(w("aba").is_palindrome());
        assert!(!w("ab").is_palindrome());
    }

    #[test]
    fn quotients() {
        assert_eq!(w("abac").strip_prefix(&w("ab")).unwrap(), w("ac"));
        assert_eq!(w("aba").strip_prefix(&w("aba")).unwrap(), w(""));
        assert_eq!(w("babbab").strip_prefix(&w("bab")).unwrap(), w("bab"));
        assert_eq!(w("abac").strip_prefix(&w("b")), Err(Error::NotAPrefix));
        assert_eq!(w("abac").strip_suffix(&w("ac")).unwrap(), w("ab"));
        assert_eq!(w("abac").strip_suffix(&w("a")), Err(Error::NotASuffix));
    }

    #[test]
    fn closure_fixtures() {
        assert_eq!(w("ab").palindromic_closure(), w("aba"));
        assert_eq!(w("aba").palindromic_closure(), w("aba"));
        assert_eq!(w("abac").palindromic_closure(), w("abacaba"));
        assert_eq!(w("").palindromic_closure(), w(""));
    }

    #[test]
    fn rendering_switches_to_indices_for_large_alphabets() {
        let big = FiniteWord::new(vec![Letter(0), Letter(30), Letter(1)]);
        assert_eq!(big.render(), "0,30,1");
        assert_eq!(FiniteWord::parse("0,30,1").unwrap(), big);
        assert_eq!(w("abc").render(), "abc");
        assert_eq!("27".parse::<Letter>().unwrap(), Letter(27));
        assert_eq!(serde_json::to_string(&Letter(2)).unwrap(), "\"c\"");
    }

    #[test]
    fn stream_is_monotone_and_reports_exhaustion() {
        let mut s = WordStream::ultimately_periodic(w("b").into_letters(), w("ab").into_letters()).unwrap();
        let short = s.prefix(5).unwrap();
        let long = s.prefix(500).unwrap();
        assert_eq!(short.render(), "babab");
        assert!(long.starts_with(&short));
        assert_eq!(s.prefix(5).unwrap(), short);

        let mut f = WordStream::finite(w("abc"));
        assert_eq!(f.prefix(3).unwrap(), w("abc"));
        assert_eq!(f.prefix(4), Err(Error::StreamExhausted { requested: 4, available: 3 }));
        assert_eq!(f.letters_up_to(10).unwrap().len(), 3);
    }

    fn small_word(max_len: usize, letters: u32) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..letters).prop_map(Letter), 0..=max_len)
    }

    fn brute_closure(v: &[Letter]) -> Vec<Letter> {
        // Smallest k such that v followed by the mirror of its first k letters is a palindrome.
        (0..=v.len())
            .map(|k| {
                let mut c = v.to_vec();
                c.extend(v[..k].iter().rev());
                c
            })
            .find(|c| is_palindrome(c))
            .expect("k = |v| always works")
    }

    proptest! {
        #[test]
        fn mirror_is_involutive(v in small_word(20, 3)) {
            let x = FiniteWord::new(v);
            prop_assert_eq!(x.mirror().mirror(), x);
        }

        #[test]
        fn closure_is_minimal_and_idempotent(v in small_word(12, 3)) {
            let x = FiniteWord::new(v.clone());
            let c = x.palindromic_closure();
            prop_assert!(c.is_palindrome());
            prop_assert!(c.starts_with(&x));
            // Any palindrome extending x has the form x·ũ for a prefix u of x
            // once it is no longer than 2|x|, so the brute force is exhaustive.
            prop_assert_eq!(c.letters(), &brute_closure(&v)[..]);
            prop_assert_eq!(c.palindromic_closure(), c);
        }

        #[test]
        fn strip_prefix_reconstructs(v in small_word(20, 3), cut in 0usize..21) {
            let x = FiniteWord::new(v);
            let cut = cut.min(x.len());
            let p = &x[..cut];
            let rest = x.strip_prefix(p).unwrap();
            prop_assert_eq!(FiniteWord::from(p).concat(&rest), x.clone());
            let s = &x[cut..];
            prop_assert_eq!(x.strip_suffix(s).unwrap().concat(s), x);
        }

        #[test]
        fn palindrome_times_power_stays_palindrome(half in small_word(6, 2), mid in prop::option::of(0u32..2), pick in any::<prop::sample::Index>(), n in 2usize..5) {
            // q = p·u is a palindrome with palindromic prefix p ⇒ p·uⁿ is a palindrome,
            // and by symmetry uⁿ·p with ũ in place of u.
            let mut q = half.clone();
            q.extend(mid.map(Letter));
            q.extend(half.iter().rev());
            let pals = oracle::palindromic_prefix_lengths(&q);
            let cut = pals[pick.index(pals.len())];
            let (p, u) = q.split_at(cut);
            let mut pun = p.to_vec();
            for _ in 0..n { pun.extend_from_slice(u); }
            prop_assert!(is_palindrome(&pun));
            let rev_u: Vec<Letter> = u.iter().rev().copied().collect();
            let mut unp: Vec<Letter> = Vec::new();
            for _ in 0..n { unp.extend_from_slice(&rev_u); }
            unp.extend_from_slice(p);
            prop_assert!(is_palindrome(&unp));
        }
    }
}
