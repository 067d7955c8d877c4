//! Word constructions: `w_ψ`, characteristic Sturmian words (standard
//! sequence, ψ scheme and directive word), standard episturmian words,
//! words with scarce palindromic prefixes, the near-√3 family and words
//! continued from a seed.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lengths::{PalindromicProfile, Step};
use crate::oracle;
use crate::psi::{DirectiveFunctionSpec, PsiValue, Tail};
use crate::seq::{IntSequence, LetterSequence};
use crate::words::{close_in_place, is_palindrome, FiniteWord, Letter, PrefixRule, WordStream};

/// A word together with the palindromes `π_i` its construction went through.
#[derive(Debug)]
pub struct GeneratedWord {
    pub stream: WordStream,
    /// Lengths `n_i = |π_i|` recorded up to the first `π_i` reaching the
    /// requested length.
    pub profile: PalindromicProfile,
    pub spec: Option<DirectiveFunctionSpec>,
}

impl GeneratedWord {
    pub fn prefix(&mut self, n: usize) -> Result<FiniteWord> {
        self.stream.prefix(n)
    }
}

/// The doubling recurrence driven by ψ. The buffer always holds `π_i`.
struct PsiRule {
    spec: DirectiveFunctionSpec,
    values: Vec<PsiValue>,
    lengths: Vec<usize>,
    steps: Vec<Step>,
}

impl PsiRule {
    fn new(spec: DirectiveFunctionSpec, lengths: Vec<usize>, steps: Vec<Step>) -> Self {
        Self { spec, values: Vec::new(), lengths, steps }
    }

    fn value(&mut self, i: usize) -> Result<Option<PsiValue>> {
        if i > self.values.len() {
            let want = (2 * self.values.len()).max(i).max(64);
            let want = self.spec.defined_up_to().map_or(want, |m| want.min(m));
            if want < i {
                return Ok(None);
            }
            self.values = self.spec.materialize(want)?;
        }
        Ok(Some(self.values[i - 1]))
    }

    fn profile(&self) -> PalindromicProfile {
        PalindromicProfile::new(self.lengths.iter().map(|&n| BigUint::from(n)).collect(), self.steps.clone())
    }
}

impl PrefixRule for PsiRule {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<()> {
        while buf.len() < target {
            let i = self.lengths.len();
            let n = buf.len();
            let Some(v) = self.value(i)? else { return Ok(()) };
            match v {
                PsiValue::Letter(l) => {
                    buf.push(l);
                    buf.extend_from_within(..n);
                }
                PsiValue::Index(j) => {
                    let from = self.lengths[j - 1];
                    buf.extend_from_within(from..n);
                }
            }
            self.lengths.push(buf.len());
            self.steps.push(Step::Psi(v));
        }
        Ok(())
    }
}

/// `w_ψ`, materialized until some `π_i` has length at least `min_length`.
pub fn word_from_psi(spec: &DirectiveFunctionSpec, min_length: usize) -> Result<GeneratedWord> {
    start_psi_rule(spec, Vec::new(), vec![0], Vec::new(), min_length)
}

fn start_psi_rule(
    spec: &DirectiveFunctionSpec,
    mut buf: Vec<Letter>,
    lengths: Vec<usize>,
    steps: Vec<Step>,
    min_length: usize,
) -> Result<GeneratedWord> {
    if min_length == 0 {
        return Err(Error::InvalidParameters("min_length must be at least 1".into()));
    }
    let mut rule = PsiRule::new(spec.clone(), lengths, steps);
    rule.extend(&mut buf, min_length)?;
    let profile = rule.profile();
    Ok(GeneratedWord { stream: WordStream::resume(rule, buf), profile, spec: Some(spec.clone()) })
}

/// `σ_n` with `σ_0 = a`, `σ_1 = a^{s_1−1} b`, `σ_n = σ_{n−1}^{s_n} σ_{n−2}`.
pub fn sturmian_standard_sequence(s: &IntSequence, n: usize) -> FiniteWord {
    let mut prev = vec![Letter::A];
    if n == 0 {
        return FiniteWord::new(prev);
    }
    let mut cur = first_standard_word(s);
    for k in 2..=n {
        let next = next_standard_word(&cur, &prev, *s.term(k));
        prev = std::mem::replace(&mut cur, next);
    }
    FiniteWord::new(cur)
}

fn first_standard_word(s: &IntSequence) -> Vec<Letter> {
    let mut w = vec![Letter::A; (*s.term(1) - 1) as usize];
    w.push(Letter::B);
    w
}

fn next_standard_word(cur: &[Letter], prev: &[Letter], power: u64) -> Vec<Letter> {
    let mut next = Vec::with_capacity(cur.len() * power as usize + prev.len());
    for _ in 0..power {
        next.extend_from_slice(cur);
    }
    next.extend_from_slice(prev);
    next
}

/// Buffer holds `σ_k`; `prev` is `σ_{k−1}`.
struct StandardSequenceRule {
    s: IntSequence,
    k: usize,
    prev: Vec<Letter>,
}

impl PrefixRule for StandardSequenceRule {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<()> {
        if buf.is_empty() {
            *buf = first_standard_word(&self.s);
            self.k = 1;
        }
        while buf.len() < target {
            self.k += 1;
            let next = next_standard_word(buf, &self.prev, *self.s.term(self.k));
            self.prev = std::mem::replace(buf, next);
        }
        Ok(())
    }
}

/// `c_α` for `α = [0; s_1, s_2, …]` from the standard sequence. The profile
/// comes from the Sturmian directive function; the two constructions are
/// compared letter by letter on the materialized prefix.
pub fn sturmian_word(s: &IntSequence, min_length: usize) -> Result<GeneratedWord> {
    let spec = sturmian_psi(s);
    let psi_route = word_from_psi(&spec, min_length)?;
    let psi_letters = psi_route.stream.materialized();
    let mut stream = WordStream::new(StandardSequenceRule { s: s.clone(), k: 0, prev: vec![Letter::A] });
    let sigma_letters = stream.letters(psi_letters.len())?;
    if let Some(pos) = sigma_letters.iter().zip(psi_letters).position(|(x, y)| x != y) {
        return Err(Error::InvalidSpec(format!("standard sequence and directive function disagree at position {pos} for s = {s}")));
    }
    Ok(GeneratedWord { stream, profile: psi_route.profile, spec: Some(spec) })
}

/// The directive function of `c_α`: `ψ(t_k) = t_{k−1} − 1` on the jumps.
pub fn sturmian_psi(s: &IntSequence) -> DirectiveFunctionSpec {
    DirectiveFunctionSpec::new(Vec::new(), Tail::Sturmian { s: s.clone() }).expect("valid")
}

/// `Δ = a^{s_1−1} b^{s_2} a^{s_3} b^{s_4} …`.
pub fn sturmian_directive(s: &IntSequence) -> LetterSequence {
    let block = |k: usize| {
        let letter = if k % 2 == 1 { Letter::A } else { Letter::B };
        let len = if k == 1 { *s.term(1) - 1 } else { *s.term(k) };
        vec![letter; len as usize]
    };
    let q = s.preperiod().len().max(1);
    let r = s.period().len();
    let cycle = if r.is_multiple_of(2) { r } else { 2 * r };
    let pre: Vec<Letter> = (1..=q).flat_map(block).collect();
    let per: Vec<Letter> = (q + 1..=q + cycle).flat_map(block).collect();
    LetterSequence::new(pre, per).expect("non-empty period")
}

/// Buffer holds `π_i`; the next palindrome is `(π_i δ_i)⁽⁺⁾`.
struct ClosureRule {
    delta: LetterSequence,
    lengths: Vec<usize>,
    steps: Vec<Step>,
}

impl PrefixRule for ClosureRule {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<()> {
        while buf.len() < target {
            let i = self.lengths.len();
            let letter = *self.delta.term(i);
            buf.push(letter);
            close_in_place(buf);
            self.lengths.push(buf.len());
            self.steps.push(Step::Closure(letter));
        }
        Ok(())
    }
}

/// Standard episturmian word of directive word Δ by iterated palindromic closure.
pub fn episturmian_word(delta: &LetterSequence, min_length: usize) -> Result<GeneratedWord> {
    if min_length == 0 {
        return Err(Error::InvalidParameters("min_length must be at least 1".into()));
    }
    let mut rule = ClosureRule { delta: delta.clone(), lengths: vec![0], steps: Vec::new() };
    let mut buf = Vec::new();
    rule.extend(&mut buf, min_length)?;
    let profile = PalindromicProfile::new(rule.lengths.iter().map(|&n| BigUint::from(n)).collect(), rule.steps.clone());
    Ok(GeneratedWord { stream: WordStream::resume(rule, buf), profile, spec: None })
}

/// A word over the growing alphabet `δ_0, δ_1, …` (letter `δ_k` is
/// `Letter(k)`) whose palindromic prefixes have lengths with
/// `limsup n_{i+1}/n_i = α`. The word is cut at `max_word_length`; the
/// profile runs on to `max_sequence_terms`.
pub fn scarce_word(
    alpha: &BigRational,
    epsilon: &BigRational,
    max_word_length: usize,
    max_sequence_terms: usize,
) -> Result<GeneratedWord> {
    let two = BigRational::from_integer(2.into());
    if !epsilon.is_positive() || *alpha <= &two + epsilon {
        return Err(Error::InvalidParameters(format!("need ε > 0 and α > 2 + ε, got α = {alpha}, ε = {epsilon}")));
    }
    let lengths = scarce_lengths(alpha, epsilon, max_sequence_terms.max(2));
    let mut steps = Vec::with_capacity(lengths.len());
    let mut buf: Vec<Letter> = Vec::new();
    for (k, pair) in lengths.windows(2).enumerate() {
        let fresh = Letter(k as u32 + 1);
        steps.push(Step::Scarce(fresh));
        if buf.len() >= max_word_length {
            continue;
        }
        let n = buf.len();
        let gap = (&pair[1] - &pair[0] * 2u32).to_usize().expect("materialized lengths fit in memory") - 1;
        buf.push(fresh);
        if gap > 0 {
            buf.extend(std::iter::repeat_n(Letter(0), gap - 1));
            buf.push(fresh);
        }
        buf.extend_from_within(..n);
    }
    buf.truncate(max_word_length);
    let profile = PalindromicProfile::new(lengths, steps);
    Ok(GeneratedWord { stream: WordStream::finite(FiniteWord::new(buf)), profile, spec: None })
}

/// `n_1 = 0, n_2 = 1`; for even `i` the smallest multiple of the largest
/// possible power `10^v` in `(2 n_i, (2 + ε) n_i + 1)`; for odd `i`
/// `n_{i+1} = p_v n_i / 10^v` with `p_k = ⌈α 10^k⌉`.
pub fn scarce_lengths(alpha: &BigRational, epsilon: &BigRational, count: usize) -> Vec<BigUint> {
    let mut n = vec![BigUint::zero(), BigUint::one()];
    let mut v = 0u32;
    let ten = BigUint::from(10u32);
    while n.len() < count {
        let i = n.len();
        let cur = &n[i - 1];
        let next = if i % 2 == 0 {
            let lo = cur * 2u32;
            let hi = (BigRational::from_integer(2.into()) + epsilon) * BigRational::from_integer(cur.clone().into())
                + BigRational::one();
            let first_multiple = |p: &BigUint| (&lo / p + 1u32) * p;
            let fits = |m: &BigUint| BigRational::from_integer(m.clone().into()) < hi;
            let mut best = (0u32, first_multiple(&BigUint::one()));
            let mut power = ten.clone();
            let mut k = 1u32;
            loop {
                let m = first_multiple(&power);
                if !fits(&m) {
                    break;
                }
                best = (k, m);
                power *= &ten;
                k += 1;
            }
            v = best.0;
            best.1
        } else {
            let scale = ten.pow(v);
            let scaled = alpha * BigRational::from_integer(scale.clone().into());
            let p = scaled.ceil().to_integer().to_biguint().expect("positive");
            let (q, r) = (cur * p).div_rem(&scale);
            debug_assert!(r.is_zero());
            q
        };
        n.push(next);
    }
    n.truncate(count);
    n
}

/// `φ_n` on `0..=4n`.
fn phi(n: usize, i: usize) -> usize {
    if i == 0 {
        3
    } else if i <= n || i % 3 == (n + 1) % 3 {
        2
    } else if i % 3 == (n + 2) % 3 {
        1
    } else {
        3
    }
}

/// `ψ_n(1) = a, ψ_n(2) = b, ψ_n(i) = i − φ_n(i mod (4n+1))`.
pub fn near_sqrt3_psi(n: usize) -> Result<DirectiveFunctionSpec> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("ψ_n needs n ≥ 2, got {n}")));
    }
    let p = 4 * n + 1;
    let offsets = (0..p).map(|j| phi(n, (j + 3) % p)).collect();
    DirectiveFunctionSpec::new(vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B)], Tail::OffsetPeriodic { offsets })
}

/// ψ built from `φ_{n_1}` repeated `r_1` times, then `φ_{n_2}` repeated
/// `r_2` times, and so on; the last block repeats forever.
pub fn near_sqrt3_concatenation(blocks: &[(usize, usize)]) -> Result<DirectiveFunctionSpec> {
    let (last, init) = blocks
        .split_last()
        .ok_or_else(|| Error::InvalidParameters("at least one block is needed".into()))?;
    if let Some(&(n, _)) = blocks.iter().find(|b| b.0 < 2) {
        return Err(Error::InvalidParameters(format!("ψ_n needs n ≥ 2, got {n}")));
    }
    // Block k covers the indices i in [start_k, start_k + r_k (4 n_k + 1)),
    // on which ψ(i) = i − φ_{n_k}(i − start_k mod 4 n_k + 1).
    let mut offset_at: Vec<usize> = Vec::new();
    for &(n, reps) in init {
        let p = 4 * n + 1;
        offset_at.extend((0..reps * p).map(|j| phi(n, j % p)));
    }
    let origin = offset_at.len();
    let mut table = vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B)];
    table.extend((3..origin).map(|i| PsiValue::Index(i - offset_at[i])));
    let m = table.len();
    let p = 4 * last.0 + 1;
    let tail = (0..p).map(|j| phi(last.0, (m + 1 + j - origin) % p)).collect();
    DirectiveFunctionSpec::new(table, Tail::OffsetPeriodic { offsets: tail })
}

/// Continues the construction from the palindrome `seed = π_{i0}`, which
/// must have exactly `i0` palindromic prefixes. Only `ψ(i)` for `i ≥ i0`
/// is consulted.
pub fn seeded_word(seed: &FiniteWord, i0: usize, spec: &DirectiveFunctionSpec, min_length: usize) -> Result<GeneratedWord> {
    let lengths = oracle::palindromic_prefix_lengths(seed);
    if lengths.len() != i0 {
        return Err(Error::SeedMismatch { expected: i0, found: lengths.len() });
    }
    if !is_palindrome(seed) {
        return Err(Error::InvalidParameters(format!("seed {seed} is not a palindrome")));
    }
    let steps = vec![Step::Seed; i0 - 1];
    start_psi_rule(spec, seed.letters().to_vec(), lengths, steps, min_length.max(seed.len()).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{palindromic_prefix_lengths, smallest_period};

    fn seq(pre: &[u64], per: &[u64]) -> IntSequence {
        IntSequence::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    fn corpus() -> Vec<IntSequence> {
        vec![
            seq(&[], &[1]),
            seq(&[], &[2]),
            seq(&[], &[3]),
            seq(&[], &[2, 1]),
            seq(&[], &[1, 2]),
            seq(&[1], &[1, 3]),
            seq(&[4, 1], &[2]),
            seq(&[2, 3], &[1, 1, 4]),
            seq(&[1, 1], &[3, 2]),
        ]
    }

    fn render(g: &mut GeneratedWord, n: usize) -> String {
        g.prefix(n).unwrap().render()
    }

    #[test]
    fn psi_word_fixtures() {
        let mut fib = word_from_psi(&DirectiveFunctionSpec::fibonacci(), 13).unwrap();
        assert_eq!(render(&mut fib, 13), "babbababbabba");
        let mut trib = word_from_psi(&DirectiveFunctionSpec::tribonacci(), 15).unwrap();
        assert_eq!(render(&mut trib, 15), "abacabaabacabab");
        let mut a = word_from_psi(&DirectiveFunctionSpec::constant(Letter::A), 5).unwrap();
        assert_eq!(render(&mut a, 40), "a".repeat(40));
        assert_eq!(fib.profile.small_lengths()[..6], [0, 1, 3, 6, 11, 19]);
    }

    #[test]
    fn standard_sequence_fixtures() {
        let ones = seq(&[], &[1]);
        assert_eq!(sturmian_standard_sequence(&ones, 0).render(), "a");
        assert_eq!(sturmian_standard_sequence(&ones, 1).render(), "b");
        assert_eq!(sturmian_standard_sequence(&ones, 3).render(), "bab");
        assert_eq!(sturmian_standard_sequence(&seq(&[2], &[1]), 1).render(), "ab");
        let mut g = sturmian_word(&ones, 30).unwrap();
        assert_eq!(render(&mut g, 13), "babbababbabba");
    }

    #[test]
    fn sturmian_psi_fixture() {
        let spec = sturmian_psi(&seq(&[], &[2]));
        let v = spec.materialize(4).unwrap();
        assert_eq!(v, vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B), PsiValue::Index(2), PsiValue::Index(1)]);
        assert_eq!(sturmian_psi(&seq(&[], &[1])).materialize(6).unwrap(), DirectiveFunctionSpec::fibonacci().materialize(6).unwrap());
    }

    #[test]
    fn three_routes_agree() {
        for s in corpus() {
            let mut sigma = sturmian_word(&s, 600).unwrap();
            let mut psi = word_from_psi(&sturmian_psi(&s), 600).unwrap();
            let mut epi = episturmian_word(&sturmian_directive(&s), 600).unwrap();
            let x = sigma.prefix(600).unwrap();
            assert_eq!(x, psi.prefix(600).unwrap(), "{s}");
            assert_eq!(x, epi.prefix(600).unwrap(), "{s}");
        }
    }

    #[test]
    fn standard_words_end_with_a_swapped_pair_after_a_palindrome() {
        for s in corpus() {
            for n in 2..=8 {
                let (cur, prev) = (sturmian_standard_sequence(&s, n - 1), sturmian_standard_sequence(&s, n - 2));
                for p in 1..=*s.term(n) {
                    let w = next_standard_word(&cur, &prev, p);
                    let (body, end) = w.split_at(w.len() - 2);
                    assert!(is_palindrome(body), "{s} n={n} p={p}");
                    let expected = if n % 2 == 0 { [Letter::B, Letter::A] } else { [Letter::A, Letter::B] };
                    assert_eq!(end, expected, "{s} n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn palindromes_factor_through_standard_words() {
        for s in corpus() {
            let mut g = sturmian_word(&s, 1).unwrap();
            let letters = g.stream.letters(200_000).unwrap().to_vec();
            let pi = palindromic_prefix_lengths(&letters);
            let t = |k: usize| (1..=k).map(|j| *s.term(j) as usize).sum::<usize>();
            for k in 3..=6 {
                let sigma_k = sturmian_standard_sequence(&s, k);
                let tail = pi[t(k - 1) - 2];
                for l in 0..=*s.term(k + 1) as usize {
                    let mut expected: Vec<Letter> = Vec::new();
                    for _ in 0..=l {
                        expected.extend_from_slice(&sigma_k);
                    }
                    expected.extend_from_slice(&letters[..tail]);
                    let len = pi[t(k) + l - 1];
                    assert_eq!(&letters[..len], &expected[..], "{s} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn standard_sequence_palindromes_obey_the_directive_function() {
        for s in corpus() {
            let mut g = sturmian_word(&s, 1).unwrap();
            let letters = g.stream.letters(50_000).unwrap().to_vec();
            let pi = palindromic_prefix_lengths(&letters);
            let usable = pi.partition_point(|&n| n <= letters.len() / 2);
            let psi = sturmian_psi(&s).materialize(usable).unwrap();
            for i in 1..usable {
                let (n, next) = (pi[i - 1], pi[i]);
                let mut built = letters[..n].to_vec();
                match psi[i - 1] {
                    PsiValue::Letter(l) => {
                        built.push(l);
                        built.extend_from_slice(&letters[..n]);
                    }
                    PsiValue::Index(j) => built.extend_from_slice(&letters[pi[j - 1]..n]),
                }
                assert_eq!(&built[..], &letters[..next], "{s} i={i}");
            }
        }
    }

    #[test]
    fn periodic_iff_eventually_previous_index() {
        let specs = vec![
            DirectiveFunctionSpec::fibonacci(),
            DirectiveFunctionSpec::tribonacci(),
            DirectiveFunctionSpec::constant(Letter::A),
            DirectiveFunctionSpec::new(vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B), PsiValue::Index(1)], Tail::Prev).unwrap(),
            DirectiveFunctionSpec::new(
                vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B), PsiValue::Letter(Letter::C), PsiValue::Index(2)],
                Tail::Prev,
            )
            .unwrap(),
            near_sqrt3_psi(2).unwrap(),
            sturmian_psi(&seq(&[], &[2, 1])),
        ];
        for spec in specs {
            let mut g = word_from_psi(&spec, 4000).unwrap();
            let w = g.stream.letters(4000).unwrap();
            let periodic = smallest_period(w) <= w.len() / 4;
            assert_eq!(periodic, spec.has_infinite_t_family() == Some(false), "{}", spec.to_json());
        }
    }

    #[test]
    fn episturmian_fixtures() {
        let abc: LetterSequence = "(abc)".parse().unwrap();
        let mut t = episturmian_word(&abc, 15).unwrap();
        assert_eq!(render(&mut t, 15), "abacabaabacabab");
        let a: LetterSequence = "(a)".parse().unwrap();
        let mut g = episturmian_word(&a, 10).unwrap();
        assert_eq!(render(&mut g, 10), "aaaaaaaaaa");
    }

    #[test]
    fn directive_word_of_slope() {
        assert_eq!(sturmian_directive(&seq(&[], &[1])).to_string(), "(b,a)");
        assert_eq!(sturmian_directive(&seq(&[], &[2, 1])).prefix(8), "abaabaab".chars().map(|c| Letter::from_char(c).unwrap()).collect::<Vec<_>>());
    }

    #[test]
    fn scarce_fixtures() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let n = scarce_lengths(&r(3, 1), &r(1, 2), 8);
        let small: Vec<u64> = n.iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(small, vec![0, 1, 3, 9, 20, 60, 130, 390]);
        let mut g = scarce_word(&r(3, 1), &r(1, 2), 3000, 30).unwrap();
        let letters = g.stream.letters_up_to(3000).unwrap().to_vec();
        let report = oracle::palindromic_prefixes(&letters);
        let recorded: Vec<usize> = g.profile.small_lengths().into_iter().take_while(|&x| x <= report.safe_horizon).collect();
        assert_eq!(report.trusted(), &recorded[..]);
        assert!(matches!(scarce_word(&r(5, 2), &r(1, 2), 10, 10), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn near_sqrt3_family() {
        for n in 2..=6 {
            let spec = near_sqrt3_psi(n).unwrap();
            assert_eq!(spec.is_reduced(0).unwrap(), crate::psi::Reducedness::Reduced, "n={n}");
        }
        assert!(near_sqrt3_psi(1).is_err());
        let cat = near_sqrt3_concatenation(&[(2, 2), (3, 1)]).unwrap();
        assert_eq!(cat.materialize(20).unwrap()[..20], near_sqrt3_psi(2).unwrap().materialize(20).unwrap()[..]);
        let single = near_sqrt3_concatenation(&[(3, 1)]).unwrap();
        assert_eq!(single.materialize(200).unwrap(), near_sqrt3_psi(3).unwrap().materialize(200).unwrap());
    }

    #[test]
    fn seeded_fixtures() {
        let fib = DirectiveFunctionSpec::fibonacci();
        let mut plain = word_from_psi(&fib, 100).unwrap();
        let mut same = seeded_word(&FiniteWord::empty(), 1, &fib, 100).unwrap();
        assert_eq!(plain.prefix(100).unwrap(), same.prefix(100).unwrap());
        let mut aa = seeded_word(&"aa".parse().unwrap(), 3, &DirectiveFunctionSpec::constant(Letter::A), 20).unwrap();
        assert_eq!(render(&mut aa, 20), "a".repeat(20));
        let seed: FiniteWord = "abacaba".parse().unwrap();
        assert_eq!(seeded_word(&seed, 3, &fib, 10).unwrap_err(), Error::SeedMismatch { expected: 3, found: 4 });
        let mut g = seeded_word(&seed, 4, &fib, 1).unwrap();
        let letters = g.stream.letters(1_000_000).unwrap().to_vec();
        let lens = palindromic_prefix_lengths(&letters);
        let k = lens.len() - 1;
        assert!((lens[k] as f64 / lens[k - 1] as f64 - 1.618_033_988_75).abs() < 1e-5, "{lens:?}");
        assert_eq!(oracle::abundance_check(&g.profile.n), oracle::Abundance::Abundant);
    }
}
