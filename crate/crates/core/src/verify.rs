//! Randomized property suites. Each case draws its input from a generator
//! seeded with `seed + case`, so a failing case is reproduced by its seed
//! alone, and the printed input can be fed back through [`replay`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cf;
use crate::error::{Error, Result};
use crate::generators::{episturmian_word, sturmian_directive, sturmian_psi, sturmian_word, word_from_psi};
use crate::lengths::{self, DeltaEstimate};
use crate::oracle::{self, PeriodicParams};
use crate::psi::{recover_psi, DirectiveFunctionSpec, PsiValue, Reducedness, Tail};
use crate::seq::IntSequence;
use crate::words::{is_palindrome, render, FiniteWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemma5x,
    Theorem412,
    Theorem414,
    Prop62,
    Lemma71,
    Lemma91,
    Gap77,
    Sturmian3Way,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma5x,
        Suite::Theorem412,
        Suite::Theorem414,
        Suite::Prop62,
        Suite::Lemma71,
        Suite::Lemma91,
        Suite::Gap77,
        Suite::Sturmian3Way,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma5x => "lemma-5x",
            Suite::Theorem412 => "theorem-412",
            Suite::Theorem414 => "theorem-414",
            Suite::Prop62 => "prop-62",
            Suite::Lemma71 => "lemma-71",
            Suite::Lemma91 => "lemma-91",
            Suite::Gap77 => "gap-77",
            Suite::Sturmian3Way => "sturmian-3way",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// A failing case, complete enough to be replayed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: String,
    pub case: usize,
    pub case_seed: u64,
    /// Spec JSON, word, or sequence, depending on the suite.
    pub input: String,
    pub word_prefix: String,
    pub index: Option<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseResult {
    Pass,
    /// The sampled input did not meet the suite's hypotheses.
    Skip(String),
    Fail { index: Option<usize>, word_prefix: String, message: String },
}

impl CaseResult {
    fn fail(index: Option<usize>, word: &[Letter], message: impl Into<String>) -> Self {
        let shown = &word[..word.len().min(80)];
        CaseResult::Fail { index, word_prefix: render(shown), message: message.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_success() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {} cases, {} passed, {} skipped, {} failed (seed {})",
            self.suite,
            self.cases,
            self.passed,
            self.skipped,
            self.failures.len(),
            self.seed
        )
    }
}

pub fn case_rng(case_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(case_seed)
}

/// Runs `cases` independent cases in parallel. The report does not depend
/// on scheduling.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> SuiteReport {
    let mut outcomes: Vec<(usize, u64, String, CaseResult)> = (0..cases)
        .into_par_iter()
        .map(|case| {
            let case_seed = seed.wrapping_add(case as u64);
            let (input, result) = run_case(suite, case_seed);
            (case, case_seed, input, result)
        })
        .collect();
    outcomes.sort_by_key(|o| o.0);
    let mut report = SuiteReport { suite: suite.name().into(), seed, cases, passed: 0, skipped: 0, failures: Vec::new() };
    for (case, case_seed, input, result) in outcomes {
        match result {
            CaseResult::Pass => report.passed += 1,
            CaseResult::Skip(_) => report.skipped += 1,
            CaseResult::Fail { index, word_prefix, message } => report.failures.push(Counterexample {
                suite: suite.name().into(),
                case,
                case_seed,
                input,
                word_prefix,
                index,
                message,
            }),
        }
    }
    report
}

/// Draws the input of one case and checks it. Returns the input as text.
pub fn run_case(suite: Suite, case_seed: u64) -> (String, CaseResult) {
    let mut rng = case_rng(case_seed);
    match suite {
        Suite::Lemma5x => {
            let w = sample_word(&mut rng);
            (render(&w), check_lemmas_5x(&w))
        }
        Suite::Theorem412 => {
            let spec = if rng.gen_bool(2.0 / 3.0) { sample_reduced_spec(&mut rng) } else { sample_non_reduced_spec(&mut rng) };
            (spec.to_json(), check_theorem_412(&spec))
        }
        Suite::Theorem414 => {
            let spec = sample_reduced_spec(&mut rng);
            (spec.to_json(), check_theorem_414(&spec))
        }
        Suite::Prop62 => match sample_with_delta_below(&mut rng, 1.95, 200) {
            Some(spec) => {
                let result = check_prop_62(&spec, &mut rng);
                (spec.to_json(), result)
            }
            None => (String::new(), CaseResult::Skip("no spec with δ < 1.95 sampled".into())),
        },
        Suite::Lemma71 => match sample_with_delta_below(&mut rng, 1.70, 2000) {
            Some(spec) => (spec.to_json(), check_lemma_71(&spec)),
            None => (String::new(), CaseResult::Skip("no spec with δ < 1.70 sampled".into())),
        },
        Suite::Lemma91 => {
            let spec = sample_reduced_spec(&mut rng);
            (spec.to_json(), check_lemma_91(&spec))
        }
        Suite::Gap77 => {
            let b = sample_int_sequence(&mut rng, 6, 4, 8);
            (b.to_string(), check_gap_77(&b))
        }
        Suite::Sturmian3Way => {
            let s = sample_int_sequence(&mut rng, 4, 3, 4);
            (s.to_string(), check_sturmian_3way(&s, 2000))
        }
    }
}

/// Re-checks a printed input. Suites whose check draws extra randomness
/// use `case_seed` for it, exactly as the original run did.
pub fn replay(suite: Suite, input: &str, case_seed: u64) -> Result<CaseResult> {
    let spec = || DirectiveFunctionSpec::from_json(input);
    Ok(match suite {
        Suite::Lemma5x => check_lemmas_5x(&FiniteWord::parse(input)?),
        Suite::Theorem412 => check_theorem_412(&spec()?),
        Suite::Theorem414 => check_theorem_414(&spec()?),
        Suite::Prop62 => {
            let mut rng = case_rng(case_seed);
            // Consume the same draws as the original sampler before perturbing.
            let original = sample_with_delta_below(&mut rng, 1.95, 200);
            let spec = spec()?;
            if original.as_ref() != Some(&spec) {
                rng = case_rng(case_seed ^ 0x5eed);
            }
            check_prop_62(&spec, &mut rng)
        }
        Suite::Lemma71 => check_lemma_71(&spec()?),
        Suite::Lemma91 => check_lemma_91(&spec()?),
        Suite::Gap77 => check_gap_77(&input.parse()?),
        Suite::Sturmian3Way => check_sturmian_3way(&input.parse()?, 2000),
    })
}

// ---------------------------------------------------------------------------
// Sampling

const LETTER_WEIGHT: u32 = 3;

fn sample_letter(rng: &mut impl Rng, alphabet: u32) -> Letter {
    Letter(rng.gen_range(0..alphabet))
}

fn sample_table(rng: &mut impl Rng, alphabet: u32, m: usize) -> Vec<PsiValue> {
    let mut table = vec![PsiValue::Letter(sample_letter(rng, alphabet))];
    for i in 2..=m {
        let r = rng.gen_range(0..10);
        table.push(if r < LETTER_WEIGHT {
            PsiValue::Letter(sample_letter(rng, alphabet))
        } else if r < 6 {
            PsiValue::Index(i - 1)
        } else {
            PsiValue::Index(rng.gen_range(1..i))
        });
    }
    table
}

pub fn sample_int_sequence(rng: &mut impl Rng, max_entry: u64, max_preperiod: usize, max_period: usize) -> IntSequence {
    let q = rng.gen_range(0..=max_preperiod);
    let r = rng.gen_range(1..=max_period);
    let pre = (0..q).map(|_| rng.gen_range(1..=max_entry)).collect();
    let per = (0..r).map(|_| rng.gen_range(1..=max_entry)).collect();
    IntSequence::new(pre, per).expect("positive entries")
}

/// A candidate spec: alphabet of 1–3 letters, table of at most 8 entries,
/// tail chosen uniformly among the three periodic kinds.
pub fn sample_spec(rng: &mut impl Rng) -> DirectiveFunctionSpec {
    loop {
        let alphabet = rng.gen_range(1..=3);
        let spec = match rng.gen_range(0..3) {
            0 => {
                let m = rng.gen_range(1..=8);
                DirectiveFunctionSpec::new(sample_table(rng, alphabet, m), Tail::Prev)
            }
            1 => {
                let m = rng.gen_range(1..=8);
                let table = sample_table(rng, alphabet, m);
                let p = rng.gen_range(1..=5);
                let offsets = (0..p).map(|k| rng.gen_range(1..=4usize.min(m + k))).collect();
                DirectiveFunctionSpec::new(table, Tail::OffsetPeriodic { offsets })
            }
            _ => DirectiveFunctionSpec::new(Vec::new(), Tail::Sturmian { s: sample_int_sequence(rng, 4, 2, 4) }),
        };
        if let Ok(spec) = spec {
            return spec;
        }
    }
}

/// Rejection sampling on exact reducedness.
pub fn sample_reduced_spec(rng: &mut impl Rng) -> DirectiveFunctionSpec {
    loop {
        let spec = sample_spec(rng);
        if spec.is_reduced(0) == Ok(Reducedness::Reduced) {
            return spec;
        }
    }
}

/// A reduced table followed by an entry breaking one of the two conditions,
/// then `ψ(i) = i − 1`.
pub fn sample_non_reduced_spec(rng: &mut impl Rng) -> DirectiveFunctionSpec {
    loop {
        let alphabet = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=8);
        let mut table = sample_table(rng, alphabet, m);
        let Ok(base) = DirectiveFunctionSpec::new(table.clone(), Tail::Prev) else { continue };
        if base.is_reduced(0) != Ok(Reducedness::Reduced) {
            continue;
        }
        let (t, v) = table
            .iter()
            .enumerate()
            .rev()
            .map(|(k, &v)| (k + 1, v))
            .find(|&(n, v)| v.is_letter() || v.index().is_some_and(|j| j + 2 <= n))
            .expect("ψ(1) is a letter");
        let pad = rng.gen_range(0..3);
        let breaks_behind = rng.gen_bool(0.5);
        let i = if breaks_behind { (m + 1).max(t + 2) + pad } else { m + 1 + pad };
        while table.len() + 1 < i {
            table.push(PsiValue::Index(table.len()));
        }
        let bad = if breaks_behind { PsiValue::Index(rng.gen_range(t..=i - 2)) } else { v };
        table.push(bad);
        if let Ok(spec) = DirectiveFunctionSpec::new(table, Tail::Prev) {
            if matches!(spec.is_reduced(0), Ok(Reducedness::ViolationAt { .. })) {
                return spec;
            }
        }
    }
}

/// A reduced spec with an infinite t-family and measured δ below `bound`,
/// or `None` after `attempts` draws.
pub fn sample_with_delta_below(rng: &mut impl Rng, bound: f64, attempts: usize) -> Option<DirectiveFunctionSpec> {
    for _ in 0..attempts {
        let spec = sample_reduced_spec(rng);
        if spec.has_infinite_t_family() != Some(true) {
            continue;
        }
        if let Ok(est) = lengths::delta_estimate(&spec, 250, 250) {
            if est.value < bound {
                return Some(spec);
            }
        }
    }
    None
}

/// Short words over 1–3 letters; half of them are built by palindromic
/// closures so that they carry many palindromic prefixes.
pub fn sample_word(rng: &mut impl Rng) -> FiniteWord {
    let alphabet = rng.gen_range(1..=3);
    let len = rng.gen_range(1..=40);
    if rng.gen_bool(0.5) {
        return FiniteWord::new((0..len).map(|_| sample_letter(rng, alphabet)).collect());
    }
    let mut w = FiniteWord::empty();
    while w.len() < len {
        let mut next = w.concat(&[sample_letter(rng, alphabet)]).palindromic_closure();
        if rng.gen_bool(0.2) {
            next = next.concat(&[sample_letter(rng, alphabet)]);
        }
        w = next;
    }
    FiniteWord::new(w[..len].to_vec())
}

// ---------------------------------------------------------------------------
// Checks

/// Palindromic-prefix properties of a finite word.
pub fn check_lemmas_5x(w: &FiniteWord) -> CaseResult {
    let lens = oracle::palindromic_prefix_lengths(w);
    let pal = |n: usize| lens.binary_search(&n).is_ok();
    // Any palindromes p, pu give palindromes p u^k.
    for &p in &lens {
        for &q in lens.iter().filter(|&&q| q > p) {
            let u = &w[p..q];
            let mut x = w[..p].to_vec();
            for k in 0..4 {
                if !is_palindrome(&x) {
                    return CaseResult::fail(Some(q), w, format!("p u^{k} is not a palindrome for |p| = {p}, |pu| = {q}"));
                }
                x.extend_from_slice(u);
            }
            let mut y = w[..p].to_vec();
            let tilde: Vec<Letter> = u.iter().rev().copied().collect();
            for k in 0..4 {
                if !is_palindrome(&y) {
                    return CaseResult::fail(Some(q), w, format!("ũ^{k} p is not a palindrome for |p| = {p}, |pu| = {q}"));
                }
                y.splice(0..0, tilde.iter().copied());
            }
        }
    }
    for &n in &lens {
        for &n1 in &lens {
            for &n2 in lens.iter().filter(|&&x| n1 <= x && x <= n + n1) {
                let a0 = n + n1 - n2;
                if w[a0..n] != w[n1..n2] {
                    return CaseResult::fail(Some(n2), w, format!("no common suffix for ({n}, {n1}, {n2})"));
                }
                if n2 + n1 >= n && !pal(a0) {
                    return CaseResult::fail(Some(a0), w, format!("prefix of length {a0} is not a palindrome for ({n}, {n1}, {n2})"));
                }
            }
        }
    }
    for pair in lens.windows(2) {
        let (n1, n2) = (pair[0], pair[1]);
        let omega = &w[n1..n2];
        for &n in lens.iter().filter(|&&n| n1 <= n && n <= n1 + n2) {
            let t = (n - n1) / omega.len();
            let rebuilt: Vec<Letter> = w[..n1].iter().chain(omega.iter().cycle().take(t * omega.len())).copied().collect();
            if (n - n1) % omega.len() != 0 || rebuilt[..] != w[..n] {
                return CaseResult::fail(Some(n), w, format!("prefix of length {n} is not π'ω^t for ({n1}, {n2})"));
            }
        }
    }
    for triple in lens.windows(3) {
        let (n0, n1, n2) = (triple[0], triple[1], triple[2]);
        let doubled: Vec<Letter> = w[..n1].iter().chain(&w[n0..n1]).copied().collect();
        if n2 <= n0 + n1 && doubled[..] != w[..n2] {
            return CaseResult::fail(Some(n2), w, format!("π_2 ≠ π_1 π_0⁻¹ π_1 although {n2} ≤ {n0} + {n1}"));
        }
    }
    let period = &w[..w.len().min(6)];
    let long: Vec<Letter> = period.iter().cycle().take(40 * period.len()).copied().collect();
    let long_lens = oracle::palindromic_prefix_lengths(&long);
    match oracle::periodic_palindrome_params(period) {
        PeriodicParams::Params { d, r } => {
            if let Some(n) = (d..long.len()).find(|&n| long_lens.binary_search(&n).is_ok() != (n % d == r % d)) {
                return CaseResult::fail(Some(n), &long, format!("periodic parameters ({d}, {r}) wrong at {n}"));
            }
        }
        PeriodicParams::NotApplicable => {
            if long_lens.last().is_some_and(|&n| n >= period.len()) {
                return CaseResult::fail(None, &long, "periodic word has long palindromic prefixes but was reported without any");
            }
        }
    }
    CaseResult::Pass
}

/// Construction lengths against the oracle, both directions.
pub fn check_theorem_412(spec: &DirectiveFunctionSpec) -> CaseResult {
    let reduced = match spec.is_reduced(0) {
        Ok(r) => r,
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    let length = match reduced {
        Reducedness::ViolationAt { t, .. } => match lengths::length_sequence(spec, t + 3) {
            Ok(p) => (4 * p.small_lengths()[t + 2]).max(256),
            Err(e) => return CaseResult::Skip(e.to_string()),
        },
        _ => 4096,
    };
    let mut g = match word_from_psi(spec, length) {
        Ok(g) => g,
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    let letters = match g.stream.letters(length) {
        Ok(l) => l.to_vec(),
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    let report = oracle::palindromic_prefixes(&letters);
    let construction: Vec<usize> =
        g.profile.small_lengths().into_iter().take_while(|&n| n <= report.safe_horizon).collect();
    let observed = report.trusted();
    let extra: Vec<usize> = observed.iter().filter(|n| construction.binary_search(n).is_err()).copied().collect();
    let missing = construction.iter().find(|n| observed.binary_search(n).is_err());
    if let Some(&n) = missing {
        return CaseResult::fail(Some(n), &letters, format!("constructed π of length {n} is not a palindromic prefix"));
    }
    match (reduced, extra.first()) {
        (Reducedness::ViolationAt { .. }, None) => {
            CaseResult::fail(None, &letters, format!("non-reduced ψ ({reduced}) but no extra palindromic prefix up to {}", report.safe_horizon))
        }
        (Reducedness::ViolationAt { .. }, Some(_)) => CaseResult::Pass,
        (_, Some(&n)) => CaseResult::fail(Some(n), &letters, format!("reduced ψ but extra palindromic prefix of length {n}")),
        (_, None) => CaseResult::Pass,
    }
}

/// ψ read back from the word equals ψ.
pub fn check_theorem_414(spec: &DirectiveFunctionSpec) -> CaseResult {
    let length = 4096;
    let mut g = match word_from_psi(spec, length) {
        Ok(g) => g,
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    let (recovered, _) = match recover_psi(&mut g.stream, length) {
        Ok(r) => r,
        Err(e) => {
            let letters = g.stream.materialized().to_vec();
            return CaseResult::fail(None, &letters, format!("recovery failed: {e}"));
        }
    };
    for (k, &v) in recovered.table().iter().enumerate() {
        let expected = spec.psi_value(k + 1);
        if expected.as_ref() != Ok(&v) {
            let letters = g.stream.materialized().to_vec();
            return CaseResult::fail(Some(k + 1), &letters, format!("recovered ψ({}) = {v}, expected {expected:?}", k + 1));
        }
    }
    if recovered.table().len() < 6 {
        return CaseResult::Skip("recovered range too short".into());
    }
    CaseResult::Pass
}

/// Perturbed initial values change the lengths by an asymptotic factor only.
pub fn check_prop_62(spec: &DirectiveFunctionSpec, rng: &mut impl Rng) -> CaseResult {
    const TERMS: usize = 300;
    let Some(structure) = spec.tail_structure() else { return CaseResult::Skip("truncated".into()) };
    let base = match lengths::length_sequence(spec, TERMS) {
        Ok(p) => p,
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    let k = structure.start.clamp(1, TERMS - 60);
    let scale = rng.gen_range(1u32..=3);
    let mut shift = BigUint::from(0u32);
    let initial: Vec<BigUint> = base.n[..k]
        .iter()
        .map(|x| {
            shift += rng.gen_range(0u32..=3);
            x * scale + &shift
        })
        .collect();
    let alt = match lengths::alt_length_sequence(spec, &initial, TERMS) {
        Ok(p) => p,
        Err(e) => return CaseResult::Skip(format!("perturbed sequence not increasing: {e}")),
    };
    let q: Vec<f64> = (TERMS - 50..TERMS).map(|i| lengths::ratio_f64(&alt.n[i], &base.n[i])).collect();
    let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
    let word = || Vec::new();
    if hi - lo >= 1e-6 {
        return CaseResult::fail(Some(TERMS), &word(), format!("n'_i/n_i spread {:.3e} over the last 50 terms", hi - lo));
    }
    let a = DeltaEstimate::from_ratios(&base.ratios()[TERMS - 51..], TERMS - 51);
    let b = DeltaEstimate::from_ratios(&alt.ratios()[TERMS - 51..], TERMS - 51);
    if (a.value - b.value).abs() >= 1e-6 {
        return CaseResult::fail(None, &word(), format!("windowed suprema {} and {} differ", a.value, b.value));
    }
    CaseResult::Pass
}

/// Below √3, jumps eventually land right before the previous jump.
pub fn check_lemma_71(spec: &DirectiveFunctionSpec) -> CaseResult {
    let Some(structure) = spec.tail_structure() else { return CaseResult::Skip("truncated".into()) };
    let horizon = structure.start + 4 * structure.period + 500;
    let family = match spec.t_family(horizon) {
        Ok(f) => f,
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    for pair in family.indices.windows(2) {
        let (prev, t) = (pair[0], pair[1]);
        if prev < structure.start {
            continue;
        }
        let v = spec.psi_value(t);
        if v != Ok(PsiValue::Index(prev - 1)) {
            return CaseResult::fail(Some(t), &[], format!("ψ({t}) = {v:?}, expected {}", prev - 1));
        }
    }
    CaseResult::Pass
}

/// `n_{t+1} > n_t + n_{t−1}` on the t-family, the `2 − 3^{−B}` ceiling and
/// the exact shrinking of the α hull.
pub fn check_lemma_91(spec: &DirectiveFunctionSpec) -> CaseResult {
    let report = match lengths::appendix_diagnostics(spec, 300) {
        Ok(r) => r,
        Err(e) => return CaseResult::Skip(e.to_string()),
    };
    if let Some(t) = report.growth_failure {
        return CaseResult::fail(Some(t), &[], format!("n_(t+1) ≤ n_t + n_(t−1) at t = {t}"));
    }
    if report.ceiling_respected == Some(false) {
        return CaseResult::fail(
            None,
            &[],
            format!("δ ≈ {} exceeds 2 − 3^(−{})", report.delta.value, report.back_reference_bound.unwrap_or(0)),
        );
    }
    if !report.hull_monotone {
        return CaseResult::fail(None, &[], "hull of α values widened");
    }
    CaseResult::Pass
}

/// Admissible sequences avoid `(√3, (7+√13)/6)`.
pub fn check_gap_77(b: &IntSequence) -> CaseResult {
    if !cf::cassaigne_condition(b) {
        return CaseResult::Skip("b fails the shift condition".into());
    }
    let value = cf::spectrum_value(b);
    if cf::sqrt3() < value && value < cf::gap_upper() {
        return CaseResult::fail(None, &[], format!("[1; 1, {b}] = {value} lies in the gap"));
    }
    CaseResult::Pass
}

/// Standard sequence, directive function and iterated closure give one word.
pub fn check_sturmian_3way(s: &IntSequence, length: usize) -> CaseResult {
    let prefix = |g: Result<crate::generators::GeneratedWord>| -> Result<Vec<Letter>> {
        let mut g = g?;
        Ok(g.stream.letters(length)?.to_vec())
    };
    let routes = (
        prefix(sturmian_word(s, length)),
        prefix(word_from_psi(&sturmian_psi(s), length)),
        prefix(episturmian_word(&sturmian_directive(s), length)),
    );
    match routes {
        (Ok(x), Ok(y), Ok(z)) => {
            if let Some(k) = (0..length).find(|&k| x[k] != y[k] || x[k] != z[k]) {
                return CaseResult::fail(Some(k), &x, format!("routes disagree at position {k}"));
            }
            CaseResult::Pass
        }
        (x, y, z) => {
            let e = [x.err(), y.err(), z.err()].into_iter().flatten().next().expect("one route failed");
            CaseResult::fail(None, &[], format!("generation failed: {e}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma-99".parse::<Suite>().is_err());
    }

    #[test]
    fn samplers_meet_their_contracts() {
        let mut rng = case_rng(7);
        for _ in 0..50 {
            let spec = sample_reduced_spec(&mut rng);
            assert_eq!(spec.is_reduced(0).unwrap(), Reducedness::Reduced);
            assert!(spec.table().len() <= 8);
            let bad = sample_non_reduced_spec(&mut rng);
            assert!(matches!(bad.is_reduced(0).unwrap(), Reducedness::ViolationAt { .. }));
            assert_eq!(bad.tail(), &Tail::Prev);
        }
    }

    #[test]
    fn suites_pass_on_a_few_cases() {
        for suite in Suite::ALL {
            let report = run_suite(suite, 11, 6);
            assert!(report.is_success(), "{report}: {:?}", report.failures);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Theorem412, 3, 8);
        let b = run_suite(Suite::Theorem412, 3, 8);
        assert_eq!(a.failures, b.failures);
        assert_eq!((a.passed, a.skipped), (b.passed, b.skipped));
    }

    #[test]
    fn replay_reproduces_a_failure() {
        // A non-reduced spec presented as if it were reduced to the recovery check.
        let spec = DirectiveFunctionSpec::new(
            vec![PsiValue::Letter(Letter::A), PsiValue::Letter(Letter::B), PsiValue::Index(2), PsiValue::Index(2)],
            Tail::Prev,
        )
        .unwrap();
        let first = check_theorem_414(&spec);
        assert!(matches!(first, CaseResult::Fail { .. }));
        assert_eq!(replay(Suite::Theorem414, &spec.to_json(), 0).unwrap(), first);
        assert_eq!(replay(Suite::Gap77, "(2,1)", 0).unwrap(), CaseResult::Pass);
    }
}
