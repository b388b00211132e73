//! Relative densities of languages of reduced words.
//!
//! Everything here is exact: counts are big integers and ratios are big
//! rationals. Floating point only appears in Monte Carlo estimates and in
//! tolerance comparisons made by callers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::{reduced_word_automaton, Automaton, CountTable};
use crate::error::{Error, Result};
use crate::stallings::{StallingsGraph, SubgroupIndex};
use crate::words::{reduced_words_up_to, FreeAlphabet, Letter, ReducedWord};

/// Number of trailing indices inspected when summarising a sequence's tail.
pub const TAIL_WINDOW: usize = 10;

/// Spread below which a residue class counts as stabilised.
pub const STABILITY_TOLERANCE: f64 = 1e-3;

pub const DEFAULT_COVER_BOUND: usize = 6;

pub fn ratio(num: &BigUint, den: &BigUint) -> Option<BigRational> {
    if den.is_zero() {
        None
    } else {
        Some(BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())))
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `"p/q"`, always with an explicit denominator.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    (!q.is_zero()).then(|| BigRational::new(p, q))
}

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Sphere, ball and Cesàro ratio sequences of `L₁` relative to `L₂`.
///
/// `cesaro_*[n]` is the mean of the first `n` terms (`i = 0..n-1`), so index
/// 0 is undefined. Entries with a zero denominator are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySequences {
    pub numerator: CountTable,
    pub denominator: CountTable,
    pub sphere_ratio: Vec<Option<BigRational>>,
    pub ball_ratio: Vec<Option<BigRational>>,
    pub cesaro_sphere: Vec<Option<BigRational>>,
    pub cesaro_ball: Vec<Option<BigRational>>,
    /// Some defined ratio exceeds 1, so `L₁ ⊄ L₂`.
    pub exceeds_one: bool,
}

fn cesaro(terms: &[Option<BigRational>]) -> Vec<Option<BigRational>> {
    let mut out = vec![None];
    let mut sum = Some(BigRational::zero());
    for (i, t) in terms.iter().enumerate().take(terms.len().saturating_sub(1)) {
        sum = match (sum, t) {
            (Some(s), Some(t)) => Some(s + t),
            _ => None,
        };
        out.push(sum.as_ref().map(|s| s / BigRational::from_integer(BigInt::from(i + 1))));
    }
    out
}

impl DensitySequences {
    pub fn from_counts(numerator: CountTable, denominator: CountTable) -> DensitySequences {
        let n = numerator.n_max().min(denominator.n_max());
        let sphere_ratio: Vec<_> = (0..=n).map(|i| ratio(numerator.get(i), denominator.get(i))).collect();
        let (num_ball, den_ball) = (numerator.cumulative(), denominator.cumulative());
        let ball_ratio: Vec<_> = (0..=n).map(|i| ratio(num_ball.get(i), den_ball.get(i))).collect();
        let one = BigRational::one();
        let exceeds_one = sphere_ratio.iter().chain(&ball_ratio).flatten().any(|r| *r > one);
        // cesàro means need n + 1 terms to reach index n
        let mut sphere_terms = sphere_ratio.clone();
        sphere_terms.push(None);
        let mut ball_terms = ball_ratio.clone();
        ball_terms.push(None);
        let mut cesaro_sphere = cesaro(&sphere_terms);
        let mut cesaro_ball = cesaro(&ball_terms);
        cesaro_sphere.truncate(n + 1);
        cesaro_ball.truncate(n + 1);
        DensitySequences { numerator, denominator, sphere_ratio, ball_ratio, cesaro_sphere, cesaro_ball, exceeds_one }
    }

    pub fn n_max(&self) -> usize {
        self.sphere_ratio.len() - 1
    }

    /// Largest defined sphere ratio among the last two indices (covers a
    /// period-2 oscillation).
    pub fn sphere_tail(&self) -> Option<BigRational> {
        last_two_max(&self.sphere_ratio)
    }

    pub fn ball_tail(&self) -> Option<BigRational> {
        last_two_max(&self.ball_ratio)
    }

    /// Max and min of the sphere ratios over the tail window, per residue
    /// class modulo 1 and modulo 2.
    pub fn tails(&self) -> Vec<ResidueTail> {
        let n = self.n_max();
        let start = n.saturating_sub(TAIL_WINDOW - 1);
        let mut out = Vec::new();
        for modulus in [1, 2] {
            for residue in 0..modulus {
                let values: Vec<&BigRational> =
                    (start..=n).filter(|i| i % modulus == residue).filter_map(|i| self.sphere_ratio[i].as_ref()).collect();
                if let (Some(sup), Some(inf)) = (values.iter().max(), values.iter().min()) {
                    let spread = to_f64(&(*sup - *inf));
                    out.push(ResidueTail {
                        modulus,
                        residue,
                        sup: (*sup).clone(),
                        inf: (*inf).clone(),
                        stabilized: spread <= STABILITY_TOLERANCE,
                    });
                }
            }
        }
        out
    }
}

fn last_two_max(values: &[Option<BigRational>]) -> Option<BigRational> {
    values.iter().rev().take(2).flatten().max().cloned()
}

/// Tail summary of one residue class of the sphere-ratio sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueTail {
    pub modulus: usize,
    pub residue: usize,
    pub sup: BigRational,
    pub inf: BigRational,
    pub stabilized: bool,
}

pub fn density_sequences(l1: &Automaton, l2: &Automaton, n_max: usize) -> Result<DensitySequences> {
    if l1.alphabet() != l2.alphabet() {
        return Err(Error::AlphabetMismatch { left: l1.alphabet().rank(), right: l2.alphabet().rank() });
    }
    Ok(DensitySequences::from_counts(l1.count_words(n_max), l2.count_words(n_max)))
}

/// Sequences of `L ∩ Red(X)` relative to `Red(X)`.
pub fn relative_to_reduced(l: &Automaton, n_max: usize) -> Result<DensitySequences> {
    let red = reduced_word_automaton(l.alphabet());
    density_sequences(&l.intersect(&red)?, &red, n_max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroDensityVerdict {
    /// No word of `L` contains `witness` as a factor.
    Zero {
        witness: ReducedWord,
    },
    NotZero,
}

impl ZeroDensityVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroDensityVerdict::Zero { .. })
    }
}

/// Decides `D(L | Red(X)) = 0` for rational `L` by looking for a reduced
/// word that is not a factor of any word of `L ∩ Red(X)`.
pub fn is_zero_density(l: &Automaton) -> Result<ZeroDensityVerdict> {
    let red = reduced_word_automaton(l.alphabet());
    let factors = l.intersect(&red)?.factor_automaton();
    let missing = red.difference_within(&factors)?;
    Ok(match missing.shortest_word() {
        Some(w) => ZeroDensityVerdict::Zero { witness: ReducedWord::from_letters(w.into_letters()).expect("accepted by Red(X)") },
        None => ZeroDensityVerdict::NotZero,
    })
}

/// One translate in a cover certificate: the group element `w` is covered
/// when the reduced form of `prefix · w · suffix` lies in the set, i.e.
/// `w ∈ prefix⁻¹ S suffix⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverPair {
    pub prefix: ReducedWord,
    pub suffix: ReducedWord,
}

impl CoverPair {
    pub fn new(prefix: ReducedWord, suffix: ReducedWord) -> CoverPair {
        CoverPair { prefix, suffix }
    }

    fn covers(&self, language: &Automaton, w: &ReducedWord) -> bool {
        let target = self.prefix.mul(w).mul(&self.suffix);
        language.run(target.letters()).is_some_and(|q| language.is_final(q))
    }
}

fn reduced_dfa(l: &Automaton) -> Result<Automaton> {
    l.intersect(&reduced_word_automaton(l.alphabet()))?.minimize()
}

/// Cover certificate from the minimal automaton of `L ∩ Red(X)`: for every
/// pair of states `(q, q')` the shortest word reaching `q` and the shortest
/// word leading from `q'` to acceptance.
pub fn positive_density_cover(l: &Automaton) -> Result<Vec<CoverPair>> {
    if is_zero_density(l)?.is_zero() {
        return Err(Error::ZeroDensity);
    }
    let dfa = reduced_dfa(l)?;
    let start = dfa.initial_states()[0];
    let to_word = |w: crate::words::Word| ReducedWord::from_letters(w.into_letters()).expect("paths in Red(X) are reduced");
    let access: Vec<ReducedWord> =
        (0..dfa.state_count()).map(|q| to_word(dfa.shortest_path(start, |r| r == q).expect("trim automaton"))).collect();
    let coaccess: Vec<ReducedWord> =
        (0..dfa.state_count()).map(|q| to_word(dfa.shortest_path(q, |r| dfa.is_final(r)).expect("trim automaton"))).collect();
    let mut pairs: Vec<CoverPair> =
        access.iter().flat_map(|a| coaccess.iter().map(move |b| CoverPair::new(a.clone(), b.clone()))).collect();
    pairs.sort();
    pairs.dedup();
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverVerdict {
    Covered,
    Uncovered { counterexample: ReducedWord },
}

impl CoverVerdict {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverVerdict::Covered)
    }
}

/// Checks that every reduced word of length at most `bound` lies in one of
/// the translates; reports the shortlex-first uncovered word otherwise.
pub fn verify_cover(l: &Automaton, pairs: &[CoverPair], bound: usize) -> Result<CoverVerdict> {
    let dfa = reduced_dfa(l)?;
    for w in reduced_words_up_to(l.alphabet(), bound) {
        if !pairs.iter().any(|p| p.covers(&dfa, &w)) {
            return Ok(CoverVerdict::Uncovered { counterexample: w });
        }
    }
    Ok(CoverVerdict::Covered)
}

/// Irredundant sub-certificate: pairs are dropped greedily (last first)
/// while the remaining ones still cover all reduced words up to `bound`.
/// Removing any single pair from the result leaves some word uncovered.
pub fn minimal_cover(l: &Automaton, pairs: &[CoverPair], bound: usize) -> Result<Vec<CoverPair>> {
    let dfa = reduced_dfa(l)?;
    let words = reduced_words_up_to(l.alphabet(), bound);
    let coverage: Vec<Vec<bool>> = words.par_iter().map(|w| pairs.iter().map(|p| p.covers(&dfa, w)).collect()).collect();
    if let Some(i) = coverage.iter().position(|row| !row.contains(&true)) {
        return Err(Error::InvalidInput(format!("pairs do not cover {}", words[i])));
    }
    let mut keep = vec![true; pairs.len()];
    for j in (0..pairs.len()).rev() {
        keep[j] = false;
        let still_covered = coverage.iter().all(|row| row.iter().zip(&keep).any(|(&c, &k)| c && k));
        if !still_covered {
            keep[j] = true;
        }
    }
    Ok(pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| p.clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityKind {
    Zero { witness: ReducedWord },
    Positive { cover: Vec<CoverPair> },
}

/// Zero/positive classification of a rational language with its exact
/// sequences relative to `Red(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalDensity {
    pub kind: DensityKind,
    pub sequences: DensitySequences,
}

pub fn classify_rational(l: &Automaton, n_max: usize, cover_bound: usize) -> Result<RationalDensity> {
    let kind = match is_zero_density(l)? {
        ZeroDensityVerdict::Zero { witness } => DensityKind::Zero { witness },
        ZeroDensityVerdict::NotZero => {
            let pairs = positive_density_cover(l)?;
            DensityKind::Positive { cover: minimal_cover(l, &pairs, cover_bound)? }
        }
    };
    Ok(RationalDensity { kind, sequences: relative_to_reduced(l, n_max)? })
}

/// Closed-form densities of a finitely generated subgroup together with
/// the exact sequences they summarise.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgroupDensity {
    pub kind: DensityKind,
    pub index: SubgroupIndex,
    pub converges: bool,
    pub sphere_sup: BigRational,
    pub sphere_inf: BigRational,
    pub ball_sup: BigRational,
    pub ball_inf: BigRational,
    pub average: BigRational,
    pub weak: BigRational,
    pub sequences: DensitySequences,
}

/// Densities of `H` from its Stallings graph. With `m = [F : H]` and rank `k`:
/// aperiodic (non-bipartite) graphs converge to `1/m`; bipartite ones
/// alternate between `0` and `2/m` on spheres and between `1/(mk)` and
/// `(2k-1)/(mk)` on balls, averaging `1/m` either way.
pub fn subgroup_density(g: &StallingsGraph, n_max: usize, cover_bound: usize) -> Result<SubgroupDensity> {
    let language = g.to_automaton();
    let sequences = relative_to_reduced(&language, n_max)?;
    let k = g.alphabet().rank() as i64;
    let zero = BigRational::zero();
    match g.index() {
        SubgroupIndex::Infinite => {
            let ZeroDensityVerdict::Zero { witness } = is_zero_density(&language)? else {
                return Err(Error::InvalidInput("infinite-index subgroup without a forbidden factor".into()));
            };
            Ok(SubgroupDensity {
                kind: DensityKind::Zero { witness },
                index: SubgroupIndex::Infinite,
                converges: true,
                sphere_sup: zero.clone(),
                sphere_inf: zero.clone(),
                ball_sup: zero.clone(),
                ball_inf: zero.clone(),
                average: zero.clone(),
                weak: zero,
                sequences,
            })
        }
        SubgroupIndex::Finite(m) => {
            let m = m as i64;
            let pairs = positive_density_cover(&language)?;
            let cover = minimal_cover(&language, &pairs, cover_bound)?;
            let inverse_index = rational(1, m);
            let (converges, sphere_sup, sphere_inf, ball_sup, ball_inf) = if g.is_bipartite() {
                (false, rational(2, m), zero, rational(2 * k - 1, m * k), rational(1, m * k))
            } else {
                let d = inverse_index.clone();
                (true, d.clone(), d.clone(), d.clone(), d)
            };
            Ok(SubgroupDensity {
                kind: DensityKind::Positive { cover },
                index: SubgroupIndex::Finite(m as usize),
                converges,
                sphere_sup,
                sphere_inf,
                ball_sup,
                ball_inf,
                average: inverse_index.clone(),
                weak: inverse_index,
                sequences,
            })
        }
    }
}

/// Exact counts of the conjugation closure `S' = { u⁻¹ s u reduced : s ∈ S }`
/// of a set `S` of cyclically reduced words, alongside the coarser bound
/// that lets every conjugating letter range over `2k - 1` choices.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreClosureCounts {
    pub exact: CountTable,
    pub coarse_upper_bound: CountTable,
}

/// A nonempty core `s` has exactly one conjugate of length `|s|` (itself)
/// and `(2k-2)(2k-1)^(m-1)` of length `|s| + 2m` for `m >= 1`: the letter
/// next to the core must avoid both the first letter of `s` and the inverse
/// of its last letter, later letters only the previous one's inverse. The
/// empty core only contributes the empty word.
///
/// The upper bound is `Σ_i |S ∩ Σ^(n-2i)| (2k-1)^i`, with the length-0 core
/// excluded.
pub fn cycred_closure_counts(core_counts: &CountTable, alphabet: FreeAlphabet, n_max: usize) -> CoreClosureCounts {
    let size = alphabet.size() as u32;
    let core = |j: usize| -> BigUint {
        if j <= core_counts.n_max() && !core_counts.as_slice().is_empty() {
            core_counts.get(j).clone()
        } else {
            BigUint::zero()
        }
    };
    let power = |base: u32, e: usize| BigUint::from(base).pow(e as u32);
    let mut exact = Vec::with_capacity(n_max + 1);
    let mut coarse = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut e = BigUint::zero();
        let mut c = BigUint::zero();
        for m in 0..=n / 2 {
            let j = n - 2 * m;
            let s = core(j);
            if s.is_zero() {
                continue;
            }
            if j == 0 {
                if m == 0 {
                    e += &s;
                }
                continue;
            }
            e += if m == 0 { s.clone() } else { &s * BigUint::from(size - 2) * power(size - 1, m - 1) };
            c += &s * power(size - 1, m);
        }
        exact.push(e);
        coarse.push(c);
    }
    CoreClosureCounts { exact: CountTable::new(exact), coarse_upper_bound: CountTable::new(coarse) }
}

/// Uniform reduced word of length `n`: first letter uniform over `2k`,
/// each later one uniform over the `2k - 1` non-cancelling letters.
pub fn sample_reduced_with<R: Rng + ?Sized>(alphabet: FreeAlphabet, n: usize, rng: &mut R) -> ReducedWord {
    let size = alphabet.size();
    let mut letters: Vec<Letter> = Vec::with_capacity(n);
    for _ in 0..n {
        let next = match letters.last() {
            None => Letter::from_code(rng.gen_range(0..size)),
            Some(&prev) => {
                // skip over the inverse of the previous letter
                let mut code = rng.gen_range(0..size - 1);
                if code >= prev.inverse().code() {
                    code += 1;
                }
                Letter::from_code(code)
            }
        };
        letters.push(next);
    }
    ReducedWord::from_letters(letters).expect("sampled without cancellation")
}

pub fn sample_reduced(alphabet: FreeAlphabet, n: usize, seed: u64) -> ReducedWord {
    sample_reduced_with(alphabet, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Trials per independent random stream. Streams are assigned by chunk
/// index, so results do not depend on how chunks are scheduled.
const MONTE_CARLO_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub trials: usize,
    pub hits: usize,
    pub estimate: f64,
    /// Binomial standard error `sqrt(p(1-p)/trials)`.
    pub standard_error: f64,
}

/// Fraction of uniform reduced words of length `n` accepted by `l`.
pub fn monte_carlo_density(l: &Automaton, n: usize, trials: usize, seed: u64) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let alphabet = l.alphabet();
    let dfa = l.determinize().minimize()?;
    let chunks = trials.div_ceil(MONTE_CARLO_CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = MONTE_CARLO_CHUNK.min(trials - c * MONTE_CARLO_CHUNK);
            (0..count)
                .filter(|_| {
                    let w = sample_reduced_with(alphabet, n, &mut rng);
                    dfa.run(w.letters()).is_some_and(|q| dfa.is_final(q))
                })
                .count()
        })
        .sum();
    let p = hits as f64 / trials as f64;
    Ok(MonteCarloEstimate { trials, hits, estimate: p, standard_error: (p * (1.0 - p) / trials as f64).sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{count_reduced_sphere, cyclic_decompose, reduced_words_of_length};

    fn f2() -> FreeAlphabet {
        FreeAlphabet::new(2).unwrap()
    }

    fn rw(s: &str) -> ReducedWord {
        ReducedWord::parse(s, f2()).unwrap()
    }

    fn subgroup(gens: &[&str]) -> StallingsGraph {
        let gens: Vec<_> = gens.iter().map(|g| rw(g)).collect();
        StallingsGraph::fold_from_generators(&gens, f2()).unwrap()
    }

    fn starts_with_a() -> Automaton {
        let red = reduced_word_automaton(f2());
        let mut a_first = Automaton::new(f2(), 2);
        a_first.add_initial(0);
        a_first.set_final(1, true);
        a_first.add_transition(0, Letter::positive(0), 1);
        for l in f2().letters() {
            a_first.add_transition(1, l, 1);
        }
        red.intersect(&a_first).unwrap()
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(&rational(3, 4)), "3/4");
        assert_eq!(format_ratio(&rational(2, 2)), "1/1");
        assert_eq!(format_ratio(&BigRational::zero()), "0/1");
        assert_eq!(parse_ratio("6/8"), Some(rational(3, 4)));
        assert_eq!(parse_ratio("2"), Some(rational(2, 1)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn red_relative_to_itself() {
        let red = reduced_word_automaton(f2());
        let seq = density_sequences(&red, &red, 12).unwrap();
        let one = BigRational::one();
        assert!(seq.sphere_ratio.iter().chain(&seq.ball_ratio).all(|r| r.as_ref() == Some(&one)));
        assert!(seq.cesaro_sphere[1..].iter().all(|r| r.as_ref() == Some(&one)));
        assert_eq!(seq.cesaro_sphere[0], None);
        assert!(!seq.exceeds_one);
    }

    #[test]
    fn zero_denominators_are_flagged() {
        let empty = Automaton::new(f2(), 1);
        let red = reduced_word_automaton(f2());
        let seq = density_sequences(&red, &empty, 4).unwrap();
        assert!(seq.sphere_ratio.iter().all(Option::is_none));
        assert!(seq.cesaro_ball.iter().all(Option::is_none));
    }

    #[test]
    fn even_subgroup_sequences() {
        let g = subgroup(&["aa", "ab", "aB"]);
        let seq = relative_to_reduced(&g.to_automaton(), 30).unwrap();
        for n in 1..=30 {
            let expected = if n % 2 == 0 { BigRational::one() } else { BigRational::zero() };
            assert_eq!(seq.sphere_ratio[n], Some(expected));
        }
        let ball = |n: usize| to_f64(seq.ball_ratio[n].as_ref().unwrap());
        assert!((ball(30) - 0.75).abs() < 1e-6);
        assert!((ball(29) - 0.25).abs() < 1e-6);
        // even terms of the sphere sequence are all 1, odd ones 0
        assert_eq!(seq.cesaro_sphere[30], Some(rational(1, 2)));
    }

    #[test]
    fn ball_ratio_is_weighted_mean() {
        let g = subgroup(&["aa", "b", "abA"]);
        let seq = relative_to_reduced(&g.to_automaton(), 20).unwrap();
        for n in 0..=20 {
            let window = &seq.sphere_ratio[..=n];
            let lo = window.iter().flatten().min().unwrap();
            let hi = window.iter().flatten().max().unwrap();
            let b = seq.ball_ratio[n].as_ref().unwrap();
            assert!(lo <= b && b <= hi);
        }
    }

    #[test]
    fn zero_density_examples() {
        let mut cyclic_a = Automaton::new(f2(), 1);
        cyclic_a.add_initial(0);
        cyclic_a.set_final(0, true);
        cyclic_a.add_transition(0, Letter::positive(0), 0);
        cyclic_a.add_transition(0, Letter::negative(0), 0);
        assert_eq!(is_zero_density(&cyclic_a).unwrap(), ZeroDensityVerdict::Zero { witness: rw("b") });
        assert_eq!(is_zero_density(&reduced_word_automaton(f2())).unwrap(), ZeroDensityVerdict::NotZero);
        let even = subgroup(&["aa", "ab", "aB"]).to_automaton();
        assert_eq!(is_zero_density(&even).unwrap(), ZeroDensityVerdict::NotZero);
    }

    #[test]
    fn covers_hold_and_are_irredundant() {
        let red = reduced_word_automaton(f2());
        let whole = vec![CoverPair::new(ReducedWord::empty(), ReducedWord::empty())];
        assert_eq!(verify_cover(&red, &whole, 6).unwrap(), CoverVerdict::Covered);
        let pairs = positive_density_cover(&red).unwrap();
        assert_eq!(pairs[0], whole[0]);
        assert_eq!(minimal_cover(&red, &pairs, 6).unwrap(), whole);

        for l in [starts_with_a(), subgroup(&["aa", "ab", "aB"]).to_automaton()] {
            let pairs = positive_density_cover(&l).unwrap();
            assert!(verify_cover(&l, &pairs, 6).unwrap().is_covered());
            let minimal = minimal_cover(&l, &pairs, 6).unwrap();
            assert!(verify_cover(&l, &minimal, 6).unwrap().is_covered());
            for i in 0..minimal.len() {
                let mut dropped = minimal.clone();
                dropped.remove(i);
                assert!(!verify_cover(&l, &dropped, 6).unwrap().is_covered());
            }
        }
        let mut cyclic_a = Automaton::new(f2(), 1);
        cyclic_a.add_initial(0);
        cyclic_a.set_final(0, true);
        cyclic_a.add_transition(0, Letter::positive(0), 0);
        assert_eq!(positive_density_cover(&cyclic_a), Err(Error::ZeroDensity));
    }

    #[test]
    fn subgroup_closed_forms() {
        let even = subgroup_density(&subgroup(&["aa", "ab", "aB"]), 20, 6).unwrap();
        assert_eq!(even.index, SubgroupIndex::Finite(2));
        assert!(!even.converges);
        assert_eq!(even.sphere_sup, rational(1, 1));
        assert_eq!(even.sphere_inf, rational(0, 1));
        assert_eq!(even.ball_sup, rational(3, 4));
        assert_eq!(even.ball_inf, rational(1, 4));
        assert_eq!(even.average, rational(1, 2));
        assert_eq!(even.weak, rational(1, 2));

        let odd = subgroup_density(&subgroup(&["aa", "b", "abA"]), 20, 6).unwrap();
        assert!(odd.converges);
        assert_eq!(odd.sphere_sup, rational(1, 2));
        assert_eq!(odd.weak, rational(1, 2));

        let infinite = subgroup_density(&subgroup(&["aa", "b"]), 20, 6).unwrap();
        assert_eq!(infinite.index, SubgroupIndex::Infinite);
        assert!(matches!(infinite.kind, DensityKind::Zero { .. }));
        assert_eq!(infinite.weak, BigRational::zero());
    }

    #[test]
    fn bipartite_ball_closed_forms_match_sequences() {
        // index-4 subgroups: kernel of the length map mod 4 in F2, and the
        // even-length subgroup of F3 (index 2)
        let f3 = FreeAlphabet::new(3).unwrap();
        let even3: Vec<ReducedWord> = ["aa", "ab", "aB", "ac", "aC"].iter().map(|s| ReducedWord::parse(s, f3).unwrap()).collect();
        let g3 = StallingsGraph::fold_from_generators(&even3, f3).unwrap();
        let mod4: Vec<ReducedWord> = reduced_words_of_length(f2(), 4).into_iter().collect();
        let g4 = StallingsGraph::fold_from_generators(&mod4, f2()).unwrap();
        for g in [g3, g4] {
            assert!(g.is_bipartite());
            let d = subgroup_density(&g, 40, 2).unwrap();
            let ball = |n: usize| to_f64(d.sequences.ball_ratio[n].as_ref().unwrap());
            let (hi, lo) = (ball(40).max(ball(39)), ball(40).min(ball(39)));
            assert!((hi - to_f64(&d.ball_sup)).abs() < 1e-6, "{hi} vs {}", d.ball_sup);
            assert!((lo - to_f64(&d.ball_inf)).abs() < 1e-6, "{lo} vs {}", d.ball_inf);
        }
    }

    #[test]
    fn core_closure_examples() {
        // S = {b}
        let core = CountTable::new(vec![0u32, 1, 0, 0, 0, 0].into_iter().map(BigUint::from).collect());
        let counts = cycred_closure_counts(&core, f2(), 5);
        assert_eq!(counts.exact.get(3), &BigUint::from(2u32));
        assert_eq!(counts.coarse_upper_bound.get(3), &BigUint::from(3u32));
        // brute force: reduced words of length 3 and 5 whose core is b
        for n in [3, 5] {
            let brute = reduced_words_of_length(f2(), n).into_iter().filter(|w| cyclic_decompose(w).core == rw("b")).count();
            assert_eq!(counts.exact.get(n), &BigUint::from(brute));
        }
        let empty = cycred_closure_counts(&CountTable::new(vec![BigUint::zero(); 4]), f2(), 6);
        assert!(empty.exact.iter().chain(empty.coarse_upper_bound.iter()).all(Zero::is_zero));
    }

    #[test]
    fn sampling_is_uniform_enough_and_reproducible() {
        assert_eq!(sample_reduced(f2(), 12, 7), sample_reduced(f2(), 12, 7));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut hist = std::collections::HashMap::new();
        for _ in 0..12_000 {
            *hist.entry(sample_reduced_with(f2(), 2, &mut rng)).or_insert(0usize) += 1;
        }
        assert_eq!(hist.len(), 12);
        assert!(hist.values().all(|&c| (800..1200).contains(&c)));
    }

    #[test]
    fn monte_carlo_examples() {
        let red = reduced_word_automaton(f2());
        let est = monte_carlo_density(&red, 10, 1000, 1).unwrap();
        assert_eq!(est.estimate, 1.0);
        let mut cyclic_a = Automaton::new(f2(), 1);
        cyclic_a.add_initial(0);
        cyclic_a.set_final(0, true);
        cyclic_a.add_transition(0, Letter::positive(0), 0);
        cyclic_a.add_transition(0, Letter::negative(0), 0);
        let est = monte_carlo_density(&cyclic_a, 10, 10_000, 1).unwrap();
        assert!(est.hits <= 1);
        let a = monte_carlo_density(&red, 5, 9000, 42).unwrap();
        let b = monte_carlo_density(&red, 5, 9000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(count_reduced_sphere(f2(), 1), BigUint::from(4u32));
    }
}
