//! Subshifts of finite type over an arbitrary finite symbol set.
//!
//! A shift is presented by its follower graph: vertices are the allowed
//! words of length `m - 1` (with `m` the longest forbidden length) and an
//! edge `u -σ-> v` means `uσ` is allowed and ends in `v`. After pruning
//! vertices that cannot be extended in both directions, bi-infinite paths
//! are exactly the points of the shift.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::FreeAlphabet;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Longest word length used when checking that one shift's language lies
/// inside another's.
pub const INCLUSION_CHECK_LENGTH: usize = 8;

/// Symbols plus a finite list of forbidden words (as symbol indices).
/// Single-symbol forbidden words are absorbed by dropping the symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    symbols: Vec<char>,
    forbidden: Vec<Vec<usize>>,
}

impl SftSpec {
    pub fn new(symbols: &[char], forbidden: &[&str]) -> Result<SftSpec> {
        let mut seen = BTreeSet::new();
        if let Some(&dup) = symbols.iter().find(|c| !seen.insert(**c)) {
            return Err(Error::InvalidInput(format!("symbol {dup:?} listed twice")));
        }
        for word in forbidden {
            if word.is_empty() {
                return Err(Error::InvalidInput("empty forbidden word".into()));
            }
            if let Some((i, c)) = word.chars().enumerate().find(|(_, c)| !symbols.contains(c)) {
                return Err(Error::parse(i, format!("symbol {c:?} of {word:?} is not in the alphabet")));
            }
        }
        let removed: BTreeSet<char> = forbidden.iter().filter(|w| w.chars().count() == 1).flat_map(|w| w.chars()).collect();
        let kept: Vec<char> = symbols.iter().copied().filter(|c| !removed.contains(c)).collect();
        let mut words: Vec<Vec<usize>> = forbidden
            .iter()
            .filter(|w| w.chars().count() > 1 && !w.chars().any(|c| removed.contains(&c)))
            .map(|w| w.chars().map(|c| kept.iter().position(|&k| k == c).expect("kept symbol")).collect())
            .collect();
        words.sort();
        words.dedup();
        Ok(SftSpec { symbols: kept, forbidden: words })
    }

    /// Parses a symbol string and a comma-separated forbidden list.
    pub fn parse(alphabet: &str, forbidden: &str) -> Result<SftSpec> {
        let symbols: Vec<char> = alphabet.chars().collect();
        let words: Vec<&str> = forbidden.split(',').map(str::trim).filter(|w| !w.is_empty()).collect();
        SftSpec::new(&symbols, &words)
    }

    /// `Red(X)` as a shift: letters `a, A, b, B, …`, forbidding `xX` and `Xx`.
    pub fn reduced_words(alphabet: FreeAlphabet) -> SftSpec {
        let symbols: Vec<char> = alphabet.letters().map(|l| l.to_char()).collect();
        let pairs: Vec<String> = alphabet.letters().map(|l| [l.to_char(), l.inverse().to_char()].iter().collect()).collect();
        let refs: Vec<&str> = pairs.iter().map(String::as_str).collect();
        SftSpec::new(&symbols, &refs).expect("letters are in the alphabet")
    }

    /// Same symbols with extra forbidden words.
    pub fn with_forbidden(&self, extra: &[&str]) -> Result<SftSpec> {
        let mut all: Vec<String> = self.forbidden.iter().map(|w| self.render(w)).collect();
        all.extend(extra.iter().map(|s| s.to_string()));
        let refs: Vec<&str> = all.iter().map(String::as_str).collect();
        SftSpec::new(&self.symbols, &refs)
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn forbidden(&self) -> Vec<String> {
        self.forbidden.iter().map(|w| self.render(w)).collect()
    }

    fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&s| self.symbols[s]).collect()
    }

    fn window(&self) -> usize {
        self.forbidden.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    fn is_allowed(&self, word: &[usize]) -> bool {
        !self.forbidden.iter().any(|f| word.windows(f.len()).any(|w| w == f.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowerGraph {
    symbols: Vec<char>,
    window: usize,
    states: Vec<Vec<usize>>,
    /// `(source, symbol, target)`, sorted.
    edges: Vec<(usize, usize, usize)>,
    out: Vec<Vec<(usize, usize)>>,
}

/// Builds the follower graph and prunes it to its essential part.
pub fn build_follower_graph(spec: &SftSpec) -> Result<FollowerGraph> {
    let window = spec.window();
    let alphabet = spec.symbols.len();
    let mut states: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..window {
        states = states
            .iter()
            .flat_map(|w| {
                (0..alphabet).map(move |s| {
                    let mut next = w.clone();
                    next.push(s);
                    next
                })
            })
            .filter(|w| spec.is_allowed(w))
            .collect();
    }
    let index = |w: &[usize]| states.binary_search_by(|s| s.as_slice().cmp(w)).ok();
    let mut edges = Vec::new();
    for (u, word) in states.iter().enumerate() {
        for s in 0..alphabet {
            let mut extended = word.clone();
            extended.push(s);
            if spec.is_allowed(&extended) {
                if let Some(v) = index(&extended[1..]) {
                    edges.push((u, s, v));
                }
            }
        }
    }
    // prune sources and sinks until stable
    let mut alive = vec![true; states.len()];
    loop {
        let mut indeg = vec![0usize; states.len()];
        let mut outdeg = vec![0usize; states.len()];
        for &(u, _, v) in &edges {
            if alive[u] && alive[v] {
                outdeg[u] += 1;
                indeg[v] += 1;
            }
        }
        let mut changed = false;
        for q in 0..states.len() {
            if alive[q] && (indeg[q] == 0 || outdeg[q] == 0) {
                alive[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut renumber = vec![usize::MAX; states.len()];
    let mut kept = Vec::new();
    for (q, word) in states.into_iter().enumerate() {
        if alive[q] {
            renumber[q] = kept.len();
            kept.push(word);
        }
    }
    if kept.is_empty() {
        return Err(Error::EmptyShift);
    }
    let edges: Vec<_> =
        edges.into_iter().filter(|&(u, _, v)| alive[u] && alive[v]).map(|(u, s, v)| (renumber[u], s, renumber[v])).collect();
    let mut out = vec![Vec::new(); kept.len()];
    for &(u, s, v) in &edges {
        out[u].push((s, v));
    }
    Ok(FollowerGraph { symbols: spec.symbols.clone(), window, states: kept, edges, out })
}

impl FollowerGraph {
    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn state_label(&self, q: usize) -> String {
        self.states[q].iter().map(|&s| self.symbols[s]).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, char, usize)> + '_ {
        self.edges.iter().map(|&(u, s, v)| (u, self.symbols[s], v))
    }

    pub fn out_degree(&self, q: usize) -> usize {
        self.out[q].len()
    }

    pub fn is_essential(&self) -> bool {
        let mut indeg = vec![0; self.states.len()];
        for &(_, _, v) in &self.edges {
            indeg[v] += 1;
        }
        (0..self.states.len()).all(|q| indeg[q] > 0 && !self.out[q].is_empty())
    }

    /// Strong connectivity of the (nonempty, essential) graph.
    pub fn is_irreducible(&self) -> bool {
        let mut back = vec![Vec::new(); self.states.len()];
        for &(u, _, v) in &self.edges {
            back[v].push(u);
        }
        let forward: Vec<Vec<usize>> = self.out.iter().map(|e| e.iter().map(|&(_, v)| v).collect()).collect();
        reaches_all(&forward) && reaches_all(&back)
    }

    /// Exact `|Σⁿ ∩ L(X)|` for `n = 0..=n_max`.
    pub fn language_counts(&self, n_max: usize) -> Vec<BigUint> {
        let mut counts = Vec::with_capacity(n_max + 1);
        for n in 0..self.window.min(n_max + 1) {
            let prefixes: BTreeSet<&[usize]> = self.states.iter().map(|s| &s[..n]).collect();
            counts.push(BigUint::from(prefixes.len()));
        }
        let mut paths = vec![BigUint::one(); self.states.len()];
        for _ in self.window..=n_max {
            counts.push(paths.iter().sum());
            let mut next = vec![BigUint::zero(); self.states.len()];
            for &(u, _, v) in &self.edges {
                next[v] += &paths[u];
            }
            paths = next;
        }
        counts
    }

    pub fn language_count(&self, n: usize) -> BigUint {
        self.language_counts(n).pop().expect("n + 1 entries")
    }

    /// Whether `word` is a factor of some point of the shift.
    pub fn contains_word(&self, word: &str) -> bool {
        let Some(word) = word.chars().map(|c| self.symbols.iter().position(|&s| s == c)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        if word.len() < self.window {
            return self.states.iter().any(|s| s.starts_with(&word));
        }
        let Ok(mut q) = self.states.binary_search_by(|s| s.as_slice().cmp(&word[..self.window])) else {
            return false;
        };
        for s in &word[self.window..] {
            match self.out[q].iter().find(|(t, _)| t == s) {
                Some(&(_, v)) => q = v,
                None => return false,
            }
        }
        true
    }

    /// All words of the language with length exactly `n`, sorted.
    pub fn words_of_length(&self, n: usize) -> Vec<String> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        if n < self.window {
            found.extend(self.states.iter().map(|s| s[..n].to_vec()));
        } else {
            let mut layer: Vec<(Vec<usize>, usize)> = self.states.iter().cloned().zip(0..).collect();
            for _ in self.window..n {
                layer = layer
                    .iter()
                    .flat_map(|(w, q)| {
                        self.out[*q].iter().map(move |&(s, v)| {
                            let mut next = w.clone();
                            next.push(s);
                            (next, v)
                        })
                    })
                    .collect();
            }
            found.extend(layer.into_iter().map(|(w, _)| w));
        }
        found.into_iter().map(|w| w.iter().map(|&s| self.symbols[s]).collect()).collect()
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.states.len();
        let mut m = vec![vec![0.0; n]; n];
        for &(u, _, v) in &self.edges {
            m[u][v] += 1.0;
        }
        m
    }
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Natural-log entropy of an irreducible shift.
///
/// Power iteration runs on `A + I`, which is primitive whenever `A` is
/// irreducible, so periodic graphs converge too; the Perron root of `A` is
/// the limit minus one. Iteration stops once successive Rayleigh quotients
/// differ by less than `tol`. On failure the error carries the last
/// Collatz–Wielandt bracket for the Perron root of `A`.
pub fn entropy(g: &FollowerGraph, tol: f64, max_iter: usize) -> Result<f64> {
    if !g.is_irreducible() {
        return Err(Error::Reducible);
    }
    let n = g.state_count();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let apply = |x: &[f64]| {
        let mut y = x.to_vec();
        for &(u, _, v) in &g.edges {
            y[u] += x[v];
        }
        y
    };
    let mut previous = f64::NAN;
    let mut bracket = (0.0, f64::INFINITY);
    for _ in 0..max_iter {
        let y = apply(&x);
        let quotient = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / x.iter().map(|a| a * a).sum::<f64>();
        let ratios = x.iter().zip(&y).map(|(a, b)| b / a);
        bracket = ratios.fold((f64::INFINITY, 0.0), |(lo, hi): (f64, f64), r| (lo.min(r), hi.max(r)));
        if (quotient - previous).abs() < tol {
            return Ok((quotient - 1.0).ln());
        }
        previous = quotient;
        let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        x = y.into_iter().map(|a| a / norm).collect();
    }
    Err(Error::NoConvergence { iterations: max_iter, low: bracket.0 - 1.0, high: bracket.1 - 1.0 })
}

/// Ratios `|Σⁿ ∩ L(X₁)| / |Σⁿ ∩ L(X₂)|` for `n = 0..=n_max`, after checking
/// `L(X₁) ⊆ L(X₂)` on all words up to [`INCLUSION_CHECK_LENGTH`].
pub fn nested_decay(inner: &SftSpec, outer: &SftSpec, n_max: usize) -> Result<Vec<BigRational>> {
    let outer_graph = build_follower_graph(outer)?;
    let inner_graph = match build_follower_graph(inner) {
        Ok(g) => Some(g),
        Err(Error::EmptyShift) => None,
        Err(e) => return Err(e),
    };
    let inner_counts = match &inner_graph {
        Some(g) => {
            for n in 0..=INCLUSION_CHECK_LENGTH {
                if let Some(w) = g.words_of_length(n).into_iter().find(|w| !outer_graph.contains_word(w)) {
                    return Err(Error::InclusionViolated { witness: w });
                }
            }
            g.language_counts(n_max)
        }
        None => {
            let mut c = vec![BigUint::zero(); n_max + 1];
            c[0] = BigUint::one();
            c
        }
    };
    let outer_counts = outer_graph.language_counts(n_max);
    Ok(inner_counts.into_iter().zip(outer_counts).map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
}
