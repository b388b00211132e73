//! Automorphic orbits of cyclic words in free groups of rank at most 3.
//!
//! Orbits are explored through Whitehead automorphisms acting on cyclically
//! reduced words. Peak reduction guarantees that any two orbit members of
//! cyclic length at most `B` are joined by Whitehead moves passing only
//! through words of cyclic length at most `B`, so a bounded breadth-first
//! search finds every cyclically reduced orbit element within the bound.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::automata::CountTable;
use crate::density::cycred_closure_counts;
use crate::error::{Error, Result};
use crate::stallings::{StallingsGraph, SubgroupIndex};
use crate::words::{count_reduced_ball, cyclic_core, free_reduce, FreeAlphabet, Letter, ReducedWord, Word};

pub const MAX_RANK: usize = 3;

/// How a Type II automorphism with multiplier `a` treats a generator `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiply {
    /// `x ↦ x`
    Fixed,
    /// `x ↦ x a`
    Right,
    /// `x ↦ a⁻¹ x`
    Left,
    /// `x ↦ a⁻¹ x a`
    Both,
}

const MULTIPLY: [Multiply; 4] = [Multiply::Fixed, Multiply::Right, Multiply::Left, Multiply::Both];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAuto {
    /// Generator `i` goes to generator `permutation[i]`, inverted when
    /// `inverted[i]` is set.
    TypeI { permutation: Vec<usize>, inverted: Vec<bool> },
    /// `multiplier` is fixed; `actions[i]` applies to generator `i` (the
    /// entry for the multiplier's own generator is always `Fixed`).
    TypeII { multiplier: Letter, actions: Vec<Multiply> },
}

impl WhiteheadAuto {
    pub fn identity(rank: usize) -> WhiteheadAuto {
        WhiteheadAuto::TypeI { permutation: (0..rank).collect(), inverted: vec![false; rank] }
    }

    /// Image of the positive letter of generator `i`, reduced.
    pub fn generator_image(&self, i: usize) -> ReducedWord {
        match self {
            WhiteheadAuto::TypeI { permutation, inverted } => {
                let l = if inverted[i] { Letter::negative(permutation[i]) } else { Letter::positive(permutation[i]) };
                ReducedWord::from_letters(vec![l]).expect("single letter")
            }
            WhiteheadAuto::TypeII { multiplier, actions } => {
                let x = Letter::positive(i);
                let a = *multiplier;
                let letters = match actions[i] {
                    Multiply::Fixed => vec![x],
                    Multiply::Right => vec![x, a],
                    Multiply::Left => vec![a.inverse(), x],
                    Multiply::Both => vec![a.inverse(), x, a],
                };
                free_reduce(&Word::new(letters))
            }
        }
    }

    pub fn images(&self, rank: usize) -> Vec<ReducedWord> {
        (0..rank).map(|i| self.generator_image(i)).collect()
    }

    /// Applies the automorphism to a reduced word.
    pub fn apply(&self, w: &ReducedWord) -> ReducedWord {
        let rank = w.letters().iter().map(|l| l.generator() + 1).max().unwrap_or(0);
        let images = self.images(rank);
        let mut letters = Vec::with_capacity(w.len() * 3);
        for &l in w.letters() {
            let image = &images[l.generator()];
            if l.is_inverse() {
                letters.extend(image.inverse().into_letters());
            } else {
                letters.extend_from_slice(image.letters());
            }
        }
        free_reduce(&Word::new(letters))
    }

    /// Whether the generator images generate the whole group, checked by
    /// folding them into a single-vertex Stallings graph.
    pub fn is_automorphism(&self, alphabet: FreeAlphabet) -> bool {
        StallingsGraph::fold_from_generators(&self.images(alphabet.rank()), alphabet).is_ok_and(|g| g.index() == SubgroupIndex::Finite(1))
    }
}

impl fmt::Display for WhiteheadAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = match self {
            WhiteheadAuto::TypeI { permutation, .. } => permutation.len(),
            WhiteheadAuto::TypeII { actions, .. } => actions.len(),
        };
        for i in 0..rank {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", Letter::positive(i), self.generator_image(i))?;
        }
        Ok(())
    }
}

fn check_rank(alphabet: FreeAlphabet) -> Result<()> {
    if alphabet.rank() > MAX_RANK {
        Err(Error::RankTooLarge(alphabet.rank()))
    } else {
        Ok(())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// All `2^k k!` Type I automorphisms (identity first) followed by every
/// non-identity Type II automorphism.
pub fn whitehead_autos(alphabet: FreeAlphabet) -> Result<Vec<WhiteheadAuto>> {
    check_rank(alphabet)?;
    let k = alphabet.rank();
    let mut autos = Vec::new();
    for permutation in permutations(k) {
        for mask in 0..1usize << k {
            autos.push(WhiteheadAuto::TypeI { permutation: permutation.clone(), inverted: (0..k).map(|i| mask >> i & 1 == 1).collect() });
        }
    }
    for multiplier in alphabet.letters() {
        let others: Vec<usize> = (0..k).filter(|&i| i != multiplier.generator()).collect();
        for choice in 1..4usize.pow(others.len() as u32) {
            let mut actions = vec![Multiply::Fixed; k];
            let mut c = choice;
            for &i in &others {
                actions[i] = MULTIPLY[c % 4];
                c /= 4;
            }
            autos.push(WhiteheadAuto::TypeII { multiplier, actions });
        }
    }
    Ok(autos)
}

/// Cyclically reduced orbit members of `base` with length at most
/// `length_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSet {
    pub base: ReducedWord,
    pub length_bound: usize,
    pub elements: BTreeSet<ReducedWord>,
}

impl OrbitSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &ReducedWord) -> bool {
        self.elements.contains(w)
    }

    pub fn min_length(&self) -> usize {
        self.elements.iter().map(ReducedWord::len).min().unwrap_or(0)
    }

    /// Number of members of each length `0..=length_bound`.
    pub fn counts_by_length(&self) -> CountTable {
        let mut counts = vec![BigUint::from(0u32); self.length_bound + 1];
        for w in &self.elements {
            counts[w.len()] += 1u32;
        }
        CountTable::new(counts)
    }
}

pub fn orbit_bfs(g: &ReducedWord, bound: usize, alphabet: FreeAlphabet) -> Result<OrbitSet> {
    let autos = whitehead_autos(alphabet)?;
    let start = cyclic_core(g);
    if start.len() > bound {
        return Err(Error::BoundTooSmall { bound, length: start.len() });
    }
    let mut elements = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let images: BTreeSet<ReducedWord> = frontier
            .par_iter()
            .flat_map_iter(|w| autos.iter().map(move |a| cyclic_core(&a.apply(w))))
            .filter(|w| w.len() <= bound)
            .collect();
        frontier = images.into_iter().filter(|w| elements.insert(w.clone())).collect();
    }
    Ok(OrbitSet { base: g.clone(), length_bound: bound, elements })
}

/// Whether `w` belongs to some basis.
///
/// Descends greedily along length-reducing Whitehead moves on the cyclic
/// core. At a plateau the words of equal length reachable by
/// length-preserving moves are searched for a further reduction; if none
/// exists the word is minimal in its orbit and primitive exactly when that
/// minimum is 1.
pub fn is_primitive(w: &ReducedWord, alphabet: FreeAlphabet) -> Result<bool> {
    let autos = whitehead_autos(alphabet)?;
    let mut current = cyclic_core(w);
    if current.is_empty() {
        return Ok(false);
    }
    'descent: loop {
        if current.len() == 1 {
            return Ok(true);
        }
        let length = current.len();
        let mut plateau = BTreeSet::from([current.clone()]);
        let mut frontier = vec![current.clone()];
        while let Some(u) = frontier.pop() {
            for a in &autos {
                let image = cyclic_core(&a.apply(&u));
                if image.len() < length {
                    current = image;
                    continue 'descent;
                }
                if image.len() == length && plateau.insert(image.clone()) {
                    frontier.push(image);
                }
            }
        }
        return Ok(false);
    }
}

/// True when `s` occurs (cyclically) in no cyclically reduced orbit member
/// of `g` of length at most `bound`.
pub fn check_blocking(s: &ReducedWord, g: &ReducedWord, bound: usize, alphabet: FreeAlphabet) -> Result<bool> {
    let orbit = orbit_bfs(g, bound, alphabet)?;
    Ok(!orbit.elements.iter().any(|w| w.contains_cyclic_factor(s.letters())))
}

/// Ball ratios `|S' ∩ B(n)| / |B(n)|` for `n = 0..=bound`, where `S'` is the
/// set of all reduced automorphic images of `g`: conjugates of the
/// cyclically reduced orbit members, counted exactly.
pub fn orbit_density_profile(g: &ReducedWord, bound: usize, alphabet: FreeAlphabet) -> Result<Vec<BigRational>> {
    let orbit = orbit_bfs(g, bound, alphabet)?;
    let closure = cycred_closure_counts(&orbit.counts_by_length(), alphabet, bound).exact.cumulative();
    Ok((0..=bound).map(|n| BigRational::new(BigInt::from(closure.get(n).clone()), BigInt::from(count_reduced_ball(alphabet, n)))).collect())
}
