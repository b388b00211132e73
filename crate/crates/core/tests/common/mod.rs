//! Independent oracles shared by the integration tests. Nothing here calls
//! the automata code; languages are enumerated directly.
#![allow(dead_code)]

use std::collections::BTreeSet;

use freedense::rational_expr::RationalExpr;
use freedense::words::{FreeAlphabet, Letter, ReducedWord};
use proptest::prelude::*;

pub fn f(k: usize) -> FreeAlphabet {
    FreeAlphabet::new(k).unwrap()
}

pub fn rw(s: &str, k: usize) -> ReducedWord {
    ReducedWord::parse(s, f(k)).unwrap()
}

/// Every word (reduced or not) of length exactly `n`.
pub fn all_words(alphabet: FreeAlphabet, n: usize) -> Vec<Vec<Letter>> {
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                alphabet.letters().map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    layer
}

pub fn all_words_up_to(alphabet: FreeAlphabet, n: usize) -> Vec<Vec<Letter>> {
    (0..=n).flat_map(|i| all_words(alphabet, i)).collect()
}

/// Stack-based reduction, written independently of the library.
pub fn reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in letters {
        if out.last().is_some_and(|&p| p.code() ^ 1 == l.code()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn no_cancellation(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0].code() ^ 1 != w[1].code())
}

/// Words of the expression's language with length at most `max_len`,
/// obtained by expanding the syntax tree.
pub fn expand(e: &RationalExpr, max_len: usize) -> BTreeSet<Vec<Letter>> {
    match e {
        RationalExpr::EmptySet => BTreeSet::new(),
        RationalExpr::Epsilon => BTreeSet::from([Vec::new()]),
        RationalExpr::Letter(l) => BTreeSet::from([vec![*l]]),
        RationalExpr::Union(parts) => parts.iter().flat_map(|p| expand(p, max_len)).collect(),
        RationalExpr::Concat(parts) => {
            let mut acc = BTreeSet::from([Vec::new()]);
            for p in parts {
                acc = product(&acc, &expand(p, max_len), max_len);
            }
            acc
        }
        RationalExpr::Star(inner) => {
            let base = expand(inner, max_len);
            let mut acc = BTreeSet::from([Vec::new()]);
            loop {
                let next: BTreeSet<_> = acc.union(&product(&acc, &base, max_len)).cloned().collect();
                if next.len() == acc.len() {
                    return acc;
                }
                acc = next;
            }
        }
    }
}

fn product(a: &BTreeSet<Vec<Letter>>, b: &BTreeSet<Vec<Letter>>, max_len: usize) -> BTreeSet<Vec<Letter>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            if x.len() + y.len() <= max_len {
                let mut w = x.clone();
                w.extend_from_slice(y);
                out.insert(w);
            }
        }
    }
    out
}

pub fn star_height(e: &RationalExpr) -> usize {
    match e {
        RationalExpr::Star(inner) => 1 + star_height(inner),
        RationalExpr::Concat(p) | RationalExpr::Union(p) => p.iter().map(star_height).max().unwrap_or(0),
        _ => 0,
    }
}

pub fn letter_strategy(k: usize) -> impl Strategy<Value = Letter> {
    (0..2 * k).prop_map(Letter::from_code)
}

pub fn expr_strategy(k: usize) -> impl Strategy<Value = RationalExpr> {
    let leaf = prop_oneof![
        1 => Just(RationalExpr::Epsilon),
        1 => Just(RationalExpr::EmptySet),
        8 => letter_strategy(k).prop_map(RationalExpr::Letter),
    ];
    leaf.prop_recursive(4, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(RationalExpr::Concat),
            prop::collection::vec(inner.clone(), 2..4).prop_map(RationalExpr::Union),
            inner.prop_map(|e| RationalExpr::Star(Box::new(e))),
        ]
    })
}

/// Uniform-ish reduced word of length at most `max_len`.
pub fn reduced_strategy(k: usize, max_len: usize) -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec(letter_strategy(k), 0..=max_len).prop_map(|letters| ReducedWord::from_letters(reduce(&letters)).unwrap())
}

pub fn reduced_exact_strategy(k: usize, len: usize) -> impl Strategy<Value = ReducedWord> {
    (0..2 * k, prop::collection::vec(0..2 * k - 1, len.saturating_sub(1))).prop_map(move |(first, rest)| {
        if len == 0 {
            return ReducedWord::empty();
        }
        let mut letters = vec![Letter::from_code(first)];
        for c in rest {
            let forbidden = letters.last().unwrap().code() ^ 1;
            letters.push(Letter::from_code(if c >= forbidden { c + 1 } else { c }));
        }
        ReducedWord::from_letters(letters).unwrap()
    })
}
