//! Reduced-word languages of rational subsets.
//!
//! Saturating an automaton with ε-moves for every `ℓ ε* ℓ⁻¹` path makes its
//! language closed under free reduction, so intersecting with `Red(X)`
//! yields exactly the reduced representatives of the rational subset.

use crate::automata::{reduced_word_automaton, Automaton};
use crate::error::Result;
use crate::words::{FreeAlphabet, ReducedWord};

/// Adds ε-moves `p → q` whenever `p -ℓ-> r`, `r -ε*-> s` and `s -ℓ⁻¹-> q`,
/// until no new move appears.
pub fn benois_saturate(a: &Automaton) -> Automaton {
    let mut out = a.clone();
    let n = out.state_count();
    loop {
        let closures: Vec<Vec<usize>> = (0..n).map(|q| out.epsilon_closure(&[q])).collect();
        let mut added = Vec::new();
        for p in 0..n {
            for &(letter, r) in out.successors(p) {
                for &s in &closures[r] {
                    for &(back, q) in out.successors(s) {
                        if back == letter.inverse() && closures[p].binary_search(&q).is_err() {
                            added.push((p, q));
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            return out;
        }
        for (p, q) in added {
            out.add_epsilon(p, q);
        }
    }
}

/// Minimal trim DFA accepting the reduced words of the elements of `L(a)π`.
pub fn reduced_language(a: &Automaton) -> Result<Automaton> {
    let saturated = benois_saturate(a);
    let red = reduced_word_automaton(a.alphabet());
    saturated.intersect(&red)?.minimize()
}

/// Whether the group element `g` lies in the rational subset `L(a)π`.
pub fn subset_membership(a: &Automaton, g: &ReducedWord) -> Result<bool> {
    Ok(reduced_language(a)?.accepts(g.letters()))
}

/// Reduced language of the subgroup generated by `generators`, via its flower
/// automaton `(g₁ | g₁⁻¹ | … )*`.
pub fn flower_automaton(alphabet: FreeAlphabet, generators: &[ReducedWord]) -> Automaton {
    let mut a = Automaton::new(alphabet, 1);
    a.add_initial(0);
    a.set_final(0, true);
    for g in generators {
        for word in [g.clone(), g.inverse()] {
            if word.is_empty() {
                continue;
            }
            let mut q = 0;
            let letters = word.letters();
            for (i, &l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() { 0 } else { a.add_state() };
                a.add_transition(q, l, next);
                q = next;
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_expr::{compile_to_nfa, parse_expr};
    use crate::words::{free_reduce, reduced_words_up_to, Word};
    use std::collections::BTreeSet;

    fn f2() -> FreeAlphabet {
        FreeAlphabet::new(2).unwrap()
    }

    fn expr(s: &str) -> Automaton {
        compile_to_nfa(&parse_expr(s, f2()).unwrap(), f2())
    }

    fn rw(s: &str) -> ReducedWord {
        ReducedWord::parse(s, f2()).unwrap()
    }

    #[test]
    fn cancellation_reaches_identity() {
        let sat = benois_saturate(&expr("aA"));
        assert!(sat.accepts(&[]));
        let lang = reduced_language(&expr("aA")).unwrap();
        let accepted: Vec<_> = reduced_words_up_to(f2(), 4).into_iter().filter(|w| lang.accepts(w.letters())).collect();
        assert_eq!(accepted, vec![ReducedWord::empty()]);

        let lang = reduced_language(&expr("(aA)*")).unwrap();
        assert!(lang.accepts(&[]));
        assert_eq!(lang.count_words(6).iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "0", "0", "0", "0", "0", "0"]);
    }

    #[test]
    fn cyclic_words_are_already_reduced() {
        let lang = reduced_language(&expr("(ab)*")).unwrap();
        for w in reduced_words_up_to(f2(), 6) {
            let s = w.to_string();
            let expected = s.len() % 2 == 0 && s.as_bytes().chunks(2).all(|c| c == b"ab");
            assert_eq!(lang.accepts(w.letters()), expected, "{s}");
        }
    }

    /// Reduced forms of all products of at most `depth` generators or inverses.
    fn products(generators: &[&str], depth: usize) -> BTreeSet<ReducedWord> {
        let mut factors: Vec<ReducedWord> = generators.iter().map(|g| rw(g)).collect();
        factors.extend(factors.clone().iter().map(ReducedWord::inverse));
        let mut all = BTreeSet::from([ReducedWord::empty()]);
        let mut layer = vec![ReducedWord::empty()];
        for _ in 0..depth {
            layer = layer.iter().flat_map(|w| factors.iter().map(move |f| w.mul(f))).collect();
            all.extend(layer.iter().cloned());
        }
        all
    }

    #[test]
    fn flower_matches_product_oracle() {
        let gens = ["aa", "b", "abA"];
        let flower = flower_automaton(f2(), &gens.map(rw));
        let lang = reduced_language(&flower).unwrap();
        // every reduced word of length <= 6 in the subgroup is a product of at most 6 factors here
        let oracle = products(&gens, 6);
        for w in reduced_words_up_to(f2(), 6) {
            assert_eq!(lang.accepts(w.letters()), oracle.contains(&w), "{w}");
            let a_sum: i32 = w.letters().iter().filter(|l| l.generator() == 0).map(|l| l.sign() as i32).sum();
            assert_eq!(lang.accepts(w.letters()), a_sum % 2 == 0, "{w}");
        }
        // saturation adds nothing outside the subgroup
        let short = products(&gens, 4);
        let sat = benois_saturate(&flower);
        for w in reduced_words_up_to(f2(), 4) {
            if sat.accepts(w.letters()) {
                assert!(oracle.contains(&w));
            }
            if short.contains(&w) {
                assert!(sat.accepts(w.letters()));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let flower = flower_automaton(f2(), &[rw("aa"), rw("b")]);
        assert!(!subset_membership(&flower, &rw("aba")).unwrap());
        assert!(subset_membership(&flower, &rw("aab")).unwrap());
        assert!(subset_membership(&flower, &ReducedWord::empty()).unwrap());
        assert!(subset_membership(&expr("aA"), &ReducedWord::empty()).unwrap());
    }

    #[test]
    fn reduced_language_is_idempotent() {
        for s in ["(aa|b)*", "a(a|b|B)*", "(aA|bB|ab)*B", "(aB)*(bA)*"] {
            let once = reduced_language(&expr(s)).unwrap();
            let twice = reduced_language(&once).unwrap();
            assert_eq!(once, twice, "{s}");
            // direct oracle on short formal words
            let nfa = expr(s);
            let mut oracle = BTreeSet::new();
            let mut layer = vec![Vec::new()];
            for _ in 0..8 {
                layer = layer
                    .iter()
                    .flat_map(|w: &Vec<_>| {
                        f2().letters().map(move |l| {
                            let mut v = w.clone();
                            v.push(l);
                            v
                        })
                    })
                    .filter(|w| !nfa.read(nfa.initial_states(), w).is_empty())
                    .collect();
                for w in &layer {
                    if nfa.accepts(w) {
                        oracle.insert(free_reduce(&Word::new(w.clone())));
                    }
                }
            }
            if nfa.accepts(&[]) {
                oracle.insert(ReducedWord::empty());
            }
            for w in &oracle {
                if w.len() <= 3 {
                    assert!(once.accepts(w.letters()), "{s}: {w}");
                }
            }
        }
    }
}
