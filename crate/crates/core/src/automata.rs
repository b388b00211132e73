//! Finite automata over the involutive alphabet `Σ = X ∪ X⁻¹`.
//!
//! Automata are partial: a missing transition simply means no path. Every
//! operation returns a new value; nothing is mutated after construction
//! except through the builder methods.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::words::{FreeAlphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: FreeAlphabet,
    transitions: Vec<Vec<(Letter, usize)>>,
    epsilon: Vec<Vec<usize>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
}

impl Automaton {
    /// An automaton with `states` states and no transitions, initial or final states.
    pub fn new(alphabet: FreeAlphabet, states: usize) -> Automaton {
        Automaton {
            alphabet,
            transitions: vec![Vec::new(); states],
            epsilon: vec![Vec::new(); states],
            initial: Vec::new(),
            finals: vec![false; states],
        }
    }

    /// Accepts exactly the listed words (a trie).
    pub fn from_words<'a>(alphabet: FreeAlphabet, words: impl IntoIterator<Item = &'a [Letter]>) -> Automaton {
        let mut a = Automaton::new(alphabet, 1);
        a.add_initial(0);
        for word in words {
            let mut q = 0;
            for &l in word {
                q = match a.delta(q, l) {
                    Some(next) => next,
                    None => {
                        let next = a.add_state();
                        a.add_transition(q, l, next);
                        next
                    }
                };
            }
            a.set_final(q, true);
        }
        a
    }

    /// Accepts every word of `Σ*`, reduced or not.
    pub fn universal(alphabet: FreeAlphabet) -> Automaton {
        let mut a = Automaton::new(alphabet, 1);
        a.add_initial(0);
        a.set_final(0, true);
        for l in alphabet.letters() {
            a.add_transition(0, l, 0);
        }
        a
    }

    pub fn add_state(&mut self) -> usize {
        self.transitions.push(Vec::new());
        self.epsilon.push(Vec::new());
        self.finals.push(false);
        self.finals.len() - 1
    }

    pub fn add_transition(&mut self, src: usize, letter: Letter, dst: usize) {
        assert!(src < self.state_count() && dst < self.state_count(), "state out of range");
        assert!(self.alphabet.contains(letter), "letter {letter} outside the alphabet");
        let out = &mut self.transitions[src];
        if let Err(pos) = out.binary_search(&(letter, dst)) {
            out.insert(pos, (letter, dst));
        }
    }

    pub fn add_epsilon(&mut self, src: usize, dst: usize) {
        assert!(src < self.state_count() && dst < self.state_count(), "state out of range");
        let out = &mut self.epsilon[src];
        if let Err(pos) = out.binary_search(&dst) {
            out.insert(pos, dst);
        }
    }

    pub fn add_initial(&mut self, q: usize) {
        assert!(q < self.state_count(), "state out of range");
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
    }

    pub fn set_final(&mut self, q: usize, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn alphabet(&self) -> FreeAlphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial_states(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn final_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count()).filter(|&q| self.finals[q])
    }

    /// Outgoing letter transitions of `q`, sorted by letter then target.
    pub fn successors(&self, q: usize) -> &[(Letter, usize)] {
        &self.transitions[q]
    }

    pub fn epsilon_successors(&self, q: usize) -> &[usize] {
        &self.epsilon[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(src, out)| out.iter().map(move |&(l, dst)| (src, l, dst)))
    }

    pub fn epsilon_transitions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.epsilon.iter().enumerate().flat_map(|(src, out)| out.iter().map(move |&dst| (src, dst)))
    }

    /// At most one initial state, no ε-moves, at most one transition per
    /// (state, letter). The empty automaton counts as deterministic.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self.epsilon.iter().all(Vec::is_empty)
            && self.transitions.iter().all(|out| out.windows(2).all(|p| p[0].0 != p[1].0))
    }

    /// First successor of `q` on `letter`; the only one when deterministic.
    pub fn delta(&self, q: usize, letter: Letter) -> Option<usize> {
        let out = &self.transitions[q];
        let pos = out.partition_point(|&(l, _)| l < letter);
        out.get(pos).filter(|&&(l, _)| l == letter).map(|&(_, dst)| dst)
    }

    fn close(&self, set: &mut [bool]) {
        let mut stack: Vec<usize> = (0..set.len()).filter(|&q| set[q]).collect();
        while let Some(q) = stack.pop() {
            for &r in &self.epsilon[q] {
                if !set[r] {
                    set[r] = true;
                    stack.push(r);
                }
            }
        }
    }

    /// ε-closure of `states`, as a sorted list.
    pub fn epsilon_closure(&self, states: &[usize]) -> Vec<usize> {
        let mut set = vec![false; self.state_count()];
        for &q in states {
            set[q] = true;
        }
        self.close(&mut set);
        (0..set.len()).filter(|&q| set[q]).collect()
    }

    fn step(&self, states: &[usize], letter: Letter) -> Vec<usize> {
        let mut set = vec![false; self.state_count()];
        for &q in states {
            for &(l, r) in &self.transitions[q] {
                if l == letter {
                    set[r] = true;
                }
            }
        }
        self.close(&mut set);
        (0..set.len()).filter(|&q| set[q]).collect()
    }

    /// States reachable from `from` by reading `word` (ε-moves included).
    pub fn read(&self, from: &[usize], word: &[Letter]) -> Vec<usize> {
        let mut current = self.epsilon_closure(from);
        for &l in word {
            if current.is_empty() {
                break;
            }
            current = self.step(&current, l);
        }
        current
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        if self.is_deterministic() {
            return self.run(word).is_some_and(|q| self.finals[q]);
        }
        self.read(&self.initial, word).into_iter().any(|q| self.finals[q])
    }

    /// State reached by reading `word` in a deterministic automaton.
    pub fn run(&self, word: &[Letter]) -> Option<usize> {
        let mut q = *self.initial.first()?;
        for &l in word {
            q = self.delta(q, l)?;
        }
        Some(q)
    }

    /// Subset construction; only reachable non-empty subsets are built.
    pub fn determinize(&self) -> Automaton {
        let mut out = Automaton::new(self.alphabet, 0);
        let start = self.epsilon_closure(&self.initial);
        if start.is_empty() {
            return out;
        }
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let s = out.add_state();
        out.add_initial(s);
        out.set_final(s, start.iter().any(|&q| self.finals[q]));
        index.insert(start.clone(), s);
        queue.push_back(start);
        while let Some(subset) = queue.pop_front() {
            let src = index[&subset];
            for l in self.alphabet.letters() {
                let next = self.step(&subset, l);
                if next.is_empty() {
                    continue;
                }
                let dst = match index.get(&next) {
                    Some(&d) => d,
                    None => {
                        let d = out.add_state();
                        out.set_final(d, next.iter().any(|&q| self.finals[q]));
                        index.insert(next.clone(), d);
                        queue.push_back(next);
                        d
                    }
                };
                out.add_transition(src, l, dst);
            }
        }
        out
    }

    fn deterministic(&self) -> std::borrow::Cow<'_, Automaton> {
        if self.is_deterministic() {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.determinize())
        }
    }

    fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            let letters = self.transitions[q].iter().map(|&(_, r)| r);
            for r in letters.chain(self.epsilon[q].iter().copied()) {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    fn coaccessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut reverse = vec![Vec::new(); n];
        for (src, _, dst) in self.transitions() {
            reverse[dst].push(src);
        }
        for (src, dst) in self.epsilon_transitions() {
            reverse[dst].push(src);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = self.final_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut map = vec![usize::MAX; self.state_count()];
        let mut out = Automaton::new(self.alphabet, 0);
        for q in 0..self.state_count() {
            if keep[q] {
                map[q] = out.add_state();
                out.set_final(map[q], self.finals[q]);
            }
        }
        for (src, l, dst) in self.transitions() {
            if keep[src] && keep[dst] {
                out.add_transition(map[src], l, map[dst]);
            }
        }
        for (src, dst) in self.epsilon_transitions() {
            if keep[src] && keep[dst] {
                out.add_epsilon(map[src], map[dst]);
            }
        }
        for &q in &self.initial {
            if keep[q] {
                out.add_initial(map[q]);
            }
        }
        out
    }

    /// Keeps only states that are both accessible and co-accessible.
    pub fn trim(&self) -> Automaton {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        let keep: Vec<bool> = acc.iter().zip(&coacc).map(|(&a, &c)| a && c).collect();
        self.restrict(&keep)
    }

    /// Minimal partial DFA (trimmed, Moore refinement, states numbered in
    /// breadth-first order from the initial state).
    pub fn minimize(&self) -> Result<Automaton> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let trimmed = self.trim();
        let n = trimmed.state_count();
        if n == 0 {
            return Ok(trimmed);
        }
        let letters: Vec<Letter> = self.alphabet.letters().collect();
        let mut class: Vec<usize> = (0..n).map(|q| trimmed.finals[q] as usize).collect();
        let mut class_count = class.iter().collect::<HashSet<_>>().len();
        loop {
            let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(letters.len() + 1);
                sig.push(class[q]);
                for &l in &letters {
                    sig.push(trimmed.delta(q, l).map_or(usize::MAX, |r| class[r]));
                }
                let fresh = signatures.len();
                next[q] = *signatures.entry(sig).or_insert(fresh);
            }
            let count = signatures.len();
            class = next;
            if count == class_count {
                break;
            }
            class_count = count;
        }
        // renumber classes breadth-first from the initial class
        let start = class[trimmed.initial[0]];
        let mut order = vec![usize::MAX; class_count];
        let mut representative = vec![usize::MAX; class_count];
        for q in 0..n {
            if representative[class[q]] == usize::MAX {
                representative[class[q]] = q;
            }
        }
        let mut out = Automaton::new(self.alphabet, 0);
        let mut queue = VecDeque::from([start]);
        order[start] = out.add_state();
        out.add_initial(order[start]);
        while let Some(c) = queue.pop_front() {
            let q = representative[c];
            out.set_final(order[c], trimmed.finals[q]);
            for &l in &letters {
                if let Some(r) = trimmed.delta(q, l) {
                    let d = class[r];
                    if order[d] == usize::MAX {
                        order[d] = out.add_state();
                        queue.push_back(d);
                    }
                    out.add_transition(order[c], l, order[d]);
                }
            }
        }
        Ok(out)
    }

    fn check_alphabet(&self, other: &Automaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.rank(), right: other.alphabet.rank() });
        }
        Ok(())
    }

    /// Product of the determinized inputs. A side may drop out (become
    /// `None`) only when `keep_partial` allows it for that side.
    fn product(
        &self,
        other: &Automaton,
        keep_left_missing: bool,
        keep_right_missing: bool,
        accept: impl Fn(bool, bool) -> bool,
    ) -> Result<Automaton> {
        self.check_alphabet(other)?;
        let left = self.deterministic();
        let right = other.deterministic();
        let mut out = Automaton::new(self.alphabet, 0);
        let start = (left.initial.first().copied(), right.initial.first().copied());
        let admissible = |pair: &(Option<usize>, Option<usize>)| match pair {
            (None, None) => false,
            (None, Some(_)) => keep_left_missing,
            (Some(_), None) => keep_right_missing,
            (Some(_), Some(_)) => true,
        };
        if !admissible(&start) {
            return Ok(out);
        }
        let is_final =
            |(p, q): (Option<usize>, Option<usize>)| accept(p.is_some_and(|p| left.finals[p]), q.is_some_and(|q| right.finals[q]));
        let mut index = HashMap::new();
        let s = out.add_state();
        out.add_initial(s);
        out.set_final(s, is_final(start));
        index.insert(start, s);
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            let src = index[&pair];
            for l in self.alphabet.letters() {
                let next = (pair.0.and_then(|p| left.delta(p, l)), pair.1.and_then(|q| right.delta(q, l)));
                if !admissible(&next) {
                    continue;
                }
                let dst = *index.entry(next).or_insert_with(|| {
                    let d = out.add_state();
                    out.set_final(d, is_final(next));
                    queue.push_back(next);
                    d
                });
                out.add_transition(src, l, dst);
            }
        }
        Ok(out)
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, false, false, |a, b| a && b)
    }

    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, true, true, |a, b| a || b)
    }

    /// `L(self) ∖ L(removed)`.
    pub fn difference_within(&self, removed: &Automaton) -> Result<Automaton> {
        self.product(removed, false, true, |a, b| a && !b)
    }

    /// Accepts the factors (contiguous subwords) of the words of `L(self)`.
    pub fn factor_automaton(&self) -> Automaton {
        let mut out = self.trim();
        for q in 0..out.state_count() {
            out.add_initial(q);
            out.set_final(q, true);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        !self.accessible().iter().zip(&self.finals).any(|(&a, &f)| a && f)
    }

    /// Shortest accepted word; ties broken lexicographically by letter
    /// (generator index, then `+1` before `-1`).
    pub fn shortest_word(&self) -> Option<Word> {
        let dfa = self.deterministic();
        let &start = dfa.initial.first()?;
        dfa.shortest_path(start, |q| dfa.finals[q])
    }

    /// Shortlex-least word leading from `from` to a state satisfying `target`.
    /// Requires a deterministic automaton.
    pub(crate) fn shortest_path(&self, from: usize, target: impl Fn(usize) -> bool) -> Option<Word> {
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if target(q) {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, l)) = parent[cur] {
                    letters.push(l);
                    cur = p;
                }
                letters.reverse();
                return Some(Word::new(letters));
            }
            for &(l, r) in &self.transitions[q] {
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, l));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// `x⁻¹L = { y : xy ∈ L }`, as formal words.
    pub fn left_quotient(&self, x: &Word) -> Automaton {
        let mut out = self.clone();
        out.initial = self.read(&self.initial, x.letters());
        out
    }

    /// `Lx⁻¹ = { y : yx ∈ L }`, as formal words.
    pub fn right_quotient(&self, x: &Word) -> Automaton {
        let mut out = self.clone();
        for q in 0..self.state_count() {
            out.finals[q] = self.read(&[q], x.letters()).into_iter().any(|r| self.finals[r]);
        }
        out
    }

    /// Exact `|L ∩ Σⁿ|` for `n = 0..=n_max` by dynamic programming over the
    /// per-state path counts of the determinized, trimmed machine.
    pub fn count_words(&self, n_max: usize) -> CountTable {
        let dfa = self.deterministic().trim();
        let mut counts = Vec::with_capacity(n_max + 1);
        let n = dfa.state_count();
        let mut current = vec![BigUint::zero(); n];
        if let Some(&s) = dfa.initial.first() {
            current[s] = BigUint::from(1u32);
        }
        for len in 0..=n_max {
            let total = (0..n).filter(|&q| dfa.finals[q]).fold(BigUint::zero(), |acc, q| acc + &current[q]);
            counts.push(total);
            if len == n_max {
                break;
            }
            let mut next = vec![BigUint::zero(); n];
            for (src, _, dst) in dfa.transitions() {
                if !current[src].is_zero() {
                    next[dst] += &current[src];
                }
            }
            current = next;
        }
        CountTable { counts }
    }

    /// Line-oriented text dump: `states N`, `initial ..`, `final ..`, then one
    /// `src letter dst` line per transition (`1` for an ε-move).
    pub fn to_text(&self) -> String {
        let join = |it: &mut dyn Iterator<Item = usize>| it.map(|q| q.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        writeln!(out, "states {}", self.state_count()).unwrap();
        writeln!(out, "initial {}", join(&mut self.initial.iter().copied())).unwrap();
        writeln!(out, "final {}", join(&mut self.final_states())).unwrap();
        for (src, l, dst) in self.transitions() {
            writeln!(out, "{src} {l} {dst}").unwrap();
        }
        for (src, dst) in self.epsilon_transitions() {
            writeln!(out, "{src} 1 {dst}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str, alphabet: FreeAlphabet) -> Result<Automaton> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut header = |keyword: &str| -> Result<Vec<usize>> {
            let (no, line) = lines.next().ok_or_else(|| Error::parse(0, format!("missing '{keyword}' line")))?;
            let mut fields = line.split_whitespace();
            if fields.next() != Some(keyword) {
                return Err(Error::parse(no + 1, format!("expected '{keyword}'")));
            }
            fields.map(|f| f.parse().map_err(|_| Error::parse(no + 1, format!("bad state '{f}'")))).collect()
        };
        let states = header("states")?;
        let &[count] = states.as_slice() else {
            return Err(Error::parse(1, "expected a single state count"));
        };
        let initial = header("initial")?;
        let finals = header("final")?;
        let mut a = Automaton::new(alphabet, count);
        let in_range = |q: usize, no: usize| {
            if q < count {
                Ok(q)
            } else {
                Err(Error::parse(no, format!("state {q} out of range")))
            }
        };
        for q in initial {
            a.add_initial(in_range(q, 2)?);
        }
        for q in finals {
            a.set_final(in_range(q, 3)?, true);
        }
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::parse(no + 1, format!("malformed transition '{line}'"));
            let [src, letter, dst] = fields.as_slice() else {
                return Err(bad());
            };
            let src = in_range(src.parse().map_err(|_| bad())?, no + 1)?;
            let dst = in_range(dst.parse().map_err(|_| bad())?, no + 1)?;
            if *letter == "1" {
                a.add_epsilon(src, dst);
                continue;
            }
            let mut chars = letter.chars();
            let l = match (chars.next().and_then(Letter::from_char), chars.next()) {
                (Some(l), None) if alphabet.contains(l) => l,
                _ => return Err(bad()),
            };
            a.add_transition(src, l, dst);
        }
        Ok(a)
    }
}

/// Deterministic, trim acceptor of `Red(X)`: a start state plus one state
/// per last-read letter, every state final.
pub fn reduced_word_automaton(alphabet: FreeAlphabet) -> Automaton {
    let mut a = Automaton::new(alphabet, alphabet.size() + 1);
    a.add_initial(0);
    for q in 0..a.state_count() {
        a.set_final(q, true);
    }
    for l in alphabet.letters() {
        a.add_transition(0, l, 1 + l.code());
        for m in alphabet.letters() {
            if m != l.inverse() {
                a.add_transition(1 + l.code(), m, 1 + m.code());
            }
        }
    }
    a
}

/// Exact per-length word counts `entry[n] = |L ∩ Σⁿ|` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn new(counts: Vec<BigUint>) -> CountTable {
        CountTable { counts }
    }

    pub fn n_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigUint> {
        self.counts.iter()
    }

    /// Running sums: the ball counts `|L ∩ B(n)|`.
    pub fn cumulative(&self) -> CountTable {
        let mut acc = BigUint::zero();
        CountTable {
            counts: self
                .counts
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::count_reduced_sphere;

    fn f2() -> FreeAlphabet {
        FreeAlphabet::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, f2()).unwrap()
    }

    fn words(list: &[&str]) -> Automaton {
        let ws: Vec<Word> = list.iter().map(|s| w(s)).collect();
        Automaton::from_words(f2(), ws.iter().map(|w| w.letters()))
    }

    fn all_words(alphabet: FreeAlphabet, max_len: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<Letter>| {
                    alphabet.letters().map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn same_language(a: &Automaton, b: &Automaton, max_len: usize) -> bool {
        all_words(a.alphabet(), max_len).iter().all(|x| a.accepts(x) == b.accepts(x))
    }

    #[test]
    fn reduced_automaton_shape() {
        let red = reduced_word_automaton(f2());
        assert!(red.is_deterministic());
        assert_eq!(red.state_count(), 5);
        assert!(red.accepts(w("ab").letters()));
        assert!(!red.accepts(w("aA").letters()));
        assert_eq!(red.trim(), red);
        let f3 = FreeAlphabet::new(3).unwrap();
        assert_eq!(reduced_word_automaton(f3).count_words(2).get(2), &BigUint::from(30u32));
    }

    #[test]
    fn red_counts_match_formula() {
        let red = reduced_word_automaton(f2());
        let table = red.count_words(20);
        for n in 0..=20 {
            assert_eq!(table.get(n), &count_reduced_sphere(f2(), n));
        }
        let expected: Vec<BigUint> = [1u32, 4, 12, 36, 108].iter().map(|&c| BigUint::from(c)).collect();
        assert_eq!(&table.as_slice()[..5], expected.as_slice());
    }

    #[test]
    fn minimize_splits_all_final_chains() {
        // every state final, distinguished only by missing transitions
        let chain = words(&["", "b", "bb"]).determinize().minimize().unwrap();
        assert_eq!(chain.state_count(), 3);
        assert!(!chain.accepts(&[Letter::positive(1); 3]));
    }

    #[test]
    fn count_words_special_languages() {
        let empty = Automaton::new(f2(), 3);
        assert!(empty.count_words(5).iter().all(Zero::is_zero));
        // (ab)*
        let mut ab = Automaton::new(f2(), 2);
        ab.add_initial(0);
        ab.set_final(0, true);
        ab.add_transition(0, Letter::positive(0), 1);
        ab.add_transition(1, Letter::positive(1), 0);
        let table = ab.count_words(10);
        for n in 0..=10 {
            assert_eq!(table.get(n), &BigUint::from((n % 2 == 0) as u32));
        }
    }

    #[test]
    fn determinize_small_nfa() {
        // (a|b)a as an NFA with ε-moves
        let mut nfa = Automaton::new(f2(), 4);
        nfa.add_initial(0);
        nfa.add_transition(0, Letter::positive(0), 1);
        nfa.add_transition(0, Letter::positive(1), 1);
        nfa.add_epsilon(1, 2);
        nfa.add_transition(2, Letter::positive(0), 3);
        nfa.set_final(3, true);
        let dfa = nfa.determinize();
        assert!(dfa.is_deterministic());
        assert!(same_language(&dfa, &words(&["aa", "ba"]), 4));
        let red = reduced_word_automaton(f2());
        assert!(same_language(&red.determinize(), &red, 5));
    }

    #[test]
    fn minimize_examples() {
        let red = reduced_word_automaton(f2());
        let min = red.minimize().unwrap();
        assert_eq!(min.state_count(), 5);
        assert_eq!(min.minimize().unwrap(), min);

        let pair = words(&["aa", "ba"]).determinize();
        assert_eq!(pair.state_count(), 5);
        let min = pair.minimize().unwrap();
        // residuals: L, {a}, {ε}
        assert_eq!(min.state_count(), 3);
        assert!(same_language(&min, &pair, 4));

        let mut nfa = Automaton::new(f2(), 1);
        nfa.add_initial(0);
        nfa.add_epsilon(0, 0);
        assert_eq!(nfa.minimize(), Err(Error::NotDeterministic));
    }

    #[test]
    fn boolean_operations() {
        let red = reduced_word_automaton(f2());
        assert!(same_language(&red.intersect(&red).unwrap(), &red, 5));
        assert!(red.difference_within(&red).unwrap().is_empty());

        // words containing b
        let mut has_b = Automaton::new(f2(), 2);
        has_b.add_initial(0);
        has_b.set_final(1, true);
        for l in f2().letters() {
            has_b.add_transition(0, l, 0);
            has_b.add_transition(1, l, 1);
        }
        has_b.add_transition(0, Letter::positive(1), 1);
        let diff = red.difference_within(&has_b).unwrap();
        assert!(diff.accepts(w("aa").letters()));
        assert!(!diff.accepts(w("ab").letters()));
        for x in all_words(f2(), 4) {
            let expected = red.accepts(&x) && !x.contains(&Letter::positive(1));
            assert_eq!(diff.accepts(&x), expected);
        }

        let u = words(&["ab"]).union(&words(&["ba", "b"])).unwrap();
        assert!(same_language(&u, &words(&["ab", "ba", "b"]), 3));
        let f3 = FreeAlphabet::new(3).unwrap();
        assert_eq!(red.intersect(&reduced_word_automaton(f3)), Err(Error::AlphabetMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn trim_removes_trap() {
        assert_eq!(Automaton::new(f2(), 4).trim().state_count(), 0);
        let mut a = words(&["ab"]);
        let trap = a.add_state();
        a.add_transition(0, Letter::positive(1), trap);
        a.add_transition(trap, Letter::positive(0), trap);
        let t = a.trim();
        assert_eq!(t.state_count(), 3);
        assert!(same_language(&a, &t, 6));
    }

    #[test]
    fn factors_and_witnesses() {
        let f = words(&["ab"]).factor_automaton();
        for x in all_words(f2(), 3) {
            let s: String = x.iter().map(|l| l.to_char()).collect();
            assert_eq!(f.accepts(&x), ["", "a", "b", "ab"].contains(&s.as_str()), "{s}");
        }
        let empty = Automaton::new(f2(), 1);
        assert!(empty.is_empty());
        assert_eq!(empty.shortest_word(), None);
        let red = reduced_word_automaton(f2());
        assert!(!red.is_empty());
        assert_eq!(red.shortest_word(), Some(Word::empty()));

        let mut a_star = Automaton::new(f2(), 1);
        a_star.add_initial(0);
        a_star.set_final(0, true);
        a_star.add_transition(0, Letter::positive(0), 0);
        let rest = red.difference_within(&a_star.factor_automaton()).unwrap();
        assert_eq!(rest.shortest_word().unwrap().to_string(), "A");
        let mut a_both = a_star.clone();
        let q = a_both.add_state();
        a_both.add_initial(q);
        a_both.set_final(q, true);
        a_both.add_transition(q, Letter::negative(0), q);
        let rest = red.difference_within(&a_both.factor_automaton()).unwrap();
        assert_eq!(rest.shortest_word().unwrap().to_string(), "b");
    }

    #[test]
    fn quotients() {
        let l = words(&["ab"]);
        assert!(same_language(&l.left_quotient(&w("a")), &words(&["b"]), 3));
        assert!(same_language(&l.right_quotient(&w("b")), &words(&["a"]), 3));
        let red = reduced_word_automaton(f2());
        let q = red.left_quotient(&w("a"));
        for x in all_words(f2(), 4) {
            let expected = red.accepts(&x) && x.first() != Some(&Letter::negative(0));
            assert_eq!(q.accepts(&x), expected);
        }
    }

    #[test]
    fn text_round_trip() {
        let mut a = words(&["ab", "B"]);
        a.add_epsilon(0, 2);
        let text = a.to_text();
        assert!(text.starts_with("states 4\ninitial 0\nfinal 2 3\n"));
        assert_eq!(Automaton::from_text(&text, f2()).unwrap(), a);
        assert!(matches!(Automaton::from_text("states 2\ninitial 0\nfinal 1\n0 c 1\n", f2()), Err(Error::Parse { .. })));
    }
}
