//! Stallings graphs of finitely generated subgroups.
//!
//! A graph has one edge `(src, generator, dst)` per positive letter; reading
//! the inverse letter traverses the edge backwards. Vertex 0 is the
//! basepoint.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::words::{FreeAlphabet, Letter, ReducedWord};

/// Index of a subgroup: a vertex count or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupIndex {
    Finite(usize),
    Infinite,
}

impl fmt::Display for SubgroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupIndex::Finite(m) => write!(f, "{m}"),
            SubgroupIndex::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for SubgroupIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SubgroupIndex::Finite(m) => s.serialize_u64(*m as u64),
            SubgroupIndex::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SubgroupIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Finite(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Finite(m) => Ok(SubgroupIndex::Finite(m as usize)),
            Raw::Text(s) if s == "inf" => Ok(SubgroupIndex::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("invalid index '{s}'"))),
        }
    }
}

/// An oriented edge `(from, letter, to)`.
pub type Arc = (usize, Letter, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    alphabet: FreeAlphabet,
    vertex_count: usize,
    edges: Vec<(usize, usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; the smaller root survives.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (keep, drop) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.0[drop] = keep;
        true
    }
}

impl StallingsGraph {
    /// Folds the wedge of generator loops at the basepoint, then removes
    /// hanging trees away from the basepoint.
    pub fn fold_from_generators(generators: &[ReducedWord], alphabet: FreeAlphabet) -> Result<StallingsGraph> {
        let mut vertex_count = 1;
        let mut edges = Vec::new();
        for g in generators {
            if let Some(l) = g.letters().iter().find(|l| !alphabet.contains(**l)) {
                return Err(Error::InvalidInput(format!("letter {l} outside the rank-{} alphabet", alphabet.rank())));
            }
            if g.is_empty() {
                continue;
            }
            let letters = g.letters();
            let mut current = 0;
            for (i, &l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() {
                    0
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                if l.is_inverse() {
                    edges.push((next, l.generator(), current));
                } else {
                    edges.push((current, l.generator(), next));
                }
                current = next;
            }
        }
        let folded = fold(vertex_count, &edges, alphabet.rank());
        Ok(folded.core(alphabet))
    }

    pub fn alphabet(&self) -> FreeAlphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    /// Edges `(src, generator, dst)`, sorted.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// No vertex has two outgoing or two incoming edges with the same label.
    pub fn is_folded(&self) -> bool {
        let mut out = BTreeSet::new();
        let mut inc = BTreeSet::new();
        self.edges.iter().all(|&(s, g, d)| out.insert((s, g)) && inc.insert((d, g)))
    }

    /// Target of reading `letter` at `v`, if the edge exists.
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        let g = letter.generator();
        if letter.is_inverse() {
            self.edges.iter().find(|&&(_, eg, d)| eg == g && d == v).map(|&(s, _, _)| s)
        } else {
            self.edges.iter().find(|&&(s, eg, _)| eg == g && s == v).map(|&(_, _, d)| d)
        }
    }

    /// Whether `w` reads a closed path at the basepoint.
    pub fn membership(&self, w: &ReducedWord) -> bool {
        let mut v = 0;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(next) => v = next,
                None => return false,
            }
        }
        v == 0
    }

    /// Every vertex has an outgoing and an incoming edge for every generator.
    pub fn is_saturated(&self) -> bool {
        let k = self.alphabet.rank();
        let mut out = vec![vec![false; k]; self.vertex_count];
        let mut inc = vec![vec![false; k]; self.vertex_count];
        for &(s, g, d) in &self.edges {
            out[s][g] = true;
            inc[d][g] = true;
        }
        out.iter().chain(&inc).all(|row| row.iter().all(|&b| b))
    }

    pub fn index(&self) -> SubgroupIndex {
        if self.is_saturated() {
            SubgroupIndex::Finite(self.vertex_count)
        } else {
            SubgroupIndex::Infinite
        }
    }

    /// Two-colouring of the underlying undirected graph, if one exists.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.vertex_count];
        let adjacency = self.undirected_adjacency();
        for root in 0..self.vertex_count {
            if colour[root] != u8::MAX {
                continue;
            }
            colour[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &u in &adjacency[v] {
                    if colour[u] == u8::MAX {
                        colour[u] = 1 - colour[v];
                        queue.push_back(u);
                    } else if colour[u] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// Period of the non-backtracking walk: 2 when bipartite, else 1.
    pub fn walk_period(&self) -> Result<usize> {
        if !self.is_saturated() {
            return Err(Error::InfiniteIndex);
        }
        Ok(if self.is_bipartite() { 2 } else { 1 })
    }

    fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.vertex_count];
        for &(s, _, d) in &self.edges {
            adjacency[s].push(d);
            adjacency[d].push(s);
        }
        adjacency
    }

    /// Directed edges (each edge in both orientations) as `(from, letter, to)`,
    /// and the non-backtracking successor relation between them.
    pub fn nonbacktracking_graph(&self) -> (Vec<Arc>, Vec<Vec<usize>>) {
        let mut arcs = Vec::with_capacity(2 * self.edges.len());
        for &(s, g, d) in &self.edges {
            arcs.push((s, Letter::positive(g), d));
            arcs.push((d, Letter::negative(g), s));
        }
        let successors = arcs
            .iter()
            .map(|&(_, l, to)| {
                arcs.iter().enumerate().filter(|&(_, &(from, m, _))| from == to && m != l.inverse()).map(|(j, _)| j).collect()
            })
            .collect();
        (arcs, successors)
    }

    /// Whether the non-backtracking arc graph is strongly connected.
    pub fn nonbacktracking_strongly_connected(&self) -> bool {
        let (arcs, succ) = self.nonbacktracking_graph();
        if arcs.is_empty() {
            return true;
        }
        let mut pred = vec![Vec::new(); arcs.len()];
        for (i, s) in succ.iter().enumerate() {
            for &j in s {
                pred[j].push(i);
            }
        }
        let reaches_all = |adj: &[Vec<usize>]| {
            let mut seen = vec![false; adj.len()];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(i) = stack.pop() {
                for &j in &adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        reaches_all(&succ) && reaches_all(&pred)
    }

    /// gcd of cycle lengths in the non-backtracking arc graph, from BFS
    /// levels. Meaningful when the arc graph is strongly connected.
    pub fn nonbacktracking_period(&self) -> usize {
        let (arcs, succ) = self.nonbacktracking_graph();
        if arcs.is_empty() {
            return 0;
        }
        let mut level = vec![usize::MAX; arcs.len()];
        level[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for &j in &succ[i] {
                if level[j] == usize::MAX {
                    level[j] = level[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        let gcd = |mut a: usize, mut b: usize| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let mut period = 0;
        for (i, s) in succ.iter().enumerate() {
            if level[i] == usize::MAX {
                continue;
            }
            for &j in s {
                if level[j] != usize::MAX {
                    period = gcd(period, (level[i] + 1).abs_diff(level[j]));
                }
            }
        }
        period
    }

    /// Deterministic automaton reading the graph from the basepoint with the
    /// basepoint as the only final state. Its language contains unreduced
    /// words too; intersect with `Red(X)` for the subgroup's reduced language.
    pub fn to_automaton(&self) -> Automaton {
        let mut a = Automaton::new(self.alphabet, self.vertex_count);
        a.add_initial(0);
        a.set_final(0, true);
        for &(s, g, d) in &self.edges {
            a.add_transition(s, Letter::positive(g), d);
            a.add_transition(d, Letter::negative(g), s);
        }
        a
    }

    /// Iteratively deletes non-basepoint vertices of degree at most one,
    /// then renumbers breadth-first from the basepoint.
    fn core(&self, alphabet: FreeAlphabet) -> StallingsGraph {
        let mut alive = vec![true; self.vertex_count];
        let mut edges = self.edges.clone();
        loop {
            let mut degree = vec![0usize; self.vertex_count];
            for &(s, _, d) in &edges {
                degree[s] += 1;
                degree[d] += 1;
            }
            let doomed: Vec<usize> = (1..self.vertex_count).filter(|&v| alive[v] && degree[v] <= 1).collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
            edges.retain(|&(s, _, d)| alive[s] && alive[d]);
        }
        let pruned = StallingsGraph { alphabet, vertex_count: self.vertex_count, edges };
        pruned.renumber()
    }

    fn renumber(&self) -> StallingsGraph {
        let adjacency = {
            let mut adj = vec![Vec::new(); self.vertex_count];
            for &(s, g, d) in &self.edges {
                adj[s].push((2 * g, d));
                adj[d].push((2 * g + 1, s));
            }
            for list in &mut adj {
                list.sort();
            }
            adj
        };
        let mut order = vec![usize::MAX; self.vertex_count];
        order[0] = 0;
        let mut next = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &(_, u) in &adjacency[v] {
                if order[u] == usize::MAX {
                    order[u] = next;
                    next += 1;
                    queue.push_back(u);
                }
            }
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(s, _, d)| order[s] != usize::MAX && order[d] != usize::MAX)
            .map(|&(s, g, d)| (order[s], g, order[d]))
            .collect();
        edges.sort();
        edges.dedup();
        StallingsGraph { alphabet: self.alphabet, vertex_count: next, edges }
    }
}

/// Identifies vertices until no vertex has two equally labelled outgoing or
/// incoming edges.
fn fold(vertex_count: usize, edges: &[(usize, usize, usize)], rank: usize) -> StallingsGraph {
    let mut uf = UnionFind((0..vertex_count).collect());
    loop {
        let mut merged = false;
        let mut out = vec![vec![None; rank]; vertex_count];
        let mut inc = vec![vec![None; rank]; vertex_count];
        for &(s, g, d) in edges {
            let (s, d) = (uf.find(s), uf.find(d));
            match out[s][g] {
                None => out[s][g] = Some(d),
                Some(other) => merged |= uf.union(other, d),
            }
            let (s, d) = (uf.find(s), uf.find(d));
            match inc[d][g] {
                None => inc[d][g] = Some(s),
                Some(other) => merged |= uf.union(other, s),
            }
        }
        if !merged {
            break;
        }
    }
    let mut folded: Vec<_> = edges.iter().map(|&(s, g, d)| (uf.find(s), g, uf.find(d))).collect();
    folded.sort();
    folded.dedup();
    StallingsGraph { alphabet: FreeAlphabet::new(rank).expect("rank validated by caller"), vertex_count, edges: folded }
}
