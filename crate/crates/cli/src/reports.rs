//! Output records for the non-density subcommands, plus plain-text
//! rendering for every record the binary can print.

use std::fmt::Write as _;

use freedense::report::{Count, DensityReport, Kind, Ratio};
use serde::{Deserialize, Serialize};

/// Rounds to 9 significant digits so printed floats are stable.
pub fn sig9(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.8e}").parse().unwrap_or(x)
    } else {
        x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub rank: usize,
    pub input: String,
    pub counts: Vec<Count>,
    pub ball: Vec<Count>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automaton: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub alphabet: String,
    pub forbidden: Vec<String>,
    pub states: usize,
    pub edges: usize,
    pub irreducible: bool,
    pub entropy: f64,
    pub growth_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub alphabet: String,
    pub forbidden1: Vec<String>,
    pub forbidden2: Vec<String>,
    pub n_max: usize,
    pub ratios: Vec<Ratio>,
    pub final_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingVerdict {
    pub word: String,
    pub blocks: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub rank: usize,
    pub word: String,
    pub bound: usize,
    pub primitive: bool,
    pub orbit_size: usize,
    pub min_length: usize,
    pub counts_by_length: Vec<Count>,
    /// Exact counts per length of all conjugates of the orbit members.
    pub closure_counts: Vec<Count>,
    /// The looser count letting every conjugating letter take `2k - 1`
    /// values; never below `closure_counts`.
    pub closure_upper_bound: Vec<Count>,
    pub profile: Vec<Ratio>,
    pub blocking: Vec<BlockingVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonkeyReport {
    pub rank: usize,
    pub input: String,
    pub length: usize,
    pub trials: usize,
    pub seed: u64,
    pub hits: usize,
    pub estimate: f64,
    pub standard_error: f64,
    pub exact: Ratio,
    pub exact_value: f64,
    /// `|estimate - exact| / standard_error`; absent when the error is 0.
    pub deviation: Option<f64>,
}

pub trait Render {
    fn render(&self) -> String;
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn optional<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

impl Render for DensityReport {
    fn render(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            Kind::Zero => "zero",
            Kind::Positive => "positive",
        };
        let _ = writeln!(out, "kind        {kind}");
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness     {}", if w.is_empty() { "1" } else { w });
        }
        if let Some(cover) = &self.cover {
            let pairs: Vec<String> = cover.iter().map(|(a, b)| format!("({},{})", show(a), show(b))).collect();
            let _ = writeln!(out, "cover       {}", pairs.join(" "));
        }
        if let Some(index) = &self.index {
            let _ = writeln!(out, "index       {index}");
        }
        if let Some(c) = self.converges {
            let _ = writeln!(out, "converges   {c}");
        }
        for (name, value) in [
            ("sphere_sup", &self.sphere_sup),
            ("sphere_inf", &self.sphere_inf),
            ("ball_sup", &self.ball_sup),
            ("ball_inf", &self.ball_inf),
            ("average", &self.average),
            ("weak", &self.weak),
        ] {
            if value.is_some() {
                let _ = writeln!(out, "{name:<11} {}", optional(value));
            }
        }
        if let Some(t) = &self.tails {
            let _ = writeln!(out, "sphere_tail {}", optional(&t.sphere_tail));
            let _ = writeln!(out, "ball_tail   {}", optional(&t.ball_tail));
        }
        let s = &self.sequences;
        let _ = writeln!(out, "{:>4} {:>24} {:>24} {:>14} {:>14}", "n", "count", "reference", "sphere", "ball");
        for n in 0..=s.n_max {
            let ratio = |r: &Option<Ratio>| r.as_ref().map_or("-".to_string(), |r| format!("{:.9}", freedense::density::to_f64(&r.0)));
            let _ = writeln!(
                out,
                "{n:>4} {:>24} {:>24} {:>14} {:>14}",
                s.counts[n].0,
                s.reference_counts[n].0,
                ratio(&s.sphere_ratio[n]),
                ratio(&s.ball_ratio[n])
            );
        }
        out
    }
}

fn show(w: &str) -> &str {
    if w.is_empty() {
        "1"
    } else {
        w
    }
}

impl Render for CountReport {
    fn render(&self) -> String {
        let mut out = format!("input {}\n{:>4} {:>24} {:>24}\n", self.input, "n", "sphere", "ball");
        for (n, (c, b)) in self.counts.iter().zip(&self.ball).enumerate() {
            let _ = writeln!(out, "{n:>4} {:>24} {:>24}", c.0, b.0);
        }
        if let Some(a) = &self.automaton {
            out.push_str(a);
        }
        out
    }
}

impl Render for EntropyReport {
    fn render(&self) -> String {
        format!(
            "alphabet    {}\nforbidden   {}\nstates      {}\nedges       {}\nirreducible {}\nentropy     {}\ngrowth_rate {}\n",
            self.alphabet,
            self.forbidden.join(","),
            self.states,
            self.edges,
            self.irreducible,
            self.entropy,
            self.growth_rate
        )
    }
}

impl Render for DecayReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for (n, r) in self.ratios.iter().enumerate() {
            let _ = writeln!(out, "{n:>4} {:>14.9} {}", freedense::density::to_f64(&r.0), r);
        }
        out
    }
}

impl Render for OrbitReport {
    fn render(&self) -> String {
        let mut out = format!(
            "word        {}\nprimitive   {}\norbit_size  {}\nmin_length  {}\ncounts      {}\n",
            self.word,
            self.primitive,
            self.orbit_size,
            self.min_length,
            join(&self.counts_by_length.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
        );
        for v in &self.blocking {
            let _ = writeln!(out, "blocks {:<5} {}", v.word, v.blocks);
        }
        for (n, r) in self.profile.iter().enumerate() {
            let _ = writeln!(out, "{n:>4} {:>14.9}", freedense::density::to_f64(&r.0));
        }
        out
    }
}

impl Render for MonkeyReport {
    fn render(&self) -> String {
        format!(
            "length      {}\ntrials      {}\nseed        {}\nhits        {}\nestimate    {}\nstd_error   {}\nexact       {} ({})\ndeviation   {}\n",
            self.length,
            self.trials,
            self.seed,
            self.hits,
            self.estimate,
            self.standard_error,
            self.exact,
            self.exact_value,
            optional(&self.deviation)
        )
    }
}
