//! Seeded batches of interval specs and the aggregate checks run over them.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sortable_core::divisor::{a_invariant_bound, divisor_report_with, verdict_of};
use sortable_core::vd::interval_shedding_order;
use sortable_core::{ConeDescription, ConjectureVerdict, Error, IntervalComplexSpec, IntervalPart, SupportForm};

use crate::report::{self, Report, Section};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Consecutive blocks covering `[1, n]`.
    Partition,
    /// Non-nested intervals, at least two of which share a vertex.
    Overlap,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "partition" => Ok(Mode::Partition),
            "overlap" => Ok(Mode::Overlap),
            _ => Err(format!("unknown mode `{s}`, expected partition or overlap")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Partition => "partition",
            Mode::Overlap => "overlap",
        })
    }
}

pub const MAX_N: usize = 9;
pub const MAX_PARTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    pub mode: Mode,
    pub nmax: usize,
    pub max_parts: usize,
    /// Ranks `d - 1` to draw from; every part of one spec shares the rank.
    pub ranks: Vec<usize>,
}

impl CorpusParams {
    pub fn new(seed: u64, count: usize, mode: Mode, nmax: usize) -> Self {
        CorpusParams { seed, count, mode, nmax: nmax.min(MAX_N), max_parts: MAX_PARTS, ranks: vec![2, 3] }
    }
}

/// A unit-interval spec of rank `rank` on at most `nmax` vertices in which
/// some part has a facet. `None` if `nmax` is too small for the mode.
pub fn random_spec(rng: &mut impl Rng, mode: Mode, nmax: usize, max_parts: usize, rank: usize) -> Option<IntervalComplexSpec> {
    let d = rank + 1;
    let nmin = match mode {
        Mode::Partition => d,
        Mode::Overlap => d + 1,
    };
    if nmax < nmin || max_parts == 0 || (mode == Mode::Overlap && max_parts < 2) {
        return None;
    }
    loop {
        let n = rng.gen_range(nmin..=nmax);
        let parts = match mode {
            Mode::Partition => {
                let mut parts = Vec::new();
                let mut lo = 1;
                let blocks = rng.gen_range(1..=max_parts.min(n));
                for j in 0..blocks {
                    let left = blocks - j - 1;
                    let hi = if left == 0 { n } else { rng.gen_range(lo..=n - left) };
                    parts.push(IntervalPart::new(lo, hi, rank));
                    lo = hi + 1;
                }
                parts
            }
            Mode::Overlap => {
                let m = rng.gen_range(2..=max_parts.min(n));
                let mut los: Vec<usize> = rand::seq::index::sample(rng, n, m).into_iter().map(|i| i + 1).collect();
                let mut his: Vec<usize> = rand::seq::index::sample(rng, n, m).into_iter().map(|i| i + 1).collect();
                los.sort();
                his.sort();
                if los.iter().zip(&his).any(|(l, h)| l > h) || !(1..m).any(|j| los[j] <= his[j - 1]) {
                    continue;
                }
                los.iter().zip(&his).map(|(&l, &h)| IntervalPart::new(l, h, rank)).collect()
            }
        };
        let Ok(spec) = IntervalComplexSpec::new(n, parts) else { continue };
        if spec.parts().iter().any(|p| p.contributes()) {
            return Some(spec);
        }
    }
}

/// The specs of a corpus, in index order.
pub fn generate(params: &CorpusParams) -> Vec<IntervalComplexSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.count);
    for _ in 0..params.count {
        let rank = params.ranks[rng.gen_range(0..params.ranks.len())];
        match random_spec(&mut rng, params.mode, params.nmax, params.max_parts, rank) {
            Some(s) => out.push(s),
            None => break,
        }
    }
    out
}

/// Checks run on one corpus instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub spec: IntervalComplexSpec,
    pub d: usize,
    pub forms: Vec<SupportForm>,
    pub unexpected: Vec<SupportForm>,
    pub gorenstein: bool,
    pub a: i64,
    pub bound: i64,
    /// Equality on partitions, `a ≤ -B` on overlaps.
    pub a_consistent: bool,
    /// Partition only: Gorenstein iff every block with a facet has `2d - 3` vertices.
    pub gorenstein_consistent: Option<bool>,
    pub radical: bool,
    pub replay_steps: usize,
    pub replay_fallbacks: usize,
    pub replay_mismatches: usize,
}

impl Outcome {
    pub fn confirmed(&self) -> bool {
        self.unexpected.is_empty()
    }

    /// A failed check, or a counterexample.
    pub fn noteworthy(&self) -> bool {
        !self.confirmed() || !self.a_consistent || self.gorenstein_consistent == Some(false) || self.radical || self.replay_fallbacks > 0
    }

    /// Instance text followed by the facet-form table.
    pub fn dump(&self) -> String {
        let mut s = format!("# {}\n{}", self.spec, self.spec.to_text());
        s.push_str(&format!("# verdict {}\n", if self.confirmed() { "confirmed" } else { "counterexample" }));
        s.push_str(&format!("# a {} bound {} gorenstein {}\n", self.a, self.bound, self.gorenstein));
        s.push_str("# facet forms (x_1 .. x_n, t):\n");
        for f in &self.forms {
            let mark = if self.unexpected.contains(f) { " unexpected" } else { "" };
            s.push_str(&format!("#   {}{mark}\n", report::form(f)));
        }
        s
    }
}

pub fn evaluate(spec: &IntervalComplexSpec) -> Result<Outcome, Error> {
    let delta = spec.build();
    let cone = ConeDescription::of_complex(&delta.independence_complex())?;
    let r = divisor_report_with(&delta, &cone)?;
    let cls = &r.classification;
    let unexpected = match verdict_of(cls)? {
        ConjectureVerdict::Confirmed => Vec::new(),
        ConjectureVerdict::Counterexample(fs) => fs,
    };
    let bound = a_invariant_bound(cls.clique_number(), cls.d);
    let a = r.a_invariant.value;
    let partition = spec.is_partition();
    let gorenstein = r.gorenstein.is_gorenstein();
    let gorenstein_consistent = partition.then(|| {
        let predicted = spec.parts().iter().filter(|p| p.contributes()).all(|p| p.len() == 2 * cls.d - 3);
        predicted == gorenstein
    });
    let replay = interval_shedding_order(spec)?;
    Ok(Outcome {
        spec: spec.clone(),
        d: cls.d,
        forms: cone.facet_forms.clone(),
        unexpected,
        gorenstein,
        a,
        bound,
        a_consistent: if partition { -a == bound } else { -a >= bound },
        gorenstein_consistent,
        radical: r.t_radical.radical,
        replay_steps: replay.verified_steps,
        replay_fallbacks: replay.fallback_nodes,
        replay_mismatches: replay.formula_mismatches,
    })
}

#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub outcomes: Vec<Outcome>,
    pub report: Report,
}

/// Evaluates the corpus in parallel; the report is independent of thread count.
pub fn corpus_run(params: &CorpusParams) -> Result<CorpusRun, Error> {
    let specs = generate(params);
    let outcomes = specs.par_iter().map(evaluate).collect::<Result<Vec<_>, _>>()?;
    let report = aggregate(params, &outcomes);
    Ok(CorpusRun { outcomes, report })
}

fn aggregate(params: &CorpusParams, outcomes: &[Outcome]) -> Report {
    let count = |f: &dyn Fn(&Outcome) -> bool| outcomes.iter().filter(|o| f(o)).count();
    let mut r = Report::new(format!("corpus seed={} mode={}", params.seed, params.mode));
    let mut s = Section::new("corpus");
    s.put("seed", params.seed).put("mode", params.mode).put("nmax", params.nmax).put("instances", outcomes.len());
    r.sections.push(s);

    let mut s = Section::new("conjecture");
    s.put("confirmed", count(&|o| o.confirmed())).put("counterexamples", count(&|o| !o.confirmed()));
    r.sections.push(s);

    let mut s = Section::new("a_invariant");
    s.put("consistent", count(&|o| o.a_consistent)).put("equal_to_bound", count(&|o| -o.a == o.bound));
    r.sections.push(s);

    let mut s = Section::new("gorenstein");
    s.put("gorenstein", count(&|o| o.gorenstein));
    if params.mode == Mode::Partition {
        s.put("block_rule_agrees", count(&|o| o.gorenstein_consistent == Some(true)));
    }
    r.sections.push(s);

    let mut s = Section::new("radical");
    s.put("radical", count(&|o| o.radical));
    r.sections.push(s);

    let mut s = Section::new("vd");
    s.put("verified_steps", outcomes.iter().map(|o| o.replay_steps).sum::<usize>())
        .put("fallback_instances", count(&|o| o.replay_fallbacks > 0))
        .put("formula_mismatch_instances", count(&|o| o.replay_mismatches > 0));
    r.sections.push(s);

    let flagged: Vec<String> = outcomes.iter().enumerate().filter(|(_, o)| o.noteworthy()).map(|(i, _)| i.to_string()).collect();
    let mut s = Section::new("flagged");
    s.put("count", flagged.len()).put("indices", format!("[{}]", flagged.join(" ")));
    r.sections.push(s);
    r
}

/// Writes every noteworthy instance to `dir/instance_<index>.txt`; returns the paths.
pub fn save_flagged(run: &CorpusRun, dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    let mut paths = Vec::new();
    for (i, o) in run.outcomes.iter().enumerate().filter(|(_, o)| o.noteworthy()) {
        std::fs::create_dir_all(dir)?;
        let p = dir.join(format!("instance_{i:04}.txt"));
        std::fs::write(&p, o.dump())?;
        paths.push(p);
    }
    Ok(paths)
}
