//! Runs the selected pipelines on one instance and collects a [`Report`].

use std::fmt;
use std::str::FromStr;

use sortable_core::divisor::{a_invariant_bound, divisor_report_with, verdict_of};
use sortable_core::groebner::{l_exchange_check, rees_fiber_connectivity, standard_count_check};
use sortable_core::interval::{interval_decomposition, is_interval_complex, is_unit_interval, spec_from_complex};
use sortable_core::sorting::is_sortable;
use sortable_core::vd::{cm_status, interval_shedding_order, is_vertex_decomposable};
use sortable_core::{ConeDescription, ConjectureVerdict, DivisorReport, Error, RecognitionWitness, SimplicialComplex};

use crate::instance::Instance;
use crate::report::{self, Report, Section};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Selector {
    Recognize,
    Sortable,
    Cone,
    Divisor,
    Conjecture,
    Groebner,
    Vd,
    Cm,
}

impl Selector {
    pub const ALL: [Selector; 8] = [
        Selector::Recognize,
        Selector::Sortable,
        Selector::Cone,
        Selector::Divisor,
        Selector::Conjecture,
        Selector::Groebner,
        Selector::Vd,
        Selector::Cm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Selector::Recognize => "recognize",
            Selector::Sortable => "sortable",
            Selector::Cone => "cone",
            Selector::Divisor => "divisor",
            Selector::Conjecture => "conjecture",
            Selector::Groebner => "groebner",
            Selector::Vd => "vd",
            Selector::Cm => "cm",
        }
    }

    /// Parses a comma-separated list; `all` expands to every selector.
    pub fn parse_list(s: &str) -> Result<Vec<Selector>, String> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if tok == "all" {
                out.extend(Selector::ALL);
            } else {
                out.push(tok.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Selector::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown selector `{s}`"))
    }
}

/// Degree bounds of the Gröbner surrogates.
pub const STANDARD_R_MAX: usize = 3;
pub const EXCHANGE_N_MAX: usize = 2;
pub const FIBER_DEGREE: usize = 3;

#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: Report,
    /// Sections that could not run on this instance.
    pub skipped: Vec<(Selector, Error)>,
}

/// Runs `selectors` in dependency order. Precondition failures are recorded
/// in the section and in `skipped`; broken invariants abort.
pub fn run_analysis(instance: &Instance, selectors: &[Selector]) -> Result<Analysis, Error> {
    let mut sel = selectors.to_vec();
    sel.sort();
    sel.dedup();
    let mut run = Run { delta: instance.complex(), instance, cone: None, divisor: None, skipped: Vec::new() };
    let mut report = Report::new(&instance.id);
    for s in sel {
        let mut section = Section::new(s.name());
        match run.section(s, &mut section) {
            Ok(()) => {}
            Err(e) if e.is_internal() => return Err(e),
            Err(e) => {
                section.put("status", "precondition").put("reason", &e);
                run.skipped.push((s, e));
            }
        }
        report.sections.push(section);
    }
    Ok(Analysis { report, skipped: run.skipped })
}

struct Run<'a> {
    instance: &'a Instance,
    delta: SimplicialComplex,
    cone: Option<Result<ConeDescription, Error>>,
    divisor: Option<Result<DivisorReport, Error>>,
    skipped: Vec<(Selector, Error)>,
}

impl Run<'_> {
    fn cone(&mut self) -> Result<&ConeDescription, Error> {
        let delta = &self.delta;
        self.cone.get_or_insert_with(|| ConeDescription::of_complex(&delta.independence_complex())).as_ref().map_err(Clone::clone)
    }

    fn divisor(&mut self) -> Result<&DivisorReport, Error> {
        if self.divisor.is_none() {
            let r = match self.cone().cloned() {
                Ok(c) => divisor_report_with(&self.delta, &c),
                Err(e) => Err(e),
            };
            self.divisor = Some(r);
        }
        self.divisor.as_ref().unwrap().as_ref().map_err(Clone::clone)
    }

    fn require_unit_interval(&self) -> Result<(), Error> {
        if is_unit_interval(&self.delta).is_unit_interval {
            Ok(())
        } else {
            Err(Error::NotUnitInterval)
        }
    }

    fn section(&mut self, s: Selector, out: &mut Section) -> Result<(), Error> {
        match s {
            Selector::Recognize => self.recognize(out),
            Selector::Sortable => {
                let v = is_sortable(&self.delta.independence_complex());
                out.put("status", "ok").put("sortable", v.sortable);
                if let Some((f, g)) = v.witness {
                    out.put("witness", report::faces(&[f, g]));
                }
                Ok(())
            }
            Selector::Cone => {
                let c = self.cone()?;
                let (gens, forms) = (c.generators.len(), report::forms(&c.facet_forms));
                let (count, dim) = (c.facet_forms.len(), c.ambient_dim);
                out.put("status", "ok").put("ambient_dim", dim).put("generators", gens).put("facets", count).put("forms", forms);
                Ok(())
            }
            Selector::Divisor => self.divisor_section(out),
            Selector::Conjecture => self.conjecture(out),
            Selector::Groebner => self.groebner(out),
            Selector::Vd => self.vd(out),
            Selector::Cm => {
                let st = cm_status(&self.delta)?;
                out.put("status", "ok").put("pure_ind", st.pure_ind).put("unmixed", st.unmixed).put("cm", st.cm);
                Ok(())
            }
        }
    }

    fn recognize(&mut self, out: &mut Section) -> Result<(), Error> {
        let v = is_unit_interval(&self.delta);
        out.put("status", "ok").put("unit_interval", v.is_unit_interval);
        match v.witness {
            Some(RecognitionWitness::NotPure { smaller, larger }) => {
                out.put("witness", format!("not pure {smaller} {larger}"));
            }
            Some(RecognitionWitness::MissingSubset { facet, missing }) => {
                out.put("witness", format!("facet {facet} misses {missing}"));
            }
            None => {}
        }
        if v.is_unit_interval {
            out.put("clique_intervals", report::faces(&v.clique_intervals));
        }
        let interval = is_interval_complex(&self.delta);
        out.put("interval_complex", interval);
        match spec_from_complex(&self.delta) {
            Ok(spec) => out.put("decomposition", &spec),
            Err(e) => match interval_decomposition(&self.delta) {
                Some(spec) => out.put("decomposition", &spec),
                None => out.put("decomposition", format!("none ({e})")),
            },
        };
        out.put("flag_degree", self.delta.independence_complex().flag_degree().map_or("none".to_string(), |d| d.to_string()));
        Ok(())
    }

    fn divisor_section(&mut self, out: &mut Section) -> Result<(), Error> {
        self.require_unit_interval()?;
        let r = self.divisor()?;
        let cls = &r.classification;
        out.put("status", "ok")
            .put("d", cls.d)
            .put("clique_number", cls.clique_number())
            .put("q_forms", cls.q_forms.len())
            .put("p_forms", cls.p_forms.len())
            .put("l_forms", cls.l_forms.len())
            .put("unexpected", report::forms(&cls.unexpected))
            .put("class_group", format!("(rank {}, torsion {})", r.class_group.free_rank, r.class_group.torsion))
            .put("gorenstein", r.gorenstein.is_gorenstein())
            .put("gorenstein_scalar", r.gorenstein.scalar.map_or("none".to_string(), |a| a.to_string()))
            .put("gorenstein_conditional", r.gorenstein.conditional)
            .put("a_invariant", r.a_invariant.value)
            .put("a_witness", report::point(&r.a_invariant.witness))
            .put("t_radical", r.t_radical.radical)
            .put("t_coefficients", report::ints(&r.t_radical.t_coefficients))
            .put("radical_certified", r.t_radical.certified.map_or("none".to_string(), |c| c.to_string()));
        Ok(())
    }

    fn conjecture(&mut self, out: &mut Section) -> Result<(), Error> {
        self.require_unit_interval()?;
        let dim = self.delta.dim().unwrap_or(-1);
        if dim <= 1 {
            return Err(Error::DimensionTooSmall(dim));
        }
        let r = self.divisor()?.clone();
        let cls = &r.classification;
        let verdict = verdict_of(cls)?;
        let bound = a_invariant_bound(cls.clique_number(), cls.d);
        out.put("status", "ok");
        match &verdict {
            ConjectureVerdict::Confirmed => out.put("verdict", "confirmed"),
            ConjectureVerdict::Counterexample(fs) => out.put("verdict", "counterexample").put("unexpected", report::forms(fs)),
        };
        out.put("a_bound", bound).put("a_equals_bound", -r.a_invariant.value == bound);
        if let Some(spec) = self.instance.spec().filter(|s| s.is_partition()) {
            let equal = spec.parts().iter().filter(|p| p.contributes()).all(|p| p.len() == 2 * cls.d - 3);
            out.put("partition", true).put("blocks_2d_minus_3", equal);
        }
        Ok(())
    }

    fn groebner(&mut self, out: &mut Section) -> Result<(), Error> {
        self.require_unit_interval()?;
        let gamma = self.delta.independence_complex();
        let top = gamma.dim().unwrap_or(-1);
        out.put("status", "ok");
        let mut all = true;
        for t in 0..=top.max(-1) {
            let t = t as usize;
            let gens = gamma.faces_of_size(t + 1);
            let mut standard = Vec::new();
            for r in 1..=STANDARD_R_MAX {
                let c = standard_count_check(&gens, r)?;
                all &= c.passes();
                standard.push(format!("{}/{}", c.sorted_count, c.semigroup_count));
            }
            let mut exchange = Vec::new();
            for n in 1..=EXCHANGE_N_MAX {
                let v = l_exchange_check(&self.delta, t, n)?;
                all &= v.holds;
                exchange.push(v.holds.to_string());
            }
            let fibers = rees_fiber_connectivity(&self.delta, t, FIBER_DEGREE)?;
            let connected = fibers.iter().all(|f| f.connected);
            all &= connected;
            out.put(format!("t{t}.standard"), standard.join(" "))
                .put(format!("t{t}.exchange"), exchange.join(" "))
                .put(format!("t{t}.fibers"), fibers.len())
                .put(format!("t{t}.fibers_connected"), connected);
        }
        out.put("passes", all);
        Ok(())
    }

    fn vd(&mut self, out: &mut Section) -> Result<(), Error> {
        let gamma = self.delta.independence_complex();
        let generic = is_vertex_decomposable(&gamma)?;
        out.put("status", "ok").put("decomposable", generic.is_some());
        if let Some(t) = &generic {
            out.put("generic_order", report::ints(&t.vertices_preorder())).put("generic_tree", report::tree(t));
        }
        let spec = match self.instance.spec() {
            Some(s) => Some(s.clone()),
            None => interval_decomposition(&self.delta),
        };
        if let Some(spec) = spec {
            let r = interval_shedding_order(&spec)?;
            out.put("replay_order", report::ints(&r.order))
                .put("replay_verified_steps", r.verified_steps)
                .put("replay_formula_mismatches", r.formula_mismatches)
                .put("replay_fallback_nodes", r.fallback_nodes)
                .put("replay_tree", report::tree(&r.tree));
        }
        Ok(())
    }
}
