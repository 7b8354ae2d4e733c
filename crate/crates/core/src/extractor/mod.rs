//! Constructive K5⁻ extraction.
//!
//! Starting from a short W4-subdivision `H` and a path `P` leaving `v1`, the
//! extractor classifies where `P` lands and follows that case until it has a
//! K5⁻-subdivision, a wheel with strictly smaller total spoke length, or a
//! vertex cut of size at most three. Every answer is verified before it is
//! returned; anything the case analysis cannot settle escalates to a search
//! inside the current composite, then to a global separator check, then to
//! an unrestricted subdivision search.

mod audit;
mod cases;
mod certify;
mod config;
mod pocket;
mod tables;

use std::collections::HashSet;

use serde::Serialize;

use crate::connectivity::{find_separator, Separator};
use crate::graph::{Graph, Vertex};
use crate::subdiv::{
    find_subdivision, verify_embedding, Embedding, Pattern, SearchBudget, SearchOptions, SearchOutcome,
};
use crate::wheel::{find_w4, make_short, WheelW4};

pub use audit::{audit_tables, AuditReport, AuditRow, AuditStatus};
pub use certify::{certify_configuration, Certified, Claim, TableClaimFalsified, CERT_CAP};
pub use config::{choose_p, classify_p1, CaseLabel, Configuration, Landing, NoPath, Unclassifiable};
pub use tables::{EndpointTable, Part, RowClass, TableRow, TABLE_C1, TABLE_D1};

/// Re-dispatches allowed per wheel before escalating.
const MAX_REDISPATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    FindW4,
    Improve,
    Classify,
    Found,
    Shorter,
    Cut,
    ReplaceSpoke,
    ReplaceRim,
    Redispatch,
    ClaimFalsified,
    Escalate,
    FallbackSeparator,
    FallbackSearch,
    GaveUp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub case_label: Option<String>,
    pub action: Action,
    pub total_spoke_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotFourConnected {
    TooSmall { n: usize },
    LowDegree { vertex: Vertex, separator: Separator },
    Cut(Separator),
}

impl NotFourConnected {
    /// The cut, if the graph is large enough to have one.
    pub fn cut(&self) -> Option<&[Vertex]> {
        match self {
            NotFourConnected::TooSmall { .. } => None,
            NotFourConnected::LowDegree { separator, .. } | NotFourConnected::Cut(separator) => Some(&separator.cut),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractionOutcome {
    Found(Embedding),
    NotFourConnected(NotFourConnected),
    /// Only ever caused by running out of budget.
    GaveUp {
        reason: String,
        nodes_used: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub outcome: ExtractionOutcome,
    pub trace: Vec<TraceStep>,
}

impl Extraction {
    /// Whether the answer came from a global fallback rather than the cases.
    pub fn used_fallback(&self) -> bool {
        self.trace
            .iter()
            .any(|t| matches!(t.action, Action::FallbackSeparator | Action::FallbackSearch))
    }

    /// Total spoke lengths at each wheel replacement that changed spokes.
    pub fn spoke_lengths(&self) -> Vec<usize> {
        self.trace
            .iter()
            .filter(|t| {
                matches!(
                    t.action,
                    Action::FindW4 | Action::Improve | Action::Shorter | Action::ReplaceSpoke
                )
            })
            .map(|t| t.total_spoke_length)
            .collect()
    }
}

/// What a case handler concluded.
#[derive(Debug, Clone)]
pub(crate) enum Step {
    Found(Embedding),
    /// A wheel with strictly smaller total spoke length.
    Shorter(WheelW4),
    Cut(Vec<Vertex>),
    /// Continue with a new wheel and path.
    Redispatch(Configuration, &'static str),
    /// The handler could not settle the configuration; search inside these
    /// edges before falling back.
    Escalate(Vec<(Vertex, Vertex)>, String),
}

pub(crate) struct Ctx<'a> {
    pub g: &'a Graph,
    pub budget: &'a mut SearchBudget,
    pub trace: Vec<TraceStep>,
}

impl Ctx<'_> {
    pub fn log(&mut self, label: Option<CaseLabel>, action: Action, total: usize, detail: Option<String>) {
        self.trace.push(TraceStep {
            step: self.trace.len(),
            case_label: label.map(|l| l.to_string()),
            action,
            total_spoke_length: total,
            detail,
        });
    }
}

/// Runs the extractor on `g`.
pub fn extract(g: &Graph, budget: &mut SearchBudget) -> Extraction {
    let mut ctx = Ctx {
        g,
        budget,
        trace: Vec::new(),
    };
    let outcome = run(&mut ctx);
    Extraction {
        outcome,
        trace: ctx.trace,
    }
}

fn run(ctx: &mut Ctx) -> ExtractionOutcome {
    let g = ctx.g;
    if g.n() <= 4 {
        return ExtractionOutcome::NotFourConnected(NotFourConnected::TooSmall { n: g.n() });
    }
    let low = g.vertices().min_by_key(|&v| (g.degree(v), v)).unwrap();
    if g.degree(low) <= 3 {
        let separator = Separator::from_cut(g, g.neighbors(low)).expect("closed neighbourhood leaves a vertex");
        return ExtractionOutcome::NotFourConnected(NotFourConnected::LowDegree { vertex: low, separator });
    }
    let mut h = match find_w4(g, ctx.budget) {
        SearchOutcome::Found(h) => h,
        SearchOutcome::NotFound => return escalate(ctx, &[], "no W4-subdivision", 0),
        SearchOutcome::BudgetExceeded => return gave_up(ctx, "budget exhausted finding a wheel", 0),
    };
    ctx.log(None, Action::FindW4, h.total_spoke_length(), None);
    h = shorten(ctx, &h);
    let mut seen: HashSet<Vec<(Vertex, Vertex)>> = HashSet::new();
    loop {
        let total = h.total_spoke_length();
        if ctx.budget.exhausted() {
            return gave_up(ctx, "budget exhausted in case analysis", total);
        }
        let (mut c, _) = match choose_p(g, &h) {
            Ok(x) => x,
            Err(NoPath::CutVertex) => return finish_cut(ctx, vec![h.smr[0]], None, total),
            Err(NoPath::DegreeThree) => return escalate(ctx, &h.edges(), "v1 has degree three", total),
        };
        let mut rounds = 0;
        let step = loop {
            let step = cases::dispatch(ctx, &c);
            let Step::Redispatch(next, why) = step else { break step };
            rounds += 1;
            let (old, new) = (c.h.total_spoke_length(), next.h.total_spoke_length());
            let mut key = next.h.edges();
            key.extend(crate::graph::path_edges(next.p()));
            key.sort_unstable();
            let fresh = seen.insert(key);
            if new < old {
                ctx.log(None, Action::ReplaceSpoke, new, Some(why.to_string()));
            } else if new == old && same_spokes(&next.h, &c.h) && fresh && rounds <= MAX_REDISPATCH {
                ctx.log(None, Action::ReplaceRim, new, Some(why.to_string()));
            } else {
                let composite = next.composite_edges(&[]);
                break Step::Escalate(composite, format!("re-dispatch guard: {why}"));
            }
            c = next;
        };
        match step {
            Step::Found(e) => {
                if verify_embedding(g, &e).is_ok() && e.pattern == Pattern::k5_minus() {
                    ctx.log(None, Action::Found, c.h.total_spoke_length(), None);
                    return ExtractionOutcome::Found(e);
                }
                return escalate(ctx, &c.composite_edges(&[]), "certificate failed to verify", total);
            }
            Step::Shorter(w) => {
                let cur = c.h.total_spoke_length();
                if w.verify(g).is_err() || w.total_spoke_length() >= cur {
                    return escalate(ctx, &c.composite_edges(&[]), "bad shorter wheel", cur);
                }
                ctx.log(None, Action::Shorter, w.total_spoke_length(), None);
                h = shorten(ctx, &w);
            }
            Step::Cut(cut) => return finish_cut(ctx, cut, Some(&c), c.h.total_spoke_length()),
            Step::Escalate(edges, why) => return escalate(ctx, &edges, &why, c.h.total_spoke_length()),
            Step::Redispatch(..) => unreachable!(),
        }
    }
}

fn same_spokes(a: &WheelW4, b: &WheelW4) -> bool {
    let mut x = a.spokes.clone();
    let mut y = b.spokes.clone();
    x.sort();
    y.sort();
    x == y
}

fn shorten(ctx: &mut Ctx, h: &WheelW4) -> WheelW4 {
    let s = make_short(ctx.g, h, ctx.budget);
    for &len in &s.lengths {
        ctx.log(None, Action::Improve, len, None);
    }
    if s.truncated {
        ctx.log(
            None,
            Action::Improve,
            s.wheel.total_spoke_length(),
            Some("fixpoint not confirmed".into()),
        );
    }
    s.wheel
}

fn finish_cut(ctx: &mut Ctx, cut: Vec<Vertex>, c: Option<&Configuration>, total: usize) -> ExtractionOutcome {
    match Separator::from_cut(ctx.g, &cut) {
        Some(sep) if sep.cut.len() <= 3 => {
            ctx.log(None, Action::Cut, total, Some(format!("{:?}", sep.cut)));
            ExtractionOutcome::NotFourConnected(NotFourConnected::Cut(sep))
        }
        _ => {
            let edges = c.map(|c| c.composite_edges(&[])).unwrap_or_default();
            escalate(ctx, &edges, &format!("{cut:?} does not separate"), total)
        }
    }
}

fn gave_up(ctx: &mut Ctx, reason: &str, total: usize) -> ExtractionOutcome {
    ctx.log(None, Action::GaveUp, total, Some(reason.to_string()));
    ExtractionOutcome::GaveUp {
        reason: reason.to_string(),
        nodes_used: ctx.budget.used,
    }
}

/// Composite search, then a global separator, then unrestricted search.
fn escalate(ctx: &mut Ctx, composite: &[(Vertex, Vertex)], why: &str, total: usize) -> ExtractionOutcome {
    let g = ctx.g;
    ctx.log(None, Action::Escalate, total, Some(why.to_string()));
    if !composite.is_empty() {
        if let SearchOutcome::Found(e) = certify::k5_within(g, composite, ctx.budget) {
            ctx.log(None, Action::Found, total, Some("composite search".into()));
            return ExtractionOutcome::Found(e);
        }
    }
    if let Some(sep) = find_separator(g, 4) {
        ctx.log(None, Action::FallbackSeparator, total, Some(format!("{:?}", sep.cut)));
        return ExtractionOutcome::NotFourConnected(NotFourConnected::Cut(sep));
    }
    ctx.log(None, Action::FallbackSearch, total, None);
    match find_subdivision(g, &Pattern::k5_minus(), ctx.budget, &SearchOptions::default()) {
        SearchOutcome::Found(e) => {
            ctx.log(None, Action::Found, total, Some("unrestricted search".into()));
            ExtractionOutcome::Found(e)
        }
        SearchOutcome::NotFound => gave_up(ctx, "unrestricted search found nothing", total),
        SearchOutcome::BudgetExceeded => gave_up(ctx, "budget exhausted in unrestricted search", total),
    }
}
