//! One function per subcommand. Each reads its inputs, calls the library
//! and returns a [`CommandReport`]; nothing is shared between calls.

use std::path::Path;
use std::time::Duration;

use polyadic_core::canon::canonical_monoid;
use polyadic_core::enumerate::{
    enumerate_w_monoids, minimal_in_semigroup, monoid_records, semigroup_records, survey_nary, Survey, Tally,
};
use polyadic_core::search::{InVerdict, NotInReason, SearchConfig, SearchOutcome, Verdict};
use polyadic_core::wmonoid::{
    check_rees_t_iso, check_w_monoid, decompose, from_bitranslation, from_involution, in_semigroup_from_w_monoid,
    Bitranslation, WMonoidWitness,
};
use polyadic_core::{
    check_associativity, nary_extension, neutral_elements, reduce_via_neutral, AlgError, CatalogRecord, FiniteNaryOp,
    MonoidDesc, Universe,
};
use serde_json::{json, Value};

use crate::catalog;
use crate::clock::InstantClock;
use crate::format::{self, FormatError};
use crate::parallel::{find_adjunctions_parallel, find_reductions_parallel};
use crate::report::{CommandReport, Outcome};

/// Settings shared by the search commands.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub timeout: Duration,
    pub jobs: usize,
}

impl Context {
    pub fn config(&self, limit: Option<usize>) -> SearchConfig {
        SearchConfig {
            limit,
            timeout: Some(self.timeout),
            first_fail: false,
        }
    }
}

/// Domain failures are property refutations (exit 1); shape and cap
/// problems are input errors (exit 2).
fn classify(e: &AlgError) -> Outcome {
    match e {
        AlgError::NotAssociative(_)
        | AlgError::NotNeutral(_)
        | AlgError::NotInvolution(_)
        | AlgError::Bitranslation { .. }
        | AlgError::BitranslationSide(_)
        | AlgError::EvenArity(_)
        | AlgError::OutsidePair(_)
        | AlgError::ParityViolation { .. }
        | AlgError::NotWMonoid(_)
        | AlgError::Certificate(_) => Outcome::Fail,
        _ => Outcome::Error,
    }
}

fn from_alg_error(command: &str, e: AlgError) -> CommandReport {
    let mut r = CommandReport::error(command, &e);
    r.outcome = classify(&e);
    r
}

fn from_format_error(command: &str, e: FormatError) -> CommandReport {
    match e {
        FormatError::Invalid(e) => from_alg_error(command, e),
        e => CommandReport::error(command, e),
    }
}

macro_rules! attempt {
    ($cmd:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Into::<CommandError>::into(err).report($cmd),
        }
    };
}

enum CommandError {
    Format(FormatError),
    Alg(AlgError),
    Other(String),
}

impl From<FormatError> for CommandError {
    fn from(e: FormatError) -> Self {
        CommandError::Format(e)
    }
}

impl From<AlgError> for CommandError {
    fn from(e: AlgError) -> Self {
        CommandError::Alg(e)
    }
}

impl From<catalog::CatalogError> for CommandError {
    fn from(e: catalog::CatalogError) -> Self {
        CommandError::Other(e.to_string())
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Other(e.to_string())
    }
}

impl CommandError {
    fn report(self, command: &str) -> CommandReport {
        match self {
            CommandError::Format(e) => from_format_error(command, e),
            CommandError::Alg(e) => from_alg_error(command, e),
            CommandError::Other(m) => CommandReport::error(command, m),
        }
    }
}

fn names(u: &Universe, xs: &[usize]) -> String {
    xs.iter().map(|&x| u.name(x)).collect::<Vec<_>>().join(", ")
}

fn tuple(u: &Universe, xs: &[usize]) -> String {
    format!("({})", names(u, xs))
}

/// Prints `text` or writes it to `out`.
fn emit_alg(r: &mut CommandReport, text: &str, out: Option<&Path>) -> Result<(), CommandError> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CommandError::Other(format!("{}: {}", p.display(), e)))?;
            r.line(format!("wrote {}", p.display()));
            r.set("written", json!(p.display().to_string()));
        }
        None => {
            r.line(text.trim_end().to_string());
        }
    }
    Ok(())
}

fn outcome_json<T>(o: &SearchOutcome<T>) -> Value {
    json!({
        "count": o.solutions.len(),
        "exhausted": o.exhausted,
        "truncated": o.truncated,
        "nodes_visited": o.nodes_visited,
        "elapsed_ms": o.elapsed.as_secs_f64() * 1e3,
    })
}

fn existence_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Yes => Outcome::Pass,
        Verdict::No => Outcome::Fail,
        Verdict::Undecided => Outcome::Undecided,
    }
}

fn search_summary<T>(what: &str, o: &SearchOutcome<T>) -> String {
    let status = if !o.exhausted {
        "timed out, list incomplete"
    } else if o.truncated {
        "stopped at the limit"
    } else {
        "exhaustive"
    };
    format!("{} {} ({}, {} nodes)", o.solutions.len(), what, status, o.nodes_visited)
}

pub fn check_assoc(path: &Path) -> CommandReport {
    let cmd = "check-assoc";
    let file = attempt!(cmd, format::read(path));
    let f = file.nary();
    match attempt!(cmd, check_associativity(&f)) {
        None => {
            let mut r = CommandReport::new(cmd, Outcome::Pass);
            r.line(format!("associative: order {}, arity {}", f.order(), f.arity()));
            r.set("associative", json!(true));
            r
        }
        Some(c) => {
            let mut r = CommandReport::new(cmd, Outcome::Fail);
            r.line(format!(
                "not associative: identity {} fails at {}: {} vs {}",
                c.position,
                tuple(f.universe(), &c.arguments),
                f.universe().name(c.lhs),
                f.universe().name(c.rhs)
            ));
            r.set("associative", json!(false));
            r.set(
                "counterexample",
                json!({"position": c.position, "arguments": c.arguments, "lhs": c.lhs, "rhs": c.rhs}),
            );
            r
        }
    }
}

pub fn neutrals(path: &Path) -> CommandReport {
    let cmd = "neutrals";
    let file = attempt!(cmd, format::read(path));
    let f = file.nary();
    let ns = neutral_elements(&f);
    let mut r = CommandReport::new(cmd, Outcome::Pass);
    if ns.is_empty() {
        r.line("no neutral element");
    } else {
        r.line(format!("neutral elements: {}", names(f.universe(), &ns)));
    }
    r.set("neutrals", json!(ns));
    r
}

pub fn extend(path: &Path, arity: usize, out: Option<&Path>) -> CommandReport {
    let cmd = "extend";
    let file = attempt!(cmd, format::read(path));
    let b = attempt!(cmd, file.binary());
    let f = attempt!(cmd, nary_extension(&b, arity));
    let mut r = CommandReport::new(cmd, Outcome::Pass);
    r.line(format!(
        "{}-ary extension of a binary operation on {} elements (source associative: {})",
        arity,
        b.order(),
        b.is_associative()
    ));
    r.set("arity", json!(arity)).set("order", json!(f.order())).set("table", json!(f.table()));
    r.set("source_associative", json!(b.is_associative()));
    attempt!(cmd, emit_alg(&mut r, &format::write_nary(&f), out));
    r
}

pub fn reduce(path: &Path, neutral: usize, out: Option<&Path>) -> CommandReport {
    let cmd = "reduce";
    let file = attempt!(cmd, format::read(path));
    let f = file.nary();
    if neutral >= f.order() {
        return CommandReport::error(cmd, AlgError::IndexOutOfRange { index: neutral, order: f.order() });
    }
    let m = attempt!(cmd, reduce_via_neutral(&f, neutral));
    let mut r = CommandReport::new(cmd, Outcome::Pass);
    r.line(format!("reduction x∘y = F(x, {}, …, y) with neutral {}", f.universe().name(neutral), f.universe().name(neutral)));
    r.set("neutral", json!(m.neutral())).set("table", json!(m.op().table()));
    attempt!(cmd, emit_alg(&mut r, &format::write_monoid(&m), out));
    r
}

fn table_lines(r: &mut CommandReport, tables: &[&[u16]], width: usize) {
    for (i, t) in tables.iter().enumerate() {
        let rows: Vec<String> = t
            .chunks(width.max(1))
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        r.line(format!("  #{}: {}", i + 1, rows.join(" | ")));
    }
}

pub fn reductions(path: &Path, limit: Option<usize>, ctx: &Context) -> CommandReport {
    let cmd = "reductions";
    let file = attempt!(cmd, format::read(path));
    let f = file.nary();
    let o = find_reductions_parallel(&f, &ctx.config(limit), &InstantClock::start(), ctx.jobs);
    let mut r = CommandReport::new(cmd, existence_outcome(o.existence()));
    r.line(search_summary("reductions", &o));
    let tables: Vec<&[u16]> = o.solutions.iter().map(|b| b.table()).collect();
    table_lines(&mut r, &tables, f.order());
    r.set("search", outcome_json(&o));
    r.set("solutions", json!(tables));
    r
}

pub fn adjoin(path: &Path, limit: Option<usize>, ctx: &Context) -> CommandReport {
    let cmd = "adjoin";
    let file = attempt!(cmd, format::read(path));
    let f = file.nary();
    let o = find_adjunctions_parallel(&f, &ctx.config(limit), &InstantClock::start(), ctx.jobs);
    let mut r = CommandReport::new(cmd, existence_outcome(o.existence()));
    r.line(search_summary("adjunction monoids", &o));
    r.line(format!("adjoined neutral element has index {}", f.order()));
    let tables: Vec<&[u16]> = o.solutions.iter().map(|m| m.op().table()).collect();
    table_lines(&mut r, &tables, f.order() + 1);
    let w: Vec<bool> = o.solutions.iter().map(|m| check_w_monoid(m).is_ok()).collect();
    r.set("search", outcome_json(&o));
    r.set("neutral", json!(f.order()));
    r.set("solutions", json!(tables));
    r.set("w_monoid", json!(w));
    r
}

/// IN decision with the parallel searches.
pub fn decide_in(f: &FiniteNaryOp, ctx: &Context) -> (InVerdict, Value) {
    let clock = InstantClock::start();
    let red = find_reductions_parallel(f, &ctx.config(Some(1)), &clock, ctx.jobs);
    let mut info = json!({"reductions": outcome_json(&red)});
    if red.existence() == Verdict::Yes {
        return (InVerdict::No(NotInReason::Reducible), info);
    }
    let adj = find_adjunctions_parallel(f, &ctx.config(Some(1)), &clock, ctx.jobs);
    info["adjunctions"] = outcome_json(&adj);
    let verdict = match (red.existence(), adj.existence()) {
        (_, Verdict::No) => InVerdict::No(NotInReason::NoAdjunction),
        (Verdict::No, Verdict::Yes) => InVerdict::Yes(adj.solutions.into_iter().next().expect("one")),
        _ => InVerdict::Undecided,
    };
    (verdict, info)
}

fn in_report(cmd: &str, f: &FiniteNaryOp, ctx: &Context) -> CommandReport {
    let (verdict, info) = decide_in(f, ctx);
    let mut r;
    match verdict {
        InVerdict::Yes(m) => {
            r = CommandReport::new(cmd, Outcome::Pass);
            r.line("IN-semigroup: irreducible and admits a neutral element");
            let w = check_w_monoid(&m);
            r.line(format!("adjunction monoid (neutral {}) is a W-monoid: {}", m.neutral(), w.is_ok()));
            r.set("in_semigroup", json!(true));
            r.set("witness", json!({"neutral": m.neutral(), "table": m.op().table(), "w_monoid": w.is_ok()}));
        }
        InVerdict::No(reason) => {
            r = CommandReport::new(cmd, Outcome::Fail);
            r.line(format!("not an IN-semigroup: {}", reason));
            r.set("in_semigroup", json!(false));
            r.set("reason", json!(reason.to_string()));
        }
        InVerdict::Undecided => {
            r = CommandReport::new(cmd, Outcome::Undecided);
            r.line("undecided: a search hit the timeout");
            r.set("in_semigroup", Value::Null);
        }
    }
    r.set("search", info);
    r
}

pub fn in_check(path: &Path, ctx: &Context) -> CommandReport {
    let cmd = "in-check";
    let file = attempt!(cmd, format::read(path));
    let f = file.nary();
    if let Some(c) = attempt!(cmd, check_associativity(&f)) {
        return from_alg_error(cmd, AlgError::NotAssociative(c));
    }
    in_report(cmd, &f, ctx)
}

fn witness_json(w: &WMonoidWitness) -> Value {
    json!({
        "a": w.a(),
        "e": w.e(),
        "checks": {"w1": w.checks().w1, "w2": w.checks().w2, "w3": w.checks().w3},
    })
}

pub fn wmonoid_check(path: &Path) -> CommandReport {
    let cmd = "wmonoid check";
    let file = attempt!(cmd, format::read(path));
    let m = attempt!(cmd, file.monoid());
    match check_w_monoid(&m) {
        Ok(w) => {
            let mut r = CommandReport::new(cmd, Outcome::Pass);
            let u = m.op().universe();
            r.line(format!("W-monoid with a = {}, e = {}", u.name(w.a()), u.name(w.e())));
            let rees = attempt!(cmd, check_rees_t_iso(&m, w.a(), w.e()));
            r.line(format!("M ∖ {{a, e}} is an ideal: {}; quotient is {{−1, 0, 1}}: {}", rees.ideal_ok, rees.iso_to_t));
            r.set("witness", witness_json(&w));
            r.set("rees", json!({"ideal": rees.ideal_ok, "iso_to_t": rees.iso_to_t, "degenerate": rees.degenerate}));
            r
        }
        Err(fail) => {
            let mut r = CommandReport::new(cmd, Outcome::Fail);
            r.line(format!("not a W-monoid: {}", fail));
            r.set(
                "failure",
                json!({"condition": fail.condition.to_string(), "candidate": fail.candidate, "pair": fail.pair}),
            );
            r
        }
    }
}

fn built_monoid(cmd: &str, m: MonoidDesc, out: Option<&Path>) -> CommandReport {
    let w = check_w_monoid(&m);
    let mut r = CommandReport::new(cmd, if w.is_ok() { Outcome::Pass } else { Outcome::Fail });
    r.line(format!(
        "monoid of order {} with neutral {}; W-monoid: {}",
        m.order(),
        m.neutral(),
        match &w {
            Ok(w) => format!("yes, a = {}", w.a()),
            Err(f) => format!("no ({})", f),
        }
    ));
    r.set("order", json!(m.order())).set("neutral", json!(m.neutral())).set("table", json!(m.op().table()));
    r.set("witness", w.as_ref().map(witness_json).unwrap_or(Value::Null));
    attempt!(cmd, emit_alg(&mut r, &format::write_monoid(&m), out));
    r
}

pub fn wmonoid_from_involution(path: &Path, involution: usize, out: Option<&Path>) -> CommandReport {
    let cmd = "wmonoid from-involution";
    let file = attempt!(cmd, format::read(path));
    let s = attempt!(cmd, file.monoid());
    if involution >= s.order() {
        return CommandReport::error(cmd, AlgError::IndexOutOfRange { index: involution, order: s.order() });
    }
    let m = attempt!(cmd, from_involution(&s, involution));
    built_monoid(cmd, m, out)
}

pub fn wmonoid_from_bitranslation(path: &Path, out: Option<&Path>) -> CommandReport {
    let cmd = "wmonoid from-bitranslation";
    let file = attempt!(cmd, format::read(path));
    let bt = attempt!(cmd, file.bitranslation());
    let m = attempt!(cmd, from_bitranslation(&bt));
    built_monoid(cmd, m, out)
}

fn bitranslation_json(bt: &Bitranslation) -> Value {
    json!({"carrier": bt.carrier().table(), "left": bt.left(), "right": bt.right()})
}

pub fn wmonoid_decompose(path: &Path, out: Option<&Path>) -> CommandReport {
    let cmd = "wmonoid decompose";
    let file = attempt!(cmd, format::read(path));
    let m = attempt!(cmd, file.monoid());
    let w = match check_w_monoid(&m) {
        Ok(w) => w,
        Err(f) => return from_alg_error(cmd, AlgError::NotWMonoid(f.to_string())),
    };
    let bt = decompose(&w);
    let mut r = CommandReport::new(cmd, Outcome::Pass);
    r.line(format!(
        "S = M ∖ {{a, e}} has {} elements; L = {:?}, R = {:?}; S has an identity: {}",
        bt.carrier().order(),
        bt.left(),
        bt.right(),
        bt.carrier().identity().is_some()
    ));
    r.set("bitranslation", bitranslation_json(&bt));
    r.set("placement", json!(w.canonical_placement()));
    attempt!(cmd, emit_alg(&mut r, &format::write_bitranslation(&bt), out));
    r
}

pub fn in_build(path: &Path, arity: usize, out: Option<&Path>, ctx: &Context) -> CommandReport {
    let cmd = "in-build";
    let file = attempt!(cmd, format::read(path));
    let m = attempt!(cmd, file.monoid());
    let w = match check_w_monoid(&m) {
        Ok(w) => w,
        Err(f) => return from_alg_error(cmd, AlgError::NotWMonoid(f.to_string())),
    };
    let f = attempt!(cmd, in_semigroup_from_w_monoid(&w, arity));
    let mut r = in_report(cmd, &f, ctx);
    r.lines.insert(0, format!("{}-ary restriction to M ∖ {{e}} ({} elements)", arity, f.order()));
    r.set("order", json!(f.order())).set("arity", json!(arity)).set("table", json!(f.table()));
    r.set("neutrals", json!(neutral_elements(&f)));
    attempt!(cmd, emit_alg(&mut r, &format::write_nary(&f), out));
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerateKind {
    Semigroup,
    Monoid,
    WMonoid,
    Survey,
}

fn tally_json(t: &Tally) -> Value {
    json!({"classes": t.classes, "labeled": t.labeled})
}

pub fn survey_json(s: &Survey) -> Value {
    json!({
        "order": s.order,
        "arity": s.arity,
        "associative": tally_json(&s.associative),
        "with_neutral": tally_json(&s.with_neutral),
        "reducible": tally_json(&s.reducible),
        "adjoinable": tally_json(&s.adjoinable),
        "in_semigroups": tally_json(&s.in_semigroups),
        "undecided": tally_json(&s.undecided),
        "reducible_not_adjoinable": tally_json(&s.reducible_not_adjoinable),
        "forward_violations": tally_json(&s.forward_violations),
        "adjunction_monoids_checked": s.adjunction_monoids_checked,
    })
}

/// Whether a survey is consistent: every reducible class adjoins, every
/// IN adjunction monoid is a W-monoid, and even arity has no IN class.
pub fn survey_outcome(s: &Survey) -> Outcome {
    let even_ok = s.arity % 2 == 1 || s.in_semigroups.classes == 0;
    if s.reducible_not_adjoinable.classes > 0 || s.forward_violations.classes > 0 || !even_ok {
        Outcome::Fail
    } else if s.undecided.classes > 0 {
        Outcome::Undecided
    } else {
        Outcome::Pass
    }
}

fn survey_records(s: &Survey, config: &SearchConfig) -> Vec<CatalogRecord> {
    let clock = InstantClock::start();
    s.in_exemplars
        .iter()
        .filter_map(|f| {
            let all = polyadic_core::search::find_adjunctions(f, &SearchConfig { limit: None, ..*config }, &clock);
            let w = all.solutions.iter().find_map(|m| check_w_monoid(m).ok())?;
            Some(CatalogRecord::in_semigroup(f, &w, Some(0), all.exhausted.then_some(all.solutions.len() as u64)))
        })
        .collect()
}

pub fn enumerate(kind: EnumerateKind, order: usize, arity: Option<usize>, out: Option<&Path>, ctx: &Context) -> CommandReport {
    let cmd = "enumerate";
    let mut r;
    let records: Vec<CatalogRecord>;
    match kind {
        EnumerateKind::Semigroup => {
            records = attempt!(cmd, semigroup_records(order));
            r = CommandReport::new(cmd, Outcome::Pass);
            r.line(format!("{} semigroups of order {} up to isomorphism", records.len(), order));
        }
        EnumerateKind::Monoid => {
            records = attempt!(cmd, monoid_records(order));
            r = CommandReport::new(cmd, Outcome::Pass);
            r.line(format!("{} monoids of order {} up to isomorphism", records.len(), order));
        }
        EnumerateKind::WMonoid => {
            let census = attempt!(cmd, enumerate_w_monoids(order));
            let agree = census.agree();
            r = CommandReport::new(cmd, if agree { Outcome::Pass } else { Outcome::Fail });
            r.line(format!(
                "{} W-monoids of order {} by filtering monoids, {} by bitranslations; routes agree: {}",
                census.witnesses.len(),
                order,
                census.route_b.len(),
                agree
            ));
            r.set("route_a", json!(census.witnesses.len()));
            r.set("route_b", json!(census.route_b.len()));
            r.set("agree", json!(agree));
            records = census.witnesses.iter().map(CatalogRecord::w_monoid).collect();
        }
        EnumerateKind::Survey => {
            let Some(arity) = arity else {
                return CommandReport::error(cmd, "--kind survey needs --arity");
            };
            let config = ctx.config(None);
            let s = attempt!(cmd, survey_nary(order, arity, &|_| true, &config, &InstantClock::start()));
            r = CommandReport::new(cmd, survey_outcome(&s));
            r.line(format!(
                "{} associative {}-ary classes on {} elements ({} labeled tables)",
                s.associative.classes, arity, order, s.associative.labeled
            ));
            r.line(format!(
                "reducible {}, adjoinable {}, IN {}, undecided {} (classes)",
                s.reducible.classes, s.adjoinable.classes, s.in_semigroups.classes, s.undecided.classes
            ));
            r.line(format!(
                "reducible without adjunction {}, IN classes with a non-W adjunction monoid {}",
                s.reducible_not_adjoinable.classes, s.forward_violations.classes
            ));
            r.set("survey", survey_json(&s));
            records = survey_records(&s, &config);
        }
    }
    r.set("count", json!(records.len()));
    r.set("kind", json!(records.first().map(|x| x.kind.to_string())));
    if let Some(p) = out {
        attempt!(cmd, catalog::emit(&records, p));
        r.line(format!("wrote {} records to {}", records.len(), p.display()));
        r.set("written", json!(p.display().to_string()));
    }
    r
}

pub fn minimal_in(arity: usize, ctx: &Context) -> CommandReport {
    let cmd = "minimal-in";
    let result = attempt!(cmd, minimal_in_semigroup(arity, true, &ctx.config(None), &InstantClock::start()));
    let Some(found) = result else {
        let mut r = CommandReport::new(cmd, Outcome::Fail);
        r.line("no W-monoid within the enumeration cap");
        return r;
    };
    let mut r = CommandReport::new(cmd, Outcome::Pass);
    r.line(format!(
        "least order of a {}-ary IN-semigroup: {} (derived by enumeration)",
        arity, found.order
    ));
    r.line(format!("exemplar: restriction of the W-monoid with a = {}", found.w_monoid.a()));
    for (order, count) in &found.survey_checks {
        r.line(format!("  survey of ternary operations on {} elements: {} IN classes", order, count));
    }
    r.set("order", json!(found.order));
    r.set("record", serde_json::to_value(&found.record).expect("json"));
    r.set("survey_checks", json!(found.survey_checks));
    r
}

pub fn default_timeout() -> Duration {
    crate::clock::timeout_from_env(Duration::from_secs(60))
}

/// Canonical W-monoid used for the minimal-IN exemplar check.
pub fn w4_canonical() -> MonoidDesc {
    canonical_monoid(&polyadic_core::fixtures::w4_monoid())
}
