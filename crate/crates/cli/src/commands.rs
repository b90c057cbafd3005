use std::fmt::Write;
use std::fs;

use frieze_core::annulus::{disc_to_annulus, realize as realize_annulus, AnnulusTriangulation};
use frieze_core::json::{self, Surface};
use frieze_core::{
    classify as classify_row, count_by_recurrence, count_matchings, entry_recurrence, fragment, realize_polygon,
    realize_strip_with, svg, verify_matching_theorem, MatchingError, MatchingReport, Outcome, QuiddityRow,
    StripError, StripOptions, StripTriangulation, TriangulatedPolygon,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{document, parse_entries, peel_cap, sequence};
use crate::{CliError, Output, OK, REJECTED};

fn done(text: String) -> Result<Output, CliError> {
    Ok(Output { text, code: OK })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn strip_options() -> Result<StripOptions, CliError> {
    Ok(StripOptions { peel_cap: peel_cap()?, ..StripOptions::default() })
}

fn strip_failure(e: StripError) -> CliError {
    match e {
        StripError::AdjacentOnes { .. } | StripError::ZeroEntry { .. } | StripError::RoundLimitExceeded { .. } => {
            CliError::rejected(format!("not a frieze: {e}"))
        }
        other => CliError::data(other.to_string()),
    }
}

fn window_row(window: &str, lo: i64) -> Result<QuiddityRow, CliError> {
    QuiddityRow::windowed(lo, parse_entries(window)?).map_err(|e| CliError::usage(e.to_string()))
}

pub struct GenerateArgs {
    pub seq: Vec<String>,
    pub window: Option<String>,
    pub lo: i64,
    pub depth: i64,
    pub columns: Option<String>,
    pub force: bool,
}

fn parse_columns(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::usage(format!("--columns expects A:B with A <= B, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Rows `d = -2..=depth`; the column for `i` holds `m_{i,i+d}`.
pub fn generate(a: &GenerateArgs) -> Result<Output, CliError> {
    if a.depth < -2 {
        return Err(CliError::usage("--depth must be at least -2"));
    }
    let (row, header, default_cols) = match &a.window {
        Some(w) => {
            let row = window_row(w, a.lo)?;
            if !a.force {
                realize_strip_with(&row, strip_options()?).map_err(strip_failure)?;
            }
            let (lo, hi) = row.window().unwrap();
            let list: Vec<String> = row.entries().iter().map(u64::to_string).collect();
            (row, format!("# quiddity\twindow\tlo={lo}\t{}", list.join(",")), (lo - a.depth.max(0), hi))
        }
        None => {
            if a.seq.is_empty() {
                return Err(CliError::usage("give a sequence or --window"));
            }
            let entries = sequence(&a.seq)?;
            if !a.force {
                let c = classify_row(&entries).map_err(|e| CliError::usage(e.to_string()))?;
                if let Outcome::NotAFrieze { witness } = c.outcome {
                    let at = witness.map(|(i, j)| format!(" (m_{{{i},{j}}} <= 0)")).unwrap_or_default();
                    return Err(CliError::rejected(format!("not a frieze{at}; use --force to tabulate anyway")));
                }
            }
            let n = entries.len() as i64;
            let list: Vec<String> = entries.iter().map(u64::to_string).collect();
            let cols = (1, n * ((8 + n - 1) / n));
            (QuiddityRow::periodic(entries).unwrap(), format!("# quiddity\tperiodic\t{}", list.join(",")), cols)
        }
    };
    let (c0, c1) = match &a.columns {
        Some(s) => parse_columns(s)?,
        None => default_cols,
    };
    let f = fragment(&row, c0..=c1, a.depth);
    let mut out = header;
    out.push('\n');
    out.push_str("d\\i");
    for i in c0..=c1 {
        write!(out, "\t{i}").unwrap();
    }
    out.push('\n');
    for d in f.depths() {
        write!(out, "{d}").unwrap();
        for v in f.row(d).unwrap() {
            write!(out, "\t{v}").unwrap();
        }
        out.push('\n');
    }
    done(out)
}

pub fn classify(seq: &[String]) -> Result<Output, CliError> {
    let entries = sequence(seq)?;
    let c = classify_row(&entries).map_err(|e| CliError::usage(e.to_string()))?;
    let trace = serde_json::to_value(&c.trace).expect("trace serializes");
    let mut v = json!({"shortest_period": c.shortest_period, "trace": trace});
    let code = match &c.outcome {
        Outcome::Finite { polygon_order, .. } => {
            v["outcome"] = json!("finite");
            v["polygon_order"] = json!(polygon_order);
            OK
        }
        Outcome::Infinite { minimal_inner_points } => {
            v["outcome"] = json!("infinite");
            v["minimal_inner_points"] = json!(minimal_inner_points);
            OK
        }
        Outcome::NotAFrieze { witness } => {
            v["outcome"] = json!("not_a_frieze");
            v["witness"] = json!(witness.map(|(i, j)| [i, j]));
            REJECTED
        }
    };
    Ok(Output { text: pretty(&v), code })
}

pub struct RealizeArgs {
    pub seq: Vec<String>,
    pub polygon: bool,
    pub window: Option<String>,
    pub lo: i64,
    pub svg: Option<String>,
    pub winding_bound: Option<i64>,
}

pub fn realize(a: &RealizeArgs) -> Result<Output, CliError> {
    let surface: Surface = match &a.window {
        Some(w) => realize_strip_with(&window_row(w, a.lo)?, strip_options()?).map_err(strip_failure)?.into(),
        None => {
            if a.seq.is_empty() {
                return Err(CliError::usage("give a sequence or --window"));
            }
            let entries = sequence(&a.seq)?;
            let c = classify_row(&entries).map_err(|e| CliError::usage(e.to_string()))?;
            match (c.outcome, a.polygon) {
                (Outcome::NotAFrieze { .. }, _) => return Err(CliError::rejected("not a frieze")),
                (Outcome::Finite { .. }, true) => {
                    realize_polygon(&entries).map_err(|e| CliError::data(e.to_string()))?.into()
                }
                (Outcome::Finite { polygon_order, .. }, false) => {
                    return Err(CliError::usage(format!(
                        "finite frieze of a {polygon_order}-gon; use `realize --polygon`"
                    )))
                }
                (Outcome::Infinite { .. }, true) => {
                    return Err(CliError::usage("infinite frieze; drop --polygon to realize it on an annulus"))
                }
                (Outcome::Infinite { .. }, false) => {
                    let mut t = realize_annulus(&entries).map_err(|e| CliError::data(e.to_string()))?;
                    if let Some(w) = a.winding_bound {
                        t = t.with_winding_bound(w);
                        let report = t.check();
                        if !report.passed() {
                            return Err(CliError::rejected(format!("no realization within winding bound {w}: {report}")));
                        }
                    }
                    t.into()
                }
            }
        }
    };
    if let Some(path) = &a.svg {
        fs::write(path, svg::render(&surface)).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    }
    done(json::to_json(&surface))
}

fn load(file: &str) -> Result<Surface, CliError> {
    json::parse(&document(file)?).map_err(|e| CliError::data(e.to_string()))
}

fn sweep(t: &StripTriangulation, range: (i64, i64), depth: i64, jobs: usize) -> Result<MatchingReport, MatchingError> {
    if jobs <= 1 {
        return verify_matching_theorem(t, range, depth);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let parts: Vec<Result<MatchingReport, MatchingError>> =
        pool.install(|| (range.0..=range.1).into_par_iter().map(|i| verify_matching_theorem(t, (i, i), depth)).collect());
    let mut total = MatchingReport::default();
    for part in parts {
        let part = part?;
        total.checked += part.checked;
        total.recurrence_checked += part.recurrence_checked;
        total.mismatches.extend(part.mismatches);
        total.recurrence_mismatches.extend(part.recurrence_mismatches);
    }
    Ok(total)
}

struct Report {
    text: String,
    failed: bool,
}

impl Report {
    fn line(&mut self, label: &str, ok: bool, detail: impl AsRef<str>) {
        self.failed |= !ok;
        let verdict = if ok { "ok" } else { "FAIL" };
        writeln!(self.text, "{label}: {verdict}{}", detail.as_ref()).unwrap();
    }

    fn matchings(&mut self, r: Result<MatchingReport, MatchingError>) {
        match r {
            Err(e) => self.line("matchings", false, format!(" ({e})")),
            Ok(r) => {
                let mut detail = format!(" ({} pairs", r.checked);
                if r.recurrence_checked > 0 {
                    write!(detail, ", recurrence on {}", r.recurrence_checked).unwrap();
                }
                detail.push(')');
                for m in r.mismatches.iter().chain(&r.recurrence_mismatches) {
                    write!(detail, "\n  ({}, {}): counted {}, frieze {}", m.i, m.j, m.matchings, m.expected).unwrap();
                }
                self.line("matchings", r.passed(), detail);
            }
        }
    }
}

fn join(q: &[u64]) -> String {
    q.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn verify_annulus(rep: &mut Report, t: &AnnulusTriangulation, depth: i64, jobs: usize) {
    let check = t.check();
    if !check.passed() {
        rep.line("triangulation", false, format!("\n  {}", check.to_string().replace('\n', "\n  ")));
        return;
    }
    rep.line("triangulation", true, format!(" (A_{{{},{}}}, {} arcs)", t.n, t.m, t.arcs.len()));
    let q = t.outer_quiddity_unchecked();
    rep.line("quiddity", true, format!(" ({})", join(&q)));
    match classify_row(&q).map(|c| c.outcome) {
        Ok(Outcome::Infinite { minimal_inner_points }) => {
            rep.line("classification", true, format!(" (infinite, minimal inner points {minimal_inner_points})"))
        }
        Ok(other) => rep.line("classification", false, format!(" ({})", other.name())),
        Err(e) => rep.line("classification", false, format!(" ({e})")),
    }
    let n = t.n as i64;
    let copies = 3 + ((depth.max(1) - 1) / n + 1) as usize;
    match StripTriangulation::from_annulus(t, copies) {
        Ok(s) => rep.matchings(sweep(&s, (n, 2 * n - 1), depth, jobs)),
        Err(e) => rep.line("matchings", false, format!(" ({e})")),
    }
}

fn verify_polygon(rep: &mut Report, p: &TriangulatedPolygon) {
    if let Err(e) = p.check() {
        rep.line("triangulation", false, format!(" ({e})"));
        return;
    }
    rep.line("triangulation", true, format!(" ({}-gon, {} diagonals)", p.n, p.diagonals.len()));
    let q = p.quiddity();
    rep.line("quiddity", true, format!(" ({})", join(&q)));
    match classify_row(&q).map(|c| c.outcome) {
        Ok(Outcome::Finite { polygon_order, .. }) => {
            rep.line("classification", polygon_order == p.n, format!(" (finite, polygon order {polygon_order})"))
        }
        Ok(other) => rep.line("classification", false, format!(" ({})", other.name())),
        Err(e) => rep.line("classification", false, format!(" ({e})")),
    }
}

fn verify_strip(rep: &mut Report, t: &StripTriangulation, depth: i64, jobs: usize) {
    if let Err(e) = t.check() {
        rep.line("triangulation", false, format!(" ({e})"));
        return;
    }
    let (lo, hi) = t.core;
    rep.line("triangulation", true, format!(" (strip, core {lo}..{hi}, {} arcs)", t.arcs.len()));
    match t.strip_quiddity(lo, hi) {
        Ok(q) => {
            let bad: Vec<i64> = (lo..=hi).filter(|&i| q[(i - lo) as usize] != t.row.get(i)).collect();
            let detail = match bad.first() {
                None => format!(" ({})", join(&q)),
                Some(&i) => format!(" (a_{i} is {} but the row has {})", q[(i - lo) as usize], t.row.get(i)),
            };
            rep.line("quiddity", bad.is_empty(), detail);
        }
        Err(e) => rep.line("quiddity", false, format!(" ({e})")),
    }
    rep.matchings(sweep(t, (lo, hi), depth, jobs));
}

pub fn verify(file: &str, depth: i64, winding_bound: Option<i64>, jobs: usize) -> Result<Output, CliError> {
    if depth < 0 {
        return Err(CliError::usage("--depth must be nonnegative"));
    }
    let mut rep = Report { text: String::new(), failed: false };
    match load(file)? {
        Surface::Annulus(mut t) => {
            if let Some(w) = winding_bound {
                t = t.with_winding_bound(w);
            }
            verify_annulus(&mut rep, &t, depth, jobs);
        }
        Surface::Disc(d) => match disc_to_annulus(&d) {
            Ok(t) => verify_annulus(&mut rep, &t, depth, jobs),
            Err(e) => rep.line("triangulation", false, format!(" ({e})")),
        },
        Surface::Polygon(p) => verify_polygon(&mut rep, &p),
        Surface::Strip(t) => verify_strip(&mut rep, &t, depth, jobs),
    }
    let code = if rep.failed { REJECTED } else { OK };
    rep.text.push_str(if rep.failed { "verdict: FAIL\n" } else { "verdict: pass\n" });
    Ok(Output { text: rep.text, code })
}

pub fn render(file: &str) -> Result<Output, CliError> {
    done(svg::render(&load(file)?))
}

pub fn oracle(file: &str, i: i64, j: i64) -> Result<Output, CliError> {
    let Surface::Strip(t) = load(file)? else {
        return Err(CliError::data("oracle needs a strip triangulation"));
    };
    let usage = |e: MatchingError| match e {
        MatchingError::BadRange { .. } | MatchingError::Strip(StripError::OutsideCore { .. }) => {
            CliError::usage(e.to_string())
        }
        other => CliError::data(other.to_string()),
    };
    let counted = count_matchings(&t, i, j).map_err(usage)?;
    let recurrence = match count_by_recurrence(&t, i, j) {
        Ok(v) => Some(v),
        Err(MatchingError::LowerPeripheral) => None,
        Err(e) => return Err(usage(e)),
    };
    let entry = entry_recurrence(&t.row, i, j).map_err(|e| CliError::usage(e.to_string()))?;
    let agree = counted == entry && recurrence.as_ref().is_none_or(|r| *r == entry);
    let mut out = String::new();
    writeln!(out, "count_matchings\t{counted}").unwrap();
    match &recurrence {
        Some(r) => writeln!(out, "count_by_recurrence\t{r}").unwrap(),
        None => writeln!(out, "count_by_recurrence\tn/a").unwrap(),
    }
    writeln!(out, "entry_recurrence\t{entry}").unwrap();
    let chain = match &recurrence {
        Some(r) => format!("{counted} = {r} = {entry}"),
        None => format!("{counted} = {entry}"),
    };
    if agree {
        writeln!(out, "{chain}").unwrap();
    } else {
        writeln!(out, "DISAGREE: {}", chain.replace(" = ", " / ")).unwrap();
    }
    Ok(Output { text: out, code: if agree { OK } else { REJECTED } })
}
