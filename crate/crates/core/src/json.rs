//! Canonical JSON for triangulations. Keys come out sorted and numbers are
//! plain integers, so equal triangulations serialize to equal bytes.

use num_rational::Ratio;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::annulus::{AnnulusTriangulation, Arc, AsymptoticKind, Boundary, DiscArc, PuncturedDisc, DEFAULT_WINDING_BOUND};
use crate::polygon::TriangulatedPolygon;
use crate::row::QuiddityRow;
use crate::strip::{StripArc, StripTriangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("not JSON: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn field(path: &str, message: impl Into<String>) -> SchemaError {
    SchemaError::Field { path: path.to_string(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    Annulus(AnnulusTriangulation),
    Disc(PuncturedDisc),
    Polygon(TriangulatedPolygon),
    Strip(StripTriangulation),
}

impl From<AnnulusTriangulation> for Surface {
    fn from(t: AnnulusTriangulation) -> Self {
        Surface::Annulus(t)
    }
}

impl From<PuncturedDisc> for Surface {
    fn from(d: PuncturedDisc) -> Self {
        Surface::Disc(d)
    }
}

impl From<TriangulatedPolygon> for Surface {
    fn from(p: TriangulatedPolygon) -> Self {
        Surface::Polygon(p)
    }
}

impl From<StripTriangulation> for Surface {
    fn from(s: StripTriangulation) -> Self {
        Surface::Strip(s)
    }
}

fn boundary_name(b: Boundary) -> &'static str {
    match b {
        Boundary::Outer => "outer",
        Boundary::Inner => "inner",
    }
}

fn annulus_arc(t: &AnnulusTriangulation, arc: &Arc) -> Value {
    match *arc {
        Arc::Peripheral { boundary, from, .. } => json!({
            "kind": "peripheral",
            "boundary": boundary_name(boundary),
            "from": from,
            "to": arc.peripheral_to(t.n, t.m).unwrap(),
        }),
        Arc::Bridging { outer, inner, winding } => {
            json!({"kind": "bridging", "from": outer, "to": inner, "winding": winding})
        }
        Arc::Asymptotic { at, kind: AsymptoticKind::Adic } => json!({"kind": "adic", "at": at}),
        Arc::Asymptotic { at, kind: AsymptoticKind::Pruefer } => json!({"kind": "prufer", "at": at}),
    }
}

fn ratio_string(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_value(s: &Surface) -> Value {
    match s {
        Surface::Annulus(t) => json!({
            "surface": "annulus",
            "n": t.n,
            "m": t.m,
            "winding_bound": t.winding_bound,
            "arcs": t.arcs.iter().map(|a| annulus_arc(t, a)).collect::<Vec<_>>(),
        }),
        Surface::Disc(d) => {
            let arcs: Vec<Value> = d
                .arcs
                .iter()
                .map(|a| match *a {
                    DiscArc::Peripheral { from, span } => json!({
                        "kind": "peripheral",
                        "boundary": "outer",
                        "from": from,
                        "to": (from - 1 + span) % d.n + 1,
                    }),
                    DiscArc::Central { at } => json!({"kind": "central", "at": at}),
                })
                .collect();
            json!({"surface": "disc", "n": d.n, "m": 0, "arcs": arcs})
        }
        Surface::Polygon(p) => {
            let arcs: Vec<Value> =
                p.diagonals.iter().map(|&(u, v)| json!({"kind": "diagonal", "from": u, "to": v})).collect();
            json!({"surface": "polygon", "n": p.n, "m": 0, "arcs": arcs})
        }
        Surface::Strip(t) => {
            let arcs: Vec<Value> = t
                .arcs
                .iter()
                .map(|a| match *a {
                    StripArc::Lower(x, y) => json!({"kind": "peripheral", "boundary": "lower", "from": x, "to": y}),
                    StripArc::Upper(x, y) => json!({"kind": "peripheral", "boundary": "upper", "from": x, "to": y}),
                    StripArc::Bridge { lower, upper } => json!({"kind": "bridging", "from": lower, "to": upper}),
                })
                .collect();
            let row = match &t.row {
                QuiddityRow::Windowed { lo, entries } => json!({"lo": lo, "entries": entries}),
                QuiddityRow::Periodic { entries } => json!({"periodic": entries}),
            };
            json!({
                "surface": "strip",
                "n": t.lower.1 - t.lower.0 + 1,
                "m": t.upper.len(),
                "lower_window": [t.lower.0, t.lower.1],
                "upper": t.upper.iter().map(ratio_string).collect::<Vec<_>>(),
                "core": [t.core.0, t.core.1],
                "spill": t.spill,
                "row": row,
                "arcs": arcs,
            })
        }
    }
}

/// Pretty-printed canonical form with a trailing newline.
pub fn to_json(s: &Surface) -> String {
    let mut out = serde_json::to_string_pretty(&to_value(s)).expect("values always serialize");
    out.push('\n');
    out
}

struct Obj<'a> {
    path: String,
    map: &'a Map<String, Value>,
}

impl<'a> Obj<'a> {
    fn new(path: impl Into<String>, v: &'a Value) -> Result<Self, SchemaError> {
        let path = path.into();
        match v.as_object() {
            Some(map) => Ok(Obj { path, map }),
            None => Err(field(&path, "expected an object")),
        }
    }

    fn at(&self, key: &str) -> String {
        format!("{}.{}", self.path, key)
    }

    fn get(&self, key: &str) -> Result<&'a Value, SchemaError> {
        self.map.get(key).ok_or_else(|| field(&self.at(key), "missing"))
    }

    fn int(&self, key: &str) -> Result<i64, SchemaError> {
        self.get(key)?.as_i64().ok_or_else(|| field(&self.at(key), "expected an integer"))
    }

    fn uint(&self, key: &str) -> Result<usize, SchemaError> {
        let v = self.int(key)?;
        usize::try_from(v).map_err(|_| field(&self.at(key), "expected a nonnegative integer"))
    }

    fn str(&self, key: &str) -> Result<&'a str, SchemaError> {
        self.get(key)?.as_str().ok_or_else(|| field(&self.at(key), "expected a string"))
    }

    fn array(&self, key: &str) -> Result<&'a Vec<Value>, SchemaError> {
        self.get(key)?.as_array().ok_or_else(|| field(&self.at(key), "expected an array"))
    }

    fn pair(&self, key: &str) -> Result<(i64, i64), SchemaError> {
        let a = self.array(key)?;
        match a.as_slice() {
            [x, y] => match (x.as_i64(), y.as_i64()) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(field(&self.at(key), "expected two integers")),
            },
            _ => Err(field(&self.at(key), "expected two integers")),
        }
    }
}

fn parse_ratio(path: &str, v: &Value) -> Result<Ratio<i64>, SchemaError> {
    let s = v.as_str().ok_or_else(|| field(path, "expected a \"p/q\" string"))?;
    let bad = || field(path, format!("bad rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q <= 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

fn span(path: &str, from: usize, to: usize, lo: usize, size: usize) -> Result<usize, SchemaError> {
    if size == 0 || !(lo..lo + size).contains(&from) || !(lo..lo + size).contains(&to) {
        return Err(field(path, format!("endpoint out of range {}..={}", lo, lo + size - 1)));
    }
    let d = (to + size - from) % size;
    Ok(if d == 0 { size } else { d })
}

fn parse_annulus(o: &Obj) -> Result<AnnulusTriangulation, SchemaError> {
    let n = o.uint("n")?;
    let m = o.uint("m")?;
    let bound = match o.map.get("winding_bound") {
        Some(_) => o.int("winding_bound")?,
        None => DEFAULT_WINDING_BOUND,
    };
    let mut arcs = Vec::new();
    for (k, v) in o.array("arcs")?.iter().enumerate() {
        let a = Obj::new(format!("{}[{k}]", o.at("arcs")), v)?;
        let arc = match a.str("kind")? {
            "peripheral" => {
                let (from, to) = (a.uint("from")?, a.uint("to")?);
                match a.str("boundary")? {
                    "outer" => Arc::Peripheral { boundary: Boundary::Outer, from, span: span(&a.path, from, to, 1, n)? },
                    "inner" => {
                        Arc::Peripheral { boundary: Boundary::Inner, from, span: span(&a.path, from, to, n + 1, m)? }
                    }
                    other => return Err(field(&a.at("boundary"), format!("unknown boundary {other:?}"))),
                }
            }
            "bridging" => Arc::Bridging { outer: a.uint("from")?, inner: a.uint("to")?, winding: a.int("winding")? },
            "adic" => Arc::Asymptotic { at: a.uint("at")?, kind: AsymptoticKind::Adic },
            "prufer" => Arc::Asymptotic { at: a.uint("at")?, kind: AsymptoticKind::Pruefer },
            other => return Err(field(&a.at("kind"), format!("unknown arc kind {other:?}"))),
        };
        arcs.push(arc);
    }
    Ok(AnnulusTriangulation::new(n, m, arcs).with_winding_bound(bound))
}

fn parse_disc(o: &Obj) -> Result<PuncturedDisc, SchemaError> {
    let n = o.uint("n")?;
    let mut arcs = Vec::new();
    for (k, v) in o.array("arcs")?.iter().enumerate() {
        let a = Obj::new(format!("{}[{k}]", o.at("arcs")), v)?;
        arcs.push(match a.str("kind")? {
            "peripheral" => {
                let (from, to) = (a.uint("from")?, a.uint("to")?);
                DiscArc::Peripheral { from, span: span(&a.path, from, to, 1, n)? }
            }
            "central" => DiscArc::Central { at: a.uint("at")? },
            other => return Err(field(&a.at("kind"), format!("unknown arc kind {other:?}"))),
        });
    }
    Ok(PuncturedDisc::new(n, arcs))
}

fn parse_polygon(o: &Obj) -> Result<TriangulatedPolygon, SchemaError> {
    let n = o.uint("n")?;
    let mut diagonals = Vec::new();
    for (k, v) in o.array("arcs")?.iter().enumerate() {
        let a = Obj::new(format!("{}[{k}]", o.at("arcs")), v)?;
        if a.str("kind")? != "diagonal" {
            return Err(field(&a.at("kind"), "polygon arcs are diagonals"));
        }
        let (u, v) = (a.uint("from")?, a.uint("to")?);
        diagonals.push((u.min(v), u.max(v)));
    }
    Ok(TriangulatedPolygon { n, diagonals })
}

fn parse_strip(o: &Obj) -> Result<StripTriangulation, SchemaError> {
    let lower = o.pair("lower_window")?;
    let core = o.pair("core")?;
    let upper = o
        .array("upper")?
        .iter()
        .enumerate()
        .map(|(k, v)| parse_ratio(&format!("{}[{k}]", o.at("upper")), v))
        .collect::<Result<Vec<_>, _>>()?;
    let spill = match o.map.get("spill") {
        Some(_) => o.int("spill")?,
        None => 0,
    };
    let r = Obj::new(o.at("row"), o.get("row")?)?;
    let entries = |key: &str| -> Result<Vec<u64>, SchemaError> {
        r.array(key)?
            .iter()
            .map(|v| v.as_u64().filter(|&x| x > 0).ok_or_else(|| field(&r.at(key), "expected positive integers")))
            .collect()
    };
    let row = if r.map.contains_key("periodic") {
        QuiddityRow::periodic(entries("periodic")?)
    } else {
        QuiddityRow::windowed(r.int("lo")?, entries("entries")?)
    }
    .map_err(|e| field(&r.path, e.to_string()))?;
    let mut arcs = Vec::new();
    for (k, v) in o.array("arcs")?.iter().enumerate() {
        let a = Obj::new(format!("{}[{k}]", o.at("arcs")), v)?;
        arcs.push(match a.str("kind")? {
            "peripheral" => match a.str("boundary")? {
                "lower" => StripArc::Lower(a.int("from")?, a.int("to")?),
                "upper" => StripArc::Upper(a.uint("from")?, a.uint("to")?),
                other => return Err(field(&a.at("boundary"), format!("unknown boundary {other:?}"))),
            },
            "bridging" => StripArc::Bridge { lower: a.int("from")?, upper: a.uint("to")? },
            other => return Err(field(&a.at("kind"), format!("unknown arc kind {other:?}"))),
        });
    }
    if core.0 < lower.0 || core.1 > lower.1 {
        return Err(field(&o.at("core"), "core must lie inside lower_window"));
    }
    Ok(StripTriangulation { row, lower, upper, arcs, core, spill })
}

/// Structural parse only; geometric validity is left to the `check` methods.
pub fn from_value(v: &Value) -> Result<Surface, SchemaError> {
    let o = Obj::new("$", v)?;
    match o.str("surface")? {
        "annulus" => parse_annulus(&o).map(Surface::Annulus),
        "disc" => parse_disc(&o).map(Surface::Disc),
        "polygon" => parse_polygon(&o).map(Surface::Polygon),
        "strip" => parse_strip(&o).map(Surface::Strip),
        other => Err(field("$.surface", format!("unknown surface {other:?}"))),
    }
}

pub fn parse(text: &str) -> Result<Surface, SchemaError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SchemaError::Syntax(e.to_string()))?;
    from_value(&v)
}
