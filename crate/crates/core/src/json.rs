//! JSON encodings of the domain types and reports.
//!
//! Points are 1-indexed coordinate arrays. Integers are JSON numbers when
//! they fit in an `i64` and decimal strings otherwise; rationals are
//! strings `"p/q"` (or `"p"` when integral). Graph vertices are 1-indexed
//! on the wire. Object keys come out sorted, so output is byte-stable.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::basis::{BasisVerdict, Certificate, CoordinateDecomposition, Decomposition, TwoColoring};
use crate::constructions::{Family, NamedFamily};
use crate::error::{Error, Result};
use crate::graphs::{GraphVerdict, Hypergraph, HypergraphVerdict, MultiGraph};
use crate::grid::{GridShape, Point, PointSet, WeightFunction};
use crate::rectangles::{RectangleTerm, SimpleFunction};
use crate::search::{ConjectureCheck, ReachabilityReport, SearchReport, Witness};
use crate::{Int, Rational};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what}: expected a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(format!("missing field \"{key}\"")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(perr(format!("unknown field \"{k}\""))),
        None => Ok(()),
    }
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| perr(format!("{path}: expected a non-negative integer, got {v}")))
}

fn as_u32(v: &Value, path: &str) -> Result<u32> {
    u32::try_from(as_u64(v, path)?).map_err(|_| perr(format!("{path}: {v} is too large")))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{path}: expected an array")))
}

pub fn int_value(x: &Int) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => Value::String(x.to_string()),
    }
}

pub fn parse_int(v: &Value, path: &str) -> Result<Int> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(Int::from_str(&n.to_string()).unwrap()),
        Value::String(s) => Int::from_str(s.trim()).map_err(|_| perr(format!("{path}: \"{s}\" is not an integer"))),
        _ => Err(perr(format!("{path}: expected an integer, got {v}"))),
    }
}

pub fn rational_value(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn parse_rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => {
            let bad = || perr(format!("{path}: \"{s}\" is not a rational p/q"));
            let (p, q) = match s.split_once('/') {
                Some((p, q)) => (p.trim(), q.trim()),
                None => (s.trim(), "1"),
            };
            let p = Int::from_str(p).map_err(|_| bad())?;
            let q = Int::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(perr(format!("{path}: zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
        _ => parse_int(v, path).map(Rational::from_integer),
    }
}

// ---------------------------------------------------------------------------
// grids and point sets

pub fn shape_fields(shape: &GridShape, out: &mut Map<String, Value>) {
    out.insert("d".into(), json!(shape.d()));
    match shape.uniform_n() {
        Some(n) => {
            out.insert("n".into(), json!(n));
        }
        None => {
            out.insert("sides".into(), json!(shape.sides()));
        }
    }
}

fn parse_shape(obj: &Map<String, Value>) -> Result<GridShape> {
    let d = as_u64(field(obj, "d")?, "d")? as usize;
    if d == 0 {
        return Err(perr("d: must be at least 1"));
    }
    match (obj.get("n"), obj.get("sides")) {
        (Some(n), None) => {
            let n = as_u32(n, "n")?;
            GridShape::uniform(n, d).map_err(|e| perr(format!("n: {e}")))
        }
        (None, Some(s)) => {
            let sides = as_array(s, "sides")?
                .iter()
                .enumerate()
                .map(|(i, v)| as_u32(v, &format!("sides[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            if sides.len() != d {
                return Err(perr(format!("sides: {} entries for d = {d}", sides.len())));
            }
            GridShape::with_sides(sides).map_err(|e| perr(format!("sides: {e}")))
        }
        (Some(_), Some(_)) => Err(perr("give either \"n\" or \"sides\", not both")),
        (None, None) => Err(perr("missing field \"n\" (or \"sides\")")),
    }
}

fn parse_point(v: &Value, shape: &GridShape, path: &str) -> Result<Point> {
    let coords = as_array(v, path)?;
    if coords.len() != shape.d() {
        return Err(perr(format!("{path}: {} coordinates, expected d = {}", coords.len(), shape.d())));
    }
    let mut c = Vec::with_capacity(coords.len());
    for (a, x) in coords.iter().enumerate() {
        let x = as_u32(x, &format!("{path}[{a}]"))?;
        let side = shape.sides()[a];
        if x == 0 || x > side {
            return Err(perr(format!(
                "{path}[{a}]: coordinate {x} outside 1..={side} (coordinates are 1-indexed)"
            )));
        }
        c.push(x);
    }
    Ok(Point(c))
}

fn parse_points(obj: &Map<String, Value>, shape: &GridShape) -> Result<Vec<Point>> {
    as_array(field(obj, "points")?, "points")?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_point(v, shape, &format!("points[{i}]")))
        .collect()
}

fn duplicate_check(points: &[Point]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if let Some(j) = seen.insert(p.clone(), i) {
            return Err(perr(format!("points[{i}]: duplicates points[{j}] = {p}")));
        }
    }
    Ok(())
}

const SET_FIELDS: &[&str] = &["d", "n", "sides", "points"];
const WEIGHT_FIELDS: &[&str] = &["d", "n", "sides", "points", "values"];

pub fn point_set_from_value(v: &Value) -> Result<PointSet> {
    let obj = object(v, "point set")?;
    reject_unknown(obj, WEIGHT_FIELDS)?;
    let shape = parse_shape(obj)?;
    let points = parse_points(obj, &shape)?;
    duplicate_check(&points)?;
    PointSet::new(shape, points)
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    point_set_from_value(&parse_value(text)?)
}

pub fn point_set_json(m: &PointSet) -> Value {
    let mut out = Map::new();
    shape_fields(m.shape(), &mut out);
    out.insert("points".into(), json!(m.points().iter().map(|p| p.0.clone()).collect::<Vec<_>>()));
    Value::Object(out)
}

fn weights_from_value<V: Clone + Zero + std::ops::Add<Output = V>>(
    v: &Value,
    parse: impl Fn(&Value, &str) -> Result<V>,
) -> Result<WeightFunction<V>> {
    let obj = object(v, "weight function")?;
    reject_unknown(obj, WEIGHT_FIELDS)?;
    let shape = parse_shape(obj)?;
    let points = parse_points(obj, &shape)?;
    duplicate_check(&points)?;
    let values = as_array(field(obj, "values")?, "values")?;
    if values.len() != points.len() {
        return Err(perr(format!("values: {} entries for {} points", values.len(), points.len())));
    }
    let vals = values
        .iter()
        .enumerate()
        .map(|(i, x)| parse(x, &format!("values[{i}]")))
        .collect::<Result<Vec<V>>>()?;
    WeightFunction::from_pairs(shape, points.into_iter().zip(vals).collect())
}

pub fn int_weights_from_value(v: &Value) -> Result<WeightFunction<Int>> {
    weights_from_value(v, parse_int)
}

pub fn rational_weights_from_value(v: &Value) -> Result<WeightFunction<Rational>> {
    weights_from_value(v, parse_rational)
}

pub fn parse_int_weights(text: &str) -> Result<WeightFunction<Int>> {
    int_weights_from_value(&parse_value(text)?)
}

pub fn parse_rational_weights(text: &str) -> Result<WeightFunction<Rational>> {
    rational_weights_from_value(&parse_value(text)?)
}

pub fn int_weights_json(w: &WeightFunction<Int>) -> Value {
    let mut v = point_set_json(w.base());
    v["values"] = Value::Array(w.values().iter().map(int_value).collect());
    v
}

pub fn rational_weights_json(w: &WeightFunction<Rational>) -> Value {
    let mut v = point_set_json(w.base());
    v["values"] = Value::Array(w.values().iter().map(rational_value).collect());
    v
}

/// A set given either as plain points or as a weight function (values ignored).
pub fn set_fields_only(v: &Value) -> Result<Value> {
    let obj = object(v, "point set")?;
    reject_unknown(obj, WEIGHT_FIELDS)?;
    Ok(Value::Object(obj.iter().filter(|(k, _)| SET_FIELDS.contains(&k.as_str())).map(|(k, v)| (k.clone(), v.clone())).collect()))
}

// ---------------------------------------------------------------------------
// basis verdicts and decompositions

pub fn verdict_json(v: &BasisVerdict<Int>, m: &PointSet) -> Value {
    let certificate = match &v.certificate {
        Certificate::Independent { pivot_layers } => json!({
            "kind": "independent",
            "pivot_layers": pivot_layers.iter().map(|l| json!([l.axis, l.value])).collect::<Vec<_>>(),
        }),
        Certificate::Annihilation(f) => json!({ "kind": "annihilation", "function": int_weights_json(f) }),
    };
    json!({
        "basic": v.basic,
        "rank": v.rank,
        "size": m.len(),
        "set": point_set_json(m),
        "certificate": certificate,
    })
}

pub fn verdict_from_value(v: &Value) -> Result<BasisVerdict<Int>> {
    let obj = object(v, "verdict")?;
    let basic = field(obj, "basic")?.as_bool().ok_or_else(|| perr("basic: expected a boolean"))?;
    let rank = as_u64(field(obj, "rank")?, "rank")? as usize;
    let cert = object(field(obj, "certificate")?, "certificate")?;
    let certificate = match field(cert, "kind")?.as_str() {
        Some("independent") => {
            let layers = as_array(field(cert, "pivot_layers")?, "pivot_layers")?
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let pair = as_array(l, &format!("pivot_layers[{i}]"))?;
                    if pair.len() != 2 {
                        return Err(perr(format!("pivot_layers[{i}]: expected [axis, value]")));
                    }
                    Ok(crate::grid::Layer::new(
                        as_u64(&pair[0], "axis")? as usize,
                        as_u32(&pair[1], "value")?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Certificate::Independent { pivot_layers: layers }
        }
        Some("annihilation") => Certificate::Annihilation(int_weights_from_value(field(cert, "function")?)?),
        _ => return Err(perr("certificate.kind: expected \"independent\" or \"annihilation\"")),
    };
    Ok(BasisVerdict { basic, rank, certificate })
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    match d {
        Decomposition::Solved(c) => json!({
            "decomposable": true,
            "tables": c.tables.iter().map(|t| t.iter().map(rational_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        Decomposition::Infeasible { certificate, pairing } => json!({
            "decomposable": false,
            "certificate": int_weights_json(certificate),
            "pairing": rational_value(pairing),
        }),
    }
}

pub fn decomposition_from_value(v: &Value, shape: &GridShape) -> Result<Decomposition> {
    let obj = object(v, "decomposition")?;
    let ok = field(obj, "decomposable")?.as_bool().ok_or_else(|| perr("decomposable: expected a boolean"))?;
    if ok {
        let tables = as_array(field(obj, "tables")?, "tables")?
            .iter()
            .enumerate()
            .map(|(a, t)| {
                as_array(t, &format!("tables[{a}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_rational(x, &format!("tables[{a}][{j}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let fits = tables.len() == shape.d() && tables.iter().zip(shape.sides()).all(|(t, &s)| t.len() == s as usize);
        if !fits {
            return Err(perr("tables: shape does not match the grid"));
        }
        Ok(Decomposition::Solved(CoordinateDecomposition { shape: shape.clone(), tables }))
    } else {
        Ok(Decomposition::Infeasible {
            certificate: int_weights_from_value(field(obj, "certificate")?)?,
            pairing: parse_rational(field(obj, "pairing")?, "pairing")?,
        })
    }
}

pub fn coloring_json(c: &TwoColoring) -> Value {
    match c {
        TwoColoring::Basic => json!({ "basic": true }),
        TwoColoring::Coloring(cs) => json!({
            "basic": false,
            "coloring": cs.iter().map(|(p, c)| json!({ "point": p.0, "color": c.to_string() })).collect::<Vec<_>>(),
        }),
    }
}

// ---------------------------------------------------------------------------
// rectangles

pub fn rectangle_json(t: &RectangleTerm) -> Value {
    let fixed: Map<String, Value> = t.fixed.iter().map(|(a, v)| (a.to_string(), json!(v))).collect();
    json!({
        "axes": [t.axes.0, t.axes.1],
        "values": [[t.values[0].0, t.values[0].1], [t.values[1].0, t.values[1].1]],
        "fixed": fixed,
        "coeff": int_value(&t.coeff),
    })
}

pub fn rectangle_from_value(v: &Value, path: &str) -> Result<RectangleTerm> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["axes", "values", "fixed", "coeff"])?;
    let axes = as_array(field(obj, "axes")?, &format!("{path}.axes"))?;
    if axes.len() != 2 {
        return Err(perr(format!("{path}.axes: expected two axes")));
    }
    let vals = as_array(field(obj, "values")?, &format!("{path}.values"))?;
    if vals.len() != 2 {
        return Err(perr(format!("{path}.values: expected two value pairs")));
    }
    let mut pairs = [(0, 0); 2];
    for (k, pv) in vals.iter().enumerate() {
        let p = as_array(pv, &format!("{path}.values[{k}]"))?;
        if p.len() != 2 {
            return Err(perr(format!("{path}.values[{k}]: expected [a, b]")));
        }
        pairs[k] = (as_u32(&p[0], &format!("{path}.values[{k}][0]"))?, as_u32(&p[1], &format!("{path}.values[{k}][1]"))?);
    }
    let mut fixed = BTreeMap::new();
    if let Some(f) = obj.get("fixed") {
        for (k, x) in object(f, &format!("{path}.fixed"))? {
            let axis: usize = k.parse().map_err(|_| perr(format!("{path}.fixed: key \"{k}\" is not an axis number")))?;
            fixed.insert(axis, as_u32(x, &format!("{path}.fixed.{k}"))?);
        }
    }
    Ok(RectangleTerm {
        axes: (as_u64(&axes[0], &format!("{path}.axes[0]"))? as usize, as_u64(&axes[1], &format!("{path}.axes[1]"))? as usize),
        values: pairs,
        fixed,
        coeff: parse_int(field(obj, "coeff")?, &format!("{path}.coeff"))?,
    })
}

pub fn rectangles_json(shape: &GridShape, terms: &[RectangleTerm]) -> Value {
    let mut out = Map::new();
    shape_fields(shape, &mut out);
    out.insert("terms".into(), Value::Array(terms.iter().map(rectangle_json).collect()));
    Value::Object(out)
}

/// `{"d", "n", "terms": [...]}`.
pub fn rectangles_from_value(v: &Value) -> Result<(GridShape, Vec<RectangleTerm>)> {
    let obj = object(v, "rectangle list")?;
    reject_unknown(obj, &["d", "n", "sides", "terms"])?;
    let shape = parse_shape(obj)?;
    let terms = as_array(field(obj, "terms")?, "terms")?
        .iter()
        .enumerate()
        .map(|(i, t)| rectangle_from_value(t, &format!("terms[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    for (i, t) in terms.iter().enumerate() {
        t.validate(&shape).map_err(|e| perr(format!("terms[{i}]: {e}")))?;
    }
    Ok((shape, terms))
}

pub fn simple_json(s: &SimpleFunction) -> Value {
    json!({
        "plus": [s.vertices[0].0, s.vertices[2].0],
        "minus": [s.vertices[1].0, s.vertices[3].0],
    })
}

// ---------------------------------------------------------------------------
// graphs

fn parse_vertex(v: &Value, n: usize, path: &str) -> Result<usize> {
    let x = as_u64(v, path)? as usize;
    if x == 0 || x > n {
        return Err(perr(format!("{path}: vertex {x} outside 1..={n} (vertices are 1-indexed)")));
    }
    Ok(x - 1)
}

/// `{"vertices": n, "edges": [[u, v], ...], "weights": [...]?}`; the
/// optional `weights` are vertex weights for solving.
pub fn graph_from_value(v: &Value) -> Result<(MultiGraph, Option<Vec<Rational>>)> {
    let obj = object(v, "graph")?;
    reject_unknown(obj, &["vertices", "edges", "weights"])?;
    let n = as_u64(field(obj, "vertices")?, "vertices")? as usize;
    let edges = as_array(field(obj, "edges")?, "edges")?
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let path = format!("edges[{k}]");
            let e = as_array(e, &path)?;
            if e.len() != 2 {
                return Err(perr(format!("{path}: an edge has two endpoints")));
            }
            Ok((parse_vertex(&e[0], n, &format!("{path}[0]"))?, parse_vertex(&e[1], n, &format!("{path}[1]"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = MultiGraph::new(n, edges).map_err(|e| perr(format!("edges: {e}")))?;
    let weights = match obj.get("weights") {
        None => None,
        Some(w) => {
            let w = as_array(w, "weights")?;
            if w.len() != n {
                return Err(perr(format!("weights: {} entries for {n} vertices", w.len())));
            }
            Some(w.iter().enumerate().map(|(i, x)| parse_rational(x, &format!("weights[{i}]"))).collect::<Result<Vec<_>>>()?)
        }
    };
    Ok((g, weights))
}

pub fn hypergraph_from_value(v: &Value) -> Result<Hypergraph> {
    let obj = object(v, "hypergraph")?;
    reject_unknown(obj, &["vertices", "edges"])?;
    let n = as_u64(field(obj, "vertices")?, "vertices")? as usize;
    let edges = as_array(field(obj, "edges")?, "edges")?
        .iter()
        .enumerate()
        .map(|(k, e)| {
            as_array(e, &format!("edges[{k}]"))?
                .iter()
                .enumerate()
                .map(|(i, x)| parse_vertex(x, n, &format!("edges[{k}][{i}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Hypergraph::new(n, edges).map_err(|e| perr(format!("edges: {e}")))
}

pub fn graph_json(g: &MultiGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().map(|&(u, v)| json!([u + 1, v + 1])).collect::<Vec<_>>(),
    })
}

pub fn hypergraph_json(h: &Hypergraph) -> Value {
    json!({
        "vertices": h.vertex_count(),
        "edges": h.edges().iter().map(|e| e.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

pub fn graph_verdict_json(g: &MultiGraph, v: &GraphVerdict) -> Value {
    let mut out = json!({ "basic": v.basic, "graph": graph_json(g) });
    if let Some(c) = &v.bipartite {
        out["bipartite_component"] = json!({ "part_a": one_based(&c.part_a), "part_b": one_based(&c.part_b) });
        out["dependence"] = Value::Array(c.dependence(g.vertex_count()).iter().map(int_value).collect());
    }
    out
}

pub fn hypergraph_verdict_json(h: &Hypergraph, v: &HypergraphVerdict) -> Value {
    let mut out = json!({ "basic": v.basic, "rank": v.rank, "hypergraph": hypergraph_json(h) });
    if let Some(l) = &v.dependence {
        out["dependence"] = Value::Array(l.iter().map(int_value).collect());
    }
    out
}

pub fn int_vector_from_value(v: &Value, path: &str) -> Result<Vec<Int>> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| parse_int(x, &format!("{path}[{i}]"))).collect()
}

pub fn rational_vector_from_value(v: &Value, path: &str) -> Result<Vec<Rational>> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| parse_rational(x, &format!("{path}[{i}]"))).collect()
}

// ---------------------------------------------------------------------------
// families and reports

fn family_params(f: &Family) -> Value {
    match f {
        Family::Cross { n, d } | Family::Staircase { n, d } => json!({ "n": n, "d": d }),
        Family::Unbounded { m } => json!({ "m": m }),
        Family::CrossPlusPoint { n, d, x } => json!({ "n": n, "d": d, "x": x.0 }),
    }
}

pub fn family_json(f: &NamedFamily) -> Value {
    json!({
        "tag": f.tag(),
        "params": family_params(&f.family),
        "set": point_set_json(&f.set),
        "claimed_annihilation": f.claimed_annihilation.as_ref().map(int_weights_json),
    })
}

pub fn witness_json(w: &Witness) -> Value {
    json!({ "set": point_set_json(&w.set), "annihilation": int_weights_json(&w.annihilation) })
}

pub fn conjecture_json(c: &ConjectureCheck) -> Value {
    json!({ "sum_abs": int_value(&c.sum_abs), "rhs": int_value(&c.rhs), "holds": c.holds })
}

pub fn search_report_json(r: &SearchReport) -> Value {
    json!({
        "grid": { "n": r.n, "d": r.d },
        "sizes": [r.sizes.start(), r.sizes.end()],
        "layer_covering": r.layer_covering,
        "mode": r.mode.as_str(),
        "seed": r.seed,
        "budget": r.budget,
        "restarts_used": r.restarts_used,
        "per_size": r.per_size.iter().map(|s| json!({
            "size": s.size,
            "raw_count": s.raw_count,
            "classes": s.classes,
            "conjecture_holds": s.conjecture_holds,
            "conjecture_fails": s.conjecture_fails,
            "witness": s.witness.as_ref().map(witness_json),
        })).collect::<Vec<_>>(),
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "set": point_set_json(&c.set),
            "check": conjecture_json(&c.check),
        })).collect::<Vec<_>>(),
    })
}

pub fn reachability_json(r: &ReachabilityReport) -> Value {
    json!({
        "grid": { "n": r.n, "d": r.d },
        "seed": r.seed,
        "budget": r.budget,
        "realized": r.realized_sizes(),
        "rows": r.rows.iter().map(|row| json!({
            "size": row.size,
            "realized": row.realized,
            "mode": row.mode.as_str(),
            "witness": row.witness.as_ref().map(witness_json),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_round_trip() {
        let text = r#"{"d":3,"n":2,"points":[[2,2,2],[1,1,1],[2,1,1]]}"#;
        let m = parse_point_set(text).unwrap();
        assert_eq!(m.points()[0], Point::new([1, 1, 1]));
        assert_eq!(point_set_from_value(&point_set_json(&m)).unwrap(), m);
        assert_eq!(point_set_json(&m).to_string(), r#"{"d":3,"n":2,"points":[[1,1,1],[2,1,1],[2,2,2]]}"#);
    }

    #[test]
    fn zero_indexed_input_is_rejected() {
        let e = parse_point_set(r#"{"d":2,"n":2,"points":[[0,1]]}"#).unwrap_err();
        assert!(e.to_string().contains("points[0][0]") && e.to_string().contains("1-indexed"), "{e}");
    }

    #[test]
    fn malformed_inputs_name_the_problem() {
        let cases = [
            (r#"{"d":2,"n":2,"points":[[1,1],[1,1]]}"#, "duplicates"),
            (r#"{"d":2,"n":2,"points":[[1,1,1]]}"#, "points[0]"),
            (r#"{"d":2,"points":[]}"#, "\"n\""),
            (r#"{"d":2,"n":2,"points":[],"extra":1}"#, "extra"),
            ("{\"d\":2,\n\"n\":2,", "line 2"),
        ];
        for (text, needle) in cases {
            let e = parse_point_set(text).unwrap_err();
            assert!(matches!(e, Error::Parse(_)));
            assert!(e.to_string().contains(needle), "{e} lacks {needle}");
        }
    }

    #[test]
    fn weights_follow_their_points() {
        let w = parse_int_weights(r#"{"d":2,"n":2,"points":[[2,2],[1,1]],"values":[5,"-7"]}"#).unwrap();
        assert_eq!(w.values(), &[Int::from(-7), Int::from(5)]);
        let r = parse_rational_weights(r#"{"d":1,"n":2,"points":[[1],[2]],"values":["1/2",3]}"#).unwrap();
        assert_eq!(rational_weights_json(&r)["values"], json!(["1/2", "3"]));
        assert!(parse_rational_weights(r#"{"d":1,"n":2,"points":[[1]],"values":["1/0"]}"#).is_err());
    }

    #[test]
    fn big_integers_become_strings() {
        let big = Int::from(i64::MAX) * Int::from(4);
        assert!(int_value(&big).is_string());
        assert_eq!(parse_int(&int_value(&big), "x").unwrap(), big);
    }

    #[test]
    fn rectangle_wire_format() {
        let t = rectangle_from_value(&json!({"axes":[1,3],"values":[[1,2],[1,2]],"fixed":{"2":1},"coeff":-1}), "t").unwrap();
        assert_eq!(t.fixed.get(&2), Some(&1));
        assert_eq!(rectangle_json(&t).to_string(), r#"{"axes":[1,3],"coeff":-1,"fixed":{"2":1},"values":[[1,2],[1,2]]}"#);
    }

    #[test]
    fn graphs_are_one_indexed() {
        let (g, w) = graph_from_value(&json!({"vertices":3,"edges":[[1,2],[2,3],[3,1]],"weights":[1,2,"3"]})).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(w.unwrap().len(), 3);
        assert_eq!(graph_json(&g), json!({"vertices":3,"edges":[[1,2],[2,3],[3,1]]}));
        assert!(graph_from_value(&json!({"vertices":3,"edges":[[0,1]]})).is_err());
        assert!(graph_from_value(&json!({"vertices":3,"edges":[[1,1]]})).is_err());
        let h = hypergraph_from_value(&json!({"vertices":3,"edges":[[1,2,3],[2]]})).unwrap();
        assert_eq!(hypergraph_json(&h), json!({"vertices":3,"edges":[[1,2,3],[2]]}));
    }
}
