//! Self-describing JSON inputs and the ranked-set JSON layout.
//!
//! Every input carries a top-level `"kind"`:
//!
//! - `ranked-set`: `{"ground": [...], "rank": [[[labels], value], ...], "mult": [...]}`;
//!   `rank` lists every subset once, `mult` is optional (default 1);
//! - `vectors`: `{"free_rank": d, "torsion": [orders], "vectors": [[...], ...], "labels": [...]}`;
//!   torsion orders may be arbitrary and are normalised;
//! - `graph`: `{"n": 4, "edges": [{"u":0,"v":1,"label":2,"dotted":false}], "orientation": [bools]}`;
//! - `delta`: `{"ground": [...], "feasible": [[...], ...]}`.
//!
//! Numbers may be JSON integers or exact strings such as `"3/2"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::abelian::VectorList;
use crate::builders::{DeltaMatroid, Edge, LabeledGraph};
use crate::error::{Error, Result};
use crate::poly::{parse_rational, rational_to_string, HalfInt};
use crate::ranked::{check_ground_size, RankedSet, SubsetMask};

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    RankedSet(RankedSet),
    Vectors(VectorList),
    Graph { graph: LabeledGraph, orientation: Option<Vec<bool>> },
    Delta(DeltaMatroid),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::RankedSet(_) => "ranked-set",
            Input::Vectors(_) => "vectors",
            Input::Graph { .. } => "graph",
            Input::Delta(_) => "delta",
        }
    }
}

/// Parsing options. `lenient` admits ranked sets with `rank(∅) ≠ 0` and
/// delta-matroids failing exchange, so validators can report them.
#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub lenient: bool,
    pub max_ground: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { lenient: false, max_ground: crate::ranked::MAX_GROUND }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::parse(format!("missing field `{key}`")))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(format!("`{what}` must be an array")))
}

fn as_string(v: &Value, what: &str) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| Error::parse(format!("`{what}` must contain strings")))
}

fn number_text(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(Error::parse(format!("`{what}` must hold integers or exact number strings"))),
    }
}

fn parse_int(v: &Value, what: &str) -> Result<BigInt> {
    let s = number_text(v, what)?;
    s.trim().parse::<BigInt>().map_err(|_| Error::parse(format!("`{what}`: {s:?} is not an integer")))
}

fn parse_labels(v: &Value, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?.iter().map(|x| as_string(x, what)).collect()
}

/// `[[labels], value]` pairs keyed by subset.
fn parse_table(v: &Value, ground: &[String], what: &str) -> Result<BTreeMap<SubsetMask, String>> {
    let mut out = BTreeMap::new();
    for entry in as_array(v, what)? {
        let pair = as_array(entry, what)?;
        if pair.len() != 2 {
            return Err(Error::parse(format!("`{what}` entries are [[labels], value] pairs")));
        }
        let mut mask = SubsetMask::EMPTY;
        for l in parse_labels(&pair[0], what)? {
            let i = ground
                .iter()
                .position(|g| *g == l)
                .ok_or_else(|| Error::parse(format!("`{what}` mentions unknown element {l:?}")))?;
            if mask.contains(i) {
                return Err(Error::parse(format!("`{what}` repeats {l:?} within a subset")));
            }
            mask = mask.with(i);
        }
        if out.insert(mask, number_text(&pair[1], what)?).is_some() {
            return Err(Error::parse(format!("`{what}` lists a subset twice")));
        }
    }
    Ok(out)
}

fn parse_ranked_set(obj: &Map<String, Value>, opts: ParseOptions) -> Result<RankedSet> {
    check_keys(obj, &["kind", "ground", "rank", "mult"])?;
    let ground = parse_labels(field(obj, "ground")?, "ground")?;
    check_ground_size(ground.len(), opts.max_ground)?;
    let n = ground.len();
    let ranks = parse_table(field(obj, "rank")?, &ground, "rank")?;
    if ranks.len() != 1 << n {
        return Err(Error::parse(format!("`rank` must list all {} subsets, found {}", 1u64 << n, ranks.len())));
    }
    let rank = ranks.values().map(|s| s.parse::<HalfInt>()).collect::<Result<Vec<_>>>()?;
    let mult = match obj.get("mult") {
        None => vec![BigRational::one(); 1 << n],
        Some(v) => {
            let table = parse_table(v, &ground, "mult")?;
            if table.len() != 1 << n {
                return Err(Error::parse(format!("`mult` must list all {} subsets", 1u64 << n)));
            }
            table.values().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?
        }
    };
    if opts.lenient {
        RankedSet::new_lenient(ground, rank, mult)
    } else {
        RankedSet::new(ground, rank, mult)
    }
}

fn parse_vectors(obj: &Map<String, Value>, opts: ParseOptions) -> Result<VectorList> {
    check_keys(obj, &["kind", "free_rank", "torsion", "vectors", "labels"])?;
    let free = field(obj, "free_rank")?
        .as_u64()
        .ok_or_else(|| Error::parse("`free_rank` must be a nonnegative integer"))? as usize;
    let orders = match obj.get("torsion") {
        None => Vec::new(),
        Some(v) => as_array(v, "torsion")?.iter().map(|x| parse_int(x, "torsion")).collect::<Result<Vec<_>>>()?,
    };
    let vectors = as_array(field(obj, "vectors")?, "vectors")?
        .iter()
        .map(|v| as_array(v, "vectors")?.iter().map(|x| parse_int(x, "vectors")).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    check_ground_size(vectors.len(), opts.max_ground)?;
    let x = VectorList::from_orders(free, &orders, vectors)?;
    match obj.get("labels") {
        None => Ok(x),
        Some(v) => VectorList::with_labels(x.group().clone(), x.vectors().to_vec(), parse_labels(v, "labels")?),
    }
}

fn parse_graph(obj: &Map<String, Value>, opts: ParseOptions) -> Result<(LabeledGraph, Option<Vec<bool>>)> {
    check_keys(obj, &["kind", "n", "edges", "orientation"])?;
    let n = field(obj, "n")?.as_u64().ok_or_else(|| Error::parse("`n` must be a positive integer"))? as usize;
    let edges: Vec<Edge> = serde_json::from_value(field(obj, "edges")?.clone())
        .map_err(|e| Error::parse(format!("`edges`: {e}")))?;
    check_ground_size(edges.iter().filter(|e| !e.dotted).count(), opts.max_ground)?;
    let orientation = match obj.get("orientation") {
        None => None,
        Some(v) => Some(serde_json::from_value(v.clone()).map_err(|e| Error::parse(format!("`orientation`: {e}")))?),
    };
    Ok((LabeledGraph::new(n, edges)?, orientation))
}

fn parse_delta(obj: &Map<String, Value>, opts: ParseOptions) -> Result<DeltaMatroid> {
    check_keys(obj, &["kind", "ground", "feasible"])?;
    let ground = parse_labels(field(obj, "ground")?, "ground")?;
    check_ground_size(ground.len(), opts.max_ground)?;
    let feasible = as_array(field(obj, "feasible")?, "feasible")?
        .iter()
        .map(|f| parse_labels(f, "feasible"))
        .collect::<Result<Vec<_>>>()?;
    DeltaMatroid::from_labels(ground, &feasible, !opts.lenient)
}

pub fn parse_input(text: &str, opts: ParseOptions) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))?;
    parse_input_value(&v, opts)
}

pub fn parse_input_value(v: &Value, opts: ParseOptions) -> Result<Input> {
    let obj = v.as_object().ok_or_else(|| Error::parse("input must be a JSON object"))?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| Error::parse("`kind` must be a string"))?;
    match kind {
        "ranked-set" => Ok(Input::RankedSet(parse_ranked_set(obj, opts)?)),
        "vectors" => Ok(Input::Vectors(parse_vectors(obj, opts)?)),
        "graph" => {
            let (graph, orientation) = parse_graph(obj, opts)?;
            Ok(Input::Graph { graph, orientation })
        }
        "delta" => Ok(Input::Delta(parse_delta(obj, opts)?)),
        other => Err(Error::parse(format!("unknown kind {other:?}"))),
    }
}

/// Ranked-set JSON with subsets in increasing mask order.
pub fn ranked_set_to_json(m: &RankedSet) -> Value {
    let table = |f: &dyn Fn(SubsetMask) -> String| -> Value {
        m.ground().subsets().map(|a| json!([m.label_set(a), f(a)])).collect()
    };
    json!({
        "kind": "ranked-set",
        "ground": m.labels(),
        "rank": table(&|a| m.rank(a).to_string()),
        "mult": table(&|a| rational_to_string(m.mult(a))),
    })
}

/// Vector-list JSON in invariant factor coordinates.
pub fn vectors_to_json(x: &VectorList) -> Value {
    let ints = |v: &[BigInt]| -> Vec<String> { v.iter().map(|c| c.to_string()).collect() };
    json!({
        "kind": "vectors",
        "free_rank": x.group().free_rank(),
        "torsion": ints(x.group().torsion()),
        "vectors": x.vectors().iter().map(|v| ints(v)).collect::<Vec<_>>(),
        "labels": x.labels(),
    })
}
