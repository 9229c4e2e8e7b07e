//! Instance files: JSON documents with a `version` and a `kind` tag.
//!
//! Vertices may be given by index or, when the document lists `vertices`,
//! by name. Strict loading rejects unknown fields; lax loading drops them
//! with a warning on standard error.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use polyflip::box_polytope::{BoxInstance, PcfctInstance};
use polyflip::graph::Graph;
use polyflip::hypergraph::{Hypergraph, Orientation};
use polyflip::polymatroid::SubmodularOracle;

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u64 = 1;

const COMMON_KEYS: &[&str] = &["version", "kind", "comment"];

fn payload_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "hypergraph" | "graph" => &["n", "vertices", "edges"],
        "orientation" => &["heads"],
        "box" => &["a", "b"],
        "pcfct" => &["supplies", "demands"],
        "matroid-test" => &["family", "n", "k", "edges", "a", "b"],
        "set-function" => &["n", "values"],
        "meta" => &[
            "generator",
            "n",
            "m",
            "delta2",
            "diff",
            "graph_n",
            "graph_m",
            "min_vertex_cover",
            "predicted_distance",
            "seed",
        ],
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Lax,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Name(String),
}

/// Vertex count and optional names shared by hypergraph and graph files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexNames {
    n: usize,
    names: Option<Vec<String>>,
}

impl VertexNames {
    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn resolve(&self, r: &VertexRef) -> CliResult<usize> {
        match r {
            VertexRef::Index(i) if *i < self.n => Ok(*i),
            VertexRef::Index(i) => Err(CliError::input(format!("vertex {i} outside 0..{}", self.n))),
            VertexRef::Name(s) => self
                .names
                .as_ref()
                .and_then(|names| names.iter().position(|x| x == s))
                .ok_or_else(|| CliError::input(format!("unknown vertex name {s:?}"))),
        }
    }

    /// A vertex from a command-line argument: a listed name, else an index.
    pub fn parse_arg(&self, arg: &str) -> CliResult<usize> {
        if self.names.as_ref().is_some_and(|names| names.iter().any(|x| x == arg)) {
            return self.resolve(&VertexRef::Name(arg.to_string()));
        }
        match arg.parse::<usize>() {
            Ok(i) => self.resolve(&VertexRef::Index(i)),
            Err(_) => Err(CliError::input(format!("unknown vertex {arg:?}"))),
        }
    }

    fn from_doc(n: Option<usize>, names: Option<Vec<String>>, refs: &[&VertexRef]) -> CliResult<Self> {
        if let Some(names) = &names {
            let mut sorted = names.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(CliError::input("vertex names must be distinct"));
            }
            if n.is_some_and(|n| n != names.len()) {
                return Err(CliError::input("`n` disagrees with the length of `vertices`"));
            }
        }
        let n = match (n, &names) {
            (Some(n), _) => n,
            (None, Some(names)) => names.len(),
            (None, None) => refs
                .iter()
                .map(|r| match r {
                    VertexRef::Index(i) => Ok(i + 1),
                    VertexRef::Name(s) => Err(CliError::input(format!("name {s:?} used without a `vertices` list"))),
                })
                .try_fold(0, |acc, x| x.map(|x| acc.max(x)))?,
        };
        Ok(VertexNames { n, names })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphFile {
    pub hypergraph: Hypergraph,
    pub vertices: VertexNames,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub vertices: VertexNames,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidFamily {
    Uniform { k: usize, n: usize },
    Graphic(Graph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidTest {
    pub family: MatroidFamily,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// A parsed instance of any kind.
#[derive(Debug, Clone)]
pub enum Instance {
    Hypergraph(HypergraphFile),
    Orientation(Vec<VertexRef>),
    Graph(GraphFile),
    Box(BoxInstance),
    Pcfct(PcfctInstance),
    MatroidTest(MatroidTest),
    SetFunction { n: usize, values: Vec<i64> },
    Meta,
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Hypergraph(_) => "hypergraph",
            Instance::Orientation(_) => "orientation",
            Instance::Graph(_) => "graph",
            Instance::Box(_) => "box",
            Instance::Pcfct(_) => "pcfct",
            Instance::MatroidTest(_) => "matroid-test",
            Instance::SetFunction { .. } => "set-function",
            Instance::Meta => "meta",
        }
    }
}

#[derive(Deserialize)]
struct VertexListDoc {
    n: Option<usize>,
    vertices: Option<Vec<String>>,
    edges: Vec<Vec<VertexRef>>,
}

#[derive(Deserialize)]
struct OrientationDoc {
    heads: Vec<VertexRef>,
}

#[derive(Deserialize)]
struct BoxDoc {
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
struct PcfctDoc {
    supplies: Vec<i64>,
    demands: Vec<i64>,
}

#[derive(Deserialize)]
struct MatroidDoc {
    family: String,
    n: usize,
    k: Option<usize>,
    edges: Option<Vec<(usize, usize)>>,
    a: Vec<usize>,
    b: Vec<usize>,
}

#[derive(Deserialize)]
struct SetFunctionDoc {
    n: usize,
    values: Vec<i64>,
}

fn payload<T: DeserializeOwned>(map: Map<String, Value>, origin: &str) -> CliResult<T> {
    serde_json::from_value(Value::Object(map)).map_err(|e| CliError::input(format!("{origin}: {e}")))
}

pub fn parse_str(text: &str, origin: &str, strictness: Strictness) -> CliResult<Instance> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::input(format!("{origin}: {e}")))?;
    let Value::Object(mut map) = value else {
        return Err(CliError::input(format!("{origin}: expected a JSON object")));
    };
    match map.get("version") {
        Some(Value::Number(v)) if v.as_u64() == Some(FORMAT_VERSION) => {}
        Some(other) => return Err(CliError::input(format!("{origin}: unsupported version {other}"))),
        None => return Err(CliError::input(format!("{origin}: missing `version`"))),
    }
    let kind = match map.get("kind") {
        Some(Value::String(k)) => k.clone(),
        _ => return Err(CliError::input(format!("{origin}: missing or non-string `kind`"))),
    };
    let allowed = payload_keys(&kind).ok_or_else(|| CliError::input(format!("{origin}: unknown kind {kind:?}")))?;
    let unknown: Vec<String> = map
        .keys()
        .filter(|k| !COMMON_KEYS.contains(&k.as_str()) && !allowed.contains(&k.as_str()))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        match strictness {
            Strictness::Strict => {
                return Err(CliError::input(format!("{origin}: unknown field(s) {}", unknown.join(", "))))
            }
            Strictness::Lax => {
                eprintln!("warning: {origin}: ignoring unknown field(s) {}", unknown.join(", "));
                for k in &unknown {
                    map.remove(k);
                }
            }
        }
    }
    for k in COMMON_KEYS {
        map.remove(*k);
    }

    Ok(match kind.as_str() {
        "hypergraph" => {
            let doc: VertexListDoc = payload(map, origin)?;
            let refs: Vec<&VertexRef> = doc.edges.iter().flatten().collect();
            let vertices = VertexNames::from_doc(doc.n, doc.vertices, &refs)?;
            let edges = doc
                .edges
                .iter()
                .map(|e| e.iter().map(|r| vertices.resolve(r)).collect::<CliResult<Vec<_>>>())
                .collect::<CliResult<Vec<_>>>()?;
            let hypergraph = Hypergraph::new(vertices.n, edges)?;
            Instance::Hypergraph(HypergraphFile { hypergraph, vertices })
        }
        "graph" => {
            let doc: VertexListDoc = payload(map, origin)?;
            let refs: Vec<&VertexRef> = doc.edges.iter().flatten().collect();
            let vertices = VertexNames::from_doc(doc.n, doc.vertices, &refs)?;
            let mut edges = Vec::new();
            for e in &doc.edges {
                let [u, v] = e.as_slice() else {
                    return Err(CliError::input(format!("{origin}: graph edges need exactly two endpoints")));
                };
                edges.push((vertices.resolve(u)?, vertices.resolve(v)?));
            }
            let graph = Graph::new(vertices.n, edges)?;
            Instance::Graph(GraphFile { graph, vertices })
        }
        "orientation" => Instance::Orientation(payload::<OrientationDoc>(map, origin)?.heads),
        "box" => {
            let doc: BoxDoc = payload(map, origin)?;
            Instance::Box(BoxInstance::new(doc.a, doc.b)?)
        }
        "pcfct" => {
            let doc: PcfctDoc = payload(map, origin)?;
            Instance::Pcfct(PcfctInstance::new(doc.supplies, doc.demands)?)
        }
        "matroid-test" => {
            let doc: MatroidDoc = payload(map, origin)?;
            let family = match (doc.family.as_str(), doc.k, doc.edges) {
                ("uniform", Some(k), None) => MatroidFamily::Uniform { k, n: doc.n },
                ("graphic", None, Some(edges)) => MatroidFamily::Graphic(Graph::new(doc.n, edges)?),
                _ => {
                    return Err(CliError::input(format!(
                        "{origin}: expected family \"uniform\" with `k` or \"graphic\" with `edges`"
                    )))
                }
            };
            Instance::MatroidTest(MatroidTest {
                family,
                a: doc.a,
                b: doc.b,
            })
        }
        "set-function" => {
            let doc: SetFunctionDoc = payload(map, origin)?;
            if doc.n > 20 || doc.values.len() != 1 << doc.n {
                return Err(CliError::input(format!("{origin}: `values` must list all 2^n subsets, n ≤ 20")));
            }
            Instance::SetFunction {
                n: doc.n,
                values: doc.values,
            }
        }
        _ => Instance::Meta,
    })
}

pub fn load(path: &Path, strictness: Strictness) -> CliResult<Instance> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text, &path.display().to_string(), strictness)
}

fn wrong_kind(path: &Path, expected: &str, found: &Instance) -> CliError {
    CliError::input(format!("{}: expected a {expected} file, found {}", path.display(), found.kind()))
}

pub fn load_hypergraph(path: &Path, strictness: Strictness) -> CliResult<HypergraphFile> {
    match load(path, strictness)? {
        Instance::Hypergraph(h) => Ok(h),
        other => Err(wrong_kind(path, "hypergraph", &other)),
    }
}

pub fn load_graph(path: &Path, strictness: Strictness) -> CliResult<GraphFile> {
    match load(path, strictness)? {
        Instance::Graph(g) => Ok(g),
        other => Err(wrong_kind(path, "graph", &other)),
    }
}

pub fn load_orientation(path: &Path, hypergraph: &HypergraphFile, strictness: Strictness) -> CliResult<Orientation> {
    match load(path, strictness)? {
        Instance::Orientation(refs) => {
            let heads = refs
                .iter()
                .map(|r| hypergraph.vertices.resolve(r))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Orientation::new(&hypergraph.hypergraph, heads)?)
        }
        other => Err(wrong_kind(path, "orientation", &other)),
    }
}

pub fn set_function_oracle(n: usize, values: Vec<i64>) -> CliResult<SubmodularOracle> {
    Ok(SubmodularOracle::from_table(n, values)?.with_label("table"))
}

fn document(kind: &str, payload: Value) -> Value {
    let mut map = Map::new();
    map.insert("version".into(), FORMAT_VERSION.into());
    map.insert("kind".into(), kind.into());
    if let Value::Object(fields) = payload {
        map.extend(fields);
    }
    Value::Object(map)
}

pub fn hypergraph_document(hypergraph: &Hypergraph, names: Option<&[String]>) -> Value {
    let mut payload = serde_json::json!({ "n": hypergraph.n() });
    if let Some(names) = names {
        payload["vertices"] = serde_json::json!(names);
    }
    payload["edges"] = serde_json::json!(hypergraph.edges());
    document("hypergraph", payload)
}

pub fn graph_document(graph: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = graph.edges().iter().map(|&(u, v)| [u, v]).collect();
    document("graph", serde_json::json!({ "n": graph.n(), "edges": edges }))
}

pub fn orientation_document(orientation: &Orientation) -> Value {
    document("orientation", serde_json::json!({ "heads": orientation.heads() }))
}

pub fn box_document(inst: &BoxInstance) -> Value {
    document("box", serde_json::json!({ "a": inst.a(), "b": inst.b() }))
}

pub fn meta_document(fields: Value) -> Value {
    document("meta", fields)
}

pub fn write_document(path: &Path, doc: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize") + "\n";
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> CliResult<Instance> {
        parse_str(text, "test", Strictness::Strict)
    }

    #[test]
    fn hypergraph_with_names() {
        let inst = parse(r#"{"version":1,"kind":"hypergraph","vertices":["a","b","c"],"edges":[["a","b"],[2,"b","a"]]}"#)
            .unwrap();
        let Instance::Hypergraph(h) = inst else { panic!() };
        assert_eq!(h.hypergraph.edges(), &[vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(h.vertices.name(2), "c");
        assert_eq!(h.vertices.parse_arg("b").unwrap(), 1);
        assert_eq!(h.vertices.parse_arg("0").unwrap(), 0);
    }

    #[test]
    fn vertex_count_inferred_from_indices() {
        let Instance::Hypergraph(h) = parse(r#"{"version":1,"kind":"hypergraph","edges":[[0,3]]}"#).unwrap() else {
            panic!()
        };
        assert_eq!(h.hypergraph.n(), 4);
    }

    #[test]
    fn strict_and_lax_modes() {
        let text = r#"{"version":1,"kind":"box","a":[1,0],"b":[0,1],"extra":true}"#;
        assert!(matches!(parse(text), Err(CliError::Input(_))));
        assert!(matches!(parse_str(text, "t", Strictness::Lax), Ok(Instance::Box(_))));
    }

    #[test]
    fn malformed_documents() {
        assert!(parse(r#"{"kind":"box","a":[1],"b":[1]}"#).is_err());
        assert!(parse(r#"{"version":2,"kind":"box","a":[1],"b":[1]}"#).is_err());
        assert!(parse(r#"{"version":1,"kind":"tree"}"#).is_err());
        assert!(parse(r#"{"version":1,"kind":"hypergraph","edges":[["x"]]}"#).is_err());
        assert!(parse(r#"{"version":1,"kind":"graph","edges":[[0,1,2]]}"#).is_err());
        assert!(parse(r#"{"version":1,"kind":"set-function","n":2,"values":[0,1]}"#).is_err());
        assert!(parse("[1,2]").is_err());
    }

    #[test]
    fn documents_round_trip() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let doc = hypergraph_document(&h, Some(&names));
        let Instance::Hypergraph(back) = parse(&doc.to_string()).unwrap() else { panic!() };
        assert_eq!(back.hypergraph, h);
        assert_eq!(back.vertices.names, Some(names));

        let b = BoxInstance::new(vec![2, 0], vec![1, 1]).unwrap();
        let Instance::Box(back) = parse(&box_document(&b).to_string()).unwrap() else { panic!() };
        assert_eq!(back, b);

        let g = Graph::path(4);
        let Instance::Graph(back) = parse(&graph_document(&g).to_string()).unwrap() else { panic!() };
        assert_eq!(back.graph, g);
    }

    #[test]
    fn matroid_documents() {
        let Instance::MatroidTest(m) =
            parse(r#"{"version":1,"kind":"matroid-test","family":"uniform","n":4,"k":2,"a":[0,1],"b":[2,3]}"#).unwrap()
        else {
            panic!()
        };
        assert_eq!(m.family, MatroidFamily::Uniform { k: 2, n: 4 });
        assert!(parse(r#"{"version":1,"kind":"matroid-test","family":"uniform","n":4,"a":[],"b":[]}"#).is_err());
    }
}
