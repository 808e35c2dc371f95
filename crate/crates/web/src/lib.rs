//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes plain text in the CLI file formats and
//! returns a JSON string, so the page only needs `JSON.parse`.

use meg_core::reduction::default_copies;
use meg_core::*;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct VerifyView {
    n: usize,
    edges: Vec<[Vertex; 2]>,
    meg: Vec<Vertex>,
    valid: bool,
    unmonitored: Vec<[Vertex; 2]>,
    /// Monitoring pair per edge, `null` when unmonitored.
    witnesses: Vec<Option<[Vertex; 2]>>,
}

#[derive(Serialize)]
struct SolveView {
    meg: Vec<Vertex>,
    forced: Vec<Vertex>,
    size: usize,
}

#[derive(Serialize)]
struct NodeView {
    id: Vertex,
    role: Role,
    label: String,
}

#[derive(Serialize)]
struct ReductionView {
    eta: usize,
    h: usize,
    k: usize,
    n: usize,
    m: usize,
    normalized: bool,
    nodes: Vec<NodeView>,
    edges: Vec<[Vertex; 2]>,
    h_star: usize,
    cover: Vec<usize>,
    /// `L` plus the optimal cover in every copy.
    cover_meg: Vec<Vertex>,
    cover_meg_unmonitored: Vec<[Vertex; 2]>,
    greedy_meg: Vec<Vertex>,
    extracted_meg: Vec<Vertex>,
    extracted_meg_valid: bool,
    extracted_covers: Vec<Vec<usize>>,
}

fn pair(e: &Edge) -> [Vertex; 2] {
    [e.u, e.v]
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn verify_json(graph: &str, meg: &str) -> Result<String, String> {
    let g = Graph::parse_edge_list(graph).map_err(|e| e.to_string())?;
    let m = MegSet::parse(meg).map_err(|e| e.to_string())?;
    let verdict = verify_meg_set(&g, &m).map_err(|e| e.to_string())?;
    let witnesses = g
        .edges()
        .iter()
        .map(|&e| {
            witness_for_edge(&g, &m, e)
                .map(|w| w.map(|w| [w.x, w.y]))
                .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unmonitored = match &verdict {
        Verdict::Valid => Vec::new(),
        Verdict::Invalid { unmonitored } => unmonitored.iter().map(pair).collect(),
    };
    to_json(&VerifyView {
        n: g.vertex_count(),
        edges: g.edges().iter().map(pair).collect(),
        meg: m.vertices().to_vec(),
        valid: verdict.is_valid(),
        unmonitored,
        witnesses,
    })
}

/// Graphs above this size are refused by the exact solver in the browser.
pub const EXACT_LIMIT: usize = 24;

pub fn solve_json(graph: &str, method: &str) -> Result<String, String> {
    let g = Graph::parse_edge_list(graph).map_err(|e| e.to_string())?;
    let m = match method {
        "exact" if g.vertex_count() > EXACT_LIMIT => {
            return Err(format!("exact search is limited to {EXACT_LIMIT} vertices here"))
        }
        "exact" => exact_min_meg(&g, None).map_err(|e| e.to_string())?.expect("no budget"),
        "greedy" => greedy_meg(&g).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown method `{other}`")),
    };
    to_json(&SolveView {
        forced: forced_vertices(&g).map_err(|e| e.to_string())?,
        size: m.len(),
        meg: m.vertices().to_vec(),
    })
}

/// `k = 0` selects the default copy count.
pub fn reduction_json(instance: &str, k: usize) -> Result<String, String> {
    let inst = SetCoverInstance::parse(instance).map_err(|e| e.to_string())?;
    let k = if k == 0 { default_copies(inst.size()) } else { k };
    let layout = build_reduction(&inst, k).map_err(|e| e.to_string())?;
    let g = layout.graph();
    let cover = exact_min_cover(&inst);
    let cover_meg = meg_from_covers(&layout, &vec![cover.clone(); k]).map_err(|e| e.to_string())?;
    let cover_meg_unmonitored = match verify_meg_set(g, &cover_meg).map_err(|e| e.to_string())? {
        Verdict::Valid => Vec::new(),
        Verdict::Invalid { unmonitored } => unmonitored.iter().map(pair).collect(),
    };
    let greedy = greedy_meg(g).map_err(|e| e.to_string())?;
    let ex = extract_covers(&layout, &greedy).map_err(|e| e.to_string())?;
    let nodes = (0..g.vertex_count())
        .map(|v| {
            let role = layout.role_of(v);
            let label = match role {
                Role::Item { i, l } => format!("x{},{}", i + 1, l + 1),
                Role::Set { j, l } => format!("S{},{}", j + 1, l + 1),
                Role::Y { i } => format!("y{}", i + 1),
                Role::YPrime { i } => format!("y'{}", i + 1),
                Role::Z { j } => format!("z{}", j + 1),
                Role::ZPrime { j } => format!("z'{}", j + 1),
            };
            NodeView { id: v, role, label }
        })
        .collect();
    to_json(&ReductionView {
        eta: inst.eta(),
        h: inst.h(),
        k,
        n: g.vertex_count(),
        m: g.edge_count(),
        normalized: inst.is_normalized(),
        nodes,
        edges: g.edges().iter().map(pair).collect(),
        h_star: cover.len(),
        cover,
        cover_meg: cover_meg.vertices().to_vec(),
        cover_meg_unmonitored,
        greedy_meg: greedy.vertices().to_vec(),
        extracted_meg: ex.meg.vertices().to_vec(),
        extracted_meg_valid: ex.meg_valid,
        extracted_covers: ex.covers,
    })
}

pub fn random_graph_text(n: usize, p: f64, seed: u64) -> Result<String, String> {
    let mut rng = meg_core::gen::rng(seed);
    meg_core::gen::connected_gnp(n, p, 100_000, &mut rng)
        .map(|(g, _)| g.to_edge_list())
        .ok_or_else(|| "no connected sample found; raise p".to_string())
}

#[wasm_bindgen]
pub fn verify(graph: &str, meg: &str) -> Result<String, JsValue> {
    verify_json(graph, meg).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve(graph: &str, method: &str) -> Result<String, JsValue> {
    solve_json(graph, method).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reduction(instance: &str, k: usize) -> Result<String, JsValue> {
    reduction_json(instance, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn random_graph(n: usize, p: f64, seed: u32) -> Result<String, JsValue> {
    random_graph_text(n, p, seed as u64).map_err(|e| JsValue::from_str(&e))
}
