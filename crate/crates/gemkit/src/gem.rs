//! Representation, validation, serialization and residue analysis of
//! (n+1)-edge-colored graphs.
//!
//! A graph is stored as one involution array per color: `matchings[c][v]`
//! is the unique `c`-colored neighbour of `v`. This gives O(1) neighbour
//! lookup, which dominates every downstream algorithm. Graphs are
//! immutable after validation; every rewrite produces a fresh value.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// A color in `Δ_n = {0, …, n}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u8);

impl Color {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All colors `0..k` of a `k`-colored graph.
pub fn color_set(num_colors: usize) -> Vec<Color> {
    (0..num_colors as u8).map(Color).collect()
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GemError {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("vertex {vertex} has no {color}-colored edge")]
    MissingEdge { vertex: u32, color: Color },
    #[error("vertex {vertex} has more than one {color}-colored edge")]
    DuplicateEdge { vertex: u32, color: Color },
    #[error("loop edge of color {color} at vertex {vertex}")]
    LoopEdge { vertex: u32, color: Color },
    #[error("color {0} out of range (graph has {1} colors)")]
    ColorOutOfRange(Color, usize),
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(u32, usize),
    #[error("vertex count {0} is not even")]
    OddOrder(usize),
    #[error("graph is empty")]
    Empty,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not connected")]
    NotConnected,
    #[error("{0}")]
    Invalid(String),
}

/// A regular `(n+1)`-edge-colored multigraph on an even vertex set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    /// `matchings[c][v]` = the `c`-colored neighbour of `v`.
    matchings: Vec<Vec<u32>>,
    /// Vertex class (0/1) when the graph is bipartite.
    bipartition: Option<Vec<u8>>,
}

impl std::fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColoredGraph(k={}, order={})",
            self.num_colors(),
            self.order()
        )
    }
}

impl ColoredGraph {
    /// Builds and validates a graph from explicit edges `(color, u, v)`.
    ///
    /// Every vertex must be covered exactly once per color.
    pub fn from_edges(
        num_colors: usize,
        order: usize,
        edges: &[(Color, u32, u32)],
    ) -> Result<Self, GemError> {
        if order == 0 {
            return Err(GemError::Empty);
        }
        if !order.is_multiple_of(2) {
            return Err(GemError::OddOrder(order));
        }
        const UNSET: u32 = u32::MAX;
        let mut matchings = vec![vec![UNSET; order]; num_colors];
        for &(c, u, v) in edges {
            if c.index() >= num_colors {
                return Err(GemError::ColorOutOfRange(c, num_colors));
            }
            for w in [u, v] {
                if w as usize >= order {
                    return Err(GemError::VertexOutOfRange(w, order));
                }
            }
            if u == v {
                return Err(GemError::LoopEdge { vertex: u, color: c });
            }
            let m = &mut matchings[c.index()];
            for w in [u, v] {
                if m[w as usize] != UNSET {
                    return Err(GemError::DuplicateEdge { vertex: w, color: c });
                }
            }
            m[u as usize] = v;
            m[v as usize] = u;
        }
        for (c, m) in matchings.iter().enumerate() {
            for (v, &p) in m.iter().enumerate() {
                if p == UNSET {
                    return Err(GemError::MissingEdge {
                        vertex: v as u32,
                        color: Color(c as u8),
                    });
                }
            }
        }
        let bipartition = two_color(&matchings, order);
        Ok(ColoredGraph {
            matchings,
            bipartition,
        })
    }

    /// Builds a graph directly from involution arrays (used by rewrites).
    pub(crate) fn from_matchings(matchings: Vec<Vec<u32>>) -> Result<Self, GemError> {
        let order = matchings.first().map(|m| m.len()).unwrap_or(0);
        let mut edges = Vec::with_capacity(matchings.len() * order / 2);
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != order {
                return Err(GemError::Invalid("ragged matching arrays".into()));
            }
            for (v, &p) in m.iter().enumerate() {
                if (v as u32) < p {
                    edges.push((Color(c as u8), v as u32, p));
                }
            }
        }
        Self::from_edges(matchings.len(), order, &edges)
    }

    pub fn num_colors(&self) -> usize {
        self.matchings.len()
    }

    /// Number of vertices `2p`.
    pub fn order(&self) -> usize {
        self.matchings[0].len()
    }

    /// `p` = half the order = number of edges per color.
    pub fn half_order(&self) -> usize {
        self.order() / 2
    }

    pub fn colors(&self) -> Vec<Color> {
        color_set(self.num_colors())
    }

    /// The `c`-colored neighbour of `v`.
    pub fn partner(&self, v: u32, c: Color) -> u32 {
        self.matchings[c.index()][v as usize]
    }

    /// Edges of one color as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges_of_color(&self, c: Color) -> Vec<(u32, u32)> {
        let m = &self.matchings[c.index()];
        (0..self.order() as u32)
            .filter(|&v| v < m[v as usize])
            .map(|v| (v, m[v as usize]))
            .collect()
    }

    /// All edges as `(color, u, v)` sorted by `(color, u)`.
    pub fn all_edges(&self) -> Vec<(Color, u32, u32)> {
        let mut out = Vec::with_capacity(self.num_colors() * self.half_order());
        for c in self.colors() {
            for (u, v) in self.edges_of_color(c) {
                out.push((c, u, v));
            }
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    /// Vertex class (0 or 1) in the cached bipartition.
    pub fn vertex_class(&self, v: u32) -> Option<u8> {
        self.bipartition.as_ref().map(|b| b[v as usize])
    }

    pub fn bipartition(&self) -> Option<&[u8]> {
        self.bipartition.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        self.residue_count_all() == 1
    }

    fn residue_count_all(&self) -> usize {
        self.residues(&self.colors()).count
    }

    /// Connected components of the subgraph spanned by `colors`.
    pub fn residues(&self, colors: &[Color]) -> ResidueDecomposition {
        let order = self.order();
        let mut uf = UnionFind::new(order);
        for &c in colors {
            debug_assert!(c.index() < self.num_colors());
            for (v, &p) in self.matchings[c.index()].iter().enumerate() {
                uf.union(v, p as usize);
            }
        }
        let mut comp_of_root = vec![usize::MAX; order];
        let mut components: Vec<Vec<u32>> = Vec::new();
        for v in 0..order {
            let r = uf.find(v);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = components.len();
                components.push(Vec::new());
            }
            components[comp_of_root[r]].push(v as u32);
        }
        components.sort_by_key(|comp| comp[0]);
        ResidueDecomposition {
            colors: colors.iter().copied().collect(),
            count: components.len(),
            components,
        }
    }

    /// `g_{c1,…,ch}`: the number of `{c1,…,ch}`-residues.
    pub fn residue_count(&self, colors: &[Color]) -> usize {
        let order = self.order();
        let mut uf = UnionFind::new(order);
        for &c in colors {
            for (v, &p) in self.matchings[c.index()].iter().enumerate() {
                uf.union(v, p as usize);
            }
        }
        uf.component_count()
    }

    /// `g_ĉ`: residues of the subgraph missing only color `c`.
    pub fn residue_count_hat(&self, c: Color) -> usize {
        let colors: Vec<Color> = self.colors().into_iter().filter(|&x| x != c).collect();
        self.residue_count(&colors)
    }

    /// Relabels colors: color `c` becomes `perm[c]`.
    pub fn relabel_colors(&self, perm: &[u8]) -> Result<ColoredGraph, GemError> {
        if perm.len() != self.num_colors() {
            return Err(GemError::Invalid("color permutation has wrong length".into()));
        }
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.num_colors() as u8).collect::<Vec<_>>() {
            return Err(GemError::Invalid("not a permutation of the color set".into()));
        }
        let mut matchings = vec![Vec::new(); self.num_colors()];
        for (c, m) in self.matchings.iter().enumerate() {
            matchings[perm[c] as usize] = m.clone();
        }
        ColoredGraph::from_matchings(matchings)
    }

    /// Serializes to the GEM text format.
    pub fn to_gem_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gem {} {}", self.num_colors(), self.order());
        for (c, u, v) in self.all_edges() {
            let _ = writeln!(out, "{} {} {}", c, u, v);
        }
        out
    }

    /// Serializes to the JSON mirror format, edges sorted by `(c, u)`.
    pub fn to_json(&self) -> String {
        let doc = GemJson {
            colors: self.num_colors(),
            vertices: self.order(),
            edges: self
                .all_edges()
                .into_iter()
                .map(|(c, u, v)| (c.0, u, v))
                .collect(),
        };
        serde_json::to_string(&doc).expect("gem json serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct GemJson {
    colors: usize,
    vertices: usize,
    edges: Vec<(u8, u32, u32)>,
}

/// Parses the GEM text format, or its JSON mirror when the input starts
/// with `{`.
///
/// Text format: first non-comment line `gem <k> <2p>`, then exactly `k·p`
/// lines `<color> <u> <v>`; `#` starts a comment line.
pub fn parse_gem(input: &str) -> Result<ColoredGraph, GemError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        return parse_gem_json(input);
    }
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Color, u32, u32)> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "gem" {
                    return Err(GemError::Syntax {
                        line,
                        msg: "expected header `gem <colors> <vertices>`".into(),
                    });
                }
                let k = fields[1].parse::<usize>().map_err(|_| GemError::Syntax {
                    line,
                    msg: "invalid color count".into(),
                })?;
                let n = fields[2].parse::<usize>().map_err(|_| GemError::Syntax {
                    line,
                    msg: "invalid vertex count".into(),
                })?;
                header = Some((k, n));
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(GemError::Syntax {
                        line,
                        msg: "expected `<color> <u> <v>`".into(),
                    });
                }
                let parse =
                    |s: &str| -> Result<u32, GemError> {
                        s.parse::<u32>().map_err(|_| GemError::Syntax {
                            line,
                            msg: format!("invalid integer `{}`", s),
                        })
                    };
                let c = parse(fields[0])?;
                if c > u8::MAX as u32 {
                    return Err(GemError::Syntax {
                        line,
                        msg: "color out of range".into(),
                    });
                }
                edges.push((Color(c as u8), parse(fields[1])?, parse(fields[2])?));
            }
        }
    }
    let (k, n) = header.ok_or(GemError::Syntax {
        line: input.lines().count() + 1,
        msg: "missing `gem` header".into(),
    })?;
    ColoredGraph::from_edges(k, n, &edges)
}

fn parse_gem_json(input: &str) -> Result<ColoredGraph, GemError> {
    let doc: GemJson = serde_json::from_str(input).map_err(|e| GemError::Syntax {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let edges: Vec<(Color, u32, u32)> = doc
        .edges
        .iter()
        .map(|&(c, u, v)| (Color(c), u, v))
        .collect();
    ColoredGraph::from_edges(doc.colors, doc.vertices, &edges)
}

/// Connected components of the subgraph spanned by a color subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueDecomposition {
    pub colors: BTreeSet<Color>,
    pub components: Vec<Vec<u32>>,
    pub count: usize,
}

/// Certainty of a residue-level judgement that needs sphere recognition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certainty {
    Yes,
    No,
    Unknown,
}

/// Per-color residue status: is color `c` singular?
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColorStatus {
    /// Every `ĉ`-residue is certified to represent the sphere.
    Ordinary,
    /// Some `ĉ`-residue is certified non-spherical.
    Singular,
    /// Recognition was inconclusive on at least one residue.
    Unknown,
}

/// Classification flags of a colored graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GemClassTag {
    pub bipartite: bool,
    pub connected: bool,
    /// `g_ĉ = 1` for every color (and the graph is connected).
    pub crystallization: bool,
    /// Exactly one `4̂`-residue and every `ĉ`-residue, `c ∈ Δ_3`, ordinary.
    pub in_gs4: Certainty,
    /// Status per color, indexed by color.
    pub color_status: Vec<ColorStatus>,
}

impl GemClassTag {
    /// Colors whose `ĉ`-residue analysis did not certify ordinariness.
    pub fn possibly_singular(&self) -> Vec<Color> {
        self.color_status
            .iter()
            .enumerate()
            .filter(|(_, s)| !matches!(s, ColorStatus::Ordinary))
            .map(|(c, _)| Color(c as u8))
            .collect()
    }
}

/// Classifies a graph: bipartiteness, crystallization flag, singular
/// colors and membership in `G_s^(4)`.
///
/// Sphere recognition of `(k−1)`-colored residues is delegated to
/// [`crate::moves::sphere_reduce`]; 3-colored residues are decided
/// exactly by the genus-0 test.
pub fn classify(g: &ColoredGraph, budget: usize) -> GemClassTag {
    let k = g.num_colors();
    let connected = g.is_connected();
    let mut crystallization = connected;
    let mut color_status = Vec::with_capacity(k);
    for c in g.colors() {
        let hat: Vec<Color> = g.colors().into_iter().filter(|&x| x != c).collect();
        let res = g.residues(&hat);
        if res.count != 1 {
            crystallization = false;
        }
        let mut status = ColorStatus::Ordinary;
        for comp in &res.components {
            match crate::moves::residue_sphere_status(g, &hat, comp, budget) {
                Certainty::Yes => {}
                Certainty::No => {
                    status = ColorStatus::Singular;
                    break;
                }
                Certainty::Unknown => status = ColorStatus::Unknown,
            }
        }
        color_status.push(status);
    }
    let in_gs4 = if k != 5 {
        Certainty::No
    } else {
        let single_hat4 = g.residue_count_hat(Color(4)) == 1;
        if !single_hat4 {
            Certainty::No
        } else {
            let mut verdict = Certainty::Yes;
            for c in 0..4 {
                match color_status[c] {
                    ColorStatus::Ordinary => {}
                    ColorStatus::Singular => {
                        verdict = Certainty::No;
                        break;
                    }
                    ColorStatus::Unknown => verdict = Certainty::Unknown,
                }
            }
            verdict
        }
    };
    GemClassTag {
        bipartite: g.is_bipartite(),
        connected,
        crystallization,
        in_gs4,
        color_status,
    }
}

fn two_color(matchings: &[Vec<u32>], order: usize) -> Option<Vec<u8>> {
    let mut class = vec![u8::MAX; order];
    let mut stack = Vec::new();
    for start in 0..order {
        if class[start] != u8::MAX {
            continue;
        }
        class[start] = 0;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for m in matchings {
                let w = m[v] as usize;
                if class[w] == u8::MAX {
                    class[w] = 1 - class[v];
                    stack.push(w);
                } else if class[w] == class[v] {
                    return None;
                }
            }
        }
    }
    Some(class)
}

/// Plain union-find with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&v| self.find(v) == v).count()
    }
}

/// The unique order-2 `k`-colored graph (the standard sphere gem).
pub fn order_two_graph(num_colors: usize) -> ColoredGraph {
    let edges: Vec<(Color, u32, u32)> = (0..num_colors as u8).map(|c| (Color(c), 0, 1)).collect();
    ColoredGraph::from_edges(num_colors, 2, &edges).expect("order-2 graph is valid")
}
