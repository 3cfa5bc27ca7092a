//! Plain combinatorial objects — graphs, digraphs, uniform hypergraphs —
//! with a small line-oriented text format and the stock examples the
//! encoders are exercised on.
//!
//! The text formats mirror the structure format: `#` starts a comment,
//! `vertex NAME` introduces a vertex, and `edge A B` / `arc A B` /
//! `hedge A B C …` add an undirected edge, a directed arc, or a hyperedge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fam_core::{CoreError, Result, Vertex};

fn parse_err(line: usize, msg: impl Into<String>) -> CoreError {
    CoreError::Parse {
        line,
        msg: msg.into(),
    }
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') {
        return Err(CoreError::Invalid(format!("bad vertex name `{name}`")));
    }
    Ok(())
}

/// Shared vertex bookkeeping for the three object kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
struct VertexPool {
    names: Vec<String>,
}

impl VertexPool {
    fn new() -> Self {
        VertexPool { names: Vec::new() }
    }

    fn numbered(n: usize) -> Self {
        VertexPool {
            names: (0..n).map(|i| format!("v{i}")).collect(),
        }
    }

    fn add(&mut self, name: impl Into<String>) -> Result<Vertex> {
        let name = name.into();
        check_name(&name)?;
        if self.names.iter().any(|m| *m == name) {
            return Err(CoreError::Invalid(format!("duplicate vertex `{name}`")));
        }
        self.names.push(name);
        Ok((self.names.len() - 1) as Vertex)
    }

    fn fresh(&mut self, base: &str) -> Vertex {
        let mut name = base.to_string();
        while self.names.iter().any(|m| *m == name) {
            name.push('\'');
        }
        self.names.push(name);
        (self.names.len() - 1) as Vertex
    }

    fn lookup(&self, name: &str) -> Result<Vertex> {
        self.names
            .iter()
            .position(|m| m == name)
            .map(|i| i as Vertex)
            .ok_or_else(|| CoreError::UnknownVertex(name.to_string()))
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.names.len() {
            Ok(())
        } else {
            Err(CoreError::UnknownVertex(format!("#{v}")))
        }
    }
}

/// Splits a text into numbered token lines, dropping comments and blanks.
fn token_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let toks: Vec<&str> = stripped.split_whitespace().collect();
            if toks.is_empty() {
                None
            } else {
                Some((i + 1, toks))
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Undirected graphs
// ---------------------------------------------------------------------------

/// Finite simple undirected graph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pool: VertexPool,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Graph {
    /// Empty graph with no vertices.
    pub fn empty() -> Graph {
        Graph {
            pool: VertexPool::new(),
            edges: BTreeSet::new(),
        }
    }

    /// Edgeless graph on `n` vertices named `v0..`.
    pub fn new(n: usize) -> Graph {
        Graph {
            pool: VertexPool::numbered(n),
            edges: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.pool.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.pool.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.pool.names
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Adds a named vertex; the name must be new, non-empty, and free of
    /// whitespace and `#`.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<Vertex> {
        self.pool.add(name)
    }

    /// Adds a vertex named `base`, priming the name with `'` until unused.
    pub fn fresh_vertex(&mut self, base: &str) -> Vertex {
        self.pool.fresh(base)
    }

    /// Adds the undirected edge `{u, v}`; loops are rejected, repeats are
    /// silently kept as one edge.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.pool.check(u)?;
        self.pool.check(v)?;
        if u == v {
            return Err(CoreError::Invalid(format!(
                "loop at `{}`",
                self.name(u)
            )));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.vertices().filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> BTreeSet<Vertex> {
        self.vertices()
            .filter(|&w| self.has_edge(w, u) && self.has_edge(w, v))
            .collect()
    }

    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// All triangles as sorted vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let n = self.n() as Vertex;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if self.has_edge(a, c) && self.has_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    pub fn triangles_containing(&self, v: Vertex) -> Vec<[Vertex; 3]> {
        self.triangles()
            .into_iter()
            .filter(|t| t.contains(&v))
            .collect()
    }

    /// All 4-cliques as sorted quadruples, in lexicographic order.
    pub fn four_cliques(&self) -> Vec<[Vertex; 4]> {
        let n = self.n() as Vertex;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if self.is_clique(&[a, b, c, d]) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Induced subgraph on `set`, keeping vertex names; returns the graph and
    /// the old vertex carried by each new slot.
    pub fn induced(&self, set: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
        let old_of_new: Vec<Vertex> = set.iter().copied().collect();
        let mut g = Graph::empty();
        for &v in &old_of_new {
            g.pool.names.push(self.pool.names[v as usize].clone());
        }
        let slot = |v: Vertex| old_of_new.iter().position(|&o| o == v).unwrap() as Vertex;
        for &(u, v) in &self.edges {
            if set.contains(&u) && set.contains(&v) {
                g.edges.insert((slot(u), slot(v)));
            }
        }
        (g, old_of_new)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                g.edges.insert((u, v));
            }
        }
        g
    }

    /// A single triangle.
    pub fn triangle() -> Graph {
        Graph::complete(3)
    }

    /// Two triangles sharing exactly one vertex: the 5-vertex obstruction.
    /// Vertex `c` is the shared centre.
    pub fn bowtie() -> Graph {
        let mut g = Graph::empty();
        let c = g.add_vertex("c").unwrap();
        let a1 = g.add_vertex("a1").unwrap();
        let a2 = g.add_vertex("a2").unwrap();
        let b1 = g.add_vertex("b1").unwrap();
        let b2 = g.add_vertex("b2").unwrap();
        for (u, v) in [(c, a1), (c, a2), (a1, a2), (c, b1), (c, b2), (b1, b2)] {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// `n` triangles glued along one common base edge (`n ≥ 2`): base
    /// vertices `b0`, `b1` and pairwise non-adjacent tops `t0..`.
    pub fn chimney(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(CoreError::Invalid(
                "a chimney needs at least two triangles".into(),
            ));
        }
        let mut g = Graph::empty();
        let b0 = g.add_vertex("b0")?;
        let b1 = g.add_vertex("b1")?;
        g.add_edge(b0, b1)?;
        for i in 0..n {
            let t = g.add_vertex(format!("t{i}"))?;
            g.add_edge(b0, t)?;
            g.add_edge(b1, t)?;
        }
        Ok(g)
    }

    /// Renders the graph in the `vertex`/`edge` line format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            let _ = writeln!(out, "vertex {}", self.name(v));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "edge {} {}", self.name(u), self.name(v));
        }
        out
    }
}

/// Parses the `vertex`/`edge` line format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g = Graph::empty();
    for (no, toks) in token_lines(text) {
        match toks[0] {
            "vertex" if toks.len() == 2 => {
                g.add_vertex(toks[1]).map_err(|e| parse_err(no, e.to_string()))?;
            }
            "edge" if toks.len() == 3 => {
                let u = g.pool.lookup(toks[1]).map_err(|e| parse_err(no, e.to_string()))?;
                let v = g.pool.lookup(toks[2]).map_err(|e| parse_err(no, e.to_string()))?;
                g.add_edge(u, v).map_err(|e| parse_err(no, e.to_string()))?;
            }
            other => {
                return Err(parse_err(no, format!("unexpected line `{other} …`")));
            }
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Directed graphs
// ---------------------------------------------------------------------------

/// Finite loopless directed graph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pool: VertexPool,
    arcs: BTreeSet<(Vertex, Vertex)>,
}

impl Digraph {
    pub fn empty() -> Digraph {
        Digraph {
            pool: VertexPool::new(),
            arcs: BTreeSet::new(),
        }
    }

    /// Arcless digraph on `n` vertices named `v0..`.
    pub fn new(n: usize) -> Digraph {
        Digraph {
            pool: VertexPool::numbered(n),
            arcs: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.pool.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.pool.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.pool.names
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<Vertex> {
        self.pool.add(name)
    }

    /// Adds the arc `u → v`; self-loops are rejected.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.pool.check(u)?;
        self.pool.check(v)?;
        if u == v {
            return Err(CoreError::Invalid(format!(
                "self-loop at `{}`",
                self.name(u)
            )));
        }
        self.arcs.insert((u, v));
        Ok(())
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.arcs
            .iter()
            .filter(|&&(u, _)| u == v)
            .map(|&(_, w)| w)
            .collect()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arcs.iter().filter(|&&(u, _)| u == v).count()
    }

    /// Induced subdigraph on `set`, keeping names; returns the digraph and
    /// the old vertex carried by each new slot.
    pub fn induced(&self, set: &BTreeSet<Vertex>) -> (Digraph, Vec<Vertex>) {
        let old_of_new: Vec<Vertex> = set.iter().copied().collect();
        let mut g = Digraph::empty();
        for &v in &old_of_new {
            g.pool.names.push(self.pool.names[v as usize].clone());
        }
        let slot = |v: Vertex| old_of_new.iter().position(|&o| o == v).unwrap() as Vertex;
        for &(u, v) in &self.arcs {
            if set.contains(&u) && set.contains(&v) {
                g.arcs.insert((slot(u), slot(v)));
            }
        }
        (g, old_of_new)
    }

    /// The directed cycle `v0 → v1 → … → v0`.
    pub fn cycle(n: usize) -> Digraph {
        let mut g = Digraph::new(n);
        for v in 0..n as Vertex {
            let w = (v + 1) % n as Vertex;
            if v != w {
                g.arcs.insert((v, w));
            }
        }
        g
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            let _ = writeln!(out, "vertex {}", self.name(v));
        }
        for &(u, v) in &self.arcs {
            let _ = writeln!(out, "arc {} {}", self.name(u), self.name(v));
        }
        out
    }
}

/// Parses the `vertex`/`arc` line format.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut g = Digraph::empty();
    for (no, toks) in token_lines(text) {
        match toks[0] {
            "vertex" if toks.len() == 2 => {
                g.add_vertex(toks[1]).map_err(|e| parse_err(no, e.to_string()))?;
            }
            "arc" if toks.len() == 3 => {
                let u = g.pool.lookup(toks[1]).map_err(|e| parse_err(no, e.to_string()))?;
                let v = g.pool.lookup(toks[2]).map_err(|e| parse_err(no, e.to_string()))?;
                g.add_arc(u, v).map_err(|e| parse_err(no, e.to_string()))?;
            }
            other => {
                return Err(parse_err(no, format!("unexpected line `{other} …`")));
            }
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Hypergraphs
// ---------------------------------------------------------------------------

/// Finite hypergraph: edges are sets of at least two distinct vertices.
/// Uniformity is a property checked by consumers, not baked into the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pool: VertexPool,
    edges: BTreeSet<Vec<Vertex>>,
}

impl Hypergraph {
    pub fn empty() -> Hypergraph {
        Hypergraph {
            pool: VertexPool::new(),
            edges: BTreeSet::new(),
        }
    }

    /// Edgeless hypergraph on `n` vertices named `v0..`.
    pub fn new(n: usize) -> Hypergraph {
        Hypergraph {
            pool: VertexPool::numbered(n),
            edges: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.pool.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.pool.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.pool.names
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<Vertex> {
        self.pool.add(name)
    }

    /// Adds a hyperedge on the given distinct vertices (stored sorted).
    pub fn add_hedge(&mut self, verts: &[Vertex]) -> Result<()> {
        for &v in verts {
            self.pool.check(v)?;
        }
        let mut sorted: Vec<Vertex> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() || sorted.len() < 2 {
            return Err(CoreError::Invalid(
                "a hyperedge needs at least two distinct vertices".into(),
            ));
        }
        self.edges.insert(sorted);
        Ok(())
    }

    pub fn edges(&self) -> &BTreeSet<Vec<Vertex>> {
        &self.edges
    }

    /// Induced subhypergraph on `set` (edges fully inside `set`), keeping
    /// names; returns the hypergraph and the old vertex per new slot.
    pub fn induced(&self, set: &BTreeSet<Vertex>) -> (Hypergraph, Vec<Vertex>) {
        let old_of_new: Vec<Vertex> = set.iter().copied().collect();
        let mut g = Hypergraph::empty();
        for &v in &old_of_new {
            g.pool.names.push(self.pool.names[v as usize].clone());
        }
        let slot = |v: Vertex| old_of_new.iter().position(|&o| o == v).unwrap() as Vertex;
        for edge in &self.edges {
            if edge.iter().all(|v| set.contains(v)) {
                g.edges.insert(edge.iter().map(|&v| slot(v)).collect());
            }
        }
        (g, old_of_new)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            let _ = writeln!(out, "vertex {}", self.name(v));
        }
        for edge in &self.edges {
            let names: Vec<&str> = edge.iter().map(|&v| self.name(v)).collect();
            let _ = writeln!(out, "hedge {}", names.join(" "));
        }
        out
    }
}

/// Parses the `vertex`/`hedge` line format.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut g = Hypergraph::empty();
    for (no, toks) in token_lines(text) {
        match toks[0] {
            "vertex" if toks.len() == 2 => {
                g.add_vertex(toks[1]).map_err(|e| parse_err(no, e.to_string()))?;
            }
            "hedge" if toks.len() >= 3 => {
                let verts: Result<Vec<Vertex>> =
                    toks[1..].iter().map(|t| g.pool.lookup(t)).collect();
                let verts = verts.map_err(|e| parse_err(no, e.to_string()))?;
                g.add_hedge(&verts).map_err(|e| parse_err(no, e.to_string()))?;
            }
            other => {
                return Err(parse_err(no, format!("unexpected line `{other} …`")));
            }
        }
    }
    Ok(g)
}
