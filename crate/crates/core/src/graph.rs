//! Loopless multigraphs, deterministic BFS spanning trees, the canonical
//! low-to-high orientation, and graph6 / edge-list ingestion.

use crate::error::{Error, Result};

/// One record per unordered vertex pair, u < v.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub multiplicity: usize,
}

/// A finite undirected loopless multigraph on vertices 0..n-1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multigraph {
    n: usize,
    edges: Vec<EdgeRecord>,
}

impl Multigraph {
    /// Builds a multigraph from (u, v, multiplicity) triples. Records for the
    /// same pair accumulate. Loops and zero multiplicities are rejected.
    pub fn new(n: usize, triples: &[(usize, usize, usize)]) -> Result<Multigraph> {
        let mut acc: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b, mult) in triples {
            if a == b {
                return Err(Error::GraphParse(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::GraphParse(format!("vertex out of range: {} {}", a, b)));
            }
            if mult == 0 {
                return Err(Error::GraphParse("zero multiplicity".into()));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if acc[u].len() < n {
                acc[u].resize(n, 0);
            }
            acc[u][v] += mult;
        }
        let mut edges = Vec::new();
        for u in 0..n {
            if acc[u].is_empty() {
                continue;
            }
            for v in u + 1..n {
                if acc[u][v] > 0 {
                    edges.push(EdgeRecord { u, v, multiplicity: acc[u][v] });
                }
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        Ok(Multigraph { n, edges })
    }

    pub fn simple(n: usize, pairs: &[(usize, usize)]) -> Result<Multigraph> {
        let triples: Vec<(usize, usize, usize)> = pairs.iter().map(|&(u, v)| (u, v, 1)).collect();
        Multigraph::new(n, &triples)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Total edge count m, multiplicities included.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    /// Number of underlying (simple) edges.
    pub fn underlying_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_records(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn max_multiplicity(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity).max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.multiplicity == 1)
    }

    /// The underlying simple graph.
    pub fn underlying(&self) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord { u: e.u, v: e.v, multiplicity: 1 })
                .collect(),
        }
    }

    /// Neighbor lists over the underlying graph, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0).len() == self.n
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        let mut out = Vec::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            out.push(u);
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        out
    }

    /// Vertex sets of connected components, each sorted, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if !seen[s] {
                let mut c = self.component_of(s);
                c.sort_unstable();
                for &v in &c {
                    seen[v] = true;
                }
                comps.push(c);
            }
        }
        comps
    }

    /// Induced sub-multigraph on `vertices` (relabeled 0..len-1 in the given
    /// sorted order).
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| EdgeRecord { u: index[e.u], v: index[e.v], multiplicity: e.multiplicity })
            .collect();
        Multigraph { n: vertices.len(), edges }
    }

    /// Cycle rank m' - n + c of the underlying graph (non-tree edge count).
    pub fn cycle_rank(&self) -> usize {
        self.underlying_edge_count() + self.components().len() - self.n
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.iter().position(|e| e.u == u && e.v == v)
    }
}

/// An orientation of the underlying graph: one (tail, head) arc per
/// underlying edge, parallel to `edge_records()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

/// Orients every underlying edge from its lower-indexed endpoint to its
/// higher-indexed endpoint.
pub fn canonical_orientation(g: &Multigraph) -> Orientation {
    Orientation { arcs: g.edge_records().iter().map(|e| (e.u, e.v)).collect() }
}

/// BFS spanning tree rooted at vertex 0, neighbors visited in increasing
/// index order.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    /// Indices into the graph's underlying edge list.
    pub edges: Vec<usize>,
    /// parent[v] = None for the root.
    pub parent: Vec<Option<usize>>,
    /// BFS visitation order; order[0] is the root.
    pub order: Vec<usize>,
}

impl SpanningTree {
    pub fn contains_edge(&self, edge_index: usize) -> bool {
        self.edges.contains(&edge_index)
    }
}

pub fn spanning_tree(g: &Multigraph) -> Result<SpanningTree> {
    if g.vertex_count() == 0 {
        return Err(Error::Disconnected);
    }
    let t = bfs_tree_from(g, 0);
    if t.order.len() != g.vertex_count() {
        return Err(Error::Disconnected);
    }
    Ok(t)
}

/// BFS forest: one BFS tree per component, roots at the smallest vertex of
/// each component. For connected graphs this is exactly `spanning_tree`.
pub fn spanning_forest(g: &Multigraph) -> SpanningTree {
    let mut edges = Vec::new();
    let mut parent = vec![None; g.vertex_count()];
    let mut order = Vec::new();
    let mut seen = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if !seen[s] {
            let t = bfs_tree_from(g, s);
            for &v in &t.order {
                seen[v] = true;
            }
            edges.extend(t.edges);
            order.extend(t.order);
            for (v, p) in t.parent.iter().enumerate() {
                if p.is_some() {
                    parent[v] = *p;
                }
            }
        }
    }
    SpanningTree { edges, parent, order }
}

fn bfs_tree_from(g: &Multigraph, root: usize) -> SpanningTree {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut parent = vec![None; g.vertex_count()];
    let mut order = Vec::new();
    let mut edges = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    seen[root] = true;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                edges.push(g.edge_index(u, v).expect("adjacency edge exists"));
                queue.push_back(v);
            }
        }
    }
    SpanningTree { edges, parent, order }
}

/// Checks that `tree` is a spanning tree of `g` (edge indices valid, acyclic,
/// spanning).
pub fn validate_spanning_tree(g: &Multigraph, tree: &SpanningTree) -> Result<()> {
    let n = g.vertex_count();
    if tree.edges.len() + 1 != n {
        return Err(Error::NotSpanningTree);
    }
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while uf[root] != root {
            root = uf[root];
        }
        let mut cur = x;
        while uf[cur] != root {
            let next = uf[cur];
            uf[cur] = root;
            cur = next;
        }
        root
    }
    for &ei in &tree.edges {
        let e = g.edge_records().get(ei).ok_or(Error::NotSpanningTree)?;
        let (ru, rv) = (find(&mut uf, e.u), find(&mut uf, e.v));
        if ru == rv {
            return Err(Error::NotSpanningTree);
        }
        uf[ru] = rv;
    }
    Ok(())
}

/// Builds a spanning tree from explicit unordered edge pairs (the CLI
/// `--tree-edges` override). The parent array / order are derived by BFS over
/// the tree edges only.
pub fn tree_from_edges(g: &Multigraph, pairs: &[(usize, usize)]) -> Result<SpanningTree> {
    let mut edges = Vec::new();
    for &(u, v) in pairs {
        let ei = g.edge_index(u, v).ok_or(Error::NotSpanningTree)?;
        edges.push(ei);
    }
    edges.sort_unstable();
    edges.dedup();
    let restricted = Multigraph {
        n: g.vertex_count(),
        edges: edges.iter().map(|&ei| g.edge_records()[ei]).collect(),
    };
    let t = bfs_tree_from(&restricted, 0);
    if t.order.len() != g.vertex_count() || edges.len() + 1 != g.vertex_count() {
        return Err(Error::NotSpanningTree);
    }
    // Remap the restricted graph's edge indices back into g's.
    let mapped = t
        .edges
        .iter()
        .map(|&rei| {
            let e = restricted.edges[rei];
            g.edge_index(e.u, e.v).unwrap()
        })
        .collect();
    let tree = SpanningTree { edges: mapped, parent: t.parent, order: t.order };
    validate_spanning_tree(g, &tree)?;
    Ok(tree)
}

/// Raises the multiplicity of every non-tree underlying edge to 1 + extra,
/// leaving tree edges untouched (the parallel-edge construction used to lower
/// per-edge covering degrees).
pub fn add_parallel_edges(g: &Multigraph, tree: &SpanningTree, extra: usize) -> Result<Multigraph> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    validate_spanning_tree(g, tree)?;
    let edges = g
        .edge_records()
        .iter()
        .enumerate()
        .map(|(i, e)| EdgeRecord {
            u: e.u,
            v: e.v,
            multiplicity: if tree.contains_edge(i) { 1 } else { 1 + extra },
        })
        .collect();
    Ok(Multigraph { n: g.vertex_count(), edges })
}

// graph6: offset-63 sextets, upper triangle in column-major order.

fn graph6_size(bytes: &[u8]) -> Result<(usize, usize)> {
    if bytes.is_empty() {
        return Err(Error::GraphParse("empty graph6 string".into()));
    }
    if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte form for n >= 258048; outside the supported range.
            return Err(Error::GraphParse("graph6 order too large".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::GraphParse("truncated graph6 long-form header".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Error::GraphParse(format!("byte {b} out of graph6 range")));
            }
            n = (n << 6) | (b as usize - 63);
        }
        Ok((n, 4))
    } else {
        let b = bytes[0];
        if !(63..=126).contains(&b) {
            return Err(Error::GraphParse(format!("byte {b} out of graph6 range")));
        }
        Ok((b as usize - 63, 1))
    }
}

/// Parses a simple graph in graph6 format.
pub fn parse_graph6(text: &str) -> Result<Multigraph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let trimmed = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
    let bytes = trimmed.as_bytes();
    let (n, header) = graph6_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() != nbytes {
        return Err(Error::GraphParse(format!(
            "graph6 body has {} bytes, expected {}",
            body.len(),
            nbytes
        )));
    }
    let mut pairs = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::GraphParse(format!("byte {byte} out of graph6 range")));
            }
            let value = byte - 63;
            if (value >> (5 - bit % 6)) & 1 == 1 {
                pairs.push((i, j));
            }
            bit += 1;
            if bit >= nbits {
                break 'outer;
            }
        }
    }
    // Padding bits must be zero.
    for tail in nbits..nbytes * 6 {
        let byte = body[tail / 6] - 63;
        if (byte >> (5 - tail % 6)) & 1 == 1 {
            return Err(Error::GraphParse("nonzero padding bits".into()));
        }
    }
    Multigraph::simple(n, &pairs)
}

/// Encodes a simple graph in graph6 format.
pub fn encode_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    } else {
        return Err(Error::GraphParse("graph6 order too large".into()));
    }
    let mut adj = vec![false; n * n];
    for e in g.edge_records() {
        adj[e.u * n + e.v] = true;
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut acc = 0u8;
    let mut filled = 0;
    let mut emitted = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(adj[i * n + j]);
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
            emitted += 1;
        }
    }
    debug_assert_eq!(emitted, nbits);
    if filled > 0 {
        acc <<= 6 - filled;
        out.push(63 + acc);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses the edge-list text format: lines "u v [mult]", 0-based vertex
/// indices, repeated pairs accumulating multiplicity. Blank lines and
/// #-comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut triples = Vec::new();
    let mut max_v = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 3 {
            return Err(Error::GraphParse(format!("line {}: expected 'u v [mult]'", lineno + 1)));
        }
        let parse = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| Error::GraphParse(format!("line {}: bad token '{t}'", lineno + 1)))
        };
        let u = parse(toks[0])?;
        let v = parse(toks[1])?;
        if u == v {
            return Err(Error::GraphParse(format!("line {}: loop {u} {u}", lineno + 1)));
        }
        let mult = if toks.len() == 3 { parse(toks[2])? } else { 1 };
        if mult == 0 {
            return Err(Error::GraphParse(format!("line {}: zero multiplicity", lineno + 1)));
        }
        max_v = max_v.max(u).max(v);
        triples.push((u, v, mult));
    }
    if triples.is_empty() {
        return Err(Error::GraphParse("no edges in edge list".into()));
    }
    Multigraph::new(max_v + 1, &triples)
}
