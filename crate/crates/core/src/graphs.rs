//! Interaction graphs of brackettings.
//!
//! Black vertices are the support labels, white vertices the slots, and grey
//! vertices the occurrences of nonlocal generators `phi_j(x_S)`, `|S| > 1`.
//! Every local occurrence `phi_j(x_i)` in a slot contributes one edge of color
//! `j` between `x_i` and the slot's white vertex; every nonlocal occurrence
//! contributes one wavy edge from each of its labels to its grey vertex. In
//! noncommutative mode the edges at a white vertex are numbered by the word
//! order of the slot.
//!
//! Edges are picked in canonical order, so two equal brackettings always give
//! identical graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::algebra::{Label, Mode};
use crate::graphication::{concat, Bracketting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// Index into [`InteractionGraph::black`].
    Black(usize),
    /// Index into [`InteractionGraph::white`].
    White(usize),
    /// Index into [`InteractionGraph::grey`].
    Grey(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Local occurrence, colored by its field index.
    Plain { color: u32 },
    /// Leg of a nonlocal generator.
    Wavy,
    /// Ties a grey vertex to the white vertex of a slot that mixes it with
    /// other generators.
    Attachment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub kind: EdgeKind,
    /// Position among the edges at the white vertex (noncommutative mode).
    pub order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreyVertex {
    pub field: u32,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    pub mode: Mode,
    /// Labels of the black vertices, increasing.
    pub black: Vec<Label>,
    /// Slot index of each white vertex.
    pub white: Vec<usize>,
    pub grey: Vec<GreyVertex>,
    pub edges: Vec<Edge>,
    /// Slots that fall outside the usual drawing rules.
    pub warnings: Vec<String>,
    pub origin: Bracketting,
}

impl InteractionGraph {
    pub fn vertex_count(&self) -> usize {
        self.black.len() + self.white.len() + self.grey.len()
    }

    /// Number of edge endpoints at the black vertex of `label`.
    pub fn black_degree(&self, label: Label) -> usize {
        let Ok(idx) = self.black.binary_search(&label) else {
            return 0;
        };
        self.edges
            .iter()
            .filter(|e| e.from == Vertex::Black(idx) || e.to == Vertex::Black(idx))
            .count()
    }

    fn index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Black(i) => i,
            Vertex::White(i) => self.black.len() + i,
            Vertex::Grey(i) => self.black.len() + self.white.len() + i,
        }
    }

    /// Number of connected components, by breadth-first search.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            let (a, b) = (self.index(e.from), self.index(e.to));
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }
}

/// Draws the interaction graph of `gamma`.
///
/// Slots holding at least one local generator get a white vertex. Nonlocal
/// occurrences sharing a slot with other generators are tied to the slot's
/// white vertex (or, absent one, to the previous grey vertex of the slot) by
/// an attachment edge and reported in `warnings`.
pub fn build_graph(gamma: &Bracketting) -> InteractionGraph {
    let black: Vec<Label> = gamma.support().into_iter().collect();
    let black_of = |l: Label| Vertex::Black(black.binary_search(&l).expect("label in support"));
    let mut white = Vec::new();
    let mut grey = Vec::new();
    let mut edges = Vec::new();
    let mut warnings = Vec::new();

    for (slot_idx, slot) in gamma.slots().iter().enumerate() {
        let factors = slot.factors();
        let white_vertex = if factors.iter().any(|g| g.is_local()) {
            white.push(slot_idx);
            Some(Vertex::White(white.len() - 1))
        } else {
            None
        };
        if factors.len() > 1 && factors.iter().any(|g| !g.is_local()) {
            warnings.push(format!(
                "slot {slot} mixes a nonlocal generator with other factors"
            ));
        }
        let mut local_pos = 0;
        let mut anchor = white_vertex;
        for g in factors {
            if g.is_local() {
                let order = (gamma.mode() == Mode::Noncommutative).then_some(local_pos);
                local_pos += 1;
                edges.push(Edge {
                    from: black_of(g.support()[0]),
                    to: white_vertex.expect("slot with a local factor has a white vertex"),
                    kind: EdgeKind::Plain { color: g.field() },
                    order,
                });
            } else {
                grey.push(GreyVertex {
                    field: g.field(),
                    slot: slot_idx,
                });
                let gv = Vertex::Grey(grey.len() - 1);
                for &l in g.support() {
                    edges.push(Edge {
                        from: black_of(l),
                        to: gv,
                        kind: EdgeKind::Wavy,
                        order: None,
                    });
                }
                if let Some(a) = anchor {
                    edges.push(Edge {
                        from: gv,
                        to: a,
                        kind: EdgeKind::Attachment,
                        order: None,
                    });
                }
                if white_vertex.is_none() {
                    anchor = Some(gv);
                }
            }
        }
    }

    InteractionGraph {
        mode: gamma.mode(),
        black,
        white,
        grey,
        edges,
        warnings,
        origin: gamma.clone(),
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

/// The connected factors `Gamma = Gamma_1 . ... . Gamma_p`, each with its
/// support, ordered by smallest label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub parts: Vec<(Bracketting, BTreeSet<Label>)>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Concatenates the parts back into one bracketting.
    pub fn reassemble(&self, mode: Mode) -> Bracketting {
        self.parts
            .iter()
            .fold(Bracketting::empty(mode), |acc, (b, _)| {
                concat(&acc, b).expect("same mode")
            })
    }
}

/// Components of the hypergraph on `support(gamma)` with one hyperedge per
/// slot.
pub fn connected_components(gamma: &Bracketting) -> ComponentDecomposition {
    let labels: Vec<Label> = gamma.support().into_iter().collect();
    let idx = |l: Label| labels.binary_search(&l).expect("label in support");
    let mut sets = DisjointSet::new(labels.len());
    for slot in gamma.slots() {
        let support: Vec<Label> = slot.support().into_iter().collect();
        for w in support.windows(2) {
            sets.union(idx(w[0]), idx(w[1]));
        }
    }
    let mut groups: BTreeMap<usize, (Vec<_>, BTreeSet<Label>)> = BTreeMap::new();
    for slot in gamma.slots() {
        let first = *slot.support().iter().next().expect("non-unit slot");
        let root = sets.find(idx(first));
        groups.entry(root).or_default().0.push(slot.clone());
    }
    for &l in &labels {
        let root = sets.find(idx(l));
        groups.entry(root).or_default().1.insert(l);
    }
    let mut parts: Vec<(Bracketting, BTreeSet<Label>)> = groups
        .into_values()
        .map(|(slots, support)| {
            (
                Bracketting::new(gamma.mode(), slots).expect("slots of a bracketting"),
                support,
            )
        })
        .collect();
    parts.sort_by_key(|(_, s)| *s.iter().next().expect("nonempty component"));
    ComponentDecomposition { parts }
}

pub fn is_connected(gamma: &Bracketting) -> bool {
    connected_components(gamma).len() == 1
}

fn order_label(mut k: usize) -> String {
    // a, b, ..., z, aa, ab, ...
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

/// Undirected DOT rendering. Nodes are named `b<label>`, `w<slot-index>` and
/// `g<occurrence-index>`.
pub fn to_dot(g: &InteractionGraph) -> String {
    let name = |v: Vertex| match v {
        Vertex::Black(i) => format!("b{}", g.black[i]),
        Vertex::White(i) => format!("w{}", g.white[i]),
        Vertex::Grey(i) => format!("g{i}"),
    };
    let mut out = String::new();
    writeln!(out, "graph interaction {{").unwrap();
    writeln!(out, "  // {}", g.origin).unwrap();
    writeln!(out, "  edge [colorscheme=paired12];").unwrap();
    for &l in &g.black {
        writeln!(out, "  b{l} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"x{l}\"];")
            .unwrap();
    }
    for &s in &g.white {
        writeln!(out, "  w{s} [shape=circle, style=solid, label=\"\"];").unwrap();
    }
    for (i, gv) in g.grey.iter().enumerate() {
        writeln!(
            out,
            "  g{i} [shape=circle, style=filled, fillcolor=gray, label=\"{}\"];",
            gv.field
        )
        .unwrap();
    }
    for e in &g.edges {
        let mut attrs = Vec::new();
        match e.kind {
            EdgeKind::Plain { color } => attrs.push(format!("color=\"{color}\"")),
            EdgeKind::Wavy => attrs.push("style=dashed".to_string()),
            EdgeKind::Attachment => attrs.push("style=dotted".to_string()),
        }
        if let Some(k) = e.order {
            attrs.push(format!("label=\"{}\"", order_label(k)));
        }
        writeln!(
            out,
            "  {} -- {} [{}];",
            name(e.from),
            name(e.to),
            attrs.join(", ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
