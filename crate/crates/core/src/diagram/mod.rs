//! Oriented, weighted spatial-graph diagrams.
//!
//! A diagram is purely combinatorial: edges carry an integer weight and the
//! ordered list of arcs met when walking the edge along its orientation;
//! crossings name the over-arc and the two under-arcs; vertices list their
//! incident arc ends with a local sign (`+1` into the vertex, `-1` out of it).
//! Nothing here checks planarity, so virtual diagrams are representable.

mod random;
mod transform;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use random::{random_diagram, tie_trefoil, RandomDiagramConfig};
pub use transform::{
    contract_edge, mirror, parallelize, reduce_weighting, reverse_all, split_edge, wedge,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i64() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub weight: i64,
    pub arcs: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub sign: Sign,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Incidence {
    pub arc: String,
    pub sign: Sign,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub incident: Vec<Incidence>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Diagram {
    pub edges: Vec<Edge>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rule {
    EmptyId,
    DuplicateEdge,
    DuplicateVertex,
    EmptyEdge,
    ArcInMultipleEdges,
    UnknownArc,
    UnderArcsNotConsecutive,
    ConsecutiveArcsNotJoined,
    BadEdgeStart,
    BadEdgeEnd,
    InteriorArcAtVertex,
}

impl Rule {
    fn describe(self) -> &'static str {
        match self {
            Rule::EmptyId => "empty identifier",
            Rule::DuplicateEdge => "duplicate edge id",
            Rule::DuplicateVertex => "duplicate vertex id",
            Rule::EmptyEdge => "edge has no arcs",
            Rule::ArcInMultipleEdges => "arc in multiple edges",
            Rule::UnknownArc => "unknown arc",
            Rule::UnderArcsNotConsecutive => "crossing under-arcs are not consecutive on one edge",
            Rule::ConsecutiveArcsNotJoined => "consecutive arcs not joined by exactly one crossing",
            Rule::BadEdgeStart => "first arc must leave exactly one vertex (local sign -1)",
            Rule::BadEdgeEnd => "last arc must enter exactly one vertex (local sign +1)",
            Rule::InteriorArcAtVertex => "interior arc listed at a vertex",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub rule: Rule,
    pub subject: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule.describe(), self.subject)
    }
}

/// Every violated structural invariant, with the offending identifier. Empty iff valid.
pub fn validate(d: &Diagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |rule, subject: &str| {
        out.push(Violation {
            rule,
            subject: subject.to_string(),
        })
    };

    let mut edge_ids = HashSet::new();
    let mut arc_owner: HashMap<&str, (usize, usize)> = HashMap::new();
    for (ei, e) in d.edges.iter().enumerate() {
        if e.id.is_empty() {
            push(Rule::EmptyId, "edge");
        }
        if !edge_ids.insert(e.id.as_str()) {
            push(Rule::DuplicateEdge, &e.id);
        }
        if e.arcs.is_empty() {
            push(Rule::EmptyEdge, &e.id);
        }
        for (pos, a) in e.arcs.iter().enumerate() {
            if a.is_empty() {
                push(Rule::EmptyId, &format!("arc in edge {}", e.id));
            }
            if arc_owner.insert(a, (ei, pos)).is_some() {
                push(Rule::ArcInMultipleEdges, a);
            }
        }
    }

    let mut vertex_ids = HashSet::new();
    for v in &d.vertices {
        if v.id.is_empty() {
            push(Rule::EmptyId, "vertex");
        }
        if !vertex_ids.insert(v.id.as_str()) {
            push(Rule::DuplicateVertex, &v.id);
        }
    }

    let mut joins: HashMap<(&str, &str), usize> = HashMap::new();
    for (ci, c) in d.crossings.iter().enumerate() {
        let mut known = true;
        for a in [&c.over, &c.under_in, &c.under_out] {
            if !arc_owner.contains_key(a.as_str()) {
                push(Rule::UnknownArc, &format!("{a} (crossing {ci})"));
                known = false;
            }
        }
        if !known {
            continue;
        }
        let (e_in, p_in) = arc_owner[c.under_in.as_str()];
        let (e_out, p_out) = arc_owner[c.under_out.as_str()];
        if e_in != e_out || p_out != p_in + 1 {
            push(
                Rule::UnderArcsNotConsecutive,
                &format!("crossing {ci} ({} -> {})", c.under_in, c.under_out),
            );
        } else {
            *joins.entry((&c.under_in, &c.under_out)).or_default() += 1;
        }
    }
    for e in &d.edges {
        for w in e.arcs.windows(2) {
            let n = joins
                .get(&(w[0].as_str(), w[1].as_str()))
                .copied()
                .unwrap_or(0);
            if n != 1 {
                push(
                    Rule::ConsecutiveArcsNotJoined,
                    &format!("{} -> {} ({n} crossings)", w[0], w[1]),
                );
            }
        }
    }

    let mut outs: HashMap<&str, usize> = HashMap::new();
    let mut ins: HashMap<&str, usize> = HashMap::new();
    for v in &d.vertices {
        for inc in &v.incident {
            if !arc_owner.contains_key(inc.arc.as_str()) {
                push(Rule::UnknownArc, &format!("{} (vertex {})", inc.arc, v.id));
                continue;
            }
            match inc.sign {
                Sign::Negative => *outs.entry(&inc.arc).or_default() += 1,
                Sign::Positive => *ins.entry(&inc.arc).or_default() += 1,
            }
        }
    }
    for e in &d.edges {
        let last = e.arcs.len().saturating_sub(1);
        for (pos, a) in e.arcs.iter().enumerate() {
            let o = outs.get(a.as_str()).copied().unwrap_or(0);
            let i = ins.get(a.as_str()).copied().unwrap_or(0);
            let want_out = usize::from(pos == 0);
            let want_in = usize::from(pos == last);
            if o != want_out {
                let rule = if pos == 0 {
                    Rule::BadEdgeStart
                } else {
                    Rule::InteriorArcAtVertex
                };
                push(rule, a);
            }
            if i != want_in {
                let rule = if pos == last {
                    Rule::BadEdgeEnd
                } else {
                    Rule::InteriorArcAtVertex
                };
                push(rule, a);
            }
        }
    }
    out
}

pub fn ensure_valid(d: &Diagram) -> Result<()> {
    let report = validate(d);
    if report.is_empty() {
        Ok(())
    } else {
        let msgs: Vec<String> = report.iter().map(ToString::to_string).collect();
        Err(Error::InvalidDiagram(msgs.join("; ")))
    }
}

/// Lookup tables over a valid diagram. Arcs are indexed in canonical column
/// order: edges in input order, arcs in orientation order within each edge.
#[derive(Clone, Debug)]
pub struct ArcIndex {
    pub arcs: Vec<String>,
    pub arc_edge: Vec<usize>,
    pub arc_weight: Vec<i64>,
    index: HashMap<String, usize>,
}

impl ArcIndex {
    pub fn new(d: &Diagram) -> Self {
        let mut arcs = Vec::new();
        let mut arc_edge = Vec::new();
        let mut arc_weight = Vec::new();
        for (ei, e) in d.edges.iter().enumerate() {
            for a in &e.arcs {
                arcs.push(a.clone());
                arc_edge.push(ei);
                arc_weight.push(e.weight);
            }
        }
        let index = arcs
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Self {
            arcs,
            arc_edge,
            arc_weight,
            index,
        }
    }

    pub fn get(&self, arc: &str) -> usize {
        self.index[arc]
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

impl Diagram {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn num_arcs(&self) -> usize {
        self.edges.iter().map(|e| e.arcs.len()).sum()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn with_weights(&self, weights: &[i64]) -> Self {
        assert_eq!(weights.len(), self.edges.len(), "one weight per edge");
        let mut d = self.clone();
        for (e, &w) in d.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        d
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// `(tail, head)` vertex indices of every edge. Requires a valid diagram.
    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        let mut start = HashMap::new();
        let mut end = HashMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            for inc in &v.incident {
                match inc.sign {
                    Sign::Negative => start.insert(inc.arc.as_str(), vi),
                    Sign::Positive => end.insert(inc.arc.as_str(), vi),
                };
            }
        }
        self.edges
            .iter()
            .map(|e| {
                let first = e.arcs.first().expect("valid edge");
                let last = e.arcs.last().expect("valid edge");
                (start[first.as_str()], end[last.as_str()])
            })
            .collect()
    }

    /// Connected components of the underlying graph, counting isolated vertices.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for (a, b) in self.endpoints() {
            uf.union(a, b);
        }
        (0..self.vertices.len())
            .filter(|&i| uf.find(i) == i)
            .count()
    }

    /// Signed weight sum at each vertex (`Σ ε · weight`).
    pub fn vertex_defects(&self) -> Vec<i64> {
        let idx = ArcIndex::new(self);
        self.vertices
            .iter()
            .map(|v| {
                v.incident
                    .iter()
                    .map(|inc| inc.sign.as_i64() * idx.arc_weight[idx.get(&inc.arc)])
                    .sum()
            })
            .collect()
    }
}

/// True iff the directed weight sum vanishes at every vertex.
pub fn is_balanced(d: &Diagram) -> Result<bool> {
    ensure_valid(d)?;
    Ok(d.vertex_defects().iter().all(|&s| s == 0))
}

/// Valid and balanced, or the first vertex where balance fails.
pub fn ensure_balanced(d: &Diagram) -> Result<()> {
    ensure_valid(d)?;
    match d.vertex_defects().iter().position(|&s| s != 0) {
        Some(i) => Err(Error::Unbalanced(d.vertices[i].id.clone())),
        None => Ok(()),
    }
}

/// A lattice basis of balanced weightings (one entry per edge).
///
/// The directed incidence matrix is totally unimodular, so the fundamental
/// cycles of any spanning forest form a basis over the integers.
pub fn balanced_weighting_basis(d: &Diagram) -> Result<Vec<Vec<i64>>> {
    ensure_valid(d)?;
    let ends = d.endpoints();
    let nv = d.vertices.len();
    let mut uf = UnionFind::new(nv);
    let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    let mut cotree = Vec::new();
    for (ei, &(a, b)) in ends.iter().enumerate() {
        if uf.union(a, b) {
            tree_adj[a].push((b, ei));
            tree_adj[b].push((a, ei));
        } else {
            cotree.push(ei);
        }
    }
    let mut basis = Vec::with_capacity(cotree.len());
    for ei in cotree {
        let (tail, head) = ends[ei];
        let mut w = vec![0i64; d.edges.len()];
        w[ei] = 1;
        // close the cycle with the tree path head -> tail
        for (edge, forward) in tree_path(&tree_adj, &ends, head, tail) {
            w[edge] += if forward { 1 } else { -1 };
        }
        basis.push(w);
    }
    Ok(basis)
}

/// Edges on the forest path from `from` to `to`, with whether each is traversed along its orientation.
fn tree_path(
    adj: &[Vec<(usize, usize)>],
    ends: &[(usize, usize)],
    from: usize,
    to: usize,
) -> Vec<(usize, bool)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, e) = prev[cur].expect("endpoints of a cotree edge share a component");
        path.push((e, ends[e] == (p, cur)));
        cur = p;
    }
    path.reverse();
    path
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn smallest_diagram_is_valid() {
        assert!(validate(&loop_diagram(2)).is_empty());
        assert!(validate(&theta([1, 1, -2])).is_empty());
    }

    #[test]
    fn arc_in_two_edges_reported() {
        let mut d = loop_diagram(2);
        d.edges.push(edge("f", 1, &["a1"]));
        let report = validate(&d);
        assert!(report
            .iter()
            .any(|v| v.rule == Rule::ArcInMultipleEdges && v.subject == "a1"));
        assert!(report[0].to_string().contains("arc in multiple edges"));
    }

    #[test]
    fn structural_breaches() {
        let mut d = loop_diagram(1);
        d.edges[0].arcs.push("a2".into());
        let rules: Vec<Rule> = validate(&d).iter().map(|v| v.rule).collect();
        assert!(rules.contains(&Rule::ConsecutiveArcsNotJoined));
        assert!(rules.contains(&Rule::BadEdgeEnd));

        let mut d = loop_diagram(1);
        d.vertices[0].incident.push(inc("zz", 1));
        assert!(validate(&d).iter().any(|v| v.rule == Rule::UnknownArc));

        let mut d = theta([1, 1, -2]);
        d.crossings.push(Crossing {
            over: "p".into(),
            under_in: "q".into(),
            under_out: "r".into(),
            sign: Sign::Positive,
        });
        assert!(validate(&d)
            .iter()
            .any(|v| v.rule == Rule::UnderArcsNotConsecutive));
    }

    #[test]
    fn balance() {
        assert!(is_balanced(&theta([1, 1, -2])).unwrap());
        assert!(!is_balanced(&theta([1, 1, 1])).unwrap());
        for w in [-3, 0, 7] {
            assert!(is_balanced(&loop_diagram(w)).unwrap());
        }
        assert!(matches!(
            ensure_balanced(&theta([1, 1, 1])),
            Err(Error::Unbalanced(v)) if v == "x"
        ));
    }

    #[test]
    fn weighting_basis_ranks() {
        let th = theta([1, 1, -2]);
        let basis = balanced_weighting_basis(&th).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(is_balanced(&th.with_weights(b)).unwrap());
        }
        assert_eq!(
            balanced_weighting_basis(&loop_diagram(1)).unwrap(),
            vec![vec![1]]
        );

        let path = Diagram {
            edges: vec![edge("e1", 0, &["a"]), edge("e2", 0, &["b"])],
            crossings: vec![],
            vertices: vec![
                Vertex {
                    id: "x".into(),
                    incident: vec![inc("a", -1)],
                },
                Vertex {
                    id: "y".into(),
                    incident: vec![inc("a", 1), inc("b", -1)],
                },
                Vertex {
                    id: "z".into(),
                    incident: vec![inc("b", 1)],
                },
            ],
        };
        assert!(balanced_weighting_basis(&path).unwrap().is_empty());
    }

    #[test]
    fn json_shape() {
        let d = loop_diagram(2);
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["vertices"][0]["incident"][0]["sign"], -1);
        assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
        assert!(Diagram::from_json(r#"{"edges":[],"crossings":[{"over":"a","under_in":"b","under_out":"c","sign":2}],"vertices":[]}"#).is_err());
    }
}
