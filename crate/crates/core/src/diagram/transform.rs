//! Diagram-level operations: mirror image, orientation reversal, weight
//! reduction, edge contraction, parallel bundles and vertex wedges.

use std::collections::HashMap;

use num_integer::Integer;

use super::{ensure_valid, ArcIndex, Crossing, Diagram, Edge, Incidence, Sign, Vertex};
use crate::error::{Error, Result};

/// Reflection of the projection plane: every crossing changes sign and every
/// vertex sees its incident arcs in the opposite order. Arcs, edges and
/// weights keep their labels.
pub fn mirror(d: &Diagram) -> Diagram {
    let mut m = d.clone();
    for c in &mut m.crossings {
        c.sign = c.sign.flip();
    }
    for v in &mut m.vertices {
        v.incident.reverse();
    }
    m
}

/// Reverses every edge, realized as negating every weight.
pub fn reverse_all(d: &Diagram) -> Diagram {
    let mut r = d.clone();
    for e in &mut r.edges {
        e.weight = -e.weight;
    }
    r
}

/// Divides all weights by their gcd `g` and returns `(reduced, g)`.
pub fn reduce_weighting(d: &Diagram) -> Result<(Diagram, i64)> {
    ensure_valid(d)?;
    let g = d.edges.iter().fold(0i64, |acc, e| acc.gcd(&e.weight));
    if g == 0 {
        return Err(Error::TrivialWeighting);
    }
    let mut r = d.clone();
    for e in &mut r.edges {
        e.weight /= g;
    }
    Ok((r, g))
}

/// Contracts a single-arc, crossing-free edge joining two distinct vertices.
///
/// With the tail's list `P b Q` and the head's list `R b S`, the merged vertex
/// (keeping the tail's id) lists `P S R Q`.
pub fn contract_edge(d: &Diagram, edge_id: &str) -> Result<Diagram> {
    ensure_valid(d)?;
    let ei = d
        .edge_index(edge_id)
        .ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
    let edge = &d.edges[ei];
    if edge.arcs.len() != 1 {
        return Err(Error::NotContractible(format!(
            "edge {edge_id} has {} arcs",
            edge.arcs.len()
        )));
    }
    let arc = &edge.arcs[0];
    if d.crossings.iter().any(|c| &c.over == arc) {
        return Err(Error::NotContractible(format!(
            "edge {edge_id} passes over a crossing"
        )));
    }
    let (tail, head) = d.endpoints()[ei];
    if tail == head {
        return Err(Error::NotContractible(format!("edge {edge_id} is a loop")));
    }

    let find = |list: &[Incidence], sign: Sign| {
        list.iter()
            .position(|inc| &inc.arc == arc && inc.sign == sign)
            .expect("endpoint incidence present in a valid diagram")
    };
    let x = &d.vertices[tail].incident;
    let y = &d.vertices[head].incident;
    let px = find(x, Sign::Negative);
    let py = find(y, Sign::Positive);
    let merged: Vec<Incidence> = x[..px]
        .iter()
        .chain(&y[py + 1..])
        .chain(&y[..py])
        .chain(&x[px + 1..])
        .cloned()
        .collect();

    let mut out = d.clone();
    out.edges.remove(ei);
    out.vertices[tail].incident = merged;
    out.vertices.remove(head);
    Ok(out)
}

/// Replaces every edge by `n` parallel copies: the first `r` keep the weight,
/// the remaining `n - r` carry the negated weight (reversed orientation).
pub fn parallelize(d: &Diagram, n: usize, r: usize) -> Result<Diagram> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "bundle size n must be positive".into(),
        ));
    }
    if r > n {
        return Err(Error::InvalidArgument(format!("r = {r} exceeds n = {n}")));
    }
    ensure_valid(d)?;
    let copies: Vec<Vec<i64>> = d
        .edges
        .iter()
        .map(|e| {
            (0..n)
                .map(|j| if j < r { e.weight } else { -e.weight })
                .collect()
        })
        .collect();
    Ok(bundle(d, &copies))
}

/// Replaces one edge of weight `w` by `|w|` parallel edges of weight `±1`.
pub fn split_edge(d: &Diagram, edge_id: &str) -> Result<Diagram> {
    ensure_valid(d)?;
    let ei = d
        .edge_index(edge_id)
        .ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
    let w = d.edges[ei].weight;
    if w == 0 {
        return Err(Error::InvalidArgument(format!(
            "edge {edge_id} has weight 0"
        )));
    }
    let copies: Vec<Vec<i64>> = d
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if i == ei {
                vec![w.signum(); w.unsigned_abs() as usize]
            } else {
                vec![e.weight]
            }
        })
        .collect();
    Ok(bundle(d, &copies))
}

fn copy_name(base: &str, n: usize, j: usize) -> String {
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}#{j}")
    }
}

fn mid_name(base: &str, n: usize, j: usize, s: usize) -> String {
    format!("{}/{s}", copy_name(base, n, j))
}

/// Replaces edge `i` by `copies[i].len()` parallel copies with the listed weights.
///
/// Copy `j` runs beside the original on a fixed side. Where an under-bundle
/// meets an over-bundle every under copy passes beneath all over copies,
/// which splits it into extra arcs; at vertices the copies of an edge occupy
/// consecutive slots.
fn bundle(d: &Diagram, copies: &[Vec<i64>]) -> Diagram {
    let idx = ArcIndex::new(d);
    let width = |arc: &str| copies[idx.arc_edge[idx.get(arc)]].len();
    let after: HashMap<&str, &Crossing> = d
        .crossings
        .iter()
        .map(|c| (c.under_in.as_str(), c))
        .collect();

    let mut edges = Vec::new();
    for (ei, e) in d.edges.iter().enumerate() {
        let n = copies[ei].len();
        for j in 1..=n {
            let mut arcs = Vec::new();
            for (pos, a) in e.arcs.iter().enumerate() {
                arcs.push(copy_name(a, n, j));
                if pos + 1 < e.arcs.len() {
                    let over_width = width(&after[a.as_str()].over);
                    arcs.extend((1..over_width).map(|s| mid_name(a, n, j, s)));
                }
            }
            edges.push(Edge {
                id: copy_name(&e.id, n, j),
                weight: copies[ei][j - 1],
                arcs,
            });
        }
    }

    let mut crossings = Vec::new();
    for c in &d.crossings {
        let nu = width(&c.under_in);
        let no = width(&c.over);
        let over_order: Vec<usize> = match c.sign {
            Sign::Positive => (1..=no).rev().collect(),
            Sign::Negative => (1..=no).collect(),
        };
        for j in 1..=nu {
            let mut seq = vec![copy_name(&c.under_in, nu, j)];
            seq.extend((1..no).map(|s| mid_name(&c.under_in, nu, j, s)));
            seq.push(copy_name(&c.under_out, nu, j));
            for (s, &l) in over_order.iter().enumerate() {
                crossings.push(Crossing {
                    over: copy_name(&c.over, no, l),
                    under_in: seq[s].clone(),
                    under_out: seq[s + 1].clone(),
                    sign: c.sign,
                });
            }
        }
    }

    let vertices = d
        .vertices
        .iter()
        .map(|v| {
            let mut incident = Vec::new();
            for inc in &v.incident {
                let n = width(&inc.arc);
                let order: Vec<usize> = match inc.sign {
                    Sign::Negative => (1..=n).collect(),
                    Sign::Positive => (1..=n).rev().collect(),
                };
                incident.extend(order.into_iter().map(|j| Incidence {
                    arc: copy_name(&inc.arc, n, j),
                    sign: inc.sign,
                }));
            }
            Vertex {
                id: v.id.clone(),
                incident,
            }
        })
        .collect();

    Diagram {
        edges,
        crossings,
        vertices,
    }
}

fn prefixed(d: &Diagram, p: &str) -> Diagram {
    let name = |s: &str| format!("{p}{s}");
    Diagram {
        edges: d
            .edges
            .iter()
            .map(|e| Edge {
                id: name(&e.id),
                weight: e.weight,
                arcs: e.arcs.iter().map(|a| name(a)).collect(),
            })
            .collect(),
        crossings: d
            .crossings
            .iter()
            .map(|c| Crossing {
                over: name(&c.over),
                under_in: name(&c.under_in),
                under_out: name(&c.under_out),
                sign: c.sign,
            })
            .collect(),
        vertices: d
            .vertices
            .iter()
            .map(|v| Vertex {
                id: name(&v.id),
                incident: v
                    .incident
                    .iter()
                    .map(|i| Incidence {
                        arc: name(&i.arc),
                        sign: i.sign,
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Joins two diagrams at a vertex with no crossings between them.
///
/// Identifiers get the prefixes `1:` and `2:`; the joined vertex keeps the
/// first diagram's (prefixed) id and lists `v1`'s entries followed by `v2`'s.
pub fn wedge(d1: &Diagram, v1: &str, d2: &Diagram, v2: &str) -> Result<Diagram> {
    ensure_valid(d1)?;
    ensure_valid(d2)?;
    let i1 = d1
        .vertex_index(v1)
        .ok_or_else(|| Error::UnknownVertex(v1.to_string()))?;
    let i2 = d2
        .vertex_index(v2)
        .ok_or_else(|| Error::UnknownVertex(v2.to_string()))?;
    let mut a = prefixed(d1, "1:");
    let mut b = prefixed(d2, "2:");
    let joined = b.vertices.remove(i2);
    a.vertices[i1].incident.extend(joined.incident);
    a.edges.extend(b.edges);
    a.crossings.extend(b.crossings);
    a.vertices.extend(b.vertices);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{ensure_balanced, validate};
    use super::*;

    fn one_crossing() -> Diagram {
        // a loop whose single edge passes under itself once
        Diagram {
            edges: vec![edge("e", 1, &["a", "b"])],
            crossings: vec![Crossing {
                over: "a".into(),
                under_in: "a".into(),
                under_out: "b".into(),
                sign: Sign::Positive,
            }],
            vertices: vec![Vertex {
                id: "v".into(),
                incident: vec![inc("a", -1), inc("b", 1)],
            }],
        }
    }

    #[test]
    fn mirror_flips_and_reverses() {
        let th = theta([1, 1, -2]);
        let m = mirror(&th);
        assert_eq!(m.edges, th.edges);
        assert_eq!(m.vertices[0].incident[0].arc, "r");
        let m = mirror(&one_crossing());
        assert_eq!(m.crossings[0].sign, Sign::Negative);
        assert_eq!(m.crossings[0].under_in, "a");
        assert!(validate(&m).is_empty());
        assert_eq!(mirror(&mirror(&th)), th);
    }

    #[test]
    fn reverse_negates_weights() {
        let d = theta([1, 1, -2]);
        assert_eq!(reverse_all(&d).weights(), vec![-1, -1, 2]);
        assert_eq!(reverse_all(&reverse_all(&d)), d);
    }

    #[test]
    fn reduce() {
        let (r, g) = reduce_weighting(&loop_diagram(6)).unwrap();
        assert_eq!((r.weights(), g), (vec![1], 6));
        let (r, g) = reduce_weighting(&theta([2, 4, -6])).unwrap();
        assert_eq!((r.weights(), g), (vec![1, 2, -3], 2));
        let d = theta([3, 5, -8]);
        assert_eq!(reduce_weighting(&d).unwrap(), (d, 1));
        assert!(matches!(
            reduce_weighting(&theta([0, 0, 0])),
            Err(Error::TrivialWeighting)
        ));
    }

    #[test]
    fn contract_theta_edge() {
        let th = theta([1, 1, -2]);
        let c = contract_edge(&th, "e3").unwrap();
        assert!(validate(&c).is_empty());
        ensure_balanced(&c).unwrap();
        assert_eq!(c.vertices.len(), 1);
        assert_eq!(c.edges.len(), 2);
        assert_eq!(c.weights(), vec![1, 1]);
        // x = [p-, q-, r-], y = [r+, q+, p+]  ->  [p-, q-] ++ [q+, p+] ++ [] ++ []
        let arcs: Vec<(&str, i64)> = c.vertices[0]
            .incident
            .iter()
            .map(|i| (i.arc.as_str(), i.sign.as_i64()))
            .collect();
        assert_eq!(arcs, vec![("p", -1), ("q", -1), ("q", 1), ("p", 1)]);
    }

    #[test]
    fn contract_rejections() {
        assert!(matches!(
            contract_edge(&loop_diagram(1), "e"),
            Err(Error::NotContractible(_))
        ));
        assert!(matches!(
            contract_edge(&one_crossing(), "e"),
            Err(Error::NotContractible(_))
        ));
        assert!(matches!(
            contract_edge(&loop_diagram(1), "nope"),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn contract_path_edge() {
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
        let c = contract_edge(&path, "e1").unwrap();
        assert!(validate(&c).is_empty());
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.vertices[0].incident, vec![inc("b", -1)]);
    }

    #[test]
    fn parallel_counts_and_identity() {
        let d = one_crossing();
        assert_eq!(parallelize(&d, 1, 1).unwrap(), d);
        for (n, r) in [(2, 2), (2, 1), (3, 2), (3, 0)] {
            let p = parallelize(&d, n, r).unwrap();
            assert!(validate(&p).is_empty(), "{:?}", validate(&p));
            ensure_balanced(&p).unwrap();
            assert_eq!(p.edges.len(), n);
            assert_eq!(p.crossings.len(), n * n);
            let pos = p.edges.iter().filter(|e| e.weight == 1).count();
            assert_eq!(pos, r);
        }
        let l = parallelize(&loop_diagram(1), 2, 2).unwrap();
        assert_eq!(l.edges.len(), 2);
        assert_eq!(l.vertices[0].incident.len(), 4);
        assert!(parallelize(&d, 0, 0).is_err());
        assert!(parallelize(&d, 2, 3).is_err());
    }

    #[test]
    fn split_heavy_edge() {
        let d = theta([2, 1, -3]);
        let s = split_edge(&d, "e3").unwrap();
        assert!(validate(&s).is_empty());
        assert_eq!(s.weights(), vec![2, 1, -1, -1, -1]);
        ensure_balanced(&s).unwrap();
    }

    #[test]
    fn wedge_counts() {
        let w = wedge(&loop_diagram(1), "v", &loop_diagram(2), "v").unwrap();
        assert!(validate(&w).is_empty());
        assert_eq!(w.vertices.len(), 1);
        assert_eq!(w.vertices[0].incident.len(), 4);
        assert_eq!(w.edges.len(), 2);

        let a = one_crossing();
        let b = theta([1, 1, -2]);
        let w = wedge(&a, "v", &b, "y").unwrap();
        assert!(validate(&w).is_empty());
        assert_eq!(w.crossings.len(), a.crossings.len() + b.crossings.len());
        assert_eq!(w.vertices.len(), a.vertices.len() + b.vertices.len() - 1);
        assert!(matches!(
            wedge(&a, "nope", &b, "y"),
            Err(Error::UnknownVertex(_))
        ));
    }
}
