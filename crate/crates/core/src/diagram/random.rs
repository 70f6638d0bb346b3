//! Random realizable diagrams.
//!
//! Vertices are dropped at random points of the unit square and every edge
//! is drawn as a polyline through random waypoints. Each transverse
//! intersection of two segments becomes a crossing with a random choice of
//! over-strand, so the resulting combinatorial diagram is the projection of
//! an honest spatial graph. Vertex incident lists follow the clockwise order
//! of the edge ends around the vertex.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{balanced_weighting_basis, Crossing, Diagram, Edge, Incidence, Sign, Vertex};

#[derive(Clone, Debug)]
pub struct RandomDiagramConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_crossings: usize,
    pub max_waypoints: usize,
    /// Weightings are random combinations of a cycle basis with coefficients in `-k..=k`.
    pub weight_coeff: i64,
    /// Probability that over/under choices alternate along each edge
    /// instead of being independent coin flips.
    pub alternating: f64,
    /// Probability of tying a small trefoil into one edge when the crossing
    /// budget allows it.
    pub knot_probability: f64,
}

impl Default for RandomDiagramConfig {
    fn default() -> Self {
        Self {
            max_vertices: 3,
            max_edges: 4,
            max_crossings: 8,
            max_waypoints: 3,
            weight_coeff: 2,
            alternating: 0.7,
            knot_probability: 0.4,
        }
    }
}

type Pt = (f64, f64);

const EPS: f64 = 1e-7;

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Pt, b: Pt) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Vertex(usize),
    Waypoint(usize, usize),
}

struct Segment {
    edge: usize,
    index: usize,
    from: Pt,
    to: Pt,
    ends: [End; 2],
}

/// A transverse intersection of two strands, `(edge, position, direction)` each.
struct Meet {
    strands: [(usize, f64, Pt); 2],
}

struct Hit {
    over_edge: usize,
    over_pos: f64,
    under_edge: usize,
    under_pos: f64,
    sign: Sign,
}

/// A connected, balanced diagram drawn from `cfg`. Retries internally until
/// the drawing is in general position and within the crossing bound.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomDiagramConfig) -> Diagram {
    loop {
        if let Some(d) = attempt(rng, cfg) {
            return d;
        }
    }
}

fn attempt<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomDiagramConfig) -> Option<Diagram> {
    let nv = rng.gen_range(1..=cfg.max_vertices.max(1));
    // at least one independent cycle
    let min_edges = nv.max(1);
    if min_edges > cfg.max_edges {
        return None;
    }
    let ne = rng.gen_range(min_edges..=cfg.max_edges);

    let mut pairs: Vec<(usize, usize)> = (1..nv).map(|i| (rng.gen_range(0..i), i)).collect();
    while pairs.len() < ne {
        pairs.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    pairs.shuffle(rng);
    for p in &mut pairs {
        if rng.gen_bool(0.5) {
            *p = (p.1, p.0);
        }
    }

    let mut unit = || (rng.gen::<f64>(), rng.gen::<f64>());
    let vpos: Vec<Pt> = (0..nv).map(|_| unit()).collect();
    let mut polylines: Vec<Vec<(Pt, End)>> = Vec::with_capacity(ne);
    for (ei, &(a, b)) in pairs.iter().enumerate() {
        let k = if a == b {
            rng.gen_range(2..=cfg.max_waypoints.max(2))
        } else if rng.gen_bool(0.3) {
            0
        } else {
            rng.gen_range(0..=cfg.max_waypoints)
        };
        let mut line = vec![(vpos[a], End::Vertex(a))];
        for w in 0..k {
            line.push(((rng.gen(), rng.gen()), End::Waypoint(ei, w)));
        }
        line.push((vpos[b], End::Vertex(b)));
        polylines.push(line);
    }

    let mut segs = Vec::new();
    for (ei, line) in polylines.iter().enumerate() {
        for (si, w) in line.windows(2).enumerate() {
            segs.push(Segment {
                edge: ei,
                index: si,
                from: w[0].0,
                to: w[1].0,
                ends: [w[0].1, w[1].1],
            });
        }
    }

    // vertices must stay clear of segments that do not end there
    for (vi, &p) in vpos.iter().enumerate() {
        for s in &segs {
            if s.ends.contains(&End::Vertex(vi)) {
                continue;
            }
            if point_segment_distance(p, s.from, s.to) < 1e-4 {
                return None;
            }
        }
    }

    let mut meets = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s1, s2) = (&segs[i], &segs[j]);
            if s1.ends.iter().any(|e| s2.ends.contains(e)) {
                continue;
            }
            let d1 = sub(s1.to, s1.from);
            let d2 = sub(s2.to, s2.from);
            let denom = cross(d1, d2);
            let q = sub(s2.from, s1.from);
            if denom.abs() < 1e-9 {
                return None;
            }
            let t = cross(q, d2) / denom;
            let u = cross(q, d1) / denom;
            let inside = |x: f64| x > -EPS && x < 1.0 + EPS;
            if !(inside(t) && inside(u)) {
                continue;
            }
            let clear = |x: f64| x > 1e-4 && x < 1.0 - 1e-4;
            if !(clear(t) && clear(u)) {
                return None;
            }
            meets.push(Meet {
                strands: [
                    (s1.edge, s1.index as f64 + t, d1),
                    (s2.edge, s2.index as f64 + u, d2),
                ],
            });
            if meets.len() > cfg.max_crossings {
                return None;
            }
        }
    }

    let over_side = choose_over(rng, &meets, ne, cfg.alternating);
    let hits: Vec<Hit> = meets
        .iter()
        .zip(over_side)
        .map(|(m, o)| {
            let (over, under) = (m.strands[o], m.strands[1 - o]);
            Hit {
                over_edge: over.0,
                over_pos: over.1,
                under_edge: under.0,
                under_pos: under.1,
                sign: if cross(over.2, under.2) > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            }
        })
        .collect();

    let edge_id = |e: usize| format!("e{e}");
    let arc_id = |e: usize, k: usize| format!("e{e}.{k}");
    let mut unders: Vec<Vec<f64>> = vec![Vec::new(); ne];
    for h in &hits {
        unders[h.under_edge].push(h.under_pos);
    }
    for u in &mut unders {
        u.sort_by(f64::total_cmp);
        if u.windows(2).any(|w| w[1] - w[0] < 1e-6) {
            return None;
        }
    }
    let arc_at = |e: usize, pos: f64| unders[e].iter().filter(|&&u| u < pos).count();

    let mut crossings: Vec<Crossing> = hits
        .iter()
        .map(|h| {
            let k = arc_at(h.under_edge, h.under_pos);
            Crossing {
                over: arc_id(h.over_edge, arc_at(h.over_edge, h.over_pos)),
                under_in: arc_id(h.under_edge, k),
                under_out: arc_id(h.under_edge, k + 1),
                sign: h.sign,
            }
        })
        .collect();
    crossings.shuffle(rng);

    let edges: Vec<Edge> = (0..ne)
        .map(|e| Edge {
            id: edge_id(e),
            weight: 0,
            arcs: (0..=unders[e].len()).map(|k| arc_id(e, k)).collect(),
        })
        .collect();

    let mut vertices = Vec::with_capacity(nv);
    for (vi, &vp) in vpos.iter().enumerate() {
        let mut rays: Vec<(f64, Incidence)> = Vec::new();
        for (ei, line) in polylines.iter().enumerate() {
            if line[0].1 == End::Vertex(vi) {
                let dir = sub(line[1].0, vp);
                rays.push((
                    dir.1.atan2(dir.0),
                    Incidence {
                        arc: arc_id(ei, 0),
                        sign: Sign::Negative,
                    },
                ));
            }
            if line[line.len() - 1].1 == End::Vertex(vi) {
                let dir = sub(line[line.len() - 2].0, vp);
                rays.push((
                    dir.1.atan2(dir.0),
                    Incidence {
                        arc: arc_id(ei, unders[ei].len()),
                        sign: Sign::Positive,
                    },
                ));
            }
        }
        // clockwise = decreasing angle
        rays.sort_by(|a, b| b.0.total_cmp(&a.0));
        if rays.windows(2).any(|w| (w[0].0 - w[1].0).abs() < 1e-9) {
            return None;
        }
        let mut incident: Vec<Incidence> = rays.into_iter().map(|(_, i)| i).collect();
        if !incident.is_empty() {
            let shift = rng.gen_range(0..incident.len());
            incident.rotate_left(shift);
        }
        vertices.push(Vertex {
            id: format!("v{vi}"),
            incident,
        });
    }

    let mut d = Diagram {
        edges,
        crossings,
        vertices,
    };
    let basis = balanced_weighting_basis(&d).ok()?;
    if basis.is_empty() {
        return None;
    }
    let mut weights = vec![0i64; ne];
    while weights.iter().all(|&w| w == 0) {
        for b in &basis {
            let c = rng.gen_range(-cfg.weight_coeff..=cfg.weight_coeff);
            for (w, x) in weights.iter_mut().zip(b) {
                *w += c * x;
            }
        }
    }
    for (e, w) in d.edges.iter_mut().zip(weights) {
        e.weight = w;
    }
    if d.crossings.len() + 3 <= cfg.max_crossings && rng.gen_bool(cfg.knot_probability) {
        let e = rng.gen_range(0..ne);
        let sign = if rng.gen_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        };
        d = tie_trefoil(&d, e, sign);
    }
    Some(d)
}

/// Ties a trefoil into the end of edge `e` (a connected sum inside a small
/// ball around the edge's last arc), adding three crossings of sign `sign`.
pub fn tie_trefoil(d: &Diagram, e: usize, sign: Sign) -> Diagram {
    let mut out = d.clone();
    let edge = &mut out.edges[e];
    let last = edge.arcs.last().expect("edges have arcs").clone();
    let new: Vec<String> = (1..=3).map(|i| format!("{}.k{i}", edge.id)).collect();
    edge.arcs.extend(new.iter().cloned());
    for v in &mut out.vertices {
        for inc in &mut v.incident {
            if inc.arc == last && inc.sign == Sign::Positive {
                inc.arc = new[2].clone();
            }
        }
    }
    let strand = [last, new[0].clone(), new[1].clone(), new[2].clone()];
    for (over, i) in [(2, 0), (0, 1), (1, 2)] {
        out.crossings.push(Crossing {
            over: strand[over].clone(),
            under_in: strand[i].clone(),
            under_out: strand[i + 1].clone(),
            sign,
        });
    }
    out
}

/// Which strand of each meeting point goes over. With probability
/// `alternating` the strands alternate over and under along each edge as far
/// as earlier choices allow; otherwise every choice is a coin flip.
fn choose_over<R: Rng + ?Sized>(
    rng: &mut R,
    meets: &[Meet],
    ne: usize,
    alternating: f64,
) -> Vec<usize> {
    if !rng.gen_bool(alternating) {
        return meets.iter().map(|_| rng.gen_range(0..2)).collect();
    }
    // (position, meet, strand) along each edge
    let mut along: Vec<Vec<(f64, usize, usize)>> = vec![Vec::new(); ne];
    for (mi, m) in meets.iter().enumerate() {
        for (si, &(e, pos, _)) in m.strands.iter().enumerate() {
            along[e].push((pos, mi, si));
        }
    }
    let mut over: Vec<Option<usize>> = vec![None; meets.len()];
    let mut order: Vec<usize> = (0..ne).collect();
    order.shuffle(rng);
    for e in order {
        along[e].sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut next_over = rng.gen_bool(0.5);
        for &(_, mi, si) in &along[e] {
            match over[mi] {
                Some(o) => next_over = o != si,
                None => {
                    over[mi] = Some(if next_over { si } else { 1 - si });
                    next_over = !next_over;
                }
            }
        }
    }
    over.into_iter()
        .map(|o| o.expect("every meet lies on some edge"))
        .collect()
}

fn point_segment_distance(p: Pt, a: Pt, b: Pt) -> f64 {
    let ab = sub(b, a);
    let ap = sub(p, a);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    let t = ((ap.0 * ab.0 + ap.1 * ab.1) / len2).clamp(0.0, 1.0);
    let c = (a.0 + t * ab.0 - p.0, a.1 + t * ab.1 - p.1);
    (c.0 * c.0 + c.1 * c.1).sqrt()
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::super::{ensure_balanced, validate};
    use super::*;

    #[test]
    fn generated_diagrams_are_valid_and_balanced() {
        let mut rng = StdRng::seed_from_u64(7);
        let cfg = RandomDiagramConfig::default();
        for _ in 0..200 {
            let d = random_diagram(&mut rng, &cfg);
            assert!(validate(&d).is_empty(), "{:?}", validate(&d));
            ensure_balanced(&d).unwrap();
            assert!(d.crossings.len() <= cfg.max_crossings);
            assert!(d.edges.len() <= cfg.max_edges);
            assert_eq!(d.component_count(), 1);
            assert!(d.weights().iter().any(|&w| w != 0));
        }
    }
}
