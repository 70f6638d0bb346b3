//! Representations into the metacyclic groups
//! `Γ(p, m, k) = ⟨α, β | α^p = β^m = 1, βαβ⁻¹ = α^k⟩`.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::coloring::{enumerate_colorings, Coloring, ColoringOptions, Fp};
use crate::diagram::{ensure_balanced, ArcIndex, Diagram};
use crate::error::{Error, Result};
use crate::invariants::is_prime;
use crate::wirtinger::wirtinger_presentation;

/// `α^a β^b` with `0 ≤ a < p`, `0 ≤ b < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MetaElem {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MetaGroup {
    pub p: u64,
    pub m: u64,
    /// `k` as a residue mod `p`.
    pub k: u64,
}

/// Multiplicative order of `k` modulo the prime `p`.
pub fn ord_p(k: i64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    let f = Fp::new(p);
    let k = f.reduce(k);
    if k == 0 {
        return Err(Error::NotInvertible { p, n: 0 });
    }
    let mut x = k;
    let mut m = 1;
    while x != 1 {
        x = f.mul(x, k);
        m += 1;
    }
    Ok(m)
}

impl MetaGroup {
    /// `Γ(p, m, k)`; requires an odd prime `p` and `k^m ≡ 1 (mod p)`.
    pub fn new(p: u64, m: u64, k: i64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p as i64));
        }
        let f = Fp::new(p);
        if f.reduce(k) == 0 {
            return Err(Error::NotInvertible { p, n: k });
        }
        if m == 0 || f.pow(f.reduce(k), m) != 1 {
            return Err(Error::InvalidGroup { p, m, k });
        }
        Ok(Self {
            p,
            m,
            k: f.reduce(k),
        })
    }

    /// `Γ(p, ord_p(k), k)`.
    pub fn minimal(p: u64, k: i64) -> Result<Self> {
        Self::new(p, ord_p(k, p)?, k)
    }

    fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn order(&self) -> u64 {
        self.p * self.m
    }

    pub fn identity(&self) -> MetaElem {
        MetaElem { a: 0, b: 0 }
    }

    pub fn alpha(&self) -> MetaElem {
        MetaElem { a: 1, b: 0 }
    }

    pub fn beta(&self) -> MetaElem {
        MetaElem {
            a: 0,
            b: 1 % self.m,
        }
    }

    pub fn elem(&self, a: i64, b: i64) -> MetaElem {
        MetaElem {
            a: a.rem_euclid(self.p as i64) as u64,
            b: b.rem_euclid(self.m as i64) as u64,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = MetaElem> + '_ {
        (0..self.p).flat_map(move |a| (0..self.m).map(move |b| MetaElem { a, b }))
    }

    /// `(α^a₁ β^b₁)(α^a₂ β^b₂) = α^{a₁ + k^b₁ a₂} β^{b₁ + b₂}`.
    pub fn mul(&self, x: MetaElem, y: MetaElem) -> MetaElem {
        let f = self.field();
        MetaElem {
            a: f.add(x.a, f.mul(f.pow(self.k, x.b), y.a)),
            b: (x.b + y.b) % self.m,
        }
    }

    /// `(α^a β^b)⁻¹ = α^{-a k^{-b}} β^{-b}`.
    pub fn inv(&self, x: MetaElem) -> MetaElem {
        let f = self.field();
        let kb = f.pow_signed(self.k, -(x.b as i64));
        MetaElem {
            a: f.sub(0, f.mul(x.a, kb)),
            b: (self.m - x.b) % self.m,
        }
    }

    pub fn pow(&self, x: MetaElem, e: i64) -> MetaElem {
        let base = if e < 0 { self.inv(x) } else { x };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// Order of an element.
    pub fn elem_order(&self, x: MetaElem) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != self.identity() {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[MetaElem]) -> Vec<MetaElem> {
        let mut seen: HashSet<MetaElem> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// The automorphism `α ↦ α^s, β ↦ α^t β` applied to `x`.
    pub fn automorphism(&self, s: u64, t: u64, x: MetaElem) -> MetaElem {
        let a = self.pow(MetaElem { a: s, b: 0 }, x.a as i64);
        let b = self.pow(
            MetaElem {
                a: t,
                b: 1 % self.m,
            },
            x.b as i64,
        );
        self.mul(a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub group: MetaGroup,
    pub arcs: Vec<String>,
    pub images: Vec<MetaElem>,
}

impl Representation {
    pub fn image(&self) -> Vec<MetaElem> {
        self.group.generated(&self.images)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() as u64 == self.group.order()
    }

    pub fn has_cyclic_image(&self) -> bool {
        let h = self.image();
        let n = h.len() as u64;
        h.iter().any(|&x| self.group.elem_order(x) == n)
    }
}

/// True iff every Wirtinger relation maps to the identity.
pub fn is_homomorphism(d: &Diagram, g: &MetaGroup, images: &[MetaElem]) -> Result<bool> {
    let pres = wirtinger_presentation(d)?;
    Ok(pres.relations.iter().all(|rel| {
        rel.word.0.iter().fold(g.identity(), |acc, &(gen, e)| {
            g.mul(acc, g.pow(images[gen], e as i64))
        }) == g.identity()
    }))
}

/// `arc ↦ α^{γ(arc)} β^{ω(arc) mod m}`, checked against every relation.
pub fn build_representation(
    d: &Diagram,
    g: &MetaGroup,
    coloring: &Coloring,
) -> Result<Representation> {
    ensure_balanced(d)?;
    let idx = ArcIndex::new(d);
    if coloring.p != g.p || coloring.values.len() != idx.len() {
        return Err(Error::InvalidArgument(
            "coloring does not match the diagram and group".into(),
        ));
    }
    let images: Vec<MetaElem> = coloring
        .values
        .iter()
        .zip(&idx.arc_weight)
        .map(|(&c, &w)| g.elem(c as i64, w))
        .collect();
    if !is_homomorphism(d, g, &images)? {
        return Err(Error::RepresentationFailure(format!(
            "coloring {:?} does not give a homomorphism into Γ({}, {}, {})",
            coloring.values, g.p, g.m, g.k
        )));
    }
    Ok(Representation {
        group: *g,
        arcs: idx.arcs,
        images,
    })
}

/// The coloring `r (1 - k^w) / (1 - k)` on every arc of a weight-`w` edge.
pub fn cyclic_coloring(d: &Diagram, p: u64, k: i64, r: u64) -> Result<Coloring> {
    ensure_balanced(d)?;
    let f = Fp::new(p);
    let kk = f.reduce(k);
    if kk == 0 {
        return Err(Error::NotInvertible { p, n: k });
    }
    if kk == 1 {
        return Err(Error::DegenerateK { p, k });
    }
    let scale = f.mul(r % p, f.inv(f.sub(1, kk)));
    let idx = ArcIndex::new(d);
    let values = idx
        .arc_weight
        .iter()
        .map(|&w| f.mul(scale, f.sub(1, f.pow_signed(kk, w))))
        .collect();
    Ok(Coloring {
        p,
        n: k,
        arcs: idx.arcs,
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepCounts {
    pub group: MetaGroup,
    pub nullity: usize,
    pub total: u64,
    pub cyclic: u64,
    pub surjective: u64,
    /// `(p^{N_p - 1} - 1) / (p - 1)`, meaningful when `m = ord_p(k)`.
    pub formula: u64,
    /// Orbits of surjective representations under the automorphisms.
    pub orbits: u64,
    /// Whether every surjective orbit has exactly `p(p - 1)` elements.
    pub free_action: bool,
    pub minimal_m: bool,
}

/// Builds every representation from every coloring at `k` and classifies them.
pub fn classify_and_count(
    d: &Diagram,
    p: u64,
    k: i64,
    m: Option<u64>,
    cap: u64,
) -> Result<RepCounts> {
    ensure_balanced(d)?;
    let g = match m {
        Some(m) => MetaGroup::new(p, m, k)?,
        None => MetaGroup::minimal(p, k)?,
    };
    if g.k == 1 {
        return Err(Error::DegenerateK { p, k });
    }
    let gcd = d.weights().iter().fold(0i64, |acc, w| acc.gcd(w));
    match gcd {
        0 => return Err(Error::TrivialWeighting),
        1 => {}
        g => return Err(Error::UnreducedWeighting(g)),
    }
    let colorings = enumerate_colorings(d, k, p, cap, ColoringOptions::default())?;
    let nullity = crate::coloring::nullity(d, k, p)?;
    let reps = colorings
        .iter()
        .map(|c| build_representation(d, &g, c))
        .collect::<Result<Vec<_>>>()?;
    let cyclic = reps.iter().filter(|r| r.has_cyclic_image()).count() as u64;
    let surjective: Vec<&Representation> = reps.iter().filter(|r| r.is_surjective()).collect();

    let mut seen: HashSet<Vec<MetaElem>> = HashSet::new();
    let mut orbits = 0;
    let mut free_action = true;
    for rep in &surjective {
        if seen.contains(&rep.images) {
            continue;
        }
        orbits += 1;
        let mut orbit: HashSet<Vec<MetaElem>> = HashSet::new();
        for s in 1..p {
            for t in 0..p {
                let moved = rep
                    .images
                    .iter()
                    .map(|&x| g.automorphism(s, t, x))
                    .collect();
                orbit.insert(moved);
            }
        }
        free_action &= orbit.len() as u64 == p * (p - 1);
        seen.extend(orbit);
    }
    let formula = if nullity == 0 {
        0
    } else {
        (p.pow(nullity as u32 - 1) - 1) / (p - 1)
    };
    Ok(RepCounts {
        group: g,
        nullity,
        total: reps.len() as u64,
        cyclic,
        surjective: surjective.len() as u64,
        formula,
        orbits,
        free_action,
        minimal_m: g.m == ord_p(k, p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::loop_diagram;

    #[test]
    fn orders() {
        assert_eq!(ord_p(-1, 5).unwrap(), 2);
        assert_eq!(ord_p(2, 5).unwrap(), 4);
        assert_eq!(ord_p(2, 7).unwrap(), 3);
        assert!(ord_p(5, 5).is_err());
    }

    #[test]
    fn dihedral_arithmetic() {
        let g = MetaGroup::new(5, 2, -1).unwrap();
        let r = g.elem(1, 1);
        assert_eq!(g.mul(r, r), g.identity());
        assert_eq!(g.elements().count(), 10);
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            assert_eq!(g.mul(g.inv(x), x), g.identity());
        }
        // β α β⁻¹ = α^k
        assert_eq!(
            g.mul(g.mul(g.beta(), g.alpha()), g.inv(g.beta())),
            g.pow(g.alpha(), -1)
        );
        assert!(MetaGroup::new(5, 3, -1).is_err());
    }

    #[test]
    fn power_formula() {
        let g = MetaGroup::new(7, 3, 2).unwrap();
        let f = Fp::new(7);
        for r in 0..7 {
            for w in 0..6 {
                let lhs = g.pow(g.elem(r, 1), w);
                let geo = f.mul(f.sub(1, f.pow(2, w as u64)), f.inv(f.sub(1, 2)));
                assert_eq!(lhs, g.elem(f.mul(r as u64, geo) as i64, w));
            }
        }
    }

    #[test]
    fn cyclic_coloring_example() {
        let d = loop_diagram(3);
        let c = cyclic_coloring(&d, 5, 2, 1).unwrap();
        assert_eq!(c.values, vec![2]);
        assert_eq!(cyclic_coloring(&d, 5, 2, 0).unwrap().values, vec![0]);
        assert!(matches!(
            cyclic_coloring(&d, 5, 6, 1),
            Err(Error::DegenerateK { .. })
        ));
    }

    #[test]
    fn loop_counts() {
        let d = loop_diagram(1);
        let counts = classify_and_count(&d, 5, -1, None, 1000).unwrap();
        assert_eq!((counts.total, counts.cyclic, counts.surjective), (5, 5, 0));
        assert_eq!((counts.formula, counts.orbits), (0, 0));
        assert!(matches!(
            classify_and_count(&loop_diagram(2), 5, -1, None, 1000),
            Err(Error::UnreducedWeighting(2))
        ));
    }
}
