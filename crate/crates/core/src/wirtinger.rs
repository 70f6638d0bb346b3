//! Wirtinger presentations, Fox calculus and the Alexander matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::diagram::{ensure_balanced, ArcIndex, Diagram, Sign};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::scalar::Coeff;

/// A word in the free group on the arcs: `(generator index, ±1)` letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(pub Vec<(usize, i8)>);

impl GroupWord {
    pub fn letter(generator: usize, exp: i8) -> Self {
        Self(vec![(generator, exp)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Cancel adjacent inverse pairs until none remain.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.0.len());
        for &(g, e) in &self.0 {
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Self(out)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Exponent sum weighted by `weights[generator]`.
    pub fn weighted_exponent(&self, weights: &[i64]) -> i64 {
        self.0.iter().map(|&(g, e)| e as i64 * weights[g]).sum()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                if e > 0 {
                    names[g].clone()
                } else {
                    format!("{}^-1", names[g])
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// An element of the integral group ring of the free group, keyed by freely
/// reduced words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<GroupWord, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: &GroupWord, c: i64) {
        if c == 0 {
            return;
        }
        let key = word.reduced();
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// `χ`: each generator goes to `t^weight`, extended linearly.
    pub fn augment<C: Coeff>(&self, weights: &[i64]) -> LaurentPoly<C> {
        let mut p = LaurentPoly::zero();
        for (w, c) in self.terms() {
            p.add_term(w.weighted_exponent(weights), C::from_i64_exact(c));
        }
        p
    }
}

/// `χ(w) = t^{Σ exponent · weight}`.
pub fn augment_word<C: Coeff>(w: &GroupWord, weights: &[i64]) -> LaurentPoly<C> {
    LaurentPoly::t_pow(w.weighted_exponent(weights))
}

/// Free derivative of `w` with respect to `generator`.
///
/// Walking the word left to right, an occurrence `g` contributes the prefix
/// before it and an occurrence `g⁻¹` contributes minus the prefix through it.
pub fn fox_derivative(w: &GroupWord, generator: usize) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = GroupWord::default();
    for &(g, e) in &w.0 {
        if g == generator && e > 0 {
            out.add_term(&prefix, 1);
        }
        prefix.0.push((g, e));
        if g == generator && e < 0 {
            out.add_term(&prefix, -1);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Crossing(usize),
    Vertex(String),
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Crossing(i) => write!(f, "crossing {i}"),
            RelationKind::Vertex(id) => write!(f, "vertex {id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub word: GroupWord,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

/// One generator per arc (canonical column order) and one relation per
/// crossing, then per vertex.
///
/// Positive crossing `b c b⁻¹ a⁻¹`, negative crossing `b⁻¹ c b a⁻¹` with
/// `a` incoming under-arc, `b` over-arc, `c` outgoing under-arc.
pub fn wirtinger_presentation(d: &Diagram) -> Result<Presentation> {
    crate::diagram::ensure_valid(d)?;
    let idx = ArcIndex::new(d);
    let mut relations = Vec::with_capacity(d.crossings.len() + d.vertices.len());
    for (i, c) in d.crossings.iter().enumerate() {
        let (a, b, cc) = (
            idx.get(&c.under_in),
            idx.get(&c.over),
            idx.get(&c.under_out),
        );
        let s: i8 = match c.sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
        };
        relations.push(Relation {
            kind: RelationKind::Crossing(i),
            word: GroupWord(vec![(b, s), (cc, 1), (b, -s), (a, -1)]),
        });
    }
    for v in &d.vertices {
        let letters = v
            .incident
            .iter()
            .map(|inc| (idx.get(&inc.arc), inc.sign.as_i64() as i8))
            .collect();
        relations.push(Relation {
            kind: RelationKind::Vertex(v.id.clone()),
            word: GroupWord(letters),
        });
    }
    Ok(Presentation {
        generators: idx.arcs,
        relations,
    })
}

/// An Alexander matrix with its row (relation) and column (arc) labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexMatrix<C: Coeff> {
    pub matrix: Matrix<LaurentPoly<C>>,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub crossings: usize,
    pub vertices: usize,
    pub edges: usize,
}

impl<C: Coeff> AlexMatrix<C> {
    /// Wrap a bare matrix with declared crossing, vertex and edge counts.
    pub fn from_raw(
        rows: Vec<Vec<LaurentPoly<C>>>,
        crossings: usize,
        vertices: usize,
        edges: usize,
    ) -> Result<Self> {
        let r = crossings + vertices;
        let c = crossings + edges;
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse(format!(
                "raw matrix must be {r}x{c} for c={crossings}, v={vertices}, e={edges}"
            )));
        }
        Ok(Self {
            matrix: Matrix::from_rows(rows),
            rows: (0..r).map(|i| format!("row {i}")).collect(),
            cols: (0..c).map(|j| format!("col {j}")).collect(),
            crossings,
            vertices,
            edges,
        })
    }

    /// Number of relations, `c + v`.
    pub fn relation_count(&self) -> usize {
        self.crossings + self.vertices
    }
}

fn labelled<C: Coeff>(d: &Diagram, idx: &ArcIndex, m: Matrix<LaurentPoly<C>>) -> AlexMatrix<C> {
    let rows = (0..d.crossings.len())
        .map(|i| RelationKind::Crossing(i).to_string())
        .chain(
            d.vertices
                .iter()
                .map(|v| RelationKind::Vertex(v.id.clone()).to_string()),
        )
        .collect();
    AlexMatrix {
        matrix: m,
        rows,
        cols: idx.arcs.clone(),
        crossings: d.crossings.len(),
        vertices: d.vertices.len(),
        edges: d.edges.len(),
    }
}

/// `[χ(∂r_i/∂a_j)]` computed through Fox derivatives of the relation words.
pub fn alexander_matrix<C: Coeff>(d: &Diagram) -> Result<AlexMatrix<C>> {
    ensure_balanced(d)?;
    let pres = wirtinger_presentation(d)?;
    let idx = ArcIndex::new(d);
    let mut m = Matrix::zeros(pres.relations.len(), idx.len());
    for (i, rel) in pres.relations.iter().enumerate() {
        let mut gens: Vec<usize> = rel.word.0.iter().map(|&(g, _)| g).collect();
        gens.sort_unstable();
        gens.dedup();
        for g in gens {
            m[(i, g)] = fox_derivative(&rel.word, g).augment(&idx.arc_weight);
        }
    }
    Ok(labelled(d, &idx, m))
}

/// The same matrix filled from the closed-form crossing and vertex rows.
pub fn closed_form_matrix<C: Coeff>(d: &Diagram) -> Result<AlexMatrix<C>> {
    ensure_balanced(d)?;
    let idx = ArcIndex::new(d);
    let one = || C::one();
    let mut m: Matrix<LaurentPoly<C>> =
        Matrix::zeros(d.crossings.len() + d.vertices.len(), idx.len());
    for (i, c) in d.crossings.iter().enumerate() {
        let (a, b, cc) = (
            idx.get(&c.under_in),
            idx.get(&c.over),
            idx.get(&c.under_out),
        );
        let over_w = idx.arc_weight[b];
        let under_w = idx.arc_weight[a];
        match c.sign {
            Sign::Positive => {
                m[(i, a)].add_term(0, -one());
                m[(i, b)].add_term(0, one());
                m[(i, b)].add_term(under_w, -one());
                m[(i, cc)].add_term(over_w, one());
            }
            Sign::Negative => {
                m[(i, a)].add_term(0, -one());
                m[(i, b)].add_term(-over_w, -one());
                m[(i, b)].add_term(under_w - over_w, one());
                m[(i, cc)].add_term(-over_w, one());
            }
        }
    }
    let base = d.crossings.len();
    for (vi, v) in d.vertices.iter().enumerate() {
        let mut running = 0i64;
        for inc in &v.incident {
            let j = idx.get(&inc.arc);
            let w = idx.arc_weight[j];
            let eps = inc.sign.as_i64();
            let exp = running + eps.min(0) * w;
            m[(base + vi, j)].add_term(exp, C::from_i64_exact(eps));
            running += eps * w;
        }
    }
    Ok(labelled(d, &idx, m))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::diagram::fixtures::{loop_diagram, theta};

    type P = LaurentPoly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduction() {
        let w = GroupWord(vec![(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]);
        assert_eq!(w.reduced(), GroupWord(vec![(2, 1)]));
        assert_eq!(w.concat(&w.inverse()).reduced(), GroupWord::default());
    }

    #[test]
    fn fox_examples() {
        // a=0, b=1, c=2; r = b c b^-1 a^-1
        let r = GroupWord(vec![(1, 1), (2, 1), (1, -1), (0, -1)]);
        let dc = fox_derivative(&r, 2);
        assert_eq!(
            dc.terms().collect::<Vec<_>>(),
            vec![(&GroupWord::letter(1, 1), 1)]
        );
        let da = fox_derivative(&r, 0);
        assert_eq!(da.terms().collect::<Vec<_>>(), vec![(&r, -1)]);
        let aa = GroupWord(vec![(0, 1), (0, -1)]);
        assert!(fox_derivative(&aa, 0).is_zero());

        let weights = [2, 3, 2];
        assert_eq!(
            fox_derivative(&r, 1).augment::<BigInt>(&weights),
            p("1 - t^2")
        );
        assert_eq!(dc.augment::<BigInt>(&weights), p("t^3"));
        assert_eq!(da.augment::<BigInt>(&weights), p("-1"));
        assert_eq!(
            augment_word::<BigInt>(&GroupWord::default(), &weights),
            p("1")
        );
    }

    #[test]
    fn loop_presentation_and_matrix() {
        let d = loop_diagram(4);
        let pres = wirtinger_presentation(&d).unwrap();
        assert_eq!(pres.generators.len(), 1);
        assert_eq!(pres.relations.len(), 1);
        assert_eq!(pres.relations[0].word.reduced(), GroupWord::default());
        let m = alexander_matrix::<BigInt>(&d).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![P::zero()]]);
        assert_eq!(closed_form_matrix::<BigInt>(&d).unwrap(), m);
    }

    #[test]
    fn theta_vertex_row() {
        let d = theta([1, 1, -2]);
        let m = closed_form_matrix::<BigInt>(&d).unwrap();
        assert_eq!(m.matrix.nrows(), 2);
        assert_eq!(m.matrix.ncols(), 3);
        assert_eq!(m.matrix.row(0), &[p("-t^-1"), p("-t^-2"), p("-1")]);
        assert_eq!(alexander_matrix::<BigInt>(&d).unwrap(), m);
    }

    #[test]
    fn unbalanced_rejected() {
        let d = theta([1, 1, 1]);
        assert!(matches!(
            alexander_matrix::<BigInt>(&d),
            Err(Error::Unbalanced(_))
        ));
        assert!(matches!(
            closed_form_matrix::<BigInt>(&d),
            Err(Error::Unbalanced(_))
        ));
    }
}
