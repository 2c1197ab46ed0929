//! Vertex-type classification of lattices, the standard lattices of each
//! type, graded chains, and parahoric stabilizer checks.
//!
//! The three vertex types correspond to the three conjugacy classes of
//! maximal parahorics: a self-dual order (type 1); an order with
//! `L ⊊ L∨ ⊊ t^-1 L` whose dual squares into `t^-1 L` (type 2); and one
//! where `M = t L∨⋆L∨ + L` is self-dual (type 3). The checks run in that
//! order, and every failure carries a concrete witness.

use crate::field::BaseField;
use crate::groups::AlgebraMap;
use crate::lattice::{product_span, Lattice, OrderWitness};
use crate::octonion::Octonion;
use crate::scalars::RationalScalar;
use num_rational::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexType {
    Type1,
    Type2,
    Type3,
}

impl VertexType {
    pub fn index(&self) -> u8 {
        match self {
            VertexType::Type1 => 1,
            VertexType::Type2 => 2,
            VertexType::Type3 => 3,
        }
    }

    pub fn from_index(i: u8) -> Option<VertexType> {
        match i {
            1 => Some(VertexType::Type1),
            2 => Some(VertexType::Type2),
            3 => Some(VertexType::Type3),
            _ => None,
        }
    }
}

impl std::fmt::Display for VertexType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Type{}", self.index())
    }
}

/// The standard lattice of each vertex type: the monomial lattices with t
/// on no coordinates, on (u1, v2), and on (u1, u2, v3) respectively.
pub fn standard_lattice(field: BaseField, t: VertexType) -> Lattice {
    Lattice::monomial(field, standard_exponents(t))
}

pub(crate) fn standard_exponents(t: VertexType) -> [i64; 8] {
    match t {
        VertexType::Type1 => [0; 8],
        VertexType::Type2 => [0, 0, 1, 0, 0, 0, 1, 0],
        VertexType::Type3 => [0, 0, 1, 1, 0, 0, 0, 1],
    }
}

/// The scaled standard basis tuple spanning the standard lattice, in basis
/// order; its multiplication table is the normative table of the type.
pub fn scaled_standard_tuple(field: BaseField, t: VertexType) -> Vec<Octonion> {
    standard_exponents(t)
        .iter()
        .enumerate()
        .map(|(i, &a)| Octonion::basis_vec(field, i).scale(&RationalScalar::t_power(field, a)))
        .collect()
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Vertex(VertexType),
    NotVertex {
        reason: String,
        witness: Option<OrderWitness>,
    },
}

impl Verdict {
    pub fn vertex_type(&self) -> Option<VertexType> {
        match self {
            Verdict::Vertex(t) => Some(*t),
            Verdict::NotVertex { .. } => None,
        }
    }
}

/// Classification outcome; the transformer is filled in by the reduction.
#[derive(Clone, Debug)]
pub struct VertexCertificate {
    pub verdict: Verdict,
    pub transformer: Option<AlgebraMap>,
    /// Set when the input has a split Gram profile of length 2 while
    /// containing the para-unit: the case the theory excludes for orders.
    pub impossible_length_two: bool,
}

/// Decides the vertex type of a lattice by the three order conditions.
pub fn classify_vertex(l: &Lattice) -> VertexCertificate {
    let field = l.field();
    let order = l.is_order();
    if !order.holds {
        return not_vertex(l, "not an order".into(), order.witness);
    }
    if l.is_selfdual() {
        return certificate(Verdict::Vertex(VertexType::Type1));
    }
    let dual = l.dual();
    let t_inv = RationalScalar::t_power(field, -1);
    let l_shifted = l.scale(&t_inv);
    if !l_shifted.module().contains_module(dual.module()) || dual == l_shifted {
        return not_vertex(
            l,
            "dual does not sit strictly inside t^-1 times the lattice".into(),
            None,
        );
    }
    let dd = product_span(dual.module(), dual.module());
    if l_shifted.module().contains_module(&dd) {
        return certificate(Verdict::Vertex(VertexType::Type2));
    }
    let m = dd
        .scale(&RationalScalar::t_power(field, 1))
        .to_lattice()
        .expect("t L∨⋆L∨ is full rank")
        .sum(l);
    if m.is_selfdual() {
        return certificate(Verdict::Vertex(VertexType::Type3));
    }
    not_vertex(
        l,
        "dual products neither stay in t^-1 L nor close up to a self-dual overlattice".into(),
        None,
    )
}

fn certificate(verdict: Verdict) -> VertexCertificate {
    VertexCertificate {
        verdict,
        transformer: None,
        impossible_length_two: false,
    }
}

fn not_vertex(l: &Lattice, reason: String, witness: Option<OrderWitness>) -> VertexCertificate {
    VertexCertificate {
        verdict: Verdict::NotVertex { reason, witness },
        transformer: None,
        impossible_length_two: length_two_diagnostic(l),
    }
}

/// Diagnostic for the impossible case: the lattice contains the para-unit,
/// satisfies the dual sandwich, and has split Gram profile of length 2.
pub fn length_two_diagnostic(l: &Lattice) -> bool {
    if !l.member(&Octonion::para_unit(l.field())) {
        return false;
    }
    matches!(l.gram_standard_form(), Ok(p) if p.length == 2)
}

/// The lattice `M = t L∨⋆L∨ + L` of the type-3 condition.
pub fn overlattice_m(l: &Lattice) -> Lattice {
    let field = l.field();
    let dual = l.dual();
    let dd = product_span(dual.module(), dual.module());
    dd.scale(&RationalScalar::t_power(field, 1))
        .to_lattice()
        .expect("t L∨⋆L∨ is full rank")
        .sum(l)
}

/// One period of the graded lattice chain attached to a classified vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedChain {
    /// Lattices listed from the t-shifted end down, with strictly
    /// decreasing gradings; consecutive inclusions are strict.
    pub entries: Vec<(Lattice, Ratio<i64>)>,
}

/// The one-period chain with the normalized gradings of each type.
pub fn graded_chain(l: &Lattice, t: VertexType) -> Result<GradedChain, String> {
    match classify_vertex(l).verdict {
        Verdict::Vertex(found) if found == t => {}
        other => return Err(format!("lattice classifies as {other:?}, not {t}")),
    }
    let field = l.field();
    let tp = RationalScalar::t_power(field, 1);
    let tn = RationalScalar::t_power(field, -1);
    let dual = l.dual();
    let entries = match t {
        VertexType::Type1 => vec![
            (l.scale(&tp), Ratio::new(1, 1)),
            (l.clone(), Ratio::new(0, 1)),
            (l.scale(&tn), Ratio::new(-1, 1)),
        ],
        VertexType::Type2 => vec![
            (dual.scale(&tp), Ratio::new(1, 2)),
            (l.clone(), Ratio::new(0, 1)),
            (dual.clone(), Ratio::new(-1, 2)),
            (l.scale(&tn), Ratio::new(-1, 1)),
        ],
        VertexType::Type3 => {
            let m = overlattice_m(l);
            vec![
                (dual.scale(&tp), Ratio::new(1, 3)),
                (l.clone(), Ratio::new(0, 1)),
                (m, Ratio::new(-1, 3)),
                (dual.clone(), Ratio::new(-2, 3)),
                (l.scale(&tn), Ratio::new(-1, 1)),
            ]
        }
    };
    for w in entries.windows(2) {
        let (inner, ci) = &w[0];
        let (outer, co) = &w[1];
        if !outer.module().contains_module(inner.module()) || inner == outer {
            return Err("chain inclusions are not strict".into());
        }
        if ci <= co {
            return Err("gradings are not strictly decreasing".into());
        }
    }
    Ok(GradedChain { entries })
}

/// Parahoric membership as a verifier: g must be an automorphism and fix
/// the lattice; fixing the rest of the graded chain follows and is checked.
pub fn stabilizes(g: &AlgebraMap, l: &Lattice) -> Result<bool, String> {
    if !g.is_automorphism() {
        return Err("map is not an automorphism of the symmetric product".into());
    }
    if g.apply_lattice(l) != *l {
        return Ok(false);
    }
    // stabilizing L forces the whole chain to be stabilized
    let dual = l.dual();
    debug_assert_eq!(g.apply_lattice(&dual), dual);
    if let Verdict::Vertex(VertexType::Type3) = classify_vertex(l).verdict {
        let m = overlattice_m(l);
        debug_assert_eq!(g.apply_lattice(&m), m);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{permutation_automorphism, random_automorphism, torus_cochar};

    const F5: BaseField = BaseField::Prime(5);

    fn l(t: VertexType) -> Lattice {
        standard_lattice(F5, t)
    }

    #[test]
    fn standard_lattices_classify_to_their_types() {
        for t in [VertexType::Type1, VertexType::Type2, VertexType::Type3] {
            let cert = classify_vertex(&l(t));
            assert_eq!(cert.verdict.vertex_type(), Some(t), "{t}");
        }
    }

    #[test]
    fn shrunk_lattice_is_not_a_vertex() {
        let shrunk = l(VertexType::Type1).scale(&RationalScalar::t_power(F5, 1));
        let cert = classify_vertex(&shrunk);
        match cert.verdict {
            Verdict::NotVertex { witness, .. } => {
                assert!(matches!(witness, Some(OrderWitness::ParaUnitMissing)));
            }
            other => panic!("expected NotVertex, got {other:?}"),
        }
    }

    #[test]
    fn length_two_monomial_is_flagged_impossible() {
        let bad = Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 0, 0]);
        let cert = classify_vertex(&bad);
        match &cert.verdict {
            Verdict::NotVertex { witness, .. } => {
                assert!(matches!(witness, Some(OrderWitness::ProductOutside { .. })));
            }
            other => panic!("expected NotVertex, got {other:?}"),
        }
        assert!(cert.impossible_length_two);
        // a vertex lattice is never flagged
        assert!(!length_two_diagnostic(&l(VertexType::Type2)));
    }

    #[test]
    fn type3_overlattice_matches_the_worked_example() {
        let m = overlattice_m(&l(VertexType::Type3));
        assert_eq!(m, Lattice::monomial(F5, [0, 0, 0, 0, -1, 0, 0, 1]));
        assert!(m.is_selfdual());
    }

    #[test]
    fn chains_carry_the_normalized_gradings() {
        let c1 = graded_chain(&l(VertexType::Type1), VertexType::Type1).unwrap();
        assert_eq!(c1.entries.len(), 3);
        assert_eq!(c1.entries[1].1, Ratio::new(0, 1));

        let c2 = graded_chain(&l(VertexType::Type2), VertexType::Type2).unwrap();
        let gradings: Vec<Ratio<i64>> = c2.entries.iter().map(|(_, c)| *c).collect();
        assert_eq!(
            gradings,
            vec![
                Ratio::new(1, 2),
                Ratio::new(0, 1),
                Ratio::new(-1, 2),
                Ratio::new(-1, 1)
            ]
        );
        assert_eq!(c2.entries[2].0, l(VertexType::Type2).dual());

        let c3 = graded_chain(&l(VertexType::Type3), VertexType::Type3).unwrap();
        let gradings: Vec<Ratio<i64>> = c3.entries.iter().map(|(_, c)| *c).collect();
        assert_eq!(
            gradings,
            vec![
                Ratio::new(1, 3),
                Ratio::new(0, 1),
                Ratio::new(-1, 3),
                Ratio::new(-2, 3),
                Ratio::new(-1, 1)
            ]
        );
        // misclaimed type errors out
        assert!(graded_chain(&l(VertexType::Type2), VertexType::Type3).is_err());
    }

    #[test]
    fn classification_is_automorphism_invariant() {
        for (seed, t) in [
            (1u64, VertexType::Type1),
            (2, VertexType::Type2),
            (3, VertexType::Type3),
        ] {
            let g = random_automorphism(F5, seed, 3);
            let moved = g.apply_lattice(&l(t));
            assert_eq!(classify_vertex(&moved).verdict.vertex_type(), Some(t));
        }
    }

    #[test]
    fn stabilizer_checks() {
        let id = AlgebraMap::identity(F5);
        assert!(stabilizes(&id, &l(VertexType::Type1)).unwrap());
        // the torus element moves u1 to t u1 and breaks the standard lattice
        let g = torus_cochar(F5, 1, 0);
        assert!(!stabilizes(&g, &l(VertexType::Type1)).unwrap());
        // basis permutations stabilize the standard lattice
        let p = permutation_automorphism(F5, [1, 2, 0]);
        assert!(stabilizes(&p, &l(VertexType::Type1)).unwrap());
        // a non-automorphism is rejected outright
        let mut m = crate::matrix::Mat::identity(F5, 8);
        m[(2, 2)] = RationalScalar::from_i64(F5, 2);
        assert!(stabilizes(&AlgebraMap::from_matrix(m), &l(VertexType::Type1)).is_err());
    }
}
