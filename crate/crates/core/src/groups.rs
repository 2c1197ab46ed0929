//! Isometries, algebra automorphisms, and related triples.
//!
//! An automorphism of the symmetric product is checked on the 64 basis
//! pairs, which suffices by bilinearity; multiplicativity forces form
//! preservation, and both are asserted. Related triples realize the spin
//! group, with the rotation and the hat-involution generating the S3 action
//! whose fixed points are exactly the automorphisms.

use crate::field::BaseField;
use crate::lattice::Lattice;
use crate::matrix::Mat;
use crate::octonion::{basis, Octonion};
use crate::scalars::RationalScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A linear map on the algebra, acting on standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    mat: Mat,
}

impl AlgebraMap {
    pub fn from_matrix(mat: Mat) -> AlgebraMap {
        assert_eq!((mat.rows(), mat.cols()), (8, 8));
        AlgebraMap { mat }
    }

    pub fn identity(field: BaseField) -> AlgebraMap {
        AlgebraMap {
            mat: Mat::identity(field, 8),
        }
    }

    pub fn field(&self) -> BaseField {
        self.mat.field()
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        let v = self.mat.mul_vec(x.coords());
        Octonion::new(self.field(), v.try_into().unwrap())
    }

    pub fn apply_lattice(&self, l: &Lattice) -> Lattice {
        let gens: Vec<Octonion> = l.basis().iter().map(|b| self.apply(b)).collect();
        Lattice::from_generators(self.field(), &gens).expect("image of a lattice is full rank")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn inverse(&self) -> Option<AlgebraMap> {
        Some(AlgebraMap {
            mat: self.mat.inverse()?,
        })
    }

    pub fn det(&self) -> RationalScalar {
        self.mat.det()
    }

    /// Gram preservation: gᵀ Φ g = Φ.
    pub fn is_isometry(&self) -> bool {
        let phi = Octonion::gram_matrix(self.field());
        self.mat.transpose().mul(&phi).mul(&self.mat) == phi
    }

    /// Determinant exactly 1.
    pub fn is_special(&self) -> bool {
        self.det().is_one()
    }

    /// Multiplicativity for the symmetric product on all 64 basis pairs;
    /// form preservation and determinant 1 come with it and are also checked.
    pub fn automorphism_failure(&self) -> Option<AutomorphismFailure> {
        let field = self.field();
        for i in 0..8 {
            for j in 0..8 {
                let x = Octonion::basis_vec(field, i);
                let y = Octonion::basis_vec(field, j);
                let lhs = self.apply(&x).para_mul(&self.apply(&y));
                let rhs = self.apply(&x.para_mul(&y));
                if lhs != rhs {
                    return Some(AutomorphismFailure {
                        pair: Some((i, j)),
                        got: lhs,
                        expected: rhs,
                        reason: "product not preserved",
                    });
                }
            }
        }
        if !self.is_isometry() {
            return Some(AutomorphismFailure {
                pair: None,
                got: Octonion::zero(field),
                expected: Octonion::zero(field),
                reason: "multiplicative but not an isometry",
            });
        }
        if !self.is_special() {
            return Some(AutomorphismFailure {
                pair: None,
                got: Octonion::zero(field),
                expected: Octonion::zero(field),
                reason: "multiplicative but determinant differs from 1",
            });
        }
        None
    }

    pub fn is_automorphism(&self) -> bool {
        self.automorphism_failure().is_none()
    }

    /// The hat involution `ĝ(x) = conj(g(conj(x)))`.
    pub fn hat(&self) -> AlgebraMap {
        let c = conj_matrix(self.field());
        AlgebraMap {
            mat: c.mul(&self.mat).mul(&c),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutomorphismFailure {
    /// Basis pair the product check failed on, if that is what failed.
    pub pair: Option<(usize, usize)>,
    pub got: Octonion,
    pub expected: Octonion,
    pub reason: &'static str,
}

fn conj_matrix(field: BaseField) -> Mat {
    let mut m = Mat::zero(field, 8, 8);
    let one = RationalScalar::one(field);
    m[(basis::E1, basis::E2)] = one.clone();
    m[(basis::E2, basis::E1)] = one.clone();
    for i in 2..8 {
        m[(i, i)] = one.neg();
    }
    m
}

/// A triple of special isometries with `g_i(x*y) = g_{i+1}(x) * g_{i+2}(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatedTriple {
    pub g1: AlgebraMap,
    pub g2: AlgebraMap,
    pub g3: AlgebraMap,
}

#[derive(Clone, Debug)]
pub struct TripleFailure {
    /// Which cyclic condition (i, a, b) failed, if one did.
    pub condition: Option<(usize, usize, usize)>,
    pub reason: &'static str,
}

impl RelatedTriple {
    pub fn diagonal(g: &AlgebraMap) -> RelatedTriple {
        RelatedTriple {
            g1: g.clone(),
            g2: g.clone(),
            g3: g.clone(),
        }
    }

    pub fn component(&self, i: usize) -> &AlgebraMap {
        match i % 3 {
            0 => &self.g1,
            1 => &self.g2,
            _ => &self.g3,
        }
    }

    pub fn related_failure(&self) -> Option<TripleFailure> {
        let field = self.g1.field();
        for (idx, g) in [&self.g1, &self.g2, &self.g3].iter().enumerate() {
            if !g.is_isometry() {
                return Some(TripleFailure {
                    condition: Some((idx, 0, 0)),
                    reason: "component is not an isometry",
                });
            }
            if !g.is_special() {
                return Some(TripleFailure {
                    condition: Some((idx, 0, 0)),
                    reason: "component determinant differs from 1",
                });
            }
        }
        for i in 0..3 {
            for a in 0..8 {
                for b in 0..8 {
                    let x = Octonion::basis_vec(field, a);
                    let y = Octonion::basis_vec(field, b);
                    let lhs = self.component(i).apply(&x.para_mul(&y));
                    let rhs = self
                        .component(i + 1)
                        .apply(&x)
                        .para_mul(&self.component(i + 2).apply(&y));
                    if lhs != rhs {
                        return Some(TripleFailure {
                            condition: Some((i, a, b)),
                            reason: "cyclic product condition failed",
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_related(&self) -> bool {
        self.related_failure().is_none()
    }

    /// The rotation (g1,g2,g3) -> (g2,g3,g1).
    pub fn rho(&self) -> RelatedTriple {
        RelatedTriple {
            g1: self.g2.clone(),
            g2: self.g3.clone(),
            g3: self.g1.clone(),
        }
    }

    /// The involution (g1,g2,g3) -> (ĝ1,ĝ3,ĝ2).
    pub fn theta(&self) -> RelatedTriple {
        RelatedTriple {
            g1: self.g1.hat(),
            g2: self.g3.hat(),
            g3: self.g2.hat(),
        }
    }
}

/// Diagonal torus element: e_i fixed, u1 -> t^a u1, u2 -> t^b u2,
/// u3 -> t^{-a-b} u3, v_i by the inverse powers.
pub fn torus_cochar(field: BaseField, a: i64, b: i64) -> AlgebraMap {
    let mut m = Mat::identity(field, 8);
    let tp = |e: i64| RationalScalar::t_power(field, e);
    m[(basis::U1, basis::U1)] = tp(a);
    m[(basis::U2, basis::U2)] = tp(b);
    m[(basis::U3, basis::U3)] = tp(-a - b);
    m[(basis::V1, basis::V1)] = tp(-a);
    m[(basis::V2, basis::V2)] = tp(-b);
    m[(basis::V3, basis::V3)] = tp(a + b);
    AlgebraMap::from_matrix(m)
}

/// Index permutation acting simultaneously on the u and v triplets.
/// Odd permutations need the global sign flip on both blocks; this is
/// verified at construction.
pub fn permutation_automorphism(field: BaseField, perm: [usize; 3]) -> AlgebraMap {
    let mut seen = [false; 3];
    for &p in &perm {
        seen[p] = true;
    }
    assert!(seen.iter().all(|&s| s), "not a permutation of 0..3");
    let even = perm_parity_even(&perm);
    let sign = if even {
        RationalScalar::one(field)
    } else {
        RationalScalar::one(field).neg()
    };
    let mut m = Mat::zero(field, 8, 8);
    m[(basis::E1, basis::E1)] = RationalScalar::one(field);
    m[(basis::E2, basis::E2)] = RationalScalar::one(field);
    for i in 0..3 {
        m[(basis::U1 + perm[i], basis::U1 + i)] = sign.clone();
        m[(basis::V1 + perm[i], basis::V1 + i)] = sign.clone();
    }
    let g = AlgebraMap::from_matrix(m);
    assert!(g.is_automorphism(), "permutation map failed verification");
    g
}

fn perm_parity_even(perm: &[usize; 3]) -> bool {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// The SL(W) embedding: w -> Aw on the u block, phi -> A^{-T} phi on the
/// v block, e_i fixed. Requires det A = 1.
pub fn sl3_block_map(a: &Mat) -> AlgebraMap {
    assert_eq!((a.rows(), a.cols()), (3, 3));
    assert!(a.det().is_one(), "block matrix must have determinant 1");
    let field = a.field();
    let a_inv_t = a.inverse().expect("invertible").transpose();
    let mut m = Mat::identity(field, 8);
    for i in 0..3 {
        for j in 0..3 {
            m[(basis::U1 + i, basis::U1 + j)] = a[(i, j)].clone();
            m[(basis::V1 + i, basis::V1 + j)] = a_inv_t[(i, j)].clone();
        }
    }
    AlgebraMap::from_matrix(m)
}

/// A word in verified generators: torus cocharacters, index permutations,
/// SL(W) elementary matrices with polynomial entries, and stabilizer
/// elements produced by the reduction on the standard lattice with
/// randomized internal choices. The output always verifies.
pub fn random_automorphism(field: BaseField, seed: u64, word_length: usize) -> AlgebraMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = AlgebraMap::identity(field);
    for _ in 0..word_length {
        let step = match rng.gen_range(0..4u32) {
            0 => {
                let a = rng.gen_range(-1..=1i64);
                let b = rng.gen_range(-1..=1i64);
                torus_cochar(field, a, b)
            }
            1 => {
                let perms = [
                    [0usize, 1, 2],
                    [1, 2, 0],
                    [2, 0, 1],
                    [1, 0, 2],
                    [0, 2, 1],
                    [2, 1, 0],
                ];
                permutation_automorphism(field, perms[rng.gen_range(0..6)])
            }
            2 => {
                // elementary SL3 matrix with a small polynomial entry
                let mut a = Mat::identity(field, 3);
                let i = rng.gen_range(0..3usize);
                let j = (i + rng.gen_range(1..3usize)) % 3;
                a[(i, j)] = crate::scalars::random_scalar(field, &mut rng, 1);
                sl3_block_map(&a)
            }
            _ => crate::reduction::stabilizer_sample(field, rng.gen()),
        };
        g = step.compose(&g);
    }
    debug_assert!(g.is_automorphism());
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    const F5: BaseField = BaseField::Prime(5);

    #[test]
    fn identity_and_torus_maps() {
        let id = AlgebraMap::identity(F5);
        assert!(id.is_isometry() && id.is_special() && id.is_automorphism());
        assert_eq!(torus_cochar(F5, 0, 0), id);
        assert!(torus_cochar(F5, 1, 0).is_automorphism());
        assert!(torus_cochar(F5, 2, -1).is_automorphism());
    }

    #[test]
    fn torus_cochars_compose_additively() {
        let g = torus_cochar(F5, 1, 0).compose(&torus_cochar(F5, 0, 1));
        assert_eq!(g, torus_cochar(F5, 1, 1));
    }

    #[test]
    fn scaling_one_coordinate_is_no_automorphism() {
        let mut m = Mat::identity(F5, 8);
        m[(basis::U1, basis::U1)] = parse_scalar("2", F5).unwrap();
        let g = AlgebraMap::from_matrix(m);
        let fail = g.automorphism_failure().expect("must fail");
        assert!(fail.pair.is_some());
        // the (u1, v1) pair exhibits the defect concretely
        let u1 = Octonion::basis_vec(F5, basis::U1);
        let v1 = Octonion::basis_vec(F5, basis::V1);
        let lhs = g.apply(&u1).para_mul(&g.apply(&v1));
        let rhs = g.apply(&u1.para_mul(&v1));
        assert_ne!(lhs, rhs);

        // diagonal t on u1 alone is not even an isometry
        let mut m = Mat::identity(F5, 8);
        m[(basis::U1, basis::U1)] = parse_scalar("t", F5).unwrap();
        assert!(!AlgebraMap::from_matrix(m).is_isometry());
    }

    #[test]
    fn conjugation_is_an_isometry_but_not_special() {
        let c = AlgebraMap::from_matrix(conj_matrix(F5));
        assert!(c.is_isometry());
        assert!(!c.is_special());
        assert!(!c.is_automorphism());
    }

    #[test]
    fn permutation_maps_verify_for_all_six_permutations() {
        for perm in [
            [0usize, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ] {
            let g = permutation_automorphism(F5, perm);
            assert!(g.is_automorphism());
            assert!(g.is_special());
        }
    }

    #[test]
    fn sl3_block_maps_are_automorphisms() {
        let mut a = Mat::identity(F5, 3);
        a[(0, 1)] = parse_scalar("t", F5).unwrap();
        a[(1, 2)] = parse_scalar("2+t", F5).unwrap();
        let g = sl3_block_map(&a);
        assert!(g.is_automorphism());
    }

    #[test]
    fn automorphisms_fix_the_para_unit() {
        let e = Octonion::para_unit(F5);
        for seed in 0..8 {
            let g = random_automorphism(F5, seed, 3);
            assert!(g.is_automorphism());
            assert!(g.is_special());
            assert_eq!(g.apply(&e), e);
        }
    }

    #[test]
    fn triples_and_the_s3_action() {
        let id = AlgebraMap::identity(F5);
        let t_id = RelatedTriple::diagonal(&id);
        assert!(t_id.is_related());
        assert_eq!(t_id.rho(), t_id);

        let g = random_automorphism(F5, 5, 3);
        let t = RelatedTriple::diagonal(&g);
        assert!(t.is_related());
        assert!(t.rho().is_related());
        assert!(t.theta().is_related());
        // rho^3 = id, theta^2 = id
        assert_eq!(t.rho().rho().rho(), t);
        assert_eq!(t.theta().theta(), t);

        let lopsided = RelatedTriple {
            g1: torus_cochar(F5, 1, 0),
            g2: id.clone(),
            g3: id,
        };
        assert!(!lopsided.is_related());
    }

    #[test]
    fn hat_of_identity_is_identity() {
        let id = AlgebraMap::identity(F5);
        assert_eq!(id.hat(), id);
        // hat is an involution
        let g = random_automorphism(F5, 9, 2);
        assert_eq!(g.hat().hat(), g);
    }

    #[test]
    fn random_automorphism_is_deterministic_per_seed() {
        let a = random_automorphism(F5, 77, 4);
        let b = random_automorphism(F5, 77, 4);
        assert_eq!(a, b);
        assert_eq!(random_automorphism(F5, 0, 0), AlgebraMap::identity(F5));
    }
}
