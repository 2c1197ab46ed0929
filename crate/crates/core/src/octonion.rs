//! The split octonion algebra in Zorn vector-matrix form and its symmetric
//! composition product.
//!
//! An element is a matrix `(a w; phi b)` with `a, b` scalars, `w` a 3-vector
//! and `phi` a 3-covector; the fixed basis order is
//! `e1, e2, u1, u2, u3, v1, v2, v3`. The unital product follows the Zorn
//! formula with the wedge identifications `u_i ^ u_j = v_k` and
//! `v_i ^ v_j = u_k` for cyclic `(i, j, k)`; the symmetric product is
//! `x * y = conj(x) . conj(y)`. The norm is `q = ab + phi(w)` and the
//! para-unit is `e = e1 + e2`.

use crate::field::BaseField;
use crate::matrix::Mat;
use crate::scalars::{random_scalar, RationalScalar};
use rand::Rng;
use std::fmt;

/// Indices of the standard basis inside coordinate vectors.
pub mod basis {
    pub const E1: usize = 0;
    pub const E2: usize = 1;
    pub const U1: usize = 2;
    pub const U2: usize = 3;
    pub const U3: usize = 4;
    pub const V1: usize = 5;
    pub const V2: usize = 6;
    pub const V3: usize = 7;
    pub const NAMES: [&str; 8] = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octonion {
    field: BaseField,
    coords: [RationalScalar; 8],
}

impl Octonion {
    pub fn new(field: BaseField, coords: [RationalScalar; 8]) -> Octonion {
        Octonion { field, coords }
    }

    pub fn zero(field: BaseField) -> Octonion {
        Octonion::new(field, std::array::from_fn(|_| RationalScalar::zero(field)))
    }

    /// The `i`-th standard basis vector, in the fixed order.
    pub fn basis_vec(field: BaseField, i: usize) -> Octonion {
        let mut x = Octonion::zero(field);
        x.coords[i] = RationalScalar::one(field);
        x
    }

    /// The para-unit `e = e1 + e2` (the identity of the unital product).
    pub fn para_unit(field: BaseField) -> Octonion {
        let mut x = Octonion::zero(field);
        x.coords[basis::E1] = RationalScalar::one(field);
        x.coords[basis::E2] = RationalScalar::one(field);
        x
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coords(&self) -> &[RationalScalar; 8] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &RationalScalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RationalScalar::is_zero)
    }

    pub fn add(&self, other: &Octonion) -> Octonion {
        Octonion::new(
            self.field,
            std::array::from_fn(|i| self.coords[i].add(&other.coords[i])),
        )
    }

    pub fn sub(&self, other: &Octonion) -> Octonion {
        Octonion::new(
            self.field,
            std::array::from_fn(|i| self.coords[i].sub(&other.coords[i])),
        )
    }

    pub fn neg(&self) -> Octonion {
        Octonion::new(self.field, std::array::from_fn(|i| self.coords[i].neg()))
    }

    pub fn scale(&self, c: &RationalScalar) -> Octonion {
        Octonion::new(self.field, std::array::from_fn(|i| self.coords[i].mul(c)))
    }

    /// The unital Zorn product `x . y`.
    pub fn oct_mul(&self, other: &Octonion) -> Octonion {
        let f = self.field;
        let (a1, b1, w1, f1) = self.split();
        let (a2, b2, w2, f2) = other.split();
        let a = a1.mul(a2).sub(&dot(&f2, &w1));
        let b = b1.mul(b2).sub(&dot(&f1, &w2));
        let w_lin: Vec<RationalScalar> = (0..3)
            .map(|i| a1.mul(&w2[i]).add(&b2.mul(&w1[i])))
            .collect();
        let f_lin: Vec<RationalScalar> = (0..3)
            .map(|i| a2.mul(&f1[i]).add(&b1.mul(&f2[i])))
            .collect();
        let w_cross = cross(&f1, &f2);
        let f_cross = cross(&w1, &w2);
        let mut coords: [RationalScalar; 8] = std::array::from_fn(|_| RationalScalar::zero(f));
        coords[basis::E1] = a;
        coords[basis::E2] = b;
        for i in 0..3 {
            coords[basis::U1 + i] = w_lin[i].add(&w_cross[i]);
            coords[basis::V1 + i] = f_lin[i].add(&f_cross[i]);
        }
        Octonion::new(f, coords)
    }

    /// The symmetric composition product `x * y = conj(x) . conj(y)`.
    pub fn para_mul(&self, other: &Octonion) -> Octonion {
        self.conj().oct_mul(&other.conj())
    }

    /// Conjugation `conj(x) = <x, e> e - x`: swaps e1 and e2, negates u, v.
    pub fn conj(&self) -> Octonion {
        let mut coords: [RationalScalar; 8] =
            std::array::from_fn(|i| self.coords[i].neg());
        coords[basis::E1] = self.coords[basis::E2].clone();
        coords[basis::E2] = self.coords[basis::E1].clone();
        Octonion::new(self.field, coords)
    }

    /// The norm form `q(a w; phi b) = ab + phi(w)`.
    pub fn norm(&self) -> RationalScalar {
        let (a, b, w, f) = self.split();
        a.mul(b).add(&dot(&f, &w))
    }

    /// The symmetric bilinear form `<x, y> = q(x + y) - q(x) - q(y)`.
    pub fn bilinear(&self, other: &Octonion) -> RationalScalar {
        let (a1, b1, w1, f1) = self.split();
        let (a2, b2, w2, f2) = other.split();
        a1.mul(b2)
            .add(&a2.mul(b1))
            .add(&dot(&f1, &w2))
            .add(&dot(&f2, &w1))
    }

    pub fn is_isotropic(&self) -> bool {
        self.norm().is_zero()
    }

    /// Gram matrix of the bilinear form on the standard basis.
    pub fn gram_matrix(field: BaseField) -> Mat {
        let mut g = Mat::zero(field, 8, 8);
        let one = RationalScalar::one(field);
        g[(basis::E1, basis::E2)] = one.clone();
        g[(basis::E2, basis::E1)] = one.clone();
        for i in 0..3 {
            g[(basis::U1 + i, basis::V1 + i)] = one.clone();
            g[(basis::V1 + i, basis::U1 + i)] = one.clone();
        }
        g
    }

    fn split(
        &self,
    ) -> (
        &RationalScalar,
        &RationalScalar,
        [&RationalScalar; 3],
        [&RationalScalar; 3],
    ) {
        (
            &self.coords[basis::E1],
            &self.coords[basis::E2],
            [&self.coords[basis::U1], &self.coords[basis::U2], &self.coords[basis::U3]],
            [&self.coords[basis::V1], &self.coords[basis::V2], &self.coords[basis::V3]],
        )
    }

    /// A pseudorandom element with polynomial coordinates of bounded degree.
    pub fn random<R: Rng>(field: BaseField, rng: &mut R, degree_bound: usize) -> Octonion {
        Octonion::new(
            field,
            std::array::from_fn(|_| random_scalar(field, rng, degree_bound)),
        )
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, basis::NAMES[i])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn dot(f: &[&RationalScalar; 3], w: &[&RationalScalar; 3]) -> RationalScalar {
    let mut acc = f[0].mul(w[0]);
    acc = acc.add(&f[1].mul(w[1]));
    acc.add(&f[2].mul(w[2]))
}

fn cross(a: &[&RationalScalar; 3], b: &[&RationalScalar; 3]) -> [RationalScalar; 3] {
    [
        a[1].mul(b[2]).sub(&a[2].mul(b[1])),
        a[2].mul(b[0]).sub(&a[0].mul(b[2])),
        a[0].mul(b[1]).sub(&a[1].mul(b[0])),
    ]
}

/// A totally isotropic subspace of the algebra, held as a canonical
/// (reduced column echelon) basis so equality is representational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicSubspace {
    field: BaseField,
    basis: Vec<Octonion>,
}

impl IsotropicSubspace {
    /// Canonicalizes a spanning set; panics if the span is not totally isotropic.
    pub fn from_span(field: BaseField, span: &[Octonion]) -> IsotropicSubspace {
        let basis = column_echelon(field, span);
        for (i, x) in basis.iter().enumerate() {
            assert!(x.is_isotropic(), "span is not totally isotropic");
            for y in &basis[i + 1..] {
                assert!(x.bilinear(y).is_zero(), "span is not totally isotropic");
            }
        }
        IsotropicSubspace { field, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Octonion] {
        &self.basis
    }

    pub fn contains(&self, x: &Octonion) -> bool {
        in_span(self.field, &self.basis, x)
    }

    /// Intersection of two subspaces, again in canonical form.
    pub fn intersect(&self, other: &IsotropicSubspace) -> IsotropicSubspace {
        let vectors = span_intersection(self.field, &self.basis, &other.basis);
        IsotropicSubspace::from_span(self.field, &vectors)
    }
}

/// Reduced column echelon form of a spanning set over F, with pivots in
/// increasing coordinate order and pivot entries normalized to 1.
fn column_echelon(field: BaseField, span: &[Octonion]) -> Vec<Octonion> {
    let mut cols: Vec<[RationalScalar; 8]> = span
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.coords().clone())
        .collect();
    let mut out: Vec<[RationalScalar; 8]> = Vec::new();
    for row in 0..8 {
        let Some(k) = cols.iter().position(|c| !c[row].is_zero()) else {
            continue;
        };
        let mut pivot = cols.swap_remove(k);
        let inv = pivot[row].inv().unwrap();
        for x in pivot.iter_mut() {
            *x = x.mul(&inv);
        }
        for c in cols.iter_mut() {
            if !c[row].is_zero() {
                let f = c[row].clone();
                for (x, p) in c.iter_mut().zip(pivot.iter()) {
                    *x = x.sub(&p.mul(&f));
                }
            }
        }
        for prev in out.iter_mut() {
            if !prev[row].is_zero() {
                let f = prev[row].clone();
                for (x, p) in prev.iter_mut().zip(pivot.iter()) {
                    *x = x.sub(&p.mul(&f));
                }
            }
        }
        out.push(pivot);
        cols.retain(|c| c.iter().any(|x| !x.is_zero()));
    }
    out.sort_by_key(|c| c.iter().position(|x| !x.is_zero()).unwrap_or(8));
    out.into_iter().map(|c| Octonion::new(field, c)).collect()
}

fn in_span(field: BaseField, basis: &[Octonion], x: &Octonion) -> bool {
    let mut aug: Vec<Octonion> = basis.to_vec();
    aug.push(x.clone());
    column_echelon(field, &aug).len() == basis.len()
}

/// Basis of `span(a) ∩ span(b)` via the kernel of the stacked system.
fn span_intersection(field: BaseField, a: &[Octonion], b: &[Octonion]) -> Vec<Octonion> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    // columns of [A | -B]; kernel vectors (s, r) give intersection points A s
    let n = a.len() + b.len();
    let mut m = Mat::zero(field, 8, n);
    for (j, x) in a.iter().enumerate() {
        for i in 0..8 {
            m[(i, j)] = x.coord(i).clone();
        }
    }
    for (j, x) in b.iter().enumerate() {
        for i in 0..8 {
            m[(i, a.len() + j)] = x.coord(i).neg();
        }
    }
    kernel_basis(&m)
        .into_iter()
        .map(|k| {
            let mut acc = Octonion::zero(field);
            for (j, x) in a.iter().enumerate() {
                acc = acc.add(&x.scale(&k[j]));
            }
            acc
        })
        .filter(|x| !x.is_zero())
        .collect()
}

/// Kernel of a rows x cols matrix over F.
fn kernel_basis(m: &Mat) -> Vec<Vec<RationalScalar>> {
    let field = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            let tmp = a[(p, j)].clone();
            a[(p, j)] = a[(r, j)].clone();
            a[(r, j)] = tmp;
        }
        let inv = a[(r, c)].inv().unwrap();
        for j in 0..cols {
            a[(r, j)] = a[(r, j)].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in 0..cols {
                    let s = a[(r, j)].mul(&f);
                    a[(i, j)] = a[(i, j)].sub(&s);
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut out = Vec::new();
    for c in 0..cols {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![RationalScalar::zero(field); cols];
        v[c] = RationalScalar::one(field);
        for (j, piv) in pivot_of_col.iter().enumerate() {
            if let Some(pr) = piv {
                v[j] = a[(*pr, c)].neg();
            }
        }
        out.push(v);
    }
    out
}

/// `x * C_s`, the left ideal of an isotropic element; 4-dimensional and
/// totally isotropic.
pub fn left_ideal(x: &Octonion) -> IsotropicSubspace {
    ideal(x, true)
}

/// `C_s * x`, the right ideal of an isotropic element.
pub fn right_ideal(x: &Octonion) -> IsotropicSubspace {
    ideal(x, false)
}

fn ideal(x: &Octonion, from_left: bool) -> IsotropicSubspace {
    assert!(!x.is_zero(), "ideal of the zero element");
    assert!(x.is_isotropic(), "ideal of a non-isotropic element");
    let field = x.field();
    let span: Vec<Octonion> = (0..8)
        .map(|i| {
            let b = Octonion::basis_vec(field, i);
            if from_left {
                x.para_mul(&b)
            } else {
                b.para_mul(x)
            }
        })
        .collect();
    IsotropicSubspace::from_span(field, &span)
}

/// The intersections `L(U) = ∩ (C_s * x)` and `R(U) = ∩ (x * C_s)` over a
/// basis of U.
pub fn triality_intersections(u: &IsotropicSubspace) -> (IsotropicSubspace, IsotropicSubspace) {
    assert!(u.rank() > 0, "triality of the zero subspace");
    let mut left: Option<IsotropicSubspace> = None;
    let mut right: Option<IsotropicSubspace> = None;
    for x in u.basis() {
        let r = right_ideal(x);
        let l = left_ideal(x);
        left = Some(match left {
            None => r,
            Some(prev) => prev.intersect(&r),
        });
        right = Some(match right {
            None => l,
            Some(prev) => prev.intersect(&l),
        });
    }
    (left.unwrap(), right.unwrap())
}

/// Outcome of evaluating one algebra identity on random samples.
#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: &'static str,
    pub passes: usize,
    pub failures: usize,
    pub counterexample: Option<Vec<Octonion>>,
}

/// Report of the whole identity suite.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.failures == 0)
    }
}

/// Evaluates the composition-algebra identities on `count` pseudorandom
/// triples with polynomial coordinates of degree <= `degree_bound`.
///
/// With `corrupt` set, the symmetric product is deliberately perturbed; this
/// is a negative control that must produce counterexamples.
pub fn check_identities(
    field: BaseField,
    seed: u64,
    count: usize,
    degree_bound: usize,
    corrupt: bool,
) -> IdentityReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let e = Octonion::para_unit(field);
    let two_inv = RationalScalar::from_i64(field, 2).inv().unwrap();

    let star = move |x: &Octonion, y: &Octonion| -> Octonion {
        let p = x.para_mul(y);
        if corrupt {
            // inject an error proportional to x_{u1} y_{u2}
            let c = x.coord(basis::U1).mul(y.coord(basis::U2));
            p.add(&Octonion::basis_vec(field, basis::E1).scale(&c))
        } else {
            p
        }
    };

    struct Check {
        name: &'static str,
        arity: usize,
        run: Box<dyn Fn(&[Octonion]) -> bool>,
    }

    let e2 = e.clone();
    let e3 = e.clone();
    let checks: Vec<Check> = vec![
        Check {
            name: "oct_minimal_polynomial",
            arity: 1,
            run: Box::new(move |s| {
                let x = &s[0];
                let lhs = x
                    .oct_mul(x)
                    .sub(&x.scale(&x.bilinear(&e2)))
                    .add(&e2.scale(&x.norm()));
                lhs.is_zero()
            }),
        },
        Check {
            name: "oct_pairing_right_mul",
            arity: 3,
            run: Box::new(|s| {
                let (x, y, z) = (&s[0], &s[1], &s[2]);
                x.oct_mul(z).bilinear(&y.oct_mul(z)) == x.bilinear(y).mul(&z.norm())
            }),
        },
        Check {
            name: "oct_pairing_left_mul",
            arity: 3,
            run: Box::new(|s| {
                let (x, y, z) = (&s[0], &s[1], &s[2]);
                z.oct_mul(x).bilinear(&z.oct_mul(y)) == z.norm().mul(&x.bilinear(y))
            }),
        },
        Check {
            name: "oct_conj_cancellation",
            arity: 2,
            run: Box::new(|s| {
                let (x, y) = (&s[0], &s[1]);
                x.oct_mul(&x.conj().oct_mul(y)) == y.scale(&x.norm())
            }),
        },
        Check {
            name: "para_pairing_symmetry",
            arity: 3,
            run: {
                let star = star;
                Box::new(move |s| {
                    let (x, y, z) = (&s[0], &s[1], &s[2]);
                    star(x, y).bilinear(z) == star(y, z).bilinear(x)
                })
            },
        },
        Check {
            name: "para_pairing_right_mul",
            arity: 3,
            run: Box::new(move |s| {
                let (x, y, z) = (&s[0], &s[1], &s[2]);
                star(x, z).bilinear(&star(y, z)) == x.bilinear(y).mul(&z.norm())
            }),
        },
        Check {
            name: "para_pairing_left_mul",
            arity: 3,
            run: Box::new(move |s| {
                let (x, y, z) = (&s[0], &s[1], &s[2]);
                star(z, x).bilinear(&star(z, y)) == z.norm().mul(&x.bilinear(y))
            }),
        },
        Check {
            name: "para_rotation",
            arity: 2,
            run: Box::new(move |s| {
                let (x, y) = (&s[0], &s[1]);
                let qxy = y.scale(&x.norm());
                star(&star(x, y), x) == qxy && star(x, &star(y, x)) == qxy
            }),
        },
        Check {
            name: "para_unit_law",
            arity: 1,
            run: Box::new(move |s| {
                // project onto the orthogonal complement of e first
                let x = &s[0];
                let x0 = x.sub(&e3.scale(&x.bilinear(&e3).mul(&two_inv)));
                star(&e3, &x0) == x0.neg() && star(&x0, &e3) == x0.neg()
            }),
        },
        Check {
            name: "composition_oct",
            arity: 2,
            run: Box::new(|s| {
                let (x, y) = (&s[0], &s[1]);
                x.oct_mul(y).norm() == x.norm().mul(&y.norm())
            }),
        },
        Check {
            name: "composition_para",
            arity: 2,
            run: Box::new(move |s| {
                let (x, y) = (&s[0], &s[1]);
                star(x, y).norm() == x.norm().mul(&y.norm())
            }),
        },
    ];

    let mut results: Vec<IdentityResult> = checks
        .iter()
        .map(|c| IdentityResult {
            name: c.name,
            passes: 0,
            failures: 0,
            counterexample: None,
        })
        .collect();

    for _ in 0..count {
        let sample: Vec<Octonion> = (0..3)
            .map(|_| Octonion::random(field, &mut rng, degree_bound))
            .collect();
        for (check, result) in checks.iter().zip(results.iter_mut()) {
            let args = &sample[..check.arity];
            if (check.run)(args) {
                result.passes += 1;
            } else {
                result.failures += 1;
                if result.counterexample.is_none() {
                    result.counterexample = Some(args.to_vec());
                }
            }
        }
    }
    IdentityReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F5: BaseField = BaseField::Prime(5);
    const Q: BaseField = BaseField::Rationals;

    fn b(i: usize) -> Octonion {
        Octonion::basis_vec(F5, i)
    }

    /// Table of the x * y products on the standard basis, transcribed row by
    /// row: entry (i, j) is a signed basis index or None for zero.
    const PARA_TABLE: [[Option<(i8, usize)>; 8]; 8] = {
        use basis::*;
        [
            // e1 row
            [Some((1, E2)), None, None, None, None, Some((-1, V1)), Some((-1, V2)), Some((-1, V3))],
            // e2 row
            [None, Some((1, E1)), Some((-1, U1)), Some((-1, U2)), Some((-1, U3)), None, None, None],
            // u1 row
            [Some((-1, U1)), None, None, Some((1, V3)), Some((-1, V2)), Some((-1, E1)), None, None],
            // u2 row
            [Some((-1, U2)), None, Some((-1, V3)), None, Some((1, V1)), None, Some((-1, E1)), None],
            // u3 row
            [Some((-1, U3)), None, Some((1, V2)), Some((-1, V1)), None, None, None, Some((-1, E1))],
            // v1 row
            [None, Some((-1, V1)), Some((-1, E2)), None, None, None, Some((1, U3)), Some((-1, U2))],
            // v2 row
            [None, Some((-1, V2)), None, Some((-1, E2)), None, Some((-1, U3)), None, Some((1, U1))],
            // v3 row
            [None, Some((-1, V3)), None, None, Some((-1, E2)), Some((1, U2)), Some((-1, U1)), None],
        ]
    };

    #[test]
    fn para_table_reproduced_exactly() {
        for i in 0..8 {
            for j in 0..8 {
                let got = b(i).para_mul(&b(j));
                let want = match PARA_TABLE[i][j] {
                    None => Octonion::zero(F5),
                    Some((s, k)) => {
                        let v = b(k);
                        if s < 0 {
                            v.neg()
                        } else {
                            v
                        }
                    }
                };
                assert_eq!(got, want, "{} * {}", basis::NAMES[i], basis::NAMES[j]);
            }
        }
    }

    #[test]
    fn unital_product_identity_and_wedge() {
        let e = Octonion::para_unit(F5);
        for i in 0..8 {
            assert_eq!(e.oct_mul(&b(i)), b(i));
            assert_eq!(b(i).oct_mul(&e), b(i));
        }
        // u1 . u2 = v3: the wedge identification, consistent with the
        // symmetric product via x * y = conj(x) . conj(y)
        assert_eq!(b(basis::U1).oct_mul(&b(basis::U2)), b(basis::V3));
        assert_eq!(b(basis::U1).para_mul(&b(basis::U2)), b(basis::V3));
    }

    #[test]
    fn conjugation() {
        assert_eq!(b(basis::E1).conj(), b(basis::E2));
        assert_eq!(b(basis::U1).conj(), b(basis::U1).neg());
        let e = Octonion::para_unit(F5);
        assert_eq!(e.conj(), e);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = Octonion::random(F5, &mut rng, 2);
            let y = Octonion::random(F5, &mut rng, 2);
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.oct_mul(&y).conj(), y.conj().oct_mul(&x.conj()));
            // conj(x) = <x,e> e - x
            assert_eq!(x.conj(), e.scale(&x.bilinear(&e)).sub(&x));
        }
    }

    #[test]
    fn norm_and_gram() {
        assert!(b(basis::E1).norm().is_zero());
        assert!(b(basis::E1).bilinear(&b(basis::E2)).is_one());
        assert!(Octonion::zero(F5).norm().is_zero());
        assert!(Octonion::para_unit(F5).norm().is_one());
        let g = Octonion::gram_matrix(F5);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(g[(i, j)], b(i).bilinear(&b(j)));
            }
        }
        assert!(g.det().is_unit());
    }

    #[test]
    fn ideals_are_rank_4_isotropic() {
        let r = right_ideal(&b(basis::U1));
        assert_eq!(r.rank(), 4);
        let l = left_ideal(&b(basis::U1));
        assert_eq!(l.rank(), 4);
        // scaling does not change the ideal
        let c = RationalScalar::from_i64(F5, 3);
        assert_eq!(left_ideal(&b(basis::U1).scale(&c)), l);
        // non-proportional isotropic vectors give different ideals
        assert_ne!(left_ideal(&b(basis::U2)), l);
    }

    #[test]
    fn triality_of_a_line_is_the_right_ideal() {
        let u = IsotropicSubspace::from_span(F5, &[b(basis::U1)]);
        let (l, r) = triality_intersections(&u);
        assert_eq!(l, right_ideal(&b(basis::U1)));
        assert_eq!(r, left_ideal(&b(basis::U1)));
        // a rank-2 input drops the intersection dimension
        let u2 = IsotropicSubspace::from_span(F5, &[b(basis::U1), b(basis::U2)]);
        let (l2, _) = triality_intersections(&u2);
        assert!(l2.rank() < 4);
        for x in l2.basis() {
            assert!(right_ideal(&b(basis::U1)).contains(x));
            assert!(right_ideal(&b(basis::U2)).contains(x));
        }
    }

    #[test]
    fn identity_suite_over_f5_and_q() {
        let report = check_identities(F5, 42, 60, 3, false);
        for r in &report.results {
            assert_eq!(r.failures, 0, "{} failed", r.name);
        }
        let report = check_identities(Q, 42, 10, 2, false);
        assert!(report.all_pass());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let report = check_identities(F5, 42, 40, 2, true);
        assert!(!report.all_pass());
        let failing = report
            .results
            .iter()
            .find(|r| r.failures > 0)
            .expect("negative control must fail");
        assert!(failing.counterexample.is_some());
    }

    #[test]
    fn lemma_2_8_on_table_entries() {
        // (u1 * v1) * u1 = (-e1) * u1 = 0 = q(u1) v1
        let p = b(basis::U1).para_mul(&b(basis::V1)).para_mul(&b(basis::U1));
        assert!(p.is_zero());
    }
}
