//! Full-rank O-lattices in the split algebra, over the valuation ring
//! O = k[t]_(t).
//!
//! A lattice is held by a canonical basis: the column Hermite form over O
//! with valuation pivoting. Pivot entries are exact powers of t, entries
//! above a pivot vanish, and entries of earlier columns at later pivot rows
//! are reduced modulo the pivot, so two lattices are equal as O-modules
//! exactly when their stored bases are identical. Non-full-rank spans (as
//! produced by products of lattices) use the same canonical form with
//! fewer columns.

use crate::error::LatticeError;
use crate::field::{BaseField, FieldElem};
use crate::isotropy;
use crate::matrix::Mat;
use crate::octonion::Octonion;
use crate::scalars::RationalScalar;
use rand_chacha::ChaCha8Rng;

/// A finitely generated O-submodule of the algebra in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OModule {
    field: BaseField,
    cols: Vec<Vec<RationalScalar>>,
    pivots: Vec<usize>,
}

impl OModule {
    /// Canonicalizes the O-span of the given elements.
    pub fn span(field: BaseField, generators: &[Octonion]) -> OModule {
        let cols: Vec<Vec<RationalScalar>> = generators
            .iter()
            .map(|x| x.coords().to_vec())
            .collect();
        let (cols, pivots) = canonical_columns(cols);
        OModule {
            field,
            cols,
            pivots,
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn basis(&self) -> Vec<Octonion> {
        self.cols
            .iter()
            .map(|c| Octonion::new(self.field, c.clone().try_into().unwrap()))
            .collect()
    }

    /// Coordinates of `x` in the F-span of the basis; None when outside.
    pub fn solve_coords(&self, x: &Octonion) -> Option<Vec<RationalScalar>> {
        let mut residual: Vec<RationalScalar> = x.coords().to_vec();
        let mut coords = Vec::with_capacity(self.cols.len());
        for (col, &p) in self.cols.iter().zip(&self.pivots) {
            let c = residual[p].div(&col[p]);
            if !c.is_zero() {
                for (r, e) in residual.iter_mut().zip(col.iter()) {
                    *r = r.sub(&c.mul(e));
                }
            }
            coords.push(c);
        }
        if residual.iter().all(RationalScalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &Octonion) -> bool {
        match self.solve_coords(x) {
            Some(coords) => coords.iter().all(|c| c.valuation().is_nonnegative()),
            None => false,
        }
    }

    pub fn contains_module(&self, other: &OModule) -> bool {
        other.basis().iter().all(|x| self.contains(x))
    }

    /// Whether the module spans with full rank and hence is a lattice.
    pub fn to_lattice(&self) -> Result<Lattice, LatticeError> {
        if self.rank() != 8 {
            return Err(LatticeError::RankDeficient(self.rank()));
        }
        Ok(Lattice {
            module: self.clone(),
        })
    }

    pub fn scale(&self, c: &RationalScalar) -> OModule {
        assert!(!c.is_zero(), "scaling a module by zero");
        let gens: Vec<Octonion> = self.basis().iter().map(|x| x.scale(c)).collect();
        OModule::span(self.field, &gens)
    }
}

/// A full-rank lattice, canonical basis as in [`OModule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    module: OModule,
}

impl Lattice {
    pub fn from_generators(
        field: BaseField,
        generators: &[Octonion],
    ) -> Result<Lattice, LatticeError> {
        OModule::span(field, generators).to_lattice()
    }

    pub fn from_basis_matrix(m: &Mat) -> Result<Lattice, LatticeError> {
        assert_eq!((m.rows(), m.cols()), (8, 8));
        let gens: Vec<Octonion> = (0..8)
            .map(|j| Octonion::new(m.field(), m.col(j).try_into().unwrap()))
            .collect();
        Lattice::from_generators(m.field(), &gens)
    }

    /// The standard lattice spanned by the basis vectors themselves.
    pub fn standard(field: BaseField) -> Lattice {
        let gens: Vec<Octonion> = (0..8).map(|i| Octonion::basis_vec(field, i)).collect();
        Lattice::from_generators(field, &gens).unwrap()
    }

    /// Lattice spanned by `t^{a_i} b_i` over the standard basis.
    pub fn monomial(field: BaseField, exponents: [i64; 8]) -> Lattice {
        let gens: Vec<Octonion> = exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| Octonion::basis_vec(field, i).scale(&RationalScalar::t_power(field, a)))
            .collect();
        Lattice::from_generators(field, &gens).unwrap()
    }

    pub fn field(&self) -> BaseField {
        self.module.field
    }

    pub fn module(&self) -> &OModule {
        &self.module
    }

    pub fn basis(&self) -> Vec<Octonion> {
        self.module.basis()
    }

    pub fn basis_matrix(&self) -> Mat {
        Mat::from_cols(self.field(), &self.module.cols)
    }

    pub fn member(&self, x: &Octonion) -> bool {
        self.module.contains(x)
    }

    /// The dual lattice with respect to the bilinear form.
    pub fn dual(&self) -> Lattice {
        let field = self.field();
        let b_inv_t = self
            .basis_matrix()
            .inverse()
            .expect("lattice basis is invertible")
            .transpose();
        let d = Octonion::gram_matrix(field).mul(&b_inv_t);
        Lattice::from_basis_matrix(&d).expect("dual of a lattice is full rank")
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Lattice::from_generators(self.field(), &gens).unwrap()
    }

    /// Intersection computed through duality: (L ∩ L')∨ = L∨ + L'∨.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    pub fn scale(&self, c: &RationalScalar) -> Lattice {
        Lattice {
            module: self.module.scale(c),
        }
    }

    /// Gram matrix of the bilinear form on the lattice basis.
    pub fn gram(&self) -> Mat {
        let b = self.basis_matrix();
        b.transpose()
            .mul(&Octonion::gram_matrix(self.field()))
            .mul(&b)
    }

    /// Length of `sup / self`; errors unless `self ⊆ sup`.
    pub fn length_in(&self, sup: &Lattice) -> Result<u64, LatticeError> {
        let coords: Vec<Vec<RationalScalar>> = self
            .basis()
            .iter()
            .map(|x| sup.module.solve_coords(x).ok_or(LatticeError::NotContained))
            .collect::<Result<_, _>>()?;
        let mut m = Mat::zero(self.field(), 8, 8);
        for (j, col) in coords.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                if !c.valuation().is_nonnegative() {
                    return Err(LatticeError::NotContained);
                }
                m[(i, j)] = c.clone();
            }
        }
        let vals = smith_valuations(&m);
        debug_assert_eq!(
            vals.iter().sum::<i64>(),
            m.det().valuation().finite().expect("full rank"),
        );
        Ok(vals.iter().sum::<i64>() as u64)
    }

    /// Discriminant of the Gram form modulo squares: the valuation together
    /// with the square class of the unit part's residue.
    pub fn discriminant_class(&self) -> DiscriminantClass {
        let d = self.gram().det();
        let v = d.valuation().finite().expect("nondegenerate Gram");
        let unit = d.shift(-v);
        let residue = unit.residue().expect("unit part is integral");
        DiscriminantClass {
            valuation: v,
            unit_class: residue.square_class_rep(),
        }
    }

    /// Order check: contains the para-unit and closed under the symmetric
    /// product; carries a witness on failure.
    pub fn is_order(&self) -> OrderCheck {
        let field = self.field();
        let e = Octonion::para_unit(field);
        if !self.member(&e) {
            return OrderCheck {
                holds: false,
                witness: Some(OrderWitness::ParaUnitMissing),
            };
        }
        let basis = self.basis();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let p = x.para_mul(y);
                if !self.member(&p) {
                    return OrderCheck {
                        holds: false,
                        witness: Some(OrderWitness::ProductOutside {
                            left: x.clone(),
                            right: y.clone(),
                            product: p,
                            indices: (i, j),
                        }),
                    };
                }
            }
        }
        OrderCheck {
            holds: true,
            witness: None,
        }
    }

    pub fn is_selfdual(&self) -> bool {
        *self == self.dual()
    }

    /// Maximality of an order is equivalent to self-duality; the caller must
    /// ensure the multiplicative closure first.
    pub fn is_maximal_order(&self) -> bool {
        self.is_order().holds && self.is_selfdual()
    }

    /// Standard split form of the Gram matrix; see [`GramProfile`].
    pub fn gram_standard_form(&self) -> Result<GramProfile, LatticeError> {
        isotropy::gram_standard_form(self, None)
    }

    /// Like [`Lattice::gram_standard_form`] but with seeded internal choices.
    pub fn gram_standard_form_seeded(
        &self,
        rng: &mut ChaCha8Rng,
    ) -> Result<GramProfile, LatticeError> {
        isotropy::gram_standard_form(self, Some(rng))
    }
}

/// O-span of all pairwise symmetric products of two module bases. Bilinearity
/// makes this the span of the full product set.
pub fn product_span(a: &OModule, b: &OModule) -> OModule {
    let mut gens = Vec::with_capacity(a.rank() * b.rank());
    for x in a.basis() {
        for y in b.basis() {
            gens.push(x.para_mul(&y));
        }
    }
    OModule::span(a.field, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantClass {
    pub valuation: i64,
    pub unit_class: FieldElem,
}

impl DiscriminantClass {
    pub fn parity_even(&self) -> bool {
        self.valuation.rem_euclid(2) == 0
    }
}

#[derive(Clone, Debug)]
pub struct OrderCheck {
    pub holds: bool,
    pub witness: Option<OrderWitness>,
}

#[derive(Clone, Debug)]
pub enum OrderWitness {
    ParaUnitMissing,
    ProductOutside {
        left: Octonion,
        right: Octonion,
        product: Octonion,
        indices: (usize, usize),
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramKind {
    Split,
    QuasiSplit,
}

/// An adapted basis x_1..x_8 of the lattice on which the bilinear form is
/// antidiagonal: `<x_i, x_{9-j}> = t^{a_i} δ_ij` with exponents in {0, 1},
/// t-pairs innermost. `l = Σ a_i` equals the length of `L∨/L`.
#[derive(Clone, Debug)]
pub struct GramProfile {
    pub kind: GramKind,
    pub exponents: [i64; 8],
    pub adapted: Vec<Octonion>,
    pub length: i64,
}

impl GramProfile {
    pub fn r(&self) -> i64 {
        self.length / 2
    }
}

/// Canonical column form over O: returns (columns, pivot rows).
pub(crate) fn canonical_columns(
    cols: Vec<Vec<RationalScalar>>,
) -> (Vec<Vec<RationalScalar>>, Vec<usize>) {
    let mut work: Vec<Vec<RationalScalar>> = cols
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let dim = 8usize;
    let mut out: Vec<Vec<RationalScalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in 0..dim {
        let best = work
            .iter()
            .enumerate()
            .filter(|(_, c)| !c[row].is_zero())
            .min_by_key(|(_, c)| c[row].valuation().finite().unwrap());
        let Some((idx, _)) = best else {
            continue;
        };
        let mut pivot_col = work.swap_remove(idx);
        let a = pivot_col[row].valuation().finite().unwrap();
        // normalize the pivot to exactly t^a
        let unit_inv = pivot_col[row].shift(-a).inv().unwrap();
        for x in pivot_col.iter_mut() {
            *x = x.mul(&unit_inv);
        }
        // eliminate this row from the not-yet-placed columns
        for c in work.iter_mut() {
            if c[row].is_zero() {
                continue;
            }
            let f = c[row].shift(-a);
            debug_assert!(f.valuation().is_nonnegative());
            for (x, p) in c.iter_mut().zip(pivot_col.iter()) {
                *x = x.sub(&f.mul(p));
            }
        }
        work.retain(|c| c.iter().any(|x| !x.is_zero()));
        // reduce this row of the already-placed columns modulo t^a
        for c in out.iter_mut() {
            if c[row].is_zero() {
                continue;
            }
            let rem = c[row].truncate_below(a);
            let q = c[row].sub(&rem).shift(-a);
            if q.is_zero() {
                continue;
            }
            for (x, p) in c.iter_mut().zip(pivot_col.iter()) {
                *x = x.sub(&q.mul(p));
            }
        }
        out.push(pivot_col);
        pivots.push(row);
    }
    debug_assert!(work.is_empty(), "independent column escaped every pivot row");
    (out, pivots)
}

/// Valuations of the elementary divisors (Smith normal form over the
/// valuation ring, divisors are powers of t), in increasing order.
pub fn smith_valuations(m: &Mat) -> Vec<i64> {
    smith_with_transforms(m).divisor_valuations
}

pub struct SmithDecomposition {
    pub divisor_valuations: Vec<i64>,
    /// left * m * right = diag(t^a), both transforms in GL(O).
    pub left: Mat,
    pub right: Mat,
}

pub fn smith_with_transforms(m: &Mat) -> SmithDecomposition {
    let field = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = Mat::identity(field, rows);
    let mut right = Mat::identity(field, cols);
    let mut vals = Vec::new();
    let n = rows.min(cols);
    for k in 0..n {
        // entry of minimal valuation in the remaining block
        let mut best: Option<(usize, usize, i64)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(v) = a[(i, j)].valuation().finite() {
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, pv)) = best else {
            break;
        };
        swap_rows(&mut a, pi, k);
        swap_rows(&mut left, pi, k);
        swap_cols(&mut a, pj, k);
        swap_cols(&mut right, pj, k);
        // scale the pivot row so the pivot becomes exactly t^pv
        let unit_inv = a[(k, k)].shift(-pv).inv().unwrap();
        for j in 0..cols {
            a[(k, j)] = a[(k, j)].mul(&unit_inv);
        }
        for j in 0..rows {
            left[(k, j)] = left[(k, j)].mul(&unit_inv);
        }
        for i in k + 1..rows {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].shift(-pv);
            for j in 0..cols {
                let s = a[(k, j)].mul(&f);
                a[(i, j)] = a[(i, j)].sub(&s);
            }
            for j in 0..rows {
                let s = left[(k, j)].mul(&f);
                left[(i, j)] = left[(i, j)].sub(&s);
            }
        }
        for j in k + 1..cols {
            if a[(k, j)].is_zero() {
                continue;
            }
            let f = a[(k, j)].shift(-pv);
            for i in 0..rows {
                let s = a[(i, k)].mul(&f);
                a[(i, j)] = a[(i, j)].sub(&s);
            }
            for i in 0..cols {
                let s = right[(i, k)].mul(&f);
                right[(i, j)] = right[(i, j)].sub(&s);
            }
        }
        vals.push(pv);
    }
    vals.sort_unstable();
    SmithDecomposition {
        divisor_valuations: vals,
        left,
        right,
    }
}

fn swap_rows(m: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..m.cols() {
        let tmp = m[(i, k)].clone();
        m[(i, k)] = m[(j, k)].clone();
        m[(j, k)] = tmp;
    }
}

fn swap_cols(m: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..m.rows() {
        let tmp = m[(k, i)].clone();
        m[(k, i)] = m[(k, j)].clone();
        m[(k, j)] = tmp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::basis;
    use crate::scalars::parse_scalar;
    use rand::{Rng, SeedableRng};

    const F5: BaseField = BaseField::Prime(5);

    fn bv(i: usize) -> Octonion {
        Octonion::basis_vec(F5, i)
    }

    fn sc(s: &str) -> RationalScalar {
        parse_scalar(s, F5).unwrap()
    }

    /// The standard type-2 lattice: t on u1 and v2.
    fn l2() -> Lattice {
        Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 1, 0])
    }

    /// The standard type-3 lattice: t on u1, u2 and v3.
    fn l3() -> Lattice {
        Lattice::monomial(F5, [0, 0, 1, 1, 0, 0, 0, 1])
    }

    #[test]
    fn canonicalize_standard_basis_is_identity() {
        let l = Lattice::standard(F5);
        assert_eq!(l.basis_matrix(), Mat::identity(F5, 8));
    }

    #[test]
    fn canonical_form_invariant_under_unimodular_change() {
        // replace u1 by u1 + t u2, keep u2: same lattice
        let mut gens: Vec<Octonion> = (0..8).map(bv).collect();
        gens[basis::U1] = bv(basis::U1).add(&bv(basis::U2).scale(&sc("t")));
        let l = Lattice::from_generators(F5, &gens).unwrap();
        assert_eq!(l, Lattice::standard(F5));
    }

    #[test]
    fn random_o_combinations_span_the_same_lattice() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let base = l2().basis();
        for _ in 0..4 {
            let gens: Vec<Octonion> = (0..16)
                .map(|_| {
                    let mut acc = Octonion::zero(F5);
                    for b in &base {
                        let c = crate::scalars::random_scalar(F5, &mut rng, 2);
                        acc = acc.add(&b.scale(&c));
                    }
                    acc
                })
                .collect();
            if let Ok(l) = Lattice::from_generators(F5, &gens) {
                // generated sublattice of l2; equality iff mutual containment
                assert!(l2().module().contains_module(l.module()));
                if l2().basis().iter().all(|x| l.member(x)) {
                    assert_eq!(l, l2());
                }
            }
        }
    }

    #[test]
    fn membership_in_l2() {
        let l = l2();
        assert!(l.member(&Octonion::para_unit(F5)));
        assert!(!l.member(&bv(basis::U1)));
        assert!(l.member(&bv(basis::U1).scale(&sc("t"))));
        assert!(l.member(&Octonion::zero(F5)));
    }

    #[test]
    fn duals_of_the_standard_lattices() {
        let l1 = Lattice::standard(F5);
        assert_eq!(l1.dual(), l1);
        assert!(l1.is_selfdual());

        // displayed dual basis of the type-2 lattice
        let expect = Lattice::monomial(F5, [0, 0, 0, -1, 0, -1, 0, 0]);
        assert_eq!(l2().dual(), expect);

        let expect3 = Lattice::monomial(F5, [0, 0, 0, 0, -1, -1, -1, 0]);
        assert_eq!(l3().dual(), expect3);

        // dual(tL) = t^{-1} dual(L), and dual is an involution
        let t = sc("t");
        assert_eq!(l2().scale(&t).dual(), l2().dual().scale(&t.inv().unwrap()));
        assert_eq!(l2().dual().dual(), l2());
    }

    #[test]
    fn dual_reverses_inclusions() {
        let a = l2();
        let b = a.sum(&l3());
        assert!(b.module().contains_module(a.module()));
        assert!(a.dual().module().contains_module(b.dual().module()));
    }

    #[test]
    fn sum_and_intersection() {
        let l = l2();
        assert_eq!(l.sum(&l), l);
        let t_inv = sc("t").inv().unwrap();
        assert_eq!(l.intersect(&l.scale(&t_inv)), l);
        // L ∩ L' ⊆ L ⊆ L + L'
        let m = l3();
        let cap = l.intersect(&m);
        let cup = l.sum(&m);
        assert!(l.module().contains_module(cap.module()));
        assert!(cup.module().contains_module(l.module()));
    }

    #[test]
    fn product_spans_from_the_worked_example() {
        // L2∨ ⋆ L2∨ = t^{-1} L2
        let d = l2().dual();
        let p = product_span(d.module(), d.module());
        let expected = l2().scale(&sc("t").inv().unwrap());
        assert_eq!(p.to_lattice().unwrap(), expected);

        // the standard lattice is closed under multiplication
        let l1 = Lattice::standard(F5);
        let p1 = product_span(l1.module(), l1.module());
        assert!(l1.module().contains_module(&p1));

        // rank-1 span of the para-unit is idempotent
        let e = OModule::span(F5, &[Octonion::para_unit(F5)]);
        let pe = product_span(&e, &e);
        assert_eq!(pe.rank(), 1);
        assert!(pe.contains(&Octonion::para_unit(F5)));
    }

    #[test]
    fn lengths_of_the_standard_duals() {
        let l1 = Lattice::standard(F5);
        assert_eq!(l1.length_in(&l1).unwrap(), 0);
        assert_eq!(l2().length_in(&l2().dual()).unwrap(), 4);
        assert_eq!(l3().length_in(&l3().dual()).unwrap(), 6);
        assert!(l2().dual().length_in(&l2()).is_err());
    }

    #[test]
    fn length_additive_on_towers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let exps: [i64; 8] = std::array::from_fn(|_| rng.gen_range(0..=2));
            let mid = Lattice::monomial(F5, exps);
            let inner = mid.scale(&sc("t"));
            let outer = Lattice::standard(F5).scale(&sc("t").inv().unwrap());
            let ab = inner.length_in(&mid).unwrap();
            let bc = mid.length_in(&outer).unwrap();
            let ac = inner.length_in(&outer).unwrap();
            assert_eq!(ab + bc, ac);
        }
    }

    #[test]
    fn monomial_dual_exponents() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        // pairing involution on basis indices
        let sigma = [1usize, 0, 5, 6, 7, 2, 3, 4];
        for _ in 0..10 {
            let exps: [i64; 8] = std::array::from_fn(|_| rng.gen_range(-2..=2));
            let l = Lattice::monomial(F5, exps);
            let dual_exps: [i64; 8] = std::array::from_fn(|i| -exps[sigma[i]]);
            assert_eq!(l.dual(), Lattice::monomial(F5, dual_exps));
        }
    }

    #[test]
    fn discriminant_classes() {
        let l1 = Lattice::standard(F5);
        let d = l1.discriminant_class();
        assert_eq!(d.valuation, 0);
        assert!(d.parity_even());
        assert!(d.unit_class.is_one());

        // the Gram determinant valuation equals lg(L∨/L)
        let d2 = l2().discriminant_class();
        assert_eq!(d2.valuation, 4);
        assert!(d2.parity_even());

        let scaled = l1.scale(&sc("t"));
        let ds = scaled.discriminant_class();
        assert_eq!(ds.valuation, 16);
        assert!(ds.parity_even());
    }

    #[test]
    fn order_checks() {
        assert!(Lattice::standard(F5).is_order().holds);
        assert!(l2().is_order().holds);
        assert!(l3().is_order().holds);
        assert!(Lattice::standard(F5).is_maximal_order());
        assert!(!l2().is_selfdual());
        assert!(!l2().is_maximal_order());

        let shrunk = Lattice::standard(F5).scale(&sc("t"));
        let check = shrunk.is_order();
        assert!(!check.holds);
        assert!(matches!(check.witness, Some(OrderWitness::ParaUnitMissing)));

        // the length-2 monomial lattice: v2 * v3 = u1 escapes
        let l = Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 0, 0]);
        let check = l.is_order();
        assert!(!check.holds);
        match check.witness {
            Some(OrderWitness::ProductOutside { product, .. }) => {
                assert!(!l.member(&product));
            }
            other => panic!("expected a product witness, got {other:?}"),
        }
    }

    #[test]
    fn smith_form_of_scaled_identity() {
        let mut m = Mat::identity(F5, 3);
        m[(0, 0)] = sc("t^2");
        m[(1, 1)] = sc("2+t");
        m[(2, 2)] = sc("t");
        let vals = smith_valuations(&m);
        assert_eq!(vals, vec![0, 1, 2]);
        let dec = smith_with_transforms(&m);
        let d = dec.left.mul(&m).mul(&dec.right);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(
                        d[(i, j)],
                        RationalScalar::t_power(F5, dec.divisor_valuations[i])
                    );
                } else {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        assert!(dec.left.det().is_unit());
        assert!(dec.right.det().is_unit());
    }
}
