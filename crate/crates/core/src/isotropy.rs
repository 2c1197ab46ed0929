//! Exact splitting of the bilinear form on a lattice into hyperbolic pairs.
//!
//! The recursion peels one hyperbolic pair (x, y) at a time: `q(x) = q(y) = 0`
//! and `<x, y> = t^s` exactly, with `s` in {0, 1}. Finding x exactly over
//! k(t) is the delicate step; Hensel lifting alone only converges t-adically.
//! The loop here terminates because the ambient algebra is split: it carries
//! an explicit frame of isotropic vectors spanning the orthogonal complement
//! of the pairs already split off (maintained by reflection isometries), and
//! a final stereographic correction
//!
//!   x  ↦  x - (q(x)/<p, x>) p,       p in the frame, q(p) = 0,
//!
//! lands exactly on the quadric once Newton steps have pushed `q(x)` deep
//! enough that the correction stays inside the lattice block. Everything is
//! exact rational arithmetic; no square roots and no power-series limits.

use crate::error::LatticeError;
use crate::field::{BaseField, FieldElem};
use crate::lattice::{GramKind, GramProfile, Lattice, OModule};
use crate::octonion::Octonion;
use crate::scalars::RationalScalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) fn gram_standard_form(
    l: &Lattice,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<GramProfile, LatticeError> {
    let field = l.field();
    let dual = l.dual();
    if !dual.module().contains_module(l.module()) {
        return Err(LatticeError::Precondition(
            "lattice is not contained in its dual".into(),
        ));
    }
    let t_inv = RationalScalar::t_power(field, -1);
    if !l.scale(&t_inv).module().contains_module(dual.module()) {
        return Err(LatticeError::Precondition(
            "dual is not contained in t^-1 times the lattice".into(),
        ));
    }
    // quasi-split would force an odd discriminant valuation
    if !l.discriminant_class().parity_even() {
        return Err(LatticeError::QuasiSplitInconsistency);
    }

    let mut block = l.module().clone();
    let mut frame = standard_frame(field);
    let mut scale = 0i64;
    let mut pairs: Vec<(Octonion, Octonion, i64)> = Vec::new();

    while block.rank() > 0 {
        let basis = block.basis();
        let gram_res = residue_gram(&basis, scale);
        if gram_res
            .iter()
            .all(|row| row.iter().all(FieldElem::is_zero))
        {
            scale += 1;
            if scale > 1 {
                return Err(LatticeError::Precondition(
                    "pairing exponents exceed 1".into(),
                ));
            }
            continue;
        }

        let x = match fast_path(&block, scale, &frame, rng.as_deref_mut()) {
            Some(x) => x,
            None => {
                let q_res = residue_q(&basis, scale);
                let lam = find_residue_isotropic(field, &gram_res, &q_res, rng.as_deref_mut())
                    .ok_or_else(|| stuck_error(&gram_res))?;
                lift_isotropic(&block, scale, &lam, &frame)?
            }
        };
        debug_assert!(x.norm().is_zero());

        // hyperbolic partner: <x, y> = t^scale, q(y) = 0, y in the block
        let j = basis
            .iter()
            .position(|b| x.bilinear(b).valuation().finite() == Some(scale))
            .expect("x pairs unitally with the block at the current scale");
        let unit_inv = x.bilinear(&basis[j]).shift(-scale).inv().unwrap();
        let y0 = basis[j].scale(&unit_inv);
        let y = y0.sub(&x.scale(&y0.norm().shift(-scale)));
        debug_assert!(y.norm().is_zero());
        debug_assert_eq!(x.bilinear(&y), RationalScalar::t_power(field, scale));

        // orthogonal complement of the pair inside the block
        let projected: Vec<Octonion> = basis
            .iter()
            .map(|z| {
                z.sub(&x.scale(&z.bilinear(&y).shift(-scale)))
                    .sub(&y.scale(&z.bilinear(&x).shift(-scale)))
            })
            .collect();
        let next = OModule::span(field, &projected);
        debug_assert_eq!(next.rank(), block.rank() - 2);

        if next.rank() > 0 {
            frame = update_frame(&frame, &x, &y)?;
        }
        pairs.push((x, y, scale));
        block = next;
    }

    // arrange pairs outermost-first: scale-0 pairs were extracted first
    let mut adapted = vec![Octonion::zero(field); 8];
    let mut exponents = [0i64; 8];
    for (k, (x, y, s)) in pairs.iter().enumerate() {
        adapted[k] = x.clone();
        adapted[7 - k] = y.clone();
        exponents[k] = *s;
        exponents[7 - k] = *s;
    }
    let length: i64 = exponents.iter().sum();

    // the adapted basis must span the lattice and realize the pattern exactly
    for (i, a) in adapted.iter().enumerate() {
        if !l.member(a) {
            return Err(LatticeError::Internal(format!(
                "adapted vector {i} escapes the lattice"
            )));
        }
        for (j, b) in adapted.iter().enumerate() {
            if i == j {
                if !a.norm().is_zero() {
                    return Err(LatticeError::Internal(
                        "adapted vector not isotropic".into(),
                    ));
                }
            } else if i + j == 7 {
                if a.bilinear(b) != RationalScalar::t_power(field, exponents[i]) {
                    return Err(LatticeError::Internal("wrong antidiagonal entry".into()));
                }
            } else if !a.bilinear(b).is_zero() {
                return Err(LatticeError::Internal("gram not antidiagonal".into()));
            }
        }
    }
    let adapted_lattice = Lattice::from_generators(field, &adapted)
        .map_err(|_| LatticeError::Internal("adapted basis is degenerate".into()))?;
    if adapted_lattice != *l {
        return Err(LatticeError::Internal(
            "adapted basis spans a proper sublattice".into(),
        ));
    }

    Ok(GramProfile {
        kind: GramKind::Split,
        exponents,
        adapted,
        length,
    })
}

/// The standard basis grouped into hyperbolic pairs (e1,e2), (u_i,v_i).
fn standard_frame(field: BaseField) -> Vec<Octonion> {
    use crate::octonion::basis::*;
    [E1, E2, U1, V1, U2, V2, U3, V3]
        .iter()
        .map(|&i| Octonion::basis_vec(field, i))
        .collect()
}

fn residue_gram(basis: &[Octonion], scale: i64) -> Vec<Vec<FieldElem>> {
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    a.bilinear(b)
                        .shift(-scale)
                        .residue()
                        .expect("block pairings divisible by t^scale")
                })
                .collect()
        })
        .collect()
}

fn residue_q(basis: &[Octonion], scale: i64) -> Vec<FieldElem> {
    basis
        .iter()
        .map(|a| {
            a.norm()
                .shift(-scale)
                .residue()
                .expect("block norms divisible by t^scale")
        })
        .collect()
}

/// Scaled frame vectors that already sit primitively in the block with a
/// unit pairing row: exact isotropic pair sources with no lifting at all.
fn fast_path(
    block: &OModule,
    scale: i64,
    frame: &[Octonion],
    rng: Option<&mut ChaCha8Rng>,
) -> Option<Octonion> {
    let basis = block.basis();
    let mut candidates = Vec::new();
    for p in frame {
        let Some(coords) = block.solve_coords(p) else {
            continue;
        };
        let mu = depth_from_coords(&coords);
        let scaled = p.scale(&RationalScalar::t_power(p.field(), mu));
        if basis
            .iter()
            .any(|b| scaled.bilinear(b).valuation().finite() == Some(scale))
        {
            candidates.push(scaled);
        }
    }
    match rng {
        Some(r) if candidates.len() > 1 => {
            let i = r.gen_range(0..candidates.len());
            Some(candidates.swap_remove(i))
        }
        _ => candidates.into_iter().next(),
    }
}

/// Smallest m with `t^m x` in the block, given the span coordinates of x.
fn depth_from_coords(coords: &[RationalScalar]) -> i64 {
    coords
        .iter()
        .filter_map(|c| c.valuation().finite())
        .map(|v| (-v).max(0))
        .max()
        .unwrap_or(0)
}

fn stuck_error(gram_res: &[Vec<FieldElem>]) -> LatticeError {
    let rank = residue_rank(gram_res);
    if rank % 2 == 1 {
        LatticeError::QuasiSplitInconsistency
    } else {
        LatticeError::NeedsEtaleExtension { degree: 2 }
    }
}

fn residue_rank(gram: &[Vec<FieldElem>]) -> usize {
    let n = gram.len();
    let mut m: Vec<Vec<FieldElem>> = gram.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().unwrap();
        for j in 0..n {
            m[rank][j] = m[rank][j].mul(&inv);
        }
        for i in 0..n {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let s = m[rank][j].mul(&f);
                    m[i][j] = m[i][j].sub(&s);
                }
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// Nonzero residue vector with q̄ = 0 outside the radical of the residue
/// pairing; None when no such vector is found over k.
fn find_residue_isotropic(
    field: BaseField,
    gram: &[Vec<FieldElem>],
    qdiag: &[FieldElem],
    rng: Option<&mut ChaCha8Rng>,
) -> Option<Vec<FieldElem>> {
    let n = qdiag.len();
    let eval_q = |lam: &[FieldElem]| -> FieldElem {
        let mut acc = field.zero();
        for i in 0..n {
            acc = acc.add(&lam[i].mul(&lam[i]).mul(&qdiag[i]));
            for j in i + 1..n {
                acc = acc.add(&lam[i].mul(&lam[j]).mul(&gram[i][j]));
            }
        }
        acc
    };
    let non_radical = |lam: &[FieldElem]| -> bool {
        (0..n).any(|j| {
            let mut acc = field.zero();
            for i in 0..n {
                acc = acc.add(&lam[i].mul(&gram[i][j]));
            }
            !acc.is_zero()
        })
    };
    let good = |lam: &[FieldElem]| -> bool {
        lam.iter().any(|c| !c.is_zero()) && eval_q(lam).is_zero() && non_radical(lam)
    };

    let mut hits: Vec<Vec<FieldElem>> = Vec::new();
    // single basis directions
    for i in 0..n {
        let mut lam = vec![field.zero(); n];
        lam[i] = field.one();
        if good(&lam) {
            hits.push(lam);
        }
    }
    // coordinate planes: q_i + c g_ij + c^2 q_j = 0
    if hits.is_empty() || rng.is_some() {
        'planes: for i in 0..n {
            for j in i + 1..n {
                for c in plane_solutions(field, &qdiag[i], &gram[i][j], &qdiag[j]) {
                    let mut lam = vec![field.zero(); n];
                    lam[i] = field.one();
                    lam[j] = c;
                    if good(&lam) {
                        hits.push(lam);
                        if rng.is_none() {
                            break 'planes;
                        }
                    }
                }
            }
        }
    }
    if let Some(r) = rng {
        if !hits.is_empty() {
            let i = r.gen_range(0..hits.len());
            return Some(hits.swap_remove(i));
        }
        // randomized sampling keeps the choice seed-dependent
        for _ in 0..1 << 14 {
            let lam: Vec<FieldElem> = (0..n).map(|_| random_elem(field, r)).collect();
            if good(&lam) {
                return Some(lam);
            }
        }
    } else if !hits.is_empty() {
        return hits.into_iter().next();
    }
    exhaustive_search(field, n, &good)
}

/// Solutions c of `a + c b + c^2 d = 0` over k.
fn plane_solutions(
    field: BaseField,
    a: &FieldElem,
    b: &FieldElem,
    d: &FieldElem,
) -> Vec<FieldElem> {
    if d.is_zero() {
        if b.is_zero() {
            return vec![];
        }
        return vec![a.div(b).neg()];
    }
    let disc = b.mul(b).sub(&a.mul(d).mul(&FieldElem::from_i64(field, 4)));
    let Some(root) = disc.sqrt() else {
        return vec![];
    };
    let two_d_inv = d.add(d).inv().unwrap();
    let mut out = vec![b.neg().add(&root).mul(&two_d_inv)];
    if !root.is_zero() {
        out.push(b.neg().sub(&root).mul(&two_d_inv));
    }
    out
}

fn random_elem<R: Rng>(field: BaseField, rng: &mut R) -> FieldElem {
    match field {
        BaseField::Prime(p) => FieldElem::from_i64(field, rng.gen_range(0..p) as i64),
        BaseField::Rationals => FieldElem::from_i64(field, rng.gen_range(-4..=4)),
    }
}

/// Last resort: full sweep over F_p^n when small enough, small box over Q.
fn exhaustive_search(
    field: BaseField,
    n: usize,
    good: &dyn Fn(&[FieldElem]) -> bool,
) -> Option<Vec<FieldElem>> {
    let values: Vec<FieldElem> = match field {
        BaseField::Prime(p) => {
            if (p as f64).powi(n as i32) > 2e6 {
                return None;
            }
            (0..p)
                .map(|v| FieldElem::from_i64(field, v as i64))
                .collect()
        }
        BaseField::Rationals => (-2..=2).map(|v| FieldElem::from_i64(field, v)).collect(),
    };
    let m = values.len();
    let total = m.checked_pow(n as u32)?;
    if total > 2_000_000 {
        return None;
    }
    for idx in 0..total {
        let mut rest = idx;
        let lam: Vec<FieldElem> = (0..n)
            .map(|_| {
                let v = values[rest % m].clone();
                rest /= m;
                v
            })
            .collect();
        if good(&lam) {
            return Some(lam);
        }
    }
    None
}

/// Lifts a residue isotropic vector to an exactly isotropic primitive
/// element of the block. Newton steps double the valuation of q(x); the
/// frame correction finishes exactly once the margin allows.
fn lift_isotropic(
    block: &OModule,
    scale: i64,
    lam: &[FieldElem],
    frame: &[Octonion],
) -> Result<Octonion, LatticeError> {
    let field = block.field();
    let basis = block.basis();
    let mut x = Octonion::zero(field);
    for (b, c) in basis.iter().zip(lam) {
        x = x.add(&b.scale(&RationalScalar::constant(c.clone())));
    }
    if x.norm().is_zero() {
        return Ok(x);
    }
    let d = basis
        .iter()
        .find(|b| x.bilinear(b).valuation().finite() == Some(scale))
        .cloned()
        .expect("residue vector is non-radical");
    for _ in 0..64 {
        if x.norm().is_zero() {
            return Ok(x);
        }
        // exact stereographic finish from the frame when deep enough
        for p in frame {
            let pairing = p.bilinear(&x);
            if pairing.is_zero() {
                continue;
            }
            let c = x.norm().div(&pairing);
            let Some(coords) = block.solve_coords(p) else {
                continue;
            };
            let mu = depth_from_coords(&coords);
            if c.valuation().finite().map_or(true, |v| v >= mu + 1) {
                let z = x.sub(&p.scale(&c));
                debug_assert!(z.norm().is_zero());
                debug_assert!(block.contains(&z));
                return Ok(z);
            }
        }
        // Newton step: q(x - c d) = c^2 q(d)
        let c = x.norm().div(&x.bilinear(&d));
        debug_assert!(c.valuation().finite().is_some_and(|v| v >= 1));
        x = x.sub(&d.scale(&c));
    }
    Err(LatticeError::Internal(
        "isotropic lift did not terminate".into(),
    ))
}

fn reflect(v: &Octonion, z: &Octonion) -> Octonion {
    let c = z.bilinear(v).div(&v.norm());
    z.sub(&v.scale(&c))
}

/// Carries the isotropic frame into the orthogonal complement of the split
/// pair (x, y): reflections move x onto frame[0], then a shear by frame[0]
/// pushes the remaining frame off the partner while keeping it isotropic.
fn update_frame(
    frame: &[Octonion],
    x: &Octonion,
    y: &Octonion,
) -> Result<Vec<Octonion>, LatticeError> {
    let reflections: Vec<Octonion> = if *x == frame[0] {
        vec![]
    } else if !x.bilinear(&frame[0]).is_zero() {
        vec![x.sub(&frame[0])]
    } else if !x.bilinear(&frame[1]).is_zero() {
        vec![x.sub(&frame[1]), frame[1].sub(&frame[0])]
    } else {
        let f = frame[2..]
            .iter()
            .find(|f| !x.bilinear(f).is_zero())
            .ok_or_else(|| LatticeError::Internal("vector orthogonal to the frame".into()))?;
        let w = f.add(&frame[1]);
        vec![x.sub(&w), w.sub(&frame[0])]
    };
    for v in &reflections {
        debug_assert!(!v.norm().is_zero());
    }
    let apply = |z: &Octonion, vs: &[Octonion], reverse: bool| -> Octonion {
        let mut z = z.clone();
        if reverse {
            for v in vs.iter().rev() {
                z = reflect(v, &z);
            }
        } else {
            for v in vs {
                z = reflect(v, &z);
            }
        }
        z
    };
    debug_assert_eq!(apply(x, &reflections, false), frame[0]);
    let y1 = apply(y, &reflections, false);
    let s_pair = frame[0].bilinear(&y1);
    debug_assert_eq!(s_pair, x.bilinear(y));
    let mut out = Vec::with_capacity(frame.len() - 2);
    for f in &frame[2..] {
        let c = f.bilinear(&y1).div(&s_pair);
        let sheared = f.sub(&frame[0].scale(&c));
        let back = apply(&sheared, &reflections, true);
        debug_assert!(back.norm().is_zero());
        debug_assert!(back.bilinear(x).is_zero() && back.bilinear(y).is_zero());
        out.push(back);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GramKind;
    use rand::SeedableRng;

    const F5: BaseField = BaseField::Prime(5);

    fn profile_pattern(l: &Lattice) -> [i64; 8] {
        l.gram_standard_form().unwrap().exponents
    }

    #[test]
    fn standard_lattices_have_the_listed_patterns() {
        let l1 = Lattice::standard(F5);
        assert_eq!(profile_pattern(&l1), [0; 8]);

        let l2 = Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 1, 0]);
        assert_eq!(profile_pattern(&l2), [0, 0, 1, 1, 1, 1, 0, 0]);

        let l3 = Lattice::monomial(F5, [0, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(profile_pattern(&l3), [0, 1, 1, 1, 1, 1, 1, 0]);

        // the length-2 monomial case
        let l = Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(profile_pattern(&l), [0, 0, 0, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn profile_carries_split_kind_and_length() {
        let l2 = Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 1, 0]);
        let p = l2.gram_standard_form().unwrap();
        assert_eq!(p.kind, GramKind::Split);
        assert_eq!(p.length, 4);
        assert_eq!(p.r(), 2);
        assert_eq!(p.length as u64, l2.length_in(&l2.dual()).unwrap());
    }

    #[test]
    fn precondition_failures_are_reported() {
        let t = RationalScalar::t_power(F5, 1);
        // t^2-scaled pairings violate the sandwich
        let l = Lattice::monomial(F5, [0, 0, 2, 0, 0, 0, 0, 0]);
        assert!(matches!(
            l.gram_standard_form(),
            Err(LatticeError::Precondition(_))
        ));
        // a lattice not inside its dual
        let l = Lattice::standard(F5).scale(&t.inv().unwrap());
        assert!(matches!(
            l.gram_standard_form(),
            Err(LatticeError::Precondition(_))
        ));
    }

    #[test]
    fn seeded_profiles_remain_valid() {
        let l2 = Lattice::monomial(F5, [0, 0, 1, 0, 0, 0, 1, 0]);
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = l2.gram_standard_form_seeded(&mut rng).unwrap();
            assert_eq!(p.exponents, [0, 0, 1, 1, 1, 1, 0, 0]);
        }
    }

    #[test]
    fn residue_search_uses_plane_solutions() {
        // q = 2x^2 + xy - y^2 over F5
        let field = F5;
        let gram = vec![
            vec![FieldElem::from_i64(field, 4), FieldElem::from_i64(field, 1)],
            vec![FieldElem::from_i64(field, 1), FieldElem::from_i64(field, -2)],
        ];
        let qdiag = vec![
            FieldElem::from_i64(field, 2),
            FieldElem::from_i64(field, -1),
        ];
        let lam = find_residue_isotropic(field, &gram, &qdiag, None).unwrap();
        let q = lam[0]
            .mul(&lam[0])
            .mul(&qdiag[0])
            .add(&lam[0].mul(&lam[1]).mul(&gram[0][1]))
            .add(&lam[1].mul(&lam[1]).mul(&qdiag[1]));
        assert!(q.is_zero());
    }
}
