#![allow(dead_code)] // each test target compiles its own copy

//! Shared test support: random commutative algebras of dimension ≤ 3 with
//! known square roots of unity, behind a random change of basis.
//!
//! Every template is a product of quotient rings `Q(i)[x]/(f)` (plus the
//! local ring `Q(i)[x,y]/(x²,xy,y²)`), so associativity, commutativity and
//! unitality hold by construction; `check_algebra` re-verifies them for a
//! few samples anyway. Square roots of unity are `±1` per local factor,
//! carried through the basis change.

use std::sync::Arc;
use xcknot_core::algebra::{linsolve, AlgebraSpec, Element, Tensor};
use xcknot_core::sample::Sampler;
use xcknot_core::scalar::{GaussianRational, Polynomial, Scalar};

/// A random commutative algebra, its unit-block decomposition data, and a
/// square root of unity chosen uniformly from `±1` per block.
pub struct CommutativeSample {
    pub algebra: Arc<AlgebraSpec>,
    /// κ with κ² = 1 (already in the new basis).
    pub sqrt_unity: Element,
}

fn small_value(s: &mut Sampler) -> Scalar {
    Scalar::constant(s.gaussian_rational())
}

/// Structure constants of `Q(i)[x]/(x^d - rel)` where `rel` has degree < d.
fn quotient_block(rel: &[Scalar]) -> Vec<Vec<Vec<Scalar>>> {
    let d = rel.len();
    // x^k as a coefficient vector, reduced
    let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * d);
    for k in 0..d {
        let mut v = vec![Scalar::zero(); d];
        v[k] = Scalar::one();
        powers.push(v);
    }
    for k in d..2 * d {
        // x^k = x^{k-d} * x^d = x^{k-d} * rel(x)
        let prev = powers[k - d].clone();
        let mut v = vec![Scalar::zero(); d];
        for (i, c) in prev.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // c * x^i * rel(x) = c * sum_j rel_j x^{i+j}
            for (j, r) in rel.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let target = &powers[i + j].clone();
                for (t, tv) in target.iter().enumerate() {
                    v[t] = &v[t] + &(&(c * r) * tv);
                }
            }
        }
        powers.push(v);
    }
    (0..d)
        .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
        .collect()
}

/// Block-diagonal direct sum of commutative blocks.
fn direct_sum(blocks: Vec<Vec<Vec<Vec<Scalar>>>>) -> (Arc<AlgebraSpec>, Vec<(usize, usize)>) {
    let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let dim: usize = dims.iter().sum();
    let mut offsets = Vec::new();
    let mut off = 0;
    for d in &dims {
        offsets.push((off, *d));
        off += d;
    }
    let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    for (b, block) in blocks.iter().enumerate() {
        let (o, d) = offsets[b];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    table[o + i][o + j][o + k] = block[i][j][k].clone();
                }
            }
        }
    }
    let mut unit = vec![Scalar::zero(); dim];
    for &(o, _) in &offsets {
        unit[o] = Scalar::one();
    }
    let names = (0..dim).map(|i| format!("e{}", i + 1)).collect();
    let spec = AlgebraSpec::new("commutative-sample", names, vec![], unit, table).unwrap();
    (spec, offsets)
}

/// `Q(i)[x,y]/(x², xy, y²)`: local, radical square zero.
fn fat_point_table() -> Vec<Vec<Vec<Scalar>>> {
    let z = Scalar::zero;
    let o = Scalar::one;
    vec![
        vec![
            vec![o(), z(), z()],
            vec![z(), o(), z()],
            vec![z(), z(), o()],
        ],
        vec![
            vec![z(), o(), z()],
            vec![z(), z(), z()],
            vec![z(), z(), z()],
        ],
        vec![
            vec![z(), z(), o()],
            vec![z(), z(), z()],
            vec![z(), z(), z()],
        ],
    ]
}

#[allow(clippy::needless_range_loop)]
fn change_basis(
    spec: &Arc<AlgebraSpec>,
    p: &[Vec<Scalar>],
    p_inv: &[Vec<Scalar>],
) -> Arc<AlgebraSpec> {
    let n = spec.dim();
    // f_a f_b = sum_{i,j,k,m} P_{ia} P_{jb} c_{ij}^k Pinv_{mk} f_m
    let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut coords = vec![Scalar::zero(); n];
            for i in 0..n {
                if p[i][a].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if p[j][b].is_zero() {
                        continue;
                    }
                    let scale = &p[i][a] * &p[j][b];
                    for (k, c) in spec.product_coeffs(i, j).iter().enumerate() {
                        if !c.is_zero() {
                            coords[k] = &coords[k] + &(&scale * c);
                        }
                    }
                }
            }
            // convert e-coordinates to f-coordinates
            for m in 0..n {
                let mut acc = Scalar::zero();
                for (k, c) in coords.iter().enumerate() {
                    acc = &acc + &(&p_inv[m][k] * c);
                }
                table[a][b][m] = acc;
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    for m in 0..n {
        let mut acc = Scalar::zero();
        for k in 0..n {
            acc = &acc + &(&p_inv[m][k] * Element::unit(spec).coeff(k));
        }
        unit[m] = acc;
    }
    let names = (0..n).map(|i| format!("f{}", i + 1)).collect();
    AlgebraSpec::new("commutative-sample", names, vec![], unit, table).unwrap()
}

/// Transforms old-basis coordinates to the new basis.
#[allow(clippy::needless_range_loop)]
fn to_new_coords(p_inv: &[Vec<Scalar>], coords: &[Scalar]) -> Vec<Scalar> {
    (0..coords.len())
        .map(|m| {
            let mut acc = Scalar::zero();
            for (k, c) in coords.iter().enumerate() {
                acc = &acc + &(&p_inv[m][k] * c);
            }
            acc
        })
        .collect()
}

pub fn random_commutative(s: &mut Sampler) -> CommutativeSample {
    // template: a product of local blocks
    let blocks: Vec<Vec<Vec<Vec<Scalar>>>> = match s.usize_below(8) {
        0 => vec![quotient_block(&[small_value(s)])],
        1 => vec![quotient_block(&[small_value(s), small_value(s)])],
        2 => vec![
            quotient_block(&[small_value(s)]),
            quotient_block(&[small_value(s)]),
        ],
        3 => vec![quotient_block(&[
            small_value(s),
            small_value(s),
            small_value(s),
        ])],
        4 => vec![
            quotient_block(&[small_value(s)]),
            quotient_block(&[small_value(s), small_value(s)]),
        ],
        5 => vec![
            quotient_block(&[small_value(s)]),
            quotient_block(&[small_value(s)]),
            quotient_block(&[small_value(s)]),
        ],
        6 => vec![fat_point_table()],
        _ => vec![quotient_block(&[Scalar::zero(), small_value(s)])],
    };
    let (template, offsets) = direct_sum(blocks);

    // kappa = ±1 per block, in template coordinates
    let mut kappa_coords = vec![Scalar::zero(); template.dim()];
    for &(o, _) in &offsets {
        kappa_coords[o] = if s.bool() {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
    }

    // random invertible change of basis with small integer entries
    let n = template.dim();
    let (p, p_inv) = loop {
        let p: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| Scalar::from_int(s.i64_in(-3, 3))).collect())
            .collect();
        let poly: Vec<Vec<Polynomial>> = p
            .iter()
            .map(|row| row.iter().map(|c| c.num().clone()).collect())
            .collect();
        if linsolve::det_poly(&poly).is_zero() {
            continue;
        }
        let rhs: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let inv = linsolve::solve(&p, &rhs).expect("invertible");
        break (p, inv);
    };

    let algebra = change_basis(&template, &p, &p_inv);
    let kappa = Element::new(&algebra, to_new_coords(&p_inv, &kappa_coords)).unwrap();
    CommutativeSample {
        algebra,
        sqrt_unity: kappa,
    }
}

/// A random invertible element of `A ⊗ A` with small exact entries.
pub fn random_invertible_r(algebra: &Arc<AlgebraSpec>, s: &mut Sampler) -> Tensor {
    let n = algebra.dim();
    loop {
        let entries: Vec<(Vec<u8>, Scalar)> = (0..n as u8)
            .flat_map(|i| (0..n as u8).map(move |j| vec![i, j]))
            .filter_map(|k| {
                // sparse-ish
                if s.usize_below(4) == 0 {
                    None
                } else {
                    Some((k, Scalar::constant(s.gaussian_rational())))
                }
            })
            .collect();
        let t = Tensor::from_entries(algebra, 2, entries).unwrap();
        if t.invert().is_ok() {
            return t;
        }
    }
}

/// A random invertible element of `A`.
pub fn random_invertible_element(algebra: &Arc<AlgebraSpec>, s: &mut Sampler) -> Element {
    loop {
        let coeffs: Vec<Scalar> = (0..algebra.dim())
            .map(|_| Scalar::constant(s.gaussian_rational()))
            .collect();
        let e = Element::new(algebra, coeffs).unwrap();
        if e.invert().is_ok() {
            return e;
        }
    }
}

/// Exact small Gaussian rational helper for expected values in tests.
pub fn gr(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}
