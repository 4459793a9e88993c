//! Emission of the polynomial system whose solutions are exactly the
//! XC-structures on a given algebra.
//!
//! For a dimension-`n` algebra the system lives in `2n² + 2n` fresh
//! unknowns: `r{i}{j}` and `rp{i}{j}` for the coordinates of `R` and
//! `R⁻¹`, `k{i}` and `kp{i}` for those of `κ` and `κ⁻¹` (for `SW` that is
//! the 40-unknown system). The equations encode `R·R′ = 1⊗1 = R′·R`,
//! `κκ′ = 1 = κ′κ`, both variants of (XC0), (XC1f), (XC2c), (XC2d) and
//! (XC3), expanded into basis coordinates.

use super::axiom_unknowns_structure;
use crate::algebra::{AlgebraError, AlgebraSpec, Element, Tensor};
use crate::scalar::{Polynomial, Scalar};
use std::sync::Arc;

/// Names of the fresh unknowns, in emission order.
pub fn unknown_names(dim: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * dim * dim + 2 * dim);
    for i in 1..=dim {
        for j in 1..=dim {
            names.push(format!("r{i}{j}"));
        }
    }
    for i in 1..=dim {
        for j in 1..=dim {
            names.push(format!("rp{i}{j}"));
        }
    }
    for i in 1..=dim {
        names.push(format!("k{i}"));
    }
    for i in 1..=dim {
        names.push(format!("kp{i}"));
    }
    names
}

fn push_tensor_coords(out: &mut Vec<Polynomial>, t: &Tensor) {
    for (_, c) in t.entries() {
        push_scalar(out, c);
    }
}

fn push_element_coords(out: &mut Vec<Polynomial>, e: &Element) {
    for c in e.coeffs() {
        push_scalar(out, c);
    }
}

fn push_scalar(out: &mut Vec<Polynomial>, c: &Scalar) {
    assert!(
        c.is_polynomial(),
        "axiom coordinates over fresh unknowns are polynomial"
    );
    if !c.is_zero() {
        out.push(c.num().clone());
    }
}

/// Emits the defining polynomial system of XC-structures on `algebra`.
pub fn xc_equations(algebra: &Arc<AlgebraSpec>) -> Result<Vec<Polynomial>, AlgebraError> {
    let x = axiom_unknowns_structure(algebra)?;
    let unit = Element::unit(algebra);
    let unit2 = Tensor::unit(algebra, 2);
    let mut eqs: Vec<Polynomial> = Vec::new();

    // invertibility of R and kappa, both sides
    push_tensor_coords(&mut eqs, &x.r().mul(x.r_inv())?.sub(&unit2)?);
    push_tensor_coords(&mut eqs, &x.r_inv().mul(x.r())?.sub(&unit2)?);
    push_element_coords(&mut eqs, &(&(x.kappa() * x.kappa_inv())? - &unit)?);
    push_element_coords(&mut eqs, &(&(x.kappa_inv() * x.kappa())? - &unit)?);

    // (XC0), both variants
    let kk = Tensor::product(&[&x.kappa().as_tensor(), &x.kappa().as_tensor()])?;
    let kk_inv = Tensor::product(&[&x.kappa_inv().as_tensor(), &x.kappa_inv().as_tensor()])?;
    push_tensor_coords(&mut eqs, &kk.mul(x.r())?.mul(&kk_inv)?.sub(x.r())?);
    push_tensor_coords(&mut eqs, &kk.mul(x.r_inv())?.mul(&kk_inv)?.sub(x.r_inv())?);

    // (XC1f)
    let lhs = super::contract_through(x.r(), Some(x.kappa()), true)?;
    let rhs = super::contract_through(x.r(), Some(x.kappa_inv()), false)?;
    push_element_coords(&mut eqs, &(&lhs - &rhs)?);

    // (XC2c) and (XC2d)
    push_tensor_coords(&mut eqs, &super::xc2c_difference(&x)?);
    push_tensor_coords(&mut eqs, &super::xc2d_difference(&x)?);

    // (XC3)
    let r12 = x.r().embed((1, 2), 3)?;
    let r13 = x.r().embed((1, 3), 3)?;
    let r23 = x.r().embed((2, 3), 3)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    push_tensor_coords(&mut eqs, &lhs.sub(&rhs)?);

    Ok(eqs)
}
