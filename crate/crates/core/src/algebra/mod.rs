//! Finite-dimensional associative unital algebras presented by structure
//! constants, their elements, and exact inversion by linear solving.

pub mod linsolve;
mod tensor;

pub use tensor::{Perm, Tensor};

use crate::scalar::{param_set, parse_scalar, ExprError, Scalar};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("tensor orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("expected a tensor of order {expected}, got {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("element is not invertible")]
    SingularElement,
    #[error("tensor is not invertible")]
    SingularTensor,
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("slot {slot} out of range 1..{order}")]
    SlotOutOfRange { slot: usize, order: usize },
    #[error("inconsistent dimensions in algebra specification: {0}")]
    BadSpec(String),
    #[error("in `{context}`: {source}")]
    Expr { context: String, source: ExprError },
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A structure-constant presentation of a finite-dimensional associative
/// unital algebra. `mul_table[i][j]` holds the coefficients of `e_i · e_j`
/// in the basis.
pub struct AlgebraSpec {
    name: String,
    dim: usize,
    basis_names: Vec<String>,
    params: Vec<String>,
    unit: Vec<Scalar>,
    mul_table: Vec<Vec<Vec<Scalar>>>,
}

impl AlgebraSpec {
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        params: Vec<String>,
        unit: Vec<Scalar>,
        mul_table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(AlgebraError::BadSpec("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(AlgebraError::BadSpec(format!(
                "unit has {} coefficients, expected {dim}",
                unit.len()
            )));
        }
        if mul_table.len() != dim
            || mul_table
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|e| e.len() != dim))
        {
            return Err(AlgebraError::BadSpec(
                "multiplication table must be dim x dim x dim".into(),
            ));
        }
        Ok(Arc::new(AlgebraSpec {
            name: name.into(),
            dim,
            basis_names,
            params,
            unit,
            mul_table,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Structure constants of `e_i · e_j`.
    pub fn product_coeffs(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mul_table[i][j]
    }

    pub fn same_algebra(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
        Arc::ptr_eq(a, b) || (a.name == b.name && a.dim == b.dim)
    }

    /// Parses the `{"name", "dim", "basis", "unit", "mul", "params"}` JSON
    /// schema, with every coefficient a scalar-expression string.
    pub fn from_json(text: &str) -> Result<Arc<Self>, AlgebraError> {
        let file: AlgebraSpecFile =
            serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        Self::from_file(file)
    }

    fn from_file(file: AlgebraSpecFile) -> Result<Arc<Self>, AlgebraError> {
        if file.dim != file.basis.len() {
            return Err(AlgebraError::BadSpec(format!(
                "dim {} does not match basis of length {}",
                file.dim,
                file.basis.len()
            )));
        }
        let params = param_set(&file.params);
        let ctx = |what: &str| format!("{} of algebra `{}`", what, file.name);
        let unit = parse_coeff_vec(&file.unit, &params, &ctx("unit"))?;
        let mut mul_table = Vec::with_capacity(file.dim);
        for (i, row) in file.mul.iter().enumerate() {
            let mut out_row = Vec::with_capacity(file.dim);
            for (j, entry) in row.iter().enumerate() {
                out_row.push(parse_coeff_vec(
                    entry,
                    &params,
                    &ctx(&format!("mul[{i}][{j}]")),
                )?);
            }
            mul_table.push(out_row);
        }
        AlgebraSpec::new(file.name, file.basis, file.params, unit, mul_table)
    }
}

pub(crate) fn parse_coeff_vec(
    exprs: &[String],
    params: &BTreeSet<String>,
    context: &str,
) -> Result<Vec<Scalar>, AlgebraError> {
    exprs
        .iter()
        .map(|e| {
            parse_scalar(e, params).map_err(|source| AlgebraError::Expr {
                context: context.to_string(),
                source,
            })
        })
        .collect()
}

#[derive(Deserialize)]
struct AlgebraSpecFile {
    name: String,
    dim: usize,
    basis: Vec<String>,
    unit: Vec<String>,
    mul: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    params: Vec<String>,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpec({}, dim {})", self.name, self.dim)
    }
}

/// Outcome of the exhaustive associativity / unit-law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub associative: bool,
    pub unital: bool,
    pub failures: Vec<String>,
}

/// Verifies `(e_i·e_j)·e_k = e_i·(e_j·e_k)` over all triples and the unit
/// laws over all basis elements.
pub fn check_algebra(spec: &Arc<AlgebraSpec>) -> AlgebraReport {
    let n = spec.dim();
    let mut failures = Vec::new();
    let mut associative = true;
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(spec, i)).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = (&basis[i] * &basis[j]).unwrap();
                let left = (&left * &basis[k]).unwrap();
                let right = (&basis[j] * &basis[k]).unwrap();
                let right = (&basis[i] * &right).unwrap();
                if left != right {
                    associative = false;
                    failures.push(format!(
                        "associativity fails at ({}, {}, {})",
                        spec.basis_names[i], spec.basis_names[j], spec.basis_names[k]
                    ));
                }
            }
        }
    }
    let mut unital = true;
    let unit = Element::unit(spec);
    for (i, b) in basis.iter().enumerate() {
        if (&unit * b).unwrap() != *b || (b * &unit).unwrap() != *b {
            unital = false;
            failures.push(format!("unit law fails at {}", spec.basis_names[i]));
        }
    }
    AlgebraReport {
        associative,
        unital,
        failures,
    }
}

/// An element of a structure-constant algebra: a dense coefficient vector.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<AlgebraSpec>,
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(algebra: &Arc<AlgebraSpec>, coeffs: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if coeffs.len() != algebra.dim() {
            return Err(AlgebraError::BadSpec(format!(
                "element has {} coefficients, algebra dimension is {}",
                coeffs.len(),
                algebra.dim()
            )));
        }
        Ok(Element {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn zero(algebra: &Arc<AlgebraSpec>) -> Self {
        Element {
            algebra: algebra.clone(),
            coeffs: vec![Scalar::zero(); algebra.dim()],
        }
    }

    pub fn unit(algebra: &Arc<AlgebraSpec>) -> Self {
        Element {
            algebra: algebra.clone(),
            coeffs: algebra.unit.clone(),
        }
    }

    pub fn basis(algebra: &Arc<AlgebraSpec>, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); algebra.dim()];
        coeffs[i] = Scalar::one();
        Element {
            algebra: algebra.clone(),
            coeffs,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        self == &Element::unit(&self.algebra)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Views the element as an order-1 tensor.
    pub fn as_tensor(&self) -> Tensor {
        Tensor::from_entries(
            &self.algebra,
            1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u8], c.clone())),
        )
        .expect("order-1 tensor")
    }

    /// Inverse by solving the right-inverse linear system and verifying the
    /// result is also a left inverse.
    #[allow(clippy::needless_range_loop)]
    pub fn invert(&self) -> Result<Element, AlgebraError> {
        let n = self.algebra.dim();
        // (x · x')_k = sum_{i,j} x_i c_{ij}^k x'_j
        let mut matrix = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let c = self.algebra.product_coeffs(i, j);
                for k in 0..n {
                    if !c[k].is_zero() {
                        matrix[k][j] = &matrix[k][j] + &(&self.coeffs[i] * &c[k]);
                    }
                }
            }
        }
        let rhs: Vec<Vec<Scalar>> = self.algebra.unit.iter().map(|c| vec![c.clone()]).collect();
        let sol = linsolve::solve(&matrix, &rhs).ok_or(AlgebraError::SingularElement)?;
        let inv = Element {
            algebra: self.algebra.clone(),
            coeffs: sol.into_iter().map(|mut r| r.pop().unwrap()).collect(),
        };
        if (&inv * self)? != Element::unit(&self.algebra) {
            return Err(AlgebraError::SingularElement);
        }
        Ok(inv)
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, e: i64) -> Result<Element, AlgebraError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Element::unit(&self.algebra);
        for _ in 0..e.unsigned_abs() {
            acc = (&acc * &base)?;
        }
        Ok(acc)
    }

    pub fn substitute(
        &self,
        assignment: &std::collections::BTreeMap<crate::scalar::Var, Scalar>,
    ) -> Result<Element, crate::scalar::ScalarError> {
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.substitute(assignment))
                .collect::<Result<_, _>>()?,
        })
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        AlgebraSpec::same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for Element {}

impl Add for &Element {
    type Output = Result<Element, AlgebraError>;
    fn add(self, rhs: &Element) -> Self::Output {
        if !AlgebraSpec::same_algebra(&self.algebra, &rhs.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl Sub for &Element {
    type Output = Result<Element, AlgebraError>;
    fn sub(self, rhs: &Element) -> Self::Output {
        if !AlgebraSpec::same_algebra(&self.algebra, &rhs.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Bilinear extension of the multiplication table.
impl Mul for &Element {
    type Output = Result<Element, AlgebraError>;
    fn mul(self, rhs: &Element) -> Self::Output {
        if !AlgebraSpec::same_algebra(&self.algebra, &rhs.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let n = self.algebra.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                for (k, c) in self.algebra.product_coeffs(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&prod * c);
                    }
                }
            }
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: out,
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", self.algebra.basis_names[i])?;
            } else {
                write!(f, "{}*{}", c, self.algebra.basis_names[i])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    /// Q(i)[x]/(x^2): small commutative algebra with a nilpotent.
    pub fn dual_numbers() -> Arc<AlgebraSpec> {
        let z = Scalar::zero;
        let o = Scalar::one;
        AlgebraSpec::new(
            "dual",
            vec!["1".into(), "x".into()],
            vec![],
            vec![o(), z()],
            vec![
                vec![vec![o(), z()], vec![z(), o()]],
                vec![vec![z(), o()], vec![z(), z()]],
            ],
        )
        .unwrap()
    }
}
