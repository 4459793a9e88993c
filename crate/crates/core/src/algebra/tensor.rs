//! Sparse tensors over a structure-constant algebra and the permutation
//! action on their legs.

use super::{linsolve, AlgebraError, AlgebraSpec, Element};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A permutation of tensor slots, stored as 0-based images: slot `i` moves
/// to slot `perm[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Perm {
        Perm((0..m).collect())
    }

    /// The transposition of slots `i` and `j` (0-based) in `1..=m`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<usize> = (0..m).collect();
        v.swap(i, j);
        Perm(v)
    }

    /// Validates that `images` (0-based) is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, AlgebraError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &im in &images {
            if im >= m || seen[im] {
                return Err(AlgebraError::NotAPermutation(m));
            }
            seen[im] = true;
        }
        Ok(Perm(images))
    }

    /// As written in permutation-group notation: `images[i]` is σ(i+1).
    pub fn from_one_based(images: Vec<usize>) -> Result<Perm, AlgebraError> {
        let m = images.len();
        let shifted: Vec<usize> = images
            .into_iter()
            .map(|i| i.checked_sub(1).ok_or(AlgebraError::NotAPermutation(m)))
            .collect::<Result<_, _>>()?;
        Perm::from_images(shifted)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &im) in self.0.iter().enumerate() {
            inv[im] = i;
        }
        Perm(inv)
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose_after(&self, first: &Perm) -> Perm {
        assert_eq!(self.size(), first.size());
        Perm(first.0.iter().map(|&i| self.0[i]).collect())
    }

    /// For σ ∈ S₂ₙ: the sign of σ(2i)−σ(2i−1) per consecutive pair, +1/−1.
    pub fn pair_sign_pattern(&self) -> Vec<i8> {
        self.0
            .chunks(2)
            .map(|c| if c[1] > c[0] { 1 } else { -1 })
            .collect()
    }
}

/// An element of `A^{⊗m}`: a sparse map from index tuples to coefficients.
#[derive(Clone)]
pub struct Tensor {
    algebra: Arc<AlgebraSpec>,
    order: usize,
    coeffs: BTreeMap<Vec<u8>, Scalar>,
}

impl Tensor {
    pub fn zero(algebra: &Arc<AlgebraSpec>, order: usize) -> Tensor {
        assert!(order > 0, "tensor order must be positive");
        Tensor {
            algebra: algebra.clone(),
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// `1 ⊗ 1 ⊗ … ⊗ 1` of the given order.
    pub fn unit(algebra: &Arc<AlgebraSpec>, order: usize) -> Tensor {
        let factors: Vec<Tensor> = (0..order)
            .map(|_| Element::unit(algebra).as_tensor())
            .collect();
        Tensor::product(&factors.iter().collect::<Vec<_>>()).expect("same algebra")
    }

    pub fn from_entries(
        algebra: &Arc<AlgebraSpec>,
        order: usize,
        entries: impl IntoIterator<Item = (Vec<u8>, Scalar)>,
    ) -> Result<Tensor, AlgebraError> {
        assert!(order > 0, "tensor order must be positive");
        let mut t = Tensor::zero(algebra, order);
        let n = algebra.dim();
        for (key, c) in entries {
            if key.len() != order || key.iter().any(|&i| i as usize >= n) {
                return Err(AlgebraError::BadSpec(format!(
                    "bad tensor key {key:?} for order {order}, dim {n}"
                )));
            }
            t.add_entry(key, c);
        }
        Ok(t)
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, key: &[u8]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_entry(&mut self, key: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Tensor) -> Result<Tensor, AlgebraError> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter() {
            out.add_entry(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Tensor) -> Result<Tensor, AlgebraError> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter() {
            out.add_entry(k.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(&self.algebra, self.order);
        }
        Tensor {
            algebra: self.algebra.clone(),
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, a)| (k.clone(), a * c))
                .collect(),
        }
    }

    fn check_compatible(&self, rhs: &Tensor) -> Result<(), AlgebraError> {
        if !AlgebraSpec::same_algebra(&self.algebra, &rhs.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        if self.order != rhs.order {
            return Err(AlgebraError::OrderMismatch(self.order, rhs.order));
        }
        Ok(())
    }

    /// Outer product: orders add, coefficients multiply.
    pub fn product(factors: &[&Tensor]) -> Result<Tensor, AlgebraError> {
        assert!(!factors.is_empty(), "empty tensor product");
        let algebra = factors[0].algebra.clone();
        for f in factors {
            if !AlgebraSpec::same_algebra(&algebra, &f.algebra) {
                return Err(AlgebraError::AlgebraMismatch);
            }
        }
        let order = factors.iter().map(|f| f.order).sum();
        let mut acc: Vec<(Vec<u8>, Scalar)> = vec![(Vec::with_capacity(order), Scalar::one())];
        for f in factors {
            let mut next = Vec::with_capacity(acc.len() * f.coeffs.len());
            for (key, c) in &acc {
                for (fkey, fc) in f.coeffs.iter() {
                    let mut k = key.clone();
                    k.extend_from_slice(fkey);
                    next.push((k, c * fc));
                }
            }
            acc = next;
        }
        Tensor::from_entries(&algebra, order, acc)
    }

    /// Componentwise product in the tensor-power algebra:
    /// `(x₁⊗…⊗x_m)(y₁⊗…⊗y_m) = x₁y₁ ⊗ … ⊗ x_m y_m`, extended bilinearly.
    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, rhs: &Tensor) -> Result<Tensor, AlgebraError> {
        self.check_compatible(rhs)?;
        let n = self.algebra.dim();
        let mut out = Tensor::zero(&self.algebra, self.order);
        for (ka, ca) in self.coeffs.iter() {
            for (kb, cb) in rhs.coeffs.iter() {
                // Expand the per-slot products e_{ka[t]} · e_{kb[t]}.
                let c = ca * cb;
                let mut partial: Vec<(Vec<u8>, Scalar)> = vec![(Vec::with_capacity(self.order), c)];
                for t in 0..self.order {
                    let prod = self.algebra.product_coeffs(ka[t] as usize, kb[t] as usize);
                    let mut next = Vec::with_capacity(partial.len());
                    for (key, coeff) in &partial {
                        for d in 0..n {
                            if prod[d].is_zero() {
                                continue;
                            }
                            let mut k = key.clone();
                            k.push(d as u8);
                            next.push((k, coeff * &prod[d]));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (k, c) in partial {
                    out.add_entry(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse in `A ⊗ A` via an exact `n²×n²` linear solve.
    pub fn invert(&self) -> Result<Tensor, AlgebraError> {
        if self.order != 2 {
            return Err(AlgebraError::WrongOrder {
                expected: 2,
                got: self.order,
            });
        }
        let n = self.algebra.dim();
        let nn = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        // (Q · (e_i ⊗ e_j))_{(k,l)} entries of the right-inverse system.
        let mut matrix = vec![vec![Scalar::zero(); nn]; nn];
        for (key, c) in self.coeffs.iter() {
            let (a, b) = (key[0] as usize, key[1] as usize);
            for i in 0..n {
                let pa = self.algebra.product_coeffs(a, i);
                for j in 0..n {
                    let pb = self.algebra.product_coeffs(b, j);
                    for k in 0..n {
                        if pa[k].is_zero() {
                            continue;
                        }
                        for l in 0..n {
                            if pb[l].is_zero() {
                                continue;
                            }
                            let add = &(c * &pa[k]) * &pb[l];
                            let cell = &mut matrix[idx(k, l)][idx(i, j)];
                            *cell = &*cell + &add;
                        }
                    }
                }
            }
        }
        let unit2 = Tensor::unit(&self.algebra, 2);
        let mut rhs = vec![vec![Scalar::zero()]; nn];
        for (key, c) in unit2.coeffs.iter() {
            rhs[idx(key[0] as usize, key[1] as usize)][0] = c.clone();
        }
        let sol = linsolve::solve(&matrix, &rhs).ok_or(AlgebraError::SingularTensor)?;
        let mut inv = Tensor::zero(&self.algebra, 2);
        for i in 0..n {
            for j in 0..n {
                inv.add_entry(vec![i as u8, j as u8], sol[idx(i, j)][0].clone());
            }
        }
        // The algebra is noncommutative in general: verify both sides.
        if inv.mul(self)? != unit2 || self.mul(&inv)? != unit2 {
            return Err(AlgebraError::SingularTensor);
        }
        Ok(inv)
    }

    /// Moves the leg in slot `i` to slot `σ(i)`.
    pub fn permute(&self, sigma: &Perm) -> Result<Tensor, AlgebraError> {
        if sigma.size() != self.order {
            return Err(AlgebraError::NotAPermutation(self.order));
        }
        let mut out = Tensor::zero(&self.algebra, self.order);
        for (key, c) in self.coeffs.iter() {
            let mut k = vec![0u8; self.order];
            for (i, &b) in key.iter().enumerate() {
                k[sigma.apply(i)] = b;
            }
            out.add_entry(k, c.clone());
        }
        Ok(out)
    }

    /// `Q` with its legs in slots `i` and `j` (1-based, matching the
    /// `R₁₂`-style notation) of `A^{⊗m}`, unit everywhere else.
    pub fn embed(&self, slots: (usize, usize), m: usize) -> Result<Tensor, AlgebraError> {
        if self.order != 2 {
            return Err(AlgebraError::WrongOrder {
                expected: 2,
                got: self.order,
            });
        }
        let (i, j) = slots;
        for s in [i, j] {
            if s < 1 || s > m {
                return Err(AlgebraError::SlotOutOfRange { slot: s, order: m });
            }
        }
        if i == j {
            return Err(AlgebraError::SlotOutOfRange { slot: j, order: m });
        }
        let mut factors: Vec<Tensor> = vec![self.clone()];
        let unit = Element::unit(&self.algebra).as_tensor();
        for _ in 0..m - 2 {
            factors.push(unit.clone());
        }
        let prod = Tensor::product(&factors.iter().collect::<Vec<_>>())?;
        // slot 1 -> i, slot 2 -> j, the rest fill the remaining slots in order
        let mut images = vec![i - 1, j - 1];
        for s in 0..m {
            if s != i - 1 && s != j - 1 {
                images.push(s);
            }
        }
        prod.permute(&Perm::from_images(images)?)
    }

    /// Multiplies all legs together in slot order, landing in `A`.
    pub fn multiply_legs(&self) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (key, c) in self.coeffs.iter() {
            let mut acc = Element::unit(&self.algebra);
            for &b in key.iter() {
                acc = (&acc * &Element::basis(&self.algebra, b as usize)).expect("same algebra");
            }
            out = (&out + &acc.scale(c)).expect("same algebra");
        }
        out
    }

    pub fn substitute(
        &self,
        assignment: &std::collections::BTreeMap<crate::scalar::Var, Scalar>,
    ) -> Result<Tensor, crate::scalar::ScalarError> {
        let mut out = Tensor::zero(&self.algebra, self.order);
        for (k, c) in self.coeffs.iter() {
            out.add_entry(k.clone(), c.substitute(assignment)?);
        }
        Ok(out)
    }
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        if !AlgebraSpec::same_algebra(&self.algebra, &other.algebra) || self.order != other.order {
            return false;
        }
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|((k1, c1), (k2, c2))| k1 == k2 && c1 == c2)
    }
}

impl Eq for Tensor {}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let names = self.algebra.basis_names();
        for (t, (key, c)) in self.coeffs.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            for (s, &b) in key.iter().enumerate() {
                if s > 0 {
                    write!(f, "(x)")?;
                }
                write!(f, "{}", names[b as usize])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::dual_numbers;

    #[test]
    fn unit_tensor_product() {
        let a = dual_numbers();
        let u = Element::unit(&a).as_tensor();
        let uu = Tensor::product(&[&u, &u]).unwrap();
        assert_eq!(uu, Tensor::unit(&a, 2));
        let u4 = Tensor::product(&[&uu, &uu]).unwrap();
        assert_eq!(u4, Tensor::unit(&a, 4));
    }

    #[test]
    fn mul_by_unit_is_identity() {
        let a = dual_numbers();
        let x = Element::basis(&a, 1).as_tensor();
        let u = Element::unit(&a).as_tensor();
        let p = Tensor::product(&[&x, &u]).unwrap();
        assert_eq!(p.mul(&Tensor::unit(&a, 2)).unwrap(), p);
    }

    #[test]
    fn permute_is_a_group_action() {
        let a = dual_numbers();
        let x = Element::basis(&a, 1).as_tensor();
        let u = Element::unit(&a).as_tensor();
        let t = Tensor::product(&[&x, &u, &x]).unwrap();
        let id = Perm::identity(3);
        assert_eq!(t.permute(&id).unwrap(), t);
        let sigma = Perm::from_images(vec![1, 2, 0]).unwrap();
        let tau = Perm::from_images(vec![0, 2, 1]).unwrap();
        let lhs = t.permute(&sigma).unwrap().permute(&tau).unwrap();
        let rhs = t.permute(&tau.compose_after(&sigma)).unwrap();
        assert_eq!(lhs, rhs);
        // involution
        let swap = Perm::transposition(2, 0, 1);
        let q = Tensor::product(&[&x, &u]).unwrap();
        assert_eq!(q.permute(&swap).unwrap().permute(&swap).unwrap(), q);
    }

    #[test]
    fn embed_is_coherent_with_permute() {
        let a = dual_numbers();
        let x = Element::basis(&a, 1).as_tensor();
        let u = Element::unit(&a).as_tensor();
        let q = Tensor::product(&[&x, &u]).unwrap();
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(q.embed((2, 1), 2).unwrap(), q.permute(&swap).unwrap());
        let unit2 = Tensor::unit(&a, 2);
        assert_eq!(unit2.embed((1, 2), 3).unwrap(), Tensor::unit(&a, 3));
    }

    #[test]
    fn invert_unit_tensor() {
        let a = dual_numbers();
        let unit2 = Tensor::unit(&a, 2);
        assert_eq!(unit2.invert().unwrap(), unit2);
    }
}
