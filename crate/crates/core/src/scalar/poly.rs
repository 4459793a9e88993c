//! Sparse multivariate polynomials over ℚ(i).
//!
//! A `Monomial` is a sorted list of `(Var, exponent)` pairs with no zero
//! exponents; the empty list is the unit monomial. `Polynomial` maps
//! monomials to nonzero coefficients. Terms are ordered by grevlex with
//! variables in declaration order, so iteration and printing are
//! deterministic.

use super::gaussian::GaussianRational;
use super::ratfunc::Scalar;
use super::vars::Var;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A power product of parameters. Invariant: sorted by `Var`, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds from possibly unsorted pairs; zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            exps: map.into_iter().collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// Componentwise quotient; `None` when not divisible.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut i = 0;
        for &(v, e) in &other.exps {
            loop {
                if i >= self.exps.len() {
                    return None;
                }
                let (w, d) = self.exps[i];
                match w.cmp(&v) {
                    Ordering::Less => {
                        out.push((w, d));
                        i += 1;
                    }
                    Ordering::Equal => {
                        if d < e {
                            return None;
                        }
                        if d > e {
                            out.push((w, d - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        Some(Monomial { exps: out })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.checked_div(self).is_some()
    }

    /// Componentwise minimum (the monomial gcd).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1.min(other.exps[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { exps: out }
    }

    /// Componentwise maximum (the monomial lcm).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1.max(other.exps[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }
}

/// Grevlex with variables in declaration (interning) order: higher total
/// degree wins; on ties the monomial with the *smaller* exponent in the
/// last differing variable is the larger one.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut i = self.exps.len();
        let mut j = other.exps.len();
        while i > 0 || j > 0 {
            let a = if i > 0 { Some(self.exps[i - 1]) } else { None };
            let b = if j > 0 { Some(other.exps[j - 1]) } else { None };
            match (a, b) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(&vb) {
                    // self has a higher trailing var: its exponent there is
                    // bigger than other's (zero), so self is smaller.
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i -= 1;
                        j -= 1;
                    }
                },
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A multivariate polynomial over ℚ(i); no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        Polynomial { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(GaussianRational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Monomial::var(v), GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::unit()))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn constant_coeff(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::unit())
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// All variables that occur, in declaration order.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort();
        vs
    }

    /// Leading term under the storage (grevlex) order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The gcd of all term monomials (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::unit(),
        };
        it.fold(first, |acc, m| if acc.is_unit() { acc } else { acc.gcd(m) })
    }

    /// Divides every monomial by `m` (must divide each term).
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        if m.is_unit() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| {
                    (
                        n.checked_div(m).expect("monomial content division"),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact division: returns `q` with `self = q * d`, or `None`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut q = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(&dm)?;
            let qc = rc / &dc;
            // rem -= (qc * qm) * d
            for (m, c) in d.terms.iter() {
                rem.add_term(m.mul(&qm), -&(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Evaluates at a full assignment of every occurring variable.
    pub fn eval(
        &self,
        assignment: &BTreeMap<Var, GaussianRational>,
    ) -> Result<GaussianRational, Var> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let val = assignment.get(&v).ok_or(v)?;
                t *= &val.pow(e);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes scalars for some variables; untouched variables remain
    /// symbolic. Returns a rational function since values may be fractions.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Scalar>) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = Scalar::from_polynomial(Polynomial::constant(c.clone()));
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    Some(s) => t = &t * &s.pow_u32(e),
                    None => {
                        t = &t
                            * &Scalar::from_polynomial(Polynomial::term(
                                Monomial::var_pow(v, e),
                                GaussianRational::one(),
                            ))
                    }
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Makes the polynomial primitive: divides by the positive rational
    /// content of all coefficient parts and flips the sign so the leading
    /// coefficient is not display-negative. Returns the removed factor.
    pub fn primitive_part(&self) -> (Polynomial, GaussianRational) {
        if self.is_zero() {
            return (Polynomial::zero(), GaussianRational::one());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for part in [c.re(), c.im()] {
                if !part.is_zero() {
                    num_gcd = num_gcd.gcd(part.numer());
                    den_lcm = den_lcm.lcm(part.denom());
                }
            }
        }
        let mut content =
            GaussianRational::new(BigRational::new(num_gcd, den_lcm), BigRational::zero());
        if self.leading().unwrap().1.is_negative_for_display() {
            content = -content;
        }
        let inv = content.inv();
        (self.scale(&inv), content)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in rhs.terms.iter() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_for_display();
            let abs = if neg { -c } else { c.clone() };
            let leading_minus = k == 0 && neg;
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_needs_parens = !abs.is_real() && !abs.re().is_zero();
            // After a leading unary minus, a bare `v^e` would re-parse as
            // `(-v)^e`; force an explicit `1*` in that case.
            let unary_minus_pow = leading_minus && m.pairs().first().is_some_and(|&(_, e)| e > 1);
            if m.is_unit() {
                if coeff_needs_parens {
                    write!(f, "({abs})")?;
                } else {
                    write!(f, "{abs}")?;
                }
            } else if abs.is_one() && !unary_minus_pow {
                write!(f, "{m}")?;
            } else if coeff_needs_parens {
                write!(f, "({abs})*{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}


#[cfg(test)]
mod display_tests {
    use super::*;
    use crate::scalar::{param_set, parse_scalar};

    #[test]
    fn leading_negative_power_reparses() {
        // a bare `-v^2` would re-parse as `(-v)^2` under the grammar
        let v = Var::new("pd_v");
        let p = Polynomial::term(Monomial::var_pow(v, 2), GaussianRational::from_int(-1));
        let p = &p + &Polynomial::from_int(4);
        assert_eq!(p.to_string(), "-1*pd_v^2 + 4");
        let params = param_set(["pd_v"]);
        let s = parse_scalar(&p.to_string(), &params).unwrap();
        assert_eq!(s, Scalar::from_polynomial(p));
        // plain `-v` and interior minus stay unchanged
        let q = &Polynomial::term(Monomial::var(v), GaussianRational::from_int(-1))
            + &Polynomial::from_int(1);
        assert_eq!(q.to_string(), "-pd_v + 1");
        assert_eq!(
            parse_scalar(&q.to_string(), &params).unwrap(),
            Scalar::from_polynomial(q)
        );
    }
}
