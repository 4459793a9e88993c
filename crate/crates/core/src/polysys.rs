//! Multivariate polynomial ideals over a pluggable coefficient field,
//! multivariate division, Buchberger's algorithm, and ideal membership.
//!
//! The coefficient field is ℚ(i) or ℚ(i)(constant parameters): a
//! [`FieldPoly`] keeps its terms sorted under an explicit [`MonomialOrder`]
//! whose variable list defines the *main* variables — anything else
//! occurring in a coefficient is a constant parameter and is inverted
//! exactly as a rational function. Division records its quotients so every
//! reduction yields a checkable certificate `f = Σ qᵢgᵢ + r`.

use crate::algebra::Element;
use crate::scalar::{param_set, parse_scalar, ExprError, Monomial, Polynomial, Scalar, Var};
use crate::sweedler;
use serde::Deserialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolysysError {
    #[error("resource cap exceeded: {0}")]
    ResourceExceeded(String),
    #[error("generator has a denominator `{0}` involving main variables")]
    NonConstantDenominator(String),
    #[error("variables and constants overlap: `{0}`")]
    VarConstantOverlap(String),
    #[error("division by a zero polynomial")]
    ZeroDivisor,
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Grevlex,
}

/// A monomial order on an explicit list of main variables.
#[derive(Clone, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    vars: Vec<Var>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, vars: impl IntoIterator<Item = impl AsRef<str>>) -> MonomialOrder {
        MonomialOrder {
            kind,
            vars: vars.into_iter().map(|s| Var::new(s.as_ref())).collect(),
        }
    }

    pub fn lex(vars: impl IntoIterator<Item = impl AsRef<str>>) -> MonomialOrder {
        MonomialOrder::new(OrderKind::Lex, vars)
    }

    pub fn grevlex(vars: impl IntoIterator<Item = impl AsRef<str>>) -> MonomialOrder {
        MonomialOrder::new(OrderKind::Grevlex, vars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    fn exponents(&self, m: &Monomial) -> Vec<u32> {
        self.vars.iter().map(|&v| m.exponent(v)).collect()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        match self.kind {
            OrderKind::Lex => ea.cmp(&eb),
            OrderKind::Grevlex => {
                let da: u32 = ea.iter().sum();
                let db: u32 = eb.iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for (x, y) in ea.iter().rev().zip(eb.iter().rev()) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        // smaller exponent in the trailing variable wins
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Splits a raw monomial into its main-variable part and the part made
    /// of constant parameters.
    fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let mut main = Vec::new();
        let mut consts = Vec::new();
        for &(v, e) in m.pairs() {
            if self.vars.contains(&v) {
                main.push((v, e));
            } else {
                consts.push((v, e));
            }
        }
        (Monomial::from_pairs(main), Monomial::from_pairs(consts))
    }
}

/// A polynomial in the order's main variables with exact coefficients in
/// ℚ(i)(constants). Terms are sorted strictly descending.
#[derive(Clone)]
pub struct FieldPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl FieldPoly {
    pub fn zero() -> FieldPoly {
        FieldPoly { terms: Vec::new() }
    }

    pub fn term(m: Monomial, c: Scalar) -> FieldPoly {
        if c.is_zero() {
            return FieldPoly::zero();
        }
        FieldPoly {
            terms: vec![(m, c)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    fn from_unsorted(
        entries: impl IntoIterator<Item = (Monomial, Scalar)>,
        order: &MonomialOrder,
    ) -> FieldPoly {
        let mut map: Vec<(Monomial, Scalar)> = Vec::new();
        'outer: for (m, c) in entries {
            if c.is_zero() {
                continue;
            }
            for (m0, c0) in map.iter_mut() {
                if *m0 == m {
                    *c0 = &*c0 + &c;
                    continue 'outer;
                }
            }
            map.push((m, c));
        }
        map.retain(|(_, c)| !c.is_zero());
        map.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        FieldPoly { terms: map }
    }

    /// Interprets a raw polynomial, moving constant parameters into the
    /// coefficients.
    pub fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> FieldPoly {
        FieldPoly::from_unsorted(
            p.terms().map(|(m, c)| {
                let (main, consts) = order.split(m);
                (
                    main,
                    Scalar::from_polynomial(Polynomial::term(consts, c.clone())),
                )
            }),
            order,
        )
    }

    /// Interprets a rational function whose denominator involves only
    /// constants.
    pub fn from_scalar(s: &Scalar, order: &MonomialOrder) -> Result<FieldPoly, PolysysError> {
        let den = s.den();
        if den.vars().iter().any(|v| order.vars.contains(v)) {
            return Err(PolysysError::NonConstantDenominator(den.to_string()));
        }
        let den_inv = Scalar::from_polynomial(den.clone())
            .inv()
            .expect("nonzero denominator");
        let mut p = FieldPoly::from_polynomial(s.num(), order);
        for (_, c) in p.terms.iter_mut() {
            *c = &*c * &den_inv;
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Scalar) -> FieldPoly {
        if c.is_zero() {
            return FieldPoly::zero();
        }
        FieldPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> FieldPoly {
        match self.leading() {
            None => FieldPoly::zero(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn add(&self, other: &FieldPoly, order: &MonomialOrder) -> FieldPoly {
        self.add_scaled_shifted(other, &Monomial::unit(), &Scalar::one(), order)
    }

    pub fn sub(&self, other: &FieldPoly, order: &MonomialOrder) -> FieldPoly {
        self.add_scaled_shifted(other, &Monomial::unit(), &Scalar::from_int(-1), order)
    }

    /// `self + c · m · other` by sorted merge.
    pub fn add_scaled_shifted(
        &self,
        other: &FieldPoly,
        m: &Monomial,
        c: &Scalar,
        order: &MonomialOrder,
    ) -> FieldPoly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = if i >= self.terms.len() {
                false
            } else if j >= other.terms.len() {
                true
            } else {
                let mj = other.terms[j].0.mul(m);
                match order.cmp(&self.terms[i].0, &mj) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let sum = &self.terms[i].1 + &(&other.terms[j].1 * c);
                        if !sum.is_zero() {
                            out.push((mj, sum));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                }
            };
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                out.push((other.terms[j].0.mul(m), &other.terms[j].1 * c));
                j += 1;
            }
        }
        FieldPoly { terms: out }
    }

    pub fn mul(&self, other: &FieldPoly, order: &MonomialOrder) -> FieldPoly {
        let mut acc = FieldPoly::zero();
        for (m, c) in &self.terms {
            acc = acc.add_scaled_shifted(other, m, c, order);
        }
        acc
    }
}

impl PartialEq for FieldPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((m1, c1), (m2, c2))| m1 == m2 && c1 == c2)
    }
}

impl Eq for FieldPoly {}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            // flip a sign-leading coefficient into the separator
            let neg = c
                .num()
                .leading()
                .is_some_and(|(_, lead)| lead.is_negative_for_display());
            let c = if k > 0 && neg { -c } else { c.clone() };
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_unit() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Quotients and remainder of one multivariate division.
pub struct DivisionCertificate {
    pub quotients: Vec<FieldPoly>,
    pub remainder: FieldPoly,
}

impl DivisionCertificate {
    /// Re-expands `Σ qᵢ gᵢ + r`; equal to the dividend when the division
    /// was correct.
    pub fn reassemble(&self, gens: &[FieldPoly], order: &MonomialOrder) -> FieldPoly {
        let mut acc = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(gens) {
            acc = acc.add(&q.mul(g, order), order);
        }
        acc
    }
}

/// Multivariate division of `f` by the list `gens`: no remainder monomial
/// is divisible by any leading monomial of `gens`.
pub fn divide(f: &FieldPoly, gens: &[FieldPoly], order: &MonomialOrder) -> DivisionCertificate {
    assert!(
        !gens.is_empty() && gens.iter().all(|g| !g.is_zero()),
        "divisors must be nonzero"
    );
    let mut quotients = vec![FieldPoly::zero(); gens.len()];
    // The leading monomial of `work` strictly decreases, so irreducible
    // terms arrive in sorted order.
    let mut remainder_terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut work = f.clone();
    'outer: while let Some((wm, wc)) = work.leading().cloned() {
        for (gi, g) in gens.iter().enumerate() {
            let (gm, gc) = g.leading().expect("nonzero divisor");
            if let Some(q) = wm.checked_div(gm) {
                let qc = (&wc / gc).expect("nonzero leading coefficient");
                quotients[gi] = quotients[gi].add_scaled_shifted(
                    &FieldPoly::term(q.clone(), qc.clone()),
                    &Monomial::unit(),
                    &Scalar::one(),
                    order,
                );
                work = work.add_scaled_shifted(g, &q, &-&qc, order);
                continue 'outer;
            }
        }
        remainder_terms.push(work.terms.remove(0));
    }
    DivisionCertificate {
        quotients,
        remainder: FieldPoly {
            terms: remainder_terms,
        },
    }
}

/// Remainder of `f` under multivariate division by `gens`.
pub fn normal_form(f: &FieldPoly, gens: &[FieldPoly], order: &MonomialOrder) -> FieldPoly {
    divide(f, gens, order).remainder
}

/// Generators plus their order and constant parameters.
pub struct Ideal {
    pub gens: Vec<FieldPoly>,
    pub order: MonomialOrder,
    pub constants: Vec<String>,
}

impl Ideal {
    pub fn new(
        gens: Vec<FieldPoly>,
        order: MonomialOrder,
        constants: Vec<String>,
    ) -> Result<Ideal, PolysysError> {
        for c in &constants {
            if order.vars.contains(&Var::new(c)) {
                return Err(PolysysError::VarConstantOverlap(c.clone()));
            }
        }
        Ok(Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            order,
            constants,
        })
    }

    /// Parses the `{"vars", "constants", "order", "gens"}` JSON schema.
    pub fn from_json(text: &str) -> Result<Ideal, PolysysError> {
        #[derive(Deserialize)]
        struct IdealFile {
            vars: Vec<String>,
            #[serde(default)]
            constants: Vec<String>,
            #[serde(default = "default_order")]
            order: String,
            gens: Vec<String>,
        }
        fn default_order() -> String {
            "grevlex".into()
        }
        let file: IdealFile =
            serde_json::from_str(text).map_err(|e| PolysysError::Json(e.to_string()))?;
        let kind = match file.order.as_str() {
            "lex" => OrderKind::Lex,
            "grevlex" => OrderKind::Grevlex,
            other => return Err(PolysysError::Json(format!("unknown order `{other}`"))),
        };
        let order = MonomialOrder::new(kind, &file.vars);
        let mut names: BTreeSet<String> = file.vars.iter().cloned().collect();
        names.extend(file.constants.iter().cloned());
        let mut gens = Vec::new();
        for g in &file.gens {
            let s = parse_scalar(g, &names)?;
            gens.push(FieldPoly::from_scalar(&s, &order)?);
        }
        Ideal::new(gens, order, file.constants)
    }

    /// Parses one polynomial over this ideal's variables and constants.
    pub fn parse_member(&self, text: &str) -> Result<FieldPoly, PolysysError> {
        let mut names: BTreeSet<String> = self
            .order
            .vars
            .iter()
            .map(|v| v.name().to_string())
            .collect();
        names.extend(self.constants.iter().cloned());
        let s = parse_scalar(text, &names)?;
        FieldPoly::from_scalar(&s, &self.order)
    }
}

/// Hard resource caps for the basis computation.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_basis: usize,
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 500,
            max_terms: 200_000,
        }
    }
}

fn spoly(f: &FieldPoly, g: &FieldPoly, order: &MonomialOrder) -> FieldPoly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let lcm = fm.lcm(gm);
    let qf = lcm.checked_div(fm).expect("lcm divisible");
    let qg = lcm.checked_div(gm).expect("lcm divisible");
    let a = FieldPoly::zero().add_scaled_shifted(f, &qf, &fc.inv().unwrap(), order);
    a.add_scaled_shifted(g, &qg, &-&gc.inv().unwrap(), order)
}

/// Buchberger's algorithm with the coprimality and chain criteria and the
/// normal (minimal lcm degree) selection strategy. Returns the reduced
/// Gröbner basis, which is unique for the given order.
pub fn buchberger(ideal: &Ideal, limits: &Limits) -> Result<Vec<FieldPoly>, PolysysError> {
    let order = &ideal.order;
    let mut basis: Vec<FieldPoly> = Vec::new();
    for g in &ideal.gens {
        let r = if basis.is_empty() {
            g.clone()
        } else {
            normal_form(g, &basis, order)
        };
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.len() > limits.max_basis {
        return Err(PolysysError::ResourceExceeded(format!(
            "basis grew past {} elements",
            limits.max_basis
        )));
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal strategy: minimal total degree of the lcm
        let &(i, j) = pending
            .iter()
            .min_by_key(|&&(i, j)| {
                let lcm = basis[i]
                    .leading()
                    .unwrap()
                    .0
                    .lcm(&basis[j].leading().unwrap().0);
                (lcm.total_degree(), i, j)
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        let lmi = basis[i].leading().unwrap().0.clone();
        let lmj = basis[j].leading().unwrap().0.clone();
        let lcm = lmi.lcm(&lmj);
        // Buchberger 1: coprime leading monomials
        if lcm == lmi.mul(&lmj) {
            continue;
        }
        // chain criterion: some k with lm_k | lcm and both pairs done
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if r.num_terms() > limits.max_terms {
            return Err(PolysysError::ResourceExceeded(format!(
                "reduced S-polynomial has {} terms (cap {})",
                r.num_terms(),
                limits.max_terms
            )));
        }
        basis.push(r.monic());
        let new = basis.len() - 1;
        if basis.len() > limits.max_basis {
            return Err(PolysysError::ResourceExceeded(format!(
                "basis grew past {} elements",
                limits.max_basis
            )));
        }
        for k in 0..new {
            pending.insert((k, new));
        }
    }
    // minimize: drop elements whose lm is divisible by another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[i]
                && keep[j]
                && basis[j]
                    .leading()
                    .unwrap()
                    .0
                    .divides(&basis[i].leading().unwrap().0)
                && (basis[i].leading().unwrap().0 != basis[j].leading().unwrap().0 || j < i)
            {
                keep[i] = false;
            }
        }
    }
    let minimal: Vec<FieldPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // reduce: each element fully reduced against the others
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<FieldPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _g)| j != i).map(|(_j, g)| g.clone())
            .collect();
        let r = if others.is_empty() {
            minimal[i].clone()
        } else {
            normal_form(&minimal[i], &others, order)
        };
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|a, b| order.cmp(&a.leading().unwrap().0, &b.leading().unwrap().0));
    Ok(reduced)
}

/// `f ∈ I` decided by reduction against a Gröbner basis of `I`.
pub fn ideal_membership(
    f: &FieldPoly,
    ideal: &Ideal,
    limits: &Limits,
) -> Result<bool, PolysysError> {
    let basis = buchberger(ideal, limits)?;
    if basis.is_empty() {
        return Ok(f.is_zero());
    }
    Ok(normal_form(f, &basis, &ideal.order).is_zero())
}

/// The coefficients `p_{ij}^±` of `(κ⊗κ)·R^{±1}·(κ⁻¹⊗κ⁻¹) − R^{±1}` on SW,
/// with `κ = l1 + l2·s + l3·w + l4·sw` symbolic, `R = Σ m{ij} eᵢ⊗eⱼ`,
/// `R⁻¹ = Σ mp{ij} eᵢ⊗eⱼ`, and `κ⁻¹` substituted via the closed form
/// `(2l1 − κ)/(l1² − l2²)` so the only denominators are powers of
/// `l1² − l2²`.
///
/// The `(i, j)` keys use the slot enumeration transposed against the
/// `μ{ij}` enumeration: `p_{3,1}^+` is the coefficient on `1 ⊗ w` and
/// comes out as `2(λ₂²μ₁₃ − λ₃λ₂μ₁₂ + λ₁λ₂μ₁₄ − λ₁λ₄μ₁₂)/(λ₁²−λ₂²)`.
pub struct Xc0Coefficients {
    /// `(i, j, positive)` (1-based) → the rational function `p_{ij}^±`.
    pub fractions: BTreeMap<(usize, usize, bool), Scalar>,
    /// Same keys → `(primitive numerator, power of l1²−l2² cleared)`.
    pub cleared: BTreeMap<(usize, usize, bool), (Polynomial, u32)>,
}

impl Xc0Coefficients {
    pub fn fraction(&self, i: usize, j: usize, positive: bool) -> &Scalar {
        &self.fractions[&(i, j, positive)]
    }

    /// Nonzero cleared numerators, deterministically ordered; the
    /// generators of the cleared (XC0)-ideal.
    pub fn ideal_generators(&self) -> Vec<Polynomial> {
        self.cleared
            .values()
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// Computes the `p_{ij}^±` symbolically on the Sweedler algebra.
pub fn xc0_coefficients() -> Xc0Coefficients {
    let spec = sweedler::sweedler_spec();
    let names = param_set(["l1", "l2", "l3", "l4"]);
    let kappa = Element::new(
        &spec,
        ["l1", "l2", "l3", "l4"]
            .iter()
            .map(|t| parse_scalar(t, &names).unwrap())
            .collect(),
    )
    .unwrap();
    let kappa_inv = sweedler::invert_by_closed_form(&kappa).expect("generically invertible");
    let n = spec.dim();
    let sym_tensor = |prefix: &str| {
        crate::algebra::Tensor::from_entries(
            &spec,
            2,
            (0..n).flat_map(|i| {
                (0..n).map(move |j| {
                    (
                        vec![i as u8, j as u8],
                        Scalar::param(&format!("{prefix}{}{}", i + 1, j + 1)),
                    )
                })
            }),
        )
        .unwrap()
    };
    let r = sym_tensor("m");
    let r_inv = sym_tensor("mp");

    let kk = crate::algebra::Tensor::product(&[&kappa.as_tensor(), &kappa.as_tensor()]).unwrap();
    let kk_inv =
        crate::algebra::Tensor::product(&[&kappa_inv.as_tensor(), &kappa_inv.as_tensor()]).unwrap();
    let denominator = {
        let l1 = Polynomial::var(Var::new("l1"));
        let l2 = Polynomial::var(Var::new("l2"));
        &(&l1 * &l1) - &(&l2 * &l2)
    };

    let mut fractions = BTreeMap::new();
    let mut cleared = BTreeMap::new();
    for (tensor, positive) in [(&r, true), (&r_inv, false)] {
        let conj = kk.mul(tensor).unwrap().mul(&kk_inv).unwrap();
        let diff = conj.sub(tensor).unwrap();
        for i in 0..n {
            for j in 0..n {
                // key (i, j) <-> tensor slot (j, i)
                let p = diff.coeff(&[j as u8, i as u8]);
                // peel off the power of l1^2 - l2^2
                let mut power = 0u32;
                let mut den = p.den().clone();
                while let Some(q) = den.div_exact(&denominator) {
                    den = q;
                    power += 1;
                }
                assert!(
                    den.is_one() || p.is_zero(),
                    "unexpected denominator {den} in p[{i}][{j}]"
                );
                let (prim, _) = p.num().primitive_part();
                fractions.insert((i + 1, j + 1, positive), p);
                cleared.insert((i + 1, j + 1, positive), (prim, power));
            }
        }
    }
    Xc0Coefficients { fractions, cleared }
}

/// The cleared (XC0)-ideal on SW: generators are the primitive numerators
/// of all nonzero `p_{ij}^±`, over the variables `m{ij}`, `mp{ij}`, `l3`,
/// `l4`, with `l1`, `l2` as constants (they appear in denominators).
pub fn xc0_ideal() -> Ideal {
    let coeffs = xc0_coefficients();
    let mut vars: Vec<String> = Vec::new();
    for prefix in ["m", "mp"] {
        for i in 1..=4 {
            for j in 1..=4 {
                vars.push(format!("{prefix}{i}{j}"));
            }
        }
    }
    vars.push("l3".into());
    vars.push("l4".into());
    let order = MonomialOrder::grevlex(&vars);
    let gens = coeffs
        .ideal_generators()
        .iter()
        .map(|p| FieldPoly::from_polynomial(p, &order))
        .collect();
    Ideal::new(gens, order, vec!["l1".into(), "l2".into()]).expect("disjoint vars and constants")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(text: &str, order: &MonomialOrder, consts: &[&str]) -> FieldPoly {
        let mut names: BTreeSet<String> =
            order.vars().iter().map(|v| v.name().to_string()).collect();
        names.extend(consts.iter().map(|s| s.to_string()));
        FieldPoly::from_scalar(&parse_scalar(text, &names).unwrap(), order).unwrap()
    }

    #[test]
    fn normal_form_basics() {
        let order = MonomialOrder::lex(["x", "y"]);
        let g = fp("x^2 + y", &order, &[]);
        assert!(normal_form(&g, std::slice::from_ref(&g), &order).is_zero());
        let x2 = fp("x^2", &order, &[]);
        let x = fp("x", &order, &[]);
        assert!(normal_form(&x2, &[x], &order).is_zero());
    }

    #[test]
    fn normal_form_by_hand() {
        // x^2 + y reduced by x - y under lex x > y: x^2 -> xy -> y^2, so
        // the remainder is y^2 + y.
        let order = MonomialOrder::lex(["x", "y"]);
        let f = fp("x^2 + y", &order, &[]);
        let g = fp("x - y", &order, &[]);
        let r = normal_form(&f, std::slice::from_ref(&g), &order);
        assert_eq!(r, fp("y^2 + y", &order, &[]));
        // division certificate reassembles f
        let cert = divide(&f, &[g], &order);
        let back = cert.reassemble(&[fp("x - y", &order, &[])], &order);
        assert_eq!(back, f);
    }

    #[test]
    fn buchberger_principal_ideal() {
        let order = MonomialOrder::grevlex(["x"]);
        let ideal = Ideal::new(vec![fp("x", &order, &[])], order.clone(), vec![]).unwrap();
        let basis = buchberger(&ideal, &Limits::default()).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], fp("x", &order, &[]));
    }

    #[test]
    fn cyclic3_self_certifies() {
        let order = MonomialOrder::grevlex(["x", "y", "z"]);
        let gens = vec![
            fp("x + y + z", &order, &[]),
            fp("x*y + y*z + z*x", &order, &[]),
            fp("x*y*z - 1", &order, &[]),
        ];
        let ideal = Ideal::new(gens.clone(), order.clone(), vec![]).unwrap();
        let basis = buchberger(&ideal, &Limits::default()).unwrap();
        for g in &gens {
            assert!(normal_form(g, &basis, &order).is_zero());
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = spoly(&basis[i], &basis[j], &order);
                assert!(normal_form(&s, &basis, &order).is_zero());
            }
        }
        // trivial membership cross-check
        let ideal2 = Ideal::new(gens, order.clone(), vec![]).unwrap();
        assert!(
            ideal_membership(&fp("x + y + z", &order, &[]), &ideal2, &Limits::default()).unwrap()
        );
    }

    #[test]
    fn membership_corner_cases() {
        let order = MonomialOrder::grevlex(["x", "y"]);
        let ideal = Ideal::new(
            vec![fp("x", &order, &[]), fp("y", &order, &[])],
            order.clone(),
            vec![],
        )
        .unwrap();
        assert!(ideal_membership(&FieldPoly::zero(), &ideal, &Limits::default()).unwrap());
        assert!(!ideal_membership(&fp("1", &order, &[]), &ideal, &Limits::default()).unwrap());
        // f*g in <f>
        let order2 = MonomialOrder::grevlex(["x", "y"]);
        let f = fp("x^2 + y", &order2, &[]);
        let g = fp("x*y - 3", &order2, &[]);
        let prod = f.mul(&g, &order2);
        let pid = Ideal::new(vec![f], order2.clone(), vec![]).unwrap();
        assert!(ideal_membership(&prod, &pid, &Limits::default()).unwrap());
    }

    #[test]
    fn constants_are_invertible_coefficients() {
        // <a*x> with a constant: x reduces to 0
        let order = MonomialOrder::grevlex(["x"]);
        let ideal = Ideal::new(
            vec![fp("a*x", &order, &["a"])],
            order.clone(),
            vec!["a".into()],
        )
        .unwrap();
        assert!(ideal_membership(&fp("x", &order, &["a"]), &ideal, &Limits::default()).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{
            "vars": ["x", "y", "z"],
            "order": "grevlex",
            "gens": ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]
        }"#;
        let ideal = Ideal::from_json(text).unwrap();
        assert_eq!(ideal.gens.len(), 3);
        let member = ideal.parse_member("x + y + z").unwrap();
        assert!(ideal_membership(&member, &ideal, &Limits::default()).unwrap());
    }
}

#[cfg(test)]
mod xc0_tests {
    use super::*;
    use crate::sweedler::example_xc;
    use crate::xc::XCStructure;

    fn example1_assignment() -> BTreeMap<Var, Scalar> {
        let x: XCStructure = example_xc(1).unwrap();
        let mut map = BTreeMap::new();
        for i in 0..4 {
            map.insert(Var::new(&format!("l{}", i + 1)), x.kappa().coeff(i).clone());
            for j in 0..4 {
                map.insert(
                    Var::new(&format!("m{}{}", i + 1, j + 1)),
                    x.r().coeff(&[i as u8, j as u8]),
                );
                map.insert(
                    Var::new(&format!("mp{}{}", i + 1, j + 1)),
                    x.r_inv().coeff(&[i as u8, j as u8]),
                );
            }
        }
        map
    }

    #[test]
    fn example1_values_kill_every_coefficient() {
        let coeffs = xc0_coefficients();
        let point = example1_assignment();
        for ((i, j, positive), p) in &coeffs.fractions {
            let v = p.substitute(&point).unwrap();
            assert!(
                v.is_zero(),
                "p[{i}][{j}]{} nonzero at the first family's values",
                if *positive { "+" } else { "-" }
            );
        }
    }

    #[test]
    fn key_combination_reduces_in_the_two_generator_ideal() {
        let coeffs = xc0_coefficients();
        let mut vars: Vec<String> = Vec::new();
        for prefix in ["m", "mp"] {
            for i in 1..=4 {
                for j in 1..=4 {
                    vars.push(format!("{prefix}{i}{j}"));
                }
            }
        }
        vars.push("l3".into());
        vars.push("l4".into());
        let order = MonomialOrder::grevlex(&vars);
        let p31 = FieldPoly::from_scalar(coeffs.fraction(3, 1, true), &order).unwrap();
        let p41 = FieldPoly::from_scalar(coeffs.fraction(4, 1, true), &order).unwrap();
        let ideal = Ideal::new(
            vec![p31, p41],
            order.clone(),
            vec!["l1".into(), "l2".into()],
        )
        .unwrap();
        let target = ideal.parse_member("2*(l4*m12 - l2*m14)").unwrap();
        assert!(ideal_membership(&target, &ideal, &Limits::default()).unwrap());
    }

    #[test]
    fn reduced_basis_is_independent_of_generator_order() {
        let order = MonomialOrder::grevlex(["x", "y", "z"]);
        let names = param_set(["x", "y", "z"]);
        let fp =
            |t: &str| FieldPoly::from_scalar(&parse_scalar(t, &names).unwrap(), &order).unwrap();
        let gens = vec![fp("x + y + z"), fp("x*y + y*z + z*x"), fp("x*y*z - 1")];
        let forward = Ideal::new(gens.clone(), order.clone(), vec![]).unwrap();
        let mut reversed_gens = gens;
        reversed_gens.reverse();
        let reversed = Ideal::new(reversed_gens, order.clone(), vec![]).unwrap();
        let a = buchberger(&forward, &Limits::default()).unwrap();
        let b = buchberger(&reversed, &Limits::default()).unwrap();
        assert_eq!(a.len(), b.len());
        for (g, h) in a.iter().zip(&b) {
            assert_eq!(g, h);
        }
    }
}
