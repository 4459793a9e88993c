//! XC-structures: the container, axiom verification (symbolic and sampled),
//! derived elements, structural predicates, and the defining polynomial
//! system.
//!
//! An XC-structure on an algebra `A` is a pair of invertible elements
//! `R ∈ A⊗A`, `κ ∈ A` subject to the axioms (XC0)–(XC3). Writing
//! `R = Σᵢ αᵢ⊗βᵢ` and `R⁻¹ = Σᵢ ᾱᵢ⊗β̄ᵢ`:
//!
//! - (XC0)  `R^{±1} = (κ⊗κ)·R^{±1}·(κ⁻¹⊗κ⁻¹)`
//! - (XC1f) `Σᵢ βᵢκαᵢ = Σᵢ αᵢκ⁻¹βᵢ`
//! - (XC2c) `1⊗κ⁻¹ = Σᵢⱼ αᵢᾱⱼ ⊗ β̄ⱼκ⁻¹βᵢ`
//! - (XC2d) `κ⊗1 = Σᵢⱼ ᾱᵢκαⱼ ⊗ βⱼβ̄ᵢ`
//! - (XC3)  `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` with the usual leg embeddings
//!
//! The Greek letters have no standalone representation here: sums over them
//! are realized as loops over the sparse supports of `R` and `R⁻¹`.

mod equations;
mod io;

pub use equations::{unknown_names, xc_equations};
pub use io::{read_xc_json, SolvedInverses, XcStructureFile};

use crate::algebra::{AlgebraError, AlgebraSpec, Element, Perm, Tensor};
use crate::sample::{SampleError, Sampler, DEFAULT_MAX_TRIES};
use crate::scalar::{GaussianRational, Scalar, ScalarError, Var};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum XcError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("structure violates its constraints: {0} vanishes")]
    ConstraintViolation(String),
    #[error("sign patterns of sigma and tau differ: {0:?} vs {1:?}")]
    SignPatternMismatch(Vec<i8>, Vec<i8>),
    #[error("{0}")]
    Precondition(String),
}

/// An algebra together with `R`, `R⁻¹`, `κ`, `κ⁻¹`, the declared parameter
/// names, and the scalar expressions required to be nonzero.
#[derive(Clone)]
pub struct XCStructure {
    name: String,
    algebra: Arc<AlgebraSpec>,
    r: Tensor,
    r_inv: Tensor,
    kappa: Element,
    kappa_inv: Element,
    params: Vec<String>,
    constraints: Vec<Scalar>,
}

impl XCStructure {
    /// Builds a structure whose inverses are already known in closed form.
    /// The inverses are *not* verified here; `invR`/`invKappa` are axioms
    /// of the verification suite.
    #[allow(clippy::too_many_arguments)]
    pub fn with_inverses(
        name: impl Into<String>,
        algebra: &Arc<AlgebraSpec>,
        r: Tensor,
        r_inv: Tensor,
        kappa: Element,
        kappa_inv: Element,
        params: Vec<String>,
        constraints: Vec<Scalar>,
    ) -> XCStructure {
        XCStructure {
            name: name.into(),
            algebra: algebra.clone(),
            r,
            r_inv,
            kappa,
            kappa_inv,
            params,
            constraints,
        }
    }

    /// Builds a structure computing both inverses by exact linear solving.
    pub fn solve_inverses(
        name: impl Into<String>,
        algebra: &Arc<AlgebraSpec>,
        r: Tensor,
        kappa: Element,
        params: Vec<String>,
        constraints: Vec<Scalar>,
    ) -> Result<XCStructure, AlgebraError> {
        let r_inv = r.invert()?;
        let kappa_inv = kappa.invert()?;
        Ok(XCStructure {
            name: name.into(),
            algebra: algebra.clone(),
            r,
            r_inv,
            kappa,
            kappa_inv,
            params,
            constraints,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn r(&self) -> &Tensor {
        &self.r
    }

    pub fn r_inv(&self) -> &Tensor {
        &self.r_inv
    }

    pub fn kappa(&self) -> &Element {
        &self.kappa
    }

    pub fn kappa_inv(&self) -> &Element {
        &self.kappa_inv
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn constraints(&self) -> &[Scalar] {
        &self.constraints
    }

    /// Specializes every coefficient at the given parameter values.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Scalar>) -> Result<XCStructure, XcError> {
        for c in &self.constraints {
            let v = c.substitute(assignment)?;
            if v.is_zero() {
                return Err(XcError::ConstraintViolation(c.to_string()));
            }
        }
        let remaining: Vec<String> = self
            .params
            .iter()
            .filter(|p| !assignment.contains_key(&Var::new(p)))
            .cloned()
            .collect();
        Ok(XCStructure {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            r: self.r.substitute(assignment)?,
            r_inv: self.r_inv.substitute(assignment)?,
            kappa: self.kappa.substitute(assignment)?,
            kappa_inv: self.kappa_inv.substitute(assignment)?,
            params: remaining,
            constraints: self
                .constraints
                .iter()
                .map(|c| c.substitute(assignment))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Specializes at exact numeric values.
    pub fn at_point(
        &self,
        point: &BTreeMap<Var, GaussianRational>,
    ) -> Result<XCStructure, XcError> {
        let as_scalars: BTreeMap<Var, Scalar> = point
            .iter()
            .map(|(v, g)| (*v, Scalar::constant(g.clone())))
            .collect();
        self.substitute(&as_scalars)
    }

    /// Draws a constraint-satisfying sample point for this structure.
    /// Retries when a denominator somewhere in the structure vanishes.
    pub fn sample_point(
        &self,
        sampler: &mut Sampler,
    ) -> Result<(BTreeMap<Var, GaussianRational>, XCStructure), XcError> {
        let mut last = None;
        for _ in 0..DEFAULT_MAX_TRIES {
            let point = sampler.assignment(&self.params, &self.constraints, DEFAULT_MAX_TRIES)?;
            match self.at_point(&point) {
                Ok(s) => return Ok((point, s)),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or(XcError::Sample(SampleError::Unsatisfiable(
            DEFAULT_MAX_TRIES,
        ))))
    }

    /// `R⁻¹ = R₂₁` decided exactly.
    pub fn is_triangular(&self) -> bool {
        let swapped = self
            .r
            .permute(&Perm::transposition(2, 0, 1))
            .expect("order-2 tensor");
        swapped == self.r_inv
    }
}

impl fmt::Debug for XCStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XCStructure({})", self.name)
    }
}

/// ν, θ, ξ, u contracted out of `R` and `R⁻¹`.
pub struct DerivedElements {
    /// `ν = Σᵢ βᵢκαᵢ`, the inverse of the classical ribbon element.
    pub nu: Element,
    /// `θ = Σᵢ αᵢβᵢ`.
    pub theta: Element,
    /// `ξ = Σᵢ βᵢαᵢ`.
    pub xi: Element,
    /// `u = Σᵢ ᾱᵢβ̄ᵢ`.
    pub u: Element,
}

/// Sums `coeff · left_of(a) · mid · right_of(b)` over the support of `t`.
pub(crate) fn contract_through(
    t: &Tensor,
    mid: Option<&Element>,
    swap_legs: bool,
) -> Result<Element, AlgebraError> {
    let algebra = t.algebra().clone();
    let mut acc = Element::zero(&algebra);
    for (key, c) in t.entries() {
        let (first, second) = if swap_legs {
            (key[1], key[0])
        } else {
            (key[0], key[1])
        };
        let mut prod = Element::basis(&algebra, first as usize);
        if let Some(m) = mid {
            prod = (&prod * m)?;
        }
        prod = (&prod * &Element::basis(&algebra, second as usize))?;
        acc = (&acc + &prod.scale(c))?;
    }
    Ok(acc)
}

/// Computes ν, θ, ξ and u by contracting the legs of `R^{±1}`.
pub fn derived_elements(x: &XCStructure) -> Result<DerivedElements, AlgebraError> {
    Ok(DerivedElements {
        nu: contract_through(x.r(), Some(x.kappa()), true)?,
        theta: contract_through(x.r(), None, false)?,
        xi: contract_through(x.r(), None, true)?,
        u: contract_through(x.r_inv(), None, false)?,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Axiom {
    InvR,
    InvKappa,
    Xc0,
    Xc1f,
    Xc2c,
    Xc2d,
    Xc3,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::InvR,
        Axiom::InvKappa,
        Axiom::Xc0,
        Axiom::Xc1f,
        Axiom::Xc2c,
        Axiom::Xc2d,
        Axiom::Xc3,
    ];

    pub fn parse(s: &str) -> Option<Axiom> {
        match s.to_ascii_lowercase().as_str() {
            "invr" => Some(Axiom::InvR),
            "invkappa" => Some(Axiom::InvKappa),
            "xc0" => Some(Axiom::Xc0),
            "xc1f" => Some(Axiom::Xc1f),
            "xc2c" => Some(Axiom::Xc2c),
            "xc2d" => Some(Axiom::Xc2d),
            "xc3" => Some(Axiom::Xc3),
            _ => None,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::InvR => "invR",
            Axiom::InvKappa => "invKappa",
            Axiom::Xc0 => "XC0",
            Axiom::Xc1f => "XC1f",
            Axiom::Xc2c => "XC2c",
            Axiom::Xc2d => "XC2d",
            Axiom::Xc3 => "XC3",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => write!(f, "symbolic"),
            Mode::Sampled { count, seed } => write!(f, "sampled(count={count}, seed={seed})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// One line per failure; sampled failures name their sample index.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<AxiomCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn outer(x: &Element, y: &Element) -> Result<Tensor, AlgebraError> {
    Tensor::product(&[&x.as_tensor(), &y.as_tensor()])
}

/// `Σᵢⱼ αᵢᾱⱼ ⊗ β̄ⱼκ⁻¹βᵢ − 1⊗κ⁻¹`, the defect of (XC2c).
pub(crate) fn xc2c_difference(x: &XCStructure) -> Result<Tensor, AlgebraError> {
    let algebra = x.algebra();
    let mut rhs = Tensor::zero(algebra, 2);
    for (rk, rc) in x.r().entries() {
        let (a, b) = (rk[0] as usize, rk[1] as usize);
        for (sk, sc) in x.r_inv().entries() {
            let (abar, bbar) = (sk[0] as usize, sk[1] as usize);
            let left = (&Element::basis(algebra, a) * &Element::basis(algebra, abar))?;
            let right =
                (&(&Element::basis(algebra, bbar) * x.kappa_inv())? * &Element::basis(algebra, b))?;
            rhs = rhs.add(&outer(&left, &right)?.scale(&(rc * sc)))?;
        }
    }
    rhs.sub(&outer(&Element::unit(algebra), x.kappa_inv())?)
}

/// `Σᵢⱼ ᾱᵢκαⱼ ⊗ βⱼβ̄ᵢ − κ⊗1`, the defect of (XC2d).
pub(crate) fn xc2d_difference(x: &XCStructure) -> Result<Tensor, AlgebraError> {
    let algebra = x.algebra();
    let mut rhs = Tensor::zero(algebra, 2);
    for (sk, sc) in x.r_inv().entries() {
        let (abar, bbar) = (sk[0] as usize, sk[1] as usize);
        for (rk, rc) in x.r().entries() {
            let (a, b) = (rk[0] as usize, rk[1] as usize);
            let left =
                (&(&Element::basis(algebra, abar) * x.kappa())? * &Element::basis(algebra, a))?;
            let right = (&Element::basis(algebra, b) * &Element::basis(algebra, bbar))?;
            rhs = rhs.add(&outer(&left, &right)?.scale(&(sc * rc)))?;
        }
    }
    rhs.sub(&outer(x.kappa(), &Element::unit(algebra))?)
}

/// The fully symbolic structure whose coordinates are the fresh unknowns of
/// the defining polynomial system.
pub(crate) fn axiom_unknowns_structure(
    algebra: &Arc<AlgebraSpec>,
) -> Result<XCStructure, AlgebraError> {
    let n = algebra.dim();
    let tensor_of = |prefix: &str| -> Result<Tensor, AlgebraError> {
        Tensor::from_entries(
            algebra,
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
    };
    let element_of = |prefix: &str| -> Result<Element, AlgebraError> {
        Element::new(
            algebra,
            (0..n)
                .map(|i| Scalar::param(&format!("{prefix}{}", i + 1)))
                .collect(),
        )
    };
    Ok(XCStructure::with_inverses(
        format!("unknowns({})", algebra.name()),
        algebra,
        tensor_of("r")?,
        tensor_of("rp")?,
        element_of("k")?,
        element_of("kp")?,
        equations::unknown_names(n),
        Vec::new(),
    ))
}

/// Decides one axiom on a fully constructed structure, exactly. Returns the
/// offending identity description on failure.
fn axiom_holds(x: &XCStructure, axiom: Axiom) -> Result<Option<String>, AlgebraError> {
    let algebra = x.algebra();
    let unit2 = Tensor::unit(algebra, 2);
    Ok(match axiom {
        Axiom::InvR => {
            if x.r().mul(x.r_inv())? != unit2 {
                Some("R * Rinv != 1(x)1".into())
            } else if x.r_inv().mul(x.r())? != unit2 {
                Some("Rinv * R != 1(x)1".into())
            } else {
                None
            }
        }
        Axiom::InvKappa => {
            let unit = Element::unit(algebra);
            if (x.kappa() * x.kappa_inv())? != unit {
                Some("kappa * kappaInv != 1".into())
            } else if (x.kappa_inv() * x.kappa())? != unit {
                Some("kappaInv * kappa != 1".into())
            } else {
                None
            }
        }
        Axiom::Xc0 => {
            let kk = Tensor::product(&[&x.kappa().as_tensor(), &x.kappa().as_tensor()])?;
            let kk_inv =
                Tensor::product(&[&x.kappa_inv().as_tensor(), &x.kappa_inv().as_tensor()])?;
            let conj_r = kk.mul(x.r())?.mul(&kk_inv)?;
            let conj_r_inv = kk.mul(x.r_inv())?.mul(&kk_inv)?;
            if conj_r != *x.r() {
                Some("(kappa(x)kappa) R (kappaInv(x)kappaInv) != R".into())
            } else if conj_r_inv != *x.r_inv() {
                Some("(kappa(x)kappa) Rinv (kappaInv(x)kappaInv) != Rinv".into())
            } else {
                None
            }
        }
        Axiom::Xc1f => {
            let lhs = contract_through(x.r(), Some(x.kappa()), true)?;
            let rhs = contract_through(x.r(), Some(x.kappa_inv()), false)?;
            (lhs != rhs).then(|| "sum beta kappa alpha != sum alpha kappaInv beta".into())
        }
        Axiom::Xc2c => (!xc2c_difference(x)?.is_zero())
            .then(|| "1(x)kappaInv != sum alpha alphabar (x) betabar kappaInv beta".into()),
        Axiom::Xc2d => (!xc2d_difference(x)?.is_zero())
            .then(|| "kappa(x)1 != sum alphabar kappa alpha (x) beta betabar".into()),
        Axiom::Xc3 => {
            let r12 = x.r().embed((1, 2), 3)?;
            let r13 = x.r().embed((1, 3), 3)?;
            let r23 = x.r().embed((2, 3), 3)?;
            let lhs = r12.mul(&r13)?.mul(&r23)?;
            let rhs = r23.mul(&r13)?.mul(&r12)?;
            (lhs != rhs).then(|| "R12 R13 R23 != R23 R13 R12".into())
        }
    })
}

/// Runs the requested axioms in the requested mode. Sampled mode draws
/// constraint-satisfying Gaussian-rational points and re-decides every
/// axiom exactly at each of them; the per-index sample streams make the
/// report independent of evaluation order.
pub fn verify_axioms(
    x: &XCStructure,
    axioms: &[Axiom],
    mode: Mode,
) -> Result<VerifyReport, XcError> {
    let mut sorted: Vec<Axiom> = axioms.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut report = VerifyReport::default();
    match mode {
        Mode::Symbolic => {
            for &axiom in &sorted {
                let failure = axiom_holds(x, axiom)?;
                report.checks.push(AxiomCheck {
                    axiom,
                    passed: failure.is_none(),
                    failures: failure.into_iter().collect(),
                });
            }
        }
        Mode::Sampled { count, seed } => {
            let mut specialized = Vec::with_capacity(count);
            for i in 0..count {
                let mut sampler = Sampler::for_index(seed, i as u64);
                let (_, s) = x.sample_point(&mut sampler)?;
                specialized.push(s);
            }
            for &axiom in &sorted {
                let mut failures = Vec::new();
                for (i, s) in specialized.iter().enumerate() {
                    if let Some(msg) = axiom_holds(s, axiom)? {
                        failures.push(format!("sample {i}: {msg}"));
                    }
                }
                report.checks.push(AxiomCheck {
                    axiom,
                    passed: failures.is_empty(),
                    failures,
                });
            }
        }
    }
    Ok(report)
}

/// Named identities behind the framing-triviality of the invariant,
/// checked symbolically:
/// `θ = κ²ξ`, `ν = κξ`, `θξ = ξθ`, `θ·Σᾱᵢβ̄ᵢ = 1`, `ξ·Σβ̄ᵢᾱᵢ = 1`.
pub fn check_theta_xi_identities(x: &XCStructure) -> Result<VerifyCustom, XcError> {
    let d = derived_elements(x)?;
    let unit = Element::unit(x.algebra());
    let kappa2 = (x.kappa() * x.kappa())?;
    let u_rev = contract_through(x.r_inv(), None, true)?;
    let mut out = VerifyCustom::default();
    out.push("theta = kappa^2 xi", d.theta == (&kappa2 * &d.xi)?);
    out.push("nu = kappa xi", d.nu == (x.kappa() * &d.xi)?);
    out.push(
        "theta xi = xi theta",
        (&d.theta * &d.xi)? == (&d.xi * &d.theta)?,
    );
    out.push(
        "theta * sum alphabar betabar = 1",
        (&d.theta * &d.u)? == unit,
    );
    out.push("xi * sum betabar alphabar = 1", (&d.xi * &u_rev)? == unit);
    Ok(out)
}

/// A list of named pass/fail results.
#[derive(Clone, Debug, Default)]
pub struct VerifyCustom {
    pub items: Vec<(String, bool)>,
}

impl VerifyCustom {
    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.items.push((name.into(), passed));
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|(_, p)| *p)
    }
}

/// Checks that the eight commutators `[R^{±1}, κ^{±1}⊗1]` and
/// `[R^{±1}, 1⊗κ^{±1}]` lie in `J⊗J`, symbolically. Requires the Sweedler
/// algebra; holds for any XC-structure on it.
pub fn check_commutators(x: &XCStructure) -> Result<VerifyCustom, XcError> {
    let algebra = x.algebra();
    let unit = Element::unit(algebra);
    let mut out = VerifyCustom::default();
    for (r, rname) in [(x.r(), "R"), (x.r_inv(), "Rinv")] {
        for (k, kname) in [(x.kappa(), "kappa"), (x.kappa_inv(), "kappaInv")] {
            for (left_slot, how) in [(true, "(x)1"), (false, "1(x)")] {
                let embedded = if left_slot {
                    outer(k, &unit)?
                } else {
                    outer(&unit, k)?
                };
                let comm = r.mul(&embedded)?.sub(&embedded.mul(r)?)?;
                let projected = crate::sweedler::radical_projection(
                    &comm,
                    crate::sweedler::RadicalPattern::ModJJ,
                )
                .map_err(|e| XcError::Precondition(e.to_string()))?;
                let name = if left_slot {
                    format!("[{rname}, {kname}{how}] in JxJ")
                } else {
                    format!("[{rname}, {how}{kname}] in JxJ")
                };
                out.push(name, projected.is_zero());
            }
        }
    }
    Ok(out)
}

/// `μ_σ(R^{⊗r} ⊗ (R⁻¹)^{⊗(n−r)})`: forms the order-2n tensor, moves leg `i`
/// to slot `σ(i)`, then multiplies all legs together in slot order.
pub fn mu_sigma_power(
    x: &XCStructure,
    n: usize,
    r: usize,
    sigma: &Perm,
) -> Result<Element, XcError> {
    assert!(r <= n && n > 0, "need 0 <= r <= n, n > 0");
    let mut factors: Vec<&Tensor> = Vec::with_capacity(n);
    for _ in 0..r {
        factors.push(x.r());
    }
    for _ in r..n {
        factors.push(x.r_inv());
    }
    let t = Tensor::product(&factors)?;
    Ok(t.permute(sigma)?.multiply_legs())
}

/// Checks `μ_σ(R^{⊗r} ⊗ (R⁻¹)^{⊗(n−r)}) = μ_τ(…)` for permutations with
/// matching pair-sign patterns (`σ(2i)−σ(2i−1)` and `τ(2i)−τ(2i−1)` agree
/// in sign for every pair `i`). A sign-pattern mismatch is a caller error,
/// reported distinctly from an inequality.
pub fn check_permutation_property(
    x: &XCStructure,
    n: usize,
    r: usize,
    sigma: &Perm,
    tau: &Perm,
    mode: Mode,
) -> Result<VerifyCustom, XcError> {
    if sigma.size() != 2 * n || tau.size() != 2 * n {
        return Err(XcError::Precondition(format!(
            "sigma and tau must lie in S_{}",
            2 * n
        )));
    }
    if r > n {
        return Err(XcError::Precondition(format!("need r <= n, got r = {r}")));
    }
    let ps = sigma.pair_sign_pattern();
    let pt = tau.pair_sign_pattern();
    if ps != pt {
        return Err(XcError::SignPatternMismatch(ps, pt));
    }
    let mut out = VerifyCustom::default();
    match mode {
        Mode::Symbolic => {
            let equal = mu_sigma_power(x, n, r, sigma)? == mu_sigma_power(x, n, r, tau)?;
            out.push("mu_sigma = mu_tau (symbolic)", equal);
        }
        Mode::Sampled { count, seed } => {
            for i in 0..count {
                let mut sampler = Sampler::for_index(seed, i as u64);
                let (_, s) = x.sample_point(&mut sampler)?;
                let equal = mu_sigma_power(&s, n, r, sigma)? == mu_sigma_power(&s, n, r, tau)?;
                out.push(format!("mu_sigma = mu_tau (sample {i})"), equal);
            }
        }
    }
    Ok(out)
}
