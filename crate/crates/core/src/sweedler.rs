//! The Sweedler algebra `SW = <s, w | s² = 1, w² = 0, sw = −ws>` as a
//! built-in structure-constant algebra, together with its distinguished
//! elements, radical-quotient projections, the standard ribbon structure,
//! and the four built-in XC families.
//!
//! Basis order is `1, s, w, sw`; the Jacobson radical `J = span(w, sw)`
//! occupies the last two basis slots, so "lies in J⊗J" is a statement about
//! coefficient support.

use crate::algebra::{AlgebraError, AlgebraSpec, Element, Tensor};
use crate::scalar::{parse_scalar, Scalar};
use crate::xc::{verify_axioms, Axiom, Mode, XCStructure};
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweedlerError {
    #[error("operation requires the Sweedler algebra, got `{0}`")]
    NotSweedler(String),
    #[error("mod-JJ projection needs order 2, mod-U needs order 3; got order {0}")]
    WrongOrder(usize),
    #[error("no such example family: {0} (valid: 1..=4)")]
    UnknownExample(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Basis index of `1`.
pub const IDX_ONE: usize = 0;
/// Basis index of `s`.
pub const IDX_S: usize = 1;
/// Basis index of `w`.
pub const IDX_W: usize = 2;
/// Basis index of `sw`.
pub const IDX_SW: usize = 3;

pub fn is_radical_index(i: usize) -> bool {
    i == IDX_W || i == IDX_SW
}

/// The 4-dimensional spec with the full multiplication table derived from
/// `s² = 1`, `w² = 0`, `sw = −ws`.
pub fn sweedler_spec() -> Arc<AlgebraSpec> {
    static SPEC: OnceLock<Arc<AlgebraSpec>> = OnceLock::new();
    SPEC.get_or_init(|| {
        let z = Scalar::zero;
        let o = Scalar::one;
        let m = || Scalar::from_int(-1);
        // rows: left factor, cols: right factor, entries: coefficient vectors
        let table = vec![
            // 1 * x
            vec![
                vec![o(), z(), z(), z()],
                vec![z(), o(), z(), z()],
                vec![z(), z(), o(), z()],
                vec![z(), z(), z(), o()],
            ],
            // s * x: s*s = 1, s*w = sw, s*sw = w
            vec![
                vec![z(), o(), z(), z()],
                vec![o(), z(), z(), z()],
                vec![z(), z(), z(), o()],
                vec![z(), z(), o(), z()],
            ],
            // w * x: w*s = -sw, w*w = 0, w*sw = 0
            vec![
                vec![z(), z(), o(), z()],
                vec![z(), z(), z(), m()],
                vec![z(), z(), z(), z()],
                vec![z(), z(), z(), z()],
            ],
            // sw * x: sw*s = -w, sw*w = 0, sw*sw = 0
            vec![
                vec![z(), z(), z(), o()],
                vec![z(), z(), m(), z()],
                vec![z(), z(), z(), z()],
                vec![z(), z(), z(), z()],
            ],
        ];
        AlgebraSpec::new(
            "sw",
            vec!["1".into(), "s".into(), "w".into(), "sw".into()],
            vec![],
            vec![
                Scalar::one(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ],
            table,
        )
        .expect("well-formed Sweedler table")
    })
    .clone()
}

pub fn is_sweedler(algebra: &Arc<AlgebraSpec>) -> bool {
    AlgebraSpec::same_algebra(algebra, &sweedler_spec())
}

fn require_sweedler(algebra: &Arc<AlgebraSpec>) -> Result<(), SweedlerError> {
    if is_sweedler(algebra) {
        Ok(())
    } else {
        Err(SweedlerError::NotSweedler(algebra.name().to_string()))
    }
}

/// Builds an element of SW from coefficient expressions over `params`.
pub fn sw_element(coeffs: [&str; 4], params: &BTreeSet<String>) -> Element {
    let spec = sweedler_spec();
    let cs = coeffs
        .iter()
        .map(|e| parse_scalar(e, params).expect("well-formed coefficient"))
        .collect();
    Element::new(&spec, cs).expect("dimension 4")
}

/// The idempotent `p = (1−s)/2`.
pub fn p_element() -> Element {
    sw_element(["1/2", "-1/2", "0", "0"], &BTreeSet::new())
}

/// `x⁻¹ = (2λ₁ − x)/(λ₁² − λ₂²)` for `x = λ₁ + λ₂s + λ₃w + λ₄sw`; the
/// closed form used as an oracle against the linear solver.
pub fn invert_by_closed_form(x: &Element) -> Result<Element, SweedlerError> {
    require_sweedler(x.algebra())?;
    let l1 = &x.coeffs()[0];
    let l2 = &x.coeffs()[1];
    let den = &(l1 * l1) - &(l2 * l2);
    if den.is_zero() {
        return Err(SweedlerError::Algebra(AlgebraError::SingularElement));
    }
    let two_l1 = &Scalar::from_int(2) * l1;
    let numerator = (&Element::unit(x.algebra()).scale(&two_l1) - x)?;
    Ok(numerator.scale(&den.inv().expect("nonzero denominator")))
}

/// Which radical subspace to project away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalPattern {
    /// Kill `J ⊗ J` inside `SW ⊗ SW`.
    ModJJ,
    /// Kill `U = (J⊗J⊗A) + (J⊗A⊗J) + (A⊗J⊗J)` inside `SW^{⊗3}`.
    ModU,
}

/// Zeroes exactly the coefficients on basis tensors inside `J⊗J`
/// (resp. `U`), identifying the quotient with the span of the rest.
pub fn radical_projection(q: &Tensor, pattern: RadicalPattern) -> Result<Tensor, SweedlerError> {
    require_sweedler(q.algebra())?;
    let expected_order = match pattern {
        RadicalPattern::ModJJ => 2,
        RadicalPattern::ModU => 3,
    };
    if q.order() != expected_order {
        return Err(SweedlerError::WrongOrder(q.order()));
    }
    let in_kernel = |key: &[u8]| {
        let radicals = key
            .iter()
            .filter(|&&b| is_radical_index(b as usize))
            .count();
        match pattern {
            RadicalPattern::ModJJ => radicals == 2,
            RadicalPattern::ModU => radicals >= 2,
        }
    };
    Tensor::from_entries(
        q.algebra(),
        q.order(),
        q.entries()
            .filter(|(k, _)| !in_kernel(k))
            .map(|(k, c)| (k.clone(), c.clone())),
    )
    .map_err(SweedlerError::Algebra)
}

fn outer(a: &Element, b: &Element) -> Tensor {
    Tensor::product(&[&a.as_tensor(), &b.as_tensor()]).expect("same algebra")
}

/// The standard ribbon XC-structure: `R_λ = 1⊗1 − 2p⊗p + λ(w⊗w + 2wp⊗wp −
/// 2w⊗wp)` with balancing element `κ = s`; `R⁻¹` is computed by the linear
/// solver (the structure is triangular, so it also equals `R₂₁`).
pub fn standard_ribbon(lambda: &Scalar) -> Result<XCStructure, SweedlerError> {
    let spec = sweedler_spec();
    let p = p_element();
    let w = Element::basis(&spec, IDX_W);
    let wp = (&w * &p).expect("same algebra");
    let two = Scalar::from_int(2);

    let mut r = Tensor::unit(&spec, 2);
    r = r.sub(&outer(&p, &p).scale(&two))?;
    let mut lam_part = outer(&w, &w);
    lam_part = lam_part.add(&outer(&wp, &wp).scale(&two))?;
    lam_part = lam_part.sub(&outer(&w, &wp).scale(&two))?;
    r = r.add(&lam_part.scale(lambda))?;

    let kappa = Element::basis(&spec, IDX_S);
    let params: Vec<String> = lambda.vars().iter().map(|v| v.name().to_string()).collect();
    Ok(XCStructure::solve_inverses(
        "sw:standard",
        &spec,
        r,
        kappa,
        params,
        Vec::new(),
    )?)
}

struct TensorBuilder {
    entries: Vec<(Vec<u8>, Scalar)>,
    params: BTreeSet<String>,
}

impl TensorBuilder {
    fn new(params: &BTreeSet<String>) -> Self {
        TensorBuilder {
            entries: Vec::new(),
            params: params.clone(),
        }
    }

    fn put(&mut self, i: usize, j: usize, expr: &str) -> &mut Self {
        let c = parse_scalar(expr, &self.params).expect("well-formed coefficient");
        self.entries.push((vec![i as u8, j as u8], c));
        self
    }

    fn build(self) -> Tensor {
        Tensor::from_entries(&sweedler_spec(), 2, self.entries).expect("valid entries")
    }
}

fn example1() -> XCStructure {
    let spec = sweedler_spec();
    let params = crate::scalar::param_set(["l"]);
    // R = l*1(x)1 + (1+s+w+sw)(x)(s+w+sw)
    let mut b = TensorBuilder::new(&params);
    b.put(IDX_ONE, IDX_ONE, "l");
    for i in [IDX_ONE, IDX_S, IDX_W, IDX_SW] {
        for j in [IDX_S, IDX_W, IDX_SW] {
            b.put(i, j, "1");
        }
    }
    let r = b.build();
    // Rinv = (1/(4-l^2))(1+s+w+sw)(x)(s+w+sw)
    //      + (2/(l*(l^2-4)))(s+w+sw)(x)1 + ((l^2-2)/(l*(l^2-4)))*1(x)1
    let mut b = TensorBuilder::new(&params);
    for i in [IDX_ONE, IDX_S, IDX_W, IDX_SW] {
        for j in [IDX_S, IDX_W, IDX_SW] {
            b.put(i, j, "1/(4-l^2)");
        }
    }
    for i in [IDX_S, IDX_W, IDX_SW] {
        b.put(i, IDX_ONE, "2/(l*(l^2-4))");
    }
    b.put(IDX_ONE, IDX_ONE, "(l^2-2)/(l*(l^2-4))");
    let r_inv = b.build();

    let kappa = sw_element(["0", "-1", "-1", "-1"], &params);
    let constraints = vec![
        parse_scalar("l", &params).unwrap(),
        parse_scalar("l^2-4", &params).unwrap(),
    ];
    XCStructure::with_inverses(
        "sw:ex1",
        &spec,
        r,
        r_inv,
        kappa.clone(),
        kappa,
        vec!["l".into()],
        constraints,
    )
}

fn example2() -> XCStructure {
    let spec = sweedler_spec();
    let params = crate::scalar::param_set(["l", "m", "g"]);
    // R = l(s(x)1 - i*1(x)s) - l*g(w(x)1 - i*1(x)w) + m(w(x)w - sw(x)sw)
    //   + sw(x)w - w(x)sw
    let mut b = TensorBuilder::new(&params);
    b.put(IDX_S, IDX_ONE, "l");
    b.put(IDX_ONE, IDX_S, "-i*l");
    b.put(IDX_W, IDX_ONE, "-l*g");
    b.put(IDX_ONE, IDX_W, "i*l*g");
    b.put(IDX_W, IDX_W, "m");
    b.put(IDX_SW, IDX_SW, "-m");
    b.put(IDX_SW, IDX_W, "1");
    b.put(IDX_W, IDX_SW, "-1");
    let r = b.build();
    // Rinv = (1/(2l^2)) ( l(s(x)1 + i*1(x)s) - l*g(w(x)1 + i*1(x)w)
    //        + m*i(-w(x)w + sw(x)sw) + i(-sw(x)w + w(x)sw) )
    let mut b = TensorBuilder::new(&params);
    b.put(IDX_S, IDX_ONE, "l/(2*l^2)");
    b.put(IDX_ONE, IDX_S, "i*l/(2*l^2)");
    b.put(IDX_W, IDX_ONE, "-l*g/(2*l^2)");
    b.put(IDX_ONE, IDX_W, "-i*l*g/(2*l^2)");
    b.put(IDX_W, IDX_W, "-m*i/(2*l^2)");
    b.put(IDX_SW, IDX_SW, "m*i/(2*l^2)");
    b.put(IDX_SW, IDX_W, "-i/(2*l^2)");
    b.put(IDX_W, IDX_SW, "i/(2*l^2)");
    let r_inv = b.build();

    let kappa = sw_element(["0", "-1", "g", "0"], &params);
    let constraints = vec![parse_scalar("l", &params).unwrap()];
    XCStructure::with_inverses(
        "sw:ex2",
        &spec,
        r,
        r_inv,
        kappa.clone(),
        kappa,
        vec!["l".into(), "m".into(), "g".into()],
        constraints,
    )
}

fn example3() -> XCStructure {
    let spec = sweedler_spec();
    let params = crate::scalar::param_set(["l1", "l2", "l3", "l4", "l5", "l6"]);
    let mut b = TensorBuilder::new(&params);
    b.put(IDX_ONE, IDX_ONE, "l1");
    b.put(IDX_ONE, IDX_W, "l2");
    b.put(IDX_W, IDX_W, "l3");
    b.put(IDX_ONE, IDX_SW, "l4");
    b.put(IDX_W, IDX_SW, "l5");
    b.put(IDX_SW, IDX_SW, "l6");
    b.put(IDX_SW, IDX_W, "1");
    let r = b.build();
    let mut b = TensorBuilder::new(&params);
    b.put(IDX_ONE, IDX_ONE, "1/l1");
    b.put(IDX_ONE, IDX_W, "-l2/l1^2");
    b.put(IDX_W, IDX_W, "-l3/l1^2");
    b.put(IDX_ONE, IDX_SW, "-l4/l1^2");
    b.put(IDX_W, IDX_SW, "-l5/l1^2");
    b.put(IDX_SW, IDX_SW, "-l6/l1^2");
    b.put(IDX_SW, IDX_W, "-1/l1^2");
    let r_inv = b.build();

    let kappa = Element::unit(&spec);
    let constraints = vec![parse_scalar("l1", &params).unwrap()];
    XCStructure::with_inverses(
        "sw:ex3",
        &spec,
        r,
        r_inv,
        kappa.clone(),
        kappa,
        (1..=6).map(|i| format!("l{i}")).collect(),
        constraints,
    )
}

/// Candidate slot readings for the fourth family's two fraction
/// coefficients: its usual coefficient list puts `λ₅` *and* a second
/// coefficient on `sw⊗w`, so one of the `J⊗J` slots must be read
/// differently; which one is settled by axiom verification. The `λ₃`
/// group carries the term `+λ₃·s⊗sw`: without it the conjugation
/// `(κ⊗κ)R(κ⁻¹⊗κ⁻¹)` differs from `R` by a nonzero multiple of
/// `sw⊗sw − w⊗sw`, so no reading of the `J⊗J` slots could satisfy (XC0).
fn example4_candidate(reading: usize) -> XCStructure {
    let spec = sweedler_spec();
    let params = crate::scalar::param_set(["l1", "l2", "l3", "l4", "l5"]);
    let mut b = TensorBuilder::new(&params);
    b.put(IDX_ONE, IDX_ONE, "l1");
    b.put(IDX_SW, IDX_ONE, "l2");
    b.put(IDX_ONE, IDX_SW, "-l2");
    b.put(IDX_ONE, IDX_W, "l2");
    b.put(IDX_W, IDX_ONE, "-l2");
    b.put(IDX_W, IDX_S, "l3");
    b.put(IDX_S, IDX_W, "-l3");
    b.put(IDX_SW, IDX_S, "-l3");
    b.put(IDX_S, IDX_SW, "l3");
    b.put(IDX_W, IDX_W, "l4");
    let f5 = "(2*l2^2 - 2*l3^2 - l1*l5)/l1";
    let f4 = "(2*l3^2 - 2*l2^2 - l1*l4)/l1";
    match reading {
        // second fraction read as sw(x)sw
        0 => {
            b.put(IDX_SW, IDX_W, "l5");
            b.put(IDX_W, IDX_SW, f5);
            b.put(IDX_SW, IDX_SW, f4);
        }
        // as listed: both lambda5 and the second fraction on sw(x)w
        1 => {
            b.put(IDX_SW, IDX_W, "l5");
            b.put(IDX_W, IDX_SW, f5);
            b.put(IDX_SW, IDX_W, f4);
        }
        // lambda5 term read as sw(x)sw
        2 => {
            b.put(IDX_SW, IDX_SW, "l5");
            b.put(IDX_W, IDX_SW, f5);
            b.put(IDX_SW, IDX_W, f4);
        }
        _ => unreachable!(),
    }
    let r = b.build();
    let kappa = sw_element(["1", "0", "2*l3/l1", "-2*l3/l1"], &params);
    let constraints = vec![parse_scalar("l1", &params).unwrap()];
    XCStructure::solve_inverses(
        "sw:ex4",
        &spec,
        r,
        kappa,
        (1..=5).map(|i| format!("l{i}")).collect(),
        constraints,
    )
    .expect("generically invertible")
}

/// Index of the fourth family's reading that verifies; decided once.
pub fn example4_resolved_reading() -> usize {
    static READING: OnceLock<usize> = OnceLock::new();
    *READING.get_or_init(|| {
        for reading in 0..3 {
            let candidate = example4_candidate(reading);
            let ok = verify_axioms(&candidate, &Axiom::ALL, Mode::Symbolic)
                .map(|rep| rep.all_passed())
                .unwrap_or(false);
            if ok {
                return reading;
            }
        }
        panic!("no slot reading of the fourth XC family verifies");
    })
}

fn example4() -> XCStructure {
    example4_candidate(example4_resolved_reading())
}

/// The built-in XC families on SW. `k = 1..=4`; structures come out fully
/// symbolic in their parameters (specialize with `XCStructure::substitute`).
pub fn example_xc(k: usize) -> Result<XCStructure, SweedlerError> {
    match k {
        1 => Ok(example1()),
        2 => Ok(example2()),
        3 => Ok(example3()),
        4 => Ok(example4()),
        other => Err(SweedlerError::UnknownExample(other)),
    }
}

/// Resolves the CLI builtin names `sw:standard`, `sw:ex1`, …, `sw:ex4`.
pub fn builtin_structure(name: &str) -> Option<XCStructure> {
    match name {
        "sw:standard" => standard_ribbon(&Scalar::param("l")).ok(),
        "sw:ex1" => example_xc(1).ok(),
        "sw:ex2" => example_xc(2).ok(),
        "sw:ex3" => example_xc(3).ok(),
        "sw:ex4" => example_xc(4).ok(),
        _ => None,
    }
}


/// True when the coefficient 16-vectors of `a` and `b` are parallel as
/// rational functions, i.e. all 2x2 minors vanish.
pub fn tensors_parallel(a: &Tensor, b: &Tensor) -> bool {
    let n = a.algebra().dim();
    let mut pairs = Vec::new();
    for i in 0..n as u8 {
        for j in 0..n as u8 {
            pairs.push((a.coeff(&[i, j]), b.coeff(&[i, j])));
        }
    }
    for x in 0..pairs.len() {
        for y in x + 1..pairs.len() {
            let minor = &(&pairs[x].0 * &pairs[y].1) - &(&pairs[y].0 * &pairs[x].1);
            if !minor.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod family_tests {
    use super::*;
    use crate::algebra::Perm;
    use crate::scalar::Var;
    use crate::xc::derived_elements;
    use std::collections::BTreeMap;

    #[test]
    fn kappa_is_involutive_for_examples_1_and_2() {
        for k in [1, 2] {
            let x = example_xc(k).unwrap();
            assert!((x.kappa() * x.kappa()).unwrap().is_unit(), "example {k}");
            assert_eq!(x.kappa(), x.kappa_inv(), "example {k}");
        }
    }

    #[test]
    fn example4_kappa_inverse_differs_from_kappa() {
        let x = example_xc(4).unwrap();
        assert!((x.kappa() * x.kappa_inv()).unwrap().is_unit());
        assert!(x.kappa() != x.kappa_inv());
    }

    #[test]
    fn standard_ribbon_kappa_inverse_is_s() {
        let x = standard_ribbon(&Scalar::param("l")).unwrap();
        assert_eq!(*x.kappa_inv(), Element::basis(&sweedler_spec(), IDX_S));
    }

    #[test]
    fn no_family_has_rinv_parallel_to_r21() {
        let swap = Perm::transposition(2, 0, 1);
        for k in 1..=4 {
            let x = example_xc(k).unwrap();
            let r21 = x.r().permute(&swap).unwrap();
            assert!(!tensors_parallel(x.r_inv(), &r21), "example {k}");
        }
        // sanity for the predicate itself: R21 is parallel to itself scaled
        let x = example_xc(1).unwrap();
        let r21 = x.r().permute(&swap).unwrap();
        assert!(tensors_parallel(&r21, &r21.scale(&Scalar::from_int(3))));
    }

    #[test]
    fn example3_nu_is_central_only_without_l2_l4() {
        let x = example_xc(3).unwrap();
        let nu = derived_elements(&x).unwrap().nu;
        // nu = l1 + l2 w + l4 sw commutes with everything in J, so the
        // non-centrality witness here is s, not w
        let s = Element::basis(&sweedler_spec(), IDX_S);
        let diff = (&(&nu * &s).unwrap() - &(&s * &nu).unwrap()).unwrap();
        assert!(!diff.is_zero());
        let point: BTreeMap<Var, Scalar> = [
            (Var::new("l2"), Scalar::zero()),
            (Var::new("l4"), Scalar::zero()),
        ]
        .into_iter()
        .collect();
        let x0 = x.substitute(&point).unwrap();
        let nu0 = derived_elements(&x0).unwrap().nu;
        // central against both generators once l2 = l4 = 0
        for g in [IDX_S, IDX_W] {
            let e = Element::basis(&sweedler_spec(), g);
            assert_eq!((&nu0 * &e).unwrap(), (&e * &nu0).unwrap());
        }
    }
}

#[cfg(test)]
mod tensor_shape_tests {
    use super::*;
    use crate::algebra::Perm;

    #[test]
    fn standard_ribbon_support_counts() {
        // R_lambda expands over {1,s}x{1,s} and {w,sw}x{w,sw}: 8 entries
        let x = standard_ribbon(&Scalar::param("l")).unwrap();
        assert_eq!(x.r().support_size(), 8);
        let with_kappa = Tensor::product(&[x.r(), &x.kappa().as_tensor()]).unwrap();
        assert_eq!(with_kappa.order(), 3);
        assert_eq!(with_kappa.support_size(), 8);
    }

    #[test]
    fn embed_places_unit_in_untouched_slots() {
        let x = example_xc(1).unwrap();
        let r13 = x.r().embed((1, 3), 3).unwrap();
        // SW's unit is the basis element e1, so the middle index is always 0
        for (key, _) in r13.entries() {
            assert_eq!(key[1], 0);
        }
        assert_eq!(r13.support_size(), x.r().support_size());
        // definitional coherence with permute
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(
            x.r().embed((2, 1), 2).unwrap(),
            x.r().permute(&swap).unwrap()
        );
    }

    #[test]
    fn slotwise_product_in_sw_tensor_square() {
        // (s (x) w) * (s (x) s) = ss (x) ws = 1 (x) -sw
        let spec = sweedler_spec();
        let s = Element::basis(&spec, IDX_S).as_tensor();
        let w = Element::basis(&spec, IDX_W).as_tensor();
        let sw_tensor = |a: &Tensor, b: &Tensor| Tensor::product(&[a, b]).unwrap();
        let lhs = sw_tensor(&s, &w).mul(&sw_tensor(&s, &s)).unwrap();
        let mut expected = Tensor::zero(&spec, 2);
        expected = expected
            .add(
                &sw_tensor(
                    &Element::unit(&spec).as_tensor(),
                    &Element::basis(&spec, IDX_SW).as_tensor(),
                )
                .scale(&Scalar::from_int(-1)),
            )
            .unwrap();
        assert_eq!(lhs, expected);
    }
}
