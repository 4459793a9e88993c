//! Exact evaluation of the universal invariant of a bead word against an
//! XC-structure.
//!
//! The value is the sum over assignments of a basis-index pair to each
//! crossing copy of: (product of the selected `R^{±1}` coefficients) ×
//! (the algebra product of the selected basis legs and `κ^{±1}` beads,
//! multiplied from right to left along the traversal). Two strategies are
//! implemented and must agree: full expansion over all assignments, and a
//! frontier dynamic program that keys partial sums on the pending leg of
//! each open crossing — the frontier never needs the full coefficient pair,
//! only the basis index still to be inserted, so its width is at most
//! `dim^(open crossings)` instead of `support^crossings`.

use crate::algebra::{AlgebraError, Element};
use crate::diagram::{Bead, BeadWord, Builtin};
use crate::sample::Sampler;
use crate::scalar::Scalar;
use crate::xc::{derived_elements, XCStructure, XcError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Xc(#[from] XcError),
    #[error("nu is not invertible; the structure cannot be an XC-structure")]
    SingularNu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate every assignment of coefficient-pairs to crossings.
    Expansion,
    /// Frontier dynamic programming over open crossings.
    FrontierDp,
    /// Expansion for small numeric evaluations, frontier DP for symbolic
    /// or larger ones.
    Auto,
}

type Support = Vec<((u8, u8), Scalar)>;

/// Per-copy coefficient supports, in order of first traversal.
fn supports(x: &XCStructure, w: &BeadWord) -> (Vec<String>, BTreeMap<String, Support>) {
    let mut order = Vec::new();
    let mut map: BTreeMap<String, Support> = BTreeMap::new();
    for b in w.beads() {
        if let Bead::Leg { copy, barred, .. } = b {
            if !map.contains_key(copy) {
                order.push(copy.clone());
                let tensor = if *barred { x.r_inv() } else { x.r() };
                map.insert(
                    copy.clone(),
                    tensor
                        .entries()
                        .map(|(k, c)| ((k[0], k[1]), c.clone()))
                        .collect(),
                );
            }
        }
    }
    (order, map)
}

fn evaluate_expansion(x: &XCStructure, w: &BeadWord) -> Result<Element, InvariantError> {
    let algebra = x.algebra();
    let (order, map) = supports(x, w);
    let supports: Vec<&Support> = order.iter().map(|c| &map[c]).collect();
    if supports.iter().any(|s| s.is_empty()) {
        return Ok(Element::zero(algebra));
    }
    let copy_index: BTreeMap<&str, usize> = order
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    // pre-resolve each bead: is this leg the copy's first visit?
    let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
    let beads: Vec<(&Bead, usize, bool)> = w
        .beads()
        .iter()
        .map(|b| match b {
            Bead::KappaPow(_) => (b, usize::MAX, false),
            Bead::Leg { copy, .. } => {
                let first = seen.insert(copy.as_str(), ()).is_none();
                (b, copy_index[copy.as_str()], first)
            }
        })
        .collect();
    let mut result = Element::zero(algebra);
    let mut odometer = vec![0usize; supports.len()];
    loop {
        // assemble this assignment's product, right-to-left = left-multiply
        // while scanning the traversal
        let mut acc = Element::unit(algebra);
        let mut coeff = Scalar::one();
        for (b, i, first_visit) in &beads {
            match b {
                Bead::KappaPow(e) => {
                    let k = if *e >= 0 { x.kappa() } else { x.kappa_inv() };
                    acc = (k * &acc)?;
                }
                Bead::Leg { leg, .. } => {
                    let ((a, b2), c) = &supports[*i][odometer[*i]];
                    let idx = if *leg == 1 { *a } else { *b2 };
                    acc = (&Element::basis(algebra, idx as usize) * &acc)?;
                    // count the coefficient once per copy, at its first leg
                    if *first_visit {
                        coeff = &coeff * c;
                    }
                }
            }
        }
        result = (&result + &acc.scale(&coeff))?;
        // advance
        let mut pos = 0;
        loop {
            if pos == odometer.len() {
                return Ok(result);
            }
            odometer[pos] += 1;
            if odometer[pos] < supports[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

fn evaluate_frontier(x: &XCStructure, w: &BeadWord) -> Result<Element, InvariantError> {
    let algebra = x.algebra();
    let (order, map) = supports(x, w);
    let copy_index: BTreeMap<&str, usize> = order
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    // state: sorted (copy, pending basis index) -> partial sum
    let mut state: BTreeMap<Vec<(usize, u8)>, Element> = BTreeMap::new();
    state.insert(Vec::new(), Element::unit(algebra));
    let merge = |state: &mut BTreeMap<Vec<(usize, u8)>, Element>,
                 key: Vec<(usize, u8)>,
                 val: Element|
     -> Result<(), AlgebraError> {
        match state.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(val);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = (e.get() + &val)?;
                *e.get_mut() = sum;
            }
        }
        Ok(())
    };
    for b in w.beads() {
        match b {
            Bead::KappaPow(e) => {
                let k = if *e >= 0 { x.kappa() } else { x.kappa_inv() };
                for val in state.values_mut() {
                    *val = (k * val)?;
                }
            }
            Bead::Leg { copy, leg, .. } => {
                let ci = copy_index[copy.as_str()];
                let mut next: BTreeMap<Vec<(usize, u8)>, Element> = BTreeMap::new();
                for (key, val) in &state {
                    if let Some(pos) = key.iter().position(|&(c, _)| c == ci) {
                        // closing leg: insert the pending basis element
                        let pending = key[pos].1;
                        let mut k = key.clone();
                        k.remove(pos);
                        let v = (&Element::basis(algebra, pending as usize) * val)?;
                        merge(&mut next, k, v)?;
                    } else {
                        // opening leg: choose a coefficient pair
                        for ((a, b2), c) in &map[copy.as_str()] {
                            let (now, pending) = if *leg == 1 { (*a, *b2) } else { (*b2, *a) };
                            let mut k = key.clone();
                            let ins = k.binary_search_by_key(&ci, |&(c0, _)| c0).unwrap_err();
                            k.insert(ins, (ci, pending));
                            let v = (&Element::basis(algebra, now as usize) * val)?.scale(c);
                            merge(&mut next, k, v)?;
                        }
                    }
                }
                state = next;
            }
        }
    }
    let mut result = Element::zero(algebra);
    for (key, val) in state {
        debug_assert!(key.is_empty(), "all crossings closed");
        result = (&result + &val)?;
    }
    Ok(result)
}

/// Evaluates the universal invariant of `w` against `x`.
pub fn evaluate_with(
    x: &XCStructure,
    w: &BeadWord,
    strategy: Strategy,
) -> Result<Element, InvariantError> {
    match strategy {
        Strategy::Expansion => evaluate_expansion(x, w),
        Strategy::FrontierDp => evaluate_frontier(x, w),
        Strategy::Auto => {
            let crossings = w.stats().n_plus + w.stats().n_minus;
            if x.params().is_empty() && crossings <= 5 {
                evaluate_expansion(x, w)
            } else {
                evaluate_frontier(x, w)
            }
        }
    }
}

pub fn evaluate(x: &XCStructure, w: &BeadWord) -> Result<Element, InvariantError> {
    evaluate_with(x, w, Strategy::Auto)
}

/// `ν^framing`, the value the main theorem predicts for every knot with
/// that framing.
pub fn expected(x: &XCStructure, framing: i64) -> Result<Element, InvariantError> {
    let nu = derived_elements(x)?.nu;
    nu.pow(framing).map_err(|e| match e {
        AlgebraError::SingularElement => InvariantError::SingularNu,
        other => InvariantError::Algebra(other),
    })
}

#[derive(Clone, Debug)]
pub struct TrivialityReport {
    pub framing: i64,
    /// `(description, equal)` per comparison performed.
    pub items: Vec<(String, bool)>,
}

impl TrivialityReport {
    pub fn all_equal(&self) -> bool {
        self.items.iter().all(|(_, e)| *e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialityMode {
    Symbolic,
    Sampled { count: usize, seed: u64 },
}

/// Asserts `evaluate(x, D) = ν^{framing(D)}`, symbolically or at sampled
/// parameter points.
pub fn check_triviality(
    x: &XCStructure,
    b: &Builtin,
    mode: TrivialityMode,
) -> Result<TrivialityReport, InvariantError> {
    let word = b.word();
    let framing = b.stats().framing();
    let mut items = Vec::new();
    match mode {
        TrivialityMode::Symbolic => {
            let value = evaluate(x, &word)?;
            let want = expected(x, framing)?;
            items.push((
                "evaluate = nu^framing (symbolic)".to_string(),
                value == want,
            ));
        }
        TrivialityMode::Sampled { count, seed } => {
            for i in 0..count {
                let mut sampler = Sampler::for_index(seed, i as u64);
                let (_, s) = x.sample_point(&mut sampler)?;
                let value = evaluate(&s, &word)?;
                let want = expected(&s, framing)?;
                items.push((format!("evaluate = nu^framing (sample {i})"), value == want));
            }
        }
    }
    Ok(TrivialityReport { framing, items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;
    use crate::scalar::{param_set, parse_scalar};
    use crate::sweedler::{example_xc, standard_ribbon, sw_element};
    use crate::xc::derived_elements;

    #[test]
    fn empty_word_gives_unit() {
        let x = example_xc(1).unwrap();
        let v = evaluate(&x, &BeadWord::empty()).unwrap();
        assert!(v.is_unit());
    }

    #[test]
    fn positive_curl_gives_nu_on_example1() {
        let x = example_xc(1).unwrap();
        let w = builtin("curl+R").unwrap().word();
        let v = evaluate(&x, &w).unwrap();
        // nu = -1 - (1+l)(s+w+sw)
        let params = param_set(["l"]);
        let c = parse_scalar("-(1+l)", &params).unwrap().to_string();
        let nu = sw_element(["-1", &c, &c, &c], &params);
        assert_eq!(v, nu);
        assert_eq!(v, derived_elements(&x).unwrap().nu);
        // the mirrored curl word gives the same value by (XC1f)
        let w2 = builtin("curl+L").unwrap().word();
        assert_eq!(evaluate(&x, &w2).unwrap(), v);
    }

    #[test]
    fn figure8_is_trivial_on_specialized_example3() {
        let x = example_xc(3).unwrap();
        let point: std::collections::BTreeMap<_, _> = [
            ("l1", 2),
            ("l2", 1),
            ("l3", 0),
            ("l4", 1),
            ("l5", 0),
            ("l6", 0),
        ]
        .into_iter()
        .map(|(p, v)| (crate::scalar::Var::new(p), Scalar::from_int(v)))
        .collect();
        let x = x.substitute(&point).unwrap();
        let v = evaluate(&x, &builtin("figure8").unwrap().word()).unwrap();
        assert!(v.is_unit(), "got {v}");
    }

    #[test]
    fn expected_powers() {
        let x = example_xc(1).unwrap();
        assert!(expected(&x, 0).unwrap().is_unit());
        assert_eq!(expected(&x, 1).unwrap(), derived_elements(&x).unwrap().nu);
        // standard ribbon: nu^2 = 1 so nu^{-1} = nu
        let s = standard_ribbon(&Scalar::param("l")).unwrap();
        let nu = derived_elements(&s).unwrap().nu;
        assert_eq!(expected(&s, -1).unwrap(), nu);
        assert!((&nu * &nu).unwrap().is_unit());
    }

    #[test]
    fn strategies_agree_on_figure8() {
        let x = example_xc(2).unwrap();
        let mut sampler = Sampler::for_index(5, 0);
        let (_, s) = x.sample_point(&mut sampler).unwrap();
        let w = builtin("figure8").unwrap().word();
        let a = evaluate_with(&s, &w, Strategy::Expansion).unwrap();
        let b = evaluate_with(&s, &w, Strategy::FrontierDp).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn curl_concatenation_multiplies() {
        let x = example_xc(1).unwrap();
        let v = |name: &str| evaluate(&x, &builtin(name).unwrap().word()).unwrap();
        let lhs = v("curls(3)");
        let rhs = (&v("curls(1)") * &v("curls(2)")).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn triviality_check_on_trefoil() {
        let x = example_xc(1).unwrap();
        let b = builtin("trefoil").unwrap();
        let rep = check_triviality(&x, &b, TrivialityMode::Sampled { count: 3, seed: 9 }).unwrap();
        assert_eq!(rep.framing, 3);
        assert!(rep.all_equal(), "{:?}", rep.items);
    }
}
