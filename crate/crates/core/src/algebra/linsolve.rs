//! Exact linear algebra over polynomials and rational functions.
//!
//! Forward elimination is fraction-free (Bareiss): every division is an
//! exact polynomial division, so entries stay minor-sized. Rows of
//! rational-function systems are cleared to polynomials first.

use crate::scalar::{Polynomial, Scalar};

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn det_poly(a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut m: Vec<Vec<Polynomial>> = a.to_vec();
    let mut sign_flip = false;
    let mut prev = Polynomial::one();
    for col in 0..n {
        let Some(pivot_row) = pick_pivot(&m, col, col) else {
            return Polynomial::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            sign_flip = !sign_flip;
        }
        for i in col + 1..n {
            for j in col + 1..n {
                let t = &(&m[col][col] * &m[i][j]) - &(&m[i][col] * &m[col][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss divisibility");
            }
            m[i][col] = Polynomial::zero();
        }
        prev = m[col][col].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -&d
    } else {
        d
    }
}

/// Pivot with the fewest terms keeps intermediate minors small.
fn pick_pivot(m: &[Vec<Polynomial>], col: usize, from_row: usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(from_row) {
        let p = &row[col];
        if !p.is_zero() {
            let size = p.num_terms();
            if best.is_none_or(|(_, s)| size < s) {
                best = Some((i, size));
            }
        }
    }
    best.map(|(i, _)| i)
}

/// Solves `A·X = B` for a square rational-function matrix `A` and a block of
/// right-hand sides `B` (one column per solution vector). Returns `None`
/// when `A` is singular as a rational-function matrix.
pub fn solve(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    assert!(n > 0 && b.len() == n, "shape mismatch");
    let k = b[0].len();
    let cols = n + k;

    // Clear each row to polynomials by a common denominator built from
    // divisibility probes (no gcd).
    let mut m: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<&Scalar> = a[i].iter().chain(b[i].iter()).collect();
        let mut common = Polynomial::one();
        for s in &row {
            let d = s.den();
            if d.is_one() || common.div_exact(d).is_some() {
                continue;
            }
            common = if d.div_exact(&common).is_some() {
                d.clone()
            } else {
                &common * d
            };
        }
        m.push(
            row.iter()
                .map(|s| {
                    let q = common.div_exact(s.den()).expect("common denominator");
                    s.num() * &q
                })
                .collect(),
        );
    }

    // Bareiss forward elimination on the augmented matrix.
    let mut prev = Polynomial::one();
    for col in 0..n {
        let pivot_row = pick_pivot(&m, col, col)?;
        m.swap(pivot_row, col);
        for i in col + 1..n {
            for j in col + 1..cols {
                let t = &(&m[col][col] * &m[i][j]) - &(&m[i][col] * &m[col][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss divisibility");
            }
            m[i][col] = Polynomial::zero();
        }
        prev = m[col][col].clone();
    }

    // Back substitution in the fraction field.
    let mut x = vec![vec![Scalar::zero(); k]; n];
    for i in (0..n).rev() {
        let diag = Scalar::from_polynomial(m[i][i].clone());
        for c in 0..k {
            let mut acc = Scalar::from_polynomial(m[i][n + c].clone());
            for j in i + 1..n {
                if !m[i][j].is_zero() {
                    acc = &acc - &(&Scalar::from_polynomial(m[i][j].clone()) * &x[j][c]);
                }
            }
            x[i][c] = (&acc / &diag).expect("nonzero pivot");
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Var;

    fn sp(name: &str) -> Polynomial {
        Polynomial::var(Var::new(name))
    }

    #[test]
    fn det_2x2_symbolic() {
        let a = sp("ls_a");
        let b = sp("ls_b");
        let c = sp("ls_c");
        let d = sp("ls_d");
        let m = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        assert_eq!(det_poly(&m), &(&a * &d) - &(&b * &c));
    }

    #[test]
    fn det_singular_is_zero() {
        let a = sp("ls_a");
        let m = vec![vec![a.clone(), a.clone()], vec![a.clone(), a.clone()]];
        assert!(det_poly(&m).is_zero());
    }

    #[test]
    fn solve_2x2() {
        // [1 t; 0 1] x = [t; 1]  =>  x = [0; 1]
        let t = Scalar::param("ls_t");
        let a = vec![
            vec![Scalar::one(), t.clone()],
            vec![Scalar::zero(), Scalar::one()],
        ];
        let b = vec![vec![t.clone()], vec![Scalar::one()]];
        let x = solve(&a, &b).unwrap();
        assert!(x[0][0].is_zero());
        assert!(x[1][0].is_one());
    }

    #[test]
    fn solve_detects_singular() {
        let one = Scalar::one();
        let a = vec![
            vec![one.clone(), one.clone()],
            vec![one.clone(), one.clone()],
        ];
        let b = vec![vec![one.clone()], vec![one.clone()]];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn solve_with_rational_entries() {
        // (1/t) x = 1  =>  x = t
        let t = Scalar::param("ls_t");
        let a = vec![vec![t.inv().unwrap()]];
        let b = vec![vec![Scalar::one()]];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x[0][0], t);
    }
}
