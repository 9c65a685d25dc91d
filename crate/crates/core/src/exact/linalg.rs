//! Exact integer linear algebra: determinants, resultants, discriminants and
//! characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(p: &IntPolynomial, r: &IntPolynomial) -> BigInt {
    let (Some(n), Some(k)) = (p.degree(), r.degree()) else {
        return BigInt::zero();
    };
    let size = n + k;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for row in 0..k {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            s[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in r.coeffs().iter().rev().enumerate() {
            s[k + row][row + j] = c.clone();
        }
    }
    determinant(s)
}

/// `(-1)^(n(n-1)/2) · Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPolynomial) -> BigInt {
    let n = p.degree().expect("nonzero polynomial");
    let res = resultant(p, &p.derivative());
    let (d, rem) = res.div_rem(p.leading().unwrap());
    debug_assert!(rem.is_zero());
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Exact integer square test.
pub fn is_perfect_square(x: &BigInt) -> bool {
    if x.is_negative() {
        return false;
    }
    let r = x.sqrt();
    &r * &r == *x
}

/// `det(xI - A)` by the Faddeev–LeVerrier recurrence; every division is exact
/// for integer `A`.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> IntPolynomial {
    let n = a.len();
    let a: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (c, rem) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero());
        coeffs[n - k] = c;
    }
    IntPolynomial::new(coeffs)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(big(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(determinant(big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(determinant(big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn quadratic_and_cubic_discriminants() {
        // x^2 - 2: disc 8
        assert_eq!(discriminant(&IntPolynomial::from_i64(&[-2, 0, 1])), BigInt::from(8));
        // x^3 - x: roots -1, 0, 1 -> prod (ri-rj)^2 = 1*1*4 = 4
        assert_eq!(discriminant(&IntPolynomial::from_i64(&[0, -1, 0, 1])), BigInt::from(4));
        // x^3 + x + 1: -4 - 27 = -31
        assert_eq!(discriminant(&IntPolynomial::from_i64(&[1, 1, 0, 1])), BigInt::from(-31));
    }

    #[test]
    fn charpoly_of_small_paths() {
        let p2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(characteristic_polynomial(&p2), IntPolynomial::from_i64(&[-1, 0, 1]));
        let p3 = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert_eq!(characteristic_polynomial(&p3), IntPolynomial::from_i64(&[0, -2, 0, 1]));
    }

    #[test]
    fn squares() {
        assert!(is_perfect_square(&BigInt::from(0)));
        assert!(is_perfect_square(&BigInt::from(144)));
        assert!(!is_perfect_square(&BigInt::from(145)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
    }
}
