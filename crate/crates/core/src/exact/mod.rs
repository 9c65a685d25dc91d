//! Exact integer-polynomial layer for the double subdivided star family.
//!
//! With `s = l + m + 3` and `p = lm + l + m + 3` the characteristic polynomial of
//! `T(l, m)` is `(x^2 - 1)^(l+m-2) q(x)` where `q(x) = x^6 - s x^4 + p x^2 - 1`
//! and `q(x) = Q(x^2)` for the cubic `Q(y) = y^3 - s y^2 + p y - 1`.

mod linalg;
mod oracle;
mod poly;

pub use linalg::{characteristic_polynomial, determinant, discriminant, is_perfect_square, resultant};
pub use oracle::{numeric_factor_oracle, real_roots, OracleError};
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_integer::Roots;
use serde::{Deserialize, Serialize};

fn sums(l: usize, m: usize) -> (i64, i64) {
    let (l, m) = (l as i64, m as i64);
    (l + m + 3, l * m + l + m + 3)
}

/// `q(x) = x^6 - (l+m+3) x^4 + (lm+l+m+3) x^2 - 1`.
pub fn q_polynomial(l: usize, m: usize) -> IntPolynomial {
    let (s, p) = sums(l, m);
    IntPolynomial::from_i64(&[-1, 0, p, 0, -s, 0, 1])
}

/// `Q(y) = y^3 - (l+m+3) y^2 + (lm+l+m+3) y - 1`, so that `Q(x^2) = q(x)`.
pub fn cubic_resolvent(l: usize, m: usize) -> IntPolynomial {
    let (s, p) = sums(l, m);
    IntPolynomial::from_i64(&[-1, p, -s, 1])
}

/// Characteristic polynomial of `T(l, m)`: `(x^2 - 1)^(l+m-2) q(x)`.
pub fn characteristic_polynomial_t(l: usize, m: usize) -> IntPolynomial {
    let x2m1 = IntPolynomial::from_i64(&[-1, 0, 1]);
    &x2m1.pow((l + m - 2) as u32) * &q_polynomial(l, m)
}

/// Characteristic polynomial of `SK(1, l)`: `x (x^2 - 1)^(l-1) (x^2 - l - 1)`.
pub fn characteristic_polynomial_sk(l: usize) -> IntPolynomial {
    let x2m1 = IntPolynomial::from_i64(&[-1, 0, 1]);
    let tail = IntPolynomial::from_i64(&[-(l as i64) - 1, 0, 1]);
    &(&IntPolynomial::x() * &x2m1.pow((l - 1) as u32)) * &tail
}

/// `(Q(1), Q(-1))`; both are nonzero for `l, m >= 1`, so `Q` has no rational root.
pub fn resolvent_at_unit_points(l: usize, m: usize) -> (BigInt, BigInt) {
    let q = cubic_resolvent(l, m);
    (q.eval(&BigInt::from(1)), q.eval(&BigInt::from(-1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: i64) -> Self {
        if x.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Whether `q(x)` splits over the integers, and how.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityReport {
    pub reducible: bool,
    /// Monic cubic `f` with `q(x) = -f(x) f(-x)`, normalized so its root sum is positive.
    pub cubic_factor: Option<IntPolynomial>,
    /// Sum of the roots of `cubic_factor`, i.e. minus its `x^2` coefficient.
    pub theta_sum: Option<i64>,
    pub theta_sum_parity: Option<Parity>,
}

impl ReducibilityReport {
    pub fn irreducible() -> Self {
        Self {
            reducible: false,
            cubic_factor: None,
            theta_sum: None,
            theta_sum_parity: None,
        }
    }

    /// Report for the cubic-pair factorization `q = -f(x) f(-x)`, picking
    /// whichever of `f`, `-f(-x)` has positive root sum.
    pub fn from_cubic(f: IntPolynomial) -> Self {
        let a = i64::try_from(f.coeff(2)).expect("small x^2 coefficient");
        let f = if a > 0 { -f.negate_argument() } else { f };
        let theta_sum = a.abs();
        Self {
            reducible: true,
            cubic_factor: Some(f),
            theta_sum: Some(theta_sum),
            theta_sum_parity: Some(Parity::of(theta_sum)),
        }
    }
}

/// Decides reducibility of `q(x)` over the rationals.
///
/// Writing `f(x) = x^3 + a x^2 + b x + c`, the product `-f(x) f(-x)` equals
/// `x^6 + (2b - a^2) x^4 + (b^2 - 2ac) x^2 - c^2`. Matching against `q` forces
/// `c = ±1`, `b = (a^2 - s)/2` and `b^2 - 2ac = p`. The roots of `f` are three of
/// `±θ_i` with `θ_1^2 + θ_2^2 + θ_3^2 = s`, so `|a| = |Σ roots| <= 3 max|θ_i| < 3 sqrt(s)`,
/// which bounds the search. `Q` has no rational root (`Q(±1) != 0`), which rules
/// out linear and quadratic factors of the even polynomial `q`.
pub fn reducibility_report(l: usize, m: usize) -> ReducibilityReport {
    let (s, p) = sums(l, m);
    let (q1, qm1) = resolvent_at_unit_points(l, m);
    assert!(q1 != BigInt::from(0) && qm1 != BigInt::from(0), "Q has a rational root");

    let nine_s = 9 * s;
    let mut bound = nine_s.sqrt();
    if bound * bound < nine_s {
        bound += 1;
    }
    let q = q_polynomial(l, m);
    for a in -bound..=bound {
        if (a * a - s).rem_euclid(2) != 0 {
            continue;
        }
        let b = (a * a - s) / 2;
        for c in [-1i64, 1] {
            if b * b - 2 * a * c == p {
                let f = IntPolynomial::from_i64(&[c, b, a, 1]);
                debug_assert!(verify_factorization(&q, &f));
                return ReducibilityReport::from_cubic(f);
            }
        }
    }
    ReducibilityReport::irreducible()
}

/// Exact check of `q(x) = -f(x) f(-x)`.
pub fn verify_factorization(q: &IntPolynomial, f: &IntPolynomial) -> bool {
    -(f * &f.negate_argument()) == *q
}

/// Exact discriminant of `q(x)` for `T(l, m)`.
pub fn q_discriminant(l: usize, m: usize) -> BigInt {
    discriminant(&q_polynomial(l, m))
}

/// Whether `disc(q)` is the square of an integer. It always is: for an even
/// polynomial `q(x) = Q(x^2)` with `Q` cubic and `Q(0) = -1`, `disc(q) = 64 disc(Q)^2`.
pub fn discriminant_is_square(l: usize, m: usize) -> bool {
    is_perfect_square(&q_discriminant(l, m))
}
