use serde::{Deserialize, Serialize};

use crate::scalar::Real;

use super::SpectralData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CubicClosedForm,
    Eigensolver,
}

/// The three positive simple eigenvalues `θ_1 < θ_2 < θ_3` of `T(l, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaTriple<T> {
    pub theta: [T; 3],
    pub provenance: Provenance,
}

/// Positive roots of `q(x)` for `T(l, m)`.
///
/// `θ_i^2` are the roots of `Q(y) = y^3 - s y^2 + p y - 1`, taken from the
/// trigonometric form of the depressed cubic, then polished by Newton steps on
/// `q(x) = Q(x^2)`. `Q` always has three distinct positive roots for `l, m >= 1`.
pub fn theta_roots<T: Real>(l: usize, m: usize) -> ThetaTriple<T> {
    let (l64, m64) = (l as f64, m as f64);
    let s = T::lit(l64 + m64 + 3.0);
    let p = T::lit(l64 * m64 + l64 + m64 + 3.0);
    let three = T::lit(3.0);
    let two = T::lit(2.0);

    // y = z + s/3 turns Q into z^3 + P z + R.
    let big_p = p - s * s / three;
    let big_r = -two * s * s * s / T::lit(27.0) + s * p / three - T::one();
    let disc = T::lit(4.0) * big_p * big_p * big_p + T::lit(27.0) * big_r * big_r;
    assert!(
        big_p < T::zero() && disc < T::zero(),
        "Q(y) for T({l},{m}) must have three distinct real roots"
    );
    let amp = two * (-big_p / three).sqrt();
    let arg = (three * big_r / (two * big_p) * (-three / big_p).sqrt())
        .max(-T::one())
        .min(T::one());
    let phi = arg.acos() / three;
    let shift = s / three;
    let mut ys = [0, 1, 2].map(|k| amp * (phi - two * T::PI() * T::from_usize_lossy(k) / three).cos() + shift);
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!(ys[0] > T::zero(), "Q(y) must have positive roots");

    let theta = ys.map(|y| {
        let mut x = y.sqrt();
        for _ in 0..3 {
            let x2 = x * x;
            let q = ((x2 - s) * x2 + p) * x2 - T::one();
            let dq = ((T::lit(6.0) * x2 - T::lit(4.0) * s) * x2 + two * p) * x;
            if dq == T::zero() {
                break;
            }
            let step = q / dq;
            x = x - step;
            if step.abs() <= T::epsilon() * x {
                break;
            }
        }
        x
    });
    ThetaTriple {
        theta,
        provenance: Provenance::CubicClosedForm,
    }
}

impl<T: Real> ThetaTriple<T> {
    /// Positive eigenvalues of a `T(l, m)` decomposition that are not 1.
    pub fn from_spectrum(spec: &SpectralData<T>, unit_tol: T) -> Option<Self> {
        let pos: Vec<T> = spec
            .eigenvalues()
            .into_iter()
            .filter(|&x| x > unit_tol && (x - T::one()).abs() > unit_tol)
            .collect();
        let theta: [T; 3] = pos.try_into().ok()?;
        Some(Self {
            theta,
            provenance: Provenance::Eigensolver,
        })
    }

    pub fn sum(&self) -> T {
        self.theta.iter().copied().sum()
    }

    /// Residuals of the root identities of `Q`:
    /// `Σ θ_i^2 - s`, `Σ θ_i^2 θ_j^2 - p`, `Π θ_i^2 - 1`.
    pub fn identity_residuals(&self, l: usize, m: usize) -> [T; 3] {
        let (l, m) = (l as f64, m as f64);
        let [a, b, c] = self.theta.map(|t| t * t);
        [
            a + b + c - T::lit(l + m + 3.0),
            a * b + b * c + c * a - T::lit(l * m + l + m + 3.0),
            a * b * c - T::one(),
        ]
    }

    /// Smallest distance from any `θ_i` to 0 or 1.
    pub fn separation_from_unit(&self) -> T {
        self.theta
            .iter()
            .fold(T::infinity(), |m, &t| m.min(t.abs()).min((t - T::one()).abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p6_closed_form() {
        let t = theta_roots::<f64>(1, 1);
        let pi = std::f64::consts::PI;
        let expect = [3.0, 2.0, 1.0].map(|k: f64| 2.0 * (k * pi / 7.0).cos());
        for (a, b) in t.theta.iter().zip(expect) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
        assert!((t.theta[0] - 0.445042).abs() < 1e-5);
        assert!((t.theta[1] - 1.246980).abs() < 1e-5);
        assert!((t.theta[2] - 1.801938).abs() < 1e-5);
    }

    #[test]
    fn symmetric_in_l_and_m() {
        for (l, m) in [(2, 7), (3, 1), (11, 4)] {
            assert_eq!(theta_roots::<f64>(l, m), theta_roots::<f64>(m, l));
        }
    }

    #[test]
    fn product_is_one() {
        let t = theta_roots::<f64>(2, 2);
        assert!((t.theta.iter().product::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_precision_identities() {
        let t = theta_roots::<f32>(3, 4);
        let r = t.identity_residuals(3, 4);
        assert!(r.iter().all(|x| x.abs() < 1e-4), "{r:?}");
    }
}
