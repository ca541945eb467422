//! Value-plus-partials records propagated by forward-mode evaluation.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::WirtingerError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The four Wirtinger partials of a field function, taken with respect to
/// (alpha_+1, alpha_+1^*, alpha_-1, alpha_-1^*) in that order. The starred
/// amplitudes are independent differentiation slots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirtingerPartials {
    pub d_alpha_plus: Complex64,
    pub d_alpha_plus_conj: Complex64,
    pub d_alpha_minus: Complex64,
    pub d_alpha_minus_conj: Complex64,
}

impl WirtingerPartials {
    pub const ZERO: Self = Self {
        d_alpha_plus: ZERO,
        d_alpha_plus_conj: ZERO,
        d_alpha_minus: ZERO,
        d_alpha_minus_conj: ZERO,
    };

    pub fn as_array(&self) -> [Complex64; 4] {
        [
            self.d_alpha_plus,
            self.d_alpha_plus_conj,
            self.d_alpha_minus,
            self.d_alpha_minus_conj,
        ]
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest component magnitude.
    pub fn inf_norm(&self) -> f64 {
        self.as_array().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest componentwise difference relative to the overall scale of
    /// `self` (the reference), floored at `floor`. Structurally zero
    /// components are judged against the vector scale, not against zero.
    pub fn max_relative_difference(&self, other: &Self, floor: f64) -> f64 {
        self.max_abs_difference(other) / self.inf_norm().max(floor)
    }
}

/// A complex value carrying its four Wirtinger partials.
///
/// Arithmetic propagates partials by the chain rule with conjugate
/// amplitudes treated as independent variables, so `conj` swaps the roles of
/// the paired slots in addition to conjugating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirtingerDual {
    pub value: Complex64,
    pub d_alpha_plus: Complex64,
    pub d_alpha_plus_conj: Complex64,
    pub d_alpha_minus: Complex64,
    pub d_alpha_minus_conj: Complex64,
}

impl WirtingerDual {
    pub fn constant(value: Complex64) -> Self {
        Self {
            value,
            d_alpha_plus: ZERO,
            d_alpha_plus_conj: ZERO,
            d_alpha_minus: ZERO,
            d_alpha_minus_conj: ZERO,
        }
    }

    /// Seed for one of the four variables: unit partial in `slot`
    /// (0 = alpha_+1, 1 = alpha_+1^*, 2 = alpha_-1, 3 = alpha_-1^*).
    pub fn variable(value: Complex64, slot: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut d = [ZERO; 4];
        d[slot] = one;
        Self {
            value,
            d_alpha_plus: d[0],
            d_alpha_plus_conj: d[1],
            d_alpha_minus: d[2],
            d_alpha_minus_conj: d[3],
        }
    }

    pub fn partials(&self) -> WirtingerPartials {
        WirtingerPartials {
            d_alpha_plus: self.d_alpha_plus,
            d_alpha_plus_conj: self.d_alpha_plus_conj,
            d_alpha_minus: self.d_alpha_minus,
            d_alpha_minus_conj: self.d_alpha_minus_conj,
        }
    }

    pub fn is_finite(&self) -> bool {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        finite(self.value)
            && finite(self.d_alpha_plus)
            && finite(self.d_alpha_plus_conj)
            && finite(self.d_alpha_minus)
            && finite(self.d_alpha_minus_conj)
    }

    /// How far the partials are from the conjugate pairing that holds for
    /// real-valued functions: max of |d_ap_conj - conj(d_ap)| and the
    /// minus-mode analogue.
    pub fn conjugate_pairing_residual(&self) -> f64 {
        let plus = (self.d_alpha_plus_conj - self.d_alpha_plus.conj()).norm();
        let minus = (self.d_alpha_minus_conj - self.d_alpha_minus.conj()).norm();
        plus.max(minus)
    }

    fn map(&self, value: Complex64, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            value,
            d_alpha_plus: f(self.d_alpha_plus),
            d_alpha_plus_conj: f(self.d_alpha_plus_conj),
            d_alpha_minus: f(self.d_alpha_minus),
            d_alpha_minus_conj: f(self.d_alpha_minus_conj),
        }
    }

    /// Conjugation swaps the holomorphic and antiholomorphic slots of each
    /// mode: d(F*)/d(alpha_j) = conj(dF/d(alpha_j^*)).
    pub fn conj(&self) -> Self {
        Self {
            value: self.value.conj(),
            d_alpha_plus: self.d_alpha_plus_conj.conj(),
            d_alpha_plus_conj: self.d_alpha_plus.conj(),
            d_alpha_minus: self.d_alpha_minus_conj.conj(),
            d_alpha_minus_conj: self.d_alpha_minus.conj(),
        }
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.map(e, |d| d * e)
    }

    /// Principal square root. Rejects arguments within `epsilon` of zero or
    /// of the branch cut along the negative real axis, where the derivative
    /// is unbounded or discontinuous.
    pub fn sqrt(&self, epsilon: f64) -> Result<Self, WirtingerError> {
        guard_cut("sqrt", self.value, epsilon)?;
        let s = self.value.sqrt();
        let scale = 0.5 / s;
        Ok(self.map(s, |d| d * scale))
    }

    /// Principal natural logarithm, guarded like `sqrt`.
    pub fn ln(&self, epsilon: f64) -> Result<Self, WirtingerError> {
        guard_cut("ln", self.value, epsilon)?;
        let l = self.value.ln();
        let v = self.value;
        Ok(self.map(l, |d| d / v))
    }

    /// |z| = sqrt(z z*). Each partial mixes the slot with its conjugate
    /// partner because |z| is not holomorphic.
    pub fn modulus(&self, epsilon: f64) -> Result<Self, WirtingerError> {
        let m = self.value.norm();
        if m < epsilon {
            return Err(WirtingerError::ZeroModulus {
                primitive: "modulus",
                argument: self.value,
                epsilon,
            });
        }
        let v = self.value;
        let vc = v.conj();
        let half_inv_m = 0.5 / m;
        Ok(Self {
            value: Complex64::new(m, 0.0),
            d_alpha_plus: (vc * self.d_alpha_plus + v * self.d_alpha_plus_conj.conj()) * half_inv_m,
            d_alpha_plus_conj: (vc * self.d_alpha_plus_conj + v * self.d_alpha_plus.conj())
                * half_inv_m,
            d_alpha_minus: (vc * self.d_alpha_minus + v * self.d_alpha_minus_conj.conj())
                * half_inv_m,
            d_alpha_minus_conj: (vc * self.d_alpha_minus_conj + v * self.d_alpha_minus.conj())
                * half_inv_m,
        })
    }

    pub fn div(&self, rhs: &Self, epsilon: f64) -> Result<Self, WirtingerError> {
        if rhs.value.norm() < epsilon {
            return Err(WirtingerError::ZeroModulus {
                primitive: "div",
                argument: rhs.value,
                epsilon,
            });
        }
        let value = self.value / rhs.value;
        let inv = 1.0 / rhs.value;
        Ok(Self {
            value,
            d_alpha_plus: (self.d_alpha_plus - value * rhs.d_alpha_plus) * inv,
            d_alpha_plus_conj: (self.d_alpha_plus_conj - value * rhs.d_alpha_plus_conj) * inv,
            d_alpha_minus: (self.d_alpha_minus - value * rhs.d_alpha_minus) * inv,
            d_alpha_minus_conj: (self.d_alpha_minus_conj - value * rhs.d_alpha_minus_conj) * inv,
        })
    }
}

fn guard_cut(primitive: &'static str, z: Complex64, epsilon: f64) -> Result<(), WirtingerError> {
    if z.norm() < epsilon {
        return Err(WirtingerError::ZeroModulus {
            primitive,
            argument: z,
            epsilon,
        });
    }
    if z.re < 0.0 && z.im.abs() < epsilon {
        return Err(WirtingerError::BranchCut {
            primitive,
            argument: z,
            epsilon,
        });
    }
    Ok(())
}

impl Add for WirtingerDual {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            d_alpha_plus: self.d_alpha_plus + rhs.d_alpha_plus,
            d_alpha_plus_conj: self.d_alpha_plus_conj + rhs.d_alpha_plus_conj,
            d_alpha_minus: self.d_alpha_minus + rhs.d_alpha_minus,
            d_alpha_minus_conj: self.d_alpha_minus_conj + rhs.d_alpha_minus_conj,
        }
    }
}

impl Sub for WirtingerDual {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for WirtingerDual {
    type Output = Self;
    fn neg(self) -> Self {
        let value = -self.value;
        Self {
            value,
            d_alpha_plus: -self.d_alpha_plus,
            d_alpha_plus_conj: -self.d_alpha_plus_conj,
            d_alpha_minus: -self.d_alpha_minus,
            d_alpha_minus_conj: -self.d_alpha_minus_conj,
        }
    }
}

impl Mul for WirtingerDual {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            d_alpha_plus: self.d_alpha_plus * rhs.value + self.value * rhs.d_alpha_plus,
            d_alpha_plus_conj: self.d_alpha_plus_conj * rhs.value
                + self.value * rhs.d_alpha_plus_conj,
            d_alpha_minus: self.d_alpha_minus * rhs.value + self.value * rhs.d_alpha_minus,
            d_alpha_minus_conj: self.d_alpha_minus_conj * rhs.value
                + self.value * rhs.d_alpha_minus_conj,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_rule_mixes_slots() {
        // F = alpha_+1 * alpha_-1^* at (1+i, 2): dF/d(a+) = 2, dF/d(a-*) = 1+i.
        let a = WirtingerDual::variable(c(1.0, 1.0), 0);
        let b = WirtingerDual::variable(c(2.0, 0.0), 3);
        let f = a * b;
        assert_eq!(f.value, c(2.0, 2.0));
        assert_eq!(f.d_alpha_plus, c(2.0, 0.0));
        assert_eq!(f.d_alpha_minus_conj, c(1.0, 1.0));
        assert_eq!(f.d_alpha_plus_conj, c(0.0, 0.0));
        assert_eq!(f.d_alpha_minus, c(0.0, 0.0));
    }

    #[test]
    fn conjugation_swaps_partial_roles() {
        let a = WirtingerDual::variable(c(1.0, 1.0), 0);
        let ac = a.conj();
        assert_eq!(ac.value, c(1.0, -1.0));
        assert_eq!(ac.d_alpha_plus, c(0.0, 0.0));
        assert_eq!(ac.d_alpha_plus_conj, c(1.0, 0.0));
    }

    #[test]
    fn modulus_squared_matches_z_zbar() {
        // |z|^2 built as modulus*modulus must agree with z * conj(z).
        let z = c(3.0, -1.5);
        let a = WirtingerDual::variable(z, 0);
        let m = a.modulus(1e-9).unwrap();
        let via_mod = m * m;
        let via_conj = a * a.conj();
        assert!((via_mod.value - via_conj.value).norm() < 1e-12);
        assert!(via_mod.partials().max_abs_difference(&via_conj.partials()) < 1e-12);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = WirtingerDual::variable(c(1.2, 0.7), 0);
        let b = WirtingerDual::variable(c(-0.4, 2.0), 2);
        let q = (a * b).div(&b, 1e-9).unwrap();
        assert!((q.value - a.value).norm() < 1e-14);
        assert!(q.partials().max_abs_difference(&a.partials()) < 1e-14);
    }

    #[test]
    fn sqrt_then_square_is_identity() {
        let a = WirtingerDual::variable(c(0.8, 1.9), 0);
        let s = a.sqrt(1e-9).unwrap();
        let back = s * s;
        assert!((back.value - a.value).norm() < 1e-13);
        assert!(back.partials().max_abs_difference(&a.partials()) < 1e-12);
    }

    #[test]
    fn ln_guard_rejects_negative_real_axis() {
        let a = WirtingerDual::constant(c(-2.0, 0.0));
        match a.ln(1e-9) {
            Err(WirtingerError::BranchCut { primitive, .. }) => assert_eq!(primitive, "ln"),
            other => panic!("expected branch-cut error, got {other:?}"),
        }
    }

    #[test]
    fn modulus_guard_rejects_origin() {
        let a = WirtingerDual::constant(c(0.0, 0.0));
        match a.modulus(1e-9) {
            Err(WirtingerError::ZeroModulus { primitive, .. }) => {
                assert_eq!(primitive, "modulus")
            }
            other => panic!("expected zero-modulus error, got {other:?}"),
        }
    }
}
