//! Forward-mode Wirtinger differentiation over two complex mode amplitudes
//! and the Poisson bracket built on it.
//!
//! A field function F(alpha_+1, alpha_+1^*, alpha_-1, alpha_-1^*) is treated
//! as a function of four independent variables, the standard Wirtinger
//! convention. Evaluation carries the value together with all four partials,
//! and the bracket of two functions at a point is
//!
//! ```text
//! {F, G} = (1/i) sum_j [ dF/d(a_j) dG/d(a_j^*) - dF/d(a_j^*) dG/d(a_j) ]
//! ```
//!
//! summed over the two modes j = +1, -1. An independent central-difference
//! oracle reconstructs the same partials from plain value evaluations via
//! d/da = (d/dx - i d/dy)/2 and d/da* = (d/dx + i d/dy)/2.

mod dual;
mod expr;

pub use dual::{WirtingerDual, WirtingerPartials};
pub use expr::FieldFunction;

use num_complex::Complex64;
use thiserror::Error;

/// Default guard radius: arguments of `sqrt`, `ln`, `modulus`, and divisors
/// closer than this to their singular set are rejected. The brackets under
/// study diverge as either amplitude vanishes, so evaluation near the
/// origin is refused rather than extrapolated.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Allowed central-difference steps; outside this range truncation or
/// rounding dominates for amplitudes of order one.
pub const FD_STEP_MIN: f64 = 1e-12;
pub const FD_STEP_MAX: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WirtingerError {
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },
    #[error("{primitive}: argument {argument} within {epsilon:.1e} of zero")]
    ZeroModulus {
        primitive: &'static str,
        argument: Complex64,
        epsilon: f64,
    },
    #[error("{primitive}: argument {argument} within {epsilon:.1e} of the branch cut")]
    BranchCut {
        primitive: &'static str,
        argument: Complex64,
        epsilon: f64,
    },
    #[error("finite-difference step {0:.3e} outside [{FD_STEP_MIN:.0e}, {FD_STEP_MAX:.0e}]")]
    StepOutOfRange(f64),
}

/// A classical phase-space point: the two mode amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePoint {
    pub alpha_plus: Complex64,
    pub alpha_minus: Complex64,
}

impl ModePoint {
    pub fn new(alpha_plus: Complex64, alpha_minus: Complex64) -> Self {
        Self {
            alpha_plus,
            alpha_minus,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha_plus.re.is_finite()
            && self.alpha_plus.im.is_finite()
            && self.alpha_minus.re.is_finite()
            && self.alpha_minus.im.is_finite()
    }
}

/// Seeded duals for the four variables at `p`, in slot order
/// (alpha_+1, alpha_+1^*, alpha_-1, alpha_-1^*). Each carries a unit partial
/// in its own slot and zeros elsewhere; the conjugate variables are
/// independent differentiation slots, so the alpha_+1^* seed has
/// d_alpha_plus = 0.
pub fn lift_point(p: &ModePoint) -> Result<[WirtingerDual; 4], WirtingerError> {
    if !p.is_finite() {
        return Err(WirtingerError::NonFinite { what: "mode point" });
    }
    Ok([
        WirtingerDual::variable(p.alpha_plus, 0),
        WirtingerDual::variable(p.alpha_plus.conj(), 1),
        WirtingerDual::variable(p.alpha_minus, 2),
        WirtingerDual::variable(p.alpha_minus.conj(), 3),
    ])
}

/// Evaluate a field function, carrying the four Wirtinger partials along.
/// Free-function form of [`FieldFunction::eval`].
pub fn evaluate(f: &FieldFunction, p: &ModePoint) -> Result<WirtingerDual, WirtingerError> {
    f.eval(p)
}

/// Poisson bracket {f, g} at `p` with the default domain guard.
pub fn poisson_bracket(
    f: &FieldFunction,
    g: &FieldFunction,
    p: &ModePoint,
) -> Result<Complex64, WirtingerError> {
    poisson_bracket_with_epsilon(f, g, p, DEFAULT_EPSILON)
}

/// Poisson bracket with an explicit guard radius.
pub fn poisson_bracket_with_epsilon(
    f: &FieldFunction,
    g: &FieldFunction,
    p: &ModePoint,
    epsilon: f64,
) -> Result<Complex64, WirtingerError> {
    let df = f.eval_with_epsilon(p, epsilon)?;
    let dg = g.eval_with_epsilon(p, epsilon)?;
    Ok(bracket_from_partials(&df.partials(), &dg.partials()))
}

/// The bracket as a bilinear form on already-computed partials.
pub fn bracket_from_partials(df: &WirtingerPartials, dg: &WirtingerPartials) -> Complex64 {
    let sum = df.d_alpha_plus * dg.d_alpha_plus_conj - df.d_alpha_plus_conj * dg.d_alpha_plus
        + df.d_alpha_minus * dg.d_alpha_minus_conj
        - df.d_alpha_minus_conj * dg.d_alpha_minus;
    // 1/i = -i.
    sum * Complex64::new(0.0, -1.0)
}

/// Central-difference oracle for the four Wirtinger partials, built only
/// from value evaluations of `f` at shifted points.
pub fn finite_difference_partials(
    f: &FieldFunction,
    p: &ModePoint,
    h: f64,
) -> Result<WirtingerPartials, WirtingerError> {
    if !(FD_STEP_MIN..=FD_STEP_MAX).contains(&h) {
        return Err(WirtingerError::StepOutOfRange(h));
    }
    let value = |ap: Complex64, am: Complex64| -> Result<Complex64, WirtingerError> {
        Ok(f.eval(&ModePoint::new(ap, am))?.value)
    };
    let ap = p.alpha_plus;
    let am = p.alpha_minus;
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    let inv2h = 1.0 / (2.0 * h);
    let half = Complex64::new(0.5, 0.0);
    let i = Complex64::new(0.0, 1.0);

    // Mode +1: difference along the real and imaginary axes of alpha_+1.
    let fx = (value(ap + hx, am)? - value(ap - hx, am)?) * inv2h;
    let fy = (value(ap + hy, am)? - value(ap - hy, am)?) * inv2h;
    let d_alpha_plus = half * (fx - i * fy);
    let d_alpha_plus_conj = half * (fx + i * fy);

    // Mode -1.
    let gx = (value(ap, am + hx)? - value(ap, am - hx)?) * inv2h;
    let gy = (value(ap, am + hy)? - value(ap, am - hy)?) * inv2h;
    let d_alpha_minus = half * (gx - i * gy);
    let d_alpha_minus_conj = half * (gx + i * gy);

    Ok(WirtingerPartials {
        d_alpha_plus,
        d_alpha_plus_conj,
        d_alpha_minus,
        d_alpha_minus_conj,
    })
}

/// Richardson refinement of the central-difference oracle: combines steps h
/// and h/2 to cancel the leading O(h^2) truncation term.
pub fn finite_difference_partials_richardson(
    f: &FieldFunction,
    p: &ModePoint,
    h: f64,
) -> Result<WirtingerPartials, WirtingerError> {
    let coarse = finite_difference_partials(f, p, h)?;
    let fine = finite_difference_partials(f, p, h / 2.0)?;
    let combine = |c: Complex64, f4: Complex64| (4.0 * f4 - c) / 3.0;
    Ok(WirtingerPartials {
        d_alpha_plus: combine(coarse.d_alpha_plus, fine.d_alpha_plus),
        d_alpha_plus_conj: combine(coarse.d_alpha_plus_conj, fine.d_alpha_plus_conj),
        d_alpha_minus: combine(coarse.d_alpha_minus, fine.d_alpha_minus),
        d_alpha_minus_conj: combine(coarse.d_alpha_minus_conj, fine.d_alpha_minus_conj),
    })
}
