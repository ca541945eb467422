//! Field functions as immutable expression trees over the four variables.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::dual::WirtingerDual;
use super::{lift_point, ModePoint, WirtingerError, DEFAULT_EPSILON};

#[derive(Debug)]
enum Expr {
    Const(Complex64),
    // Slot index into the lifted point: 0 = a+, 1 = a+*, 2 = a-, 3 = a-*.
    Var(usize),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Conj(Arc<Expr>),
    Sqrt(Arc<Expr>),
    Ln(Arc<Expr>),
    Exp(Arc<Expr>),
    Modulus(Arc<Expr>),
}

/// A deterministic, side-effect-free map from a [`ModePoint`] to a
/// [`WirtingerDual`], built compositionally from constants, the four
/// variables, field arithmetic, `conj`, principal `sqrt`/`ln`, `exp`, and
/// the modulus |z|.
///
/// Cloning is cheap (shared subtrees); evaluation never mutates the tree, so
/// a `FieldFunction` can be evaluated concurrently from many threads.
#[derive(Debug, Clone)]
pub struct FieldFunction(Arc<Expr>);

impl FieldFunction {
    pub fn constant(value: impl Into<Complex64>) -> Self {
        Self(Arc::new(Expr::Const(value.into())))
    }

    pub fn alpha_plus() -> Self {
        Self(Arc::new(Expr::Var(0)))
    }

    pub fn alpha_plus_conj() -> Self {
        Self(Arc::new(Expr::Var(1)))
    }

    pub fn alpha_minus() -> Self {
        Self(Arc::new(Expr::Var(2)))
    }

    pub fn alpha_minus_conj() -> Self {
        Self(Arc::new(Expr::Var(3)))
    }

    pub fn conj(&self) -> Self {
        Self(Arc::new(Expr::Conj(self.0.clone())))
    }

    /// Principal branch.
    pub fn sqrt(&self) -> Self {
        Self(Arc::new(Expr::Sqrt(self.0.clone())))
    }

    /// Principal branch.
    pub fn ln(&self) -> Self {
        Self(Arc::new(Expr::Ln(self.0.clone())))
    }

    pub fn exp(&self) -> Self {
        Self(Arc::new(Expr::Exp(self.0.clone())))
    }

    /// |z| = sqrt(z conj(z)).
    pub fn modulus(&self) -> Self {
        Self(Arc::new(Expr::Modulus(self.0.clone())))
    }

    /// Evaluate value and partials at `p` with the default domain guard.
    pub fn eval(&self, p: &ModePoint) -> Result<WirtingerDual, WirtingerError> {
        self.eval_with_epsilon(p, DEFAULT_EPSILON)
    }

    /// Evaluate with an explicit guard radius for zero-modulus and
    /// branch-cut checks.
    pub fn eval_with_epsilon(
        &self,
        p: &ModePoint,
        epsilon: f64,
    ) -> Result<WirtingerDual, WirtingerError> {
        let vars = lift_point(p)?;
        let out = eval_expr(&self.0, &vars, epsilon)?;
        if !out.is_finite() {
            return Err(WirtingerError::NonFinite {
                what: "evaluation result",
            });
        }
        Ok(out)
    }
}

fn eval_expr(
    e: &Expr,
    vars: &[WirtingerDual; 4],
    epsilon: f64,
) -> Result<WirtingerDual, WirtingerError> {
    Ok(match e {
        Expr::Const(z) => WirtingerDual::constant(*z),
        Expr::Var(slot) => vars[*slot],
        Expr::Add(a, b) => eval_expr(a, vars, epsilon)? + eval_expr(b, vars, epsilon)?,
        Expr::Sub(a, b) => eval_expr(a, vars, epsilon)? - eval_expr(b, vars, epsilon)?,
        Expr::Mul(a, b) => eval_expr(a, vars, epsilon)? * eval_expr(b, vars, epsilon)?,
        Expr::Div(a, b) => {
            eval_expr(a, vars, epsilon)?.div(&eval_expr(b, vars, epsilon)?, epsilon)?
        }
        Expr::Neg(a) => -eval_expr(a, vars, epsilon)?,
        Expr::Conj(a) => eval_expr(a, vars, epsilon)?.conj(),
        Expr::Sqrt(a) => eval_expr(a, vars, epsilon)?.sqrt(epsilon)?,
        Expr::Ln(a) => eval_expr(a, vars, epsilon)?.ln(epsilon)?,
        Expr::Exp(a) => eval_expr(a, vars, epsilon)?.exp(),
        Expr::Modulus(a) => eval_expr(a, vars, epsilon)?.modulus(epsilon)?,
    })
}

impl Add for FieldFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(Arc::new(Expr::Add(self.0, rhs.0)))
    }
}

impl Sub for FieldFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(Arc::new(Expr::Sub(self.0, rhs.0)))
    }
}

impl Mul for FieldFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(Arc::new(Expr::Mul(self.0, rhs.0)))
    }
}

impl Div for FieldFunction {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self(Arc::new(Expr::Div(self.0, rhs.0)))
    }
}

impl Neg for FieldFunction {
    type Output = Self;
    fn neg(self) -> Self {
        Self(Arc::new(Expr::Neg(self.0)))
    }
}
