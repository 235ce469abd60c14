//! Bracketed root-finding for the strictly monotone scalar equations behind
//! the shear-type norm formulas.
//!
//! Bisection is the base method: monotonicity makes bracketing
//! unconditionally safe, and 200 halvings bottom out well below `f64`
//! resolution. A secant probe replaces the midpoint once the bracket is
//! narrower than `1e-3`, which shaves the tail of the iteration without
//! giving up the bracket.

use crate::error::{NormError, Result};
use crate::exponent::Exponent;

const MAX_BRACKET_DOUBLINGS: u32 = 60;
const MAX_BISECTION_ITERS: u32 = 200;
const SECANT_WIDTH: f64 = 1e-3;

/// Default relative tolerance on the root location.
pub const DEFAULT_TOL_REL: f64 = 1e-12;

/// A monotone scalar equation `f(x) = 0` with a candidate bracket.
pub struct RootProblem<F: Fn(f64) -> f64> {
    pub evaluate: F,
    pub lower: f64,
    pub upper: f64,
    pub tol_rel: f64,
}

impl<F: Fn(f64) -> f64> RootProblem<F> {
    pub fn new(evaluate: F, lower: f64, upper: f64) -> Self {
        RootProblem {
            evaluate,
            lower,
            upper,
            tol_rel: DEFAULT_TOL_REL,
        }
    }
}

/// Shear coefficient, conjugate exponent pair, and the solved root of the
/// q→q shear equation `(1+λ^p)^{q/p} − 1 = (1+λ^p)^{q/p} |γ/λ|^q`.
#[derive(Debug, Clone, Copy)]
pub struct ShearParams {
    pub gamma: f64,
    pub q: Exponent,
    /// Conjugate of `q`: `1/p + 1/q = 1`.
    pub p: Exponent,
    pub lambda0: f64,
}

impl ShearParams {
    /// Relative defect of the defining equation
    /// `(1+λ^p)^{q/p} − 1 = (1+λ^p)^{q/p} |γ/λ|^q` at `lambda0`:
    /// `|lhs − rhs| / max(1, |lhs|, |rhs|)`. The equation value itself grows
    /// like `(1+λ^p)^{q/p}`, so the scaled defect is the quantity doubles
    /// can actually drive to zero.
    pub fn residual(&self) -> f64 {
        let (qv, pv) = (self.q.value(), self.p.value());
        let s = (1.0 + self.lambda0.powf(pv)).powf(qv / pv);
        let lhs = s - 1.0;
        let rhs = s * (self.gamma.abs() / self.lambda0).powf(qv);
        (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
    }
}

fn eval_checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_nan() {
        return Err(NormError::NumericalError(format!("f({x}) is NaN")));
    }
    Ok(y)
}

/// Finds the root of a strictly monotone function inside (an expansion of)
/// the given bracket. Deterministic: identical inputs give identical roots.
pub fn solve_monotone<F: Fn(f64) -> f64>(problem: &RootProblem<F>) -> Result<f64> {
    let f = &problem.evaluate;
    if problem.lower >= problem.upper {
        return Err(NormError::PreconditionViolation(format!(
            "bracket [{}, {}] is not ordered",
            problem.lower, problem.upper
        )));
    }
    let mut lo = problem.lower;
    let mut hi = problem.upper;
    let mut flo = eval_checked(f, lo)?;
    let mut fhi = eval_checked(f, hi)?;

    // Expand geometrically until the endpoints straddle the root.
    let mut doublings = 0;
    if flo == f64::NEG_INFINITY {
        // -inf at the left edge still brackets a root of an increasing f
        flo = -f64::MAX;
    }
    while flo * fhi > 0.0 {
        if doublings >= MAX_BRACKET_DOUBLINGS {
            return Err(NormError::NoRoot(format!(
                "no sign change in [{lo}, {hi}] after {MAX_BRACKET_DOUBLINGS} doublings"
            )));
        }
        if flo > 0.0 {
            // both positive: an increasing f crosses to the left
            lo *= 0.5;
            flo = eval_checked(f, lo)?;
        } else {
            hi *= 2.0;
            fhi = eval_checked(f, hi)?;
        }
        doublings += 1;
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }

    let mut best = (lo, flo.abs());
    if fhi.abs() < best.1 {
        best = (hi, fhi.abs());
    }
    for _ in 0..MAX_BISECTION_ITERS {
        let width = hi - lo;
        let mut mid = 0.5 * (lo + hi);
        if width < SECANT_WIDTH && flo.is_finite() && fhi.is_finite() && fhi != flo {
            let secant = lo - flo * (hi - lo) / (fhi - flo);
            if secant > lo && secant < hi {
                mid = secant;
            }
        }
        if mid <= lo || mid >= hi {
            break; // bracket has collapsed to adjacent floats
        }
        let fmid = eval_checked(f, mid)?;
        if fmid.abs() < best.1 {
            best = (mid, fmid.abs());
        }
        if fmid == 0.0 {
            return Ok(mid);
        }
        if flo * fmid < 0.0 {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
        if hi - lo <= problem.tol_rel * mid.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(best.0)
}

/// The increasing form of the shear root equation,
/// `f(λ) = (1+λ^p)^{q/p} (1 − |γ|^q/λ^q) − 1`.
pub fn shear_equation(gamma: f64, q: f64, p: f64) -> impl Fn(f64) -> f64 {
    let gq = gamma.abs().powf(q);
    move |lambda: f64| (1.0 + lambda.powf(p)).powf(q / p) * (1.0 - gq / lambda.powf(q)) - 1.0
}

/// The same equation divided through by `(1+λ^p)^{q/p}`: identical root,
/// but O(1) scale near it, so bisection bottoms out at machine precision.
fn normalized_shear_equation(gamma: f64, q: f64, p: f64) -> impl Fn(f64) -> f64 {
    let gq = gamma.abs().powf(q);
    move |lambda: f64| 1.0 - gq / lambda.powf(q) - (1.0 + lambda.powf(p)).powf(-q / p)
}

/// Solves the shear equation for its unique positive root `λ₀`.
pub fn solve_shear_lambda0(gamma: f64, q: Exponent) -> Result<ShearParams> {
    if gamma == 0.0 {
        return Err(NormError::DegenerateShear);
    }
    let qv = match q {
        Exponent::Inf => {
            return Err(NormError::UnsupportedExponent(
                "shear equation needs finite q > 1".into(),
            ))
        }
        Exponent::Finite(v) if v <= 1.0 => {
            return Err(NormError::UnsupportedExponent(
                "shear equation needs q > 1".into(),
            ))
        }
        Exponent::Finite(v) => v,
    };
    let p = q.conjugate();
    let pv = p.value();
    let f = normalized_shear_equation(gamma, qv, pv);
    // λ₀ scales with |γ|.
    let problem = RootProblem::new(&f, 1e-8, (2.0 * gamma.abs()).max(1.0));
    let lambda0 = solve_monotone(&problem)?;
    let params = ShearParams {
        gamma,
        q,
        p,
        lambda0,
    };
    let res = params.residual();
    if !res.is_finite() || res.abs() > 1e-12 {
        return Err(NormError::NumericalError(format!(
            "shear root residual {res} exceeds 1e-12"
        )));
    }
    Ok(params)
}

/// The composite-shear coupling function whose positive root fixes `γ`.
///
/// `g(γ) = |γ| − [Z^{p/q} − 1]^{1/p} / Z^{1/q}` with
/// `Z = 1 + n / (|1−γ|^q + n − 1)`; `g(0) < 0` and `g(γ) → ∞`.
pub fn composite_gamma_equation(n: usize, q: f64) -> impl Fn(f64) -> f64 {
    let p = q / (q - 1.0);
    let nf = n as f64;
    move |gamma: f64| {
        let z = 1.0 + nf / ((1.0 - gamma).abs().powf(q) + nf - 1.0);
        gamma.abs() - (z.powf(p / q) - 1.0).powf(1.0 / p) / z.powf(1.0 / q)
    }
}

/// Smallest positive root of the composite-shear coupling equation, found by
/// a left-to-right scan with step 0.25 followed by bisection.
pub fn solve_composite_gamma(n: usize, q: Exponent) -> Result<f64> {
    if n < 2 {
        return Err(NormError::PreconditionViolation(
            "composite shear needs n >= 2".into(),
        ));
    }
    let qv = match q {
        Exponent::Inf => {
            return Err(NormError::UnsupportedExponent(
                "composite shear needs finite q > 1".into(),
            ))
        }
        Exponent::Finite(v) if v <= 1.0 => {
            return Err(NormError::UnsupportedExponent(
                "composite shear needs q > 1".into(),
            ))
        }
        Exponent::Finite(v) => v,
    };
    let g = composite_gamma_equation(n, qv);
    let mut lo = 1e-12;
    let mut glo = g(lo);
    if !glo.is_finite() {
        return Err(NormError::NumericalError("g not finite near 0".into()));
    }
    let mut hi = 0.25;
    loop {
        if hi > 1e6 {
            return Err(NormError::NoRoot(
                "no sign change of the coupling function up to 1e6".into(),
            ));
        }
        let ghi = eval_checked(&g, hi)?;
        if glo * ghi <= 0.0 {
            break;
        }
        lo = hi;
        glo = ghi;
        hi += 0.25;
    }
    let problem = RootProblem::new(&g, lo, hi);
    let gamma = solve_monotone(&problem)?;
    let res = g(gamma);
    if res.abs() > 1e-12 {
        return Err(NormError::NumericalError(format!(
            "coupling-equation residual {res} exceeds 1e-12"
        )));
    }
    Ok(gamma)
}
