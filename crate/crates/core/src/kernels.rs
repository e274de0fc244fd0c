//! Half-plane sweep kernels.
//!
//! For `z = x + i v` with `x > 0` and an axis interval `(y1, y2]`, the
//! genus-0 kernel is the harmonic measure of the right half-plane,
//!
//! ```text
//! omega(z, (y1, y2]) = (1/pi) * ( atan((y2 - v)/x) - atan((y1 - v)/x) )
//! ```
//!
//! with density `(1/pi) * x / (x^2 + (y - v)^2)`. The genus-1 kernel
//! subtracts the linear correction `((y2 - y1)/pi) * Re(1/z)`, which makes
//! its density vanish at `y = 0` and decay like `1/y^2` — the price is that
//! the charge of an interval can be negative and the total mass over the
//! whole axis is no longer finite in variation.
//!
//! Points on the axis itself (`x = 0`) are kept in the kernel's domain: the
//! harmonic measure degenerates to the indicator `1_{(y1,y2]}(Im z)`, so
//! axis mass passes through a sweep unchanged.

use crate::error::{Error, Result};
use crate::measure::{ComplexPoint, Genus};
use crate::quad::{self, Tol};

/// A half-open axis interval `(y1, y2]`; `y1 <= y2`, infinite endpoints
/// allowed, `y1 == y2` denotes the empty interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalI {
    y1: f64,
    y2: f64,
}

impl IntervalI {
    /// Validate `y1 <= y2` (NaN rejected; infinities allowed).
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        if y1.is_nan() || y2.is_nan() {
            return Err(Error::InvalidInput("interval endpoint is NaN".into()));
        }
        if y1 > y2 {
            return Err(Error::InvalidInput(format!(
                "interval ({y1}, {y2}] has y1 > y2"
            )));
        }
        Ok(IntervalI { y1, y2 })
    }

    /// Symmetric interval `(-t, t]` for `t >= 0`.
    pub fn symmetric(t: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "symmetric interval requires t >= 0, got {t}"
            )));
        }
        IntervalI::new(-t, t)
    }

    /// Lower endpoint (excluded).
    pub fn y1(&self) -> f64 {
        self.y1
    }

    /// Upper endpoint (included).
    pub fn y2(&self) -> f64 {
        self.y2
    }

    /// Interval length.
    pub fn len(&self) -> f64 {
        self.y2 - self.y1
    }

    /// `true` for the degenerate interval `y1 == y2`.
    pub fn is_empty(&self) -> bool {
        self.y1 == self.y2
    }

    fn contains(&self, y: f64) -> bool {
        y > self.y1 && y <= self.y2
    }
}

/// How a kernel value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMethod {
    /// Arctangent/logarithm closed form.
    ClosedForm,
    /// Adaptive quadrature of the kernel density.
    Quadrature,
}

/// A kernel evaluation together with the method that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    /// The kernel value.
    pub value: f64,
    /// How it was computed.
    pub method: EvalMethod,
}

fn check_point(z: ComplexPoint) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "evaluation point ({}, {}) is not finite",
            z.re, z.im
        )));
    }
    Ok(())
}

/// Harmonic measure `omega(z, (y1, y2])` of the right half-plane.
///
/// Defined on the closed right half-plane: `Re z < 0` is a domain error, and
/// `Re z = 0` yields the boundary indicator.
pub fn harmonic_measure(z: ComplexPoint, interval: IntervalI) -> Result<f64> {
    check_point(z)?;
    if z.re < 0.0 {
        return Err(Error::KernelDomain(format!(
            "harmonic measure needs Re z >= 0, got Re z = {}",
            z.re
        )));
    }
    if z.re == 0.0 {
        return Ok(if interval.contains(z.im) { 1.0 } else { 0.0 });
    }
    // atan(+/-inf) = +/-pi/2 makes infinite endpoints exact: the full axis
    // integrates to exactly 1.
    let hi = ((interval.y2 - z.im) / z.re).atan();
    let lo = ((interval.y1 - z.im) / z.re).atan();
    Ok((hi - lo) / std::f64::consts::PI)
}

/// Genus-1 interval charge `Omega(z, (y1, y2]) = omega - (len/pi) Re(1/z)`.
///
/// Defined on the closed right half-plane minus the origin; the interval
/// must be finite.
pub fn genus1_charge(z: ComplexPoint, interval: IntervalI) -> Result<f64> {
    check_point(z)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::KernelDomain(
            "genus-1 kernel is undefined at the origin".into(),
        ));
    }
    if z.re < 0.0 {
        return Err(Error::KernelDomain(format!(
            "genus-1 kernel needs Re z >= 0, got Re z = {}",
            z.re
        )));
    }
    if !interval.y1.is_finite() || !interval.y2.is_finite() {
        return Err(Error::InvalidInput(
            "genus-1 interval charge requires finite endpoints".into(),
        ));
    }
    let omega = harmonic_measure(z, interval)?;
    Ok(omega - interval.len() / std::f64::consts::PI * z.recip_re())
}

/// Kernel density at axis position `y`, for `Re z > 0` only.
pub fn kernel_density(z: ComplexPoint, y: f64, genus: Genus) -> Result<f64> {
    check_point(z)?;
    if z.re <= 0.0 {
        return Err(Error::KernelDomain(format!(
            "kernel density needs Re z > 0, got Re z = {}",
            z.re
        )));
    }
    if !y.is_finite() {
        return Err(Error::InvalidInput(format!("density position {y} is not finite")));
    }
    let dy = y - z.im;
    let p = z.re / (std::f64::consts::PI * (z.re * z.re + dy * dy));
    Ok(match genus {
        Genus::Zero => p,
        Genus::One => p - z.recip_re() / std::f64::consts::PI,
    })
}

/// Independent check value: adaptive quadrature of the kernel density over
/// the interval. Genus 1 requires finite endpoints (the genus-0 density is
/// integrable over the whole axis, so infinite endpoints are allowed there).
pub fn quadrature_oracle(z: ComplexPoint, interval: IntervalI, genus: Genus) -> Result<f64> {
    check_point(z)?;
    if z.re <= 0.0 {
        return Err(Error::KernelDomain(format!(
            "quadrature oracle needs Re z > 0, got Re z = {}",
            z.re
        )));
    }
    if genus == Genus::One && (!interval.y1.is_finite() || !interval.y2.is_finite()) {
        return Err(Error::InvalidInput(
            "genus-1 interval charge requires finite endpoints".into(),
        ));
    }
    let out = quad::integrate(
        |y| {
            let dy = y - z.im;
            let p = z.re / (std::f64::consts::PI * (z.re * z.re + dy * dy));
            match genus {
                Genus::Zero => p,
                Genus::One => p - z.recip_re() / std::f64::consts::PI,
            }
        },
        interval.y1,
        interval.y2,
        Tol { abs: 1e-13, rel: 1e-11 },
        4000,
    )?;
    Ok(out.value)
}

/// Evaluate a kernel by the requested method, tagging the result.
pub fn evaluate(
    z: ComplexPoint,
    interval: IntervalI,
    genus: Genus,
    method: EvalMethod,
) -> Result<KernelValue> {
    let value = match method {
        EvalMethod::ClosedForm => match genus {
            Genus::Zero => harmonic_measure(z, interval)?,
            Genus::One => genus1_charge(z, interval)?,
        },
        EvalMethod::Quadrature => quadrature_oracle(z, interval, genus)?,
    };
    Ok(KernelValue { value, method })
}
