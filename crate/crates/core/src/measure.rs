//! Signed charge distributions on the plane.
//!
//! A [`ChargeDistribution`] is a finite signed measure made of
//!
//! * finitely many planar [`Atom`]s off the imaginary axis, and
//! * an [`AxisCharge`] on the imaginary axis: point atoms plus an absolutely
//!   continuous part whose density is kept *symbolically* as a list of
//!   closed-form [`AxisTerm`]s (Poisson-type kernel terms and windowed
//!   constants).
//!
//! Keeping densities symbolic lets signed interval masses, distribution
//! functions and `1/y`-weighted integrals evaluate through exact primitives;
//! adaptive quadrature is reserved for total-variation integrals of
//! mixed-sign densities and for the sign-restricted densities produced by
//! Jordan decomposition.
//!
//! Conventions, used consistently everywhere:
//!
//! * intervals on the axis are half-open `(y1, y2]`, so distribution
//!   functions are right-continuous and an atom at `y` jumps exactly at `y`;
//! * the imaginary-axis distribution function is normalized to `F(0) = 0`;
//! * atoms placed exactly on the imaginary axis are stored in the axis
//!   component, never in the planar atom list;
//! * duplicate atom locations merge by weight summation and exact zero
//!   weights are dropped, so representations are canonical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, Tol};

/// Absolute tolerance for density quadrature.
pub(crate) const QUAD_ABS_TOL: f64 = 1e-10;
/// Relative tolerance floor for density quadrature (binding only for very
/// large masses, where a 1e-10 absolute target is not representable).
pub(crate) const QUAD_REL_TOL: f64 = 1e-12;
/// Hard segment cap for density quadrature.
pub(crate) const QUAD_MAX_SEGMENTS: usize = 4000;

fn density_tol() -> Tol {
    Tol { abs: QUAD_ABS_TOL, rel: QUAD_REL_TOL }
}

/// Canonicalize `-0.0` to `+0.0` so sorting and merging treat them as equal.
fn canon_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn ensure_finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidInput(format!("{what} must be finite, got {x}")))
    }
}

/// A point `z = re + i*im` of the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    /// Real part `Re z`.
    pub re: f64,
    /// Imaginary part `Im z`.
    pub im: f64,
}

impl ComplexPoint {
    /// Construct a point (no validation; measure constructors validate).
    pub const fn new(re: f64, im: f64) -> Self {
        ComplexPoint { re, im }
    }

    /// Squared modulus `|z|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// Modulus `|z|`.
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `Re(1/z)`; infinite/NaN only when `z = 0`.
    pub fn recip_re(&self) -> f64 {
        self.re / self.norm_sqr()
    }

    /// `Im(1/z)`.
    pub fn recip_im(&self) -> f64 {
        -self.im / self.norm_sqr()
    }

    /// Mirror image across the imaginary axis, `z -> -conj(z)`.
    pub fn mirror(&self) -> Self {
        ComplexPoint { re: -self.re, im: self.im }
    }
}

/// Kernel genus selector: genus 0 is the plain half-plane Poisson kernel,
/// genus 1 subtracts the constant `Re(1/z) / pi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus {
    /// Plain half-plane Poisson kernel.
    Zero,
    /// Poisson kernel with the linear correction term.
    One,
}

/// A weighted point mass off the imaginary axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    /// Location in the plane (`location.re != 0` after normalization).
    pub location: ComplexPoint,
    /// Signed weight (finite, nonzero after normalization).
    pub weight: f64,
}

/// A weighted point mass at `i*y` on the imaginary axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAtom {
    /// Axis coordinate: the mass sits at `i*y`.
    pub y: f64,
    /// Signed weight.
    pub weight: f64,
}

/// Closed-form shape of one axis density term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TermShape {
    /// `coeff * [ (x/pi) / (x^2 + (y-v)^2) - {genus 1: (x/pi) / (x^2+v^2)} ]`
    /// — the sweep kernel of an atom at `x + i*v` with `x > 0`.
    Kernel {
        /// Source real part, strictly positive.
        x: f64,
        /// Source imaginary part.
        v: f64,
        /// Signed coefficient (the swept weight).
        coeff: f64,
        /// Kernel genus.
        genus: Genus,
    },
    /// Constant density `rate` on the term's support window.
    Uniform {
        /// Signed density per unit length.
        rate: f64,
    },
}

impl TermShape {
    fn eval(&self, y: f64) -> f64 {
        match *self {
            TermShape::Kernel { x, v, coeff, genus } => {
                let dy = y - v;
                let p = x / (std::f64::consts::PI * (x * x + dy * dy));
                match genus {
                    Genus::Zero => coeff * p,
                    Genus::One => coeff * (p - x / (std::f64::consts::PI * (x * x + v * v))),
                }
            }
            TermShape::Uniform { rate } => rate,
        }
    }

    /// Antiderivative of the density; valid for infinite `y` through the
    /// arctangent limits (genus-1 terms diverge linearly, which IEEE
    /// arithmetic represents as the correct signed infinity).
    fn primitive(&self, y: f64) -> f64 {
        match *self {
            TermShape::Kernel { x, v, coeff, genus } => {
                let base = coeff * ((y - v) / x).atan() / std::f64::consts::PI;
                match genus {
                    Genus::Zero => base,
                    Genus::One => {
                        base - coeff * x / (std::f64::consts::PI * (x * x + v * v)) * y
                    }
                }
            }
            TermShape::Uniform { rate } => rate * y,
        }
    }

    /// Antiderivative of `density(y) / y`, valid on intervals that do not
    /// contain `0` (genus-1 kernels are in fact regular at `0`, where the
    /// logarithms cancel analytically; the closed form below already uses the
    /// cancelled expression).
    fn primitive_over_y(&self, y: f64) -> f64 {
        match *self {
            TermShape::Kernel { x, v, coeff, genus } => {
                let n = x * x + v * v;
                let rho = x.hypot(y - v); // |z - iy|
                let angle = (v / n) * ((y - v) / x).atan();
                let value = match genus {
                    Genus::Zero => (x / n) * (y.abs() / rho).ln() + angle,
                    Genus::One => -(x / n) * rho.ln() + angle,
                };
                coeff * value / std::f64::consts::PI
            }
            TermShape::Uniform { rate } => rate * y.abs().ln(),
        }
    }

    /// Pointwise sign classification: `Some(1.0)` if the shape is nonnegative
    /// everywhere, `Some(-1.0)` if nonpositive, `None` if mixed.
    fn uniform_sign(&self) -> Option<f64> {
        match *self {
            TermShape::Kernel { coeff, genus, .. } => match genus {
                Genus::Zero => Some(coeff.signum()),
                // Genus-1 terms are positive near y = v and negative far out.
                Genus::One => None,
            },
            TermShape::Uniform { rate } => Some(rate.signum()),
        }
    }

    /// Limit of the density as `y -> +/-inf` (genus-0 kernels vanish; the
    /// constant parts survive).
    fn tail_rate(&self) -> f64 {
        match *self {
            TermShape::Kernel { x, v, coeff, genus } => match genus {
                Genus::Zero => 0.0,
                Genus::One => -coeff * x / (std::f64::consts::PI * (x * x + v * v)),
            },
            TermShape::Uniform { rate } => rate,
        }
    }
}

/// One symbolic density term together with its support window `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisTerm {
    pub(crate) shape: TermShape,
    pub(crate) lo: f64,
    pub(crate) hi: f64,
}

impl AxisTerm {
    /// Sweep-kernel term supported on the whole axis.
    pub fn kernel(x: f64, v: f64, coeff: f64, genus: Genus) -> Result<Self> {
        ensure_finite(x, "kernel term x")?;
        ensure_finite(v, "kernel term v")?;
        ensure_finite(coeff, "kernel term coefficient")?;
        if x <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "kernel term requires x > 0, got {x}"
            )));
        }
        Ok(AxisTerm {
            shape: TermShape::Kernel { x, v, coeff, genus },
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        })
    }

    /// Constant density `rate` on `[lo, hi]` (endpoints may be infinite).
    pub fn uniform(rate: f64, lo: f64, hi: f64) -> Result<Self> {
        ensure_finite(rate, "uniform term rate")?;
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidInput(format!(
                "uniform term window [{lo}, {hi}] is empty or NaN"
            )));
        }
        Ok(AxisTerm { shape: TermShape::Uniform { rate }, lo, hi })
    }

    /// The term's shape.
    pub fn shape(&self) -> &TermShape {
        &self.shape
    }

    /// Support window.
    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn coefficient(&self) -> f64 {
        match self.shape {
            TermShape::Kernel { coeff, .. } => coeff,
            TermShape::Uniform { rate } => rate,
        }
    }

    fn scaled(&self, k: f64) -> Self {
        let shape = match self.shape {
            TermShape::Kernel { x, v, coeff, genus } => {
                TermShape::Kernel { x, v, coeff: coeff * k, genus }
            }
            TermShape::Uniform { rate } => TermShape::Uniform { rate: rate * k },
        };
        AxisTerm { shape, ..*self }
    }

    /// Signed integral of the term over `[a, b]` (clamped to the support).
    fn signed_over(&self, a: f64, b: f64) -> f64 {
        let lo = a.max(self.lo);
        let hi = b.min(self.hi);
        if hi <= lo {
            return 0.0;
        }
        self.shape.primitive(hi) - self.shape.primitive(lo)
    }

    /// Signed integral of `density(y)/y` over `[a, b]` (same-sign interval).
    fn signed_over_y(&self, a: f64, b: f64) -> f64 {
        let lo = a.max(self.lo);
        let hi = b.min(self.hi);
        if hi <= lo {
            return 0.0;
        }
        self.shape.primitive_over_y(hi) - self.shape.primitive_over_y(lo)
    }
}

/// Sign restriction marker for Jordan parts of mixed-sign densities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignPart {
    /// Pointwise positive part `max(sum, 0)`.
    Positive,
    /// Pointwise negative part `max(-sum, 0)`.
    Negative,
}

/// The imaginary-axis component: symbolic density terms plus point atoms.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AxisCharge {
    terms: Vec<AxisTerm>,
    atoms: Vec<AxisAtom>,
    sign_part: Option<SignPart>,
}

impl AxisCharge {
    /// The empty axis charge.
    pub fn empty() -> Self {
        AxisCharge::default()
    }

    /// Build from raw parts, validating and canonicalizing.
    pub fn from_parts(terms: Vec<AxisTerm>, atoms: Vec<(f64, f64)>) -> Result<Self> {
        let mut clean_atoms = Vec::with_capacity(atoms.len());
        for (y, w) in atoms {
            ensure_finite(y, "axis atom position")?;
            ensure_finite(w, "axis atom weight")?;
            clean_atoms.push(AxisAtom { y: canon_zero(y), weight: w });
        }
        let mut charge = AxisCharge {
            terms: terms.into_iter().filter(|t| t.coefficient() != 0.0).collect(),
            atoms: clean_atoms,
            sign_part: None,
        };
        charge.normalize_atoms();
        Ok(charge)
    }

    fn normalize_atoms(&mut self) {
        self.atoms.sort_by(|p, q| p.y.total_cmp(&q.y));
        let mut merged: Vec<AxisAtom> = Vec::with_capacity(self.atoms.len());
        for a in self.atoms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.y == a.y => last.weight += a.weight,
                _ => merged.push(a),
            }
        }
        merged.retain(|a| a.weight != 0.0);
        self.atoms = merged;
    }

    /// Density terms.
    pub fn terms(&self) -> &[AxisTerm] {
        &self.terms
    }

    /// Axis atoms, sorted by position.
    pub fn atoms(&self) -> &[AxisAtom] {
        &self.atoms
    }

    /// Sign restriction, if this charge is a Jordan part of a mixed density.
    pub fn sign_part(&self) -> Option<SignPart> {
        self.sign_part
    }

    /// `true` when the charge carries no mass at all.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.atoms.is_empty()
    }

    /// Pointwise density at `y` (atoms excluded).
    pub fn density(&self, y: f64) -> f64 {
        let mut s = 0.0;
        for t in &self.terms {
            // Half-open support (lo, hi], matching every interval query.
            if y > t.lo && y <= t.hi {
                s += t.shape.eval(y);
            }
        }
        match self.sign_part {
            None => s,
            Some(SignPart::Positive) => s.max(0.0),
            Some(SignPart::Negative) => (-s).max(0.0),
        }
    }

    /// `Some(sign)` when every term is pointwise single-signed with the same
    /// sign, which unlocks closed-form total-variation integrals.
    fn density_uniform_sign(&self) -> Option<f64> {
        let mut sign = 0.0f64;
        for t in &self.terms {
            let s = t.shape.uniform_sign()?;
            if s == 0.0 {
                continue;
            }
            if sign == 0.0 {
                sign = s;
            } else if sign != s {
                return None;
            }
        }
        Some(sign)
    }

    /// Net density limit at `+inf` (resp. `-inf`) over terms whose support
    /// reaches that far. Nonzero limits make total-variation integrals over
    /// unbounded windows infinite.
    fn tail_rate(&self, positive_side: bool) -> f64 {
        self.terms
            .iter()
            .filter(|t| if positive_side { t.hi == f64::INFINITY } else { t.lo == f64::NEG_INFINITY })
            .map(|t| t.shape.tail_rate())
            .sum()
    }

    /// Support-window endpoints lying strictly inside `(a, b)`; used to split
    /// quadrature at density discontinuities.
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .terms
            .iter()
            .flat_map(|t| [t.lo, t.hi])
            .filter(|&p| p.is_finite() && p > a && p < b)
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    fn quad_piecewise<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        let mut edges = vec![a];
        edges.extend(self.breakpoints(a, b));
        edges.push(b);
        let mut total = 0.0;
        for pair in edges.windows(2) {
            total += quad::integrate(&f, pair[0], pair[1], density_tol(), QUAD_MAX_SEGMENTS)?.value;
        }
        Ok(total)
    }

    /// Signed density integral over `[a, b]` (atoms excluded). Closed form
    /// unless a sign restriction forces quadrature.
    fn density_signed(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        match self.sign_part {
            None => Ok(self.terms.iter().map(|t| t.signed_over(a, b)).sum()),
            Some(_) => {
                // The restricted density is nonnegative; decide divergence
                // from the tail limits before integrating.
                if let Some(v) = self.restricted_tail_divergence(a, b) {
                    return Ok(v);
                }
                self.quad_piecewise(|y| self.density(y), a, b)
            }
        }
    }

    /// Total-variation density integral over `[a, b]` (atoms excluded).
    fn density_abs(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        if self.sign_part.is_some() {
            // Sign-restricted densities are already nonnegative.
            return self.density_signed(a, b);
        }
        match self.density_uniform_sign() {
            Some(sign) => Ok(sign * self.terms.iter().map(|t| t.signed_over(a, b)).sum::<f64>()),
            None => {
                if (b == f64::INFINITY && self.tail_rate(true) != 0.0)
                    || (a == f64::NEG_INFINITY && self.tail_rate(false) != 0.0)
                {
                    return Ok(f64::INFINITY);
                }
                self.quad_piecewise(|y| self.density(y).abs(), a, b)
            }
        }
    }

    /// Divergence screen for sign-restricted densities on unbounded windows.
    fn restricted_tail_divergence(&self, a: f64, b: f64) -> Option<f64> {
        let part = self.sign_part?;
        let keeps = |rate: f64| match part {
            SignPart::Positive => rate > 0.0,
            SignPart::Negative => rate < 0.0,
        };
        if (b == f64::INFINITY && keeps(self.tail_rate(true)))
            || (a == f64::NEG_INFINITY && keeps(self.tail_rate(false)))
        {
            return Some(f64::INFINITY);
        }
        None
    }

    /// Signed integral of `density(y) / y` over `[a, b]`, which must not
    /// straddle or touch `0`.
    pub(crate) fn density_signed_over_y(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        if a <= 0.0 && b >= 0.0 {
            return Err(Error::InvalidInput(format!(
                "1/y-weighted integral over [{a}, {b}] touches the origin"
            )));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(
                "1/y-weighted integral requires finite endpoints".into(),
            ));
        }
        match self.sign_part {
            None => Ok(self.terms.iter().map(|t| t.signed_over_y(a, b)).sum()),
            Some(_) => self.quad_piecewise(|y| self.density(y) / y, a, b),
        }
    }

    /// Sum of atom weights over the half-open interval `(a, b]`.
    fn atom_sum(&self, a: f64, b: f64, absolute: bool) -> f64 {
        let lo = self.atoms.partition_point(|at| at.y <= a);
        let hi = self.atoms.partition_point(|at| at.y <= b);
        self.atoms[lo..hi]
            .iter()
            .map(|at| if absolute { at.weight.abs() } else { at.weight })
            .sum()
    }

    /// Signed mass of `(a, b]` (density plus atoms).
    pub fn signed_interval_mass(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.density_signed(a, b)? + self.atom_sum(a, b, false))
    }

    /// Total-variation mass of `(a, b]`.
    pub fn total_interval_mass(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.density_abs(a, b)? + self.atom_sum(a, b, true))
    }

    /// Distribution function `F` with `F(0) = 0`, `F(y2) - F(y1)` equal to
    /// the signed mass of `(y1, y2]`. Right-continuous, jump `w` at each atom.
    pub fn distribution(&self, y: f64) -> Result<f64> {
        if y.is_nan() {
            return Err(Error::InvalidInput("distribution point is NaN".into()));
        }
        if y >= 0.0 {
            self.signed_interval_mass(0.0, y)
        } else {
            Ok(-self.signed_interval_mass(y, 0.0)?)
        }
    }

    /// Total-variation masses of the nested windows `[center - r, center + r]`
    /// for ascending radii, computed shell-by-shell so the whole profile
    /// costs one pass.
    pub(crate) fn nested_window_masses(&self, center: f64, radii: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(radii.len());
        let mut acc = 0.0;
        let mut prev = 0.0;
        for (i, &r) in radii.iter().enumerate() {
            if i == 0 {
                acc = self.density_abs(center - r, center + r)?
                    + self.atoms_within(center, r);
            } else {
                acc += self.density_abs(center - r, center - prev)?
                    + self.density_abs(center + prev, center + r)?
                    + self.atoms_in_shell(center, prev, r);
            }
            prev = r;
            out.push(acc);
        }
        Ok(out)
    }

    fn atoms_within(&self, center: f64, r: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| (a.y - center).abs() <= r)
            .map(|a| a.weight.abs())
            .sum()
    }

    fn atoms_in_shell(&self, center: f64, r_in: f64, r_out: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| {
                let d = (a.y - center).abs();
                d > r_in && d <= r_out
            })
            .map(|a| a.weight.abs())
            .sum()
    }

    /// Pointwise positive part (density restricted to its positive values,
    /// atoms with positive weight).
    pub fn positive_part(&self) -> Self {
        self.jordan_part(SignPart::Positive)
    }

    /// Pointwise negative part, returned as a nonnegative charge.
    pub fn negative_part(&self) -> Self {
        self.jordan_part(SignPart::Negative)
    }

    fn jordan_part(&self, part: SignPart) -> Self {
        let atoms: Vec<AxisAtom> = self
            .atoms
            .iter()
            .filter_map(|a| match part {
                SignPart::Positive if a.weight > 0.0 => Some(*a),
                SignPart::Negative if a.weight < 0.0 => {
                    Some(AxisAtom { y: a.y, weight: -a.weight })
                }
                _ => None,
            })
            .collect();

        // Fast paths when the density sum is single-signed: the part is then
        // either the density itself (possibly negated) or empty, and stays in
        // closed form.
        let terms = if self.sign_part.is_some() {
            // A restricted density is nonnegative already.
            match part {
                SignPart::Positive => return AxisCharge { terms: self.terms.clone(), atoms, sign_part: self.sign_part },
                SignPart::Negative => Vec::new(),
            }
        } else {
            match self.density_uniform_sign() {
                Some(sign) if sign >= 0.0 => match part {
                    SignPart::Positive => self.terms.clone(),
                    SignPart::Negative => Vec::new(),
                },
                Some(_) => match part {
                    SignPart::Positive => Vec::new(),
                    SignPart::Negative => {
                        self.terms.iter().map(|t| t.scaled(-1.0)).collect()
                    }
                },
                None => {
                    return AxisCharge {
                        terms: self.terms.clone(),
                        atoms,
                        sign_part: Some(part),
                    }
                }
            }
        };
        AxisCharge { terms, atoms, sign_part: None }
    }

    /// Restrict to the axis trace of a region: density windows are clipped to
    /// the trace intervals, atoms are kept when the region contains them.
    fn restrict(&self, region: &RegionSpec) -> Self {
        let trace = region.axis_trace();
        let mut terms = Vec::new();
        for t in &self.terms {
            for &(lo, hi) in &trace {
                let nlo = t.lo.max(lo);
                let nhi = t.hi.min(hi);
                if nlo < nhi {
                    terms.push(AxisTerm { shape: t.shape, lo: nlo, hi: nhi });
                }
            }
        }
        let atoms = self
            .atoms
            .iter()
            .filter(|a| region.contains(ComplexPoint::new(0.0, a.y)))
            .copied()
            .collect();
        AxisCharge { terms, atoms, sign_part: self.sign_part }
    }

    /// Split into the part inside the open disk `|y| < r0` and the rest.
    fn split_by_open_disk(&self, r0: f64) -> (Self, Self) {
        let mut near_terms = Vec::new();
        let mut far_terms = Vec::new();
        for t in &self.terms {
            let (nlo, nhi) = (t.lo.max(-r0), t.hi.min(r0));
            if nlo < nhi {
                near_terms.push(AxisTerm { shape: t.shape, lo: nlo, hi: nhi });
            }
            let (llo, lhi) = (t.lo, t.hi.min(-r0));
            if llo < lhi {
                far_terms.push(AxisTerm { shape: t.shape, lo: llo, hi: lhi });
            }
            let (rlo, rhi) = (t.lo.max(r0), t.hi);
            if rlo < rhi {
                far_terms.push(AxisTerm { shape: t.shape, lo: rlo, hi: rhi });
            }
        }
        let (near_atoms, far_atoms) = self.atoms.iter().partition(|a| a.y.abs() < r0);
        (
            AxisCharge { terms: near_terms, atoms: near_atoms, sign_part: self.sign_part },
            AxisCharge { terms: far_terms, atoms: far_atoms, sign_part: self.sign_part },
        )
    }

    fn scaled(&self, k: f64) -> Result<Self> {
        if self.sign_part.is_some() && k < 0.0 {
            return Err(Error::InvalidInput(
                "cannot negate a sign-restricted axis density".into(),
            ));
        }
        if k == 0.0 {
            return Ok(AxisCharge::empty());
        }
        Ok(AxisCharge {
            terms: self.terms.iter().map(|t| t.scaled(k)).collect(),
            atoms: self
                .atoms
                .iter()
                .map(|a| AxisAtom { y: a.y, weight: a.weight * k })
                .collect(),
            sign_part: self.sign_part,
        })
    }

    pub(crate) fn merged_with(&self, other: &AxisCharge) -> Result<Self> {
        if self.sign_part.is_some() || other.sign_part.is_some() {
            return Err(Error::InvalidInput(
                "cannot merge sign-restricted axis densities symbolically".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().copied());
        let atoms = self
            .atoms
            .iter()
            .chain(other.atoms.iter())
            .map(|a| (a.y, a.weight))
            .collect();
        AxisCharge::from_parts(terms, atoms)
    }

    /// Append sweep terms (used by the balayage constructors).
    pub(crate) fn with_extra_terms(&self, extra: Vec<AxisTerm>) -> Result<Self> {
        if self.sign_part.is_some() && !extra.is_empty() {
            return Err(Error::InvalidInput(
                "cannot sweep onto a sign-restricted axis density".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend(extra.into_iter().filter(|t| t.coefficient() != 0.0));
        Ok(AxisCharge { terms, atoms: self.atoms.clone(), sign_part: self.sign_part })
    }
}

/// Accounting mode for mass queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariationMode {
    /// Signed mass `nu(R)`.
    Signed,
    /// Total variation `|nu|(R)`.
    Total,
}

/// Which coordinate axis a distribution function runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKind {
    /// Distribution of the restriction to the real axis.
    Real,
    /// Distribution of the restriction to the imaginary axis.
    Imaginary,
}

/// Geometric regions used for restriction and mass queries.
///
/// Membership is exact (closed/open boundaries distinguished); the axis trace
/// used for density clipping ignores endpoint openness, which only ever
/// differs on sets of measure zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegionSpec {
    /// `|z - center| <= radius`; `radius = inf` gives the whole plane.
    ClosedDisk {
        /// Disk center.
        center: ComplexPoint,
        /// Disk radius (nonnegative, possibly infinite).
        radius: f64,
    },
    /// `|z - center| < radius`.
    OpenDisk {
        /// Disk center.
        center: ComplexPoint,
        /// Disk radius.
        radius: f64,
    },
    /// Half-open annulus `r1 < |z| <= r2` centered at the origin.
    Annulus {
        /// Inner radius (excluded).
        r1: f64,
        /// Outer radius (included).
        r2: f64,
    },
    /// Open right half-plane `Re z > 0`.
    RightOpenHalfPlane,
    /// Closed left half-plane `Re z <= 0` (includes the axis).
    LeftClosedHalfPlane,
    /// `Re z <= a * |z|` — the complement of a sector around the positive
    /// real direction.
    Sector {
        /// Aperture parameter in `(0, 1)`.
        a: f64,
    },
}

impl RegionSpec {
    /// Closed disk; panics on NaN or negative radius (programming error).
    pub fn closed_disk(center: ComplexPoint, radius: f64) -> Self {
        assert!(radius >= 0.0, "disk radius must be nonnegative");
        RegionSpec::ClosedDisk { center, radius }
    }

    /// Open disk; panics on NaN or nonpositive radius.
    pub fn open_disk(center: ComplexPoint, radius: f64) -> Self {
        assert!(radius > 0.0, "open disk radius must be positive");
        RegionSpec::OpenDisk { center, radius }
    }

    /// Half-open annulus `r1 < |z| <= r2`.
    pub fn annulus(r1: f64, r2: f64) -> Self {
        assert!(r1 >= 0.0 && r2 > r1, "annulus radii must satisfy 0 <= r1 < r2");
        RegionSpec::Annulus { r1, r2 }
    }

    /// The whole plane (an infinite closed disk).
    pub fn whole_plane() -> Self {
        RegionSpec::ClosedDisk { center: ComplexPoint::new(0.0, 0.0), radius: f64::INFINITY }
    }

    /// Open right half-plane.
    pub fn right_open_half_plane() -> Self {
        RegionSpec::RightOpenHalfPlane
    }

    /// Closed left half-plane.
    pub fn left_closed_half_plane() -> Self {
        RegionSpec::LeftClosedHalfPlane
    }

    /// Sector-complement region `Re z <= a |z|`, `a in (0, 1)`.
    pub fn sector(a: f64) -> Self {
        assert!(a > 0.0 && a < 1.0, "sector parameter must lie in (0, 1)");
        RegionSpec::Sector { a }
    }

    /// Exact membership test.
    pub fn contains(&self, p: ComplexPoint) -> bool {
        match *self {
            RegionSpec::ClosedDisk { center, radius } => {
                let dx = p.re - center.re;
                let dy = p.im - center.im;
                dx * dx + dy * dy <= radius * radius
            }
            RegionSpec::OpenDisk { center, radius } => {
                let dx = p.re - center.re;
                let dy = p.im - center.im;
                dx * dx + dy * dy < radius * radius
            }
            RegionSpec::Annulus { r1, r2 } => {
                let n = p.norm_sqr();
                n > r1 * r1 && n <= r2 * r2
            }
            RegionSpec::RightOpenHalfPlane => p.re > 0.0,
            RegionSpec::LeftClosedHalfPlane => p.re <= 0.0,
            RegionSpec::Sector { a } => p.re <= a * p.modulus(),
        }
    }

    /// Intersection with the imaginary axis as closed intervals in `y`
    /// (endpoint openness dropped — it only matters for atoms, which use
    /// [`RegionSpec::contains`] directly).
    pub fn axis_trace(&self) -> Vec<(f64, f64)> {
        match *self {
            RegionSpec::ClosedDisk { center, radius } | RegionSpec::OpenDisk { center, radius } => {
                if radius == f64::INFINITY {
                    return vec![(f64::NEG_INFINITY, f64::INFINITY)];
                }
                let s2 = radius * radius - center.re * center.re;
                if s2 <= 0.0 {
                    return Vec::new();
                }
                let s = s2.sqrt();
                vec![(center.im - s, center.im + s)]
            }
            RegionSpec::Annulus { r1, r2 } => vec![(-r2, -r1), (r1, r2)],
            RegionSpec::RightOpenHalfPlane => Vec::new(),
            RegionSpec::LeftClosedHalfPlane | RegionSpec::Sector { .. } => {
                vec![(f64::NEG_INFINITY, f64::INFINITY)]
            }
        }
    }
}

/// A finite signed measure: planar atoms plus an axis charge.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChargeDistribution {
    atoms: Vec<Atom>,
    axis: AxisCharge,
}

impl ChargeDistribution {
    /// The zero measure.
    pub fn empty() -> Self {
        ChargeDistribution::default()
    }

    /// Build from `(re, im, weight)` triples. Atoms on the imaginary axis are
    /// moved into the axis component; duplicates merge; zero weights drop.
    pub fn from_atoms<I: IntoIterator<Item = (f64, f64, f64)>>(atoms: I) -> Result<Self> {
        let mut planar = Vec::new();
        let mut on_axis = Vec::new();
        for (re, im, w) in atoms {
            ensure_finite(re, "atom re")?;
            ensure_finite(im, "atom im")?;
            ensure_finite(w, "atom weight")?;
            let (re, im) = (canon_zero(re), canon_zero(im));
            if re == 0.0 {
                on_axis.push((im, w));
            } else {
                planar.push(Atom { location: ComplexPoint::new(re, im), weight: w });
            }
        }
        Self::from_parts(planar, AxisCharge::from_parts(Vec::new(), on_axis)?)
    }

    /// Build from validated parts; normalizes the planar atom list and moves
    /// any `Re z = 0` stragglers into the axis component.
    pub fn from_parts(atoms: Vec<Atom>, axis: AxisCharge) -> Result<Self> {
        let mut planar = Vec::new();
        let mut extra_axis = Vec::new();
        for a in atoms {
            ensure_finite(a.location.re, "atom re")?;
            ensure_finite(a.location.im, "atom im")?;
            ensure_finite(a.weight, "atom weight")?;
            let re = canon_zero(a.location.re);
            let im = canon_zero(a.location.im);
            if re == 0.0 {
                extra_axis.push((im, a.weight));
            } else {
                planar.push(Atom { location: ComplexPoint::new(re, im), weight: a.weight });
            }
        }
        planar.sort_by(|p, q| {
            p.location
                .re
                .total_cmp(&q.location.re)
                .then(p.location.im.total_cmp(&q.location.im))
        });
        let mut merged: Vec<Atom> = Vec::with_capacity(planar.len());
        for a in planar {
            match merged.last_mut() {
                Some(last) if last.location == a.location => last.weight += a.weight,
                _ => merged.push(a),
            }
        }
        merged.retain(|a| a.weight != 0.0);

        let axis = if extra_axis.is_empty() {
            axis
        } else {
            let mut atoms: Vec<(f64, f64)> =
                axis.atoms.iter().map(|a| (a.y, a.weight)).collect();
            atoms.extend(extra_axis);
            let mut rebuilt = AxisCharge::from_parts(axis.terms.clone(), atoms)?;
            rebuilt.sign_part = axis.sign_part;
            rebuilt
        };
        Ok(ChargeDistribution { atoms: merged, axis })
    }

    /// Planar atoms (all with `Re z != 0`), sorted by location.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// The imaginary-axis component.
    pub fn axis(&self) -> &AxisCharge {
        &self.axis
    }

    /// `true` when the measure is identically zero.
    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.axis.is_empty()
    }

    /// Jordan decomposition `nu = pos - neg` into nonnegative measures.
    pub fn jordan_parts(&self) -> (Self, Self) {
        let pos_atoms = self.atoms.iter().filter(|a| a.weight > 0.0).copied().collect();
        let neg_atoms = self
            .atoms
            .iter()
            .filter(|a| a.weight < 0.0)
            .map(|a| Atom { location: a.location, weight: -a.weight })
            .collect();
        (
            ChargeDistribution { atoms: pos_atoms, axis: self.axis.positive_part() },
            ChargeDistribution { atoms: neg_atoms, axis: self.axis.negative_part() },
        )
    }

    /// Restriction `nu⌊R`: atoms kept when `R` contains them, axis density
    /// clipped to the axis trace of `R`.
    pub fn restrict(&self, region: &RegionSpec) -> Self {
        ChargeDistribution {
            atoms: self
                .atoms
                .iter()
                .filter(|a| region.contains(a.location))
                .copied()
                .collect(),
            axis: self.axis.restrict(region),
        }
    }

    /// Split into (inside the open disk `|z| < r0`, the rest). The two parts
    /// add back to the original measure exactly.
    pub fn split_by_open_disk(&self, r0: f64) -> (Self, Self) {
        let (near_atoms, far_atoms): (Vec<Atom>, Vec<Atom>) = self
            .atoms
            .iter()
            .partition(|a| a.location.norm_sqr() < r0 * r0);
        let (near_axis, far_axis) = self.axis.split_by_open_disk(r0);
        (
            ChargeDistribution { atoms: near_atoms, axis: near_axis },
            ChargeDistribution { atoms: far_atoms, axis: far_axis },
        )
    }

    /// Signed or total-variation mass of a region.
    pub fn variation_mass(&self, region: &RegionSpec, mode: VariationMode) -> Result<f64> {
        let atom_part: f64 = self
            .atoms
            .iter()
            .filter(|a| region.contains(a.location))
            .map(|a| match mode {
                VariationMode::Signed => a.weight,
                VariationMode::Total => a.weight.abs(),
            })
            .sum();
        let axis_atom_part: f64 = self
            .axis
            .atoms
            .iter()
            .filter(|a| region.contains(ComplexPoint::new(0.0, a.y)))
            .map(|a| match mode {
                VariationMode::Signed => a.weight,
                VariationMode::Total => a.weight.abs(),
            })
            .sum();
        let mut density_part = 0.0;
        for (lo, hi) in region.axis_trace() {
            density_part += match mode {
                VariationMode::Signed => self.axis.density_signed(lo, hi)?,
                VariationMode::Total => self.axis.density_abs(lo, hi)?,
            };
        }
        Ok(atom_part + axis_atom_part + density_part)
    }

    /// Radial counting function: mass of the closed disk of radius `r`
    /// around `center`.
    pub fn radial_counting(
        &self,
        center: ComplexPoint,
        r: f64,
        mode: VariationMode,
    ) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "radial counting radius must be nonnegative, got {r}"
            )));
        }
        self.variation_mass(&RegionSpec::closed_disk(center, r), mode)
    }

    /// Distribution function of the restriction to one coordinate axis,
    /// normalized to `F(0) = 0` and right-continuous.
    pub fn axis_distribution(&self, axis: AxisKind, y: f64) -> Result<f64> {
        if y.is_nan() {
            return Err(Error::InvalidInput("distribution point is NaN".into()));
        }
        match axis {
            AxisKind::Imaginary => self.axis.distribution(y),
            AxisKind::Real => {
                // Planar atoms with Im z = 0, plus the axis atom at the
                // origin (the single point shared by both axes).
                let mass_in = |a: f64, b: f64| -> f64 {
                    let mut m: f64 = self
                        .atoms
                        .iter()
                        .filter(|at| at.location.im == 0.0 && at.location.re > a && at.location.re <= b)
                        .map(|at| at.weight)
                        .sum();
                    if a < 0.0 && b >= 0.0 {
                        m += self
                            .axis
                            .atoms
                            .iter()
                            .filter(|at| at.y == 0.0)
                            .map(|at| at.weight)
                            .sum::<f64>();
                    }
                    m
                };
                Ok(if y >= 0.0 { mass_in(0.0, y) } else { -mass_in(y, 0.0) })
            }
        }
    }

    /// `true` when every planar atom satisfies `Re z > a |z|` strictly and
    /// the axis carries no mass at all. Panics unless `a` lies in `(0, 1)`.
    pub fn sector_clear(&self, a: f64) -> bool {
        assert!(a > 0.0 && a < 1.0, "sector parameter must lie in (0, 1)");
        self.axis.is_empty()
            && self
                .atoms
                .iter()
                .all(|at| at.location.re > a * at.location.modulus())
    }

    /// Mirror image across the imaginary axis (`z -> -conj(z)`); the axis
    /// component is pointwise fixed.
    pub fn reflect_across_imaginary_axis(&self) -> Self {
        ChargeDistribution {
            atoms: {
                let mut v: Vec<Atom> = self
                    .atoms
                    .iter()
                    .map(|a| Atom { location: a.location.mirror(), weight: a.weight })
                    .collect();
                v.sort_by(|p, q| {
                    p.location
                        .re
                        .total_cmp(&q.location.re)
                        .then(p.location.im.total_cmp(&q.location.im))
                });
                v
            },
            axis: self.axis.clone(),
        }
    }

    /// Scalar multiple `k * nu`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        ensure_finite(k, "scale factor")?;
        if k == 0.0 {
            return Ok(ChargeDistribution::empty());
        }
        Ok(ChargeDistribution {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { location: a.location, weight: a.weight * k })
                .collect(),
            axis: self.axis.scaled(k)?,
        })
    }

    /// Sum `nu + other` (canonicalized).
    pub fn merged(&self, other: &Self) -> Result<Self> {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().copied());
        Self::from_parts(atoms, self.axis.merged_with(&other.axis)?)
    }

    /// Total variation over the whole plane.
    pub fn total_variation(&self) -> Result<f64> {
        self.variation_mass(&RegionSpec::whole_plane(), VariationMode::Total)
    }
}

// ---------------------------------------------------------------------------
// JSON interchange format
// ---------------------------------------------------------------------------

/// One planar atom record in the JSON interchange format.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct AtomRecord {
    /// Real part.
    pub re: f64,
    /// Imaginary part.
    pub im: f64,
    /// Signed weight.
    pub w: f64,
}

/// One axis atom record in the JSON interchange format.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct AxisAtomRecord {
    /// Axis coordinate (the mass sits at `i*y`).
    pub y: f64,
    /// Signed weight.
    pub w: f64,
}

/// On-disk measure description:
/// `{"atoms": [{re, im, w}, ...], "axis_atoms": [{y, w}, ...]}`.
///
/// The optional `genus1_eligible` flag asserts the measure keeps clear of the
/// origin; loading verifies the assertion.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct MeasureFile {
    /// Planar atoms.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<AtomRecord>,
    /// Atoms on the imaginary axis.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub axis_atoms: Vec<AxisAtomRecord>,
    /// Declares that no mass sits at the origin (verified on load).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub genus1_eligible: bool,
}

impl MeasureFile {
    /// Parse the JSON text (strict: unknown fields are fine, malformed
    /// numbers are not — JSON has no NaN/inf literals).
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("measure JSON: {e}")))
    }

    /// Validate and convert into a [`ChargeDistribution`]. Rejects non-finite
    /// numbers, explicit zero weights, and (when flagged `genus1_eligible`)
    /// mass at the origin.
    pub fn to_distribution(&self) -> Result<ChargeDistribution> {
        for a in &self.atoms {
            if !(a.re.is_finite() && a.im.is_finite() && a.w.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "non-finite atom ({}, {}, {})",
                    a.re, a.im, a.w
                )));
            }
            if a.w == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "atom at ({}, {}) has zero weight",
                    a.re, a.im
                )));
            }
        }
        for a in &self.axis_atoms {
            if !(a.y.is_finite() && a.w.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "non-finite axis atom ({}, {})",
                    a.y, a.w
                )));
            }
            if a.w == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "axis atom at {} has zero weight",
                    a.y
                )));
            }
        }
        if self.genus1_eligible {
            let origin = self.atoms.iter().any(|a| a.re == 0.0 && a.im == 0.0)
                || self.axis_atoms.iter().any(|a| a.y == 0.0);
            if origin {
                return Err(Error::InvalidInput(
                    "measure flagged genus1_eligible but carries mass at the origin".into(),
                ));
            }
        }
        let planar = self.atoms.iter().map(|a| (a.re, a.im, a.w));
        let axis = self.axis_atoms.iter().map(|a| (0.0, a.y, a.w));
        ChargeDistribution::from_atoms(planar.chain(axis))
    }

    /// Canonical record for a distribution (sorted, merged, axis atoms in the
    /// `axis_atoms` field). Fails if the distribution carries density terms,
    /// which have no JSON form.
    pub fn from_distribution(mu: &ChargeDistribution, genus1_eligible: bool) -> Result<Self> {
        if !mu.axis().terms().is_empty() {
            return Err(Error::InvalidInput(
                "axis densities have no JSON representation; export them as CSV".into(),
            ));
        }
        Ok(MeasureFile {
            atoms: mu
                .atoms()
                .iter()
                .map(|a| AtomRecord { re: a.location.re, im: a.location.im, w: a.weight })
                .collect(),
            axis_atoms: mu
                .axis()
                .atoms()
                .iter()
                .map(|a| AxisAtomRecord { y: a.y, w: a.weight })
                .collect(),
            genus1_eligible,
        })
    }

    /// Deterministic pretty-printed JSON with a trailing newline.
    pub fn canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("measure serialization");
        s.push('\n');
        s
    }
}
