//! Geometry of the Siegel upper half-space `𝒰ⁿ = {z ∈ C^{n+1} : Im z_{n+1} > |z′|²}`.
//!
//! Points carry their defining function alongside the coordinates. For a
//! [`SiegelPoint`] this is the height `Im z_{n+1} - |z′|²`; for a [`BallPoint`]
//! it is the gap `1 - |ξ|²`. Both are kept exact through the maps that have a
//! closed form for them, so points very close to the boundary do not lose
//! their distance to it to cancellation.

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{domain, Error, Result};

pub type Coords = SmallVec<[Complex64; 4]>;

/// Heights within this distance of zero count as boundary points.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Minimum admissible `|1 + ξ_{n+1}|` for the Cayley transform.
pub const SOUTH_POLE_GUARD: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn dot_conj(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn norm_sqr(u: &[Complex64]) -> f64 {
    u.iter().map(|a| a.norm_sqr()).sum()
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A point of `C^{n+1}` in the closure of `𝒰ⁿ`, tagged with its height.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    coords: Coords,
    height: f64,
}

impl SiegelPoint {
    /// Builds a point from its `n + 1` coordinates; the height is computed.
    ///
    /// # Panics
    /// If `coords` is empty.
    pub fn new(coords: impl Into<Coords>) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty(), "a Siegel point needs at least one coordinate");
        let n = coords.len() - 1;
        let height = coords[n].im - norm_sqr(&coords[..n]);
        Self { coords, height }
    }

    /// Builds a point whose height is already known to higher accuracy than
    /// `Im z_{n+1} - |z′|²` would give.
    pub fn with_height(coords: impl Into<Coords>, height: f64) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty(), "a Siegel point needs at least one coordinate");
        Self { coords, height }
    }

    /// The base point `𝐢 = (0′, i)`.
    pub fn basepoint(n: usize) -> Self {
        let mut coords: Coords = SmallVec::from_elem(Complex64::new(0.0, 0.0), n + 1);
        coords[n] = I;
        Self { coords, height: 1.0 }
    }

    /// The boundary point `(0′, 0)`.
    pub fn origin(n: usize) -> Self {
        Self {
            coords: SmallVec::from_elem(Complex64::new(0.0, 0.0), n + 1),
            height: 0.0,
        }
    }

    /// Boundary point `(ζ, t + i|ζ|²)`, the image of the origin under `[ζ, t]`.
    pub fn boundary(zeta: &[Complex64], t: f64) -> Self {
        let mut coords: Coords = zeta.iter().copied().collect();
        coords.push(Complex64::new(t, norm_sqr(zeta)));
        Self { coords, height: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn z_prime(&self) -> &[Complex64] {
        &self.coords[..self.dim()]
    }

    pub fn last(&self) -> Complex64 {
        self.coords[self.dim()]
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn is_interior(&self) -> bool {
        self.height > BOUNDARY_TOL
    }

    pub fn is_boundary(&self) -> bool {
        self.height.abs() <= BOUNDARY_TOL
    }
}

/// An element `[ζ, t]` of the Heisenberg group `Cⁿ × R`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergElement {
    pub zeta: Coords,
    pub t: f64,
}

impl HeisenbergElement {
    pub fn new(zeta: impl Into<Coords>, t: f64) -> Self {
        Self {
            zeta: zeta.into(),
            t,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            zeta: SmallVec::from_elem(Complex64::new(0.0, 0.0), n),
            t: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.zeta.len()
    }
}

/// A point of the closed unit ball of `C^{n+1}`, tagged with `1 - |ξ|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Coords,
    gap: f64,
}

impl BallPoint {
    pub fn new(coords: impl Into<Coords>) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty(), "a ball point needs at least one coordinate");
        let gap = 1.0 - norm_sqr(&coords);
        Self { coords, gap }
    }

    /// Builds a point whose gap `1 - |ξ|²` is known more accurately than the
    /// coordinates alone determine it.
    pub fn with_gap(coords: impl Into<Coords>, gap: f64) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty(), "a ball point needs at least one coordinate");
        Self { coords, gap }
    }

    pub fn origin(n: usize) -> Self {
        Self {
            coords: SmallVec::from_elem(Complex64::new(0.0, 0.0), n + 1),
            gap: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn last(&self) -> Complex64 {
        self.coords[self.dim()]
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.coords)
    }

    /// `ξ · conj(η)`.
    pub fn dot(&self, other: &BallPoint) -> Complex64 {
        dot_conj(&self.coords, &other.coords)
    }
}

/// `ρ(z, w) = (i/2)(conj(w_{n+1}) - z_{n+1}) - z′·conj(w′)`.
pub fn rho(z: &SiegelPoint, w: &SiegelPoint) -> Result<Complex64> {
    same_dim(z.dim(), w.dim())?;
    Ok(rho_unchecked(z, w))
}

pub(crate) fn rho_unchecked(z: &SiegelPoint, w: &SiegelPoint) -> Complex64 {
    I * 0.5 * (w.last().conj() - z.last()) - dot_conj(z.z_prime(), w.z_prime())
}

/// `ρ(z, 𝐢) = (1 - i z_{n+1}) / 2`.
pub fn rho_basepoint(z: &SiegelPoint) -> Complex64 {
    (ONE - I * z.last()) * 0.5
}

/// The affine action `[ζ, t](z) = (z′ + ζ, z_{n+1} + t + 2i z′·conj(ζ) + i|ζ|²)`.
pub fn heis_apply(h: &HeisenbergElement, z: &SiegelPoint) -> Result<SiegelPoint> {
    same_dim(z.dim(), h.dim())?;
    let n = z.dim();
    let mut coords: Coords = z.z_prime().iter().zip(&h.zeta).map(|(a, b)| a + b).collect();
    let last = z.last()
        + h.t
        + I * 2.0 * dot_conj(z.z_prime(), &h.zeta)
        + I * norm_sqr(&h.zeta);
    coords.push(last);
    debug_assert_eq!(coords.len(), n + 1);
    Ok(SiegelPoint::with_height(coords, z.height))
}

/// Group law `[ζ, t]·[η, s] = [ζ + η, t + s + 2 Im(ζ·conj(η))]`.
pub fn heis_compose(h1: &HeisenbergElement, h2: &HeisenbergElement) -> Result<HeisenbergElement> {
    same_dim(h1.dim(), h2.dim())?;
    let zeta: Coords = h1.zeta.iter().zip(&h2.zeta).map(|(a, b)| a + b).collect();
    let t = h1.t + h2.t + 2.0 * dot_conj(&h1.zeta, &h2.zeta).im;
    Ok(HeisenbergElement { zeta, t })
}

pub fn heis_inverse(h: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement {
        zeta: h.zeta.iter().map(|z| -z).collect(),
        t: -h.t,
    }
}

fn south_pole_check(xi: &BallPoint) -> Result<Complex64> {
    let d = ONE + xi.last();
    if d.norm() < SOUTH_POLE_GUARD {
        return Err(Error::SouthPole(format!("{:?}", xi.coords())));
    }
    Ok(d)
}

/// `Φ(ξ) = (ξ′/(1+ξ_{n+1}), i(1-ξ_{n+1})/(1+ξ_{n+1}))`, ball to Siegel domain.
pub fn cayley_phi(xi: &BallPoint) -> Result<SiegelPoint> {
    let d = south_pole_check(xi)?;
    let n = xi.dim();
    let mut coords: Coords = xi.coords()[..n].iter().map(|c| c / d).collect();
    coords.push(I * (ONE - xi.last()) / d);
    let height = xi.gap() / d.norm_sqr();
    Ok(SiegelPoint::with_height(coords, height))
}

/// `Ψ(z) = (2i z′/(i+z_{n+1}), (i-z_{n+1})/(i+z_{n+1}))`, the inverse of `Φ`.
pub fn cayley_psi(z: &SiegelPoint) -> Result<BallPoint> {
    if z.height() < -BOUNDARY_TOL {
        return Err(domain("cayley_psi", format!("height {} is negative", z.height())));
    }
    let n = z.dim();
    let d = I + z.last();
    let mut coords: Coords = z.z_prime().iter().map(|c| I * 2.0 * c / d).collect();
    coords.push((I - z.last()) / d);
    let gap = z.height() / rho_basepoint(z).norm_sqr();
    debug_assert_eq!(coords.len(), n + 1);
    Ok(BallPoint::with_gap(coords, gap))
}

/// Real Jacobian of `Φ`: `4 / |1 + ξ_{n+1}|^{2(n+2)}`.
pub fn jac_phi(xi: &BallPoint) -> Result<f64> {
    let d = south_pole_check(xi)?;
    Ok(4.0 / d.norm_sqr().powi(xi.dim() as i32 + 2))
}

/// Real Jacobian of `Ψ`: `1 / (4 |ρ(z, 𝐢)|^{2(n+2)})`.
pub fn jac_psi(z: &SiegelPoint) -> Result<f64> {
    if z.height() < -BOUNDARY_TOL {
        return Err(domain("jac_psi", format!("height {} is negative", z.height())));
    }
    Ok(0.25 / rho_basepoint(z).norm_sqr().powi(z.dim() as i32 + 2))
}

/// The involutive automorphism `φ_ξ` of the ball, evaluated at `η`.
///
/// `φ_0` is taken to be `-id`.
pub fn mobius(xi: &BallPoint, eta: &BallPoint) -> Result<BallPoint> {
    same_dim(xi.dim(), eta.dim())?;
    if !(xi.gap() > 0.0) {
        return Err(domain("mobius", "the centre must lie in the open ball"));
    }
    let r2 = xi.norm_sqr();
    let inner = eta.dot(xi);
    let s = xi.gap().sqrt();
    let denom = ONE - inner;
    let coords: Coords = if r2 == 0.0 {
        eta.coords().iter().map(|e| -e).collect()
    } else {
        let scale = inner / r2;
        xi.coords()
            .iter()
            .zip(eta.coords())
            .map(|(x, e)| {
                let p = x * scale;
                (x - p - (e - p) * s) / denom
            })
            .collect()
    };
    let gap = xi.gap() * eta.gap() / denom.norm_sqr();
    Ok(BallPoint::with_gap(coords, gap))
}
