//! Construction of harmonic disk surfaces.
//!
//! A [`HarmonicSurface`] is a map from the open unit disk into `R^n` that
//! is harmonic componentwise, together with exact evaluators for its value
//! and first/second partials. Four sources exist:
//!
//! * boundary-driven — the Poisson extension of a [`BoundaryMap`];
//!   evaluators delegate to the [`crate::poisson`] module;
//! * closed-form — caller-supplied component functions with exact partials
//!   (the tilted-disk family and test surfaces live here);
//! * minimal — real parts of analytic power series `a_1, …, a_n` whose
//!   derivatives satisfy `Σ (a_j')² = 0`, the conformality constraint of a
//!   minimal surface;
//! * derived — a rescaling `z ↦ τ(r₀·z)` or the regular lift
//!   `z ↦ (τ(r₀ z), εx, εy)` into two extra dimensions.
//!
//! Surfaces are immutable and their evaluators are pure, so concurrent
//! evaluation needs no coordination.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::{BoundaryMap, TrigSeries};
use crate::error::{Error, Result};
use crate::poisson::{self, DiskPoint};
use crate::quadrature::{self, QuadratureConfig};
use crate::vecn;

pub type ComponentFn = Arc<dyn Fn(f64, f64) -> Vec<f64> + Send + Sync>;

/// A surface given by explicit component functions and their exact
/// partials. Bypasses quadrature entirely, so it doubles as the oracle
/// side in cross-checks against integrated paths.
#[derive(Clone)]
pub struct ClosedFormSurface {
    pub dim: usize,
    pub value: ComponentFn,
    pub dx: ComponentFn,
    pub dy: ComponentFn,
    pub dxx: ComponentFn,
    pub dxy: ComponentFn,
    pub dyy: ComponentFn,
}

impl std::fmt::Debug for ClosedFormSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClosedFormSurface")
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

/// Power-series data for a minimal surface: complex coefficients of
/// analytic `a_j`, components `p_j = Re a_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData {
    /// `coeffs[j][k]` multiplies `z^k` in `a_j`.
    coeffs: Vec<Vec<Complex64>>,
}

impl WeierstrassData {
    pub fn new(coeffs: Vec<Vec<Complex64>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("no coefficient lists".into()));
        }
        for c in &coeffs {
            if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidInput("non-finite series coefficient".into()));
            }
        }
        Ok(WeierstrassData { coeffs })
    }

    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    fn eval(&self, j: usize, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs[j].iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    fn eval_derivative(&self, j: usize, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs[j].iter().enumerate().rev() {
            if k < 1 {
                break;
            }
            acc = acc * z + k as f64 * c;
        }
        acc
    }

    fn eval_second(&self, j: usize, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs[j].iter().enumerate().rev() {
            if k < 2 {
                break;
            }
            acc = acc * z + (k * (k - 1)) as f64 * c;
        }
        acc
    }

    /// `|Σ_j a_j'(z)²|`, zero exactly when the parametrization is conformal.
    pub fn conformality_residual(&self, z: Complex64) -> f64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..self.dimension() {
            let d = self.eval_derivative(j, z);
            sum += d * d;
        }
        sum.norm()
    }

    /// Maximum residual over a fixed 64-point sample of the disk.
    pub fn max_conformality_residual(&self) -> f64 {
        let mut max = 0.0f64;
        for i in 0..8 {
            let r = 0.1 + 0.11 * i as f64;
            for j in 0..8 {
                let th = quadrature::TAU * j as f64 / 8.0 + 0.05;
                max = max.max(self.conformality_residual(Complex64::from_polar(r, th)));
            }
        }
        max
    }
}

#[derive(Debug, Clone)]
enum SurfaceSource {
    Boundary(BoundaryMap),
    Closed(ClosedFormSurface),
    Weierstrass(WeierstrassData),
    Rescaled {
        inner: Box<HarmonicSurface>,
        factor: f64,
    },
    Lifted {
        inner: Box<HarmonicSurface>,
        eps: f64,
        shrink: f64,
    },
}

/// A harmonic map of the open unit disk into `R^n` with exact pointwise
/// evaluators. See the module docs for the available sources.
#[derive(Debug, Clone)]
pub struct HarmonicSurface {
    dim: usize,
    source: SurfaceSource,
    quadrature: QuadratureConfig,
}

impl HarmonicSurface {
    /// Poisson extension of boundary data; evaluators delegate to
    /// [`crate::poisson`].
    pub fn from_boundary(phi: BoundaryMap, q: QuadratureConfig) -> Result<Self> {
        q.check()?;
        Ok(HarmonicSurface {
            dim: phi.dimension(),
            source: SurfaceSource::Boundary(phi),
            quadrature: q,
        })
    }

    /// Wraps caller-supplied closed-form evaluators.
    pub fn closed_form(cf: ClosedFormSurface, q: QuadratureConfig) -> Result<Self> {
        q.check()?;
        Ok(HarmonicSurface {
            dim: cf.dim,
            source: SurfaceSource::Closed(cf),
            quadrature: q,
        })
    }

    /// Minimal surface `p_j = Re a_j` from power-series data. Rejects data
    /// whose conformality residual exceeds `1e-10` anywhere on a 64-point
    /// sample.
    pub fn minimal_from_weierstrass(w: WeierstrassData, q: QuadratureConfig) -> Result<Self> {
        q.check()?;
        if w.dimension() < 3 {
            return Err(Error::UnsupportedDimension {
                dim: w.dimension(),
                context: "minimal surfaces need n >= 3 components".into(),
            });
        }
        let residual = w.max_conformality_residual();
        if residual > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "coefficient data is not conformal: max residual {residual:.3e}"
            )));
        }
        Ok(HarmonicSurface {
            dim: w.dimension(),
            source: SurfaceSource::Weierstrass(w),
            quadrature: q,
        })
    }

    /// The plane `τ(x, y) = (x, y, m(x+y))`: flat for every slope, with
    /// constant Jacobian `sqrt(1 + 2m²)`.
    pub fn tilted_disk(m: f64) -> Result<Self> {
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::InvalidInput(format!(
                "tilted disk slope must be a nonnegative finite number, got {m}"
            )));
        }
        let zero3: ComponentFn = Arc::new(|_, _| vec![0.0, 0.0, 0.0]);
        let cf = ClosedFormSurface {
            dim: 3,
            value: Arc::new(move |x, y| vec![x, y, m * (x + y)]),
            dx: Arc::new(move |_, _| vec![1.0, 0.0, m]),
            dy: Arc::new(move |_, _| vec![0.0, 1.0, m]),
            dxx: zero3.clone(),
            dxy: zero3.clone(),
            dyy: zero3,
        };
        HarmonicSurface::closed_form(cf, QuadratureConfig::default())
    }

    /// The reparametrization `z ↦ τ(factor·z)`, `0 < factor < 1`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor < 1.0) {
            return Err(Error::InvalidInput(format!(
                "rescale factor must lie in (0, 1), got {factor}"
            )));
        }
        Ok(HarmonicSurface {
            dim: self.dim,
            source: SurfaceSource::Rescaled {
                inner: Box::new(self.clone()),
                factor,
            },
            quadrature: self.quadrature.clone(),
        })
    }

    /// The regular perturbation `z ↦ (τ(shrink·z), ε·x, ε·y)` in `R^{n+2}`.
    /// Its first fundamental form is bounded below by `ε²`-terms, so the
    /// lift never degenerates whatever branch points the inner surface has.
    pub fn perturb_lift(&self, eps: f64, shrink: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidInput(format!(
                "lift perturbation must be positive, got {eps}"
            )));
        }
        if !(shrink > 0.0 && shrink < 1.0) {
            return Err(Error::InvalidInput(format!(
                "lift shrink factor must lie in (0, 1), got {shrink}"
            )));
        }
        Ok(HarmonicSurface {
            dim: self.dim + 2,
            source: SurfaceSource::Lifted {
                inner: Box::new(self.clone()),
                eps,
                shrink,
            },
            quadrature: self.quadrature.clone(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn quadrature(&self) -> &QuadratureConfig {
        &self.quadrature
    }

    /// Boundary data when the surface is boundary-driven.
    pub fn boundary(&self) -> Option<&BoundaryMap> {
        match &self.source {
            SurfaceSource::Boundary(phi) => Some(phi),
            _ => None,
        }
    }

    pub fn value(&self, z: DiskPoint) -> Vec<f64> {
        self.value_xy(z.x(), z.y())
    }

    /// `(τ_x, τ_y)` at `z`.
    pub fn partials(&self, z: DiskPoint) -> (Vec<f64>, Vec<f64>) {
        self.partials_xy(z.x(), z.y())
    }

    /// `(τ_xx, τ_xy, τ_yy)` at `z`.
    pub fn second_partials(&self, z: DiskPoint) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        self.second_partials_xy(z.x(), z.y())
    }

    /// Angular derivative `∂_θ τ = −y·τ_x + x·τ_y`.
    pub fn d_theta(&self, z: DiskPoint) -> Vec<f64> {
        let (x, y) = (z.x(), z.y());
        let (fx, fy) = self.partials_xy(x, y);
        fx.iter().zip(&fy).map(|(a, b)| -y * a + x * b).collect()
    }

    /// Radial derivative `∂_r τ = cos θ·τ_x + sin θ·τ_y`.
    pub fn d_r(&self, z: DiskPoint) -> Vec<f64> {
        let (c, s) = (z.theta().cos(), z.theta().sin());
        let (fx, fy) = self.partials_xy(z.x(), z.y());
        fx.iter().zip(&fy).map(|(a, b)| c * a + s * b).collect()
    }

    pub(crate) fn value_xy(&self, x: f64, y: f64) -> Vec<f64> {
        match &self.source {
            SurfaceSource::Boundary(phi) => poisson::boundary_value_xy(phi, x, y),
            SurfaceSource::Closed(cf) => (cf.value)(x, y),
            SurfaceSource::Weierstrass(w) => {
                let z = Complex64::new(x, y);
                (0..w.dimension()).map(|j| w.eval(j, z).re).collect()
            }
            SurfaceSource::Rescaled { inner, factor } => inner.value_xy(factor * x, factor * y),
            SurfaceSource::Lifted { inner, eps, shrink } => {
                let mut v = inner.value_xy(shrink * x, shrink * y);
                v.push(eps * x);
                v.push(eps * y);
                v
            }
        }
    }

    pub(crate) fn partials_xy(&self, x: f64, y: f64) -> (Vec<f64>, Vec<f64>) {
        match &self.source {
            SurfaceSource::Boundary(phi) => poisson::boundary_partials_xy(phi, x, y),
            SurfaceSource::Closed(cf) => ((cf.dx)(x, y), (cf.dy)(x, y)),
            SurfaceSource::Weierstrass(w) => {
                let z = Complex64::new(x, y);
                let mut fx = Vec::with_capacity(w.dimension());
                let mut fy = Vec::with_capacity(w.dimension());
                for j in 0..w.dimension() {
                    let d = w.eval_derivative(j, z);
                    fx.push(d.re);
                    fy.push(-d.im);
                }
                (fx, fy)
            }
            SurfaceSource::Rescaled { inner, factor } => {
                let (fx, fy) = inner.partials_xy(factor * x, factor * y);
                (vecn::scale(&fx, *factor), vecn::scale(&fy, *factor))
            }
            SurfaceSource::Lifted { inner, eps, shrink } => {
                let (fx, fy) = inner.partials_xy(shrink * x, shrink * y);
                let mut gx = vecn::scale(&fx, *shrink);
                let mut gy = vecn::scale(&fy, *shrink);
                gx.push(*eps);
                gx.push(0.0);
                gy.push(0.0);
                gy.push(*eps);
                (gx, gy)
            }
        }
    }

    pub(crate) fn second_partials_xy(&self, x: f64, y: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        match &self.source {
            SurfaceSource::Boundary(phi) => poisson::boundary_second_xy(phi, x, y),
            SurfaceSource::Closed(cf) => ((cf.dxx)(x, y), (cf.dxy)(x, y), (cf.dyy)(x, y)),
            SurfaceSource::Weierstrass(w) => {
                let z = Complex64::new(x, y);
                let n = w.dimension();
                let mut fxx = Vec::with_capacity(n);
                let mut fxy = Vec::with_capacity(n);
                let mut fyy = Vec::with_capacity(n);
                for j in 0..n {
                    let d2 = w.eval_second(j, z);
                    fxx.push(d2.re);
                    fxy.push(-d2.im);
                    fyy.push(-d2.re);
                }
                (fxx, fxy, fyy)
            }
            SurfaceSource::Rescaled { inner, factor } => {
                let (fxx, fxy, fyy) = inner.second_partials_xy(factor * x, factor * y);
                let f2 = factor * factor;
                (
                    vecn::scale(&fxx, f2),
                    vecn::scale(&fxy, f2),
                    vecn::scale(&fyy, f2),
                )
            }
            SurfaceSource::Lifted { inner, shrink, .. } => {
                let (fxx, fxy, fyy) = inner.second_partials_xy(shrink * x, shrink * y);
                let s2 = shrink * shrink;
                let mut gxx = vecn::scale(&fxx, s2);
                let mut gxy = vecn::scale(&fxy, s2);
                let mut gyy = vecn::scale(&fyy, s2);
                for v in [&mut gxx, &mut gxy, &mut gyy] {
                    v.push(0.0);
                    v.push(0.0);
                }
                (gxx, gxy, gyy)
            }
        }
    }

    /// `|τ(z) − (circle average of τ over radius ρ)|` — the harmonicity
    /// certificate. Zero up to quadrature for every harmonic surface.
    pub fn mean_value_residual(&self, z: DiskPoint, rho: f64, q: &QuadratureConfig) -> Result<f64> {
        q.check()?;
        if !(rho > 0.0) || z.r() + rho >= 1.0 {
            return Err(Error::Domain(format!(
                "circle of radius {rho} about (r={}, θ={}) leaves the open disk",
                z.r(),
                z.theta()
            )));
        }
        let (cx, cy) = (z.x(), z.y());
        let avg = quadrature::periodic_refined_vec(q, self.dim, |t, out| {
            let v = self.value_xy(cx + rho * t.cos(), cy + rho * t.sin());
            out.copy_from_slice(&v);
        });
        let avg = avg.require_converged(q.abs_tol)?;
        let center = self.value_xy(cx, cy);
        let diff: f64 = center
            .iter()
            .zip(avg)
            .map(|(c, a)| {
                let d = c - a / quadrature::TAU;
                d * d
            })
            .sum();
        Ok(diff.sqrt())
    }
}

// ---------------------------------------------------------------------------
// Complex polynomial helpers for generating conformal series data.
// ---------------------------------------------------------------------------

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_scale(a: &[Complex64], c: Complex64) -> Vec<Complex64> {
    a.iter().map(|x| x * c).collect()
}

fn poly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// Antiderivative with zero constant term.
fn poly_integrate(a: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + 1];
    for (k, c) in a.iter().enumerate() {
        out[k + 1] = c / (k + 1) as f64;
    }
    out
}

/// Series data `a' = (f(1−g²)/2, if(1+g²)/2, fg)` for arbitrary
/// polynomials `f, g`; the conformality identity holds coefficientwise.
pub fn weierstrass_from_generators(f: &[Complex64], g: &[Complex64]) -> Result<WeierstrassData> {
    let one = [Complex64::new(1.0, 0.0)];
    let g2 = poly_mul(g, g);
    let half = Complex64::new(0.5, 0.0);
    let i_half = Complex64::new(0.0, 0.5);
    let a1p = poly_scale(&poly_mul(f, &poly_add(&one, &poly_scale(&g2, -one[0]))), half);
    let a2p = poly_scale(&poly_mul(f, &poly_add(&one, &g2)), i_half);
    let a3p = poly_mul(f, g);
    WeierstrassData::new(vec![
        poly_integrate(&a1p),
        poly_integrate(&a2p),
        poly_integrate(&a3p),
    ])
}

// ---------------------------------------------------------------------------
// Built-in surfaces and seeded random data.
// ---------------------------------------------------------------------------

/// The surfaces every experiment can be run against without external
/// input files.
pub mod builtins {
    use super::*;

    /// Circle data `(cos t, sin t)`; its extension is the identity disk.
    pub fn circle_boundary() -> BoundaryMap {
        BoundaryMap::fourier(vec![
            TrigSeries::new(0.0, vec![(1.0, 0.0)]).unwrap(),
            TrigSeries::new(0.0, vec![(0.0, 1.0)]).unwrap(),
        ])
        .unwrap()
    }

    /// The identity map of the disk, driven by its own boundary values.
    pub fn identity() -> HarmonicSurface {
        HarmonicSurface::from_boundary(circle_boundary(), QuadratureConfig::default()).unwrap()
    }

    /// Step data over the 4th roots of unity; the extension maps the disk
    /// onto the open square with vertices `(±1, 0), (0, ±1)`.
    pub fn square() -> HarmonicSurface {
        let phi = crate::boundary::polygon_boundary(&[
            0.0,
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::PI,
            1.5 * std::f64::consts::PI,
        ])
        .unwrap();
        HarmonicSurface::from_boundary(phi, QuadratureConfig::default()).unwrap()
    }

    /// Step data over the cube roots of unity (equilateral triangle).
    pub fn triangle() -> HarmonicSurface {
        let phi = crate::boundary::polygon_boundary(&[
            0.0,
            quadrature::TAU / 3.0,
            2.0 * quadrature::TAU / 3.0,
        ])
        .unwrap();
        HarmonicSurface::from_boundary(phi, QuadratureConfig::default()).unwrap()
    }

    pub fn tilted(m: f64) -> HarmonicSurface {
        HarmonicSurface::tilted_disk(m).unwrap()
    }

    /// The classical saddle series `(z − z³/3, i(z + z³/3), z²)`.
    pub fn enneper() -> HarmonicSurface {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let zero = c(0.0, 0.0);
        let data = WeierstrassData::new(vec![
            vec![zero, c(1.0, 0.0), zero, c(-1.0 / 3.0, 0.0)],
            vec![zero, c(0.0, 1.0), zero, c(0.0, 1.0 / 3.0)],
            vec![zero, zero, c(1.0, 0.0)],
        ])
        .unwrap();
        HarmonicSurface::minimal_from_weierstrass(data, QuadratureConfig::default()).unwrap()
    }

    /// The harmonic graph `(x, y, xy)`, curvature `−1/(1+x²+y²)²`.
    pub fn harmonic_graph_xy() -> HarmonicSurface {
        let cf = ClosedFormSurface {
            dim: 3,
            value: Arc::new(|x, y| vec![x, y, x * y]),
            dx: Arc::new(|_, y| vec![1.0, 0.0, y]),
            dy: Arc::new(|x, _| vec![0.0, 1.0, x]),
            dxx: Arc::new(|_, _| vec![0.0, 0.0, 0.0]),
            dxy: Arc::new(|_, _| vec![0.0, 0.0, 1.0]),
            dyy: Arc::new(|_, _| vec![0.0, 0.0, 0.0]),
        };
        HarmonicSurface::closed_form(cf, QuadratureConfig::default()).unwrap()
    }

    /// Seeded band-limited boundary data with decaying coefficients.
    pub fn random_fourier_boundary(seed: u64, dim: usize, max_degree: usize) -> BoundaryMap {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let components = (0..dim.max(1))
            .map(|_| {
                let a0 = rng.gen_range(-1.0..1.0);
                let terms = (1..=max_degree.max(1))
                    .map(|k| {
                        let decay = 1.0 / (1.0 + (k * k) as f64);
                        (
                            decay * rng.gen_range(-1.0..1.0),
                            decay * rng.gen_range(-1.0..1.0),
                        )
                    })
                    .collect();
                TrigSeries::new(a0, terms).unwrap()
            })
            .collect();
        BoundaryMap::fourier(components).unwrap()
    }

    /// Seeded minimal surface from random generator polynomials; the
    /// conformality identity holds by construction.
    pub fn random_weierstrass_surface(seed: u64) -> HarmonicSurface {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand_c = |scale: f64| {
            Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
        };
        let f = vec![rand_c(0.5) + Complex64::new(0.8, 0.0), rand_c(0.4)];
        let g = vec![rand_c(0.6), rand_c(0.5), rand_c(0.3)];
        let data = weierstrass_from_generators(&f, &g).unwrap();
        HarmonicSurface::minimal_from_weierstrass(data, QuadratureConfig::default()).unwrap()
    }
}
