//! First fundamental form, Jacobian, and Gaussian curvature.
//!
//! Curvature is computed along two independent routes:
//!
//! * the determinant route — `K = (det(M₁·M₃ᵀ) − det(M₂·M₂ᵀ)) / (EG−F²)²`
//!   with the `3×n` row matrices `M₁ = [τ_xx, τ_x, τ_y]`,
//!   `M₂ = [τ_xy, τ_x, τ_y]`, `M₃ = [τ_yy, τ_x, τ_y]`, fed by the exact
//!   first and second partials of the surface;
//! * the Brioschi route — the classical determinant expression in `E, F,
//!   G` and their partials, fed here purely by finite differences of the
//!   fundamental form, so it shares no derivative code with the
//!   determinant route.
//!
//! For a harmonic parametrization `τ_yy = −τ_xx` turns the determinant
//! numerator into minus a sum of two Gram determinants, which forces
//! `K ≤ 0`; [`nonpositivity_scan`] checks exactly that over a polar grid.
//! Branch points (`EG − F²` below [`DEGENERACY_THRESHOLD`]) are admitted
//! and reported as degenerate rather than treated as errors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poisson::DiskPoint;
use crate::quadrature::TAU;
use crate::surfaces::HarmonicSurface;
use crate::vecn::{self, det3};

/// `EG − F²` below this is treated as a branch point: curvature divides by
/// its square, so no meaningful value survives there.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

/// Default tolerance a nonpositivity scan allows above zero.
pub const SCAN_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstFundamentalForm {
    /// `E = |τ_x|²`
    pub e: f64,
    /// `F = ⟨τ_x, τ_y⟩`
    pub f: f64,
    /// `G = |τ_y|²`
    pub g: f64,
}

impl FirstFundamentalForm {
    pub fn discriminant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// `J = sqrt(EG − F²)`, clamping roundoff-negative discriminants
    /// (≥ −1e−14) to zero.
    pub fn jacobian(&self) -> Result<f64> {
        let d = self.discriminant();
        if d < -1e-14 {
            return Err(Error::Inconsistency(format!(
                "EG − F² = {d:.3e} is negative beyond roundoff"
            )));
        }
        Ok(d.max(0.0).sqrt())
    }
}

pub fn fundamental_form(s: &HarmonicSurface, z: DiskPoint) -> FirstFundamentalForm {
    let (fx, fy) = s.partials(z);
    FirstFundamentalForm {
        e: vecn::norm_sq(&fx),
        f: vecn::dot(&fx, &fy),
        g: vecn::norm_sq(&fy),
    }
}

pub fn jacobian(s: &HarmonicSurface, z: DiskPoint) -> Result<f64> {
    fundamental_form(s, z).jacobian()
}

/// A curvature evaluation at one disk point. `k_det`/`k_brioschi` are
/// unset at degenerate points.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureSample {
    pub location: DiskPoint,
    pub form: FirstFundamentalForm,
    pub k_det: Option<f64>,
    pub k_brioschi: Option<f64>,
    pub jacobian: f64,
    pub degenerate: bool,
}

fn gram_product(a: [&[f64]; 3], b: [&[f64]; 3]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = vecn::dot(a[i], b[j]);
        }
    }
    m
}

fn check_curvature_dimension(s: &HarmonicSurface) -> Result<()> {
    if s.dimension() < 3 {
        return Err(Error::UnsupportedDimension {
            dim: s.dimension(),
            context: "curvature needs n >= 3; planar images have no curvature in this pipeline"
                .into(),
        });
    }
    Ok(())
}

/// Gaussian curvature by the determinant formula. Degenerate points are
/// reported in the sample, not as errors.
pub fn curvature_det(s: &HarmonicSurface, z: DiskPoint) -> Result<CurvatureSample> {
    check_curvature_dimension(s)?;
    let form = fundamental_form(s, z);
    let jac = form.jacobian()?;
    let disc = form.discriminant();
    if disc < DEGENERACY_THRESHOLD {
        return Ok(CurvatureSample {
            location: z,
            form,
            k_det: None,
            k_brioschi: None,
            jacobian: jac,
            degenerate: true,
        });
    }
    let (fx, fy) = s.partials(z);
    let (fxx, fxy, fyy) = s.second_partials(z);
    let m1 = [fxx.as_slice(), fx.as_slice(), fy.as_slice()];
    let m2 = [fxy.as_slice(), fx.as_slice(), fy.as_slice()];
    let m3 = [fyy.as_slice(), fx.as_slice(), fy.as_slice()];
    let numerator = det3(&gram_product(m1, m3)) - det3(&gram_product(m2, m2));
    Ok(CurvatureSample {
        location: z,
        form,
        k_det: Some(numerator / (disc * disc)),
        k_brioschi: None,
        jacobian: jac,
        degenerate: false,
    })
}

/// `E, F, G` with the first partials and the three second partials the
/// Brioschi determinant needs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FormField {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub e_x: f64,
    pub e_y: f64,
    pub f_x: f64,
    pub f_y: f64,
    pub g_x: f64,
    pub g_y: f64,
    pub e_yy: f64,
    pub f_xy: f64,
    pub g_xx: f64,
}

/// Builds a [`FormField`] by central differences of the fundamental form
/// on a 3×3 stencil. Uses only first partials of the surface, keeping the
/// Brioschi route independent of the second-derivative code.
pub fn form_field_fd(s: &HarmonicSurface, z: DiskPoint, step: f64) -> Result<FormField> {
    if !(step > 0.0) {
        return Err(Error::InvalidInput("finite-difference step must be positive".into()));
    }
    let (x, y) = (z.x(), z.y());
    if (x.hypot(y)) + 2.0 * step >= 1.0 {
        return Err(Error::Domain(format!(
            "finite-difference stencil at r = {:.6} with step {step} leaves the disk",
            z.r()
        )));
    }
    let at = |dx: i32, dy: i32| -> FirstFundamentalForm {
        let p = DiskPoint::from_cartesian(x + dx as f64 * step, y + dy as f64 * step)
            .expect("stencil stays inside the disk");
        fundamental_form(s, p)
    };
    let mut ff = [[FirstFundamentalForm { e: 0.0, f: 0.0, g: 0.0 }; 3]; 3];
    for (i, dx) in (-1..=1).enumerate() {
        for (j, dy) in (-1..=1).enumerate() {
            ff[i][j] = at(dx, dy);
        }
    }
    let h = step;
    let center = ff[1][1];
    Ok(FormField {
        e: center.e,
        f: center.f,
        g: center.g,
        e_x: (ff[2][1].e - ff[0][1].e) / (2.0 * h),
        e_y: (ff[1][2].e - ff[1][0].e) / (2.0 * h),
        f_x: (ff[2][1].f - ff[0][1].f) / (2.0 * h),
        f_y: (ff[1][2].f - ff[1][0].f) / (2.0 * h),
        g_x: (ff[2][1].g - ff[0][1].g) / (2.0 * h),
        g_y: (ff[1][2].g - ff[1][0].g) / (2.0 * h),
        e_yy: (ff[1][2].e - 2.0 * center.e + ff[1][0].e) / (h * h),
        f_xy: (ff[2][2].f - ff[2][0].f - ff[0][2].f + ff[0][0].f) / (4.0 * h * h),
        g_xx: (ff[2][1].g - 2.0 * center.g + ff[0][1].g) / (h * h),
    })
}

/// Gaussian curvature by the Brioschi determinant quotient.
pub fn curvature_brioschi(ff: &FormField) -> Result<f64> {
    let disc = ff.e * ff.g - ff.f * ff.f;
    if disc < DEGENERACY_THRESHOLD {
        return Err(Error::Domain(format!(
            "EG − F² = {disc:.3e} is below the degeneracy threshold"
        )));
    }
    let a = [
        [
            -0.5 * ff.e_yy + ff.f_xy - 0.5 * ff.g_xx,
            0.5 * ff.e_x,
            ff.f_x - 0.5 * ff.e_y,
        ],
        [ff.f_y - 0.5 * ff.g_x, ff.e, ff.f],
        [0.5 * ff.g_y, ff.f, ff.g],
    ];
    let b = [
        [0.0, 0.5 * ff.e_y, 0.5 * ff.g_x],
        [0.5 * ff.e_y, ff.e, ff.f],
        [0.5 * ff.g_x, ff.f, ff.g],
    ];
    Ok((det3(&a) - det3(&b)) / (disc * disc))
}

/// Finite-difference step for the Brioschi field.
pub const BRIOSCHI_FD_STEP: f64 = 1e-4;

/// Both curvature routes at one point. The Brioschi value Richardson-
/// extrapolates the step-`h` and step-`h/2` stencils, cancelling the
/// leading `h²` truncation term.
pub fn curvature_sample(s: &HarmonicSurface, z: DiskPoint) -> Result<CurvatureSample> {
    let mut sample = curvature_det(s, z)?;
    if !sample.degenerate {
        let full = curvature_brioschi(&form_field_fd(s, z, BRIOSCHI_FD_STEP)?)?;
        let half = curvature_brioschi(&form_field_fd(s, z, 0.5 * BRIOSCHI_FD_STEP)?)?;
        sample.k_brioschi = Some((4.0 * half - full) / 3.0);
    }
    Ok(sample)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanGrid {
    pub radial: usize,
    pub angular: usize,
    pub max_radius: f64,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            radial: 32,
            angular: 32,
            max_radius: 0.9,
        }
    }
}

impl ScanGrid {
    fn check(&self) -> Result<()> {
        if self.radial == 0 || self.angular == 0 {
            return Err(Error::InvalidInput("scan grid must be nonempty".into()));
        }
        if !(self.max_radius > 0.0 && self.max_radius < 1.0 - 2.0 * BRIOSCHI_FD_STEP) {
            return Err(Error::InvalidInput(format!(
                "scan max_radius must leave room for the finite-difference stencil, got {}",
                self.max_radius
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<DiskPoint> {
        let mut pts = Vec::with_capacity(self.radial * self.angular);
        for i in 0..self.radial {
            let r = self.max_radius * (i + 1) as f64 / self.radial as f64;
            for j in 0..self.angular {
                let th = TAU * j as f64 / self.angular as f64;
                pts.push(DiskPoint::new(r, th).expect("grid point inside the disk"));
            }
        }
        pts
    }
}

/// Outcome of a curvature scan over a polar grid.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub samples: Vec<CurvatureSample>,
    /// Maximum curvature over non-degenerate samples (determinant route).
    pub max_k: Option<f64>,
    pub degenerate_count: usize,
    /// Count of samples with `K > tolerance`.
    pub violation_count: usize,
    pub tolerance: f64,
    /// True for planar images (`n = 2`), where curvature does not apply.
    pub not_applicable: bool,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,theta,E,F,G,J,K_det,K_brioschi,degenerate\n");
        for s in &self.samples {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                s.location.r(),
                s.location.theta(),
                s.form.e,
                s.form.f,
                s.form.g,
                s.jacobian,
                opt(s.k_det),
                opt(s.k_brioschi),
                s.degenerate
            ));
        }
        out
    }
}

/// Samples both curvature routes on the grid and reports the maximum over
/// non-degenerate points. For harmonic surfaces the maximum must not
/// exceed [`SCAN_TOLERANCE`]; exceedances are counted, not raised.
pub fn nonpositivity_scan(s: &HarmonicSurface, grid: ScanGrid) -> Result<ScanReport> {
    grid.check()?;
    if s.dimension() < 3 {
        return Ok(ScanReport {
            samples: vec![],
            max_k: None,
            degenerate_count: 0,
            violation_count: 0,
            tolerance: SCAN_TOLERANCE,
            not_applicable: true,
        });
    }
    let mut samples = Vec::new();
    let mut max_k: Option<f64> = None;
    let mut degenerate_count = 0;
    let mut violation_count = 0;
    for z in grid.points() {
        let sample = curvature_sample(s, z)?;
        if sample.degenerate {
            degenerate_count += 1;
        } else {
            let k = sample.k_det.expect("non-degenerate sample has curvature");
            max_k = Some(max_k.map_or(k, |m: f64| m.max(k)));
            if k > SCAN_TOLERANCE {
                violation_count += 1;
            }
        }
        samples.push(sample);
    }
    Ok(ScanReport {
        samples,
        max_k,
        degenerate_count,
        violation_count,
        tolerance: SCAN_TOLERANCE,
        not_applicable: false,
    })
}
