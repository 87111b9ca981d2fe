//! Boundary behavior at discontinuities: approach paths at prescribed
//! angles and the convex-combination law for the limits.
//!
//! At a jump of the boundary data with one-sided limits `A₀` (left) and
//! `B₀` (right), the extension approaches `½(1−λ)A₀ + ½(1+λ)B₀` along a
//! path meeting the circle at angle `−λπ/2`, so the cluster set at the
//! jump is the whole segment `[A₀, B₀]`. The probe path is the Möbius ray
//!
//! `z_R = e^{iθ₀} (R e^{iλπ/2} − 1) / (R e^{iλπ/2} + 1)`, `R → ∞`.
//!
//! For `|λ| < 1` the ray stays strictly inside the disk. At `λ = ±1` the
//! expression lands exactly on the circle (the ray runs along it toward
//! the anchor), so [`approach_point`] nudges the radius inward by 1e−12;
//! the evaluated values differ from the one-sided boundary values by an
//! amount of the same order.

use num_complex::Complex64;
use serde::Serialize;

use crate::boundary::JumpPoint;
use crate::error::{Error, Result};
use crate::poisson::DiskPoint;
use crate::quadrature::QuadratureConfig;
use crate::surfaces::HarmonicSurface;
use crate::vecn;

/// Default ramp of the probe parameter.
pub const DEFAULT_R_SCHEDULE: [f64; 4] = [1e1, 1e2, 1e3, 1e4];

/// Inward clamp applied when the path formula lands on the circle.
const RADIAL_NUDGE: f64 = 1e-12;

/// An approach ray toward the boundary point `e^{iθ₀}` at angle `−λπ/2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ApproachPath {
    pub theta0: f64,
    pub lambda: f64,
}

impl ApproachPath {
    pub fn new(theta0: f64, lambda: f64) -> Result<Self> {
        if !theta0.is_finite() || !(-1.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidInput(format!(
                "approach path needs finite θ₀ and λ in [−1, 1], got ({theta0}, {lambda})"
            )));
        }
        Ok(ApproachPath { theta0, lambda })
    }

    pub fn point(&self, ramp: f64) -> Result<DiskPoint> {
        approach_point(self.theta0, self.lambda, ramp)
    }
}

/// Point of the approach path at ramp parameter `R > 1`.
pub fn approach_point(theta0: f64, lambda: f64, ramp: f64) -> Result<DiskPoint> {
    let path = ApproachPath::new(theta0, lambda)?;
    if !(ramp > 1.0) {
        return Err(Error::InvalidInput(format!(
            "ramp parameter must exceed 1, got {ramp}"
        )));
    }
    let w = Complex64::from_polar(ramp, path.lambda * std::f64::consts::FRAC_PI_2);
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::from_polar(1.0, path.theta0) * (w - one) / (w + one);
    let r = z.norm();
    if r >= 1.0 + 1e-9 {
        return Err(Error::Domain(format!(
            "approach point left the closed disk (|z| = {r}); ramp {ramp} is invalid"
        )));
    }
    DiskPoint::new(r.min(1.0 - RADIAL_NUDGE), z.arg())
}

/// Where a probe aims: a boundary anchor with its one-sided target values.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeAnchor {
    pub theta0: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl ProbeAnchor {
    /// Anchor at a continuity point: both targets equal the value there.
    pub fn continuity(theta0: f64, value: Vec<f64>) -> Self {
        ProbeAnchor {
            theta0,
            left: value.clone(),
            right: value,
        }
    }

    /// The convex combination `½(1−λ)·left + ½(1+λ)·right`.
    pub fn predicted(&self, lambda: f64) -> Vec<f64> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(a, b)| 0.5 * (1.0 - lambda) * a + 0.5 * (1.0 + lambda) * b)
            .collect()
    }
}

impl From<&JumpPoint> for ProbeAnchor {
    fn from(j: &JumpPoint) -> Self {
        ProbeAnchor {
            theta0: j.location,
            left: j.left_value.clone(),
            right: j.right_value.clone(),
        }
    }
}

/// Surface values along one approach ray, against the predicted limit.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterProbe {
    pub lambda: f64,
    pub schedule: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub predicted: Vec<f64>,
    /// `|value − predicted|` per schedule entry.
    pub residuals: Vec<f64>,
    pub limit_estimate: Vec<f64>,
    /// Distance between the last two values along the ramp.
    pub error_bar: f64,
}

/// Evaluates the surface along the approach ray at every schedule entry.
/// The limit estimate is the last value; no convergence rate is assumed,
/// so the error bar is the last increment.
pub fn cluster_probe(
    s: &HarmonicSurface,
    anchor: &ProbeAnchor,
    lambda: f64,
    schedule: &[f64],
    q: &QuadratureConfig,
) -> Result<ClusterProbe> {
    q.check()?;
    if schedule.is_empty() {
        return Err(Error::InvalidInput("probe schedule is empty".into()));
    }
    for w in schedule.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput("probe schedule must increase".into()));
        }
    }
    if anchor.left.len() != s.dimension() || anchor.right.len() != s.dimension() {
        return Err(Error::InvalidInput(format!(
            "anchor dimension {} does not match surface dimension {}",
            anchor.left.len(),
            s.dimension()
        )));
    }
    let predicted = anchor.predicted(lambda);
    let mut values = Vec::with_capacity(schedule.len());
    let mut residuals = Vec::with_capacity(schedule.len());
    for &ramp in schedule {
        let z = approach_point(anchor.theta0, lambda, ramp)?;
        let v = s.value(z);
        residuals.push(vecn::dist(&v, &predicted));
        values.push(v);
    }
    let limit_estimate = values.last().unwrap().clone();
    let error_bar = if values.len() >= 2 {
        vecn::dist(&values[values.len() - 1], &values[values.len() - 2])
    } else {
        f64::INFINITY
    };
    Ok(ClusterProbe {
        lambda,
        schedule: schedule.to_vec(),
        values,
        predicted,
        residuals,
        limit_estimate,
        error_bar,
    })
}

/// Probes across a λ-grid with the geometry checks on the limits: they
/// must fall on the segment `[A₀, B₀]` and depend affinely on λ.
#[derive(Debug, Clone, Serialize)]
pub struct SegmentSweep {
    pub probes: Vec<ClusterProbe>,
    /// Max distance of a limit estimate from the segment `[A₀, B₀]`.
    pub max_segment_distance: f64,
    /// Max distance of a limit estimate from the line through `A₀, B₀`.
    pub collinearity_residual: f64,
    /// `|limit(0) − ½(limit(−1) + limit(1))|` when the grid carries all
    /// three of −1, 0, 1.
    pub affinity_residual: Option<f64>,
}

pub fn segment_sweep(
    s: &HarmonicSurface,
    anchor: &ProbeAnchor,
    lambdas: &[f64],
    q: &QuadratureConfig,
) -> Result<SegmentSweep> {
    if lambdas.is_empty() {
        return Err(Error::InvalidInput("sweep needs at least one λ".into()));
    }
    let probes: Vec<ClusterProbe> = lambdas
        .iter()
        .map(|&l| cluster_probe(s, anchor, l, &DEFAULT_R_SCHEDULE, q))
        .collect::<Result<_>>()?;

    let degenerate = vecn::dist(&anchor.left, &anchor.right) == 0.0;
    let mut max_segment_distance = 0.0f64;
    let mut collinearity_residual = 0.0f64;
    for p in &probes {
        let (seg, line) = if degenerate {
            let d = vecn::dist(&p.limit_estimate, &anchor.left);
            (d, d)
        } else {
            (
                vecn::dist_to_segment(&p.limit_estimate, &anchor.left, &anchor.right),
                vecn::dist_to_line(&p.limit_estimate, &anchor.left, &anchor.right),
            )
        };
        max_segment_distance = max_segment_distance.max(seg);
        collinearity_residual = collinearity_residual.max(line);
    }

    let find = |target: f64| {
        probes
            .iter()
            .find(|p| (p.lambda - target).abs() < 1e-12)
            .map(|p| p.limit_estimate.clone())
    };
    let affinity_residual = match (find(-1.0), find(0.0), find(1.0)) {
        (Some(a), Some(mid), Some(b)) => {
            let avg: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
            Some(vecn::dist(&mid, &avg))
        }
        _ => None,
    };

    Ok(SegmentSweep {
        probes,
        max_segment_distance,
        collinearity_residual,
        affinity_residual,
    })
}

/// CSV rows `lambda,R,f components…,predicted components…,residual`.
pub fn probes_csv(probes: &[ClusterProbe], dim: usize) -> String {
    let mut header = String::from("lambda,R");
    for j in 0..dim {
        header.push_str(&format!(",f{j}"));
    }
    for j in 0..dim {
        header.push_str(&format!(",predicted{j}"));
    }
    header.push_str(",residual\n");
    let mut out = header;
    for p in probes {
        for (i, ramp) in p.schedule.iter().enumerate() {
            out.push_str(&format!("{},{}", p.lambda, ramp));
            for v in &p.values[i] {
                out.push_str(&format!(",{v}"));
            }
            for v in &p.predicted {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(&format!(",{}\n", p.residuals[i]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::builtins;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn radial_approach_at_lambda_zero() {
        for ramp in [2.0, 10.0, 1e4] {
            let z = approach_point(0.0, 0.0, ramp).unwrap();
            assert_relative_eq!(z.r(), (ramp - 1.0) / (ramp + 1.0), max_relative = 1e-12);
            assert!(z.theta().abs() < 1e-12 || (z.theta() - crate::quadrature::TAU).abs() < 1e-9);
        }
    }

    #[test]
    fn path_tends_to_the_anchor() {
        let theta0 = 1.2;
        let z = approach_point(theta0, 0.4, 1e6).unwrap();
        assert!(1.0 - z.r() < 1e-5);
        assert!((z.theta() - theta0).abs() < 1e-5);
    }

    #[test]
    fn tangential_path_is_clamped_inside() {
        // At λ = ±1 the Möbius expression has modulus exactly one; the
        // probe point is nudged inward and keeps the right angle offset.
        let z = approach_point(0.0, 1.0, 10.0).unwrap();
        assert!(z.r() < 1.0);
        assert!(1.0 - z.r() <= 1e-11);
        // The point sits at angle atan2(2R, R²−1) ahead of the anchor.
        assert_relative_eq!(z.theta(), (20.0f64).atan2(99.0), epsilon = 1e-9);

        let zm = approach_point(0.0, -1.0, 10.0).unwrap();
        assert!(zm.theta() > std::f64::consts::PI, "approaches from below");
    }

    #[test]
    fn probe_on_continuous_data_returns_the_boundary_value() {
        let q = QuadratureConfig::default();
        let s = builtins::identity();
        let theta0 = 0.8;
        let anchor = ProbeAnchor::continuity(theta0, vec![theta0.cos(), theta0.sin()]);
        for lambda in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let probe = cluster_probe(&s, &anchor, lambda, &DEFAULT_R_SCHEDULE, &q).unwrap();
            assert!(
                *probe.residuals.last().unwrap() < 1e-3,
                "λ={lambda}: residual {}",
                probe.residuals.last().unwrap()
            );
        }
    }

    #[test]
    fn square_jump_probe_hits_the_midpoint() {
        let q = QuadratureConfig::default();
        let s = builtins::square();
        let jumps = s.boundary().unwrap().jump_set();
        // Jump at π/2 goes from vertex (1, 0) to vertex (0, 1).
        let jump = jumps.iter().find(|j| (j.location - FRAC_PI_2).abs() < 1e-12).unwrap();
        assert_eq!(jump.left_value, vec![1.0, 0.0]);
        assert_eq!(jump.right_value, vec![FRAC_PI_2.cos(), 1.0]);

        let anchor = ProbeAnchor::from(jump);
        let probe = cluster_probe(&s, &anchor, 0.0, &DEFAULT_R_SCHEDULE, &q).unwrap();
        let mid = anchor.predicted(0.0);
        assert_abs_diff_eq!(mid[0], 0.5 * (1.0 + FRAC_PI_2.cos()), epsilon = 1e-15);
        assert_abs_diff_eq!(mid[1], 0.5, epsilon = 1e-15);
        assert!(*probe.residuals.last().unwrap() < 1e-3);
        // Residuals shrink along the ramp.
        assert!(probe.residuals.last().unwrap() < probe.residuals.first().unwrap());
    }

    #[test]
    fn lambda_extremes_target_the_one_sided_values() {
        let q = QuadratureConfig::default();
        let s = builtins::square();
        let jumps = s.boundary().unwrap().jump_set();
        let anchor = ProbeAnchor::from(&jumps[0]);
        let plus = cluster_probe(&s, &anchor, 1.0, &DEFAULT_R_SCHEDULE, &q).unwrap();
        assert!(vecn::dist(&plus.limit_estimate, &anchor.right) < 1e-3);
        let minus = cluster_probe(&s, &anchor, -1.0, &DEFAULT_R_SCHEDULE, &q).unwrap();
        assert!(vecn::dist(&minus.limit_estimate, &anchor.left) < 1e-3);
    }

    #[test]
    fn sweeps_are_collinear_and_affine() {
        let q = QuadratureConfig::default();
        let s = builtins::square();
        for jump in s.boundary().unwrap().jump_set() {
            let anchor = ProbeAnchor::from(&jump);
            let sweep =
                segment_sweep(&s, &anchor, &[-1.0, -0.5, 0.0, 0.5, 1.0], &q).unwrap();
            assert!(sweep.max_segment_distance < 1e-3, "segment {}", sweep.max_segment_distance);
            assert!(sweep.collinearity_residual < 1e-3);
            assert!(sweep.affinity_residual.unwrap() < 1e-3);
        }
    }

    #[test]
    fn designated_jump_sweep_spans_the_segment() {
        let q = QuadratureConfig::default();
        let phi = crate::BoundaryMap::piecewise_constant(
            vec![0.0, std::f64::consts::PI],
            vec![vec![1.0, 0.0], vec![0.0, 0.0]],
        )
        .unwrap();
        let s = HarmonicSurface::from_boundary(phi, q.clone()).unwrap();
        let jump = &s.boundary().unwrap().jump_set()[0];
        let anchor = ProbeAnchor::from(jump);
        let sweep = segment_sweep(&s, &anchor, &[-1.0, 1.0], &q).unwrap();
        assert!(vecn::dist(&sweep.probes[0].limit_estimate, &anchor.left) < 1e-3);
        assert!(vecn::dist(&sweep.probes[1].limit_estimate, &anchor.right) < 1e-3);
    }

    #[test]
    fn probes_csv_shape() {
        let q = QuadratureConfig::default();
        let s = builtins::square();
        let anchor = ProbeAnchor::from(&s.boundary().unwrap().jump_set()[0]);
        let probe = cluster_probe(&s, &anchor, 0.5, &DEFAULT_R_SCHEDULE, &q).unwrap();
        let csv = probes_csv(&[probe], 2);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "lambda,R,f0,f1,predicted0,predicted1,residual");
        assert_eq!(lines.count(), DEFAULT_R_SCHEDULE.len());
    }

    #[test]
    fn invalid_probe_inputs() {
        let q = QuadratureConfig::default();
        let s = builtins::square();
        let anchor = ProbeAnchor::continuity(0.0, vec![0.0, 0.0]);
        assert!(cluster_probe(&s, &anchor, 2.0, &DEFAULT_R_SCHEDULE, &q).is_err());
        assert!(cluster_probe(&s, &anchor, 0.0, &[], &q).is_err());
        assert!(cluster_probe(&s, &anchor, 0.0, &[10.0, 5.0], &q).is_err());
        assert!(approach_point(0.0, 0.0, 1.0).is_err());
        let bad_anchor = ProbeAnchor::continuity(0.0, vec![0.0; 5]);
        assert!(cluster_probe(&s, &bad_anchor, 0.0, &DEFAULT_R_SCHEDULE, &q).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Approach points stay strictly inside the disk.
        #[test]
        fn path_containment(
            theta0 in 0.0..crate::quadrature::TAU,
            lambda in -1.0..1.0f64,
            ramp in 1.0001..1e6f64,
        ) {
            let z = approach_point(theta0, lambda, ramp).unwrap();
            prop_assert!(z.r() < 1.0);
        }
    }
}
