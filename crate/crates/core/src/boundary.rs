//! Bounded-variation boundary data on the unit circle.
//!
//! A [`BoundaryMap`] sends the circle into `R^n` and is stored in one of
//! three forms: piecewise-constant steps, a finite trigonometric series per
//! component, or the sum of both. Steps carry all jumps; the trigonometric
//! part is smooth. The distributional derivative therefore splits into an
//! atomic part (the jump vectors) and an absolutely continuous part, and
//! the total variation is the sum of the jump magnitudes and the integral
//! of the smooth speed. That total variation plays the role of the length
//! of the boundary curve throughout the crate.

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureConfig, TAU};
use crate::vecn;

fn check_finite(label: &str, xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{label} contains a non-finite value")))
    }
}

/// Piecewise-constant circle data: value `values[l]` on the arc
/// `[breakpoints[l], breakpoints[l+1])`, cyclically.
#[derive(Debug, Clone, PartialEq)]
pub struct StepData {
    breakpoints: Vec<f64>,
    values: Vec<Vec<f64>>,
}

impl StepData {
    /// Validates and merges breakpoints whose two sides carry equal values,
    /// so every surviving breakpoint is a genuine jump.
    pub fn new(breakpoints: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "need matching nonempty breakpoints/values, got {}/{}",
                breakpoints.len(),
                values.len()
            )));
        }
        check_finite("breakpoints", &breakpoints)?;
        for v in &values {
            check_finite("step values", v)?;
        }
        let dim = values[0].len();
        if dim == 0 || values.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidInput(
                "step values must share a positive dimension".into(),
            ));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        if breakpoints[0] < 0.0 || *breakpoints.last().unwrap() >= TAU {
            return Err(Error::InvalidInput("breakpoints must lie in [0, 2π)".into()));
        }

        // Merge zero-jump breakpoints (cyclically).
        let m = breakpoints.len();
        let keep: Vec<usize> = (0..m)
            .filter(|&k| values[k] != values[(k + m - 1) % m])
            .collect();
        if keep.is_empty() {
            // Constant map: one piece, no jumps.
            return Ok(StepData {
                breakpoints: vec![breakpoints[0]],
                values: vec![values[0].clone()],
            });
        }
        let merged_bps: Vec<f64> = keep.iter().map(|&k| breakpoints[k]).collect();
        let merged_vals: Vec<Vec<f64>> = keep.iter().map(|&k| values[k].clone()).collect();
        Ok(StepData {
            breakpoints: merged_bps,
            values: merged_vals,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.values[0].len()
    }

    /// Index of the piece containing angle `t` (right-continuous).
    pub fn piece_index(&self, t: f64) -> usize {
        let t = t.rem_euclid(TAU);
        let pos = self.breakpoints.partition_point(|&b| b <= t);
        if pos == 0 {
            self.breakpoints.len() - 1
        } else {
            pos - 1
        }
    }

    pub fn value_at(&self, t: f64) -> &[f64] {
        &self.values[self.piece_index(t)]
    }

    /// Jump data `(location, left value, right value)` per breakpoint.
    /// After construction every entry has a positive magnitude.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, &[f64], &[f64])> + '_ {
        let m = self.breakpoints.len();
        (0..m).filter_map(move |k| {
            let prev = &self.values[(k + m - 1) % m];
            let cur = &self.values[k];
            if prev == cur {
                // Single-piece constant data.
                None
            } else {
                Some((self.breakpoints[k], prev.as_slice(), cur.as_slice()))
            }
        })
    }
}

/// One component of band-limited circle data:
/// `a0 + Σ_k (a_k cos kt + b_k sin kt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    pub a0: f64,
    /// `(a_k, b_k)` for `k = 1, 2, ...`.
    pub terms: Vec<(f64, f64)>,
}

impl TrigSeries {
    pub fn new(a0: f64, terms: Vec<(f64, f64)>) -> Result<Self> {
        if !a0.is_finite() || terms.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidInput(
                "trigonometric coefficients must be finite".into(),
            ));
        }
        Ok(TrigSeries { a0, terms })
    }

    pub fn constant(a0: f64) -> Self {
        TrigSeries { a0, terms: vec![] }
    }

    pub fn degree(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut s = self.a0;
        for (k, (a, b)) in self.terms.iter().enumerate() {
            let kt = (k + 1) as f64 * t;
            s += a * kt.cos() + b * kt.sin();
        }
        s
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let mut s = 0.0;
        for (k, (a, b)) in self.terms.iter().enumerate() {
            let kf = (k + 1) as f64;
            let kt = kf * t;
            s += kf * (-a * kt.sin() + b * kt.cos());
        }
        s
    }

    /// Coefficients of `t ↦ self(t + c)`.
    pub fn rotated(&self, c: f64) -> TrigSeries {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, (a, b))| {
                let kc = (k + 1) as f64 * c;
                (a * kc.cos() + b * kc.sin(), -a * kc.sin() + b * kc.cos())
            })
            .collect();
        TrigSeries { a0: self.a0, terms }
    }
}

/// Band-limited circle data, one series per component.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigData {
    components: Vec<TrigSeries>,
}

impl TrigData {
    pub fn new(components: Vec<TrigSeries>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput(
                "trigonometric data needs at least one component".into(),
            ));
        }
        Ok(TrigData { components })
    }

    pub fn components(&self) -> &[TrigSeries] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn value_into(&self, t: f64, out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(&self.components) {
            *o = c.eval(t);
        }
    }

    pub fn derivative_into(&self, t: f64, out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(&self.components) {
            *o = c.derivative(t);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryRepresentation {
    PiecewiseConstant(StepData),
    FourierSmooth(TrigData),
    Composite { steps: StepData, smooth: TrigData },
}

/// A bounded-variation map from the unit circle into `R^n`.
///
/// Immutable after construction; jump detection is structural, never a
/// numerical scan of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMap {
    dim: usize,
    repr: BoundaryRepresentation,
}

/// A discontinuity of the boundary data: one-sided limits and their
/// distance. Construction merges zero jumps away, so `magnitude > 0`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct JumpPoint {
    pub location: f64,
    pub left_value: Vec<f64>,
    pub right_value: Vec<f64>,
    pub magnitude: f64,
}

impl BoundaryMap {
    pub fn piecewise_constant(breakpoints: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let steps = StepData::new(breakpoints, values)?;
        Ok(BoundaryMap {
            dim: steps.dimension(),
            repr: BoundaryRepresentation::PiecewiseConstant(steps),
        })
    }

    pub fn fourier(components: Vec<TrigSeries>) -> Result<Self> {
        let smooth = TrigData::new(components)?;
        Ok(BoundaryMap {
            dim: smooth.dimension(),
            repr: BoundaryRepresentation::FourierSmooth(smooth),
        })
    }

    pub fn composite(steps: StepData, smooth: TrigData) -> Result<Self> {
        if steps.dimension() != smooth.dimension() {
            return Err(Error::InvalidInput(format!(
                "step dimension {} != smooth dimension {}",
                steps.dimension(),
                smooth.dimension()
            )));
        }
        Ok(BoundaryMap {
            dim: steps.dimension(),
            repr: BoundaryRepresentation::Composite { steps, smooth },
        })
    }

    pub fn constant(value: Vec<f64>) -> Result<Self> {
        let steps = StepData::new(vec![0.0], vec![value])?;
        Ok(BoundaryMap {
            dim: steps.dimension(),
            repr: BoundaryRepresentation::PiecewiseConstant(steps),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn representation(&self) -> &BoundaryRepresentation {
        &self.repr
    }

    pub fn steps(&self) -> Option<&StepData> {
        match &self.repr {
            BoundaryRepresentation::PiecewiseConstant(s) => Some(s),
            BoundaryRepresentation::Composite { steps, .. } => Some(steps),
            BoundaryRepresentation::FourierSmooth(_) => None,
        }
    }

    pub fn smooth(&self) -> Option<&TrigData> {
        match &self.repr {
            BoundaryRepresentation::FourierSmooth(s) => Some(s),
            BoundaryRepresentation::Composite { smooth, .. } => Some(smooth),
            BoundaryRepresentation::PiecewiseConstant(_) => None,
        }
    }

    /// Value at angle `t`, right-continuous at jumps.
    pub fn value_at(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        if let Some(steps) = self.steps() {
            out.copy_from_slice(steps.value_at(t));
        }
        if let Some(smooth) = self.smooth() {
            let mut buf = vec![0.0; self.dim];
            smooth.value_into(t, &mut buf);
            for (o, b) in out.iter_mut().zip(&buf) {
                *o += b;
            }
        }
        out
    }

    /// Derivative of the smooth part at angle `t` (zero for pure steps).
    pub fn smooth_derivative_at(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        if let Some(smooth) = self.smooth() {
            smooth.derivative_into(t, &mut out);
        }
        out
    }

    /// The map `t ↦ φ(t + c)`, with breakpoints re-sorted into `[0, 2π)`.
    pub fn rotated(&self, c: f64) -> BoundaryMap {
        let rotate_steps = |steps: &StepData| {
            let mut pairs: Vec<(f64, Vec<f64>)> = steps
                .breakpoints()
                .iter()
                .zip(steps.values())
                .map(|(b, v)| ((b - c).rem_euclid(TAU), v.clone()))
                .collect();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let (bps, vals) = pairs.into_iter().unzip();
            StepData::new(bps, vals).expect("rotation preserves validity")
        };
        let rotate_smooth = |smooth: &TrigData| {
            TrigData::new(smooth.components().iter().map(|s| s.rotated(c)).collect())
                .expect("rotation preserves validity")
        };
        let repr = match &self.repr {
            BoundaryRepresentation::PiecewiseConstant(s) => {
                BoundaryRepresentation::PiecewiseConstant(rotate_steps(s))
            }
            BoundaryRepresentation::FourierSmooth(s) => {
                BoundaryRepresentation::FourierSmooth(rotate_smooth(s))
            }
            BoundaryRepresentation::Composite { steps, smooth } => BoundaryRepresentation::Composite {
                steps: rotate_steps(steps),
                smooth: rotate_smooth(smooth),
            },
        };
        BoundaryMap {
            dim: self.dim,
            repr,
        }
    }

    pub fn jump_set(&self) -> Vec<JumpPoint> {
        jump_set(self)
    }
}

/// One entry per structural discontinuity, sorted by location. Smooth
/// representations return the empty list. For composite data the smooth
/// part shifts both one-sided limits but not the magnitude.
pub fn jump_set(phi: &BoundaryMap) -> Vec<JumpPoint> {
    let Some(steps) = phi.steps() else {
        return vec![];
    };
    let dim = phi.dimension();
    let mut smooth_buf = vec![0.0; dim];
    steps
        .jumps()
        .map(|(location, left, right)| {
            let mut left_value = left.to_vec();
            let mut right_value = right.to_vec();
            if let Some(smooth) = phi.smooth() {
                smooth.value_into(location, &mut smooth_buf);
                for ((l, r), s) in left_value
                    .iter_mut()
                    .zip(right_value.iter_mut())
                    .zip(&smooth_buf)
                {
                    *l += s;
                    *r += s;
                }
            }
            let magnitude = vecn::dist(&right_value, &left_value);
            JumpPoint {
                location,
                left_value,
                right_value,
                magnitude,
            }
        })
        .collect()
}

/// Total variation of the boundary data: the sum of jump magnitudes plus
/// the integral of the smooth speed `|φ'|`. Exact for pure step data.
///
/// This value is used throughout the crate as the boundary curve length.
pub fn total_variation(phi: &BoundaryMap, q: &QuadratureConfig) -> Result<f64> {
    q.check()?;
    let jumps: f64 = phi.jump_set().iter().map(|j| j.magnitude).sum();
    let Some(smooth) = phi.smooth() else {
        return Ok(jumps);
    };
    let dim = phi.dimension();
    let mut buf = vec![0.0; dim];
    let speed = |t: f64, buf: &mut [f64]| {
        smooth.derivative_into(t, buf);
        vecn::norm(buf)
    };
    let result = match (phi.steps(), q.jump_split) {
        (Some(steps), true) => {
            // Composite data integrates per piece so panels never straddle
            // a breakpoint.
            let panels = breakpoint_panels(steps.breakpoints());
            quadrature::panels_refined(q, &panels, |t| speed(t, &mut buf))
        }
        _ => quadrature::periodic_refined(q, |t| speed(t, &mut buf)),
    };
    Ok(jumps + result.require_converged(q.abs_tol)?)
}

/// Cyclic panels `[t_k, t_{k+1}]` covering one full period.
pub(crate) fn breakpoint_panels(breakpoints: &[f64]) -> Vec<(f64, f64)> {
    let m = breakpoints.len();
    (0..m)
        .map(|k| {
            let a = breakpoints[k];
            let b = if k + 1 < m {
                breakpoints[k + 1]
            } else {
                breakpoints[0] + TAU
            };
            (a, b)
        })
        .collect()
}

/// Step data tracing the vertices of an inscribed polygon: value
/// `(cos θ_l, sin θ_l)` on the arc `[θ_l, θ_{l+1})`.
pub fn polygon_boundary(vertex_angles: &[f64]) -> Result<BoundaryMap> {
    if vertex_angles.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "polygon boundary needs at least 3 vertices, got {}",
            vertex_angles.len()
        )));
    }
    let values = vertex_angles
        .iter()
        .map(|&a| vec![a.cos(), a.sin()])
        .collect();
    BoundaryMap::piecewise_constant(vertex_angles.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    pub(crate) fn square_angles() -> Vec<f64> {
        vec![0.0, FRAC_PI_2, PI, 1.5 * PI]
    }

    fn circle_data() -> BoundaryMap {
        BoundaryMap::fourier(vec![
            TrigSeries::new(0.0, vec![(1.0, 0.0)]).unwrap(),
            TrigSeries::new(0.0, vec![(0.0, 1.0)]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn constant_data_has_zero_variation() {
        let phi = BoundaryMap::constant(vec![2.0, -1.0, 0.5]).unwrap();
        let q = QuadratureConfig::default();
        assert_eq!(total_variation(&phi, &q).unwrap(), 0.0);
        assert!(phi.jump_set().is_empty());
    }

    #[test]
    fn square_polygon_variation_is_four_diagonals() {
        let phi = polygon_boundary(&square_angles()).unwrap();
        let q = QuadratureConfig::default();
        let tv = total_variation(&phi, &q).unwrap();
        assert_relative_eq!(tv, 4.0 * 2.0_f64.sqrt(), max_relative = 1e-15);

        let jumps = phi.jump_set();
        assert_eq!(jumps.len(), 4);
        for j in &jumps {
            assert_relative_eq!(j.magnitude, 2.0_f64.sqrt(), max_relative = 1e-15);
        }
        // Sorted by location.
        for w in jumps.windows(2) {
            assert!(w[0].location < w[1].location);
        }
    }

    #[test]
    fn circle_data_variation_is_circumference() {
        let q = QuadratureConfig::default();
        let tv = total_variation(&circle_data(), &q).unwrap();
        assert_relative_eq!(tv, TAU, epsilon = 1e-10);
        assert!(circle_data().jump_set().is_empty());
    }

    #[test]
    fn triangle_variations() {
        let q = QuadratureConfig::default();
        let equilateral = polygon_boundary(&[0.0, TAU / 3.0, 2.0 * TAU / 3.0]).unwrap();
        assert_relative_eq!(
            total_variation(&equilateral, &q).unwrap(),
            3.0 * 3.0_f64.sqrt(),
            max_relative = 1e-14
        );

        let half = polygon_boundary(&[0.0, FRAC_PI_2, PI]).unwrap();
        assert_relative_eq!(
            total_variation(&half, &q).unwrap(),
            2.0 * 2.0_f64.sqrt() + 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn polygon_requires_three_vertices() {
        assert!(matches!(
            polygon_boundary(&[0.0, PI]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn designated_jump_left_and_right_values() {
        // Jump vectors around the circle telescope to zero, so data with a
        // single designated jump carries a second one elsewhere; tests pin
        // the jump at t = 0.
        let phi = BoundaryMap::piecewise_constant(
            vec![0.0, PI],
            vec![vec![1.0, 0.0], vec![0.0, 0.0]],
        )
        .unwrap();
        let jumps = phi.jump_set();
        assert_eq!(jumps.len(), 2);
        assert_eq!(jumps[0].location, 0.0);
        assert_eq!(jumps[0].left_value, vec![0.0, 0.0]);
        assert_eq!(jumps[0].right_value, vec![1.0, 0.0]);
        assert_relative_eq!(jumps[0].magnitude, 1.0);
    }

    #[test]
    fn zero_jump_breakpoints_are_merged() {
        let phi = BoundaryMap::piecewise_constant(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![
                vec![1.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap();
        let jumps = phi.jump_set();
        assert_eq!(jumps.len(), 2);
        assert_eq!(jumps[0].location, 0.0);
        assert_eq!(jumps[1].location, 2.0);
        let q = QuadratureConfig::default();
        assert_relative_eq!(
            total_variation(&phi, &q).unwrap(),
            2.0 * 2.0_f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn composite_jumps_include_smooth_offset() {
        let steps = StepData::new(vec![0.0, PI], vec![vec![1.0], vec![0.0]]).unwrap();
        let smooth = TrigData::new(vec![TrigSeries::new(0.5, vec![(0.25, 0.0)]).unwrap()]).unwrap();
        let phi = BoundaryMap::composite(steps, smooth).unwrap();
        let jumps = phi.jump_set();
        assert_eq!(jumps.len(), 2);
        // At t = 0 the smooth part adds 0.75 to both one-sided limits.
        assert_relative_eq!(jumps[0].left_value[0], 0.75);
        assert_relative_eq!(jumps[0].right_value[0], 1.75);
        assert_relative_eq!(jumps[0].magnitude, 1.0);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(BoundaryMap::piecewise_constant(vec![1.0, 0.5], vec![vec![0.0], vec![1.0]]).is_err());
        assert!(BoundaryMap::piecewise_constant(vec![0.0, TAU], vec![vec![0.0], vec![1.0]]).is_err());
        assert!(
            BoundaryMap::piecewise_constant(vec![0.0], vec![vec![f64::NAN]]).is_err(),
            "non-finite values must be rejected"
        );
        assert!(TrigSeries::new(f64::INFINITY, vec![]).is_err());
        assert!(BoundaryMap::piecewise_constant(
            vec![0.0, 1.0],
            vec![vec![0.0], vec![1.0, 2.0]]
        )
        .is_err());
    }

    #[test]
    fn value_at_is_right_continuous() {
        let phi = polygon_boundary(&square_angles()).unwrap();
        assert_eq!(phi.value_at(0.0), vec![1.0, 0.0]);
        assert_eq!(phi.value_at(FRAC_PI_2), vec![FRAC_PI_2.cos(), 1.0]);
        // Just before 2π we are on the last piece.
        assert_eq!(phi.value_at(TAU - 1e-9), vec![(1.5 * PI).cos(), -1.0]);
    }

    #[test]
    fn refinement_does_not_change_step_variation() {
        let phi = polygon_boundary(&square_angles()).unwrap();
        let coarse = QuadratureConfig::default().with_angular_nodes(64);
        let fine = QuadratureConfig::default().with_angular_nodes(8192);
        assert_eq!(
            total_variation(&phi, &coarse).unwrap(),
            total_variation(&phi, &fine).unwrap()
        );
    }

    #[test]
    fn fourier_variation_converges_under_refinement() {
        let phi = BoundaryMap::fourier(vec![
            TrigSeries::new(0.3, vec![(1.0, 0.2), (0.1, -0.4)]).unwrap(),
            TrigSeries::new(-0.1, vec![(0.0, 0.9), (0.3, 0.05)]).unwrap(),
        ])
        .unwrap();
        let a = total_variation(&phi, &QuadratureConfig::default().with_angular_nodes(256)).unwrap();
        let b = total_variation(&phi, &QuadratureConfig::default().with_angular_nodes(1024)).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn step_variation_equals_jump_sum(
            angles in proptest::collection::vec(0.0..TAU - 1e-3, 3..7),
            coords in proptest::collection::vec(-2.0..2.0f64, 6..14),
        ) {
            let mut bps: Vec<f64> = angles;
            bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
            bps.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
            prop_assume!(bps.len() >= 3);
            let n = bps.len();
            prop_assume!(coords.len() >= 2 * n);
            let values: Vec<Vec<f64>> =
                (0..n).map(|k| vec![coords[2 * k], coords[2 * k + 1]]).collect();
            let phi = BoundaryMap::piecewise_constant(bps, values).unwrap();
            let q = QuadratureConfig::default();
            let tv = total_variation(&phi, &q).unwrap();
            let jump_sum: f64 = phi.jump_set().iter().map(|j| j.magnitude).sum();
            prop_assert!((tv - jump_sum).abs() <= 1e-12 * (1.0 + tv));
        }

        #[test]
        fn variation_is_rotation_invariant(c in 0.0..TAU) {
            let phi = polygon_boundary(&square_angles()).unwrap();
            let q = QuadratureConfig::default();
            let tv = total_variation(&phi, &q).unwrap();
            let tv_rot = total_variation(&phi.rotated(c), &q).unwrap();
            prop_assert!((tv - tv_rot).abs() <= 1e-10 * (1.0 + tv));

            let smooth = BoundaryMap::fourier(vec![
                TrigSeries::new(0.1, vec![(0.7, -0.2), (0.0, 0.3)]).unwrap(),
                TrigSeries::new(0.0, vec![(0.1, 0.4)]).unwrap(),
            ]).unwrap();
            let tv_s = total_variation(&smooth, &q).unwrap();
            let tv_s_rot = total_variation(&smooth.rotated(c), &q).unwrap();
            prop_assert!((tv_s - tv_s_rot).abs() <= 1e-8 * (1.0 + tv_s));
        }
    }
}
