//! Geometric functionals of harmonic disk surfaces and the inequality
//! reports built from them.
//!
//! The quantities:
//!
//! * [`circle_image_length`] — `|Γ_r| = ∫ |∂_θ τ(re^{iθ})| dθ`, the length
//!   of the image of the circle of radius `r`. Monotone in `r` for
//!   harmonic surfaces and bounded by the boundary length.
//! * [`h1_seminorm`] — `sup_r |Γ_r|`, which equals the boundary length.
//!   For boundary-driven surfaces that length is the total variation of
//!   the data, available exactly; otherwise the sweep limit stands in.
//! * [`area`] — `∫ J dA` in polar coordinates, radial panels split at the
//!   standard near-boundary schedule.
//! * [`diameter_image_length`] — the length of the image of a diameter.
//! * inequality reports — isoperimetric (`4π·area ≤ length²`) and the
//!   half-perimeter bound on diameter images.
//! * [`ellipe_incomplete`] and [`sharpness_sweep`] — the elliptic-integral
//!   form of the tilted-disk perimeter, whose diameter/perimeter ratio
//!   climbs to 1/2.
//! * [`geodesic_diameter_estimate`] — shortest paths on a chord-weighted
//!   polar mesh graph, an upper-bound-style certificate for the geodesic
//!   diameter against half the boundary length.

use serde::Serialize;

use crate::boundary::total_variation;
use crate::diffgeo::{self, DEGENERACY_THRESHOLD};
use crate::error::{Error, Result};
use crate::poisson::DiskPoint;
use crate::quadrature::{self, QuadratureConfig, TAU};
use crate::surfaces::HarmonicSurface;
use crate::vecn;

/// Radial schedule used for boundary-limit estimates and area panels.
pub const LIMIT_RADII: [f64; 3] = [0.9, 0.99, 0.999];

/// Lengths of circle images over an increasing radius list.
#[derive(Debug, Clone, Serialize)]
pub struct LengthSweep {
    pub radii: Vec<f64>,
    pub lengths: Vec<f64>,
    pub error_estimates: Vec<f64>,
    /// Last refined value; the sweep's stand-in for `lim |Γ_r|`.
    pub limit_estimate: f64,
    /// Total variation of the boundary data, when the surface has one.
    pub tv_reference: Option<f64>,
}

impl LengthSweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,length,tv_reference\n");
        let tv = self
            .tv_reference
            .map(|v| v.to_string())
            .unwrap_or_default();
        for (r, l) in self.radii.iter().zip(&self.lengths) {
            out.push_str(&format!("{r},{l},{tv}\n"));
        }
        out
    }
}

/// Outcome of checking `lhs ≤ rhs` with a numerical error budget.
/// `satisfied` is exactly `deficit ≥ −error_estimate`.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub deficit: f64,
    pub satisfied: bool,
    pub error_estimate: f64,
}

impl InequalityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, error_estimate: f64) -> Self {
        let deficit = rhs - lhs;
        InequalityReport {
            name: name.into(),
            lhs,
            rhs,
            deficit,
            satisfied: deficit >= -error_estimate,
            error_estimate,
        }
    }
}

fn check_radius_open(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius must lie in (0, 1), got {r}")));
    }
    Ok(())
}

fn circle_length_raw(
    s: &HarmonicSurface,
    r: f64,
    q: &QuadratureConfig,
) -> Result<quadrature::QuadResult> {
    q.check()?;
    check_radius_open(r)?;
    let result = quadrature::periodic_refined(q, |t| {
        vecn::norm(&s.d_theta(DiskPoint::new(r, t).expect("interior radius")))
    });
    Ok(result)
}

/// `∫_0^{2π} |∂_θ τ(re^{iθ})| dθ`.
pub fn circle_image_length(s: &HarmonicSurface, r: f64, q: &QuadratureConfig) -> Result<f64> {
    circle_length_raw(s, r, q)?.require_converged(q.abs_tol)
}

/// Circle-image lengths over `radii`, with a consistency check that the
/// sequence is nondecreasing up to the quadrature error budget (it must
/// be, for a harmonic parametrization; a violation flags a quadrature
/// failure).
pub fn length_sweep(s: &HarmonicSurface, radii: &[f64], q: &QuadratureConfig) -> Result<LengthSweep> {
    if radii.is_empty() {
        return Err(Error::InvalidInput("length sweep needs at least one radius".into()));
    }
    for w in radii.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput("sweep radii must be increasing".into()));
        }
    }
    let mut lengths = Vec::with_capacity(radii.len());
    let mut errors = Vec::with_capacity(radii.len());
    for &r in radii {
        let res = circle_length_raw(s, r, q)?;
        lengths.push(res.require_converged(q.abs_tol)?);
        errors.push(res.error_estimate);
    }
    for i in 0..lengths.len() - 1 {
        let slack = errors[i] + errors[i + 1] + 10.0 * q.abs_tol;
        if lengths[i + 1] < lengths[i] - slack {
            return Err(Error::Inconsistency(format!(
                "circle-image length decreased from {} (r={}) to {} (r={})",
                lengths[i],
                radii[i],
                lengths[i + 1],
                radii[i + 1]
            )));
        }
    }
    let tv_reference = match s.boundary() {
        Some(phi) => Some(total_variation(phi, q)?),
        None => None,
    };
    Ok(LengthSweep {
        limit_estimate: *lengths.last().unwrap(),
        radii: radii.to_vec(),
        lengths,
        error_estimates: errors,
        tv_reference,
    })
}

/// `sup_r |Γ_r|`, the boundary length.
///
/// Boundary-driven surfaces return the total variation of their data —
/// the exact value the sweep limit converges to. Other sources estimate
/// the limit by the last value of the standard radial schedule.
pub fn h1_seminorm(s: &HarmonicSurface, q: &QuadratureConfig) -> Result<f64> {
    Ok(boundary_length(s, q)?.0)
}

/// Boundary length `|Γ|` with an error estimate: `(TV, quadrature error)`
/// for boundary-driven surfaces, `(last sweep value, last increment)`
/// otherwise.
pub fn boundary_length(s: &HarmonicSurface, q: &QuadratureConfig) -> Result<(f64, f64)> {
    if let Some(phi) = s.boundary() {
        let tv = total_variation(phi, q)?;
        return Ok((tv, q.abs_tol));
    }
    let mut last = 0.0;
    let mut prev = None;
    for &r in &LIMIT_RADII {
        prev = Some(last);
        last = circle_image_length(s, r, q)?;
    }
    let increment = prev.map(|p| (last - p).abs()).unwrap_or(f64::INFINITY);
    Ok((last, increment))
}

/// Area estimate with the refinement increment as error bar.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AreaEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// `∫∫_{|z|<r} J dA` by polar tensor quadrature: per-radius angular
/// integrals (periodic rule) integrated radially by composite
/// Gauss-Legendre with panels split at the near-boundary schedule, where
/// step boundary data concentrates the Jacobian.
///
/// Accuracy shortfalls are reported through the estimate, not raised:
/// step data makes the Jacobian integrably singular at the jump
/// prevertices, so rings hugging the boundary cannot meet an absolute
/// tolerance at any sane node budget. Their achieved errors are weighted
/// into `error_estimate`, which downstream reports consume as the error
/// budget.
pub fn area_estimate(s: &HarmonicSurface, r: f64, q: &QuadratureConfig) -> Result<AreaEstimate> {
    q.check()?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("area radius must lie in (0, 1], got {r}")));
    }
    let mut breaks: Vec<f64> = vec![0.0];
    for b in LIMIT_RADII {
        if b < r {
            breaks.push(b);
        }
    }
    breaks.push(r);
    let panels: Vec<(f64, f64)> = breaks.windows(2).map(|w| (w[0], w[1])).collect();

    // Rings close to the boundary would refine forever on jump data; cap
    // their budget and account the achieved error instead.
    let ring_q = QuadratureConfig {
        max_refinements: q.max_refinements.min(4),
        ..q.clone()
    };
    let ring_mass = |rho: f64| -> Result<(f64, f64)> {
        if rho == 0.0 {
            return Ok((0.0, 0.0));
        }
        let res = quadrature::periodic_refined(&ring_q, |t| {
            let z = DiskPoint::new(rho, t).expect("interior radius");
            diffgeo::fundamental_form(s, z)
                .jacobian()
                .map(|j| j * rho)
                .unwrap_or(f64::NAN)
        });
        if !res.value.is_finite() {
            return Err(Error::Inconsistency(
                "Jacobian became non-finite inside the area integral".into(),
            ));
        }
        Ok((res.value, res.error_estimate))
    };

    // Gauss-Legendre nodes stay strictly inside each panel, so the
    // integrand is never evaluated at r = 1. Radial subdivisions taper
    // toward the boundary where panels are thin.
    let (nodes, weights) = quadrature::gauss_legendre(16);
    let base_subdiv = (q.radial_nodes / (16 * 4)).clamp(2, 8);
    let integrate = |subdivisions: &[usize]| -> Result<(f64, f64)> {
        let mut total = 0.0;
        let mut ring_err = 0.0;
        for (&(a, b), &subdiv) in panels.iter().zip(subdivisions) {
            let width = (b - a) / subdiv as f64;
            for k in 0..subdiv {
                let lo = a + k as f64 * width;
                let half = 0.5 * width;
                let mid = lo + half;
                for (x, w) in nodes.iter().zip(&weights) {
                    let (v, e) = ring_mass(mid + half * x)?;
                    total += w * half * v;
                    ring_err += w * half * e;
                }
            }
        }
        Ok((total, ring_err))
    };

    let fine: Vec<usize> = panels
        .iter()
        .enumerate()
        .map(|(i, _)| (base_subdiv >> i).max(2))
        .collect();
    let coarse: Vec<usize> = fine.iter().map(|s| (s / 2).max(1)).collect();
    let (coarse_value, _) = integrate(&coarse)?;
    let (value, ring_err) = integrate(&fine)?;
    let radial_err = (value - coarse_value).abs();
    let error_estimate = radial_err + ring_err;
    Ok(AreaEstimate {
        value,
        error_estimate,
        converged: error_estimate <= q.abs_tol,
    })
}

/// Area value; see [`area_estimate`] for the error bar.
pub fn area(s: &HarmonicSurface, r: f64, q: &QuadratureConfig) -> Result<f64> {
    Ok(area_estimate(s, r, q)?.value)
}

/// `4π·|Σ| ≤ |Γ|²` with the numerical error budget on both sides.
pub fn isoperimetric_report(s: &HarmonicSurface, q: &QuadratureConfig) -> Result<InequalityReport> {
    let area = area_estimate(s, 1.0, q)?;
    let (len, len_err) = boundary_length(s, q)?;
    let lhs = 2.0 * TAU * area.value;
    let rhs = len * len;
    let err = 2.0 * TAU * area.error_estimate + 2.0 * len * len_err + 1e-12;
    Ok(InequalityReport::new("isoperimetric", lhs, rhs, err))
}

/// `∫_{−1}^{1} |∂_r τ(re^{is₀})| dr`, the length of the image of the
/// diameter through direction `s₀`, split at `r = 0`.
pub fn diameter_image_length(s: &HarmonicSurface, direction: f64, q: &QuadratureConfig) -> Result<f64> {
    q.check()?;
    if !direction.is_finite() {
        return Err(Error::InvalidInput("direction must be finite".into()));
    }
    let (c, sn) = (direction.cos(), direction.sin());
    let speed = |t: f64| {
        let (fx, fy) = s.partials_xy(t * c, t * sn);
        let mut sum = 0.0;
        for (a, b) in fx.iter().zip(&fy) {
            let d = c * a + sn * b;
            sum += d * d;
        }
        sum.sqrt()
    };
    // Endpoints shrink inward so evaluators stay on the open disk; the
    // trimmed mass is of order the trim itself.
    let trim = 1e-9;
    let tol = 0.5 * q.abs_tol;
    let left = quadrature::adaptive_interval(speed, -1.0 + trim, 0.0, tol, 48);
    let right = quadrature::adaptive_interval(speed, 0.0, 1.0 - trim, tol, 48);
    Ok(left.require_converged(tol)? + right.require_converged(tol)?)
}

/// Diameter-image length against half the boundary length.
pub fn riesz_zygmund_report(
    s: &HarmonicSurface,
    direction: f64,
    q: &QuadratureConfig,
) -> Result<InequalityReport> {
    let lhs = diameter_image_length(s, direction, q)?;
    let (len, len_err) = boundary_length(s, q)?;
    let rhs = 0.5 * len;
    let err = 0.5 * len_err + 10.0 * q.abs_tol;
    Ok(InequalityReport::new(
        format!("riesz-zygmund[s0={direction}]"),
        lhs,
        rhs,
        err,
    ))
}

/// Incomplete elliptic integral of the second kind,
/// `E(φ | m) = ∫_0^φ sqrt(1 − m·sin²θ) dθ` (parameter convention), by
/// adaptive quadrature of the defining integrand.
pub fn ellipe_incomplete(amplitude: f64, parameter: f64, q: &QuadratureConfig) -> Result<f64> {
    q.check()?;
    if !amplitude.is_finite() || !parameter.is_finite() {
        return Err(Error::InvalidInput("elliptic arguments must be finite".into()));
    }
    if amplitude == 0.0 {
        return Ok(0.0);
    }
    if amplitude < 0.0 {
        return Ok(-ellipe_incomplete(-amplitude, parameter, q)?);
    }
    // The integrand needs 1 − m·sin²θ ≥ 0 along the path.
    if parameter > 1.0 {
        let reach = (1.0 / parameter.sqrt()).asin();
        if amplitude > reach + 1e-15 {
            return Err(Error::Domain(format!(
                "integrand turns imaginary beyond φ = {reach:.6}, got amplitude {amplitude}"
            )));
        }
    }
    let tol = q.abs_tol.min(1e-10);
    let result = quadrature::adaptive_interval(
        |t| (1.0 - parameter * t.sin().powi(2)).max(0.0).sqrt(),
        0.0,
        amplitude,
        tol,
        52,
    );
    result.require_converged(tol)
}

/// One row of the sharpness table for the tilted-disk family.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SharpnessRow {
    pub m: f64,
    /// Longest diameter image, `2·sqrt(1+2m²)` (attained at s₀ = π/4).
    pub diameter: f64,
    /// Perimeter `2(E(π/4 | −2m²) + E(3π/4 | −2m²))`.
    pub perimeter: f64,
    pub ratio: f64,
}

/// Diameter/perimeter ratios of the tilted-disk family; the ratios climb
/// toward 1/2 as the slope grows, which is what makes the half-perimeter
/// bound sharp.
pub fn sharpness_sweep(slopes: &[f64], q: &QuadratureConfig) -> Result<Vec<SharpnessRow>> {
    slopes
        .iter()
        .map(|&m| {
            if !(m >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "tilted-disk slope must be nonnegative, got {m}"
                )));
            }
            let p = -2.0 * m * m;
            let perimeter = 2.0
                * (ellipe_incomplete(std::f64::consts::FRAC_PI_4, p, q)?
                    + ellipe_incomplete(3.0 * std::f64::consts::FRAC_PI_4, p, q)?);
            let diameter = 2.0 * (1.0 + 2.0 * m * m).sqrt();
            Ok(SharpnessRow {
                m,
                diameter,
                perimeter,
                ratio: diameter / perimeter,
            })
        })
        .collect()
}

pub fn sharpness_csv(rows: &[SharpnessRow]) -> String {
    let mut out = String::from("m,diameter,perimeter,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.m, r.diameter, r.perimeter, r.ratio));
    }
    out
}

// ---------------------------------------------------------------------------
// Geodesic diameter over a polar mesh graph.
// ---------------------------------------------------------------------------

/// Polar mesh resolution for the geodesic estimator.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeshSpec {
    pub radial: usize,
    pub angular: usize,
    /// Radius of the outermost ring (inside the open disk).
    pub outer_radius: f64,
    /// Index window for graph edges: vertices within this many rings and
    /// sectors are joined. A window of 2 keeps the metric distortion of
    /// graph paths near 2%.
    pub neighbor_window: usize,
    /// Every `source_stride`-th boundary-ring vertex seeds a shortest-path
    /// pass.
    pub source_stride: usize,
}

impl Default for MeshSpec {
    fn default() -> Self {
        MeshSpec {
            radial: 64,
            angular: 128,
            outer_radius: 0.999,
            neighbor_window: 2,
            source_stride: 4,
        }
    }
}

impl MeshSpec {
    fn check(&self) -> Result<()> {
        if self.radial < 2 || self.angular < 8 {
            return Err(Error::InvalidInput(format!(
                "mesh needs radial >= 2 and angular >= 8, got {}x{}",
                self.radial, self.angular
            )));
        }
        if !(self.outer_radius > 0.0 && self.outer_radius < 1.0) {
            return Err(Error::InvalidInput(format!(
                "mesh outer radius must lie in (0, 1), got {}",
                self.outer_radius
            )));
        }
        if self.neighbor_window == 0 || self.source_stride == 0 {
            return Err(Error::InvalidInput(
                "neighbor window and source stride must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Geodesic-diameter certificate from mesh shortest paths.
///
/// `lower` is the max over sampled source pairs, which under-samples the
/// true supremum, while every graph path over-estimates the pointwise
/// intrinsic distance; both caveats are carried as flags.
#[derive(Debug, Clone, Serialize)]
pub struct DiameterEstimate {
    pub lower: f64,
    pub graph_paths_overestimate_pointwise: bool,
    pub pair_sampling_underestimates_sup: bool,
    /// Mesh vertices whose discriminant falls below the branch-point
    /// threshold. Nonzero counts mean the regular-surface hypothesis of
    /// the diameter bound is not certified.
    pub degenerate_vertices: usize,
    pub vertex_count: usize,
    pub source_count: usize,
    pub mesh: MeshSpec,
}

/// Max-over-sources shortest-path distance on the chord-weighted mesh
/// graph; checked against `½·boundary length` by callers.
pub fn geodesic_diameter_estimate(
    s: &HarmonicSurface,
    mesh: MeshSpec,
    _q: &QuadratureConfig,
) -> Result<DiameterEstimate> {
    mesh.check()?;
    let (radial, angular) = (mesh.radial, mesh.angular);
    let vertex_count = 1 + radial * angular;
    let index = |ring: usize, sector: usize| 1 + (ring - 1) * angular + (sector % angular);

    let mut points = Vec::with_capacity(vertex_count);
    let mut degenerate_vertices = 0usize;
    points.push(s.value(DiskPoint::center()));
    for ring in 1..=radial {
        let r = mesh.outer_radius * ring as f64 / radial as f64;
        for sector in 0..angular {
            let z = DiskPoint::new(r, TAU * sector as f64 / angular as f64)
                .expect("mesh point inside the disk");
            if diffgeo::fundamental_form(s, z).discriminant() < DEGENERACY_THRESHOLD {
                degenerate_vertices += 1;
            }
            points.push(s.value(z));
        }
    }

    // Undirected adjacency with chord weights.
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); vertex_count];
    let connect = |a: usize, b: usize, adjacency: &mut Vec<Vec<(usize, f64)>>| {
        let w = vecn::dist(&points[a], &points[b]);
        adjacency[a].push((b, w));
        adjacency[b].push((a, w));
    };
    let window = mesh.neighbor_window.min(radial) as i64;
    for ring in 1..=radial {
        for sector in 0..angular {
            let a = index(ring, sector);
            for dr in 0..=window {
                for ds in -window..=window {
                    if dr == 0 && ds <= 0 {
                        continue; // each undirected edge once
                    }
                    let nr = ring as i64 + dr;
                    if nr < 1 || nr > radial as i64 {
                        continue;
                    }
                    let ns = (sector as i64 + ds).rem_euclid(angular as i64) as usize;
                    connect(a, index(nr as usize, ns), &mut adjacency);
                }
            }
        }
    }
    for ring in 1..=window as usize {
        for sector in 0..angular {
            connect(0, index(ring, sector), &mut adjacency);
        }
    }

    let sources: Vec<usize> = (0..angular)
        .step_by(mesh.source_stride)
        .map(|sector| index(radial, sector))
        .collect();
    let mut best = 0.0f64;
    for &src in &sources {
        let dist = dijkstra(&adjacency, src);
        for d in &dist {
            if !d.is_finite() {
                return Err(Error::Inconsistency(
                    "mesh graph is disconnected; this indicates an internal bug".into(),
                ));
            }
            best = best.max(*d);
        }
    }

    Ok(DiameterEstimate {
        lower: best,
        graph_paths_overestimate_pointwise: true,
        pair_sampling_underestimates_sup: true,
        degenerate_vertices,
        vertex_count,
        source_count: sources.len(),
        mesh,
    })
}

#[derive(PartialEq)]
struct HeapEntry {
    cost: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Reversed on cost for a min-heap; costs are always finite.
        other
            .cost
            .partial_cmp(&self.cost)
            .expect("finite edge weights")
            .then_with(|| other.node.cmp(&self.node))
    }
}

fn dijkstra(adjacency: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adjacency.len()];
    dist[source] = 0.0;
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(HeapEntry {
        cost: 0.0,
        node: source,
    });
    while let Some(HeapEntry { cost, node }) = heap.pop() {
        if cost > dist[node] {
            continue;
        }
        for &(next, weight) in &adjacency[node] {
            let candidate = cost + weight;
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(HeapEntry {
                    cost: candidate,
                    node: next,
                });
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::builtins;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn circle_image_length_of_identity_is_circumference() {
        let q = QuadratureConfig::default();
        let s = builtins::identity();
        for r in [0.2, 0.5, 0.9] {
            assert_relative_eq!(
                circle_image_length(&s, r, &q).unwrap(),
                TAU * r,
                max_relative = 1e-10
            );
        }
        assert!(circle_image_length(&s, 1.0, &q).is_err());
    }

    #[test]
    fn tilted_disk_circle_length_reduces_to_identity_at_zero_slope() {
        let q = QuadratureConfig::default();
        let s = builtins::tilted(0.0);
        assert_relative_eq!(
            circle_image_length(&s, 0.7, &q).unwrap(),
            TAU * 0.7,
            max_relative = 1e-10
        );
    }

    #[test]
    fn square_circle_length_approaches_total_variation() {
        let q = QuadratureConfig::default();
        let s = builtins::square();
        let len = circle_image_length(&s, 0.999, &q).unwrap();
        let tv = 4.0 * SQRT2;
        assert!(
            (len - tv).abs() / tv < 0.01,
            "length {len} should be within 1% of {tv}"
        );
        assert!(len <= tv + 1e-9);
    }

    #[test]
    fn sweeps_are_monotone_and_converge_to_tv() {
        let q = QuadratureConfig::default();
        let radii = [0.9, 0.99, 0.999];

        let id = length_sweep(&builtins::identity(), &radii, &q).unwrap();
        for (r, l) in id.radii.iter().zip(&id.lengths) {
            assert_relative_eq!(*l, TAU * r, max_relative = 1e-9);
        }
        let tv = id.tv_reference.unwrap();
        assert_relative_eq!(tv, TAU, epsilon = 1e-9);
        assert!((id.limit_estimate - tv).abs() / tv < 0.01);

        for (s, tv) in [
            (builtins::square(), 4.0 * SQRT2),
            (builtins::triangle(), 3.0 * 3.0_f64.sqrt()),
        ] {
            let sweep = length_sweep(&s, &radii, &q).unwrap();
            for w in sweep.lengths.windows(2) {
                assert!(w[1] >= w[0] - 1e-9);
            }
            assert_relative_eq!(sweep.tv_reference.unwrap(), tv, max_relative = 1e-12);
            assert!((sweep.limit_estimate - tv).abs() / tv < 0.01);
        }
    }

    #[test]
    fn sweep_csv_round_trip() {
        let q = QuadratureConfig::default();
        let sweep = length_sweep(&builtins::identity(), &[0.5, 0.9], &q).unwrap();
        let csv = sweep.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "r,length,tv_reference");
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn h1_seminorm_values() {
        let q = QuadratureConfig::default();
        assert_relative_eq!(h1_seminorm(&builtins::identity(), &q).unwrap(), TAU, epsilon = 1e-9);
        assert_relative_eq!(
            h1_seminorm(&builtins::square(), &q).unwrap(),
            4.0 * SQRT2,
            max_relative = 1e-12
        );
        let constant =
            HarmonicSurface::from_boundary(crate::BoundaryMap::constant(vec![1.0, 2.0]).unwrap(), q.clone())
                .unwrap();
        assert_eq!(h1_seminorm(&constant, &q).unwrap(), 0.0);
    }

    #[test]
    fn areas_of_known_surfaces() {
        let q = QuadratureConfig::default();
        // Identity: exactly π.
        let id = area_estimate(&builtins::identity(), 1.0, &q).unwrap();
        assert_abs_diff_eq!(id.value, PI, epsilon = 1e-9);

        // Constant Jacobian sqrt(3) over the full disk.
        let tilted = area(&builtins::tilted(1.0), 1.0, &q).unwrap();
        assert_relative_eq!(tilted, PI * 3.0_f64.sqrt(), max_relative = 1e-9);

        // The square image has area 2.
        let sq = area(&builtins::square(), 1.0, &q).unwrap();
        assert!((sq - 2.0).abs() / 2.0 < 0.01, "square area {sq}");
    }

    #[test]
    fn isoperimetric_reports() {
        let q = QuadratureConfig::default();
        let id = isoperimetric_report(&builtins::identity(), &q).unwrap();
        assert!(id.satisfied);
        assert!(id.deficit.abs() <= 1e-8, "identity deficit {}", id.deficit);

        let sq = isoperimetric_report(&builtins::square(), &q).unwrap();
        assert!(sq.satisfied);
        let expected = 32.0 - 8.0 * PI;
        assert!(
            (sq.deficit - expected).abs() / expected < 0.01,
            "square deficit {} vs {expected}",
            sq.deficit
        );

        // A minimal patch away from the flat case is strictly inside.
        let enneper_half = builtins::enneper().rescaled(0.5).unwrap();
        let en = isoperimetric_report(&enneper_half, &q).unwrap();
        assert!(en.satisfied && en.deficit >= 0.0);
    }

    #[test]
    fn diameter_image_lengths() {
        let q = QuadratureConfig::default();
        for s0 in [0.0, 1.0, 4.0] {
            assert_relative_eq!(
                diameter_image_length(&builtins::identity(), s0, &q).unwrap(),
                2.0,
                max_relative = 1e-8
            );
        }
        let m = 10.0;
        assert_relative_eq!(
            diameter_image_length(&builtins::tilted(m), FRAC_PI_4, &q).unwrap(),
            2.0 * (1.0 + 2.0 * m * m).sqrt(),
            max_relative = 1e-8
        );
        // cos s + sin s = 0 kills the slope contribution.
        assert_relative_eq!(
            diameter_image_length(&builtins::tilted(m), 3.0 * FRAC_PI_4, &q).unwrap(),
            2.0,
            max_relative = 1e-8
        );
    }

    #[test]
    fn riesz_zygmund_reports() {
        let q = QuadratureConfig::default();
        let id = riesz_zygmund_report(&builtins::identity(), 0.3, &q).unwrap();
        assert!(id.satisfied);
        assert_relative_eq!(id.lhs, 2.0, max_relative = 1e-8);
        assert_relative_eq!(id.deficit, PI - 2.0, max_relative = 1e-7);

        let tl = riesz_zygmund_report(&builtins::tilted(10.0), FRAC_PI_4, &q).unwrap();
        assert!(tl.satisfied, "deficit {}", tl.deficit);

        let constant = HarmonicSurface::from_boundary(
            crate::BoundaryMap::constant(vec![0.0, 0.0]).unwrap(),
            q.clone(),
        )
        .unwrap();
        let cr = riesz_zygmund_report(&constant, 0.0, &q).unwrap();
        assert!(cr.satisfied);
        assert_abs_diff_eq!(cr.lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cr.rhs, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn elliptic_integral_basics() {
        let q = QuadratureConfig::default();
        for phi in [0.3, 1.0, FRAC_PI_2] {
            assert_relative_eq!(ellipe_incomplete(phi, 0.0, &q).unwrap(), phi, epsilon = 1e-12);
        }
        assert_relative_eq!(
            ellipe_incomplete(FRAC_PI_2, 1.0, &q).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        // Odd in the amplitude.
        assert_relative_eq!(
            ellipe_incomplete(-0.7, -3.0, &q).unwrap(),
            -ellipe_incomplete(0.7, -3.0, &q).unwrap(),
            epsilon = 1e-12
        );
        assert!(ellipe_incomplete(FRAC_PI_2, 4.0, &q).is_err());
    }

    #[test]
    fn elliptic_perimeter_identity_for_tilted_disks() {
        let q = QuadratureConfig::default();
        for m in [1.0, 10.0] {
            let p = -2.0 * m * m;
            let elliptic = 2.0
                * (ellipe_incomplete(FRAC_PI_4, p, &q).unwrap()
                    + ellipe_incomplete(3.0 * FRAC_PI_4, p, &q).unwrap());
            // Independent oracle: the boundary speed integrated by the
            // periodic rule.
            let direct = quadrature::periodic_refined(&q, |t| {
                (1.0 + m * m * (1.0 - (2.0 * t).sin())).sqrt()
            });
            assert!(direct.converged);
            assert_abs_diff_eq!(elliptic, direct.value, epsilon = 1e-8);
        }
    }

    #[test]
    fn sharpness_ratios_climb_to_one_half() {
        let q = QuadratureConfig::default();
        let rows = sharpness_sweep(&[0.0, 1.0, 10.0, 100.0, 1000.0], &q).unwrap();
        assert_relative_eq!(rows[0].ratio, 1.0 / PI, max_relative = 1e-10);
        for w in rows.windows(2) {
            assert!(w[1].ratio >= w[0].ratio - 1e-12);
        }
        let last = rows.last().unwrap().ratio;
        assert!((0.49..=0.5).contains(&last), "ratio(1000) = {last}");
        assert!(sharpness_sweep(&[-1.0], &q).is_err());
    }

    #[test]
    fn geodesic_estimates() {
        let q = QuadratureConfig::default();
        let mesh = MeshSpec {
            radial: 32,
            angular: 64,
            ..MeshSpec::default()
        };

        // Flat disk: geodesics are chords, diameter 2.
        let id = geodesic_diameter_estimate(&builtins::identity(), mesh, &q).unwrap();
        assert!(id.lower <= PI, "flat estimate {}", id.lower);
        assert!((1.9..2.1).contains(&id.lower), "flat estimate {}", id.lower);
        assert_eq!(id.degenerate_vertices, 0);
        assert!(id.graph_paths_overestimate_pointwise && id.pair_sampling_underestimates_sup);

        // Tilted plane: diameter 2·sqrt(1+2m²), below half the perimeter.
        let m = 10.0;
        let tl = geodesic_diameter_estimate(&builtins::tilted(m), mesh, &q).unwrap();
        let exact = 2.0 * (1.0 + 2.0 * m * m).sqrt() * mesh.outer_radius;
        assert!(tl.lower >= exact - 1e-9);
        assert!(tl.lower <= exact * 1.03, "estimate {} vs exact {exact}", tl.lower);
    }

    #[test]
    fn geodesic_estimate_decreases_under_mesh_refinement() {
        let q = QuadratureConfig::default();
        let mut prev = f64::INFINITY;
        for (radial, angular) in [(8, 16), (16, 32), (32, 64)] {
            let mesh = MeshSpec {
                radial,
                angular,
                ..MeshSpec::default()
            };
            let est = geodesic_diameter_estimate(&builtins::identity(), mesh, &q)
                .unwrap()
                .lower;
            assert!(est <= prev + 1e-3, "estimate {est} after {prev}");
            prev = est;
        }
        assert!((prev - 2.0 * 0.999).abs() < 0.05);
    }

    #[test]
    fn mesh_spec_validation() {
        let q = QuadratureConfig::default();
        let bad = MeshSpec {
            radial: 1,
            ..MeshSpec::default()
        };
        assert!(geodesic_diameter_estimate(&builtins::identity(), bad, &q).is_err());
        let bad_r = MeshSpec {
            outer_radius: 1.0,
            ..MeshSpec::default()
        };
        assert!(geodesic_diameter_estimate(&builtins::identity(), bad_r, &q).is_err());
    }
}
