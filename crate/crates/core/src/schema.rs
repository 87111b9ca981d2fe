//! JSON documents describing boundary data and surfaces.
//!
//! A document is `{ "dimension": n, "pieces": [ … ] }`. Boundary pieces:
//!
//! ```json
//! { "type": "pwc", "breakpoints": [0.0, 1.5707], "values": [[1,0],[0,1]] }
//! { "type": "fourier", "coefficients": [[a0, a1, b1, a2, b2], …] }
//! ```
//!
//! Angles are radians, values arrays of `n` numbers, and the `fourier`
//! rows interleave cosine/sine coefficients per component. Surface
//! documents reuse the same format extended with surface-level pieces:
//!
//! ```json
//! { "type": "tilted", "m": 2.0 }
//! { "type": "weierstrass", "coefficients": [[[re, im], …], …] }
//! { "type": "lift", "eps": 0.1, "r": 0.9, "inner": { … } }
//! ```
//!
//! A surface document holds either boundary pieces (pwc/fourier, any mix)
//! or exactly one surface-level piece.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryMap, StepData, TrigData, TrigSeries};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::surfaces::{HarmonicSurface, WeierstrassData};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub pieces: Vec<PieceDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PieceDoc {
    Pwc {
        breakpoints: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
    Fourier {
        /// Per component: `[a0, a1, b1, a2, b2, …]`.
        coefficients: Vec<Vec<f64>>,
    },
    Weierstrass {
        /// Per analytic function: `[[re, im], …]` power-series
        /// coefficients.
        coefficients: Vec<Vec<[f64; 2]>>,
    },
    Tilted {
        m: f64,
    },
    Lift {
        eps: f64,
        r: f64,
        inner: Box<SurfaceDoc>,
    },
}

fn parse_json(text: &str) -> Result<SurfaceDoc> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed document: {e}")))
}

fn trig_from_rows(rows: &[Vec<f64>]) -> Result<TrigData> {
    let components = rows
        .iter()
        .map(|row| {
            if row.is_empty() || row.len() % 2 == 0 {
                return Err(Error::InvalidInput(
                    "fourier rows must look like [a0, a1, b1, …] (odd length)".into(),
                ));
            }
            let a0 = row[0];
            let terms = row[1..]
                .chunks(2)
                .map(|c| (c[0], c[1]))
                .collect::<Vec<_>>();
            TrigSeries::new(a0, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    TrigData::new(components)
}

fn check_dimension(declared: Option<usize>, found: usize) -> Result<()> {
    match declared {
        Some(d) if d != found => Err(Error::InvalidInput(format!(
            "document declares dimension {d} but pieces have dimension {found}"
        ))),
        _ => Ok(()),
    }
}

/// Boundary data from a document containing only pwc/fourier pieces.
pub fn boundary_from_doc(doc: &SurfaceDoc) -> Result<BoundaryMap> {
    let mut steps: Option<StepData> = None;
    let mut smooth: Option<TrigData> = None;
    for piece in &doc.pieces {
        match piece {
            PieceDoc::Pwc { breakpoints, values } => {
                if steps.is_some() {
                    return Err(Error::InvalidInput("more than one pwc piece".into()));
                }
                steps = Some(StepData::new(breakpoints.clone(), values.clone())?);
            }
            PieceDoc::Fourier { coefficients } => {
                if smooth.is_some() {
                    return Err(Error::InvalidInput("more than one fourier piece".into()));
                }
                smooth = Some(trig_from_rows(coefficients)?);
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "boundary documents accept pwc/fourier pieces only, found {other:?}"
                )))
            }
        }
    }
    let map = match (steps, smooth) {
        (Some(st), Some(sm)) => BoundaryMap::composite(st, sm)?,
        (Some(st), None) => {
            let bps = st.breakpoints().to_vec();
            let vals = st.values().to_vec();
            BoundaryMap::piecewise_constant(bps, vals)?
        }
        (None, Some(sm)) => BoundaryMap::fourier(sm.components().to_vec())?,
        (None, None) => return Err(Error::InvalidInput("document has no pieces".into())),
    };
    check_dimension(doc.dimension, map.dimension())?;
    Ok(map)
}

pub fn boundary_from_json(text: &str) -> Result<BoundaryMap> {
    boundary_from_doc(&parse_json(text)?)
}

/// A surface from a document: boundary pieces become the Poisson
/// extension; a single surface-level piece becomes that construction.
pub fn surface_from_doc(doc: &SurfaceDoc, q: &QuadratureConfig) -> Result<HarmonicSurface> {
    let surface_pieces: Vec<&PieceDoc> = doc
        .pieces
        .iter()
        .filter(|p| {
            matches!(
                p,
                PieceDoc::Weierstrass { .. } | PieceDoc::Tilted { .. } | PieceDoc::Lift { .. }
            )
        })
        .collect();
    match surface_pieces.len() {
        0 => {
            let phi = boundary_from_doc(doc)?;
            HarmonicSurface::from_boundary(phi, q.clone())
        }
        1 if doc.pieces.len() == 1 => {
            let surface = match surface_pieces[0] {
                PieceDoc::Tilted { m } => HarmonicSurface::tilted_disk(*m)?,
                PieceDoc::Weierstrass { coefficients } => {
                    let coeffs = coefficients
                        .iter()
                        .map(|row| row.iter().map(|c| Complex64::new(c[0], c[1])).collect())
                        .collect();
                    HarmonicSurface::minimal_from_weierstrass(
                        WeierstrassData::new(coeffs)?,
                        q.clone(),
                    )?
                }
                PieceDoc::Lift { eps, r, inner } => {
                    surface_from_doc(inner, q)?.perturb_lift(*eps, *r)?
                }
                _ => unreachable!(),
            };
            check_dimension(doc.dimension, surface.dimension())?;
            Ok(surface)
        }
        _ => Err(Error::InvalidInput(
            "a surface document holds either boundary pieces or exactly one surface piece".into(),
        )),
    }
}

pub fn surface_from_json(text: &str, q: &QuadratureConfig) -> Result<HarmonicSurface> {
    surface_from_doc(&parse_json(text)?, q)
}

pub fn surface_from_path(path: &std::path::Path, q: &QuadratureConfig) -> Result<HarmonicSurface> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    surface_from_json(&text, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::DiskPoint;
    use approx::assert_abs_diff_eq;

    #[test]
    fn boundary_round_trip_pwc() {
        let text = r#"{
            "dimension": 2,
            "pieces": [
                {"type": "pwc",
                 "breakpoints": [0.0, 1.5707963267948966, 3.141592653589793, 4.71238898038469],
                 "values": [[1,0],[0,1],[-1,0],[0,-1]]}
            ]
        }"#;
        let phi = boundary_from_json(text).unwrap();
        assert_eq!(phi.dimension(), 2);
        assert_eq!(phi.jump_set().len(), 4);
    }

    #[test]
    fn boundary_with_fourier_and_composite() {
        let text = r#"{
            "pieces": [
                {"type": "fourier", "coefficients": [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]}
            ]
        }"#;
        let phi = boundary_from_json(text).unwrap();
        assert!(phi.jump_set().is_empty());

        let composite = r#"{
            "dimension": 1,
            "pieces": [
                {"type": "pwc", "breakpoints": [0.0, 3.0], "values": [[1.0],[0.0]]},
                {"type": "fourier", "coefficients": [[0.5, 0.1, 0.0]]}
            ]
        }"#;
        let phi = boundary_from_json(composite).unwrap();
        assert_eq!(phi.jump_set().len(), 2);
    }

    #[test]
    fn surface_documents() {
        let q = QuadratureConfig::default();
        let tilted = surface_from_json(r#"{"pieces": [{"type": "tilted", "m": 1.0}]}"#, &q).unwrap();
        let z = DiskPoint::new(0.5, 0.0).unwrap();
        let v = tilted.value(z);
        assert_abs_diff_eq!(v[2], v[0] + v[1], epsilon = 1e-15);

        let lift = surface_from_json(
            r#"{"pieces": [{"type": "lift", "eps": 0.5, "r": 0.9,
                 "inner": {"pieces": [{"type": "tilted", "m": 0.0}]}}]}"#,
            &q,
        )
        .unwrap();
        assert_eq!(lift.dimension(), 5);

        let weier = surface_from_json(
            r#"{"pieces": [{"type": "weierstrass",
                 "coefficients": [[[0,0],[1,0]], [[0,0],[0,-1]], [[0,0]]]}]}"#,
            &q,
        )
        .unwrap();
        assert_eq!(weier.dimension(), 3);
    }

    #[test]
    fn bad_documents_are_invalid_input() {
        let q = QuadratureConfig::default();
        assert!(matches!(boundary_from_json("{"), Err(Error::InvalidInput(_))));
        assert!(boundary_from_json(r#"{"pieces": []}"#).is_err());
        // Even-length fourier row.
        assert!(boundary_from_json(
            r#"{"pieces": [{"type": "fourier", "coefficients": [[0.0, 1.0]]}]}"#
        )
        .is_err());
        // Declared dimension mismatch.
        assert!(boundary_from_json(
            r#"{"dimension": 3, "pieces": [{"type": "pwc", "breakpoints": [0.0, 1.0],
                "values": [[1,0],[0,1]]}]}"#
        )
        .is_err());
        // Surface piece mixed with boundary pieces.
        assert!(surface_from_json(
            r#"{"pieces": [{"type": "tilted", "m": 1.0},
                           {"type": "fourier", "coefficients": [[0.0, 1.0, 0.0]]}]}"#,
            &q
        )
        .is_err());
    }
}
