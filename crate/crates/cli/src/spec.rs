//! JSON body and φ specifications.

use std::path::Path;

use anyhow::{bail, Context, Result};
use mvlab::geometry::{ball_approx, generate, Body, BodyGenSpec, BodyKind};
use mvlab::orlicz::OrliczFunction;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Polytope {
        dim: usize,
        vertices: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Box {
        dim: usize,
        sides: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    RegularPolygon {
        dim: usize,
        k: usize,
        #[serde(default = "one")]
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    /// Hull of `±p` over explicit `points`, or over `count` random points from `seed`.
    SymmetricHull {
        dim: usize,
        #[serde(default)]
        points: Option<Vec<Vec<f64>>>,
        #[serde(default)]
        count: Option<usize>,
        #[serde(default)]
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    BallApprox {
        dim: usize,
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    DilateOf {
        dim: usize,
        of: Box<BodySpec>,
        c: f64,
        #[serde(default)]
        t: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

fn one() -> f64 {
    1.0
}

fn vec3(coords: &[f64], dim: usize) -> Result<[f64; 3]> {
    if coords.len() != dim {
        bail!("expected {dim} coordinates, got {}", coords.len());
    }
    let mut v = [0.0; 3];
    v[..dim].copy_from_slice(coords);
    Ok(v)
}

impl BodySpec {
    pub fn dim(&self) -> usize {
        match self {
            BodySpec::Polytope { dim, .. }
            | BodySpec::Box { dim, .. }
            | BodySpec::RegularPolygon { dim, .. }
            | BodySpec::SymmetricHull { dim, .. }
            | BodySpec::BallApprox { dim, .. }
            | BodySpec::DilateOf { dim, .. } => *dim,
        }
    }

    pub fn build(&self) -> Result<Body> {
        let dim = self.dim();
        if dim != 2 && dim != 3 {
            bail!("dim must be 2 or 3, got {dim}");
        }
        let body = match self {
            BodySpec::Polytope { vertices, .. } => Body::from_coords(vertices, dim)?,
            BodySpec::Box { sides, .. } => {
                if sides.len() != dim {
                    bail!("box needs {dim} sides, got {}", sides.len());
                }
                generate(&BodyGenSpec::boxed(sides))?
            }
            BodySpec::RegularPolygon { k, radius, .. } => generate(&BodyGenSpec {
                dim,
                kind: BodyKind::RegularPolygon { k: *k, radius: *radius },
                seed: 0,
                origin_interior: false,
            })?,
            BodySpec::SymmetricHull { points, count, seed, .. } => {
                let kind = match (points, count) {
                    (Some(points), None) => BodyKind::SymmetricHull {
                        count: 0,
                        points: Some(points.iter().map(|p| vec3(p, dim)).collect::<Result<Vec<_>>>()?),
                    },
                    (None, Some(count)) => BodyKind::SymmetricHull { count: *count, points: None },
                    _ => bail!("symmetric_hull needs exactly one of \"points\" or \"count\""),
                };
                generate(&BodyGenSpec { dim, kind, seed: *seed, origin_interior: false })?
            }
            BodySpec::BallApprox { m, .. } => ball_approx(dim, *m)?,
            BodySpec::DilateOf { of, c, t, .. } => {
                if of.dim() != dim {
                    bail!("dilate_of: inner body has dim {}, outer {dim}", of.dim());
                }
                let t = match t {
                    Some(t) => vec3(t, dim)?,
                    None => [0.0; 3],
                };
                of.build()?.scale_translate(*c, t)?
            }
        };
        Ok(body)
    }

    /// Explicit vertex form of `body`.
    pub fn resolved(body: &Body, name: Option<String>) -> Self {
        BodySpec::Polytope { dim: body.dim(), vertices: body.vertex_coords(), name }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            BodySpec::Polytope { name, .. }
            | BodySpec::Box { name, .. }
            | BodySpec::RegularPolygon { name, .. }
            | BodySpec::SymmetricHull { name, .. }
            | BodySpec::BallApprox { name, .. }
            | BodySpec::DilateOf { name, .. } => name.as_deref(),
        }
    }
}

/// A body file holds one spec or an array of them.
pub fn load_specs(path: &Path) -> Result<Vec<BodySpec>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let specs = if value.is_array() {
        serde_json::from_value::<Vec<BodySpec>>(value)
    } else {
        serde_json::from_value::<BodySpec>(value).map(|s| vec![s])
    }
    .with_context(|| format!("invalid body spec in {}", path.display()))?;
    Ok(specs)
}

pub fn load_bodies(paths: &[impl AsRef<Path>]) -> Result<(Vec<BodySpec>, Vec<Body>)> {
    let mut specs = Vec::new();
    for p in paths {
        specs.extend(load_specs(p.as_ref())?);
    }
    let bodies = specs
        .iter()
        .enumerate()
        .map(|(k, s)| s.build().with_context(|| format!("building body {}", s.name().map_or(k.to_string(), str::to_string))))
        .collect::<Result<Vec<_>>>()?;
    Ok((specs, bodies))
}

/// `φ` from a shorthand (`power:2`, `exp:1`, `piecewise:0:0;1:1;2:3`) or a PhiSpec JSON file.
pub fn parse_phi(arg: &str) -> Result<OrliczFunction> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return serde_json::from_str(&text).with_context(|| format!("invalid φ spec in {}", path.display()));
    }
    Ok(arg.parse::<OrliczFunction>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_and_kinds_rejected() {
        assert!(serde_json::from_str::<BodySpec>(r#"{"dim":2,"kind":"box","sides":[1,1],"colour":"red"}"#).is_err());
        assert!(serde_json::from_str::<BodySpec>(r#"{"dim":2,"kind":"blob"}"#).is_err());
        let ok: BodySpec = serde_json::from_str(r#"{"dim":2,"kind":"box","sides":[1,2],"name":"B"}"#).unwrap();
        assert_eq!(ok.build().unwrap().volume(), 2.0);
    }

    #[test]
    fn nested_dilate() {
        let s: BodySpec = serde_json::from_str(
            r#"{"dim":3,"kind":"dilate_of","of":{"dim":3,"kind":"box","sides":[1,1,1]},"c":2,"t":[1,0,0]}"#,
        )
        .unwrap();
        let b = s.build().unwrap();
        assert!((b.volume() - 8.0).abs() < 1e-12);
        assert_eq!(b.vertices()[0], [1.0, 0.0, 0.0]);
    }

    #[test]
    fn resolved_round_trip() {
        let s: BodySpec = serde_json::from_str(r#"{"dim":2,"kind":"regular_polygon","k":7}"#).unwrap();
        let b = s.build().unwrap();
        let text = serde_json::to_string(&BodySpec::resolved(&b, None)).unwrap();
        let back: BodySpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap().vertices(), b.vertices());
    }
}
