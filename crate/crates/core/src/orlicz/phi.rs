//! The Orlicz class Φ: convex, increasing `φ` with `φ(0) = 0` and `φ(1) = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Ratios above this are evaluated through `exp(ln φ)`.
const LOG_SPACE_THRESHOLD: f64 = 1e6;
/// Validation grid: `VALIDATION_POINTS` equispaced points on `[0, VALIDATION_END]`.
pub const VALIDATION_POINTS: usize = 1024;
pub const VALIDATION_END: f64 = 16.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiKind {
    /// `x^p`.
    Power { p: f64 },
    /// `(e^{ax} − 1)/(e^a − 1)`.
    ExpNormalized { a: f64 },
    /// Linear interpolation through `(x, y)` knots, extended with the last slope.
    PiecewiseLinear { knots: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct OrliczFunction {
    kind: PhiKind,
}

impl<'de> Deserialize<'de> for OrliczFunction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let kind = PhiKind::deserialize(de)?;
        OrliczFunction::new(kind).map_err(serde::de::Error::custom)
    }
}

/// `ln(e^y − 1)` without overflow.
fn ln_expm1(y: f64) -> f64 {
    if y > 30.0 {
        y + (-(-y).exp()).ln_1p()
    } else {
        y.exp_m1().ln()
    }
}

impl OrliczFunction {
    /// Validates `kind` against the defining properties of Φ.
    pub fn new(kind: PhiKind) -> Result<Self> {
        match &kind {
            PhiKind::Power { p } if !p.is_finite() => return Err(GeomError::PhiInvalid("p must be finite".into())),
            PhiKind::ExpNormalized { a } if !(*a > 0.0 && a.is_finite()) => {
                return Err(GeomError::PhiInvalid(format!("exp_normalized needs a > 0, got {a}")))
            }
            PhiKind::PiecewiseLinear { knots } => {
                if knots.len() < 2 {
                    return Err(GeomError::PhiInvalid("piecewise_linear needs at least two knots".into()));
                }
                if knots[0] != [0.0, 0.0] {
                    return Err(GeomError::PhiInvalid("first knot must be (0, 0)".into()));
                }
                if knots.windows(2).any(|w| !(w[1][0] > w[0][0])) {
                    return Err(GeomError::PhiInvalid("knot abscissae must increase strictly".into()));
                }
            }
            _ => {}
        }
        let phi = OrliczFunction { kind };
        phi.validate()?;
        Ok(phi)
    }

    pub fn power(p: f64) -> Result<Self> {
        Self::new(PhiKind::Power { p })
    }

    pub fn exp_normalized(a: f64) -> Result<Self> {
        Self::new(PhiKind::ExpNormalized { a })
    }

    pub fn piecewise_linear(knots: Vec<[f64; 2]>) -> Result<Self> {
        Self::new(PhiKind::PiecewiseLinear { knots })
    }

    pub fn kind(&self) -> &PhiKind {
        &self.kind
    }

    fn validate(&self) -> Result<()> {
        let at0 = self.eval(0.0);
        if at0 != 0.0 {
            return Err(GeomError::PhiInvalid(format!("φ(0) = {at0}, expected 0")));
        }
        let at1 = self.eval(1.0);
        if at1 != 1.0 {
            return Err(GeomError::PhiInvalid(format!("φ(1) = {at1}, expected 1")));
        }
        let step = VALIDATION_END / (VALIDATION_POINTS - 1) as f64;
        let values: Vec<f64> = (0..VALIDATION_POINTS).map(|k| self.eval(k as f64 * step)).collect();
        if let Some(k) = (1..values.len()).find(|&k| !(values[k] > values[k - 1])) {
            return Err(GeomError::PhiInvalid(format!(
                "not increasing: φ({}) ≤ φ({})",
                k as f64 * step,
                (k - 1) as f64 * step
            )));
        }
        if let Some(k) = (1..values.len() - 1).find(|&k| {
            let avg = 0.5 * (values[k - 1] + values[k + 1]);
            values[k] > avg + 1e-12 * (1.0 + avg.abs())
        }) {
            return Err(GeomError::PhiInvalid(format!(
                "not convex: midpoint test fails at x = {}",
                k as f64 * step
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            PhiKind::Power { p } => x.powf(*p),
            PhiKind::ExpNormalized { a } => {
                if x > LOG_SPACE_THRESHOLD || a * x > 700.0 || *a > 700.0 {
                    self.ln_eval(x).exp()
                } else {
                    (a * x).exp_m1() / a.exp_m1()
                }
            }
            PhiKind::PiecewiseLinear { knots } => {
                let seg = knots.windows(2).position(|w| x <= w[1][0]).unwrap_or(knots.len() - 2);
                let ([x0, y0], [x1, y1]) = (knots[seg], knots[seg + 1]);
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// `ln φ(x)`, computed in log space where that avoids overflow.
    pub fn ln_eval(&self, x: f64) -> f64 {
        match &self.kind {
            PhiKind::Power { p } => p * x.ln(),
            PhiKind::ExpNormalized { a } => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    ln_expm1(a * x) - ln_expm1(*a)
                }
            }
            PhiKind::PiecewiseLinear { .. } => self.eval(x).ln(),
        }
    }

    /// Strict convexity (second differences on the validation grid all positive).
    pub fn is_strictly_convex(&self) -> bool {
        let step = VALIDATION_END / (VALIDATION_POINTS - 1) as f64;
        (1..VALIDATION_POINTS - 1).all(|k| {
            let x = k as f64 * step;
            self.eval(x - step) + self.eval(x + step) - 2.0 * self.eval(x) > 1e-12 * (1.0 + self.eval(x))
        })
    }

    /// Short label, e.g. `power(2)`; parses back through `FromStr`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PhiKind::Power { p } => write!(f, "power({p})"),
            PhiKind::ExpNormalized { a } => write!(f, "exp_normalized({a})"),
            PhiKind::PiecewiseLinear { knots } => {
                let parts: Vec<String> = knots.iter().map(|[x, y]| format!("{x}:{y}")).collect();
                write!(f, "piecewise_linear({})", parts.join(";"))
            }
        }
    }
}

impl FromStr for OrliczFunction {
    type Err = GeomError;

    /// Accepts `power:2`, `exp:1`, `exp_normalized:1`, `piecewise:0:0;1:1;2:3`
    /// and the parenthesized labels produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..].strip_suffix(')').ok_or_else(|| GeomError::PhiInvalid(format!("unbalanced parentheses in {s:?}")))?;
            (&s[..open], inner)
        } else {
            s.split_once(':').ok_or_else(|| GeomError::PhiInvalid(format!("expected kind:value, got {s:?}")))?
        };
        let number = |t: &str| -> Result<f64> {
            t.trim().parse::<f64>().map_err(|_| GeomError::PhiInvalid(format!("bad number {t:?}")))
        };
        match name.trim() {
            "power" => Self::power(number(arg)?),
            "exp" | "exp_normalized" => Self::exp_normalized(number(arg)?),
            "piecewise" | "piecewise_linear" => {
                let knots = arg
                    .split(';')
                    .map(|pair| {
                        let (x, y) = pair
                            .split_once(':')
                            .or_else(|| pair.split_once(','))
                            .ok_or_else(|| GeomError::PhiInvalid(format!("bad knot {pair:?}")))?;
                        Ok([number(x)?, number(y)?])
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::piecewise_linear(knots)
            }
            other => Err(GeomError::PhiInvalid(format!("unknown kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_holds() {
        for phi in [
            OrliczFunction::power(1.0).unwrap(),
            OrliczFunction::power(2.5).unwrap(),
            OrliczFunction::exp_normalized(1.0).unwrap(),
            OrliczFunction::exp_normalized(40.0).unwrap(),
            OrliczFunction::piecewise_linear(vec![[0.0, 0.0], [0.5, 0.25], [1.0, 1.0], [2.0, 3.0]]).unwrap(),
        ] {
            assert_eq!(phi.eval(0.0), 0.0);
            assert_eq!(phi.eval(1.0), 1.0);
            assert_eq!(phi.label().parse::<OrliczFunction>().unwrap(), phi);
        }
    }

    #[test]
    fn rejects_members_outside_the_class() {
        let concave = OrliczFunction::power(0.5).unwrap_err();
        assert!(concave.to_string().contains("convex"), "{concave}");
        let decreasing = OrliczFunction::piecewise_linear(vec![[0.0, 0.0], [1.0, 1.0], [2.0, 0.5]]).unwrap_err();
        assert!(decreasing.to_string().contains("increasing"), "{decreasing}");
        let off = OrliczFunction::piecewise_linear(vec![[0.0, 0.0], [1.0, 2.0]]).unwrap_err();
        assert!(off.to_string().contains("φ(1)"), "{off}");
        assert!(OrliczFunction::exp_normalized(-1.0).is_err());
        assert!(OrliczFunction::power(0.0).is_err());
    }

    #[test]
    fn log_space_agrees_and_survives_overflow() {
        let phi = OrliczFunction::exp_normalized(3.0).unwrap();
        for x in [0.01, 0.5, 2.0, 7.0] {
            assert!((phi.ln_eval(x) - phi.eval(x).ln()).abs() < 1e-12);
        }
        assert!(phi.ln_eval(1e7).is_finite());
        assert!((phi.ln_eval(1e7) - (3e7 - 3f64.exp_m1().ln())).abs() < 1e-6);
    }

    #[test]
    fn shorthand_and_json() {
        assert_eq!("power:2".parse::<OrliczFunction>().unwrap(), OrliczFunction::power(2.0).unwrap());
        assert_eq!("exp:1".parse::<OrliczFunction>().unwrap(), OrliczFunction::exp_normalized(1.0).unwrap());
        let phi: OrliczFunction = serde_json::from_str(r#"{"kind":"power","p":3}"#).unwrap();
        assert_eq!(phi, OrliczFunction::power(3.0).unwrap());
        assert!(serde_json::from_str::<OrliczFunction>(r#"{"kind":"power","p":0.5}"#).is_err());
        assert!(serde_json::from_str::<OrliczFunction>(r#"{"kind":"power","p":2,"q":1}"#).is_err());
        assert!(!OrliczFunction::power(1.0).unwrap().is_strictly_convex());
        assert!(OrliczFunction::power(2.0).unwrap().is_strictly_convex());
    }
}
