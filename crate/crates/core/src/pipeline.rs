//! Transform pipelines such as `E,L:2,Bous,S`.
//!
//! Step names: `E`, `L:<y>`, `Bous`, `S`, `Sinv`, `V:<k>`, `A`, `U`,
//! `invert`, `exp`, `log`. The `L` parameter is parsed in the ring of the
//! series it is applied to.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::br::{autoconvolution, transform_u};
use crate::error::Error;
use crate::series::HurwitzSeries;
use crate::transforms::{
    alternating_sign, binomial_interpolated, boustrophedon, series_exp, series_log,
    stirling_inverse, stirling_transform,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    AlternatingSign,
    Interpolate(String),
    Boustrophedon,
    Stirling,
    StirlingInverse,
    PrependOnes(usize),
    Autoconvolution,
    Complete,
    Invert,
    Exp,
    Log,
}

impl Step {
    pub fn apply(&self, a: &HurwitzSeries) -> crate::Result<HurwitzSeries> {
        match self {
            Step::AlternatingSign => Ok(alternating_sign(a)),
            Step::Interpolate(y) => binomial_interpolated(a, &a.ring().parse_value(y)?),
            Step::Boustrophedon => boustrophedon(a),
            Step::Stirling => Ok(stirling_transform(a)),
            Step::StirlingInverse => Ok(stirling_inverse(a)),
            Step::PrependOnes(k) => Ok(a.prepend_ones(*k)),
            Step::Autoconvolution => autoconvolution(a),
            Step::Complete => transform_u(a),
            Step::Invert => a.invert(),
            Step::Exp => series_exp(a),
            Step::Log => series_log(a),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::AlternatingSign => write!(f, "E"),
            Step::Interpolate(y) => write!(f, "L:{y}"),
            Step::Boustrophedon => write!(f, "Bous"),
            Step::Stirling => write!(f, "S"),
            Step::StirlingInverse => write!(f, "Sinv"),
            Step::PrependOnes(k) => write!(f, "V:{k}"),
            Step::Autoconvolution => write!(f, "A"),
            Step::Complete => write!(f, "U"),
            Step::Invert => write!(f, "invert"),
            Step::Exp => write!(f, "exp"),
            Step::Log => write!(f, "log"),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Step> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.trim())),
            None => (s, None),
        };
        let bad = |why: &str| Error::Parse(format!("pipeline step {s:?}: {why}"));
        let no_param = |step: Step| match param {
            None => Ok(step),
            Some(_) => Err(bad("takes no parameter")),
        };
        match name {
            "E" => no_param(Step::AlternatingSign),
            "Bous" => no_param(Step::Boustrophedon),
            "S" => no_param(Step::Stirling),
            "Sinv" => no_param(Step::StirlingInverse),
            "A" => no_param(Step::Autoconvolution),
            "U" => no_param(Step::Complete),
            "invert" => no_param(Step::Invert),
            "exp" => no_param(Step::Exp),
            "log" => no_param(Step::Log),
            "L" => match param {
                Some(y) if !y.is_empty() => Ok(Step::Interpolate(y.to_string())),
                _ => Err(bad("expected L:<y>")),
            },
            "V" => {
                let k = param
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| bad("expected V:<k> with k >= 1"))?;
                Ok(Step::PrependOnes(k))
            }
            _ => Err(bad("unknown step")),
        }
    }
}

/// A failing step, by position and name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index} ({step}): {source}")]
pub struct PipelineError {
    pub index: usize,
    pub step: String,
    pub source: Error,
}

/// Ordered list of steps, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PipelineSpec {
    pub steps: Vec<Step>,
}

impl PipelineSpec {
    pub fn apply(&self, a: &HurwitzSeries) -> Result<HurwitzSeries, PipelineError> {
        self.steps
            .iter()
            .enumerate()
            .try_fold(a.clone(), |acc, (index, step)| {
                step.apply(&acc).map_err(|source| PipelineError {
                    index,
                    step: step.to_string(),
                    source,
                })
            })
    }
}

impl FromStr for PipelineSpec {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<PipelineSpec> {
        let steps = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<crate::Result<Vec<Step>>>()?;
        if steps.is_empty() {
            return Err(Error::Parse("empty pipeline".into()));
        }
        Ok(PipelineSpec { steps })
    }
}

impl fmt::Display for PipelineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.steps.iter().map(ToString::to_string).collect();
        write!(f, "{}", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z(v: &[i64]) -> HurwitzSeries {
        HurwitzSeries::from_i64s(Ring::Integers, v).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let text = "E,L:-2,Bous,S,Sinv,V:3,A,U,invert,exp,log";
        let spec: PipelineSpec = text.parse().unwrap();
        assert_eq!(spec.steps.len(), 11);
        assert_eq!(spec.to_string(), text);
        for bad in ["", "X", "V:0", "V", "L", "E:1", "S,,Q"] {
            assert!(bad.parse::<PipelineSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn apply_examples() {
        let spec: PipelineSpec = "E".parse().unwrap();
        assert_eq!(spec.apply(&z(&[1, 1, 1, 1])).unwrap(), z(&[1, -1, 1, -1]));
        let spec: PipelineSpec = "Bous".parse().unwrap();
        assert_eq!(spec.apply(&z(&[1, 0, 0, 0, 0])).unwrap(), z(&[1, 1, 1, 2, 5]));
        let ones = HurwitzSeries::ones(Ring::Rationals, 5).unwrap();
        let spec: PipelineSpec = "invert".parse().unwrap();
        assert_eq!(spec.apply(&ones).unwrap(), ones.invert().unwrap());
    }

    #[test]
    fn composition_is_sequential() {
        let a = z(&[1, 3, -2, 5, 0, 7]);
        let both: PipelineSpec = "E,S".parse().unwrap();
        let e: PipelineSpec = "E".parse().unwrap();
        let s: PipelineSpec = "S".parse().unwrap();
        assert_eq!(both.apply(&a).unwrap(), s.apply(&e.apply(&a).unwrap()).unwrap());
    }

    #[test]
    fn errors_name_the_step() {
        let spec: PipelineSpec = "E,exp".parse().unwrap();
        let err = spec.apply(&z(&[0, 1])).unwrap_err();
        assert_eq!(err.index, 1);
        assert_eq!(err.step, "exp");
        assert!(matches!(err.source, Error::RingUnsupported(_)));
        let spec: PipelineSpec = "L:1/2".parse().unwrap();
        assert!(matches!(spec.apply(&z(&[1])).unwrap_err().source, Error::Parse(_)));
    }
}
