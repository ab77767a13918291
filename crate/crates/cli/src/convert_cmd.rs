//! `teugels convert`: moments to cumulants and back.
//!
//! A list made only of integers and rational strings is converted exactly
//! and printed as rational strings; any non-integer JSON number switches the
//! whole list to floating point.

use num_rational::BigRational;
use serde_json::Value;
use teugels_core::{
    cumulants_from_moments, moments_from_cumulants, parse_rational, CumulantSequence, MomentSequence, Scalar,
};

use crate::args::{ConvertArgs, Target};
use crate::{Outcome, StageError};

fn convert<T: Scalar>(values: Vec<T>, to: Target) -> Result<Vec<T>, StageError> {
    let err = |e| StageError::new("convert", e);
    Ok(match to {
        Target::Cumulants => {
            cumulants_from_moments(&MomentSequence::new(values).map_err(err)?)
                .map_err(err)?
                .0
        }
        Target::Moments => {
            moments_from_cumulants(&CumulantSequence::new(values).map_err(err)?)
                .map_err(err)?
                .0
        }
    })
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts a JSON list; exposed for tests.
pub(crate) fn convert_json(text: &str, to: Target) -> Result<String, StageError> {
    let bad = |msg: String| StageError::new("input", anyhow::anyhow!(msg));
    let items: Vec<Value> = serde_json::from_str(text).map_err(|e| bad(format!("expected a JSON list: {e}")))?;
    let exact = items.iter().all(|v| v.is_string() || v.is_i64() || v.is_u64());
    let out = if exact {
        let values = items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_rational(s).map_err(|e| bad(e.to_string())),
                other => parse_rational(&other.to_string()).map_err(|e| bad(e.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let result = convert(values, to)?;
        Value::from(result.iter().map(rational_string).collect::<Vec<_>>())
    } else {
        let values = items
            .iter()
            .map(|v| v.as_f64().ok_or_else(|| bad(format!("{v} is not a number"))))
            .collect::<Result<Vec<_>, _>>()?;
        Value::from(convert(values, to)?)
    };
    let mut text = serde_json::to_string(&out).map_err(|e| StageError::new("output", e))?;
    text.push('\n');
    Ok(text)
}

pub(crate) fn run(args: &ConvertArgs) -> Result<Outcome, StageError> {
    let input = match (&args.values, &args.input) {
        (Some(v), _) => v.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| StageError::new("input", anyhow::anyhow!("cannot read {}: {e}", path.display())))?,
        (None, None) => {
            return Err(StageError::new("input", anyhow::anyhow!("pass --values or --input")));
        }
    };
    let text = convert_json(&input, args.to)?;
    match &args.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| StageError::new("output", e))?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_float_modes() {
        assert_eq!(
            convert_json(r#"[1, 2, 5]"#, Target::Cumulants).unwrap(),
            "[\"1\",\"1\",\"1\"]\n"
        );
        assert_eq!(
            convert_json(r#"["0", "2", 0, 0]"#, Target::Moments).unwrap(),
            "[\"0\",\"2\",\"0\",\"12\"]\n"
        );
        assert_eq!(
            convert_json(r#"["1/2", "1/4"]"#, Target::Cumulants).unwrap(),
            "[\"1/2\",\"0\"]\n"
        );
        assert_eq!(convert_json(r#"[0.0, 1.5]"#, Target::Moments).unwrap(), "[0.0,1.5]\n");
        assert!(convert_json("[]", Target::Moments).is_err());
        assert!(convert_json("{}", Target::Moments).is_err());
        assert!(convert_json(r#"["x"]"#, Target::Moments).is_err());
    }
}
