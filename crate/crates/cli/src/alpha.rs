//! Parsing of alpha specifications.
//!
//! Accepted forms:
//!   - explicit rationals: `"2/7,3/11"`
//!   - named constructors per coordinate: `"golden:depth=30"`,
//!     `"sqrt2:depth=30"` (convergent truncations; default depth 40)
//!   - whole-vector random form: `"random:prime=P,seed=S"`, which draws
//!     `--dim` coordinates uniformly from {1,…,P−1}/P.

use kron_core::{
    convergent_value, golden_cf, parse_rational, sample_alpha, sample_rng, sqrt2_cf, Rational,
    RationalVector, DEFAULT_PRIME,
};

use crate::CliError;

const DEFAULT_DEPTH: usize = 40;

fn parse_params(spec: &str) -> Result<Vec<(String, String)>, CliError> {
    spec.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("expected key=value, got `{p}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn constructor_value(name: &str, params: &str) -> Result<Rational, CliError> {
    let mut depth = DEFAULT_DEPTH;
    for (k, v) in parse_params(params)? {
        match k.as_str() {
            "depth" => {
                depth = v
                    .parse()
                    .map_err(|e| CliError::Validation(format!("bad depth `{v}`: {e}")))?
            }
            other => {
                return Err(CliError::Validation(format!(
                    "unknown parameter `{other}` for constructor `{name}`"
                )))
            }
        }
    }
    let cf = match name {
        "golden" => golden_cf(),
        "sqrt2" => sqrt2_cf(),
        _ => unreachable!(),
    };
    convergent_value(&cf, depth).map_err(CliError::from)
}

fn random_alpha(params: &str, dim: usize) -> Result<RationalVector, CliError> {
    let mut prime = DEFAULT_PRIME;
    let mut seed = 0u64;
    for (k, v) in parse_params(params)? {
        let parsed = v
            .parse::<u64>()
            .map_err(|e| CliError::Validation(format!("bad value `{v}` for `{k}`: {e}")))?;
        match k.as_str() {
            "prime" => prime = parsed,
            "seed" => seed = parsed,
            other => {
                return Err(CliError::Validation(format!(
                    "unknown parameter `{other}` for `random`"
                )))
            }
        }
    }
    let mut rng = sample_rng(seed, 0);
    sample_alpha(dim, prime, &mut rng).map_err(CliError::from)
}

pub fn parse_alpha_spec(spec: &str, dim: Option<usize>) -> Result<RationalVector, CliError> {
    let spec = spec.trim();
    if let Some(params) = spec.strip_prefix("random:") {
        return random_alpha(params, dim.unwrap_or(1));
    }
    if spec == "random" {
        return random_alpha("", dim.unwrap_or(1));
    }
    let mut coords = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if let Some(params) = part.strip_prefix("golden:") {
            coords.push(constructor_value("golden", params)?);
        } else if part == "golden" {
            coords.push(constructor_value("golden", "")?);
        } else if let Some(params) = part.strip_prefix("sqrt2:") {
            coords.push(constructor_value("sqrt2", params)?);
        } else if part == "sqrt2" {
            coords.push(constructor_value("sqrt2", "")?);
        } else {
            coords.push(parse_rational(part)?);
        }
    }
    let alpha = RationalVector::new(coords)?;
    if let Some(d) = dim {
        if alpha.dim() != d {
            return Err(CliError::Validation(format!(
                "alpha has {} coordinates but --dim is {d}",
                alpha.dim()
            )));
        }
    }
    Ok(alpha)
}
