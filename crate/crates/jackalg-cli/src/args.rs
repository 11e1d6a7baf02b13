//! Value parsers for partitions and the parameter `alpha`.

use jackalg::algebra::{parse_alpha, Q};
use jackalg::partitions::Partition;

/// `alpha` on an exact path: a positive rational written `p/q` or as an integer.
#[derive(Clone, Debug)]
pub struct ExactAlpha(pub Q);

/// `alpha` on a sampling path: a positive rational or decimal.
#[derive(Clone, Copy, Debug)]
pub struct FloatAlpha(pub f64);

pub fn partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

pub fn exact_alpha(s: &str) -> Result<ExactAlpha, String> {
    if s.contains(['.', 'e', 'E']) {
        return Err(format!(
            "decimal {s:?} is not accepted by exact subcommands; write alpha as p/q"
        ));
    }
    parse_alpha(s).map(ExactAlpha).map_err(|e| e.to_string())
}

pub fn float_alpha(s: &str) -> Result<FloatAlpha, String> {
    let v = match parse_alpha(s) {
        Ok(q) => jackalg::algebra::q_to_f64(&q),
        Err(_) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("cannot parse {s:?} as a number or p/q"))?,
    };
    if !(v > 0.0 && v.is_finite()) {
        return Err(format!("alpha must be positive and finite, got {s:?}"));
    }
    Ok(FloatAlpha(v))
}
