//! Standard-normal quantiles and the classical sample-size rule
//! `N = (z / (2 eps))^2` for a proportion at a given confidence level.

use crate::error::{Error, Result};

/// Inverse of the standard normal CDF.
///
/// Acklam's piecewise rational approximation; the relative error is below
/// 1.2e-9 everywhere, far inside the 1e-6 needed here.
///
/// # Panics
///
/// Panics unless `0 < p < 1`.
pub fn inverse_normal_cdf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile argument must lie in (0, 1)");

    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506632682422308e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -((((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0))
    }
}

/// Sample size guaranteeing the given two-sided confidence within the given
/// error margin for a simple proportion: `ceil((z / (2 margin))^2)`.
///
/// `z` is the two-sided quantile with `P(-z < Z < z) = confidence`, taken at
/// the three-decimal resolution of the classical normal table (so 99%
/// confidence uses z = 2.576, giving 16590 at a 1% margin).
pub fn required_sample_size(confidence: f64, margin: f64) -> Result<u64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "error margin must lie in (0, 1), got {margin}"
        )));
    }
    let z = two_sided_table_quantile(confidence);
    Ok((z / (2.0 * margin)).powi(2).ceil() as u64)
}

/// The two-sided normal quantile rounded to table resolution (3 decimals).
pub fn two_sided_table_quantile(confidence: f64) -> f64 {
    let z = inverse_normal_cdf(0.5 + confidence / 2.0);
    (z * 1000.0).round() / 1000.0
}
