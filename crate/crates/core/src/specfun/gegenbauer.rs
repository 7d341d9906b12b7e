/// Gegenbauer polynomial C^λ_j(ξ), the coefficient of t^j in
/// (1 - 2tξ + t²)^{-λ}.
pub fn gegenbauer(lambda: f64, j: usize, xi: f64) -> f64 {
    gegenbauer_table(lambda, j, xi)[j]
}

/// All Gegenbauer values C^λ_0(ξ), ..., C^λ_{jmax}(ξ) by the three-term
/// recurrence j C_j = 2ξ(j+λ-1) C_{j-1} - (j+2λ-2) C_{j-2}.
pub fn gegenbauer_table(lambda: f64, jmax: usize, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(jmax + 1);
    out.push(1.0);
    if jmax == 0 {
        return out;
    }
    out.push(2.0 * lambda * xi);
    for j in 2..=jmax {
        let jf = j as f64;
        let next = (2.0 * xi * (jf + lambda - 1.0) * out[j - 1] - (jf + 2.0 * lambda - 2.0) * out[j - 2]) / jf;
        out.push(next);
    }
    out
}
