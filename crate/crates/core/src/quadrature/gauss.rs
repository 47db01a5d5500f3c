//! Gauss–Legendre rules at MPFR precision, with the matrix that integrates
//! the interpolant from −1 up to each node.

use rug::float::Constant;
use rug::Float;

/// Legendre P_0…P_m at x.
fn legendre_all(m: usize, x: &Float) -> Vec<Float> {
    let p = x.prec();
    let mut out = Vec::with_capacity(m + 1);
    out.push(Float::with_val(p, 1));
    if m >= 1 {
        out.push(x.clone());
    }
    for k in 1..m {
        let a = Float::with_val(p, x * &out[k]) * (2 * k + 1) as u32;
        let b = Float::with_val(p, &out[k - 1] * k as u32);
        out.push(Float::with_val(p, a - b) / (k + 1) as u32);
    }
    out
}

/// P_n(x) and P_n′(x) for |x| < 1.
fn value_and_slope(n: usize, x: &Float) -> (Float, Float) {
    let p = x.prec();
    let ps = legendre_all(n, x);
    let x2m1 = Float::with_val(p, x.clone().square() - 1u32);
    let mut dp = Float::with_val(p, x * &ps[n]) - &ps[n - 1];
    dp *= n as u32;
    dp /= &x2m1;
    (ps[n].clone(), dp)
}

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
    /// `cumulative[k][m]`: weight of f(x_m) in ∫_{−1}^{x_k} f.
    pub cumulative: Vec<Vec<Float>>,
}

impl GaussLegendre {
    pub fn new(n: usize, prec: u32) -> Self {
        let work = prec + 32;
        let pi = Float::with_val(work, Constant::Pi);
        let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 8));
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 0..n {
            // Tricomi initial guess, then Newton on P_n
            let mut x = Float::with_val(work, &pi * (4 * k + 3) as u32) / (4 * n + 2) as u32;
            x.cos_mut();
            for _ in 0..100 {
                let (pn, dp) = value_and_slope(n, &x);
                let dx = Float::with_val(work, &pn / &dp);
                x -= &dx;
                if dx.abs() < eps {
                    break;
                }
            }
            let (_, dp) = value_and_slope(n, &x);
            let one_m = Float::with_val(work, 1u32 - x.clone().square());
            let w = Float::with_val(work, 2u32 / (one_m * dp.square()));
            nodes.push(x);
            weights.push(w);
        }
        // ∫_{−1}^{x} P_0 = x + 1, ∫_{−1}^{x} P_j = (P_{j+1} − P_{j−1})/(2j+1)
        let p_at: Vec<Vec<Float>> = nodes.iter().map(|x| legendre_all(n, x)).collect();
        let q_at: Vec<Vec<Float>> = nodes
            .iter()
            .zip(&p_at)
            .map(|(x, ps)| {
                let mut q = vec![Float::with_val(work, x + 1u32)];
                for j in 1..n {
                    q.push(Float::with_val(work, &ps[j + 1] - &ps[j - 1]) / (2 * j + 1) as u32);
                }
                q
            })
            .collect();
        let cumulative = (0..n)
            .map(|k| {
                (0..n)
                    .map(|m| {
                        let mut s = Float::new(work);
                        for j in 0..n {
                            let c = Float::with_val(work, &p_at[m][j] * &q_at[k][j]);
                            s += c * (2 * j + 1) as u32;
                        }
                        let v = Float::with_val(work, s * &weights[m]) / 2u32;
                        Float::with_val(prec, v)
                    })
                    .collect()
            })
            .collect();
        Self {
            nodes: nodes.into_iter().map(|x| Float::with_val(prec, x)).collect(),
            weights: weights.into_iter().map(|w| Float::with_val(prec, w)).collect(),
            cumulative,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn integrates_polynomials_exactly() {
        let gl = GaussLegendre::new(12, 128);
        // ∫_{−1}^{1} x^k dx = 2/(k+1) for even k
        for k in 0..24u32 {
            let s: Float = gl
                .nodes
                .iter()
                .zip(&gl.weights)
                .map(|(x, w)| Float::with_val(128, x.clone().pow(k) * w))
                .fold(Float::new(128), |a, b| a + b);
            let expect = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((s.to_f64() - expect).abs() < 1e-30, "k={k}");
        }
    }

    #[test]
    fn cumulative_matrix_integrates_low_degree() {
        let gl = GaussLegendre::new(10, 128);
        // ∫_{−1}^{x} 3t² dt = x³ + 1
        for (k, x) in gl.nodes.iter().enumerate() {
            let s: Float = gl.cumulative[k]
                .iter()
                .zip(&gl.nodes)
                .map(|(c, t)| Float::with_val(128, c * t.clone().square()) * 3u32)
                .fold(Float::new(128), |a, b| a + b);
            let expect = Float::with_val(128, x.clone().pow(3u32) + 1u32);
            assert!(Float::with_val(128, s - expect).abs() < 1e-32);
        }
    }
}
