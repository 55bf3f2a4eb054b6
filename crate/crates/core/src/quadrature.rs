//! Fixed-order Gauss–Legendre quadrature.

use std::sync::OnceLock;

/// Nodes and weights of an `order`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_order`, starting from the
    /// Tricomi approximation of each root.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be at least 1");
        let n = order;
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
            let mut x = theta.cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f(x) dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// The shared 64-point rule.
pub fn gauss_legendre_64() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(64))
}

/// `∫_0^1 g(a) da` evaluated as `∫_0^1 2s·g(s²) ds`.
///
/// The substitution removes `√a` behaviour at the left endpoint, which is
/// what the hyperprior integrands have when `n = 1`.
pub fn integrate_unit_sqrt_substituted<F: Fn(f64) -> f64>(g: F) -> f64 {
    gauss_legendre_64().integrate(0.0, 1.0, |s| 2.0 * s * g(s * s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for order in [1, 2, 5, 16, 64] {
            let rule = GaussLegendre::new(order);
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "order {order}: {total}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::new(5);
        // ∫_0^2 x^9 dx = 2^10 / 10
        let v = rule.integrate(0.0, 2.0, |x| x.powi(9));
        assert!((v - 102.4).abs() < 1e-11);
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let rule = gauss_legendre_64();
        assert_eq!(rule.order(), 64);
        for w in rule.nodes().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (a, b) in rule.nodes().iter().zip(rule.nodes().iter().rev()) {
            assert!((a + b).abs() < 1e-15);
        }
    }

    #[test]
    fn smooth_integrals() {
        let v = gauss_legendre_64().integrate(0.0, std::f64::consts::PI, f64::sin);
        assert!((v - 2.0).abs() < 1e-14);
        let v = integrate_unit_sqrt_substituted(f64::sqrt);
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }
}
