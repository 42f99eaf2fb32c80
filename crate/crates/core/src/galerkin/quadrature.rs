use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[−1, 1]`, exact for degree `2n − 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess, refined by Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Product rule on `S²`: Gauss–Legendre in `cos θ` times the uniform rule in `φ`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    /// `(cos θ, φ)` per node
    pub nodes: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
    /// Polynomial degree integrated exactly.
    pub exactness: usize,
}

impl SphereQuadrature {
    pub fn with_exactness(degree: usize) -> Self {
        let n_theta = degree / 2 + 1;
        let n_phi = degree + 1;
        let (xs, ws) = gauss_legendre(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (x, w) in xs.iter().zip(&ws) {
            for j in 0..n_phi {
                nodes.push((*x, j as f64 * dphi));
                weights.push(w * dphi);
            }
        }
        SphereQuadrature { nodes, weights, exactness: degree }
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

    #[test]
    fn gauss_legendre_integrates_monomials() {
        for n in 1..20 {
            let (x, w) = gauss_legendre(n);
            for d in 0..2 * n {
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                assert!((approx - exact).abs() < 1e-13, "n={n} d={d}: {approx} vs {exact}");
            }
        }
    }

    #[test]
    fn sphere_area_and_moments() {
        let q = SphereQuadrature::with_exactness(8);
        let area: f64 = q.weights.iter().sum();
        assert!((area - 4.0 * PI).abs() < 1e-12);
        // ∫ z⁴ dΩ = 4π/5
        let z4: f64 = q.nodes.iter().zip(&q.weights).map(|((z, _), w)| w * z.powi(4)).sum();
        assert!((z4 - 4.0 * PI / 5.0).abs() < 1e-12);
        // ∫ x²y² dΩ = 4π/15
        let xy: f64 = q
            .nodes
            .iter()
            .zip(&q.weights)
            .map(|((z, phi), w)| {
                let s2 = 1.0 - z * z;
                w * s2 * s2 * phi.cos().powi(2) * phi.sin().powi(2)
            })
            .sum();
        assert!((xy - 4.0 * PI / 15.0).abs() < 1e-12);
    }
}
