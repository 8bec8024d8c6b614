//! Gauss-Legendre quadrature with the trigonometric band substitution.

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn integrate_theta<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let half = std::f64::consts::FRAC_PI_2 / 2.0;
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        let theta = half * (x + 1.0);
        let mu = a + (b - a) * theta.sin().powi(2);
        acc += w * f(mu) * (b - a) * (2.0 * theta).sin();
    }
    acc * half
}

/// Integrates `f` over the band `[a, b]` after the substitution
/// `mu = a + (b-a) sin^2(theta)`, which absorbs the square-root behaviour
/// of the densities at the band edges. Node count doubles from 64 until
/// two successive rules agree to `1e-10` relative (cap 512).
pub fn integrate_band<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut prev = integrate_theta(&f, a, b, 64);
    for n in [128usize, 256, 512] {
        let cur = integrate_theta(&f, a, b, n);
        if (cur - prev).abs() <= 1e-10 * (1.0 + cur.abs()) {
            return cur;
        }
        prev = cur;
    }
    prev
}
