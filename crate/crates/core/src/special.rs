//! Special functions: Bernoulli numbers, zeta values, Euler's constant,
//! Hurwitz zeta, complex log-gamma and Gauss-Legendre rules.

use num_complex::Complex64;

use crate::scalar::Real;

/// `B_{2k}` for `k = 1..=14` as exact ratios.
const BERNOULLI_2K: [(i64, i64); 14] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
];

const EM_CUTOFF: i64 = 32;

pub fn bernoulli_2k<R: Real>(k: usize) -> R {
    let (p, q) = BERNOULLI_2K[k - 1];
    R::ratio(p, q)
}

fn factorial<R: Real>(n: usize) -> R {
    (1..=n).fold(R::one(), |a, k| a * R::int(k as i64))
}

/// Rising factorial `s (s+1) ... (s+m-1)`.
fn rising<R: Real>(s: R, m: usize) -> R {
    (0..m).fold(R::one(), |a, j| a * (s + R::int(j as i64)))
}

/// `zeta(k)` for `k = 0..=kmax` by Euler-Maclaurin summation; entries 0, 1 are NaN.
pub fn zeta_table_em<R: Real>(kmax: usize) -> Vec<R> {
    let mut out = vec![R::nan(), R::nan()];
    for k in 2..=kmax {
        out.push(hurwitz_zeta_em(R::int(k as i64), R::one()));
    }
    out
}

/// Euler's constant from `H_M - ln M - 1/(2M) + sum B_{2k} / (2k M^{2k})`.
pub fn euler_gamma_em<R: Real>() -> R {
    let m = R::int(EM_CUTOFF);
    let mut h = R::zero();
    for n in 1..=EM_CUTOFF {
        h = h + R::one() / R::int(n);
    }
    let mut g = h - m.ln() - R::one() / (R::int(2) * m);
    let m2 = m * m;
    let mut mp = m2;
    for k in 1..=BERNOULLI_2K.len() {
        g = g + bernoulli_2k::<R>(k) / (R::int(2 * k as i64) * mp);
        mp = mp * m2;
    }
    g
}

/// Hurwitz zeta `sum_{n>=0} (n+a)^{-s}` for real `s != 1`, `a > 0`.
pub fn hurwitz_zeta_em<R: Real>(s: R, a: R) -> R {
    let m = R::int(EM_CUTOFF);
    let pw = |x: R, e: R| (e * x.ln()).exp();
    let mut sum = R::zero();
    for n in 0..EM_CUTOFF {
        sum = sum + pw(R::int(n) + a, -s);
    }
    let x = m + a;
    sum = sum + pw(x, R::one() - s) / (s - R::one()) + pw(x, -s) / R::int(2);
    for j in 1..=BERNOULLI_2K.len() {
        let term = bernoulli_2k::<R>(j) / factorial::<R>(2 * j)
            * rising(s, 2 * j - 1)
            * pw(x, -s - R::int(2 * j as i64 - 1));
        sum = sum + term;
    }
    sum
}

/// `ln Gamma(z)` for `Re z > 0`, on the branch that is real on the positive axis.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 14.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln();
    let w2 = w * w;
    let mut wp = w;
    for k in 1..=10 {
        let b: f64 = bernoulli_2k(k);
        s += b / ((2 * k) as f64 * (2 * k - 1) as f64) / wp;
        wp *= w2;
    }
    s - shift
}

pub fn gamma_real(x: f64) -> f64 {
    assert!(x > 0.0, "gamma_real needs a positive argument");
    ln_gamma(Complex64::new(x, 0.0)).re.exp()
}

pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(Complex64::new(n as f64 + 1.0, 0.0)).re
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut b: i128 = 1;
    for j in 0..k {
        b = b * (n - j) as i128 / (j + 1) as i128;
    }
    b as i64
}

/// Generalized binomial `C(a, k)` for integer `a` of either sign.
pub fn binomial_signed(a: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let mut b: i128 = 1;
    for j in 0..k {
        b = b * (a - j) as i128 / (j + 1) as i128;
    }
    b as i64
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}
