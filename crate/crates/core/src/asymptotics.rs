//! Asymptotic checks of the J-function: limits of normalized `J(t)`, Apery
//! limits, the radius of the quantum period, and the Mellin-Barnes solution
//! `Psi` of the quantum differential equation of projective space.

use std::sync::Arc;

use num_complex::Complex64;

use crate::char_classes::gamma_class;
use crate::cohomology_ring::{CohClass, Kind, Ring};
use crate::error::{Error, Result};
use crate::quantum_connection::{default_nmax, j_series, spectrum};
use crate::scalar::{cint, creal, C64};
use crate::series::{exp_linear, ln_gamma_1p, Series};
use crate::special::{gauss_legendre, ln_factorial, ln_gamma};

/// `J(t)` at real `t > 0`.
pub fn eval_j(ring: &Arc<Ring>, t: f64, nmax: Option<usize>) -> Result<CohClass<f64>> {
    let n = nmax.unwrap_or_else(|| default_nmax(ring, t));
    j_series::<f64>(ring, n).eval(t, 0.0, 1e-15)
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub grid: Vec<f64>,
    pub values: Vec<CohClass<f64>>,
    pub extrapolated: CohClass<f64>,
    pub target: CohClass<f64>,
    /// Largest coefficient deviation from the target at each grid point.
    pub deviations: Vec<f64>,
    pub extrapolated_deviation: f64,
}

/// Componentwise Aitken step on the last three values, used only when the
/// differences shrink by at least a factor two.
fn guarded_aitken(v: &[CohClass<f64>]) -> CohClass<f64> {
    let n = v.len();
    let last = v[n - 1].clone();
    if n < 3 {
        return last;
    }
    let (a, b, c) = (&v[n - 3], &v[n - 2], &v[n - 1]);
    let coeffs = (0..last.coeffs().len())
        .map(|i| {
            let d1 = b.coeff(i) - a.coeff(i);
            let d2 = c.coeff(i) - b.coeff(i);
            let den = d2 - d1;
            if d2.norm() < 0.5 * d1.norm() && den.norm() > 1e-300 {
                c.coeff(i) - d2 * d2 / den
            } else {
                c.coeff(i)
            }
        })
        .collect();
    CohClass::from_coeffs(last.ring(), coeffs).expect("basis size")
}

/// `J(t) / <[pt], J(t)>` on a grid of `t`, compared with the Gamma class.
pub fn limit_ratio(ring: &Arc<Ring>, grid: &[f64]) -> Result<LimitReport> {
    if grid.is_empty() {
        return Err(Error::OutOfRange("empty t grid".into()));
    }
    let sp = spectrum(ring)?;
    if !sp.property_o.holds {
        return Err(Error::Precondition(format!("Property O fails for {}", ring.kind())));
    }
    let tmax = grid.iter().cloned().fold(0.0, f64::max);
    let js = j_series::<f64>(ring, default_nmax(ring, tmax));
    let values = grid
        .iter()
        .map(|&t| {
            let j = js.eval(t, 0.0, 1e-15)?;
            let p = j.coeff(0);
            let c = j.coeffs().iter().map(|z| z / p).collect();
            CohClass::from_coeffs(ring, c)
        })
        .collect::<Result<Vec<_>>>()?;
    let target = gamma_class::<f64>(ring);
    let deviations = values.iter().map(|v| v.max_abs_diff(&target)).collect();
    let extrapolated = guarded_aitken(&values);
    let extrapolated_deviation = extrapolated.max_abs_diff(&target);
    Ok(LimitReport { grid: grid.to_vec(), values, extrapolated, target, deviations, extrapolated_deviation })
}

/// Homology class as a covector on the Schubert basis: `<gamma, alpha> = sum gamma_i alpha_i`.
#[derive(Clone, Debug)]
pub struct Covector(pub Vec<f64>);

impl Covector {
    pub fn eval(&self, a: &CohClass<f64>) -> C64 {
        self.0.iter().zip(a.coeffs()).map(|(&g, &c)| c * g).sum()
    }

    /// Parse `"[2]:1,[1,1]:-1"`.
    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        let mut v = vec![0.0; ring.rank()];
        let mut depth = 0i32;
        let mut start = 0;
        let mut items = Vec::new();
        for (i, ch) in s.char_indices() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                ',' if depth == 0 => {
                    items.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        items.push(&s[start..]);
        for item in items.into_iter().filter(|x| !x.trim().is_empty()) {
            let (lab, val) = item.rsplit_once(':').ok_or_else(|| Error::Parse(item.to_string()))?;
            let idx = ring.parse_label(lab.trim())?;
            v[idx] += val.trim().parse::<f64>().map_err(|_| Error::Parse(item.to_string()))?;
        }
        Ok(Self(v))
    }
}

/// `c_1 cap gamma` as an integer covector: entry `j` is `<gamma, c_1 sigma_j>`.
pub fn c1_cap(ring: &Ring, gamma: &[i64]) -> Vec<i64> {
    let (cl, _) = ring.c1_matrices();
    (0..ring.rank()).map(|j| (0..ring.rank()).map(|i| gamma[i] * cl[i][j]).sum()).collect()
}

#[derive(Clone, Debug)]
pub struct AperyReport {
    /// `<gamma, J_{r n}> / <[pt], J_{r n}>` for `n = 1..`.
    pub ratios: Vec<f64>,
    pub target: f64,
    pub gaps: Vec<f64>,
    /// `inf_{m >= n} |ratio_m - target|` at the last `n`, as a finite liminf proxy.
    pub final_gap: f64,
}

/// Apery ratios for a homology class with `c_1 cap gamma = 0`.
pub fn apery_ratios(ring: &Arc<Ring>, gamma: &Covector, nblocks: usize) -> Result<AperyReport> {
    let r_f = ring.n();
    for i in 0..ring.rank() {
        let v = gamma.eval(&CohClass::<f64>::basis(ring, i).rho());
        if v.norm() > 1e-12 {
            return Err(Error::Precondition(format!("c1 cap gamma != 0 (on basis {i}: {v})")));
        }
    }
    let js = j_series::<f64>(ring, r_f * nblocks);
    let ratios: Vec<f64> = (1..=nblocks)
        .map(|n| {
            // ratio of mantissas, the common 2^e cancels
            let c = js.coefficient_mantissa(r_f * n);
            let num: f64 = gamma.0.iter().zip(&c).map(|(g, x)| g * x).sum();
            num / c[0]
        })
        .collect();
    let g = gamma_class::<f64>(ring);
    let target = (gamma.eval(&g) / g.coeff(0)).re;
    let gaps: Vec<f64> = ratios.iter().map(|x| (x - target).abs()).collect();
    let final_gap = gaps.last().copied().unwrap_or(f64::INFINITY);
    Ok(AperyReport { ratios, target, gaps, final_gap })
}

#[derive(Clone, Debug)]
pub struct RadiusReport {
    /// Running `sup_{n_min <= m <= n} |m! G_m|^{1/m}`.
    pub running: Vec<(usize, f64)>,
    pub estimate: f64,
}

/// Running sup estimate of `limsup |n! G_n|^{1/n}` from `ln |G_n|`.
pub fn radius_estimate(ln_abs_g: &[f64], n_min: usize) -> RadiusReport {
    let mut best = 0.0f64;
    let mut running = Vec::new();
    for (n, &lg) in ln_abs_g.iter().enumerate().skip(n_min.max(1)) {
        if lg.is_finite() {
            best = best.max(((lg + ln_factorial(n as u64)) / n as f64).exp());
        }
        running.push((n, best));
    }
    RadiusReport { running, estimate: best }
}

#[derive(Clone, Debug)]
pub struct QuadSettings {
    pub nodes_per_unit: usize,
    /// Relative cutoff of the integrand magnitude defining the height `H`.
    pub cutoff: f64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self { nodes_per_unit: 32, cutoff: 1e-18 }
    }
}

fn ln_integrand(n: usize, t: f64, s: Complex64) -> Complex64 {
    ln_gamma(s) * n as f64 - s * (n as f64 * t.ln())
}

/// `Psi(t) = (1 / 2 pi i) int_{c - i inf}^{c + i inf} Gamma(s)^N t^{-N s} ds`
/// by composite Gauss-Legendre quadrature on `[0, H]` using conjugate symmetry.
pub fn mellin_psi(n: usize, t: f64, c: f64, q: &QuadSettings) -> Result<f64> {
    if c <= 0.0 || t <= 0.0 || n == 0 {
        return Err(Error::OutOfRange(format!("need N >= 1, c > 0, t > 0; got N = {n}, c = {c}, t = {t}")));
    }
    let (x, w) = gauss_legendre(q.nodes_per_unit);
    let peak = ln_integrand(n, t, Complex64::new(c, 0.0)).re;
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        let a = k as f64;
        let mut part = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            let y = a + 0.5 * (xi + 1.0);
            part += 0.5 * wi * (ln_integrand(n, t, Complex64::new(c, y)) - peak).exp().re;
        }
        sum += part;
        k += 1;
        let edge = (ln_integrand(n, t, Complex64::new(c, k as f64)).re - peak).exp();
        if edge < q.cutoff && (k as f64) > c {
            break;
        }
        if k > 100_000 {
            return Err(Error::Quadrature(format!("no decay by height {k}")));
        }
    }
    Ok(sum * peak.exp() / std::f64::consts::PI)
}

/// Mellin integral on two contours, `c` and `c + 1`, with their relative difference.
pub fn mellin_psi_checked(n: usize, t: f64, c: f64) -> Result<(f64, f64)> {
    let q = QuadSettings::default();
    let a = mellin_psi(n, t, c, &q)?;
    let b = mellin_psi(n, t, c + 1.0, &q)?;
    Ok((a, ((a - b) / a).abs()))
}

/// `e^{-N h log t} sum_n t^{N n} prod_{k=1}^{n} (h - k)^{-N}` modulo `h^N`.
pub fn frobenius_pi(n: usize, t: f64, nmax: usize) -> Series<f64> {
    let mut term = Series::<f64>::one(n);
    let mut acc = term.clone();
    let tn = cint::<f64>(1) * t.powi(n as i32);
    for k in 1..=nmax {
        let f = Series::linear(creal(-(k as f64)), Complex64::new(1.0, 0.0), n).powi(-(n as i64));
        term = (&term * &f).scale(tn);
        acc = &acc + &term;
        if term.c.iter().all(|z| z.norm() < 1e-18 * (1.0 + acc.c[0].norm())) && k > 2 {
            break;
        }
    }
    &acc * &exp_linear(creal(-(n as f64) * t.ln()), n)
}

/// `sum_n Res_{s=-n} Gamma(s)^N t^{-N s}`, with `Gamma(1+h)^N` from the
/// log-gamma series.
pub fn psi_residue_sum(n: usize, t: f64, nmax: usize) -> f64 {
    let g = ln_gamma_1p::<f64>(n).scale(cint(n as i64)).exp();
    let p = &frobenius_pi(n, t, nmax) * &g;
    p.c[n - 1].re
}

/// `int Gamma_P cup Pi(t)` with the Gamma class from the cohomology ring.
pub fn psi_gamma_pairing(n: usize, t: f64, nmax: usize) -> Result<f64> {
    let ring = Ring::build(Kind::ProjSpace { n })?;
    let pi = CohClass::from_coeffs(&ring, frobenius_pi(n, t, nmax).c)?;
    Ok((&gamma_class::<f64>(&ring) * &pi).integrate().re)
}

#[derive(Clone, Debug)]
pub struct PsiAsymptotic {
    pub grid: Vec<f64>,
    /// `Psi(t) t^{(N-1)/2} e^{N t}` on the grid.
    pub scaled: Vec<f64>,
    /// Polynomial extrapolation in `1/t` through the grid to `1/t = 0`.
    pub extrapolated: f64,
    /// `N^{-1/2} (2 pi)^{(N-1)/2}`.
    pub expected: f64,
    pub rel_error: f64,
}

/// Leading constant of `Psi(t) ~ C t^{-(N-1)/2} e^{-N t}`. Each `Psi(t)` uses
/// the contour through the real saddle `c = t + 1/2`; the values are
/// extrapolated in `1/t` by Lagrange interpolation at `1/t = 0`.
pub fn psi_asymptotic_constant(n: usize, grid: &[f64]) -> Result<PsiAsymptotic> {
    if grid.len() < 2 {
        return Err(Error::OutOfRange("need at least two grid points".into()));
    }
    let q = QuadSettings::default();
    let scaled = grid
        .iter()
        .map(|&t| {
            let v = mellin_psi(n, t, t + 0.5, &q)?;
            Ok(v * t.powf((n as f64 - 1.0) / 2.0) * (n as f64 * t).exp())
        })
        .collect::<Result<Vec<f64>>>()?;
    let u: Vec<f64> = grid.iter().map(|t| 1.0 / t).collect();
    let extrapolated = (0..u.len())
        .map(|i| {
            let li = (0..u.len()).filter(|&j| j != i).fold(1.0, |p, j| p * (0.0 - u[j]) / (u[i] - u[j]));
            li * scaled[i]
        })
        .sum::<f64>();
    let diffs: Vec<f64> = scaled.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let floor = 1e-12 * scaled.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if diffs.windows(2).any(|d| d[1] > d[0] * 1.5 + floor) {
        return Err(Error::Precondition("scaled values do not settle on the grid".into()));
    }
    let expected = (n as f64).powf(-0.5) * (2.0 * std::f64::consts::PI).powf((n as f64 - 1.0) / 2.0);
    Ok(PsiAsymptotic {
        grid: grid.to_vec(),
        scaled,
        extrapolated,
        expected,
        rel_error: ((extrapolated - expected) / expected).abs(),
    })
}
