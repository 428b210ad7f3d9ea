//! Quantum multiplication by `c_1`, its spectrum, the fundamental solution
//! of the quantum differential equation near `z = 0`, the J-function and
//! the quantum period.

use std::collections::VecDeque;
use std::sync::Arc;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::char_classes::{bracket_pairing, gamma_ch, Bundle};
use crate::cohomology_ring::{CohClass, Ring};
use crate::error::{Error, Result};
use crate::linalg::SqMat;
use crate::scalar::{creal, two_pi_i, Cx, Real, C64};
use crate::series::Series;

/// Eigenvalues closer than this are one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Matrix of `c_1 *` at `q`, column `j` the image of basis element `j`.
pub fn c1_matrix(ring: &Ring, q: C64) -> DMatrix<C64> {
    let (cl, qu) = ring.c1_matrices();
    let k = ring.rank();
    DMatrix::from_fn(k, k, |i, j| C64::new(cl[i][j] as f64, 0.0) + q * qu[i][j] as f64)
}

/// `ring.n() e^{(r-1) pi i / N} (zeta^{i_1} + ... + zeta^{i_r})` over `r`-subsets, `zeta = e^{2 pi i / N}`.
pub fn closed_form_spectrum(r: usize, n: usize) -> Vec<C64> {
    let rot = C64::from_polar(n as f64, std::f64::consts::PI * (r as f64 - 1.0) / n as f64);
    crate::linalg::subsets(n, r)
        .into_iter()
        .map(|s| {
            rot * s
                .iter()
                .map(|&i| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / n as f64))
                .sum::<C64>()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Eigen {
    pub value: C64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct PropertyO {
    pub holds: bool,
    /// First failed clause: 1 `T` is an eigenvalue, 2 `T` is simple,
    /// 3 every eigenvalue of modulus `T` is `T` times an `r_F`-th root of unity.
    pub violated_clause: Option<u8>,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Eigen>,
    pub t: f64,
    pub t_prime: f64,
    pub t_multiplicity: usize,
    pub property_o: PropertyO,
    /// Largest distance to the closed-form eigenvalue multiset.
    pub closed_form_residual: f64,
}

/// Group values closer than `tol` (single linkage), ordered by decreasing
/// real part, then imaginary part.
pub fn cluster(values: &[C64], tol: f64) -> Vec<Eigen> {
    let mut used = vec![false; values.len()];
    let mut out = Vec::new();
    for i in 0..values.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        let mut k = 0;
        while k < members.len() {
            let v = values[members[k]];
            for j in 0..values.len() {
                if !used[j] && (values[j] - v).norm() < tol {
                    used[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        let mean = members.iter().map(|&m| values[m]).sum::<C64>() / members.len() as f64;
        out.push(Eigen { value: mean, multiplicity: members.len() });
    }
    out.sort_by(|a, b| {
        b.value.re.partial_cmp(&a.value.re).unwrap().then(b.value.im.partial_cmp(&a.value.im).unwrap())
    });
    out
}

/// Largest distance in a greedy nearest matching of two multisets of equal size.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

pub fn eigenvalues(ring: &Ring) -> Result<Vec<C64>> {
    let (cl, qu) = ring.c1_matrices();
    let k = ring.rank();
    let m = DMatrix::from_fn(k, k, |i, j| (cl[i][j] + qu[i][j]) as f64);
    let scale = m.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    // QR iteration can stall on cyclic matrices: retry on shifted copies
    for shift in [0.0, 0.371, -0.613, 0.127] {
        let a = &m + DMatrix::<f64>::identity(k, k) * (shift * scale);
        let Some(schur) = Schur::try_new(a, f64::EPSILON, 10_000) else {
            continue;
        };
        let ev: Vec<C64> = schur.complex_eigenvalues().iter().map(|z| z - shift * scale).collect();
        if ev.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Ok(ev);
        }
    }
    Err(Error::Eigen(format!("Schur iteration did not converge for {}", ring.kind())))
}

/// Spectrum of `c_1 *` at `q = 1`, with the Property O verdict.
pub fn spectrum(ring: &Ring) -> Result<SpectrumReport> {
    let ev = eigenvalues(ring)?;
    let scale = ev.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let clusters = cluster(&ev, CLUSTER_TOL * scale);
    let t = clusters.iter().fold(0.0f64, |m, e| m.max(e.value.norm()));
    let tol = CLUSTER_TOL * scale;
    let t_cluster = clusters.iter().find(|e| (e.value - C64::new(t, 0.0)).norm() < tol);
    let t_multiplicity = t_cluster.map_or(0, |e| e.multiplicity);
    let t_prime = clusters
        .iter()
        .filter(|e| (e.value - C64::new(t, 0.0)).norm() >= tol)
        .fold(f64::NEG_INFINITY, |m, e| m.max(e.value.re));
    let r_f = ring.n() as f64;
    let clause3 = clusters.iter().filter(|e| (e.value.norm() - t).abs() < tol).all(|e| {
        let k = e.value.arg() * r_f / (2.0 * std::f64::consts::PI);
        (k - k.round()).abs() * t < tol
    });
    let violated_clause = if t_cluster.is_none() {
        Some(1)
    } else if t_multiplicity != 1 {
        Some(2)
    } else if !clause3 {
        Some(3)
    } else {
        None
    };
    let closed = closed_form_spectrum(ring.r(), ring.n());
    Ok(SpectrumReport {
        eigenvalues: clusters,
        t,
        t_prime,
        t_multiplicity,
        property_o: PropertyO { holds: violated_clause.is_none(), violated_clause },
        closed_form_residual: multiset_distance(&ev, &closed),
    })
}

/// Graded pieces `G_k` of `c_1 *` at `q = 1`: entry `(i, j)` lies in `G_k`
/// with `k = 1 - (deg i - deg j)`. `G_0` is `rho`.
pub fn graded_pieces<R: Real>(ring: &Ring) -> Vec<SqMat<R>> {
    let (cl, qu) = ring.c1_matrices();
    let k = ring.rank();
    let kmax = ring.n();
    let mut g = vec![SqMat::<R>::zeros(k); kmax + 1];
    for i in 0..k {
        for j in 0..k {
            let v = cl[i][j] + qu[i][j];
            if v == 0 {
                continue;
            }
            let idx = 1 + ring.degree(j) as i64 - ring.degree(i) as i64;
            assert!(idx >= 0 && idx as usize <= kmax, "c1 entry outside graded range");
            let m = &mut g[idx as usize];
            let cur = m.get(i, j);
            m.set(i, j, cur + R::int(v));
        }
    }
    g
}

/// Solve `m X + [rho, X] = rhs` by the finite Neumann series in `ad_rho / m`.
fn solve_shifted<R: Real>(rho: &SqMat<R>, rhs: &SqMat<R>, m: usize) -> SqMat<R> {
    let inv_m = R::one() / R::int(m as i64);
    let mut term = rhs.scale(inv_m);
    let mut x = term.clone();
    for _ in 0..=2 * rho.n + 1 {
        term = rho.commutator(&term).scale(-inv_m);
        if term.is_zero() {
            break;
        }
        x = x.add(&term);
    }
    x
}

/// Formal solution `T(z) = sum T_m z^m` near the irregular point.
#[derive(Clone, Debug)]
pub struct FundamentalSolution<R: Real = f64> {
    ring: Arc<Ring>,
    pub t: Vec<SqMat<R>>,
    pub max_residual: f64,
}

const RECURSION_TOL: f64 = 1e-9;

/// `m T_m + G_m + sum_{j<m} G_{m-j} T_j + [rho, T_m] = 0` for `m = 1..=order`.
pub fn fundamental_solution<R: Real>(ring: &Arc<Ring>, order: usize) -> Result<FundamentalSolution<R>> {
    if order == 0 {
        return Err(Error::OutOfRange("order must be at least 1".into()));
    }
    let g = graded_pieces::<R>(ring);
    let rho = &g[0];
    let k = ring.rank();
    let mut t = vec![SqMat::<R>::identity(k)];
    let mut max_residual = 0.0f64;
    for m in 1..=order {
        let mut s = SqMat::zeros(k);
        for (j, tj) in t.iter().enumerate() {
            let d = m - j;
            if d < g.len() {
                s = s.add(&g[d].mul(tj));
            }
        }
        let x = solve_shifted(rho, &s.scale(-R::one()), m);
        let resid = x.scale(R::int(m as i64)).add(&s).add(&rho.commutator(&x)).max_abs();
        let scale = 1.0 + s.max_abs();
        max_residual = max_residual.max(resid / scale);
        if resid > RECURSION_TOL * scale {
            return Err(Error::Residual { what: format!("recursion at order {m}"), residual: resid, tol: RECURSION_TOL * scale });
        }
        t.push(x);
    }
    Ok(FundamentalSolution { ring: ring.clone(), t, max_residual })
}

impl<R: Real> FundamentalSolution<R> {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.t.len() - 1
    }

    /// Degree-regrouped coefficients `S_j = sum_m (T_m)_{shift j - m}`,
    /// complete for `j <= order - dim`.
    fn regrouped(&self) -> Vec<SqMat<R>> {
        let ring = &self.ring;
        let k = ring.rank();
        let d = ring.dim() as i64;
        let jmax = self.order() as i64 + d;
        let mut s = vec![SqMat::<R>::zeros(k); (jmax + 1) as usize];
        for (m, tm) in self.t.iter().enumerate() {
            for i in 0..k {
                for l in 0..k {
                    let v = tm.get(i, l);
                    if v.is_zero() {
                        continue;
                    }
                    let j = m as i64 + ring.degree(i) as i64 - ring.degree(l) as i64;
                    if (0..=jmax).contains(&j) {
                        let cur = s[j as usize].get(i, l);
                        s[j as usize].set(i, l, cur + v);
                    }
                }
            }
        }
        s
    }

    /// Residuals of `sum_{a+b=j} (-1)^a S_a^T P S_b = 0` for `1 <= j <= order - dim`.
    pub fn pairing_residuals(&self) -> Vec<f64> {
        let ring = &self.ring;
        let k = ring.rank();
        let p = SqMat::<R>::from_fn(k, |i, j| R::int(ring.pairing(i, j)));
        let s = self.regrouped();
        let jmax = self.order().saturating_sub(ring.dim());
        (1..=jmax)
            .map(|j| {
                let mut acc = SqMat::<R>::zeros(k);
                for a in 0..=j {
                    let term = s[a].transpose().mul(&p).mul(&s[j - a]);
                    acc = if a % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc.max_abs()
            })
            .collect()
    }

    /// `J_n = (T^{-1})_n 1` by direct series inversion; only stable for small orders.
    pub fn j_by_inversion(&self) -> Vec<CohClass<R>> {
        let k = self.ring.rank();
        let mut u = vec![SqMat::<R>::identity(k)];
        for m in 1..=self.order() {
            let mut s = SqMat::zeros(k);
            for j in 1..=m {
                s = s.add(&self.t[j].mul(&u[m - j]));
            }
            u.push(s.scale(-R::one()));
        }
        u.iter().map(|um| class_from_real(&self.ring, &um.column(0))).collect()
    }
}

fn class_from_real<R: Real>(ring: &Arc<Ring>, v: &[R]) -> CohClass<R> {
    CohClass::from_coeffs(ring, v.iter().map(|&x| creal(x)).collect()).expect("basis size")
}

fn split_exponent<R: Real>(m: &SqMat<R>) -> (SqMat<R>, i64) {
    let mx = m.a.iter().fold(R::zero(), |a, x| a.max(x.abs()));
    if mx.is_zero() {
        return (m.clone(), 0);
    }
    let e = mx.f64().log2().floor() as i64;
    (m.scale(R::int(2).powi(-e as i32)), e)
}

/// Coefficients `J_n` of the J-function, stored as mantissa times `2^e` so
/// that high orders do not underflow.
#[derive(Clone, Debug)]
pub struct JSeries<R: Real = f64> {
    ring: Arc<Ring>,
    mant: Vec<Vec<R>>,
    exp2: Vec<i64>,
}

/// `J_n = U_n 1`, with `U = T^{-1}` from its own recursion
/// `m U_m + [rho, U_m] = sum_{k>=1} U_{m-k} G_k`.
pub fn j_series<R: Real>(ring: &Arc<Ring>, nmax: usize) -> JSeries<R> {
    let g = graded_pieces::<R>(ring);
    let rho = &g[0];
    let k = ring.rank();
    let kmax = g.len() - 1;
    let mut window: VecDeque<(SqMat<R>, i64)> = VecDeque::new();
    window.push_front((SqMat::identity(k), 0));
    let mut mant = vec![SqMat::<R>::identity(k).column(0)];
    let mut exp2 = vec![0i64];
    for m in 1..=nmax {
        // window[i] holds U_{m-1-i}
        let terms: Vec<(SqMat<R>, i64)> = (1..=kmax.min(m))
            .filter(|&kk| !g[kk].is_zero())
            .filter_map(|kk| {
                let (u, e) = &window[kk - 1];
                (!u.is_zero()).then(|| (u.mul(&g[kk]), *e))
            })
            .collect();
        let (um, e) = if terms.is_empty() {
            (SqMat::zeros(k), 0)
        } else {
            let emax = terms.iter().map(|t| t.1).max().unwrap();
            let mut s = SqMat::zeros(k);
            for (t, e) in &terms {
                s = s.add(&t.scale(R::int(2).powi((e - emax) as i32)));
            }
            let x = solve_shifted(rho, &s, m);
            let (x, de) = split_exponent(&x);
            (x, emax + de)
        };
        mant.push(um.column(0));
        exp2.push(e);
        window.push_front((um, e));
        window.truncate(kmax);
    }
    JSeries { ring: ring.clone(), mant, exp2 }
}

impl<R: Real> JSeries<R> {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nmax(&self) -> usize {
        self.mant.len() - 1
    }

    /// `J_n`; entries below the range of `R` flush to zero.
    pub fn coefficient(&self, n: usize) -> CohClass<R> {
        let s = R::int(2).powi(self.exp2[n] as i32);
        class_from_real(&self.ring, &self.mant[n].iter().map(|&x| x * s).collect::<Vec<_>>())
    }

    /// Mantissa of `J_n`; `J_n = mantissa * 2^e` for a shared exponent `e`.
    pub fn coefficient_mantissa(&self, n: usize) -> Vec<f64> {
        self.mant[n].iter().map(|x| x.f64()).collect()
    }

    /// `ln |(J_n)_i|`, `-inf` for zero entries.
    pub fn ln_abs(&self, n: usize, i: usize) -> f64 {
        let m = self.mant[n][i].f64().abs();
        if m == 0.0 {
            f64::NEG_INFINITY
        } else {
            m.ln() + self.exp2[n] as f64 * std::f64::consts::LN_2
        }
    }

    /// `ln max_i |(J_n)_i|`.
    pub fn ln_norm(&self, n: usize) -> f64 {
        (0..self.ring.rank()).map(|i| self.ln_abs(n, i)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `sum_n J_n (e^{i theta} t)^n` without the `e^{c_1 log}` prefactor, and
    /// `ln` of the largest omitted-tail estimate relative to the sum.
    fn partial_sum(&self, t: R, theta: R) -> (Vec<Cx<R>>, f64) {
        let k = self.ring.rank();
        let ln_t = t.f64().ln();
        let mut acc = vec![Cx::<R>::zero(); k];
        for n in 0..=self.nmax() {
            if self.mant[n].iter().all(|x| x.is_zero()) {
                continue;
            }
            let (s, c) = (theta * R::int(n as i64)).sin_cos();
            let ph = Complex::new(c, s);
            // t^n 2^e computed through the logarithm to avoid overflow in the scale
            let lmag = n as f64 * ln_t + self.exp2[n] as f64 * std::f64::consts::LN_2;
            if lmag < -1400.0 {
                continue;
            }
            let sc = power_scale(t, n, self.exp2[n]);
            for i in 0..k {
                acc[i] = acc[i] + ph * creal(self.mant[n][i] * sc);
            }
        }
        let tail = (self.nmax().saturating_sub(self.ring.n())..=self.nmax())
            .map(|n| self.ln_norm(n) + n as f64 * ln_t)
            .fold(f64::NEG_INFINITY, f64::max);
        let ln_sum = acc.iter().fold(0.0f64, |m, z| m.max(crate::scalar::cabs(*z))).ln();
        (acc, tail - ln_sum)
    }

    /// `J(e^{i theta} t) = e^{c_1 (log t + i theta)} sum_n J_n (e^{i theta} t)^n`;
    /// errors if the last period of terms is not below `tail_tol` relative to the sum.
    pub fn eval(&self, t: R, theta: R, tail_tol: f64) -> Result<CohClass<R>> {
        if t <= R::zero() {
            return Err(Error::OutOfRange("t must be positive".into()));
        }
        let (acc, rel_tail) = self.partial_sum(t, theta);
        if rel_tail > tail_tol.ln() {
            return Err(Error::TailNotConverged(format!(
                "relative tail {:.2e} at nmax = {} exceeds {tail_tol:.1e}",
                rel_tail.exp(),
                self.nmax()
            )));
        }
        let s = CohClass::from_coeffs(&self.ring, acc)?;
        Ok(s.exp_rho(Complex::new(t.ln(), theta)))
    }
}

/// `t^n 2^e` evaluated without intermediate overflow.
fn power_scale<R: Real>(t: R, n: usize, e: i64) -> R {
    let mut v = R::one();
    let mut e = e;
    let two = R::int(2);
    for _ in 0..n {
        v = v * t;
        while v.abs() > R::int(1 << 40) && e < 0 {
            v = v / R::int(1 << 40);
            e += 40;
        }
    }
    v * two.powi(e as i32)
}

/// Smallest `n` with `(T t)^n / n!` below `e^{-2 T t - 90}`, enough for sums
/// that cancel down to `e^{-T t}`.
pub fn default_nmax(ring: &Ring, t: f64) -> usize {
    let tt = closed_form_spectrum(ring.r(), ring.n()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let x = tt * t;
    let mut n = (std::f64::consts::E * x).ceil().max(1.0) as usize;
    while n as f64 * x.ln() - crate::special::ln_factorial(n as u64) > -2.0 * x - 90.0 {
        n += 1;
    }
    n + 2 * ring.n()
}

pub fn j_coefficients<R: Real>(ring: &Arc<Ring>, nmax: usize) -> Vec<CohClass<R>> {
    let js = j_series::<R>(ring, nmax);
    (0..=nmax).map(|n| js.coefficient(n)).collect()
}

/// `J_{Nn} = 1 / prod_{k=1}^{n} (h + k)^N` on `P^{N-1}`.
pub fn j_closed_form_p<R: Real>(ring: &Arc<Ring>, nmax: usize) -> Result<Vec<CohClass<R>>> {
    if !ring.kind().is_proj() {
        return Err(Error::Precondition("closed form J requires projective space".into()));
    }
    let n = ring.n();
    let mut out = vec![CohClass::zero(ring); nmax + 1];
    let mut prod = Series::<R>::one(n);
    out[0] = CohClass::one(ring);
    for blk in 1..=nmax / n {
        let f = Series::linear(creal(R::int(blk as i64)), Cx::<R>::one(), n).powi(-(n as i64));
        prod = &prod * &f;
        out[blk * n] = CohClass::from_coeffs(ring, prod.c.clone())?;
    }
    Ok(out)
}

/// Quantum period `G_n = <[pt], J_n>`: the degree-zero component of `J_n`.
pub fn quantum_period(ring: &Arc<Ring>, nmax: usize) -> Vec<f64> {
    let js = j_series::<f64>(ring, nmax);
    (0..=nmax).map(|n| js.coefficient(n).coeff(0).re).collect()
}

/// `ln |G_n|` for `n = 0..=nmax`, valid far beyond the `f64` range of `G_n`.
pub fn quantum_period_ln_abs(ring: &Arc<Ring>, nmax: usize) -> Vec<f64> {
    let js = j_series::<f64>(ring, nmax);
    (0..=nmax).map(|n| js.ln_abs(n, 0)).collect()
}

/// `Z(V) = (2 pi i)^{dim} [J(e^{pi i} t), Gamma Ch(V))`.
pub fn central_charge<R: Real>(v: &Bundle, t: R, nmax: usize) -> Result<Cx<R>> {
    let ring = v.ring();
    let js = j_series::<R>(ring, nmax);
    let tol = if nmax == 0 { f64::INFINITY } else { 1e4 * R::epsilon().f64() };
    let j = js.eval(t, R::PI(), tol)?;
    let gc = gamma_ch::<R>(v);
    Ok(bracket_pairing(&j, &gc)? * two_pi_i::<R>().powi(ring.dim() as i32))
}
