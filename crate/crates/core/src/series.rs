//! Truncated univariate power series with complex coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{cint, Cx, Real};

/// `sum_{k < len} c[k] x^k`, truncated modulo `x^len`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: Real> {
    pub c: Vec<Cx<R>>,
}

impl<R: Real> Series<R> {
    pub fn zero(len: usize) -> Self {
        Self { c: vec![Cx::<R>::zero(); len] }
    }

    pub fn one(len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.c[0] = Cx::<R>::one();
        }
        s
    }

    pub fn from_coeffs(c: Vec<Cx<R>>) -> Self {
        Self { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `a + b x`.
    pub fn linear(a: Cx<R>, b: Cx<R>, len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.c[0] = a;
        }
        if len > 1 {
            s.c[1] = b;
        }
        s
    }

    pub fn scale(&self, a: Cx<R>) -> Self {
        Self { c: self.c.iter().map(|&x| x * a).collect() }
    }

    /// `f(a x)`.
    pub fn scale_var(&self, a: Cx<R>) -> Self {
        let mut p = Cx::<R>::one();
        let mut out = self.clone();
        for x in out.c.iter_mut() {
            *x = *x * p;
            p = p * a;
        }
        out
    }

    pub fn exp(&self) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let c0 = self.c[0].exp();
        // f' = a' f with a' the derivative of the exponent
        let mut f = Self::zero(n);
        f.c[0] = Cx::<R>::one();
        for k in 1..n {
            let mut s = Cx::<R>::zero();
            for j in 1..=k {
                s = s + cint::<R>(j as i64) * self.c[j] * f.c[k - j];
            }
            f.c[k] = s / cint::<R>(k as i64);
        }
        f.scale(c0)
    }

    pub fn ln(&self) -> Self {
        let n = self.len();
        let c0 = self.c[0];
        let u = self.scale(Cx::<R>::one() / c0);
        let mut l = Self::zero(n);
        l.c[0] = c0.ln();
        // u l' = u'
        for k in 1..n {
            let mut s = cint::<R>(k as i64) * u.c[k];
            for j in 1..k {
                s = s - cint::<R>(j as i64) * l.c[j] * u.c[k - j];
            }
            l.c[k] = s / cint::<R>(k as i64);
        }
        l
    }

    pub fn inv(&self) -> Self {
        let n = self.len();
        let mut out = Self::zero(n);
        let a0 = Cx::<R>::one() / self.c[0];
        out.c[0] = a0;
        for k in 1..n {
            let mut s = Cx::<R>::zero();
            for j in 1..=k {
                s = s + self.c[j] * out.c[k - j];
            }
            out.c[k] = -s * a0;
        }
        out
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one(self.len());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }
}

impl<R: Real> Add for &Series<R> {
    type Output = Series<R>;
    fn add(self, o: &Series<R>) -> Series<R> {
        Series { c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect() }
    }
}

impl<R: Real> Sub for &Series<R> {
    type Output = Series<R>;
    fn sub(self, o: &Series<R>) -> Series<R> {
        Series { c: self.c.iter().zip(&o.c).map(|(&a, &b)| a - b).collect() }
    }
}

impl<R: Real> Neg for &Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        Series { c: self.c.iter().map(|&a| -a).collect() }
    }
}

impl<R: Real> Mul for &Series<R> {
    type Output = Series<R>;
    fn mul(self, o: &Series<R>) -> Series<R> {
        let n = self.len().min(o.len());
        let mut c = vec![Cx::<R>::zero(); n];
        for (i, &a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j] + a * b;
            }
        }
        Series { c }
    }
}

/// `ln Gamma(1 + x) = -gamma x + sum_{k>=2} (-1)^k zeta(k) x^k / k`.
pub fn ln_gamma_1p<R: Real>(len: usize) -> Series<R> {
    let mut s = Series::zero(len);
    if len > 1 {
        s.c[1] = Cx::new(-R::euler_gamma(), R::zero());
    }
    for k in 2..len {
        let z = R::zeta(k) / R::int(k as i64);
        s.c[k] = Cx::new(if k % 2 == 0 { z } else { -z }, R::zero());
    }
    s
}

/// `e^{a x}`.
pub fn exp_linear<R: Real>(a: Cx<R>, len: usize) -> Series<R> {
    let mut s = Series::zero(len);
    let mut t = Cx::<R>::one();
    for k in 0..len {
        s.c[k] = t;
        t = t * a / cint::<R>(k as i64 + 1);
    }
    s
}

/// `ln(x / (1 - e^{-x}))`.
pub fn ln_todd<R: Real>(len: usize) -> Series<R> {
    // (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
    let mut s = Series::zero(len);
    let mut f = R::one();
    for k in 0..len {
        f = f * R::int(k as i64 + 1);
        let v = R::one() / f;
        s.c[k] = Cx::new(if k % 2 == 0 { v } else { -v }, R::zero());
    }
    -&s.ln()
}
