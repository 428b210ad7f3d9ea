use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use super::Ring;
use crate::error::{Error, Result};
use crate::scalar::{cabs, cint, creal, to_c64, Cx, Real};

/// Cohomology class: complex coefficients over the Schubert basis of a ring.
#[derive(Clone, Debug)]
pub struct CohClass<R: Real = f64> {
    ring: Arc<Ring>,
    coeffs: Vec<Cx<R>>,
}

impl<R: Real> CohClass<R> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self { ring: ring.clone(), coeffs: vec![Cx::<R>::zero(); ring.rank()] }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::basis(ring, 0)
    }

    pub fn basis(ring: &Arc<Ring>, i: usize) -> Self {
        let mut c = Self::zero(ring);
        c.coeffs[i] = Cx::<R>::one();
        c
    }

    pub fn from_label(ring: &Arc<Ring>, label: &str) -> Result<Self> {
        Ok(Self::basis(ring, ring.parse_label(label)?))
    }

    pub fn from_coeffs(ring: &Arc<Ring>, coeffs: Vec<Cx<R>>) -> Result<Self> {
        if coeffs.len() != ring.rank() {
            return Err(Error::OutOfRange(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                ring.rank()
            )));
        }
        Ok(Self { ring: ring.clone(), coeffs })
    }

    /// First Chern class `N sigma_1`.
    pub fn c1(ring: &Arc<Ring>) -> Self {
        let mut c = Self::zero(ring);
        c.coeffs[1] = cint(ring.n() as i64);
        c
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Cx<R>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Cx<R>] {
        &mut self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Cx<R> {
        self.coeffs[i]
    }

    pub fn same_ring(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) || self.ring.kind() == o.ring.kind()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.same_ring(o) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn cup(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(&self.ring);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for &(k, c) in self.ring.cup_terms(i, j) {
                    out.coeffs[k] = out.coeffs[k] + ab * cint::<R>(c);
                }
            }
        }
        Ok(out)
    }

    /// Poincare pairing `int self cup o`.
    pub fn pair(&self, o: &Self) -> Result<Cx<R>> {
        self.check(o)?;
        Ok((0..self.coeffs.len())
            .fold(Cx::<R>::zero(), |s, i| s + self.coeffs[i] * o.coeffs[self.ring.dual_index(i)]))
    }

    /// Coefficient of the point class.
    pub fn integrate(&self) -> Cx<R> {
        self.coeffs[self.ring.top_index()]
    }

    /// Grading operator: degree `p` parts scale by `p - dim / 2`.
    pub fn mu(&self) -> Self {
        let half = R::ratio(self.ring.dim() as i64, 2);
        self.map_by_degree(|p| creal(R::int(p as i64) - half))
    }

    /// `c_1 cup self`.
    pub fn rho(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        let n = cint::<R>(self.ring.n() as i64);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &k in self.ring.pieri_terms(1, i) {
                out.coeffs[k] = out.coeffs[k] + a * n;
            }
        }
        out
    }

    /// `exp(s c_1) cup self`.
    pub fn exp_rho(&self, s: Cx<R>) -> Self {
        let mut out = self.clone();
        let mut term = self.clone();
        for k in 1..=self.ring.dim() {
            term = term.rho().scale(s / cint::<R>(k as i64));
            out = &out + &term;
        }
        out
    }

    pub fn map_by_degree(&self, f: impl Fn(usize) -> Cx<R>) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, &c)| c * f(self.ring.degree(i))).collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn degree_part(&self, p: usize) -> Self {
        self.map_by_degree(|q| if q == p { Cx::<R>::one() } else { Cx::<R>::zero() })
    }

    pub fn scale(&self, s: Cx<R>) -> Self {
        Self { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    /// Ring exponential; the nilpotent part is summed exactly.
    pub fn exp(&self) -> Self {
        let c0 = self.coeffs[0];
        let mut nil = self.clone();
        nil.coeffs[0] = Cx::<R>::zero();
        let mut out = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for k in 1..=self.ring.dim() {
            term = (&term * &nil).scale(Cx::<R>::one() / cint::<R>(k as i64));
            out = &out + &term;
        }
        out.scale(c0.exp())
    }

    /// Ring logarithm of a class with nonzero degree-zero part.
    pub fn ln(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Precondition("logarithm of a non-unit".into()));
        }
        let u = self.scale(Cx::<R>::one() / c0);
        let mut x = u.clone();
        x.coeffs[0] = Cx::<R>::zero();
        let mut out = Self::zero(&self.ring);
        out.coeffs[0] = c0.ln();
        let mut term = Self::one(&self.ring);
        for k in 1..=self.ring.dim() {
            term = &term * &x;
            let s = if k % 2 == 1 { cint::<R>(1) } else { cint::<R>(-1) };
            out = &out + &term.scale(s / cint::<R>(k as i64));
        }
        Ok(out)
    }

    /// Inverse of a class with nonzero degree-zero part.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Precondition("inverse of a non-unit".into()));
        }
        let mut x = self.scale(Cx::<R>::one() / c0);
        x.coeffs[0] = Cx::<R>::zero();
        let mut out = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for _ in 1..=self.ring.dim() {
            term = -&(&term * &x);
            out = &out + &term;
        }
        Ok(out.scale(Cx::<R>::one() / c0))
    }

    pub fn convert<S: Real>(&self) -> CohClass<S> {
        CohClass {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    Cx::new(
                        S::from_f64(c.re.f64()).unwrap() + S::from(c.re - R::of(c.re.f64())).unwrap(),
                        S::from_f64(c.im.f64()).unwrap() + S::from(c.im - R::of(c.im.f64())).unwrap(),
                    )
                })
                .collect(),
        }
    }

    /// Coefficients rounded to `f64`.
    pub fn to_f64(&self) -> CohClass<f64> {
        CohClass { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|&c| to_c64(c)).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, &c| m.max(cabs(c)))
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.coeffs.iter().zip(&o.coeffs).fold(0.0, |m, (&a, &b)| m.max(cabs(a - b)))
    }

    /// `{label: [re, im]}` in basis order.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            m.insert(self.ring.label_string(i), json!([c.re.f64(), c.im.f64()]));
        }
        Value::Object(m)
    }
}

impl<R: Real> Add for &CohClass<R> {
    type Output = CohClass<R>;
    fn add(self, o: &CohClass<R>) -> CohClass<R> {
        assert!(self.same_ring(o), "ring mismatch");
        CohClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<R: Real> Sub for &CohClass<R> {
    type Output = CohClass<R>;
    fn sub(self, o: &CohClass<R>) -> CohClass<R> {
        assert!(self.same_ring(o), "ring mismatch");
        CohClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<R: Real> Neg for &CohClass<R> {
    type Output = CohClass<R>;
    fn neg(self) -> CohClass<R> {
        self.scale(-Cx::<R>::one())
    }
}

/// Cup product.
///
/// # Panics
/// If the classes live in different rings; use [`CohClass::cup`] to get an error instead.
impl<R: Real> Mul for &CohClass<R> {
    type Output = CohClass<R>;
    fn mul(self, o: &CohClass<R>) -> CohClass<R> {
        self.cup(o).expect("ring mismatch")
    }
}
