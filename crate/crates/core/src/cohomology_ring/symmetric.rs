//! Truncated polynomials in the Chern roots `x_1, ..., x_r` and their
//! expansion in Schur polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::partition::{partitions_of, ssyt_contents};
use super::{CohClass, Partition, Ring};
use crate::error::{Error, Result};
use crate::scalar::{cint, Cx, Real};
use crate::series::Series;

const MUL_TABLE_LIMIT: usize = 2048;

/// Monomials `x^a` with `|a| <= max_deg` in `r` variables.
#[derive(Debug)]
pub struct MonomialBasis {
    pub r: usize,
    pub max_deg: usize,
    exps: Vec<Vec<u8>>,
    degs: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    table: Option<Vec<u32>>,
}

impl MonomialBasis {
    pub fn get(r: usize, max_deg: usize) -> Arc<MonomialBasis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut g = cache.lock().unwrap();
        g.entry((r, max_deg)).or_insert_with(|| Arc::new(Self::build(r, max_deg))).clone()
    }

    fn build(r: usize, max_deg: usize) -> Self {
        let mut exps = Vec::new();
        fn rec(i: usize, r: usize, rem: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if i == r {
                out.push(cur.clone());
                return;
            }
            for e in 0..=rem {
                cur.push(e as u8);
                rec(i + 1, r, rem - e, cur, out);
                cur.pop();
            }
        }
        rec(0, r, max_deg, &mut Vec::new(), &mut exps);
        let degs: Vec<usize> = exps.iter().map(|e| e.iter().map(|&x| x as usize).sum()).collect();
        let index: HashMap<Vec<u8>, usize> =
            exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = exps.len();
        let table = (n <= MUL_TABLE_LIMIT).then(|| {
            let mut t = vec![u32::MAX; n * n];
            for i in 0..n {
                for j in 0..n {
                    if degs[i] + degs[j] <= max_deg {
                        let e: Vec<u8> = exps[i].iter().zip(&exps[j]).map(|(a, b)| a + b).collect();
                        t[i * n + j] = index[&e] as u32;
                    }
                }
            }
            t
        });
        Self { r, max_deg, exps, degs, index, table }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        if e.iter().sum::<u32>() as usize > self.max_deg {
            return None;
        }
        let k: Vec<u8> = e.iter().map(|&x| x as u8).collect();
        self.index.get(&k).copied()
    }

    fn product_index(&self, i: usize, j: usize) -> Option<usize> {
        match &self.table {
            Some(t) => {
                let k = t[i * self.len() + j];
                (k != u32::MAX).then_some(k as usize)
            }
            None => {
                if self.degs[i] + self.degs[j] > self.max_deg {
                    return None;
                }
                let e: Vec<u8> = self.exps[i].iter().zip(&self.exps[j]).map(|(a, b)| a + b).collect();
                self.index.get(&e).copied()
            }
        }
    }
}

/// Polynomial in `r` variables truncated above total degree `max_deg`.
#[derive(Clone, Debug)]
pub struct MPoly<R: Real> {
    basis: Arc<MonomialBasis>,
    c: Vec<Cx<R>>,
}

impl<R: Real> MPoly<R> {
    pub fn zero(basis: &Arc<MonomialBasis>) -> Self {
        Self { basis: basis.clone(), c: vec![Cx::<R>::zero(); basis.len()] }
    }

    pub fn constant(basis: &Arc<MonomialBasis>, a: Cx<R>) -> Self {
        let mut p = Self::zero(basis);
        p.c[0] = a;
        p
    }

    pub fn monomial(basis: &Arc<MonomialBasis>, e: &[u32], a: Cx<R>) -> Self {
        let mut p = Self::zero(basis);
        if let Some(i) = basis.index_of(e) {
            p.c[i] = a;
        }
        p
    }

    /// `sum_i a_i x_i`.
    pub fn linear(basis: &Arc<MonomialBasis>, a: &[Cx<R>]) -> Self {
        let mut p = Self::zero(basis);
        for (i, &ai) in a.iter().enumerate() {
            let mut e = vec![0u32; basis.r];
            e[i] = 1;
            if let Some(k) = basis.index_of(&e) {
                p.c[k] = ai;
            }
        }
        p
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn coeff(&self, e: &[u32]) -> Cx<R> {
        self.basis.index_of(e).map_or(Cx::<R>::zero(), |i| self.c[i])
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { basis: self.basis.clone(), c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { basis: self.basis.clone(), c: self.c.iter().zip(&o.c).map(|(&a, &b)| a - b).collect() }
    }

    pub fn scale(&self, s: Cx<R>) -> Self {
        Self { basis: self.basis.clone(), c: self.c.iter().map(|&a| a * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.basis);
        let nz: Vec<(usize, Cx<R>)> =
            o.c.iter().copied().enumerate().filter(|(_, b)| !b.is_zero()).collect();
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &nz {
                if let Some(k) = self.basis.product_index(i, j) {
                    out.c[k] = out.c[k] + a * b;
                }
            }
        }
        out
    }

    /// `f(self)` for a power series `f`; exact when `self` has no constant term.
    pub fn compose(&self, f: &Series<R>) -> Self {
        let mut x = self.clone();
        let c0 = x.c[0];
        x.c[0] = Cx::<R>::zero();
        let g = if c0.is_zero() { f.clone() } else { shift_series(f, c0) };
        let mut out = Self::constant(&self.basis, g.c.first().copied().unwrap_or_else(Cx::zero));
        let mut pw = Self::constant(&self.basis, Cx::<R>::one());
        for k in 1..g.len().min(self.basis.max_deg + 1) {
            pw = pw.mul(&x);
            out = out.add(&pw.scale(g.c[k]));
        }
        out
    }

    pub fn exp(&self) -> Self {
        let c0 = self.c[0];
        let mut x = self.clone();
        x.c[0] = Cx::<R>::zero();
        let f = crate::series::exp_linear(Cx::<R>::one(), self.basis.max_deg + 1);
        x.compose(&f).scale(c0.exp())
    }

    /// Inverse of a polynomial with nonzero constant term.
    pub fn inv(&self) -> Self {
        let c0 = self.c[0];
        let mut x = self.scale(Cx::<R>::one() / c0);
        x.c[0] = Cx::<R>::zero();
        let mut out = Self::constant(&self.basis, Cx::<R>::one());
        let mut term = out.clone();
        for _ in 1..=self.basis.max_deg {
            term = term.mul(&x).scale(-Cx::<R>::one());
            out = out.add(&term);
        }
        out.scale(Cx::<R>::one() / c0)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, &a| m.max(crate::scalar::cabs(a)))
    }

    /// Exact division by `x_i - x_j`; errors if the remainder is not small.
    pub fn div_difference(&self, i: usize, j: usize) -> Result<Self> {
        // synthetic division in x_i, processing monomials from high x_i power down
        let b = &self.basis;
        let mut rem = self.clone();
        let mut q = Self::zero(b);
        let mut order: Vec<usize> = (0..b.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse((b.exps[k][i], b.degs[k])));
        let scale = self.max_abs().max(1e-300);
        for &k in &order {
            let a = rem.c[k];
            if a.is_zero() || b.exps[k][i] == 0 {
                continue;
            }
            // a x^e = a x^{e - e_i} (x_i - x_j) + a x^{e - e_i + e_j}
            let mut e: Vec<u32> = b.exps[k].iter().map(|&x| x as u32).collect();
            e[i] -= 1;
            let qi = b.index_of(&e).expect("lower monomial exists");
            q.c[qi] = q.c[qi] + a;
            rem.c[k] = Cx::<R>::zero();
            e[j] += 1;
            if let Some(t) = b.index_of(&e) {
                rem.c[t] = rem.c[t] + a;
            }
        }
        let top_deg = b.max_deg;
        let resid = rem
            .c
            .iter()
            .enumerate()
            .filter(|(k, _)| b.degs[*k] < top_deg)
            .fold(0.0f64, |m, (_, &a)| m.max(crate::scalar::cabs(a)));
        if resid > 1e-9 * scale {
            return Err(Error::Residual { what: "division by x_i - x_j".into(), residual: resid, tol: 1e-9 * scale });
        }
        Ok(q)
    }

    /// Drop monomials of degree above `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let mut out = self.clone();
        for k in 0..self.basis.len() {
            if self.basis.degs[k] > d {
                out.c[k] = Cx::<R>::zero();
            }
        }
        out
    }
}

/// `g(x) = f(c + x)` as a series in `x`.
fn shift_series<R: Real>(f: &Series<R>, c: Cx<R>) -> Series<R> {
    let n = f.len();
    let mut g = Series::zero(n);
    for (k, &fk) in f.c.iter().enumerate() {
        // (c + x)^k = sum_j C(k, j) c^{k - j} x^j
        let mut binom = Cx::<R>::one();
        for j in 0..=k {
            g.c[j] = g.c[j] + fk * binom * c.powi((k - j) as i32);
            binom = binom * cint::<R>((k - j) as i64) / cint::<R>(j as i64 + 1);
        }
    }
    g
}

/// Vandermonde `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde<R: Real>(basis: &Arc<MonomialBasis>) -> MPoly<R> {
    let r = basis.r;
    let mut p = MPoly::constant(basis, Cx::<R>::one());
    for i in 0..r {
        for j in i + 1..r {
            let mut a = vec![Cx::<R>::zero(); r];
            a[i] = Cx::<R>::one();
            a[j] = -Cx::<R>::one();
            p = p.mul(&MPoly::linear(basis, &a));
        }
    }
    p
}

/// Monomial basis large enough to extract Schur coefficients for `ring`.
pub fn ring_basis(ring: &Ring) -> Arc<MonomialBasis> {
    let r = ring.r();
    MonomialBasis::get(r, ring.dim() + r * (r - 1) / 2)
}

/// Schur coefficients of an antisymmetric polynomial: the coefficient of
/// `s_lambda` is the coefficient of `x^{lambda + delta}`.
pub fn alternant_to_class<R: Real>(a: &MPoly<R>, ring: &Arc<Ring>) -> CohClass<R> {
    let r = ring.r();
    let coeffs = ring.labels().iter().map(|lam| a.coeff(&lam.shifted(r))).collect();
    CohClass::from_coeffs(ring, coeffs).expect("basis size")
}

/// Schur expansion of a symmetric polynomial via the alternant `p * Delta`,
/// reduced modulo the ideal of the Grassmannian.
pub fn symmetric_to_class<R: Real>(p: &MPoly<R>, ring: &Arc<Ring>) -> CohClass<R> {
    let delta = vandermonde::<R>(p.basis());
    alternant_to_class(&p.mul(&delta), ring)
}

/// Monomial expansion of the Schur polynomial `s_nu(x_1, ..., x_r)`.
pub fn schur_poly<R: Real>(basis: &Arc<MonomialBasis>, nu: &Partition) -> MPoly<R> {
    let mut p = MPoly::zero(basis);
    for content in ssyt_contents(nu, basis.r) {
        if let Some(k) = basis.index_of(&content) {
            p.c[k] = p.c[k] + Cx::<R>::one();
        }
    }
    p
}

/// Schur expansion of a symmetric polynomial by leading-term elimination;
/// independent of [`symmetric_to_class`].
pub fn symmetric_to_class_elimination<R: Real>(p: &MPoly<R>, ring: &Arc<Ring>) -> CohClass<R> {
    let r = ring.r();
    let mut rest = p.clone();
    let mut out = CohClass::zero(ring);
    for k in 0..=ring.dim() {
        for lam in partitions_of(k, r) {
            let c = rest.coeff(&lam.padded(r));
            if c.is_zero() {
                continue;
            }
            rest = rest.sub(&schur_poly::<R>(p.basis(), &lam).scale(c));
            if let Some(i) = ring.index_of(&lam) {
                out.coeffs_mut()[i] = c;
            }
        }
    }
    out
}

/// Leibniz determinant of a square matrix of polynomials.
pub fn det_poly<R: Real>(m: &[Vec<MPoly<R>>]) -> MPoly<R> {
    let n = m.len();
    let basis = m[0][0].basis().clone();
    let mut acc = MPoly::zero(&basis);
    for (perm, sign) in crate::linalg::permutations(n) {
        let mut t = MPoly::constant(&basis, cint::<R>(sign));
        for (i, &j) in perm.iter().enumerate() {
            t = t.mul(&m[i][j]);
        }
        acc = acc.add(&t);
    }
    acc
}
