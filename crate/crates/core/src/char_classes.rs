//! Characteristic classes from Chern roots: Chern characters, Todd and Gamma
//! classes, the bracket pairing, Euler pairings and zeta-regularized products.

use std::sync::Arc;

use num_traits::{Float, One, Zero};

use crate::cohomology_ring::symmetric::{
    alternant_to_class, det_poly, ring_basis, symmetric_to_class, MPoly, MonomialBasis,
};
use crate::cohomology_ring::{ssyt_contents, CohClass, Kind, Partition, Ring};
use crate::error::{Error, Result};
use crate::scalar::{cabs, cint, creal, i_pow, pi_i, two_pi_i, Cx, Real, C64, DD};
use crate::series::{exp_linear, ln_gamma_1p, ln_todd, Series};
use crate::special::{gamma_real, hurwitz_zeta_em};

/// Linear form `sum_i coeffs[i] x_i` with a signed multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleDesc {
    /// `O(k)` on projective space.
    LineOnP(i64),
    TangentP,
    /// `S^nu V^*` on `G(r, N)`.
    KapranovSchur(Partition),
    TangentG,
    /// Explicit virtual multiset of roots.
    Roots(Vec<Root>),
}

/// Virtual bundle on a ring, described by its Chern roots.
#[derive(Clone, Debug)]
pub struct Bundle {
    ring: Arc<Ring>,
    desc: BundleDesc,
    dual: bool,
}

impl Bundle {
    pub fn new(ring: &Arc<Ring>, desc: BundleDesc) -> Result<Self> {
        let r = ring.r();
        let ok = match &desc {
            BundleDesc::LineOnP(_) | BundleDesc::TangentP => r == 1,
            BundleDesc::KapranovSchur(nu) => nu.len() <= r,
            BundleDesc::TangentG => true,
            BundleDesc::Roots(rs) => rs.iter().all(|x| x.coeffs.len() == r),
        };
        if !ok {
            return Err(Error::InvalidBundle(format!("{desc:?} on {}", ring.kind())));
        }
        Ok(Self { ring: ring.clone(), desc, dual: false })
    }

    pub fn line(ring: &Arc<Ring>, k: i64) -> Result<Self> {
        Self::new(ring, BundleDesc::LineOnP(k))
    }

    pub fn kapranov(ring: &Arc<Ring>, nu: Partition) -> Result<Self> {
        Self::new(ring, BundleDesc::KapranovSchur(nu))
    }

    pub fn tangent(ring: &Arc<Ring>) -> Self {
        let desc = if ring.kind().is_proj() { BundleDesc::TangentP } else { BundleDesc::TangentG };
        Self { ring: ring.clone(), desc, dual: false }
    }

    pub fn dual(&self) -> Self {
        Self { dual: !self.dual, ..self.clone() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn desc(&self) -> &BundleDesc {
        &self.desc
    }

    pub fn roots(&self) -> Vec<Root> {
        let r = self.ring.r();
        let n = self.ring.n() as i64;
        let unit = |i: usize| {
            let mut c = vec![0i64; r];
            c[i] = 1;
            c
        };
        let mut out: Vec<Root> = match &self.desc {
            BundleDesc::LineOnP(k) => vec![Root { coeffs: vec![*k], mult: 1 }],
            BundleDesc::TangentP => {
                vec![Root { coeffs: vec![1], mult: n }, Root { coeffs: vec![0], mult: -1 }]
            }
            BundleDesc::KapranovSchur(nu) => ssyt_contents(nu, r)
                .into_iter()
                .map(|c| Root { coeffs: c.iter().map(|&x| x as i64).collect(), mult: 1 })
                .collect(),
            BundleDesc::TangentG => {
                let mut v: Vec<Root> = (0..r).map(|i| Root { coeffs: unit(i), mult: n }).collect();
                for i in 0..r {
                    for j in 0..r {
                        let mut c = unit(i);
                        c[j] -= 1;
                        v.push(Root { coeffs: c, mult: -1 });
                    }
                }
                v
            }
            BundleDesc::Roots(rs) => rs.clone(),
        };
        if self.dual {
            for x in out.iter_mut() {
                x.coeffs.iter_mut().for_each(|c| *c = -*c);
            }
        }
        out
    }

    pub fn rank(&self) -> i64 {
        self.roots().iter().map(|x| x.mult).sum()
    }
}

fn root_poly<R: Real>(basis: &Arc<MonomialBasis>, root: &Root) -> MPoly<R> {
    let a: Vec<Cx<R>> = root.coeffs.iter().map(|&c| cint(c)).collect();
    MPoly::linear(basis, &a)
}

/// `sum mult * f(root)` as a polynomial in the Chern roots.
fn additive<R: Real>(basis: &Arc<MonomialBasis>, roots: &[Root], f: &Series<R>) -> MPoly<R> {
    roots.iter().fold(MPoly::zero(basis), |acc, x| {
        acc.add(&root_poly(basis, x).compose(f).scale(cint(x.mult)))
    })
}

fn ch_poly<R: Real>(b: &Bundle, basis: &Arc<MonomialBasis>, a: Cx<R>) -> MPoly<R> {
    additive(basis, &b.roots(), &exp_linear(a, basis.max_deg + 1))
}

/// `exp(sum mult * ln f(root))` with `ln f` given as a series.
fn multiplicative<R: Real>(basis: &Arc<MonomialBasis>, roots: &[Root], ln_f: &Series<R>) -> MPoly<R> {
    additive(basis, roots, ln_f).exp()
}

/// Classical Chern character `sum e^{delta}`.
pub fn ch<R: Real>(b: &Bundle) -> CohClass<R> {
    let basis = ring_basis(&b.ring);
    symmetric_to_class(&ch_poly(b, &basis, Cx::<R>::one()), &b.ring)
}

/// Modified Chern character `sum e^{2 pi i delta}`.
pub fn ch_modified<R: Real>(b: &Bundle) -> CohClass<R> {
    let basis = ring_basis(&b.ring);
    symmetric_to_class(&ch_poly(b, &basis, two_pi_i()), &b.ring)
}

/// Classical Todd class `prod delta / (1 - e^{-delta})`.
pub fn todd_classical<R: Real>(b: &Bundle) -> CohClass<R> {
    let basis = ring_basis(&b.ring);
    let ln_td = ln_todd::<R>(basis.max_deg + 1);
    symmetric_to_class(&multiplicative(&basis, &b.roots(), &ln_td), &b.ring)
}

/// Modified Todd class `prod 2 pi i delta / (1 - e^{-2 pi i delta})`.
pub fn todd<R: Real>(b: &Bundle) -> CohClass<R> {
    let basis = ring_basis(&b.ring);
    let ln_td = ln_todd::<R>(basis.max_deg + 1).scale_var(two_pi_i());
    symmetric_to_class(&multiplicative(&basis, &b.roots(), &ln_td), &b.ring)
}

/// Gamma class of the tangent bundle as
/// `exp(-C c_1 + sum_{k>=2} (-1)^k (k-1)! zeta(k) ch_k)`, computed in the ring.
pub fn gamma_class<R: Real>(ring: &Arc<Ring>) -> CohClass<R> {
    let chk = ch::<R>(&Bundle::tangent(ring));
    let mut x = CohClass::c1(ring).scale(creal(-R::euler_gamma()));
    let mut fact = R::one();
    for k in 2..=ring.dim() {
        fact = fact * R::int(k as i64 - 1);
        let mut s = fact * R::zeta(k);
        if k % 2 == 1 {
            s = -s;
        }
        x = &x + &chk.degree_part(k).scale(creal(s));
    }
    x.exp()
}

/// Gamma class as `prod Gamma(1 + delta)` over the tangent roots.
pub fn gamma_class_from_roots<R: Real>(ring: &Arc<Ring>) -> CohClass<R> {
    let basis = ring_basis(ring);
    let lg = ln_gamma_1p::<R>(basis.max_deg + 1);
    symmetric_to_class(&multiplicative(&basis, &Bundle::tangent(ring).roots(), &lg), ring)
}

/// `(e^{a x_i} - e^{a x_j}) / (x_i - x_j) = sum_k a^k / k! h_{k-1}(x_i, x_j)`.
fn exp_divided_difference<R: Real>(basis: &Arc<MonomialBasis>, i: usize, j: usize, a: Cx<R>) -> MPoly<R> {
    let mut out = MPoly::zero(basis);
    let mut t = Cx::<R>::one();
    for k in 1..=basis.max_deg + 1 {
        t = t * a / cint::<R>(k as i64);
        for p in 0..k {
            let mut e = vec![0u32; basis.r];
            e[i] = p as u32;
            e[j] = (k - 1 - p) as u32;
            out = out.add(&MPoly::monomial(basis, &e, t));
        }
    }
    out
}

fn exp_form<R: Real>(basis: &Arc<MonomialBasis>, coeffs: &[Cx<R>]) -> MPoly<R> {
    MPoly::linear(basis, coeffs).exp()
}

/// Gamma class of `G(r, N)` from the closed form
/// `(2 pi i)^{-r(r-1)/2} e^{-(r-1) pi i sigma_1} prod_{i<j} (e^{2 pi i x_i} - e^{2 pi i x_j}) / (x_i - x_j) prod_i Gamma(1 + x_i)^N`.
pub fn gamma_class_closed_form<R: Real>(ring: &Arc<Ring>) -> CohClass<R> {
    let basis = ring_basis(ring);
    let r = ring.r();
    let n = ring.n() as i64;
    let shift = exp_form(&basis, &vec![pi_i::<R>() * cint::<R>(-(r as i64 - 1)); r]);
    let mut a = shift.scale(two_pi_i::<R>().powi(-((r * (r - 1) / 2) as i32)));
    for i in 0..r {
        for j in i + 1..r {
            let mut ci = vec![Cx::<R>::zero(); r];
            let mut cj = vec![Cx::<R>::zero(); r];
            ci[i] = two_pi_i();
            cj[j] = two_pi_i();
            a = a.mul(&exp_form(&basis, &ci).sub(&exp_form(&basis, &cj)));
        }
    }
    let lg = ln_gamma_1p::<R>(basis.max_deg + 1).scale(cint(n));
    for i in 0..r {
        let mut e = vec![Cx::<R>::zero(); r];
        e[i] = Cx::<R>::one();
        a = a.mul(&MPoly::linear(&basis, &e).compose(&lg).exp());
    }
    alternant_to_class(&a, ring)
}

/// Modified Chern character of `S^nu V^*` as
/// `det(e^{2 pi i x_i (nu_j + r - j)}) / prod_{i<j} (e^{2 pi i x_i} - e^{2 pi i x_j})`.
pub fn kapranov_ch<R: Real>(ring: &Arc<Ring>, nu: &Partition) -> Result<CohClass<R>> {
    let r = ring.r();
    if !nu.fits_box(r, ring.n() - r) {
        return Err(Error::InvalidBundle(format!("S^{nu} outside the box of {}", ring.kind())));
    }
    let basis = ring_basis(ring);
    let sh = nu.shifted(r);
    let m: Vec<Vec<MPoly<R>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut c = vec![Cx::<R>::zero(); r];
                    c[i] = two_pi_i::<R>() * cint::<R>(sh[j] as i64);
                    exp_form(&basis, &c)
                })
                .collect()
        })
        .collect();
    let mut e = MPoly::constant(&basis, Cx::<R>::one());
    for i in 0..r {
        for j in i + 1..r {
            e = e.mul(&exp_divided_difference(&basis, i, j, two_pi_i()));
        }
    }
    Ok(alternant_to_class(&det_poly(&m).mul(&e.inv()), ring))
}

/// `Gamma cup Ch(V)`.
pub fn gamma_ch<R: Real>(b: &Bundle) -> CohClass<R> {
    &gamma_class::<R>(&b.ring) * &ch_modified::<R>(b)
}

/// `e^{pi i mu}` applied to a class.
fn exp_pi_i_mu<R: Real>(a: &CohClass<R>) -> CohClass<R> {
    let d = a.ring().dim() as i64;
    a.map_by_degree(|p| i_pow::<R>(2 * p as i64 - d))
}

/// Bracket pairing `(2 pi)^{-d} (e^{pi i rho} e^{pi i mu} a, b)`, cross-checked
/// against the equivalent form `(2 pi)^{-d} (e^{pi i mu} e^{-pi i rho} a, b)`.
pub fn bracket_pairing<R: Real>(a: &CohClass<R>, b: &CohClass<R>) -> Result<Cx<R>> {
    if !a.same_ring(b) {
        return Err(Error::RingMismatch);
    }
    let d = a.ring().dim() as i32;
    let norm = creal((R::TAU()).powi(-d));
    let pi_i_c1 = pi_i::<R>();
    let v1 = exp_pi_i_mu(a).exp_rho(pi_i_c1).pair(b)? * norm;
    let v2 = exp_pi_i_mu(&a.exp_rho(-pi_i_c1)).pair(b)? * norm;
    let tol = 1e-9 * (1.0 + a.max_abs() * b.max_abs());
    let diff = cabs(v1 - v2);
    if diff > tol {
        return Err(Error::Residual { what: "bracket pairing forms".into(), residual: diff, tol });
    }
    Ok(v1)
}

/// Matrix `B` with `[a, b) = sum a_i B_ij b_j` in the Schubert basis.
pub fn bracket_matrix(ring: &Arc<Ring>) -> Result<Vec<Vec<C64>>> {
    let k = ring.rank();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| bracket_pairing::<f64>(&CohClass::basis(ring, i), &CohClass::basis(ring, j)))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct EulerPairing {
    pub raw: C64,
    pub value: i64,
}

/// `chi(E1, E2) = int ch(E1^*) ch(E2) td(T)` by Hirzebruch-Riemann-Roch.
pub fn euler_pairing_hrr(e1: &Bundle, e2: &Bundle) -> Result<EulerPairing> {
    if e1.ring.kind() != e2.ring.kind() {
        return Err(Error::RingMismatch);
    }
    let ring = &e1.ring;
    let basis = ring_basis(ring);
    let a: MPoly<f64> = ch_poly(&e1.dual(), &basis, Cx::<f64>::one());
    let b: MPoly<f64> = ch_poly(e2, &basis, Cx::<f64>::one());
    let td = multiplicative(&basis, &Bundle::tangent(ring).roots(), &ln_todd::<f64>(basis.max_deg + 1));
    let raw = symmetric_to_class(&a.mul(&b).mul(&td), ring).integrate();
    let value = raw.re.round();
    let tol = 1e-6 * (1.0 + value.abs());
    if (raw - value).norm() > tol {
        return Err(Error::NonIntegral { value: raw.re, tol });
    }
    Ok(EulerPairing { raw, value: value as i64 })
}

#[derive(Clone, Debug)]
pub struct ZetaReg {
    pub numeric: f64,
    pub closed_form: f64,
    pub rel_error: f64,
}

/// Zeta-regularized `prod_{n>=1} 1 / (delta + n z)` for real `z > 0`,
/// `delta > -z`: `exp(-f'(0))` with `f(s) = z^s zeta(-s, delta/z + 1)`.
/// The derivative is a central difference evaluated in double-double
/// arithmetic. The closed form is `sqrt(z / 2 pi) z^{delta/z} Gamma(1 + delta/z)`.
pub fn zeta_regularized_product(delta: f64, z: f64) -> Result<ZetaReg> {
    if z <= 0.0 || delta <= -z {
        return Err(Error::OutOfRange(format!("need z > 0 and delta > -z, got delta = {delta}, z = {z}")));
    }
    const STEP: f64 = 1e-5;
    let a = DD::from(delta) / DD::from(z) + DD::from(1.0);
    let lz = DD::from(z).ln();
    let f = |s: DD| (s * lz).exp() * hurwitz_zeta_em(-s, a);
    let h = DD::from(STEP);
    let d1 = (f(h) - f(-h)) / (DD::from(2.0) * h);
    let d3 = (f(h * DD::from(2.0)) - f(-h * DD::from(2.0))) / (DD::from(4.0) * h);
    // Richardson on the central difference removes the h^2 term
    let dfd = (DD::from(4.0) * d1 - d3) / DD::from(3.0);
    let numeric = (-dfd).exp().f64();
    let q = delta / z;
    let closed_form = (z / (2.0 * std::f64::consts::PI)).sqrt() * z.powf(q) * gamma_real(1.0 + q);
    Ok(ZetaReg { numeric, closed_form, rel_error: ((numeric - closed_form) / closed_form).abs() })
}

pub fn is_grassmannian(ring: &Ring) -> bool {
    matches!(ring.kind(), Kind::Grassmannian { .. })
}
