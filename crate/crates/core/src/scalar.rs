//! Scalar abstraction over `f64` and double-double floats.

use std::fmt::{Debug, Display};
use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use crate::dd::DD;
use crate::special;

pub type Cx<R> = Complex<R>;
pub type C64 = Complex<f64>;

/// Largest `k` for which `zeta(k)` is tabulated.
pub const ZETA_MAX: usize = 48;

/// Mathematical constants in the precision of a scalar type.
#[derive(Debug, Clone)]
pub struct Constants<R> {
    pub euler_gamma: R,
    /// `zeta[k]` is `zeta(k)` for `k >= 2`; entries 0 and 1 are NaN.
    pub zeta: Vec<R>,
}

pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn constants() -> &'static Constants<Self>;

    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64")
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits")
    }

    fn ratio(p: i64, q: i64) -> Self {
        Self::int(p) / Self::int(q)
    }

    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn zeta(k: usize) -> Self {
        Self::constants().zeta[k]
    }

    fn euler_gamma() -> Self {
        Self::constants().euler_gamma
    }
}

impl Real for DD {
    fn constants() -> &'static Constants<DD> {
        static C: OnceLock<Constants<DD>> = OnceLock::new();
        C.get_or_init(|| Constants {
            euler_gamma: special::euler_gamma_em::<DD>(),
            zeta: special::zeta_table_em::<DD>(ZETA_MAX),
        })
    }
}

impl Real for f64 {
    fn constants() -> &'static Constants<f64> {
        static C: OnceLock<Constants<f64>> = OnceLock::new();
        C.get_or_init(|| {
            let hp = DD::constants();
            Constants {
                euler_gamma: hp.euler_gamma.f64(),
                zeta: hp.zeta.iter().map(|z| z.f64()).collect(),
            }
        })
    }
}

pub fn cx<R: Real>(re: f64, im: f64) -> Cx<R> {
    Complex::new(R::of(re), R::of(im))
}

pub fn cint<R: Real>(n: i64) -> Cx<R> {
    Complex::new(R::int(n), R::zero())
}

pub fn creal<R: Real>(x: R) -> Cx<R> {
    Complex::new(x, R::zero())
}

/// `i^k` with exact entries.
pub fn i_pow<R: Real>(k: i64) -> Cx<R> {
    match k.rem_euclid(4) {
        0 => Complex::new(R::one(), R::zero()),
        1 => Complex::new(R::zero(), R::one()),
        2 => Complex::new(-R::one(), R::zero()),
        _ => Complex::new(R::zero(), -R::one()),
    }
}

pub fn two_pi_i<R: Real>() -> Cx<R> {
    Complex::new(R::zero(), R::TAU())
}

pub fn pi_i<R: Real>() -> Cx<R> {
    Complex::new(R::zero(), R::PI())
}

/// `e^{i pi x}` for rational `x = p / q`, exact when `2x` is an integer.
pub fn exp_pi_i_ratio<R: Real>(p: i64, q: i64) -> Cx<R> {
    if (2 * p) % q == 0 {
        return i_pow((2 * p) / q);
    }
    let (s, c) = (R::PI() * R::ratio(p, q)).sin_cos();
    Complex::new(c, s)
}

pub fn to_c64<R: Real>(z: Cx<R>) -> C64 {
    Complex::new(z.re.f64(), z.im.f64())
}

pub fn from_c64<R: Real>(z: C64) -> Cx<R> {
    Complex::new(R::of(z.re), R::of(z.im))
}

pub fn cabs<R: Real>(z: Cx<R>) -> f64 {
    to_c64(z).norm()
}
