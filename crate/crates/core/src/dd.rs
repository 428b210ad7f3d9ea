//! Double-double scalar.
//!
//! Wraps `twofloat::TwoFloat` for its error-free addition and multiplication
//! and supplies division, square root and elementary functions that keep the
//! full double-double precision.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DD(TwoFloat);

impl DD {
    /// `hi + lo`, renormalized.
    pub fn new(hi: f64, lo: f64) -> Self {
        DD(TwoFloat::new_add(hi, lo))
    }

    fn f(x: f64) -> Self {
        DD(<TwoFloat as From<f64>>::from(x))
    }

    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    fn mul_f64(self, x: f64) -> Self {
        DD(self.0 * x)
    }

    fn div_f64(self, x: f64) -> Self {
        DD(self.0 / x)
    }

    /// `e^x - 1` for `|x| <= ln 2 / 2`: Taylor series at `x / 16`, then four
    /// doublings `f(2y) = f(y) (f(y) + 2)`.
    fn expm1_reduced(r: DD) -> DD {
        let r = r.div_f64(16.0);
        let mut term = r;
        let mut sum = r;
        for n in 2..=18 {
            term = (term * r).div_f64(n as f64);
            sum += term;
        }
        for _ in 0..4 {
            sum = sum * (sum + DD::f(2.0));
        }
        sum
    }

    fn exp_reduced(r: DD) -> DD {
        DD::expm1_reduced(r) + DD::one()
    }

    /// Sine and cosine for `|r| <= pi / 4`.
    fn sin_cos_reduced(r: DD) -> (DD, DD) {
        let r2 = r * r;
        let (mut s, mut c) = (r, DD::one());
        let (mut ts, mut tc) = (r, DD::one());
        for n in 1..=16 {
            let m = 2.0 * n as f64;
            ts = -(ts * r2).div_f64(m * (m + 1.0));
            tc = -(tc * r2).div_f64((m - 1.0) * m);
            s += ts;
            c += tc;
            if tc.hi().abs() < 1e-34 {
                break;
            }
        }
        (s, c)
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> Self {
        DD(<TwoFloat as From<f64>>::from(x))
    }
}

impl fmt::Debug for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DD({:e} + {:e})", self.hi(), self.lo())
    }
}

impl fmt::Display for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.hi(), f)
    }
}

impl PartialOrd for DD {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&o.0)
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD(-self.0)
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, o: DD) -> DD {
        DD(self.0 + o.0)
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, o: DD) -> DD {
        DD(self.0 - o.0)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, o: DD) -> DD {
        DD(self.0 * o.0)
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, o: DD) -> DD {
        let b = o.hi();
        if b == 0.0 || !b.is_finite() || !self.hi().is_finite() {
            return DD::f(self.hi() / b);
        }
        // long division with three f64 quotient digits
        let q1 = self.hi() / b;
        let r = self - o.mul_f64(q1);
        let q2 = r.hi() / b;
        let r = r - o.mul_f64(q2);
        let q3 = r.hi() / b;
        DD::new(q1, q2) + DD::f(q3)
    }
}

impl Rem for DD {
    type Output = DD;
    fn rem(self, o: DD) -> DD {
        self - (self / o).trunc() * o
    }
}

macro_rules! assign_ops {
    ($($tr:ident $f:ident $op:tt),*) => {
        $(impl $tr for DD {
            fn $f(&mut self, o: DD) {
                *self = *self $op o;
            }
        })*
    };
}

assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Zero for DD {
    fn zero() -> Self {
        DD::f(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
}

impl One for DD {
    fn one() -> Self {
        DD::f(1.0)
    }
}

impl Num for DD {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(DD::f)
    }
}

impl ToPrimitive for DD {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        Some(t.hi().to_i64()? + t.lo().to_i64()?)
    }
    fn to_u64(&self) -> Option<u64> {
        let v = self.to_i64()?;
        u64::try_from(v).ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi() + self.lo())
    }
}

impl FromPrimitive for DD {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DD::new(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DD::new(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(DD::f(x))
    }
}

impl NumCast for DD {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(DD::f)
    }
}

macro_rules! consts {
    ($($name:ident),*) => {
        $(fn $name() -> Self {
            DD(<TwoFloat as FloatConst>::$name())
        })*
    };
}

impl FloatConst for DD {
    consts!(
        E, FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, FRAC_2_SQRT_PI, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6,
        FRAC_PI_8, LN_10, LN_2, LOG10_E, LOG2_E, PI, SQRT_2, TAU, LOG10_2, LOG2_10
    );
}

impl Float for DD {
    fn nan() -> Self {
        DD::f(f64::NAN)
    }
    fn infinity() -> Self {
        DD::f(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        DD::f(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        DD::f(-0.0)
    }
    fn min_value() -> Self {
        DD::f(f64::MIN)
    }
    fn min_positive_value() -> Self {
        DD::f(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        DD::f(2f64.powi(-104))
    }
    fn max_value() -> Self {
        DD::f(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi().is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi().is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi().is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi().is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi().classify()
    }
    fn floor(self) -> Self {
        DD(self.0.floor())
    }
    fn ceil(self) -> Self {
        DD(self.0.ceil())
    }
    fn round(self) -> Self {
        DD(self.0.round())
    }
    fn trunc(self) -> Self {
        DD(self.0.trunc())
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi() < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        DD::f(self.hi().signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi().is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi().is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        DD::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = DD::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi() <= 0.0 || !self.hi().is_finite() {
            return DD::f(self.hi().sqrt());
        }
        let s = self.hi().sqrt();
        let sd = DD::f(s);
        sd + (self - sd * sd).div_f64(2.0 * s)
    }
    fn exp(self) -> Self {
        let x = self.hi();
        if x.is_nan() {
            return self;
        }
        if x > 709.0 {
            return DD::infinity();
        }
        if x < -745.0 {
            return DD::zero();
        }
        let k = (x / std::f64::consts::LN_2).round();
        let r = self - DD::LN_2().mul_f64(k);
        let k = k as i32;
        // split the power of two so that neither factor overflows
        let (a, b) = (k / 2, k - k / 2);
        DD::exp_reduced(r).mul_f64(2f64.powi(a)).mul_f64(2f64.powi(b))
    }
    fn exp2(self) -> Self {
        (self * DD::LN_2()).exp()
    }
    fn ln(self) -> Self {
        let x = self.hi();
        if x <= 0.0 || !x.is_finite() {
            return DD::f(x.ln());
        }
        let mut y = DD::f(x.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - DD::one();
        }
        y
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / DD::LN_2()
    }
    fn log10(self) -> Self {
        self.ln() / DD::LN_10()
    }
    fn max(self, o: Self) -> Self {
        if self >= o || o.is_nan() {
            self
        } else {
            o
        }
    }
    fn min(self, o: Self) -> Self {
        if self <= o || o.is_nan() {
            self
        } else {
            o
        }
    }
    fn abs_sub(self, o: Self) -> Self {
        if self > o {
            self - o
        } else {
            DD::zero()
        }
    }
    fn cbrt(self) -> Self {
        if self.hi() == 0.0 || !self.hi().is_finite() {
            return self;
        }
        let y = DD::f(self.hi().cbrt());
        y - (y * y * y - self) / (y * y).mul_f64(3.0)
    }
    fn hypot(self, o: Self) -> Self {
        let (a, b) = (self.abs(), o.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let q = small / big;
        big * (DD::one() + q * q).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn asin(self) -> Self {
        self.atan2((DD::one() - self * self).sqrt())
    }
    fn acos(self) -> Self {
        (DD::one() - self * self).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(DD::one())
    }
    fn atan2(self, x: Self) -> Self {
        let y = self;
        let mut th = DD::f(y.hi().atan2(x.hi()));
        if !th.is_finite() || (y.is_zero() && x.is_zero()) {
            return th;
        }
        for _ in 0..2 {
            let (s, c) = th.sin_cos();
            th = th + (y * c - x * s) / (x * c + y * s);
        }
        th
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.hi().is_finite() {
            return (DD::nan(), DD::nan());
        }
        let k = (self.hi() / std::f64::consts::FRAC_PI_2).round();
        let r = self - DD::FRAC_PI_2().mul_f64(k);
        let (s, c) = DD::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn exp_m1(self) -> Self {
        if self.hi().abs() < 0.3 {
            DD::expm1_reduced(self)
        } else {
            self.exp() - DD::one()
        }
    }
    fn ln_1p(self) -> Self {
        let x = self.hi();
        if x.abs() > 0.3 {
            return (DD::one() + self).ln();
        }
        let mut y = DD::f(x.ln_1p());
        for _ in 0..2 {
            // y <- y - (e^y - 1 - x) / e^y
            let em = DD::expm1_reduced(y);
            y = y - (em - self) / (em + DD::one());
        }
        y
    }
    fn sinh(self) -> Self {
        if self.hi().abs() < 0.3 {
            let e = self.exp_m1();
            return (e + e / (e + DD::one())).div_f64(2.0);
        }
        let e = self.exp();
        (e - e.recip()).div_f64(2.0)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).div_f64(2.0)
    }
    fn tanh(self) -> Self {
        if self.hi().abs() > 40.0 {
            return DD::f(self.hi().signum());
        }
        let e = (self.mul_f64(2.0)).exp_m1();
        e / (e + DD::f(2.0))
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let v = (a + (a * a + DD::one()).sqrt()).ln();
        if self.hi() < 0.0 {
            -v
        } else {
            v
        }
    }
    fn acosh(self) -> Self {
        (self + (self * self - DD::one()).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        ((DD::one() + self) / (DD::one() - self)).ln().div_f64(2.0)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi().integer_decode()
    }
}
