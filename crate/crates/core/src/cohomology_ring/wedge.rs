//! Satake map `wedge^r H(P^{N-1}) -> H(G(r, N))` and induced pairings.

use std::sync::Arc;

use num_traits::Zero;

use super::{CohClass, Ring};
use crate::char_classes::bracket_pairing;
use crate::error::{Error, Result};
use crate::linalg::det;
use crate::scalar::{cint, two_pi_i, Cx, Real};

fn check_factors<R: Real>(alphas: &[CohClass<R>], g: &Ring) -> Result<()> {
    if alphas.len() != g.r() {
        return Err(Error::OutOfRange(format!("{} factors for r = {}", alphas.len(), g.r())));
    }
    for a in alphas {
        let k = a.ring().kind();
        if k.r() != 1 || k.n() != g.n() {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

/// `Sat(alpha_1 ^ ... ^ alpha_r)`: the coefficient of `sigma_lambda` is
/// `det(c_{j, lambda_i + r - i})` with `c_{j, k}` the `h^k` coefficient of `alpha_j`.
pub fn satake<R: Real>(alphas: &[CohClass<R>], g: &Arc<Ring>) -> Result<CohClass<R>> {
    check_factors(alphas, g)?;
    let r = g.r();
    let n = g.n();
    let coef = |j: usize, k: u32| -> Cx<R> {
        if (k as usize) < n {
            alphas[j].coeff(k as usize)
        } else {
            Cx::<R>::zero()
        }
    };
    let coeffs = g
        .labels()
        .iter()
        .map(|lam| {
            let sh = lam.shifted(r);
            let m: Vec<Vec<Cx<R>>> = (0..r).map(|i| (0..r).map(|j| coef(j, sh[i])).collect()).collect();
            det(&m)
        })
        .collect();
    CohClass::from_coeffs(g, coeffs)
}

/// `(2 pi i)^{-r(r-1)/2} e^{-(r-1) pi i sigma_1} Sat(...)`.
pub fn sat_normalized<R: Real>(alphas: &[CohClass<R>], g: &Arc<Ring>) -> Result<CohClass<R>> {
    let s = satake(alphas, g)?;
    let r = g.r() as i64;
    let pref = two_pi_i::<R>().powi(-(r * (r - 1) / 2) as i32);
    let shift = Cx::new(R::zero(), -R::PI() * R::int(r - 1)) / cint::<R>(g.n() as i64);
    Ok(s.exp_rho(shift).scale(pref))
}

/// `det((alpha_i, beta_j))` with the Poincare pairing of each factor.
pub fn wedge_pairing<R: Real>(alphas: &[CohClass<R>], betas: &[CohClass<R>]) -> Result<Cx<R>> {
    let m = alphas
        .iter()
        .map(|a| betas.iter().map(|b| a.pair(b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(&m))
}

/// `det([alpha_i, beta_j))` with the bracket pairing of each factor.
pub fn wedge_bracket_pairing<R: Real>(alphas: &[CohClass<R>], betas: &[CohClass<R>]) -> Result<Cx<R>> {
    let m = alphas
        .iter()
        .map(|a| betas.iter().map(|b| bracket_pairing(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(&m))
}
