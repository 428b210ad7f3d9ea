//! Checks of the Satake identities between `P^{N-1}` and `G(r, N)`: the
//! spectrum, the Gamma-Kapranov wedge identity, the pairing and the wedge of
//! marked reflection systems.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::char_classes::{bracket_pairing, ch_modified, gamma_class, gamma_class_closed_form, kapranov_ch, Bundle};
use crate::cohomology_ring::{sat_normalized, wedge_bracket_pairing, CohClass, Kind, Partition, Ring};
use crate::error::{Error, Result};
use crate::linalg::subsets;
use crate::mrs::{
    beilinson_gamma_basis, beilinson_gamma_mrs, kapranov_gamma_mrs, kapranov_subset, marking_blocks, rounded_gram,
    wedge_mrs, Mrs,
};
use crate::quantum_connection::{closed_form_spectrum, eigenvalues, multiset_distance};
use crate::scalar::{C64, DD};

pub fn rings(r: usize, n: usize) -> Result<(Arc<Ring>, Arc<Ring>)> {
    Ok((Ring::build(Kind::ProjSpace { n })?, Ring::build(Kind::Grassmannian { r, n })?))
}

#[derive(Clone, Debug)]
pub struct WedgeSpectrumReport {
    /// Distance between the `G` eigenvalues and the wedge sums of `P` eigenvalues.
    pub residual: f64,
    /// Distance between the `P` eigenvalues and `N e^{2 pi i k / N}`.
    pub p_residual: f64,
}

/// Eigenvalues of `c_1 *` on `G(r, N)` versus sums over `r`-subsets of
/// `e^{(r-1) pi i / N}` times the eigenvalues on `P^{N-1}`.
pub fn check_wedge_spectrum(r: usize, n: usize) -> Result<WedgeSpectrumReport> {
    let (p, g) = rings(r, n)?;
    let ep = eigenvalues(&p)?;
    let eg = eigenvalues(&g)?;
    let rot = C64::from_polar(1.0, PI * (r as f64 - 1.0) / n as f64);
    let sums: Vec<C64> = subsets(n, r).iter().map(|s| rot * s.iter().map(|&i| ep[i]).sum::<C64>()).collect();
    Ok(WedgeSpectrumReport {
        residual: multiset_distance(&eg, &sums),
        p_residual: multiset_distance(&ep, &closed_form_spectrum(1, n)),
    })
}

#[derive(Clone, Debug)]
pub struct KapranovIdentityReport {
    pub nu: Partition,
    /// `Gamma_G Ch(S^nu V^*)` with both factors from Chern roots.
    pub lhs_roots: CohClass<f64>,
    /// The same with both factors from the antisymmetrized closed forms.
    pub lhs_closed: CohClass<f64>,
    /// Normalized Satake image of the wedge of `Gamma_P Ch(O(k))`.
    pub rhs: CohClass<f64>,
    pub residual: f64,
}

/// `Gamma_G Ch(S^nu V^*) = (2 pi i)^{-r(r-1)/2} e^{-(r-1) pi i sigma_1}
/// Sat(Gamma_P Ch(O(nu_1 + r - 1)) ^ ... ^ Gamma_P Ch(O(nu_r)))`.
pub fn check_kapranov_wedge_identity(r: usize, n: usize, nu: &Partition) -> Result<KapranovIdentityReport> {
    let (p, g) = rings(r, n)?;
    if !nu.fits_box(r, n - r) {
        return Err(Error::OutOfRange(format!("{nu} is not in the {r} x {} box", n - r)));
    }
    // both sides cancel heavily on larger boxes, so they are evaluated in DD
    let lhs_roots = &gamma_class::<DD>(&g) * &ch_modified::<DD>(&Bundle::kapranov(&g, nu.clone())?);
    let lhs_closed = &gamma_class_closed_form::<DD>(&g) * &kapranov_ch::<DD>(&g, nu)?;
    let gp = gamma_class::<DD>(&p);
    let factors = kapranov_subset(nu, r)
        .iter()
        .map(|&k| Ok(&gp * &ch_modified::<DD>(&Bundle::line(&p, k as i64)?)))
        .collect::<Result<Vec<_>>>()?;
    let rhs = sat_normalized(&factors, &g)?;
    let residual = lhs_roots.max_abs_diff(&rhs).max(lhs_closed.max_abs_diff(&rhs));
    Ok(KapranovIdentityReport {
        nu: nu.clone(),
        lhs_roots: lhs_roots.to_f64(),
        lhs_closed: lhs_closed.to_f64(),
        rhs: rhs.to_f64(),
        residual,
    })
}

/// Largest `|[Sat' a, Sat' b)_G - det([a_i, b_j)_P)|` over wedges of the
/// Gamma-Beilinson basis.
pub fn check_pairing_transport(r: usize, n: usize) -> Result<f64> {
    let (p, g) = rings(r, n)?;
    let basis = beilinson_gamma_basis(&p)?;
    let subs = subsets(n, r);
    let images = subs
        .iter()
        .map(|s| {
            let f: Vec<CohClass<f64>> = s.iter().map(|&i| basis[i].clone()).collect();
            Ok((f.clone(), sat_normalized(&f, &g)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for (fa, sa) in &images {
        for (fb, sb) in &images {
            let lhs = bracket_pairing(sa, sb)?;
            let rhs = wedge_bracket_pairing(fa, fb)?;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// Matrix of `Sat'` on the wedge basis: column `J` is `Sat'(h^{j_1} ^ ... ^ h^{j_r})`.
pub fn sat_matrix(p: &Arc<Ring>, g: &Arc<Ring>) -> Result<Vec<Vec<C64>>> {
    let cols = subsets(p.rank(), g.r())
        .iter()
        .map(|s| {
            let f: Vec<CohClass<f64>> = s.iter().map(|&i| CohClass::basis(p, i)).collect();
            Ok(sat_normalized(&f, g)?.coeffs().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..g.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

#[derive(Clone, Debug)]
pub struct MrsWedgeReport {
    /// Largest distance between matched vectors after sign correction,
    /// relative to the size of the target vector.
    pub vector_residual: f64,
    /// Largest distance between matched markings.
    pub marking_residual: f64,
    /// Distance between the markings and the eigenvalues of `c_1 *` on `G`.
    pub spectrum_residual: f64,
    pub gram_lhs: Option<Vec<Vec<i64>>>,
    pub gram_rhs: Option<Vec<Vec<i64>>>,
    pub gram_match: bool,
    pub pass: bool,
}

/// Compare `Sat'(wedge^r MRS_P)` with `MRS_G` for the asymptotic Gamma bases:
/// vectors up to sign and permutation within equal-marking blocks, integer
/// Gram matrices in phase order, markings against the spectrum.
pub fn check_mrs_wedge(r: usize, n: usize, phase: f64) -> Result<MrsWedgeReport> {
    let (p, g) = rings(r, n)?;
    let mp = beilinson_gamma_mrs(n, PI * (r as f64 - 1.0) / n as f64, phase)?;
    let w = wedge_mrs(&mp, r)?;
    let sat = sat_matrix(&p, &g)?;
    let pushed: Vec<Vec<C64>> = w
        .vectors
        .iter()
        .map(|v| sat.iter().map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum()).collect())
        .collect();
    let (mg, _) = kapranov_gamma_mrs(&g, phase)?;
    let lhs = Mrs { vectors: pushed, ..mg.clone() };
    let lhs = Mrs { markings: w.markings.clone(), ..lhs };
    let mut used = vec![false; mg.len()];
    let mut vector_residual = 0.0f64;
    let mut marking_residual = 0.0f64;
    let mut perm = vec![0usize; lhs.len()];
    let mut signs = vec![1.0f64; lhs.len()];
    for i in 0..lhs.len() {
        let mut best: Option<(usize, f64, f64, f64)> = None;
        for j in 0..mg.len() {
            if used[j] {
                continue;
            }
            let dm = (lhs.markings[i] - mg.markings[j]).norm();
            if dm > 1e-8 * (1.0 + mg.markings[j].norm()) {
                continue;
            }
            for s in [1.0, -1.0] {
                let scale = 1.0 + mg.vectors[j].iter().fold(0.0f64, |m, z| m.max(z.norm()));
                let d = lhs.vectors[i].iter().zip(&mg.vectors[j]).fold(0.0f64, |m, (&a, &b)| m.max((a * s - b).norm()))
                    / scale;
                if best.is_none_or(|b| d < b.1) {
                    best = Some((j, d, s, dm));
                }
            }
        }
        match best {
            Some((j, d, s, dm)) => {
                used[j] = true;
                perm[i] = j;
                signs[i] = s;
                vector_residual = vector_residual.max(d);
                marking_residual = marking_residual.max(dm);
            }
            None => {
                vector_residual = f64::INFINITY;
                marking_residual = f64::INFINITY;
            }
        }
    }
    let eg = eigenvalues(&g)?;
    let spectrum_residual = multiset_distance(&mg.markings, &eg);
    let gram_lhs = rounded_gram(&w.as_sob(), 1e-10);
    let gram_rhs = rounded_gram(&mg.as_sob(), 1e-10);
    let blocks_ok = marking_blocks(&mg.markings).len() == marking_blocks(&lhs.markings).len();
    let gram_match = match (&gram_lhs, &gram_rhs) {
        (Some(a), Some(b)) => vector_residual.is_finite() && (0..a.len()).all(|i| {
            (0..a.len()).all(|k| {
                let s = (signs[i] * signs[k]) as i64;
                // entries between distinct equal-marking vectors vanish on both sides
                a[i][k] * s == b[perm[i]][perm[k]]
            })
        }),
        _ => false,
    };
    let pass = vector_residual < 1e-8 && marking_residual < 1e-8 && spectrum_residual < 1e-8 && gram_match && blocks_ok;
    Ok(MrsWedgeReport { vector_residual, marking_residual, spectrum_residual, gram_lhs, gram_rhs, gram_match, pass })
}
