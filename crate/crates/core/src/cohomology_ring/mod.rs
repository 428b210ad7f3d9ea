//! Cohomology rings of `P^{N-1}` and `G(r, N)` with Schubert structure
//! constants, quantum Pieri products, Poincare pairing and grading operators.

mod class;
mod partition;
pub mod symmetric;
mod wedge;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use class::CohClass;
pub use partition::{box_partitions, partitions_of, ssyt_contents, Partition};
pub use wedge::{sat_normalized, satake, wedge_bracket_pairing, wedge_pairing};

use crate::error::{Error, Result};
use crate::special::binomial;

/// Default cap on the basis size.
pub const DEFAULT_CAP: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `P^{N-1}`, stored as `G(1, N)`.
    ProjSpace { n: usize },
    Grassmannian { r: usize, n: usize },
}

impl Kind {
    pub fn r(&self) -> usize {
        match *self {
            Kind::ProjSpace { .. } => 1,
            Kind::Grassmannian { r, .. } => r,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Kind::ProjSpace { n } | Kind::Grassmannian { n, .. } => n,
        }
    }

    pub fn is_proj(&self) -> bool {
        matches!(self, Kind::ProjSpace { .. })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Kind::ProjSpace { n } => write!(f, "P({})", n - 1),
            Kind::Grassmannian { r, n } => write!(f, "G({r},{n})"),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    /// `P(d)` is `P^d`; `G(r,N)` is the Grassmannian of `r`-planes in `C^N`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("target {s:?}; expected P(d) or G(r,N)"));
        let args = |body: &str| -> Result<Vec<usize>> {
            body.trim_start_matches('(')
                .trim_end_matches(')')
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        if let Some(body) = t.strip_prefix('P') {
            let a = args(body)?;
            if a.len() != 1 {
                return Err(bad());
            }
            Ok(Kind::ProjSpace { n: a[0] + 1 })
        } else if let Some(body) = t.strip_prefix('G') {
            let a = args(body)?;
            if a.len() != 2 {
                return Err(bad());
            }
            Ok(Kind::Grassmannian { r: a[0], n: a[1] })
        } else {
            Err(bad())
        }
    }
}

/// Quantum product expanded by powers of `q`.
#[derive(Clone, Debug)]
pub struct QuantumProduct {
    /// `by_q[k]` is the coefficient class of `q^k`.
    pub by_q: Vec<CohClass<f64>>,
}

pub struct Ring {
    kind: Kind,
    r: usize,
    n: usize,
    labels: Vec<Partition>,
    degrees: Vec<usize>,
    index: HashMap<Partition, usize>,
    complement: Vec<usize>,
    /// `pieri[k][i]`: basis indices of `sigma_k cup sigma_i` (all coefficients 1).
    pieri: Vec<Vec<Vec<usize>>>,
    /// `qpieri[k][i]`: basis indices of the `q^1` part of `sigma_k * sigma_i`.
    qpieri: Vec<Vec<Vec<usize>>>,
    /// `cup[i][j]`: sparse integer expansion of `sigma_i cup sigma_j`.
    cup: Vec<Vec<Vec<(usize, i64)>>>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, rank {})", self.kind, self.labels.len())
    }
}

impl Ring {
    pub fn build(kind: Kind) -> Result<Arc<Ring>> {
        Self::build_with_cap(kind, DEFAULT_CAP)
    }

    pub fn build_with_cap(kind: Kind, cap: usize) -> Result<Arc<Ring>> {
        let (r, n) = (kind.r(), kind.n());
        if r == 0 || n <= r {
            return Err(Error::InvalidRing(format!("{kind}: need 1 <= r < N")));
        }
        let size = binomial(n as i64, r as i64) as usize;
        if size > cap {
            return Err(Error::TableCap { size, cap });
        }
        let w = n - r;
        let labels = box_partitions(r, w);
        let degrees = labels.iter().map(|p| p.weight()).collect();
        let index: HashMap<Partition, usize> =
            labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let complement = labels.iter().map(|p| index[&p.complement(r, w)]).collect();
        let mut ring = Ring {
            kind,
            r,
            n,
            labels,
            degrees,
            index,
            complement,
            pieri: Vec::new(),
            qpieri: Vec::new(),
            cup: Vec::new(),
        };
        ring.pieri = (0..=w).map(|k| ring.labels.iter().map(|l| ring.classical_pieri(k, l)).collect()).collect();
        ring.qpieri = (0..=w).map(|k| ring.labels.iter().map(|l| ring.quantum_pieri_q1(k, l)).collect()).collect();
        ring.cup = (0..ring.labels.len())
            .map(|i| (0..ring.labels.len()).map(|j| ring.cup_via_jacobi_trudi(i, j)).collect())
            .collect();
        Ok(Arc::new(ring))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Complex dimension `r (N - r)`.
    pub fn dim(&self) -> usize {
        self.r * (self.n - self.r)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    /// Complex degree of basis element `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the Poincare dual basis element.
    pub fn dual_index(&self, i: usize) -> usize {
        self.complement[i]
    }

    pub fn top_index(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn label_string(&self, i: usize) -> String {
        if self.kind.is_proj() {
            format!("h^{}", self.labels[i].part(0))
        } else {
            self.labels[i].to_string()
        }
    }

    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let p: Partition = s.parse()?;
        self.index_of(&p).ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }

    /// Sparse expansion of `sigma_i cup sigma_j`.
    pub fn cup_terms(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.cup[i][j]
    }

    /// Pieri indices of `sigma_k cup sigma_i` for `0 <= k <= N - r`.
    pub fn pieri_terms(&self, k: usize, i: usize) -> &[usize] {
        &self.pieri[k][i]
    }

    /// Indices of the `q` part of `sigma_k * sigma_i`.
    pub fn quantum_pieri_terms(&self, k: usize, i: usize) -> &[usize] {
        &self.qpieri[k][i]
    }

    /// Poincare pairing of basis elements.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        i64::from(self.complement[i] == j)
    }

    /// `sigma_k cup sigma_lambda`: `nu_1 >= lambda_1 >= nu_2 >= ... >= lambda_r`
    /// with `|nu| = |lambda| + k` and `nu_1 <= N - r`.
    fn classical_pieri(&self, k: usize, lam: &Partition) -> Vec<usize> {
        let target = lam.weight() + k;
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, nu)| {
                nu.weight() == target
                    && (0..self.r).all(|i| {
                        nu.part(i) >= lam.part(i) && (i + 1 >= self.r || lam.part(i) >= nu.part(i + 1))
                    })
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// `q` part of `sigma_k * sigma_lambda`: `|mu| = |lambda| + k - N` with
    /// `lambda_1 - 1 >= mu_1 >= lambda_2 - 1 >= ... >= lambda_r - 1 >= mu_r >= 0`.
    fn quantum_pieri_q1(&self, k: usize, lam: &Partition) -> Vec<usize> {
        if k == 0 || lam.part(self.r - 1) == 0 || lam.weight() + k < self.n {
            return Vec::new();
        }
        let target = lam.weight() + k - self.n;
        let l: Vec<i64> = lam.padded(self.r).iter().map(|&x| x as i64 - 1).collect();
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, mu)| {
                mu.weight() == target
                    && (0..self.r).all(|i| {
                        let m = mu.part(i) as i64;
                        m <= l[i] && (i + 1 >= self.r || m >= l[i + 1])
                    })
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// `sigma_i cup sigma_mu` by expanding `sigma_mu` with Jacobi-Trudi and
    /// applying Pieri row by row.
    fn cup_via_jacobi_trudi(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let mu = &self.labels[j];
        let l = mu.len();
        let w = self.n - self.r;
        let mut acc = vec![0i64; self.rank()];
        for (perm, sign) in crate::linalg::permutations(l) {
            let mut vec = vec![0i64; self.rank()];
            vec[i] = 1;
            let mut ok = true;
            for (row, &col) in perm.iter().enumerate() {
                let k = mu.part(row) as i64 + col as i64 - row as i64;
                if k < 0 || k as usize > w {
                    ok = false;
                    break;
                }
                let mut next = vec![0i64; self.rank()];
                for (a, &c) in vec.iter().enumerate() {
                    if c != 0 {
                        for &b in &self.pieri[k as usize][a] {
                            next[b] += c;
                        }
                    }
                }
                vec = next;
            }
            if ok {
                for (a, c) in vec.into_iter().enumerate() {
                    acc[a] += sign * c;
                }
            }
        }
        acc.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
    }

    /// Classical and quantum parts of `c_1 *` as integer matrices,
    /// `m[row][col]` with column `j` the image of basis element `j`.
    pub fn c1_matrices(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let d = self.rank();
        let n = self.n as i64;
        let mut cl = vec![vec![0i64; d]; d];
        let mut qu = vec![vec![0i64; d]; d];
        for j in 0..d {
            for &i in &self.pieri[1][j] {
                cl[i][j] += n;
            }
            for &i in &self.qpieri[1][j] {
                qu[i][j] += n;
            }
        }
        (cl, qu)
    }

    /// `sigma_k * sigma_lambda` in the small quantum ring.
    pub fn quantum_pieri(self: &Arc<Self>, k: usize, lam: &Partition) -> Result<QuantumProduct> {
        let i = self.index_of(lam).ok_or_else(|| Error::UnknownLabel(lam.to_string()))?;
        if k > self.n - self.r {
            return Err(Error::OutOfRange(format!("k = {k} exceeds N - r = {}", self.n - self.r)));
        }
        let mut q0 = CohClass::zero(self);
        for &a in &self.pieri[k][i] {
            q0.coeffs_mut()[a] += 1.0;
        }
        let mut q1 = CohClass::zero(self);
        for &a in &self.qpieri[k][i] {
            q1.coeffs_mut()[a] += 1.0;
        }
        Ok(QuantumProduct { by_q: vec![q0, q1] })
    }
}
