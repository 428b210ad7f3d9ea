//! Marked reflection systems: semiorthonormal bases of a space with a
//! non-symmetric bilinear form, marked by points of the plane, together with
//! the braid group action and mutation under motion of markings or phase.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::char_classes::{bracket_matrix, ch_modified, gamma_class, Bundle};
use crate::cohomology_ring::{CohClass, Kind, Partition, Ring};
use crate::error::{Error, Result};
use crate::linalg::{det, solve, subsets};
use crate::scalar::C64;

/// Relative tolerance for vanishing and unit Gram entries.
pub const GRAM_TOL: f64 = 1e-8;
/// Tolerance on `|sin|` of the angle between a marking difference and the phase.
pub const ADMISSIBLE_TOL: f64 = 1e-10;
/// Event parameters closer than this are simultaneous.
const EVENT_TOL: f64 = 1e-12;

/// Bilinear form `[a, b) = sum a_i m_ij b_j`.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub labels: Vec<String>,
    pub m: Vec<Vec<C64>>,
}

impl BilinearForm {
    pub fn new(labels: Vec<String>, m: Vec<Vec<C64>>) -> Self {
        Self { labels, m }
    }

    /// The bracket pairing of a cohomology ring.
    pub fn bracket(ring: &Arc<Ring>) -> Result<Self> {
        Ok(Self {
            labels: (0..ring.rank()).map(|i| ring.label_string(i)).collect(),
            m: bracket_matrix(ring)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn pair(&self, a: &[C64], b: &[C64]) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for (i, &ai) in a.iter().enumerate() {
            if ai.norm_sqr() == 0.0 {
                continue;
            }
            let row = &self.m[i];
            let inner: C64 = row.iter().zip(b).map(|(&x, &y)| x * y).sum();
            s += ai * inner;
        }
        s
    }

    fn norm(&self) -> f64 {
        self.m.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Induced form on `wedge^r` in the basis of increasing index subsets:
    /// entry `(I, J)` is the minor `det m[I, J]`.
    pub fn compound(&self, r: usize) -> Self {
        let subs = subsets(self.dim(), r);
        let labels = subs
            .iter()
            .map(|s| s.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>().join("^"))
            .collect();
        let m = subs
            .iter()
            .map(|a| {
                subs.iter()
                    .map(|b| det(&a.iter().map(|&i| b.iter().map(|&j| self.m[i][j]).collect()).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self { labels, m }
    }
}

fn vnorm(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

fn axpy(v: &[C64], a: C64, u: &[C64]) -> Vec<C64> {
    v.iter().zip(u).map(|(&x, &y)| x + a * y).collect()
}

/// Ordered basis, expected to be semiorthonormal for `form`.
#[derive(Clone, Debug)]
pub struct Sob {
    pub vectors: Vec<Vec<C64>>,
    pub form: Arc<BilinearForm>,
}

#[derive(Clone, Debug)]
pub struct GramReport {
    pub matrix: Vec<Vec<C64>>,
    pub unipotent_upper: bool,
    pub max_lower: f64,
    pub max_diag_dev: f64,
}

fn entry_tol(form: &BilinearForm, a: &[C64], b: &[C64]) -> f64 {
    GRAM_TOL * (1.0 + form.norm() * vnorm(a) * vnorm(b) * a.len() as f64)
}

pub fn gram(sob: &Sob) -> GramReport {
    let n = sob.vectors.len();
    let f = &sob.form;
    let matrix: Vec<Vec<C64>> =
        (0..n).map(|i| (0..n).map(|j| f.pair(&sob.vectors[i], &sob.vectors[j])).collect()).collect();
    let mut ok = true;
    let mut max_lower = 0.0f64;
    let mut max_diag_dev = 0.0f64;
    for i in 0..n {
        let d = (matrix[i][i] - 1.0).norm();
        max_diag_dev = max_diag_dev.max(d);
        ok &= d <= entry_tol(f, &sob.vectors[i], &sob.vectors[i]);
        for j in 0..i {
            let x = matrix[i][j].norm();
            max_lower = max_lower.max(x);
            ok &= x <= entry_tol(f, &sob.vectors[i], &sob.vectors[j]);
        }
    }
    GramReport { matrix, unipotent_upper: ok, max_lower, max_diag_dev }
}

/// Right mutation `R_u(v) = v - [v, u) u`.
pub fn right_mutation(form: &BilinearForm, v: &[C64], u: &[C64]) -> Vec<C64> {
    axpy(v, -form.pair(v, u), u)
}

/// Left mutation `L_u(v) = v - [u, v) u`.
pub fn left_mutation(form: &BilinearForm, v: &[C64], u: &[C64]) -> Vec<C64> {
    axpy(v, -form.pair(u, v), u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `sigma_i`: `(v_i, v_{i+1}) -> (v_{i+1}, R_{v_{i+1}} v_i)`.
    Right,
    /// `sigma_i^{-1}`: `(v_i, v_{i+1}) -> (L_{v_i} v_{i+1}, v_i)`.
    Left,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Right => "R",
            Direction::Left => "L",
        }
    }
}

/// Apply one braid generator at positions `i, i+1` in place.
fn apply_generator(vectors: &mut [Vec<C64>], form: &BilinearForm, i: usize, dir: Direction) {
    let (a, b) = (vectors[i].clone(), vectors[i + 1].clone());
    match dir {
        Direction::Right => {
            vectors[i] = b.clone();
            vectors[i + 1] = right_mutation(form, &a, &b);
        }
        Direction::Left => {
            vectors[i] = left_mutation(form, &b, &a);
            vectors[i + 1] = a;
        }
    }
}

impl Sob {
    pub fn new(vectors: Vec<Vec<C64>>, form: Arc<BilinearForm>) -> Self {
        Self { vectors, form }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn check(&self) -> Result<()> {
        let g = gram(self);
        if g.unipotent_upper {
            Ok(())
        } else {
            Err(Error::NotSemiorthonormal(format!(
                "lower entries up to {:.3e}, diagonal deviation {:.3e}",
                g.max_lower, g.max_diag_dev
            )))
        }
    }

    /// Braid word: `+k` is `sigma_k`, `-k` is `sigma_k^{-1}` (1-indexed).
    pub fn braid_act(&self, word: &[i32]) -> Result<Sob> {
        self.check()?;
        let mut out = self.clone();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= self.len() {
                return Err(Error::OutOfRange(format!("generator {g} for {} vectors", self.len())));
            }
            let dir = if g > 0 { Direction::Right } else { Direction::Left };
            apply_generator(&mut out.vectors, &self.form, i - 1, dir);
            out.check()?;
        }
        Ok(out)
    }
}

/// `Im(e^{-i phase} u)`.
pub fn height(u: C64, phase: f64) -> f64 {
    (u * C64::from_polar(1.0, -phase)).im
}

/// `Re(e^{-i phase} u)`.
pub fn abscissa(u: C64, phase: f64) -> f64 {
    (u * C64::from_polar(1.0, -phase)).re
}

fn same_point(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

/// No two distinct markings lie on a common line of direction `e^{i phase}`.
pub fn is_admissible(markings: &[C64], phase: f64) -> bool {
    for i in 0..markings.len() {
        for j in i + 1..markings.len() {
            let d = markings[i] - markings[j];
            if same_point(markings[i], markings[j]) {
                continue;
            }
            if (height(d, phase) / d.norm()).abs() < ADMISSIBLE_TOL {
                return false;
            }
        }
    }
    true
}

/// Semiorthonormal basis marked by complex numbers, stored in order of
/// decreasing height at the phase.
#[derive(Clone, Debug)]
pub struct Mrs {
    pub vectors: Vec<Vec<C64>>,
    pub markings: Vec<C64>,
    pub phase: f64,
    pub form: Arc<BilinearForm>,
    /// Position of each vector in the input order.
    pub ids: Vec<usize>,
}

fn check_mrs(vectors: &[Vec<C64>], markings: &[C64], phase: f64, form: &BilinearForm) -> Result<()> {
    let n = vectors.len();
    let hs: Vec<f64> = markings.iter().map(|&u| height(u, phase)).collect();
    let scale = 1.0 + markings.iter().fold(0.0f64, |m, u| m.max(u.norm()));
    for i in 0..n {
        let d = (form.pair(&vectors[i], &vectors[i]) - 1.0).norm();
        if d > entry_tol(form, &vectors[i], &vectors[i]) {
            return Err(Error::NotSemiorthonormal(format!("[v_{i}, v_{i}) deviates from 1 by {d:.3e}")));
        }
        for j in 0..n {
            if i == j || hs[i] > hs[j] + 1e-12 * scale {
                continue;
            }
            let x = form.pair(&vectors[i], &vectors[j]).norm();
            if x > entry_tol(form, &vectors[i], &vectors[j]) {
                return Err(Error::NotSemiorthonormal(format!(
                    "h(u_{i}) <= h(u_{j}) but |[v_{i}, v_{j})| = {x:.3e}"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MutationLogEntry {
    /// Phase (rotation) or path parameter (motion) at the crossing.
    pub at: f64,
    /// Id of the vector that is replaced.
    pub moved: usize,
    /// Id of the vector it is mutated across.
    pub across: usize,
    pub direction: Option<Direction>,
}

#[derive(Clone, Debug)]
pub enum Path {
    /// Rotate the phase linearly to the given value.
    Rotate { to: f64 },
    /// Move each marking linearly to the given target.
    Move { targets: Vec<C64> },
}

impl Mrs {
    /// Validate and store in order of decreasing height; ties keep input order.
    pub fn new(vectors: Vec<Vec<C64>>, markings: Vec<C64>, phase: f64, form: Arc<BilinearForm>) -> Result<Self> {
        if vectors.len() != markings.len() {
            return Err(Error::OutOfRange("vectors and markings differ in length".into()));
        }
        check_mrs(&vectors, &markings, phase, &form)?;
        let mut ids: Vec<usize> = (0..vectors.len()).collect();
        let scale = 1.0 + markings.iter().fold(0.0f64, |m, u| m.max(u.norm()));
        ids.sort_by(|&a, &b| {
            let (ha, hb) = (height(markings[a], phase), height(markings[b], phase));
            if (ha - hb).abs() <= 1e-12 * scale {
                a.cmp(&b)
            } else {
                hb.partial_cmp(&ha).unwrap()
            }
        });
        Ok(Self {
            vectors: ids.iter().map(|&i| vectors[i].clone()).collect(),
            markings: ids.iter().map(|&i| markings[i]).collect(),
            phase,
            form,
            ids,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn as_sob(&self) -> Sob {
        Sob::new(self.vectors.clone(), self.form.clone())
    }

    /// The basis in phase order; requires an admissible phase.
    pub fn sort_by_phase(&self) -> Result<Sob> {
        if !is_admissible(&self.markings, self.phase) {
            return Err(Error::InadmissiblePhase(self.phase));
        }
        let s = self.as_sob();
        s.check()?;
        Ok(s)
    }

    /// Stokes matrix: Gram matrix of the basis in phase order.
    pub fn stokes_matrix(&self) -> Result<Vec<Vec<C64>>> {
        let s = self.sort_by_phase()?;
        Ok(gram(&s).matrix)
    }

    fn position_at(&self, start: &[C64], path: &Path, s: f64) -> (Vec<C64>, f64) {
        match path {
            Path::Rotate { to } => (start.to_vec(), self.phase + s * (to - self.phase)),
            Path::Move { targets } => {
                (start.iter().zip(targets).map(|(&a, &b)| a * (1.0 - s) + b * s).collect(), self.phase)
            }
        }
    }

    /// Crossing parameters in `(0, 1)`.
    fn events(&self, path: &Path) -> Vec<f64> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                match path {
                    Path::Rotate { to } => {
                        let d = self.markings[a] - self.markings[b];
                        if same_point(self.markings[a], self.markings[b]) {
                            continue;
                        }
                        let (p0, p1) = (self.phase, *to);
                        let (lo, hi) = (p0.min(p1), p0.max(p1));
                        let base = d.arg();
                        let kmin = ((lo - base) / PI).floor() as i64 - 1;
                        let kmax = ((hi - base) / PI).ceil() as i64 + 1;
                        for k in kmin..=kmax {
                            let ph = base + k as f64 * PI;
                            let s = (ph - p0) / (p1 - p0);
                            if s > EVENT_TOL && s < 1.0 - EVENT_TOL {
                                out.push(s);
                            }
                        }
                    }
                    Path::Move { targets } => {
                        let g0 = height(self.markings[a] - self.markings[b], self.phase);
                        let g1 = height(targets[a] - targets[b], self.phase);
                        if g0 == g1 {
                            continue;
                        }
                        let s = g0 / (g0 - g1);
                        if s > EVENT_TOL && s < 1.0 - EVENT_TOL {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        out.dedup_by(|x, y| (*x - *y).abs() < EVENT_TOL);
        out
    }

    /// Follow `path`, mutating at every crossing of heights. At a crossing
    /// of `a` (above) and `b` (below) the pair is replaced by
    /// `(v_b, R_{v_b} v_a)` when `a` lies to the left of `b`, and by
    /// `(L_{v_a} v_b, v_a)` otherwise.
    pub fn transport(&self, path: &Path) -> Result<(Mrs, Vec<MutationLogEntry>)> {
        if let Path::Move { targets } = path {
            if targets.len() != self.len() {
                return Err(Error::OutOfRange("one target per marking".into()));
            }
        }
        if let Path::Rotate { to } = path {
            if !is_admissible(&self.markings, self.phase) || !is_admissible(&self.markings, *to) {
                return Err(Error::InadmissiblePhase(if is_admissible(&self.markings, self.phase) {
                    *to
                } else {
                    self.phase
                }));
            }
        }
        let start = self.markings.clone();
        let events = self.events(path);
        // order[p] = index into the start arrays of the item at position p
        let mut order: Vec<usize> = (0..self.len()).collect();
        let mut vecs = self.vectors.clone();
        let mut log = Vec::new();
        let scale = 1.0 + start.iter().fold(0.0f64, |m, u| m.max(u.norm()));
        for (e, &s) in events.iter().enumerate() {
            let next = events.get(e + 1).copied().unwrap_or(1.0);
            let (pos, ph) = self.position_at(&start, path, s);
            let (after, ph_after) = self.position_at(&start, path, 0.5 * (s + next));
            let h_after: Vec<f64> = after.iter().map(|&u| height(u, ph_after)).collect();
            // bubble sort toward decreasing height just after the event
            loop {
                let mut swapped = false;
                for p in 0..order.len() - 1 {
                    let (a, b) = (order[p], order[p + 1]);
                    if h_after[b] <= h_after[a] + 1e-13 * scale {
                        continue;
                    }
                    let at = match path {
                        Path::Rotate { .. } => ph,
                        Path::Move { .. } => s,
                    };
                    if same_point(pos[a], pos[b]) {
                        let f = &self.form;
                        let (x, y) = (f.pair(&vecs[p], &vecs[p + 1]), f.pair(&vecs[p + 1], &vecs[p]));
                        let tol = entry_tol(f, &vecs[p], &vecs[p + 1]);
                        if x.norm() > tol || y.norm() > tol {
                            return Err(Error::Collision(self.ids[a], self.ids[b]));
                        }
                        vecs.swap(p, p + 1);
                        log.push(MutationLogEntry { at, moved: self.ids[a], across: self.ids[b], direction: None });
                    } else if abscissa(pos[a], ph) < abscissa(pos[b], ph) {
                        apply_generator(&mut vecs, &self.form, p, Direction::Right);
                        log.push(MutationLogEntry {
                            at,
                            moved: self.ids[a],
                            across: self.ids[b],
                            direction: Some(Direction::Right),
                        });
                    } else {
                        apply_generator(&mut vecs, &self.form, p, Direction::Left);
                        log.push(MutationLogEntry {
                            at,
                            moved: self.ids[b],
                            across: self.ids[a],
                            direction: Some(Direction::Left),
                        });
                    }
                    order.swap(p, p + 1);
                    swapped = true;
                }
                if !swapped {
                    break;
                }
            }
        }
        let (end, ph_end) = self.position_at(&start, path, 1.0);
        let markings: Vec<C64> = order.iter().map(|&i| end[i]).collect();
        check_mrs(&vecs, &markings, ph_end, &self.form)?;
        let out = Mrs {
            vectors: vecs,
            markings,
            phase: ph_end,
            form: self.form.clone(),
            ids: order.iter().map(|&i| self.ids[i]).collect(),
        };
        Ok((out, log))
    }

    /// Rotate the phase to `to`, mutating at each crossing.
    pub fn rotate_phase(&self, to: f64) -> Result<(Mrs, Vec<MutationLogEntry>)> {
        self.transport(&Path::Rotate { to })
    }

    /// Move the markings (given in the stored order) to `targets`.
    pub fn move_markings(&self, targets: Vec<C64>) -> Result<(Mrs, Vec<MutationLogEntry>)> {
        self.transport(&Path::Move { targets })
    }

    /// Transition matrix `M` with `new_k = sum_j M_kj old_j` after rotating
    /// the phase by `-2 pi turns`.
    pub fn monodromy(&self, turns: i32) -> Result<Vec<Vec<C64>>> {
        let (out, _) = self.rotate_phase(self.phase - 2.0 * PI * turns as f64)?;
        let n = self.len();
        // solve old^T M^T = new^T column by column
        let old_t: Vec<Vec<C64>> = (0..self.form.dim()).map(|i| (0..n).map(|j| self.vectors[j][i]).collect()).collect();
        let new_t: Vec<Vec<C64>> = (0..self.form.dim()).map(|i| (0..n).map(|k| out.vectors[k][i]).collect()).collect();
        if self.form.dim() != n {
            return Err(Error::Precondition("monodromy needs a full basis".into()));
        }
        let mt = solve(&old_t, &new_t).ok_or_else(|| Error::Precondition("vectors are not a basis".into()))?;
        Ok((0..n).map(|k| (0..n).map(|j| mt[j][k]).collect()).collect())
    }

    /// `{vectors, markings, phase}` with vectors keyed by basis labels.
    pub fn to_json(&self) -> Value {
        let vectors: Vec<Value> = self
            .vectors
            .iter()
            .map(|v| {
                let mut m = Map::new();
                for (l, z) in self.form.labels.iter().zip(v) {
                    m.insert(l.clone(), json!([z.re, z.im]));
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "vectors": vectors,
            "markings": self.markings.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            "phase": self.phase,
        })
    }
}

/// Wedge coordinates of `v_1 ^ ... ^ v_r` on increasing index subsets.
pub fn wedge_vector(vs: &[&[C64]]) -> Vec<C64> {
    let dim = vs[0].len();
    let r = vs.len();
    subsets(dim, r)
        .iter()
        .map(|rows| det(&rows.iter().map(|&i| (0..r).map(|c| vs[c][i]).collect()).collect::<Vec<_>>()))
        .collect()
}

/// `wedge^r` of an MRS: wedges over increasing position subsets, markings summed.
pub fn wedge_mrs(m: &Mrs, r: usize) -> Result<Mrs> {
    if r == 0 || r > m.len() {
        return Err(Error::OutOfRange(format!("wedge power {r} of {} vectors", m.len())));
    }
    let form = Arc::new(m.form.compound(r));
    let mut vectors = Vec::new();
    let mut markings = Vec::new();
    for s in subsets(m.len(), r) {
        let vs: Vec<&[C64]> = s.iter().map(|&i| m.vectors[i].as_slice()).collect();
        vectors.push(wedge_vector(&vs));
        markings.push(s.iter().map(|&i| m.markings[i]).sum());
    }
    Mrs::new(vectors, markings, m.phase, form)
}

fn class_vec(c: &CohClass<f64>) -> Vec<C64> {
    c.coeffs().to_vec()
}

/// `Gamma Ch(O(j))` for `j = 0..N-1` on `P^{N-1}`.
pub fn beilinson_gamma_basis(ring: &Arc<Ring>) -> Result<Vec<CohClass<f64>>> {
    if !ring.kind().is_proj() {
        return Err(Error::Precondition("Beilinson basis lives on projective space".into()));
    }
    let g = gamma_class::<f64>(ring);
    (0..ring.n() as i64).map(|j| Ok(&g * &ch_modified::<f64>(&Bundle::line(ring, j)?))).collect()
}

/// `Gamma Ch(S^nu V^*)` for every `nu` in the box, in basis order.
pub fn kapranov_gamma_basis(ring: &Arc<Ring>) -> Result<Vec<(Partition, CohClass<f64>)>> {
    let g = gamma_class::<f64>(ring);
    ring.labels()
        .iter()
        .map(|nu| Ok((nu.clone(), &g * &ch_modified::<f64>(&Bundle::kapranov(ring, nu.clone())?))))
        .collect()
}

/// `N e^{i theta} e^{-2 pi i j / N}`, `j = 0..N-1`.
pub fn beilinson_markings(n: usize, theta: f64) -> Vec<C64> {
    (0..n).map(|j| C64::from_polar(n as f64, theta - 2.0 * PI * j as f64 / n as f64)).collect()
}

/// Index subset `{nu_1 + r - 1, ..., nu_r}` attached to `nu`.
pub fn kapranov_subset(nu: &Partition, r: usize) -> Vec<usize> {
    nu.shifted(r).iter().map(|&x| x as usize).collect()
}

/// Sums of the rotated Beilinson markings over the subsets of each `nu`.
pub fn kapranov_markings(ring: &Ring) -> Vec<C64> {
    let (r, n) = (ring.r(), ring.n());
    let b = beilinson_markings(n, PI * (r as f64 - 1.0) / n as f64);
    ring.labels().iter().map(|nu| kapranov_subset(nu, r).iter().map(|&k| b[k]).sum()).collect()
}

/// Start positions keeping each abscissa and with heights `-2^j`.
pub fn vertical_start(markings: &[C64], phase: f64) -> Vec<C64> {
    markings
        .iter()
        .enumerate()
        .map(|(j, &u)| C64::new(abscissa(u, phase), -(2f64.powi(j as i32))) * C64::from_polar(1.0, phase))
        .collect()
}

/// Gamma-Beilinson basis with markings `N e^{i theta} zeta^{-j}`, transported
/// to a valid MRS at `phase`: starting from markings with unchanged abscissae
/// and heights decreasing along the collection, the markings slide vertically
/// into place and the basis mutates at each crossing.
pub fn beilinson_gamma_mrs(n: usize, theta: f64, phase: f64) -> Result<Mrs> {
    let ring = Ring::build(Kind::ProjSpace { n })?;
    let basis = beilinson_gamma_basis(&ring)?;
    let form = Arc::new(BilinearForm::bracket(&ring)?);
    let targets = beilinson_markings(n, theta);
    let start = vertical_start(&targets, phase);
    let m0 = Mrs::new(basis.iter().map(class_vec).collect(), start, phase, form)?;
    let tg: Vec<C64> = m0.ids.iter().map(|&i| targets[i]).collect();
    Ok(m0.move_markings(tg)?.0)
}

/// Gamma-Kapranov basis of `G(r, N)` transported from the summed vertical
/// start configuration to the summed markings, as for [`beilinson_gamma_mrs`].
pub fn kapranov_gamma_mrs(ring: &Arc<Ring>, phase: f64) -> Result<(Mrs, Vec<Partition>)> {
    let (r, n) = (ring.r(), ring.n());
    let basis = kapranov_gamma_basis(ring)?;
    let form = Arc::new(BilinearForm::bracket(ring)?);
    let pm = beilinson_markings(n, PI * (r as f64 - 1.0) / n as f64);
    let pstart = vertical_start(&pm, phase);
    let start: Vec<C64> = basis.iter().map(|(nu, _)| kapranov_subset(nu, r).iter().map(|&k| pstart[k]).sum()).collect();
    let targets = kapranov_markings(ring);
    let m0 = Mrs::new(basis.iter().map(|(_, c)| class_vec(c)).collect(), start, phase, form)?;
    let tg: Vec<C64> = m0.ids.iter().map(|&i| targets[i]).collect();
    let (m, _) = m0.move_markings(tg)?;
    let labels = m.ids.iter().map(|&i| basis[i].0.clone()).collect();
    Ok((m, labels))
}

/// Gram matrix rounded to integers, or `None` if some entry is not integral.
pub fn integer_gram(g: &[Vec<C64>], tol: f64) -> Option<Vec<Vec<i64>>> {
    g.iter()
        .map(|row| {
            row.iter()
                .map(|z| {
                    let k = z.re.round();
                    ((z - k).norm() <= tol * (1.0 + k.abs())).then_some(k as i64)
                })
                .collect()
        })
        .collect()
}

/// Gram matrix of `sob` rounded to integers, with the error bound of entry
/// `(i, j)` scaled by `sum |v_i^k| |m_kl| |v_j^l|`. `None` if some entry is not
/// integral or its bound is too coarse for rounding to be meaningful.
pub fn rounded_gram(sob: &Sob, tol: f64) -> Option<Vec<Vec<i64>>> {
    let g = gram(sob).matrix;
    let abs = |v: &[C64]| v.iter().map(|z| C64::new(z.norm(), 0.0)).collect::<Vec<_>>();
    let absm = BilinearForm::new(sob.form.labels.clone(), sob.form.m.iter().map(|r| abs(r)).collect());
    let av: Vec<Vec<C64>> = sob.vectors.iter().map(|v| abs(v)).collect();
    g.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, z)| {
                    let bound = tol * (1.0 + absm.pair(&av[i], &av[j]).re);
                    let k = z.re.round();
                    (bound < 0.25 && (z - k).norm() <= bound).then_some(k as i64)
                })
                .collect()
        })
        .collect()
}

/// Group indices by equal markings.
pub fn marking_blocks(markings: &[C64]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for i in 0..markings.len() {
        if let Some(b) = (0..i).find(|&j| same_point(markings[i], markings[j])) {
            let bi = index[&b];
            blocks[bi].push(i);
            index.insert(i, bi);
        } else {
            index.insert(i, blocks.len());
            blocks.push(vec![i]);
        }
    }
    blocks
}
