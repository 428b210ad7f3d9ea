//! Small dense linear algebra over generic scalars.

use num_traits::{One, Zero};

use crate::scalar::{Cx, Real};

/// Square matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct SqMat<T> {
    pub n: usize,
    pub a: Vec<T>,
}

impl<T> SqMat<T>
where
    T: Copy + Zero + One + std::ops::Sub<Output = T> + std::ops::Neg<Output = T>,
{
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i * n + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] = out.a[i * n + j] + x * o.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n, a: self.a.iter().zip(&o.a).map(|(&x, &y)| x + y).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { n: self.n, a: self.a.iter().zip(&o.a).map(|(&x, &y)| x - y).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        Self { n: self.n, a: self.a.iter().map(|&x| x * s).collect() }
    }

    /// `[self, o] = self o - o self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).fold(T::zero(), |s, j| s + self.a[i * n + j] * v[j]))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }
}

impl<R: Real> SqMat<R> {
    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0, |m, x| m.max(x.f64().abs()))
    }
}

impl<R: Real> SqMat<Cx<R>> {
    pub fn max_abs_c(&self) -> f64 {
        self.a.iter().fold(0.0, |m, x| m.max(crate::scalar::cabs(*x)))
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det<R: Real>(m: &[Vec<Cx<R>>]) -> Cx<R> {
    let n = m.len();
    let mut a: Vec<Vec<Cx<R>>> = m.to_vec();
    let mut d = Cx::<R>::one();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].norm_sqr().partial_cmp(&a[j][c].norm_sqr()).unwrap())
            .unwrap();
        if a[p][c].is_zero() {
            return Cx::zero();
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = d * a[c][c];
        let piv = a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let t = a[c][j];
                a[i][j] = a[i][j] - f * t;
            }
        }
    }
    d
}

/// Exact integer determinant by Bareiss elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(p, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Solve `a x = b` for each column of `b` (complex, partial pivoting).
pub fn solve<R: Real>(a: &[Vec<Cx<R>>], b: &[Vec<Cx<R>>]) -> Option<Vec<Vec<Cx<R>>>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].norm_sqr().partial_cmp(&a[j][c].norm_sqr()).unwrap())
            .unwrap();
        if a[p][c].is_zero() {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        let piv = a[c][c];
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a[i][c] / piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let t = a[c][j];
                a[i][j] = a[i][j] - f * t;
            }
            for j in 0..m {
                let t = b[c][j];
                b[i][j] = b[i][j] - f * t;
            }
        }
    }
    for c in 0..n {
        let piv = a[c][c];
        for j in 0..m {
            b[c][j] = b[c][j] / piv;
        }
    }
    Some(b)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
