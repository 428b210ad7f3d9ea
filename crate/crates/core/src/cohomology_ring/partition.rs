use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Self::trimmed(parts.to_vec()))
    }

    fn trimmed(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn row(k: u32) -> Self {
        Self::trimmed(vec![k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Part `i` (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, r: usize) -> Vec<u32> {
        (0..r).map(|i| self.part(i)).collect()
    }

    pub fn fits_box(&self, r: usize, w: usize) -> bool {
        self.len() <= r && self.part(0) as usize <= w
    }

    /// Complement in the `r x w` box.
    pub fn complement(&self, r: usize, w: usize) -> Self {
        Self::trimmed((0..r).map(|i| w as u32 - self.part(r - 1 - i)).collect())
    }

    /// `(lambda_1 + r - 1, ..., lambda_r)`.
    pub fn shifted(&self, r: usize) -> Vec<u32> {
        (0..r).map(|i| self.part(i) + (r - 1 - i) as u32).collect()
    }

    pub fn contains(&self, o: &Self) -> bool {
        (0..o.len()).all(|i| self.part(i) >= o.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[2,1]`, `2,1`, `(2,1)`, `[]` and `h^k`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(k) = t.strip_prefix("h^") {
            let k: u32 = k.parse().map_err(|_| Error::Parse(s.to_string()))?;
            return Ok(Self::row(k));
        }
        let inner = t.trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&parts)
    }
}

/// Partitions in the `r x w` box ordered by weight, then reverse
/// lexicographically within each weight.
pub fn box_partitions(r: usize, w: usize) -> Vec<Partition> {
    let mut all = Vec::new();
    fn rec(i: usize, r: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == r {
            out.push(Partition::trimmed(cur.clone()));
            return;
        }
        for p in 0..=max {
            cur.push(p);
            rec(i + 1, r, p, cur, out);
            cur.pop();
        }
    }
    rec(0, r, w as u32, &mut Vec::new(), &mut all);
    all.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.padded(r).cmp(&a.padded(r))));
    all
}

/// Partitions of `k` with at most `r` parts, lexicographically decreasing.
pub fn partitions_of(k: usize, r: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(rem: u32, parts_left: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::trimmed(cur.clone()));
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, parts_left - 1, p, cur, out);
            cur.pop();
        }
    }
    rec(k as u32, r, k as u32, &mut Vec::new(), &mut out);
    out
}

/// Semistandard tableaux of shape `shape` with entries in `1..=r`, returned
/// as content vectors `(#1, ..., #r)`.
pub fn ssyt_contents(shape: &Partition, r: usize) -> Vec<Vec<u32>> {
    let rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> =
        rows.iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j))).collect();
    let mut grid: Vec<Vec<u32>> = rows.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        r: u32,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == cells.len() {
            let mut content = vec![0u32; r as usize];
            for row in grid.iter() {
                for &e in row {
                    content[e as usize - 1] += 1;
                }
            }
            out.push(content);
            return;
        }
        let (i, j) = cells[idx];
        let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
        for e in lo_row.max(lo_col)..=r {
            grid[i][j] = e;
            rec(idx + 1, cells, grid, r, out);
        }
        grid[i][j] = 0;
    }
    rec(0, &cells, &mut grid, r as u32, &mut out);
    out
}
