//! Matrices over `K(q)[x]` and row Hermite normal form.

use std::fmt;

use super::polyx::PolyX;
use super::ratfunc::RatFuncQ;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<PolyX>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![PolyX::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, PolyX::one());
        }
        m
    }

    /// Build from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<PolyX>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyX {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PolyX) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[PolyX] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(PolyX::is_zero)
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = PolyMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &RatFuncQ) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// `row[dst] -= f * row[src]`
    fn sub_row_multiple(&mut self, dst: usize, src: usize, f: &PolyX) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, j) - &(f * s);
            self.set(dst, j, v);
        }
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> PolyX {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = PolyX::one();
        let mut sign = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return PolyX::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                    let v = v.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, k, PolyX::zero());
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Row Hermite normal form with transform: returns `(H, U)` with
    /// `U * self = H`, `U` unimodular.
    ///
    /// Pivot rule: within the active column, the row of minimal degree wins,
    /// the topmost one on ties. Pivots are monic and entries above a pivot
    /// have smaller degree than the pivot. Zero rows of `H` come last, so the
    /// rows of `U` from `rank` on span the left kernel.
    pub fn hnf_with_transform(&self) -> (PolyMatrix, PolyMatrix) {
        let mut h = self.clone();
        let mut u = PolyMatrix::identity(self.rows);
        let mut p = 0;
        for c in 0..self.cols {
            if p == self.rows {
                break;
            }
            loop {
                let best = (p..self.rows)
                    .filter(|&i| !h.get(i, c).is_zero())
                    .min_by_key(|&i| (h.get(i, c).deg(), i));
                let Some(best) = best else { break };
                h.swap_rows(p, best);
                u.swap_rows(p, best);
                let mut done = true;
                for i in p + 1..self.rows {
                    if h.get(i, c).is_zero() {
                        continue;
                    }
                    let (quo, rem) = h.get(i, c).divrem(h.get(p, c)).expect("pivot is nonzero");
                    h.sub_row_multiple(i, p, &quo);
                    u.sub_row_multiple(i, p, &quo);
                    if !rem.is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.get(p, c).is_zero() {
                continue;
            }
            let inv = h.get(p, c).lc().inv().expect("nonzero lc");
            h.scale_row(p, &inv);
            u.scale_row(p, &inv);
            for i in 0..p {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let (quo, _) = h.get(i, c).divrem(h.get(p, c)).expect("pivot is nonzero");
                if !quo.is_zero() {
                    h.sub_row_multiple(i, p, &quo);
                    u.sub_row_multiple(i, p, &quo);
                }
            }
            p += 1;
        }
        (h, u)
    }

    /// Number of nonzero rows of the Hermite form.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf_with_transform();
        (0..h.rows).filter(|&i| !h.row_is_zero(i)).count()
    }

    /// Basis of the left kernel `{v : v * self = 0}` over `K(q)[x]`.
    pub fn left_kernel(&self) -> Vec<Vec<PolyX>> {
        let (h, u) = self.hnf_with_transform();
        (0..h.rows).filter(|&i| h.row_is_zero(i)).map(|i| u.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(e: usize) -> PolyX {
        PolyX::monomial(RatFuncQ::one(), e)
    }

    #[test]
    fn identity_is_fixed() {
        let n = PolyMatrix::identity(3);
        let (h, u) = n.hnf_with_transform();
        assert_eq!(h, n);
        assert_eq!(u, n);
    }

    #[test]
    fn column_kernel() {
        let n = PolyMatrix::from_rows(vec![vec![xp(2)], vec![xp(1)]]);
        let (h, u) = n.hnf_with_transform();
        assert_eq!(h.get(0, 0), &xp(1));
        assert!(h.row_is_zero(1));
        let k: Vec<PolyX> = u.row(1).iter().map(|e| -e).collect();
        assert_eq!(k, vec![-PolyX::one(), xp(1)]);
        assert_eq!(u.mul(&n), h);
        assert!(u.det().is_constant());
    }
}
