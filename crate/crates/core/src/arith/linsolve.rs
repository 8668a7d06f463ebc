//! Dense Gauss-Jordan elimination over `K(q)`.

use super::ratfunc::RatFuncQ;

/// Bring `m` to reduced row echelon form in place and return the pivot
/// columns. Rows that become zero are dropped.
pub fn rref(m: &mut Vec<Vec<RatFuncQ>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        // cheapest nonzero entry keeps the intermediate expressions small
        let Some(p) = (row..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].num().degree().unwrap_or(0) + m[i][col].den().degree().unwrap_or(0))
        else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for v in m[row].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column in
/// increasing column order; the free coordinate is 1 and the other free
/// coordinates are 0.
pub fn kernel(m: &[Vec<RatFuncQ>], ncols: usize) -> Vec<Vec<RatFuncQ>> {
    let mut a: Vec<Vec<RatFuncQ>> = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatFuncQ::zero(); ncols];
        v[free] = RatFuncQ::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        out.push(v);
    }
    out
}
