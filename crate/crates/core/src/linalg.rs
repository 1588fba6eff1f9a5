//! Exact row reduction and kernels over ℚ.

use num_traits::{One, Zero};

use crate::number::Rational;

/// Reduces `rows` (each of length `cols`) to reduced row echelon form in place and
/// returns the pivot columns. Pivots are taken at the first nonzero entry found
/// scanning rows top to bottom, so the result is deterministic.
pub fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given row-wise with `cols` columns.
///
/// One basis vector per free column, carrying a 1 in that column; the
/// basis is therefore independent of how the rows were ordered.
pub fn nullspace(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let pivots = rref(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(mut rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    rref(&mut rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(a.clone(), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let dot: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        assert!(nullspace(m(&[&[1, 0], &[1, 1]]), 2).is_empty());
        assert_eq!(rank(m(&[&[1, 0], &[1, 1], &[2, 1]]), 2), 2);
    }

    #[test]
    fn empty_system() {
        assert_eq!(nullspace(Vec::new(), 3).len(), 3);
        assert_eq!(nullspace(m(&[&[0, 0]]), 2).len(), 2);
    }
}
