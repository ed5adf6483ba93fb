//! Dense Gaussian elimination over any [`Field`].

use crate::error::{Error, Result};
use crate::scalar::Field;

pub type Matrix<T> = Vec<Vec<T>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref<T: Field>(m: &mut Matrix<T>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(&mut m.clone()).len()
}

pub fn determinant<T: Field>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = a[i][c].clone() / a[c][c].clone();
                for j in c..n {
                    let d = f.clone() * a[c][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
    }
    det
}

/// Unique solution of the square system `a x = b`.
pub fn solve<T: Field>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    let n = a.len();
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().any(|&c| c >= n) {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Some solution of `a x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve_any<T: Field>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.len();
    let mut aug: Matrix<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right null space of `m` (`cols` columns).
pub fn kernel<T: Field>(m: &Matrix<T>, cols: usize) -> Vec<Vec<T>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &c) in piv.iter().enumerate() {
                v[c] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec<T: Field>(m: &Matrix<T>, x: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn mat_mul<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(T::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity<T: Field>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn solve_and_invert() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(determinant(&a), int(5));
    }

    #[test]
    fn singular_systems() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&a, &[int(1), int(2)]), Err(Error::SingularMatrix));
        assert_eq!(determinant(&a), int(0));
        assert_eq!(rank(&a), 1);
        let k = kernel(&a, 2);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert!(solve_any(&a, &[int(1), int(3)]).is_none());
        assert_eq!(solve_any(&a, &[int(1), int(2)]), Some(vec![int(1), int(0)]));
    }

    #[test]
    fn determinant_with_row_swaps() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(determinant(&a), int(-1));
    }
}
