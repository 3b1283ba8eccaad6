//! Exact determinants of square polynomial matrices.

use alloc::vec::Vec;

use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetMethod {
    /// Laplace expansion along the first row.
    Cofactor,
    /// Bareiss elimination; every intermediate division is exact.
    FractionFree,
    /// Cofactor up to 4×4, fraction-free above.
    Auto,
}

pub fn det(rows: &[Vec<Poly>], method: DetMethod) -> Poly {
    match method {
        DetMethod::Cofactor => det_cofactor(rows),
        DetMethod::FractionFree => det_fraction_free(rows),
        DetMethod::Auto if rows.len() <= 4 => det_cofactor(rows),
        DetMethod::Auto => det_fraction_free(rows),
    }
}

fn assert_square(rows: &[Vec<Poly>]) {
    assert!(
        rows.iter().all(|r| r.len() == rows.len()),
        "determinant of a non-square matrix"
    );
}

pub fn det_cofactor(rows: &[Vec<Poly>]) -> Poly {
    assert_square(rows);
    let cols: Vec<usize> = (0..rows.len()).collect();
    expand(rows, 0, &cols)
}

fn expand(rows: &[Vec<Poly>], row: usize, cols: &[usize]) -> Poly {
    match cols.len() {
        0 => Poly::one(),
        1 => rows[row][cols[0]].clone(),
        _ => {
            let mut acc = Poly::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let entry = &rows[row][c];
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry * &expand(rows, row + 1, &rest);
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

pub fn det_fraction_free(rows: &[Vec<Poly>]) -> Poly {
    assert_square(rows);
    let n = rows.len();
    if n == 0 {
        return Poly::one();
    }
    let mut a: Vec<Vec<Poly>> = rows.to_vec();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn two_by_two() {
        let m = vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[0, 1])]];
        assert_eq!(det_cofactor(&m), Poly::t());
        let m = vec![vec![p(&[]), p(&[0, 1])], vec![p(&[0, 1]), p(&[0, 1])]];
        assert_eq!(det_cofactor(&m), p(&[0, 0, -1]));
        assert_eq!(det_fraction_free(&m), p(&[0, 0, -1]));
        let m = vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[])]];
        assert!(det_cofactor(&m).is_zero());
        assert!(det_fraction_free(&m).is_zero());
    }

    #[test]
    fn pivoting_and_row_swap_sign() {
        let m = vec![
            vec![p(&[]), p(&[1]), p(&[0, 1])],
            vec![p(&[1, 1]), p(&[2]), p(&[])],
            vec![p(&[3]), p(&[0, 0, 1]), p(&[1])],
        ];
        let d = det_cofactor(&m);
        assert_eq!(det_fraction_free(&m), d);
        let mut swapped = m.clone();
        swapped.swap(0, 2);
        assert_eq!(det_cofactor(&swapped), -&d);
        assert_eq!(det_fraction_free(&swapped), -d);
    }
}
