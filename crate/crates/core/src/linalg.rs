//! Exact linear algebra over the rationals: fraction-free elimination with
//! solvability classification, for the momentum systems of tropical curves.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Outcome of solving A·x = rhs exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    /// Full column rank and consistent: the unique solution.
    Unique(Vec<BigRational>),
    /// Rank-deficient but consistent: solutions form a positive-dimensional
    /// affine space.
    Underdetermined,
    /// No solution.
    Inconsistent,
}

/// Gaussian elimination over `BigRational` with full pivoting by nonzero
/// test. Exact, so rank decisions are never heuristic.
pub fn solve(a: &[Vec<BigRational>], rhs: &[BigRational]) -> Solve {
    let rows = a.len();
    assert_eq!(rows, rhs.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };

    // Augmented matrix.
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            assert_eq!(row.len(), cols);
            let mut v = row.clone();
            v.push(r.clone());
            v
        })
        .collect();

    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        // Find a pivot in this column at or below `row`.
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for c in col..=cols {
            let v = &m[row][c] / &inv;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let v = &m[r][c] - &f * &m[row][c];
                    m[r][c] = v;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }

    // Any leftover row with zero coefficients but nonzero rhs is a
    // contradiction.
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return Solve::Inconsistent;
        }
    }
    if pivot_col_of_row.len() < cols {
        return Solve::Underdetermined;
    }
    let mut x = alloc::vec![BigRational::zero(); cols];
    for (r, &c) in pivot_col_of_row.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Solve::Unique(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn unique_2x2() {
        // x + y = 3, x - y = 1 => x = 2, y = 1.
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let sol = solve(&a, &[int(3), int(1)]);
        assert_eq!(sol, Solve::Unique(vec![int(2), int(1)]));
    }

    #[test]
    fn overdetermined_consistent() {
        // Three compatible equations in two unknowns.
        let a = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        let sol = solve(&a, &[rat(1, 2), int(3), rat(7, 2)]);
        assert_eq!(sol, Solve::Unique(vec![rat(1, 2), int(3)]));
    }

    #[test]
    fn inconsistent() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(&a, &[int(1), int(3)]), Solve::Inconsistent);
    }

    #[test]
    fn underdetermined() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(&a, &[int(1), int(2)]), Solve::Underdetermined);
    }

    proptest::proptest! {
        #[test]
        fn solution_satisfies_system(
            entries in proptest::collection::vec(-9i64..=9, 9),
            rhs in proptest::collection::vec(-9i64..=9, 3),
        ) {
            let a: Vec<Vec<BigRational>> = entries
                .chunks(3)
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect();
            let b: Vec<BigRational> = rhs.iter().map(|&v| int(v)).collect();
            if let Solve::Unique(x) = solve(&a, &b) {
                for (row, want) in a.iter().zip(&b) {
                    let got: BigRational = row.iter().zip(&x).map(|(c, xi)| c * xi).sum();
                    proptest::prop_assert_eq!(&got, want);
                }
            }
        }
    }
}
