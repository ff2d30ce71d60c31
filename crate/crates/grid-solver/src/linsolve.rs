use crate::SolverError;

/// Solve the dense system `a x = rhs` for small `R` by Gaussian
/// elimination with partial pivoting.
pub fn solve_small<const R: usize>(
    a: &[[f64; R]; R],
    rhs: &[f64; R],
) -> Result<[f64; R], SolverError> {
    let mut m = *a;
    let mut b = *rhs;
    for col in 0..R {
        let mut piv = col;
        for r in col + 1..R {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col].abs() < 1e-300 {
            return Err(SolverError::SingularMatrix(m[piv][col]));
        }
        if piv != col {
            m.swap(piv, col);
            b.swap(piv, col);
        }
        for r in col + 1..R {
            let f = m[r][col] / m[col][col];
            for c in col..R {
                m[r][c] -= f * m[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; R];
    for r in (0..R).rev() {
        let mut acc = b[r];
        for c in r + 1..R {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solves_and_detects_singularity() {
        let a = [[3.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 4.0]];
        let x_true = [0.5, -1.0, 2.0];
        let rhs = [
            3.0 * 0.5 - 1.0,
            0.5 - 2.0 + 2.0,
            -1.0 + 8.0,
        ];
        let x = solve_small(&a, &rhs).unwrap();
        for i in 0..3 {
            assert_relative_eq!(x[i], x_true[i], max_relative = 1e-13);
        }
        let sing = [[1.0, 1.0], [1.0, 1.0]];
        assert!(solve_small(&sing, &[1.0, 2.0]).is_err());
    }
}
