use crate::{CoefficientError, Mat4, State};

pub fn mat_vec4(a: &Mat4, v: &State) -> State {
    let mut out = [0.0; 4];
    for r in 0..4 {
        out[r] = a[r][0] * v[0] + a[r][1] * v[1] + a[r][2] * v[2] + a[r][3] * v[3];
    }
    out
}

pub fn mat_mul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += a[r][k] * b[k][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

/// Solve `a x = rhs` by Gaussian elimination with partial pivoting.
pub fn solve4(a: &Mat4, rhs: &State) -> Result<State, CoefficientError> {
    let mut m = *a;
    let mut b = *rhs;
    for col in 0..4 {
        let mut piv = col;
        for r in col + 1..4 {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col].abs() < 1e-300 {
            return Err(CoefficientError::SingularMatrix(m[piv][col]));
        }
        if piv != col {
            m.swap(piv, col);
            b.swap(piv, col);
        }
        for r in col + 1..4 {
            let f = m[r][col] / m[col][col];
            for c in col..4 {
                m[r][c] -= f * m[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let mut acc = b[r];
        for c in r + 1..4 {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    Ok(x)
}

/// Largest absolute asymmetry `|a_ij - a_ji|`, zero for a symmetric matrix.
pub fn sym_defect(a: &Mat4) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..4 {
        for c in r + 1..4 {
            worst = worst.max((a[r][c] - a[c][r]).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solves_a_dense_system() {
        let a = [
            [4.0, 1.0, 0.0, 2.0],
            [1.0, 5.0, 1.0, 0.0],
            [0.0, 1.0, 3.0, 1.0],
            [2.0, 0.0, 1.0, 6.0],
        ];
        let x_true = [1.0, -2.0, 0.5, 3.0];
        let rhs = mat_vec4(&a, &x_true);
        let x = solve4(&a, &rhs).unwrap();
        for i in 0..4 {
            assert_relative_eq!(x[i], x_true[i], max_relative = 1e-13);
        }
    }

    #[test]
    fn rejects_singular_matrix() {
        let a = [
            [1.0, 2.0, 0.0, 0.0],
            [2.0, 4.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert!(solve4(&a, &[1.0, 1.0, 1.0, 1.0]).is_err());
    }
}
