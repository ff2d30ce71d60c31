/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order.  Sizes here are tiny (R <= 8), so the
/// quadratic sweep cost is irrelevant.
pub fn symmetric_eigenvalues<const R: usize>(a: &[[f64; R]; R]) -> [f64; R] {
    let mut m = *a;
    let scale: f64 = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &x| acc.max(x.abs()))
        .max(1e-300);
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..R {
            for q in p + 1..R {
                off = off.max(m[p][q].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..R {
            for q in p + 1..R {
                if m[p][q].abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = 0.5 * (2.0 * m[p][q]).atan2(m[q][q] - m[p][p]);
                let (s, c) = theta.sin_cos();
                for k in 0..R {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..R {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig = [0.0; R];
    for i in 0..R {
        eig[i] = m[i][i];
    }
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Lower Cholesky factor of a symmetric positive definite matrix, or
/// `None` if a pivot is not strictly positive.
pub fn cholesky<const R: usize>(a: &[[f64; R]; R]) -> Option<[[f64; R]; R]> {
    let mut l = [[0.0; R]; R];
    for i in 0..R {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

/// Extreme generalized eigenvalues of the pencil `A x = lambda B x` with
/// `B` symmetric positive definite: returns `(min, max)`, or `None` if
/// the Cholesky factorization of `B` fails.
///
/// Reduction: with `B = L L'`, the pencil spectrum equals the spectrum of
/// the symmetric matrix `inv(L) A inv(L)'`.
pub fn generalized_eigen_range<const R: usize>(
    a: &[[f64; R]; R],
    b: &[[f64; R]; R],
) -> Option<(f64, f64)> {
    let l = cholesky(b)?;
    // Y = inv(L) A  by forward substitution on each column of A.
    let mut y = [[0.0; R]; R];
    for c in 0..R {
        for r in 0..R {
            let mut sum = a[r][c];
            for k in 0..r {
                sum -= l[r][k] * y[k][c];
            }
            y[r][c] = sum / l[r][r];
        }
    }
    // C = Y inv(L)' = inv(L) A inv(L)'; compute row-wise forward solves on Y'.
    let mut cmat = [[0.0; R]; R];
    for r in 0..R {
        for c in 0..R {
            let mut sum = y[r][c];
            for k in 0..c {
                sum -= l[c][k] * cmat[r][k];
            }
            cmat[r][c] = sum / l[c][c];
        }
    }
    let eig = symmetric_eigenvalues(&cmat);
    Some((eig[0], eig[R - 1]))
}
