//! Dense 4x4 helpers: determinant and one-dimensional null vectors.

use crate::scalar::Real;

pub type Matrix4<T> = [[T; 4]; 4];

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det4<T: Real>(m: &Matrix4<T>) -> T {
    let mut a = *m;
    let mut det = T::one();
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if a[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                let v = a[col][k];
                a[row][k] -= factor * v;
            }
        }
    }
    det
}

/// Largest absolute entry.
pub fn max_abs<T: Real>(m: &Matrix4<T>) -> T {
    m.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

pub fn mat_vec<T: Real>(m: &Matrix4<T>, v: &[T; 4]) -> [T; 4] {
    let mut out = [T::zero(); 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
    }
    out
}

pub fn norm2<T: Real>(v: &[T; 4]) -> T {
    v.iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt()
}

/// Null vector of a (numerically) rank-3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullVector<T> {
    pub vector: [T; 4],
    /// `|third pivot| / |first pivot|` after equilibration; tiny values mean
    /// the null space is at least two-dimensional.
    pub third_pivot_ratio: T,
}

/// Null vector by Gaussian elimination with complete pivoting on the
/// column-equilibrated matrix. The column eliminated last is the free
/// variable and is set to one before back substitution.
pub fn null_vector4<T: Real>(m: &Matrix4<T>) -> NullVector<T> {
    let mut a = *m;
    let mut col_scale = [T::one(); 4];
    for (c, scale) in col_scale.iter_mut().enumerate() {
        let s = (0..4).fold(T::zero(), |acc, r| acc.max(a[r][c].abs()));
        if s > T::zero() && s.is_finite() {
            *scale = s;
            for row in a.iter_mut() {
                row[c] /= s;
            }
        }
    }
    let mut perm = [0usize, 1, 2, 3];
    let mut pivots = [T::zero(); 4];
    for step in 0..3 {
        let (mut pr, mut pc, mut best) = (step, step, -T::one());
        for r in step..4 {
            for c in step..4 {
                let v = a[r][c].abs();
                if v > best {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        a.swap(step, pr);
        if pc != step {
            for row in a.iter_mut() {
                row.swap(step, pc);
            }
            perm.swap(step, pc);
        }
        pivots[step] = a[step][step];
        if pivots[step] == T::zero() {
            continue;
        }
        for r in step + 1..4 {
            let factor = a[r][step] / a[step][step];
            for c in step..4 {
                let v = a[step][c];
                a[r][c] -= factor * v;
            }
        }
    }
    // Back substitution with the last permuted variable free.
    let mut y = [T::zero(); 4];
    y[3] = T::one();
    for i in (0..3).rev() {
        if a[i][i] == T::zero() {
            y[i] = T::zero();
            continue;
        }
        let mut s = T::zero();
        for j in i + 1..4 {
            s += a[i][j] * y[j];
        }
        y[i] = -s / a[i][i];
    }
    let mut x = [T::zero(); 4];
    for (i, &p) in perm.iter().enumerate() {
        x[p] = y[i] / col_scale[p];
    }
    let ratio = if pivots[0] == T::zero() {
        T::zero()
    } else {
        (pivots[2] / pivots[0]).abs()
    };
    NullVector {
        vector: x,
        third_pivot_ratio: ratio,
    }
}

/// Scales `v` so its largest component has magnitude one.
pub fn normalize_max<T: Real>(v: [T; 4]) -> [T; 4] {
    let m = v.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    if m == T::zero() {
        return v;
    }
    v.map(|x| x / m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_permutation_and_diagonal() {
        let m: Matrix4<f64> = [
            [0.0, 2.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 3.0, 0.0],
            [0.0, 0.0, 0.0, 4.0],
        ];
        assert!((det4(&m) + 24.0).abs() < 1e-14);
    }

    #[test]
    fn null_vector_of_rank_three_matrix() {
        // Fourth column = first + second, so (1, 1, 0, -1) spans the kernel.
        let m: Matrix4<f64> = [
            [1.0, 2.0, 3.0, 3.0],
            [4.0, -1.0, 0.5, 3.0],
            [2.0, 2.0, -7.0, 4.0],
            [0.0, 1.0, 1.0, 1.0],
        ];
        let nv = null_vector4(&m);
        let r = mat_vec(&m, &nv.vector);
        assert!(norm2(&r) < 1e-13 * max_abs(&m) * norm2(&nv.vector));
        let v = normalize_max(nv.vector);
        assert!((v[0].abs() - 1.0).abs() < 1e-14);
        assert!((v[0] - v[1]).abs() < 1e-14 && (v[0] + v[3]).abs() < 1e-14);
    }

    #[test]
    fn free_variable_need_not_be_last_column() {
        // Kernel (0, 0, 1, 0): the last column carries no kernel component.
        let m: Matrix4<f64> = [
            [1.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0, 2.0],
            [1.0, 1.0, 0.0, 0.0],
            [2.0, 0.0, 0.0, 5.0],
        ];
        let v = normalize_max(null_vector4(&m).vector);
        assert!((v[2].abs() - 1.0).abs() < 1e-14);
        assert!(v[0].abs() + v[1].abs() + v[3].abs() < 1e-14);
    }
}
