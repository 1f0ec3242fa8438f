//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use subarray_precoding::{Complex, ComplexMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> Complex {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let v = random_matrix(rng, n, 1);
    let norm = v.frobenius_norm();
    v.scale(1.0 / norm)
}

/// `Bᴴ B + shift I`, Hermitian positive definite for `shift > 0`.
pub fn random_hpd(rng: &mut impl Rng, n: usize, shift: f64) -> ComplexMatrix {
    let b = random_matrix(rng, n, n);
    naive_matmul(&b.conj_transpose(), &b)
        .add(&ComplexMatrix::identity(n).scale(shift))
        .unwrap()
}

pub fn naive_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.cols(), b.rows());
    let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = Complex::new(0.0, 0.0);
            for k in 0..a.cols() {
                s += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// All eigenvalues of a Hermitian matrix, descending, from cyclic Jacobi on
/// the real symmetric embedding `[[Re, -Im], [Im, Re]]`. The embedding
/// doubles every eigenvalue, so every second value is kept.
pub fn jacobi_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.rows();
    let m = 2 * n;
    let mut s = vec![vec![0.0; m]; m];
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            s[i][j] = z.re;
            s[i + n][j + n] = z.re;
            s[i][j + n] = -z.im;
            s[i + n][j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i][j] * s[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if s[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let skp = s[k][p];
                    let skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for k in 0..m {
                    let spk = s[p][k];
                    let sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..m).map(|i| s[i][i]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eig.into_iter().step_by(2).collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &ComplexMatrix) -> Complex {
    let n = a.rows();
    assert!(a.is_square());
    if n == 1 {
        return a[(0, 0)];
    }
    let mut det = Complex::new(0.0, 0.0);
    for j in 0..n {
        let minor = minor(a, 0, j);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += a[(0, j)] * cofactor_det(&minor) * sign;
    }
    det
}

fn minor(a: &ComplexMatrix, row: usize, col: usize) -> ComplexMatrix {
    let n = a.rows();
    let data = (0..n)
        .filter(|&i| i != row)
        .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)])
        .collect();
    ComplexMatrix::from_row_major(n - 1, n - 1, data).unwrap()
}

/// Inverse via the adjugate: `adj(a)ᵀ / det(a)`.
pub fn adjugate_inverse(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let det = cofactor_det(a);
    let mut inv = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            inv[(j, i)] = cofactor_det(&minor(a, i, j)) * sign / det;
        }
    }
    inv
}

/// Frobenius norm of what remains of `h` after removing `steps` column
/// directions chosen by largest remaining norm (modified Gram-Schmidt with
/// pivoting).
pub fn residual_after_pivoted_gram_schmidt(h: &ComplexMatrix, steps: usize) -> f64 {
    let mut cols: Vec<Vec<Complex>> = (0..h.cols())
        .map(|j| (0..h.rows()).map(|i| h[(i, j)]).collect())
        .collect();
    let norm = |v: &[Complex]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for _ in 0..steps {
        let (best, best_norm) = cols
            .iter()
            .enumerate()
            .map(|(j, c)| (j, norm(c)))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_norm <= 0.0 {
            break;
        }
        let q: Vec<Complex> = cols[best].iter().map(|z| z / best_norm).collect();
        for c in cols.iter_mut() {
            let proj: Complex = q.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= proj * qi;
            }
        }
    }
    cols.iter().map(|c| norm(c).powi(2)).sum::<f64>().sqrt()
}

/// One-sample Kolmogorov-Smirnov statistic against U[lo, hi).
pub fn ks_uniform(samples: &[f64], lo: f64, hi: f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// `|sin(n π Δ) / (n sin(π Δ))|`, the normalized array factor of two ULA
/// steering vectors whose phase slopes differ by `2 π Δ`.
pub fn dirichlet(n: usize, delta: f64) -> f64 {
    let den = n as f64 * (std::f64::consts::PI * delta).sin();
    if den.abs() < 1e-15 {
        return 1.0;
    }
    ((n as f64 * std::f64::consts::PI * delta).sin() / den).abs()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
