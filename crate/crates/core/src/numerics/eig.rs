//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! exact propagator `exp(-iHt)` built from it.

use super::linalg::{dagger, matmul, CMatrix, ComplexScalar, ZERO};
use super::NumericsError;

/// Entrywise tolerance on `m - m†`, relative to `max(1, max|m_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order; column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEig {
    /// `V diag(f(λ)) V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> ComplexScalar) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let mut scaled = v.clone();
        for (j, lambda) in self.values.iter().enumerate() {
            let fj = f(*lambda);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        matmul(&scaled, &dagger(v)).expect("same dimension")
    }
}

pub fn check_hermitian(m: &CMatrix) -> Result<(), NumericsError> {
    let deviation = m.hermiticity_error();
    if deviation > HERMITIAN_TOL * m.max_abs().max(1.0) {
        Err(NumericsError::NotHermitian { deviation })
    } else {
        Ok(())
    }
}

fn off_diagonal_norm_sqr(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc
}

pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig, NumericsError> {
    check_hermitian(m)?;
    let n = m.dim();
    // symmetrize so round-off in the input cannot break the rotations
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = CMatrix::identity(n);

    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let threshold = (n as f64 * f64::EPSILON * scale).powi(2);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sqr(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                // a_pq = b e^{iφ}; U = diag-phase then real rotation on (p, q)
                let phase = apq / b;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * b).atan2(aqq - app);
                let (s, c) = theta.sin_cos();

                let u_pp = ComplexScalar::new(c, 0.0);
                let u_pq = ComplexScalar::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                // A <- A U (columns p, q)
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * u_pp + aiq * u_qp;
                    a[(i, q)] = aip * u_pq + aiq * u_qq;
                }
                // A <- U† A (rows p, q)
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = u_pp.conj() * apj + u_qp.conj() * aqj;
                    a[(q, j)] = u_pq.conj() * apj + u_qq.conj() * aqj;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * u_pp + viq * u_qp;
                    v[(i, q)] = vip * u_pq + viq * u_qq;
                }
            }
        }
    }
    if off_diagonal_norm_sqr(&a) > (1e-13 * scale).powi(2) {
        return Err(NumericsError::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok(HermitianEig { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64, NumericsError> {
    Ok(hermitian_eig(m)?.values[0])
}

/// `U(t) = exp(-iHt)` for a time-independent Hermitian `h`.
pub fn propagator_exact(h: &CMatrix, t: f64) -> Result<CMatrix, NumericsError> {
    let eig = hermitian_eig(h)?;
    Ok(eig.map_spectrum(|lambda| ComplexScalar::from_polar(1.0, -lambda * t)))
}
