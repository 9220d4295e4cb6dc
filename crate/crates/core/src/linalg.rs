//! Dense symmetric eigensolvers.
//!
//! Two independent routes are deliberately kept:
//!
//! * [`jacobi_eigen`] — cyclic Jacobi sweeps with eigenvectors. Used for the
//!   small commuting class-matrix combinations (k = number of conjugacy
//!   classes) and as a cross-check oracle for the other solver.
//! * [`sym_eigenvalues`] — Householder tridiagonalization followed by
//!   implicit-shift QL, eigenvalues only. Used for the n x n Gram matrices of
//!   bipartite Cayley graphs, where whole batches of ~1000 x 1000 solves must
//!   finish in seconds rather than minutes.

use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMat {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SquareMat {
    pub fn zeros(n: usize) -> Self {
        SquareMat {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SquareMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> SquareMat {
        SquareMat::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &SquareMat) -> SquareMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = SquareMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn off_diagonal_frobenius(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.get(i, j) * self.get(i, j);
                }
            }
        }
        s.sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Sweeps run until the off-diagonal Frobenius mass drops below
/// `1e-12 * ||A||_F`, with a hard cap of 100 sweeps. Returns eigenvalues in
/// ascending order together with matching eigenvectors (each normalized).
pub fn jacobi_eigen(a: &SquareMat) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    debug_assert!(a.is_symmetric(1e-9 * (1.0 + a.frobenius())));
    let n = a.n;
    let mut m = a.clone();
    let mut v = SquareMat::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 });
    if n <= 1 {
        let vals = if n == 1 { vec![m.get(0, 0)] } else { vec![] };
        let vecs = if n == 1 { vec![vec![1.0]] } else { vec![] };
        return Ok((vals, vecs));
    }
    let target = 1e-12 * a.frobenius();
    let mut converged = false;
    for _sweep in 0..100 {
        if m.off_diagonal_frobenius() <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for j in 0..n {
                    if j != p && j != q {
                        let ajp = m.get(j, p);
                        let ajq = m.get(j, q);
                        let njp = ajp - s * (ajq + tau * ajp);
                        let njq = ajq + s * (ajp - tau * ajq);
                        m.set(j, p, njp);
                        m.set(p, j, njp);
                        m.set(j, q, njq);
                        m.set(q, j, njq);
                    }
                }
                for j in 0..n {
                    let vjp = v.get(j, p);
                    let vjq = v.get(j, q);
                    v.set(j, p, vjp - s * (vjq + tau * vjp));
                    v.set(j, q, vjq + s * (vjp - tau * vjq));
                }
            }
        }
    }
    if !converged && m.off_diagonal_frobenius() > target {
        return Err(Error::NonConvergence(format!(
            "jacobi sweeps exhausted at off-diagonal mass {:.3e}",
            m.off_diagonal_frobenius()
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).partial_cmp(&m.get(j, j)).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let vecs: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v.get(row, col)).collect())
        .collect();
    Ok((vals, vecs))
}

/// All eigenvalues of a symmetric matrix, ascending. Householder reduction to
/// tridiagonal form, then implicit-shift QL.
pub fn sym_eigenvalues(a: &SquareMat) -> Result<Vec<f64>> {
    let n = a.n;
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![a.get(0, 0)]);
    }
    let mut work = a.clone();
    let (mut d, mut e) = tridiagonalize(&mut work);
    tql_implicit(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Reduce a symmetric matrix to tridiagonal form in place. Returns the
/// diagonal `d` and subdiagonal `e` (`e[i]` couples rows i and i+1, `e[n-1]`
/// unused).
fn tridiagonalize(a: &mut SquareMat) -> (Vec<f64>, Vec<f64>) {
    let n = a.n;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the diagonal.
        let mut norm2 = 0.0;
        for i in k + 1..n {
            norm2 += a.get(i, k) * a.get(i, k);
        }
        let x0 = a.get(k + 1, k);
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for (i, vi) in v.iter_mut().enumerate().take(n).skip(k + 1) {
            *vi = a.get(i, k);
        }
        v[k + 1] = x0 - alpha;
        let vtv: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;
        // p = beta * B v over the trailing block, then the symmetric rank-2
        // update B -= v w^T + w v^T with w = p - (beta/2)(p.v) v.
        for (i, pi) in p.iter_mut().enumerate().take(n).skip(k + 1) {
            let row = &a.data[i * n..i * n + n];
            let mut s = 0.0;
            for j in k + 1..n {
                s += row[j] * v[j];
            }
            *pi = beta * s;
        }
        let pv: f64 = (k + 1..n).map(|i| p[i] * v[i]).sum();
        let coef = 0.5 * beta * pv;
        for i in k + 1..n {
            w[i] = p[i] - coef * v[i];
        }
        for i in k + 1..n {
            let vi = v[i];
            let wi = w[i];
            let row = &mut a.data[i * n..i * n + n];
            for j in k + 1..n {
                row[j] -= vi * w[j] + wi * v[j];
            }
        }
        a.set(k + 1, k, alpha);
        a.set(k, k + 1, alpha);
        for i in k + 2..n {
            a.set(i, k, 0.0);
            a.set(k, i, 0.0);
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    let mut e: Vec<f64> = (0..n - 1).map(|i| a.get(i + 1, i)).collect();
    e.push(0.0);
    (d, e)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
fn tql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::NonConvergence(
                    "tridiagonal QL exceeded 50 iterations".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_symmetric(n: usize, rng: &mut SplitMix64) -> SquareMat {
        let mut m = SquareMat::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = rng.uniform(-3.0, 3.0);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    #[test]
    fn jacobi_diagonal_matrix() {
        let m = SquareMat::from_fn(3, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let (vals, _) = jacobi_eigen(&m).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn jacobi_known_2x2() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let mut m = SquareMat::zeros(2);
        m.set(0, 0, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        m.set(1, 1, 2.0);
        let (vals, vecs) = jacobi_eigen(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        // residual check A v = lambda v
        for (lam, v) in vals.iter().zip(&vecs) {
            for i in 0..2 {
                let av: f64 = (0..2).map(|j| m.get(i, j) * v[j]).sum();
                assert!((av - lam * v[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ql_matches_jacobi_on_random_matrices() {
        let mut rng = SplitMix64::new(42);
        for n in [2usize, 3, 5, 8, 17, 40, 80] {
            let m = random_symmetric(n, &mut rng);
            let (jv, _) = jacobi_eigen(&m).unwrap();
            let qv = sym_eigenvalues(&m).unwrap();
            for (a, b) in jv.iter().zip(&qv) {
                assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn eigenvalue_sum_is_trace() {
        let mut rng = SplitMix64::new(9);
        for n in [4usize, 12, 33] {
            let m = random_symmetric(n, &mut rng);
            let vals = sym_eigenvalues(&m).unwrap();
            let sum: f64 = vals.iter().sum();
            assert!((sum - m.trace()).abs() < 1e-9 * (1.0 + m.trace().abs()) * n as f64);
        }
    }

    #[test]
    fn jacobi_eigenvectors_orthonormal() {
        let mut rng = SplitMix64::new(77);
        let m = random_symmetric(10, &mut rng);
        let (_, vecs) = jacobi_eigen(&m).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let dot: f64 = (0..10).map(|k| vecs[i][k] * vecs[j][k]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
    }
}
