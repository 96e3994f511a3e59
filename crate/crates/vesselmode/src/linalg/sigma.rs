//! Smallest singular values by inverse iteration on A^H A through a band
//! factorization. A warm-start vector makes sweeps over nearby pencil
//! parameters converge in one or two iterations.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::band::{two_norm, BandLu};

pub struct SigmaMinResult {
    pub sigma: f64,
    /// unit right singular vector associated with sigma
    pub right_vector: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Smallest singular value of the factored matrix.
///
/// Iterates z = A^{-1} A^{-H} x; the Rayleigh quotient of (A^H A)^{-1}
/// converges to 1/sigma_min^2.
pub fn sigma_min(f: &BandLu, warm_start: Option<&[Complex64]>, rtol: f64) -> SigmaMinResult {
    let n = f.n();
    let mut x: Vec<Complex64> = match warm_start {
        Some(w) if w.len() == n && two_norm(w) > 0.0 => w.to_vec(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
            (0..n)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect()
        }
    };
    normalize(&mut x);

    let mut sigma_prev = f64::INFINITY;
    let mut iterations = 0usize;
    let mut converged = false;
    for it in 0..60 {
        iterations = it + 1;
        let (w, _) = f.solve_conj_transpose(&x);
        let (z, _) = f.solve(&w);
        // rho = x^H z = || A^{-H} x ||^2 up to roundoff; use the direct form
        let rho: Complex64 = x
            .iter()
            .zip(&z)
            .map(|(a, b)| a.conj() * b)
            .sum();
        let rho = rho.re.max(f64::MIN_POSITIVE);
        let sigma = 1.0 / rho.sqrt();
        let nz = two_norm(&z);
        if !nz.is_finite() || nz == 0.0 {
            // solves overflowed: matrix is numerically singular
            return SigmaMinResult {
                sigma: 0.0,
                right_vector: x,
                iterations,
                converged: true,
            };
        }
        x = z;
        normalize(&mut x);
        if (sigma_prev - sigma).abs() <= rtol * sigma.max(f64::MIN_POSITIVE) && it >= 4 {
            sigma_prev = sigma;
            converged = true;
            break;
        }
        sigma_prev = sigma;
    }
    // polish the estimate as an actual residual norm ||A x||
    let ax = f.matrix().mul_vec(&x);
    let sigma = two_norm(&ax);
    SigmaMinResult {
        sigma: sigma.min(sigma_prev),
        right_vector: x,
        iterations,
        converged,
    }
}

/// The k smallest singular values (ascending) by subspace iteration on
/// (A^H A)^{-1}; used for multiplicity estimates at located eigenvalues.
pub fn sigma_smallest_k(f: &BandLu, k: usize, sweeps: usize) -> Vec<f64> {
    let n = f.n();
    let k = k.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED ^ 0x9E3779B9);
    let mut basis: Vec<Vec<Complex64>> = (0..k)
        .map(|_| {
            let mut v: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            normalize(&mut v);
            v
        })
        .collect();
    for _ in 0..sweeps {
        let mut next = Vec::with_capacity(k);
        for v in &basis {
            let (w, _) = f.solve_conj_transpose(v);
            let (z, _) = f.solve(&w);
            next.push(z);
        }
        gram_schmidt(&mut next);
        basis = next;
    }
    // Rayleigh-Ritz on A^H A over the converged subspace
    let images: Vec<Vec<Complex64>> = basis.iter().map(|v| f.matrix().mul_vec(v)).collect();
    let mut h = nalgebra::DMatrix::<Complex64>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            h[(i, j)] = images[i]
                .iter()
                .zip(images[j].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
        }
    }
    let eig = nalgebra::SymmetricEigen::new(h);
    let mut sigmas: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    sigmas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sigmas
}

fn normalize(v: &mut [Complex64]) {
    let n = two_norm(v);
    if n > 0.0 && n.is_finite() {
        let inv = 1.0 / n;
        for z in v.iter_mut() {
            *z *= inv;
        }
    }
}

fn gram_schmidt(vs: &mut [Vec<Complex64>]) {
    for i in 0..vs.len() {
        for j in 0..i {
            let dot: Complex64 = vs[j]
                .iter()
                .zip(vs[i].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let (head, tail) = vs.split_at_mut(i);
            for (a, b) in tail[0].iter_mut().zip(head[j].iter()) {
                *a -= dot * b;
            }
        }
        normalize(&mut vs[i]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::csr::CsrMatrix;
    use nalgebra::DMatrix;

    #[test]
    fn matches_dense_svd() {
        let n = 30;
        let mut t = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..n {
            t.push((i, i, Complex64::new(2.0 + rng.gen::<f64>(), rng.gen::<f64>())));
            let j = rng.gen_range(0..n);
            t.push((i, j, Complex64::new(rng.gen::<f64>(), rng.gen::<f64>() - 0.5)));
        }
        let a = CsrMatrix::from_triplets(n, &t);
        let f = BandLu::factor(&a, None).unwrap();
        let got = sigma_min(&f, None, 1e-10);

        let mut d: DMatrix<Complex64> = DMatrix::zeros(n, n);
        for r in 0..n {
            for k in a.row_ptr[r]..a.row_ptr[r + 1] {
                d[(r, a.col_idx[k])] += a.values[k];
            }
        }
        let svd = d.svd(false, false);
        let smin = svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert!(
            (got.sigma - smin).abs() < 2e-4 * smin.max(1e-12),
            "got {} want {}",
            got.sigma,
            smin
        );

        let ks = sigma_smallest_k(&f, 3, 14);
        assert!((ks[0] - smin).abs() < 2e-4 * smin);
    }

    #[test]
    fn scaling_doubles_sigma() {
        let n = 16;
        let mut t = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..n {
            t.push((i, i, Complex64::new(1.0 + rng.gen::<f64>(), 0.3)));
            t.push((i, (i + 3) % n, Complex64::new(0.4, -0.2)));
        }
        let a = CsrMatrix::from_triplets(n, &t);
        let two = CsrMatrix::linear_combination(&[(&a, Complex64::new(2.0, 0.0))]);
        let s1 = sigma_min(&BandLu::factor(&a, None).unwrap(), None, 1e-10).sigma;
        let s2 = sigma_min(&BandLu::factor(&two, None).unwrap(), None, 1e-10).sigma;
        assert!((s2 - 2.0 * s1).abs() < 1e-8 * s1);
    }
}
