//! Small dense complex linear algebra helpers: conjugate transpose, Kronecker
//! products, unitarity checks, a Jacobi eigensolver for Hermitian matrices,
//! and a power-iteration operator norm. Sizes stay in the low thousands, so
//! simple O(n^3) methods are fine and keep the crate dependency-light.

use ndarray::Array2;
use num_complex::Complex64;

pub(crate) fn cidentity(n: usize) -> Array2<Complex64> {
    Array2::from_diag_elem(n, Complex64::new(1.0, 0.0))
}

/// Conjugate transpose.
pub(crate) fn dagger(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|z| z.conj())
}

pub(crate) fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Max |entry| distance from A A^dagger = I.
pub(crate) fn unitarity_defect(a: &Array2<Complex64>) -> f64 {
    let prod = a.dot(&dagger(a));
    max_abs_diff(&prod, &cidentity(a.nrows()))
}

/// Kronecker product.
pub(crate) fn kron(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let scale = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = scale * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues ascending, unitary whose columns are eigenvectors).
pub(crate) fn hermitian_eig(a: &Array2<Complex64>) -> (Vec<f64>, Array2<Complex64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let mut v = cidentity(n);
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() < 1e-13 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // Factor out the phase so a real Jacobi rotation applies:
                // the 2x2 block is D [[app, |apq|], [|apq|, aqq]] D^dagger
                // with D = diag(u, 1), u = apq / |apq|.
                let u = apq / apq.norm();
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // The plane rotation is J with J[p,p] = c, J[p,q] = s u,
                // J[q,p] = -s conj(u), J[q,q] = c; right-multiplication mixes
                // columns with conj(u), left-multiplication by J^dagger mixes
                // rows with u.
                let jp = |x: Complex64, y: Complex64| {
                    (
                        x * c - y * (s * u.conj()),
                        x * (s * u) + y * c,
                    )
                };
                // m <- J^dagger m J; update columns then rows.
                for k in 0..n {
                    let (mk_p, mk_q) = (m[(k, p)], m[(k, q)]);
                    let (np, nq) = jp(mk_p, mk_q);
                    m[(k, p)] = np;
                    m[(k, q)] = nq;
                }
                for k in 0..n {
                    let (mp_k, mq_k) = (m[(p, k)], m[(q, k)]);
                    let np = mp_k * c - mq_k * (s * u);
                    let nq = mp_k * (s * u.conj()) + mq_k * c;
                    m[(p, k)] = np;
                    m[(q, k)] = nq;
                }
                for k in 0..n {
                    let (vk_p, vk_q) = (v[(k, p)], v[(k, q)]);
                    let (np, nq) = jp(vk_p, vk_q);
                    v[(k, p)] = np;
                    v[(k, q)] = nq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigvals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigvecs = Array2::zeros((n, n));
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            eigvecs[(r, new_col)] = v[(r, old_col)];
        }
    }
    (eigvals, eigvecs)
}

/// Spectral norm ||A||_2 via power iteration on A^dagger A. Deterministic
/// start vector; accurate to a few parts in 1e-6, which is plenty for the
/// error-threshold checks it backs.
pub(crate) fn operator_norm(a: &Array2<Complex64>) -> f64 {
    let n = a.ncols();
    if n == 0 {
        return 0.0;
    }
    let b = dagger(a).dot(a);
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + (i as f64 * 0.7373).sin(), (i as f64 * 0.3141).cos()))
        .collect();
    let mut lambda = 0.0f64;
    for _ in 0..500 {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += b[(i, j)] * v[j];
            }
            w[i] = acc;
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let new_lambda = norm;
        for z in w.iter_mut() {
            *z /= norm;
        }
        v = w;
        if (new_lambda - lambda).abs() < 1e-12 * new_lambda.max(1.0) {
            lambda = new_lambda;
            break;
        }
        lambda = new_lambda;
    }
    lambda.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn jacobi_eig_matches_known_spectrum() {
        // Pauli Y has eigenvalues -1, +1.
        let y = ndarray::array![[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
        let (vals, vecs) = hermitian_eig(&y);
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        assert!(unitarity_defect(&vecs) < 1e-10);
        // Reconstruction A = V diag V^dagger.
        let mut recon = Array2::zeros((2, 2));
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    recon[(i, j)] += vecs[(i, k)] * vals[k] * vecs[(j, k)].conj();
                }
            }
        }
        assert!(max_abs_diff(&recon, &y) < 1e-10);
    }

    #[test]
    fn jacobi_eig_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [3usize, 8, 17] {
            let mut a = Array2::zeros((n, n));
            for i in 0..n {
                a[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
                for j in (i + 1)..n {
                    let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    a[(i, j)] = z;
                    a[(j, i)] = z.conj();
                }
            }
            let (vals, vecs) = hermitian_eig(&a);
            assert!(unitarity_defect(&vecs) < 1e-9);
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            let mut recon: Array2<Complex64> = Array2::zeros((n, n));
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        recon[(i, j)] += vecs[(i, k)] * vals[k] * vecs[(j, k)].conj();
                    }
                }
            }
            assert!(max_abs_diff(&recon, &a) < 1e-9, "n={n}");
        }
    }

    #[test]
    fn operator_norm_known_values() {
        let a = ndarray::array![[c(3.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-4.0, 0.0)]];
        assert!((operator_norm(&a) - 4.0).abs() < 1e-6);
        let id = cidentity(5);
        assert!((operator_norm(&id) - 1.0).abs() < 1e-9);
        // Rank-one |u><v| has norm |u||v|.
        let mut r1 = Array2::zeros((3, 3));
        for i in 0..3 {
            for j in 0..3 {
                r1[(i, j)] = c((i + 1) as f64, 0.0) * c((j + 1) as f64, 0.0).conj();
            }
        }
        let expect = 14.0; // |u|^2 with u = (1,2,3)
        assert!((operator_norm(&r1) - expect).abs() < 1e-6);
    }

    #[test]
    fn kron_and_dagger() {
        let x = ndarray::array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let z = ndarray::array![[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
        let xz = kron(&x, &z);
        assert_eq!(xz.dim(), (4, 4));
        assert_eq!(xz[(0, 2)], c(1.0, 0.0));
        assert_eq!(xz[(1, 3)], c(-1.0, 0.0));
        assert_eq!(xz[(2, 0)], c(1.0, 0.0));
        let h = ndarray::array![[c(1.0, 2.0), c(3.0, -1.0)]];
        let hd = dagger(&h);
        assert_eq!(hd.dim(), (2, 1));
        assert_eq!(hd[(0, 0)], c(1.0, -2.0));
        assert_eq!(hd[(1, 0)], c(3.0, 1.0));
    }
}
