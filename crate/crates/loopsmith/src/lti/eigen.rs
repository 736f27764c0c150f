//! Eigenvalue machinery for descriptor pencils.
//!
//! Generalized eigenvalues of a regular pencil `(E, A)` are obtained by the
//! shift-invert reduction `M = (A - l0 E)^-1 E`, whose eigenvalues `mu` map to
//! pencil eigenvalues `lambda = l0 + 1/mu`; `mu ~ 0` marks the infinite
//! (singular-E) directions. Eigenvectors come from inverse iteration seeded
//! with the Schur eigenvalues, which is accurate for the simple, well
//! separated spectra this crate works with (clustered spectra are detected
//! and reported so callers can fall back).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::{C64, DescriptorSystem};
use crate::error::{Error, Result};

/// Finite pencil eigenvalues plus the count of infinite ones.
pub(crate) fn pencil_eigenvalues(
    e: &DMatrix<f64>,
    a: &DMatrix<f64>,
) -> Result<(Vec<C64>, usize)> {
    let n = a.nrows();
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let (m, l0) = shift_invert(e, a)?;
    let mus = m.complex_eigenvalues();
    let mu_max = mus.iter().map(|m| m.norm()).fold(0.0f64, f64::max).max(1e-300);
    let mut finite = Vec::new();
    let mut infinite = 0usize;
    for mu in mus.iter() {
        if mu.norm() <= 1e-10 * mu_max.max(1.0) {
            infinite += 1;
        } else {
            finite.push(C64::new(l0, 0.0) + 1.0 / mu);
        }
    }
    Ok((finite, infinite))
}

/// Picks a real shift where `A - l0 E` is comfortably invertible and returns
/// `((A - l0 E)^-1 E, l0)`.
fn shift_invert(e: &DMatrix<f64>, a: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    let scale = a.norm().max(e.norm()).max(1.0);
    // irrational-flavoured multipliers dodge eigenvalues of typical systems
    let candidates = [
        0.739_085 * scale,
        -1.324_717 * scale,
        2.718_281 * scale,
        -0.577_215 * scale * 3.1,
        5.097_32 * scale,
        0.0,
    ];
    for &l0 in &candidates {
        let m = a - l0 * e;
        let lu = m.lu();
        if !lu.is_invertible() {
            continue;
        }
        let diag = lu.u().map_diagonal(|v| v.abs());
        if diag.min() <= 1e-13 * diag.max().max(1e-300) {
            continue;
        }
        if let Some(x) = lu.solve(e) {
            return Ok((x, l0));
        }
    }
    Err(Error::SingularPencil)
}

/// Modal decomposition of the finite dynamics of a system with invertible E.
#[derive(Debug, Clone)]
pub struct Modal {
    /// Eigenvalues of `E^-1 A`, conjugate-paired, sorted by (re, im).
    pub lambda: Vec<C64>,
    /// Modal input rows: row i of `V^-1 E^-1 B`.
    pub input_rows: DMatrix<C64>,
    /// Modal output columns: column i of `C V`.
    pub output_cols: DMatrix<C64>,
    /// Residue matrix of pole i is `output_cols[:, i] * input_rows[i, :]`.
    pub spectral_radius: f64,
    /// Smallest pairwise eigenvalue gap (clustering indicator).
    pub min_gap: f64,
}

impl Modal {
    pub fn residue(&self, i: usize) -> DMatrix<C64> {
        let c = self.output_cols.column(i);
        let b = self.input_rows.row(i);
        let mut r = DMatrix::zeros(c.len(), b.len());
        for p in 0..c.len() {
            for q in 0..b.len() {
                r[(p, q)] = c[p] * b[q];
            }
        }
        r
    }

    pub fn order(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_clustered(&self) -> bool {
        self.min_gap < 1e-8 * self.spectral_radius.max(1e-300)
    }
}

pub(crate) fn modal_decomposition(sys: &DescriptorSystem) -> Result<Modal> {
    let n = sys.order();
    if n == 0 {
        return Ok(Modal {
            lambda: Vec::new(),
            input_rows: DMatrix::zeros(0, sys.n_inputs()),
            output_cols: DMatrix::zeros(sys.n_outputs(), 0),
            spectral_radius: 0.0,
            min_gap: f64::INFINITY,
        });
    }
    let e_lu = sys.e().clone().lu();
    if !e_lu.is_invertible() {
        return Err(Error::SingularE);
    }
    let m = e_lu.solve(sys.a()).ok_or(Error::SingularE)?;
    let eb = e_lu.solve(sys.b()).ok_or(Error::SingularE)?;

    let mut lambda: Vec<C64> = m.complex_eigenvalues().iter().copied().collect();
    lambda.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap());

    let v = eigenvectors(&m, &lambda)?;
    let v_lu = v.clone().lu();
    let ebc = eb.map(|x| C64::new(x, 0.0));
    let input_rows = v_lu.solve(&ebc).ok_or_else(|| {
        Error::domain("modal matrix is numerically singular (defective spectrum)")
    })?;
    let output_cols = sys.c().map(|x| C64::new(x, 0.0)) * &v;

    let spectral_radius = lambda.iter().map(|l| l.norm()).fold(0.0f64, f64::max);
    let mut min_gap = f64::INFINITY;
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            min_gap = min_gap.min((lambda[i] - lambda[j]).norm());
        }
    }
    Ok(Modal { lambda, input_rows, output_cols, spectral_radius, min_gap })
}

/// Right eigenvectors by shifted inverse iteration, one conjugate pair at a
/// time. The returned matrix columns match the order of `lambda`.
fn eigenvectors(m: &DMatrix<f64>, lambda: &[C64]) -> Result<DMatrix<C64>> {
    let n = m.nrows();
    let mc = m.map(|x| C64::new(x, 0.0));
    let mut v = DMatrix::<C64>::zeros(n, n);
    let norm_m = m.norm().max(1e-300);
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let lam = lambda[i];
        let vec = inverse_iteration(&mc, lam, norm_m)?;
        v.set_column(i, &vec);
        done[i] = true;
        if lam.im != 0.0 {
            // conjugate partner gets the conjugate vector
            if let Some(j) = (0..n).find(|&j| !done[j] && (lambda[j] - lam.conj()).norm() <= 1e-9 * norm_m)
            {
                v.set_column(j, &vec.map(|x| x.conj()));
                done[j] = true;
            }
        }
    }
    Ok(v)
}

fn inverse_iteration(mc: &DMatrix<C64>, lam: C64, norm_m: f64) -> Result<DVector<C64>> {
    let n = mc.nrows();
    // small regularizing offset keeps the LU away from exact singularity
    for attempt in 0..3 {
        let eps = 1e-10 * norm_m * 10f64.powi(attempt);
        let shift = lam + C64::new(eps, eps);
        let mut shifted = mc.clone();
        for i in 0..n {
            shifted[(i, i)] -= shift;
        }
        let lu = shifted.lu();
        // deterministic start vector, varied per attempt
        let mut x = DVector::<C64>::from_fn(n, |i, _| {
            C64::new(((i + 1 + attempt as usize) as f64 * 0.754_877).sin(), ((i * 3 + 1) as f64 * 0.569_84).cos())
        });
        x /= C64::new(x.norm(), 0.0);
        let mut ok = false;
        for _ in 0..4 {
            match lu.solve(&x) {
                Some(y) => {
                    let nrm = y.norm();
                    if !nrm.is_finite() || nrm == 0.0 {
                        break;
                    }
                    x = y / C64::new(nrm, 0.0);
                    ok = true;
                }
                None => break,
            }
        }
        if ok {
            let resid = (mc * &x - x.map(|v| v * lam)).norm();
            if resid <= 1e-6 * norm_m {
                return Ok(x);
            }
        }
    }
    Err(Error::domain(format!(
        "inverse iteration failed to converge for eigenvalue {lam} (clustered or defective spectrum)"
    )))
}

/// Real block realization of a selected set of modal components.
///
/// Real eigenvalues become 1x1 blocks; conjugate pairs (pass the `im > 0`
/// member) become 2x2 rotation blocks `[[a, -b], [b, a]]` with inputs
/// `[re w; im w]` and outputs `[2 re c, -2 im c]`.
pub(crate) fn modal_realification(
    modal: &Modal,
    keep: &[usize],
    n_inputs: usize,
    n_outputs: usize,
) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let mut size = 0usize;
    for &i in keep {
        size += if modal.lambda[i].im != 0.0 { 2 } else { 1 };
    }
    let mut a = DMatrix::zeros(size, size);
    let mut b = DMatrix::zeros(size, n_inputs);
    let mut c = DMatrix::zeros(n_outputs, size);
    let mut pos = 0usize;
    for &i in keep {
        let lam = modal.lambda[i];
        let w = modal.input_rows.row(i);
        let cv = modal.output_cols.column(i);
        if lam.im == 0.0 {
            a[(pos, pos)] = lam.re;
            for q in 0..n_inputs {
                b[(pos, q)] = w[q].re;
            }
            for p in 0..n_outputs {
                c[(p, pos)] = cv[p].re;
            }
            pos += 1;
        } else {
            let (re, im) = (lam.re, lam.im.abs());
            a[(pos, pos)] = re;
            a[(pos, pos + 1)] = -im;
            a[(pos + 1, pos)] = im;
            a[(pos + 1, pos + 1)] = re;
            // use the Im > 0 member of the pair for a fixed convention
            let (wrow, ccol): (Vec<C64>, Vec<C64>) = if lam.im > 0.0 {
                (w.iter().copied().collect(), cv.iter().copied().collect())
            } else {
                (w.iter().map(|x| x.conj()).collect(), cv.iter().map(|x| x.conj()).collect())
            };
            for q in 0..n_inputs {
                b[(pos, q)] = wrow[q].re;
                b[(pos + 1, q)] = wrow[q].im;
            }
            for p in 0..n_outputs {
                c[(p, pos)] = 2.0 * ccol[p].re;
                c[(p, pos + 1)] = -2.0 * ccol[p].im;
            }
            pos += 2;
        }
    }
    (a, b, c)
}

/// Orthonormal real basis for the span of the selected eigenvectors. `keep`
/// may list both members of a conjugate pair; each pair contributes its
/// real/imaginary parts once.
pub(crate) fn real_eigenvector_basis(
    m: &DMatrix<f64>,
    lambda: &[C64],
    keep: &[usize],
) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let mc = m.map(|x| C64::new(x, 0.0));
    let norm_m = m.norm().max(1e-300);
    let mut cols: Vec<DVector<f64>> = Vec::new();
    let mut pair_done: Vec<C64> = Vec::new();
    for &i in keep {
        let lam = lambda[i];
        if lam.im < 0.0 && pair_done.iter().any(|p| (p.conj() - lam).norm() <= 1e-9 * norm_m) {
            continue;
        }
        let lam_up = if lam.im < 0.0 { lam.conj() } else { lam };
        let v = inverse_iteration(&mc, lam_up, norm_m)?;
        cols.push(v.map(|z| z.re));
        if lam_up.im != 0.0 {
            cols.push(v.map(|z| z.im));
            pair_done.push(lam_up);
        }
    }
    if cols.is_empty() {
        return Err(Error::domain("no eigenvectors selected"));
    }
    let mut basis = DMatrix::<f64>::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        basis.set_column(j, c);
    }
    let qr = basis.qr();
    Ok(qr.q())
}

/// Indices covering each conjugate pair exactly once (im >= 0 members).
pub(crate) fn upper_half_indices(lambda: &[C64]) -> Vec<usize> {
    let mut keep = Vec::new();
    let mut used = vec![false; lambda.len()];
    for i in 0..lambda.len() {
        if used[i] {
            continue;
        }
        if lambda[i].im == 0.0 {
            keep.push(i);
            used[i] = true;
        } else if lambda[i].im > 0.0 {
            keep.push(i);
            used[i] = true;
            let mut best = None;
            let mut best_d = f64::INFINITY;
            for (j, u) in used.iter().enumerate() {
                if !u && lambda[j].im < 0.0 {
                    let d = (lambda[j] - lambda[i].conj()).norm();
                    if d < best_d {
                        best_d = d;
                        best = Some(j);
                    }
                }
            }
            if let Some(j) = best {
                used[j] = true;
            }
        }
    }
    keep
}
