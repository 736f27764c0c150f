//! System norms: H-infinity (peak gain along the imaginary axis) and H2
//! (impulse-response energy).

use nalgebra::DMatrix;

use super::{C64, DescriptorSystem};
use crate::error::{Error, Result};

/// Largest singular value of the transfer at s = i w; |H| for SISO.
fn gain_at(sys: &DescriptorSystem, w: f64) -> f64 {
    match sys.eval(C64::new(0.0, w)) {
        Ok(h) => sigma_max(&h),
        Err(_) => f64::INFINITY,
    }
}

fn sigma_max(h: &DMatrix<C64>) -> f64 {
    if h.nrows() == 1 && h.ncols() == 1 {
        return h[(0, 0)].norm();
    }
    h.clone().singular_values().max()
}

/// Log-spaced scan grid bracket from the finite pole magnitudes.
fn scan_range(sys: &DescriptorSystem) -> Result<(f64, f64)> {
    let ps = sys.poles()?;
    let mags: Vec<f64> = ps.values.iter().map(|p| p.norm()).filter(|m| *m > 0.0).collect();
    if mags.is_empty() {
        return Ok((1e-2, 1e2));
    }
    let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min) / 100.0;
    let hi = mags.iter().cloned().fold(0.0f64, f64::max) * 100.0;
    Ok((lo.max(1e-12), hi.max(lo * 1e3)))
}

/// H-infinity norm of a stable system: grid scan (`points` samples over the
/// pole-determined span) + golden-section refinement, then a Hamiltonian
/// imaginary-axis certificate whenever E is invertible.
///
/// Returns `(gamma, peak frequency rad/s)`; the peak frequency is 0 for a
/// DC-dominated response and infinite when the feed-through dominates.
pub fn hinf_norm_with_points(sys: &DescriptorSystem, points: usize) -> Result<(f64, f64)> {
    if !sys.is_stable()? {
        return Err(Error::UnstableSystem);
    }
    if sys.order() == 0 {
        return Ok((sigma_max(&sys.d().map(|v| C64::new(v, 0.0))), 0.0));
    }
    let (w_lo, w_hi) = scan_range(sys)?;
    let n = points.max(16);
    let lg_lo = w_lo.ln();
    let lg_hi = w_hi.ln();
    let mut best = (gain_at(sys, 0.0), 0.0f64, usize::MAX);
    for i in 0..n {
        let w = (lg_lo + (lg_hi - lg_lo) * i as f64 / (n - 1) as f64).exp();
        let g = gain_at(sys, w);
        if g > best.0 {
            best = (g, w, i);
        }
    }
    // feed-through floor at w -> infinity
    let d_gain = sigma_max(&sys.d().map(|v| C64::new(v, 0.0)));
    if d_gain > best.0 {
        best = (d_gain, f64::INFINITY, usize::MAX);
    }
    let (mut gamma, mut peak_w) = (best.0, best.1);
    if best.2 != usize::MAX {
        let i = best.2;
        let bracket_lo = if i == 0 { lg_lo } else { lg_lo + (lg_hi - lg_lo) * (i - 1) as f64 / (n - 1) as f64 };
        let bracket_hi = if i + 1 >= n { lg_hi } else { lg_lo + (lg_hi - lg_lo) * (i + 1) as f64 / (n - 1) as f64 };
        let (g, w) = golden_max(|lw| gain_at(sys, lw.exp()), bracket_lo, bracket_hi);
        if g > gamma {
            gamma = g;
            peak_w = w.exp();
        }
    }
    // certificate for invertible E (always true for E = I)
    if let Ok(std_form) = sys.normalized_e() {
        if let Some((g, w)) = hamiltonian_correct(&std_form, gamma) {
            if g > gamma {
                gamma = g;
                peak_w = w;
            }
        }
    }
    Ok((gamma, peak_w))
}

pub fn hinf_norm(sys: &DescriptorSystem) -> Result<(f64, f64)> {
    hinf_norm_with_points(sys, 2000)
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - PHI * (b - a);
    let mut d = a + PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..90 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    if fc > fd { (fc, c) } else { (fd, d) }
}

/// Boyd–Balakrishnan-style correction: while the Hamiltonian at
/// `gamma (1 + tol)` still has imaginary eigenvalues, the true norm exceeds
/// gamma; bump it from the crossing-interval midpoints.
fn hamiltonian_correct(std_sys: &DescriptorSystem, mut gamma: f64) -> Option<(f64, f64)> {
    const TOL: f64 = 1e-6;
    let mut best: Option<(f64, f64)> = None;
    for _ in 0..40 {
        let test = gamma * (1.0 + TOL) + 1e-300;
        let crossings = imaginary_crossings(std_sys, test)?;
        if crossings.is_empty() {
            return best;
        }
        let mut improved = false;
        let mut candidates = Vec::with_capacity(crossings.len() + 1);
        for pair in crossings.windows(2) {
            candidates.push(0.5 * (pair[0] + pair[1]));
        }
        candidates.extend_from_slice(&crossings);
        for w in candidates {
            let g = gain_at(std_sys, w);
            if g > gamma {
                gamma = g;
                best = Some((g, w));
                improved = true;
            }
        }
        if !improved {
            return best;
        }
    }
    best
}

/// Nonnegative frequencies where the Hamiltonian of `gamma` touches the
/// imaginary axis. None if gamma does not exceed the feed-through gain.
fn imaginary_crossings(sys: &DescriptorSystem, gamma: f64) -> Option<Vec<f64>> {
    let n = sys.order();
    let a = sys.a();
    let b = sys.b();
    let c = sys.c();
    let d = sys.d();
    let (nu, ny) = (sys.n_inputs(), sys.n_outputs());
    let r = DMatrix::identity(nu, nu) * (gamma * gamma) - d.transpose() * d;
    let r_lu = r.lu();
    if !r_lu.is_invertible() {
        return None;
    }
    let rinv_bt = r_lu.solve(&b.transpose())?;
    let rinv_dt_c = r_lu.solve(&(d.transpose() * c))?;
    let a_hat = a + b * &rinv_dt_c;
    let s_mat = DMatrix::identity(ny, ny) + d * r_lu.solve(&d.transpose())?;
    let mut h = DMatrix::zeros(2 * n, 2 * n);
    h.view_mut((0, 0), (n, n)).copy_from(&a_hat);
    h.view_mut((0, n), (n, n)).copy_from(&(b * &rinv_bt));
    h.view_mut((n, 0), (n, n)).copy_from(&(-(c.transpose() * &s_mat * c)));
    h.view_mut((n, n), (n, n)).copy_from(&(-a_hat.transpose()));
    let scale = h.norm().max(1.0);
    let eigs = h.complex_eigenvalues();
    let mut ws: Vec<f64> = eigs
        .iter()
        .filter(|l| l.re.abs() <= 1e-7 * scale && l.im > 0.0)
        .map(|l| l.im)
        .collect();
    ws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(ws)
}

/// H2 norm of a stable, strictly proper system with invertible E.
///
/// Primary route: pole–residue formula over the (assumed simple) spectrum,
/// `||H||_2^2 = sum_i tr(H(-l_i)^T R_i)`. When eigenvalue clustering is
/// detected (gap < 1e-8 * spectral radius) it falls back to adaptive
/// trapezoidal quadrature of `||H(iw)||_F^2 / pi`.
pub fn h2_norm(sys: &DescriptorSystem) -> Result<f64> {
    if !sys.is_strictly_proper() {
        return Err(Error::NotStrictlyProper);
    }
    if !sys.is_stable()? {
        return Err(Error::UnstableSystem);
    }
    if sys.order() == 0 {
        return Ok(0.0);
    }
    match sys.modal() {
        Ok(modal) if !modal.is_clustered() => {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..modal.order() {
                let h = sys.eval(-modal.lambda[i])?;
                let r = modal.residue(i);
                for p in 0..h.nrows() {
                    for q in 0..h.ncols() {
                        acc += h[(p, q)] * r[(p, q)];
                    }
                }
            }
            Ok(acc.re.max(0.0).sqrt())
        }
        _ => h2_quadrature(sys),
    }
}

/// Adaptive trapezoidal quadrature of `||H(iw)||_F^2 / pi` on a log grid with
/// head/tail closure, refined until the relative change drops below 1e-6.
fn h2_quadrature(sys: &DescriptorSystem) -> Result<f64> {
    let (w_lo, w_hi) = scan_range(sys)?;
    let w_lo = w_lo * 1e-2;
    let w_hi = w_hi * 1e2;
    let fro2 = |w: f64| -> Result<f64> {
        let h = sys.eval(C64::new(0.0, w))?;
        Ok(h.iter().map(|v| v.norm_sqr()).sum())
    };
    let mut n = 2048usize;
    let mut prev = f64::INFINITY;
    for _ in 0..6 {
        let lg_lo = w_lo.ln();
        let lg_hi = w_hi.ln();
        let mut integral = 0.0;
        let mut w_prev = w_lo;
        let mut f_prev = fro2(w_lo)?;
        let head = f_prev * w_lo; // integrand is ~flat below the lowest pole
        for i in 1..n {
            let w = (lg_lo + (lg_hi - lg_lo) * i as f64 / (n - 1) as f64).exp();
            let f = fro2(w)?;
            integral += 0.5 * (f + f_prev) * (w - w_prev);
            w_prev = w;
            f_prev = f;
        }
        let tail = f_prev * w_hi; // strictly proper decay ~ c / w^2
        let total = (integral + head + tail) / std::f64::consts::PI;
        if (total - prev).abs() <= 1e-6 * total.abs().max(1e-300) {
            return Ok(total.max(0.0).sqrt());
        }
        prev = total;
        n *= 2;
    }
    Ok(prev.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::{make_weight, second_order_plant, DescriptorSystem, RationalWeight};

    fn first_order() -> DescriptorSystem {
        // 1/(s+1)
        make_weight(&RationalWeight::new(0.0, 1.0, 1.0, 1.0)).unwrap()
    }

    #[test]
    fn hinf_of_static_gain() {
        let s = DescriptorSystem::static_siso(-3.5);
        let (g, _) = hinf_norm(&s).unwrap();
        assert!((g - 3.5).abs() < 1e-12);
    }

    #[test]
    fn hinf_of_first_order_lag() {
        let (g, w) = hinf_norm(&first_order()).unwrap();
        assert!((g - 1.0).abs() < 1e-9, "gamma = {g}");
        assert!(w < 1e-2);
    }

    #[test]
    fn hinf_of_resonant_plant_matches_closed_form() {
        let d = 0.2;
        let g = second_order_plant(d, 10.0, 1.0).unwrap();
        let want = 1.0 / (2.0 * d * (1.0 - d * d).sqrt());
        let (gamma, peak) = hinf_norm(&g).unwrap();
        assert!((gamma - want).abs() / want < 1e-6, "gamma {gamma} want {want}");
        let w0 = (100.0f64 + d * d).sqrt();
        let want_w = w0 * (1.0 - 2.0 * d * d).sqrt();
        assert!((peak - want_w).abs() / want_w < 1e-3, "peak {peak} want {want_w}");
    }

    #[test]
    fn hinf_rejects_unstable() {
        let sys = DescriptorSystem::descriptor(
            DMatrix::identity(1, 1),
            DMatrix::from_element(1, 1, 0.5),
            DMatrix::from_element(1, 1, 1.0),
            DMatrix::from_element(1, 1, 1.0),
        )
        .unwrap();
        assert!(matches!(hinf_norm(&sys), Err(Error::UnstableSystem)));
    }

    #[test]
    fn h2_of_first_order_lag() {
        let g = h2_norm(&first_order()).unwrap();
        assert!((g - 1.0 / 2.0f64.sqrt()).abs() < 1e-9, "got {g}");
    }

    #[test]
    fn h2_scales_linearly() {
        let sys = second_order_plant(0.2, 10.0, 1.0).unwrap();
        let base = h2_norm(&sys).unwrap();
        let scaled = h2_norm(&sys.scaled(-2.5)).unwrap();
        assert!((scaled - 2.5 * base).abs() < 1e-9 * base);
    }

    #[test]
    fn h2_rejects_feedthrough() {
        let s = DescriptorSystem::static_siso(2.0);
        assert!(matches!(h2_norm(&s), Err(Error::NotStrictlyProper)));
        let w = make_weight(&RationalWeight::new(1.0, 1.0, 1e-3, 1.0)).unwrap();
        assert!(matches!(h2_norm(&w), Err(Error::NotStrictlyProper)));
    }

    #[test]
    fn h2_quadrature_agrees_with_residue_route() {
        let sys = second_order_plant(0.35, 4.0, 1.7).unwrap();
        let direct = h2_norm(&sys).unwrap();
        let quad = h2_quadrature(&sys).unwrap();
        assert!((direct - quad).abs() / direct < 1e-5, "{direct} vs {quad}");
    }
}
