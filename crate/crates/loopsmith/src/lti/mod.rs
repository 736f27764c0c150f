//! Descriptor LTI systems: `E x'(t) = A x(t) + B u(t)`, `y = C x (+ D u)`.
//!
//! The representation is D-free by default (strict properness is the house
//! convention); weights, Tustin outputs and closed-loop sensitivities are the
//! only places a feed-through block appears, via [`DescriptorSystem::with_feedthrough`]
//! or [`make_weight`]. Operations that require strict properness check it at
//! run time.

mod eigen;
mod norms;

pub use eigen::Modal;
pub use norms::{h2_norm, hinf_norm, hinf_norm_with_points};

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Real descriptor state-space model. Pencil `(E, A)` is regular by
/// construction (randomized determinant probe).
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorSystem {
    e: DMatrix<f64>,
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    d: DMatrix<f64>,
}

/// Finite generalized eigenvalues of the pencil plus diagnostics.
#[derive(Debug, Clone)]
pub struct PoleSet {
    /// Finite poles (rad/s), sorted by (re, im). Conjugate pairs are exact.
    pub values: Vec<C64>,
    /// Every finite pole has strictly negative real part.
    pub stable: bool,
    /// Number of infinite eigenvalues (singular-E directions).
    pub infinite: usize,
}

/// First-order rational weight `(b1 s + b0) / (a1 s + a0)`.
///
/// `a0 = 0` gives an integrator; `a1 = 0` is allowed only together with
/// `b1 = 0` (a static gain), since a polynomial `s`-term has no 1-state
/// realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalWeight {
    pub b1: f64,
    pub b0: f64,
    pub a1: f64,
    pub a0: f64,
}

impl RationalWeight {
    pub fn new(b1: f64, b0: f64, a1: f64, a0: f64) -> Self {
        Self { b1, b0, a1, a0 }
    }

    /// Constant weight `g`.
    pub fn constant(g: f64) -> Self {
        Self { b1: 0.0, b0: g, a1: 0.0, a0: 1.0 }
    }

    pub fn eval(&self, s: C64) -> C64 {
        (self.b1 * s + self.b0) / (self.a1 * s + self.a0)
    }
}

fn check_dims(e: &DMatrix<f64>, a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<usize> {
    let n = a.nrows();
    if a.ncols() != n || e.nrows() != n || e.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "E is {}x{}, A is {}x{}; both must be square of equal size",
            e.nrows(),
            e.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    if b.nrows() != n {
        return Err(Error::DimensionMismatch(format!("B has {} rows, expected {}", b.nrows(), n)));
    }
    if c.ncols() != n {
        return Err(Error::DimensionMismatch(format!("C has {} cols, expected {}", c.ncols(), n)));
    }
    Ok(n)
}

/// Regularity probe: det(A - lambda E) at 5 seeded-random lambda on a circle
/// scaled by max(|A|, |E|). Rank decay of the pivoted LU factor stands in for
/// the determinant magnitude (no overflow for large n).
fn pencil_is_regular(e: &DMatrix<f64>, a: &DMatrix<f64>) -> bool {
    let n = a.nrows();
    if n == 0 {
        return true;
    }
    let scale = a.norm().max(e.norm()).max(1e-300);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_01);
    for _ in 0..5 {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let lam = C64::from_polar(scale * 0.73, theta);
        let m = complex_combination(a, e, C64::new(1.0, 0.0), -lam);
        let lu = m.lu();
        let diag = lu.u().map_diagonal(|v| v.norm());
        let dmax = diag.max().max(1e-300);
        let dmin = diag.min();
        if dmin > 1e-12 * dmax {
            return true;
        }
    }
    false
}

/// a_coeff * A + e_coeff * E as a complex matrix.
fn complex_combination(a: &DMatrix<f64>, e: &DMatrix<f64>, a_coeff: C64, e_coeff: C64) -> DMatrix<C64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a_coeff * a[(i, j)] + e_coeff * e[(i, j)])
}

impl DescriptorSystem {
    /// Strictly proper system (D structurally zero).
    pub fn descriptor(
        e: DMatrix<f64>,
        a: DMatrix<f64>,
        b: DMatrix<f64>,
        c: DMatrix<f64>,
    ) -> Result<Self> {
        let d = DMatrix::zeros(c.nrows(), b.ncols());
        Self::with_feedthrough(e, a, b, c, d)
    }

    pub fn with_feedthrough(
        e: DMatrix<f64>,
        a: DMatrix<f64>,
        b: DMatrix<f64>,
        c: DMatrix<f64>,
        d: DMatrix<f64>,
    ) -> Result<Self> {
        let _n = check_dims(&e, &a, &b, &c)?;
        if d.nrows() != c.nrows() || d.ncols() != b.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "D is {}x{}, expected {}x{}",
                d.nrows(),
                d.ncols(),
                c.nrows(),
                b.ncols()
            )));
        }
        if !pencil_is_regular(&e, &a) {
            return Err(Error::SingularPencil);
        }
        Ok(Self { e, a, b, c, d })
    }

    /// Zero-state static gain.
    pub fn static_gain(d: DMatrix<f64>) -> Self {
        let (ny, nu) = (d.nrows(), d.ncols());
        Self {
            e: DMatrix::zeros(0, 0),
            a: DMatrix::zeros(0, 0),
            b: DMatrix::zeros(0, nu),
            c: DMatrix::zeros(ny, 0),
            d,
        }
    }

    pub fn static_siso(g: f64) -> Self {
        Self::static_gain(DMatrix::from_element(1, 1, g))
    }

    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn n_inputs(&self) -> usize {
        self.b.ncols()
    }

    pub fn n_outputs(&self) -> usize {
        self.c.nrows()
    }

    pub fn is_siso(&self) -> bool {
        self.n_inputs() == 1 && self.n_outputs() == 1
    }

    pub fn e(&self) -> &DMatrix<f64> {
        &self.e
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }

    pub fn d(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.d.iter().all(|&v| v == 0.0)
    }

    /// `H(s) = C (sE - A)^-1 B + D` by a linear solve (never an explicit
    /// inverse).
    pub fn eval(&self, s: C64) -> Result<DMatrix<C64>> {
        let n = self.order();
        if n == 0 {
            return Ok(self.d.map(|v| C64::new(v, 0.0)));
        }
        // m = sE - A
        let m = complex_combination(&self.a, &self.e, -C64::new(1.0, 0.0), s);
        let bc = self.b.map(|v| C64::new(v, 0.0));
        let lu = m.lu();
        // pivoted-LU diagonal decay flags a (numerical) pole; a plain
        // residual check cannot, since LU solves near-singular systems with
        // small relative residual
        let diag = lu.u().map_diagonal(|v| v.norm());
        if diag.min() <= 1e-12 * diag.max().max(1e-300) {
            return Err(Error::SingularAtPoint(s));
        }
        let x = lu.solve(&bc).ok_or(Error::SingularAtPoint(s))?;
        if !x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularAtPoint(s));
        }
        let mut h = self.c.map(|v| C64::new(v, 0.0)) * x;
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                h[(i, j)] += C64::new(self.d[(i, j)], 0.0);
            }
        }
        Ok(h)
    }

    /// Scalar transfer value; errors on non-SISO systems.
    pub fn eval_siso(&self, s: C64) -> Result<C64> {
        if !self.is_siso() {
            return Err(Error::DimensionMismatch("expected a SISO system".into()));
        }
        Ok(self.eval(s)?[(0, 0)])
    }

    /// Finite generalized eigenvalues of `(E, A)`; infinite eigenvalues are
    /// counted, not listed.
    pub fn poles(&self) -> Result<PoleSet> {
        let (mut values, infinite) = eigen::pencil_eigenvalues(&self.e, &self.a)?;
        values.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap());
        let stable = values.iter().all(|p| p.re < 0.0);
        Ok(PoleSet { values, stable, infinite })
    }

    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.poles()?.stable)
    }

    /// Equivalent realization with `E = I` (errors when E is singular).
    pub fn normalized_e(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let lu = self.e.clone().lu();
        let a = lu.solve(&self.a).ok_or(Error::SingularE)?;
        let b = lu.solve(&self.b).ok_or(Error::SingularE)?;
        Ok(Self {
            e: DMatrix::identity(n, n),
            a,
            b,
            c: self.c.clone(),
            d: self.d.clone(),
        })
    }

    pub fn has_identity_e(&self) -> bool {
        self.e == DMatrix::identity(self.order(), self.order())
    }

    /// State projection `(V^-1 E V, V^-1 A V, V^-1 B, C V)`; the transfer is
    /// unchanged for any invertible V.
    pub fn similarity(&self, v: &DMatrix<f64>) -> Result<Self> {
        let n = self.order();
        if v.nrows() != n || v.ncols() != n {
            return Err(Error::DimensionMismatch("V must be n x n".into()));
        }
        let lu = v.clone().lu();
        let ev = lu.solve(&(&self.e * v)).ok_or(Error::domain("V is singular"))?;
        let av = lu.solve(&(&self.a * v)).ok_or(Error::domain("V is singular"))?;
        let bv = lu.solve(&self.b).ok_or(Error::domain("V is singular"))?;
        Ok(Self { e: ev, a: av, b: bv, c: &self.c * v, d: self.d.clone() })
    }

    /// Modal data (eigenvalues, modal input rows, output columns) of the
    /// finite dynamics. Requires invertible E.
    pub fn modal(&self) -> Result<Modal> {
        eigen::modal_decomposition(self)
    }

    /// Output scaling: `alpha * H`.
    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            e: self.e.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: alpha * &self.c,
            d: alpha * &self.d,
        }
    }
}

/// Indices that cover each conjugate eigenvalue pair exactly once.
pub fn eigen_upper_half(lambda: &[C64]) -> Vec<usize> {
    eigen::upper_half_indices(lambda)
}

/// Real `E = I` realization of the selected modal components (pass one index
/// per conjugate pair; see [`eigen_upper_half`]).
pub fn modal_subsystem(
    modal: &Modal,
    keep: &[usize],
    n_inputs: usize,
    n_outputs: usize,
) -> Result<DescriptorSystem> {
    let (a, b, c) = eigen::modal_realification(modal, keep, n_inputs, n_outputs);
    let n = a.nrows();
    DescriptorSystem::descriptor(DMatrix::identity(n, n), a, b, c)
}

/// Orthonormal real basis spanning the eigenvectors of `m` selected by
/// `keep` (conjugate pairs contribute their real and imaginary parts).
pub fn eigenvector_basis(
    m: &DMatrix<f64>,
    lambda: &[C64],
    keep: &[usize],
) -> Result<DMatrix<f64>> {
    eigen::real_eigenvector_basis(m, lambda, keep)
}

/// The weakly damped second-order example plant
/// `k / (s^2/w0^2 + 2 d s / w0 + 1)` with `w0 = sqrt(w1^2 + d^2)`.
///
/// Note the dimensional oddity inherited from the source formula: the
/// unitless damping `d` is added to `w1^2` in (rad/s)^2; it is implemented
/// exactly as written.
pub fn second_order_plant(d: f64, w1: f64, k: f64) -> Result<DescriptorSystem> {
    if !(0.0 < d && d < 1.0) {
        return Err(Error::domain(format!("damping ratio d = {d} must lie in (0, 1)")));
    }
    if w1 <= 0.0 {
        return Err(Error::domain(format!("cut-off w1 = {w1} must be positive")));
    }
    if k == 0.0 {
        return Err(Error::domain("static gain k must be nonzero"));
    }
    let w0 = (w1 * w1 + d * d).sqrt();
    let cs = (1.0 - d * d).sqrt();
    let e = DMatrix::identity(2, 2);
    let a = DMatrix::from_row_slice(2, 2, &[-d * w0, -w0 * cs, w0 * cs, -d * w0]);
    let b = DMatrix::from_row_slice(2, 1, &[k / (w0 * cs), 0.0]);
    let c = DMatrix::from_row_slice(1, 2, &[0.0, w0 * w0]);
    DescriptorSystem::descriptor(e, a, b, c)
}

/// 1-state (or 0-state) realization of a first-order rational weight; the
/// one construction path that may introduce feed-through.
pub fn make_weight(w: &RationalWeight) -> Result<DescriptorSystem> {
    if w.a1 == 0.0 && w.a0 == 0.0 {
        return Err(Error::domain("weight denominator is identically zero"));
    }
    if w.a1 == 0.0 {
        if w.b1 != 0.0 {
            return Err(Error::domain(
                "improper weight: b1 != 0 with a1 = 0 has no 1-state realization",
            ));
        }
        return Ok(DescriptorSystem::static_siso(w.b0 / w.a0));
    }
    // (b1 s + b0)/(a1 s + a0) = d + r/(s - p), p = -a0/a1
    let p = -w.a0 / w.a1;
    let d = w.b1 / w.a1;
    let r = (w.b0 - w.b1 * w.a0 / w.a1) / w.a1;
    DescriptorSystem::with_feedthrough(
        DMatrix::identity(1, 1),
        DMatrix::from_element(1, 1, p),
        DMatrix::from_element(1, 1, 1.0),
        DMatrix::from_element(1, 1, r),
        DMatrix::from_element(1, 1, d),
    )
}

/// Block-composition modes for [`interconnect`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interconnect {
    /// `u -> sys1 -> sys2 -> y`; transfer `H2 * H1`.
    Series,
    /// Negative unity feedback around the open loop `L = sys1 * sys2`
    /// (transfer product), closed transfer `L (I + L)^-1`.
    FeedbackUnity,
    /// Block-diagonal: inputs and outputs stacked.
    Append,
    /// `H1 + H2` (shared input, summed output).
    Parallel,
}

pub fn interconnect(
    mode: Interconnect,
    sys1: &DescriptorSystem,
    sys2: &DescriptorSystem,
) -> Result<DescriptorSystem> {
    match mode {
        Interconnect::Series => series(sys1, sys2),
        Interconnect::Parallel => parallel(sys1, sys2),
        Interconnect::Append => append(sys1, sys2),
        Interconnect::FeedbackUnity => {
            // L = H1 * H2 as a transfer product means the signal passes sys2
            // first, then sys1.
            let l = series(sys2, sys1)?;
            feedback_unity_of_loop(&l)
        }
    }
}

/// Series composition `u -> first -> second -> y` (transfer `H_second * H_first`).
pub fn series(first: &DescriptorSystem, second: &DescriptorSystem) -> Result<DescriptorSystem> {
    if second.n_inputs() != first.n_outputs() {
        return Err(Error::DimensionMismatch(format!(
            "series: {} outputs feed {} inputs",
            first.n_outputs(),
            second.n_inputs()
        )));
    }
    let (n1, n2) = (first.order(), second.order());
    let n = n1 + n2;
    let mut e = DMatrix::zeros(n, n);
    e.view_mut((0, 0), (n1, n1)).copy_from(&first.e);
    e.view_mut((n1, n1), (n2, n2)).copy_from(&second.e);
    let mut a = DMatrix::zeros(n, n);
    a.view_mut((0, 0), (n1, n1)).copy_from(&first.a);
    a.view_mut((n1, n1), (n2, n2)).copy_from(&second.a);
    a.view_mut((n1, 0), (n2, n1)).copy_from(&(&second.b * &first.c));
    let mut b = DMatrix::zeros(n, first.n_inputs());
    b.view_mut((0, 0), (n1, first.n_inputs())).copy_from(&first.b);
    b.view_mut((n1, 0), (n2, first.n_inputs())).copy_from(&(&second.b * &first.d));
    let mut c = DMatrix::zeros(second.n_outputs(), n);
    c.view_mut((0, 0), (second.n_outputs(), n1)).copy_from(&(&second.d * &first.c));
    c.view_mut((0, n1), (second.n_outputs(), n2)).copy_from(&second.c);
    let d = &second.d * &first.d;
    DescriptorSystem::with_feedthrough(e, a, b, c, d)
}

pub fn parallel(sys1: &DescriptorSystem, sys2: &DescriptorSystem) -> Result<DescriptorSystem> {
    if sys1.n_inputs() != sys2.n_inputs() || sys1.n_outputs() != sys2.n_outputs() {
        return Err(Error::DimensionMismatch("parallel: input/output dims must match".into()));
    }
    let (n1, n2) = (sys1.order(), sys2.order());
    let n = n1 + n2;
    let mut e = DMatrix::zeros(n, n);
    e.view_mut((0, 0), (n1, n1)).copy_from(&sys1.e);
    e.view_mut((n1, n1), (n2, n2)).copy_from(&sys2.e);
    let mut a = DMatrix::zeros(n, n);
    a.view_mut((0, 0), (n1, n1)).copy_from(&sys1.a);
    a.view_mut((n1, n1), (n2, n2)).copy_from(&sys2.a);
    let mut b = DMatrix::zeros(n, sys1.n_inputs());
    b.view_mut((0, 0), (n1, sys1.n_inputs())).copy_from(&sys1.b);
    b.view_mut((n1, 0), (n2, sys2.n_inputs())).copy_from(&sys2.b);
    let mut c = DMatrix::zeros(sys1.n_outputs(), n);
    c.view_mut((0, 0), (sys1.n_outputs(), n1)).copy_from(&sys1.c);
    c.view_mut((0, n1), (sys2.n_outputs(), n2)).copy_from(&sys2.c);
    let d = &sys1.d + &sys2.d;
    DescriptorSystem::with_feedthrough(e, a, b, c, d)
}

pub fn append(sys1: &DescriptorSystem, sys2: &DescriptorSystem) -> Result<DescriptorSystem> {
    let (n1, n2) = (sys1.order(), sys2.order());
    let n = n1 + n2;
    let (nu1, nu2) = (sys1.n_inputs(), sys2.n_inputs());
    let (ny1, ny2) = (sys1.n_outputs(), sys2.n_outputs());
    let mut e = DMatrix::zeros(n, n);
    e.view_mut((0, 0), (n1, n1)).copy_from(&sys1.e);
    e.view_mut((n1, n1), (n2, n2)).copy_from(&sys2.e);
    let mut a = DMatrix::zeros(n, n);
    a.view_mut((0, 0), (n1, n1)).copy_from(&sys1.a);
    a.view_mut((n1, n1), (n2, n2)).copy_from(&sys2.a);
    let mut b = DMatrix::zeros(n, nu1 + nu2);
    b.view_mut((0, 0), (n1, nu1)).copy_from(&sys1.b);
    b.view_mut((n1, nu1), (n2, nu2)).copy_from(&sys2.b);
    let mut c = DMatrix::zeros(ny1 + ny2, n);
    c.view_mut((0, 0), (ny1, n1)).copy_from(&sys1.c);
    c.view_mut((ny1, n1), (ny2, n2)).copy_from(&sys2.c);
    let mut d = DMatrix::zeros(ny1 + ny2, nu1 + nu2);
    d.view_mut((0, 0), (ny1, nu1)).copy_from(&sys1.d);
    d.view_mut((ny1, nu1), (ny2, nu2)).copy_from(&sys2.d);
    DescriptorSystem::with_feedthrough(e, a, b, c, d)
}

/// Closes `y = L (r - y)` around a square open loop: transfer `L (I + L)^-1`.
fn feedback_unity_of_loop(l: &DescriptorSystem) -> Result<DescriptorSystem> {
    if l.n_inputs() != l.n_outputs() {
        return Err(Error::DimensionMismatch("feedback loop must be square".into()));
    }
    let ny = l.n_outputs();
    let delta = DMatrix::identity(ny, ny) + &l.d;
    let delta_lu = delta.clone().lu();
    if !delta_lu.is_invertible() {
        return Err(Error::IllPosedLoop);
    }
    // y = (I+D)^-1 (C x + D r); E x' = (A - B (I+D)^-1 C) x + B (I - (I+D)^-1 D) r
    let dinv_c = delta_lu.solve(&l.c).ok_or(Error::IllPosedLoop)?;
    let dinv_d = delta_lu.solve(&l.d).ok_or(Error::IllPosedLoop)?;
    let a = &l.a - &l.b * &dinv_c;
    let b = &l.b * (DMatrix::identity(ny, ny) - &dinv_d);
    DescriptorSystem::with_feedthrough(l.e.clone(), a, b, dinv_c, dinv_d)
}

/// Sensitivity `S = (I + L)^-1 = I - L(I+L)^-1` of a loop transfer.
pub fn sensitivity(l: &DescriptorSystem) -> Result<DescriptorSystem> {
    let t = feedback_unity_of_loop(l)?;
    let ny = t.n_outputs();
    DescriptorSystem::with_feedthrough(
        t.e.clone(),
        t.a.clone(),
        t.b.clone(),
        -&t.c,
        DMatrix::identity(ny, ny) - &t.d,
    )
}

/// Lower LFT `F_l(P, K) = P11 + P12 K (I - P22 K)^-1 P21`: closes the lower
/// (u, y) channel of a partitioned plant with controller K.
///
/// `partition = (n_w, n_u, n_z, n_y)`: P's inputs are `[w; u]`, outputs
/// `[z; y]`.
pub fn lft_lower(
    p: &DescriptorSystem,
    k: &DescriptorSystem,
    partition: (usize, usize, usize, usize),
) -> Result<DescriptorSystem> {
    let (n_w, n_u, n_z, n_y) = partition;
    if p.n_inputs() != n_w + n_u || p.n_outputs() != n_z + n_y {
        return Err(Error::DimensionMismatch(format!(
            "P is {}x{} (outputs x inputs) but partition wants {}x{}",
            p.n_outputs(),
            p.n_inputs(),
            n_z + n_y,
            n_w + n_u
        )));
    }
    if k.n_inputs() != n_y || k.n_outputs() != n_u {
        return Err(Error::DimensionMismatch("K dims must close the (u, y) channel".into()));
    }
    let np = p.order();
    let nk = k.order();
    let b1 = p.b.columns(0, n_w).into_owned();
    let b2 = p.b.columns(n_w, n_u).into_owned();
    let c1 = p.c.rows(0, n_z).into_owned();
    let c2 = p.c.rows(n_z, n_y).into_owned();
    let d11 = p.d.view((0, 0), (n_z, n_w)).into_owned();
    let d12 = p.d.view((0, n_w), (n_z, n_u)).into_owned();
    let d21 = p.d.view((n_z, 0), (n_y, n_w)).into_owned();
    let d22 = p.d.view((n_z, n_w), (n_y, n_u)).into_owned();

    // u = Ck xk + Dk (C2 x + D21 w + D22 u)  =>  (I - Dk D22) u = ...
    let delta = DMatrix::identity(n_u, n_u) - &k.d * &d22;
    let delta_lu = delta.clone().lu();
    if !delta_lu.is_invertible() {
        return Err(Error::IllPosedLoop);
    }
    let sol = |m: &DMatrix<f64>| delta_lu.solve(m).ok_or(Error::IllPosedLoop);
    let u_xk = sol(&k.c)?;
    let u_x = sol(&(&k.d * &c2))?;
    let u_w = sol(&(&k.d * &d21))?;

    let n = np + nk;
    let mut e = DMatrix::zeros(n, n);
    e.view_mut((0, 0), (np, np)).copy_from(&p.e);
    e.view_mut((np, np), (nk, nk)).copy_from(&k.e);
    let mut a = DMatrix::zeros(n, n);
    a.view_mut((0, 0), (np, np)).copy_from(&(&p.a + &b2 * &u_x));
    a.view_mut((0, np), (np, nk)).copy_from(&(&b2 * &u_xk));
    // xk' = Ak xk + Bk y, y = C2 x + D21 w + D22 u
    let y_x = &c2 + &d22 * &u_x;
    let y_xk = &d22 * &u_xk;
    let y_w = &d21 + &d22 * &u_w;
    a.view_mut((np, 0), (nk, np)).copy_from(&(&k.b * &y_x));
    a.view_mut((np, np), (nk, nk)).copy_from(&(&k.a + &k.b * &y_xk));
    let mut b = DMatrix::zeros(n, n_w);
    b.view_mut((0, 0), (np, n_w)).copy_from(&(&b1 + &b2 * &u_w));
    b.view_mut((np, 0), (nk, n_w)).copy_from(&(&k.b * &y_w));
    let mut c = DMatrix::zeros(n_z, n);
    c.view_mut((0, 0), (n_z, np)).copy_from(&(&c1 + &d12 * &u_x));
    c.view_mut((0, np), (n_z, nk)).copy_from(&(&d12 * &u_xk));
    let d = &d11 + &d12 * &u_w;
    DescriptorSystem::with_feedthrough(e, a, b, c, d)
}

// ---------------------------------------------------------------------------
// JSON import/export: {E, A, B, C[, D], row-major arrays, dims}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SystemJson {
    n: usize,
    n_u: usize,
    n_y: usize,
    e: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<Vec<f64>>,
}

fn row_major(m: &DMatrix<f64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push(m[(i, j)]);
        }
    }
    out
}

impl DescriptorSystem {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = SystemJson {
            n: self.order(),
            n_u: self.n_inputs(),
            n_y: self.n_outputs(),
            e: row_major(&self.e),
            a: row_major(&self.a),
            b: row_major(&self.b),
            c: row_major(&self.c),
            d: if self.is_strictly_proper() { None } else { Some(row_major(&self.d)) },
        };
        serde_json::to_value(doc).expect("serialization of plain arrays cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: SystemJson = serde_json::from_value(value.clone())?;
        let (n, nu, ny) = (doc.n, doc.n_u, doc.n_y);
        let expect = |name: &str, v: &[f64], len: usize| -> Result<()> {
            if v.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has {} entries, expected {len}",
                    v.len()
                )));
            }
            Ok(())
        };
        expect("E", &doc.e, n * n)?;
        expect("A", &doc.a, n * n)?;
        expect("B", &doc.b, n * nu)?;
        expect("C", &doc.c, ny * n)?;
        let e = DMatrix::from_row_slice(n, n, &doc.e);
        let a = DMatrix::from_row_slice(n, n, &doc.a);
        let b = DMatrix::from_row_slice(n, nu, &doc.b);
        let c = DMatrix::from_row_slice(ny, n, &doc.c);
        match doc.d {
            Some(dv) => {
                expect("D", &dv, ny * nu)?;
                Self::with_feedthrough(e, a, b, c, DMatrix::from_row_slice(ny, nu, &dv))
            }
            None => Self::descriptor(e, a, b, c),
        }
    }
}
