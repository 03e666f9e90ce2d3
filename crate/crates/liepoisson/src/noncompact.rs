//! The Poisson tensor on `G0/K`, the operator `T(g0) = pr_g0 o Ad(L)` and its
//! adjoint, leaf tangency, the `A0` Casimir and the horizontal section.

use crate::error::{Error, Result};
use crate::factorization::{iwasawa, IwasawaFactors};
use crate::hamiltonian::TangentVector;
use crate::lie_core::{form_re, hilbert_transform, lower, upper, SpaceInstance, Space};
use crate::linalg::{self, c, dagger, frob, Mat, RMat};

/// Relative cutoff for pseudo-inverses of anchor maps.
pub const PINV_REL: f64 = 1e-10;

fn inv(g: &Mat) -> Result<Mat> {
    linalg::inverse(g).ok_or_else(|| Error::Singular("base point".into()))
}

/// `Omega(g0) phi = {Ad(g0^{-1}) H Ad(g0) phi}_p`.
pub fn omega_op(inst: &SpaceInstance, g0: &Mat, phi: &Mat) -> Result<Mat> {
    let g0_inv = inv(g0)?;
    let h = hilbert_transform(&(g0 * phi * &g0_inv));
    Ok(inst.orth(Space::P, &(&g0_inv * h * g0)))
}

pub fn pi_noncompact(inst: &SpaceInstance, phi: &TangentVector, psi: &TangentVector) -> Result<f64> {
    if frob(&(&phi.base - &psi.base)) > 1e-12 * (1.0 + frob(&phi.base)) {
        return Err(Error::Shape("covectors have different base points".into()));
    }
    Ok(form_re(&omega_op(inst, &phi.base, &phi.vec)?, &psi.vec))
}

/// Matrix of `Omega(g0)` in the orthonormal frame of `p`.
pub fn omega_op_matrix(inst: &SpaceInstance, g0: &Mat) -> Result<RMat> {
    let frame = inst.frame(Space::P);
    let g0_inv = inv(g0)?;
    Ok(linalg::operator_matrix(&frame, &frame, |phi| {
        let h = hilbert_transform(&(g0 * phi * &g0_inv));
        inst.orth(Space::P, &(&g0_inv * h * g0))
    }))
}

/// Inverse of the tensor on the leaf: `<x, Omega^+ y>` (the trace form is
/// Euclidean on `p`).
pub fn leaf_inverse_form(inst: &SpaceInstance, g0: &Mat, x: &Mat, y: &Mat) -> Result<f64> {
    let frame = inst.frame(Space::P);
    let m = omega_op_matrix(inst, g0)?;
    let pinv = linalg::pinv(&m, PINV_REL);
    let xc = linalg::coords(&frame, x);
    let yc = linalg::coords(&frame, y);
    Ok(xc.dot(&(pinv * yc)))
}

/// `L = a0^{-1} l a0 a1`.
pub fn l_matrix(f: &IwasawaFactors) -> Mat {
    let a0_inv = linalg::inverse(&f.a0).expect("positive diagonal");
    a0_inv * &f.l * &f.a0 * &f.a1
}

#[derive(Clone, Debug)]
pub struct TOperator {
    pub g0: Mat,
    pub l: Mat,
    pub l_inv: Mat,
}

impl TOperator {
    pub fn new(inst: &SpaceInstance, g0: &Mat) -> Result<Self> {
        let f = iwasawa(inst, g0)?;
        let l = l_matrix(&f);
        let l_inv = inv(&l)?;
        Ok(TOperator { g0: g0.clone(), l, l_inv })
    }

    fn ad_l(&self, x: &Mat) -> Mat {
        &self.l * x * &self.l_inv
    }

    fn ad_l_inv(&self, x: &Mat) -> Mat {
        &self.l_inv * x * &self.l
    }

    /// Entrywise formula.
    pub fn apply(&self, inst: &SpaceInstance, x: &Mat) -> Mat {
        let xl = self.ad_l(&upper(x));
        let xl_plus = upper(&xl);
        inst.sigma_alg(&xl_plus) + inst.orth(Space::T0, x) + inst.orth(Space::H0, &xl) + xl_plus
    }

    /// `pr_g0 o Ad(L)`.
    pub fn apply_composed(&self, inst: &SpaceInstance, x: &Mat) -> Mat {
        inst.pr_g0(&self.ad_l(x))
    }

    pub fn adjoint(&self, inst: &SpaceInstance, y: &Mat) -> Mat {
        let y_h0 = crate::lie_core::diagonal_part(y);
        let q = lower(&self.ad_l_inv(&(y_h0 + lower(y) * c(2.0, 0.0))));
        (&q + inst.orth(Space::T0, y) * c(2.0, 0.0) - dagger(&q)) * c(0.5, 0.0)
    }

    /// Image of `y0` in `a0` under the cokernel parametrization.
    pub fn cokernel_element(&self, inst: &SpaceInstance, y0: &Mat) -> Mat {
        let d = self.ad_l(y0) - y0;
        &d + y0 * c(2.0, 0.0) + inst.sigma_alg(&d)
    }

    pub fn matrix(&self, inst: &SpaceInstance) -> RMat {
        let u = inst.frame(Space::U);
        let g0 = inst.frame(Space::G0);
        linalg::operator_matrix(&u, &g0, |x| self.apply(inst, x))
    }

    /// `(dim ker, dim coker)`.
    pub fn kernel_cokernel_dims(&self, inst: &SpaceInstance) -> (usize, usize) {
        let m = self.matrix(inst);
        let r = linalg::rank(&m, 1e-10);
        (m.ncols() - r, m.nrows() - r)
    }

    /// Staged solve of `T x = y`, returning `x` orthogonal to `i a0`.
    pub fn solve_staged(&self, inst: &SpaceInstance, y: &Mat) -> Result<Mat> {
        let x_plus = upper(&self.ad_l_inv(&upper(y)));
        let x_minus = -dagger(&x_plus);
        let xl = self.ad_l(&x_plus);
        let x_t0 = inst.orth(Space::T0, y) - inst.orth(Space::T0, &xl);
        let residual = frob(&inst.orth(Space::A0, &(y - &xl)));
        if residual > 1e-8 * (1.0 + frob(y)) {
            return Err(Error::NotInImage(residual));
        }
        Ok(x_plus + x_minus + x_t0)
    }
}

pub fn t_apply(inst: &SpaceInstance, g0: &Mat, x: &Mat) -> Result<Mat> {
    Ok(TOperator::new(inst, g0)?.apply(inst, x))
}

pub fn t_adjoint(inst: &SpaceInstance, g0: &Mat, y: &Mat) -> Result<Mat> {
    Ok(TOperator::new(inst, g0)?.adjoint(inst, y))
}

pub fn t_solve_staged(inst: &SpaceInstance, g0: &Mat, y: &Mat) -> Result<Mat> {
    TOperator::new(inst, g0)?.solve_staged(inst, y)
}

pub fn casimir(inst: &SpaceInstance, g0: &Mat) -> Result<Mat> {
    Ok(iwasawa(inst, g0)?.a0)
}

/// `s(A0 g0 K) = a0^{-1} g0`.
pub fn horizontal_section(inst: &SpaceInstance, g0: &Mat) -> Result<Mat> {
    let a0 = casimir(inst, g0)?;
    Ok(inv(&a0)? * g0)
}

/// Derivative of the section along `[g0, x]`, as a vector at `s(g0)`.
pub fn horizontal_derivative(inst: &SpaceInstance, g0: &Mat, x: &Mat) -> Result<Mat> {
    let u = iwasawa(inst, g0)?.u;
    let xa = inst.orth(Space::A0, &(&u * x * dagger(&u)));
    let g0_inv = inv(g0)?;
    Ok(x - inst.orth(Space::P, &(g0_inv * xa * g0)))
}

/// `Ad(u(g0)) x` orthogonal to `a0`; returns the residual.
pub fn leaf_tangent_test(inst: &SpaceInstance, v: &TangentVector) -> Result<(bool, f64)> {
    let u = iwasawa(inst, &v.base)?.u;
    let r = frob(&inst.orth(Space::A0, &(&u * &v.vec * dagger(&u))));
    Ok((r < 1e-10 * (1.0 + frob(&v.vec)), r))
}
