//! The two-form on `G0/K` attached to a unitary `w1`, the dressing action,
//! the stabilizer algebra, the torus `T_w` and its momentum map.

use crate::error::{Error, Result};
use crate::factorization::{self, iwasawa};
use crate::lie_core::{form_re, hilbert_transform, SpaceInstance, Space};
use crate::linalg::{self, c, dagger, frob, Mat, RMat, IM};
use crate::weyl::{self, WeylElement};

#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub base: Mat,
    pub vec: Mat,
}

impl TangentVector {
    pub fn new(base: Mat, vec: Mat) -> Self {
        TangentVector { base, vec }
    }

    /// The representative `(g0 k, Ad(k^{-1}) x)` of the same vector.
    pub fn rebase(&self, k: &Mat) -> TangentVector {
        let k_inv = dagger(k);
        TangentVector { base: &self.base * k, vec: &k_inv * &self.vec * k }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeafParameter {
    pub w1: Mat,
    pub w_hat: Mat,
    /// Weyl label per block, present when `w_hat` is monomial.
    pub w: Option<Vec<WeylElement>>,
}

impl LeafParameter {
    pub fn new(inst: &SpaceInstance, w1: Mat) -> Self {
        let w_hat = factorization::cartan_embed(inst, &w1);
        let w = inst
            .split_blocks(&w_hat)
            .iter()
            .map(|b| weyl::perm_of_monomial(b, 1e-8).map(|p| WeylElement::from_perm(&p)))
            .collect::<Option<Vec<_>>>();
        LeafParameter { w1, w_hat, w }
    }

    pub fn identity(inst: &SpaceInstance) -> Self {
        LeafParameter::new(inst, inst.identity())
    }

    /// GROUP(n) leaf `w1 = (w, 1)` for a Weyl element `w`.
    pub fn group(inst: &SpaceInstance, w: &WeylElement) -> Result<Self> {
        let (w1, _) = weyl::group_leaf(inst, w)?;
        Ok(LeafParameter::new(inst, w1))
    }

    pub fn normalizes_torus(&self, inst: &SpaceInstance) -> bool {
        inst.frame(Space::T).iter().all(|t| {
            let m = &self.w_hat * t * dagger(&self.w_hat);
            frob(&(&m - crate::lie_core::diagonal_part(&m))) < 1e-10
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentumValue {
    pub coefficients: Vec<f64>,
}

/// `Ad(g) x` for invertible `g`.
pub fn ad(g: &Mat, x: &Mat) -> Result<Mat> {
    let g_inv = linalg::inverse(g).ok_or_else(|| Error::Singular("Ad of a singular matrix".into()))?;
    Ok(g * x * g_inv)
}

/// `Ad(u) x` for unitary `u`.
pub fn ad_unitary(u: &Mat, x: &Mat) -> Mat {
    u * x * dagger(u)
}

/// `Ad(u^{-1}) H Ad(u)`.
pub fn twisted_hilbert(u: &Mat, x: &Mat) -> Mat {
    let ux = ad_unitary(u, x);
    dagger(u) * hilbert_transform(&ux) * u
}

/// `u(w1 g0)`.
pub fn dressed_u(inst: &SpaceInstance, w1: &Mat, g0: &Mat) -> Result<Mat> {
    factorization::u_of(inst, &(w1 * g0))
}

/// Two-form at `g0 K` on representatives `x, y` in `p`.
pub fn omega_at(inst: &SpaceInstance, w1: &Mat, g0: &Mat, x: &Mat, y: &Mat) -> Result<f64> {
    let u = dressed_u(inst, w1, g0)?;
    Ok(form_re(&twisted_hilbert(&u, x), y))
}

pub fn omega(inst: &SpaceInstance, w1: &Mat, v1: &TangentVector, v2: &TangentVector) -> Result<f64> {
    if frob(&(&v1.base - &v2.base)) > 1e-12 * (1.0 + frob(&v1.base)) {
        return Err(Error::Shape("tangent vectors have different base points".into()));
    }
    omega_at(inst, w1, &v1.base, &v1.vec, &v2.vec)
}

/// Same value through `I o Ad(u^{-1}) o pr_u o Ad((la)^{-1} w1) o Ad(g0)`.
pub fn omega_factored(inst: &SpaceInstance, w1: &Mat, g0: &Mat, x: &Mat, y: &Mat) -> Result<f64> {
    let f = iwasawa(inst, &(w1 * g0))?;
    let la = &f.l * &f.a;
    let la_inv = linalg::inverse(&la).ok_or_else(|| Error::Singular("l a".into()))?;
    let m = &la_inv * w1;
    let x1 = ad(g0, x)?;
    let x2 = ad(&m, &x1)?;
    let z = inst.pr_u(&x2);
    // u^{-1} = g0^{-1} w1^{-1} l a
    let g0_inv = linalg::inverse(g0).ok_or_else(|| Error::Singular("g0".into()))?;
    let u_inv = g0_inv * dagger(w1) * &la;
    let u = &la_inv * w1 * g0;
    let back = &u_inv * z * &u;
    let lifted = inst.orth(Space::K, &back) + inst.orth(Space::IP, &back) * IM;
    Ok(form_re(&lifted, y))
}

/// Matrix of the form in the orthonormal frame of `p`.
pub fn omega_matrix(inst: &SpaceInstance, w1: &Mat, g0: &Mat) -> Result<RMat> {
    let u = dressed_u(inst, w1, g0)?;
    let frame = inst.frame(Space::P);
    let k = frame.len();
    let mut m = RMat::zeros(k, k);
    for i in 0..k {
        let hx = twisted_hilbert(&u, &frame[i]);
        for j in 0..k {
            m[(i, j)] = form_re(&hx, &frame[j]);
        }
    }
    Ok(m)
}

/// `dressing(u, g0) = u(u g0)`.
pub fn dressing(inst: &SpaceInstance, u: &Mat, g0: &Mat) -> Result<Mat> {
    factorization::u_of(inst, &(u * g0))
}

/// Basis of `r(w1) = Ad(w1^{-1})(n^- + a) intersected with g0`.
pub fn stabilizer_algebra(inst: &SpaceInstance, w1: &Mat) -> Vec<Mat> {
    let g0 = inst.frame(Space::G0);
    let cols: Vec<_> = g0.iter().map(|b| linalg::to_real(&inst.pr_u(&ad_unitary(w1, b)))).collect();
    let m = RMat::from_columns(&cols);
    let null = linalg::nullspace(&m, 1e-10);
    let basis: Vec<Mat> = (0..null.ncols())
        .map(|k| linalg::combine(&g0, &null.column(k).into_owned()))
        .collect();
    linalg::orthonormalize(&basis, 1e-10)
}

/// Orthonormal basis of `t_w`.
pub fn t_w_basis(inst: &SpaceInstance, leaf: &LeafParameter) -> Result<Vec<Mat>> {
    if !leaf.normalizes_torus(inst) {
        return Err(Error::Membership { tag: "N_U(T)".into(), residual: f64::NAN });
    }
    let t = inst.frame(Space::T);
    let m = linalg::operator_matrix(&t, &t, |x| ad_unitary(&leaf.w_hat, &inst.theta(x)));
    let shifted = m - RMat::identity(t.len(), t.len());
    let null = linalg::nullspace(&shifted, 1e-10);
    let basis: Vec<Mat> = (0..null.ncols())
        .map(|k| linalg::combine(&t, &null.column(k).into_owned()))
        .collect();
    Ok(linalg::orthonormalize(&basis, 1e-10))
}

/// Residual of `t` against `T_w`.
pub fn t_w_residual(inst: &SpaceInstance, leaf: &LeafParameter, t: &Mat) -> f64 {
    let diag_res = frob(&(t - crate::lie_core::diagonal_part(t)));
    let unit = frob(&(dagger(t) * t - inst.identity()));
    let fixed = frob(&(ad_unitary(&leaf.w_hat, &inst.theta(t)) - t));
    let det: f64 = inst.split_blocks(t).iter().map(|b| (b.determinant() - c(1.0, 0.0)).norm()).sum();
    diag_res + unit + fixed + det
}

/// `w1^{-1} t w1 g0`.
pub fn torus_act(inst: &SpaceInstance, leaf: &LeafParameter, t: &Mat, g0: &Mat) -> Result<Mat> {
    let residual = t_w_residual(inst, leaf, t);
    if !(residual < 1e-10) {
        return Err(Error::Membership { tag: "T_w".into(), residual });
    }
    Ok(dagger(&leaf.w1) * t * &leaf.w1 * g0)
}

/// `Phi_X(g0) = <iX, log a(w1 g0)>`.
pub fn momentum_component(inst: &SpaceInstance, w1: &Mat, x: &Mat, g0: &Mat) -> Result<f64> {
    let log_a = iwasawa(inst, &(w1 * g0))?.log_a();
    Ok(form_re(&(x * IM), &log_a))
}

pub fn momentum(inst: &SpaceInstance, leaf: &LeafParameter, g0: &Mat) -> Result<MomentumValue> {
    let basis = t_w_basis(inst, leaf)?;
    let log_a = iwasawa(inst, &(&leaf.w1 * g0))?.log_a();
    let coefficients = basis.iter().map(|b| form_re(&(&log_a * IM), b)).collect();
    Ok(MomentumValue { coefficients })
}

/// `kappa(X)` at `g0`: `[g0, {Ad(g0^{-1}) X}_p]`.
pub fn kappa(inst: &SpaceInstance, x: &Mat, g0: &Mat) -> Result<TangentVector> {
    let g0_inv = linalg::inverse(g0).ok_or_else(|| Error::Singular("g0".into()))?;
    let v = inst.orth(Space::P, &(&g0_inv * x * g0));
    Ok(TangentVector::new(g0.clone(), v))
}

/// Tangent vector of the curve `eps -> c(eps)` at `c(0)`, from three samples.
pub fn curve_tangent(inst: &SpaceInstance, base: &Mat, plus: &Mat, minus: &Mat, h: f64) -> Result<Mat> {
    let inv = linalg::inverse(base).ok_or_else(|| Error::Singular("curve base".into()))?;
    let d = (plus - minus) * c(1.0 / (2.0 * h), 0.0);
    Ok(inst.orth(Space::P, &(inv * d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{rng_for, GroupTag};
    use crate::linalg::{from_rows, real_rows};

    #[test]
    fn omega_hand_example() {
        // H x = [[0, i], [-i, 0]] = y, and tr(y y) = 2
        let inst = SpaceInstance::grass(1, 1).unwrap();
        let x = real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = c(0.0, 0.0);
        let y = from_rows(&[&[z, IM], &[-IM, z]]);
        let e = linalg::eye(2);
        let v = omega(&inst, &e, &TangentVector::new(e.clone(), x.clone()), &TangentVector::new(e.clone(), y)).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
        assert!(omega_at(&inst, &e, &e, &x, &x).unwrap().abs() < 1e-15);
    }

    #[test]
    fn omega_is_k_invariant_and_paths_agree() {
        for inst in [SpaceInstance::grass(2, 1).unwrap(), SpaceInstance::group(2).unwrap()] {
            let mut rng = rng_for(21, 0);
            let w1 = inst.sample_grp(GroupTag::U, &mut rng);
            let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
            let x = inst.sample_alg(Space::P, &mut rng);
            let y = inst.sample_alg(Space::P, &mut rng);
            let k = inst.sample_grp(GroupTag::K, &mut rng);
            let v1 = TangentVector::new(g0.clone(), x.clone());
            let v2 = TangentVector::new(g0.clone(), y.clone());
            let a = omega(&inst, &w1, &v1, &v2).unwrap();
            let b = omega(&inst, &w1, &v1.rebase(&k), &v2.rebase(&k)).unwrap();
            assert!((a - b).abs() < 1e-12);
            assert!((a - omega_factored(&inst, &w1, &g0, &x, &y).unwrap()).abs() < 1e-11);
            assert!((a + omega(&inst, &w1, &v2, &v1).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn stabilizer_dimensions() {
        let g = SpaceInstance::grass(1, 1).unwrap();
        assert_eq!(stabilizer_algebra(&g, &linalg::eye(2)).len(), 0);
        for n in 2..=3 {
            let h = SpaceInstance::group(n).unwrap();
            let r = stabilizer_algebra(&h, &h.identity());
            assert_eq!(r.len(), n - 1);
            for b in &r {
                assert!(frob(&(b - h.orth(Space::A0, b))) < 1e-10);
            }
        }
    }

    #[test]
    fn t_w_examples() {
        let h = SpaceInstance::group(2).unwrap();
        let id = LeafParameter::identity(&h);
        let basis = t_w_basis(&h, &id).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(frob(&(&basis[0] - h.orth(Space::T0, &basis[0]))) < 1e-12);
        let s = WeylElement::from_word(2, &[1]).unwrap();
        let leaf = LeafParameter::group(&h, &s).unwrap();
        let basis = t_w_basis(&h, &leaf).unwrap();
        assert_eq!(basis.len(), 1);
        // (x, -x) with x = diag(it, -it)
        let b = h.split_blocks(&basis[0]);
        assert!(frob(&(&b[0] + &b[1])) < 1e-12);
    }

    #[test]
    fn momentum_vanishes_at_identity() {
        for inst in [SpaceInstance::grass(2, 1).unwrap(), SpaceInstance::group(3).unwrap()] {
            let leaf = LeafParameter::identity(&inst);
            let m = momentum(&inst, &leaf, &inst.identity()).unwrap();
            assert!(m.coefficients.iter().all(|v| v.abs() < 1e-15));
        }
    }

    #[test]
    fn momentum_of_diagonal_group_element() {
        // g0 = (diag(r, 1/r), diag(1/r, r)) is its own a, so log a = (log r)(h, -h)
        let h = SpaceInstance::group(2).unwrap();
        let r: f64 = 1.7;
        let g0 = linalg::block_diag(&linalg::real_diag(&[r, 1.0 / r]), &linalg::real_diag(&[1.0 / r, r]));
        let x = linalg::block_diag(
            &linalg::diag(&[c(0.0, 1.0), c(0.0, -1.0)]),
            &linalg::diag(&[c(0.0, 1.0), c(0.0, -1.0)]),
        );
        // <i x, log a> = i*i*(2 log r) + i*i*(-2 log r) = 0 for the diagonal torus
        assert!(momentum_component(&h, &h.identity(), &x, &g0).unwrap().abs() < 1e-15);
        let y = linalg::block_diag(
            &linalg::diag(&[c(0.0, 1.0), c(0.0, -1.0)]),
            &linalg::diag(&[c(0.0, -1.0), c(0.0, 1.0)]),
        );
        let v = momentum_component(&h, &h.identity(), &y, &g0).unwrap();
        assert!((v + 4.0 * r.ln()).abs() < 1e-14);
    }

    #[test]
    fn dressing_is_a_right_action() {
        let inst = SpaceInstance::grass(2, 2).unwrap();
        let mut rng = rng_for(8, 0);
        let u = inst.sample_grp(GroupTag::U, &mut rng);
        let g = inst.sample_grp(GroupTag::G0, &mut rng);
        let h = inst.sample_grp(GroupTag::G0, &mut rng);
        let lhs = dressing(&inst, &dressing(&inst, &u, &g).unwrap(), &h).unwrap();
        let rhs = dressing(&inst, &u, &(&g * &h)).unwrap();
        assert!(frob(&(lhs - rhs)) < 1e-12);
        assert!(frob(&(dressing(&inst, &u, &inst.identity()).unwrap() - &u)) < 1e-13);
    }

    #[test]
    fn torus_act_rejects_non_members() {
        let h = SpaceInstance::group(2).unwrap();
        let leaf = LeafParameter::identity(&h);
        let t = linalg::block_diag(
            &linalg::diag(&[c(0.0, 1.0), c(0.0, -1.0)]),
            &linalg::diag(&[c(0.0, -1.0), c(0.0, 1.0)]),
        );
        assert!(torus_act(&h, &leaf, &t, &h.identity()).is_err());
        let t0 = h.diagonal_lift(&linalg::diag(&[c(0.0, 1.0), c(0.0, -1.0)]));
        assert!(torus_act(&h, &leaf, &t0, &h.identity()).is_ok());
    }
}
