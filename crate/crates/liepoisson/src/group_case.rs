//! `K = SU(n)` viewed as `U / Delta(K)`: the bivectors `pi_K` and `Pi_K`,
//! translation by the longest element, and the leaf coordinates `zeta`.

use serde::{Deserialize, Serialize};

use crate::compact;
use crate::error::{Error, Result};
use crate::factorization::{self, birkhoff_single};
use crate::hamiltonian;
use crate::noncompact::PINV_REL;
use crate::lie_core::{form_re, hilbert_transform, SpaceInstance};
use crate::linalg::{self, c, dagger, Mat, C64, IM};
use crate::weyl::{self, evaluate_functional, Functional, RootDatum, WeylElement};

fn ad_inv(k: &Mat, x: &Mat) -> Mat {
    dagger(k) * x * k
}

fn ad(k: &Mat, x: &Mat) -> Mat {
    k * x * dagger(k)
}

/// `<(H - Ad(k) H Ad(k)^{-1}) phi, psi>`.
pub fn pi_k(k: &Mat, phi: &Mat, psi: &Mat) -> f64 {
    let v = hilbert_transform(phi) - ad(k, &hilbert_transform(&ad_inv(k, phi)));
    form_re(&v, psi)
}

/// `<(H + Ad(k) H Ad(k)^{-1}) phi, psi>`.
pub fn big_pi_k(k: &Mat, phi: &Mat, psi: &Mat) -> f64 {
    let v = hilbert_transform(phi) + ad(k, &hilbert_transform(&ad_inv(k, phi)));
    form_re(&v, psi)
}

/// Point `(k1, k2) K` of `U/K` for `GROUP(n)` and the image `k1 k2^{-1}`.
pub fn to_k(inst: &SpaceInstance, u: &Mat) -> Mat {
    let b = inst.split_blocks(u);
    &b[0] * dagger(&b[1])
}

/// Right-trivialized covector `phi` at `k1 k2^{-1}` as an element of `ip` at `(k1, k2)`.
pub fn lift_covector(inst: &SpaceInstance, u: &Mat, phi: &Mat) -> Mat {
    let k1 = &inst.split_blocks(u)[0];
    let y = ad_inv(k1, phi);
    inst.join_blocks(&[y.clone(), -y])
}

pub fn longest_representative(n: usize) -> Mat {
    WeylElement::longest(n).rep
}

/// `(pullback of pi_K along left translation by w0 at w0 k, -Pi_K(w0 k))`.
pub fn w0_translate_check(k: &Mat, phi: &Mat, psi: &Mat) -> (f64, f64) {
    let w0 = longest_representative(k.nrows());
    let lhs = pi_k(k, &ad_inv(&w0, phi), &ad_inv(&w0, psi));
    let rhs = -big_pi_k(&(&w0 * k), phi, psi);
    (lhs, rhs)
}

/// `k(zeta) = [[1,0],[zeta,1]] diag(a, 1/a) [[1,-conj zeta],[0,1]]`.
pub fn su2_k_of_zeta(zeta: C64) -> Mat {
    let a = (1.0 + zeta.norm_sqr()).powf(-0.5);
    let one = c(1.0, 0.0);
    let z = c(0.0, 0.0);
    let l = linalg::from_rows(&[&[one, z], &[zeta, one]]);
    let u = linalg::from_rows(&[&[one, -zeta.conj()], &[z, one]]);
    l * linalg::real_diag(&[a, 1.0 / a]) * u
}

/// Reduced word in descending order `gamma_n .. gamma_1` with matching `zeta`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafCoordinates {
    pub n: usize,
    pub word: Vec<usize>,
    pub zeta: Vec<C64>,
}

impl LeafCoordinates {
    pub fn new(n: usize, word: Vec<usize>, zeta: Vec<C64>) -> Result<Self> {
        if word.len() != zeta.len() {
            return Err(Error::Shape(format!("{} letters but {} coordinates", word.len(), zeta.len())));
        }
        if !weyl::is_reduced(n, &word)? {
            return Err(Error::NotReduced(word));
        }
        Ok(LeafCoordinates { n, word, zeta })
    }

    /// `w_j = r_{gamma_j} ... r_{gamma_1}` for `j = 0..=len`.
    pub fn partial_reps(&self) -> Result<Vec<Mat>> {
        let datum = RootDatum::new(self.n)?;
        let len = self.word.len();
        (0..=len).map(|j| weyl::representative(&datum, &self.word[len - j..])).collect()
    }

    /// `w_n = r_{gamma_n} ... r_{gamma_1}`.
    pub fn weyl_element(&self) -> Result<WeylElement> {
        WeylElement::from_word(self.n, &self.word)
    }

    /// Pairs `(gamma_j, zeta_j)` for `j = 1..=len`.
    fn letters(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        let len = self.word.len();
        (1..=len).map(move |j| (j, self.word[len - j], self.zeta[len - j]))
    }

    /// `w_{n-1}^{-1} i(k(zeta_n)) w_{n-1} ... i(k(zeta_1))`.
    pub fn product(&self) -> Result<Mat> {
        let reps = self.partial_reps()?;
        let mut out = linalg::eye(self.n);
        for (j, gamma, zeta) in self.letters() {
            let w = &reps[j - 1];
            let factor = dagger(w) * weyl::embed_su2(self.n, gamma, &su2_k_of_zeta(zeta))? * w;
            out = factor * out;
        }
        Ok(out)
    }

    /// `w_{j-1}^{-1} h_{gamma_j} w_{j-1}` for each letter.
    pub fn conjugated_coroots(&self) -> Result<Vec<Mat>> {
        let datum = RootDatum::new(self.n)?;
        let reps = self.partial_reps()?;
        self.letters()
            .map(|(j, gamma, _)| Ok(dagger(&reps[j - 1]) * datum.coroot(gamma)? * &reps[j - 1]))
            .collect()
    }
}

pub fn lu_coordinates_to_l(coords: &LeafCoordinates) -> Result<Mat> {
    Ok(birkhoff_single(&coords.product()?)?.l)
}

/// `prod_j (1 + |zeta_j|^2)^{-1/2 w_{j-1}^{-1} h_{gamma_j} w_{j-1}}`.
pub fn lu_a_product(coords: &LeafCoordinates) -> Result<Mat> {
    let mut log = vec![0.0; coords.n];
    for (h, (_, _, zeta)) in coords.conjugated_coroots()?.iter().zip(coords.letters()) {
        let s = (1.0 + zeta.norm_sqr()).ln();
        for (i, l) in log.iter_mut().enumerate() {
            *l -= 0.5 * s * h[(i, i)].re;
        }
    }
    Ok(linalg::real_diag(&log.iter().map(|v| v.exp()).collect::<Vec<_>>()))
}

/// `a` of the ordered product through `a = a(l^*)^{-1}` (Iwasawa of `l^*`).
pub fn a_from_iwasawa(l: &Mat) -> Result<Mat> {
    let ls = dagger(l);
    let chol = factorization::cholesky(&(&ls * dagger(&ls)))?;
    let d: Vec<f64> = chol.diagonal().iter().map(|z| 1.0 / z.re).collect();
    Ok(linalg::real_diag(&d))
}

/// Coefficients of `i dzeta_j ^ dzeta_j-bar`, listed in the word's order.
pub fn lu_form_coefficients(coords: &LeafCoordinates) -> Result<Vec<f64>> {
    let datum = RootDatum::new(coords.n)?;
    coords
        .word
        .iter()
        .zip(&coords.zeta)
        .map(|(&g, z)| Ok(1.0 / (datum.root_norm(g)? as f64) / (1.0 + z.norm_sqr())))
        .collect()
}

/// `prod_j (1 + |zeta_j|^2)^{delta(w_{j-1}^{-1} h_{gamma_j} w_{j-1}) - 1}`.
pub fn haar_density(coords: &LeafCoordinates) -> Result<f64> {
    let datum = RootDatum::new(coords.n)?;
    let mut out = 1.0;
    for (h, (_, _, zeta)) in coords.conjugated_coroots()?.iter().zip(coords.letters()) {
        let e = evaluate_functional(&datum, Functional::DeltaCheck, h)?.re;
        out *= (1.0 + zeta.norm_sqr()).powf(e - 1.0);
    }
    Ok(out)
}

/// Torus basis `i h_gamma_j` of `t`.
pub fn torus_basis(n: usize) -> Result<Vec<Mat>> {
    let datum = RootDatum::new(n)?;
    (1..n).map(|j| Ok(datum.coroot(j)? * IM)).collect()
}

/// `-<(i/2) log a, X>` for `X` running over `torus_basis`.
pub fn momentum_in_coordinates(coords: &LeafCoordinates) -> Result<Vec<f64>> {
    let log_a = factorization::log_positive_diag(&lu_a_product(coords)?);
    let v = log_a * c(0.0, 0.5);
    Ok(torus_basis(coords.n)?.iter().map(|x| -form_re(&v, x)).collect())
}

/// `G0` point `(l^{-1}, l^*)` of `GROUP(n)` whose dressed image is `(P, 1) K`.
pub fn g0_of_coordinates(inst: &SpaceInstance, coords: &LeafCoordinates) -> Result<Mat> {
    let l = lu_coordinates_to_l(coords)?;
    let l_inv = linalg::inverse(&l).ok_or_else(|| Error::Singular("l".into()))?;
    Ok(inst.join_blocks(&[l_inv, dagger(&l)]))
}

/// Ratios `Phi_X(g0) / momentum_in_coordinates` on the identity leaf, `X = (x, x)`.
/// Components where the coordinate formula vanishes identically are skipped.
pub fn momentum_reconciliation(coords: &LeafCoordinates) -> Result<Vec<f64>> {
    let inst = SpaceInstance::group(coords.n)?;
    let g0 = g0_of_coordinates(&inst, coords)?;
    let ours = momentum_in_coordinates(coords)?;
    let mut out = Vec::new();
    for (x, m) in torus_basis(coords.n)?.iter().zip(ours) {
        if m.abs() < 1e-6 {
            continue;
        }
        let big = inst.join_blocks(&[x.clone(), x.clone()]);
        out.push(hamiltonian::momentum_component(&inst, &inst.identity(), &big, &g0)? / m);
    }
    Ok(out)
}

/// `ip` tangent vector at `(P, 1)` for a velocity `dP` of `P`.
fn tangent_at(inst: &SpaceInstance, p: &Mat, dp: &Mat) -> Mat {
    let z = dagger(p) * dp * c(0.5, 0.0);
    inst.join_blocks(&[z.clone(), -z])
}

/// Real two-form matrix of the identity leaf pulled back to `(Re zeta_j, Im zeta_j)`,
/// ordered `(x_1, y_1, x_2, y_2, ...)` in the word's order; central differences with step `h`.
pub fn pulled_back_form(coords: &LeafCoordinates, h: f64) -> Result<linalg::RMat> {
    let inst = SpaceInstance::group(coords.n)?;
    let p = coords.product()?;
    let u = inst.join_blocks(&[p.clone(), linalg::eye(coords.n)]);
    let len = coords.word.len();
    let mut tangents = Vec::with_capacity(2 * len);
    for j in 0..len {
        for dir in [c(1.0, 0.0), IM] {
            let shifted = |s: f64| {
                let mut z = coords.zeta.clone();
                z[j] += dir * s;
                LeafCoordinates { zeta: z, ..coords.clone() }.product()
            };
            let dp = (shifted(h)? - shifted(-h)?) * c(1.0 / (2.0 * h), 0.0);
            tangents.push(tangent_at(&inst, &p, &dp));
        }
    }
    let inverse = compact::LeafInverse::new(&inst, &u);
    let mut out = linalg::RMat::zeros(2 * len, 2 * len);
    for a in 0..2 * len {
        for b in 0..2 * len {
            out[(a, b)] = inverse.eval(&tangents[a], &tangents[b]);
        }
    }
    Ok(out)
}

/// Hermitian coefficients `h_jk` of `i dzeta_j ^ dzeta_k-bar` and the size of the
/// `dzeta ^ dzeta` part, from a real form matrix in `(x, y)` pairs.
pub fn complex_coefficients(omega: &linalg::RMat) -> (Vec<Vec<C64>>, f64) {
    let len = omega.nrows() / 2;
    let w = |a: usize, b: usize| omega[(a, b)];
    let mut h = vec![vec![c(0.0, 0.0); len]; len];
    let mut holo = 0.0f64;
    for j in 0..len {
        for k in 0..len {
            let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
            // omega(d_zeta_j, d_zetabar_k) and omega(d_zeta_j, d_zeta_k), complex-bilinear
            let mixed = c(w(xj, xk) + w(yj, yk), w(xj, yk) - w(yj, xk)) * 0.25;
            let pure = c(w(xj, xk) - w(yj, yk), -w(xj, yk) - w(yj, xk)) * 0.25;
            h[j][k] = mixed * (-IM);
            holo = holo.max(pure.norm());
        }
    }
    (h, holo)
}

/// Conjugation `t l t^{-1}` in coordinates: `zeta_j` picks up the phase of the
/// `gamma_j` root on `w_{j-1} t w_{j-1}^{-1}`.
pub fn torus_rotate(coords: &LeafCoordinates, t: &[C64]) -> Result<LeafCoordinates> {
    let reps = coords.partial_reps()?;
    let td = linalg::diag(t);
    let mut zeta = coords.zeta.clone();
    let len = coords.word.len();
    for (j, gamma, z) in coords.letters() {
        let tj = &reps[j - 1] * &td * dagger(&reps[j - 1]);
        zeta[len - j] = z * tj[(gamma, gamma)] / tj[(gamma - 1, gamma - 1)];
    }
    Ok(LeafCoordinates { zeta, ..coords.clone() })
}

/// Serialized leaf data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub word: Vec<usize>,
    pub zeta: Vec<[f64; 2]>,
    pub coeffs: Vec<f64>,
    pub a: Vec<f64>,
    pub haar: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<crate::json::MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momentum: Option<Vec<f64>>,
}

impl DensityReport {
    pub fn compute(coords: &LeafCoordinates) -> Result<Self> {
        let a = lu_a_product(coords)?;
        let l = lu_coordinates_to_l(coords)?;
        Ok(DensityReport {
            word: coords.word.clone(),
            zeta: coords.zeta.iter().map(|z| [z.re, z.im]).collect(),
            coeffs: lu_form_coefficients(coords)?,
            a: a.diagonal().iter().map(|z| z.re).collect(),
            haar: haar_density(coords)?,
            l: Some(crate::json::MatrixJson::plain(&l)),
            momentum: Some(momentum_in_coordinates(coords)?),
        })
    }
}

/// Orthonormal basis of `su(n)` (the `u` frame of a one-block instance).
pub fn su_frame(n: usize) -> Result<Vec<Mat>> {
    Ok(SpaceInstance::grass(n - 1, 1)?.frame(crate::lie_core::Space::U))
}

/// Matrix of `phi -> (H + sign Ad(k) H Ad(k)^{-1}) phi` on `su_frame`.
fn bivector_matrix(k: &Mat, sign: f64) -> Result<linalg::RMat> {
    let frame = su_frame(k.nrows())?;
    Ok(linalg::operator_matrix(&frame, &frame, |phi| {
        hilbert_transform(phi) + ad(k, &hilbert_transform(&ad_inv(k, phi))) * c(sign, 0.0)
    }))
}

pub fn big_pi_matrix(k: &Mat) -> Result<linalg::RMat> {
    bivector_matrix(k, 1.0)
}

pub fn pi_matrix(k: &Mat) -> Result<linalg::RMat> {
    bivector_matrix(k, -1.0)
}

/// `<x, M^+ y>` on right-trivialized tangent vectors for a bivector matrix `M`.
fn leaf_form_of(m: &linalg::RMat, x: &Mat, y: &Mat) -> Result<f64> {
    let frame = su_frame(x.nrows())?;
    let pinv = linalg::pinv(m, PINV_REL);
    Ok(-linalg::coords(&frame, x).dot(&(pinv * linalg::coords(&frame, y))))
}

pub fn big_pi_leaf_form(k: &Mat, x: &Mat, y: &Mat) -> Result<f64> {
    leaf_form_of(&big_pi_matrix(k)?, x, y)
}

pub fn pi_leaf_form(k: &Mat, x: &Mat, y: &Mat) -> Result<f64> {
    leaf_form_of(&pi_matrix(k)?, x, y)
}

/// At `k = w P` on the `pi_K` leaf through `w`: push covectors `phi, psi` to leaf
/// tangents, translate by `w^{-1}`, and compare the negative leaf form at `k` with
/// the identity-leaf form of `Pi_K` at `P`. Returns the layer label of `(P, 1) K`
/// and the residual.
pub fn translation_check(coords: &LeafCoordinates, phi: &Mat, psi: &Mat) -> Result<(Vec<WeylElement>, f64)> {
    let inst = SpaceInstance::group(coords.n)?;
    let w = coords.weyl_element()?.rep;
    let p = coords.product()?;
    let k = &w * &p;
    let push = |v: &Mat| hilbert_transform(v) - ad(&k, &hilbert_transform(&ad_inv(&k, v)));
    let (x, y) = (push(phi), push(psi));
    let upstairs = -pi_leaf_form(&k, &x, &y)?;
    let downstairs = big_pi_leaf_form(&p, &ad_inv(&w, &x), &ad_inv(&w, &y))?;
    let layer = factorization::layer_of(&inst, &inst.join_blocks(&[p, linalg::eye(coords.n)]))?;
    Ok((layer, (upstairs - downstairs).abs()))
}
