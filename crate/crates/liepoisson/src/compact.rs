//! The Poisson tensor on `U/K`, the map `g0 K -> u(w1 g0) K`, the block
//! structure of `Ad(w)`, the operators `H_w` and `Z`, and leaf forms.

use crate::error::{Error, Result};
use crate::factorization::{self, iwasawa};
use crate::hamiltonian::{ad_unitary, TangentVector};
use crate::lie_core::{self, form_re, hilbert_transform, lower, upper, SpaceInstance, Space};
use crate::linalg::{self, c, dagger, frob, Mat, RMat, RVec, C64, IM};
use crate::noncompact::PINV_REL;
use crate::weyl;

/// `Omega(u) phi = {Ad(u^{-1}) H Ad(u) phi}_{ip}`.
pub fn omega_op(inst: &SpaceInstance, u: &Mat, phi: &Mat) -> Mat {
    let h = hilbert_transform(&ad_unitary(u, phi));
    inst.orth(Space::IP, &(dagger(u) * h * u))
}

pub fn pi_compact(inst: &SpaceInstance, phi: &TangentVector, psi: &TangentVector) -> Result<f64> {
    if frob(&(&phi.base - &psi.base)) > 1e-12 * (1.0 + frob(&phi.base)) {
        return Err(Error::Shape("covectors have different base points".into()));
    }
    Ok(form_re(&omega_op(inst, &phi.base, &phi.vec), &psi.vec))
}

pub fn omega_op_matrix(inst: &SpaceInstance, u: &Mat) -> RMat {
    let frame = inst.frame(Space::IP);
    linalg::operator_matrix(&frame, &frame, |phi| omega_op(inst, u, phi))
}

/// `<x, Omega(u)^+ y>`; the trace form is minus the Euclidean one on `ip`.
pub fn leaf_inverse_form(inst: &SpaceInstance, u: &Mat, x: &Mat, y: &Mat) -> f64 {
    LeafInverse::new(inst, u).eval(x, y)
}

/// Pseudo-inverse of `Omega(u)`, reusable across many pairs at one base point.
#[derive(Clone, Debug)]
pub struct LeafInverse {
    frame: Vec<Mat>,
    pinv: RMat,
}

impl LeafInverse {
    pub fn new(inst: &SpaceInstance, u: &Mat) -> Self {
        LeafInverse { frame: inst.frame(Space::IP), pinv: linalg::pinv(&omega_op_matrix(inst, u), PINV_REL) }
    }

    pub fn eval(&self, x: &Mat, y: &Mat) -> f64 {
        let xc = linalg::coords(&self.frame, x);
        let yc = linalg::coords(&self.frame, y);
        -xc.dot(&(&self.pinv * yc))
    }
}

/// `u~(g0) = u(w1 g0)`.
pub fn u_tilde(inst: &SpaceInstance, w1: &Mat, g0: &Mat) -> Result<Mat> {
    factorization::u_of(inst, &(w1 * g0))
}

/// Derivative of `u~` on `[g0, y]`: `[u, {Ad(u^{-1}) H Ad(u)(-i y)}_{ip}]`.
pub fn u_tilde_pushforward(inst: &SpaceInstance, w1: &Mat, v: &TangentVector) -> Result<TangentVector> {
    let u = u_tilde(inst, w1, &v.base)?;
    let vec = omega_op(inst, &u, &(&v.vec * (-IM)));
    Ok(TangentVector::new(u, vec))
}

/// Adjoint of the derivative: `{Ad(u^{-1}) i H Ad(u) phi}_p`.
pub fn pushforward_adjoint(inst: &SpaceInstance, u: &Mat, phi: &Mat) -> Mat {
    let h = hilbert_transform(&ad_unitary(u, phi)) * IM;
    inst.orth(Space::P, &(dagger(u) * h * u))
}

/// Root-vector bases of `n+`, `h` and `n-` (per block).
fn root_bases(inst: &SpaceInstance) -> (Vec<Mat>, Vec<Mat>, Vec<Mat>) {
    let n = inst.n_total;
    let unit = |i: usize, j: usize| {
        let mut e = Mat::zeros(n, n);
        e[(i, j)] = c(1.0, 0.0);
        e
    };
    let (mut np, mut h, mut nm) = (Vec::new(), Vec::new(), Vec::new());
    for (o, s) in inst.blocks() {
        for i in 0..s {
            for j in 0..s {
                if i < j {
                    np.push(unit(o + i, o + j));
                } else if i > j {
                    nm.push(unit(o + i, o + j));
                }
            }
        }
        for i in 0..s - 1 {
            h.push(unit(o + i, o + i) - unit(o + i + 1, o + i + 1));
        }
    }
    (np, h, nm)
}

/// Complex coordinates in a basis of matrix units (or coroots for `h`).
fn complex_coords(basis: &[Mat], z: &Mat, is_h: bool) -> Vec<C64> {
    if !is_h {
        return basis
            .iter()
            .map(|b| {
                let (i, j) = b.iter().position(|v| v.re == 1.0).map(|k| (k % b.nrows(), k / b.nrows())).unwrap();
                z[(i, j)]
            })
            .collect();
    }
    // coroot basis E_ii - E_{i+1,i+1} per block: cumulative sums of the diagonal
    let mut out = Vec::with_capacity(basis.len());
    let mut k = 0;
    while k < basis.len() {
        let start = basis[k].iter().position(|v| v.re == 1.0).unwrap() % basis[k].nrows();
        let mut acc = C64::new(0.0, 0.0);
        let mut idx = start;
        while k < basis.len() {
            let pos = basis[k].iter().position(|v| v.re == 1.0).unwrap() % basis[k].nrows();
            if pos != idx {
                break;
            }
            acc += z[(idx, idx)];
            out.push(acc);
            idx += 1;
            k += 1;
        }
    }
    out
}

fn cmat(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Mat {
    Mat::from_fn(rows, cols, f)
}

#[derive(Clone, Debug)]
pub struct AdWBlocks {
    pub w_hat: Mat,
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
    pub d: Mat,
    pub w_h: Mat,
    /// Largest coefficient of `Ad(w)` between `n+ + n-` and `h`.
    pub mixing: f64,
}

impl AdWBlocks {
    /// Block matrix in the basis `(n+, h, n-)`.
    pub fn assemble(&self) -> Mat {
        let (p, h, m) = (self.a.nrows(), self.w_h.nrows(), self.d.nrows());
        let mut out = Mat::zeros(p + h + m, p + h + m);
        out.view_mut((0, 0), (p, p)).copy_from(&self.a);
        out.view_mut((0, p + h), (p, m)).copy_from(&self.b);
        out.view_mut((p, p), (h, h)).copy_from(&self.w_h);
        out.view_mut((p + h, 0), (m, p)).copy_from(&self.c);
        out.view_mut((p + h, p + h), (m, m)).copy_from(&self.d);
        out
    }
}

/// Full matrix of `Ad(w)` in the basis `(n+, h, n-)`.
pub fn ad_w_full(inst: &SpaceInstance, w_hat: &Mat) -> Mat {
    let (np, h, nm) = root_bases(inst);
    let basis: Vec<(&Mat, usize)> = np
        .iter()
        .map(|b| (b, 0))
        .chain(h.iter().map(|b| (b, 1)))
        .chain(nm.iter().map(|b| (b, 2)))
        .collect();
    let dim = basis.len();
    let mut out = Mat::zeros(dim, dim);
    for (col, (b, _)) in basis.iter().enumerate() {
        let img = ad_unitary(w_hat, b);
        let mut coords = complex_coords(&np, &upper(&img), false);
        coords.extend(complex_coords(&h, &lie_core::diagonal_part(&img), true));
        coords.extend(complex_coords(&nm, &lower(&img), false));
        for (row, v) in coords.into_iter().enumerate() {
            out[(row, col)] = v;
        }
    }
    out
}

pub fn ad_w_blocks(inst: &SpaceInstance, w_hat: &Mat) -> Result<AdWBlocks> {
    let normalizes = inst.frame(Space::T).iter().all(|t| {
        let m = ad_unitary(w_hat, t);
        frob(&(&m - lie_core::diagonal_part(&m))) < 1e-10
    });
    if !normalizes {
        return Err(Error::Membership { tag: "does not normalize torus".into(), residual: f64::NAN });
    }
    let full = ad_w_full(inst, w_hat);
    let (np, h, nm) = root_bases(inst);
    let (p, hd, m) = (np.len(), h.len(), nm.len());
    let sub = |r0: usize, c0: usize, r: usize, cc: usize| cmat(r, cc, |i, j| full[(r0 + i, c0 + j)]);
    let mut mixing = 0.0f64;
    for (r0, c0, r, cc) in [(p, 0, hd, p), (p, p + hd, hd, m), (0, p, p, hd), (p + hd, p, m, hd)] {
        mixing = mixing.max(linalg::max_abs(&sub(r0, c0, r, cc)));
    }
    Ok(AdWBlocks {
        w_hat: w_hat.clone(),
        a: sub(0, 0, p, p),
        b: sub(0, p + hd, p, m),
        c: sub(p + hd, 0, m, p),
        d: sub(p + hd, p + hd, m, m),
        w_h: sub(p, p, hd, hd),
        mixing,
    })
}

/// `H_w`, with `C sigma` realified on `n-`.
#[derive(Clone, Debug)]
pub struct HwOperator {
    pub blocks: AdWBlocks,
    frame: Vec<Mat>,
    /// Realified `C sigma` on `n-`.
    pub c_sigma: RMat,
    solver: RMat,
    one_minus: RMat,
    kernel: RMat,
}

impl HwOperator {
    pub fn new(inst: &SpaceInstance, w_hat: &Mat) -> Result<Self> {
        let blocks = ad_w_blocks(inst, w_hat)?;
        let frame = inst.frame(Space::NMinus);
        let c_sigma = linalg::operator_matrix(&frame, &frame, |z| lower(&ad_unitary(w_hat, &inst.sigma_alg(z))));
        let id = RMat::identity(frame.len(), frame.len());
        let one_minus = &id - &c_sigma;
        let solver = linalg::pinv(&one_minus, 1e-12);
        let kernel = linalg::nullspace(&one_minus, 1e-10);
        Ok(HwOperator { blocks, frame, c_sigma, solver, one_minus, kernel })
    }

    /// `H_w` is defined up to `-i ker(1 - C sigma)`; `apply` returns the
    /// minimal-norm representative.
    pub fn ambiguity(&self) -> Vec<Mat> {
        (0..self.kernel.ncols())
            .map(|j| linalg::combine(&self.frame, &self.kernel.column(j).into_owned()) * (-IM))
            .collect()
    }

    /// Real dimension of `n-`.
    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    /// `|(1 - C sigma) solver(v) - v|` for `v = (1 - C sigma) r`, a point of the range.
    pub fn solver_residual(&self, r: &RVec) -> f64 {
        let v = &self.one_minus * r;
        (&self.one_minus * (&self.solver * &v) - &v).norm()
    }

    pub fn apply(&self, chi: &Mat) -> Result<Mat> {
        let rhs = linalg::coords(&self.frame, &lower(chi));
        let eta = &self.solver * &rhs;
        let residual = (&self.one_minus * &eta - &rhs).norm();
        if residual > 1e-8 * (1.0 + rhs.norm()) {
            return Err(Error::NotInDomain(residual));
        }
        let plus = &eta + &self.c_sigma * &eta;
        Ok(linalg::combine(&self.frame, &plus) * (-IM) + upper(chi) * IM)
    }
}

pub fn h_w_apply(op: &HwOperator, chi: &Mat) -> Result<Mat> {
    op.apply(chi)
}

/// `{Z}_{i g0^{w1}} = (Z - Ad(w) sigma Z) / 2`.
pub fn orth_i_g0_w(inst: &SpaceInstance, w_hat: &Mat, z: &Mat) -> Mat {
    (z - ad_unitary(w_hat, &inst.sigma_alg(z))) * c(0.5, 0.0)
}

pub fn orth_g0_w(inst: &SpaceInstance, w_hat: &Mat, z: &Mat) -> Mat {
    (z + ad_unitary(w_hat, &inst.sigma_alg(z))) * c(0.5, 0.0)
}

/// `Z(x^{w1 g0})` by its closed formula.
pub fn z_operator(inst: &SpaceInstance, w1: &Mat, g0: &Mat, x: &Mat) -> Result<Mat> {
    let wg = w1 * g0;
    let f = iwasawa(inst, &wg)?;
    let la = &f.l * &f.a;
    let la_inv = linalg::inverse(&la).ok_or_else(|| Error::Singular("l a".into()))?;
    let xu = ad_unitary(&f.u, x);
    let wg_inv = linalg::inverse(&wg).ok_or_else(|| Error::Singular("w1 g0".into()))?;
    let xw = &wg * x * wg_inv;
    let xu0 = lie_core::diagonal_part(&xu);
    let inner = &xu0 + upper(&xu) * c(2.0, 0.0);
    Ok(-(&xu0 - lie_core::diagonal_part(&xw)) + lower(&(&la * inner * la_inv)))
}

/// `Z(x^{w1 g0})` from `Ad(la) H Ad(la)^{-1} - H = i Z`.
pub fn z_operator_defining(inst: &SpaceInstance, w1: &Mat, g0: &Mat, x: &Mat) -> Result<Mat> {
    let wg = w1 * g0;
    let f = iwasawa(inst, &wg)?;
    let la = &f.l * &f.a;
    let la_inv = linalg::inverse(&la).ok_or_else(|| Error::Singular("l a".into()))?;
    let wg_inv = linalg::inverse(&wg).ok_or_else(|| Error::Singular("w1 g0".into()))?;
    let chi = &wg * x * wg_inv;
    let twisted = &la * hilbert_transform(&(&la_inv * &chi * &la)) * &la_inv;
    Ok((twisted - hilbert_transform(&chi)) * (-IM))
}

/// Tangency condition: `i Ad(g0) x` orthogonal to `r(w1)`; returns the residual.
pub fn leaf_tangency_residual(r_basis: &[Mat], g0: &Mat, x: &Mat) -> Result<f64> {
    let g0_inv = linalg::inverse(g0).ok_or_else(|| Error::Singular("g0".into()))?;
    let v = g0 * x * g0_inv * IM;
    Ok(r_basis.iter().map(|b| form_re(&v, b).powi(2)).sum::<f64>().sqrt())
}

/// Residual of `Ad(w1 g0){Ad(u^-1) H Ad(u) x}_p = -i{Ad(la) pr_{n- + a}(x^u)}_{i g0^w}`.
pub fn lemma_pushforward_residual(inst: &SpaceInstance, w1: &Mat, g0: &Mat, x: &Mat) -> Result<f64> {
    let wg = w1 * g0;
    let f = iwasawa(inst, &wg)?;
    let w_hat = factorization::cartan_embed(inst, w1);
    let wg_inv = linalg::inverse(&wg).ok_or_else(|| Error::Singular("w1 g0".into()))?;
    let inner = inst.orth(Space::P, &(dagger(&f.u) * hilbert_transform(&ad_unitary(&f.u, x)) * &f.u));
    let lhs = &wg * inner * wg_inv;
    let la = &f.l * &f.a;
    let la_inv = linalg::inverse(&la).ok_or_else(|| Error::Singular("l a".into()))?;
    let b = &la * inst.pr_na(&ad_unitary(&f.u, x)) * la_inv;
    let rhs = orth_i_g0_w(inst, &w_hat, &b) * (-IM);
    Ok(frob(&(lhs - rhs)))
}

/// Residual of `H_w({chi}_{i g0^w}) = {-i p_-(chi)}_{i g0^w}` for `chi` in `b-`.
pub fn lemma_borel_residual(inst: &SpaceInstance, op: &HwOperator, chi: &Mat) -> Result<f64> {
    let w_hat = &op.blocks.w_hat;
    let lhs = op.apply(&orth_i_g0_w(inst, w_hat, chi))?;
    let rhs = orth_i_g0_w(inst, w_hat, &(lower(chi) * (-IM)));
    let diff = lhs - rhs;
    let amb = linalg::orthonormalize(&op.ambiguity(), 1e-10);
    let proj = amb.iter().fold(diff.clone(), |acc, b| &acc - b * c(linalg::re_inner(&diff, b), 0.0));
    Ok(frob(&proj))
}

/// Leaf form through `H_w`: `<Ad(w1 g0)^{-1} H_w Ad(w1 g0) x, y>`.
pub fn leaf_form_with(op: &HwOperator, w1: &Mat, g0: &Mat, x: &Mat, y: &Mat) -> Result<f64> {
    let wg = w1 * g0;
    let wg_inv = linalg::inverse(&wg).ok_or_else(|| Error::Singular("w1 g0".into()))?;
    let chi = &wg * x * &wg_inv;
    let h = op.apply(&chi)?;
    Ok(form_re(&h, &(&wg * y * &wg_inv)))
}

/// Leaf form at `u = u~(g0)` on two tangent vectors `[u, x]`, `[u, y]`.
pub fn leaf_form(
    inst: &SpaceInstance,
    leaf: &crate::hamiltonian::LeafParameter,
    g0: &Mat,
    v1: &TangentVector,
    v2: &TangentVector,
) -> Result<f64> {
    let u = u_tilde(inst, &leaf.w1, g0)?;
    for v in [v1, v2] {
        if frob(&(&v.base - &u)) > 1e-9 * (1.0 + frob(&u)) {
            return Err(Error::Shape("tangent vector is not based at u~(g0)".into()));
        }
    }
    let r = crate::hamiltonian::stabilizer_algebra(inst, &leaf.w1);
    for v in [v1, v2] {
        let res = leaf_tangency_residual(&r, g0, &v.vec)?;
        if res > 1e-8 * (1.0 + frob(&v.vec)) {
            return Err(Error::Membership { tag: "leaf tangent".into(), residual: res });
        }
    }
    let op = HwOperator::new(inst, &leaf.w_hat)?;
    leaf_form_with(&op, &leaf.w1, g0, &v1.vec, &v2.vec)
}

/// Candidate GRASS leaf representatives: signed permutations, optionally
/// followed by quarter-turns `exp(pi/4 (i E_jk + i E_kj))` across the two blocks.
pub fn grass_leaf_search(inst: &SpaceInstance) -> Result<Vec<(Mat, Vec<usize>)>> {
    let (p, q) = match inst.kind {
        lie_core::Kind::Grass { p, q } => (p, q),
        _ => return Err(Error::Instance("leaf search is for GRASS instances".into())),
    };
    let n = p + q;
    if n > 4 {
        return Err(Error::Instance("leaf search is limited to n <= 4".into()));
    }
    let mut found: Vec<(Mat, Vec<usize>)> = Vec::new();
    // matchings between the two index blocks
    let mut matchings: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for j in 0..p {
        let mut next = Vec::new();
        for m in &matchings {
            next.push(m.clone());
            for k in p..n {
                if m.iter().all(|&(_, kk)| kk != k) {
                    let mut mm = m.clone();
                    mm.push((j, k));
                    next.push(mm);
                }
            }
        }
        matchings = next;
    }
    let perms = permutations(n);
    for m in &matchings {
        let mut x = Mat::zeros(n, n);
        for &(j, k) in m {
            x[(j, k)] = IM * std::f64::consts::FRAC_PI_4;
            x[(k, j)] = IM * std::f64::consts::FRAC_PI_4;
        }
        let turn = linalg::expm(&x);
        for perm in &perms {
            for signs in 0..(1u32 << n) {
                let mut s = Mat::zeros(n, n);
                for (col, &row) in perm.iter().enumerate() {
                    s[(row, col)] = c(if signs >> col & 1 == 1 { -1.0 } else { 1.0 }, 0.0);
                }
                if (s.determinant() - c(1.0, 0.0)).norm() > 1e-12 {
                    continue;
                }
                let w1 = &s * &turn;
                let w_hat = factorization::cartan_embed(inst, &w1);
                if let Some(label) = weyl::perm_of_monomial(&w_hat, 1e-9) {
                    if !found.iter().any(|(_, l)| *l == label) {
                        found.push((w1, label));
                    }
                }
            }
        }
    }
    found.sort_by_key(|(_, l)| weyl::inversions(l));
    Ok(found)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{self, LeafParameter};
    use crate::lie_core::{rng_for, GroupTag};
    use crate::linalg::from_rows;
    use crate::weyl::WeylElement;

    #[test]
    fn omega_compact_at_identity_grass11() {
        // ip = {[[0, b],[-b*, 0]]}; H of [[0,1],[-1,0]] is [[0,i],[i,0]]
        let inst = SpaceInstance::grass(1, 1).unwrap();
        let e = linalg::eye(2);
        let z = c(0.0, 0.0);
        let phi = from_rows(&[&[z, c(1.0, 0.0)], &[c(-1.0, 0.0), z]]);
        let want = from_rows(&[&[z, IM], &[IM, z]]);
        assert!(frob(&(omega_op(&inst, &e, &phi) - &want)) < 1e-15);
        // <[[0,i],[i,0]], [[0,i],[i,0]]> = -2
        let v = pi_compact(&inst, &TangentVector::new(e.clone(), phi), &TangentVector::new(e, want.clone())).unwrap();
        assert!((v + 2.0).abs() < 1e-15);
    }

    #[test]
    fn ad_w_block_examples() {
        let inst = SpaceInstance::grass(1, 1).unwrap();
        let id = ad_w_blocks(&inst, &linalg::eye(2)).unwrap();
        assert!(frob(&(&id.a - linalg::eye(1))) < 1e-15 && frob(&id.b) < 1e-15);
        let r = weyl::r_gamma(2, 1).unwrap();
        let bl = ad_w_blocks(&inst, &r).unwrap();
        assert!(frob(&bl.a) < 1e-15 && frob(&bl.d) < 1e-15);
        assert!(frob(&bl.b) > 0.5 && frob(&bl.c) > 0.5);
        let h = SpaceInstance::group(3).unwrap();
        let w = WeylElement::from_word(3, &[1, 2]).unwrap();
        let (_, w_hat) = weyl::group_leaf(&h, &w).unwrap();
        let bl = ad_w_blocks(&h, &w_hat).unwrap();
        assert!(frob(&(bl.assemble() - ad_w_full(&h, &w_hat))) < 1e-12);
        assert!(bl.mixing < 1e-12);
        let mut rng = rng_for(1, 0);
        let u = h.sample_grp(GroupTag::U, &mut rng);
        assert!(ad_w_blocks(&h, &u).is_err());
    }

    #[test]
    fn z_operator_paths_agree() {
        for inst in [SpaceInstance::grass(2, 1).unwrap(), SpaceInstance::group(3).unwrap()] {
            let mut rng = rng_for(40, 0);
            let w1 = inst.sample_grp(GroupTag::U, &mut rng);
            let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
            let x = inst.sample_alg(Space::P, &mut rng);
            let a = z_operator(&inst, &w1, &g0, &x).unwrap();
            let b = z_operator_defining(&inst, &w1, &g0, &x).unwrap();
            assert!(frob(&(&a - &b)) < 1e-10, "{}", frob(&(&a - &b)));
            assert!(frob(&upper(&a)) < 1e-12);
            let e = inst.identity();
            assert!(frob(&z_operator(&inst, &e, &e, &x).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn h_w_at_identity_is_h() {
        let inst = SpaceInstance::group(2).unwrap();
        let op = HwOperator::new(&inst, &inst.identity()).unwrap();
        let mut rng = rng_for(3, 0);
        let chi = inst.sample_alg(Space::G0, &mut rng);
        assert!(frob(&(op.apply(&chi).unwrap() - hilbert_transform(&chi))) < 1e-14);
    }

    #[test]
    fn grass_search_finds_layers() {
        let g11 = SpaceInstance::grass(1, 1).unwrap();
        let found = grass_leaf_search(&g11).unwrap();
        let labels: Vec<_> = found.iter().map(|(_, l)| l.clone()).collect();
        assert_eq!(labels, vec![vec![0, 1], vec![1, 0]]);
        let g21 = SpaceInstance::grass(2, 1).unwrap();
        let found = grass_leaf_search(&g21).unwrap();
        assert!(found.len() >= 2);
        for (w1, label) in &found {
            let leaf = LeafParameter::new(&g21, w1.clone());
            assert!(leaf.normalizes_torus(&g21));
            assert_eq!(&leaf.w.as_ref().unwrap()[0].perm, label);
        }
    }

    #[test]
    fn pushforward_matches_finite_differences() {
        let inst = SpaceInstance::group(2).unwrap();
        let mut rng = rng_for(13, 0);
        let w1 = inst.sample_grp(GroupTag::U, &mut rng);
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        let y = inst.sample_alg(Space::P, &mut rng);
        let push = u_tilde_pushforward(&inst, &w1, &TangentVector::new(g0.clone(), y.clone())).unwrap();
        let h = 1e-5;
        let up = u_tilde(&inst, &w1, &(&g0 * linalg::expm(&linalg::scale(&y, h)))).unwrap();
        let um = u_tilde(&inst, &w1, &(&g0 * linalg::expm(&linalg::scale(&y, -h)))).unwrap();
        let fd = inst.orth(Space::IP, &(dagger(&push.base) * (up - um) * c(1.0 / (2.0 * h), 0.0)));
        assert!(frob(&(fd - &push.vec)) < 1e-6);
        let phi = inst.sample_alg(Space::IP, &mut rng);
        let lhs = form_re(&push.vec, &phi);
        let rhs = form_re(&y, &pushforward_adjoint(&inst, &push.base, &phi));
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn identity_leaf_form_matches_formula() {
        let inst = SpaceInstance::grass(2, 1).unwrap();
        let leaf = LeafParameter::identity(&inst);
        let mut rng = rng_for(14, 0);
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        let u = u_tilde(&inst, &leaf.w1, &g0).unwrap();
        let x = omega_op(&inst, &u, &inst.sample_alg(Space::IP, &mut rng));
        let y = omega_op(&inst, &u, &inst.sample_alg(Space::IP, &mut rng));
        let v = leaf_form(&inst, &leaf, &g0, &TangentVector::new(u.clone(), x.clone()), &TangentVector::new(u.clone(), y.clone())).unwrap();
        let g0_inv = linalg::inverse(&g0).unwrap();
        let direct = form_re(&(&g0_inv * hilbert_transform(&(&g0 * &x * &g0_inv)) * &g0), &y);
        assert!((v - direct).abs() < 1e-10);
        assert!((v - leaf_inverse_form(&inst, &u, &x, &y)).abs() < 1e-8);
        let _ = hamiltonian::stabilizer_algebra(&inst, &leaf.w1);
    }
}
