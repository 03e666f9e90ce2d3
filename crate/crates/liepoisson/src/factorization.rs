//! Iwasawa, Gauss/Birkhoff and Bruhat data for matrices, plus the Cartan embedding.

use crate::error::{Error, Result};
use crate::lie_core::{SpaceInstance, Space};
use crate::linalg::{self, c, dagger, Mat, RMat, C64};
use crate::weyl::{self, Perm, WeylElement};

/// Relative singular-value threshold for rank decisions.
pub const RANK_REL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaFactors {
    pub l: Mat,
    pub a: Mat,
    pub u: Mat,
    pub a0: Mat,
    pub a1: Mat,
}

impl IwasawaFactors {
    pub fn product(&self) -> Mat {
        &self.l * &self.a * &self.u
    }

    /// Real logarithm of the diagonal `a`, as a diagonal matrix.
    pub fn log_a(&self) -> Mat {
        log_positive_diag(&self.a)
    }
}

pub fn log_positive_diag(a: &Mat) -> Mat {
    let d: Vec<f64> = a.diagonal().iter().map(|z| z.re.ln()).collect();
    linalg::real_diag(&d)
}

pub fn exp_diag(h: &Mat) -> Mat {
    let d: Vec<C64> = h.diagonal().iter().map(|z| z.exp()).collect();
    linalg::diag(&d)
}

/// Cholesky factor of a Hermitian positive definite matrix.
pub fn cholesky(p: &Mat) -> Result<Mat> {
    let n = p.nrows();
    let scale = p.diagonal().iter().map(|z| z.re.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut s = p[(j, j)].re;
        for k in 0..j {
            s -= l[(j, k)].norm_sqr();
        }
        if !(s > 64.0 * f64::EPSILON * scale) {
            return Err(Error::Singular(format!("Cholesky pivot {j} is {s:.3e}")));
        }
        let d = s.sqrt();
        l[(j, j)] = c(d, 0.0);
        for i in j + 1..n {
            let mut t = p[(i, j)];
            for k in 0..j {
                t -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = t / d;
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower triangular `L`.
pub fn forward_substitute(l: &Mat, b: &Mat) -> Mat {
    let n = l.nrows();
    let mut x = Mat::zeros(n, b.ncols());
    for col in 0..b.ncols() {
        for i in 0..n {
            let mut t = b[(i, col)];
            for k in 0..i {
                t -= l[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = t / l[(i, i)];
        }
    }
    x
}

/// `g = l a u` with `l` in `N^-`, `a` in `A`, `u` in `U`, and `a = a0 a1`.
pub fn iwasawa(inst: &SpaceInstance, g: &Mat) -> Result<IwasawaFactors> {
    if g.nrows() != inst.n_total || g.ncols() != inst.n_total {
        return Err(Error::Shape(format!("expected {0}x{0} matrix", inst.n_total)));
    }
    let p = g * dagger(g);
    let lfull = cholesky(&p)?;
    let a = lie_core_diag(&lfull);
    let a_inv = linalg::real_diag(&a.diagonal().iter().map(|z| 1.0 / z.re).collect::<Vec<_>>());
    let l = &lfull * &a_inv;
    let u = forward_substitute(&lfull, g);
    let log_a = log_positive_diag(&a);
    let log_a0 = inst.orth(Space::A0, &log_a);
    let a0 = exp_diag(&log_a0);
    let a1 = exp_diag(&(log_a - log_a0));
    Ok(IwasawaFactors { l, a, u, a0, a1 })
}

fn lie_core_diag(m: &Mat) -> Mat {
    crate::lie_core::diagonal_part(m)
}

/// Iwasawa `u`-component only.
pub fn u_of(inst: &SpaceInstance, g: &Mat) -> Result<Mat> {
    Ok(iwasawa(inst, g)?.u)
}

fn complex_to_real(m: &Mat) -> RMat {
    // |m| in the realification, which has the same rank doubled
    let (r, cdim) = m.shape();
    RMat::from_fn(2 * r, 2 * cdim, |i, j| {
        let z = m[(i / 2, j / 2)];
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    })
}

/// Ranks of the leading `i x j` submatrices, with a marginality flag.
fn leading_ranks(g: &Mat) -> Result<Vec<Vec<usize>>> {
    let n = g.nrows();
    let smax = linalg::singular_values(&complex_to_real(g)).first().cloned().unwrap_or(0.0);
    if smax == 0.0 {
        return Err(Error::Singular("zero matrix".into()));
    }
    let thr = RANK_REL * smax;
    let mut r = vec![vec![0usize; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            let sub = g.view((0, 0), (i, j)).into_owned();
            let s = linalg::singular_values(&complex_to_real(&sub));
            // realified singular values come in pairs
            let mut rank2 = 0;
            for &v in &s {
                if v > thr {
                    rank2 += 1;
                    if v < 1e2 * thr {
                        return Err(Error::MarginalStratum(format!(
                            "singular value {v:.3e} of the leading {i}x{j} block is within two decades of the threshold {thr:.3e}"
                        )));
                    }
                } else if v > 1e-2 * thr {
                    return Err(Error::MarginalStratum(format!(
                        "singular value {v:.3e} of the leading {i}x{j} block is within two decades of the threshold {thr:.3e}"
                    )));
                }
            }
            r[i][j] = rank2 / 2;
        }
    }
    Ok(r)
}

/// The permutation `w` with `g` in `N^- w H N^+`, from ranks of leading submatrices.
pub fn bruhat_perm(g: &Mat) -> Result<Perm> {
    let n = g.nrows();
    let r = leading_ranks(g)?;
    if r[n][n] != n {
        return Err(Error::Singular("matrix is not invertible".into()));
    }
    let mut p = vec![usize::MAX; n];
    for i in 1..=n {
        for j in 1..=n {
            let jump = r[i][j] + r[i - 1][j - 1] - r[i - 1][j] - r[i][j - 1];
            if jump == 1 {
                if p[j - 1] != usize::MAX {
                    return Err(Error::MarginalStratum("inconsistent rank matrix".into()));
                }
                p[j - 1] = i - 1;
            }
        }
    }
    if !weyl::is_perm(&p) {
        return Err(Error::MarginalStratum("rank matrix is not a permutation pattern".into()));
    }
    Ok(p)
}

pub fn bruhat_cell(g: &Mat) -> Result<WeylElement> {
    Ok(WeylElement::from_perm(&bruhat_perm(g)?))
}

/// Bruhat cell of each block.
pub fn bruhat_cells(inst: &SpaceInstance, g: &Mat) -> Result<Vec<WeylElement>> {
    inst.split_blocks(g).iter().map(bruhat_cell).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BirkhoffFactors {
    pub w: Vec<WeylElement>,
    pub l: Mat,
    pub m: Mat,
    pub a: Mat,
    pub u_plus: Mat,
}

impl BirkhoffFactors {
    pub fn product(&self) -> Mat {
        &self.l * &self.m * &self.a * &self.u_plus
    }
}

/// Doolittle `g = L U` without pivoting.
pub fn gauss_lu(g: &Mat) -> Result<(Mat, Mat)> {
    let n = g.nrows();
    let mut l = linalg::eye(n);
    let mut u = g.clone();
    let scale = linalg::max_abs(g).max(f64::MIN_POSITIVE);
    for k in 0..n {
        let piv = u[(k, k)];
        if piv.norm() <= 1e-14 * scale {
            return Err(Error::Singular(format!("zero leading minor at {}", k + 1)));
        }
        for i in k + 1..n {
            let f = u[(i, k)] / piv;
            l[(i, k)] = f;
            for j in k..n {
                let t = u[(k, j)];
                u[(i, j)] -= f * t;
            }
            u[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    Ok((l, u))
}

/// `k = l m a u_+` for a single block on the top stratum.
pub fn birkhoff_single(k: &Mat) -> Result<BirkhoffFactors> {
    let w = bruhat_cell(k)?;
    if !w.is_identity() {
        return Err(Error::OffTopStratum { cell: w.to_string() });
    }
    let (l, up) = gauss_lu(k)?;
    let d: Vec<C64> = up.diagonal().iter().cloned().collect();
    let m: Vec<C64> = d.iter().map(|z| z / z.norm()).collect();
    let a: Vec<f64> = d.iter().map(|z| z.norm()).collect();
    let d_inv = linalg::diag(&d.iter().map(|z| 1.0 / z).collect::<Vec<_>>());
    Ok(BirkhoffFactors {
        w: vec![w],
        l,
        m: linalg::diag(&m),
        a: linalg::real_diag(&a),
        u_plus: d_inv * up,
    })
}

/// `k = l m a u_+` for `k` on the top stratum.
pub fn birkhoff(inst: &SpaceInstance, k: &Mat) -> Result<BirkhoffFactors> {
    let cells = bruhat_cells(inst, k)?;
    if let Some(bad) = cells.iter().find(|w| !w.is_identity()) {
        return Err(Error::OffTopStratum { cell: bad.to_string() });
    }
    let parts = inst
        .split_blocks(k)
        .iter()
        .map(birkhoff_single)
        .collect::<Result<Vec<_>>>()?;
    let join = |f: &dyn Fn(&BirkhoffFactors) -> Mat| inst.join_blocks(&parts.iter().map(f).collect::<Vec<_>>());
    Ok(BirkhoffFactors {
        w: cells,
        l: join(&|t| t.l.clone()),
        m: join(&|t| t.m.clone()),
        a: join(&|t| t.a.clone()),
        u_plus: join(&|t| t.u_plus.clone()),
    })
}

/// `u Theta(u)^{-1}`.
pub fn cartan_embed(inst: &SpaceInstance, u: &Mat) -> Mat {
    u * dagger(&inst.theta(u))
}

/// Bruhat cell label of the Cartan image.
pub fn layer_of(inst: &SpaceInstance, u: &Mat) -> Result<Vec<WeylElement>> {
    bruhat_cells(inst, &cartan_embed(inst, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{rng_for, GroupTag};
    use crate::linalg::{frob, from_rows, real_rows};

    fn sl2() -> SpaceInstance {
        SpaceInstance::grass(1, 1).unwrap()
    }

    #[test]
    fn iwasawa_of_unipotent_upper() {
        // g g^* = [[2,1],[1,1]] = L L^*, L = [[sqrt2, 0], [1/sqrt2, 1/sqrt2]]
        let g = real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let f = iwasawa(&sl2(), &g).unwrap();
        let s = 2f64.sqrt();
        assert!(frob(&(&f.l - real_rows(&[&[1.0, 0.0], &[0.5, 1.0]]))) < 1e-15);
        assert!(frob(&(&f.a - linalg::real_diag(&[s, 1.0 / s]))) < 1e-15);
        let u = real_rows(&[&[1.0 / s, 1.0 / s], &[-1.0 / s, 1.0 / s]]);
        assert!(frob(&(&f.u - u)) < 1e-15);
        assert!(frob(&(f.a0 - linalg::eye(2))) < 1e-15);
    }

    #[test]
    fn iwasawa_of_lower_unipotent_is_trivial() {
        let g = from_rows(&[&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.3, -2.0), c(1.0, 0.0)]]);
        let f = iwasawa(&sl2(), &g).unwrap();
        assert!(frob(&(&f.l - &g)) < 1e-14);
        assert!(frob(&(&f.a - linalg::eye(2))) < 1e-14);
        assert!(frob(&(&f.u - linalg::eye(2))) < 1e-14);
    }

    #[test]
    fn iwasawa_a0_split_in_group_case() {
        let inst = SpaceInstance::group(2).unwrap();
        let d = linalg::real_diag(&[2.0, 0.5]);
        // (d, d) is symmetric under the swap: no a0 part
        let f = iwasawa(&inst, &linalg::block_diag(&d, &d)).unwrap();
        assert!(frob(&(&f.a0 - linalg::eye(4))) < 1e-14);
        assert!(frob(&(&f.a1 - linalg::block_diag(&d, &d))) < 1e-14);
        // (d, d^{-*}) lies in A0 itself
        let dinv = linalg::real_diag(&[0.5, 2.0]);
        let g0 = linalg::block_diag(&d, &dinv);
        let f = iwasawa(&inst, &g0).unwrap();
        assert!(frob(&(&f.a0 - &g0)) < 1e-14);
        assert!(frob(&(&f.a1 - linalg::eye(4))) < 1e-14);
    }

    #[test]
    fn singular_input_rejected() {
        let g = real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(iwasawa(&sl2(), &g), Err(Error::Singular(_))));
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_cell(&linalg::eye(3)).unwrap().is_identity());
        let s = real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert_eq!(bruhat_cell(&s).unwrap().word, vec![1]);
        let inst = SpaceInstance::grass(2, 1).unwrap();
        let mut rng = rng_for(3, 0);
        let g = inst.sample_grp(GroupTag::G, &mut rng);
        // leading minors of a generic matrix are nonzero: the big cell is N^- H N^+
        assert!(bruhat_cell(&g).unwrap().is_identity());
    }

    #[test]
    fn bruhat_reads_permutation_pattern() {
        let w = WeylElement::from_word(3, &[1, 2]).unwrap();
        let inst = SpaceInstance::grass(2, 1).unwrap();
        let mut rng = rng_for(9, 0);
        let l = inst.sample_grp(GroupTag::NMinus, &mut rng);
        let b = inst.sample_grp(GroupTag::BPlus, &mut rng);
        assert_eq!(bruhat_cell(&(l * &w.rep * b)).unwrap().perm, w.perm);
    }

    #[test]
    fn birkhoff_su2_example() {
        let s = 1.0 / 2f64.sqrt();
        let k = real_rows(&[&[s, -s], &[s, s]]);
        let f = birkhoff(&sl2(), &k).unwrap();
        assert!(frob(&(&f.l - real_rows(&[&[1.0, 0.0], &[1.0, 1.0]]))) < 1e-15);
        assert!(frob(&(&f.m - linalg::eye(2))) < 1e-15);
        assert!(frob(&(&f.a - linalg::real_diag(&[s, 1.0 / s]))) < 1e-15);
        assert!(frob(&(&f.u_plus - real_rows(&[&[1.0, -1.0], &[0.0, 1.0]]))) < 1e-15);
    }

    #[test]
    fn birkhoff_off_top_stratum() {
        let k = from_rows(&[&[c(0.0, 0.0), c(0.0, 1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]]);
        match birkhoff(&sl2(), &k) {
            Err(Error::OffTopStratum { cell }) => assert_eq!(cell, "1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cartan_embedding_examples() {
        let inst = SpaceInstance::grass(1, 1).unwrap();
        let mut rng = rng_for(4, 0);
        let x = inst.sample_alg(Space::IP, &mut rng);
        let u = linalg::expm(&x);
        assert!(frob(&(cartan_embed(&inst, &u) - &u * &u)) < 1e-13);
        let k = inst.sample_grp(GroupTag::K, &mut rng);
        assert!(frob(&(cartan_embed(&inst, &k) - linalg::eye(2))) < 1e-13);
        // antidiagonal Cartan image lies in the s1 layer
        let r = weyl::r_gamma(2, 1).unwrap();
        let h = SpaceInstance::group(2).unwrap();
        let layer = layer_of(&h, &linalg::block_diag(&r, &linalg::eye(2))).unwrap();
        assert_eq!(layer[0].word, vec![1]);
        assert_eq!(layer[1].word, vec![1]);
    }
}
