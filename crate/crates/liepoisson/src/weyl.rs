//! Type A root data, permutations, reduced words and unitary Weyl representatives.

use std::fmt;

use crate::error::{Error, Result};
use crate::lie_core::{self, SpaceInstance};
use crate::linalg::{self, Mat, C64, IM};

/// Permutation `p` of `0..n`, read as: the representative sends `e_c` to a
/// multiple of `e_{p[c]}`.
pub type Perm = Vec<usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    /// Simple root `gamma_j`, 1-based.
    Gamma(usize),
    DeltaCheck,
}

impl RootDatum {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Instance(format!("sl({n}) has no roots")));
        }
        Ok(RootDatum { n })
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.n {
            return Err(Error::IndexOutOfRange { index: j, rank: self.rank() });
        }
        Ok(())
    }

    /// `h_{gamma_j} = E_jj - E_{j+1,j+1}`.
    pub fn coroot(&self, j: usize) -> Result<Mat> {
        self.check_index(j)?;
        let mut d = vec![0.0; self.n];
        d[j - 1] = 1.0;
        d[j] = -1.0;
        Ok(linalg::real_diag(&d))
    }

    /// Trace-form representer of a functional on the diagonal Cartan.
    pub fn representer(&self, f: Functional) -> Result<Mat> {
        match f {
            Functional::Gamma(j) => self.coroot(j),
            Functional::DeltaCheck => {
                // sum of fundamental weights: h -> sum_k (n - k) h_kk, made traceless
                let n = self.n as f64;
                let d: Vec<f64> = (1..=self.n).map(|k| (n - k as f64) - (n - 1.0) / 2.0).collect();
                Ok(linalg::real_diag(&d))
            }
        }
    }

    pub fn root_norm(&self, j: usize) -> Result<i64> {
        let h = self.coroot(j)?;
        Ok(lie_core::form(&h, &h).re.round() as i64)
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (1..=r)
            .map(|i| {
                (1..=r)
                    .map(|j| {
                        let hi = self.coroot(i).unwrap();
                        let hj = self.coroot(j).unwrap();
                        lie_core::form(&hi, &hj).re.round() as i64
                    })
                    .collect()
            })
            .collect()
    }
}

/// Evaluates `gamma_j` or `delta_check` on a diagonal matrix.
pub fn evaluate_functional(datum: &RootDatum, f: Functional, h: &Mat) -> Result<C64> {
    if h.nrows() != datum.n || h.ncols() != datum.n {
        return Err(Error::Shape(format!("expected {}x{} diagonal", datum.n, datum.n)));
    }
    let off = linalg::frob(&(h - lie_core::diagonal_part(h)));
    if off > 1e-12 {
        return Err(Error::Membership { tag: "h".into(), residual: off });
    }
    let rep = datum.representer(f)?;
    // the representer of delta_check is traceless; project h the same way
    let t = linalg::trace(h) / (datum.n as f64);
    let h0 = h - linalg::eye(datum.n) * t;
    Ok(lie_core::form(&rep, &h0))
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// `(p o q)(c) = p[q[c]]`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&k| p[k]).collect()
}

pub fn inverse_perm(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (c, &r) in p.iter().enumerate() {
        inv[r] = c;
    }
    inv
}

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &k in p {
        if k >= p.len() || seen[k] {
            return false;
        }
        seen[k] = true;
    }
    true
}

pub fn inversions(p: &Perm) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

/// Permutation of the product `s_{w1} ... s_{wL}`.
pub fn perm_of_word(n: usize, word: &[usize]) -> Result<Perm> {
    let mut p = identity_perm(n);
    for &j in word {
        if j == 0 || j >= n {
            return Err(Error::IndexOutOfRange { index: j, rank: n.saturating_sub(1) });
        }
        p.swap(j - 1, j);
    }
    Ok(p)
}

/// Bubble-sort extraction: peel off a descent until the identity remains.
pub fn reduced_word(p: &Perm) -> Vec<usize> {
    let mut p = p.clone();
    let mut rev = Vec::new();
    while let Some(j) = (0..p.len().saturating_sub(1)).find(|&j| p[j] > p[j + 1]) {
        p.swap(j, j + 1);
        rev.push(j + 1);
    }
    rev.reverse();
    rev
}

pub fn is_reduced(n: usize, word: &[usize]) -> Result<bool> {
    Ok(inversions(&perm_of_word(n, word)?) == word.len())
}

pub fn longest_perm(n: usize) -> Perm {
    (0..n).rev().collect()
}

/// `i_gamma_j(m)` for a 2x2 matrix `m`, placed at rows/cols `j-1, j`.
pub fn embed_su2(n: usize, j: usize, m: &Mat) -> Result<Mat> {
    if j == 0 || j >= n {
        return Err(Error::IndexOutOfRange { index: j, rank: n.saturating_sub(1) });
    }
    let mut out = linalg::eye(n);
    out.view_mut((j - 1, j - 1), (2, 2)).copy_from(m);
    Ok(out)
}

pub fn r_gamma(n: usize, j: usize) -> Result<Mat> {
    let z = C64::new(0.0, 0.0);
    embed_su2(n, j, &linalg::from_rows(&[&[z, IM], &[IM, z]]))
}

/// Ordered product of `r_gamma` over the word.
pub fn representative(datum: &RootDatum, word: &[usize]) -> Result<Mat> {
    let mut out = linalg::eye(datum.n);
    for &j in word {
        out = out * r_gamma(datum.n, j)?;
    }
    Ok(out)
}

/// Permutation pattern of a monomial matrix, if it is one.
pub fn perm_of_monomial(m: &Mat, tol: f64) -> Option<Perm> {
    let n = m.nrows();
    let mut p = vec![usize::MAX; n];
    for col in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&r| m[(r, col)].norm() > tol).collect();
        if rows.len() != 1 {
            return None;
        }
        p[col] = rows[0];
    }
    is_perm(&p).then_some(p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement {
    pub perm: Perm,
    pub word: Vec<usize>,
    pub rep: Mat,
}

impl WeylElement {
    pub fn from_perm(p: &Perm) -> Self {
        let datum = RootDatum { n: p.len().max(2) };
        let word = reduced_word(p);
        let rep = if p.len() < 2 {
            linalg::eye(p.len())
        } else {
            representative(&datum, &word).expect("valid word")
        };
        WeylElement { perm: p.clone(), word, rep }
    }

    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let perm = perm_of_word(n, word)?;
        if inversions(&perm) != word.len() {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let rep = representative(&RootDatum::new(n)?, word)?;
        Ok(WeylElement { perm, word: word.to_vec(), rep })
    }

    pub fn identity(n: usize) -> Self {
        WeylElement::from_perm(&identity_perm(n))
    }

    pub fn longest(n: usize) -> Self {
        WeylElement::from_perm(&longest_perm(n))
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &k)| i == k)
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.word_string())
        }
    }
}

pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(|ch: char| ch.is_whitespace() || ch == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad word letter '{t}'"))))
        .collect()
}

/// Reduced word for the longest element beginning with the word of `w`.
pub fn minimal_prefix_extension(w: &WeylElement, n_full: usize) -> Result<Vec<usize>> {
    if w.perm.len() != n_full {
        return Err(Error::Shape(format!("element of S_{} used with n = {n_full}", w.perm.len())));
    }
    if inversions(&w.perm) != w.word.len() {
        return Err(Error::NotReduced(w.word.clone()));
    }
    let rest = compose(&inverse_perm(&w.perm), &longest_perm(n_full));
    let mut word = w.word.clone();
    word.extend(reduced_word(&rest));
    Ok(word)
}

/// GROUP(n) leaf data for `w`: `(w1_hat, w_hat) = ((w, 1), (w, w^{-1}))`.
pub fn group_leaf(inst: &SpaceInstance, w: &WeylElement) -> Result<(Mat, Mat)> {
    let n = match inst.kind {
        lie_core::Kind::Group { n } => n,
        _ => return Err(Error::Instance("group_leaf needs a GROUP instance".into())),
    };
    if w.rep.nrows() != n {
        return Err(Error::Shape("Weyl element size does not match instance".into()));
    }
    let w1 = linalg::block_diag(&w.rep, &linalg::eye(n));
    let w_hat = linalg::block_diag(&w.rep, &linalg::dagger(&w.rep));
    Ok((w1, w_hat))
}

/// `w^{-1} h w` for a monomial `w` and diagonal `h`.
pub fn conj_diag_inv(w: &Mat, h: &Mat) -> Mat {
    linalg::dagger(w) * h * w
}

/// All reduced words of a permutation (small n only).
pub fn all_reduced_words(p: &Perm) -> Vec<Vec<usize>> {
    if inversions(p) == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in 0..p.len() - 1 {
        if p[j] > p[j + 1] {
            let mut q = p.clone();
            q.swap(j, j + 1);
            for mut w in all_reduced_words(&q) {
                w.push(j + 1);
                out.push(w);
            }
        }
    }
    out
}
