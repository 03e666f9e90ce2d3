//! Finite-difference machinery and the verification suites.
//!
//! A suite never raises: a sample whose computation errors records an
//! infinite residual for that check and the run continues.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::compact::{self, HwOperator, LeafInverse};
use crate::error::{Error, Result};
use crate::factorization::{self, birkhoff, birkhoff_single, bruhat_cell, iwasawa, layer_of, u_of};
use crate::group_case::{self, LeafCoordinates};
use crate::hamiltonian::{self, LeafParameter, TangentVector};
use crate::lie_core::{self, form, form_re, hilbert_transform, nijenhuis, rng_for, GroupTag, Kind, Projector, Space, SpaceInstance};
use crate::linalg::{self, c, commutator, dagger, frob, Mat, RVec, C64, IM};
use crate::noncompact::{self, TOperator};
use crate::weyl::{self, RootDatum, WeylElement};

/// Default step for the exterior-derivative evaluator.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Samples at or below this `|d omega|` are skipped by the Richardson check.
const RICHARDSON_FLOOR: f64 = 1e-8;

/// Per-sample cap for the finite-difference pullback of the group-case leaf form.
const PULLBACK_CAP: usize = 20;

/// Fundamental vector field of the left `G0` action.
pub fn kappa_field(inst: &SpaceInstance, x: &Mat, g0: &Mat) -> Result<TangentVector> {
    hamiltonian::kappa(inst, x, g0)
}

fn omega_kk(inst: &SpaceInstance, w1: &Mat, g0: &Mat, y: &Mat, z: &Mat) -> Result<f64> {
    let a = kappa_field(inst, y, g0)?;
    let b = kappa_field(inst, z, g0)?;
    hamiltonian::omega(inst, w1, &a, &b)
}

/// `d omega(kX, kY, kZ)` by central differences with step `h`.
pub fn d_omega_fd(inst: &SpaceInstance, w1: &Mat, g0: &Mat, xs: [&Mat; 3], h: f64) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..3 {
        let (x, y, z) = (xs[i], xs[(i + 1) % 3], xs[(i + 2) % 3]);
        let plus = linalg::expm(&linalg::scale(x, h)) * g0;
        let minus = linalg::expm(&linalg::scale(x, -h)) * g0;
        let d = (omega_kk(inst, w1, &plus, y, z)? - omega_kk(inst, w1, &minus, y, z)?) / (2.0 * h);
        total += d;
        total += omega_kk(inst, w1, g0, &commutator(x, y), z)?;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Factorization,
    Hamiltonian,
    Noncompact,
    Compact,
    Iso,
    Group,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Core, Suite::Factorization, Suite::Hamiltonian, Suite::Noncompact, Suite::Compact, Suite::Iso, Suite::Group];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Factorization => "factorization",
            Suite::Hamiltonian => "hamiltonian",
            Suite::Noncompact => "noncompact",
            Suite::Compact => "compact",
            Suite::Iso => "iso",
            Suite::Group => "group",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownTag(format!("suite {s}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tolerance overrides: a uniform scale and exact per-check values.
#[derive(Clone, Debug, PartialEq)]
pub struct Overrides {
    pub scale: f64,
    pub per_check: BTreeMap<String, f64>,
}

impl Default for Overrides {
    fn default() -> Self {
        Overrides { scale: 1.0, per_check: BTreeMap::new() }
    }
}

impl Overrides {
    /// Reads `LIEPOISSON_TOL_SCALE` (default 1).
    pub fn from_env() -> Result<Self> {
        let scale = match std::env::var("LIEPOISSON_TOL_SCALE") {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| Error::Parse(format!("LIEPOISSON_TOL_SCALE={s:?} is not a positive number")))?,
            Err(_) => 1.0,
        };
        Ok(Overrides { scale, per_check: BTreeMap::new() })
    }

    /// Tolerance for a check; per-check values match either the full or the unprefixed name.
    pub fn tol(&self, full: &str, bare: &str, default: f64) -> f64 {
        self.per_check
            .get(full)
            .or_else(|| self.per_check.get(bare))
            .copied()
            .unwrap_or(default * self.scale)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instance: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON with `seconds` zeroed, for byte-level comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.seconds = 0.0;
        serde_json::to_string(&r).unwrap_or_default()
    }
}

struct Tracker<'a> {
    overrides: &'a Overrides,
    only: &'a [&'a str],
    prefix: String,
    checks: Vec<Check>,
    params: BTreeMap<String, Value>,
}

impl<'a> Tracker<'a> {
    fn wants(&self, name: &str) -> bool {
        self.only.is_empty() || self.only.contains(&name)
    }

    fn record(&mut self, name: &str, tol: f64, r: Result<f64>) {
        if !self.wants(name) {
            return;
        }
        let v = match r {
            Ok(v) if v.is_finite() => v.abs(),
            _ => f64::INFINITY,
        };
        let full = format!("{}{name}", self.prefix);
        match self.checks.iter_mut().find(|c| c.name == full) {
            Some(c) => c.max_residual = c.max_residual.max(v),
            None => {
                let tol = self.overrides.tol(&full, name, tol);
                self.checks.push(Check { name: full, max_residual: v, tol, pass: false });
            }
        }
    }

    fn flag(&mut self, name: &str, ok: Result<bool>) {
        self.record(name, 0.0, ok.map(|b| if b { 0.0 } else { 1.0 }));
    }

    fn param(&mut self, key: &str, v: Value) {
        self.params.insert(format!("{}{key}", self.prefix), v);
    }
}

/// Leaves exercised by the leaf-dependent checks.
#[derive(Clone, Debug)]
pub struct TestedLeaf {
    pub label: String,
    pub leaf: LeafParameter,
}

fn label_of(w: &WeylElement) -> String {
    w.to_string()
}

/// GROUP(n): `e`, `s1` and (n >= 3) the word `1 2`; GRASS(p,q), n <= 4: the searched representatives.
pub fn tested_leaves(inst: &SpaceInstance) -> Result<Vec<TestedLeaf>> {
    match inst.kind {
        Kind::Group { n } => {
            let mut words = vec![vec![], vec![1]];
            if n >= 3 {
                words.push(vec![1, 2]);
            }
            words
                .into_iter()
                .map(|word| {
                    let w = WeylElement::from_word(n, &word)?;
                    Ok(TestedLeaf { label: label_of(&w), leaf: LeafParameter::group(inst, &w)? })
                })
                .collect()
        }
        Kind::Grass { p, q } if p + q <= 4 => compact::grass_leaf_search(inst)?
            .into_iter()
            .map(|(w1, label)| {
                Ok(TestedLeaf { label: label_of(&WeylElement::from_perm(&label)), leaf: LeafParameter::new(inst, w1) })
            })
            .collect(),
        Kind::Grass { .. } => Ok(vec![TestedLeaf { label: "e".into(), leaf: LeafParameter::identity(inst) }]),
    }
}

fn inv(m: &Mat) -> Result<Mat> {
    linalg::inverse(m).ok_or_else(|| Error::Singular("sample".into()))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs()
}

/// Random element of `T_w` for a leaf.
fn sample_t_w<R: Rng + ?Sized>(inst: &SpaceInstance, leaf: &LeafParameter, rng: &mut R) -> Result<Mat> {
    let basis = hamiltonian::t_w_basis(inst, leaf)?;
    let mut x = Mat::zeros(inst.n_total, inst.n_total);
    for b in &basis {
        x += b * c(rng.random_range(-3.0..3.0), 0.0);
    }
    Ok(linalg::expm(&x))
}

/// Null space of a form matrix in a frame; a matrix that is zero to rounding is fully degenerate.
fn rank_subspace(frame: &[Mat], m: &linalg::RMat, rel_tol: f64) -> Vec<Mat> {
    if linalg::singular_values(m).first().map_or(true, |&s| s < 1e-12) {
        return frame.to_vec();
    }
    let null = linalg::nullspace(m, rel_tol);
    (0..null.ncols()).map(|k| linalg::combine(frame, &null.column(k).into_owned())).collect()
}

// ---------------------------------------------------------------- core

fn suite_core(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let projectors = [
        Projector::Orth(Space::U),
        Projector::Orth(Space::IU),
        Projector::Orth(Space::P),
        Projector::Orth(Space::K),
        Projector::Orth(Space::G0),
        Projector::Orth(Space::IG0),
        Projector::Orth(Space::A0),
        Projector::Orth(Space::T0),
        Projector::IwasawaU,
        Projector::IwasawaNA,
        Projector::IwasawaG0,
        Projector::IwasawaNIH0,
    ];
    let tags = [GroupTag::G, GroupTag::U, GroupTag::G0, GroupTag::K, GroupTag::NMinus, GroupTag::BPlus];
    let spaces = [Space::G, Space::U, Space::G0, Space::K, Space::P, Space::IP, Space::A0, Space::T0];
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let a = inst.sample_alg(Space::G, &mut rng);
        let b = inst.sample_alg(Space::G, &mut rng);
        let z = inst.sample_alg(Space::G, &mut rng);
        t.record("nijenhuis", 1e-10, Ok(frob(&nijenhuis(&a, &b))));
        t.record(
            "hilbert_skew",
            1e-12,
            Ok((form(&hilbert_transform(&a), &b) + form(&a, &hilbert_transform(&b))).norm()),
        );
        let zu = inst.sample_alg(Space::U, &mut rng);
        t.record("diagram_u", 1e-13, Ok(frob(&(inst.pr_u(&(&zu * IM)) - hilbert_transform(&zu)))));
        let zg = inst.sample_alg(Space::G0, &mut rng);
        t.record("diagram_g0", 1e-13, Ok(frob(&(inst.pr_g0(&(&zg * IM)) - hilbert_transform(&zg)))));
        for p in &projectors {
            let pz = inst.project(p, &z);
            t.record("projector_idempotent", 1e-14, Ok(frob(&(inst.project(p, &pz) - &pz))));
            if let Projector::Orth(_) = p {
                let pb = inst.project(p, &b);
                t.record("projector_orthogonal", 1e-12, Ok(linalg::re_inner(&pz, &(&b - pb))));
            }
        }
        t.record(
            "form_ad_invariance",
            1e-12,
            Ok((form(&commutator(&z, &a), &b) + form(&a, &commutator(&z, &b))).norm()),
        );
        t.record(
            "involutions_commute",
            1e-12,
            Ok(frob(&(inst.theta(&inst.sigma_alg(&z)) - inst.sigma_alg(&inst.theta(&z))))),
        );
        for tag in tags {
            let g = inst.sample_grp(tag, &mut rng);
            t.record("group_sample_membership", 1e-10, Ok(inst.grp_residual(tag, &g)));
        }
        for sp in spaces {
            let x = inst.sample_alg(sp, &mut rng);
            t.record("algebra_sample_membership", 1e-12, Ok(inst.alg_residual(sp, &x)));
        }
    }
    if samples == 0 {
        return;
    }
    // Weyl data, once per block size
    let n = inst.block_size();
    let mut rng = rng_for(seed, u64::MAX);
    let diag: Vec<C64> = (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let h = linalg::diag(&diag);
    let datum = match RootDatum::new(n) {
        Ok(d) => d,
        Err(e) => {
            t.record("weyl_conjugation_diagonal", 1e-12, Err(e));
            return;
        }
    };
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..6 {
        let mut next = Vec::new();
        for w in &frontier {
            for j in 1..n {
                let mut v = w.clone();
                v.push(j);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    for w in &words {
        let r = weyl::representative(&datum, w).and_then(|rep| {
            let m = &rep * &h * dagger(&rep);
            Ok(frob(&(&m - lie_core::diagonal_part(&m))))
        });
        t.record("weyl_conjugation_diagonal", 1e-12, r);
    }
    let longest = weyl::longest_perm(n);
    for p in all_perms(n) {
        let w = WeylElement::from_perm(&p);
        let ok = weyl::minimal_prefix_extension(&w, n).and_then(|word| {
            Ok(word.len() == weyl::inversions(&longest)
                && word[..w.word.len()] == w.word[..]
                && weyl::perm_of_word(n, &word)? == longest)
        });
        t.flag("weyl_length_additivity", ok);
    }
    for j in 1..n {
        t.flag("weyl_root_norm", datum.root_norm(j).map(|v| v == 2));
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

// ------------------------------------------------------- factorization

fn suite_factorization(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let leaves = tested_leaves(inst).unwrap_or_default();
    let nontrivial: Option<&TestedLeaf> = leaves.iter().rev().find(|l| l.label != "e");
    let n = inst.block_size();
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let g = inst.sample_grp(GroupTag::G, &mut rng);
        let k = inst.sample_grp(GroupTag::K, &mut rng);
        t.record(
            "iwasawa_roundtrip",
            1e-10,
            iwasawa(inst, &g).map(|f| frob(&(f.product() - &g)) / (1.0 + frob(&g))),
        );
        t.record(
            "u_equivariance",
            1e-12,
            (|| Ok(frob(&(u_of(inst, &(&g * &k))? - u_of(inst, &g)? * &k))))(),
        );
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        for l in &leaves {
            let r = (|| {
                let tw = sample_t_w(inst, &l.leaf, &mut rng)?;
                let w1 = &l.leaf.w1;
                let moved = dagger(w1) * &tw * w1;
                Ok(frob(&(u_of(inst, &(w1 * moved * &g0))? - &tw * u_of(inst, &(w1 * &g0))?)))
            })();
            t.record("dressing_t_w", 1e-12, r);
        }
        // top stratum and a random lower cell
        let p: Vec<usize> = {
            let mut perm: Vec<usize> = (0..n).collect();
            for a in (1..n).rev() {
                perm.swap(a, rng.random_range(0..=a));
            }
            perm
        };
        let w = WeylElement::from_perm(&p);
        let lower = inst.sample_grp(GroupTag::NMinus, &mut rng);
        let upper = inst.sample_grp(GroupTag::BPlus, &mut rng);
        let cell = &lower * inst.diagonal_lift(&w.rep) * &upper;
        for m in [&g, &cell] {
            let r = factorization::bruhat_cells(inst, m)
                .map(|cells| cells.iter().all(|c| c.is_identity()) == birkhoff(inst, m).is_ok());
            t.flag("bruhat_iff_birkhoff", r);
        }
        t.flag(
            "bruhat_reads_cell",
            bruhat_cell(&inst.split_blocks(&cell)[0]).map(|c| c.perm == w.perm),
        );
        let u = inst.sample_grp(GroupTag::U, &mut rng);
        t.record(
            "birkhoff_reconstruction",
            1e-10,
            birkhoff(inst, &u).map(|f| frob(&(f.product() - &u))),
        );
        t.flag(
            "layer_constant_under_k",
            (|| Ok(layer_of(inst, &u)? == layer_of(inst, &(&u * &k))?))(),
        );
        if let Some(l) = nontrivial {
            let r = (|| {
                let v = compact::u_tilde(inst, &l.leaf.w1, &g0)?;
                Ok(layer_of(inst, &v)? == layer_of(inst, &(&v * &k))?)
            })();
            t.flag("layer_constant_under_k", r);
        }
    }
}

// --------------------------------------------------------- hamiltonian

/// `w1` choices for closedness: identity, a generic unitary, a nontrivial leaf.
fn closedness_choices(inst: &SpaceInstance, seed: u64) -> Vec<(String, Mat)> {
    let mut out = vec![("e".to_string(), inst.identity())];
    let mut rng = rng_for(seed, u64::MAX - 1);
    out.push(("generic".into(), inst.sample_grp(GroupTag::U, &mut rng)));
    if let Some(l) = tested_leaves(inst).ok().and_then(|v| v.into_iter().rev().find(|l| l.label != "e")) {
        out.push((format!("leaf {}", l.label), l.leaf.w1));
    }
    out
}

fn suite_hamiltonian(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let choices = closedness_choices(inst, seed);
    let leaves = tested_leaves(inst).unwrap_or_default();
    t.param("step", json!(DEFAULT_STEP));
    t.param("closedness_w1", json!(choices.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>()));
    t.param("leaves", json!(leaves.iter().map(|l| l.label.clone()).collect::<Vec<_>>()));
    let mut skipped = 0usize;
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        let xs: Vec<Mat> = (0..3).map(|_| inst.sample_alg(Space::G0, &mut rng)).collect();
        for (_, w1) in &choices {
            let h = DEFAULT_STEP;
            let full = d_omega_fd(inst, w1, &g0, [&xs[0], &xs[1], &xs[2]], h);
            let half = d_omega_fd(inst, w1, &g0, [&xs[0], &xs[1], &xs[2]], h / 2.0);
            t.record("closedness", 1e-4, full.as_ref().map(|v| *v).map_err(clone_err));
            match (full, half) {
                (Ok(a), Ok(b)) if a.abs() > RICHARDSON_FLOOR => {
                    let ratio = a / b;
                    let out = if ratio < 2.5 { 2.5 - ratio } else if ratio > 6.0 { ratio - 6.0 } else { 0.0 };
                    t.record("richardson_ratio", 0.0, Ok(if out.is_nan() { f64::INFINITY } else { out }));
                }
                (Ok(_), Ok(_)) => skipped += 1,
                (a, b) => t.record("richardson_ratio", 0.0, a.and(b)),
            }
            let x = inst.sample_alg(Space::P, &mut rng);
            let y = inst.sample_alg(Space::P, &mut rng);
            let k = inst.sample_grp(GroupTag::K, &mut rng);
            let v1 = TangentVector::new(g0.clone(), x.clone());
            let v2 = TangentVector::new(g0.clone(), y.clone());
            t.record(
                "k_invariance",
                1e-12,
                (|| Ok(rel(hamiltonian::omega(inst, w1, &v1, &v2)?, hamiltonian::omega(inst, w1, &v1.rebase(&k), &v2.rebase(&k))?)))(),
            );
            t.record(
                "factored_path",
                1e-10,
                (|| Ok(rel(hamiltonian::omega_at(inst, w1, &g0, &x, &y)?, hamiltonian::omega_factored(inst, w1, &g0, &x, &y)?)))(),
            );
            t.record(
                "base_point_change",
                1e-10,
                (|| {
                    let kinv = dagger(&k);
                    let moved = &kinv * &g0 * &k;
                    let a = hamiltonian::omega_at(inst, &(w1 * &k), &moved, &(&kinv * &x * &k), &(&kinv * &y * &k))?;
                    Ok(rel(a, hamiltonian::omega_at(inst, w1, &g0, &x, &y)?))
                })(),
            );
            t.record(
                "degeneracy_kernel",
                1e-8,
                (|| {
                    let frame = inst.frame(Space::P);
                    let m = hamiltonian::omega_matrix(inst, w1, &g0)?;
                    let kernel = rank_subspace(&frame, &m, 1e-8);
                    let g0_inv = inv(&g0)?;
                    let expected: Vec<Mat> = hamiltonian::stabilizer_algebra(inst, w1)
                        .iter()
                        .map(|b| inst.orth(Space::P, &(&g0_inv * b * &g0)))
                        .collect();
                    Ok(linalg::subspace_distance(&kernel, &expected))
                })(),
            );
        }
        for l in &leaves {
            let y = inst.sample_alg(Space::P, &mut rng);
            let r = (|| {
                let w1 = &l.leaf.w1;
                let mut worst = 0.0f64;
                for x in hamiltonian::t_w_basis(inst, &l.leaf)? {
                    let pulled = dagger(w1) * &x * w1;
                    let lhs = hamiltonian::omega(inst, w1, &kappa_field(inst, &pulled, &g0)?, &TangentVector::new(g0.clone(), y.clone()))?;
                    let h = 1e-5;
                    let phi = |e: f64| hamiltonian::momentum_component(inst, w1, &x, &(&g0 * linalg::expm(&linalg::scale(&y, e))));
                    let d = (phi(h)? - phi(-h)?) / (2.0 * h);
                    worst = worst.max((lhs - d).abs());
                }
                Ok(worst)
            })();
            t.record("momentum_identity", 1e-6, r);
            let r = (|| {
                let tw = sample_t_w(inst, &l.leaf, &mut rng)?;
                let moved = hamiltonian::torus_act(inst, &l.leaf, &tw, &g0)?;
                let x = inst.sample_alg(Space::P, &mut rng);
                let a = hamiltonian::omega_at(inst, &l.leaf.w1, &g0, &x, &y)?;
                let b = hamiltonian::omega_at(inst, &l.leaf.w1, &moved, &x, &y)?;
                let m0 = hamiltonian::momentum(inst, &l.leaf, &g0)?.coefficients;
                let m1 = hamiltonian::momentum(inst, &l.leaf, &moved)?.coefficients;
                let dm = m0.iter().zip(&m1).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
                Ok((rel(a, b), dm))
            })();
            t.record("torus_preserves_omega", 1e-10, r.as_ref().map(|v| v.0).map_err(clone_err));
            t.record("momentum_torus_invariant", 1e-10, r.map(|v| v.1));
        }
    }
    t.param("richardson_skipped", json!(skipped));
}

fn clone_err(e: &Error) -> Error {
    Error::Parse(e.to_string())
}

// ---------------------------------------------------------- noncompact

fn suite_noncompact(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let dim_p = inst.dim(Space::P);
    let dim_a0 = inst.dim(Space::A0);
    let a0_frame = inst.frame(Space::A0);
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        let phi = inst.sample_alg(Space::P, &mut rng);
        let psi = inst.sample_alg(Space::P, &mut rng);
        t.record(
            "leaf_form_vs_omega",
            1e-8,
            (|| {
                let x = noncompact::omega_op(inst, &g0, &phi)?;
                let y = noncompact::omega_op(inst, &g0, &psi)?;
                let lhs = noncompact::leaf_inverse_form(inst, &g0, &x, &y)?;
                Ok(rel(lhs, hamiltonian::omega_at(inst, &inst.identity(), &g0, &x, &y)?))
            })(),
        );
        t.flag(
            "regularity_rank",
            noncompact::omega_op_matrix(inst, &g0).map(|m| linalg::rank(&m, 1e-10) == dim_p - dim_a0),
        );
        t.record(
            "tensor_skew",
            1e-12,
            (|| {
                let a = TangentVector::new(g0.clone(), phi.clone());
                let b = TangentVector::new(g0.clone(), psi.clone());
                Ok(noncompact::pi_noncompact(inst, &a, &b)? + noncompact::pi_noncompact(inst, &b, &a)?)
            })(),
        );
        t.record(
            "casimir_leaf_derivative",
            1e-6,
            (|| {
                let x = noncompact::omega_op(inst, &g0, &phi)?;
                let h = 1e-5;
                let plus = noncompact::casimir(inst, &(&g0 * linalg::expm(&linalg::scale(&x, h))))?;
                let minus = noncompact::casimir(inst, &(&g0 * linalg::expm(&linalg::scale(&x, -h))))?;
                Ok(frob(&(plus - minus)) / (2.0 * h))
            })(),
        );
        let top = TOperator::new(inst, &g0);
        let top = match top {
            Ok(v) => v,
            Err(e) => {
                t.record("t_paths", 1e-11, Err(e));
                continue;
            }
        };
        let x = inst.sample_alg(Space::U, &mut rng);
        let y = inst.sample_alg(Space::G0, &mut rng);
        t.record("t_paths", 1e-11, Ok(frob(&(top.apply(inst, &x) - top.apply_composed(inst, &x)))));
        t.record(
            "t_adjoint",
            1e-11,
            Ok(rel(form_re(&top.apply(inst, &x), &y), form_re(&x, &top.adjoint(inst, &y)))),
        );
        let (kd, cd) = top.kernel_cokernel_dims(inst);
        t.flag("kernel_cokernel_dims", Ok(kd == dim_a0 && cd == dim_a0));
        for y0 in &a0_frame {
            t.record("cokernel", 1e-10, Ok(frob(&top.adjoint(inst, &top.cokernel_element(inst, y0)))));
        }
        let mut xs = x.clone();
        for a in &a0_frame {
            let ia = a * IM;
            xs -= &ia * c(linalg::re_inner(&xs, &ia), 0.0);
        }
        t.record(
            "staged_roundtrip",
            1e-9,
            top.solve_staged(inst, &top.apply(inst, &xs)).map(|back| frob(&(back - &xs))),
        );
        let a0 = linalg::expm(&inst.sample_alg(Space::A0, &mut rng));
        t.record(
            "section_invariance",
            1e-12,
            (|| Ok(frob(&(noncompact::horizontal_section(inst, &(&a0 * &g0))? - noncompact::horizontal_section(inst, &g0)?))))(),
        );
        t.record(
            "horizontality",
            1e-8,
            (|| {
                let h = 1e-5;
                let s = noncompact::horizontal_section(inst, &g0)?;
                let sp = noncompact::horizontal_section(inst, &(&g0 * linalg::expm(&linalg::scale(&phi, h))))?;
                let sm = noncompact::horizontal_section(inst, &(&g0 * linalg::expm(&linalg::scale(&phi, -h))))?;
                // the section is defined up to K; the curve tangent only sees the p-part
                let v = hamiltonian::curve_tangent(inst, &s, &sp, &sm, h)?;
                let u = iwasawa(inst, &s)?.u;
                let vu = &u * v * dagger(&u);
                Ok(a0_frame.iter().map(|y0| linalg::re_inner(&vu, y0).abs()).fold(0.0, f64::max))
            })(),
        );
        let mut orbit = Vec::new();
        if let Ok(g0_inv) = inv(&g0) {
            for y0 in &a0_frame {
                orbit.push(inst.orth(Space::P, &(&g0_inv * y0 * &g0)));
            }
        }
        for o in &orbit {
            t.flag(
                "orbit_not_leaf_tangent",
                noncompact::leaf_tangent_test(inst, &TangentVector::new(g0.clone(), o.clone())).map(|r| !r.0),
            );
        }
        t.flag(
            "anchor_image_leaf_tangent",
            (|| Ok(noncompact::leaf_tangent_test(inst, &TangentVector::new(g0.clone(), noncompact::omega_op(inst, &g0, &phi)?))?.0))(),
        );
    }
}

// ------------------------------------------------------------- compact

fn suite_compact(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let leaves = tested_leaves(inst).unwrap_or_default();
    t.param("leaves", json!(leaves.iter().map(|l| l.label.clone()).collect::<Vec<_>>()));
    let ip = inst.frame(Space::IP);
    let ops: Vec<Result<HwOperator>> = leaves.iter().map(|l| HwOperator::new(inst, &l.leaf.w_hat)).collect();
    let stabs: Vec<Vec<Mat>> = leaves.iter().map(|l| hamiltonian::stabilizer_algebra(inst, &l.leaf.w1)).collect();
    for (l, op) in leaves.iter().zip(&ops) {
        t.record(
            "adw_reassembly",
            1e-12,
            compact::ad_w_blocks(inst, &l.leaf.w_hat)
                .map(|b| frob(&(b.assemble() - compact::ad_w_full(inst, &l.leaf.w_hat))) + b.mixing),
        );
        if l.label == "e" {
            if let Ok(op) = op {
                t.record("hw_identity_c_zero", 1e-14, Ok(op.c_sigma.norm()));
            }
        }
    }
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let u = inst.sample_grp(GroupTag::U, &mut rng);
        let phi = inst.sample_alg(Space::IP, &mut rng);
        let psi = inst.sample_alg(Space::IP, &mut rng);
        t.record(
            "tensor_skew",
            1e-12,
            (|| {
                let a = TangentVector::new(u.clone(), phi.clone());
                let b = TangentVector::new(u.clone(), psi.clone());
                Ok(compact::pi_compact(inst, &a, &b)? + compact::pi_compact(inst, &b, &a)?)
            })(),
        );
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        let k = inst.sample_grp(GroupTag::K, &mut rng);
        let y = inst.sample_alg(Space::P, &mut rng);
        for ((l, op), stab) in leaves.iter().zip(&ops).zip(&stabs) {
            let w1 = &l.leaf.w1;
            t.record(
                "kernel",
                1e-8,
                (|| {
                    let ut = compact::u_tilde(inst, w1, &g0)?;
                    let kernel = rank_subspace(&ip, &compact::omega_op_matrix(inst, &ut), 1e-8);
                    let g0_inv = inv(&g0)?;
                    let expected: Vec<Mat> =
                        stab.iter().map(|b| inst.orth(Space::P, &(&g0_inv * b * &g0)) * IM).collect();
                    Ok(linalg::subspace_distance(&kernel, &expected))
                })(),
            );
            t.record(
                "pushforward_fd",
                1e-6,
                (|| {
                    let push = compact::u_tilde_pushforward(inst, w1, &TangentVector::new(g0.clone(), y.clone()))?;
                    let h = 1e-5;
                    let up = compact::u_tilde(inst, w1, &(&g0 * linalg::expm(&linalg::scale(&y, h))))?;
                    let um = compact::u_tilde(inst, w1, &(&g0 * linalg::expm(&linalg::scale(&y, -h))))?;
                    let fd = inst.orth(Space::IP, &(dagger(&push.base) * (up - um) * c(1.0 / (2.0 * h), 0.0)));
                    Ok(frob(&(fd - &push.vec)))
                })(),
            );
            t.record(
                "pushforward_adjoint",
                1e-10,
                (|| {
                    let push = compact::u_tilde_pushforward(inst, w1, &TangentVector::new(g0.clone(), y.clone()))?;
                    let lhs = form_re(&push.vec, &phi);
                    Ok(rel(lhs, form_re(&y, &compact::pushforward_adjoint(inst, &push.base, &phi))))
                })(),
            );
            if !stab.is_empty() {
                let coeffs: Vec<f64> = stab.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
                t.record(
                    "r_invariance",
                    1e-8,
                    (|| {
                        let mut b = Mat::zeros(inst.n_total, inst.n_total);
                        for (s, a) in stab.iter().zip(&coeffs) {
                            b += s * c(*a, 0.0);
                        }
                        let h = 1e-5;
                        let up = compact::u_tilde(inst, w1, &(linalg::expm(&linalg::scale(&b, h)) * &g0))?;
                        let um = compact::u_tilde(inst, w1, &(linalg::expm(&linalg::scale(&b, -h)) * &g0))?;
                        Ok(frob(&(up - um)) / (2.0 * h))
                    })(),
                );
            }
            t.record(
                "k_equivariance",
                1e-12,
                (|| Ok(frob(&(compact::u_tilde(inst, w1, &(&g0 * &k))? - compact::u_tilde(inst, w1, &g0)? * &k))))(),
            );
            t.record(
                "t_w_equivariance",
                1e-10,
                (|| {
                    let tw = sample_t_w(inst, &l.leaf, &mut rng)?;
                    let moved = dagger(w1) * &tw * w1 * &g0;
                    Ok(frob(&(compact::u_tilde(inst, w1, &moved)? - &tw * compact::u_tilde(inst, w1, &g0)?)))
                })(),
            );
            t.flag(
                "leaf_labels",
                (|| {
                    let layer = layer_of(inst, &compact::u_tilde(inst, w1, &g0)?)?;
                    let want = l.leaf.w.as_ref().ok_or_else(|| Error::Membership { tag: "N_U(T)".into(), residual: f64::NAN })?;
                    Ok(layer.iter().zip(want).all(|(a, b)| a.perm == b.perm))
                })(),
            );
            t.record("lemma_pushforward", 1e-9, compact::lemma_pushforward_residual(inst, w1, &g0, &y));
            t.record(
                "z_paths",
                1e-10,
                (|| Ok(frob(&(compact::z_operator(inst, w1, &g0, &y)? - compact::z_operator_defining(inst, w1, &g0, &y)?))))(),
            );
            t.record(
                "z_upper_part",
                1e-12,
                compact::z_operator(inst, w1, &g0, &y).map(|z| frob(&lie_core::upper(&z))),
            );
            let op = match op {
                Ok(op) => op,
                Err(e) => {
                    t.record("hw_solver_identity", 1e-10, Err(clone_err(e)));
                    continue;
                }
            };
            let r = RVec::from_fn(op.dim(), |_, _| rng.random_range(-1.0..1.0));
            t.record("hw_solver_identity", 1e-10, Ok(op.solver_residual(&r)));
            let chi1 = inst.sample_alg(Space::BMinus, &mut rng);
            let chi2 = inst.sample_alg(Space::BMinus, &mut rng);
            t.record("lemma_borel", 1e-10, compact::lemma_borel_residual(inst, op, &chi1));
            t.record(
                "hw_real_linearity",
                1e-12,
                (|| {
                    let (a, b) = (1.7, -0.6);
                    let d1 = compact::orth_i_g0_w(inst, &l.leaf.w_hat, &chi1);
                    let d2 = compact::orth_i_g0_w(inst, &l.leaf.w_hat, &chi2);
                    let lhs = op.apply(&(&d1 * c(a, 0.0) + &d2 * c(b, 0.0)))?;
                    let rhs = op.apply(&d1)? * c(a, 0.0) + op.apply(&d2)? * c(b, 0.0);
                    Ok(frob(&(lhs - rhs)))
                })(),
            );
            t.record(
                "leaf_form_vs_pinv",
                1e-8,
                (|| {
                    let ut = compact::u_tilde(inst, w1, &g0)?;
                    let x = compact::omega_op(inst, &ut, &phi);
                    let z = compact::omega_op(inst, &ut, &psi);
                    let a = compact::leaf_form(inst, &l.leaf, &g0, &TangentVector::new(ut.clone(), x.clone()), &TangentVector::new(ut.clone(), z.clone()))?;
                    Ok(rel(a, compact::leaf_inverse_form(inst, &ut, &x, &z)))
                })(),
            );
        }
    }
}

// ----------------------------------------------------------------- iso

/// Pullback of the compact leaf form along `u~` and the noncompact form, at one sample.
pub fn iso_pair(inst: &SpaceInstance, leaf: &LeafParameter, g0: &Mat, x: &Mat, y: &Mat) -> Result<(f64, f64)> {
    let w1 = &leaf.w1;
    let v1 = compact::u_tilde_pushforward(inst, w1, &TangentVector::new(g0.clone(), x.clone()))?;
    let v2 = compact::u_tilde_pushforward(inst, w1, &TangentVector::new(g0.clone(), y.clone()))?;
    let pulled = compact::leaf_form(inst, leaf, g0, &v1, &v2)?;
    Ok((pulled, hamiltonian::omega_at(inst, w1, g0, x, y)?))
}

fn suite_iso(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let leaves = tested_leaves(inst).unwrap_or_default();
    t.param("leaves", json!(leaves.iter().map(|l| l.label.clone()).collect::<Vec<_>>()));
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let g0 = inst.sample_grp(GroupTag::G0, &mut rng);
        let x = inst.sample_alg(Space::P, &mut rng);
        let y = inst.sample_alg(Space::P, &mut rng);
        for l in &leaves {
            let r = iso_pair(inst, &l.leaf, &g0, &x, &y);
            t.record("pullback_equals_omega", 1e-7, r.as_ref().map(|(a, b)| a - b).map_err(clone_err));
            t.record("pullback_equals_negative_omega", 1e-7, r.as_ref().map(|(a, b)| a + b).map_err(clone_err));
            t.record(
                "pinv_path_agrees",
                1e-8,
                (|| {
                    let (a, _) = r.as_ref().map_err(clone_err)?;
                    let v1 = compact::u_tilde_pushforward(inst, &l.leaf.w1, &TangentVector::new(g0.clone(), x.clone()))?;
                    let v2 = compact::u_tilde_pushforward(inst, &l.leaf.w1, &TangentVector::new(g0.clone(), y.clone()))?;
                    Ok(rel(*a, LeafInverse::new(inst, &v1.base).eval(&v1.vec, &v2.vec)))
                })(),
            );
        }
    }
}

// --------------------------------------------------------------- group

fn random_zeta<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
}

/// Every reduced word of length at most 3 in `S_n`.
pub fn short_reduced_words(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in all_perms(n) {
        if weyl::inversions(&p) <= 3 {
            out.extend(weyl::all_reduced_words(&p));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn suite_group(t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    let n = match inst.kind {
        Kind::Group { n } => n,
        Kind::Grass { .. } => {
            t.param("applicable", json!(false));
            return;
        }
    };
    let words = short_reduced_words(n);
    let cap = samples.min(PULLBACK_CAP);
    t.param("words", json!(words.iter().map(|w| weyl::format_word(w)).collect::<Vec<_>>()));
    t.param("pullback_samples", json!(cap));
    let su = |x: &Mat| inst.split_blocks(x)[0].clone();
    let mut factors: Vec<f64> = Vec::new();
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let u = inst.sample_grp(GroupTag::U, &mut rng);
        let phi = su(&inst.sample_alg(Space::U, &mut rng));
        let psi = su(&inst.sample_alg(Space::U, &mut rng));
        let k = group_case::to_k(inst, &u);
        t.record(
            "big_pi_identification",
            1e-9,
            (|| {
                let a = TangentVector::new(u.clone(), group_case::lift_covector(inst, &u, &phi));
                let b = TangentVector::new(u.clone(), group_case::lift_covector(inst, &u, &psi));
                Ok(rel(group_case::big_pi_k(&k, &phi, &psi), compact::pi_compact(inst, &a, &b)?))
            })(),
        );
        let torus = su(&inst.sample_grp(GroupTag::T, &mut rng));
        t.record("pi_k_vanishes_on_torus", 1e-12, Ok(group_case::pi_k(&torus, &phi, &psi)));
        t.record("pi_k_vanishes_at_e", 1e-12, Ok(group_case::pi_k(&linalg::eye(n), &phi, &psi)));
        let (lhs, rhs) = group_case::w0_translate_check(&k, &phi, &psi);
        t.record("w0_translation", 1e-10, Ok(rel(lhs, rhs)));
        // SU(2) closed form
        let z = random_zeta(&mut rng);
        t.record(
            "su2_closed_form",
            1e-12,
            (|| {
                let k2 = group_case::su2_k_of_zeta(z);
                let f = birkhoff_single(&k2)?;
                let a = (1.0 + z.norm_sqr()).powf(-0.5);
                let l = linalg::from_rows(&[&[c(1.0, 0.0), c(0.0, 0.0)], &[z, c(1.0, 0.0)]]);
                Ok(frob(&(f.product() - &k2))
                    + frob(&(&f.a - linalg::real_diag(&[a, 1.0 / a])))
                    + frob(&(&f.l - l))
                    + frob(&(dagger(&k2) * &k2 - linalg::eye(2))))
            })(),
        );
        for (wi, word) in words.iter().enumerate() {
            let zeta: Vec<C64> = word.iter().map(|_| random_zeta(&mut rng)).collect();
            let coords = match LeafCoordinates::new(n, word.clone(), zeta) {
                Ok(c) => c,
                Err(e) => {
                    t.record("lu_membership", 1e-10, Err(e));
                    continue;
                }
            };
            t.record(
                "lu_membership",
                1e-10,
                (|| {
                    let l = group_case::lu_coordinates_to_l(&coords)?;
                    let w = coords.weyl_element()?.rep;
                    let conj = &w * &l * dagger(&w);
                    let diag = lie_core::diagonal_part(&l) - linalg::eye(n);
                    Ok(frob(&lie_core::upper(&l)) + frob(&diag) + frob(&lie_core::lower(&conj)))
                })(),
            );
            t.record(
                "a_product",
                1e-10,
                (|| {
                    let a = group_case::lu_a_product(&coords)?;
                    let b = birkhoff_single(&coords.product()?)?.a;
                    let l = group_case::lu_coordinates_to_l(&coords)?;
                    Ok(frob(&(&a - b)) + frob(&(&a - group_case::a_from_iwasawa(&l)?)))
                })(),
            );
            let ts: Vec<C64> = (0..n).map(|_| C64::from_polar(1.0, rng.random_range(-3.0..3.0))).collect();
            t.record(
                "torus_rotation",
                1e-10,
                (|| {
                    let rotated = group_case::torus_rotate(&coords, &ts)?;
                    let td = linalg::diag(&ts);
                    let want = &td * group_case::lu_coordinates_to_l(&coords)? * dagger(&td);
                    let mut r = frob(&(group_case::lu_coordinates_to_l(&rotated)? - want));
                    for (a, b) in coords.zeta.iter().zip(&rotated.zeta) {
                        r += (a.norm() - b.norm()).abs();
                    }
                    let ca = group_case::lu_form_coefficients(&coords)?;
                    let cb = group_case::lu_form_coefficients(&rotated)?;
                    r += ca.iter().zip(&cb).map(|(p, q)| (p - q).abs()).sum::<f64>();
                    Ok(r)
                })(),
            );
            if !word.is_empty() {
                let (phi2, psi2) = (su(&inst.sample_alg(Space::U, &mut rng)), su(&inst.sample_alg(Space::U, &mut rng)));
                let r = group_case::translation_check(&coords, &phi2, &psi2);
                t.flag(
                    "translation_label",
                    r.as_ref().map(|(layer, _)| layer.iter().all(|w| w.is_identity())).map_err(clone_err),
                );
                t.record("translation_form", 1e-7, r.map(|(_, res)| res));
                match group_case::momentum_reconciliation(&coords) {
                    Ok(v) => factors.extend(v),
                    Err(e) => t.record("momentum_factor_constant", 1e-8, Err(e)),
                }
            }
            if i < cap && !word.is_empty() && (i + wi) % 2 == 0 {
                t.record(
                    "pullback_diagonal",
                    2e-5,
                    (|| {
                        let om = group_case::pulled_back_form(&coords, 1e-5)?;
                        let (h, holo) = group_case::complex_coefficients(&om);
                        let want = group_case::lu_form_coefficients(&coords)?;
                        let mut worst = holo;
                        for j in 0..h.len() {
                            for kk in 0..h.len() {
                                let target = if j == kk { c(want[j], 0.0) } else { c(0.0, 0.0) };
                                worst = worst.max((h[j][kk] - target).norm());
                            }
                        }
                        Ok(worst)
                    })(),
                );
            }
        }
    }
    if samples == 0 {
        return;
    }
    if let Some(&first) = factors.first() {
        let dev = factors.iter().map(|f| (f - first).abs()).fold(0.0, f64::max);
        t.record("momentum_factor_constant", 1e-8, Ok(dev));
        t.param("momentum_factor", json!(first));
    }
    t.record(
        "calibration_ratio",
        1e-6,
        (|| {
            let coords = LeafCoordinates::new(2, vec![1], vec![c(0.0, 0.0)])?;
            let om = group_case::pulled_back_form(&coords, 1e-5)?;
            let (h, _) = group_case::complex_coefficients(&om);
            let ratio = h[0][0].re / group_case::lu_form_coefficients(&coords)?[0];
            Ok(ratio - 1.0)
        })(),
    );
    t.record(
        "haar_su2",
        1e-12,
        (|| {
            let mut worst = 0.0f64;
            let mut rng = rng_for(seed, u64::MAX - 2);
            for _ in 0..samples.min(50) {
                let coords = LeafCoordinates::new(2, vec![1], vec![random_zeta(&mut rng)])?;
                worst = worst.max((group_case::haar_density(&coords)? - 1.0).abs());
            }
            Ok(worst)
        })(),
    );
}

// ------------------------------------------------------------- driver

fn run_one(suite: Suite, t: &mut Tracker, inst: &SpaceInstance, samples: usize, seed: u64) {
    match suite {
        Suite::Core => suite_core(t, inst, samples, seed),
        Suite::Factorization => suite_factorization(t, inst, samples, seed),
        Suite::Hamiltonian => suite_hamiltonian(t, inst, samples, seed),
        Suite::Noncompact => suite_noncompact(t, inst, samples, seed),
        Suite::Compact => suite_compact(t, inst, samples, seed),
        Suite::Iso => suite_iso(t, inst, samples, seed),
        Suite::Group => suite_group(t, inst, samples, seed),
        Suite::All => {
            for s in Suite::EACH {
                t.prefix = format!("{}.", s.name());
                run_one(s, t, inst, samples, seed);
            }
            t.prefix.clear();
        }
    }
}

/// Runs a suite. Failures are reported in the checks, never raised.
pub fn run_suite(suite: Suite, inst: &SpaceInstance, samples: usize, seed: u64, overrides: &Overrides) -> SuiteReport {
    run_suite_filtered(suite, inst, samples, seed, overrides, &[])
}

/// As [`run_suite`], restricted to the named checks (unprefixed names; empty = all).
pub fn run_suite_filtered(
    suite: Suite,
    inst: &SpaceInstance,
    samples: usize,
    seed: u64,
    overrides: &Overrides,
    only: &[&str],
) -> SuiteReport {
    let start = Instant::now();
    let mut t = Tracker { overrides, only, prefix: String::new(), checks: Vec::new(), params: BTreeMap::new() };
    t.params.insert("n".into(), json!(inst.n_total));
    t.params.insert("samples".into(), json!(samples));
    t.params.insert("seed".into(), json!(seed));
    t.params.insert("tol_scale".into(), json!(overrides.scale));
    if samples == 0 {
        t.params.insert("vacuous".into(), json!(true));
        t.params.insert("warning".into(), json!("zero samples: no check was exercised"));
    }
    run_one(suite, &mut t, inst, samples, seed);
    let mut checks = t.checks;
    for c in &mut checks {
        c.pass = c.max_residual <= c.tol;
    }
    let pass = checks.iter().all(|c| c.pass);
    SuiteReport {
        suite: suite.name().into(),
        instance: inst.to_string(),
        params: t.params,
        checks,
        pass,
        seconds: start.elapsed().as_secs_f64(),
    }
}
