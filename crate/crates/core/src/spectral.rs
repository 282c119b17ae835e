//! Commuting tuples of unitary matrices and their joint eigenspace
//! decompositions.
//!
//! [`decompose`] takes `(A₁, …, Aₙ)` to the coarsest orthogonal splitting of
//! `Cᵈ` on which every `Aⱼ` acts by a scalar, recording the scalars as a
//! label in `(S¹)ⁿ`; the block labeled `(1, …, 1)` is dropped. [`realize`]
//! goes back by letting `Aⱼ` act by the label on each block and by the
//! identity elsewhere. For real orthogonal tuples, [`component_invariant`]
//! reads off the parities of the `±1` joint eigenspaces, which classify path
//! components, and [`real_form`] builds a real tuple from a configuration
//! closed under complex conjugation.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::SpectralError;

pub type CMatrix = DMatrix<Complex64>;

/// Angular distance below which an eigenvalue counts as `±1` when reading
/// off the component invariant.
pub const SIGN_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on `‖A*A - I‖` and `‖AB - BA‖` (operator norm).
    pub commute: f64,
    /// Eigenvalues closer than this are treated as equal.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            commute: 1e-9,
            cluster: 1e-6,
        }
    }
}

fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TupleJson", into = "TupleJson")]
pub struct CommutingTuple {
    matrices: Vec<CMatrix>,
    dim: usize,
    tol: f64,
}

impl CommutingTuple {
    /// Checks shapes only; use [`check_commuting`] or [`validate`] for the
    /// algebraic conditions.
    pub fn new(matrices: Vec<CMatrix>, tol: f64) -> Result<Self, SpectralError> {
        let dim = matrices
            .first()
            .map(|m| m.nrows())
            .ok_or_else(|| SpectralError::DimensionMismatch("a tuple needs n >= 1 matrices".into()))?;
        if dim == 0 {
            return Err(SpectralError::DimensionMismatch("dimension must be positive".into()));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(SpectralError::DimensionMismatch(format!(
                    "matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(SpectralError::DimensionMismatch(format!("tolerance {tol} must be positive")));
        }
        Ok(CommutingTuple { matrices, dim, tol })
    }

    pub fn from_real(matrices: Vec<DMatrix<f64>>, tol: f64) -> Result<Self, SpectralError> {
        CommutingTuple::new(matrices.into_iter().map(|m| m.map(|x| c(x, 0.0))).collect(), tol)
    }

    pub fn identity(n: usize, dim: usize, tol: f64) -> Result<Self, SpectralError> {
        CommutingTuple::new(vec![CMatrix::identity(dim, dim); n], tol)
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// `(P·A₁·P*, …, P·Aₙ·P*)`.
    pub fn conjugate_by(&self, p: &CMatrix) -> Result<Self, SpectralError> {
        if p.nrows() != self.dim || p.ncols() != self.dim {
            return Err(SpectralError::DimensionMismatch("conjugating matrix has the wrong size".into()));
        }
        let pa = p.adjoint();
        Ok(CommutingTuple {
            matrices: self.matrices.iter().map(|a| p * a * &pa).collect(),
            dim: self.dim,
            tol: self.tol,
        })
    }

    /// Largest absolute imaginary part of any entry.
    pub fn max_imag(&self) -> f64 {
        self.matrices
            .iter()
            .flat_map(|m| m.iter())
            .fold(0.0, |acc, z| acc.max(z.im.abs()))
    }

    /// `sqrt(Σⱼ ‖Aⱼ - Bⱼ‖_F²)`.
    pub fn frobenius_distance(&self, other: &CommutingTuple) -> Result<f64, SpectralError> {
        if self.n() != other.n() || self.dim != other.dim {
            return Err(SpectralError::DimensionMismatch("tuples have different shapes".into()));
        }
        Ok(self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| (a - b).norm_squared())
            .sum::<f64>()
            .sqrt())
    }
}

/// Unitarity and commutativity at the tuple's own tolerance, as errors.
pub fn validate(t: &CommutingTuple) -> Result<(), SpectralError> {
    let id = CMatrix::identity(t.dim, t.dim);
    for (index, a) in t.matrices.iter().enumerate() {
        let defect = op_norm(&(a.adjoint() * a - &id));
        if defect.is_nan() || defect > t.tol {
            return Err(SpectralError::NotUnitary { index, defect });
        }
    }
    for i in 0..t.n() {
        for j in i + 1..t.n() {
            let (a, b) = (&t.matrices[i], &t.matrices[j]);
            let norm = op_norm(&(a * b - b * a));
            if norm.is_nan() || norm > t.tol {
                return Err(SpectralError::NotCommuting { i, j, norm });
            }
        }
    }
    Ok(())
}

/// Whether every matrix is unitary and all pairs commute within the
/// tuple's tolerance.
pub fn check_commuting(t: &CommutingTuple) -> bool {
    validate(t).is_ok()
}

/// A joint eigenspace: orthonormal columns spanning it and the eigenvalue of
/// each matrix on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub basis: CMatrix,
    pub label: Vec<Complex64>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigJson", into = "ConfigJson")]
pub struct LabeledConfig {
    pub n: usize,
    pub ambient_dim: usize,
    pub blocks: Vec<Block>,
}

impl LabeledConfig {
    /// `(label, dimension)` pairs in block order.
    pub fn label_multiset(&self) -> Vec<(Vec<Complex64>, usize)> {
        self.blocks.iter().map(|b| (b.label.clone(), b.dim())).collect()
    }
}

/// Argument in `[0, 2π)`, with values within rounding of `2π` sent to 0.
fn arg_key(z: Complex64) -> f64 {
    let mut t = z.arg();
    if t < 0.0 {
        t += TAU;
    }
    if TAU - t < 1e-12 {
        0.0
    } else {
        t
    }
}

fn label_order(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = arg_key(*x).total_cmp(&arg_key(*y));
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Eigendecomposition of a Hermitian matrix. `SymmetricEigen` can return
/// eigenvectors with residuals near `1e-5` when eigenvalues are repeated, so
/// the result is rediagonalized in its own basis until the residual is at
/// rounding level.
fn hermitian_eigen(m: CMatrix) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
    let scale = m.norm().max(1.0);
    let mut eig = SymmetricEigen::new(m.clone());
    for _ in 0..4 {
        let v = &eig.eigenvectors;
        let lam = CMatrix::from_diagonal(&eig.eigenvalues.map(|x| c(x, 0.0)));
        if (&m * v - v * lam).norm() <= 1e-13 * scale {
            break;
        }
        let inner = v.adjoint() * &m * v;
        let inner = (&inner + inner.adjoint()).scale(0.5);
        let next = SymmetricEigen::new(inner);
        eig = SymmetricEigen {
            eigenvectors: v * next.eigenvectors,
            eigenvalues: next.eigenvalues,
        };
    }
    eig
}

/// Splits the column span of `q` into the eigenspaces of the Hermitian
/// matrix `h` compressed to it.
fn split_hermitian(q: &CMatrix, h: &CMatrix, tol: f64) -> Vec<CMatrix> {
    let m = q.adjoint() * h * q;
    let m = (&m + m.adjoint()).scale(0.5);
    let eig = hermitian_eigen(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for i in order {
        let v = eig.eigenvalues[i];
        match clusters.last_mut() {
            Some(cl) if v - last <= tol => cl.push(i),
            _ => clusters.push(vec![i]),
        }
        last = v;
    }
    clusters
        .into_iter()
        .map(|cl| {
            let v = CMatrix::from_fn(eig.eigenvectors.nrows(), cl.len(), |r, k| eig.eigenvectors[(r, cl[k])]);
            q * v
        })
        .collect()
}

/// The map ψ: coarsest joint eigenspace decomposition, trivial block
/// dropped, blocks sorted by the arguments of their labels.
///
/// Each `Aⱼ` is normal, so its Hermitian and skew-Hermitian parts commute;
/// the current subspaces are refined by the eigenspaces of both, one matrix
/// at a time. Eigenvalues of the parts are clustered by gaps larger than
/// `tol_cluster`.
pub fn decompose(t: &CommutingTuple, tol_cluster: f64) -> Result<LabeledConfig, SpectralError> {
    validate(t)?;
    let half = c(0.5, 0.0);
    let half_i = c(0.0, -0.5);
    let mut spaces = vec![CMatrix::identity(t.dim, t.dim)];
    for a in &t.matrices {
        let h = (a + a.adjoint()) * half;
        let k = (a - a.adjoint()) * half_i;
        let mut next = Vec::with_capacity(spaces.len());
        for q in &spaces {
            for q1 in split_hermitian(q, &h, tol_cluster) {
                next.extend(split_hermitian(&q1, &k, tol_cluster));
            }
        }
        spaces = next;
    }
    let mut blocks: Vec<Block> = spaces
        .into_iter()
        .map(|q| {
            let d = q.ncols() as f64;
            let label = t
                .matrices
                .iter()
                .map(|a| {
                    let z = (q.adjoint() * a * &q).trace() / d;
                    z / z.norm()
                })
                .collect();
            Block { basis: q, label }
        })
        .filter(|b| b.label.iter().any(|z| (z - c(1.0, 0.0)).norm() > tol_cluster))
        .collect();
    blocks.sort_by(|x, y| label_order(&x.label, &y.label));
    Ok(LabeledConfig {
        n: t.n(),
        ambient_dim: t.dim,
        blocks,
    })
}

fn check_config(cfg: &LabeledConfig, tol: f64) -> Result<(), SpectralError> {
    if cfg.n == 0 || cfg.ambient_dim == 0 {
        return Err(SpectralError::DimensionMismatch("n and ambient_dim must be positive".into()));
    }
    for (i, b) in cfg.blocks.iter().enumerate() {
        if b.basis.nrows() != cfg.ambient_dim || b.label.len() != cfg.n {
            return Err(SpectralError::DimensionMismatch(format!(
                "block {i} has basis {}x{} and {} labels; expected {} rows and {} labels",
                b.basis.nrows(),
                b.basis.ncols(),
                b.label.len(),
                cfg.ambient_dim,
                cfg.n
            )));
        }
        if let Some(z) = b.label.iter().find(|z| (z.norm() - 1.0).abs() > tol) {
            return Err(SpectralError::InvalidSpec(format!("label {z} of block {i} is not of modulus 1")));
        }
    }
    for (i, bi) in cfg.blocks.iter().enumerate() {
        for (j, bj) in cfg.blocks.iter().enumerate().skip(i) {
            let gram = bi.basis.adjoint() * &bj.basis;
            let overlap = if i == j {
                op_norm(&(gram - CMatrix::identity(bi.dim(), bi.dim())))
            } else {
                op_norm(&gram)
            };
            if overlap.is_nan() || overlap > tol {
                return Err(SpectralError::NonOrthogonalBlocks { i, j, overlap });
            }
        }
    }
    Ok(())
}

/// The map φₙ: `Aⱼ = I + Σᵢ (λᵢ⁽ʲ⁾ - 1)·BᵢBᵢ*`. Block bases must be
/// orthonormal and mutually orthogonal within `tol`, which also becomes the
/// tolerance of the result.
pub fn realize(cfg: &LabeledConfig, tol: f64) -> Result<CommutingTuple, SpectralError> {
    check_config(cfg, tol)?;
    let d = cfg.ambient_dim;
    let mut mats = vec![CMatrix::identity(d, d); cfg.n];
    for b in &cfg.blocks {
        let proj = &b.basis * b.basis.adjoint();
        for (a, lam) in mats.iter_mut().zip(&b.label) {
            *a += &proj * (lam - c(1.0, 0.0));
        }
    }
    CommutingTuple::new(mats, tol)
}

/// Sign pattern of a label whose coordinates are all within
/// [`SIGN_TOLERANCE`] of `±1`: bit `j` set iff coordinate `j` is `-1`.
fn sign_pattern(label: &[Complex64]) -> Option<usize> {
    let mut s = 0usize;
    for (j, z) in label.iter().enumerate() {
        let t = z.arg();
        if t.abs() < SIGN_TOLERANCE {
            continue;
        } else if std::f64::consts::PI - t.abs() < SIGN_TOLERANCE {
            s |= 1 << j;
        } else {
            return None;
        }
    }
    Some(s)
}

fn labels_close(x: &[Complex64], y: &[Complex64], tol: f64) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| (a - b).norm() <= tol)
}

fn conj(label: &[Complex64]) -> Vec<Complex64> {
    label.iter().map(|z| z.conj()).collect()
}

/// Pairs every label that is not a sign pattern with a conjugate partner of
/// the same dimension. Returns the pairs `(i, j)` with `i` the member whose
/// label comes first, or the index of an unpaired entry.
fn pair_conjugates(entries: &[(Vec<Complex64>, usize)]) -> Result<Vec<(usize, usize)>, usize> {
    let mut used = vec![false; entries.len()];
    let mut pairs = Vec::new();
    for i in 0..entries.len() {
        if used[i] || sign_pattern(&entries[i].0).is_some() {
            continue;
        }
        let target = conj(&entries[i].0);
        let partner = (0..entries.len()).find(|&j| {
            j != i && !used[j] && entries[j].1 == entries[i].1 && labels_close(&entries[j].0, &target, SIGN_TOLERANCE)
        });
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
                pairs.push((i, j));
            }
            None => return Err(i),
        }
    }
    Ok(pairs)
}

/// The vector in `(Z/2)^(2ⁿ - 1)` of parities `dim V_x mod 2` over sign
/// patterns `x ∈ {±1}ⁿ \ {(1, …, 1)}`. Pattern `x` sits at index `s - 1`
/// where bit `j` of `s` is set iff `xⱼ = -1`.
pub fn component_invariant(t: &CommutingTuple, tol: &Tolerances) -> Result<Vec<u8>, SpectralError> {
    let im = t.max_imag();
    if im > t.tol {
        return Err(SpectralError::NotReal(format!("imaginary part {im:.3e} exceeds tolerance")));
    }
    if t.n() >= 32 {
        return Err(SpectralError::DimensionMismatch("n is too large for the invariant".into()));
    }
    let cfg = decompose(t, tol.cluster)?;
    let entries = cfg.label_multiset();
    let mut out = vec![0u8; (1usize << t.n()) - 1];
    for (label, d) in &entries {
        if let Some(s) = sign_pattern(label) {
            if s > 0 {
                out[s - 1] ^= (*d % 2) as u8;
            }
        }
    }
    pair_conjugates(&entries).map_err(|i| {
        SpectralError::NotReal(format!("eigenvalue label {:?} has no conjugate partner", entries[i].0))
    })?;
    Ok(out)
}

fn rotation(z: Complex64) -> [[f64; 2]; 2] {
    let (cs, sn) = (z.re / z.norm(), z.im / z.norm());
    [[cs, -sn], [sn, cs]]
}

/// Real matrices in standard coordinates with the given labels and
/// dimensions: `±1` diagonal entries for sign patterns, one rotation block
/// per dimension of each conjugate pair. `(1, -i)/√2` is the eigenvector of
/// `[[c, -s], [s, c]]` for `c + is`.
fn real_blocks(n: usize, dim: usize, entries: &[(Vec<Complex64>, usize)]) -> Result<Vec<DMatrix<f64>>, SpectralError> {
    let pairs = pair_conjugates(entries).map_err(|i| {
        SpectralError::NotConjugationClosed(format!("label {:?} (dimension {}) has no conjugate partner", entries[i].0, entries[i].1))
    })?;
    let mut mats = vec![DMatrix::<f64>::identity(dim, dim); n];
    let mut pos = 0usize;
    let need: usize = entries.iter().map(|e| e.1).sum();
    if need > dim {
        return Err(SpectralError::DimensionMismatch(format!("blocks need {need} dimensions, have {dim}")));
    }
    for (label, d) in entries {
        if let Some(s) = sign_pattern(label) {
            for _ in 0..*d {
                for (j, m) in mats.iter_mut().enumerate() {
                    m[(pos, pos)] = if s >> j & 1 == 1 { -1.0 } else { 1.0 };
                }
                pos += 1;
            }
        }
    }
    for (i, _) in pairs {
        let (label, d) = &entries[i];
        for _ in 0..*d {
            for (m, z) in mats.iter_mut().zip(label) {
                let r = rotation(*z);
                for (a, row) in r.iter().enumerate() {
                    for (b, x) in row.iter().enumerate() {
                        m[(pos + a, pos + b)] = *x;
                    }
                }
            }
            pos += 2;
        }
    }
    Ok(mats)
}

/// A real orthogonal tuple whose decomposition has the labels and
/// dimensions of `cfg`. The block bases of `cfg` are not used: the result is
/// built in standard coordinates.
pub fn real_form(cfg: &LabeledConfig, tol: f64) -> Result<CommutingTuple, SpectralError> {
    if cfg.n == 0 || cfg.ambient_dim == 0 {
        return Err(SpectralError::DimensionMismatch("n and ambient_dim must be positive".into()));
    }
    if cfg.blocks.iter().any(|b| b.label.len() != cfg.n) {
        return Err(SpectralError::DimensionMismatch("label length differs from n".into()));
    }
    let mats = real_blocks(cfg.n, cfg.ambient_dim, &cfg.label_multiset())?;
    CommutingTuple::from_real(mats, tol)
}

/// One prescribed joint eigenspace for [`random_commuting`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpecBlock {
    pub label: Vec<Complex64>,
    pub dim: usize,
}

fn check_spec(n: usize, dim: usize, spec: &[SpecBlock]) -> Result<Vec<(Vec<Complex64>, usize)>, SpectralError> {
    if n == 0 || dim == 0 {
        return Err(SpectralError::InvalidSpec("n and dim must be positive".into()));
    }
    let mut total = 0usize;
    let mut out = Vec::with_capacity(spec.len());
    for (i, b) in spec.iter().enumerate() {
        if b.label.len() != n {
            return Err(SpectralError::InvalidSpec(format!("label {i} has {} entries, expected {n}", b.label.len())));
        }
        if b.dim == 0 {
            return Err(SpectralError::InvalidSpec(format!("block {i} has dimension 0")));
        }
        if b.label.iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(SpectralError::InvalidSpec(format!("label {i} is not on the unit torus")));
        }
        total += b.dim;
        out.push((b.label.clone(), b.dim));
    }
    if total > dim {
        return Err(SpectralError::InvalidSpec(format!("dimensions sum to {total} > {dim}")));
    }
    Ok(out)
}

fn gaussian_matrix<R: Rng>(dim: usize, complex: bool, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
        c(re, im)
    })
}

/// A Haar-random unitary (or orthogonal, when `complex` is false) matrix,
/// from the QR decomposition of a Gaussian matrix with the phases of `R`
/// moved into `Q`.
pub fn random_unitary<R: Rng>(dim: usize, complex: bool, rng: &mut R) -> CMatrix {
    let qr = gaussian_matrix(dim, complex, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// `P·D·P*` with `D` diagonal carrying the prescribed labels and `P` a
/// seeded random unitary. Remaining dimensions carry the trivial label.
pub fn random_commuting(n: usize, dim: usize, spec: &[SpecBlock], seed: u64) -> Result<CommutingTuple, SpectralError> {
    let entries = check_spec(n, dim, spec)?;
    let mut mats = vec![CMatrix::identity(dim, dim); n];
    let mut pos = 0;
    for (label, d) in &entries {
        for _ in 0..*d {
            for (m, z) in mats.iter_mut().zip(label) {
                m[(pos, pos)] = *z;
            }
            pos += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_unitary(dim, true, &mut rng);
    CommutingTuple::new(mats, 1e-10)?.conjugate_by(&p)
}

/// A real orthogonal tuple with the prescribed labels, conjugated by a
/// seeded random orthogonal matrix. The spec must be closed under
/// conjugation with every self-conjugate label in `{±1}ⁿ`.
pub fn random_orthogonal_commuting(n: usize, dim: usize, spec: &[SpecBlock], seed: u64) -> Result<CommutingTuple, SpectralError> {
    let entries = check_spec(n, dim, spec)?;
    let mats = real_blocks(n, dim, &entries).map_err(|e| SpectralError::InvalidSpec(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_unitary(dim, false, &mut rng);
    let t = CommutingTuple::from_real(mats, 1e-10)?.conjugate_by(&q)?;
    // conjugation by a real matrix leaves only rounding in the imaginary parts
    let mats = t.matrices.iter().map(|m| m.map(|z| c(z.re, 0.0))).collect();
    CommutingTuple::new(mats, 1e-10)
}

/// Whether two `(label, dimension)` lists agree up to order, labels compared
/// entrywise within `tol`.
pub fn same_label_multiset(x: &[(Vec<Complex64>, usize)], y: &[(Vec<Complex64>, usize)], tol: f64) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut used = vec![false; y.len()];
    x.iter().all(|(lx, dx)| {
        let hit = (0..y.len()).find(|&j| !used[j] && y[j].1 == *dx && labels_close(lx, &y[j].0, tol));
        match hit {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

/// Labels on the grid `e^{2πim/997}`: two coordinates are equal or at
/// least `2π/997 > 6e-3` apart.
pub fn random_spec<R: Rng>(n: usize, dim: usize, rng: &mut R) -> Vec<SpecBlock> {
    let count = rng.gen_range(1..=dim.min(6));
    let mut remaining = dim;
    let mut out: Vec<SpecBlock> = Vec::new();
    while out.len() < count && remaining > 0 {
        let d = rng.gen_range(1..=remaining.min(4));
        let label: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(1.0, TAU * f64::from(rng.gen_range(0..997u32)) / 997.0))
            .collect();
        if out.iter().any(|b| b.label == label) {
            continue;
        }
        remaining -= d;
        out.push(SpecBlock { label, dim: d });
    }
    out
}

/// Result of [`roundtrip`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    pub trials: usize,
    /// Largest `‖realize(decompose(t)) - t‖_F` over the trials.
    pub max_error: f64,
    /// Trials whose recovered labels and dimensions differ from the spec.
    pub label_mismatches: usize,
}

/// Generates `trials` random tuples from `seed` and checks both round trips.
pub fn roundtrip(n: usize, dim: usize, seed: u64, trials: usize, tol: &Tolerances) -> Result<RoundTripReport, SpectralError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    let mut label_mismatches = 0;
    for _ in 0..trials {
        let spec = random_spec(n, dim, &mut rng);
        let t = random_commuting(n, dim, &spec, rng.gen())?.with_tol(tol.commute.max(1e-10));
        let cfg = decompose(&t, tol.cluster)?;
        let back = realize(&cfg, tol.commute.max(1e-10))?;
        max_error = max_error.max(back.frobenius_distance(&t)?);
        let expected: Vec<(Vec<Complex64>, usize)> = spec
            .iter()
            .filter(|b| b.label.iter().any(|z| (z - c(1.0, 0.0)).norm() > tol.cluster))
            .map(|b| (b.label.clone(), b.dim))
            .collect();
        if !same_label_multiset(&expected, &cfg.label_multiset(), 1e-8) {
            label_mismatches += 1;
        }
    }
    Ok(RoundTripReport {
        n,
        dim,
        seed,
        trials,
        max_error,
        label_mismatches,
    })
}

#[derive(Clone, Serialize, Deserialize)]
struct MatrixJson {
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
struct TupleJson {
    n: usize,
    dim: usize,
    tol: f64,
    matrices: Vec<MatrixJson>,
}

fn rows(m: &CMatrix, f: impl Fn(&Complex64) -> f64) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
}

fn from_rows(re: &[Vec<f64>], im: Option<&Vec<Vec<f64>>>, nrows: usize, ncols: usize, what: &str) -> Result<CMatrix, SpectralError> {
    let shape_ok = |r: &[Vec<f64>]| r.len() == nrows && r.iter().all(|row| row.len() == ncols);
    if !shape_ok(re) || im.is_some_and(|m| !shape_ok(m)) {
        return Err(SpectralError::DimensionMismatch(format!("{what} is not {nrows}x{ncols}")));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| c(re[i][j], im.map_or(0.0, |m| m[i][j]))))
}

impl From<CommutingTuple> for TupleJson {
    fn from(t: CommutingTuple) -> Self {
        let matrices = t
            .matrices
            .iter()
            .map(|m| MatrixJson {
                re: rows(m, |z| z.re),
                im: m.iter().any(|z| z.im != 0.0).then(|| rows(m, |z| z.im)),
            })
            .collect();
        TupleJson {
            n: t.n(),
            dim: t.dim,
            tol: t.tol,
            matrices,
        }
    }
}

impl TryFrom<TupleJson> for CommutingTuple {
    type Error = SpectralError;

    fn try_from(j: TupleJson) -> Result<Self, SpectralError> {
        if j.matrices.len() != j.n {
            return Err(SpectralError::DimensionMismatch(format!("n = {} but {} matrices given", j.n, j.matrices.len())));
        }
        let mats = j
            .matrices
            .iter()
            .enumerate()
            .map(|(i, m)| from_rows(&m.re, m.im.as_ref(), j.dim, j.dim, &format!("matrix {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        CommutingTuple::new(mats, j.tol)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct BlockJson {
    basis_re: Vec<Vec<f64>>,
    #[serde(default)]
    basis_im: Option<Vec<Vec<f64>>>,
    label: Vec<ComplexJson>,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    #[serde(default)]
    n: Option<usize>,
    ambient_dim: usize,
    blocks: Vec<BlockJson>,
}

impl From<LabeledConfig> for ConfigJson {
    fn from(cfg: LabeledConfig) -> Self {
        ConfigJson {
            n: Some(cfg.n),
            ambient_dim: cfg.ambient_dim,
            blocks: cfg
                .blocks
                .iter()
                .map(|b| BlockJson {
                    basis_re: rows(&b.basis, |z| z.re),
                    basis_im: Some(rows(&b.basis, |z| z.im)),
                    label: b.label.iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ConfigJson> for LabeledConfig {
    type Error = SpectralError;

    fn try_from(j: ConfigJson) -> Result<Self, SpectralError> {
        let n = match (j.n, j.blocks.first()) {
            (Some(n), _) => n,
            (None, Some(b)) => b.label.len(),
            (None, None) => {
                return Err(SpectralError::DimensionMismatch("an empty configuration must state n".into()))
            }
        };
        let blocks = j
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let d = b.basis_re.first().map_or(0, |r| r.len());
                Ok(Block {
                    basis: from_rows(&b.basis_re, b.basis_im.as_ref(), j.ambient_dim, d, &format!("basis of block {i}"))?,
                    label: b.label.iter().map(|z| c(z.re, z.im)).collect(),
                })
            })
            .collect::<Result<Vec<_>, SpectralError>>()?;
        Ok(LabeledConfig {
            n,
            ambient_dim: j.ambient_dim,
            blocks,
        })
    }
}
