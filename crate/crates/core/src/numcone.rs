//! Floating-point spot checks on the cone of positive definite symmetric
//! matrices: characteristic-function potentials, finite-difference
//! Hessians, congruence invariance, conical scaling, and the tube-domain
//! complex Hessian.
//!
//! Coordinates on the cone are the upper triangle read row by row
//! (`x₁₁, x₁₂, …, x₂₂, …`), so the cone over `n×n` matrices has
//! `N = n(n+1)/2` coordinates. All sampling runs through an explicit
//! seeded generator, keeping every report byte-deterministic.

use crate::matrix::Matrix;
use crate::report::{LieError, Result};

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Step for the scaling comparisons. Their stencils cancel truncation
/// exactly (scale-covariant steps), so the binding error is the rounding
/// floor of second differences, about `eps/h²`; at 1e-3 that sits near
/// 1e-10, comfortably under the 1e-8 gate.
pub const SCALING_STEP: f64 = 1e-3;

/// splitmix64: tiny, deterministic, platform-independent.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Cholesky factor of a symmetric matrix; `None` when not positive definite.
pub fn cholesky(m: &Matrix<f64>) -> Option<Matrix<f64>> {
    let n = m.rows();
    let mut l = Matrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = *m.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l.set(i, i, sum.sqrt());
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    Some(l)
}

/// Number of cone coordinates for `n×n` symmetric matrices.
pub fn coord_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Symmetric matrix from upper-triangle coordinates.
pub fn sym_from_coords(n: usize, coords: &[f64]) -> Matrix<f64> {
    assert_eq!(coords.len(), coord_count(n));
    let mut m = Matrix::<f64>::zeros(n, n);
    let mut t = 0;
    for i in 0..n {
        for j in i..n {
            m.set(i, j, coords[t]);
            m.set(j, i, coords[t]);
            t += 1;
        }
    }
    m
}

pub fn coords_from_sym(m: &Matrix<f64>) -> Vec<f64> {
    let n = m.rows();
    let mut out = Vec::with_capacity(coord_count(n));
    for i in 0..n {
        for j in i..n {
            out.push(*m.get(i, j));
        }
    }
    out
}

/// A point of the positive definite cone; symmetric within 1e-12 and
/// Cholesky-factorizable.
#[derive(Clone, Debug)]
pub struct ConePoint {
    n: usize,
    x: Matrix<f64>,
}

impl ConePoint {
    pub fn new(x: Matrix<f64>) -> Result<Self> {
        let n = x.rows();
        if !x.is_square() {
            return Err(LieError::Dimension { what: "cone point".into(), expected: n, found: x.cols() });
        }
        for i in 0..n {
            for j in 0..i {
                if (x.get(i, j) - x.get(j, i)).abs() > 1e-12 {
                    return Err(LieError::Domain { what: "cone point is not symmetric".into() });
                }
            }
        }
        if cholesky(&x).is_none() {
            return Err(LieError::Domain { what: "cone point is not positive definite".into() });
        }
        Ok(Self { n, x })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, x: Matrix::identity(n) }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<f64> {
        &self.x
    }

    pub fn coords(&self) -> Vec<f64> {
        coords_from_sym(&self.x)
    }

    /// A well-conditioned random point `L Lᵀ` with `L` lower triangular.
    pub fn sample(n: usize, rng: &mut SplitMix64) -> Self {
        let mut l = Matrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                if i == j {
                    l.set(i, i, rng.uniform(0.8, 1.2));
                } else {
                    l.set(i, j, rng.uniform(-0.2, 0.2));
                }
            }
        }
        Self { n, x: l.matmul(&l.transpose()) }
    }
}

/// Random upper triangular matrix with positive diagonal (a congruence
/// transformation preserving the cone).
pub fn sample_triangular(n: usize, rng: &mut SplitMix64) -> Matrix<f64> {
    let mut s = Matrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            if i == j {
                s.set(i, i, rng.uniform(0.8, 1.2));
            } else {
                s.set(i, j, rng.uniform(-0.2, 0.2));
            }
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialKind {
    /// `ψ(x) = −((n+1)/2)·log det x` — the log of the characteristic
    /// function of the cone, up to an additive constant.
    LogChar,
    /// `φ(x) = e^{ψ(x)} = (det x)^{−(n+1)/2}`.
    Char,
    /// `u(x) = φ(x)^{−2/N} = (det x)^{2/n}` — homogeneous of degree 2.
    ConePower,
}

#[derive(Clone, Copy, Debug)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub n: usize,
}

impl PotentialSpec {
    pub fn new(kind: PotentialKind, n: usize) -> Self {
        Self { kind, n }
    }

    pub fn coords(&self) -> usize {
        coord_count(self.n)
    }
}

/// Evaluate the potential; domain error off the cone.
pub fn potential(spec: &PotentialSpec, x: &Matrix<f64>) -> Result<f64> {
    let l = cholesky(x).ok_or(LieError::Domain { what: "potential evaluated off the cone".into() })?;
    let mut log_det = 0.0;
    for i in 0..x.rows() {
        log_det += 2.0 * l.get(i, i).ln();
    }
    let n = spec.n as f64;
    let psi = -0.5 * (n + 1.0) * log_det;
    Ok(match spec.kind {
        PotentialKind::LogChar => psi,
        PotentialKind::Char => psi.exp(),
        PotentialKind::ConePower => (2.0 * log_det / n).exp(),
    })
}

/// Central-difference Hessian of `f` over `N` coordinates, symmetrized.
/// The step is halved (up to 8 times) whenever a stencil point leaves the
/// domain of `f`; a domain error is reported if that never succeeds.
pub fn num_hessian_fn(
    f: &dyn Fn(&[f64]) -> Result<f64>,
    coords: &[f64],
    h: f64,
) -> Result<Matrix<f64>> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(LieError::Domain { what: format!("step {} outside [1e-6, 1e-2]", h) });
    }
    let n = coords.len();
    let mut step = h;
    'attempt: for _ in 0..8 {
        let mut out = Matrix::<f64>::zeros(n, n);
        let base = match f(coords) {
            Ok(v) => v,
            Err(_) => {
                step *= 0.5;
                continue 'attempt;
            }
        };
        let eval = |delta: &[(usize, f64)]| -> Option<f64> {
            let mut p = coords.to_vec();
            for (i, d) in delta {
                p[*i] += d;
            }
            f(&p).ok()
        };
        for a in 0..n {
            for b in a..n {
                let value = if a == b {
                    let plus = eval(&[(a, step)]);
                    let minus = eval(&[(a, -step)]);
                    match (plus, minus) {
                        (Some(p), Some(m)) => (p - 2.0 * base + m) / (step * step),
                        _ => {
                            step *= 0.5;
                            continue 'attempt;
                        }
                    }
                } else {
                    let pp = eval(&[(a, step), (b, step)]);
                    let pm = eval(&[(a, step), (b, -step)]);
                    let mp = eval(&[(a, -step), (b, step)]);
                    let mm = eval(&[(a, -step), (b, -step)]);
                    match (pp, pm, mp, mm) {
                        (Some(pp), Some(pm), Some(mp), Some(mm)) => {
                            (pp - pm - mp + mm) / (4.0 * step * step)
                        }
                        _ => {
                            step *= 0.5;
                            continue 'attempt;
                        }
                    }
                };
                out.set(a, b, value);
                out.set(b, a, value);
            }
        }
        return Ok(out);
    }
    Err(LieError::Domain { what: "stencil keeps leaving the cone".into() })
}

/// Finite-difference Hessian of a cone potential at a cone point.
pub fn num_hessian(spec: &PotentialSpec, point: &ConePoint, h: f64) -> Result<Matrix<f64>> {
    let n = spec.n;
    if point.size() != n {
        return Err(LieError::Dimension { what: "cone point".into(), expected: n, found: point.size() });
    }
    let f = move |coords: &[f64]| potential(spec, &sym_from_coords(n, coords));
    num_hessian_fn(&f, &point.coords(), h)
}

/// The coordinate matrix of the congruence `u ↦ s u sᵀ` on symmetric
/// matrices, in upper-triangle coordinates.
pub fn congruence_coordinate_map(s: &Matrix<f64>) -> Matrix<f64> {
    let n = s.rows();
    let nc = coord_count(n);
    let mut map = Matrix::<f64>::zeros(nc, nc);
    let mut col = 0;
    for i in 0..n {
        for j in i..n {
            let mut basis = Matrix::<f64>::zeros(n, n);
            basis.set(i, j, 1.0);
            basis.set(j, i, 1.0);
            let image = s.matmul(&basis).matmul(&s.transpose());
            let coords = coords_from_sym(&image);
            for (row, v) in coords.iter().enumerate() {
                map.set(row, col, *v);
            }
            col += 1;
        }
    }
    map
}

fn max_abs(m: &Matrix<f64>) -> f64 {
    let mut acc: f64 = 0.0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            acc = acc.max(m.get(r, c).abs());
        }
    }
    acc
}

/// `max |a − b| / max |b|`.
pub fn rel_err(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    max_abs(&a.sub(b)) / max_abs(b).max(1e-300)
}

/// One sampled comparison, kept for CSV emission.
#[derive(Clone, Debug)]
pub struct SampleRow {
    pub coords: Vec<f64>,
    pub metric: Vec<f64>,
    pub rel_err: f64,
    pub positive_definite: bool,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_rel_err: f64,
    pub rows: Vec<SampleRow>,
}

impl InvarianceReport {
    pub fn pass(&self) -> bool {
        self.max_rel_err <= self.tol
    }
}

/// Congruence invariance of the log-char Hessian: for random triangular
/// `s` and random cone points, the pullback of `Hess ψ` under `x ↦ s x sᵀ`
/// equals `Hess ψ`, within the tolerance.
pub fn check_invariance(
    spec: &PotentialSpec,
    samples: usize,
    seed: u64,
    h: f64,
    tol: f64,
) -> Result<InvarianceReport> {
    if spec.kind != PotentialKind::LogChar {
        return Err(LieError::Domain { what: "invariance check applies to the log-char potential".into() });
    }
    let mut rng = SplitMix64::new(seed);
    let mut rows = Vec::with_capacity(samples);
    let mut max_rel: f64 = 0.0;
    for _ in 0..samples {
        let point = ConePoint::sample(spec.n, &mut rng);
        let s = sample_triangular(spec.n, &mut rng);
        let moved = ConePoint::new(s.matmul(point.matrix()).matmul(&s.transpose()))?;
        let here = num_hessian(spec, &point, h)?;
        let there = num_hessian(spec, &moved, h)?;
        let map = congruence_coordinate_map(&s);
        let pulled = map.transpose().matmul(&there).matmul(&map);
        let err = rel_err(&pulled, &here);
        max_rel = max_rel.max(err);
        rows.push(SampleRow {
            coords: point.coords(),
            metric: here.row_vectors().into_iter().flatten().collect(),
            rel_err: err,
            positive_definite: cholesky(&here).is_some(),
        });
    }
    Ok(InvarianceReport { n: spec.n, samples, seed, tol, max_rel_err: max_rel, rows })
}

#[derive(Clone, Debug)]
pub struct ScalingReport {
    pub n: usize,
    pub q: f64,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_rel_err: f64,
    pub all_positive_definite: bool,
    pub rows: Vec<SampleRow>,
}

impl ScalingReport {
    pub fn pass(&self) -> bool {
        self.max_rel_err <= self.tol
    }
}

/// Degree-0 homogeneity of `Hess u` for the degree-2 cone power: the
/// pullback of the Hessian metric under `x ↦ qx` equals `q²`-times itself,
/// equivalently `Hess u(qx) = Hess u(x)`. Evaluated with scale-covariant
/// stencils (step `qh` at `qx`), which makes the identity exact up to
/// rounding; positive definiteness is reported per sample, not asserted.
pub fn check_cone_scaling(
    spec: &PotentialSpec,
    q: f64,
    samples: usize,
    seed: u64,
    h: f64,
    tol: f64,
) -> Result<ScalingReport> {
    if spec.kind != PotentialKind::ConePower {
        return Err(LieError::Domain { what: "scaling check applies to the degree-2 cone power".into() });
    }
    if q <= 0.0 {
        return Err(LieError::Domain { what: "scale factor must be positive".into() });
    }
    let mut rng = SplitMix64::new(seed);
    let mut rows = Vec::with_capacity(samples);
    let mut max_rel: f64 = 0.0;
    let mut all_pd = true;
    for _ in 0..samples {
        let point = ConePoint::sample(spec.n, &mut rng);
        let scaled = ConePoint::new(point.matrix().scale(&q))?;
        let here = num_hessian(spec, &point, h)?;
        let there = num_hessian(spec, &scaled, (q * h).clamp(1e-6, 1e-2))?;
        let err = rel_err(&there, &here);
        max_rel = max_rel.max(err);
        let pd = cholesky(&here).is_some();
        all_pd &= pd;
        rows.push(SampleRow {
            coords: point.coords(),
            metric: here.row_vectors().into_iter().flatten().collect(),
            rel_err: err,
            positive_definite: pd,
        });
    }
    Ok(ScalingReport {
        n: spec.n,
        q,
        samples,
        seed,
        tol,
        max_rel_err: max_rel,
        all_positive_definite: all_pd,
        rows,
    })
}

/// How each of the three candidate potentials behaves under dilation:
/// `claim_err` measures `λ_q* g = q² g` (the printed conical claim, i.e.
/// degree-0 homogeneity of the Hessian) and `invariance_err` measures
/// `λ_q* g = g` (dilation invariance, i.e. degree −2).
#[derive(Clone, Debug)]
pub struct ScalingReading {
    pub kind: PotentialKind,
    pub claim_err: f64,
    pub invariance_err: f64,
}

#[derive(Clone, Debug)]
pub struct ReadingsReport {
    pub n: usize,
    pub q: f64,
    pub samples: usize,
    pub seed: u64,
    pub readings: Vec<ScalingReading>,
}

impl ReadingsReport {
    /// The potential kinds whose Hessian satisfies the conical claim at
    /// the given tolerance.
    pub fn conical_kinds(&self, tol: f64) -> Vec<PotentialKind> {
        self.readings.iter().filter(|r| r.claim_err <= tol).map(|r| r.kind).collect()
    }

    pub fn invariant_kinds(&self, tol: f64) -> Vec<PotentialKind> {
        self.readings.iter().filter(|r| r.invariance_err <= tol).map(|r| r.kind).collect()
    }
}

pub fn scaling_readings(n: usize, q: f64, samples: usize, seed: u64, h: f64) -> Result<ReadingsReport> {
    let mut readings = Vec::new();
    for kind in [PotentialKind::LogChar, PotentialKind::Char, PotentialKind::ConePower] {
        let spec = PotentialSpec::new(kind, n);
        let mut rng = SplitMix64::new(seed);
        let mut claim: f64 = 0.0;
        let mut invariance: f64 = 0.0;
        for _ in 0..samples {
            let point = ConePoint::sample(n, &mut rng);
            let scaled = ConePoint::new(point.matrix().scale(&q))?;
            let here = num_hessian(&spec, &point, h)?;
            let there = num_hessian(&spec, &scaled, (q * h).clamp(1e-6, 1e-2))?;
            claim = claim.max(rel_err(&there, &here));
            invariance = invariance.max(rel_err(&there.scale(&(q * q)), &here));
        }
        readings.push(ScalingReading { kind, claim_err: claim, invariance_err: invariance });
    }
    Ok(ReadingsReport { n, q, samples, seed, readings })
}

#[derive(Clone, Debug)]
pub struct TubeHessian {
    /// The mixed-derivative matrix; real because the potential only sees
    /// the imaginary part.
    pub matrix: Matrix<f64>,
    pub max_imag: f64,
    pub positive_definite: bool,
}

/// Complex Hessian of the tube potential `F(x + √−1 y) = 4ψ(y)` at the
/// given imaginary part: `∂²F/∂z_a∂z̄_b = ¼(∂²_{x_a x_b} + ∂²_{y_a y_b})F`
/// plus the antisymmetric imaginary part `¼(∂²_{y_a x_b} − ∂²_{x_a y_b})F`.
/// The result equals `Hess ψ(y)`; independence of the real part is
/// structural (the potential never reads it).
pub fn tube_kahler(spec: &PotentialSpec, y: &ConePoint, h: f64) -> Result<TubeHessian> {
    if spec.kind != PotentialKind::LogChar {
        return Err(LieError::Domain { what: "tube potential uses the log-char kind".into() });
    }
    let n = spec.n;
    let nc = coord_count(n);
    // coordinates: (x_re | y), the potential reading only y
    let f = move |coords: &[f64]| -> Result<f64> {
        let y_part = &coords[nc..];
        potential(spec, &sym_from_coords(n, y_part)).map(|v| 4.0 * v)
    };
    let mut coords = vec![0.0; 2 * nc];
    coords[nc..].copy_from_slice(&y.coords());
    let full = num_hessian_fn(&f, &coords, h)?;
    let mut real = Matrix::<f64>::zeros(nc, nc);
    let mut max_imag: f64 = 0.0;
    for a in 0..nc {
        for b in 0..nc {
            let dxx = full.get(a, b);
            let dyy = full.get(nc + a, nc + b);
            let dyx = full.get(nc + a, b);
            let dxy = full.get(a, nc + b);
            real.set(a, b, 0.25 * (dxx + dyy));
            max_imag = max_imag.max((0.25 * (dyx - dxy)).abs());
        }
    }
    let positive_definite = cholesky(&real).is_some();
    Ok(TubeHessian { matrix: real, max_imag, positive_definite })
}
