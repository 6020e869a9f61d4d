//! Zero-expectation product vectors of `W[b,c] = W[2-b-c, b, c]` on the
//! ellipse, and the rank of their span.
//!
//! A product vector `x⊗y` is flattened with `x_i y_j` at index `3i + j`
//! (zero based). Three sources of zero vectors are provided:
//!
//! * the phase family `y = (e^{iα}, e^{iβ}, e^{iγ})`, `x = conj(y)`, which
//!   lies in the zero set of every witness with `a + b + c = 2`;
//! * the Case-1 vectors with one vanishing coordinate of `y` (`a <= 1`);
//! * the basis product vectors at the Choi endpoint `(b, c) = (0, 1)`.
//!
//! A see-saw minimizer gives an independent numerical route to the zero set
//! and to block positivity.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, c, gram_rank, kron_vec, CMat, CVec, Complex, LinalgError};
use crate::witness::{
    self, build_witness, classify, ellipse_residual, reduce_first, reduce_second, WitnessError,
    WitnessParams, CLASSIFY_TOL,
};

/// Tolerance on the ellipse residual and on `a + b + c - 2` for parameters
/// handed to the closed-form constructions.
pub const ELLIPSE_TOL: f64 = 1e-10;
/// Distance from `a = 4/3` (`b = c = 1/3`) treated as the degenerate point.
pub const DEGENERATE_A_TOL: f64 = 1e-9;
/// Constant printed in front of the closed-form determinant of the 9×9
/// spanning matrix.
pub const PRINTED_DET_CONSTANT: Complex = Complex::new(-32.0, 160.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimalityError {
    #[error("(b, c) = ({b}, {c}) with a = {a} is not on the ellipse (residual {residual:e})")]
    OffEllipse {
        a: f64,
        b: f64,
        c: f64,
        residual: f64,
    },
    #[error("b = c = 1/3 (a = 4/3) is degenerate for the closed-form vectors")]
    Degenerate,
    #[error("no zero vector with a vanishing coordinate exists for a = {a} > 1")]
    NoCase1Solution { a: f64 },
    #[error("closed forms expect b <= c, got b = {b}, c = {c}")]
    BranchOrder { b: f64, c: f64 },
    #[error("parameters do not define a witness")]
    NotAWitness,
    #[error("closed form unavailable ({reason}) and numeric fallback disabled")]
    FallbackRequired { reason: String },
    #[error("index k = {k} must be 1, 2 or 3")]
    BadIndex { k: usize },
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

type Result<T> = std::result::Result<T, OptimalityError>;

/// A product vector `x ⊗ y` kept in factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    pub x: CVec,
    pub y: CVec,
}

impl ProductVector {
    pub fn new(x: CVec, y: CVec) -> Self {
        ProductVector { x, y }
    }

    pub fn flatten(&self) -> CVec {
        kron_vec(&self.x, &self.y)
    }

    pub fn normalized(&self) -> Self {
        ProductVector {
            x: self.x.normalized(),
            y: self.y.normalized(),
        }
    }

    /// `y ⊗ x`.
    pub fn swapped(&self) -> Self {
        ProductVector {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn expectation(&self, w: &CMat) -> std::result::Result<f64, WitnessError> {
        witness::expectation(w, &self.x, &self.y)
    }
}

/// Reorders a flattened 3⊗3 vector from `x⊗y` to `y⊗x`.
pub fn swap_factors(v: &CVec) -> CVec {
    CVec::new((0..9).map(|k| v[3 * (k % 3) + k / 3]).collect())
}

/// Shifts coordinates `i ↦ i + shift (mod 3)`.
fn cyclic_shift(v: [Complex; 3], shift: usize) -> CVec {
    let mut out = [c(0.0, 0.0); 3];
    for (i, z) in v.into_iter().enumerate() {
        out[(i + shift) % 3] = z;
    }
    CVec::new(out.to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl PhaseTriple {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        PhaseTriple { alpha, beta, gamma }
    }
}

/// `y = (e^{iα}, e^{iβ}, e^{iγ})`, `x = conj(y)`. `W_y` is then a diagonal
/// unitary conjugate of `[[2,-1,-1],[-1,2,-1],[-1,-1,2]]` whose kernel is `x`.
pub fn phase_product(t: PhaseTriple) -> ProductVector {
    let y = CVec::new(
        [t.alpha, t.beta, t.gamma]
            .iter()
            .map(|&th| Complex::from_polar(1.0, th))
            .collect(),
    );
    ProductVector { x: y.conj(), y }
}

/// Seven phase triples whose product vectors span the whole phase family.
pub const CANONICAL_TRIPLES: [PhaseTriple; 7] = [
    PhaseTriple::new(0.0, 0.0, 0.0),
    PhaseTriple::new(0.0, 0.0, PI),
    PhaseTriple::new(0.0, PI, 0.0),
    PhaseTriple::new(0.0, PI, PI),
    PhaseTriple::new(0.0, 0.0, FRAC_PI_2),
    PhaseTriple::new(0.0, FRAC_PI_2, 0.0),
    PhaseTriple::new(0.0, FRAC_PI_2, -FRAC_PI_2),
];

pub fn canonical_seven() -> Vec<CVec> {
    CANONICAL_TRIPLES
        .iter()
        .map(|&t| phase_product(t).flatten())
        .collect()
}

/// Magnitudes of the Case-1 zero vector
/// `y = (0, p, q e^{iφ})`, `x = (0, r e^{iφ}, s)` (unnormalized).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Case1Data {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
}

impl Case1Data {
    /// `|y₂|²` after normalizing `y`, i.e. `p² / (p² + q²)`.
    pub fn y2_fraction(&self) -> f64 {
        self.p * self.p / (self.p * self.p + self.q * self.q)
    }
}

fn check_on_ellipse(p: &WitnessParams) -> Result<()> {
    let residual = ellipse_residual(p.b(), p.c());
    if residual.abs() > ELLIPSE_TOL || (p.a() + p.b() + p.c() - 2.0).abs() > ELLIPSE_TOL {
        return Err(OptimalityError::OffEllipse {
            a: p.a(),
            b: p.b(),
            c: p.c(),
            residual,
        });
    }
    Ok(())
}

fn is_degenerate_point(p: &WitnessParams) -> bool {
    (p.a() - witness::ELLIPSE_A_MAX).abs() <= DEGENERATE_A_TOL
}

/// `p = √(1+b−a)`, `q = √(3−b−2a)`, `r = pq`, `s = a p² + b q²`.
///
/// Requires an ellipse point with `b <= c` and `a <= 1`; on the arc
/// `1 < a < 4/3` both radicands are negative and no such vector exists.
pub fn case1_data(params: &WitnessParams) -> Result<Case1Data> {
    check_on_ellipse(params)?;
    let (a, b, cc) = (params.a(), params.b(), params.c());
    if is_degenerate_point(params) {
        return Err(OptimalityError::Degenerate);
    }
    if b > cc {
        return Err(OptimalityError::BranchOrder { b, c: cc });
    }
    let p2 = 1.0 + b - a;
    let q2 = 3.0 - b - 2.0 * a;
    // allow rounding noise at the Choi endpoint a = 1, b = 0
    if p2 < -ELLIPSE_TOL || q2 < -ELLIPSE_TOL {
        return Err(OptimalityError::NoCase1Solution { a });
    }
    let (p2, q2) = (p2.max(0.0), q2.max(0.0));
    let (p, q) = (p2.sqrt(), q2.sqrt());
    Ok(Case1Data {
        p,
        q,
        r: p * q,
        s: a * p2 + b * q2,
    })
}

/// `a(4−3a)t² + 2a(a−b−1)t + ab`: the second determinant factor for
/// `y = (0, y₂, y₃)`, `|y|=1`, `t = |y₂|²`, after eliminating `c`.
pub fn quadratic_second_term(a: f64, b: f64, t: f64) -> f64 {
    a * (4.0 - 3.0 * a) * t * t + 2.0 * a * (a - b - 1.0) * t + a * b
}

pub fn quadratic_discriminant(a: f64, b: f64) -> f64 {
    4.0 * a * a * (a - b - 1.0).powi(2) - 4.0 * a * (4.0 - 3.0 * a) * a * b
}

/// `det W_y` for `y = (0, y₂, y₃)`:
/// `(b|y₂|² + c|y₃|²) · (ac|y₂|⁴ + (a² + bc − 1)|y₂|²|y₃|² + ab|y₃|⁴)`.
pub fn det_wy_factored(params: &WitnessParams, y2: Complex, y3: Complex) -> f64 {
    let (a, b, cc) = (params.a(), params.b(), params.c());
    let (u, v) = (y2.norm_sqr(), y3.norm_sqr());
    (b * u + cc * v) * (a * cc * u * u + (a * a + b * cc - 1.0) * u * v + a * b * v * v)
}

/// The same factorization with the coefficients as originally printed
/// (`ab|y₂|⁴ + (a² + ac − 1)|y₂|²|y₃|² + bc|y₃|⁴`). Kept for comparison;
/// it disagrees with the true determinant whenever `b != c`.
pub fn det_wy_factored_printed(params: &WitnessParams, y2: Complex, y3: Complex) -> f64 {
    let (a, b, cc) = (params.a(), params.b(), params.c());
    let (u, v) = (y2.norm_sqr(), y3.norm_sqr());
    (b * u + cc * v) * (a * b * u * u + (a * a + a * cc - 1.0) * u * v + b * cc * v * v)
}

/// `det W_y` for `W[1,0,1]`:
/// `|y₁|⁴|y₂|² + |y₂|⁴|y₃|² + |y₃|⁴|y₁|² − 3|y₁|²|y₂|²|y₃|²`.
pub fn case2_det_poly(y: &CVec) -> f64 {
    let (n1, n2, n3) = (y[0].norm_sqr(), y[1].norm_sqr(), y[2].norm_sqr());
    n1 * n1 * n2 + n2 * n2 * n3 + n3 * n3 * n1 - 3.0 * n1 * n2 * n3
}

/// The cyclic companion `|y₁|²|y₂|⁴ + |y₂|²|y₃|⁴ + |y₃|²|y₁|⁴ − 3|y₁|²|y₂|²|y₃|²`
/// as originally printed. It is `det W_y` for `W[1,1,0]`, not `W[1,0,1]`.
pub fn case2_det_poly_printed(y: &CVec) -> f64 {
    let (n1, n2, n3) = (y[0].norm_sqr(), y[1].norm_sqr(), y[2].norm_sqr());
    n1 * n2 * n2 + n2 * n3 * n3 + n3 * n1 * n1 - 3.0 * n1 * n2 * n3
}

fn check_k(k: usize) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(OptimalityError::BadIndex { k })
    }
}

/// The Case-1 product vector `Ψ^(k)`. For `k = 1`, `y = (0, p, q e^{iφ})` and
/// `x = (0, r e^{iφ}, s)`, the kernel vector of `W_y`; `k = 2, 3` shift both
/// factors cyclically so the zero of `y` sits in slot `k`.
pub fn case1_psi(params: &WitnessParams, k: usize, phi: f64) -> Result<ProductVector> {
    check_k(k)?;
    let d = case1_data(params)?;
    let e = Complex::from_polar(1.0, phi);
    let zero = c(0.0, 0.0);
    let y = [zero, c(d.p, 0.0), d.q * e];
    let x = [zero, d.r * e, c(d.s, 0.0)];
    Ok(ProductVector {
        x: cyclic_shift(x, k - 1),
        y: cyclic_shift(y, k - 1),
    })
}

/// Zero vectors of `W[1,0,1]` with a vanishing coordinate of `y`:
/// `e₂⊗e₃`, `e₃⊗e₁`, `e₁⊗e₂`. These are the `b → 0` limits of `Ψ^(k)`.
pub fn case2_phi(k: usize) -> Result<ProductVector> {
    check_k(k)?;
    let (i, j) = [(1, 2), (2, 0), (0, 1)][k - 1];
    Ok(ProductVector {
        x: CVec::basis(3, i),
        y: CVec::basis(3, j),
    })
}

/// The endpoint vectors as originally printed (`e₁⊗e₃`, `e₂⊗e₁`, `e₃⊗e₂`).
/// These are zero vectors of `W[1,1,0]`; under `W[1,0,1]` each has
/// expectation 1.
pub fn case2_phi_printed(k: usize) -> Result<ProductVector> {
    check_k(k)?;
    let (i, j) = [(0, 2), (1, 0), (2, 1)][k - 1];
    Ok(ProductVector {
        x: CVec::basis(3, i),
        y: CVec::basis(3, j),
    })
}

/// Entry order of the last two rows of the 9×9 spanning matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOrdering {
    /// Rows 8 and 9 exactly as printed.
    Printed,
    /// Rows 8 and 9 as `flatten(Ψ^(1))`, `flatten(Ψ^(2))` in the `x⊗y` order.
    Convention,
}

impl RowOrdering {
    pub const ALL: [RowOrdering; 2] = [RowOrdering::Printed, RowOrdering::Convention];
}

/// 9×9 matrix whose rows are the canonical seven followed by the two Case-1
/// vectors with phases `φ₁`, `φ₂`.
pub fn big_matrix(
    params: &WitnessParams,
    phi1: f64,
    phi2: f64,
    ordering: RowOrdering,
) -> Result<CMat> {
    let d = case1_data(params)?;
    let (p, q, r, s) = (d.p, d.q, d.r, d.s);
    let e1 = Complex::from_polar(1.0, phi1);
    let e1sq = Complex::from_polar(1.0, 2.0 * phi1);
    let e2 = Complex::from_polar(1.0, phi2);
    let e2sq = Complex::from_polar(1.0, 2.0 * phi2);
    let z = c(0.0, 0.0);
    let re = |v: f64| c(v, 0.0);
    let (row8, row9) = match ordering {
        RowOrdering::Printed => (
            vec![
                z,
                z,
                z,
                z,
                p * r * e1,
                re(p * s),
                z,
                q * r * e1sq,
                q * s * e1,
            ],
            vec![
                q * s * e2,
                z,
                q * r * e2sq,
                z,
                z,
                z,
                re(p * s),
                z,
                p * r * e2,
            ],
        ),
        RowOrdering::Convention => (
            vec![
                z,
                z,
                z,
                z,
                p * r * e1,
                q * r * e1sq,
                z,
                re(p * s),
                q * s * e1,
            ],
            vec![
                q * s * e2,
                z,
                re(p * s),
                z,
                z,
                z,
                q * r * e2sq,
                z,
                p * r * e2,
            ],
        ),
    };
    let mut rows = canonical_seven();
    rows.push(CVec::new(row8));
    rows.push(CVec::new(row9));
    Ok(CMat::from_rows(&rows)?)
}

/// The spanning matrix in its printed form.
pub fn printed_big_matrix(params: &WitnessParams, phi1: f64, phi2: f64) -> Result<CMat> {
    big_matrix(params, phi1, phi2, RowOrdering::Printed)
}

/// `e^{i(φ₁+φ₂)} [(qs)² + (pr)² − qs·pr]`: the determinant of the spanning
/// matrix up to a constant factor.
pub fn big_matrix_det_kernel(d: &Case1Data, phi1: f64, phi2: f64) -> Complex {
    let (qs, pr) = (d.q * d.s, d.p * d.r);
    Complex::from_polar(1.0, phi1 + phi2) * (qs * qs + pr * pr - qs * pr)
}

/// The printed closed form `(−32+160i) e^{i(φ₁+φ₂)} [(qs)² + (pr)² − qs·pr]`.
pub fn big_matrix_det_closed_form(d: &Case1Data, phi1: f64, phi2: f64) -> Complex {
    PRINTED_DET_CONSTANT * big_matrix_det_kernel(d, phi1, phi2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanMethod {
    ClosedForm,
    NumericSearch,
}

/// Zero-expectation product vectors of a witness and the dimension of their span.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanReport {
    #[serde(skip)]
    pub vectors: Vec<CVec>,
    pub gram_rank: usize,
    pub spanning: bool,
    pub method: SpanMethod,
    pub degenerate: bool,
    pub notes: Vec<String>,
}

impl SpanReport {
    fn from_vectors(vectors: Vec<CVec>, method: SpanMethod, notes: Vec<String>) -> Result<Self> {
        let gram_rank = gram_rank(&vectors, linalg::DEFAULT_RANK_TOL)?;
        Ok(SpanReport {
            vectors,
            gram_rank,
            spanning: gram_rank == 9,
            method,
            degenerate: false,
            notes,
        })
    }
}

/// Spanning check for an ellipse witness.
///
/// For `a <= 1` the zero set is built in closed form: the canonical seven
/// plus `Ψ^(1)(φ₁)` and `Ψ^(2)(φ₂)`, or plus the three basis product vectors
/// at the Choi endpoints. `b > c` is reduced to `b < c` by exchanging the
/// factors. Elsewhere on the ellipse (`1 < a <= 4/3`) the closed forms do not
/// apply and `fallback` decides whether a numeric search is run.
pub fn spanning_report(
    params: &WitnessParams,
    phi1: f64,
    phi2: f64,
    fallback: Option<&SearchConfig>,
) -> Result<SpanReport> {
    check_on_ellipse(params)?;
    if params.b() > params.c() {
        let mut rep = spanning_report(&params.swapped(), phi1, phi2, fallback)?;
        if rep.method == SpanMethod::ClosedForm {
            rep.vectors = rep.vectors.iter().map(swap_factors).collect();
            rep.notes
                .push("b > c: vectors of W[a,c,b] with factors exchanged".into());
        }
        return Ok(rep);
    }

    let (a, b, cc) = (params.a(), params.b(), params.c());
    if b.abs() <= DEGENERATE_A_TOL && (cc - 1.0).abs() <= DEGENERATE_A_TOL {
        let mut vectors = canonical_seven();
        for k in 1..=3 {
            vectors.push(case2_phi(k)?.flatten());
        }
        return SpanReport::from_vectors(
            vectors,
            SpanMethod::ClosedForm,
            vec!["Choi endpoint: phase family plus basis product vectors".into()],
        );
    }

    let reason = if is_degenerate_point(params) {
        Some("b = c = 1/3 is degenerate for the closed forms".to_string())
    } else if a > 1.0 {
        Some(format!(
            "a = {a} > 1: no zero vector with a vanishing coordinate"
        ))
    } else {
        None
    };
    if let Some(reason) = reason {
        let Some(cfg) = fallback else {
            return Err(OptimalityError::FallbackRequired { reason });
        };
        let mut rep = numeric_zero_set(params, cfg)?;
        rep.degenerate = is_degenerate_point(params);
        rep.notes.insert(0, reason);
        return Ok(rep);
    }

    let mut vectors = canonical_seven();
    vectors.push(case1_psi(params, 1, phi1)?.flatten());
    vectors.push(case1_psi(params, 2, phi2)?.flatten());
    SpanReport::from_vectors(vectors, SpanMethod::ClosedForm, vec![])
}

/// Knobs of the see-saw search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n_starts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Stop once one full iteration lowers the value by less than this.
    pub convergence_tol: f64,
    /// Expectation below which an argmin counts as a zero vector.
    pub zero_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_starts: 64,
            max_iters: 200,
            seed: 0,
            convergence_tol: 1e-12,
            zero_tol: 1e-8,
        }
    }
}

/// One see-saw descent from a single random start.
#[derive(Debug, Clone, PartialEq)]
pub struct SeesawRun {
    pub value: f64,
    pub argmin: ProductVector,
    pub iterations: usize,
    pub converged: bool,
    /// Every half-step was non-increasing (up to rounding).
    pub monotone: bool,
    /// Value after each full iteration.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeesawResult {
    pub min_value: f64,
    pub argmin: ProductVector,
    pub best_start: usize,
    pub runs: Vec<SeesawRun>,
    pub notes: Vec<String>,
}

impl SeesawResult {
    pub fn all_converged(&self) -> bool {
        self.runs.iter().all(|r| r.converged)
    }

    pub fn all_monotone(&self) -> bool {
        self.runs.iter().all(|r| r.monotone)
    }
}

fn random_unit3(rng: &mut impl Rng) -> [Complex; 3] {
    loop {
        let v: [Complex; 3] =
            std::array::from_fn(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.map(|z| z / n);
        }
    }
}

fn seesaw_single(w: &CMat, start_seed: u64, cfg: &SearchConfig) -> Result<SeesawRun> {
    let ws = w.as_slice();
    let slack = 1e-12 * w.max_abs().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(start_seed);
    let mut y = random_unit3(&mut rng);
    let mut x = [c(0.0, 0.0); 3];
    let mut buf = [c(0.0, 0.0); 9];
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    let mut converged = false;
    let mut iterations = 0;
    let mut trace = Vec::new();

    while iterations < cfg.max_iters {
        iterations += 1;
        reduce_second(ws, y, &mut buf);
        let (v_half, xv) = linalg::lowest_eigenpair3(&buf);
        x = xv;
        reduce_first(ws, x, &mut buf);
        let (v_full, yv) = linalg::lowest_eigenpair3(&buf);
        y = yv;
        if v_half > prev + slack || v_full > v_half + slack {
            monotone = false;
        }
        trace.push(v_full);
        let gain = prev - v_full;
        prev = v_full;
        if gain < cfg.convergence_tol {
            converged = true;
            break;
        }
    }

    let argmin = ProductVector {
        x: CVec::new(x.to_vec()),
        y: CVec::new(y.to_vec()),
    };
    let value = argmin.expectation(w)?;
    Ok(SeesawRun {
        value,
        argmin,
        iterations,
        converged,
        monotone,
        trace,
    })
}

/// All see-saw runs, start `i` seeded with `seed + i`. Order of the result
/// matches the start index regardless of scheduling.
pub fn seesaw_runs(w: &CMat, cfg: &SearchConfig) -> Result<Vec<SeesawRun>> {
    if w.rows() != 9 || w.cols() != 9 {
        return Err(LinalgError::DimensionMismatch {
            expected: 81,
            found: w.rows() * w.cols(),
        }
        .into());
    }
    let asym = w.hermiticity_defect();
    if asym > linalg::DEFAULT_HERMITICITY_TOL * w.max_abs().max(f64::MIN_POSITIVE) {
        return Err(LinalgError::NotHermitian { asymmetry: asym }.into());
    }
    (0..cfg.n_starts)
        .into_par_iter()
        .map(|i| seesaw_single(w, cfg.seed.wrapping_add(i as u64), cfg))
        .collect()
}

/// Alternating minimization of `⟨x⊗y|W|x⊗y⟩` over unit product vectors:
/// `x` ← lowest eigenvector of `W_y`, then `y` ← lowest eigenvector of `W_x`.
pub fn seesaw_minimize(w: &CMat, cfg: &SearchConfig) -> Result<SeesawResult> {
    let runs = seesaw_runs(w, cfg)?;
    let (best_start, best) = runs
        .iter()
        .enumerate()
        .min_by(|(_, l), (_, r)| l.value.total_cmp(&r.value))
        .ok_or(OptimalityError::FallbackRequired {
            reason: "n_starts = 0".into(),
        })?;
    let mut notes = Vec::new();
    let stalled = runs.iter().filter(|r| !r.converged).count();
    if stalled > 0 {
        notes.push(format!("{stalled} of {} starts hit max_iters", runs.len()));
    }
    if runs.iter().any(|r| !r.monotone) {
        notes.push("non-monotone descent detected".into());
    }
    Ok(SeesawResult {
        min_value: best.value,
        argmin: best.argmin.clone(),
        best_start,
        notes,
        runs,
    })
}

/// Collects the see-saw argmins whose expectation is at most `zero_tol` and
/// reports the rank of their span.
pub fn numeric_zero_set(params: &WitnessParams, cfg: &SearchConfig) -> Result<SpanReport> {
    if !classify(params, CLASSIFY_TOL)?.is_witness {
        return Err(OptimalityError::NotAWitness);
    }
    let w = build_witness(params);
    let runs = seesaw_runs(&w, cfg)?;
    let vectors: Vec<CVec> = runs
        .iter()
        .filter(|r| r.value <= cfg.zero_tol)
        .map(|r| r.argmin.flatten())
        .collect();
    let notes = vec![format!(
        "{} of {} starts reached the zero set (zero_tol {:e})",
        vectors.len(),
        runs.len(),
        cfg.zero_tol
    )];
    SpanReport::from_vectors(vectors, SpanMethod::NumericSearch, notes)
}
