//! The witness family `W[a,b,c]` on ℂ³⊗ℂ³: construction, the
//! witness/indecomposability criterion, the optimality ellipse, and the
//! partial-trace reductions used to find product vectors in its zero set.
//!
//! Composite indices are `(j, m) ↦ 3j + m` (zero based) with `j` on the first
//! factor and `m` on the second throughout.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, c, CMat, CVec, Complex, LinalgError};

/// Default tolerance for the boundary comparisons in [`classify`].
pub const CLASSIFY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("parameter {name} = {value} must be non-negative")]
    Negative { name: &'static str, value: f64 },
    #[error("parameter {name} is not finite")]
    NonFinite { name: &'static str },
    #[error("a = {a} lies outside the ellipse range [0, 4/3]")]
    OutsideEllipseRange { a: f64 },
    #[error("expectation has imaginary part {im:e}; operator is not Hermitian")]
    ImaginaryExpectation { im: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The real triple `(a, b, c)`. Always non-negative and finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessParams {
    a: f64,
    b: f64,
    c: f64,
}

impl WitnessParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, WitnessError> {
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if !value.is_finite() {
                return Err(WitnessError::NonFinite { name });
            }
            if value < 0.0 {
                return Err(WitnessError::Negative { name, value });
            }
        }
        Ok(WitnessParams { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `(a, c, b)`.
    pub fn swapped(&self) -> Self {
        WitnessParams {
            a: self.a,
            b: self.c,
            c: self.b,
        }
    }
}

/// Diagonal weight of the basis state `|j⟩⊗|m⟩`: it only depends on `m - j mod 3`.
fn diagonal_weight(p: &WitnessParams, j: usize, m: usize) -> f64 {
    match (m + 3 - j) % 3 {
        0 => p.a,
        1 => p.b,
        _ => p.c,
    }
}

/// The unnormalized 9×9 witness `W[a,b,c]`.
///
/// The diagonal reads `(a,b,c | c,a,b | b,c,a)` and the three "maximally
/// correlated" states `|00⟩, |11⟩, |22⟩` are coupled by `-1`.
pub fn build_witness(p: &WitnessParams) -> CMat {
    let mut w = CMat::zeros(9, 9);
    for j in 0..3 {
        for m in 0..3 {
            w[(3 * j + m, 3 * j + m)] = c(diagonal_weight(p, j, m), 0.0);
        }
    }
    for (i, k) in [(0, 4), (0, 8), (4, 8)] {
        w[(i, k)] = c(-1.0, 0.0);
        w[(k, i)] = c(-1.0, 0.0);
    }
    w
}

/// The three conditions that together characterise a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `0 <= a < 2`
    ARange,
    /// `a + b + c >= 2`
    SumAtLeastTwo,
    /// `a <= 1  =>  bc >= (1 - a)^2`
    ProductBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub is_witness: bool,
    /// `None` when the operator is not a witness.
    pub indecomposable: Option<bool>,
    pub on_ellipse: bool,
    pub is_psd: bool,
    pub failed_conditions: Vec<Condition>,
}

pub fn classify(p: &WitnessParams, tol: f64) -> Result<Classification, WitnessError> {
    let (a, b, cc) = (p.a, p.b, p.c);
    let mut failed = Vec::new();
    if !(0.0..2.0).contains(&a) {
        failed.push(Condition::ARange);
    }
    if a + b + cc < 2.0 - tol {
        failed.push(Condition::SumAtLeastTwo);
    }
    if a <= 1.0 && b * cc < (1.0 - a).powi(2) - tol {
        failed.push(Condition::ProductBound);
    }
    let is_witness = failed.is_empty();
    let indecomposable = is_witness.then(|| b * cc < (2.0 - a).powi(2) / 4.0 - tol);

    let eig = linalg::hermitian_eigen(&build_witness(p), linalg::DEFAULT_HERMITICITY_TOL)?;
    let is_psd = eig.values[0] >= -tol;

    Ok(Classification {
        is_witness,
        indecomposable,
        on_ellipse: on_ellipse(b, cc, tol) && (a + b + cc - 2.0).abs() <= tol,
        is_psd,
        failed_conditions: failed,
    })
}

/// `b² + bc + c² − 2b − 2c + 1`, which vanishes exactly on the ellipse
/// `a + b + c = 2, bc = (1 − a)²` after eliminating `a`.
pub fn ellipse_residual(b: f64, c: f64) -> f64 {
    b * b + b * c + c * c - 2.0 * b - 2.0 * c + 1.0
}

pub fn on_ellipse(b: f64, c: f64, tol: f64) -> bool {
    ellipse_residual(b, c).abs() <= tol
}

/// Which of the two solutions `(b, c)` for a given `a` on the ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `b <= c`
    Lower,
    /// `b >= c`
    Upper,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        }
    }
}

/// Upper end of the real ellipse in `a`.
pub const ELLIPSE_A_MAX: f64 = 4.0 / 3.0;

/// A point of the ellipse together with how it was parametrized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipsePoint {
    pub a: f64,
    pub branch: Branch,
    pub b: f64,
    pub c: f64,
}

impl EllipsePoint {
    pub fn new(a: f64, branch: Branch) -> Result<Self, WitnessError> {
        if !a.is_finite() {
            return Err(WitnessError::NonFinite { name: "a" });
        }
        if !(0.0..=ELLIPSE_A_MAX).contains(&a) {
            return Err(WitnessError::OutsideEllipseRange { a });
        }
        let root = (4.0 * a - 3.0 * a * a).max(0.0).sqrt();
        let lo = 0.5 * (2.0 - a - root);
        let hi = 0.5 * (2.0 - a + root);
        let (b, c) = match branch {
            Branch::Lower => (lo, hi),
            Branch::Upper => (hi, lo),
        };
        // `lo` can dip below zero by an ulp near a = 0
        Ok(EllipsePoint {
            a,
            branch,
            b: b.max(0.0),
            c: c.max(0.0),
        })
    }

    pub fn params(&self) -> WitnessParams {
        WitnessParams {
            a: self.a,
            b: self.b,
            c: self.c,
        }
    }

    /// Whether `a` falls inside `[0, 1]`, the range where the Case-1 zero
    /// vectors exist.
    pub fn in_primary_range(&self) -> bool {
        self.a <= 1.0
    }
}

pub fn ellipse_from_a(a: f64, branch: Branch) -> Result<WitnessParams, WitnessError> {
    EllipsePoint::new(a, branch).map(|pt| pt.params())
}

fn check_shapes(w: &CMat, v: &CVec) -> Result<(), WitnessError> {
    if w.rows() != 9 || w.cols() != 9 {
        return Err(LinalgError::DimensionMismatch {
            expected: 81,
            found: w.rows() * w.cols(),
        }
        .into());
    }
    if v.dim() != 3 {
        return Err(LinalgError::DimensionMismatch {
            expected: 3,
            found: v.dim(),
        }
        .into());
    }
    Ok(())
}

/// `W_y = Tr₂(W · 1 ⊗ |y⟩⟨y|)`, i.e. `(W_y)_jk = Σ_mn conj(y_m) W_(jm),(kn) y_n`,
/// so that `⟨x|W_y|x⟩ = ⟨x⊗y|W|x⊗y⟩`.
pub fn partial_trace_second(w: &CMat, y: &CVec) -> Result<CMat, WitnessError> {
    check_shapes(w, y)?;
    let ws = w.as_slice();
    let ys = y.as_slice();
    let mut out = [Complex::new(0.0, 0.0); 9];
    reduce_second(ws, [ys[0], ys[1], ys[2]], &mut out);
    Ok(CMat::new(3, 3, out.to_vec())?)
}

/// `W_x` with `(W_x)_mn = Σ_jk conj(x_j) W_(jm),(kn) x_k`, so that
/// `⟨y|W_x|y⟩ = ⟨x⊗y|W|x⊗y⟩`.
pub fn partial_trace_first(w: &CMat, x: &CVec) -> Result<CMat, WitnessError> {
    check_shapes(w, x)?;
    let xs = x.as_slice();
    let mut out = [Complex::new(0.0, 0.0); 9];
    reduce_first(w.as_slice(), [xs[0], xs[1], xs[2]], &mut out);
    Ok(CMat::new(3, 3, out.to_vec())?)
}

pub(crate) fn reduce_second(w: &[Complex], y: [Complex; 3], out: &mut [Complex; 9]) {
    for j in 0..3 {
        for k in 0..3 {
            let mut acc = Complex::new(0.0, 0.0);
            for m in 0..3 {
                let row = (3 * j + m) * 9 + 3 * k;
                let cm = y[m].conj();
                for n in 0..3 {
                    acc += cm * w[row + n] * y[n];
                }
            }
            out[3 * j + k] = acc;
        }
    }
}

pub(crate) fn reduce_first(w: &[Complex], x: [Complex; 3], out: &mut [Complex; 9]) {
    for m in 0..3 {
        for n in 0..3 {
            let mut acc = Complex::new(0.0, 0.0);
            for j in 0..3 {
                let cj = x[j].conj();
                for k in 0..3 {
                    acc += cj * w[(3 * j + m) * 9 + 3 * k + n] * x[k];
                }
            }
            out[3 * m + n] = acc;
        }
    }
}

/// Closed form of `partial_trace_second(build_witness(p), y)`:
///
/// ```text
/// diag((a+1)|y₁|² + b|y₂|² + c|y₃|², c|y₁|² + (a+1)|y₂|² + b|y₃|², b|y₁|² + c|y₂|² + (a+1)|y₃|²) − |y*⟩⟨y*|
/// ```
pub fn reduced_witness_closed_form(p: &WitnessParams, y: &CVec) -> CMat {
    let n: Vec<f64> = y.iter().map(|z| z.norm_sqr()).collect();
    let (a1, b, cc) = (p.a + 1.0, p.b, p.c);
    let diag = CMat::diag_real(&[
        a1 * n[0] + b * n[1] + cc * n[2],
        cc * n[0] + a1 * n[1] + b * n[2],
        b * n[0] + cc * n[1] + a1 * n[2],
    ]);
    let ystar = y.conj();
    diag.sub(&CMat::outer(&ystar, &ystar))
        .expect("3x3 operands")
}

/// `⟨x⊗y|W|x⊗y⟩` for Hermitian `W`.
pub fn expectation(w: &CMat, x: &CVec, y: &CVec) -> Result<f64, WitnessError> {
    check_shapes(w, x)?;
    check_shapes(w, y)?;
    let psi = linalg::kron_vec(x, y);
    let val = w.quadratic_form(&psi)?;
    let scale = x.norm_sqr() * y.norm_sqr();
    if val.im.abs() > 1e-10 * scale {
        return Err(WitnessError::ImaginaryExpectation { im: val.im });
    }
    Ok(val.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(a: f64, b: f64, cc: f64) -> WitnessParams {
        WitnessParams::new(a, b, cc).unwrap()
    }

    fn rand_vec3(rng: &mut impl Rng) -> CVec {
        CVec::new(
            (0..3)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    fn m_const() -> CMat {
        CMat::from_real_rows(&[&[2., -1., -1.], &[-1., 2., -1.], &[-1., -1., 2.]])
    }

    fn max_diff(a: &CMat, b: &CMat) -> f64 {
        a.sub(b).unwrap().max_abs()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            WitnessParams::new(-0.1, 1.0, 1.0),
            Err(WitnessError::Negative {
                name: "a",
                value: -0.1
            })
        );
        assert!(matches!(
            WitnessParams::new(1.0, f64::NAN, 1.0),
            Err(WitnessError::NonFinite { name: "b" })
        ));
    }

    #[test]
    fn choi_pattern() {
        let w = build_witness(&params(1.0, 1.0, 0.0));
        let diag: Vec<f64> = (0..9).map(|i| w[(i, i)].re).collect();
        assert_eq!(diag, vec![1., 1., 0., 0., 1., 1., 1., 0., 1.]);
        let mut minus_ones = vec![];
        for i in 0..9 {
            for j in 0..9 {
                if i != j && w[(i, j)] != c(0.0, 0.0) {
                    assert_eq!(w[(i, j)], c(-1.0, 0.0));
                    minus_ones.push((i, j));
                }
            }
        }
        assert_eq!(
            minus_ones,
            vec![(0, 4), (0, 8), (4, 0), (4, 8), (8, 0), (8, 4)]
        );
    }

    #[test]
    fn positive_point_block() {
        let w = build_witness(&params(2.0, 0.0, 0.0));
        assert_eq!(w.submatrix(&[0, 4, 8]), m_const());
        for i in 0..9 {
            for j in 0..9 {
                if ![0, 4, 8].contains(&i) || ![0, 4, 8].contains(&j) {
                    assert_eq!(w[(i, j)], c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn witness_is_self_adjoint_with_expected_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = params(
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.0..3.0),
            );
            let w = build_witness(&p);
            assert_eq!(w.adjoint(), w);
            let tr = w.trace().re;
            assert!((tr - 3.0 * (p.a() + p.b() + p.c())).abs() < 1e-12);
            // rows 0, 4, 8 carry two -1 couplings, the rest none
            for i in 0..9 {
                let off: f64 = (0..9).filter(|&j| j != i).map(|j| w[(i, j)].re).sum();
                assert_eq!(off, if [0, 4, 8].contains(&i) { -2.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn classify_special_points() {
        let choi = classify(&params(1.0, 1.0, 0.0), CLASSIFY_TOL).unwrap();
        assert!(choi.is_witness);
        assert_eq!(choi.indecomposable, Some(true));
        assert!(choi.on_ellipse);
        assert!(!choi.is_psd);

        let reduction = classify(&params(0.0, 1.0, 1.0), CLASSIFY_TOL).unwrap();
        assert!(reduction.is_witness);
        assert_eq!(reduction.indecomposable, Some(false));

        let iv = classify(&params(4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0), CLASSIFY_TOL).unwrap();
        assert!(iv.is_witness);
        assert_eq!(iv.indecomposable, Some(false));
        assert!(iv.on_ellipse);

        let positive = classify(&params(2.0, 0.0, 0.0), CLASSIFY_TOL).unwrap();
        assert!(!positive.is_witness);
        assert_eq!(positive.indecomposable, None);
        assert!(positive.is_psd);
        assert_eq!(positive.failed_conditions, vec![Condition::ARange]);

        let bad = classify(&params(0.5, 0.1, 1.4), CLASSIFY_TOL).unwrap();
        assert_eq!(bad.failed_conditions, vec![Condition::ProductBound]);
        let low = classify(&params(0.5, 0.4, 0.4), CLASSIFY_TOL).unwrap();
        assert_eq!(
            low.failed_conditions,
            vec![Condition::SumAtLeastTwo, Condition::ProductBound]
        );
    }

    #[test]
    fn classify_symmetric_under_b_c_swap() {
        let n = 50;
        for i in 0..n {
            for j in 0..n {
                let b = 2.0 * i as f64 / (n - 1) as f64;
                let cc = 2.0 * j as f64 / (n - 1) as f64;
                let a = (2.0 - b - cc).max(0.0) + 0.25 * ((i + j) % 3) as f64;
                let p = params(a, b, cc);
                assert_eq!(
                    classify(&p, CLASSIFY_TOL).unwrap(),
                    classify(&p.swapped(), CLASSIFY_TOL).unwrap()
                );
            }
        }
    }

    #[test]
    fn ellipse_membership() {
        for (b, cc) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0 / 3.0, 1.0 / 3.0)] {
            assert!(on_ellipse(b, cc, 1e-12), "({b}, {cc})");
        }
        assert!((ellipse_residual(0.5, 0.5) + 0.25).abs() < 1e-15);
        assert!(!on_ellipse(0.5, 0.5, 1e-12));
    }

    #[test]
    fn ellipse_parametrization() {
        let p = ellipse_from_a(1.0, Branch::Lower).unwrap();
        assert!((p.b() - 0.0).abs() < 1e-15 && (p.c() - 1.0).abs() < 1e-15);
        let p = ellipse_from_a(0.0, Branch::Upper).unwrap();
        assert_eq!((p.b(), p.c()), (1.0, 1.0));

        let p = ellipse_from_a(0.5, Branch::Lower).unwrap();
        // (3 - sqrt 5)/4 and (3 + sqrt 5)/4
        let lo = (3.0 - 5f64.sqrt()) / 4.0;
        let hi = (3.0 + 5f64.sqrt()) / 4.0;
        assert!((p.b() - lo).abs() < 1e-15 && (p.c() - hi).abs() < 1e-15);
        assert!((p.b() - 0.19098).abs() < 1e-5 && (p.c() - 1.30902).abs() < 1e-5);
        assert!((p.b() * p.c() - 0.25).abs() < 1e-12);
        assert!(on_ellipse(p.b(), p.c(), 1e-12));

        let top = ellipse_from_a(ELLIPSE_A_MAX, Branch::Lower).unwrap();
        assert!((top.b() - 1.0 / 3.0).abs() < 1e-12 && (top.c() - 1.0 / 3.0).abs() < 1e-12);

        assert!(matches!(
            ellipse_from_a(1.5, Branch::Lower),
            Err(WitnessError::OutsideEllipseRange { .. })
        ));
        assert!(ellipse_from_a(-0.1, Branch::Upper).is_err());

        for k in 0..=40 {
            let a = ELLIPSE_A_MAX * k as f64 / 40.0;
            for br in [Branch::Lower, Branch::Upper] {
                let p = ellipse_from_a(a, br).unwrap();
                assert!((p.a() + p.b() + p.c() - 2.0).abs() < 1e-12);
                assert!((p.b() * p.c() - (1.0 - a).powi(2)).abs() < 1e-12);
                assert!(on_ellipse(p.b(), p.c(), 1e-12));
                match br {
                    Branch::Lower => assert!(p.b() <= p.c()),
                    Branch::Upper => assert!(p.b() >= p.c()),
                }
            }
        }
    }

    #[test]
    fn reduction_on_phase_vectors_is_m() {
        let p = ellipse_from_a(0.3, Branch::Lower).unwrap();
        let wy =
            partial_trace_second(&build_witness(&p), &CVec::from_reals(&[1., 1., 1.])).unwrap();
        assert!(max_diff(&wy, &m_const()) < 1e-14);
    }

    #[test]
    fn reduction_with_vanishing_first_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = params(
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
            );
            let mut y = rand_vec3(&mut rng);
            y[0] = c(0.0, 0.0);
            let (n2, n3) = (y[1].norm_sqr(), y[2].norm_sqr());
            let mut want = CMat::zeros(3, 3);
            want[(0, 0)] = c(p.b() * n2 + p.c() * n3, 0.0);
            want[(1, 1)] = c(p.a() * n2 + p.b() * n3, 0.0);
            want[(2, 2)] = c(p.c() * n2 + p.a() * n3, 0.0);
            want[(1, 2)] = -y[1].conj() * y[2];
            want[(2, 1)] = -y[2].conj() * y[1];
            let got = partial_trace_second(&build_witness(&p), &y).unwrap();
            assert!(max_diff(&got, &want) < 1e-14);
        }
    }

    #[test]
    fn reduction_on_basis_vector() {
        let p = params(1.0, 1.0, 0.0);
        let e1 = CVec::basis(3, 0);
        let raw = partial_trace_second(&build_witness(&p), &e1).unwrap();
        assert_eq!(raw, CMat::diag_real(&[1.0, 0.0, 1.0]));
        assert_eq!(reduced_witness_closed_form(&p, &e1), raw);
    }

    #[test]
    fn raw_reduction_matches_projector_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let p = params(
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
            );
            let y = rand_vec3(&mut rng);
            let raw = partial_trace_second(&build_witness(&p), &y).unwrap();
            assert!(max_diff(&raw, &reduced_witness_closed_form(&p, &y)) <= 1e-12);
        }
    }

    #[test]
    fn first_reduction_of_product_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rand_herm = |rng: &mut ChaCha8Rng| {
            let m = CMat::from_fn(3, 3, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            m.add(&m.adjoint()).unwrap()
        };
        let a = rand_herm(&mut rng);
        let b = rand_herm(&mut rng);
        let w = linalg::kron(&a, &b);
        let x = rand_vec3(&mut rng);
        let got = partial_trace_first(&w, &x).unwrap();
        let want = b.scale(a.quadratic_form(&x).unwrap());
        assert!(max_diff(&got, &want) < 1e-13);
    }

    #[test]
    fn first_reduction_trace() {
        let p = ellipse_from_a(0.8, Branch::Upper).unwrap();
        let x = CVec::from_reals(&[1., 1., 1.]).normalized();
        let wx = partial_trace_first(&build_witness(&p), &x).unwrap();
        // Tr₂ W = (a+b+c)·1 = 2·1 for this family, hence Tr W_x = 2|x|².
        assert!((wx.trace() - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn expectation_identities() {
        let w = build_witness(&params(1.0, 1.0, 0.0));
        let e1 = CVec::basis(3, 0);
        assert_eq!(expectation(&w, &e1, &e1).unwrap(), 1.0);
        assert_eq!(expectation(&w, &CVec::zeros(3), &e1).unwrap(), 0.0);
        assert_eq!(expectation(&w, &e1, &CVec::zeros(3)).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let p = params(
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
            );
            let w = build_witness(&p);
            let (x, y) = (rand_vec3(&mut rng), rand_vec3(&mut rng));
            let e = expectation(&w, &x, &y).unwrap();
            let via_y = partial_trace_second(&w, &y)
                .unwrap()
                .quadratic_form(&x)
                .unwrap();
            let via_x = partial_trace_first(&w, &x)
                .unwrap()
                .quadratic_form(&y)
                .unwrap();
            assert!((e - via_y.re).abs() <= 1e-12 && via_y.im.abs() <= 1e-12);
            assert!((via_x - via_y).norm() <= 1e-12);
        }
    }

    #[test]
    fn expectation_flags_non_hermitian_operator() {
        let mut w = CMat::zeros(9, 9);
        w[(0, 1)] = c(0.0, 1.0);
        let v = CVec::from_reals(&[1., 1., 0.]);
        let e1 = CVec::basis(3, 0);
        assert!(matches!(
            expectation(&w, &e1, &v),
            Err(WitnessError::ImaginaryExpectation { .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let w = CMat::identity(4);
        assert!(partial_trace_second(&w, &CVec::basis(3, 0)).is_err());
        assert!(partial_trace_first(&CMat::identity(9), &CVec::basis(2, 0)).is_err());
    }
}
