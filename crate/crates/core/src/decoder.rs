//! Syndrome-based decoding of homogeneous interleaved codes.
//!
//! [`decode`] recovers the rank support of an error from the syndrome alone:
//!
//! 1. `S = H·Rᵀ`, and `P` with `P·S = rref(S)`; `t̂ = rank(S)`.
//! 2. `H_sub` = the last `n-k-t̂` rows of `P·H`. They span
//!    `ker(E) ∩ C^⊥`.
//! 3. The support basis `B` is the `F_q`-kernel of `ext(H_sub)`.
//! 4. Erasure decoding: the unique `A` with `(H·Bᵀ)·Aᵀ = S`.
//! 5. `C = R - A·B`, accepted only if it is a codeword at rank distance `t̂`.
//!
//! Steps 2-3 need `rank_{F_{q^m}}(E) = rank_{F_q}(E) = t` (so `ℓ >= t`) and
//! `t <= d - 2`; outside those conditions the decoder either still succeeds or
//! reports a [`FailureReason`], never a non-codeword.
//!
//! [`mk_hamming_decode`] is the Hamming-metric original, which reads the error
//! positions off the zero columns of `H_sub` instead.

use std::fmt;

use crate::error::{Error, Result};
use crate::finite_field::FieldEl;
use crate::matrix::{Echelon, Matrix};

/// Why a decoding attempt was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// `rank(S) = n - k`: no zero rows to build `H_sub` from.
    TooManyErrors,
    /// The recovered support has the wrong dimension (full-rank condition
    /// violated, or too many errors for the support to be determined).
    SupportDimensionMismatch { expected: usize, found: usize },
    /// `H·Bᵀ` lacks full column rank, so the error values are not unique.
    RankDeficient,
    /// No error with the recovered support explains the syndrome.
    Inconsistent,
    /// The candidate failed the final codeword / weight check.
    VerificationFailed,
}

impl FailureReason {
    pub fn name(&self) -> &'static str {
        match self {
            FailureReason::TooManyErrors => "too-many-errors",
            FailureReason::SupportDimensionMismatch { .. } => "support-dimension-mismatch",
            FailureReason::RankDeficient => "rank-deficient",
            FailureReason::Inconsistent => "inconsistent",
            FailureReason::VerificationFailed => "verification-failed",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::SupportDimensionMismatch { expected, found } => {
                write!(f, "{} (expected {expected}, found {found})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

/// Error of an individual decoding step: bad input, or a decoding failure.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("decoding failure: {0}")]
    Failure(FailureReason),
}

impl From<FailureReason> for StepError {
    fn from(r: FailureReason) -> Self {
        StepError::Failure(r)
    }
}

pub type StepResult<T> = std::result::Result<T, StepError>;

/// Output of the syndrome echelonization step.
#[derive(Clone, Debug)]
pub struct HsubStep {
    /// `P` with `P·S = rref(S)`.
    pub transform: Matrix,
    pub syndrome_rref: Echelon,
    pub t_hat: usize,
    /// The last `n - k - t̂` rows of `P·H`.
    pub h_sub: Matrix,
}

/// A recovered error support.
#[derive(Clone, Debug)]
pub struct SupportRecovery {
    pub h_sub: Matrix,
    pub t_hat: usize,
    /// `t̂ × n` basis over `F_q` in reduced row echelon form.
    pub support: Matrix,
}

/// A successful decoding.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub codeword: Matrix,
    /// `ℓ × t̂` over `F_{q^m}`.
    pub error_coeffs: Matrix,
    /// `t̂ × n` over `F_q`.
    pub support: Matrix,
    pub t_hat: usize,
    pub h_sub: Matrix,
    /// Set when the minimum distance is known and `t̂ > d - 2`.
    pub beyond_guarantee: bool,
}

impl Decoded {
    /// `A·B`.
    pub fn error(&self) -> Matrix {
        self.error_coeffs
            .mul(&self.support)
            .expect("factor shapes agree by construction")
    }
}

#[derive(Clone, Debug)]
pub enum DecodeOutcome {
    Success(Decoded),
    Failure {
        reason: FailureReason,
        t_hat: Option<usize>,
    },
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeOutcome::Success(_))
    }

    pub fn decoded(&self) -> Option<&Decoded> {
        match self {
            DecodeOutcome::Success(d) => Some(d),
            DecodeOutcome::Failure { .. } => None,
        }
    }

    pub fn codeword(&self) -> Option<&Matrix> {
        self.decoded().map(|d| &d.codeword)
    }

    pub fn failure_reason(&self) -> Option<FailureReason> {
        match self {
            DecodeOutcome::Success(_) => None,
            DecodeOutcome::Failure { reason, .. } => Some(*reason),
        }
    }
}

fn check_dims(h: &Matrix, r: &Matrix) -> Result<()> {
    if h.cols() != r.cols() {
        return Err(Error::DimensionMismatch {
            op: "syndrome",
            left: h.shape(),
            right: r.shape(),
        });
    }
    Ok(())
}

/// `S = H·Rᵀ`, of shape `(n-k) × ℓ`.
pub fn syndrome(h: &Matrix, r: &Matrix) -> Result<Matrix> {
    check_dims(h, r)?;
    h.mul(&r.transpose())
}

pub fn compute_hsub(h: &Matrix, s: &Matrix) -> StepResult<HsubStep> {
    if s.rows() != h.rows() {
        return Err(Error::DimensionMismatch {
            op: "compute_hsub",
            left: h.shape(),
            right: s.shape(),
        }
        .into());
    }
    let (p, echelon) = s.rref_with_transform();
    let t_hat = echelon.rank();
    let redundancy = h.rows();
    if t_hat == redundancy {
        return Err(FailureReason::TooManyErrors.into());
    }
    let ph = p.mul(h)?;
    let h_sub = ph.submatrix(t_hat..redundancy, 0..h.cols())?;
    Ok(HsubStep {
        transform: p,
        syndrome_rref: echelon,
        t_hat,
        h_sub,
    })
}

/// Support basis from an `H_sub`: the reduced basis of `ker_{F_q}(ext(H_sub))`.
pub fn support_from_hsub(h_sub: &Matrix) -> Matrix {
    h_sub.ext_expand().right_kernel()
}

pub fn recover_support(h: &Matrix, s: &Matrix) -> StepResult<SupportRecovery> {
    let step = compute_hsub(h, s)?;
    let support = support_from_hsub(&step.h_sub);
    if support.rows() != step.t_hat {
        return Err(FailureReason::SupportDimensionMismatch {
            expected: step.t_hat,
            found: support.rows(),
        }
        .into());
    }
    Ok(SupportRecovery {
        h_sub: step.h_sub,
        t_hat: step.t_hat,
        support,
    })
}

/// The unique `A` with `(H·Bᵀ)·Aᵀ = S`.
pub fn erasure_decode(h: &Matrix, s: &Matrix, b: &Matrix) -> StepResult<Matrix> {
    let coeff = h.mul(&b.transpose())?;
    match coeff.solve_right(s) {
        Ok(a) => Ok(a),
        Err(Error::RankDeficient { .. }) => Err(FailureReason::RankDeficient.into()),
        Err(Error::Inconsistent) => Err(FailureReason::Inconsistent.into()),
        Err(e) => Err(e.into()),
    }
}

/// Canonical basis of the rank support of `e`, the row space of `ext(e)`.
pub fn rank_support(e: &Matrix) -> Matrix {
    e.ext_expand().canonical_basis()
}

/// Checks that the dual of the row space of `ext(H_sub)` is the row space of `support`.
pub fn support_duality_holds(h_sub: &Matrix, support: &Matrix) -> bool {
    match h_sub.ext_expand().orth_complement() {
        Ok(dual) => support.to_base().is_ok_and(|b| dual.row_space_eq(&b)),
        Err(_) => false,
    }
}

fn fail(reason: FailureReason, t_hat: Option<usize>) -> DecodeOutcome {
    DecodeOutcome::Failure { reason, t_hat }
}

/// Decodes the received word `r` with parity-check matrix `h`.
///
/// `min_distance` is only used to set [`Decoded::beyond_guarantee`].
pub fn decode(h: &Matrix, r: &Matrix, min_distance: Option<usize>) -> Result<DecodeOutcome> {
    let s = syndrome(h, r)?;
    let step = match compute_hsub(h, &s) {
        Ok(step) => step,
        Err(StepError::Failure(reason)) => return Ok(fail(reason, Some(s.rank()))),
        Err(StepError::Input(e)) => return Err(e),
    };
    let t_hat = step.t_hat;
    let support = support_from_hsub(&step.h_sub);
    if support.rows() != t_hat {
        return Ok(fail(
            FailureReason::SupportDimensionMismatch {
                expected: t_hat,
                found: support.rows(),
            },
            Some(t_hat),
        ));
    }
    let a = match erasure_decode(h, &s, &support) {
        Ok(a) => a,
        Err(StepError::Failure(reason)) => return Ok(fail(reason, Some(t_hat))),
        Err(StepError::Input(e)) => return Err(e),
    };
    let e = a.mul(&support)?;
    let c = r.sub(&e)?;
    if !h.mul(&c.transpose())?.is_zero() || e.rank_q() != t_hat {
        return Ok(fail(FailureReason::VerificationFailed, Some(t_hat)));
    }
    Ok(DecodeOutcome::Success(Decoded {
        codeword: c,
        error_coeffs: a,
        support,
        t_hat,
        h_sub: step.h_sub,
        beyond_guarantee: min_distance.is_some_and(|d| t_hat + 2 > d),
    }))
}

/// Hamming-metric decoding of column-burst errors: the error positions are
/// the zero columns of `H_sub`.
///
/// A candidate is accepted when it is a codeword and the removed error has
/// nonzero columns only at the recovered positions and `F_{q^m}`-rank `t̂`.
pub fn mk_hamming_decode(h: &Matrix, r: &Matrix) -> Result<DecodeOutcome> {
    let s = syndrome(h, r)?;
    let step = match compute_hsub(h, &s) {
        Ok(step) => step,
        Err(StepError::Failure(reason)) => return Ok(fail(reason, Some(s.rank()))),
        Err(StepError::Input(e)) => return Err(e),
    };
    let t_hat = step.t_hat;
    let n = h.cols();
    let positions: Vec<usize> = (0..n)
        .filter(|&j| (0..step.h_sub.rows()).all(|i| step.h_sub.get(i, j).is_zero()))
        .collect();
    if positions.len() != t_hat {
        return Ok(fail(
            FailureReason::SupportDimensionMismatch {
                expected: t_hat,
                found: positions.len(),
            },
            Some(t_hat),
        ));
    }
    let base = h.field().base();
    let support = Matrix::from_fn(&base, t_hat, n, |i, j| {
        if positions[i] == j {
            FieldEl::ONE
        } else {
            FieldEl::ZERO
        }
    });
    let a = match erasure_decode(h, &s, &support) {
        Ok(a) => a,
        Err(StepError::Failure(reason)) => return Ok(fail(reason, Some(t_hat))),
        Err(StepError::Input(e)) => return Err(e),
    };
    let e = a.mul(&support)?;
    let c = r.sub(&e)?;
    if !h.mul(&c.transpose())?.is_zero() || e.rank() != t_hat {
        return Ok(fail(FailureReason::VerificationFailed, Some(t_hat)));
    }
    Ok(DecodeOutcome::Success(Decoded {
        codeword: c,
        error_coeffs: a,
        support,
        t_hat,
        h_sub: step.h_sub,
        beyond_guarantee: false,
    }))
}

/// Whether every `b ∉ ⟨B⟩` raises the rank: `rank(H·[Bᵀ | bᵀ]) = t + 1`.
///
/// With `M = H·Bᵀ` of full column rank `t`, the condition fails exactly when
/// some `b` outside `⟨B⟩` has `H·bᵀ` in the column space of `M`. If `L` spans
/// the left kernel of `M`, those `b` form `ker_{F_q}(ext(L·H))`, so the
/// condition holds iff that kernel has dimension `t`.
pub fn beyond_d2_condition(h: &Matrix, b: &Matrix) -> Result<bool> {
    let b = b.to_base()?;
    if b.cols() != h.cols() {
        return Err(Error::DimensionMismatch {
            op: "beyond_d2_condition",
            left: h.shape(),
            right: b.shape(),
        });
    }
    let t = b.rank();
    if t != b.rows() {
        return Err(Error::InvalidParameter(
            "support basis rows are dependent".into(),
        ));
    }
    let m = h.mul(&b.transpose())?;
    if m.rank() != t {
        return Ok(false);
    }
    let left_kernel = m.transpose().right_kernel();
    let lh = left_kernel.mul(h)?;
    let v = lh.ext_expand().right_kernel();
    Ok(v.rows() == t)
}
