//! Seeded Monte-Carlo measurement of the decoder's success rate.
//!
//! Errors of rank weight `t` are drawn as `E = A·B` with `B` uniform among
//! `t × n` matrices over `F_q` of rank `t` and `A` uniform among `ℓ × t`
//! matrices over `F_{q^m}` of `F_q`-rank `t`. Every rank-`t` error has the same
//! number of such factorizations, so `E` is uniform over its rank sphere.

mod bounds;
mod report;
mod rng;

use std::time::Instant;

use rayon::prelude::*;

use crate::codes::{GabidulinCode, LinearCode};
use crate::decoder::{self, DecodeOutcome, FailureReason};
use crate::error::{Error, Result};
use crate::finite_field::{ExtField, FieldEl};
use crate::matrix::Matrix;

pub use bounds::{count_matrices_rank, success_lower_bound, wilson_interval, SuccessBound, Z_99};
pub use report::{SimReport, Tally};
pub use rng::{mix64, SplitMix64};

/// Maximum rejections before [`sample_full_rank`] gives up.
pub const MAX_REJECTIONS: usize = 10_000;

/// Which rank a sampler conditions on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankKind {
    /// Rank of the `F_q` expansion.
    BaseField,
    /// Rank over the matrix's own field.
    ExtensionField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorMode {
    /// Uniform over all errors of rank weight `t`.
    Uniform,
    /// Uniform over errors of rank weight `t` that also have `F_{q^m}`-rank `t`.
    FullRank,
}

impl ErrorMode {
    pub fn name(self) -> &'static str {
        match self {
            ErrorMode::Uniform => "uniform",
            ErrorMode::FullRank => "fullrank",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(ErrorMode::Uniform),
            "fullrank" | "full-rank" => Ok(ErrorMode::FullRank),
            _ => Err(Error::InvalidParameter(format!("unknown error mode `{s}`"))),
        }
    }
}

pub fn random_element(rng: &mut SplitMix64, field: &ExtField) -> FieldEl {
    FieldEl(rng.below(field.order() as u64) as u32)
}

/// Uniform matrix, filled row-major.
pub fn random_matrix(rng: &mut SplitMix64, field: &ExtField, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_element(rng, field))
}

/// Uniform matrix conditioned on having rank `r`, by rejection.
pub fn sample_full_rank(
    rng: &mut SplitMix64,
    field: &ExtField,
    rows: usize,
    cols: usize,
    r: usize,
    kind: RankKind,
) -> Result<Matrix> {
    let limit = match kind {
        RankKind::BaseField => (rows * field.m() as usize).min(cols),
        RankKind::ExtensionField => rows.min(cols),
    };
    if r > limit {
        return Err(Error::InvalidParameter(format!(
            "rank {r} impossible for a {rows}x{cols} matrix ({kind:?})"
        )));
    }
    if r == 0 {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    for _ in 0..MAX_REJECTIONS {
        let m = random_matrix(rng, field, rows, cols);
        let rank = match kind {
            RankKind::BaseField => m.rank_q(),
            RankKind::ExtensionField => m.rank(),
        };
        if rank == r {
            return Ok(m);
        }
    }
    Err(Error::SamplingExhausted(MAX_REJECTIONS))
}

/// A planted error `E = A·B`.
#[derive(Clone, Debug)]
pub struct PlantedError {
    pub coeffs: Matrix,
    pub support: Matrix,
    pub error: Matrix,
}

pub fn sample_error(
    rng: &mut SplitMix64,
    field: &ExtField,
    ell: usize,
    n: usize,
    t: usize,
    mode: ErrorMode,
) -> Result<PlantedError> {
    if t > n {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds n = {n}")));
    }
    if mode == ErrorMode::FullRank && t > ell {
        return Err(Error::InvalidParameter(format!(
            "full-rank errors need ell >= t, got ell = {ell}, t = {t}"
        )));
    }
    let support = sample_full_rank(rng, &field.base(), t, n, t, RankKind::BaseField)?;
    let kind = match mode {
        ErrorMode::Uniform => RankKind::BaseField,
        ErrorMode::FullRank => RankKind::ExtensionField,
    };
    let coeffs = sample_full_rank(rng, field, ell, t, t, kind)?;
    let error = coeffs.mul(&support)?;
    Ok(PlantedError {
        coeffs,
        support,
        error,
    })
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub code: LinearCode,
    pub ell: usize,
    pub t: usize,
    pub trials: u64,
    pub seed: u64,
    pub mode: ErrorMode,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let n = self.code.n();
        if self.ell == 0 {
            return Err(Error::InvalidParameter("ell must be >= 1".into()));
        }
        if self.t > n {
            return Err(Error::InvalidParameter(format!(
                "t = {} exceeds n = {n}",
                self.t
            )));
        }
        if self.t > self.ell * self.code.field().m() as usize {
            return Err(Error::InvalidParameter("t exceeds ell * m".into()));
        }
        if self.mode == ErrorMode::FullRank && self.t > self.ell {
            return Err(Error::InvalidParameter(
                "full-rank mode needs t <= ell".into(),
            ));
        }
        Ok(())
    }
}

/// Result of one trial, kept for tests and callers that want per-trial detail.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub codeword: Matrix,
    pub planted: PlantedError,
    pub outcome: DecodeOutcome,
}

pub fn run_trial(cfg: &SimConfig, generator: &Matrix, index: u64) -> Result<TrialRecord> {
    let field = cfg.code.field();
    let mut rng = SplitMix64::for_trial(cfg.seed, index);
    let message = random_matrix(&mut rng, field, cfg.ell, cfg.code.k());
    let codeword = message.mul(generator)?;
    let planted = sample_error(&mut rng, field, cfg.ell, cfg.code.n(), cfg.t, cfg.mode)?;
    let received = codeword.add(&planted.error)?;
    let outcome = decoder::decode(cfg.code.parity_check(), &received, cfg.code.min_distance())?;
    Ok(TrialRecord {
        codeword,
        planted,
        outcome,
    })
}

fn classify(rec: &TrialRecord) -> Tally {
    let mut t = Tally {
        trials: 1,
        ..Tally::default()
    };
    if rec.planted.error.rank() == rec.planted.support.rows() {
        t.full_rank_errors = 1;
    }
    match &rec.outcome {
        DecodeOutcome::Success(d) if d.codeword == rec.codeword => {
            t.successes = 1;
            let truth = decoder::rank_support(&rec.planted.error);
            let dual = d.h_sub.ext_expand().orth_complement();
            if !dual.is_ok_and(|v| v.row_space_eq(&truth)) {
                t.duality_violations = 1;
            }
        }
        DecodeOutcome::Success(_) => t.miscorrections = 1,
        DecodeOutcome::Failure { reason, .. } => match reason {
            FailureReason::TooManyErrors | FailureReason::SupportDimensionMismatch { .. } => {
                t.support_failures = 1
            }
            FailureReason::RankDeficient | FailureReason::Inconsistent => t.erasure_failures = 1,
            FailureReason::VerificationFailed => t.verification_failures = 1,
        },
    }
    t
}

/// Runs `cfg.trials` independent trials. Tallies depend only on the config,
/// never on scheduling.
pub fn run_trials(cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    let start = Instant::now();
    let generator = cfg.code.generator();
    let work = || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, &generator, i).map(|rec| classify(&rec)))
            .try_reduce(Tally::default, |a, b| Ok(a + b))
    };
    let tally = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    Ok(SimReport::new(cfg, tally, start.elapsed().as_secs_f64()))
}

/// Success condition of the Loidreau–Overbeck interleaved Gabidulin decoder:
/// the stack `[g; g^[1]; …; g^[n-t-2]; E; E^[1]; …; E^[n-k-t-1]]` has
/// `F_{q^m}`-rank `n - 1`, where `t = rank_q(E)`.
pub fn lo_condition_check(code: &GabidulinCode, e: &Matrix) -> Result<bool> {
    let (n, k) = (code.n(), code.k());
    if e.cols() != n {
        return Err(Error::DimensionMismatch {
            op: "lo_condition_check",
            left: (1, n),
            right: e.shape(),
        });
    }
    let t = e.rank_q();
    if t + 2 > n || t + k + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "t = {t} too large for n = {n}, k = {k}"
        )));
    }
    let f = code.field();
    let mut stack = crate::codes::moore_matrix(f, code.locators(), n - t - 1);
    let e = e.lift(f)?;
    for i in 0..(n - k - t) {
        stack = stack.vstack(&e.frobenius(i as u32))?;
    }
    Ok(stack.rank() == n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> ExtField {
        ExtField::with_default_modulus(2, m).unwrap()
    }

    #[test]
    fn zero_rank_sampling_is_immediate() {
        let f = gf(3);
        let mut rng = SplitMix64::new(1);
        let before = rng.clone();
        let z = sample_full_rank(&mut rng, &f, 3, 4, 0, RankKind::ExtensionField).unwrap();
        assert!(z.is_zero());
        assert_eq!(rng, before);
        let e = sample_error(&mut rng, &f, 2, 4, 0, ErrorMode::Uniform).unwrap();
        assert!(e.error.is_zero());
    }

    #[test]
    fn identity_sized_requests_always_succeed() {
        let f = gf(2).base();
        let mut rng = SplitMix64::new(5);
        for _ in 0..100 {
            let m = sample_full_rank(&mut rng, &f, 3, 3, 3, RankKind::ExtensionField).unwrap();
            assert_eq!(m.rank(), 3);
        }
        assert!(sample_full_rank(&mut rng, &f, 2, 2, 3, RankKind::ExtensionField).is_err());
    }

    #[test]
    fn rank_one_binary_2x2_is_uniform() {
        let f = gf(1);
        let mut rng = SplitMix64::new(99);
        let mut counts = std::collections::HashMap::new();
        let n = 100_000;
        for _ in 0..n {
            let m = sample_full_rank(&mut rng, &f, 2, 2, 1, RankKind::ExtensionField).unwrap();
            *counts.entry(m.codes()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 9);
        let expected = n as f64 / 9.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // χ²(8) upper 0.1% point is 26.12.
        assert!(chi2 < 26.12, "chi2 = {chi2}");
    }

    #[test]
    fn sampled_errors_have_requested_weight() {
        let f = gf(3);
        let mut rng = SplitMix64::new(3);
        let mut full = 0;
        let n = 2000;
        for _ in 0..n {
            let e = sample_error(&mut rng, &f, 2, 3, 1, ErrorMode::Uniform).unwrap();
            assert_eq!(e.error.rank_q(), 1);
            if e.error.rank() == 1 {
                full += 1;
            }
        }
        let bound = success_lower_bound(1, 2, 3, 2).unwrap().product_f64();
        assert!(full as f64 / n as f64 >= bound);
        for _ in 0..200 {
            let e = sample_error(&mut rng, &f, 3, 3, 2, ErrorMode::FullRank).unwrap();
            assert_eq!(e.error.rank_q(), 2);
            assert_eq!(e.error.rank(), 2);
        }
        assert!(sample_error(&mut rng, &f, 1, 3, 2, ErrorMode::FullRank).is_err());
    }

    fn small_config(t: usize, mode: ErrorMode, trials: u64) -> SimConfig {
        let f = gf(4);
        SimConfig {
            code: GabidulinCode::with_power_basis(&f, 4, 1)
                .unwrap()
                .to_linear(),
            ell: 2,
            t,
            trials,
            seed: 42,
            mode,
            threads: None,
        }
    }

    #[test]
    fn zero_errors_always_succeed() {
        let r = run_trials(&small_config(0, ErrorMode::Uniform, 200)).unwrap();
        assert_eq!(r.tally.successes, 200);
        assert_eq!(r.empirical_rate(), 1.0);
    }

    #[test]
    fn tallies_are_independent_of_thread_count() {
        let mut cfg = small_config(2, ErrorMode::Uniform, 3000);
        cfg.threads = Some(1);
        let one = run_trials(&cfg).unwrap();
        cfg.threads = Some(4);
        let four = run_trials(&cfg).unwrap();
        assert_eq!(one.tally, four.tally);
        assert_eq!(one.tally.total(), 3000);
        cfg.seed = 43;
        assert_ne!(run_trials(&cfg).unwrap().tally, one.tally);
    }

    #[test]
    fn full_rank_mode_never_fails_within_guarantee() {
        let r = run_trials(&small_config(2, ErrorMode::FullRank, 2000)).unwrap();
        assert_eq!(r.tally.successes, 2000);
        assert_eq!(r.tally.duality_violations, 0);
    }

    #[test]
    fn lo_condition_on_trivial_and_full_rank_errors() {
        let f = gf(6);
        let code = GabidulinCode::with_power_basis(&f, 6, 2).unwrap();
        assert!(lo_condition_check(&code, &Matrix::zeros(&f, 2, 6)).unwrap());
        let mut rng = SplitMix64::new(8);
        for _ in 0..30 {
            let e = sample_error(&mut rng, &f, 2, 6, 2, ErrorMode::FullRank).unwrap();
            assert!(lo_condition_check(&code, &e.error).unwrap());
        }
        let too_heavy = sample_error(&mut rng, &f, 5, 6, 5, ErrorMode::FullRank).unwrap();
        assert!(lo_condition_check(&code, &too_heavy.error).is_err());
    }
}
