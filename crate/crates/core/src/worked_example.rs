//! The `F_{2^5}` worked example: a 2-interleaved `[5, 2, 4]` Gabidulin code
//! with locators `1, α, …, α^4` over `f(x) = x^5 + x^2 + 1`, hit by a rank-2
//! error, decoded stage by stage.
//!
//! Fixtures are written as α-exponents (`None` is zero).

use crate::codes::GabidulinCode;
use crate::decoder::{self, DecodeOutcome};
use crate::error::Result;
use crate::finite_field::{ExtField, FieldEl};
use crate::matrix::Matrix;

type Powers<const R: usize, const C: usize> = [[Option<i64>; C]; R];

const P0: Option<i64> = Some(0);
const Z: Option<i64> = None;

const fn a(k: i64) -> Option<i64> {
    Some(k)
}

const PARITY_CHECK: Powers<3, 5> = [
    [P0, Z, Z, a(17), a(4)],
    [Z, P0, Z, a(7), a(13)],
    [Z, Z, P0, a(16), a(28)],
];
const MESSAGE: Powers<2, 2> = [[a(1), P0], [a(2), a(1)]];
const CODEWORD: Powers<2, 5> = [
    [a(18), Z, a(21), a(9), a(3)],
    [a(19), Z, a(22), a(10), a(4)],
];
const ERROR: Powers<2, 5> = [
    [a(3), a(1), a(3), a(1), a(1)],
    [a(1), a(2), a(1), a(2), a(2)],
];
const RECEIVED: Powers<2, 5> = [
    [a(27), a(1), a(4), a(21), a(6)],
    [a(2), a(2), a(26), a(22), a(7)],
];
const SYNDROME: Powers<3, 2> = [[a(12), a(12)], [a(30), P0], [a(30), a(17)]];
const H_SUB: Powers<1, 5> = [[P0, a(14), P0, a(4), a(8)]];
const COEFFS: Powers<2, 2> = [[a(3), a(1)], [a(1), a(2)]];
const EXT_H_SUB: [[u32; 5]; 5] = [
    [1, 1, 1, 0, 1],
    [0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1],
    [0, 1, 0, 0, 1],
    [0, 1, 0, 1, 0],
];
const SYNDROME_RREF: [[u32; 2]; 3] = [[1, 0], [0, 1], [0, 0]];
const SUPPORT: [[u32; 5]; 2] = [[1, 0, 1, 0, 0], [0, 1, 0, 1, 1]];

fn from_powers<const R: usize, const C: usize>(f: &ExtField, p: &Powers<R, C>) -> Matrix {
    Matrix::from_fn(f, R, C, |i, j| match p[i][j] {
        Some(k) => f.alpha_pow(k).expect("primitive modulus"),
        None => FieldEl::ZERO,
    })
}

/// All fixture matrices of the worked example.
#[derive(Clone, Debug)]
pub struct WorkedExample {
    pub field: ExtField,
    pub code: GabidulinCode,
    pub parity_check: Matrix,
    pub message: Matrix,
    pub codeword: Matrix,
    pub error: Matrix,
    pub received: Matrix,
    pub syndrome: Matrix,
    pub syndrome_rref: Matrix,
    pub h_sub: Matrix,
    pub ext_h_sub: Matrix,
    pub support: Matrix,
    pub error_coeffs: Matrix,
}

impl WorkedExample {
    pub fn new() -> Self {
        let field = ExtField::new(2, vec![1, 0, 1, 0, 0, 1]).expect("x^5 + x^2 + 1 is irreducible");
        let base = field.base();
        let code = GabidulinCode::with_power_basis(&field, 5, 2).expect("valid locators");
        let bin = |rows: &[[u32; 5]]| Matrix::from_codes(&base, rows).expect("binary fixture");
        WorkedExample {
            parity_check: from_powers(&field, &PARITY_CHECK),
            message: from_powers(&field, &MESSAGE),
            codeword: from_powers(&field, &CODEWORD),
            error: from_powers(&field, &ERROR),
            received: from_powers(&field, &RECEIVED),
            syndrome: from_powers(&field, &SYNDROME),
            syndrome_rref: Matrix::from_codes(&field, &SYNDROME_RREF).expect("fixture"),
            h_sub: from_powers(&field, &H_SUB),
            ext_h_sub: bin(&EXT_H_SUB),
            support: bin(&SUPPORT),
            error_coeffs: from_powers(&field, &COEFFS),
            code,
            field,
        }
    }
}

impl Default for WorkedExample {
    fn default() -> Self {
        Self::new()
    }
}

/// How a stage's output is compared with its fixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Exact,
    /// Row spaces over the matrix's own field must agree.
    RowSpace,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub name: &'static str,
    pub computed: Option<Matrix>,
    pub check: Check,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub stages: Vec<Stage>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.passed)
    }

    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.passed)
    }
}

fn stage(name: &'static str, computed: Matrix, expected: &Matrix, check: Check) -> Stage {
    let passed = match check {
        Check::Exact => &computed == expected,
        Check::RowSpace => computed.row_space_eq(expected),
        Check::Skipped => true,
    };
    Stage {
        name,
        computed: Some(computed),
        check,
        passed,
        note: None,
    }
}

/// Runs the decoding pipeline on `received` and checks every stage.
///
/// Intermediate fixtures belong to the fixture received word; for any other
/// input they are printed but not compared, and only the final codeword is
/// checked against the transmitted one.
pub fn run(ex: &WorkedExample, received: &Matrix) -> Result<DemoReport> {
    let h = &ex.parity_check;
    let intermediate = if received == &ex.received {
        |c: Check| c
    } else {
        |_: Check| Check::Skipped
    };
    let mut stages = Vec::new();

    let generated_h = ex.code.parity_check();
    stages.push(stage("H", generated_h, h, Check::Exact));
    let generated_c = ex.code.generator();
    stages.push(stage(
        "C (encoding)",
        ex.message.mul(&generated_c)?,
        &ex.codeword,
        Check::Exact,
    ));

    let s = decoder::syndrome(h, received)?;
    stages.push(stage(
        "S",
        s.clone(),
        &ex.syndrome,
        intermediate(Check::Exact),
    ));
    let (_, echelon) = s.rref_with_transform();
    stages.push(stage(
        "rref(S)",
        echelon.reduced.clone(),
        &ex.syndrome_rref,
        intermediate(Check::Exact),
    ));

    match decoder::compute_hsub(h, &s) {
        Ok(step) => {
            stages.push(stage(
                "H_sub",
                step.h_sub.clone(),
                &ex.h_sub,
                intermediate(Check::RowSpace),
            ));
            // ext of an F_{q^m}-multiple of H_sub spans the same F_q row space.
            stages.push(stage(
                "ext(H_sub)",
                step.h_sub.ext_expand(),
                &ex.ext_h_sub,
                intermediate(Check::RowSpace),
            ));
            stages.push(stage(
                "B",
                decoder::support_from_hsub(&step.h_sub),
                &ex.support,
                intermediate(Check::Exact),
            ));
        }
        Err(e) => stages.push(Stage {
            name: "H_sub",
            computed: None,
            check: Check::Skipped,
            passed: received != &ex.received,
            note: Some(e.to_string()),
        }),
    }

    match decoder::decode(h, received, Some(ex.code.min_distance()))? {
        DecodeOutcome::Success(d) => {
            stages.push(stage(
                "A",
                d.error_coeffs.clone(),
                &ex.error_coeffs,
                intermediate(Check::Exact),
            ));
            stages.push(stage("C", d.codeword, &ex.codeword, Check::Exact));
        }
        DecodeOutcome::Failure { reason, .. } => stages.push(Stage {
            name: "verification",
            computed: None,
            check: Check::Exact,
            passed: false,
            note: Some(format!("decoder reported {reason}")),
        }),
    }
    Ok(DemoReport { stages })
}
