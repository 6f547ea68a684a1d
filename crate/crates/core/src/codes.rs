//! Linear rank-metric codes: Gabidulin construction, parity-check derivation,
//! interleaved encoding and the code spec file format.

use crate::error::{Error, Result};
use crate::finite_field::{ExtField, FieldEl};
use crate::matrix::Matrix;

/// Largest codebook enumerated by [`min_rank_distance_exhaustive`].
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// The `rows × n` Moore matrix with `(i, j)` entry `g_j^{q^i}`.
pub fn moore_matrix(field: &ExtField, g: &[FieldEl], rows: usize) -> Matrix {
    Matrix::from_fn(field, rows, g.len(), |i, j| field.frobenius(g[j], i as u32))
}

/// A Gabidulin code given by its code locators `g` and dimension `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinCode {
    field: ExtField,
    locators: Vec<FieldEl>,
    k: usize,
}

impl GabidulinCode {
    pub fn new(field: &ExtField, locators: Vec<FieldEl>, k: usize) -> Result<Self> {
        let n = locators.len();
        if n == 0 || n > field.m() as usize {
            return Err(Error::InvalidCode(format!(
                "length n = {n} must satisfy 1 <= n <= m = {}",
                field.m()
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!(
                "dimension k = {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        for g in &locators {
            field.element(g.0)?;
        }
        let rank = Matrix::row_vector(field, &locators).rank_q();
        if rank != n {
            return Err(Error::InvalidCode(format!(
                "code locators span only {rank} of {n} dimensions over F_q"
            )));
        }
        Ok(GabidulinCode {
            field: field.clone(),
            locators,
            k,
        })
    }

    /// Locators `1, α, …, α^{n-1}`.
    pub fn with_power_basis(field: &ExtField, n: usize, k: usize) -> Result<Self> {
        let alpha = field.alpha();
        let g = (0..n).map(|i| field.pow(alpha, i as u64)).collect();
        GabidulinCode::new(field, g, k)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn locators(&self) -> &[FieldEl] {
        &self.locators
    }

    pub fn n(&self) -> usize {
        self.locators.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `n - k + 1`; Gabidulin codes are MRD.
    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn generator(&self) -> Matrix {
        moore_matrix(&self.field, &self.locators, self.k)
    }

    pub fn parity_check(&self) -> Matrix {
        parity_check_from_generator(&self.generator())
            .expect("Moore matrix of independent locators has full rank")
    }

    pub fn to_linear(&self) -> LinearCode {
        LinearCode {
            h: self.parity_check(),
            g: Some(self.generator()),
            n: self.n(),
            k: self.k,
            d: Some(self.min_distance()),
        }
    }
}

/// A linear `[n, k, d]` code over `F_{q^m}` described by its parity-check matrix.
///
/// `d` is metadata: decoding never reads it except to flag outcomes beyond
/// the `d - 2` guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    h: Matrix,
    g: Option<Matrix>,
    n: usize,
    k: usize,
    d: Option<usize>,
}

impl LinearCode {
    pub fn from_parity_check(h: Matrix, d: Option<usize>) -> Result<Self> {
        let n = h.cols();
        let rank = h.rank();
        if rank != h.rows() {
            return Err(Error::InvalidCode(format!(
                "parity-check matrix has {} rows but rank {rank}",
                h.rows()
            )));
        }
        if rank > n {
            return Err(Error::InvalidCode("more parity checks than columns".into()));
        }
        Ok(LinearCode {
            h,
            g: None,
            n,
            k: n - rank,
            d,
        })
    }

    pub fn from_generator(g: Matrix, d: Option<usize>) -> Result<Self> {
        let h = parity_check_from_generator(&g)?;
        Ok(LinearCode {
            n: g.cols(),
            k: g.rows(),
            h,
            g: Some(g),
            d,
        })
    }

    pub fn field(&self) -> &ExtField {
        self.h.field()
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.h
    }

    /// The stored generator, or a canonical one derived from `H`.
    pub fn generator(&self) -> Matrix {
        match &self.g {
            Some(g) => g.clone(),
            None => self.h.right_kernel(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.d
    }

    pub fn with_min_distance(mut self, d: Option<usize>) -> Self {
        self.d = d;
        self
    }

    pub fn is_codeword(&self, c: &Matrix) -> Result<bool> {
        Ok(self.h.mul(&c.transpose())?.is_zero())
    }
}

/// A parity-check matrix `H` with `H·Gᵀ = 0`, returned as the reduced row
/// echelon basis of the dual code. When the first `n - k` columns of the dual
/// are independent this is the systematic form `[I | X]`.
pub fn parity_check_from_generator(g: &Matrix) -> Result<Matrix> {
    let rank = g.rank();
    if rank != g.rows() {
        return Err(Error::RankDeficient {
            rank,
            needed: g.rows(),
        });
    }
    Ok(g.right_kernel())
}

/// `C = M·G` for an `ℓ × k` message matrix.
pub fn encode_interleaved(g: &Matrix, message: &Matrix) -> Result<Matrix> {
    message.mul(g)
}

/// Rank weight of a single vector (the `F_q`-rank of its expansion).
pub fn rank_weight(field: &ExtField, v: &[FieldEl]) -> usize {
    Matrix::row_vector(field, v).rank_q()
}

/// Minimum rank distance by enumerating all `q^{mk}` codewords of `G`.
pub fn min_rank_distance_exhaustive(g: &Matrix) -> Result<usize> {
    let f = g.field();
    let (k, n) = g.shape();
    let size = (f.order() as u64)
        .checked_pow(k as u32)
        .filter(|&s| s <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::SizeGuard(format!("q^(mk) = {}^{k} codewords", f.order())))?;
    let mut best = usize::MAX;
    let mut word = vec![FieldEl::ZERO; n];
    for idx in 1..size {
        let mut x = idx;
        word.iter_mut().for_each(|w| *w = FieldEl::ZERO);
        for i in 0..k {
            let coef = FieldEl((x % f.order() as u64) as u32);
            x /= f.order() as u64;
            if coef.is_zero() {
                continue;
            }
            for (w, &gij) in word.iter_mut().zip(g.row(i)) {
                *w = f.add(*w, f.mul(coef, gij));
            }
        }
        let wt = rank_weight(f, &word);
        if wt > 0 {
            best = best.min(wt);
        }
    }
    if best == usize::MAX {
        return Err(Error::InvalidCode("code has no nonzero codeword".into()));
    }
    Ok(best)
}

/// A code as described by a code spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Gabidulin(GabidulinCode),
    Generic(LinearCode),
}

impl CodeSpec {
    pub fn field(&self) -> &ExtField {
        match self {
            CodeSpec::Gabidulin(c) => c.field(),
            CodeSpec::Generic(c) => c.field(),
        }
    }

    pub fn to_linear(&self) -> LinearCode {
        match self {
            CodeSpec::Gabidulin(c) => c.to_linear(),
            CodeSpec::Generic(c) => c.clone(),
        }
    }

    /// Parses a code spec file:
    ///
    /// ```text
    /// q=2 m=5 f=1,0,1,0,0,1
    /// kind=gabidulin g=1,2,4,8,16 k=2
    /// ```
    ///
    /// or, for a generic code, `kind=generic [d=<int>] H=` followed by a matrix
    /// block in the matrix text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let field_line = lines
            .next()
            .ok_or_else(|| Error::Format("empty code spec".into()))?;
        let field = ExtField::parse_spec(field_line)?;
        let kind_line = lines
            .next()
            .ok_or_else(|| Error::Format("code spec lacks a kind line".into()))?;
        let mut kind = None;
        let mut g = None;
        let mut k = None;
        let mut d = None;
        let mut has_h = false;
        for tok in kind_line.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("expected key=value, got `{tok}`")))?;
            match key {
                "kind" => kind = Some(val.to_string()),
                "g" => g = Some(parse_list(val)?),
                "k" => k = Some(parse_usize(val)?),
                "d" => d = Some(parse_usize(val)?),
                "H" if val.is_empty() => has_h = true,
                _ => return Err(Error::Format(format!("unknown code key `{key}`"))),
            }
        }
        match kind.as_deref() {
            Some("gabidulin") => {
                let g = g.ok_or_else(|| Error::Format("gabidulin spec lacks g".into()))?;
                let k = k.ok_or_else(|| Error::Format("gabidulin spec lacks k".into()))?;
                let g = g
                    .into_iter()
                    .map(|c| field.element(c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CodeSpec::Gabidulin(GabidulinCode::new(&field, g, k)?))
            }
            Some("generic") => {
                if !has_h {
                    return Err(Error::Format("generic spec lacks `H=` marker".into()));
                }
                let block: Vec<&str> = lines.collect();
                let h = Matrix::parse_text(&block.join("\n"), Some(&field))?;
                Ok(CodeSpec::Generic(LinearCode::from_parity_check(h, d)?))
            }
            other => Err(Error::Format(format!("unknown code kind {other:?}"))),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            CodeSpec::Gabidulin(c) => {
                let g: Vec<String> = c.locators().iter().map(|e| e.0.to_string()).collect();
                format!(
                    "{}\nkind=gabidulin g={} k={}\n",
                    c.field(),
                    g.join(","),
                    c.k()
                )
            }
            CodeSpec::Generic(c) => {
                let d = c
                    .min_distance()
                    .map(|d| format!(" d={d}"))
                    .unwrap_or_default();
                format!(
                    "{}\nkind=generic{d} H=\n{}",
                    c.field(),
                    c.parity_check().to_text()
                )
            }
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Format(format!("`{s}` is not a non-negative integer")))
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Format(format!("`{t}` is not an element code")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> ExtField {
        ExtField::with_default_modulus(2, m).unwrap()
    }

    fn a(f: &ExtField, k: i64) -> u32 {
        f.alpha_pow(k).unwrap().0
    }

    #[test]
    fn worked_example_generator_and_parity_check() {
        let f = gf(5);
        let code = GabidulinCode::with_power_basis(&f, 5, 2).unwrap();
        let g = code.generator();
        let expected_g: Vec<Vec<u32>> = vec![
            (0..5).map(|i| a(&f, i)).collect(),
            (0..5).map(|i| a(&f, 2 * i)).collect(),
        ];
        assert_eq!(g.codes(), expected_g);
        let h = code.parity_check();
        let expected_h = vec![
            vec![1, 0, 0, a(&f, 17), a(&f, 4)],
            vec![0, 1, 0, a(&f, 7), a(&f, 13)],
            vec![0, 0, 1, a(&f, 16), a(&f, 28)],
        ];
        assert_eq!(h.codes(), expected_h);
        assert!(h.mul(&g.transpose()).unwrap().is_zero());
    }

    #[test]
    fn k_equal_one_generator_is_locator_row() {
        let f = gf(4);
        let code = GabidulinCode::with_power_basis(&f, 4, 1).unwrap();
        assert_eq!(
            code.generator().codes(),
            vec![code.locators().iter().map(|e| e.0).collect::<Vec<_>>()]
        );
    }

    #[test]
    fn systematic_generator_gives_identity_parity_block() {
        let f = gf(3);
        let g = Matrix::from_codes(&f, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let h = parity_check_from_generator(&g).unwrap();
        assert_eq!(h.codes(), vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn random_generators_have_orthogonal_parity_checks() {
        let f = gf(4);
        let mut seed = 0x1234u64;
        let mut tested = 0;
        while tested < 40 {
            let g = Matrix::from_fn(&f, 3, 6, |_, _| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                FieldEl(((seed >> 40) % 16) as u32)
            });
            if g.rank() < 3 {
                assert!(parity_check_from_generator(&g).is_err());
                continue;
            }
            let h = parity_check_from_generator(&g).unwrap();
            assert!(h.mul(&g.transpose()).unwrap().is_zero());
            assert_eq!(h.rank() + g.rank(), 6);
            tested += 1;
        }
    }

    #[test]
    fn gabidulin_codes_are_mrd_by_enumeration() {
        let f3 = gf(3);
        for k in 1..=3 {
            let code = GabidulinCode::with_power_basis(&f3, 3, k).unwrap();
            assert_eq!(
                min_rank_distance_exhaustive(&code.generator()).unwrap(),
                4 - k
            );
        }
        let f4 = gf(4);
        for (n, k) in [(4, 1), (4, 2), (3, 2)] {
            let code = GabidulinCode::with_power_basis(&f4, n, k).unwrap();
            assert_eq!(
                min_rank_distance_exhaustive(&code.generator()).unwrap(),
                n - k + 1
            );
        }
    }

    #[test]
    fn minimum_distance_of_degenerate_codes() {
        let f = gf(3);
        let rep = Matrix::from_codes(&f, &[[1, 1, 1]]).unwrap();
        assert_eq!(min_rank_distance_exhaustive(&rep).unwrap(), 1);
        let full = Matrix::identity(&f, 3);
        assert_eq!(min_rank_distance_exhaustive(&full).unwrap(), 1);
        let big = GabidulinCode::with_power_basis(&gf(10), 10, 3).unwrap();
        assert!(matches!(
            min_rank_distance_exhaustive(&big.generator()),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn invalid_locators_rejected() {
        let f = gf(4);
        let dependent = vec![FieldEl(1), FieldEl(2), FieldEl(3)];
        assert!(matches!(
            GabidulinCode::new(&f, dependent, 1),
            Err(Error::InvalidCode(_))
        ));
        assert!(GabidulinCode::with_power_basis(&f, 5, 2).is_err());
        assert!(GabidulinCode::with_power_basis(&f, 4, 0).is_err());
    }

    #[test]
    fn encoding_gives_codewords() {
        let f = gf(5);
        let code = GabidulinCode::with_power_basis(&f, 5, 2)
            .unwrap()
            .to_linear();
        let m = Matrix::from_codes(&f, &[[a(&f, 1), 1], [a(&f, 2), a(&f, 1)]]).unwrap();
        let c = encode_interleaved(&code.generator(), &m).unwrap();
        let expected = vec![
            vec![a(&f, 18), 0, a(&f, 21), a(&f, 9), a(&f, 3)],
            vec![a(&f, 19), 0, a(&f, 22), a(&f, 10), a(&f, 4)],
        ];
        assert_eq!(c.codes(), expected);
        assert!(code.is_codeword(&c).unwrap());
        let zero = encode_interleaved(&code.generator(), &Matrix::zeros(&f, 3, 2)).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn code_spec_round_trip() {
        let text = "q=2 m=5 f=1,0,1,0,0,1\nkind=gabidulin g=1,2,4,8,16 k=2\n";
        let spec = CodeSpec::parse(text).unwrap();
        assert_eq!(spec.to_text(), text);
        let generic = CodeSpec::Generic(spec.to_linear().with_min_distance(Some(4)));
        let text2 = generic.to_text();
        assert!(text2.contains("kind=generic d=4 H=\n2 5 3 5\n"));
        let parsed = CodeSpec::parse(&text2).unwrap();
        assert_eq!(
            parsed.to_linear().parity_check(),
            spec.to_linear().parity_check()
        );
        assert_eq!(parsed.to_linear().min_distance(), Some(4));
        assert!(CodeSpec::parse("q=2 m=5\nkind=weird\n").is_err());
        assert!(CodeSpec::parse("q=2 m=5\nkind=gabidulin g=1,2,3 k=1\n").is_err());
    }
}
