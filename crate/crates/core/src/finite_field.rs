//! Arithmetic in a prime field `F_q` and its degree-`m` extension `F_{q^m}`.
//!
//! Elements are stored as integer codes: the code `c = Σ c_i q^i` with base-`q`
//! digits `c_0, …, c_{m-1}` stands for `Σ c_i α^i`, where `α` is the residue
//! class of the indeterminate modulo the field polynomial. Codes below `q` are
//! exactly the elements of the prime subfield, so a matrix over `F_q` uses the
//! same codes whether it is viewed in `F_q` or in `F_{q^m}`.
//!
//! Fields of order up to [`TABLE_LIMIT`] carry exp/log tables; larger fields
//! fall back to schoolbook polynomial multiplication.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which exp/log tables are built.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Largest supported field order (codes must fit in a `u32`).
pub const ORDER_LIMIT: u64 = 1 << 31;

/// An element of `F_{q^m}` in its integer-code encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldEl(pub u32);

impl FieldEl {
    pub const ZERO: FieldEl = FieldEl(0);
    pub const ONE: FieldEl = FieldEl(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Conway polynomials for `q = 2`, constant term first.
const CONWAY_GF2: &[&[u32]] = &[
    &[1, 1],
    &[1, 1, 1],
    &[1, 1, 0, 1],
    &[1, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 1, 1, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 1, 0, 0, 0, 1],
    &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1],
    &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

struct Tables {
    /// `exp[i] = g^i` for `i in 0..2(N-1)`, doubled so products skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

struct Inner {
    q: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    q_pow: Vec<u32>,
    alpha_primitive: bool,
    tables: Option<Tables>,
    base: Option<ExtField>,
}

/// The tower `F_q ⊂ F_{q^m}` in the polynomial basis `(1, α, …, α^{m-1})`.
///
/// Cheap to clone; all clones share the same tables. Two handles compare equal
/// when they describe the same `(q, m, modulus)`.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtField({})", self.spec_string())
    }
}

impl fmt::Display for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `f` over `F_q`; coefficients constant term first.
fn poly_rem(a: &[u32], f: &[u32], q: u32) -> Vec<u32> {
    let df = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > df {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - df;
            for (i, &fi) in f[..df].iter().enumerate() {
                let sub = (lead as u64 * fi as u64 % q as u64) as u32;
                r[shift + i] = (r[shift + i] + q - sub) % q;
            }
        }
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], q: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % q as u64) as u32);
                x /= q as u64;
            }
            g.push(1);
            if poly_rem(f, &g, q).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtField {
    /// Builds `F_{q^m}` from a monic irreducible modulus of degree `m`
    /// (coefficients constant term first).
    pub fn new(q: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidField(format!("q = {q} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= q) {
            return Err(Error::DigitOutOfRange { digit: c, q });
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let order = (q as u64)
            .checked_pow(m)
            .filter(|&o| o <= ORDER_LIMIT)
            .ok_or_else(|| Error::InvalidField(format!("q^m = {q}^{m} exceeds 2^31")))?;
        if !is_irreducible(&modulus, q) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{q}"
            )));
        }
        let base = if m == 1 {
            None
        } else {
            Some(ExtField::prime(q)?)
        };
        let q_pow = (0..m).map(|i| q.pow(i)).collect();
        let mut inner = Inner {
            q,
            m,
            order: order as u32,
            modulus,
            q_pow,
            alpha_primitive: false,
            tables: None,
            base,
        };
        let alpha = inner.alpha_code();
        inner.alpha_primitive = inner.is_generator(alpha);
        if order <= TABLE_LIMIT {
            inner.tables = Some(inner.build_tables(alpha));
        }
        Ok(ExtField(Arc::new(inner)))
    }

    /// `F_{q^m}` with the shipped default modulus: the Conway polynomial for
    /// `q = 2, m <= 16`, otherwise the smallest primitive polynomial.
    pub fn with_default_modulus(q: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidField("m must be >= 1".into()));
        }
        if q == 2 && (m as usize) <= CONWAY_GF2.len() {
            return ExtField::new(2, CONWAY_GF2[m as usize - 1].to_vec());
        }
        if !is_prime(q) {
            return Err(Error::InvalidField(format!("q = {q} is not prime")));
        }
        if (q as u64).checked_pow(m).is_none_or(|o| o > ORDER_LIMIT) {
            return Err(Error::InvalidField(format!("q^m = {q}^{m} exceeds 2^31")));
        }
        let tail = (q as u64).pow(m);
        for idx in 0..tail {
            let mut f = Vec::with_capacity(m as usize + 1);
            let mut x = idx;
            for _ in 0..m {
                f.push((x % q as u64) as u32);
                x /= q as u64;
            }
            f.push(1);
            if f[0] == 0 || !is_irreducible(&f, q) {
                continue;
            }
            let field = ExtField::new(q, f)?;
            if field.is_alpha_primitive() {
                return Ok(field);
            }
        }
        Err(Error::InvalidField(format!(
            "no primitive polynomial found for q={q}, m={m}"
        )))
    }

    /// The prime field `F_q` itself (`m = 1`).
    pub fn prime(q: u32) -> Result<Self> {
        ExtField::with_default_modulus(q, 1)
    }

    /// Parses the textual form `q=<int> m=<int> f=<c0,c1,...,cm>`.
    /// `f` may be omitted to select the default modulus.
    pub fn parse_spec(s: &str) -> Result<Self> {
        let mut q = None;
        let mut m = None;
        let mut f = None;
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("expected key=value, got `{tok}`")))?;
            match key {
                "q" => q = Some(parse_u32(val)?),
                "m" => m = Some(parse_u32(val)?),
                "f" => {
                    f = Some(val.split(',').map(parse_u32).collect::<Result<Vec<_>>>()?);
                }
                _ => return Err(Error::Format(format!("unknown field key `{key}`"))),
            }
        }
        let q = q.ok_or_else(|| Error::Format("field spec lacks q".into()))?;
        let m = m.ok_or_else(|| Error::Format("field spec lacks m".into()))?;
        match f {
            Some(f) => {
                if f.len() != m as usize + 1 {
                    return Err(Error::Format(format!(
                        "modulus has {} coefficients, expected m+1 = {}",
                        f.len(),
                        m + 1
                    )));
                }
                ExtField::new(q, f)
            }
            None => ExtField::with_default_modulus(q, m),
        }
    }

    pub fn spec_string(&self) -> String {
        let f: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("q={} m={} f={}", self.0.q, self.0.m, f.join(","))
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// `q^m`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_alpha_primitive(&self) -> bool {
        self.0.alpha_primitive
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// The prime subfield `F_q`.
    pub fn base(&self) -> ExtField {
        match &self.0.base {
            Some(b) => b.clone(),
            None => self.clone(),
        }
    }

    /// True if `other` is this field's prime subfield (or this field itself).
    pub fn contains_field(&self, other: &ExtField) -> bool {
        self == other || (other.is_prime_field() && other.q() == self.q())
    }

    /// The residue class `α` of the indeterminate.
    pub fn alpha(&self) -> FieldEl {
        FieldEl(self.0.alpha_code())
    }

    pub fn element(&self, code: u32) -> Result<FieldEl> {
        if code < self.0.order {
            Ok(FieldEl(code))
        } else {
            Err(Error::CodeOutOfRange {
                code,
                order: self.0.order,
            })
        }
    }

    #[inline]
    pub fn is_base_element(&self, a: FieldEl) -> bool {
        a.0 < self.0.q
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldEl> {
        (0..self.0.order).map(FieldEl)
    }

    #[inline]
    pub fn add(&self, a: FieldEl, b: FieldEl) -> FieldEl {
        let q = self.0.q;
        if q == 2 {
            return FieldEl(a.0 ^ b.0);
        }
        if self.0.m == 1 {
            return FieldEl((a.0 + b.0) % q);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for &p in &self.0.q_pow {
            out += ((x % q + y % q) % q) * p;
            x /= q;
            y /= q;
        }
        FieldEl(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldEl) -> FieldEl {
        let q = self.0.q;
        if q == 2 {
            return a;
        }
        let (mut x, mut out) = (a.0, 0u32);
        for &p in &self.0.q_pow {
            out += ((q - x % q) % q) * p;
            x /= q;
        }
        FieldEl(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldEl, b: FieldEl) -> FieldEl {
        if self.0.q == 2 {
            FieldEl(a.0 ^ b.0)
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldEl, b: FieldEl) -> FieldEl {
        if a.0 == 0 || b.0 == 0 {
            return FieldEl::ZERO;
        }
        match &self.0.tables {
            Some(t) => FieldEl(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldEl(self.0.mul_poly(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldEl) -> Result<FieldEl> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.0.order - 1;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Ok(FieldEl(t.exp[((n - l) % n) as usize]))
            }
            None => Ok(self.pow(a, (n - 1) as u64)),
        }
    }

    pub fn div(&self, a: FieldEl, b: FieldEl) -> Result<FieldEl> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldEl, e: u64) -> FieldEl {
        if e == 0 {
            return FieldEl::ONE;
        }
        if a.0 == 0 {
            return FieldEl::ZERO;
        }
        let n = (self.0.order - 1) as u64;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                FieldEl(t.exp[((l * (e % n)) % n) as usize])
            }
            None => FieldEl(self.0.pow_poly(a.0, e)),
        }
    }

    /// The Frobenius power `a^{q^i}`.
    pub fn frobenius(&self, a: FieldEl, i: u32) -> FieldEl {
        if a.0 == 0 {
            return a;
        }
        let n = (self.0.order - 1) as u64;
        let e = mod_pow(self.0.q as u64, i as u64, n);
        // a^n = 1, so e = 0 stands for a^n.
        self.pow(a, if e == 0 { n } else { e })
    }

    /// The `i`-th base-`q` digit of `a`, i.e. the coefficient of `α^i`.
    #[inline]
    pub fn digit(&self, a: FieldEl, i: usize) -> u32 {
        if self.0.q == 2 {
            (a.0 >> i) & 1
        } else {
            (a.0 / self.0.q_pow[i]) % self.0.q
        }
    }

    /// Coordinates of `a` in the basis `(1, α, …, α^{m-1})`.
    pub fn as_vector(&self, a: FieldEl) -> Vec<u32> {
        (0..self.0.m as usize).map(|i| self.digit(a, i)).collect()
    }

    pub fn from_vector(&self, digits: &[u32]) -> Result<FieldEl> {
        if digits.len() != self.0.m as usize {
            return Err(Error::Format(format!(
                "expected {} digits, got {}",
                self.0.m,
                digits.len()
            )));
        }
        let mut code = 0u32;
        for (&d, &p) in digits.iter().zip(&self.0.q_pow) {
            if d >= self.0.q {
                return Err(Error::DigitOutOfRange {
                    digit: d,
                    q: self.0.q,
                });
            }
            code += d * p;
        }
        Ok(FieldEl(code))
    }

    /// `α^k`; requires a primitive modulus and table support.
    pub fn alpha_pow(&self, k: i64) -> Result<FieldEl> {
        let t = self.primitive_tables()?;
        let n = (self.0.order - 1) as i64;
        Ok(FieldEl(t.exp[k.rem_euclid(n) as usize]))
    }

    /// Discrete logarithm to base `α`, in `[0, q^m - 1)`.
    pub fn dlog(&self, a: FieldEl) -> Result<u32> {
        let t = self.primitive_tables()?;
        if a.0 == 0 {
            return Err(Error::ZeroLog);
        }
        Ok(t.log[a.0 as usize])
    }

    fn primitive_tables(&self) -> Result<&Tables> {
        if !self.0.alpha_primitive {
            return Err(Error::NotPrimitive);
        }
        self.0
            .tables
            .as_ref()
            .ok_or(Error::NoTables(self.0.order as u64))
    }

    /// Renders `a` as `0`, `1` or `a^k` when α-power notation is available.
    pub fn alpha_notation(&self, a: FieldEl) -> String {
        match self.dlog(a) {
            Ok(0) => "1".into(),
            Ok(1) => "a".into(),
            Ok(k) => format!("a^{k}"),
            Err(_) => a.0.to_string(),
        }
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Format(format!("`{s}` is not a non-negative integer")))
}

fn mod_pow(mut b: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r
}

impl Inner {
    fn alpha_code(&self) -> u32 {
        if self.m == 1 {
            // x ≡ -f_0 mod (x + f_0)
            (self.q - self.modulus[0]) % self.q
        } else {
            self.q
        }
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = a % self.q;
                a /= self.q;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().zip(&self.q_pow).map(|(d, p)| d * p).sum()
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let q = self.q as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.m as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % q) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.q);
        r.resize(self.m as usize, 0);
        self.encode(&r)
    }

    fn pow_poly(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_generator(&self, g: u32) -> bool {
        if g == 0 {
            return false;
        }
        let n = (self.order - 1) as u64;
        prime_factors(n)
            .into_iter()
            .all(|p| self.pow_poly(g, n / p) != 1)
    }

    fn build_tables(&self, alpha: u32) -> Tables {
        let gen = if self.alpha_primitive {
            alpha
        } else {
            (2..self.order).find(|&g| self.is_generator(g)).unwrap_or(1)
        };
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            exp[i + n] = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_poly(cur, gen);
        }
        Tables { exp, log }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf32() -> ExtField {
        ExtField::new(2, vec![1, 0, 1, 0, 0, 1]).unwrap()
    }

    /// Independent oracle: carry-less multiply then reduce by `f` bit by bit.
    fn naive_gf2_mul(a: u32, b: u32, f: u32, m: u32) -> u32 {
        let mut prod = 0u64;
        for i in 0..m {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u64) << i;
            }
        }
        for d in (m..2 * m).rev() {
            if (prod >> d) & 1 == 1 {
                prod ^= (f as u64) << (d - m);
            }
        }
        prod as u32
    }

    #[test]
    fn alpha_five_reduces_by_field_polynomial() {
        let f = gf32();
        let a4 = f.pow(f.alpha(), 4);
        assert_eq!(f.mul(a4, f.alpha()), FieldEl(5));
        assert_eq!(f.alpha_pow(5).unwrap(), FieldEl(5));
    }

    #[test]
    fn gf8_table_matches_naive_multiplication() {
        let f = ExtField::new(2, vec![1, 1, 0, 1]).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(
                    f.mul(FieldEl(a), FieldEl(b)).0,
                    naive_gf2_mul(a, b, 0b1011, 3)
                );
            }
        }
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let f = gf32();
        for a in 0..32 {
            for b in 0..32 {
                let t = f.mul(FieldEl(a), FieldEl(b)).0;
                if a != 0 && b != 0 {
                    assert_eq!(t, f.0.mul_poly(a, b));
                }
                assert_eq!(t, naive_gf2_mul(a, b, 0b100101, 5));
            }
        }
    }

    #[test]
    fn identity_and_inverse() {
        let f = ExtField::new(3, vec![2, 2, 1]).unwrap(); // x^2 + 2x + 2 over F_3
        for a in f.elements() {
            assert_eq!(f.mul(a, FieldEl::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), FieldEl::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldEl::ONE);
            }
        }
        assert_eq!(f.inv(FieldEl::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn frobenius_examples() {
        let f = ExtField::new(2, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(f.frobenius(f.alpha(), 1), FieldEl(4));
        assert_eq!(f.frobenius(f.alpha(), 1), f.pow(f.alpha(), 2));
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 3), a);
        }
    }

    #[test]
    fn frobenius_is_fq_linear_exhaustively() {
        for (q, modulus) in [
            (2, vec![1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
            (3, vec![1, 2, 0, 1]),
        ] {
            let f = ExtField::new(q, modulus).unwrap();
            for i in 0..f.m() {
                for a in f.elements() {
                    for c in 0..q {
                        let c = FieldEl(c);
                        assert_eq!(f.frobenius(f.mul(c, a), i), f.mul(c, f.frobenius(a, i)));
                    }
                    // Additivity on a stride to keep the pair loop small.
                    for b in f.elements().step_by(7) {
                        assert_eq!(
                            f.frobenius(f.add(a, b), i),
                            f.add(f.frobenius(a, i), f.frobenius(b, i))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn coordinates() {
        let f = gf32();
        assert_eq!(f.as_vector(FieldEl::ZERO), vec![0; 5]);
        assert_eq!(f.as_vector(f.pow(f.alpha(), 3)), vec![0, 0, 0, 1, 0]);
        let g = ExtField::new(2, vec![1, 1, 0, 1]).unwrap();
        for a in g.elements() {
            assert_eq!(g.from_vector(&g.as_vector(a)).unwrap(), a);
            for b in g.elements() {
                let sum: Vec<u32> = g
                    .as_vector(a)
                    .iter()
                    .zip(g.as_vector(b))
                    .map(|(x, y)| (x + y) % 2)
                    .collect();
                assert_eq!(g.as_vector(g.add(a, b)), sum);
            }
        }
        assert_eq!(
            g.from_vector(&[0, 2, 0]),
            Err(Error::DigitOutOfRange { digit: 2, q: 2 })
        );
    }

    #[test]
    fn alpha_pow_and_dlog_round_trip() {
        let f = gf32();
        assert_eq!(f.alpha_pow(0).unwrap(), FieldEl::ONE);
        for k in 0..=30u32 {
            assert_eq!(f.dlog(f.alpha_pow(k as i64).unwrap()).unwrap(), k % 31);
        }
        assert_eq!(f.alpha_pow(31).unwrap(), FieldEl::ONE);
        assert_eq!(f.dlog(FieldEl::ZERO), Err(Error::ZeroLog));
    }

    #[test]
    fn non_primitive_modulus_refuses_alpha_powers() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible but α has order 5.
        let f = ExtField::new(2, vec![1, 1, 1, 1, 1]).unwrap();
        assert!(!f.is_alpha_primitive());
        assert_eq!(f.alpha_pow(3), Err(Error::NotPrimitive));
        // Arithmetic still works through a different generator.
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldEl::ONE);
        }
        assert_eq!(f.pow(f.alpha(), 5), FieldEl::ONE);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(ExtField::new(2, vec![1, 0, 1]).is_err()); // x^2+1 = (x+1)^2
        assert!(ExtField::new(2, vec![1, 1, 0]).is_err()); // not monic
        assert!(ExtField::new(4, vec![1, 1, 1]).is_err()); // q not prime
        assert!(ExtField::new(2, vec![1, 1, 1, 1]).is_err()); // (x+1)(x^2+1)... reducible
    }

    #[test]
    fn shipped_defaults_are_irreducible_and_primitive() {
        for m in 1..=16 {
            let f = ExtField::with_default_modulus(2, m).unwrap();
            assert!(f.is_alpha_primitive(), "m = {m}");
        }
        let f = ExtField::with_default_modulus(3, 3).unwrap();
        assert!(f.is_alpha_primitive());
        assert_eq!(ExtField::with_default_modulus(2, 5).unwrap(), gf32());
    }

    #[test]
    fn large_field_polynomial_path() {
        let f = ExtField::with_default_modulus(2, 21).unwrap();
        assert!(f.0.tables.is_none());
        let fbits = f
            .modulus()
            .iter()
            .rev()
            .fold(0u32, |acc, &c| (acc << 1) | c);
        let a = FieldEl(0x1abcde);
        let b = FieldEl(0x0f0f0f);
        assert_eq!(f.mul(a, b).0, naive_gf2_mul(a.0, b.0, fbits, 21));
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldEl::ONE);
        assert_eq!(f.frobenius(a, 21), a);
    }

    #[test]
    fn spec_string_round_trip() {
        let f = gf32();
        assert_eq!(f.spec_string(), "q=2 m=5 f=1,0,1,0,0,1");
        assert_eq!(ExtField::parse_spec(&f.spec_string()).unwrap(), f);
        assert_eq!(ExtField::parse_spec("q=2 m=5").unwrap(), f);
        assert!(ExtField::parse_spec("q=2 m=5 f=1,1").is_err());
        assert!(ExtField::parse_spec("q=2 z=5").is_err());
    }
}
