//! Parsing of the `--field` and `--code` flag values.

use std::path::Path;

use mk_rank::codes::{CodeSpec, GabidulinCode, LinearCode};
use mk_rank::{Error, ExtField, Result};

/// `q,m[,f0,...,fm]` (modulus coefficients lowest degree first), or the
/// key=value form `q=2 m=5 f=1,0,1,0,0,1`.
pub fn parse_field(s: &str) -> Result<ExtField> {
    if s.contains('=') {
        return ExtField::parse_spec(s);
    }
    let nums = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Format(format!("`{t}` in field `{s}` is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    match nums[..] {
        [q, m] => ExtField::with_default_modulus(q, m),
        [q, m, ref f @ ..] if f.len() == m as usize + 1 => ExtField::new(q, f.to_vec()),
        _ => Err(Error::Format(format!(
            "field `{s}` must be `q,m` or `q,m` followed by m+1 modulus coefficients"
        ))),
    }
}

/// `gabidulin:g=<c1>,<c2>,...,k=<int>` or `gabidulin:n=<int>,k=<int>`
/// (locators `1, α, …, α^{n-1}`), or a path to a code spec file.
pub fn parse_code(s: &str, field: Option<&ExtField>) -> Result<LinearCode> {
    if let Some(rest) = s.strip_prefix("gabidulin:") {
        let field = field.ok_or_else(|| {
            Error::InvalidParameter("an inline gabidulin code needs --field".into())
        })?;
        return parse_inline_gabidulin(rest, field).map(|c| c.to_linear());
    }
    let text = std::fs::read_to_string(Path::new(s))
        .map_err(|e| Error::InvalidParameter(format!("cannot read code file `{s}`: {e}")))?;
    let spec = CodeSpec::parse(&text)?;
    if let Some(f) = field {
        if f != spec.field() {
            return Err(Error::InvalidParameter(format!(
                "--field {f} disagrees with the code file field {}",
                spec.field()
            )));
        }
    }
    Ok(spec.to_linear())
}

fn parse_inline_gabidulin(s: &str, field: &ExtField) -> Result<GabidulinCode> {
    let (mut g, mut n, mut k) = (Vec::new(), None, None);
    let mut key = "";
    for tok in s.split(',') {
        let val = match tok.split_once('=') {
            Some((k, v)) => {
                key = k;
                v
            }
            None => tok,
        };
        let num = val
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Format(format!("`{val}` in code `{s}` is not an integer")))?;
        match key {
            "g" => g.push(field.element(num)?),
            "n" => n = Some(num as usize),
            "k" => k = Some(num as usize),
            _ => return Err(Error::Format(format!("unknown gabidulin key in `{s}`"))),
        }
    }
    let k = k.ok_or_else(|| Error::Format(format!("code `{s}` lacks k")))?;
    match (g.is_empty(), n) {
        (false, None) => GabidulinCode::new(field, g, k),
        (true, Some(n)) => GabidulinCode::with_power_basis(field, n, k),
        _ => Err(Error::Format(format!(
            "code `{s}` needs exactly one of g or n"
        ))),
    }
}
