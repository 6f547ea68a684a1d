use std::fmt::Write as _;
use std::ops::Add;

use super::bounds::{success_lower_bound, wilson_interval, Z_99};
use super::{ErrorMode, SimConfig};
use crate::error::{Error, Result};

/// Per-outcome trial counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub trials: u64,
    pub successes: u64,
    pub support_failures: u64,
    pub erasure_failures: u64,
    pub verification_failures: u64,
    pub miscorrections: u64,
    /// Planted errors whose `F_{q^m}`-rank equals their rank weight.
    pub full_rank_errors: u64,
    /// Correct decodings where the recovered support disagreed with the planted one.
    pub duality_violations: u64,
}

impl Tally {
    /// Sum of the five outcome classes; always equals `trials`.
    pub fn total(&self) -> u64 {
        self.successes
            + self.support_failures
            + self.erasure_failures
            + self.verification_failures
            + self.miscorrections
    }

    fn fields(&self) -> [(&'static str, u64); 8] {
        [
            ("trials", self.trials),
            ("successes", self.successes),
            ("support_failures", self.support_failures),
            ("erasure_failures", self.erasure_failures),
            ("verification_failures", self.verification_failures),
            ("miscorrections", self.miscorrections),
            ("full_rank_errors", self.full_rank_errors),
            ("duality_violations", self.duality_violations),
        ]
    }

    fn field_mut(&mut self, name: &str) -> Option<&mut u64> {
        Some(match name {
            "trials" => &mut self.trials,
            "successes" => &mut self.successes,
            "support_failures" => &mut self.support_failures,
            "erasure_failures" => &mut self.erasure_failures,
            "verification_failures" => &mut self.verification_failures,
            "miscorrections" => &mut self.miscorrections,
            "full_rank_errors" => &mut self.full_rank_errors,
            "duality_violations" => &mut self.duality_violations,
            _ => return None,
        })
    }
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            trials: self.trials + o.trials,
            successes: self.successes + o.successes,
            support_failures: self.support_failures + o.support_failures,
            erasure_failures: self.erasure_failures + o.erasure_failures,
            verification_failures: self.verification_failures + o.verification_failures,
            miscorrections: self.miscorrections + o.miscorrections,
            full_rank_errors: self.full_rank_errors + o.full_rank_errors,
            duality_violations: self.duality_violations + o.duality_violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub t: usize,
    pub mode: ErrorMode,
    pub seed: u64,
    pub tally: Tally,
    /// Product form of the success lower bound, when `t <= ell`.
    pub bound_product: Option<f64>,
    pub bound_simple: Option<f64>,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub wall_time_s: f64,
}

impl SimReport {
    pub fn new(cfg: &SimConfig, tally: Tally, wall_time_s: f64) -> Self {
        let f = cfg.code.field();
        let bound = success_lower_bound(cfg.t, cfg.ell, f.m(), f.q()).ok();
        let (wilson_low, wilson_high) = wilson_interval(tally.successes, tally.trials, Z_99);
        SimReport {
            field: f.spec_string(),
            n: cfg.code.n(),
            k: cfg.code.k(),
            ell: cfg.ell,
            t: cfg.t,
            mode: cfg.mode,
            seed: cfg.seed,
            tally,
            bound_product: bound.as_ref().map(|b| b.product_f64()),
            bound_simple: bound.as_ref().map(|b| b.simple_f64()),
            wilson_low,
            wilson_high,
            wall_time_s,
        }
    }

    pub fn empirical_rate(&self) -> f64 {
        if self.tally.trials == 0 {
            return 0.0;
        }
        self.tally.successes as f64 / self.tally.trials as f64
    }

    /// Two-column `param,value` CSV.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("param,value\n");
        let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| x.to_string());
        let mut row = |k: &str, v: String| writeln!(s, "{k},{v}").expect("write to String");
        row("field", format!("\"{}\"", self.field));
        row("n", self.n.to_string());
        row("k", self.k.to_string());
        row("ell", self.ell.to_string());
        row("t", self.t.to_string());
        row("mode", self.mode.name().to_string());
        row("seed", self.seed.to_string());
        for (name, v) in self.tally.fields() {
            row(name, v.to_string());
        }
        row("empirical_rate", self.empirical_rate().to_string());
        row("bound_product", opt(self.bound_product));
        row("bound_simple", opt(self.bound_simple));
        row("wilson99_low", self.wilson_low.to_string());
        row("wilson99_high", self.wilson_high.to_string());
        row("wall_time_s", self.wall_time_s.to_string());
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Format(msg);
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("param,value") {
            return Err(bad("missing `param,value` header".into()));
        }
        let mut r = SimReport {
            field: String::new(),
            n: 0,
            k: 0,
            ell: 0,
            t: 0,
            mode: ErrorMode::Uniform,
            seed: 0,
            tally: Tally::default(),
            bound_product: None,
            bound_simple: None,
            wilson_low: 0.0,
            wilson_high: 0.0,
            wall_time_s: 0.0,
        };
        fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Format(format!("bad value `{v}` for `{k}`")))
        }
        let opt = |k: &str, v: &str| -> Result<Option<f64>> {
            if v == "NA" {
                Ok(None)
            } else {
                num(k, v).map(Some)
            }
        };
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once(',')
                .ok_or_else(|| bad(format!("malformed line `{line}`")))?;
            let v = v.trim();
            match k {
                "field" => r.field = v.trim_matches('"').to_string(),
                "n" => r.n = num(k, v)?,
                "k" => r.k = num(k, v)?,
                "ell" => r.ell = num(k, v)?,
                "t" => r.t = num(k, v)?,
                "mode" => r.mode = ErrorMode::parse(v).map_err(|e| bad(e.to_string()))?,
                "seed" => r.seed = num(k, v)?,
                "empirical_rate" => {}
                "bound_product" => r.bound_product = opt(k, v)?,
                "bound_simple" => r.bound_simple = opt(k, v)?,
                "wilson99_low" => r.wilson_low = num(k, v)?,
                "wilson99_high" => r.wilson_high = num(k, v)?,
                "wall_time_s" => r.wall_time_s = num(k, v)?,
                other => match r.tally.field_mut(other) {
                    Some(slot) => *slot = num(k, v)?,
                    None => return Err(bad(format!("unknown parameter `{other}`"))),
                },
            }
        }
        Ok(r)
    }

    /// `rate,<f> bound,<f> n,<int> seed,<int>`
    pub fn summary_line(&self) -> String {
        let bound = self
            .bound_product
            .map_or_else(|| "NA".to_string(), |b| format!("{b:.6}"));
        format!(
            "rate,{:.6} bound,{} n,{} seed,{}",
            self.empirical_rate(),
            bound,
            self.tally.trials,
            self.seed
        )
    }
}
