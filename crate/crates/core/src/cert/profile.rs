//! Numeric constants of the lower-bound argument and their resolution to
//! integer thresholds at a concrete `n`.
//!
//! Rounding rule: every resolved count is a ceiling of the real-valued
//! formula, except `m` under a fraction rule, which is a floor (so that
//! `k * m <= |Y|`). A relative slack of `1e-9` absorbs floating-point noise
//! (`1.9 * 20` must resolve to 38, not 39).

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SLACK: f64 = 1e-9;

pub(crate) fn ceil_count(x: f64) -> usize {
    (x - SLACK * x.abs().max(1.0)).ceil().max(0.0) as usize
}

pub(crate) fn floor_count(x: f64) -> usize {
    (x + SLACK * x.abs().max(1.0)).floor().max(0.0) as usize
}

/// Constants of the argument. The optional `*_frac` fields replace the
/// asymptotic power-of-`n` thresholds with size-relative ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterProfile {
    pub name: String,
    /// Bound on the number of classes as a multiple of `log2 n` (paper: 1/2000).
    pub class_coeff: f64,
    /// Exponent of `n^0.999`.
    pub indep_exp: f64,
    /// Exponent of `n^0.9995`.
    pub indep_exp_hi: f64,
    /// Outside vertices with at most this fraction of `|Y|` non-neighbors are bad (0.41).
    pub bad_frac: f64,
    /// The fraction after carving `Z_1..Z_r` (0.405).
    pub bad_frac_after: f64,
    /// `r = bad_count_coeff * log2 n`; also the cap on bad vertices (1/4).
    pub bad_count_coeff: f64,
    /// `k = k_coeff * log2 n` (1.9).
    pub k_coeff: f64,
    /// `s = k - r = s_coeff * log2 n` (1.65).
    pub s_coeff: f64,
    /// `m = n^m_exp` (0.99).
    pub m_exp: f64,
    /// Required non-neighbor fraction inside each `Z_j`, `j > r` (0.4).
    pub z_hit_frac: f64,
    /// Per-set miss probability bound, `1 - z_hit_frac` (0.6).
    pub miss_base: f64,
    /// Significance condition 1 threshold as a fraction of `|Y|` instead of `n^indep_exp`.
    pub sig_frac: Option<f64>,
    /// Independence threshold as a fraction of `(n - s_max) 2^-s_max` instead of `n^indep_exp log2 n`.
    pub indep_frac: Option<f64>,
    /// `m = floor(m_frac * |Y| / k)` instead of `n^m_exp`.
    pub m_frac: Option<f64>,
    /// Stage-3 rejection sampling attempts.
    pub stage3_retries: u32,
}

impl ParameterProfile {
    /// The constants exactly as stated in the argument.
    pub fn paper() -> Self {
        ParameterProfile {
            name: "paper".into(),
            class_coeff: 1.0 / 2000.0,
            indep_exp: 0.999,
            indep_exp_hi: 0.9995,
            bad_frac: 0.41,
            bad_frac_after: 0.405,
            bad_count_coeff: 0.25,
            k_coeff: 1.9,
            s_coeff: 1.65,
            m_exp: 0.99,
            z_hit_frac: 0.4,
            miss_base: 0.6,
            sig_frac: None,
            indep_frac: None,
            m_frac: None,
            stage3_retries: 200,
        }
    }

    /// Workstation-scale variant: same checks, thresholds that are not
    /// vacuous for `n` in the hundreds.
    pub fn desk() -> Self {
        ParameterProfile {
            name: "desk".into(),
            class_coeff: 0.25,
            k_coeff: 1.0,
            s_coeff: 0.75,
            z_hit_frac: 0.2,
            miss_base: 0.8,
            sig_frac: Some(0.05),
            indep_frac: Some(0.25),
            m_frac: Some(1.0),
            ..ParameterProfile::paper()
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "paper" => Some(Self::paper()),
            "desk" => Some(Self::desk()),
            _ => None,
        }
    }

    /// `paper`, `desk`, or a path to a `key=value` profile file.
    pub fn load(spec: &str) -> Result<Self> {
        if let Some(p) = Self::by_name(spec) {
            return Ok(p);
        }
        let text = std::fs::read_to_string(Path::new(spec))?;
        text.parse()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidProfile(msg));
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;
        if !close(self.k_coeff, self.bad_count_coeff + self.s_coeff) {
            return bad(format!(
                "k_coeff {} != bad_count_coeff {} + s_coeff {}",
                self.k_coeff, self.bad_count_coeff, self.s_coeff
            ));
        }
        if !(0.0 < self.bad_frac_after && self.bad_frac_after < self.bad_frac && self.bad_frac < 0.5) {
            return bad("need 0 < bad_frac_after < bad_frac < 1/2".into());
        }
        if !close(self.z_hit_frac + self.miss_base, 1.0) {
            return bad("z_hit_frac + miss_base must equal 1".into());
        }
        for (name, e) in [
            ("indep_exp", self.indep_exp),
            ("indep_exp_hi", self.indep_exp_hi),
            ("m_exp", self.m_exp),
        ] {
            if !(0.0 < e && e < 1.0) {
                return bad(format!("{name}={e} must lie in (0, 1)"));
            }
        }
        for (name, c) in [
            ("class_coeff", self.class_coeff),
            ("bad_count_coeff", self.bad_count_coeff),
            ("k_coeff", self.k_coeff),
        ] {
            if !(c > 0.0 && c.is_finite()) {
                return bad(format!("{name}={c} must be positive"));
            }
        }
        if self.s_coeff < 0.0 {
            return bad("s_coeff must be non-negative".into());
        }
        for (name, f) in [
            ("sig_frac", self.sig_frac),
            ("indep_frac", self.indep_frac),
            ("m_frac", self.m_frac),
        ] {
            if let Some(f) = f {
                if !(f > 0.0 && f <= 1.0) {
                    return bad(format!("{name}={f} must lie in (0, 1]"));
                }
            }
        }
        Ok(())
    }

    /// `key=value` lines, one per field; absent optional fields are omitted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| writeln!(s, "{k}={v}").expect("write to String");
        kv("name", self.name.clone());
        kv("class_coeff", self.class_coeff.to_string());
        kv("indep_exp", self.indep_exp.to_string());
        kv("indep_exp_hi", self.indep_exp_hi.to_string());
        kv("bad_frac", self.bad_frac.to_string());
        kv("bad_frac_after", self.bad_frac_after.to_string());
        kv("bad_count_coeff", self.bad_count_coeff.to_string());
        kv("k_coeff", self.k_coeff.to_string());
        kv("s_coeff", self.s_coeff.to_string());
        kv("m_exp", self.m_exp.to_string());
        kv("z_hit_frac", self.z_hit_frac.to_string());
        kv("miss_base", self.miss_base.to_string());
        for (k, v) in [
            ("sig_frac", self.sig_frac),
            ("indep_frac", self.indep_frac),
            ("m_frac", self.m_frac),
        ] {
            if let Some(v) = v {
                kv(k, v.to_string());
            }
        }
        kv("stage3_retries", self.stage3_retries.to_string());
        s
    }

    /// Thresholds at a concrete `n >= 2`.
    pub fn resolve(&self, n: usize) -> Thresholds {
        assert!(n >= 2, "thresholds need n >= 2");
        let log2_n = (n as f64).log2();
        let s_max = ceil_count(self.class_coeff * log2_n);
        let indep_threshold = match self.indep_frac {
            Some(f) => ceil_count(f * (n - s_max.min(n)) as f64 * 2f64.powi(-(s_max as i32))),
            None => ceil_count((n as f64).powf(self.indep_exp) * log2_n),
        };
        let sig_nonneighbor = match self.sig_frac {
            Some(f) => Scaled::FractionOfY(f),
            None => Scaled::Fixed(ceil_count((n as f64).powf(self.indep_exp))),
        };
        let k = ceil_count(self.k_coeff * log2_n);
        let r = ceil_count(self.bad_count_coeff * log2_n);
        let m = match self.m_frac {
            Some(f) => Scaled::FractionOfY(f),
            None => Scaled::Fixed(ceil_count((n as f64).powf(self.m_exp))),
        };
        Thresholds {
            profile: self.clone(),
            n,
            log2_n,
            s_max,
            indep_threshold,
            sig_nonneighbor,
            bad_cap: r,
            k,
            r,
            s: k.saturating_sub(r),
            m,
        }
    }
}

impl FromStr for ParameterProfile {
    type Err = Error;

    /// Starts from `paper` and overrides the listed keys; `#` comments.
    fn from_str(text: &str) -> Result<Self> {
        let mut p = ParameterProfile::paper();
        p.name = "custom".into();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value
                    .parse::<f64>()
                    .map_err(|_| err(format!("bad number `{value}` for {key}")))
            };
            match key {
                "name" => p.name = value.to_string(),
                "class_coeff" => p.class_coeff = num()?,
                "indep_exp" => p.indep_exp = num()?,
                "indep_exp_hi" => p.indep_exp_hi = num()?,
                "bad_frac" => p.bad_frac = num()?,
                "bad_frac_after" => p.bad_frac_after = num()?,
                "bad_count_coeff" => p.bad_count_coeff = num()?,
                "k_coeff" => p.k_coeff = num()?,
                "s_coeff" => p.s_coeff = num()?,
                "m_exp" => p.m_exp = num()?,
                "z_hit_frac" => p.z_hit_frac = num()?,
                "miss_base" => p.miss_base = num()?,
                "sig_frac" => p.sig_frac = Some(num()?),
                "indep_frac" => p.indep_frac = Some(num()?),
                "m_frac" => p.m_frac = Some(num()?),
                "stage3_retries" => {
                    p.stage3_retries = value.parse().map_err(|_| err(format!("bad count `{value}`")))?
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        p.validate()?;
        Ok(p)
    }
}

/// A count that is either fixed at this `n` or proportional to `|Y|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaled {
    Fixed(usize),
    FractionOfY(f64),
}

/// Integer thresholds resolved from a profile at a given `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub profile: ParameterProfile,
    pub n: usize,
    pub log2_n: f64,
    /// Largest number of color classes the refutation is meant for.
    pub s_max: usize,
    /// Vertices nonadjacent to a small set must exceed this.
    pub indep_threshold: usize,
    /// Significance condition 1: every outside vertex has at least this many non-neighbors in `Y`.
    pub sig_nonneighbor: Scaled,
    /// Significance condition 2: at most this many bad outside vertices.
    pub bad_cap: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    /// Size of each `Z_i`.
    pub m: Scaled,
}

impl Thresholds {
    pub fn sig_nonneighbor_for(&self, y_size: usize) -> usize {
        match self.sig_nonneighbor {
            Scaled::Fixed(t) => t,
            Scaled::FractionOfY(f) => ceil_count(f * y_size as f64),
        }
    }

    pub fn m_for(&self, y_size: usize) -> usize {
        match self.m {
            Scaled::Fixed(m) => m,
            Scaled::FractionOfY(f) if self.k > 0 => floor_count(f * y_size as f64 / self.k as f64),
            Scaled::FractionOfY(_) => 0,
        }
    }

    /// Real-valued cut: outside vertices with at most this many non-neighbors are bad.
    pub fn bad_cut(&self, y_size: usize) -> f64 {
        self.profile.bad_frac * y_size as f64
    }

    /// Required non-neighbors of each outside vertex inside each random `Z_j`.
    pub fn z_hit_min(&self, m: usize) -> usize {
        ceil_count(self.profile.z_hit_frac * m as f64)
    }
}
