//! Log-space evaluation of the probability estimates behind the lower bound.
//!
//! `n` enters as `L = log2 n` and every quantity is kept as a base-2
//! logarithm, so the inequalities can be checked for `L` in the thousands.
//! Expressions such as `L^2 - 2^(0.9995 L) log2(e) / 9` are themselves too
//! large for `f64` and are held as [`SignedLog`] values.

use std::f64::consts::{LN_2, LOG2_E};
use std::fmt;
use std::io::Write;
use std::ops::{Add, Div, Mul};

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::cert::ParameterProfile;
use crate::error::{Error, Result};

/// The rounded constant in `e^{-2 * 0.09^2 xy} < e^{-0.016 xy}`.
pub const CHERNOFF_ROUNDED: f64 = 0.016;
/// Exponent in the per-set factor `n^{-0.002}` of the edge-count union bound.
pub const LEMMA22_EXPONENT: f64 = 0.002;
/// Multiple of `L` that `log2 mu` must exceed (`mu > n^10`).
pub const MU_TARGET: f64 = 10.0;
/// Multiple of `L` the miss probability must stay below (`< n^{-1.1}`).
pub const MISS_TARGET: f64 = 1.1;
/// Slack allowed in `Delta / mu^2 <= (1 + eps) k^2 / m^2`.
pub const EPSILON_TOL: f64 = 0.01;
/// The miss-probability correction is flagged above this fraction.
pub const MISS_FLAG: f64 = 0.01;
/// Upper end of the middle range of intersection sizes.
pub const CASE2_LIMIT: usize = 100;

/// `log2` of a non-negative quantity; zero is `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct LogProb(pub f64);

impl LogProb {
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);
    pub const ONE: LogProb = LogProb(0.0);

    pub fn from_value(x: f64) -> Self {
        assert!(x >= 0.0, "LogProb of a negative value");
        LogProb(x.log2())
    }

    pub fn log2(self) -> f64 {
        self.0
    }

    /// May underflow to 0 or overflow to infinity.
    pub fn value(self) -> f64 {
        self.0.exp2()
    }

    pub fn sum<I: IntoIterator<Item = LogProb>>(items: I) -> LogProb {
        let v: Vec<f64> = items.into_iter().map(|p| p.0).collect();
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi == f64::NEG_INFINITY {
            return LogProb::ZERO;
        }
        let s: f64 = v.iter().map(|&x| (x - hi).exp2()).sum();
        LogProb(hi + s.log2())
    }
}

/// `±2^log2_abs`, for real quantities whose magnitude overflows `f64`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignedLog {
    pub negative: bool,
    pub log2_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        negative: false,
        log2_abs: f64::NEG_INFINITY,
    };

    pub fn from_f64(x: f64) -> Self {
        SignedLog {
            negative: x < 0.0,
            log2_abs: x.abs().log2(),
        }
    }

    pub fn pos(log2_abs: f64) -> Self {
        SignedLog {
            negative: false,
            log2_abs,
        }
    }

    pub fn neg(log2_abs: f64) -> Self {
        SignedLog {
            negative: true,
            log2_abs,
        }
    }

    pub fn is_negative(self) -> bool {
        self.negative && self.log2_abs > f64::NEG_INFINITY
    }

    pub fn to_f64(self) -> f64 {
        let m = self.log2_abs.exp2();
        if self.negative {
            -m
        } else {
            m
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for LogProb {
    type Output = LogProb;

    fn mul(self, o: LogProb) -> LogProb {
        LogProb(self.0 + o.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for LogProb {
    type Output = LogProb;

    fn div(self, o: LogProb) -> LogProb {
        LogProb(self.0 - o.0)
    }
}

/// Log-sum-exp.
impl Add for LogProb {
    type Output = LogProb;

    fn add(self, o: LogProb) -> LogProb {
        let (hi, lo) = if self.0 >= o.0 { (self.0, o.0) } else { (o.0, self.0) };
        if hi == f64::NEG_INFINITY {
            return LogProb::ZERO;
        }
        LogProb(hi + (lo - hi).exp2().ln_1p() / LN_2)
    }
}

impl Add for SignedLog {
    type Output = SignedLog;

    fn add(self, o: SignedLog) -> SignedLog {
        let (big, small) = if self.log2_abs >= o.log2_abs {
            (self, o)
        } else {
            (o, self)
        };
        if small.log2_abs == f64::NEG_INFINITY {
            return big;
        }
        let d = (small.log2_abs - big.log2_abs).exp2();
        if big.negative == small.negative {
            return SignedLog {
                negative: big.negative,
                log2_abs: big.log2_abs + d.ln_1p() / LN_2,
            };
        }
        if d == 1.0 {
            return SignedLog::ZERO;
        }
        SignedLog {
            negative: big.negative,
            log2_abs: big.log2_abs + (-d).ln_1p() / LN_2,
        }
    }
}

impl fmt::Display for SignedLog {
    /// Plain decimal while it fits comfortably, else `-2^x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_abs <= 64.0 {
            write!(f, "{:.6}", self.to_f64())
        } else {
            write!(f, "{}2^{:.6}", if self.negative { "-" } else { "" }, self.log2_abs)
        }
    }
}

fn check_dev(dev: f64, hi: f64) -> Result<()> {
    if !(dev > 0.0 && dev <= hi) {
        return Err(Error::Domain(format!("deviation {dev} outside (0, {hi}]")));
    }
    Ok(())
}

/// `log2 e^{-2 dev^2 xy}`: upper tail of `Bin(xy, 1/2)` beyond `(1/2 + dev) xy`.
pub fn chernoff_upper(x: u64, y: u64, dev: f64) -> Result<LogProb> {
    if x == 0 || y == 0 {
        return Err(Error::Domain("x and y must be at least 1".into()));
    }
    check_dev(dev, 0.5)?;
    Ok(LogProb(-2.0 * dev * dev * x as f64 * y as f64 * LOG2_E))
}

/// `log2 e^{-2 dev^2 draws}`: deviation of a hypergeometric count by `dev * draws`.
pub fn hypergeometric_tail(population: u64, successes: u64, draws: u64, dev: f64) -> Result<LogProb> {
    if draws > population || successes > population {
        return Err(Error::Domain(
            "draws and successes must not exceed the population".into(),
        ));
    }
    check_dev(dev, f64::MAX)?;
    Ok(LogProb(-2.0 * dev * dev * draws as f64 * LOG2_E))
}

/// `1 / log2(1/p)`: how the lower-bound constant scales with edge probability `p`.
pub fn lower_bound_coefficient(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(1.0 / (1.0 / p).log2())
}

fn log2_binomial(k: f64, i: f64) -> f64 {
    (ln_gamma(k + 1.0) - ln_gamma(i + 1.0) - ln_gamma(k - i + 1.0)) / LN_2
}

/// One row of a bound table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundLine {
    pub expression: String,
    pub log2_value: SignedLog,
    pub verdict: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub title: String,
    pub l: f64,
    pub k: f64,
    pub r: f64,
    pub s: f64,
    pub log2_m: f64,
    pub lines: Vec<BoundLine>,
}

pub const CSV_HEADER: [&str; 5] = ["table", "L", "expression", "log2_value", "verdict"];

impl BoundReport {
    fn new(title: &str, l: f64, p: &ParameterProfile) -> Self {
        BoundReport {
            title: title.into(),
            l,
            k: p.k_coeff * l,
            r: p.bad_count_coeff * l,
            s: p.s_coeff * l,
            log2_m: p.m_exp * l,
            lines: Vec::new(),
        }
    }

    fn push(&mut self, expression: &str, log2_value: SignedLog, verdict: Option<bool>) {
        self.lines.push(BoundLine {
            expression: expression.into(),
            log2_value,
            verdict,
        });
    }

    /// Every verdict in the table holds.
    pub fn holds(&self) -> bool {
        self.lines.iter().all(|l| l.verdict != Some(false))
    }

    pub fn to_table(&self) -> String {
        let width = self.lines.iter().map(|l| l.expression.len()).max().unwrap_or(0).max(10);
        let mut out = format!(
            "{} at L = {} (k = {:.3}, r = {:.3}, s = {:.3}, log2 m = {:.3})\n",
            self.title, self.l, self.k, self.r, self.s, self.log2_m
        );
        for line in &self.lines {
            let verdict = match line.verdict {
                Some(true) => "holds",
                Some(false) => "FAILS",
                None => "",
            };
            out += &format!(
                "  {:<width$}  {:>24}  {}\n",
                line.expression,
                line.log2_value.to_string(),
                verdict
            );
        }
        out
    }

    pub fn write_csv<W: Write>(&self, w: &mut csv::Writer<W>) -> Result<()> {
        for line in &self.lines {
            let verdict = line.verdict.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                self.title.as_str(),
                &self.l.to_string(),
                &line.expression,
                &line.log2_value.to_string(),
                &verdict,
            ])
            .map_err(|e| Error::Io(e.into()))?;
        }
        Ok(())
    }
}

/// Small-set independence estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma21Bounds {
    pub l: f64,
    pub s: f64,
    /// `log2((n - s) 2^-s)`.
    pub log2_expectation: f64,
    /// `log2(n^0.999 log2 n)`.
    pub log2_threshold: f64,
    /// Threshold below half the expectation.
    pub below_half: bool,
    /// `log2 e^{-n^0.9995 / 9}`.
    pub tail: SignedLog,
    /// `log2(2 n^{L/2000})`.
    pub log2_set_count: f64,
    pub set_count_below_n_log_n: bool,
    /// `log2[n^{log n} e^{-n^0.9995/9}]`.
    pub total: SignedLog,
    pub holds: bool,
}

pub fn lemma21_bounds(l: f64, p: &ParameterProfile) -> Lemma21Bounds {
    let s = p.class_coeff * l;
    let log2_expectation = l + (-s * (-l).exp2()).ln_1p() / LN_2 - s;
    let log2_threshold = p.indep_exp * l + l.log2();
    let tail = SignedLog::neg(p.indep_exp_hi * l + (LOG2_E / 9.0).log2());
    let log2_set_count = 1.0 + p.class_coeff * l * l;
    let total = SignedLog::from_f64(l * l) + tail;
    Lemma21Bounds {
        l,
        s,
        log2_expectation,
        log2_threshold,
        below_half: log2_threshold < log2_expectation - 1.0,
        tail,
        log2_set_count,
        set_count_below_n_log_n: log2_set_count < l * l,
        holds: total.is_negative(),
        total,
    }
}

impl Lemma21Bounds {
    pub fn report(&self, p: &ParameterProfile) -> BoundReport {
        let mut r = BoundReport::new("small-set independence", self.l, p);
        r.push("log2 E[count]", SignedLog::from_f64(self.log2_expectation), None);
        r.push(
            "log2 threshold (< E/2)",
            SignedLog::from_f64(self.log2_threshold),
            Some(self.below_half),
        );
        r.push("log2 tail", self.tail, None);
        r.push(
            "log2 #sets (< L^2)",
            SignedLog::from_f64(self.log2_set_count),
            Some(self.set_count_below_n_log_n),
        );
        r.push("log2 union total (< 0)", self.total, Some(self.holds));
        r
    }
}

/// Edge-count estimate for sets with many neighbors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma22Bounds {
    pub l: f64,
    pub x: f64,
    pub dev: f64,
    /// `2 dev^2`, compared against the rounded constant.
    pub chernoff_coeff: f64,
    pub chernoff_rounding_ok: bool,
    /// `log2(e n^{0.001} e^{-0.016 L / 4})`.
    pub per_set_log2: f64,
    /// `per_set_log2 <= -0.002 L`; only true for large `L`.
    pub per_set_ok: bool,
    /// `log2[n^{L/4} n^{-0.002 n^0.999}]`.
    pub dominant: SignedLog,
    /// Dominant term plus `log2 n` for the number of summands.
    pub total: SignedLog,
    pub holds: bool,
}

pub fn lemma22_bounds(l: f64, p: &ParameterProfile) -> Lemma22Bounds {
    let x = p.bad_count_coeff * l;
    let dev = 0.5 - p.bad_frac;
    let chernoff_coeff = 2.0 * dev * dev;
    let per_set_log2 = LOG2_E + (1.0 - p.indep_exp) * l - CHERNOFF_ROUNDED * x * LOG2_E;
    let penalty = SignedLog::neg((LEMMA22_EXPONENT * l).log2() + p.indep_exp * l);
    let dominant = SignedLog::from_f64(x * l) + penalty;
    let total = dominant + SignedLog::from_f64(l);
    Lemma22Bounds {
        l,
        x,
        dev,
        chernoff_coeff,
        chernoff_rounding_ok: chernoff_coeff > CHERNOFF_ROUNDED,
        per_set_log2,
        per_set_ok: per_set_log2 <= -LEMMA22_EXPONENT * l,
        dominant,
        holds: total.is_negative(),
        total,
    }
}

impl Lemma22Bounds {
    pub fn report(&self, p: &ParameterProfile) -> BoundReport {
        let mut r = BoundReport::new("edge-count union bound", self.l, p);
        r.push(
            "2 dev^2 (> 0.016)",
            SignedLog::from_f64(self.chernoff_coeff),
            Some(self.chernoff_rounding_ok),
        );
        r.push(
            "log2 per-set factor (<= -0.002 L)",
            SignedLog::from_f64(self.per_set_log2),
            Some(self.per_set_ok),
        );
        r.push("log2 dominant term", self.dominant, None);
        r.push("log2 total with n summands (< 0)", self.total, Some(self.holds));
        r
    }
}

/// Second-moment bookkeeping for transversal cliques.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JansonReport {
    pub l: f64,
    pub k: f64,
    pub r: f64,
    pub s: f64,
    pub log2_m: f64,
    /// `k log2 m - k(k-1)/2`.
    pub log2_mu: f64,
    /// `0.03 k L`, the weaker chain bound.
    pub log2_mu_chain: f64,
    /// (a) `log2 mu >= 10 L`.
    pub verdict_a: bool,
    /// Smallest `L` with (a).
    pub crossover: f64,
    /// `log2 sum_{i=2}^{k-1} Delta_i / mu^2`.
    pub log2_delta_over_mu2: f64,
    /// `log2(k^2 / m^2)`.
    pub log2_k2_over_m2: f64,
    pub epsilon: f64,
    /// (b) `Delta / mu^2 <= (1 + eps) k^2 / m^2` with `eps <= 0.01`.
    pub verdict_b: bool,
    /// `log2(Delta_2 / mu^2)`.
    pub case1: f64,
    /// `3 (log2 k + 1.5 - log2 m)`, the simplified bound at `i = 3`.
    pub case2_at_3: f64,
    /// Largest per-`i` term for `3 <= i < 100`.
    pub case2_max: Option<f64>,
    /// `log2` of the summed terms for `100 <= i <= k - 1`.
    pub case3_sum: Option<f64>,
    /// `log2[2^n e^{-mu^2 / 2 Delta}]`.
    pub union_total: SignedLog,
    /// (c) `union_total < 0`.
    pub verdict_c: bool,
    /// `s_coeff * log2(miss_base)`.
    pub miss_coeff: f64,
    /// (d) `miss_coeff < -1.1`.
    pub verdict_d: bool,
    /// `log2(k 0.6^s)`.
    pub log2_miss_per_set: f64,
    /// `log2(n 0.6^s)`: union over all outside vertices.
    pub log2_miss_union: f64,
    pub miss_flagged: bool,
}

fn log2_mu(l: f64, p: &ParameterProfile) -> f64 {
    let k = p.k_coeff * l;
    k * p.m_exp * l - k * (k - 1.0) / 2.0
}

fn crossover(p: &ParameterProfile) -> f64 {
    let f = |l: f64| log2_mu(l, p) - MU_TARGET * l;
    let (mut lo, mut hi) = (1.0, 2.0);
    while f(hi) < 0.0 && hi < 1e12 {
        lo = hi;
        hi *= 2.0;
    }
    if f(hi) < 0.0 {
        return f64::INFINITY;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

pub fn janson_report(l: f64, p: &ParameterProfile) -> JansonReport {
    let k = p.k_coeff * l;
    let log2_m = p.m_exp * l;
    let log2_mu = log2_mu(l, p);
    let term = |i: usize| {
        let fi = i as f64;
        log2_binomial(k, fi) + fi * (fi - 1.0) / 2.0 - fi * log2_m
    };
    let i_max = (k - 1.0).floor() as usize;
    let terms: Vec<(usize, f64)> = (2..=i_max).map(|i| (i, term(i))).collect();
    let log2_delta_over_mu2 = LogProb::sum(terms.iter().map(|&(_, t)| LogProb(t))).log2();
    let log2_k2_over_m2 = 2.0 * k.log2() - 2.0 * log2_m;
    let epsilon = ((log2_delta_over_mu2 - log2_k2_over_m2) * LN_2).exp_m1();
    let case2: Vec<f64> = terms
        .iter()
        .filter(|&&(i, _)| (3..CASE2_LIMIT).contains(&i))
        .map(|&(_, t)| t)
        .collect();
    let case3: Vec<LogProb> = terms
        .iter()
        .filter(|&&(i, _)| i >= CASE2_LIMIT)
        .map(|&(_, t)| LogProb(t))
        .collect();
    let union_total = SignedLog::pos(l) + SignedLog::neg(-log2_delta_over_mu2 - 1.0 + LOG2_E.log2());
    let miss_coeff = p.s_coeff * p.miss_base.log2();
    let log2_miss = p.s_coeff * l * p.miss_base.log2();
    let log2_miss_union = l + log2_miss;
    JansonReport {
        l,
        k,
        r: p.bad_count_coeff * l,
        s: p.s_coeff * l,
        log2_m,
        log2_mu,
        log2_mu_chain: 0.03 * k * l,
        verdict_a: log2_mu >= MU_TARGET * l,
        crossover: crossover(p),
        log2_delta_over_mu2,
        log2_k2_over_m2,
        epsilon,
        verdict_b: epsilon <= EPSILON_TOL,
        case1: terms.first().map_or(f64::NEG_INFINITY, |&(_, t)| t),
        case2_at_3: 3.0 * (k.log2() + 1.5 - log2_m),
        case2_max: case2.iter().copied().reduce(f64::max),
        case3_sum: (!case3.is_empty()).then(|| LogProb::sum(case3).log2()),
        verdict_c: union_total.is_negative(),
        union_total,
        miss_coeff,
        verdict_d: miss_coeff < -MISS_TARGET,
        log2_miss_per_set: k.log2() + log2_miss,
        log2_miss_union,
        miss_flagged: log2_miss_union > MISS_FLAG.log2(),
    }
}

impl JansonReport {
    pub fn holds(&self) -> bool {
        self.verdict_a && self.verdict_b && self.verdict_c && self.verdict_d
    }

    pub fn report(&self, p: &ParameterProfile) -> BoundReport {
        let mut r = BoundReport::new("transversal cliques", self.l, p);
        let f = SignedLog::from_f64;
        r.push("(a) log2 mu (>= 10 L)", f(self.log2_mu), Some(self.verdict_a));
        r.push(
            "log2 mu chain 0.03 k L",
            f(self.log2_mu_chain),
            Some(self.log2_mu >= self.log2_mu_chain),
        );
        r.push("crossover L* for (a)", f(self.crossover), None);
        r.push("log2 Delta/mu^2", f(self.log2_delta_over_mu2), None);
        r.push("log2 k^2/m^2", f(self.log2_k2_over_m2), None);
        r.push("(b) epsilon (<= 0.01)", f(self.epsilon), Some(self.verdict_b));
        r.push("case i=2", f(self.case1), None);
        r.push("case i=3 simplified", f(self.case2_at_3), None);
        if let Some(c) = self.case2_max {
            r.push("case 3<=i<100 max term", f(c), None);
        }
        if let Some(c) = self.case3_sum {
            r.push("case i>=100 summed", f(c), None);
        }
        r.push(
            "(c) log2[2^n exp(-mu^2/2Delta)] (< 0)",
            self.union_total,
            Some(self.verdict_c),
        );
        r.push("(d) s log2(0.6) / L (< -1.1)", f(self.miss_coeff), Some(self.verdict_d));
        r.push("log2 k 0.6^s", f(self.log2_miss_per_set), None);
        r.push(
            "log2 n 0.6^s (<= log2 0.01)",
            f(self.log2_miss_union),
            Some(!self.miss_flagged),
        );
        r
    }
}

/// Rows for the edge-probability scaling of the lower bound.
pub fn coefficient_report(ps: &[f64]) -> Result<Vec<(f64, f64)>> {
    ps.iter().map(|&p| Ok((p, lower_bound_coefficient(p)?))).collect()
}
