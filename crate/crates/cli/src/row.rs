use serde::{Deserialize, Serialize};

/// One line of a report. Values are mantissas at the row's `log10_scale`
/// (`-r log10 n` for Weyl–Nagy rows), so nothing underflows in the second
/// band.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub task: String,
    #[serde(with = "float")]
    pub p: f64,
    #[serde(with = "float")]
    pub r: f64,
    pub n: u64,
    pub beta: String,
    #[serde(with = "float")]
    pub computed_mantissa: f64,
    #[serde(with = "float")]
    pub log10_scale: f64,
    #[serde(with = "float")]
    pub main_mantissa: f64,
    #[serde(with = "float")]
    pub remainder_mantissa: f64,
    /// `computed - main`.
    #[serde(with = "float")]
    pub gap: f64,
    /// `gap / remainder`.
    #[serde(with = "float")]
    pub normalized_gap: f64,
    pub regime: String,
    pub formula_id: String,
    #[serde(with = "float")]
    pub quad_err: f64,
}

pub const ERROR_REGIME: &str = "error";

impl ReportRow {
    /// Row for a point that failed; the message goes in `formula_id`.
    pub fn failed(task: &str, p: f64, r: f64, n: u64, beta: String, msg: String) -> Self {
        Self {
            task: task.to_string(),
            p,
            r,
            n,
            beta,
            computed_mantissa: f64::NAN,
            log10_scale: f64::NAN,
            main_mantissa: f64::NAN,
            remainder_mantissa: f64::NAN,
            gap: f64::NAN,
            normalized_gap: f64::NAN,
            regime: ERROR_REGIME.to_string(),
            formula_id: msg,
            quad_err: f64::NAN,
        }
    }

    pub fn is_error(&self) -> bool {
        self.regime == ERROR_REGIME
    }

    /// Field-wise equality that treats NaN as equal to NaN.
    pub fn same_as(&self, other: &Self) -> bool {
        let f = |a: f64, b: f64| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan());
        self.task == other.task
            && f(self.p, other.p)
            && f(self.r, other.r)
            && self.n == other.n
            && self.beta == other.beta
            && f(self.computed_mantissa, other.computed_mantissa)
            && f(self.log10_scale, other.log10_scale)
            && f(self.main_mantissa, other.main_mantissa)
            && f(self.remainder_mantissa, other.remainder_mantissa)
            && f(self.gap, other.gap)
            && f(self.normalized_gap, other.normalized_gap)
            && self.regime == other.regime
            && self.formula_id == other.formula_id
            && f(self.quad_err, other.quad_err)
    }
}

/// 17 significant digits; non-finite values as `inf`, `-inf`, `nan`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn parse_float(s: &str) -> Option<f64> {
    match s {
        "nan" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}

/// JSON has no non-finite numbers, so those travel as strings.
mod float {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_str(&super::fmt_float(*x))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => super::parse_float(&t).ok_or_else(|| D::Error::custom(format!("bad float '{t}'"))),
        }
    }
}
