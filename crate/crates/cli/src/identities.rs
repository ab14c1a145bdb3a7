//! Fixed special-function identity report (five rows).

use std::f64::consts::PI;

use wna_core::specfun::{elliptic_k, f_power, hyp2f1_unit_c, HypergeomPath, HypergeomRequest};
use wna_core::Exponent;

use crate::error::Result;
use crate::row::ReportRow;

/// One identity check: `error` against `tol`; the check passes when
/// `error <= tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub error: f64,
    pub tol: f64,
    pub points: usize,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.error <= self.tol
    }
}

/// Violation counts use this tolerance so that one violation reads as a
/// normalised gap of 2.
const COUNT_TOL: f64 = 0.5;
const SERIES_TOL: f64 = 1e-15;

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step).round() as usize;
    (0..=count).map(|i| lo + step * i as f64).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn fpow(s: f64, q: f64, path: HypergeomPath) -> Result<f64> {
    Ok(f_power(&HypergeomRequest {
        s: Exponent::new(s)?,
        z: q * q,
        tol: 1e-14,
        path,
    })?)
}

pub fn identity_checks() -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::with_capacity(5);

    let zs = grid(0.0, 0.95, 0.005);
    let mut worst = 0.0f64;
    for &z in &zs {
        worst = worst.max(rel(hyp2f1_unit_c(1.0, 1.0, z, SERIES_TOL)?, 1.0 / (1.0 - z)));
    }
    out.push(IdentityCheck {
        name: "F(1,1;1;z)=1/(1-z)",
        error: worst,
        tol: 1e-12,
        points: zs.len(),
    });

    let qs = grid(0.0, 0.95, 0.01);
    let mut worst = 0.0f64;
    for &q in &qs {
        let f = hyp2f1_unit_c(0.5, 0.5, q * q, SERIES_TOL)?;
        worst = worst.max(rel(f, 2.0 / PI * elliptic_k(q)?));
    }
    out.push(IdentityCheck {
        name: "(2/pi)K(q)=F(1/2,1/2;1;q^2)",
        error: worst,
        tol: 1e-9,
        points: qs.len(),
    });

    let ss = [1.0, 1.5, 2.0, 3.0, 6.0];
    let qs = grid(0.0, 0.9, 0.05);
    let mut worst = 0.0f64;
    for &s in &ss {
        for &q in &qs {
            let series = fpow(s, q, HypergeomPath::Series)?;
            let integral = fpow(s, q, HypergeomPath::Integral)?;
            worst = worst.max(rel(series, integral));
        }
    }
    out.push(IdentityCheck {
        name: "F^(1/s) series=integral",
        error: worst,
        tol: 1e-8,
        points: ss.len() * qs.len(),
    });

    // strict for s > 1 and 0 < q < 1 (s = 1 is equality on the left)
    let ss = [1.25, 1.5, 2.0, 3.0, 6.0, 20.0];
    let qs = grid(0.05, 0.95, 0.05);
    let mut bad = 0usize;
    for &s in &ss {
        for &q in &qs {
            let f = fpow(s, q, HypergeomPath::Auto)?;
            if !(2.0 / PI * elliptic_k(q)? < f && f < 1.0 / (1.0 - q)) {
                bad += 1;
            }
        }
    }
    out.push(IdentityCheck {
        name: "(2/pi)K(q)<F^(1/s)<1/(1-q)",
        error: bad as f64,
        tol: COUNT_TOL,
        points: ss.len() * qs.len(),
    });

    let ss = [1.0, 1.25, 1.5, 2.0, 3.0, 6.0, 20.0];
    let mut bad = 0usize;
    for &q in &qs {
        let vals = ss.iter().map(|&s| fpow(s, q, HypergeomPath::Auto)).collect::<Result<Vec<_>>>()?;
        bad += vals.windows(2).filter(|w| !(w[1] > w[0])).count();
    }
    out.push(IdentityCheck {
        name: "F^(1/s) increasing in s",
        error: bad as f64,
        tol: COUNT_TOL,
        points: ss.len() * qs.len(),
    });
    Ok(out)
}

pub fn identity_rows() -> Result<Vec<ReportRow>> {
    Ok(identity_checks()?
        .into_iter()
        .map(|c| ReportRow {
            task: "identities".into(),
            p: f64::NAN,
            r: f64::NAN,
            n: c.points as u64,
            beta: "-".into(),
            computed_mantissa: c.error,
            log10_scale: 0.0,
            main_mantissa: 0.0,
            remainder_mantissa: c.tol,
            gap: c.error,
            normalized_gap: c.error / c.tol,
            regime: "-".into(),
            formula_id: c.name.into(),
            quad_err: f64::NAN,
        })
        .collect())
}
