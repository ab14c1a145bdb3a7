//! Main terms and remainder scales of the asymptotic formulas, regime
//! classification of `(r, n)`, and gap normalisation.
//!
//! Every result is reported at the shared scale `n^{-r}` (log scale
//! `-r ln n`), so comparisons between formulas and against sharp values only
//! ever touch mantissas.

use core::fmt;

use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::real::Real;
use crate::scaled::ScaledValue;
use crate::specfun::{cos_norm, elliptic_k, f_power, HypergeomPath, HypergeomRequest};

/// Relative slack on the band edges.
const EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    /// `√n + 1 ≤ r < n + 1`.
    Band1,
    /// `n + 1 < r ≤ n²`.
    Band2,
    /// `r = n + 1`, which lies in both bands.
    Boundary,
    Outside,
}

/// How `r/n` behaves along a sequence of points. Only a sweep can say this.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RatioClass {
    #[default]
    Unspecified,
    ToZero,
    Bounded { k1: f64, k2: f64 },
    ToInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeTag {
    pub band: Band,
    pub ratio: RatioClass,
}

impl RegimeTag {
    pub fn in_band1(&self) -> bool {
        matches!(self.band, Band::Band1 | Band::Boundary)
    }

    pub fn in_band2(&self) -> bool {
        matches!(self.band, Band::Band2 | Band::Boundary)
    }

    pub fn with_ratio(self, ratio: RatioClass) -> Self {
        Self { ratio, ..self }
    }

    pub fn label(&self) -> &'static str {
        match self.band {
            Band::Band1 => "band1",
            Band::Band2 => "band2",
            Band::Boundary => "boundary",
            Band::Outside => "outside",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Log4,
    Stechkin6,
    Stechkin8,
    Gen11,
    Gen12,
    Cor1,
    Cor2,
    Cor3C,
    Cor3L,
    Eq413,
    Eq422,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::Thm1 => "thm1",
            FormulaId::Thm2 => "thm2",
            FormulaId::Thm3 => "thm3",
            FormulaId::Thm4 => "thm4",
            FormulaId::Log4 => "log4",
            FormulaId::Stechkin6 => "stechkin6",
            FormulaId::Stechkin8 => "stechkin8",
            FormulaId::Gen11 => "gen11",
            FormulaId::Gen12 => "gen12",
            FormulaId::Cor1 => "cor1",
            FormulaId::Cor2 => "cor2",
            FormulaId::Cor3C => "cor3C",
            FormulaId::Cor3L => "cor3L",
            FormulaId::Eq413 => "eq413",
            FormulaId::Eq422 => "eq422",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainTermResult<T> {
    pub main: ScaledValue<T>,
    pub remainder_scale: ScaledValue<T>,
    pub formula_id: FormulaId,
    pub regime: RegimeTag,
}

impl<T: Real> MainTermResult<T> {
    /// `|computed - main| / remainder_scale`, evaluated on mantissas at the
    /// shared scale.
    pub fn normalized_gap(&self, computed: &ScaledValue<T>) -> T {
        let gap = self.gap(computed);
        gap / self.remainder_scale.mantissa
    }

    /// `|computed - main|` as a mantissa at the shared scale.
    pub fn gap(&self, computed: &ScaledValue<T>) -> T {
        (computed.mantissa_at(self.main.log_scale) - self.main.mantissa).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalVariant<T> {
    /// `4/π² ln n` (uniform error on `W^r_{β,∞}`, fixed `r`).
    Log,
    /// `8/π² K(e^{-r/n})`.
    StechkinK,
    /// `4/π` for `r ≥ n + 1`.
    HighR,
    /// `‖cos‖_{p'}/π`, uniform error on `W^r_{β,p}`.
    General11(Exponent<T>),
    /// `‖cos‖_p/π`, `L_p` error on `W^r_{β,1}`.
    General12(Exponent<T>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    C1,
    C2,
    C3C,
    C3L,
    Eq413,
    Eq422,
}

/// Band membership of `(r, n)`. The ratio class is left unspecified.
pub fn regime_classify<T: Real>(r: T, n: u64) -> RegimeTag {
    let (r, nf) = (r.f64(), n as f64);
    let le = |a: f64, b: f64| a <= b * (1.0 + EDGE_TOL);
    let b1 = n >= 1 && le(nf.sqrt() + 1.0, r) && le(r, nf + 1.0);
    let b2 = n >= 1 && le(nf + 1.0, r) && le(r, nf * nf);
    let band = match (b1, b2) {
        (true, true) => Band::Boundary,
        (true, false) => Band::Band1,
        (false, true) => Band::Band2,
        (false, false) => Band::Outside,
    };
    RegimeTag {
        band,
        ratio: RatioClass::Unspecified,
    }
}

fn regime_error<T: Real>(r: T, n: u64, expected: &'static str) -> Error {
    Error::Regime {
        r: r.f64(),
        n,
        expected,
    }
}

fn check_args<T: Real>(r: T, n: u64) -> Result<()> {
    if n == 0 {
        return Err(domain("n must be at least 1", 0.0));
    }
    if !(r > T::zero() && r.is_finite()) {
        return Err(domain("r must be positive and finite", r.f64()));
    }
    Ok(())
}

fn shared_scale<T: Real>(r: T, n: u64) -> T {
    -r * T::of(n).ln()
}

fn at_scale<T: Real>(mantissa: T, r: T, n: u64) -> ScaledValue<T> {
    ScaledValue::new(mantissa, shared_scale(r, n))
}

fn fpower_tol<T: Real>() -> T {
    T::lit(1e-14).max(T::epsilon() * T::lit(64.0))
}

/// `(‖cos‖_s/π) F^{1/s}(s/2, s/2; 1; e^{-2r/n})`; `s = ∞` is the closed
/// `1/(π(1 - e^{-r/n}))`.
fn main_mantissa<T: Real>(s: Exponent<T>, r: T, n: u64) -> Result<T> {
    let x = r / T::of(n);
    match s {
        Exponent::Infinity => Ok(T::one() / (T::PI() * -(-x).exp_m1())),
        Exponent::Finite(sv) => {
            let z = (-T::lit(2.0) * x).exp();
            let f = f_power(&HypergeomRequest {
                s,
                z,
                tol: fpower_tol(),
                path: HypergeomPath::Auto,
            })?;
            Ok(cos_norm(sv)? / T::PI() * f)
        }
    }
}

/// Remainder scale of the theorem bands: `n/r²` in the first band,
/// `r e^{-r/n}/n²` in the second, the larger of the two on the boundary.
pub fn remainder_scale<T: Real>(r: T, n: u64) -> Result<ScaledValue<T>> {
    check_args(r, n)?;
    let tag = regime_classify(r, n);
    let nf = T::of(n);
    let band1 = nf / (r * r);
    let band2 = r * (-r / nf).exp() / (nf * nf);
    let m = match tag.band {
        Band::Band1 => band1,
        Band::Band2 => band2,
        Band::Boundary => band1.max(band2),
        Band::Outside => return Err(regime_error(r, n, "sqrt(n)+1 <= r <= n^2")),
    };
    Ok(at_scale(m, r, n))
}

fn theorem_term<T: Real>(s: Exponent<T>, r: T, n: u64, ids: (FormulaId, FormulaId)) -> Result<MainTermResult<T>> {
    check_args(r, n)?;
    let regime = regime_classify(r, n);
    let remainder = remainder_scale(r, n)?;
    let formula_id = if regime.in_band1() { ids.0 } else { ids.1 };
    Ok(MainTermResult {
        main: at_scale(main_mantissa(s, r, n)?, r, n),
        remainder_scale: remainder,
        formula_id,
        regime,
    })
}

/// Main term of the uniform error on `W^r_{β,p}`:
/// `n^{-r} (‖cos‖_{p'}/π) F^{1/p'}(p'/2, p'/2; 1; e^{-2r/n})`.
pub fn main_term_c<T: Real>(p: Exponent<T>, r: T, n: u64) -> Result<MainTermResult<T>> {
    theorem_term(p.conjugate(), r, n, (FormulaId::Thm1, FormulaId::Thm2))
}

/// Main term of the `L_p` error on `W^r_{β,1}`: as [`main_term_c`] with `p`
/// in place of `p'`.
pub fn main_term_l<T: Real>(p: Exponent<T>, r: T, n: u64) -> Result<MainTermResult<T>> {
    theorem_term(p, r, n, (FormulaId::Thm3, FormulaId::Thm4))
}

/// The classical asymptotic formulas the theorems refine.
pub fn classical_mains<T: Real>(r: T, n: u64, variant: ClassicalVariant<T>) -> Result<MainTermResult<T>> {
    check_args(r, n)?;
    let nf = T::of(n);
    let high_r = || -> Result<T> {
        if r < (nf + T::one()) * (T::one() - T::lit(EDGE_TOL)) {
            return Err(regime_error(r, n, "r >= n+1"));
        }
        Ok((-r * (T::one() / nf).ln_1p()).exp())
    };
    let low_r = || -> Result<()> {
        if r < T::one() {
            return Err(regime_error(r, n, "r >= 1"));
        }
        Ok(())
    };
    let pi = T::PI();
    let (main, rem, id) = match variant {
        ClassicalVariant::Log => {
            low_r()?;
            (T::lit(4.0) / (pi * pi) * nf.ln(), T::one(), FormulaId::Log4)
        }
        ClassicalVariant::StechkinK => {
            low_r()?;
            let k = elliptic_k((-r / nf).exp())?;
            (T::lit(8.0) / (pi * pi) * k, T::one() / r, FormulaId::Stechkin6)
        }
        ClassicalVariant::HighR => (T::lit(4.0) / pi, high_r()?, FormulaId::Stechkin8),
        ClassicalVariant::General11(p) => (cos_norm(p.conjugate().value())? / pi, high_r()?, FormulaId::Gen11),
        ClassicalVariant::General12(p) => (cos_norm(p.value())? / pi, high_r()?, FormulaId::Gen12),
    };
    Ok(MainTermResult {
        main: at_scale(main, r, n),
        remainder_scale: at_scale(rem, r, n),
        formula_id: id,
        regime: regime_classify(r, n),
    })
}

/// Main and remainder terms of the corollaries and of the two auxiliary
/// expansions. The auxiliary ones (`Eq413`, `Eq422`) are dimensionless
/// factors; they are still stored at the shared scale so that every result
/// can be handled the same way.
///
/// `p` is only used by `C3C` (class exponent) and `C3L` (target exponent).
pub fn corollary_terms<T: Real>(which: Corollary, p: Exponent<T>, r: T, n: u64) -> Result<MainTermResult<T>> {
    check_args(r, n)?;
    let regime = regime_classify(r, n);
    let nf = T::of(n);
    let e = (-r / nf).exp();
    let pi = T::PI();
    let need1 = || {
        if regime.in_band1() {
            Ok(())
        } else {
            Err(regime_error(r, n, "sqrt(n)+1 <= r <= n+1"))
        }
    };
    let need2 = || {
        if regime.in_band2() {
            Ok(())
        } else {
            Err(regime_error(r, n, "n+1 <= r <= n^2"))
        }
    };
    let (main, rem, id) = match which {
        Corollary::C1 => {
            need1()?;
            // 1/(π r n^{r-1}) = n^{-r} n/(π r); the O(r/n + 1/r) factor
            // carries the same n/r
            (nf / (pi * r), T::one() + nf / (r * r), FormulaId::Cor1)
        }
        Corollary::C2 => {
            need2()?;
            ((T::one() + e) / pi, (r / (nf * nf) + e) * e, FormulaId::Cor2)
        }
        Corollary::C3C => {
            need2()?;
            (cos_norm(p.conjugate().value())? / pi, e, FormulaId::Cor3C)
        }
        Corollary::C3L => {
            need2()?;
            (cos_norm(p.value())? / pi, e, FormulaId::Cor3L)
        }
        Corollary::Eq413 => {
            need1()?;
            (nf / r, T::one(), FormulaId::Eq413)
        }
        Corollary::Eq422 => {
            need2()?;
            (T::one(), e, FormulaId::Eq422)
        }
    };
    Ok(MainTermResult {
        main: at_scale(main, r, n),
        remainder_scale: at_scale(rem, r, n),
        formula_id: id,
        regime,
    })
}
