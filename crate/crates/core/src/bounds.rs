//! Exact-rational exponents of `n` in bounds of the form `n^e · 2^n`.
//!
//! The upper bound for `C_2ℓ` with odd `ℓ >= 7` comes out of a short chain:
//! the even-cycle bound `ex(n, C_2m) = O(n^{1 + 1/m})` applied to the link
//! union (a `C_{ℓ-3}` plus a pendant edge, so `m = (ℓ-3)/2`) gives `γ`; the
//! two-lift step gives `σ = (γ + 4)/2`; the 3-partite transfer turns
//! `ex(n, H) <= α n^3` into `ex(Q_n, C) <= α^{1/3} n 2^n`. No floating point here.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// A reduced rational exponent.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Exponent(Ratio::new(num, den)))
    }

    pub fn integer(v: i64) -> Self {
        Exponent(Ratio::from_integer(v))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }
}

impl From<Ratio<i64>> for Exponent {
    fn from(r: Ratio<i64>) -> Self {
        Exponent(r)
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for Exponent {
            type Output = Exponent;
            fn $m(self, rhs: Exponent) -> Exponent {
                Exponent(std::ops::$tr::$m(self.0, rhs.0))
            }
        }
    };
}
forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);
forward_op!(Div, div);

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn q(num: i64, den: i64) -> Exponent {
    Exponent(Ratio::new(num, den))
}

fn check_odd_ell(ell: u32) -> Result<()> {
    if ell < 7 || ell.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "ell = {ell} must be an odd integer >= 7"
        )));
    }
    Ok(())
}

/// `5/6 + 1/(3(ℓ-3))`, the upper-bound exponent for `C_2ℓ`.
pub fn upper_bound_exponent(ell: u32) -> Result<Exponent> {
    check_odd_ell(ell)?;
    Ok(q(5, 6) + q(1, 3 * (i64::from(ell) - 3)))
}

/// Every intermediate exponent of the upper-bound derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pipeline {
    pub ell: u32,
    /// `ex(n, C_{ℓ-3} + pendant) = O(n^γ)`, `γ = 1 + 2/(ℓ-3)`.
    pub gamma: Exponent,
    /// Two-lift extremal exponent `(γ + 4)/2`.
    pub sigma: Exponent,
    /// `α = n^{σ - 3}` from `ex(n, 𝓗) <= α n^3`.
    pub alpha_exp: Exponent,
    /// `α_exp / 3 + 1`, the power of `n` in `α^{1/3} n 2^n`.
    #[serde(rename = "final")]
    pub final_exp: Exponent,
}

pub fn upper_bound_pipeline(ell: u32) -> Result<Pipeline> {
    check_odd_ell(ell)?;
    // C_{ℓ-3} is C_{2m} with m = (ℓ-3)/2; the pendant edge does not change the exponent.
    let m = (i64::from(ell) - 3) / 2;
    let gamma = Exponent::integer(1) + q(1, m);
    let sigma = (gamma + Exponent::integer(4)) / Exponent::integer(2);
    let alpha_exp = sigma - Exponent::integer(3);
    let final_exp = alpha_exp / Exponent::integer(3) + Exponent::integer(1);
    Ok(Pipeline {
        ell,
        gamma,
        sigma,
        alpha_exp,
        final_exp,
    })
}

/// `1/2 + 1/(4ℓ - 2) = ℓ/(2ℓ - 1)`, the random-colouring lower bound, `ℓ >= 2`.
pub fn lower_bound_exponent(ell: u32) -> Result<Exponent> {
    if ell < 2 {
        return Err(Error::invalid(format!("ell = {ell} must be at least 2")));
    }
    Ok(q(1, 2) + q(1, 4 * i64::from(ell) - 2))
}

/// Upper bound for `C_4k`, `k >= 2`: `n^{-1/2 + 1/(2k)} ||Q_n||`, normalised to the `n^e 2^n` scale.
pub fn conlon_c4k_exponent(k: u32) -> Result<Exponent> {
    if k < 2 {
        return Err(Error::invalid(format!("k = {k} must be at least 2")));
    }
    Ok(q(-1, 2) + q(1, 2 * i64::from(k)) + Exponent::integer(1))
}

/// `q_k` in the `O(n^{-q_k} ||Q_n||)` bound for `C_{4k+2}`, `k >= 3`.
pub fn furedi_ozkahya_q(k: u32) -> Result<Exponent> {
    if k < 3 {
        return Err(Error::invalid(format!("k = {k} must be at least 3")));
    }
    let k = i64::from(k);
    Ok(if matches!(k, 3 | 5 | 7) {
        q(1, 2 * k + 1)
    } else {
        q(1, 16) - q(1, 16 * (k - 1))
    })
}

/// [`furedi_ozkahya_q`] normalised: `1 - q_k`.
pub fn furedi_ozkahya_exponent(k: u32) -> Result<Exponent> {
    Ok(Exponent::integer(1) - furedi_ozkahya_q(k)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// One row of the comparison table for a fixed cycle `C_2ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteratureRow {
    pub source: &'static str,
    pub kind: BoundKind,
    /// Exponent `e` in `n^e 2^n`, when it is an exact number.
    pub exponent: Option<Exponent>,
    /// Symbolic form when part of the exponent has no explicit value.
    pub symbolic: Option<String>,
    pub note: String,
}

/// Known exponents that apply to `C_2ℓ`, on the `n^e 2^n` scale.
pub fn literature_exponents(ell: u32) -> Result<Vec<LiteratureRow>> {
    let mut rows = vec![LiteratureRow {
        source: "random colouring lower bound",
        kind: BoundKind::Lower,
        exponent: Some(lower_bound_exponent(ell)?),
        symbolic: None,
        note: format!("1/2 + 1/(4*{ell}-2)"),
    }];
    if ell.is_multiple_of(2) {
        let k = ell / 2;
        if k >= 2 {
            rows.push(LiteratureRow {
                source: "Conlon, C_4k",
                kind: BoundKind::Upper,
                exponent: Some(conlon_c4k_exponent(k)?),
                symbolic: None,
                note: format!("n^(-1/2 + 1/(2k)) ||Q_n|| with k = {k}"),
            });
        }
    } else {
        let k = (ell - 1) / 2;
        if k >= 3 {
            let qk = furedi_ozkahya_q(k)?;
            rows.push(LiteratureRow {
                source: "Furedi-Ozkahya, C_(4k+2)",
                kind: BoundKind::Upper,
                exponent: Some(furedi_ozkahya_exponent(k)?),
                symbolic: None,
                note: format!("n^(-q_k) ||Q_n|| with k = {k}, q_k = {qk}"),
            });
        }
        if ell >= 7 {
            rows.push(LiteratureRow {
                source: "3-partite representation via two-lift",
                kind: BoundKind::Upper,
                exponent: Some(upper_bound_exponent(ell)?),
                symbolic: None,
                note: format!("5/6 + 1/(3*({ell}-3))"),
            });
        }
    }
    rows.push(LiteratureRow {
        source: "Tomon, topological hypergraphs",
        kind: BoundKind::Upper,
        exponent: None,
        symbolic: Some("2/3 + delta, delta = O(log l / l)".into()),
        note: "delta has no explicit constant".into(),
    });
    Ok(rows)
}

/// `value - 5/6`, which equals `1/(3(ℓ-3))` and shrinks toward zero as `ℓ` grows.
pub fn excess_over_limit(ell: u32) -> Result<Exponent> {
    Ok(upper_bound_exponent(ell)? - q(5, 6))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(upper_bound_exponent(7).unwrap(), q(11, 12));
        assert_eq!(upper_bound_exponent(9).unwrap(), q(8, 9));
        assert_eq!(upper_bound_exponent(13).unwrap(), q(13, 15));
        assert!(upper_bound_exponent(6).is_err());
        assert!(upper_bound_exponent(5).is_err());
    }

    #[test]
    fn pipeline_at_seven() {
        let p = upper_bound_pipeline(7).unwrap();
        assert_eq!(p.gamma, q(3, 2));
        assert_eq!(p.sigma, q(11, 4));
        assert_eq!(p.alpha_exp, q(-1, 4));
        assert_eq!(p.final_exp, q(11, 12));
    }

    #[test]
    fn alpha_matches_closed_form() {
        for ell in (7..=99).step_by(2) {
            let p = upper_bound_pipeline(ell).unwrap();
            assert_eq!(p.alpha_exp, q(-1, 2) + q(1, i64::from(ell) - 3));
        }
    }

    #[test]
    fn literature_spot_values() {
        assert_eq!(lower_bound_exponent(2).unwrap(), q(2, 3));
        assert_eq!(furedi_ozkahya_q(3).unwrap(), q(1, 7));
        assert_eq!(furedi_ozkahya_exponent(3).unwrap(), q(6, 7));
        assert_eq!(furedi_ozkahya_q(4).unwrap(), q(1, 16) - q(1, 48));
        assert_eq!(conlon_c4k_exponent(2).unwrap(), q(3, 4));
        assert!(conlon_c4k_exponent(1).is_err());
        assert!(lower_bound_exponent(1).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = literature_exponents(7).unwrap();
        let sources: Vec<_> = rows.iter().map(|r| r.source).collect();
        assert_eq!(sources.len(), 4);
        assert!(rows.iter().any(|r| r.exponent == Some(q(11, 12))));
        assert!(rows.iter().any(|r| r.symbolic.is_some()));
        let rows = literature_exponents(4).unwrap();
        assert!(rows.iter().any(|r| r.exponent == Some(q(3, 4))));
        assert_eq!(literature_exponents(2).unwrap().len(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(q(11, 12).to_string(), "11/12");
        assert_eq!(q(-2, 8).to_string(), "-1/4");
        assert_eq!(Exponent::integer(3).to_string(), "3");
        assert!(Exponent::new(1, 0).is_err());
    }
}
