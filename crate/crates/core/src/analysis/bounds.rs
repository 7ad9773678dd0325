//! Closed-form bounds checked by the lemma suite.

use serde::{Deserialize, Serialize};

use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    OneModP,
    Sublines,
    Size,
    Q0Secants,
    Blokhuis,
    DoubleExponent,
    PlaneLower,
    PlaneLinear,
    PlaneGap,
    PlaneCap,
    GoodPlanes,
    SingleBadSecant,
}

pub const ALL_LEMMAS: [Lemma; 12] = [
    Lemma::OneModP,
    Lemma::Sublines,
    Lemma::Size,
    Lemma::Q0Secants,
    Lemma::Blokhuis,
    Lemma::DoubleExponent,
    Lemma::PlaneLower,
    Lemma::PlaneLinear,
    Lemma::PlaneGap,
    Lemma::PlaneCap,
    Lemma::GoodPlanes,
    Lemma::SingleBadSecant,
];

impl Lemma {
    pub fn id(self) -> &'static str {
        match self {
            Lemma::OneModP => "one-mod-p",
            Lemma::Sublines => "sublines",
            Lemma::Size => "size",
            Lemma::Q0Secants => "q0-secants",
            Lemma::Blokhuis => "blokhuis",
            Lemma::DoubleExponent => "double-exponent",
            Lemma::PlaneLower => "plane-lower",
            Lemma::PlaneLinear => "plane-linear",
            Lemma::PlaneGap => "plane-gap",
            Lemma::PlaneCap => "plane-cap",
            Lemma::GoodPlanes => "good-planes",
            Lemma::SingleBadSecant => "single-bad-secant",
        }
    }

    pub fn from_id(id: &str) -> Option<Lemma> {
        ALL_LEMMAS.iter().copied().find(|l| l.id() == id)
    }

    /// The statement being checked, as a formula.
    pub fn formula(self) -> &'static str {
        match self {
            Lemma::OneModP => "|L cap B| = 0 or 1 (mod p) for every line L",
            Lemma::Sublines => "|L cap B| = q0+1 implies L cap B is a subline PG(1,q0)",
            Lemma::Size => "|B| <= q0^h + q0^(h-1) + q0^(h-2) + 3 q0^(h-3)",
            Lemma::Q0Secants => "#(q0+1)-secants through P >= q0^(h-1) - 4 q0^(h-2) + 1",
            Lemma::Blokhuis => "#secants through P >= (q - kappa + 1)/p^(e_P) + 1",
            Lemma::DoubleExponent => "e_P = 2e implies #secants through P >= q0^(h-2) - q0^(h-3) - q0^(h-4) - 3 q0^(h-5) + 1",
            Lemma::PlaneLower => "|Pi cap B| >= q0^2 + q0 + 1 for planes with 3 non-collinear points of B",
            Lemma::PlaneLinear => "|Pi cap B| = q0^2 + q0 + 1 implies Pi cap B is a subplane PG(2,q0)",
            Lemma::PlaneGap => "|Pi cap B| > q0^2 + q0 + 1 implies |Pi cap B| >= 2 q0^2 + q0 + 1",
            Lemma::PlaneCap => "|Pi cap B| <= q0^3 + q0^2 + q0 + 1",
            Lemma::GoodPlanes => "#good planes through a (q0+1)-secant is 0 or >= q0^(h-2) - 4 q0^(h-3) + 1",
            Lemma::SingleBadSecant => "#(q0+1)-secants through P on bad planes only <= 1",
        }
    }

    /// Smallest `h` for which the bound has no negative powers of `q0`.
    pub fn min_h(self) -> u32 {
        match self {
            Lemma::Size | Lemma::GoodPlanes => 3,
            Lemma::Q0Secants | Lemma::Blokhuis => 2,
            Lemma::DoubleExponent => 5,
            Lemma::SingleBadSecant => 4,
            _ => 0,
        }
    }

    /// Whether the statement assumes `q0 >= 7`.
    pub fn needs_q0_at_least_7(self) -> bool {
        matches!(
            self,
            Lemma::Size | Lemma::Q0Secants | Lemma::DoubleExponent | Lemma::GoodPlanes | Lemma::SingleBadSecant
        )
    }

    /// Whether the statement assumes that `B` spans a space of dimension `h - 1`.
    pub fn needs_span(self) -> bool {
        matches!(self, Lemma::PlaneCap | Lemma::GoodPlanes | Lemma::SingleBadSecant)
    }
}

/// Extra parameters of the per-point secant bound in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundExtra {
    pub q: u64,
    pub kappa: i64,
    pub p: u32,
    pub e_p: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: i64,
    /// Some term had a negative exponent and was dropped.
    pub truncated: bool,
}

struct Poly {
    q0: i64,
    h: i64,
    value: i64,
    truncated: bool,
}

impl Poly {
    fn new(q0: u64, h: u32) -> Self {
        Poly { q0: q0 as i64, h: h as i64, value: 0, truncated: false }
    }

    /// Adds `coef * q0^(h - k)`, dropping it when the exponent is negative.
    fn term(mut self, coef: i64, k: i64) -> Self {
        let exp = self.h - k;
        if exp < 0 {
            self.truncated = true;
        } else {
            self.value += coef * self.q0.pow(exp as u32);
        }
        self
    }

    fn constant(mut self, c: i64) -> Self {
        self.value += c;
        self
    }

    fn done(self) -> Bound {
        Bound { value: self.value, truncated: self.truncated }
    }
}

pub fn bound_value(name: &str, q0: u64, h: u32, extra: Option<&BoundExtra>) -> Result<Bound, AnalysisError> {
    let lemma = Lemma::from_id(name).ok_or_else(|| AnalysisError::UnknownLemma(name.to_string()))?;
    lemma_bound(lemma, q0, h, extra)
}

pub fn lemma_bound(lemma: Lemma, q0: u64, h: u32, extra: Option<&BoundExtra>) -> Result<Bound, AnalysisError> {
    let q = q0 as i64;
    let b = Poly::new(q0, h);
    Ok(match lemma {
        Lemma::Size => b.term(1, 0).term(1, 1).term(1, 2).term(3, 3).done(),
        Lemma::Q0Secants => b.term(1, 1).term(-4, 2).constant(1).done(),
        Lemma::DoubleExponent => b.term(1, 2).term(-1, 3).term(-1, 4).term(-3, 5).constant(1).done(),
        Lemma::GoodPlanes => b.term(1, 2).term(-4, 3).constant(1).done(),
        Lemma::PlaneLower | Lemma::PlaneLinear => Bound { value: q * q + q + 1, truncated: false },
        Lemma::PlaneGap => Bound { value: 2 * q * q + q + 1, truncated: false },
        Lemma::PlaneCap => Bound { value: q * q * q + q * q + q + 1, truncated: false },
        Lemma::SingleBadSecant => Bound { value: 1, truncated: h < lemma.min_h() },
        Lemma::OneModP | Lemma::Sublines => Bound { value: 0, truncated: false },
        Lemma::Blokhuis => {
            let x = extra.ok_or(AnalysisError::MissingParameters("blokhuis needs q, kappa, p and e_P"))?;
            let num = x.q as i64 - x.kappa + 1;
            let den = (x.p as i64).pow(x.e_p);
            Bound { value: num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0) + 1, truncated: false }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert_eq!(bound_value("size", 7, 3, None).unwrap(), Bound { value: 402, truncated: false });
        assert_eq!(bound_value("q0-secants", 7, 3, None).unwrap().value, 22);
        assert_eq!(bound_value("q0-secants", 7, 4, None).unwrap().value, 148);
        assert_eq!(bound_value("double-exponent", 7, 5, None).unwrap().value, 285);
        assert_eq!(bound_value("good-planes", 11, 4, None).unwrap().value, 78);
        assert_eq!(bound_value("plane-gap", 7, 3, None).unwrap().value, 106);
        assert_eq!(bound_value("plane-cap", 7, 3, None).unwrap().value, 400);
        let x = BoundExtra { q: 49, kappa: 8, p: 7, e_p: 1 };
        assert_eq!(bound_value("blokhuis", 7, 2, Some(&x)).unwrap().value, 7);
    }

    #[test]
    fn truncation_and_errors() {
        let b = bound_value("size", 7, 2, None).unwrap();
        assert!(b.truncated);
        assert_eq!(b.value, 49 + 7 + 1);
        assert!(bound_value("double-exponent", 7, 4, None).unwrap().truncated);
        assert!(matches!(bound_value("nope", 7, 3, None), Err(AnalysisError::UnknownLemma(_))));
        assert!(bound_value("blokhuis", 7, 2, None).is_err());
        // ceiling: (49 - 10 + 1)/7 = 5.71..
        let x = BoundExtra { q: 49, kappa: 10, p: 7, e_p: 1 };
        assert_eq!(bound_value("blokhuis", 7, 2, Some(&x)).unwrap().value, 7);
    }

    #[test]
    fn ids_roundtrip() {
        for l in ALL_LEMMAS {
            assert_eq!(Lemma::from_id(l.id()), Some(l));
        }
    }
}
