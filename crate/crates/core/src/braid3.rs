//! Three-strand braids of modular knots, their reduced Burau matrices, and
//! the Alexander polynomials of their closures.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::qdeform::{fricke_trace, Laurent, MatLaurent};
use crate::words::{CyclicWord, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidGen {
    S1,
    S1Inv,
    S2,
    S2Inv,
}

impl BraidGen {
    pub fn inverse(self) -> BraidGen {
        match self {
            BraidGen::S1 => BraidGen::S1Inv,
            BraidGen::S1Inv => BraidGen::S1,
            BraidGen::S2 => BraidGen::S2Inv,
            BraidGen::S2Inv => BraidGen::S2,
        }
    }

    /// Reduced Burau matrix in the variable `t`.
    pub fn burau(self) -> MatLaurent {
        let t = |c: i64, e: i64| Laurent::monomial(c, e);
        let (zero, one) = (Laurent::zero(), Laurent::one());
        match self {
            BraidGen::S1 => MatLaurent {
                a: t(-1, 1),
                b: one.clone(),
                c: zero,
                d: one,
            },
            BraidGen::S1Inv => MatLaurent {
                a: t(-1, -1),
                b: t(1, -1),
                c: zero,
                d: one,
            },
            BraidGen::S2 => MatLaurent {
                a: one,
                b: zero,
                c: t(1, 1),
                d: t(-1, 1),
            },
            BraidGen::S2Inv => MatLaurent {
                a: one.clone(),
                b: zero,
                c: one,
                d: t(-1, -1),
            },
        }
    }
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BraidGen::S1 => "s1",
            BraidGen::S1Inv => "s1^-1",
            BraidGen::S2 => "s2",
            BraidGen::S2Inv => "s2^-1",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord3(pub Vec<BraidGen>);

impl BraidWord3 {
    pub fn gens(&self) -> &[BraidGen] {
        &self.0
    }

    pub fn inverse(&self) -> BraidWord3 {
        BraidWord3(self.0.iter().rev().map(|g| g.inverse()).collect())
    }
}

impl fmt::Display for BraidWord3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `L ↦ s1⁻¹`, `R ↦ s2`, letter by letter.
pub fn braid_of_word(w: &Word) -> BraidWord3 {
    BraidWord3(
        w.letters()
            .iter()
            .map(|l| match l {
                Letter::L => BraidGen::S1Inv,
                Letter::R => BraidGen::S2,
            })
            .collect(),
    )
}

pub fn braid_of(a: &CyclicWord) -> BraidWord3 {
    braid_of_word(a.word())
}

pub fn burau(b: &BraidWord3) -> MatLaurent {
    b.0.iter().fold(MatLaurent::identity(), |acc, g| &acc * &g.burau())
}

/// `1 + t + t²`.
pub fn trefoil_factor() -> Laurent {
    Laurent::from_terms([(1, 0), (1, 1), (1, 2)])
}

/// Representative of `±t^k·p` with valuation 0 and positive constant term.
pub fn normalize_unit(p: &Laurent) -> Laurent {
    let Some(v) = p.valuation() else {
        return Laurent::zero();
    };
    let p = p.shift(-v);
    if p.trailing_coeff().is_some_and(|c| c.is_negative()) {
        -p
    } else {
        p
    }
}

fn divide_by_trefoil_factor(p: &Laurent, what: &str) -> Result<Laurent> {
    let shifted = p.shift(-p.valuation().unwrap_or(0));
    shifted
        .div_exact(&trefoil_factor())
        .ok_or_else(|| Error::ConventionMismatch(format!("{what} {p} is not divisible by 1 + t + t^2")))
}

/// `det(I − Br(b)) / (1 + t + t²)`, normalised up to units.
pub fn alexander_of_braid(b: &BraidWord3) -> Result<Laurent> {
    let det = (&MatLaurent::identity() - &burau(b)).det();
    Ok(normalize_unit(&divide_by_trefoil_factor(&det, "det(I - Br)")?))
}

pub fn alexander(a: &CyclicWord) -> Result<Laurent> {
    alexander_of_braid(&braid_of(a))
}

/// `q^{Rad}·(q^{Rad} − Tr A_q + q^{−Rad})` with `q² = −t`.
pub fn fricke_side_numerator(a: &CyclicWord) -> Result<Laurent> {
    let rad = a.rad();
    let expr = Laurent::monomial(1, 2 * rad) - Laurent::monomial(1, rad) * fricke_trace(a) + Laurent::one();
    expr.substitute_square(-1)
        .ok_or_else(|| Error::Parity(format!("odd exponent in the Fricke side of {a}")))
}

/// The Fricke side of the identity, normalised up to units.
pub fn fricke_alexander(a: &CyclicWord) -> Result<Laurent> {
    let num = fricke_side_numerator(a)?;
    Ok(normalize_unit(&divide_by_trefoil_factor(&num, "Fricke numerator")?))
}

/// Whether the Burau and Fricke computations agree up to `±t^k`.
pub fn fricke_alexander_check(a: &CyclicWord) -> Result<bool> {
    if !a.is_hyperbolic() {
        return Err(Error::NotHyperbolic(a.to_string()));
    }
    Ok(alexander(a)? == fricke_alexander(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_classes, transpose, ClassFilter};

    fn c(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().copied())
    }

    #[test]
    fn braid_images() {
        use BraidGen::*;
        assert_eq!(braid_of(&c("RL")).0, [S2, S1Inv]);
        assert_eq!(braid_of(&c("R")).0, [S2]);
        // LLR is stored as its maximal rotation RLL
        assert_eq!(braid_of(&c("LLR")).0, [S2, S1Inv, S1Inv]);
        assert_eq!(braid_of(&c("RL")).to_string(), "s2 s1^-1");
    }

    #[test]
    fn burau_relations() {
        use BraidGen::*;
        for g in [S1, S2] {
            assert_eq!(burau(&BraidWord3(vec![g, g.inverse()])), MatLaurent::identity());
        }
        assert_eq!(
            burau(&BraidWord3(vec![S1, S2, S1])),
            burau(&BraidWord3(vec![S2, S1, S2]))
        );
        assert_eq!(S2.burau().det(), lp(&[(-1, 1)]));
        assert_eq!(S1.burau().det(), lp(&[(-1, 1)]));
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&c("RL")).unwrap(), Laurent::one());
        let det = (&MatLaurent::identity() - &burau(&braid_of(&c("RL")))).det();
        assert_eq!(det, lp(&[(1, -1), (1, 0), (1, 1)]));
        assert_eq!(fricke_side_numerator(&c("RL")).unwrap(), lp(&[(1, -1), (1, 0), (1, 1)]));
        assert_eq!(fricke_alexander_check(&c("RL")), Ok(true));
        assert_eq!(fricke_alexander_check(&c("RLL")), Ok(true));
        assert!(fricke_alexander_check(&c("RRR")).is_err());
    }

    #[test]
    fn alexander_is_a_class_invariant() {
        for cls in enumerate_classes(7, ClassFilter::All) {
            let base = alexander(&cls).unwrap();
            for k in 0..cls.len() {
                let rotated = braid_of_word(&cls.word().rotate(k));
                assert_eq!(alexander_of_braid(&rotated).unwrap(), base);
            }
            let mirrored = normalize_unit(&alexander(&transpose(&cls)).unwrap().reciprocal());
            assert_eq!(mirrored, base, "{cls}");
        }
    }

    #[test]
    fn fricke_alexander_identity_on_the_corpus() {
        for cls in enumerate_classes(8, ClassFilter::Hyperbolic) {
            assert_eq!(fricke_alexander_check(&cls), Ok(true), "{cls}");
        }
    }

    #[test]
    fn burau_determinant_tracks_rademacher() {
        for cls in enumerate_classes(8, ClassFilter::All) {
            let det = burau(&braid_of(&cls)).det();
            let rad = cls.rad();
            let sign = if rad % 2 == 0 { 1 } else { -1 };
            assert_eq!(det, lp(&[(sign, rad)]), "{cls}");
        }
    }
}
