//! Integer Laurent polynomials and the one-parameter deformation
//! `L ↦ L_q`, `R ↦ R_q` of the modular group.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modgroup::{st_factor, MatZ, StToken};
use crate::words::{CyclicWord, Letter, Word};

/// `Σ c_k q^k` over a finite range of integer exponents.
///
/// Dense storage from the valuation upward; the zero polynomial has no
/// coefficients. No leading or trailing zeros are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Laurent {
        Laurent::from_coeffs(exp, vec![c.into()])
    }

    /// `q` itself.
    pub fn q() -> Laurent {
        Laurent::monomial(1, 1)
    }

    pub fn from_coeffs(val: i64, coeffs: Vec<BigInt>) -> Laurent {
        let mut p = Laurent { val, coeffs };
        p.trim();
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Laurent
    where
        I: IntoIterator<Item = (C, i64)>,
        C: Into<BigInt>,
    {
        terms
            .into_iter()
            .fold(Laurent::zero(), |acc, (c, e)| acc + Laurent::monomial(c, e))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.val + self.coeffs.len() as i64 - 1)
    }

    /// Lowest exponent; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        usize::try_from(exp - self.val)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    /// Invariant under `q ↦ q⁻¹`.
    pub fn is_reciprocal(&self) -> bool {
        self.is_zero() || (self.val == -self.degree().unwrap() && self.coeffs.iter().eq(self.coeffs.iter().rev()))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute `q ↦ q⁻¹`.
    pub fn reciprocal(&self) -> Laurent {
        match self.degree() {
            None => Laurent::zero(),
            Some(deg) => Laurent::from_coeffs(-deg, self.coeffs.iter().rev().cloned().collect()),
        }
    }

    /// Substitute `q^k ↦ c^{k/2}·t^{k/2}`, defined when all exponents are even.
    pub fn substitute_square(&self, c: i64) -> Option<Laurent> {
        let c = BigInt::from(c);
        let mut out = Laurent::zero();
        for (e, coeff) in self.terms() {
            if e.is_odd() {
                return None;
            }
            let half = e / 2;
            let factor = if half >= 0 {
                Laurent::monomial(num_traits::pow(c.clone(), half as usize), half)
            } else {
                // c = ±1 keeps integrality for negative powers
                if !(c.is_one() || c == BigInt::from(-1)) {
                    return None;
                }
                Laurent::monomial(num_traits::pow(c.clone(), (-half) as usize), half)
            };
            out = out + factor * Laurent::monomial(coeff.clone(), 0);
        }
        Some(out)
    }

    pub fn eval_at(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::zero() {
            return Err(Error::EvalAtZero);
        }
        let horner = self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| {
            acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        });
        Ok(horner * z.powi(self.val as i32))
    }

    pub fn eval_real(&self, x: f64) -> Result<f64> {
        Ok(self.eval_at(Complex64::new(x, 0.0))?.re)
    }

    /// Coefficients as complex numbers, from the valuation upward.
    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect()
    }

    /// Exact quotient, if `other` divides `self` in `ℤ[q, q⁻¹]`.
    pub fn div_exact(&self, other: &Laurent) -> Option<Laurent> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let d = &other.coeffs;
        let lead = d.last().unwrap();
        if rem.len() < d.len() {
            return None;
        }
        let n = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let top = &rem[i + d.len() - 1];
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &q * dj;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_coeffs(self.val - other.val, quot))
    }

    /// Sparse form: `c:e` pairs, highest exponent first.
    pub fn to_sparse(&self) -> String {
        if self.is_zero() {
            return "0:0".into();
        }
        let mut parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}:{e}")).collect();
        parts.reverse();
        parts.join(" ")
    }

    /// Human-readable sum in the named variable, highest exponent first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut terms: Vec<(i64, &BigInt)> = self.terms().collect();
        terms.reverse();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;

    fn add(self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.val.min(o.val);
        let hi = self.degree().unwrap().max(o.degree().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + o.coeff(e)).collect();
        Laurent::from_coeffs(lo, coeffs)
    }
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(self, o: Laurent) -> Laurent {
        &self + &o
    }
}

impl Neg for &Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        -&self
    }
}

impl Sub for &Laurent {
    type Output = Laurent;

    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Sub for Laurent {
    type Output = Laurent;

    fn sub(self, o: Laurent) -> Laurent {
        &self - &o
    }
}

impl Mul for &Laurent {
    type Output = Laurent;

    fn mul(self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::from_coeffs(self.val + o.val, coeffs)
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, o: Laurent) -> Laurent {
        &self * &o
    }
}

/// A 2×2 matrix over `ℤ[q, q⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatLaurent {
    pub a: Laurent,
    pub b: Laurent,
    pub c: Laurent,
    pub d: Laurent,
}

impl MatLaurent {
    pub fn identity() -> MatLaurent {
        MatLaurent {
            a: Laurent::one(),
            b: Laurent::zero(),
            c: Laurent::zero(),
            d: Laurent::one(),
        }
    }

    pub fn l_q() -> MatLaurent {
        MatLaurent {
            a: Laurent::q(),
            b: Laurent::zero(),
            c: Laurent::one(),
            d: Laurent::monomial(1, -1),
        }
    }

    pub fn r_q() -> MatLaurent {
        MatLaurent {
            a: Laurent::q(),
            b: Laurent::one(),
            c: Laurent::zero(),
            d: Laurent::monomial(1, -1),
        }
    }

    pub fn s() -> MatLaurent {
        MatLaurent {
            a: Laurent::zero(),
            b: Laurent::monomial(-1, 0),
            c: Laurent::one(),
            d: Laurent::zero(),
        }
    }

    /// `T_q = R_q·S⁻¹`, of order 3.
    pub fn t_q() -> MatLaurent {
        &MatLaurent::r_q() * &MatLaurent::s().inverse()
    }

    pub fn trace(&self) -> Laurent {
        &self.a + &self.d
    }

    pub fn det(&self) -> Laurent {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn inverse(&self) -> MatLaurent {
        MatLaurent {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn transpose(&self) -> MatLaurent {
        MatLaurent {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn eval_at(&self, q: Complex64) -> Result<[Complex64; 4]> {
        Ok([
            self.a.eval_at(q)?,
            self.b.eval_at(q)?,
            self.c.eval_at(q)?,
            self.d.eval_at(q)?,
        ])
    }
}

impl Mul for &MatLaurent {
    type Output = MatLaurent;

    fn mul(self, o: &MatLaurent) -> MatLaurent {
        MatLaurent {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }
}

impl Add for &MatLaurent {
    type Output = MatLaurent;

    fn add(self, o: &MatLaurent) -> MatLaurent {
        MatLaurent {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }
}

impl Neg for &MatLaurent {
    type Output = MatLaurent;

    fn neg(self) -> MatLaurent {
        MatLaurent {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

impl Sub for &MatLaurent {
    type Output = MatLaurent;

    fn sub(self, o: &MatLaurent) -> MatLaurent {
        self + &(-o)
    }
}

impl fmt::Display for MatLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn q_matrix(w: &Word) -> MatLaurent {
    let (l, r) = (MatLaurent::l_q(), MatLaurent::r_q());
    w.letters()
        .iter()
        .fold(MatLaurent::identity(), |acc, letter| match letter {
            Letter::L => &acc * &l,
            Letter::R => &acc * &r,
        })
}

/// Deform an arbitrary element through its `{S, T}` factorisation.
///
/// Defined up to the sign of the lift, like the element itself.
pub fn deform(m: &MatZ) -> MatLaurent {
    let (s, t) = (MatLaurent::s(), MatLaurent::t_q());
    let t2 = &t * &t;
    st_factor(m)
        .tokens()
        .iter()
        .fold(MatLaurent::identity(), |acc, tok| match tok {
            StToken::S => &acc * &s,
            StToken::T => &acc * &t,
            StToken::T2 => &acc * &t2,
        })
}

pub fn fricke_trace(a: &CyclicWord) -> Laurent {
    q_matrix(a.word()).trace()
}

pub fn disc_q(a: &CyclicWord) -> Laurent {
    let t = fricke_trace(a);
    &(&t * &t) - &Laurent::monomial(4, 0)
}

/// `Tr(XY) − Tr(XY⁻¹)`.
pub fn cos_numerator(x: &MatLaurent, y: &MatLaurent) -> Laurent {
    &(x * y).trace() - &(x * &y.inverse()).trace()
}

fn disc_of(m: &MatLaurent) -> Laurent {
    let t = m.trace();
    &(&t * &t) - &Laurent::monomial(4, 0)
}

/// Sign of `Tr X · Tr Y` on the real ray `q → +∞`.
fn trace_sign(x: &MatLaurent, y: &MatLaurent) -> f64 {
    let s = |m: &MatLaurent| {
        m.trace()
            .leading_coeff()
            .map_or(0, |c| if c.is_negative() { -1 } else { 1 })
    };
    f64::from(s(x) * s(y))
}

/// The cosine of the angle between the axes of `X_q` and `Y_q`.
///
/// `sign(TrX·TrY)·(Tr XY − Tr XY⁻¹)/√(disc X · disc Y)`, principal square
/// root, with the sign factor frozen at its value for large real `q`.
pub fn cos_pair_q(x: &MatLaurent, y: &MatLaurent, q: Complex64) -> Result<Complex64> {
    let num = cos_numerator(x, y).eval_at(q)?;
    let prod = disc_of(x).eval_at(q)? * disc_of(y).eval_at(q)?;
    cos_from_parts(trace_sign(x, y), num, prod, q)
}

pub(crate) fn cos_from_parts(sign: f64, num: Complex64, disc_prod: Complex64, q: Complex64) -> Result<Complex64> {
    if disc_prod.norm() <= f64::EPSILON * num.norm().max(1.0) {
        return Err(Error::Pole { re: q.re, im: q.im });
    }
    Ok(num * sign / disc_prod.sqrt())
}

/// Precomputed symbolic pieces of `cos_pair_q`, reusable across many `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosPair {
    pub sign: i8,
    pub numerator: Laurent,
    pub disc_x: Laurent,
    pub disc_y: Laurent,
}

impl CosPair {
    pub fn new(x: &MatLaurent, y: &MatLaurent) -> CosPair {
        CosPair {
            sign: trace_sign(x, y) as i8,
            numerator: cos_numerator(x, y),
            disc_x: disc_of(x),
            disc_y: disc_of(y),
        }
    }

    pub fn eval(&self, q: Complex64) -> Result<Complex64> {
        let num = self.numerator.eval_at(q)?;
        let prod = self.disc_x.eval_at(q)? * self.disc_y.eval_at(q)?;
        cos_from_parts(f64::from(self.sign), num, prod, q)
    }
}
