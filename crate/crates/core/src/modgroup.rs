//! Exact elements of `PSL₂(ℤ)`.
//!
//! Every matrix is stored through one fixed lift: positive trace, or zero
//! trace with positive lower-left entry. Equality and hashing are therefore
//! projective.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::words::{canonicalize, CyclicWord, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatZ {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl MatZ {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<MatZ> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "determinant of {a},{b},{c},{d} is not 1"
            )));
        }
        Ok(MatZ::normalized(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<MatZ> {
        MatZ::new(a.into(), b.into(), c.into(), d.into())
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> MatZ {
        let tr = &a + &d;
        if tr.is_negative() || (tr.is_zero() && c.is_negative()) {
            MatZ {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            MatZ { a, b, c, d }
        }
    }

    pub fn identity() -> MatZ {
        MatZ::from_i64(1, 0, 0, 1).unwrap()
    }

    pub fn s() -> MatZ {
        MatZ::from_i64(0, -1, 1, 0).unwrap()
    }

    pub fn t() -> MatZ {
        MatZ::from_i64(1, -1, 1, 0).unwrap()
    }

    pub fn l() -> MatZ {
        MatZ::from_i64(1, 0, 1, 1).unwrap()
    }

    pub fn r() -> MatZ {
        MatZ::from_i64(1, 1, 0, 1).unwrap()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?])
    }

    /// Trace of the stored lift; never negative.
    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn disc(&self) -> BigInt {
        let t = self.trace();
        &t * &t - 4
    }

    pub fn inverse(&self) -> MatZ {
        MatZ::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn transpose(&self) -> MatZ {
        MatZ::normalized(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn pow(&self, n: u32) -> MatZ {
        (0..n).fold(MatZ::identity(), |acc, _| &acc * self)
    }

    pub fn conjugate_by(&self, c: &MatZ) -> MatZ {
        &(c * self) * &c.inverse()
    }

    pub fn is_identity(&self) -> bool {
        *self == MatZ::identity()
    }

    pub fn classify(&self) -> Kind {
        classify(self)
    }
}

impl Mul for &MatZ {
    type Output = MatZ;

    fn mul(self, o: &MatZ) -> MatZ {
        MatZ::normalized(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for MatZ {
    type Output = MatZ;

    fn mul(self, o: MatZ) -> MatZ {
        &self * &o
    }
}

impl fmt::Display for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for MatZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<MatZ> {
        let parse_err = |reason: String| Error::Parse {
            what: "matrix",
            input: s.to_string(),
            reason,
        };
        let parts: Vec<BigInt> = s
            .split(',')
            .map(|p| p.trim().parse::<BigInt>().map_err(|e| parse_err(e.to_string())))
            .collect::<Result<_>>()?;
        let [a, b, c, d]: [BigInt; 4] = parts
            .try_into()
            .map_err(|v: Vec<BigInt>| parse_err(format!("expected 4 entries, got {}", v.len())))?;
        MatZ::new(a, b, c, d).map_err(|e| parse_err(e.to_string()))
    }
}

pub fn word_to_matrix(w: &Word) -> MatZ {
    let (l, r) = (MatZ::l(), MatZ::r());
    w.letters().iter().fold(MatZ::identity(), |acc, letter| match letter {
        Letter::L => &acc * &l,
        Letter::R => &acc * &r,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

pub fn classify(m: &MatZ) -> Kind {
    if m.is_identity() {
        return Kind::Identity;
    }
    match m.trace().cmp(&BigInt::from(2)) {
        std::cmp::Ordering::Less => Kind::Elliptic,
        std::cmp::Ordering::Equal => Kind::Parabolic,
        std::cmp::Ordering::Greater => Kind::Hyperbolic,
    }
}

/// Generators of the free product `ℤ/2 ∗ ℤ/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StToken {
    S,
    T,
    T2,
}

impl StToken {
    fn t_power(self) -> Option<u8> {
        match self {
            StToken::S => None,
            StToken::T => Some(1),
            StToken::T2 => Some(2),
        }
    }

    fn from_t_power(k: u8) -> Option<StToken> {
        match k % 3 {
            0 => None,
            1 => Some(StToken::T),
            _ => Some(StToken::T2),
        }
    }

    pub fn matrix(self) -> MatZ {
        match self {
            StToken::S => MatZ::s(),
            StToken::T => MatZ::t(),
            StToken::T2 => MatZ::t().pow(2),
        }
    }

    pub fn inverse(self) -> StToken {
        match self {
            StToken::S => StToken::S,
            StToken::T => StToken::T2,
            StToken::T2 => StToken::T,
        }
    }
}

impl fmt::Display for StToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StToken::S => "S",
            StToken::T => "T",
            StToken::T2 => "T2",
        })
    }
}

/// A reduced word in `S` and `T^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StWord(Vec<StToken>);

impl StWord {
    pub fn tokens(&self) -> &[StToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a token, cancelling against the tail (`S² = T³ = 1`).
    pub fn push(&mut self, tok: StToken) {
        match (self.0.last().copied(), tok) {
            (Some(StToken::S), StToken::S) => {
                self.0.pop();
            }
            (Some(last), _) if last.t_power().is_some() && tok.t_power().is_some() => {
                self.0.pop();
                let k = last.t_power().unwrap() + tok.t_power().unwrap();
                if let Some(t) = StToken::from_t_power(k) {
                    self.0.push(t);
                }
            }
            _ => self.0.push(tok),
        }
    }

    pub fn evaluate(&self) -> MatZ {
        self.0.iter().fold(MatZ::identity(), |acc, t| &acc * &t.matrix())
    }

    pub fn inverse(&self) -> StWord {
        StWord(self.0.iter().rev().map(|t| t.inverse()).collect())
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Factor `m` as a reduced `{S, T, T²}`-word.
///
/// Euclidean reduction: alternately subtract a multiple of the lower row
/// from the upper one (`R^{-k}`) and swap rows (`S`) until the lower-left
/// entry vanishes, leaving a power of `R`. Then `R = TS` and `R⁻¹ = ST²`.
pub fn st_factor(m: &MatZ) -> StWord {
    let (mut a, mut b, mut c, mut d) = (m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone());
    // m = R^{k_0} S R^{k_1} S ... R^{k_n}
    let mut r_powers: Vec<BigInt> = Vec::new();
    while !c.is_zero() {
        let k = a.div_floor(&c);
        a -= &k * &c;
        b -= &k * &d;
        r_powers.push(k);
        // S·[[a,b],[c,d]] = [[-c,-d],[a,b]]
        let (na, nb) = (-&c, -&d);
        c = std::mem::replace(&mut a, na);
        d = std::mem::replace(&mut b, nb);
    }
    // now ±[[1, b], [0, 1]]
    let last = if a.is_positive() { b } else { -b };

    let mut out = StWord::default();
    let push_r_power = |out: &mut StWord, k: &BigInt| {
        let n = k.abs().to_u64().expect("R exponent fits in u64");
        for _ in 0..n {
            if k.is_positive() {
                out.push(StToken::T);
                out.push(StToken::S);
            } else {
                out.push(StToken::S);
                out.push(StToken::T2);
            }
        }
    };
    for k in &r_powers {
        push_r_power(&mut out, k);
        out.push(StToken::S);
    }
    push_r_power(&mut out, &last);
    out
}

/// Conjugacy class of an element of `PSL₂(ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Conjugacy {
    Identity,
    /// The class of `S` (order 2).
    S,
    /// The class of `T` (order 3).
    T,
    /// The class of `T² = T⁻¹`.
    T2,
    /// Infinite order: a cyclic `{L, R}`-word.
    Cycle(CyclicWord),
}

impl Conjugacy {
    pub fn cycle(&self) -> Option<&CyclicWord> {
        match self {
            Conjugacy::Cycle(c) => Some(c),
            _ => None,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Conjugacy::Identity => "id".into(),
            Conjugacy::S => "S".into(),
            Conjugacy::T => "T".into(),
            Conjugacy::T2 => "T2".into(),
            Conjugacy::Cycle(c) => c.to_string(),
        }
    }
}

impl fmt::Display for Conjugacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

pub fn reduce_to_cycle(m: &MatZ) -> Conjugacy {
    let mut toks: std::collections::VecDeque<StToken> = st_factor(m).0.into();
    // cyclic reduction: conjugate away a matching first/last pair
    while toks.len() >= 2 {
        let first = toks[0];
        let last = toks[toks.len() - 1];
        let same_factor = (first == StToken::S) == (last == StToken::S);
        if !same_factor {
            break;
        }
        toks.pop_front();
        toks.pop_back();
        let mut tail = StWord(toks.drain(..).collect());
        tail.push(last);
        tail.push(first);
        toks = tail.0.into();
    }
    match toks.len() {
        0 => Conjugacy::Identity,
        1 => match toks[0] {
            StToken::S => Conjugacy::S,
            StToken::T => Conjugacy::T,
            StToken::T2 => Conjugacy::T2,
        },
        _ => {
            if toks[0] == StToken::S {
                toks.rotate_left(1);
            }
            let letters = toks
                .iter()
                .step_by(2)
                .map(|t| match t {
                    StToken::T => Letter::R,
                    StToken::T2 => Letter::L,
                    StToken::S => unreachable!("cyclically reduced words alternate"),
                })
                .collect();
            Conjugacy::Cycle(canonicalize(&Word::new(letters)).expect("non-empty cycle"))
        }
    }
}

/// Minimal displacement of a tree vertex: `len` of the cycle, 0 for torsion.
pub fn comb_len(m: &MatZ) -> usize {
    reduce_to_cycle(m).cycle().map_or(0, |c| c.len())
}

/// `sign(len AB − len AB⁻¹)`: the orientation comparison of two tree axes
/// along their common edges.
pub fn cosign_len(a: &MatZ, b: &MatZ) -> Result<i8> {
    for m in [a, b] {
        if classify(m) != Kind::Hyperbolic {
            return Err(Error::NotHyperbolic(m.to_string()));
        }
    }
    let plus = comb_len(&(a * b));
    let minus = comb_len(&(a * &b.inverse()));
    match plus.cmp(&minus) {
        std::cmp::Ordering::Greater => Ok(1),
        std::cmp::Ordering::Less => Ok(-1),
        std::cmp::Ordering::Equal => Err(Error::DisjointAxes),
    }
}

/// Translation length `λ = 2 arcsinh(√(Tr² − 4) / 2)`.
pub fn geodesic_length(m: &MatZ) -> Result<f64> {
    if classify(m) != Kind::Hyperbolic {
        return Err(Error::NotHyperbolic(m.to_string()));
    }
    let disc = m.disc().to_f64().expect("finite discriminant");
    Ok(2.0 * (disc.sqrt() / 2.0).asinh())
}
