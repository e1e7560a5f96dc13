//! Real quadratic irrationals on the projective line, compared exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modgroup::{classify, Kind, MatZ};

/// `(p + e·√Δ)/r` with `r > 0`, or the point at infinity.
#[derive(Clone, Debug)]
pub enum QuadSurd {
    Finite { p: BigInt, e: i8, delta: BigInt, r: BigInt },
    Infinity,
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `sign(k + m·√e)` for `e ≥ 0`.
fn sign1(k: &BigInt, m: &BigInt, e: &BigInt) -> i8 {
    let (sk, sm) = (sign(k), if e.is_zero() { 0 } else { sign(m) });
    if sm == 0 {
        return sk;
    }
    if sk == 0 || sk == sm {
        return sm;
    }
    sk * sign(&(k * k - m * m * e))
}

/// `sign(a + u·√d1 + v·√d2)` for `d1, d2 ≥ 0`.
fn sign2(a: &BigInt, u: &BigInt, d1: &BigInt, v: &BigInt, d2: &BigInt) -> i8 {
    // sign of the radical part X = u√d1 + v√d2
    let sx = sign1_pair(u, d1, v, d2);
    let sa = sign(a);
    if sx == 0 {
        return sa;
    }
    if sa == 0 || sa == sx {
        return sx;
    }
    // a and X have opposite signs: compare a² with X²
    let k = a * a - u * u * d1 - v * v * d2;
    let m = BigInt::from(-2) * u * v;
    sa * sign1(&k, &m, &(d1 * d2))
}

/// `sign(u·√d1 + v·√d2)`.
fn sign1_pair(u: &BigInt, d1: &BigInt, v: &BigInt, d2: &BigInt) -> i8 {
    let su = if d1.is_zero() { 0 } else { sign(u) };
    let sv = if d2.is_zero() { 0 } else { sign(v) };
    if su == 0 {
        return sv;
    }
    if sv == 0 || su == sv {
        return su;
    }
    su * sign(&(u * u * d1 - v * v * d2))
}

impl QuadSurd {
    pub fn rational(p: impl Into<BigInt>, r: impl Into<BigInt>) -> QuadSurd {
        QuadSurd::from_parts(p.into(), BigInt::zero(), BigInt::zero(), r.into())
    }

    pub fn integer(p: impl Into<BigInt>) -> QuadSurd {
        QuadSurd::rational(p, 1)
    }

    /// `(p + q·√d)/r`, normalised; `r = 0` gives infinity.
    pub fn from_parts(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> QuadSurd {
        assert!(!d.is_negative(), "negative radicand");
        if r.is_zero() {
            return QuadSurd::Infinity;
        }
        let (mut p, mut q, mut r) = (p, q, r);
        let mut d = d;
        // perfect squares are rational
        let root = d.sqrt();
        if &root * &root == d {
            p += &q * root;
            q = BigInt::zero();
            d = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::zero();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        let e = sign(&q);
        let delta = &q * &q * d;
        QuadSurd::Finite { p, e, delta, r }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, QuadSurd::Infinity)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, QuadSurd::Finite { e: 0, .. })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            QuadSurd::Infinity => f64::INFINITY,
            QuadSurd::Finite { p, e, delta, r } => {
                let p = p.to_f64().unwrap_or(f64::NAN);
                let r = r.to_f64().unwrap_or(f64::NAN);
                let s = delta.to_f64().unwrap_or(f64::NAN).sqrt();
                (p + f64::from(*e) * s) / r
            }
        }
    }

    /// Exact order on finite values.
    pub fn compare(&self, other: &QuadSurd) -> Ordering {
        match (self, other) {
            (QuadSurd::Infinity, QuadSurd::Infinity) => Ordering::Equal,
            (QuadSurd::Infinity, _) => Ordering::Greater,
            (_, QuadSurd::Infinity) => Ordering::Less,
            (
                QuadSurd::Finite {
                    p: p1,
                    e: e1,
                    delta: d1,
                    r: r1,
                },
                QuadSurd::Finite {
                    p: p2,
                    e: e2,
                    delta: d2,
                    r: r2,
                },
            ) => {
                // sign(r2·x − r1·y) with r1, r2 > 0
                let a = r2 * p1 - r1 * p2;
                let u = r2 * BigInt::from(*e1);
                let v = -(r1 * BigInt::from(*e2));
                match sign2(&a, &u, d1, &v, d2) {
                    1 => Ordering::Greater,
                    -1 => Ordering::Less,
                    _ => Ordering::Equal,
                }
            }
        }
    }

    /// Möbius action `x ↦ (ax + b)/(cx + d)`.
    pub fn mobius(&self, m: &MatZ) -> QuadSurd {
        let [a, b, c, d] = m.entries();
        match self {
            QuadSurd::Infinity => QuadSurd::from_parts(a.clone(), BigInt::zero(), BigInt::zero(), c.clone()),
            QuadSurd::Finite { p, e, delta, r } => {
                let num = a * p + b * r;
                let den = c * p + d * r;
                if *e == 0 {
                    return QuadSurd::from_parts(num, BigInt::zero(), BigInt::zero(), den);
                }
                // multiply through by the conjugate of the denominator; ad − bc = 1
                let rp = &num * &den - a * c * delta;
                let rq = BigInt::from(*e) * r;
                let rr = &den * &den - c * c * delta;
                QuadSurd::from_parts(rp, rq, delta.clone(), rr)
            }
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &QuadSurd) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for QuadSurd {}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &QuadSurd) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &QuadSurd) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadSurd::Infinity => f.write_str("inf"),
            QuadSurd::Finite { p, e: 0, r, .. } if r.is_one() => write!(f, "{p}"),
            QuadSurd::Finite { p, e: 0, r, .. } => write!(f, "{p}/{r}"),
            QuadSurd::Finite { p, e, delta, r } => {
                let op = if *e > 0 { '+' } else { '-' };
                write!(f, "({p}{op}sqrt({delta}))/{r}")
            }
        }
    }
}

pub fn compare(x: &QuadSurd, y: &QuadSurd) -> Ordering {
    x.compare(y)
}

/// Repulsive and attractive fixed points `(α₋, α₊)`.
pub fn fixed_points(m: &MatZ) -> Result<(QuadSurd, QuadSurd)> {
    if classify(m) != Kind::Hyperbolic {
        return Err(Error::NotHyperbolic(m.to_string()));
    }
    let [a, _, c, d] = m.entries();
    let two_c = BigInt::from(2) * c;
    let disc = m.disc();
    let point = |e: i64| QuadSurd::from_parts(a - d, BigInt::from(e), disc.clone(), two_c.clone());
    Ok((point(-1), point(1)))
}

/// Cyclic order of three points on the circle.
pub fn cord(x: &QuadSurd, y: &QuadSurd, z: &QuadSurd) -> i8 {
    if x == y || y == z || x == z {
        return 0;
    }
    let s = |o: Ordering| match o {
        Ordering::Less => -1i8,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    match (x.is_infinite(), y.is_infinite(), z.is_infinite()) {
        (false, false, true) => s(y.cmp(x)),
        (false, true, false) => s(x.cmp(z)),
        (true, false, false) => s(z.cmp(y)),
        _ => s(y.cmp(x)) * s(z.cmp(y)) * s(z.cmp(x)),
    }
}

/// A crossing value in `{−1, −½, 0, ½, 1}`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cross(i8);

impl Cross {
    pub fn twice(self) -> i8 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn across(self) -> Cross {
        Cross(self.0.abs())
    }

    pub fn sign(self) -> i8 {
        self.0.signum()
    }
}

/// `½(cord(u,x,v) − cord(u,y,v))` for the oriented geodesics `u→v` and `x→y`.
pub fn cross(u: &QuadSurd, v: &QuadSurd, x: &QuadSurd, y: &QuadSurd) -> Cross {
    Cross(cord(u, x, v) - cord(u, y, v))
}

/// Whether the axes of `a` and `b` cross, and with which sign.
///
/// Returns `(across, cross_sign)`, evaluated on `cross(α₊, α₋, β₊, β₋)`.
pub fn axes_cross(a: &MatZ, b: &MatZ) -> Result<(u8, i8)> {
    let (am, ap) = fixed_points(a)?;
    let (bm, bp) = fixed_points(b)?;
    for x in [&am, &ap] {
        for y in [&bm, &bp] {
            if x == y {
                return Err(Error::CommonEndpoint(x.to_string()));
            }
        }
    }
    let c = cross(&ap, &am, &bp, &bm);
    Ok((c.across().twice() as u8 / 2, c.sign()))
}
