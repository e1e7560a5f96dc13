//! Homogeneous quasi-morphisms on `PSL₂(ℤ)`: the `mas_P` counts, sampled
//! defects, and exact change of basis between the `mas_P` and `Cos_A`
//! families on the classes of bounded length.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linking::cos_a_patterns;
use crate::modgroup::{reduce_to_cycle, Conjugacy, MatZ, StToken, StWord};
use crate::words::{enumerate_classes, occ, ClassFilter, CyclicWord, Word};

pub type Rational = BigRational;

/// `mas_P(A) = occ_P(A) − occ_{ᵗP}(A)`.
pub fn mas(pattern: &Word, a: &CyclicWord) -> Result<i64> {
    let forward = occ(pattern, a)? as i64;
    let backward = occ(&pattern.transpose(), a)? as i64;
    Ok(forward - backward)
}

/// `mas_P` on a matrix, through its conjugacy class; torsion gives 0.
pub fn mas_matrix(pattern: &Word, m: &MatZ) -> Result<i64> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    match reduce_to_cycle(m) {
        Conjugacy::Cycle(c) => mas(pattern, &c),
        _ => Ok(0),
    }
}

pub trait QuasiMorphism: Send + Sync {
    fn name(&self) -> String;

    fn eval(&self, a: &CyclicWord) -> Result<i64>;

    fn eval_matrix(&self, m: &MatZ) -> Result<i64> {
        match reduce_to_cycle(m) {
            Conjugacy::Cycle(c) => self.eval(&c),
            _ => Ok(0),
        }
    }
}

pub struct Rad;

impl QuasiMorphism for Rad {
    fn name(&self) -> String {
        "rad".into()
    }

    fn eval(&self, a: &CyclicWord) -> Result<i64> {
        Ok(a.rad())
    }
}

pub struct Mas(pub Word);

impl QuasiMorphism for Mas {
    fn name(&self) -> String {
        format!("mas:{}", self.0)
    }

    fn eval(&self, a: &CyclicWord) -> Result<i64> {
        mas(&self.0, a)
    }
}

pub struct Cos(pub CyclicWord);

impl QuasiMorphism for Cos {
    fn name(&self) -> String {
        format!("cos:{}", self.0)
    }

    fn eval(&self, a: &CyclicWord) -> Result<i64> {
        cos_a_patterns(&self.0, a)
    }
}

pub type QmFactory = fn(Option<&str>) -> Result<Box<dyn QuasiMorphism>>;

/// Quasi-morphism families addressed as `family` or `family:argument`.
pub struct QmRegistry {
    families: Vec<(&'static str, QmFactory)>,
}

impl QmRegistry {
    pub fn empty() -> QmRegistry {
        QmRegistry { families: Vec::new() }
    }

    pub fn register(&mut self, family: &'static str, factory: QmFactory) {
        self.families.retain(|(f, _)| *f != family);
        self.families.push((family, factory));
    }

    pub fn families(&self) -> Vec<&'static str> {
        self.families.iter().map(|(f, _)| *f).collect()
    }

    pub fn build(&self, spec: &str) -> Result<Box<dyn QuasiMorphism>> {
        let (family, arg) = match spec.split_once(':') {
            Some((f, a)) => (f, Some(a)),
            None => (spec, None),
        };
        let factory = self
            .families
            .iter()
            .find(|(f, _)| *f == family)
            .map(|(_, factory)| factory)
            .ok_or_else(|| Error::Unknown {
                kind: "quasi-morphism",
                name: spec.to_string(),
            })?;
        factory(arg)
    }
}

fn no_argument(family: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::Parse {
            what: "quasi-morphism",
            input: format!("{family}:{a}"),
            reason: format!("{family} takes no argument"),
        }),
    }
}

fn required<'a>(family: &str, arg: Option<&'a str>) -> Result<&'a str> {
    arg.ok_or_else(|| Error::Parse {
        what: "quasi-morphism",
        input: family.to_string(),
        reason: format!("expected {family}:WORD"),
    })
}

impl Default for QmRegistry {
    fn default() -> QmRegistry {
        let mut reg = QmRegistry::empty();
        reg.register("rad", |arg| {
            no_argument("rad", arg)?;
            Ok(Box::new(Rad))
        });
        reg.register("mas", |arg| {
            let p: Word = required("mas", arg)?.parse()?;
            if p.is_empty() {
                return Err(Error::EmptyPattern);
            }
            Ok(Box::new(Mas(p)))
        });
        reg.register("cos", |arg| Ok(Box::new(Cos(required("cos", arg)?.parse()?))));
        reg
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub name: String,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    pub max_defect: i64,
    /// The first sampled pair attaining the maximum.
    pub witness: Option<(MatZ, MatZ)>,
}

/// A reduced word in `S` and `T^{±1}` with `len` tokens.
pub fn random_st_word<R: Rng>(rng: &mut R, len: usize) -> StWord {
    let mut w = StWord::default();
    let mut s_next = rng.gen_bool(0.5);
    for _ in 0..len {
        let tok = if s_next {
            StToken::S
        } else if rng.gen_bool(0.5) {
            StToken::T
        } else {
            StToken::T2
        };
        w.push(tok);
        s_next = !s_next;
    }
    w
}

/// `|f(X) + f(Y) − f(XY)|` for one pair.
pub fn defect_term(f: &dyn QuasiMorphism, x: &MatZ, y: &MatZ) -> Result<i64> {
    let xy = x * y;
    Ok((f.eval_matrix(x)? + f.eval_matrix(y)? - f.eval_matrix(&xy)?).abs())
}

/// Largest defect over `samples` seeded pairs of random `ST` words of at
/// most `max_len` tokens.
pub fn defect(f: &dyn QuasiMorphism, samples: usize, max_len: usize, seed: u64) -> Result<DefectReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DefectReport {
        name: f.name(),
        samples,
        max_len,
        seed,
        max_defect: 0,
        witness: None,
    };
    for _ in 0..samples {
        let lx = rng.gen_range(1..=max_len.max(1));
        let ly = rng.gen_range(1..=max_len.max(1));
        let x = random_st_word(&mut rng, lx).evaluate();
        let y = random_st_word(&mut rng, ly).evaluate();
        let d = defect_term(f, &x, &y)?;
        if d > report.max_defect || report.witness.is_none() {
            report.max_defect = report.max_defect.max(d);
            report.witness = Some((x, y));
        }
    }
    Ok(report)
}

/// The index set `L_m`: primitive classes of length at most `m` on the
/// positive side of the transpose partition.
pub fn basis_index(m: usize) -> Vec<CyclicWord> {
    enumerate_classes(m, ClassFilter::LyndonPositive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Mas,
    Cos,
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "mas" => Ok(Basis::Mas),
            "cos" => Ok(Basis::Cos),
            _ => Err(Error::Unknown {
                kind: "basis",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Mas => "mas",
            Basis::Cos => "cos",
        })
    }
}

impl Basis {
    pub fn element(self, x: &CyclicWord) -> Box<dyn QuasiMorphism> {
        match self {
            Basis::Mas => Box::new(Mas(x.word().clone())),
            Basis::Cos => Box::new(Cos(x.clone())),
        }
    }
}

/// Square integer matrix; row `i` holds the values of the `i`-th basis
/// element on the classes of `L_m`.
pub type Matrix = Vec<Vec<BigInt>>;

pub fn basis_matrix(m: usize, basis: Basis) -> Result<Matrix> {
    let index = basis_index(m);
    index
        .iter()
        .map(|x| {
            let f = basis.element(x);
            index.iter().map(|a| f.eval(a).map(BigInt::from)).collect()
        })
        .collect()
}

/// `(M_mas, M_cos)` over `L_m`.
pub fn basis_matrices(m: usize) -> Result<(Matrix, Matrix)> {
    Ok((basis_matrix(m, Basis::Mas)?, basis_matrix(m, Basis::Cos)?))
}

/// Fraction-free Gaussian elimination in place on the first `n` columns,
/// with row swaps; returns the final pivot with the sign of the permutation,
/// i.e. the determinant of the leading `n × n` block.
fn bareiss(rows: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            rows.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..rows[i].len() {
                let v = (&rows[i][j] * &rows[k][k] - &rows[i][k] * &rows[k][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        prev * sign
    }
}

pub fn determinant(m: &Matrix) -> BigInt {
    let mut rows = m.clone();
    bareiss(&mut rows, m.len())
}

/// Exact solution of `A x = b`.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "solve: {n}×{n} system with {} values",
            b.len()
        )));
    }
    let scale = b.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push((v * Rational::from_integer(scale.clone())).to_integer());
            row
        })
        .collect();
    if bareiss(&mut rows, n).is_zero() {
        return Err(Error::Singular);
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(rows[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(rows[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(rows[i][i].clone());
    }
    let scale = Rational::from_integer(scale);
    Ok(x.into_iter().map(|v| v / &scale).collect())
}

/// A functional given by its values on `L_m`, or a coefficient vector
/// indexed the same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalVec {
    pub m: usize,
    pub index: Vec<CyclicWord>,
    pub values: Vec<Rational>,
}

impl FunctionalVec {
    pub fn new(m: usize, values: Vec<Rational>) -> Result<FunctionalVec> {
        let index = basis_index(m);
        if index.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} classes of L_{m}",
                values.len(),
                index.len()
            )));
        }
        Ok(FunctionalVec { m, index, values })
    }

    pub fn of(f: &dyn QuasiMorphism, m: usize) -> Result<FunctionalVec> {
        let values = basis_index(m)
            .iter()
            .map(|a| f.eval(a).map(|v| Rational::from_integer(v.into())))
            .collect::<Result<_>>()?;
        FunctionalVec::new(m, values)
    }

    /// The unit vector at class `x`.
    pub fn unit(m: usize, x: &CyclicWord) -> Result<FunctionalVec> {
        let index = basis_index(m);
        let pos = index
            .iter()
            .position(|c| c == x)
            .ok_or_else(|| Error::InvalidArgument(format!("{x} is not in L_{m}")))?;
        let mut values = vec![Rational::zero(); index.len()];
        values[pos] = Rational::one();
        Ok(FunctionalVec { m, index, values })
    }

    pub fn get(&self, x: &CyclicWord) -> Option<&Rational> {
        self.index.iter().position(|c| c == x).map(|i| &self.values[i])
    }

    /// One `class,num/den` line per index class, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,value\n");
        for (c, v) in self.index.iter().zip(&self.values) {
            out.push_str(&format!("{},{}/{}\n", c, v.numer(), v.denom()));
        }
        out
    }

    /// Reads `class,value` lines covering `L_m` exactly; values are
    /// integers or `num/den`.
    pub fn from_csv(m: usize, text: &str) -> Result<FunctionalVec> {
        let parse_err = |input: &str, reason: &str| Error::Parse {
            what: "functional csv",
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut given = BTreeMap::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (class, value) = line
                .split_once(',')
                .ok_or_else(|| parse_err(line, "expected class,value"))?;
            if class.trim() == "class" {
                continue;
            }
            let class: CyclicWord = class.trim().parse()?;
            let value: Rational = value
                .trim()
                .parse()
                .map_err(|_| parse_err(line, "value is not a rational"))?;
            if given.insert(class, value).is_some() {
                return Err(parse_err(line, "duplicate class"));
            }
        }
        let index = basis_index(m);
        let mut values = Vec::with_capacity(index.len());
        for c in &index {
            let v = given
                .remove(c)
                .ok_or_else(|| parse_err(&c.to_string(), "missing class"))?;
            values.push(v);
        }
        if let Some(extra) = given.keys().next() {
            return Err(parse_err(&extra.to_string(), "class is not in the index set"));
        }
        Ok(FunctionalVec { m, index, values })
    }
}

fn transposed(m: &Matrix) -> Matrix {
    (0..m.len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Coefficients `c` with `f = Σ_X c_X·b_X` on `L_m`.
pub fn decompose(f: &FunctionalVec, basis: Basis) -> Result<FunctionalVec> {
    let m = basis_matrix(f.m, basis)?;
    let coeffs = solve(&transposed(&m), &f.values)?;
    FunctionalVec::new(f.m, coeffs)
}

/// Values on `L_m` of `Σ_X c_X·b_X`.
pub fn recombine(coeffs: &FunctionalVec, basis: Basis) -> Result<FunctionalVec> {
    let m = basis_matrix(coeffs.m, basis)?;
    let n = m.len();
    let values = (0..n)
        .map(|a| {
            (0..n)
                .map(|x| &coeffs.values[x] * Rational::from_integer(m[x][a].clone()))
                .fold(Rational::zero(), |acc, v| acc + v)
        })
        .collect();
    FunctionalVec::new(coeffs.m, values)
}
