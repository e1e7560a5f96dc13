//! Crossings, linking numbers, intersection numbers and `Cos_A`.
//!
//! Three independent linking-number algorithms sit behind
//! [`LinkingMethod`]: shift enumeration with the lexicographic crossing
//! rule, the sum over linked patterns, and the exact geometric oracle on
//! axis endpoints.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::modgroup::{word_to_matrix, MatZ};
use crate::surd::axes_cross;
use crate::words::{coprime, enumerate_classes, occ, periodized_compare, ClassFilter, CyclicWord, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

/// A crossing between the lifts `σ^i A` and `σ^j B` (plus side) or
/// `σ^i A` and `S·σ^j B·S⁻¹` (minus side). Indices run over `1..=len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub i: usize,
    pub j: usize,
    pub side: Side,
    /// The cosign of the pair: `+1` on the plus side, `−1` on the minus side.
    pub sign: i8,
}

/// `σ^i w` with `i` taken modulo `len w`.
fn shift(w: &Word, i: usize) -> Word {
    w.rotate(i % w.len())
}

fn require_hyperbolic(a: &CyclicWord) -> Result<()> {
    if a.is_hyperbolic() {
        Ok(())
    } else {
        Err(Error::NotHyperbolic(a.to_string()))
    }
}

/// Shift pairs `(i, j)` whose lifts cross with coherent orientations.
///
/// `σ^i a` and `σ^j b` must end in different letters; writing them as
/// `w_a x` and `w_b y`, they cross when `w_a L, w_b R` has `a^∞ > b^∞` or
/// `w_a R, w_b L` has `a^∞ < b^∞`.
fn plus_pairs(a: &Word, b: &Word) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 1..=a.len() {
        let m = shift(a, i);
        for j in 1..=b.len() {
            let n = shift(b, j);
            if m.last() == n.last() {
                continue;
            }
            let ord = periodized_compare(&m, &n);
            if ord == Ordering::Equal {
                return Err(Error::NotCoprime(a.to_string(), b.to_string()));
            }
            let crosses = match m.last() {
                Some(Letter::L) => ord == Ordering::Greater,
                _ => ord == Ordering::Less,
            };
            if crosses {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Index of `σ^j B` whose `S`-conjugate inverts `σ^{j'}(ᵗB)`.
fn minus_index(j_prime: usize, n: usize) -> usize {
    match (n - j_prime % n) % n {
        0 => n,
        j => j,
    }
}

/// All crossings of the two geodesics, both sides, sorted.
pub fn enumerate_crossings(a: &CyclicWord, b: &CyclicWord) -> Result<Vec<Crossing>> {
    require_hyperbolic(a)?;
    require_hyperbolic(b)?;
    let (aw, bw) = (a.word(), b.word());
    let mut out: Vec<Crossing> = plus_pairs(aw, bw)?
        .into_iter()
        .map(|(i, j)| Crossing {
            i,
            j,
            side: Side::Plus,
            sign: 1,
        })
        .collect();
    let bt = bw.transpose();
    out.extend(plus_pairs(aw, &bt)?.into_iter().map(|(i, jp)| Crossing {
        i,
        j: minus_index(jp, bw.len()),
        side: Side::Minus,
        sign: -1,
    }));
    out.sort();
    Ok(out)
}

/// The pair of integer matrices whose axes meet at `c`.
pub fn crossing_matrices(a: &CyclicWord, b: &CyclicWord, c: &Crossing) -> (MatZ, MatZ) {
    let (x, y) = crossing_words(a, b, c);
    let ym = word_to_matrix(&y.0);
    (word_to_matrix(&x), if y.1 { ym.inverse() } else { ym })
}

/// The words behind a crossing: `σ^i A`, and `σ^j B` on the plus side or
/// `σ^{j'}(ᵗB)` flagged for inversion on the minus side.
pub fn crossing_words(a: &CyclicWord, b: &CyclicWord, c: &Crossing) -> (Word, (Word, bool)) {
    let x = shift(a.word(), c.i);
    let y = match c.side {
        Side::Plus => (shift(b.word(), c.j), false),
        Side::Minus => {
            let jp = minus_index(c.j, b.len());
            (shift(&b.word().transpose(), jp), true)
        }
    };
    (x, y)
}

/// A strategy for computing linking numbers.
pub trait LinkingMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn lk(&self, a: &CyclicWord, b: &CyclicWord) -> Result<i64>;
}

/// Half the number of plus-side crossings from the lexicographic rule.
pub struct Shift;

/// The sum over linked patterns `RwL`/`LwR`.
pub struct Slp;

/// Half the number of plus-side pairs whose axes interleave, decided by
/// exact comparison of quadratic irrationals.
pub struct Oracle;

impl LinkingMethod for Shift {
    fn name(&self) -> &'static str {
        "shift"
    }

    fn lk(&self, a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
        lk_shift(a, b)
    }
}

impl LinkingMethod for Slp {
    fn name(&self) -> &'static str {
        "slp"
    }

    fn lk(&self, a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
        lk_slp(a, b)
    }
}

impl LinkingMethod for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn lk(&self, a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
        lk_oracle(a, b)
    }
}

/// Linking-number strategies, registered by name.
pub struct Registry {
    methods: Vec<Box<dyn LinkingMethod>>,
}

impl Registry {
    pub fn empty() -> Registry {
        Registry { methods: Vec::new() }
    }

    pub fn register(&mut self, m: Box<dyn LinkingMethod>) {
        self.methods.retain(|old| old.name() != m.name());
        self.methods.push(m);
    }

    pub fn get(&self, name: &str) -> Result<&dyn LinkingMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "linking method",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn LinkingMethod> {
        self.methods.iter().map(|m| m.as_ref())
    }
}

impl Default for Registry {
    fn default() -> Registry {
        let mut r = Registry::empty();
        r.register(Box::new(Shift));
        r.register(Box::new(Slp));
        r.register(Box::new(Oracle));
        r
    }
}

fn require_coprime(a: &CyclicWord, b: &CyclicWord) -> Result<()> {
    require_hyperbolic(a)?;
    require_hyperbolic(b)?;
    if coprime(a, b) {
        Ok(())
    } else {
        Err(Error::NotCoprime(a.to_string(), b.to_string()))
    }
}

pub fn lk_shift(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    require_coprime(a, b)?;
    half(plus_pairs(a.word(), b.word())?.len(), a, b)
}

fn half(n: usize, a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    if n % 2 == 1 {
        Err(Error::OddSum(format!("{n} crossings for ({a}, {b})")))
    } else {
        Ok((n / 2) as i64)
    }
}

pub fn lk_oracle(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    require_coprime(a, b)?;
    half(oracle_plus_pairs(a.word(), b.word())?.len(), a, b)
}

/// Plus-side pairs decided geometrically: lifts ending in different
/// letters whose axes interleave.
pub fn oracle_plus_pairs(a: &Word, b: &Word) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 1..=a.len() {
        let m = shift(a, i);
        let mm = word_to_matrix(&m);
        for j in 1..=b.len() {
            let n = shift(b, j);
            if m.last() == n.last() {
                continue;
            }
            let (across, _) = axes_cross(&mm, &word_to_matrix(&n))?;
            if across == 1 {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// All crossings decided geometrically, in the same indexing as
/// [`enumerate_crossings`].
pub fn oracle_crossings(a: &CyclicWord, b: &CyclicWord) -> Result<Vec<Crossing>> {
    require_hyperbolic(a)?;
    require_hyperbolic(b)?;
    let (aw, bw) = (a.word(), b.word());
    let mut out: Vec<Crossing> = oracle_plus_pairs(aw, bw)?
        .into_iter()
        .map(|(i, j)| Crossing {
            i,
            j,
            side: Side::Plus,
            sign: 1,
        })
        .collect();
    out.extend(
        oracle_plus_pairs(aw, &bw.transpose())?
            .into_iter()
            .map(|(i, jp)| Crossing {
                i,
                j: minus_index(jp, bw.len()),
                side: Side::Minus,
                sign: -1,
            }),
    );
    out.sort();
    Ok(out)
}

/// The distinct factors `x w y` of `a^∞` with `|w| < bound` and `x ≠ y`.
fn linked_patterns(a: &CyclicWord, bound: usize) -> BTreeSet<Word> {
    let w = a.word();
    let mut out = BTreeSet::new();
    for start in 0..w.len() {
        let letters: Vec<Letter> = w.rotate(start).periodic_prefix(bound + 2).collect();
        for k in 0..bound {
            if letters[0] != letters[k + 1] {
                out.insert(Word::new(letters[..k + 2].to_vec()));
            }
        }
    }
    out
}

/// `Σ_w (occ_{RwL}(a)·f(LwR) + occ_{LwR}(a)·f(RwL))` over `|w| < bound`.
///
/// Only patterns occurring in `a` contribute, so they are read off `a^∞`.
fn pattern_sum(a: &CyclicWord, bound: usize, f: impl Fn(&Word) -> Result<i64>) -> Result<i64> {
    let mut total = 0;
    for p in linked_patterns(a, bound) {
        let n = occ(&p, a)? as i64;
        // RwL pairs with LwR and vice versa: swap the end letters
        let mut partner = p.letters().to_vec();
        let last = partner.len() - 1;
        partner.swap(0, last);
        total += n * f(&Word::new(partner))?;
    }
    Ok(total)
}

/// Support bound for the pattern sum.
///
/// Coprime pairs need `|w| < len A + len B`: the truncation at
/// `max(len A, len B)` drops patterns, e.g. on `(RRLL, RRLLRL)`. Powers of a
/// common class use the truncation, which defines the framed self-linking.
fn slp_bound(a: &CyclicWord, b: &CyclicWord) -> usize {
    if coprime(a, b) {
        a.len() + b.len()
    } else {
        a.len().max(b.len())
    }
}

pub fn lk_slp(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    require_hyperbolic(a)?;
    require_hyperbolic(b)?;
    let bound = slp_bound(a, b);
    let twice = pattern_sum(a, bound, |p| Ok(occ(p, b)? as i64))?;
    if twice % 2 != 0 {
        return Err(Error::OddSum(format!("{twice} for ({a}, {b})")));
    }
    Ok(twice / 2)
}

/// Linking number: shift enumeration for coprime pairs, the framed
/// pattern sum for powers of a common class.
pub fn lk(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    if coprime(a, b) {
        lk_shift(a, b)
    } else {
        lk_slp(a, b)
    }
}

/// `I(A, B) = 2(lk(A, B) + lk(A, ᵗB))`.
pub fn intersection_number(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    Ok(2 * (lk(a, b)? + lk(a, &b.transpose())?))
}

/// `Cos_A(B) = lk(A, B) − lk(A, ᵗB)`; zero for non-hyperbolic `B`.
pub fn cos_a_lk(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    if let Some(v) = cos_a_special(a, b)? {
        return Ok(v);
    }
    if !b.is_hyperbolic() {
        return Ok(0);
    }
    Ok(lk(a, b)? - lk(a, &b.transpose())?)
}

/// `Cos_A(B) = ½ Σ_w occ_{RwL}(A)·mas_{LwR}(B) + occ_{LwR}(A)·mas_{RwL}(B)`
/// over `|w| < max(len A, len B)`.
pub fn cos_a_patterns(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    if let Some(v) = cos_a_special(a, b)? {
        return Ok(v);
    }
    cos_a_patterns_bounded(a, b, a.len().max(b.len()))
}

/// The pattern sum for `Cos_A(B)` over `|w| < bound`.
pub fn cos_a_patterns_bounded(a: &CyclicWord, b: &CyclicWord, bound: usize) -> Result<i64> {
    if let Some(v) = cos_a_special(a, b)? {
        return Ok(v);
    }
    let bt = b.transpose();
    let twice = pattern_sum(a, bound, |p| Ok(occ(p, b)? as i64 - occ(p, &bt)? as i64))?;
    if twice % 2 != 0 {
        return Err(Error::OddSum(format!("Cos_{a}({b}) = {twice}/2")));
    }
    Ok(twice / 2)
}

/// `Cos_R = Rad` and `Cos_L = −Rad`; other `A` must be hyperbolic.
fn cos_a_special(a: &CyclicWord, b: &CyclicWord) -> Result<Option<i64>> {
    if a.is_hyperbolic() {
        return Ok(None);
    }
    let sign = if a.word().first() == Some(Letter::R) { 1 } else { -1 };
    Ok(Some(sign * a.multiplicity() as i64 * b.rad()))
}

/// `Cos_A(B)` by both routes; disagreement is reported as an error.
pub fn cos_a(a: &CyclicWord, b: &CyclicWord) -> Result<i64> {
    let via_lk = cos_a_lk(a, b)?;
    let via_patterns = cos_a_patterns(a, b)?;
    if via_lk != via_patterns {
        return Err(Error::ConventionMismatch(format!(
            "Cos_{a}({b}): lk difference {via_lk}, pattern sum {via_patterns}"
        )));
    }
    Ok(via_lk)
}

/// The first hyperbolic class `X` with `len X ≤ max_len` and
/// `lk(A, X) ≠ lk(B, X)`, in order of length then canonical word.
pub fn link_equiv_witness(a: &CyclicWord, b: &CyclicWord, max_len: usize) -> Result<Option<CyclicWord>> {
    require_hyperbolic(a)?;
    require_hyperbolic(b)?;
    if a == b {
        return Ok(None);
    }
    for x in enumerate_classes(max_len, ClassFilter::Hyperbolic) {
        if lk(a, &x)? != lk(b, &x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
