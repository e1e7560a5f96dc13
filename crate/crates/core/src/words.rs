//! Binary words over `{L, R}` and their cyclic classes.
//!
//! A conjugacy class of infinite order in the modular group is the same
//! thing as a cyclic `{L, R}`-word. Cyclic words are stored through their
//! lexicographically maximal rotation (with `L < R`), which for a primitive
//! word is its Lyndon representative.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'L' => Some(Letter::L),
            'R' => Some(Letter::R),
            _ => None,
        }
    }
}

/// A finite word in the free monoid on `{L, R}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Both letters occur.
    pub fn is_hyperbolic(&self) -> bool {
        self.0.contains(&Letter::L) && self.0.contains(&Letter::R)
    }

    /// The cyclic shift `σ^i`: moves the first `i` letters to the end.
    pub fn rotate(&self, i: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let mut v = self.0.clone();
        v.rotate_left(i % self.0.len());
        Word(v)
    }

    /// Reverse the word and exchange `L` and `R`; this is the matrix transpose.
    pub fn transpose(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swap()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Smallest word `u` with `self = u^k`.
    pub fn primitive_root(&self) -> Word {
        let n = self.0.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && self.0.chunks(d).all(|c| c == &self.0[..d]) {
                return Word(self.0[..d].to_vec());
            }
        }
        self.clone()
    }

    /// The first `n` letters of the periodization `self^∞`.
    pub fn periodic_prefix(&self, n: usize) -> impl Iterator<Item = Letter> + '_ {
        self.0
            .iter()
            .copied()
            .cycle()
            .take(if self.0.is_empty() { 0 } else { n })
    }

    /// Is `pattern` a prefix of `self^∞`?
    pub fn periodic_starts_with(&self, pattern: &[Letter]) -> bool {
        !self.0.is_empty() && self.periodic_prefix(pattern.len()).eq(pattern.iter().copied())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| Error::Parse {
                    what: "word",
                    input: s.to_string(),
                    reason: format!("unexpected character {c:?}, expected L or R"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }
}

/// Lexicographic comparison of `a^∞` and `b^∞` with `L < R`.
///
/// Two periodizations that agree on their first `|a| + |b|` letters are
/// equal (Fine and Wilf), so that prefix decides.
pub fn periodized_compare(a: &Word, b: &Word) -> Ordering {
    if a.is_empty() || b.is_empty() {
        return a.len().cmp(&b.len());
    }
    let n = a.len() + b.len();
    a.periodic_prefix(n).cmp(b.periodic_prefix(n))
}

/// A cyclic word: the class of a word under rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    canonical: Word,
    multiplicity: usize,
}

impl CyclicWord {
    /// The maximal rotation.
    pub fn word(&self) -> &Word {
        &self.canonical
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_primitive(&self) -> bool {
        self.multiplicity == 1
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.canonical.is_hyperbolic()
    }

    /// The primitive class `C` with `self = C^k`.
    pub fn root(&self) -> CyclicWord {
        let n = self.canonical.len() / self.multiplicity;
        CyclicWord {
            canonical: Word(self.canonical.0[..n].to_vec()),
            multiplicity: 1,
        }
    }

    pub fn pow(&self, n: usize) -> CyclicWord {
        assert!(n > 0, "power of a cyclic word must be positive");
        CyclicWord {
            canonical: self.canonical.pow(n),
            multiplicity: self.multiplicity * n,
        }
    }

    pub fn transpose(&self) -> CyclicWord {
        transpose(self)
    }

    /// Stable under transposition (equivalently, under inversion).
    pub fn is_symmetric(&self) -> bool {
        &transpose(self) == self
    }

    /// Membership in the positive half of the partition of non-symmetric
    /// classes: the canonical word beats the canonical word of its transpose.
    pub fn is_positive(&self) -> bool {
        self.canonical > transpose(self).canonical
    }

    pub fn rad(&self) -> i64 {
        rad_len(self).1
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<CyclicWord> {
        canonicalize(&s.parse()?)
    }
}

pub fn canonicalize(w: &Word) -> Result<CyclicWord> {
    if w.is_empty() {
        return Err(Error::EmptyCycle);
    }
    let n = w.len();
    let canonical = (0..n).map(|i| w.rotate(i)).max().expect("non-empty");
    let root_len = w.primitive_root().len();
    Ok(CyclicWord {
        canonical,
        multiplicity: n / root_len,
    })
}

pub fn transpose(a: &CyclicWord) -> CyclicWord {
    canonicalize(&a.canonical.transpose()).expect("transpose of a non-empty word")
}

/// Number of `j ∈ [1, len a]` such that `pattern` is a prefix of `σ^j(a^∞)`.
pub fn occ(pattern: &Word, a: &CyclicWord) -> Result<usize> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let w = &a.canonical;
    Ok((0..w.len())
        .filter(|&j| w.rotate(j).periodic_starts_with(pattern.letters()))
        .count())
}

/// `(len, rad) = (#R + #L, #R - #L)`.
pub fn rad_len(a: &CyclicWord) -> (usize, i64) {
    let r = a.canonical.count(Letter::R) as i64;
    let l = a.canonical.count(Letter::L) as i64;
    ((r + l) as usize, r - l)
}

pub fn coprime(a: &CyclicWord, b: &CyclicWord) -> bool {
    a.root() != b.root()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFilter {
    All,
    Hyperbolic,
    /// Primitive hyperbolic classes.
    PrimitiveHyperbolic,
    /// Primitive classes in the positive half of the transpose partition.
    LyndonPositive,
}

impl FromStr for ClassFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassFilter> {
        match s {
            "all" => Ok(ClassFilter::All),
            "hyperbolic" => Ok(ClassFilter::Hyperbolic),
            "primitive" | "primitive_hyperbolic" => Ok(ClassFilter::PrimitiveHyperbolic),
            "lyndon_positive" => Ok(ClassFilter::LyndonPositive),
            _ => Err(Error::Unknown {
                kind: "class filter",
                name: s.to_string(),
            }),
        }
    }
}

/// One representative per cyclic class of length `1..=max_len`, ordered by
/// length and then lexicographically.
pub fn enumerate_classes(max_len: usize, filter: ClassFilter) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        let mut layer = BTreeSet::new();
        necklaces(n, &mut |canonical, multiplicity| {
            let c = CyclicWord {
                canonical,
                multiplicity,
            };
            let keep = match filter {
                ClassFilter::All => true,
                ClassFilter::Hyperbolic => c.is_hyperbolic(),
                ClassFilter::PrimitiveHyperbolic => c.is_primitive() && c.is_hyperbolic(),
                ClassFilter::LyndonPositive => c.is_primitive() && c.is_positive(),
            };
            if keep {
                layer.insert(c);
            }
        });
        out.extend(layer);
    }
    out
}

/// Fredricksen-Kessler-Maiorana generation of binary necklaces of length `n`.
///
/// The generator produces minimal rotations over the order `0 < 1`; mapping
/// `0 -> R` and `1 -> L` turns those into maximal rotations over `L < R`.
fn necklaces(n: usize, emit: &mut dyn FnMut(Word, usize)) {
    fn step(t: usize, p: usize, n: usize, a: &mut Vec<u8>, emit: &mut dyn FnMut(Word, usize)) {
        if t > n {
            if n.is_multiple_of(p) {
                let w = a[1..=n]
                    .iter()
                    .map(|&x| if x == 0 { Letter::R } else { Letter::L })
                    .collect();
                emit(Word(w), n / p);
            }
            return;
        }
        a[t] = a[t - p];
        step(t + 1, p, n, a, emit);
        for v in a[t - p] + 1..2 {
            a[t] = v;
            step(t + 1, t, n, a, emit);
        }
    }
    if n == 0 {
        return;
    }
    let mut a = vec![0u8; n + 1];
    step(1, 1, n, &mut a, emit);
}
