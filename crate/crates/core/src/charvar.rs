//! The linking functions `Link_q` and `Cos_q` on the character variety.
//!
//! The crossing set of a pair of modular knots is combinatorial and does
//! not move with `q`, so it is computed once and each crossing carries its
//! deformed cosine.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linking::{crossing_matrices, enumerate_crossings, Crossing, Side};
use crate::modgroup::{classify, Kind, MatZ};
use crate::qdeform::{deform, disc_q, q_matrix, CosPair, Laurent, MatLaurent};
use crate::surd::axes_cross;
use crate::words::{CyclicWord, Word};

/// One crossing with its deformed cosine and geometric orientation sign.
#[derive(Clone, Debug)]
pub struct CrossingTerm {
    pub crossing: Crossing,
    pub cos: CosPair,
    /// Sign of `cross(α₊, α₋, β₊, β₋)` at the crossing.
    pub cross_sign: i8,
}

/// The crossings of `A` and `B`, ready for evaluation at any `q`.
#[derive(Clone, Debug)]
pub struct CrossingSet {
    pub a: CyclicWord,
    pub b: CyclicWord,
    pub terms: Vec<CrossingTerm>,
}

fn shifted(w: &Word, i: usize) -> Word {
    w.rotate(i % w.len())
}

impl CrossingSet {
    pub fn new(a: &CyclicWord, b: &CyclicWord) -> Result<CrossingSet> {
        let s = MatLaurent::s();
        let s_inv = s.inverse();
        let terms = enumerate_crossings(a, b)?
            .into_iter()
            .map(|crossing| {
                let x = q_matrix(&shifted(a.word(), crossing.i));
                let yb = q_matrix(&shifted(b.word(), crossing.j));
                let y = match crossing.side {
                    Side::Plus => yb,
                    Side::Minus => &(&s * &yb) * &s_inv,
                };
                let (mx, my) = crossing_matrices(a, b, &crossing);
                let (_, cross_sign) = axes_cross(&mx, &my)?;
                Ok(CrossingTerm {
                    crossing,
                    cos: CosPair::new(&x, &y),
                    cross_sign,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CrossingSet {
            a: a.clone(),
            b: b.clone(),
            terms,
        })
    }

    pub fn intersection_number(&self) -> usize {
        self.terms.len()
    }

    fn sum(&self, q: Complex64, f: impl Fn(&CrossingTerm, Complex64) -> Complex64) -> Result<Complex64> {
        self.terms
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, t| Ok(acc + f(t, t.cos.eval(q)?)))
    }

    /// `½ Σ (1 + cos)/2`.
    pub fn link_q(&self, q: Complex64) -> Result<Complex64> {
        Ok(self.sum(q, |_, c| (c + 1.0) / 2.0)? / 2.0)
    }

    /// `½ Σ cos`.
    pub fn cos_q(&self, q: Complex64) -> Result<Complex64> {
        Ok(self.sum(q, |_, c| c)? / 2.0)
    }

    /// `½ Σ cross·cos`.
    pub fn wolpert_sum(&self, q: Complex64) -> Result<Complex64> {
        Ok(self.sum(q, |t, c| c * f64::from(t.cross_sign))? / 2.0)
    }

    pub fn symbolic(&self) -> SymbolicLinkFn {
        let numerator = self.terms.iter().fold(Laurent::zero(), |acc, t| {
            let term = &t.cos.numerator * &Laurent::monomial(i64::from(t.cos.sign), 0);
            acc + term
        });
        SymbolicLinkFn {
            crossing_count: self.terms.len(),
            numerator,
            disc_a: disc_q(&self.a),
            disc_b: disc_q(&self.b),
        }
    }
}

pub fn link_q(a: &CyclicWord, b: &CyclicWord, q: Complex64) -> Result<Complex64> {
    CrossingSet::new(a, b)?.link_q(q)
}

pub fn cos_q(a: &CyclicWord, b: &CyclicWord, q: Complex64) -> Result<Complex64> {
    CrossingSet::new(a, b)?.cos_q(q)
}

pub fn wolpert_sum(a: &CyclicWord, b: &CyclicWord, q: Complex64) -> Result<Complex64> {
    CrossingSet::new(a, b)?.wolpert_sum(q)
}

pub fn link_q_symbolic(a: &CyclicWord, b: &CyclicWord) -> Result<SymbolicLinkFn> {
    Ok(CrossingSet::new(a, b)?.symbolic())
}

/// `Link_q = I/4 + N(q) / (4·√(disc A_q · disc B_q))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicLinkFn {
    pub crossing_count: usize,
    pub numerator: Laurent,
    pub disc_a: Laurent,
    pub disc_b: Laurent,
}

impl SymbolicLinkFn {
    fn ratio(&self, q: Complex64) -> Result<Complex64> {
        let num = self.numerator.eval_at(q)?;
        let prod = self.disc_a.eval_at(q)? * self.disc_b.eval_at(q)?;
        if prod.norm() <= f64::EPSILON * num.norm().max(1.0) {
            return Err(Error::Pole { re: q.re, im: q.im });
        }
        Ok(num / prod.sqrt())
    }

    pub fn eval(&self, q: Complex64) -> Result<Complex64> {
        Ok(self.crossing_count as f64 / 4.0 + self.ratio(q)? / 4.0)
    }

    /// `Cos_q = N(q) / (2·√(disc A_q · disc B_q))`.
    pub fn eval_cos(&self, q: Complex64) -> Result<Complex64> {
        Ok(self.ratio(q)? / 2.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Zero,
    Pole,
}

impl RootKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::Zero => "zero",
            RootKind::Pole => "pole",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub z: Complex64,
    pub kind: RootKind,
}

pub const DK_MAX_ITER: usize = 500;
pub const DK_RADIUS: f64 = 1.2;

/// Roots of a Laurent polynomial by Durand–Kerner iteration.
///
/// Converged when every `|p(z)| < tol · Σ|c_k||z|^k`.
pub fn laurent_roots(p: &Laurent, tol: f64) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::NumeratorZero);
    }
    let coeffs = p.complex_coeffs();
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let scale = |z: Complex64| {
        let r = z.norm();
        monic.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    };
    let residuals = |zs: &[Complex64]| -> Vec<f64> { zs.iter().map(|&z| eval(z).norm() / scale(z)).collect() };

    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(DK_RADIUS, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..DK_MAX_ITER {
        if residuals(&zs).iter().all(|&r| r < tol) {
            return Ok(zs);
        }
        for i in 0..n {
            let zi = zs[i];
            let denom = zs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (zi - zj));
            if denom.norm() > 0.0 {
                zs[i] = zi - eval(zi) / denom;
            }
        }
    }
    let res = residuals(&zs);
    if res.iter().all(|&r| r < tol) {
        return Ok(zs);
    }
    let max_residual = res.iter().copied().fold(0.0, f64::max);
    Err(Error::NoConvergence {
        iterations: DK_MAX_ITER,
        max_residual,
        residuals: res,
    })
}

/// Zeros of `N(q)` and poles from `disc A_q · disc B_q`.
pub fn roots(f: &SymbolicLinkFn, tol: f64) -> Result<Vec<Root>> {
    let mut out: Vec<Root> = laurent_roots(&f.numerator, tol)?
        .into_iter()
        .map(|z| Root {
            z,
            kind: RootKind::Zero,
        })
        .collect();
    for d in [&f.disc_a, &f.disc_b] {
        out.extend(laurent_roots(d, tol)?.into_iter().map(|z| Root {
            z,
            kind: RootKind::Pole,
        }));
    }
    Ok(out)
}

pub fn write_roots_csv(roots: &[Root], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "re,im,kind")?;
    for r in roots {
        writeln!(out, "{},{},{}", r.z.re, r.z.im, r.kind.as_str())?;
    }
    Ok(())
}

/// A square sampling grid in the complex plane; row 0 is the top edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub center: Complex64,
    pub radius: f64,
    pub pixels: usize,
}

impl Grid {
    pub fn new(center: Complex64, radius: f64, pixels: usize) -> Result<Grid> {
        if pixels < 16 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 16 pixels, got {pixels}"
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad radius {radius}")));
        }
        Ok(Grid { center, radius, pixels })
    }

    /// Centre of the pixel at `(row, col)`.
    pub fn point(&self, row: usize, col: usize) -> Complex64 {
        let step = 2.0 * self.radius / self.pixels as f64;
        Complex64::new(
            self.center.re - self.radius + step * (col as f64 + 0.5),
            self.center.im + self.radius - step * (row as f64 + 0.5),
        )
    }

    pub fn sample_row(&self, row: usize, f: impl Fn(Complex64) -> Result<Complex64>) -> Vec<Option<Complex64>> {
        (0..self.pixels).map(|col| f(self.point(row, col)).ok()).collect()
    }
}

/// Sampled values in row-major order; `None` marks a pole.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub grid: Grid,
    pub values: Vec<Option<Complex64>>,
}

impl Raster {
    pub fn from_rows(grid: Grid, rows: Vec<Vec<Option<Complex64>>>) -> Raster {
        Raster {
            grid,
            values: rows.into_iter().flatten().collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.grid.pixels
    }

    pub fn height(&self) -> usize {
        self.grid.pixels
    }

    pub fn rgb(&self) -> Vec<[u8; 3]> {
        self.values.iter().map(|v| v.map_or([255, 255, 255], colour)).collect()
    }

    /// Binary PPM (P6).
    pub fn write_ppm(&self, out: &mut impl Write) -> io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width(), self.height())?;
        let bytes: Vec<u8> = self.rgb().into_iter().flatten().collect();
        out.write_all(&bytes)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "q_re,q_im,val_re,val_im")?;
        for (k, v) in self.values.iter().enumerate() {
            let q = self.grid.point(k / self.grid.pixels, k % self.grid.pixels);
            match v {
                Some(z) => writeln!(out, "{},{},{},{}", q.re, q.im, z.re, z.im)?,
                None => writeln!(out, "{},{},inf,inf", q.re, q.im)?,
            }
        }
        Ok(())
    }
}

pub fn plot_grid(f: &SymbolicLinkFn, grid: Grid) -> Raster {
    let rows = (0..grid.pixels)
        .map(|row| grid.sample_row(row, |q| f.eval(q)))
        .collect();
    Raster::from_rows(grid, rows)
}

/// Hue from the argument, value from the modulus, full saturation.
pub fn colour(z: Complex64) -> [u8; 3] {
    let hue = (z.arg() / (2.0 * PI)).rem_euclid(1.0);
    let m = z.norm();
    let value = if m.is_finite() { m / (1.0 + m) } else { 1.0 };
    hsv_to_rgb(hue, 1.0, value)
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h6 = h * 6.0;
    let sector = h6.floor() as i64 % 6;
    let f = h6 - h6.floor();
    let (p, q, t) = (v * (1.0 - s), v * (1.0 - s * f), v * (1.0 - s * (1.0 - f)));
    let (r, g, b) = match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    let byte = |x: f64| (x * 255.0).round().clamp(0.0, 255.0) as u8;
    [byte(r), byte(g), byte(b)]
}

/// Angle at a crossing, or signed length of the common perpendicular.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairGeometry {
    Angle(f64),
    OrthoLength(f64),
}

pub fn geodesic_pair_geometry(a: &MatZ, b: &MatZ, q: f64) -> Result<PairGeometry> {
    for m in [a, b] {
        if classify(m) != Kind::Hyperbolic {
            return Err(Error::NotHyperbolic(m.to_string()));
        }
    }
    let (across, cross_sign) = axes_cross(a, b)?;
    let c = CosPair::new(&deform(a), &deform(b)).eval(Complex64::new(q, 0.0))?.re;
    if across == 1 {
        Ok(PairGeometry::Angle(f64::from(cross_sign) * c.clamp(-1.0, 1.0).acos()))
    } else {
        Ok(PairGeometry::OrthoLength(c.signum() * c.abs().max(1.0).acosh()))
    }
}
