use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use modknot::braid3::{alexander, fricke_alexander};
use modknot::charvar::{roots, write_roots_csv, CrossingSet, Grid, Raster};
use modknot::linking::{self, cos_a, intersection_number, Registry};
use modknot::modgroup::{reduce_to_cycle, word_to_matrix, MatZ};
use modknot::qdeform::fricke_trace;
use modknot::qmbasis::{decompose, defect, Basis, FunctionalVec, QmRegistry};
use modknot::words::{enumerate_classes, ClassFilter, CyclicWord};

use crate::config::Config;
use crate::error::CliError;
use crate::output::Emitter;
use crate::record;

pub type Out<'a> = Emitter<Box<dyn Write + 'a>>;

pub fn class(s: &str) -> Result<CyclicWord, CliError> {
    Ok(s.parse()?)
}

/// `RE` or `RE,IM`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number in {s:?}: {p:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Usage(format!("expected RE or RE,IM, got {s:?}"))),
    }
}

/// `CX,CY,R,PX`.
pub fn parse_grid(s: &str) -> Result<Grid, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [cx, cy, r, px] = parts.as_slice() else {
        return Err(CliError::Usage(format!("expected CX,CY,R,PX, got {s:?}")));
    };
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number in {s:?}: {p:?}")))
    };
    let pixels = px
        .parse::<usize>()
        .map_err(|_| CliError::Usage(format!("pixel count is not an integer: {px:?}")))?;
    Ok(Grid::new(Complex64::new(num(cx)?, num(cy)?), num(r)?, pixels)?)
}

pub fn reduce(out: &mut Out, matrix: &str) -> Result<(), CliError> {
    let m: MatZ = matrix.parse()?;
    let cls = reduce_to_cycle(&m);
    out.emit(&record! {
        "matrix" => m.to_string(),
        "kind" => format!("{:?}", m.classify()).to_lowercase(),
        "class" => cls.tag(),
    })?;
    Ok(())
}

pub fn lk(out: &mut Out, a: &str, b: &str, method: Option<&str>) -> Result<(), CliError> {
    let (a, b) = (class(a)?, class(b)?);
    let registry = Registry::default();
    let rec = match method {
        None => record! { "lk" => linking::lk(&a, &b)? },
        Some("all") => {
            let mut rec = crate::output::Record::new();
            for m in registry.iter() {
                rec.insert(m.name().into(), Value::from(m.lk(&a, &b)?));
            }
            let distinct: Vec<&Value> = rec.values().collect();
            if distinct.windows(2).any(|w| w[0] != w[1]) {
                return Err(CliError::Check(format!(
                    "lk methods disagree on ({a}, {b}): {}",
                    Value::Object(rec)
                )));
            }
            rec
        }
        Some(name) => {
            let m = registry.get(name)?;
            record! { m.name() => m.lk(&a, &b)? }
        }
    };
    out.emit(&rec)?;
    Ok(())
}

pub fn intersection(out: &mut Out, a: &str, b: &str) -> Result<(), CliError> {
    let (a, b) = (class(a)?, class(b)?);
    out.emit(&record! { "intersection" => intersection_number(&a, &b)? })?;
    Ok(())
}

pub fn rad(out: &mut Out, a: &str) -> Result<(), CliError> {
    let a = class(a)?;
    out.emit(&record! { "class" => a.to_string(), "rad" => a.rad() })?;
    Ok(())
}

pub fn cosa(out: &mut Out, a: &str, b: &str) -> Result<(), CliError> {
    let (a, b) = (class(a)?, class(b)?);
    out.emit(&record! { "cos_a" => cos_a(&a, &b)? })?;
    Ok(())
}

pub enum LinkqMode {
    At(Complex64),
    Symbolic,
    Roots { csv: Option<String> },
    Grid { grid: Grid, file: String },
}

pub fn linkq(out: &mut Out, cfg: &Config, a: &str, b: &str, mode: LinkqMode) -> Result<(), CliError> {
    let (a, b) = (class(a)?, class(b)?);
    let set = CrossingSet::new(&a, &b)?;
    match mode {
        LinkqMode::At(q) => {
            let l = set.link_q(q)?;
            let c = set.cos_q(q)?;
            out.emit(&record! {
                "q_re" => q.re, "q_im" => q.im,
                "link_re" => l.re, "link_im" => l.im,
                "cos_re" => c.re, "cos_im" => c.im,
            })?;
        }
        LinkqMode::Symbolic => {
            let s = set.symbolic();
            out.emit(&record! {
                "crossings" => s.crossing_count,
                "numerator" => s.numerator.to_sparse(),
                "disc_a" => s.disc_a.to_sparse(),
                "disc_b" => s.disc_b.to_sparse(),
            })?;
        }
        LinkqMode::Roots { csv } => {
            let rs = roots(&set.symbolic(), cfg.tolerance)?;
            if let Some(path) = csv {
                let mut w = BufWriter::new(File::create(&path)?);
                write_roots_csv(&rs, &mut w)?;
                w.flush()?;
            }
            for r in &rs {
                out.emit(&record! { "re" => r.z.re, "im" => r.z.im, "kind" => r.kind.as_str() })?;
            }
        }
        LinkqMode::Grid { grid, file } => {
            let f = set.symbolic();
            let rows: Vec<Vec<Option<Complex64>>> = (0..grid.pixels)
                .into_par_iter()
                .map(|row| grid.sample_row(row, |q| f.eval(q)))
                .collect();
            let raster = Raster::from_rows(grid, rows);
            let mut w = BufWriter::new(File::create(&file)?);
            let kind = if Path::new(&file).extension().is_some_and(|e| e == "csv") {
                raster.write_csv(&mut w)?;
                "csv"
            } else {
                raster.write_ppm(&mut w)?;
                "ppm"
            };
            w.flush()?;
            let poles = raster.values.iter().filter(|v| v.is_none()).count();
            out.emit(&record! {
                "file" => file, "format" => kind,
                "width" => raster.width(), "height" => raster.height(), "poles" => poles,
            })?;
        }
    }
    Ok(())
}

pub fn alexander_cmd(out: &mut Out, a: &str, check: bool) -> Result<(), CliError> {
    let a = class(a)?;
    let delta = alexander(&a)?;
    let mut rec = record! {
        "class" => a.to_string(),
        "alexander" => delta.display_in("t"),
        "coeffs" => delta.to_sparse(),
    };
    if check {
        let ok = a.is_hyperbolic() && fricke_alexander(&a)? == delta;
        rec.insert("check".into(), Value::from(ok));
        out.emit(&rec)?;
        if !ok {
            return Err(CliError::Check(format!("Burau and Fricke sides differ for {a}")));
        }
    } else {
        out.emit(&rec)?;
    }
    Ok(())
}

pub fn fricke(out: &mut Out, a: &str) -> Result<(), CliError> {
    let a = class(a)?;
    let tr = fricke_trace(&a);
    out.emit(&record! {
        "class" => a.to_string(),
        "trace_q" => tr.display_in("q"),
        "coeffs" => tr.to_sparse(),
        "trace_at_1" => word_to_matrix(a.word()).trace().to_string(),
    })?;
    Ok(())
}

pub fn qm_defect(out: &mut Out, cfg: &Config, spec: &str, samples: usize) -> Result<(), CliError> {
    let f = QmRegistry::default().build(spec)?;
    let report = defect(f.as_ref(), samples, cfg.max_len, cfg.seed)?;
    let (x, y) = match &report.witness {
        Some((x, y)) => (x.to_string(), y.to_string()),
        None => (String::new(), String::new()),
    };
    out.emit(&record! {
        "quasimorphism" => report.name,
        "samples" => report.samples,
        "max_len" => report.max_len,
        "seed" => report.seed,
        "max_defect" => report.max_defect,
        "witness_x" => x,
        "witness_y" => y,
    })?;
    Ok(())
}

pub fn qm_decompose(out: &mut Out, m: usize, basis: &str, values: &str) -> Result<(), CliError> {
    let basis: Basis = basis.parse()?;
    let text = fs::read_to_string(values)?;
    let f = FunctionalVec::from_csv(m, &text)?;
    let coeffs = decompose(&f, basis)?;
    for (c, v) in coeffs.index.iter().zip(&coeffs.values) {
        out.emit(&record! { "class" => c.to_string(), "coeff" => format!("{}/{}", v.numer(), v.denom()) })?;
    }
    Ok(())
}

pub enum CorpusEmit {
    Pairs,
    Table,
}

pub fn corpus(out: &mut Out, cfg: &Config, emit: CorpusEmit) -> Result<(), CliError> {
    let classes = enumerate_classes(cfg.max_len, ClassFilter::PrimitiveHyperbolic);
    match emit {
        CorpusEmit::Table => {
            for c in &classes {
                out.emit(&record! {
                    "class" => c.to_string(),
                    "len" => c.len(),
                    "rad" => c.rad(),
                    "trace" => word_to_matrix(c.word()).trace().to_string(),
                    "symmetric" => c.is_symmetric(),
                })?;
            }
        }
        CorpusEmit::Pairs => {
            let pairs: Vec<(&CyclicWord, &CyclicWord)> = classes
                .iter()
                .flat_map(|a| classes.iter().map(move |b| (a, b)))
                .collect();
            // computed in parallel, emitted in canonical order
            let rows: Vec<Result<(i64, i64, i64), modknot::Error>> = pairs
                .par_iter()
                .map(|(a, b)| Ok((linking::lk(a, b)?, intersection_number(a, b)?, cos_a(a, b)?)))
                .collect();
            for ((a, b), row) in pairs.iter().zip(rows) {
                let (lk, i, cos) = row?;
                out.emit(&record! {
                    "a" => a.to_string(), "b" => b.to_string(),
                    "lk" => lk, "intersection" => i, "cos_a" => cos,
                })?;
            }
        }
    }
    Ok(())
}
