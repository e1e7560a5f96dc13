use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use modknot::braid3::fricke_alexander_check;
use modknot::charvar::CrossingSet;
use modknot::linking::{cos_a, intersection_number, lk_oracle, lk_shift, lk_slp};
use modknot::modgroup::{reduce_to_cycle, word_to_matrix, Conjugacy, MatZ};
use modknot::qdeform::fricke_trace;
use modknot::qmbasis::{defect, mas, Mas};
use modknot::words::{coprime, enumerate_classes, transpose, ClassFilter, CyclicWord, Word};

use crate::config::Config;
use crate::record;
use crate::{commands::Out, error::CliError};

pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

type Check = Result<Option<String>, modknot::Error>;

/// Runs `f` over the items in parallel; collects failures in item order.
fn suite<T: Sync>(name: &'static str, items: &[T], f: impl Fn(&T) -> Check + Sync) -> SuiteResult {
    let results: Vec<Check> = items.par_iter().map(&f).collect();
    let failures = results
        .into_iter()
        .filter_map(|r| match r {
            Ok(None) => None,
            Ok(Some(msg)) => Some(msg),
            Err(e) => Some(format!("error: {e}")),
        })
        .collect();
    SuiteResult {
        name,
        checked: items.len(),
        failures,
    }
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Check {
    Ok(bad.then(msg))
}

fn primitive_pairs(max_len: usize) -> Vec<(CyclicWord, CyclicWord)> {
    let cls = enumerate_classes(max_len, ClassFilter::PrimitiveHyperbolic);
    cls.iter()
        .flat_map(|a| cls.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

pub fn run_suites(cfg: &Config) -> Vec<SuiteResult> {
    let n = cfg.max_len;
    let all = enumerate_classes(n, ClassFilter::All);
    let hyperbolic = enumerate_classes(n, ClassFilter::Hyperbolic);
    let pairs = primitive_pairs(n);
    let coprime_pairs: Vec<_> = pairs.iter().filter(|(a, b)| coprime(a, b)).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let qs: Vec<Complex64> = (0..4)
        .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-3.0..3.0)))
        .collect();
    let tol = cfg.tolerance;

    let mut out = vec![
        suite("reduce_round_trip", &all, |c| {
            let m = word_to_matrix(c.word());
            let conj = m.conjugate_by(&MatZ::s()).conjugate_by(&MatZ::t());
            let expect = Conjugacy::Cycle(c.clone());
            fail_if(
                reduce_to_cycle(&m) != expect || reduce_to_cycle(&conj) != expect,
                || format!("{c} does not reduce to itself"),
            )
        }),
        suite("lk_methods_agree", &coprime_pairs, |(a, b)| {
            let (s, p, o) = (lk_shift(a, b)?, lk_slp(a, b)?, lk_oracle(a, b)?);
            fail_if(s != p || p != o, || {
                format!("lk({a}, {b}): shift {s}, slp {p}, oracle {o}")
            })
        }),
        suite("link_q_sum_rule", &pairs, |(a, b)| {
            let set = CrossingSet::new(a, b)?;
            let tset = CrossingSet::new(a, &transpose(b))?;
            let half_i = intersection_number(a, b)? as f64 / 2.0;
            for &q in &qs {
                let err = (set.link_q(q)? + tset.link_q(q)? - half_i).norm();
                if err > tol * half_i.max(1.0) {
                    return Ok(Some(format!("({a}, {b}) at q = {q}: error {err:e}")));
                }
            }
            Ok(None)
        }),
        suite("fricke_trace", &all, |c| {
            let tr = fricke_trace(c);
            let at_one = tr.eval_real(1.0)?;
            let exact = word_to_matrix(c.word())
                .trace()
                .to_string()
                .parse::<f64>()
                .unwrap_or(f64::NAN);
            let ok = tr.is_reciprocal() && tr.degree() == Some(c.len() as i64) && at_one == exact;
            fail_if(!ok, || format!("Tr({c})_q = {tr}"))
        }),
        suite("fricke_alexander", &hyperbolic, |c| {
            fail_if(!fricke_alexander_check(c)?, || {
                format!("{c}: Burau and Fricke sides differ")
            })
        }),
        suite("mas_r_is_rad", &all, |c| {
            let r = mas(&Word::new(vec![modknot::Letter::R]), c)?;
            fail_if(r != c.rad(), || format!("mas_R({c}) = {r}, Rad = {}", c.rad()))
        }),
        suite("cos_homogeneous", &pairs, |(a, b)| {
            let base = cos_a(a, b)?;
            for k in 2..=3 {
                let v = cos_a(a, &b.pow(k))?;
                if v != k as i64 * base {
                    return Ok(Some(format!("Cos_{a}({b}^{k}) = {v}, expected {}", k as i64 * base)));
                }
            }
            Ok(None)
        }),
    ];
    let rrl = Mas("RRL".parse().expect("literal word"));
    let d = defect(&rrl, 200, n.max(4), cfg.seed);
    out.push(SuiteResult {
        name: "mas_defect_bound",
        checked: 200,
        failures: match d {
            Ok(r) if r.max_defect <= 6 => vec![],
            Ok(r) => vec![format!("sampled defect of mas_RRL is {}", r.max_defect)],
            Err(e) => vec![format!("error: {e}")],
        },
    });
    out
}

pub fn selfcheck(out: &mut Out, cfg: &Config) -> Result<(), CliError> {
    let results = run_suites(cfg);
    let mut failed = 0;
    let mut checked = 0;
    for r in &results {
        checked += r.checked;
        if !r.failures.is_empty() {
            failed += 1;
        }
        out.emit(&record! {
            "suite" => r.name,
            "status" => if r.failures.is_empty() { "pass" } else { "fail" },
            "checked" => r.checked,
            "failed" => r.failures.len(),
            "first_failure" => r.failures.first().cloned().unwrap_or_default(),
        })?;
    }
    let status = if failed == 0 { "pass" } else { "fail" };
    out.emit(&record! {
        "suite" => "summary",
        "status" => status,
        "checked" => checked,
        "failed" => failed,
        "first_failure" => "",
    })?;
    if failed > 0 {
        return Err(CliError::Check(format!("{failed} self-check suite(s) failed")));
    }
    Ok(())
}
