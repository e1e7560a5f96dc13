//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are reported as FAIL without failing the
//! run; the run fails if any other criterion fails, or if a known-red one
//! starts passing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modknot::braid3::{alexander, fricke_alexander_check};
use modknot::charvar::{laurent_roots, plot_grid, roots, CrossingSet, Grid, RootKind};
use modknot::linking::{cos_a, intersection_number, link_equiv_witness, lk, lk_oracle, lk_shift, lk_slp};
use modknot::modgroup::word_to_matrix;
use modknot::qdeform::{disc_q, fricke_trace, Laurent};
use modknot::qmbasis::{
    basis_index, basis_matrix, decompose, defect, determinant, mas, recombine, Basis, FunctionalVec, Mas, Rad,
};
use modknot::words::{coprime, enumerate_classes, transpose, ClassFilter, CyclicWord, Word};

const NUMERIC_TOL: f64 = 1e-9;
const LIMIT_TOL_AT_32: f64 = 0.01;
/// Slack for "non-increasing" on errors that are already at rounding level.
const MONOTONE_SLACK: f64 = 1e-12;
const WOLPERT_TOL: f64 = 1e-6;
const DK_TOL: f64 = 1e-10;
/// Multiple roots are only located to about `DK_TOL^(1/m)`.
const ROOT_CLOSURE_TOL: f64 = 1e-2;
const TRIPLE_BUDGET: Duration = Duration::from_secs(120);
const WITNESS_BUDGET: Duration = Duration::from_secs(300);
const SEED: u64 = 20240601;

const KNOWN_RED: &[u32] = &[9];

type Criterion = (u32, &'static str, fn() -> (Status, String));

enum Status {
    Pass,
    Fail,
    /// Reported, never fatal.
    Finding,
}

struct Outcome {
    id: u32,
    name: &'static str,
    status: Status,
    detail: String,
}

fn c(s: &str) -> CyclicWord {
    s.parse().unwrap()
}

fn primitive(max_len: usize) -> Vec<CyclicWord> {
    enumerate_classes(max_len, ClassFilter::PrimitiveHyperbolic)
}

fn ordered_pairs(cls: &[CyclicWord]) -> Vec<(CyclicWord, CyclicWord)> {
    cls.iter()
        .flat_map(|a| cls.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

fn check(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn reference_values() -> (Status, String) {
    let lk_aa = lk(&c("RLL"), &c("RLL")).unwrap();
    let lk_ab = lk(&c("RLL"), &c("RRL")).unwrap();
    let i_aa = intersection_number(&c("RLL"), &c("RLL")).unwrap();
    check(
        lk_aa == 2 && lk_ab == 1 && i_aa == 6,
        format!(
            "lk(RLL,RLL) = {lk_aa}, lk(RLL,RRL) = {lk_ab}, I(RLL,RLL)/2 = {}",
            i_aa / 2
        ),
    )
}

fn triple_agreement() -> (Status, String) {
    let start = Instant::now();
    let pairs: Vec<_> = ordered_pairs(&primitive(7))
        .into_iter()
        .filter(|(a, b)| coprime(a, b))
        .collect();
    let mut bad = Vec::new();
    for (a, b) in &pairs {
        let vals = (lk_shift(a, b), lk_slp(a, b), lk_oracle(a, b));
        match vals {
            (Ok(s), Ok(p), Ok(o)) if s == p && p == o => {}
            other => bad.push(format!("({a},{b}): {other:?}")),
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < TRIPLE_BUDGET,
        format!(
            "{} ordered coprime pairs, {} disagreements{}, {:.1}s (budget {}s)",
            pairs.len(),
            bad.len(),
            bad.first().map(|b| format!(", first {b}")).unwrap_or_default(),
            elapsed.as_secs_f64(),
            TRIPLE_BUDGET.as_secs()
        ),
    )
}

fn random_qs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(-3.1..3.1)))
        .collect()
}

fn sum_rule() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let qs = random_qs(&mut rng, 20);
    let pairs = ordered_pairs(&primitive(5));
    let mut symbolic_bad = 0;
    let mut worst: f64 = 0.0;
    for (a, b) in &pairs {
        let bt = transpose(b);
        let (set, tset) = (CrossingSet::new(a, b).unwrap(), CrossingSet::new(a, &bt).unwrap());
        let (s, ts) = (set.symbolic(), tset.symbolic());
        let i = intersection_number(a, b).unwrap();
        let symbolic_ok = &s.numerator + &ts.numerator == Laurent::zero()
            && s.disc_b == ts.disc_b
            && (s.crossing_count + ts.crossing_count) as i64 == 2 * i;
        if !symbolic_ok {
            symbolic_bad += 1;
        }
        for &q in &qs {
            let err = (set.link_q(q).unwrap() + tset.link_q(q).unwrap() - i as f64 / 2.0).norm();
            worst = worst.max(err / (i as f64 / 2.0).max(1.0));
        }
    }
    check(
        symbolic_bad == 0 && worst < NUMERIC_TOL,
        format!(
            "{} pairs, {} symbolic failures, worst relative error {worst:.2e} at 20 random q (tol {NUMERIC_TOL:e})",
            pairs.len(),
            symbolic_bad
        ),
    )
}

fn boundary_limits() -> (Status, String) {
    let qs = [2.0, 4.0, 8.0, 16.0, 32.0];
    let pairs = ordered_pairs(&primitive(5));
    let mut worst = [0.0f64; 5];
    let mut not_monotone = Vec::new();
    for (a, b) in &pairs {
        let set = CrossingSet::new(a, b).unwrap();
        let l = lk(a, b).unwrap() as f64;
        let i = intersection_number(a, b).unwrap() as f64;
        let errs: Vec<f64> = qs
            .iter()
            .map(|&q| {
                let q = Complex64::new(q, 0.0);
                let e1 = (set.link_q(q).unwrap() - l).norm();
                let e2 = (set.cos_q(q).unwrap() - (2.0 * l - i / 2.0)).norm();
                e1.max(e2)
            })
            .collect();
        for (w, e) in worst.iter_mut().zip(&errs) {
            *w = w.max(*e);
        }
        if errs.windows(2).any(|w| w[1] > w[0] + MONOTONE_SLACK) {
            not_monotone.push(format!("({a},{b})"));
        }
    }
    let table: Vec<String> = qs.iter().zip(&worst).map(|(q, w)| format!("q={q}: {w:.2e}")).collect();
    check(
        not_monotone.is_empty() && worst[4] < LIMIT_TOL_AT_32,
        format!(
            "{} pairs, worst error {}; {} non-monotone (tol {LIMIT_TOL_AT_32} at q=32)",
            pairs.len(),
            table.join(", "),
            not_monotone.len()
        ),
    )
}

fn fricke_properties() -> (Status, String) {
    let cls = enumerate_classes(8, ClassFilter::All);
    let bad: Vec<String> = cls
        .iter()
        .filter(|a| {
            let tr = fricke_trace(a);
            let at_one = tr.terms().fold(BigInt::zero(), |acc, (_, c)| acc + c);
            !(tr.is_reciprocal() && tr.degree() == Some(a.len() as i64) && at_one == word_to_matrix(a.word()).trace())
        })
        .map(|a| a.to_string())
        .collect();
    check(bad.is_empty(), format!("{} classes, failures {:?}", cls.len(), bad))
}

fn fricke_alexander() -> (Status, String) {
    let cls = enumerate_classes(8, ClassFilter::Hyperbolic);
    let bad: Vec<String> = cls
        .iter()
        .filter(|a| fricke_alexander_check(a) != Ok(true))
        .map(|a| a.to_string())
        .collect();
    let anchor = alexander(&c("RL")).unwrap();
    check(
        bad.is_empty() && anchor == Laurent::one(),
        format!(
            "{} hyperbolic classes, failures {:?}, Delta(RL) = {anchor}",
            cls.len(),
            bad
        ),
    )
}

fn link_equivalence() -> (Status, String) {
    let start = Instant::now();
    let cls = primitive(6);
    let mut missing = Vec::new();
    let mut pairs = 0;
    for (k, a) in cls.iter().enumerate() {
        for b in &cls[k + 1..] {
            pairs += 1;
            if link_equiv_witness(a, b, 6).unwrap().is_none() {
                missing.push(format!("({a},{b})"));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        missing.is_empty() && elapsed < WITNESS_BUDGET,
        format!(
            "{pairs} pairs, {} without witness {:?}, {:.1}s (budget {}s)",
            missing.len(),
            missing,
            elapsed.as_secs_f64(),
            WITNESS_BUDGET.as_secs()
        ),
    )
}

fn self_overlaps(p: &Word) -> bool {
    let l = p.letters();
    (1..l.len()).any(|k| l[..k] == l[l.len() - k..])
}

fn quasi_morphisms() -> (Status, String) {
    let mut problems = Vec::new();
    let cls = primitive(4);
    for (a, b) in ordered_pairs(&cls) {
        let base = cos_a(&a, &b).unwrap();
        for n in 2..=5 {
            if cos_a(&a, &b.pow(n)).unwrap() != n as i64 * base {
                problems.push(format!("Cos_{a}({b}^{n})"));
            }
        }
    }
    let mut worst_defect = 0;
    let patterns: Vec<Word> = enumerate_classes(4, ClassFilter::All)
        .iter()
        .flat_map(|c| (0..c.len()).map(|k| c.word().rotate(k)).collect::<Vec<_>>())
        .filter(|p| !self_overlaps(p))
        .collect();
    for p in &patterns {
        let r = defect(&Mas(p.clone()), 500, 12, SEED).unwrap();
        worst_defect = worst_defect.max(r.max_defect);
        if r.max_defect > 6 {
            problems.push(format!("defect of mas_{p} = {}", r.max_defect));
        }
    }
    let all = enumerate_classes(8, ClassFilter::All);
    let r = Word::new(vec![modknot::Letter::R]);
    for a in &all {
        if mas(&r, a).unwrap() != a.rad() {
            problems.push(format!("mas_R({a})"));
        }
    }
    check(
        problems.is_empty(),
        format!(
            "homogeneity on {} pairs, n <= 5; {} non-overlapping patterns, worst sampled defect {worst_defect}; mas_R = Rad on {} classes; problems {:?}",
            cls.len() * cls.len(),
            patterns.len(),
            all.len(),
            problems
        ),
    )
}

fn basis_linear_algebra() -> (Status, String) {
    let mut singular = Vec::new();
    let mut round_trip_bad = Vec::new();
    let mut rad_bad = Vec::new();
    for m in 1..=6 {
        for basis in [Basis::Mas, Basis::Cos] {
            if determinant(&basis_matrix(m, basis).unwrap()).is_zero() {
                singular.push(format!("M_{basis}(m={m}, |L_m|={})", basis_index(m).len()));
                continue;
            }
            let f = FunctionalVec::of(&Mas("RRL".parse().unwrap()), m).unwrap();
            let coeffs = decompose(&f, basis).unwrap();
            if recombine(&coeffs, basis).unwrap() != f {
                round_trip_bad.push(format!("{basis}, m={m}"));
            }
        }
        let rad = FunctionalVec::of(&Rad, m).unwrap();
        match decompose(&rad, Basis::Cos) {
            Ok(v) if v == FunctionalVec::unit(m, &c("R")).unwrap() => {}
            Ok(_) => rad_bad.push(format!("m={m}: wrong coefficients")),
            Err(e) => rad_bad.push(format!("m={m}: {e}")),
        }
    }
    check(
        singular.is_empty() && round_trip_bad.is_empty() && rad_bad.is_empty(),
        format!(
            "m <= 6: singular {:?}; round-trip failures {:?}; decompose(Rad, cos) failures {:?}",
            singular, round_trip_bad, rad_bad
        ),
    )
}

fn wolpert() -> (Status, String) {
    let pairs = ordered_pairs(&primitive(5));
    let mut worst: f64 = 0.0;
    let mut arg = String::new();
    for (a, b) in &pairs {
        let set = CrossingSet::new(a, b).unwrap();
        for q in [1.0, 2.0, 5.0] {
            let w = set.wolpert_sum(Complex64::new(q, 0.0)).unwrap().norm();
            if w > worst {
                worst = w;
                arg = format!(" at ({a},{b}), q={q}");
            }
        }
    }
    let detail = format!(
        "{} pairs, max |sum| = {worst:.2e}{arg} (tol {WOLPERT_TOL:e})",
        pairs.len()
    );
    if worst < WOLPERT_TOL {
        (Status::Pass, detail)
    } else {
        (Status::Finding, detail)
    }
}

fn root_machinery() -> (Status, String) {
    let disc = disc_q(&c("R"));
    let mut problems = Vec::new();
    match laurent_roots(&disc, DK_TOL) {
        Ok(rs) => {
            let coeffs = disc.complex_coeffs();
            for z in &rs {
                let (num, den) = coeffs.iter().rev().fold((Complex64::zero(), 0.0), |(p, s), c| {
                    (p * z + c, s * z.norm() + c.norm())
                });
                if num.norm() / den >= DK_TOL {
                    problems.push(format!("residual at {z}"));
                }
            }
            let near = |t: f64| rs.iter().filter(|z| (*z - t).norm() < 1e-3).count();
            if near(1.0) != 2 || near(-1.0) != 2 {
                problems.push(format!("disc_q(R) roots {rs:?}"));
            }
        }
        Err(e) => problems.push(format!("disc_q(R): {e}")),
    }
    let syms: Vec<_> = ordered_pairs(&primitive(5))
        .iter()
        .map(|(a, b)| CrossingSet::new(a, b).unwrap().symbolic())
        .filter(|s| !s.numerator.is_zero())
        .take(6)
        .collect();
    for s in &syms {
        let rs = roots(s, DK_TOL).unwrap();
        let near = |z: Complex64, kind: RootKind| {
            rs.iter()
                .any(|r| r.kind == kind && (r.z - z).norm() < ROOT_CLOSURE_TOL * z.norm().max(1.0))
        };
        if !rs.iter().all(|r| near(r.z.conj(), r.kind) && near(r.z.inv(), r.kind)) {
            problems.push("root set not closed".into());
        }
    }
    let grid = Grid::new(Complex64::new(0.0, 0.0), 2.0, 48).unwrap();
    let render = || {
        let mut buf = Vec::new();
        plot_grid(&syms[0], grid).write_ppm(&mut buf).unwrap();
        buf
    };
    let (first, second) = (render(), render());
    let header = b"P6\n48 48\n255\n";
    if !(first.starts_with(header) && first.len() == header.len() + 3 * 48 * 48 && first == second) {
        problems.push("ppm output".into());
    }
    check(
        problems.is_empty(),
        format!(
            "disc_q(R) residuals < {DK_TOL:e}; {} root sets closed within {ROOT_CLOSURE_TOL}; ppm 48x48 deterministic; problems {:?}",
            syms.len(),
            problems
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "reference values", reference_values),
        (2, "triple-method agreement", triple_agreement),
        (3, "Link_q sum rule", sum_rule),
        (4, "boundary limits", boundary_limits),
        (5, "Fricke properties", fricke_properties),
        (6, "Fricke-Alexander identity", fricke_alexander),
        (7, "link-equivalence separation", link_equivalence),
        (8, "quasi-morphism suite", quasi_morphisms),
        (9, "basis linear algebra", basis_linear_algebra),
        (10, "Wolpert sum (non-fatal)", wolpert),
        (11, "root and plot machinery", root_machinery),
    ];
    let mut outcomes = Vec::new();
    for (id, name, run) in criteria {
        let (status, detail) = run();
        let o = Outcome {
            id,
            name,
            status,
            detail,
        };
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
        };
        let known = if KNOWN_RED.contains(&o.id) { " [known red]" } else { "" };
        println!("{tag} {:>2} {}{known}: {}", o.id, o.name, o.detail);
        outcomes.push(o);
    }
    let unexpected: Vec<u32> = outcomes
        .iter()
        .filter(|o| match o.status {
            Status::Fail => !KNOWN_RED.contains(&o.id),
            Status::Pass => KNOWN_RED.contains(&o.id),
            Status::Finding => false,
        })
        .map(|o| o.id)
        .collect();
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
