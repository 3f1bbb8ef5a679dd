//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N ... PASS|FAIL` line with its pinned tolerance and time budget.
//! Run with `--nocapture` to see the lines.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use equalized::cli::cmd_report_tables;
use equalized::fixedpoints::{chamber_count, enumerate_components, peel_normal, ActionReport, Side};
use equalized::gradings::{classify, is_balanced};
use equalized::grassflow::{chart_inverse_check, ChartCheck, Model};
use equalized::jordan::{check_axioms, symplectic_unit, Albert, JordanElement};
use equalized::linalg::Matrix;
use equalized::rational::{q, qf, Q};
use equalized::rootcore::{Family, RootDatum};
use equalized::weyl::{apply_word_root, longest_element, w0_node_involution};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

/// Every criterion is exact; the only numeric tolerance is wall-clock time.
const EXACT: &str = "exact";

fn verdict(n: u32, title: &str, started: Instant, budget: Option<Duration>, failures: &[String]) {
    let elapsed = started.elapsed();
    let late = budget.is_some_and(|b| elapsed > b);
    let ok = failures.is_empty() && !late;
    let limit = budget.map_or("no time limit".to_string(), |b| format!("limit {} s", b.as_secs()));
    println!(
        "criterion {n:>2} {title}: {} ({EXACT}, {:.2} s, {limit})",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for f in failures.iter().take(20) {
        println!("    {f}");
    }
    if late {
        println!("    over the time budget");
    }
    assert!(ok, "criterion {n} failed: {} problems", failures.len());
}

fn criterion_ranges() -> Vec<(Family, usize, usize)> {
    vec![
        (Family::A, 1, 7),
        (Family::B, 2, 7),
        (Family::C, 2, 7),
        (Family::D, 3, 7),
        (Family::E, 6, 8),
        (Family::F, 4, 4),
        (Family::G, 2, 2),
    ]
}

fn expected_short(f: Family, n: usize) -> BTreeSet<usize> {
    match f {
        Family::A => (1..=n).collect(),
        Family::B => [1].into(),
        Family::C => [n].into(),
        Family::D => [1, n - 1, n].into(),
        Family::E if n == 6 => [1, 6].into(),
        Family::E if n == 7 => [7].into(),
        _ => BTreeSet::new(),
    }
}

fn expected_balanced(f: Family, n: usize) -> BTreeSet<usize> {
    match f {
        Family::A if n % 2 == 1 => [n.div_ceil(2)].into(),
        Family::B => [1].into(),
        Family::C => [n].into(),
        Family::D if n.is_multiple_of(2) => [1, n - 1, n].into(),
        Family::D => [1].into(),
        Family::E if n == 7 => [7].into(),
        _ => BTreeSet::new(),
    }
}

#[test]
fn criterion_01_short_gradings() {
    let t = Instant::now();
    let mut failures = vec![];
    for (f, lo, hi) in criterion_ranges() {
        let reports = classify(f, lo, hi).unwrap();
        for n in lo..=hi {
            let got: BTreeSet<usize> = reports.iter().filter(|g| g.rank == n && g.short).map(|g| g.node).collect();
            if got != expected_short(f, n) {
                failures.push(format!("{f:?}{n}: short at {got:?}"));
            }
        }
    }
    verdict(1, "short gradings", t, Some(Duration::from_secs(5)), &failures);
}

#[test]
fn criterion_02_balanced_gradings() {
    let t = Instant::now();
    let mut failures = vec![];
    for (f, lo, hi) in criterion_ranges() {
        for n in lo..=hi {
            let d = RootDatum::simple(f, n).unwrap();
            let w0 = longest_element(&d);
            let inv = w0_node_involution(&d).unwrap();
            let mut got = BTreeSet::new();
            for i in expected_short(f, n) {
                let p = d.idx(i).unwrap();
                let root_test = d.roots().iter().all(|b| apply_word_root(&d, &w0, b).unwrap().0[p] == -b.0[p]);
                let node_test = inv[&i] == i;
                let library = is_balanced(&d, i).unwrap();
                if root_test != node_test || library != root_test {
                    failures.push(format!("{f:?}{n} sigma_{i}: root {root_test}, node {node_test}, library {library}"));
                }
                if root_test {
                    got.insert(i);
                }
            }
            if got != expected_balanced(f, n) {
                failures.push(format!("{f:?}{n}: balanced at {got:?}"));
            }
        }
    }
    verdict(2, "balanced gradings", t, Some(Duration::from_secs(5)), &failures);
}

fn classical_reports() -> Vec<(Family, usize, usize, usize, ActionReport)> {
    let mut out = vec![];
    for (f, n, i) in common::runs() {
        let d = RootDatum::simple(f, n).unwrap();
        for k in 1..=n {
            out.push((f, n, i, k, enumerate_components(&d, i, k).unwrap()));
        }
    }
    out
}

fn e7_reports() -> Vec<ActionReport> {
    let e7 = RootDatum::simple(Family::E, 7).unwrap();
    (1..=7).map(|k| enumerate_components(&e7, 7, k).unwrap()).collect()
}

#[test]
fn criterion_03_classical_tables() {
    let t = Instant::now();
    let mut failures = vec![];
    for (f, n, i, k, r) in classical_reports() {
        failures.extend(common::mismatch(&r, f, n, i, k));
    }
    let tmp = tempfile::tempdir().unwrap();
    cmd_report_tables(tmp.path()).unwrap();
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for f in ["A", "B", "C", "D"] {
        for ext in ["json", "txt"] {
            let name = format!("classical_{f}.{ext}");
            if std::fs::read(golden.join(&name)).unwrap() != std::fs::read(tmp.path().join(&name)).unwrap() {
                failures.push(format!("{name} differs from the golden file"));
            }
        }
    }
    verdict(3, "classical fixed-point tables", t, Some(Duration::from_secs(30)), &failures);
}

#[test]
fn criterion_04_e7_table() {
    let t = Instant::now();
    let mut failures = vec![];
    let s = [6, 2, 5, 4, 3, 1];
    let dims = [16, 21, 25, 29, 25, 16];
    let ranks = [17, 21, 22, 24, 25, 26];
    for (idx, r) in e7_reports().iter().enumerate() {
        let k = idx + 1;
        let (sink, source) = (r.sink(), r.source());
        let want = if k < 7 {
            (format!("E6({k})"), format!("E6({})", s[idx]), dims[idx], ranks[idx])
        } else {
            ("pt".into(), "pt".into(), 0, 27)
        };
        let got = (sink.name.clone(), source.name.clone(), sink.dim, sink.nu_minus);
        if got != want || source.dim != sink.dim || source.nu_plus != sink.nu_minus {
            failures.push(format!("E7({k}): got {got:?}, source ({}, {}), want {want:?}", source.dim, source.nu_plus));
        }
    }
    verdict(4, "E7 extremal components", t, Some(Duration::from_secs(60)), &failures);
}

#[test]
fn criterion_05_dimension_sum_rule() {
    let t = Instant::now();
    let mut failures = vec![];
    let mut seen = 0;
    let reports = classical_reports().into_iter().map(|x| x.4).chain(e7_reports());
    for r in reports {
        for c in &r.components {
            seen += 1;
            if c.dim + c.nu_minus + c.nu_plus != r.ambient_dim {
                failures.push(format!("{}({}) sigma_{} J={:?}", r.ambient.name, r.ambient.k, r.i, c.marking));
            }
        }
    }
    if seen == 0 {
        failures.push("no components".into());
    }
    verdict(5, "dimension sum rule", t, None, &failures);
}

/// Ranks of the irreducible summands, with multiplicity, largest first.
fn summand_ranks(f: Family, n: usize, i: usize, k: usize) -> Vec<usize> {
    let d = RootDatum::simple(f, n).unwrap();
    let mut out = vec![];
    for irr in peel_normal(&d, i, k, Side::Sink).unwrap() {
        out.extend(std::iter::repeat_n(irr.dim, irr.multiplicity));
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.retain(|&r| r > 0);
    v.sort_by(|a, b| b.cmp(a));
    v
}

#[test]
fn criterion_06_normal_characters() {
    let t = Instant::now();
    let mut failures = vec![];
    let mut check = |f: Family, n: usize, i: usize, k: usize, want: Vec<usize>| {
        let got = summand_ranks(f, n, i, k);
        if got != want {
            failures.push(format!("{f:?}{n}({k}) sigma_{i}: summand ranks {got:?}, want {want:?}"));
        }
    };
    // A_{2n-1}: the rank cap on peeling stops at A7.
    for n in 2..=4 {
        for k in 1..n {
            check(Family::A, 2 * n - 1, n, k, vec![k * n]);
        }
    }
    for n in 3..=5 {
        for k in 1..n {
            check(Family::C, n, n, k, sorted_desc(vec![k * (n - k), k * (k + 1) / 2]));
        }
    }
    for n in 4..=5 {
        for k in 1..n - 1 {
            check(Family::D, n, n, k, sorted_desc(vec![k * (n - k), k * (k - 1) / 2]));
        }
    }
    check(Family::D, 4, 4, 3, vec![3]);
    // B_n / D_n with sigma_1: a single summand of the rank of the sink normal bundle
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::B, 5), (Family::D, 4), (Family::D, 5)] {
        let d = RootDatum::simple(f, n).unwrap();
        for k in 1..=n {
            let rank = enumerate_components(&d, 1, k).unwrap().sink().nu_minus;
            check(f, n, 1, k, vec![rank]);
        }
    }
    verdict(6, "normal-module characters", t, None, &failures);
}

/// Companion to criterion 6 for sigma_1: the sink normal module of B_n(k) and
/// D_n(k) has the character of the quotient bundle Q of the isotropic
/// Grassmannian of V_0, which splits over the Levi as S^perp/S plus S^dual.
#[test]
fn criterion_06_companion_quotient_bundle() {
    let t = Instant::now();
    let mut failures = vec![];
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::B, 5), (Family::D, 4), (Family::D, 5)] {
        let d = RootDatum::simple(f, n).unwrap();
        let v0 = if f == Family::B { 2 * n - 1 } else { 2 * n - 2 };
        for k in 1..=n {
            let rank = enumerate_components(&d, 1, k).unwrap().sink().nu_minus;
            let got = summand_ranks(f, n, 1, k);
            // dim S; both spinor families of D_n come from maximal isotropic S
            let s = if f == Family::D && k + 1 >= n { n - 1 } else { k - 1 };
            let want = sorted_desc(vec![v0 - 2 * s, s]);
            if got.iter().sum::<usize>() != rank || rank != v0 - s || got != want {
                failures.push(format!("{f:?}{n}({k}): ranks {got:?}, sink normal rank {rank}, want {want:?}"));
            }
        }
    }
    let elapsed = t.elapsed().as_secs_f64();
    println!(
        "criterion  6 companion, sigma_1 normal module is the quotient bundle: {} (exact, {elapsed:.2} s)",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

fn rq(rng: &mut ChaCha8Rng) -> Q {
    qf(rng.random_range(-6..=6), rng.random_range(1..=3))
}

fn random_element(rng: &mut ChaCha8Rng, variant: usize, size: usize) -> JordanElement {
    let mut mat = |n: usize| Matrix::from_rows((0..n).map(|_| (0..n).map(|_| rq(rng)).collect()).collect()).unwrap();
    match variant {
        0 => JordanElement::full(mat(size)).unwrap(),
        1 => {
            let m = mat(size);
            JordanElement::sym(m.add(&m.transpose())).unwrap()
        }
        2 => {
            let m = mat(2 * size);
            JordanElement::skew(m.sub(&m.transpose())).unwrap()
        }
        3 => JordanElement::spin(rq(rng), (0..size).map(|_| rq(rng)).collect()),
        _ => JordanElement::Albert(Albert::from_coords(&(0..27).map(|_| rq(rng)).collect::<Vec<_>>()).unwrap()),
    }
}

/// Per variant: at least 50 invertible samples, with sizes cycling.
fn jordan_samples() -> Vec<(usize, Vec<JordanElement>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sizes: [&[usize]; 5] = [&[1, 2, 3, 4], &[1, 2, 3, 4], &[1, 2, 3], &[1, 2, 3, 5], &[3]];
    (0..5)
        .map(|variant| {
            let mut out = vec![];
            while out.len() < 50 {
                let x = random_element(&mut rng, variant, sizes[variant][out.len() % sizes[variant].len()]);
                if !x.norm().unwrap().is_zero() {
                    out.push(x);
                }
            }
            (variant, out)
        })
        .collect()
}

const VARIANTS: [&str; 5] = ["full", "sym", "skew", "spin", "albert"];

#[test]
fn criterion_07_jordan_axioms() {
    let t = Instant::now();
    let mut failures = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (variant, xs) in jordan_samples() {
        assert!(xs.len() >= 50);
        for x in &xs {
            let inv = x.jinvert().unwrap();
            let y = random_element(&mut rng, variant, x.size() / if variant == 2 { 2 } else { 1 });
            let x2 = x.square();
            let jordan = x2.jordan_product(&y).unwrap().jordan_product(x).unwrap()
                == x2.jordan_product(&y.jordan_product(x).unwrap()).unwrap();
            let checks = [
                ("involution", inv.jinvert().unwrap() == *x),
                ("inverse", x.jordan_product(&inv).unwrap().is_unit()),
                ("power-inverse", x2.jordan_product(&inv).unwrap() == *x),
                ("jordan identity", jordan),
            ];
            for (name, ok) in checks {
                if !ok {
                    failures.push(format!("{}: {name} fails on {x:?}", VARIANTS[variant]));
                }
            }
            for _ in 0..5 {
                let mut s = rq(&mut rng);
                while s.is_zero() {
                    s = rq(&mut rng);
                }
                if !x.equivariance_check(&s).unwrap() {
                    failures.push(format!("{}: homogeneity fails at t = {s}", VARIANTS[variant]));
                }
            }
        }
    }
    verdict(7, "Jordan inversion axioms", t, Some(Duration::from_secs(10)), &failures);
}

#[test]
fn criterion_08_adjugate_coherence() {
    let t = Instant::now();
    let mut failures = vec![];
    let mut powers = BTreeMap::new();
    for (variant, xs) in jordan_samples() {
        for x in &xs {
            let report = check_axioms(x).unwrap();
            if !report.adjugate_coherent || !report.cremona_square {
                failures.push(format!("{}: {report:?}", VARIANTS[variant]));
            }
            powers.entry((VARIANTS[variant], x.size())).or_insert(x.norm_power());
        }
    }
    // the power is degree - 2: det^{n-2}, Pf^{m-2}, N^0 for spin, N^1 for Albert
    for ((v, size), p) in &powers {
        let want = match *v {
            "full" | "sym" => *size as i64 - 2,
            "skew" => *size as i64 / 2 - 2,
            "spin" => 0,
            _ => 1,
        };
        if *p != want {
            failures.push(format!("{v} of size {size}: power {p}, want {want}"));
        }
    }
    if symplectic_unit(2).pfaffian() != q(-1) {
        failures.push("Pf of the 4 x 4 symplectic unit".into());
    }
    verdict(8, "adjugate and Cremona coherence", t, None, &failures);
}

fn random_b(rng: &mut ChaCha8Rng, model: Model, n: usize, rank: usize) -> Matrix {
    let mut int = |r: usize, c: usize| {
        Matrix::from_i64(&(0..r).map(|_| (0..c).map(|_| rng.random_range(-4..=4)).collect()).collect::<Vec<_>>())
    };
    if rank == 0 {
        return Matrix::zeros(n, n);
    }
    match model {
        Model::A => int(n, rank).mul(&int(rank, n)),
        Model::C => {
            let p = int(rank, n);
            let d = int(rank, rank);
            p.transpose().mul(&d.add(&d.transpose())).mul(&p)
        }
        _ => {
            let p = int(rank, n);
            let d = int(rank, rank);
            p.transpose().mul(&d.sub(&d.transpose())).mul(&p)
        }
    }
}

#[test]
fn criterion_09_matrix_model_inversion() {
    let t = Instant::now();
    let mut failures = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=4 {
        for model in [Model::A, Model::C, Model::D] {
            if model == Model::D && n % 2 == 1 {
                continue;
            }
            let mut invertible = 0;
            while invertible < 20 {
                let b = random_b(&mut rng, model, n, n);
                let Some(inv) = b.inverse() else { continue };
                invertible += 1;
                match chart_inverse_check(&b, model, n).unwrap() {
                    ChartCheck::Inverse { coordinate, matches_inverse } if matches_inverse && coordinate == inv => {}
                    other => failures.push(format!("{model:?} n={n}: {other:?} for invertible B")),
                }
            }
            for j in 0..10 {
                let rank = if model == Model::D { 2 * (j % (n / 2)) } else { j % n };
                let b = random_b(&mut rng, model, n, rank);
                let r = b.rank();
                match chart_inverse_check(&b, model, n).unwrap() {
                    ChartCheck::Indeterminate { rank, limit } if rank == r && limit.profile[2] == r && r < n => {}
                    other => failures.push(format!("{model:?} n={n}: {other:?} for singular B of rank {r}")),
                }
            }
        }
    }
    verdict(9, "matrix-model inversion", t, Some(Duration::from_secs(10)), &failures);
}

#[test]
fn criterion_10_chamber_counts() {
    let t = Instant::now();
    let mut failures = vec![];
    let mut check = |f: Family, n: usize, i: usize, k: usize, want: i64| {
        let d = RootDatum::simple(f, n).unwrap();
        let got = chamber_count(&d, i, k).unwrap();
        if got != want {
            failures.push(format!("{f:?}{n}({k}) sigma_{i}: delta {got}, want {want}"));
        }
    };
    for n in 1..=5 {
        for k in 1..=n {
            check(Family::A, 2 * n - 1, n, k, k as i64);
        }
    }
    for n in 2..=5 {
        for k in 1..=n {
            check(Family::B, n, 1, k, if k < n { 2 } else { 1 });
        }
        check(Family::C, n, n, n, n as i64);
    }
    for n in 3..=5 {
        for k in 1..=n {
            check(Family::D, n, 1, k, if k + 2 <= n { 2 } else { 1 });
        }
    }
    verdict(10, "chamber counts", t, None, &failures);
}
