//! Closed-form classical fixed-point tables shared by the test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use equalized::fixedpoints::ActionReport;
use equalized::rootcore::Family;

/// One factor of a marked product: `(letter, rank, marking)`.
pub type Factor = (char, usize, Vec<usize>);

pub fn clip(rank: usize, marks: &[i64]) -> Vec<usize> {
    let set: BTreeSet<usize> = marks.iter().filter(|&&j| j >= 1 && j <= rank as i64).map(|&j| j as usize).collect();
    set.into_iter().collect()
}

pub fn render(factors: &[Factor]) -> String {
    let factors: Vec<&Factor> = factors.iter().filter(|f| f.1 > 0).collect();
    if factors.iter().all(|f| f.2.is_empty()) {
        return "pt".into();
    }
    factors
        .iter()
        .map(|(c, r, m)| {
            if m.is_empty() {
                "pt".to_string()
            } else {
                format!("{c}{r}({})", m.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            }
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Grassmannians of complementary dimension are the same variety; used only
/// where the tables themselves mix the two descriptions.
pub fn dualize(name: &str) -> String {
    let Some(rest) = name.strip_prefix('A') else { return name.to_string() };
    let Some((r, m)) = rest.split_once('(') else { return name.to_string() };
    let r: usize = r.parse().unwrap();
    let m: Vec<usize> = m.trim_end_matches(')').split(',').map(|x| x.parse().unwrap()).collect();
    let mut flipped: Vec<usize> = m.iter().map(|j| r + 1 - j).collect();
    flipped.sort();
    let best = if flipped < m { flipped } else { m };
    render(&[('A', r, best)])
}

pub struct Row {
    /// Width of the moment-map range.
    pub width: i64,
    pub names: Vec<String>,
    pub up_to_duality: bool,
}

pub fn expected(family: Family, n: usize, i: usize, k: usize) -> Row {
    let (ni, ki) = (n as i64, k as i64);
    let a = |marks: &[i64]| render(&[('A', n - 1, clip(n - 1, marks))]);
    let sub = |c: char, marks: &[i64]| render(&[(c, n - 1, clip(n - 1, marks))]);
    let row = |width: i64, names: Vec<String>| Row { width, names, up_to_duality: false };
    match (family, i) {
        (Family::A, _) => {
            let ii = i as i64;
            let lo = (ki - ii).max(0);
            let hi = ki.min(ni - ii + 1);
            let names = (lo..=hi)
                .map(|s| render(&[('A', i - 1, clip(i - 1, &[ki - s])), ('A', n - i, clip(n - i, &[s]))]))
                .collect();
            row(hi - lo, names)
        }
        (Family::B, 1) => {
            if k < n {
                row(2, vec![sub('B', &[ki - 1]), sub('B', &[ki]), sub('B', &[ki - 1])])
            } else {
                row(1, vec![sub('B', &[ni - 1]); 2])
            }
        }
        (Family::C, _) | (Family::D, _) if i == n && (family == Family::C || k + 1 < n) => {
            if k < n {
                row(ki, (0..=ki).map(|s| a(&[ki - s, ni - s])).collect())
            } else {
                row(ni, (0..=ni).map(|s| a(&[ni - s])).collect())
            }
        }
        (Family::D, 1) => {
            if k + 2 < n {
                row(2, vec![sub('D', &[ki - 1]), sub('D', &[ki]), sub('D', &[ki - 1])])
            } else if k + 2 == n {
                row(2, vec![sub('D', &[ni - 3]), sub('D', &[ni - 2, ni - 1]), sub('D', &[ni - 3])])
            } else if k + 1 == n {
                row(1, vec![sub('D', &[ni - 2]), sub('D', &[ni - 1])])
            } else {
                row(1, vec![sub('D', &[ni - 1]), sub('D', &[ni - 2])])
            }
        }
        (Family::D, _) if i == n => {
            let even = n.is_multiple_of(2);
            let mut r = match (even, k == n) {
                (true, false) => {
                    let h = ni / 2 - 1;
                    let mut v = vec![a(&[ni - 1])];
                    v.extend((1..h).map(|s| a(&[ni - 1 - 2 * s])));
                    v.push(a(&[1]));
                    row(h, v)
                }
                (true, true) => row(ni / 2, (0..=ni / 2).map(|s| a(&[2 * s])).collect()),
                (false, false) => row((ni - 1) / 2, (0..=(ni - 1) / 2).map(|s| a(&[ni - 1 - 2 * s])).collect()),
                (false, true) => {
                    let h = (ni - 1) / 2;
                    let mut v: Vec<String> = (0..h).map(|s| a(&[2 * s])).collect();
                    v.push(a(&[1]));
                    row(h, v)
                }
            };
            r.up_to_duality = true;
            r
        }
        (Family::D, _) if i + 1 == n => {
            // reorder the last two coordinates: sigma_{n-1} becomes sigma_n
            let k2 = match k {
                _ if k == n => n - 1,
                _ if k + 1 == n => n,
                _ => k,
            };
            expected(Family::D, n, n, k2)
        }
        _ => panic!("no table for {family:?}{n} sigma_{i}"),
    }
}

pub fn runs() -> Vec<(Family, usize, usize)> {
    let mut v = vec![];
    for n in 3..=5 {
        v.extend((1..=n).map(|i| (Family::A, n, i)));
        v.push((Family::B, n, 1));
        v.push((Family::C, n, n));
    }
    for n in 4..=5 {
        v.extend([(Family::D, n, 1), (Family::D, n, n - 1), (Family::D, n, n)]);
    }
    v
}

/// First disagreement between a report and the closed-form table, if any.
pub fn mismatch(report: &ActionReport, family: Family, n: usize, i: usize, k: usize) -> Option<String> {
    let want = expected(family, n, i, k);
    let tag = format!("{family:?}{n}({k}) sigma_{i}");
    let mus: Vec<i64> = report.components.iter().map(|c| c.mu).collect();
    if mus != (0..=want.width).collect::<Vec<_>>() {
        return Some(format!("{tag}: mu values {mus:?}, table width {}", want.width));
    }
    let mut got: Vec<String> = report.components.iter().map(|c| c.name.clone()).collect();
    let mut names = want.names;
    if want.up_to_duality {
        got = got.iter().map(|s| dualize(s)).collect();
        names = names.iter().map(|s| dualize(s)).collect();
    }
    if got != names {
        return Some(format!("{tag}: components {got:?}, table {names:?}"));
    }
    if report.sink().name != report.components[0].name || report.source().name != report.components.last()?.name {
        return Some(format!("{tag}: sink or source not at the ends of the range"));
    }
    None
}

pub fn check(report: &ActionReport, family: Family, n: usize, i: usize, k: usize) {
    if let Some(e) = mismatch(report, family, n, i, k) {
        panic!("{e}");
    }
}
