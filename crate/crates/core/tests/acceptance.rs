//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that the lines are always printed; exits non-zero on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use multiset_animals::bijections::{grammar_enumerate, phi, phi_inv, psi_inv, HeapClass};
use multiset_animals::heap_animal::{Heap, PointAnimal};
use multiset_animals::lattice_path::{self, PathFamily, StepWord};
use multiset_animals::multiset::{self, Multiset, MultisetFamily};
use multiset_animals::series::{Bivariate, ClosedForm};
use multiset_animals::table;
use multiset_animals::verify::{Suite, Toolkit, VerifyReport};

const LIMIT_TABLE1: Duration = Duration::from_secs(5);
const LIMIT_A005773: Duration = Duration::from_secs(60);
const LIMIT_BIJECTIONS: Duration = Duration::from_secs(60);
const LIMIT_SERIES: Duration = Duration::from_secs(2);

/// Reference counts of n-multisets of [k] with no consecutive values:
/// rows k = 1..=6, columns n = 1..=9.
const PRINTED: [[u64; 9]; 6] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [2, 2, 2, 2, 2, 2, 2, 2, 2],
    [3, 4, 5, 6, 7, 8, 9, 10, 11],
    [4, 7, 10, 13, 16, 19, 22, 25, 28],
    [5, 11, 18, 26, 35, 45, 56, 68, 81],
    [6, 16, 30, 48, 70, 96, 126, 160, 198],
];

const LONG_MULTISET: &str = "3,4,5,5,5,5,5,6,6,8,8,8,8,12,15,16,17,17,17,19,19,19";
/// Reference image of the long multiset.
const LONG_PATH: &str = "UUUDUDUDDDDDUDDUUDDDDUUUUDUUUDUDUDDDUUDDDUUU";
/// Reference animal for the long multiset.
const LONG_ANIMAL: [(u32, u32); 22] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 2),
    (1, 1),
    (2, 2),
    (2, 5),
    (3, 5),
    (3, 6),
    (4, 6),
    (5, 6),
    (2, 0),
    (3, 1),
    (4, 2),
    (6, 4),
    (4, 4),
    (4, 3),
    (5, 4),
    (1, 3),
    (2, 4),
    (7, 4),
    (5, 5),
];

type Outcome = Result<String, String>;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// n-multisets of [k] with no two consecutive values, by direct recursion on
/// the smallest value.
fn star_count(n: usize, k: u64) -> u64 {
    fn go(left: usize, lo: u64, k: u64, prev: Option<u64>) -> u64 {
        if left == 0 {
            return 1;
        }
        (lo..=k)
            .filter(|&v| prev.is_none_or(|p| v != p + 1))
            .map(|v| go(left - 1, v, k, Some(v)))
            .sum()
    }
    go(n, 1, k, None)
}

fn a005773(n: u64) -> BigInt {
    (0..n)
        .map(|k| binomial(n - 1, k) * binomial(k, k / 2))
        .sum()
}

fn motzkin(n: usize) -> BigInt {
    // paths of n steps in {up, flat, down} that stay weakly above the axis
    let mut ways = vec![BigInt::from(0); n + 2];
    ways[0] = BigInt::from(1);
    for _ in 0..n {
        let mut next = vec![BigInt::from(0); n + 2];
        for h in 0..=n {
            next[h] += &ways[h];
            next[h + 1] += &ways[h];
            if h > 0 {
                next[h - 1] += &ways[h];
            }
        }
        ways = next;
    }
    ways[0].clone()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_outcome(report: &VerifyReport) -> Outcome {
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} checks OK", report.checks.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn table1() -> Outcome {
    let t = table::table1(9, 6);
    for (ki, row) in PRINTED.iter().enumerate() {
        for (ni, &printed) in row.iter().enumerate() {
            let (n, k) = (ni + 1, ki + 1);
            let series = t.get(n, k).cloned().unwrap_or_default();
            let counted = star_count(n, k as u64);
            let listed = multiset::enumerate(MultisetFamily::Star, n, k as u32).count() as u64;
            ensure(
                series == BigInt::from(printed) && counted == printed && listed == printed,
                || {
                    format!("(n={n},k={k}) printed {printed}, f {series}, recursion {counted}, enumeration {listed}")
                },
            )?;
        }
    }
    Ok("54 entries: printed = f table = enumeration".into())
}

fn a005773_agreement() -> Outcome {
    let q = ClosedForm::Q.expand(10);
    for n in 1..=10usize {
        let values = [
            ("formula", a005773(n as u64)),
            (
                "M*_n",
                BigInt::from(multiset::enumerate(MultisetFamily::Star, n, n as u32).count()),
            ),
            (
                "GD*_n",
                BigInt::from(lattice_path::enumerate(PathFamily::GrandDyckStar, n).count()),
            ),
            (
                "UDU-free GD_n",
                BigInt::from(lattice_path::enumerate(PathFamily::GrandDyckUduFree, n).count()),
            ),
            (
                "Q_n grammar",
                BigInt::from(
                    grammar_enumerate(n, HeapClass::Q)
                        .map_err(|e| e.to_string())?
                        .len(),
                ),
            ),
            ("[z^n]Q", q.coeff(n).unwrap().to_integer()),
        ];
        ensure(values.iter().all(|(_, v)| *v == values[0].1), || {
            format!("n={n}: {values:?}")
        })?;
        if n <= 6 {
            let printed = BigInt::from(PRINTED[n - 1][n - 1]);
            ensure(values[0].1 == printed, || {
                format!("n={n}: {} vs table {printed}", values[0].1)
            })?;
        }
    }
    Ok("n <= 10, 1 2 5 13 35 96 match the reference diagonal".into())
}

fn classical_counts() -> Outcome {
    let ts = ClosedForm::Ts.expand(8);
    let qs = ClosedForm::Qs.expand(8);
    let t = ClosedForm::T.expand(8);
    for n in 1..=8usize {
        let m = n as u64;
        let count = |f| BigInt::from(lattice_path::enumerate(f, n).count());
        let catalan = binomial(2 * m, m) / (m + 1);
        let t_n = BigInt::from(
            grammar_enumerate(n, HeapClass::T)
                .map_err(|e| e.to_string())?
                .len(),
        );
        let checks = [
            ("|D_n| = Catalan", count(PathFamily::Dyck), catalan.clone()),
            (
                "[z^n]Ts = Catalan",
                ts.coeff(n).unwrap().to_integer(),
                catalan,
            ),
            (
                "|D*_n| = Motzkin(n-1)",
                count(PathFamily::DyckStar),
                motzkin(n - 1),
            ),
            (
                "[z^n]Qs = Motzkin(n-1)",
                qs.coeff(n).unwrap().to_integer(),
                motzkin(n - 1),
            ),
            ("|T_n| = C(2n-1,n)", t_n, binomial(2 * m - 1, m)),
            (
                "[z^n]T = C(2n-1,n)",
                t.coeff(n).unwrap().to_integer(),
                binomial(2 * m - 1, m),
            ),
            (
                "|GD_n| = C(2n-1,n-1)",
                count(PathFamily::GrandDyck),
                binomial(2 * m - 1, m - 1),
            ),
        ];
        for (label, got, want) in checks {
            ensure(got == want, || format!("n={n} {label}: {got} vs {want}"))?;
        }
    }
    Ok("n <= 8".into())
}

fn worked_examples() -> Outcome {
    let short = [
        ("2,2,2,4,4,7,7,7", "UUDDDUUDDUUUDDDU"),
        ("2,5,5,7,7,7,8,8", "UUDUUUDDUUDDDUDD"),
    ];
    for (m, p) in short {
        let ms: Multiset = m.parse().map_err(|e| format!("{e}"))?;
        let path: StepWord = p.parse().map_err(|e| format!("{e}"))?;
        ensure(phi(&ms) == path, || format!("phi({m}) = {}", phi(&ms)))?;
        ensure(phi_inv(&path).ok().as_ref() == Some(&ms), || {
            format!("phi_inv({p}) != {m}")
        })?;
    }
    let ms: Multiset = LONG_MULTISET.parse().map_err(|e| format!("{e}"))?;
    let path = phi(&ms);
    ensure(path.to_string() == LONG_PATH, || {
        format!("long path {path}")
    })?;
    let heap = psi_inv(&path).map_err(|e| e.to_string())?;
    let valid: Heap = Heap::from_dimers(heap.dimers().to_vec()).map_err(|e| e.to_string())?;
    let animal = PointAnimal::new(heap.to_animal().points().clone()).map_err(|e| e.to_string())?;
    let triangular = animal.to_heap() == heap;
    let stats = valid.stats();
    let cross = path.height_stats().map_err(|e| e.to_string())?.cross;
    ensure(triangular && stats.area == 22, || {
        format!("area {} heap {heap}", stats.area)
    })?;
    ensure(stats.lw == cross as i64, || {
        format!("Lw {} vs cross {cross}", stats.lw)
    })?;
    let expected: BTreeSet<(u32, u32)> = LONG_ANIMAL.into_iter().collect();
    ensure(animal.points() == &expected, || {
        format!("animal {animal} differs from the reference")
    })?;
    Ok(format!(
        "both short pairs; long example area 22, Lw = Cross = {cross}, animal matches reference"
    ))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: Box<dyn Fn() -> Outcome>,
}

fn main() -> ExitCode {
    let t = Toolkit::default();
    let criteria = vec![
        Criterion {
            id: 1,
            title: "table1 reproduction",
            limit: Some(LIMIT_TABLE1),
            run: Box::new(table1),
        },
        Criterion {
            id: 2,
            title: "A005773 agreement",
            limit: Some(LIMIT_A005773),
            run: Box::new(a005773_agreement),
        },
        Criterion {
            id: 3,
            title: "classical counts",
            limit: None,
            run: Box::new(classical_counts),
        },
        Criterion {
            id: 4,
            title: "bijection suites",
            limit: Some(LIMIT_BIJECTIONS),
            run: Box::new(move || suite_outcome(&Suite::Bijections.run(&t, 10))),
        },
        Criterion {
            id: 5,
            title: "statistic correspondences",
            limit: None,
            run: Box::new(move || {
                let report = Suite::Statistics.run(&t, 8);
                let relations: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| c.name.ends_with("relation"))
                    .map(|c| c.detail.clone())
                    .collect();
                suite_outcome(&report).map(|s| format!("{s}; {}", relations.join("; ")))
            }),
        },
        Criterion {
            id: 6,
            title: "series identities",
            limit: Some(LIMIT_SERIES),
            run: Box::new(move || {
                let report = Suite::Series.run(&t, 30);
                suite_outcome(&report)?;
                // diag(f) = diag(h) = Q from independently built tables
                let q = ClosedForm::Q.expand(30);
                let f = Bivariate::F.table(30, 30).diagonal();
                let h = Bivariate::H.table(30, 30).diagonal();
                ensure(f == q && h == q, || "diagonals differ from Q".into())?;
                Ok(format!("{} checks OK to order 30", report.checks.len()))
            }),
        },
        Criterion {
            id: 7,
            title: "worked examples",
            limit: None,
            run: Box::new(worked_examples),
        },
        Criterion {
            id: 8,
            title: "symmetry distributions",
            limit: None,
            run: Box::new(move || suite_outcome(&Suite::Symmetry.run(&t, 7))),
        },
    ];

    let mut failures = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!(
                "took {:.2} s, limit {:.0} s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            )),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} criterion {} {} ({:.2} s): {detail}",
            c.id,
            c.title,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
