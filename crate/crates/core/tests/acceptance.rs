//! Acceptance run: one line per criterion, exit status 1 on any unexpected
//! outcome. Runs with `harness = false` so the report is always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dyck_tilings::algebra::{qint, MultiPoly, RationalFn};
use dyck_tilings::hermite::{
    enumerate_hermite, enumerate_matchings, hermite_to_matching, hermite_to_tiling, matching_to_hermite,
    tiling_to_hermite,
};
use dyck_tilings::identities::{lookup, run, Grid};
use dyck_tilings::orders::{all_permutations, alpha, alpha_inv, avoids};
use dyck_tilings::paths::{enumerate_k_dyck, forest_to_path, path_to_forest, LatticePath};
use dyck_tilings::stirling::*;
use dyck_tilings::symmetric::*;
use dyck_tilings::tilings::{enumerate_fixed_lower, enumerate_fixed_upper, stats, Tiling};

/// Every identity is compared coefficient by coefficient; no case may differ.
const MAX_MISMATCHED_CASES: usize = 0;

const BUDGET_HOOK: Duration = Duration::from_secs(30);
const BUDGET_INTERVALS: Duration = Duration::from_secs(10);
const BUDGET_EXPLICIT_COUNTS: Duration = Duration::from_secs(120);

/// Criteria whose statement is false as written, with the checks that are
/// expected to fail. Anything else failing, or these passing, is an error.
const UNATTAINABLE: &[(u32, &[&str])] = &[(10, &["sym-phi", "sym-center-free"])];

type Criterion = fn() -> Vec<Check>;

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), pass, detail: detail.into() }
}

fn identity(id: &str, grid: Grid) -> Check {
    let cases = match run(lookup(id).expect("registered"), &grid) {
        Ok(c) => c,
        Err(e) => return check(id, false, format!("error: {e}")),
    };
    let bad: Vec<_> = cases.iter().filter(|c| !c.pass).collect();
    #[allow(clippy::absurd_extreme_comparisons)]
    let pass = !cases.is_empty() && bad.len() <= MAX_MISMATCHED_CASES;
    let detail = match bad.first() {
        None => format!("{} cases", cases.len()),
        Some(c) => format!("{} of {} cases differ, first {}: {} vs {}", bad.len(), cases.len(), c.params, c.lhs, c.rhs),
    };
    check(id, pass, detail)
}

fn up_to(max_n: usize) -> Grid {
    Grid { max_n: Some(max_n), ..Grid::default() }
}

fn with_k(max_n: usize, k: usize) -> Grid {
    Grid { max_n: Some(max_n), k: Some(k), ..Grid::default() }
}

fn timed(name: &str, budget: Duration, f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.push(check(name, elapsed <= budget, format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs())));
    out
}

fn criterion_1() -> Vec<Check> {
    timed("runtime", BUDGET_HOOK, || vec![identity("kw-lambda", up_to(5))])
}

fn criterion_2() -> Vec<Check> {
    vec![identity("kw-mu", up_to(5))]
}

fn criterion_3() -> Vec<Check> {
    timed("runtime", BUDGET_INTERVALS, || vec![identity("bruhat", up_to(5)), identity("weak", up_to(5))])
}

fn criterion_4() -> Vec<Check> {
    vec![identity("k-hermite", with_k(4, 2)), identity("k-hermite", with_k(4, 3))]
}

fn criterion_5() -> Vec<Check> {
    timed("runtime", BUDGET_EXPLICIT_COUNTS, || {
        let count = |s: &str| enumerate_fixed_lower(&LatticePath::parse(s, 2).unwrap()).map(|v| v.len());
        let six = count("UDDUUDDUUDDDDUDDDD");
        let five = count("UDDUUDDUUDDDDDD");
        vec![
            check("n=6", matches!(six, Ok(607)), format!("{six:?}")),
            check("n=5", matches!(five, Ok(71)), format!("{five:?}")),
        ]
    })
}

fn criterion_6() -> Vec<Check> {
    vec![identity("zigzag", up_to(5))]
}

fn criterion_7() -> Vec<Check> {
    let gf = inv_gf(3, 2);
    let coeffs: Vec<String> = gf.q_coefficients().unwrap().iter().map(ToString::to_string).collect();
    let poset = StirlingPoset::get(3, 2);
    let graded = poset.hasse_edges().iter().all(|(a, b)| b.inv_k() == a.inv_k() + 1);
    let mut edges: Vec<String> = poset.hasse_edges().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    edges.sort();
    #[rustfmt::skip]
    let mut expected: Vec<String> = [
        "112233<113223", "112233<211233",
        "113223<113322", "113223<311223", "211233<311223", "211233<221133",
        "113322<311322", "311223<311322", "311223<321123", "221133<321123", "221133<223113",
        "311322<331122", "321123<331122", "321123<322113", "223113<322113", "223113<223311",
        "331122<332112", "322113<332112", "322113<322311", "223311<322311",
        "332112<332211", "322311<332211",
    ]
    .iter()
    .map(ToString::to_string)
    .collect();
    expected.sort();
    vec![
        check("product", gf == qint(3) * qint(5), gf.to_string()),
        check("coefficients", coeffs.join(",") == "1,2,3,3,3,2,1", coeffs.join(",")),
        check("size", poset.elements().len() == 15, poset.elements().len().to_string()),
        check("graded", graded, ""),
        check("hasse", edges == expected, format!("{} edges", edges.len())),
    ]
}

fn criterion_8() -> Vec<Check> {
    let grid = |k| Grid { n: Some(3), k: Some(k), ..Grid::default() };
    vec![identity("stirling-interval", grid(2)), identity("stirling-interval", grid(3))]
}

fn criterion_9() -> Vec<Check> {
    let mut out: Vec<Check> = [(3, 2), (4, 2), (3, 3)]
        .into_iter()
        .map(|(n, k)| identity("hook-multifactorial", Grid { n: Some(n), k: Some(k), ..Grid::default() }))
        .collect();
    out.push(identity("hook-qdouble", up_to(5)));
    out
}

fn phi_bijectivity(max_n: usize) -> Check {
    for n in 1..=max_n {
        for f in enumerate_symmetric_forests(n) {
            let targets: BTreeSet<Tiling> = match enumerate_symmetric_fixed_lower(&f.path()) {
                Ok(v) => v.into_iter().map(|t| t.tiling().clone()).collect(),
                Err(e) => return check("phi-bijective", false, format!("{f}: {e}")),
            };
            let mut images = BTreeSet::new();
            for l in enumerate_marked_labelings(&f) {
                let Ok(t) = phi(&l) else { return check("phi-bijective", false, format!("phi fails on {l}")) };
                if t.stats().tiles_zero != l.mark_set().len() || !images.insert(t.tiling().clone()) {
                    return check("phi-bijective", false, format!("{l}"));
                }
            }
            if images != targets {
                return check("phi-bijective", false, format!("{f}: image is not onto"));
            }
        }
    }
    check("phi-bijective", true, format!("sizes <= {max_n}"))
}

fn criterion_10() -> Vec<Check> {
    vec![
        phi_bijectivity(5),
        identity("sym-marks", up_to(5)),
        identity("sym-phi", up_to(5)),
        identity("sym-count", up_to(5)),
        identity("sym-center-free", up_to(4)),
    ]
}

fn criterion_11() -> Vec<Check> {
    let counts: Vec<usize> = (0..=6).map(|k| enumerate_involutive(k).len()).collect();
    // The closed form and the t = s = 0 specialization are both reported.
    let mut zero_specialization = true;
    for n in 1..=4 {
        let Ok(g) = grand_gf(n) else {
            zero_specialization = false;
            continue;
        };
        let mut direct = MultiPoly::zero();
        if n % 2 == 0 {
            for mu in enumerate_k_dyck(n / 2, 1) {
                for t in enumerate_fixed_upper(&mu).unwrap() {
                    direct = direct + MultiPoly::q_pow(t.tiles().len() as u64);
                }
            }
        }
        zero_specialization &= g.specialize_ts(0, 0) == direct;
    }
    let grand = (1..=4)
        .all(|n| matches!((grand_gf(n), grand_gf_closed(n)), (Ok(l), Ok(r)) if RationalFn::from_poly(l.clone()) == r));
    vec![
        check("involutive-counts", counts == [1, 1, 2, 4, 10, 26, 76], format!("{counts:?}")),
        identity("involutive", up_to(6)),
        identity("sym-cor", up_to(5)),
        identity("sym-matching", up_to(5)),
        check("sym-grand", grand, "n <= 4"),
        check("sym-grand t=s=0", zero_specialization, "n <= 4"),
    ]
}

// Exhaustive round trips and integrality over desk-scale domains.
fn criterion_12() -> Vec<Check> {
    let mut out = Vec::new();

    let mut ok = true;
    for n in 0..=6 {
        for pi in all_permutations(n) {
            if avoids(&pi, 132).unwrap() {
                ok &= alpha_inv(&alpha(&pi).unwrap()).as_ref() == Ok(&pi);
            }
        }
        for p in enumerate_k_dyck(n, 1) {
            ok &= alpha(&alpha_inv(&p).unwrap()).as_ref() == Ok(&p);
            ok &= forest_to_path(&path_to_forest(&p)) == p;
        }
    }
    out.push(check("alpha, forests", ok, "n <= 6"));

    let mut ok = true;
    for k in 1..=3 {
        for n in 0..=4 {
            for p in enumerate_k_dyck(n, k) {
                let s = alpha_k_inv(&p).unwrap();
                ok &= alpha_k(&s).as_ref() == Ok(&p);
            }
            for s in enumerate_stirling(n, k) {
                let (ncp, labels) = stirling_to_ncp(&s);
                ok &= ncp_to_stirling(&ncp, &labels).as_ref() == Ok(&s);
            }
        }
    }
    out.push(check("alpha_k, ncp", ok, "k <= 3, n <= 4"));

    let (mut ok, mut seen) = (true, 0usize);
    for (k, max_n) in [(1, 5), (2, 4), (3, 3)] {
        for n in 0..=max_n {
            for mu in enumerate_k_dyck(n, k) {
                let histories = enumerate_hermite(&mu).unwrap();
                ok &= histories.len() == enumerate_fixed_upper(&mu).unwrap().len();
                for h in histories {
                    let t = hermite_to_tiling(&h);
                    ok &= tiling_to_hermite(&t) == h && t.tiles().len() == h.weight();
                    ok &= Tiling::from_json(&t.to_json()).as_ref() == Ok(&t);
                    seen += 1;
                }
                if k == 1 {
                    let matchings = enumerate_matchings(&mu).unwrap();
                    ok &= matchings.len() == enumerate_hermite(&mu).unwrap().len();
                    for m in matchings {
                        let h = matching_to_hermite(&m).unwrap();
                        ok &= hermite_to_matching(&h).as_ref() == Ok(&m) && h.weight() == m.crossings();
                    }
                }
            }
        }
    }
    out.push(check("hermite, matchings, json", ok, format!("{seen} histories")));

    let (mut ok, mut seen) = (true, 0usize);
    for n in 1..=5 {
        for mu in symmetric_paths(n) {
            for h in enumerate_symmetric_hermite(&mu).unwrap() {
                let t = psi(&h).unwrap();
                ok &= psi_inverse(&t).as_ref() == Ok(&h);
                seen += 1;
            }
        }
    }
    out.push(check("psi", ok, format!("{seen} histories")));

    let (mut ok, mut seen) = (true, 0usize);
    for (k, max_n) in [(1, 5), (2, 4), (3, 3)] {
        for n in 0..=max_n {
            for lower in enumerate_k_dyck(n, k) {
                for t in enumerate_fixed_lower(&lower).unwrap() {
                    ok &= match stats(&t) {
                        Ok(s) => (k * s.area + s.tiles) % (k + 1) == 0,
                        Err(_) => false,
                    };
                    seen += 1;
                }
            }
        }
    }
    out.push(check("art integrality", ok, format!("{seen} tilings")));
    out
}

fn main() -> ExitCode {
    let criteria: [(u32, Criterion); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (id, f) in criteria {
        let checks = f();
        let pass = checks.iter().all(|c| c.pass);
        let failing: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let documented = UNATTAINABLE.iter().find(|(n, _)| *n == id).map(|(_, names)| *names);
        let parts: Vec<String> = checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}{}",
                    c.name,
                    if c.pass { "ok" } else { "FAIL" },
                    if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) }
                )
            })
            .collect();
        let note = match documented {
            Some(_) if !pass => " [documented as unattainable]",
            _ => "",
        };
        println!("criterion {id}: {}{note}: {}", if pass { "PASS" } else { "FAIL" }, parts.join("; "));
        let expected_failures = documented.unwrap_or(&[]);
        if failing != expected_failures {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: every criterion matches its recorded outcome");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
