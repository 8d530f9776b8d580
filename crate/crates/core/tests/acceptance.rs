//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use dihyper::formulas::{count_sequence, total_hyperarc_count};
use dihyper::harness::checks::{self, Status};
use dihyper::harness::{compare_family, lambda_verdict, marked_source_check, run_cli, Verdict};
use dihyper::oracle::fixtures::Fixture;
use dihyper::oracle::{census_with, hyperarc_universe, CensusOptions};
use dihyper::{BigInt, Family, Method, YPoly};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn cli(args: &[&str]) -> (u8, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dihyper").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn at_one(family: Family, method: Method, b: u32, order: usize) -> Vec<BigInt> {
    count_sequence::<BigInt>(family, method, b, order)
        .unwrap()
        .eval(&BigInt::from(1))
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn opts() -> CensusOptions {
    CensusOptions::default()
}

fn oracle_match(b: u32, n_max: usize, family: Family, method: Method) -> Outcome {
    let r = compare_family(b, n_max, family, method, &opts()).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Match, || {
        format!("{family} b={b}: {r}")
    })
}

fn b2_acyclic() -> Outcome {
    let got = at_one(Family::Acyclic, Method::Reciprocal, 2, 5);
    ensure(got == ints(&[1, 1, 3, 25, 543, 29281]), || {
        format!("a_n(1) = {got:?}")
    })?;
    let (code, text) = cli(&[
        "formula", "--family", "acyclic", "--b", "2", "--n", "5", "--eval", "1",
    ]);
    ensure(code == 0 && text.trim() == "1 1 3 25 543 29281", || {
        format!("cli printed {text:?}")
    })?;
    oracle_match(2, 4, Family::Acyclic, Method::Reciprocal)?;
    oracle_match(2, 5, Family::Acyclic, Method::Reciprocal)
}

fn b2_strong() -> Outcome {
    let got = at_one(Family::Strong, Method::Inversion, 2, 5);
    ensure(got == ints(&[0, 1, 1, 18, 1606, 565080]), || {
        format!("s_n(1) = {got:?}")
    })?;
    let s = count_sequence::<BigInt>(Family::Strong, Method::Inversion, 2, 2).unwrap();
    ensure(s.counts[2] == YPoly::monomial(BigInt::from(1), 2), || {
        format!("s_2 = {}", s.counts[2])
    })?;
    oracle_match(2, 4, Family::Strong, Method::Inversion)?;
    oracle_match(2, 5, Family::Strong, Method::Inversion)
}

fn identity_suite() -> Outcome {
    let outcomes = checks::identities(10, &opts()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| o.status != Status::Pass)
        .map(|o| o.to_string())
        .collect();
    ensure(failed.is_empty(), || failed.join("; "))
}

fn structural_lemmas() -> Outcome {
    for b in 2..=4u32 {
        for n in 0..=8usize {
            let len = hyperarc_universe(n, b).map_err(|e| e.to_string())?.len() as u64;
            let formula = ((1u64 << b) - 2) * num_binomial(n as u64, u64::from(b));
            ensure(len == formula, || {
                format!("universe (n={n}, b={b}) has {len}, expected {formula}")
            })?;
        }
    }
    let sweeps = (0..=4).map(|n| (n, 2)).chain((0..=3).map(|n| (n, 3)));
    for (n, b) in sweeps {
        let t = census_with(n, b, &opts()).map_err(|e| e.to_string())?;
        let m = total_hyperarc_count(n as u64, b).unwrap();
        ensure(
            t.family_poly::<BigInt>(Family::Total) == YPoly::one_plus_y_pow(m),
            || format!("census totals (n={n}, b={b}) differ from (1+y)^{m}"),
        )?;
        ensure(t.sourceless == 0, || {
            format!(
                "(n={n}, b={b}): {} graphs lack a source component",
                t.sourceless
            )
        })?;
    }
    Ok(())
}

fn num_binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn fixtures() -> Outcome {
    let fig1 = Fixture::builtin("fig1").unwrap().classify().unwrap();
    let witness = fig1.cycle_witness.clone().unwrap_or_default();
    ensure(
        !fig1.acyclic && !witness.is_empty() && witness.iter().all(|v| [2, 3, 4, 6].contains(v)),
        || format!("fig1 acyclic={} witness={witness:?}", fig1.acyclic),
    )?;
    let fig2 = Fixture::builtin("fig2").unwrap().classify().unwrap();
    ensure(
        fig2.strong_components == vec![vec![1], vec![2, 3, 4, 6], vec![5], vec![7]],
        || format!("fig2 components {:?}", fig2.strong_components),
    )?;
    ensure(fig2.source_components == 2 && fig2.sources == 2, || {
        format!(
            "fig2 source components {} / sources {}",
            fig2.source_components, fig2.sources
        )
    })?;
    let (code, text) = cli(&["fixtures", "--name", "fig1"]);
    ensure(
        code == 0 && text.contains("cycle witness through nodes 2,6,4,3"),
        || text,
    )
}

fn errata() -> Outcome {
    let (code, text) = cli(&[
        "compare", "--family", "acyclic", "--b", "3", "--n-max", "3", "--format", "json",
    ]);
    ensure(code == 0, || format!("non-strict compare exited {code}"))?;
    let report = dihyper::harness::CompareReport::from_json(&text).map_err(|e| e.to_string())?;
    let first = report
        .first_mismatch()
        .map(|(n, m)| (n, m.q, m.formula.clone(), m.reference.clone()));
    ensure(
        report.verdict == Verdict::Mismatch && first == Some((3, 1, "0".into(), "6".into())),
        || format!("first mismatch {first:?}"),
    )?;
    let (code, _) = cli(&[
        "compare", "--family", "acyclic", "--b", "3", "--n-max", "3", "--strict",
    ]);
    ensure(code == 1, || format!("--strict exited {code}"))?;

    let (_, text) = cli(&[
        "formula", "--family", "acyclic", "--b", "3", "--n", "4", "--eval", "1",
    ]);
    ensure(text.split_whitespace().last() == Some("-33"), || {
        format!("printed {text:?}")
    })?;

    for n in 0..=4 {
        for u0 in 0..=2 {
            let c = marked_source_check(2, n, u0, &opts()).map_err(|e| e.to_string())?;
            ensure(c.equal, || {
                format!("b=2 n={n} u0={u0}: residual {}", c.residual_poly())
            })?;
        }
    }
    let c = marked_source_check(3, 3, 1, &opts()).map_err(|e| e.to_string())?;
    ensure(!c.equal && !c.residual_poly().is_zero(), || {
        "b=3 n=3 residual vanished".into()
    })?;

    let start = Instant::now();
    let four = CensusOptions {
        jobs: Some(4),
        ..opts()
    };
    let report = compare_family(3, 4, Family::Strong, Method::Inversion, &four)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let n4 = &report.records[4];
    ensure(
        n4.status != Verdict::OracleUnavailable && n4.reference.is_some(),
        || format!("n=4 census did not feed the report: {:?}", n4.note),
    )?;
    ensure(elapsed.as_secs() < 600, || {
        format!("(n=4, b=3) census took {elapsed:?}")
    })
}

fn lambda() -> Outcome {
    let first = lambda_verdict(2, 5).map_err(|e| e.to_string())?;
    let again = lambda_verdict(2, 5).map_err(|e| e.to_string())?;
    for (r, s) in first.iter().zip(&again) {
        ensure(r.to_json().unwrap() == s.to_json().unwrap(), || {
            format!("{} report not reproducible", r.method)
        })?;
        ensure(r.records[2].status == Verdict::Mismatch, || {
            format!("{} agrees with inversion at n=2", r.method)
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 b=2 acyclic counts and oracle agreement", b2_acyclic),
        ("2 b=2 strong counts and oracle agreement", b2_strong),
        ("3 identity suite", identity_suite),
        ("4 structural lemmas", structural_lemmas),
        ("5 fixtures", fixtures),
        ("6 errata adjudication for b=3", errata),
        ("7 lambda-recurrence verdict", lambda),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {name} ({} ms)", start.elapsed().as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
