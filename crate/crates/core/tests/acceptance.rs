//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every comparison is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Output};

use bbs_crystal::bbs::{parse_state, BbsState};
use bbs_crystal::checks::{self, CheckConfig, Invariant};
use bbs_crystal::crystal::CrystalTensor;
use bbs_crystal::rmatrix::{apply_r, energy_h};
use bbs_crystal::soliton::{detect, predict_two_body, rtilde_yang_baxter_sides, run_experiment, Soliton};
use bbs_crystal::{Letter, Tableau};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t(s: &str, n: Letter) -> Tableau {
    Tableau::parse(s, n).unwrap()
}

fn state(n: Letter, k: usize, offset: i64, cols: &str) -> BbsState {
    parse_state(&format!("n={n} k={k} offset={offset}\n{cols}\n")).unwrap()
}

fn matrix_columns(rows: &[&str]) -> String {
    let parsed: Vec<Vec<&str>> = rows.iter().map(|r| r.split_whitespace().collect()).collect();
    (0..parsed[0].len())
        .map(|j| parsed.iter().map(|r| r[j]).collect::<Vec<_>>().join("/"))
        .collect::<Vec<_>>()
        .join(" ")
}

const EX_INITIAL: [&str; 3] = ["2 2 2 1 1 1 2 1 1 1 1 1", "3 3 3 2 2 2 3 2 2 2 2 3", "5 4 4 3 3 3 6 4 3 3 3 5"];

fn three_soliton_state() -> BbsState {
    state(6, 3, 0, &matrix_columns(&EX_INITIAL))
}

fn criterion_1() -> Check {
    let x = t("1 2 4 / 2 3 5 / 4 4 6", 6);
    let y = t("2/5", 6);
    let r = apply_r(&x, &y).map_err(|e| e.to_string())?;
    ensure(r.left_out == t("2/4", 6), || format!("left_out = {}", r.left_out))?;
    ensure(r.right_out == t("1 2 3 / 2 4 5 / 4 5 6", 6), || format!("right_out = {}", r.right_out))?;
    ensure(r.energy == -1, || format!("H = {}", r.energy))?;
    ensure(energy_h(&x, &y).unwrap() == -1, || "energy_h disagrees".into())
}

fn criterion_2() -> Check {
    let b = CrystalTensor::parse("1/2 * 2/3 * 4/6", 6).unwrap();
    let f = b.apply_f(2).map_err(|e| e.to_string())?.ok_or("f_2 undefined")?;
    ensure(f == CrystalTensor::parse("1/3 * 2/3 * 4/6", 6).unwrap(), || format!("f_2 gives {f}"))
}

fn criterion_3() -> Check {
    let p = state(3, 1, 0, "3 3 2");
    let (next, tr) = p.evolve(3).map_err(|e| e.to_string())?;
    let carriers: Vec<String> = tr.carriers.iter().map(|c| c.row_word().to_string().replace(' ', "")).collect();
    ensure(carriers == ["111", "113", "133", "233", "123", "112", "111"], || format!("k=1 carriers {carriers:?}"))?;
    let outs: Vec<String> = tr.outputs.iter().map(Tableau::to_string).collect();
    ensure(outs == ["1", "1", "1", "3", "3", "2"], || format!("k=1 outputs {outs:?}"))?;
    ensure(next == state(3, 1, 3, "3 3 2"), || format!("k=1 next {}", next.to_file_string()))?;

    let p = state(4, 2, 0, "2/4 2/4 1/3");
    let (next, tr) = p.evolve(3).map_err(|e| e.to_string())?;
    let carriers: Vec<String> = tr.carriers.iter().map(Tableau::to_string).collect();
    let want = [
        "1 1 1 / 2 2 2",
        "1 1 2 / 2 2 4",
        "1 2 2 / 2 4 4",
        "1 2 2 / 3 4 4",
        "1 1 2 / 2 3 4",
        "1 1 1 / 2 2 3",
        "1 1 1 / 2 2 2",
    ];
    ensure(carriers == want, || format!("k=2 carriers {carriers:?}"))?;
    let outs: Vec<String> = tr.outputs.iter().map(Tableau::to_string).collect();
    ensure(outs == ["1/2", "1/2", "1/2", "2/4", "2/4", "1/3"], || format!("k=2 outputs {outs:?}"))?;
    ensure(next == state(4, 2, 3, "2/4 2/4 1/3"), || format!("k=2 next {}", next.to_file_string()))
}

fn criterion_4() -> Check {
    let displayed: [(i64, [&str; 3]); 6] = [
        (3, ["2 2 2 1 1 2 1 1 1 1", "3 3 3 2 2 3 2 2 2 3", "5 4 4 3 3 6 4 3 3 5"]),
        (6, ["2 2 2 1 2 1 1 1", "3 3 3 2 3 2 2 3", "5 4 4 3 6 4 3 5"]),
        (9, ["2 2 1 2 2 1", "3 3 2 3 3 4", "5 4 3 6 4 5"]),
        (11, ["2 2 1 1 2 2 1", "3 3 2 2 4 3 3", "5 4 3 3 6 5 4"]),
        (13, ["2 2 1 1 1 2 2 1", "3 3 2 2 2 3 3 3", "5 4 3 4 3 6 5 4"]),
        (15, ["2 1 2 1 1 1 2 2 1", "3 2 3 2 2 2 3 3 3", "5 3 4 4 3 3 6 5 4"]),
    ];
    let mut p = three_soliton_state();
    for (step, (prefix, rows)) in displayed.iter().enumerate() {
        p = p.evolve(3).map_err(|e| e.to_string())?.0;
        // the displayed states list every site from the prefix on
        let want = state(6, 3, *prefix, &matrix_columns(rows));
        ensure(p == want, || format!("t={}: got\n{}", step + 1, p.to_file_string()))?;
        ensure(p.offset() == *prefix, || format!("t={}: prefix {}", step + 1, p.offset()))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let cfg = detect(&three_soliton_state()).map_err(|e| e.to_string())?;
    let exp = run_experiment(&cfg, 3, 50).map_err(|e| e.to_string())?;
    ensure(exp.matches(), || "observed asymptotics differ from the prediction".into())?;
    let (_, fin) = exp.settled.clone().ok_or("never settled")?;
    let want = vec![
        Soliton::new(9, t("2/3/5", 6), 3).unwrap(),
        Soliton::new(5, t("1 2 / 2 3 / 4 4", 6), 3).unwrap(),
        Soliton::new(3, t("1 2 2 / 3 3 3 / 4 5 6", 6), 3).unwrap(),
    ];
    ensure(fin.solitons == want, || format!("final {:?}", fin.solitons))?;
    let [s1, s2, s3] = [&cfg.solitons[0], &cfg.solitons[1], &cfg.solitons[2]];
    let (lhs, rhs) = rtilde_yang_baxter_sides(s1, s2, s3).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || "the two bracketings differ".into())?;
    ensure(vec![lhs.0, lhs.1, lhs.2] == want, || "bracketings disagree with the final configuration".into())?;
    let first = predict_two_body(s1, s2).map_err(|e| e.to_string())?;
    ensure(first.delta == 3, || format!("first delta {}", first.delta))
}

fn criterion_6() -> Check {
    let cases = [("2/4 1/6", 1, 2), ("2/4 3/5 2/5", 2, 2), ("2/4 1/3 2/4 3/5 2/5", 2, 3)];
    for (cols, d, count) in cases {
        let spectrum = state(6, 2, 0, cols).spectrum().map_err(|e| e.to_string())?;
        let got: Vec<(usize, u64)> = spectrum.into_iter().collect();
        ensure(got == vec![(d, count)], || format!("{cols}: {got:?}"))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let (u_low, v_low) = (t("1 1 1 1 2 / 2 2 3 3 3", 7), t("1 1 2 / 2 3 3", 7));
    let (u_high, v_high) = (t("4 4 4 5 5", 7), t("5 6 7", 7));
    let low = apply_r(&u_low, &v_low).map_err(|e| e.to_string())?;
    let high = apply_r(&u_high, &v_high).map_err(|e| e.to_string())?;
    ensure(low.left_out == t("1 1 2 / 2 3 3", 7) && low.right_out == t("1 1 1 1 2 / 2 2 3 3 3", 7), || "R x R low".into())?;
    ensure(high.left_out == t("4 5 5", 7) && high.right_out == t("4 4 5 6 7", 7), || "R x R high".into())?;
    let full = apply_r(&u_low.stack(&u_high).unwrap(), &v_low.stack(&v_high).unwrap()).map_err(|e| e.to_string())?;
    ensure(full.left_out == t("1 1 2 / 3 3 3 / 4 5 5", 7), || format!("full left {}", full.left_out))?;
    ensure(full.right_out == t("1 1 1 1 2 / 2 2 2 4 4 / 3 3 5 6 7", 7), || format!("full right {}", full.right_out))?;
    let split = low.left_out.stack(&high.left_out).unwrap();
    ensure(split != full.left_out, || "R x R coincides with R".into())
}

fn criterion_8() -> Check {
    let parts = [
        ("i", Invariant::Energy),
        ("ii", Invariant::Commute),
        ("iii", Invariant::ROracle),
        ("iv", Invariant::REquivariance),
        ("v", Invariant::YangBaxter),
        ("vi", Invariant::CrossStep),
        ("vii", Invariant::SpeedLaw),
        ("viii", Invariant::TwoSoliton),
        ("ix", Invariant::OperatorCommute),
        ("x", Invariant::CarrierRelations),
    ];
    let cfg = CheckConfig { trials: 200, seed: 42, inject: false };
    let mut bad = Vec::new();
    for (tag, inv) in parts {
        let r = checks::run(inv, &cfg).map_err(|e| e.to_string())?;
        let enough = inv.is_exhaustive() || r.instances >= 100;
        println!("    ({tag}) {inv}: {} instances, {} failures", r.instances, r.failures.len());
        if !r.passed() || !enough {
            bad.push(format!("({tag}) {inv}\n{r}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("\n"))
}

fn bbs(args: &[&str], stdin: Option<&str>) -> Output {
    use std::io::Write;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bbs"));
    cmd.args(args).stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped()).stderr(std::process::Stdio::piped());
    let mut child = cmd.spawn().expect("spawn bbs");
    {
        let mut sin = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            sin.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().expect("bbs output")
}

fn criterion_9() -> Check {
    let ex = format!("n=6 k=3 offset=0\n{}\n", matrix_columns(&EX_INITIAL));
    let code = |o: &Output| o.status.code().unwrap_or(-1);
    let text = |o: &Output| String::from_utf8_lossy(&o.stdout).into_owned();

    let a = bbs(&["evolve", "--l", "3", "--steps", "6"], Some(&ex));
    let b = bbs(&["evolve", "--l", "3", "--steps", "6"], Some(&ex));
    ensure(code(&a) == 0 && a.stdout == b.stdout, || "evolve not byte-stable".into())?;
    let lines: Vec<String> = text(&a).lines().skip(2).map(String::from).collect();
    let prefixes: Vec<usize> = lines.iter().map(|l| l.split(' ').take_while(|c| *c == ".").count()).collect();
    ensure(prefixes == [3, 6, 9, 11, 13, 15], || format!("evolve prefixes {prefixes:?}"))?;

    let k1 = bbs(&["evolve", "--l", "3", "--steps", "1"], Some("n=3 k=1 offset=0\n3 3 2\n"));
    ensure(text(&k1) == "n=3 k=1 offset=0\n3 3 2\n. . . 3 3 2\n", || format!("k=1 evolve: {}", text(&k1)))?;

    let sc = bbs(&["scatter", "--l", "3"], Some(&ex));
    let out = text(&sc);
    ensure(code(&sc) == 0 && out.matches("match=true").count() == 3, || format!("scatter:\n{out}"))?;
    for want in ["soliton 1: phase=9 d=1", "soliton 2: phase=5 d=2", "soliton 3: phase=3 d=3"] {
        ensure(out.contains(want), || format!("scatter lacks {want:?}"))?;
    }
    ensure(bbs(&["scatter", "--l", "3"], Some(&ex)).stdout == sc.stdout, || "scatter not byte-stable".into())?;

    for (cols, want) in [("2/4 1/6", "N_1=2\n"), ("2/4 3/5 2/5", "N_2=2\n"), ("2/4 1/3 2/4 3/5 2/5", "N_2=3\n")] {
        let o = bbs(&["spectrum"], Some(&format!("n=6 k=2 offset=0\n{cols}\n")));
        ensure(code(&o) == 0 && text(&o) == want, || format!("spectrum {cols}: {}", text(&o)))?;
    }

    let rm = bbs(&["rmatrix", "--left", "1 2 4 / 2 3 5 / 4 4 6", "--right", "2/5"], None);
    ensure(text(&rm) == "left_out=2/4\nright_out=1 2 3 / 2 4 5 / 4 5 6\nH=-1\n", || format!("rmatrix: {}", text(&rm)))?;

    let c1 = bbs(&["check", "--invariant", "energy", "--trials", "100", "--seed", "42"], None);
    let c2 = bbs(&["check", "--invariant", "energy", "--trials", "100", "--seed", "42"], None);
    ensure(code(&c1) == 0 && c1.stdout == c2.stdout, || "check not clean or not byte-stable".into())?;
    let bad = bbs(&["check", "--invariant", "energy", "--trials", "5", "--seed", "42", "--inject-fault"], None);
    ensure(code(&bad) == 1, || format!("injected fault exit status {}", code(&bad)))?;
    let usage = bbs(&["evolve", "--l", "0"], Some(&ex));
    ensure(code(&usage) == 2, || format!("usage error exit status {}", code(&usage)))?;
    let parse = bbs(&["spectrum"], Some("n=6 k=2 offset=0\n2/4 2/9\n"));
    ensure(code(&parse) == 2, || format!("parse error exit status {}", code(&parse)))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("combinatorial R and energy golden", criterion_1),
        ("crystal operator golden", criterion_2),
        ("single-step carrier diagrams", criterion_3),
        ("three-soliton trajectory", criterion_4),
        ("three-soliton scattering and both bracketings", criterion_5),
        ("spectra of composite states", criterion_6),
        ("R x R differs from R", criterion_7),
        ("property suites", criterion_8),
        ("command line", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(()) => println!("criterion {}: PASS {name}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
