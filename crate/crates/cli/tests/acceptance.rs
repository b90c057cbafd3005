//! End-to-end acceptance checks, one line per criterion. Every comparison is
//! exact; any failure makes the process exit nonzero.

use std::panic;
use std::process::Command;

use frieze_core::annulus::{asymptotic_reduction, bump_realization, disc_to_annulus, outer_quiddity, realize};
use frieze_core::annulus::{DiscArc, PuncturedDisc};
use frieze_core::{
    bump, classify, count_by_recurrence, count_matchings, entry_continuant, entry_recurrence, fragment,
    minimal_inner_points, realize_strip, shortest_period, BaseKind, Outcome, QuiddityRow, StripError,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn frieze(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_frieze")).args(args).output().expect("binary runs")
}

fn random_row(rng: &mut StdRng, lo: u64, hi: u64, max_len: usize) -> Vec<u64> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn is_infinite(q: &[u64]) -> bool {
    matches!(classify(q).map(|c| c.outcome), Ok(Outcome::Infinite { .. }))
}

fn random_infinite(rng: &mut StdRng) -> Vec<u64> {
    loop {
        let q = random_row(rng, 1, 6, 8);
        if is_infinite(&q) {
            return q;
        }
    }
}

fn constant_rows() -> Check {
    let o = frieze(&["generate", "2", "--depth", "10"]);
    ensure(o.status.success(), || format!("exit status {:?}", o.status.code()))?;
    let text = String::from_utf8(o.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines().skip(1);
    let cols: Vec<i64> =
        lines.next().ok_or("no header")?.split('\t').skip(1).map(|c| c.parse().unwrap()).collect();
    let mut count = 0;
    for line in lines {
        let cells: Vec<&str> = line.split('\t').collect();
        let d: i64 = cells[0].parse().map_err(|_| format!("bad row {line:?}"))?;
        for (k, cell) in cells[1..].iter().enumerate() {
            let (i, j) = (cols[k], cols[k] + d);
            ensure(*cell == (j - i + 2).to_string(), || format!("m_{{{i},{j}}} = {cell}"))?;
            count += 1;
        }
    }
    ensure(count == 13 * cols.len(), || format!("{count} entries"))?;
    Ok(format!("{count} entries, depths -2..10"))
}

fn bumped_table() -> Check {
    let golden = include_str!("../../core/tests/golden/bumped_constant_two.tsv");
    let k = 0;
    let b = bump(&QuiddityRow::periodic(vec![2]).unwrap(), k, 1).map_err(|e| e.to_string())?;
    let mut n = 0;
    for line in golden.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<i64> = line.split('\t').map(|x| x.parse().unwrap()).collect();
        let (i, j, v) = (k + f[1], k + f[2], BigInt::from(f[3]));
        let got = entry_recurrence(&b.bumped, i, j).map_err(|e| e.to_string())?;
        ensure(got == v, || format!("({i},{j}): {got} vs {v}"))?;
        n += 1;
    }
    for i in -12..=12 {
        for j in i - 2..=i + 10 {
            if i <= k && k <= j {
                continue;
            }
            let got = entry_recurrence(&b.bumped, i, j).map_err(|e| e.to_string())?;
            ensure(got == BigInt::from(j - i + 2), || format!("outside the cone ({i},{j}) = {got}"))?;
        }
    }
    let corner = entry_recurrence(&b.bumped, k - 4, k + 1).unwrap();
    ensure(corner == BigInt::from(17), || format!("(k-4,k+1) = {corner}"))?;
    Ok(format!("{n} golden entries, cone complement unchanged"))
}

fn small_bases() -> Check {
    let finite = |q: &[u64], order: usize| match classify(q).map(|c| c.outcome) {
        Ok(Outcome::Finite { polygon_order, .. }) if polygon_order == order => Ok(()),
        other => Err(format!("{q:?}: {other:?}")),
    };
    let infinite = |q: &[u64], m: u64| match classify(q).map(|c| c.outcome) {
        Ok(Outcome::Infinite { minimal_inner_points }) if minimal_inner_points == m => Ok(()),
        other => Err(format!("{q:?}: {other:?}")),
    };
    finite(&[1], 3)?;
    finite(&[1, 2], 4)?;
    finite(&[1, 3], 6)?;
    infinite(&[1, 4], 0)?;
    for a in 5..=40 {
        infinite(&[1, a], a - 4)?;
    }
    Ok("(1) (1,2) (1,3) (1,4) and (1,a) for a = 5..40".into())
}

fn example_four_one_five_one() -> Check {
    let c = classify(&[4, 1, 5, 1]).map_err(|e| e.to_string())?;
    ensure(c.outcome == Outcome::Infinite { minimal_inner_points: 1 }, || format!("{:?}", c.outcome))?;
    let t = realize(&[4, 1, 5, 1]).map_err(|e| e.to_string())?;
    ensure((t.n, t.m) == (4, 1), || format!("A_{{{},{}}}", t.n, t.m))?;
    ensure(t.check().passed(), || t.check().to_string())?;
    let p = shortest_period(&[5, 1, 5, 1]);
    ensure(p == 2, || format!("shortest period {p}"))?;
    let t = realize(&[5, 1]).map_err(|e| e.to_string())?;
    ensure((t.n, t.m) == (2, 1), || format!("(5,1) lands in A_{{{},{}}}", t.n, t.m))?;
    ensure(outer_quiddity(&t).ok() == Some(vec![5, 1]), || "quiddity of (5,1)".into())?;
    Ok("A_{4,1}; period 2, A_{2,1}".into())
}

fn punctured_pentagon() -> Check {
    let d = PuncturedDisc::new(
        5,
        vec![
            DiscArc::Central { at: 1 },
            DiscArc::Peripheral { from: 1, span: 5 },
            DiscArc::Peripheral { from: 2, span: 2 },
            DiscArc::Peripheral { from: 2, span: 4 },
            DiscArc::Peripheral { from: 4, span: 2 },
        ],
    );
    let t = disc_to_annulus(&d).map_err(|e| e.to_string())?;
    let q = outer_quiddity(&t).map_err(|e| e.to_string())?;
    ensure(q == vec![6, 3, 1, 3, 1], || format!("{q:?}"))?;
    Ok("(6,3,1,3,1)".into())
}

fn continuant_equals_recurrence() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    let mut pairs = 0;
    for _ in 0..1000 {
        let q = QuiddityRow::periodic(random_row(&mut rng, 1, 6, 8)).unwrap();
        let n = q.entries().len() as i64;
        for i in 0..n {
            for j in i..=i + 12 {
                let (a, b) = (entry_continuant(&q, i, j), entry_recurrence(&q, i, j));
                ensure(a == b, || format!("{q:?} ({i},{j}): {a:?} vs {b:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("1000 rows, {pairs} entries"))
}

fn bump_closed_form() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut entries = 0;
    for _ in 0..200 {
        let row = random_row(&mut rng, 2, 6, 8);
        let len = row.len() as i64;
        let q = QuiddityRow::windowed(0, row).unwrap();
        let k = rng.gen_range(0..len);
        let b = rng.gen_range(1..=5);
        let bumped = bump(&q, k, b).map_err(|e| e.to_string())?;
        for i in k - 10..=k + 10 {
            for j in i..=i + 10 {
                let direct = entry_recurrence(&bumped.bumped, i, j).map_err(|e| e.to_string())?;
                let closed = bumped.closed_form_entry(i, j).map_err(|e| e.to_string())?;
                ensure(direct == closed, || format!("{q:?} k={k} b={b} ({i},{j}): {direct} vs {closed}"))?;
                entries += 1;
            }
        }
    }
    Ok(format!("200 bumps, {entries} entries"))
}

fn classifier_soundness() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let mut tally = [0usize; 3];
    for _ in 0..500 {
        let q = random_row(&mut rng, 1, 6, 8);
        let n = q.len() as i64;
        let row = QuiddityRow::periodic(q.clone()).unwrap();
        match classify(&q).map_err(|e| e.to_string())?.outcome {
            Outcome::Infinite { .. } => {
                tally[0] += 1;
                let f = fragment(&row, 0..=n - 1, 20);
                ensure(f.first_nonpositive().is_none(), || format!("{q:?} has a nonpositive entry"))?;
            }
            Outcome::NotAFrieze { .. } => {
                tally[1] += 1;
                let f = fragment(&row, 0..=n - 1, n + 2);
                ensure(f.first_nonpositive().is_some(), || format!("{q:?} positive to depth n+2"))?;
            }
            Outcome::Finite { polygon_order, .. } => {
                tally[2] += 1;
                let big = polygon_order as i64;
                let f = fragment(&row, 0..=n - 1, big - 2);
                let ones = f.row(big - 3).unwrap().iter().all(|v| *v == BigInt::from(1));
                let zeros = f.row(big - 2).unwrap().iter().all(|v| *v == BigInt::from(0));
                ensure(ones && zeros, || format!("{q:?}: rows {} and {} are not 1s and 0s", big - 3, big - 2))?;
            }
        }
    }
    Ok(format!("{} infinite, {} rejected, {} finite", tally[0], tally[1], tally[2]))
}

fn realization_roundtrip() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..200 {
        let q = random_infinite(&mut rng);
        let t = realize(&q).map_err(|e| format!("{q:?}: {e}"))?;
        let report = t.check();
        ensure(report.passed(), || format!("{q:?}: {report}"))?;
        ensure(outer_quiddity(&t).ok() == Some(q.clone()), || format!("{q:?}: quiddity differs"))?;
        let m = minimal_inner_points(&q).map_err(|e| e.to_string())?;
        ensure(t.m as u64 == m, || format!("{q:?}: {} inner points, minimum {m}", t.m))?;
        ensure(!t.has_inner_peripheral(), || format!("{q:?}: inner peripheral arc"))?;
    }
    Ok("200 sequences".into())
}

fn matching_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    let (mut accepted, mut pairs, mut recurrence) = (0, 0, 0);
    let mut tries = 0;
    while accepted < 100 {
        tries += 1;
        ensure(tries < 100_000, || "too few accepted windows".into())?;
        let q = QuiddityRow::windowed(0, random_row(&mut rng, 1, 5, 8)).unwrap();
        let t = match realize_strip(&q) {
            Ok(t) => t,
            Err(StripError::AdjacentOnes { .. } | StripError::ZeroEntry { .. }) => continue,
            Err(e) => return Err(format!("{q:?}: {e}")),
        };
        accepted += 1;
        let (lo, hi) = t.core;
        for i in lo..=hi {
            for j in i..=(i + 6).min(hi) {
                let entry = entry_recurrence(&q, i, j).map_err(|e| e.to_string())?;
                let counted = count_matchings(&t, i, j).map_err(|e| e.to_string())?;
                ensure(counted == entry, || format!("{q:?} ({i},{j}): {counted} matchings, entry {entry}"))?;
                pairs += 1;
                if !t.has_lower_peripheral() {
                    let r = count_by_recurrence(&t, i, j).map_err(|e| e.to_string())?;
                    ensure(r == entry, || format!("{q:?} ({i},{j}): recurrence {r}, entry {entry}"))?;
                    recurrence += 1;
                }
            }
        }
    }
    Ok(format!("100 windows of {tries}, {pairs} pairs, recurrence on {recurrence}"))
}

fn asymptotic_reduction_formula() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut all_two = 0;
    for _ in 0..100 {
        let q = random_infinite(&mut rng);
        let mut t = realize(&q).map_err(|e| e.to_string())?;
        for _ in 0..rng.gen_range(0..3) {
            let j = rng.gen_range(1..=t.n);
            t = bump_realization(&t, j).map_err(|e| e.to_string())?;
        }
        let a = t.outer_quiddity_unchecked();
        let r = t.bridging_degrees();
        let red = asymptotic_reduction(&t).map_err(|e| e.to_string())?;
        let report = red.check();
        ensure(report.passed(), || format!("{q:?}: {report}"))?;
        let b = red.outer_quiddity_unchecked();
        for i in 0..t.n {
            let want = a[i] - (r[i] as u64).saturating_sub(1);
            ensure(b[i] == want, || format!("{a:?}: b_{} = {} vs {want}", i + 1, b[i]))?;
        }
        let c = classify(&b).map_err(|e| e.to_string())?;
        let base_two = c.trace.base_kind == BaseKind::AllAtLeastTwo && c.trace.base.iter().all(|&x| x == 2);
        all_two += base_two as usize;
        ensure(matches!(c.outcome, Outcome::Infinite { .. }) || base_two, || format!("{b:?}: {:?}", c.outcome))?;
    }
    Ok(format!("100 triangulations, {all_two} reduce to the all-2 base"))
}

fn cli_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("frieze-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let json = dir.join("t.json");
    let svg = dir.join("t.svg");
    let strip = dir.join("s.json");
    let (json, svg, strip) = (json.to_str().unwrap(), svg.to_str().unwrap(), strip.to_str().unwrap());
    let runs: Vec<Vec<&str>> = vec![
        vec!["generate", "2", "5", "1", "4", "--depth", "12"],
        vec!["generate", "--window", "2,2,3,2,2", "--depth", "6"],
        vec!["classify", "4", "1", "5", "1"],
        vec!["classify", "2", "1", "1"],
        vec!["realize", "2", "5", "1", "4"],
        vec!["realize", "--window", "3,1,4,1,3", "--lo", "-2"],
        vec!["realize", "--polygon", "1", "3"],
    ];
    let mut compared = 0;
    for args in &runs {
        let (a, b) = (frieze(args), frieze(args));
        ensure(a.stdout == b.stdout && a.status == b.status, || format!("{args:?} differs"))?;
        compared += 1;
    }
    let mut files = Vec::new();
    for _ in 0..2 {
        frieze(&["realize", "4", "1", "5", "1", "-o", json, "--svg", svg]);
        frieze(&["realize", "--window", "3,1,4,1,3", "-o", strip]);
        let verify = frieze(&["verify", json, "--depth", "8", "--jobs", "3"]).stdout;
        let oracle = frieze(&["oracle", strip, "0", "4"]).stdout;
        let render = frieze(&["render", strip]).stdout;
        files.push((std::fs::read(json).unwrap(), std::fs::read(svg).unwrap(), verify, oracle, render));
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(files[0] == files[1], || "file outputs differ".into())?;
    Ok(format!("{} commands byte-identical", compared + 5))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("constant-2 frieze rows", constant_rows),
        ("bumped constant-2 table", bumped_table),
        ("small base classifications", small_bases),
        ("(4,1,5,1) and (5,1,5,1)", example_four_one_five_one),
        ("punctured pentagon quiddity", punctured_pentagon),
        ("continuant equals recurrence", continuant_equals_recurrence),
        ("bump closed form", bump_closed_form),
        ("classifier soundness", classifier_soundness),
        ("realization roundtrip", realization_roundtrip),
        ("matchings equal entries", matching_oracle),
        ("asymptotic reduction", asymptotic_reduction_formula),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
