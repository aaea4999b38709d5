//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use ringlab_core::classify::{classify, verdict_table, ClassifyOptions};
use ringlab_core::drnc::{
    drnc_from_regular_power, drnc_from_strong_pi_witness, drnc_path_regular_power, drnc_witness_brute,
    exchange_check, identity_xn_minus_x, ring_is_drnc, rnc_witness_brute, utumi_symmetry_verify, ExchangeCriterion,
    Side,
};
use ringlab_core::element::{nilpotency_index, power_orbit_len, strongly_pi_regular_witness};
use ringlab_core::endo::{cr_lift, drnc_from_lift, drnc_from_vs, is_prime, vs_idempotent, ModMatrix};
use ringlab_core::ring::ideal::{center, corner, ideal_generated, is_nil_ideal, jacobson_radical, quotient};
use ringlab_core::ring::realize_str;
use ringlab_core::{Element, Ring};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ring(spec: &str) -> Ring {
    realize_str(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Counts inputs in `0..count` for which `ok` is false, spread over all cores.
fn par_failures(count: u64, ok: impl Fn(u64) -> bool + Sync) -> u64 {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()) as u64;
    let chunk = count.div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let ok = &ok;
                s.spawn(move || (t * chunk..((t + 1) * chunk).min(count)).filter(|&i| !ok(i)).count() as u64)
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    })
}

fn matrix_from_code(n: usize, m: u64, mut code: u64) -> ModMatrix {
    let mut entries = vec![0; n * n];
    for slot in entries.iter_mut().rev() {
        *slot = code % m;
        code /= m;
    }
    ModMatrix::from_entries(n, m, &entries).unwrap()
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    let mut failures = 0;
    for (n, p) in [(1usize, 2u64), (2, 2), (3, 2), (4, 2), (2, 3)] {
        let count = p.pow((n * n) as u32);
        total += count;
        failures += par_failures(count, |code| {
            let a = matrix_from_code(n, p, code);
            let Ok(d) = vs_idempotent(&a, p) else { return false };
            let q = d.defect();
            d.e.mul(&d.e) == d.e && a.mul(&d.r).mul(&a) == d.e && q.mul(&q).is_zero()
        });
    }
    if failures == 0 {
        Ok(format!("{total} matrices, 0 failures"))
    } else {
        Err(format!("{failures} of {total} matrices failed"))
    }
}

fn criterion_2() -> Outcome {
    let mut detail = Vec::new();
    for spec in ["M(2,Z2)", "M(3,Z2)"] {
        let r = ring(spec);
        for a in r.elements() {
            let w = drnc_from_regular_power(&r, a, 2).map_err(|e| format!("{spec} {}: {e}", r.format(a)))?;
            if w.k > 2 || !w.verify(&r) {
                return Err(format!("{spec} {}: route index {}", r.format(a), w.k));
            }
        }
        let index = ring_is_drnc(&r).map_err(|e| e.to_string())?.max_index;
        if index != Some(2) {
            return Err(format!("{spec}: ring index {index:?}, expected 2"));
        }
        detail.push(format!("{spec} index 2"));
    }
    Ok(detail.join(", "))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for spec in ["Z4", "Z6", "prod(Z2,Z4)", "M(2,Z2)", "M(2,Z4)"] {
        let r = ring(spec);
        for a in r.elements() {
            let sp = strongly_pi_regular_witness(&r, a)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{spec} {}: no strong pi witness", r.format(a)))?;
            let w = drnc_from_strong_pi_witness(&r, &sp).map_err(|e| format!("{spec} {}: {e}", r.format(a)))?;
            let q = r.mul(a, r.sub(r.one(), w.e));
            if !w.verify(&r) || r.pow(q, sp.n) != r.zero() {
                return Err(format!("{spec} {}: witness does not re-verify", r.format(a)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} elements re-verified"))
}

fn criterion_4() -> Outcome {
    let one_minus = |e: &ModMatrix| ModMatrix::identity(e.dim(), e.modulus()).sub(e);
    let mut total = 0;
    let mut failures = 0;
    for n in [2usize, 3] {
        let count = 4u64.pow((n * n) as u32);
        total += count;
        failures += par_failures(count, |code| {
            let a = matrix_from_code(n, 4, code);
            let Ok(c) = cr_lift(&a, 2) else { return false };
            let e = &c.e_prime;
            let q = a.mul(&one_minus(e));
            let q2 = q.mul(&q);
            e.mul(e) == *e && a.mul(&c.w).mul(&a) == *e && q2.mul(&q2).is_zero()
        });
    }
    if failures == 0 {
        Ok(format!("{total} matrices over Z4 (all of M2 and M3), 0 failures"))
    } else {
        Err(format!("{failures} of {total} lifts failed"))
    }
}

/// Rings of at most 512 elements used by the agreement and exchange checks.
fn agreement_rings() -> Vec<Ring> {
    let mut out: Vec<Ring> = (2..=9).map(|m| ring(&format!("Z{m}"))).collect();
    for spec in ["M(2,Z2)", "prod(Z2,Z4)", "M(3,Z2)", "M(1,Z4)", "M(1,Z9)", "M(2,Z4)"] {
        out.push(ring(spec));
    }
    let bases: Vec<Ring> = out.clone();
    for base in &bases {
        if base.size() > 64 {
            continue;
        }
        // quotients by the principal ideals, corners by the nontrivial idempotents
        let mut seen = Vec::new();
        for g in base.elements().skip(1) {
            let ideal = ideal_generated(base, &[g]).unwrap();
            if ideal.len() == base.size() as usize || seen.contains(&ideal.len()) {
                continue;
            }
            seen.push(ideal.len());
            out.push(quotient(base, &ideal).unwrap());
        }
        for e in base.idempotents() {
            if e != base.zero() && e != base.one() {
                out.push(corner(base, e).unwrap());
            }
        }
    }
    let m3 = ring("M(3,Z2)");
    out.push(corner(&m3, m3.parse_element("[1,0,0;0,1,0;0,0,0]").unwrap()).unwrap());
    out.retain(|r| r.size() <= 512);
    out
}

fn regular_power_exists(r: &Ring, a: Element) -> bool {
    let limit = (2 * power_orbit_len(r, a)).max(2);
    (2..=limit).any(|n| {
        let an = r.pow(a, n);
        r.elements().any(|b| r.mul(r.mul(an, b), an) == an)
    })
}

fn criterion_5() -> Outcome {
    let rings = agreement_rings();
    let mut disagreements = Vec::new();
    let mut checks = 0u64;
    for r in &rings {
        let matrix = r.matrix_over_zm();
        let vs_applies = matrix.is_some_and(|(_, m)| is_prime(m));
        let lift_applies = matrix.is_some_and(|(_, m)| (2..m).any(|p| p * p == m && is_prime(p)));
        for a in r.elements() {
            let brute = drnc_witness_brute(r, a, true).unwrap();
            let exists = brute.is_some();
            let min_k = brute.map(|w| w.k);
            let mut record = |path: &str, ok: bool| {
                checks += 1;
                if !ok {
                    disagreements.push(format!("{} {} via {path}", r.spec(), r.format(a)));
                }
            };
            // route A whenever some power a^n (n >= 2) is regular
            let pre = regular_power_exists(r, a);
            match drnc_path_regular_power(r, a) {
                Ok(Some((n, w))) => record("regular_power", pre && exists && w.k <= n && Some(w.k) >= min_k),
                Ok(None) => record("regular_power", !pre),
                Err(_) => record("regular_power", false),
            }
            // route B whenever a commuting strong pi witness exists
            if let Some(sp) = strongly_pi_regular_witness(r, a).unwrap().filter(|w| w.commuting) {
                let ok = drnc_from_strong_pi_witness(r, &sp)
                    .is_ok_and(|w| exists && w.k <= sp.n && Some(w.k) >= min_k);
                record("strong_pi", ok);
            }
            if vs_applies {
                record("endo_vs", drnc_from_vs(r, a).is_ok_and(|w| exists && w.k <= 2 && Some(w.k) >= min_k));
            }
            if lift_applies {
                record("endo_lift", drnc_from_lift(r, a).is_ok_and(|w| exists && w.k <= 4 && Some(w.k) >= min_k));
            }
        }
    }
    if disagreements.is_empty() {
        Ok(format!("{} rings, {checks} path checks, 0 disagreements", rings.len()))
    } else {
        Err(format!("{} disagreements, first: {}", disagreements.len(), disagreements[0]))
    }
}

fn criterion_6() -> Outcome {
    let mut chains = 0;
    for spec in ["Z4", "Z6", "Z8", "M(2,Z2)"] {
        let r = ring(spec);
        for x in r.elements() {
            for y in r.elements() {
                let d = r.sub(x, r.mul(r.mul(x, x), y));
                let Some(n) = nilpotency_index(&r, d) else { continue };
                let chain = utumi_symmetry_verify(&r, x, y, n);
                if !(chain.premise && chain.middle && chain.symmetric) {
                    return Err(format!("{spec}: chain fails at x = {}, y = {}", r.format(x), r.format(y)));
                }
                chains += 1;
            }
        }
    }
    Ok(format!("{chains} chains verified"))
}

fn criterion_7() -> Outcome {
    let specs = [
        "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z12", "Z16", "Z30", "Z64", "M(2,Z2)",
        "prod(Z2,Z4)", "prod(Z2,Z2,Z2)", "prod(Z4,Z4)", "prod(Z8,Z8)", "prod(Z2,M(2,Z2))", "prod(Z4,M(2,Z2))",
        "quot(Z12,4)", "corner(M(3,Z2),[1,0,0;0,1,0;0,0,0])",
    ];
    let mut pairs = 0;
    for spec in specs {
        let r = ring(spec);
        assert!(r.size() <= 64, "{spec}");
        for a in r.elements() {
            for b in r.elements() {
                if r.mul(r.mul(a, b), a) != a {
                    continue;
                }
                let b2 = r.mul(r.mul(b, a), b);
                if r.mul(r.mul(a, b2), a) != a || r.mul(r.mul(b2, a), b2) != b2 {
                    return Err(format!("{spec}: a = {}, b = {}", r.format(a), r.format(b)));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} regular pairs in {} rings", specs.len()))
}

fn criterion_8() -> Outcome {
    let r = ring("M(2,Z4)");
    if !ring_is_drnc(&r).map_err(|e| e.to_string())?.holds() {
        return Err("M(2,Z4) is not D-RNC".into());
    }
    let idempotents: Vec<Element> = r.idempotents().into_iter().filter(|&e| e != r.zero()).collect();
    if idempotents.len() < 8 {
        return Err(format!("only {} nonzero idempotents", idempotents.len()));
    }
    for &e in &idempotents {
        let c = corner(&r, e).map_err(|e| e.to_string())?;
        if !ring_is_drnc(&c).map_err(|e| e.to_string())?.holds() {
            return Err(format!("corner at {} fails", r.format(e)));
        }
    }
    let z = center(&r).map_err(|e| e.to_string())?;
    if !ring_is_drnc(&z).map_err(|e| e.to_string())?.holds() {
        return Err("center fails".into());
    }
    let j = jacobson_radical(&r).map_err(|e| e.to_string())?;
    if !is_nil_ideal(&j).nil {
        return Err("J(R) is not nil".into());
    }
    let q = quotient(&r, &j).map_err(|e| e.to_string())?;
    if !ring_is_drnc(&q).map_err(|e| e.to_string())?.holds() {
        return Err("R/J fails".into());
    }
    let options = ClassifyOptions {
        elide_witnesses: true,
        ..ClassifyOptions::default()
    };
    let rq = classify(&q, options).map_err(|e| e.to_string())?;
    let rm = classify(&ring("M(2,Z2)"), options).map_err(|e| e.to_string())?;
    if verdict_table(&rq) != verdict_table(&rm) {
        return Err("R/J and M(2,Z2) reports differ".into());
    }
    Ok(format!(
        "{} nonzero idempotent corners, center, R/J (|J| = {}) all D-RNC; R/J report matches M(2,Z2)",
        idempotents.len(),
        j.len()
    ))
}

fn criterion_9() -> Outcome {
    let rings = agreement_rings();
    for r in &rings {
        let gn = exchange_check(r, ExchangeCriterion::Gn).map_err(|e| e.to_string())?.holds();
        let kln = exchange_check(r, ExchangeCriterion::Kln).map_err(|e| e.to_string())?.holds();
        if gn != kln {
            return Err(format!("{}: gn {gn}, kln {kln}", r.spec()));
        }
        let all_rnc = r
            .elements()
            .all(|a| rnc_witness_brute(r, a, Side::Left, false).unwrap().is_some());
        if all_rnc && !gn {
            return Err(format!("{}: regularly nil clean but not exchange", r.spec()));
        }
    }
    Ok(format!("{} rings, gn and kln agree", rings.len()))
}

fn criterion_10() -> Outcome {
    let mut detail = Vec::new();
    for (spec, n) in [("Z2", 2), ("Z4", 2), ("Z6", 3)] {
        let v = identity_xn_minus_x(&ring(spec), n).map_err(|e| e.to_string())?;
        if !v.holds || v.drnc_index.is_none() {
            return Err(format!("{spec}, n = {n}"));
        }
        detail.push(format!("{spec} (n={n}) index {}", v.drnc_index.unwrap()));
    }
    Ok(detail.join(", "))
}

fn criterion_11() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ringlab"))
            .args(["classify", "M(2,Z4)", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit status {:?} / {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".into());
    }
    Ok(format!("{} bytes, identical", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("vs exactness over F_p", criterion_1),
        ("regular power bound and ring index 2", criterion_2),
        ("strongly pi-regular route", criterion_3),
        ("lift bound over Z4", criterion_4),
        ("oracle agreement", criterion_5),
        ("Utumi symmetry", criterion_6),
        ("reflexive inverse", criterion_7),
        ("closure suite on M(2,Z4)", criterion_8),
        ("exchange equivalence", criterion_9),
        ("x^n - x identity", criterion_10),
        ("determinism of JSON reports", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
