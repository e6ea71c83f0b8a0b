//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use twophoton::boson::{verify_eigen, verify_rep, EigenChecks};
use twophoton::lie_bialgebra::{
    basis_change, h6_delta_table, h6_r, h6_to_schrodinger_map, schouten, schrodinger_delta_table, schrodinger_r,
    verify_against_quantum, verify_delta_table, LieAlgebraSpec,
};
use twophoton::nc_hopf::{h6_twophoton, schrodinger11, transport_structure, verify_hopf, verify_rmatrix, verify_spec_equality};
use twophoton::report::VerificationReport;
use twophoton::scalar::{frac, int};
use twophoton::schrodinger::{
    casimir, symmetry_check, symmetry_outcome, verify_realization, verify_solutions, RealizationParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn passes(report: &VerificationReport, what: &str) -> Result<(), String> {
    match report.failures().next() {
        None => Ok(()),
        Some(e) => Err(format!("{what}: {} failed with residual {}", e.name, e.residual)),
    }
}

fn count(report: &VerificationReport, prefix: &str) -> usize {
    report.entries().iter().filter(|e| e.name.contains(prefix)).count()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn hopf_suite() -> Outcome {
    let mut k3 = Duration::ZERO;
    for k in 0..=3 {
        let start = Instant::now();
        let spec = h6_twophoton(k).map_err(|e| e.to_string())?;
        let r = verify_hopf(&spec).map_err(|e| e.to_string())?;
        if k == 3 {
            k3 = start.elapsed();
        }
        passes(&r, &format!("k={k}"))?;
        ensure(count(&r, "/coassociativity/") == 6, "coassociativity entries")?;
        ensure(count(&r, "/counit-") == 12, "counit entries")?;
        ensure(count(&r, "/antipode-") == 12, "antipode entries")?;
        ensure(count(&r, "/homomorphism/") == 15, "homomorphism entries")?;
    }
    ensure(k3 < Duration::from_secs(60), format!("k=3 took {k3:?}"))?;
    Ok(format!("45 identities at each k=0..3, k=3 in {:.2}s", k3.as_secs_f64()))
}

fn rmatrix_suite() -> Outcome {
    for k in 0..=3 {
        for spec in [h6_twophoton(k), schrodinger11(k)] {
            let spec = spec.map_err(|e| e.to_string())?;
            let r = verify_rmatrix(&spec).map_err(|e| e.to_string())?;
            passes(&r, &format!("{} k={k}", spec.name()))?;
            ensure(count(&r, "/qybe") == 1, "qybe entry")?;
            ensure(count(&r, "/intertwining/") == 6, "intertwining entries")?;
        }
    }
    Ok("QYBE and 6 intertwiners for both algebras at k=0..3".into())
}

fn bialgebra_layer() -> Outcome {
    let h6 = LieAlgebraSpec::h6();
    let sch = LieAlgebraSpec::schrodinger();
    ensure(schouten(&h6, &h6_r(&h6)).is_zero(), "[[r,r]] ≠ 0 for zN∧B+")?;
    ensure(schouten(&sch, &schrodinger_r(&sch)).is_zero(), "[[r,r]] ≠ 0 for 2zH∧D + zH∧M")?;
    let r = verify_delta_table(&h6, &h6_r(&h6), &h6_delta_table(&h6)).map_err(|e| e.to_string())?;
    passes(&r, "h6 δ table")?;
    let r = verify_delta_table(&sch, &schrodinger_r(&sch), &schrodinger_delta_table(&sch)).map_err(|e| e.to_string())?;
    passes(&r, "Schrödinger δ table")?;
    for k in 1..=3 {
        let q = h6_twophoton(k).map_err(|e| e.to_string())?;
        passes(&verify_against_quantum(&h6, &h6_r(&h6), &q).map_err(|e| e.to_string())?, "h6 Δ − σΔ")?;
        let q = schrodinger11(k).map_err(|e| e.to_string())?;
        passes(&verify_against_quantum(&sch, &schrodinger_r(&sch), &q).map_err(|e| e.to_string())?, "sch Δ − σΔ")?;
    }
    Ok("CYBE, both δ tables, first order of Δ − σΔ at k=1..3".into())
}

fn transport() -> Outcome {
    let h6 = LieAlgebraSpec::h6();
    let mapped = basis_change(&h6, "schrodinger", &["H", "D", "M", "P", "K", "C"], &h6_to_schrodinger_map())
        .map_err(|e| e.to_string())?;
    ensure(mapped == LieAlgebraSpec::schrodinger(), "classical table differs after the basis change")?;
    for k in 0..=3 {
        let t = transport_structure(&h6_twophoton(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = verify_spec_equality(&t, &schrodinger11(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        passes(&r, &format!("k={k}"))?;
    }
    Ok("classical table and Hopf tables at k=0..3".into())
}

fn representation() -> Outcome {
    for k in 0..=4 {
        let r = verify_rep(k).map_err(|e| e.to_string())?;
        passes(&r, &format!("k={k}"))?;
        ensure(count(&r, "boson/relation/") == 15, "relation entries")?;
        ensure(count(&r, "classical-limit/") == 6, "classical-limit entries")?;
        ensure(k == 0 || count(&r, "first-order-table/") == 6, "first-order entries")?;
    }
    Ok("15 relations, classical limit and first-order table at k=0..4".into())
}

fn eigenstates() -> Outcome {
    let r = verify_eigen(&EigenChecks::default()).map_err(|e| e.to_string())?;
    passes(&r, "eigen")?;
    ensure(count(&r, "number-operator") == 4, "number-operator entries")?;
    ensure(count(&r, "b-minus-recurrence") == 1, "recurrence entry")?;
    ensure(count(&r, "first-order-series") == 1, "series entry")?;
    Ok("number operator, B- recurrence, degree-30 first-order series".into())
}

fn discrete_equation() -> Outcome {
    let mut runs = 0;
    for z in [frac(1, 10), frac(1, 4)] {
        for m in [1, 2] {
            for a in [frac(-1, 2), int(0)] {
                let p = RealizationParams::deformed(z.clone(), int(m), a.clone());
                let r = verify_realization(&p).map_err(|e| e.to_string())?;
                ensure(r.len() == 15, "15 brackets")?;
                passes(&r, &format!("z={z} m={m} a={a}"))?;
                let d = symmetry_outcome("D", &p).map_err(|e| e.to_string())?;
                let e = casimir(&p).map_err(|e| e.to_string())?;
                ensure(d.commutator == e.scale(&int(2)), "[E,D] ≠ 2E")?;
                for g in ["K", "H", "P", "M"] {
                    ensure(symmetry_outcome(g, &p).map_err(|e| e.to_string())?.commutator.is_zero(), format!("[E,{g}] ≠ 0"))?;
                }
                let c = symmetry_check("C", &p).map_err(|e| e.to_string())?;
                if a == frac(-1, 2) {
                    ensure(c.passed, format!("C at a=-1/2: {}", c.residual))?;
                } else {
                    let out = symmetry_outcome("C", &p).map_err(|e| e.to_string())?;
                    ensure(!c.passed && !out.remainder.is_zero(), "C at a=0 should leave a remainder")?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} parameter points, negative control at a=0 fails as required"))
}

fn solutions() -> Outcome {
    let kappas = [int(1), frac(-1, 2), frac(2, 3)];
    for z in [frac(1, 10), frac(1, 4)] {
        for m in [1, 2] {
            let p = RealizationParams::deformed(z.clone(), int(m), frac(-1, 2));
            let r = verify_solutions(&p, 5, &kappas).map_err(|e| e.to_string())?;
            passes(&r, &format!("z={z} m={m}"))?;
            ensure(count(&r, "solution/heat-polynomial") >= 5, "heat polynomials")?;
            ensure(count(&r, "solution/exponential") == 3, "exponential solutions")?;
            ensure(count(&r, "recheck/") == 6 * 9, "six images per solution")?;
        }
    }
    for m in [1, 2] {
        let p = RealizationParams::classical(int(m), frac(-1, 2));
        passes(&verify_solutions(&p, 5, &kappas).map_err(|e| e.to_string())?, "classical")?;
    }
    Ok("6 heat polynomials, 3 exponentials, all images re-certified; classical analogues".into())
}

fn run_cli(out: &std::path::Path, timings: bool) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twophoton"));
    cmd.args(["verify", "--order", "3", "--out"]).arg(out);
    if !timings {
        cmd.arg("--no-timings");
    }
    let status = cmd.output().map_err(|e| e.to_string())?.status;
    ensure(status.code() == Some(0), format!("exit status {status}"))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = run_cli(&dir.path().join("a.json"), false)?;
    let b = run_cli(&dir.path().join("b.json"), false)?;
    ensure(a == b, "reports differ between runs")?;
    let strip = |bytes: Vec<u8>| -> Result<serde_json::Value, String> {
        let mut v: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
        v.as_object_mut().ok_or("report is not an object")?.remove("timings");
        Ok(v)
    };
    let c = strip(run_cli(&dir.path().join("c.json"), true)?)?;
    let d = strip(run_cli(&dir.path().join("d.json"), true)?)?;
    ensure(c == d && c == strip(a.clone())?, "reports differ once timings are removed")?;
    Ok(format!("{} bytes, identical across runs", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 Hopf suite", hopf_suite),
        ("2 R-matrix", rmatrix_suite),
        ("3 bialgebra layer", bialgebra_layer),
        ("4 transport", transport),
        ("5 representation", representation),
        ("6 eigenstates", eigenstates),
        ("7 discrete SE", discrete_equation),
        ("8 solutions", solutions),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
