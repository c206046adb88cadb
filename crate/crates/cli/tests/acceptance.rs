//! Acceptance suite: one PASS/FAIL line per criterion, all exact.

use std::process::{Command, Output};
use std::time::Instant;

use lieconf::cohomology::{builtin_fixtures, h2_conformal, verify_fixture, DegreeCap};
use lieconf::conformal::{
    check_jacobi, check_skew, derived_subalgebra, ideal_closure, same_span, ConformalAlgebra,
    Element, Subspace, Triples,
};
use lieconf::document::AlgebraDocument;
use lieconf::families::{
    check_div_identity, k4_prime, k_conformal, parse_finite, FamilyDescriptor, FamilyTag, WFamily,
};
use lieconf::finite::{
    berezin_form_h, cocycle_from_derivation, cohomologous, h2_finite, hamiltonian_top_derivation,
};
use lieconf::modes::{
    build_modes, compare_realization, contact_model, current_model, current_pairing,
    k4prime_center_check, k_pairing, outer_sl2_on_s, vector_field_model, w_pairing, witt_check,
};
use lieconf::scalar::{format_scalar, int, parse_scalar, ratio, Scalar};
use num_traits::Zero;

type Outcome = (bool, Vec<String>);

fn d(tag: FamilyTag, n: usize) -> FamilyDescriptor {
    FamilyDescriptor::new(tag, n)
}

fn s(n: usize, a: Scalar) -> FamilyDescriptor {
    d(FamilyTag::S, n).with_a(a)
}

fn build(desc: &FamilyDescriptor) -> ConformalAlgebra {
    desc.build()
        .unwrap_or_else(|e| panic!("{}: {e}", desc.label()))
}

fn a_values() -> Vec<Scalar> {
    vec![int(0), int(1), int(-2), ratio(3, 7)]
}

fn axiom_families() -> Vec<FamilyDescriptor> {
    let mut out: Vec<FamilyDescriptor> = (0..=3).map(|n| d(FamilyTag::W, n)).collect();
    for n in [2, 3] {
        out.extend(a_values().into_iter().map(|a| s(n, a)));
    }
    out.push(d(FamilyTag::STilde, 2));
    out.extend([0, 1, 2, 3, 5].map(|n| d(FamilyTag::K, n)));
    out.push(d(FamilyTag::K4Prime, 4));
    out.extend(["sl(2)", "sl(2|1)", "Q(2)"].map(FamilyDescriptor::current));
    out
}

fn axioms() -> Outcome {
    let mut notes = Vec::new();
    for desc in axiom_families() {
        let a = build(&desc);
        let skew = check_skew(&a);
        let jac = check_jacobi(&a, Triples::All);
        if !skew.passed() || !jac.passed() {
            notes.push(format!(
                "{}: {} skew, {} Jacobi violations",
                desc.label(),
                skew.violations.len(),
                jac.violations.len()
            ));
        }
    }
    (notes.is_empty(), notes)
}

fn ranks() -> Outcome {
    let mut notes = Vec::new();
    let mut expect = |desc: FamilyDescriptor, r: usize| {
        let got = build(&desc).rank();
        if got != r {
            notes.push(format!("{}: rank {got}, expected {r}", desc.label()));
        }
    };
    for n in 0..=3 {
        expect(d(FamilyTag::W, n), (n + 1) << n);
    }
    for n in [2, 3] {
        for a in a_values() {
            expect(s(n, a), n << n);
        }
    }
    expect(d(FamilyTag::STilde, 2), 2 << 2);
    for n in [0, 1, 2, 3, 5] {
        expect(d(FamilyTag::K, n), 1 << n);
    }
    expect(d(FamilyTag::K4Prime, 4), 16);
    (notes.is_empty(), notes)
}

fn divergence_identity() -> Outcome {
    let mut notes = Vec::new();
    for a in [int(0), ratio(3, 7)] {
        let r = check_div_identity(2, &a, None).expect("W2 builds");
        notes.push(format!(
            "a = {a}: {} pairs, {} nonzero residuals",
            r.pairs_checked,
            r.failures.len()
        ));
        if !r.passed() {
            return (false, notes);
        }
    }
    (true, notes)
}

fn h2_table() -> Outcome {
    let table = [
        (d(FamilyTag::W, 0), 1),
        (d(FamilyTag::W, 1), 1),
        (d(FamilyTag::W, 2), 1),
        (d(FamilyTag::W, 3), 0),
        (s(2, int(0)), 1),
        (s(2, int(-2)), 1),
        (d(FamilyTag::STilde, 2), 1),
        (s(3, int(0)), 0),
        (d(FamilyTag::K, 0), 1),
        (d(FamilyTag::K, 1), 1),
        (d(FamilyTag::K, 2), 1),
        (d(FamilyTag::K, 3), 1),
        (d(FamilyTag::K4Prime, 4), 2),
        (d(FamilyTag::K, 5), 0),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (desc, want) in table {
        match h2_conformal(&build(&desc), DegreeCap::Auto) {
            Ok(r) => {
                let stable = r.runs.len() == 3 && r.runs.iter().all(|&(_, k)| k == r.dim);
                if r.dim != want || !stable {
                    ok = false;
                    notes.push(format!(
                        "{}: dim {} runs {:?}, expected {want}",
                        desc.label(),
                        r.dim,
                        r.runs
                    ));
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{}: {e}", desc.label()));
            }
        }
    }
    (ok, notes)
}

fn fixtures() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let fixtures = builtin_fixtures().expect("fixtures parse");
    for f in &fixtures {
        let values = if f.a_values.is_empty() {
            vec![Scalar::zero()]
        } else {
            f.a_values
                .iter()
                .map(|a| parse_scalar(a).expect("a value"))
                .collect()
        };
        if f.family.tag == "S" && values.len() < 2 {
            ok = false;
            notes.push(format!("{}: fewer than two a values", f.name));
        }
        for a in values {
            match verify_fixture(f, &a) {
                Ok(r) if r.passed() => {}
                Ok(r) => {
                    ok = false;
                    notes.push(format!(
                        "{} at a = {a}: residual zero {:?}, nontrivial {:?}, independent {}",
                        f.name,
                        r.residuals
                            .iter()
                            .map(|(l, x)| (l.clone(), x.is_zero()))
                            .collect::<Vec<_>>(),
                        r.nontrivial,
                        r.independent
                    ));
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("{} at a = {a}: {e}", f.name));
                }
            }
        }
        if f.name == "K'4" && f.cocycles.len() != 2 {
            ok = false;
            notes.push("K'4: expected two cocycle tables".into());
        }
    }
    notes.push(format!("{} fixtures", fixtures.len()));
    (ok, notes)
}

fn finite_h2() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, want) in [("sl(2)", 0), ("Q(2)", 1), ("H(5)", 1), ("psl(2|2)", 3)] {
        let g = parse_finite(name).expect("known algebra");
        let h = h2_finite(&g, 64).expect("within bound");
        if h.dim != want {
            ok = false;
            notes.push(format!("{name}: dim {}, expected {want}", h.dim));
        }
        if name == "H(5)" {
            let form = berezin_form_h(&g).expect("Berezin form");
            let dmat = hamiltonian_top_derivation(&g).expect("derivation");
            let alpha = cocycle_from_derivation(&g, &dmat, &form).expect("cocycle");
            let c = h
                .representatives
                .first()
                .and_then(|r| cohomologous(&g, r, &alpha));
            match c {
                Some(c) if !c.is_zero() => {
                    notes.push(format!("H(5): representative = {c}·α_D mod coboundaries"))
                }
                _ => {
                    ok = false;
                    notes.push(
                        "H(5): representative not cohomologous to a nonzero multiple of α_D".into(),
                    );
                }
            }
        }
    }
    (ok, notes)
}

fn mode_algebras() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut realize = |name: &str, r: lieconf::modes::RealizationReport| {
        notes.push(format!(
            "{name}: {} pairs, {} mismatches",
            r.compared,
            r.mismatches.len()
        ));
        ok &= r.passed();
    };
    for n in [1, 2] {
        let w = WFamily::new(n).expect("W builds");
        let m = build_modes(&w.algebra);
        realize(
            &format!("W{n}"),
            compare_realization(&m, &vector_field_model(n, 6), &w_pairing(&w), 6),
        );
    }
    let m = build_modes(&k_conformal(3).expect("K3 builds"));
    realize(
        "K3",
        compare_realization(&m, &contact_model(3, 6), &k_pairing(3), 6),
    );
    let g = parse_finite("sl(2)").expect("sl(2)");
    let m = build_modes(&lieconf::families::cur(&g));
    realize(
        "Cur sl(2)",
        compare_realization(&m, &current_model(&g, 6), &current_pairing(), 6),
    );

    for desc in axiom_families() {
        let a = build(&desc);
        if a.rank() > 16 {
            continue;
        }
        let m = build_modes(&a);
        let anti = m.anticommutativity_violations(4).len();
        let (count, bad) = m.jacobi_violations(4);
        if anti > 0 || !bad.is_empty() {
            ok = false;
            notes.push(format!(
                "{}: {anti} antisymmetry, {} Jacobi violations of {count}",
                desc.label(),
                bad.len()
            ));
        }
    }
    (ok, notes)
}

fn witt() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for desc in [d(FamilyTag::W, 0), d(FamilyTag::K, 0), s(2, int(0))] {
        let r = witt_check(&build(&desc), 8);
        ok &= r.passed();
        notes.push(format!(
            "{}: found {}, {} pairs, {} failures",
            desc.label(),
            r.found,
            r.checked,
            r.failures.len()
        ));
    }
    (ok, notes)
}

fn k4_center() -> Outcome {
    match k4prime_center_check(6) {
        Ok(r) => (
            r.passed(),
            vec![format!(
                "{} brackets, {} noncentral, constant {:?}",
                r.checked,
                r.noncentral.len(),
                r.constant.as_ref().map(ToString::to_string)
            )],
        ),
        Err(e) => (false, vec![e.to_string()]),
    }
}

fn outer_sl2() -> Outcome {
    match outer_sl2_on_s(6) {
        Ok(r) => (
            r.passed(),
            vec![format!(
                "{} pairs, {} derivation failures, [E,F] = {:?}·H, span {}",
                r.pairs_checked,
                r.derivation_failures.len(),
                r.ef_multiple_of_h.as_ref().map(ToString::to_string),
                r.span_dim
            )],
        ),
        Err(e) => (false, vec![e.to_string()]),
    }
}

fn simplicity() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let algebras = vec![
        build(&d(FamilyTag::W, 2)),
        build(&s(2, int(0))),
        build(&d(FamilyTag::STilde, 2)),
        build(&d(FamilyTag::K, 3)),
        build(&d(FamilyTag::K4Prime, 4)),
        build(&FamilyDescriptor::current("sl(2|1)")),
    ];
    let mut seeds = 0;
    for a in &algebras {
        let cap = a.max_dpow() + 2;
        for i in 0..a.rank() {
            seeds += 1;
            match ideal_closure(a, &[Element::gen(i)], cap) {
                Ok(c) if c.saturates => {}
                Ok(c) => {
                    ok = false;
                    notes.push(format!(
                        "{}: closure of {} has profile {:?}",
                        a.name(),
                        a.generator(i).id,
                        c.profile()
                    ));
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("{}: {e}", a.name()));
                }
            }
        }
    }

    let k4 = k_conformal(4).expect("K4 builds");
    let top = Element::gen(k4.rank() - 1);
    let closure = ideal_closure(&k4, &[top], 3).expect("closure is stable");
    if closure.saturates {
        ok = false;
        notes.push(format!(
            "K4: closure of {} saturates (profile {:?}); it contains ∂{} in K'4",
            k4.generator(k4.rank() - 1).id,
            closure.profile(),
            k4.generator(k4.rank() - 1).id
        ));
    }
    let derived = derived_subalgebra(&k4, 3).expect("derived subalgebra");
    let kp = k4_prime().expect("K'4 builds");
    let span = Subspace::generated(k4.rank(), 3, kp.expresser.images());
    if !same_span(&derived.subspace, &span) {
        ok = false;
        notes.push("derived(K4) differs from K'4".into());
    } else {
        notes.push("derived(K4) = K'4".into());
    }
    notes.push(format!(
        "{seeds} single-generator closures checked for saturation"
    ));
    (ok, notes)
}

fn lieconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieconf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cli() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut expect = |what: &str, cond: bool| {
        if !cond {
            ok = false;
            notes.push(format!("failed: {what}"));
        }
    };
    let dir = tempfile::tempdir().expect("temp dir");
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    for (label, args) in [
        ("W2", vec!["--family", "W", "--n", "2"]),
        ("S2,3/7", vec!["--family", "S", "--n", "2", "--a", "3/7"]),
        ("K'4", vec!["--family", "K'4"]),
        ("Cur sl(2|1)", vec!["--family", "Cur", "--g", "sl(2|1)"]),
    ] {
        let out = lieconf(&[&["build"][..], &args].concat());
        expect(
            &format!("build {label} exits 0"),
            out.status.code() == Some(0),
        );
        let json = String::from_utf8_lossy(&out.stdout).into_owned();
        let doc = AlgebraDocument::from_json(&json);
        let alg = doc.as_ref().ok().and_then(|d| d.to_algebra().ok());
        let want = build(&FamilyDescriptor::from_label(label).expect("label parses"));
        expect(&format!("{label} round-trips"), alg.as_ref() == Some(&want));
        let again = alg.map(|a| {
            AlgebraDocument::from_algebra(&a)
                .to_json()
                .expect("serializes")
        });
        expect(
            &format!("{label} re-serializes identically"),
            again.as_deref() == Some(json.trim_end()),
        );
    }

    let good = path("w1.json");
    let out = lieconf(&["build", "--family", "W", "--n", "1", "--out", &good]);
    expect("build --out exits 0", out.status.code() == Some(0));
    expect(
        "check on a valid document exits 0",
        lieconf(&["check", &good]).status.code() == Some(0),
    );

    let mut doc = AlgebraDocument::from_json(&std::fs::read_to_string(&good).expect("written"))
        .expect("parses");
    let t = &mut doc.brackets[0].terms[0];
    t.coeff = format_scalar(&-parse_scalar(&t.coeff).expect("coefficient"));
    let bad = path("bad.json");
    std::fs::write(&bad, doc.to_json().expect("serializes")).expect("write");
    expect(
        "check on a corrupted document exits 1",
        lieconf(&["check", &bad]).status.code() == Some(1),
    );

    let missing = path("missing.json");
    expect(
        "missing input exits 2",
        lieconf(&["check", &missing]).status.code() == Some(2),
    );
    expect(
        "unknown family exits 2",
        lieconf(&["build", "--family", "X"]).status.code() == Some(2),
    );

    let out = lieconf(&["build", "--family", "K", "--n", "4"]);
    let err = String::from_utf8_lossy(&out.stderr);
    expect("K4 build exits 2", out.status.code() == Some(2));
    expect(
        "K4 error cites the constraint",
        err.contains("N ≠ 4") && err.contains("K'4"),
    );

    let out = lieconf(&["catalog", "--format", "json"]);
    let entries: serde_json::Value =
        serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    let count = entries.as_array().map_or(0, Vec::len);
    expect(
        "catalog lists 7 families",
        out.status.code() == Some(0) && count == 7,
    );
    notes.push(format!("catalog: {count} families"));
    (ok, notes)
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axioms", axioms),
        ("ranks", ranks),
        ("divergence identity", divergence_identity),
        ("conformal H²", h2_table),
        ("cocycle fixtures", fixtures),
        ("finite H²", finite_h2),
        ("mode algebras", mode_algebras),
        ("Witt relations", witt),
        ("K'4 center", k4_center),
        ("outer sl2", outer_sl2),
        ("simplicity probes", simplicity),
        ("CLI contracts", cli),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, notes) = run();
        println!(
            "criterion {}: {} {name} ({} ms)",
            k + 1,
            if passed { "PASS" } else { "FAIL" },
            start.elapsed().as_millis()
        );
        for n in notes {
            println!("    {n}");
        }
        if !passed {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
