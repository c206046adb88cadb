use std::fs;
use std::path::Path;

use lieconf::cohomology::{fixture_for, h1_conformal, h2_conformal, verify_fixture, DegreeCap};
use lieconf::conformal::{check_jacobi, check_skew, ConformalAlgebra, Triples};
use lieconf::document::AlgebraDocument;
use lieconf::families::{
    catalog, check_div_identity, k_weight, parse_finite, s_conformal, s_tilde, virasoro_probe,
    FamilyDescriptor, FamilyTag, WFamily,
};
use lieconf::grassmann::parse_monomial;
use lieconf::modes::{
    build_modes, compare_realization, contact_model, current_model, current_pairing, k_pairing,
    vector_field_model, w_pairing, witt_check, RealizationReport,
};
use lieconf::scalar::{format_scalar, parse_scalar};
use lieconf::Error;

use crate::report::{emit, Failure, Report};
use crate::{BuildArgs, CheckArgs, Cli, Command, Format, H2Args, Suite};

/// Default number of sampled triples for mode algebras of rank above 16.
const MODE_SAMPLES: usize = 500;

pub fn run(cli: &Cli, echo: &str) -> Result<bool, Failure> {
    match &cli.command {
        Command::Build(args) => build(args, cli.format, echo),
        Command::Check(args) => check(args, cli.format, echo),
        Command::H2(args) => h2(args, cli.format, echo),
        Command::Catalog => catalog_cmd(cli.format),
    }
}

fn descriptor(args: &BuildArgs) -> Result<FamilyDescriptor, Failure> {
    let tag = FamilyTag::parse(&args.family)?;
    let mut d = match tag {
        FamilyTag::Cur => {
            let g = args.g.as_deref().ok_or_else(|| {
                Failure::from(Error::Constraint(
                    "Cur g requires --g, e.g. --g 'sl(2|1)'".into(),
                ))
            })?;
            FamilyDescriptor::current(g)
        }
        FamilyTag::K4Prime => FamilyDescriptor::new(tag, 4),
        _ => FamilyDescriptor::new(tag, args.n),
    };
    if let Some(a) = &args.a {
        if tag != FamilyTag::S {
            return Err(Failure::Input("--a applies to the family S only".into()));
        }
        d = d.with_a(parse_scalar(a)?);
    }
    Ok(d)
}

fn build(args: &BuildArgs, format: Format, echo: &str) -> Result<bool, Failure> {
    let d = descriptor(args)?;
    let alg = d.build()?;
    let json = AlgebraDocument::from_algebra(&alg).to_json()?;
    match &args.out {
        Some(path) => {
            fs::write(path, json + "\n")?;
            let mut r = Report::new(echo, None);
            r.set("algebra", alg.name());
            r.set("rank", alg.rank());
            r.set("written", path.display().to_string());
            Ok(r.finish(format))
        }
        None => {
            emit(&(json + "\n"));
            Ok(true)
        }
    }
}

fn load(path: &Path) -> Result<ConformalAlgebra, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(AlgebraDocument::from_json(&text)?.to_algebra()?)
}

fn check(args: &CheckArgs, format: Format, echo: &str) -> Result<bool, Failure> {
    let alg = load(args.input.path())?;
    let seeded = args.samples.is_some() || args.suite == Suite::Modes;
    let mut r = Report::new(echo, seeded.then_some(args.seed));
    r.set("algebra", alg.name());
    r.set("rank", alg.rank());
    match args.suite {
        Suite::Axioms => axioms(&alg, args, &mut r),
        Suite::Family => family(&alg, args, &mut r)?,
        Suite::Modes => modes(&alg, args, &mut r)?,
    }
    Ok(r.finish(format))
}

fn axioms(alg: &ConformalAlgebra, args: &CheckArgs, r: &mut Report) {
    let skew = check_skew(alg);
    let detail = skew
        .violations
        .iter()
        .map(|v| {
            format!(
                "({}, {}): {}",
                alg.generator(v.i).id,
                alg.generator(v.j).id,
                alg.format_lambda(&v.residual)
            )
        })
        .collect();
    r.check(
        format!("skew-symmetry ({} pairs)", skew.pairs_checked),
        skew.passed(),
        detail,
    );
    let triples = match args.samples {
        Some(count) => Triples::Sample {
            count,
            seed: args.seed,
        },
        None => Triples::All,
    };
    let jac = check_jacobi(alg, triples);
    let detail = jac
        .violations
        .iter()
        .take(10)
        .map(|v| {
            format!(
                "({}, {}, {}): {}",
                alg.generator(v.i).id,
                alg.generator(v.j).id,
                alg.generator(v.k).id,
                alg.format_bivar(&v.residual)
            )
        })
        .collect();
    r.check(
        format!("Jacobi identity ({} triples)", jac.triples_checked),
        jac.passed(),
        detail,
    );
}

fn recognize(alg: &ConformalAlgebra) -> Result<FamilyDescriptor, Failure> {
    FamilyDescriptor::from_label(alg.name()).ok_or_else(|| {
        Failure::Input(format!(
            "document name '{}' does not identify a family",
            alg.name()
        ))
    })
}

fn expected_rank(d: &FamilyDescriptor) -> Result<usize, Failure> {
    let n = d.n;
    Ok(match d.tag {
        FamilyTag::W => (n + 1) << n,
        FamilyTag::S | FamilyTag::STilde => n << n,
        FamilyTag::K => 1 << n,
        FamilyTag::K4Prime => 16,
        FamilyTag::Cur => parse_finite(d.g.as_deref().unwrap_or_default())?.dim(),
        FamilyTag::CK6 => 32,
    })
}

fn family(alg: &ConformalAlgebra, args: &CheckArgs, r: &mut Report) -> Result<(), Failure> {
    let d = recognize(alg)?;
    let rank = expected_rank(&d)?;
    r.check(
        format!("rank {} = {rank}", alg.rank()),
        alg.rank() == rank,
        Vec::new(),
    );
    let fresh = d.build()?;
    let mut detail = Vec::new();
    for i in 0..alg.rank().min(fresh.rank()) {
        for j in 0..alg.rank().min(fresh.rank()) {
            if alg.table(i, j) != fresh.table(i, j) {
                detail.push(format!(
                    "[{} λ {}] = {}, family gives {}",
                    alg.generator(i).id,
                    alg.generator(j).id,
                    alg.format_lambda(alg.table(i, j)),
                    fresh.format_lambda(fresh.table(i, j))
                ));
            }
        }
    }
    let same = detail.is_empty() && alg.generators() == fresh.generators();
    detail.truncate(10);
    r.check(
        format!("structure constants match {}", d.label()),
        same,
        detail,
    );
    let samples = args.samples.map(|c| (c, args.seed));
    match d.tag {
        FamilyTag::W => {
            for a in [parse_scalar("0")?, parse_scalar("3/7")?] {
                let rep = check_div_identity(d.n, &a, samples)?;
                let w = WFamily::new(d.n)?;
                let detail = rep
                    .failures
                    .iter()
                    .take(10)
                    .map(|(i, j, res)| {
                        let terms: Vec<String> = res
                            .coeffs()
                            .iter()
                            .map(|(n, x)| format!("λ^{n}: {}", w.format_module(x)))
                            .collect();
                        format!(
                            "({}, {}): {}",
                            w.algebra.generator(*i).id,
                            w.algebra.generator(*j).id,
                            terms.join(", ")
                        )
                    })
                    .collect();
                r.check(
                    format!(
                        "divergence identity, a = {} ({} pairs)",
                        format_scalar(&a),
                        rep.pairs_checked
                    ),
                    rep.passed(),
                    detail,
                );
            }
        }
        FamilyTag::S => {
            let ok = s_conformal(d.n, &d.a).is_ok();
            r.check(
                format!("generators satisfy div_a = 0, a = {}", format_scalar(&d.a)),
                ok,
                Vec::new(),
            );
        }
        FamilyTag::STilde => {
            r.check(
                "generators in the twisted divergence kernel",
                s_tilde(d.n).is_ok(),
                Vec::new(),
            );
        }
        FamilyTag::K => {
            let mut detail = Vec::new();
            for g in alg.generators() {
                let want = parse_monomial(&g.id).map(k_weight);
                if g.weight != want {
                    detail.push(format!(
                        "{}: weight {:?}, expected {:?}",
                        g.id, g.weight, want
                    ));
                }
            }
            r.check("conformal weights 2 − deg/2", detail.is_empty(), detail);
        }
        _ => {}
    }
    if virasoro_probe(alg).is_some() {
        let w = witt_check(alg, 8);
        let detail = w
            .failures
            .iter()
            .map(|(m, n)| format!("[L_{m}, L_{n}]"))
            .collect();
        r.check(
            format!("Witt relations, modes ≤ 8 ({} pairs)", w.checked),
            w.passed(),
            detail,
        );
    }
    Ok(())
}

fn realization_line(r: &mut Report, rep: RealizationReport) {
    let detail = rep
        .mismatches
        .iter()
        .take(10)
        .map(|(x, y, lhs, rhs)| format!("[{x}, {y}]: modes give {lhs}, model gives {rhs}"))
        .collect();
    let name = format!(
        "realization in {} ({} pairs, {} beyond the cap)",
        rep.model, rep.compared, rep.overflow
    );
    r.check(name, rep.passed(), detail);
}

fn modes(alg: &ConformalAlgebra, args: &CheckArgs, r: &mut Report) -> Result<(), Failure> {
    let m = build_modes(alg);
    let cap = args.max_mode;
    let anti = m.anticommutativity_violations(cap);
    let detail = anti
        .iter()
        .take(10)
        .map(|((i, a), (j, b))| {
            format!(
                "({}_{a}, {}_{b})",
                alg.generator(*i).id,
                alg.generator(*j).id
            )
        })
        .collect();
    r.check(
        format!("super-anticommutativity, modes ≤ {cap}"),
        anti.is_empty(),
        detail,
    );
    let fmt_triple = |t: &[(usize, u32); 3]| {
        let s: Vec<String> = t
            .iter()
            .map(|(i, n)| format!("{}_{n}", alg.generator(*i).id))
            .collect();
        format!("({})", s.join(", "))
    };
    match args.samples {
        None if alg.rank() <= 16 => {
            let (n, bad) = m.jacobi_violations(cap);
            r.check(
                format!("Jacobi identity, modes ≤ {cap} ({n} triples)"),
                bad.is_empty(),
                bad.iter().take(10).map(fmt_triple).collect(),
            );
        }
        samples => {
            let count = samples.unwrap_or(MODE_SAMPLES);
            let bad = m.jacobi_sampled(cap, count, args.seed);
            r.check(
                format!("Jacobi identity, modes ≤ {cap} ({count} sampled triples)"),
                bad.is_empty(),
                bad.iter().take(10).map(fmt_triple).collect(),
            );
        }
    }
    let t = m.t_derivation_violations(cap, 200, args.seed);
    r.check(
        "T is a derivation (200 sampled pairs)",
        t.is_empty(),
        Vec::new(),
    );
    let f = m.filtration_profile(cap);
    r.set("filtration codimensions", &f.codims);
    r.set("filtration depth", f.depth);
    if let Some(d) = FamilyDescriptor::from_label(alg.name()) {
        match d.tag {
            FamilyTag::W => {
                let w = WFamily::new(d.n)?;
                realization_line(
                    r,
                    compare_realization(&m, &vector_field_model(d.n, cap), &w_pairing(&w), cap),
                );
            }
            FamilyTag::K => {
                realization_line(
                    r,
                    compare_realization(&m, &contact_model(d.n, cap), &k_pairing(d.n), cap),
                );
            }
            FamilyTag::Cur => {
                let g = parse_finite(d.g.as_deref().unwrap_or_default())?;
                realization_line(
                    r,
                    compare_realization(&m, &current_model(&g, cap), &current_pairing(), cap),
                );
            }
            _ => {}
        }
    }
    if virasoro_probe(alg).is_some() {
        let w = witt_check(alg, 8);
        r.check(
            format!("Witt relations, modes ≤ 8 ({} pairs)", w.checked),
            w.passed(),
            Vec::new(),
        );
    }
    Ok(())
}

fn h2(args: &H2Args, format: Format, echo: &str) -> Result<bool, Failure> {
    let alg = load(args.input.path())?;
    let cap = match args.cap.as_str() {
        "auto" => DegreeCap::Auto,
        s => DegreeCap::Fixed(s.parse().map_err(|_| {
            Failure::Input(format!("--cap expects 'auto' or an integer, got '{s}'"))
        })?),
    };
    let res = h2_conformal(&alg, cap)?;
    let mut r = Report::new(echo, None);
    r.set("algebra", alg.name());
    r.set("dim H2", res.dim);
    r.set("cocycles", res.cocycle_dim);
    r.set("coboundaries", res.coboundary_dim);
    r.set("unknowns", res.unknowns);
    r.set("runs (extra degree, dim)", &res.runs);
    r.set(
        "representatives",
        res.representatives
            .iter()
            .map(|c| c.format(&alg))
            .collect::<Vec<_>>(),
    );
    r.set("dim H1", h1_conformal(&alg));
    if let Some(d) = FamilyDescriptor::from_label(alg.name()) {
        if let Some(f) = fixture_for(&d)? {
            let rep = verify_fixture(&f, &d.a)?;
            r.set("fixture normalization", format!("{:?}", rep.normalization));
            let mut detail = Vec::new();
            for (label, res) in &rep.residuals {
                if !res.is_zero() {
                    detail.push(format!(
                        "{label}: {} skew and {} triple residuals",
                        res.skew.len(),
                        res.triples.len()
                    ));
                }
            }
            for (label, nontrivial) in &rep.nontrivial {
                if !nontrivial {
                    detail.push(format!("{label} is a coboundary"));
                }
            }
            if !rep.independent {
                detail.push("tabulated cocycles are dependent modulo coboundaries".into());
            }
            r.check(
                format!("tabulated cocycles of {}", f.name),
                rep.passed(),
                detail,
            );
            r.check(
                format!(
                    "dim H2 = number of tabulated cocycles ({})",
                    f.cocycles.len()
                ),
                res.dim == f.cocycles.len(),
                Vec::new(),
            );
        }
    }
    Ok(r.finish(format))
}

fn catalog_cmd(format: Format) -> Result<bool, Failure> {
    let entries = catalog();
    match format {
        Format::Json => {
            emit(&(serde_json::to_string_pretty(&entries).map_err(Error::from)? + "\n"))
        }
        Format::Text => {
            let mut out = String::new();
            for e in &entries {
                out += &format!(
                    "{}\n    constraint: {}\n    rank: {}\n",
                    e.family, e.constraint, e.rank
                );
                out += &format!("    annihilation algebra: {}\n", e.annihilation_algebra);
                out += &format!(
                    "    central extensions: {}\n    status: {}\n",
                    e.central_extensions, e.status
                );
            }
            emit(&out);
        }
    }
    Ok(true)
}
