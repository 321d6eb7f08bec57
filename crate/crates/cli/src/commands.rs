use std::fs;
use std::path::Path;
use std::time::Instant;

use km_core::groups::{build, lambda_generators, lambda_size, verify_certificate, Quad, Rewriter};
use km_core::homs::hom_by_name;
use km_core::lattice::h1;
use km_core::report::{Check, Report};
use km_core::schreier::{coset_table, h1_kernel, schreier_labels, KernelOptions, Transversal};
use km_core::symchar::{class_size, partitions, ClassFunction, IrrepLabel};
use km_core::verify::{criterion_7, verify_all, VerifyOptions};
use km_core::{Family, KmError, Mode, Presentation, Result};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, GroupArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| KmError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| KmError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_group(g: &GroupArgs, default_mode: Mode) -> Result<Presentation> {
    if let Some(path) = &g.input {
        if g.family.is_some() {
            return Err(KmError::InvalidArgument("give either --input or --family, not both".into()));
        }
        return Presentation::load(&read(path)?);
    }
    let family = g.family.ok_or_else(|| KmError::InvalidArgument("--family or --input is required".into()))?;
    let n = g.n.ok_or_else(|| KmError::InvalidArgument("--n is required with --family".into()))?;
    build(family, n, g.mode.unwrap_or(default_mode))
}

fn describe(r: &mut Report, p: &Presentation) {
    r.input("family", p.meta.family.as_str()).input("mode", p.meta.mode.as_str());
    if let Some(n) = p.meta.n {
        r.input("n", n);
    }
    r.result("generators", p.num_generators()).result("relators", p.num_relators());
}

fn emit(cli: &Cli, r: &Report) -> Result<()> {
    let text = match cli.format {
        Format::Json => r.to_json()? + "\n",
        Format::Text => r.to_text(),
    };
    match &cli.output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one command; `Ok(false)` means some check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let t0 = Instant::now();
    let mut report = match &cli.command {
        Command::Present(g) => return present(cli, g),
        Command::H1(g) => cmd_h1(g)?,
        Command::MinGens { family, n } => min_gens(*family, *n)?,
        Command::Rewrite { family, n, quad } => rewrite(*family, *n, quad.as_deref())?,
        Command::KernelH1 { group, hom, transversal, labels } => {
            kernel_h1(group, hom, transversal.as_deref(), labels.as_deref())?
        }
        Command::Chars { n, verify } => chars(*n, *verify)?,
        Command::VerifyAll { n_min, n_max, include_slow, input, random_cases } => {
            let input = input.as_deref().map(|p| read(p).and_then(|t| Presentation::load(&t))).transpose()?;
            let opts = VerifyOptions {
                n_min: *n_min,
                n_max: *n_max,
                include_slow: *include_slow,
                seed: cli.seed,
                random_cases: *random_cases,
                input,
            };
            let mut r = Report::new("verify-all");
            r.input("n_min", *n_min).input("n_max", *n_max).input("include_slow", *include_slow);
            r.input("seed", cli.seed);
            r.checks = verify_all(&opts);
            r
        }
    };
    report.seconds = t0.elapsed().as_secs_f64();
    emit(cli, &report)?;
    Ok(report.passed())
}

fn present(cli: &Cli, g: &GroupArgs) -> Result<bool> {
    let p = load_group(g, Mode::Full)?;
    let text = match cli.format {
        Format::Json => p.to_json()? + "\n",
        Format::Text => p.to_text(),
    };
    match &cli.output {
        Some(path) => {
            write(path, &text)?;
            println!("{} generators, {} relators -> {}", p.num_generators(), p.num_relators(), path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{} generators, {} relators", p.num_generators(), p.num_relators());
        }
    }
    Ok(true)
}

fn cmd_h1(g: &GroupArgs) -> Result<Report> {
    let p = load_group(g, Mode::Full)?;
    let mut r = Report::new("h1");
    describe(&mut r, &p);
    let violations = p.validate();
    r.checks.push(Check {
        criterion: 0,
        name: "presentation is well formed".into(),
        passed: violations.is_empty(),
        detail: violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        seconds: 0.0,
    });
    let inv = h1(&p);
    r.result("h1", inv.to_string()).result("h1_expanded", inv.expanded());
    r.result("free_rank", inv.free_rank).result("torsion_count", inv.torsion.len());
    Ok(r)
}

fn min_gens(family: Family, n: usize) -> Result<Report> {
    let set = lambda_generators(n, family)?;
    let mut r = Report::new("min-gens");
    r.input("family", family.as_str()).input("n", n);
    r.result("size", set.len());
    r.result("generators", Value::from(set.iter().map(|q| q.name(n)).collect::<Vec<_>>()));
    if matches!(family, Family::Gamma | Family::GammaHat) {
        let closed = (n - 3) * (n * n + 2) / 6;
        r.checks.push(Check {
            criterion: 6,
            name: "size matches both closed forms".into(),
            passed: set.len() == lambda_size(n) && set.len() == closed,
            detail: format!("C(n,3)-1 = {}, (n-3)(n^2+2)/6 = {closed}", lambda_size(n)),
            seconds: 0.0,
        });
    }
    Ok(r)
}

fn rewrite(family: Family, n: usize, quad: Option<&str>) -> Result<Report> {
    let mut rw = Rewriter::new(n, family)?;
    let p = rw.presentation().clone();
    let quads: Vec<Quad> = match quad {
        Some(q) => vec![Quad::parse(q, n)?],
        None => p.generators.iter().map(|g| Quad::parse(g, n)).collect::<Result<_>>()?,
    };
    let mut r = Report::new("rewrite");
    r.input("family", family.as_str()).input("n", n);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for q in quads {
        let (w, cert) = rw.rewrite(q)?;
        let ok = verify_certificate(&cert, &p)?;
        all_ok &= ok;
        let mut row = json!({ "quad": q.name(n), "word": p.show(&w), "verified": ok });
        if quad.is_some() {
            row["certificate"] = serde_json::to_value(&cert)?;
        }
        rows.push(row);
    }
    r.result("rewritings", rows);
    r.checks.push(Check {
        criterion: 6,
        name: "certificates replay".into(),
        passed: all_ok,
        detail: String::new(),
        seconds: 0.0,
    });
    Ok(r)
}

fn kernel_h1(g: &GroupArgs, hom: &str, transversal: Option<&str>, labels: Option<&Path>) -> Result<Report> {
    let p = load_group(g, Mode::Reduced)?;
    let h = hom_by_name(hom, &p)?;
    let t = coset_table(&p, &h)?;
    let reps = match transversal {
        Some(text) => Transversal::parse(&t, &p, text)?,
        None => Transversal::breadth_first(&t),
    };
    if let Some(path) = labels {
        write(path, &serde_json::to_string_pretty(&schreier_labels(&p, &t, &reps))?)?;
    }
    let opts = KernelOptions { transversal: Some(reps.reps.clone()), streaming: None };
    let k = h1_kernel(&p, &h, &opts)?;
    let mut r = Report::new("kernel-h1");
    describe(&mut r, &p);
    r.input("hom", hom);
    r.result("index", k.index);
    if k.index <= 16 {
        r.result("transversal", reps.reps.iter().map(|w| p.show(w)).collect::<Vec<_>>());
    }
    r.result("schreier_generators", k.schreier_generators).result("schreier_relators", k.relators);
    if let Some((gens, rels)) = k.simplified {
        r.result("simplified_generators", gens).result("simplified_relators", rels);
    }
    r.result("h1", k.invariants.to_string()).result("h1_expanded", k.invariants.expanded());
    Ok(r)
}

fn chars(n: usize, verify: bool) -> Result<Report> {
    if n < 4 {
        return Err(KmError::InvalidArgument(format!("n must be at least 4, got {n}")));
    }
    let mut r = Report::new("chars");
    r.input("n", n);
    let classes = partitions(n);
    r.result("classes", classes.iter().map(ToString::to_string).collect::<Vec<_>>());
    r.result("class_sizes", classes.iter().map(|c| class_size(c).to_string()).collect::<Vec<_>>());
    let mut rows = vec![("pairs", ClassFunction::subsets(n, 2)), ("triples", ClassFunction::subsets(n, 3))];
    for l in IrrepLabel::ALL {
        rows.push((l.name(), ClassFunction::irrep(n, l)));
    }
    for (name, f) in rows {
        r.result(&format!("chi {name}"), f.values.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    if verify {
        r.checks = criterion_7(&VerifyOptions::default());
    }
    Ok(r)
}
