//! Command-line front end: every structural check in the library is
//! reachable through exactly one subcommand. Reports are deterministic
//! pretty-printed JSON on standard output; diagnostics go to standard
//! error. Exit codes: 0 all checks pass, 1 a check failed (the report
//! lists witnesses), 2 malformed input or a cap was exceeded.

use clap::{Args, Parser, Subcommand};
use opdcat::corpus::{Document, Manifest};
use serde_json::{json, Value};
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const FREE_BUDGET: u64 = 1_000_000;
const PRESHEAF_BUDGET: usize = 2_000_000;

#[derive(Parser)]
#[command(name = "opdcat", version, about = "Checks for finite multicategories, enriched categories, and their simplicial invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Input JSON document
    #[arg(long)]
    input: PathBuf,
    /// Largest simplex degree used by operator-category constructions
    #[arg(long, default_value_t = opdcat::caps::DEGREE)]
    degree_cap: usize,
    /// Top simplicial dimension for truncated constructions
    #[arg(long, default_value_t = opdcat::caps::DIM)]
    dim_cap: usize,
    /// Largest multimorphism arity enumerated
    #[arg(long, default_value_t = opdcat::caps::ARITY)]
    arity_cap: usize,
    /// Deepest word length / equivalence-tuple level enumerated
    #[arg(long, default_value_t = opdcat::caps::LEVEL)]
    level_cap: usize,
    /// Seed for generated test instances
    #[arg(long, default_value_t = opdcat::corpus::DEFAULT_SEED)]
    seed: u64,
    /// Also write the report to this file
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnodyneBuildArgs {
    /// Vertex count parameter of the chaotic nerve (alphabet 0..=N+1)
    #[arg(long = "N")]
    n: usize,
    /// Top simplicial dimension of the verified inclusion
    #[arg(long, default_value_t = opdcat::caps::DIM)]
    dim_cap: usize,
    /// Also write the certificate to this file
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a multicategory table against the identity and composition laws
    CheckMulticat(CommonArgs),
    /// Build the category of operators and check its structural conditions
    Operators(CommonArgs),
    /// Round-trip a multicategory through its category of operators
    Roundtrip(CommonArgs),
    /// Check the enriched-category axioms of a document
    CheckEnriched(CommonArgs),
    /// Build the free enriched category on a graph and check its universal property
    FreeCat(CommonArgs),
    /// Count equivalence tuples level by level
    Iota(CommonArgs),
    /// Decide completeness: every equivalence tuple is degenerate
    Complete(CommonArgs),
    /// Decide full faithfulness and essential surjectivity of a functor
    Ffes(CommonArgs),
    /// Verify a categorical equivalence datum (functors both ways plus homotopies)
    CatEquiv(CommonArgs),
    /// Check simplicial identities and the Segal condition of a truncated simplicial set
    SegalCheck(CommonArgs),
    /// Check the groupoid-object condition of a simplicial set or of a category's equivalence levels
    GroupoidCheck(CommonArgs),
    /// Check the section-presheaf decomposition squares of an enriched category
    PresheafCheck(CommonArgs),
    /// Build a certified filtration of an inner-anodyne nerve inclusion
    AnodyneBuild(AnodyneBuildArgs),
    /// Replay and verify a filtration certificate
    AnodyneVerify(CommonArgs),
    /// Report symmetrized multihom sizes of a multicategory
    Sym(CommonArgs),
    /// Validate every document listed in a corpus manifest
    ValidateCorpus(CommonArgs),
}

/// Errors that abort a command: malformed input, wrong document kind, or a
/// cap exceeded inside the library. All map to exit code 2.
struct CliError(String);

impl<E: Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl Command {
    fn common(&self) -> Option<&CommonArgs> {
        match self {
            Command::AnodyneBuild(_) => None,
            Command::CheckMulticat(a)
            | Command::Operators(a)
            | Command::Roundtrip(a)
            | Command::CheckEnriched(a)
            | Command::FreeCat(a)
            | Command::Iota(a)
            | Command::Complete(a)
            | Command::Ffes(a)
            | Command::CatEquiv(a)
            | Command::SegalCheck(a)
            | Command::GroupoidCheck(a)
            | Command::PresheafCheck(a)
            | Command::AnodyneVerify(a)
            | Command::Sym(a)
            | Command::ValidateCorpus(a) => Some(a),
        }
    }
}

fn enforce_caps(a: &CommonArgs) -> Result<(), CliError> {
    let checks = [
        ("degree-cap", a.degree_cap, opdcat::caps::DEGREE),
        ("dim-cap", a.dim_cap, opdcat::caps::DIM),
        ("arity-cap", a.arity_cap, opdcat::caps::ARITY),
        ("level-cap", a.level_cap, opdcat::caps::LEVEL),
    ];
    for (name, got, cap) in checks {
        if got > cap {
            return Err(CliError(format!("--{name} {got} exceeds the global cap {cap}")));
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    if let Some(a) = command.common() {
        enforce_caps(a)?;
    }
    let (report, pass, output) = match command {
        Command::CheckMulticat(a) => with_output(check_multicat(&a), &a),
        Command::Operators(a) => with_output(operators_cmd(&a), &a),
        Command::Roundtrip(a) => with_output(roundtrip(&a), &a),
        Command::CheckEnriched(a) => with_output(check_enriched(&a), &a),
        Command::FreeCat(a) => with_output(free_cat(&a), &a),
        Command::Iota(a) => with_output(iota_cmd(&a), &a),
        Command::Complete(a) => with_output(complete(&a), &a),
        Command::Ffes(a) => with_output(ffes(&a), &a),
        Command::CatEquiv(a) => with_output(cat_equiv(&a), &a),
        Command::SegalCheck(a) => with_output(segal_check(&a), &a),
        Command::GroupoidCheck(a) => with_output(groupoid_check(&a), &a),
        Command::PresheafCheck(a) => with_output(presheaf_check(&a), &a),
        Command::AnodyneBuild(a) => {
            if a.dim_cap > opdcat::caps::DIM {
                return Err(CliError(format!(
                    "--dim-cap {} exceeds the global cap {}",
                    a.dim_cap,
                    opdcat::caps::DIM
                )));
            }
            let out = a.output.clone();
            anodyne_build(&a).map(|(v, p)| (v, p, out))
        }
        Command::AnodyneVerify(a) => with_output(anodyne_verify(&a), &a),
        Command::Sym(a) => with_output(sym_cmd(&a), &a),
        Command::ValidateCorpus(a) => with_output(validate_corpus(&a), &a),
    }?;
    let text = serde_json::to_string_pretty(&report).map_err(CliError::from)?;
    println!("{text}");
    if let Some(path) = output {
        std::fs::write(&path, text + "\n").map_err(CliError::from)?;
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

type CmdResult = Result<(Value, bool), CliError>;

fn with_output(
    r: CmdResult,
    args: &CommonArgs,
) -> Result<(Value, bool, Option<PathBuf>), CliError> {
    r.map(|(v, p)| (v, p, args.output.clone()))
}

fn load_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn expect_multicat(
    doc: Document,
) -> Result<(String, opdcat::multicat::Multicategory), CliError> {
    match doc {
        Document::Multicategory(d) => {
            let m = d.to_multicat()?;
            Ok((d.name, m))
        }
        other => Err(CliError(format!(
            "expected a multicategory document, found kind {:?}",
            other.kind()
        ))),
    }
}

fn expect_enriched(
    doc: Document,
) -> Result<(String, opdcat::enrich::EnrichedCategory), CliError> {
    match doc {
        Document::Enriched(d) => Ok((d.name.clone(), d.to_enriched())),
        other => Err(CliError(format!(
            "expected an enriched-category document, found kind {:?}",
            other.kind()
        ))),
    }
}

/// A valid multicategory, or exit 2: the structural commands assume their
/// input passes the table laws.
fn valid_multicat(
    doc: Document,
    arity_cap: usize,
) -> Result<(String, opdcat::multicat::Multicategory), CliError> {
    let (name, m) = expect_multicat(doc)?;
    let cap = effective_arity(&m, arity_cap);
    let report = opdcat::multicat::check_multicategory(&m, cap);
    if !report.is_valid() {
        return Err(CliError(format!(
            "{name}: input fails the multicategory laws: {:?}",
            report.violations
        )));
    }
    Ok((name, m))
}

fn valid_enriched(
    doc: Document,
) -> Result<(String, opdcat::enrich::EnrichedCategory), CliError> {
    let (name, c) = expect_enriched(doc)?;
    let report = opdcat::enrich::check_enriched(&c);
    if !report.is_valid() {
        return Err(CliError(format!(
            "{name}: input fails the enriched-category axioms: {:?}",
            report.violations
        )));
    }
    Ok((name, c))
}

fn effective_arity(m: &opdcat::multicat::Multicategory, flag: usize) -> usize {
    m.table_arity_cap().map_or(flag, |t| t.min(flag))
}

// ---------------------------------------------------------------------------
// Commands

fn check_multicat(args: &CommonArgs) -> CmdResult {
    let (name, m) = expect_multicat(load_document(&args.input)?)?;
    let cap = effective_arity(&m, args.arity_cap);
    let report = opdcat::multicat::check_multicategory(&m, cap);
    let pass = report.is_valid();
    Ok((
        json!({
            "name": name,
            "arity_cap": cap,
            "valid": pass,
            "violations": report.violations,
        }),
        pass,
    ))
}

fn operators_cmd(args: &CommonArgs) -> CmdResult {
    let (name, m) = valid_multicat(load_document(&args.input)?, args.arity_cap)?;
    let e = opdcat::multicat::operators(&m, args.degree_cap);
    let report = opdcat::multicat::check_operator_conditions(&e);
    let pass = report.is_valid();
    Ok((
        json!({
            "name": name,
            "degree_cap": args.degree_cap,
            "objects": e.objects().len(),
            "valid": pass,
            "violations": report.violations,
        }),
        pass,
    ))
}

fn roundtrip(args: &CommonArgs) -> CmdResult {
    let (name, m) = valid_multicat(load_document(&args.input)?, args.arity_cap)?;
    let e = opdcat::multicat::operators(&m, args.degree_cap);
    let m2 = opdcat::multicat::multicat_of_operators(&e)?;
    let cap = effective_arity(&m, args.arity_cap);
    let iso = opdcat::multicat::find_isomorphism(&m, &m2, cap);
    let associative_note = opdcat::multicat::find_isomorphism(
        &m,
        &opdcat::multicat::builtin_assoc(),
        cap,
    )
    .map(|_| {
        "the category of operators of this one-color associative pattern is \
         the opposite simplex category truncated at the degree cap"
    });
    let pass = iso.is_some();
    Ok((
        json!({
            "name": name,
            "degree_cap": args.degree_cap,
            "isomorphic": pass,
            "iso": iso,
            "note": associative_note,
        }),
        pass,
    ))
}

fn check_enriched(args: &CommonArgs) -> CmdResult {
    let (name, c) = expect_enriched(load_document(&args.input)?)?;
    let report = opdcat::enrich::check_enriched(&c);
    let pass = report.is_valid();
    Ok((
        json!({
            "name": name,
            "valid": pass,
            "violations": report.violations,
        }),
        pass,
    ))
}

fn free_cat(args: &CommonArgs) -> CmdResult {
    let doc = load_document(&args.input)?;
    let Document::Graph(d) = doc else {
        return Err(CliError(format!(
            "expected a graph document, found kind {:?}",
            doc.kind()
        )));
    };
    let g = d.to_graph();
    let (free, _) = opdcat::enrich::free_enriched(&g)?;
    let up = opdcat::enrich::check_free_universal_property(&g, &free, FREE_BUDGET)?;
    let homs: Vec<Value> = free
        .hom_ob
        .iter()
        .map(|((x, y), ob)| json!({"src": x, "tgt": y, "ob": ob}))
        .collect();
    let pass = up.is_bijective();
    Ok((
        json!({
            "name": d.name,
            "vertices": g.vertices,
            "homs": homs,
            "universal_property": up,
        }),
        pass,
    ))
}

fn iota_cmd(args: &CommonArgs) -> CmdResult {
    let (name, c) = valid_enriched(load_document(&args.input)?)?;
    let mut counts = serde_json::Map::new();
    for n in 0..=args.level_cap {
        let elems = opdcat::enrich::iota(&c, n)?;
        counts.insert(format!("iota{n}"), json!(elems.len()));
    }
    Ok((json!({"name": name, "counts": counts}), true))
}

fn complete(args: &CommonArgs) -> CmdResult {
    let (_, c) = valid_enriched(load_document(&args.input)?)?;
    let iota0 = opdcat::enrich::iota(&c, 0)?.len();
    let iota1 = opdcat::enrich::iota(&c, 1)?.len();
    let pass = opdcat::enrich::is_complete(&c);
    Ok((json!({"iota0": iota0, "iota1": iota1}), pass))
}

fn ffes(args: &CommonArgs) -> CmdResult {
    let doc = load_document(&args.input)?;
    let Document::Functor(d) = doc else {
        return Err(CliError(format!(
            "expected a functor document, found kind {:?}",
            doc.kind()
        )));
    };
    let f = d.to_vfunctor();
    let report = opdcat::enrich::check_vfunctor(&f);
    if !report.is_valid() {
        return Err(CliError(format!(
            "{}: input fails the functor axioms: {:?}",
            d.name, report.violations
        )));
    }
    let ff = opdcat::enrich::is_fully_faithful(&f);
    let es = opdcat::enrich::is_essentially_surjective(&f);
    let ie = opdcat::segal::iota_equivalent(&f);
    Ok((
        json!({
            "name": d.name,
            "fully_faithful": ff,
            "essentially_surjective": es,
            "iota_equivalent": ie,
        }),
        ff && es,
    ))
}

fn cat_equiv(args: &CommonArgs) -> CmdResult {
    let doc = load_document(&args.input)?;
    let Document::EquivalenceDatum(d) = doc else {
        return Err(CliError(format!(
            "expected an equivalence-datum document, found kind {:?}",
            doc.kind()
        )));
    };
    let (f, g, phi, psi) = (
        d.f.to_vfunctor(),
        d.g.to_vfunctor(),
        d.phi.to_vfunctor(),
        d.psi.to_vfunctor(),
    );
    let pass = opdcat::enrich::is_categorical_equivalence_datum(&f, &g, &phi, &psi)?;
    Ok((json!({"name": d.name, "equivalence": pass}), pass))
}

fn segal_check(args: &CommonArgs) -> CmdResult {
    let doc = load_document(&args.input)?;
    let Document::SimplicialSet(d) = doc else {
        return Err(CliError(format!(
            "expected a simplicial-set document, found kind {:?}",
            doc.kind()
        )));
    };
    let x = d.to_sset();
    let report = opdcat::segal::check_sset(&x);
    let valid = report.is_valid();
    let segal = valid && opdcat::segal::is_segal(&x);
    let complete = if segal {
        opdcat::segal::is_complete_segal(&x).ok()
    } else {
        None
    };
    Ok((
        json!({
            "name": d.name,
            "valid": valid,
            "violations": report.violations,
            "segal": segal,
            "complete": complete,
        }),
        valid && segal,
    ))
}

fn groupoid_check(args: &CommonArgs) -> CmdResult {
    let doc = load_document(&args.input)?;
    match doc {
        Document::SimplicialSet(d) => {
            let x = d.to_sset();
            let valid = opdcat::segal::check_sset(&x).is_valid();
            let groupoid = valid && opdcat::segal::is_groupoid_object(&x);
            Ok((
                json!({"name": d.name, "valid": valid, "groupoid": groupoid}),
                valid && groupoid,
            ))
        }
        Document::Enriched(d) => {
            let (name, c) = valid_enriched(Document::Enriched(d))?;
            let x = opdcat::segal::iota_sset(&c, args.dim_cap)?;
            let valid = opdcat::segal::check_sset(&x).is_valid();
            let groupoid = valid && opdcat::segal::is_groupoid_object(&x);
            let core = opdcat::segal::core_invariants(&c);
            Ok((
                json!({
                    "name": name,
                    "valid": valid,
                    "groupoid": groupoid,
                    "core": core,
                }),
                valid && groupoid,
            ))
        }
        other => Err(CliError(format!(
            "expected a simplicial-set or enriched-category document, found kind {:?}",
            other.kind()
        ))),
    }
}

fn presheaf_check(args: &CommonArgs) -> CmdResult {
    let (name, c) = valid_enriched(load_document(&args.input)?)?;
    let report =
        opdcat::segal::presheaf::segal_presheaf_check(&c, args.level_cap, PRESHEAF_BUDGET)?;
    let pass = report.all_squares_commute();
    let failing: Vec<&opdcat::segal::presheaf::PresheafSquare> =
        report.squares.iter().filter(|s| !s.bijective).collect();
    Ok((
        json!({
            "name": name,
            "level_cap": report.level_cap,
            "squares": report.squares.len(),
            "all_commute": pass,
            "failing": failing,
        }),
        pass,
    ))
}

fn anodyne_build(args: &AnodyneBuildArgs) -> CmdResult {
    if args.n == 0 {
        return Err(CliError("--N must be at least 1".into()));
    }
    let cert = opdcat::anodyne::build_filtration(args.n, args.dim_cap)?;
    Ok((serde_json::to_value(&cert).map_err(CliError::from)?, true))
}

fn anodyne_verify(args: &CommonArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError(format!("{}: {e}", args.input.display())))?;
    let cert: opdcat::anodyne::FiltrationCertificate =
        serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", args.input.display())))?;
    let report = opdcat::anodyne::verify_certificate(&cert);
    let pass = report.is_valid();
    Ok((
        json!({
            "N": cert.n,
            "dim": cert.dim,
            "attached": report.attached,
            "valid": pass,
            "violations": report.violations,
        }),
        pass,
    ))
}

fn sym_cmd(args: &CommonArgs) -> CmdResult {
    let (name, m) = valid_multicat(load_document(&args.input)?, args.arity_cap)?;
    let s = opdcat::multicat::symmetrize(&m);
    let colors = m.colors();
    let cap = effective_arity(&m, args.arity_cap);
    let mut counts = Vec::new();
    let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..=cap {
        for inputs in &tuples {
            for output in &colors {
                let ops = s.sym_multihom(inputs, output)?;
                if !ops.is_empty() {
                    counts.push(json!({
                        "inputs": inputs,
                        "output": output,
                        "ops": ops.len(),
                    }));
                }
            }
        }
        tuples = tuples
            .iter()
            .flat_map(|t| {
                colors.iter().map(move |c| {
                    let mut t2 = t.clone();
                    t2.push(c.clone());
                    t2
                })
            })
            .collect();
    }
    Ok((json!({"name": name, "arity_cap": cap, "multihom": counts}), true))
}

fn validate_corpus(args: &CommonArgs) -> CmdResult {
    let manifest_path = if args.input.is_dir() {
        args.input.join("manifest.json")
    } else {
        args.input.clone()
    };
    let root = manifest_path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default();
    let text = std::fs::read_to_string(&manifest_path)
        .map_err(|e| CliError(format!("{}: {e}", manifest_path.display())))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| CliError(format!("{}: {e}", manifest_path.display())))?;
    let mut findings = Vec::new();
    let mut checked = 0usize;
    for entry in &manifest.documents {
        let doc = load_document(&root.join(&entry.path))?;
        if doc.name() != entry.name || doc.kind() != entry.kind {
            findings.push(format!(
                "{}: manifest entry ({}, {}) does not match document ({}, {})",
                entry.path,
                entry.name,
                entry.kind,
                doc.name(),
                doc.kind()
            ));
        }
        findings.extend(opdcat::corpus::validate_document(&doc));
        checked += 1;
    }
    let pass = findings.is_empty();
    Ok((
        json!({
            "manifest": manifest_path.display().to_string(),
            "documents": checked,
            "findings": findings,
        }),
        pass,
    ))
}
