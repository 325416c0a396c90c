//! Command-line surface for the linear Ramsey graph toolkit.
//!
//! Exit codes: 0 success / verification pass, 1 domain failure (verification
//! fail, invalid template), 2 usage or parse error.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use lrg::clique::{verify, BoundsVector, Method};
use lrg::colouring::LinearColouring;
use lrg::compound::{build, predicts_cyclic, restricted_verify, CompoundRecipe, Provenance};
use lrg::growth::{abbott_r5, catalog_report, growth_factor, limiting_growth_rate, reverify_restricted};
use lrg::search::{exhaustive, randomised, residue_colouring, ExhaustiveOptions};
use lrg::template::{find_tf_templates, validate_template};
use lrg::{Error, VerificationReport};

#[derive(Parser)]
#[command(name = "lrg", version, about = "Linear Ramsey graph toolkit")]
struct Cli {
    /// Output format for reports
    #[arg(long, global = true, value_parser = ["text", "records"], default_value = "text")]
    format: String,

    /// Worker threads for internal parallelism (0 = automatic); results do
    /// not depend on this
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a colouring file against per-colour clique bounds
    Verify(VerifyArgs),
    /// Compound two prototype colourings into a larger one
    Compound(CompoundArgs),
    /// List or validate triangle-free templates in a colouring
    Template(TemplateArgs),
    /// Search for prototype colourings
    Search(SearchArgs),
    /// Growth-factor and limiting-rate arithmetic
    Growth(GrowthArgs),
    /// Verify a catalog directory and print its table
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Colouring file
    file: PathBuf,
    /// Per-colour clique bounds, comma separated (k1,k2,...)
    #[arg(long, value_delimiter = ',', required = true)]
    bounds: Vec<u32>,
    /// Use the restricted compound check instead of a full search
    #[arg(long, requires = "recipe")]
    restricted: bool,
    /// Provenance record describing how the compound was built
    #[arg(long)]
    recipe: Option<PathBuf>,
}

#[derive(Args)]
struct CompoundArgs {
    /// First prototype (carries the template)
    u_file: PathBuf,
    /// Second prototype (supplies the replacement colours)
    v_file: PathBuf,
    /// Template colour in the first prototype (must be its last colour)
    #[arg(long)]
    template_colour: u32,
    /// Output colouring file; a `.prov` side-record is written next to it
    #[arg(short, long)]
    out: PathBuf,
    /// Clique bounds claimed for the first prototype (defaults to its
    /// computed clique numbers plus one, template colour 3)
    #[arg(long, value_delimiter = ',')]
    u_bounds: Option<Vec<u32>>,
    /// Clique bounds claimed for the second prototype (defaults to its
    /// computed clique numbers plus one)
    #[arg(long, value_delimiter = ',')]
    v_bounds: Option<Vec<u32>>,
    /// Skip full re-verification of the prototypes (requires explicit
    /// --u-bounds and --v-bounds)
    #[arg(long, requires = "u_bounds", requires = "v_bounds")]
    trust_prototypes: bool,
}

#[derive(Args)]
struct TemplateArgs {
    /// Colouring file
    file: PathBuf,
    /// Validate one colour instead of listing all templates
    #[arg(long)]
    colour: Option<u32>,
}

#[derive(Args)]
struct SearchArgs {
    /// Order of the colourings to enumerate
    #[arg(long, required_unless_present = "residue")]
    order: Option<u32>,
    /// Per-colour clique bounds, comma separated
    #[arg(long, value_delimiter = ',', required_unless_present = "residue")]
    bounds: Option<Vec<u32>>,
    /// Keep only colourings with a triangle-free template in the last colour
    #[arg(long)]
    require_template: bool,
    /// Emit at most this many colourings (the reported count stays exact)
    #[arg(long)]
    limit: Option<usize>,
    /// Print only the exact count
    #[arg(long)]
    count_only: bool,
    /// Factor out bounds-preserving colour permutations
    #[arg(long)]
    canonical: bool,
    /// Override the enumeration size guard
    #[arg(long)]
    force: bool,
    /// Write results as files into this directory instead of stdout
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Randomised search instead of exhaustive enumeration
    #[arg(long, requires = "iterations")]
    randomised: bool,
    /// Seed for randomised search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iteration budget for randomised search
    #[arg(long)]
    iterations: Option<u64>,
    /// Generate a residue-class colouring of this prime order instead of
    /// searching
    #[arg(long)]
    residue: Option<u32>,
    /// Number of power-residue classes for --residue
    #[arg(long, default_value_t = 2)]
    classes: u32,
    /// Colour of each residue class for --residue (defaults to 1,2,...,classes)
    #[arg(long, value_delimiter = ',')]
    assign: Option<Vec<u32>>,
}

#[derive(Args)]
struct GrowthArgs {
    /// Graph order m
    #[arg(long)]
    order: u32,
    /// Colour count of the graph: prints the growth factor (2m-1)^(1/r)
    #[arg(long, conflicts_with = "proto_colours")]
    colours: Option<u32>,
    /// Colour count of a first prototype: prints the limiting growth rate
    /// (m-1)^(1/(q-1))
    #[arg(long)]
    proto_colours: Option<u32>,
    /// Square the limiting rate (triangle series to k=5 series)
    #[arg(long, requires = "proto_colours")]
    abbott: bool,
}

#[derive(Args)]
struct CatalogArgs {
    /// Directory of `<signature>-<order>[-variant].lrg` files
    dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let records = cli.format == "records";
    match run(cli.command, records) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        // domain failures
        Error::TemplateMissingLongest { .. }
        | Error::TemplateTriangle { .. }
        | Error::EmptyTemplate
        | Error::InvalidRecipe(_) => 1,
        // everything else is a usage, parse or environment problem
        _ => 2,
    }
}

fn run(command: Command, records: bool) -> Result<ExitCode, Error> {
    match command {
        Command::Verify(args) => cmd_verify(args, records),
        Command::Compound(args) => cmd_compound(args, records),
        Command::Template(args) => cmd_template(args, records),
        Command::Search(args) => cmd_search(args),
        Command::Growth(args) => cmd_growth(args),
        Command::Catalog(args) => cmd_catalog(args, records),
    }
}

fn read_colouring(path: &Path) -> Result<LinearColouring, Error> {
    LinearColouring::parse(&std::fs::read_to_string(path)?)
}

fn print_report(report: &VerificationReport, records: bool) {
    if records {
        print!("{}", report.render_records());
    } else {
        print!("{}", report.render_text());
    }
}

fn pass_code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(args: VerifyArgs, records: bool) -> Result<ExitCode, Error> {
    let col = read_colouring(&args.file)?;
    let bounds = BoundsVector::new(args.bounds)?;
    let report = if args.restricted {
        let recipe_path = args.recipe.expect("clap enforces --recipe");
        let prov = Provenance::parse(&std::fs::read_to_string(&recipe_path)?)?;
        reverify_restricted(&recipe_path, &prov, &col, &bounds)?
    } else {
        verify(&col, &bounds)?
    };
    print_report(&report, records);
    Ok(pass_code(report.pass))
}

fn cmd_compound(args: CompoundArgs, records: bool) -> Result<ExitCode, Error> {
    let u = read_colouring(&args.u_file)?;
    let v = read_colouring(&args.v_file)?;

    let u_bounds = match args.u_bounds {
        Some(b) => BoundsVector::new(b)?,
        None => derived_bounds(&u, Some(args.template_colour))?,
    };
    let v_bounds = match args.v_bounds {
        Some(b) => BoundsVector::new(b)?,
        None => derived_bounds(&v, None)?,
    };

    if !args.trust_prototypes {
        let ru = verify(&u, &u_bounds)?;
        if !ru.pass {
            eprintln!("first prototype fails its bounds {u_bounds}:");
            eprint!("{}", ru.render_text());
            return Ok(ExitCode::from(1));
        }
        let rv = verify(&v, &v_bounds)?;
        if !rv.pass {
            eprintln!("second prototype fails its bounds {v_bounds}:");
            eprint!("{}", rv.render_text());
            return Ok(ExitCode::from(1));
        }
    }

    let recipe = CompoundRecipe::new(u, u_bounds, args.template_colour, v, v_bounds)?;
    let result = build(&recipe)?;
    let w_bounds = recipe.w_bounds();
    let report = restricted_verify(&result, &w_bounds)?;

    let prov = result.provenance(
        &args.u_file.to_string_lossy(),
        &args.v_file.to_string_lossy(),
        Method::Restricted,
    );
    let template = recipe.template();
    let theta: Vec<String> = template.theta().lengths().iter().map(|l| l.to_string()).collect();
    let comments = [
        format!(
            "compound of {} and {}",
            args.u_file.display(),
            args.v_file.display()
        ),
        format!(
            "template colour {} theta {{{}}} phi {} bounds {}",
            template.colour(),
            theta.join(","),
            template.phi(),
            w_bounds
        ),
    ];
    let comment_refs: Vec<&str> = comments.iter().map(|s| s.as_str()).collect();
    std::fs::write(&args.out, result.w().serialize_with_comments(&comment_refs))?;
    let prov_path = prov_sibling(&args.out);
    std::fs::write(&prov_path, prov.render())?;

    eprintln!(
        "wrote {} (order {}, {} colours, predicted cyclic: {}) and {}",
        args.out.display(),
        result.w().order(),
        result.w().colour_count(),
        predicts_cyclic(&recipe),
        prov_path.display()
    );
    print_report(&report, records);
    Ok(pass_code(report.pass))
}

fn prov_sibling(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".prov");
    out.with_file_name(name)
}

/// Tight bounds for a prototype: each colour's clique number plus one; for
/// the template colour the bound must be exactly 3.
fn derived_bounds(col: &LinearColouring, template_colour: Option<u32>) -> Result<BoundsVector, Error> {
    let mut ks = Vec::with_capacity(col.colour_count() as usize);
    for set in col.length_sets() {
        let (clique, _) = lrg::clique::clique_number(&set);
        if template_colour == Some(set.colour()) {
            if clique > 2 {
                return Err(Error::TemplateTriangle {
                    colour: set.colour(),
                    a: 0,
                    b: 0,
                    sum: 0,
                });
            }
            ks.push(3);
        } else {
            ks.push((clique + 1).max(2));
        }
    }
    BoundsVector::new(ks)
}

fn cmd_template(args: TemplateArgs, records: bool) -> Result<ExitCode, Error> {
    let col = read_colouring(&args.file)?;
    match args.colour {
        Some(s) => {
            let t = validate_template(&col, s)?;
            let theta: Vec<String> = t.theta().lengths().iter().map(|l| l.to_string()).collect();
            if records {
                println!("colour={} theta={} phi={}", t.colour(), theta.join(","), t.phi());
            } else {
                println!(
                    "colour {}: theta {{{}}} phi {}",
                    t.colour(),
                    theta.join(","),
                    t.phi()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let templates = find_tf_templates(&col);
            for t in &templates {
                let theta: Vec<String> =
                    t.theta().lengths().iter().map(|l| l.to_string()).collect();
                if records {
                    println!("colour={} theta={} phi={}", t.colour(), theta.join(","), t.phi());
                } else {
                    println!(
                        "colour {}: theta {{{}}} phi {}",
                        t.colour(),
                        theta.join(","),
                        t.phi()
                    );
                }
            }
            if !records {
                println!("{} template(s)", templates.len());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, Error> {
    if let Some(p) = args.residue {
        let assignment: Vec<u32> = args
            .assign
            .unwrap_or_else(|| (1..=args.classes).collect());
        let col = residue_colouring(p, args.classes, &assignment)?;
        emit_colourings(&[col], args.out_dir.as_deref(), "residue", p)?;
        return Ok(ExitCode::SUCCESS);
    }

    let order = args.order.expect("clap enforces --order");
    let bounds = BoundsVector::new(args.bounds.expect("clap enforces --bounds"))?;

    let found = if args.randomised {
        let iterations = args.iterations.expect("clap enforces --iterations");
        let found = randomised(order, &bounds, args.require_template, args.seed, iterations)?;
        if args.count_only {
            println!("{}", found.len());
            return Ok(ExitCode::SUCCESS);
        }
        found
    } else {
        let opts = ExhaustiveOptions {
            require_template: args.require_template,
            canonical: args.canonical,
            limit: if args.count_only { Some(0) } else { args.limit },
            force: args.force,
        };
        let outcome = exhaustive(order, &bounds, &opts)?;
        if args.count_only {
            println!("{}", outcome.count);
            return Ok(ExitCode::SUCCESS);
        }
        eprintln!("{} satisfying colouring(s)", outcome.count);
        outcome.found
    };

    let sig: Vec<String> = bounds.as_slice().iter().map(|k| k.to_string()).collect();
    emit_colourings(&found, args.out_dir.as_deref(), &sig.join("_"), order)?;
    Ok(ExitCode::SUCCESS)
}

fn emit_colourings(
    found: &[LinearColouring],
    out_dir: Option<&Path>,
    signature: &str,
    order: u32,
) -> Result<(), Error> {
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (i, col) in found.iter().enumerate() {
                let name = if found.len() == 1 {
                    format!("{signature}-{order}.lrg")
                } else {
                    format!("{signature}-{order}-{i:03}.lrg")
                };
                let path = dir.join(name);
                std::fs::write(&path, col.serialize())?;
                println!("{}", path.display());
            }
        }
        None => {
            for (i, col) in found.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", col.serialize());
            }
        }
    }
    Ok(())
}

fn cmd_growth(args: GrowthArgs) -> Result<ExitCode, Error> {
    let value = match (args.colours, args.proto_colours) {
        (Some(r), None) => growth_factor(args.order, r)?,
        (None, Some(q)) => {
            let rate = limiting_growth_rate(args.order, q)?;
            if args.abbott {
                abbott_r5(rate)?
            } else {
                rate
            }
        }
        _ => {
            return Err(Error::ArgumentRange(
                "pass exactly one of --colours or --proto-colours".into(),
            ))
        }
    };
    println!("{value:.4}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(args: CatalogArgs, records: bool) -> Result<ExitCode, Error> {
    let report = catalog_report(&args.dir)?;
    if records {
        print!("{}", report.render_records());
    } else {
        print!("{}", report.render_text());
    }
    Ok(pass_code(report.all_ok()))
}
