use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rigrep::doc::{
    document_of_mv, document_of_rig, emit, parse_mv, parse_rig,
};
use rigrep::dot::{order_dot, presheaf_dot};
use rigrep::error::{Error, Result};
use rigrep::generate::{parse_generator, Generated};
use rigrep::localization::{localize, localize_at, submonoid_closure};
use rigrep::mv::{mv_from_rig, rig_from_mv};
use rigrep::represent::{build_representation, support_map, unit_section_iso};
use rigrep::reticulation::reticulate;
use rigrep::rig::FiniteRig;
use rigrep::spectrum::spectrum;
use rigrep::verify::run_suite;

/// Finite integral rigs: validation, localization, reticulation, spectra,
/// sheaf representation, and the MV bridge, over JSON operation tables.
#[derive(Parser)]
#[command(name = "rigrep", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Algebra document; stdin when omitted.
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the rig laws on a document.
    Validate(Input),
    /// Describe the canonical order and the special elements.
    Info(Input),
    /// Print the reticulation lattice; the unit map goes to stderr.
    Reticulate(Input),
    /// List the points: morphisms onto the truth values.
    Spectrum(Input),
    /// Invert one element or a whole submonoid.
    Localize {
        /// Label of the element to invert.
        #[arg(long, conflicts_with = "monoid")]
        at: Option<String>,
        /// Comma-separated labels generating the submonoid to invert.
        #[arg(long, value_delimiter = ',')]
        monoid: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Build the sheaf over the reticulation and report on it.
    Represent(Input),
    /// Run the whole invariant suite against one algebra.
    Verify(Input),
    /// Convert between rig and MV documents.
    Mv {
        #[command(subcommand)]
        dir: MvCmd,
    },
    /// Emit a generated algebra, e.g. `gen lukasiewicz 3`.
    Gen {
        /// Generator words: trivial, two, chain N, lukasiewicz N, boolean K,
        /// sat N, v5, lambda5, random SIZE [--seed S], product A B, mv A.
        #[arg(required = true, allow_hyphen_values = true)]
        spec: Vec<String>,
    },
    /// Draw DOT: the order's Hasse diagram or the representation sheaf.
    Dot {
        /// Hasse diagram of the canonical order.
        #[arg(long, conflicts_with = "presheaf")]
        poset: bool,
        /// The sheaf over the reticulation, fibers and restrictions.
        #[arg(long)]
        presheaf: bool,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum MvCmd {
    /// Read an MV document, emit the equivalent rig document.
    ToRig(Input),
    /// Read a Wajsberg rig document, emit the MV document.
    FromRig(Input),
}

fn read_input(input: &Input) -> Result<String> {
    match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn read_rig(input: &Input) -> Result<FiniteRig> {
    parse_rig(&read_input(input)?)
}

fn label_list(rig: &FiniteRig, xs: &[usize]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.iter()
            .map(|&x| rig.label(x).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn resolve_label(rig: &FiniteRig, label: &str) -> Result<usize> {
    rig.label_index(label)
        .ok_or_else(|| Error::Parse(format!("unknown label `{label}`")))
}

fn counted(n: usize) -> String {
    if n == 1 {
        "1 element".to_string()
    } else {
        format!("{n} elements")
    }
}

fn cmd_info(rig: &FiniteRig) {
    let ord = rig.canonical_order();
    println!("name: {}", rig.name());
    println!("elements: {}", rig.size());
    println!("integral: {}", if rig.is_integral() { "yes" } else { "no" });
    println!(
        "order: {}",
        if ord.is_total() { "total" } else { "partial" }
    );
    println!(
        "distributive lattice: {}",
        if rig.is_distributive_lattice() { "yes" } else { "no" }
    );
    println!(
        "really local: {}",
        if rig.is_really_local() { "yes" } else { "no" }
    );
    let booleans: Vec<usize> = rig
        .elements()
        .filter(|&x| rig.complement_of(x).is_some())
        .collect();
    let strong: Vec<usize> = rig
        .elements()
        .filter(|&x| rig.is_strongly_idempotent(x))
        .collect();
    let nilpotent: Vec<usize> = rig.elements().filter(|&x| rig.is_nilpotent(x)).collect();
    println!("boolean elements: {}", label_list(rig, &booleans));
    println!("strongly idempotent: {}", label_list(rig, &strong));
    println!("nilpotent: {}", label_list(rig, &nilpotent));
    println!("invertible: {}", label_list(rig, &rig.invertible_elements()));
}

fn cmd_spectrum(rig: &FiniteRig) {
    let points = spectrum(rig);
    println!("points: {}", points.len());
    for (i, p) in points.iter().enumerate() {
        println!("point {i}: filter {{{}}}", label_list(rig, &p.filter));
    }
}

fn cmd_represent(rig: &FiniteRig) -> Result<()> {
    let rep = build_representation(rig)?;
    println!("source: {} ({})", rig.name(), counted(rig.size()));
    println!(
        "base: {} ({})",
        rep.lattice().name(),
        counted(rep.lattice().size())
    );
    println!("fibers:");
    for d in rep.lattice().elements() {
        println!(
            "  {}: {} ({})",
            rep.lattice().label(d),
            rep.fiber(d).name(),
            counted(rep.fiber(d).size())
        );
    }
    println!(
        "unit iso at top: {}",
        if rep.unit_iso.is_bijective() { "verified" } else { "failed" }
    );
    let sm = support_map(&rep)?;
    println!(
        "support map: local morphism into the down-set sheaf on {} opens",
        sm.lambda.base().size()
    );
    let (sections, iso) = unit_section_iso(&rep);
    println!(
        "sections over the points: {} ({})",
        sections.rig.size(),
        if iso.is_bijective() { "bijective comparison" } else { "comparison failed" }
    );
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Validate(input) => {
            let rig = read_rig(input)?;
            println!(
                "ok: `{}` satisfies the rig laws ({})",
                rig.name(),
                counted(rig.size())
            );
        }
        Cmd::Info(input) => cmd_info(&read_rig(input)?),
        Cmd::Reticulate(input) => {
            let rig = read_rig(input)?;
            let retic = reticulate(&rig)?;
            print!("{}", emit(&document_of_rig(&retic.lattice)));
            let unit: Vec<String> = retic.unit.map().iter().map(|v| v.to_string()).collect();
            eprintln!("unit: [{}]", unit.join(","));
        }
        Cmd::Spectrum(input) => cmd_spectrum(&read_rig(input)?),
        Cmd::Localize { at, monoid, input } => {
            let rig = read_rig(input)?;
            let (quotient, _unit, inverted) = match (at, monoid.is_empty()) {
                (Some(label), _) => {
                    let a = resolve_label(&rig, label)?;
                    let (q, u) = localize_at(&rig, a)?;
                    (q, u, vec![a])
                }
                (None, false) => {
                    let gens = monoid
                        .iter()
                        .map(|l| resolve_label(&rig, l))
                        .collect::<Result<Vec<usize>>>()?;
                    let f = submonoid_closure(&rig, &gens);
                    let (q, u) = localize(&rig, &f)?;
                    (q, u, gens)
                }
                (None, true) => {
                    return Err(Error::Parse(
                        "pass --at <label> or --monoid <labels>".into(),
                    ))
                }
            };
            print!("{}", emit(&document_of_rig(&quotient)));
            for &a in &inverted {
                if rig.is_nilpotent(a) {
                    eprintln!(
                        "note: `{}` is nilpotent, so the localization is trivial",
                        rig.label(a)
                    );
                }
            }
        }
        Cmd::Represent(input) => cmd_represent(&read_rig(input)?)?,
        Cmd::Verify(input) => {
            let rig = read_rig(input)?;
            let report = run_suite(&rig);
            print!("{}", report.text());
            if !report.ok {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Mv { dir } => match dir {
            MvCmd::ToRig(input) => {
                let m = parse_mv(&read_input(input)?)?;
                let (rig, _) = rig_from_mv(&m)?;
                print!("{}", emit(&document_of_rig(&rig)));
            }
            MvCmd::FromRig(input) => {
                let rig = read_rig(input)?;
                let m = mv_from_rig(&rig)?;
                print!("{}", emit(&document_of_mv(&m)));
            }
        },
        Cmd::Gen { spec } => match parse_generator(spec)? {
            Generated::Rig(rig) => print!("{}", emit(&document_of_rig(&rig))),
            Generated::Algebra(m) => print!("{}", emit(&document_of_mv(&m))),
        },
        Cmd::Dot {
            poset,
            presheaf,
            input,
        } => {
            let rig = read_rig(input)?;
            if *presheaf {
                let rep = build_representation(&rig)?;
                print!("{}", presheaf_dot(&rep.sheaf));
            } else if *poset {
                print!("{}", order_dot(&rig));
            } else {
                return Err(Error::Parse("pass --poset or --presheaf".into()));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::Shape(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
