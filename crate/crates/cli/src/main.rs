//! latrad: verify and construct binomial generators up to radical for lattice ideals.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use latrad_core::ci::{ci_search, CiStatus};
use latrad_core::configuration::Configuration;
use latrad_core::constructor::{construct_char0, construct_charp, prepare_full};
use latrad_core::instances::InstanceSpec;
use latrad_core::io::{parse_lattice, parse_vectors, to_json, VectorSet};
use latrad_core::lattice::{Lattice, LatticeVector};
use latrad_core::radical::{
    check_radical_generation, construct_simplex_cover, is_cover, is_cover_with_map, min_cover_size, Characteristic,
};

#[derive(Parser)]
#[command(
    name = "latrad",
    version,
    about = "Check and build binomial generators up to radical for lattice ideals",
    after_help = "Exit status: 0 pass, 1 fail verdict, 2 usage or input error.\n\
                  \nEXAMPLES:\
                  \n  latrad instance veronese33 -o v.json\
                  \n  latrad faces v.json\
                  \n  latrad check-radical --char 3 v.json vectors.json\
                  \n  latrad make-generators --char 0 lattice.json"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the face supports of the cone with separating functionals
    Faces { lattice: PathBuf },
    /// Decide whether a vector set is a cover of the configuration
    CheckCover {
        lattice: PathBuf,
        vectors: PathBuf,
        /// Also list a covering vector for every non-face subset
        #[arg(long)]
        map: bool,
    },
    /// Decide whether the binomials generate the lattice ideal up to radical
    CheckRadical {
        /// Field characteristic: 0 or a prime
        #[arg(long = "char", value_name = "P")]
        characteristic: u64,
        lattice: PathBuf,
        vectors: PathBuf,
    },
    /// Build a cover of m - n binomials (simplex cones only)
    MakeCover { lattice: PathBuf },
    /// Build generators up to radical (full configurations only)
    MakeGenerators {
        #[arg(long = "char", value_name = "P")]
        characteristic: u64,
        lattice: PathBuf,
    },
    /// Search for a complete-intersection certificate
    Ci {
        /// Coefficient bound for candidate basis vectors
        #[arg(long, default_value_t = 2)]
        bound: u32,
        lattice: PathBuf,
    },
    /// Write a built-in or random instance: veronese33, ojeda:M, random:M,R,SEED,BOUND
    Instance {
        spec: String,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smallest cover drawn from a pool of vectors
    MinCover {
        #[arg(long, default_value_t = 8)]
        limit: usize,
        lattice: PathBuf,
        vectors: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_lattice(path: &Path) -> Result<Lattice> {
    parse_lattice(&read(path)?).with_context(|| format!("parsing lattice file {}", path.display()))
}

fn load_vectors(path: &Path, l: &Lattice) -> Result<Vec<LatticeVector>> {
    let set = parse_vectors(&read(path)?).with_context(|| format!("parsing vector file {}", path.display()))?;
    for (k, v) in set.vectors.iter().enumerate() {
        if v.len() != l.ambient() {
            bail!("vector {k} has length {}, lattice ambient is {}", v.len(), l.ambient());
        }
        if !l.contains(v)? {
            bail!("vector {k} = {v} is not in the lattice");
        }
    }
    Ok(set.vectors)
}

fn verdict(pass: bool) -> ExitCode {
    if pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Faces { lattice } => {
            let a = Configuration::of(&load_lattice(&lattice)?)?;
            println!("{}", to_json(&a.enumerate_face_supports()?));
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCover { lattice, vectors, map } => {
            let l = load_lattice(&lattice)?;
            let u = load_vectors(&vectors, &l)?;
            let a = Configuration::of(&l)?;
            let v = if map { is_cover_with_map(&a, &u)? } else { is_cover(&a, &u)? };
            println!("{}", to_json(&v));
            Ok(verdict(v.passed()))
        }
        Command::CheckRadical { characteristic, lattice, vectors } => {
            let ch = Characteristic::new(characteristic)?;
            let l = load_lattice(&lattice)?;
            let u = load_vectors(&vectors, &l)?;
            let v = check_radical_generation(&l, &u, ch)?;
            println!("{}", to_json(&v));
            Ok(verdict(v.passed()))
        }
        Command::MakeCover { lattice } => {
            let l = load_lattice(&lattice)?;
            let a = Configuration::of(&l)?;
            println!("{}", to_json(&VectorSet::unnamed(construct_simplex_cover(&l, &a)?)));
            Ok(ExitCode::SUCCESS)
        }
        Command::MakeGenerators { characteristic, lattice } => {
            let ch = Characteristic::new(characteristic)?;
            let f = prepare_full(&load_lattice(&lattice)?)?;
            let out = match ch {
                Characteristic::Zero => construct_char0(&f)?,
                Characteristic::Prime(p) => construct_charp(&f, p)?,
            };
            println!("{}", to_json(&VectorSet::unnamed(out)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Ci { bound, lattice } => {
            let v = ci_search(&load_lattice(&lattice)?, bound)?;
            println!("{}", to_json(&v));
            Ok(verdict(matches!(v.status, CiStatus::CiCertified { .. })))
        }
        Command::Instance { spec, output } => {
            let inst = spec.parse::<InstanceSpec>()?.resolve()?;
            let text = to_json(&inst.to_file());
            match output {
                Some(path) => fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::MinCover { limit, lattice, vectors } => {
            let l = load_lattice(&lattice)?;
            let u = load_vectors(&vectors, &l)?;
            let a = Configuration::of(&l)?;
            let result = min_cover_size(&a, &u, limit)?;
            println!("{}", to_json(&json!({ "limit": limit, "result": result })));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
