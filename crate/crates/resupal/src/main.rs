use clap::{Parser, Subcommand, ValueEnum};

use resupal::cli::{
    cmd_check, cmd_cohomology, cmd_extend, cmd_invariants, cmd_isomorphic, cmd_orbits,
    cmd_pmaps, cmd_reproduce, CoeffKind, CohomologyOpts,
};

#[derive(Parser)]
#[command(
    name = "resupal",
    about = "Exact computations with restricted Lie superalgebras over small finite fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffArg {
    Trivial,
    Adjoint,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the superalgebra axioms (and p-map axioms, if a p-map is given)
    Check {
        /// Algebra file or catalog:NAME
        target: String,
        /// Prime to realize the algebra over (default: file's p, or 3)
        #[arg(long)]
        p: Option<u32>,
        /// Base field degree for catalog targets (1 or 2)
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
    },
    /// Print the invariant fingerprint at one or more primes
    Invariants {
        target: String,
        /// Comma-separated primes
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 5, 7, 11])]
        p: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
    },
    /// Cohomology dimensions and representatives
    Cohomology {
        target: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
        /// Cochain degree
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Coefficient module
        #[arg(long, value_enum, default_value_t = CoeffArg::Trivial)]
        coeff: CoeffArg,
        /// Restricted cohomology (needs a p-map; degrees 1 and 2)
        #[arg(long)]
        restricted: bool,
        /// Even subcomplex of the restricted degree-2 space
        #[arg(long)]
        plus_even: bool,
        /// Which recorded p-map to use (0-based)
        #[arg(long, default_value_t = 0)]
        pmap_index: usize,
    },
    /// Adjoin a central element along a degree-2 cocycle
    Extend {
        target: String,
        /// Cocycle expression, e.g. "D{2,3}" or "2*D22 - D13"
        #[arg(long)]
        cocycle: String,
        /// Name of the new central basis element
        #[arg(long, default_value = "X")]
        name: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
    },
    /// Enumerate p|2p-structures and group them into isomorphism classes
    Pmaps {
        target: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
    },
    /// Automorphism orbits of degree-2 scalar cocycles
    Orbits {
        target: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
        /// Partition the full cocycle space instead of cohomology classes
        #[arg(long)]
        strict: bool,
    },
    /// Decide graded isomorphism: exit 0 witness, 3 distinct, 4 inconclusive
    Isomorphic {
        target_a: String,
        target_b: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        field_degree: u8,
    },
    /// Regenerate the classification and invariant reports
    Reproduce {
        /// all, invariants, cocycles, classif3, classif4, pmap4, k-families
        #[arg(long, default_value = "all")]
        tables: String,
        #[arg(long, value_delimiter = ',', default_values_t = [3u32])]
        p: Vec<u32>,
        /// Directory to write reports into (default: stdout)
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match &cli.command {
        Command::Check { target, p, field_degree } => cmd_check(target, *p, *field_degree, &mut out),
        Command::Invariants { target, p, field_degree } => {
            cmd_invariants(target, p, *field_degree, &mut out)
        }
        Command::Cohomology {
            target,
            p,
            field_degree,
            degree,
            coeff,
            restricted,
            plus_even,
            pmap_index,
        } => {
            let opts = CohomologyOpts {
                degree: *degree,
                coeff: match coeff {
                    CoeffArg::Trivial => CoeffKind::Trivial,
                    CoeffArg::Adjoint => CoeffKind::Adjoint,
                },
                restricted: *restricted,
                plus_even: *plus_even,
                pmap_index: *pmap_index,
            };
            cmd_cohomology(target, *p, *field_degree, &opts, &mut out)
        }
        Command::Extend { target, cocycle, name, p, field_degree } => {
            cmd_extend(target, *p, *field_degree, cocycle, name, &mut out)
        }
        Command::Pmaps { target, p, field_degree } => cmd_pmaps(target, *p, *field_degree, &mut out),
        Command::Orbits { target, p, field_degree, strict } => {
            cmd_orbits(target, *p, *field_degree, *strict, &mut out)
        }
        Command::Isomorphic { target_a, target_b, p, field_degree } => {
            cmd_isomorphic(target_a, target_b, *p, *field_degree, &mut out)
        }
        Command::Reproduce { tables, p, out: out_dir } => {
            cmd_reproduce(tables, p, out_dir.as_deref(), &mut out)
        }
    };
    print!("{out}");
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
