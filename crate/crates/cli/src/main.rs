//! `vasskit`: chord diagrams, weight systems, Vassiliev invariants, the
//! numerical Kontsevich integral and Gaussian moments from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "vasskit", version, about = "Finite-type knot invariants, weight systems and the Kontsevich integral")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for the Kontsevich quadrature.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chord diagrams on an oriented circle: enumeration up to rotation,
    /// canonical forms, four-term relations and isolated chords.
    #[command(subcommand)]
    Chords(ChordsCmd),
    /// Lie algebra weight systems: trace of generator products inserted at
    /// chord ends, structure constants and the quadratic Casimir.
    Weights(WeightsArgs),
    /// Check that a weight system kills every four-term combination.
    Fourterm(FourtermArgs),
    /// Conway polynomial (by skein recursion) or its z^2 coefficient.
    Invariant(InvariantArgs),
    /// Extension of an invariant to knots with rigid double points.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Low-order Kontsevich integral of a Morse knot by quadrature over the
    /// time simplex with the 1/z kernel.
    #[command(subcommand)]
    Kontsevich(KontsevichCmd),
    /// Gaussian integrals as equivalence classes modulo total derivatives:
    /// moments, reductions of polynomial prefactors and the source series.
    Moments(MomentsArgs),
}

#[derive(Subcommand, Debug)]
enum ChordsCmd {
    /// List all order-m diagrams, one per line.
    Enumerate {
        #[arg(long)]
        m: usize,
        /// Also identify mirror images.
        #[arg(long)]
        dihedral: bool,
    },
    /// Canonical representative of a diagram given as "m: (a,b)(c,d)".
    Canonical {
        #[arg(long)]
        diagram: String,
    },
    /// Four-term combinations of order m.
    Fourterm {
        #[arg(long)]
        m: usize,
    },
    /// Order-m diagrams with at least one chord crossed by no other.
    Isolated {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Fundamental representation of su(N), written su2, su3, ...
    #[arg(long, default_value = "su2")]
    algebra: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct WeightTarget {
    /// One diagram, "m: (a,b)(c,d)".
    #[arg(long)]
    diagram: Option<String>,
    /// Every diagram of this order.
    #[arg(long)]
    m: Option<usize>,
    /// Nonzero structure constants f^{abc} with a < b < c.
    #[arg(long)]
    structure: bool,
    /// The Casimir Σ_a T_a T_a.
    #[arg(long)]
    casimir: bool,
}

#[derive(Args, Debug)]
struct WeightsArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[command(flatten)]
    target: WeightTarget,
}

#[derive(Args, Debug)]
struct FourtermArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long)]
    m: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InvariantKind {
    Conway,
    V2,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DiagramInput {
    /// Oriented Gauss code, e.g. "O1+ U2+ O3+ U1+ O2+ U3+"; components of a
    /// link are separated by "|".
    #[arg(long, allow_hyphen_values = true)]
    gauss: Option<String>,
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long)]
    pd: Option<String>,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[arg(value_enum)]
    kind: InvariantKind,
    #[command(flatten)]
    input: DiagramInput,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// V(G) = Σ a^{i+} b^{i-} c^{i0} V(S) over all resolutions of the nodes.
    Extend {
        #[command(flatten)]
        input: DiagramInput,
        /// Crossing labels to turn into nodes, comma separated.
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<u32>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
        #[arg(long, value_enum, default_value_t = InvariantKind::Conway)]
        invariant: InvariantKind,
    },
    /// Value of a type-m invariant on a singular knot realizing an order-m diagram.
    Symbol {
        #[arg(long)]
        diagram: String,
        #[arg(long, value_enum, default_value_t = InvariantKind::V2)]
        invariant: InvariantKind,
        /// Start every finger from the second end of its chord.
        #[arg(long)]
        second_end: bool,
        /// Make ordinary crossings descending instead of ascending.
        #[arg(long)]
        descending: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SchemeArg {
    Log,
    Midpoint,
    Trapezoid,
}

#[derive(Args, Debug)]
struct QuadratureArgs {
    /// Cells per band between consecutive critical heights.
    #[arg(long, default_value_t = 64)]
    subdiv: usize,
    /// Excluded margin around critical heights, as a fraction of the
    /// smallest critical gap.
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[arg(long, value_enum, default_value_t = SchemeArg::Log)]
    scheme: SchemeArg,
}

#[derive(Subcommand, Debug)]
enum KontsevichCmd {
    /// Crossed order-two coefficient of a knot minus that of an unknot with
    /// the same number of maxima.
    V2 {
        #[arg(long)]
        knot: PathBuf,
        #[arg(long)]
        unknot: PathBuf,
        #[command(flatten)]
        quad: QuadratureArgs,
    },
    /// Coefficient of one chord diagram of order at most two.
    Coefficient {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        diagram: String,
        #[command(flatten)]
        quad: QuadratureArgs,
    },
    /// Coefficients contracted with a weight system, orders 1..=order.
    Expand {
        #[arg(long)]
        embedding: PathBuf,
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[command(flatten)]
        quad: QuadratureArgs,
    },
    /// Points of the knot at height t.
    Strands {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 0.05)]
        margin: f64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct MomentsArgs {
    /// <x^n>, the class of x^n e^{-x^2/2}.
    #[arg(long)]
    n: Option<usize>,
    /// Class of p(x) e^{-x^2/2}, e.g. "3x^4 - x^2 + 7".
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Coefficients of e^{J^2/2} up to J^N.
    #[arg(long)]
    series: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match commands::run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            match format {
                Format::Json => print!("{}", Report::error_json(&e.to_string())),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(1)
        }
    }
}
