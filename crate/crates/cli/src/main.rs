use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use efb_core::bench::dense_product_counts;
use efb_core::efb::{EfbSymbol, slot_product};
use efb_core::graph::{extract_independent_sets, OPowers};
use efb_core::transform::{efb_to_gamma, gamma_to_efb, hadamard, perm};
use efb_core::{EfbElement, EfbMultivector, GammaMultivector, Graph, MulCounter, Scalar};

#[derive(Parser)]
#[command(name = "efb", version, about = "Clifford algebra products in the extended Fock basis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two multivector expressions (both gamma or both EFB)
    Mul {
        left: String,
        right: String,
        #[arg(long)]
        m: Option<usize>,
        /// Print the number of scalar multiplications
        #[arg(long)]
        count_mults: bool,
    },
    /// Convert an expression to the other basis
    Convert {
        expr: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Independence number and maximum independent sets
    Mis(GraphArgs),
    /// Clique number and maximum cliques (via the complement)
    Clique(GraphArgs),
    /// Print the slot product table, H_m or P_m
    Tables {
        #[arg(long)]
        slot_table: bool,
        #[arg(long)]
        hadamard: bool,
        #[arg(long)]
        perm: bool,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Multiplication counts and timings for dense products
    Bench {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check EFB products against the gamma basis
    Verify {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs checked when exhaustive checking is too large
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file, `-` for standard input
    file: String,
    #[arg(long, value_enum, default_value_t = Format::Dimacs)]
    format: Format,
    /// Vertex count for edge lists
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    complement: bool,
    /// Stop after O^k
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long)]
    count_mults: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Edgelist,
}

type Outcome = Result<(), String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mul { left, right, m, count_mults } => mul(&left, &right, m, count_mults),
        Command::Convert { expr, m } => convert(&expr, m),
        Command::Mis(args) => independent_sets(&args, false),
        Command::Clique(args) => independent_sets(&args, true),
        Command::Tables { slot_table, hadamard, perm, m } => tables(slot_table, hadamard, perm, m),
        Command::Bench { m, seed } => dense_product_counts(m, seed)
            .map(|report| print!("{report}"))
            .map_err(|e| e.to_string()),
        Command::Verify { m, seed, samples } => verify(m, seed, samples),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("efb: {message}");
            ExitCode::FAILURE
        }
    }
}

#[derive(Debug, PartialEq)]
enum Basis {
    Gamma,
    Efb,
}

fn blade_tokens(expr: &str) -> impl Iterator<Item = &str> {
    expr.split('+')
        .filter_map(|term| term.split_once('*').map(|(_, blade)| blade))
        .flat_map(str::split_whitespace)
}

fn detect_basis(expr: &str) -> Result<Basis, String> {
    let mut gamma = false;
    let mut efb = false;
    for token in blade_tokens(expr) {
        if EfbSymbol::from_token(token).is_ok() {
            efb = true;
        } else if token.starts_with('g') || token == "1" {
            gamma = true;
        } else {
            return Err(format!("unknown token `{token}` in `{expr}`"));
        }
    }
    match (gamma, efb) {
        (_, false) => Ok(Basis::Gamma),
        (false, true) => Ok(Basis::Efb),
        (true, true) => Err(format!("`{expr}` mixes gamma and EFB tokens")),
    }
}

// Smallest m that can hold the expression: slot count for EFB, highest
// generator for gamma.
fn infer_m(expr: &str, basis: &Basis) -> Result<usize, String> {
    let m = match basis {
        Basis::Efb => expr
            .split('+')
            .filter_map(|term| term.split_once('*'))
            .map(|(_, blade)| blade.split_whitespace().count())
            .max()
            .unwrap_or(0),
        Basis::Gamma => {
            let mut top = 0;
            for token in blade_tokens(expr).filter(|t| *t != "1") {
                let k: usize = token[1..].parse().map_err(|_| format!("bad generator `{token}`"))?;
                top = top.max(k);
            }
            top.div_ceil(2)
        }
    };
    if m == 0 {
        Err(format!("cannot infer m from `{expr}`, pass --m"))
    } else {
        Ok(m)
    }
}

fn operand_m(exprs: &[&str], basis: &Basis, m: Option<usize>) -> Result<usize, String> {
    if let Some(m) = m {
        return Ok(m);
    }
    let sizes = exprs.iter().map(|e| infer_m(e, basis)).collect::<Result<Vec<_>, _>>()?;
    match basis {
        Basis::Efb if sizes.iter().any(|&s| s != sizes[0]) => {
            Err(format!("operands have different m: {sizes:?}"))
        }
        _ => Ok(sizes.into_iter().max().unwrap()),
    }
}

fn mul(left: &str, right: &str, m: Option<usize>, count_mults: bool) -> Outcome {
    let basis = detect_basis(left)?;
    let other = detect_basis(right)?;
    if basis != other {
        return Err("operands are in different bases".into());
    }
    let m = operand_m(&[left, right], &basis, m)?;
    let mut counter = MulCounter::enabled();
    let product = match basis {
        Basis::Gamma => {
            let a = GammaMultivector::<Scalar>::parse(left, m).map_err(|e| e.to_string())?;
            let b = GammaMultivector::<Scalar>::parse(right, m).map_err(|e| e.to_string())?;
            a.gamma_product_with(&b, &mut counter).map(|p| p.to_string())
        }
        Basis::Efb => {
            let a = EfbMultivector::<Scalar>::parse(left, m).map_err(|e| e.to_string())?;
            let b = EfbMultivector::<Scalar>::parse(right, m).map_err(|e| e.to_string())?;
            a.efb_product_with(&b, &mut counter).map(|p| p.to_string())
        }
    }
    .map_err(|e| e.to_string())?;
    println!("{product}");
    if count_mults {
        println!("multiplications = {}", counter.count());
    }
    Ok(())
}

fn convert(expr: &str, m: Option<usize>) -> Outcome {
    let basis = detect_basis(expr)?;
    let m = operand_m(&[expr], &basis, m)?;
    let text = match basis {
        Basis::Gamma => GammaMultivector::<Scalar>::parse(expr, m)
            .and_then(|a| gamma_to_efb(&a))
            .map(|a| a.to_string()),
        Basis::Efb => EfbMultivector::<Scalar>::parse(expr, m)
            .and_then(|a| efb_to_gamma(&a))
            .map(|a| a.to_string()),
    }
    .map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn independent_sets(args: &GraphArgs, clique: bool) -> Outcome {
    let text = read_input(&args.file)?;
    let graph = match args.format {
        Format::Dimacs => Graph::parse_dimacs(&text),
        Format::Edgelist => Graph::parse_edge_list(&text, args.m),
    }
    .map_err(|e| format!("{}: {e}", args.file))?;
    let mut graph = if args.complement { graph.complement() } else { graph };
    if clique {
        graph = graph.complement();
    }
    let max_k = args.max_k.unwrap_or(graph.m()).min(graph.m());
    if max_k == 0 {
        return Err("--max-k must be at least 1".into());
    }

    let mut powers = OPowers::new(&graph).map_err(|e| e.to_string())?;
    let mut best = powers.current().clone();
    let mut capped = true;
    while powers.k() < max_k {
        if powers.step().map_err(|e| e.to_string())?.is_zero() {
            capped = false;
            break;
        }
        best = powers.current().clone();
    }
    if powers.k() == graph.m() && !powers.current().is_zero() {
        capped = false;
    }
    let k = if powers.current().is_zero() { powers.k() - 1 } else { powers.k() };

    let name = if clique { "omega" } else { "alpha" };
    if capped {
        println!("{name} >= {k}");
    } else {
        println!("{name} = {k}");
    }
    for set in extract_independent_sets(&best) {
        let list: Vec<String> = set.iter().map(usize::to_string).collect();
        println!("{{{}}}", list.join(","));
    }
    if args.count_mults {
        println!("multiplications = {}", powers.multiplications());
    }
    Ok(())
}

fn tables(slot_table: bool, show_hadamard: bool, show_perm: bool, m: usize) -> Outcome {
    if !(slot_table || show_hadamard || show_perm) {
        return Err("choose at least one of --slot-table, --hadamard, --perm".into());
    }
    if slot_table {
        println!("{:>4} {}", "", EfbSymbol::ALL.map(|s| format!("{:>4}", s.token())).join(" "));
        for a in EfbSymbol::ALL {
            let row: Vec<String> = EfbSymbol::ALL
                .iter()
                .map(|&b| format!("{:>4}", slot_product(a, b).map_or("0", EfbSymbol::token)))
                .collect();
            println!("{:>4} {}", a.token(), row.join(" "));
        }
    }
    if show_hadamard {
        println!("H_{m}:");
        print!("{}", hadamard(m).map_err(|e| e.to_string())?);
    }
    if show_perm {
        println!("P_{m}:");
        print!("{}", perm(m).map_err(|e| e.to_string())?);
    }
    Ok(())
}

fn check_pair(a: &EfbMultivector, b: &EfbMultivector) -> Result<bool, String> {
    let via_efb = a.efb_product(b).and_then(|p| efb_to_gamma(&p)).map_err(|e| e.to_string())?;
    let ga = efb_to_gamma(a).map_err(|e| e.to_string())?;
    let gb = efb_to_gamma(b).map_err(|e| e.to_string())?;
    let direct = ga.gamma_product(&gb).map_err(|e| e.to_string())?;
    Ok(via_efb == direct)
}

fn verify(m: usize, seed: u64, samples: usize) -> Outcome {
    let mut checked = 0u64;
    let mut failed = 0u64;
    if m <= 3 {
        let basis: Vec<EfbElement> = EfbElement::all(m).map_err(|e| e.to_string())?.collect();
        for a in &basis {
            for b in &basis {
                checked += 1;
                if !check_pair(&EfbMultivector::blade(*a), &EfbMultivector::blade(*b))? {
                    eprintln!("mismatch: {a} * {b}");
                    failed += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a: EfbMultivector = efb_core::bench::dense_efb(m, &mut rng).map_err(|e| e.to_string())?;
        let b: EfbMultivector = efb_core::bench::dense_efb(m, &mut rng).map_err(|e| e.to_string())?;
        checked += 1;
        if !check_pair(&a, &b)? {
            eprintln!("mismatch on a random dense pair");
            failed += 1;
        }
    }
    println!("m = {m}: {checked} products checked, {failed} mismatches");
    if failed == 0 {
        Ok(())
    } else {
        Err(format!("{failed} of {checked} products disagree with the gamma basis"))
    }
}
