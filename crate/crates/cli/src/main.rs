//! `lowerk` — lower algebraic K-theory of the 32 hyperbolic tetrahedral
//! reflection groups, from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lowerk::assembly::{assemble, KTheoryResult};
use lowerk::catalog::{self, CatalogEntry};
use lowerk::coxeter::{parse_diagram, CoxeterDiagram};
use lowerk::groups::{
    carter_k_minus1_rank, k_classes, parse_group_name, prime_divisors, realize, wh_rank, ClassData,
    FieldDescriptor,
};
use lowerk::stabilizers::{cusp_groups, enumerate_type1};

#[derive(Parser)]
#[command(
    name = "lowerk",
    version,
    about = "Lower algebraic K-theory (Wh, K0~, K-1) of the 32 hyperbolic \
             tetrahedral reflection groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Wh, K0t, Km1, and K<=-2 for one group
    Compute {
        /// Group name, e.g. "[3,5,3]"
        name: Option<String>,
        /// Read a Coxeter matrix file ("rank 4" plus four label rows)
        #[arg(long, value_name = "PATH", conflicts_with = "name")]
        matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Collapse infZ2/Nil multiplicities as in the reference tables
        /// (the default)
        #[arg(long, overrides_with = "exact")]
        normalized: bool,
        /// Report exact multiplicities of infZ2, Nil0, and Nil1
        #[arg(long)]
        exact: bool,
    },
    /// Print the axis stabilizers and cusp groups of one group
    Stabilizers {
        /// Group name, e.g. "[4,3,5]"
        name: Option<String>,
        /// Read a Coxeter matrix file instead of a name
        #[arg(long, value_name = "PATH", conflicts_with = "name")]
        matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print brute-force rank data for a finite group (e.g. "D_5", "S_4 x Z/2")
    Oracle {
        /// Finite group name: D_n, S_4, A_5, Z/2, and x-products of these
        group: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute everything and diff against the bundled reference tables
    Verify {
        /// Verify all 32 groups
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Verify a single group by name
        name: Option<String>,
    },
    /// Print a bundled reference table (2, 3, 4 stabilizers; 6, 7 K-groups)
    Tables {
        /// Table number: 2, 3, 4, 6, or 7
        #[arg(long)]
        which: u32,
        /// Recompute the rows instead of printing the bundled values
        #[arg(long)]
        recomputed: bool,
    },
    /// List the 32 group names, grouped by number of ideal vertices
    List,
}

/// A failed run: exit code plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn computation(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so that piping table output
    // into e.g. `head` ends the process quietly instead of panicking on a
    // closed stdout.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Compute {
            name,
            matrix,
            format,
            exact,
            ..
        } => {
            let d = load_diagram(name.as_deref(), matrix.as_deref())?;
            let result = assemble(&d).map_err(|e| Failure::computation(format!("{e:?}")))?;
            let result = if exact { result } else { result.normalized() };
            print_compute(&label_of(&d), &result, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Stabilizers {
            name,
            matrix,
            format,
        } => {
            let d = load_diagram(name.as_deref(), matrix.as_deref())?;
            let stabs = enumerate_type1(&d)
                .map_err(|e| Failure::computation(format!("{e:?}")))?
                .iter()
                .map(|s| s.render())
                .collect::<Vec<_>>();
            let cusps = cusp_groups(&d)
                .map_err(|e| Failure::computation(format!("{e:?}")))?
                .iter()
                .map(|c| c.render().to_string())
                .collect::<Vec<_>>();
            print_stabilizers(&label_of(&d), &stabs, &cusps, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { group, format } => {
            let t = parse_group_name(&group).map_err(|e| Failure::usage(format!("{e:?}")))?;
            print_oracle(&group, t, format).map_err(|e| Failure::computation(format!("{e:?}")))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { all, name } => run_verify(all, name.as_deref()),
        Command::Tables { which, recomputed } => run_tables(which, recomputed),
        Command::List => {
            run_list();
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Resolve the diagram argument: a name, or a matrix file.
fn load_diagram(name: Option<&str>, matrix: Option<&Path>) -> Result<CoxeterDiagram, Failure> {
    let input = match (name, matrix) {
        (Some(n), None) => n.to_string(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?,
        _ => return Err(Failure::usage("provide a group name or --matrix PATH")),
    };
    parse_diagram(&input).map_err(|e| Failure::usage(format!("{e:?}")))
}

fn label_of(d: &CoxeterDiagram) -> String {
    d.name.clone().unwrap_or_else(|| "custom".to_string())
}

fn k_json(label: &str, result: &KTheoryResult) -> serde_json::Value {
    serde_json::json!({
        "group": label,
        "Wh": result.wh,
        "K0t": result.k0_tilde,
        "Km1": result.k_minus1,
        "Kbelow": result.k_below,
    })
}

fn print_compute(label: &str, result: &KTheoryResult, format: Format) {
    match format {
        Format::Text => println!(
            "Wh = {}; K0t = {}; Km1 = {}; K<=-2 = {}",
            result.wh.render(),
            result.k0_tilde.render(),
            result.k_minus1.render(),
            result.k_below.render()
        ),
        Format::Json => println!("{}", k_json(label, result)),
        Format::Csv => {
            println!("group,Wh,K0t,Km1,Kbelow");
            println!(
                "{label},{},{},{},{}",
                result.wh.render(),
                result.k0_tilde.render(),
                result.k_minus1.render(),
                result.k_below.render()
            );
        }
    }
}

/// Group a sorted list into `(item, multiplicity)` pairs and render it in
/// the reference-table style (`-` when empty).
fn grouped(items: &[String]) -> String {
    if items.is_empty() {
        return "-".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let j = items[i..]
            .iter()
            .position(|x| *x != items[i])
            .map_or(items.len(), |p| i + p);
        let n = j - i;
        parts.push(match n {
            1 => items[i].clone(),
            2 => format!("{} (twice)", items[i]),
            n => format!("{} ({n} times)", items[i]),
        });
        i = j;
    }
    parts.join(", ")
}

fn print_stabilizers(label: &str, stabs: &[String], cusps: &[String], format: Format) {
    match format {
        Format::Text => println!("{label} | {} | {}", grouped(stabs), grouped(cusps)),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "group": label, "stabilizers": stabs, "cusps": cusps })
        ),
        Format::Csv => {
            println!("group,stabilizers,cusps");
            println!("{label},{},{}", stabs.join("; "), cusps.join("; "));
        }
    }
}

fn print_oracle(
    input: &str,
    t: lowerk::FiniteGroupType,
    format: Format,
) -> Result<(), lowerk::groups::GroupError> {
    let g = realize(t);
    let data = ClassData::compute(&g);
    let order = g.order() as u64;
    let r = lowerk::groups::count_r_from(&data);
    let q = lowerk::groups::count_q_from(&data);
    let wh = wh_rank(&g);
    let carter = carter_k_minus1_rank(&g);
    let mut fields: Vec<(FieldDescriptor, usize)> = vec![(
        FieldDescriptor::Rational,
        k_classes(&g, FieldDescriptor::Rational)?,
    )];
    for p in prime_divisors(order) {
        fields.push((
            FieldDescriptor::PadicRational(p),
            k_classes(&g, FieldDescriptor::PadicRational(p))?,
        ));
        fields.push((
            FieldDescriptor::FiniteField(p),
            k_classes(&g, FieldDescriptor::FiniteField(p))?,
        ));
    }
    match format {
        Format::Json => {
            let k: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(f, n)| (f.to_string(), serde_json::json!(n)))
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "group": input,
                    "canonical": t.canonical().to_string(),
                    "order": order,
                    "r": r,
                    "q": q,
                    "wh_rank": wh,
                    "k_classes": k,
                    "carter_k_minus1_rank": carter,
                })
            );
        }
        Format::Text | Format::Csv => {
            println!(
                "group = {} (canonical {}), order {order}",
                input,
                t.canonical()
            );
            println!("r = {r}");
            println!("q = {q}");
            println!("wh_rank = {wh}");
            for (f, n) in &fields {
                println!("k_classes({f}) = {n}");
            }
            println!("carter_k_minus1_rank = {carter}");
        }
    }
    Ok(())
}

fn run_verify(all: bool, name: Option<&str>) -> Result<ExitCode, Failure> {
    if all {
        let report = catalog::verify_all();
        for outcome in &report.outcomes {
            match &outcome.mismatch {
                None => println!("{}: ok", outcome.name),
                Some(m) => println!("{}: MISMATCH {m}", outcome.name),
            }
        }
        println!("{}/{} pass", report.passed(), report.total());
        Ok(if report.all_passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        })
    } else if let Some(name) = name {
        let entry = catalog::lookup(name).map_err(|e| Failure::usage(format!("{e:?}")))?;
        match catalog::verify_entry(entry) {
            None => {
                println!("{}: ok", entry.name);
                Ok(ExitCode::SUCCESS)
            }
            Some(m) => {
                println!("{}: MISMATCH {m}", entry.name);
                Ok(ExitCode::from(1))
            }
        }
    } else {
        Err(Failure::usage("pass --all or a group name"))
    }
}

/// The rows of reference table `which`, bundled or recomputed.
fn table_rows(which: u32, recomputed: bool) -> Result<Vec<String>, Failure> {
    let select: fn(&CatalogEntry) -> bool = match which {
        2 => |e| e.ideal_vertices == 0,
        3 => |e| e.ideal_vertices == 1,
        4 => |e| e.ideal_vertices == 2,
        6 => |e| e.ideal_vertices == 0,
        7 => |e| e.ideal_vertices > 0,
        other => {
            return Err(Failure::usage(format!(
                "no table {other}: pick 2, 3, or 4 (stabilizers) or 6, 7 (K-groups)"
            )))
        }
    };
    let k_table = which >= 6;
    let mut rows = Vec::new();
    for entry in catalog::entries().iter().filter(|e| select(e)) {
        let row = if k_table {
            let k = if recomputed {
                assemble(&entry.diagram())
                    .map_err(|e| Failure::computation(format!("{e:?}")))?
                    .normalized()
            } else {
                entry.expected_k.clone()
            };
            format!(
                "{} | {} | {} | {}",
                entry.name,
                k.k_minus1.render(),
                k.k0_tilde.render(),
                k.wh.render()
            )
        } else {
            // Stabilizers come out of the walk already sorted, and cusps come
            // out in vertex-class order, so equal items are adjacent and
            // `grouped` matches the bundled column layout.
            let (stabs, cusps) = if recomputed {
                let stabs = enumerate_type1(&entry.diagram())
                    .map_err(|e| Failure::computation(format!("{e:?}")))?
                    .iter()
                    .map(|s| s.render())
                    .collect::<Vec<_>>();
                let cusps = cusp_groups(&entry.diagram())
                    .map_err(|e| Failure::computation(format!("{e:?}")))?
                    .iter()
                    .map(|c| c.render().to_string())
                    .collect::<Vec<_>>();
                (grouped(&stabs), grouped(&cusps))
            } else {
                (entry.stabilizer_column(), entry.cusp_column())
            };
            if entry.ideal_vertices == 0 {
                format!("{} | {stabs}", entry.name)
            } else {
                format!("{} | {stabs} | {cusps}", entry.name)
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn run_tables(which: u32, recomputed: bool) -> Result<ExitCode, Failure> {
    for row in table_rows(which, recomputed)? {
        println!("{row}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_list() {
    let labels = ["no", "one", "two", "three", "four"];
    for (count, label) in labels.iter().enumerate() {
        let names: Vec<&str> = catalog::entries()
            .iter()
            .filter(|e| e.ideal_vertices == count)
            .map(|e| e.name.as_str())
            .collect();
        if names.is_empty() {
            continue;
        }
        let plural = if count == 1 { "vertex" } else { "vertices" };
        println!("# {label} ideal {plural}");
        for name in names {
            println!("{name}");
        }
    }
}
