//! `romik`: exact computation with the Romik map on the unit quarter
//! circle. Everything runs over arbitrary-precision rationals and real
//! quadratic fields; output is deterministic and machine-readable.

mod parse;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use romik_core::berggren::{children, descend, parent, ParentStep, Triple};
use romik_core::lagrange::{
    circular_root, construct_periodic, detect_period, galois_check, w_sequence, DEFAULT_MAX_ITER,
};
use romik_core::quadspace::{mat_const, mat_word, CirclePoint, Mat3};
use romik_core::romik::{expand_rational, expand_rational_both, expand_stream, word_string};
use romik_core::selftest::run_all;
use romik_core::{Digit, Error};

use parse::{parse_point, parse_triple_ints, parse_word, ParseError};

#[derive(Parser)]
#[command(name = "romik", version, about = "Exact arithmetic for the Romik map, Berggren trees and periodic digit expansions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format (subcommands support a sensible subset).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Jsonl,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Digit expansion of a point: full two-ended expansion for rational
    /// points, or the first -n digits of any point.
    Expand {
        /// Exact point "x,y", e.g. "3/5,4/5" or "1/2,√3/2".
        #[arg(long)]
        point: String,
        /// Emit exactly N digits instead of the full rational expansion.
        #[arg(short = 'n', long = "digits")]
        n: Option<usize>,
        /// For boundary-hitting rational points, print both endings.
        #[arg(long)]
        both: bool,
    },
    /// Berggren tree of primitive Pythagorean triples.
    Tree {
        /// Root triple, "3,4,5" or "4,3,5".
        #[arg(long, default_value = "3,4,5")]
        root: String,
        /// Expand this many levels below the root.
        #[arg(long, conflicts_with = "cmax")]
        depth: Option<usize>,
        /// Instead, enumerate all triples of both trees with c <= CMAX.
        #[arg(long)]
        cmax: Option<u64>,
    },
    /// Parent chain from a primitive triple down to its root.
    Descend {
        /// Primitive triple "a,b,c".
        #[arg(long)]
        triple: String,
    },
    /// Detect the eventually periodic expansion of a quadratic point.
    Period {
        /// Exact point "x,y" with irrational coordinates.
        #[arg(long)]
        point: String,
        /// Iteration cap (overrides ROMIK_MAX_ITER; default 1000000).
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Construct the purely periodic point of a digit word.
    Construct {
        /// Digit word over {1,2,3}, e.g. "3,1" or "31".
        #[arg(long)]
        word: String,
    },
    /// Verify the Galois-conjugate sign table and reversed period.
    Galois {
        #[arg(long)]
        word: String,
    },
    /// Count length-k words whose periodic point lives in Q(sqrt D).
    Count {
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        d: u64,
    },
    /// Circular root: the cycle of unit classes of a word's rotations.
    Roots {
        #[arg(long)]
        word: String,
        /// Keep raw integral representatives (skip unit normalization).
        #[arg(long)]
        raw: bool,
    },
    /// Print a generator matrix, or the product matrix of a word.
    Mat {
        /// One of M1, M2, M3, U1, U2, U3, H.
        #[arg(long, conflicts_with = "word")]
        name: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// w-sequence of invariant lattice vectors for a quadratic point.
    Wseq {
        #[arg(long)]
        point: String,
        /// Number of steps.
        #[arg(short = 'n', long, default_value_t = 10)]
        n: usize,
    },
    /// Run the full acceptance suite and print a pass/fail table.
    Selftest,
}

/// CLI failures: parse problems exit 2, core domain errors exit 1.
enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn unsupported(format: &str, cmd: &str) -> Failure {
    Failure::Parse(format!("format '{format}' is not supported by '{cmd}'"))
}

fn point_arg(s: &str) -> Result<CirclePoint, Failure> {
    Ok(parse_point(s)??)
}

fn triple_arg(s: &str) -> Result<Triple, Failure> {
    let (a, b, c) = parse_triple_ints(s)?;
    Ok(Triple::new(a, b, c)?)
}

fn triple_line(t: &Triple) -> String {
    format!("({}, {}, {})", t.a, t.b, t.c)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Expand { point, n, both } => {
            let p = point_arg(&point)?;
            match n {
                Some(n) => {
                    let digits = expand_stream(&p, n)?;
                    match cli.format {
                        Format::Json => println!("{}", json(&digits)),
                        Format::Text => println!("[{}]", word_string(&digits)),
                        _ => return Err(unsupported("non-json", "expand")),
                    }
                }
                None => {
                    if both {
                        let (two, other) = expand_rational_both(&p)?;
                        match cli.format {
                            Format::Json => println!("{}", json(&vec![&two, &other])),
                            Format::Text => println!("{two}\n{other}"),
                            _ => return Err(unsupported("non-json", "expand")),
                        }
                    } else {
                        let exp = expand_rational(&p)?;
                        match cli.format {
                            Format::Json => println!("{}", json(&exp)),
                            Format::Text => println!("{exp}"),
                            _ => return Err(unsupported("non-json", "expand")),
                        }
                    }
                }
            }
        }
        Cmd::Tree { root, depth, cmax } => run_tree(&root, depth, cmax, cli.format)?,
        Cmd::Descend { triple } => {
            let t = triple_arg(&triple)?;
            let chain = descend(&t)?;
            let root = chain.last().map(|(p, _)| p.clone()).unwrap_or_else(|| t.clone());
            let (terminal, last_digit) = parent(&root)?;
            #[derive(Serialize)]
            struct Out {
                start: Triple,
                steps: Vec<(Triple, Digit)>,
                terminal: ParentStep,
                digits: Vec<Digit>,
            }
            let mut digits: Vec<Digit> = chain.iter().map(|(_, d)| *d).collect();
            digits.push(last_digit);
            let out = Out {
                start: t.clone(),
                steps: chain,
                terminal,
                digits,
            };
            match cli.format {
                Format::Json => println!("{}", json(&out)),
                Format::Text => {
                    let mut line = triple_line(&t);
                    for (p, d) in &out.steps {
                        line.push_str(&format!(" -[{d}]-> {}", triple_line(p)));
                    }
                    line.push_str(&format!(" -[{}]-> {:?}", out.digits.last().unwrap(), out.terminal));
                    println!("{line}");
                    println!("digits: [{}]", word_string(&out.digits));
                }
                _ => return Err(unsupported("non-json", "descend")),
            }
        }
        Cmd::Period { point, max_iter } => {
            let p = point_arg(&point)?;
            let cap = max_iter
                .or_else(|| {
                    std::env::var("ROMIK_MAX_ITER")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(DEFAULT_MAX_ITER);
            let r = detect_period(&p, cap)?;
            match cli.format {
                Format::Json => println!("{}", json(&r)),
                Format::Text => println!("{r}"),
                _ => return Err(unsupported("non-json", "period")),
            }
        }
        Cmd::Construct { word } => {
            let w = parse_word(&word)?;
            let data = construct_periodic(&w)?;
            match cli.format {
                Format::Json => println!("{}", json(&data)),
                Format::Text => {
                    println!("word:    ({})", word_string(&data.word));
                    println!("point:   {}", data.point);
                    println!("lambda1: {}", data.lambda1);
                    println!("lambda3: {}", data.lambda3);
                    println!("D:       {}", data.d);
                }
                _ => return Err(unsupported("non-json", "construct")),
            }
        }
        Cmd::Galois { word } => {
            let w = parse_word(&word)?;
            let rep = galois_check(&w)?;
            match cli.format {
                Format::Json => println!("{}", json(&rep)),
                Format::Text => {
                    println!("word:            ({})", word_string(&rep.word));
                    println!("conjugate:       {}", rep.conjugate);
                    println!("signs ok:        {}", rep.signs_ok);
                    println!("expected period: ({})", word_string(&rep.expected_period));
                    println!("detected:        {}", rep.detected);
                    println!("verdict:         {}", if rep.pass() { "PASS" } else { "FAIL" });
                }
                _ => return Err(unsupported("non-json", "galois")),
            }
        }
        Cmd::Count { k, d } => {
            let (count, witnesses) = romik_core::lagrange::count_nkk(k, d)?;
            match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out {
                        k: usize,
                        d: u64,
                        count: usize,
                        witnesses: Vec<Vec<Digit>>,
                    }
                    println!("{}", json(&Out { k, d, count, witnesses }));
                }
                Format::Text => {
                    println!("N({k}, Q(sqrt {d})) = {count}");
                    for w in &witnesses {
                        println!("  ({})", word_string(w));
                    }
                }
                _ => return Err(unsupported("non-json", "count")),
            }
        }
        Cmd::Roots { word, raw } => {
            let w = parse_word(&word)?;
            let nodes = circular_root(&w, !raw)?;
            match cli.format {
                Format::Json => println!("{}", json(&nodes)),
                Format::Dot => {
                    println!("digraph circular_root {{");
                    for n in &nodes {
                        println!(
                            "  n{} [label=\"[{}, {}, {}]\"];",
                            n.index,
                            n.representative.x1(),
                            n.representative.x2(),
                            n.representative.x3()
                        );
                    }
                    for n in &nodes {
                        println!("  n{} -> n{} [label=\"M{}\"];", n.index, n.edge_to, n.edge);
                    }
                    println!("}}");
                }
                Format::Text => {
                    for n in &nodes {
                        println!(
                            "node {}: rotation ({}) class [{}, {}, {}]  --M{}--> node {}",
                            n.index,
                            word_string(&n.rotation),
                            n.representative.x1(),
                            n.representative.x2(),
                            n.representative.x3(),
                            n.edge,
                            n.edge_to
                        );
                    }
                }
                _ => return Err(unsupported("jsonl/csv", "roots")),
            }
        }
        Cmd::Mat { name, word } => {
            let m: Mat3 = match (name, word) {
                (Some(n), None) => {
                    let parsed: romik_core::MatName =
                        n.parse().map_err(Failure::Parse)?;
                    mat_const(parsed)
                }
                (None, Some(w)) => mat_word(&parse_word(&w)?)?,
                _ => return Err(Failure::Parse("pass exactly one of --name, --word".into())),
            };
            match cli.format {
                Format::Json => println!("{}", json(&m)),
                Format::Text => {
                    for row in &m.0 {
                        println!("[{} {} {}]", row[0], row[1], row[2]);
                    }
                }
                _ => return Err(unsupported("non-json", "mat")),
            }
        }
        Cmd::Wseq { point, n } => {
            let p = point_arg(&point)?;
            let seq = w_sequence(&p, n)?;
            match cli.format {
                Format::Json => println!("{}", json(&seq)),
                Format::Text => {
                    println!("D = {}, W = Q(w0) = {}", seq.d, seq.w_norm);
                    for (i, t) in seq.terms.iter().enumerate() {
                        println!(
                            "w{i} = [{}, {}, {}]  sign {}",
                            t.x1(),
                            t.x2(),
                            t.x3(),
                            seq.signs[i]
                        );
                    }
                    println!("max |x3| = {}", seq.max_abs_x3);
                }
                _ => return Err(unsupported("non-json", "wseq")),
            }
        }
        Cmd::Selftest => {
            let results = run_all();
            let all_pass = results.iter().all(|r| r.pass);
            match cli.format {
                Format::Json => println!("{}", json(&results)),
                Format::Text => {
                    for r in &results {
                        println!("{r}");
                    }
                    println!("overall: {}", if all_pass { "PASS" } else { "FAIL" });
                }
                _ => return Err(unsupported("non-json", "selftest")),
            }
            if !all_pass {
                return Err(Failure::Domain(Error::InvariantViolated(
                    "selftest failed".into(),
                )));
            }
        }
    }
    Ok(())
}

/// A tree node with the digit path from the root.
#[derive(Serialize)]
struct TreeNode {
    triple: Triple,
    path: Vec<Digit>,
}

fn run_tree(
    root: &str,
    depth: Option<usize>,
    cmax: Option<u64>,
    format: Format,
) -> Result<(), Failure> {
    if let Some(c_max) = cmax {
        let all = romik_core::berggren::enumerate_bfs(c_max);
        match format {
            Format::Json => println!("{}", json(&all.iter().collect::<Vec<_>>())),
            Format::Jsonl => {
                for t in &all {
                    println!("{}", serde_json::to_string(t).expect("serializable"));
                }
            }
            Format::Csv => {
                println!("a,b,c");
                for t in &all {
                    println!("{},{},{}", t.a, t.b, t.c);
                }
            }
            Format::Text => {
                for t in &all {
                    println!("{}", triple_line(t));
                }
            }
            Format::Dot => return Err(unsupported("dot", "tree --cmax")),
        }
        return Ok(());
    }

    let root_t = {
        let (a, b, c) = parse_triple_ints(root)?;
        let t = Triple::new(a, b, c)?;
        if !t.is_root() {
            return Err(Failure::Domain(Error::InvariantViolated(format!(
                "{t} is not a tree root; use 3,4,5 or 4,3,5"
            ))));
        }
        t
    };
    let depth = depth.unwrap_or(2);
    // Breadth-first levels; nodes exclude the root itself.
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut edges: Vec<(String, String, Digit)> = Vec::new();
    let mut level: Vec<TreeNode> = vec![TreeNode {
        triple: root_t.clone(),
        path: vec![],
    }];
    for _ in 0..depth {
        let mut next = Vec::new();
        for node in &level {
            for (kid, d) in children(&node.triple).into_iter().zip(Digit::ALL) {
                let mut path = node.path.clone();
                path.push(d);
                edges.push((triple_line(&node.triple), triple_line(&kid), d));
                next.push(TreeNode { triple: kid, path });
            }
        }
        nodes.extend(level.drain(..).skip_while(|n| n.path.is_empty()));
        level = next;
    }
    nodes.extend(level);
    match format {
        Format::Json => println!("{}", json(&nodes)),
        Format::Jsonl => {
            for n in &nodes {
                println!("{}", serde_json::to_string(n).expect("serializable"));
            }
        }
        Format::Csv => {
            println!("a,b,c,path");
            for n in &nodes {
                println!("{},{},{},{}", n.triple.a, n.triple.b, n.triple.c, word_string(&n.path));
            }
        }
        Format::Text => {
            for n in &nodes {
                println!("{} path [{}]", triple_line(&n.triple), word_string(&n.path));
            }
        }
        Format::Dot => {
            println!("digraph berggren {{");
            println!("  \"{}\";", triple_line(&root_t));
            for (from, to, d) in &edges {
                println!("  \"{from}\" -> \"{to}\" [label=\"M{d}\"];");
            }
            println!("}}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
