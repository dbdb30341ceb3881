//! Command-line front end: exact products, structural maps, numerical
//! evaluation, Shintani matrices, and the verification suites.

use std::process::ExitCode;

use dendrizeta::algebra::{Basis, LinComb, Piece};
use dendrizeta::error::Error;
use dendrizeta::numerics::{
    azv_integral, azv_series, mzv_integral_quad, mzv_series, EvalResult, IntegralPath,
    QuadEvalConfig, SeriesEvalConfig,
};
use dendrizeta::products::{dend_product, tridend_product};
use dendrizeta::shintani::{shintani_datum, shintani_eval};
use dendrizeta::trees::{flatten_int, flatten_series, iota, BinaryTree, PosAngleTree, VertexTree};
use dendrizeta::verify::{default_tolerances, run_axiom_suite, run_morphism_suite, run_numeric_suite};
use dendrizeta::words::{binarize, unbinarize, BinWord, PosWord};

const USAGE: &str = "\
usage: dendrizeta <command> [arguments] [flags]

commands:
  product <kind> <piece> <a> <b>   exact product; kind: word | angle-tree |
                                   vertex-tree | binary-tree; piece: left |
                                   right | mid | full
  flatten <tree>                   flatten an N{...} or B{...} tree to words
  iota <angle-tree>                sum angle decorations into vertex decorations
  binarize <word>                  the map n1...nk -> x^{n1-1}y...x^{nk-1}y
  eval <target> <input>            target: word-series | word-integral |
                                   tree-series | tree-integral | shintani
  shintani-matrix <binary-tree>    print the matrix A_t and the word omega_t
  verify [--axioms] [--morphisms] [--numeric] [--all]
                                   run the identity suites; exit code counts
                                   failures

flags:
  --json             machine-readable output
  --cutoff N         series cutoff (default 100000; shintani default 2000)
  --quad-nodes M     quadrature nodes per axis (default 64)
  --path series|quad route for integral words (default series)
  --max-leaves K     tree size for verify suites (default 3, max 4)

grammar: positive words `2 1 1`, binary words `xyy`, empty word `()`;
trees `|`, `V[a,b](c1,c2,c3)`, `N{d}(c1,...,ck)`, `B{x}(l,r)`; a node
without a child list stands for the all-leaf-children node.";

struct Flags {
    json: bool,
    cutoff: Option<u64>,
    quad_nodes: usize,
    path: IntegralPath,
    max_leaves: usize,
    axioms: bool,
    morphisms: bool,
    numeric: bool,
    all: bool,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => ExitCode::from(failures.min(255) as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<usize, Error> {
    let mut positional = Vec::new();
    let mut flags = Flags {
        json: false,
        cutoff: None,
        quad_nodes: 64,
        path: IntegralPath::Series,
        max_leaves: 3,
        axioms: false,
        morphisms: false,
        numeric: false,
        all: false,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, Error> {
            it.next().cloned().ok_or_else(|| Error::InvalidConfig(format!("{name} needs a value")))
        };
        match arg.as_str() {
            "--json" => flags.json = true,
            "--cutoff" => {
                flags.cutoff = Some(take("--cutoff")?.parse().map_err(|_| {
                    Error::InvalidConfig("--cutoff takes a positive integer".into())
                })?)
            }
            "--quad-nodes" => {
                flags.quad_nodes = take("--quad-nodes")?.parse().map_err(|_| {
                    Error::InvalidConfig("--quad-nodes takes a positive integer".into())
                })?
            }
            "--path" => {
                flags.path = match take("--path")?.as_str() {
                    "series" => IntegralPath::Series,
                    "quad" => IntegralPath::Quad,
                    other => {
                        return Err(Error::InvalidConfig(format!(
                            "--path takes series|quad, not `{other}`"
                        )))
                    }
                }
            }
            "--max-leaves" => {
                flags.max_leaves = take("--max-leaves")?.parse().map_err(|_| {
                    Error::InvalidConfig("--max-leaves takes a positive integer".into())
                })?
            }
            "--axioms" => flags.axioms = true,
            "--morphisms" => flags.morphisms = true,
            "--numeric" => flags.numeric = true,
            "--all" => flags.all = true,
            other if other.starts_with("--") => {
                return Err(Error::InvalidConfig(format!("unknown flag `{other}`")))
            }
            other => positional.push(other.to_string()),
        }
    }

    let Some(command) = positional.first() else {
        println!("{USAGE}");
        return Ok(0);
    };
    let rest = &positional[1..];
    match command.as_str() {
        "product" => cmd_product(rest, &flags).map(|_| 0),
        "flatten" => cmd_flatten(rest, &flags).map(|_| 0),
        "iota" => cmd_iota(rest, &flags).map(|_| 0),
        "binarize" => cmd_binarize(rest, &flags).map(|_| 0),
        "eval" => cmd_eval(rest, &flags).map(|_| 0),
        "shintani-matrix" => cmd_shintani_matrix(rest, &flags).map(|_| 0),
        "verify" => cmd_verify(&flags),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            Ok(0)
        }
        other => Err(Error::InvalidConfig(format!(
            "unknown command `{other}` (try `dendrizeta help`)"
        ))),
    }
}

fn expect_args<'a>(rest: &'a [String], names: &str, n: usize) -> Result<&'a [String], Error> {
    if rest.len() != n {
        return Err(Error::InvalidConfig(format!(
            "expected arguments: {names} (got {})",
            rest.len()
        )));
    }
    Ok(rest)
}

fn print_lincomb<B: Basis>(c: &LinComb<B>, json: bool) {
    if json {
        println!("{}", c.to_json());
    } else {
        println!("{c}");
    }
}

fn cmd_product(rest: &[String], flags: &Flags) -> Result<(), Error> {
    let rest = expect_args(rest, "<kind> <piece> <a> <b>", 4)?;
    let piece = Piece::parse(&rest[1])?;
    let (a, b) = (&rest[2], &rest[3]);
    match rest[0].as_str() {
        "word" => {
            // words made of x/y letters take the shuffle; integer words
            // take the quasi-shuffle
            let bin = a.contains(['x', 'y']) || b.contains(['x', 'y']);
            if bin {
                let u = BinWord::parse_basis(a)?;
                let v = BinWord::parse_basis(b)?;
                let out = match piece {
                    Piece::Left => dendrizeta::words::shuffle_left(&u, &v)?,
                    Piece::Right => dendrizeta::words::shuffle_right(&u, &v)?,
                    Piece::Middle => {
                        return Err(Error::InvalidConfig(
                            "the shuffle of binary words has no middle piece".into(),
                        ))
                    }
                    Piece::Full => dendrizeta::words::shuffle(&u, &v),
                };
                print_lincomb(&out, flags.json);
            } else {
                let u = PosWord::parse_basis(a)?;
                let v = PosWord::parse_basis(b)?;
                let out = match piece {
                    Piece::Left => dendrizeta::words::qshuffle_left(&u, &v)?,
                    Piece::Right => dendrizeta::words::qshuffle_right(&u, &v)?,
                    Piece::Middle => dendrizeta::words::qshuffle_mid(&u, &v)?,
                    Piece::Full => dendrizeta::words::qshuffle(&u, &v),
                };
                print_lincomb(&out, flags.json);
            }
        }
        "angle-tree" => {
            let t = PosAngleTree::parse_basis(a)?;
            let s = PosAngleTree::parse_basis(b)?;
            print_lincomb(&tridend_product(&t, &s, piece)?, flags.json);
        }
        "vertex-tree" => {
            let t = VertexTree::parse_basis(a)?;
            let s = VertexTree::parse_basis(b)?;
            print_lincomb(&tridend_product(&t, &s, piece)?, flags.json);
        }
        "binary-tree" => {
            let t = BinaryTree::parse_basis(a)?;
            let s = BinaryTree::parse_basis(b)?;
            print_lincomb(&dend_product(&t, &s, piece)?, flags.json);
        }
        other => Err(Error::InvalidConfig(format!(
            "unknown kind `{other}` (word | angle-tree | vertex-tree | binary-tree)"
        )))?,
    }
    Ok(())
}

fn cmd_flatten(rest: &[String], flags: &Flags) -> Result<(), Error> {
    let rest = expect_args(rest, "<tree>", 1)?;
    let text = rest[0].trim();
    if text.starts_with('B') {
        let t = BinaryTree::parse_basis(text)?;
        print_lincomb(&flatten_int(&t), flags.json);
    } else if text.starts_with('N') || text == "|" {
        let t = VertexTree::parse_basis(text)?;
        print_lincomb(&flatten_series(&t), flags.json);
    } else if text.starts_with('V') {
        return Err(Error::InvalidConfig(
            "flatten takes N{...} or B{...} trees; apply `iota` to an angle tree first".into(),
        ));
    } else {
        return Err(Error::Parse {
            msg: "expected a tree".into(),
            pos: 0,
        });
    }
    Ok(())
}

fn cmd_iota(rest: &[String], flags: &Flags) -> Result<(), Error> {
    let rest = expect_args(rest, "<angle-tree>", 1)?;
    let t = PosAngleTree::parse_basis(&rest[0])?;
    let out = iota(&t);
    if flags.json {
        println!("{{\"tree\":\"{out}\"}}");
    } else {
        println!("{out}");
    }
    Ok(())
}

fn cmd_binarize(rest: &[String], flags: &Flags) -> Result<(), Error> {
    let rest = expect_args(rest, "<word>", 1)?;
    let w = PosWord::parse_basis(&rest[0])?;
    let out = binarize(&w);
    if flags.json {
        println!("{{\"word\":\"{out}\"}}");
    } else {
        println!("{out}");
    }
    Ok(())
}

fn print_eval<B: Basis>(expr: &LinComb<B>, r: &EvalResult, json: bool) {
    if json {
        let tail = r
            .tail_bound
            .map_or("null".to_string(), |t| format!("{t:e}"));
        println!(
            "{{\"expression\":{},\"value\":{:.15e},\"tail_bound\":{}}}",
            expr.to_json(),
            r.value,
            tail
        );
    } else {
        println!("expression = {expr}");
        println!("value = {:.12}", r.value);
        match r.tail_bound {
            Some(t) => println!("tail_bound = {t:.3e}"),
            None => println!("tail_bound = n/a"),
        }
    }
}

fn cmd_eval(rest: &[String], flags: &Flags) -> Result<(), Error> {
    let rest = expect_args(rest, "<target> <input>", 2)?;
    let series_cfg = SeriesEvalConfig::new(flags.cutoff.unwrap_or(100_000))?;
    let quad_cfg = QuadEvalConfig::new(flags.quad_nodes, 4)?;
    match rest[0].as_str() {
        "word-series" => {
            let w = PosWord::parse_basis(&rest[1])?;
            let r = mzv_series(&w, &series_cfg)?;
            print_eval(&LinComb::basis(w), &r, flags.json);
        }
        "word-integral" => {
            let w = BinWord::parse_basis(&rest[1])?;
            let r = match flags.path {
                IntegralPath::Quad => mzv_integral_quad(&w, &quad_cfg)?,
                IntegralPath::Series => mzv_series(&unbinarize(&w)?, &series_cfg)?,
            };
            print_eval(&LinComb::basis(w), &r, flags.json);
        }
        "tree-series" => {
            let t = VertexTree::parse_basis(&rest[1])?;
            let r = azv_series(&t, &series_cfg)?;
            print_eval(&flatten_series(&t), &r, flags.json);
        }
        "tree-integral" => {
            let t = BinaryTree::parse_basis(&rest[1])?;
            let r = azv_integral(&t, flags.path, &series_cfg, &quad_cfg)?;
            print_eval(&flatten_int(&t), &r, flags.json);
        }
        "shintani" => {
            let t = BinaryTree::parse_basis(&rest[1])?;
            let datum = shintani_datum(&t)?;
            let n = flags.cutoff.unwrap_or(2_000);
            let value = shintani_eval(&datum, n)?;
            if flags.json {
                println!(
                    "{{\"datum\":{},\"cutoff\":{n},\"value\":{value:.15e}}}",
                    datum.to_json()
                );
            } else {
                for row in &datum.matrix {
                    let digits: String = row.iter().map(|d| char::from(b'0' + d)).collect();
                    println!("{digits}");
                }
                println!("omega = {}", datum.exponents);
                println!("value = {value:.12} (cutoff {n})");
            }
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown target `{other}` (word-series | word-integral | tree-series | tree-integral | shintani)"
            )))
        }
    }
    Ok(())
}

fn cmd_shintani_matrix(rest: &[String], flags: &Flags) -> Result<(), Error> {
    let rest = expect_args(rest, "<binary-tree>", 1)?;
    let t = BinaryTree::parse_basis(&rest[0])?;
    let datum = shintani_datum(&t)?;
    if flags.json {
        println!("{}", datum.to_json());
    } else {
        for (row, label) in datum.matrix.iter().zip(&datum.row_labels) {
            let digits: String = row.iter().map(|d| char::from(b'0' + d)).collect();
            println!("{digits}   (vertex {label})");
        }
        println!("omega = {}", datum.exponents);
        println!("columns = {}", datum.col_labels.join(" "));
    }
    Ok(())
}

fn cmd_verify(flags: &Flags) -> Result<usize, Error> {
    let run_all = flags.all || (!flags.axioms && !flags.morphisms && !flags.numeric);
    let tolerances = default_tolerances();
    let mut reports = Vec::new();
    if run_all || flags.axioms {
        reports.extend(run_axiom_suite(flags.max_leaves, &[1, 2])?);
    }
    if run_all || flags.morphisms {
        reports.extend(run_morphism_suite(flags.max_leaves)?);
    }
    if run_all || flags.numeric {
        reports.extend(run_numeric_suite(&tolerances));
    }
    let failures = reports.iter().filter(|r| !r.passed).count();
    if flags.json {
        let items: Vec<String> = reports
            .iter()
            .map(|r| {
                format!(
                    "{{\"name\":\"{}\",\"passed\":{},\"seconds\":{:.3},\"detail\":\"{}\"}}",
                    dendrizeta::algebra::json_escape(&r.name),
                    r.passed,
                    r.seconds,
                    dendrizeta::algebra::json_escape(&r.detail)
                )
            })
            .collect();
        println!("{{\"failures\":{failures},\"checks\":[{}]}}", items.join(","));
    } else {
        for r in &reports {
            println!("{r}");
        }
        println!(
            "{} checks, {} failed",
            reports.len(),
            failures
        );
    }
    Ok(failures)
}
