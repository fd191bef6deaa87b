use std::fmt::Write as _;

use cadproj::elim::{
    cad_resultant, discriminant, generalized_discriminant, generalized_resultant, groebner_lex,
    macaulay_resultant, sylvester_resultant,
};
use cadproj::poly::{dense, factor_univariate, isolate_real_roots, roots, squarefree_decompose};
use cadproj::project::{
    bezout_filter, classify_split, predict_degrees, run_pipeline, split_genuine_spurious, FactorClassification,
    Prediction, ProjectionInput, Strategy, Tag,
};
use cadproj::rewrite::{clear_denominators, parse_any, Dialect, Mode};
use cadproj::Polynomial;
use num_rational::BigRational;

use crate::args::{Cli, Cmd, DialectArg, ModeArg, StrategyArg};
use crate::error::CliError;
use crate::input::{load, load_n, read_file, resolve_order};
use crate::reproduce;
use crate::stats::PolySummary;

/// Result of a subcommand: text for stdout, warnings for stderr and the
/// polynomials summarized by `--stats`.
#[derive(Default)]
pub struct Outcome {
    pub text: String,
    pub warnings: Vec<String>,
    pub inputs: Vec<PolySummary>,
    pub outputs: Vec<PolySummary>,
    /// Nonzero when the command ran but reports failure (reproduce).
    pub failed: bool,
}

impl Outcome {
    fn polys(inputs: &[Polynomial], outputs: &[Polynomial]) -> Self {
        let mut text = String::new();
        for p in outputs {
            writeln!(text, "{p}").unwrap();
        }
        Outcome {
            text,
            inputs: inputs.iter().map(PolySummary::of).collect(),
            outputs: outputs.iter().map(PolySummary::of).collect(),
            ..Default::default()
        }
    }
}

pub fn operation_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Res { .. } => "res",
        Cmd::Rawres { .. } => "rawres",
        Cmd::Disc { .. } => "disc",
        Cmd::Multires { .. } => "multires",
        Cmd::Groebner { .. } => "groebner",
        Cmd::Sqfree { .. } => "sqfree",
        Cmd::Factor { .. } => "factor",
        Cmd::Roots { .. } => "roots",
        Cmd::Project { .. } => "project",
        Cmd::Split { .. } => "split",
        Cmd::Bezout { .. } => "bezout",
        Cmd::Predict { .. } => "predict",
        Cmd::Rewrite { .. } => "rewrite",
        Cmd::Gendisc { .. } => "gendisc",
        Cmd::Genres { .. } => "genres",
        Cmd::Reproduce { .. } => "reproduce",
    }
}

fn strategy(s: StrategyArg) -> Strategy {
    match s {
        StrategyArg::Iterated => Strategy::Iterated,
        StrategyArg::Multires => Strategy::Multires,
    }
}

fn two_vars(elim: &[String]) -> Result<(&str, &str), CliError> {
    match elim {
        [y, z] => Ok((y, z)),
        _ => Err(CliError::Usage(format!("--elim needs two variables, got {}", elim.len()))),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let order = cli.order.as_deref();
    match &cli.cmd {
        Cmd::Res { var, files } | Cmd::Rawres { var, files } => {
            let inp = load_n(files, order, std::slice::from_ref(var), 2)?;
            let (f, g) = (&inp.polys[0], &inp.polys[1]);
            let r = if matches!(cli.cmd, Cmd::Res { .. }) {
                cad_resultant(f, g, var)?
            } else {
                sylvester_resultant(f, g, var)?
            };
            Ok(Outcome::polys(&inp.polys, &[r]))
        }
        Cmd::Disc { var, files } => {
            let inp = load_n(files, order, std::slice::from_ref(var), 1)?;
            let d = discriminant(&inp.polys[0], var)?;
            Ok(Outcome::polys(&inp.polys, &[d]))
        }
        Cmd::Multires { elim, files } => {
            let inp = load_n(files, order, elim, elim.len() + 1)?;
            let names: Vec<&str> = elim.iter().map(String::as_str).collect();
            let r = macaulay_resultant(&inp.polys, &names)?;
            Ok(Outcome::polys(&inp.polys, &[r]))
        }
        Cmd::Groebner { files } => {
            let inp = load(files, order, &[])?;
            let basis = groebner_lex(&inp.polys, &inp.order)?;
            Ok(Outcome::polys(&inp.polys, &basis))
        }
        Cmd::Sqfree { files } => {
            let inp = load_n(files, order, &[], 1)?;
            let sq = squarefree_decompose(&inp.polys[0])?;
            let mut out = Outcome::polys(&inp.polys, &[]);
            writeln!(out.text, "content {}", sq.content).unwrap();
            for (p, k) in &sq.parts {
                writeln!(out.text, "({p})^{k}").unwrap();
                out.outputs.push(PolySummary::of(p));
            }
            Ok(out)
        }
        Cmd::Factor { files } => {
            let inp = load_n(files, order, &[], 1)?;
            let fz = factor_univariate(&inp.polys[0])?;
            let mut out = Outcome::polys(&inp.polys, &[]);
            writeln!(out.text, "content {}", fz.content).unwrap();
            for (p, k) in &fz.factors {
                writeln!(out.text, "({p})^{k}").unwrap();
                out.outputs.push(PolySummary::of(p));
            }
            if !fz.complete {
                out.warnings.push("recombination budget exhausted; some factors may be reducible".into());
            }
            Ok(out)
        }
        Cmd::Roots { eps, files } => {
            let inp = load_n(files, order, &[], 1)?;
            let p = &inp.polys[0];
            let eps: Option<BigRational> = eps
                .as_deref()
                .map(|s| s.parse().map_err(|_| CliError::Usage(format!("bad --eps `{s}`"))))
                .transpose()?;
            let mut ivs = isolate_real_roots(p)?;
            if let (Some(eps), Some(v)) = (&eps, p.main_var()) {
                let sq = cadproj::poly::squarefree_part(p)?;
                let d = dense::from_poly(&sq, v);
                ivs = ivs.iter().map(|iv| roots::refine(&d, iv, eps)).collect();
            }
            let mut out = Outcome::polys(&inp.polys, &[]);
            for iv in ivs {
                if iv.exact {
                    writeln!(out.text, "{}", iv.lo).unwrap();
                } else {
                    writeln!(out.text, "({}, {})", iv.lo, iv.hi).unwrap();
                }
            }
            Ok(out)
        }
        Cmd::Project {
            strategy: s,
            ecs,
            json,
            files,
        } => {
            let inp = load(files, order, &[])?;
            let input = ProjectionInput {
                polys: inp.polys.clone(),
                ec_count: *ecs,
                order: inp.order.clone(),
            };
            let trace = run_pipeline(&input, strategy(*s))?;
            let mut out = Outcome::polys(&inp.polys, &[]);
            for l in &trace.levels {
                out.warnings.extend(l.warnings.iter().cloned());
                for p in l.projection_set() {
                    out.outputs.push(PolySummary::of(&p));
                }
            }
            if *json {
                out.text = trace.to_json();
                out.text.push('\n');
                return Ok(out);
            }
            for l in &trace.levels {
                let kind = serde_json::to_value(l.pivot_kind).unwrap();
                let kind = kind.as_str().unwrap_or_default();
                match &l.pivot {
                    Some(p) => writeln!(out.text, "level {} eliminates {}: pivot ({kind}) {p}", l.index, l.var),
                    None => writeln!(out.text, "level {} eliminates {}: no pivot", l.index, l.var),
                }
                .unwrap();
                for p in l.projection_set() {
                    writeln!(out.text, "  {p}").unwrap();
                }
            }
            if let Some(h) = &trace.halted {
                writeln!(out.text, "halted: {h}").unwrap();
            }
            Ok(out)
        }
        Cmd::Split { iterated, multires } => {
            let texts = [read_file(iterated)?, read_file(multires)?];
            let o = resolve_order(order, &texts, &[])?;
            let it = cadproj::poly::parse_poly_file(&texts[0], &o)?;
            let mr = cadproj::poly::parse_poly_file(&texts[1], &o)?;
            let s = split_genuine_spurious(&it, &mr)?;
            let mut out = Outcome::polys(&[it, mr], &[]);
            writeln!(out.text, "genuine {}", s.genuine).unwrap();
            writeln!(out.text, "multiplicity {}", s.mult).unwrap();
            writeln!(out.text, "spurious {}", s.spurious).unwrap();
            out.outputs = vec![PolySummary::of(&s.genuine), PolySummary::of(&s.spurious)];
            out.text.push_str(&classification_lines(&classify_split(&s)));
            Ok(out)
        }
        Cmd::Bezout { d, k, files } => {
            let bound = cadproj::project::BezoutBound::new(*d, *k).bound;
            let mut out = Outcome::default();
            writeln!(out.text, "bound {bound}").unwrap();
            if !files.is_empty() {
                let inp = load(files, order, &[])?;
                out.inputs = inp.polys.iter().map(PolySummary::of).collect();
                out.text.push_str(&classification_lines(&bezout_filter(&inp.polys, *d, *k)));
            }
            Ok(out)
        }
        Cmd::Predict {
            d,
            m,
            k,
            strategy: s,
            json,
        } => {
            let strategies = match s {
                Some(s) => vec![strategy(*s)],
                None => vec![Strategy::Iterated, Strategy::Multires],
            };
            let preds = strategies
                .into_iter()
                .map(|s| predict_degrees(*d, *m, *k, s))
                .collect::<Result<Vec<_>, _>>()?;
            let text = if *json {
                serde_json::to_string_pretty(&preds).expect("prediction serializes") + "\n"
            } else {
                preds.iter().map(prediction_table).collect()
            };
            Ok(Outcome {
                text,
                ..Default::default()
            })
        }
        Cmd::Rewrite { mode, dialect, file } => {
            let text = match file {
                Some(f) => read_file(f)?,
                None => read_file("-")?,
            };
            let f = parse_any(&text)?;
            let mode = match mode {
                ModeArg::Product => Mode::Product,
                ModeArg::SignSplit => Mode::SignSplit,
            };
            let dialect = match dialect {
                Some(DialectArg::Smt) => Dialect::Smt,
                Some(DialectArg::Native) => Dialect::Native,
                None if text.trim_start().starts_with(['(', ';']) => Dialect::Smt,
                None => Dialect::Native,
            };
            let (g, warnings) = clear_denominators(&f, mode)?;
            Ok(Outcome {
                text: g.emit(dialect)? + "\n",
                warnings,
                ..Default::default()
            })
        }
        Cmd::Gendisc { elim, files } => {
            let (y, z) = two_vars(elim)?;
            let inp = load_n(files, order, elim, 2)?;
            let r = generalized_discriminant(&inp.polys[0], &inp.polys[1], y, z, &inp.order)?;
            Ok(Outcome::polys(&inp.polys, &[r]))
        }
        Cmd::Genres { elim, files } => {
            let (y, z) = two_vars(elim)?;
            let inp = load_n(files, order, elim, 3)?;
            let r = generalized_resultant(&inp.polys[0], &inp.polys[1], &inp.polys[2], y, z, &inp.order)?;
            Ok(Outcome::polys(&inp.polys, &[r]))
        }
        Cmd::Reproduce { section, long } => reproduce::run(section.as_deref(), *long),
    }
}

fn classification_lines(cs: &[FactorClassification]) -> String {
    let mut s = String::new();
    for c in cs {
        let tag = match c.tag {
            Tag::Genuine => "genuine",
            Tag::Spurious => "spurious",
            Tag::Unknown => "unknown",
        };
        writeln!(s, "{tag} degree {}: {}", c.factor.total_degree(), c.factor).unwrap();
    }
    s
}

fn prediction_table(p: &Prediction) -> String {
    let name = match p.strategy {
        Strategy::Iterated => "iterated",
        Strategy::Multires => "multires",
    };
    let mut s = format!("{name} (d={}, m={}, k={})\n", p.d, p.m, p.k);
    for l in &p.levels {
        write!(
            s,
            "level {}: {} resultants of degree {} = {}; {} discriminants of degree {} = {}",
            l.level,
            l.resultant_count,
            l.resultant_degree,
            l.resultant_value,
            l.discriminant_count,
            l.discriminant_degree,
            l.discriminant_value
        )
        .unwrap();
        if let Some(piv) = &l.pivot_degree {
            write!(s, "; pivot degree {piv} = {}", piv.eval(p.d)).unwrap();
        }
        if l.bound_only {
            s.push_str(" (upper bounds)");
        }
        s.push('\n');
    }
    s
}
