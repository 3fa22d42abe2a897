use std::collections::BTreeSet;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use vasskit::chords::{
    all_matchings, canonical_form_with, enumerate_diagrams, four_term_relations, isolated_chord_diagrams, ChordError,
    Symmetry,
};
use vasskit::gaussmoments::{moment, reduce, source_series};
use vasskit::knotio::KnotIoError;
use vasskit::kontsevich::{
    raw_coefficient, strands_at, v2_numeric, weighted_expansion, Direction, KontsevichError, QuadratureConfig, Scheme,
};
use vasskit::lieweights::{
    casimir_insertion, check_four_term, structure_constants, sun_fundamental, weight, LieAlgebraRep, LieError,
};
use vasskit::poly::{fmt_rational, parse_rational, PolyParseError};
use vasskit::vassiliev::{
    extend_to_graph, symbol_with, Conway, EndChoice, GraphExtensionConfig, KnotInvariant, OrdinaryCrossings,
    Realization, VassilievError, V2,
};
use vasskit::{ChordDiagram, Link, MorseEmbedding, PdCode, Poly, SingularKnotDiagram};

use crate::output::{float, float_text, poly, rational, Report};
use crate::{
    ChordsCmd, Cli, Command, DiagramInput, FourtermArgs, GraphCmd, InvariantArgs, InvariantKind, KontsevichCmd,
    MomentsArgs, QuadratureArgs, SchemeArg, WeightsArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Knot(#[from] KnotIoError),
    #[error(transparent)]
    Chord(#[from] ChordError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Vassiliev(#[from] VassilievError),
    #[error(transparent)]
    Kontsevich(#[from] KontsevichError),
    #[error(transparent)]
    Poly(#[from] PolyParseError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("{0} four-term combinations do not vanish")]
    FourTermViolated(usize),
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<Report> {
    let threads = cli.threads as usize;
    match cli.command {
        Command::Chords(c) => chords(c),
        Command::Weights(a) => weights(a),
        Command::Fourterm(a) => fourterm(a),
        Command::Invariant(a) => invariant(a),
        Command::Graph(g) => graph(g),
        Command::Kontsevich(k) => kontsevich(k, threads),
        Command::Moments(a) => moments(a),
    }
}

fn diagram_list(diagrams: impl IntoIterator<Item = ChordDiagram>) -> Report {
    let list: Vec<String> = diagrams.into_iter().map(|d| d.to_string()).collect();
    Report::new(list.join("\n"), json!({ "count": list.len(), "diagrams": list }))
}

fn chords(cmd: ChordsCmd) -> Result<Report> {
    Ok(match cmd {
        ChordsCmd::Enumerate { m, dihedral: false } => diagram_list(enumerate_diagrams(m)),
        ChordsCmd::Enumerate { m, dihedral: true } => {
            let set: BTreeSet<ChordDiagram> =
                all_matchings(m).iter().map(|d| canonical_form_with(d, Symmetry::Dihedral)).collect();
            diagram_list(set)
        }
        ChordsCmd::Canonical { diagram } => {
            let d: ChordDiagram = diagram.parse()?;
            let c = d.canonical().to_string();
            Report::new(c.clone(), json!({ "diagram": c }))
        }
        ChordsCmd::Fourterm { m } => {
            let rels = four_term_relations(m);
            let list: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
            Report::new(list.join("\n"), json!({ "count": list.len(), "combinations": list }))
        }
        ChordsCmd::Isolated { m } => diagram_list(isolated_chord_diagrams(m)),
    })
}

fn algebra(name: &str) -> Result<LieAlgebraRep> {
    let n = name
        .strip_prefix("su")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| CliError::Input(format!("unknown algebra `{name}`, expected su2, su3, ...")))?;
    Ok(sun_fundamental(n)?)
}

fn weights(args: WeightsArgs) -> Result<Report> {
    let rep = algebra(&args.algebra.algebra)?;
    let t = args.target;
    if let Some(text) = t.diagram {
        let d: ChordDiagram = text.parse()?;
        let w = weight(&d, &rep).to_string();
        return Ok(Report::new(w.clone(), json!({ "algebra": rep.name, "diagram": d.to_string(), "value": w })));
    }
    if let Some(m) = t.m {
        let rows: Vec<(String, String)> =
            enumerate_diagrams(m).iter().map(|d| (d.to_string(), weight(d, &rep).to_string())).collect();
        let text: Vec<String> = rows.iter().map(|(d, w)| format!("{d}  {w}")).collect();
        let json_rows: Vec<Value> = rows.iter().map(|(d, w)| json!({ "diagram": d, "value": w })).collect();
        return Ok(Report::new(text.join("\n"), json!({ "algebra": rep.name, "weights": json_rows })));
    }
    if t.structure {
        let f = structure_constants(&rep)?;
        let entries: Vec<((usize, usize, usize), String)> =
            f.nonzero_ordered().into_iter().map(|(abc, v)| (abc, v.to_string())).collect();
        let text: Vec<String> = entries.iter().map(|((a, b, c), v)| format!("f({a},{b},{c}) = {v}")).collect();
        let json_rows: Vec<Value> =
            entries.iter().map(|((a, b, c), v)| json!({ "index": [a, b, c], "value": v })).collect();
        return Ok(Report::new(text.join("\n"), json!({ "algebra": rep.name, "structure_constants": json_rows })));
    }
    let c = casimir_insertion(&rep);
    let rows: Vec<Vec<String>> = c.rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    let text = match c.as_rational_multiple_of_identity() {
        Some(k) => format!("{c}\n= {} * identity", fmt_rational(&k)),
        None => c.to_string(),
    };
    Ok(Report::new(text, json!({ "algebra": rep.name, "casimir": rows })))
}

fn fourterm(args: FourtermArgs) -> Result<Report> {
    let rep = algebra(&args.algebra.algebra)?;
    let report = check_four_term(&rep, args.m);
    if !report.all_vanish() {
        return Err(CliError::FourTermViolated(report.violations.len()));
    }
    Ok(Report::new(
        "all 4T combinations vanish: OK",
        json!({ "algebra": rep.name, "m": args.m, "relations": report.relations, "all_vanish": true }),
    ))
}

fn read_link(input: &DiagramInput) -> Result<Link> {
    if let Some(g) = &input.gauss {
        return Ok(g.parse()?);
    }
    let pd: PdCode = input.pd.as_deref().unwrap_or_default().parse()?;
    Ok(Link::knot(pd.to_gauss()?))
}

fn base_invariant(kind: InvariantKind) -> Box<dyn KnotInvariant> {
    match kind {
        InvariantKind::Conway => Box::new(Conway::default()),
        InvariantKind::V2 => Box::new(V2::default()),
    }
}

fn poly_report(p: &Poly, extra: Value) -> Report {
    let mut j = poly(p, "z");
    if let (Value::Object(map), Value::Object(more)) = (&mut j, extra) {
        map.extend(more);
    }
    Report::new(p.display_with("z"), j)
}

fn invariant(args: InvariantArgs) -> Result<Report> {
    let link = read_link(&args.input)?;
    Ok(match args.kind {
        InvariantKind::Conway => poly_report(&Conway::default().evaluate(&link)?, json!({ "invariant": "conway" })),
        InvariantKind::V2 => {
            let v = vasskit::vassiliev::v2(&link)?;
            Report::new(fmt_rational(&v), json!({ "invariant": "v2", "value": rational(&v) }))
        }
    })
}

fn parse_rational_arg(name: &str, text: &str) -> Result<BigRational> {
    parse_rational(text).ok_or_else(|| CliError::Input(format!("--{name}: `{text}` is not a rational number")))
}

fn graph(cmd: GraphCmd) -> Result<Report> {
    match cmd {
        GraphCmd::Extend { input, nodes, a, b, c, invariant } => {
            let cfg = GraphExtensionConfig::new(
                parse_rational_arg("a", &a)?,
                parse_rational_arg("b", &b)?,
                parse_rational_arg("c", &c)?,
            );
            let s = SingularKnotDiagram::with_nodes(read_link(&input)?, nodes)?;
            let v = extend_to_graph(base_invariant(invariant).as_ref(), &cfg, &s)?;
            Ok(poly_report(&v, json!({ "nodes": s.nodes().iter().collect::<Vec<_>>() })))
        }
        GraphCmd::Symbol { diagram, invariant, second_end, descending } => {
            let d: ChordDiagram = diagram.parse()?;
            let how = Realization {
                finger_from: if second_end { EndChoice::Second } else { EndChoice::First },
                ordinary: if descending { OrdinaryCrossings::Descending } else { OrdinaryCrossings::Ascending },
            };
            let v = symbol_with(base_invariant(invariant).as_ref(), d.order(), &d, how)?;
            Ok(poly_report(&v, json!({ "diagram": d.to_string() })))
        }
    }
}

fn load(path: &Path) -> Result<MorseEmbedding> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(MorseEmbedding::from_json(&text)?)
}

fn quadrature(q: &QuadratureArgs, threads: usize) -> QuadratureConfig {
    let scheme = match q.scheme {
        SchemeArg::Log => Scheme::LogIncrement,
        SchemeArg::Midpoint => Scheme::Midpoint,
        SchemeArg::Trapezoid => Scheme::Trapezoid,
    };
    QuadratureConfig { subdivisions: q.subdiv, margin: q.margin, scheme, threads }
}

fn kontsevich(cmd: KontsevichCmd, threads: usize) -> Result<Report> {
    match cmd {
        KontsevichCmd::V2 { knot, unknot, quad } => {
            let r = v2_numeric(&load(&knot)?, &load(&unknot)?, &quadrature(&quad, threads))?;
            let mut text = format!(
                "value: {}\nimaginary residual: {:.3e}\nsubdivisions  value  delta\n",
                float_text(r.value),
                r.imag_residual
            );
            for row in &r.refinement {
                let delta = row.delta.map_or("-".to_string(), |d| format!("{d:.3e}"));
                text.push_str(&format!("{}  {}  {delta}\n", row.subdivisions, float_text(row.value)));
            }
            let rows: Vec<Value> = r
                .refinement
                .iter()
                .map(|row| json!({ "subdivisions": row.subdivisions, "value": float(row.value), "delta": row.delta.map(float) }))
                .collect();
            Ok(Report::new(
                text,
                json!({ "value": float(r.value), "imag_residual": float(r.imag_residual), "refinement": rows }),
            ))
        }
        KontsevichCmd::Coefficient { embedding, diagram, quad } => {
            let d: ChordDiagram = diagram.parse()?;
            let c = raw_coefficient(&load(&embedding)?, &d, &quadrature(&quad, threads))?;
            Ok(Report::new(
                format!("value: {}\nimaginary residual: {:.3e}", float_text(c.value), c.imag_residual),
                json!({ "diagram": d.canonical().to_string(), "value": float(c.value), "imag_residual": float(c.imag_residual) }),
            ))
        }
        KontsevichCmd::Expand { embedding, algebra: alg, order, quad } => {
            let rep = algebra(&alg.algebra)?;
            let terms = weighted_expansion(&load(&embedding)?, &rep, order, &quadrature(&quad, threads))?;
            let text: Vec<String> = terms
                .iter()
                .map(|t| {
                    format!("order {}: {}  (imaginary residual {:.3e})", t.order, float_text(t.value), t.imag_residual)
                })
                .collect();
            let rows: Vec<Value> = terms
                .iter()
                .map(|t| json!({ "order": t.order, "value": float(t.value), "imag_residual": float(t.imag_residual) }))
                .collect();
            Ok(Report::new(text.join("\n"), json!({ "algebra": rep.name, "terms": rows })))
        }
        KontsevichCmd::Strands { embedding, t, margin } => {
            let cfg = QuadratureConfig { margin, threads, ..Default::default() };
            let strands = strands_at(&load(&embedding)?, t, &cfg)?;
            let dir = |d: Direction| if d == Direction::Up { "up" } else { "down" };
            let text: Vec<String> = strands
                .iter()
                .map(|s| {
                    format!(
                        "z = {} {:+.12} i  {}  arc {}",
                        float_text(s.z.re),
                        s.z.im,
                        dir(s.direction),
                        float_text(s.arc)
                    )
                })
                .collect();
            let rows: Vec<Value> = strands
                .iter()
                .map(|s| json!({ "re": float(s.z.re), "im": float(s.z.im), "direction": dir(s.direction), "arc": float(s.arc) }))
                .collect();
            Ok(Report::new(
                if text.is_empty() { "no strands".to_string() } else { text.join("\n") },
                json!({ "t": float(t), "strands": rows }),
            ))
        }
    }
}

fn moments(args: MomentsArgs) -> Result<Report> {
    if let Some(n) = args.n {
        let v = moment(n);
        return Ok(Report::new(fmt_rational(&v), json!({ "n": n, "value": rational(&v) })));
    }
    if let Some(text) = args.poly {
        let p = Poly::parse(&text, 'x')?;
        let v = reduce(&p);
        return Ok(Report::new(fmt_rational(&v), json!({ "poly": p.display_with("x"), "value": rational(&v) })));
    }
    let s = source_series(args.series.unwrap_or_default());
    let text: Vec<String> = s.coeffs().iter().enumerate().map(|(n, c)| format!("J^{n}: {}", fmt_rational(c))).collect();
    Ok(Report::new(text.join("\n"), json!({ "coefficients": s.coeffs().iter().map(rational).collect::<Vec<_>>() })))
}
