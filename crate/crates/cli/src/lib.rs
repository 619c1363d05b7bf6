//! Commands behind the `regmatch` binary. Each builds a [`Report`].

pub mod report;

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use regmatch::graph::generate::corpus_up_to;
use regmatch::graph::{canonical_form, diamond_necklace, necklace, parse_graph6, to_graph6, Graph};
use regmatch::matchpoly::matching_gen_poly;
use regmatch::minimax::{lambda_interval, ladder_verify, remez_best_approx, standard_ladder};
use regmatch::necklace::{
    critical_constants, discriminant, necklace_partition_via_trace, predicted_order, transfer_matrix,
};
use regmatch::numeric::dyadic::rational_to_decimal;
use regmatch::numeric::IntPoly;
use regmatch::polytope::{edmonds_check, even_d_threshold, matching_lower_bound_check, OddSetMethod};
use regmatch::series::verify_inequality;
use regmatch::walks::{infinite_tree_doubled, power_sums_newton};

pub use report::{Format, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {source}")]
    Input { line: usize, source: regmatch::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] regmatch::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Malformed input and bad arguments exit with 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A graph with where it came from.
#[derive(Clone, Debug)]
pub struct Labelled {
    pub name: String,
    pub graph: Graph,
}

/// Parse graph6 lines, skipping blank lines; errors name the 1-based line.
pub fn read_graph6(text: &str) -> CliResult<Vec<Labelled>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let graph = parse_graph6(trimmed).map_err(|source| CliError::Input { line: i + 1, source })?;
        out.push(Labelled {
            name: format!("line {}", i + 1),
            graph,
        });
    }
    Ok(out)
}

/// `K4`, `K3,3`, `C5`, `P4`, `Q3`, `DN3`, `prism`, `petersen`, `circ8:1,2`.
pub fn named_graph(name: &str) -> CliResult<Graph> {
    let bad = || CliError::Usage(format!("unknown graph name {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let lower = name.to_ascii_lowercase();
    Ok(match lower.as_str() {
        "prism" => Graph::prism(),
        "petersen" => Graph::petersen(),
        _ if lower.starts_with("circ") => {
            let (n, jumps) = lower[4..].split_once(':').ok_or_else(bad)?;
            let jumps = jumps.split(',').map(num).collect::<CliResult<Vec<_>>>()?;
            Graph::circulant(num(n)?, &jumps)
        }
        _ if lower.starts_with("dn") => diamond_necklace(num(&lower[2..])?.max(2)),
        _ if lower.starts_with('k') => match lower[1..].split_once(',') {
            Some((a, b)) => Graph::complete_bipartite(num(a)?, num(b)?),
            None => Graph::complete(num(&lower[1..])?),
        },
        _ if lower.starts_with('c') => Graph::cycle(num(&lower[1..])?),
        _ if lower.starts_with('p') => Graph::path(num(&lower[1..])?),
        _ if lower.starts_with('q') => Graph::hypercube(num(&lower[1..])?),
        _ => return Err(bad()),
    })
}

/// `p/q` or a decimal such as `-0.3575`.
pub fn parse_rational(text: &str) -> CliResult<BigRational> {
    let bad = || CliError::Usage(format!("cannot parse {text:?} as a rational number"));
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac.is_empty()) || !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac}").parse().map_err(|_| bad())?;
    let v = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -v } else { v })
}

fn show_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn coefficients(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn finish(mut r: Report, start: Instant) -> Report {
    r.seal();
    r.elapsed_ms = start.elapsed().as_millis();
    r
}

/// Coefficients `m_0 m_1 ...` of `M_G(λ)` per input graph.
pub fn cmd_poly(graphs: &[Labelled]) -> Report {
    let start = Instant::now();
    let mut r = Report::new("poly", &["coefficients"]);
    r.generative = true;
    r.headerless = true;
    let polys: Vec<String> = graphs.par_iter().map(|g| coefficients(&matching_gen_poly(&g.graph))).collect();
    for p in polys {
        r.push(vec![p]);
    }
    r.set_corpus(&graphs.iter().map(|g| to_graph6(&g.graph)).collect::<Vec<_>>());
    finish(r, start)
}

/// `2a_1..2a_K` for `K_{d+1}`, the infinite tree and the necklaces `N_3`, `N_2`.
pub fn cmd_ak_table(d: usize, k: usize) -> CliResult<Report> {
    if d < 2 || k == 0 {
        return Err(CliError::Usage("ak-table needs d ≥ 2 and K ≥ 1".into()));
    }
    let start = Instant::now();
    let mut columns = vec!["row".to_string()];
    columns.extend((1..=k).map(|i| i.to_string()));
    let refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut r = Report::new("ak-table", &refs);
    r.generative = true;
    r.param("d", d).param("K", k);
    let complete = Graph::complete(d + 1);
    let name = |k: usize| if d == 3 { format!("DN_{k}") } else { format!("K_{}N_{k}", d + 1) };
    let graphs = [
        (format!("K_{}", d + 1), complete.clone()),
        (name(3), necklace(&complete, 0, 1, 3)?),
        (name(2), necklace(&complete, 0, 1, 2)?),
    ];
    let doubled = |g: &Graph| {
        power_sums_newton(&matching_gen_poly(g), g.n(), k)
            .doubled()
            .iter()
            .map(show_rational)
            .collect::<Vec<_>>()
    };
    let mut rows = vec![(graphs[0].0.clone(), doubled(&graphs[0].1))];
    rows.push((format!("T_{d}"), infinite_tree_doubled(d, k).iter().map(|v| v.to_string()).collect()));
    for (n, g) in &graphs[1..] {
        rows.push((n.clone(), doubled(g)));
    }
    for (label, vals) in rows {
        let mut row = vec![format!("2a_k({label})")];
        row.extend(vals);
        r.push(row);
    }
    Ok(finish(r, start))
}

/// Graphs for a sweep: the generated corpus plus extra inputs.
pub struct Sweep {
    pub d: usize,
    pub nmax: Option<usize>,
    pub inputs: Vec<Labelled>,
    pub lambdas: Vec<BigRational>,
    /// Include the `K_{d+1}` necklaces `N_2..N_k`.
    pub necklaces: usize,
    pub precision: u32,
}

fn keyed(g: &Graph) -> String {
    to_graph6(&canonical_form(g).to_graph())
}

/// Certified `(1/n) ln M_G(λ) ≥ (1/(d+1)) ln M_{K_{d+1}}(λ)` over a corpus
/// and a λ grid.
pub fn cmd_verify(s: &Sweep) -> CliResult<Report> {
    if s.lambdas.is_empty() {
        return Err(CliError::Usage("verify needs at least one λ (--lambda or --grid-step)".into()));
    }
    let start = Instant::now();
    let mut graphs: Vec<Labelled> = Vec::new();
    if let Some(nmax) = s.nmax {
        graphs.extend(corpus_up_to(nmax, s.d)?.into_iter().map(|graph| Labelled {
            name: "corpus".into(),
            graph,
        }));
    }
    graphs.extend(s.inputs.iter().cloned());
    let complete = Graph::complete(s.d + 1);
    for k in 2..=s.necklaces {
        graphs.push(Labelled {
            name: if s.d == 3 { format!("DN_{k}") } else { format!("K_{}N_{k}", s.d + 1) },
            graph: necklace(&complete, 0, 1, k)?,
        });
    }
    let mut keyed_graphs: Vec<(String, Labelled)> = graphs.into_par_iter().map(|g| (keyed(&g.graph), g)).collect();
    keyed_graphs.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.name.cmp(&b.1.name)));
    for (_, g) in &keyed_graphs {
        g.graph.require_regular(s.d)?;
    }
    let jobs: Vec<(usize, usize)> = (0..keyed_graphs.len()).flat_map(|i| (0..s.lambdas.len()).map(move |j| (i, j))).collect();
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let (key, g) = &keyed_graphs[i];
            let lambda = &s.lambdas[j];
            let c = verify_inequality(&g.graph, s.d, lambda, s.precision)?;
            Ok(vec![
                key.clone(),
                g.name.clone(),
                g.graph.n().to_string(),
                show_rational(lambda),
                c.verdict.to_string(),
                if c.exact_tie { "0 (exact)".into() } else { rational_to_decimal(&c.margin.mid().to_rational(), 12) },
                format!("{:.2e}", c.margin.rad().to_f64()),
                c.precision.to_string(),
            ])
        })
        .collect::<regmatch::Result<_>>()?;
    let mut r = Report::new("verify", &["graph6", "source", "n", "lambda", "verdict", "margin", "radius", "bits"]);
    r.param("d", s.d)
        .param("nmax", s.nmax.map_or("-".into(), |n| n.to_string()))
        .param("lambdas", s.lambdas.len())
        .param("necklaces", s.necklaces)
        .param("precision_bits", s.precision);
    r.set_corpus(&keyed_graphs.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>());
    for row in rows {
        r.push(row);
    }
    let count = |v: &str| r.items.iter().filter(|row| row[4] == v).count();
    let summary = format!(
        "{} items: {} HOLDS, {} FAILS, {} INCONCLUSIVE",
        r.items.len(),
        count("HOLDS"),
        count("FAILS"),
        count("INCONCLUSIVE")
    );
    r.summary.push(summary);
    Ok(finish(r, start))
}

/// `λ = step, 2·step, ...` up to and including `max`.
pub fn lambda_grid(step: &BigRational, max: &BigRational) -> CliResult<Vec<BigRational>> {
    if !step.is_positive() {
        return Err(CliError::Usage("grid step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut cur = step.clone();
    while &cur <= max {
        out.push(cur.clone());
        cur += step;
    }
    Ok(out)
}

/// Ladder values from text: one `A` per line, `#` comments allowed.
pub fn read_ladder(text: &str) -> CliResult<Vec<BigRational>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        out.push(parse_rational(t).map_err(|e| CliError::Usage(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

/// Remez ladder for cubic graphs and its coverage of `(0, target]`.
pub fn cmd_ladder(ladder: &[BigRational], base_cap: &BigRational, target: &BigRational, tol: f64) -> CliResult<Report> {
    let start = Instant::now();
    let ladder = if ladder.is_empty() { standard_ladder() } else { ladder.to_vec() };
    let report = ladder_verify(&ladder, base_cap, target, tol)?;
    let mut r = Report::new("ladder", &["A", "lambda_min", "lambda_max", "A/8", "usable_hi", "epsilon", "verdict"]);
    r.param("ladder", ladder.iter().map(show_rational).collect::<Vec<_>>().join(" "))
        .param("base_cap", show_rational(base_cap))
        .param("target", show_rational(target))
        .param("tol", tol);
    for row in &report.rows {
        let i = &row.interval;
        let ok = i.lambda_min.to_rational() < i.usable_hi();
        r.push(vec![
            show_rational(&row.result.a),
            i.lambda_min.to_decimal(10),
            i.lambda_max.to_decimal(10),
            rational_to_decimal(&i.a_over_8, 10),
            rational_to_decimal(&i.usable_hi(), 10),
            row.result.epsilon.to_decimal(10),
            if ok { "HOLDS" } else { "FAILS" }.into(),
        ]);
    }
    let hi = rational_to_decimal(target, 6);
    if report.covered() {
        r.summary.push(format!("COVERED (0, {hi}]"));
    } else {
        r.failed = true;
        for g in &report.gaps {
            r.summary.push(format!("GAP [{}, {}]", rational_to_decimal(&g.lo, 10), rational_to_decimal(&g.hi, 10)));
        }
    }
    Ok(finish(r, start))
}

/// Minimax coefficients with their levelled error and λ-interval.
pub fn cmd_remez(a: &BigRational, degree: usize, tol: f64) -> CliResult<Report> {
    let start = Instant::now();
    let res = remez_best_approx(a, degree, tol)?;
    let mut r = Report::new("remez", &["quantity", "value"]);
    r.generative = true;
    r.param("A", show_rational(a)).param("degree", degree).param("tol", tol);
    for (j, c) in res.coeffs.iter().enumerate() {
        r.push(vec![format!("c_{j}"), c.to_decimal(12)]);
    }
    r.push(vec!["epsilon".into(), res.epsilon.to_decimal(12)]);
    for (i, x) in res.reference.iter().enumerate() {
        r.push(vec![format!("x_{i}"), x.to_decimal(12)]);
    }
    let (spread, alternates) = res.equioscillation();
    r.push(vec!["spread".into(), format!("{spread:.3e}")]);
    r.push(vec!["alternates".into(), alternates.to_string()]);
    r.push(vec!["iterations".into(), res.iterations.to_string()]);
    if degree == 4 {
        let li = lambda_interval(&res)?;
        r.push(vec!["lambda_min".into(), li.lambda_min.to_decimal(12)]);
        r.push(vec!["lambda_max".into(), li.lambda_max.to_decimal(12)]);
    }
    Ok(finish(r, start))
}

/// Certified brackets of `c_d` for odd `d ≤ dmax`.
pub fn cmd_cd(dmax: usize, width: &BigRational) -> CliResult<Report> {
    let start = Instant::now();
    let cs = critical_constants(dmax, width)?;
    let mut r = Report::new("cd", &["d", "c_d", "lo", "hi", "exact", "verdict"]);
    r.param("dmax", dmax).param("width", show_rational(width));
    for c in &cs {
        let mid = (&c.lo + &c.hi) / BigRational::from_integer(BigInt::from(2));
        r.push(vec![
            c.d.to_string(),
            rational_to_decimal(&mid, 10),
            rational_to_decimal(&c.lo, 14),
            rational_to_decimal(&c.hi, 14),
            c.exact.as_ref().map_or("-".into(), show_rational),
            if c.certified() { "HOLDS" } else { "FAILS" }.into(),
        ]);
    }
    if cs.windows(2).any(|w| w[0].hi >= w[1].lo) {
        r.failed = true;
        r.summary.push("brackets are not strictly increasing".into());
    }
    Ok(finish(r, start))
}

/// Transfer matrix of `G` along `(u, v)`, the trace identity for each `k`,
/// and the predicted order at `λ`.
pub fn cmd_necklace(g: &Graph, edge: (usize, usize), ks: &[usize], lambda: Option<&BigRational>) -> CliResult<Report> {
    let start = Instant::now();
    let (u, v) = edge;
    let tm = transfer_matrix(g, u, v)?;
    let disc = discriminant(g, u, v)?;
    let mut r = Report::new("necklace", &["quantity", "value", "verdict"]);
    r.param("graph6", to_graph6(g)).param("edge", format!("{u},{v}"));
    let info = |q: &str, p: &IntPoly| vec![q.to_string(), p.to_string(), String::new()];
    r.push(info("B[0][0] = M(G-e)", &tm.entries[0][0]));
    r.push(info("B[0][1] = M(G-u)", &tm.entries[0][1]));
    r.push(info("B[1][0] = λM(G-v)", &tm.entries[1][0]));
    r.push(info("B[1][1] = λM(G-u-v)", &tm.entries[1][1]));
    r.push(info("det B", &tm.det()));
    r.push(info("d(G_uv)", &disc));
    for &k in ks {
        let via_trace = necklace_partition_via_trace(&tm, k)?;
        let direct = matching_gen_poly(&necklace(g, u, v, k)?);
        r.push(vec![
            format!("M(N_{k}) = tr B^{k}"),
            via_trace.to_string(),
            if via_trace == direct { "HOLDS" } else { "FAILS" }.into(),
        ]);
    }
    if let Some(l) = lambda {
        r.param("lambda", show_rational(l));
        let predicted = predicted_order(g, u, v, l)?;
        let base = matching_gen_poly(g);
        r.push(vec!["d(G_uv)(λ)".into(), show_rational(&disc.eval_rational(l)), String::new()]);
        for &k in ks {
            let cover = matching_gen_poly(&necklace(g, u, v, k)?).eval_rational(l);
            let power = num_traits::pow(base.eval_rational(l), k);
            let actual = cover.cmp(&power);
            let sym = |o: Ordering| match o {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            r.push(vec![
                format!("M(N_{k}) vs M(G)^{k}"),
                sym(actual).into(),
                if actual == predicted { "HOLDS" } else { "FAILS" }.into(),
            ]);
        }
    }
    Ok(finish(r, start))
}

/// Matching-size bound and the uniform fractional witness over the corpus
/// of connected d-regular graphs, plus the large-λ threshold.
pub fn cmd_polytope(d: usize, nmax: Option<usize>, inputs: &[Labelled]) -> CliResult<Report> {
    let start = Instant::now();
    let threshold = even_d_threshold(d)?;
    let mut graphs: Vec<Labelled> = Vec::new();
    if let Some(n) = nmax {
        graphs.extend(corpus_up_to(n, d)?.into_iter().map(|graph| Labelled {
            name: "corpus".into(),
            graph,
        }));
    }
    graphs.extend(inputs.iter().cloned());
    let mut rows: Vec<(String, Vec<String>)> = graphs
        .par_iter()
        .map(|g| {
            let key = keyed(&g.graph);
            let m = matching_lower_bound_check(&g.graph, d)?;
            let (edmonds, verdict) = if g.graph.has_complete_component(d + 1) {
                ("excluded".to_string(), "EXCLUDED".to_string())
            } else {
                let w = edmonds_check(&g.graph, d)?;
                let how = match w.method {
                    OddSetMethod::Exhaustive { sets_checked } => format!("exhaustive ({sets_checked} odd sets)"),
                    OddSetMethod::CaseSplit => "case split".into(),
                };
                let ok = w.holds() && m.holds;
                (format!("{} {how}", if w.holds() { "in polytope" } else { "violated" }), if ok { "HOLDS" } else { "FAILS" }.into())
            };
            Ok((
                key.clone(),
                vec![
                    key,
                    g.name.clone(),
                    m.n.to_string(),
                    m.nu.to_string(),
                    show_rational(&m.bound),
                    edmonds,
                    verdict,
                ],
            ))
        })
        .collect::<CliResult<_>>()?;
    rows.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1[1].cmp(&b.1[1])));
    let mut r = Report::new("polytope", &["graph6", "source", "n", "nu", "bound", "edmonds", "verdict"]);
    r.param("d", d).param("nmax", nmax.map_or("-".into(), |n| n.to_string()));
    r.set_corpus(&rows.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>());
    for (_, row) in rows {
        r.push(row);
    }
    let units = BigRational::from_integer(BigInt::from(threshold.units));
    let margin = threshold.margin_in_units(&units);
    r.summary.push(format!(
        "T({d}) = {}·ln {} ≈ {}; comparator margin at T = {}",
        threshold.units,
        d + 1,
        threshold.value(64).mid().to_decimal(8),
        show_rational(&margin)
    ));
    if margin.is_negative() {
        r.failed = true;
    }
    Ok(finish(r, start))
}

/// `1/144`.
pub fn default_base_cap() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(144))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/12").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-0.125").unwrap(), BigRational::new((-1).into(), 8.into()));
        assert_eq!(parse_rational("2").unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(parse_rational(".5").unwrap(), BigRational::new(1.into(), 2.into()));
        for bad in ["", "1/0", "x", "1.2.3", "-", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn names() {
        assert_eq!(named_graph("K4").unwrap(), Graph::complete(4));
        assert_eq!(named_graph("k3,3").unwrap(), Graph::complete_bipartite(3, 3));
        assert_eq!(named_graph("circ8:1,2").unwrap(), Graph::circulant(8, &[1, 2]));
        assert_eq!(named_graph("DN3").unwrap().n(), 12);
        assert!(named_graph("wheel").is_err());
    }

    #[test]
    fn graph6_lines() {
        let gs = read_graph6("C~\n\nC]\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[1].name, "line 3");
        match read_graph6("C~\n!!\n") {
            Err(CliError::Input { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid() {
        let g = lambda_grid(&BigRational::new(1.into(), 400.into()), &parse_rational("0.3575").unwrap()).unwrap();
        assert_eq!(g.len(), 143);
    }
}
