use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use fqlab_core::fpgroup::{
    classify_density, fq_up_to, oq_up_to, smooth_quotients, CosetTable, DensityClass, Letter, Presentation,
    QuotientOrders, SearchConfig,
};
use fqlab_core::graphs::{
    build_sw, build_w, coset_graph_orders, cubic_arc_regular_orders, fixture_corpus, odd_edge_core,
    transitivity_report, w_order_density, GraphAction,
};
use fqlab_core::numtheory::{
    density_series, factor, format_ratio, np_contains, sieve, Predicate, SieveConfig,
};
use fqlab_core::permgroup::{
    builtin_catalog, normal_sylow_quotient, parse_catalog, verify_odd_lemma, verify_quasiprimitive_odd,
    verify_struc_lemma, CatalogEntry, StrucOutcome,
};
use fqlab_core::Execution;

use crate::args::{
    CensusArgs, ClassifyArgs, Command, DensityArgs, Family, FqArgs, GraphsArgs, OutputArgs, SetArgs, SetName,
    SmoothArgs,
};
use crate::error::CliError;
use crate::manifest::RunManifest;

/// Element cap for the groups generated on graphs.
const GRAPH_GROUP_CAP: usize = 20_000;

pub struct Context {
    pub exec: Execution,
    pub budget: Option<u64>,
    pub fixtures: Option<PathBuf>,
    pub manifest: RunManifest,
}

impl Context {
    fn search(&self) -> SearchConfig {
        let c = SearchConfig::default().with_exec(self.exec);
        match self.budget {
            Some(b) => c.with_budget(b),
            None => c,
        }
    }

    fn sieve(&self) -> SieveConfig {
        SieveConfig::default().with_exec(self.exec)
    }

    fn presentation(&mut self, path: &Path) -> Result<Presentation, CliError> {
        let text = self.manifest.read_input(path)?;
        Presentation::parse(&text).map_err(|e| CliError::input(path, e))
    }
}

/// Runs one subcommand; `Ok(false)` means the result is partial.
pub fn run(cmd: &Command, ctx: &mut Context) -> Result<bool, CliError> {
    match cmd {
        Command::Sieve(a) => sieve_cmd(a, ctx),
        Command::Density(a) => density_cmd(a, ctx),
        Command::Fq(a) => fq_cmd(a, ctx, a.odd_only),
        Command::Oq(a) => fq_cmd(a, ctx, true),
        Command::Classify(a) => classify_cmd(a, ctx),
        Command::Smooth(a) => smooth_cmd(a, ctx),
        Command::Census(a) => census_cmd(a, ctx),
        Command::Graphs(a) => graphs_cmd(a, ctx),
        Command::Verify(a) => verify_cmd(a, ctx),
    }
}

fn csv_writer(out: &OutputArgs) -> Result<csv::Writer<Box<dyn Write>>, CliError> {
    let sink: Box<dyn Write> = match &out.csv {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn finish(mut w: csv::Writer<Box<dyn Write>>) -> Result<(), CliError> {
    w.flush().map_err(|e| CliError::io("<csv output>", e))
}

fn predicate(a: &SetArgs) -> Result<Predicate, CliError> {
    let bad = |m: String| CliError::Usage(m);
    let pred = match (a.set, &a.predicate) {
        (Some(_), Some(_)) => return Err(bad("--set and --predicate are exclusive".into())),
        (None, Some(text)) => return Predicate::parse(text).map_err(|e| bad(e.to_string())),
        (None, None) => return Err(bad("one of --set or --predicate is required".into())),
        (Some(SetName::Np), _) => Predicate::Np(a.p.ok_or_else(|| bad("--set np needs --p".into()))?),
        (Some(SetName::Pp), _) => Predicate::Pp(a.a.ok_or_else(|| bad("--set pp needs --a".into()))?),
        (Some(SetName::Sp), _) => Predicate::Sp(a.a.ok_or_else(|| bad("--set sp needs --a".into()))?),
        (Some(SetName::All), _) => Predicate::All,
        (Some(SetName::Even), _) => Predicate::Even,
        (Some(SetName::Primes), _) => Predicate::Primes,
        (Some(SetName::Squarefree), _) => Predicate::Squarefree,
    };
    // round trip through the parser for its validation
    Predicate::parse(&pred.to_string()).map_err(|e| bad(e.to_string()))
}

fn sieve_cmd(a: &SetArgs, ctx: &mut Context) -> Result<bool, CliError> {
    let pred = predicate(a)?;
    if a.limit == 0 {
        return Err(CliError::Usage("--limit must be positive".into()));
    }
    let m = sieve(pred, a.limit, &ctx.sieve()).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut w = csv_writer(&a.output)?;
    w.write_record(["limit", "count", "density"])?;
    w.write_record([a.limit.to_string(), m.count().to_string(), format_ratio(m.count(), a.limit)])?;
    finish(w)?;
    Ok(true)
}

fn density_cmd(a: &DensityArgs, ctx: &mut Context) -> Result<bool, CliError> {
    let pred = predicate(&a.set)?;
    let series = density_series(pred, a.set.limit, &a.checkpoints, &ctx.sieve())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut w = csv_writer(&a.set.output)?;
    w.write_record(["limit", "count", "density"])?;
    for c in &series.checkpoints {
        w.write_record([c.limit.to_string(), c.count.to_string(), c.ratio_string()])?;
    }
    finish(w)?;
    Ok(true)
}

fn search_error(e: fqlab_core::fpgroup::FpError) -> CliError {
    use fqlab_core::fpgroup::FpError;
    match e {
        FpError::Undecided { .. } | FpError::IncompleteTable => CliError::Undecided(e.to_string()),
        FpError::BadTable(_) => CliError::Invariant(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn check_max_index(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("--max-index must be positive".into()));
    }
    Ok(())
}

fn write_orders(
    q: &QuotientOrders,
    pres: &Presentation,
    out: &OutputArgs,
    tables: Option<&Path>,
) -> Result<bool, CliError> {
    q.verify(pres).map_err(|e| CliError::Invariant(format!("certificate re-check failed: {e}")))?;
    let mut w = csv_writer(out)?;
    w.write_record(["order", "complete"])?;
    for c in &q.orders {
        w.write_record([c.order.to_string(), q.complete.to_string()])?;
    }
    finish(w)?;
    if let Some(dir) = tables {
        emit_tables(dir, pres, q.orders.iter().map(|c| (c.order, &c.certificate)))?;
    }
    Ok(q.complete)
}

/// One CSV per table: `coset` then a column per generator and inverse.
fn emit_tables<'a>(
    dir: &Path,
    pres: &Presentation,
    tables: impl Iterator<Item = (usize, &'a CosetTable)>,
) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let names = pres.generator_names();
    let mut header = vec!["coset".to_string()];
    for n in names {
        header.push(n.clone());
        header.push(format!("{n}^-1"));
    }
    for (order, t) in tables {
        let path = dir.join(format!("quotient_{order:06}.csv"));
        let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        w.write_record(&header)?;
        for c in 0..t.index() {
            let mut row = vec![c.to_string()];
            for g in 0..names.len() {
                for l in [Letter::gen(g), Letter::gen_inv(g)] {
                    let target = t.get(c, l).ok_or_else(|| CliError::Invariant("incomplete certificate".into()))?;
                    row.push(target.to_string());
                }
            }
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}

fn fq_cmd(a: &FqArgs, ctx: &mut Context, odd: bool) -> Result<bool, CliError> {
    check_max_index(a.max_index)?;
    let pres = ctx.presentation(&a.presentation)?;
    let config = ctx.search();
    let q = if odd { oq_up_to(&pres, a.max_index, &config) } else { fq_up_to(&pres, a.max_index, &config) }
        .map_err(search_error)?;
    write_orders(&q, &pres, &a.output, a.emit_tables.as_deref())
}

fn classify_cmd(a: &ClassifyArgs, ctx: &mut Context) -> Result<bool, CliError> {
    let pres = ctx.presentation(&a.presentation)?;
    let class = classify_density(&pres).map_err(search_error)?;
    if !class.verify(&pres) {
        return Err(CliError::Invariant(format!("{} witness does not re-verify", class.tag())));
    }
    let witness = match &class {
        DensityClass::InfiniteCyclic(w) => {
            let images: Vec<String> = w.images.iter().map(ToString::to_string).collect();
            format!("images={}", images.join(" "))
        }
        DensityClass::InfiniteDihedral(w) => {
            let sub = w.subgroup.presentation();
            let gens: Vec<String> = (0..sub.num_generators())
                .map(|k| format!("{}={}", sub.generator_names()[k], pres.word_to_string(&w.subgroup.expand(k))))
                .collect();
            let images: Vec<String> = w.surjection.images.iter().map(ToString::to_string).collect();
            format!(
                "index_two_generators=[{}] outer={} images_to_z=[{}]",
                gens.join(" "),
                pres.word_to_string(&w.outer),
                images.join(" ")
            )
        }
        DensityClass::DensityZero(n) => {
            let inv: Vec<String> = n.abelianization.invariants().iter().map(ToString::to_string).collect();
            let two: Vec<String> = n
                .index_two
                .iter()
                .map(|(_, inv)| {
                    let v: Vec<String> = inv.iter().map(ToString::to_string).collect();
                    format!("[{}]", v.join(" "))
                })
                .collect();
            format!("smith_invariants=[{}] index_two_dihedralizations={}", inv.join(" "), two.join(" "))
        }
    };
    let mut w = csv_writer(&a.output)?;
    w.write_record(["class", "density", "witness"])?;
    w.write_record([class.tag(), class.density(), &witness])?;
    finish(w)?;
    Ok(true)
}

fn smooth_cmd(a: &SmoothArgs, ctx: &mut Context) -> Result<bool, CliError> {
    check_max_index(a.max_index)?;
    if a.orders.iter().any(|&s| s < 2) {
        return Err(CliError::Usage("cyclic orders must be at least 2".into()));
    }
    let pres = Presentation::free_product_of_cyclics(&a.orders).map_err(|e| CliError::Usage(e.to_string()))?;
    let q = smooth_quotients(&a.orders, a.max_index, &ctx.search()).map_err(search_error)?;
    write_orders(&q, &pres, &a.output, a.emit_tables.as_deref())
}

fn census_cmd(a: &CensusArgs, ctx: &mut Context) -> Result<bool, CliError> {
    check_max_index(a.max_index)?;
    let config = ctx.search();
    let (census, pres) = match (&a.presentation, a.stabilizer_order) {
        (Some(path), Some(s)) => {
            let pres = ctx.presentation(path)?;
            let c = coset_graph_orders(&pres, s, a.max_index, &config)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            (c, pres)
        }
        _ => {
            let pres = Presentation::free_product_of_cyclics(&[3, 2]).expect("valid");
            let c = cubic_arc_regular_orders(a.max_index, &config).map_err(|e| CliError::Usage(e.to_string()))?;
            (c, pres)
        }
    };
    census
        .quotients
        .verify(&pres)
        .map_err(|e| CliError::Invariant(format!("certificate re-check failed: {e}")))?;
    let mut w = csv_writer(&a.output)?;
    w.write_record(["order", "certificate_index", "flagged"])?;
    for e in &census.entries {
        w.write_record([e.order.to_string(), e.certificate_index.to_string(), e.flagged.to_string()])?;
    }
    finish(w)?;
    if let Some(dir) = &a.emit_tables {
        let certs = census
            .quotients
            .orders
            .iter()
            .filter(|c| census.entries.iter().any(|e| e.certificate_index == c.order))
            .map(|c| (c.order, &c.certificate));
        emit_tables(dir, &pres, certs)?;
    }
    Ok(census.complete())
}

fn write_edges(ga: &GraphAction, path: Option<&Path>) -> Result<(), CliError> {
    let g = ga.graph();
    let mut text = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        text.push_str(&format!("{u} {v}\n"));
    }
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

const REPORT_HEADER: [&str; 12] = [
    "fixture",
    "vertices",
    "edges",
    "vertex_transitive",
    "edge_transitive",
    "arc_transitive",
    "locally_transitive",
    "vertex_orbits",
    "edge_orbits",
    "arc_orbits",
    "connected",
    "violations",
];

fn report_row(name: &str, ga: &GraphAction) -> Result<(Vec<String>, bool), CliError> {
    let r = transitivity_report(ga, GRAPH_GROUP_CAP).map_err(|e| CliError::Usage(e.to_string()))?;
    let violations = r.violations();
    let row = vec![
        name.to_string(),
        ga.graph().vertex_count().to_string(),
        ga.graph().edge_count().to_string(),
        r.vertex_transitive.to_string(),
        r.edge_transitive.to_string(),
        r.arc_transitive.to_string(),
        r.locally_transitive.to_string(),
        r.vertex_orbits.to_string(),
        r.edge_orbits.to_string(),
        r.arc_orbits.to_string(),
        r.connected.to_string(),
        violations.join("; "),
    ];
    Ok((row, violations.is_empty()))
}

fn graphs_cmd(a: &GraphsArgs, ctx: &mut Context) -> Result<bool, CliError> {
    if let Some(kmax) = a.w_density {
        let limit = a.limit.expect("clap requires --limit");
        let mut w = csv_writer(&a.output)?;
        w.write_record(["k", "count", "limit", "density"])?;
        for k in 1..=kmax {
            let (count, n) = w_order_density(k, limit).map_err(|e| CliError::Usage(e.to_string()))?;
            w.write_record([k.to_string(), count.to_string(), n.to_string(), format_ratio(count as u64, n as u64)])?;
        }
        finish(w)?;
        return Ok(true);
    }
    let mut ok = true;
    let rows: Vec<Vec<String>> = if let Some(family) = a.family {
        let (k, r) = (a.k.expect("clap requires --k"), a.r.expect("clap requires --r"));
        let (name, ga) = match family {
            Family::W => (format!("W({k},{r})"), build_w(k, r)),
            Family::Sw => (format!("SW({k},{r})"), build_sw(k, r)),
        };
        let ga = ga.map_err(|e| CliError::Usage(e.to_string()))?;
        if a.edges.is_some() || a.output.csv.is_none() {
            write_edges(&ga, a.edges.as_deref())?;
        }
        if a.output.csv.is_none() {
            return Ok(true);
        }
        let (row, clean) = report_row(&name, &ga)?;
        ok &= clean;
        vec![row]
    } else {
        let corpus = fixture_corpus();
        let results = ctx.exec.map(&corpus, |f| report_row(&f.name, &f.action));
        let mut rows = Vec::with_capacity(results.len());
        for r in results {
            let (row, clean) = r?;
            ok &= clean;
            rows.push(row);
        }
        rows
    };
    let mut w = csv_writer(&a.output)?;
    w.write_record(REPORT_HEADER)?;
    for row in &rows {
        w.write_record(row)?;
    }
    finish(w)?;
    if !ok {
        return Err(CliError::Invariant("transitivity implications violated".into()));
    }
    Ok(true)
}

/// One row of the verification table.
struct Check {
    lemma: &'static str,
    fixture: String,
    pass: bool,
    detail: String,
}

fn catalog(ctx: &mut Context) -> Result<Vec<CatalogEntry>, CliError> {
    match ctx.fixtures.clone() {
        Some(path) => {
            let text = ctx.manifest.read_input(&path)?;
            parse_catalog(&text).map_err(|e| CliError::input(&path, e))
        }
        None => Ok(builtin_catalog()),
    }
}

fn group_checks(entry: &CatalogEntry) -> Vec<Check> {
    let g = &entry.group;
    let name = &entry.name;
    let mut out = Vec::new();
    let check = |lemma, pass, detail: String| Check { lemma, fixture: name.clone(), pass, detail };
    out.push(match verify_odd_lemma(g) {
        Ok(r) => {
            let failed = r.entries.iter().filter(|e| !e.pass).count();
            check("odd_quotient", r.passed(), format!("normal subgroups {} failed {failed}", r.entries.len()))
        }
        Err(e) => check("odd_quotient", false, e.to_string()),
    });
    let order = g.order() as u64;
    for &(p, _) in factor(order).expect("order is positive").factors() {
        if !np_contains(order, p).unwrap_or(false) {
            continue;
        }
        let lemma = "normal_sylow_quotient";
        out.push(match normal_sylow_quotient(g, p) {
            Ok((_, r)) => check(lemma, r.valid(), format!("p={p} quotient={}", r.structure())),
            Err(e) => check(lemma, false, format!("p={p} {e}")),
        });
    }
    for a in 1..=12 {
        match verify_struc_lemma(g, a) {
            Ok(StrucOutcome::HypothesesFail(_)) => {}
            Ok(o @ StrucOutcome::Checked { witness_prime, shape }) => out.push(check(
                "odd_a_quotient_not_cyclic",
                o.pass(),
                format!("a={a} p={witness_prime} shape={shape}"),
            )),
            Err(e) => out.push(check("odd_a_quotient_not_cyclic", false, format!("a={a} {e}"))),
        }
    }
    if g.is_transitive() && g.degree() >= 3 {
        out.push(match verify_quasiprimitive_odd(g) {
            Ok(r) => check(
                "quasiprimitive_odd_transitive",
                r.pass(),
                format!("quasiprimitive={} odd_part_order={}", r.quasiprimitive, r.odd_part_order),
            ),
            Err(e) => check("quasiprimitive_odd_transitive", false, e.to_string()),
        });
    }
    out
}

/// One edge from each orbit of the generated group on edges.
fn edge_orbit_reps(ga: &GraphAction) -> Vec<(usize, usize)> {
    let edges = ga.graph().edges();
    let mut seen = vec![false; edges.len()];
    let mut reps = Vec::new();
    for i in 0..edges.len() {
        if seen[i] {
            continue;
        }
        reps.push(edges[i]);
        seen[i] = true;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            let (u, v) = edges[j];
            for g in ga.generators() {
                let (x, y) = (g.apply(u), g.apply(v));
                let e = (x.min(y), x.max(y));
                let k = edges.binary_search(&e).expect("generators are automorphisms");
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    reps
}

fn graph_checks(name: &str, ga: &GraphAction) -> Vec<Check> {
    let mut out = Vec::new();
    let check = |lemma, pass, detail: String| Check { lemma, fixture: name.to_string(), pass, detail };
    match transitivity_report(ga, GRAPH_GROUP_CAP) {
        Ok(r) => {
            let v = r.violations();
            let detail = if v.is_empty() {
                format!(
                    "vertex={} edge={} arc={} local={}",
                    r.vertex_transitive, r.edge_transitive, r.arc_transitive, r.locally_transitive
                )
            } else {
                v.join("; ")
            };
            out.push(check("transitivity_implications", v.is_empty(), detail));
        }
        Err(e) => out.push(check("transitivity_implications", false, e.to_string())),
    }
    if ga.group(GRAPH_GROUP_CAP).is_ok() {
        for (u, v) in edge_orbit_reps(ga) {
            out.push(match odd_edge_core(ga, u, v, GRAPH_GROUP_CAP) {
                Ok(c) => check("odd_edge_core", c.passes(), format!("edge={u}-{v} order={}", c.h.order())),
                Err(e) => check("odd_edge_core", false, format!("edge={u}-{v} {e}")),
            });
        }
    }
    out
}

fn verify_cmd(a: &OutputArgs, ctx: &mut Context) -> Result<bool, CliError> {
    let groups = catalog(ctx)?;
    let corpus = fixture_corpus();
    let mut checks: Vec<Check> = ctx.exec.map(&groups, group_checks).into_iter().flatten().collect();
    checks.extend(ctx.exec.map(&corpus, |f| graph_checks(&f.name, &f.action)).into_iter().flatten());
    let mut w = csv_writer(a)?;
    w.write_record(["lemma", "fixture", "result", "detail"])?;
    for c in &checks {
        w.write_record([c.lemma, &c.fixture, if c.pass { "pass" } else { "fail" }, &c.detail])?;
    }
    finish(w)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(CliError::Invariant(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(set: Option<SetName>, predicate: Option<&str>, p: Option<u64>, a: Option<u64>) -> SetArgs {
        SetArgs { set, predicate: predicate.map(String::from), p, a, limit: 10, output: OutputArgs { csv: None } }
    }

    #[test]
    fn predicate_resolution() {
        assert_eq!(predicate(&set(Some(SetName::Np), None, Some(5), None)).unwrap(), Predicate::Np(5));
        assert_eq!(predicate(&set(Some(SetName::Sp), None, None, Some(6))).unwrap(), Predicate::Sp(6));
        assert_eq!(predicate(&set(None, Some("pp:4"), None, None)).unwrap(), Predicate::Pp(4));
        assert!(predicate(&set(Some(SetName::Np), None, None, Some(3))).is_err());
        assert!(predicate(&set(Some(SetName::Np), None, Some(9), None)).is_err());
        assert!(predicate(&set(None, None, None, None)).is_err());
    }
}
