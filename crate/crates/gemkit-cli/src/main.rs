//! gemkit command-line frontend: validation, invariant reports,
//! trisection verdicts, the framed-link compiler, graph connected sums
//! and the parallel census runner.

mod catalog;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gemkit::gem::{classify, parse_gem, Color, ColoredGraph};
use gemkit::genus::{canonical_p4, check_rho_difference, euler_char, genus_profile, ManifoldContext};
use gemkit::moves::normalize_to_gs4;
use gemkit::trisection::{
    census_cells, evaluate_cell, gtg_bounds, verdict, ApexMode, CensusRow, TrisectOptions,
    TrisectionVerdict,
};

const EXIT_USAGE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_IDENTITY: i32 = 3;

#[derive(Parser)]
#[command(name = "gemkit", version, about = "edge-colored graphs encoding PL 4-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a gem file (text or JSON).
    Validate { path: PathBuf },
    /// Residue table, classification flags and the genus table over the
    /// twelve canonical permutations.
    Info {
        path: PathBuf,
        /// Ranks m,m' of the fundamental groups, e.g. `--ctx 1,0`.
        #[arg(long, value_parser = parse_pair)]
        ctx: Option<(u32, u32)>,
        /// Emit one JSON record per permutation instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Trisection reports for a gem.
    Trisect {
        path: PathBuf,
        /// Apex color (default: 4 only).
        #[arg(long)]
        apex: Option<u8>,
        /// Sweep all five apex colors (closed manifolds only).
        #[arg(long)]
        all: bool,
        /// Search budget in visited states (env GEMKIT_BUDGET overrides
        /// the default of 10^6).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_parser = parse_pair)]
        ctx: Option<(u32, u32)>,
        /// Betti numbers `b1,b2` for the G-trisection-genus bounds.
        #[arg(long, value_parser = parse_pair)]
        betti: Option<(u32, u32)>,
        /// Heegaard genus of the boundary (user-supplied lower bound).
        #[arg(long)]
        boundary_heegaard: Option<u32>,
        /// Treat inconclusive sphere verdicts on residues as ordinary.
        #[arg(long)]
        assume_ordinary: bool,
    },
    /// Compile a framed link diagram into a gem plus certificate.
    Fromlink { pdfile: PathBuf, out: PathBuf },
    /// Run the census over a catalog, in parallel, deterministically.
    Census {
        catalog: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report path: rows as NDJSON here, summary CSV next to it.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        assume_ordinary: bool,
    },
    /// Graph connected sum of two gems.
    Consum {
        file1: PathBuf,
        /// Vertex in the first gem, or `auto` (last-collapsed square).
        v1: String,
        file2: PathBuf,
        /// Vertex in the second gem, or `auto` (first-collapsed square).
        v2: String,
        out: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `a,b`".into());
    }
    let a = parts[0].trim().parse().map_err(|_| "bad integer")?;
    let b = parts[1].trim().parse().map_err(|_| "bad integer")?;
    Ok((a, b))
}

fn default_budget() -> usize {
    std::env::var("GEMKIT_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

fn load_gem(path: &Path) -> Result<ColoredGraph, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {}", path.display(), e);
        EXIT_INPUT
    })?;
    parse_gem(&text).map_err(|e| {
        eprintln!("error: {}: {}", path.display(), e);
        EXIT_INPUT
    })
}

fn main() {
    // die quietly on closed pipes instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = match cli.command {
        Cmd::Validate { path } => cmd_validate(&path),
        Cmd::Info { path, ctx, json } => cmd_info(&path, ctx, json),
        Cmd::Trisect {
            path,
            apex,
            all,
            budget,
            ctx,
            betti,
            boundary_heegaard,
            assume_ordinary,
        } => cmd_trisect(
            &path,
            apex,
            all,
            budget.unwrap_or_else(default_budget),
            ctx,
            betti,
            boundary_heegaard,
            assume_ordinary,
        ),
        Cmd::Fromlink { pdfile, out } => cmd_fromlink(&pdfile, &out),
        Cmd::Census {
            catalog,
            jobs,
            report,
            budget,
            assume_ordinary,
        } => cmd_census(
            &catalog,
            jobs,
            report.as_deref(),
            budget.unwrap_or_else(default_budget),
            assume_ordinary,
        ),
        Cmd::Consum {
            file1,
            v1,
            file2,
            v2,
            out,
        } => cmd_consum(&file1, &v1, &file2, &v2, &out),
    };
    std::process::exit(code);
}

fn cmd_validate(path: &Path) -> i32 {
    match load_gem(path) {
        Ok(g) => {
            let tag = classify(&g, 10_000);
            println!(
                "ok: {} colors, {} vertices, bipartite={}, connected={}, crystallization={}",
                g.num_colors(),
                g.order(),
                tag.bipartite,
                tag.connected,
                tag.crystallization
            );
            0
        }
        Err(code) => code,
    }
}

fn resolve_ctx(ctx: Option<(u32, u32)>) -> Result<ManifoldContext, i32> {
    match ctx {
        Some((m, mp)) => ManifoldContext::new(m, mp).map_err(|e| {
            eprintln!("error: {}", e);
            EXIT_INPUT
        }),
        None => {
            println!("# context not supplied; assuming m = m' = 0");
            Ok(ManifoldContext::assumed_trivial())
        }
    }
}

fn cmd_info(path: &Path, ctx: Option<(u32, u32)>, json: bool) -> i32 {
    let g = match load_gem(path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let ctx = match resolve_ctx(ctx) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let tag = classify(&g, 20_000);
    println!("colors:          {}", g.num_colors());
    println!("vertices:        {}", g.order());
    println!("bipartite:       {}", tag.bipartite);
    println!("connected:       {}", tag.connected);
    println!("crystallization: {}", tag.crystallization);
    if g.num_colors() == 5 {
        println!("in_Gs4:          {:?}", tag.in_gs4);
    }
    let singular = tag.possibly_singular();
    if singular.is_empty() {
        println!("singular colors: none");
    } else {
        let parts: Vec<String> = singular
            .iter()
            .map(|c| format!("{} ({:?})", c, tag.color_status[c.index()]))
            .collect();
        println!("singular colors: {}", parts.join(", "));
    }
    println!();
    println!("residue counts g_c-hat:");
    for c in g.colors() {
        println!("  c = {}: {}", c, g.residue_count_hat(c));
    }
    if g.num_colors() == 5 && tag.bipartite && tag.connected && json {
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("gem");
        for eps in canonical_p4() {
            match gemkit::genus::genus_row(label, &g, &eps, &ctx) {
                Ok(row) => println!("{}", serde_json::to_string(&row).unwrap()),
                Err(e) => {
                    eprintln!("error: identity check failed at {}: {}", eps, e);
                    return EXIT_IDENTITY;
                }
            }
        }
        return 0;
    }
    if g.num_colors() == 5 && tag.bipartite && tag.connected {
        println!();
        println!("genus table over the 12 canonical permutations:");
        println!("{:<14} {:>4} {:>6} {:>5} {:>5}", "eps", "rho", "rho'", "chi", "wss");
        for eps in canonical_p4() {
            match genus_profile(&g, &eps, &ctx) {
                Ok(p) => {
                    let chi = euler_char(&g, &eps)
                        .map(|c| c.to_string())
                        .unwrap_or_else(|_| "-".into());
                    let rho_p = check_rho_difference(&g, &eps, &ctx, false)
                        .map(|r| r.rho_prime.to_string())
                        .unwrap_or_else(|_| "-".into());
                    let wss = gemkit::genus::is_weak_semi_simple(&g, &eps, &ctx)
                        .map(|b| if b { "yes" } else { "no" })
                        .unwrap_or("-");
                    println!(
                        "{:<14} {:>4} {:>6} {:>5} {:>5}",
                        eps.to_string(),
                        p.rho,
                        rho_p,
                        chi,
                        wss
                    );
                }
                Err(e) => {
                    eprintln!("error: identity check failed at {}: {}", eps, e);
                    return EXIT_IDENTITY;
                }
            }
        }
    }
    0
}

#[allow(clippy::too_many_arguments)]
fn cmd_trisect(
    path: &Path,
    apex: Option<u8>,
    all: bool,
    budget: usize,
    ctx: Option<(u32, u32)>,
    betti: Option<(u32, u32)>,
    boundary_heegaard: Option<u32>,
    assume_ordinary: bool,
) -> i32 {
    let g = match load_gem(path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if g.num_colors() != 5 {
        eprintln!("error: trisect needs a 5-colored gem");
        return EXIT_INPUT;
    }
    let ctx = match resolve_ctx(ctx) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let opts = TrisectOptions {
        budget,
        assume_ordinary,
    };
    println!("# assumption: inputs represent compact manifolds without spherical boundary components");
    let mode = if all {
        ApexMode::AllApices
    } else {
        ApexMode::Fixed4
    };
    let mut cells = census_cells(0, "<input>", &g, mode, ctx);
    if let Some(a) = apex {
        if a > 4 {
            eprintln!("error: apex {} out of range", a);
            return EXIT_INPUT;
        }
        if !all && a != 4 {
            cells = census_cells(0, "<input>", &g, ApexMode::AllApices, ctx);
        }
        cells.retain(|c| c.apex == Color(a));
    }
    let mut reports = Vec::new();
    for cell in &cells {
        let prepared = if cell.graph.residue_count_hat(Color(4)) != 1 {
            match normalize_to_gs4(&cell.graph) {
                Ok((g, _)) => g,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return EXIT_INPUT;
                }
            }
        } else {
            cell.graph.clone()
        };
        match verdict(&prepared, &cell.eps, &ctx, &opts) {
            Ok(rep) => {
                println!("{}", serde_json::to_string(&rep).expect("report serialization"));
                reports.push(rep);
            }
            Err(e) => {
                eprintln!("error: {}", e);
                return EXIT_IDENTITY;
            }
        }
    }
    if let Some((b1, b2)) = betti {
        match gtg_bounds(&reports, &ctx, (b1, b2), boundary_heegaard) {
            Ok(b) => println!("gtg_bounds: {}", serde_json::to_string(&b).unwrap()),
            Err(e) => println!("gtg_bounds: unavailable ({})", e),
        }
    }
    0
}

fn cmd_fromlink(pdfile: &Path, out: &Path) -> i32 {
    let text = match std::fs::read_to_string(pdfile) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", pdfile.display(), e);
            return EXIT_INPUT;
        }
    };
    match gemkit::linkforge::compile(&text, default_budget()) {
        Ok(result) => {
            if let Err(e) = std::fs::write(out, result.gem.to_gem_text()) {
                eprintln!("error: cannot write {}: {}", out.display(), e);
                return EXIT_INPUT;
            }
            let cert_path = out.with_extension("cert.json");
            let cert = serde_json::to_string_pretty(&result.certificate).unwrap();
            if let Err(e) = std::fs::write(&cert_path, cert) {
                eprintln!("error: cannot write {}: {}", cert_path.display(), e);
                return EXIT_INPUT;
            }
            println!(
                "wrote {} ({} vertices) and {}",
                out.display(),
                result.gem.order(),
                cert_path.display()
            );
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            EXIT_INPUT
        }
    }
}

fn census_row_csv(row: &CensusRow) -> String {
    let v = match row.verdict {
        Some(TrisectionVerdict::GemInduced) => "gem_induced",
        Some(TrisectionVerdict::NotCollapsible) => "not_collapsible",
        Some(TrisectionVerdict::Unknown) => "unknown",
        None => "error",
    };
    let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.graph,
        row.apex,
        row.pairing,
        v,
        opt(row.genus_central),
        opt(row.genus_h1),
        opt(row.genus_h2),
        opt(row.chi),
        row.checks_ok
    )
}

fn cmd_census(
    catalog_path: &Path,
    jobs: usize,
    report: Option<&Path>,
    budget: usize,
    assume_ordinary: bool,
) -> i32 {
    let (catalog, base) = match catalog::Catalog::load(catalog_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_INPUT;
        }
    };
    let opts = TrisectOptions {
        budget,
        assume_ordinary,
    };
    let mut cells = Vec::new();
    let mut error_rows: Vec<CensusRow> = Vec::new();
    for (idx, entry) in catalog.entries.iter().enumerate() {
        let path = base.join(&entry.path);
        let ctx = match ManifoldContext::new(entry.m, entry.m_prime) {
            Ok(c) => c,
            Err(e) => {
                error_rows.push(error_row(&entry.label, e.to_string()));
                continue;
            }
        };
        let loaded = std::fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_gem(&t).map_err(|e| e.to_string()));
        match loaded {
            Ok(g) => {
                let mode = if entry.closed {
                    ApexMode::AllApices
                } else {
                    ApexMode::Fixed4
                };
                cells.extend(census_cells(idx, &entry.label, &g, mode, ctx));
            }
            Err(e) => error_rows.push(error_row(&entry.label, e)),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut rows: Vec<(usize, u8, String, CensusRow)> = pool.install(|| {
        use rayon::prelude::*;
        cells
            .par_iter()
            .map(|cell| {
                let row = evaluate_cell(cell, &opts);
                (cell.graph_index, cell.apex.0, cell.pairing.clone(), row)
            })
            .collect()
    });
    rows.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut all_rows: Vec<CensusRow> = error_rows;
    all_rows.extend(rows.into_iter().map(|r| r.3));

    let mut ndjson = String::new();
    let mut csv =
        String::from("graph,apex,pairing,verdict,genus_central,genus_H1,genus_H2,chi,checks_ok\n");
    for row in &all_rows {
        ndjson.push_str(&serde_json::to_string(row).unwrap());
        ndjson.push('\n');
        csv.push_str(&census_row_csv(row));
        csv.push('\n');
    }
    let mut regression_failures = 0;
    for entry in &catalog.entries {
        let Some(expected) = &entry.expected else {
            continue;
        };
        let entry_rows: Vec<&CensusRow> = all_rows
            .iter()
            .filter(|r| r.graph == entry.label && r.error.is_none())
            .collect();
        if entry_rows.is_empty() {
            eprintln!("regression: {} produced no rows", entry.label);
            regression_failures += 1;
            continue;
        }
        if let Some(chi) = expected.chi {
            if !entry_rows.iter().all(|r| r.chi == Some(chi)) {
                eprintln!("regression: {} chi != {}", entry.label, chi);
                regression_failures += 1;
            }
        }
        if let Some(min_g) = expected.min_genus_central {
            let got = entry_rows.iter().filter_map(|r| r.genus_central).min();
            if got != Some(min_g) {
                eprintln!(
                    "regression: {} min genus_central {:?} != {}",
                    entry.label, got, min_g
                );
                regression_failures += 1;
            }
        }
        if expected.all_gem_induced == Some(true)
            && !entry_rows
                .iter()
                .all(|r| r.verdict == Some(TrisectionVerdict::GemInduced))
        {
            eprintln!("regression: {} has non-gem_induced cells", entry.label);
            regression_failures += 1;
        }
    }
    match report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &ndjson) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return EXIT_INPUT;
            }
            let csv_path = path.with_extension("csv");
            if let Err(e) = std::fs::write(&csv_path, &csv) {
                eprintln!("error: cannot write {}: {}", csv_path.display(), e);
                return EXIT_INPUT;
            }
            println!(
                "census: {} rows -> {} + {}",
                all_rows.len(),
                path.display(),
                csv_path.display()
            );
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(csv.as_bytes());
        }
    }
    println!("# assumption: catalog gems represent compact manifolds without spherical boundary components");
    println!(
        "census summary: {} cells, {} gem_induced, {} not_collapsible, {} unknown, {} errors",
        all_rows.len(),
        all_rows
            .iter()
            .filter(|r| r.verdict == Some(TrisectionVerdict::GemInduced))
            .count(),
        all_rows
            .iter()
            .filter(|r| r.verdict == Some(TrisectionVerdict::NotCollapsible))
            .count(),
        all_rows
            .iter()
            .filter(|r| r.verdict == Some(TrisectionVerdict::Unknown))
            .count(),
        all_rows.iter().filter(|r| r.error.is_some()).count()
    );
    if regression_failures > 0 {
        return EXIT_IDENTITY;
    }
    0
}

fn error_row(label: &str, error: String) -> CensusRow {
    CensusRow {
        graph: label.to_string(),
        apex: 0,
        pairing: String::new(),
        verdict: None,
        genus_central: None,
        genus_h1: None,
        genus_h2: None,
        chi: None,
        checks_ok: false,
        error: Some(error),
    }
}

fn cmd_consum(file1: &Path, v1: &str, file2: &Path, v2: &str, out: &Path) -> i32 {
    let g1 = match load_gem(file1) {
        Ok(g) => g,
        Err(c) => return c,
    };
    let g2 = match load_gem(file2) {
        Ok(g) => g,
        Err(c) => return c,
    };
    let budget = default_budget();
    let resolve = |g: &ColoredGraph, s: &str, use_last: bool| -> Result<u32, String> {
        if s != "auto" {
            return s.parse::<u32>().map_err(|_| format!("bad vertex `{}`", s));
        }
        let (first_sq, last_sq) = gemkit::trisection::collapse_boundary_squares(g, budget)
            .map_err(|e| e.to_string())?;
        let (u, v) = if use_last { last_sq } else { first_sq };
        // pick the class-0 endpoint so the welded sum stays bipartite
        Ok(if g.vertex_class(u) == Some(0) { u } else { v })
    };
    let v1 = match resolve(&g1, v1, true) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_INPUT;
        }
    };
    let v2 = match resolve(&g2, v2, false) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_INPUT;
        }
    };
    match gemkit::moves::graph_connected_sum(&g1, v1, &g2, v2) {
        Ok(sum) => {
            if let Err(e) = std::fs::write(out, sum.to_gem_text()) {
                eprintln!("error: cannot write {}: {}", out.display(), e);
                return EXIT_INPUT;
            }
            println!(
                "wrote {} ({} vertices, summed at {}/{})",
                out.display(),
                sum.order(),
                v1,
                v2
            );
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            EXIT_INPUT
        }
    }
}
