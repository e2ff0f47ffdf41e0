use std::error::Error;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use neumaier::algebra::{
    check_complement_identities, check_pds_identity, check_regular_clique_identity, check_schur_closure,
    check_subgroup_clique_identity, second_identity_orders, AlgebraError, Fit, PartitionBasis, SchurOutcome,
    SrgConstants,
};
use neumaier::analysis::analyze;
use neumaier::catalog::{catalog_entries, find_entry, resolve_unresolved, verify, verify_all, VerificationReport};
use neumaier::cayley::build_cayley;
use neumaier::clique::{first_regular_clique, nexus_of_clique};
use neumaier::feasibility::enumerate;
use neumaier::group::GroupTable;
use neumaier::io::{load_group, load_set, split_elements};
use neumaier::search::{search_neumaier, SearchOptions, Target, DEFAULT_CAP};

#[derive(Parser)]
#[command(
    name = "neumaier",
    version,
    about = "Neumaier Cayley graphs: verification, feasibility and search"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress human-readable output; the exit code still reports the result.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify Cay(G, S) and run every applicable property check.
    Check {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// Sweep feasible Neumaier parameter tuples of valency k.
    Feasible {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        max_n: Option<i64>,
    },
    /// Exhaustively search connection sets for the given parameters.
    Search {
        #[arg(long)]
        group: PathBuf,
        /// n,k,l,a,c
        #[arg(long)]
        params: String,
        /// Report every match instead of stopping at the first.
        #[arg(long)]
        all: bool,
        /// Only consider sets containing a subgroup of order c.
        #[arg(long)]
        anchor_clique: bool,
        /// Worker threads; 1 runs single-threaded.
        #[arg(long)]
        threads: Option<usize>,
        /// Refuse searches with more candidates than this.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Evaluate the group-ring identities for a connection set and clique.
    Algebra {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        set: PathBuf,
        /// Comma-separated clique elements; defaults to the first regular clique.
        #[arg(long)]
        clique: Option<String>,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries with their expected parameters.
    List,
    /// Verify one entry.
    Verify { name: String },
    /// Verify every entry.
    VerifyAll,
    /// Settle the unresolved feasible tuples by searching every group of each order.
    Resolve,
}

enum Outcome {
    Success,
    Fail,
    ProvenEmpty,
}

type CliResult = Result<Outcome, Box<dyn Error>>;

struct Output {
    json: bool,
    quiet: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) -> Result<(), Box<dyn Error>> {
        let text = if self.json {
            serde_json::to_string_pretty(value)? + "\n"
        } else if !self.quiet {
            human()
        } else {
            return Ok(());
        };
        match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output {
        json: cli.json,
        quiet: cli.quiet,
    };
    let result = match cli.command {
        Command::Check { group, set } => check(&out, &group, &set),
        Command::Feasible { k, max_n } => feasible(&out, k, max_n),
        Command::Search {
            group,
            params,
            all,
            anchor_clique,
            threads,
            cap,
        } => search(&out, &group, &params, all, anchor_clique, threads, cap),
        Command::Algebra { group, set, clique } => algebra(&out, &group, &set, clique.as_deref()),
        Command::Catalog { action } => catalog(&out, action),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::ProvenEmpty) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn pass_label(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn word_list(group: &GroupTable, elements: &[usize]) -> String {
    let words = group.shortest_words();
    elements
        .iter()
        .map(|&x| words[x].to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn check(out: &Output, group_path: &Path, set_path: &Path) -> CliResult {
    let group = load_group(group_path)?;
    let set = load_set(set_path, &group)?;
    let analysis = analyze(&group, &set)?;
    out.emit(&analysis, || {
        let mut s = format!(
            "graph: n={} k={} connected={} diameter={}\n",
            analysis.order,
            analysis.degree,
            analysis.connected,
            analysis.diameter.map_or("-".into(), |d| d.to_string())
        );
        if let Some(class) = &analysis.classification {
            s.push_str(&format!("class: {}\n", class.label()));
        }
        if let Some(p) = analysis.params() {
            s.push_str(&format!("parameters: {p}\n"));
            s.push_str(&format!("clique: {{{}}}\n", analysis.clique_words.join(", ")));
        }
        for c in &analysis.checks {
            s.push_str(&format!("  {} {}: {}\n", pass_label(c.pass), c.name, c.detail));
        }
        s.push_str(&format!("result: {}\n", pass_label(analysis.pass)));
        s
    })?;
    Ok(if analysis.pass { Outcome::Success } else { Outcome::Fail })
}

fn feasible(out: &Output, k: i64, max_n: Option<i64>) -> CliResult {
    if !(2..=1000).contains(&k) {
        return Err(format!("k must lie in 2..=1000, got {k}").into());
    }
    if max_n.is_some_and(|n| n < 1) {
        return Err("max-n must be positive".into());
    }
    let verdicts = enumerate(k, max_n);
    out.emit(&verdicts, || {
        let survivors = verdicts.iter().filter(|v| v.is_survivor()).count();
        let mut s = format!("k={k}: {} candidates, {survivors} survive\n", verdicts.len());
        for v in &verdicts {
            s.push_str(&v.summary());
            if let Some(note) = v.note {
                s.push_str(&format!("  [{note}]"));
            }
            s.push('\n');
        }
        s
    })?;
    Ok(Outcome::Success)
}

fn search(
    out: &Output,
    group_path: &Path,
    params: &str,
    all: bool,
    anchor_clique: bool,
    threads: Option<usize>,
    cap: u128,
) -> CliResult {
    let group = load_group(group_path)?;
    let target: Target = params.parse()?;
    let options = SearchOptions {
        all,
        anchor_clique,
        parallel: threads != Some(1),
        cap,
    };
    let start = Instant::now();
    let result = match threads {
        Some(t) if t > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()?
            .install(|| search_neumaier(&group, target, &options))?,
        Some(0) => return Err("threads must be positive".into()),
        _ => search_neumaier(&group, target, &options)?,
    };
    let seconds = start.elapsed().as_secs_f64();
    let proven = result.proves_nonexistence();
    let value = json!({ "result": &result, "proves_nonexistence": proven, "seconds": seconds });
    out.emit(&value, || {
        let st = &result.stats;
        let mut s = format!("target {} over a group of order {}\n", target, group.order());
        s.push_str(&format!(
            "candidates examined: {} (disconnected {}, lambda rejected {}, classified {}) in {seconds:.3} s\n",
            st.candidates, st.disconnected, st.lambda_rejected, st.classified
        ));
        for m in &result.matches {
            s.push_str(&format!(
                "match: S = {{{}}} clique = {{{}}} [{}]\n",
                word_list(&group, &m.set),
                word_list(&group, &m.clique),
                m.classification.label()
            ));
        }
        if result.matches.is_empty() {
            s.push_str(if proven {
                "no Neumaier Cayley graph with these parameters (exhaustive)\n"
            } else {
                "no match found; not a proof of nonexistence\n"
            });
        }
        if let Some(note) = &result.note {
            s.push_str(&format!("note: {note}\n"));
        }
        s
    })?;
    Ok(if proven { Outcome::ProvenEmpty } else { Outcome::Success })
}

#[derive(Serialize)]
struct AlgebraReport {
    set: Vec<String>,
    clique: Vec<String>,
    graph_nexus: Option<usize>,
    clique_identity: Fit<u64>,
    pds_identity: Option<Fit<(i64, i64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_identity: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_identities: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subgroup_clique_identity: Option<bool>,
    schur_closure: String,
}

fn algebra(out: &Output, group_path: &Path, set_path: &Path, clique: Option<&str>) -> CliResult {
    let group = load_group(group_path)?;
    let set = load_set(set_path, &group)?;
    let graph = build_cayley(&group, &set)?;
    let clique: Vec<usize> = match clique {
        Some(text) => split_elements(text)
            .iter()
            .map(|w| group.parse_element(w))
            .collect::<Result<Vec<_>, _>>()?,
        None => match first_regular_clique(&graph) {
            Some(r) => r.vertices,
            None => {
                out.emit(&json!({ "error": "no regular clique through the identity" }), || {
                    "no regular clique through the identity\n".into()
                })?;
                return Ok(Outcome::Fail);
            }
        },
    };
    let mut clique = clique;
    clique.sort_unstable();
    clique.dedup();
    if !graph.is_clique(&clique) {
        return Err("the given elements do not form a clique".into());
    }
    let s = set.members();
    let clique_identity = check_regular_clique_identity(&group, s, &clique)?;
    let graph_nexus = nexus_of_clique(&graph, &clique)?;
    let pds = match check_pds_identity(&group, s) {
        Ok(fit) => Some(fit),
        Err(AlgebraError::Degenerate(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut report = AlgebraReport {
        set: s.iter().map(|&x| group.shortest_words()[x].to_string()).collect(),
        clique: clique.iter().map(|&x| group.shortest_words()[x].to_string()).collect(),
        graph_nexus,
        clique_identity: clique_identity.clone(),
        pds_identity: pds.clone(),
        second_identity: None,
        complement_identities: None,
        subgroup_clique_identity: None,
        schur_closure: String::new(),
    };
    if let (Some(Fit::Match((lambda, mu))), Fit::Match(a)) = (&pds, &clique_identity) {
        let constants = SrgConstants {
            lambda: *lambda,
            mu: *mu,
            nexus: *a as i64,
        };
        report.second_identity = Some(serde_json::to_value(second_identity_orders(
            &group, s, &clique, constants,
        )?)?);
        report.complement_identities = Some(serde_json::to_value(check_complement_identities(
            &group, s, &clique, constants,
        )?)?);
    }
    if let Fit::Match(a) = &clique_identity {
        if group.is_subgroup(&clique) {
            report.subgroup_clique_identity = Some(check_subgroup_clique_identity(&group, s, &clique, *a as i64)?);
        }
    }
    report.schur_closure =
        match PartitionBasis::neumaier(&group, s, &clique).and_then(|b| check_schur_closure(&group, &b)) {
            Ok(SchurOutcome::Closed(sc)) => format!("closed, rank {}", sc.rank),
            Ok(SchurOutcome::NotClosed { left, right, mismatch }) => format!(
                "not closed: blocks {left}x{right} at element {} (found {}, expected {})",
                mismatch.element, mismatch.found, mismatch.expected
            ),
            Err(e) => format!("not applicable: {e}"),
        };
    out.emit(&report, || {
        let mut t = format!(
            "S = {{{}}}\nC = {{{}}}\n",
            report.set.join(", "),
            report.clique.join(", ")
        );
        t.push_str(&format!(
            "graph nexus: {}\n",
            graph_nexus.map_or("none".into(), |a| a.to_string())
        ));
        t.push_str(&format!(
            "clique identity: {}\n",
            describe_fit(&report.clique_identity, |a| format!("a = {a}"))
        ));
        t.push_str(&format!(
            "difference set identity: {}\n",
            report
                .pds_identity
                .as_ref()
                .map_or("not applicable".into(), |f| describe_fit(f, |(l, m)| format!(
                    "lambda = {l}, mu = {m}"
                )))
        ));
        if let Some(v) = &report.second_identity {
            t.push_str(&format!("second identity: {v}\n"));
        }
        if let Some(v) = &report.complement_identities {
            t.push_str(&format!("complement identities: {v}\n"));
        }
        if let Some(b) = report.subgroup_clique_identity {
            t.push_str(&format!("subgroup clique identity: {}\n", pass_label(b)));
        }
        t.push_str(&format!("schur closure: {}\n", report.schur_closure));
        t
    })?;
    Ok(if clique_identity.is_match() {
        Outcome::Success
    } else {
        Outcome::Fail
    })
}

fn describe_fit<T: Clone>(fit: &Fit<T>, show: impl Fn(T) -> String) -> String {
    match fit {
        Fit::Match(v) => format!("holds with {}", show(v.clone())),
        Fit::Mismatch(m) => format!(
            "fails at element {} (coefficient {}, expected {})",
            m.element, m.found, m.expected
        ),
    }
}

fn report_lines(r: &VerificationReport) -> String {
    let mut s = format!("{} {} {}\n", pass_label(r.pass), r.name, r.expected);
    for c in r.failures() {
        s.push_str(&format!("    {}: {}\n", c.name, c.detail));
    }
    s
}

fn catalog(out: &Output, action: CatalogAction) -> CliResult {
    match action {
        CatalogAction::List => {
            let entries = catalog_entries();
            out.emit(&entries, || {
                entries
                    .iter()
                    .map(|e| format!("{:<22} {:<28} {}\n", e.name, e.expected.to_string(), e.description))
                    .collect()
            })?;
            Ok(Outcome::Success)
        }
        CatalogAction::Verify { name } => {
            let report = verify(&find_entry(&name)?)?;
            out.emit(&report, || {
                let mut s = report_lines(&report);
                for c in report.checks.iter().filter(|c| c.pass) {
                    s.push_str(&format!("    {}: {}\n", c.name, c.detail));
                }
                s
            })?;
            Ok(if report.pass { Outcome::Success } else { Outcome::Fail })
        }
        CatalogAction::VerifyAll => {
            let start = Instant::now();
            let reports = verify_all()?;
            let seconds = start.elapsed().as_secs_f64();
            let failures = reports.iter().filter(|r| !r.pass).count();
            let value =
                json!({ "entries": reports.len(), "failures": failures, "seconds": seconds, "reports": &reports });
            out.emit(&value, || {
                let mut s: String = reports.iter().map(report_lines).collect();
                s.push_str(&format!(
                    "{} entries, {failures} failures in {seconds:.3} s\n",
                    reports.len()
                ));
                s
            })?;
            Ok(if failures == 0 { Outcome::Success } else { Outcome::Fail })
        }
        CatalogAction::Resolve => {
            let resolutions = resolve_unresolved()?;
            out.emit(&resolutions, || {
                let mut s = String::new();
                for r in &resolutions {
                    s.push_str(&format!(
                        "{} {}\n",
                        r.target,
                        if r.exists { "exists" } else { "does not exist" }
                    ));
                    for g in &r.groups {
                        s.push_str(&format!(
                            "    {:<20} {:>6} candidates, {} witnesses\n",
                            g.group, g.candidates, g.witnesses
                        ));
                    }
                }
                s
            })?;
            Ok(Outcome::Success)
        }
    }
}
