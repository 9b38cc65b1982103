use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qgor::classify::classify;
use qgor::collapse::{collapse_onto, verify_trace, CollapseOutcome};
use qgor::graphs::{connectivity_report, gamma_graph, removal_experiment};
use qgor::hochster::{
    a_invariant_from_table, depth_from_table, is_buchsbaum, local_cohomology_table, serre_condition,
};
use qgor::liaison::{cm_linkage_check, lefschetz_report, link_restriction_check, tconn_check};
use qgor::{parse_facet_file, reduced_betti, Error, FacetPartition, FieldSpec, SimplicialComplex};

#[derive(Parser)]
#[command(name = "qgor", version, about = "Stanley-Reisner homology, classification and liaison checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Facet file: one facet per line, optional `n=<vertices>` header.
    input: PathBuf,
    /// Coefficient field: `q` or a prime.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Lefschetz,
    Links,
    Cm,
    Tconn,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run every classification predicate.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Print the canonical facet numbering first.
        #[arg(long)]
        list_facets: bool,
    },
    /// Reduced Betti numbers.
    Homology {
        #[command(flatten)]
        common: Common,
    },
    /// Local cohomology table, depth and a-invariant.
    Hochster {
        #[command(flatten)]
        common: Common,
        /// Also test Serre's condition (S_l).
        #[arg(long)]
        serre: Option<usize>,
    },
    /// Facet-partition liaison checks.
    Liaison {
        #[command(flatten)]
        common: Common,
        /// 1-based facet numbers forming A (see `classify --list-facets`).
        #[arg(long, value_delimiter = ',', required = true)]
        facets_a: Vec<usize>,
        #[arg(long, value_enum, default_value = "lefschetz")]
        check: Check,
    },
    /// The graph Gamma_t on the facets.
    Graph {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Emit DOT instead of a report.
        #[arg(long)]
        dot: bool,
        /// 1-based facets to delete from Gamma_1.
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
    },
    /// Collapse away the given vertices.
    Collapse {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        forbid: Vec<u32>,
    },
}

enum Failure {
    Input(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn load(path: &Path) -> Result<SimplicialComplex, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_facet_file(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
        other => other.into(),
    })
}

fn zero_based(numbers: &[usize], n_facets: usize) -> Result<BTreeSet<usize>, Failure> {
    numbers
        .iter()
        .map(|&k| {
            if k == 0 || k > n_facets {
                Err(Failure::Input(format!("facet number {k} outside 1..={n_facets}")))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

fn faces(list: &[Vec<u32>]) -> String {
    list.iter()
        .map(|f| format!("{{{}}}", f.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn facet_table(c: &SimplicialComplex) -> String {
    let mut out = String::new();
    for (i, f) in c.facets().iter().enumerate() {
        let _ = writeln!(out, "{:>4}  {f}", i + 1);
    }
    out
}

fn emit(json_mode: bool, value: &impl Serialize, text: String) -> Result<String, Failure> {
    if json_mode {
        Ok(serde_json::to_string_pretty(value).expect("reports serialize"))
    } else {
        Ok(text)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Classify { common, list_facets } => {
            let c = load(&common.input)?;
            let r = classify(&c, common.field)?;
            let mut text = String::new();
            if list_facets {
                text.push_str("facets:\n");
                text.push_str(&facet_table(&c));
            }
            let _ = writeln!(text, "field: {}", r.field);
            for (name, v) in serde_json::to_value(&r).expect("serializes").as_object().unwrap() {
                if let Some(b) = v.as_bool() {
                    let witness = &r.witnesses.get(name).cloned().flatten();
                    match witness {
                        Some(w) if !b => {
                            let _ = writeln!(text, "{name}: no (witness {})", serde_json::to_string(w).unwrap());
                        }
                        _ => {
                            let _ = writeln!(text, "{name}: {}", yes(b));
                        }
                    }
                }
            }
            let mut value = serde_json::to_value(&r).expect("serializes");
            let obj = value.as_object_mut().unwrap();
            obj.insert("n".into(), json!(c.n_vertices()));
            obj.insert("facets".into(), json!(c.facet_lists()));
            emit(common.json, &value, text)
        }
        Command::Homology { common } => {
            let c = load(&common.input)?;
            let b = reduced_betti(&c, common.field)?;
            let mut text = format!("reduced homology over {}\n", common.field);
            for (j, v) in b.iter() {
                let _ = writeln!(text, "  H~_{j} = {v}");
            }
            let _ = writeln!(text, "reduced Euler characteristic: {}", b.euler_characteristic());
            let value = json!({
                "field": common.field,
                "n": c.n_vertices(),
                "facets": c.facet_lists(),
                "betti": b,
                "euler_characteristic": b.euler_characteristic(),
            });
            emit(common.json, &value, text)
        }
        Command::Hochster { common, serre } => {
            let c = load(&common.input)?;
            let table = local_cohomology_table(&c, common.field)?;
            let depth = depth_from_table(&table);
            let a = a_invariant_from_table(&table);
            let buchsbaum = is_buchsbaum(&c, common.field)?;
            let serre = serre.map(|l| serre_condition(&c, common.field, l)).transpose()?;

            let mut text = format!("local cohomology over {} (Krull dimension {})\n", common.field, table.krull_dim());
            for (i, sigma, dim) in table.entries() {
                let _ = writeln!(text, "  H^{i}_m degree -{sigma}: {dim}");
            }
            let _ = writeln!(text, "depth: {}", depth.depth);
            let _ = writeln!(text, "Cohen-Macaulay: {}", yes(depth.is_cohen_macaulay));
            let _ = writeln!(text, "Buchsbaum: {}", yes(buchsbaum.holds));
            let _ = writeln!(text, "a-invariant: {a}");
            if let Some(s) = &serre {
                let ext = if s.extended { " (extended link criterion)" } else { "" };
                let _ = writeln!(text, "(S_{}){ext}: {}", s.ell, yes(s.holds));
            }
            let value = json!({
                "field": common.field,
                "table": table,
                "depth": depth.depth,
                "cohen_macaulay": depth.is_cohen_macaulay,
                "buchsbaum": buchsbaum.holds,
                "a_invariant": a,
                "serre": serre,
            });
            emit(common.json, &value, text)
        }
        Command::Liaison { common, facets_a, check } => {
            let c = load(&common.input)?;
            let a = zero_based(&facets_a, c.facets().len())?;
            let p = FacetPartition::from_a(c.facets().len(), a)?;
            let field = common.field;
            let report = lefschetz_report(&c, &p, field)?;
            let mut value = serde_json::to_value(&report).expect("serializes");
            let obj = value.as_object_mut().unwrap();

            let mut text = format!("Lefschetz sequence over {field}, d = {}\n", report.d);
            for t in &report.terms {
                let _ = writeln!(text, "  {:<16} {}", t.label, t.dim);
            }
            let _ = writeln!(text, "alternating sum: {}", report.alternating_sum);
            let _ = writeln!(
                text,
                "alternating sum with final term {}: {}",
                report.printed_final_term, report.printed_alternating_sum
            );
            let _ = writeln!(text, "neighbor bounds: {}", if report.neighbor_bound_ok { "ok" } else { "violated" });
            for d in &report.duality_pairs {
                let _ = writeln!(text, "  H^{}(Delta,Delta_B) = {}   H~_{}(Delta_A) = {}", d.i, d.relative, report.d - d.i, d.dual);
            }
            let _ = writeln!(
                text,
                "hypotheses: quasi-Gorenstein {}, Delta_A Buchsbaum {}",
                yes(report.hypotheses.quasi_gorenstein),
                yes(report.hypotheses.buchsbaum_a)
            );

            let wants = |k: Check| check == k || check == Check::All;
            if wants(Check::Links) {
                let r = link_restriction_check(&c, &p, field)?;
                let _ = writeln!(text, "link restriction: {}{}", yes(r.holds), r.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default());
                obj.insert("link_restriction".into(), serde_json::to_value(r).unwrap());
            }
            if wants(Check::Cm) {
                let r = cm_linkage_check(&c, &p, field)?;
                let verdict = match (&r.holds, &r.skipped) {
                    (Some(h), _) => yes(*h).to_owned(),
                    (None, Some(why)) => format!("skipped ({why})"),
                    (None, None) => "skipped".to_owned(),
                };
                let _ = writeln!(text, "CM linkage: {verdict}");
                obj.insert("cm_linkage".into(), serde_json::to_value(r).unwrap());
            }
            if wants(Check::Tconn) {
                let v = match tconn_check(&c, &p, field) {
                    Ok(r) => {
                        let _ = writeln!(text, "Delta_B connected: {} (components {:?})", yes(r.connected), r.components);
                        json!({"hypotheses_met": true, "connected": r.connected, "components": r.components})
                    }
                    Err(Error::HypothesesNotMet(why)) => {
                        let _ = writeln!(text, "connectedness bound: hypotheses not met ({})", why.join("; "));
                        json!({"hypotheses_met": false, "failed": why})
                    }
                    Err(e) => return Err(e.into()),
                };
                obj.insert("tconn".into(), v);
            }
            emit(common.json, &value, text)
        }
        Command::Graph { common, t, dot, remove } => {
            let c = load(&common.input)?;
            let g = gamma_graph(&c, t)?;
            if dot {
                return Ok(g.to_dot().trim_end().to_owned());
            }
            let conn = connectivity_report(&g);
            let removal = if remove.is_empty() {
                None
            } else {
                let b = zero_based(&remove, c.facets().len())?;
                let kept = removal_experiment(&c, &b)?;
                Some(json!({"removed": remove, "connected": kept}))
            };
            let mut text = format!("Gamma_{t}: {} facets, {} edges\n", g.order(), g.edges().len());
            for (v, ns) in g.neighbors().iter().enumerate() {
                let ns: Vec<String> = ns.iter().map(|n| (n + 1).to_string()).collect();
                let _ = writeln!(text, "  {:>3}: {}", v + 1, ns.join(" "));
            }
            let _ = writeln!(text, "components: {}", conn.components);
            let flag = if conn.degenerate { " (at most two vertices)" } else { "" };
            let _ = writeln!(text, "2-connected: {}{flag}", yes(conn.two_connected));
            if !conn.articulation_points.is_empty() {
                let pts: Vec<String> = conn.articulation_points.iter().map(|v| (v + 1).to_string()).collect();
                let _ = writeln!(text, "articulation points: {}", pts.join(" "));
            }
            if let Some(r) = &removal {
                let _ = writeln!(text, "Gamma_1 after removal connected: {}", yes(r["connected"].as_bool().unwrap()));
            }
            let mut value = serde_json::to_value(&g).unwrap();
            let obj = value.as_object_mut().unwrap();
            obj.insert(
                "connectivity".into(),
                json!({
                    "components": conn.components,
                    "two_connected": conn.two_connected,
                    "articulation_points": conn.articulation_points.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "degenerate": conn.degenerate,
                }),
            );
            obj.insert("removal".into(), removal.unwrap_or(Value::Null));
            emit(common.json, &value, text)
        }
        Command::Collapse { common, forbid } => {
            let c = load(&common.input)?;
            let forbidden: BTreeSet<u32> = forbid.into_iter().collect();
            let out = collapse_onto(&c, &forbidden)?;
            let verified = verify_trace(out.trace(), common.field)?;
            let mut text = String::new();
            match &out {
                CollapseOutcome::Success { trace } => {
                    let _ = writeln!(text, "SUCCESS: {} steps, end {}", trace.steps.len(), faces(&trace.end.facet_lists()));
                }
                CollapseOutcome::Failure { reason, stuck, target, .. } => {
                    let _ = writeln!(text, "FAILURE: {reason}");
                    let _ = writeln!(text, "stuck at: {}", faces(&stuck.facet_lists()));
                    let _ = writeln!(text, "target:   {}", faces(&target.facet_lists()));
                }
            }
            let steps = &out.trace().steps;
            if !steps.is_empty() {
                let _ = writeln!(text, "{} trace:", if out.is_success() { "full" } else { "partial" });
            }
            for (k, s) in steps.iter().enumerate() {
                let _ = writeln!(text, "  {:>3}. {} in {}", k + 1, s.free, s.coface);
            }
            let _ = writeln!(text, "trace replay: {}", if verified { "ok" } else { "mismatch" });
            let mut value = serde_json::to_value(&out).unwrap();
            value.as_object_mut().unwrap().insert("verified".into(), json!(verified));
            emit(common.json, &value, text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            // a closed pipe (`| head`) is not an error
            let mut stdout = std::io::stdout().lock();
            let _ = std::io::Write::write_all(&mut stdout, out.trim_end().as_bytes())
                .and_then(|_| std::io::Write::write_all(&mut stdout, b"\n"));
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
