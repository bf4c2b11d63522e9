//! theta-lab: command-line runner for the exact-arithmetic verification
//! suite on polynomial matrix spaces. Every command writes one structured
//! artifact (JSON, CSV, or markdown) and exits 0 when all assertions
//! passed, 1 when a check was falsified, 2 on usage or shape errors.
//!
//! Set THETA_LAB_CACHE to a directory to memoize kernel eliminations
//! across runs; caching never changes any result.

mod catalog;
mod render;
mod sampled;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use theta_core::{
    certify_relations, conservation_check_with, duality_certificate, gl_duality_check,
    harmonic_space, irreducibility_certificate, isotypic_decomposition, persistence_check_with,
    stable_range_check, IsotypicReport, PersistenceCertificate, RelationReport, Result, SpaceKind,
};

use crate::catalog::catalog;
use crate::render::{emit, Format, Table};
use crate::sampled::{sampled_commutation_checks, SampledChecks};

#[derive(Parser)]
#[command(
    name = "theta-lab",
    version,
    about = "Exact verification suite for harmonic decompositions, occurrence indices, and dual-pair checks on n-by-k polynomial matrix spaces"
)]
struct Cli {
    /// Output format. JSON carries the full certificate; csv and markdown
    /// are flat projections of the same data.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the artifact to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel sections. Outputs are identical for
    /// every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Harmonic dimension sweep over degrees 0..=dmax. JSON output also
    /// carries the isotypic decomposition of each degree.
    Harmonics {
        /// Rows of the variable grid.
        #[arg(long)]
        n: usize,
        /// Columns of the variable grid.
        #[arg(long)]
        k: usize,
        /// Largest degree in the sweep.
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        /// Include a basis of each harmonic space.
        #[arg(long)]
        bases: bool,
    },
    /// Machine-checked verification suites.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Status table of dual pairs with explicitly known correspondence.
    Catalog,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Operator relations, certified symbolically and by exhaustive
    /// application up to the degree cap.
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Degree cap for the applied certification.
        #[arg(long, default_value_t = 4)]
        d: u32,
        /// Run eight extra seeded spot checks above the cap.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Each one-column harmonic space is zero or a single isotypic
    /// component, with the expected lowest weight and ladder.
    Irreducibility {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
    /// Multiplicity-free harmonic decomposition with a label-weight
    /// bijection.
    Duality {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
    },
    /// Brute-force occurrence indices: every label and its twist sum to n.
    Conservation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        size_max: u32,
        /// Raise the per-label degree search bound above the label size.
        #[arg(long)]
        degree_override: Option<u32>,
    },
    /// Witness transport: presence at k implies presence at every wider k.
    Persistence {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        size_max: u32,
        /// Widest shape to carry witnesses to (default: n).
        #[arg(long)]
        kmax: Option<usize>,
        /// Raise the per-label degree search bound above the label size.
        #[arg(long)]
        degree_override: Option<u32>,
    },
    /// Every admissible label occurs at k = n, once, with the shifted
    /// label as its column weight.
    StableRange {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        size_max: u32,
    },
    /// Row-by-column duality on the full degree-d space of an m-by-n
    /// grid, against the stars-and-bars total.
    GlDuality {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
}

#[derive(Serialize)]
struct HarmonicsRow {
    degree: u32,
    dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
}

#[derive(Serialize)]
struct HarmonicsOutput {
    command: &'static str,
    n: usize,
    k: usize,
    dmax: u32,
    rows: Vec<HarmonicsRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reports: Option<Vec<IsotypicReport>>,
}

#[derive(Serialize)]
struct RelationsOutput {
    command: &'static str,
    n: usize,
    k: usize,
    degree_cap: u32,
    relations: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampled: Option<SampledChecks>,
    pass: bool,
}

#[derive(Serialize)]
struct CertificateOutput<T: Serialize> {
    command: &'static str,
    pass: bool,
    certificate: T,
}

#[derive(Serialize)]
struct PersistenceSweep {
    n: usize,
    size_max: u32,
    k_max: usize,
    certificates: Vec<PersistenceCertificate>,
    pass: bool,
}

#[derive(Serialize)]
struct CatalogOutput {
    command: &'static str,
    entries: Vec<catalog::CatalogEntry>,
}

fn opt<T: std::fmt::Display>(o: &Option<T>) -> String {
    match o {
        Some(v) => v.to_string(),
        None => "-".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Harmonics { n, k, dmax, bases } => {
            let mut rows = Vec::new();
            let mut reports = Vec::new();
            for d in 0..=*dmax {
                let space = harmonic_space(*n, *k, d)?;
                rows.push(HarmonicsRow {
                    degree: d,
                    dimension: space.dimension(),
                    basis: bases
                        .then(|| space.basis().iter().map(|p| p.to_string()).collect()),
                });
                if cli.format == Format::Json {
                    reports.push(isotypic_decomposition(*n, *k, d, SpaceKind::Harmonic)?);
                }
            }
            let mut headers = vec!["degree".to_string(), "dimension".to_string()];
            if *bases {
                headers.push("basis".to_string());
            }
            let table = Table {
                title: format!("harmonics n={n} k={k} dmax={dmax}"),
                headers,
                rows: rows
                    .iter()
                    .map(|r| {
                        let mut row = vec![r.degree.to_string(), r.dimension.to_string()];
                        if let Some(b) = &r.basis {
                            row.push(b.join("; "));
                        }
                        row
                    })
                    .collect(),
            };
            let payload = HarmonicsOutput {
                command: "harmonics",
                n: *n,
                k: *k,
                dmax: *dmax,
                rows,
                reports: (cli.format == Format::Json).then_some(reports),
            };
            emit(&payload, &table, None, cli.format, out)?;
            Ok(true)
        }
        Command::Check { what } => run_check(cli, what, out),
        Command::Catalog => {
            let entries = catalog();
            let table = Table {
                title: "explicitly known correspondences".into(),
                headers: ["family", "condition", "status", "citation"]
                    .map(String::from)
                    .to_vec(),
                rows: entries
                    .iter()
                    .map(|e| {
                        vec![
                            e.family.to_string(),
                            e.condition.to_string(),
                            e.status.to_string(),
                            e.citation.to_string(),
                        ]
                    })
                    .collect(),
            };
            let payload = CatalogOutput {
                command: "catalog",
                entries,
            };
            emit(&payload, &table, None, cli.format, out)?;
            Ok(true)
        }
    }
}

fn run_check(cli: &Cli, what: &CheckCommand, out: Option<&std::path::Path>) -> Result<bool> {
    match what {
        CheckCommand::Relations { n, k, d, seed } => {
            let relations = certify_relations(*n, *k, *d)?;
            let sampled = match seed {
                Some(s) => Some(sampled_commutation_checks(*n, *k, *d, *s)?),
                None => None,
            };
            let pass = relations.iter().all(|r| r.status)
                && sampled.as_ref().is_none_or(|s| s.pass);
            let mut rows: Vec<Vec<String>> = relations
                .iter()
                .map(|r| vec![r.id.clone(), r.method.clone(), r.status.to_string()])
                .collect();
            if let Some(s) = &sampled {
                for row in &s.rows {
                    rows.push(vec![
                        row.relation.clone(),
                        "sampled".into(),
                        row.ok.to_string(),
                    ]);
                }
            }
            let table = Table {
                title: format!("relations n={n} k={k} cap={d}"),
                headers: ["relation", "method", "status"].map(String::from).to_vec(),
                rows,
            };
            let payload = RelationsOutput {
                command: "check relations",
                n: *n,
                k: *k,
                degree_cap: *d,
                relations,
                sampled,
                pass,
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
        CheckCommand::Irreducibility { n, dmax } => {
            let cert = irreducibility_certificate(*n, *dmax)?;
            let table = Table {
                title: format!("irreducibility n={n} dmax={dmax}"),
                headers: ["degree", "dimension", "zero", "components", "label", "weight ok", "ladder ok"]
                    .map(String::from)
                    .to_vec(),
                rows: cert
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.degree.to_string(),
                            r.dimension.to_string(),
                            r.zero.to_string(),
                            r.component_count.to_string(),
                            opt(&r.orth_label),
                            r.h_eigenvalue_ok.to_string(),
                            r.ladder_ok.to_string(),
                        ]
                    })
                    .collect(),
            };
            let pass = cert.pass;
            let payload = CertificateOutput {
                command: "check irreducibility",
                pass,
                certificate: cert,
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
        CheckCommand::Duality { n, k, dmax } => {
            let cert = duality_certificate(*n, *k, *dmax)?;
            let table = Table {
                title: format!("duality n={n} k={k} dmax={dmax}"),
                headers: ["degree", "label", "gl weight", "multiplicity"]
                    .map(String::from)
                    .to_vec(),
                rows: cert
                    .pairs
                    .iter()
                    .map(|p| {
                        vec![
                            p.degree.to_string(),
                            p.orth_label.to_string(),
                            format!("({})", p.glk_weight.join(", ")),
                            p.multiplicity.to_string(),
                        ]
                    })
                    .collect(),
            };
            let pass = cert.pass;
            let payload = CertificateOutput {
                command: "check duality",
                pass,
                certificate: cert,
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
        CheckCommand::Conservation {
            n,
            size_max,
            degree_override,
        } => {
            let cert = conservation_check_with(*n, *size_max, *degree_override)?;
            let table = Table {
                title: format!("conservation n={n} size_max={size_max}"),
                headers: ["label", "n(pi)", "twist", "n(pi x det)", "sum"]
                    .map(String::from)
                    .to_vec(),
                rows: cert
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.to_string(),
                            opt(&r.n_pi),
                            r.twist.to_string(),
                            opt(&r.n_twist),
                            opt(&r.sum),
                        ]
                    })
                    .collect(),
            };
            let pass = cert.pass;
            let payload = CertificateOutput {
                command: "check conservation",
                pass,
                certificate: cert,
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
        CheckCommand::Persistence {
            n,
            size_max,
            kmax,
            degree_override,
        } => {
            let k_max = kmax.unwrap_or(*n);
            let mut certificates = Vec::new();
            for label in theta_core::enumerate_orth_params(*n, *size_max) {
                let bound = degree_override.map(|b| b.max(label.lambda.size()));
                certificates.push(persistence_check_with(&label, k_max, bound)?);
            }
            let pass = certificates.iter().all(|c| c.pass);
            let table = Table {
                title: format!("persistence n={n} size_max={size_max} kmax={k_max}"),
                headers: ["label", "k", "present", "degree", "witness verified"]
                    .map(String::from)
                    .to_vec(),
                rows: certificates
                    .iter()
                    .flat_map(|c| {
                        c.rows.iter().map(|r| {
                            vec![
                                c.label.to_string(),
                                r.k.to_string(),
                                r.present.to_string(),
                                opt(&r.degree),
                                opt(&r.witness_verified),
                            ]
                        })
                    })
                    .collect(),
            };
            let payload = CertificateOutput {
                command: "check persistence",
                pass,
                certificate: PersistenceSweep {
                    n: *n,
                    size_max: *size_max,
                    k_max,
                    certificates,
                    pass,
                },
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
        CheckCommand::StableRange { n, size_max } => {
            let cert = stable_range_check(*n, *size_max)?;
            let table = Table {
                title: format!("stable range n={n} size_max={size_max}"),
                headers: ["label", "present", "degree", "multiplicity", "weight ok"]
                    .map(String::from)
                    .to_vec(),
                rows: cert
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.to_string(),
                            r.present.to_string(),
                            opt(&r.degree),
                            opt(&r.multiplicity),
                            r.weight_ok.to_string(),
                        ]
                    })
                    .collect(),
            };
            let pass = cert.pass;
            let payload = CertificateOutput {
                command: "check stable-range",
                pass,
                certificate: cert,
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
        CheckCommand::GlDuality { m, n, d } => {
            let cert = gl_duality_check(*m, *n, *d)?;
            let table = Table {
                title: format!(
                    "gl-duality m={m} n={n} d={d}: total {} vs expected {}",
                    cert.total, cert.expected_total
                ),
                headers: ["partition", "multiplicity", "row dim", "col dim"]
                    .map(String::from)
                    .to_vec(),
                rows: cert
                    .components
                    .iter()
                    .map(|c| {
                        vec![
                            c.lambda.to_string(),
                            c.multiplicity.to_string(),
                            c.row_dimension.to_string(),
                            c.col_dimension.to_string(),
                        ]
                    })
                    .collect(),
            };
            let pass = cert.pass;
            let payload = CertificateOutput {
                command: "check gl-duality",
                pass,
                certificate: cert,
            };
            emit(&payload, &table, Some(pass), cli.format, out)?;
            Ok(pass)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use theta_core::OrthIrrepParam;

    #[test]
    fn command_tree_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn option_cells_render_dashes() {
        assert_eq!(opt::<u32>(&None), "-");
        assert_eq!(opt(&Some(3u32)), "3");
    }

    #[test]
    fn labels_used_in_tables_have_stable_text() {
        let label = OrthIrrepParam::new(3, theta_core::Partition::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(label.to_string(), "O(3)~(2,1)");
    }
}
