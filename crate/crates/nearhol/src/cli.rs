//! Command front end: spectrum tables, verification suites, and the
//! conjecture scanner, with machine-readable output.
//!
//! Space selectors are `I:p,q`, `II:n`, `III:n`, `IV:n`, `EIII`, `EVII`;
//! bundles are `line:k`, `cotangent`, or `mu:c1,c2,...` with exact rational
//! coordinates (`a/b` allowed). Output is byte-stable for a fixed
//! configuration and seed; the JSON schema is versioned and round-trips.

use crate::decomp::{spectrum_support, BundleKind, BundleSpec, DecompositionTable};
use crate::error::{Error, Result};
use crate::exact::{self, Rat};
use crate::integrals::{QuadratureSpec, Scheme};
use crate::jordan::MatrixModel;
use crate::rootdata::{build_root_data, Family, HermitianType, RootSystemData};
use crate::scan::{conjecture_scan, ScanReport};
use crate::verify::{format_report, run_suite};
use crate::weights::Weight;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_CUTOFF: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Debug)]
pub enum BundleSel {
    Line(i64),
    Cotangent,
    Mu(Vec<Rat>),
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub space: HermitianType,
    pub bundle: BundleSel,
    pub cutoff: u32,
    pub output: OutputFormat,
    pub seed: u64,
    pub suite: String,
    pub samples: usize,
    pub probe: bool,
}

pub fn parse_space(selector: &str) -> Result<HermitianType> {
    let selector = selector.trim();
    let family = match selector {
        "EIII" => Family::EIII,
        "EVII" => Family::EVII,
        _ => {
            let (fam, params) = selector
                .split_once(':')
                .ok_or_else(|| Error::Parameter(format!("bad space selector `{selector}`")))?;
            let ints: Vec<u32> = params
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parameter(format!("bad space parameter `{s}`")))
                })
                .collect::<Result<_>>()?;
            match (fam, ints.as_slice()) {
                ("I", [p, q]) => Family::I { p: *p, q: *q },
                ("II", [n]) => Family::II { n: *n },
                ("III", [n]) => Family::III { n: *n },
                ("IV", [n]) => Family::IV { n: *n },
                _ => return Err(Error::Parameter(format!("bad space selector `{selector}`"))),
            }
        }
    };
    HermitianType::new(family)
}

pub fn parse_bundle(selector: &str) -> Result<BundleSel> {
    let selector = selector.trim();
    if selector == "cotangent" {
        return Ok(BundleSel::Cotangent);
    }
    if let Some(k) = selector.strip_prefix("line:") {
        let k = k
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parameter(format!("bad line-bundle parameter `{k}`")))?;
        return Ok(BundleSel::Line(k));
    }
    if let Some(coords) = selector.strip_prefix("mu:") {
        let coords: Vec<Rat> =
            coords.split(',').map(exact::parse_rat).collect::<Result<_>>()?;
        return Ok(BundleSel::Mu(coords));
    }
    Err(Error::Parameter(format!("bad bundle selector `{selector}`")))
}

pub fn parse_output(selector: &str) -> Result<OutputFormat> {
    match selector {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        "md" => Ok(OutputFormat::Markdown),
        other => Err(Error::Parameter(format!("bad output format `{other}`"))),
    }
}

fn resolve_bundle(sel: &BundleSel, data: &RootSystemData) -> Result<BundleSpec> {
    match sel {
        BundleSel::Line(k) => BundleSpec::line(*k, data),
        BundleSel::Cotangent => BundleSpec::cotangent(data),
        BundleSel::Mu(coords) => {
            if coords.len() != data.ambient_dim() {
                return Err(Error::Parameter(format!(
                    "weight needs {} coordinates, got {}",
                    data.ambient_dim(),
                    coords.len()
                )));
            }
            BundleSpec::general(Weight(coords.clone()), data)
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SpaceDoc {
    pub family: String,
    pub rank: usize,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    pub dim_nplus: usize,
    pub tube_type: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct EntryDoc {
    pub lambda: Vec<String>,
    pub pairing_alpha1: String,
    pub gamma_pairings: Vec<String>,
    pub multiplicity: u64,
    pub l2_status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin_m: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SpectrumDoc {
    pub schema_version: u32,
    pub space: SpaceDoc,
    pub bundle: String,
    pub cutoff: u32,
    pub multiplicity_free: bool,
    pub entries: Vec<EntryDoc>,
}

fn space_doc(space: &HermitianType) -> SpaceDoc {
    SpaceDoc {
        family: space.family.to_string(),
        rank: space.rank,
        a: space.a,
        b: space.b,
        genus: space.genus,
        dim_nplus: space.dim_nplus,
        tube_type: space.tube_type,
    }
}

fn bundle_label(bundle: &BundleSpec) -> String {
    match bundle.kind {
        BundleKind::Line { k } => format!("line:{k}"),
        BundleKind::Cotangent => "cotangent".to_string(),
        BundleKind::General => format!("mu:{}", bundle.mu),
    }
}

pub fn spectrum_doc(table: &DecompositionTable, data: &RootSystemData) -> SpectrumDoc {
    let entries = table
        .entries
        .iter()
        .map(|e| EntryDoc {
            lambda: e.lambda.0.iter().map(exact::fmt_rat).collect(),
            pairing_alpha1: exact::fmt_rat(&data.pairing(&e.lambda, &data.simple_roots[0])),
            gamma_pairings: data
                .strongly_orthogonal
                .iter()
                .map(|g| exact::fmt_rat(&data.pairing(&e.lambda, g)))
                .collect(),
            multiplicity: e.multiplicity,
            l2_status: e.l2_status.to_string(),
            origin_m: e.origin.as_ref().map(|(m, _)| m.parts().to_vec()),
        })
        .collect();
    SpectrumDoc {
        schema_version: SCHEMA_VERSION,
        space: space_doc(&data.space),
        bundle: bundle_label(&table.bundle),
        cutoff: table.cutoff,
        multiplicity_free: table.multiplicity_free,
        entries,
    }
}

fn render_spectrum(doc: &SpectrumDoc, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(doc)
            .map(|s| s + "\n")
            .map_err(|e| Error::Integrity(format!("serialization failed: {e}"))),
        OutputFormat::Csv => {
            let mut buf = String::new();
            let _ = writeln!(
                buf,
                "# space={} r={} a={} b={} g={} n={} bundle={} cutoff={}",
                doc.space.family,
                doc.space.rank,
                doc.space.a,
                doc.space.b,
                doc.space.genus,
                doc.space.dim_nplus,
                doc.bundle,
                doc.cutoff
            );
            let _ = writeln!(buf, "lambda,pairing_alpha1,gamma_pairings,multiplicity,l2_status,origin_m");
            for e in &doc.entries {
                let _ = writeln!(
                    buf,
                    "\"{}\",{},\"{}\",{},{},\"{}\"",
                    e.lambda.join(" "),
                    e.pairing_alpha1,
                    e.gamma_pairings.join(" "),
                    e.multiplicity,
                    e.l2_status,
                    e.origin_m.as_ref().map(|m| format!("{m:?}")).unwrap_or_default()
                );
            }
            Ok(buf)
        }
        OutputFormat::Markdown => {
            let mut buf = String::new();
            let _ = writeln!(
                buf,
                "Space {} (r={}, a={}, b={}, g={}, n={}), bundle {}, cutoff {}",
                doc.space.family,
                doc.space.rank,
                doc.space.a,
                doc.space.b,
                doc.space.genus,
                doc.space.dim_nplus,
                doc.bundle,
                doc.cutoff
            );
            let _ = writeln!(buf, "\n| λ | λ(H_α₁) | λ(H_γ) | mult | L² | m |");
            let _ = writeln!(buf, "|---|---------|--------|------|----|---|");
            for e in &doc.entries {
                let _ = writeln!(
                    buf,
                    "| ({}) | {} | {} | {} | {} | {} |",
                    e.lambda.join(", "),
                    e.pairing_alpha1,
                    e.gamma_pairings.join(", "),
                    e.multiplicity,
                    e.l2_status,
                    e.origin_m.as_ref().map(|m| format!("{m:?}")).unwrap_or_default()
                );
            }
            Ok(buf)
        }
    }
}

/// The `spectrum` command: a deterministic decomposition table.
pub fn cmd_spectrum(config: &JobConfig) -> Result<String> {
    if config.cutoff > MAX_CUTOFF {
        return Err(Error::Parameter(format!("cutoff exceeds the maximum {MAX_CUTOFF}")));
    }
    let data = build_root_data(&config.space)?;
    let bundle = resolve_bundle(&config.bundle, &data)?;
    let table = spectrum_support(&bundle, config.cutoff, &data)?;
    render_spectrum(&spectrum_doc(&table, &data), config.output)
}

/// The `verify` command: named invariant checks with measured residuals.
/// The flag is false when any check failed.
pub fn cmd_verify(config: &JobConfig) -> Result<(String, bool)> {
    let checks = run_suite(&config.space, &config.suite, config.seed, config.samples)?;
    let (body, ok) = format_report(&checks);
    let mut out = format!(
        "space {} suite {} seed {}\n",
        config.space.family, config.suite, config.seed
    );
    out.push_str(&body);
    Ok((out, ok))
}

fn render_scan(report: &ScanReport) -> String {
    let mut buf = String::new();
    let _ = writeln!(
        buf,
        "bundle {} cutoff {}: {} vectors",
        bundle_label(&report.bundle),
        report.cutoff,
        report.rows.len()
    );
    let _ = writeln!(buf, "| m | ν(H_γ) | λ(H_γ) | deg | degree_ok | decided | probe | verdict |");
    let _ = writeln!(buf, "|---|--------|--------|-----|-----------|---------|-------|---------|");
    for row in &report.rows {
        let _ = writeln!(
            buf,
            "| {} | {:?} | {:?} | {:?} | {} | {} | {} | {} |",
            row.m,
            row.fiber_profile,
            row.weight_profile,
            row.degrees,
            row.degree_ok,
            row.decided.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
            row.probe.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
            row.verdict
        );
    }
    let disagreements = report.rows.iter().filter(|r| r.verdict == crate::scan::Verdict::Disagree).count();
    let unknown = report.rows.iter().filter(|r| r.verdict == crate::scan::Verdict::Unknown).count();
    let _ = writeln!(
        buf,
        "summary: {} agree, {} disagree, {} unknown",
        report.rows.len() - disagreements - unknown,
        disagreements,
        unknown
    );
    buf
}

/// The `conjecture` command: per-vector agreement ledger. Never asserts the
/// criterion; disagreements are reported, not fatal.
pub fn cmd_conjecture(config: &JobConfig) -> Result<String> {
    if config.cutoff > MAX_CUTOFF {
        return Err(Error::Parameter(format!("cutoff exceeds the maximum {MAX_CUTOFF}")));
    }
    let data = build_root_data(&config.space)?;
    let bundle = resolve_bundle(&config.bundle, &data)?;
    let model = MatrixModel::new(&config.space)?;
    let spec = QuadratureSpec {
        scheme: Scheme::MonteCarlo { samples: config.samples, seed: config.seed },
        ..QuadratureSpec::monte_carlo_default(config.seed)
    };
    let probe_spec = config.probe.then_some(&spec);
    let report = conjecture_scan(&bundle, config.cutoff, &data, &model, probe_spec)?;
    Ok(render_scan(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(space: &str, bundle: &str, cutoff: u32) -> JobConfig {
        JobConfig {
            space: parse_space(space).unwrap(),
            bundle: parse_bundle(bundle).unwrap(),
            cutoff,
            output: OutputFormat::Json,
            seed: 7,
            suite: "rootdata".into(),
            samples: 20_000,
            probe: true,
        }
    }

    #[test]
    fn selector_parsing() {
        assert!(parse_space("I:2,3").is_ok());
        assert!(parse_space("II:4").is_ok());
        assert!(parse_space("EVII").is_ok());
        assert!(parse_space("V:3").is_err());
        assert!(parse_space("I:0,2").is_err());
        assert!(parse_bundle("line:-2").is_ok());
        assert!(parse_bundle("cotangent").is_ok());
        assert!(matches!(parse_bundle("mu:1,1/2,-1,0").unwrap(), BundleSel::Mu(v) if v.len() == 4));
        assert!(parse_bundle("wave").is_err());
    }

    #[test]
    fn spectrum_rank_one_line_bundle() {
        let out = cmd_spectrum(&config("I:1,1", "line:0", 2)).unwrap();
        let doc: SpectrumDoc = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.entries.len(), 3);
        assert!(doc.multiplicity_free);
        assert!(doc.entries.iter().all(|e| e.multiplicity == 1));
    }

    #[test]
    fn spectrum_json_round_trips() {
        let out = cmd_spectrum(&config("I:2,2", "cotangent", 3)).unwrap();
        let doc: SpectrumDoc = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(out, again);
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
    }

    #[test]
    fn spectrum_deterministic() {
        let cfg = config("I:2,2", "cotangent", 3);
        assert_eq!(cmd_spectrum(&cfg).unwrap(), cmd_spectrum(&cfg).unwrap());
        let csv_cfg = JobConfig { output: OutputFormat::Csv, ..config("II:4", "line:1", 2) };
        assert_eq!(cmd_spectrum(&csv_cfg).unwrap(), cmd_spectrum(&csv_cfg).unwrap());
    }

    #[test]
    fn spectrum_exceptional_combinatorial_only() {
        let out = cmd_spectrum(&JobConfig {
            output: OutputFormat::Markdown,
            ..config("EVII", "line:1", 2)
        })
        .unwrap();
        assert!(out.contains("EVII"));
        assert!(out.contains("in-L2"));
    }

    #[test]
    fn cutoff_limit_enforced() {
        let cfg = JobConfig { cutoff: MAX_CUTOFF + 1, ..config("I:1,1", "line:0", 0) };
        assert!(matches!(cmd_spectrum(&cfg), Err(Error::Parameter(_))));
    }

    #[test]
    fn verify_reports_pass() {
        let (out, ok) = cmd_verify(&config("I:1,1", "line:0", 0)).unwrap();
        assert!(ok, "{out}");
        assert!(out.contains("PASS rootdata.structure_constants"));
    }

    #[test]
    fn verify_deterministic_output() {
        let mut cfg = config("I:2,2", "line:0", 0);
        cfg.suite = "jordan".into();
        cfg.samples = 30;
        let (a, _) = cmd_verify(&cfg).unwrap();
        let (b, _) = cmd_verify(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn conjecture_ledger_runs() {
        let mut cfg = config("I:1,1", "cotangent", 3);
        cfg.samples = 20_000;
        let out = cmd_conjecture(&cfg).unwrap();
        assert!(out.contains("agree"));
        assert!(out.contains("summary:"));
        assert!(!out.contains(" disagree |"));
    }
}
