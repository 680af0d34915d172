//! Batch front end: loads presentations, runs the verifications and renders
//! reports as text or JSON.

pub mod corpus;

use std::fs;
use std::path::{Path, PathBuf};

use polyforge_core::cd_construction::{cd_group, cd_presentation, tightness_check, verify_cd_structure, CdError};
use polyforge_core::fpgroup::{parse_presentation, regular_representation, EnumerationError, PresentationError, DEFAULT_MAX_COSETS};
use polyforge_core::permgroup::{GroupError, DEFAULT_ELEMENT_CAP};
use polyforge_core::polytope::{
    build_polytope, check_diamond, check_strong_flag_connected, export_flag_graph, face_counts, is_flat,
    section_type_rank3, PolytopeError,
};
use polyforge_core::string_cgroup::{covers, theorem_check, validate, Dissection, StringCError, StringCGroup, VerificationReport};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use corpus::CorpusEntry;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: {source}")]
    Parse { origin: String, source: PresentationError },
    #[error("{origin}: {source}")]
    Enumeration { origin: String, source: EnumerationError },
    #[error("{origin}: {source}")]
    Validation { origin: String, source: StringCError },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Cd(#[from] CdError),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("{0}")]
    Usage(String),
}

fn is_cap(e: &GroupError) -> bool {
    matches!(e, GroupError::CapExceeded { .. })
}

impl CliError {
    /// 1 verification failure, 2 usage or parse error, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Corpus(_) | CliError::Usage(_) => 2,
            CliError::Enumeration { source: EnumerationError::Exhausted { .. }, .. } => 3,
            CliError::Enumeration { .. } => 2,
            CliError::Validation { source: StringCError::Group(e), .. } if is_cap(e) => 3,
            CliError::Polytope(PolytopeError::CapExceeded { .. }) => 3,
            CliError::Polytope(PolytopeError::Group(e)) if is_cap(e) => 3,
            CliError::Polytope(_) => 2,
            CliError::Cd(CdError::Enumeration(EnumerationError::Exhausted { .. })) => 3,
            CliError::Cd(CdError::Validation(StringCError::Group(e))) if is_cap(e) => 3,
            CliError::Cd(CdError::Presentation(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cosets: usize,
    pub element_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cosets: DEFAULT_MAX_COSETS, element_cap: DEFAULT_ELEMENT_CAP }
    }
}

/// Text to print and whether the command counts as a success (exit 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn origin(path: &Path) -> String {
    path.display().to_string()
}

/// Parses, enumerates and validates a presentation whose generators are the
/// distinguished involutions.
pub fn group_from_text(text: &str, origin: &str, limits: Limits) -> Result<StringCGroup, CliError> {
    let p = parse_presentation(text).map_err(|source| CliError::Parse { origin: origin.into(), source })?;
    let g = regular_representation(&p, limits.max_cosets)
        .map_err(|source| CliError::Enumeration { origin: origin.into(), source })?;
    validate(&g, g.generators()).map_err(|source| CliError::Validation { origin: origin.into(), source })
}

pub fn load_group(path: &Path, limits: Limits) -> Result<StringCGroup, CliError> {
    group_from_text(&read(path)?, &origin(path), limits)
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| origin(path), |s| s.to_string_lossy().into_owned())
}

pub fn cmd_validate(path: &Path, limits: Limits, as_json: bool) -> Result<Outcome, CliError> {
    match load_group(path, limits) {
        Ok(s) => {
            let text = if as_json {
                json!({
                    "status": "valid",
                    "order": s.order().to_string(),
                    "type": s.schlafli_type().to_string(),
                    "degenerate": !s.is_nondegenerate(),
                })
                .to_string()
            } else {
                let mut t = format!("valid, order {}, type {}", s.order(), s.schlafli_type());
                if !s.is_nondegenerate() {
                    t.push_str(", degenerate");
                }
                t
            };
            Ok(Outcome { text, success: true })
        }
        Err(CliError::Validation { source, .. }) if !matches!(&source, StringCError::Group(e) if is_cap(e)) => {
            let text = if as_json {
                json!({ "status": "invalid", "error": source.to_string() }).to_string()
            } else {
                format!("invalid: {source}")
            };
            Ok(Outcome { text, success: false })
        }
        Err(e) => Err(e),
    }
}

fn render(reports: &[VerificationReport], as_json: bool, single: bool) -> Outcome {
    let success = reports.iter().all(|r| r.overall);
    let text = if as_json {
        if single {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(reports).expect("reports serialize")
        }
    } else {
        reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n\n")
    };
    Outcome { text, success }
}

pub fn cmd_theorem_check(path: &Path, limits: Limits, as_json: bool) -> Result<Outcome, CliError> {
    let s = load_group(path, limits)?;
    let report = theorem_check(&s, &stem(path), limits.element_cap);
    Ok(render(&[report], as_json, true))
}

/// Structure check plus the manifest's expectations for one corpus entry.
pub fn check_entry(entry: &CorpusEntry, limits: Limits) -> VerificationReport {
    let s = match group_from_text(&entry.text, &entry.file, limits) {
        Ok(s) => s,
        Err(e) => {
            let mut r = VerificationReport::new(&entry.id, 0, 0);
            r.record("load", "valid string C-group", e, false);
            return r;
        }
    };
    let mut report = theorem_check(&s, &entry.id, limits.element_cap);
    if let Some(e) = &entry.order {
        report.expect_eq("corpus order", e.value.to_string(), s.order().to_string());
    }
    if let Some(e) = &entry.schlafli {
        report.expect_eq("corpus type", e.value.clone(), s.schlafli_type().to_string());
    }
    if let Some(e) = &entry.c_order {
        match Dissection::compute(&s, limits.element_cap) {
            Ok(dis) => report.expect_eq("corpus |C|", e.value.to_string(), dis.c.order().to_string()),
            Err(err) => report.record("corpus |C|", e.value, err, false),
        }
    }
    report
}

/// Checks every entry concurrently; reports come back in id order.
pub fn check_corpus(entries: &[CorpusEntry], limits: Limits) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = entries.par_iter().map(|e| check_entry(e, limits)).collect();
    reports.sort_by(|a, b| a.group_id.cmp(&b.group_id));
    reports
}

pub fn cmd_theorem_check_corpus(limits: Limits, as_json: bool) -> Result<Outcome, CliError> {
    let reports = check_corpus(&corpus::default_corpus(), limits);
    Ok(render(&reports, as_json, false))
}

/// Covers `P → Q`; with no `Q`, the target is `G(C_d)` for the rank of `P`.
pub fn cmd_covers(p: &Path, q: Option<&Path>, limits: Limits, as_json: bool) -> Result<Outcome, CliError> {
    let ps = load_group(p, limits)?;
    let (qs, target) = match q {
        Some(q) => (load_group(q, limits)?, origin(q)),
        None => {
            let d = ps.rank();
            if d < 2 {
                return Err(CliError::Usage(format!("{} has rank {d}; --against-cd needs rank at least 2", origin(p))));
            }
            (cd_group(d, limits.max_cosets)?.group, format!("cd{d}"))
        }
    };
    let result = covers(&ps, &qs);
    let text = if as_json {
        json!({ "source": origin(p), "target": target, "covers": result }).to_string()
    } else {
        result.to_string()
    };
    Ok(Outcome { text, success: result })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolytopeRequest {
    pub counts: bool,
    pub diamond: bool,
    pub flag_connected: bool,
    pub sections: bool,
    pub flat: Option<(usize, usize)>,
    pub dot: bool,
}

pub fn cmd_polytope(path: &Path, req: &PolytopeRequest, limits: Limits, as_json: bool) -> Result<Outcome, CliError> {
    let s = load_group(path, limits)?;
    let p = build_polytope(&s, limits.element_cap)?;
    let mut req = req.clone();
    if !(req.counts || req.diamond || req.flag_connected || req.sections || req.flat.is_some() || req.dot) {
        req.counts = true;
    }
    let mut lines = Vec::new();
    let mut fields = serde_json::Map::new();
    let mut success = true;
    if req.counts {
        let c = face_counts(&p);
        lines.push(format!("counts {}", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
        fields.insert("counts".into(), json!(c));
        fields.insert("flags".into(), json!(p.flag_count()));
    }
    if req.diamond {
        let ok = check_diamond(&p);
        success &= ok;
        lines.push(format!("diamond {ok}"));
        fields.insert("diamond".into(), json!(ok));
    }
    if req.flag_connected {
        let ok = check_strong_flag_connected(&p);
        success &= ok;
        lines.push(format!("flag-connected {ok}"));
        fields.insert("flag_connected".into(), json!(ok));
    }
    if req.sections {
        let orders = section_type_rank3(&p)?;
        lines.push(format!("sections {}", orders.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
        fields.insert("sections".into(), json!(orders));
    }
    if let Some((k, l)) = req.flat {
        let flat = is_flat(&p, k, l)?;
        lines.push(format!("flat({k},{l}) {flat}"));
        fields.insert("flat".into(), json!({ "k": k, "l": l, "flat": flat }));
    }
    if req.dot {
        let dot = export_flag_graph(&p);
        fields.insert("dot".into(), json!(dot));
        lines.push(dot.trim_end().to_string());
    }
    let text = if as_json { serde_json::Value::Object(fields).to_string() } else { lines.join("\n") };
    Ok(Outcome { text, success })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdAction {
    EmitPresentation,
    Verify,
}

pub fn cmd_cd(d: usize, action: CdAction, limits: Limits, as_json: bool) -> Result<Outcome, CliError> {
    if d < 2 {
        return Err(CliError::Usage(format!("--rank must be at least 2, got {d}")));
    }
    match action {
        CdAction::EmitPresentation => {
            let p = cd_presentation(d).map_err(CdError::from)?;
            let text = if as_json {
                json!({ "rank": d, "presentation": p.to_text() }).to_string()
            } else {
                format!("# G(C_{d})\n{}", p.to_text().trim_end())
            };
            Ok(Outcome { text, success: true })
        }
        CdAction::Verify => {
            let c = cd_group(d, limits.max_cosets)?;
            let mut report = verify_cd_structure(&c);
            let expected = (1u128 << (2 * d - 1)).to_string();
            report.expect_eq("|G| by coset enumeration", expected.clone(), c.group.order().to_string());
            report.expect_eq("|G| by Schreier–Sims", expected, c.group.group().schreier_sims_order().to_string());
            match tightness_check(&c.group) {
                Ok(tight) => report.expect_true("tight", tight),
                Err(e) => report.record("tight", true, e, false),
            }
            Ok(render(&[report], as_json, true))
        }
    }
}
