//! Job configuration and the command surface behind the CLI.
//!
//! A job is a single JSON document naming the polygon, the domain policy and
//! optional parameters. Commands write JSON reports (rationals as `p/q`
//! strings, never floats) and SVG figures into the output directory.

use crate::domain::{invariant_gram, DomainPolicy, GramMatrix, SymmetryGroup};
use crate::ehrhart::{
    detect_tiling_threshold, interpolate_ehrhart, local_formula_coefficients, verify_eq1,
    verify_eq2, verify_tiling,
};
use crate::error::Error;
use crate::geom::RectQ;
use crate::mu::{FaceId, MuTable};
use crate::polygon::LatticePolygon;
use crate::scalar::{rat_int, rat_to_frac_string, Rat};
use crate::svg;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DomainSpec {
    Named(String),
    Dv { dv: DvSpec },
}

#[derive(Clone, Debug, Deserialize)]
pub struct DvSpec {
    #[serde(default)]
    pub group: Option<Vec<[[i64; 2]; 2]>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct JobConfig {
    pub polygon: Vec<[i64; 2]>,
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub t: Option<i64>,
    #[serde(default)]
    pub window: Option<[[i64; 2]; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Mu,
    Ehrhart,
    VerifyEq1,
    VerifyEq2,
    Tiling,
    Render,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Mu => "mu",
            Command::Ehrhart => "ehrhart",
            Command::VerifyEq1 => "verify-eq1",
            Command::VerifyEq2 => "verify-eq2",
            Command::Tiling => "tiling",
            Command::Render => "render",
        }
    }
}

pub struct JobOutcome {
    pub all_matched: bool,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn frac(r: &Rat) -> Value {
    Value::String(rat_to_frac_string(r))
}

impl JobConfig {
    pub fn from_path(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)?;
        let cfg: JobConfig = serde_json::from_str(&text)?;
        Ok(cfg)
    }

    pub fn polygon(&self) -> Result<LatticePolygon, Error> {
        let verts: Vec<(i64, i64)> = self.polygon.iter().map(|[x, y]| (*x, *y)).collect();
        LatticePolygon::from_pairs(&verts)
    }

    pub fn policy(&self) -> Result<DomainPolicy, Error> {
        match &self.domain {
            None => Ok(DomainPolicy::Cube),
            Some(DomainSpec::Named(s)) if s == "cube" => Ok(DomainPolicy::Cube),
            Some(DomainSpec::Named(s)) => Err(Error::BadConfig(format!(
                "unknown domain policy {:?} (expected \"cube\" or {{\"dv\": ...}})",
                s
            ))),
            Some(DomainSpec::Dv { dv }) => {
                let gram = match &dv.group {
                    None => GramMatrix::identity(),
                    Some(mats) => invariant_gram(&SymmetryGroup::new(mats.clone())?),
                };
                Ok(DomainPolicy::Dv(gram))
            }
        }
    }

    pub fn window_or_default(&self, table: &MuTable, t: i64) -> RectQ {
        match self.window {
            Some([[x0, y0], [x1, y1]]) => RectQ::new(
                rat_int(x0.min(x1)),
                rat_int(x0.max(x1)),
                rat_int(y0.min(y1)),
                rat_int(y0.max(y1)),
            ),
            None => table.polygon.dilate_bbox(t.max(1)).inflate(&rat_int(2)),
        }
    }
}

fn env_seed() -> u64 {
    std::env::var("EHRHART_LOCAL_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn face_value(face: FaceId) -> Value {
    Value::String(face.to_string())
}

fn mu_report(table: &MuTable) -> Value {
    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|e| {
            let w: Vec<Value> = e
                .w
                .iter()
                .map(|(g, w)| json!({ "toward": g.to_string(), "w": frac(w) }))
                .collect();
            json!({
                "face": face_value(e.face),
                "v": frac(&e.v),
                "w": w,
                "mu": frac(&e.mu),
            })
        })
        .collect();
    let (ux, uy) = table.eps_direction();
    json!({
        "polygon": table.polygon.verts().iter().map(|v| vec![v.x, v.y]).collect::<Vec<_>>(),
        "domain_policy": table.policy_name(),
        "eps_direction": [frac(&ux), frac(&uy)],
        "faces": entries,
        "vertex_sum": frac(&table.vertex_sum()),
        "diagnostics": {
            "eps_decided": table.diagnostics().eps_decided,
            "window_doublings": table.diagnostics().window_doublings,
            "pair_tests": table.diagnostics().pair_tests,
        },
    })
}

fn write_report(out_dir: &Path, name: &str, value: &Value) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}

fn write_svg(out_dir: &Path, name: &str, body: &str) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    std::fs::write(&path, body)?;
    Ok(path)
}

/// Runs one command against a parsed job.
pub fn run(config: &JobConfig, command: Command, t_flag: Option<i64>, out_dir: &Path) -> Result<JobOutcome, Error> {
    let polygon = config.polygon()?;
    let policy = config.policy()?;
    let mut table = MuTable::build(polygon, policy, env_seed())?;
    let t = t_flag.or(config.t);
    let need_t = |t: Option<i64>| -> Result<i64, Error> {
        match t {
            Some(v) if v >= 1 => Ok(v),
            Some(v) => Err(Error::BadConfig(format!("t must be ≥ 1, got {}", v))),
            None => Err(Error::BadConfig("this command needs --t or \"t\" in the config".into())),
        }
    };
    let mut files = Vec::new();
    match command {
        Command::Mu => {
            let report = mu_report(&table);
            files.push(write_report(out_dir, "mu.json", &report)?);
            let mus: Vec<String> = table
                .entries()
                .iter()
                .map(|e| format!("{}={}", e.face, rat_to_frac_string(&e.mu)))
                .collect();
            Ok(JobOutcome {
                all_matched: true,
                summary: format!("mu table: {}", mus.join(" ")),
                files,
            })
        }
        Command::Ehrhart => {
            let local = local_formula_coefficients(&table);
            let oracle = interpolate_ehrhart(&table.polygon)?;
            let matched = local == oracle;
            let report = json!({
                "local": local.coeffs.iter().map(frac).collect::<Vec<_>>(),
                "oracle": oracle.coeffs.iter().map(frac).collect::<Vec<_>>(),
                "matched": matched,
                "domain_policy": table.policy_name(),
            });
            files.push(write_report(out_dir, "ehrhart.json", &report)?);
            let show = |p: &crate::ehrhart::EhrhartPolynomial| {
                p.coeffs
                    .iter()
                    .map(rat_to_frac_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            Ok(JobOutcome {
                all_matched: matched,
                summary: format!(
                    "local = [{}], oracle = [{}], {}",
                    show(&local),
                    show(&oracle),
                    if matched { "matched" } else { "MISMATCH" }
                ),
                files,
            })
        }
        Command::VerifyEq1 => {
            let t = need_t(t)?;
            let rep = verify_eq1(&mut table, t);
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "face": face_value(r.face),
                        "count": r.count,
                        "v": frac(&r.v),
                        "contribution": frac(&r.contribution),
                    })
                })
                .collect();
            let report = json!({
                "t": rep.t,
                "rows": rows,
                "total": frac(&rep.total),
                "lattice_count": rep.lattice_count,
                "matched": rep.matched,
                "note": if rep.matched { "" } else { "below the tiling threshold for this polygon" },
            });
            files.push(write_report(out_dir, "verify-eq1.json", &report)?);
            Ok(JobOutcome {
                all_matched: rep.matched,
                summary: format!(
                    "{} = {}, {}",
                    rat_to_frac_string(&rep.total),
                    rep.lattice_count,
                    if rep.matched { "matched" } else { "MISMATCH (below t0?)" }
                ),
                files,
            })
        }
        Command::VerifyEq2 => {
            let t = need_t(t)?;
            let mut all = true;
            let mut reports = Vec::new();
            for face in table.faces() {
                let rep = verify_eq2(&mut table, face, t)?;
                all &= rep.balanced_smaller;
                let terms: Vec<Value> = rep
                    .terms
                    .iter()
                    .map(|term| {
                        json!({
                            "smaller": face_value(term.smaller),
                            "w": frac(&term.w),
                            "count_smaller": term.count_smaller,
                        })
                    })
                    .collect();
                reports.push(json!({
                    "face": face_value(rep.face),
                    "t": rep.t,
                    "relvol": frac(&rep.relvol),
                    "terms": terms,
                    "count_face": rep.count_face,
                    "reading_smaller_counts": frac(&rep.reading_smaller),
                    "reading_face_count": frac(&rep.reading_face),
                    "balanced_smaller_counts": rep.balanced_smaller,
                    "balanced_face_count": rep.balanced_face,
                }));
            }
            let report = json!({ "t": t, "faces": reports, "all_balanced_smaller_counts": all });
            files.push(write_report(out_dir, "verify-eq2.json", &report)?);
            Ok(JobOutcome {
                all_matched: all,
                summary: format!(
                    "face volume identity at t={}: {}",
                    t,
                    if all { "balanced (per-smaller-face counts)" } else { "MISMATCH" }
                ),
                files,
            })
        }
        Command::Tiling => {
            let t = need_t(t)?;
            let window = config.window_or_default(&table, t);
            let rep = verify_tiling(&mut table, t, &window);
            let threshold = if rep.matched {
                detect_tiling_threshold(&mut table, t, &rat_int(2))
            } else {
                None
            };
            let report = json!({
                "t": rep.t,
                "translates": rep.translates,
                "window_area": frac(&rep.window_area),
                "covered_area": frac(&rep.covered_area),
                "overlap_area": frac(&rep.overlap_area),
                "matched": rep.matched,
                "smallest_matching_t": threshold,
            });
            files.push(write_report(out_dir, "tiling.json", &report)?);
            Ok(JobOutcome {
                all_matched: rep.matched,
                summary: format!(
                    "tiling at t={}: covered {} of {}, overlap {}, {}",
                    t,
                    rat_to_frac_string(&rep.covered_area),
                    rat_to_frac_string(&rep.window_area),
                    rat_to_frac_string(&rep.overlap_area),
                    if rep.matched { "matched" } else { "MISMATCH" }
                ),
                files,
            })
        }
        Command::Render => {
            let t = t.unwrap_or(8).max(1);
            for face in table.faces() {
                if face == FaceId::Polygon {
                    continue;
                }
                let name = format!("region-{}.svg", face);
                let body = svg::region_scene(&mut table, face);
                files.push(write_svg(out_dir, &name, &body)?);
            }
            let window = config.window_or_default(&table, t);
            files.push(write_svg(
                out_dir,
                &format!("tiling-t{}.svg", t),
                &svg::tiling_scene(&mut table, t, &window),
            )?);
            files.push(write_svg(
                out_dir,
                &format!("domain-complex-t{}.svg", t),
                &svg::domain_complex_scene(&mut table, t),
            )?);
            Ok(JobOutcome {
                all_matched: true,
                summary: format!("wrote {} figures", files.len()),
                files,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_config() -> JobConfig {
        serde_json::from_str(r#"{ "polygon": [[1,0],[2,1],[0,2]], "domain": "cube", "t": 8 }"#)
            .unwrap()
    }

    #[test]
    fn config_parsing_variants() {
        let c = triangle_config();
        assert!(matches!(c.policy().unwrap(), DomainPolicy::Cube));
        let c: JobConfig = serde_json::from_str(
            r#"{ "polygon": [[0,0],[1,0],[1,1],[0,1]], "domain": {"dv": {"group": [[[1,0],[0,1]],[[0,1],[1,0]]]}} }"#,
        )
        .unwrap();
        match c.policy().unwrap() {
            DomainPolicy::Dv(g) => assert_eq!(g, GramMatrix::identity()),
            _ => panic!("expected dv policy"),
        }
        let bad: JobConfig =
            serde_json::from_str(r#"{ "polygon": [[0,0],[1,0]], "domain": "cube" }"#).unwrap();
        assert!(bad.polygon().is_err());
    }

    #[test]
    fn mu_command_reruns_are_byte_identical() {
        let dir1 = std::env::temp_dir().join("ehrhart-local-test-mu1");
        let dir2 = std::env::temp_dir().join("ehrhart-local-test-mu2");
        let cfg = triangle_config();
        let o1 = run(&cfg, Command::Mu, None, &dir1).unwrap();
        let o2 = run(&cfg, Command::Mu, None, &dir2).unwrap();
        assert!(o1.all_matched && o2.all_matched);
        let a = std::fs::read(&o1.files[0]).unwrap();
        let b = std::fs::read(&o2.files[0]).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.contains("\"mu\": \"3/8\""));
        assert!(text.contains("\"mu\": \"1/4\""));
        assert!(!text.contains('.'), "no decimal rationals in reports");
    }

    #[test]
    fn eq1_command_on_the_reference_triangle() {
        let dir = std::env::temp_dir().join("ehrhart-local-test-eq1");
        let cfg = triangle_config();
        let o = run(&cfg, Command::VerifyEq1, Some(8), &dir).unwrap();
        assert!(o.all_matched);
        assert!(o.summary.contains("109 = 109"));
    }
}
