use std::fs;
use std::path::Path;
use std::sync::Arc;

use bnsr_core::bb::{bb_finiteness, bb_sigma, sigma1_complement, wreath_sufficient};
use bnsr_core::character::{format_rational, parse_weight_document, BbCharacter, RaagCharacter};
use bnsr_core::graph::{parse_graph, Graph};
use bnsr_core::raag::{raag_sigma, replay_failure, Verdict};
use bnsr_core::variant::{LevelCondition, Variant};
use bnsr_core::{Error, Limits, Result};
use serde_json::{json, Value};

/// Settings shared by the query subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub variant: Variant,
    pub limits: Limits,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            variant: Variant::Homological,
            limits: Limits::default(),
        }
    }
}

impl Options {
    fn condition(&self) -> &'static dyn LevelCondition {
        self.variant.condition()
    }

    fn to_json(self) -> Value {
        json!({
            "variant": self.variant,
            "max_simplices": self.limits.max_simplices,
            "tietze_budget": self.limits.tietze_budget,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Arc<Graph>> {
    Ok(Arc::new(parse_graph(&read(path)?)?))
}

fn check_level(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    Ok(())
}

/// Merges the verdict fields into the report and attaches the replay status
/// of a `No` witness.
fn verdict_report(
    command: &str,
    inputs: Value,
    g: &Graph,
    verdict: &Verdict,
    replay: impl FnOnce() -> Result<bool>,
) -> Result<Value> {
    let mut report = verdict.to_json(g);
    report["command"] = json!(command);
    report["inputs"] = inputs;
    if verdict.witness.is_some() {
        let replayed = replay()?;
        assert!(replayed, "witness failed to replay: {}", report["witness"]);
        report["witness"]["replayed"] = json!(true);
    }
    Ok(report)
}

/// Finiteness type of the Bestvina-Brady group: `FP_n`, or `F_n` with the
/// homotopical variant.
pub fn cmd_fpn(graph: &Path, n: usize, opts: Options) -> Result<Value> {
    check_level(n)?;
    let g = load_graph(graph)?;
    let answer = bb_finiteness(&g, n, opts.condition(), &opts.limits)?;
    let property = match opts.variant {
        Variant::Homological => format!("FP_{n}"),
        Variant::Homotopical => format!("F_{n}"),
    };
    Ok(json!({
        "command": "fpn",
        "inputs": {"graph": g.to_json(), "n": n, "options": opts.to_json()},
        "property": property,
        "verdict": answer.value,
        "reason": answer.reason,
    }))
}

/// Membership of a character of `A_Γ` in `Σⁿ`.
pub fn cmd_raag(graph: &Path, character: &Path, n: usize, opts: Options) -> Result<Value> {
    check_level(n)?;
    let g = load_graph(graph)?;
    let mu = RaagCharacter::from_map(&g, &parse_weight_document(&read(character)?)?)?;
    let verdict = raag_sigma(&g, &mu, n, opts.condition(), &opts.limits)?;
    let inputs = json!({
        "graph": g.to_json(),
        "character": mu.to_json(&g),
        "n": n,
        "options": opts.to_json(),
    });
    verdict_report("raag", inputs, &g, &verdict, || {
        let w = verdict.witness.as_ref().expect("checked");
        replay_failure(&g, &mu, &w.failure, &opts.limits)
    })
}

/// Membership of a character of `BB_Γ` in `Σⁿ`.
pub fn cmd_bb(graph: &Path, character: &Path, n: usize, opts: Options) -> Result<Value> {
    check_level(n)?;
    let g = load_graph(graph)?;
    let chi = BbCharacter::from_map(&g, &parse_weight_document(&read(character)?)?)?;
    let verdict = bb_sigma(&g, &chi, n, opts.condition(), &opts.limits)?;
    let critical: Vec<String> = chi.critical_values().iter().map(format_rational).collect();
    let inputs = json!({
        "graph": g.to_json(),
        "character": chi.to_json(&g),
        "n": n,
        "options": opts.to_json(),
    });
    let mut report = verdict_report("bb", inputs, &g, &verdict, || {
        let w = verdict.witness.as_ref().expect("checked");
        let t = w.critical_value.as_ref().expect("BB witnesses carry t");
        replay_failure(&g, &chi.extension_at(t), &w.failure, &opts.limits)
    })?;
    report["critical_values"] = json!(critical);
    Ok(report)
}

/// The complement of `Σ¹(BB_Γ)` as a union of equality systems.
pub fn cmd_poly(graph: &Path, opts: Options) -> Result<Value> {
    let g = load_graph(graph)?;
    let p = sigma1_complement(&g, &opts.limits)?;
    let mut report = p.to_json();
    report["command"] = json!("poly");
    report["inputs"] = json!({"graph": g.to_json()});
    report["empty"] = json!(p.is_empty());
    report["whole_sphere"] = json!(p.is_whole_sphere());
    Ok(report)
}

/// The wreath product sufficiency test.
pub fn cmd_wreath(n: usize, support_count: usize) -> Result<Value> {
    check_level(n)?;
    let sufficient = wreath_sufficient(n, support_count);
    let note = if sufficient {
        format!("{support_count} ≥ n + 1 = {} coordinates in the support: membership certified", n + 1)
    } else if support_count == 0 {
        "the support is empty; membership is then decided by the character on the acting group, which this test does not see"
            .to_string()
    } else {
        format!("{support_count} < n + 1 = {} coordinates in the support: inconclusive", n + 1)
    };
    Ok(json!({
        "command": "wreath",
        "inputs": {"n": n, "support_count": support_count},
        "sufficient": sufficient,
        "conclusive": sufficient,
        "note": note,
    }))
}

/// The JSON document printed for a failed command.
pub fn error_report(command: &str, kind: &str, message: &str, exit_code: i32) -> Value {
    json!({
        "command": command,
        "error": {"kind": kind, "message": message},
        "exit_code": exit_code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    const C4: &str = r#"{"vertices":["x1","y1","x2","y2"],"edges":[["x1","x2"],["x1","y2"],["y1","x2"],["y1","y2"]]}"#;

    #[test]
    fn raag_reports() {
        let g = file(C4);
        let full = file(r#"{"x1":"1","y1":"1","x2":"1","y2":"1"}"#);
        let r = cmd_raag(g.path(), full.path(), 2, Options::default()).unwrap();
        assert_eq!(r["verdict"], "no");
        assert_eq!(r["witness"]["sigma"], json!([]));
        assert_eq!(r["witness"]["homology"], json!({"free_rank": 1, "torsion": []}));
        assert_eq!(r["witness"]["replayed"], true);

        let partial = file(r#"{"x1":"1","y1":"0","x2":"1","y2":"1"}"#);
        assert_eq!(cmd_raag(g.path(), partial.path(), 1, Options::default()).unwrap()["verdict"], "yes");

        let zero = file(r#"{"x1":"0","y1":"0","x2":"0","y2":"0"}"#);
        let err = cmd_raag(g.path(), zero.path(), 1, Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bb_reports() {
        let g = file(C4);
        let chi = file(r#"{"x1":"0","y1":"0","x2":"1","y2":"2"}"#);
        let r = cmd_bb(g.path(), chi.path(), 1, Options::default()).unwrap();
        assert_eq!(r["verdict"], "no");
        assert_eq!(r["witness"]["t"], "0/1");
        assert_eq!(r["critical_values"], json!(["-2/1", "-1/1", "0/1"]));
        let err = cmd_bb(g.path(), chi.path(), 2, Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn poly_and_wreath_reports() {
        let g = file(C4);
        let r = cmd_poly(g.path(), Options::default()).unwrap();
        assert_eq!(r["systems"], json!([[["x1", "y1"]], [["x2", "y2"]]]));
        assert_eq!(cmd_wreath(1, 2).unwrap()["sufficient"], true);
        assert_eq!(cmd_wreath(2, 2).unwrap()["sufficient"], false);
        let empty = cmd_wreath(3, 0).unwrap();
        assert_eq!(empty["sufficient"], false);
        assert!(empty["note"].as_str().unwrap().contains("support is empty"));
    }

    #[test]
    fn unreadable_file_is_an_input_error() {
        let err = cmd_fpn(Path::new("/nonexistent/graph.json"), 1, Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
