use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use doodle_diagram::{parse_gauss_code, PlanarDiagram};
use doodle_moves::{random_trace_with, TraceConfig};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub count: usize,
    /// No item has more crossings than this.
    pub max_crossings: usize,
    /// Length of the random trace (from the circle) behind each item.
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub file: String,
    pub seed: u64,
    pub crossings: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub version: String,
    pub seed: u64,
    pub spec: CorpusSpec,
    pub items: Vec<CorpusItem>,
    /// Items that parse back to the diagram they were written from.
    pub validated: usize,
    /// Hash of all item hashes, in order.
    pub digest: String,
}

/// Writes `count` Gauss codes plus `manifest.json` into `dir`.
pub fn generate_corpus(
    dir: &Path,
    spec: &CorpusSpec,
    seed: u64,
) -> Result<CorpusManifest, CliError> {
    fs::create_dir_all(dir)?;
    // creation moves are refused at the bound, so a trace stays below it
    let mut cfg = TraceConfig::new(spec.steps);
    cfg.max_crossings = spec.max_crossings;
    let mut items = Vec::with_capacity(spec.count);
    let mut validated = 0;
    let mut all = Sha256::new();
    for i in 0..spec.count {
        let item_seed = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let d = random_trace_with(&PlanarDiagram::circle(), &cfg, item_seed).end()?;
        let code = d.to_gauss_code();
        let body = format!("{code}\n");
        let file = format!("{i:04}.gauss");
        fs::write(dir.join(&file), &body)?;
        if parse_gauss_code(&code).is_ok_and(|e| e.is_isomorphic(&d)) {
            validated += 1;
        }
        let sha256 = hex::encode(Sha256::digest(body.as_bytes()));
        all.update(sha256.as_bytes());
        items.push(CorpusItem {
            file,
            seed: item_seed,
            crossings: d.crossing_count(),
            sha256,
        });
    }
    let manifest = CorpusManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        spec: spec.clone(),
        items,
        validated,
        digest: hex::encode(all.finalize()),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join("manifest.json"), text + "\n")?;
    Ok(manifest)
}
