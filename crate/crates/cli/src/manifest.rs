//! Run manifests embedded in every output.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: Map<String, Value>,
    pub outputs: Vec<String>,
    pub params: Map<String, Value>,
    pub spec_components: usize,
    pub grid: usize,
    pub seed: u64,
    /// Set when the output went through floating point (SVG rendering).
    pub lossy: bool,
}

impl RunManifest {
    pub fn new(subcommand: &str, spec_components: usize, grid: usize, seed: u64) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            inputs: Map::new(),
            outputs: Vec::new(),
            params: Map::new(),
            spec_components,
            grid,
            seed,
            lossy: false,
        }
    }

    pub fn input(&mut self, key: &str, path: &str) {
        self.inputs.insert(key.to_string(), Value::String(path.to_string()));
    }

    pub fn param(&mut self, key: &str, v: Value) {
        self.params.insert(key.to_string(), v);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "params": self.params,
            "spec_components": self.spec_components,
            "grid": self.grid,
            "seed": self.seed,
            "lossy": self.lossy,
            "tool": { "name": "ktx", "version": env!("CARGO_PKG_VERSION") },
        })
    }
}
