#![allow(dead_code)]

pub mod oracle;

use hybrid_core::algebra::{build_algebra, FiniteDimAlgebra};
use hybrid_core::data::BiserialQuiverData;
use hybrid_core::format::parse_presentation;
use hybrid_core::relations::generate_relations;
use std::path::PathBuf;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Names of the bundled presentations, sorted.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "json").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

pub fn load(name: &str) -> BiserialQuiverData {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap();
    parse_presentation(&text).unwrap()
}

pub fn build(data: &BiserialQuiverData) -> FiniteDimAlgebra {
    build_algebra(data, &generate_relations(data, &data.classify_arrows())).unwrap()
}
