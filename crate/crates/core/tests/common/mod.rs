#![allow(dead_code)]

use std::path::PathBuf;

use chromastate::closedform::IndexNames;
use chromastate::{PrimeDimension, WeightedGraph};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn graph(name: &str) -> WeightedGraph {
    WeightedGraph::parse(&fixture_text(&format!("{name}.graph"))).unwrap()
}

pub fn expected(name: &str) -> String {
    fixture_text(&format!("expected_{name}.txt")).trim_end().to_string()
}

pub fn names(g: &WeightedGraph, name: &str) -> IndexNames {
    match std::fs::read_to_string(fixture_path(&format!("names_{name}.txt"))) {
        Ok(list) => IndexNames::parse(list.trim(), g.n()).unwrap(),
        Err(_) => IndexNames::default_for(g.n()),
    }
}

pub fn dim(d: u32) -> PrimeDimension {
    PrimeDimension::new(d).unwrap()
}
