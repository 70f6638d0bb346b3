#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spatial_alexander::cli::RawMatrixInput;
use spatial_alexander::diagram::{random_diagram, RandomDiagramConfig};
use spatial_alexander::{AlexMatrix, Diagram, Laurent};

pub const CORPUS_SEED: u64 = 0x5eed_2024;
pub const CORPUS_SIZE: usize = 240;

pub fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn diagram(name: &str) -> Diagram {
    Diagram::from_json(&data(name)).unwrap()
}

pub fn bouquet() -> Diagram {
    diagram("bouquet.json")
}

pub fn trefoil() -> Diagram {
    diagram("trefoil_vertex.json")
}

pub fn bouquet_matrix() -> AlexMatrix {
    let raw: RawMatrixInput = serde_json::from_str(&data("bouquet_matrix.json")).unwrap();
    raw.into_matrix().unwrap()
}

pub fn poly(s: &str) -> Laurent {
    s.parse().unwrap()
}

/// Seeded random diagrams: connected, realizable, balanced, at most 8
/// crossings and 4 edges.
pub fn corpus() -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let cfg = RandomDiagramConfig::default();
    (0..CORPUS_SIZE)
        .map(|_| random_diagram(&mut rng, &cfg))
        .collect()
}

pub fn diagram_from_seed(seed: u64, cfg: &RandomDiagramConfig) -> Diagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), cfg)
}
