//! Golden-file fixtures for the three reference graphs the project treats
//! as canonical test subjects: GP(5,2), GP(10,2), and Kneser(7,3).

use distgraph::io::{graph_from_edge_list, graph_to_edge_list, NumberStyle};
use distgraph::{
    all_pairs_distances, classify, generate_generalized_petersen, generate_kneser, girth,
    FamilyRegistry, Girth, Mode, WeightedGraph,
};

fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("fixture present")
}

fn check_fixture(name: &str, generated: &WeightedGraph) {
    let text = fixture(name);
    let parsed = graph_from_edge_list(&text).unwrap();
    assert_eq!(
        &parsed, generated,
        "{name}: fixture diverges from generator"
    );
    // Serialization is byte-stable.
    assert_eq!(
        graph_to_edge_list(generated, NumberStyle::Fraction).unwrap(),
        text,
        "{name}: serialization drifted"
    );
}

#[test]
fn golden_gp_5_2() {
    let g = generate_generalized_petersen(5, 2).unwrap();
    check_fixture("gp_5_2.edges", &g);
    assert_eq!(g.vertex_count(), 10);
    assert_eq!(g.edge_count(), 15);
    assert_eq!(girth(&g), Girth::Finite(5));
}

#[test]
fn golden_gp_10_2() {
    let g = generate_generalized_petersen(10, 2).unwrap();
    check_fixture("gp_10_2.edges", &g);
    assert_eq!(g.vertex_count(), 20);
    assert_eq!(g.edge_count(), 30);
    assert_eq!(girth(&g), Girth::Finite(5));
    // In scope for the characterization, and its own matrix round-trips.
    let fam = FamilyRegistry::builtin().parse("gp:10,2").unwrap();
    let d = all_pairs_distances(&g).unwrap();
    let v = classify(&d, fam.as_ref(), Mode::Strict).unwrap();
    assert!(v.realizable);
    assert_eq!(v.realization.unwrap(), g);
}

#[test]
fn golden_kneser_7_3() {
    let g = generate_kneser(7, 3).unwrap();
    check_fixture("kneser_7_3.edges", &g);
    assert_eq!(g.vertex_count(), 35);
    assert_eq!(g.edge_count(), 70);
    assert_eq!(girth(&g), Girth::Finite(6));
    let fam = FamilyRegistry::builtin().parse("kneser:7,3").unwrap();
    let d = all_pairs_distances(&g).unwrap();
    let v = classify(&d, fam.as_ref(), Mode::Strict).unwrap();
    assert!(v.realizable);
    assert_eq!(v.realization.unwrap(), g);
}
