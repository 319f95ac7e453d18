use vc_core::corpus::{connected_graphs, is_connected, regular_graphs};

#[test]
fn eight_node_connected_graphs() {
    let graphs = connected_graphs(8);
    assert_eq!(graphs.len(), 11117);
    assert!(graphs.iter().all(is_connected));
}

#[test]
fn regular_corpus_sizes() {
    let graphs = regular_graphs(14);
    assert!(graphs.iter().all(|g| g.node_count() <= 14));
    // K_2 is the smallest
    assert!(graphs.iter().any(|g| g.node_count() == 2));
    assert!(graphs.iter().any(|g| g.node_count() == 14));
}
