use super::*;
use crate::bitset::VertexSet;
use crate::coloring::{verify_coloring, Coloring};
use crate::graph::{gen_gnp, Graph};
use crate::rng::RngHandle;

fn random_half(n: usize, rng: &mut RngHandle) -> VertexSet {
    let all: Vec<usize> = (0..n).collect();
    VertexSet::from_vertices(n, rng.sample(&all, n / 2))
}

fn balanced_coloring(n: usize, classes: usize, rng: &mut RngHandle) -> Coloring {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut colors = vec![0; n];
    for (i, v) in order.into_iter().enumerate() {
        colors[v] = i % classes;
    }
    Coloring::new(colors, classes).unwrap()
}

/// Hand-sized thresholds: k = 2, r = 1, m = 1.
fn tiny_thresholds(n: usize) -> Thresholds {
    let profile = ParameterProfile {
        name: "tiny".into(),
        bad_frac: 0.2,
        bad_frac_after: 0.1,
        ..ParameterProfile::desk()
    };
    let mut t = profile.resolve(n);
    t.k = 2;
    t.r = 1;
    t.s = 1;
    t.bad_cap = 1;
    t.sig_nonneighbor = Scaled::Fixed(1);
    t.m = Scaled::Fixed(1);
    t
}

#[test]
fn edgeless_fails_at_transversal_search() {
    let n = 64;
    let g = Graph::new(n);
    let y = VertexSet::from_vertices(n, 0..40);
    let thr = ParameterProfile::desk().resolve(n);
    let res = construct_covering_clique(&g, &y, &thr, &mut RngHandle::new(0), WITNESS_EFFORT).unwrap();
    match res {
        Err(f @ ConstructionFailure::TransversalSearch { exhausted: true, .. }) => {
            assert_eq!(f.stage(), "transversal_search")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn multipartite_by_hand() {
    // parts {0,1} {2,3} {4,5}; Y = {0,1,2,4}; outside 3 and 5 miss only 2 and 4
    let g = Graph::complete_multipartite(&[2, 2, 2]);
    let y = VertexSet::from_vertices(6, [0, 1, 2, 4]);
    let thr = tiny_thresholds(6);
    let w = construct_covering_clique(&g, &y, &thr, &mut RngHandle::new(3), WITNESS_EFFORT)
        .unwrap()
        .unwrap();
    assert_eq!(w.b, vec![3]);
    assert_eq!(w.z_sets, vec![vec![2], vec![4]]);
    assert_eq!(w.clique, vec![2, 4]);
    assert_eq!(w.coverage, vec![(3, 2), (5, 4)]);
    w.audit(&g).unwrap();
}

#[test]
fn audit_catches_tampering() {
    let g = Graph::complete_multipartite(&[2, 2, 2]);
    let y = VertexSet::from_vertices(6, [0, 1, 2, 4]);
    let thr = tiny_thresholds(6);
    let w = construct_covering_clique(&g, &y, &thr, &mut RngHandle::new(3), WITNESS_EFFORT)
        .unwrap()
        .unwrap();
    let mut bad = w.clone();
    bad.coverage[0] = (3, 4);
    assert!(bad.audit(&g).is_err());
    let mut bad = w.clone();
    bad.z_sets[1] = vec![2];
    assert!(bad.audit(&g).is_err());
    let mut bad = w;
    bad.clique = vec![0, 1];
    assert!(bad.audit(&g).is_err());
}

#[test]
fn not_significant_is_reported() {
    let g = Graph::complete(30);
    let y = VertexSet::from_vertices(30, 0..15);
    let thr = ParameterProfile::desk().resolve(30);
    let res = construct_covering_clique(&g, &y, &thr, &mut RngHandle::new(0), WITNESS_EFFORT).unwrap();
    assert!(matches!(res, Err(ConstructionFailure::NotSignificant { .. })));
    assert!(construct_covering_clique(&g, &VertexSet::full(30), &thr, &mut RngHandle::new(0), WITNESS_EFFORT).is_err());
}

#[test]
fn gnp_512_witnesses_pass_audit() {
    let thr = ParameterProfile::desk().resolve(512);
    let mut successes = 0;
    for seed in 0..6 {
        let mut rng = RngHandle::new(13 + seed);
        let g = gen_gnp(512, 0.5, &mut rng).unwrap();
        let y = random_half(512, &mut rng);
        if let Ok(w) = construct_covering_clique(&g, &y, &thr, &mut rng, WITNESS_EFFORT).unwrap() {
            w.audit(&g).unwrap();
            assert_eq!(w.clique.len(), thr.k);
            successes += 1;
        }
    }
    eprintln!("construction successes: {successes}/6");
}

#[test]
fn single_class_fast_path() {
    let g = Graph::complete(10);
    let thr = ParameterProfile::desk().resolve(10);
    let out = refute_coloring(
        &g,
        &Coloring::monochrome(10),
        &thr,
        &mut RngHandle::new(0),
        WITNESS_EFFORT,
    )
    .unwrap();
    assert_eq!(out.stage_reached, RefuteStage::WitnessFound);
    assert_eq!(out.witness.unwrap().to_vec(), (0..10).collect::<Vec<_>>());

    let out = refute_coloring(
        &Graph::new(5),
        &Coloring::monochrome(5),
        &thr,
        &mut RngHandle::new(0),
        WITNESS_EFFORT,
    )
    .unwrap();
    assert!(out.witness.is_none() && out.failure.is_some());
}

#[test]
fn valid_coloring_is_irrefutable() {
    let g = Graph::cycle(5);
    let c = Coloring::from_colors(vec![0, 1, 0, 1, 2]);
    assert!(verify_coloring(&g, &c).unwrap().valid);
    let thr = ParameterProfile::desk().resolve(5);
    let out = refute_coloring(&g, &c, &thr, &mut RngHandle::new(0), WITNESS_EFFORT).unwrap();
    assert!(out.any_witness().is_none());
    assert!(out.stage_reached <= RefuteStage::FoundSignificantClass);
    assert!(out.failure.is_some());
}

#[test]
fn gnp_256_two_colorings_are_refuted() {
    let thr = ParameterProfile::desk().resolve(256);
    let mut refuted = 0;
    for seed in 0..20 {
        let mut rng = RngHandle::new(5 + seed);
        let g = gen_gnp(256, 0.5, &mut rng).unwrap();
        let c = balanced_coloring(256, 2, &mut rng);
        let out = refute_coloring(&g, &c, &thr, &mut rng, WITNESS_EFFORT).unwrap();
        if let Some(w) = &out.construction {
            w.audit(&g).unwrap();
        }
        if let Some((w, color)) = out.any_witness() {
            assert!(w.is_subset(&c.classes()[color]));
            assert!(crate::cliques::is_maximal_clique(&g, w).unwrap().is_maximal());
            let v = verify_coloring(&g, &c).unwrap();
            assert!(!v.valid);
            refuted += 1;
        }
    }
    assert!(refuted >= 18, "{refuted}/20");
}

#[test]
fn refutation_is_deterministic() {
    let thr = ParameterProfile::desk().resolve(256);
    let mut rng = RngHandle::new(77);
    let g = gen_gnp(256, 0.5, &mut rng).unwrap();
    let c = balanced_coloring(256, 2, &mut rng);
    let a = refute_coloring(&g, &c, &thr, &mut RngHandle::new(9), WITNESS_EFFORT).unwrap();
    let b = refute_coloring(&g, &c, &thr, &mut RngHandle::new(9), WITNESS_EFFORT).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
