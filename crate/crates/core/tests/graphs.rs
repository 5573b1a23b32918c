mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slrc_core::engine::{repair_plan, RecoveringSet, RecoveryIndex, RepairPlan};
use slrc_core::graph::{
    alpha_preset, conjecture_rate, delta_star, graph_from_sources, minimality_audit, neighborhoods,
    rate_bounds, rewire, verify_repair_graph, AlphaStatus, DeltaKind, DeltaMode, GraphFault, Rate,
    RepairGraph,
};
use slrc_core::product::build_product_code;
use slrc_core::{BitMatrix, Budget, Error, LinearCode, SupportSet};

/// Builds a graph from 1-based edges.
fn graph(n: usize, edges: &[(usize, usize)]) -> RepairGraph {
    RepairGraph::new(n, edges.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap()
}

fn one_based(v: &[usize]) -> SupportSet {
    v.iter().map(|i| i - 1).collect()
}

fn wasted_sources() -> RepairGraph {
    graph(
        16,
        &[
            (2, 9),
            (3, 9),
            (3, 10),
            (4, 10),
            (4, 11),
            (5, 11),
            (6, 12),
            (7, 12),
            (10, 13),
            (11, 13),
            (8, 14),
            (12, 14),
            (10, 15),
            (14, 15),
            (10, 16),
            (14, 16),
        ],
    )
}

fn two_out_rules() -> RepairGraph {
    graph(
        12,
        &[
            (1, 7),
            (2, 7),
            (2, 8),
            (3, 8),
            (5, 9),
            (5, 10),
            (6, 4),
            (6, 11),
            (6, 12),
            (7, 4),
            (7, 11),
            (4, 9),
            (4, 10),
            (11, 12),
        ],
    )
}

fn counting_chain() -> RepairGraph {
    graph(
        15,
        &[
            (1, 8),
            (3, 8),
            (3, 9),
            (4, 9),
            (4, 10),
            (4, 12),
            (5, 10),
            (6, 10),
            (6, 11),
            (2, 12),
            (2, 13),
            (2, 15),
            (7, 13),
            (7, 14),
            (7, 15),
            (8, 11),
            (9, 11),
            (10, 12),
            (10, 13),
            (11, 14),
        ],
    )
}

/// The code a graph defines: every inner vertex is the sum of its in-neighbours.
fn code_of(g: &RepairGraph) -> LinearCode {
    let n = g.n();
    let rows: Vec<Vec<u8>> = (0..n)
        .filter(|&v| !g.is_source(v))
        .map(|v| {
            let mut row = vec![0u8; n];
            row[v] = 1;
            for u in g.in_set(v).iter() {
                row[u] = 1;
            }
            row
        })
        .collect();
    LinearCode::new(BitMatrix::from_rows(&rows).unwrap()).unwrap()
}

/// Rule hits as `(group, item, 1-based vertices)`.
fn hits(rep: &slrc_core::graph::AuditReport) -> Vec<(u8, u8, Vec<usize>)> {
    rep.rules
        .iter()
        .map(|c| (c.group, c.item, c.vertices.iter().map(|v| v + 1).collect()))
        .collect()
}

#[test]
fn wasted_sources_neighbourhoods() {
    let g = wasted_sources();
    assert_eq!(g.sources(), one_based(&[1, 2, 3, 4, 5, 6, 7, 8]));
    assert_eq!(g.out_set(2), &one_based(&[9, 10]));
    assert_eq!(g.out_set(3), &one_based(&[10, 11]));
    assert_eq!(g.out2(2), one_based(&[13, 15, 16]));
    assert_eq!(g.out_of_set(&one_based(&[3, 4])), one_based(&[9, 10, 11]));
    let (out, out2) = neighborhoods(&g, &one_based(&[3]));
    assert_eq!(
        (out, out2),
        (one_based(&[9, 10]), Some(one_based(&[13, 15, 16])))
    );
    let (_, none) = neighborhoods(&g, &one_based(&[3, 4]));
    assert_eq!(none, None);
    assert!(verify_repair_graph(&code_of(&g), &g, 2).is_valid());
}

#[test]
fn single_out_neighbour_rules() {
    let g = wasted_sources();
    let rep = minimality_audit(&g, 3, 2, Budget::DEFAULT).unwrap();
    assert!(rep.rewirable_count > 0);
    let h = hits(&rep);
    assert!(h.contains(&(1, 1, vec![1])));
    assert!(h.contains(&(1, 2, vec![2, 9])));
    assert!(h.contains(&(1, 3, vec![5, 11, 13])));
    assert!(h.contains(&(1, 4, vec![6, 12, 14, 8])));
    assert!(h.contains(&(1, 4, vec![7, 12, 14, 8])));
    assert!(h.contains(&(1, 5, vec![6, 7])));
    let items: Vec<u8> = h.iter().map(|x| x.1).collect();
    assert_eq!(items, [1, 2, 3, 4, 4, 5]);
    // Items 3 and 4 only apply from three erasures on.
    let rep2 = minimality_audit(&g, 2, 2, Budget::DEFAULT).unwrap();
    let items: Vec<u8> = hits(&rep2).iter().map(|x| x.1).collect();
    assert_eq!(items, [1, 2, 5]);
    assert!(!rep.consistent());
}

#[test]
fn wasted_sources_rewiring_saves_a_source() {
    let g = wasted_sources();
    let e = one_based(&[2, 3, 9]);
    assert_eq!(g.out_of_set(&e), one_based(&[10]));
    let steps = [(2, [1, 10]), (3, [12, 13]), (9, [11, 14])]
        .into_iter()
        .map(|(t, s)| RecoveringSet::new(16, t - 1, one_based(&s)))
        .collect();
    let h = rewire(&g, &RepairPlan::new(e, steps)).unwrap();
    assert!(h.is_acyclic());
    assert_eq!(h.sources(), one_based(&[1, 4, 5, 6, 7, 8, 10]));
    assert_eq!(h.in_set(1), &one_based(&[1, 10]));
    assert_eq!(h.in_set(8), &one_based(&[11, 14]));

    // A plan using a vertex before it is repaired is refused.
    let bad = [(2, [3, 10]), (3, [12, 13])]
        .into_iter()
        .map(|(t, s)| RecoveringSet::new(16, t - 1, one_based(&s)))
        .collect();
    assert!(matches!(
        rewire(&g, &RepairPlan::new(one_based(&[2, 3]), bad)),
        Err(Error::PlanInvalid(_))
    ));
}

#[test]
fn two_out_neighbour_rules() {
    let g = two_out_rules();
    let rep = minimality_audit(&g, 3, 2, Budget::DEFAULT).unwrap();
    let h = hits(&rep);
    assert!(h.contains(&(2, 1, vec![5, 9, 10])));
    assert!(h.contains(&(2, 2, vec![2, 7, 8, 1])));
    assert!(h.contains(&(2, 3, vec![2, 7, 8, 1, 3])));
    assert!(h.contains(&(2, 3, vec![2, 8, 7, 3, 1])));
    assert!(h.contains(&(1, 2, vec![3, 8])));
    assert_eq!(h.len(), 5);
    // At two erasures only the single-vertex rule applies.
    let rep2 = minimality_audit(&g, 2, 2, Budget::DEFAULT).unwrap();
    assert_eq!(hits(&rep2), vec![(1, 2, vec![3, 8])]);
}

#[test]
fn counting_chain_counting_chain() {
    let g = counting_chain();
    let rep = minimality_audit(&g, 3, 3, Budget::DEFAULT).unwrap();
    assert_eq!(rep.rewirable_count, 0);
    assert!(rep.rules.is_empty());
    assert_eq!(rep.patterns_checked, 15 + 105 + 455);
    let p = rep.partition.clone().unwrap();
    assert_eq!(p.a, one_based(&[2, 4, 7]));
    assert_eq!(p.b, one_based(&[3, 6]));
    assert_eq!(p.c1, one_based(&[1]));
    assert_eq!(p.c2, one_based(&[5]));
    let c = rep.coloring.clone().unwrap();
    let shift = |es: &Vec<(usize, usize)>| -> Vec<(usize, usize)> {
        es.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    };
    let green: Vec<(usize, Vec<(usize, usize)>)> =
        c.green.iter().map(|(v, es)| (v + 1, shift(es))).collect();
    assert_eq!(
        green,
        vec![(1, vec![(8, 11)]), (5, vec![(10, 12), (10, 13)])]
    );
    let blue: Vec<(usize, Vec<(usize, usize)>)> =
        c.blue.iter().map(|(v, es)| (v + 1, shift(es))).collect();
    assert_eq!(
        blue,
        vec![(1, vec![(11, 14)]), (3, vec![(9, 11)]), (6, vec![(11, 14)])]
    );
    assert_eq!(c.blue_owners((10, 13)), vec![0, 5]);
    assert_eq!(c.red.len(), 15);
    assert!(!rep.chain.is_empty());
    assert!(rep.chain.iter().all(|ch| ch.holds), "{:?}", rep.chain);
    assert!(rep.consistent());
    assert!(verify_repair_graph(&code_of(&g), &g, 3).is_valid());
}

#[test]
fn counting_chain_two_erasure_chain() {
    let rep = minimality_audit(&counting_chain(), 2, 3, Budget::DEFAULT).unwrap();
    assert!(rep.partition.is_none());
    assert_eq!(rep.chain.len(), 2);
    assert!(rep.consistent());
}

#[test]
fn audit_respects_budget() {
    assert!(matches!(
        minimality_audit(&counting_chain(), 3, 3, Budget(100)),
        Err(Error::ResourceLimit { .. })
    ));
}

#[test]
fn graph_validation_faults() {
    let (space, code) = build_product_code(2, 2, 3).unwrap();
    let idx = RecoveryIndex::new(&code, 2).unwrap();
    let base: SupportSet = (0..space.base_len()).collect();
    let g = graph_from_sources(&idx, &base).unwrap();
    let rep = verify_repair_graph(&code, &g, 2);
    assert!(rep.is_valid());
    assert_eq!(rep.source_rank, 4);

    let faults = |g: &RepairGraph| -> Vec<GraphFault> {
        verify_repair_graph(&code, g, 2)
            .violations
            .iter()
            .map(|v| v.fault)
            .collect()
    };
    let mut edges = g.edges();
    // A back edge from the corner into a base point closes a cycle.
    let corner = code.n() - 1;
    let cyc = RepairGraph::new(
        9,
        edges.iter().copied().chain([(corner, 0), (corner - 1, 0)]),
    )
    .unwrap();
    assert!(faults(&cyc).contains(&GraphFault::Cycle));
    // Dropping one in-edge leaves a single in-neighbour, too few to recover.
    let dropped = edges.remove(0);
    let thin = RepairGraph::new(9, edges.clone()).unwrap();
    assert_eq!(faults(&thin), vec![GraphFault::NotRecovering]);
    // Three in-neighbours exceed the locality.
    edges.push(dropped);
    let extra = (0..9)
        .find(|&u| u != dropped.1 && !g.in_set(dropped.1).contains(u) && g.is_source(u))
        .unwrap();
    edges.push((extra, dropped.1));
    let wide = RepairGraph::new(9, edges).unwrap();
    assert!(faults(&wide).contains(&GraphFault::InDegree));
    // A graph with too few sources to carry the dimension.
    let short = RepairGraph::new(9, g.edges().into_iter().chain([(0, 1), (2, 1)])).unwrap();
    assert!(faults(&short).contains(&GraphFault::SourceRank));
    let mismatched = RepairGraph::new(8, []).unwrap();
    assert_eq!(faults(&mismatched), vec![GraphFault::LengthMismatch]);
}

#[test]
fn delta_star_on_small_codes() {
    let (_, code) = build_product_code(2, 2, 3).unwrap();
    let idx = RecoveryIndex::new(&code, 2).unwrap();
    let exact = delta_star(&idx, code.k(), DeltaMode::Exact, Budget::DEFAULT).unwrap();
    assert_eq!((exact.value, exact.kind), (4, DeltaKind::Exact));
    assert_eq!(exact.lower_bound, 4);
    let g = graph_from_sources(&idx, &exact.witness).unwrap();
    assert!(verify_repair_graph(&code, &g, 2).is_valid());
    let heur = delta_star(&idx, code.k(), DeltaMode::Heuristic, Budget::DEFAULT).unwrap();
    assert_eq!(heur.kind, DeltaKind::UpperBound);
    assert!(heur.value >= exact.value);

    let (_, cube) = build_product_code(2, 3, 5).unwrap();
    let idx = RecoveryIndex::new(&cube, 2).unwrap();
    let heur = delta_star(&idx, cube.k(), DeltaMode::Heuristic, Budget::DEFAULT).unwrap();
    assert_eq!(heur.value, 8);
    assert!(
        verify_repair_graph(&cube, &graph_from_sources(&idx, &heur.witness).unwrap(), 2).is_valid()
    );
}

/// Smallest source count by brute force: a set generates everything when
/// peeling with recovering sets inside the known set reaches all coordinates.
fn delta_star_oracle(duals: &[u64], n: usize, r: u32) -> usize {
    let sets: Vec<Vec<u64>> = (0..n)
        .map(|i| common::recovering_sets(duals, i, r))
        .collect();
    let full = (1u64 << n) - 1;
    let closes = |s: u64| {
        let mut known = s;
        loop {
            let grow = (0..n)
                .filter(|&i| known >> i & 1 == 0 && sets[i].iter().any(|&m| m & !known == 0))
                .fold(0u64, |acc, i| acc | 1 << i);
            if grow == 0 {
                return known == full;
            }
            known |= grow;
        }
    };
    (0..=n)
        .find(|&size| {
            (0..=full)
                .filter(|m| m.count_ones() as usize == size)
                .any(closes)
        })
        .unwrap()
}

/// Smallest source count over explicit repair graphs: every non-source picks
/// one of its recovering sets as in-neighbourhood and the result must be
/// acyclic. `None` when the assignment space exceeds `cap`.
fn delta_star_by_graphs(duals: &[u64], n: usize, r: u32, cap: u64) -> Option<usize> {
    let sets: Vec<Vec<u64>> = (0..n)
        .map(|i| common::recovering_sets(duals, i, r))
        .collect();
    let acyclic = |ins: &[u64]| {
        let mut done = 0u64;
        loop {
            let ready = (0..n)
                .filter(|&v| done >> v & 1 == 0 && ins[v] & !done == 0)
                .fold(0u64, |a, v| a | 1 << v);
            if ready == 0 {
                return done == (1u64 << n) - 1;
            }
            done |= ready;
        }
    };
    for size in 0..=n {
        for s in (0u64..1 << n).filter(|m| m.count_ones() as usize == size) {
            let inner: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 0).collect();
            let total = inner
                .iter()
                .try_fold(1u64, |acc, &v| acc.checked_mul(sets[v].len() as u64))
                .unwrap_or(u64::MAX);
            if total > cap {
                return None;
            }
            let mut choice = vec![0usize; inner.len()];
            for _ in 0..total {
                let mut ins = vec![0u64; n];
                for (j, &v) in inner.iter().enumerate() {
                    ins[v] = sets[v][choice[j]];
                }
                if acyclic(&ins) {
                    return Some(size);
                }
                for (j, &v) in inner.iter().enumerate() {
                    choice[j] += 1;
                    if choice[j] < sets[v].len() {
                        break;
                    }
                    choice[j] = 0;
                }
            }
        }
    }
    None
}

#[test]
fn graph_enumeration_on_the_square() {
    let (_, code) = build_product_code(2, 2, 3).unwrap();
    let duals = common::dual_supports(code.pcm(), 3);
    assert_eq!(delta_star_by_graphs(&duals, 9, 2, 1 << 20), Some(4));
}

#[test]
fn rewiring_product_graphs_stays_valid() {
    let (space, code) = build_product_code(2, 3, 7).unwrap();
    let idx = RecoveryIndex::new(&code, 2).unwrap();
    let base: SupportSet = (0..space.base_len()).collect();
    let g = graph_from_sources(&idx, &base).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rewired = 0;
    for _ in 0..200 {
        let size = rng.gen_range(1..=4);
        let e: SupportSet = rand::seq::index::sample(&mut rng, 27, size)
            .into_iter()
            .collect();
        let Ok(plan) = repair_plan(&idx, &e) else {
            continue;
        };
        let Ok(h) = rewire(&g, &plan) else { continue };
        rewired += 1;
        assert!(h.is_acyclic());
        for step in plan.steps() {
            assert_eq!(h.in_set(step.target()), step.members());
        }
        let out = g.out_of_set(&e);
        for v in out.iter().filter(|v| !e.contains(*v)) {
            assert!(h.is_source(v));
        }
    }
    assert!(rewired > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_delta_star_matches_enumeration(
        rows in (2usize..=5, 5usize..=10).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(0u8..=1, c), r)
        }),
        r in 2u32..=3,
    ) {
        let Ok(code) = LinearCode::new(BitMatrix::from_rows(&rows).unwrap()) else { return Ok(()) };
        prop_assume!((r as usize) < code.n());
        let idx = RecoveryIndex::new(&code, r as usize).unwrap();
        let duals = common::dual_supports(code.pcm(), r + 1);
        let exact = delta_star(&idx, code.k(), DeltaMode::Exact, Budget::DEFAULT).unwrap();
        prop_assert_eq!(exact.value, delta_star_oracle(&duals, code.n(), r));
        if let Some(v) = delta_star_by_graphs(&duals, code.n(), r, 1 << 16) {
            prop_assert_eq!(exact.value, v);
        }
        prop_assert!(exact.value >= code.k());
        let g = graph_from_sources(&idx, &exact.witness).unwrap();
        prop_assert!(verify_repair_graph(&code, &g, r as usize).is_valid());
        let heur = delta_star(&idx, code.k(), DeltaMode::Heuristic, Budget::DEFAULT).unwrap();
        prop_assert!(heur.value >= exact.value);
    }
}

/// `x == num/den`, by cross multiplication.
fn same(x: Rate, num: u128, den: u128) -> bool {
    *x.numer() * den == num * *x.denom()
}

#[test]
fn bounds_sweep() {
    for r in 1..=12u128 {
        let b = rate_bounds(r as usize, 2, None).unwrap();
        assert!(same(b.t2, r, r + 2));
        assert!(same(b.t3, r * r, (r + 1) * (r + 1)));
        assert!(b.t3 < b.t2);
        assert!(same(
            rate_bounds(r as usize, 1, None).unwrap().proven.unwrap(),
            r,
            r + 1
        ));
        assert_eq!(rate_bounds(r as usize, 3, None).unwrap().proven, Some(b.t3));
        for t in 1..=6 {
            let (a, status) = alpha_preset(t).unwrap();
            assert_eq!(a.iter().sum::<u32>() as usize, t);
            assert_eq!(
                status,
                if t <= 4 {
                    AlphaStatus::Known
                } else {
                    AlphaStatus::Conjecture
                }
            );
            // 1 / (1 + Σ a_i / r^i) = r^L / (r^L + Σ a_i r^{L-i}).
            let l = a.len() as u32;
            let tail: u128 = a
                .iter()
                .enumerate()
                .map(|(i, &ai)| ai as u128 * r.pow(l - 1 - i as u32))
                .sum();
            let c = conjecture_rate(r as usize, t, &a).unwrap();
            assert!(same(c, r.pow(l), r.pow(l) + tail), "r={r} t={t}");
            if t <= 3 {
                assert_eq!(Some(c), rate_bounds(r as usize, t, None).unwrap().proven);
            }
        }
        if r >= 2 {
            let (_, code) = build_product_code(r as usize, 2, 2).unwrap();
            assert!(same(b.t2, code.k() as u128, code.n() as u128));
        }
    }
    assert!(conjecture_rate(2, 5, &[2, 2]).is_err());
    let supplied = rate_bounds(3, 4, Some(&[1, 1, 2])).unwrap();
    assert_eq!(supplied.conjecture.unwrap().1, AlphaStatus::Supplied);
}
