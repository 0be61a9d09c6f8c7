use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::generate::{block_chain, outerplanar_2conn, random_order};
use crate::graph::Graph;
use crate::oracle::{solve_bruteforce, DEFAULT_CAP};
use crate::order::build_order;

fn inst(n: usize, edges: &[(usize, usize)], pairs: &[(usize, usize)]) -> Instance {
    Instance::new(
        Graph::new(n, edges).unwrap(),
        build_order(n, pairs).unwrap(),
    )
    .unwrap()
}

fn fan_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]
}

fn bowtie_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]
}

fn solve_2conn(instance: &Instance) -> Option<OrderedHamPath> {
    let cycle = find_outer_cycle(instance.graph()).unwrap();
    solve_outerplanar_2conn(instance, &cycle).unwrap()
}

fn with_costs(rng: &mut ChaCha8Rng, g: Graph) -> Graph {
    let costs = (0..g.m())
        .map(|_| Cost::new(rng.gen_range(0..9), rng.gen_range(1..3)))
        .collect();
    g.set_costs(costs).unwrap()
}

#[test]
fn c4_with_one_precedence() {
    let c4 = inst(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[(2, 0)]);
    let p = solve_2conn(&c4).unwrap();
    assert_eq!(p.cost, Cost::from_integer(3));
    assert_eq!(Some(p), solve_bruteforce(&c4, DEFAULT_CAP).unwrap());
}

#[test]
fn c5_total_order() {
    let c5 = inst(
        5,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
        &[(0, 1), (1, 2), (2, 3), (3, 4)],
    );
    let p = solve_2conn(&c5).unwrap();
    assert_eq!(
        (p.sequence, p.cost),
        (vec![0, 1, 2, 3, 4], Cost::from_integer(4))
    );
}

#[test]
fn fan_matches_oracle() {
    let fan = inst(5, &fan_edges(), &[(4, 0), (4, 3)]);
    assert_eq!(
        solve_2conn(&fan),
        solve_bruteforce(&fan, DEFAULT_CAP).unwrap()
    );
    assert!(solve_2conn(&fan).is_some());
}

#[test]
fn bowtie_examples() {
    let free = inst(5, &bowtie_edges(), &[]);
    let p = solve_outerplanar(&free).unwrap().unwrap();
    assert_eq!(p.cost, Cost::from_integer(4));
    assert_eq!(Some(p), solve_bruteforce(&free, DEFAULT_CAP).unwrap());

    // Vertex 3 lies in the second triangle, vertex 0 in the first.
    let back = inst(5, &bowtie_edges(), &[(3, 0)]);
    let path = block_path(back.graph()).unwrap();
    assert!(!path.compatible(back.order(), Direction::Forward));
    assert!(path.compatible(back.order(), Direction::Backward));
    let p = solve_outerplanar(&back).unwrap();
    assert_eq!(p, solve_bruteforce(&back, DEFAULT_CAP).unwrap());
    assert_eq!(p.unwrap().sequence[0], 3);
}

#[test]
fn single_edge_and_vertex() {
    let g = Graph::with_costs(2, &[(0, 1, Cost::new(7, 2))]).unwrap();
    let e = Instance::new(g, PartialOrder::trivial(2)).unwrap();
    let p = solve_outerplanar(&e).unwrap().unwrap();
    assert_eq!((p.sequence, p.cost), (vec![0, 1], Cost::new(7, 2)));
    let v = inst(1, &[], &[]);
    assert_eq!(solve_outerplanar(&v).unwrap().unwrap().sequence, vec![0]);
}

#[test]
fn star_of_triangles_is_infeasible() {
    let edges = [
        (0, 1),
        (0, 2),
        (1, 2),
        (0, 3),
        (0, 4),
        (3, 4),
        (0, 5),
        (0, 6),
        (5, 6),
    ];
    let star = inst(7, &edges, &[]);
    assert_eq!(
        block_path(star.graph()),
        Err(OuterplanarError::BlockTreeNotPath)
    );
    assert_eq!(solve_outerplanar(&star).unwrap(), None);
    assert_eq!(solve_bruteforce(&star, DEFAULT_CAP).unwrap(), None);
}

#[test]
fn non_outerplanar_is_rejected() {
    let k4 = inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], &[]);
    assert_eq!(
        solve_outerplanar(&k4),
        Err(OuterplanarError::NotOuterplanar)
    );
}

#[test]
fn interval_bounds() {
    let cycle = OuterCycle::from_order(vec![0, 1, 2, 3, 4]);
    let order = build_order(5, &[(3, 1), (0, 1), (4, 2)]).unwrap();
    let b = IntervalBounds::new(&order, &cycle);
    assert_eq!((b.f(1), b.l(1)), (3, 0));
    assert_eq!((b.f(2), b.l(2)), (4, 4));
    assert_eq!((b.f(0), b.l(0)), (0, 0));
}

#[test]
fn two_connected_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..400 {
        let n = rng.gen_range(2..=9);
        let delete = rng.gen_range(0.0..0.8);
        let g = outerplanar_2conn(&mut rng, n, delete);
        let g = if rng.gen_bool(0.5) {
            with_costs(&mut rng, g)
        } else {
            g
        };
        let density = rng.gen_range(0.0..0.5);
        let order = random_order(&mut rng, n, density);
        let instance = Instance::new(g, order).unwrap();
        let cycle = find_outer_cycle(instance.graph()).unwrap();
        let table = OuterTable::fill(&instance, &cycle).unwrap();
        // Paths ending at the arc's last vertex never beat the start-ended
        // optimum.
        assert_eq!(table.optimum(), table.optimum_any_end(), "case {case}");
        let got = solve_outerplanar_2conn(&instance, &cycle).unwrap();
        assert_eq!(
            got,
            solve_bruteforce(&instance, DEFAULT_CAP).unwrap(),
            "case {case}"
        );
        assert_eq!(solve_outerplanar(&instance).unwrap(), got, "case {case}");
    }
}

#[test]
fn block_chains_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..300 {
        let blocks = rng.gen_range(2..=4);
        let sizes: Vec<usize> = (0..blocks).map(|_| rng.gen_range(2..=4)).collect();
        let g = block_chain(&mut rng, &sizes, 0.3);
        let g = if rng.gen_bool(0.5) {
            with_costs(&mut rng, g)
        } else {
            g
        };
        let n = g.n();
        let density = rng.gen_range(0.0..0.3);
        let order = random_order(&mut rng, n, density);
        let instance = Instance::new(g, order).unwrap();
        assert_eq!(
            solve_outerplanar(&instance).unwrap(),
            solve_bruteforce(&instance, DEFAULT_CAP).unwrap(),
            "case {case}"
        );
    }
}

#[test]
fn prefixes_are_contiguous_arcs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(3..=30);
        let g = outerplanar_2conn(&mut rng, n, 0.3);
        let order = random_order(&mut rng, n, 0.05);
        let instance = Instance::new(g, order).unwrap();
        let cycle = find_outer_cycle(instance.graph()).unwrap();
        let Some(p) = solve_outerplanar_2conn(&instance, &cycle).unwrap() else {
            continue;
        };
        let mut member = vec![false; n];
        for &v in &p.sequence {
            member[v] = true;
            assert!(cycle.is_arc(&member));
        }
    }
}

#[test]
fn witnesses_satisfy_entry_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let n = rng.gen_range(4..=25);
        let g = outerplanar_2conn(&mut rng, n, 0.3);
        let g = with_costs(&mut rng, g);
        let order = random_order(&mut rng, n, 0.1);
        let instance = Instance::new(g, order).unwrap();
        let cycle = find_outer_cycle(instance.graph()).unwrap();
        let table = OuterTable::fill(&instance, &cycle).unwrap();
        let mut checked = 0;
        while checked < 100 {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let end = if rng.gen_bool(0.5) {
                End::Start
            } else {
                End::Finish
            };
            let Some(seq) = table.witness(a, b, end) else {
                continue;
            };
            checked += 1;
            // The witness visits exactly the arc [a, b].
            let len = cycle.sub(b, a) + 1;
            let mut arc: Vec<usize> = (0..len).map(|d| cycle.vertex(cycle.add(a, d))).collect();
            let mut seen = seq.clone();
            arc.sort_unstable();
            seen.sort_unstable();
            assert_eq!(seen, arc);
            // It ends at the chosen endpoint.
            let last = match end {
                End::Start => cycle.vertex(a),
                End::Finish => cycle.vertex(b),
            };
            assert_eq!(*seq.last().unwrap(), last);
            // It is an edge walk whose cost is the table entry, and every
            // vertex's predecessors come earlier.
            let mut total = Cost::from_integer(0);
            for w in seq.windows(2) {
                total += instance.graph().cost(w[0], w[1]).expect("edge");
            }
            assert_eq!(Some(total), table.cost(a, b, end));
            for (i, &v) in seq.iter().enumerate() {
                for &u in instance.order().predecessors(v) {
                    assert!(seq[..i].contains(&u));
                }
            }
        }
    }
}
