//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tcw_core::certificates::{bramble_orders, bramble_to_tangle, verify_bramble, verify_tangle, Bramble, Slab};
use tcw_core::decomposition::{adhesion_of_tree_edge, measure_widths};
use tcw_core::game::{
    cop_strategy_from_decomposition, play, robber_strategy_from_bramble, Arena, GameConfig, RandomCops, RandomRobber,
    Winner,
};
use tcw_core::graph::named::{binary_tree_15, complete};
use tcw_core::graph::{is_cactus, quotient, three_ecc, MultiGraph};
use tcw_core::solver::{
    ab_tcw, ab_width_frontier, duality_sweep, exists_by_enumeration, exists_decomposition, synthesize_bramble, wollan_tcw,
    DualityRecord, SolverBudget,
};
use tcw_core::sweep::{connected_multigraphs, random_connected_multigraph, random_decomposition, random_multigraph};
use tcw_core::tcc::{component_torso, glue};
use tcw_core::TreeCutDecomposition;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

struct Context {
    graphs: Vec<MultiGraph>,
    sweep: Vec<DualityRecord>,
    sweep_time: Duration,
    budget: SolverBudget,
}

fn binary_tree_widths() -> Verdict {
    let g = binary_tree_15();
    let mut bags = vec![vec![0]];
    bags.extend((1..15).map(|v| vec![v]));
    let d = TreeCutDecomposition::new(bags, (1..15).map(|t| (0, t)).collect());
    let start = Instant::now();
    let r = measure_widths(&g, &d).unwrap();
    let elapsed = start.elapsed();
    verdict(
        r.wollan == 3 && r.gprtw == 7 && elapsed < Duration::from_secs(1),
        format!("wollan={} gprtw={} in {elapsed:?}", r.wollan, r.gprtw),
    )
}

fn width_bounds() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut violations = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=14);
        let g = random_multigraph(&mut rng, n, m);
        let d = random_decomposition(&mut rng, &g, 8);
        let r = measure_widths(&g, &d).unwrap();
        let ok = r.adhesion_width <= r.gprtw * r.gprtw
            && r.bag_width <= r.gprtw
            && r.gprtw <= r.adhesion_width + r.bag_width + 2;
        violations += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    verdict(violations == 0 && elapsed < Duration::from_secs(30), format!("300 pairs, {violations} violations in {elapsed:?}"))
}

fn wollan_vs_ab(ctx: &Context) -> Verdict {
    let start = Instant::now();
    let mut violations = 0;
    let mut mismatched = 0;
    for g in &ctx.graphs {
        let k = wollan_tcw(g, &ctx.budget).unwrap();
        // least k >= 1 with adhesion-width <= k and bag-width <= k
        let l = ab_width_frontier(g, &ctx.budget).unwrap().iter().map(|&(x, y)| x.max(y)).min().unwrap().max(1);
        // k/2 - 1 <= l  <=>  k <= 2l + 2
        if !(k <= 2 * l + 2 && l <= k * k) {
            violations += 1;
        }
        if l != ab_tcw(g, &ctx.budget).unwrap() {
            mismatched += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        violations == 0 && mismatched == 0 && elapsed < Duration::from_secs(600),
        format!(
            "{} graphs, {violations} violations, {mismatched} differences from the search value in {elapsed:?}",
            ctx.graphs.len()
        ),
    )
}

fn duality(ctx: &Context) -> Verdict {
    let bad = |r: &&DualityRecord| !r.agree || !r.witnesses_ok || r.error.is_some();
    let mismatches = ctx.sweep.iter().filter(bad).count();
    let by_a: Vec<String> = (1..=4)
        .map(|a| format!("a={a}: {}", ctx.sweep.iter().filter(|r| r.a == a).filter(bad).count()))
        .collect();
    let high = ctx.sweep.iter().filter(|r| r.a >= 3).filter(bad).count();
    verdict(
        mismatches == 0 && ctx.sweep_time < Duration::from_secs(900),
        format!(
            "{} checks, {mismatches} mismatches ({}; a>=3: {high}) in {:?}",
            ctx.sweep.len(),
            by_a.join(", "),
            ctx.sweep_time
        ),
    )
}

fn constructions(ctx: &Context) -> Verdict {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in ctx.sweep.iter().filter(|r| r.decomposition.is_none() && r.error.is_none()) {
        let g = &ctx.graphs[r.graph];
        if g.vertex_count() > 4 {
            continue;
        }
        cases += 1;
        let result = synthesize_bramble(g, r.a, r.b, &ctx.budget).map_err(|e| e.to_string()).and_then(|br| {
            verify_bramble(g, &br).map_err(|v| format!("{v:?}"))?;
            let orders = bramble_orders(g, &br, r.a);
            if !(orders.adhesion.at_least(r.a) && orders.bag >= r.b) {
                return Err(format!("orders {orders:?}"));
            }
            let t = bramble_to_tangle(g, &br, r.a, r.b).map_err(|e| e.to_string())?;
            verify_tangle(g, &t).map_err(|v| format!("{v:?}"))
        });
        if let Err(e) = result {
            failures.push((r.graph, r.a, r.b, e));
        }
    }
    let detail = match failures.first() {
        None => format!("{cases} cases, 0 failures"),
        Some((i, a, b, e)) => format!("{cases} cases, {} failures; first: graph {i} a={a} b={b}: {e}", failures.len()),
    };
    verdict(failures.is_empty(), detail)
}

fn cactus() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let start = Instant::now();
    let mut failures = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(0..=20);
        let g = random_multigraph(&mut rng, n, m);
        let partition = three_ecc(&g);
        let q = quotient(&g, &partition).unwrap();
        let torsos_ok = partition.blocks().iter().all(|block| {
            let torso = component_torso(&g, block).unwrap();
            three_ecc(&torso.graph).block_count() == 1
        });
        failures += usize::from(!(is_cactus(&q.graph) && torsos_ok));
    }
    let elapsed = start.elapsed();
    verdict(failures == 0 && elapsed < Duration::from_secs(30), format!("500 graphs, {failures} failures in {elapsed:?}"))
}

/// Small dense pieces joined by one or two edges at a time.
fn glue_instance(rng: &mut ChaCha8Rng) -> MultiGraph {
    let pieces = rng.gen_range(1..=3);
    let mut edges = Vec::new();
    let mut offsets = Vec::new();
    let mut n = 0;
    for _ in 0..pieces {
        let size = rng.gen_range(1..=4);
        let extra = rng.gen_range(0..=5);
        let piece = random_connected_multigraph(rng, size, extra);
        edges.extend(piece.edges().iter().map(|&(u, v)| (u + n, v + n)));
        offsets.push((n, size));
        n += size;
    }
    for i in 1..pieces {
        let (base, size) = offsets[i];
        let (other, other_size) = offsets[rng.gen_range(0..i)];
        for _ in 0..rng.gen_range(1..=2) {
            edges.push((base + rng.gen_range(0..size), other + rng.gen_range(0..other_size)));
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

fn gluing(ctx: &Context) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut instances = 0;
    while instances < 200 {
        let g = glue_instance(&mut rng);
        let partition = three_ecc(&g);
        let torsos: Vec<_> = partition.blocks().iter().map(|b| component_torso(&g, b).unwrap()).collect();
        if torsos.iter().any(|t| t.graph.vertex_count() > ctx.budget.max_enumeration_vertices) {
            continue;
        }
        instances += 1;
        let mut a = 0;
        let mut b = 0;
        for t in &torsos {
            let frontier = ab_width_frontier(&t.graph, &ctx.budget).unwrap();
            let (x, y) = frontier[rng.gen_range(0..frontier.len())];
            a = a.max(x);
            b = b.max(y);
        }
        let mut parts = BTreeMap::new();
        for (block, t) in partition.blocks().iter().zip(&torsos) {
            let d = exists_by_enumeration(&t.graph, a + 1, b + 1, &ctx.budget).unwrap().expect("frontier pair");
            parts.insert(block.clone(), d);
        }
        let check = || -> Result<(), String> {
            let (d, report) = glue(&g, &parts).map_err(|e| e.to_string())?;
            if !d.is_valid(&g) {
                return Err("glued decomposition is invalid".into());
            }
            let widths = measure_widths(&g, &d).map_err(|e| e.to_string())?;
            if widths.adhesion_width > a || widths.bag_width > b {
                return Err(format!("widths {widths:?} exceed ({a}, {b})"));
            }
            for gamma in &report.gamma {
                let ends = d.tree_edges()[gamma.tree_edge];
                let adhesion = adhesion_of_tree_edge(&g, &d, ends).map_err(|e| e.to_string())?;
                let mut allowed = vec![report.alpha[gamma.quotient_edge]];
                allowed.extend(gamma.cycle_partner.map(|p| report.alpha[p]));
                if adhesion.len() > 2 || !adhesion.iter().all(|e| allowed.contains(e)) {
                    return Err(format!("tree edge {} has adhesion {adhesion:?}, allowed {allowed:?}", gamma.tree_edge));
                }
            }
            Ok(())
        };
        if let Err(e) = check() {
            failures.push(e);
        }
    }
    verdict(
        failures.is_empty(),
        format!("{instances} instances, {} failures{}", failures.len(), failures.first().map_or(String::new(), |e| format!("; first: {e}"))),
    )
}

fn game() -> Verdict {
    let start = Instant::now();
    let g = complete(4);
    let d = TreeCutDecomposition::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1)]);
    let whole = Bramble { slabs: vec![Slab::new(vec![0, 1, 2, 3], (0..6).collect(), vec![0, 1, 2, 3])] };
    let mut problems = Vec::new();

    let strong = Arena::new(&g, GameConfig::new(3, 3));
    let caught_within_two = |t: &tcw_core::game::Transcript| t.winner == Winner::Cops && t.round_count() <= 2;
    let mut cops = cop_strategy_from_decomposition(&g, &d).unwrap();
    let mut robber = robber_strategy_from_bramble(&g, &whole).unwrap().with_fallback();
    if !caught_within_two(&play(&strong, &mut cops, &mut robber).unwrap()) {
        problems.push("bramble robber escaped 3 cops".to_string());
    }
    let escaped = (0..1000)
        .filter(|&seed| {
            let mut cops = cop_strategy_from_decomposition(&g, &d).unwrap();
            !caught_within_two(&play(&strong, &mut cops, &mut RandomRobber::new(seed)).unwrap())
        })
        .count();
    if escaped > 0 {
        problems.push(format!("{escaped} random robbers escaped 3 cops"));
    }

    let weak = Arena::new(&g, GameConfig::new(2, 2));
    let survives = |t: &tcw_core::game::Transcript| t.winner == Winner::Robber && t.round_count() == 100;
    let mut cops = cop_strategy_from_decomposition(&g, &d).unwrap();
    let mut robber = robber_strategy_from_bramble(&g, &whole).unwrap();
    if !play(&weak, &mut cops, &mut robber).is_ok_and(|t| survives(&t)) {
        problems.push("bramble robber caught by 2 decomposition cops".to_string());
    }
    let caught = (0..1000)
        .filter(|&seed| {
            let mut robber = robber_strategy_from_bramble(&g, &whole).unwrap();
            !play(&weak, &mut RandomCops::new(seed), &mut robber).is_ok_and(|t| survives(&t))
        })
        .count();
    if caught > 0 {
        problems.push(format!("bramble robber caught by {caught} random cop sequences"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut trees_missed = 0;
    for seed in 0..100 {
        let n = rng.gen_range(1..=15);
        let tree = random_connected_multigraph(&mut rng, n, 0);
        let arena = Arena::new(&tree, GameConfig::new(0, 1));
        let mut cops = cop_strategy_from_decomposition(&tree, &TreeCutDecomposition::identity(&tree)).unwrap();
        let t = play(&arena, &mut cops, &mut RandomRobber::new(seed)).unwrap();
        trees_missed += usize::from(!(t.winner == Winner::Cops && t.round_count() == 0));
    }
    if trees_missed > 0 {
        problems.push(format!("{trees_missed} trees not caught at round 0"));
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < Duration::from_secs(60);
    let detail = if problems.is_empty() { format!("all games as expected in {elapsed:?}") } else { problems.join("; ") };
    verdict(pass, detail)
}

fn oracle(ctx: &Context) -> Verdict {
    let mut checks = 0;
    let mut disagreements = 0;
    for g in &ctx.graphs {
        for a in 1..=4 {
            for b in 1..=4 {
                checks += 1;
                let by_search = exists_decomposition(g, a, b, &ctx.budget).unwrap().is_some();
                let by_enumeration = exists_by_enumeration(g, a, b, &ctx.budget).unwrap().is_some();
                disagreements += usize::from(by_search != by_enumeration);
            }
        }
    }
    verdict(disagreements == 0, format!("{checks} checks, {disagreements} disagreements"))
}

fn main() {
    let budget = SolverBudget::default();
    let graphs = connected_multigraphs(5, 7);
    let start = Instant::now();
    let sweep = duality_sweep(&graphs, 4, 4, &budget);
    let ctx = Context { graphs, sweep, sweep_time: start.elapsed(), budget };

    let criteria: [(&str, Box<dyn Fn() -> Verdict + '_>); 9] = [
        ("binary tree star widths", Box::new(binary_tree_widths)),
        ("width bounds on random pairs", Box::new(width_bounds)),
        ("wollan versus ab width", Box::new(|| wollan_vs_ab(&ctx))),
        ("tangle/decomposition duality", Box::new(|| duality(&ctx))),
        ("bramble and tangle constructions", Box::new(|| constructions(&ctx))),
        ("cactus quotient and torsos", Box::new(cactus)),
        ("gluing", Box::new(|| gluing(&ctx))),
        ("game strategies", Box::new(game)),
        ("search versus enumeration", Box::new(|| oracle(&ctx))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failed += usize::from(!v.pass);
        println!("criterion {}: {} - {name}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
