//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line each and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;
use stallings::fi::{self, commensurator, commensurator_with_report, enumerate_fi_extensions};
use stallings::malnormal::{self, fiber_square, malnormal_closure};
use stallings::random::{self, hypercube_graph, random_reduced_word, rng};
use stallings::{Basis, StallingsGraph};

use common::*;

struct Outcome {
    pass: bool,
    /// Whether a failure fails the run. Report-only checks print their
    /// verdict without setting the exit status.
    gating: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        gating: true,
        detail: detail.into(),
    }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (
        t < limit,
        format!("{:.3}s of {:.0}s", t.as_secs_f64(), limit.as_secs_f64()),
    )
}

/// Corpus for the lattice checks: whole graph small enough for exhaustive
/// partitions, core at most 8 vertices.
fn lattice_corpus() -> Vec<StallingsGraph> {
    fuzz_corpus(1_000, 100, 2, |h| {
        h.vertex_count() <= 9 && h.decompose().core_size() <= 8
    })
}

fn golden_commensurator() -> Outcome {
    let start = Instant::now();
    let h = sub(2, &["aa"]);
    let c = commensurator(&h);
    let ok = c == sub(2, &["a"]) && h.is_fi_extension(&c) == Some(2);
    let (fast, t) = within(Duration::from_secs(1), start);
    outcome(
        ok && fast,
        format!("H_fi(<a^2>) = <a>, index {:?}, {t}", h.is_fi_extension(&c)),
    )
}

fn hypercube_counts() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, want, bound) in [(2usize, 5usize, 8u32), (3, 16, 64)] {
        let n = enumerate_fi_extensions(&hypercube_graph(k).unwrap())
            .unwrap()
            .len();
        let exact = fi::subspace_count(k).unwrap();
        let rec = fi::fi_extension_bound(1 << k).unwrap().recurrence;
        ok &= n == want
            && exact.total == BigUint::from(n)
            && exact.exceeds_lower_bound()
            && rec == BigUint::from(bound)
            && BigUint::from(n) <= rec;
        parts.push(format!(
            "k={k}: {n} extensions, subspaces {}, bound {rec}",
            exact.total
        ));
    }
    let (fast, t) = within(Duration::from_secs(10), start);
    outcome(ok && fast, format!("{}; {t}", parts.join("; ")))
}

fn brute_force_lattice(
    corpus: &[StallingsGraph],
) -> (Outcome, Vec<(StallingsGraph, Vec<StallingsGraph>)>) {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut nontrivial = 0;
    let mut lattices = Vec::new();
    for h in corpus {
        let quotients = all_quotients(h);
        let oracle: BTreeSet<String> = quotients
            .iter()
            .filter(|q| h.is_fi_extension(q).is_some())
            .map(|q| q.canonical_form())
            .collect();
        let lattice = enumerate_fi_extensions(h).unwrap();
        let got: BTreeSet<String> = lattice.members.iter().map(|m| m.key.clone()).collect();
        if got != oracle || got.len() != lattice.len() {
            mismatches += 1;
        }
        if got.len() > 1 {
            nontrivial += 1;
        }
        lattices.push((h.clone(), quotients));
    }
    let (fast, t) = within(Duration::from_secs(300), start);
    let o = outcome(
        mismatches == 0 && fast,
        format!(
            "{} subgroups ({nontrivial} with proper extensions), {mismatches} mismatches, {t}",
            corpus.len()
        ),
    );
    (o, lattices)
}

fn commensurator_definition() -> Outcome {
    let corpus = fuzz_corpus(2_000, 50, 2, |h| h.decompose().core_size() <= 12);
    let mut r = rng(4);
    let (mut mismatches, mut inside, mut total) = (0, 0, 0);
    for h in &corpus {
        let c = commensurator(h);
        let b = h.basis();
        let mut words = Vec::new();
        while words.len() < 100 {
            let len = r.gen_range(0..=6);
            words.push(random_reduced_word(&mut r, b, len));
        }
        while words.len() < 200 {
            let w = random_loop(&mut r, &c, 4);
            if w.len() <= 6 {
                words.push(w);
            }
        }
        for g in &words {
            let hg = h.conjugate(g);
            let meet = h.intersect(&hg);
            let comm = meet.is_fi_extension(h).is_some() && meet.is_fi_extension(&hg).is_some();
            let member = c.contains(g);
            mismatches += usize::from(comm != member);
            inside += usize::from(member);
            total += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!(
            "{total} words over {} subgroups, {inside} in H_fi, {mismatches} mismatches",
            corpus.len()
        ),
    )
}

fn cross_characterization() -> Outcome {
    let corpus = fuzz_corpus(3_000, 100, 2, |h| h.vertex_count() <= 40);
    let (mut pairs, mut mismatches, mut equivalent) = (0, 0, 0);
    for h in &corpus {
        let core = h.decompose().core_vertices;
        for (i, &p) in core.iter().enumerate() {
            for &q in &core[i + 1..] {
                let a = fi::is_identification_fi(h, p, q).unwrap();
                let b = fi::sim_by_product_covers(h, p, q).unwrap();
                pairs += 1;
                mismatches += usize::from(a != b);
                equivalent += usize::from(a);
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{pairs} core pairs ({equivalent} equivalent), {mismatches} mismatches"),
    )
}

fn no_reduction(extra: &[StallingsGraph]) -> Outcome {
    let mut graphs: Vec<StallingsGraph> = fuzz_corpus(4_000, 300, 2, |_| true);
    graphs.extend(fuzz_corpus(5_000, 100, 3, |_| true));
    graphs.extend(extra.iter().cloned());
    for seed in 0..20 {
        let g = random::random_graph(Basis::new(2).unwrap(), 2_000, 0.9, seed);
        graphs.push(random::random_cover(&g, 3, seed));
    }
    let conflicts: usize = graphs
        .iter()
        .map(|h| commensurator_with_report(h).fold_conflicts)
        .sum();
    outcome(
        conflicts == 0,
        format!("{} quotients, {conflicts} fold conflicts", graphs.len()),
    )
}

fn join_closure_and_convexity(lattices: &[(StallingsGraph, Vec<StallingsGraph>)]) -> Outcome {
    let (mut joins, mut bad_joins, mut between, mut bad_between, mut bad_order) = (0, 0, 0, 0, 0);
    for (h, quotients) in lattices {
        let l = enumerate_fi_extensions(h).unwrap();
        let m = l.len();
        for i in 0..m {
            for j in 0..m {
                let (gi, gj) = (&l.members[i].graph, &l.members[j].graph);
                if i < j {
                    joins += 1;
                    bad_joins += usize::from(!l.contains(&gi.join(gj)));
                }
                let hom = i == j || gi.homomorphism(gj).is_some();
                bad_order += usize::from(hom != l.leq(i, j));
                if i != j && hom != l.members[i].partition.refines(&l.members[j].partition) {
                    bad_order += 1;
                }
            }
        }
        // every quotient of h lies above H = member 0, so one below some
        // member is squeezed between two members and must be a member
        for k in quotients {
            if l.members.iter().any(|g| k.homomorphism(&g.graph).is_some()) {
                between += 1;
                bad_between += usize::from(!l.contains(k));
            }
        }
    }
    outcome(
        bad_joins == 0 && bad_between == 0 && bad_order == 0,
        format!(
            "{joins} joins ({bad_joins} outside), {between} sandwiched quotients ({bad_between} outside), {bad_order} order disagreements"
        ),
    )
}

/// Malnormality decided on the full ordered fiber square.
fn malnormal_by_square(g: &StallingsGraph) -> bool {
    fiber_square(&g.core_automaton())
        .cyclic_off_diagonal_pairs()
        .is_empty()
}

fn malnormal_closure_oracle() -> Outcome {
    let golden = malnormal_closure(&sub(2, &["aa"])) == (sub(2, &["a"]), 1);
    let corpus = fuzz_corpus(6_000, 100, 2, |h| h.vertex_count() <= 8);
    let mut mismatches = 0;
    for h in &corpus {
        let candidates: Vec<StallingsGraph> = all_quotients(h)
            .into_iter()
            .filter(malnormal_by_square)
            .collect();
        let least: Vec<&StallingsGraph> = candidates
            .iter()
            .filter(|k| candidates.iter().all(|o| k.homomorphism(o).is_some()))
            .collect();
        let (closure, rounds) = malnormal_closure(h);
        let ok = least.len() == 1
            && *least[0] == closure
            && rounds < h.vertex_count().max(1)
            && closure.subgroup_rank() <= h.subgroup_rank();
        mismatches += usize::from(!ok);
    }
    let mut implication = 0;
    let mut exceptions = 0;
    for h in fuzz_corpus(7_000, 300, 2, |_| true).iter().chain(&corpus) {
        if malnormal::is_malnormal(h) {
            implication += 1;
            exceptions += usize::from(commensurator(h).canonical_form() != h.canonical_form());
        }
    }
    outcome(
        golden && mismatches == 0 && exceptions == 0,
        format!(
            "golden {golden}, {} closures vs oracle with {mismatches} mismatches, {implication} malnormal subgroups with {exceptions} not fi-maximal",
            corpus.len()
        ),
    )
}

fn index_r() -> Outcome {
    let b = Basis::new(2).unwrap();
    let random = fuzz_corpus(8_000, 1, 2, |h| h.vertex_count() >= 4).remove(0);
    let subjects = [StallingsGraph::whole_group(b), sub(2, &["a"]), random];
    let mut bad = Vec::new();
    for h in &subjects {
        for r in [1, 2, 3, 5] {
            let got = h.index_r_subgroup(r).unwrap().is_fi_extension(h);
            if got != Some(r) {
                bad.push(format!("{got:?} for r={r}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("12 constructions, wrong: [{}]", bad.join(", ")),
    )
}

fn language_validator() -> Outcome {
    let mut r = rng(10);
    let mut failures = 0;
    for _ in 0..100 {
        let rank = r.gen_range(1..=3);
        let b = Basis::new(rank).unwrap();
        let gens: Vec<_> = (0..r.gen_range(1..=3))
            .map(|_| {
                let len = r.gen_range(1..=6);
                random_reduced_word(&mut r, b, len)
            })
            .collect();
        let h = StallingsGraph::build(b, &gens);
        if h.is_trivial() {
            continue;
        }
        failures += usize::from(!fi::validate_extension_language(&h).unwrap().passed());
    }
    let b = Basis::new(2).unwrap();
    let a = stallings::Letter::positive(0);
    let broken = StallingsGraph::from_edges(b, 2, 0, &[(0, a, 1)]).unwrap();
    let report = fi::validate_extension_language(&broken).unwrap();
    let caught = !report.automaton();
    outcome(
        failures == 0 && caught,
        format!("{failures} of 100 built graphs failed, violation caught: {caught}"),
    )
}

/// Fastest of `reps` runs.
fn time_commensurator(g: &StallingsGraph, reps: usize) -> f64 {
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(commensurator(g));
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn scaling() -> Outcome {
    let b = Basis::new(2).unwrap();
    let small = random::random_graph(b, 100_000, 0.9, 11);
    let large = random::random_graph(b, 1_000_000, 0.9, 11);
    let (t1, t2) = (time_commensurator(&small, 5), time_commensurator(&large, 3));
    let (n1, n2) = (small.vertex_count() as f64, large.vertex_count() as f64);
    let slope = (t2 / t1).ln() / (n2 / n1).ln();
    drop(large);

    let start = Instant::now();
    let m = random::random_graph(b, 10_000, 0.9, 12);
    let (closure, rounds) = malnormal_closure(&m);
    let (fast, t) = within(Duration::from_secs(600), start);
    // a report: the slope verdict is printed, completion is what gates
    let mut o = outcome(
        slope <= 1.3 && fast,
        format!(
            "commensurator {n1} vertices {t1:.3}s, {n2} vertices {t2:.3}s, slope {slope:.2} (limit 1.3); malnormal closure of {} vertices in {rounds} rounds to {} vertices, {t}",
            m.vertex_count(),
            closure.vertex_count()
        ),
    );
    o.gating = !fast;
    o
}

fn main() {
    let corpus = lattice_corpus();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 golden commensurator", golden_commensurator()));
    results.push(("2 hypercube counts", hypercube_counts()));
    let (lattice_outcome, lattices) = brute_force_lattice(&corpus);
    results.push(("3 brute-force lattice", lattice_outcome));
    results.push(("4 commensurator definition", commensurator_definition()));
    results.push(("5 cross-characterization", cross_characterization()));
    results.push(("6 no reduction", no_reduction(&corpus)));
    results.push((
        "7 joins and convexity",
        join_closure_and_convexity(&lattices),
    ));
    results.push(("8 malnormal closure", malnormal_closure_oracle()));
    results.push(("9 index-r construction", index_r()));
    results.push(("10 language validator", language_validator()));
    results.push(("11 scaling report", scaling()));

    let mut failed = 0;
    let mut gating = 0;
    for (name, o) in &results {
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
        gating += usize::from(!o.pass && o.gating);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if gating > 0 {
        std::process::exit(1);
    }
}
