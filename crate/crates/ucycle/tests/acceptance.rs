//! End-to-end acceptance suite. Each test covers one criterion and prints
//! a single pass line (visible with `--nocapture`); failures panic with
//! the offending detail.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use ucycle::classes::{ClassName, ClassSpec};
use ucycle::connect::{connect_inequitable, connect_onto, validate_trace};
use ucycle::graph::{verify_ucycle, TransitionGraph, VerdictReason};
use ucycle::word::Word;

fn spec(class: ClassName, k: usize, n: u8) -> ClassSpec {
    ClassSpec::new(class, k, n).unwrap()
}

fn w(text: &str, n: u8) -> Word {
    Word::parse(text, n).unwrap()
}

fn check_budget(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(elapsed < budget, "{name} took {elapsed:?}, budget {budget:?}");
    println!("criterion {name}: PASS ({elapsed:?})");
}

/// Brute-force binomial, independent of the library's arithmetic.
fn binomial_oracle(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; n + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=n).rev() {
            row[j] += row[j - 1];
        }
    }
    row[k]
}

/// Inclusion-exclusion onto count, recomputed locally as the oracle.
fn onto_oracle(k: usize, n: usize) -> i128 {
    let mut acc: i128 = 0;
    for i in 0..=n {
        let term = binomial_oracle(n, i) as i128 * ((n - i) as i128).pow(k as u32);
        acc += if i % 2 == 0 { term } else { -term };
    }
    acc
}

#[test]
fn criterion_1_de_bruijn_baseline() {
    let started = Instant::now();
    let s = spec(ClassName::AllWords, 3, 2);
    let g = TransitionGraph::build(&s).unwrap();
    let cycle = g.eulerian_circuit().unwrap();
    assert_eq!(cycle.len(), 8);
    assert!(verify_ucycle(&s, cycle.word()).unwrap().ok);
    assert!(verify_ucycle(&s, &w("11100010", 2)).unwrap().ok);
    check_budget("1 (de Bruijn baseline)", started, Duration::from_millis(100));
}

#[test]
fn criterion_2_onto_existence_dichotomy() {
    let started = Instant::now();
    for n in 2u8..=6 {
        for k in (n as usize + 1)..=7 {
            let s = spec(ClassName::Onto, k, n);
            let g = TransitionGraph::build(&s).unwrap();
            let cycle = g.eulerian_circuit().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(BigUint::from(cycle.len()), s.cardinality(), "{s}");
            assert_eq!(cycle.len() as i128, onto_oracle(k, n as usize), "{s}");
            assert!(verify_ucycle(&s, cycle.word()).unwrap().ok, "{s}");
        }
    }
    assert_eq!(onto_oracle(4, 3), 36);
    for n in [3u8, 4, 5] {
        let s = spec(ClassName::Onto, n as usize, n);
        let verdict = TransitionGraph::build(&s).unwrap().existence();
        assert!(!verdict.exists, "{s}");
        assert_eq!(verdict.reason, VerdictReason::Disconnected, "{s}");
    }
    check_budget("2 (onto existence)", started, Duration::from_secs(30));
}

#[test]
fn criterion_3_injective_dichotomy() {
    let started = Instant::now();
    for (k, n) in [(2usize, 3u8), (2, 4), (3, 4), (3, 5)] {
        let s = spec(ClassName::Injective, k, n);
        let g = TransitionGraph::build(&s).unwrap();
        let cycle = g.eulerian_circuit().unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(verify_ucycle(&s, cycle.word()).unwrap().ok, "{s}");
    }

    let s = spec(ClassName::Injective, 3, 3);
    let g = TransitionGraph::build(&s).unwrap();
    let d = g.decompose_cycles().unwrap();
    assert_eq!(d.total_cycles, 2);
    // compare vertex cycles against the two published 3-cycles
    let mut vertex_cycles: Vec<Vec<String>> = d
        .cycles
        .iter()
        .map(|edges| {
            let mut v: Vec<String> =
                edges.iter().map(|e| e.prefix(2).to_string()).collect();
            v.sort();
            v
        })
        .collect();
    vertex_cycles.sort();
    assert_eq!(
        vertex_cycles,
        vec![
            vec!["12".to_string(), "23".to_string(), "31".to_string()],
            vec!["13".to_string(), "21".to_string(), "32".to_string()],
        ]
    );
    check_budget("3 (injective dichotomy)", started, Duration::from_secs(5));
}

#[test]
fn criterion_4_one_inequitable_existence() {
    let started = Instant::now();
    let expected_lengths = [(3usize, 6usize), (5, 20), (7, 70), (9, 252), (11, 924)];
    for (k, expected) in expected_lengths {
        // derived oracle: 2*C(k, floor(k/2)), cross-checked by enumeration
        assert_eq!(2 * binomial_oracle(k, k / 2), expected as u64, "k={k}");
        let s = spec(ClassName::OneInequitable, k, 2);
        assert_eq!(s.enumerate().unwrap().len(), expected, "k={k}");

        let g = TransitionGraph::build(&s).unwrap();
        let cycle = g.eulerian_circuit().unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(cycle.len(), expected, "{s}");
        assert!(verify_ucycle(&s, cycle.word()).unwrap().ok, "{s}");
    }
    check_budget("4 (one-inequitable existence)", started, Duration::from_secs(30));
}

#[test]
fn criterion_5_equitable_census() {
    let started = Instant::now();
    let table = ucycle::census_table(24).unwrap();
    let a: Vec<u64> = table.iter().map(|r| r.a_k.to_u64().unwrap()).collect();
    let b: Vec<u64> = table.iter().map(|r| r.b_k.to_u64().unwrap()).collect();
    assert_eq!(a, [1, 2, 4, 10, 26, 80, 246, 810, 2704, 9252, 32066, 112720]);
    assert_eq!(b, [1, 1, 3, 8, 25, 75, 245, 800, 2700, 9225, 32065, 112632]);

    // equitable specs need k >= 4, so the exhaustive sweep starts there
    for k in (4..=16).step_by(2).chain([24]) {
        let cc = ucycle::cross_check(k).unwrap();
        assert!(cc.ok, "k={k}: {:?}", cc.mismatches);
    }
    check_budget("5 (equitable census)", started, Duration::from_secs(60));
}

#[test]
fn criterion_6_constructive_connectivity() {
    let started = Instant::now();

    // the published worked route validates edge by edge
    let s65 = spec(ClassName::Onto, 6, 5);
    let g65 = TransitionGraph::build(&s65).unwrap();
    let route = [
        "13425", "34254", "42541", "25413", "54132", "41325", "13254", "32541", "25412",
        "54123", "41235",
    ];
    for pair in route.windows(2) {
        let (u, v) = (w(pair[0], 5), w(pair[1], 5));
        let sym = *v.symbols().last().unwrap();
        assert_eq!(v, u.shift_append(sym));
        assert!(g65.has_edge(&u, sym), "{u} -> {v}");
    }

    for (k, n) in [(5usize, 3u8), (5, 4)] {
        let s = spec(ClassName::Onto, k, n);
        let g = TransitionGraph::build(&s).unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                let trace = connect_onto(a, b, &s).unwrap_or_else(|e| panic!("{s}: {a}->{b}: {e}"));
                assert!(validate_trace(&trace, &g), "{s}: {a}->{b}");
            }
        }
    }

    // 1000 seeded random pairs on the k=6, n=5 graph
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x5ecc);
    let vertices = g65.vertices();
    for _ in 0..1000 {
        let a = &vertices[rng.gen_range(0..vertices.len())];
        let b = &vertices[rng.gen_range(0..vertices.len())];
        let trace = connect_onto(a, b, &s65).unwrap_or_else(|e| panic!("{a}->{b}: {e}"));
        assert!(validate_trace(&trace, &g65), "{a}->{b}");
        assert!(trace.len() <= g65.edge_count() + 1, "{a}->{b}");
    }

    for k in [3usize, 5, 7] {
        let s = spec(ClassName::OneInequitable, k, 2);
        let g = TransitionGraph::build(&s).unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                let trace =
                    connect_inequitable(a, b, &s).unwrap_or_else(|e| panic!("{s}: {a}->{b}: {e}"));
                assert!(validate_trace(&trace, &g), "{s}: {a}->{b}");
            }
        }
    }
    check_budget("6 (constructive connectivity)", started, Duration::from_secs(60));
}

#[test]
fn criterion_7_property_suites() {
    let started = Instant::now();

    // degree dichotomy
    for (k, n) in [(4usize, 2u8), (5, 3), (6, 4), (6, 5)] {
        let audit = TransitionGraph::build(&spec(ClassName::Onto, k, n)).unwrap().audit_degrees();
        assert!(audit.balanced);
        assert!(audit.per_class["onto"].is_exactly(n as u32, n as u32), "onto k={k} n={n}");
        if let Some(summary) = audit.per_class.get("almost-onto") {
            assert!(summary.is_exactly(1, 1), "almost-onto k={k} n={n}");
        }
    }
    for k in [3usize, 5, 7, 9] {
        let audit =
            TransitionGraph::build(&spec(ClassName::OneInequitable, k, 2)).unwrap().audit_degrees();
        assert!(audit.balanced);
        if let Some(summary) = audit.per_class.get("equitable") {
            assert!(summary.is_exactly(2, 2), "equitable vertices, k={k}");
        }
        assert!(audit.per_class["two-inequitable"].is_exactly(1, 1), "k={k}");
    }

    // period-to-cycle-length correspondence on equitable decompositions
    for k in (4..=12).step_by(2) {
        let g = TransitionGraph::build(&spec(ClassName::Equitable, k, 2)).unwrap();
        for cycle in g.decompose_cycles().unwrap().cycles {
            for edge in &cycle {
                assert_eq!(edge.minimal_period(), cycle.len(), "k={k} edge {edge}");
            }
        }
    }

    // census identities, recomputed from divisor_detail
    for report in ucycle::census_table(24).unwrap() {
        let total: BigUint = report.divisor_detail.values().sum();
        assert_eq!(total, report.a_k, "k={}", report.k);
        let edges: BigUint =
            report.divisor_detail.iter().map(|(&d, b)| BigUint::from(d) * b).sum();
        assert_eq!(edges, report.equitable_count, "k={}", report.k);
    }

    // oracle agreement for every valid spec with n^k <= 10^6
    let classes = [
        ClassName::AllWords,
        ClassName::Injective,
        ClassName::Onto,
        ClassName::AlmostOnto,
        ClassName::Equitable,
        ClassName::OneInequitable,
        ClassName::TwoInequitable,
    ];
    let mut checked = 0usize;
    for class in classes {
        for n in 1u8..=10 {
            for k in 1usize..=20 {
                match (n as u64).checked_pow(k as u32) {
                    Some(total) if total <= 1_000_000 => {}
                    _ => continue,
                }
                let Ok(s) = ClassSpec::new(class, k, n) else { continue };
                let members = s.enumerate().unwrap();
                assert_eq!(BigUint::from(members.len()), s.cardinality(), "{s}");
                for m in &members {
                    assert!(s.is_member(m).unwrap(), "{s}: {m}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} specs swept");

    // binary partition property for even k: all words split into equitable,
    // 2-inequitable, and imbalance >= 4 remainders
    for k in (4..=12).step_by(2) {
        let all = spec(ClassName::AllWords, k, 2).enumerate().unwrap();
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for word in &all {
            *histogram.entry(ucycle::classes::binary_imbalance(word.symbols())).or_insert(0) += 1;
        }
        let equitable = spec(ClassName::Equitable, k, 2).cardinality().to_usize().unwrap();
        let two = spec(ClassName::TwoInequitable, k, 2).cardinality().to_usize().unwrap();
        let rest: usize = histogram.iter().filter(|(&d, _)| d >= 4).map(|(_, &c)| c).sum();
        assert_eq!(all.len(), equitable + two + rest, "k={k}");
    }
    check_budget("7 (property suites)", started, Duration::from_secs(60));
}
