use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use vqseg::encodings::{pge_cost, pge_decode};
use vqseg::harness::{
    emit_csv, emit_json, parse_csv, parse_json, relative_error, resource_estimate, Algorithm,
    BenchmarkRecord,
};
use vqseg::{
    brute_force_min_cut, BitVector, Edge, GridGraph, Method, OptimizerKind, RealMatrix, Statevector,
};

fn seeded_graph() -> impl Strategy<Value = GridGraph> {
    (1usize..=4, 1usize..=4, any::<u64>()).prop_map(|(w, h, seed)| GridGraph::random_rect(w, h, seed))
}

/// Graphs with arbitrary (non-dyadic) weights.
fn real_graph() -> impl Strategy<Value = GridGraph> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(w, h)| {
        let pairs = GridGraph::random_rect(w, h, 0).edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>();
        prop::collection::vec(-1.0f64..1.0, pairs.len()).prop_map(move |ws| {
            let edges = pairs.iter().zip(ws).map(|(&(u, v), w)| Edge { u, v, w }).collect();
            GridGraph::from_edges(w, h, edges).unwrap()
        })
    })
}

fn with_bits(g: GridGraph) -> impl Strategy<Value = (GridGraph, BitVector)> {
    let n = g.num_nodes();
    (Just(g), prop::collection::vec(any::<bool>(), n).prop_map(BitVector::new))
}

#[derive(Debug, Clone)]
enum Op {
    H(usize),
    Ry(usize, f64),
    Cnot(usize, usize),
    Diagonal(Vec<f64>),
}

fn ops(q: usize) -> impl Strategy<Value = Vec<Op>> {
    let op = prop_oneof![
        (0..q).prop_map(Op::H),
        (0..q, -10.0f64..10.0).prop_map(|(k, t)| Op::Ry(k, t)),
        (0..q, 1..q.max(2)).prop_map(move |(c, d)| Op::Cnot(c, (c + d) % q)),
        prop::collection::vec(0.0f64..TAU, 1 << q).prop_map(Op::Diagonal),
    ];
    prop::collection::vec(op, 0..40)
}

fn run(q: usize, ops: &[Op]) -> Statevector {
    let mut s = Statevector::new(q).unwrap();
    for op in ops {
        match op {
            Op::H(k) => s.h(*k).unwrap(),
            Op::Ry(k, t) => s.ry(*k, *t).unwrap(),
            Op::Cnot(c, t) if c != t => s.cnot(*c, *t).unwrap(),
            Op::Cnot(..) => {}
            Op::Diagonal(p) => s.diagonal(p).unwrap(),
        }
    }
    s
}

fn symmetric(q: usize) -> impl Strategy<Value = RealMatrix> {
    let dim = 1 << q;
    prop::collection::vec(-2.0f64..2.0, dim * dim).prop_map(move |v| {
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| v[i.min(j) * dim + i.max(j)]).collect())
            .collect();
        RealMatrix::from_rows(&rows).unwrap()
    })
}

fn record() -> impl Strategy<Value = BenchmarkRecord> {
    (
        any::<u64>(),
        1usize..25,
        prop::sample::select(Method::ALL.to_vec()),
        prop::sample::select(vec![
            OptimizerKind::NelderMead,
            OptimizerKind::Powell,
            OptimizerKind::DifferentialEvolution,
        ]),
        1usize..6,
        1u64..100_000,
        (-50.0f64..50.0, prop_oneof![Just(0.0), -50.0f64..50.0]),
        0usize..100_000,
        0.0f64..5000.0,
    )
        .prop_map(|(seed, size, method, optimizer, layers, shots, (obtained, exact), evaluations, wall)| {
            BenchmarkRecord {
                seed,
                size,
                method,
                optimizer,
                layers,
                shots,
                obtained,
                exact,
                rel_error: relative_error(obtained, exact),
                evaluations,
                wall_time_s: wall,
            }
        })
}

proptest! {
    #[test]
    fn qubo_equals_cut_exactly((g, x) in seeded_graph().prop_flat_map(with_bits)) {
        prop_assert_eq!(g.to_qubo().value(&x).unwrap(), g.cut_cost(&x).unwrap());
    }

    #[test]
    fn qubo_equals_cut_real_weights((g, x) in real_graph().prop_flat_map(with_bits)) {
        let d = g.to_qubo().value(&x).unwrap() - g.cut_cost(&x).unwrap();
        prop_assert!(d.abs() < 1e-12);
    }

    #[test]
    fn complement_symmetry((g, x) in real_graph().prop_flat_map(with_bits)) {
        prop_assert_eq!(g.cut_cost(&x).unwrap(), g.cut_cost(&x.complement()).unwrap());
    }

    #[test]
    fn laplacian_quadratic_form((g, x) in real_graph().prop_flat_map(with_bits)) {
        let l = g.laplacian();
        let n = g.num_nodes();
        let xf: Vec<f64> = x.bits().iter().map(|&b| f64::from(u8::from(b))).collect();
        let form: f64 = (0..n).map(|i| (0..n).map(|j| xf[i] * l.get(i, j) * xf[j]).sum::<f64>()).sum();
        prop_assert!((form - g.cut_cost(&x).unwrap()).abs() < 1e-12);
        let rows: f64 = (0..n).map(|i| (0..n).map(|j| l.get(i, j)).sum::<f64>().abs()).sum();
        prop_assert!(rows < 1e-12);
    }

    #[test]
    fn oracle_is_a_lower_bound((g, x) in seeded_graph().prop_flat_map(with_bits)) {
        let s = brute_force_min_cut(&g).unwrap();
        prop_assert!(s.value <= g.cut_cost(&x).unwrap());
        prop_assert_eq!(g.cut_cost(&s.argmin).unwrap(), s.value);
    }

    #[test]
    fn edge_list_round_trip(g in real_graph()) {
        prop_assert_eq!(GridGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn norm_is_preserved((q, ops) in (1usize..=6).prop_flat_map(|q| (Just(q), ops(q)))) {
        prop_assert!((run(q, &ops).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_linear(
        (q, ops, a, b) in (1usize..=4).prop_flat_map(|q| (Just(q), ops(q), symmetric(q), symmetric(q))),
        alpha in -3.0f64..3.0,
        beta in -3.0f64..3.0,
    ) {
        let s = run(q, &ops);
        let lhs = s.expectation(&a.combine(alpha, &b, beta).unwrap()).unwrap();
        let rhs = alpha * s.expectation(&a).unwrap() + beta * s.expectation(&b).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
        prop_assert!((s.expectation(&RealMatrix::identity(1 << q)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pge_cost_is_twice_the_cut(
        (g, params) in seeded_graph().prop_flat_map(|g| {
            let dim = 1usize << vqseg::encodings::pge_qubits(g.num_nodes());
            (Just(g), prop::collection::vec(-10.0f64..10.0, dim))
        })
    ) {
        let l = g.laplacian_padded(params.len());
        let cost = pge_cost(&params, &l).unwrap();
        let cut = g.cut_cost(&pge_decode(&params, g.num_nodes())).unwrap();
        prop_assert!((cost - 2.0 * cut).abs() < 1e-9);
        let shifted: Vec<f64> = params.iter().map(|t| t + PI).collect();
        prop_assert!((pge_cost(&shifted, &l).unwrap() - cost).abs() < 1e-9);
    }

    #[test]
    fn pge_cost_is_piecewise_constant(
        (g, params, nudges) in seeded_graph().prop_flat_map(|g| {
            let dim = 1usize << vqseg::encodings::pge_qubits(g.num_nodes());
            (Just(g), prop::collection::vec(0.0f64..TAU, dim), prop::collection::vec(0.0f64..1.0, dim))
        })
    ) {
        // Move each parameter to another point of its own half-interval.
        let moved: Vec<f64> = params
            .iter()
            .zip(&nudges)
            .map(|(&t, &u)| if t < PI { u * PI * 0.999 } else { PI + u * PI * 0.999 })
            .collect();
        let l = g.laplacian_padded(params.len());
        prop_assert_eq!(pge_cost(&params, &l).unwrap(), pge_cost(&moved, &l).unwrap());
    }

    #[test]
    fn resources_are_monotone(n in 2u64..1 << 24, dn in 0u64..1 << 24, l in 1u64..50, dl in 0u64..50) {
        for m in Algorithm::ALL {
            let a = resource_estimate(m, n, l).unwrap();
            for b in [resource_estimate(m, n + dn, l).unwrap(), resource_estimate(m, n, l + dl).unwrap()] {
                prop_assert!(a.qubits <= b.qubits);
                prop_assert!(a.entanglement_gates <= b.entanglement_gates);
                prop_assert!(a.parametric_gates <= b.parametric_gates);
                prop_assert!(a.depth <= b.depth);
            }
        }
    }

    #[test]
    fn csv_and_json_agree(records in prop::collection::vec(record(), 0..8)) {
        let mut csv = Vec::new();
        emit_csv(&records, &mut csv).unwrap();
        let mut json = Vec::new();
        emit_json(&records, &mut json).unwrap();
        let from_csv = parse_csv(&csv[..]).unwrap();
        prop_assert_eq!(&from_csv, &parse_json(&json[..]).unwrap());
        prop_assert_eq!(&from_csv, &records);
        prop_assert_eq!(String::from_utf8(csv).unwrap().lines().count(), records.len() + 1);
    }
}

#[test]
fn amplitudes_stay_finite_for_extreme_angles() {
    let mut s = Statevector::new(2).unwrap();
    s.ry(0, 1e12).unwrap();
    s.ry(1, -1e12).unwrap();
    assert!(s.amplitudes().iter().all(|a: &Complex64| a.re.is_finite() && a.im.is_finite()));
    assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
}
