//! How the quantum-to-classical ratio behaves as the local dimension grows.
//!
//! For the tripartite generic inequality the QCR is largest for qubits and
//! decreases toward (but never reaches) 1 as d grows through the even
//! dimensions; odd dimensions sit exactly at 1 (no violation). The quarter
//! variant stays above 1 everywhere.
//!
//! Run with:
//! ```sh
//! cargo run --release --example qcr_trend
//! ```

use qudit_bell::bounds::{generic_classical_bound, qcr, quantum_bound, variant_quarter_bound};

fn main() {
    println!("tripartite (N = 3) bounds by local dimension d\n");
    println!(
        "{:>3} {:>20} {:>10} {:>14} {:>20} {:>14}",
        "d", "generic classical", "quantum", "generic QCR", "quarter classical", "quarter QCR"
    );

    let mut generic_even = Vec::new();
    for d in 2..=9usize {
        let generic = generic_classical_bound(3, d);
        let quantum = quantum_bound(d);
        let generic_ratio = qcr(quantum, generic.value).unwrap();
        let quarter = variant_quarter_bound(3, d);
        let quarter_ratio = qcr(quantum, quarter).unwrap();
        println!(
            "{:>3} {:>20.12} {:>10} {:>14.12} {:>20.12} {:>14.12}",
            d, generic.value, quantum, generic_ratio, quarter, quarter_ratio
        );
        if d % 2 == 0 {
            generic_even.push(generic_ratio);
        } else {
            assert!((generic_ratio - 1.0).abs() < 1e-12, "odd d must sit at QCR 1");
        }
        assert!(quarter_ratio > 1.0, "quarter variant must violate at every d");
    }

    for pair in generic_even.windows(2) {
        assert!(pair[0] > pair[1], "generic QCR must decrease with even d");
    }
    println!("\ngeneric QCR over even d: {generic_even:?}");
    println!("strictly decreasing, from 2 (qubits, the Mermin case) downward");
}
