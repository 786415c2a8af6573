//! The nu = 1/4 variant family, which is violated in every dimension.
//!
//! The generic inequality is not violated for bipartite or odd-dimensional
//! systems, but re-weighting the Bell operator with omega^(n/4) fixes that.
//! Two qubits recover the CHSH numbers: classical bound 1/sqrt(2), quantum
//! expectation 1, ratio sqrt(2).
//!
//! Run with:
//! ```sh
//! cargo run --release --example chsh_variant
//! ```

use qudit_bell::bounds::{qcr, quantum_bound, variant_quarter_bound};
use qudit_bell::lhv::brute_force_max;
use qudit_bell::qm::{bell_operator, optimal_state, Scenario};
use qudit_bell::tensor::expectation;
use qudit_bell::Rational;

fn main() {
    let nu = Rational::new(1, 4);
    println!("variant phase nu = {nu}\n");
    println!(
        "{:>3} {:>3} {:>18} {:>18} {:>10} {:>14}",
        "N", "d", "classical-closed", "classical-brute", "quantum", "qcr"
    );

    let mut chsh_ratio = None;
    for (n, d) in [(2usize, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let scenario = Scenario::new(n, d, nu).unwrap();

        let closed = variant_quarter_bound(n, d);
        let brute = brute_force_max(&scenario).unwrap();
        assert!(
            (closed - brute.max_value).abs() < 1e-9,
            "closed form and enumeration disagree at (N={n}, d={d})"
        );

        // The saturating state is the GHZ state carried through the local
        // phase rotation that generates the variant.
        let state = optimal_state(&scenario).unwrap();
        let quantum = expectation(&state, &bell_operator(&scenario).unwrap())
            .unwrap()
            .re;
        assert!((quantum - quantum_bound(d)).abs() < 1e-9);

        let ratio = qcr(quantum, closed).unwrap();
        assert!(ratio > 1.0, "no violation at (N={n}, d={d})");
        if (n, d) == (2, 2) {
            chsh_ratio = Some(ratio);
        }
        println!(
            "{:>3} {:>3} {:>18.12} {:>18.12} {:>10.6} {:>14.12}",
            n, d, closed, brute.max_value, quantum, ratio
        );
    }

    let chsh = chsh_ratio.unwrap();
    println!("\ntwo-qubit ratio {chsh:.12} vs sqrt(2) = {:.12}", std::f64::consts::SQRT_2);
    assert!((chsh - std::f64::consts::SQRT_2).abs() < 1e-9);
    println!("the quarter variant is violated in every scenario above");
}
