//! The operator identities the construction rests on, checked numerically.
//!
//! * qubit reduction: A = sigma_x, B = sigma_y at d = 2;
//! * the n-level raising identity J^n = (A^n + omega^(n/2) B^n)/2;
//! * the Mermin form of the (3, 2) generic operator;
//! * correlator form vs operator form of the tripartite Bell value;
//! * spectrum invariance under the variant phase.
//!
//! Run with:
//! ```sh
//! cargo run --release --example operator_identities
//! ```

use num_complex::Complex64;
use qudit_bell::lhv::splitmix64;
use qudit_bell::qm::{
    bell_operator, bell_value_correlator_form, observable, omega, raising_operator, Scenario,
    Setting,
};
use qudit_bell::tensor::{expectation, hermitian_eigenvalues, ComplexMatrix, StateVector};
use qudit_bell::Rational;

fn main() {
    // Qubit reduction.
    let a2 = observable(2, Setting::A).matrix;
    let b2 = observable(2, Setting::B).matrix;
    let sigma_x = ComplexMatrix::from_rows(&[
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    ])
    .unwrap();
    let sigma_y = ComplexMatrix::from_rows(&[
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    ])
    .unwrap();
    println!("qubit reduction:");
    println!("  |A - sigma_x|_max = {:.3e}", a2.max_abs_diff(&sigma_x));
    println!("  |B - sigma_y|_max = {:.3e}", b2.max_abs_diff(&sigma_y));
    assert!(a2.max_abs_diff(&sigma_x) < 1e-12 && b2.max_abs_diff(&sigma_y) < 1e-12);

    // Raising identity at every order and dimension up to 8.
    println!("\nraising identity J^n = (A^n + omega^(n/2) B^n)/2:");
    for d in 2..=8usize {
        let a = observable(d, Setting::A).matrix;
        let b = observable(d, Setting::B).matrix;
        let j = raising_operator(d);
        let mut worst = 0.0f64;
        for n in 1..d {
            let combo = a
                .matpow(n)
                .add(&b.matpow(n).scale(omega(d, Rational::new(n as i64, 2))))
                .unwrap()
                .scale(Complex64::new(0.5, 0.0));
            worst = worst.max(combo.max_abs_diff(&j.matpow(n)));
        }
        println!("  d = {d}: worst residual {worst:.3e}");
        assert!(worst < 1e-12);
    }

    // Mermin form of the three-qubit generic operator.
    let op = bell_operator(&Scenario::generic(3, 2).unwrap()).unwrap();
    let k3 = |p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix| {
        p.kron(q).unwrap().kron(r).unwrap()
    };
    let mermin = k3(&sigma_x, &sigma_x, &sigma_x)
        .add(&k3(&sigma_x, &sigma_y, &sigma_y).scale(Complex64::new(-1.0, 0.0)))
        .unwrap()
        .add(&k3(&sigma_y, &sigma_x, &sigma_y).scale(Complex64::new(-1.0, 0.0)))
        .unwrap()
        .add(&k3(&sigma_y, &sigma_y, &sigma_x).scale(Complex64::new(-1.0, 0.0)))
        .unwrap()
        .scale(Complex64::new(0.25, 0.0));
    println!(
        "\n(3,2) generic operator vs (XXX - XYY - YXY - YYX)/4: residual {:.3e}",
        op.max_abs_diff(&mermin)
    );
    assert!(op.max_abs_diff(&mermin) < 1e-12);

    // Correlator form against the operator form on random states.
    println!("\ncorrelator form vs operator form (N = 3):");
    for d in 2..=4usize {
        let op = bell_operator(&Scenario::generic(3, d).unwrap()).unwrap();
        let mut worst = 0.0f64;
        for k in 0..10u64 {
            let state = random_state(d.pow(3), 0xE0 ^ (d as u64) << 8 ^ k);
            let via_corr = bell_value_correlator_form(&state, d).unwrap();
            let via_op = expectation(&state, &op).unwrap().re;
            worst = worst.max((via_corr - via_op).abs());
        }
        println!("  d = {d}: worst residual over 10 random states {worst:.3e}");
        assert!(worst < 1e-9);
    }

    // Variant phases conjugate the operator, so spectra must coincide.
    println!("\nspectrum invariance under the variant phase:");
    for (n, d) in [(2usize, 3usize), (3, 2), (2, 4)] {
        let generic = bell_operator(&Scenario::generic(n, d).unwrap()).unwrap();
        let variant =
            bell_operator(&Scenario::new(n, d, Rational::new(1, 4)).unwrap()).unwrap();
        let ev_g = hermitian_eigenvalues(&generic).unwrap();
        let ev_v = hermitian_eigenvalues(&variant).unwrap();
        let worst = ev_g
            .iter()
            .zip(&ev_v)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        println!("  (N={n}, d={d}): eigenvalue multisets differ by at most {worst:.3e}");
        assert!(worst < 1e-9);
    }

    println!("\nall identities hold");
}

fn random_state(len: usize, seed: u64) -> StateVector {
    let amps: Vec<Complex64> = (0..len)
        .map(|i| {
            let re = splitmix64(seed ^ (2 * i as u64 + 1)) as f64 / u64::MAX as f64 - 0.5;
            let im = splitmix64(seed ^ (2 * i as u64 + 2)) as f64 / u64::MAX as f64 - 0.5;
            Complex64::new(re, im)
        })
        .collect();
    StateVector::normalized(amps).unwrap()
}
