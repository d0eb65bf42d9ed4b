//! The intermediate-regime construction: server counts strictly between the
//! feasibility floor ceil(K/M) and the full-rate threshold.
//!
//! At K=7, M=3, N=4 the first four messages are each replicated twice into a
//! 3 x 3 server table (column-major), so every one of them sits on two
//! cyclically consecutive servers; the last three messages share a fourth
//! server that answers with two symbols. Rate: 2/5. Run with:
//! cargo run --example intermediate_scheme

use pidkit::build_intermediate;
use pidkit::capacity::{min_servers, threshold_n};
use pidkit::ratio::frac_string;
use pidkit::verify::{verify_scheme, DEFAULT_STATE_BUDGET};

fn main() {
    let (k, m) = (7, 3);
    let floor = min_servers(k, m);
    let threshold = threshold_n(k, m).unwrap();
    println!("K={k}, M={m}: feasible from N={floor}, full rate from N={threshold}");

    for n in floor..=threshold {
        let scheme = build_intermediate(k, m, n).expect("in regime");
        println!(
            "\nN={n}: rate {}, L={}, field F_{}, eta {}",
            frac_string(&scheme.rate()),
            scheme.l(),
            scheme.field().modulus(),
            frac_string(&scheme.eta()),
        );
        for server in 1..=scheme.n() {
            println!(
                "  server {server}: stores {:?}, answers {} symbol(s)",
                scheme.storage().set(server),
                scheme.d()[server - 1]
            );
        }
        let report = verify_scheme(&scheme, DEFAULT_STATE_BUDGET);
        println!(
            "  verified: correctness={} privacy={} exhaustive={:?}",
            report.correctness_ok, report.rank_privacy_ok, report.exhaustive_privacy
        );
    }

    println!("\nat the boundaries the same construction reproduces the");
    println!("one-symbol rate 1/{floor} and the full rate {}/{}", m, k);
}
