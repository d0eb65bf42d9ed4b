//! Closed-form capacity bounds across all four regimes, and the
//! best-achievable-rate search over smaller server counts.
//!
//! Run with: cargo run --example capacity_bounds

use pidkit::capacity::{best_lower_bound, capacity_report, min_servers, threshold_n};
use pidkit::ratio::frac_string;

fn main() {
    println!(
        "regime classification for K=7, M=3 (floor {}, threshold {}):",
        min_servers(7, 3),
        threshold_n(7, 3).unwrap()
    );
    for n in 1..=7 {
        let r = capacity_report(7, 3, n).unwrap();
        match r.exact_value() {
            Some(c) if !r.feasible => {
                println!("  N={n}: infeasible (capacity {})", frac_string(&c))
            }
            Some(c) => println!("  N={n}: capacity = {} ({:?})", frac_string(&c), r.regime),
            None => println!(
                "  N={n}: capacity in [{}, {}] ({:?})",
                frac_string(&r.lower),
                frac_string(&r.upper),
                r.regime
            ),
        }
    }

    // the best achievable rate need not come from using every server: the
    // search reports which smaller server count attains the maximum
    println!("\nbest closed-form achievable rates for K=11, M=4:");
    for n in min_servers(11, 4)..=threshold_n(11, 4).unwrap() {
        let (rate, witness) = best_lower_bound(11, 4, n).unwrap();
        println!(
            "  N={n}: rate {} (achieved with {witness} servers)",
            frac_string(&rate)
        );
    }

    // with M = 2 the capacity is settled for every server count
    println!("\nM=2, K=9 is fully characterized:");
    for n in 3..=7 {
        let r = capacity_report(9, 2, n).unwrap();
        println!(
            "  N={n}: capacity = {}",
            frac_string(&r.exact_value().expect("M=2 is a solved regime"))
        );
    }
}
