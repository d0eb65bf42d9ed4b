//! Capacity as a function of the server count, with open cells settled by
//! the converse search when it meets the achievable rate.
//!
//! Reproduces the two classic profiles: K=7, M=3 steps 1/3 -> 2/5 -> 3/7 and
//! then plateaus; K=5, M=4 climbs 1/2 -> 2/3 -> 3/4 -> 4/5. Run with:
//! cargo run --example capacity_sweep

use pidkit::capacity::capacity_report;
use pidkit::converse::{converse_rate, DEFAULT_DESIGN_BUDGET};
use pidkit::ratio::frac_string;

fn sweep(k: usize, m: usize, n_range: std::ops::RangeInclusive<usize>) {
    println!("K={k}, M={m}:");
    println!(
        "  {:>3} {:>8} {:>8} {:>6}  source",
        "N", "lower", "upper", "exact"
    );
    for n in n_range {
        let report = capacity_report(k, m, n).unwrap();
        let (lower, upper, source) = match report.exact_value() {
            Some(c) => (c, c, "closed-form"),
            None => match converse_rate(k, m, n, DEFAULT_DESIGN_BUDGET) {
                Ok(cert) => (report.lower, cert.rate_bound, "search-certified"),
                Err(_) => (report.lower, report.upper, "closed-form"),
            },
        };
        println!(
            "  {n:>3} {:>8} {:>8} {:>6}  {source}",
            frac_string(&lower),
            frac_string(&upper),
            lower == upper
        );
    }
}

fn main() {
    sweep(7, 3, 3..=6);
    println!();
    sweep(5, 4, 2..=5);
}
