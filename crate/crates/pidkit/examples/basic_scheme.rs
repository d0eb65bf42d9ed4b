//! The smallest interesting delivery scheme: three servers, one single-bit
//! message each, shared randomness (z1, z2, z1+z2) over F_2.
//!
//! Whatever message is delivered, the user sees three i.i.d. random bits and
//! always decodes by adding all three answers, so the delivered index stays
//! hidden. Run with: cargo run --example basic_scheme

use pidkit::build_basic;
use pidkit::ratio::frac_string;
use pidkit::sim::{random_messages, run_delivery};
use pidkit::verify::{verify_scheme, DEFAULT_STATE_BUDGET};

fn main() {
    let scheme = build_basic(3, 1).expect("parameters are valid");

    println!(
        "one-symbol scheme: K=3 messages, M=1 per server, N={} servers",
        scheme.n()
    );
    println!(
        "field: F_{}, rate {}, randomness size {}",
        scheme.field().modulus(),
        frac_string(&scheme.rate()),
        frac_string(&scheme.eta())
    );
    for n in 1..=scheme.n() {
        println!("  server {n} stores messages {:?}", scheme.storage().set(n));
    }
    println!(
        "decoder row (sum of all answers): {:?}",
        scheme.g().to_grid()[0]
    );
    println!(
        "randomness rows (z per server):   {:?}",
        scheme.h().to_grid()
    );

    // deliver each message once and show the answers the user sees
    let messages = random_messages(&scheme, 7);
    println!("\nmessages: {messages:?}");
    for k in 1..=scheme.k() {
        let t = run_delivery(&scheme, k, &messages, 42).expect("delivery runs");
        println!(
            "deliver W{k}: answers {:?} -> decoded {:?} ({})",
            t.answers,
            t.decoded,
            if t.decode_ok() { "correct" } else { "WRONG" }
        );
    }

    // the state space is tiny (2^3 per index), so privacy is checked by
    // exhaustively comparing the joint answer distributions
    let report = verify_scheme(&scheme, DEFAULT_STATE_BUDGET);
    println!(
        "\nverifier: correctness={} rank-privacy={} exhaustive={:?}",
        report.correctness_ok, report.rank_privacy_ok, report.exhaustive_privacy
    );
}
