//! End-to-end protocol run: deal seeded common randomness, collect the
//! per-server answers, decode at the user, and account the download.
//!
//! Servers only ever receive what they are entitled to read — the delivered
//! message goes exclusively to the servers that store it. Run with:
//! cargo run --example simulate_delivery

use pidkit::build_full_rate;
use pidkit::ratio::frac_string;
use pidkit::sim::{deal_randomness, random_messages, run_delivery, server_answer};

fn main() {
    let scheme = build_full_rate(3, 2).expect("parameters are valid");
    println!(
        "scheme: K=3, M=2, N={}, field F_{}, rate {}",
        scheme.n(),
        scheme.field().modulus(),
        frac_string(&scheme.rate())
    );

    let seed = 2024;
    let messages = random_messages(&scheme, seed);
    println!("messages: {messages:?}");
    println!(
        "shared randomness (seed {seed}): {:?}",
        deal_randomness(&scheme, seed)
    );

    for k in 1..=scheme.k() {
        let t = run_delivery(&scheme, k, &messages, seed).expect("delivery runs");
        println!(
            "\ndeliver W{k}: answers {:?} -> decoded {:?} (download {} symbols, rate {})",
            t.answers,
            t.decoded,
            t.download,
            frac_string(&t.measured_rate(&scheme))
        );
    }

    // a server that does not store the delivered message answers from the
    // shared randomness alone, and refuses the message operand outright
    let z = deal_randomness(&scheme, seed);
    let non_holder = (1..=scheme.n())
        .find(|&n| !scheme.storage().holds(n, 1))
        .expect("some server misses message 1");
    println!(
        "\nserver {non_holder} does not store W1; its W1-answer from z alone: {:?}",
        server_answer(&scheme, non_holder, 1, None, &z).unwrap()
    );
    let refused = server_answer(&scheme, non_holder, 1, Some(&messages[0]), &z);
    println!("handing it W1 anyway is rejected: {refused:?}");
}
