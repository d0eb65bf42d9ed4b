//! The full-rate construction at its canonical parameter point K=8, M=3:
//! six servers, rate exactly 3/8 = M/K, built from a systematic Cauchy
//! decoder over F_11.
//!
//! The first five servers store three messages each in a cyclic pattern and
//! answer with one symbol; the last server stores the remaining three
//! messages and answers with three. Run with:
//! cargo run --example full_rate_scheme

use pidkit::build_full_rate;
use pidkit::ratio::frac_string;
use pidkit::verify::{check_correctness, check_privacy_rank};

fn main() {
    let scheme = build_full_rate(8, 3).expect("parameters are valid");

    println!(
        "full-rate scheme: K=8, M=3, N={}, field F_{}, message length L={}",
        scheme.n(),
        scheme.field().modulus(),
        scheme.l()
    );
    println!(
        "rate {} (= M/K), randomness size {} (z has {} symbols)",
        frac_string(&scheme.rate()),
        frac_string(&scheme.eta()),
        scheme.d_sigma() - scheme.l()
    );
    for n in 1..=scheme.n() {
        println!(
            "  server {n}: stores {:?}, answers {} symbol(s)",
            scheme.storage().set(n),
            scheme.d()[n - 1]
        );
    }

    println!("\ndecoder G = [I | V] with V a Cauchy block:");
    for row in scheme.g().to_grid() {
        println!("  {row:?}");
    }

    // every message is recovered by inverting the decoder columns of the
    // servers that store it, e.g. message 1 lives on servers {1, 4, 5}
    let avail = scheme.availability(1);
    println!("\nmessage 1 is available at servers {:?}", avail.servers());
    let g_cols = scheme.g().select_cols(avail.servers()).unwrap();
    let f_rows = scheme.f_matrix(1).select_rows(avail.servers()).unwrap();
    println!(
        "G[:, (1,4,5)] * F[1][(1,4,5), :] = {:?}",
        g_cols.mul(&f_rows).unwrap().to_grid()
    );

    println!(
        "\ncorrectness (G F[k] = I, G H = 0): {}",
        check_correctness(&scheme)
    );
    println!(
        "privacy rank ([F[k] | H] invertible for all k): {}",
        check_privacy_rank(&scheme)
    );
}
