//! Exact emptiness formation probabilities at small sizes, cross-checked
//! against the brute-force Coulomb sum.
//!
//!     cargo run --example efp_exact

use lshape::exactcore::{coulomb_sum_oracle, efp_hankel, LshapeDims};
use lshape::scalar::{exact_from_str, exact_to_string};

fn main() -> Result<(), lshape::Error> {
    let alpha = exact_from_str("1/2")?;
    println!(
        "{:>4} {:>4} {:>4}  {:>16}  {:>16}  oracle",
        "r", "s", "q", "F (hankel)", "I (sum)"
    );
    for r in 1..=5u32 {
        for s in 0..=3u32 {
            for q in 0..=2u32 {
                let dims = LshapeDims::new(r, s, q)?;
                let f = efp_hankel(&dims, &alpha)?;
                let (i, f_oracle) = coulomb_sum_oracle(&dims, &alpha)?;
                assert_eq!(f, f_oracle, "determinant and sum disagree");
                println!(
                    "{:>4} {:>4} {:>4}  {:>16}  {:>16}  agrees",
                    r,
                    s,
                    q,
                    exact_to_string(&f),
                    exact_to_string(&i)
                );
            }
        }
    }
    Ok(())
}
