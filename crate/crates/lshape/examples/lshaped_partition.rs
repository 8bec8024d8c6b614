//! Partition functions of the square and L-shaped domains at the
//! free-fermion point, including the biased domino-tiling weights
//! (`rho = 2`).
//!
//!     cargo run --example lshaped_partition

use lshape::exactcore::{partition_lshape, partition_square, LshapeDims, ModelParams};
use lshape::scalar::exact_from_str;

fn main() -> Result<(), lshape::Error> {
    let params = ModelParams::new(exact_from_str("1/2")?, exact_from_str("2")?)?;
    println!("weights w1..w6 = {:?}", params.weights_f64());
    println!();
    println!("square domains (Z_N = rho^(N(N+1)/2)):");
    for n in [1u32, 2, 4, 8] {
        let z = partition_square(n, &params, 128)?;
        println!("  N = {n}: Z = {}", z.to_decimal_string());
    }
    println!();
    println!("L-shaped domains (s x (s+q) corner removed):");
    for (r, s, q) in [(4u32, 1u32, 0u32), (4, 2, 1), (6, 2, 2), (8, 3, 1)] {
        let dims = LshapeDims::new(r, s, q)?;
        let z = partition_lshape(&dims, &params, 192)?;
        println!(
            "  r = {r}, s = {s}, q = {q} (N = {}): Z = {}",
            dims.n(),
            z.to_decimal_string()
        );
    }
    Ok(())
}
