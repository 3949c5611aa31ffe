//! Dimension bounds in terms of depth for SL_n(Z), n = 3..6.

use superrigid::groups::bounds::{bmk_lower_bound, depth_dim_lower_bound, forces_algebraic, max_depth_for_dim};

fn main() -> superrigid::error::Result<()> {
    for n in 3..=6u32 {
        println!("n = {n}");
        for ell in [2u64, 3, 4, 6, 8, 9, 12] {
            println!(
                "  depth {ell:>2}: dimension at least {}",
                depth_dim_lower_bound(ell, n)?.bound
            );
        }
        for (p, k) in [(2u64, 2u32), (2, 3), (3, 2)] {
            println!("  depth {p}^{k}, first-order bound {}", bmk_lower_bound(n, p, k)?);
        }
        for dim in [10u64, 30, 100, 1000] {
            println!(
                "  dim {dim:>4}: depth at most {}, algebraic forced {}",
                max_depth_for_dim(dim, n)?,
                forces_algebraic(dim, n)?
            );
        }
    }
    Ok(())
}
