//! The permutation module C[P(F_p^n)]: its sum-zero part and the number of
//! orbitals of the group generated by elementary matrices, which is the
//! norm of the permutation character.
//!
//!     cargo run --example projective_space -- 3 5

use superrigid::groups::ProjectiveSpace;

fn main() -> superrigid::error::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let cases = match args.as_slice() {
        [n, p] => vec![(*n as usize, *p)],
        _ => vec![(3, 2), (3, 3), (3, 5), (4, 2), (4, 3)],
    };
    for (n, p) in cases {
        let space = ProjectiveSpace::new(n, p)?;
        let gens: Vec<Vec<u8>> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| {
                let mut g = vec![0u8; n * n];
                for k in 0..n {
                    g[k * n + k] = 1;
                }
                g[i * n + j] = 1;
                g
            })
            .collect();
        let norm = space.orbital_count(&gens);
        println!(
            "P(F_{p}^{n}): {} points, sum-zero part of dimension {}, {norm} orbitals{}",
            space.sum_zero_subspace().ambient(),
            space.sum_zero_subspace().dim(),
            if norm == 2 { " (sum-zero part irreducible)" } else { "" }
        );
    }
    Ok(())
}
