//! Character tables of SL_3(Z/ℓ) for small ℓ, with the dimension and
//! factoring level of every irreducible.

use std::time::Instant;

use superrigid::groups::{sl_character_table, DEFAULT_GROUP_CAP};

fn main() -> superrigid::error::Result<()> {
    let levels: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("modulus")).collect();
    let levels = if levels.is_empty() { vec![2, 3, 4, 5, 6] } else { levels };
    for ell in levels {
        let start = Instant::now();
        let table = sl_character_table(3, ell, DEFAULT_GROUP_CAP)?;
        println!(
            "SL_3(Z/{ell}): order {}, {} classes, built in {:.2?}",
            table.group_order(),
            table.classes().len(),
            start.elapsed()
        );
        for chi in table.characters() {
            println!("  {:>4}  level {}", chi.dim, table.factoring_level(chi));
        }
    }
    Ok(())
}
