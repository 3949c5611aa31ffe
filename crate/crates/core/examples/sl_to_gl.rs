//! Extension of a triple of SL-levels to GL-levels, checked against the
//! natural action of diagonal matrices on C[P(F_5^n)].

use superrigid::groups::ProjectiveSpace;
use superrigid::vic::{extend_sl_to_gl, VicModule};

fn main() -> superrigid::error::Result<()> {
    let v = VicModule::projective(5, (3, 5))?;
    let ext = extend_sl_to_gl(&v, 4)?;
    println!(
        "extension of {} around rank 4, units of Z/{}: {:?}",
        v.name(),
        ext.modulus,
        ext.units
    );
    println!("{:#?}", ext.checks);
    for r in 3..=5 {
        let space = ProjectiveSpace::new(r, 5)?;
        let agree = ext.module.level(r).diagonals().iter().all(|(&u, m)| {
            let mut g = vec![0u8; r * r];
            for k in 0..r {
                g[k * r + k] = 1;
            }
            g[0] = u as u8;
            *m == space.permutation_matrix(&g)
        });
        println!("rank {r}: diagonal images match the permutation action: {agree}");
    }
    Ok(())
}
