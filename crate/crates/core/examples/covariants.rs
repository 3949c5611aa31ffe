//! Covariants Φ_a for the complementary GL_{n-a}, their stabilization, and
//! the Noetherian witness built from a random submodule.

use superrigid::vic::{covariants_phi, noetherian_witness, stabilization_degree, VicModule};

fn main() -> superrigid::error::Result<()> {
    let w = (3, 7);
    let modules = [
        VicModule::trivial(w)?,
        VicModule::standard(w)?,
        VicModule::projective(2, w)?,
        VicModule::sum_zero(3, (3, 5))?,
    ];
    for v in &modules {
        println!("{}: dims {:?}", v.name(), v.dims());
        for a in 0..=2 {
            let phi = covariants_phi(v, a)?;
            println!(
                "  Φ_{a}: dims {:?} from rank {}, map ranks {:?}, stable from {:?}, invariants agree {}",
                phi.dims,
                phi.n_min,
                phi.map_ranks,
                stabilization_degree(&phi),
                phi.invariants_agree
            );
        }
        let witness = noetherian_witness(v, 2, 7)?;
        println!("  random submodule: dims {:?}, holds {}", witness.dims, witness.holds);
    }
    Ok(())
}
