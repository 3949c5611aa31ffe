//! Filtration of a VIC-module by algebraic isotypic layers, each the tensor
//! product of a label with a finite-type multiplicity module.

use superrigid::vic::{algebraic_isotypic_filtration, VicModule};

fn main() -> superrigid::error::Result<()> {
    let w = (3, 6);
    let std = VicModule::standard(w)?;
    let p2 = VicModule::projective(2, w)?;
    let cases = [
        std.tensor(&p2)?,
        std.direct_sum(&VicModule::sum_zero(3, w)?)?,
        VicModule::dual_standard(w)?.tensor(&p2)?,
    ];
    for v in &cases {
        let f = algebraic_isotypic_filtration(v)?;
        println!("{} on {:?}: dims {:?}", v.name(), f.window, v.dims());
        println!(
            "  generated from {:?}, injective from {:?}, head below {} with dims {:?}",
            f.generation_degree, f.injectivity_degree, f.head_boundary, f.head_dims
        );
        for layer in &f.layers {
            println!(
                "  layer {}: label dims {:?} x multiplicity dims {:?}, depth {}, maps factor {:?}",
                layer.label, layer.label_dims, layer.multiplicity_dims, layer.level, layer.maps_factor
            );
        }
        println!("  dimension identity holds: {}", f.dimension_identity);
    }
    Ok(())
}
