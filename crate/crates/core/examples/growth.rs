//! Growth class, dimension polynomial, stable depth and a bound on the
//! number of irreducible summands per level.

use superrigid::vic::{growth_classify, length_bound, VicModule};

fn main() -> superrigid::error::Result<()> {
    let w = (3, 7);
    let std = VicModule::standard(w)?;
    let p2 = VicModule::projective(2, w)?;
    let modules = [
        VicModule::trivial(w)?,
        std.clone(),
        std.tensor(&std)?,
        p2.clone(),
        VicModule::affine(3, (3, 5))?,
        std.truncate(3, 5)?.tensor(&p2.truncate(3, 5)?)?,
    ];
    for v in &modules {
        let g = growth_classify(v)?;
        let l = length_bound(v, 0)?;
        println!("{}: dims {:?}", v.name(), v.dims());
        println!(
            "  {:?}, degree {:?}, polynomial {:?}, base {:?}, stable depth {:?}",
            g.class, g.polynomial_degree, g.dimension_polynomial, g.exponential_base, g.stable_depth
        );
        println!(
            "  summands per level {:?}, bound {:?} ({})",
            l.per_level, l.bound, l.method
        );
    }
    Ok(())
}
