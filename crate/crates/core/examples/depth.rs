//! Depth, p-depths and the finite/algebraic split of a few integral
//! representations of SL_3(Z), and of any representation file given on the
//! command line.
//!
//!     cargo run --example depth -- crates/core/data/reps/sum_zero_f2.json

use superrigid::depth::{classify, gamma_u_check, IntegralRep, RepFile, DEFAULT_CYCLOTOMIC_CAP};

fn report(name: &str, rep: &IntegralRep) -> superrigid::error::Result<()> {
    let r = classify(rep, false, DEFAULT_CYCLOTOMIC_CAP)?;
    let gamma = gamma_u_check(rep, r.depth, 16, 0)?;
    println!(
        "{name:<22} dim {:>3}  depth {:>2}  p-depths {:?}  {:?} (finite part {})  Γ_U check {:?}",
        r.dim, r.depth, r.p_depths, r.classification, r.dim_fin, gamma
    );
    Ok(())
}

fn main() -> superrigid::error::Result<()> {
    let std = IntegralRep::standard(3)?;
    let w2 = IntegralRep::projective_sum_zero(3, 2)?;
    let w3 = IntegralRep::projective_sum_zero(3, 3)?;
    report("trivial", &IntegralRep::trivial(3)?)?;
    report("standard", &std)?;
    report("C[P(F_2^3)]", &IntegralRep::projective(3, 2)?)?;
    report("sum-zero over F_2", &w2)?;
    report("sum-zero over F_3", &w3)?;
    report("F_2 ⊕ F_3 sum-zero", &w2.direct_sum(&w3)?)?;
    report("standard ⊗ sum-zero F_2", &std.tensor(&w2)?)?;
    for path in std::env::args().skip(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        let file: RepFile = serde_json::from_str(&text).expect("representation file");
        report(&path, &IntegralRep::from_file(&file)?)?;
    }
    Ok(())
}
