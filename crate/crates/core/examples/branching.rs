//! Pieri and Littlewood-Richardson branching of a rational GL_n
//! representation, with the dimension polynomial of its label.
//!
//!     cargo run --example branching -- 2,1 1 4

use superrigid::linalg::field::q_to_string;
use superrigid::partition::Bipartition;
use superrigid::weights::{dimension_polynomial, lr_restrict, pieri_restrict, AlgebraicLabel};

fn parts(s: &str) -> Vec<u32> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().expect("part"))
        .collect()
}

fn main() -> superrigid::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (plus, minus, n) = match args.as_slice() {
        [p, m, n] => (parts(p), parts(m), n.parse().expect("rank")),
        _ => (vec![1], vec![1], 3),
    };
    let b = Bipartition::from_parts(&plus, &minus);
    let label = AlgebraicLabel::new(b.clone(), n)?;
    let poly: Vec<String> = dimension_polynomial(&b).coeffs().iter().map(q_to_string).collect();
    println!("V_{n}{b}: weight {:?}, dimension {}", label.weight(), label.dimension());
    println!("dimension polynomial, low degree first: {}", poly.join(" "));

    println!("restriction to GL_{} x GL_1:", n - 1);
    for br in pieri_restrict(&b, n)? {
        println!(
            "  V_{}{} ⊗ t^{}  (dim {})",
            n - 1,
            br.label.label,
            br.torus_exponent,
            br.label.dimension()
        );
    }
    for m in 1..n {
        let branches = lr_restrict(&label, m)?;
        let total: u128 = branches
            .iter()
            .map(|br| br.multiplicity as u128 * br.left.dimension() * br.right.dimension())
            .sum();
        println!(
            "restriction to GL_{m} x GL_{}: {} summands, total dimension {total}",
            n - m,
            branches.len()
        );
        for br in branches {
            println!(
                "  {} x ({}·det^{}) ⊠ ({}·det^{})",
                br.multiplicity, br.left.label, br.left_det, br.right.label, br.right_det
            );
        }
    }
    Ok(())
}
