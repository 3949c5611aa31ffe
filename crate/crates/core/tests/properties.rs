mod common;

use num_integer::Integer;
use proptest::prelude::*;

use superrigid::depth::{depth, IntegralRep, DEFAULT_CYCLOTOMIC_CAP};
use superrigid::linalg::{q, Q};
use superrigid::partition::{lr_coefficient, Bipartition, Partition};
use superrigid::vic::{ExplicitModule, ModuleExpr, ModuleFile, VicModule};
use superrigid::weights::{dimension_polynomial, label_dimension, lr_restrict, pieri_restrict, AlgebraicLabel};

fn partition(max_len: usize, max_part: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.retain(|&x| x > 0);
        v
    })
}

/// A bipartition together with a rank that fits it, plus `slack` spare rows.
fn label(slack: usize) -> impl Strategy<Value = (Vec<u32>, Vec<u32>, usize)> {
    (partition(2, 3), partition(2, 3), 0..=slack).prop_map(|(p, m, extra)| {
        let n = (p.len() + m.len()).max(1) + extra;
        (p, m, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_dimension_counts_gt_patterns((p, m, n) in label(2)) {
        let b = Bipartition::from_parts(&p, &m);
        let gt = common::gt_pattern_count(&common::weight(&p, &m, n));
        prop_assert_eq!(label_dimension(&b, n).unwrap(), gt);
    }

    #[test]
    fn dimension_polynomial_interpolates((p, m, n) in label(3)) {
        let b = Bipartition::from_parts(&p, &m);
        let value = dimension_polynomial(&b).eval(&q(n as i64));
        prop_assert_eq!(value, Q::from_integer((label_dimension(&b, n).unwrap() as i64).into()));
    }

    #[test]
    fn duality_preserves_dimension((p, m, n) in label(2)) {
        let b = Bipartition::from_parts(&p, &m);
        prop_assert_eq!(label_dimension(&b, n).unwrap(), label_dimension(&b.swapped(), n).unwrap());
    }

    #[test]
    fn pieri_conserves_dimension((p, m, n) in label(2)) {
        let b = Bipartition::from_parts(&p, &m);
        let n = n.max(b.length() + 1);
        let total: u128 = pieri_restrict(&b, n).unwrap().iter().map(|br| br.label.dimension()).sum();
        prop_assert_eq!(total, label_dimension(&b, n).unwrap());
    }

    #[test]
    fn lr_conserves_dimension((p, m, n) in label(2), k in 1usize..4) {
        let n = n.max(2);
        let m_block = 1 + k % (n - 1);
        let l = AlgebraicLabel::new(Bipartition::from_parts(&p, &m), n).unwrap();
        let total: u128 = lr_restrict(&l, m_block)
            .unwrap()
            .iter()
            .map(|br| br.multiplicity as u128 * br.left.dimension() * br.right.dimension())
            .sum();
        prop_assert_eq!(total, l.dimension());
    }

    #[test]
    fn lr_coefficient_is_symmetric(a in partition(3, 3), b in partition(3, 3)) {
        // every ν in the product s_λ s_μ, against both orders of the factors
        let (la, mu) = (Partition::from_parts(&a), Partition::from_parts(&b));
        let target = a.iter().sum::<u32>() + b.iter().sum::<u32>();
        let nvars = (a.len() + b.len()).max(1);
        let product = common::mono_mul(&common::schur_monomial(&a, nvars), &common::schur_monomial(&b, nvars));
        for (nu, c) in common::schur_expand(&product, nvars) {
            let nu = Partition::from_parts(&nu);
            prop_assert_eq!(nu.size(), target);
            prop_assert_eq!(lr_coefficient(&nu, &la, &mu), c as u64);
            prop_assert_eq!(lr_coefficient(&nu, &mu, &la), c as u64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn depth_of_dual_and_tensor(p in prop::sample::select(vec![2u64, 3]), q2 in prop::sample::select(vec![2u64, 3])) {
        let a = IntegralRep::projective_sum_zero(3, p).unwrap();
        let b = IntegralRep::projective_sum_zero(3, q2).unwrap();
        let da = depth(&a, DEFAULT_CYCLOTOMIC_CAP).unwrap();
        let db = depth(&b, DEFAULT_CYCLOTOMIC_CAP).unwrap();
        prop_assert_eq!(depth(&a.dual().unwrap(), DEFAULT_CYCLOTOMIC_CAP).unwrap(), da);
        let dt = depth(&a.tensor(&b).unwrap(), DEFAULT_CYCLOTOMIC_CAP).unwrap();
        prop_assert_eq!(da.lcm(&db) % dt, 0);
        let ds = depth(&a.direct_sum(&b).unwrap(), DEFAULT_CYCLOTOMIC_CAP).unwrap();
        prop_assert_eq!(ds, da.lcm(&db));
    }

    #[test]
    fn explicit_form_round_trips(p in prop::sample::select(vec![2u64, 3, 5]), twist in any::<bool>()) {
        let mut v = VicModule::sum_zero(p, (2, 3)).unwrap();
        if twist {
            v = v.inverse_transpose_twist();
        }
        let file = ModuleFile {
            window: None,
            module: ModuleExpr::Explicit(ExplicitModule::from_module(&v)),
        };
        let text = serde_json::to_string(&file).unwrap();
        let back = ModuleFile::from_json(&text).unwrap().build(None).unwrap();
        prop_assert_eq!(back.dims(), v.dims());
        prop_assert_eq!(back.maps(), v.maps());
    }
}
