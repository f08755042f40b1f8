use cumdev_core::cumulants::{
    bell_number, cumulants_to_moments, enumerate_partitions, moments_to_cumulants, stirling2, CumulantSequence,
    MomentSequence,
};
use cumdev_core::{CumulantsExact, MomentsExact};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Raw moments 1..=order of a finite law with rational atoms.
fn law_moments(atoms: &[(i64, i64)], order: usize) -> MomentsExact {
    let total: i64 = atoms.iter().map(|a| a.1).sum();
    let vals = (1..=order as i32)
        .map(|j| {
            atoms.iter().fold(BigRational::zero(), |acc, &(x, w)| {
                acc + num_traits::pow(q(x, 1), j as usize) * q(w, total)
            })
        })
        .collect();
    MomentSequence::new(vals).unwrap()
}

fn convolve(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &(x, w) in a {
        for &(y, v) in b {
            out.push((x + y, w * v));
        }
    }
    out
}

fn atoms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-5i64..=5, 1i64..=6), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn float_roundtrip_centered(g2 in 0.5f64..2.0, rest in prop::collection::vec(-1.0f64..1.0, 0..=6)) {
        let mut c = vec![0.0, g2];
        c.extend(rest);
        let seq = CumulantSequence::new(c.clone()).unwrap();
        let m = cumulants_to_moments(&seq).unwrap();
        let back = moments_to_cumulants(&m).unwrap();
        let scale = m.values().iter().fold(1.0f64, |s, v| s.max(v.abs()));
        for (a, b) in c.iter().zip(back.values()) {
            prop_assert!((a - b).abs() <= 1e-12 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn exact_roundtrip(nums in prop::collection::vec((-20i64..20, 1i64..9), 1..=8)) {
        let c: Vec<BigRational> = nums.iter().map(|&(n, d)| q(n, d)).collect();
        let seq = CumulantsExact::new(c.clone()).unwrap();
        let back = moments_to_cumulants(&cumulants_to_moments(&seq).unwrap()).unwrap();
        prop_assert_eq!(back.values(), &c[..]);
    }

    #[test]
    fn additive_over_independent_sums(a in atoms(), b in atoms()) {
        let order = 6;
        let ca = moments_to_cumulants(&law_moments(&a, order)).unwrap();
        let cb = moments_to_cumulants(&law_moments(&b, order)).unwrap();
        let cs = moments_to_cumulants(&law_moments(&convolve(&a, &b), order)).unwrap();
        for j in 0..order {
            prop_assert_eq!(&cs.values()[j], &(ca.values()[j].clone() + cb.values()[j].clone()));
        }
    }

    #[test]
    fn homogeneous_and_shift_invariant(a in atoms(), c in -3i64..=3, s in -4i64..=4) {
        let order = 6;
        let base = moments_to_cumulants(&law_moments(&a, order)).unwrap();
        let scaled: Vec<_> = a.iter().map(|&(x, w)| (c * x, w)).collect();
        let cs = moments_to_cumulants(&law_moments(&scaled, order)).unwrap();
        let shifted: Vec<_> = a.iter().map(|&(x, w)| (x + s, w)).collect();
        let ct = moments_to_cumulants(&law_moments(&shifted, order)).unwrap();
        for j in 0..order {
            let cj = num_traits::pow(q(c, 1), j + 1);
            prop_assert_eq!(&cs.values()[j], &(cj * base.values()[j].clone()));
            if j == 0 {
                prop_assert_eq!(&ct.values()[0], &(base.values()[0].clone() + q(s, 1)));
            } else {
                prop_assert_eq!(&ct.values()[j], &base.values()[j]);
            }
        }
    }
}

#[test]
fn bell_and_stirling() {
    let bell = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    for (j, &b) in bell.iter().enumerate() {
        assert_eq!(bell_number(j).unwrap(), b);
        if j >= 1 {
            assert_eq!(enumerate_partitions(j).unwrap().len() as u128, b);
            assert_eq!((1..=j).map(|k| stirling2(j, k).unwrap()).sum::<u128>(), b);
        }
    }
}

#[test]
fn gaussian_has_no_higher_cumulants() {
    // N(0, 1): m_j = (j-1)!! for even j.
    let m: Vec<BigRational> = (1..=10)
        .map(|j: i64| if j % 2 == 1 { BigRational::zero() } else { q((1..j).step_by(2).product(), 1) })
        .collect();
    let c = moments_to_cumulants(&MomentsExact::new(m).unwrap()).unwrap();
    for (j, v) in c.values().iter().enumerate() {
        assert_eq!(v, &if j == 1 { BigRational::one() } else { BigRational::zero() });
    }
}
