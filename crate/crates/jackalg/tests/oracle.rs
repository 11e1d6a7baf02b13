//! Integration tests for the brute-force ground truth.

mod common;

use common::{alphas, field, p};
use jackalg::algebra::{factorial, q_big, q_int, Q};
use jackalg::oracle::{
    all_matchings, count_factorizations, count_matchings, count_matchings_with, jack_table,
    matching_type, reference_matchings, relabel, theta_hook_closed_form, theta_oracle,
};
use jackalg::partitions::{enumerate, hook_products, Partition};
use jackalg::structure::c_constant;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn first_jack_polynomials() {
    for a in alphas() {
        let t = jack_table(1, &a);
        assert_eq!(t.theta(&p(&[1]), &p(&[1])), Q::one());
        assert_eq!(t.norm(&p(&[1])), &a);
        let t = jack_table(2, &a);
        assert_eq!(t.theta(&p(&[1, 1]), &p(&[2])), Q::one());
        assert_eq!(t.theta(&p(&[2]), &p(&[2])), a.clone());
        assert_eq!(t.theta(&p(&[1, 1]), &p(&[1, 1])), Q::one());
        assert_eq!(t.theta(&p(&[2]), &p(&[1, 1])), -Q::one());
        let two = q_int(2);
        assert_eq!(t.norm(&p(&[2])), &(&two * &a * &a * (&a + Q::one())));
        assert_eq!(t.norm(&p(&[1, 1])), &(&two * &a * (&a + Q::one())));
    }
}

#[test]
fn schur_case_recovers_symmetric_group_characters() {
    // theta_mu(lambda) = n! chi^lambda(mu) / (dim(lambda) z_mu) at alpha = 1.
    let chars: [(&[u32], [i64; 3]); 3] = [
        (&[3], [1, 1, 1]),
        (&[2, 1], [2, 0, -1]),
        (&[1, 1, 1], [1, -1, 1]),
    ];
    let classes: [&[u32]; 3] = [&[1, 1, 1], &[2, 1], &[3]];
    for (lambda, chi) in chars {
        let dim = chi[0];
        for (mu, &x) in classes.iter().zip(&chi) {
            let mu = p(mu);
            let expected = q_int(6 * x) / (q_int(dim) * q_big(mu.z()));
            assert_eq!(
                theta_oracle(&mu, &p(lambda), &q_int(1)),
                expected,
                "{mu} {lambda:?}"
            );
        }
    }
}

#[test]
fn norms_are_hook_products_and_normalization_holds() {
    for a in alphas() {
        for n in 1..=7 {
            let t = jack_table(n, &a);
            let ones = t.index(&Partition::ones(n)).unwrap();
            for (i, l) in t.partitions.iter().enumerate() {
                assert_eq!(t.norms[i], hook_products(l, &a).j, "{l} at {a}");
                assert_eq!(t.m_coords[i][ones], q_big(factorial(n)));
                assert!(t.theta(&Partition::ones(n), l).is_one());
            }
        }
    }
}

#[test]
fn orthogonality_relation() {
    for a in alphas() {
        for n in 1..=7 {
            let t = jack_table(n, &a);
            for mu in &t.partitions {
                for nu in &t.partitions {
                    let s: Q = t
                        .partitions
                        .iter()
                        .zip(&t.norms)
                        .map(|(l, j)| t.theta(mu, l) * t.theta(nu, l) / j)
                        .sum();
                    let expected = if mu == nu {
                        (q_big(mu.z()) * num_traits::pow(a.clone(), mu.length() as usize)).recip()
                    } else {
                        Q::zero()
                    };
                    assert_eq!(s, expected, "{mu} {nu} at {a}");
                }
            }
        }
    }
}

#[test]
fn hook_shape_closed_form() {
    for a in alphas() {
        for n in 2..=7 {
            let hook = p(&[n - 1, 1]);
            for mu in enumerate(n) {
                assert_eq!(
                    theta_oracle(&mu, &hook, &a),
                    theta_hook_closed_form(&mu, &a),
                    "{mu}"
                );
            }
        }
    }
}

#[test]
fn factorization_examples() {
    for n in 1..=5 {
        let one = Partition::ones(n);
        assert_eq!(count_factorizations(&one, &one, &one), 1);
    }
    assert_eq!(count_factorizations(&p(&[2, 1]), &p(&[2, 1]), &p(&[3])), 3);
    for (k, extra) in [(2u32, 0u32), (2, 2), (3, 1), (4, 1), (3, 2)] {
        let mu = Partition::ones(extra).with_part(k);
        let expected = jackalg::algebra::binomial((k + extra) as i64, k as i64) * factorial(k - 1);
        let got = count_factorizations(&mu, &mu, &Partition::ones(k + extra));
        assert_eq!(BigInt::from(got), expected, "{mu}");
    }
}

#[test]
fn matching_examples() {
    assert_eq!(all_matchings(4).len(), 105);
    for n in 1..=4 {
        let one = Partition::ones(n);
        assert_eq!(count_matchings(&one, &one, &one), 1);
    }
    for (k, extra) in [(2u32, 0u32), (2, 1), (3, 0), (2, 2), (3, 1), (4, 0)] {
        let mu = Partition::ones(extra).with_part(k);
        let expected = jackalg::algebra::binomial((k + extra) as i64, k as i64)
            * BigInt::from(2u64.pow(k - 1))
            * factorial(k - 1);
        let got = count_matchings(&mu, &mu, &Partition::ones(k + extra));
        assert_eq!(BigInt::from(got), expected, "{mu}");
    }
    for n in 1..=4 {
        for pi in enumerate(n) {
            let (f1, f2) = reference_matchings(&pi);
            assert_eq!(matching_type(&f1, &f2), pi);
        }
    }
}

#[test]
fn matching_counts_do_not_depend_on_the_reference_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=4 {
        let all = all_matchings(n);
        let ps = enumerate(n as u32);
        for pi in &ps {
            let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = all
                .iter()
                .flat_map(|a| all.iter().map(move |b| (a, b)))
                .filter(|(a, b)| matching_type(a, b) == *pi)
                .collect();
            for _ in 0..3 {
                let (f1, f2) = pairs.choose(&mut rng).unwrap();
                for mu in &ps {
                    for nu in &ps {
                        assert_eq!(
                            count_matchings_with(f1, f2, mu, nu),
                            count_matchings(mu, nu, pi)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn counts_equal_structure_constants() {
    let f1 = field(&q_int(1));
    let f2 = field(&q_int(2));
    for n in 1..=4 {
        let ps = enumerate(n);
        for mu in &ps {
            for nu in &ps {
                for pi in &ps {
                    let c1 = c_constant(mu, nu, pi, &f1).unwrap();
                    let c2 = c_constant(mu, nu, pi, &f2).unwrap();
                    let fact = q_int(count_factorizations(mu, nu, pi) as i64);
                    let mat = q_int(count_matchings(mu, nu, pi) as i64);
                    assert_eq!(c1.as_rational(), Some(&fact), "{mu} {nu} {pi}");
                    assert_eq!(c2.as_rational(), Some(&mat), "{mu} {nu} {pi}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabelling_preserves_matching_counts(seed in any::<u64>(), which in 0usize..5) {
        let pi = enumerate(4)[which].clone();
        let (f1, f2) = reference_matchings(&pi);
        let mut sigma: Vec<usize> = (0..8).collect();
        sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let (g1, g2) = (relabel(&f1, &sigma), relabel(&f2, &sigma));
        prop_assert_eq!(matching_type(&g1, &g2), pi.clone());
        for mu in enumerate(4) {
            for nu in enumerate(4) {
                prop_assert_eq!(count_matchings_with(&g1, &g2, &mu, &nu), count_matchings(&mu, &nu, &pi));
            }
        }
    }
}
