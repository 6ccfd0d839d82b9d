//! Cross-module agreement checks, each pitting two independent computation
//! routes against each other: the series expansion against a naive bivariate
//! power oracle, the classifier against re-identification from fitted
//! recursions, and the named-family identities.

use num_traits::{One, Zero};

use orthogen::classify::{classify, identify_from_recursion, omega_formula, Verdict};
use orthogen::exact::{int, rat, substitute_quadratic, PolyX, Rational};
use orthogen::families::{polys_from_recursion, recursion_of, FamilyId};
use orthogen::favard::{fit, Recursion};
use orthogen::genfun::{coeffs_from_rule, expand, CoeffRule, GFSpec};

/// Naive oracle: expands `sum_k c_k (xz - alpha z^2)^k` by explicit bivariate
/// polynomial powers, no Horner, no shared code with the library path.
/// `grid[i][j]` is the coefficient of `z^i x^j`.
fn naive_expansion(c: &[Rational], alpha: &Rational, order: usize) -> Vec<PolyX> {
    type Grid = Vec<Vec<Rational>>;
    let zero_grid = |rows: usize| vec![vec![Rational::zero(); rows]; rows];

    let mul = |f: &Grid, g: &Grid, order: usize| -> Grid {
        let mut out = zero_grid(order + 1);
        for (i1, row1) in f.iter().enumerate() {
            for (j1, v1) in row1.iter().enumerate() {
                if v1.is_zero() {
                    continue;
                }
                for (i2, row2) in g.iter().enumerate() {
                    if i1 + i2 > order {
                        break;
                    }
                    for (j2, v2) in row2.iter().enumerate() {
                        if v2.is_zero() || j1 + j2 > order {
                            continue;
                        }
                        out[i1 + i2][j1 + j2] += v1 * v2;
                    }
                }
            }
        }
        out
    };

    let mut quadratic = zero_grid(order + 1);
    if order >= 1 {
        quadratic[1][1] = Rational::one();
    }
    if order >= 2 {
        quadratic[2][0] = -alpha;
    }

    let mut acc = zero_grid(order + 1);
    let mut power = zero_grid(order + 1);
    power[0][0] = Rational::one();
    for ck in c.iter().take(order + 1) {
        for (i, row) in power.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                acc[i][j] += ck * v;
            }
        }
        power = mul(&power, &quadratic, order);
    }
    acc.into_iter().map(PolyX::from_coeffs).collect()
}

#[test]
fn expansion_matches_naive_oracle() {
    let cases: Vec<(Vec<Rational>, Rational)> = vec![
        (
            (0..=8).map(|n| rat(1, (1..=n).product::<i64>().max(1))).collect(),
            rat(1, 2),
        ),
        ((0..=8).map(|_| int(1)).collect(), int(1)),
        (
            vec![
                int(1),
                rat(-3, 2),
                int(2),
                rat(5, 7),
                int(-1),
                rat(1, 3),
                int(4),
                rat(-2, 5),
                int(1),
            ],
            rat(-4, 3),
        ),
        (
            vec![int(1), int(2), int(0), int(-1), int(0), int(3), int(1), int(0), int(2)],
            rat(2, 3),
        ),
    ];
    for (c, alpha) in &cases {
        let series = substitute_quadratic(c, alpha, 8);
        let oracle = naive_expansion(c, alpha, 8);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(series.coeff(n), expected, "z^{n} with alpha = {alpha}");
        }
    }
}

#[test]
fn chebyshev_generating_function_identity() {
    // The log-shaped rule at alpha = 1/2 generates exactly the monic
    // Chebyshev-T family from the reference recursion.
    let spec = GFSpec::new(
        CoeffRule::Abc {
            a: int(0),
            b: int(2),
            c: int(2),
        },
        rat(1, 2),
        12,
    )
    .unwrap();
    let from_gf = expand(&spec).unwrap();
    let rec = recursion_of(&FamilyId::ChebyshevT, 12).unwrap();
    let from_rec = polys_from_recursion(&rec, 12).unwrap();
    assert_eq!(from_gf, from_rec);
}

#[test]
fn theorem_round_trip_on_parameter_grid() {
    let lambdas = [rat(-1, 4), rat(1, 2), int(1), rat(3, 2)];
    let bs = [int(1), int(2)];
    let alphas = [rat(1, 2), int(1)];
    for lambda in &lambdas {
        for b in &bs {
            for alpha in &alphas {
                let a = lambda * b;
                let rule = CoeffRule::Abc {
                    a: a.clone(),
                    b: b.clone(),
                    c: int(1),
                };
                let family = expand(&GFSpec::new(rule.clone(), alpha.clone(), 12).unwrap()).unwrap();
                let rec = fit(&family).unwrap();
                assert!(rec.betas().iter().all(Zero::is_zero));
                for n in 1..=11 {
                    assert_eq!(
                        rec.omega(n),
                        &omega_formula(&a, b, alpha, n).unwrap(),
                        "lambda={lambda} b={b} alpha={alpha} n={n}"
                    );
                }
                let classified = classify(&rule, alpha, 12).unwrap();
                let identified = identify_from_recursion(&rec, alpha).unwrap();
                assert_eq!(classified, identified);
                assert_eq!(
                    classified,
                    Verdict::Ultraspherical {
                        lambda: lambda.clone(),
                        b: b.clone(),
                        scale_sq: b / (alpha * int(4)),
                    }
                );
            }
        }
    }
}

#[test]
fn hermite_and_chebyshev_round_trips() {
    for a in [int(1), int(2)] {
        for alpha in [rat(1, 2), int(1)] {
            let rule = CoeffRule::Abc {
                a: a.clone(),
                b: int(0),
                c: int(1),
            };
            let family = expand(&GFSpec::new(rule.clone(), alpha.clone(), 12).unwrap()).unwrap();
            let rec = fit(&family).unwrap();
            let classified = classify(&rule, &alpha, 12).unwrap();
            assert_eq!(
                classified,
                Verdict::Hermite {
                    a: a.clone(),
                    scale_sq: &a / (&alpha * int(2)),
                }
            );
            assert_eq!(identify_from_recursion(&rec, &alpha).unwrap(), classified);
        }
    }
    let rule = CoeffRule::Abc {
        a: int(0),
        b: int(2),
        c: int(2),
    };
    let alpha = rat(1, 2);
    let family = expand(&GFSpec::new(rule.clone(), alpha.clone(), 12).unwrap()).unwrap();
    let rec = fit(&family).unwrap();
    assert_eq!(
        identify_from_recursion(&rec, &alpha).unwrap(),
        classify(&rule, &alpha, 12).unwrap()
    );
}

#[test]
fn identify_is_scale_consistent() {
    // Scaling omega by r^2 and alpha by r^2 leaves lambda (and the branch)
    // unchanged: the ratio rho is scale-free.
    let cases = [
        (FamilyId::Legendre, rat(1, 4)),
        (FamilyId::ChebyshevT, rat(1, 4)),
        (FamilyId::Hermite, rat(1, 2)),
        (FamilyId::Ultraspherical { lambda: rat(3, 2) }, rat(1, 4)),
    ];
    for (id, alpha) in &cases {
        let rec = recursion_of(id, 8).unwrap();
        let base = identify_from_recursion(&rec, alpha).unwrap();
        assert!(base.is_accepted(), "{id:?}");
        for r in [int(2), rat(1, 2), int(3)] {
            let r_sq = &r * &r;
            let scaled = Recursion::new(
                rec.betas().to_vec(),
                rec.omegas().iter().map(|w| w * &r_sq).collect(),
            )
            .unwrap();
            let scaled_verdict = identify_from_recursion(&scaled, &(alpha * &r_sq)).unwrap();
            match (&base, &scaled_verdict) {
                (
                    Verdict::Ultraspherical { lambda: l1, .. },
                    Verdict::Ultraspherical { lambda: l2, .. },
                ) => assert_eq!(l1, l2),
                (Verdict::ChebyshevT { .. }, Verdict::ChebyshevT { .. }) => {}
                (Verdict::Hermite { .. }, Verdict::Hermite { .. }) => {}
                other => panic!("branch changed under rescaling: {other:?}"),
            }
        }
    }
}

#[test]
fn explicit_rule_classifies_like_its_abc_twin() {
    // Materialized coefficient lists go through the d_n fit and land on the
    // same verdict as the rule that produced them.
    let twins = [
        (int(1), int(0), int(1), rat(1, 2)),
        (int(1), int(1), int(1), int(1)),
        (int(0), int(2), int(2), rat(1, 2)),
        (rat(1, 2), int(1), int(1), rat(1, 4)),
    ];
    for (a, b, c, alpha) in &twins {
        let abc = CoeffRule::Abc {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        };
        let values = coeffs_from_rule(&abc, 12).unwrap();
        let explicit = CoeffRule::Explicit(values);
        assert_eq!(
            classify(&abc, alpha, 12).unwrap(),
            classify(&explicit, alpha, 12).unwrap()
        );
    }
}

#[test]
fn moment_cutoff_argument_spot_check() {
    // One more take on the truncation bound, against the factorial norms:
    // m_{2N} of the Hermite recursion needs omega_N but nothing above it.
    let rec = recursion_of(&FamilyId::Hermite, 5).unwrap();
    let moments = orthogen::orthocheck::moments_from_recursion(&rec, 8).unwrap();
    assert_eq!(moments.moment(8), &int(105));
    assert!(orthogen::orthocheck::moments_from_recursion(&rec, 10).is_err());
}

#[test]
fn coefficient_rule_prefix_stability() {
    // c_0..c_k of a rule do not depend on the requested length.
    let rule = CoeffRule::Abc {
        a: rat(-1, 2),
        b: rat(1, 3),
        c: int(2),
    };
    let long = coeffs_from_rule(&rule, 16).unwrap();
    for k in [2usize, 5, 9] {
        let short = coeffs_from_rule(&rule, k).unwrap();
        assert_eq!(short[..], long[..=k]);
    }
}

#[test]
fn one_is_monic_family_of_order_zero() {
    let family = orthogen::genfun::MonicFamily::new(vec![PolyX::one()]).unwrap();
    assert_eq!(family.order(), 0);
    assert!(family.poly(0).leading().is_some_and(One::is_one));
}
