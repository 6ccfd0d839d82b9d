//! Ground-truth reference data for the classical families: their recursion
//! coefficients, forward polynomial generation, and independent moment
//! oracles for their orthogonality measures.
//!
//! The moment oracles deliberately avoid the Jacobi-matrix route (double
//! factorial for the Gaussian, the Bell triangle for the Poisson measure, a
//! running product for the symmetric beta weights), so the moment computation
//! in `orthocheck` has a genuinely independent cross-check.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{int, rat, PolyX, Rational};
use crate::favard::{FavardError, Recursion};
use crate::genfun::MonicFamily;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamiliesError {
    #[error("ultraspherical parameter must satisfy lambda > -1/2 and lambda != 0, got {0}")]
    InvalidLambda(Rational),
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("recursion provides {got} omegas but order {order} needs {need}")]
    RecursionTooShort {
        order: usize,
        need: usize,
        got: usize,
    },
    #[error(transparent)]
    Favard(#[from] FavardError),
}

/// Identifier of a reference family, in the monic normalization on the
/// standard intervals (weight families on [-1, 1], standard Gaussian,
/// Poisson with unit rate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyId {
    Hermite,
    Charlier,
    Legendre,
    Ultraspherical { lambda: Rational },
    ChebyshevT,
    ChebyshevU,
}

impl FamilyId {
    pub fn validate(&self) -> Result<(), FamiliesError> {
        if let FamilyId::Ultraspherical { lambda } = self {
            if lambda.is_zero() || *lambda <= rat(-1, 2) {
                return Err(FamiliesError::InvalidLambda(lambda.clone()));
            }
        }
        Ok(())
    }
}

fn ultraspherical_omega(lambda: &Rational, n: i64) -> Rational {
    // n (n + 2 lambda - 1) / (4 (n + lambda - 1) (n + lambda))
    let n = int(n);
    let numer = &n * (&n + lambda * int(2) - int(1));
    let denom = int(4) * (&n + lambda - int(1)) * (&n + lambda);
    numer / denom
}

/// Recursion coefficients `beta_0..beta_{order-1}`, `omega_1..omega_{order-1}`
/// of the named family, exact and digit-for-digit in the monic normalization.
pub fn recursion_of(id: &FamilyId, order: usize) -> Result<Recursion, FamiliesError> {
    id.validate()?;
    if order < 2 {
        return Err(FamiliesError::OrderTooSmall(order));
    }
    let n_range = 1..order as i64;
    let zeros = vec![Rational::zero(); order];
    let (betas, omegas) = match id {
        FamilyId::Hermite => (zeros, n_range.map(int).collect()),
        FamilyId::Charlier => (
            (0..order as i64).map(|n| int(n + 1)).collect(),
            n_range.map(int).collect(),
        ),
        FamilyId::Legendre => (
            zeros,
            // n^2 / (4 n^2 - 1)
            n_range.map(|n| rat(n * n, 4 * n * n - 1)).collect(),
        ),
        FamilyId::Ultraspherical { lambda } => (
            zeros,
            n_range.map(|n| ultraspherical_omega(lambda, n)).collect(),
        ),
        FamilyId::ChebyshevT => (
            zeros,
            n_range
                .map(|n| if n == 1 { rat(1, 2) } else { rat(1, 4) })
                .collect(),
        ),
        FamilyId::ChebyshevU => {
            let lambda = int(1);
            (
                zeros,
                n_range.map(|n| ultraspherical_omega(&lambda, n)).collect(),
            )
        }
    };
    Ok(Recursion::new(betas, omegas)?)
}

/// Runs the recursion forward: `P_{n+1} = (x - beta_n) P_n - omega_n P_{n-1}`
/// with `P_{-1} = 0`, `P_0 = 1`, producing the monic family `P_0..P_order`.
pub fn polys_from_recursion(rec: &Recursion, order: usize) -> Result<MonicFamily, FamiliesError> {
    if rec.betas().len() < order {
        return Err(FamiliesError::RecursionTooShort {
            order,
            need: order.saturating_sub(1),
            got: rec.omegas().len(),
        });
    }
    let mut polys = vec![PolyX::one()];
    for n in 0..order {
        let prev = &polys[n];
        let mut next = &prev.mul_x() - &prev.scale(rec.beta(n));
        if n >= 1 {
            next = &next - &polys[n - 1].scale(rec.omega(n));
        }
        polys.push(next);
    }
    Ok(MonicFamily::new(polys).expect("forward recursion is monic by construction"))
}

/// Bell numbers by the Bell-triangle dynamic program; `bell(k)` is the k-th
/// moment of the Poisson distribution with unit rate.
fn bell(k: usize) -> Rational {
    let mut row = vec![Rational::one()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for entry in &row {
            let last = next.last().unwrap().clone();
            next.push(last + entry);
        }
        row = next;
    }
    row[0].clone()
}

fn symmetric_beta_even_moment(lambda: &Rational, j: usize) -> Rational {
    // m_{2j} = prod_{i=1..j} (2i - 1) / (2 lambda + 2i)
    let mut m = Rational::one();
    for i in 1..=j as i64 {
        m = m * int(2 * i - 1) / (lambda * int(2) + int(2 * i));
    }
    m
}

/// Normalized `k`-th moment of the family's orthogonality measure, computed
/// without reference to the recursion: Gaussian moments are double
/// factorials, Poisson moments are Bell numbers, and the symmetric beta
/// weights `(1 - x^2)^(lambda - 1/2)` have a one-line running product.
pub fn moment_oracle(id: &FamilyId, k: usize) -> Rational {
    let symmetric = |lambda: &Rational| {
        if k % 2 == 1 {
            Rational::zero()
        } else {
            symmetric_beta_even_moment(lambda, k / 2)
        }
    };
    match id {
        FamilyId::Hermite => {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                // (2j - 1)!!
                (1..=k as i64 / 2).fold(Rational::one(), |acc, i| acc * int(2 * i - 1))
            }
        }
        FamilyId::Charlier => bell(k),
        FamilyId::Legendre => symmetric(&rat(1, 2)),
        FamilyId::Ultraspherical { lambda } => symmetric(lambda),
        FamilyId::ChebyshevT => symmetric(&Rational::zero()),
        FamilyId::ChebyshevU => symmetric(&int(1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::favard::fit;

    fn poly(cs: &[(i64, i64)]) -> PolyX {
        PolyX::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn hermite_recursion_values() {
        let rec = recursion_of(&FamilyId::Hermite, 4).unwrap();
        assert_eq!(rec.betas(), &vec![int(0); 4][..]);
        assert_eq!(rec.omegas(), &[int(1), int(2), int(3)]);
    }

    #[test]
    fn legendre_recursion_values() {
        let rec = recursion_of(&FamilyId::Legendre, 4).unwrap();
        assert_eq!(rec.omegas(), &[rat(1, 3), rat(4, 15), rat(9, 35)]);
    }

    #[test]
    fn chebyshev_t_recursion_values() {
        let rec = recursion_of(&FamilyId::ChebyshevT, 4).unwrap();
        assert_eq!(rec.omegas(), &[rat(1, 2), rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn charlier_recursion_values() {
        let rec = recursion_of(&FamilyId::Charlier, 4).unwrap();
        assert_eq!(rec.betas(), &[int(1), int(2), int(3), int(4)]);
        assert_eq!(rec.omegas(), &[int(1), int(2), int(3)]);
    }

    #[test]
    fn legendre_is_ultraspherical_half() {
        let legendre = recursion_of(&FamilyId::Legendre, 12).unwrap();
        let ultra = recursion_of(&FamilyId::Ultraspherical { lambda: rat(1, 2) }, 12).unwrap();
        assert_eq!(legendre, ultra);
    }

    #[test]
    fn chebyshev_u_is_ultraspherical_one() {
        let u = recursion_of(&FamilyId::ChebyshevU, 12).unwrap();
        let ultra = recursion_of(&FamilyId::Ultraspherical { lambda: int(1) }, 12).unwrap();
        assert_eq!(u, ultra);
        assert_eq!(u.omegas(), &vec![rat(1, 4); 11][..]);
    }

    #[test]
    fn invalid_lambda_rejected() {
        for lambda in [int(0), rat(-1, 2), int(-3)] {
            assert!(recursion_of(&FamilyId::Ultraspherical { lambda }, 4).is_err());
        }
    }

    #[test]
    fn forward_generation_hermite() {
        let rec = recursion_of(&FamilyId::Hermite, 3).unwrap();
        let fam = polys_from_recursion(&rec, 3).unwrap();
        assert_eq!(fam.poly(2), &poly(&[(-1, 1), (0, 1), (1, 1)]));
        assert_eq!(fam.poly(3), &poly(&[(0, 1), (-3, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn forward_generation_chebyshev_t() {
        let rec = recursion_of(&FamilyId::ChebyshevT, 3).unwrap();
        let fam = polys_from_recursion(&rec, 3).unwrap();
        assert_eq!(fam.poly(2), &poly(&[(-1, 2), (0, 1), (1, 1)]));
        assert_eq!(fam.poly(3), &poly(&[(0, 1), (-3, 4), (0, 1), (1, 1)]));
    }

    #[test]
    fn forward_generation_unit_omegas() {
        let rec = Recursion::new(vec![int(0), int(0)], vec![int(1)]).unwrap();
        let fam = polys_from_recursion(&rec, 2).unwrap();
        assert_eq!(fam.poly(2), &poly(&[(-1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn fit_round_trip_all_families() {
        let ids = [
            FamilyId::Hermite,
            FamilyId::Charlier,
            FamilyId::Legendre,
            FamilyId::Ultraspherical { lambda: rat(3, 2) },
            FamilyId::Ultraspherical { lambda: rat(-1, 4) },
            FamilyId::ChebyshevT,
            FamilyId::ChebyshevU,
        ];
        for id in &ids {
            for order in [2usize, 5, 12] {
                let rec = recursion_of(id, order).unwrap();
                let fam = polys_from_recursion(&rec, order).unwrap();
                assert_eq!(fit(&fam).unwrap(), rec, "{id:?} order {order}");
            }
        }
    }

    #[test]
    fn gaussian_moments() {
        let m: Vec<_> = (0..=6).map(|k| moment_oracle(&FamilyId::Hermite, k)).collect();
        assert_eq!(m, vec![int(1), int(0), int(1), int(0), int(3), int(0), int(15)]);
    }

    #[test]
    fn arcsine_moments() {
        let m: Vec<_> = (0..=6)
            .map(|k| moment_oracle(&FamilyId::ChebyshevT, k))
            .collect();
        assert_eq!(
            m,
            vec![int(1), int(0), rat(1, 2), int(0), rat(3, 8), int(0), rat(5, 16)]
        );
    }

    #[test]
    fn bell_moments() {
        let m: Vec<_> = (0..=5).map(|k| moment_oracle(&FamilyId::Charlier, k)).collect();
        assert_eq!(m, vec![int(1), int(1), int(2), int(5), int(15), int(52)]);
    }

    #[test]
    fn uniform_and_semicircle_moments() {
        // Legendre measure is uniform on [-1, 1]: m_{2j} = 1/(2j + 1).
        assert_eq!(moment_oracle(&FamilyId::Legendre, 4), rat(1, 5));
        assert_eq!(moment_oracle(&FamilyId::Legendre, 6), rat(1, 7));
        // Chebyshev-U measure is the semicircle on [-1, 1]: Catalan / 4^j.
        assert_eq!(moment_oracle(&FamilyId::ChebyshevU, 4), rat(1, 8));
        assert_eq!(moment_oracle(&FamilyId::ChebyshevU, 6), rat(5, 64));
    }

    #[test]
    fn ultraspherical_omega_matches_theorem_formula() {
        // The classical ultraspherical recursion and the omega formula from
        // the coefficient analysis agree: a = lambda b, alpha = b/4.
        let b = int(1);
        for lambda in [rat(-1, 4), rat(1, 2), int(1), rat(3, 2)] {
            let alpha = &b / int(4);
            let a = &lambda * &b;
            for n in 1..12 {
                let direct = ultraspherical_omega(&lambda, n);
                let derived = crate::classify::omega_formula(&a, &b, &alpha, n as usize).unwrap();
                assert_eq!(direct, derived, "lambda={lambda} n={n}");
            }
        }
    }
}
