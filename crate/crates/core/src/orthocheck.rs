//! Exact orthogonality verification: measure moments from a recursion via the
//! truncated Jacobi matrix, Gram matrices from moments, and the
//! diagonality / norm-product report.
//!
//! No measure is ever constructed. The moment functional of a recursion is
//! read off the tridiagonal matrix with diagonal `beta`, subdiagonal 1 and
//! superdiagonal `omega`: `m_k` is the `(0,0)` entry of its k-th power,
//! computed by repeated matrix-vector products against the first basis
//! vector.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::favard::Recursion;
use crate::genfun::MonicFamily;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("moment sequence must be normalized: m_0 = 1")]
    NotNormalized,
    #[error("moments up to order {need} required, got {got}")]
    InsufficientMoments { need: usize, got: usize },
    #[error("recursion provides {got} omegas but moments to order {k_max} need {need}")]
    RecursionTooShort {
        k_max: usize,
        need: usize,
        got: usize,
    },
}

/// Moments `m_0..m_K` of a normalized measure (`m_0 = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSeq {
    moments: Vec<Rational>,
}

impl MomentSeq {
    pub fn new(moments: Vec<Rational>) -> Result<Self, OrthoError> {
        if moments.first().is_none_or(|m| !m.is_one()) {
            return Err(OrthoError::NotNormalized);
        }
        Ok(MomentSeq { moments })
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn moment(&self, k: usize) -> &Rational {
        &self.moments[k]
    }

    /// Highest moment order available.
    pub fn max_order(&self) -> usize {
        self.moments.len() - 1
    }
}

/// Moments `m_0..m_k_max` of the recursion's measure.
///
/// The matrix is truncated at `ceil(k_max/2) + 1` rows: a length-k walk from
/// index 0 back to index 0 never climbs above `k/2`, so larger truncations
/// cannot change the result.
pub fn moments_from_recursion(rec: &Recursion, k_max: usize) -> Result<MomentSeq, OrthoError> {
    let cutoff = k_max.div_ceil(2);
    if rec.omegas().len() < cutoff {
        return Err(OrthoError::RecursionTooShort {
            k_max,
            need: cutoff,
            got: rec.omegas().len(),
        });
    }
    let size = cutoff + 1;
    let mut v = vec![Rational::zero(); size];
    v[0] = Rational::one();
    let mut moments = Vec::with_capacity(k_max + 1);
    moments.push(Rational::one());
    for _ in 1..=k_max {
        let mut w = vec![Rational::zero(); size];
        for (i, wi) in w.iter_mut().enumerate() {
            let mut acc = rec.beta(i) * &v[i];
            if i > 0 {
                acc += &v[i - 1];
            }
            if i + 1 < size {
                acc += rec.omega(i + 1) * &v[i + 1];
            }
            *wi = acc;
        }
        v = w;
        moments.push(v[0].clone());
    }
    Ok(MomentSeq { moments })
}

/// Gram matrix `G[j][k] = sum_{r,s} [x^r]P_j [x^s]P_k m_{r+s}`, the matrix of
/// pairwise inner products against the moment functional. Symmetric and
/// exact; needs moments up to twice the family order.
#[allow(clippy::needless_range_loop)]
pub fn gram(family: &MonicFamily, mom: &MomentSeq) -> Result<Vec<Vec<Rational>>, OrthoError> {
    let order = family.order();
    if mom.max_order() < 2 * order {
        return Err(OrthoError::InsufficientMoments {
            need: 2 * order,
            got: mom.max_order(),
        });
    }
    let size = order + 1;
    let mut g = vec![vec![Rational::zero(); size]; size];
    for j in 0..size {
        for k in j..size {
            let mut acc = Rational::zero();
            for (r, pr) in family.poly(j).coeffs().iter().enumerate() {
                if pr.is_zero() {
                    continue;
                }
                for (s, ps) in family.poly(k).coeffs().iter().enumerate() {
                    if ps.is_zero() {
                        continue;
                    }
                    acc += pr * ps * mom.moment(r + s);
                }
            }
            g[k][j] = acc.clone();
            g[j][k] = acc;
        }
    }
    Ok(g)
}

/// Outcome of an orthogonality verification. On success `diagonal` holds the
/// squared norms `<P_n, P_n>`; on failure `first_failure` names the first
/// offending Gram entry (row-major scan) and `value` its actual value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthReport {
    pub pass: bool,
    pub order: usize,
    pub diagonal: Vec<Rational>,
    pub first_failure: Option<(usize, usize)>,
    pub value: Option<Rational>,
}

/// Checks that the family is orthogonal under the moment functional of the
/// recursion, with the norms dictated by it: off-diagonal Gram entries must
/// vanish, and the n-th diagonal entry must equal `prod_{i<=n} omega_i` and
/// be positive.
///
/// The recursion must carry at least `family.order()` omegas — one more than
/// a fit of the family itself yields — because the top moment `m_{2N}`
/// already feels `omega_N`.
#[allow(clippy::needless_range_loop)]
pub fn verify_orthogonality(
    family: &MonicFamily,
    rec: &Recursion,
) -> Result<OrthReport, OrthoError> {
    let order = family.order();
    if rec.omegas().len() < order {
        return Err(OrthoError::RecursionTooShort {
            k_max: 2 * order,
            need: order,
            got: rec.omegas().len(),
        });
    }
    let mom = moments_from_recursion(rec, 2 * order)?;
    let g = gram(family, &mom)?;

    let mut expected_diag = Vec::with_capacity(order + 1);
    let mut product = Rational::one();
    expected_diag.push(product.clone());
    for n in 1..=order {
        product *= rec.omega(n);
        expected_diag.push(product.clone());
    }

    let fail = |j: usize, k: usize, value: &Rational| OrthReport {
        pass: false,
        order,
        diagonal: Vec::new(),
        first_failure: Some((j, k)),
        value: Some(value.clone()),
    };
    for j in 0..=order {
        for k in 0..=order {
            let entry = &g[j][k];
            if j == k {
                if entry != &expected_diag[j] || !entry.is_positive() {
                    return Ok(fail(j, k, entry));
                }
            } else if !entry.is_zero() {
                return Ok(fail(j, k, entry));
            }
        }
    }
    Ok(OrthReport {
        pass: true,
        order,
        diagonal: expected_diag,
        first_failure: None,
        value: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, PolyX};
    use crate::families::{moment_oracle, polys_from_recursion, recursion_of, FamilyId};

    #[test]
    fn hermite_moments() {
        let rec = recursion_of(&FamilyId::Hermite, 4).unwrap();
        let m = moments_from_recursion(&rec, 6).unwrap();
        assert_eq!(
            m.moments(),
            &[int(1), int(0), int(1), int(0), int(3), int(0), int(15)]
        );
    }

    #[test]
    fn chebyshev_t_moments() {
        let rec = recursion_of(&FamilyId::ChebyshevT, 4).unwrap();
        let m = moments_from_recursion(&rec, 6).unwrap();
        assert_eq!(
            m.moments(),
            &[int(1), int(0), rat(1, 2), int(0), rat(3, 8), int(0), rat(5, 16)]
        );
    }

    #[test]
    fn charlier_moments() {
        let rec = recursion_of(&FamilyId::Charlier, 4).unwrap();
        let m = moments_from_recursion(&rec, 5).unwrap();
        assert_eq!(m.moments(), &[int(1), int(1), int(2), int(5), int(15), int(52)]);
    }

    #[test]
    fn truncation_size_does_not_matter() {
        // Same moments from a much larger matrix: the cutoff argument.
        let rec = recursion_of(&FamilyId::Charlier, 13).unwrap();
        let lean = moments_from_recursion(&rec, 12).unwrap();
        let roomy_rec = recursion_of(&FamilyId::Charlier, 26).unwrap();
        let roomy = moments_from_recursion(&roomy_rec, 12).unwrap();
        assert_eq!(lean, roomy);
    }

    #[test]
    fn recursion_too_short_for_moments() {
        let rec = recursion_of(&FamilyId::Hermite, 3).unwrap();
        assert!(matches!(
            moments_from_recursion(&rec, 12),
            Err(OrthoError::RecursionTooShort { .. })
        ));
    }

    #[test]
    fn moment_seq_must_be_normalized() {
        assert!(MomentSeq::new(vec![int(2)]).is_err());
        assert!(MomentSeq::new(vec![]).is_err());
    }

    #[test]
    fn gram_hermite_diagonal_factorials() {
        let rec = recursion_of(&FamilyId::Hermite, 4).unwrap();
        let fam = polys_from_recursion(&rec, 3).unwrap();
        let mom = moments_from_recursion(&rec, 6).unwrap();
        let g = gram(&fam, &mom).unwrap();
        for (j, row) in g.iter().enumerate() {
            for (k, entry) in row.iter().enumerate() {
                let expected = if j == k {
                    (1..=j as i64).fold(int(1), |acc, i| acc * int(i))
                } else {
                    int(0)
                };
                assert_eq!(entry, &expected, "({j},{k})");
            }
        }
    }

    #[test]
    fn gram_two_by_two() {
        let fam = MonicFamily::new(vec![PolyX::one(), PolyX::x()]).unwrap();
        let mom = MomentSeq::new(vec![int(1), int(0), int(1)]).unwrap();
        let g = gram(&fam, &mom).unwrap();
        assert_eq!(g, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn gram_chebyshev_t_diagonal() {
        let rec = recursion_of(&FamilyId::ChebyshevT, 3).unwrap();
        let fam = polys_from_recursion(&rec, 2).unwrap();
        let mom = moments_from_recursion(&rec, 4).unwrap();
        let g = gram(&fam, &mom).unwrap();
        assert_eq!(g[0][0], int(1));
        assert_eq!(g[1][1], rat(1, 2));
        assert_eq!(g[2][2], rat(1, 8));
        assert_eq!(g[0][2], int(0));
    }

    #[test]
    fn gram_insufficient_moments() {
        let fam = MonicFamily::new(vec![PolyX::one(), PolyX::x()]).unwrap();
        let mom = MomentSeq::new(vec![int(1), int(0)]).unwrap();
        assert!(matches!(
            gram(&fam, &mom),
            Err(OrthoError::InsufficientMoments { need: 2, got: 1 })
        ));
    }

    #[test]
    fn verify_hermite_passes() {
        let rec = recursion_of(&FamilyId::Hermite, 7).unwrap();
        let fam = polys_from_recursion(&rec, 6).unwrap();
        let report = verify_orthogonality(&fam, &rec).unwrap();
        assert!(report.pass);
        let factorials: Vec<_> = (0..=6)
            .map(|n| (1..=n).fold(int(1), |acc, i| acc * int(i)))
            .collect();
        assert_eq!(report.diagonal, factorials);
    }

    #[test]
    fn verify_legendre_norms() {
        let rec = recursion_of(&FamilyId::Legendre, 5).unwrap();
        let fam = polys_from_recursion(&rec, 4).unwrap();
        let report = verify_orthogonality(&fam, &rec).unwrap();
        assert!(report.pass);
        assert_eq!(
            report.diagonal,
            vec![int(1), rat(1, 3), rat(4, 45), rat(4, 175), rat(64, 11025)]
        );
    }

    #[test]
    fn verify_flags_corrupted_family() {
        // P_2 = x^2 instead of x^2 - 1 against the Hermite recursion:
        // <P_0, P_2> = m_2 = 1 != 0.
        let fam = MonicFamily::new(vec![
            PolyX::one(),
            PolyX::x(),
            PolyX::from_coeffs(vec![int(0), int(0), int(1)]),
        ])
        .unwrap();
        let rec = recursion_of(&FamilyId::Hermite, 3).unwrap();
        let report = verify_orthogonality(&fam, &rec).unwrap();
        assert!(!report.pass);
        assert_eq!(report.first_failure, Some((0, 2)));
        assert_eq!(report.value, Some(int(1)));
    }

    #[test]
    fn moments_match_oracles_to_twelve() {
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
            let rec = recursion_of(id, 7).unwrap();
            let m = moments_from_recursion(&rec, 12).unwrap();
            for k in 0..=12 {
                assert_eq!(m.moment(k), &moment_oracle(id, k), "{id:?} k={k}");
            }
        }
    }
}
