//! Three-term recursion fitting and checking.
//!
//! A monic family is orthogonal with respect to some probability measure
//! exactly when it satisfies `x P_n = P_{n+1} + beta_n P_n + omega_n P_{n-1}`
//! with every `omega_n > 0`. Fitting reads `beta_n` and `omega_n` off the top
//! two coefficients of `x P_n - P_{n+1}` (valid because the family is monic)
//! and then demands that the remaining residual vanish identically; a nonzero
//! residual is the proof that no such recursion exists.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{PolyX, Rational};
use crate::genfun::{GenFunError, MonicFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FavardError {
    #[error("residual of x P_n at n = {0} is nonzero: no three-term recursion")]
    NotThreeTerm(usize),
    #[error("recursion needs betas = omegas + 1 entries, got {betas} betas and {omegas} omegas")]
    LengthMismatch { betas: usize, omegas: usize },
    #[error("family must contain P_0, P_1, P_2 at least, got {0} polynomials")]
    FamilyTooShort(usize),
    #[error("rescale factor must be nonzero")]
    ZeroScale,
    #[error(transparent)]
    Family(#[from] GenFunError),
}

/// Recursion coefficients `beta_0..beta_{N-1}` and `omega_1..omega_{N-1}` of a
/// family `P_0..P_N`. There is no `omega_0` (`P_{-1} = 0`); `omega(n)` is
/// indexed from 1 here and everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recursion {
    betas: Vec<Rational>,
    omegas: Vec<Rational>,
}

impl Recursion {
    pub fn new(betas: Vec<Rational>, omegas: Vec<Rational>) -> Result<Self, FavardError> {
        if betas.len() != omegas.len() + 1 {
            return Err(FavardError::LengthMismatch {
                betas: betas.len(),
                omegas: omegas.len(),
            });
        }
        Ok(Recursion { betas, omegas })
    }

    pub fn betas(&self) -> &[Rational] {
        &self.betas
    }

    pub fn omegas(&self) -> &[Rational] {
        &self.omegas
    }

    pub fn beta(&self, n: usize) -> &Rational {
        &self.betas[n]
    }

    /// `omega_n` for `n >= 1`.
    pub fn omega(&self, n: usize) -> &Rational {
        assert!(n >= 1, "omega is indexed from 1");
        &self.omegas[n - 1]
    }

    /// Index of the first `omega_n <= 0`, or `None` when all are positive.
    /// This is the orthogonality test of the recursion.
    pub fn first_nonpositive_omega(&self) -> Option<usize> {
        self.omegas
            .iter()
            .position(|w| !w.is_positive())
            .map(|i| i + 1)
    }

    pub fn omegas_all_positive(&self) -> bool {
        self.first_nonpositive_omega().is_none()
    }
}

/// Fits the three-term recursion of a monic family, returning
/// `NotThreeTerm(n)` when the expansion of `x P_n` over the family needs a
/// term below `P_{n-1}`.
pub fn fit(family: &MonicFamily) -> Result<Recursion, FavardError> {
    let order = family.order();
    if order < 2 {
        return Err(FavardError::FamilyTooShort(order + 1));
    }
    let mut betas = Vec::with_capacity(order);
    let mut omegas = Vec::with_capacity(order - 1);
    for n in 0..order {
        // Monic leading terms cancel: deg r <= n.
        let r = &family.poly(n).mul_x() - family.poly(n + 1);
        let beta = r.coeff(n);
        let mut residual = &r - &family.poly(n).scale(&beta);
        if n >= 1 {
            let omega = residual.coeff(n - 1);
            residual = &residual - &family.poly(n - 1).scale(&omega);
            omegas.push(omega);
        }
        if !residual.is_zero() {
            return Err(FavardError::NotThreeTerm(n));
        }
        betas.push(beta);
    }
    Ok(Recursion { betas, omegas })
}

/// `Q_n(x) = r^n P_n(x/r)`: the rescaled family is again monic, and its
/// recursion coefficients transform as `beta -> r beta`, `omega -> r^2 omega`.
pub fn rescale(family: &MonicFamily, r: &Rational) -> Result<MonicFamily, FavardError> {
    if r.is_zero() {
        return Err(FavardError::ZeroScale);
    }
    let mut polys = Vec::with_capacity(family.order() + 1);
    for (n, p) in family.polys().iter().enumerate() {
        // coefficient of x^j picks up r^(n-j)
        let mut power = Rational::one();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for j in (0..=n).rev() {
            coeffs[j] = p.coeff(j) * &power;
            power *= r;
        }
        polys.push(PolyX::from_coeffs(coeffs));
    }
    Ok(MonicFamily::new(polys)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn poly(cs: &[(i64, i64)]) -> PolyX {
        PolyX::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn hermite_low() -> MonicFamily {
        MonicFamily::new(vec![
            PolyX::one(),
            PolyX::x(),
            poly(&[(-1, 1), (0, 1), (1, 1)]),
            poly(&[(0, 1), (-3, 1), (0, 1), (1, 1)]),
        ])
        .unwrap()
    }

    #[test]
    fn fit_hermite() {
        let rec = fit(&hermite_low()).unwrap();
        assert_eq!(rec.betas(), &[int(0), int(0), int(0)]);
        assert_eq!(rec.omegas(), &[int(1), int(2)]);
    }

    #[test]
    fn fit_charlier_round_trip() {
        // beta_n = n + 1, omega_n = n, generated forward then refitted.
        let betas: Vec<_> = (0..6).map(|n| int(n + 1)).collect();
        let omegas: Vec<_> = (1..6).map(int).collect();
        let rec = Recursion::new(betas, omegas).unwrap();
        let fam = crate::families::polys_from_recursion(&rec, 6).unwrap();
        assert_eq!(fit(&fam).unwrap(), rec);
    }

    #[test]
    fn fit_rejects_parity_breaker() {
        let fam = MonicFamily::new(vec![
            PolyX::one(),
            PolyX::x(),
            poly(&[(0, 1), (0, 1), (1, 1)]),
            poly(&[(1, 1), (0, 1), (0, 1), (1, 1)]),
        ])
        .unwrap();
        assert_eq!(fit(&fam).unwrap_err(), FavardError::NotThreeTerm(2));
    }

    #[test]
    fn fit_needs_three_polys() {
        let fam = MonicFamily::new(vec![PolyX::one(), PolyX::x()]).unwrap();
        assert_eq!(fit(&fam).unwrap_err(), FavardError::FamilyTooShort(2));
    }

    #[test]
    fn positivity_checks() {
        let rec = Recursion::new(vec![int(0); 4], vec![int(1), int(2), int(3)]).unwrap();
        assert!(rec.omegas_all_positive());
        assert_eq!(rec.first_nonpositive_omega(), None);

        let rec = Recursion::new(vec![int(0); 3], vec![rat(1, 3), int(0)]).unwrap();
        assert_eq!(rec.first_nonpositive_omega(), Some(2));

        let rec = Recursion::new(vec![int(0); 3], vec![rat(1, 2), rat(-1, 4)]).unwrap();
        assert_eq!(rec.first_nonpositive_omega(), Some(2));
    }

    #[test]
    fn recursion_length_invariant() {
        assert!(Recursion::new(vec![int(0)], vec![int(1)]).is_err());
        assert!(Recursion::new(vec![], vec![]).is_err());
    }

    #[test]
    fn rescale_identity_and_example() {
        let fam = hermite_low();
        assert_eq!(rescale(&fam, &int(1)).unwrap(), fam);

        let small = MonicFamily::new(vec![PolyX::one(), PolyX::x(), poly(&[(-1, 2), (0, 1), (1, 1)])])
            .unwrap();
        let scaled = rescale(&small, &int(2)).unwrap();
        assert_eq!(scaled.poly(2), &poly(&[(-2, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn rescale_chebyshev_omegas() {
        let rec = crate::families::recursion_of(&crate::families::FamilyId::ChebyshevT, 5).unwrap();
        let fam = crate::families::polys_from_recursion(&rec, 5).unwrap();
        let scaled = rescale(&fam, &int(2)).unwrap();
        let refit = fit(&scaled).unwrap();
        assert_eq!(refit.omegas(), &[int(2), int(1), int(1), int(1)]);
    }

    #[test]
    fn rescale_zero_rejected() {
        assert_eq!(
            rescale(&hermite_low(), &int(0)).unwrap_err(),
            FavardError::ZeroScale
        );
    }
}
