//! Quasi-polynomials on the nonzero ideals of a base ring.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, UniPoly};
use crate::ring::{ideal_sum, Ideal};

/// A period `rho` and one constituent per divisor of `rho`, in divisor order.
/// For `a + rho = kappa` the value at `a` is the `kappa` constituent at `N(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial<P> {
    period: Ideal,
    constituents: Vec<(Ideal, P)>,
}

pub type BiQuasiPolynomial = QuasiPolynomial<BiPoly>;

impl<P> QuasiPolynomial<P> {
    /// `constituents` must be keyed by exactly the divisors of `period`.
    pub fn new(period: Ideal, mut constituents: Vec<(Ideal, P)>) -> Result<Self> {
        constituents.sort_by(|a, b| a.0.cmp(&b.0));
        for w in constituents.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Internal(format!("constituent {} listed twice", w[0].0)));
            }
        }
        for (k, _) in &constituents {
            if !k.divides(&period) {
                return Err(Error::NotADivisor(k.label()));
            }
        }
        Ok(QuasiPolynomial { period, constituents })
    }

    pub fn period(&self) -> &Ideal {
        &self.period
    }

    pub fn constituents(&self) -> &[(Ideal, P)] {
        &self.constituents
    }

    pub fn constituent(&self, kappa: &Ideal) -> Option<&P> {
        self.constituents.iter().find(|(k, _)| k == kappa).map(|(_, p)| p)
    }

    /// The constituent governing `a`, i.e. the one keyed by `a + rho`.
    pub fn constituent_for(&self, a: &Ideal) -> Result<&P> {
        let kappa = ideal_sum(a, &self.period)?;
        self.constituent(&kappa).ok_or_else(|| Error::NotADivisor(kappa.label()))
    }

    pub fn map<Q>(&self, f: impl Fn(&P) -> Q) -> QuasiPolynomial<Q> {
        QuasiPolynomial {
            period: self.period.clone(),
            constituents: self.constituents.iter().map(|(k, p)| (k.clone(), f(p))).collect(),
        }
    }
}

pub fn quasi_evaluate(f: &QuasiPolynomial<UniPoly>, a: &Ideal) -> Result<BigInt> {
    Ok(f.constituent_for(a)?.evaluate(&a.norm()))
}

/// Value at `a` as a polynomial in the second variable.
pub fn quasi_evaluate_bivariate(f: &BiQuasiPolynomial, a: &Ideal) -> Result<UniPoly> {
    Ok(f.constituent_for(a)?.evaluate_first(&a.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_by_class() {
        let f = QuasiPolynomial::new(
            Ideal::integer(2),
            vec![(Ideal::integer(2), UniPoly::from_i64(&[-2, 1])), (Ideal::integer(1), UniPoly::from_i64(&[-1, 1]))],
        )
        .unwrap();
        assert_eq!(f.constituents()[0].0, Ideal::integer(1));
        assert_eq!(quasi_evaluate(&f, &Ideal::integer(6)).unwrap(), BigInt::from(4));
        assert_eq!(quasi_evaluate(&f, &Ideal::integer(5)).unwrap(), BigInt::from(4));
        assert_eq!(quasi_evaluate(&f, &Ideal::integer(1)).unwrap(), BigInt::from(0));
    }

    #[test]
    fn period_one() {
        let f = QuasiPolynomial::new(Ideal::integer(1), vec![(Ideal::integer(1), UniPoly::from_i64(&[0, -1, 1]))]).unwrap();
        for q in 1..10 {
            assert_eq!(quasi_evaluate(&f, &Ideal::integer(q)).unwrap(), BigInt::from(q * q - q));
        }
    }

    #[test]
    fn rejects_non_divisors() {
        let r = QuasiPolynomial::new(Ideal::integer(4), vec![(Ideal::integer(3), UniPoly::zero())]);
        assert!(matches!(r, Err(Error::NotADivisor(_))));
        let f = QuasiPolynomial::new(Ideal::integer(4), vec![(Ideal::integer(1), UniPoly::zero())]).unwrap();
        assert!(matches!(quasi_evaluate(&f, &Ideal::integer(2)), Err(Error::NotADivisor(_))));
    }

    #[test]
    fn bivariate_value() {
        let c = BiPoly::from_i64_terms(&[(2, 0, 1), (1, 0, -4), (1, 1, 4)]);
        let f = BiQuasiPolynomial::new(Ideal::integer(1), vec![(Ideal::integer(1), c)]).unwrap();
        assert_eq!(quasi_evaluate_bivariate(&f, &Ideal::integer(6)).unwrap(), UniPoly::from_i64(&[12, 24]));
    }
}
