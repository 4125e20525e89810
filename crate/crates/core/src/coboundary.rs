//! Parallel-class weights, the numbers `B_i(a)`, the coboundary
//! quasi-polynomial and its relation to the Tutte polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{lcm_period, Arrangement, HCounter, PointEnumerator, SubsetKey};
use crate::codes::{image_code, weight_enumerator, WeightMode};
use crate::error::{Error, Result};
use crate::poly::{interpolate, BiPoly, UniPoly};
use crate::quasi::{BiQuasiPolynomial, QuasiPolynomial};
use crate::ring::{divisors, sample_ideals, Ideal, Residue, RingSpec};
use crate::Limits;

/// Number of classes on which `word` is nonzero at every member.
pub fn weight(word: &[Residue], classes: &[Vec<usize>]) -> Result<usize> {
    let n: usize = classes.iter().map(Vec::len).sum();
    if word.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: word.len() });
    }
    Ok(classes.iter().filter(|c| c.iter().all(|&i| word[i] != [0, 0])).count())
}

fn class_masks(a: &Arrangement) -> Vec<SubsetKey> {
    a.parallel_classes().iter().map(|c| c.iter().fold(0, |m, &i| m | (1 << i))).collect()
}

/// `[B_0, ..., B_p]` with `B_i = #{u : wt(uG) = p - i}`, by enumeration.
pub fn b_brute(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> Result<Vec<BigInt>> {
    let pts = PointEnumerator::new(a, ideal, limits)?;
    let p = a.class_count();
    let classes = a.parallel_classes();
    let mut tally = vec![0u64; p + 1];
    pts.for_each(|_, img| {
        let w = classes.iter().filter(|c| c.iter().all(|&i| img[i] != [0, 0])).count();
        tally[p - w] += 1;
    });
    Ok(tally.into_iter().map(BigInt::from).collect())
}

/// `B_i` from the counts `#H_K` by inclusion-exclusion over supersets.
pub fn b_from_counter(counter: &HCounter, ideal: &Ideal) -> Result<Vec<BigInt>> {
    let a = counter.arrangement();
    let n = a.len();
    let full = a.full_subset();
    let mut f = (0..=full).map(|j| counter.count(j, ideal)).collect::<Result<Vec<_>>>()?;
    // f[J] <- sum_{K >= J} (-1)^{|K - J|} f[K]
    for bit in 0..n {
        let b = 1u32 << bit;
        for mask in 0..=full {
            if mask & b == 0 {
                let hi = f[(mask | b) as usize].clone();
                f[mask as usize] -= hi;
            }
        }
    }
    let masks = class_masks(a);
    let p = masks.len();
    let mut out = vec![BigInt::zero(); p + 1];
    for (j, v) in f.into_iter().enumerate() {
        let untouched = masks.iter().filter(|&&m| m & j as SubsetKey == 0).count();
        out[p - untouched] += v;
    }
    Ok(out)
}

pub fn b_inclusion_exclusion(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> Result<Vec<BigInt>> {
    b_from_counter(&HCounter::new(a, limits)?, ideal)
}

/// The coboundary quasi-polynomial `sum_i B_i(a) x^i`; constituents are
/// polynomials in `(t, x)`.
pub fn coboundary_quasi_polynomial(a: &Arrangement, limits: &Limits) -> Result<BiQuasiPolynomial> {
    let rho = lcm_period(a, limits)?;
    let counter = HCounter::new(a, limits)?;
    let p = a.class_count();
    let mut constituents = Vec::new();
    for kappa in divisors(&rho, limits.max_norm)? {
        let samples = sample_ideals(&kappa, &rho, a.rank() + 1 + crate::arrangement::EXTRA_SAMPLES)?;
        let mut per_i: Vec<Vec<(BigInt, BigInt)>> = vec![Vec::new(); p + 1];
        for s in &samples {
            let n = s.norm();
            for (i, b) in b_from_counter(&counter, s)?.into_iter().enumerate() {
                per_i[i].push((n.clone(), b));
            }
        }
        let parts = per_i.iter().map(|pts| interpolate(pts, a.rank())).collect::<Result<Vec<_>>>()?;
        constituents.push((kappa, BiPoly::from_second_coefficients(&parts)));
    }
    QuasiPolynomial::new(rho, constituents)
}

/// The quasi-polynomial `B_i`.
pub fn b_coefficient(chi: &BiQuasiPolynomial, i: u32) -> QuasiPolynomial<UniPoly> {
    chi.map(|c| c.second_coefficient(i))
}

/// Tutte polynomial of the hyperplane arrangement `A(K)` (one vector per
/// parallel class), by subset expansion.
pub fn tutte_polynomial(a: &Arrangement, limits: &Limits) -> Result<BiPoly> {
    limits.check_subsets(a.len())?;
    let reps: Vec<usize> = a.parallel_classes().iter().map(|c| c[0]).collect();
    let r = a.rank_of(a.full_subset());
    let xm = &BiPoly::first() - &BiPoly::one();
    let ym = &BiPoly::second() - &BiPoly::one();
    let mut t = BiPoly::zero();
    for sub in 0u32..(1 << reps.len()) {
        let mask = reps.iter().enumerate().filter(|(k, _)| sub >> k & 1 == 1).fold(0, |m, (_, &i)| m | (1 << i));
        let rb = a.rank_of(mask);
        let term = &xm.pow((r - rb) as u32) * &ym.pow(sub.count_ones() - rb as u32);
        t = &t + &term;
    }
    Ok(t)
}

/// Both sides of `chi((x-1)(y-1), y) = (x-1)^(l-r) (y-1)^l T(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteCheck {
    pub lhs: BiPoly,
    pub rhs: BiPoly,
}

impl TutteCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks the Tutte relation using the `O` constituent of `chi`.
pub fn tutte_check(a: &Arrangement, chi: &BiQuasiPolynomial, limits: &Limits) -> Result<TutteCheck> {
    let unit = Ideal::unit(a.ring());
    let c = chi.constituent(&unit).ok_or_else(|| Error::NotADivisor(unit.label()))?;
    let xm = &BiPoly::first() - &BiPoly::one();
    let ym = &BiPoly::second() - &BiPoly::one();
    let lhs = c.substitute(&(&xm * &ym), &BiPoly::second());
    let r = a.rank_of(a.full_subset());
    let t = tutte_polynomial(a, limits)?;
    let rhs = &(&xm.pow((a.rank() - r) as u32) * &ym.pow(a.rank() as u32)) * &t;
    Ok(TutteCheck { lhs, rhs })
}

pub fn verify_tutte_coboundary(a: &Arrangement, limits: &Limits) -> Result<bool> {
    let chi = coboundary_quasi_polynomial(a, limits)?;
    Ok(tutte_check(a, &chi, limits)?.holds())
}

/// `sum_i B_i(a) x^i` against `#Ker G_a * W_{Image G_a}(x, 1)` with class weights.
pub fn kernel_weight_sides(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> Result<(UniPoly, UniPoly)> {
    let lhs = UniPoly::new(b_inclusion_exclusion(a, ideal, limits)?);
    let kernel = crate::arrangement::count_h(a, a.full_subset(), ideal)?;
    let code = image_code(a, ideal, limits)?;
    let w = weight_enumerator(&code, &WeightMode::Classes(a.parallel_classes().to_vec()))?;
    let rhs = w.evaluate_second(&BigInt::one()).scale(&kernel);
    Ok((lhs, rhs))
}

pub fn verify_kernel_weight_identity(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> Result<bool> {
    let (lhs, rhs) = kernel_weight_sides(a, ideal, limits)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreeneOutcome {
    Holds,
    Fails { coboundary: UniPoly, enumerator: UniPoly },
    Skipped(String),
}

/// Compares `chi(p, x)` with the Hamming enumerator `W_C(x, 1)` of the row
/// space of `G mod p`, for an integer arrangement whose reduction has no zero
/// or proportional columns and is injective.
pub fn greene_check(a: &Arrangement, p: u64, limits: &Limits) -> Result<GreeneOutcome> {
    if a.ring() != RingSpec::Integers {
        return Ok(GreeneOutcome::Skipped("only integer arrangements are reduced mod p".into()));
    }
    let pb = BigInt::from(p);
    let cols: Vec<Vec<BigInt>> = a
        .vectors()
        .iter()
        .map(|v| v.iter().map(|e| ((&e.a % &pb) + &pb) % &pb).collect())
        .collect();
    if let Some(j) = cols.iter().position(|c| c.iter().all(Zero::is_zero)) {
        return Ok(GreeneOutcome::Skipped(format!("column {j} vanishes mod {p}")));
    }
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let proportional = (0..a.rank()).all(|r| {
                (0..a.rank()).all(|s| ((&cols[i][r] * &cols[j][s] - &cols[i][s] * &cols[j][r]) % &pb).is_zero())
            });
            if proportional {
                return Ok(GreeneOutcome::Skipped(format!("columns {i} and {j} are proportional mod {p}")));
            }
        }
    }
    let q = Ideal::integer(p as i64);
    if !crate::arrangement::count_h(a, a.full_subset(), &q)?.is_one() {
        return Ok(GreeneOutcome::Skipped(format!("G is not injective mod {p}")));
    }
    let coboundary = UniPoly::new(b_inclusion_exclusion(a, &q, limits)?);
    let code = image_code(a, &q, limits)?;
    let enumerator = weight_enumerator(&code, &WeightMode::Hamming)?.evaluate_second(&BigInt::one());
    if coboundary == enumerator {
        Ok(GreeneOutcome::Holds)
    } else {
        Ok(GreeneOutcome::Fails { coboundary, enumerator })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingElement;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn e1e2() -> Arrangement {
        Arrangement::integer(2, &[&[1, 0], &[0, 1]]).unwrap()
    }

    fn braid() -> Arrangement {
        Arrangement::integer(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    fn zs5() -> Arrangement {
        let ring = RingSpec::quadratic(-5).unwrap();
        Arrangement::new(
            ring,
            2,
            vec![
                vec![RingElement::pair(2, 0), RingElement::pair(1, -1)],
                vec![RingElement::pair(1, 1), RingElement::pair(3, 0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn weights() {
        let single = vec![vec![0], vec![1], vec![2]];
        assert_eq!(weight(&[[0, 0]; 3], &single).unwrap(), 0);
        assert_eq!(weight(&[[1, 0], [0, 0], [2, 0]], &single).unwrap(), 2);
        assert_eq!(weight(&[[1, 0], [0, 0]], &[vec![0, 1]]).unwrap(), 0);
        assert_eq!(weight(&[[1, 0]], &single), Err(Error::LengthMismatch { expected: 3, got: 1 }));
    }

    #[test]
    fn b_values() {
        let l = Limits::default();
        assert_eq!(b_brute(&e1e2(), &Ideal::integer(3), &l).unwrap(), big(&[4, 4, 1]));
        assert_eq!(b_inclusion_exclusion(&e1e2(), &Ideal::integer(3), &l).unwrap(), big(&[4, 4, 1]));
        let z = zs5();
        let p = Ideal::from_generators(z.ring(), &[RingElement::pair(2, 0), RingElement::pair(1, -1)]).unwrap();
        assert_eq!(b_brute(&z, &p, &l).unwrap(), big(&[0, 4]));
        assert_eq!(b_inclusion_exclusion(&z, &p, &l).unwrap(), big(&[0, 4]));
        assert_eq!(b_brute(&braid(), &Ideal::integer(1), &l).unwrap(), big(&[0, 0, 0, 1]));
        let empty = Arrangement::integer(2, &[]).unwrap();
        assert_eq!(b_inclusion_exclusion(&empty, &Ideal::integer(5), &l).unwrap(), big(&[25]));
    }

    #[test]
    fn constituents() {
        let l = Limits::default();
        let chi = coboundary_quasi_polynomial(&zs5(), &l).unwrap();
        let got: Vec<String> = chi.constituents().iter().map(|(_, c)| c.render("t", "x")).collect();
        assert_eq!(got, ["t^2 - t + t*x", "t^2 - 2*t + 2*t*x", "t^2 - 3*t + 3*t*x", "t^2 - 4*t + 4*t*x"]);

        let chi = coboundary_quasi_polynomial(&e1e2(), &l).unwrap();
        // (t-1)^2 + 2(t-1)x + x^2
        let want = BiPoly::from_i64_terms(&[(2, 0, 1), (1, 0, -2), (0, 0, 1), (1, 1, 2), (0, 1, -2), (0, 2, 1)]);
        assert_eq!(chi.constituents(), &[(Ideal::integer(1), want)]);

        let a = Arrangement::integer(1, &[&[2]]).unwrap();
        let chi = coboundary_quasi_polynomial(&a, &l).unwrap();
        let c: Vec<String> = chi.constituents().iter().map(|(_, c)| c.render("t", "x")).collect();
        assert_eq!(c, ["t - 1 + x", "t - 2 + 2*x"]);
    }

    #[test]
    fn tutte() {
        let l = Limits::default();
        assert_eq!(tutte_polynomial(&e1e2(), &l).unwrap(), BiPoly::from_i64_terms(&[(2, 0, 1)]));
        assert_eq!(
            tutte_polynomial(&braid(), &l).unwrap(),
            BiPoly::from_i64_terms(&[(2, 0, 1), (1, 0, 1), (0, 1, 1)])
        );
        let empty = Arrangement::integer(3, &[]).unwrap();
        assert_eq!(tutte_polynomial(&empty, &l).unwrap(), BiPoly::one());
        for a in [e1e2(), braid(), empty, zs5()] {
            assert!(verify_tutte_coboundary(&a, &l).unwrap());
        }
    }

    #[test]
    fn kernel_weight() {
        let l = Limits::default();
        let z = zs5();
        let rho = lcm_period(&z, &l).unwrap();
        let (lhs, rhs) = kernel_weight_sides(&z, &rho, &l).unwrap();
        assert_eq!(lhs, UniPoly::from_i64(&[12, 24]));
        assert_eq!(lhs, rhs);
        assert!(verify_kernel_weight_identity(&e1e2(), &Ideal::integer(3), &l).unwrap());
        assert!(verify_kernel_weight_identity(&braid(), &Ideal::integer(1), &l).unwrap());
    }

    #[test]
    fn greene() {
        let l = Limits::default();
        assert_eq!(greene_check(&e1e2(), 3, &l).unwrap(), GreeneOutcome::Holds);
        let g = Arrangement::integer(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]).unwrap();
        for p in [3, 5, 7] {
            assert_eq!(greene_check(&g, p, &l).unwrap(), GreeneOutcome::Holds);
        }
        assert!(matches!(greene_check(&braid(), 3, &l).unwrap(), GreeneOutcome::Skipped(_)));
        assert!(matches!(greene_check(&g, 2, &l).unwrap(), GreeneOutcome::Skipped(_)));
    }
}
