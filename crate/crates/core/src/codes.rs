//! Linear codes over residue rings `O/a`, weight enumerators and duality.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::{Arrangement, PointEnumerator};
use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::ring::{Ideal, Residue, ResidueRing};
use crate::Limits;

/// A code stored extensionally: its words, sorted and deduplicated.
#[derive(Clone, Debug)]
pub struct Code {
    ring: ResidueRing,
    length: usize,
    words: Vec<Vec<Residue>>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.ring.ideal() == other.ring.ideal() && self.length == other.length && self.words == other.words
    }
}

impl Eq for Code {}

impl Code {
    pub fn from_words(ring: ResidueRing, length: usize, words: impl IntoIterator<Item = Vec<Residue>>) -> Result<Code> {
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != length {
                return Err(Error::LengthMismatch { expected: length, got: w.len() });
            }
            set.insert(w.iter().map(|x| ring.reduce(x[0] as i128, x[1] as i128)).collect::<Vec<_>>());
        }
        Ok(Code { ring, length, words: set.into_iter().collect() })
    }

    /// The submodule generated by `generators`.
    pub fn span(ring: ResidueRing, length: usize, generators: &[Vec<Residue>], limits: &Limits) -> Result<Code> {
        let zero = vec![ring.zero(); length];
        let mut seen: BTreeSet<Vec<Residue>> = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        let scalars: Vec<Residue> = ring.elements().collect();
        while let Some(w) = frontier.pop() {
            for g in generators {
                if g.len() != length {
                    return Err(Error::LengthMismatch { expected: length, got: g.len() });
                }
                for s in &scalars {
                    let next: Vec<Residue> = w.iter().zip(g).map(|(a, b)| ring.add(*a, ring.mul(*s, *b))).collect();
                    if seen.insert(next.clone()) {
                        if seen.len() as u64 > limits.max_points {
                            return Err(Error::resource("code size", seen.len(), limits.max_points));
                        }
                        frontier.push(next);
                    }
                }
            }
        }
        Ok(Code { ring, length, words: seen.into_iter().collect() })
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Vec<Residue>] {
        &self.words
    }

    pub fn contains(&self, w: &[Residue]) -> bool {
        self.words.binary_search_by(|x| x.as_slice().cmp(w)).is_ok()
    }

    /// Closure under addition and scalar multiplication, checked exhaustively.
    pub fn is_linear(&self) -> bool {
        let r = &self.ring;
        let scalars: Vec<Residue> = r.elements().collect();
        self.words.iter().all(|u| {
            self.words.iter().all(|v| self.contains(&u.iter().zip(v).map(|(a, b)| r.add(*a, *b)).collect::<Vec<_>>()))
                && scalars.iter().all(|s| self.contains(&u.iter().map(|a| r.mul(*s, *a)).collect::<Vec<_>>()))
        })
    }

    pub fn dot(&self, u: &[Residue], v: &[Residue]) -> Residue {
        u.iter().zip(v).fold(self.ring.zero(), |acc, (a, b)| self.ring.add(acc, self.ring.mul(*a, *b)))
    }
}

/// `{uG mod a}` over all points `u`.
pub fn image_code(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> Result<Code> {
    let pts = PointEnumerator::new(a, ideal, limits)?;
    let mut set = BTreeSet::new();
    pts.for_each(|_, img| {
        set.insert(img.to_vec());
    });
    Ok(Code { ring: pts.residue_ring().clone(), length: a.len(), words: set.into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Hamming,
    /// Weight counts the classes whose members are all nonzero.
    Classes(Vec<Vec<usize>>),
}

/// `sum_c x^(N - wt c) y^(wt c)` with `N` the length or the class count.
pub fn weight_enumerator(code: &Code, mode: &WeightMode) -> Result<BiPoly> {
    let classes = match mode {
        WeightMode::Hamming => (0..code.length).map(|i| vec![i]).collect(),
        WeightMode::Classes(c) => c.clone(),
    };
    let total: usize = classes.iter().map(Vec::len).sum();
    if total != code.length {
        return Err(Error::LengthMismatch { expected: code.length, got: total });
    }
    let n = classes.len();
    let mut tally = vec![0u64; n + 1];
    for w in &code.words {
        tally[crate::coboundary::weight(w, &classes)?] += 1;
    }
    Ok(BiPoly::from_terms(
        tally.into_iter().enumerate().map(|(k, c)| ((n - k) as u32, k as u32, BigInt::from(c))),
    ))
}

/// `{u : u . v = 0 for all v in C}`, by enumerating the ambient module.
pub fn dual_code(code: &Code, limits: &Limits) -> Result<Code> {
    let r = &code.ring;
    let q = r.cardinality();
    let total = BigInt::from(q).pow(code.length as u32);
    if total > BigInt::from(limits.max_points) {
        return Err(Error::resource("ambient code space", &total, limits.max_points));
    }
    let total = q.pow(code.length as u32);
    let mut words = Vec::new();
    let mut u = vec![r.zero(); code.length];
    for idx in 0..total {
        let mut k = idx;
        for slot in u.iter_mut().rev() {
            *slot = r.from_index((k % q) as usize);
            k /= q;
        }
        if code.words.iter().all(|v| r.is_zero(code.dot(&u, v))) {
            words.push(u.clone());
        }
    }
    let dual = Code::from_words(r.clone(), code.length, words)?;
    if BigInt::from(code.size()) * BigInt::from(dual.size()) != BigInt::from(total) {
        return Err(Error::Internal(format!(
            "#C * #C^perp = {} * {} differs from {}",
            code.size(),
            dual.size(),
            total
        )));
    }
    Ok(dual)
}

/// `W_C(x, y)` and `W_{C^perp}(x + (N-1)y, x - y) / #C^perp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacWilliams {
    pub lhs: BiPoly,
    pub rhs: BiPoly,
}

impl MacWilliams {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn macwilliams_sides(code: &Code, limits: &Limits) -> Result<MacWilliams> {
    let dual = dual_code(code, limits)?;
    let lhs = weight_enumerator(code, &WeightMode::Hamming)?;
    let wd = weight_enumerator(&dual, &WeightMode::Hamming)?;
    let n = BigInt::from(code.ring.cardinality());
    let x = BiPoly::first();
    let y = BiPoly::second();
    let p = &x + &y.scale(&(n - 1));
    let q = &x - &y;
    let rhs = wd.substitute(&p, &q).exact_div(&BigInt::from(dual.size()))?;
    Ok(MacWilliams { lhs, rhs })
}

pub fn macwilliams_check(code: &Code, limits: &Limits) -> Result<bool> {
    Ok(macwilliams_sides(code, limits)?.holds())
}

/// The fixed two-vector arrangement `a_1 = (2, 0)`, `a_2 = (0, 1)` over `Z`.
pub fn dual_example_arrangement() -> Arrangement {
    Arrangement::integer(2, &[&[2, 0], &[0, 1]]).expect("valid arrangement")
}

/// One modulus of the fixed duality experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualExampleRow {
    pub q: u64,
    pub image: Code,
    pub image_enumerator: BiPoly,
    pub dual: Code,
    pub dual_enumerator: BiPoly,
    /// `{(f(1), f(0)) : f in Hom(Z/2, Z/q)}`.
    pub star: Code,
    pub star_enumerator: BiPoly,
    pub macwilliams: bool,
}

impl DualExampleRow {
    /// Closed forms for the image and its dual.
    pub fn expected_enumerators(q: u64) -> (BiPoly, BiPoly) {
        let q = q as i64;
        if q % 2 == 1 {
            (
                BiPoly::from_i64_terms(&[(2, 0, 1), (1, 1, 2 * (q - 1)), (0, 2, (q - 1) * (q - 1))]),
                BiPoly::from_i64_terms(&[(2, 0, 1)]),
            )
        } else {
            (
                BiPoly::from_i64_terms(&[(2, 0, 1), (1, 1, 3 * q / 2 - 2), (0, 2, (q / 2 - 1) * (q - 1))]),
                BiPoly::from_i64_terms(&[(2, 0, 1), (1, 1, 1)]),
            )
        }
    }

    pub fn passes(&self) -> bool {
        let (wi, wd) = Self::expected_enumerators(self.q);
        self.image_enumerator == wi
            && self.dual_enumerator == wd
            && self.star == self.dual
            && self.star_enumerator == self.dual_enumerator
            && self.macwilliams
    }
}

pub fn dual_example_row(q: u64, limits: &Limits) -> Result<DualExampleRow> {
    let a = dual_example_arrangement();
    let ideal = Ideal::integer(q as i64);
    let image = image_code(&a, &ideal, limits)?;
    let ring = image.ring().clone();
    let dual = dual_code(&image, limits)?;
    let star_words = (0..q as i64).filter(|&v| (2 * v) % q as i64 == 0).map(|v| vec![[v, 0], [0, 0]]);
    let star = Code::from_words(ring, 2, star_words)?;
    Ok(DualExampleRow {
        q,
        image_enumerator: weight_enumerator(&image, &WeightMode::Hamming)?,
        dual_enumerator: weight_enumerator(&dual, &WeightMode::Hamming)?,
        star_enumerator: weight_enumerator(&star, &WeightMode::Hamming)?,
        macwilliams: macwilliams_check(&image, limits)?,
        image,
        dual,
        star,
    })
}

/// Runs the experiment for `q = 2, ..., 12`.
pub fn dual_example_experiment(limits: &Limits) -> Result<Vec<DualExampleRow>> {
    (2..=12).map(|q| dual_example_row(q, limits)).collect()
}

/// Sum of the coefficients, i.e. `W(1, 1)`.
pub fn enumerator_total(w: &BiPoly) -> BigInt {
    w.terms().fold(BigInt::zero(), |acc, (_, _, c)| acc + c)
}
