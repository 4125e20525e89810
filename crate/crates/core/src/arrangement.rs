//! Central arrangements `A = {a_1, ..., a_n}` of vectors in `O^l`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{count_kernel, smith_normal_form, IntMatrix, Lattice};
use crate::poly::{interpolate, UniPoly};
use crate::quasi::QuasiPolynomial;
use crate::ring::{divisors, ideal_lcm, sample_ideals, Ideal, Residue, ResidueRing, RingElement, RingSpec};
use crate::Limits;

/// Bitmask over the vectors of an arrangement; bit `j` selects `a_j`.
pub type SubsetKey = u32;

pub fn subset_members(j: SubsetKey) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| j >> i & 1 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ring: RingSpec,
    rank: usize,
    vectors: Vec<Vec<RingElement>>,
    classes: Vec<Vec<usize>>,
}

impl Arrangement {
    /// `vectors[j]` is the column `a_j`, of length `rank`.
    pub fn new(ring: RingSpec, rank: usize, vectors: Vec<Vec<RingElement>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Empty("ambient rank"));
        }
        for v in &vectors {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: v.len() });
            }
            if v.iter().all(RingElement::is_zero) {
                return Err(Error::ZeroVector);
            }
            if ring == RingSpec::Integers && v.iter().any(|e| !e.b.is_zero()) {
                return Err(Error::Parse("integer arrangement with a non-integer entry".into()));
            }
        }
        if vectors.len() > crate::SUBSET_CEILING {
            return Err(Error::resource("arrangement size", vectors.len(), crate::SUBSET_CEILING));
        }
        let mut a = Arrangement { ring, rank, vectors, classes: Vec::new() };
        a.classes = a.compute_classes();
        Ok(a)
    }

    /// Integer arrangement from its columns.
    pub fn integer(rank: usize, columns: &[&[i64]]) -> Result<Self> {
        let vectors = columns.iter().map(|c| c.iter().map(|&x| RingElement::integer(x)).collect()).collect();
        Self::new(RingSpec::Integers, rank, vectors)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// The ambient rank `l`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<RingElement>] {
        &self.vectors
    }

    pub fn full_subset(&self) -> SubsetKey {
        ((1u64 << self.len()) - 1) as SubsetKey
    }

    pub fn parallel_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `p(A)`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `G_J` in additive coordinates: row `(i, s)` is `w^s e_i * G_J`, column
    /// `(j, t)` is coordinate `t`. A point `u` in coordinates maps to `u G_J`.
    pub fn coordinate_matrix(&self, j: SubsetKey) -> IntMatrix {
        let deg = self.ring.degree();
        let cols: Vec<usize> = subset_members(j).filter(|&c| c < self.len()).collect();
        let mut rows = vec![Vec::with_capacity(deg * cols.len()); deg * self.rank];
        for &c in &cols {
            for i in 0..self.rank {
                let m = self.ring.mult_matrix(&self.vectors[c][i]);
                for s in 0..deg {
                    rows[i * deg + s].extend(m.row(s).iter().cloned());
                }
            }
        }
        IntMatrix::from_rows(deg * cols.len(), rows).expect("rows have equal width")
    }

    /// `l x |J|` matrix of an integer arrangement.
    fn integer_matrix(&self, j: SubsetKey) -> IntMatrix {
        debug_assert_eq!(self.ring, RingSpec::Integers);
        self.coordinate_matrix(j)
    }

    /// Rank of `G_J` over the fraction field.
    pub fn rank_of(&self, j: SubsetKey) -> usize {
        self.coordinate_matrix(j).rank() / self.ring.degree()
    }

    fn compute_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            let hit = classes.iter_mut().find(|c| self.rank_of((1 << c[0]) | (1 << i)) == 1);
            match hit {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }

    /// One vector from each parallel class: the arrangement `A(K)` of hyperplanes.
    pub fn class_representatives(&self) -> SubsetKey {
        self.classes.iter().fold(0, |m, c| m | (1 << c[0]))
    }

    /// `u . a_j` for a point `u` in `O^l`.
    pub fn pairing(&self, u: &[RingElement], j: usize) -> RingElement {
        u.iter()
            .zip(&self.vectors[j])
            .fold(self.ring.zero(), |acc, (x, a)| acc.add(&self.ring.mul(x, a)))
    }
}

/// Annihilator of the torsion of `Coker(G_J : O^l -> O^J)`, via the
/// saturation of the image lattice.
pub fn cokernel_torsion_annihilator_general(a: &Arrangement, j: SubsetKey) -> Result<Ideal> {
    if j & a.full_subset() == 0 {
        return Err(Error::Empty("subset J"));
    }
    let ring = a.ring();
    let deg = ring.degree();
    let image = Lattice::from_generators(&a.coordinate_matrix(j));
    let sat = image.saturation();
    let width = image.ambient_rank();
    let mut ann = Lattice::full(deg);
    for s in sat.basis().row_vecs() {
        // rows w^t * s, so x -> x * s in coordinates
        let mut rows = Vec::with_capacity(deg);
        let mut wt = ring.one();
        for _ in 0..deg {
            let mut row = Vec::with_capacity(width);
            for blk in s.chunks(deg) {
                let e = ring.mul(&wt, &ring.element_from_coords(blk));
                row.extend(e.coords(&ring));
            }
            rows.push(row);
            wt = ring.mul(&wt, &ring.omega());
        }
        let m = IntMatrix::from_rows(width, rows)?;
        ann = ann.intersection(&Lattice::preimage(&m, &image)?)?;
    }
    Ideal::from_lattice(ring, ann)
}

/// Same ideal; over `Z` it is generated by the largest nonzero elementary divisor.
pub fn cokernel_torsion_annihilator(a: &Arrangement, j: SubsetKey) -> Result<Ideal> {
    if a.ring() != RingSpec::Integers {
        return cokernel_torsion_annihilator_general(a, j);
    }
    if j & a.full_subset() == 0 {
        return Err(Error::Empty("subset J"));
    }
    let snf = smith_normal_form(&a.integer_matrix(j));
    let d = snf.nonzero_divisors().last().cloned().unwrap_or_else(BigInt::one);
    Ideal::principal(RingSpec::Integers, &RingElement::new(d, BigInt::zero()))
}

/// `rho_A`: lcm of the annihilators over all nonempty `J`.
pub fn lcm_period(a: &Arrangement, limits: &Limits) -> Result<Ideal> {
    limits.check_subsets(a.len())?;
    let mut anns = vec![Ideal::unit(a.ring())];
    for j in 1..=a.full_subset() {
        anns.push(cokernel_torsion_annihilator(a, j)?);
    }
    ideal_lcm(&anns)
}

/// Counts `#H_{J, O/a}` for many subsets and ideals, caching per-subset data.
pub struct HCounter<'a> {
    arr: &'a Arrangement,
    // Z: nonzero elementary divisors and rank per subset; otherwise matrices.
    divisors: Vec<Vec<BigInt>>,
    matrices: Vec<IntMatrix>,
}

impl<'a> HCounter<'a> {
    pub fn new(arr: &'a Arrangement, limits: &Limits) -> Result<Self> {
        limits.check_subsets(arr.len())?;
        let subsets = 0..=arr.full_subset();
        let mut divisors = Vec::new();
        let mut matrices = Vec::new();
        if arr.ring() == RingSpec::Integers {
            divisors = subsets
                .map(|j| smith_normal_form(&arr.integer_matrix(j)).nonzero_divisors().cloned().collect())
                .collect();
        } else {
            matrices = subsets.map(|j| arr.coordinate_matrix(j)).collect();
        }
        Ok(HCounter { arr, divisors, matrices })
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.arr
    }

    pub fn count(&self, j: SubsetKey, a: &Ideal) -> Result<BigInt> {
        if a.ring() != self.arr.ring() {
            return Err(Error::RingMismatch);
        }
        let ell = self.arr.rank();
        if j == 0 {
            return Ok(a.norm().pow(ell as u32));
        }
        if self.arr.ring() == RingSpec::Integers {
            let q = a.norm();
            let ds = &self.divisors[j as usize];
            let mut n = q.pow((ell - ds.len()) as u32);
            for d in ds {
                n *= d.gcd(&q);
            }
            return Ok(n);
        }
        count_h_lattice(&self.matrices[j as usize], self.arr, j, a)
    }

    /// `sum_J (-1)^|J| #H_J`.
    pub fn characteristic(&self, a: &Ideal) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for j in 0..=self.arr.full_subset() {
            let c = self.count(j, a)?;
            if j.count_ones() % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        Ok(total)
    }
}

fn count_h_lattice(m: &IntMatrix, arr: &Arrangement, j: SubsetKey, a: &Ideal) -> Result<BigInt> {
    let rel = a.lattice().basis();
    let domain = Lattice::from_generators(&IntMatrix::block_diagonal(&vec![rel.clone(); arr.rank()]));
    let target = Lattice::from_generators(&IntMatrix::block_diagonal(&vec![rel.clone(); j.count_ones() as usize]));
    count_kernel(m, &target, &domain)
}

/// `#H_{J, O/a}` through `count_kernel` on the coordinate matrix.
pub fn count_h(a: &Arrangement, j: SubsetKey, ideal: &Ideal) -> Result<BigInt> {
    if ideal.ring() != a.ring() {
        return Err(Error::RingMismatch);
    }
    let j = j & a.full_subset();
    if j == 0 {
        return Ok(ideal.norm().pow(a.rank() as u32));
    }
    count_h_lattice(&a.coordinate_matrix(j), a, j, ideal)
}

/// Enumerates `(O/a)^l`, yielding each point as residues with the pairings
/// `u . a_j` for every vector of the arrangement.
pub struct PointEnumerator<'a> {
    arr: &'a Arrangement,
    ring: ResidueRing,
    columns: Vec<Vec<Residue>>,
    total: u64,
}

impl<'a> PointEnumerator<'a> {
    pub fn new(arr: &'a Arrangement, a: &Ideal, limits: &Limits) -> Result<Self> {
        if a.ring() != arr.ring() {
            return Err(Error::RingMismatch);
        }
        let total = limits.check_points(&a.norm(), arr.rank())?;
        let ring = ResidueRing::new(a, limits.max_points.max(limits.max_norm))?;
        let columns = arr.vectors().iter().map(|v| v.iter().map(|e| ring.reduce_element(e)).collect()).collect();
        Ok(PointEnumerator { arr, ring, columns, total })
    }

    pub fn residue_ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn point_count(&self) -> u64 {
        self.total
    }

    /// `u G` for a point `u`.
    pub fn image(&self, u: &[Residue], out: &mut Vec<Residue>) {
        out.clear();
        for col in &self.columns {
            let mut acc = self.ring.zero();
            for (x, c) in u.iter().zip(col) {
                acc = self.ring.add(acc, self.ring.mul(*x, *c));
            }
            out.push(acc);
        }
    }

    /// Calls `f(u, uG)` for every point `u`, in index order.
    pub fn for_each(&self, mut f: impl FnMut(&[Residue], &[Residue])) {
        let ell = self.arr.rank();
        let size = self.ring.cardinality() as usize;
        let mut idx = vec![0usize; ell];
        let mut u = vec![self.ring.zero(); ell];
        let mut img = Vec::with_capacity(self.columns.len());
        for _ in 0..self.total {
            self.image(&u, &mut img);
            f(&u, &img);
            for k in (0..ell).rev() {
                idx[k] += 1;
                if idx[k] < size {
                    u[k] = self.ring.from_index(idx[k]);
                    break;
                }
                idx[k] = 0;
                u[k] = self.ring.zero();
            }
        }
    }
}

/// `#H_{J, O/a}` by enumeration.
pub fn count_h_brute(a: &Arrangement, j: SubsetKey, ideal: &Ideal, limits: &Limits) -> Result<u64> {
    let pts = PointEnumerator::new(a, ideal, limits)?;
    let cols: Vec<usize> = subset_members(j & a.full_subset()).collect();
    let mut n = 0;
    pts.for_each(|_, img| {
        if cols.iter().all(|&c| img[c] == [0, 0]) {
            n += 1;
        }
    });
    Ok(n)
}

/// Points of `(O/a)^l` outside every hyperplane, by enumeration.
pub fn characteristic_brute(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> Result<u64> {
    let pts = PointEnumerator::new(a, ideal, limits)?;
    let mut n = 0;
    pts.for_each(|_, img| {
        if img.iter().all(|x| *x != [0, 0]) {
            n += 1;
        }
    });
    Ok(n)
}

/// Number of extra samples beyond `l + 1` used to confirm each interpolation.
pub const EXTRA_SAMPLES: usize = 1;

/// The characteristic quasi-polynomial with period `rho_A`.
pub fn characteristic_quasi_polynomial(a: &Arrangement, limits: &Limits) -> Result<QuasiPolynomial<UniPoly>> {
    let rho = lcm_period(a, limits)?;
    let counter = HCounter::new(a, limits)?;
    let mut constituents = Vec::new();
    for kappa in divisors(&rho, limits.max_norm)? {
        let mut samples = Vec::new();
        for s in sample_ideals(&kappa, &rho, a.rank() + 1 + EXTRA_SAMPLES)? {
            samples.push((s.norm(), counter.characteristic(&s)?));
        }
        constituents.push((kappa, interpolate(&samples, a.rank())?));
    }
    QuasiPolynomial::new(rho, constituents)
}

/// Over `Z`: `#H_J(q) = q^(l - r) prod gcd(d_i, q)` from the elementary divisors of `G_J`.
pub fn count_h_integer_formula(a: &Arrangement, j: SubsetKey, q: &BigInt) -> Result<BigInt> {
    if a.ring() != RingSpec::Integers {
        return Err(Error::RingMismatch);
    }
    let snf = smith_normal_form(&a.integer_matrix(j & a.full_subset()));
    let mut n = q.pow((a.rank() - snf.rank()) as u32);
    for d in snf.nonzero_divisors() {
        n *= d.gcd(q);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn braid() -> Arrangement {
        Arrangement::integer(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Arrangement::integer(2, &[&[0, 0]]), Err(Error::ZeroVector));
        assert_eq!(Arrangement::integer(2, &[&[1]]), Err(Error::DimensionMismatch { expected: 2, got: 1 }));
        assert_eq!(Arrangement::integer(0, &[]), Err(Error::Empty("ambient rank")));
    }

    #[test]
    fn classes() {
        assert_eq!(zs5().parallel_classes(), &[vec![0, 1]]);
        let e = Arrangement::integer(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(e.class_count(), 2);
        let a = Arrangement::integer(2, &[&[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert_eq!(a.parallel_classes(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn annihilators() {
        let a = Arrangement::integer(1, &[&[2]]).unwrap();
        assert_eq!(cokernel_torsion_annihilator(&a, 1).unwrap(), Ideal::integer(2));
        let g = Arrangement::integer(2, &[&[2, 0], &[0, 1]]).unwrap();
        assert_eq!(cokernel_torsion_annihilator(&g, 3).unwrap(), Ideal::integer(2));
        assert_eq!(cokernel_torsion_annihilator_general(&g, 3).unwrap(), Ideal::integer(2));

        let z = zs5();
        let ring = z.ring();
        let p = Ideal::from_generators(ring, &[RingElement::pair(2, 0), RingElement::pair(1, -1)]).unwrap();
        assert_eq!(cokernel_torsion_annihilator(&z, 1).unwrap(), p);
        assert!(matches!(cokernel_torsion_annihilator(&z, 0), Err(Error::Empty(_))));
    }

    #[test]
    fn periods() {
        let z = zs5();
        let rho = lcm_period(&z, &Limits::default()).unwrap();
        assert_eq!(rho, Ideal::principal(z.ring(), &RingElement::pair(1, 1)).unwrap());
        assert_eq!(lcm_period(&braid(), &Limits::default()).unwrap(), Ideal::integer(1));
        assert_eq!(lcm_period(&Arrangement::integer(1, &[&[2]]).unwrap(), &Limits::default()).unwrap(), Ideal::integer(2));
    }

    #[test]
    fn counts() {
        let l = Limits::default();
        let a = Arrangement::integer(1, &[&[2]]).unwrap();
        assert_eq!(count_h(&a, 1, &Ideal::integer(4)).unwrap(), BigInt::from(2));
        assert_eq!(count_h(&a, 0, &Ideal::integer(4)).unwrap(), BigInt::from(4));
        let z = zs5();
        let rho = lcm_period(&z, &l).unwrap();
        for j in 0..4 {
            let lattice = count_h(&z, j, &rho).unwrap();
            assert_eq!(lattice, BigInt::from(count_h_brute(&z, j, &rho, &l).unwrap()));
        }
    }

    #[test]
    fn brute_characteristic() {
        let l = Limits::default();
        let a = Arrangement::integer(1, &[&[2]]).unwrap();
        assert_eq!(characteristic_brute(&a, &Ideal::integer(6), &l).unwrap(), 4);
        assert_eq!(characteristic_brute(&braid(), &Ideal::integer(5), &l).unwrap(), 60);
        assert_eq!(characteristic_brute(&braid(), &Ideal::integer(1), &l).unwrap(), 0);
        assert!(matches!(characteristic_brute(&braid(), &Ideal::integer(1000), &l), Err(Error::ResourceBound { .. })));
    }

    #[test]
    fn quasi_polynomials() {
        let l = Limits::default();
        let a = Arrangement::integer(1, &[&[2]]).unwrap();
        let f = characteristic_quasi_polynomial(&a, &l).unwrap();
        assert_eq!(f.period(), &Ideal::integer(2));
        assert_eq!(f.constituent(&Ideal::integer(1)).unwrap(), &UniPoly::from_i64(&[-1, 1]));
        assert_eq!(f.constituent(&Ideal::integer(2)).unwrap(), &UniPoly::from_i64(&[-2, 1]));

        let f = characteristic_quasi_polynomial(&braid(), &l).unwrap();
        assert_eq!(f.constituents().len(), 1);
        assert_eq!(f.constituents()[0].1, UniPoly::from_i64(&[0, 2, -3, 1]));

        let f = characteristic_quasi_polynomial(&zs5(), &l).unwrap();
        let got: Vec<UniPoly> = f.constituents().iter().map(|(_, p)| p.clone()).collect();
        let want: Vec<UniPoly> = [1, 2, 3, 4].iter().map(|&k| UniPoly::from_i64(&[0, -k, 1])).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn integer_formula_matches_lattice() {
        let a = Arrangement::integer(2, &[&[2, 4], &[6, 8], &[0, 3]]).unwrap();
        for q in 1..20 {
            let q = BigInt::from(q);
            for j in 0..8 {
                let i = Ideal::integer(q.clone().try_into().unwrap());
                assert_eq!(count_h_integer_formula(&a, j, &q).unwrap(), count_h(&a, j, &i).unwrap());
            }
        }
    }
}
