//! Base rings: `Z` and maximal orders of quadratic fields `Q(sqrt d)`.
//!
//! Elements are coordinate vectors over the additive basis `{1, w}` where
//! `w = sqrt(d)` if `d != 1 mod 4` and `w = (1 + sqrt(d)) / 2` otherwise.
//! Nonzero ideals are full-rank lattices in those coordinates, kept in Hermite
//! normal form, so ideal equality is representation equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Quadratic { d: i64 },
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec::Integers
    }

    /// Ring of integers of `Q(sqrt d)`; `d` must be squarefree and not 0 or 1.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(RingSpec::Quadratic { d })
    }

    /// Rank of the ring as a Z-module.
    pub fn degree(&self) -> usize {
        match self {
            RingSpec::Integers => 1,
            RingSpec::Quadratic { .. } => 2,
        }
    }

    /// `w^2 = s0 + s1 * w`, returned as `(s0, s1)`.
    pub fn omega_square(&self) -> (i64, i64) {
        match *self {
            RingSpec::Integers => (0, 0),
            RingSpec::Quadratic { d } if d.rem_euclid(4) == 1 => ((d - 1) / 4, 1),
            RingSpec::Quadratic { d } => (d, 0),
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement::new(BigInt::zero(), BigInt::zero())
    }

    pub fn one(&self) -> RingElement {
        RingElement::integer(1)
    }

    pub fn omega(&self) -> RingElement {
        RingElement::new(BigInt::zero(), BigInt::one())
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let (s0, s1) = self.omega_square();
        let bb = &x.b * &y.b;
        let a = &x.a * &y.a + &bb * s0;
        let b = &x.a * &y.b + &x.b * &y.a + &bb * s1;
        RingElement { a, b }
    }

    /// Matrix of `y -> y * x` on coordinates (rows are `x * w^s`).
    pub fn mult_matrix(&self, x: &RingElement) -> IntMatrix {
        match self {
            RingSpec::Integers => IntMatrix::new(1, 1, vec![x.a.clone()]).expect("1x1"),
            RingSpec::Quadratic { .. } => {
                let xw = self.mul(x, &self.omega());
                IntMatrix::new(2, 2, vec![x.a.clone(), x.b.clone(), xw.a, xw.b]).expect("2x2")
            }
        }
    }

    pub fn element_from_coords(&self, coords: &[BigInt]) -> RingElement {
        match self {
            RingSpec::Integers => RingElement::new(coords[0].clone(), BigInt::zero()),
            RingSpec::Quadratic { .. } => RingElement::new(coords[0].clone(), coords[1].clone()),
        }
    }

    /// Short description of the generator, e.g. `w = sqrt(-5)`.
    pub fn describe(&self) -> String {
        match *self {
            RingSpec::Integers => "Z".to_string(),
            RingSpec::Quadratic { d } if d.rem_euclid(4) == 1 => format!("Z[w], w = (1+sqrt({d}))/2"),
            RingSpec::Quadratic { d } => format!("Z[w], w = sqrt({d})"),
        }
    }

    /// Renders an element as `a + b*w`.
    pub fn render(&self, x: &RingElement) -> String {
        if *self == RingSpec::Integers {
            return x.a.to_string();
        }
        let a = &x.a;
        let b = &x.b;
        let w = match (b.is_zero(), b.abs().is_one()) {
            (true, _) => String::new(),
            (false, true) => "w".to_string(),
            (false, false) => format!("{}*w", b.abs()),
        };
        match (a.is_zero(), b.is_zero()) {
            (_, true) => a.to_string(),
            (true, false) => format!("{}{w}", if b.is_negative() { "-" } else { "" }),
            (false, false) => format!("{a} {} {w}", if b.is_negative() { "-" } else { "+" }),
        }
    }
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// `a + b*w` (for `Z`, `b` is always zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub a: BigInt,
    pub b: BigInt,
}

impl RingElement {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        RingElement { a, b }
    }

    pub fn integer(a: i64) -> Self {
        RingElement { a: BigInt::from(a), b: BigInt::zero() }
    }

    pub fn pair(a: i64, b: i64) -> Self {
        RingElement { a: BigInt::from(a), b: BigInt::from(b) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn coords(&self, ring: &RingSpec) -> Vec<BigInt> {
        match ring {
            RingSpec::Integers => vec![self.a.clone()],
            RingSpec::Quadratic { .. } => vec![self.a.clone(), self.b.clone()],
        }
    }

    pub fn add(&self, o: &RingElement) -> RingElement {
        RingElement { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &RingElement) -> RingElement {
        RingElement { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        RingElement { a: &self.a * k, b: &self.b * k }
    }
}

/// A nonzero ideal, stored as its HNF lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring: RingSpec,
    lattice: Lattice,
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then_with(|| self.norm().cmp(&other.norm()))
            .then_with(|| self.lattice.cmp(&other.lattice))
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ideal {
    pub fn from_generators(ring: RingSpec, generators: &[RingElement]) -> Result<Ideal> {
        let mut rows = Vec::new();
        for g in generators {
            rows.extend(ring.mult_matrix(g).row_vecs());
        }
        let lattice = Lattice::from_rows(ring.degree(), rows)?;
        if !lattice.is_full_rank() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Ideal { ring, lattice })
    }

    /// Checks full rank and stability under multiplication by `w`.
    pub fn from_lattice(ring: RingSpec, lattice: Lattice) -> Result<Ideal> {
        if lattice.ambient_rank() != ring.degree() {
            return Err(Error::DimensionMismatch { expected: ring.degree(), got: lattice.ambient_rank() });
        }
        if !lattice.is_full_rank() {
            return Err(Error::ZeroIdeal);
        }
        let omega = ring.mult_matrix(&ring.omega());
        for i in 0..lattice.rank() {
            let image = omega.apply(lattice.basis().row(i))?;
            if !lattice.contains(&image)? {
                return Err(Error::NotAnIdeal);
            }
        }
        Ok(Ideal { ring, lattice })
    }

    pub fn unit(ring: RingSpec) -> Ideal {
        Ideal { ring, lattice: Lattice::full(ring.degree()) }
    }

    pub fn principal(ring: RingSpec, x: &RingElement) -> Result<Ideal> {
        Self::from_generators(ring, std::slice::from_ref(x))
    }

    /// `qZ` for a positive integer `q`.
    pub fn integer(q: i64) -> Ideal {
        Self::principal(RingSpec::Integers, &RingElement::integer(q)).expect("q != 0")
    }

    /// `m * self` for a nonzero integer `m`.
    pub fn scaled(&self, m: &BigInt) -> Ideal {
        Ideal { ring: self.ring, lattice: self.lattice.scaled(m) }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn norm(&self) -> BigInt {
        self.lattice.determinant().expect("ideals have full rank")
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Z-basis of the ideal (at most two elements), which also generates it as an ideal.
    pub fn basis_elements(&self) -> Vec<RingElement> {
        self.lattice.basis().row_vecs().iter().map(|r| self.ring.element_from_coords(r)).collect()
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        self.lattice.contains(&x.coords(&self.ring)).unwrap_or(false)
    }

    /// `self | other`, i.e. `other` is contained in `self`.
    pub fn divides(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.lattice.contains_lattice(&other.lattice)
    }

    pub fn label(&self) -> String {
        match self.ring {
            RingSpec::Integers => self.norm().to_string(),
            RingSpec::Quadratic { .. } => {
                let parts: Vec<String> = self.basis_elements().iter().map(|e| self.ring.render(e)).collect();
                format!("<{}>", parts.join(", "))
            }
        }
    }

    /// HNF coordinate rows, used for serialisation.
    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.lattice.basis().row_vecs()
    }

    fn hnf_small(&self) -> (i64, i64, i64) {
        let b = self.lattice.basis();
        let g = |i, j| b.get(i, j).to_i64().expect("residue ring within i64 range");
        match self.ring {
            RingSpec::Integers => (g(0, 0), 0, 1),
            RingSpec::Quadratic { .. } => (g(0, 0), g(0, 1), g(1, 1)),
        }
    }

    /// Representatives `w` of `self^-1 / O`, meaning the points `w / N(self)`
    /// with `w` reduced modulo `N(self) * O`. Sorted lexicographically.
    pub fn inverse_quotient_reps(&self) -> (BigInt, Vec<RingElement>) {
        let n = self.norm();
        let deg = self.ring.degree();
        let gens = self.basis_elements();
        // w with w * g in N*O for every generator g
        let mut rows = vec![Vec::new(); deg];
        for g in &gens {
            let m = self.ring.mult_matrix(g);
            for (s, row) in rows.iter_mut().enumerate() {
                row.extend(m.row(s).iter().cloned());
            }
        }
        let cols = deg * gens.len();
        let map = IntMatrix::from_rows(cols, rows).expect("consistent widths");
        let scaled_target = Lattice::full(cols).scaled(&n);
        let l = Lattice::preimage(&map, &scaled_target).expect("dimensions agree");
        let box_lattice = Lattice::preimage(l.basis(), &Lattice::full(deg).scaled(&n)).expect("dimensions agree");
        let bounds: Vec<BigInt> = (0..deg).map(|i| box_lattice.basis().get(i, i).clone()).collect();
        let mut reps = Vec::new();
        let mut x = vec![BigInt::zero(); deg];
        loop {
            let w = l.basis().apply(&x).expect("dimensions agree");
            let w: Vec<BigInt> = w.into_iter().map(|c| c.mod_floor(&n)).collect();
            reps.push(self.ring.element_from_coords(&w));
            let mut i = 0;
            loop {
                if i == deg {
                    reps.sort();
                    return (n, reps);
                }
                x[i] += 1;
                if x[i] < bounds[i] {
                    break;
                }
                x[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn same_ring(a: &Ideal, b: &Ideal) -> Result<()> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `a + b`, the gcd of two ideals.
pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a, b)?;
    Ok(Ideal { ring: a.ring, lattice: a.lattice.sum(&b.lattice)? })
}

pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a, b)?;
    let mut gens = Vec::new();
    for x in a.basis_elements() {
        for y in b.basis_elements() {
            gens.push(a.ring.mul(&x, &y));
        }
    }
    Ideal::from_generators(a.ring, &gens)
}

/// Intersection of the ideals, which is their lcm in a Dedekind domain.
pub fn ideal_lcm(ideals: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = ideals.split_first().ok_or(Error::Empty("ideal list"))?;
    let mut acc = first.clone();
    for i in rest {
        same_ring(&acc, i)?;
        acc = Ideal { ring: acc.ring, lattice: acc.lattice.intersection(&i.lattice)? };
    }
    Ok(acc)
}

pub fn absolute_norm(a: &Ideal) -> BigInt {
    a.norm()
}

fn int_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Whether the HNF lattice `[[a, b], [0, c]]` is stable under `w`.
fn omega_stable(ring: &RingSpec, a: i64, b: i64, c: i64) -> bool {
    let (s0, s1) = ring.omega_square();
    let contains = |x: i128, y: i128| -> bool {
        if x.rem_euclid(a as i128) != 0 {
            return false;
        }
        let k = x / a as i128;
        (y - k * b as i128).rem_euclid(c as i128) == 0
    };
    // (a + b w) * w = b*s0 + (a + b*s1) w ;  c w * w = c*s0 + c*s1 w
    contains(b as i128 * s0 as i128, a as i128 + b as i128 * s1 as i128)
        && contains(c as i128 * s0 as i128, c as i128 * s1 as i128)
}

fn hnf_ideal(ring: RingSpec, a: i64, b: i64, c: i64) -> Ideal {
    let lattice = Lattice::from_rows(
        2,
        vec![vec![BigInt::from(a), BigInt::from(b)], vec![BigInt::zero(), BigInt::from(c)]],
    )
    .expect("2 columns");
    Ideal { ring, lattice }
}

/// All ideals containing `a`, sorted by norm then basis. Enumerates subgroups
/// of `O/a` as HNF superlattices and keeps the `w`-stable ones.
pub fn divisors(a: &Ideal, max_norm: u64) -> Result<Vec<Ideal>> {
    let n = a.norm();
    let n = n.to_u64().filter(|&v| v <= max_norm).ok_or_else(|| Error::resource("divisor norm", &n, max_norm))?;
    let mut out = Vec::new();
    match a.ring {
        RingSpec::Integers => {
            for d in int_divisors(n) {
                out.push(Ideal::integer(d as i64));
            }
        }
        RingSpec::Quadratic { .. } => {
            let (a0, a1, a2) = a.hnf_small();
            let gens = [(a0 as i128, a1 as i128), (0i128, a2 as i128)];
            for c in int_divisors(n) {
                for x in int_divisors(n / c) {
                    for y in 0..c {
                        let (xa, yb, zc) = (x as i64, y as i64, c as i64);
                        let contains = gens.iter().all(|&(u, v)| {
                            u.rem_euclid(xa as i128) == 0 && (v - (u / xa as i128) * yb as i128).rem_euclid(zc as i128) == 0
                        });
                        if contains && omega_stable(&a.ring, xa, yb, zc) {
                            out.push(hnf_ideal(a.ring, xa, yb, zc));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every nonzero ideal of norm at most `max_norm`, sorted.
pub fn ideals_up_to_norm(ring: RingSpec, max_norm: u64) -> Vec<Ideal> {
    let mut out = Vec::new();
    match ring {
        RingSpec::Integers => out.extend((1..=max_norm).map(|q| Ideal::integer(q as i64))),
        RingSpec::Quadratic { .. } => {
            for a in 1..=max_norm {
                for c in 1..=max_norm / a {
                    for b in 0..c {
                        if omega_stable(&ring, a as i64, b as i64, c as i64) {
                            out.push(hnf_ideal(ring, a as i64, b as i64, c as i64));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The first `how_many` ideals `kappa * <m>` with `m` coprime to `N(rho)`.
/// Each satisfies `a + rho = kappa`, and their norms `N(kappa) m^deg` are distinct.
pub fn sample_ideals(kappa: &Ideal, rho: &Ideal, how_many: usize) -> Result<Vec<Ideal>> {
    same_ring(kappa, rho)?;
    if !kappa.divides(rho) {
        return Err(Error::NotADivisor(kappa.label()));
    }
    let n = rho.norm();
    let mut out = Vec::with_capacity(how_many);
    let mut m = BigInt::one();
    while out.len() < how_many {
        if m.gcd(&n).is_one() {
            let a = kappa.scaled(&m);
            if ideal_sum(&a, rho)? != *kappa {
                return Err(Error::Internal(format!("sample {} + {} != {}", a, rho, kappa)));
            }
            out.push(a);
        }
        m += 1;
    }
    Ok(out)
}

/// Element of a residue ring: coordinates reduced into the HNF box.
pub type Residue = [i64; 2];

/// The finite ring `O/a` with representatives `x + y w`, `0 <= x < h00`,
/// `0 <= y < h11` for the HNF `[[h00, h01], [0, h11]]` of `a`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    ideal: Ideal,
    h00: i64,
    h01: i64,
    h11: i64,
    omega_sq: (i64, i64),
    size: u64,
}

impl ResidueRing {
    pub fn new(ideal: &Ideal, max_norm: u64) -> Result<Self> {
        let n = ideal.norm();
        let size = n.to_u64().filter(|&v| v <= max_norm).ok_or_else(|| Error::resource("residue ring size", &n, max_norm))?;
        let (h00, h01, h11) = ideal.hnf_small();
        Ok(ResidueRing { ideal: ideal.clone(), h00, h01, h11, omega_sq: ideal.ring.omega_square(), size })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn cardinality(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> Residue {
        [0, 0]
    }

    pub fn one(&self) -> Residue {
        self.reduce(1, 0)
    }

    pub fn reduce(&self, x: i128, y: i128) -> Residue {
        let k = x.div_euclid(self.h00 as i128);
        let x = x - k * self.h00 as i128;
        let y = (y - k * self.h01 as i128).rem_euclid(self.h11 as i128);
        [x as i64, y as i64]
    }

    pub fn reduce_element(&self, e: &RingElement) -> Residue {
        let n = BigInt::from(self.size);
        let a = e.a.mod_floor(&n).to_i128().expect("below norm");
        let b = e.b.mod_floor(&n).to_i128().expect("below norm");
        self.reduce(a, b)
    }

    pub fn lift(&self, r: Residue) -> RingElement {
        RingElement::pair(r[0], r[1])
    }

    pub fn add(&self, p: Residue, q: Residue) -> Residue {
        self.reduce(p[0] as i128 + q[0] as i128, p[1] as i128 + q[1] as i128)
    }

    pub fn sub(&self, p: Residue, q: Residue) -> Residue {
        self.reduce(p[0] as i128 - q[0] as i128, p[1] as i128 - q[1] as i128)
    }

    pub fn neg(&self, p: Residue) -> Residue {
        self.reduce(-(p[0] as i128), -(p[1] as i128))
    }

    pub fn mul(&self, p: Residue, q: Residue) -> Residue {
        let (s0, s1) = (self.omega_sq.0 as i128, self.omega_sq.1 as i128);
        let (a, b, c, d) = (p[0] as i128, p[1] as i128, q[0] as i128, q[1] as i128);
        let bd = b * d;
        self.reduce(a * c + bd * s0, a * d + b * c + bd * s1)
    }

    pub fn is_zero(&self, p: Residue) -> bool {
        p == [0, 0]
    }

    pub fn index(&self, p: Residue) -> usize {
        (p[0] * self.h11 + p[1]) as usize
    }

    pub fn from_index(&self, i: usize) -> Residue {
        [(i as i64) / self.h11, (i as i64) % self.h11]
    }

    /// All representatives in index order.
    pub fn elements(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.size as usize).map(move |i| self.from_index(i))
    }

    pub fn render(&self, p: Residue) -> String {
        self.ideal.ring.render(&self.lift(p))
    }
}

pub fn residue_ring(a: &Ideal, max_norm: u64) -> Result<ResidueRing> {
    ResidueRing::new(a, max_norm)
}
