//! The poset of layers of `A(K/O)`, built from the `rho`-torsion points.
//!
//! A point `u` of `(rho^-1/O)^l` is stored by its numerators `w` with
//! `u = w / N(rho)`. For each flat `F` of the vector matroid such that
//! `J = F ∩ J(u)` still spans `F`, the point lies in exactly one layer with
//! defining set `J`, identified by the class of `w G_J` modulo `N(rho) * G_J(O^l)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arrangement::{lcm_period, subset_members, Arrangement, SubsetKey};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice};
use crate::poly::{BiPoly, UniPoly};
use crate::ring::{divisors, ideal_sum, Ideal, RingElement, RingSpec};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    /// `J_Z`.
    pub subset: SubsetKey,
    /// Numerators of the lexicographically least torsion point in the layer.
    pub representative: Vec<RingElement>,
    pub dim: usize,
    /// Number of atoms below this layer.
    pub atom_count: usize,
}

#[derive(Clone, Debug)]
struct SubsetData {
    rank: usize,
    matrix: IntMatrix,
    /// `N * G_J(O^l)`.
    relations: Lattice,
}

impl SubsetData {
    fn new(a: &Arrangement, j: SubsetKey, den: &BigInt) -> Self {
        let matrix = a.coordinate_matrix(j);
        let relations = Lattice::from_generators(&matrix).scaled(den);
        SubsetData { rank: matrix.rank() / a.ring().degree(), matrix, relations }
    }

    fn key(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let img = self.matrix.apply(coords).expect("dimensions agree");
        self.relations.reduce(&img).expect("dimensions agree")
    }
}

#[derive(Clone, Debug)]
pub struct LayerPoset {
    arrangement: Arrangement,
    rho: Ideal,
    denominator: BigInt,
    reps: Vec<RingElement>,
    flats: Vec<(SubsetKey, usize)>,
    subsets: BTreeMap<SubsetKey, SubsetData>,
    layers: Vec<Layer>,
    keys: Vec<Vec<BigInt>>,
    leq: Vec<Vec<bool>>,
    mobius: Vec<Vec<BigInt>>,
    torsion: Vec<(Ideal, Vec<bool>)>,
}

fn closure(a: &Arrangement, s: SubsetKey) -> SubsetKey {
    let r = a.rank_of(s);
    (0..a.len()).filter(|&j| a.rank_of(s | 1 << j) == r).fold(s, |m, j| m | 1 << j)
}

/// All flats of the vector matroid of `A`, sorted by (rank, mask).
pub fn flats(a: &Arrangement) -> Vec<SubsetKey> {
    let mut seen = BTreeSet::from([closure(a, 0)]);
    let mut stack = vec![closure(a, 0)];
    while let Some(f) = stack.pop() {
        for j in 0..a.len() {
            if f >> j & 1 == 0 {
                let g = closure(a, f | 1 << j);
                if seen.insert(g) {
                    stack.push(g);
                }
            }
        }
    }
    let mut out: Vec<SubsetKey> = seen.into_iter().collect();
    out.sort_by_key(|&f| (a.rank_of(f), f));
    out
}

fn point_coords(ring: &RingSpec, u: &[RingElement]) -> Vec<BigInt> {
    u.iter().flat_map(|e| e.coords(ring)).collect()
}

/// `(u - v) G_J in den * G_J(O^l)`, for points given by numerators over `den`.
pub fn coset_membership(a: &Arrangement, u: &[RingElement], v: &[RingElement], den: &BigInt, j: SubsetKey) -> Result<bool> {
    if u.len() != a.rank() || v.len() != a.rank() {
        return Err(Error::DimensionMismatch { expected: a.rank(), got: u.len().min(v.len()) });
    }
    let ring = a.ring();
    let diff: Vec<RingElement> = u.iter().zip(v).map(|(x, y)| x.sub(y)).collect();
    let m = a.coordinate_matrix(j);
    let lattice = Lattice::from_generators(&m).scaled(den);
    lattice.contains(&m.apply(&point_coords(&ring, &diff))?)
}

/// Iterates over `(rho^-1/O)^l` in lexicographic order of numerators.
struct Points<'a> {
    reps: &'a [RingElement],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Points<'a> {
    fn new(reps: &'a [RingElement], ell: usize) -> Self {
        Points { reps, idx: vec![0; ell], done: reps.is_empty() }
    }
}

impl Iterator for Points<'_> {
    type Item = Vec<RingElement>;
    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.reps[i].clone()).collect();
        self.done = true;
        for k in (0..self.idx.len()).rev() {
            self.idx[k] += 1;
            if self.idx[k] < self.reps.len() {
                self.done = false;
                break;
            }
            self.idx[k] = 0;
        }
        Some(out)
    }
}

impl LayerPoset {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn period(&self) -> &Ideal {
        &self.rho
    }

    /// `N(rho)`, the common denominator of every representative.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Index of the minimum (the ambient layer).
    pub fn bottom(&self) -> usize {
        0
    }

    /// `Z <= Y`, i.e. `Y ⊆ Z`.
    pub fn leq(&self, z: usize, y: usize) -> bool {
        self.leq[z][y]
    }

    pub fn mobius(&self, z: usize, y: usize) -> &BigInt {
        &self.mobius[z][y]
    }

    pub fn atoms(&self) -> Vec<usize> {
        (1..self.len()).filter(|&z| self.is_atom(z)).collect()
    }

    fn is_atom(&self, z: usize) -> bool {
        z != 0 && (1..self.len()).all(|w| w == z || !self.leq[w][z])
    }

    /// `(Z, Y)` pairs with `Y` covering `Z`.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for z in 0..n {
            for y in 0..n {
                if z != y && self.leq[z][y] && !(0..n).any(|w| w != z && w != y && self.leq[z][w] && self.leq[w][y]) {
                    out.push((z, y));
                }
            }
        }
        out
    }

    /// Divisors of `rho` with their torsion subposets.
    pub fn torsion_table(&self) -> &[(Ideal, Vec<bool>)] {
        &self.torsion
    }

    /// Membership in `L[kappa + rho]`.
    pub fn torsion_subposet(&self, kappa: &Ideal) -> Result<Vec<bool>> {
        let k = ideal_sum(kappa, &self.rho)?;
        self.torsion
            .iter()
            .find(|(d, _)| *d == k)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::NotADivisor(k.label()))
    }

    /// Whether the torsion point with numerators `v` lies in layer `z`.
    pub fn contains_point(&self, z: usize, v: &[RingElement]) -> bool {
        let layer = &self.layers[z];
        let ring = self.arrangement.ring();
        layer.subset & !j_of(&self.arrangement, v, &self.denominator) == 0
            && self.subsets[&layer.subset].key(&point_coords(&ring, v)) == self.keys[z]
    }

    /// Module test: for every generator `g` of `kappa`, `g u` lies in the layer's
    /// own coset class, i.e. `(g w) G_J in N * G_J(O^l)`.
    fn module_torsion_test(&self, z: usize, kappa: &Ideal) -> bool {
        let ring = self.arrangement.ring();
        let data = &self.subsets[&self.layers[z].subset];
        let rep = &self.layers[z].representative;
        kappa.basis_elements().iter().all(|g| {
            let gu: Vec<RingElement> = rep.iter().map(|x| ring.mul(g, x)).collect();
            data.key(&point_coords(&ring, &gu)).iter().all(Zero::is_zero)
        })
    }

    /// `#M(Z)[a] = sum_{Y >= Z in L[a + rho]} mu(Z, Y) N(a)^dim Y`.
    pub fn complement_count(&self, z: usize, a: &Ideal) -> Result<BigInt> {
        let member = self.torsion_subposet(a)?;
        if !member[z] {
            return Err(Error::NotTorsion);
        }
        let n = a.norm();
        Ok((0..self.len())
            .filter(|&y| member[y] && self.leq[z][y])
            .map(|y| &self.mobius[z][y] * n.pow(self.layers[y].dim as u32))
            .sum())
    }

    /// `sum_{Z in L[kappa]} (sum_{Y >= Z} mu(Z, Y) t^dim Y) x^a(Z)`.
    pub fn constituent_from_poset(&self, kappa: &Ideal) -> Result<BiPoly> {
        let member = self.torsion_subposet(kappa)?;
        let mut out = BiPoly::zero();
        for z in (0..self.len()).filter(|&z| member[z]) {
            for y in (0..self.len()).filter(|&y| member[y] && self.leq[z][y]) {
                out.add_term(self.layers[y].dim as u32, self.layers[z].atom_count as u32, self.mobius[z][y].clone());
            }
        }
        Ok(out)
    }

    /// `sum_{Z in L[kappa]} mu(0, Z) t^dim Z`.
    pub fn characteristic_from_poset(&self, kappa: &Ideal) -> Result<UniPoly> {
        let member = self.torsion_subposet(kappa)?;
        let mut out = UniPoly::zero();
        for z in (0..self.len()).filter(|&z| member[z]) {
            out = &out + &UniPoly::monomial(self.layers[z].dim, self.mobius[0][z].clone());
        }
        Ok(out)
    }

    /// `w / N` rendered as a tuple of reduced fractions.
    pub fn render_point(&self, u: &[RingElement]) -> String {
        let ring = self.arrangement.ring();
        let parts: Vec<String> = u
            .iter()
            .map(|e| {
                let g = e.a.gcd(&e.b).gcd(&self.denominator);
                let num = RingElement::new(&e.a / &g, &e.b / &g);
                let den = &self.denominator / &g;
                let s = ring.render(&num);
                match (den.is_one(), num.a.is_zero() || num.b.is_zero()) {
                    (true, _) => s,
                    (false, true) => format!("{s}/{den}"),
                    (false, false) => format!("({s})/{den}"),
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }

    /// Hasse diagram; one rank per dimension, nodes in poset order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph layers {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, z) in self.layers.iter().enumerate() {
            let flat: Vec<String> = subset_members(z.subset).map(|j| (j + 1).to_string()).collect();
            let _ = writeln!(
                s,
                "  n{i} [label=\"{} J={{{}}} dim {}\"];",
                self.render_point(&z.representative),
                flat.join(","),
                z.dim
            );
        }
        let mut by_dim: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, z) in self.layers.iter().enumerate() {
            by_dim.entry(z.dim).or_default().push(i);
        }
        for nodes in by_dim.values().rev() {
            let names: Vec<String> = nodes.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
        }
        for (z, y) in self.cover_relations() {
            let _ = writeln!(s, "  n{z} -> n{y};");
        }
        s.push_str("}\n");
        s
    }

    fn layers_containing(
        &self,
        coords: &[BigInt],
        jmask: SubsetKey,
        index: &BTreeMap<(SubsetKey, Vec<BigInt>), usize>,
        cache: &mut BTreeMap<SubsetKey, SubsetData>,
    ) -> Vec<usize> {
        let a = &self.arrangement;
        let mut out = Vec::new();
        for &(f, rank) in &self.flats {
            let j = f & jmask;
            let data = cache.entry(j).or_insert_with(|| SubsetData::new(a, j, &self.denominator));
            if data.rank == rank {
                out.push(index[&(j, data.key(coords))]);
            }
        }
        out
    }
}

/// `J(u)` for numerators `w`: the vectors with `w . a` in `N O`.
fn j_of(a: &Arrangement, u: &[RingElement], den: &BigInt) -> SubsetKey {
    (0..a.len())
        .filter(|&j| {
            let p = a.pairing(u, j);
            p.a.is_multiple_of(den) && p.b.is_multiple_of(den)
        })
        .fold(0, |m, j| m | 1 << j)
}

fn is_torsion_point(ring: &RingSpec, u: &[RingElement], gens: &[RingElement], den: &BigInt) -> bool {
    gens.iter().all(|g| {
        u.iter().all(|x| {
            let p = ring.mul(g, x);
            p.a.is_multiple_of(den) && p.b.is_multiple_of(den)
        })
    })
}

pub fn build_layer_poset(a: &Arrangement, limits: &Limits) -> Result<LayerPoset> {
    let rho = lcm_period(a, limits)?;
    let ring = a.ring();
    limits.check_points(&rho.norm(), a.rank())?;
    let (den, reps) = rho.inverse_quotient_reps();
    let flat_list: Vec<(SubsetKey, usize)> = flats(a).into_iter().map(|f| (f, a.rank_of(f))).collect();
    let mut subsets: BTreeMap<SubsetKey, SubsetData> = BTreeMap::new();

    // (J, key) -> lexicographically first point
    let mut found: BTreeMap<(SubsetKey, Vec<BigInt>), Vec<RingElement>> = BTreeMap::new();
    for u in Points::new(&reps, a.rank()) {
        let jm = j_of(a, &u, &den);
        let coords = point_coords(&ring, &u);
        for &(f, rank) in &flat_list {
            let j = f & jm;
            let data = subsets.entry(j).or_insert_with(|| SubsetData::new(a, j, &den));
            if data.rank == rank {
                found.entry((j, data.key(&coords))).or_insert_with(|| u.clone());
            }
        }
    }

    let ell = a.rank();
    let dim_of = |j: SubsetKey| ell - subsets[&j].rank;
    let mut entries: Vec<((SubsetKey, Vec<BigInt>), Vec<RingElement>)> = found.into_iter().collect();
    entries.sort_by(|x, y| {
        dim_of(y.0 .0)
            .cmp(&dim_of(x.0 .0))
            .then(x.0 .0.cmp(&y.0 .0))
            .then_with(|| x.1.cmp(&y.1))
    });

    let n = entries.len();
    let mut layers = Vec::with_capacity(n);
    let mut keys = Vec::with_capacity(n);
    for ((j, key), rep) in entries {
        layers.push(Layer { subset: j, representative: rep, dim: dim_of(j), atom_count: 0 });
        keys.push(key);
    }
    if layers.first().map(|z| z.subset) != Some(0) {
        return Err(Error::Internal("ambient layer missing".into()));
    }

    let mut leq = vec![vec![false; n]; n];
    for z in 0..n {
        let dz = &subsets[&layers[z].subset];
        for y in 0..n {
            leq[z][y] = layers[z].subset & !layers[y].subset == 0
                && dz.key(&point_coords(&ring, &layers[y].representative)) == keys[z];
        }
    }

    // layers are sorted by decreasing dimension, a linear extension of the order
    let mut mobius = vec![vec![BigInt::zero(); n]; n];
    for z in 0..n {
        mobius[z][z] = BigInt::one();
        for y in z + 1..n {
            if leq[z][y] {
                let s: BigInt = (z..y).filter(|&w| leq[z][w] && leq[w][y]).map(|w| mobius[z][w].clone()).sum();
                mobius[z][y] = -s;
            }
        }
    }

    let mut poset = LayerPoset {
        arrangement: a.clone(),
        rho: rho.clone(),
        denominator: den,
        reps,
        flats: flat_list,
        subsets,
        layers,
        keys,
        leq,
        mobius,
        torsion: Vec::new(),
    };
    let atoms = poset.atoms();
    for z in 0..n {
        poset.layers[z].atom_count = atoms.iter().filter(|&&t| poset.leq[t][z]).count();
    }
    for kappa in divisors(&rho, limits.max_norm)? {
        let member = (0..n).map(|z| poset.module_torsion_test(z, &kappa)).collect();
        poset.torsion.push((kappa, member));
    }
    Ok(poset)
}

/// Outcome of the point-enumeration checks on a built poset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub points: u64,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Enumerates every `rho`-torsion point and checks, for each divisor `kappa`:
/// module torsion test against enumeration, `#Z[kappa] = N(kappa)^dim Z`,
/// `#M(Z)[kappa]` against `complement_count`; and, for each point, that it
/// has a unique minimal layer `Z` with `a(Z) = p - wt(u)`, and `a(Y) <= p - wt(u)`
/// for every layer containing it. Also compares layer sharing with parallelism.
pub fn check_lemmas(poset: &LayerPoset) -> Result<LemmaReport> {
    let a = &poset.arrangement;
    let ring = a.ring();
    let den = &poset.denominator;
    let n = poset.len();
    let p = a.class_count();
    let class_masks: Vec<SubsetKey> =
        a.parallel_classes().iter().map(|c| c.iter().fold(0, |m, &i| m | 1 << i)).collect();
    let index: BTreeMap<(SubsetKey, Vec<BigInt>), usize> =
        (0..n).map(|z| ((poset.layers[z].subset, poset.keys[z].clone()), z)).collect();
    let mut cache = poset.subsets.clone();
    let gens: Vec<Vec<RingElement>> = poset.torsion.iter().map(|(k, _)| k.basis_elements()).collect();
    let d = gens.len();
    let mut in_layer = vec![vec![0u64; n]; d];
    let mut in_complement = vec![vec![0u64; n]; d];
    let mut report = LemmaReport::default();

    for u in Points::new(&poset.reps, a.rank()) {
        report.points += 1;
        let jm = j_of(a, &u, den);
        let coords = point_coords(&ring, &u);
        let containing = poset.layers_containing(&coords, jm, &index, &mut cache);
        let maximal: Vec<usize> = containing
            .iter()
            .copied()
            .filter(|&z| !containing.iter().any(|&y| y != z && poset.leq[z][y]))
            .collect();
        let wt = class_masks.iter().filter(|&&m| m & jm == 0).count();
        if maximal.len() != 1 {
            report.failures.push(format!("point {} lies in {} minimal layers", poset.render_point(&u), maximal.len()));
            continue;
        }
        let m = maximal[0];
        if poset.layers[m].atom_count != p - wt {
            report.failures.push(format!(
                "a(Z) = {} but p - wt = {} at {}",
                poset.layers[m].atom_count,
                p - wt,
                poset.render_point(&u)
            ));
        }
        for &z in &containing {
            if poset.layers[z].atom_count > p - wt {
                report.failures.push(format!("a(Z) > p - wt for layer {z} at {}", poset.render_point(&u)));
            }
        }
        for (k, g) in gens.iter().enumerate() {
            if is_torsion_point(&ring, &u, g, den) {
                for &z in &containing {
                    in_layer[k][z] += 1;
                }
                in_complement[k][m] += 1;
            }
        }
    }

    for (k, (kappa, member)) in poset.torsion.iter().enumerate() {
        let norm = kappa.norm();
        for z in 0..n {
            let found = in_layer[k][z] > 0;
            if found != member[z] {
                report.failures.push(format!("torsion test disagrees for layer {z} and {kappa}"));
            }
            if found && BigInt::from(in_layer[k][z]) != norm.pow(poset.layers[z].dim as u32) {
                report.failures.push(format!(
                    "#Z[{kappa}] = {} for layer {z}, expected N^{}",
                    in_layer[k][z],
                    poset.layers[z].dim
                ));
            }
            if member[z] && poset.complement_count(z, kappa)? != BigInt::from(in_complement[k][z]) {
                report.failures.push(format!("#M(Z)[{kappa}] mismatch for layer {z}"));
            }
        }
    }

    let ell = a.rank();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let both = (1 << i) | (1 << j);
            let share = poset.layers.iter().any(|z| z.dim + 1 == ell && z.subset & both == both);
            let parallel = class_masks.iter().any(|&m| m & both == both);
            if share != parallel {
                report.failures.push(format!("vectors {i} and {j}: shared layer {share}, parallel {parallel}"));
            }
        }
    }
    Ok(report)
}
