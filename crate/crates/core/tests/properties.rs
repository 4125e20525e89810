use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use quasichar::arrangement::{count_h, count_h_brute, count_h_integer_formula};
use quasichar::coboundary::{b_brute, b_inclusion_exclusion};
use quasichar::codes::{dual_code, macwilliams_check, weight_enumerator, Code, WeightMode};
use quasichar::io::{parse_arrangement, serialize_arrangement};
use quasichar::linalg::{count_kernel, smith_normal_form};
use quasichar::poly::interpolate;
use quasichar::ring::{ideal_lcm, ideal_product, ideal_sum, ideals_up_to_norm, residue_ring};
use quasichar::{Arrangement, BiPoly, Ideal, IntMatrix, Lattice, Limits, RingElement, RingSpec, UniPoly};

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i64(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// gcd of all k-by-k minors.
fn minors_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    let mut g = 0i64;
    for rs in subsets(m.len(), k) {
        for cs in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&det_i64(&sub));
        }
    }
    g
}

fn arrangement_strategy(ring: RingSpec) -> impl Strategy<Value = Arrangement> {
    let pair = ring != RingSpec::Integers;
    (1usize..=3, 1usize..=4).prop_flat_map(move |(ell, n)| {
        let entry = if pair { (-3i64..=3, -2i64..=2).boxed() } else { (-3i64..=3, Just(0i64)).boxed() };
        prop::collection::vec(prop::collection::vec(entry, ell), n).prop_filter_map("zero vector", move |cols| {
            let vectors: Vec<Vec<RingElement>> =
                cols.iter().map(|c| c.iter().map(|&(a, b)| RingElement::pair(a, b)).collect()).collect();
            Arrangement::new(ring, ell, vectors).ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_invariants(rows in small_matrix(4, 4)) {
        let m = matrix(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.determinant().unwrap().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.determinant().unwrap().abs(), BigInt::from(1));
        let ds: Vec<&BigInt> = s.nonzero_divisors().collect();
        for w in ds.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero());
        }
        for (i, d) in s.elementary_divisors.iter().enumerate() {
            prop_assert_eq!(s.d.get(i, i), d);
        }
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn smith_divisors_are_minor_gcd_ratios(rows in small_matrix(3, 3)) {
        let s = smith_normal_form(&matrix(&rows));
        let mut prod = BigInt::from(1);
        let k_max = rows.len().min(rows[0].len());
        for k in 1..=k_max {
            let d = s.elementary_divisors.get(k - 1).cloned().unwrap_or_else(BigInt::zero);
            prod *= d;
            prop_assert_eq!(prod.clone(), BigInt::from(minors_gcd(&rows, k)));
        }
    }

    #[test]
    fn membership_agrees_with_residues(
        g in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 2),
        v in prop::collection::vec(-20i64..=20, 2),
    ) {
        let det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).abs();
        prop_assume!(det != 0);
        // the lattice contains det * Z^2, so membership is decided modulo det
        let mut residues = HashSet::new();
        for c0 in 0..det {
            for c1 in 0..det {
                residues.insert(((c0 * g[0][0] + c1 * g[1][0]).rem_euclid(det), (c0 * g[0][1] + c1 * g[1][1]).rem_euclid(det)));
            }
        }
        let expected = residues.contains(&(v[0].rem_euclid(det), v[1].rem_euclid(det)));
        let lattice = Lattice::from_generators(&matrix(&g));
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(lattice.contains(&vb).unwrap(), expected);
        prop_assert_eq!(lattice.determinant().unwrap().abs(), BigInt::from(det));
    }

    #[test]
    fn count_kernel_matches_enumeration(rows in small_matrix(3, 3), d in 1i64..=6) {
        let (r, c) = (rows.len(), rows[0].len());
        let mut expected = 0u64;
        let total = d.pow(r as u32);
        for idx in 0..total {
            let x: Vec<i64> = (0..r).map(|i| (idx / d.pow(i as u32)) % d).collect();
            if (0..c).all(|j| (0..r).map(|i| x[i] * rows[i][j]).sum::<i64>().rem_euclid(d) == 0) {
                expected += 1;
            }
        }
        let domain = Lattice::full(r).scaled(&BigInt::from(d));
        let target = Lattice::full(c).scaled(&BigInt::from(d));
        prop_assert_eq!(count_kernel(&matrix(&rows), &target, &domain).unwrap(), BigInt::from(expected));
    }

    #[test]
    fn z_ideal_operations_are_gcd_and_lcm(a in 1i64..=60, b in 1i64..=60) {
        let (ia, ib) = (Ideal::integer(a), Ideal::integer(b));
        prop_assert_eq!(ideal_sum(&ia, &ib).unwrap(), Ideal::integer(a.gcd(&b)));
        prop_assert_eq!(ideal_lcm(&[ia.clone(), ib.clone()]).unwrap(), Ideal::integer(a.lcm(&b)));
        prop_assert_eq!(ideal_product(&ia, &ib).unwrap(), Ideal::integer(a * b));
        prop_assert_eq!(ia.divides(&ib), b % a == 0);
    }

    #[test]
    fn residue_ring_axioms(d in prop::sample::select(vec![-5i64, -1, -3, 2, 3, 5, -7]), pick in 0usize..1000) {
        let ring = RingSpec::quadratic(d).unwrap();
        let ideals = ideals_up_to_norm(ring, 12);
        let ideal = &ideals[pick % ideals.len()];
        let r = residue_ring(ideal, 1000).unwrap();
        let els: Vec<_> = r.elements().collect();
        prop_assert_eq!(els.len() as u64, r.cardinality());
        prop_assert_eq!(BigInt::from(r.cardinality()), ideal.norm());
        for &x in &els {
            prop_assert_eq!(r.add(x, r.neg(x)), r.zero());
            prop_assert_eq!(r.mul(x, r.one()), x);
            for &y in els.iter().take(6) {
                prop_assert_eq!(r.mul(x, y), r.mul(y, x));
                // reduction respects multiplication in O
                let lifted = ring.mul(&r.lift(x), &r.lift(y));
                prop_assert_eq!(r.reduce_element(&lifted), r.mul(x, y));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interpolation_round_trip(coeffs in prop::collection::vec(-1000i64..=1000, 1..=6), start in -10i64..=10, step in 1i64..=4) {
        let p = UniPoly::from_i64(&coeffs);
        let samples: Vec<(BigInt, BigInt)> = (0..coeffs.len() as i64 + 1)
            .map(|k| {
                let t = BigInt::from(start + k * step);
                let y = p.evaluate(&t);
                (t, y)
            })
            .collect();
        prop_assert_eq!(interpolate(&samples, coeffs.len() - 1).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_multiplicative(d in prop::sample::select(vec![-5i64, -1, -2, -3, 2, 3, 5, 6, -6]), i in 0usize..100, j in 0usize..100) {
        let ring = RingSpec::quadratic(d).unwrap();
        let ideals = ideals_up_to_norm(ring, 20);
        let (a, b) = (&ideals[i % ideals.len()], &ideals[j % ideals.len()]);
        let ab = ideal_product(a, b).unwrap();
        prop_assert_eq!(ab.norm(), a.norm() * b.norm());
        prop_assert!(a.divides(&ab) && b.divides(&ab));
        let s = ideal_sum(a, b).unwrap();
        prop_assert!(s.divides(a) && s.divides(b));
    }

    #[test]
    fn inclusion_exclusion_matches_enumeration_over_z(a in arrangement_strategy(RingSpec::Integers), q in 1i64..=9) {
        let l = Limits::default();
        let ideal = Ideal::integer(q);
        let brute = b_brute(&a, &ideal, &l).unwrap();
        prop_assert_eq!(b_inclusion_exclusion(&a, &ideal, &l).unwrap(), brute.clone());
        prop_assert_eq!(brute.iter().sum::<BigInt>(), BigInt::from(q).pow(a.rank() as u32));
        for j in 0..=a.full_subset() {
            let n = BigInt::from(count_h_brute(&a, j, &ideal, &l).unwrap());
            prop_assert_eq!(count_h(&a, j, &ideal).unwrap(), n.clone());
            prop_assert_eq!(count_h_integer_formula(&a, j, &BigInt::from(q)).unwrap(), n);
        }
    }

    #[test]
    fn inclusion_exclusion_matches_enumeration_over_quadratic(
        a in arrangement_strategy(RingSpec::quadratic(-5).unwrap()),
        pick in 0usize..100,
    ) {
        let l = Limits::default();
        let ideals = ideals_up_to_norm(a.ring(), 9);
        let ideal = &ideals[pick % ideals.len()];
        prop_assume!(ideal.norm().pow(a.rank() as u32) <= BigInt::from(20_000));
        prop_assert_eq!(b_inclusion_exclusion(&a, ideal, &l).unwrap(), b_brute(&a, ideal, &l).unwrap());
    }

    #[test]
    fn arrangement_files_round_trip(a in arrangement_strategy(RingSpec::quadratic(-3).unwrap())) {
        let text = serialize_arrangement(&a, Some("p".into())).unwrap();
        prop_assert_eq!(parse_arrangement(&text).unwrap(), a);
    }

    #[test]
    fn random_codes_satisfy_duality(
        q in 2i64..=12,
        n in 1usize..=4,
        gens in prop::collection::vec(prop::collection::vec(0i64..12, 4), 1..=3),
    ) {
        let l = Limits::default();
        let r = residue_ring(&Ideal::integer(q), 1000).unwrap();
        let gens: Vec<Vec<[i64; 2]>> = gens.iter().map(|g| g[..n].iter().map(|&x| r.reduce(x as i128, 0)).collect()).collect();
        let c = Code::span(r.clone(), n, &gens, &l).unwrap();
        prop_assert!(c.is_linear());
        let d = dual_code(&c, &l).unwrap();
        prop_assert_eq!((c.size() * d.size()) as u64, (q as u64).pow(n as u32));
        let dd = dual_code(&d, &l).unwrap();
        prop_assert_eq!(&dd, &c);
        let w = weight_enumerator(&c, &WeightMode::Hamming).unwrap();
        prop_assert_eq!(w.evaluate(&BigInt::from(1), &BigInt::from(1)), BigInt::from(c.size()));
        prop_assert_eq!(w.homogeneous_degree(), Some(n as u32));
        prop_assert!(w.coeff(n as u32, 0) >= BigInt::from(1));
        prop_assert!(macwilliams_check(&c, &l).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(
        a in prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..5),
        b in prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..5),
        x in -4i64..=4,
        y in -4i64..=4,
    ) {
        let (pa, pb) = (BiPoly::from_i64_terms(&a), BiPoly::from_i64_terms(&b));
        let s1 = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, 2)]);
        let s2 = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, -1)]);
        let prod = &pa * &pb;
        let (xb, yb) = (BigInt::from(x), BigInt::from(y));
        let (u, v) = (&xb + 2 * &yb, &xb - &yb);
        prop_assert_eq!(prod.substitute(&s1, &s2).evaluate(&xb, &yb), pa.evaluate(&u, &v) * pb.evaluate(&u, &v));
    }
}
