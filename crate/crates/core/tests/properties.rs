mod common;

use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use common::*;
use shadowcodes::binary::{random_linear_code, BinaryCode, BitMatrix};
use shadowcodes::bounds::{
    gv_min_distance, k0_bisection, k0_cardano, rsrm_relative_bound, shadow_lb_deg1,
    shadow_relative_bound,
};
use shadowcodes::concat::{rm1_encode, ConcatSpec};
use shadowcodes::field::{find_odd_prime_power, Field, FieldElement};
use shadowcodes::poly::{enumerate_monic_irreducibles, monic_irreducible_count, Poly};
use shadowcodes::shadow::{
    build_b1, degree_one_code, degree_two_code, lambda_map, Delta, EvaluationSet, Selection,
};
use shadowcodes::weil::CurveSpec;

fn large_fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(3, 7), (5, 5), (11, 3), (3, 11), (65521, 1)]
            .iter()
            .map(|&(p, m)| Field::new(p, m, None).unwrap())
            .collect()
    })
}

fn fe(i: u32) -> FieldElement {
    FieldElement::from_index(i)
}

fn field(q: u32) -> Field {
    if q.is_multiple_of(2) {
        return Field::new(2, q.trailing_zeros(), None).unwrap();
    }
    let (p, m) = find_odd_prime_power(q as u64).unwrap();
    Field::new(p, m, None).unwrap()
}

fn model(f: &Field) -> PolyField {
    PolyField {
        p: f.characteristic(),
        m: f.degree(),
        modulus: f.modulus().to_vec(),
    }
}

fn odd_orders(max: u32) -> Vec<u32> {
    (3..=max)
        .filter(|&q| find_odd_prime_power(q as u64).is_some())
        .collect()
}

fn rows_of(g: &BitMatrix) -> Vec<Vec<bool>> {
    (0..g.nrows()).map(|i| g.row_bits(i)).collect()
}

// ---------------------------------------------------------------- fields

#[test]
fn field_arithmetic_matches_residue_polynomials() {
    for q in [8, 9, 25, 27, 49, 125] {
        let f = field(q);
        let pm = model(&f);
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.add(fe(a), fe(b)).index(), pm.add(a, b), "q={q} {a}+{b}");
                assert_eq!(f.mul(fe(a), fe(b)).index(), pm.mul(a, b), "q={q} {a}*{b}");
            }
        }
    }
}

#[test]
fn default_modulus_is_least_rootless_monic() {
    for (p, m) in [
        (2, 2),
        (2, 3),
        (3, 2),
        (3, 3),
        (5, 2),
        (7, 2),
        (11, 2),
        (5, 3),
    ] {
        let f = Field::new(p, m, None).unwrap();
        // for m <= 3 irreducible means no root in F_p; order is c_0 first, then c_1, ...
        let mut candidates: Vec<Vec<u32>> = (0..p.pow(m))
            .map(|r| {
                let mut c: Vec<u32> = (0..m).map(|i| r / p.pow(i) % p).collect();
                c.push(1);
                c
            })
            .collect();
        candidates.sort_by(|a, b| a.iter().cmp(b.iter()));
        let rootless = |c: &Vec<u32>| {
            (0..p).all(|x| {
                c.iter()
                    .rev()
                    .fold(0u64, |acc, &ci| (acc * x as u64 + ci as u64) % p as u64)
                    != 0
            })
        };
        let expected = candidates.into_iter().find(rootless).unwrap();
        assert_eq!(f.modulus(), &expected[..], "GF({p}^{m})");
    }
}

#[test]
fn squares_form_an_index_two_subgroup() {
    for q in odd_orders(343) {
        let f = field(q);
        let squares = nonzero_squares(q, |a, b| f.mul(fe(a), fe(b)).index());
        assert_eq!(squares.len() as u32, (q - 1) / 2, "q={q}");
        for a in 1..q {
            assert_eq!(
                f.lg_parity(fe(a)).unwrap() == 0,
                squares.contains(&a),
                "q={q} a={a}"
            );
        }
    }
}

#[test]
fn lg_is_a_homomorphism_on_small_fields() {
    for q in odd_orders(49) {
        let f = field(q);
        for a in 1..q {
            for b in 1..q {
                let lhs = f.lg_parity(f.mul(fe(a), fe(b))).unwrap();
                assert_eq!(
                    lhs,
                    f.lg_parity(fe(a)).unwrap() ^ f.lg_parity(fe(b)).unwrap()
                );
            }
        }
    }
}

#[test]
fn primitive_element_is_least_generator() {
    for q in odd_orders(343).into_iter().chain([4, 8, 16, 32, 64]) {
        let f = field(q);
        let mul = |a: u32, b: u32| f.mul(fe(a), fe(b)).index();
        let alpha = f.primitive_element().index();
        assert_eq!(brute_order(alpha, mul), q as u64 - 1, "q={q}");
        for b in 1..alpha {
            assert!(
                brute_order(b, mul) < q as u64 - 1,
                "q={q}: {b} also generates"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lg_homomorphism_on_larger_fields(qi in 0usize..5, a in 1u32..u32::MAX, b in 1u32..u32::MAX) {
        let f = &large_fields()[qi];
        let q = f.order();
        let (a, b) = (fe(1 + a % (q - 1)), fe(1 + b % (q - 1)));
        let ab = f.mul(a, b);
        prop_assert_eq!(f.lg_parity(ab).unwrap(), f.lg_parity(a).unwrap() ^ f.lg_parity(b).unwrap());
        prop_assert_eq!(f.mul(ab, f.inv(b).unwrap()), a);
    }

    #[test]
    fn table_free_path_agrees_with_model(a in 0u32..177147, b in 0u32..177147) {
        let f = &large_fields()[3];
        prop_assert!(!f.has_tables());
        let pm = model(f);
        prop_assert_eq!(f.mul(fe(a), fe(b)).index(), pm.mul(a, b));
        prop_assert_eq!(f.add(fe(a), fe(b)).index(), pm.add(a, b));
    }
}

// ---------------------------------------------------------------- polynomials

fn all_monic(f: &Field, d: usize) -> Vec<Poly> {
    let q = f.order();
    (0..q.pow(d as u32))
        .map(|r| {
            let mut idx: Vec<u32> = (0..d).map(|i| r / q.pow(i as u32) % q).collect();
            idx.push(1);
            Poly::from_indices(f, &idx).unwrap()
        })
        .collect()
}

#[test]
fn rabin_agrees_with_product_sieve() {
    for q in [3, 5, 7, 9] {
        let f = field(q);
        let monic: Vec<Vec<Poly>> = (0..=4).map(|d| all_monic(&f, d)).collect();
        for d in 1..=4 {
            let mut reducible = HashSet::new();
            for a in 1..=d / 2 {
                for u in &monic[a] {
                    for v in &monic[d - a] {
                        reducible.insert(u.mul(v).unwrap().coefficient_indices());
                    }
                }
            }
            let mut found = 0;
            for p in &monic[d] {
                let irr = !reducible.contains(&p.coefficient_indices());
                assert_eq!(p.is_irreducible().unwrap(), irr, "q={q} {p}");
                found += irr as u64;
            }
            assert_eq!(found, necklace(q as u64, d as u64), "q={q} d={d}");
            if d <= 3 {
                assert_eq!(monic_irreducible_count(q as u64, d), found);
                let listed = enumerate_monic_irreducibles(&f, d, found as usize).unwrap();
                assert_eq!(listed.len() as u64, found);
                assert!(listed
                    .iter()
                    .all(|p| !reducible.contains(&p.coefficient_indices())));
            }
        }
    }
}

fn poly_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..25, 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gcd_divides_and_is_monic(a in poly_strategy(), b in poly_strategy()) {
        let f = field(25);
        let (a, b) = (Poly::from_indices(&f, &a).unwrap(), Poly::from_indices(&f, &b).unwrap());
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn pow_mod_matches_repeated_products(a in poly_strategy(), m in poly_strategy(), e in 0u64..12) {
        let f = field(25);
        let (a, m) = (Poly::from_indices(&f, &a).unwrap(), Poly::from_indices(&f, &m).unwrap());
        prop_assume!(!m.is_constant());
        let mut acc = Poly::one(&f);
        for _ in 0..e {
            acc = acc.mul(&a).unwrap().rem(&m).unwrap();
        }
        prop_assert_eq!(a.pow_mod(e, &m).unwrap(), acc.rem(&m).unwrap());
    }

    #[test]
    fn div_rem_reconstructs(a in poly_strategy(), b in poly_strategy()) {
        let f = field(25);
        let (a, b) = (Poly::from_indices(&f, &a).unwrap(), Poly::from_indices(&f, &b).unwrap());
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.degree().unwrap_or(0) < b.degree().unwrap().max(1) || rem.is_zero());
    }
}

// ---------------------------------------------------------------- shadow codes

fn lambda_oracle(p: &Poly, points: &[FieldElement], squares: &HashSet<u32>) -> Vec<bool> {
    points
        .iter()
        .map(|&b| !squares.contains(&p.eval(b).index()))
        .collect()
}

#[test]
fn lambda_is_a_homomorphism_on_basic_products() {
    for q in odd_orders(49) {
        let f = field(q);
        let squares = nonzero_squares(q, |a, b| f.mul(fe(a), fe(b)).index());
        let e = EvaluationSet::first_n(&f, (q as usize).div_ceil(2)).unwrap();
        let b1 = build_b1(&e).unwrap();
        let polys = b1.polys();
        for p in polys {
            assert_eq!(
                lambda_map(p, &e).unwrap(),
                lambda_oracle(p, e.points(), &squares)
            );
        }
        for p in polys {
            for r in polys {
                let pr = p.mul(r).unwrap();
                let lhs = lambda_map(&pr, &e).unwrap();
                let rhs: Vec<bool> = lambda_map(p, &e)
                    .unwrap()
                    .iter()
                    .zip(lambda_map(r, &e).unwrap())
                    .map(|(x, y)| x ^ y)
                    .collect();
                assert_eq!(lhs, rhs, "q={q} {p} * {r}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_of_basic_polys_land_in_the_row_space(
        qi in 0usize..6,
        exps in prop::collection::vec(0u32..4, 16),
    ) {
        let q = [11u32, 13, 25, 27, 31, 49][qi];
        let f = field(q);
        let code = degree_one_code(&f, q as usize - 6).unwrap();
        let e = code.eval_set();
        let mut product = Poly::one(&f);
        let mut expected = vec![false; e.len()];
        for (i, p) in code.basic_set().polys().iter().enumerate() {
            let x = exps[i];
            for _ in 0..x {
                product = product.mul(p).unwrap();
            }
            if x % 2 == 1 {
                for (a, b) in expected.iter_mut().zip(code.generator().row_bits(i)) {
                    *a ^= b;
                }
            }
        }
        prop_assert_eq!(lambda_map(&product, e).unwrap(), expected);
    }

    #[test]
    fn positive_bound_gives_full_rank_and_distance(qi in 0usize..40, k in 2usize..12) {
        let qs = odd_orders(200);
        let q = qs[qi % qs.len()];
        prop_assume!(k < q as usize);
        let n = q as usize + 1 - k;
        prop_assume!(Delta::degree_one(n, k).is_positive());
        let code = degree_one_code(&field(q), n).unwrap();
        prop_assert_eq!(code.claimed_dim(), k);
        prop_assert_eq!(code.generator().rank(), k);
        let delta = code.delta();
        prop_assert_eq!(delta.ceil(), ceil_half_float(delta.a, delta.b, delta.q));
        let d = brute_min_distance(&rows_of(code.generator()));
        prop_assert!(d as i64 >= delta.ceil(), "q={} n={} dmin={} delta={}", q, n, d, delta);
        prop_assert_eq!(code.binary_code().exact_min_distance().unwrap() as usize, d);
    }

    #[test]
    fn quadratic_codes_meet_their_bound(qi in 0usize..8, k in 1usize..8, seed in any::<u64>()) {
        let q = [25u32, 27, 49, 81, 121, 125, 169, 243][qi];
        prop_assume!(Delta::new(q as u64, q as usize, 2 * k).is_positive());
        let f = field(q);
        for sel in [Selection::Lexicographic, Selection::Random { seed }] {
            let code = degree_two_code(&f, k, sel).unwrap();
            prop_assert_eq!(code.generator().rank(), k);
            let d = code.binary_code().exact_min_distance().unwrap() as i64;
            prop_assert!(d >= code.delta().ceil());
        }
    }
}

#[test]
fn b1_weight_distributions_are_symmetric() {
    for (q, n) in [(11, 7), (13, 9), (25, 20), (27, 21), (49, 40), (81, 72)] {
        let code = degree_one_code(&field(q), n).unwrap();
        let hist = code.binary_code().weight_distribution().unwrap();
        assert_eq!(hist.len(), n + 1);
        for w in 0..=n {
            assert_eq!(hist[w], hist[n - w], "q={q} n={n} w={w}");
        }
        assert_eq!(
            hist,
            brute_weights(&rows_of(code.binary_code().generator()))
        );
    }
}

// ---------------------------------------------------------------- binary codes

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gray_enumeration_matches_brute_force(n in 1usize..90, k in 1usize..12, seed in any::<u64>()) {
        let k = k.min(n);
        let code = random_linear_code(n, k, seed).unwrap();
        let rows = rows_of(code.generator());
        let d = brute_min_distance(&rows);
        prop_assert_eq!(code.exact_min_distance().unwrap() as usize, d);
        prop_assert_eq!(code.naive_min_distance().unwrap() as usize, d);
        let hist = code.weight_distribution().unwrap();
        prop_assert_eq!(&hist, &brute_weights(&rows));
        let support = hist.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w).unwrap();
        prop_assert_eq!(support, d);
        prop_assert!(code.sampled_min_distance_upper(50, seed).unwrap() as usize >= d);
    }

    #[test]
    fn dependent_rows_are_dropped(n in 2usize..70, seed in any::<u64>()) {
        let base = random_linear_code(n, n.min(5), seed).unwrap();
        let mut rows = rows_of(base.generator());
        let sum: Vec<bool> = rows[0].iter().zip(&rows[rows.len() - 1]).map(|(a, b)| a ^ b).collect();
        rows.push(sum);
        let code = BinaryCode::from_generator(&BitMatrix::from_rows(&rows));
        prop_assert_eq!(code.dimension(), base.dimension());
        prop_assert_eq!(code.exact_min_distance().unwrap(), base.exact_min_distance().unwrap());
    }
}

// ---------------------------------------------------------------- concatenation

#[test]
fn nonzero_outer_symbols_give_nonzero_inner_blocks() {
    for m in 1..=3 {
        let spec = ConcatSpec::new(m, 2, 1).unwrap();
        let f = spec.field();
        let theta = spec.theta();
        for s in f.elements() {
            let bits = theta.invert(s);
            assert_eq!(theta.apply(&bits), s);
            let block = rm1_encode(m, &bits).unwrap();
            assert_eq!(
                block.iter().any(|&b| b),
                !s.is_zero(),
                "m={m} s={}",
                s.index()
            );
            if !s.is_zero() {
                assert!(block.iter().filter(|&&b| b).count() >= 1 << (m - 1));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concat_encoding_is_linear(m in 1u32..5, nk in (1usize..9, 1usize..9), a in any::<u64>(), b in any::<u64>()) {
        let n_outer = nk.0.min(1 << (m + 1));
        let k_outer = nk.1.min(n_outer);
        let spec = ConcatSpec::new(m, n_outer, k_outer).unwrap();
        let k = spec.dimension();
        let bits = |x: u64| (0..k).map(|i| x >> (i % 64) & 1 == 1).collect::<Vec<_>>();
        let (ma, mb) = (bits(a), bits(b.rotate_left(7)));
        let sum: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| x ^ y).collect();
        let (ea, eb, es) = (spec.concat_encode(&ma).unwrap(), spec.concat_encode(&mb).unwrap(), spec.concat_encode(&sum).unwrap());
        let xor: Vec<bool> = ea.iter().zip(&eb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(es, xor);
    }

    #[test]
    fn concat_weight_dominates_outer_weight(m in 1u32..5, k_outer in 1usize..5, msg in any::<u64>()) {
        let spec = ConcatSpec::balanced(m, k_outer.min(1 << m)).unwrap();
        let k = spec.dimension();
        let width = m as usize + 1;
        let bits: Vec<bool> = (0..k).map(|i| msg >> (i % 64) & 1 == 1).collect();
        let symbols: Vec<FieldElement> = bits.chunks(width).map(|c| spec.theta().apply(c)).collect();
        let outer = spec.rs_encode(&symbols).unwrap();
        let outer_weight = outer.iter().filter(|s| !s.is_zero()).count();
        if symbols.iter().any(|s| !s.is_zero()) {
            prop_assert!(outer_weight > spec.outer_length() - spec.outer_dim());
        }
        let word = spec.concat_encode(&bits).unwrap();
        let w = word.iter().filter(|&&b| b).count();
        prop_assert!(w >= outer_weight << (m - 1));
    }
}

// ---------------------------------------------------------------- bounds

#[test]
fn gv_matches_big_integer_sums_and_is_monotone() {
    for n in [2usize, 5, 16, 31, 64, 100, 257] {
        let mut prev = usize::MAX;
        for k in 1..=n {
            let d = gv_min_distance(n, k).unwrap();
            assert!(!d.approximate);
            assert_eq!(d.d, brute_gv(n, k), "n={n} k={k}");
            assert!(d.d <= prev);
            prev = d.d;
        }
    }
}

#[test]
fn cubic_root_closed_form_agrees() {
    for n in [3.0, 10.0, 100.0, 1024.0, 1e5] {
        let oracle = bisect_cubic(n);
        assert!((k0_bisection(n) - oracle).abs() < 1e-6, "n={n}");
        assert!((k0_cardano(n) - oracle).abs() < 1e-6, "n={n}");
        assert!(oracle > 0.0 && oracle < n);
    }
}

#[test]
fn relative_bounds_are_ordered() {
    for m in 1..=12 {
        for i in 0..=200 {
            let r = i as f64 / 200.0 / (m as f64 + 1.0);
            let (rsrm, sh) = (rsrm_relative_bound(r), shadow_relative_bound(r, m));
            assert!(rsrm >= sh);
            assert_eq!(rsrm == sh, i == 0);
        }
    }
}

proptest! {
    #[test]
    fn small_dimensions_keep_the_bound_positive(n in 3u64..2_000_000, frac in 0.0f64..1.0) {
        let nf = n as f64;
        let k = 1.0 + frac * (nf.sqrt() - 0.5);
        prop_assert!(shadow_lb_deg1(nf, k) > 0.0);
    }
}

// ---------------------------------------------------------------- point counts

fn brute_points(c: &CurveSpec) -> u64 {
    let f = c.field();
    let q = f.order();
    let mut count = 0;
    for x in 0..q {
        let rhs = c.rhs(fe(x));
        count += (0..q).filter(|&y| f.mul(fe(y), fe(y)) == rhs).count() as u64;
    }
    count
}

fn curve_from_ranks(f: &Field, gamma: u32, ranks: &[(usize, u32)]) -> Option<CurveSpec> {
    let mut factors: Vec<Poly> = Vec::new();
    for &(d, r) in ranks {
        let list = enumerate_monic_irreducibles(
            f,
            d,
            monic_irreducible_count(f.order() as u64, d).min(64) as usize,
        )
        .ok()?;
        let p = list[r as usize % list.len()].clone();
        if !factors.contains(&p) {
            factors.push(p);
        }
    }
    CurveSpec::new(f, fe(1 + gamma % (f.order() - 1)), factors).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn point_counts_obey_the_corollary(
        qi in 0usize..6,
        gamma in any::<u32>(),
        ranks in prop::collection::vec((1usize..4, any::<u32>()), 1..6),
    ) {
        let f = field([3u32, 5, 9, 25, 27, 49][qi]);
        let c = curve_from_ranks(&f, gamma, &ranks).unwrap();
        let count = c.count_zeros().unwrap();
        prop_assert_eq!(count, brute_points(&c));
        let (q, d) = (f.order() as i128, c.ell() as i128);
        prop_assert!((count as i128 - q).pow(2) <= (d - 1).pow(2) * q);
        prop_assert!(c.check_point_bound().unwrap().ok);
    }

    #[test]
    fn square_multiples_of_gamma_keep_the_count(
        qi in 0usize..5,
        gamma in any::<u32>(),
        s in any::<u32>(),
        ranks in prop::collection::vec((1usize..3, any::<u32>()), 1..4),
    ) {
        let f = field([7u32, 9, 25, 27, 121][qi]);
        let c = curve_from_ranks(&f, gamma, &ranks).unwrap();
        let s = fe(1 + s % (f.order() - 1));
        let scaled = CurveSpec::new(&f, f.mul(c.gamma(), f.mul(s, s)), c.factors().to_vec()).unwrap();
        prop_assert_eq!(scaled.count_zeros().unwrap(), c.count_zeros().unwrap());
    }

    #[test]
    fn per_point_contribution_matches_lambda(qi in 0usize..4, mask in 1u32..512) {
        let q = [11u32, 13, 25, 27][qi];
        let f = field(q);
        let code = degree_one_code(&f, q as usize - 8).unwrap();
        let polys = code.basic_set().polys();
        let chosen: Vec<&Poly> = polys.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).collect();
        prop_assume!(!chosen.is_empty());
        let mut gamma = f.one();
        let mut product = Poly::one(&f);
        let mut factors = Vec::new();
        for p in &chosen {
            product = product.mul(p).unwrap();
            if p.is_constant() { gamma = f.mul(gamma, p.leading()); } else { factors.push((*p).clone()); }
        }
        let c = CurveSpec::new(&f, gamma, factors).unwrap();
        let row = lambda_map(&product, code.eval_set()).unwrap();
        for (&x, &bit) in code.eval_set().points().iter().zip(&row) {
            prop_assert_eq!(c.points_above(x) == 2, !bit);
        }
    }
}
