use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sheafline::exact::{
    is_unimodular_poly, smith_normal_form, Field, LaurentPoly, Matrix, Poly, Ring,
};
use sheafline::p1::{
    birkhoff_split, ext_dim, hom_dim, random_unimodular, torsion_decompose, twist, BundleData, ClosedPoint, P1Label,
    TorsionData,
};

fn f7() -> Field {
    Field::prime(7).unwrap()
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort();
    v
}

/// Random product of elementary matrices whose off-diagonal entries are
/// `c·y^e` with `e` of one sign, so the result is invertible over `k[y]`
/// (`sign = 1`) or over `k[y^-1]` (`sign = -1`).
fn one_sided_unimodular(rng: &mut ChaCha8Rng, field: Field, n: usize, sign: i64) -> Matrix<LaurentPoly> {
    let mut m: Matrix<LaurentPoly> = Matrix::identity(field, n);
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = field.from_i64(rng.gen_range(1..7));
        let e = sign * rng.gen_range(0..3);
        m.add_row_multiple(i, j, &LaurentPoly::monomial(c, e));
    }
    m
}

fn p(field: Field, cs: &[i64]) -> Poly {
    Poly::from_i64s(field, cs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn type_sum_is_minus_det_exponent(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_unimodular(&mut rng, f7(), n, 8);
        let b = BundleData::new(mu.clone()).unwrap();
        let s = birkhoff_split(&b);
        prop_assert_eq!(s.ty.iter().sum::<i64>(), -b.det_exponent());
        prop_assert_eq!(s.u.mul(&s.d).mul(&s.v), mu);
    }

    #[test]
    fn type_invariant_under_one_sided_units(seed in any::<u64>(), n in 2usize..4) {
        let field = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_unimodular(&mut rng, field, n, 8);
        let a = one_sided_unimodular(&mut rng, field, n, -1);
        let c = one_sided_unimodular(&mut rng, field, n, 1);
        let before = birkhoff_split(&BundleData::new(mu.clone()).unwrap()).ty;
        let after = birkhoff_split(&BundleData::new(a.mul(&mu).mul(&c)).unwrap()).ty;
        prop_assert_eq!(sorted(before), sorted(after));
    }

    #[test]
    fn smith_form_is_sound(entries in prop::collection::vec(prop::collection::vec(0i64..7, 1..4), 9), r in 1usize..4, c in 1usize..4) {
        let field = f7();
        let data: Vec<Poly> = entries[..r * c].iter().map(|cs| p(field, cs)).collect();
        let m = Matrix::from_vec(field, r, c, data);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.s.mul(&m).mul(&s.t), s.d.clone());
        prop_assert!(is_unimodular_poly(&s.s) && is_unimodular_poly(&s.t));
        for i in 0..r {
            for j in 0..c {
                prop_assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
        let inv = s.invariant_factors();
        for w in inv.windows(2) {
            prop_assert!(w[1].divrem(&w[0]).1.is_zero());
        }
    }

    #[test]
    fn torsion_lengths_add_up(
        diag in prop::collection::vec(prop::collection::vec(0i64..5, 1..4), 1..4),
        upper in prop::collection::vec(0i64..5, 3),
        at_inf in prop::collection::vec(0usize..3, 0..3),
    ) {
        let field = Field::prime(5).unwrap();
        let n = diag.len();
        // upper triangular with monic diagonal entries
        let mut rows = vec![vec![Poly::zero(field); n]; n];
        for (i, cs) in diag.iter().enumerate() {
            let mut cs = cs.clone();
            cs.push(1);
            rows[i][i] = p(field, &cs);
            for j in i + 1..n {
                rows[i][j] = Poly::constant(field.from_i64(upper[(i + j) % 3]));
            }
        }
        let finite = Matrix::from_rows(field, rows);
        let z = p(field, &[0, 1]);
        let inf_entries: Vec<Poly> = at_inf.iter().map(|&k| z.pow(k as u32)).collect();
        let infinity = Matrix::diagonal(field, inf_entries);
        let t = TorsionData::new(finite.clone(), infinity).unwrap();
        let total: u64 = torsion_decompose(&t).unwrap().iter().map(|(pt, r)| u64::from(*r) * u64::from(pt.degree())).sum();
        let expected = finite.det().deg0() + at_inf.iter().sum::<usize>();
        prop_assert_eq!(total, expected as u64);
    }
}

fn labels() -> Vec<P1Label> {
    let field = Field::Rationals;
    let mut out: Vec<P1Label> = (-4..=4).map(P1Label::LB).collect();
    for pt in ["y", "y-1", "inf", "y^2+1"] {
        for r in 1..=3 {
            out.push(P1Label::Tor(ClosedPoint::parse(field, pt).unwrap(), r));
        }
    }
    out
}

fn euler(a: &P1Label, b: &P1Label) -> i64 {
    hom_dim(a, b) as i64 - ext_dim(a, b) as i64
}

#[test]
fn serre_duality_table() {
    let ls = labels();
    for f in &ls {
        for g in &ls {
            assert_eq!(ext_dim(f, g), hom_dim(g, &twist(f, -2)), "{f} {g}");
        }
    }
}

#[test]
fn euler_pairing_with_torsion_is_degree() {
    for f in labels() {
        let P1Label::Tor(pt, r) = &f else { continue };
        for n in -4..=4 {
            assert_eq!(euler(&P1Label::LB(n), &f), i64::from(*r * pt.degree()));
            assert_eq!(euler(&f, &P1Label::LB(n)), -i64::from(*r * pt.degree()));
        }
    }
}

#[test]
fn euler_pairing_of_line_bundles_is_affine() {
    // <O(a),O(b)> = b - a + 1 on both sides of the Hom/Ext divide
    for a in -4..=4 {
        for b in -4..=4 {
            assert_eq!(euler(&P1Label::LB(a), &P1Label::LB(b)), b - a + 1);
        }
    }
}

#[test]
fn euler_pairing_is_biadditive() {
    // 0 -> O(n) -> O(n+1) -> T(y,1) -> 0 splits the class of O(n+1)
    let field = Field::Rationals;
    let t = P1Label::Tor(ClosedPoint::parse(field, "y").unwrap(), 1);
    for g in labels() {
        for n in -3..=3 {
            let lhs = euler(&P1Label::LB(n + 1), &g);
            assert_eq!(lhs, euler(&P1Label::LB(n), &g) + euler(&t, &g), "{g}");
        }
    }
}
