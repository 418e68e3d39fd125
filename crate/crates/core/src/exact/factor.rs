use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{Field, Matrix, Poly, Ring, Scalar};
use crate::error::{Error, Result};

/// Largest integer whose divisors are enumerated when searching rational
/// roots or quadratic factors over ℚ.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// squarefree `g_i` with `f = lead · Π g_i^{m_i}`, sorted by multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let mut out = sff(&f.monic());
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn sff(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).unwrap();
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let p = field.characteristic();
        assert!(p > 0, "characteristic zero leaves no p-th power part");
        let root = pth_root(&c, p as usize);
        for (g, m) in sff(&root) {
            out.push((g, m * p));
        }
    }
    out
}

fn pth_root(f: &Poly, p: usize) -> Poly {
    let coeffs = f.coeffs().iter().step_by(p).cloned().collect();
    Poly::from_coeffs(f.field(), coeffs)
}

/// Factorization into monic irreducibles with multiplicities, sorted by
/// degree then coefficients. The leading scalar is dropped.
///
/// Over 𝔽_p the factorization is complete. Over ℚ the squarefree parts are
/// split by rational roots and, in degree four, by an exhaustive search for
/// integral quadratic factors; a squarefree part that still has degree above
/// four after removing rational roots is reported as unsupported.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(f) {
        let pieces = match f.field() {
            Field::Prime(p) => berlekamp(&part, p),
            Field::Rationals => factor_rational_squarefree(&part)?,
        };
        out.extend(pieces.into_iter().map(|g| (g, m)));
    }
    out.sort();
    Ok(out)
}

/// True iff `f` is monic, of positive degree and irreducible.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if !f.is_monic() || f.is_constant() {
        return Ok(false);
    }
    let fs = factor(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Berlekamp's algorithm for a monic squarefree polynomial over 𝔽_p.
fn berlekamp(f: &Poly, p: u32) -> Vec<Poly> {
    let field = f.field();
    let n = f.deg0();
    if n <= 1 {
        return vec![f.clone()];
    }
    let x = Poly::var(field);
    let xp = pow_mod(&x, p as u64, f);
    // Row i holds x^{ip} mod f minus x^i.
    let mut rows = Vec::with_capacity(n);
    let mut r = Poly::one(field);
    for i in 0..n {
        let mut row: Vec<Scalar> = (0..n).map(|j| r.coeff(j)).collect();
        row[i] = &row[i] - &field.one();
        rows.push(row);
        r = (&r * &xp).rem(f);
    }
    let b = Matrix::from_rows(field, rows).transpose();
    let basis: Vec<Poly> = b.nullspace().into_iter().map(|v| Poly::from_coeffs(field, v)).collect();
    let k = basis.len();
    let mut factors = vec![f.clone()];
    for g in basis.iter().filter(|g| !g.is_constant()) {
        if factors.len() == k {
            break;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.deg0() <= 1 {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for s in 0..p {
                if rest.is_constant() {
                    break;
                }
                let shifted = g - &Poly::constant(field.from_i64(s as i64));
                let d = rest.gcd(&shifted);
                if !d.is_constant() {
                    rest = rest.div_exact(&d).unwrap();
                    next.push(d);
                }
            }
            debug_assert!(rest.is_constant());
        }
        factors = next;
    }
    factors.sort();
    factors
}

fn pow_mod(base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(m);
        }
        b = (&b * &b).rem(m);
        e >>= 1;
    }
    acc
}

fn factor_rational_squarefree(g: &Poly) -> Result<Vec<Poly>> {
    let field = g.field();
    let mut out = Vec::new();
    let mut rest = g.monic();
    if rest.coeff(0).is_zero() {
        let y = Poly::var(field);
        out.push(y.clone());
        rest = rest.div_exact(&y).unwrap();
    }
    for root in rational_roots(&rest)? {
        let lin = Poly::linear(&Scalar::Q(root));
        rest = rest.div_exact(&lin).expect("root divides");
        out.push(lin);
    }
    match rest.deg0() {
        0 => {}
        1..=3 => out.push(rest),
        4 => out.extend(split_quartic(&rest)?),
        d => {
            return Err(Error::UnsupportedFactorization(format!(
                "degree {d} factor without rational roots over Q: {rest}"
            )))
        }
    }
    Ok(out)
}

/// Integer coefficients of a positive multiple of `f`, lowest degree first.
fn integral_coeffs(f: &Poly) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f.coeffs().iter().map(|c| c.as_rational().expect("rational")).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    qs.iter().map(|q| (*q * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

fn positive_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n.abs();
    let v = n
        .to_u64()
        .filter(|&v| v <= DIVISOR_SEARCH_LIMIT)
        .ok_or_else(|| Error::UnsupportedFactorization(format!("coefficient {n} too large for divisor search")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Distinct rational roots of a polynomial over ℚ with nonzero constant term.
fn rational_roots(f: &Poly) -> Result<Vec<BigRational>> {
    if f.deg0() == 0 {
        return Ok(Vec::new());
    }
    let a = integral_coeffs(f);
    let nums = positive_divisors(&a[0])?;
    let dens = positive_divisors(a.last().unwrap())?;
    let mut roots = Vec::new();
    for &r in &nums {
        for &s in &dens {
            if r.gcd(&s) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(r) * sign, BigInt::from(s));
                if f.eval(&Scalar::Q(cand.clone())).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Splits a monic rational quartic without rational roots into its monic
/// irreducible factors (one quartic or two quadratics).
fn split_quartic(h: &Poly) -> Result<Vec<Poly>> {
    let field = h.field();
    let qs: Vec<BigRational> = h.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    // H(x) = den^4 h(x / den) is monic with integer coefficients.
    let hc: Vec<BigInt> = (0..=4)
        .map(|i| (&qs[i] * BigRational::from_integer(den.pow(4 - i as u32))).to_integer())
        .collect();
    let (h0, h1, h2, h3) = (&hc[0], &hc[1], &hc[2], &hc[3]);
    for dv in positive_divisors(h0)? {
        for sign in [1i64, -1] {
            let b = BigInt::from(dv) * sign;
            let d = h0 / &b;
            let s = h2 - &b - &d;
            let disc: BigInt = h3 * h3 - BigInt::from(4) * &s;
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc {
                continue;
            }
            for r in [root.clone(), -root.clone()] {
                let twice_a = h3 + &r;
                if twice_a.is_odd() {
                    continue;
                }
                let a = twice_a / 2;
                let c = h3 - &a;
                if &a * &d + &b * &c == *h1 {
                    let quad = |lin: &BigInt, cst: &BigInt| {
                        let lin = BigRational::new(lin.clone(), den.clone());
                        let cst = BigRational::new(cst.clone(), &den * &den);
                        Poly::from_coeffs(field, vec![Scalar::Q(cst), Scalar::Q(lin), field.one()])
                    };
                    let mut out = vec![quad(&a, &b), quad(&c, &d)];
                    out.sort();
                    return Ok(out);
                }
            }
        }
    }
    Ok(vec![h.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rationals, c)
    }

    fn fp(p: u32, c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Prime(p), c)
    }

    fn product(fs: &[(Poly, u32)], field: Field) -> Poly {
        fs.iter().fold(Poly::one(field), |acc, (g, m)| &acc * &g.pow(*m))
    }

    #[test]
    fn spec_examples() {
        assert_eq!(factor(&q(&[-1, 0, 1])).unwrap(), vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 1)]);
        assert_eq!(factor(&q(&[1, 0, 1])).unwrap(), vec![(q(&[1, 0, 1]), 1)]);
        assert_eq!(factor(&fp(2, &[0, 1, 0, 1])).unwrap(), vec![(fp(2, &[0, 1]), 1), (fp(2, &[1, 1]), 2)]);
    }

    #[test]
    fn char_p_powers() {
        // (y + 1)^7 (y^2 + 1)^2 over F7
        let f = &fp(7, &[1, 1]).pow(7) * &fp(7, &[1, 0, 1]).pow(2);
        let fs = factor(&f).unwrap();
        assert_eq!(product(&fs, Field::Prime(7)), f);
        assert!(fs.contains(&(fp(7, &[1, 1]), 7)));
        assert!(fs.contains(&(fp(7, &[1, 0, 1]), 2)));
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        // (y^2 + 1)(y^2 + 2) = y^4 + 3y^2 + 2
        let fs = factor(&q(&[2, 0, 3, 0, 1])).unwrap();
        assert_eq!(fs, vec![(q(&[1, 0, 1]), 1), (q(&[2, 0, 1]), 1)]);
        // y^4 + 1 is irreducible over Q
        assert_eq!(factor(&q(&[1, 0, 0, 0, 1])).unwrap(), vec![(q(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2y - 1)(3y + 2)(y^2 + 1)
        let f = &(&q(&[-1, 2]) * &q(&[2, 3])) * &q(&[1, 0, 1]);
        let fs = factor(&f).unwrap();
        let half = Poly::linear(&Field::Rationals.from_ratio(1, 2).unwrap());
        let m23 = Poly::linear(&Field::Rationals.from_ratio(-2, 3).unwrap());
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(half, 1)));
        assert!(fs.contains(&(m23, 1)));
    }

    #[test]
    fn high_degree_over_q_is_unsupported() {
        // y^5 - 2 has no rational roots and degree 5.
        assert!(matches!(factor(&q(&[-2, 0, 0, 0, 0, 1])), Err(Error::UnsupportedFactorization(_))));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&q(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&fp(2, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&q(&[2, 0, 2])).unwrap());
    }
}
