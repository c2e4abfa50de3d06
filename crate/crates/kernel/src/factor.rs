//! Exact factorization of integer polynomials into irreducibles:
//! squarefree decomposition, modular factorization, Hensel lifting and
//! subset recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{squarefree_decomposition, IntPoly, RatPoly};

// ---------------------------------------------------------------------------
// arithmetic mod a small odd prime
// ---------------------------------------------------------------------------

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

type MPoly = Vec<u64>; // constant first, no trailing zeros

fn mp_trim(mut v: MPoly) -> MPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mp_deg(f: &MPoly) -> usize {
    f.len().saturating_sub(1)
}

fn mp_is_zero(f: &MPoly) -> bool {
    f.is_empty()
}

fn mp_mul(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = addm(v[i + j], mulm(x, y, p), p);
        }
    }
    mp_trim(v)
}

fn mp_rem(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let db = mp_deg(b);
    let linv = invm(*b.last().unwrap(), p);
    let mut r = a.clone();
    while !r.is_empty() && mp_deg(&r) >= db {
        let dr = mp_deg(&r);
        let c = mulm(*r.last().unwrap(), linv, p);
        for j in 0..=db {
            let t = mulm(c, b[j], p);
            r[dr - db + j] = subm(r[dr - db + j], t, p);
        }
        r = mp_trim(r);
    }
    r
}

fn mp_divrem(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly) {
    let db = mp_deg(b);
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let linv = invm(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    while !r.is_empty() && mp_deg(&r) >= db {
        let dr = mp_deg(&r);
        let c = mulm(*r.last().unwrap(), linv, p);
        q[dr - db] = c;
        for j in 0..=db {
            let t = mulm(c, b[j], p);
            r[dr - db + j] = subm(r[dr - db + j], t, p);
        }
        r = mp_trim(r);
    }
    (mp_trim(q), r)
}

fn mp_gcd(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !mp_is_zero(&g) {
        let r = mp_rem(&f, &g, p);
        f = g;
        g = r;
    }
    mp_monic(&f, p)
}

fn mp_monic(f: &MPoly, p: u64) -> MPoly {
    if f.is_empty() {
        return vec![];
    }
    let linv = invm(*f.last().unwrap(), p);
    f.iter().map(|&c| mulm(c, linv, p)).collect()
}

fn mp_derivative(f: &MPoly, p: u64) -> MPoly {
    if f.len() <= 1 {
        return vec![];
    }
    mp_trim(
        f[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| mulm(c, (i as u64 + 1) % p, p))
            .collect(),
    )
}

fn mp_sub(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let n = a.len().max(b.len());
    mp_trim(
        (0..n)
            .map(|i| {
                subm(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect(),
    )
}

/// x^e mod f for a big exponent.
fn mp_pow_x(e: &BigUint, f: &MPoly, p: u64) -> MPoly {
    mp_pow(&vec![0, 1], e, f, p)
}

fn mp_pow(base: &MPoly, e: &BigUint, f: &MPoly, p: u64) -> MPoly {
    let mut result = vec![1u64];
    let mut b = mp_rem(base, f, p);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = mp_rem(&mp_mul(&result, &b, p), f, p);
        }
        b = mp_rem(&mp_mul(&b, &b, p), f, p);
    }
    result
}

/// Extended gcd: returns (s, t) with s*a + t*b = 1 for coprime monic a, b.
fn mp_ext_gcd(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !mp_is_zero(&r1) {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let ns = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let nt = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    assert_eq!(mp_deg(&r0), 0, "ext_gcd of non-coprime polynomials");
    let c = invm(r0[0], p);
    (
        s0.iter().map(|&x| mulm(x, c, p)).collect(),
        t0.iter().map(|&x| mulm(x, c, p)).collect(),
    )
}

// deterministic xorshift for the equal-degree splitting
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factors a monic squarefree polynomial mod p into monic irreducibles.
fn mp_factor_squarefree(f: &MPoly, p: u64, rng: &mut XorShift) -> Vec<MPoly> {
    let mut out = vec![];
    // distinct-degree stage
    let mut h = vec![0u64, 1]; // x
    let mut rest = f.clone();
    let mut d = 0usize;
    let mut stages: Vec<(MPoly, usize)> = vec![];
    while mp_deg(&rest) > 0 {
        d += 1;
        if 2 * d > mp_deg(&rest) {
            stages.push((rest.clone(), mp_deg(&rest)));
            break;
        }
        h = mp_pow(&h, &BigUint::from(p), &rest, p);
        let hx = mp_sub(&h, &vec![0, 1], p);
        let g = mp_gcd(&hx, &rest, p);
        if mp_deg(&g) > 0 {
            stages.push((g.clone(), d));
            rest = mp_divrem(&rest, &g, p).0;
            h = mp_rem(&h, &rest, p);
        }
    }
    // equal-degree stage (Cantor-Zassenhaus, p odd)
    for (g, d) in stages {
        let mut queue = vec![g];
        while let Some(g) = queue.pop() {
            let k = mp_deg(&g);
            if k == d {
                out.push(mp_monic(&g, p));
                continue;
            }
            // exponent (p^d - 1)/2
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            loop {
                let deg = 1 + (rng.next() as usize) % (k - 1).max(1);
                let mut a: MPoly = (0..=deg).map(|_| rng.next() % p).collect();
                a = mp_trim(a);
                if a.len() < 2 {
                    continue;
                }
                let b = mp_pow(&a, &e, &g, p);
                let bm1 = mp_sub(&b, &vec![1], p);
                let h = mp_gcd(&bm1, &g, p);
                if mp_deg(&h) > 0 && mp_deg(&h) < k {
                    queue.push(h.clone());
                    queue.push(mp_divrem(&g, &h, p).0);
                    break;
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting mod p^k (monic polynomials, BigInt coefficients)
// ---------------------------------------------------------------------------

type ZmPoly = Vec<BigInt>; // coefficients in [0, m)

fn zm_trim(mut v: ZmPoly) -> ZmPoly {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn zm_reduce(f: &IntPoly, m: &BigInt) -> ZmPoly {
    zm_trim(f.coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_mul(a: &ZmPoly, b: &ZmPoly, m: &BigInt) -> ZmPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zm_trim(v.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &ZmPoly, b: &ZmPoly, m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    zm_trim(
        (0..n)
            .map(|i| {
                (a.get(i).cloned().unwrap_or_else(BigInt::zero)
                    + b.get(i).cloned().unwrap_or_else(BigInt::zero))
                .mod_floor(m)
            })
            .collect(),
    )
}

fn zm_sub(a: &ZmPoly, b: &ZmPoly, m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    zm_trim(
        (0..n)
            .map(|i| {
                (a.get(i).cloned().unwrap_or_else(BigInt::zero)
                    - b.get(i).cloned().unwrap_or_else(BigInt::zero))
                .mod_floor(m)
            })
            .collect(),
    )
}

/// Division by a monic polynomial mod m.
fn zm_divrem_monic(a: &ZmPoly, b: &ZmPoly, m: &BigInt) -> (ZmPoly, ZmPoly) {
    assert!(b.last().map(|c| c.is_one()).unwrap_or(false));
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
            }
        }
        q[k] = c;
    }
    (zm_trim(q), zm_trim(r))
}

struct LiftPair {
    g: ZmPoly,
    h: ZmPoly,
    s: ZmPoly,
    t: ZmPoly,
}

/// One quadratic Hensel step: from modulus m to m^2 (f monic, g*h ≡ f,
/// s*g + t*h ≡ 1 mod m with g, h monic).
fn hensel_step(f: &IntPoly, pair: &LiftPair, m: &BigInt) -> LiftPair {
    let m2 = m * m;
    let fm = zm_reduce(f, &m2);
    let gh = zm_mul(&pair.g, &pair.h, &m2);
    let e = zm_sub(&fm, &gh, &m2);
    let se = zm_mul(&pair.s, &e, &m2);
    let (q, r) = zm_divrem_monic(&se, &pair.h, &m2);
    let g_new = zm_add(
        &pair.g,
        &zm_add(&zm_mul(&pair.t, &e, &m2), &zm_mul(&q, &pair.g, &m2), &m2),
        &m2,
    );
    let h_new = zm_add(&pair.h, &r, &m2);
    // update Bezout data
    let sg = zm_mul(&pair.s, &g_new, &m2);
    let th = zm_mul(&pair.t, &h_new, &m2);
    let b = zm_sub(&zm_add(&sg, &th, &m2), &vec![BigInt::one()], &m2);
    let sb = zm_mul(&pair.s, &b, &m2);
    let (c, d) = zm_divrem_monic(&sb, &h_new, &m2);
    let s_new = zm_sub(&pair.s, &d, &m2);
    let tb = zm_mul(&pair.t, &b, &m2);
    let cg = zm_mul(&c, &g_new, &m2);
    let t_new = zm_sub(&pair.t, &zm_add(&tb, &cg, &m2), &m2);
    LiftPair {
        g: g_new,
        h: h_new,
        s: s_new,
        t: t_new,
    }
}

/// Lifts the modular factorization of monic `f` from mod p to mod p^k with
/// p^k >= target, via a factor tree. Returns factors mod p^k (monic).
fn hensel_lift_tree(f: &IntPoly, factors: &[MPoly], p: u64, target: &BigInt) -> Vec<ZmPoly> {
    if factors.len() == 1 {
        let mut m = BigInt::from(p);
        while &m < target {
            m = &m * &m;
        }
        return vec![zm_reduce(f, &m)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let pb = BigInt::from(p);
    let mut gp: MPoly = vec![1];
    for q in left {
        gp = mp_mul(&gp, q, p);
    }
    let mut hp: MPoly = vec![1];
    for q in right {
        hp = mp_mul(&hp, q, p);
    }
    let (s, t) = mp_ext_gcd(&gp, &hp, p);
    let to_zm = |v: &MPoly| -> ZmPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut pair = LiftPair {
        g: to_zm(&gp),
        h: to_zm(&hp),
        s: to_zm(&s),
        t: to_zm(&t),
    };
    let mut m = pb;
    while &m < target {
        pair = hensel_step(f, &pair, &m);
        m = &m * &m;
    }
    let g_int = IntPoly::new(pair.g.clone());
    let h_int = IntPoly::new(pair.h.clone());
    let mut out = hensel_lift_tree(&g_int, left, p, target);
    out.extend(hensel_lift_tree(&h_int, right, p, target));
    out
}

// ---------------------------------------------------------------------------
// recombination and the driver
// ---------------------------------------------------------------------------

fn centered(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn centered_poly(f: &ZmPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.iter().map(|c| centered(c, m)).collect())
}

/// Attempts exact division of monic integer polynomials; None if not a factor.
fn try_divide_monic(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    if g.degree() > f.degree() {
        return None;
    }
    let mut rem = f.coeffs.clone();
    let dg = g.degree();
    let mut q = vec![BigInt::zero(); rem.len() - dg];
    for k in (0..q.len()).rev() {
        let c = rem[k + dg].clone();
        if !c.is_zero() {
            for (j, b) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
        }
        q[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(IntPoly::new(q))
    } else {
        None
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Factors a monic squarefree integer polynomial into monic irreducibles.
fn factor_monic_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    assert!(f.leading().is_one());
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    // pick a prime where f stays squarefree; among a few, prefer the fewest
    // modular factors
    let primes: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let mut best: Option<(u64, Vec<MPoly>)> = None;
    let mut tried = 0;
    for &p in &primes {
        let fp: MPoly = mp_trim(
            f.coeffs
                .iter()
                .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                .collect(),
        );
        if mp_deg(&fp) != n {
            continue;
        }
        let dfp = mp_derivative(&fp, p);
        if mp_is_zero(&dfp) || mp_deg(&mp_gcd(&fp, &dfp, p)) > 0 {
            continue;
        }
        let mut rng = XorShift(0x9e3779b97f4a7c15 ^ p);
        let factors = mp_factor_squarefree(&mp_monic(&fp, p), p, &mut rng);
        let count = factors.len();
        if best.as_ref().map(|(_, b)| count < b.len()).unwrap_or(true) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 3 || count == 1 {
            break;
        }
    }
    let (p, mod_factors) = best.expect("no usable prime found for factorization");
    if mod_factors.len() == 1 {
        return vec![f.clone()];
    }
    // Landau-Mignotte style bound: |coeff of any monic factor| <= 2^n * ||f||_1
    let norm1: BigInt = f.coeffs.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (BigInt::one() << n) * norm1 * 2 + 1;
    let mut pk = BigInt::from(p);
    while pk < bound {
        pk = &pk * &pk;
    }
    let lifted = hensel_lift_tree(f, &mod_factors, p, &pk);
    let modulus = {
        let mut m = BigInt::from(p);
        while &m < &pk {
            m = &m * &m;
        }
        m
    };
    // subset recombination
    let mut result = vec![];
    let mut current = f.clone();
    let mut remaining: Vec<ZmPoly> = lifted;
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        for combo in combinations(remaining.len(), size) {
            let mut prod: ZmPoly = vec![BigInt::one()];
            for &i in &combo {
                prod = zm_mul(&prod, &remaining[i], &modulus);
            }
            let cand = centered_poly(&prod, &modulus);
            if let Some(q) = try_divide_monic(&current, &cand) {
                result.push(cand);
                current = q;
                let keep: Vec<ZmPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.degree() > 0 {
        result.push(current);
    }
    result
}

/// Factors an arbitrary nonzero integer polynomial into primitive irreducible
/// factors with positive leading coefficients and multiplicities. The content
/// is discarded (roots are what matter here). Factors are sorted canonically.
pub fn factor_int_poly(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    assert!(!f.is_zero());
    let mut out: Vec<(IntPoly, u32)> = vec![];
    let mut g = f.primitive();
    // strip powers of x
    let mut xmult = 0u32;
    while !g.coeffs.is_empty() && g.coeffs[0].is_zero() {
        g = IntPoly::new(g.coeffs[1..].to_vec());
        xmult += 1;
    }
    if xmult > 0 {
        out.push((IntPoly::x(), xmult));
    }
    if g.degree() >= 1 {
        for (sq, mult) in squarefree_decomposition(&g.to_rat()) {
            let sqi = sq.to_int_primitive();
            for h in factor_squarefree_primitive(&sqi) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
    });
    out
}

/// Factors a squarefree primitive integer polynomial.
fn factor_squarefree_primitive(g: &IntPoly) -> Vec<IntPoly> {
    if g.degree() <= 1 {
        return vec![g.clone()];
    }
    let lc = g.leading();
    if lc.is_one() {
        return factor_monic_squarefree(g);
    }
    // monicize: y = lc*x turns g into a monic integer polynomial
    let d = g.degree();
    let mut monic_coeffs = Vec::with_capacity(d + 1);
    // coefficient of y^k is a_k * lc^(d-1-k)
    for (k, a) in g.coeffs.iter().enumerate() {
        let e = (d - 1).saturating_sub(k);
        let mut c = a.clone();
        for _ in 0..e {
            c *= &lc;
        }
        // k == d gives a_d * lc^{-1} = 1 handled below
        monic_coeffs.push(c);
    }
    monic_coeffs[d] = BigInt::one();
    let monic = IntPoly::new(monic_coeffs);
    factor_monic_squarefree(&monic)
        .into_iter()
        .map(|h| {
            // map back: factor of g is primitive part of h(lc * x)
            let mut pow = BigInt::one();
            let coeffs: Vec<BigInt> = h
                .coeffs
                .iter()
                .map(|c| {
                    let v = c * &pow;
                    pow = &pow * &lc;
                    v
                })
                .collect();
            IntPoly::new(coeffs).primitive()
        })
        .collect()
}

/// Factors a rational polynomial; returns primitive integer irreducible
/// factors (positive leading coefficient) with multiplicities.
pub fn factor_rat_poly(f: &RatPoly) -> Vec<(IntPoly, u32)> {
    factor_int_poly(&f.to_int_primitive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_of(coeffs: &[i64]) -> Vec<(Vec<i64>, u32)> {
        factor_int_poly(&IntPoly::from_i64(coeffs))
            .into_iter()
            .map(|(p, m)| {
                (
                    p.coeffs
                        .iter()
                        .map(|c| c.to_i64().unwrap())
                        .collect::<Vec<_>>(),
                    m,
                )
            })
            .collect()
    }

    #[test]
    fn factors_product_of_linears() {
        // (x-2)(x-3) = x^2 - 5x + 6
        let f = factors_of(&[6, -5, 1]);
        assert_eq!(f, vec![(vec![-3, 1], 1), (vec![-2, 1], 1)]);
    }

    #[test]
    fn irreducible_quadratic_stays_whole() {
        let f = factors_of(&[-1, -1, 1]); // x^2-x-1
        assert_eq!(f, vec![(vec![-1, -1, 1], 1)]);
        let g = factors_of(&[1, 0, 1]); // x^2+1
        assert_eq!(g, vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn repeated_factor_multiplicity() {
        // (x-2)^2 = x^2 - 4x + 4
        let f = factors_of(&[4, -4, 1]);
        assert_eq!(f, vec![(vec![-2, 1], 2)]);
    }

    #[test]
    fn cyclotomic_like_splitting() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = factors_of(&[-1, 0, 0, 0, 1]);
        assert_eq!(
            f,
            vec![(vec![-1, 1], 1), (vec![1, 1], 1), (vec![1, 0, 1], 1)]
        );
    }

    #[test]
    fn binomial_with_real_and_complex_roots() {
        // x^3 - 2 irreducible
        let f = factors_of(&[-2, 0, 0, 1]);
        assert_eq!(f, vec![(vec![-2, 0, 0, 1], 1)]);
        // x^4 - 4 = (x^2-2)(x^2+2)
        let g = factors_of(&[-4, 0, 0, 0, 1]);
        assert_eq!(g, vec![(vec![-2, 0, 1], 1), (vec![2, 0, 1], 1)]);
    }

    #[test]
    fn non_monic_factorization() {
        // (2x-1)(3x+5) = 6x^2 + 7x - 5
        let f = factors_of(&[-5, 7, 6]);
        assert_eq!(f, vec![(vec![-1, 2], 1), (vec![5, 3], 1)]);
    }

    #[test]
    fn strips_power_of_x() {
        // x^2(x-1)
        let f = factors_of(&[0, 0, -1, 1]);
        assert_eq!(f, vec![(vec![-1, 1], 1), (vec![0, 1], 2)]);
    }

    #[test]
    fn degree_six_mixed() {
        // (x^2-2)(x^2-3)(x^2+1)
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let q = IntPoly::from_i64(&[-3, 0, 1]);
        let r = IntPoly::from_i64(&[1, 0, 1]);
        let f = p.mul(&q).mul(&r);
        let fs = factor_int_poly(&f);
        assert_eq!(fs.len(), 3);
        for (g, m) in fs {
            assert_eq!(m, 1);
            assert!(g == p || g == q || g == r);
        }
    }
}
