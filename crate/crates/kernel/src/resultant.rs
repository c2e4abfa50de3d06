//! Resultants of integer polynomials with polynomial coefficients, used to
//! compose defining polynomials of algebraic numbers (sums, products).
//!
//! The Sylvester determinant is evaluated by Bareiss fraction-free
//! elimination over Z[x], so every division is exact.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::IntPoly;

/// Determinant of a square matrix with IntPoly entries (Bareiss).
fn poly_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = 1i32;
    let mut denom = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].mul(&m[i][j]);
                let b = m[i][k].mul(&m[k][j]);
                m[i][j] = a.sub(&b).div_exact(&denom);
            }
            m[i][k] = IntPoly::zero();
        }
        denom = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        d.neg()
    } else {
        d
    }
}

/// Resultant in y of A(y) and B(y) whose coefficients are polynomials in x.
/// `a` and `b` list coefficients constant-term (in y) first.
fn resultant_y(a: &[IntPoly], b: &[IntPoly]) -> IntPoly {
    let m = a.len() - 1;
    let n = b.len() - 1;
    assert!(m >= 1 && n >= 1);
    let dim = m + n;
    let mut mat = vec![vec![IntPoly::zero(); dim]; dim];
    // n rows of A coefficients (descending), then m rows of B
    for r in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[r][r + (m - k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + r][r + (n - k)] = c.clone();
        }
    }
    poly_det(mat)
}

/// Polynomial (in x) whose roots include every sum alpha+beta of roots of p
/// and q: Res_y(p(y), q(x - y)).
pub fn root_sum_poly(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let a: Vec<IntPoly> = p.coeffs.iter().map(|c| IntPoly::constant(c.clone())).collect();
    // q(x - y) as a polynomial in y with IntPoly-in-x coefficients
    let n = q.degree();
    let mut b = vec![IntPoly::zero(); n + 1];
    // iterate Horner-style: acc = acc * (x - y) + q_k, from highest k down
    let mut acc: Vec<IntPoly> = vec![];
    for k in (0..=n).rev() {
        // multiply acc by (x - y): coefficient j picks x*acc[j] - acc[j-1]
        let mut next = vec![IntPoly::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j] = next[j].add(&c.mul(&IntPoly::x()));
            next[j + 1] = next[j + 1].sub(c);
        }
        if next.is_empty() {
            next.push(IntPoly::zero());
        }
        next[0] = next[0].add(&IntPoly::constant(q.coeff(k)));
        acc = next;
    }
    for (j, c) in acc.into_iter().enumerate() {
        b[j] = c;
    }
    let res = resultant_y(&a, &b);
    assert!(!res.is_zero(), "degenerate sum resultant");
    res
}

/// Polynomial whose roots include every product alpha*beta of roots of p and
/// q (q must not vanish at 0): Res_y(p(y), y^n q(x/y)).
pub fn root_prod_poly(p: &IntPoly, q: &IntPoly) -> IntPoly {
    assert!(!q.coeff(0).is_zero(), "product resultant needs q(0) != 0");
    let a: Vec<IntPoly> = p.coeffs.iter().map(|c| IntPoly::constant(c.clone())).collect();
    let n = q.degree();
    // y^n q(x/y) = sum_k q_k x^k y^(n-k): coefficient of y^j is q_(n-j) x^(n-j)
    let mut b = vec![IntPoly::zero(); n + 1];
    for j in 0..=n {
        let k = n - j;
        let mut mono = vec![BigInt::zero(); k + 1];
        mono[k] = q.coeff(k);
        b[j] = IntPoly::new(mono);
    }
    let res = resultant_y(&a, &b);
    assert!(!res.is_zero(), "degenerate product resultant");
    res
}

/// Plain integer resultant of two polynomials in one variable.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let a: Vec<IntPoly> = p.coeffs.iter().map(|c| IntPoly::constant(c.clone())).collect();
    let b: Vec<IntPoly> = q.coeffs.iter().map(|c| IntPoly::constant(c.clone())).collect();
    let r = resultant_y(&a, &b);
    if r.is_zero() {
        BigInt::zero()
    } else {
        assert_eq!(r.degree(), 0);
        r.coeff(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::isolate_real_roots;

    #[test]
    fn sum_of_sqrt2_and_sqrt3() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let q = IntPoly::from_i64(&[-3, 0, 1]);
        let s = root_sum_poly(&p, &q).squarefree_part();
        // sqrt2+sqrt3 is a root of x^4 - 10x^2 + 1
        let target = IntPoly::from_i64(&[1, 0, -10, 0, 1]);
        // the resultant has the four sums +-sqrt2 +- sqrt3 as roots, so the
        // squarefree part must be divisible by the known minimal polynomial
        let g = crate::poly::int_gcd(&s, &target);
        assert_eq!(g, target);
    }

    #[test]
    fn product_of_sqrt2_with_itself() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let s = root_prod_poly(&p, &p).squarefree_part();
        // products: 2, -2
        let roots = isolate_real_roots(&s);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn scalar_resultant_detects_common_root() {
        let p = IntPoly::from_i64(&[-1, 1]); // x-1
        let q = IntPoly::from_i64(&[-1, 0, 1]); // x^2-1
        assert!(resultant(&p, &q).is_zero());
        let r = IntPoly::from_i64(&[1, 1]); // x+1
        assert!(!resultant(&p, &r).is_zero());
    }
}
