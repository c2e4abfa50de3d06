//! Exact strict-feasibility solver over any ordered field with computable
//! signs: either a vector t with A t > 0 in every coordinate, or a
//! nonnegative nonzero combination y of the rows with y^T A = 0. Exactly one
//! side exists; both are found by phase-one simplex with Bland's rule
//! (lowest-index pivoting, so runs are deterministic and finite).

use conespec_kernel::numfield::FieldScalar;

#[derive(Debug, Clone)]
pub enum StrictFeasibility<T> {
    /// t with (A t)_j > 0 for every row j.
    Witness(Vec<T>),
    /// y >= 0, y != 0, with sum_j y_j A_j = 0.
    Separator(Vec<T>),
}

/// Decides strict feasibility of A t > 0. `one` supplies the field context.
pub fn strict_feasibility<T: FieldScalar>(a: &[Vec<T>], one: &T) -> StrictFeasibility<T> {
    let m = a.len();
    if m == 0 {
        return StrictFeasibility::Witness(vec![]);
    }
    let k = a[0].len();
    let zero = one.zero_elem();
    if k == 0 || a.iter().all(|row| row.iter().all(|x| x.is_zero_elem())) {
        // A t is identically zero; the first unit row vector separates
        let mut y = vec![zero; m];
        y[0] = one.one_elem();
        return StrictFeasibility::Separator(y);
    }
    // primal: A(t+ - t-) - s = 1, all variables >= 0
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
    for (j, arow) in a.iter().enumerate() {
        let mut r: Vec<T> = Vec::with_capacity(2 * k + m);
        for x in arow {
            r.push(x.clone());
        }
        for x in arow {
            r.push(x.neg_elem());
        }
        for l in 0..m {
            r.push(if l == j {
                one.one_elem().neg_elem()
            } else {
                zero.clone()
            });
        }
        rows.push(r);
    }
    let rhs = vec![one.one_elem(); m];
    if let Some(x) = phase_one(&rows, &rhs, one) {
        let t: Vec<T> = (0..k).map(|i| x[i].sub_elem(&x[k + i])).collect();
        // exact re-verification
        debug_assert!(a
            .iter()
            .all(|row| dot(row, &t).sign_elem() > 0));
        return StrictFeasibility::Witness(t);
    }
    // dual: A^T y = 0, sum y = 1, y >= 0
    let mut drows: Vec<Vec<T>> = Vec::with_capacity(k + 1);
    for i in 0..k {
        drows.push((0..m).map(|j| a[j][i].clone()).collect());
    }
    drows.push(vec![one.one_elem(); m]);
    let mut drhs = vec![zero.clone(); k];
    drhs.push(one.one_elem());
    match phase_one(&drows, &drhs, one) {
        Some(y) => {
            debug_assert!(y.iter().all(|c| c.sign_elem() >= 0));
            StrictFeasibility::Separator(y)
        }
        None => unreachable!("exactly one of witness/separator must exist"),
    }
}

pub fn dot<T: FieldScalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    let mut s = a
        .first()
        .map(|x| x.zero_elem())
        .unwrap_or_else(|| b.first().map(|x| x.zero_elem()).expect("nonempty"));
    for (x, y) in a.iter().zip(b) {
        s = s.add_elem(&x.mul_elem(y));
    }
    s
}

/// Solves { x >= 0 : A x = b } by minimizing artificial variables; returns a
/// feasible point if one exists. Rows with negative right-hand side are
/// flipped first.
fn phase_one<T: FieldScalar>(a: &[Vec<T>], b: &[T], one: &T) -> Option<Vec<T>> {
    let m = a.len();
    let n = a[0].len();
    let zero = one.zero_elem();
    // tableau: columns = n structural + m artificial, plus rhs
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs: Vec<T> = Vec::with_capacity(m);
    for j in 0..m {
        let flip = b[j].sign_elem() < 0;
        let mut row: Vec<T> = Vec::with_capacity(n + m);
        for i in 0..n {
            row.push(if flip { a[j][i].neg_elem() } else { a[j][i].clone() });
        }
        for l in 0..m {
            row.push(if l == j { one.one_elem() } else { zero.clone() });
        }
        t.push(row);
        rhs.push(if flip { b[j].neg_elem() } else { b[j].clone() });
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // minimize the artificial sum: reduced cost of structural column i is
    // -(column sum) while the artificial identity is basic; artificial
    // columns are basic with reduced cost 0. The stored value is -objective.
    let mut obj: Vec<T> = (0..n + m)
        .map(|i| {
            if i >= n {
                return zero.clone();
            }
            let mut s = zero.clone();
            for row in &t {
                s = s.add_elem(&row[i]);
            }
            s.neg_elem()
        })
        .collect();
    let mut obj_val = {
        let mut s = zero.clone();
        for v in &rhs {
            s = s.add_elem(v);
        }
        s.neg_elem()
    };
    loop {
        // Bland: lowest-index column with negative reduced cost
        let enter = (0..n + m).find(|&i| obj[i].sign_elem() < 0);
        let enter = match enter {
            Some(e) => e,
            None => break,
        };
        // ratio test, ties by lowest basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<T> = None;
        for j in 0..m {
            if t[j][enter].sign_elem() > 0 {
                let ratio = rhs[j].mul_elem(&t[j][enter].inv_elem());
                let better = match &best {
                    None => true,
                    Some(bst) => {
                        let d = ratio.sub_elem(bst).sign_elem();
                        d < 0 || (d == 0 && basis[j] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(j);
                }
            }
        }
        let leave = match leave {
            Some(l) => l,
            None => return None, // unbounded below impossible; defensive
        };
        // pivot
        let pinv = t[leave][enter].inv_elem();
        for i in 0..n + m {
            t[leave][i] = t[leave][i].mul_elem(&pinv);
        }
        rhs[leave] = rhs[leave].mul_elem(&pinv);
        for j in 0..m {
            if j == leave {
                continue;
            }
            let f = t[j][enter].clone();
            if f.is_zero_elem() {
                continue;
            }
            for i in 0..n + m {
                let v = f.mul_elem(&t[leave][i]);
                t[j][i] = t[j][i].sub_elem(&v);
            }
            let v = f.mul_elem(&rhs[leave]);
            rhs[j] = rhs[j].sub_elem(&v);
        }
        let f = obj[enter].clone();
        for i in 0..n + m {
            let v = f.mul_elem(&t[leave][i]);
            obj[i] = obj[i].sub_elem(&v);
        }
        let v = f.mul_elem(&rhs[leave]);
        obj_val = obj_val.sub_elem(&v);
        basis[leave] = enter;
    }
    // optimum of the artificial sum is -obj_val
    if obj_val.sign_elem() != 0 {
        return None;
    }
    let mut x = vec![zero; n];
    for (j, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = rhs[j].clone();
        } else if rhs[j].sign_elem() != 0 {
            return None; // artificial stuck basic at positive level
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use conespec_kernel::rational::{rat, rat_int, Rational};
    use num_traits::{Signed, Zero};

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn witness_in_the_open_quadrant() {
        // t in R^2 with t1 > 0 and t2 > 0
        let a = rows(&[&[1, 0], &[0, 1]]);
        match strict_feasibility(&a, &rat_int(1)) {
            StrictFeasibility::Witness(t) => {
                assert!(t[0].is_positive());
                assert!(t[1].is_positive());
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn separator_for_opposed_rows() {
        // t > 0 and -t > 0 impossible
        let a = rows(&[&[1], &[-1]]);
        match strict_feasibility(&a, &rat_int(1)) {
            StrictFeasibility::Separator(y) => {
                assert_eq!(y.len(), 2);
                let combo = &y[0] - &y[1];
                assert!(combo.is_zero());
                assert!(y.iter().any(|c| c.is_positive()));
            }
            _ => panic!("expected separator"),
        }
    }

    #[test]
    fn zero_matrix_is_infeasible() {
        let a = rows(&[&[0, 0]]);
        assert!(matches!(
            strict_feasibility(&a, &rat_int(1)),
            StrictFeasibility::Separator(_)
        ));
    }

    #[test]
    fn mixed_system() {
        // t1 - t2 > 0, t2 > 0: witness like (2, 1)
        let a = rows(&[&[1, -1], &[0, 1]]);
        match strict_feasibility(&a, &rat_int(1)) {
            StrictFeasibility::Witness(t) => {
                assert!((&t[0] - &t[1]).is_positive());
                assert!(t[1].is_positive());
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn boundary_only_line() {
        // span{e1} meets quadrant interior nowhere: t*1 > 0 and t*0 > 0
        let a = rows(&[&[1], &[0]]);
        match strict_feasibility(&a, &rat_int(1)) {
            StrictFeasibility::Separator(y) => {
                // y must kill the column (y0*1 + y1*0 = 0) so y0 = 0, y1 > 0
                assert!(y[0].is_zero());
                assert!(y[1].is_positive());
            }
            _ => panic!("expected separator"),
        }
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![rat(1, 2), rat(-1, 3)], vec![rat(0, 1), rat(1, 7)]];
        assert!(matches!(
            strict_feasibility(&a, &rat_int(1)),
            StrictFeasibility::Witness(_)
        ));
    }
}
