//! Hermite and Smith normal forms over the integers, integer kernels and
//! lattice membership.

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::scalar::ExactInt;

/// Row operations on a pair (working matrix, transform) kept in lockstep.
struct RowOps<T> {
    a: Matrix<T>,
    u: Matrix<T>,
}

impl<T: ExactInt> RowOps<T> {
    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    /// row_i -= q * row_j
    fn sub_multiple(&mut self, i: usize, j: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let v = m[(i, c)].clone() - q.clone() * m[(j, c)].clone();
                m[(i, c)] = v;
            }
        }
    }

    fn negate(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for v in m.row_mut(i) {
                *v = -v.clone();
            }
        }
    }
}

/// Row echelon form `H = U·A` with `U` unimodular.
///
/// Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`, so the nonzero rows of `H` are the row-style Hermite normal
/// form of `A`. Returns `(H, U, rank)`; the zero rows of `H` are last.
pub fn echelon_with_transform<T: ExactInt>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>, usize) {
    let n = a.rows();
    let mut ops = RowOps {
        a: a.clone(),
        u: Matrix::identity(n),
    };
    let mut r = 0;
    for c in 0..a.cols() {
        if r == n {
            break;
        }
        loop {
            let pivot = (r..n)
                .filter(|&i| !ops.a[(i, c)].is_zero())
                .min_by(|&x, &y| ops.a[(x, c)].abs().cmp(&ops.a[(y, c)].abs()));
            let Some(p) = pivot else { break };
            ops.swap(r, p);
            let mut clean = true;
            for i in r + 1..n {
                if ops.a[(i, c)].is_zero() {
                    continue;
                }
                let q = ops.a[(i, c)].div_floor(&ops.a[(r, c)]);
                ops.sub_multiple(i, r, &q);
                if !ops.a[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if ops.a[(r, c)].is_zero() {
            continue;
        }
        if ops.a[(r, c)].is_negative() {
            ops.negate(r);
        }
        for i in 0..r {
            let q = ops.a[(i, c)].div_floor(&ops.a[(r, c)]);
            ops.sub_multiple(i, r, &q);
        }
        r += 1;
    }
    (ops.a, ops.u, r)
}

/// Row-style Hermite normal form: a basis of the row lattice of `a`.
pub fn hermite<T: ExactInt>(a: &Matrix<T>) -> Matrix<T> {
    let (h, _, rank) = echelon_with_transform(a);
    h.select_rows(&(0..rank).collect::<Vec<_>>())
}

/// Basis (as rows) of the saturated left kernel `{x ∈ ℤⁿ : x·a = 0}`.
pub fn left_kernel<T: ExactInt>(a: &Matrix<T>) -> Matrix<T> {
    let (_, u, rank) = echelon_with_transform(a);
    let idx: Vec<usize> = (rank..a.rows()).collect();
    let k = u.select_rows(&idx);
    if k.rows() == 0 {
        k
    } else {
        hermite(&k)
    }
}

/// Expresses `x` as an integer combination of the rows of a Hermite basis.
pub fn solve_in_hermite<T: ExactInt>(h: &Matrix<T>, x: &[T]) -> Option<Vec<T>> {
    let mut rest = x.to_vec();
    let mut coeffs = vec![T::zero(); h.rows()];
    for (r, coeff) in coeffs.iter_mut().enumerate() {
        let row = h.row(r);
        let c = row.iter().position(|v| !v.is_zero())?;
        if rest[..c].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let (q, rem) = rest[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return None;
        }
        for (v, w) in rest.iter_mut().zip(row) {
            *v = v.clone() - q.clone() * w.clone();
        }
        *coeff = q;
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Smith normal form `D = U·A·V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diagonal: Vec<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

pub fn smith<T: ExactInt>(a: &Matrix<T>) -> Smith<T> {
    let (n, m) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::<T>::identity(n);
    let mut v = Matrix::<T>::identity(m);

    let row_sub = |mat: &mut Matrix<T>, i: usize, j: usize, q: &T| {
        for c in 0..mat.cols() {
            let x = mat[(i, c)].clone() - q.clone() * mat[(j, c)].clone();
            mat[(i, c)] = x;
        }
    };
    let col_sub = |mat: &mut Matrix<T>, i: usize, j: usize, q: &T| {
        for r in 0..mat.rows() {
            let x = mat[(r, i)].clone() - q.clone() * mat[(r, j)].clone();
            mat[(r, i)] = x;
        }
    };

    for t in 0..n.min(m) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..m {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..n).find(|&i| {
                (t + 1..m).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match bad_row {
                Some(i) => {
                    let minus_one = -T::one();
                    row_sub(&mut d, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for c in 0..m {
                d[(t, c)] = -d[(t, c)].clone();
            }
            for c in 0..n {
                u[(t, c)] = -u[(t, c)].clone();
            }
        }
    }
    finish(d, u, v)
}

fn finish<T: ExactInt>(d: Matrix<T>, u: Matrix<T>, v: Matrix<T>) -> Smith<T> {
    let k = d.rows().min(d.cols());
    let diagonal = (0..k).map(|i| d[(i, i)].abs()).collect();
    Smith { diagonal, u, v }
}

/// Nonzero Smith invariants sorted so each divides the next.
pub fn invariant_factors<T: ExactInt>(a: &Matrix<T>) -> Vec<T> {
    let mut d: Vec<T> = smith(a).diagonal.into_iter().filter(|x| !x.is_zero()).collect();
    d.sort();
    d
}

/// True when the row lattices of two integer matrices coincide.
pub fn same_row_lattice<T: ExactInt>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    a.cols() == b.cols() && hermite(a) == hermite(b)
}

/// Row lattice of `a` intersected with row lattice of `b` (same ambient
/// dimension), returned as a Hermite basis.
pub fn intersect<T: ExactInt>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    // x·A = y·B  <=>  (x, -y)·[A; B] = 0 after negating B's rows.
    let stacked = a.vstack(&(-b));
    let k = left_kernel(&stacked);
    let ra = a.rows();
    let coeffs = Matrix::from_fn(k.rows(), ra, |r, c| k[(r, c)].clone());
    let prod = &coeffs * a;
    if prod.rows() == 0 {
        prod
    } else {
        hermite(&prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_i64;

    fn m(rows: &[Vec<i64>]) -> Matrix<i64> {
        from_i64(rows)
    }

    #[test]
    fn hermite_of_simple_lattice() {
        let h = hermite(&m(&[vec![2, 0], vec![1, 1], vec![0, 2]]));
        assert_eq!(h, m(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn smith_invariants_and_transforms() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let d = &(&s.u * &a) * &s.v;
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { s.diagonal[i] } else { 0 };
                assert_eq!(d[(i, j)].abs(), expected);
            }
        }
    }

    #[test]
    fn cartan_a4_has_cyclic_cokernel() {
        let a4 = m(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]);
        assert_eq!(invariant_factors(&a4), vec![1, 1, 1, 5]);
    }

    #[test]
    fn kernel_is_saturated() {
        let a = m(&[vec![2], vec![4], vec![6]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 2);
        for r in k.iter_rows() {
            assert_eq!(2 * r[0] + 4 * r[1] + 6 * r[2], 0);
        }
        assert!(solve_in_hermite(&k, &[1, 1, -1]).is_some());
    }

    #[test]
    fn membership() {
        let h = hermite(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(solve_in_hermite(&h, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_in_hermite(&h, &[1, 3]), None);
    }

    #[test]
    fn intersection_of_lattices() {
        let a = m(&[vec![2, 0], vec![0, 1]]);
        let b = m(&[vec![1, 0], vec![0, 3]]);
        let i = intersect(&a, &b);
        assert!(same_row_lattice(&i, &m(&[vec![2, 0], vec![0, 3]])));
    }
}
