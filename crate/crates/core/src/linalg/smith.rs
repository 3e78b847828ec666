use num_integer::Integer;
use num_traits::Signed;

use super::matrix::Matrix;
use crate::scalar::EuclideanDomain;

/// Diagonal of a Smith normal form: `d_1 | d_2 | ...`, canonical associates,
/// zeros trailing. Transform matrices are not kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm<T> {
    pub diag: Vec<T>,
}

impl<T: EuclideanDomain> SmithNormalForm<T> {
    /// Generator of the `r`-th determinant ideal, `d_1 ... d_r`.
    pub fn ideal_generator(&self, r: usize) -> T {
        if r > self.diag.len() {
            return T::zero();
        }
        self.diag[..r].iter().fold(T::one(), |acc, d| acc * d.clone())
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form over a Euclidean domain. The pivot is the nonzero
/// entry of least norm in the active block, ties broken by the first index in
/// row-major order, so the output is deterministic.
pub fn smith_normal_form<T: EuclideanDomain>(a: &Matrix<T>) -> SmithNormalForm<T> {
    let mut m = a.clone();
    let (rows, cols) = (m.nrows(), m.ncols());
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let Some((pi, pj)) = min_pivot(&m, t) else {
                diag.extend(std::iter::repeat_with(T::zero).take(n - t));
                return SmithNormalForm { diag };
            };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            let pivot = m[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = m[(i, t)].div_rem_euclid(&pivot);
                for j in t..cols {
                    let v = m[(i, j)].clone() - q.clone() * m[(t, j)].clone();
                    m[(i, j)] = v;
                }
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = m[(t, j)].div_rem_euclid(&pivot);
                for i in t..rows {
                    let v = m[(i, j)].clone() - q.clone() * m[(i, t)].clone();
                    m[(i, j)] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column t are clear; enforce divisibility on the rest.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !pivot.divides(&m[(i, j)]));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = m[(t, j)].clone() + m[(i, j)].clone();
                        m[(t, j)] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[(t, t)].unit_normal());
    }
    SmithNormalForm { diag }
}

fn min_pivot<T: EuclideanDomain>(m: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T::Norm)> = None;
    for i in t..m.nrows() {
        for j in t..m.ncols() {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            let nrm = e.norm();
            if best.as_ref().is_none_or(|(_, b)| nrm < *b) {
                best = Some(((i, j), nrm));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// N-rank via the Smith normal form: the largest `r` with `n` not dividing
/// `d_1 ... d_r`. Every `n` divides zero.
pub fn n_rank<T>(a: &Matrix<T>, n: &T) -> usize
where
    T: EuclideanDomain + Integer + Signed,
{
    let snf = smith_normal_form(a);
    let mut prod = T::one();
    let mut rank = 0;
    for (i, d) in snf.diag.iter().enumerate() {
        prod = prod * d.clone();
        if prod.is_multiple_of(n) {
            break;
        }
        rank = i + 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn diag(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 4]])).diag, diag(&[2, 4]));
        assert_eq!(smith_normal_form(&m(&[&[2, 1], &[0, 2]])).diag, diag(&[1, 4]));
        let seven = Matrix::<BigInt>::identity(3).scale(&BigInt::from(7));
        assert_eq!(smith_normal_form(&seven).diag, diag(&[7, 7, 7]));
        // divisibility has to be forced: diag(2, 3) ~ diag(1, 6)
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 3]])).diag, diag(&[1, 6]));
        assert_eq!(smith_normal_form(&m(&[&[0, 0], &[0, 0]])).diag, diag(&[0, 0]));
    }

    #[test]
    fn snf_rectangular() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diag, diag(&[1, 1]));
        assert_eq!(snf.rank(), 2);
    }

    #[test]
    fn n_rank_examples() {
        assert_eq!(n_rank(&m(&[&[2, 0], &[0, 4]]), &BigInt::from(8)), 1);
        assert_eq!(n_rank(&Matrix::<BigInt>::identity(4), &BigInt::from(2)), 4);
        let n = BigInt::from(6);
        assert_eq!(n_rank(&Matrix::<BigInt>::identity(3).scale(&n), &n), 0);
    }

    #[test]
    fn works_over_machine_integers() {
        let a = Matrix::from_rows(vec![vec![4i64, 6], vec![6, 9]]).unwrap();
        assert_eq!(smith_normal_form(&a).diag, vec![1, 0]);
    }
}
