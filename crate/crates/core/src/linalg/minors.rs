//! Minors, exterior powers and determinant ideals.

use num_integer::Integer;
use num_traits::Signed;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Scalar};

/// Row and column index sets of a square minor (0-based, strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::BadMinorIndex(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        for seq in [&rows, &cols] {
            if seq.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadMinorIndex(format!(
                    "{seq:?} is not strictly increasing"
                )));
            }
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn empty() -> Self {
        MinorIndex {
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Combinations {
    Combinations {
        n,
        current: if r <= n { Some((0..r).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let r = cur.len();
        let mut next = cur.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Determinant of the submatrix selected by `idx`; the empty minor is 1.
pub fn minor_det<T: ExactDiv>(a: &Matrix<T>, idx: &MinorIndex) -> Result<T> {
    for (&i, bound) in idx
        .rows
        .iter()
        .map(|i| (i, a.nrows()))
        .chain(idx.cols.iter().map(|j| (j, a.ncols())))
    {
        if i >= bound {
            return Err(Error::IndexOutOfRange { index: i, dim: bound });
        }
    }
    Ok(a.select(&idx.rows, &idx.cols).det())
}

/// The `r`-th exterior power: entry `(J, K)` is the minor on rows `J` and
/// columns `K`, both ordered lexicographically.
pub fn exterior_power<T: ExactDiv>(a: &Matrix<T>, r: usize) -> Result<Matrix<T>> {
    let d = a.require_square()?;
    if r == 0 || r > d {
        return Err(Error::RankOutOfRange { r, max: d });
    }
    let subsets: Vec<Vec<usize>> = combinations(d, r).collect();
    let n = subsets.len();
    let mut entries = Vec::with_capacity(n * n);
    for rows in &subsets {
        for cols in &subsets {
            entries.push(a.select(rows, cols).det());
        }
    }
    Matrix::from_vec(n, n, entries)
}

/// Every `r x r` minor determinant, rows-major over lexicographic index sets.
pub fn all_minors<T: ExactDiv>(a: &Matrix<T>, r: usize) -> impl Iterator<Item = T> + '_ {
    let row_sets: Vec<Vec<usize>> = combinations(a.nrows(), r).collect();
    let col_sets: Vec<Vec<usize>> = combinations(a.ncols(), r).collect();
    row_sets.into_iter().flat_map(move |rows| {
        col_sets
            .clone()
            .into_iter()
            .map(move |cols| a.select(&rows, &cols).det())
    })
}

/// Nonnegative generator of the determinant ideal `I_r(A)`: the gcd of all
/// `r x r` minors, `1` for `r = 0` and `0` when every minor vanishes (or
/// `r` exceeds the size).
pub fn determinant_ideal_gen<T>(a: &Matrix<T>, r: usize) -> T
where
    T: ExactDiv + Integer + Signed,
{
    if r == 0 {
        return T::one();
    }
    let mut g = T::zero();
    for m in all_minors(a, r) {
        if m.is_zero() {
            continue;
        }
        g = g.gcd(&m);
        if g.is_one() {
            break;
        }
    }
    g
}

/// N-rank by exhaustive minor enumeration: the largest `r` with some
/// `r x r` minor not divisible by `n`.
pub fn n_rank_by_minors<T>(a: &Matrix<T>, n: &T) -> usize
where
    T: ExactDiv + Integer + Signed,
{
    let max = a.nrows().min(a.ncols());
    (1..=max)
        .rev()
        .find(|&r| all_minors(a, r).any(|m| !m.is_multiple_of(n)))
        .unwrap_or(0)
}

/// Cofactor-expansion determinant; exponential, kept for cross-checks.
pub fn det_cofactor<T: Scalar>(a: &Matrix<T>) -> T {
    let n = a.nrows();
    if n == 0 {
        return T::one();
    }
    if n == 1 {
        return a[(0, 0)].clone();
    }
    let mut acc = T::zero();
    let rest: Vec<usize> = (1..n).collect();
    for j in 0..n {
        if a[(0, j)].is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let sub = det_cofactor(&a.select(&rest, &cols));
        let term = a[(0, j)].clone() * sub;
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
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

    pub(crate) fn example_one() -> Matrix<BigInt> {
        m(&[
            &[21, -10, 2, -12, 1],
            &[15, -7, 5, -15, 3],
            &[3, -2, 4, -3, 1],
            &[9, -4, -1, 0, -1],
            &[-2, 1, 1, 2, 2],
        ])
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            c,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn minor_of_diagonal() {
        let a = m(&[&[2, 0], &[0, 4]]);
        let idx = MinorIndex::new(vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(minor_det(&a, &idx).unwrap(), BigInt::from(8));
        assert_eq!(minor_det(&a, &MinorIndex::empty()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn full_minor_of_example_one() {
        let a = example_one();
        let idx = MinorIndex::new((0..5).collect(), (0..5).collect()).unwrap();
        let det = minor_det(&a, &idx).unwrap();
        assert_eq!(det, det_cofactor(&a));
        assert_eq!(det, BigInt::from(2 * 27 * 9));
    }

    #[test]
    fn minor_index_errors() {
        assert!(MinorIndex::new(vec![1, 0], vec![0, 1]).is_err());
        assert!(MinorIndex::new(vec![0], vec![0, 1]).is_err());
        let a = m(&[&[1, 0], &[0, 1]]);
        let idx = MinorIndex::new(vec![0, 2], vec![0, 1]).unwrap();
        assert!(matches!(
            minor_det(&a, &idx),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        ));
    }

    #[test]
    fn exterior_power_small_cases() {
        let a = m(&[&[3, 1], &[4, 2]]);
        assert_eq!(exterior_power(&a, 2).unwrap(), m(&[&[2]]));
        let d = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(
            exterior_power(&d, 2).unwrap(),
            m(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]])
        );
        assert!(exterior_power(&d, 0).is_err());
        assert!(exterior_power(&d, 4).is_err());
    }

    #[test]
    fn determinant_ideals() {
        let a = m(&[&[2, 1], &[0, 2]]);
        assert_eq!(determinant_ideal_gen(&a, 0), BigInt::from(1));
        assert_eq!(determinant_ideal_gen(&a, 1), BigInt::from(1));
        assert_eq!(determinant_ideal_gen(&a, 2), BigInt::from(4));
        let d = m(&[&[2, 0], &[0, 4]]);
        assert_eq!(determinant_ideal_gen(&d, 2), BigInt::from(8));
        assert_eq!(
            determinant_ideal_gen(&Matrix::<BigInt>::zeros(2, 2), 1),
            BigInt::from(0)
        );
    }

    #[test]
    fn n_rank_by_enumeration() {
        let d = m(&[&[2, 0], &[0, 4]]);
        assert_eq!(n_rank_by_minors(&d, &BigInt::from(8)), 1);
        let five = Matrix::<BigInt>::identity(3).scale(&BigInt::from(5));
        assert_eq!(n_rank_by_minors(&five, &BigInt::from(5)), 0);
        assert_eq!(
            n_rank_by_minors(&Matrix::<BigInt>::identity(3), &BigInt::from(7)),
            3
        );
    }
}
