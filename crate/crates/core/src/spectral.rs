//! Eigenvalue dependence profile of an integer matrix and the regular /
//! exceptional verdict for every order `r`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::algnum::{
    dependence_classes_with, torus_rank_rational, AlgebraicNumber, DependenceConfig, DependenceWitness,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{char_poly, factor_over_q_with_cap, invariant_factors, DEFAULT_DEGREE_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: AlgebraicNumber,
    pub alg_mult: usize,
    /// Number of Jordan blocks.
    pub blocks: usize,
    /// Order if the eigenvalue is a root of unity.
    pub unity_order: Option<u64>,
}

impl Eigenvalue {
    /// Ones above the diagonal in its Jordan blocks.
    pub fn superdiagonal_ones(&self) -> usize {
        self.alg_mult - self.blocks
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceClass {
    /// Indices into `SpectralProfile::eigen`.
    pub members: Vec<usize>,
    pub h: usize,
    pub h_bar: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralProfile {
    pub d: usize,
    pub eigen: Vec<Eigenvalue>,
    pub l: usize,
    pub l_bar: usize,
    pub classes: Vec<DependenceClass>,
    /// `(i, j, w)` over eigenvalue indices: `eigen[i]^a1 * eigen[j]^a2 = 1`.
    pub witnesses: Vec<(usize, usize, DependenceWitness)>,
    /// Set when some pair was declared independent only up to this bound.
    pub searched_bound: Option<u32>,
}

impl SpectralProfile {
    pub fn class_of(&self, eigen_index: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&eigen_index))
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<DependenceWitness> {
        self.witnesses.iter().find_map(|&(a, b, w)| {
            if (a, b) == (i, j) {
                Some(w)
            } else if (a, b) == (j, i) {
                Some(DependenceWitness { a1: w.a2, a2: w.a1 })
            } else {
                None
            }
        })
    }

    /// Orders of the root-of-unity eigenvalues.
    pub fn unity_orders(&self) -> Vec<u64> {
        self.eigen.iter().filter_map(|e| e.unity_order).collect()
    }

    pub fn is_rational_spectrum(&self) -> bool {
        self.eigen.iter().all(|e| e.value.as_rational().is_some())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralConfig {
    pub dependence: DependenceConfig,
    pub degree_cap: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            dependence: DependenceConfig::default(),
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

impl SpectralConfig {
    pub fn with_bound(bound: u32) -> Self {
        SpectralConfig {
            dependence: DependenceConfig::with_bound(bound),
            ..Self::default()
        }
    }
}

pub fn spectral_profile(a: &Matrix<BigInt>, bound: u32) -> Result<SpectralProfile> {
    spectral_profile_with(a, &SpectralConfig::with_bound(bound))
}

pub fn spectral_profile_with(a: &Matrix<BigInt>, cfg: &SpectralConfig) -> Result<SpectralProfile> {
    let d = a.require_square()?;
    if d == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if a.det() == BigInt::from(0) {
        return Err(Error::SingularMatrix);
    }
    let factored = factor_over_q_with_cap(&char_poly(a), cfg.degree_cap)?;
    let inv = invariant_factors(a);
    let mut eigen = Vec::with_capacity(d);
    for (g, e) in &factored.factors {
        let blocks = inv.blocks_for(g);
        for value in AlgebraicNumber::conjugates(g)? {
            let unity_order = value.root_of_unity_order();
            eigen.push(Eigenvalue {
                value,
                alg_mult: *e as usize,
                blocks,
                unity_order,
            });
        }
    }
    let unity: Vec<usize> = (0..eigen.len())
        .filter(|&i| eigen[i].unity_order.is_some())
        .collect();
    let rest: Vec<usize> = (0..eigen.len())
        .filter(|&i| eigen[i].unity_order.is_none())
        .collect();
    let l = unity.iter().map(|&i| eigen[i].alg_mult).sum();
    let l_bar = unity.iter().map(|&i| eigen[i].superdiagonal_ones()).sum();

    let nums: Vec<AlgebraicNumber> = rest.iter().map(|&i| eigen[i].value.clone()).collect();
    let dc = dependence_classes_with(&nums, &cfg.dependence)?;
    let classes = dc
        .classes
        .iter()
        .map(|c| {
            let members: Vec<usize> = c.iter().map(|&k| rest[k]).collect();
            DependenceClass {
                h: members.iter().map(|&i| eigen[i].alg_mult).sum(),
                h_bar: members.iter().map(|&i| eigen[i].superdiagonal_ones()).sum(),
                members,
            }
        })
        .collect();
    let witnesses = dc
        .witnesses
        .iter()
        .map(|&(i, j, w)| (rest[i], rest[j], w))
        .collect();
    Ok(SpectralProfile {
        d,
        eigen,
        l,
        l_bar,
        classes,
        witnesses,
        searched_bound: dc.searched_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `searched_bound` is set when independence was only established up to
    /// a bound on the exponents.
    Regular { searched_bound: Option<u32> },
    /// Index into `SpectralProfile::classes`.
    Exceptional { class: usize },
    /// `A^k - I` has rank at most `r` for the given minimal `k`.
    FiniteGlobalOrder { k: u64 },
}

impl Verdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, Verdict::Regular { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub r: usize,
    pub verdict: Verdict,
}

pub fn classify(a: &Matrix<BigInt>, r: usize) -> Result<RegularityVerdict> {
    let d = a.require_square()?;
    check_r(d, r)?;
    let p = spectral_profile_with(a, &SpectralConfig::default())?;
    classify_with_profile(a, &p, r)
}

fn check_r(d: usize, r: usize) -> Result<()> {
    if d < 2 || r > d - 2 {
        return Err(Error::RankOutOfRange {
            r,
            max: d.saturating_sub(2),
        });
    }
    Ok(())
}

pub fn classify_with_profile(a: &Matrix<BigInt>, p: &SpectralProfile, r: usize) -> Result<RegularityVerdict> {
    check_r(p.d, r)?;
    let unity_rank = p.l - p.l_bar;
    let verdict = if p.d - unity_rank <= r {
        Verdict::FiniteGlobalOrder {
            k: minimal_global_order(a, p, r)?,
        }
    } else {
        let mut best: Option<(usize, usize)> = None;
        for (ci, c) in p.classes.iter().enumerate() {
            let v = unity_rank + c.h - c.h_bar;
            if v + r >= p.d && best.is_none_or(|(_, bv)| v > bv) {
                best = Some((ci, v));
            }
        }
        match best {
            Some((class, _)) => Verdict::Exceptional { class },
            None => Verdict::Regular {
                searched_bound: p.searched_bound,
            },
        }
    };
    Ok(RegularityVerdict { r, verdict })
}

/// Least `k` with `rank(A^k - I) <= r`. It divides the lcm of the
/// root-of-unity orders, which itself qualifies.
fn minimal_global_order(a: &Matrix<BigInt>, p: &SpectralProfile, r: usize) -> Result<u64> {
    let lcm = p.unity_orders().iter().fold(1u64, |acc, &n| acc.lcm(&n));
    for k in 1..=lcm {
        if lcm % k == 0 && a.pow(k).sub_identity().rank() <= r {
            return Ok(k);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no power up to {lcm} has A^k - I of rank <= {r}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableEntry {
    Verdict(Verdict),
    /// `r = d - 1`: growth of the order is at most logarithmic.
    ExceptionalByTheory,
    /// `r = d`: the order is always 1.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub r: usize,
    pub entry: TableEntry,
}

pub fn classify_all(a: &Matrix<BigInt>) -> Result<Vec<TableRow>> {
    let p = spectral_profile_with(a, &SpectralConfig::default())?;
    classify_all_with_profile(a, &p)
}

pub fn classify_all_with_profile(a: &Matrix<BigInt>, p: &SpectralProfile) -> Result<Vec<TableRow>> {
    let d = p.d;
    let mut rows = Vec::with_capacity(d + 1);
    for r in 0..=d {
        let entry = if r == d {
            TableEntry::Trivial
        } else if r + 1 == d {
            TableEntry::ExceptionalByTheory
        } else {
            TableEntry::Verdict(classify_with_profile(a, p, r)?.verdict)
        };
        rows.push(TableRow { r, entry });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    /// Rank of the multiplicative group of the eigenvalues.
    pub e: usize,
    /// 1 if `A` is not diagonalizable.
    pub f: usize,
    /// Every `r` with `e + f > r + 1` is classified regular.
    pub consistent: bool,
}

pub fn corollary_check(a: &Matrix<BigInt>) -> Result<Option<CorollaryCheck>> {
    let p = spectral_profile_with(a, &SpectralConfig::default())?;
    corollary_check_with_profile(a, &p)
}

pub fn corollary_check_with_profile(
    a: &Matrix<BigInt>,
    p: &SpectralProfile,
) -> Result<Option<CorollaryCheck>> {
    let values: Option<Vec<BigRational>> = p.eigen.iter().map(|e| e.value.as_rational()).collect();
    let Some(values) = values else {
        return Ok(None);
    };
    let e = torus_rank_rational(&values)?;
    let f = usize::from(!invariant_factors(a).minimal_polynomial().is_squarefree());
    let mut consistent = true;
    for r in 0..p.d.saturating_sub(1) {
        if e + f > r + 1 && !classify_with_profile(a, p, r)?.verdict.is_regular() {
            consistent = false;
        }
    }
    Ok(Some(CorollaryCheck { e, f, consistent }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn diag(v: &[i64]) -> Matrix<BigInt> {
        Matrix::diagonal(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    fn example_one() -> Matrix<BigInt> {
        m(&[
            &[21, -10, 2, -12, 1],
            &[15, -7, 5, -15, 3],
            &[3, -2, 4, -3, 1],
            &[9, -4, -1, 0, -1],
            &[-2, 1, 1, 2, 2],
        ])
    }

    fn class_data(p: &SpectralProfile) -> Vec<(Vec<String>, usize, usize)> {
        p.classes
            .iter()
            .map(|c| {
                let mut names: Vec<String> =
                    c.members.iter().map(|&i| p.eigen[i].value.to_string()).collect();
                names.sort();
                (names, c.h, c.h_bar)
            })
            .collect()
    }

    #[test]
    fn profile_of_worked_example() {
        let p = spectral_profile(&example_one(), 64).unwrap();
        assert_eq!((p.l, p.l_bar), (0, 0));
        let mut data = class_data(&p);
        data.sort();
        assert_eq!(
            data,
            vec![
                (vec!["2".to_string()], 1, 0),
                (vec!["3".to_string(), "9".to_string()], 4, 2)
            ]
        );
    }

    #[test]
    fn unipotent_profile() {
        let p = spectral_profile(&m(&[&[1, 1], &[0, 1]]), 64).unwrap();
        assert_eq!((p.l, p.l_bar), (2, 1));
        assert!(p.classes.is_empty());
    }

    #[test]
    fn verdicts_of_worked_example() {
        let a = example_one();
        let table = classify_all(&a).unwrap();
        let kinds: Vec<&str> = table
            .iter()
            .map(|row| match &row.entry {
                TableEntry::Verdict(Verdict::Regular { .. }) => "reg",
                TableEntry::Verdict(Verdict::Exceptional { .. }) => "exc",
                TableEntry::Verdict(Verdict::FiniteGlobalOrder { .. }) => "fin",
                TableEntry::ExceptionalByTheory => "theory",
                TableEntry::Trivial => "trivial",
            })
            .collect();
        assert_eq!(kinds, ["reg", "reg", "reg", "exc", "theory", "trivial"]);
    }

    #[test]
    fn jordan_data_example() {
        let a = Matrix::block_diagonal(&[diag(&[1, -1]), m(&[&[2, 1], &[0, 2]]), diag(&[4])]);
        let p = spectral_profile(&a, 64).unwrap();
        assert_eq!((p.l, p.l_bar), (2, 0));
        assert_eq!(p.classes.len(), 1);
        assert_eq!((p.classes[0].h, p.classes[0].h_bar), (3, 1));
        assert!(matches!(
            classify(&a, 1).unwrap().verdict,
            Verdict::Exceptional { .. }
        ));
        assert!(classify(&a, 0).unwrap().verdict.is_regular());
    }

    #[test]
    fn finite_global_order() {
        let i4 = Matrix::<BigInt>::identity(4);
        assert_eq!(
            classify(&i4, 2).unwrap().verdict,
            Verdict::FiniteGlobalOrder { k: 1 }
        );
        // rotation by 90 degrees: A^4 = I, A^2 = -I
        let rot = Matrix::block_diagonal(&[m(&[&[0, -1], &[1, 0]]), m(&[&[0, -1], &[1, 0]])]);
        assert_eq!(
            classify(&rot, 0).unwrap().verdict,
            Verdict::FiniteGlobalOrder { k: 4 }
        );
        // diag(1, -1, 2): rank(A^2 - I) = 1 already
        assert_eq!(
            classify(&diag(&[1, -1, 2]), 1).unwrap().verdict,
            Verdict::FiniteGlobalOrder { k: 2 }
        );
    }

    #[test]
    fn corollary_examples() {
        let c = corollary_check(&diag(&[3, 5, 15])).unwrap().unwrap();
        assert_eq!((c.e, c.f, c.consistent), (2, 0, true));
        assert!(classify(&diag(&[3, 5, 15]), 1).unwrap().verdict.is_regular());
        let c = corollary_check(&example_one()).unwrap().unwrap();
        assert_eq!((c.e, c.f, c.consistent), (2, 1, true));
        let c = corollary_check(&Matrix::identity(3)).unwrap().unwrap();
        assert_eq!((c.e, c.f), (0, 0));
        assert_eq!(corollary_check(&m(&[&[0, 1], &[1, 1]])).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(spectral_profile(&diag(&[1, 0]), 64), Err(Error::SingularMatrix));
        assert!(matches!(
            classify(&diag(&[2, 3]), 1),
            Err(Error::RankOutOfRange { .. })
        ));
    }
}
