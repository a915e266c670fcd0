//! Root data on a concrete lattice `X = Z^n`.
//!
//! `X` carries the simple roots (vectors) and simple coroots (covectors) of
//! the dual group. Reducible types are block-diagonal sums of their factors,
//! optionally followed by a central torus of rank `t`. Weyl vectors are kept
//! doubled (`2ρ`) so that everything stays integral.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{column_span_basis, solve_integer, IntMatrix};
use crate::{Error, Result};

/// Largest Weyl group [`weyl_group_elements`] will enumerate.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// Product of simple Cartan types, plus an optional central torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<(Series, usize)>,
    torus_rank: usize,
}

impl CartanType {
    /// Validates every factor; `B1`, `C1` become `A1` and `D2` becomes `A1×A1`.
    pub fn new(factors: Vec<(Series, usize)>, torus_rank: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(factors.len());
        for (series, rank) in factors {
            let bad = || Error::InvalidCartanType(format!("{}{}", series.letter(), rank));
            match (series, rank) {
                (_, 0) => return Err(bad()),
                (Series::B | Series::C, 1) => out.push((Series::A, 1)),
                (Series::D, 1) => return Err(bad()),
                (Series::D, 2) => {
                    out.push((Series::A, 1));
                    out.push((Series::A, 1));
                }
                (Series::E, 6..=8) | (Series::F, 4) | (Series::G, 2) => out.push((series, rank)),
                (Series::E | Series::F | Series::G, _) => return Err(bad()),
                _ => out.push((series, rank)),
            }
        }
        if out.is_empty() && torus_rank == 0 {
            return Err(Error::InvalidCartanType("empty type".to_string()));
        }
        Ok(CartanType {
            factors: out,
            torus_rank,
        })
    }

    pub fn simple(series: Series, rank: usize) -> Result<Self> {
        Self::new(vec![(series, rank)], 0)
    }

    pub fn torus(rank: usize) -> Result<Self> {
        Self::new(Vec::new(), rank)
    }

    pub fn factors(&self) -> &[(Series, usize)] {
        &self.factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|&(_, r)| r).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }

    /// Gram matrix of a W-invariant inner product on the simple roots, with
    /// short roots of squared length 2.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let r = self.semisimple_rank();
        let mut g = vec![vec![0i64; r]; r];
        let mut off = 0;
        for &(series, n) in &self.factors {
            let block = factor_gram(series, n);
            for i in 0..n {
                for j in 0..n {
                    g[off + i][off + j] = block[i][j];
                }
            }
            off += n;
        }
        g
    }

    /// Order of the Weyl group, from the classification.
    pub fn weyl_group_order(&self) -> BigInt {
        let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        self.factors
            .iter()
            .map(|&(series, n)| match series {
                Series::A => fact(n + 1),
                Series::B | Series::C => fact(n) << n,
                Series::D => fact(n) << (n - 1),
                Series::E => BigInt::from(match n {
                    6 => 51_840u64,
                    7 => 2_903_040,
                    _ => 696_729_600,
                }),
                Series::F => BigInt::from(1152),
                Series::G => BigInt::from(12),
            })
            .product()
    }

    /// `C[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.gram();
        (0..g.len())
            .map(|i| (0..g.len()).map(|j| 2 * g[i][j] / g[i][i]).collect())
            .collect()
    }
}

fn factor_gram(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match series {
        Series::A => {
            for i in 0..n {
                g[i][i] = 2;
                if i + 1 < n {
                    link(&mut g, i, i + 1, -1);
                }
            }
        }
        Series::B => {
            // α_n short
            for i in 0..n {
                g[i][i] = if i + 1 == n { 2 } else { 4 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Series::C => {
            // α_n long
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
                }
            }
        }
        Series::D => {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Series::E => {
            // Bourbaki numbering: 1-3-4-5-6-7-8 with 2 attached to 4.
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Series::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Series::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(s, n)| format!("{}{}", s.letter(), n))
            .collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `A2`, `B2`, `A1xA1`, `A2xT1`, `T2`, … (`x` or `×` separated).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCartanType(s.to_string());
        let mut factors = Vec::new();
        let mut torus = 0;
        for part in s.split(['x', 'X', '×']).map(str::trim) {
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(bad)?;
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            let series = match letter.to_ascii_uppercase() {
                'A' => Series::A,
                'B' => Series::B,
                'C' => Series::C,
                'D' => Series::D,
                'E' => Series::E,
                'F' => Series::F,
                'G' => Series::G,
                'T' => {
                    torus += rank;
                    continue;
                }
                _ => return Err(bad()),
            };
            factors.push((series, rank));
        }
        CartanType::new(factors, torus)
    }
}

/// Element of `X = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// `⟨self, covector⟩`
    pub fn pair(&self, covector: &[i64]) -> i64 {
        self.0.iter().zip(covector).map(|(a, b)| a * b).sum()
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Index<usize> for Weight {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// How `X` sits between the root lattice and the weight lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    /// `X = Λ`: coordinates are root coordinates.
    Root,
    /// `X = P`: coordinates are fundamental-weight coordinates.
    Weight,
    /// `X` spanned by the given vectors, written in fundamental-weight
    /// coordinates (torus coordinates appended). Must contain `Λ` and have full rank.
    Custom(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    cartan_type: CartanType,
    lattice_rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    positive_root_coords: Vec<Vec<i64>>,
    positive_roots: Vec<Weight>,
    /// Positive coroots in simple-coroot coordinates, matching `positive_roots`.
    positive_coroot_coords: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    /// `adj(C)` and `det(C)`, for root coordinates of lattice points.
    cartan_adj: Vec<Vec<i64>>,
    cartan_det: i64,
}

/// Builds the root datum of `ty` on the chosen lattice.
pub fn build_root_datum(ty: &CartanType, lattice: &LatticeChoice) -> Result<RootDatum> {
    let r = ty.semisimple_rank();
    let n = ty.rank();
    let cartan = ty.cartan_matrix();

    let (simple_roots, simple_coroots): (Vec<Weight>, Vec<Vec<i64>>) = match lattice {
        LatticeChoice::Root => {
            let roots = (0..r)
                .map(|j| {
                    let mut v = vec![0; n];
                    v[j] = 1;
                    Weight(v)
                })
                .collect();
            let coroots = (0..r)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[..r].copy_from_slice(&cartan[i]);
                    v
                })
                .collect();
            (roots, coroots)
        }
        LatticeChoice::Weight => {
            let roots = (0..r)
                .map(|j| {
                    let mut v = vec![0; n];
                    for i in 0..r {
                        v[i] = cartan[i][j];
                    }
                    Weight(v)
                })
                .collect();
            let coroots = (0..r)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v
                })
                .collect();
            (roots, coroots)
        }
        LatticeChoice::Custom(gens) => custom_lattice(&cartan, r, n, gens)?,
    };

    let gram = ty.gram();
    let positive_root_coords = reflection_closure(&cartan);
    let positive_roots = positive_root_coords
        .iter()
        .map(|b| combine(&simple_roots, b, n))
        .collect();
    let positive_coroot_coords: Vec<Vec<i64>> = positive_root_coords
        .iter()
        .map(|b| coroot_coefficients(&gram, b))
        .collect();
    let positive_coroots = positive_coroot_coords
        .iter()
        .map(|c| combine_covectors(&simple_coroots, c, n))
        .collect();
    let (cartan_adj, cartan_det) = adjugate(&cartan);

    let rd = RootDatum {
        cartan_type: ty.clone(),
        lattice_rank: n,
        simple_roots,
        simple_coroots,
        cartan,
        gram,
        positive_root_coords,
        positive_roots,
        positive_coroot_coords,
        positive_coroots,
        cartan_adj,
        cartan_det,
    };
    debug_assert_eq!(rd.pairing_matrix(), rd.cartan);
    Ok(rd)
}

fn custom_lattice(
    cartan: &[Vec<i64>],
    r: usize,
    n: usize,
    gens: &[Vec<i64>],
) -> Result<(Vec<Weight>, Vec<Vec<i64>>)> {
    let g = IntMatrix::from_columns(n, gens)?;
    let basis = column_span_basis(&g);
    if basis.cols() != n {
        return Err(Error::LatticeNotFullRank {
            rank: basis.cols(),
            expected: n,
        });
    }
    let mut roots = Vec::with_capacity(r);
    for j in 0..r {
        let mut alpha = vec![BigInt::zero(); n];
        for (a, row) in alpha.iter_mut().zip(cartan) {
            *a = BigInt::from(row[j]);
        }
        let y = solve_integer(&basis, &alpha).ok_or(Error::LatticeDoesNotContainRoots)?;
        roots.push(Weight(y.iter().map(to_i64).collect::<Result<_>>()?));
    }
    // ⟨b_k, α_i^∨⟩ is the i-th fundamental-weight coordinate of b_k.
    let coroots = (0..r)
        .map(|i| basis.row(i).iter().map(to_i64).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok((roots, coroots))
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::DimensionMismatch(format!("lattice entry {v} exceeds 64 bits")))
}

/// Positive roots in simple-root coordinates.
fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..r {
            let p: i64 = (0..r).map(|j| b[j] * cartan[i][j]).sum();
            if p == 0 {
                continue;
            }
            let mut s = b.clone();
            s[i] -= p;
            if s.iter().all(|&c| c >= 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    roots
}

/// Coefficients of `β^∨` in the simple coroots, for `β = Σ b_j α_j`.
fn coroot_coefficients(gram: &[Vec<i64>], b: &[i64]) -> Vec<i64> {
    let r = b.len();
    let norm: i64 = (0..r)
        .map(|i| (0..r).map(|j| b[i] * gram[i][j] * b[j]).sum::<i64>())
        .sum();
    (0..r)
        .map(|j| {
            let num = b[j] * gram[j][j];
            debug_assert_eq!(num % norm, 0);
            num / norm
        })
        .collect()
}

fn combine(vectors: &[Weight], coeffs: &[i64], n: usize) -> Weight {
    let mut out = vec![0; n];
    for (v, &c) in vectors.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(&v.0) {
            *o += c * x;
        }
    }
    Weight(out)
}

fn combine_covectors(covectors: &[Vec<i64>], coeffs: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for (v, &c) in covectors.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Adjugate and determinant of a small integer matrix.
fn adjugate(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let r = m.len();
    if r == 0 {
        return (Vec::new(), 1);
    }
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&v| rat(v)).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..r)
        .map(|i| (0..r).map(|j| rat((i == j) as i64)).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..r {
        let p = (c..r)
            .find(|&i| !a[i][c].is_zero())
            .expect("Cartan matrices are invertible");
        if p != c {
            a.swap(p, c);
            inv.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for j in 0..r {
            a[c][j] /= &pivot;
            inv[c][j] /= &pivot;
        }
        for i in 0..r {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..r {
                    let (x, y) = (&a[c][j] * &f, &inv[c][j] * &f);
                    a[i][j] -= x;
                    inv[i][j] -= y;
                }
            }
        }
    }
    let det_int = det.to_integer();
    let adj = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| (v * &det).to_integer().to_i64().expect("small adjugate"))
                .collect()
        })
        .collect();
    (adj, det_int.to_i64().expect("small determinant"))
}

/// Element of the Weyl group as an integer matrix on `X` (row-major, acting on
/// column vectors), with its Coxeter length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    n: usize,
    matrix: Vec<i64>,
    length: usize,
}

impl WeylElement {
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.matrix
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `(-1)^{l(w)}`
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        self.apply_slice(&x.0)
    }

    pub fn apply_slice(&self, x: &[i64]) -> Weight {
        let n = self.n;
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.matrix[i * self.n + j] == (i == j) as i64))
    }
}

impl RootDatum {
    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Integer Gram matrix of the W-invariant form on simple roots.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `⟨α_j, α_i^∨⟩` recomputed from the lattice data.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_coroots
            .iter()
            .map(|c| self.simple_roots.iter().map(|a| a.pair(c)).collect())
            .collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    /// Positive coroots as covectors on `X`, matching [`Self::positive_roots`].
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn positive_coroot_coords(&self) -> &[Vec<i64>] {
        &self.positive_coroot_coords
    }

    /// `2ρ`: the sum of the positive roots.
    pub fn two_rho(&self) -> Weight {
        self.positive_roots
            .iter()
            .fold(Weight::zero(self.lattice_rank), |acc, a| acc.add(a))
    }

    /// `2ρ^∨`: the sum of the positive coroots, as a covector.
    pub fn two_rho_check(&self) -> Vec<i64> {
        let mut out = vec![0; self.lattice_rank];
        for c in &self.positive_coroots {
            for (o, x) in out.iter_mut().zip(c) {
                *o += x;
            }
        }
        out
    }

    /// `(⟨x, α_i^∨⟩)_i`
    pub fn dynkin_labels(&self, x: &Weight) -> Vec<i64> {
        self.simple_coroots.iter().map(|c| x.pair(c)).collect()
    }

    pub fn is_dominant(&self, x: &Weight) -> bool {
        self.simple_coroots.iter().all(|c| x.pair(c) >= 0)
    }

    pub fn check_rank(&self, x: &Weight) -> Result<()> {
        if x.len() != self.lattice_rank {
            return Err(Error::RankMismatch {
                left: x.len(),
                right: self.lattice_rank,
            });
        }
        Ok(())
    }

    /// `s_i(x) = x - ⟨x, α_i^∨⟩ α_i`
    pub fn simple_reflection(&self, i: usize, x: &Weight) -> Weight {
        let p = x.pair(&self.simple_coroots[i]);
        x.sub(&self.simple_roots[i].scale(p))
    }

    /// The dominant element of the W-orbit of `x`.
    pub fn dominant_conjugate(&self, x: &Weight) -> Weight {
        let mut x = x.clone();
        while let Some(i) =
            (0..self.semisimple_rank()).find(|&i| x.pair(&self.simple_coroots[i]) < 0)
        {
            x = self.simple_reflection(i, &x);
        }
        x
    }

    /// Coordinates of `x` in the simple roots, if `x ∈ Λ`.
    pub fn root_coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        let r = self.semisimple_rank();
        let p: Vec<i128> = self
            .simple_coroots
            .iter()
            .map(|c| x.iter().zip(c).map(|(&a, &b)| a as i128 * b as i128).sum())
            .collect();
        let det = self.cartan_det as i128;
        let mut y = Vec::with_capacity(r);
        for j in 0..r {
            let num: i128 = (0..r).map(|i| self.cartan_adj[j][i] as i128 * p[i]).sum();
            if num % det != 0 {
                return None;
            }
            y.push(i64::try_from(num / det).ok()?);
        }
        (combine(&self.simple_roots, &y, self.lattice_rank).0 == x).then_some(y)
    }

    /// Matrix of `s_i` on `X` (row-major).
    pub fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let n = self.lattice_rank;
        let a = &self.simple_roots[i].0;
        let c = &self.simple_coroots[i];
        let mut m = vec![0; n * n];
        for r in 0..n {
            for s in 0..n {
                m[r * n + s] = (r == s) as i64 - a[r] * c[s];
            }
        }
        m
    }
}

/// The positive roots of `rd`, in `X` coordinates.
pub fn positive_roots(rd: &RootDatum) -> Vec<Weight> {
    rd.positive_roots.clone()
}

/// All Weyl group elements, refusing groups larger than [`DEFAULT_WEYL_CAP`].
pub fn weyl_group_elements(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    weyl_group_elements_capped(rd, DEFAULT_WEYL_CAP)
}

/// Breadth-first enumeration from the identity by left multiplication with
/// simple reflections; BFS depth is the Coxeter length.
pub fn weyl_group_elements_capped(rd: &RootDatum, cap: usize) -> Result<Vec<WeylElement>> {
    if rd.cartan_type.weyl_group_order() > BigInt::from(cap) {
        return Err(Error::GroupTooLarge { cap });
    }
    let n = rd.lattice_rank;
    let gens: Vec<Vec<i64>> = (0..rd.semisimple_rank())
        .map(|i| rd.reflection_matrix(i))
        .collect();
    let mut identity = vec![0; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut out = vec![WeylElement {
        n,
        matrix: identity,
        length: 0,
    }];
    let mut head = 0;
    while head < out.len() {
        let (w, len) = (out[head].matrix.clone(), out[head].length);
        head += 1;
        for s in &gens {
            let prod = mat_mul(s, &w, n);
            if seen.insert(prod.clone()) {
                if out.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                out.push(WeylElement {
                    n,
                    matrix: prod,
                    length: len + 1,
                });
            }
        }
    }
    Ok(out)
}

pub(crate) fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// `μ_m = 4mρ = 2m · (2ρ)`.
pub fn mu_m(rd: &RootDatum, m: u32) -> Weight {
    rd.two_rho().scale(2 * m as i64)
}

/// Weyl's dimension formula `∏_{β>0} ⟨μ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩`, evaluated in
/// doubled form.
pub fn weyl_dim(rd: &RootDatum, mu: &Weight) -> Result<BigInt> {
    rd.check_rank(mu)?;
    if !rd.is_dominant(mu) {
        return Err(Error::NonDominantWeight);
    }
    let labels = rd.dynkin_labels(mu);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for c in &rd.positive_coroot_coords {
        // ⟨2ρ, α_j^∨⟩ = 2 for every simple coroot.
        let two_rho: i64 = c.iter().map(|x| 2 * x).sum();
        let two_mu: i64 = c.iter().zip(&labels).map(|(x, l)| 2 * x * l).sum();
        num *= BigInt::from(two_mu + two_rho);
        den *= BigInt::from(two_rho);
    }
    debug_assert!((&num % &den).is_zero());
    let d = num / den;
    debug_assert!(d.is_positive());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str, l: LatticeChoice) -> RootDatum {
        build_root_datum(&s.parse().unwrap(), &l).unwrap()
    }

    #[test]
    fn a1_root_and_weight() {
        let r = rd("A1", LatticeChoice::Root);
        assert_eq!(r.lattice_rank(), 1);
        assert_eq!(r.simple_roots(), &[Weight(vec![1])]);
        assert_eq!(r.simple_coroots(), &[vec![2]]);
        let w = rd("A1", LatticeChoice::Weight);
        assert_eq!(w.simple_roots(), &[Weight(vec![2])]);
        assert_eq!(w.simple_coroots(), &[vec![1]]);
    }

    #[test]
    fn a2_root_lattice() {
        let r = rd("A2", LatticeChoice::Root);
        assert_eq!(r.simple_roots(), &[Weight(vec![1, 0]), Weight(vec![0, 1])]);
        assert_eq!(r.simple_coroots(), &[vec![2, -1], vec![-1, 2]]);
        let roots: BTreeSet<_> = positive_roots(&r).into_iter().collect();
        let expect: BTreeSet<_> = [vec![1, 0], vec![0, 1], vec![1, 1]]
            .into_iter()
            .map(Weight)
            .collect();
        assert_eq!(roots, expect);
        assert_eq!(r.two_rho(), Weight(vec![2, 2]));
        assert_eq!(mu_m(&r, 1), Weight(vec![4, 4]));
    }

    #[test]
    fn positive_root_counts() {
        for (t, k) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E8", 120),
            ("A1xA1", 2),
            ("T2", 0),
        ] {
            assert_eq!(rd(t, LatticeChoice::Root).positive_roots().len(), k, "{t}");
        }
    }

    #[test]
    fn weyl_orders() {
        for (t, order) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 24),
            ("F4", 1152),
            ("A1xA1", 4),
            ("T2", 1),
        ] {
            let r = rd(t, LatticeChoice::Root);
            assert_eq!(weyl_group_elements(&r).unwrap().len(), order, "{t}");
        }
        for t in ["A4", "B3", "C4", "D4", "D5", "G2xA2", "E6", "E7"] {
            let ty: CartanType = t.parse().unwrap();
            if ty.weyl_group_order() < BigInt::from(100_000) {
                let r = build_root_datum(&ty, &LatticeChoice::Root).unwrap();
                assert_eq!(
                    BigInt::from(weyl_group_elements(&r).unwrap().len()),
                    ty.weyl_group_order(),
                    "{t}"
                );
            }
        }
        let e6 = rd("E6", LatticeChoice::Root);
        assert_eq!(weyl_group_elements(&e6).unwrap().len(), 51840);
    }

    #[test]
    fn weyl_cap_is_enforced() {
        let r = rd("B3", LatticeChoice::Root);
        assert_eq!(
            weyl_group_elements_capped(&r, 10).unwrap_err(),
            Error::GroupTooLarge { cap: 10 }
        );
        let e8 = rd("E8", LatticeChoice::Root);
        assert_eq!(
            weyl_group_elements(&e8).unwrap_err(),
            Error::GroupTooLarge {
                cap: DEFAULT_WEYL_CAP
            }
        );
    }

    #[test]
    fn a1_weyl_group() {
        let r = rd("A1", LatticeChoice::Root);
        let w = weyl_group_elements(&r).unwrap();
        assert_eq!(w[0].matrix(), &[1]);
        assert_eq!(w[1].matrix(), &[-1]);
        assert_eq!(w[1].sign(), -1);
    }

    #[test]
    fn dimensions() {
        let a1 = rd("A1", LatticeChoice::Root);
        assert_eq!(weyl_dim(&a1, &Weight(vec![2])).unwrap(), BigInt::from(5));
        assert_eq!(weyl_dim(&a1, &Weight(vec![0])).unwrap(), BigInt::from(1));
        let a2 = rd("A2", LatticeChoice::Root);
        assert_eq!(
            weyl_dim(&a2, &Weight(vec![4, 4])).unwrap(),
            BigInt::from(125)
        );
        // adjoint of A2
        assert_eq!(weyl_dim(&a2, &Weight(vec![1, 1])).unwrap(), BigInt::from(8));
        // 7-dimensional representation of G2 (short fundamental weight)
        let g2 = rd("G2", LatticeChoice::Weight);
        assert_eq!(weyl_dim(&g2, &Weight(vec![1, 0])).unwrap(), BigInt::from(7));
        assert_eq!(
            weyl_dim(&g2, &Weight(vec![0, 1])).unwrap(),
            BigInt::from(14)
        );
        let b2 = rd("B2", LatticeChoice::Weight);
        let mut dims: Vec<_> = [vec![1, 0], vec![0, 1]]
            .into_iter()
            .map(|v| weyl_dim(&b2, &Weight(v)).unwrap())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![BigInt::from(4), BigInt::from(5)]);
    }

    #[test]
    fn non_dominant_rejected() {
        let a1 = rd("A1", LatticeChoice::Root);
        assert_eq!(
            weyl_dim(&a1, &Weight(vec![-1])).unwrap_err(),
            Error::NonDominantWeight
        );
        assert!(matches!(
            weyl_dim(&a1, &Weight(vec![1, 1])).unwrap_err(),
            Error::RankMismatch { .. }
        ));
    }

    #[test]
    fn custom_lattice_between_root_and_weight() {
        // A3 with X = Λ + Z·ϖ_2 (index 2 in the weight lattice).
        let r = rd(
            "A3",
            LatticeChoice::Custom(vec![
                vec![2, -1, 0],
                vec![-1, 2, -1],
                vec![0, -1, 2],
                vec![0, 1, 0],
            ]),
        );
        assert_eq!(r.pairing_matrix(), r.cartan_matrix());
        assert_eq!(r.positive_roots().len(), 6);

        let err = build_root_datum(
            &"A1".parse().unwrap(),
            &LatticeChoice::Custom(vec![vec![4]]),
        );
        assert_eq!(err.unwrap_err(), Error::LatticeDoesNotContainRoots);
        let err = build_root_datum(
            &"A2".parse().unwrap(),
            &LatticeChoice::Custom(vec![vec![2, -1]]),
        );
        assert!(matches!(err.unwrap_err(), Error::LatticeNotFullRank { .. }));
    }

    #[test]
    fn type_parsing() {
        assert_eq!(
            "D2".parse::<CartanType>().unwrap(),
            "A1xA1".parse().unwrap()
        );
        assert_eq!("A2xT1".parse::<CartanType>().unwrap().rank(), 3);
        assert_eq!("A1×A1".parse::<CartanType>().unwrap().to_string(), "A1xA1");
        for bad in ["E5", "F3", "G3", "A0", "Q2", "", "D1", "A"] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn root_coordinates_detects_membership() {
        let w = rd("A1", LatticeChoice::Weight);
        assert_eq!(w.root_coordinates(&[4]), Some(vec![2]));
        assert_eq!(w.root_coordinates(&[1]), None);
        let t = rd("A1xT1", LatticeChoice::Root);
        assert_eq!(t.root_coordinates(&[3, 0]), Some(vec![3]));
        assert_eq!(t.root_coordinates(&[3, 1]), None);
    }
}
