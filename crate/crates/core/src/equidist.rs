//! Equi-distribution of the weights of `V_{4mρ}` over `H`: exact class
//! proportions `S_{h,m}`, character sums, the averaging operator with symbol
//! `S_{·,m}` and the transfer sign.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::abelian::{character_group, DualCharacter};
use crate::charring::{char_mu_m, coset_sums};
use crate::galois::{compute_h, GaloisAction, HgData};
use crate::rootdatum::{RootDatum, Weight};
use crate::{Error, Result};

/// `S_{h,m}` for every `h ∈ H`, plus the integer data they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SValues {
    pub m: u32,
    pub dim: BigInt,
    /// `Σ_{λ̄=h} dim V[λ]`, indexed by H-index.
    pub coset_sums: Vec<BigInt>,
    pub values: Vec<BigRational>,
}

impl SValues {
    pub fn total(&self) -> BigRational {
        self.values.iter().sum()
    }

    /// `max_{h,h'} |S_h − S_{h'}|`
    pub fn max_pairwise_dev(&self) -> BigRational {
        let max = self
            .values
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let min = self
            .values
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        max - min
    }

    /// `max_h |S_h − 1/|H||`
    pub fn dev_from_uniform(&self) -> BigRational {
        let u = BigRational::new(1.into(), self.values.len().into());
        self.values
            .iter()
            .map(|s| (s - &u).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Exact `S_{h,m}`.
pub fn s_values(hg: &HgData, m: u32) -> SValues {
    let ch = char_mu_m(hg.datum(), m);
    let dim = ch.dimension();
    let sums = coset_sums(&ch, hg)
        .expect("char_mu_m is supported on the root lattice")
        .sums;
    let values = sums
        .iter()
        .map(|c| BigRational::new(c.clone(), dim.clone()))
        .collect();
    SValues {
        m,
        dim,
        coset_sums: sums,
        values,
    }
}

/// `χ(Char V_{μ_m}) = Σ_h χ(h) · Σ_{λ̄=h} dim V[λ]`.
///
/// Classes sharing a phase are summed exactly before the complex evaluation,
/// and the trivial character returns the dimension exactly.
pub fn char_sum(hg: &HgData, s: &SValues, chi: &DualCharacter) -> Complex64 {
    if chi.is_trivial() {
        return Complex64::new(s.dim.to_f64().unwrap_or(f64::INFINITY), 0.0);
    }
    let mut by_phase: alloc::collections::BTreeMap<(BigInt, BigInt), BigInt> = Default::default();
    for (h, c) in s.coset_sums.iter().enumerate() {
        *by_phase.entry(chi.phase(hg.element(h))).or_default() += c;
    }
    by_phase
        .into_iter()
        .map(|((num, den), c)| {
            let t = num.to_f64().unwrap() / den.to_f64().unwrap();
            Complex64::from_polar(c.to_f64().unwrap(), core::f64::consts::TAU * t)
        })
        .sum()
}

/// `χ(Char V_{μ_m}) / dim V_{μ_m} = Σ_h χ(h) S_{h,m}`, the eigenvalue of the
/// averaging operator at `χ`.
pub fn char_ratio(hg: &HgData, s: &SValues, chi: &DualCharacter) -> Complex64 {
    if chi.is_trivial() {
        return Complex64::new(1.0, 0.0);
    }
    let z = char_sum(hg, s, chi);
    let d = s.dim.to_f64().unwrap();
    Complex64::new(z.re / d, z.im / d)
}

/// One value of `m` in an [`EquidistReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct EquidistRow {
    pub m: u32,
    pub dim: BigInt,
    pub s_values: Vec<BigRational>,
    pub max_pairwise_dev: BigRational,
    pub dev_from_uniform: BigRational,
    /// `|χ(Char V_{μ_m})|` per nontrivial character.
    pub chi_abs: Vec<f64>,
    /// `|χ(Char V_{μ_m})| / dim` per nontrivial character.
    pub chi_ratios: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquidistReport {
    pub h_order: usize,
    /// Nontrivial characters of `H`, in the column order of `chi_ratios`.
    pub characters: Vec<DualCharacter>,
    pub rows: Vec<EquidistRow>,
}

impl EquidistReport {
    pub fn row(&self, m: u32) -> Option<&EquidistRow> {
        self.rows.iter().find(|r| r.m == m)
    }
}

/// The nontrivial characters of `H`.
pub fn nontrivial_characters(hg: &HgData) -> Vec<DualCharacter> {
    character_group(hg.group())
        .expect("H is finite")
        .into_iter()
        .filter(|c| !c.is_trivial())
        .collect()
}

/// Computes one row; rows for distinct `m` are independent.
pub fn equidist_row(hg: &HgData, characters: &[DualCharacter], m: u32) -> EquidistRow {
    let s = s_values(hg, m);
    assert!(
        s.total() == BigRational::from_integer(1.into()),
        "S-values must sum to 1"
    );
    let chi_abs: Vec<f64> = characters
        .iter()
        .map(|c| char_sum(hg, &s, c).norm())
        .collect();
    let chi_ratios = characters
        .iter()
        .map(|c| char_ratio(hg, &s, c).norm())
        .collect();
    EquidistRow {
        m,
        max_pairwise_dev: s.max_pairwise_dev(),
        dev_from_uniform: s.dev_from_uniform(),
        dim: s.dim,
        s_values: s.values,
        chi_abs,
        chi_ratios,
    }
}

pub fn run_equidist(act: &GaloisAction, m_range: RangeInclusive<u32>) -> Result<EquidistReport> {
    if m_range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let hg = compute_h(act)?;
    let characters = nontrivial_characters(&hg);
    let rows = m_range.map(|m| equidist_row(&hg, &characters, m)).collect();
    Ok(EquidistReport {
        h_order: hg.order(),
        characters,
        rows,
    })
}

/// `A[x][y] = S_{y−x, m}` on `H × H`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityOperator {
    m: u32,
    symbol: Vec<BigRational>,
    matrix: Vec<Vec<BigRational>>,
    /// `add[a][b]` = H-index of `a + b`.
    add: Vec<Vec<usize>>,
    /// `Σ_h χ(h) S_h` for every character, trivial first.
    eigenvalues: Vec<Complex64>,
}

pub fn build_stability_operator(hg: &HgData, m: u32) -> StabilityOperator {
    StabilityOperator::from_s_values(hg, &s_values(hg, m))
}

impl StabilityOperator {
    pub fn from_s_values(hg: &HgData, s: &SValues) -> Self {
        let n = hg.order();
        let add: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| hg.add(a, b)).collect())
            .collect();
        let matrix = (0..n)
            .map(|x| (0..n).map(|y| s.values[hg.sub(y, x)].clone()).collect())
            .collect();
        let eigenvalues = character_group(hg.group())
            .expect("H is finite")
            .iter()
            .map(|chi| char_ratio(hg, s, chi))
            .collect();
        StabilityOperator {
            m: s.m,
            symbol: s.values.clone(),
            matrix,
            add,
            eigenvalues,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        self.symbol.len()
    }

    pub fn symbol(&self) -> &[BigRational] {
        &self.symbol
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }

    pub fn entry(&self, x: usize, y: usize) -> &BigRational {
        &self.matrix[x][y]
    }

    pub fn is_row_stochastic(&self) -> bool {
        let one = BigRational::from_integer(1.into());
        self.matrix.iter().all(|row| {
            row.iter().all(|a| !a.is_negative()) && row.iter().sum::<BigRational>() == one
        })
    }

    /// `A[x+z][y+z] = A[x][y]`
    pub fn is_circulant(&self) -> bool {
        let n = self.size();
        (0..n).all(|z| {
            (0..n).all(|x| {
                (0..n).all(|y| self.matrix[self.add[x][z]][self.add[y][z]] == self.matrix[x][y])
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..x).all(|y| self.matrix[x][y] == self.matrix[y][x]))
    }

    pub fn apply(&self, theta: &[BigRational]) -> Result<Vec<BigRational>> {
        if theta.len() != self.size() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "theta has length {}, operator has size {}",
                theta.len(),
                self.size()
            )));
        }
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(theta).map(|(a, t)| a * t).sum())
            .collect())
    }

    /// `{char_sum(χ)/dim}` over all characters, trivial first.
    pub fn expected_spectrum(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Eigenvalues of the floating-point matrix from a Schur decomposition.
    pub fn numeric_spectrum(&self) -> Vec<Complex64> {
        let n = self.size();
        let m = DMatrix::from_fn(n, n, |i, j| self.matrix[i][j].to_f64().unwrap());
        m.complex_eigenvalues()
            .iter()
            .map(|z| Complex64::new(z.re, z.im))
            .collect()
    }

    /// Whether the numeric and expected spectra agree as multisets within `tol`.
    pub fn spectrum_matches(&self, tol: f64) -> bool {
        multiset_close(&self.numeric_spectrum(), &self.eigenvalues, tol)
    }
}

fn multiset_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for z in a {
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, w)| (j, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceStep {
    pub m: u32,
    pub image: Vec<BigRational>,
    /// `‖A_m θ − mean(θ)·1‖_∞`
    pub deviation: BigRational,
    /// `max|θ| · Σ_{χ≠1} |char_sum(χ)|/dim`
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    pub mean: BigRational,
    pub steps: Vec<ConvergenceStep>,
}

impl ConvergenceRecord {
    /// Every deviation is within its spectral bound (up to `1e-12` rounding).
    pub fn within_bounds(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.deviation.to_f64().unwrap() <= s.bound + 1e-12)
    }

    /// The last deviation is below the first one, or all deviations vanish.
    pub fn converging(&self) -> bool {
        match (self.steps.first(), self.steps.last()) {
            (Some(first), Some(_)) if first.deviation.is_zero() => {
                self.steps.iter().all(|s| s.deviation.is_zero())
            }
            (Some(first), Some(last)) => last.deviation < first.deviation,
            _ => false,
        }
    }
}

pub fn stable_average_simulation(
    ops: &[StabilityOperator],
    theta: &[BigRational],
) -> Result<ConvergenceRecord> {
    if theta.is_empty() {
        return Err(Error::DimensionMismatch("theta is empty".into()));
    }
    let mean: BigRational =
        theta.iter().sum::<BigRational>() / BigRational::from_integer(theta.len().into());
    let max_abs = theta
        .iter()
        .map(|t| t.abs())
        .max()
        .unwrap()
        .to_f64()
        .unwrap();
    let mut steps = Vec::with_capacity(ops.len());
    for op in ops {
        let image = op.apply(theta)?;
        let deviation = image
            .iter()
            .map(|v| (v - &mean).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        let bound = max_abs * op.eigenvalues.iter().skip(1).map(|z| z.norm()).sum::<f64>();
        steps.push(ConvergenceStep {
            m: op.m,
            image,
            deviation,
            bound,
        });
    }
    Ok(ConvergenceRecord { mean, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityResult {
    /// `⟨μ, 2ρ^∨⟩`
    pub d: i64,
    /// `(−1)^d`
    pub sign: i8,
}

pub fn transfer_parity(rd: &RootDatum, mu: &Weight) -> Result<ParityResult> {
    rd.check_rank(mu)?;
    let d = mu.pair(&rd.two_rho_check());
    Ok(ParityResult {
        d,
        sign: if d.rem_euclid(2) == 0 { 1 } else { -1 },
    })
}
