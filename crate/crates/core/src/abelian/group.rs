use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::snf::{
    column_span_basis, integer_kernel, smith_normal_form, solve_with, SnfDecomposition,
};
use super::IntMatrix;
use crate::{Error, Result};

/// Finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_t ⊕ Z^r` in invariant-factor form.
///
/// Elements are coordinate vectors of length `t + r`: torsion coordinates
/// first (reduced into `[0, d_i)`), then free coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinGenAbGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FinGenAbGroup {
    /// Takes a divisibility chain `d_1 | d_2 | …` with every `d_i ≥ 2`.
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        debug_assert!(torsion.iter().all(|d| *d >= BigInt::from(2)));
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        FinGenAbGroup { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        FinGenAbGroup::new(Vec::new(), 0)
    }

    pub fn free(rank: usize) -> Self {
        FinGenAbGroup::new(Vec::new(), rank)
    }

    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => Self::free(1),
            1 => Self::trivial(),
            d => FinGenAbGroup::new(alloc::vec![BigInt::from(d)], 0),
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of coordinates of an element.
    pub fn num_gens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.num_gens() == 0
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        (0..self.num_gens()).map(|_| BigInt::zero()).collect()
    }

    pub fn normalize(&self, mut x: Vec<BigInt>) -> Vec<BigInt> {
        for (c, d) in x.iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(d);
        }
        x
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.normalize(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn is_zero_element(&self, a: &[BigInt]) -> bool {
        self.normalize(a.to_vec()).iter().all(Zero::is_zero)
    }

    /// Torsion factors as machine integers, for enumeration of finite groups.
    fn small_factors(&self) -> Result<Vec<usize>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        self.torsion
            .iter()
            .map(|d| d.to_usize().ok_or(Error::GroupTooLarge { cap: usize::MAX }))
            .collect()
    }

    /// Elements of a finite group in lexicographic order of their coordinate tuples.
    pub fn enumerate(&self) -> Result<Vec<Vec<BigInt>>> {
        let factors = self.small_factors()?;
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::GroupTooLarge { cap: usize::MAX })?;
        Ok((0..order).map(|i| self.element_at(&factors, i)).collect())
    }

    /// Position of `a` in [`Self::enumerate`]'s order.
    pub fn index_of(&self, a: &[BigInt]) -> Result<usize> {
        let factors = self.small_factors()?;
        let a = self.normalize(a.to_vec());
        let mut idx = 0usize;
        for (c, d) in a.iter().zip(&factors) {
            idx = idx * d + c.to_usize().expect("normalized coordinate");
        }
        Ok(idx)
    }

    fn element_at(&self, factors: &[usize], mut idx: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = (0..factors.len()).map(|_| BigInt::zero()).collect();
        for (slot, &d) in out.iter_mut().zip(factors).rev() {
            *slot = BigInt::from(idx % d);
            idx /= d;
        }
        out
    }
}

impl fmt::Debug for FinGenAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FinGenAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        if self.free_rank > 0 {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}

/// `Z^rows / column-span(A)` together with the maps between `Z^rows` and
/// the group's normalized coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    group: FinGenAbGroup,
    /// `num_gens × rows`: row `k` of `U` for every kept coordinate.
    projection: IntMatrix,
    /// `rows × num_gens`: the matching columns of `U^{-1}`.
    lift: IntMatrix,
    relations: IntMatrix,
}

impl Cokernel {
    pub fn group(&self) -> &FinGenAbGroup {
        &self.group
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn projection_matrix(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    /// Class of `x ∈ Z^rows`.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.projection.mul_vec(x).expect("ambient rank");
        self.group.normalize(y)
    }

    pub fn project_i64(&self, x: &[i64]) -> Vec<BigInt> {
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.project(&x)
    }

    /// A representative in `Z^rows` of a group element.
    pub fn lift(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.lift.mul_vec(a).expect("group coordinates")
    }
}

/// Cokernel of `A`, i.e. `Z^rows / A·Z^cols`.
pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..r {
        let d = &snf.d[(i, i)];
        if !d.is_one() {
            torsion_rows.push(i);
            torsion.push(d.clone());
        }
    }
    let free_rows: Vec<usize> = (r..a.rows()).collect();
    let kept: Vec<usize> = torsion_rows.iter().chain(&free_rows).copied().collect();
    Cokernel {
        group: FinGenAbGroup::new(torsion, free_rows.len()),
        projection: snf.u.select_rows(&kept),
        lift: snf.u_inv.select_cols(&kept),
        relations: a.clone(),
    }
}

/// Homomorphism of finitely generated abelian groups, given by its matrix on
/// the normalized generators (`target.num_gens × source.num_gens`).
#[derive(Clone, Debug)]
pub struct AbHom {
    source: FinGenAbGroup,
    target: FinGenAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Fails with [`Error::InvalidHom`] unless every source relation maps to zero.
    pub fn new(source: FinGenAbGroup, target: FinGenAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_gens() || matrix.cols() != source.num_gens() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "hom matrix {}x{} for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        for (j, d) in source.torsion().iter().enumerate() {
            let image: Vec<BigInt> = matrix.column(j).iter().map(|v| v * d).collect();
            if !target.is_zero_element(&image) {
                return Err(Error::InvalidHom);
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &FinGenAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinGenAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target
            .normalize(self.matrix.mul_vec(x).expect("source coordinates"))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.num_gens()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    pub fn compose(&self, then: &AbHom) -> Result<AbHom> {
        AbHom::new(
            self.source.clone(),
            then.target.clone(),
            then.matrix.mul(&self.matrix)?,
        )
    }
}

/// Kernel of a homomorphism, with its inclusion into the source.
#[derive(Clone, Debug)]
pub struct Kernel {
    inclusion: AbHom,
    /// Basis (columns) of the preimage lattice `K ⊆ Z^{source gens}`.
    basis: IntMatrix,
    basis_snf: SnfDecomposition,
    quotient: Cokernel,
}

impl Kernel {
    pub fn group(&self) -> &FinGenAbGroup {
        self.quotient.group()
    }

    pub fn inclusion(&self) -> &AbHom {
        &self.inclusion
    }

    /// Coordinates in the kernel group of a source element, or `None` if the
    /// element does not lie in the kernel.
    pub fn coordinates(&self, a: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = self.inclusion.target().normalize(a.to_vec());
        let y = solve_with(&self.basis_snf, &a)?;
        debug_assert_eq!(self.basis.mul_vec(&y).unwrap(), a);
        Some(self.quotient.project(&y))
    }
}

/// `ker f` in invariant-factor form.
pub fn hom_kernel(f: &AbHom) -> Kernel {
    let s = f.source().num_gens();
    let source_rel = diagonal_relations(f.source());
    let target_rel = diagonal_relations(f.target());

    // x ∈ Z^s lies over the kernel iff F x ∈ span(target relations).
    let stacked = f.matrix().hcat(&target_rel).expect("same target rank");
    let null = integer_kernel(&stacked);
    let gens = null.select_rows(&(0..s).collect::<Vec<_>>());
    // Source relations lie over zero; include them so the span is all of K.
    let gens = gens.hcat(&source_rel).expect("same source rank");
    let basis = column_span_basis(&gens);
    let basis_snf = smith_normal_form(&basis);

    let mut rel_in_basis = IntMatrix::zeros(basis.cols(), source_rel.cols());
    for j in 0..source_rel.cols() {
        let y = solve_with(&basis_snf, &source_rel.column(j)).expect("relations lie in K");
        for (i, v) in y.into_iter().enumerate() {
            rel_in_basis[(i, j)] = v;
        }
    }
    let quotient = cokernel(&rel_in_basis);

    // Generator k of the kernel group ↦ basis · lift(e_k).
    let h = quotient.group().clone();
    let mut incl = IntMatrix::zeros(s, h.num_gens());
    for k in 0..h.num_gens() {
        let mut e = h.zero();
        e[k] = BigInt::one();
        let x = basis.mul_vec(&quotient.lift(&e)).unwrap();
        let x = f.source().normalize(x);
        for (i, v) in x.into_iter().enumerate() {
            incl[(i, k)] = v;
        }
    }
    let inclusion =
        AbHom::new(h, f.source().clone(), incl).expect("kernel inclusion respects relations");

    Kernel {
        inclusion,
        basis,
        basis_snf,
        quotient,
    }
}

/// Columns `d_i e_i` for the torsion generators.
fn diagonal_relations(g: &FinGenAbGroup) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.num_gens(), g.torsion().len());
    for (i, d) in g.torsion().iter().enumerate() {
        m[(i, i)] = d.clone();
    }
    m
}
