//! Finite Galois actions on `X`, coinvariants, `π_1` and the group
//! `H = ker(X_Γ → π_1(G)_Γ)`.
//!
//! Convention: `X` is simultaneously `X^*(T̂)` and `X_*(T)`, so the coroot
//! lattice of `G` is the span `Λ` of the simple roots of the datum, and
//! `π_1(G) = X / Λ`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::abelian::{cokernel, hom_kernel, AbHom, Cokernel, FinGenAbGroup, IntMatrix, Kernel};
use crate::rootdatum::{mat_mul, RootDatum, Weight};
use crate::{Error, Result};

/// Largest Galois image [`GaloisAction::new`] will close up.
pub const DEFAULT_GALOIS_CAP: usize = 10_000;

/// A finite subgroup of `GL(X)` preserving `Λ`, given by generators.
///
/// The closure is computed once at construction; afterwards the value is
/// immutable and can be shared freely.
#[derive(Clone, Debug)]
pub struct GaloisAction {
    datum: RootDatum,
    /// Row-major `n × n` matrices acting on column vectors.
    generators: Vec<Vec<i64>>,
    /// The same generators restricted to `Λ`, in simple-root coordinates (`r × r`).
    root_generators: Vec<Vec<i64>>,
    elements: Vec<Vec<i64>>,
}

impl GaloisAction {
    pub fn new(datum: RootDatum, generators: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        Self::with_cap(datum, generators, DEFAULT_GALOIS_CAP)
    }

    pub fn trivial(datum: RootDatum) -> Self {
        Self::new(datum, Vec::new()).expect("trivial action is valid")
    }

    pub fn with_cap(datum: RootDatum, generators: Vec<Vec<Vec<i64>>>, cap: usize) -> Result<Self> {
        let n = datum.lattice_rank();
        let r = datum.semisimple_rank();
        let mut flat = Vec::with_capacity(generators.len());
        let mut root_generators = Vec::with_capacity(generators.len());
        for g in &generators {
            let m = IntMatrix::from_rows(n, g)?;
            if m.rows() != n {
                return Err(Error::DimensionMismatch(format!(
                    "Galois generator has {} rows, lattice rank is {n}",
                    m.rows()
                )));
            }
            if !m.is_unimodular() {
                return Err(Error::NotUnimodular);
            }
            let g: Vec<i64> = g.iter().flatten().copied().collect();
            let mut restricted = vec![0; r * r];
            for (j, alpha) in datum.simple_roots().iter().enumerate() {
                let image = apply(&g, n, alpha.coords());
                let y = datum
                    .root_coordinates(&image)
                    .ok_or(Error::ActionDoesNotPreserveCorootLattice)?;
                for (i, v) in y.into_iter().enumerate() {
                    restricted[i * r + j] = v;
                }
            }
            flat.push(g);
            root_generators.push(restricted);
        }
        let elements = closure(&flat, n, cap)?;
        Ok(GaloisAction {
            datum,
            generators: flat,
            root_generators,
            elements,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn generators(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.datum.lattice_rank();
        self.generators
            .iter()
            .map(|g| g.chunks(n.max(1)).map(<[i64]>::to_vec).collect())
            .collect()
    }

    /// Every element of the generated group, identity first.
    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(&self, element: usize, x: &Weight) -> Weight {
        Weight(apply(
            &self.elements[element],
            self.datum.lattice_rank(),
            x.coords(),
        ))
    }

    /// `[g_1 − I | … | g_k − I]` on `X`.
    pub fn relation_matrix(&self) -> IntMatrix {
        relation_blocks(&self.generators, self.datum.lattice_rank())
    }

    /// `[g_1 − I | … | g_k − I]` on `Λ`, in simple-root coordinates.
    pub fn root_relation_matrix(&self) -> IntMatrix {
        relation_blocks(&self.root_generators, self.datum.semisimple_rank())
    }
}

fn apply(g: &[i64], n: usize, x: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| g[i * n + j] * x[j]).sum())
        .collect()
}

fn relation_blocks(gens: &[Vec<i64>], n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n * gens.len());
    for (k, g) in gens.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                m[(i, k * n + j)] = BigInt::from(g[i * n + j] - (i == j) as i64);
            }
        }
    }
    m
}

fn closure(gens: &[Vec<i64>], n: usize, cap: usize) -> Result<Vec<Vec<i64>>> {
    let mut identity = vec![0; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    let mut seen = BTreeSet::new();
    seen.insert(identity.clone());
    let mut out = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mat_mul(g, &x, n);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// `X_Γ`, the Γ-coinvariants of `X` (the Kottwitz set `B(T)` of the torus).
pub fn coinvariants(act: &GaloisAction) -> Cokernel {
    cokernel(&act.relation_matrix())
}

/// `Λ_Γ`, the Γ-coinvariants of the coroot lattice in its own coordinates.
pub fn root_lattice_coinvariants(act: &GaloisAction) -> Cokernel {
    cokernel(&act.root_relation_matrix())
}

/// Elliptic iff `Λ_Γ` is finite.
pub fn is_elliptic(act: &GaloisAction) -> bool {
    root_lattice_coinvariants(act).group().is_finite()
}

/// `π_1(G) = X / Λ`.
pub fn pi1(rd: &RootDatum) -> Cokernel {
    cokernel(&simple_root_matrix(rd))
}

/// `π_1(G)_Γ = X / (Λ + Σ (g − 1) X)`.
pub fn pi1_coinvariants(act: &GaloisAction) -> Cokernel {
    let rels = simple_root_matrix(act.datum())
        .hcat(&act.relation_matrix())
        .expect("same lattice rank");
    cokernel(&rels)
}

fn simple_root_matrix(rd: &RootDatum) -> IntMatrix {
    let cols: Vec<Vec<i64>> = rd
        .simple_roots()
        .iter()
        .map(|a| a.coords().to_vec())
        .collect();
    IntMatrix::from_columns(rd.lattice_rank(), &cols).expect("roots have lattice rank")
}

/// The finite group `H`, its enumeration, and the maps feeding it.
#[derive(Clone, Debug)]
pub struct HgData {
    datum: RootDatum,
    h: FinGenAbGroup,
    moduli: Vec<i64>,
    elements: Vec<Vec<BigInt>>,
    x_gamma: Cokernel,
    pi1_gamma: Cokernel,
    to_pi1_gamma: AbHom,
    kernel: Kernel,
    /// H-coordinates of the class of each simple root.
    root_images: Vec<Vec<i64>>,
}

/// `H = ker(X_Γ → π_1(G)_Γ)` for an elliptic action.
pub fn compute_h(act: &GaloisAction) -> Result<HgData> {
    if !is_elliptic(act) {
        return Err(Error::NotElliptic);
    }
    let rd = act.datum();
    let x_gamma = coinvariants(act);
    let pi1_gamma = pi1_coinvariants(act);

    let src = x_gamma.group().clone();
    let tgt = pi1_gamma.group().clone();
    let mut m = IntMatrix::zeros(tgt.num_gens(), src.num_gens());
    for k in 0..src.num_gens() {
        let mut e = src.zero();
        e[k] = BigInt::one();
        for (i, v) in pi1_gamma.project(&x_gamma.lift(&e)).into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    let to_pi1_gamma = AbHom::new(src, tgt, m)?;
    let kernel = hom_kernel(&to_pi1_gamma);
    let h = kernel.group().clone();
    // Finite because Λ_Γ is finite and surjects onto H.
    let elements = h.enumerate()?;
    let moduli = h
        .torsion()
        .iter()
        .map(|d| {
            d.to_i64().ok_or(Error::GroupTooLarge {
                cap: i64::MAX as usize,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut root_images = Vec::with_capacity(rd.semisimple_rank());
    for alpha in rd.simple_roots() {
        let coords = kernel
            .coordinates(&x_gamma.project_i64(alpha.coords()))
            .expect("the root lattice maps into H");
        root_images.push(coords.iter().map(|c| c.to_i64().unwrap()).collect());
    }

    let data = HgData {
        datum: rd.clone(),
        h,
        moduli,
        elements,
        x_gamma,
        pi1_gamma,
        to_pi1_gamma,
        kernel,
        root_images,
    };
    debug_assert_eq!(data.root_lattice_image().len(), data.order());
    Ok(data)
}

impl HgData {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn group(&self) -> &FinGenAbGroup {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in lexicographic order; positions are the H-indices used throughout.
    pub fn elements(&self) -> &[Vec<BigInt>] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &[BigInt] {
        &self.elements[idx]
    }

    pub fn x_gamma(&self) -> &Cokernel {
        &self.x_gamma
    }

    pub fn pi1_gamma(&self) -> &Cokernel {
        &self.pi1_gamma
    }

    /// `X_Γ → π_1(G)_Γ`
    pub fn to_pi1_gamma(&self) -> &AbHom {
        &self.to_pi1_gamma
    }

    /// `H ↪ X_Γ`
    pub fn inclusion(&self) -> &AbHom {
        self.kernel.inclusion()
    }

    /// H-index of the class of each simple root.
    pub fn root_images(&self) -> Vec<usize> {
        self.root_images
            .iter()
            .map(|c| self.index_of_small(c))
            .collect()
    }

    fn index_of_small(&self, coords: &[i64]) -> usize {
        coords.iter().zip(&self.moduli).fold(0usize, |acc, (c, d)| {
            acc * (*d as usize) + c.mod_floor(d) as usize
        })
    }

    /// Class in `H` of `x ∈ X`, through `X → X_Γ`; `None` when the class
    /// does not lie in `H`.
    pub fn project(&self, x: &[i64]) -> Option<usize> {
        let coords = self.kernel.coordinates(&self.x_gamma.project_i64(x))?;
        Some(self.h.index_of(&coords).expect("H is finite"))
    }

    /// Class in `H` of `Σ y_j α_j`, from the images of the simple roots.
    pub fn project_root_coords(&self, y: &[i64]) -> usize {
        let mut acc = vec![0i64; self.moduli.len()];
        for (yj, img) in y.iter().zip(&self.root_images) {
            for ((a, c), d) in acc.iter_mut().zip(img).zip(&self.moduli) {
                *a = (*a + yj.mod_floor(d) * c).mod_floor(d);
            }
        }
        self.index_of_small(&acc)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.h
            .index_of(&self.h.add(&self.elements[a], &self.elements[b]))
            .unwrap()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.h
            .index_of(&self.h.sub(&self.elements[a], &self.elements[b]))
            .unwrap()
    }

    pub fn neg(&self, a: usize) -> usize {
        self.h.index_of(&self.h.neg(&self.elements[a])).unwrap()
    }

    /// The subgroup of `H` generated by the classes of the simple roots.
    pub fn root_lattice_image(&self) -> BTreeSet<usize> {
        let gens = self.root_images();
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.add(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::{build_root_datum, weyl_group_elements, LatticeChoice};

    fn rd(t: &str, l: LatticeChoice) -> RootDatum {
        build_root_datum(&t.parse().unwrap(), &l).unwrap()
    }

    fn a1_inversion(l: LatticeChoice) -> GaloisAction {
        GaloisAction::new(rd("A1", l), vec![vec![vec![-1]]]).unwrap()
    }

    fn a2_rotation() -> GaloisAction {
        GaloisAction::new(
            rd("A2", LatticeChoice::Root),
            vec![vec![vec![0, -1], vec![1, -1]]],
        )
        .unwrap()
    }

    #[test]
    fn coinvariant_examples() {
        assert_eq!(
            coinvariants(&a1_inversion(LatticeChoice::Root)).group(),
            &FinGenAbGroup::cyclic(2)
        );
        let t2 = GaloisAction::trivial(rd("T2", LatticeChoice::Root));
        assert_eq!(coinvariants(&t2).group(), &FinGenAbGroup::free(2));
        let a2 = a2_rotation();
        assert_eq!(a2.order(), 3);
        assert_eq!(coinvariants(&a2).group(), &FinGenAbGroup::cyclic(3));
    }

    #[test]
    fn ellipticity() {
        assert!(is_elliptic(&a1_inversion(LatticeChoice::Root)));
        assert!(!is_elliptic(&GaloisAction::trivial(rd(
            "A1",
            LatticeChoice::Root
        ))));
        assert!(is_elliptic(&a2_rotation()));
        assert!(is_elliptic(&GaloisAction::trivial(rd(
            "T2",
            LatticeChoice::Root
        ))));
    }

    #[test]
    fn pi1_examples() {
        assert!(pi1(&rd("A1", LatticeChoice::Root)).group().is_trivial());
        assert_eq!(
            pi1(&rd("A1", LatticeChoice::Weight)).group(),
            &FinGenAbGroup::cyclic(2)
        );
        assert_eq!(
            pi1(&rd("T2", LatticeChoice::Root)).group(),
            &FinGenAbGroup::free(2)
        );
        assert_eq!(
            pi1(&rd("A2", LatticeChoice::Weight)).group(),
            &FinGenAbGroup::cyclic(3)
        );
        assert_eq!(
            pi1(&rd("B2", LatticeChoice::Weight)).group(),
            &FinGenAbGroup::cyclic(2)
        );
        assert_eq!(
            pi1(&rd("G2", LatticeChoice::Weight)).group(),
            &FinGenAbGroup::trivial()
        );
        assert_eq!(
            pi1(&rd("D4", LatticeChoice::Weight)).group(),
            &FinGenAbGroup::new(vec![BigInt::from(2), BigInt::from(2)], 0)
        );
    }

    #[test]
    fn h_examples() {
        let h = compute_h(&a1_inversion(LatticeChoice::Root)).unwrap();
        assert_eq!(h.group(), &FinGenAbGroup::cyclic(2));
        let h = compute_h(&a1_inversion(LatticeChoice::Weight)).unwrap();
        assert!(h.group().is_trivial());
        let h = compute_h(&a2_rotation()).unwrap();
        assert_eq!(h.group(), &FinGenAbGroup::cyclic(3));
        let h = compute_h(&GaloisAction::trivial(rd("T2", LatticeChoice::Root))).unwrap();
        assert!(h.group().is_trivial());
    }

    #[test]
    fn not_elliptic_is_refused() {
        let act = GaloisAction::trivial(rd("A1", LatticeChoice::Root));
        assert_eq!(compute_h(&act).unwrap_err(), Error::NotElliptic);
    }

    #[test]
    fn generator_validation() {
        let a1 = rd("A1", LatticeChoice::Root);
        assert_eq!(
            GaloisAction::new(a1.clone(), vec![vec![vec![2]]]).unwrap_err(),
            Error::NotUnimodular
        );
        assert!(matches!(
            GaloisAction::new(a1, vec![vec![vec![1, 0]]]).unwrap_err(),
            Error::DimensionMismatch(_)
        ));
        // Swapping the factors of A1xT1 moves the root out of Λ.
        let mixed = rd("A1xT1", LatticeChoice::Root);
        assert_eq!(
            GaloisAction::new(mixed, vec![vec![vec![0, 1], vec![1, 0]]]).unwrap_err(),
            Error::ActionDoesNotPreserveCorootLattice
        );
        // Infinite order unimodular matrix.
        let t2 = rd("T2", LatticeChoice::Root);
        assert_eq!(
            GaloisAction::new(t2, vec![vec![vec![1, 1], vec![0, 1]]]).unwrap_err(),
            Error::GroupTooLarge {
                cap: DEFAULT_GALOIS_CAP
            }
        );
    }

    #[test]
    fn root_lattice_maps_onto_h_and_dies_in_pi1() {
        for act in [
            a1_inversion(LatticeChoice::Root),
            a1_inversion(LatticeChoice::Weight),
            a2_rotation(),
        ] {
            let h = compute_h(&act).unwrap();
            assert_eq!(h.root_lattice_image().len(), h.order());
            for alpha in act.datum().simple_roots() {
                let cls = h.x_gamma().project_i64(alpha.coords());
                assert!(h
                    .pi1_gamma()
                    .group()
                    .is_zero_element(&h.to_pi1_gamma().apply(&cls)));
            }
            assert!(h.inclusion().compose(h.to_pi1_gamma()).unwrap().is_zero());
        }
    }

    #[test]
    fn both_projection_routes_agree() {
        let act = a2_rotation();
        let h = compute_h(&act).unwrap();
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                assert_eq!(h.project(&[a, b]), Some(h.project_root_coords(&[a, b])));
            }
        }
        let act = a1_inversion(LatticeChoice::Weight);
        let h = compute_h(&act).unwrap();
        // ϖ is not in Λ + (γ−1)X = 2Z
        assert_eq!(h.project(&[1]), None);
        assert_eq!(h.project(&[2]), Some(0));
    }

    #[test]
    fn pi1_projection_is_weyl_invariant() {
        for t in ["A1", "A2", "B2", "G2", "A3"] {
            let r = rd(t, LatticeChoice::Weight);
            let p = pi1(&r);
            for w in weyl_group_elements(&r).unwrap() {
                for i in 0..r.lattice_rank() {
                    let mut e = vec![0; r.lattice_rank()];
                    e[i] = 1;
                    assert_eq!(p.project_i64(w.apply_slice(&e).coords()), p.project_i64(&e));
                }
            }
        }
    }
}
