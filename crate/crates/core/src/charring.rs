//! The character ring `Z[X]`: sparse Laurent polynomials with big-integer
//! coefficients, the product formula for `Char V_{4mρ}`, Freudenthal's
//! multiplicity recursion, and binning of multiplicities by `H`-class.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::galois::HgData;
use crate::rootdatum::{RootDatum, Weight, WeylElement};
use crate::{Error, Result};

/// `Σ c_λ e^λ` over `X = Z^rank`, with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharElement {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl CharElement {
    pub fn zero(rank: usize) -> Self {
        CharElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `e^0`
    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), BigInt::one())
    }

    pub fn monomial(exp: Weight, coeff: BigInt) -> Self {
        let mut out = Self::zero(exp.len());
        out.add_term(exp, coeff);
        out
    }

    /// Sums repeated exponents; fails if an exponent has the wrong length.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, BigInt)>,
    {
        let mut out = Self::zero(rank);
        for (exp, c) in terms {
            if exp.len() != rank {
                return Err(Error::RankMismatch {
                    left: exp.len(),
                    right: rank,
                });
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, exp: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Weight) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Sum of coefficients, i.e. the dimension of a genuine character.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &CharElement) -> Result<CharElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Plain convolution product.
    pub fn mul(&self, other: &CharElement) -> Result<CharElement> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `e^λ ↦ e^{f(λ)}`
    pub fn map_exponents<F: Fn(&Weight) -> Weight>(&self, f: F) -> CharElement {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn apply_weyl(&self, w: &WeylElement) -> CharElement {
        self.map_exponents(|e| w.apply(e))
    }

    fn check_rank(&self, other: &CharElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Multiplies by `Σ_{|j| ≤ 2m} e^{jα}`.
    ///
    /// Each line `x + Zα` of the support is convolved with a box of width
    /// `4m+1` by a sliding window, so the cost is linear in the output size.
    pub fn mul_geometric(&self, alpha: &Weight, m: u32) -> Result<CharElement> {
        if alpha.len() != self.rank {
            return Err(Error::RankMismatch {
                left: alpha.len(),
                right: self.rank,
            });
        }
        let k = alpha
            .coords()
            .iter()
            .position(|&a| a != 0)
            .ok_or(Error::ZeroRoot)?;
        let ak = alpha[k];
        let half = 2 * m as i64;

        let mut lines: BTreeMap<Weight, Vec<(i64, &BigInt)>> = BTreeMap::new();
        for (x, c) in &self.terms {
            let t = x[k].div_euclid(ak);
            lines
                .entry(x.sub(&alpha.scale(t)))
                .or_default()
                .push((t, c));
        }

        let mut out = Vec::new();
        for (base, mut entries) in lines {
            entries.sort_unstable_by_key(|&(t, _)| t);
            let (mut lo, mut hi) = (0usize, 0usize);
            let mut sum = BigInt::zero();
            let mut t = entries[0].0 - half;
            let last = entries[entries.len() - 1].0 + half;
            while t <= last {
                while hi < entries.len() && entries[hi].0 <= t + half {
                    sum += entries[hi].1;
                    hi += 1;
                }
                while lo < hi && entries[lo].0 < t - half {
                    sum -= entries[lo].1;
                    lo += 1;
                }
                if lo == hi {
                    // Window empty: jump to the next entry's reach.
                    match entries.get(hi) {
                        Some(&(s, _)) => {
                            t = s - half;
                            continue;
                        }
                        None => break,
                    }
                }
                if !sum.is_zero() {
                    out.push((base.add(&alpha.scale(t)), sum.clone()));
                }
                t += 1;
            }
        }
        Ok(CharElement {
            rank: self.rank,
            terms: out.into_iter().collect(),
        })
    }
}

/// `a · b`
pub fn char_mul(a: &CharElement, b: &CharElement) -> Result<CharElement> {
    a.mul(b)
}

/// `e^{2mα} + e^{(2m−1)α} + … + e^{−2mα}`
pub fn geometric_factor(alpha: &Weight, m: u32) -> Result<CharElement> {
    if alpha.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let half = 2 * m as i64;
    CharElement::from_terms(
        alpha.len(),
        (-half..=half).map(|j| (alpha.scale(j), BigInt::one())),
    )
}

/// `Char V_{4mρ} = ∏_{α>0} (e^{2mα} + … + e^{−2mα})`.
pub fn char_mu_m(rd: &RootDatum, m: u32) -> CharElement {
    let mut acc = CharElement::one(rd.lattice_rank());
    for alpha in rd.positive_roots() {
        acc = acc.mul_geometric(alpha, m).expect("roots are nonzero");
    }
    acc
}

/// `e^λ ↦ e^{−λ}`
pub fn dualize(a: &CharElement) -> CharElement {
    a.map_exponents(Weight::neg)
}

/// Full character of the irreducible representation of highest weight `mu`,
/// by Freudenthal's recursion on dominant weights followed by W-orbit expansion.
///
/// Weights are tracked as `λ = μ − Σ η_j α_j`. The inner product is the
/// integer Gram matrix of the datum; with `(ν, α_j) = ⟨ν, α_j^∨⟩ G_jj / 2`,
/// the recursion becomes
///
/// `m(λ) · (Σ_j η_j (⟨μ,α_j^∨⟩+1) G_jj − ηᵀGη) = Σ_{β>0} Σ_{k≥1} m(λ+kβ) Σ_j b_j ⟨λ+kβ,α_j^∨⟩ G_jj`
///
/// which stays in integers.
pub fn freudenthal(rd: &RootDatum, mu: &Weight) -> Result<CharElement> {
    rd.check_rank(mu)?;
    if !rd.is_dominant(mu) {
        return Err(Error::NonDominantWeight);
    }
    let r = rd.semisimple_rank();
    let cartan = rd.cartan_matrix();
    let gram = rd.gram();
    let mu_labels = rd.dynkin_labels(mu);
    let roots = rd.positive_root_coords();

    let labels = |eta: &[i64]| -> Vec<i64> {
        (0..r)
            .map(|i| mu_labels[i] - (0..r).map(|j| cartan[i][j] * eta[j]).sum::<i64>())
            .collect()
    };
    // η of the dominant conjugate, or None once the orbit leaves `μ − Q+`.
    let dominant = |eta: &[i64]| -> Option<Vec<i64>> {
        let mut eta = eta.to_vec();
        loop {
            if eta.iter().any(|&e| e < 0) {
                return None;
            }
            let p = labels(&eta);
            match (0..r).find(|&i| p[i] < 0) {
                Some(i) => eta[i] += p[i],
                None => return Some(eta),
            }
        }
    };

    // Dominant weights below μ, reached by adding positive roots to η.
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::from([vec![0i64; r]]);
    found.insert(vec![0; r]);
    while let Some(eta) = queue.pop_front() {
        for b in roots {
            let next: Vec<i64> = eta.iter().zip(b).map(|(e, x)| e + x).collect();
            if labels(&next).iter().all(|&p| p >= 0) && found.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut order: Vec<Vec<i64>> = found.into_iter().collect();
    order.sort_by_key(|eta| (eta.iter().sum::<i64>(), eta.clone()));

    let mut mult: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for eta in order {
        if eta.iter().all(|&e| e == 0) {
            mult.insert(eta, BigInt::one());
            continue;
        }
        let den: i64 = (0..r)
            .map(|j| eta[j] * (mu_labels[j] + 1) * gram[j][j])
            .sum::<i64>()
            - (0..r)
                .map(|i| (0..r).map(|j| eta[i] * gram[i][j] * eta[j]).sum::<i64>())
                .sum::<i64>();
        debug_assert!(den > 0);
        let mut num = BigInt::zero();
        for b in roots {
            let mut nu = eta.clone();
            loop {
                for (x, y) in nu.iter_mut().zip(b) {
                    *x -= y;
                }
                if nu.iter().any(|&e| e < 0) {
                    break;
                }
                let Some(dom) = dominant(&nu) else { continue };
                let Some(m) = mult.get(&dom) else { continue };
                let p = labels(&nu);
                let w: i64 = (0..r).map(|j| b[j] * p[j] * gram[j][j]).sum();
                num += m * BigInt::from(w);
            }
        }
        let (q, rem) = num.div_rem(&BigInt::from(den));
        debug_assert!(rem.is_zero() && !q.is_negative());
        if !q.is_zero() {
            mult.insert(eta, q);
        }
    }

    let mut out = CharElement::zero(rd.lattice_rank());
    for (eta, m) in mult {
        let lambda = eta
            .iter()
            .zip(rd.simple_roots())
            .fold(mu.clone(), |acc, (&e, alpha)| acc.sub(&alpha.scale(e)));
        for w in weyl_orbit(rd, &lambda) {
            out.add_term(w, m.clone());
        }
    }
    Ok(out)
}

fn weyl_orbit(rd: &RootDatum, x: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for i in 0..rd.semisimple_rank() {
            let z = rd.simple_reflection(i, &y);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}

/// Multiplicity mass of a character per `H`-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSums {
    /// Indexed by position in [`HgData::elements`].
    pub sums: Vec<BigInt>,
}

impl CosetSums {
    pub fn total(&self) -> BigInt {
        self.sums.iter().sum()
    }

    pub fn get(&self, h: usize) -> &BigInt {
        &self.sums[h]
    }
}

/// Bins the coefficients of `a` by the `H`-class of their exponents.
pub fn coset_sums(a: &CharElement, hg: &HgData) -> Result<CosetSums> {
    let rd = hg.datum();
    if a.rank() != rd.lattice_rank() {
        return Err(Error::RankMismatch {
            left: a.rank(),
            right: rd.lattice_rank(),
        });
    }
    let mut sums = vec![BigInt::zero(); hg.order()];
    for (exp, c) in a.terms() {
        let y = rd
            .root_coordinates(exp.coords())
            .ok_or(Error::SupportOutsideRootLattice)?;
        sums[hg.project_root_coords(&y)] += c;
    }
    Ok(CosetSums { sums })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{compute_h, GaloisAction};
    use crate::rootdatum::{build_root_datum, mu_m, weyl_dim, LatticeChoice};

    fn rd(t: &str) -> RootDatum {
        build_root_datum(&t.parse().unwrap(), &LatticeChoice::Root).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn c(terms: &[(&[i64], i64)]) -> CharElement {
        let rank = terms[0].0.len();
        CharElement::from_terms(rank, terms.iter().map(|(e, c)| (w(e), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn multiplication_basics() {
        let a = c(&[(&[1], 1), (&[-1], 1)]);
        assert_eq!(a.mul(&CharElement::one(1)).unwrap(), a);
        assert_eq!(a.mul(&a).unwrap(), c(&[(&[2], 1), (&[0], 2), (&[-2], 1)]));
        let g = geometric_factor(&w(&[1]), 1).unwrap();
        assert_eq!(char_mul(&g, &g).unwrap().dimension(), BigInt::from(25));
        assert!(matches!(
            a.mul(&CharElement::one(2)),
            Err(Error::RankMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = c(&[(&[1], 1), (&[1], -1), (&[0], 3)]);
        assert_eq!(a.len(), 1);
        assert_eq!(a.coeff(&w(&[1])), BigInt::zero());
    }

    #[test]
    fn geometric_factor_examples() {
        assert_eq!(geometric_factor(&w(&[1]), 0).unwrap(), CharElement::one(1));
        let g = geometric_factor(&w(&[1]), 1).unwrap();
        let exps: Vec<_> = g.support().cloned().collect();
        assert_eq!(exps, (-2..=2).map(|j| w(&[j])).collect::<Vec<_>>());
        assert!(g.terms().all(|(_, c)| c.is_one()));
        let g = geometric_factor(&w(&[1, 1]), 1).unwrap();
        let exps: BTreeSet<_> = g.support().cloned().collect();
        assert_eq!(exps, (-2..=2).map(|j| w(&[j, j])).collect());
        assert_eq!(
            geometric_factor(&w(&[0, 0]), 1).unwrap_err(),
            Error::ZeroRoot
        );
    }

    #[test]
    fn sliding_window_matches_convolution() {
        let a = c(&[
            (&[0, 0], 3),
            (&[5, -1], -2),
            (&[2, 1], 1),
            (&[-7, 4], 5),
            (&[1, 0], 1),
        ]);
        for alpha in [w(&[1, 0]), w(&[2, -1]), w(&[-1, 2]), w(&[3, 3])] {
            for m in 0..3 {
                let fast = a.mul_geometric(&alpha, m).unwrap();
                let slow = a.mul(&geometric_factor(&alpha, m).unwrap()).unwrap();
                assert_eq!(fast, slow, "alpha={alpha} m={m}");
            }
        }
    }

    #[test]
    fn char_mu_m_examples() {
        let a1 = rd("A1");
        let ch = char_mu_m(&a1, 1);
        assert_eq!(ch.dimension(), BigInt::from(5));
        assert_eq!(ch, geometric_factor(&w(&[1]), 1).unwrap());
        assert_eq!(char_mu_m(&rd("A2"), 0), CharElement::one(2));
        assert_eq!(char_mu_m(&rd("A2"), 1).dimension(), BigInt::from(125));
    }

    #[test]
    fn dualize_examples() {
        let a = c(&[(&[2], 1), (&[0], 1)]);
        assert_eq!(dualize(&a), c(&[(&[-2], 1), (&[0], 1)]));
        assert_eq!(dualize(&dualize(&a)), a);
        let ch = char_mu_m(&rd("A1"), 1);
        assert_eq!(dualize(&ch), ch);
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = rd("A1");
        assert_eq!(
            freudenthal(&a1, &w(&[1])).unwrap(),
            c(&[(&[-1], 1), (&[0], 1), (&[1], 1)])
        );
        assert_eq!(freudenthal(&a1, &w(&[0])).unwrap(), CharElement::one(1));
        // Adjoint representation of A2: highest root α1+α2 = (1,1) in root coordinates.
        let a2 = rd("A2");
        let adj = freudenthal(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj.dimension(), BigInt::from(8));
        assert_eq!(adj.coeff(&w(&[0, 0])), BigInt::from(2));
        assert_eq!(
            freudenthal(&a1, &w(&[-2])).unwrap_err(),
            Error::NonDominantWeight
        );
    }

    #[test]
    fn freudenthal_on_weight_lattices() {
        let g2 = build_root_datum(&"G2".parse().unwrap(), &LatticeChoice::Weight).unwrap();
        // 7-dim rep: zero weight has multiplicity 1; 14-dim adjoint: zero weight multiplicity 2.
        let seven = freudenthal(&g2, &w(&[1, 0])).unwrap();
        assert_eq!(seven.dimension(), BigInt::from(7));
        assert_eq!(seven.coeff(&w(&[0, 0])), BigInt::one());
        let adj = freudenthal(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(adj.dimension(), BigInt::from(14));
        assert_eq!(adj.coeff(&w(&[0, 0])), BigInt::from(2));
        let b3 = build_root_datum(&"B3".parse().unwrap(), &LatticeChoice::Weight).unwrap();
        for mu in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 0, 1]] {
            let mu = w(&mu);
            assert_eq!(
                freudenthal(&b3, &mu).unwrap().dimension(),
                weyl_dim(&b3, &mu).unwrap()
            );
        }
    }

    #[test]
    fn product_formula_equals_freudenthal_small() {
        for t in ["A1", "A2", "B2", "G2"] {
            let r = rd(t);
            let ch = char_mu_m(&r, 1);
            assert_eq!(ch, freudenthal(&r, &mu_m(&r, 1)).unwrap(), "{t}");
        }
    }

    #[test]
    fn coset_sums_examples() {
        let a1 = rd("A1");
        let act = GaloisAction::new(a1.clone(), vec![vec![vec![-1]]]).unwrap();
        let h = compute_h(&act).unwrap();
        let s = coset_sums(&char_mu_m(&a1, 1), &h).unwrap();
        assert_eq!(s.sums, vec![BigInt::from(3), BigInt::from(2)]);
        let s = coset_sums(&char_mu_m(&a1, 0), &h).unwrap();
        assert_eq!(s.sums, vec![BigInt::from(1), BigInt::from(0)]);

        let a2 = rd("A2");
        let act = GaloisAction::new(a2.clone(), vec![vec![vec![0, -1], vec![1, -1]]]).unwrap();
        let h = compute_h(&act).unwrap();
        let s = coset_sums(&char_mu_m(&a2, 1), &h).unwrap();
        assert_eq!(s.total(), BigInt::from(125));
        // classes (a + b) mod 3, counted independently
        let mut expect = vec![0i64; 3];
        for (e, c) in char_mu_m(&a2, 1).terms() {
            let cls = h.project(e.coords()).unwrap();
            expect[cls] += i64::try_from(c).unwrap();
        }
        assert_eq!(
            s.sums,
            expect.into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn coset_sums_rejects_weights_off_the_root_lattice() {
        let a1w = build_root_datum(&"A1".parse().unwrap(), &LatticeChoice::Weight).unwrap();
        let act = GaloisAction::new(a1w.clone(), vec![vec![vec![-1]]]).unwrap();
        let h = compute_h(&act).unwrap();
        let std_rep = freudenthal(&a1w, &w(&[1])).unwrap();
        assert_eq!(
            coset_sums(&std_rep, &h).unwrap_err(),
            Error::SupportOutsideRootLattice
        );
    }
}
