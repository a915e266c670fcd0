//! Structural reports on a root datum and a Galois action.

use std::fmt::Write as _;

use serde::Serialize;
use weyl_equidist_core::{
    coinvariants, compute_h, is_elliptic, pi1, FinGenAbGroup, GaloisAction, RootDatum,
};

use crate::error::CliResult;

/// Invariant factors and free rank of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupShape {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
}

impl From<&FinGenAbGroup> for GroupShape {
    fn from(g: &FinGenAbGroup) -> Self {
        GroupShape {
            invariant_factors: g.torsion().iter().map(|d| d.to_string()).collect(),
            free_rank: g.free_rank(),
        }
    }
}

impl std::fmt::Display for GroupShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.invariant_factors.join(", "))?;
        if self.free_rank > 0 {
            write!(f, " + Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub name: String,
    pub cartan_type: String,
    pub lattice_rank: usize,
    pub semisimple_rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub two_rho: Vec<i64>,
    pub weyl_order: String,
    pub pi1: GroupShape,
}

pub fn datum_report(name: &str, rd: &RootDatum) -> DatumReport {
    DatumReport {
        name: name.to_string(),
        cartan_type: rd.cartan_type().to_string(),
        lattice_rank: rd.lattice_rank(),
        semisimple_rank: rd.semisimple_rank(),
        positive_roots: rd
            .positive_roots()
            .iter()
            .map(|a| a.coords().to_vec())
            .collect(),
        two_rho: rd.two_rho().coords().to_vec(),
        weyl_order: rd.cartan_type().weyl_group_order().to_string(),
        pi1: pi1(rd).group().into(),
    }
}

impl DatumReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            writeln!(s, "scenario: {}", self.name).unwrap();
        }
        writeln!(s, "type: {}", self.cartan_type).unwrap();
        writeln!(s, "lattice rank: {}", self.lattice_rank).unwrap();
        writeln!(s, "semisimple rank: {}", self.semisimple_rank).unwrap();
        writeln!(s, "positive roots: {}", self.positive_roots.len()).unwrap();
        for a in &self.positive_roots {
            writeln!(s, "  {a:?}").unwrap();
        }
        writeln!(s, "2rho: {:?}", self.two_rho).unwrap();
        writeln!(s, "Weyl group order: {}", self.weyl_order).unwrap();
        writeln!(s, "pi_1: {}", self.pi1).unwrap();
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub name: String,
    pub gamma_order: usize,
    pub x_gamma: GroupShape,
    pub elliptic: bool,
    /// Absent when only the action itself was requested.
    pub h: Option<GroupShape>,
    pub h_order: Option<usize>,
}

/// Fails with `NotElliptic` when `with_h` is set and `H` is undefined.
pub fn action_report(name: &str, act: &GaloisAction, with_h: bool) -> CliResult<ActionReport> {
    let (h, h_order) = if with_h {
        let hg = compute_h(act)?;
        (Some(hg.group().into()), Some(hg.order()))
    } else {
        (None, None)
    };
    Ok(ActionReport {
        name: name.to_string(),
        gamma_order: act.order(),
        x_gamma: coinvariants(act).group().into(),
        elliptic: is_elliptic(act),
        h,
        h_order,
    })
}

impl ActionReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            writeln!(s, "scenario: {}", self.name).unwrap();
        }
        writeln!(s, "|Gamma|: {}", self.gamma_order).unwrap();
        writeln!(s, "X_Gamma: {}", self.x_gamma).unwrap();
        writeln!(s, "elliptic: {}", self.elliptic).unwrap();
        if let (Some(h), Some(n)) = (&self.h, self.h_order) {
            writeln!(s, "H: {h} (order {n})").unwrap();
        }
        s
    }
}
