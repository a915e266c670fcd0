//! Scenario files: a root datum, a Galois action and a range of `m`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use weyl_equidist_core::{build_root_datum, CartanType, GaloisAction, LatticeChoice, RootDatum};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    /// `"root"` or `"weight"`
    Named(String),
    /// Generators in fundamental-weight coordinates.
    Custom(Vec<Vec<i64>>),
}

impl Default for LatticeSpec {
    fn default() -> Self {
        LatticeSpec::Named("root".into())
    }
}

impl LatticeSpec {
    pub fn to_choice(&self) -> CliResult<LatticeChoice> {
        match self {
            LatticeSpec::Named(s) => match s.to_ascii_lowercase().as_str() {
                "root" => Ok(LatticeChoice::Root),
                "weight" => Ok(LatticeChoice::Weight),
                _ => Err(CliError::Parse(format!("unknown lattice {s:?}"))),
            },
            LatticeSpec::Custom(g) => Ok(LatticeChoice::Custom(g.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub cartan_type: String,
    #[serde(default)]
    pub lattice: LatticeSpec,
    /// Row-major integer matrices acting on `X`.
    #[serde(default)]
    pub galois_generators: Vec<Vec<Vec<i64>>>,
    #[serde(default = "one")]
    pub m_min: u32,
    #[serde(default = "one")]
    pub m_max: u32,
}

fn one() -> u32 {
    1
}

impl Scenario {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if s.m_min > s.m_max {
            return Err(CliError::Parse(format!(
                "m_min ({}) exceeds m_max ({})",
                s.m_min, s.m_max
            )));
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn cartan(&self) -> CliResult<CartanType> {
        self.cartan_type
            .parse()
            .map_err(|e: weyl_equidist_core::Error| CliError::Parse(e.to_string()))
    }

    pub fn datum(&self) -> CliResult<RootDatum> {
        Ok(build_root_datum(
            &self.cartan()?,
            &self.lattice.to_choice()?,
        )?)
    }

    pub fn action(&self) -> CliResult<GaloisAction> {
        Ok(GaloisAction::new(
            self.datum()?,
            self.galois_generators.clone(),
        )?)
    }

    pub fn m_range(&self) -> std::ops::RangeInclusive<u32> {
        self.m_min..=self.m_max
    }
}

/// The scenarios used by `verify` when no scenario is given.
pub fn builtin_scenarios() -> Vec<Scenario> {
    let s = |name: &str, ty: &str, lattice: &str, gens: Vec<Vec<Vec<i64>>>, m_max| Scenario {
        name: name.into(),
        cartan_type: ty.into(),
        lattice: LatticeSpec::Named(lattice.into()),
        galois_generators: gens,
        m_min: 1,
        m_max,
    };
    vec![
        s("A1/Z2", "A1", "root", vec![vec![vec![-1]]], 6),
        s("A1-weight/Z2", "A1", "weight", vec![vec![vec![-1]]], 4),
        s(
            "A2/Z3",
            "A2",
            "root",
            vec![vec![vec![0, -1], vec![1, -1]]],
            4,
        ),
        s(
            "B2/-1",
            "B2",
            "root",
            vec![vec![vec![-1, 0], vec![0, -1]]],
            3,
        ),
        s(
            "G2/-1",
            "G2",
            "root",
            vec![vec![vec![-1, 0], vec![0, -1]]],
            2,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_and_custom_lattices() {
        let s = Scenario::from_json(
            r#"{"name":"x","cartan_type":"A2","lattice":"weight","galois_generators":[[[-1,0],[0,-1]]],"m_min":1,"m_max":3}"#,
        )
        .unwrap();
        assert_eq!(s.lattice.to_choice().unwrap(), LatticeChoice::Weight);
        assert_eq!(s.action().unwrap().order(), 2);
        let s = Scenario::from_json(r#"{"cartan_type":"A1","lattice":[[2]]}"#).unwrap();
        assert_eq!(s.lattice, LatticeSpec::Custom(vec![vec![2]]));
        assert_eq!(s.m_range(), 1..=1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Scenario::from_json("{"), Err(CliError::Parse(_))));
        assert!(matches!(
            Scenario::from_json(r#"{"cartan_type":"A1","m_min":3,"m_max":1}"#),
            Err(CliError::Parse(_))
        ));
        let s = Scenario::from_json(r#"{"cartan_type":"Q7"}"#).unwrap();
        assert_eq!(s.datum().unwrap_err().exit_code(), 2);
        let s = Scenario::from_json(r#"{"cartan_type":"A1","lattice":"dual"}"#).unwrap();
        assert_eq!(s.datum().unwrap_err().exit_code(), 2);
        let s = Scenario::from_json(r#"{"cartan_type":"A1","galois_generators":[[[2]]]}"#).unwrap();
        assert_eq!(s.action().unwrap_err().exit_code(), 3);
    }

    #[test]
    fn builtins_are_valid() {
        for s in builtin_scenarios() {
            s.action().unwrap();
        }
    }
}
