//! JSON input schemas. Rationals are written as `"p/q"` strings, basis
//! indices in bracket tables are 1-based, and multiplication tables are
//! row-major (`table[x][y]` is the product of `x` and `y`).

use serde::{Deserialize, Serialize};

use crate::env_hopf::FiniteGroup;
use crate::exact_core::{Scalar, Vector};
use crate::leibniz::LeibnizAlgebra;
use crate::rack_bialg::{AugmentedRack, FiniteRack};
use crate::{Error, Result};

/// One nonzero bracket `[e_left, e_right] = Σ value_k e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub value: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeibnizSpec {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RackSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

/// A group acting on a pointed set with an equivariant map `p` to the group;
/// `action[g][x]` is `g·x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentedRackSpec {
    pub name: String,
    pub group: GroupSpec,
    pub labels: Vec<String>,
    pub unit: usize,
    pub p: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

/// Right group `G × E` with `E` a set of right-trivial idempotents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightGroupSpec {
    pub name: String,
    pub group: GroupSpec,
    pub idempotents: Vec<String>,
}

/// Any input file, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    Leibniz(LeibnizSpec),
    Group(GroupSpec),
    Rack(RackSpec),
    AugmentedRack(AugmentedRackSpec),
    RightGroup(RightGroupSpec),
}

impl Input {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn name(&self) -> &str {
        match self {
            Input::Leibniz(s) => &s.name,
            Input::Group(s) => &s.name,
            Input::Rack(s) => &s.name,
            Input::AugmentedRack(s) => &s.name,
            Input::RightGroup(s) => &s.name,
        }
    }
}

fn flatten_table(table: &[Vec<usize>], rows: usize, cols: usize, what: &str) -> Result<Vec<usize>> {
    if table.len() != rows || table.iter().any(|r| r.len() != cols) {
        return Err(Error::Schema(format!("{what} table must be {rows}×{cols}")));
    }
    Ok(table.concat())
}

impl LeibnizSpec {
    fn brackets(&self) -> Result<Vec<((usize, usize), Vector)>> {
        let n = self.dim;
        self.brackets
            .iter()
            .map(|b| {
                if !(1..=n).contains(&b.left) || !(1..=n).contains(&b.right) {
                    return Err(Error::Schema(format!("bracket index ({}, {}) outside 1..={n}", b.left, b.right)));
                }
                if b.value.len() != n {
                    return Err(Error::Schema(format!("bracket value must have {n} coordinates")));
                }
                Ok(((b.left - 1, b.right - 1), Vector::from_dense(&b.value)))
            })
            .collect()
    }

    /// Builds the algebra and verifies the left Leibniz identity.
    pub fn build(&self) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.dim, &self.brackets()?)
    }

    /// Builds the bracket table without checking the identity.
    pub fn build_unchecked(&self) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::unchecked(self.dim, &self.brackets()?)
    }

    pub fn from_algebra(name: &str, h: &LeibnizAlgebra) -> Self {
        let n = h.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = h.bracket_basis(i, j);
                if !v.is_zero() {
                    brackets.push(BracketEntry { left: i + 1, right: j + 1, value: v.to_dense(n) });
                }
            }
        }
        LeibnizSpec { name: name.into(), dim: n, brackets }
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let n = self.labels.len();
        FiniteGroup::new(self.labels.clone(), flatten_table(&self.table, n, n, "group")?, self.unit)
    }

    pub fn from_group(name: &str, g: &FiniteGroup) -> Self {
        let n = g.order();
        GroupSpec {
            name: name.into(),
            labels: g.labels().to_vec(),
            table: (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect(),
            unit: g.unit(),
        }
    }
}

impl RackSpec {
    pub fn build(&self) -> Result<FiniteRack> {
        let n = self.labels.len();
        FiniteRack::new(self.labels.clone(), flatten_table(&self.table, n, n, "rack")?, self.unit)
    }

    pub fn from_rack(name: &str, x: &FiniteRack) -> Self {
        let n = x.size();
        RackSpec {
            name: name.into(),
            labels: x.labels().to_vec(),
            table: (0..n).map(|a| (0..n).map(|b| x.act(a, b)).collect()).collect(),
            unit: x.unit(),
        }
    }
}

impl AugmentedRackSpec {
    pub fn build(&self) -> Result<AugmentedRack> {
        let g = self.group.build()?;
        let action = flatten_table(&self.action, g.order(), self.labels.len(), "action")?;
        AugmentedRack::new(g, self.labels.clone(), self.unit, self.p.clone(), action)
    }

    pub fn from_augmented(name: &str, x: &AugmentedRack) -> Self {
        let (ng, nx) = (x.group.order(), x.rack.size());
        AugmentedRackSpec {
            name: name.into(),
            group: GroupSpec::from_group(name, &x.group),
            labels: x.rack.labels().to_vec(),
            unit: x.rack.unit(),
            p: x.p.clone(),
            action: (0..ng).map(|g| (0..nx).map(|y| x.act(g, y)).collect()).collect(),
        }
    }
}

impl RightGroupSpec {
    pub fn build(&self) -> Result<(FiniteGroup, Vec<String>)> {
        if self.idempotents.is_empty() {
            return Err(Error::Schema("a right group needs at least one idempotent".into()));
        }
        Ok((self.group.build()?, self.idempotents.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_round_trip() {
        let json = r#"{"kind":"leibniz","name":"sq","dim":2,
            "brackets":[{"left":1,"right":1,"value":["0","1/2"]}]}"#;
        let inp = Input::from_json(json).unwrap();
        let Input::Leibniz(spec) = &inp else { panic!("kind") };
        let h = spec.build().unwrap();
        assert_eq!(h.bracket_basis(0, 0), &Vector::singleton(1, Scalar::ratio(1, 2)));
        assert_eq!(Input::from_json(&inp.to_json()).unwrap(), inp);
        assert_eq!(LeibnizSpec::from_algebra("sq", &h), *spec);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(Input::from_json(r#"{"kind":"leibniz","dim":2}"#), Err(Error::Schema(_))));
        let bad = LeibnizSpec { name: "x".into(), dim: 1, brackets: vec![BracketEntry { left: 2, right: 1, value: vec![Scalar::one()] }] };
        assert!(matches!(bad.build(), Err(Error::Schema(_))));
    }
}
