use crate::env_hopf::FiniteGroup;
use crate::{Error, Result};

/// Pointed finite rack: `x▷(y▷z) = (x▷y)▷(x▷z)`, every `x▷-` bijective,
/// `e▷x = x` and `x▷e = e`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRack {
    labels: Vec<String>,
    op: Vec<usize>,
    unit: usize,
}

impl FiniteRack {
    pub fn new(labels: Vec<String>, op: Vec<usize>, unit: usize) -> Result<Self> {
        let r = Self::unchecked(labels, op, unit)?;
        r.validate()?;
        Ok(r)
    }

    /// Shape checks only; the rack axioms are not verified.
    pub fn unchecked(labels: Vec<String>, op: Vec<usize>, unit: usize) -> Result<Self> {
        let n = labels.len();
        if op.len() != n * n || unit >= n || op.iter().any(|&x| x >= n) {
            return Err(Error::Schema("rack table has the wrong shape".into()));
        }
        Ok(FiniteRack { labels, op, unit })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        let l = |i: usize| self.labels[i].clone();
        for x in 0..n {
            if self.act(self.unit, x) != x {
                return Err(Error::Schema(format!("unit does not act trivially on {}", l(x))));
            }
            if self.act(x, self.unit) != self.unit {
                return Err(Error::Schema(format!("{} does not fix the unit", l(x))));
            }
            let mut seen = vec![false; n];
            for y in 0..n {
                seen[self.act(x, y)] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Schema(format!("left multiplication by {} is not bijective", l(x))));
            }
            for y in 0..n {
                for z in 0..n {
                    if self.act(x, self.act(y, z)) != self.act(self.act(x, y), self.act(x, z)) {
                        return Err(Error::Schema(format!(
                            "self-distributivity fails at ({}, {}, {})",
                            l(x),
                            l(y),
                            l(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjugation rack `g▷h = g h g⁻¹`.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        let op = (0..n * n).map(|k| g.mul(g.mul(k / n, k % n), g.inv(k / n))).collect();
        FiniteRack::new(g.labels().to_vec(), op, g.unit()).expect("conjugation rack")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn act(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size() + y]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Whether `f: self → target` preserves the operation and the unit.
    pub fn is_morphism(&self, f: &[usize], target: &FiniteRack) -> bool {
        f[self.unit] == target.unit
            && (0..self.size()).all(|x| (0..self.size()).all(|y| f[self.act(x, y)] == target.act(f[x], f[y])))
    }
}

/// Augmented rack: a group action on a pointed set `X` with an equivariant
/// map `p: X → G`, `p(g·x) = g p(x) g⁻¹`, and rack product `x▷y = p(x)·y`.
#[derive(Clone, Debug)]
pub struct AugmentedRack {
    pub rack: FiniteRack,
    pub group: FiniteGroup,
    pub p: Vec<usize>,
    /// `action[g * |X| + x] = g·x`.
    pub action: Vec<usize>,
}

impl AugmentedRack {
    pub fn new(group: FiniteGroup, labels: Vec<String>, unit: usize, p: Vec<usize>, action: Vec<usize>) -> Result<Self> {
        let (ng, nx) = (group.order(), labels.len());
        if p.len() != nx || action.len() != ng * nx || p.iter().any(|&g| g >= ng) || action.iter().any(|&x| x >= nx)
        {
            return Err(Error::Schema("augmented rack tables have the wrong shape".into()));
        }
        let act = |g: usize, x: usize| action[g * nx + x];
        for x in 0..nx {
            if act(group.unit(), x) != x {
                return Err(Error::Schema("group unit does not act trivially".into()));
            }
        }
        for g in 0..ng {
            if act(g, unit) != unit {
                return Err(Error::Schema("action does not fix the base point".into()));
            }
            for h in 0..ng {
                for x in 0..nx {
                    if act(group.mul(g, h), x) != act(g, act(h, x)) {
                        return Err(Error::Schema("not a group action".into()));
                    }
                }
            }
            for x in 0..nx {
                let lhs = p[act(g, x)];
                let rhs = group.mul(group.mul(g, p[x]), group.inv(g));
                if lhs != rhs {
                    return Err(Error::Schema(format!(
                        "augmentation not equivariant at ({}, {})",
                        group.labels()[g],
                        labels[x]
                    )));
                }
            }
        }
        if p[unit] != group.unit() {
            return Err(Error::Schema("augmentation must send the base point to the unit".into()));
        }
        let op = (0..nx * nx).map(|k| act(p[k / nx], k % nx)).collect();
        let rack = FiniteRack::new(labels, op, unit)?;
        Ok(AugmentedRack { rack, group, p, action })
    }

    /// `G` acting on itself by conjugation with `p = id`.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        let action = (0..n * n).map(|k| g.mul(g.mul(k / n, k % n), g.inv(k / n))).collect();
        AugmentedRack::new(g.clone(), g.labels().to_vec(), g.unit(), (0..n).collect(), action)
            .expect("conjugation augmentation")
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.rack.size() + x]
    }
}
