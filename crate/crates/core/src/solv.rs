//! The metric solvable Lie algebra `s = a ⊕ n` in a declared orthonormal basis.

use serde::{Deserialize, Serialize};

use crate::algebra::StructureTensor;
use crate::error::{Error, Result};
use crate::roots::{Family, Root, RootSystem};

/// Root-space bookkeeping carried by built, associated and attached algebras.
#[derive(Debug, Clone, PartialEq)]
pub struct RootData {
    pub system: RootSystem,
    /// ω-coordinates of each a-basis vector. Rows are orthonormal for
    /// [`RootSystem::omega_metric`].
    pub a_omega: Vec<Vec<f64>>,
    /// Dual-basis index (0-based) each a-basis vector was produced from.
    pub a_sources: Vec<usize>,
    /// Index into the positive roots for each n-basis vector.
    pub n_roots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    Build,
    Associate { flags: Vec<String>, preset: Option<String> },
    Attach { z: Vec<u32> },
    Rescale { label: String, factor: f64 },
    Input,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Option<Family>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSolvLieAlgebra {
    labels: Vec<String>,
    dim_a: usize,
    structure: StructureTensor,
    roots: Option<RootData>,
    provenance: Provenance,
}

impl MetricSolvLieAlgebra {
    pub fn new(labels: Vec<String>, dim_a: usize, structure: StructureTensor, roots: Option<RootData>, provenance: Provenance) -> Result<Self> {
        let n = labels.len();
        if structure.dim() != n {
            return Err(Error::Dimension { left: structure.dim(), right: n });
        }
        if dim_a > n {
            return Err(Error::Dimension { left: dim_a, right: n });
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Param(format!("duplicate basis label `{l}`")));
            }
        }
        if let Some(rd) = &roots {
            if rd.a_omega.len() != dim_a || rd.a_sources.len() != dim_a || rd.n_roots.len() != n - dim_a {
                return Err(Error::Internal("root data does not match the a/n split".into()));
            }
            if rd.n_roots.iter().any(|&r| r >= rd.system.positive_roots().len()) {
                return Err(Error::Internal("root index out of range".into()));
            }
        }
        Ok(MetricSolvLieAlgebra { labels, dim_a, structure, roots, provenance })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_n(&self) -> usize {
        self.labels.len() - self.dim_a
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &StructureTensor {
        &self.structure
    }

    pub fn root_data(&self) -> Option<&RootData> {
        self.roots.as_ref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn family(&self) -> Option<Family> {
        self.provenance.family
    }

    pub fn a_range(&self) -> std::ops::Range<usize> {
        0..self.dim_a
    }

    pub fn n_range(&self) -> std::ops::Range<usize> {
        self.dim_a..self.dim()
    }

    pub fn is_a(&self, i: usize) -> bool {
        i < self.dim_a
    }

    /// Root of basis vector `i`, when `i` is in n and root data is present.
    pub fn root_of(&self, i: usize) -> Option<&Root> {
        let rd = self.roots.as_ref()?;
        if i < self.dim_a {
            return None;
        }
        Some(&rd.system.positive_roots()[rd.n_roots[i - self.dim_a]].root)
    }

    /// Index of positive root of basis vector `i`.
    pub fn root_index_of(&self, i: usize) -> Option<usize> {
        let rd = self.roots.as_ref()?;
        (i >= self.dim_a).then(|| rd.n_roots[i - self.dim_a])
    }

    /// Generator part of a label (`U27` for `n[w2]:U27`, `H1` for `a:H1`).
    pub fn generator_name(&self, i: usize) -> &str {
        short_name(&self.labels[i])
    }

    /// Finds a basis vector by full label or by generator name.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(i);
        }
        let hits: Vec<usize> = (0..self.dim()).filter(|&i| self.generator_name(i) == name).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::UnknownLabel(name.to_string())),
        }
    }

    /// Coordinate vector of basis vector `i`.
    pub fn unit(&self, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[i] = 1.0;
        v
    }

    pub(crate) fn with_structure(&self, structure: StructureTensor, step: Step) -> Self {
        let mut provenance = self.provenance.clone();
        provenance.steps.push(step);
        MetricSolvLieAlgebra { labels: self.labels.clone(), dim_a: self.dim_a, structure, roots: self.roots.clone(), provenance }
    }

    /// Labels flagged by associate steps that are still present.
    pub fn current_flags(&self) -> Vec<String> {
        let mut flagged = std::collections::BTreeSet::new();
        for s in &self.provenance.steps {
            if let Step::Associate { flags, .. } = s {
                for f in flags {
                    // a second application with the same flag undoes the first
                    if !flagged.remove(f) {
                        flagged.insert(f.clone());
                    }
                }
            }
        }
        self.labels.iter().filter(|l| flagged.contains(*l)).cloned().collect()
    }

    /// Parameter `a` of the last `wb:a` association preset, if any.
    pub fn association_choice(&self) -> Option<usize> {
        self.provenance.steps.iter().rev().find_map(|s| match s {
            Step::Associate { preset: Some(p), .. } => p.strip_prefix("wb:").and_then(|a| a.parse().ok()),
            _ => None,
        })
    }
}

pub fn short_name(label: &str) -> &str {
    label.rsplit(':').next().unwrap_or(label)
}
