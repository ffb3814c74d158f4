//! Adapted orthonormal bases of the symmetric algebras, their validation,
//! and the sign-flag assignments used for association.

mod generators;
mod verify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{extract_structure_constants, BasisSet, RealMatrix, StructureTensor};
use crate::error::{Error, Result};
use crate::roots::{Family, RootSystem};
use crate::solv::{MetricSolvLieAlgebra, Provenance, RootData, Step};

pub use verify::{rotate_within_root, verify_adapted, verify_iwasawa, AdaptedReport, IwasawaReport};

/// Matrices realizing each basis vector inside `g`, after normalization.
#[derive(Debug, Clone)]
pub struct AmbientRealization {
    pub basis: BasisSet,
    pub dim_a: usize,
    /// `B = killing_scale · tr(X Y)` on g.
    pub killing_scale: f64,
    /// Weighted `B_σ` norm squared of the displayed a-basis vectors (when
    /// the construction displays one).
    pub lambda_a: Option<f64>,
    /// Common `B_σ` norm squared of the displayed n-basis vectors.
    pub lambda_n: f64,
}

impl AmbientRealization {
    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    pub fn matrix(&self, label: &str) -> Option<&RealMatrix> {
        self.basis.labels().iter().position(|l| l == label).map(|i| &self.basis.elements()[i])
    }

    /// `"negative_transpose"`: σ(X) = -X^t on every realization.
    pub fn involution(&self) -> &'static str {
        "negative_transpose"
    }
}

pub fn a_label(source: usize) -> String {
    format!("a:H{}", source + 1)
}

pub fn n_label(root: &str, generator: &str) -> String {
    format!("n[{root}]:{generator}")
}

/// Gram–Schmidt of ω-coordinate vectors under the metric `g`.
pub(crate) fn gram_schmidt(vectors: &[Vec<f64>], g: &nalgebra::DMatrix<f64>) -> Result<Vec<Vec<f64>>> {
    let dot = |x: &[f64], y: &[f64]| -> f64 {
        let mut s = 0.0;
        for k in 0..x.len() {
            for l in 0..y.len() {
                s += x[k] * g[(k, l)] * y[l];
            }
        }
        s
    };
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = dot(&w, u);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= c * ui;
                }
            }
        }
        let norm = dot(&w, &w);
        if norm <= 1e-24 {
            return Err(Error::DegenerateRootSystem);
        }
        let s = norm.sqrt();
        out.push(w.into_iter().map(|x| x / s).collect());
    }
    Ok(out)
}

/// Builds `s = a ⊕ n` for the symmetric space of `family`.
pub fn build_symmetric(family: Family) -> Result<(MetricSolvLieAlgebra, AmbientRealization)> {
    let rs = RootSystem::new(family)?;
    let raw = generators::raw_family(family);
    let mut gens = raw.generators;
    let root_idx = |g: &generators::Generator| rs.index_of(&g.root).ok_or_else(|| Error::Internal(format!("generator {} has no root", g.name())));
    let mut keyed = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        keyed.push((root_idx(&g)?, g));
    }
    keyed.sort_by(|(ra, a), (rb, b)| ra.cmp(rb).then(a.letter.cmp(b.letter)).then(a.indices.cmp(&b.indices)).then(a.suffix.cmp(&b.suffix)));

    for (r, pr) in rs.positive_roots().iter().enumerate() {
        let count = keyed.iter().filter(|(ri, _)| *ri == r).count();
        if count != pr.mult {
            return Err(Error::Internal(format!("root {} has {count} generators, multiplicity {}", pr.root, pr.mult)));
        }
    }

    let g = rs.omega_metric();
    let a_omega = gram_schmidt(&rs.dual_basis(), &g)?;
    let combine = |h: &[f64]| -> RealMatrix {
        let mut m = RealMatrix::zeros(raw.torus[0].dim());
        for (t, &c) in raw.torus.iter().zip(h) {
            m = m.add(&t.scaled(c)).expect("same size");
        }
        m
    };
    let a_mats: Vec<RealMatrix> = a_omega.iter().map(|h| combine(h)).collect();
    // 2B(A, A) = 1 for each a-basis vector, so B = κ tr with κ = 1 / (2 |A|²).
    let killing_scale = 1.0 / (2.0 * a_mats[0].frobenius_dot(&a_mats[0]));

    let raw_norms: Vec<f64> = keyed.iter().map(|(_, g)| g.matrix.frobenius_dot(&g.matrix)).collect();
    let f0 = raw_norms[0];
    if raw_norms.iter().any(|&f| (f - f0).abs() > 1e-9 * f0) {
        return Err(Error::Internal(format!("{family}: displayed n-vectors are not of equal length")));
    }
    let lambda_n = killing_scale * f0;
    let lambda_a = raw.displayed_a_frobenius.map(|f| 2.0 * killing_scale * f);

    let dim_a = a_mats.len();
    let mut labels: Vec<String> = (0..dim_a).map(a_label).collect();
    let mut mats = a_mats;
    let mut n_roots = Vec::new();
    for ((r, gen), f) in keyed.iter().zip(&raw_norms) {
        labels.push(n_label(&rs.positive_roots()[*r].root.label, &gen.name()));
        mats.push(gen.matrix.scaled(1.0 / (killing_scale * f).sqrt()));
        n_roots.push(*r);
    }
    let basis = BasisSet::new(mats, labels.clone())?;
    let structure = extract_structure_constants(&basis)?;
    let roots = RootData { system: rs, a_omega, a_sources: (0..dim_a).collect(), n_roots };
    let provenance = Provenance { family: Some(family), steps: vec![Step::Build] };
    let s = MetricSolvLieAlgebra::new(labels, dim_a, structure, Some(roots), provenance)?;
    Ok((s, AmbientRealization { basis, dim_a, killing_scale, lambda_a, lambda_n }))
}

/// Labels whose basis vectors are multiplied by √−1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignFlagAssignment {
    pub flagged: BTreeSet<String>,
    /// Preset that produced the assignment, if any.
    pub preset: Option<String>,
}

impl SignFlagAssignment {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn from_labels<I: IntoIterator<Item = String>>(labels: I) -> Self {
        SignFlagAssignment { flagged: labels.into_iter().collect(), preset: None }
    }

    pub fn is_empty(&self) -> bool {
        self.flagged.is_empty()
    }

    /// 0/1 flag per basis index; errors on labels that are not n-vectors of
    /// `s` (generator names are accepted in place of full labels).
    pub fn vector_for(&self, s: &MetricSolvLieAlgebra) -> Result<Vec<u8>> {
        let mut v = vec![0u8; s.dim()];
        for l in &self.flagged {
            let i = s.index_of(l)?;
            if s.is_a(i) {
                return Err(Error::Param(format!("cannot flag torus vector `{l}`")));
            }
            v[i] = 1;
        }
        Ok(v)
    }

    /// Drops labels absent from `s` and normalizes the rest to full labels.
    pub fn restrict_to(&self, s: &MetricSolvLieAlgebra) -> Self {
        let flagged = self.flagged.iter().filter_map(|l| s.index_of(l).ok()).map(|i| s.labels()[i].clone()).collect();
        SignFlagAssignment { flagged, preset: self.preset.clone() }
    }
}

/// Association choice: `WB(a)` for the `(p, q)` families, the single
/// canonical assignment for `so_star` and `sl_quaternion`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagChoice {
    None,
    Canonical,
    Wb(usize),
}

impl FlagChoice {
    /// `none`, `canonical` or `wb:<a>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(FlagChoice::None),
            "canonical" => Ok(FlagChoice::Canonical),
            _ => s
                .strip_prefix("wb:")
                .and_then(|a| a.parse().ok())
                .map(FlagChoice::Wb)
                .ok_or_else(|| Error::Parse(format!("unknown flag preset `{s}` (expected none, canonical or wb:<a>)"))),
        }
    }
}

/// The sign flags of the displayed association constructions, as labels of
/// the algebra built by [`build_symmetric`].
pub fn association_flags(family: Family, choice: FlagChoice) -> Result<SignFlagAssignment> {
    let (s, _) = build_symmetric(family)?;
    association_flags_for(&s, family, choice)
}

pub(crate) fn association_flags_for(s: &MetricSolvLieAlgebra, family: Family, choice: FlagChoice) -> Result<SignFlagAssignment> {
    if choice == FlagChoice::None {
        return Ok(SignFlagAssignment { flagged: BTreeSet::new(), preset: Some("none".into()) });
    }
    let names: Vec<(String, String)> = s.n_range().map(|i| (s.labels()[i].clone(), s.generator_name(i).to_string())).collect();
    let (flagged, preset): (BTreeSet<String>, String) = match family {
        Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => {
            let a = match choice {
                FlagChoice::Wb(a) => a,
                _ => 1,
            };
            if q - p < 2 {
                return Err(Error::Param(format!("{family}: association needs q - p >= 2")));
            }
            if a < 1 || a > q - p - 1 {
                return Err(Error::Param(format!("{family}: need 1 <= a <= {}", q - p - 1)));
            }
            // W_b: ω_k root vectors whose column lies past the first a columns of C
            let set = s
                .n_range()
                .filter(|&i| {
                    let root = s.root_of(i).expect("built algebra has roots");
                    let single = root.coords.iter().filter(|&&c| c != 0).count() == 1 && root.coords.iter().all(|&c| c == 0 || c == 1);
                    single && column_of(s.generator_name(i)).is_some_and(|m| m > 2 * p + a)
                })
                .map(|i| s.labels()[i].clone())
                .collect();
            (set, format!("wb:{a}"))
        }
        Family::SoStar { n } => {
            if let FlagChoice::Wb(_) = choice {
                return Err(Error::Param(format!("{family} has a single canonical association")));
            }
            let set = names
                .iter()
                .filter(|(_, g)| {
                    let letter = &g[..1];
                    let sign = g.chars().last();
                    if n % 2 == 0 {
                        (matches!(letter, "B" | "C") && sign == Some('-')) || (matches!(letter, "A" | "D") && sign == Some('+')) || letter == "G"
                    } else {
                        // every B and C, of either sign
                        matches!(letter, "X" | "Z" | "B" | "C")
                    }
                })
                .map(|(l, _)| l.clone())
                .collect();
            (set, "canonical".into())
        }
        Family::SlQuaternion { .. } => {
            if let FlagChoice::Wb(_) = choice {
                return Err(Error::Param(format!("{family} has a single canonical association")));
            }
            let set = names.iter().filter(|(_, g)| g.starts_with('A') || g.starts_with('C')).map(|(l, _)| l.clone()).collect();
            (set, "canonical".into())
        }
    };
    Ok(SignFlagAssignment { flagged, preset: Some(preset) })
}

/// Column index `m` of a `U{k}{m}` / `V{k}{m}` generator name.
fn column_of(name: &str) -> Option<usize> {
    let body = name.strip_prefix('U').or_else(|| name.strip_prefix('V'))?;
    let body = body.trim_end_matches(['i', 'j', 'k']);
    if let Some((_, m)) = body.split_once('_') {
        return m.parse().ok();
    }
    // k is a single digit when no index reaches 10
    body.get(1..)?.parse().ok()
}

/// Flag choices available for `family`, excluding `None`.
pub fn association_choices(family: Family) -> Vec<FlagChoice> {
    match family.pq() {
        Some((p, q)) if q - p >= 2 => (1..=(q - p) / 2).map(FlagChoice::Wb).collect(),
        Some(_) => vec![],
        None => vec![FlagChoice::Canonical],
    }
}

/// `(number of associated spaces, 2^rank - 1)`.
pub fn count_constructions(family: Family) -> (usize, usize) {
    let associates = match family.pq() {
        Some((p, q)) => (q - p) / 2,
        None => 1,
    };
    (associates, (1usize << family.rank()) - 1)
}

/// The algebra obtained by scaling one n-basis vector by `factor` while
/// keeping the basis declared orthonormal (the metric changes, not the
/// Lie algebra structure). Used to exhibit non-Einstein metrics.
pub fn rescale_basis_vector(s: &MetricSolvLieAlgebra, label: &str, factor: f64) -> Result<MetricSolvLieAlgebra> {
    let i = s.index_of(label)?;
    if factor == 0.0 || !factor.is_finite() {
        return Err(Error::Param("rescale factor must be finite and nonzero".into()));
    }
    // new basis e_i' = factor e_i: c'[i][j][k] = factor c for k != i, c / factor into i
    let t: &StructureTensor = s.structure();
    let scaled = t.map_entries(|a, b, k, v| {
        let mut w = v;
        if a == i {
            w *= factor;
        }
        if b == i {
            w *= factor;
        }
        if k == i {
            w /= factor;
        }
        w
    });
    Ok(s.with_structure(scaled, Step::Rescale { label: s.labels()[i].clone(), factor }))
}
