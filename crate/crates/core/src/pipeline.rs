//! Batch composition of build, associate, attach and curvature checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{association_choices, association_flags_for, build_symmetric, FlagChoice, SignFlagAssignment};
use crate::curvature::{curvature_report, einstein_check, CurvatureReport, ReportOptions};
use crate::error::{Error, Result};
use crate::format::fmt12;
use crate::roots::{CharacteristicElement, Family, MAX_RANK};
use crate::solv::MetricSolvLieAlgebra;
use crate::transforms::{associate, attach, commute_check, CommuteReport};

#[derive(Debug, Clone, PartialEq)]
pub enum FlagSpec {
    Preset(FlagChoice),
    Labels(Vec<String>),
}

impl FlagSpec {
    /// A preset name (`none`, `canonical`, `wb:<a>`) or a comma-separated
    /// label list.
    pub fn parse(s: &str) -> Result<Self> {
        match FlagChoice::parse(s) {
            Ok(c) => Ok(FlagSpec::Preset(c)),
            Err(_) => Ok(FlagSpec::Labels(s.split(',').map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect())),
        }
    }

    pub fn resolve(&self, s: &MetricSolvLieAlgebra) -> Result<SignFlagAssignment> {
        match self {
            FlagSpec::Preset(c) => {
                let family = s.family().ok_or_else(|| Error::Param("flag presets need a family; pass explicit labels".into()))?;
                association_flags_for(s, family, *c)
            }
            FlagSpec::Labels(l) => Ok(SignFlagAssignment::from_labels(l.iter().cloned())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineSpec {
    pub family: Family,
    pub z: Option<CharacteristicElement>,
    pub flags: Option<FlagSpec>,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl PipelineSpec {
    pub fn new(family: Family) -> Self {
        PipelineSpec { family, z: None, flags: None, tol: 1e-9, seed: 0, samples: 64 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineOutcome {
    #[serde(skip)]
    pub algebra: MetricSolvLieAlgebra,
    pub family: String,
    pub z: Option<String>,
    pub flags: Vec<String>,
    pub dim: usize,
    pub report: CurvatureReport,
    /// Order independence of associate and attach, when both were requested.
    pub commute: Option<CommuteReport>,
    pub pass: bool,
}

/// Build, then associate, then attach, then the curvature report.
pub fn run_pipeline(spec: &PipelineSpec) -> Result<PipelineOutcome> {
    let (mut s, _) = build_symmetric(spec.family)?;
    let root = s.clone();
    let mut assignment = None;
    if let Some(f) = &spec.flags {
        let a = f.resolve(&s)?;
        s = associate(&s, &a)?;
        assignment = Some(a);
    }
    if let Some(z) = &spec.z {
        s = attach(&s, z)?;
    }
    let commute = match (&spec.z, &assignment) {
        (Some(z), Some(a)) => Some(commute_check(&root, z, a)?),
        _ => None,
    };
    let report = curvature_report(&s, ReportOptions { tol: spec.tol, seed: spec.seed, samples: spec.samples })?;
    let pass = report.pass && commute.as_ref().is_none_or(|c| c.commute);
    Ok(PipelineOutcome {
        family: spec.family.to_string(),
        z: spec.z.as_ref().map(|z| z.to_string()),
        flags: s.current_flags(),
        dim: s.dim(),
        algebra: s,
        report,
        commute,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SweepRow {
    pub family: String,
    pub support: String,
    pub preset: String,
    pub dim: usize,
    pub c: f64,
    pub deviation: f64,
    pub pass: bool,
}

fn preset_name(c: FlagChoice) -> String {
    match c {
        FlagChoice::None => "none".into(),
        FlagChoice::Canonical => "canonical".into(),
        FlagChoice::Wb(a) => format!("wb:{a}"),
    }
}

/// Every nonempty support of `Z` (coefficients 1) against `presets`
/// (default: none plus every association choice), one Einstein check each.
/// Rows are ordered by support, then preset.
pub fn sweep(family: Family, presets: Option<&[FlagChoice]>, tol: f64) -> Result<Vec<SweepRow>> {
    let rank = family.rank();
    if rank > MAX_RANK {
        return Err(Error::Param(format!("sweep enumerates 2^rank - 1 supports; rank {rank} exceeds {MAX_RANK}")));
    }
    let presets: Vec<FlagChoice> = match presets {
        Some(p) => p.to_vec(),
        None => std::iter::once(FlagChoice::None).chain(association_choices(family)).collect(),
    };
    let (base, _) = build_symmetric(family)?;
    let associated: Vec<(FlagChoice, MetricSolvLieAlgebra)> = presets
        .iter()
        .map(|&c| Ok((c, associate(&base, &association_flags_for(&base, family, c)?)?)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(u32, usize)> = (1u32..(1 << rank)).flat_map(|m| (0..associated.len()).map(move |p| (m, p))).collect();
    jobs.par_iter()
        .map(|&(mask, p)| {
            let support: Vec<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
            let z = CharacteristicElement::from_support(rank, &support)?;
            let (choice, s) = &associated[p];
            let a = attach(s, &z)?;
            let check = einstein_check(&a, tol);
            Ok(SweepRow {
                family: family.to_string(),
                support: z.to_string(),
                preset: preset_name(*choice),
                dim: a.dim(),
                c: check.constant,
                deviation: check.deviation,
                pass: check.pass,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("family,support,preset,dim,c,deviation,pass\n");
    for r in rows {
        out.push_str(&format!("\"{}\",\"{}\",{},{},{},{},{}\n", r.family, r.support, r.preset, r.dim, fmt12(r.c), fmt12(r.deviation), r.pass));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_spec_parsing() {
        assert_eq!(FlagSpec::parse("wb:1").unwrap(), FlagSpec::Preset(FlagChoice::Wb(1)));
        assert_eq!(FlagSpec::parse("U27, U28").unwrap(), FlagSpec::Labels(vec!["U27".into(), "U28".into()]));
    }

    #[test]
    fn sweep_rows_are_ordered() {
        let rows = sweep(Family::Orthogonal { p: 2, q: 4 }, None, 1e-9).unwrap();
        assert_eq!(rows.len(), 3 * 2);
        assert_eq!(rows[0].support, "1,0");
        assert_eq!(rows[0].preset, "none");
        assert_eq!(rows[1].preset, "wb:1");
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn rank_guard() {
        let err = sweep(Family::SlQuaternion { n: 14 }, None, 1e-9).unwrap_err();
        assert_eq!(err.kind(), "ParamError");
    }
}
