//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is printed even when
//! everything passes.

use std::time::Instant;

use nalgebra::DMatrix;
use solvcurv::algebra::{gram_matrix, BilinearForm};
use solvcurv::builders::{association_choices, verify_adapted, verify_iwasawa};
use solvcurv::curvature::{
    einstein_check, find_positive_plane, mean_curvature, mean_curvature_from_traces, paper_plane_spec, parse_plane, ricci_full, ricci_wolter, sectional, tamaru_defect, u_form, PlaneStrategy,
};
use solvcurv::transforms::{associate_preset, associate_via_complexification, attach_detailed};
use solvcurv::{association_flags, associate, attach, build_symmetric, commute_check, CharacteristicElement, Family, FlagChoice, MetricSolvLieAlgebra, RootSystem};

const TOL: f64 = 1e-9;

fn families() -> Vec<Family> {
    vec![
        Family::Orthogonal { p: 3, q: 5 },
        Family::Unitary { p: 2, q: 4 },
        Family::Symplectic { p: 2, q: 3 },
        Family::SoStar { n: 5 },
        Family::SoStar { n: 6 },
        Family::SlQuaternion { n: 3 },
    ]
}

fn supports(rank: usize) -> Vec<CharacteristicElement> {
    (1u32..(1 << rank))
        .map(|m| CharacteristicElement::new((0..rank).map(|i| (m >> i) & 1).collect()).unwrap())
        .collect()
}

fn presets(f: Family) -> Vec<FlagChoice> {
    association_choices(f)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Worst `|ric_full - ric_wolter|`, or infinity if the Wolter form is refused.
fn wolter_gap(s: &MetricSolvLieAlgebra) -> f64 {
    match ricci_wolter(s) {
        Ok(w) => (w - ricci_full(s)).amax(),
        Err(_) => f64::INFINITY,
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst_dev: f64 = 0.0;
    let mut worst_c = f64::NEG_INFINITY;
    let mut ok = true;
    for f in families() {
        let (s, _) = build_symmetric(f).unwrap();
        let e = einstein_check(&s, TOL);
        ok &= e.pass && e.deviation < TOL && e.constant < 0.0;
        worst_dev = worst_dev.max(e.deviation);
        worst_c = worst_c.max(e.constant);
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 5.0;
    outcome(ok, format!("max deviation {worst_dev:.2e}, max c {worst_c:.6}, {secs:.2}s"))
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut worst_c: f64 = 0.0;
    let mut worst_block: f64 = 0.0;
    let mut count = 0;
    for f in families() {
        let (s, _) = build_symmetric(f).unwrap();
        let ric_p = ricci_full(&s);
        let c_p = einstein_check(&s, TOL).constant;
        for z in supports(f.rank()) {
            let att = attach_detailed(&s, &z).unwrap();
            let ric_a = ricci_full(&att.algebra);
            let e = einstein_check(&att.algebra, TOL);
            let v = &att.inclusion;
            let restricted = v * &ric_p * v.transpose();
            let block = (restricted - &ric_a).amax();
            ok &= e.pass && (e.constant - c_p).abs() < TOL && block < TOL;
            worst_c = worst_c.max((e.constant - c_p).abs());
            worst_block = worst_block.max(block);
            count += 1;
        }
    }
    outcome(ok, format!("{count} attached algebras, max |c - c_parent| {worst_c:.2e}, max common-block gap {worst_block:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut worst_dev: f64 = 0.0;
    let mut worst_conj: f64 = 0.0;
    let mut count = 0;
    for f in families() {
        let (s, _) = build_symmetric(f).unwrap();
        let ric = ricci_full(&s);
        for choice in presets(f) {
            let flags = association_flags(f, choice).unwrap();
            let t = associate(&s, &flags).unwrap();
            let e = einstein_check(&t, TOL);
            let fv = flags.vector_for(&s).unwrap();
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(fv.len(), fv.iter().map(|&x| if x == 1 { -1.0 } else { 1.0 })));
            let conj = (&d * &ric * &d - ricci_full(&t)).amax();
            ok &= e.pass && conj < TOL;
            worst_dev = worst_dev.max(e.deviation);
            worst_conj = worst_conj.max(conj);
            count += 1;
        }
    }
    ok &= count > 0;
    outcome(ok, format!("{count} associates, max deviation {worst_dev:.2e}, max conjugation gap {worst_conj:.2e}"))
}

fn example_31() -> (MetricSolvLieAlgebra, MetricSolvLieAlgebra, CharacteristicElement) {
    let f = Family::Orthogonal { p: 3, q: 5 };
    let (s, _) = build_symmetric(f).unwrap();
    let s1 = associate_preset(&s, FlagChoice::Wb(1)).unwrap();
    (s, s1, CharacteristicElement::parse("1,1,0").unwrap())
}

fn criterion_4() -> Outcome {
    let (s, s1, z) = example_31();
    let att = attach(&s1, &z).unwrap();
    let e = einstein_check(&att, TOL);
    let flags = association_flags(Family::Orthogonal { p: 3, q: 5 }, FlagChoice::Wb(1)).unwrap();
    let c = commute_check(&s, &z, &flags).unwrap();
    outcome(e.pass && e.constant < 0.0 && c.commute && c.discrepancy == 0.0, format!("c {:.6}, deviation {:.2e}, commute discrepancy {}", e.constant, e.deviation, c.discrepancy))
}

fn criterion_5() -> Outcome {
    let (_, s1, z) = example_31();
    let att = attach(&s1, &z).unwrap();
    let plane = "U27+U28,U37+U38";
    let (x, y) = parse_plane(&s1, plane).unwrap();
    let k_before = sectional(&s1, &x, &y).unwrap();
    let (xa, ya) = parse_plane(&att, plane).unwrap();
    let k_after = sectional(&att, &xa, &ya).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let xs: Vec<f64> = xa.iter().map(|v| v * r).collect();
    let ys: Vec<f64> = ya.iter().map(|v| v * r).collect();
    let u = u_form(&att, &xs, &ys);
    let u_norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
    outcome(k_before > TOL && k_after < -TOL && u_norm < 1e-10, format!("K in s_1 {k_before:.6}, K attached {k_after:.6}, |U(X,Y)| attached {u_norm:.2e}"))
}

/// Metric dual of a root in the orthonormal a-basis: coordinates `α(A_p)`.
fn root_dual(s: &MetricSolvLieAlgebra, name: &str) -> Vec<f64> {
    let i = s.index_of(name).unwrap();
    let root = s.root_of(i).unwrap();
    s.root_data().unwrap().a_omega.iter().map(|a| root.eval(a)).collect()
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in [Family::SoStar { n: 6 }, Family::SlQuaternion { n: 3 }] {
        let (s, _) = build_symmetric(f).unwrap();
        let t = associate_preset(&s, FlagChoice::Canonical).unwrap();
        let res = find_positive_plane(&t, PlaneStrategy::PaperPreset);
        let k = res.found.as_ref().map(|p| p.k).unwrap_or(f64::NAN);
        ok &= k > TOL;
        parts.push(format!("{f}: K {k:.6}"));
        if let Family::SlQuaternion { .. } = f {
            let h12 = root_dual(&t, "A12");
            let h23 = root_dual(&t, "C23");
            let expected = -h12.iter().zip(&h23).map(|(a, b)| a * b).sum::<f64>();
            ok &= (k - expected).abs() < TOL;
            parts.push(format!("-<H_12,H_23> {expected:.6}"));
        }
    }
    outcome(ok, parts.join(", "))
}

fn criterion_7() -> Outcome {
    let mut worst_ric: f64 = 0.0;
    let mut worst_h0: f64 = 0.0;
    let mut check = |s: &MetricSolvLieAlgebra| {
        worst_ric = worst_ric.max(wolter_gap(s));
        let a = mean_curvature(s);
        let b = mean_curvature_from_traces(s);
        worst_h0 = worst_h0.max(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    };
    for f in families() {
        let (s, _) = build_symmetric(f).unwrap();
        check(&s);
        for z in supports(f.rank()) {
            check(&attach(&s, &z).unwrap());
        }
        for choice in presets(f) {
            let t = associate_preset(&s, choice).unwrap();
            check(&t);
            for z in supports(f.rank()) {
                check(&attach(&t, &z).unwrap());
            }
        }
    }
    let f = Family::Orthogonal { p: 3, q: 5 };
    let (s, real) = build_symmetric(f).unwrap();
    let flags = association_flags(f, FlagChoice::Wb(1)).unwrap();
    let direct = associate(&s, &flags).unwrap();
    let ambient = associate_via_complexification(&real, &flags).unwrap();
    let assoc_gap = direct.structure().max_abs_diff(&ambient);
    let ok = worst_ric < TOL && worst_h0 < TOL && assoc_gap < 1e-10;
    outcome(ok, format!("Ricci full vs Wolter {worst_ric:.2e}, H_0 two ways {worst_h0:.2e}, associate vs ambient {assoc_gap:.2e}"))
}

fn criterion_8() -> Outcome {
    let (_, s1, z) = example_31();
    let att = attach_detailed(&s1, &z).unwrap();
    let d = tamaru_defect(&s1, &att, 100, 0);
    outcome(d < TOL, format!("max defect over 100 samples {d:.2e}"))
}

/// Expected multiplicity of a positive root from its shape.
fn expected_mult(f: Family, coords: &[i32]) -> usize {
    let nz: Vec<i32> = coords.iter().copied().filter(|&c| c != 0).collect();
    let pm = nz.len() == 2;
    let single = nz == [1];
    let double = nz == [2];
    match f {
        Family::Orthogonal { p, q } if single => q - p,
        Family::Orthogonal { .. } if pm => 1,
        Family::Unitary { p, q } if single => 2 * (q - p),
        Family::Unitary { .. } if pm => 2,
        Family::Unitary { .. } if double => 1,
        Family::Symplectic { p, q } if single => 4 * (q - p),
        Family::Symplectic { .. } if pm => 4,
        Family::Symplectic { .. } if double => 3,
        Family::SoStar { .. } if pm => 4,
        Family::SoStar { .. } if double => 1,
        Family::SoStar { n } if single && n % 2 == 1 => 4,
        Family::SlQuaternion { .. } if pm => 4,
        _ => usize::MAX,
    }
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut failures = Vec::new();
    for f in families() {
        let (s, real) = build_symmetric(f).unwrap();
        let jac = s.structure().jacobi_defect();
        if jac >= 1e-10 {
            failures.push(format!("{f} jacobi {jac:.2e}"));
        }
        let rs = RootSystem::new(f).unwrap();
        let roots = rs.positive_roots();
        for z in supports(f.rank()) {
            let lv = rs.levels(&z).unwrap();
            for a in 0..roots.len() {
                for b in 0..roots.len() {
                    let sum: Vec<i32> = roots[a].root.coords.iter().zip(&roots[b].root.coords).map(|(x, y)| x + y).collect();
                    if let Some(c) = rs.index_of(&sum) {
                        if lv[c] != lv[a] + lv[b] {
                            failures.push(format!("{f} level additivity at {}+{}", roots[a].root.label, roots[b].root.label));
                        }
                    }
                }
            }
        }
        for (i, j, k, _) in s.structure().triples() {
            if !s.is_a(i) && !s.is_a(j) {
                let sum: Vec<i32> = s.root_of(i).unwrap().coords.iter().zip(&s.root_of(j).unwrap().coords).map(|(x, y)| x + y).collect();
                if s.root_of(k).map(|r| r.coords.clone()) != Some(sum) {
                    failures.push(format!("{f} bracket [{}, {}] leaves its root space", s.labels()[i], s.labels()[j]));
                }
            }
        }
        let adapted = verify_adapted(&s);
        if !adapted.passed() {
            failures.push(format!("{f} adapted: {:?}", adapted.violations.first()));
        }
        let iw = verify_iwasawa(&s);
        if !iw.passed() {
            failures.push(format!("{f} iwasawa: {:?}", iw.violations.first()));
        }
        for (r, pr) in roots.iter().enumerate() {
            let count = s.n_range().filter(|&i| s.root_index_of(i) == Some(r)).count();
            if count != pr.mult || pr.mult != expected_mult(f, &pr.root.coords) {
                failures.push(format!("{f} multiplicity of {}: {count} vectors, table {}", pr.root.label, pr.mult));
            }
        }
        let g = gram_matrix(&real.basis, BilinearForm::AmbientKillingWeighted { a_block: real.dim_a }).unwrap();
        let scale = g[(0, 0)];
        let gap = (&g / scale - DMatrix::identity(g.nrows(), g.ncols())).amax();
        if gap >= TOL || scale <= 0.0 {
            failures.push(format!("{f} weighted Gram off identity by {gap:.2e}"));
        }
    }
    ok &= failures.is_empty();
    let detail = if ok { format!("{} families", families().len()) } else { failures.join("; ") };
    outcome(ok, detail)
}

fn criterion_10() -> Outcome {
    let (s, _) = build_symmetric(Family::Orthogonal { p: 3, q: 5 }).unwrap();
    let random = find_positive_plane(&s, PlaneStrategy::Random { samples: 10_000, seed: 0 });
    let pairs = find_positive_plane(&s, PlaneStrategy::BasisPairs);
    let max_k = random.max_k.max(pairs.max_k);
    let (_, s1, _) = example_31();
    let contrast = find_positive_plane(&s1, PlaneStrategy::PaperPreset).max_k;
    let spec = paper_plane_spec(&s1).unwrap_or_default();
    outcome(max_k < TOL && contrast > TOL, format!("max K over {} planes {max_k:.2e}; associate plane {spec} K {contrast:.6}", random.evaluated + pairs.evaluated))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("einstein certification of the symmetric algebras", criterion_1),
        ("attached algebras are Einstein with the parent constant", criterion_2),
        ("associated algebras are Einstein; Ricci conjugation law", criterion_3),
        ("attached-associated example; attach and associate commute", criterion_4),
        ("sectional curvature sign flip under attach", criterion_5),
        ("positive planes of so*(6) and sl(3,H) associates", criterion_6),
        ("dual-oracle agreement", criterion_7),
        ("nilradical Ricci difference identity", criterion_8),
        ("structural suites", criterion_9),
        ("nonpositivity evidence for the symmetric metric", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let r = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        println!("criterion {:>2}: {} - {name} ({})", n + 1, if r.ok { "PASS" } else { "FAIL" }, r.detail);
        if !r.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
