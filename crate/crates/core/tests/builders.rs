use nalgebra::DMatrix;

use solvcurv::algebra::{gram_matrix, AmbientKilling, BilinearForm};
use solvcurv::builders::{verify_adapted, verify_iwasawa};
use solvcurv::roots::langlands;
use solvcurv::{build_symmetric, CharacteristicElement, Family, RootSystem};

/// `dim G/K`, which is also `dim a + dim n`.
fn symmetric_space_dim(f: Family) -> usize {
    match f {
        Family::Orthogonal { p, q } => p * q,
        Family::Unitary { p, q } => 2 * p * q,
        Family::Symplectic { p, q } => 4 * p * q,
        Family::SoStar { n } => n * n - n,
        Family::SlQuaternion { n } => 2 * n * n - n - 1,
    }
}

fn sample() -> Vec<Family> {
    vec![
        Family::Orthogonal { p: 2, q: 2 },
        Family::Orthogonal { p: 3, q: 5 },
        Family::Unitary { p: 2, q: 2 },
        Family::Unitary { p: 1, q: 4 },
        Family::Symplectic { p: 1, q: 1 },
        Family::Symplectic { p: 2, q: 3 },
        Family::SoStar { n: 4 },
        Family::SoStar { n: 5 },
        Family::SlQuaternion { n: 2 },
        Family::SlQuaternion { n: 4 },
    ]
}

#[test]
fn dimensions_match_symmetric_spaces() {
    for f in sample() {
        let (s, real) = build_symmetric(f).unwrap();
        assert_eq!(s.dim(), symmetric_space_dim(f), "{f}");
        assert_eq!(s.dim_a(), f.rank(), "{f}");
        assert_eq!(real.basis.len(), s.dim());
        assert!(s.structure().jacobi_defect() < 1e-10, "{f}");
        assert!(verify_adapted(&s).passed(), "{f}: {:?}", verify_adapted(&s).violations);
        assert!(verify_iwasawa(&s).passed(), "{f}");
    }
}

#[test]
fn g_dimension_from_langlands_data() {
    // dim g = dim m + dim a + 2 dim n, checked at the trivial grading
    // boundary: every support yields dim g = dim m' + dim a' + 2 dim n'
    for f in sample() {
        let rs = RootSystem::new(f).unwrap();
        let dim_g = match f {
            Family::Orthogonal { p, q } => (p + q) * (p + q - 1) / 2,
            Family::Unitary { p, q } => (p + q) * (p + q) - 1,
            Family::Symplectic { p, q } => (p + q) * (2 * (p + q) + 1),
            Family::SoStar { n } => n * (2 * n - 1),
            Family::SlQuaternion { n } => 4 * n * n - 1,
        };
        for mask in 1u32..(1 << f.rank()) {
            let z = CharacteristicElement::new((0..f.rank()).map(|i| (mask >> i) & 1).collect()).unwrap();
            let l = langlands(&rs, &z).unwrap();
            assert_eq!(l.m_prime.dim + l.a_prime.len() + 2 * l.dim_n_prime, dim_g, "{f} z={z}");
        }
    }
}

#[test]
fn label_order_is_fixed() {
    let (s, _) = build_symmetric(Family::Orthogonal { p: 2, q: 3 }).unwrap();
    assert_eq!(s.labels(), ["a:H1", "a:H2", "n[w1]:U15", "n[w2]:U25", "n[w2-w1]:Y12-", "n[w2+w1]:Y12+"]);
    let (s, _) = build_symmetric(Family::Unitary { p: 1, q: 2 }).unwrap();
    assert_eq!(s.labels(), ["a:H1", "n[w1]:U13", "n[w1]:V13", "n[2w1]:W1"]);
}

#[test]
fn realization_is_orthonormal_for_weighted_forms() {
    for f in sample() {
        let (_, real) = build_symmetric(f).unwrap();
        let n = real.basis.len();
        let g = gram_matrix(&real.basis, BilinearForm::AmbientKillingWeighted { a_block: real.dim_a }).unwrap();
        assert!((&g - DMatrix::identity(n, n)).amax() < 1e-9, "{f}: weighted B_sigma Gram is not the identity");
        let tr = gram_matrix(&real.basis, BilinearForm::AmbientTrace { a_block: real.dim_a }).unwrap();
        assert!((tr * real.killing_scale - DMatrix::identity(n, n)).amax() < 1e-9, "{f}: trace Gram");
    }
}

#[test]
fn killing_scale_matches_lie_closure() {
    for f in [Family::Orthogonal { p: 2, q: 3 }, Family::Unitary { p: 1, q: 2 }, Family::SoStar { n: 4 }, Family::SlQuaternion { n: 2 }] {
        let (_, real) = build_symmetric(f).unwrap();
        let els = real.basis.elements();
        let k = AmbientKilling::new(els).unwrap();
        let x = &els[0];
        let y = &els[els.len() - 1];
        let lhs = k.killing(x, x).unwrap();
        let rhs = real.killing_scale * x.mul(x).unwrap().flatten().iter().step_by(x.dim() + 1).sum::<f64>();
        assert!((lhs - rhs).abs() < 1e-9, "{f}: {lhs} vs {rhs}");
        let yy = y.mul(&y.cartan_involution()).unwrap();
        let b = -k.killing(y, &y.cartan_involution()).unwrap();
        let trace: f64 = yy.flatten().iter().step_by(y.dim() + 1).sum();
        assert!((b + real.killing_scale * trace).abs() < 1e-9, "{f}");
    }
}

#[test]
fn first_family_lambdas_agree() {
    for f in [Family::Orthogonal { p: 3, q: 5 }, Family::Unitary { p: 2, q: 4 }, Family::Symplectic { p: 2, q: 3 }] {
        let (_, real) = build_symmetric(f).unwrap();
        let la = real.lambda_a.expect("displayed a-basis");
        assert!((la - real.lambda_n).abs() < 1e-12, "{f}: {la} vs {}", real.lambda_n);
    }
}

#[test]
fn invalid_parameters() {
    for (name, params) in [("orthogonal", vec![3, 2]), ("orthogonal", vec![0, 3]), ("so_star", vec![3]), ("sl_quaternion", vec![1]), ("spin", vec![3]), ("unitary", vec![2])] {
        let err = Family::new(name, &params).unwrap_err();
        assert_eq!(err.kind(), "ParamError", "{name} {params:?}");
    }
}
