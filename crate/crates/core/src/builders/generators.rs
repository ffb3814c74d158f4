//! Raw root vectors and torus matrices for each family, at the scale of the
//! displayed bases (normalization happens in the builder).

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};

use crate::algebra::{ComplexMatrix, RealMatrix, ScalarField};
use crate::roots::Family;

#[derive(Debug, Clone)]
pub(crate) struct Generator {
    pub root: Vec<i32>,
    pub letter: &'static str,
    pub indices: Vec<usize>,
    /// Sign (`+`/`-`) and/or imaginary unit suffix.
    pub suffix: String,
    pub matrix: RealMatrix,
}

impl Generator {
    pub fn name(&self) -> String {
        let sep = if self.indices.iter().any(|&i| i >= 10) { "_" } else { "" };
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        format!("{}{}{}", self.letter, idx.join(sep), self.suffix)
    }
}

pub(crate) struct RawFamily {
    pub generators: Vec<Generator>,
    /// `torus[k]` is the matrix with `ω_l(torus[k]) = δ_kl` (for
    /// `sl_quaternion` only trace-zero combinations lie in g).
    pub torus: Vec<RealMatrix>,
    /// Frobenius norm squared of the displayed a-basis vectors, if the
    /// construction displays one.
    pub displayed_a_frobenius: Option<f64>,
}

pub(crate) fn raw_family(family: Family) -> RawFamily {
    match family {
        Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => pq_family(family.field().expect("pq family"), p, q),
        Family::SoStar { n } => so_star(n),
        Family::SlQuaternion { n } => sl_quaternion(n),
    }
}

fn omega(dim: usize, terms: &[(usize, i32)]) -> Vec<i32> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i - 1] += c;
    }
    v
}

/// so(p,q), su(p,q), sp(p,q) as `{A : A M + M A^* = 0}`, `M = diag(I_p, -I_q)`.
///
/// With `u_k^± = (e_k ± e_{p+k})/√2` and `g_m = e_m`, every root vector is
/// `R + τR` for `R = (u v^t) ⊗ ε` and `τR = -M R^t M` (scaled by √2 unless
/// `τR = R`):
///
/// | root        | (u, v)              | names          |
/// |-------------|---------------------|----------------|
/// | ω_k         | (u_k^+, g_m)        | U (ε=1), V     |
/// | ω_j - ω_i   | (u_j^+, u_i^+)      | Y (ε=1), Z     |
/// | ω_j + ω_i   | (u_j^+, u_i^-)      | Y (ε=1), Z     |
/// | 2ω_k        | (u_k^+, u_k^-)      | W (ε imaginary)|
fn pq_family(field: ScalarField, p: usize, q: usize) -> RawFamily {
    let units = field.units();
    let d = field.block_dim();
    let dim = p + q;
    let signature = RealMatrix::from_dmatrix(DMatrix::from_diagonal(&DVector::from_fn(dim, |i, _| if i < p { 1.0 } else { -1.0 }))).expect("square");
    let mt = signature.kron(&RealMatrix::identity(d));
    let tau = |r: &RealMatrix| mt.mul(&r.transpose()).and_then(|x| x.mul(&mt)).expect("same size").scaled(-1.0);
    let e = |k: usize| DVector::from_fn(dim, |i, _| if i + 1 == k { 1.0 } else { 0.0 });
    let up = |k: usize| (e(k) + e(p + k)) / SQRT_2;
    let um = |k: usize| (e(k) - e(p + k)) / SQRT_2;
    let gen = |u: DVector<f64>, v: DVector<f64>, block: &RealMatrix| {
        let outer = RealMatrix::from_dmatrix(&u * v.transpose()).expect("square");
        let r = outer.kron(block);
        let t = tau(&r);
        let self_conjugate = r.sub(&t).expect("same size").max_abs() < 1e-14;
        let x = r.add(&t).expect("same size");
        if self_conjugate {
            x
        } else {
            x.scaled(SQRT_2)
        }
    };

    let mut gens = Vec::new();
    for k in 1..=p {
        for m in 2 * p + 1..=dim {
            for u in &units {
                gens.push(Generator {
                    root: omega(p, &[(k, 1)]),
                    letter: if u.imaginary { "V" } else { "U" },
                    indices: vec![k, m],
                    suffix: u.suffix.to_string(),
                    matrix: gen(up(k), e(m), &u.block),
                });
            }
        }
    }
    for i in 1..=p {
        for j in i + 1..=p {
            for (sign, v) in [("-", up(i)), ("+", um(i))] {
                let s = if sign == "-" { -1 } else { 1 };
                for u in &units {
                    gens.push(Generator {
                        root: omega(p, &[(j, 1), (i, s)]),
                        letter: if u.imaginary { "Z" } else { "Y" },
                        indices: vec![i, j],
                        suffix: format!("{sign}{}", u.suffix),
                        matrix: gen(up(j), v.clone(), &u.block),
                    });
                }
            }
        }
    }
    for k in 1..=p {
        for u in units.iter().filter(|u| u.imaginary) {
            gens.push(Generator { root: omega(p, &[(k, 2)]), letter: "W", indices: vec![k], suffix: u.suffix.to_string(), matrix: gen(up(k), um(k), &u.block) });
        }
    }
    let torus: Vec<RealMatrix> = (1..=p)
        .map(|k| RealMatrix::from_entries(dim, &[(k, p + k, 1.0), (p + k, k, 1.0)]).kron(&RealMatrix::identity(d)))
        .collect();
    let fro = torus[0].frobenius_dot(&torus[0]);
    RawFamily { generators: gens, torus, displayed_a_frobenius: Some(fro) }
}

/// so*(2n) ⊂ gl(2n, ℂ), `m = ⌊n/2⌋`, root vectors as displayed, with `E`
/// the skew elementary matrix.
fn so_star(n: usize) -> RawFamily {
    let m = n / 2;
    let size = 2 * n;
    let mut gens = Vec::new();
    let add = |c: &mut ComplexMatrix, terms: &[(usize, usize, f64, f64)]| {
        for &(i, j, re, im) in terms {
            c.add_skew(i, j, re, im);
        }
    };
    for j in 1..=m {
        for k in j + 1..=m {
            for (s, sign) in [(-1.0, "-"), (1.0, "+")] {
                // upper sign of the display is the `+` root ω_j + ω_k
                let (a, b, c, dd) = (2 * j - 1, 2 * j, 2 * k - 1, 2 * k);
                let mut am = ComplexMatrix::zeros(size);
                add(&mut am, &[(a, c, 1.0, 0.0), (b, dd, -s, 0.0), (n + a, n + c, 1.0, 0.0), (n + b, n + dd, -s, 0.0)]);
                add(&mut am, &[(a, dd, 0.0, -s), (b, c, 0.0, -1.0), (n + a, n + dd, 0.0, s), (n + b, n + c, 0.0, 1.0)]);
                let mut bm = ComplexMatrix::zeros(size);
                add(&mut bm, &[(a, dd, 1.0, 0.0), (b, c, s, 0.0), (n + a, n + dd, 1.0, 0.0), (n + b, n + c, s, 0.0)]);
                add(&mut bm, &[(a, c, 0.0, s), (b, dd, 0.0, -1.0), (n + a, n + c, 0.0, -s), (n + b, n + dd, 0.0, 1.0)]);
                let mut cm = ComplexMatrix::zeros(size);
                add(&mut cm, &[(a, n + dd, 1.0, 0.0), (b, n + c, -s, 0.0), (c, n + b, -s, 0.0), (dd, n + a, 1.0, 0.0)]);
                add(&mut cm, &[(a, n + c, 0.0, -s), (b, n + dd, 0.0, -1.0), (c, n + a, 0.0, s), (dd, n + b, 0.0, 1.0)]);
                let mut dm = ComplexMatrix::zeros(size);
                add(&mut dm, &[(a, n + c, 1.0, 0.0), (c, n + a, 1.0, 0.0), (b, n + dd, s, 0.0), (dd, n + b, s, 0.0)]);
                add(&mut dm, &[(a, n + dd, 0.0, s), (b, n + c, 0.0, -1.0), (c, n + b, 0.0, 1.0), (dd, n + a, 0.0, -s)]);
                let root = omega(m, &[(j, 1), (k, if s > 0.0 { 1 } else { -1 })]);
                for (letter, mut cmat) in [("A", am), ("B", bm), ("C", cm), ("D", dm)] {
                    cmat.scale(0.5);
                    gens.push(Generator { root: root.clone(), letter, indices: vec![j, k], suffix: sign.to_string(), matrix: cmat.embed() });
                }
            }
        }
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for k in 1..=m {
        let (a, b) = (2 * k - 1, 2 * k);
        let mut g = ComplexMatrix::zeros(size);
        add(&mut g, &[(a, n + a, r, 0.0), (b, n + b, r, 0.0), (a, n + b, 0.0, r), (b, n + a, 0.0, -r)]);
        gens.push(Generator { root: omega(m, &[(k, 2)]), letter: "G", indices: vec![k], suffix: String::new(), matrix: g.embed() });
    }
    if n % 2 == 1 {
        for k in 1..=m {
            let (a, b) = (2 * k - 1, 2 * k);
            let mut x = ComplexMatrix::zeros(size);
            add(&mut x, &[(b, n, r, 0.0), (n + b, 2 * n, r, 0.0), (a, n, 0.0, r), (n + a, 2 * n, 0.0, -r)]);
            let mut y = ComplexMatrix::zeros(size);
            add(&mut y, &[(a, n, r, 0.0), (n + a, 2 * n, r, 0.0), (b, n, 0.0, -r), (n + b, 2 * n, 0.0, r)]);
            let mut z = ComplexMatrix::zeros(size);
            add(&mut z, &[(b, 2 * n, r, 0.0), (n, n + b, r, 0.0), (a, 2 * n, 0.0, r), (n, n + a, 0.0, -r)]);
            let mut w = ComplexMatrix::zeros(size);
            add(&mut w, &[(a, 2 * n, r, 0.0), (n, n + a, r, 0.0), (b, 2 * n, 0.0, -r), (n, n + b, 0.0, r)]);
            for (letter, cmat) in [("X", x), ("Y", y), ("Z", z), ("W", w)] {
                gens.push(Generator { root: omega(m, &[(k, 1)]), letter, indices: vec![k], suffix: String::new(), matrix: cmat.embed() });
            }
        }
    }
    let torus: Vec<RealMatrix> = (1..=m)
        .map(|k| {
            let mut t = ComplexMatrix::zeros(size);
            add(&mut t, &[(2 * k - 1, 2 * k, 0.0, 1.0), (n + 2 * k - 1, n + 2 * k, 0.0, -1.0)]);
            t.embed()
        })
        .collect();
    // displayed torus vectors carry an extra 1/√2
    let fro = torus[0].frobenius_dot(&torus[0]) / 2.0;
    RawFamily { generators: gens, torus, displayed_a_frobenius: Some(fro) }
}

/// sl(n, ℍ) ⊂ gl(2n, ℂ). The displayed vectors are upper triangular; their
/// images under σ are the root vectors for `Δ⁺ = {ω_k - ω_j : j < k}`, which
/// is what is built here (`e` is the elementary unit matrix):
///
/// A = i√2 (e_kj - e_{n+k,n+j}),  B = i√2 (e_{k,n+j} + e_{n+k,j}),
/// C = √2 (e_{k,n+j} - e_{n+k,j}), D = -√2 (e_kj + e_{n+k,n+j}).
fn sl_quaternion(n: usize) -> RawFamily {
    let size = 2 * n;
    let mut gens = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            let mut a = ComplexMatrix::zeros(size);
            a.add_unit(k, j, 0.0, SQRT_2).add_unit(n + k, n + j, 0.0, -SQRT_2);
            let mut b = ComplexMatrix::zeros(size);
            b.add_unit(k, n + j, 0.0, SQRT_2).add_unit(n + k, j, 0.0, SQRT_2);
            let mut c = ComplexMatrix::zeros(size);
            c.add_unit(k, n + j, SQRT_2, 0.0).add_unit(n + k, j, -SQRT_2, 0.0);
            let mut d = ComplexMatrix::zeros(size);
            d.add_unit(k, j, -SQRT_2, 0.0).add_unit(n + k, n + j, -SQRT_2, 0.0);
            for (letter, cmat) in [("A", a), ("B", b), ("C", c), ("D", d)] {
                gens.push(Generator { root: omega(n, &[(k, 1), (j, -1)]), letter, indices: vec![j, k], suffix: String::new(), matrix: cmat.embed() });
            }
        }
    }
    let torus = (1..=n)
        .map(|k| {
            let mut t = ComplexMatrix::zeros(size);
            t.add_unit(k, k, 1.0, 0.0).add_unit(n + k, n + k, 1.0, 0.0);
            t.embed()
        })
        .collect();
    RawFamily { generators: gens, torus, displayed_a_frobenius: None }
}
