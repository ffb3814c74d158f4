//! Restricted root systems of the five supported families, in the
//! ω-coordinates of a*, with exact rational duality and gradings.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::ScalarField;
use crate::error::{Error, Result};

/// Largest rank accepted anywhere (sweeps enumerate `2^rank - 1` supports).
pub const MAX_RANK: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Orthogonal { p: usize, q: usize },
    Unitary { p: usize, q: usize },
    Symplectic { p: usize, q: usize },
    SoStar { n: usize },
    SlQuaternion { n: usize },
}

impl Family {
    /// Parses a family name (`orthogonal`, `unitary`, `symplectic`,
    /// `so_star`, `sl_quaternion`, or the short forms `so`, `su`, `sp`,
    /// `sostar`, `slh`) with its integer parameters, and validates them.
    pub fn new(name: &str, params: &[usize]) -> Result<Self> {
        let two = |f: fn(usize, usize) -> Family| match params {
            [p, q] => Ok(f(*p, *q)),
            _ => Err(Error::Param(format!("family `{name}` takes two parameters p q"))),
        };
        let one = |f: fn(usize) -> Family| match params {
            [n] => Ok(f(*n)),
            _ => Err(Error::Param(format!("family `{name}` takes one parameter n"))),
        };
        let family = match name.to_ascii_lowercase().as_str() {
            "orthogonal" | "so" => two(|p, q| Family::Orthogonal { p, q })?,
            "unitary" | "su" => two(|p, q| Family::Unitary { p, q })?,
            "symplectic" | "sp" => two(|p, q| Family::Symplectic { p, q })?,
            "so_star" | "sostar" | "so*" => one(|n| Family::SoStar { n })?,
            "sl_quaternion" | "slh" | "sl_h" => one(|n| Family::SlQuaternion { n })?,
            other => return Err(Error::Param(format!("unknown family `{other}`"))),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => {
                if p < 1 || q < p {
                    return Err(Error::Param(format!("{self}: need q >= p >= 1")));
                }
                if matches!(self, Family::Orthogonal { .. }) && p == 1 && q == 1 {
                    return Err(Error::Param("orthogonal(1,1) has no restricted roots".into()));
                }
            }
            Family::SoStar { n } if n < 4 => {
                return Err(Error::Param(format!("{self}: need n >= 4")));
            }
            Family::SlQuaternion { n } if n < 2 => {
                return Err(Error::Param(format!("{self}: need n >= 2")));
            }
            _ => {}
        }
        if self.rank() > MAX_RANK {
            return Err(Error::Param(format!("{self}: rank {} exceeds {MAX_RANK}", self.rank())));
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Orthogonal { .. } => "orthogonal",
            Family::Unitary { .. } => "unitary",
            Family::Symplectic { .. } => "symplectic",
            Family::SoStar { .. } => "so_star",
            Family::SlQuaternion { .. } => "sl_quaternion",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => vec![p, q],
            Family::SoStar { n } | Family::SlQuaternion { n } => vec![n],
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Family::Orthogonal { p, .. } | Family::Unitary { p, .. } | Family::Symplectic { p, .. } => p,
            Family::SoStar { n } => n / 2,
            Family::SlQuaternion { n } => n - 1,
        }
    }

    /// Number of ω-coordinates; exceeds the rank by one for `sl_quaternion`,
    /// whose torus is the trace-zero hyperplane.
    pub fn omega_dim(&self) -> usize {
        match *self {
            Family::SlQuaternion { n } => n,
            _ => self.rank(),
        }
    }

    /// Scalar field of the `(p, q)` families.
    pub fn field(&self) -> Option<ScalarField> {
        match self {
            Family::Orthogonal { .. } => Some(ScalarField::Real),
            Family::Unitary { .. } => Some(ScalarField::Complex),
            Family::Symplectic { .. } => Some(ScalarField::Quaternion),
            _ => None,
        }
    }

    /// `(p, q)` for the first three families.
    pub fn pq(&self) -> Option<(usize, usize)> {
        match *self {
            Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => Some((p, q)),
            _ => None,
        }
    }

    /// Dimension of the centralizer of a in k.
    pub fn dim_m(&self) -> usize {
        match *self {
            Family::Orthogonal { p, q } => (q - p) * (q - p).saturating_sub(1) / 2,
            Family::Unitary { p, q } => (q - p) * (q - p) + p - 1,
            Family::Symplectic { p, q } => 3 * p + (q - p) * (2 * (q - p) + 1),
            Family::SoStar { n } => 3 * (n / 2) + n % 2,
            Family::SlQuaternion { n } => 3 * n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

/// Integer linear functional on a in ω-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i32>,
    pub label: String,
}

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        assert!(coords.iter().any(|&c| c != 0), "roots are nonzero");
        let label = root_label(&coords);
        Root { coords, label }
    }

    /// `α(h)` for ω-coordinates `h`.
    pub fn eval(&self, h: &[f64]) -> f64 {
        self.coords.iter().zip(h).map(|(&c, &x)| c as f64 * x).sum()
    }

    pub fn eval_exact(&self, h: &[Rational64]) -> Rational64 {
        self.coords.iter().zip(h).map(|(&c, x)| Rational64::from_integer(c as i64) * x).sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Canonical label: positive terms first, then by descending index, e.g.
/// `w3-w2`, `w1-w2`, `w2+w1`, `2w1`.
pub fn root_label(coords: &[i32]) -> String {
    let mut terms: Vec<(usize, i32)> = coords.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect();
    terms.sort_by(|a, b| (b.1 > 0).cmp(&(a.1 > 0)).then(b.0.cmp(&a.0)));
    let mut s = String::new();
    for (pos, (idx, c)) in terms.into_iter().enumerate() {
        if c < 0 {
            s.push('-');
        } else if pos > 0 {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("w{idx}"));
    }
    s
}

/// Parses a label produced by [`root_label`] back into coordinates.
pub fn parse_root_label(label: &str, omega_dim: usize) -> Result<Vec<i32>> {
    let bad = || Error::Parse(format!("malformed root label `{label}`"));
    let mut coords = vec![0i32; omega_dim];
    let mut rest = label;
    while !rest.is_empty() {
        let (sign, after) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let w = after.find('w').ok_or_else(bad)?;
        let coef: i32 = if w == 0 { 1 } else { after[..w].parse().map_err(|_| bad())? };
        let tail = &after[w + 1..];
        let end = tail.find(['+', '-']).unwrap_or(tail.len());
        let idx: usize = tail[..end].parse().map_err(|_| bad())?;
        if idx == 0 || idx > omega_dim {
            return Err(bad());
        }
        coords[idx - 1] += sign * coef;
        rest = &tail[end..];
    }
    Ok(coords)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub root: Root,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    family: Family,
    positive: Vec<PositiveRoot>,
    simple: Vec<usize>,
    /// Coefficients of each positive root over Λ.
    expansions: Vec<Vec<i64>>,
    /// ω-coordinates of the dual basis H^1..H^r.
    dual: Vec<Vec<Rational64>>,
}

fn unit(dim: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; dim];
    v[i - 1] = 1;
    v
}

fn combo(dim: usize, terms: &[(usize, i32)]) -> Vec<i32> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i - 1] += c;
    }
    v
}

impl RootSystem {
    pub fn new(family: Family) -> Result<Self> {
        family.validate()?;
        let d = family.omega_dim();
        let mut positive = Vec::new();
        let mut push = |coords: Vec<i32>, mult: usize| {
            if mult > 0 {
                positive.push(PositiveRoot { root: Root::new(coords), mult });
            }
        };
        let simple_coords: Vec<Vec<i32>>;
        match family {
            Family::Orthogonal { p, q } | Family::Unitary { p, q } | Family::Symplectic { p, q } => {
                let dm = family.field().expect("pq family").block_dim();
                for k in 1..=p {
                    push(unit(d, k), dm * (q - p));
                }
                for i in 1..=p {
                    for j in i + 1..=p {
                        push(combo(d, &[(j, 1), (i, -1)]), dm);
                        push(combo(d, &[(j, 1), (i, 1)]), dm);
                    }
                }
                for k in 1..=p {
                    push(combo(d, &[(k, 2)]), dm - 1);
                }
                let first = if q > p {
                    unit(d, 1)
                } else if dm == 1 {
                    combo(d, &[(2, 1), (1, 1)])
                } else {
                    combo(d, &[(1, 2)])
                };
                simple_coords = std::iter::once(first).chain((2..=p).map(|i| combo(d, &[(i, 1), (i - 1, -1)]))).collect();
            }
            Family::SoStar { n } => {
                let m = n / 2;
                for j in 1..=m {
                    for k in j + 1..=m {
                        push(combo(d, &[(j, 1), (k, -1)]), 4);
                        push(combo(d, &[(j, 1), (k, 1)]), 4);
                    }
                }
                for j in 1..=m {
                    push(combo(d, &[(j, 2)]), 1);
                }
                if n % 2 == 1 {
                    for j in 1..=m {
                        push(unit(d, j), 4);
                    }
                }
                let last = if n % 2 == 0 { combo(d, &[(m, 2)]) } else { unit(d, m) };
                simple_coords = (1..m).map(|j| combo(d, &[(j, 1), (j + 1, -1)])).chain(std::iter::once(last)).collect();
            }
            Family::SlQuaternion { n } => {
                for j in 1..=n {
                    for k in j + 1..=n {
                        push(combo(d, &[(k, 1), (j, -1)]), 4);
                    }
                }
                simple_coords = (1..n).map(|i| combo(d, &[(i + 1, 1), (i, -1)])).collect();
            }
        }
        let simple: Vec<usize> = simple_coords
            .iter()
            .map(|c| positive.iter().position(|r| &r.root.coords == c).ok_or_else(|| Error::Internal(format!("simple root {} is not positive", root_label(c)))))
            .collect::<Result<_>>()?;

        let dual = dual_basis_exact(&family, &simple_coords)?;
        let expansions = positive
            .iter()
            .map(|r| {
                let e: Vec<Rational64> = dual.iter().map(|h| r.root.eval_exact(h)).collect();
                e.iter()
                    .map(|x| {
                        if !x.is_integer() || x.is_negative() {
                            Err(Error::Internal(format!("root {} is not a nonnegative integer combination of simple roots", r.root)))
                        } else {
                            Ok(x.to_integer())
                        }
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(RootSystem { family, positive, simple, expansions, dual })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn omega_dim(&self) -> usize {
        self.family.omega_dim()
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    /// Indices into [`Self::positive_roots`] of Λ, in order.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<&Root> {
        self.simple.iter().map(|&i| &self.positive[i].root).collect()
    }

    pub fn expansion(&self, root_index: usize) -> &[i64] {
        &self.expansions[root_index]
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.positive.iter().position(|r| r.root.coords == coords)
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.positive.iter().position(|r| r.root.label == label)
    }

    /// ω-coordinates of the dual basis, exactly.
    pub fn dual_basis_exact(&self) -> &[Vec<Rational64>] {
        &self.dual
    }

    pub fn dual_basis(&self) -> Vec<Vec<f64>> {
        self.dual.iter().map(|h| h.iter().map(ratio_to_f64).collect()).collect()
    }

    pub fn dim_n(&self) -> usize {
        self.positive.iter().map(|r| r.mult).sum()
    }

    /// Weighted inner product `2 B(A, A')` on a in ω-coordinates:
    /// `4 Σ_{α>0} mult(α) α_k α_l`.
    pub fn omega_metric(&self) -> DMatrix<f64> {
        let d = self.omega_dim();
        let mut g = DMatrix::zeros(d, d);
        for r in &self.positive {
            for k in 0..d {
                for l in 0..d {
                    g[(k, l)] += 4.0 * r.mult as f64 * r.root.coords[k] as f64 * r.root.coords[l] as f64;
                }
            }
        }
        g
    }

    /// Invariant inner product of two roots, up to a positive global factor.
    /// The ω-coordinates are orthonormal for a Weyl-invariant form in every
    /// family here (for `sl_quaternion` all roots lie in the trace-zero
    /// hyperplane, where the same holds).
    pub fn root_dot(&self, a: &Root, b: &Root) -> i64 {
        a.coords.iter().zip(&b.coords).map(|(&x, &y)| x as i64 * y as i64).sum()
    }

    /// `α(Z)` for every positive root, exactly.
    pub fn levels(&self, z: &CharacteristicElement) -> Result<Vec<i64>> {
        self.check_z(z)?;
        Ok(self.expansions.iter().map(|e| e.iter().zip(&z.coeffs).map(|(a, &c)| a * c as i64).sum()).collect())
    }

    /// ω-coordinates of `Z = Σ c_i H^i`, exactly.
    pub fn z_coords_exact(&self, z: &CharacteristicElement) -> Result<Vec<Rational64>> {
        self.check_z(z)?;
        let mut out = vec![Rational64::zero(); self.omega_dim()];
        for (h, &c) in self.dual.iter().zip(&z.coeffs) {
            for (o, x) in out.iter_mut().zip(h) {
                *o += x * Rational64::from_integer(c as i64);
            }
        }
        Ok(out)
    }

    fn check_z(&self, z: &CharacteristicElement) -> Result<()> {
        if z.coeffs.len() != self.rank() {
            return Err(Error::Param(format!("characteristic element has {} coefficients, rank is {}", z.coeffs.len(), self.rank())));
        }
        Ok(())
    }
}

fn ratio_to_f64(x: &Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Solves `α_i(H^j) = δ_ij` (plus `Σ h = 0` for `sl_quaternion`) by exact
/// Gauss–Jordan elimination.
fn dual_basis_exact(family: &Family, simple: &[Vec<i32>]) -> Result<Vec<Vec<Rational64>>> {
    let d = family.omega_dim();
    let r = simple.len();
    let mut rows: Vec<Vec<Rational64>> = simple.iter().map(|c| c.iter().map(|&x| Rational64::from_integer(x as i64)).collect()).collect();
    if matches!(family, Family::SlQuaternion { .. }) {
        rows.push(vec![Rational64::one(); d]);
    }
    if rows.len() != d {
        return Err(Error::DegenerateRootSystem);
    }
    (0..r)
        .map(|j| {
            let rhs: Vec<Rational64> = (0..d).map(|i| if i == j { Rational64::one() } else { Rational64::zero() }).collect();
            solve_exact(rows.clone(), rhs)
        })
        .collect()
}

fn solve_exact(mut a: Vec<Vec<Rational64>>, mut b: Vec<Rational64>) -> Result<Vec<Rational64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::DegenerateRootSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        b[col] *= inv;
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col];
                for k in 0..n {
                    let v = a[col][k];
                    a[row][k] -= f * v;
                }
                let v = b[col];
                b[row] -= f * v;
            }
        }
    }
    Ok(b)
}

/// `Z = Σ c_i H^i` over Λ. Zero coefficients mark simple roots kept in Λ′.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacteristicElement {
    pub coeffs: Vec<u32>,
}

impl CharacteristicElement {
    pub fn new(coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::Param("characteristic element needs at least one positive coefficient".into()));
        }
        Ok(CharacteristicElement { coeffs })
    }

    /// Indicator of a nonempty support set (coefficients 1).
    pub fn from_support(rank: usize, support: &[usize]) -> Result<Self> {
        let mut coeffs = vec![0; rank];
        for &i in support {
            if i >= rank {
                return Err(Error::Param(format!("support index {i} out of range for rank {rank}")));
            }
            coeffs[i] = 1;
        }
        Self::new(coeffs)
    }

    /// Parses `"1,1,0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient `{t}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    /// 0-based indices of the positive coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect()
    }

    pub fn is_full(&self) -> bool {
        self.coeffs.iter().all(|&c| c > 0)
    }
}

impl fmt::Display for CharacteristicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// Positive roots by level `α(Z)`.
pub fn grade(rs: &RootSystem, z: &CharacteristicElement) -> Result<BTreeMap<i64, Vec<usize>>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    // Evaluate through the dual basis directly so the integrality claim is
    // checked rather than assumed from the stored expansions.
    let zc = rs.z_coords_exact(z)?;
    for (i, r) in rs.positive_roots().iter().enumerate() {
        let level = r.root.eval_exact(&zc);
        if !level.is_integer() {
            return Err(Error::Internal(format!("root {} has non-integer level {level}", r.root)));
        }
        let level = level.to_integer();
        if level < 0 {
            return Err(Error::Internal(format!("positive root {} has negative level {level}", r.root)));
        }
        out.entry(level).or_default().push(i);
    }
    if out.keys().all(|&l| l == 0) {
        return Err(Error::Internal("no root has positive level".into()));
    }
    Ok(out)
}

/// Simple roots with `α_i(Z) = 0`, as indices into Λ.
pub fn lambda_prime(rs: &RootSystem, z: &CharacteristicElement) -> Result<Vec<usize>> {
    rs.check_z(z)?;
    Ok(z.coeffs.iter().enumerate().filter(|(_, &c)| c == 0).map(|(i, _)| i).collect())
}

/// True iff every simple root in `subset` (indices into Λ) is orthogonal to
/// every simple root outside it.
pub fn is_trivial_subset(rs: &RootSystem, subset: &[usize]) -> bool {
    let simple = rs.simple_roots();
    let inside = |i: usize| subset.contains(&i);
    (0..simple.len()).filter(|&i| inside(i)).all(|i| (0..simple.len()).filter(|&j| !inside(j)).all(|j| rs.root_dot(simple[i], simple[j]) == 0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MPrime {
    pub dim: usize,
    /// Level-0 positive roots; their negatives also lie in g^0.
    pub root_labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanglandsDecomposition {
    /// Dual-basis indices (0-based) spanning a_{Λ′}.
    pub a_prime: Vec<usize>,
    pub m_prime: MPrime,
    /// Indices of positive roots with `α(Z) > 0`.
    pub n_prime: Vec<usize>,
    pub dim_n_prime: usize,
}

pub fn langlands(rs: &RootSystem, z: &CharacteristicElement) -> Result<LanglandsDecomposition> {
    let levels = rs.levels(z)?;
    let a_prime = z.support();
    let n_prime: Vec<usize> = (0..levels.len()).filter(|&i| levels[i] > 0).collect();
    let zero: Vec<usize> = (0..levels.len()).filter(|&i| levels[i] == 0).collect();
    let roots = rs.positive_roots();
    let dim_n_prime = n_prime.iter().map(|&i| roots[i].mult).sum();
    let m_dim = rs.family().dim_m() + (rs.rank() - a_prime.len()) + 2 * zero.iter().map(|&i| roots[i].mult).sum::<usize>();
    Ok(LanglandsDecomposition {
        a_prime,
        m_prime: MPrime { dim: m_dim, root_labels: zero.iter().map(|&i| roots[i].root.label.clone()).collect() },
        n_prime,
        dim_n_prime,
    })
}
