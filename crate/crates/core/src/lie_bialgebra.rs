//! First-order layer: Lie algebras by dense structure constants, classical
//! r-matrices, cocommutators, the classical Yang–Baxter equation and the
//! 1-cocycle condition.
//!
//! The deformation parameter is kept as a formal scalar: every tensor here
//! carries a `z_power` and rational coefficients of that power of `z`.

use std::time::Instant;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::nc_hopf::{AlgebraError, AlgebraSpec, NCElement};
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("unknown basis symbol `{0}`")]
    UnknownSymbol(String),
    #[error("basis change is singular")]
    Singular,
    #[error("new basis does not close under the bracket: [{0},{1}] leaves its span")]
    NotClosed(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `[Xᵢ, Xⱼ] = Σₖ cᵢⱼᵏ Xₖ`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    name: String,
    basis: Vec<String>,
    /// `consts[i][j][k] = cᵢⱼᵏ`
    consts: Vec<Vec<Vec<Rational>>>,
}

/// `[X, Y] = Σ c·Z` as `(X, Y, [(Z, c)])`.
pub type BracketSpec<'a> = (&'a str, &'a str, &'a [(&'a str, Rational)]);

impl LieAlgebraSpec {
    /// Brackets are given for one ordering of each pair; the other follows
    /// by antisymmetry and unlisted pairs commute.
    pub fn new(name: &str, basis: &[&str], brackets: &[BracketSpec]) -> Result<Self, LieError> {
        let n = basis.len();
        let mut spec = LieAlgebraSpec {
            name: name.to_string(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            consts: vec![vec![vec![Rational::zero(); n]; n]; n],
        };
        for (x, y, rhs) in brackets {
            let (i, j) = (spec.index_of(x)?, spec.index_of(y)?);
            for (g, c) in rhs.iter() {
                let k = spec.index_of(g)?;
                spec.consts[i][j][k] += c;
                spec.consts[j][i][k] -= c;
            }
        }
        Ok(spec)
    }

    fn from_consts(name: &str, basis: Vec<String>, consts: Vec<Vec<Vec<Rational>>>) -> Self {
        LieAlgebraSpec { name: name.to_string(), basis, consts }
    }

    /// Classical two-photon algebra in the basis `B+, N, M, A+, A-, B-`.
    pub fn h6() -> Self {
        let one = || int(1);
        Self::new(
            "h6",
            &["B+", "N", "M", "A+", "A-", "B-"],
            &[
                ("N", "A+", &[("A+", one())]),
                ("N", "A-", &[("A-", int(-1))]),
                ("A-", "A+", &[("M", one())]),
                ("N", "B+", &[("B+", int(2))]),
                ("N", "B-", &[("B-", int(-2))]),
                ("B-", "B+", &[("N", int(4)), ("M", int(2))]),
                ("A+", "B-", &[("A-", int(-2))]),
                ("A-", "B+", &[("A+", int(2))]),
            ],
        )
        .expect("built-in table")
    }

    /// Classical (1+1) Schrödinger algebra in the basis `H, D, M, P, K, C`.
    pub fn schrodinger() -> Self {
        let one = || int(1);
        Self::new(
            "schrodinger",
            &["H", "D", "M", "P", "K", "C"],
            &[
                ("D", "P", &[("P", int(-1))]),
                ("D", "K", &[("K", one())]),
                ("K", "P", &[("M", one())]),
                ("D", "H", &[("H", int(-2))]),
                ("D", "C", &[("C", int(2))]),
                ("H", "C", &[("D", one())]),
                ("K", "H", &[("P", one())]),
                ("P", "C", &[("K", int(-1))]),
            ],
        )
        .expect("built-in table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, s: &str) -> Result<usize, LieError> {
        self.basis.iter().position(|b| b == s).ok_or_else(|| LieError::UnknownSymbol(s.to_string()))
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[i][j][k]
    }

    /// `[eᵢ, eⱼ]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.consts[i][j]
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in (0..n).filter(|&i| !u[i].is_zero()) {
            for j in (0..n).filter(|&j| !v[j].is_zero()) {
                let c = &u[i] * &v[j];
                for (o, s) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !s.is_zero() {
                        *o += &c * s;
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn render_vector(&self, v: &[Rational]) -> String {
        join(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| scaled(c, &self.basis[i])))
    }

    /// Antisymmetry and the Jacobi identity on all basis triples.
    pub fn verify_jacobi(&self) -> VerificationReport {
        let n = self.dim();
        let mut report = VerificationReport::new();
        let start = Instant::now();
        let antisym = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.consts[i][j][k] == -&self.consts[j][i][k])));
        report.push(
            CheckEntry::new("bialgebra", format!("{}/antisymmetry", self.name))
                .outcome(antisym, if antisym { "0" } else { "structure constants not antisymmetric" })
                .since(start),
        );
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let start = Instant::now();
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let mut res = self.bracket(&a, &self.bracket(&b, &c));
                    add_into(&mut res, &self.bracket(&b, &self.bracket(&c, &a)));
                    add_into(&mut res, &self.bracket(&c, &self.bracket(&a, &b)));
                    let zero = res.iter().all(Zero::is_zero);
                    let name = format!("{}/jacobi/{},{},{}", self.name, self.basis[i], self.basis[j], self.basis[k]);
                    report.push(
                        CheckEntry::new("bialgebra", name).residual(zero, || self.render_vector(&res)).since(start),
                    );
                }
            }
        }
        report
    }

    /// `[x,y] = ...` lines for every nonzero bracket with `x` before `y`.
    pub fn table_lines(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.consts[i][j];
                if v.iter().any(|c| !c.is_zero()) {
                    out.push(format!("[{},{}] = {}", self.basis[i], self.basis[j], self.render_vector(v)));
                }
            }
        }
        out
    }
}

fn add_into(acc: &mut [Rational], v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn scaled(c: &Rational, body: &str) -> String {
    if c.is_one() {
        body.to_string()
    } else if *c == -Rational::one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

fn join(terms: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// A dense tensor of rank 2 or 3 over the basis, times `z^z_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTensor {
    dim: usize,
    rank: usize,
    z_power: u32,
    data: Vec<Rational>,
}

impl LieTensor {
    pub fn zero(dim: usize, rank: usize, z_power: u32) -> Self {
        LieTensor { dim, rank, z_power, data: vec![Rational::zero(); dim.pow(rank as u32)] }
    }

    fn idx(&self, ix: &[usize]) -> usize {
        ix.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, ix: &[usize]) -> &Rational {
        &self.data[self.idx(ix)]
    }

    pub fn add_at(&mut self, ix: &[usize], c: &Rational) {
        let p = self.idx(ix);
        self.data[p] += c;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn z_power(&self) -> u32 {
        self.z_power
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let (dim, rank) = (self.dim, self.rank);
        (0..self.data.len()).map(move |mut p| {
            let mut ix = vec![0; rank];
            for slot in ix.iter_mut().rev() {
                *slot = p % dim;
                p /= dim;
            }
            ix
        })
    }

    fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.indices().zip(self.data.iter()).filter(|(_, c)| !c.is_zero())
    }

    pub fn sub(&self, other: &LieTensor) -> LieTensor {
        assert_eq!((self.dim, self.rank), (other.dim, other.rank));
        let mut out = self.clone();
        if other.is_zero() {
            return out;
        }
        if self.is_zero() {
            out.z_power = other.z_power;
        } else {
            assert_eq!(self.z_power, other.z_power, "mixed z powers");
        }
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rank == 2 && self.nonzero().all(|(ix, c)| *self.get(&[ix[1], ix[0]]) == -c)
    }

    /// Sum over the cyclic permutations of a rank-3 tensor's legs.
    fn cyclic_sum(&self) -> LieTensor {
        assert_eq!(self.rank, 3);
        let mut out = LieTensor::zero(self.dim, 3, self.z_power);
        for (ix, c) in self.nonzero() {
            let (a, b, d) = (ix[0], ix[1], ix[2]);
            out.add_at(&[a, b, d], c);
            out.add_at(&[b, d, a], c);
            out.add_at(&[d, a, b], c);
        }
        out
    }

    /// Canonical text. Rank-2 antisymmetric tensors are written as wedges
    /// `Xᵢ∧Xⱼ` with `i > j`; other tensors as `Xᵢ⊗Xⱼ(⊗Xₖ)`.
    pub fn render(&self, basis: &[String]) -> String {
        let body = if self.is_antisymmetric() {
            let mut terms = Vec::new();
            for i in 0..self.dim {
                for j in 0..i {
                    let c = self.get(&[i, j]);
                    if !c.is_zero() {
                        terms.push(scaled(c, &format!("{}∧{}", basis[i], basis[j])));
                    }
                }
            }
            join(terms.into_iter())
        } else {
            join(self.nonzero().map(|(ix, c)| {
                let legs: Vec<&str> = ix.iter().map(|&i| basis[i].as_str()).collect();
                scaled(c, &legs.join("⊗"))
            }))
        };
        if body == "0" {
            return body;
        }
        let z = match self.z_power {
            0 => return body,
            1 => "z".to_string(),
            p => format!("z^{p}"),
        };
        if body.contains(' ') {
            format!("{z}*({body})")
        } else if let Some(rest) = body.strip_prefix('-') {
            format!("-{z}*{rest}")
        } else {
            format!("{z}*{body}")
        }
    }
}

/// An antisymmetric rank-2 tensor such as a classical r-matrix.
pub type WedgeElement = LieTensor;

/// `z^z_power · Σ c · (x∧y)` for `(x, y, c)` in `terms`.
pub fn wedge(spec: &LieAlgebraSpec, z_power: u32, terms: &[(&str, &str, Rational)]) -> Result<WedgeElement, LieError> {
    let mut w = LieTensor::zero(spec.dim(), 2, z_power);
    for (x, y, c) in terms {
        let (i, j) = (spec.index_of(x)?, spec.index_of(y)?);
        w.add_at(&[i, j], c);
        w.add_at(&[j, i], &-c);
    }
    Ok(w)
}

/// `r = z N∧B+`
pub fn h6_r(spec: &LieAlgebraSpec) -> WedgeElement {
    wedge(spec, 1, &[("N", "B+", int(1))]).expect("h6 basis")
}

/// `r = 2z H∧D + z H∧M`
pub fn schrodinger_r(spec: &LieAlgebraSpec) -> WedgeElement {
    wedge(spec, 1, &[("H", "D", int(2)), ("H", "M", int(1))]).expect("schrodinger basis")
}

/// The adjoint action `ad_x` applied legwise to a rank-2 tensor.
fn ad_tensor(spec: &LieAlgebraSpec, x: &[Rational], t: &LieTensor) -> LieTensor {
    let n = spec.dim();
    let mut out = LieTensor::zero(n, t.rank, t.z_power);
    for (ix, c) in t.nonzero() {
        for leg in 0..t.rank {
            let br = spec.bracket(x, &spec.unit(ix[leg]));
            for (k, d) in br.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
                let mut jx = ix.clone();
                jx[leg] = k;
                out.add_at(&jx, &(c * d));
            }
        }
    }
    out
}

/// `δ(X) = [1⊗X + X⊗1, r]`
pub fn cocommutator_from_r(spec: &LieAlgebraSpec, r: &WedgeElement, x: &str) -> Result<WedgeElement, LieError> {
    let i = spec.index_of(x)?;
    Ok(ad_tensor(spec, &spec.unit(i), r))
}

/// The Schouten bracket `[[r,r]] = [r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃]`.
pub fn schouten(spec: &LieAlgebraSpec, r: &WedgeElement) -> LieTensor {
    let n = spec.dim();
    let mut out = LieTensor::zero(n, 3, 2 * r.z_power);
    let terms: Vec<(Vec<usize>, Rational)> = r.nonzero().map(|(ix, c)| (ix, c.clone())).collect();
    for (ij, a) in &terms {
        for (kl, b) in &terms {
            let c = a * b;
            let (i, j, k, l) = (ij[0], ij[1], kl[0], kl[1]);
            for (m, s) in spec.bracket_basis(i, k).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.add_at(&[m, j, l], &(&c * s));
            }
            for (m, s) in spec.bracket_basis(j, k).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.add_at(&[i, m, l], &(&c * s));
            }
            for (m, s) in spec.bracket_basis(j, l).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.add_at(&[i, k, m], &(&c * s));
            }
        }
    }
    out
}

pub fn verify_cybe(spec: &LieAlgebraSpec, label: &str, r: &WedgeElement) -> VerificationReport {
    let start = Instant::now();
    let res = schouten(spec, r);
    let entry = CheckEntry::new("bialgebra", format!("{}/cybe/{label}", spec.name()))
        .param("r", r.render(spec.basis()))
        .residual(res.is_zero(), || res.render(spec.basis()))
        .since(start);
    std::iter::once(entry).collect()
}

/// Applies a cocommutator table to one leg of a rank-2 tensor, giving the
/// rank-3 tensor `(δ ⊗ id)(t)`.
fn delta_on_first_leg(spec: &LieAlgebraSpec, delta: &[WedgeElement], t: &LieTensor) -> LieTensor {
    let n = spec.dim();
    let zp = t.z_power + delta.iter().find(|d| !d.is_zero()).map_or(0, |d| d.z_power);
    let mut out = LieTensor::zero(n, 3, zp);
    for (ix, c) in t.nonzero() {
        for (jx, d) in delta[ix[0]].nonzero() {
            out.add_at(&[jx[0], jx[1], ix[1]], &(c * d));
        }
    }
    out
}

/// The 1-cocycle condition `δ([X,Y]) = ad_X δ(Y) − ad_Y δ(X)` for every
/// pair and co-Jacobi `Σ_cyc (δ⊗id)δ(X) = 0` for every basis element.
pub fn verify_cocycle(spec: &LieAlgebraSpec, label: &str, delta: &[WedgeElement]) -> Result<VerificationReport, LieError> {
    let n = spec.dim();
    if delta.len() != n {
        return Err(LieError::Dimension { expected: n, got: delta.len() });
    }
    let basis = spec.basis();
    let mut report = VerificationReport::new();
    let apply = |v: &[Rational]| {
        let zp = delta.iter().find(|d| !d.is_zero()).map_or(0, |d| d.z_power);
        let mut out = LieTensor::zero(n, 2, zp);
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (ix, d) in delta[k].nonzero() {
                out.add_at(&ix, &(c * d));
            }
        }
        out
    };
    for i in 0..n {
        for j in i + 1..n {
            let start = Instant::now();
            let lhs = apply(spec.bracket_basis(i, j));
            let rhs = ad_tensor(spec, &spec.unit(i), &delta[j]).sub(&ad_tensor(spec, &spec.unit(j), &delta[i]));
            let res = lhs.sub(&rhs);
            let name = format!("{}/cocycle/{label}/[{},{}]", spec.name(), basis[i], basis[j]);
            report.push(CheckEntry::new("bialgebra", name).residual(res.is_zero(), || res.render(basis)).since(start));
        }
    }
    for (i, d) in delta.iter().enumerate() {
        let start = Instant::now();
        let res = delta_on_first_leg(spec, delta, d).cyclic_sum();
        let name = format!("{}/co-jacobi/{label}/{}", spec.name(), basis[i]);
        report.push(CheckEntry::new("bialgebra", name).residual(res.is_zero(), || res.render(basis)).since(start));
    }
    Ok(report)
}

/// Solves `v = Σ xᵢ rowsᵢ` exactly. Returns `None` when `v` is outside the
/// span; panics are avoided by requiring independent rows up front.
fn solve_in_span(rows: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let m = rows.len();
    let n = v.len();
    // augmented system: n equations in m unknowns
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..m).map(|c| rows[c][r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][m].clone();
    }
    Some(x)
}

fn rank_of(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let mut r = 0;
    let cols = a.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Structure constants in a new basis `newᵢ = Σⱼ map[i][j] oldⱼ`. Fewer new
/// elements than the dimension describe a subalgebra, which must close.
pub fn basis_change(
    spec: &LieAlgebraSpec,
    name: &str,
    new_basis: &[&str],
    map: &[Vec<Rational>],
) -> Result<LieAlgebraSpec, LieError> {
    let m = new_basis.len();
    if map.len() != m {
        return Err(LieError::Dimension { expected: m, got: map.len() });
    }
    if let Some(row) = map.iter().find(|row| row.len() != spec.dim()) {
        return Err(LieError::Dimension { expected: spec.dim(), got: row.len() });
    }
    if rank_of(map) < m {
        return Err(LieError::Singular);
    }
    let mut consts = vec![vec![vec![Rational::zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            let br = spec.bracket(&map[i], &map[j]);
            consts[i][j] = solve_in_span(map, &br)
                .ok_or_else(|| LieError::NotClosed(new_basis[i].to_string(), new_basis[j].to_string()))?;
        }
    }
    Ok(LieAlgebraSpec::from_consts(name, new_basis.iter().map(|s| s.to_string()).collect(), consts))
}

/// Rows of the map `D = −N − M/2, P = A+, K = A-, H = B+/2, C = B-/2`
/// (and `M = M`) in the order `H, D, M, P, K, C`, over the h6 basis.
pub fn h6_to_schrodinger_map() -> Vec<Vec<Rational>> {
    let h6 = LieAlgebraSpec::h6();
    let row = |terms: &[(&str, Rational)]| {
        let mut v = vec![Rational::zero(); 6];
        for (g, c) in terms {
            v[h6.index_of(g).unwrap()] = c.clone();
        }
        v
    };
    vec![
        row(&[("B+", frac(1, 2))]),
        row(&[("N", int(-1)), ("M", frac(-1, 2))]),
        row(&[("M", int(1))]),
        row(&[("A+", int(1))]),
        row(&[("A-", int(1))]),
        row(&[("B-", frac(1, 2))]),
    ]
}

/// `J+ = B+/2, J- = −B-/2, J3 = N, I = −M/2`
pub fn sl2_map() -> Vec<Vec<Rational>> {
    let h6 = LieAlgebraSpec::h6();
    let row = |g: &str, c: Rational| {
        let mut v = vec![Rational::zero(); 6];
        v[h6.index_of(g).unwrap()] = c;
        v
    };
    vec![row("B+", frac(1, 2)), row("B-", frac(-1, 2)), row("N", int(1)), row("M", frac(-1, 2))]
}

/// The cocommutator tables as printed for the two built-in bialgebras.
pub fn h6_delta_table(spec: &LieAlgebraSpec) -> Vec<WedgeElement> {
    let w = |t: &[(&str, &str, Rational)]| wedge(spec, 1, t).unwrap();
    vec![
        w(&[]),
        w(&[("N", "B+", int(2))]),
        w(&[]),
        w(&[("A+", "B+", int(-1))]),
        w(&[("A-", "B+", int(1)), ("N", "A+", int(2))]),
        w(&[("B-", "B+", int(2)), ("N", "M", int(2))]),
    ]
}

pub fn schrodinger_delta_table(spec: &LieAlgebraSpec) -> Vec<WedgeElement> {
    let w = |t: &[(&str, &str, Rational)]| wedge(spec, 1, t).unwrap();
    vec![
        w(&[]),
        w(&[("D", "H", int(4)), ("M", "H", int(2))]),
        w(&[]),
        w(&[("P", "H", int(-2))]),
        w(&[("K", "H", int(2)), ("P", "D", int(2)), ("P", "M", int(1))]),
        w(&[("C", "H", int(4)), ("D", "M", int(-1))]),
    ]
}

/// Compares cocommutators generated by `r` with a printed table.
pub fn verify_delta_table(
    spec: &LieAlgebraSpec,
    r: &WedgeElement,
    table: &[WedgeElement],
) -> Result<VerificationReport, LieError> {
    let mut report = VerificationReport::new();
    for (i, g) in spec.basis().iter().enumerate() {
        let start = Instant::now();
        let got = cocommutator_from_r(spec, r, g)?;
        let res = got.sub(&table[i]);
        report.push(
            CheckEntry::new("bialgebra", format!("{}/delta-from-r/{g}", spec.name()))
                .residual(res.is_zero(), || res.render(spec.basis()))
                .since(start),
        );
    }
    Ok(report)
}

/// The `z¹` part of `Δ(X) − σ∘Δ(X)` from a deformed presentation, as a
/// rank-2 tensor over `lie`'s basis. Errors if a `z¹` term has a leg that is
/// not a single generator.
pub fn first_order_antisymmetrized_coproduct(
    lie: &LieAlgebraSpec,
    quantum: &AlgebraSpec,
    x: &str,
) -> Result<LieTensor, LieError> {
    let delta = quantum.coproduct(&quantum.gen(x)?)?;
    let diff = &delta - &delta.flip();
    let mut out = LieTensor::zero(lie.dim(), 2, 1);
    for (key, c) in diff.terms() {
        if c.order() < 1 || c.coeff(1).is_zero() {
            continue;
        }
        if key.iter().any(|w| w.len() != 1) {
            let legs: Vec<String> = key.iter().map(|w| quantum.render_word(w)).collect();
            return Err(AlgebraError::Transport(format!("first-order term with leg outside the basis: {}", legs.join(" ⊗ "))).into());
        }
        let i = lie.index_of(&quantum.generators()[key[0][0] as usize])?;
        let j = lie.index_of(&quantum.generators()[key[1][0] as usize])?;
        out.add_at(&[i, j], c.coeff(1));
    }
    Ok(out)
}

/// Checks that the cocommutator of `r` is the first-order part of the
/// deformed coproduct for every basis element. `quantum` must have order ≥ 1.
pub fn verify_against_quantum(
    lie: &LieAlgebraSpec,
    r: &WedgeElement,
    quantum: &AlgebraSpec,
) -> Result<VerificationReport, LieError> {
    let mut report = VerificationReport::new();
    for g in lie.basis() {
        let start = Instant::now();
        let expected = cocommutator_from_r(lie, r, g)?;
        let got = first_order_antisymmetrized_coproduct(lie, quantum, g)?;
        let res = got.sub(&expected);
        report.push(
            CheckEntry::new("bialgebra", format!("{}/first-order-coproduct/{g}", lie.name()))
                .param("k", quantum.order())
                .residual(res.is_zero(), || res.render(lie.basis()))
                .since(start),
        );
    }
    Ok(report)
}

/// Generator words in `subset` whose coproduct has a leg outside the
/// subalgebra generated by `subset`.
pub fn coproduct_leaves_subalgebra(quantum: &AlgebraSpec, subset: &[&str]) -> Result<Vec<String>, AlgebraError> {
    let idx: Vec<u8> = subset.iter().map(|g| quantum.index_of(g)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (&g, name) in idx.iter().zip(subset) {
        let delta = quantum.coproduct(&NCElement::generator(g, quantum.order()))?;
        let escapes = delta.terms().keys().flatten().flatten().any(|l| !idx.contains(l));
        if escapes {
            out.push(name.to_string());
        }
    }
    Ok(out)
}

/// The whole first-order suite for both bases.
pub fn verify_bialgebra(order: usize) -> Result<VerificationReport, LieError> {
    let h6 = LieAlgebraSpec::h6();
    let sch = LieAlgebraSpec::schrodinger();
    let mut report = h6.verify_jacobi();
    report.merge(sch.verify_jacobi());

    let r = h6_r(&h6);
    report.merge(verify_cybe(&h6, "r", &r));
    report.merge(verify_delta_table(&h6, &r, &h6_delta_table(&h6))?);
    report.merge(verify_cocycle(&h6, "delta", &h6_delta_table(&h6))?);

    let rs = schrodinger_r(&sch);
    report.merge(verify_cybe(&sch, "r", &rs));
    report.merge(verify_delta_table(&sch, &rs, &schrodinger_delta_table(&sch))?);
    report.merge(verify_cocycle(&sch, "delta", &schrodinger_delta_table(&sch))?);

    let control = wedge(&h6, 1, &[("A+", "A-", int(1))])?;
    let start = Instant::now();
    let bracket = schouten(&h6, &control);
    report.push(
        CheckEntry::new("bialgebra", "h6/cybe-negative-control/A+∧A-")
            .outcome(!bracket.is_zero(), format!("[[r,r]] = {}", bracket.render(h6.basis())))
            .since(start),
    );

    let start = Instant::now();
    let mapped = basis_change(&h6, "schrodinger", &["H", "D", "M", "P", "K", "C"], &h6_to_schrodinger_map())?;
    let same = mapped == sch;
    report.push(
        CheckEntry::new("bialgebra", "h6/basis-change/schrodinger")
            .outcome(same, if same { "0".to_string() } else { mapped.table_lines().join("; ") })
            .since(start),
    );
    let start = Instant::now();
    let closed = basis_change(&h6, "sl2", &["J+", "J-", "J3", "I"], &sl2_map());
    report.push(
        CheckEntry::new("bialgebra", "h6/basis-change/sl2-closure")
            .outcome(closed.is_ok(), match &closed {
                Ok(s) => s.table_lines().join("; "),
                Err(e) => e.to_string(),
            })
            .since(start),
    );

    if order >= 1 {
        let q = crate::nc_hopf::h6_twophoton(order)?;
        report.merge(verify_against_quantum(&h6, &r, &q)?);
        let q = crate::nc_hopf::schrodinger11(order)?;
        report.merge(verify_against_quantum(&sch, &rs, &q)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        let h6 = LieAlgebraSpec::h6();
        let r = h6_r(&h6);
        assert_eq!(cocommutator_from_r(&h6, &r, "A+").unwrap().render(h6.basis()), "-z*A+∧B+");
        assert!(cocommutator_from_r(&h6, &r, "M").unwrap().is_zero());
        let sch = LieAlgebraSpec::schrodinger();
        let d = cocommutator_from_r(&sch, &schrodinger_r(&sch), "K").unwrap();
        assert_eq!(d, wedge(&sch, 1, &[("K", "H", int(2)), ("P", "D", int(2)), ("P", "M", int(1))]).unwrap());
        assert!(matches!(cocommutator_from_r(&h6, &r, "Q"), Err(LieError::UnknownSymbol(_))));
    }

    #[test]
    fn dh_bracket_after_basis_change() {
        let h6 = LieAlgebraSpec::h6();
        let s = basis_change(&h6, "s", &["H", "D", "M", "P", "K", "C"], &h6_to_schrodinger_map()).unwrap();
        assert_eq!(s.render_vector(s.bracket_basis(1, 0)), "-2*H");
    }

    #[test]
    fn identity_map_keeps_constants() {
        let h6 = LieAlgebraSpec::h6();
        let id: Vec<Vec<Rational>> = (0..6).map(|i| h6.unit(i)).collect();
        let names: Vec<&str> = h6.basis().iter().map(String::as_str).collect();
        assert_eq!(basis_change(&h6, "h6", &names, &id).unwrap(), h6);
    }

    #[test]
    fn singular_and_open_maps_are_rejected() {
        let h6 = LieAlgebraSpec::h6();
        let mut m = h6_to_schrodinger_map();
        m[5] = m[0].clone();
        assert_eq!(basis_change(&h6, "x", &["H", "D", "M", "P", "K", "C"], &m), Err(LieError::Singular));
        // {B+, B-} alone misses N and M
        let open = vec![h6.unit(0), h6.unit(5)];
        assert!(matches!(basis_change(&h6, "x", &["B+", "B-"], &open), Err(LieError::NotClosed(..))));
    }

    #[test]
    fn zero_cocommutator_is_a_cocycle() {
        let h6 = LieAlgebraSpec::h6();
        let zero = vec![LieTensor::zero(6, 2, 1); 6];
        assert!(verify_cocycle(&h6, "zero", &zero).unwrap().all_passed());
    }

    #[test]
    fn full_suite_passes() {
        let report = verify_bialgebra(1).unwrap();
        assert!(report.all_passed(), "{}", report.render_text());
    }
}
