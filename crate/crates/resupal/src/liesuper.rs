//! Finite-dimensional Lie superalgebras by structure constants.
//!
//! Basis convention: even generators first (indices `0..n`), odd after
//! (indices `n..n+m`). Vectors are plain coordinate slices of length `n+m`.
//! Construction never validates the algebra axioms; [`check_axioms`] reports
//! violations as data so invalid inputs can be diagnosed rather than refused.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gfield::{enumerate_field, FieldSpec, Fq};
use crate::linalg::{Echelon, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("vector has length {got}, algebra has dimension {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("bracket [{0},{1}] listed twice with inconsistent values")]
    InconsistentBracket(String, String),
    #[error("basis index {0} out of range")]
    BadIndex(usize),
    #[error("coefficient from a different field")]
    MixedFields,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    spec: FieldSpec,
    n_even: usize,
    n_odd: usize,
    names: Vec<String>,
    // c[i][j] = coordinates of [e_i, e_j]; dense, dims stay tiny.
    c: Vec<Vec<Vec<Fq>>>,
}

impl SuperAlgebra {
    /// Abelian algebra of superdimension `(n|m)`.
    pub fn abelian(spec: FieldSpec, n_even: usize, n_odd: usize, names: Vec<String>) -> Self {
        let dim = n_even + n_odd;
        assert_eq!(names.len(), dim);
        SuperAlgebra {
            spec,
            n_even,
            n_odd,
            names,
            c: vec![vec![vec![spec.zero(); dim]; dim]; dim],
        }
    }

    /// Builds from a list of bracket entries `(i, j, value)`. The mirrored
    /// entry `[e_j, e_i]` is filled in by super-antisymmetry; listing both
    /// orientations (or an even diagonal) inconsistently is an error.
    pub fn from_brackets(
        spec: FieldSpec,
        n_even: usize,
        n_odd: usize,
        names: Vec<String>,
        entries: &[(usize, usize, Vec<Fq>)],
    ) -> Result<Self, AlgebraError> {
        let mut alg = SuperAlgebra::abelian(spec, n_even, n_odd, names);
        let dim = alg.dim();
        let mut set = vec![vec![false; dim]; dim];
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(AlgebraError::BadIndex(i.max(j)));
            }
            if v.len() != dim {
                return Err(AlgebraError::DimensionMismatch { want: dim, got: v.len() });
            }
            if v.iter().any(|c| c.spec() != spec) {
                return Err(AlgebraError::MixedFields);
            }
            // [e_j, e_i] = -(-1)^{|e_i||e_j|} [e_i, e_j]: symmetric for
            // odd-odd pairs, antisymmetric otherwise.
            let mirror: Vec<Fq> = if alg.parity(i) && alg.parity(j) {
                v.clone()
            } else {
                v.iter().map(|&c| -c).collect()
            };
            for (at, val) in [(i, v.clone()), (j, mirror)] {
                let (r, s) = if at == i { (i, j) } else { (j, i) };
                if set[r][s] && alg.c[r][s] != val {
                    return Err(AlgebraError::InconsistentBracket(
                        alg.names[r].clone(),
                        alg.names[s].clone(),
                    ));
                }
                set[r][s] = true;
                alg.c[r][s] = val;
            }
        }
        Ok(alg)
    }

    /// Raw constructor from a full structure-constant table, unchecked.
    pub fn from_table(
        spec: FieldSpec,
        n_even: usize,
        n_odd: usize,
        names: Vec<String>,
        c: Vec<Vec<Vec<Fq>>>,
    ) -> Self {
        let dim = n_even + n_odd;
        assert_eq!(names.len(), dim);
        assert_eq!(c.len(), dim);
        SuperAlgebra { spec, n_even, n_odd, names, c }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.n_even + self.n_odd
    }

    /// Superdimension `(n|m)`.
    pub fn sdim(&self) -> (usize, usize) {
        (self.n_even, self.n_odd)
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.n_odd
    }

    /// `true` for odd basis indices.
    pub fn parity(&self, i: usize) -> bool {
        i >= self.n_even
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Fq> {
        let mut v = vec![self.spec.zero(); self.dim()];
        v[i] = self.spec.one();
        v
    }

    /// Structure constants of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Fq] {
        &self.c[i][j]
    }

    /// Bilinear bracket; panics on length mismatch (see [`Self::bracket`]).
    pub fn br(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let dim = self.dim();
        assert_eq!(x.len(), dim);
        assert_eq!(y.len(), dim);
        let mut out = vec![self.spec.zero(); dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for k in 0..dim {
                    let cijk = self.c[i][j][k];
                    if !cijk.is_zero() {
                        out[k] = out[k] + f * cijk;
                    }
                }
            }
        }
        out
    }

    /// Checked bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Fq], y: &[Fq]) -> Result<Vec<Fq>, AlgebraError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(AlgebraError::DimensionMismatch { want: self.dim(), got: v.len() });
            }
        }
        Ok(self.br(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|c| c.is_zero())
    }

    /// Nonzero brackets as display strings, `[a,b] = v` for i ≤ j.
    pub fn describe_brackets(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if self.c[i][j].iter().any(|c| !c.is_zero()) {
                    out.push(format!(
                        "[{},{}] = {}",
                        self.names[i],
                        self.names[j],
                        format_vector(&self.names, &self.c[i][j])
                    ));
                }
            }
        }
        out
    }
}

/// `v` rendered in basis names, e.g. `2e1+e3`; `0` for the zero vector.
pub fn format_vector(names: &[String], v: &[Fq]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        if c.is_one() {
            terms.push(names[i].clone());
        } else if cs.contains('+') {
            terms.push(format!("({cs}){}", names[i]));
        } else {
            terms.push(format!("{cs}{}", names[i]));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Parity content of a coordinate vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorParity {
    Zero,
    Even,
    Odd,
    Mixed,
}

pub fn parity_of(alg: &SuperAlgebra, v: &[Fq]) -> VectorParity {
    let ev = v[..alg.n_even()].iter().any(|c| !c.is_zero());
    let od = v[alg.n_even()..].iter().any(|c| !c.is_zero());
    match (ev, od) {
        (false, false) => VectorParity::Zero,
        (true, false) => VectorParity::Even,
        (false, true) => VectorParity::Odd,
        (true, true) => VectorParity::Mixed,
    }
}

/// Matrix of `ad_v = [v, ·]` acting on coordinate columns.
pub fn ad_matrix(alg: &SuperAlgebra, v: &[Fq]) -> Mat {
    let dim = alg.dim();
    let mut m = Mat::zero(alg.spec(), dim, dim);
    for k in 0..dim {
        let col = alg.br(v, &alg.basis_vector(k));
        for (r, &c) in col.iter().enumerate() {
            m.set(r, k, c);
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Axiom checking

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    Grading,
    Antisymmetry,
    Jacobi,
    OddCube,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "all axioms hold")
        } else {
            for v in &self.violations {
                writeln!(f, "{}", v.detail)?;
            }
            Ok(())
        }
    }
}

fn sign_fq(spec: FieldSpec, negative: bool) -> Fq {
    if negative {
        -spec.one()
    } else {
        spec.one()
    }
}

/// Verifies grading, super-antisymmetry, the graded Jacobi identity on all
/// basis triples, and (at p = 3) `[x,[x,x]] = 0` over the whole odd part
/// when it has at most 3^6 elements, else on 1000 seeded-random odd vectors.
pub fn check_axioms(alg: &SuperAlgebra) -> AxiomReport {
    let mut report = AxiomReport::default();
    let dim = alg.dim();
    let spec = alg.spec();

    for i in 0..dim {
        for j in 0..dim {
            let want = (alg.parity(i) as u8 + alg.parity(j) as u8) % 2 == 1;
            for k in 0..dim {
                if !alg.c[i][j][k].is_zero() && alg.parity(k) != want {
                    report.violations.push(Violation {
                        kind: ViolationKind::Grading,
                        detail: format!(
                            "grading: [{},{}] has a component on {}",
                            alg.name(i),
                            alg.name(j),
                            alg.name(k)
                        ),
                    });
                }
            }
        }
    }

    for i in 0..dim {
        for j in i..dim {
            let s = sign_fq(spec, !(alg.parity(i) && alg.parity(j)));
            let ok = (0..dim).all(|k| alg.c[j][i][k] == s * alg.c[i][j][k]);
            if !ok {
                report.violations.push(Violation {
                    kind: ViolationKind::Antisymmetry,
                    detail: format!(
                        "antisymmetry: [{},{}] vs [{},{}]",
                        alg.name(i),
                        alg.name(j),
                        alg.name(j),
                        alg.name(i)
                    ),
                });
            }
        }
    }

    // Graded Jacobi, cyclic form:
    // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0.
    for i in 0..dim {
        let ei = alg.basis_vector(i);
        for j in 0..dim {
            let ej = alg.basis_vector(j);
            for k in j..dim {
                let ek = alg.basis_vector(k);
                let (pi, pj, pk) = (alg.parity(i), alg.parity(j), alg.parity(k));
                let t1 = scale(spec, sign_fq(spec, pi && pk), &alg.br(&ei, &alg.br(&ej, &ek)));
                let t2 = scale(spec, sign_fq(spec, pj && pi), &alg.br(&ej, &alg.br(&ek, &ei)));
                let t3 = scale(spec, sign_fq(spec, pk && pj), &alg.br(&ek, &alg.br(&ei, &ej)));
                let total: Vec<Fq> =
                    (0..dim).map(|t| t1[t] + t2[t] + t3[t]).collect();
                if total.iter().any(|c| !c.is_zero()) {
                    report.violations.push(Violation {
                        kind: ViolationKind::Jacobi,
                        detail: format!(
                            "jacobi fails on ({},{},{})",
                            alg.name(i),
                            alg.name(j),
                            alg.name(k)
                        ),
                    });
                }
            }
        }
    }

    // At p = 3 the Jacobi identity does not force [x,[x,x]] = 0 for odd x,
    // and the condition is cubic in x, so basis checks do not suffice.
    if spec.characteristic() == 3 && alg.n_odd() > 0 {
        let m = alg.n_odd();
        let order = spec.order();
        let exhaustive = order.checked_pow(m as u32).map_or(false, |n| n <= 729);
        let mut bad = None;
        if exhaustive {
            let elems = enumerate_field(spec);
            let mut idx = vec![0usize; m];
            loop {
                let mut x = vec![spec.zero(); dim];
                for (t, &e) in idx.iter().enumerate() {
                    x[alg.n_even() + t] = elems[e];
                }
                let cube = alg.br(&x, &alg.br(&x, &x));
                if cube.iter().any(|c| !c.is_zero()) {
                    bad = Some(x);
                    break;
                }
                let mut carry = true;
                for slot in idx.iter_mut() {
                    *slot += 1;
                    if *slot < elems.len() {
                        carry = false;
                        break;
                    }
                    *slot = 0;
                }
                if carry {
                    break;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let elems = enumerate_field(spec);
            for _ in 0..1000 {
                let mut x = vec![spec.zero(); dim];
                for t in 0..m {
                    x[alg.n_even() + t] = elems[rng.gen_range(0..elems.len())];
                }
                let cube = alg.br(&x, &alg.br(&x, &x));
                if cube.iter().any(|c| !c.is_zero()) {
                    bad = Some(x);
                    break;
                }
            }
        }
        if let Some(x) = bad {
            report.violations.push(Violation {
                kind: ViolationKind::OddCube,
                detail: format!(
                    "[x,[x,x]] nonzero for odd x = {}",
                    format_vector(alg.names(), &x)
                ),
            });
        }
    }

    report
}

fn scale(spec: FieldSpec, f: Fq, v: &[Fq]) -> Vec<Fq> {
    let _ = spec;
    v.iter().map(|&c| f * c).collect()
}

// ---------------------------------------------------------------------------
// Graded subspaces and structural invariants

/// Subspace spanned by the parity components of its generators, held as a
/// pair of canonical echelon bases (even rows, odd rows).
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    n_even: usize,
    even: Echelon,
    odd: Echelon,
}

impl GradedSubspace {
    pub fn empty(alg: &SuperAlgebra) -> Self {
        let dim = alg.dim();
        GradedSubspace {
            n_even: alg.n_even(),
            even: Echelon::new(alg.spec(), dim),
            odd: Echelon::new(alg.spec(), dim),
        }
    }

    pub fn full(alg: &SuperAlgebra) -> Self {
        let mut s = GradedSubspace::empty(alg);
        for i in 0..alg.dim() {
            s.insert(&alg.basis_vector(i));
        }
        s
    }

    /// Inserts the even and odd components separately; returns `true` iff
    /// either grew the span.
    pub fn insert(&mut self, v: &[Fq]) -> bool {
        let dim = v.len();
        let zero = v[0].spec().zero();
        let mut ev = vec![zero; dim];
        let mut od = vec![zero; dim];
        ev[..self.n_even].copy_from_slice(&v[..self.n_even]);
        od[self.n_even..].copy_from_slice(&v[self.n_even..]);
        let a = ev.iter().any(|c| !c.is_zero()) && self.even.insert(&ev);
        let b = od.iter().any(|c| !c.is_zero()) && self.odd.insert(&od);
        a || b
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        let dim = v.len();
        let zero = v[0].spec().zero();
        let mut ev = vec![zero; dim];
        let mut od = vec![zero; dim];
        ev[..self.n_even].copy_from_slice(&v[..self.n_even]);
        od[self.n_even..].copy_from_slice(&v[self.n_even..]);
        self.even.contains(&ev) && self.odd.contains(&od)
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.even.rank(), self.odd.rank())
    }

    pub fn total_dim(&self) -> usize {
        self.even.rank() + self.odd.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Canonical basis, even rows first.
    pub fn basis(&self) -> Vec<Vec<Fq>> {
        self.even.basis().iter().chain(self.odd.basis()).cloned().collect()
    }

    pub fn even_basis(&self) -> &[Vec<Fq>] {
        self.even.basis()
    }

    pub fn odd_basis(&self) -> &[Vec<Fq>] {
        self.odd.basis()
    }
}

/// Span of `[a, b]` over basis pairs of two graded subspaces.
pub fn bracket_span(
    alg: &SuperAlgebra,
    a: &GradedSubspace,
    b: &GradedSubspace,
) -> GradedSubspace {
    let mut out = GradedSubspace::empty(alg);
    for x in a.basis() {
        for y in b.basis() {
            out.insert(&alg.br(&x, &y));
        }
    }
    out
}

pub fn derived_subalgebra(alg: &SuperAlgebra) -> GradedSubspace {
    let full = GradedSubspace::full(alg);
    bracket_span(alg, &full, &full)
}

/// `z(L) = {x : [x, y] = 0 for all y}`, computed per parity block.
pub fn center(alg: &SuperAlgebra) -> GradedSubspace {
    let dim = alg.dim();
    let spec = alg.spec();
    let mut out = GradedSubspace::empty(alg);
    for odd in [false, true] {
        let idx: Vec<usize> = (0..dim).filter(|&i| alg.parity(i) == odd).collect();
        if idx.is_empty() {
            continue;
        }
        // Rows: component k of [x, e_j] for every (j, k); columns: the
        // coordinates of x on this parity block.
        let mut rows = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                rows.push(idx.iter().map(|&i| alg.c[i][j][k]).collect::<Vec<_>>());
            }
        }
        let m = Mat::from_rows(spec, rows, idx.len());
        for ker in m.nullspace() {
            let mut v = vec![spec.zero(); dim];
            for (t, &i) in idx.iter().enumerate() {
                v[i] = ker[t];
            }
            out.insert(&v);
        }
    }
    out
}

/// Descending central sequence `C^0 = L`, `C^{k+1} = [C^k, L]`, listed until
/// it stabilizes (reaching 0 exactly when the algebra is nilpotent).
pub fn lower_central_series(alg: &SuperAlgebra) -> Vec<GradedSubspace> {
    let full = GradedSubspace::full(alg);
    let mut series = vec![full];
    loop {
        let last = series.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = bracket_span(alg, last, series.first().unwrap());
        if next.total_dim() == last.total_dim() {
            break;
        }
        series.push(next);
    }
    series
}

/// Smallest `k` with `C^k = 0`, or `None` when the sequence stabilizes
/// above zero.
pub fn nilindex(alg: &SuperAlgebra) -> Option<usize> {
    let series = lower_central_series(alg);
    series.last().unwrap().is_zero().then(|| series.len() - 1)
}

// ---------------------------------------------------------------------------
// Graded linear maps

/// Parity-preserving linear map, stored as its even and odd blocks.
#[derive(Debug, Clone)]
pub struct GradedMap {
    pub source: Arc<SuperAlgebra>,
    pub target: Arc<SuperAlgebra>,
    pub even: Mat,
    pub odd: Mat,
}

impl GradedMap {
    pub fn from_blocks(
        source: Arc<SuperAlgebra>,
        target: Arc<SuperAlgebra>,
        even: Mat,
        odd: Mat,
    ) -> Self {
        assert_eq!(even.nrows(), target.n_even());
        assert_eq!(even.ncols(), source.n_even());
        assert_eq!(odd.nrows(), target.n_odd());
        assert_eq!(odd.ncols(), source.n_odd());
        GradedMap { source, target, even, odd }
    }

    pub fn identity(alg: &Arc<SuperAlgebra>) -> Self {
        GradedMap {
            source: alg.clone(),
            target: alg.clone(),
            even: Mat::identity(alg.spec(), alg.n_even()),
            odd: Mat::identity(alg.spec(), alg.n_odd()),
        }
    }

    pub fn apply(&self, v: &[Fq]) -> Vec<Fq> {
        let ns = self.source.n_even();
        let ev = self.even.mul_vec(&v[..ns]);
        let od = self.odd.mul_vec(&v[ns..]);
        ev.into_iter().chain(od).collect()
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &GradedMap) -> GradedMap {
        GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            even: self.even.mul(&inner.even),
            odd: self.odd.mul(&inner.odd),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.even.nrows() == self.even.ncols()
            && self.odd.nrows() == self.odd.ncols()
            && self.even.rank() == self.even.nrows()
            && self.odd.rank() == self.odd.nrows()
    }

    pub fn inverse(&self) -> Option<GradedMap> {
        Some(GradedMap {
            source: self.target.clone(),
            target: self.source.clone(),
            even: self.even.inverse()?,
            odd: self.odd.inverse()?,
        })
    }

    /// `A[x,y] = [Ax, Ay]` on all source basis pairs.
    pub fn is_algebra_morphism(&self) -> bool {
        let dim = self.source.dim();
        for i in 0..dim {
            for j in i..dim {
                let lhs = self.apply(self.source.bracket_basis(i, j));
                let rhs = self.target.br(
                    &self.apply(&self.source.basis_vector(i)),
                    &self.apply(&self.source.basis_vector(j)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Default labels `e1..e_{n+m}`.
pub fn default_names(n_even: usize, n_odd: usize) -> Vec<String> {
    (1..=n_even + n_odd).map(|i| format!("e{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn unit(spec: FieldSpec, dim: usize, k: usize, val: i64) -> Vec<Fq> {
        let mut v = vec![spec.zero(); dim];
        v[k] = spec.from_int(val);
        v
    }

    // Heisenberg-type (1|2): [e1,e2] = e3 with e1 even, e2, e3 odd.
    fn heisenberg(spec: FieldSpec) -> SuperAlgebra {
        SuperAlgebra::from_brackets(
            spec,
            1,
            2,
            default_names(1, 2),
            &[(0, 1, unit(spec, 3, 2, 1))],
        )
        .unwrap()
    }

    // (2|1) with [e3,e3] = e2.
    fn odd_square(spec: FieldSpec) -> SuperAlgebra {
        SuperAlgebra::from_brackets(
            spec,
            2,
            1,
            default_names(2, 1),
            &[(2, 2, unit(spec, 3, 1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn bracket_examples() {
        let l = odd_square(f5());
        let e3 = l.basis_vector(2);
        assert_eq!(l.bracket(&e3, &e3).unwrap(), l.basis_vector(1));

        let ab = SuperAlgebra::abelian(f5(), 2, 2, default_names(2, 2));
        let x = vec![f5().from_int(1), f5().from_int(2), f5().from_int(3), f5().from_int(4)];
        assert!(ab.bracket(&x, &x).unwrap().iter().all(|c| c.is_zero()));

        let h = heisenberg(f5());
        assert_eq!(h.bracket(&h.basis_vector(0), &h.basis_vector(1)).unwrap(), h.basis_vector(2));
        // Mirror entry: [e2,e1] = -e3 (even-odd pair).
        assert_eq!(h.bracket_basis(1, 0), &unit(f5(), 3, 2, -1)[..]);
    }

    #[test]
    fn bracket_checks_dimensions() {
        let h = heisenberg(f3());
        let short = vec![f3().zero(); 2];
        assert_eq!(
            h.bracket(&short, &h.basis_vector(0)),
            Err(AlgebraError::DimensionMismatch { want: 3, got: 2 })
        );
    }

    #[test]
    fn inconsistent_double_listing_is_rejected() {
        let spec = f5();
        // [e3,e3] both e1 and e2: odd diagonal listed twice inconsistently.
        let r = SuperAlgebra::from_brackets(
            spec,
            2,
            1,
            default_names(2, 1),
            &[(2, 2, unit(spec, 3, 0, 1)), (2, 2, unit(spec, 3, 1, 1))],
        );
        assert!(matches!(r, Err(AlgebraError::InconsistentBracket(_, _))));
        // Consistent double listing is fine.
        let ok = SuperAlgebra::from_brackets(
            spec,
            1,
            2,
            default_names(1, 2),
            &[(0, 1, unit(spec, 3, 2, 1)), (1, 0, unit(spec, 3, 2, -1))],
        );
        assert!(ok.is_ok());
        // But an inconsistent mirror orientation is not.
        let bad = SuperAlgebra::from_brackets(
            spec,
            1,
            2,
            default_names(1, 2),
            &[(0, 1, unit(spec, 3, 2, 1)), (1, 0, unit(spec, 3, 2, 1))],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn valid_algebras_pass_axioms() {
        for spec in [f3(), f5(), FieldSpec::quadratic(3).unwrap()] {
            assert!(check_axioms(&heisenberg(spec)).is_valid());
            assert!(check_axioms(&odd_square(spec)).is_valid());
            assert!(check_axioms(&SuperAlgebra::abelian(spec, 2, 2, default_names(2, 2)))
                .is_valid());
        }
    }

    #[test]
    fn grading_violation_is_reported() {
        // [e1,e2] = e1 with e1 even, e2 odd: even-odd bracket must be odd.
        let spec = f3();
        let l = SuperAlgebra::from_brackets(
            spec,
            1,
            2,
            default_names(1, 2),
            &[(0, 1, unit(spec, 3, 0, 1))],
        )
        .unwrap();
        let report = check_axioms(&l);
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Grading));
    }

    #[test]
    fn antisymmetry_violation_is_reported() {
        let spec = f5();
        let dim = 3;
        let mut c = vec![vec![vec![spec.zero(); dim]; dim]; dim];
        c[0][1][2] = spec.one(); // [e1,e2] = e3
        c[1][0][2] = spec.one(); // [e2,e1] = e3, but both even: must be -e3
        let l = SuperAlgebra::from_table(spec, 3, 0, default_names(3, 0), c);
        let report = check_axioms(&l);
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Antisymmetry));
    }

    #[test]
    fn jacobi_violation_is_reported_at_p5() {
        // [e2,e2] = e1, [e1,e2] = e3 (e1 even; e2, e3 odd). The cyclic sum
        // on (e2,e2,e2) is -3[e2,[e2,e2]] = 3e3 ≠ 0 when p > 3.
        let spec = f5();
        let l = SuperAlgebra::from_brackets(
            spec,
            1,
            2,
            default_names(1, 2),
            &[(1, 1, unit(spec, 3, 0, 1)), (0, 1, unit(spec, 3, 2, 1))],
        )
        .unwrap();
        let report = check_axioms(&l);
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Jacobi));
    }

    #[test]
    fn odd_cube_violation_is_reported_at_p3() {
        // Same structure at p = 3: Jacobi holds on all basis triples
        // (the only nonzero cyclic sum is 3e3 = 0), yet [x,[x,x]] ≠ 0
        // for x = e2, so the cubic condition must be checked separately.
        let spec = f3();
        let l = SuperAlgebra::from_brackets(
            spec,
            1,
            2,
            default_names(1, 2),
            &[(1, 1, unit(spec, 3, 0, 1)), (0, 1, unit(spec, 3, 2, 1))],
        )
        .unwrap();
        let report = check_axioms(&l);
        assert!(!report.violations.iter().any(|v| v.kind == ViolationKind::Jacobi));
        assert!(report.violations.iter().any(|v| v.kind == ViolationKind::OddCube));
    }

    #[test]
    fn random_antisymmetry_on_homogeneous_pairs() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for alg in [heisenberg(f5()), odd_square(f3())] {
            let spec = alg.spec();
            let elems = enumerate_field(spec);
            for _ in 0..500 {
                let podd = [rng.gen_bool(0.5), rng.gen_bool(0.5)];
                let mut xy = [vec![spec.zero(); alg.dim()], vec![spec.zero(); alg.dim()]];
                for (t, v) in xy.iter_mut().enumerate() {
                    for i in 0..alg.dim() {
                        if alg.parity(i) == podd[t] {
                            v[i] = elems[rng.gen_range(0..elems.len())];
                        }
                    }
                }
                let lhs = alg.br(&xy[0], &xy[1]);
                let mut rhs = alg.br(&xy[1], &xy[0]);
                let s = sign_fq(spec, !(podd[0] && podd[1]));
                for c in &mut rhs {
                    *c = s * *c;
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn structural_invariants_of_heisenberg() {
        let l = heisenberg(f3());
        let der = derived_subalgebra(&l);
        assert_eq!(der.sdim(), (0, 1));
        assert!(der.contains(&l.basis_vector(2)));
        let z = center(&l);
        assert_eq!(z.sdim(), (0, 1));
        assert!(z.contains(&l.basis_vector(2)));
        assert_eq!(nilindex(&l), Some(2));
        let series = lower_central_series(&l);
        assert_eq!(series.len(), 3);
        for w in series.windows(2) {
            assert!(w[1].total_dim() < w[0].total_dim());
        }
    }

    #[test]
    fn abelian_invariants() {
        let l = SuperAlgebra::abelian(f5(), 2, 2, default_names(2, 2));
        assert_eq!(center(&l).sdim(), (2, 2));
        assert_eq!(derived_subalgebra(&l).total_dim(), 0);
        assert_eq!(nilindex(&l), Some(1));
    }

    #[test]
    fn center_and_derived_are_bracket_stable() {
        for alg in [heisenberg(f5()), odd_square(f5())] {
            let z = center(&alg);
            let full = GradedSubspace::full(&alg);
            assert_eq!(bracket_span(&alg, &z, &full).total_dim(), 0);
            let der = derived_subalgebra(&alg);
            let der2 = bracket_span(&alg, &der, &full);
            for v in der2.basis() {
                assert!(der.contains(&v));
            }
        }
    }

    #[test]
    fn non_nilpotent_is_detected() {
        // [e1,e2] = e2 (e1 even, e2 odd) is a valid superalgebra but its
        // descending central sequence stabilizes at <e2>.
        let spec = f5();
        let l = SuperAlgebra::from_brackets(
            spec,
            1,
            1,
            default_names(1, 1),
            &[(0, 1, unit(spec, 2, 1, 1))],
        )
        .unwrap();
        assert!(check_axioms(&l).is_valid());
        assert_eq!(nilindex(&l), None);
    }

    #[test]
    fn graded_map_composition_and_morphism() {
        let l = Arc::new(heisenberg(f3()));
        let id = GradedMap::identity(&l);
        assert!(id.is_algebra_morphism());
        assert!(id.is_invertible());

        // Scaling e1 by 2 and e3 by 2 preserves [e1,e2] = e3.
        let spec = f3();
        let mut odd = Mat::identity(spec, 2);
        odd.set(1, 1, spec.from_int(2));
        let mut even = Mat::identity(spec, 1);
        even.set(0, 0, spec.from_int(2));
        let g = GradedMap::from_blocks(l.clone(), l.clone(), even, odd);
        assert!(g.is_algebra_morphism());
        let gi = g.inverse().unwrap();
        let comp = g.compose(&gi);
        assert_eq!(comp.apply(&l.basis_vector(0)), l.basis_vector(0));

        // Swapping e2 and e3 breaks it: [e1,e3] = 0 ≠ e2.
        let mut swap = Mat::zero(spec, 2, 2);
        swap.set(0, 1, spec.one());
        swap.set(1, 0, spec.one());
        let bad = GradedMap::from_blocks(l.clone(), l.clone(), Mat::identity(spec, 1), swap);
        assert!(!bad.is_algebra_morphism());
    }

    #[test]
    fn subspace_insert_splits_parities() {
        let l = heisenberg(f3());
        let mut s = GradedSubspace::empty(&l);
        // Mixed vector e1 + e2 contributes one even and one odd direction.
        let mut v = l.basis_vector(0);
        v[1] = f3().one();
        assert!(s.insert(&v));
        assert_eq!(s.sdim(), (1, 1));
        assert!(s.contains(&l.basis_vector(0)));
        assert!(s.contains(&l.basis_vector(1)));
        assert!(!s.contains(&l.basis_vector(2)));
    }

    #[test]
    fn vector_formatting() {
        let l = heisenberg(f3());
        let mut v = l.basis_vector(0);
        v[2] = f3().from_int(2);
        assert_eq!(format_vector(l.names(), &v), "e1+2e3");
        assert_eq!(format_vector(l.names(), &vec![f3().zero(); 3]), "0");
        assert_eq!(parity_of(&l, &v), VectorParity::Mixed);
        assert_eq!(parity_of(&l, &l.basis_vector(1)), VectorParity::Odd);
    }
}
