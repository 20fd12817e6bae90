//! p|2p-structures: p-maps on the even part, their axioms, enumeration,
//! p-nilpotency, restricted derivations and restricted morphisms.
//!
//! A p-map is stored by its values on the even basis and extended to all
//! even vectors by `pmap_eval` (Frobenius-semilinearity plus the nested
//! bracket correction sums). Construction and verification are separate:
//! [`check_pmap_axioms`] reports violations as data, [`PMap::verified`]
//! refuses maps that have any, and [`PMap::unverified`] only shape-checks.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gfield::{enumerate_field, random_element, Fq};
use crate::liesuper::{
    ad_matrix, center, format_vector, parity_of, GradedMap, SuperAlgebra, VectorParity,
};
use crate::linalg::{Echelon, Mat};

/// Exhaustion threshold: iterate all of `L_ev` only when `q^n` stays below.
const EXHAUSTIVE_LIMIT: u128 = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RestrictedError {
    #[error("input vector has a nonzero odd component")]
    OddInput,
    #[error("expected {want} coordinates, got {got}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("p-map needs a value per even basis element: expected {want}, got {got}")]
    WrongValueCount { want: usize, got: usize },
    #[error("p-map axioms fail: {0}")]
    NotRestricted(String),
    #[error("enumeration needs {needed} candidates, above the configured bound")]
    EnumerationBound { needed: u128 },
}

fn check_even(alg: &SuperAlgebra, v: &[Fq]) -> Result<(), RestrictedError> {
    if v.len() != alg.dim() {
        return Err(RestrictedError::DimensionMismatch { want: alg.dim(), got: v.len() });
    }
    match parity_of(alg, v) {
        VectorParity::Even | VectorParity::Zero => Ok(()),
        _ => Err(RestrictedError::OddInput),
    }
}

fn vec_add(a: &mut [Fq], b: &[Fq]) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = *x + y;
    }
}

fn is_zero_vec(v: &[Fq]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// All vectors of the even part, lexicographic in coefficients. Only call
/// when `q^{n_even}` is known to be small.
pub(crate) fn all_even_vectors(alg: &SuperAlgebra) -> Vec<Vec<Fq>> {
    let elems = enumerate_field(alg.spec());
    let n = alg.n_even();
    let dim = alg.dim();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut v = vec![alg.spec().zero(); dim];
        for (j, &t) in idx.iter().enumerate() {
            v[j] = elems[t];
        }
        out.push(v);
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            idx[j] += 1;
            if idx[j] < elems.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

pub(crate) fn random_even_vector<R: rand::Rng>(alg: &SuperAlgebra, rng: &mut R) -> Vec<Fq> {
    let mut v = vec![alg.spec().zero(); alg.dim()];
    for slot in v.iter_mut().take(alg.n_even()) {
        *slot = random_element(alg.spec(), rng);
    }
    v
}

pub(crate) fn even_count(alg: &SuperAlgebra) -> Option<u128> {
    (alg.spec().order() as u128).checked_pow(alg.n_even() as u32)
}

// ---------------------------------------------------------------------------
// Correction sums

/// The pieces `s_1 .. s_{p-1}` of the p-th power correction. `s_i` collects
/// the right-nested brackets `[x_1,[x_2,[...,[x_{p-1},x_p]...]]]` over tuples
/// in `{x,y}^p` with `x_{p-1} = y`, `x_p = x` and exactly `i` copies of `x`,
/// weighted by `1/i`. They satisfy
/// `(ad_{λx+y})^{p-1}(x) = Σ_i i·s_i(x,y)·λ^{i-1}`.
pub fn s_sum_parts(
    alg: &SuperAlgebra,
    x: &[Fq],
    y: &[Fq],
) -> Result<Vec<Vec<Fq>>, RestrictedError> {
    check_even(alg, x)?;
    check_even(alg, y)?;
    let spec = alg.spec();
    let p = spec.characteristic() as usize;
    let dim = alg.dim();
    let mut parts = vec![vec![spec.zero(); dim]; p - 1];
    let free = p - 2;
    for mask in 0..(1u64 << free) {
        let count = 1 + mask.count_ones() as usize;
        let mut acc = alg.br(y, x);
        for t in (0..free).rev() {
            let arg = if mask >> t & 1 == 1 { x } else { y };
            acc = alg.br(arg, &acc);
        }
        vec_add(&mut parts[count - 1], &acc);
    }
    for (i0, part) in parts.iter_mut().enumerate() {
        let w = spec.from_int((i0 + 1) as i64).inv().expect("1..p is a unit range");
        for c in part.iter_mut() {
            *c = *c * w;
        }
    }
    Ok(parts)
}

/// `Σ_{i=1}^{p-1} s_i(x,y)`, the full correction in `(x+y)^[p]`.
pub fn s_sum(alg: &SuperAlgebra, x: &[Fq], y: &[Fq]) -> Result<Vec<Fq>, RestrictedError> {
    let parts = s_sum_parts(alg, x, y)?;
    let mut out = vec![alg.spec().zero(); alg.dim()];
    for part in &parts {
        vec_add(&mut out, part);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// p-maps

/// A candidate p-map, stored by its values on the even basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PMap {
    alg: Arc<SuperAlgebra>,
    // values[j] = e_j^[p] as a full coordinate vector with even support.
    values: Vec<Vec<Fq>>,
    verified: bool,
}

impl PMap {
    /// Shape-checked but axiom-unverified candidate.
    pub fn unverified(
        alg: Arc<SuperAlgebra>,
        values: Vec<Vec<Fq>>,
    ) -> Result<Self, RestrictedError> {
        if values.len() != alg.n_even() {
            return Err(RestrictedError::WrongValueCount {
                want: alg.n_even(),
                got: values.len(),
            });
        }
        for v in &values {
            check_even(&alg, v)?;
        }
        Ok(PMap { alg, values, verified: false })
    }

    /// Fails unless [`check_pmap_axioms`] comes back empty.
    pub fn verified(
        alg: Arc<SuperAlgebra>,
        values: Vec<Vec<Fq>>,
    ) -> Result<Self, RestrictedError> {
        let pm = Self::unverified(alg, values)?;
        let report = check_pmap_axioms(&pm);
        match report.violations.into_iter().next() {
            None => Ok(PMap { verified: true, ..pm }),
            Some(v) => Err(RestrictedError::NotRestricted(v.to_string())),
        }
    }

    /// The all-zero candidate (not automatically a p-map; verify to use).
    pub fn zero(alg: Arc<SuperAlgebra>) -> Self {
        let z = vec![alg.spec().zero(); alg.dim()];
        let values = vec![z; alg.n_even()];
        PMap { alg, values, verified: false }
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.alg
    }

    /// Value on the `j`-th even basis element.
    pub fn value(&self, j: usize) -> &[Fq] {
        &self.values[j]
    }

    pub fn values(&self) -> &[Vec<Fq>] {
        &self.values
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// One line per even generator, e.g. `e1^[p] = e2`.
    pub fn describe(&self) -> Vec<String> {
        (0..self.alg.n_even())
            .map(|j| {
                format!(
                    "{}^[p] = {}",
                    self.alg.name(j),
                    format_vector(self.alg.names(), &self.values[j])
                )
            })
            .collect()
    }
}

/// Deterministic extension of the basis values to an arbitrary even vector:
/// nonzero components are folded in ascending basis order through
/// `(u+v)^[p] = u^[p] + v^[p] + s_sum(u,v)` and `(λe_j)^[p] = λ^p e_j^[p]`.
pub fn pmap_eval(pm: &PMap, x: &[Fq]) -> Result<Vec<Fq>, RestrictedError> {
    let alg = pm.alg.as_ref();
    check_even(alg, x)?;
    let spec = alg.spec();
    let p = spec.characteristic() as u64;
    let dim = alg.dim();
    let mut acc_vec: Option<Vec<Fq>> = None;
    let mut acc_val = vec![spec.zero(); dim];
    for j in 0..alg.n_even() {
        let lam = x[j];
        if lam.is_zero() {
            continue;
        }
        let lp = lam.pow(p);
        let term: Vec<Fq> = pm.values[j].iter().map(|&c| lp * c).collect();
        let mut comp = vec![spec.zero(); dim];
        comp[j] = lam;
        match acc_vec {
            None => {
                acc_vec = Some(comp);
                acc_val = term;
            }
            Some(ref mut u) => {
                let corr = s_sum(alg, u, &comp)?;
                for k in 0..dim {
                    acc_val[k] = acc_val[k] + term[k] + corr[k];
                }
                vec_add(u, &comp);
            }
        }
    }
    Ok(acc_val)
}

/// `x^[2p] = (x²)^[p]` with `x² = ½[x,x]`, for odd `x`.
pub fn pmap_eval_2p(pm: &PMap, x: &[Fq]) -> Result<Vec<Fq>, RestrictedError> {
    let alg = pm.alg.as_ref();
    if x.len() != alg.dim() {
        return Err(RestrictedError::DimensionMismatch { want: alg.dim(), got: x.len() });
    }
    if matches!(parity_of(alg, x), VectorParity::Even | VectorParity::Mixed) {
        return Err(RestrictedError::OddInput);
    }
    let half = alg.spec().from_ratio(1, 2).expect("odd characteristic");
    let sq: Vec<Fq> = alg.br(x, x).into_iter().map(|c| half * c).collect();
    pmap_eval(pm, &sq)
}

// ---------------------------------------------------------------------------
// Axiom verification

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PMapViolation {
    /// `ad_{e_j^[p]} ≠ (ad_{e_j})^p`; this covers the super condition since
    /// both operators are compared on the full basis.
    AdjointCompat { basis: usize, detail: String },
    Semilinearity { detail: String },
    SumRule { detail: String },
}

impl fmt::Display for PMapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PMapViolation::AdjointCompat { detail, .. } => write!(f, "adjoint: {detail}"),
            PMapViolation::Semilinearity { detail } => write!(f, "semilinearity: {detail}"),
            PMapViolation::SumRule { detail } => write!(f, "sum rule: {detail}"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PMapReport {
    pub violations: Vec<PMapViolation>,
}

impl PMapReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the three p-map axioms plus the super condition:
/// (a) `ad_{e_j^[p]} = (ad_{e_j})^p` as operators on the whole algebra,
/// (b) `(λx)^[p] = λ^p x^[p]`, (c) the correction sum rule on even pairs.
/// (b) and (c) run exhaustively over the even part when it is small,
/// seeded-random otherwise. An empty report means the map is a p-map.
pub fn check_pmap_axioms(pm: &PMap) -> PMapReport {
    let alg = pm.alg.as_ref();
    let spec = alg.spec();
    let p = spec.characteristic();
    let mut violations = Vec::new();

    for j in 0..alg.n_even() {
        let lhs = ad_matrix(alg, &pm.values[j]);
        let rhs = ad_matrix(alg, &alg.basis_vector(j)).pow(p);
        if lhs != rhs {
            let name = alg.name(j);
            violations.push(PMapViolation::AdjointCompat {
                basis: j,
                detail: format!("ad of {name}^[p] differs from (ad {name})^{p}"),
            });
        }
    }

    let exhaustive = matches!(even_count(alg), Some(c) if c <= EXHAUSTIVE_LIMIT);
    let lambdas = enumerate_field(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let targets: Vec<Vec<Fq>> = if exhaustive {
        all_even_vectors(alg)
    } else {
        (0..300).map(|_| random_even_vector(alg, &mut rng)).collect()
    };

    'semi: for x in &targets {
        let px = pmap_eval(pm, x).expect("even by construction");
        for &lam in &lambdas {
            let lx: Vec<Fq> = x.iter().map(|&c| lam * c).collect();
            let got = pmap_eval(pm, &lx).expect("even by construction");
            let lp = lam.pow(p as u64);
            let want: Vec<Fq> = px.iter().map(|&c| lp * c).collect();
            if got != want {
                violations.push(PMapViolation::Semilinearity {
                    detail: format!(
                        "(λx)^[p] ≠ λ^p x^[p] at λ = {lam}, x = {}",
                        format_vector(alg.names(), x)
                    ),
                });
                break 'semi;
            }
        }
    }

    let mut pairs: Vec<(Vec<Fq>, Vec<Fq>)> = Vec::new();
    for i in 0..alg.n_even() {
        for j in i + 1..alg.n_even() {
            pairs.push((alg.basis_vector(i), alg.basis_vector(j)));
        }
    }
    let pair_exhaustive =
        matches!(even_count(alg).and_then(|c| c.checked_mul(c)), Some(c) if c <= EXHAUSTIVE_LIMIT);
    if pair_exhaustive {
        let all = all_even_vectors(alg);
        for x in &all {
            for y in &all {
                pairs.push((x.clone(), y.clone()));
            }
        }
    } else {
        for _ in 0..300 {
            pairs.push((random_even_vector(alg, &mut rng), random_even_vector(alg, &mut rng)));
        }
    }
    for (x, y) in &pairs {
        let mut sum = vec![spec.zero(); alg.dim()];
        vec_add(&mut sum, x);
        vec_add(&mut sum, y);
        let lhs = pmap_eval(pm, &sum).expect("even by construction");
        let mut rhs = pmap_eval(pm, x).expect("even by construction");
        vec_add(&mut rhs, &pmap_eval(pm, y).expect("even by construction"));
        vec_add(&mut rhs, &s_sum(alg, x, y).expect("even by construction"));
        if lhs != rhs {
            violations.push(PMapViolation::SumRule {
                detail: format!(
                    "(x+y)^[p] ≠ x^[p] + y^[p] + Σs_i at x = {}, y = {}",
                    format_vector(alg.names(), x),
                    format_vector(alg.names(), y)
                ),
            });
            break;
        }
    }

    PMapReport { violations }
}

/// A superalgebra together with a verified p|2p-structure.
#[derive(Debug, Clone)]
pub struct RestrictedAlgebra {
    pub algebra: Arc<SuperAlgebra>,
    pub pmap: PMap,
}

impl RestrictedAlgebra {
    /// Verifies the p-map unless it already carries the verified flag.
    pub fn new(pmap: PMap) -> Result<Self, RestrictedError> {
        let pmap = if pmap.verified {
            pmap
        } else {
            PMap::verified(pmap.alg.clone(), pmap.values)?
        };
        Ok(RestrictedAlgebra { algebra: pmap.alg.clone(), pmap })
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Every p|2p-structure on `L` over its base field, deterministically
/// ordered. Admissible values for each even generator form a coset of
/// `z(L)_ev` when nonempty; the coset product is enumerated and every
/// candidate re-verified against the determining condition
/// `ad e_j^[p] = (ad e_j)^p`. Values on a basis with that compatibility
/// extend uniquely to a full p|2p-structure, so the remaining axioms
/// hold for the canonical extension. Empty output = no restricted
/// structure exists.
pub fn enumerate_pmaps(alg: &Arc<SuperAlgebra>) -> Result<Vec<PMap>, RestrictedError> {
    let spec = alg.spec();
    let p = spec.characteristic();
    let dim = alg.dim();
    let n_ev = alg.n_even();
    let z_ev: Vec<Vec<Fq>> = center(alg).even_basis().to_vec();

    let mut particulars: Vec<Vec<Fq>> = Vec::with_capacity(n_ev);
    for j in 0..n_ev {
        let target = ad_matrix(alg, &alg.basis_vector(j)).pow(p);
        let mut rows = Vec::with_capacity(dim * dim);
        let mut rhs = Vec::with_capacity(dim * dim);
        for k in 0..dim {
            for r in 0..dim {
                rows.push((0..n_ev).map(|t| alg.bracket_basis(t, k)[r]).collect());
                rhs.push(target.get(r, k));
            }
        }
        let m = Mat::from_rows(spec, rows, n_ev);
        match m.solve(&rhs) {
            None => return Ok(Vec::new()),
            Some(sol) => {
                let mut full = vec![spec.zero(); dim];
                full[..n_ev].copy_from_slice(&sol);
                particulars.push(full);
            }
        }
    }

    let q = spec.order() as u128;
    let zdim = z_ev.len();
    let needed = q
        .checked_pow((zdim * n_ev) as u32)
        .ok_or(RestrictedError::EnumerationBound { needed: u128::MAX })?;
    if needed > crate::enumeration_bound() as u128 {
        return Err(RestrictedError::EnumerationBound { needed });
    }
    let elems = enumerate_field(spec);

    let maps: Vec<PMap> = (0..needed as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rem = idx as u128;
            let mut values = Vec::with_capacity(n_ev);
            for particular in &particulars {
                let mut v = particular.clone();
                for zb in z_ev.iter() {
                    let digit = (rem % q) as usize;
                    rem /= q;
                    let lam = elems[digit];
                    for (slot, &c) in v.iter_mut().zip(zb) {
                        *slot = *slot + lam * c;
                    }
                }
                values.push(v);
            }
            let pm = PMap::unverified(alg.clone(), values).expect("shape by construction");
            let compat = (0..n_ev).all(|j| {
                ad_matrix(alg, &pm.values[j]) == ad_matrix(alg, &alg.basis_vector(j)).pow(p)
            });
            if compat {
                Some(PMap { verified: true, ..pm })
            } else {
                None
            }
        })
        .collect();
    Ok(maps)
}

/// True iff iterating the p-map kills every even element. Exhaustive over
/// the even part when small; otherwise the basis plus its image closure.
pub fn is_p_nilpotent(r: &RestrictedAlgebra) -> bool {
    let alg = r.algebra.as_ref();
    let test_set: Vec<Vec<Fq>> = match even_count(alg) {
        Some(c) if c <= EXHAUSTIVE_LIMIT => all_even_vectors(alg),
        _ => {
            let mut set: Vec<Vec<Fq>> = (0..alg.n_even()).map(|j| alg.basis_vector(j)).collect();
            let mut i = 0;
            while i < set.len() && set.len() < 4000 {
                let img = pmap_eval(&r.pmap, &set[i]).expect("even by construction");
                if !is_zero_vec(&img) && !set.contains(&img) {
                    set.push(img);
                }
                i += 1;
            }
            set
        }
    };
    for x in &test_set {
        let mut seen: Vec<Vec<Fq>> = vec![x.clone()];
        let mut cur = x.clone();
        loop {
            cur = pmap_eval(&r.pmap, &cur).expect("even by construction");
            if is_zero_vec(&cur) {
                break;
            }
            if seen.contains(&cur) {
                return false;
            }
            seen.push(cur.clone());
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Restricted derivations

/// Basis of `Der_p(L)` split by parity, with the image of `ad` and the
/// quotient superdimension `Der_p/ad` (= H¹ with adjoint coefficients in
/// the restricted complex).
#[derive(Debug, Clone)]
pub struct RestrictedDerivations {
    pub even: Vec<Mat>,
    pub odd: Vec<Mat>,
    pub ad_sdim: (usize, usize),
    pub quotient_sdim: (usize, usize),
}

impl RestrictedDerivations {
    pub fn sdim(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }
}

fn flatten_mat(m: &Mat) -> Vec<Fq> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        out.extend_from_slice(m.row(i));
    }
    out
}

/// Solves `D([x,y]) = [D(x),y] + (-1)^{|D||x|}[x,D(y)]` on basis pairs and
/// `D(e_j^[p]) = ad_{e_j}^{p-1} D(e_j)` on the even basis, then re-checks
/// the (nonlinear in x) restrictedness on seeded random even vectors.
pub fn restricted_derivations(r: &RestrictedAlgebra) -> RestrictedDerivations {
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let p = spec.characteristic();
    let dim = alg.dim();
    let mut bases: [Vec<Mat>; 2] = [Vec::new(), Vec::new()];

    for (di, dpar) in [false, true].into_iter().enumerate() {
        let pos: Vec<(usize, usize)> = (0..dim)
            .flat_map(|rr| (0..dim).map(move |cc| (rr, cc)))
            .filter(|&(rr, cc)| (alg.parity(rr) != alg.parity(cc)) == dpar)
            .collect();
        let mut grid = vec![vec![None; dim]; dim];
        for (t, &(rr, cc)) in pos.iter().enumerate() {
            grid[rr][cc] = Some(t);
        }
        let mut rows: Vec<Vec<Fq>> = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let bij = alg.bracket_basis(i, j);
                let sgn = if dpar && alg.parity(i) { spec.from_int(-1) } else { spec.one() };
                for rr in 0..dim {
                    let mut row = vec![spec.zero(); pos.len()];
                    for k in 0..dim {
                        if !bij[k].is_zero() {
                            if let Some(t) = grid[rr][k] {
                                row[t] = row[t] + bij[k];
                            }
                        }
                    }
                    for s in 0..dim {
                        let c = alg.bracket_basis(s, j)[rr];
                        if !c.is_zero() {
                            if let Some(t) = grid[s][i] {
                                row[t] = row[t] - c;
                            }
                        }
                        let c2 = alg.bracket_basis(i, s)[rr];
                        if !c2.is_zero() {
                            if let Some(t) = grid[s][j] {
                                row[t] = row[t] - sgn * c2;
                            }
                        }
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        for j in 0..alg.n_even() {
            let vj = r.pmap.value(j);
            let m = ad_matrix(alg, &alg.basis_vector(j)).pow(p - 1);
            for rr in 0..dim {
                let mut row = vec![spec.zero(); pos.len()];
                for k in 0..dim {
                    if !vj[k].is_zero() {
                        if let Some(t) = grid[rr][k] {
                            row[t] = row[t] + vj[k];
                        }
                    }
                }
                for s in 0..dim {
                    let c = m.get(rr, s);
                    if !c.is_zero() {
                        if let Some(t) = grid[s][j] {
                            row[t] = row[t] - c;
                        }
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let system = Mat::from_rows(spec, rows, pos.len());
        for v in system.nullspace() {
            let mut d = Mat::zero(spec, dim, dim);
            for (t, &(rr, cc)) in pos.iter().enumerate() {
                d.set(rr, cc, v[t]);
            }
            bases[di].push(d);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e57_0001);
        bases[di].retain(|d| {
            (0..40).all(|_| {
                let x = random_even_vector(alg, &mut rng);
                let xp = pmap_eval(&r.pmap, &x).expect("even by construction");
                let lhs = d.mul_vec(&xp);
                let rhs = ad_matrix(alg, &x).pow(p - 1).mul_vec(&d.mul_vec(&x));
                lhs == rhs
            })
        });
    }

    let mut ad_rank = [0usize; 2];
    let mut der_ech = [Echelon::new(spec, dim * dim), Echelon::new(spec, dim * dim)];
    for (di, basis) in bases.iter().enumerate() {
        for d in basis {
            der_ech[di].insert(&flatten_mat(d));
        }
    }
    let mut ad_ech = [Echelon::new(spec, dim * dim), Echelon::new(spec, dim * dim)];
    for i in 0..dim {
        let m = ad_matrix(alg, &alg.basis_vector(i));
        let par = alg.parity(i) as usize;
        let flat = flatten_mat(&m);
        assert!(der_ech[par].contains(&flat), "ad_x must be a restricted derivation");
        if ad_ech[par].insert(&flat) {
            ad_rank[par] += 1;
        }
    }

    let [ev, od] = bases;
    RestrictedDerivations {
        quotient_sdim: (ev.len() - ad_rank[0], od.len() - ad_rank[1]),
        ad_sdim: (ad_rank[0], ad_rank[1]),
        even: ev,
        odd: od,
    }
}

// ---------------------------------------------------------------------------
// Morphisms

/// True iff `f` preserves brackets on basis pairs and intertwines the two
/// p-maps, on the even basis and on seeded random even vectors (exhaustive
/// when the even part is small).
pub fn check_restricted_morphism(
    f: &GradedMap,
    r1: &RestrictedAlgebra,
    r2: &RestrictedAlgebra,
) -> Result<bool, RestrictedError> {
    let (s1, s2) = (r1.algebra.sdim(), r2.algebra.sdim());
    if s1 != s2 {
        return Err(RestrictedError::DimensionMismatch {
            want: s1.0 + s1.1,
            got: s2.0 + s2.1,
        });
    }
    if !f.is_algebra_morphism() {
        return Ok(false);
    }
    let alg = r1.algebra.as_ref();
    let targets: Vec<Vec<Fq>> = match even_count(alg) {
        Some(c) if c <= EXHAUSTIVE_LIMIT => all_even_vectors(alg),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0a1b_2c3d);
            let mut v: Vec<Vec<Fq>> = (0..alg.n_even()).map(|j| alg.basis_vector(j)).collect();
            v.extend((0..200).map(|_| random_even_vector(alg, &mut rng)));
            v
        }
    };
    for x in &targets {
        let lhs = f.apply(&pmap_eval(&r1.pmap, x)?);
        let rhs = pmap_eval(&r2.pmap, &f.apply(x))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
