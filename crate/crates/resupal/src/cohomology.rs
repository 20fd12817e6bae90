//! Chevalley-Eilenberg cochains and differentials for Lie superalgebras in
//! every degree, for scalar and adjoint coefficient modules, together with
//! the restricted complex through degree 2: compatibility of the p-power
//! correction, the induced maps of degree 1 and 2, restricted cocycle and
//! coboundary spaces, and the even subcomplex that classifies restricted
//! central extensions.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::enumeration_bound;
use crate::gfield::{enumerate_field, FieldSpec, Fq};
use crate::linalg::{Echelon, Mat};
use crate::liesuper::{ad_matrix, format_vector, parity_of, SuperAlgebra, VectorParity};
use crate::restricted::{all_even_vectors, even_count, random_even_vector, RestrictedAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cochain of degree {got} where degree {want} is required")]
    DegreeMismatch { want: usize, got: usize },
    #[error("computation needs {needed} evaluations, above the enumeration bound")]
    BoundExceeded { needed: u128 },
}

/// Pair count up to which even-pair checks run over the whole square.
const EXHAUSTIVE_PAIRS: u128 = 2000;
/// Sample size when the square is too large to enumerate.
const SAMPLED_PAIRS: usize = 500;
const PAIR_SEED: u64 = 0x517c_c1b7;

// ---------------------------------------------------------------------------
// Coefficient modules

/// Finite-dimensional graded module over a Lie superalgebra, stored as one
/// action matrix per algebra basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffModule {
    m_even: usize,
    m_odd: usize,
    action: Vec<Mat>,
    names: Vec<String>,
    trivial: bool,
}

impl CoeffModule {
    /// One-dimensional even module with zero action.
    pub fn trivial_scalar(alg: &SuperAlgebra) -> CoeffModule {
        CoeffModule {
            m_even: 1,
            m_odd: 0,
            action: vec![Mat::zero(alg.spec(), 1, 1); alg.dim()],
            names: vec!["1".to_string()],
            trivial: true,
        }
    }

    /// One-dimensional odd module with zero action.
    pub fn trivial_scalar_odd(alg: &SuperAlgebra) -> CoeffModule {
        CoeffModule { m_odd: 1, m_even: 0, ..CoeffModule::trivial_scalar(alg) }
    }

    /// The algebra acting on itself through `ad`.
    pub fn adjoint(alg: &SuperAlgebra) -> CoeffModule {
        let action: Vec<Mat> =
            (0..alg.dim()).map(|i| ad_matrix(alg, &alg.basis_vector(i))).collect();
        let trivial = action.iter().all(|a| *a == Mat::zero(alg.spec(), alg.dim(), alg.dim()));
        CoeffModule {
            m_even: alg.n_even(),
            m_odd: alg.n_odd(),
            action,
            names: alg.names().to_vec(),
            trivial,
        }
    }

    pub fn dim(&self) -> usize {
        self.m_even + self.m_odd
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.m_even, self.m_odd)
    }

    /// True when the value slot is odd.
    pub fn parity(&self, slot: usize) -> bool {
        slot >= self.m_even
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    /// Action matrix of an arbitrary algebra vector.
    pub fn action_of(&self, v: &[Fq]) -> Mat {
        let mut out = Mat::zero(self.action[0].spec(), self.dim(), self.dim());
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                mat_add_scaled(&mut out, &self.action[i], *c);
            }
        }
        out
    }

    pub fn trivial_action(&self) -> bool {
        self.trivial
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Grading and super Leibniz law of the action on basis triples.
pub fn module_violations(alg: &SuperAlgebra, module: &CoeffModule) -> Vec<String> {
    let dim_m = module.dim();
    let spec = alg.spec();
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        let a = module.action(i);
        for r in 0..dim_m {
            for c in 0..dim_m {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let want = module.parity(c) ^ alg.parity(i);
                if module.parity(r) != want {
                    out.push(format!("action of {} breaks the grading at ({r},{c})", alg.name(i)));
                }
            }
        }
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = module.action_of(alg.bracket_basis(i, j));
            let mut rhs = module.action(i).mul(module.action(j));
            let ji = module.action(j).mul(module.action(i));
            let sign = if alg.parity(i) && alg.parity(j) { spec.one() } else { -spec.one() };
            mat_add_scaled(&mut rhs, &ji, sign);
            if lhs != rhs {
                out.push(format!(
                    "bracket action of ({}, {}) violates the module law",
                    alg.name(i),
                    alg.name(j)
                ));
            }
        }
    }
    out
}

/// Restricted module law: the p-fold action of an even basis vector equals
/// the action of its p-th power.
pub fn restricted_module_violations(r: &RestrictedAlgebra, module: &CoeffModule) -> Vec<String> {
    let alg = r.algebra.as_ref();
    let p = alg.spec().characteristic();
    let mut out = Vec::new();
    for j in 0..alg.n_even() {
        let lhs = module.action(j).pow(p);
        let rhs = module.action_of(r.pmap.value(j));
        if lhs != rhs {
            out.push(format!("p-fold action of {} differs from the action of its p-th power", alg.name(j)));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cochain spaces

/// One basis cochain: strictly increasing even arguments, weakly increasing
/// odd arguments, and the module basis slot carrying the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCochain {
    pub evens: Vec<usize>,
    pub odds: Vec<usize>,
    pub slot: usize,
}

/// Ordered basis of the degree-k cochain space, indexed for fast lookup.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub k: usize,
    spec: FieldSpec,
    basis: Vec<BasisCochain>,
    parities: Vec<bool>,
    index: HashMap<(Vec<usize>, Vec<usize>, usize), usize>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisCochain] {
        &self.basis
    }

    /// True when the basis cochain is odd.
    pub fn parity(&self, i: usize) -> bool {
        self.parities[i]
    }

    pub fn parities(&self) -> &[bool] {
        &self.parities
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn index_of(&self, evens: &[usize], odds: &[usize], slot: usize) -> Option<usize> {
        self.index.get(&(evens.to_vec(), odds.to_vec(), slot)).copied()
    }
}

fn combinations(n: usize, a: usize) -> Vec<Vec<usize>> {
    if a > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..a).collect();
    loop {
        out.push(cur.clone());
        let mut i = a;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (a - i) {
                cur[i] += 1;
                for j in i + 1..a {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn multisets(m: usize, b: usize, offset: usize) -> Vec<Vec<usize>> {
    if b == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![offset; b];
    loop {
        out.push(cur.clone());
        let mut i = b;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < offset + m - 1 {
                cur[i] += 1;
                for j in i + 1..b {
                    cur[j] = cur[i];
                }
                break;
            }
        }
    }
}

/// Basis of `C^k(L;M)`, ordered by odd-argument count, then even and odd
/// index tuples lexicographically, then value slot.
pub fn cochain_basis(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> CochainSpace {
    let n = alg.n_even();
    let m = alg.n_odd();
    let dim_m = module.dim();
    let mut basis = Vec::new();
    let mut parities = Vec::new();
    for b in 0..=k {
        let a = k - b;
        if a > n {
            continue;
        }
        for s in combinations(n, a) {
            for t in multisets(m, b, n) {
                for slot in 0..dim_m {
                    parities.push((b % 2 == 1) ^ module.parity(slot));
                    basis.push(BasisCochain { evens: s.clone(), odds: t.clone(), slot });
                }
            }
        }
    }
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, bc)| ((bc.evens.clone(), bc.odds.clone(), bc.slot), i))
        .collect();
    CochainSpace { k, spec: alg.spec(), basis, parities, index }
}

/// Parity-split dimension of `C^k(L;M)`.
pub fn cochain_dim(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> (usize, usize) {
    let space = cochain_basis(alg, module, k);
    let odd = space.parities.iter().filter(|&&p| p).count();
    (space.dim() - odd, odd)
}

/// Coefficient vector over a [`CochainSpace`] basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub k: usize,
    pub coeffs: Vec<Fq>,
}

impl Cochain {
    pub fn zero(space: &CochainSpace) -> Cochain {
        Cochain { k: space.k, coeffs: vec![space.spec.zero(); space.dim()] }
    }

    pub fn unit(space: &CochainSpace, i: usize) -> Cochain {
        let mut c = Cochain::zero(space);
        c.coeffs[i] = space.spec.one();
        c
    }

    pub fn from_coeffs(k: usize, coeffs: Vec<Fq>) -> Cochain {
        Cochain { k, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Parity content of a cochain over the given space.
pub fn cochain_parity(space: &CochainSpace, c: &Cochain) -> VectorParity {
    let ev = c.coeffs.iter().zip(&space.parities).any(|(c, &p)| !p && !c.is_zero());
    let od = c.coeffs.iter().zip(&space.parities).any(|(c, &p)| p && !c.is_zero());
    match (ev, od) {
        (false, false) => VectorParity::Zero,
        (true, false) => VectorParity::Even,
        (false, true) => VectorParity::Odd,
        (true, true) => VectorParity::Mixed,
    }
}

// ---------------------------------------------------------------------------
// Evaluation

/// Canonical order of basis-index arguments with the Koszul sign; None when
/// the cochain vanishes because an even argument repeats.
fn normal_form(alg: &SuperAlgebra, idxs: &[usize]) -> Option<(bool, Vec<usize>, Vec<usize>)> {
    let mut v = idxs.to_vec();
    let mut neg = false;
    loop {
        let mut swapped = false;
        for t in 1..v.len() {
            if v[t - 1] > v[t] {
                // adjacent swap costs -(-1)^{|a||b|}
                if !(alg.parity(v[t - 1]) && alg.parity(v[t])) {
                    neg = !neg;
                }
                v.swap(t - 1, t);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    for t in 1..v.len() {
        if v[t - 1] == v[t] && !alg.parity(v[t]) {
            return None;
        }
    }
    let evens: Vec<usize> = v.iter().copied().filter(|&i| !alg.parity(i)).collect();
    let odds: Vec<usize> = v.iter().copied().filter(|&i| alg.parity(i)).collect();
    Some((neg, evens, odds))
}

fn eval_on_basis(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    space: &CochainSpace,
    c: &Cochain,
    idxs: &[usize],
) -> Vec<Fq> {
    let spec = alg.spec();
    let mut out = vec![spec.zero(); module.dim()];
    if let Some((neg, evens, odds)) = normal_form(alg, idxs) {
        for slot in 0..module.dim() {
            if let Some(col) = space.index_of(&evens, &odds, slot) {
                let v = c.coeffs[col];
                out[slot] = if neg { -v } else { v };
            }
        }
    }
    out
}

/// Multilinear super antisymmetric extension of a cochain to vector
/// arguments.
pub fn evaluate_cochain(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    c: &Cochain,
    args: &[Vec<Fq>],
) -> Result<Vec<Fq>, CohomologyError> {
    let space = cochain_basis(alg, module, c.k);
    evaluate_cochain_in(alg, module, &space, c, args)
}

/// [`evaluate_cochain`] against a caller-built basis, for hot loops.
pub fn evaluate_cochain_in(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    space: &CochainSpace,
    c: &Cochain,
    args: &[Vec<Fq>],
) -> Result<Vec<Fq>, CohomologyError> {
    if args.len() != c.k {
        return Err(CohomologyError::DegreeMismatch { want: c.k, got: args.len() });
    }
    let spec = alg.spec();
    let mut out = vec![spec.zero(); module.dim()];
    let k = c.k;
    if k == 0 {
        out.copy_from_slice(&c.coeffs);
        return Ok(out);
    }
    let mut idx = vec![0usize; k];
    'outer: loop {
        let mut coef = spec.one();
        for (t, &i) in idx.iter().enumerate() {
            coef = coef * args[t][i];
            if coef.is_zero() {
                break;
            }
        }
        if !coef.is_zero() {
            let term = eval_on_basis(alg, module, &space, c, &idx);
            for (o, t) in out.iter_mut().zip(term) {
                *o = *o + coef * t;
            }
        }
        let mut t = 0;
        loop {
            if t == k {
                break 'outer;
            }
            idx[t] += 1;
            if idx[t] < alg.dim() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg differential

fn mat_add_scaled(target: &mut Mat, other: &Mat, c: Fq) {
    for r in 0..target.nrows() {
        for s in 0..target.ncols() {
            let v = other.get(r, s);
            if !v.is_zero() {
                target.set(r, s, target.get(r, s) + c * v);
            }
        }
    }
}

fn cache_key(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> Vec<u8> {
    let spec = alg.spec();
    let mut key = Vec::new();
    let mut push = |x: u64| key.extend_from_slice(&x.to_le_bytes());
    push(spec.characteristic() as u64);
    push(spec.degree() as u64);
    push(alg.n_even() as u64);
    push(alg.n_odd() as u64);
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for c in alg.bracket_basis(i, j) {
                let (a, b) = c.coeffs();
                push(a as u64);
                push(b as u64);
            }
        }
    }
    let (me, mo) = module.sdim();
    push(me as u64);
    push(mo as u64);
    for a in &module.action {
        for r in 0..a.nrows() {
            for s in 0..a.ncols() {
                let (x, y) = a.get(r, s).coeffs();
                push(x as u64);
                push(y as u64);
            }
        }
    }
    push(k as u64);
    key
}

fn d_cache() -> &'static Mutex<HashMap<Vec<u8>, Mat>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u8>, Mat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Matrix of the degree-k Chevalley-Eilenberg differential on the cochain
/// basis, columns in `C^k`, rows in `C^{k+1}`.
pub fn d_ce(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> Mat {
    let key = cache_key(alg, module, k);
    if let Some(hit) = d_cache().lock().expect("differential cache").get(&key) {
        return hit.clone();
    }
    let mat = build_d(alg, module, k);
    d_cache().lock().expect("differential cache").insert(key, mat.clone());
    mat
}

fn build_d(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> Mat {
    let spec = alg.spec();
    let dim_m = module.dim();
    let space_k = cochain_basis(alg, module, k);
    let space_k1 = cochain_basis(alg, module, k + 1);
    let mut mat = Mat::zero(spec, space_k1.dim(), space_k.dim());
    if dim_m == 0 {
        return mat;
    }
    if k == 0 {
        // d(m)(x) = (-1)^{|m||x|} x.m
        for slot in 0..dim_m {
            for i in 0..alg.dim() {
                let act = module.action(i);
                let neg = module.parity(slot) && alg.parity(i);
                let (evens, odds) = single_arg(alg, i);
                for rr in 0..dim_m {
                    let v = act.get(rr, slot);
                    if v.is_zero() {
                        continue;
                    }
                    let row = space_k1.index_of(&evens, &odds, rr).expect("degree-1 basis");
                    mat.set(row, slot, mat.get(row, slot) + if neg { -v } else { v });
                }
            }
        }
        return mat;
    }
    // value slots of one argument tuple are contiguous, so each tuple owns a
    // block of rows and blocks can be built in parallel
    let tuples: Vec<(usize, Vec<usize>)> = space_k1
        .basis()
        .iter()
        .enumerate()
        .step_by(dim_m)
        .map(|(base, bc)| {
            let mut args = bc.evens.clone();
            args.extend_from_slice(&bc.odds);
            (base, args)
        })
        .collect();
    let blocks: Vec<(usize, Mat)> = tuples
        .par_iter()
        .map(|(base, args)| (*base, d_block(alg, module, &space_k, args)))
        .collect();
    for (base, block) in blocks {
        for rr in 0..dim_m {
            for col in 0..space_k.dim() {
                let v = block.get(rr, col);
                if !v.is_zero() {
                    mat.set(base + rr, col, v);
                }
            }
        }
    }
    mat
}

fn single_arg(alg: &SuperAlgebra, i: usize) -> (Vec<usize>, Vec<usize>) {
    if alg.parity(i) {
        (Vec::new(), vec![i])
    } else {
        (vec![i], Vec::new())
    }
}

/// Rows of the differential for one argument tuple, as a value-slot by
/// column matrix. Signs follow the printed convention with 1-based argument
/// positions.
fn d_block(alg: &SuperAlgebra, module: &CoeffModule, space_k: &CochainSpace, args: &[usize]) -> Mat {
    let spec = alg.spec();
    let dim_m = module.dim();
    let mut block = Mat::zero(spec, dim_m, space_k.dim());
    let pars: Vec<bool> = args.iter().map(|&a| alg.parity(a)).collect();
    for q in 0..args.len() {
        for r in q + 1..args.len() {
            let u = alg.bracket_basis(args[q], args[r]);
            let mut e = r + 1;
            if pars[r] {
                e += pars[q + 1..r].iter().filter(|&&p| p).count();
            }
            let neg0 = e % 2 == 1;
            for (t, &ut) in u.iter().enumerate() {
                if ut.is_zero() {
                    continue;
                }
                let mut sub = Vec::with_capacity(args.len() - 1);
                for (pos, &a) in args.iter().enumerate() {
                    if pos == r {
                        continue;
                    }
                    sub.push(if pos == q { t } else { a });
                }
                if let Some((neg1, evens, odds)) = normal_form(alg, &sub) {
                    let c = if neg0 ^ neg1 { -ut } else { ut };
                    for slot in 0..dim_m {
                        if let Some(col) = space_k.index_of(&evens, &odds, slot) {
                            block.set(slot, col, block.get(slot, col) + c);
                        }
                    }
                }
            }
        }
    }
    if !module.trivial_action() {
        for r in 0..args.len() {
            let act = module.action(args[r]);
            let sub: Vec<usize> =
                args.iter().enumerate().filter(|&(pos, _)| pos != r).map(|(_, &a)| a).collect();
            if let Some((neg1, evens, odds)) = normal_form(alg, &sub) {
                let mut e = r + 1;
                if pars[r] {
                    e += pars[..r].iter().filter(|&&p| p).count();
                }
                for s_val in 0..dim_m {
                    let col = match space_k.index_of(&evens, &odds, s_val) {
                        Some(col) => col,
                        None => continue,
                    };
                    let mut ee = e;
                    if pars[r] && space_k.parity(col) {
                        ee += 1;
                    }
                    let neg = (ee % 2 == 1) ^ neg1;
                    for rr in 0..dim_m {
                        let v = act.get(rr, s_val);
                        if !v.is_zero() {
                            block.set(rr, col, block.get(rr, col) + if neg { -v } else { v });
                        }
                    }
                }
            }
        }
    }
    block
}

// ---------------------------------------------------------------------------
// Ordinary cohomology dimensions

/// Parity-split dimensions of a spanned subspace; panics if the span is not
/// graded.
fn graded_dims(spec: FieldSpec, parities: &[bool], vectors: &[Vec<Fq>]) -> (usize, usize) {
    let mut ech = Echelon::new(spec, parities.len());
    for v in vectors {
        ech.insert(v);
    }
    let total = ech.rank();
    let restricted_rank = |keep_odd: bool| -> usize {
        let cols: Vec<usize> =
            (0..parities.len()).filter(|&i| parities[i] == keep_odd).collect();
        if cols.is_empty() || total == 0 {
            return 0;
        }
        let rows: Vec<Vec<Fq>> =
            ech.basis().iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
        Mat::from_rows(spec, rows, cols.len()).rank()
    };
    let even = total - restricted_rank(true);
    let odd = total - restricted_rank(false);
    assert_eq!(even + odd, total, "span is not parity graded");
    (even, odd)
}

/// Parity-split dimensions of `H^k(L;M)`.
pub fn h_ce_dims(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> (usize, usize) {
    let spec = alg.spec();
    let space = cochain_basis(alg, module, k);
    let z = d_ce(alg, module, k).nullspace();
    let b: Vec<Vec<Fq>> = if k == 0 {
        Vec::new()
    } else {
        let prev = d_ce(alg, module, k - 1);
        (0..prev.ncols()).map(|c| (0..prev.nrows()).map(|r| prev.get(r, c)).collect()).collect()
    };
    let (ze, zo) = graded_dims(spec, space.parities(), &z);
    let (be, bo) = graded_dims(spec, space.parities(), &b);
    assert!(be <= ze && bo <= zo, "coboundaries leave the cocycle space");
    (ze - be, zo - bo)
}

// ---------------------------------------------------------------------------
// Compatibility of the p-power correction

/// Matrix sending degree-2 cochain coefficients to the value on a vector
/// pair.
fn pair_eval_matrix(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    space2: &CochainSpace,
    u: &[Fq],
    v: &[Fq],
) -> Mat {
    let spec = alg.spec();
    let mut out = Mat::zero(spec, module.dim(), space2.dim());
    for s in 0..alg.dim() {
        if u[s].is_zero() {
            continue;
        }
        for t in 0..alg.dim() {
            if v[t].is_zero() {
                continue;
            }
            if let Some((neg, evens, odds)) = normal_form(alg, &[s, t]) {
                let c = if neg { -(u[s] * v[t]) } else { u[s] * v[t] };
                for slot in 0..module.dim() {
                    let col = space2.index_of(&evens, &odds, slot).expect("degree-2 basis");
                    out.set(slot, col, out.get(slot, col) + c);
                }
            }
        }
    }
    out
}

/// Correction sums of the additivity law for the pair (x, y), as a matrix in
/// the degree-2 cochain coefficients. Tuples run over the free slots 3..p
/// with the first two slots pinned to x and y; words are left-nested.
fn compat_terms_matrix(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    space2: &CochainSpace,
    x: &[Fq],
    y: &[Fq],
) -> Mat {
    let spec = alg.spec();
    let p = spec.characteristic() as usize;
    let dim_m = module.dim();
    let mut out = Mat::zero(spec, dim_m, space2.dim());
    let free = p - 2;
    let act_x = if module.trivial_action() { None } else { Some(module.action_of(x)) };
    let act_y = if module.trivial_action() { None } else { Some(module.action_of(y)) };
    for mask in 0u64..(1 << free) {
        let mut pick = vec![false; p];
        pick[1] = true;
        for b in 0..free {
            if mask >> b & 1 == 1 {
                pick[b + 2] = true;
            }
        }
        let count_x = pick.iter().filter(|&&c| !c).count();
        let inv = spec
            .from_int(count_x as i64)
            .inv()
            .expect("tuple multiplicity stays below the characteristic");
        let elem = |t: usize| -> &[Fq] { if pick[t] { y } else { x } };
        // words[l] = [x_1,...,x_l], with words[1] = x_1
        let mut words: Vec<Vec<Fq>> = Vec::with_capacity(p);
        words.push(Vec::new());
        words.push(x.to_vec());
        for l in 2..p {
            let next = alg.br(&words[l - 1], elem(l - 1));
            words.push(next);
        }
        let lead = pair_eval_matrix(alg, module, space2, &words[p - 1], elem(p - 1));
        mat_add_scaled(&mut out, &lead, inv);
        if let (Some(ax), Some(ay)) = (&act_x, &act_y) {
            let mut op = Mat::identity(spec, dim_m);
            for k in 1..=p - 2 {
                op = op.mul(if pick[p - k] { ay } else { ax });
                let base =
                    pair_eval_matrix(alg, module, space2, &words[p - k - 1], elem(p - k - 1));
                let c = if k % 2 == 1 { -inv } else { inv };
                mat_add_scaled(&mut out, &op.mul(&base), c);
            }
        }
    }
    out
}

/// Cochain-coefficient matrix of the correction picked up by the canonical
/// extension along the ascending-index fold.
fn fold_terms_matrix(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    space2: &CochainSpace,
    x: &[Fq],
) -> Mat {
    let spec = alg.spec();
    let mut out = Mat::zero(spec, module.dim(), space2.dim());
    let mut acc: Option<Vec<Fq>> = None;
    for j in 0..alg.n_even() {
        if x[j].is_zero() {
            continue;
        }
        let mut step = vec![spec.zero(); alg.dim()];
        step[j] = x[j];
        match acc.as_mut() {
            None => acc = Some(step),
            Some(prev) => {
                let terms = compat_terms_matrix(alg, module, space2, prev, &step);
                mat_add_scaled(&mut out, &terms, spec.one());
                prev[j] = x[j];
            }
        }
    }
    out
}

/// Value at x of the canonical extension of omega, defined by semilinearity
/// on basis lines and the additivity law along ascending basis indices. Odd
/// coordinates of x are ignored.
pub fn omega_extend(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    phi: &Cochain,
    omega: &[Vec<Fq>],
    x: &[Fq],
) -> Vec<Fq> {
    let spec = alg.spec();
    let p = spec.characteristic() as u64;
    let space2 = cochain_basis(alg, module, 2);
    let mut out = vec![spec.zero(); module.dim()];
    for j in 0..alg.n_even() {
        if x[j].is_zero() {
            continue;
        }
        let c = x[j].pow(p);
        for (o, w) in out.iter_mut().zip(&omega[j]) {
            *o = *o + c * *w;
        }
    }
    let corr = fold_terms_matrix(alg, module, &space2, x).mul_vec(&phi.coeffs);
    for (o, c) in out.iter_mut().zip(corr) {
        *o = *o + c;
    }
    out
}

/// Deterministic family of even pairs: the full square when small enough,
/// otherwise a seeded sample.
fn even_pair_family(alg: &SuperAlgebra) -> Vec<(Vec<Fq>, Vec<Fq>)> {
    let exhaustive = matches!(
        even_count(alg).and_then(|c| c.checked_mul(c)),
        Some(c) if c <= EXHAUSTIVE_PAIRS
    );
    if exhaustive {
        let all = all_even_vectors(alg);
        let mut out = Vec::with_capacity(all.len() * all.len());
        for x in &all {
            for y in &all {
                out.push((x.clone(), y.clone()));
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
        (0..SAMPLED_PAIRS)
            .map(|_| (random_even_vector(alg, &mut rng), random_even_vector(alg, &mut rng)))
            .collect()
    }
}

fn vec_add(spec: FieldSpec, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let _ = spec;
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

/// Checks that the canonical extension of omega satisfies the semilinearity
/// and additivity laws for phi. Empty report means compatible.
pub fn phi_compat_check(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    phi: &Cochain,
    omega: &[Vec<Fq>],
) -> Vec<String> {
    assert_eq!(phi.k, 2, "compatibility is a degree-2 notion");
    let spec = alg.spec();
    let p = spec.characteristic() as u64;
    let space2 = cochain_basis(alg, module, 2);
    let mut report = Vec::new();
    let ext = |x: &[Fq]| omega_extend(alg, module, phi, omega, x);
    let pairs = even_pair_family(alg);
    for (x, y) in &pairs {
        let lhs = ext(&vec_add(spec, x, y));
        let mut rhs = vec_add(spec, &ext(x), &ext(y));
        let corr = compat_terms_matrix(alg, module, &space2, x, y).mul_vec(&phi.coeffs);
        for (r, c) in rhs.iter_mut().zip(corr) {
            *r = *r + c;
        }
        if lhs != rhs {
            report.push(format!(
                "additivity fails at x = {}, y = {}",
                format_vector(alg.names(), x),
                format_vector(alg.names(), y)
            ));
        }
    }
    let lambdas = enumerate_field(spec);
    let mut targets: Vec<Vec<Fq>> = (0..alg.n_even()).map(|j| alg.basis_vector(j)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED ^ 1);
    for _ in 0..4 {
        targets.push(random_even_vector(alg, &mut rng));
    }
    for x in &targets {
        let base = ext(x);
        for lam in &lambdas {
            let scaled: Vec<Fq> = x.iter().map(|c| *lam * *c).collect();
            let want: Vec<Fq> = base.iter().map(|c| lam.pow(p) * *c).collect();
            if ext(&scaled) != want {
                report.push(format!(
                    "semilinearity fails at x = {} with scalar {lam}",
                    format_vector(alg.names(), x)
                ));
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Induced maps

/// Restricted 2-cochain: an ordinary degree-2 cochain together with the
/// correction values on the even basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedCochain2 {
    pub phi: Cochain,
    pub omega_basis: Vec<Vec<Fq>>,
}

/// Codomain element of the degree-2 restricted differential: an ordinary
/// degree-3 cochain with the induced bilinear correction on basis pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedCochain3 {
    pub alpha: Cochain,
    pub beta: Vec<Vec<Vec<Fq>>>,
}

/// Degree-1 induced map: psi(x^[p]) minus the (p-1)-fold action of x on
/// psi(x), on every even basis vector.
pub fn ind1(r: &RestrictedAlgebra, module: &CoeffModule, psi: &Cochain) -> Vec<Vec<Fq>> {
    assert_eq!(psi.k, 1, "degree-1 input required");
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let p = spec.characteristic();
    let space1 = cochain_basis(alg, module, 1);
    let dim_m = module.dim();
    let psi_at = |i: usize| -> Vec<Fq> {
        let (evens, odds) = single_arg(alg, i);
        (0..dim_m)
            .map(|s| psi.coeffs[space1.index_of(&evens, &odds, s).expect("degree-1 basis")])
            .collect()
    };
    (0..alg.n_even())
        .map(|j| {
            let mut v = vec![spec.zero(); dim_m];
            for (t, c) in r.pmap.value(j).iter().enumerate() {
                if !c.is_zero() {
                    for (o, w) in v.iter_mut().zip(psi_at(t)) {
                        *o = *o + *c * w;
                    }
                }
            }
            let w = module.action(j).pow(p - 1).mul_vec(&psi_at(j));
            for (o, t) in v.iter_mut().zip(w) {
                *o = *o - t;
            }
            v
        })
        .collect()
}

/// Matrix in the degree-2 cochain coefficients of the induced bilinear map
/// at the basis pair (e_i, e_j), j even; the correction term is added
/// separately.
fn ind2_phi_matrix(
    r: &RestrictedAlgebra,
    module: &CoeffModule,
    space2: &CochainSpace,
    i: usize,
    j: usize,
) -> Mat {
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let p = spec.characteristic() as usize;
    let dim_m = module.dim();
    let ei = alg.basis_vector(i);
    let ej = alg.basis_vector(j);
    let mut out = pair_eval_matrix(alg, module, space2, &ei, r.pmap.value(j));
    // words[t] = [x, y, ..., y] with t bracket applications
    let mut words: Vec<Vec<Fq>> = Vec::with_capacity(p);
    words.push(ei);
    for t in 1..p {
        let next = alg.br(&words[t - 1], &ej);
        words.push(next);
    }
    let aj = module.action(j);
    let mut power = Mat::identity(spec, dim_m);
    let mut terms: Vec<Mat> = Vec::with_capacity(p);
    for jj in (0..p).rev() {
        // exponent i = p - 1 - jj pairs with the word of jj brackets
        let base = pair_eval_matrix(alg, module, space2, &words[jj], &ej);
        terms.push(power.mul(&base));
        power = aj.mul(&power);
    }
    for (t, term) in terms.iter().enumerate() {
        // t-th pushed term has exponent i = t
        let c = if t % 2 == 1 { spec.one() } else { -spec.one() };
        mat_add_scaled(&mut out, term, c);
    }
    out
}

/// Degree-2 induced map on all basis pairs (x any basis vector, y even
/// basis vector). The correction term follows the parity split, so the sign
/// depends only on the value-slot parity.
pub fn ind2(
    r: &RestrictedAlgebra,
    module: &CoeffModule,
    rc: &RestrictedCochain2,
) -> Vec<Vec<Vec<Fq>>> {
    let alg = r.algebra.as_ref();
    let space2 = cochain_basis(alg, module, 2);
    let dim_m = module.dim();
    (0..alg.dim())
        .map(|i| {
            let act = module.action(i);
            (0..alg.n_even())
                .map(|j| {
                    let mut v = ind2_phi_matrix(r, module, &space2, i, j).mul_vec(&rc.phi.coeffs);
                    for (rr, slot) in v.iter_mut().enumerate() {
                        let mut s = alg.spec().zero();
                        for ss in 0..dim_m {
                            let mut t = act.get(rr, ss) * rc.omega_basis[j][ss];
                            if alg.parity(i) && module.parity(ss) {
                                t = -t;
                            }
                            s = s + t;
                        }
                        *slot = *slot + s;
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Degree-1 restricted differential.
pub fn d1_res(r: &RestrictedAlgebra, module: &CoeffModule, psi: &Cochain) -> RestrictedCochain2 {
    let alg = r.algebra.as_ref();
    let d1 = d_ce(alg, module, 1);
    RestrictedCochain2 {
        phi: Cochain::from_coeffs(2, d1.mul_vec(&psi.coeffs)),
        omega_basis: ind1(r, module, psi),
    }
}

/// Degree-2 restricted differential.
pub fn d2_res(
    r: &RestrictedAlgebra,
    module: &CoeffModule,
    rc: &RestrictedCochain2,
) -> RestrictedCochain3 {
    let alg = r.algebra.as_ref();
    let d2 = d_ce(alg, module, 2);
    RestrictedCochain3 {
        alpha: Cochain::from_coeffs(3, d2.mul_vec(&rc.phi.coeffs)),
        beta: ind2(r, module, rc),
    }
}

/// Correction sum of the additivity law for alpha-compatibility. Tuple
/// convention: h_1 = y1, h_2 = y2, free slots h_3..h_p; for each j and
/// k <= j the cochain argument words are [x, h_{p-k}, ..., h_{p-j+1}]
/// (indices descending), [h_1, ..., h_{p-j-1}] and h_{p-j}, under the
/// operator product h_p ... h_{p-k+1}.
pub fn alpha_compat_defect(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    alpha: &Cochain,
    x: &[Fq],
    y1: &[Fq],
    y2: &[Fq],
) -> Vec<Fq> {
    assert_eq!(alpha.k, 3, "degree-3 input required");
    let spec = alg.spec();
    let p = spec.characteristic() as usize;
    let dim_m = module.dim();
    let mut out = vec![spec.zero(); dim_m];
    let free = p - 2;
    for mask in 0u64..(1 << free) {
        let mut pick = vec![false; p];
        pick[1] = true;
        for b in 0..free {
            if mask >> b & 1 == 1 {
                pick[b + 2] = true;
            }
        }
        let h = |t: usize| -> &[Fq] { if pick[t - 1] { y2 } else { y1 } };
        let count = pick.iter().filter(|&&c| !c).count();
        let inv = spec
            .from_int(count as i64)
            .inv()
            .expect("tuple multiplicity stays below the characteristic");
        for j in 0..=p - 2 {
            for k in 1..=j {
                let mut w1 = x.to_vec();
                for t in (p - j + 1..=p - k).rev() {
                    w1 = alg.br(&w1, h(t));
                }
                let mut w2 = h(1).to_vec();
                for t in 2..=p - j - 1 {
                    w2 = alg.br(&w2, h(t));
                }
                let val = evaluate_cochain(alg, module, alpha, &[w1, w2, h(p - j).to_vec()])
                    .expect("degree-3 evaluation");
                let mut op = Mat::identity(spec, dim_m);
                for t in p - k + 1..=p {
                    op = module.action_of(h(t)).mul(&op);
                }
                let applied = op.mul_vec(&val);
                let mut c = inv * spec.from_int(binomial(j, k));
                if j % 2 == 0 {
                    c = -c;
                }
                for (o, a) in out.iter_mut().zip(applied) {
                    *o = *o + c * a;
                }
            }
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut acc = 1i64;
    for t in 0..k {
        acc = acc * (n - t) as i64 / (t + 1) as i64;
    }
    acc
}

// ---------------------------------------------------------------------------
// Restricted cocycles and coboundaries

/// Length of the flattened coordinate vector of a restricted 2-cochain.
pub fn pack_len(alg: &SuperAlgebra, module: &CoeffModule) -> usize {
    let space2 = cochain_basis(alg, module, 2);
    space2.dim() + alg.n_even() * module.dim()
}

/// Flattens a restricted 2-cochain to a coordinate vector.
pub fn pack_cochain2(alg: &SuperAlgebra, module: &CoeffModule, rc: &RestrictedCochain2) -> Vec<Fq> {
    let mut out = rc.phi.coeffs.clone();
    for v in &rc.omega_basis {
        out.extend_from_slice(v);
    }
    assert_eq!(out.len(), pack_len(alg, module));
    out
}

/// Inverse of [`pack_cochain2`].
pub fn unpack_cochain2(alg: &SuperAlgebra, module: &CoeffModule, v: &[Fq]) -> RestrictedCochain2 {
    let space2 = cochain_basis(alg, module, 2);
    let nphi = space2.dim();
    let dim_m = module.dim();
    let omega_basis: Vec<Vec<Fq>> =
        (0..alg.n_even()).map(|j| v[nphi + j * dim_m..nphi + (j + 1) * dim_m].to_vec()).collect();
    RestrictedCochain2 { phi: Cochain::from_coeffs(2, v[..nphi].to_vec()), omega_basis }
}

struct Cocycle2System {
    rows: Vec<Vec<Fq>>,
    ncols: usize,
    nphi: usize,
}

/// Joint linear system whose kernel is the restricted 2-cocycle space:
/// the ordinary cocycle equations, vanishing of the induced bilinear map on
/// basis pairs, and order-independence of the canonical correction
/// extension.
fn cocycle2_system(
    r: &RestrictedAlgebra,
    module: &CoeffModule,
) -> Result<Cocycle2System, CohomologyError> {
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let p = spec.characteristic() as usize;
    let space2 = cochain_basis(alg, module, 2);
    let nphi = space2.dim();
    let dim_m = module.dim();
    let n = alg.n_even();
    let ncols = nphi + n * dim_m;
    let pairs = even_pair_family(alg);
    let needed = (pairs.len() as u128) << (p - 2);
    if needed > enumeration_bound() as u128 {
        return Err(CohomologyError::BoundExceeded { needed });
    }
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    let d2 = d_ce(alg, module, 2);
    for i in 0..d2.nrows() {
        let mut row = vec![spec.zero(); ncols];
        row[..nphi].copy_from_slice(d2.row(i));
        rows.push(row);
    }
    for i in 0..alg.dim() {
        let act = module.action(i);
        for j in 0..n {
            let pm = ind2_phi_matrix(r, module, &space2, i, j);
            for rr in 0..dim_m {
                let mut row = vec![spec.zero(); ncols];
                row[..nphi].copy_from_slice(pm.row(rr));
                for ss in 0..dim_m {
                    let mut v = act.get(rr, ss);
                    if alg.parity(i) && module.parity(ss) {
                        v = -v;
                    }
                    row[nphi + j * dim_m + ss] = v;
                }
                rows.push(row);
            }
        }
    }
    let defects: Vec<Mat> = pairs
        .par_iter()
        .map(|(x, y)| {
            let sum = vec_add(spec, x, y);
            let mut defect = fold_terms_matrix(alg, module, &space2, &sum);
            mat_add_scaled(&mut defect, &fold_terms_matrix(alg, module, &space2, x), -spec.one());
            mat_add_scaled(&mut defect, &fold_terms_matrix(alg, module, &space2, y), -spec.one());
            mat_add_scaled(
                &mut defect,
                &compat_terms_matrix(alg, module, &space2, x, y),
                -spec.one(),
            );
            defect
        })
        .collect();
    for defect in defects {
        for rr in 0..dim_m {
            if defect.row(rr).iter().any(|c| !c.is_zero()) {
                let mut row = vec![spec.zero(); ncols];
                row[..nphi].copy_from_slice(defect.row(rr));
                rows.push(row);
            }
        }
    }
    Ok(Cocycle2System { rows, ncols, nphi })
}

/// Basis of the restricted 2-cocycle space. Every returned pair is
/// re-verified against the compatibility checker.
pub fn z2_res(
    r: &RestrictedAlgebra,
    module: &CoeffModule,
) -> Result<Vec<RestrictedCochain2>, CohomologyError> {
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let sys = cocycle2_system(r, module)?;
    let kernel = Mat::from_rows(spec, sys.rows, sys.ncols).nullspace();
    let out: Vec<RestrictedCochain2> =
        kernel.iter().map(|v| unpack_cochain2(alg, module, v)).collect();
    for rc in &out {
        let report = phi_compat_check(alg, module, &rc.phi, &rc.omega_basis);
        assert!(report.is_empty(), "solver produced an incompatible pair: {report:?}");
    }
    Ok(out)
}

/// Independent generating set of the restricted 2-coboundary space, the
/// image of the degree-1 restricted differential on basis cochains.
pub fn b2_res(r: &RestrictedAlgebra, module: &CoeffModule) -> Vec<RestrictedCochain2> {
    let alg = r.algebra.as_ref();
    let space1 = cochain_basis(alg, module, 1);
    let mut ech = Echelon::new(alg.spec(), pack_len(alg, module));
    let mut out = Vec::new();
    for c in 0..space1.dim() {
        let rc = d1_res(r, module, &Cochain::unit(&space1, c));
        if ech.insert(&pack_cochain2(alg, module, &rc)) {
            out.push(rc);
        }
    }
    out
}

/// Dimension of the degree-2 restricted cohomology.
pub fn h2_res_dims(r: &RestrictedAlgebra, module: &CoeffModule) -> Result<usize, CohomologyError> {
    let alg = r.algebra.as_ref();
    let z = z2_res(r, module)?;
    let b = b2_res(r, module);
    let mut ech = Echelon::new(alg.spec(), pack_len(alg, module));
    for rc in &z {
        ech.insert(&pack_cochain2(alg, module, rc));
    }
    for rc in &b {
        assert!(
            ech.contains(&pack_cochain2(alg, module, rc)),
            "coboundary escapes the cocycle space"
        );
    }
    Ok(z.len() - b.len())
}

/// Even part of the plus subcomplex cohomology: cocycle pairs with even
/// ordinary part and correction valued in the even part of the module,
/// modulo differentials of even degree-1 cochains. Returns the dimension
/// and echelon-reduced class representatives.
pub fn h2_res_plus_even(
    r: &RestrictedAlgebra,
    module: &CoeffModule,
) -> Result<(usize, Vec<RestrictedCochain2>), CohomologyError> {
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let space2 = cochain_basis(alg, module, 2);
    let dim_m = module.dim();
    let mut sys = cocycle2_system(r, module)?;
    for col in 0..sys.nphi {
        if space2.parity(col) {
            let mut row = vec![spec.zero(); sys.ncols];
            row[col] = spec.one();
            sys.rows.push(row);
        }
    }
    for j in 0..alg.n_even() {
        for ss in 0..dim_m {
            if module.parity(ss) {
                let mut row = vec![spec.zero(); sys.ncols];
                row[sys.nphi + j * dim_m + ss] = spec.one();
                sys.rows.push(row);
            }
        }
    }
    let kernel = Mat::from_rows(spec, sys.rows, sys.ncols).nullspace();
    let mut z_ech = Echelon::new(spec, sys.ncols);
    for v in &kernel {
        z_ech.insert(v);
    }
    let space1 = cochain_basis(alg, module, 1);
    let mut ech = Echelon::new(spec, sys.ncols);
    for c in 0..space1.dim() {
        if space1.parity(c) {
            continue;
        }
        let rc = d1_res(r, module, &Cochain::unit(&space1, c));
        let packed = pack_cochain2(alg, module, &rc);
        assert!(z_ech.contains(&packed), "even coboundary escapes the plus cocycle space");
        ech.insert(&packed);
    }
    let dim = kernel.len() - ech.rank();
    let mut reps = Vec::new();
    for v in &kernel {
        let red = ech.reduce(v);
        if red.iter().any(|c| !c.is_zero()) {
            reps.push(unpack_cochain2(alg, module, &red));
            ech.insert(&red);
        }
    }
    assert_eq!(reps.len(), dim, "representative count must match the quotient dimension");
    Ok((dim, reps))
}

/// Parity-split dimensions of the degree-1 restricted cohomology.
pub fn h1_res_dims(r: &RestrictedAlgebra, module: &CoeffModule) -> (usize, usize) {
    let alg = r.algebra.as_ref();
    let spec = alg.spec();
    let space1 = cochain_basis(alg, module, 1);
    let n = alg.n_even();
    let dim_m = module.dim();
    let d1 = d_ce(alg, module, 1);
    let mut sys = Mat::zero(spec, d1.nrows() + n * dim_m, space1.dim());
    for i in 0..d1.nrows() {
        for c in 0..d1.ncols() {
            sys.set(i, c, d1.get(i, c));
        }
    }
    for c in 0..space1.dim() {
        let om = ind1(r, module, &Cochain::unit(&space1, c));
        for (j, v) in om.iter().enumerate() {
            for (rr, val) in v.iter().enumerate() {
                sys.set(d1.nrows() + j * dim_m + rr, c, *val);
            }
        }
    }
    let z = sys.nullspace();
    let d0 = d_ce(alg, module, 0);
    let b: Vec<Vec<Fq>> =
        (0..d0.ncols()).map(|c| (0..d0.nrows()).map(|r| d0.get(r, c)).collect()).collect();
    let mut ech = Echelon::new(spec, space1.dim());
    for v in &z {
        ech.insert(v);
    }
    for v in &b {
        assert!(ech.contains(v), "degree-0 coboundary escapes the restricted cocycle space");
    }
    let (ze, zo) = graded_dims(spec, space1.parities(), &z);
    let (be, bo) = graded_dims(spec, space1.parities(), &b);
    (ze - be, zo - bo)
}

// ---------------------------------------------------------------------------
// Pretty-printing

fn format_coeff(c: Fq, lead: &str) -> String {
    if c.is_one() {
        lead.to_string()
    } else if c == -c.spec().one() {
        format!("-{lead}")
    } else {
        format!("{c}*{lead}")
    }
}

/// Human-readable form of a cochain, using 1-based Delta index tuples.
pub fn describe_cochain(alg: &SuperAlgebra, module: &CoeffModule, c: &Cochain) -> String {
    let space = cochain_basis(alg, module, c.k);
    let scalar = module.dim() == 1 && module.trivial_action();
    let mut terms = Vec::new();
    for (i, bc) in space.basis().iter().enumerate() {
        let v = c.coeffs[i];
        if v.is_zero() {
            continue;
        }
        let idx: Vec<String> = bc
            .evens
            .iter()
            .chain(bc.odds.iter())
            .map(|&t| (t + 1).to_string())
            .collect();
        let delta = format!("D{{{}}}", idx.join(","));
        let lead = if scalar {
            delta
        } else {
            format!("{}(x){delta}", module.names[bc.slot])
        };
        terms.push(format_coeff(v, &lead));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Human-readable correction values on the even basis.
pub fn describe_omega(alg: &SuperAlgebra, module: &CoeffModule, omega: &[Vec<Fq>]) -> Vec<String> {
    (0..alg.n_even())
        .map(|j| format!("w({}) = {}", alg.name(j), format_vector(module.names(), &omega[j])))
        .collect()
}

/// Parity of a homogeneous algebra vector, for sign bookkeeping in callers.
pub fn vector_parity(alg: &SuperAlgebra, v: &[Fq]) -> VectorParity {
    parity_of(alg, v)
}
