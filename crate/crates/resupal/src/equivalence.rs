//! Automorphism groups over small finite fields, their action on
//! cocycles, orbit partitioning of cohomology classes, brute-force
//! isomorphism search, and invariant fingerprints.
//!
//! All enumeration is column-by-column over the parity blocks: the image
//! of each basis vector is chosen in lexicographic coefficient order,
//! non-invertible prefixes are cut by an echelon rank check, and every
//! bracket (and p-map) identity is tested at the first step where all the
//! coordinates it mentions are assigned. Group elements therefore come
//! out in a deterministic order.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::catalog::{catalog_get, CatalogError};
use crate::cohomology::{
    cochain_basis, evaluate_cochain_in, h_ce_dims, CochainSpace, CoeffModule, Cochain, d_ce,
    RestrictedCochain2,
};
use crate::enumeration_bound;
use crate::gfield::{enumerate_field, Fq};
use crate::liesuper::{center, derived_subalgebra, nilindex, GradedMap, SuperAlgebra};
use crate::linalg::{Echelon, Mat};
use crate::restricted::{pmap_eval, PMap, RestrictedAlgebra, RestrictedError};

#[derive(Debug, Error)]
pub enum EquivalenceError {
    #[error("search space of {needed} candidates exceeds the bound {bound}")]
    BoundExceeded { needed: u128, bound: u64 },
    #[error("the supplied map is not an automorphism of the algebra")]
    NotAutomorphism,
    #[error("superdimensions {a:?} and {b:?} differ")]
    DimensionMismatch { a: (usize, usize), b: (usize, usize) },
    #[error("no isomorphism over the coefficient field; inconclusive over extensions")]
    NotFoundOverField,
    #[error(transparent)]
    Restricted(#[from] RestrictedError),
}

// ---------------------------------------------------------------------------
// Block search

/// `|GL_n(F_q)| = prod_i (q^n - q^i)`.
fn gl_order(q: u128, n: usize) -> u128 {
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product::<u128>().max(1)
}

struct Search<'a> {
    src: &'a SuperAlgebra,
    dst: &'a SuperAlgebra,
    pmaps: Option<(&'a PMap, &'a PMap)>,
    field: Vec<Fq>,
    /// bracket pairs to test right after the given column is assigned
    triggers: Vec<Vec<(usize, usize)>>,
    /// p-map conditions (even source index) per column
    ptriggers: Vec<Vec<usize>>,
    cols: Vec<Vec<Fq>>,
    found: Vec<GradedMap>,
    first_only: bool,
}

impl<'a> Search<'a> {
    fn new(
        src: &'a SuperAlgebra,
        dst: &'a SuperAlgebra,
        pmaps: Option<(&'a PMap, &'a PMap)>,
        first_only: bool,
    ) -> Search<'a> {
        let dim = src.dim();
        let support_end = |w: &[Fq]| w.iter().rposition(|c| !c.is_zero());
        let mut triggers = vec![Vec::new(); dim];
        for a in 0..dim {
            for b in a..dim {
                if a == b && !src.parity(a) {
                    continue;
                }
                let mut at = b;
                if let Some(t) = support_end(src.bracket_basis(a, b)) {
                    at = at.max(t);
                }
                triggers[at].push((a, b));
            }
        }
        let mut ptriggers = vec![Vec::new(); dim];
        if let Some((pm1, _)) = pmaps {
            for j in 0..src.n_even() {
                let mut at = j;
                if let Some(t) = support_end(pm1.value(j)) {
                    at = at.max(t);
                }
                ptriggers[at].push(j);
            }
        }
        Search {
            src,
            dst,
            pmaps,
            field: enumerate_field(src.spec()),
            triggers,
            ptriggers,
            cols: Vec::with_capacity(dim),
            found: Vec::new(),
            first_only,
        }
    }

    fn combine(&self, w: &[Fq]) -> Vec<Fq> {
        let spec = self.src.spec();
        let mut out = vec![spec.zero(); self.dst.dim()];
        for (t, c) in w.iter().enumerate() {
            if !c.is_zero() {
                for (o, v) in out.iter_mut().zip(&self.cols[t]) {
                    *o = *o + *c * *v;
                }
            }
        }
        out
    }

    fn checks_pass(&self, step: usize) -> bool {
        for &(a, b) in &self.triggers[step] {
            let lhs = self.combine(self.src.bracket_basis(a, b));
            let rhs = self.dst.br(&self.cols[a], &self.cols[b]);
            if lhs != rhs {
                return false;
            }
        }
        if let Some((pm1, pm2)) = self.pmaps {
            for &j in &self.ptriggers[step] {
                let lhs = self.combine(pm1.value(j));
                let rhs = pmap_eval(pm2, &self.cols[j]).expect("even column");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Depth-first over columns; `ech` tracks the current parity block.
    fn descend(&mut self, step: usize, ech: &Echelon) -> bool {
        let (n_src, m_src) = self.src.sdim();
        let (n_dst, _) = self.dst.sdim();
        if step == n_src + m_src {
            let spec = self.src.spec();
            let dim = self.dst.dim();
            let mut even = Mat::zero(spec, n_dst, n_src);
            let mut odd = Mat::zero(spec, dim - n_dst, m_src);
            for (j, col) in self.cols.iter().enumerate() {
                if j < n_src {
                    for i in 0..n_dst {
                        even.set(i, j, col[i]);
                    }
                } else {
                    for i in n_dst..dim {
                        odd.set(i - n_dst, j - n_src, col[i]);
                    }
                }
            }
            self.found.push(GradedMap::from_blocks(
                arc_of(self.src),
                arc_of(self.dst),
                even,
                odd,
            ));
            return self.first_only;
        }
        let even_step = step < n_src;
        let (lo, len) = if even_step {
            (0, n_dst)
        } else {
            (n_dst, self.dst.dim() - n_dst)
        };
        let fresh = if step == n_src {
            Echelon::new(self.src.spec(), self.dst.dim())
        } else {
            ech.clone()
        };
        let mut coords = vec![0usize; len];
        let spec = self.src.spec();
        loop {
            let mut v = vec![spec.zero(); self.dst.dim()];
            for (t, &ci) in coords.iter().enumerate() {
                v[lo + t] = self.field[ci];
            }
            let mut next = fresh.clone();
            if next.insert(&v) {
                self.cols.push(v);
                let ok = self.checks_pass(step);
                if ok && self.descend(step + 1, &next) {
                    return true;
                }
                self.cols.pop();
            }
            let mut t = len;
            loop {
                if t == 0 {
                    return false;
                }
                t -= 1;
                coords[t] += 1;
                if coords[t] < self.field.len() {
                    break;
                }
                coords[t] = 0;
            }
        }
    }
}

/// The algebras handled here always live behind an `Arc`; searches get
/// plain references, so rewrap for the returned witnesses.
fn arc_of(alg: &SuperAlgebra) -> Arc<SuperAlgebra> {
    Arc::new(alg.clone())
}

fn run_search(
    src: &Arc<SuperAlgebra>,
    dst: &Arc<SuperAlgebra>,
    pmaps: Option<(&PMap, &PMap)>,
    first_only: bool,
    bound: u64,
) -> Result<Vec<GradedMap>, EquivalenceError> {
    let (n1, m1) = src.sdim();
    let (n2, m2) = dst.sdim();
    if (n1, m1) != (n2, m2) {
        return Err(EquivalenceError::DimensionMismatch { a: (n1, m1), b: (n2, m2) });
    }
    let q = src.spec().order() as u128;
    let needed = gl_order(q, n1) * gl_order(q, m1);
    if needed > bound as u128 {
        return Err(EquivalenceError::BoundExceeded { needed, bound });
    }
    let mut search = Search::new(src, dst, pmaps, first_only);
    search.descend(0, &Echelon::new(src.spec(), src.dim()));
    let mut found = search.found;
    for f in &mut found {
        f.source = src.clone();
        f.target = dst.clone();
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// Automorphism groups

/// Complete list of block-diagonal automorphisms, deterministic order.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub algebra: Arc<SuperAlgebra>,
    pub elements: Vec<GradedMap>,
    /// False only for explicitly sampled fallbacks; enumeration sets true.
    pub complete: bool,
}

pub fn enumerate_aut(alg: &Arc<SuperAlgebra>) -> Result<AutGroup, EquivalenceError> {
    enumerate_aut_bounded(alg, enumeration_bound())
}

pub fn enumerate_aut_bounded(
    alg: &Arc<SuperAlgebra>,
    bound: u64,
) -> Result<AutGroup, EquivalenceError> {
    let elements = run_search(alg, alg, None, false, bound)?;
    Ok(AutGroup { algebra: alg.clone(), elements, complete: true })
}

/// Automorphisms that also commute with the p-map.
pub fn enumerate_aut_p(r: &RestrictedAlgebra) -> Result<AutGroup, EquivalenceError> {
    enumerate_aut_p_bounded(r, enumeration_bound())
}

pub fn enumerate_aut_p_bounded(
    r: &RestrictedAlgebra,
    bound: u64,
) -> Result<AutGroup, EquivalenceError> {
    let elements =
        run_search(&r.algebra, &r.algebra, Some((&r.pmap, &r.pmap)), false, bound)?;
    Ok(AutGroup { algebra: r.algebra.clone(), elements, complete: true })
}

// ---------------------------------------------------------------------------
// Action on cochains

fn same_algebra(a: &GradedMap) -> bool {
    Arc::ptr_eq(&a.source, &a.target) || *a.source == *a.target
}

/// Pullback `(A c)(x_1..x_k) = c(A x_1, .., A x_k)` on scalar cochains.
pub fn act_on_cocycle(a: &GradedMap, c: &Cochain) -> Result<Cochain, EquivalenceError> {
    if !same_algebra(a) || !a.is_invertible() || !a.is_algebra_morphism() {
        return Err(EquivalenceError::NotAutomorphism);
    }
    let alg = a.source.as_ref();
    let module = CoeffModule::trivial_scalar(alg);
    let space = cochain_basis(alg, &module, c.k);
    Ok(pullback(a, alg, &module, &space, c))
}

fn pullback(
    a: &GradedMap,
    alg: &SuperAlgebra,
    module: &CoeffModule,
    space: &CochainSpace,
    c: &Cochain,
) -> Cochain {
    let mut out = Cochain::zero(space);
    for (idx, bc) in space.basis().iter().enumerate() {
        let args: Vec<Vec<Fq>> = bc
            .evens
            .iter()
            .chain(&bc.odds)
            .map(|&i| a.apply(&alg.basis_vector(i)))
            .collect();
        let v = evaluate_cochain_in(alg, module, space, c, &args).expect("degree matches");
        out.coeffs[idx] = v[bc.slot];
    }
    out
}

/// Pullback of a restricted pair: `(A omega)(e_j) = omega(A e_j)`.
pub fn act_on_restricted_cocycle(
    a: &GradedMap,
    r: &RestrictedAlgebra,
    rc: &RestrictedCochain2,
) -> Result<RestrictedCochain2, EquivalenceError> {
    let phi = act_on_cocycle(a, &rc.phi)?;
    let alg = r.algebra.as_ref();
    for j in 0..alg.n_even() {
        let col = a.apply(&alg.basis_vector(j));
        if pmap_eval(&r.pmap, &col)? != a.apply(r.pmap.value(j)) {
            return Err(EquivalenceError::NotAutomorphism);
        }
    }
    let spec = alg.spec();
    let width = rc.omega_basis.first().map_or(0, |v| v.len());
    let omega_basis: Vec<Vec<Fq>> = (0..alg.n_even())
        .map(|j| {
            let mut acc = vec![spec.zero(); width];
            for (t, w) in rc.omega_basis.iter().enumerate() {
                let coef = a.even.get(t, j);
                if !coef.is_zero() {
                    for (o, x) in acc.iter_mut().zip(w) {
                        *o = *o + coef * *x;
                    }
                }
            }
            acc
        })
        .collect();
    Ok(RestrictedCochain2 { phi, omega_basis })
}

// ---------------------------------------------------------------------------
// Orbits of cohomology classes

#[derive(Debug, Clone)]
pub struct CocycleOrbit {
    /// Lexicographically least member, the canonical representative.
    pub canonical: Vec<Fq>,
    /// All class coordinate vectors of the orbit, sorted.
    pub members: Vec<Vec<Fq>>,
}

/// Partition of scalar `H^2` classes under the automorphism action.
/// Coordinates are taken against `reps`, a homogeneous basis of the
/// class space (cocycle representatives modulo coboundaries).
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub algebra: Arc<SuperAlgebra>,
    pub reps: Vec<Cochain>,
    pub parities: Vec<bool>,
    pub orbits: Vec<CocycleOrbit>,
    solver: Mat,
    b_count: usize,
}

fn lex_key(v: &[Fq]) -> Vec<(u32, u32)> {
    v.iter().map(|c| c.coeffs()).collect()
}

impl OrbitPartition {
    /// Class coordinates of a 2-cocycle, or None off the cocycle space.
    pub fn class_of(&self, c: &Cochain) -> Option<Vec<Fq>> {
        let sol = self.solver.solve(&c.coeffs)?;
        Some(sol[self.b_count..].to_vec())
    }

    pub fn orbit_index(&self, coords: &[Fq]) -> Option<usize> {
        self.orbits.iter().position(|o| o.members.iter().any(|m| m == coords))
    }

    /// The cocycle representing the given class coordinates.
    pub fn lift(&self, coords: &[Fq]) -> Cochain {
        let mut out = Cochain::from_coeffs(2, vec![coords[0].spec().zero(); self.solver.nrows()]);
        for (c, rep) in coords.iter().zip(&self.reps) {
            for (o, v) in out.coeffs.iter_mut().zip(&rep.coeffs) {
                *o = *o + *c * *v;
            }
        }
        out
    }
}

const ORBIT_CLASS_BOUND: u128 = 1_000_000;

/// Orbit partition of scalar `H^2` classes, optionally restricted to one
/// homogeneous part (`Some(false)` = even classes, `Some(true)` = odd).
pub fn cocycle_orbits(
    alg: &Arc<SuperAlgebra>,
    parity: Option<bool>,
) -> Result<OrbitPartition, EquivalenceError> {
    let aut = enumerate_aut(alg)?;
    let spec = alg.spec();
    let module = CoeffModule::trivial_scalar(alg);
    let space2 = cochain_basis(alg, &module, 2);
    let dim2 = space2.dim();

    // homogeneous coboundary basis
    let d1 = d_ce(alg, &module, 1);
    let mut b_ech = Echelon::new(spec, dim2);
    let mut b_basis: Vec<Vec<Fq>> = Vec::new();
    for j in 0..d1.ncols() {
        let col: Vec<Fq> = (0..dim2).map(|i| d1.get(i, j)).collect();
        if b_ech.insert(&col) {
            b_basis.push(col);
        }
    }

    // homogeneous cocycle representatives extending the coboundaries
    let d2 = d_ce(alg, &module, 2);
    let mut reps: Vec<Cochain> = Vec::new();
    let mut parities: Vec<bool> = Vec::new();
    let mut ech = b_ech.clone();
    for par in [false, true] {
        let cols: Vec<usize> = (0..dim2).filter(|&i| space2.parity(i) == par).collect();
        if cols.is_empty() {
            continue;
        }
        let rows: Vec<Vec<Fq>> =
            (0..d2.nrows()).map(|r| cols.iter().map(|&cc| d2.get(r, cc)).collect()).collect();
        let sub = Mat::from_rows(spec, rows, cols.len());
        for ns in sub.nullspace() {
            let mut z = vec![spec.zero(); dim2];
            for (t, &cc) in cols.iter().enumerate() {
                z[cc] = ns[t];
            }
            if ech.insert(&z) {
                reps.push(Cochain::from_coeffs(2, z));
                parities.push(par);
            }
        }
    }
    if let Some(par) = parity {
        let mut filtered = Vec::new();
        let mut fpar = Vec::new();
        for (r, &pr) in reps.iter().zip(&parities) {
            if pr == par {
                filtered.push(r.clone());
                fpar.push(pr);
            }
        }
        reps = filtered;
        parities = fpar;
    }

    let d = reps.len();
    let q = spec.order() as u128;
    let total = q.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > ORBIT_CLASS_BOUND {
        return Err(EquivalenceError::BoundExceeded {
            needed: total,
            bound: ORBIT_CLASS_BOUND as u64,
        });
    }

    // solve [B | reps] x = z to read off class coordinates
    let b_count = b_basis.len();
    let rows: Vec<Vec<Fq>> = (0..dim2)
        .map(|i| {
            b_basis.iter().map(|b| b[i]).chain(reps.iter().map(|r| r.coeffs[i])).collect()
        })
        .collect();
    let solver = Mat::from_rows(spec, rows, b_count + d);
    let part = OrbitPartition {
        algebra: alg.clone(),
        reps,
        parities,
        orbits: Vec::new(),
        solver,
        b_count,
    };

    // class-space action of each automorphism
    let actions: Vec<Mat> = aut
        .elements
        .iter()
        .map(|a| {
            let mut m = Mat::zero(spec, d, d);
            for (j, rep) in part.reps.iter().enumerate() {
                let img = pullback(a, alg, &module, &space2, rep);
                let coords = part.class_of(&img).expect("pullback stays closed");
                for i in 0..d {
                    m.set(i, j, coords[i]);
                }
            }
            m
        })
        .collect();

    // sweep classes in lexicographic order; the group is complete, so one
    // pass over the elements yields the whole orbit
    let field = enumerate_field(spec);
    let mut seen: HashMap<Vec<(u32, u32)>, ()> = HashMap::new();
    let mut orbits: Vec<CocycleOrbit> = Vec::new();
    let mut counter = vec![0usize; d];
    loop {
        let coords: Vec<Fq> = counter.iter().map(|&i| field[i]).collect();
        if !seen.contains_key(&lex_key(&coords)) {
            let mut members: Vec<Vec<Fq>> = vec![coords.clone()];
            seen.insert(lex_key(&coords), ());
            for m in &actions {
                let img = m.mul_vec(&coords);
                let key = lex_key(&img);
                if !seen.contains_key(&key) {
                    seen.insert(key, ());
                    members.push(img);
                }
            }
            members.sort_by_key(|v| lex_key(v));
            orbits.push(CocycleOrbit { canonical: members[0].clone(), members });
        }
        let mut t = d;
        let mut done = d == 0;
        loop {
            if t == 0 {
                done = true;
                break;
            }
            t -= 1;
            counter[t] += 1;
            if counter[t] < field.len() {
                break;
            }
            counter[t] = 0;
        }
        if done {
            break;
        }
    }
    orbits.sort_by_key(|o| lex_key(&o.canonical));
    Ok(OrbitPartition { orbits, ..part })
}

/// Orbit partition of the full cocycle space `Z^2` under strict equality,
/// without passing to cohomology classes. Finer than [`cocycle_orbits`]:
/// two cocycles differing by a coboundary land in one class orbit but may
/// land in different strict orbits. Members and canonical representatives
/// are full cochain coefficient vectors.
#[derive(Debug, Clone)]
pub struct StrictOrbitPartition {
    pub algebra: Arc<SuperAlgebra>,
    pub z_basis: Vec<Vec<Fq>>,
    pub orbits: Vec<CocycleOrbit>,
}

impl StrictOrbitPartition {
    pub fn orbit_of(&self, c: &Cochain) -> Option<usize> {
        self.orbits.iter().position(|o| o.members.iter().any(|m| *m == c.coeffs))
    }
}

pub fn cocycle_orbits_strict(
    alg: &Arc<SuperAlgebra>,
) -> Result<StrictOrbitPartition, EquivalenceError> {
    let aut = enumerate_aut(alg)?;
    let spec = alg.spec();
    let module = CoeffModule::trivial_scalar(alg);
    let space2 = cochain_basis(alg, &module, 2);
    let dim2 = space2.dim();
    let z_basis = d_ce(alg, &module, 2).nullspace();
    let d = z_basis.len();
    let q = spec.order() as u128;
    let total = q.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > ORBIT_CLASS_BOUND {
        return Err(EquivalenceError::BoundExceeded {
            needed: total,
            bound: ORBIT_CLASS_BOUND as u64,
        });
    }

    // pullback is linear on cochains: one matrix per automorphism
    let actions: Vec<Mat> = aut
        .elements
        .iter()
        .map(|a| {
            let mut m = Mat::zero(spec, dim2, dim2);
            for j in 0..dim2 {
                let img = pullback(a, alg, &module, &space2, &Cochain::unit(&space2, j));
                for i in 0..dim2 {
                    m.set(i, j, img.coeffs[i]);
                }
            }
            m
        })
        .collect();

    let field = enumerate_field(spec);
    let mut seen: HashMap<Vec<(u32, u32)>, ()> = HashMap::new();
    let mut orbits: Vec<CocycleOrbit> = Vec::new();
    let mut counter = vec![0usize; d];
    loop {
        let mut z = vec![spec.zero(); dim2];
        for (t, &ci) in counter.iter().enumerate() {
            let c = field[ci];
            if !c.is_zero() {
                for (o, v) in z.iter_mut().zip(&z_basis[t]) {
                    *o = *o + c * *v;
                }
            }
        }
        if !seen.contains_key(&lex_key(&z)) {
            seen.insert(lex_key(&z), ());
            let mut members = vec![z.clone()];
            for m in &actions {
                let img = m.mul_vec(&z);
                let key = lex_key(&img);
                if !seen.contains_key(&key) {
                    seen.insert(key, ());
                    members.push(img);
                }
            }
            members.sort_by_key(|v| lex_key(v));
            orbits.push(CocycleOrbit { canonical: members[0].clone(), members });
        }
        let mut t = d;
        let mut done = d == 0;
        loop {
            if t == 0 {
                done = true;
                break;
            }
            t -= 1;
            counter[t] += 1;
            if counter[t] < field.len() {
                break;
            }
            counter[t] = 0;
        }
        if done {
            break;
        }
    }
    orbits.sort_by_key(|o| lex_key(&o.canonical));
    Ok(StrictOrbitPartition { algebra: alg.clone(), z_basis, orbits })
}

// ---------------------------------------------------------------------------
// Isomorphism search

/// First bracket-preserving invertible graded map found, deterministic.
/// A miss is only a statement about this coefficient field.
pub fn isomorphism_search(
    a: &Arc<SuperAlgebra>,
    b: &Arc<SuperAlgebra>,
) -> Result<GradedMap, EquivalenceError> {
    let found = run_search(a, b, None, true, enumeration_bound())?;
    found.into_iter().next().ok_or(EquivalenceError::NotFoundOverField)
}

pub fn restricted_isomorphism_search(
    r1: &RestrictedAlgebra,
    r2: &RestrictedAlgebra,
) -> Result<GradedMap, EquivalenceError> {
    let found = run_search(
        &r1.algebra,
        &r2.algebra,
        Some((&r1.pmap, &r2.pmap)),
        true,
        enumeration_bound(),
    )?;
    found.into_iter().next().ok_or(EquivalenceError::NotFoundOverField)
}

// ---------------------------------------------------------------------------
// Fingerprints

/// Isomorphism invariants over the algebra's own field: superdimensions
/// of the algebra, derived algebra, center, the nilindex, and scalar
/// cohomology through degree four. Different fingerprints at the same
/// characteristic certify non-isomorphism over every extension field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub p: u32,
    pub sdim: (usize, usize),
    pub derived: (usize, usize),
    pub center: (usize, usize),
    pub nilindex: Option<usize>,
    pub h: [(usize, usize); 4],
}

pub fn fingerprint(alg: &SuperAlgebra) -> Fingerprint {
    let module = CoeffModule::trivial_scalar(alg);
    let h = [1, 2, 3, 4].map(|k| h_ce_dims(alg, &module, k));
    Fingerprint {
        p: alg.spec().characteristic(),
        sdim: alg.sdim(),
        derived: derived_subalgebra(alg).sdim(),
        center: center(alg).sdim(),
        nilindex: nilindex(alg),
        h,
    }
}

/// Fingerprints of a catalog algebra at each requested characteristic.
pub fn fingerprint_table(name: &str, ps: &[u32]) -> Result<Vec<Fingerprint>, CatalogError> {
    ps.iter()
        .map(|&p| Ok(fingerprint(&catalog_get(name, p)?.algebra)))
        .collect()
}

// ---------------------------------------------------------------------------
