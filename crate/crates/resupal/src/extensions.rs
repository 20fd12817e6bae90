//! One-dimensional central extensions: building a new algebra from a scalar
//! 2-cocycle, deciding equivalence of two extensions with an explicit
//! witness, taking the quotient by a central line, and the inverse
//! direction that presents a p-nilpotent algebra as such an extension.
//!
//! Conventions: the new central element X is appended after the existing
//! even basis vectors when it is even, and after the odd ones when it is
//! odd, so `[x, y]_new = [x, y]_old + Delta(x, y) X` holds coordinatewise
//! and quotienting by X recovers the base exactly.

use std::sync::Arc;

use thiserror::Error;

use crate::cohomology::{
    cochain_basis, cochain_parity, d1_res, d_ce, evaluate_cochain, ind2, pack_cochain2, pack_len,
    phi_compat_check, CoeffModule, Cochain, CohomologyError, RestrictedCochain2,
};
use crate::gfield::Fq;
use crate::liesuper::{
    center, check_axioms, AlgebraError, GradedMap, GradedSubspace, SuperAlgebra, VectorParity,
};
use crate::linalg::Mat;
use crate::restricted::{
    check_restricted_morphism, pmap_eval, PMap, RestrictedAlgebra, RestrictedError,
};

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("not a valid cocycle: {0}")]
    NotACocycle(String),
    #[error("the two extensions do not share a base")]
    BaseMismatch,
    #[error("not a quotientable central line: {0}")]
    NotCentral(String),
    #[error("even central generator has a nonzero p-power")]
    NotPClosed,
    #[error("no usable central element; the algebra is not p-nilpotent")]
    NoCenter,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Restricted(#[from] RestrictedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

// ---------------------------------------------------------------------------
// Construction

/// A built restricted extension together with the data defining it.
#[derive(Debug, Clone)]
pub struct RestrictedExtension {
    pub base: RestrictedAlgebra,
    pub pair: RestrictedCochain2,
    pub total: RestrictedAlgebra,
    /// Index of the adjoined central element in the total algebra.
    pub x_index: usize,
}

/// Index of a base basis vector inside the extension.
fn lift_index(i: usize, n: usize, even_x: bool) -> usize {
    if even_x && i >= n {
        i + 1
    } else {
        i
    }
}

/// Reinterprets a base coordinate vector in the extension, zero X part.
fn lift_vec(v: &[Fq], n: usize, even_x: bool) -> Vec<Fq> {
    let spec = v[0].spec();
    let mut out = Vec::with_capacity(v.len() + 1);
    if even_x {
        out.extend_from_slice(&v[..n]);
        out.push(spec.zero());
        out.extend_from_slice(&v[n..]);
    } else {
        out.extend_from_slice(v);
        out.push(spec.zero());
    }
    out
}

/// Fails with the first violated closedness identity, named by its triple.
fn require_scalar_cocycle(
    alg: &SuperAlgebra,
    module: &CoeffModule,
    c: &Cochain,
) -> Result<(), ExtensionError> {
    let d2 = d_ce(alg, module, 2);
    let img = d2.mul_vec(&c.coeffs);
    if let Some(row) = img.iter().position(|v| !v.is_zero()) {
        let space3 = cochain_basis(alg, module, 3);
        let bc = &space3.basis()[row];
        let args: Vec<&str> = bc
            .evens
            .iter()
            .chain(&bc.odds)
            .map(|&i| alg.name(i))
            .collect();
        return Err(ExtensionError::NotACocycle(format!(
            "d(Delta)({}) = {}",
            args.join(","),
            img[row]
        )));
    }
    Ok(())
}

fn build_extension_algebra(
    base: &SuperAlgebra,
    delta: &Cochain,
    even_x: bool,
    name: &str,
) -> Result<SuperAlgebra, ExtensionError> {
    let spec = base.spec();
    let module = CoeffModule::trivial_scalar(base);
    let n = base.n_even();
    let dim = base.dim();
    let x_idx = if even_x { n } else { dim };
    let mut names: Vec<String> = base.names().to_vec();
    names.insert(x_idx, name.to_string());
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            if i == j && !base.parity(i) {
                continue;
            }
            let mut v = lift_vec(base.bracket_basis(i, j), n, even_x);
            let d = evaluate_cochain(
                base,
                &module,
                delta,
                &[base.basis_vector(i), base.basis_vector(j)],
            )?;
            v[x_idx] = v[x_idx] + d[0];
            if v.iter().any(|c| !c.is_zero()) {
                entries.push((lift_index(i, n, even_x), lift_index(j, n, even_x), v));
            }
        }
    }
    let (n_new, m_new) = if even_x {
        (n + 1, base.n_odd())
    } else {
        (n, base.n_odd() + 1)
    };
    let alg = SuperAlgebra::from_brackets(spec, n_new, m_new, names, &entries)?;
    let report = check_axioms(&alg);
    assert!(report.is_valid(), "extension by a closed cocycle satisfies the axioms");
    Ok(alg)
}

/// Adjoins a central element X to `base` along a scalar 2-cocycle. X is
/// even for an even cocycle and odd for an odd one; the zero cocycle gives
/// the direct sum with a one-dimensional even abelian algebra.
pub fn central_extend(
    base: &Arc<SuperAlgebra>,
    cocycle: &Cochain,
    name: &str,
) -> Result<Arc<SuperAlgebra>, ExtensionError> {
    let module = CoeffModule::trivial_scalar(base);
    let space = cochain_basis(base, &module, 2);
    if cocycle.k != 2 || cocycle.coeffs.len() != space.dim() {
        return Err(CohomologyError::DegreeMismatch { want: 2, got: cocycle.k }.into());
    }
    let even_x = match cochain_parity(&space, cocycle) {
        VectorParity::Even | VectorParity::Zero => true,
        VectorParity::Odd => false,
        VectorParity::Mixed => {
            return Err(ExtensionError::NotACocycle(
                "mixed-parity cocycle has no homogeneous central target".into(),
            ))
        }
    };
    require_scalar_cocycle(base, &module, cocycle)?;
    Ok(Arc::new(build_extension_algebra(base, cocycle, even_x, name)?))
}

/// Adjoins an even central X along a restricted pair in the even
/// subcomplex: brackets gain `phi(x,y) X`, even generators gain
/// `omega(e_j) X` on their p-powers, and `X^[p] = 0`.
pub fn central_extend_restricted(
    base: &RestrictedAlgebra,
    pair: &RestrictedCochain2,
    name: &str,
) -> Result<RestrictedExtension, ExtensionError> {
    let alg = &base.algebra;
    let spec = alg.spec();
    let module = CoeffModule::trivial_scalar(alg);
    let space = cochain_basis(alg, &module, 2);
    if pair.phi.k != 2 || pair.phi.coeffs.len() != space.dim() {
        return Err(CohomologyError::DegreeMismatch { want: 2, got: pair.phi.k }.into());
    }
    if pair.omega_basis.len() != alg.n_even() || pair.omega_basis.iter().any(|v| v.len() != 1) {
        return Err(ExtensionError::NotACocycle(
            "omega must assign one scalar to each even basis vector".into(),
        ));
    }
    match cochain_parity(&space, &pair.phi) {
        VectorParity::Even | VectorParity::Zero => {}
        _ => {
            return Err(ExtensionError::NotACocycle(
                "the even subcomplex admits even cochains only".into(),
            ))
        }
    }
    require_scalar_cocycle(alg, &module, &pair.phi)?;
    let compat = phi_compat_check(alg, &module, &pair.phi, &pair.omega_basis);
    if let Some(first) = compat.into_iter().next() {
        return Err(ExtensionError::NotACocycle(first));
    }
    let beta = ind2(base, &module, pair);
    for (i, row) in beta.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.iter().any(|c| !c.is_zero()) {
                return Err(ExtensionError::NotACocycle(format!(
                    "ind2 component {} at ({}, {})",
                    v[0],
                    alg.name(i),
                    alg.name(j)
                )));
            }
        }
    }

    let total_alg = Arc::new(build_extension_algebra(alg, &pair.phi, true, name)?);
    let n = alg.n_even();
    let mut values = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut v = lift_vec(base.pmap.value(j), n, true);
        v[n] = v[n] + pair.omega_basis[j][0];
        values.push(v);
    }
    values.push(vec![spec.zero(); total_alg.dim()]);
    let pm = PMap::verified(total_alg.clone(), values)?;
    Ok(RestrictedExtension {
        base: base.clone(),
        pair: pair.clone(),
        total: RestrictedAlgebra { algebra: total_alg, pmap: pm },
        x_index: n,
    })
}

// ---------------------------------------------------------------------------
// Equivalence

/// Decides whether two restricted extensions of the same base differ by a
/// restricted coboundary. On success returns the straightening map
/// `sigma(e_j) = e_j + psi(e_j) X`, verified to be a restricted
/// isomorphism fixing X and inducing the identity on the base.
pub fn extensions_equivalent(
    a: &RestrictedExtension,
    b: &RestrictedExtension,
) -> Result<Option<GradedMap>, ExtensionError> {
    if a.base.algebra != b.base.algebra || a.base.pmap != b.base.pmap {
        return Err(ExtensionError::BaseMismatch);
    }
    let alg = &a.base.algebra;
    let spec = alg.spec();
    let module = CoeffModule::trivial_scalar(alg);
    let space1 = cochain_basis(alg, &module, 1);
    let n = alg.n_even();

    // columns: d of the even coordinate functionals; solve d(psi) = b - a
    let len = pack_len(alg, &module);
    let cols: Vec<Vec<Fq>> = (0..n)
        .map(|j| {
            let idx = space1.index_of(&[j], &[], 0).expect("even degree-1 basis");
            let psi = Cochain::unit(&space1, idx);
            pack_cochain2(alg, &module, &d1_res(&a.base, &module, &psi))
        })
        .collect();
    let pa = pack_cochain2(alg, &module, &a.pair);
    let pb = pack_cochain2(alg, &module, &b.pair);
    let diff: Vec<Fq> = pb.iter().zip(&pa).map(|(x, y)| *x - *y).collect();
    let mut rows = Vec::with_capacity(len);
    for r in 0..len {
        rows.push(cols.iter().map(|cv| cv[r]).collect::<Vec<Fq>>());
    }
    let mat = Mat::from_rows(spec, rows, n);
    let Some(coeffs) = mat.solve(&diff) else {
        return Ok(None);
    };

    let mut even = Mat::identity(spec, n + 1);
    for (j, c) in coeffs.iter().enumerate() {
        even.set(n, j, *c);
    }
    let odd = Mat::identity(spec, alg.n_odd());
    let sigma = GradedMap::from_blocks(a.total.algebra.clone(), b.total.algebra.clone(), even, odd);
    assert!(sigma.is_invertible());
    assert!(
        check_restricted_morphism(&sigma, &a.total, &b.total)?,
        "straightening by a solved coboundary is an isomorphism"
    );
    Ok(Some(sigma))
}

// ---------------------------------------------------------------------------
// Quotients

/// Quotient by a one-dimensional homogeneous central line whose even
/// generator (if even) has zero p-power. Returns the quotient with its
/// induced p-map and the projection.
pub fn quotient_by_central(
    r: &RestrictedAlgebra,
    ideal: &GradedSubspace,
) -> Result<(RestrictedAlgebra, GradedMap), ExtensionError> {
    let alg = &r.algebra;
    let spec = alg.spec();
    if ideal.total_dim() != 1 {
        return Err(ExtensionError::NotCentral(format!(
            "expected a line, got a subspace of dimension {}",
            ideal.total_dim()
        )));
    }
    let even_x = !ideal.even_basis().is_empty();
    let x = if even_x {
        ideal.even_basis()[0].clone()
    } else {
        ideal.odd_basis()[0].clone()
    };
    if !center(alg).contains(&x) {
        return Err(ExtensionError::NotCentral("the generator is not central".into()));
    }
    if even_x && pmap_eval(&r.pmap, &x)?.iter().any(|c| !c.is_zero()) {
        return Err(ExtensionError::NotPClosed);
    }

    let piv = x.iter().position(|c| !c.is_zero()).expect("nonzero generator");
    let inv = x[piv].inv().expect("leading coefficient");
    // kill the X component, then drop the pivot coordinate
    let proj = |v: &[Fq]| -> Vec<Fq> {
        let f = v[piv] * inv;
        v.iter()
            .zip(x.iter())
            .enumerate()
            .filter(|&(t, _)| t != piv)
            .map(|(_, (a, b))| *a - f * *b)
            .collect()
    };

    let n = alg.n_even();
    let dim = alg.dim();
    let keep: Vec<usize> = (0..dim).filter(|&t| t != piv).collect();
    let names: Vec<String> =
        keep.iter().map(|&t| alg.name(t).to_string()).collect();
    let (n_new, m_new) = if even_x {
        (n - 1, alg.n_odd())
    } else {
        (n, alg.n_odd() - 1)
    };
    let mut entries = Vec::new();
    for (a_new, &a_old) in keep.iter().enumerate() {
        for (b_new, &b_old) in keep.iter().enumerate().skip(a_new) {
            if a_old == b_old && !alg.parity(a_old) {
                continue;
            }
            let v = proj(alg.bracket_basis(a_old, b_old));
            if v.iter().any(|c| !c.is_zero()) {
                entries.push((a_new, b_new, v));
            }
        }
    }
    let q_alg = Arc::new(SuperAlgebra::from_brackets(spec, n_new, m_new, names, &entries)?);
    let report = check_axioms(&q_alg);
    assert!(report.is_valid(), "central quotient satisfies the axioms");

    let values: Vec<Vec<Fq>> = keep
        .iter()
        .filter(|&&t| !alg.parity(t))
        .map(|&t| proj(r.pmap.value(t)))
        .collect();
    let pm = PMap::verified(q_alg.clone(), values)?;
    let quotient = RestrictedAlgebra { algebra: q_alg.clone(), pmap: pm };

    let mut even = Mat::zero(spec, n_new, n);
    let mut odd = Mat::zero(spec, m_new, alg.n_odd());
    for j in 0..dim {
        let col = proj(&alg.basis_vector(j));
        if alg.parity(j) {
            for i in 0..m_new {
                odd.set(i, j - n, col[n_new + i]);
            }
        } else {
            for i in 0..n_new {
                even.set(i, j, col[i]);
            }
        }
    }
    let projection = GradedMap::from_blocks(alg.clone(), q_alg, even, odd);
    Ok((quotient, projection))
}

// ---------------------------------------------------------------------------
// Decomposition

/// A p-nilpotent algebra written as a central extension of its quotient by
/// a central line, with the rebuilt extension and the verified isomorphism
/// back to the original.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The chosen central element of the original algebra.
    pub x: Vec<Fq>,
    pub even_x: bool,
    pub quotient: RestrictedAlgebra,
    pub projection: GradedMap,
    /// Scalar 2-cocycle on the quotient extracted via the coordinate section.
    pub cocycle: Cochain,
    /// Restricted correction, present exactly when `x` is even.
    pub omega: Option<Vec<Vec<Fq>>>,
    pub rebuilt: RestrictedAlgebra,
    /// Verified restricted isomorphism from `rebuilt` onto the original.
    pub iso: GradedMap,
}

/// Picks a central element (even with zero p-power preferred, iterating
/// p-powers to reach one; odd only when the even center is zero), quotients
/// by it, extracts the defining cocycle data through the coordinate
/// section, rebuilds the extension, and verifies the round trip.
pub fn decompose_as_extension(r: &RestrictedAlgebra) -> Result<Decomposition, ExtensionError> {
    let alg = &r.algebra;
    let spec = alg.spec();
    if alg.dim() == 0 {
        return Err(ExtensionError::NoCenter);
    }
    let z = center(alg);
    if z.is_zero() {
        return Err(ExtensionError::NoCenter);
    }

    let zero_power = |v: &[Fq]| -> Result<bool, RestrictedError> {
        Ok(pmap_eval(&r.pmap, v)?.iter().all(|c| c.is_zero()))
    };
    let mut x: Option<Vec<Fq>> = None;
    let mut even_x = true;
    for v in z.even_basis() {
        if zero_power(v)? {
            x = Some(v.clone());
            break;
        }
    }
    if x.is_none() {
        if let Some(first) = z.even_basis().first() {
            // a center element's p-power is again central; p-nilpotency
            // bottoms the iteration out at a nonzero one with zero power
            let mut cur = first.clone();
            for _ in 0..=alg.dim() {
                if zero_power(&cur)? {
                    x = Some(cur);
                    break;
                }
                cur = pmap_eval(&r.pmap, &cur)?;
                if cur.iter().all(|c| c.is_zero()) {
                    break;
                }
            }
            if x.is_none() {
                return Err(ExtensionError::NoCenter);
            }
        } else {
            even_x = false;
            x = Some(z.odd_basis()[0].clone());
        }
    }
    let x = x.expect("central element chosen");

    let mut ideal = GradedSubspace::empty(alg);
    ideal.insert(&x);
    let (quotient, projection) = quotient_by_central(r, &ideal)?;

    let piv = x.iter().position(|c| !c.is_zero()).expect("nonzero generator");
    let inv = x[piv].inv().expect("leading coefficient");
    let gamma = |v: &[Fq]| v[piv] * inv;
    let keep: Vec<usize> = (0..alg.dim()).filter(|&t| t != piv).collect();

    // cocycle through the coordinate section: the X coefficient of the
    // bracket of the kept basis vectors
    let q_alg = &quotient.algebra;
    let module = CoeffModule::trivial_scalar(q_alg);
    let space2 = cochain_basis(q_alg, &module, 2);
    let mut cocycle = Cochain::zero(&space2);
    for (idx, bc) in space2.basis().iter().enumerate() {
        let args: Vec<usize> = bc.evens.iter().chain(&bc.odds).copied().collect();
        let v = alg.bracket_basis(keep[args[0]], keep[args[1]]);
        cocycle.coeffs[idx] = gamma(v);
    }

    let (rebuilt, omega) = if even_x {
        let omega_basis: Vec<Vec<Fq>> = keep
            .iter()
            .filter(|&&t| !alg.parity(t))
            .map(|&t| vec![gamma(r.pmap.value(t))])
            .collect();
        let pair = RestrictedCochain2 { phi: cocycle.clone(), omega_basis: omega_basis.clone() };
        let ext = central_extend_restricted(&quotient, &pair, alg.name(piv))?;
        (ext.total, Some(omega_basis))
    } else {
        let total_alg = central_extend(q_alg, &cocycle, alg.name(piv))?;
        let values: Vec<Vec<Fq>> = (0..q_alg.n_even())
            .map(|j| lift_vec(quotient.pmap.value(j), q_alg.n_even(), false))
            .collect();
        let pm = PMap::verified(total_alg.clone(), values)?;
        (RestrictedAlgebra { algebra: total_alg, pmap: pm }, None)
    };

    // the rebuilt extension lists the kept vectors first (X last within its
    // parity block); send them to themselves and X to the chosen generator
    let n_new = rebuilt.algebra.n_even();
    let mut even = Mat::zero(spec, alg.n_even(), n_new);
    let mut odd = Mat::zero(spec, alg.n_odd(), rebuilt.algebra.n_odd());
    let kept_evens: Vec<usize> = keep.iter().copied().filter(|&t| !alg.parity(t)).collect();
    let kept_odds: Vec<usize> = keep.iter().copied().filter(|&t| alg.parity(t)).collect();
    for (j, &t) in kept_evens.iter().enumerate() {
        even.set(t, j, spec.one());
    }
    for (j, &t) in kept_odds.iter().enumerate() {
        odd.set(t - alg.n_even(), j, spec.one());
    }
    if even_x {
        for i in 0..alg.n_even() {
            even.set(i, n_new - 1, x[i]);
        }
    } else {
        for i in 0..alg.n_odd() {
            odd.set(i, rebuilt.algebra.n_odd() - 1, x[alg.n_even() + i]);
        }
    }
    let iso = GradedMap::from_blocks(rebuilt.algebra.clone(), alg.clone(), even, odd);
    assert!(iso.is_invertible());
    assert!(
        check_restricted_morphism(&iso, &rebuilt, r)?,
        "rebuilding from the extracted cocycle reproduces the algebra"
    );

    Ok(Decomposition {
        x,
        even_x,
        quotient,
        projection,
        cocycle,
        omega,
        rebuilt,
        iso,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::restricted::{check_pmap_axioms, enumerate_pmaps, is_p_nilpotent};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalar_delta(alg: &SuperAlgebra, evens: &[usize], odds: &[usize]) -> Cochain {
        let module = CoeffModule::trivial_scalar(alg);
        let space = cochain_basis(alg, &module, 2);
        Cochain::unit(&space, space.index_of(evens, odds, 0).expect("basis pair"))
    }

    fn restricted(name: &str, p: u32, which: usize) -> RestrictedAlgebra {
        let entry = catalog_get(name, p).unwrap();
        let pm = match entry.pmaps {
            Some(pms) => pms[which].clone(),
            None => enumerate_pmaps(&entry.algebra).unwrap().swap_remove(which),
        };
        RestrictedAlgebra { algebra: entry.algebra, pmap: pm }
    }

    #[test]
    fn even_extension_matches_the_catalog_row() {
        // abelian (1|2) extended along D23 is the (2|2) algebra with
        // [e2,e3] = X
        let base = catalog_get("L_{1|2}^1", 3).unwrap().algebra;
        let delta = scalar_delta(&base, &[], &[1, 2]);
        let ext = central_extend(&base, &delta, "X").unwrap();
        let want = catalog_get("L_{2|2}^b", 3).unwrap().algebra;
        assert_eq!(*ext, *want);
        assert_eq!(ext.names(), &["e1", "X", "e2", "e3"]);
    }

    #[test]
    fn odd_extension_matches_the_catalog_row() {
        // [e3,e3] = e2 base extended along the odd D13 adds [e1,e3] = X
        let base = catalog_get("L_{2|1}^2", 3).unwrap().algebra;
        let delta = scalar_delta(&base, &[0], &[2]);
        let ext = central_extend(&base, &delta, "X").unwrap();
        let want = catalog_get("L_{2|2}^p", 3).unwrap().algebra;
        assert_eq!(*ext, *want);
        assert_eq!(ext.names(), &["e1", "e2", "e3", "X"]);
    }

    #[test]
    fn zero_cocycle_gives_a_direct_sum() {
        let base = catalog_get("L_{1|2}^3", 5).unwrap().algebra;
        let module = CoeffModule::trivial_scalar(&base);
        let space = cochain_basis(&base, &module, 2);
        let ext = central_extend(&base, &Cochain::zero(&space), "X").unwrap();
        assert_eq!(ext.sdim(), (2, 2));
        let x = ext.basis_vector(1);
        for i in 0..ext.dim() {
            assert!(ext.br(&x, &ext.basis_vector(i)).iter().all(|c| c.is_zero()));
        }
        // old brackets survive verbatim at the lifted indices
        assert_eq!(ext.br(&ext.basis_vector(0), &ext.basis_vector(2)), ext.basis_vector(3));
    }

    #[test]
    fn non_cocycles_are_rejected_with_the_violated_triple() {
        let base = catalog_get("L_{1|2}^2", 3).unwrap().algebra;
        // D12 fails: d(D12)(e2,e2,e3) = D12(e2, [e2,e3]) != 0
        let delta = scalar_delta(&base, &[0], &[1]);
        let err = central_extend(&base, &delta, "X").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("d(Delta)"), "{msg}");
        assert!(msg.contains("e2"), "{msg}");
    }

    #[test]
    fn restricted_extension_of_the_comparison_example() {
        for p in [3u32, 5] {
            let base = restricted("L_{1|2}^2", p, 0);
            let alg = &base.algebra;
            let spec = alg.spec();
            let module = CoeffModule::trivial_scalar(alg);
            let space = cochain_basis(alg, &module, 2);
            let phi = Cochain::unit(&space, space.index_of(&[], &[1, 1], 0).unwrap());
            let pair = RestrictedCochain2 {
                phi,
                omega_basis: vec![vec![spec.one()]],
            };
            let ext = central_extend_restricted(&base, &pair, "X").unwrap();
            let total = &ext.total;
            assert_eq!(total.algebra.sdim(), (2, 2));
            // e1^[p] = X and X^[p] = 0
            assert_eq!(total.pmap.value(0), total.algebra.basis_vector(1));
            assert!(total.pmap.value(1).iter().all(|c| c.is_zero()));
            assert!(check_pmap_axioms(&total.pmap).is_valid());
            assert!(is_p_nilpotent(total));
            // brackets: [e2,e3] = e1 survives, [e2,e2] = X appears
            assert_eq!(
                total.algebra.br(&total.algebra.basis_vector(2), &total.algebra.basis_vector(3)),
                total.algebra.basis_vector(0)
            );
            assert_eq!(
                total.algebra.br(&total.algebra.basis_vector(2), &total.algebra.basis_vector(2)),
                total.algebra.basis_vector(1)
            );
        }
    }

    #[test]
    fn extend_then_quotient_returns_the_base() {
        let base = restricted("L_{1|2}^2", 3, 0);
        let alg = &base.algebra;
        let spec = alg.spec();
        let module = CoeffModule::trivial_scalar(alg);
        let space = cochain_basis(alg, &module, 2);
        let phi = Cochain::unit(&space, space.index_of(&[], &[1, 1], 0).unwrap());
        let pair = RestrictedCochain2 { phi, omega_basis: vec![vec![spec.one()]] };
        let ext = central_extend_restricted(&base, &pair, "X").unwrap();
        let mut ideal = GradedSubspace::empty(&ext.total.algebra);
        ideal.insert(&ext.total.algebra.basis_vector(ext.x_index));
        let (q, projection) = quotient_by_central(&ext.total, &ideal).unwrap();
        assert_eq!(*q.algebra, **alg);
        assert_eq!(q.pmap.values(), base.pmap.values());
        // the projection is the coordinate map killing X
        let x = ext.total.algebra.basis_vector(ext.x_index);
        assert!(projection.apply(&x).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn quotient_rejects_bad_ideals() {
        let r = restricted("L_{1|2}^3", 3, 0);
        let alg = &r.algebra;
        // e2 is not central: [e1,e2] = e3
        let mut ideal = GradedSubspace::empty(alg);
        ideal.insert(&alg.basis_vector(1));
        assert!(matches!(
            quotient_by_central(&r, &ideal),
            Err(ExtensionError::NotCentral(_))
        ));
        // an even central generator with a nonzero p-power is rejected
        let ext_base = restricted("L_{1|2}^2", 3, 0);
        let spec = ext_base.algebra.spec();
        let module = CoeffModule::trivial_scalar(&ext_base.algebra);
        let space = cochain_basis(&ext_base.algebra, &module, 2);
        let phi = Cochain::unit(&space, space.index_of(&[], &[1, 1], 0).unwrap());
        let pair = RestrictedCochain2 { phi, omega_basis: vec![vec![spec.one()]] };
        let ext = central_extend_restricted(&ext_base, &pair, "X").unwrap();
        // e1 is central in the extension and e1^[p] = X
        let mut line = GradedSubspace::empty(&ext.total.algebra);
        line.insert(&ext.total.algebra.basis_vector(0));
        assert!(matches!(
            quotient_by_central(&ext.total, &line),
            Err(ExtensionError::NotPClosed)
        ));
        // wrong dimension
        let mut plane = GradedSubspace::empty(&ext.total.algebra);
        plane.insert(&ext.total.algebra.basis_vector(0));
        plane.insert(&ext.total.algebra.basis_vector(1));
        assert!(matches!(
            quotient_by_central(&ext.total, &plane),
            Err(ExtensionError::NotCentral(_))
        ));
    }

    #[test]
    fn quotient_of_the_dim4_chain_gives_the_odd_square_algebra() {
        // [e3,e3] = e2, [e3,e4] = e1: killing e1 leaves [e3,e3] = e2
        let r = restricted("L_{2|2}^3", 3, 0);
        let mut ideal = GradedSubspace::empty(&r.algebra);
        ideal.insert(&r.algebra.basis_vector(0));
        let (q, _) = quotient_by_central(&r, &ideal).unwrap();
        assert_eq!(q.algebra.sdim(), (1, 2));
        // the only surviving bracket is the odd square, so this is the
        // one-odd-square algebra with its two odd vectors swapped
        let spec = q.algebra.spec();
        for i in 0..3 {
            for j in i..3 {
                let want = if (i, j) == (1, 1) {
                    q.algebra.basis_vector(0)
                } else {
                    vec![spec.zero(); 3]
                };
                assert_eq!(q.algebra.bracket_basis(i, j), want, "({i},{j})");
            }
        }
    }

    #[test]
    fn equivalence_detects_coboundary_shifts() {
        let base = restricted("L_{1|2}^2", 3, 0);
        let alg = &base.algebra;
        let spec = alg.spec();
        let module = CoeffModule::trivial_scalar(alg);
        let space = cochain_basis(alg, &module, 2);
        let space1 = cochain_basis(alg, &module, 1);
        let phi = Cochain::unit(&space, space.index_of(&[], &[1, 1], 0).unwrap());

        // (phi1, 0) and (phi1, e1*) are the comparison example's two classes
        let zero_om = vec![vec![spec.zero()]];
        let one_om = vec![vec![spec.one()]];
        let e0 = central_extend_restricted(
            &base,
            &RestrictedCochain2 { phi: phi.clone(), omega_basis: zero_om.clone() },
            "X",
        )
        .unwrap();
        let e1 = central_extend_restricted(
            &base,
            &RestrictedCochain2 { phi: phi.clone(), omega_basis: one_om },
            "X",
        )
        .unwrap();
        assert!(extensions_equivalent(&e0, &e1).unwrap().is_none());
        assert!(extensions_equivalent(&e0, &e0).unwrap().is_some());

        // shifting by the differential of an even functional is invisible
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let c = spec.from_int(rng.gen_range(0..3));
            let idx = space1.index_of(&[0], &[], 0).unwrap();
            let mut psi = Cochain::zero(&space1);
            psi.coeffs[idx] = c;
            let d = d1_res(&base, &module, &psi);
            let shifted = RestrictedCochain2 {
                phi: Cochain::from_coeffs(
                    2,
                    phi.coeffs.iter().zip(&d.phi.coeffs).map(|(a, b)| *a + *b).collect(),
                ),
                omega_basis: vec![vec![zero_om[0][0] + d.omega_basis[0][0]]],
            };
            let e2 = central_extend_restricted(&base, &shifted, "X").unwrap();
            let sigma = extensions_equivalent(&e0, &e2).unwrap();
            assert!(sigma.is_some());
            // symmetry
            assert!(extensions_equivalent(&e2, &e0).unwrap().is_some());
        }

        // different bases are refused
        let other = restricted("L_{1|2}^3", 3, 0);
        let ospace = cochain_basis(&other.algebra, &module, 2);
        let opair = RestrictedCochain2 {
            phi: Cochain::zero(&ospace),
            omega_basis: vec![vec![spec.zero()]],
        };
        let oe = central_extend_restricted(&other, &opair, "X").unwrap();
        assert!(matches!(extensions_equivalent(&e0, &oe), Err(ExtensionError::BaseMismatch)));
    }

    #[test]
    fn coboundary_extensions_collapse_to_the_trivial_one() {
        // extensions along d(psi) straighten onto the zero extension
        for name in ["L_{1|2}^1", "L_{2|1}^2"] {
            let base = restricted(name, 3, 0);
            let alg = &base.algebra;
            let spec = alg.spec();
            let module = CoeffModule::trivial_scalar(alg);
            let space = cochain_basis(alg, &module, 2);
            let space1 = cochain_basis(alg, &module, 1);
            let zero = central_extend_restricted(
                &base,
                &RestrictedCochain2 {
                    phi: Cochain::zero(&space),
                    omega_basis: vec![vec![spec.zero()]; alg.n_even()],
                },
                "X",
            )
            .unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..100 {
                let mut psi = Cochain::zero(&space1);
                for j in 0..alg.n_even() {
                    let idx = space1.index_of(&[j], &[], 0).unwrap();
                    psi.coeffs[idx] = spec.from_int(rng.gen_range(0..3));
                }
                let pair = d1_res(&base, &module, &psi);
                let ext = central_extend_restricted(&base, &pair, "X").unwrap();
                let sigma = extensions_equivalent(&ext, &zero).unwrap();
                assert!(sigma.is_some(), "{name}");
            }
        }
    }

    #[test]
    fn decomposition_round_trips_small_restricted_algebras() {
        for (name, which) in [
            ("L_{1|2}^2", 0usize),
            ("L_{1|2}^3", 0),
            ("L_{2|1}^2", 0),
            ("L_{2|2}^3", 0),
            ("L_{2|2}^3", 1),
            ("L_{2|2}^5", 1),
            ("L_{3|1}^4", 1),
            ("L_{2|2}^b", 0),
        ] {
            let r = restricted(name, 3, which);
            let dec = decompose_as_extension(&r).unwrap();
            assert_eq!(dec.quotient.algebra.dim() + 1, r.algebra.dim(), "{name}");
            assert!(dec.iso.is_invertible());
            assert_eq!(dec.even_x, dec.omega.is_some());
        }
    }

    #[test]
    fn decomposition_prefers_the_even_branch() {
        // mixed center: the even vector is taken first
        let entry = catalog_get("L_{1|3}^c", 3).unwrap();
        let pm = enumerate_pmaps(&entry.algebra).unwrap().swap_remove(0);
        let r = RestrictedAlgebra { algebra: entry.algebra, pmap: pm };
        let z = center(&r.algebra);
        assert_eq!(z.sdim(), (1, 1));
        let dec = decompose_as_extension(&r).unwrap();
        assert!(dec.even_x);
    }

    #[test]
    fn decomposition_takes_the_odd_branch_when_the_even_center_is_empty() {
        // [e1,e2] = e3 with zero p-map: center is the odd line through e3
        let r = restricted("L_{1|2}^3", 3, 0);
        let z = center(&r.algebra);
        assert_eq!(z.sdim(), (0, 1));
        let dec = decompose_as_extension(&r).unwrap();
        assert!(!dec.even_x);
        assert!(dec.omega.is_none());
        assert_eq!(dec.quotient.algebra.sdim(), (1, 1));
    }

    #[test]
    fn decomposition_of_an_abelian_algebra_has_zero_cocycle() {
        let r = restricted("L_{2|1}^1", 3, 0);
        let dec = decompose_as_extension(&r).unwrap();
        assert!(dec.cocycle.is_zero());
    }

    #[test]
    fn nonzero_even_powers_are_replaced_by_their_iterates() {
        // e1^[p] = e2 forces the choice of a deeper central element
        let r = restricted("L_{2|2}^1", 3, 1);
        let z = center(&r.algebra);
        assert_eq!(z.sdim(), (2, 2));
        let dec = decompose_as_extension(&r).unwrap();
        assert!(dec.even_x);
        let xp = pmap_eval(&r.pmap, &dec.x).unwrap();
        assert!(xp.iter().all(|c| c.is_zero()));
    }
}
