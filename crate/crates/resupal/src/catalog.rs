//! Fixed library of small nilpotent Lie superalgebras: the complete
//! total-dimension-3 and -4 classifications in both presentations (the
//! final numbered names on the `x`-basis and the construction-time letter
//! names on the `e`/`X`-basis), their known p|2p-structures, and the
//! K(s,m) family builders.
//!
//! Bracket data lists each unordered basis pair once; mirrors follow from
//! super-antisymmetry. Classification brackets all have unit coefficients.

use std::sync::Arc;

use thiserror::Error;

use crate::gfield::{FieldError, FieldSpec, Fq};
use crate::liesuper::SuperAlgebra;
use crate::ratio::Ratio;
use crate::restricted::PMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("no K-family algebra for s = {s}, m = {m}")]
    UnsupportedPair { s: u32, m: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A catalog algebra with its recorded p|2p-structures.
///
/// `pmaps` is `None` when the catalog records none for the entry (the
/// purely even families defer to the Lie-algebra literature, and the letter
/// presentations carry brackets only). Maps are shape-checked on
/// construction; axiom verification runs at use sites and in the tests.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Arc<SuperAlgebra>,
    pub pmaps: Option<Vec<PMap>>,
}

/// Canonical names of every catalog entry, numbered classification first.
pub fn catalog_names() -> Vec<&'static str> {
    NAMES.to_vec()
}

#[rustfmt::skip]
const NAMES: [&str; 62] = [
    "L_{0|3}^1",
    "L_{1|2}^1", "L_{1|2}^2", "L_{1|2}^3", "L_{1|2}^4",
    "L_{2|1}^1", "L_{2|1}^2",
    "L_{3|0}^1", "L_{3|0}^2",
    "L_{0|4}^1",
    "L_{1|3}^1", "L_{1|3}^2", "L_{1|3}^3", "L_{1|3}^4", "L_{1|3}^5", "L_{1|3}^6",
    "L_{2|2}^1", "L_{2|2}^2", "L_{2|2}^3", "L_{2|2}^4", "L_{2|2}^5", "L_{2|2}^6", "L_{2|2}^7",
    "L_{3|1}^1", "L_{3|1}^2", "L_{3|1}^3", "L_{3|1}^4",
    "L_{4|0}^1", "L_{4|0}^2", "L_{4|0}^3",
    "L_{0|4}^a",
    "L_{1|3}^a", "L_{1|3}^b", "L_{1|3}^c", "L_{1|3}^d", "L_{1|3}^e",
    "L_{1|3}^f", "L_{1|3}^g", "L_{1|3}^h", "L_{1|3}^i", "L_{1|3}^j",
    "L_{2|2}^a", "L_{2|2}^b", "L_{2|2}^c", "L_{2|2}^d", "L_{2|2}^e", "L_{2|2}^f",
    "L_{2|2}^g", "L_{2|2}^h", "L_{2|2}^i", "L_{2|2}^j", "L_{2|2}^k", "L_{2|2}^l",
    "L_{2|2}^m", "L_{2|2}^n", "L_{2|2}^o", "L_{2|2}^p",
    "L_{3|1}^a", "L_{3|1}^b", "L_{3|1}^c", "L_{3|1}^d", "L_{3|1}^e",
];

/// Looks up a catalog algebra over the prime field `F_p`.
pub fn catalog_get(name: &str, p: u32) -> Result<CatalogEntry, CatalogError> {
    catalog_get_in(name, FieldSpec::prime(p)?)
}

/// Looks up a catalog algebra over an arbitrary supported field.
pub fn catalog_get_in(name: &str, spec: FieldSpec) -> Result<CatalogEntry, CatalogError> {
    match parse_name(name) {
        Some(Parsed::K { s, m }) => {
            let algebra = Arc::new(build_k(s, m, spec)?);
            Ok(CatalogEntry { name: format!("K^{{{s},{m}}}"), algebra, pmaps: None })
        }
        Some(Parsed::L { n, m, tag }) => build_l(&tag, n, m, spec)
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?,
        None => Err(CatalogError::UnknownName(name.to_string())),
    }
}

enum Parsed {
    L { n: usize, m: usize, tag: String },
    K { s: u32, m: u32 },
}

// Accepts "L_{n|m}^t", "L^t_{n|m}", "K^{s,m}" and "K_{s,m}".
fn parse_name(raw: &str) -> Option<Parsed> {
    let s = raw.trim();
    if let Some(rest) = s.strip_prefix('K') {
        let rest = rest.strip_prefix('^').or_else(|| rest.strip_prefix('_'))?;
        let inner = rest.strip_prefix('{')?.strip_suffix('}')?;
        let (a, b) = inner.split_once(',')?;
        return Some(Parsed::K { s: a.trim().parse().ok()?, m: b.trim().parse().ok()? });
    }
    let rest = s.strip_prefix('L')?;
    let (sdim, tag) = if let Some(r) = rest.strip_prefix("_{") {
        let (sdim, r2) = r.split_once('}')?;
        (sdim.to_string(), r2.strip_prefix('^')?.to_string())
    } else if let Some(r) = rest.strip_prefix('^') {
        let (tag, r2) = r.split_once("_{")?;
        (r2.strip_suffix('}')?.to_string(), tag.to_string())
    } else {
        return None;
    };
    let (n, m) = sdim.split_once('|')?;
    Some(Parsed::L {
        n: n.trim().parse().ok()?,
        m: m.trim().parse().ok()?,
        tag: tag.trim().to_string(),
    })
}

type Pm = Option<Vec<Vec<(usize, usize)>>>;

fn make(
    spec: FieldSpec,
    name: String,
    n: usize,
    m: usize,
    names: &[&str],
    brackets: &[(usize, usize, usize)],
    pmaps: Pm,
) -> Result<CatalogEntry, CatalogError> {
    let dim = n + m;
    let one = spec.one();
    let data: Vec<(usize, usize, Vec<Fq>)> = brackets
        .iter()
        .map(|&(i, j, k)| {
            let mut v = vec![spec.zero(); dim];
            v[k] = one;
            (i, j, v)
        })
        .collect();
    let algebra = Arc::new(
        SuperAlgebra::from_brackets(
            spec,
            n,
            m,
            names.iter().map(|s| s.to_string()).collect(),
            &data,
        )
        .expect("catalog bracket data is well-formed"),
    );
    let pmaps = pmaps.map(|list| {
        list.into_iter()
            .map(|entries| {
                let mut values = vec![vec![spec.zero(); dim]; n];
                for (j, t) in entries {
                    values[j][t] = one;
                }
                PMap::unverified(algebra.clone(), values).expect("catalog p-map shape")
            })
            .collect()
    });
    Ok(CatalogEntry { name, algebra, pmaps })
}

// Shared p-map patterns of the classification:
// a single trivial structure, the two 2-generator structures, the three
// abelian 3-generator chains, and the Heisenberg pair with central target.
fn pm_zero() -> Pm {
    Some(vec![vec![]])
}
fn pm_two() -> Pm {
    Some(vec![vec![], vec![(0, 1)]])
}
fn pm_three() -> Pm {
    Some(vec![vec![], vec![(0, 1)], vec![(0, 1), (1, 2)]])
}
fn pm_heis() -> Pm {
    Some(vec![vec![], vec![(0, 2)]])
}

fn build_l(
    tag: &str,
    n: usize,
    m: usize,
    spec: FieldSpec,
) -> Option<Result<CatalogEntry, CatalogError>> {
    const E3: [&str; 3] = ["e1", "e2", "e3"];
    const X4: [&str; 4] = ["x1", "x2", "x3", "x4"];
    // Letter bases: X sits after the even part of the dimension-3 base.
    const EX_EVEN12: [&str; 4] = ["e1", "X", "e2", "e3"]; // from (1|2), X even
    const EX_ODD21: [&str; 4] = ["e1", "e2", "e3", "X"]; // from (2|1), X odd
    const EX_ODD12: [&str; 4] = ["e1", "e2", "e3", "X"]; // from (1|2), X odd
    const EX_EVEN03: [&str; 4] = ["X", "e1", "e2", "e3"]; // from (0|3), X even
    const EX_EVEN21: [&str; 4] = ["e1", "e2", "X", "e3"]; // from (2|1), X even

    let name = format!("L_{{{n}|{m}}}^{tag}");
    let e = |names: &[&str], br: &[(usize, usize, usize)], pm: Pm| {
        Some(make(spec, name.clone(), n, m, names, br, pm))
    };
    match (n, m, tag) {
        // Total dimension 3, numbered classification.
        (0, 3, "1") => e(&E3, &[], pm_zero()),
        (1, 2, "1") => e(&E3, &[], pm_zero()),
        (1, 2, "2") => e(&E3, &[(1, 2, 0)], pm_zero()),
        (1, 2, "3") => e(&E3, &[(0, 1, 2)], pm_zero()),
        (1, 2, "4") => e(&E3, &[(2, 2, 0)], pm_zero()),
        (2, 1, "1") => e(&E3, &[], pm_two()),
        (2, 1, "2") => e(&E3, &[(2, 2, 1)], pm_two()),
        (3, 0, "1") => e(&E3, &[], pm_three()),
        (3, 0, "2") => e(&E3, &[(0, 1, 2)], pm_heis()),

        // Total dimension 4, numbered classification.
        (0, 4, "1") => e(&X4, &[], pm_zero()),
        (1, 3, "1") => e(&X4, &[], pm_zero()),
        (1, 3, "2") => e(&X4, &[(0, 2, 3)], pm_zero()),
        (1, 3, "3") => e(&X4, &[(1, 2, 0)], pm_zero()),
        (1, 3, "4") => e(&X4, &[(0, 1, 2), (0, 2, 3)], pm_zero()),
        (1, 3, "5") => e(&X4, &[(2, 2, 0)], pm_zero()),
        (1, 3, "6") => e(&X4, &[(1, 1, 0), (2, 3, 0)], pm_zero()),
        (2, 2, "1") => e(&X4, &[], pm_two()),
        (2, 2, "2") => e(&X4, &[(2, 3, 1)], pm_two()),
        (2, 2, "3") => e(&X4, &[(2, 2, 1), (2, 3, 0)], pm_two()),
        (2, 2, "4") => e(&X4, &[(2, 2, 1), (3, 3, 1), (2, 3, 0)], pm_two()),
        (2, 2, "5") => e(&X4, &[(0, 2, 3)], pm_two()),
        (2, 2, "6") => e(&X4, &[(0, 2, 3), (2, 2, 1)], pm_two()),
        (2, 2, "7") => e(&X4, &[(3, 3, 0)], pm_two()),
        (3, 1, "1") => e(&X4, &[], pm_three()),
        (3, 1, "2") => e(&X4, &[(0, 1, 2)], pm_heis()),
        (3, 1, "3") => e(&X4, &[(3, 3, 2)], pm_three()),
        (3, 1, "4") => e(&X4, &[(0, 1, 2), (3, 3, 2)], pm_heis()),
        (4, 0, "1") => e(&X4, &[], None),
        (4, 0, "2") => e(&X4, &[(0, 1, 2)], None),
        (4, 0, "3") => e(&X4, &[(0, 1, 2), (0, 2, 3)], None),

        // Letter presentations: one-dimensional central extensions of the
        // dimension-3 algebras by the cocycle classes.
        (0, 4, "a") => e(&["e1", "e2", "e3", "e4"], &[], None),

        (1, 3, "a") => e(&EX_ODD12, &[], None),
        (1, 3, "b") => e(&EX_ODD12, &[(0, 1, 3)], None),
        (1, 3, "c") => e(&EX_ODD12, &[(1, 2, 0)], None),
        (1, 3, "d") => e(&EX_ODD12, &[(0, 1, 2)], None),
        (1, 3, "e") => e(&EX_ODD12, &[(0, 1, 2), (0, 2, 3)], None),
        (1, 3, "f") => e(&EX_ODD12, &[(1, 1, 0)], None),
        (1, 3, "g") => e(&EX_EVEN03, &[], None),
        (1, 3, "h") => e(&EX_EVEN03, &[(1, 1, 0)], None),
        (1, 3, "i") => e(&EX_EVEN03, &[(1, 2, 0)], None),
        (1, 3, "j") => e(&EX_EVEN03, &[(1, 1, 0), (2, 3, 0)], None),

        (2, 2, "a") => e(&EX_EVEN12, &[], None),
        (2, 2, "b") => e(&EX_EVEN12, &[(2, 3, 1)], None),
        (2, 2, "c") => e(&EX_EVEN12, &[(2, 2, 1), (2, 3, 1), (3, 3, 1)], None),
        (2, 2, "d") => e(&EX_EVEN12, &[(2, 3, 0)], None),
        (2, 2, "e") => e(&EX_EVEN12, &[(2, 3, 0), (2, 2, 1)], None),
        (2, 2, "f") => e(&EX_EVEN12, &[(2, 3, 0), (2, 2, 1), (3, 3, 1)], None),
        (2, 2, "g") => e(&EX_EVEN12, &[(0, 2, 3)], None),
        (2, 2, "h") => e(&EX_EVEN12, &[(0, 2, 3), (2, 2, 1)], None),
        (2, 2, "i") => e(&EX_EVEN12, &[(3, 3, 0)], None),
        (2, 2, "j") => e(&EX_EVEN12, &[(3, 3, 0), (2, 2, 1)], None),
        (2, 2, "k") => e(&EX_EVEN12, &[(3, 3, 0), (2, 3, 1)], None),
        (2, 2, "l") => e(&EX_EVEN12, &[(3, 3, 0), (2, 2, 1), (2, 3, 1)], None),
        (2, 2, "m") => e(&EX_ODD21, &[], None),
        (2, 2, "n") => e(&EX_ODD21, &[(0, 2, 3)], None),
        (2, 2, "o") => e(&EX_ODD21, &[(2, 2, 1)], None),
        (2, 2, "p") => e(&EX_ODD21, &[(2, 2, 1), (0, 2, 3)], None),

        (3, 1, "a") => e(&EX_EVEN21, &[], None),
        (3, 1, "b") => e(&EX_EVEN21, &[(0, 1, 2)], None),
        (3, 1, "c") => e(&EX_EVEN21, &[(3, 3, 2)], None),
        (3, 1, "d") => e(&EX_EVEN21, &[(0, 1, 2), (3, 3, 2)], None),
        (3, 1, "e") => e(&EX_EVEN21, &[(3, 3, 1)], None),

        _ => None,
    }
}

// ---------------------------------------------------------------------------
// K(s,m) family

/// Filiform-type algebra `K(s,m)` over `F_p`: even chain `x0..x_{s-1}`,
/// odd chain `y1..ym`. Supported: `s = 2, 3` for any `m ≥ 1`, `s = 4` for
/// even `m` and for `m = 5`.
pub fn build_k_p(s: u32, m: u32, p: u32) -> Result<SuperAlgebra, CatalogError> {
    build_k(s, m, FieldSpec::prime(p)?)
}

/// [`build_k_p`] over an arbitrary supported field.
pub fn build_k(s: u32, m: u32, spec: FieldSpec) -> Result<SuperAlgebra, CatalogError> {
    if m == 0 || !(2..=4).contains(&s) || (s == 4 && m % 2 == 1 && m != 5) {
        return Err(CatalogError::UnsupportedPair { s, m });
    }
    let sn = s as usize;
    let mm = m as usize;
    let dim = sn + mm;
    let names: Vec<String> = (0..sn)
        .map(|i| format!("x{i}"))
        .chain((1..=mm).map(|j| format!("y{j}")))
        .collect();
    // y_j lives at index s + j - 1.
    let y = |j: i64| sn + j as usize - 1;
    let mut rows: Vec<(usize, usize, Vec<Fq>)> = Vec::new();
    let mut add = |i: usize, j: usize, t: usize, r: Ratio| -> Result<(), CatalogError> {
        let mut v = vec![spec.zero(); dim];
        v[t] = r.in_field(spec)?;
        rows.push((i, j, v));
        Ok(())
    };
    let sgn = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let mi = m as i64;

    if s == 4 && m == 5 {
        for (i, j, t, num, den) in [
            (0, 1, 2, 1, 1),
            (0, 2, 3, 1, 1),
            (0, y(1), y(2), 1, 1),
            (0, y(2), y(3), 1, 1),
            (0, y(3), y(4), 3, 1),
            (0, y(4), y(5), 1, 1),
            (1, y(3), y(5), 3, 1),
            (2, y(2), y(5), -3, 1),
            (3, y(1), y(5), 3, 1),
            (y(1), y(3), 1, -1, 1),
            (y(2), y(2), 1, 1, 1),
            (y(2), y(3), 2, 1, 2),
            (y(3), y(3), 3, 2, 1),
            (y(1), y(4), 2, -1, 2),
            (y(2), y(4), 3, -1, 2),
        ] {
            add(i, j, t, Ratio::new(num, den))?;
        }
    } else {
        for k in 1..sn.saturating_sub(1) {
            add(0, k, k + 1, Ratio::ONE)?;
        }
        for i in 1..mm {
            add(0, y(i as i64), y(i as i64 + 1), Ratio::ONE)?;
        }
        let top = sn - 1; // index of the last even generator
        if m % 2 == 1 {
            // One odd-odd line: pairs summing to m+1, alternating sign.
            for i in 1..=(mi + 1) / 2 {
                add(y(i), y(mi + 1 - i), top, Ratio::int(sgn(i + 1)))?;
            }
        } else {
            // Pairs summing to m hit x1; longer families add higher lines.
            for i in 1..=mi / 2 {
                add(y(i), y(mi - i), 1, Ratio::int(sgn((mi - 2 * i) / 2)))?;
            }
            if s >= 3 {
                for i in 1..=mi / 2 {
                    let num = sgn((mi - 2 * i) / 2) * (mi - 2 * i + 1);
                    add(y(i), y(mi + 1 - i), 2, Ratio::new(num, 2))?;
                }
            }
            if s == 4 {
                for i in 2..=(mi + 2) / 2 {
                    let num = sgn(i + mi / 2 - 1) * (i - 1) * (mi - i + 1);
                    add(y(i), y(mi + 2 - i), 3, Ratio::new(num, 2))?;
                }
            }
        }
    }
    Ok(SuperAlgebra::from_brackets(spec, sn, mm, names, &rows)
        .expect("K-family data is well-formed"))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::{center, check_axioms, derived_subalgebra, nilindex};
    use crate::restricted::{
        check_pmap_axioms, enumerate_pmaps, is_p_nilpotent, RestrictedAlgebra,
    };

    fn cv(spec: FieldSpec, dim: usize, entries: &[(usize, i64)]) -> Vec<Fq> {
        let mut v = vec![spec.zero(); dim];
        for &(i, c) in entries {
            v[i] = spec.from_int(c);
        }
        v
    }

    #[test]
    fn every_entry_satisfies_the_axioms() {
        for p in [3, 5, 7] {
            for name in catalog_names() {
                let entry = catalog_get(name, p).unwrap();
                let report = check_axioms(&entry.algebra);
                assert!(report.is_valid(), "{name} at p = {p}: {:?}", report.violations);
            }
        }
        // Quadratic-extension spot checks.
        let spec9 = FieldSpec::quadratic(3).unwrap();
        for name in ["L_{2|2}^4", "L_{1|3}^6", "L_{2|2}^l"] {
            let entry = catalog_get_in(name, spec9).unwrap();
            assert!(check_axioms(&entry.algebra).is_valid());
        }
    }

    #[test]
    fn recorded_pmaps_satisfy_axioms_and_are_p_nilpotent() {
        for p in [3, 5] {
            for name in catalog_names() {
                let entry = catalog_get(name, p).unwrap();
                let Some(pmaps) = entry.pmaps else { continue };
                assert!(!pmaps.is_empty(), "{name}");
                for pm in pmaps {
                    let report = check_pmap_axioms(&pm);
                    assert!(report.is_valid(), "{name} at p = {p}: {:?}", report.violations);
                    let r = RestrictedAlgebra {
                        algebra: entry.algebra.clone(),
                        pmap: pm,
                    };
                    assert!(is_p_nilpotent(&r), "{name} at p = {p}");
                }
            }
        }
    }

    #[test]
    fn bracket_spot_checks() {
        let entry = catalog_get("L_{1|2}^2", 5).unwrap();
        let a = &entry.algebra;
        let spec = a.spec();
        assert_eq!(a.bracket_basis(1, 2), &cv(spec, 3, &[(0, 1)])[..]);
        assert_eq!(a.bracket_basis(2, 1), &cv(spec, 3, &[(0, 1)])[..]);
        let pmaps = entry.pmaps.unwrap();
        assert_eq!(pmaps.len(), 1);
        assert!(pmaps[0].value(0).iter().all(|c| c.is_zero()));

        let entry = catalog_get("L_{0|4}^1", 3).unwrap();
        assert!(entry.algebra.is_abelian());
        assert_eq!(entry.pmaps.unwrap().len(), 1);

        let entry = catalog_get("L_{2|2}^4", 5).unwrap();
        let a = &entry.algebra;
        assert_eq!(a.bracket_basis(2, 2), &cv(spec, 4, &[(1, 1)])[..]);
        assert_eq!(a.bracket_basis(3, 3), &cv(spec, 4, &[(1, 1)])[..]);
        assert_eq!(a.bracket_basis(2, 3), &cv(spec, 4, &[(0, 1)])[..]);
    }

    #[test]
    fn both_name_orders_parse() {
        let a = catalog_get("L_{1|2}^3", 5).unwrap();
        let b = catalog_get("L^3_{1|2}", 5).unwrap();
        assert_eq!(a.name, b.name);
        assert_eq!(a.algebra, b.algebra);
        assert!(matches!(
            catalog_get("L_{9|9}^z", 5),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            catalog_get("Q_{1|1}^1", 5),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(catalog_get("K^{2,3}", 5).is_ok());
        assert!(catalog_get("K_{2,3}", 5).is_ok());
    }

    #[test]
    fn letter_entries_match_recorded_invariants() {
        // (derived, center) superdimensions distinguish the letter algebras.
        let expect: &[(&str, (usize, usize), (usize, usize))] = &[
            ("L_{1|3}^b", (0, 1), (0, 2)),
            ("L_{1|3}^e", (0, 2), (0, 1)),
            ("L_{1|3}^j", (1, 0), (1, 0)),
            ("L_{2|2}^c", (1, 0), (2, 1)),
            ("L_{2|2}^i", (1, 0), (2, 1)),
            ("L_{2|2}^h", (1, 1), (1, 1)),
            ("L_{2|2}^l", (2, 0), (2, 0)),
            ("L_{3|1}^c", (1, 0), (3, 0)),
            ("L_{3|1}^d", (1, 0), (1, 0)),
        ];
        for &(name, want_derived, want_center) in expect {
            let entry = catalog_get(name, 5).unwrap();
            assert_eq!(derived_subalgebra(&entry.algebra).sdim(), want_derived, "{name}");
            assert_eq!(center(&entry.algebra).sdim(), want_center, "{name}");
        }
    }

    #[test]
    fn numbered_entries_match_recorded_invariants() {
        let expect: &[(&str, (usize, usize), (usize, usize))] = &[
            ("L_{2|2}^4", (2, 0), (2, 0)),
            ("L_{3|1}^3", (1, 0), (3, 0)),
            ("L_{3|1}^4", (1, 0), (1, 0)),
            ("L_{1|3}^6", (1, 0), (1, 0)),
        ];
        for &(name, want_derived, want_center) in expect {
            let entry = catalog_get(name, 5).unwrap();
            assert_eq!(derived_subalgebra(&entry.algebra).sdim(), want_derived, "{name}");
            assert_eq!(center(&entry.algebra).sdim(), want_center, "{name}");
        }
    }

    #[test]
    fn k_family_small_cases() {
        let k23 = build_k_p(2, 3, 5).unwrap();
        let spec = k23.spec();
        // Basis x0, x1, y1, y2, y3.
        assert_eq!(k23.bracket_basis(0, 2), &cv(spec, 5, &[(3, 1)])[..]);
        assert_eq!(k23.bracket_basis(0, 3), &cv(spec, 5, &[(4, 1)])[..]);
        assert_eq!(k23.bracket_basis(2, 4), &cv(spec, 5, &[(1, 1)])[..]);
        assert_eq!(k23.bracket_basis(3, 3), &cv(spec, 5, &[(1, -1)])[..]);

        let k32 = build_k_p(3, 2, 5).unwrap();
        // Basis x0, x1, x2, y1, y2; 1/2 = 3 over F_5.
        assert_eq!(k32.bracket_basis(3, 3), &cv(spec, 5, &[(1, 1)])[..]);
        assert_eq!(k32.bracket_basis(3, 4), &cv(spec, 5, &[(2, 3)])[..]);

        let k45 = build_k_p(4, 5, 3).unwrap();
        let s3 = k45.spec();
        // Basis x0..x3, y1..y5; [y3,y3] = 2x3; coefficients divisible by 3 vanish.
        assert_eq!(k45.bracket_basis(6, 6), &cv(s3, 9, &[(3, 2)])[..]);
        assert!(k45.bracket_basis(0, 6).iter().all(|c| c.is_zero()));
        assert!(k45.bracket_basis(3, 4).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn k_family_satisfies_axioms() {
        for p in [3, 5, 7] {
            for (s, m) in [(2u32, 1u32), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8)] {
                let alg = build_k_p(s, m, p).unwrap();
                assert!(check_axioms(&alg).is_valid(), "K({s},{m}) at p = {p}");
            }
            for (s, m) in [(3u32, 1u32), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6)] {
                let alg = build_k_p(s, m, p).unwrap();
                assert!(check_axioms(&alg).is_valid(), "K({s},{m}) at p = {p}");
            }
            for (s, m) in [(4u32, 2u32), (4, 4), (4, 6), (4, 5)] {
                let alg = build_k_p(s, m, p).unwrap();
                assert!(check_axioms(&alg).is_valid(), "K({s},{m}) at p = {p}");
            }
        }
    }

    #[test]
    fn k_family_unsupported_pairs() {
        for (s, m) in [(4u32, 1u32), (4, 3), (4, 7), (1, 2), (5, 2), (2, 0)] {
            assert!(matches!(
                build_k_p(s, m, 5),
                Err(CatalogError::UnsupportedPair { .. })
            ));
        }
    }

    #[test]
    fn k2_nilindex_depends_on_parity() {
        for (m, want) in [(1u32, 2), (2, 2), (3, 4), (4, 4), (5, 6), (6, 6)] {
            let alg = build_k_p(2, m, 7).unwrap();
            let got = nilindex(&alg).expect("K(2,m) is nilpotent");
            assert_eq!(got, want, "K(2,{m})");
        }
    }

    #[test]
    fn k_restrictedness_boundary() {
        // K(2,m) admits a structure exactly when m ≤ p.
        let alg = Arc::new(build_k_p(2, 3, 3).unwrap());
        assert!(!enumerate_pmaps(&alg).unwrap().is_empty());
        let alg = Arc::new(build_k_p(2, 4, 3).unwrap());
        assert!(enumerate_pmaps(&alg).unwrap().is_empty());
        let alg = Arc::new(build_k_p(2, 5, 5).unwrap());
        assert!(!enumerate_pmaps(&alg).unwrap().is_empty());
        let alg = Arc::new(build_k_p(2, 6, 5).unwrap());
        assert!(enumerate_pmaps(&alg).unwrap().is_empty());
    }

    #[test]
    fn k3_structures_take_values_in_the_last_generator() {
        // All 27 maps over F_3 send x0, x1, x2 into the span of x2.
        let alg = Arc::new(build_k_p(3, 2, 3).unwrap());
        let maps = enumerate_pmaps(&alg).unwrap();
        assert_eq!(maps.len(), 27);
        for pm in &maps {
            for j in 0..3 {
                let v = pm.value(j);
                assert!(v
                    .iter()
                    .enumerate()
                    .all(|(t, c)| t == 2 || c.is_zero()));
            }
        }
    }

    #[test]
    fn k45_structures() {
        // p = 3: values lie in the center span{x3}; the map x0 -> x3 works.
        let alg = Arc::new(build_k_p(4, 5, 3).unwrap());
        let spec = alg.spec();
        let dim = alg.dim();
        let mut values = vec![vec![spec.zero(); dim]; 4];
        values[0][3] = spec.one();
        let pm = PMap::verified(alg.clone(), values).unwrap();
        assert!(check_pmap_axioms(&pm).is_valid());
        let maps = enumerate_pmaps(&alg).unwrap();
        assert_eq!(maps.len(), 81);

        // p = 5: the center vanishes, leaving exactly the zero structure.
        let alg = Arc::new(build_k_p(4, 5, 5).unwrap());
        let maps = enumerate_pmaps(&alg).unwrap();
        assert_eq!(maps.len(), 1);
        for j in 0..4 {
            assert!(maps[0].value(j).iter().all(|c| c.is_zero()));
        }
    }
}
