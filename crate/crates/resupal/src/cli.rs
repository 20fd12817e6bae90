//! Command-line surface: the JSON algebra file format, `catalog:` URIs,
//! and the report emitters behind each subcommand.
//!
//! Exit codes: 0 success, 1 domain failure (axiom violations, non-cocycle
//! input, failed verification), 2 malformed input, and for `isomorphic`
//! only: 3 invariants differ (certified non-isomorphic), 4 no witness over
//! the base field (inconclusive over extensions).
//!
//! All emitters iterate in fixed orders and print exact field elements, so
//! every report is byte-stable for a fixed input and version.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{build_k, catalog_get_in};
use crate::cohomology::{
    b2_res, cochain_basis, cochain_parity, d_ce, describe_cochain, describe_omega, h1_res_dims,
    h2_res_plus_even, h_ce_dims, pack_cochain2, pack_len, z2_res, CoeffModule, Cochain,
};
use crate::equivalence::{
    cocycle_orbits, cocycle_orbits_strict, fingerprint, isomorphism_search,
    restricted_isomorphism_search, EquivalenceError, Fingerprint,
};
use crate::extensions::central_extend;
use crate::gfield::{FieldSpec, Fq};
use crate::liesuper::{
    check_axioms, format_vector, nilindex, GradedMap, SuperAlgebra, VectorParity,
};
use crate::linalg::Echelon;
use crate::restricted::{
    check_pmap_axioms, enumerate_pmaps, is_p_nilpotent, PMap, RestrictedAlgebra,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DISTINCT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_FAIL,
        }
    }
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn domain_err(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

// ---------------------------------------------------------------------------
// Algebra files

/// On-disk algebra description. Unlisted brackets are zero; each bracket
/// value maps basis names to coefficients. Coefficients are integers,
/// `{"num": a, "den": b}` rationals resolved mod p at load time, or (for
/// `field_degree` 2) pairs `[c0, c1]` against the canonical generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    #[serde(default = "default_degree")]
    pub field_degree: u8,
    #[serde(default)]
    pub even: Vec<String>,
    #[serde(default)]
    pub odd: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<BTreeMap<String, BTreeMap<String, Coeff>>>,
}

fn default_degree() -> u8 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, Coeff>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Ratio { num: i64, den: i64 },
    Pair(Vec<CoeffPart>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffPart {
    Int(i64),
    Ratio { num: i64, den: i64 },
}

fn part_to_fq(spec: FieldSpec, part: &CoeffPart) -> Result<Fq, CliError> {
    match part {
        CoeffPart::Int(n) => Ok(spec.from_int(*n)),
        CoeffPart::Ratio { num, den } => spec
            .from_ratio(*num, *den)
            .map_err(|e| parse_err(format!("coefficient {num}/{den}: {e}"))),
    }
}

fn coeff_to_fq(spec: FieldSpec, c: &Coeff) -> Result<Fq, CliError> {
    match c {
        Coeff::Int(n) => Ok(spec.from_int(*n)),
        Coeff::Ratio { num, den } => spec
            .from_ratio(*num, *den)
            .map_err(|e| parse_err(format!("coefficient {num}/{den}: {e}"))),
        Coeff::Pair(parts) => {
            if spec.degree() != 2 {
                return Err(parse_err("pair coefficients require field_degree 2"));
            }
            if parts.len() != 2 {
                return Err(parse_err(format!(
                    "pair coefficient must have exactly 2 entries, got {}",
                    parts.len()
                )));
            }
            let c0 = part_to_fq(spec, &parts[0])?;
            let c1 = part_to_fq(spec, &parts[1])?;
            Ok(c0 + c1 * spec.gen())
        }
    }
}

fn fq_to_coeff(spec: FieldSpec, c: Fq) -> Coeff {
    let (c0, c1) = c.coeffs();
    if spec.degree() == 2 {
        Coeff::Pair(vec![CoeffPart::Int(c0 as i64), CoeffPart::Int(c1 as i64)])
    } else {
        Coeff::Int(c0 as i64)
    }
}

/// A loaded input: the algebra plus whatever p-map data came with it.
/// Files carry at most one map; catalog entries may record several.
#[derive(Debug)]
pub struct Loaded {
    pub label: String,
    pub algebra: Arc<SuperAlgebra>,
    pub pmaps: Vec<PMap>,
}

fn name_index(names: &[String], name: &str) -> Result<usize, CliError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| parse_err(format!("unknown basis name {name:?}")))
}

fn value_vector(
    spec: FieldSpec,
    names: &[String],
    value: &BTreeMap<String, Coeff>,
) -> Result<Vec<Fq>, CliError> {
    let mut v = vec![spec.zero(); names.len()];
    for (name, c) in value {
        v[name_index(names, name)?] = coeff_to_fq(spec, c)?;
    }
    Ok(v)
}

/// Realizes a parsed file over `F_{p^d}`, with `p` optionally overridden
/// so one file (rational coefficients included) serves several primes.
pub fn realize_file(file: &AlgebraFile, p: Option<u32>) -> Result<Loaded, CliError> {
    let p = p.unwrap_or(file.p);
    let spec = match file.field_degree {
        1 => FieldSpec::prime(p),
        2 => FieldSpec::quadratic(p),
        d => return Err(parse_err(format!("unsupported field_degree {d}"))),
    }
    .map_err(|e| parse_err(e.to_string()))?;

    let n = file.even.len();
    let m = file.odd.len();
    let dim = n + m;
    let names: Vec<String> = file.even.iter().chain(&file.odd).cloned().collect();
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(parse_err(format!("duplicate basis name {a:?}")));
        }
    }

    // Listed entries are taken raw; the unlisted mirror of each pair is
    // filled by super-antisymmetry. Listing both orientations (or one pair
    // twice) inconsistently is a load error; a bad diagonal loads fine and
    // is left for the axiom checker to report.
    let mut c = vec![vec![vec![spec.zero(); dim]; dim]; dim];
    let mut listed = vec![vec![false; dim]; dim];
    for entry in &file.brackets {
        let i = name_index(&names, &entry.left)?;
        let j = name_index(&names, &entry.right)?;
        let v = value_vector(spec, &names, &entry.value)?;
        if listed[i][j] && c[i][j] != v {
            return Err(parse_err(format!(
                "brackets [{},{}] listed twice with different values",
                entry.left, entry.right
            )));
        }
        listed[i][j] = true;
        c[i][j] = v;
    }
    let odd = |i: usize| i >= n;
    for i in 0..dim {
        for j in 0..dim {
            if i != j && listed[i][j] && !listed[j][i] {
                c[j][i] = if odd(i) && odd(j) {
                    c[i][j].clone()
                } else {
                    c[i][j].iter().map(|&x| -x).collect()
                };
            }
        }
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            if listed[i][j] && listed[j][i] {
                let mirror: Vec<Fq> = if odd(i) && odd(j) {
                    c[i][j].clone()
                } else {
                    c[i][j].iter().map(|&x| -x).collect()
                };
                if c[j][i] != mirror {
                    return Err(parse_err(format!(
                        "brackets [{a},{b}] and [{b},{a}] are inconsistent",
                        a = names[i],
                        b = names[j]
                    )));
                }
            }
        }
    }

    let algebra = Arc::new(SuperAlgebra::from_table(spec, n, m, names.clone(), c));
    let mut pmaps = Vec::new();
    if let Some(pm) = &file.pmap {
        let mut values = vec![vec![spec.zero(); dim]; n];
        for (name, value) in pm {
            let j = name_index(&names, name)?;
            if j >= n {
                return Err(parse_err(format!("p-map key {name:?} is not an even basis name")));
            }
            values[j] = value_vector(spec, &names, value)?;
        }
        let pm = PMap::unverified(algebra.clone(), values)
            .map_err(|e| domain_err(format!("p-map: {e}")))?;
        pmaps.push(pm);
    }
    Ok(Loaded { label: String::new(), algebra, pmaps })
}

/// Resolves `catalog:NAME` or a JSON file path at the requested prime.
pub fn load_input(target: &str, p: Option<u32>, field_degree: u8) -> Result<Loaded, CliError> {
    if let Some(name) = target.strip_prefix("catalog:") {
        let p = p.unwrap_or(3);
        let spec = match field_degree {
            1 => FieldSpec::prime(p),
            2 => FieldSpec::quadratic(p),
            d => return Err(parse_err(format!("unsupported field degree {d}"))),
        }
        .map_err(|e| parse_err(e.to_string()))?;
        let entry = catalog_get_in(name, spec).map_err(|e| parse_err(e.to_string()))?;
        return Ok(Loaded {
            label: entry.name,
            algebra: entry.algebra,
            pmaps: entry.pmaps.unwrap_or_default(),
        });
    }
    let text = std::fs::read_to_string(target)
        .map_err(|e| parse_err(format!("cannot read {target}: {e}")))?;
    let file: AlgebraFile =
        serde_json::from_str(&text).map_err(|e| parse_err(format!("{target}: {e}")))?;
    let mut loaded = realize_file(&file, p)?;
    loaded.label = target.to_string();
    Ok(loaded)
}

/// Serializes an algebra (optionally with one p-map) in the file format.
/// Only the upper triangle of nonzero brackets is listed.
pub fn algebra_to_file(alg: &SuperAlgebra, pmap: Option<&PMap>) -> AlgebraFile {
    let spec = alg.spec();
    let n = alg.n_even();
    let dim = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let v = alg.bracket_basis(i, j);
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut value = BTreeMap::new();
            for (t, &c) in v.iter().enumerate() {
                if !c.is_zero() {
                    value.insert(alg.name(t).to_string(), fq_to_coeff(spec, c));
                }
            }
            brackets.push(BracketEntry {
                left: alg.name(i).to_string(),
                right: alg.name(j).to_string(),
                value,
            });
        }
    }
    let pmap = pmap.map(|pm| {
        (0..n)
            .map(|j| {
                let mut value = BTreeMap::new();
                for (t, &c) in pm.value(j).iter().enumerate() {
                    if !c.is_zero() {
                        value.insert(alg.name(t).to_string(), fq_to_coeff(spec, c));
                    }
                }
                (alg.name(j).to_string(), value)
            })
            .collect()
    });
    AlgebraFile {
        p: spec.characteristic(),
        field_degree: spec.degree(),
        even: (0..n).map(|i| alg.name(i).to_string()).collect(),
        odd: (n..dim).map(|i| alg.name(i).to_string()).collect(),
        brackets,
        pmap,
    }
}

pub fn emit_file(file: &AlgebraFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("file serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Cocycle expressions

/// Parses a scalar degree-2 cocycle expression: `0`, or terms
/// `[k*]D{i,j}` (also written `Dij` or `D_{i,j}`) joined by `+`/`-`,
/// with 1-based global basis indices.
pub fn parse_cocycle(alg: &SuperAlgebra, text: &str) -> Result<Cochain, CliError> {
    let module = CoeffModule::trivial_scalar(alg);
    let space = cochain_basis(alg, &module, 2);
    let spec = alg.spec();
    let mut c = Cochain::zero(&space);
    let compact: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if compact == "0" {
        return Ok(c);
    }
    for term in compact.replace('-', "+-").split('+').filter(|t| !t.is_empty()) {
        let d_at = term
            .find('D')
            .ok_or_else(|| parse_err(format!("term {term:?} has no D{{i,j}} factor")))?;
        let (head, delta) = term.split_at(d_at);
        let coeff = match head.trim_end_matches('*') {
            "" => spec.one(),
            "-" => -spec.one(),
            k => spec.from_int(
                k.parse::<i64>()
                    .map_err(|_| parse_err(format!("bad coefficient {k:?} in {term:?}")))?,
            ),
        };
        let body = delta[1..].trim_start_matches('_');
        let digits: Vec<usize> = if let Some(inner) =
            body.strip_prefix('{').and_then(|b| b.strip_suffix('}'))
        {
            inner
                .split(',')
                .map(|d| d.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err(format!("bad indices in {term:?}")))?
        } else {
            body.chars()
                .map(|ch| ch.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| parse_err(format!("bad indices in {term:?}")))?
        };
        if digits.len() != 2 {
            return Err(parse_err(format!("{term:?} must index exactly two basis vectors")));
        }
        let (mut a, mut b) = (digits[0], digits[1]);
        if a == 0 || b == 0 || a > alg.dim() || b > alg.dim() {
            return Err(parse_err(format!(
                "indices in {term:?} must lie in 1..={}",
                alg.dim()
            )));
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let (mut evens, mut odds) = (Vec::new(), Vec::new());
        for t in [a - 1, b - 1] {
            if alg.parity(t) {
                odds.push(t);
            } else {
                evens.push(t);
            }
        }
        let idx = space.index_of(&evens, &odds, 0).ok_or_else(|| {
            domain_err(format!("D{{{a},{b}}} vanishes identically (even diagonal)"))
        })?;
        c.coeffs[idx] = c.coeffs[idx] + coeff;
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// Table rendering

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let ncols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: Vec<String>| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    emit(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        emit(row.clone());
    }
    let _ = ncols;
    out
}

fn sdim_str((a, b): (usize, usize)) -> String {
    format!("{a}|{b}")
}

fn fingerprint_row(name: &str, f: &Fingerprint) -> Vec<String> {
    let mut row = vec![
        name.to_string(),
        f.p.to_string(),
        sdim_str(f.sdim),
        sdim_str(f.derived),
        sdim_str(f.center),
    ];
    row.extend(f.h.iter().map(|&h| sdim_str(h)));
    row
}

const FINGERPRINT_HEADER: [&str; 9] =
    ["name", "p", "sdim", "[L,L]", "z(L)", "H1", "H2", "H3", "H4"];

fn parity_label(p: VectorParity) -> &'static str {
    match p {
        VectorParity::Even => "even",
        VectorParity::Odd => "odd",
        VectorParity::Mixed => "mixed",
        VectorParity::Zero => "zero",
    }
}

// ---------------------------------------------------------------------------
// Commands

/// Axiom check; with p-map data, also the p-map axioms and p-nilpotency.
pub fn cmd_check(
    target: &str,
    p: Option<u32>,
    field_degree: u8,
    out: &mut String,
) -> Result<i32, CliError> {
    let loaded = load_input(target, p, field_degree)?;
    let alg = &loaded.algebra;
    let report = check_axioms(alg);
    let mut ok = report.is_valid();
    if report.is_valid() {
        writeln!(out, "{}: axioms hold", loaded.label).unwrap();
    } else {
        writeln!(out, "{}: axiom violations:", loaded.label).unwrap();
        for v in &report.violations {
            writeln!(out, "  {}", v.detail).unwrap();
        }
    }
    for (i, pm) in loaded.pmaps.iter().enumerate() {
        let tag = if loaded.pmaps.len() == 1 {
            "p-map".to_string()
        } else {
            format!("p-map {}/{}", i + 1, loaded.pmaps.len())
        };
        let rep = check_pmap_axioms(pm);
        if !rep.is_valid() {
            ok = false;
            writeln!(out, "{tag}: violations:").unwrap();
            for v in &rep.violations {
                writeln!(out, "  {v}").unwrap();
            }
            continue;
        }
        let r = RestrictedAlgebra { algebra: alg.clone(), pmap: pm.clone() };
        let nil = is_p_nilpotent(&r);
        ok &= nil;
        writeln!(out, "{tag}: valid, p-nilpotent: {}", if nil { "yes" } else { "no" }).unwrap();
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

/// Invariant fingerprint rows at each requested prime.
pub fn cmd_invariants(
    target: &str,
    ps: &[u32],
    field_degree: u8,
    out: &mut String,
) -> Result<i32, CliError> {
    let mut rows = Vec::new();
    for &p in ps {
        let loaded = load_input(target, Some(p), field_degree)?;
        rows.push(fingerprint_row(&loaded.label, &fingerprint(&loaded.algebra)));
    }
    out.push_str(&render_table(&FINGERPRINT_HEADER, &rows));
    Ok(EXIT_OK)
}

/// Chevalley-Eilenberg representatives extending the coboundary echelon.
fn ce_reps(alg: &SuperAlgebra, module: &CoeffModule, k: usize) -> (usize, usize, Vec<Cochain>) {
    let space = cochain_basis(alg, module, k);
    let z = d_ce(alg, module, k).nullspace();
    let zdim = z.len();
    let mut ech = Echelon::new(alg.spec(), space.dim());
    let mut bdim = 0;
    if k >= 1 {
        let prev = d_ce(alg, module, k - 1);
        for j in 0..prev.ncols() {
            let col: Vec<Fq> = (0..prev.nrows()).map(|i| prev.get(i, j)).collect();
            if ech.insert(&col) {
                bdim += 1;
            }
        }
    }
    let mut reps = Vec::new();
    for v in &z {
        let red = ech.reduce(v);
        if red.iter().any(|c| !c.is_zero()) {
            ech.insert(&red);
            reps.push(Cochain::from_coeffs(k, red));
        }
    }
    (zdim, bdim, reps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    Trivial,
    Adjoint,
}

pub struct CohomologyOpts {
    pub degree: usize,
    pub coeff: CoeffKind,
    pub restricted: bool,
    pub plus_even: bool,
    pub pmap_index: usize,
}

/// Cohomology dimensions and representatives, ordinary or restricted.
pub fn cmd_cohomology(
    target: &str,
    p: Option<u32>,
    field_degree: u8,
    opts: &CohomologyOpts,
    out: &mut String,
) -> Result<i32, CliError> {
    let loaded = load_input(target, p, field_degree)?;
    let alg = &loaded.algebra;
    let module = match opts.coeff {
        CoeffKind::Trivial => CoeffModule::trivial_scalar(alg),
        CoeffKind::Adjoint => CoeffModule::adjoint(alg),
    };
    let k = opts.degree;

    if !opts.restricted {
        if k > 4 {
            return Err(parse_err("ordinary cohomology is implemented for degrees 0..=4"));
        }
        let space = cochain_basis(alg, &module, k);
        let c_odd = space.parities().iter().filter(|&&o| o).count();
        let c_even = space.dim() - c_odd;
        let (zdim, bdim, reps) = ce_reps(alg, &module, k);
        let h = h_ce_dims(alg, &module, k);
        writeln!(out, "dim C{k} = {}", sdim_str((c_even, c_odd))).unwrap();
        writeln!(out, "dim Z{k}_CE = {zdim}").unwrap();
        writeln!(out, "dim B{k}_CE = {bdim}").unwrap();
        writeln!(out, "dim H{k} = {}", sdim_str(h)).unwrap();
        if !reps.is_empty() {
            writeln!(out, "representatives:").unwrap();
            for r in &reps {
                let par = parity_label(cochain_parity(&space, r));
                writeln!(out, "  {} ({par})", describe_cochain(alg, &module, r)).unwrap();
            }
        }
        return Ok(EXIT_OK);
    }

    let pm = loaded
        .pmaps
        .get(opts.pmap_index)
        .ok_or_else(|| domain_err("restricted cohomology needs a p-map (none recorded)"))?;
    let r = RestrictedAlgebra::new(pm.clone()).map_err(|e| domain_err(e.to_string()))?;
    match k {
        1 => {
            writeln!(out, "dim H1* = {}", sdim_str(h1_res_dims(&r, &module))).unwrap();
        }
        2 if opts.plus_even => {
            let (dim, reps) = h2_res_plus_even(&r, &module).map_err(|e| domain_err(e.to_string()))?;
            writeln!(out, "dim H2*+ = {dim}").unwrap();
            if !reps.is_empty() {
                writeln!(out, "representatives:").unwrap();
                for rc in &reps {
                    let phi = describe_cochain(alg, &module, &rc.phi);
                    let omega = describe_omega(alg, &module, &rc.omega_basis).join(", ");
                    writeln!(out, "  phi = {phi}; {omega}").unwrap();
                }
            }
        }
        2 => {
            let zdim_ce = d_ce(alg, &module, 2).nullspace().len();
            let z = z2_res(&r, &module).map_err(|e| domain_err(e.to_string()))?;
            let b = b2_res(&r, &module);
            writeln!(out, "dim Z2_CE = {zdim_ce}").unwrap();
            writeln!(out, "dim Z2* = {}", z.len()).unwrap();
            writeln!(out, "dim B2* = {}", b.len()).unwrap();
            writeln!(out, "dim H2* = {}", z.len() - b.len()).unwrap();
            let mut ech = Echelon::new(alg.spec(), pack_len(alg, &module));
            for rc in &b {
                ech.insert(&pack_cochain2(alg, &module, rc));
            }
            let mut any = false;
            for rc in &z {
                let red = ech.reduce(&pack_cochain2(alg, &module, rc));
                if red.iter().any(|c| !c.is_zero()) {
                    ech.insert(&red);
                    let rc = crate::cohomology::unpack_cochain2(alg, &module, &red);
                    if !any {
                        writeln!(out, "representatives:").unwrap();
                        any = true;
                    }
                    let phi = describe_cochain(alg, &module, &rc.phi);
                    let omega = describe_omega(alg, &module, &rc.omega_basis).join(", ");
                    writeln!(out, "  phi = {phi}; {omega}").unwrap();
                }
            }
        }
        _ => return Err(parse_err("restricted cohomology is implemented for degrees 1 and 2")),
    }
    Ok(EXIT_OK)
}

/// One-dimensional central extension by a scalar 2-cocycle, emitted as a
/// new algebra file.
pub fn cmd_extend(
    target: &str,
    p: Option<u32>,
    field_degree: u8,
    cocycle: &str,
    name: &str,
    out: &mut String,
) -> Result<i32, CliError> {
    let loaded = load_input(target, p, field_degree)?;
    let c = parse_cocycle(&loaded.algebra, cocycle)?;
    let total = central_extend(&loaded.algebra, &c, name).map_err(|e| domain_err(e.to_string()))?;
    out.push_str(&emit_file(&algebra_to_file(&total, None)));
    Ok(EXIT_OK)
}

/// Enumerates p|2p-structures and groups the p-nilpotent ones into
/// restricted-isomorphism classes under the automorphism action. Only
/// p-nilpotent maps enter the classification: the non-nilpotent solutions
/// (p-power fixing a central line, say) satisfy the axioms but fall
/// outside the nilpotent classification the classes are compared against.
pub fn cmd_pmaps(
    target: &str,
    p: Option<u32>,
    field_degree: u8,
    out: &mut String,
) -> Result<i32, CliError> {
    let loaded = load_input(target, p, field_degree)?;
    let maps = enumerate_pmaps(&loaded.algebra).map_err(|e| {
        domain_err(format!("{e} (raise RESUPAL_BOUND to enumerate larger spaces)"))
    })?;
    let nilpotent = nilpotent_subset(&loaded.algebra, maps);
    writeln!(out, "p-maps (p-nilpotent): {}", nilpotent.len()).unwrap();
    if nilpotent.is_empty() {
        writeln!(out, "no p-nilpotent p|2p-structure exists").unwrap();
        return Ok(EXIT_OK);
    }
    let classes = pmap_classes(&loaded.algebra, &nilpotent)?;
    writeln!(out, "classes: {}", classes.len()).unwrap();
    for (i, class) in classes.iter().enumerate() {
        let rep = &nilpotent[class[0]];
        let count = if class.len() == 1 { "1 map".to_string() } else { format!("{} maps", class.len()) };
        writeln!(out, "class {} ({count}): {}", i + 1, rep.describe().join("; ")).unwrap();
    }
    Ok(EXIT_OK)
}

fn nilpotent_subset(alg: &Arc<SuperAlgebra>, maps: Vec<PMap>) -> Vec<PMap> {
    maps.into_iter()
        .filter(|pm| {
            is_p_nilpotent(&RestrictedAlgebra { algebra: alg.clone(), pmap: pm.clone() })
        })
        .collect()
}

/// Greedy partition of p-maps into restricted-isomorphism classes; the
/// first member of each class (in enumeration order) is its representative.
pub fn pmap_classes(
    alg: &Arc<SuperAlgebra>,
    maps: &[PMap],
) -> Result<Vec<Vec<usize>>, CliError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, pm) in maps.iter().enumerate() {
        let ri = RestrictedAlgebra { algebra: alg.clone(), pmap: pm.clone() };
        let mut placed = false;
        for class in classes.iter_mut() {
            let rj = RestrictedAlgebra { algebra: alg.clone(), pmap: maps[class[0]].clone() };
            match restricted_isomorphism_search(&ri, &rj) {
                Ok(_) => {
                    class.push(i);
                    placed = true;
                    break;
                }
                Err(EquivalenceError::NotFoundOverField) => {}
                Err(e) => {
                    return Err(domain_err(format!(
                        "{e} (raise RESUPAL_BOUND to search larger groups)"
                    )))
                }
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(classes)
}

/// Orbit table of degree-2 scalar cocycles under the automorphism group:
/// cohomology classes by default, full cocycles with `strict`.
pub fn cmd_orbits(
    target: &str,
    p: Option<u32>,
    field_degree: u8,
    strict: bool,
    out: &mut String,
) -> Result<i32, CliError> {
    let loaded = load_input(target, p, field_degree)?;
    let alg = &loaded.algebra;
    let module = CoeffModule::trivial_scalar(alg);
    let bound_note = |e: EquivalenceError| {
        domain_err(format!("{e} (raise RESUPAL_BOUND to search larger groups)"))
    };
    if strict {
        let part = cocycle_orbits_strict(alg).map_err(bound_note)?;
        let total: usize = part.orbits.iter().map(|o| o.members.len()).sum();
        writeln!(out, "Z2 cocycles: {total}, orbits: {}", part.orbits.len()).unwrap();
        for (i, o) in part.orbits.iter().enumerate() {
            let rep = Cochain::from_coeffs(2, o.canonical.clone());
            writeln!(
                out,
                "orbit {} (size {}): {}",
                i + 1,
                o.members.len(),
                describe_cochain(alg, &module, &rep)
            )
            .unwrap();
        }
    } else {
        let part = cocycle_orbits(alg, None).map_err(bound_note)?;
        let total: usize = part.orbits.iter().map(|o| o.members.len()).sum();
        writeln!(out, "H2 classes: {total}, orbits: {}", part.orbits.len()).unwrap();
        for (i, o) in part.orbits.iter().enumerate() {
            let rep = if o.canonical.is_empty() {
                "0".to_string()
            } else {
                describe_cochain(alg, &module, &part.lift(&o.canonical))
            };
            writeln!(out, "orbit {} (size {}): {}", i + 1, o.members.len(), rep).unwrap();
        }
    }
    Ok(EXIT_OK)
}

/// Isomorphism verdict: 0 with a witness, 3 when invariants already
/// separate the algebras, 4 when the search is inconclusive over the field.
pub fn cmd_isomorphic(
    target_a: &str,
    target_b: &str,
    p: Option<u32>,
    field_degree: u8,
    out: &mut String,
) -> Result<i32, CliError> {
    let a = load_input(target_a, p, field_degree)?;
    let b = load_input(target_b, p, field_degree)?;
    let fa = fingerprint(&a.algebra);
    let fb = fingerprint(&b.algebra);
    if fa != fb {
        writeln!(out, "{} and {} are not isomorphic:", a.label, b.label).unwrap();
        let pairs: [(&str, String, String); 8] = [
            ("sdim", sdim_str(fa.sdim), sdim_str(fb.sdim)),
            ("[L,L]", sdim_str(fa.derived), sdim_str(fb.derived)),
            ("z(L)", sdim_str(fa.center), sdim_str(fb.center)),
            ("nilindex", format!("{:?}", fa.nilindex), format!("{:?}", fb.nilindex)),
            ("H1", sdim_str(fa.h[0]), sdim_str(fb.h[0])),
            ("H2", sdim_str(fa.h[1]), sdim_str(fb.h[1])),
            ("H3", sdim_str(fa.h[2]), sdim_str(fb.h[2])),
            ("H4", sdim_str(fa.h[3]), sdim_str(fb.h[3])),
        ];
        for (label, x, y) in pairs {
            if x != y {
                writeln!(out, "  {label}: {x} vs {y}").unwrap();
            }
        }
        return Ok(EXIT_DISTINCT);
    }
    match isomorphism_search(&a.algebra, &b.algebra) {
        Ok(f) => {
            writeln!(out, "isomorphism {} -> {}:", a.label, b.label).unwrap();
            write_witness(&f, &a.algebra, &b.algebra, out);
            Ok(EXIT_OK)
        }
        Err(EquivalenceError::NotFoundOverField) => {
            writeln!(
                out,
                "no isomorphism over F_{}; inconclusive over field extensions",
                a.algebra.spec().order()
            )
            .unwrap();
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(e) => {
            writeln!(out, "{e} (raise RESUPAL_BOUND to search larger groups)").unwrap();
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn write_witness(f: &GradedMap, a: &SuperAlgebra, b: &SuperAlgebra, out: &mut String) {
    for i in 0..a.dim() {
        let img = f.apply(&a.basis_vector(i));
        writeln!(out, "  f({}) = {}", a.name(i), format_vector(b.names(), &img)).unwrap();
    }
}

// ---------------------------------------------------------------------------
// Golden reports

const DIM3_NAMES: [&str; 7] = [
    "L_{0|3}^1",
    "L_{1|2}^1",
    "L_{1|2}^2",
    "L_{1|2}^3",
    "L_{1|2}^4",
    "L_{2|1}^1",
    "L_{2|1}^2",
];

const DIM3_ALL: [&str; 9] = [
    "L_{0|3}^1",
    "L_{1|2}^1",
    "L_{1|2}^2",
    "L_{1|2}^3",
    "L_{1|2}^4",
    "L_{2|1}^1",
    "L_{2|1}^2",
    "L_{3|0}^1",
    "L_{3|0}^2",
];

const DIM4_ALL: [&str; 20] = [
    "L_{0|4}^1",
    "L_{1|3}^1",
    "L_{1|3}^2",
    "L_{1|3}^3",
    "L_{1|3}^4",
    "L_{1|3}^5",
    "L_{1|3}^6",
    "L_{2|2}^1",
    "L_{2|2}^2",
    "L_{2|2}^3",
    "L_{2|2}^4",
    "L_{2|2}^5",
    "L_{2|2}^6",
    "L_{2|2}^7",
    "L_{3|1}^1",
    "L_{3|1}^2",
    "L_{3|1}^3",
    "L_{3|1}^4",
    "L_{4|0}^1",
    "L_{4|0}^2",
];

/// Rows of the three dimension-4 invariant tables, by family.
const INVARIANT_FAMILIES: [(&str, &[&str]); 3] = [
    ("1|3", &["a", "b", "c", "e", "f", "j"]),
    ("2|2", &["a", "b", "c", "e", "f", "g", "h", "i", "j", "l"]),
    ("3|1", &["a", "b", "c", "d"]),
];

fn reproduce_invariants(p: u32, out: &mut String) -> Result<(), CliError> {
    for (family, letters) in INVARIANT_FAMILIES {
        writeln!(out, "# invariants of the ({family}) extensions at p = {p}").unwrap();
        let mut rows = Vec::new();
        for letter in letters {
            let name = format!("L_{{{family}}}^{letter}");
            let loaded = load_input(&format!("catalog:{name}"), Some(p), 1)?;
            rows.push(fingerprint_row(&name, &fingerprint(&loaded.algebra)));
        }
        out.push_str(&render_table(&FINGERPRINT_HEADER, &rows));
        out.push('\n');
    }
    Ok(())
}

fn reproduce_cocycles(p: u32, out: &mut String) -> Result<(), CliError> {
    writeln!(out, "# strict cocycle orbits of the dimension-3 algebras at p = {p}").unwrap();
    for name in DIM3_NAMES {
        let loaded = load_input(&format!("catalog:{name}"), Some(p), 1)?;
        let alg = &loaded.algebra;
        let module = CoeffModule::trivial_scalar(alg);
        let part = cocycle_orbits_strict(alg)
            .map_err(|e| domain_err(format!("{name}: {e}")))?;
        writeln!(out, "{name}: {} orbits", part.orbits.len()).unwrap();
        for o in &part.orbits {
            let rep = Cochain::from_coeffs(2, o.canonical.clone());
            writeln!(
                out,
                "  size {:>3}  {}",
                o.members.len(),
                describe_cochain(alg, &module, &rep)
            )
            .unwrap();
        }
    }
    Ok(())
}

fn reproduce_classification(names: &[&str], ps: &[u32], out: &mut String) -> Result<(), CliError> {
    for name in names {
        let mut lines: Vec<String> = Vec::new();
        let mut verified = true;
        let mut pmap_lines: Vec<String> = Vec::new();
        for (pi, &p) in ps.iter().enumerate() {
            let loaded = load_input(&format!("catalog:{name}"), Some(p), 1)?;
            verified &= check_axioms(&loaded.algebra).is_valid();
            for pm in &loaded.pmaps {
                verified &= check_pmap_axioms(pm).is_valid();
                let r = RestrictedAlgebra {
                    algebra: loaded.algebra.clone(),
                    pmap: pm.clone(),
                };
                verified &= is_p_nilpotent(&r);
            }
            if pi == 0 {
                lines = loaded.algebra.describe_brackets();
                pmap_lines = loaded
                    .pmaps
                    .iter()
                    .enumerate()
                    .map(|(i, pm)| format!("  map {}: {}", i + 1, pm.describe().join("; ")))
                    .collect();
            }
        }
        let brackets = if lines.is_empty() { "abelian".to_string() } else { lines.join("; ") };
        writeln!(out, "{name}: {brackets}").unwrap();
        for l in &pmap_lines {
            writeln!(out, "{l}").unwrap();
        }
        let plist: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        writeln!(
            out,
            "  verified at p = {}: {}",
            plist.join(","),
            if verified { "yes" } else { "NO" }
        )
        .unwrap();
    }
    Ok(())
}

fn reproduce_pmap4(p: u32, out: &mut String) -> Result<(), CliError> {
    writeln!(out, "# p|2p-structures on the dimension-4 algebras at p = {p}").unwrap();
    for name in DIM4_ALL {
        let loaded = load_input(&format!("catalog:{name}"), Some(p), 1)?;
        if loaded.pmaps.is_empty() {
            writeln!(out, "{name}: deferred (purely even)").unwrap();
            continue;
        }
        let maps = enumerate_pmaps(&loaded.algebra).map_err(|e| domain_err(e.to_string()))?;
        let nilpotent = nilpotent_subset(&loaded.algebra, maps);
        let classes = pmap_classes(&loaded.algebra, &nilpotent)?;
        let hit = loaded.pmaps.iter().all(|pm| {
            let rp = RestrictedAlgebra { algebra: loaded.algebra.clone(), pmap: pm.clone() };
            classes.iter().any(|class| {
                let rc = RestrictedAlgebra {
                    algebra: loaded.algebra.clone(),
                    pmap: nilpotent[class[0]].clone(),
                };
                restricted_isomorphism_search(&rp, &rc).is_ok()
            })
        });
        let classes_hit_recorded = classes.iter().all(|class| {
            let rc = RestrictedAlgebra {
                algebra: loaded.algebra.clone(),
                pmap: nilpotent[class[0]].clone(),
            };
            loaded.pmaps.iter().any(|pm| {
                let rp = RestrictedAlgebra { algebra: loaded.algebra.clone(), pmap: pm.clone() };
                restricted_isomorphism_search(&rp, &rc).is_ok()
            })
        });
        writeln!(
            out,
            "{name}: {} p-nilpotent maps, {} classes, recorded list complete and non-redundant: {}",
            nilpotent.len(),
            classes.len(),
            if hit && classes_hit_recorded && loaded.pmaps.len() == classes.len() {
                "yes"
            } else {
                "NO"
            }
        )
        .unwrap();
        for (i, class) in classes.iter().enumerate() {
            writeln!(out, "  class {}: {}", i + 1, nilpotent[class[0]].describe().join("; "))
                .unwrap();
        }
    }
    Ok(())
}

fn reproduce_k_families(ps: &[u32], out: &mut String) -> Result<(), CliError> {
    writeln!(out, "# K(s,m) family restrictedness").unwrap();
    for &p in ps {
        let spec = FieldSpec::prime(p).map_err(|e| parse_err(e.to_string()))?;
        for s in 2..=4u32 {
            for m in 1..=7u32 {
                if s == 4 && m % 2 == 1 && m != 5 {
                    continue;
                }
                let alg = Arc::new(
                    build_k(s, m, spec).map_err(|e| domain_err(e.to_string()))?,
                );
                let maps = enumerate_pmaps(&alg).map_err(|e| domain_err(e.to_string()))?;
                let nil = nilindex(&alg)
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "-".to_string());
                if maps.is_empty() {
                    writeln!(out, "K^{{{s},{m}}} p={p}: not restrictable, nilindex {nil}")
                        .unwrap();
                } else {
                    writeln!(
                        out,
                        "K^{{{s},{m}}} p={p}: {} p-maps, x0^[p] = {}, nilindex {nil}",
                        maps.len(),
                        format_vector(alg.names(), maps[0].value(0)),
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproTable {
    All,
    Invariants,
    Cocycles,
    Classif3,
    Classif4,
    Pmap4,
    KFamilies,
}

impl ReproTable {
    pub fn parse(s: &str) -> Result<ReproTable, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(ReproTable::All),
            "invariants" => Ok(ReproTable::Invariants),
            "cocycles" => Ok(ReproTable::Cocycles),
            "classif3" => Ok(ReproTable::Classif3),
            "classif4" => Ok(ReproTable::Classif4),
            "pmap4" => Ok(ReproTable::Pmap4),
            "k-families" | "kfamilies" | "k_families" => Ok(ReproTable::KFamilies),
            other => Err(parse_err(format!("unknown table {other:?}"))),
        }
    }
}

/// Emits the requested golden reports as (filename, content) pairs.
pub fn reproduce_reports(
    table: ReproTable,
    ps: &[u32],
) -> Result<Vec<(String, String)>, CliError> {
    let all = table == ReproTable::All;
    let mut reports = Vec::new();
    if all || table == ReproTable::Invariants {
        for &p in ps {
            let mut s = String::new();
            reproduce_invariants(p, &mut s)?;
            reports.push((format!("invariants_p{p}.txt"), s));
        }
    }
    if all || table == ReproTable::Cocycles {
        for &p in ps {
            let mut s = String::new();
            reproduce_cocycles(p, &mut s)?;
            reports.push((format!("cocycles_p{p}.txt"), s));
        }
    }
    if all || table == ReproTable::Classif3 {
        let mut s = String::new();
        writeln!(s, "# dimension-3 classification with p-maps").unwrap();
        reproduce_classification(&DIM3_ALL, ps, &mut s)?;
        reports.push(("classif3.txt".to_string(), s));
    }
    if all || table == ReproTable::Classif4 {
        let mut s = String::new();
        writeln!(s, "# dimension-4 classification with p-maps").unwrap();
        reproduce_classification(&DIM4_ALL, ps, &mut s)?;
        reports.push(("classif4.txt".to_string(), s));
    }
    if all || table == ReproTable::Pmap4 {
        for &p in ps {
            let mut s = String::new();
            reproduce_pmap4(p, &mut s)?;
            reports.push((format!("pmap4_p{p}.txt"), s));
        }
    }
    if all || table == ReproTable::KFamilies {
        let mut s = String::new();
        reproduce_k_families(ps, &mut s)?;
        reports.push(("k_families.txt".to_string(), s));
    }
    Ok(reports)
}

/// Writes reports to `out_dir` (if given) or concatenates them to `out`.
pub fn cmd_reproduce(
    table: &str,
    ps: &[u32],
    out_dir: Option<&str>,
    out: &mut String,
) -> Result<i32, CliError> {
    let table = ReproTable::parse(table)?;
    let reports = reproduce_reports(table, ps)?;
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| domain_err(format!("cannot create {dir}: {e}")))?;
            for (name, content) in &reports {
                let path = std::path::Path::new(dir).join(name);
                std::fs::write(&path, content)
                    .map_err(|e| domain_err(format!("cannot write {}: {e}", path.display())))?;
                writeln!(out, "wrote {}", path.display()).unwrap();
            }
        }
        None => {
            for (name, content) in &reports {
                writeln!(out, "== {name} ==").unwrap();
                out.push_str(content);
            }
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;

    fn write_tmp(name: &str, content: &str) -> String {
        let dir = std::env::temp_dir().join("resupal-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, content).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn file_round_trip_preserves_the_algebra() {
        for name in ["L_{1|2}^4", "L_{2|2}^3", "L_{3|1}^4", "K^{3,4}"] {
            let entry = catalog_get(name, 5).unwrap();
            let file = algebra_to_file(&entry.algebra, None);
            let path = write_tmp(&format!("rt_{}.json", name.replace(['{', '}', '|', '^'], "_")), &emit_file(&file));
            let loaded = load_input(&path, None, 1).unwrap();
            assert_eq!(loaded.algebra.names(), entry.algebra.names());
            assert_eq!(loaded.algebra.sdim(), entry.algebra.sdim());
            for i in 0..entry.algebra.dim() {
                for j in 0..entry.algebra.dim() {
                    assert_eq!(
                        loaded.algebra.bracket_basis(i, j),
                        entry.algebra.bracket_basis(i, j),
                        "{name} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn pmap_round_trips_through_the_file_format() {
        let entry = catalog_get("L_{2|2}^5", 3).unwrap();
        let pm = &entry.pmaps.as_ref().unwrap()[1];
        let file = algebra_to_file(&entry.algebra, Some(pm));
        let path = write_tmp("rt_pmap.json", &emit_file(&file));
        let loaded = load_input(&path, None, 1).unwrap();
        assert_eq!(loaded.pmaps.len(), 1);
        assert_eq!(loaded.pmaps[0].values(), pm.values());
    }

    #[test]
    fn rational_coefficients_resolve_per_prime() {
        let text = r#"{
            "p": 5,
            "even": ["a"],
            "odd": ["u", "v"],
            "brackets": [
                {"left": "u", "right": "v", "value": {"a": {"num": 1, "den": 2}}}
            ]
        }"#;
        let path = write_tmp("ratio.json", text);
        let at5 = load_input(&path, None, 1).unwrap();
        assert_eq!(at5.algebra.bracket_basis(1, 2)[0], at5.algebra.spec().from_int(3));
        let at7 = load_input(&path, Some(7), 1).unwrap();
        assert_eq!(at7.algebra.bracket_basis(1, 2)[0], at7.algebra.spec().from_int(4));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let path = write_tmp("bad.json", "{ not json");
        let err = load_input(&path, None, 1).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_PARSE);
    }

    #[test]
    fn inconsistent_double_listing_is_a_load_error() {
        let text = r#"{
            "p": 3,
            "even": ["a", "b", "c"],
            "brackets": [
                {"left": "a", "right": "b", "value": {"c": 1}},
                {"left": "b", "right": "a", "value": {"c": 1}}
            ]
        }"#;
        let path = write_tmp("double.json", text);
        let err = load_input(&path, None, 1).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_PARSE);
        assert!(err.to_string().contains("inconsistent"), "{err}");
    }

    #[test]
    fn even_self_bracket_fails_axioms_not_parsing() {
        let text = r#"{
            "p": 3,
            "even": ["e1", "e2"],
            "brackets": [
                {"left": "e1", "right": "e1", "value": {"e2": 1}}
            ]
        }"#;
        let path = write_tmp("selfbracket.json", text);
        let mut out = String::new();
        let code = cmd_check(&path, None, 1, &mut out).unwrap();
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("antisym"), "{out}");
    }

    #[test]
    fn check_passes_on_catalog_entries() {
        for name in ["L_{1|2}^4", "L_{2|2}^5", "L_{3|1}^2"] {
            let mut out = String::new();
            let code = cmd_check(&format!("catalog:{name}"), Some(3), 1, &mut out).unwrap();
            assert_eq!(code, EXIT_OK, "{name}: {out}");
            assert!(out.contains("axioms hold"));
        }
    }

    #[test]
    fn invariants_row_matches_the_recorded_h2() {
        let mut out = String::new();
        cmd_invariants("catalog:L_{2|2}^a", &[3, 5, 7, 11], 1, &mut out).unwrap();
        for line in out.lines().skip(1) {
            assert!(line.contains("4|4"), "H2 column: {line}");
        }
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn cohomology_worked_example_dims() {
        let mut out = String::new();
        let opts = CohomologyOpts {
            degree: 2,
            coeff: CoeffKind::Adjoint,
            restricted: true,
            plus_even: false,
            pmap_index: 0,
        };
        cmd_cohomology("catalog:L_{1|2}^3", Some(5), 1, &opts, &mut out).unwrap();
        assert!(out.contains("dim Z2_CE = 8"), "{out}");
        assert!(out.contains("dim H2* = 5"), "{out}");
    }

    #[test]
    fn cohomology_trivial_degree2_on_the_odd_square_chain() {
        let mut out = String::new();
        let opts = CohomologyOpts {
            degree: 2,
            coeff: CoeffKind::Trivial,
            restricted: false,
            plus_even: false,
            pmap_index: 0,
        };
        cmd_cohomology("catalog:L_{2|1}^2", Some(5), 1, &opts, &mut out).unwrap();
        assert!(out.contains("dim H2 = 0|1"), "{out}");
        assert!(out.contains("D{1,3} (odd)"), "{out}");
    }

    #[test]
    fn extend_reproduces_the_catalog_extension_file() {
        let mut out = String::new();
        let code =
            cmd_extend("catalog:L_{1|2}^1", Some(3), 1, "D23", "X", &mut out).unwrap();
        assert_eq!(code, EXIT_OK);
        let want = emit_file(&algebra_to_file(
            &catalog_get("L_{2|2}^b", 3).unwrap().algebra,
            None,
        ));
        assert_eq!(out, want);
    }

    #[test]
    fn extend_of_zero_cocycle_is_a_direct_sum() {
        let mut out = String::new();
        cmd_extend("catalog:L_{1|2}^2", Some(3), 1, "0", "X", &mut out).unwrap();
        let path = write_tmp("directsum.json", &out);
        let loaded = load_input(&path, None, 1).unwrap();
        let x = loaded.algebra.names().iter().position(|n| n == "X").unwrap();
        for i in 0..loaded.algebra.dim() {
            for j in 0..loaded.algebra.dim() {
                assert!(loaded.algebra.bracket_basis(i, j)[x].is_zero());
            }
        }
    }

    #[test]
    fn extend_rejects_non_cocycles() {
        // with [x3,x3] = x2 the differential of D{2,3} on (x3,x3,x3) is
        // 3 D{2,3}(x2,x3), nonzero away from p = 3
        let mut out = String::new();
        let err = cmd_extend("catalog:L_{2|1}^2", Some(5), 1, "D23", "X", &mut out).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_FAIL);
        assert!(err.to_string().contains("cocycle"), "{err}");
    }

    #[test]
    fn emitted_extension_passes_check() {
        let mut out = String::new();
        cmd_extend("catalog:L_{1|2}^4", Some(5), 1, "D22", "X", &mut out).unwrap();
        let path = write_tmp("extcheck.json", &out);
        let mut check_out = String::new();
        assert_eq!(cmd_check(&path, None, 1, &mut check_out).unwrap(), EXIT_OK);
    }

    #[test]
    fn cocycle_parser_handles_sums_signs_and_braces() {
        let alg = catalog_get("L_{1|2}^1", 5).unwrap().algebra;
        let module = CoeffModule::trivial_scalar(&alg);
        let space = cochain_basis(&alg, &module, 2);
        let c = parse_cocycle(&alg, "2*D{2,2} - D23 + D_{1,2}").unwrap();
        let spec = alg.spec();
        assert_eq!(c.coeffs[space.index_of(&[], &[1, 1], 0).unwrap()], spec.from_int(2));
        assert_eq!(c.coeffs[space.index_of(&[], &[1, 2], 0).unwrap()], spec.from_int(-1));
        assert_eq!(c.coeffs[space.index_of(&[0], &[1], 0).unwrap()], spec.one());
        assert!(parse_cocycle(&alg, "D99").is_err());
        assert!(parse_cocycle(&alg, "Q12").is_err());
        assert!(parse_cocycle(&alg, "0").unwrap().is_zero());
    }

    #[test]
    fn pmaps_on_the_split_extension_reports_two_classes() {
        let mut out = String::new();
        cmd_pmaps("catalog:L_{2|2}^5", Some(3), 1, &mut out).unwrap();
        assert!(out.contains("p-maps (p-nilpotent): 3"), "{out}");
        assert!(out.contains("classes: 2"), "{out}");
        assert!(out.contains("x1^[p] = 0; x2^[p] = 0"), "{out}");
        assert!(out.contains("x1^[p] = x2; x2^[p] = 0"), "{out}");
    }

    #[test]
    fn orbit_tables_cover_the_class_space() {
        let mut out = String::new();
        cmd_orbits("catalog:L_{1|2}^4", Some(3), 1, false, &mut out).unwrap();
        assert!(out.starts_with("H2 classes: 27, orbits: "), "{out}");
        let mut strict = String::new();
        cmd_orbits("catalog:L_{1|2}^4", Some(3), 1, true, &mut strict).unwrap();
        assert!(strict.contains("Z2 cocycles: 81"), "{strict}");
    }

    #[test]
    fn isomorphic_exit_codes_follow_the_contract() {
        let mut out = String::new();
        let code = cmd_isomorphic(
            "catalog:L_{2|2}^f",
            "catalog:L_{2|2}^j",
            Some(3),
            1,
            &mut out,
        )
        .unwrap();
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("isomorphism"));

        let mut out3 = String::new();
        let code3 = cmd_isomorphic(
            "catalog:L_{2|2}^a",
            "catalog:L_{2|2}^b",
            Some(3),
            1,
            &mut out3,
        )
        .unwrap();
        assert_eq!(code3, EXIT_DISTINCT, "{out3}");
        assert!(out3.contains("not isomorphic"));
    }

    #[test]
    fn isomorphic_inconclusive_when_only_the_field_separates() {
        // same fingerprints, isomorphic only over a quadratic extension:
        // scale the odd square by a non-residue
        let spec = FieldSpec::prime(3).unwrap();
        let one = spec.one();
        let mk = |c: Fq| {
            let mut v = vec![spec.zero(); 3];
            v[0] = c;
            emit_file(&algebra_to_file(
                &SuperAlgebra::from_brackets(
                    spec,
                    1,
                    2,
                    vec!["e1".into(), "e2".into(), "e3".into()],
                    &[(1, 1, v.clone()), (2, 2, {
                        let mut w = vec![spec.zero(); 3];
                        w[0] = one;
                        w
                    })],
                )
                .unwrap(),
                None,
            ))
        };
        let a = write_tmp("res_a.json", &mk(one));
        let b = write_tmp("res_b.json", &mk(-one));
        let mut out = String::new();
        let code = cmd_isomorphic(&a, &b, None, 1, &mut out).unwrap();
        assert_eq!(code, EXIT_INCONCLUSIVE, "{out}");
        assert!(out.contains("inconclusive"), "{out}");
    }

    #[test]
    fn reproduce_is_byte_stable() {
        let r1 = reproduce_reports(ReproTable::Cocycles, &[3]).unwrap();
        let r2 = reproduce_reports(ReproTable::Cocycles, &[3]).unwrap();
        assert_eq!(r1, r2);
        let k1 = reproduce_reports(ReproTable::KFamilies, &[3]).unwrap();
        let k2 = reproduce_reports(ReproTable::KFamilies, &[3]).unwrap();
        assert_eq!(k1, k2);
    }

    #[test]
    fn reproduce_k_families_verdicts() {
        let reports = reproduce_reports(ReproTable::KFamilies, &[3, 5]).unwrap();
        let text = &reports[0].1;
        assert!(text.contains("K^{2,3} p=3:") && !text.contains("K^{2,3} p=3: not"), "{text}");
        assert!(text.contains("K^{2,4} p=3: not restrictable"), "{text}");
        assert!(text.contains("K^{2,4} p=5:") && text.contains("K^{3,3} p=3:"), "{text}");
        assert!(text.contains("K^{4,5} p=3: ") && !text.contains("K^{4,5} p=3: not"), "{text}");
    }

    #[test]
    fn reproduce_classif3_verifies_everything() {
        let reports = reproduce_reports(ReproTable::Classif3, &[3, 5, 7]).unwrap();
        let text = &reports[0].1;
        assert!(!text.contains(": NO"), "{text}");
        assert_eq!(text.matches("verified at p = 3,5,7: yes").count(), 9, "{text}");
    }

    #[test]
    fn field_degree_two_files_load_quadratic_coefficients() {
        let text = r#"{
            "p": 3,
            "field_degree": 2,
            "even": ["a"],
            "odd": ["u", "v"],
            "brackets": [
                {"left": "u", "right": "v", "value": {"a": [1, 2]}}
            ]
        }"#;
        let path = write_tmp("f9.json", text);
        let loaded = load_input(&path, None, 1).unwrap();
        let spec = loaded.algebra.spec();
        assert_eq!(spec.order(), 9);
        let want = spec.one() + spec.from_int(2) * spec.gen();
        assert_eq!(loaded.algebra.bracket_basis(1, 2)[0], want);
    }
}
