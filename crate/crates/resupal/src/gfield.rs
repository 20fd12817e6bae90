//! Exact arithmetic in `F_p` and `F_{p^2}` for odd primes `p`.
//!
//! Elements carry their field spec, so mixed-field operations are detected
//! at runtime. Residues are canonical least non-negative representatives;
//! the quadratic extension uses the lexicographically smallest irreducible
//! monic modulus `x^2 + bx + c` (scanning `(b, c)`), which is `x^2 + 1`
//! whenever `p ≡ 3 (mod 4)`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotPrime(u32),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} vanishes in characteristic {1}")]
    BadDenominator(i64, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u32,
    degree: u8,
    // Modulus x^2 + bx + c as (b, c); (0, 0) when degree = 1.
    modulus: (u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    spec: FieldSpec,
    // c[0] + c[1]*x, both in [0, p); c[1] = 0 when degree = 1.
    c: [u32; 2],
}

fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec { p, degree: 1, modulus: (0, 0) })
    }

    /// The quadratic extension `F_{p^2}` with the canonical modulus.
    pub fn quadratic(p: u32) -> Result<Self, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let modulus = canonical_modulus(p);
        Ok(FieldSpec { p, degree: 2, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree as u32)
    }

    /// Modulus coefficients `(b, c)` of `x^2 + bx + c`, if degree 2.
    pub fn modulus(&self) -> Option<(u32, u32)> {
        (self.degree == 2).then_some(self.modulus)
    }

    pub fn zero(&self) -> Fq {
        Fq { spec: *self, c: [0, 0] }
    }

    pub fn one(&self) -> Fq {
        Fq { spec: *self, c: [1, 0] }
    }

    pub fn from_int(&self, n: i64) -> Fq {
        Fq { spec: *self, c: [n.rem_euclid(self.p as i64) as u32, 0] }
    }

    /// `num/den` as a field element; den must be a unit mod p.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Fq, FieldError> {
        let d = self.from_int(den);
        if d.is_zero() {
            return Err(FieldError::BadDenominator(den, self.p));
        }
        Ok(self.from_int(num) * d.inv().expect("nonzero"))
    }

    /// Element `c0 + c1*x`; `c1` is ignored for degree 1.
    pub fn elem(&self, c0: i64, c1: i64) -> Fq {
        let p = self.p as i64;
        let c1 = if self.degree == 2 { c1.rem_euclid(p) as u32 } else { 0 };
        Fq { spec: *self, c: [c0.rem_euclid(p) as u32, c1] }
    }

    /// The adjoined root `x` (degree 2 only; zero in the prime field).
    pub fn gen(&self) -> Fq {
        self.elem(0, 1)
    }
}

/// Lexicographically smallest `(b, c)` with `x^2 + bx + c` irreducible,
/// checked by exhaustive root evaluation.
fn canonical_modulus(p: u32) -> (u32, u32) {
    for b in 0..p {
        for c in 0..p {
            let has_root = (0..p).any(|t| (t * t + b * t + c) % p == 0);
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every F_p admits an irreducible quadratic");
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic guarding against mixed fields and zero division.
pub fn field_arith(a: Fq, b: Fq, op: ArithOp) -> Result<Fq, FieldError> {
    if a.spec != b.spec {
        return Err(FieldError::MixedFields);
    }
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => {
            let inv = b.inv()?;
            Ok(a * inv)
        }
    }
}

/// Uniformly random element, for seeded sampling in property checks.
pub fn random_element<R: rand::Rng>(spec: FieldSpec, rng: &mut R) -> Fq {
    let p = spec.characteristic() as i64;
    let c1 = if spec.degree() == 2 { rng.gen_range(0..p) } else { 0 };
    spec.elem(rng.gen_range(0..p), c1)
}

/// All field elements in lexicographic coefficient order.
pub fn enumerate_field(spec: FieldSpec) -> Vec<Fq> {
    let p = spec.p as i64;
    let mut out = Vec::with_capacity(spec.order() as usize);
    if spec.degree == 1 {
        for c0 in 0..p {
            out.push(spec.elem(c0, 0));
        }
    } else {
        for c0 in 0..p {
            for c1 in 0..p {
                out.push(spec.elem(c0, c1));
            }
        }
    }
    out
}

impl Fq {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0]
    }

    pub fn is_one(&self) -> bool {
        self.c == [1, 0]
    }

    /// Coefficients `(c0, c1)` of `c0 + c1*x`.
    pub fn coeffs(&self) -> (u32, u32) {
        (self.c[0], self.c[1])
    }

    /// Multiplicative inverse via extended Euclid on the norm.
    pub fn inv(&self) -> Result<Fq, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.spec.p as i64;
        if self.c[1] == 0 {
            return Ok(Fq { spec: self.spec, c: [inv_mod(self.c[0] as i64, p) as u32, 0] });
        }
        // For a = c0 + c1*x, the conjugate ā = (c0 - c1*b) - c1*x satisfies
        // a*ā = c0² - c0*c1*b + c1²*c, a scalar (the norm).
        let (b, cm) = (self.spec.modulus.0 as i64, self.spec.modulus.1 as i64);
        let (c0, c1) = (self.c[0] as i64, self.c[1] as i64);
        let norm = (c0 * c0 - c0 * c1 * b + c1 * c1 * cm).rem_euclid(p);
        let ninv = inv_mod(norm, p);
        let conj0 = (c0 - c1 * b).rem_euclid(p);
        let conj1 = (-c1).rem_euclid(p);
        Ok(Fq { spec: self.spec, c: [(conj0 * ninv % p) as u32, (conj1 * ninv % p) as u32] })
    }

    /// `a^p`: identity on `F_p`, the order-2 automorphism on `F_{p^2}`
    /// (sends the adjoined root to its conjugate `-b - x`).
    pub fn frobenius(&self) -> Fq {
        if self.spec.degree == 1 || self.c[1] == 0 {
            return *self;
        }
        let p = self.spec.p as i64;
        let b = self.spec.modulus.0 as i64;
        let (c0, c1) = (self.c[0] as i64, self.c[1] as i64);
        Fq {
            spec: self.spec,
            c: [(c0 - c1 * b).rem_euclid(p) as u32, (-c1).rem_euclid(p) as u32],
        }
    }

    /// Square root with deterministic choice: the root whose coefficient
    /// tuple is lexicographically smallest, or `None` if `a` is a non-square.
    pub fn sqrt(&self) -> Option<Fq> {
        enumerate_field(self.spec).into_iter().find(|r| *r * *r == *self)
    }

    pub fn pow(&self, mut n: u64) -> Fq {
        let mut base = *self;
        let mut acc = self.spec.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

/// Inverse of `a` mod `p` by extended Euclid; `a` must be a unit.
fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut r0, mut r1) = (p, a.rem_euclid(p));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inv_mod of a non-unit");
    t0.rem_euclid(p)
}

impl std::ops::Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.spec, rhs.spec);
        let p = self.spec.p;
        Fq { spec: self.spec, c: [(self.c[0] + rhs.c[0]) % p, (self.c[1] + rhs.c[1]) % p] }
    }
}

impl std::ops::Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.spec, rhs.spec);
        let p = self.spec.p;
        Fq {
            spec: self.spec,
            c: [(self.c[0] + p - rhs.c[0]) % p, (self.c[1] + p - rhs.c[1]) % p],
        }
    }
}

impl std::ops::Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        let p = self.spec.p;
        Fq { spec: self.spec, c: [(p - self.c[0]) % p, (p - self.c[1]) % p] }
    }
}

impl std::ops::Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.spec, rhs.spec);
        let p = self.spec.p as u64;
        let [a0, a1] = self.c.map(u64::from);
        let [b0, b1] = rhs.c.map(u64::from);
        if self.spec.degree == 1 {
            return Fq { spec: self.spec, c: [(a0 * b0 % p) as u32, 0] };
        }
        // (a0 + a1 x)(b0 + b1 x) with x² = -bx - c.
        let (mb, mc) = (self.spec.modulus.0 as u64, self.spec.modulus.1 as u64);
        let e0 = a0 * b0 % p;
        let e1 = (a0 * b1 + a1 * b0) % p;
        let e2 = a1 * b1 % p;
        let r0 = (e0 + e2 * (p - mc % p)) % p;
        let r1 = (e1 + e2 * (p - mb % p)) % p;
        Fq { spec: self.spec, c: [r0 as u32, r1 as u32] }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c0, c1) = (self.c[0], self.c[1]);
        match (c0, c1) {
            (_, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "x"),
            (0, _) => write!(f, "{c1}x"),
            (_, 1) => write!(f, "{c0}+x"),
            _ => write!(f, "{c0}+{c1}x"),
        }
    }
}
