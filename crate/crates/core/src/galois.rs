//! Finite fields GF(p^m) with table-driven arithmetic, subfield embeddings,
//! traces and the quadratic extension GF(q²)/GF(q) with a normal basis.
//!
//! Elements are handled as raw `u16` encodings `e = Σ c_i·p^i`, where
//! `c_0 + c_1·x + …` is the polynomial-basis representative. Every table is
//! built once per field, so arithmetic on encodings is a handful of lookups.
//! [`GfElement`] wraps an encoding together with its field for checked use.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characteristics accepted by [`FieldSpec::new`].
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Largest field order that gets tables. Covers GF(q²) for q ≤ 49 and the
/// splitting fields needed by the BCH tables (GF(2^10) at most).
pub const MAX_FIELD_ORDER: u32 = 2401;

/// Largest base field GF(q) usable as the qudit alphabet.
pub const MAX_BASE_ORDER: u32 = 49;

const ADD_TABLE_LIMIT: u32 = 1024;

/// A finite field GF(p^m) given by a monic irreducible modulus over GF(p).
pub struct FieldSpec {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    primitive: u16,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus={:?})", self.p, self.m, self.modulus)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut e: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = e % p;
        e /= p;
    }
    out
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The irreducible monic polynomial of degree `m` over GF(p) whose
/// coefficient list, read as a base-p integer, is smallest.
pub fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    (0..p.pow(m))
        .map(|low| {
            let mut poly = digits(low, p, m as usize);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(p, poly))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(p^m). With `modulus = None` the smallest irreducible monic
    /// polynomial of degree `m` is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} unsupported (expected one of 2, 3, 5, 7)"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let order = p
            .checked_pow(m)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::InvalidField(format!(
                    "GF({p}^{m}) exceeds the supported order {MAX_FIELD_ORDER}"
                ))
            })?;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {} but the field needs degree {m}",
                        c.len().saturating_sub(1)
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidField("modulus coefficient out of range".into()));
                }
                if c[m as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                if !is_irreducible(p, c) {
                    return Err(Error::InvalidField(format!(
                        "modulus {c:?} is reducible over GF({p})"
                    )));
                }
                c.to_vec()
            }
            None => smallest_irreducible(p, m),
        };
        Ok(Arc::new(Self::build(p, m, order, modulus)))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Arc<FieldSpec>> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, m: u32, order: u32, modulus: Vec<u32>) -> FieldSpec {
        let len = m as usize;
        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, len);
            let db = digits(b, p, len);
            let mut prod = vec![0u32; 2 * len - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            pack(&poly_rem(&prod, &modulus, p), p)
        };

        let group = order - 1;
        let mut primitive = 1;
        for g in 1..order {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow_mul(x, g);
                k += 1;
            }
            if k == group {
                primitive = g;
                break;
            }
        }

        let mut exp = vec![0u16; 2 * group as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut x = 1u32;
        for i in 0..group {
            exp[i as usize] = x as u16;
            exp[(i + group) as usize] = x as u16;
            log[x as usize] = i;
            x = slow_mul(x, primitive);
        }

        let slow_add = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, len);
            let db = digits(b, p, len);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            pack(&s, p)
        };
        let neg = (0..order)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, len).iter().map(|&c| (p - c) % p).collect();
                pack(&d, p) as u16
            })
            .collect();
        let add = if p != 2 && order <= ADD_TABLE_LIMIT {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = slow_add(a, b) as u16;
                }
            }
            t
        } else {
            Vec::new()
        };

        FieldSpec {
            p,
            m,
            order,
            modulus,
            exp,
            log,
            add,
            neg,
            primitive: primitive as u16,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements q = p^m.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The generator of the log/antilog tables (smallest primitive encoding).
    pub fn primitive_element(&self) -> u16 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            a ^ b
        } else if !self.add.is_empty() {
            self.add[a as usize * self.order as usize + b as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, mut a: u16, mut b: u16) -> u16 {
        let p = self.p as u16;
        let mut out = 0u16;
        let mut place = 1u16;
        while a != 0 || b != 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        let group = self.order - 1;
        Some(self.exp[((group - self.log[a as usize]) % group) as usize])
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = (self.order - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % group)) % group) as usize]
    }

    /// Discrete logarithm to the base of [`Self::primitive_element`].
    pub fn log(&self, a: u16) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, k: u64) -> u16 {
        self.exp[(k % (self.order as u64 - 1)) as usize]
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: u16) -> u16 {
        self.pow(a, self.p as u64)
    }

    /// Absolute trace tr_{q/p}(x) = Σ x^{p^i}; the result is a prime-field
    /// encoding in `0..p`.
    pub fn trace(&self, a: u16) -> u16 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.m {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// Coefficients of an element in the polynomial basis.
    pub fn coefficients(&self, a: u16) -> Vec<u32> {
        digits(a as u32, self.p, self.m as usize)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Result<u16> {
        if c.len() != self.m as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "coefficient vector {c:?} does not describe an element of GF({}^{})",
                self.p, self.m
            )));
        }
        Ok(pack(c, self.p) as u16)
    }

    pub fn contains(&self, a: u16) -> bool {
        (a as u32) < self.order
    }

    pub fn element(self: &Arc<Self>, value: u16) -> Result<GfElement> {
        if !self.contains(value) {
            return Err(Error::InvalidParameters(format!(
                "{value} is not an element encoding of GF({})",
                self.order
            )));
        }
        Ok(GfElement {
            field: Arc::clone(self),
            value,
        })
    }

    /// Evaluates a polynomial with prime-field coefficients at `x`.
    fn eval_prime_poly(&self, coeffs: &[u32], x: u16) -> u16 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c as u16))
    }
}

/// An element of a specific field.
#[derive(Clone)]
pub struct GfElement {
    field: Arc<FieldSpec>,
    value: u16,
}

impl fmt::Debug for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.order)
    }
}

impl PartialEq for GfElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for GfElement {}

impl GfElement {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Canonical integer encoding.
    pub fn encoding(&self) -> u16 {
        self.value
    }

    fn same(&self, other: &Self) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: u16) -> GfElement {
        GfElement {
            field: Arc::clone(&self.field),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<GfElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<GfElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<GfElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<GfElement> {
        self.field
            .inv(self.value)
            .map(|v| self.wrap(v))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> GfElement {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self) -> GfElement {
        self.wrap(self.field.frobenius(self.value))
    }

    /// Absolute trace, returned as an element of the same field lying in GF(p).
    pub fn trace(&self) -> GfElement {
        self.wrap(self.field.trace(self.value))
    }
}

/// An embedding of a subfield GF(p^a) into GF(p^b), a | b, sending the
/// polynomial generator of the small field to the smallest-encoding root of
/// its modulus in the big field.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    forward: Vec<u16>,
    backward: Vec<u16>,
}

const NOT_IN_SUBFIELD: u16 = u16::MAX;

impl FieldEmbedding {
    pub fn new(small: &FieldSpec, big: &FieldSpec) -> Result<Self> {
        if small.p != big.p || big.m % small.m != 0 {
            return Err(Error::Incompatible(format!(
                "GF({}^{}) is not a subfield of GF({}^{})",
                small.p, small.m, big.p, big.m
            )));
        }
        let root = (0..big.order as u16)
            .find(|&x| big.eval_prime_poly(&small.modulus, x) == 0)
            .ok_or_else(|| Error::Invariant("subfield modulus has no root".into()))?;
        let mut powers = Vec::with_capacity(small.m as usize);
        let mut acc = 1u16;
        for _ in 0..small.m {
            powers.push(acc);
            acc = big.mul(acc, root);
        }
        let mut backward = vec![NOT_IN_SUBFIELD; big.order as usize];
        let forward: Vec<u16> = (0..small.order as u16)
            .map(|a| {
                small
                    .coefficients(a)
                    .iter()
                    .zip(&powers)
                    .fold(0, |s, (&c, &pw)| big.add(s, big.mul(c as u16, pw)))
            })
            .collect();
        for (a, &img) in forward.iter().enumerate() {
            backward[img as usize] = a as u16;
        }
        Ok(FieldEmbedding { forward, backward })
    }

    #[inline]
    pub fn embed(&self, a: u16) -> u16 {
        self.forward[a as usize]
    }

    /// Inverse of [`Self::embed`] on the image; `None` outside the subfield.
    #[inline]
    pub fn project(&self, b: u16) -> Option<u16> {
        let v = self.backward[b as usize];
        (v != NOT_IN_SUBFIELD).then_some(v)
    }
}

/// GF(q) together with GF(q²), an embedding of the former into the latter,
/// and β such that {β, β^q} is a normal basis of GF(q²) over GF(q).
#[derive(Debug)]
pub struct ExtensionPair {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    embedding: FieldEmbedding,
    beta: u16,
    beta_q: u16,
    alt_scale: u16,
    normal_coords: Vec<(u16, u16)>,
}

impl PartialEq for ExtensionPair {
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && *self.ext == *other.ext
    }
}

impl Eq for ExtensionPair {}

/// Picks β for GF(q²) over `base`, building GF(q²) from its default modulus.
pub fn normal_basis_pick(base: &Arc<FieldSpec>) -> Result<Arc<ExtensionPair>> {
    let ext = FieldSpec::new(base.p, 2 * base.m, None)?;
    ExtensionPair::new(base, &ext)
}

impl ExtensionPair {
    pub fn new(base: &Arc<FieldSpec>, ext: &Arc<FieldSpec>) -> Result<Arc<ExtensionPair>> {
        if base.order > MAX_BASE_ORDER {
            return Err(Error::InvalidField(format!(
                "base field GF({}) exceeds the supported q ≤ {MAX_BASE_ORDER}",
                base.order
            )));
        }
        if ext.p != base.p || ext.m != 2 * base.m {
            return Err(Error::Incompatible(format!(
                "GF({}) is not the quadratic extension of GF({})",
                ext.order, base.order
            )));
        }
        let embedding = FieldEmbedding::new(base, ext)?;
        let q = base.order as u64;
        let subfield: Vec<u16> = (0..base.order as u16).map(|a| embedding.embed(a)).collect();
        let beta = (1..ext.order as u16)
            .find(|&b| {
                let bq = ext.pow(b, q);
                !subfield.iter().any(|&l| ext.mul(l, b) == bq)
            })
            .ok_or_else(|| Error::Invariant("no normal basis element found".into()))?;
        let beta_q = ext.pow(beta, q);
        let denom = ext.sub(ext.mul(beta, beta), ext.mul(beta_q, beta_q));
        let alt_scale = ext
            .inv(denom)
            .ok_or_else(|| Error::Invariant("β² = β^{2q}".into()))?;
        let mut normal_coords = vec![(0u16, 0u16); ext.order as usize];
        for a in 0..base.order as u16 {
            for b in 0..base.order as u16 {
                let x = ext.add(
                    ext.mul(embedding.embed(a), beta),
                    ext.mul(embedding.embed(b), beta_q),
                );
                normal_coords[x as usize] = (a, b);
            }
        }
        Ok(Arc::new(ExtensionPair {
            base: Arc::clone(base),
            ext: Arc::clone(ext),
            embedding,
            beta,
            beta_q,
            alt_scale,
            normal_coords,
        }))
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    /// q, the order of the base field.
    pub fn q(&self) -> u32 {
        self.base.order
    }

    pub fn beta(&self) -> u16 {
        self.beta
    }

    pub fn beta_q(&self) -> u16 {
        self.beta_q
    }

    /// 1/(β² − β^{2q}), the scale of the trace-alternating form.
    pub fn alternating_scale(&self) -> u16 {
        self.alt_scale
    }

    pub fn embed(&self, a: u16) -> u16 {
        self.embedding.embed(a)
    }

    pub fn project(&self, b: u16) -> Option<u16> {
        self.embedding.project(b)
    }

    /// x ↦ x^q on GF(q²).
    #[inline]
    pub fn conjugate(&self, x: u16) -> u16 {
        self.ext.pow(x, self.base.order as u64)
    }

    /// (a, b) in GF(q)² with x = a·β + b·β^q.
    #[inline]
    pub fn normal_coordinates(&self, x: u16) -> (u16, u16) {
        self.normal_coords[x as usize]
    }

    /// a·β + b·β^q.
    #[inline]
    pub fn from_normal_coordinates(&self, a: u16, b: u16) -> u16 {
        let e = &self.ext;
        e.add(e.mul(self.embed(a), self.beta), e.mul(self.embed(b), self.beta_q))
    }
}
