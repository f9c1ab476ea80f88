//! Subsystem codes from classical codes, the classical source families
//! (Reed–Solomon, BCH, random codes with a prescribed radical), and the
//! exchange of information and gauge qudits.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codespace::{AdditiveCode, Ambient, CodeSpace, Form, Metric, Scalars};
use crate::distance::{min_weight, min_weight_difference, DistanceOptions, DistanceValue, WeightReport};
use crate::error::{Error, Result};
use crate::forms::{phi_code, phi_inv, phi_inv_code};
use crate::galois::{ExtensionPair, FieldEmbedding, FieldSpec, MAX_FIELD_ORDER};
use crate::gauge::SymplecticGram;
use crate::linalg::Matrix;

/// How a subsystem code was obtained; drives the exchange of K and R.
#[derive(Debug, Clone)]
pub enum Origin {
    /// Directly from X in the symplectic ambient.
    Additive,
    /// From X over GF(q²) with the trace-alternating form.
    Quadratic(AdditiveCode),
    /// From a GF(q²)-linear code C with the hermitian form.
    Hermitian(AdditiveCode),
    /// From X = C₁ × C₂.
    Euclidean(AdditiveCode, AdditiveCode),
}

impl Origin {
    pub fn name(&self) -> &'static str {
        match self {
            Origin::Additive => "additive",
            Origin::Quadratic(_) => "quadratic",
            Origin::Hermitian(_) => "hermitian",
            Origin::Euclidean(..) => "euclidean",
        }
    }
}

/// An [[n, k, r, d]]_q subsystem code with its defining codes
/// X, Y = X ∩ X^⊥s and Y^⊥s, all in the symplectic ambient over GF(q).
#[derive(Debug, Clone)]
pub struct SubsystemCode {
    pub(crate) n: usize,
    pub(crate) base: Arc<FieldSpec>,
    pub(crate) log_p_k: usize,
    pub(crate) log_p_r: usize,
    pub(crate) x: AdditiveCode,
    pub(crate) y: AdditiveCode,
    pub(crate) y_dual: AdditiveCode,
    pub(crate) distance: WeightReport,
    pub(crate) purity: WeightReport,
    pub(crate) origin: Origin,
    pub(crate) provenance: Vec<(String, String)>,
}

impl SubsystemCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn log_p_k(&self) -> usize {
        self.log_p_k
    }

    pub fn log_p_r(&self) -> usize {
        self.log_p_r
    }

    /// k = log_q K.
    pub fn k(&self) -> Ratio<usize> {
        Ratio::new(self.log_p_k, self.base.degree() as usize)
    }

    /// r = log_q R.
    pub fn r(&self) -> Ratio<usize> {
        Ratio::new(self.log_p_r, self.base.degree() as usize)
    }

    /// K = dim of the information subsystem.
    pub fn big_k(&self) -> BigUint {
        BigUint::from(self.base.characteristic()).pow(self.log_p_k as u32)
    }

    /// R = dim of the gauge subsystem.
    pub fn big_r(&self) -> BigUint {
        BigUint::from(self.base.characteristic()).pow(self.log_p_r as u32)
    }

    pub fn x(&self) -> &AdditiveCode {
        &self.x
    }

    pub fn y(&self) -> &AdditiveCode {
        &self.y
    }

    pub fn y_dual(&self) -> &AdditiveCode {
        &self.y_dual
    }

    pub fn distance(&self) -> &WeightReport {
        &self.distance
    }

    /// Minimum weight of X, the purity level d′.
    pub fn purity(&self) -> &WeightReport {
        &self.purity
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn provenance(&self) -> &[(String, String)] {
        &self.provenance
    }

    pub fn with_provenance(mut self, key: &str, value: impl ToString) -> Self {
        self.provenance.push((key.to_string(), value.to_string()));
        self
    }

    /// K = 1: no logical information.
    pub fn is_degenerate(&self) -> bool {
        self.log_p_k == 0
    }

    pub fn is_stabilizer(&self) -> bool {
        self.log_p_r == 0
    }

    /// d′ ≥ d, when it can be decided from the reports.
    pub fn pure(&self) -> Option<bool> {
        use DistanceValue::*;
        match (self.purity.value, self.distance.value) {
            (Exact(dp), Exact(d)) => Some(dp >= d),
            (AtLeast(dp), Exact(d)) => (dp >= d).then_some(true),
            (Exact(dp), AtLeast(d)) => (dp < d).then_some(false),
            _ => None,
        }
    }

    /// A minimum-weight word of X in the symplectic ambient, if known.
    pub fn purity_witness(&self) -> Option<Vec<u16>> {
        let w = self.purity.witness.as_ref()?;
        match self.purity.metric {
            Metric::Symplectic => Some(w.clone()),
            Metric::Hamming => {
                let pair = match &self.origin {
                    Origin::Quadratic(c) | Origin::Hermitian(c) => c.space().pair()?.clone(),
                    _ => return None,
                };
                phi_inv(&pair, w).ok()
            }
        }
    }

    /// Parameters as `[[n,k,r,d]]_q`.
    pub fn label(&self) -> String {
        format!(
            "[[{},{},{},{}]]_{}",
            self.n,
            ratio_str(self.k()),
            ratio_str(self.r()),
            self.distance.value,
            self.q()
        )
    }
}

impl fmt::Display for SubsystemCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn ratio_str(r: Ratio<usize>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Skeleton {
    y: AdditiveCode,
    y_dual: AdditiveCode,
    log_p_k: usize,
    log_p_r: usize,
}

fn skeleton(x: &AdditiveCode) -> Result<Skeleton> {
    let sp = x.space();
    if sp.ambient() != Ambient::Symplectic {
        return Err(Error::Incompatible("X must live in the symplectic ambient".into()));
    }
    if x.is_zero() {
        return Err(Error::Hypothesis("X must be a nonzero code".into()));
    }
    let x_perp = x.dual(Form::TraceSymplectic)?;
    let y = x.intersect(&x_perp)?;
    let y_dual = y.dual(Form::TraceSymplectic)?;
    if x.sum(&x_perp)? != y_dual {
        return Err(Error::Invariant("X + X^⊥s differs from Y^⊥s".into()));
    }
    let a = x.log_p_size();
    let b = y.log_p_size();
    let nm = sp.log_p_ambient() / 2;
    if (a + b) % 2 != 0 || (a + b) / 2 > nm {
        return Err(Error::Invariant(format!("|X| = p^{a}, |Y| = p^{b} are inconsistent")));
    }
    let log_p_k = nm - (a + b) / 2;
    let log_p_r = (a - b) / 2;
    if log_p_k + log_p_r + b != nm {
        return Err(Error::Invariant("K·R·|Y| ≠ q^n".into()));
    }
    Ok(Skeleton {
        y,
        y_dual,
        log_p_k,
        log_p_r,
    })
}

fn base_provenance(construction: &str, field: &FieldSpec) -> Vec<(String, String)> {
    vec![
        ("construction".into(), construction.into()),
        (
            "modulus".into(),
            field
                .modulus()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
    ]
}

/// Subsystem code of an additive code X ⊆ GF(q)^{2n}.
pub fn subsystem_from_additive(x: &AdditiveCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    subsystem_with_purity(x, opts, None)
}

/// As [`subsystem_from_additive`], taking d′ from `purity` when given.
pub(crate) fn subsystem_with_purity(
    x: &AdditiveCode,
    opts: &DistanceOptions,
    purity: Option<WeightReport>,
) -> Result<SubsystemCode> {
    let sk = skeleton(x)?;
    let distance = min_weight_difference(&sk.y_dual, x, Metric::Symplectic, opts)?;
    let purity = match purity {
        Some(p) => p,
        None => min_weight(x, Metric::Symplectic, &opts.for_purity())?,
    };
    let base = Arc::clone(x.space().alphabet());
    Ok(SubsystemCode {
        n: x.space().n(),
        provenance: base_provenance("additive", &base),
        base,
        log_p_k: sk.log_p_k,
        log_p_r: sk.log_p_r,
        x: x.clone(),
        y: sk.y,
        y_dual: sk.y_dual,
        distance,
        purity,
        origin: Origin::Additive,
    })
}

/// Subsystem code of X ⊆ GF(q²)^n under the trace-alternating form. The
/// defining codes are pulled back through φ⁻¹; distances are searched in
/// the Hamming metric over GF(q²), where φ makes them equal.
pub fn subsystem_from_quadratic(xq: &AdditiveCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    let sp = xq.space();
    let pair = sp
        .pair()
        .cloned()
        .ok_or_else(|| Error::Incompatible("X must live over GF(q²)".into()))?;
    if xq.is_zero() {
        return Err(Error::Hypothesis("X must be a nonzero code".into()));
    }
    let x = phi_inv_code(xq)?;
    let sk = skeleton(&x)?;
    let yq = xq.intersect(&xq.dual(Form::TraceAlternating)?)?;
    let yq_dual = yq.dual(Form::TraceAlternating)?;
    let yq_cmp = match sp.scalars() {
        Scalars::QuadraticLinear => yq.restrict_scalars(Scalars::Linear)?,
        _ => yq.clone(),
    };
    if phi_code(&pair, &sk.y)? != yq_cmp {
        return Err(Error::Invariant("φ does not carry X ∩ X^⊥s onto X ∩ X^⊥a".into()));
    }
    let distance = min_weight_difference(&yq_dual, xq, Metric::Hamming, opts)?;
    let purity = min_weight(xq, Metric::Hamming, &opts.for_purity())?;
    let mut provenance = base_provenance("quadratic", pair.base());
    provenance.push(("beta".into(), pair.beta().to_string()));
    provenance.push((
        "ext_modulus".into(),
        pair.ext()
            .modulus()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(","),
    ));
    Ok(SubsystemCode {
        n: sp.n(),
        base: Arc::clone(pair.base()),
        log_p_k: sk.log_p_k,
        log_p_r: sk.log_p_r,
        x,
        y: sk.y,
        y_dual: sk.y_dual,
        distance,
        purity,
        origin: Origin::Quadratic(xq.clone()),
        provenance,
    })
}

/// [[n, n−k−k′, k−k′, wt(D^⊥h ∖ C)]]_q from a GF(q²)-linear [n, k] code C,
/// with D = C ∩ C^⊥h of dimension k′.
pub fn hermitian_construction(c: &AdditiveCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    if c.space().scalars() != Scalars::QuadraticLinear {
        return Err(Error::Incompatible("the hermitian construction needs a GF(q²)-linear code".into()));
    }
    let d = c.intersect(&c.dual(Form::Hermitian)?)?;
    let (n, k, kp) = (c.space().n(), c.dim(), d.dim());
    let mut code = subsystem_from_quadratic(c, opts)?;
    let m = code.base.degree() as usize;
    if code.log_p_k != m * (n - k - kp) || code.log_p_r != m * (k - kp) {
        return Err(Error::Invariant(format!(
            "hermitian parameters disagree: formula gives k={}, r={}",
            n - k - kp,
            k - kp
        )));
    }
    code.origin = Origin::Hermitian(c.clone());
    code.provenance[0].1 = "hermitian".into();
    code.provenance.push(("parent".into(), format!("[{n},{k}]")));
    code.provenance.push(("k_prime".into(), kp.to_string()));
    Ok(code)
}

/// X = C₁ × C₂ for GF(q)-linear C₁, C₂ ⊆ GF(q)^n. The distance is checked
/// against min{wt((C₁^⊥∩C₂)^⊥ ∖ C₁), wt((C₂^⊥∩C₁)^⊥ ∖ C₂)}.
pub fn euclidean_construction(
    c1: &AdditiveCode,
    c2: &AdditiveCode,
    opts: &DistanceOptions,
) -> Result<SubsystemCode> {
    for c in [c1, c2] {
        if c.space().ambient() != Ambient::Plain || c.space().scalars() != Scalars::Linear {
            return Err(Error::Incompatible(
                "the euclidean construction needs GF(q)-linear codes in GF(q)^n".into(),
            ));
        }
    }
    let x = AdditiveCode::product(c1, c2)?;
    let mut code = subsystem_from_additive(&x, opts)?;
    let c1p = c1.dual(Form::Euclidean)?;
    let c2p = c2.dual(Form::Euclidean)?;
    let kp = c1.intersect(&c2p)?.dim() + c1p.intersect(c2)?.dim();
    let (n, k1, k2) = (c1.space().n(), c1.dim(), c2.dim());
    let m = code.base.degree() as usize;
    if 2 * code.log_p_k != m * (2 * n - k1 - k2 - kp) || 2 * code.log_p_r != m * (k1 + k2 - kp) {
        return Err(Error::Invariant("euclidean parameter formula disagrees".into()));
    }
    let t1 = min_weight_difference(&c1p.intersect(c2)?.dual(Form::Euclidean)?, c1, Metric::Hamming, opts)?;
    let t2 = min_weight_difference(&c2p.intersect(c1)?.dual(Form::Euclidean)?, c2, Metric::Hamming, opts)?;
    let two_term = combine_min(t1.value, t2.value);
    let consistent = match (two_term, code.distance.value) {
        (DistanceValue::Exact(a), DistanceValue::Exact(b)) => a == b,
        (DistanceValue::Empty, v) | (v, DistanceValue::Empty) => v == DistanceValue::Empty,
        _ => true,
    };
    if !consistent {
        return Err(Error::Invariant(format!(
            "two-term distance {two_term} differs from {}",
            code.distance.value
        )));
    }
    code.origin = Origin::Euclidean(c1.clone(), c2.clone());
    code.provenance[0].1 = "euclidean".into();
    code.provenance.push(("k_prime".into(), kp.to_string()));
    code.provenance.push(("two_term_distance".into(), two_term.to_string()));
    Ok(code)
}

fn combine_min(a: DistanceValue, b: DistanceValue) -> DistanceValue {
    use DistanceValue::*;
    match (a, b) {
        (Empty, v) | (v, Empty) => v,
        (Exact(x), Exact(y)) => Exact(x.min(y)),
        (Exact(x), AtLeast(y)) | (AtLeast(y), Exact(x)) => {
            if x < y {
                Exact(x)
            } else {
                AtLeast(y)
            }
        }
        (AtLeast(x), AtLeast(y)) => AtLeast(x.min(y)),
    }
}

/// Swaps the roles of K and R by passing to the dual of the defining code.
/// The input must be pure.
pub fn exchange_info_gauge(code: &SubsystemCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    if code.pure() != Some(true) {
        return Err(Error::Hypothesis(format!(
            "exchange needs a pure code; {} has purity level {} and distance {}",
            code.label(),
            code.purity.value,
            code.distance.value
        )));
    }
    let out = match &code.origin {
        Origin::Hermitian(c) => hermitian_construction(&c.dual(Form::Hermitian)?, opts)?,
        Origin::Quadratic(x) => subsystem_from_quadratic(&x.dual(Form::TraceAlternating)?, opts)?,
        _ => subsystem_from_additive(&code.x.dual(Form::TraceSymplectic)?, opts)?,
    };
    if out.log_p_k != code.log_p_r || out.log_p_r != code.log_p_k {
        return Err(Error::Invariant("exchange did not swap K and R".into()));
    }
    if let (Some(new), Some(old)) = (out.distance.value.lower(), code.distance.value.exact()) {
        if out.distance.value.exact().is_some() && new < old {
            return Err(Error::Invariant(format!(
                "exchanged distance {new} below the original {old}"
            )));
        }
    }
    Ok(out.with_provenance("exchanged_from", code.label()))
}

/// A random additive X ⊆ GF(q)^{2n} with |X| = p^{r+2s} and
/// |X ∩ X^⊥s| = p^r, spanned by z₁..z_r and hyperbolic pairs
/// (x_j, z_j) for j = r+1..r+s of a random symplectic basis.
pub fn gv_random_code(field: &Arc<FieldSpec>, n: usize, r: usize, s: usize, seed: u64) -> Result<AdditiveCode> {
    let space = CodeSpace::symplectic(field, n, Scalars::Additive)?;
    let nm = n * field.degree() as usize;
    if r + 2 * s > 2 * nm {
        return Err(Error::InvalidParameters(format!(
            "p^{} exceeds the ambient size q^(2n) = p^{}",
            r + 2 * s,
            2 * nm
        )));
    }
    if r + s > nm {
        return Err(Error::InvalidParameters(format!(
            "r + s = {} exceeds n·m = {nm}: the radical cannot have size p^{r}",
            r + s
        )));
    }
    let gram = SymplecticGram::new(&space)?;
    let p = field.characteristic();
    let width = space.width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |pairs: &[(Vec<u16>, Vec<u16>)]| loop {
        let mut v: Vec<u16> = (0..width).map(|_| rng.gen_range(0..p) as u16).collect();
        for (z, x) in pairs {
            gram.project(&mut v, z, x);
        }
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    };
    let mut pairs: Vec<(Vec<u16>, Vec<u16>)> = Vec::new();
    for _ in 0..r + s {
        let z = random(&pairs);
        let x = loop {
            let x = random(&pairs);
            if gram.value(&x, &z) != 0 {
                break x;
            }
        };
        pairs.push((z.clone(), gram.normalize(x, &z)));
    }
    let mut m = Matrix::zeros(space.scalar_field(), 0, width);
    for (j, (z, x)) in pairs.iter().enumerate() {
        m.push_row(z);
        if j >= r {
            m.push_row(x);
        }
    }
    let code = AdditiveCode::from_expanded(&space, m);
    let y = code.intersect(&code.dual(Form::TraceSymplectic)?)?;
    if code.dim() != r + 2 * s || y.dim() != r {
        return Err(Error::Invariant("random code has the wrong cardinalities".into()));
    }
    Ok(code)
}

fn poly_mul_linear(f: &FieldSpec, g: &mut Vec<u16>, root: u16) {
    // g ← g · (x − root), coefficients lowest degree first.
    let neg = f.neg(root);
    let mut out = vec![0u16; g.len() + 1];
    for (i, &c) in g.iter().enumerate() {
        out[i + 1] = f.add(out[i + 1], c);
        out[i] = f.add(out[i], f.mul(c, neg));
    }
    *g = out;
}

fn cyclic_code(space: &Arc<CodeSpace>, g: &[u16]) -> Result<AdditiveCode> {
    let n = space.n();
    let k = n + 1 - g.len();
    let rows: Vec<Vec<u16>> = (0..k)
        .map(|shift| {
            let mut row = vec![0u16; n];
            row[shift..shift + g.len()].copy_from_slice(g);
            row
        })
        .collect();
    AdditiveCode::from_generators(space, &rows)
}

/// Primitive narrow-sense Reed–Solomon [q²−1, k] code over GF(q²), with
/// generator polynomial Π_{i=1}^{n−k} (x − α^i), α the table generator.
pub fn rs_code(pair: &Arc<ExtensionPair>, k: usize) -> Result<AdditiveCode> {
    let ext = pair.ext();
    let n = ext.order() as usize - 1;
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("RS dimension {k} outside 1..={n}")));
    }
    let space = CodeSpace::quadratic(pair, n, Scalars::QuadraticLinear)?;
    let mut g = vec![1u16];
    for i in 1..=n - k {
        poly_mul_linear(ext, &mut g, ext.exp(i as u64));
    }
    let code = cyclic_code(&space, &g)?;
    debug_assert_eq!(code.dim(), k);
    Ok(code)
}

/// Defining data of a BCH code, for provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BchInfo {
    pub defining_set: Vec<usize>,
    pub splitting_degree: u32,
    pub splitting_modulus: Vec<u32>,
    /// The primitive n-th root of unity as α^exponent in the splitting field.
    pub root_exponent: u64,
}

/// Cyclotomic cosets of `start..start+len` under multiplication by `q`
/// modulo n, merged and sorted.
pub fn cyclotomic_union(n: usize, q: usize, start: usize, len: usize) -> Vec<usize> {
    let mut in_set = vec![false; n];
    for b in start..start + len {
        let mut z = b % n;
        while !in_set[z] {
            in_set[z] = true;
            z = z * q % n;
        }
    }
    (0..n).filter(|&z| in_set[z]).collect()
}

/// BCH code over GF(q²) of length n and designed distance δ, defining set
/// the cyclotomic cosets of {b, …, b+δ−2} (b = `offset`, 1 for narrow sense).
pub fn bch_code(
    pair: &Arc<ExtensionPair>,
    n: usize,
    delta: usize,
    offset: usize,
) -> Result<(AdditiveCode, BchInfo)> {
    let ext = pair.ext();
    let big_q = ext.order() as usize;
    if n < 2 || n % ext.characteristic() as usize == 0 {
        return Err(Error::InvalidParameters(format!(
            "BCH length {n} must be at least 2 and coprime to q² = {big_q}"
        )));
    }
    if delta < 2 || delta > n {
        return Err(Error::InvalidParameters(format!("designed distance {delta} outside 2..={n}")));
    }
    let mut t = 1u32;
    let mut pow = big_q % n;
    while pow != 1 {
        pow = pow * big_q % n;
        t += 1;
    }
    let splitting_order = (big_q as u64).checked_pow(t).unwrap_or(u64::MAX);
    if splitting_order > MAX_FIELD_ORDER as u64 {
        return Err(Error::TooLarge(format!(
            "the n-th roots of unity live in GF({big_q}^{t}), beyond GF({MAX_FIELD_ORDER})"
        )));
    }
    let big = FieldSpec::new(ext.characteristic(), ext.degree() * t, None)?;
    let emb = FieldEmbedding::new(ext, &big)?;
    let root_exponent = (splitting_order - 1) / n as u64;
    let gamma = big.exp(root_exponent);
    let defining_set = cyclotomic_union(n, big_q, offset, delta - 1);
    let mut g = vec![1u16];
    for &z in &defining_set {
        poly_mul_linear(&big, &mut g, big.pow(gamma, z as u64));
    }
    let g = g
        .iter()
        .map(|&c| emb.project(c))
        .collect::<Option<Vec<u16>>>()
        .ok_or_else(|| Error::Invariant("generator polynomial is not defined over GF(q²)".into()))?;
    let space = CodeSpace::quadratic(pair, n, Scalars::QuadraticLinear)?;
    let code = cyclic_code(&space, &g)?;
    if code.dim() != n - defining_set.len() {
        return Err(Error::Invariant("BCH dimension differs from n − |Z|".into()));
    }
    Ok((
        code,
        BchInfo {
            defining_set,
            splitting_degree: big.degree(),
            splitting_modulus: big.modulus().to_vec(),
            root_exponent,
        },
    ))
}
