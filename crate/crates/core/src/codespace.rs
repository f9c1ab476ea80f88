//! Codes as row spaces over a scalar field, stored in canonical reduced
//! echelon form.
//!
//! Every ambient coordinate (an element of the alphabet field) is expanded
//! into `e` coordinates over the scalar field: base-p digits for additive
//! codes, normal-basis coordinates for GF(q)-linear codes over GF(q²), and the
//! element itself when alphabet and scalars coincide. All linear algebra
//! happens on these expanded rows.

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::galois::{ExtensionPair, FieldSpec};
use crate::linalg::Matrix;

/// Largest supported block length.
pub const MAX_LENGTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// GF(q)^{2n}, vectors (a | b).
    Symplectic,
    /// GF(q)^n.
    Plain,
    /// GF(q²)^n.
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scalars {
    /// Closed under addition only (F_p-linear).
    Additive,
    /// GF(q)-linear.
    Linear,
    /// GF(q²)-linear; quadratic ambient only.
    QuadraticLinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Hamming,
    /// Counts coordinates i with (x_i, y_i) ≠ (0, 0); symplectic ambient only.
    Symplectic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Euclidean,
    TraceSymplectic,
    Hermitian,
    TraceAlternating,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Symplectic => "symplectic",
            Ambient::Plain => "plain",
            Ambient::Quadratic => "quadratic",
        }
    }

    pub fn parse(s: &str) -> Option<Ambient> {
        match s {
            "symplectic" => Some(Ambient::Symplectic),
            "plain" => Some(Ambient::Plain),
            "quadratic" => Some(Ambient::Quadratic),
            _ => None,
        }
    }
}

impl Scalars {
    pub fn name(self) -> &'static str {
        match self {
            Scalars::Additive => "additive",
            Scalars::Linear => "linear",
            Scalars::QuadraticLinear => "quadratic-linear",
        }
    }

    pub fn parse(s: &str) -> Option<Scalars> {
        match s {
            "additive" => Some(Scalars::Additive),
            "linear" => Some(Scalars::Linear),
            "quadratic-linear" => Some(Scalars::QuadraticLinear),
            _ => None,
        }
    }
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Symplectic => "symplectic",
        }
    }

    pub fn parse(s: &str) -> Option<Metric> {
        match s {
            "hamming" => Some(Metric::Hamming),
            "symplectic" => Some(Metric::Symplectic),
            _ => None,
        }
    }
}

/// The ambient space of a code together with its scalar field and the
/// expansion of alphabet elements into scalar coordinates.
pub struct CodeSpace {
    ambient: Ambient,
    scalars: Scalars,
    n: usize,
    alphabet: Arc<FieldSpec>,
    pair: Option<Arc<ExtensionPair>>,
    scalar_field: Arc<FieldSpec>,
    e: usize,
    expand: Vec<u16>,
    pack_basis: Vec<u16>,
    scalar_embed: Vec<u16>,
}

impl PartialEq for CodeSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.scalars == other.scalars
            && self.n == other.n
            && *self.alphabet == *other.alphabet
            && self.pair == other.pair
    }
}

impl Eq for CodeSpace {}

impl fmt::Debug for CodeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} n={} over {:?}",
            self.ambient.name(),
            self.scalars.name(),
            self.n,
            self.alphabet
        )
    }
}

impl CodeSpace {
    /// GF(q)^n.
    pub fn plain(field: &Arc<FieldSpec>, n: usize, scalars: Scalars) -> Result<Arc<CodeSpace>> {
        Self::build(Ambient::Plain, scalars, n, field, None)
    }

    /// GF(q)^{2n} with the trace-symplectic pairing of (x_i, x_{n+i}).
    pub fn symplectic(field: &Arc<FieldSpec>, n: usize, scalars: Scalars) -> Result<Arc<CodeSpace>> {
        Self::build(Ambient::Symplectic, scalars, n, field, None)
    }

    /// GF(q²)^n.
    pub fn quadratic(pair: &Arc<ExtensionPair>, n: usize, scalars: Scalars) -> Result<Arc<CodeSpace>> {
        Self::build(Ambient::Quadratic, scalars, n, pair.ext(), Some(pair))
    }

    fn build(
        ambient: Ambient,
        scalars: Scalars,
        n: usize,
        alphabet: &Arc<FieldSpec>,
        pair: Option<&Arc<ExtensionPair>>,
    ) -> Result<Arc<CodeSpace>> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::InvalidParameters(format!(
                "length {n} outside 1..={MAX_LENGTH}"
            )));
        }
        let p = alphabet.characteristic();
        let order = alphabet.order() as usize;
        let (scalar_field, pack_basis, scalar_embed, expand): (Arc<FieldSpec>, Vec<u16>, Vec<u16>, Vec<u16>) =
            match (ambient, scalars) {
                (_, Scalars::Additive) => {
                    let m = alphabet.degree() as usize;
                    let basis = (0..m).map(|t| p.pow(t as u32) as u16).collect();
                    let embed = (0..p as u16).collect();
                    let expand = (0..order as u16)
                        .flat_map(|x| alphabet.coefficients(x).into_iter().map(|c| c as u16))
                        .collect();
                    (FieldSpec::prime(p)?, basis, embed, expand)
                }
                (Ambient::Quadratic, Scalars::Linear) => {
                    let pair = pair.expect("quadratic ambient carries its pair");
                    let embed = (0..pair.q() as u16).map(|a| pair.embed(a)).collect();
                    let expand = (0..order as u16)
                        .flat_map(|x| {
                            let (a, b) = pair.normal_coordinates(x);
                            [a, b]
                        })
                        .collect();
                    (Arc::clone(pair.base()), vec![pair.beta(), pair.beta_q()], embed, expand)
                }
                (Ambient::Quadratic, Scalars::QuadraticLinear)
                | (Ambient::Plain | Ambient::Symplectic, Scalars::Linear) => (
                    Arc::clone(alphabet),
                    vec![1],
                    (0..order as u16).collect(),
                    (0..order as u16).collect(),
                ),
                (_, Scalars::QuadraticLinear) => {
                    return Err(Error::Incompatible(
                        "GF(q²)-linear scalars need the quadratic ambient".into(),
                    ))
                }
            };
        let e = pack_basis.len();
        Ok(Arc::new(CodeSpace {
            ambient,
            scalars,
            n,
            alphabet: Arc::clone(alphabet),
            pair: pair.cloned(),
            scalar_field,
            e,
            expand,
            pack_basis,
            scalar_embed,
        }))
    }

    /// The same ambient with different scalars.
    pub fn with_scalars(&self, scalars: Scalars) -> Result<Arc<CodeSpace>> {
        Self::build(self.ambient, scalars, self.n, &self.alphabet, self.pair.as_ref())
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn scalars(&self) -> Scalars {
        self.scalars
    }

    /// Block length n (number of qudits).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of alphabet entries per vector: 2n in the symplectic ambient.
    pub fn positions(&self) -> usize {
        match self.ambient {
            Ambient::Symplectic => 2 * self.n,
            _ => self.n,
        }
    }

    pub fn alphabet(&self) -> &Arc<FieldSpec> {
        &self.alphabet
    }

    pub fn pair(&self) -> Option<&Arc<ExtensionPair>> {
        self.pair.as_ref()
    }

    pub fn scalar_field(&self) -> &Arc<FieldSpec> {
        &self.scalar_field
    }

    /// Scalar coordinates per alphabet entry.
    pub fn expansion(&self) -> usize {
        self.e
    }

    /// Width of an expanded row.
    pub fn width(&self) -> usize {
        self.positions() * self.e
    }

    /// q for the plain and symplectic ambients, q (not q²) for the quadratic one.
    pub fn q(&self) -> u32 {
        match &self.pair {
            Some(pair) => pair.q(),
            None => self.alphabet.order(),
        }
    }

    /// log_p of the ambient size.
    pub fn log_p_ambient(&self) -> usize {
        self.positions() * self.alphabet.degree() as usize
    }

    /// log_p of the scalar field order.
    pub fn log_p_scalars(&self) -> usize {
        self.scalar_field.degree() as usize
    }

    /// Coordinates of an alphabet element over the scalar field.
    #[inline]
    pub fn expand_element(&self, x: u16) -> &[u16] {
        let i = x as usize * self.e;
        &self.expand[i..i + self.e]
    }

    /// The scalar field element `s` seen inside the alphabet.
    #[inline]
    pub fn embed_scalar(&self, s: u16) -> u16 {
        self.scalar_embed[s as usize]
    }

    pub fn pack_element(&self, coords: &[u16]) -> u16 {
        let a = &self.alphabet;
        coords
            .iter()
            .zip(&self.pack_basis)
            .fold(0, |acc, (&c, &b)| a.add(acc, a.mul(self.embed_scalar(c), b)))
    }

    pub fn expand_vector(&self, v: &[u16]) -> Vec<u16> {
        v.iter().flat_map(|&x| self.expand_element(x).iter().copied()).collect()
    }

    pub fn pack_vector(&self, row: &[u16]) -> Vec<u16> {
        row.chunks(self.e).map(|c| self.pack_element(c)).collect()
    }

    pub fn check_vector(&self, v: &[u16]) -> Result<()> {
        if v.len() != self.positions() {
            return Err(Error::Incompatible(format!(
                "vector of length {} in an ambient with {} entries",
                v.len(),
                self.positions()
            )));
        }
        if let Some(&x) = v.iter().find(|&&x| !self.alphabet.contains(x)) {
            return Err(Error::InvalidParameters(format!(
                "{x} is not an element of GF({})",
                self.alphabet.order()
            )));
        }
        Ok(())
    }

    pub fn check_metric(&self, metric: Metric) -> Result<()> {
        if metric == Metric::Symplectic && self.ambient != Ambient::Symplectic {
            return Err(Error::Incompatible(
                "symplectic weight needs the symplectic ambient".into(),
            ));
        }
        Ok(())
    }

    /// Alphabet positions making up each weight coordinate.
    pub fn coordinate_positions(&self, metric: Metric) -> Vec<Vec<usize>> {
        match metric {
            Metric::Symplectic => (0..self.n).map(|i| vec![i, self.n + i]).collect(),
            Metric::Hamming => (0..self.positions()).map(|i| vec![i]).collect(),
        }
    }

    /// Expanded columns making up each weight coordinate.
    pub fn coordinate_columns(&self, metric: Metric) -> Vec<Vec<usize>> {
        self.coordinate_positions(metric)
            .into_iter()
            .map(|ps| {
                ps.into_iter()
                    .flat_map(|p| (p * self.e..(p + 1) * self.e).collect::<Vec<_>>())
                    .collect()
            })
            .collect()
    }

    /// Weight of an ambient vector.
    pub fn weight(&self, v: &[u16], metric: Metric) -> usize {
        match metric {
            Metric::Hamming => v.iter().filter(|&&x| x != 0).count(),
            Metric::Symplectic => (0..self.n)
                .filter(|&i| v[i] != 0 || v[self.n + i] != 0)
                .count(),
        }
    }

    /// The natural metric: symplectic weight in the symplectic ambient,
    /// Hamming weight otherwise.
    pub fn default_metric(&self) -> Metric {
        match self.ambient {
            Ambient::Symplectic => Metric::Symplectic,
            _ => Metric::Hamming,
        }
    }

    /// Row k holds ⟨rows[k] | b·ε_pos⟩ for every expanded column (pos, b),
    /// as scalar-field elements. With the identity rows this is the Gram
    /// matrix of a bilinear form.
    pub fn form_matrix(&self, form: Form, rows: &[Vec<u16>]) -> Result<Matrix> {
        match (self.ambient, form) {
            (Ambient::Quadratic, Form::Hermitian) if self.scalars == Scalars::QuadraticLinear => {}
            (Ambient::Quadratic, Form::TraceAlternating) if self.scalars != Scalars::QuadraticLinear => {}
            (_, Form::Euclidean) | (Ambient::Symplectic, Form::TraceSymplectic) => {}
            _ => {
                return Err(Error::Incompatible(format!(
                    "{form:?} form with {} scalars on the {} ambient",
                    self.scalars.name(),
                    self.ambient.name()
                )))
            }
        }
        let mut m = Matrix::zeros(&self.scalar_field, 0, self.width());
        let mut out = vec![0u16; self.width()];
        for g in rows {
            self.check_vector(g)?;
            for pos in 0..self.positions() {
                for t in 0..self.e {
                    out[pos * self.e + t] = self.pairing_with_basis(form, g, pos, self.pack_basis[t]);
                }
            }
            m.push_row(&out);
        }
        Ok(m)
    }

    /// Gram matrix of a bilinear form in expanded coordinates.
    pub fn gram_matrix(&self, form: Form) -> Result<Matrix> {
        let rows: Vec<Vec<u16>> = (0..self.width())
            .map(|i| {
                let mut unit = vec![0u16; self.width()];
                unit[i] = 1;
                self.pack_vector(&unit)
            })
            .collect();
        if form == Form::Hermitian {
            return Err(Error::Incompatible("the hermitian form is not bilinear".into()));
        }
        self.form_matrix(form, &rows)
    }

    fn pairing_with_basis(&self, form: Form, g: &[u16], pos: usize, b: u16) -> u16 {
        let a = &self.alphabet;
        let n = self.n;
        match form {
            Form::Euclidean => self.to_scalar(a.mul(g[pos], b)),
            Form::TraceSymplectic => {
                if pos < n {
                    self.to_scalar(a.mul(g[n + pos], b))
                } else {
                    let v = self.to_scalar(a.mul(g[pos - n], b));
                    self.scalar_field.neg(v)
                }
            }
            Form::Hermitian => {
                let pair = self.pair.as_ref().expect("quadratic");
                a.mul(pair.conjugate(g[pos]), b)
            }
            Form::TraceAlternating => {
                let pair = self.pair.as_ref().expect("quadratic");
                let x = g[pos];
                let s = a.sub(a.mul(pair.conjugate(x), b), a.mul(pair.conjugate(b), x));
                let v = a.mul(s, pair.alternating_scale());
                let base_val = pair.project(v).expect("alternating values lie in GF(q)");
                match self.scalars {
                    Scalars::Additive => pair.base().trace(base_val),
                    _ => base_val,
                }
            }
        }
    }

    /// The euclidean trace from the alphabet to the scalar field.
    fn to_scalar(&self, x: u16) -> u16 {
        match (self.ambient, self.scalars) {
            (_, Scalars::Additive) => self.alphabet.trace(x),
            (Ambient::Quadratic, Scalars::Linear) => {
                let pair = self.pair.as_ref().expect("quadratic");
                let t = self.alphabet.add(x, pair.conjugate(x));
                pair.project(t).expect("relative trace lies in GF(q)")
            }
            _ => x,
        }
    }

    fn same_as(&self, other: &CodeSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Incompatible(format!("{self:?} vs {other:?}")))
        }
    }
}

/// A code: an F-subspace of the ambient, F the scalar field of its space.
#[derive(Clone)]
pub struct AdditiveCode {
    space: Arc<CodeSpace>,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for AdditiveCode {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.basis == other.basis
    }
}

impl Eq for AdditiveCode {}

impl fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "code[dim {}] in {:?}", self.dim(), self.space)
    }
}

impl AdditiveCode {
    /// Span of the given ambient vectors.
    pub fn from_generators(space: &Arc<CodeSpace>, rows: &[Vec<u16>]) -> Result<AdditiveCode> {
        let mut m = Matrix::zeros(space.scalar_field(), 0, space.width());
        for r in rows {
            space.check_vector(r)?;
            m.push_row(&space.expand_vector(r));
        }
        Ok(Self::from_expanded(space, m))
    }

    /// Row space of a matrix given in expanded coordinates.
    pub fn from_expanded(space: &Arc<CodeSpace>, mut m: Matrix) -> AdditiveCode {
        assert_eq!(m.cols(), space.width(), "expanded width mismatch");
        let pivots = m.rref();
        AdditiveCode {
            space: Arc::clone(space),
            basis: m,
            pivots,
        }
    }

    pub fn zero(space: &Arc<CodeSpace>) -> AdditiveCode {
        Self::from_expanded(space, Matrix::zeros(space.scalar_field(), 0, space.width()))
    }

    pub fn full(space: &Arc<CodeSpace>) -> AdditiveCode {
        Self::from_expanded(space, Matrix::identity(space.scalar_field(), space.width()))
    }

    pub fn space(&self) -> &Arc<CodeSpace> {
        &self.space
    }

    /// Canonical basis in expanded coordinates.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Dimension over the scalar field.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// log_p |C|.
    pub fn log_p_size(&self) -> usize {
        self.dim() * self.space.log_p_scalars()
    }

    /// |C| as an exact integer.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.space.scalar_field().order()).pow(self.dim() as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis rows as ambient vectors.
    pub fn generators(&self) -> Vec<Vec<u16>> {
        (0..self.dim())
            .map(|r| self.space.pack_vector(self.basis.row(r)))
            .collect()
    }

    pub fn contains(&self, v: &[u16]) -> Result<bool> {
        self.space.check_vector(v)?;
        Ok(self.contains_expanded(&self.space.expand_vector(v)))
    }

    pub fn contains_expanded(&self, row: &[u16]) -> bool {
        self.basis.decompose(&self.pivots, row).is_some()
    }

    /// Parity-check matrix H in expanded coordinates: c ∈ C iff H·c = 0.
    pub fn parity_check(&self) -> Matrix {
        self.basis.nullspace()
    }

    pub fn is_subcode_of(&self, other: &AdditiveCode) -> Result<bool> {
        self.space.same_as(&other.space)?;
        Ok((0..self.dim()).all(|r| other.contains_expanded(self.basis.row(r))))
    }

    pub fn sum(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        self.space.same_as(&other.space)?;
        Ok(Self::from_expanded(&self.space, self.basis.stack(&other.basis)))
    }

    pub fn intersect(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        self.space.same_as(&other.space)?;
        let h = self.parity_check().stack(&other.parity_check());
        Ok(Self::from_expanded(&self.space, h.nullspace()))
    }

    /// Codewords vanishing on every weight coordinate outside `support`.
    pub fn shorten_to_support(&self, support: &[usize], metric: Metric) -> Result<AdditiveCode> {
        self.space.check_metric(metric)?;
        let groups = self.space.coordinate_columns(metric);
        let mut inside = vec![false; groups.len()];
        for &s in support {
            if s >= groups.len() {
                return Err(Error::InvalidParameters(format!(
                    "coordinate {s} out of range 0..{}",
                    groups.len()
                )));
            }
            inside[s] = true;
        }
        let outside: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(i, _)| !inside[*i])
            .flat_map(|(_, g)| g.iter().copied())
            .collect();
        let restricted = self.basis.select_columns(&outside);
        let combos = restricted.transpose().nullspace();
        Ok(Self::from_expanded(&self.space, combos.mul(&self.basis)))
    }

    /// The same set of vectors regarded over a subfield of the scalars.
    pub fn restrict_scalars(&self, scalars: Scalars) -> Result<AdditiveCode> {
        let target = self.space.with_scalars(scalars)?;
        if target.log_p_scalars() > self.space.log_p_scalars() {
            return Err(Error::Incompatible(format!(
                "cannot restrict {} scalars to {}",
                self.space.scalars.name(),
                scalars.name()
            )));
        }
        let a = &self.space.alphabet;
        let own = self.space.scalar_field();
        let multipliers: Vec<u16> = (0..own.degree())
            .map(|t| self.space.embed_scalar(own.characteristic().pow(t) as u16))
            .collect();
        let mut rows = Vec::new();
        for g in self.generators() {
            for &lam in &multipliers {
                rows.push(g.iter().map(|&x| a.mul(lam, x)).collect::<Vec<_>>());
            }
        }
        let out = Self::from_generators(&target, &rows)?;
        debug_assert_eq!(out.log_p_size(), self.log_p_size());
        Ok(out)
    }

    /// The span of this code over a larger scalar field.
    pub fn span_over(&self, scalars: Scalars) -> Result<AdditiveCode> {
        let target = self.space.with_scalars(scalars)?;
        Self::from_generators(&target, &self.generators())
    }

    /// Dual with respect to `form`.
    pub fn dual(&self, form: Form) -> Result<AdditiveCode> {
        let sp = &self.space;
        match (sp.ambient, form) {
            (Ambient::Quadratic, Form::Hermitian) if sp.scalars != Scalars::QuadraticLinear => {
                let span = self.span_over(Scalars::QuadraticLinear)?;
                return span.dual(Form::Hermitian)?.restrict_scalars(sp.scalars);
            }
            (Ambient::Quadratic, Form::TraceAlternating) if sp.scalars == Scalars::QuadraticLinear => {
                return self.dual(Form::Hermitian);
            }
            (_, Form::Euclidean)
            | (Ambient::Symplectic, Form::TraceSymplectic)
            | (Ambient::Quadratic, Form::Hermitian | Form::TraceAlternating) => {}
            _ => {
                return Err(Error::Incompatible(format!(
                    "{form:?} form on the {} ambient",
                    sp.ambient.name()
                )))
            }
        }
        let m = sp.form_matrix(form, &self.generators())?;
        Ok(Self::from_expanded(sp, m.nullspace()))
    }

    /// The code in the plain ambient of length n built as C₁ × C₂ inside
    /// the symplectic ambient: {(a | b) : a ∈ C₁, b ∈ C₂}.
    pub fn product(c1: &AdditiveCode, c2: &AdditiveCode) -> Result<AdditiveCode> {
        c1.space.same_as(&c2.space)?;
        if c1.space.ambient != Ambient::Plain {
            return Err(Error::Incompatible("product needs two plain-ambient codes".into()));
        }
        let space = CodeSpace::symplectic(&c1.space.alphabet, c1.space.n, c1.space.scalars)?;
        let n = c1.space.n;
        let mut rows = Vec::new();
        for g in c1.generators() {
            let mut v = g.clone();
            v.extend(std::iter::repeat(0).take(n));
            rows.push(v);
        }
        for g in c2.generators() {
            let mut v = vec![0u16; n];
            v.extend(g);
            rows.push(v);
        }
        Self::from_generators(&space, &rows)
    }

    /// Every codeword as an expanded row, in odometer order of the
    /// coefficient vector. Intended for small codes only.
    pub fn for_each_expanded<F: FnMut(&[u16])>(&self, mut visit: F) {
        let f = self.space.scalar_field();
        let q = f.order() as u16;
        let k = self.dim();
        let mut coeffs = vec![0u16; k];
        let mut cur = vec![0u16; self.space.width()];
        visit(&cur);
        loop {
            let mut i = 0;
            while i < k {
                let old = coeffs[i];
                let new = if old + 1 == q { 0 } else { old + 1 };
                coeffs[i] = new;
                let delta = f.sub(new, old);
                crate::linalg::axpy(f, &mut cur, delta, self.basis.row(i));
                if new != 0 {
                    break;
                }
                i += 1;
            }
            if i == k {
                return;
            }
            visit(&cur);
        }
    }

    /// Weight of an expanded row.
    pub fn expanded_weight(groups: &[Vec<usize>], row: &[u16]) -> usize {
        groups
            .iter()
            .filter(|g| g.iter().any(|&c| row[c] != 0))
            .count()
    }
}

/// Parses the code file format.
pub fn parse_code(text: &str) -> Result<AdditiveCode> {
    let mut field: Option<(u32, u32, Option<Vec<u32>>)> = None;
    let mut base_modulus: Option<Vec<u32>> = None;
    let mut length: Option<usize> = None;
    let mut ambient: Option<Ambient> = None;
    let mut scalars: Option<Scalars> = None;
    let mut rows: Vec<(usize, Vec<u16>)> = Vec::new();
    let mut in_generators = false;

    let err = |line: usize, message: String| Error::Parse { line, message };
    let parse_list = |line: usize, s: &str| -> Result<Vec<u32>> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| err(line, format!("bad coefficient {t:?}")))
            })
            .collect()
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if in_generators {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u16>()
                        .map_err(|_| err(line_no, format!("bad element encoding {t:?}")))
                })
                .collect::<Result<Vec<u16>>>()?;
            rows.push((line_no, row));
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, format!("expected `key: value`, got {line:?}")))?;
        let value = value.trim();
        match key.trim() {
            "field" => {
                let (mut p, mut m, mut modulus) = (None, None, None);
                for part in value.split_whitespace() {
                    let (k, v) = part
                        .split_once('=')
                        .ok_or_else(|| err(line_no, format!("expected k=v, got {part:?}")))?;
                    match k {
                        "p" => p = Some(v.parse().map_err(|_| err(line_no, "bad p".into()))?),
                        "m" => m = Some(v.parse().map_err(|_| err(line_no, "bad m".into()))?),
                        "modulus" => modulus = Some(parse_list(line_no, v)?),
                        other => return Err(err(line_no, format!("unknown field key {other:?}"))),
                    }
                }
                let p = p.ok_or_else(|| err(line_no, "field needs p".into()))?;
                let m = m.ok_or_else(|| err(line_no, "field needs m".into()))?;
                field = Some((p, m, modulus));
            }
            "base-modulus" => base_modulus = Some(parse_list(line_no, value)?),
            "length" => {
                length = Some(
                    value
                        .parse()
                        .map_err(|_| err(line_no, format!("bad length {value:?}")))?,
                )
            }
            "ambient" => {
                ambient = Some(
                    Ambient::parse(value)
                        .ok_or_else(|| err(line_no, format!("unknown ambient {value:?}")))?,
                )
            }
            "scalars" => {
                scalars = Some(
                    Scalars::parse(value)
                        .ok_or_else(|| err(line_no, format!("unknown scalars {value:?}")))?,
                )
            }
            "generators" => {
                if !value.is_empty() {
                    return Err(err(line_no, "rows start on the line after `generators:`".into()));
                }
                in_generators = true;
            }
            other => return Err(err(line_no, format!("unknown header {other:?}"))),
        }
    }

    let last = text.lines().count().max(1);
    let (p, m, modulus) = field.ok_or_else(|| err(last, "missing `field:` header".into()))?;
    let n = length.ok_or_else(|| err(last, "missing `length:` header".into()))?;
    let ambient = ambient.ok_or_else(|| err(last, "missing `ambient:` header".into()))?;
    let scalars = scalars.ok_or_else(|| err(last, "missing `scalars:` header".into()))?;
    if !in_generators {
        return Err(err(last, "missing `generators:` section".into()));
    }
    let alphabet = FieldSpec::new(p, m, modulus.as_deref())?;
    let space = match ambient {
        Ambient::Plain => CodeSpace::plain(&alphabet, n, scalars)?,
        Ambient::Symplectic => CodeSpace::symplectic(&alphabet, n, scalars)?,
        Ambient::Quadratic => {
            if m % 2 != 0 {
                return Err(Error::InvalidField(
                    "the quadratic ambient needs an even extension degree".into(),
                ));
            }
            let base = FieldSpec::new(p, m / 2, base_modulus.as_deref())?;
            let pair = ExtensionPair::new(&base, &alphabet)?;
            CodeSpace::quadratic(&pair, n, scalars)?
        }
    };
    for (line_no, row) in &rows {
        space
            .check_vector(row)
            .map_err(|e| err(*line_no, e.to_string()))?;
    }
    let rows: Vec<Vec<u16>> = rows.into_iter().map(|(_, r)| r).collect();
    AdditiveCode::from_generators(&space, &rows)
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Writes the code file format with the canonical basis as generators.
pub fn write_code(code: &AdditiveCode) -> String {
    let sp = code.space();
    let a = sp.alphabet();
    let mut out = String::new();
    writeln!(
        out,
        "field: p={} m={} modulus={}",
        a.characteristic(),
        a.degree(),
        join(a.modulus(), ",")
    )
    .unwrap();
    if let Some(pair) = sp.pair() {
        writeln!(out, "base-modulus: {}", join(pair.base().modulus(), ",")).unwrap();
        writeln!(out, "# beta: {}", pair.beta()).unwrap();
    }
    writeln!(out, "length: {}", sp.n()).unwrap();
    writeln!(out, "ambient: {}", sp.ambient().name()).unwrap();
    writeln!(out, "scalars: {}", sp.scalars().name()).unwrap();
    writeln!(out, "generators:").unwrap();
    for g in code.generators() {
        writeln!(out, "{}", join(&g, " ")).unwrap();
    }
    out
}

pub fn read_code_file(path: &std::path::Path) -> Result<AdditiveCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::normal_basis_pick;

    pub(crate) fn hamming7() -> AdditiveCode {
        let f = FieldSpec::prime(2).unwrap();
        let sp = CodeSpace::plain(&f, 7, Scalars::Linear).unwrap();
        // Columns of the parity check are 1..7 in binary.
        let h = AdditiveCode::from_generators(
            &sp,
            &[
                vec![1, 0, 1, 0, 1, 0, 1],
                vec![0, 1, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap();
        h.dual(Form::Euclidean).unwrap()
    }

    #[test]
    fn hamming_dual_is_dual_containing() {
        let c = hamming7();
        assert_eq!(c.dim(), 4);
        let d = c.dual(Form::Euclidean).unwrap();
        assert_eq!(d.dim(), 3);
        assert!(d.is_subcode_of(&c).unwrap());
        // Exhaustive: every vector orthogonal to all codewords lies in d.
        let mut count = 0;
        for bits in 0u32..128 {
            let v: Vec<u16> = (0..7).map(|i| ((bits >> i) & 1) as u16).collect();
            let mut orth = true;
            c.for_each_expanded(|w| {
                let s: u16 = w.iter().zip(&v).map(|(a, b)| a * b).sum::<u16>() % 2;
                orth &= s == 0;
            });
            assert_eq!(orth, d.contains(&v).unwrap());
            count += orth as u32;
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn full_space_dual_is_zero() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        for sp in [
            CodeSpace::plain(&f, 3, Scalars::Additive).unwrap(),
            CodeSpace::symplectic(&f, 3, Scalars::Linear).unwrap(),
        ] {
            let full = AdditiveCode::full(&sp);
            for form in [Form::Euclidean, Form::TraceSymplectic] {
                if let Ok(d) = full.dual(form) {
                    assert!(d.is_zero());
                }
            }
        }
    }

    #[test]
    fn shorten_hamming_supports() {
        let c = hamming7();
        let mut weight3 = Vec::new();
        c.for_each_expanded(|w| {
            if w.iter().filter(|&&x| x != 0).count() == 3 {
                weight3.push(
                    (0..7).filter(|&i| w[i] != 0).collect::<Vec<usize>>(),
                );
            }
        });
        assert_eq!(weight3.len(), 7);
        let mut ones = 0;
        for a in 0..7 {
            for b in a + 1..7 {
                for cc in b + 1..7 {
                    let s = vec![a, b, cc];
                    let dim = c.shorten_to_support(&s, Metric::Hamming).unwrap().dim();
                    let expect = usize::from(weight3.contains(&s));
                    assert_eq!(dim, expect, "{s:?}");
                    ones += dim;
                }
            }
        }
        assert_eq!(ones, 7);
        let all: Vec<usize> = (0..7).collect();
        assert_eq!(c.shorten_to_support(&all, Metric::Hamming).unwrap(), c);
        assert!(c.shorten_to_support(&[], Metric::Hamming).unwrap().is_zero());
        assert!(c.shorten_to_support(&[7], Metric::Hamming).is_err());
    }

    #[test]
    fn contains_examples() {
        let c = hamming7();
        assert!(c.contains(&[0; 7]).unwrap());
        for g in c.generators() {
            assert!(c.contains(&g).unwrap());
        }
        for i in 0..7 {
            let mut v = vec![0u16; 7];
            v[i] = 1;
            assert!(!c.contains(&v).unwrap());
        }
        assert!(c.contains(&[0; 6]).is_err());
    }

    #[test]
    fn intersect_and_sum_idempotent() {
        let c = hamming7();
        assert_eq!(c.intersect(&c).unwrap(), c);
        assert_eq!(c.sum(&c).unwrap(), c);
        let d = c.dual(Form::Euclidean).unwrap();
        assert_eq!(d.intersect(&d.dual(Form::Euclidean).unwrap()).unwrap(), d);
    }

    #[test]
    fn product_duality_small() {
        let f = FieldSpec::prime(3).unwrap();
        let sp = CodeSpace::plain(&f, 3, Scalars::Linear).unwrap();
        let c1 = AdditiveCode::from_generators(&sp, &[vec![1, 2, 0]]).unwrap();
        let c2 = AdditiveCode::from_generators(&sp, &[vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let x = AdditiveCode::product(&c1, &c2).unwrap();
        let lhs = x.dual(Form::TraceSymplectic).unwrap();
        let rhs = AdditiveCode::product(
            &c2.dual(Form::Euclidean).unwrap(),
            &c1.dual(Form::Euclidean).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn file_round_trip() {
        let base = FieldSpec::prime(2).unwrap();
        let pair = normal_basis_pick(&base).unwrap();
        let sp = CodeSpace::quadratic(&pair, 4, Scalars::Additive).unwrap();
        let c = AdditiveCode::from_generators(&sp, &[vec![1, 2, 3, 0], vec![0, 3, 3, 1]]).unwrap();
        let text = write_code(&c);
        let back = parse_code(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(write_code(&back), text);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = "field: p=2 m=1\nlength: 3\nambient: plain\nscalars: linear\ngenerators:\n1 0 2\n";
        match parse_code(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_code("lenght: 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_code("field: p=2 m=2 modulus=1,0,1\nlength: 1\nambient: plain\nscalars: linear\ngenerators:\n").is_err());
    }

    #[test]
    fn shuffled_generators_same_code() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        let sp = CodeSpace::symplectic(&f, 2, Scalars::Additive).unwrap();
        let rows = vec![vec![1, 2, 0, 3], vec![0, 1, 1, 0], vec![3, 0, 2, 2]];
        let a = AdditiveCode::from_generators(&sp, &rows).unwrap();
        let mut rev = rows.clone();
        rev.reverse();
        let b = AdditiveCode::from_generators(&sp, &rev).unwrap();
        assert_eq!(a, b);
    }
}
