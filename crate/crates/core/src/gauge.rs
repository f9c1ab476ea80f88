//! Symplectic Gram–Schmidt and gauge reduction: turning gauge qudits of a
//! subsystem code into stabilizers without touching the logical qudits.

use std::sync::Arc;

use crate::codespace::{AdditiveCode, Ambient, CodeSpace, Form, Scalars};
use crate::construct::{subsystem_with_purity, SubsystemCode};
use crate::distance::{DistanceOptions, DistanceValue, Strategy, WeightReport};
use crate::codespace::Metric;
use crate::error::{Error, Result};
use crate::forms::swt;
use crate::galois::FieldSpec;
use crate::linalg::{axpy, IncrementalEliminator, Matrix};

/// The trace-symplectic form on expanded coordinates of an additive
/// symplectic space, as a matrix over GF(p).
pub(crate) struct SymplecticGram {
    field: Arc<FieldSpec>,
    gram: Matrix,
}

impl SymplecticGram {
    pub(crate) fn new(space: &CodeSpace) -> Result<Self> {
        if space.ambient() != Ambient::Symplectic || space.scalars() != Scalars::Additive {
            return Err(Error::Incompatible("Gram matrix needs an additive symplectic space".into()));
        }
        Ok(SymplecticGram {
            field: Arc::clone(space.scalar_field()),
            gram: space.gram_matrix(Form::TraceSymplectic)?,
        })
    }

    /// ⟨u | v⟩ for expanded rows.
    pub(crate) fn value(&self, u: &[u16], v: &[u16]) -> u16 {
        let gv = self.gram.mul_vec(v);
        u.iter()
            .zip(&gv)
            .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    /// Scales `x` so that ⟨x | z⟩ = 1.
    pub(crate) fn normalize(&self, mut x: Vec<u16>, z: &[u16]) -> Vec<u16> {
        let c = self
            .field
            .inv(self.value(&x, z))
            .expect("normalize needs a nonzero pairing");
        for v in x.iter_mut() {
            *v = self.field.mul(*v, c);
        }
        x
    }

    /// w ← w − ⟨w|z⟩·x + ⟨w|x⟩·z, for a pair with ⟨x|z⟩ = 1. The result is
    /// orthogonal to both x and z.
    pub(crate) fn project(&self, w: &mut [u16], z: &[u16], x: &[u16]) {
        let wz = self.value(w, z);
        let wx = self.value(w, x);
        axpy(&self.field, w, self.field.neg(wz), x);
        axpy(&self.field, w, wx, z);
    }
}

/// A basis of an additive code made of hyperbolic pairs (z, x) with
/// ⟨x|z⟩ = 1, orthogonal to each other, plus residual vectors spanning
/// the radical C ∩ C^⊥s.
#[derive(Debug, Clone)]
pub struct HyperbolicBasis {
    pub space: Arc<CodeSpace>,
    /// Ambient vectors (z, x).
    pub pairs: Vec<(Vec<u16>, Vec<u16>)>,
    pub residual: Vec<Vec<u16>>,
}

/// Symplectic Gram–Schmidt on `code` (symplectic ambient), regarded as an
/// additive code. When `seed` is given it is the first z and survives
/// unchanged.
pub fn hyperbolic_basis(code: &AdditiveCode, seed: Option<&[u16]>) -> Result<HyperbolicBasis> {
    if code.space().ambient() != Ambient::Symplectic {
        return Err(Error::Incompatible("hyperbolic basis needs the symplectic ambient".into()));
    }
    let add = match code.space().scalars() {
        Scalars::Additive => code.clone(),
        _ => code.restrict_scalars(Scalars::Additive)?,
    };
    let sp = Arc::clone(add.space());
    let gram = SymplecticGram::new(&sp)?;
    let mut working: Vec<Vec<u16>> = Vec::new();
    let mut elim = IncrementalEliminator::new(sp.scalar_field(), sp.width());
    if let Some(s) = seed {
        if !add.contains(s)? || s.iter().all(|&c| c == 0) {
            return Err(Error::InvalidParameters("seed must be a nonzero codeword".into()));
        }
        let row = sp.expand_vector(s);
        elim.push(&row);
        working.push(row);
    }
    for row in add.basis().row_vecs() {
        if elim.push(&row) {
            working.push(row);
        }
    }

    let mut pairs = Vec::new();
    let mut residual = Vec::new();
    let mut first = seed.is_some();
    while !working.is_empty() {
        let z = if first {
            first = false;
            working.remove(0)
        } else {
            working.pop().expect("nonempty")
        };
        let Some(idx) = working.iter().position(|w| gram.value(w, &z) != 0) else {
            residual.push(sp.pack_vector(&z));
            continue;
        };
        let x = gram.normalize(working.remove(idx), &z);
        for w in working.iter_mut() {
            gram.project(w, &z, &x);
        }
        pairs.push((sp.pack_vector(&z), sp.pack_vector(&x)));
    }
    Ok(HyperbolicBasis {
        space: sp,
        pairs,
        residual,
    })
}

/// One gauge qudit over GF(p) becomes a stabilizer: the x of one hyperbolic
/// pair is dropped from X, so K is kept, R shrinks by p and Y grows by p.
/// When d′ is known exactly its witness seeds the basis, so the new X still
/// contains a word of weight d′.
pub fn reduce_gauge(code: &SubsystemCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    if code.is_stabilizer() {
        return Err(Error::Hypothesis(format!("{} has no gauge qudits", code.label())));
    }
    let seed = match code.purity().value {
        DistanceValue::Exact(_) => code.purity_witness(),
        _ => None,
    };
    let hb = hyperbolic_basis(code.x(), seed.as_deref())?;
    if hb.pairs.len() != code.log_p_r() {
        return Err(Error::Invariant("hyperbolic pairs do not match log_p R".into()));
    }
    let dropped = hb
        .pairs
        .iter()
        .enumerate()
        .fold(0, |best, (i, (_, x))| if swt(x) > swt(&hb.pairs[best].1) { i } else { best });
    let mut rows: Vec<Vec<u16>> = Vec::new();
    for (i, (z, x)) in hb.pairs.iter().enumerate() {
        rows.push(z.clone());
        if i != dropped {
            rows.push(x.clone());
        }
    }
    rows.extend(hb.residual.iter().cloned());
    let xs = AdditiveCode::from_generators(&hb.space, &rows)?;
    if xs.log_p_size() + 1 != code.x().log_p_size() {
        return Err(Error::Invariant("reduced X is not of index p".into()));
    }
    let purity = match (code.purity().value, &seed) {
        (DistanceValue::Exact(dp), Some(w)) if xs.contains(w)? => Some(WeightReport {
            metric: Metric::Symplectic,
            value: DistanceValue::Exact(dp),
            witness: Some(w.clone()),
            strategy: Strategy::Inherited,
            work: 0,
        }),
        _ => None,
    };
    let mut out = subsystem_with_purity(&xs, opts, purity)?;
    if out.log_p_k() != code.log_p_k()
        || out.log_p_r() + 1 != code.log_p_r()
        || out.y().log_p_size() != code.y().log_p_size() + 1
    {
        return Err(Error::Invariant("gauge reduction changed the wrong parameters".into()));
    }
    if let (Some(new), Some(old)) = (out.distance().value.exact(), code.distance().value.exact()) {
        if new < old {
            return Err(Error::Invariant(format!("reduction lowered the distance from {old} to {new}")));
        }
    }
    let mut provenance = code.provenance().to_vec();
    provenance.retain(|(k, _)| k != "reduced_from" && k != "dropped_pair");
    provenance.push(("reduced_from".into(), code.label()));
    provenance.push(("dropped_pair".into(), dropped.to_string()));
    out.provenance = provenance;
    Ok(out)
}

/// Applies [`reduce_gauge`] up to `steps` times (all gauge qudits when
/// `None`) and returns every intermediate code.
pub fn reduction_chain(
    code: &SubsystemCode,
    steps: Option<usize>,
    opts: &DistanceOptions,
) -> Result<Vec<SubsystemCode>> {
    let steps = steps.unwrap_or(code.log_p_r());
    if steps > code.log_p_r() {
        return Err(Error::Hypothesis(format!(
            "{} has only {} gauge qudits over GF(p)",
            code.label(),
            code.log_p_r()
        )));
    }
    let mut chain: Vec<SubsystemCode> = Vec::with_capacity(steps);
    for _ in 0..steps {
        let next = reduce_gauge(chain.last().unwrap_or(code), opts)?;
        chain.push(next);
    }
    Ok(chain)
}

/// The stabilizer code left after reducing every gauge qudit; the input
/// itself when R = 1.
pub fn to_stabilizer(code: &SubsystemCode, opts: &DistanceOptions) -> Result<SubsystemCode> {
    Ok(reduction_chain(code, None, opts)?.pop().unwrap_or_else(|| code.clone()))
}
