//! Inner products, weights, and the isometry φ between GF(q)^{2n} with the
//! trace-symplectic form and GF(q²)^n with the trace-alternating form.

use std::sync::Arc;

use crate::codespace::{AdditiveCode, Ambient, CodeSpace, Scalars};
use crate::error::{Error, Result};
use crate::galois::{ExtensionPair, FieldSpec};

fn halves(v: &[u16]) -> Result<(&[u16], &[u16])> {
    if v.len() % 2 != 0 {
        return Err(Error::Incompatible(format!(
            "symplectic vector of odd length {}",
            v.len()
        )));
    }
    Ok(v.split_at(v.len() / 2))
}

fn same_len(a: &[u16], b: &[u16]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::Incompatible(format!("lengths {} and {}", a.len(), b.len())))
    }
}

fn check_elements(f: &FieldSpec, v: &[u16]) -> Result<()> {
    match v.iter().find(|&&x| !f.contains(x)) {
        Some(x) => Err(Error::InvalidParameters(format!(
            "{x} is not an element of GF({})",
            f.order()
        ))),
        None => Ok(()),
    }
}

/// ⟨(a|b), (a'|b')⟩_s = tr(a'·b − a·b'), a prime-field encoding.
pub fn symplectic_product(f: &FieldSpec, u: &[u16], v: &[u16]) -> Result<u16> {
    same_len(u, v)?;
    check_elements(f, u)?;
    check_elements(f, v)?;
    let (a, b) = halves(u)?;
    let (a2, b2) = halves(v)?;
    let mut s = 0;
    for i in 0..a.len() {
        s = f.add(s, f.sub(f.mul(a2[i], b[i]), f.mul(a[i], b2[i])));
    }
    Ok(f.trace(s))
}

/// Number of i with (x_i, y_i) ≠ (0, 0).
pub fn swt(v: &[u16]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[n + i] != 0).count()
}

/// Hamming weight.
pub fn wt(u: &[u16]) -> usize {
    u.iter().filter(|&&x| x != 0).count()
}

/// Σ x_i^q y_i.
pub fn hermitian_product(pair: &ExtensionPair, x: &[u16], y: &[u16]) -> Result<u16> {
    same_len(x, y)?;
    let e = pair.ext();
    check_elements(e, x)?;
    check_elements(e, y)?;
    Ok(x.iter()
        .zip(y)
        .fold(0, |acc, (&a, &b)| e.add(acc, e.mul(pair.conjugate(a), b))))
}

/// tr_{q/p}[(⟨u|v⟩_h − ⟨v|u⟩_h)/(β² − β^{2q})], a prime-field encoding.
pub fn trace_alternating_product(pair: &ExtensionPair, u: &[u16], v: &[u16]) -> Result<u16> {
    let e = pair.ext();
    let h = e.sub(hermitian_product(pair, u, v)?, hermitian_product(pair, v, u)?);
    let s = e.mul(h, pair.alternating_scale());
    let base = pair
        .project(s)
        .ok_or_else(|| Error::Invariant("alternating value outside GF(q)".into()))?;
    Ok(pair.base().trace(base))
}

/// φ(a|b)_i = a_i·β + b_i·β^q.
pub fn phi(pair: &ExtensionPair, v: &[u16]) -> Result<Vec<u16>> {
    check_elements(pair.base(), v)?;
    let (a, b) = halves(v)?;
    Ok(a.iter()
        .zip(b)
        .map(|(&x, &y)| pair.from_normal_coordinates(x, y))
        .collect())
}

pub fn phi_inv(pair: &ExtensionPair, u: &[u16]) -> Result<Vec<u16>> {
    check_elements(pair.ext(), u)?;
    let (a, b): (Vec<u16>, Vec<u16>) = u.iter().map(|&x| pair.normal_coordinates(x)).unzip();
    Ok(a.into_iter().chain(b).collect())
}

/// φ applied to a code in the symplectic ambient over GF(q). Additive codes
/// stay additive, GF(q)-linear codes stay GF(q)-linear.
pub fn phi_code(pair: &Arc<ExtensionPair>, code: &AdditiveCode) -> Result<AdditiveCode> {
    let sp = code.space();
    if sp.ambient() != Ambient::Symplectic || **sp.alphabet() != **pair.base() {
        return Err(Error::Incompatible(
            "φ needs a code in the symplectic ambient over the base field".into(),
        ));
    }
    let target = CodeSpace::quadratic(pair, sp.n(), sp.scalars())?;
    let rows = code
        .generators()
        .iter()
        .map(|g| phi(pair, g))
        .collect::<Result<Vec<_>>>()?;
    AdditiveCode::from_generators(&target, &rows)
}

/// φ⁻¹ applied to a code over GF(q²). A GF(q²)-linear code comes back as a
/// GF(q)-linear code, since φ only commutes with GF(q) scalars.
pub fn phi_inv_code(code: &AdditiveCode) -> Result<AdditiveCode> {
    let sp = code.space();
    let pair = sp
        .pair()
        .ok_or_else(|| Error::Incompatible("φ⁻¹ needs a code over GF(q²)".into()))?;
    let code = match sp.scalars() {
        Scalars::QuadraticLinear => code.restrict_scalars(Scalars::Linear)?,
        _ => code.clone(),
    };
    let target = CodeSpace::symplectic(pair.base(), sp.n(), code.space().scalars())?;
    let rows = code
        .generators()
        .iter()
        .map(|g| phi_inv(pair, g))
        .collect::<Result<Vec<_>>>()?;
    AdditiveCode::from_generators(&target, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codespace::Form;
    use crate::galois::normal_basis_pick;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair(p: u32, m: u32) -> Arc<ExtensionPair> {
        normal_basis_pick(&FieldSpec::new(p, m, None).unwrap()).unwrap()
    }

    fn random_vec(rng: &mut ChaCha8Rng, len: usize, order: u32) -> Vec<u16> {
        (0..len).map(|_| rng.gen_range(0..order) as u16).collect()
    }

    #[test]
    fn symplectic_single_term() {
        let f = FieldSpec::prime(2).unwrap();
        assert_eq!(symplectic_product(&f, &[1, 0], &[0, 1]).unwrap(), 1);
        assert!(symplectic_product(&f, &[1, 0], &[0, 1, 0, 0]).is_err());
    }

    #[test]
    fn symplectic_alternating_and_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = FieldSpec::prime(3).unwrap();
        for _ in 0..1000 {
            let u = random_vec(&mut rng, 8, 3);
            let v = random_vec(&mut rng, 8, 3);
            assert_eq!(symplectic_product(&f, &u, &u).unwrap(), 0);
            let uv = symplectic_product(&f, &u, &v).unwrap();
            let vu = symplectic_product(&f, &v, &u).unwrap();
            assert_eq!(uv, f.neg(vu));
        }
    }

    #[test]
    fn swt_examples() {
        assert_eq!(swt(&[1, 0, 1, 1, 0, 0]), 2);
        assert_eq!(swt(&[0; 6]), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let v = random_vec(&mut rng, 10, 2);
            let both = (0..5).any(|i| v[i] != 0 && v[5 + i] != 0);
            assert!(swt(&v) <= wt(&v));
            assert_eq!(swt(&v) == wt(&v), !both);
        }
    }

    #[test]
    fn hermitian_all_ones_char2() {
        let pr = pair(2, 1);
        assert_eq!(hermitian_product(&pr, &[1; 6], &[1; 6]).unwrap(), 0);
    }

    #[test]
    fn alternating_is_alternating() {
        let pr = pair(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let u = random_vec(&mut rng, 5, 4);
            assert_eq!(trace_alternating_product(&pr, &u, &u).unwrap(), 0);
        }
    }

    #[test]
    fn alternating_nondegenerate_exhaustive() {
        let pr = pair(2, 1);
        for n in 1..=3usize {
            let total = 4usize.pow(n as u32);
            for i in 0..n {
                for g in 1..4u16 {
                    let mut u = vec![0u16; n];
                    u[i] = g;
                    let hit = (0..total).any(|mut code| {
                        let v: Vec<u16> = (0..n)
                            .map(|_| {
                                let x = (code % 4) as u16;
                                code /= 4;
                                x
                            })
                            .collect();
                        trace_alternating_product(&pr, &u, &v).unwrap() != 0
                    });
                    assert!(hit);
                }
            }
        }
    }

    #[test]
    fn phi_zero_and_round_trip() {
        let pr = pair(3, 1);
        assert_eq!(phi(&pr, &[0; 8]).unwrap(), vec![0; 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..200 {
            let v = random_vec(&mut rng, 8, 3);
            assert_eq!(phi_inv(&pr, &phi(&pr, &v).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn phi_isometry_weight_and_form() {
        for (p, m) in [(2, 1), (3, 1), (2, 2)] {
            let pr = pair(p, m);
            let q = pr.q();
            let f = pr.base();
            let mut rng = ChaCha8Rng::seed_from_u64(11 + q as u64);
            for trial in 0..2000 {
                let n = 1 + trial % 8;
                let u = random_vec(&mut rng, 2 * n, q);
                let v = random_vec(&mut rng, 2 * n, q);
                let pu = phi(&pr, &u).unwrap();
                let pv = phi(&pr, &v).unwrap();
                assert_eq!(wt(&pu), swt(&u));
                assert_eq!(
                    trace_alternating_product(&pr, &pu, &pv).unwrap(),
                    symplectic_product(f, &u, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn code_transport_preserves_duals() {
        let pr = pair(2, 1);
        let sp = CodeSpace::quadratic(&pr, 3, Scalars::Additive).unwrap();
        let c = AdditiveCode::from_generators(&sp, &[vec![1, 2, 0], vec![0, 3, 3]]).unwrap();
        let x = phi_inv_code(&c).unwrap();
        let xd = x.dual(Form::TraceSymplectic).unwrap();
        let cd = c.dual(Form::TraceAlternating).unwrap();
        assert_eq!(phi_code(&pr, &xd).unwrap(), cd);
        assert_eq!(phi_code(&pr, &x).unwrap(), c);
    }
}
