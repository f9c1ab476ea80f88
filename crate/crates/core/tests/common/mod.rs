//! Independent oracles shared by the integration tests and the acceptance
//! target. Nothing here calls the library routine it is checking.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subsystem_codes::bounds::{gv_subsystem, pure_singleton_check, ParameterQuery, Verdict};
use subsystem_codes::codespace::{AdditiveCode, CodeSpace, Form, Metric, Scalars};
use subsystem_codes::construct::{gv_random_code, SubsystemCode};
use subsystem_codes::distance::{min_weight, weight_distribution, DistanceOptions, DistanceValue};
use subsystem_codes::forms::{phi, phi_inv, swt, symplectic_product, trace_alternating_product, wt};
use subsystem_codes::galois::{ExtensionPair, FieldSpec};
use subsystem_codes::reproduce::quadratic_pair;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u32) -> Arc<FieldSpec> {
    let (p, m) = subsystem_codes::bounds::prime_power(q).expect("prime power");
    FieldSpec::new(p, m, None).expect("supported field")
}

pub fn pair(q: u32) -> Arc<ExtensionPair> {
    quadratic_pair(q).expect("quadratic pair")
}

pub fn random_vec(rng: &mut impl Rng, len: usize, order: u32) -> Vec<u16> {
    (0..len).map(|_| rng.gen_range(0..order) as u16).collect()
}

/// One φ trial on random u, v ∈ GF(q)^{2n}: weights, forms and the inverse.
pub fn phi_trial(pair: &ExtensionPair, n: usize, rng: &mut impl Rng) -> Result<(), String> {
    let q = pair.q();
    let u = random_vec(rng, 2 * n, q);
    let v = random_vec(rng, 2 * n, q);
    let (pu, pv) = (phi(pair, &u).unwrap(), phi(pair, &v).unwrap());
    if swt(&u) != wt(&pu) {
        return Err(format!("q={q}: swt {} vs wt {} for {u:?}", swt(&u), wt(&pu)));
    }
    let s = symplectic_product(pair.base(), &u, &v).unwrap();
    let a = trace_alternating_product(pair, &pu, &pv).unwrap();
    if s != a {
        return Err(format!("q={q}: forms {s} vs {a} for {u:?}, {v:?}"));
    }
    if phi_inv(pair, &pu).unwrap() != u {
        return Err(format!("q={q}: φ⁻¹φ differs on {u:?}"));
    }
    Ok(())
}

pub fn phi_trials(q: u32, trials: usize, seed: u64) -> Result<usize, String> {
    let pair = pair(q);
    let mut rng = rng(seed);
    for _ in 0..trials {
        let n = rng.gen_range(1..=6);
        phi_trial(&pair, n, &mut rng)?;
    }
    Ok(trials)
}

/// Span of up to `max_rows` random rows, GF(q)-linear in the plain ambient.
pub fn random_linear_code(rng: &mut impl Rng, f: &Arc<FieldSpec>, n: usize, max_rows: usize) -> AdditiveCode {
    let space = CodeSpace::plain(f, n, Scalars::Linear).unwrap();
    let rows: Vec<Vec<u16>> = (0..rng.gen_range(0..=max_rows))
        .map(|_| random_vec(rng, n, f.order()))
        .collect();
    AdditiveCode::from_generators(&space, &rows).unwrap()
}

/// Span of random rows in the additive symplectic ambient.
pub fn random_additive_code(rng: &mut impl Rng, f: &Arc<FieldSpec>, n: usize, max_rows: usize) -> AdditiveCode {
    let space = CodeSpace::symplectic(f, n, Scalars::Additive).unwrap();
    let rows: Vec<Vec<u16>> = (0..rng.gen_range(0..=max_rows))
        .map(|_| random_vec(rng, 2 * n, f.order()))
        .collect();
    AdditiveCode::from_generators(&space, &rows).unwrap()
}

/// (C₁ × C₂)^⊥s = C₂^⊥ × C₁^⊥, plus direct orthogonality of the generators.
pub fn product_duality_trial(rng: &mut impl Rng, q: u32, n: usize) -> Result<(), String> {
    let f = field(q);
    let c1 = random_linear_code(rng, &f, n, n);
    let c2 = random_linear_code(rng, &f, n, n);
    let lhs = AdditiveCode::product(&c1, &c2).unwrap().dual(Form::TraceSymplectic).unwrap();
    let rhs = AdditiveCode::product(
        &c2.dual(Form::Euclidean).unwrap(),
        &c1.dual(Form::Euclidean).unwrap(),
    )
    .unwrap();
    if lhs != rhs {
        return Err(format!("q={q} n={n}: product duality fails for dims {} and {}", c1.dim(), c2.dim()));
    }
    let prod = AdditiveCode::product(&c1, &c2).unwrap();
    for g in prod.generators() {
        for h in rhs.generators() {
            if symplectic_product(&f, &g, &h).unwrap() != 0 {
                return Err(format!("q={q} n={n}: generators not orthogonal"));
            }
        }
    }
    Ok(())
}

pub fn product_duality_trials(trials: usize, seed: u64) -> Result<usize, String> {
    let mut rng = rng(seed);
    for t in 0..trials {
        let q = [2, 3, 4][t % 3];
        let n = rng.gen_range(1..=6);
        product_duality_trial(&mut rng, q, n)?;
    }
    Ok(trials)
}

/// Rank over GF(p) of a matrix of prime-field encodings.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|&i| m[rank][c] * i % p == 1).unwrap();
        let prow: Vec<u64> = m[rank].iter().map(|&x| x * inv % p).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] % p != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

/// log_p |X ∩ X^⊥s| from the Gram matrix of an F_p-basis of X.
pub fn radical_log_size(x: &AdditiveCode) -> usize {
    let f = x.space().alphabet();
    let p = f.characteristic() as u64;
    let basis = x.restrict_scalars(Scalars::Additive).unwrap().generators();
    let gram: Vec<Vec<u64>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| symplectic_product(f, u, v).unwrap() as u64).collect())
        .collect();
    basis.len() - rank_mod_p(gram, p)
}

/// Builder trials at one parameter set; returns the number of distinct codes.
pub fn builder_trials(q: u32, n: usize, r: usize, s: usize, seeds: std::ops::Range<u64>) -> Result<usize, String> {
    let f = field(q);
    let mut seen = HashSet::new();
    for seed in seeds {
        let x = gv_random_code(&f, n, r, s, seed).map_err(|e| e.to_string())?;
        let size = x.log_p_size();
        let radical = radical_log_size(&x);
        let y = x.intersect(&x.dual(Form::TraceSymplectic).unwrap()).unwrap();
        if size != r + 2 * s || radical != r || y.log_p_size() != r {
            return Err(format!(
                "q={q} n={n} r={r} s={s} seed={seed}: log_p|X|={size} radical {radical}/{}",
                y.log_p_size()
            ));
        }
        if x.generators() != gv_random_code(&f, n, r, s, seed).unwrap().generators() {
            return Err(format!("seed {seed} is not deterministic"));
        }
        seen.insert(x.generators());
    }
    Ok(seen.len())
}

/// K_j(r) over an alphabet of size a, as the coefficient of z^j in
/// (1 + (a−1)z)^{n−r} (1 − z)^r.
pub fn krawtchouk_poly(j: usize, r: usize, n: usize, a: u64) -> BigInt {
    let mut poly = vec![BigInt::one()];
    let mul = |poly: &Vec<BigInt>, c1: BigInt| {
        let mut out = vec![BigInt::zero(); poly.len() + 1];
        for (i, x) in poly.iter().enumerate() {
            out[i] += x;
            out[i + 1] += x * &c1;
        }
        out
    };
    for _ in 0..n - r {
        poly = mul(&poly, BigInt::from(a) - 1);
    }
    for _ in 0..r {
        poly = mul(&poly, BigInt::from(-1));
    }
    poly.get(j).cloned().unwrap_or_default()
}

/// MacWilliams consistency of C and its dual under `form`, weights in
/// `metric` over an alphabet of size `a`. The dual distribution is
/// enumerated when small enough; otherwise its first nonzero weight is
/// compared with an exact minimum-weight search.
pub fn macwilliams_check(c: &AdditiveCode, form: Form, metric: Metric, a: u64) -> Result<(), String> {
    let dist = weight_distribution(c, metric).map_err(|e| e.to_string())?;
    let n = dist.len() - 1;
    let size: BigInt = dist.iter().map(|&x| BigInt::from(x)).sum();
    let ambient = BigInt::from(a).pow(n as u32);
    let transformed: Vec<BigInt> = (0..=n)
        .map(|j| {
            let s: BigInt = (0..=n).map(|r| krawtchouk_poly(j, r, n, a) * BigInt::from(dist[r])).sum();
            if (&s % &size).is_zero() {
                Ok(s / &size)
            } else {
                Err(format!("non-integral dual count at weight {j}"))
            }
        })
        .collect::<Result<_, _>>()?;
    if transformed[0] != BigInt::one() || transformed.iter().any(|x| x.is_negative()) {
        return Err(format!("invalid dual distribution {transformed:?}"));
    }
    let total: BigInt = transformed.iter().sum();
    if total * &size != ambient {
        return Err("dual size does not match |C|·|C^⊥| = |ambient|".into());
    }
    let lib = subsystem_codes::bounds::macwilliams_transform(&dist, a).ok_or("library transform not integral")?;
    if lib != transformed {
        return Err("library transform differs from the polynomial oracle".into());
    }
    let dual = c.dual(form).map_err(|e| e.to_string())?;
    match weight_distribution(&dual, metric) {
        Ok(d) => {
            let direct: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
            if direct != transformed {
                return Err(format!("dual distribution {direct:?} vs transform {transformed:?}"));
            }
        }
        Err(_) => {
            let first = (1..=n).find(|&j| !transformed[j].is_zero());
            let found = min_weight(&dual, metric, &DistanceOptions::default()).map_err(|e| e.to_string())?;
            let expected = first.map_or(DistanceValue::Empty, DistanceValue::Exact);
            if found.value != expected {
                return Err(format!("dual minimum weight {} vs transform {first:?}", found.value));
            }
        }
    }
    Ok(())
}

/// The counting-bound inequality evaluated from scratch:
/// Σ_{j=1}^{d−1} C(n,j)(q²−1)^j · (q^{n+k+r} − q^{n+r−k}) against
/// (p−1)(q^{2n}−1).
pub fn gv_oracle(n: usize, q: u32, p: u32, k: usize, r: usize, d: usize) -> (BigUint, BigUint) {
    let qb = BigUint::from(q);
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    for j in 1..d.min(n + 1) {
        binom = binom * BigUint::from(n + 1 - j) / BigUint::from(j);
        sum += &binom * BigUint::from(q * q - 1).pow(j as u32);
    }
    let lhs = sum * (qb.pow((n + k + r) as u32) - qb.pow((n + r - k) as u32));
    let rhs = BigUint::from(p - 1) * (qb.pow(2 * n as u32) - 1u32);
    (lhs, rhs)
}

/// Compares gv_subsystem with the oracle on a grid; returns points checked.
pub fn gv_grid(max_n: usize, qs: &[u32]) -> Result<usize, String> {
    let mut checked = 0;
    for &q in qs {
        let p = subsystem_codes::bounds::prime_power(q).unwrap().0;
        for n in 1..=max_n {
            for k in 0..=n {
                for r in 0..=n - k {
                    if k + r == 0 {
                        continue;
                    }
                    for d in 1..=n {
                        let query = ParameterQuery::new(n, q, k, r, d).unwrap();
                        let rep = gv_subsystem(&query).map_err(|e| e.to_string())?;
                        let (lhs, rhs) = gv_oracle(n, q, p, k, r, d);
                        let exists = lhs < rhs;
                        if rep.get("lhs") != Some(lhs.to_string().as_str())
                            || rep.get("rhs") != Some(rhs.to_string().as_str())
                            || (rep.verdict == Verdict::GvExists) != exists
                        {
                            return Err(format!("{}: library {:?} vs oracle {lhs} {rhs}", query.label(), rep.certificate));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Every ((n, q^{n−2d+2}, R > 1, d)) point with n ≤ max_n must violate the
/// pure Singleton bound.
pub fn mds_gauge_sweep(max_n: usize, qs: &[u32]) -> Result<usize, String> {
    let mut checked = 0;
    for &q in qs {
        for n in 1..=max_n {
            for d in 1..=(n + 2) / 2 {
                let k = n + 2 - 2 * d;
                if k == 0 {
                    continue;
                }
                for r in 1..=n - k {
                    let query = ParameterQuery::new(n, q, k, r, d).unwrap();
                    if pure_singleton_check(&query).verdict != Verdict::SingletonViolated {
                        return Err(format!("{} passes the pure Singleton bound", query.label()));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// log_p(K R) ≤ m(n − 2d + 2) for a code whose distance is exact.
pub fn meets_pure_singleton(code: &SubsystemCode) -> Option<bool> {
    let d = code.distance().value.exact()? as i64;
    let m = code.field().degree() as i64;
    Some(((code.log_p_k() + code.log_p_r()) as i64) <= m * (code.n() as i64 - 2 * d + 2))
}

/// K = q^{n−2d+2} with an exact distance.
pub fn is_singleton_extremal_k(code: &SubsystemCode) -> bool {
    let m = code.field().degree() as i64;
    match code.distance().value.exact() {
        Some(d) => code.log_p_k() as i64 == m * (code.n() as i64 - 2 * d as i64 + 2),
        None => false,
    }
}

/// One LP row: coefficients on (A_1..A_n, B_1..B_n), equality flag, rhs.
pub type LpRow = (Vec<BigRational>, bool, BigRational);

/// The LP relaxation for an ((n, K, R, d))_q code built from its
/// definition, in the library's row order: the two size equalities,
/// B_j ≤ A_j, then A_j against the transform of B and B_j against the
/// transform of A for j = 0..n (equal below d, at most from d on).
pub fn lp_rows(n: usize, q: u32, log_p_k: usize, log_p_r: usize, d: usize) -> Vec<LpRow> {
    let (p, m) = subsystem_codes::bounds::prime_power(q).unwrap();
    let pp = |e: usize| BigInt::from(p).pow(e as u32);
    let qn = pp(n * m as usize);
    let (kk, rr) = (pp(log_p_k), pp(log_p_r));
    let size_x = BigRational::new(&qn * &rr, kk.clone());
    let size_y = BigRational::new(qn, &kk * &rr);
    let a = (q as u64).pow(2);
    let kr = |j: usize, r: usize| BigRational::from_integer(krawtchouk_poly(j, r, n, a));
    let zero = || vec![BigRational::zero(); 2 * n];
    let mut rows = Vec::new();

    let mut row = zero();
    row[..n].iter_mut().for_each(|x| *x = BigRational::one());
    rows.push((row, true, &size_x - BigRational::one()));
    let mut row = zero();
    row[n..].iter_mut().for_each(|x| *x = BigRational::one());
    rows.push((row, true, &size_y - BigRational::one()));
    for j in 1..=n {
        let mut row = zero();
        row[n + j - 1] = BigRational::one();
        row[j - 1] = -BigRational::one();
        rows.push((row, false, BigRational::zero()));
    }
    // A_j = (1/|Y|) Σ K_j(r) B_r and B_j = (1/|X|) Σ K_j(r) A_r, with the
    // r = 0 and own j = 0 terms moved to the right-hand side.
    for (own, other, size) in [(0, n, &size_y), (n, 0, &size_x)] {
        for j in 0..=n {
            let mut row = zero();
            if j > 0 {
                row[own + j - 1] += BigRational::one();
            }
            for r in 1..=n {
                row[other + r - 1] -= kr(j, r) / size;
            }
            let mut rhs = kr(j, 0) / size;
            if j == 0 {
                rhs -= BigRational::one();
            }
            rows.push((row, j < d, rhs));
        }
    }
    rows
}

/// y proves infeasibility of {Ax (=|≤) b, x ≥ 0} when y ≥ 0 on ≤ rows,
/// yᵀA ≥ 0 and yᵀb < 0.
pub fn check_farkas(rows: &[LpRow], y: &[BigRational]) -> Result<(), String> {
    if rows.len() != y.len() {
        return Err(format!("{} rows but {} multipliers", rows.len(), y.len()));
    }
    let nv = rows[0].0.len();
    for ((_, eq, _), yi) in rows.iter().zip(y) {
        if !eq && yi.is_negative() {
            return Err("negative multiplier on an inequality".into());
        }
    }
    for v in 0..nv {
        let s: BigRational = rows.iter().zip(y).map(|((c, _, _), yi)| &c[v] * yi).sum();
        if s.is_negative() {
            return Err(format!("yᵀA negative in column {v}"));
        }
    }
    let rhs: BigRational = rows.iter().zip(y).map(|((_, _, b), yi)| b * yi).sum();
    if !rhs.is_negative() {
        return Err(format!("yᵀb = {rhs} is not negative"));
    }
    Ok(())
}

pub fn parse_farkas(s: &str) -> Vec<BigRational> {
    s.split_whitespace().map(|t| t.parse().expect("rational")).collect()
}
