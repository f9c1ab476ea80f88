//! Existence and nonexistence checks for subsystem code parameters, all in
//! exact integer and rational arithmetic.
//!
//! * Gilbert–Varshamov counting (subsystem, stabilizer, and the joint
//!   subsystem/stabilizer statement).
//! * The linear programming bound on the symplectic weight distributions
//!   A_j of X and B_j of Y = X ∩ X^⊥s, decided by an exact phase-1 simplex.
//! * Singleton and Hamming bounds for pure codes.
//! * Syndrome-count comparison against MDS stabilizer codes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::simplex::{phase_one, rat, verify_farkas, Constraint, Outcome, Relation};

pub const MAX_LP_LENGTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    GvExists,
    LpInfeasible,
    SingletonViolated,
    HammingViolated,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::GvExists => "gv-exists",
            Verdict::LpInfeasible => "lp-infeasible",
            Verdict::SingletonViolated => "singleton-violated",
            Verdict::HammingViolated => "hamming-violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters ((n, K, R, d))_q with K = p^{log_p_k}, R = p^{log_p_r}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParameterQuery {
    pub n: usize,
    pub p: u32,
    pub m: u32,
    pub log_p_k: usize,
    pub log_p_r: usize,
    pub d: usize,
}

/// Splits a prime power into (p, m).
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl ParameterQuery {
    /// [[n, k, r, d]]_q with integer k and r.
    pub fn new(n: usize, q: u32, k: usize, r: usize, d: usize) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        Ok(ParameterQuery {
            n,
            p,
            m,
            log_p_k: k * m as usize,
            log_p_r: r * m as usize,
            d,
        })
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }

    fn nm(&self) -> usize {
        self.n * self.m as usize
    }

    fn p_pow(&self, e: usize) -> BigUint {
        BigUint::from(self.p).pow(e as u32)
    }

    /// k and r as integers, when K and R are powers of q.
    pub fn integer_kr(&self) -> Option<(usize, usize)> {
        let m = self.m as usize;
        (self.log_p_k % m == 0 && self.log_p_r % m == 0).then(|| (self.log_p_k / m, self.log_p_r / m))
    }

    pub fn label(&self) -> String {
        match self.integer_kr() {
            Some((k, r)) => format!("[[{},{},{},{}]]_{}", self.n, k, r, self.d, self.q()),
            None => format!(
                "(({},{}^{},{}^{},{}))_{}",
                self.n,
                self.p,
                self.log_p_k,
                self.p,
                self.log_p_r,
                self.d,
                self.q()
            ),
        }
    }

    fn require_kr_within(&self) -> Result<()> {
        if self.log_p_k + self.log_p_r > self.nm() {
            return Err(Error::Hypothesis(format!("K·R exceeds q^n for {}", self.label())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub query: ParameterQuery,
    pub check: &'static str,
    pub verdict: Verdict,
    /// Exact values behind the verdict.
    pub certificate: Vec<(String, String)>,
}

impl FeasibilityReport {
    fn new(query: &ParameterQuery, check: &'static str, verdict: Verdict) -> Self {
        FeasibilityReport {
            query: *query,
            check,
            verdict,
            certificate: Vec::new(),
        }
    }

    fn cert(mut self, key: &str, value: impl ToString) -> Self {
        self.certificate.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.certificate
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// K_j(r) = Σ_s (−1)^s (a−1)^{j−s} C(r, s) C(n−r, j−s) for an alphabet of
/// size `a`.
pub fn krawtchouk_alphabet(j: usize, r: usize, n: usize, a: u64) -> Result<BigInt> {
    if j > n || r > n {
        return Err(Error::InvalidParameters(format!("K_{j}({r}) outside 0..={n}")));
    }
    let base = BigInt::from(a) - BigInt::one();
    let mut sum = BigInt::zero();
    for s in 0..=j.min(r) {
        let term = BigInt::from(binom(r, s)) * BigInt::from(binom(n - r, j - s)) * base.pow((j - s) as u32);
        if s % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Krawtchouk polynomial for symplectic weights over GF(q): alphabet q².
pub fn krawtchouk(j: usize, r: usize, n: usize, q: u32) -> Result<BigInt> {
    krawtchouk_alphabet(j, r, n, q as u64 * q as u64)
}

/// Weight distribution of the dual of a code with distribution `dist`
/// (|C| = Σ dist) over an alphabet of size `a`. `None` when a coefficient is
/// not an integer, which cannot happen for a genuine code.
pub fn macwilliams_transform(dist: &[u64], a: u64) -> Option<Vec<BigInt>> {
    let n = dist.len() - 1;
    let size: BigInt = dist.iter().map(|&x| BigInt::from(x)).sum();
    (0..=n)
        .map(|j| {
            let s: BigInt = (0..=n)
                .map(|r| krawtchouk_alphabet(j, r, n, a).expect("in range") * BigInt::from(dist[r]))
                .sum();
            let (quot, rem) = s.div_rem(&size);
            rem.is_zero().then_some(quot)
        })
        .collect()
}

/// Σ_{j=lo}^{hi} C(n, j)(q²−1)^j.
fn ball(n: usize, q: u32, lo: usize, hi: usize) -> BigUint {
    let base = BigUint::from(q as u64 * q as u64 - 1);
    (lo..=hi.min(n)).map(|j| binom(n, j) * base.pow(j as u32)).sum()
}

fn gv_core(query: &ParameterQuery, check: &'static str) -> FeasibilityReport {
    let nm = query.nm();
    let big = query.p_pow(nm + query.log_p_k + query.log_p_r);
    let small = query.p_pow(nm + query.log_p_r - query.log_p_k);
    let sum = if query.d >= 2 { ball(query.n, query.q(), 1, query.d - 1) } else { BigUint::zero() };
    let lhs = &sum * (&big - &small);
    let rhs = BigUint::from(query.p - 1) * (query.p_pow(2 * nm) - 1u32);
    let verdict = if lhs < rhs { Verdict::GvExists } else { Verdict::Inconclusive };
    FeasibilityReport::new(query, check, verdict)
        .cert("lhs", &lhs)
        .cert("rhs", &rhs)
        .cert("relation", if lhs < rhs { "<" } else { ">=" })
}

fn require_gv(query: &ParameterQuery) -> Result<()> {
    if query.log_p_k + query.log_p_r == 0 {
        return Err(Error::Hypothesis("the counting bound needs K·R > 1".into()));
    }
    if query.d == 0 {
        return Err(Error::InvalidParameters("distance must be at least 1".into()));
    }
    query.require_kr_within()
}

/// Σ_{j=1}^{d−1} C(n,j)(q²−1)^j (q^n K R − q^n R/K) < (p−1)(q^{2n}−1)
/// guarantees an ((n, K, R, ≥d))_q subsystem code.
pub fn gv_subsystem(query: &ParameterQuery) -> Result<FeasibilityReport> {
    require_gv(query)?;
    Ok(gv_core(query, "gv"))
}

/// The counting bound with R = 1.
pub fn gv_stabilizer(query: &ParameterQuery) -> Result<FeasibilityReport> {
    if query.log_p_r != 0 {
        return Err(Error::Hypothesis("stabilizer codes have R = 1".into()));
    }
    if query.log_p_k == 0 {
        return Err(Error::Hypothesis("the counting bound needs K > 1".into()));
    }
    require_gv(query)?;
    Ok(gv_core(query, "gv-stabilizer"))
}

/// The same inequality read for both an [[n, k, r, ≥d]] subsystem code and
/// an [[n−r, k, ≥d]] stabilizer code; requires 0 < r < n.
pub fn joint_gv_check(query: &ParameterQuery) -> Result<FeasibilityReport> {
    let (k, r) = query
        .integer_kr()
        .ok_or_else(|| Error::InvalidParameters("joint check needs integer k and r".into()))?;
    if r == 0 || r >= query.n {
        return Err(Error::Hypothesis(format!("joint check needs 0 < r < n, got r = {r}")));
    }
    require_gv(query)?;
    let mut rep = gv_core(query, "joint");
    if rep.verdict == Verdict::GvExists {
        let q = query.q();
        let d = query.d;
        rep = rep
            .cert("subsystem", format!("[[{},{k},{r},>={d}]]_{q}", query.n))
            .cert("stabilizer", format!("[[{},{k},>={d}]]_{q}", query.n - r));
    }
    Ok(rep)
}

/// K·R ≤ q^{n−2d+2}, necessary for pure codes.
pub fn pure_singleton_check(query: &ParameterQuery) -> FeasibilityReport {
    let lhs = query.log_p_k + query.log_p_r;
    let bound = query.n as i64 - 2 * query.d as i64 + 2;
    let rhs = bound * query.m as i64;
    let ok = (lhs as i64) <= rhs;
    FeasibilityReport::new(
        query,
        "singleton",
        if ok { Verdict::Inconclusive } else { Verdict::SingletonViolated },
    )
    .cert("log_p_kr", lhs)
    .cert("log_p_bound", rhs)
    .cert("n_minus_2d_plus_2", bound)
    .cert("meets_with_equality", lhs as i64 == rhs)
    .cert("applies_to", "pure")
}

/// Σ_{j=0}^{⌊(d−1)/2⌋} C(n,j)(q²−1)^j ≤ q^n/(K·R), necessary for pure codes.
pub fn pure_hamming_check(query: &ParameterQuery) -> Result<FeasibilityReport> {
    query.require_kr_within()?;
    let t = query.d.saturating_sub(1) / 2;
    let lhs = ball(query.n, query.q(), 0, t);
    let rhs = query.p_pow(query.nm() - query.log_p_k - query.log_p_r);
    let ok = lhs <= rhs;
    Ok(FeasibilityReport::new(
        query,
        "hamming",
        if ok { Verdict::Inconclusive } else { Verdict::HammingViolated },
    )
    .cert("lhs", &lhs)
    .cert("rhs", &rhs)
    .cert("applies_to", "pure"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeComparison {
    /// n − k = 2d − 2 for the MDS [[k+2d−2, k, d]]_q stabilizer code.
    pub mds_syndromes: i64,
    /// n − k − r for the candidate subsystem code.
    pub candidate_syndromes: i64,
    /// k + r ≤ n − 2d + 2.
    pub precondition_holds: bool,
    pub candidate_needs_fewer: bool,
}

impl SyndromeComparison {
    /// A candidate inside the pure Singleton region never needs fewer
    /// syndrome measurements than the MDS code.
    pub fn consistent(&self) -> bool {
        !(self.precondition_holds && self.candidate_needs_fewer)
    }
}

/// Compares syndrome counts of the MDS stabilizer code [[k+2d−2, k, d]]_q
/// with an F_q-linear candidate [[n, k, r, d]]_q.
pub fn compare_syndromes(mds_k: usize, mds_d: usize, candidate: &ParameterQuery) -> Result<SyndromeComparison> {
    let (k, r) = candidate
        .integer_kr()
        .ok_or_else(|| Error::InvalidParameters("syndrome counts need integer k and r".into()))?;
    if mds_k != k || mds_d != candidate.d {
        return Err(Error::InvalidParameters(format!(
            "candidate [[{},{k},{r},{}]] does not share k and d with the MDS code",
            candidate.n, candidate.d
        )));
    }
    if mds_d == 0 {
        return Err(Error::InvalidParameters("distance must be at least 1".into()));
    }
    let mds = 2 * mds_d as i64 - 2;
    let cand = candidate.n as i64 - k as i64 - r as i64;
    Ok(SyndromeComparison {
        mds_syndromes: mds,
        candidate_syndromes: cand,
        precondition_holds: (k + r) as i64 <= candidate.n as i64 - 2 * candidate.d as i64 + 2,
        candidate_needs_fewer: cand < mds,
    })
}

/// The linear program on weight distributions: variables A_1..A_n then
/// B_1..B_n, with A_0 = B_0 = 1 moved to the right-hand sides.
pub fn lp_constraints(query: &ParameterQuery) -> Result<Vec<Constraint>> {
    let n = query.n;
    let nv = 2 * n;
    let qn = BigInt::from(query.p_pow(query.nm()));
    let kk = BigInt::from(query.p_pow(query.log_p_k));
    let rr = BigInt::from(query.p_pow(query.log_p_r));
    let size_x = BigRational::new(&qn * &rr, kk.clone());
    let size_y = BigRational::new(qn.clone(), &kk * &rr);
    let scale_a = size_x.recip();
    let scale_b = size_y.recip();
    let kraw: Vec<Vec<BigRational>> = (0..=n)
        .map(|j| {
            (0..=n)
                .map(|r| krawtchouk(j, r, n, query.q()).map(BigRational::from_integer))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let a = |j: usize| j - 1;
    let b = |j: usize| n + j - 1;
    let zero_row = || vec![BigRational::zero(); nv];
    let mut cs = Vec::new();

    let mut row = zero_row();
    (1..=n).for_each(|j| row[a(j)] = BigRational::one());
    cs.push(Constraint { coeffs: row, relation: Relation::Eq, rhs: size_x - rat(1) });
    let mut row = zero_row();
    (1..=n).for_each(|j| row[b(j)] = BigRational::one());
    cs.push(Constraint { coeffs: row, relation: Relation::Eq, rhs: size_y - rat(1) });

    for j in 1..=n {
        let mut row = zero_row();
        row[b(j)] = rat(1);
        row[a(j)] = rat(-1);
        cs.push(Constraint { coeffs: row, relation: Relation::Le, rhs: rat(0) });
    }
    // own_j − scale·Σ_r K_j(r)·other_r (= | ≤) 0: first own = A against the
    // transform of B, then own = B against the transform of A.
    for (own_off, other_off, scale) in [(0, n, &scale_b), (n, 0, &scale_a)] {
        for j in 0..=n {
            let mut row = zero_row();
            if j >= 1 {
                row[own_off + j - 1] += rat(1);
            }
            for r in 1..=n {
                row[other_off + r - 1] -= scale * &kraw[j][r];
            }
            let mut rhs = scale * &kraw[j][0];
            if j == 0 {
                rhs -= rat(1);
            }
            let relation = if j < query.d { Relation::Eq } else { Relation::Le };
            cs.push(Constraint { coeffs: row, relation, rhs });
        }
    }
    Ok(cs)
}

/// Decides the LP relaxation. Infeasible means no ((n, K, R, d))_q code
/// with K > 1 exists; feasible proves nothing.
pub fn lp_feasible(query: &ParameterQuery) -> Result<FeasibilityReport> {
    if query.log_p_k == 0 {
        return Err(Error::Hypothesis("the LP bound needs K > 1".into()));
    }
    if query.n == 0 || query.n > MAX_LP_LENGTH {
        return Err(Error::TooLarge(format!("LP length {} outside 1..={MAX_LP_LENGTH}", query.n)));
    }
    if query.d == 0 {
        return Err(Error::InvalidParameters("distance must be at least 1".into()));
    }
    query.require_kr_within()?;
    let cs = lp_constraints(query)?;
    let nv = 2 * query.n;
    let res = phase_one(nv, &cs);
    let rep = match res.outcome {
        Outcome::Infeasible { objective, farkas } => {
            if !verify_farkas(nv, &cs, &farkas) {
                return Err(Error::Invariant("LP infeasibility certificate failed to verify".into()));
            }
            let ray = farkas.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            let rhs: BigRational = cs.iter().zip(&farkas).map(|(c, y)| &c.rhs * y).sum();
            FeasibilityReport::new(query, "lp", Verdict::LpInfeasible)
                .cert("phase1_objective", objective)
                .cert("farkas_rhs", rhs)
                .cert("farkas", ray)
        }
        Outcome::Feasible(x) => {
            if !crate::simplex::satisfies(&cs, &x) {
                return Err(Error::Invariant("LP point violates its constraints".into()));
            }
            let a_small: BigRational = x[..query.d.saturating_sub(1).min(query.n)].iter().sum();
            FeasibilityReport::new(query, "lp", Verdict::Inconclusive)
                .cert("phase1_objective", 0)
                .cert("sum_a_below_d_at_point", a_small)
        }
    };
    Ok(rep.cert("constraints", cs.len()).cert("pivots", res.pivots))
}

/// The twelve LP families ruled out for every admissible r ≥ 1: (n, k, d, q).
pub const LP_TABLE: [(usize, usize, usize, u32); 12] = [
    (4, 2, 2, 2),
    (5, 1, 3, 2),
    (4, 2, 2, 3),
    (5, 1, 3, 3),
    (9, 3, 4, 3),
    (9, 5, 3, 3),
    (10, 6, 3, 3),
    (4, 2, 2, 4),
    (5, 1, 3, 4),
    (9, 3, 4, 4),
    (9, 5, 3, 4),
    (10, 6, 3, 4),
];

/// Exact value as f64, for display only.
pub fn approx(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// True when `v` is a nonnegative integer.
pub fn is_natural(v: &BigRational) -> bool {
    v.is_integer() && !v.is_negative()
}
