//! Phase-1 simplex over exact rationals with Bland's rule, for deciding
//! feasibility of `{x ≥ 0 : a_i·x (≤ | =) b_i}`.
//!
//! An infeasible system comes with Farkas multipliers y: y_i ≥ 0 on `≤`
//! rows, yᵀA ≥ 0 columnwise and yᵀb < 0. [`verify_farkas`] checks such a
//! certificate independently of the tableau.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// A feasible point.
    Feasible(Vec<BigRational>),
    /// Optimal phase-1 objective (positive) and Farkas multipliers.
    Infeasible {
        objective: BigRational,
        farkas: Vec<BigRational>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOne {
    pub outcome: Outcome,
    pub pivots: usize,
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Runs phase 1 on `constraints` over `nvars` nonnegative variables.
///
/// The tableau is kept fraction-free: every row is scaled to integers up
/// front, and after each pivot the entries are integers over the common
/// denominator `den` (the previous pivot), so updates divide exactly.
pub fn phase_one(nvars: usize, constraints: &[Constraint]) -> PhaseOne {
    let m = constraints.len();
    let nslack = constraints.iter().filter(|c| c.relation == Relation::Le).count();
    let art0 = nvars + nslack;
    let cols = art0 + m;
    // Row i of the tableau is factors[i] times constraint i.
    let mut factors = Vec::with_capacity(m);
    let mut t: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    let mut slack = nvars;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), nvars, "constraint width");
        let scale = c
            .coeffs
            .iter()
            .chain(std::iter::once(&c.rhs))
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let factor = if c.rhs.is_negative() { -scale } else { scale };
        let mut row = vec![BigInt::zero(); cols + 1];
        for (dst, v) in row.iter_mut().zip(&c.coeffs) {
            *dst = (v * &factor).to_integer();
        }
        if c.relation == Relation::Le {
            row[slack] = if factor.is_negative() { -BigInt::one() } else { BigInt::one() };
            slack += 1;
        }
        row[cols] = (&c.rhs * &factor).to_integer();
        row[art0 + i] = BigInt::one();
        factors.push(factor);
        t.push(row);
    }
    // Reduced costs of min Σ artificials, last entry −z.
    let mut cost = vec![BigInt::zero(); cols + 1];
    for row in &t {
        for j in (0..art0).chain(std::iter::once(cols)) {
            cost[j] -= &row[j];
        }
    }
    let mut den = BigInt::one();
    let mut basis: Vec<usize> = (art0..cols).collect();
    let mut pivots = 0;
    while let Some(pc) = (0..cols).find(|&j| cost[j].is_negative()) {
        // Ratios rhs_i / t[i][pc] share the denominator, so compare by
        // cross-multiplication.
        let mut best: Option<usize> = None;
        for (i, row) in t.iter().enumerate() {
            if row[pc].is_positive() {
                let better = match best {
                    None => true,
                    Some(b) => {
                        let lhs = &row[cols] * &t[b][pc];
                        let rhs = &t[b][cols] * &row[pc];
                        lhs < rhs || (lhs == rhs && basis[i] < basis[b])
                    }
                };
                if better {
                    best = Some(i);
                }
            }
        }
        // Phase 1 is bounded below by zero, so some row always qualifies.
        let pr = best.expect("phase 1 cannot be unbounded");
        let piv = t[pr][pc].clone();
        let prow = t[pr].clone();
        let update = |row: &mut Vec<BigInt>| {
            let f = row[pc].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                let mut x = &*v * &piv;
                if !f.is_zero() && !p.is_zero() {
                    x -= &f * p;
                }
                *v = x / &den;
            }
        };
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr {
                update(row);
            }
        }
        update(&mut cost);
        den = piv;
        basis[pr] = pc;
        pivots += 1;
    }
    let objective = BigRational::new(-cost[cols].clone(), den.clone());
    let outcome = if objective.is_zero() {
        let mut x = vec![BigRational::zero(); nvars];
        for (i, &b) in basis.iter().enumerate() {
            if b < nvars {
                x[b] = BigRational::new(t[i][cols].clone(), den.clone());
            }
        }
        Outcome::Feasible(x)
    } else {
        // The simplex multiplier of tableau row i is 1 − r_art(i); row i is
        // factors[i] times the constraint.
        let farkas = (0..m)
            .map(|i| {
                let pi = BigRational::one() - BigRational::new(cost[art0 + i].clone(), den.clone());
                -(pi * BigRational::from_integer(factors[i].clone()))
            })
            .collect();
        Outcome::Infeasible { objective, farkas }
    };
    PhaseOne { outcome, pivots }
}

/// Checks a Farkas certificate of infeasibility for `constraints`.
pub fn verify_farkas(nvars: usize, constraints: &[Constraint], y: &[BigRational]) -> bool {
    if y.len() != constraints.len() {
        return false;
    }
    let signs_ok = constraints
        .iter()
        .zip(y)
        .all(|(c, yi)| c.relation == Relation::Eq || !yi.is_negative());
    let cols_ok = (0..nvars).all(|j| {
        let s: BigRational = constraints.iter().zip(y).map(|(c, yi)| &c.coeffs[j] * yi).sum();
        !s.is_negative()
    });
    let rhs: BigRational = constraints.iter().zip(y).map(|(c, yi)| &c.rhs * yi).sum();
    signs_ok && cols_ok && rhs.is_negative()
}

/// Checks that `x` is a nonnegative solution of `constraints`.
pub fn satisfies(constraints: &[Constraint], x: &[BigRational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && constraints.iter().all(|c| {
            let lhs: BigRational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
}
