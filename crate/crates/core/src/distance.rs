//! Exact minimum weights of codes and of differences `big ∖ small`.
//!
//! Three exhaustive strategies share one contract: the smallest weight
//! below the cap is returned exactly with a witness, otherwise the result is
//! a certified lower bound equal to the cap.
//!
//! * support-kernel walks supports in colex order and keeps the rank of the
//!   parity-check columns on the current support in an incremental
//!   eliminator. A support S carries a word of `big ∖ small` iff
//!   `rank(H_big|S) < rank(H_small|S)`.
//! * vector-enum walks the same supports and every nonzero pattern on them,
//!   updating syndromes incrementally.
//! * codeword-enum lists the whole difference set once.

use std::fmt;

use rayon::prelude::*;

use crate::codespace::{AdditiveCode, Metric};
use crate::error::{Error, Result};
use crate::linalg::{axpy, IncrementalEliminator, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Auto,
    VectorEnum,
    SupportKernel,
    CodewordEnum,
    /// Not a search: the value follows from inclusion in a code whose
    /// minimum weight is known, together with a witness.
    Inherited,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::VectorEnum => "vector-enum",
            Strategy::SupportKernel => "support-kernel",
            Strategy::CodewordEnum => "codeword-enum",
            Strategy::Inherited => "inherited",
        }
    }

    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "auto" => Some(Strategy::Auto),
            "vector" | "vector-enum" => Some(Strategy::VectorEnum),
            "support" | "support-kernel" => Some(Strategy::SupportKernel),
            "codeword" | "codeword-enum" => Some(Strategy::CodewordEnum),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceValue {
    Exact(usize),
    /// Every member of the target set has weight at least this.
    AtLeast(usize),
    /// The target set is empty.
    Empty,
}

impl DistanceValue {
    /// A value usable in lower-bound comparisons: the exact value or the bound.
    pub fn lower(self) -> Option<usize> {
        match self {
            DistanceValue::Exact(d) | DistanceValue::AtLeast(d) => Some(d),
            DistanceValue::Empty => None,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            DistanceValue::Exact(d) => Some(d),
            _ => None,
        }
    }

    pub fn state(self) -> &'static str {
        match self {
            DistanceValue::Exact(_) => "exact",
            DistanceValue::AtLeast(_) => "lower-bound",
            DistanceValue::Empty => "empty",
        }
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::Exact(d) => write!(f, "{d}"),
            DistanceValue::AtLeast(d) => write!(f, ">={d}"),
            DistanceValue::Empty => write!(f, "empty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightReport {
    pub metric: Metric,
    pub value: DistanceValue,
    /// Ambient vector of the reported weight; present when exact.
    pub witness: Option<Vec<u16>>,
    pub strategy: Strategy,
    /// Candidates examined, counted in enumeration order up to the witness.
    pub work: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    /// Search weights below `cap`; `None` means fully exact.
    pub cap: Option<usize>,
    /// Cap for purity-level searches; `None` means fully exact.
    pub purity_cap: Option<usize>,
    pub strategy: Strategy,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            cap: None,
            purity_cap: None,
            strategy: Strategy::Auto,
            jobs: None,
        }
    }
}

impl DistanceOptions {
    pub fn with_cap(self, cap: Option<usize>) -> Self {
        DistanceOptions { cap, ..self }
    }

    /// The same options, searching with the purity cap.
    pub fn for_purity(self) -> Self {
        DistanceOptions {
            cap: self.purity_cap,
            ..self
        }
    }
}

const MAX_ENUMERATION: u128 = 1 << 24;
const MAX_PATTERN_TABLE: usize = 1 << 24;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Position of a sorted support in colex order among sets of its size.
pub fn colex_rank(support: &[usize]) -> u128 {
    support
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s, i + 1))
        .sum()
}

/// Minimum nonzero weight of `code`.
pub fn min_weight(code: &AdditiveCode, metric: Metric, opts: &DistanceOptions) -> Result<WeightReport> {
    search(code, None, metric, opts)
}

/// Minimum weight over `big ∖ small`; `small` must be a subcode of `big`.
pub fn min_weight_difference(
    big: &AdditiveCode,
    small: &AdditiveCode,
    metric: Metric,
    opts: &DistanceOptions,
) -> Result<WeightReport> {
    if !small.is_subcode_of(big)? {
        return Err(Error::Incompatible(
            "the subtracted code is not contained in the larger code".into(),
        ));
    }
    search(big, Some(small), metric, opts)
}

/// Counts of codewords by weight.
pub fn weight_distribution(code: &AdditiveCode, metric: Metric) -> Result<Vec<u64>> {
    let sp = code.space();
    sp.check_metric(metric)?;
    let size = (sp.scalar_field().order() as u128).checked_pow(code.dim() as u32);
    if size.map_or(true, |s| s > MAX_ENUMERATION) {
        return Err(Error::TooLarge(format!(
            "weight distribution of a code with {}^{} words",
            sp.scalar_field().order(),
            code.dim()
        )));
    }
    let groups = sp.coordinate_columns(metric);
    let mut dist = vec![0u64; groups.len() + 1];
    code.for_each_expanded(|w| dist[AdditiveCode::expanded_weight(&groups, w)] += 1);
    Ok(dist)
}

struct Problem<'a> {
    big: &'a AdditiveCode,
    small: Option<&'a AdditiveCode>,
    metric: Metric,
    groups: Vec<Vec<usize>>,
    /// Per coordinate, the parity-check columns of `big` then of `small`.
    big_cols: Vec<Vec<Vec<u16>>>,
    small_cols: Vec<Vec<Vec<u16>>>,
    hb: usize,
    hs: usize,
    upper: usize,
    cap: usize,
    w_max: usize,
}

fn columns(h: &Matrix, groups: &[Vec<usize>]) -> Vec<Vec<Vec<u16>>> {
    groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|&c| (0..h.rows()).map(|r| h.get(r, c)).collect())
                .collect()
        })
        .collect()
}

fn search(
    big: &AdditiveCode,
    small: Option<&AdditiveCode>,
    metric: Metric,
    opts: &DistanceOptions,
) -> Result<WeightReport> {
    let sp = big.space();
    sp.check_metric(metric)?;
    let groups = sp.coordinate_columns(metric);
    let nc = groups.len();
    let small_dim = small.map_or(0, |s| s.dim());
    if big.dim() == small_dim {
        return Ok(WeightReport {
            metric,
            value: DistanceValue::Empty,
            witness: None,
            strategy: resolve_trivial(opts.strategy),
            work: 0,
        });
    }
    let cap = opts.cap.unwrap_or(nc + 1);
    if cap == 0 {
        return Err(Error::InvalidParameters("cap must be at least 1".into()));
    }
    let cw = groups[0].len();
    let quotient = big.dim() - small_dim;
    let w_max = nc + 1 - quotient.div_ceil(cw);
    let upper = w_max.min(cap - 1);

    let hb_m = big.parity_check();
    let hs_m = small.map(|s| s.parity_check());
    let problem = Problem {
        big,
        small,
        metric,
        big_cols: columns(&hb_m, &groups),
        small_cols: hs_m.as_ref().map_or_else(Vec::new, |h| columns(h, &groups)),
        hb: hb_m.rows(),
        hs: hs_m.as_ref().map_or(0, |h| h.rows()),
        groups,
        upper,
        cap,
        w_max,
    };

    let strategy = match opts.strategy {
        Strategy::Auto => problem.cheapest(),
        Strategy::Inherited => {
            return Err(Error::InvalidParameters("inherited is not a search strategy".into()))
        }
        s => s,
    };
    let run = || match strategy {
        Strategy::SupportKernel => problem.support_kernel(),
        Strategy::VectorEnum => problem.vector_enum(),
        Strategy::CodewordEnum => problem.codeword_enum(),
        Strategy::Auto | Strategy::Inherited => unreachable!("resolved above"),
    };
    let report = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(WeightReport { strategy, ..report })
}

fn resolve_trivial(s: Strategy) -> Strategy {
    match s {
        Strategy::Auto => Strategy::SupportKernel,
        s => s,
    }
}

impl Problem<'_> {
    fn nc(&self) -> usize {
        self.groups.len()
    }

    fn cw(&self) -> usize {
        self.groups[0].len()
    }

    fn field_order(&self) -> u128 {
        self.big.space().scalar_field().order() as u128
    }

    fn pattern_count(&self) -> Option<u128> {
        self.field_order().checked_pow(self.cw() as u32)
    }

    /// Predicted operation counts; the smallest wins.
    fn cheapest(&self) -> Strategy {
        let nc = self.nc();
        let h = (self.hb + self.hs).max(1) as u128;
        let mut support = 0u128;
        let mut vector = 0u128;
        let patterns = self.pattern_count().map(|a| a - 1);
        for w in 1..=self.upper {
            let sets = binomial(nc, w);
            support = support.saturating_add(sets.saturating_mul(self.cw() as u128 * h * 2));
            vector = match patterns.and_then(|a| a.checked_pow(w as u32)) {
                Some(pw) => vector.saturating_add(sets.saturating_mul(pw).saturating_mul(h)),
                None => u128::MAX,
            };
        }
        if !self.vector_table_fits() {
            vector = u128::MAX;
        }
        let codeword = self.difference_size().map_or(u128::MAX, |s| {
            s.saturating_mul(nc as u128)
        });
        if codeword <= support && codeword <= vector {
            Strategy::CodewordEnum
        } else if vector < support {
            Strategy::VectorEnum
        } else {
            Strategy::SupportKernel
        }
    }

    fn difference_size(&self) -> Option<u128> {
        let q = self.field_order();
        let big = q.checked_pow(self.big.dim() as u32)?;
        let small = q.checked_pow(self.small.map_or(0, |s| s.dim()) as u32)?;
        Some(big - small)
    }

    fn vector_table_fits(&self) -> bool {
        self.pattern_count().is_some_and(|a| {
            (a as usize).saturating_mul(self.nc()).saturating_mul(self.hb + self.hs)
                <= MAX_PATTERN_TABLE
        })
    }

    fn not_found(&self, work: u128) -> Result<WeightReport> {
        if self.upper < self.cap - 1 && self.upper >= self.w_max {
            return Err(Error::Invariant(format!(
                "no word found up to the weight bound {}",
                self.w_max
            )));
        }
        Ok(WeightReport {
            metric: self.metric,
            value: DistanceValue::AtLeast(self.cap),
            witness: None,
            strategy: Strategy::Auto,
            work,
        })
    }

    fn found(&self, w: usize, witness_expanded: &[u16], work: u128) -> Result<WeightReport> {
        let sp = self.big.space();
        let in_small = self.small.is_some_and(|s| s.contains_expanded(witness_expanded));
        let weight = AdditiveCode::expanded_weight(&self.groups, witness_expanded);
        if weight != w || in_small || !self.big.contains_expanded(witness_expanded) {
            return Err(Error::Invariant(format!(
                "witness check failed (weight {weight}, expected {w})"
            )));
        }
        Ok(WeightReport {
            metric: self.metric,
            value: DistanceValue::Exact(w),
            witness: Some(sp.pack_vector(witness_expanded)),
            strategy: Strategy::Auto,
            work,
        })
    }

    /// Runs `leaf` over all supports of size w in colex order, in parallel
    /// over the largest element, returning the first hit in colex order.
    fn first_support<T, St, I, P, L>(&self, w: usize, init: I, push: P, leaf: L) -> Option<T>
    where
        T: Send,
        I: Fn() -> St + Sync,
        P: Fn(&mut St, usize, bool) + Sync,
        L: Fn(&mut St, &[usize]) -> Option<T> + Sync,
    {
        (w - 1..self.nc()).into_par_iter().find_map_first(|top| {
            let mut state = init();
            let mut support = vec![0usize; w];
            support[w - 1] = top;
            push(&mut state, top, true);
            descend(&mut state, &mut support, w - 1, top, &push, &leaf)
        })
    }

    fn support_kernel(&self) -> Result<WeightReport> {
        let cw = self.cw();
        let field = self.big.space().scalar_field();
        let init = || {
            (
                IncrementalEliminator::new(field, self.hb),
                self.small.map(|_| IncrementalEliminator::new(field, self.hs)),
            )
        };
        let push = |st: &mut (IncrementalEliminator, Option<IncrementalEliminator>), t: usize, add: bool| {
            for j in 0..cw {
                if add {
                    st.0.push(&self.big_cols[t][j]);
                    if let Some(s) = st.1.as_mut() {
                        s.push(&self.small_cols[t][j]);
                    }
                } else {
                    st.0.pop();
                    if let Some(s) = st.1.as_mut() {
                        s.pop();
                    }
                }
            }
        };
        let mut work = 0u128;
        for w in 1..=self.upper {
            let leaf = |st: &mut (IncrementalEliminator, Option<IncrementalEliminator>), s: &[usize]| {
                let hit = match &st.1 {
                    Some(small) => st.0.rank() < small.rank(),
                    None => st.0.rank() < w * cw,
                };
                hit.then(|| s.to_vec())
            };
            match self.first_support(w, init, push, leaf) {
                Some(support) => {
                    work += colex_rank(&support) + 1;
                    let witness = self.kernel_witness(&support)?;
                    return self.found(w, &witness, work);
                }
                None => work += binomial(self.nc(), w),
            }
        }
        self.not_found(work)
    }

    /// First canonical basis row of the big code shortened to `support`
    /// that lies outside the small code.
    fn kernel_witness(&self, support: &[usize]) -> Result<Vec<u16>> {
        let short = self.big.shorten_to_support(support, self.metric)?;
        (0..short.dim())
            .map(|r| short.basis().row(r))
            .find(|row| !self.small.is_some_and(|s| s.contains_expanded(row)))
            .map(|row| row.to_vec())
            .ok_or_else(|| Error::Invariant("support flagged without a word on it".into()))
    }

    fn vector_enum(&self) -> Result<WeightReport> {
        if !self.vector_table_fits() {
            return Err(Error::TooLarge("pattern table for vector enumeration".into()));
        }
        let f = self.big.space().scalar_field();
        let q = f.order() as usize;
        let cw = self.cw();
        let a = q.pow(cw as u32);
        let (hb, hs) = (self.hb, self.hs);
        let digits = |mut x: usize| -> Vec<u16> {
            (0..cw)
                .map(|_| {
                    let d = (x % q) as u16;
                    x /= q;
                    d
                })
                .collect()
        };
        let table = |cols: &Vec<Vec<Vec<u16>>>, h: usize| -> Vec<u16> {
            let mut t = vec![0u16; cols.len() * a * h];
            for (c, cc) in cols.iter().enumerate() {
                for x in 1..a {
                    let dx = digits(x);
                    let slot = &mut t[(c * a + x) * h..(c * a + x + 1) * h];
                    for (j, &d) in dx.iter().enumerate() {
                        axpy(f, slot, d, &cc[j]);
                    }
                }
            }
            t
        };
        let tb = table(&self.big_cols, hb);
        let ts = if self.small.is_some() { table(&self.small_cols, hs) } else { Vec::new() };
        let contrib = |h: usize, c: usize, x: usize| (c * a + x) * h..(c * a + x + 1) * h;

        let patterns = (a - 1) as u128;
        let mut work = 0u128;
        for w in 1..=self.upper {
            let leaf = |_: &mut (), s: &[usize]| -> Option<(Vec<usize>, Vec<usize>, u128)> {
                let mut x = vec![1usize; w];
                let mut sb = vec![0u16; hb];
                let mut ss = vec![0u16; hs];
                for &c in s {
                    axpy(f, &mut sb, 1, &tb[contrib(hb, c, 1)]);
                    if !ts.is_empty() {
                        axpy(f, &mut ss, 1, &ts[contrib(hs, c, 1)]);
                    }
                }
                let mut idx = 0u128;
                loop {
                    if sb.iter().all(|&v| v == 0) && (ts.is_empty() || ss.iter().any(|&v| v != 0)) {
                        return Some((s.to_vec(), x, idx));
                    }
                    idx += 1;
                    let mut i = 0;
                    loop {
                        if i == w {
                            return None;
                        }
                        let old = x[i];
                        let new = if old + 1 == a { 1 } else { old + 1 };
                        x[i] = new;
                        let c = s[i];
                        let neg1 = f.neg(1);
                        axpy(f, &mut sb, 1, &tb[contrib(hb, c, new)]);
                        axpy(f, &mut sb, neg1, &tb[contrib(hb, c, old)]);
                        if !ts.is_empty() {
                            axpy(f, &mut ss, 1, &ts[contrib(hs, c, new)]);
                            axpy(f, &mut ss, neg1, &ts[contrib(hs, c, old)]);
                        }
                        if new != 1 {
                            break;
                        }
                        i += 1;
                    }
                }
            };
            match self.first_support(w, || (), |_, _, _| {}, leaf) {
                Some((support, x, idx)) => {
                    let pw = patterns.saturating_pow(w as u32);
                    work = work
                        .saturating_add(colex_rank(&support).saturating_mul(pw))
                        .saturating_add(idx + 1);
                    let mut row = vec![0u16; self.big.space().width()];
                    for (k, &c) in support.iter().enumerate() {
                        for (j, d) in digits(x[k]).into_iter().enumerate() {
                            row[self.groups[c][j]] = d;
                        }
                    }
                    return self.found(w, &row, work);
                }
                None => {
                    work = work.saturating_add(
                        binomial(self.nc(), w).saturating_mul(patterns.saturating_pow(w as u32)),
                    )
                }
            }
        }
        self.not_found(work)
    }

    fn codeword_enum(&self) -> Result<WeightReport> {
        let f = self.big.space().scalar_field();
        let q = f.order() as u128;
        let total = self
            .field_order()
            .checked_pow(self.big.dim() as u32)
            .filter(|&t| t <= 1u128 << 36)
            .ok_or_else(|| Error::TooLarge("codeword enumeration of a code this large".into()))?;
        let width = self.big.space().width();
        let mut basis = match self.small {
            Some(s) => s.basis().clone(),
            None => Matrix::zeros(f, 0, width),
        };
        let start = q.pow(basis.rows() as u32);
        for r in 0..self.big.dim() {
            let row = self.big.basis().row(r);
            let mut trial = basis.clone();
            trial.push_row(row);
            if trial.rank() > basis.rows() {
                basis.push_row(row);
            }
        }
        let dim = basis.rows();
        let chunk = ((total - start) / 1024).max(1 << 12);
        let chunks: Vec<(u128, u128)> = {
            let mut v = Vec::new();
            let mut lo = start;
            while lo < total {
                let hi = (lo + chunk).min(total);
                v.push((lo, hi));
                lo = hi;
            }
            v
        };
        let results: Vec<Option<(usize, u128)>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut coeffs: Vec<u16> = (0..dim)
                    .map(|i| ((lo / q.pow(i as u32)) % q) as u16)
                    .collect();
                let mut cur = basis.combine(&coeffs);
                let mut best: Option<(usize, u128)> = None;
                let mut idx = lo;
                while idx < hi {
                    let w = AdditiveCode::expanded_weight(&self.groups, &cur);
                    if best.map_or(true, |(b, _)| w < b) {
                        best = Some((w, idx));
                    }
                    idx += 1;
                    if idx == hi {
                        break;
                    }
                    let mut i = 0;
                    while i < dim {
                        let old = coeffs[i];
                        let new = if old as u128 + 1 == q { 0 } else { old + 1 };
                        coeffs[i] = new;
                        axpy(f, &mut cur, f.sub(new, old), basis.row(i));
                        if new != 0 {
                            break;
                        }
                        i += 1;
                    }
                }
                best
            })
            .collect();
        let (w, idx) = results
            .into_iter()
            .flatten()
            .min()
            .ok_or_else(|| Error::Invariant("empty enumeration".into()))?;
        let work = total - start;
        if w >= self.cap {
            return Ok(WeightReport {
                metric: self.metric,
                value: DistanceValue::AtLeast(self.cap),
                witness: None,
                strategy: Strategy::Auto,
                work,
            });
        }
        let coeffs: Vec<u16> = (0..dim).map(|i| ((idx / q.pow(i as u32)) % q) as u16).collect();
        let witness = basis.combine(&coeffs);
        self.found(w, &witness, work)
    }
}

fn descend<St, T, P, L>(
    state: &mut St,
    support: &mut [usize],
    k: usize,
    upper: usize,
    push: &P,
    leaf: &L,
) -> Option<T>
where
    P: Fn(&mut St, usize, bool),
    L: Fn(&mut St, &[usize]) -> Option<T>,
{
    if k == 0 {
        return leaf(state, support);
    }
    for t in k - 1..upper {
        support[k - 1] = t;
        push(state, t, true);
        let r = descend(state, support, k - 1, t, push, leaf);
        push(state, t, false);
        if r.is_some() {
            return r;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codespace::{CodeSpace, Form, Scalars};
    use crate::galois::FieldSpec;

    fn binary(n: usize, rows: &[Vec<u16>]) -> AdditiveCode {
        let f = FieldSpec::prime(2).unwrap();
        let sp = CodeSpace::plain(&f, n, Scalars::Linear).unwrap();
        AdditiveCode::from_generators(&sp, rows).unwrap()
    }

    fn hamming7() -> AdditiveCode {
        binary(
            7,
            &[
                vec![1, 0, 1, 0, 1, 0, 1],
                vec![0, 1, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .dual(Form::Euclidean)
        .unwrap()
    }

    const ALL: [Strategy; 3] = [Strategy::SupportKernel, Strategy::VectorEnum, Strategy::CodewordEnum];

    fn opts(strategy: Strategy, cap: Option<usize>) -> DistanceOptions {
        DistanceOptions { strategy, cap, ..Default::default() }
    }

    #[test]
    fn repetition_code() {
        let c = binary(5, &[vec![1; 5]]);
        for s in ALL {
            let r = min_weight(&c, Metric::Hamming, &opts(s, None)).unwrap();
            assert_eq!(r.value, DistanceValue::Exact(5));
            assert_eq!(r.witness, Some(vec![1; 5]));
        }
    }

    #[test]
    fn hamming_minus_simplex() {
        let big = hamming7();
        let small = big.dual(Form::Euclidean).unwrap();
        for s in ALL {
            let r = min_weight_difference(&big, &small, Metric::Hamming, &opts(s, None)).unwrap();
            assert_eq!(r.value, DistanceValue::Exact(3), "{s:?}");
            let w = r.witness.unwrap();
            assert!(big.contains(&w).unwrap() && !small.contains(&w).unwrap());
        }
        let r = min_weight_difference(&small, &small, Metric::Hamming, &Default::default()).unwrap();
        assert_eq!(r.value, DistanceValue::Empty);
        assert!(min_weight_difference(&small, &big, Metric::Hamming, &Default::default()).is_err());
    }

    #[test]
    fn cap_semantics() {
        let c = hamming7();
        for s in ALL {
            let r = min_weight(&c, Metric::Hamming, &opts(s, Some(3))).unwrap();
            assert_eq!(r.value, DistanceValue::AtLeast(3));
            assert!(r.witness.is_none());
            let r = min_weight(&c, Metric::Hamming, &opts(s, Some(4))).unwrap();
            assert_eq!(r.value, DistanceValue::Exact(3));
        }
    }

    #[test]
    fn hamming_weight_distribution() {
        assert_eq!(
            weight_distribution(&hamming7(), Metric::Hamming).unwrap(),
            vec![1, 0, 0, 7, 7, 0, 0, 1]
        );
        let f = FieldSpec::prime(2).unwrap();
        let sp = CodeSpace::plain(&f, 4, Scalars::Linear).unwrap();
        assert_eq!(
            weight_distribution(&AdditiveCode::zero(&sp), Metric::Hamming).unwrap(),
            vec![1, 0, 0, 0, 0]
        );
    }

    #[test]
    fn full_symplectic_ambient_distribution() {
        let f = FieldSpec::prime(3).unwrap();
        let sp = CodeSpace::symplectic(&f, 3, Scalars::Linear).unwrap();
        let d = weight_distribution(&AdditiveCode::full(&sp), Metric::Symplectic).unwrap();
        let expect: Vec<u64> = (0..=3).map(|j| binomial(3, j) as u64 * 8u64.pow(j as u32)).collect();
        assert_eq!(d, expect);
    }

    #[test]
    fn colex_ranks() {
        assert_eq!(colex_rank(&[0, 1, 2]), 0);
        assert_eq!(colex_rank(&[0, 1, 3]), 1);
        assert_eq!(colex_rank(&[0, 2, 3]), 2);
        assert_eq!(colex_rank(&[1, 2, 3]), 3);
        assert_eq!(colex_rank(&[0, 1, 4]), 4);
    }

    #[test]
    fn deterministic_across_jobs() {
        let big = hamming7();
        let small = big.dual(Form::Euclidean).unwrap();
        let a = min_weight_difference(&big, &small, Metric::Hamming, &DistanceOptions { jobs: Some(1), ..opts(Strategy::SupportKernel, None) }).unwrap();
        let b = min_weight_difference(&big, &small, Metric::Hamming, &DistanceOptions { jobs: Some(3), ..opts(Strategy::SupportKernel, None) }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.witness, Some(vec![1, 1, 1, 0, 0, 0, 0]));
    }
}
