//! Expected observation counts when sensors fail independently.
//!
//! A placement puts one or more sensors on each support vertex; each sensor
//! fails independently with probability `q`. The expected number of observed
//! vertices is a polynomial in `q`, computed exactly by enumerating which
//! support vertices keep at least one working sensor:
//!
//! ```text
//! E(G; S, q) = sum over W ⊆ S of |Obs(G; W)| * q^(f(S\W)) * prod_{v in W} (1 - q^(f(v)))
//! ```
//!
//! where `f(v)` is the number of sensors on `v` and `Obs(G; W)` is the set
//! observed by the surviving support `W`. For one sensor per vertex this
//! collapses to the basis `q^(s-k) (1-q)^k`, whose coefficients are the
//! subset observation sums `a_k`, the workhorse for comparing placements.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::poly::{binomial, IntPoly};
use crate::propagation::Engine;

/// Default cap on the support size for the `2^s` subset enumerations.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Number of evaluation points for grid comparisons: `q = i/1000` for
/// `i = 0..=1000`, so both endpoints are included.
pub const GRID_POINTS: usize = 1001;

/// A sensor placement: a multiset of sensors over a support set.
///
/// Every support vertex carries at least one sensor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Placement {
    mult: BTreeMap<usize, usize>,
}

impl Placement {
    pub fn new() -> Self {
        Self::default()
    }

    /// One sensor on each vertex of `s`.
    pub fn from_set(s: &VertexSet) -> Self {
        Self {
            mult: s.iter().map(|v| (v, 1)).collect(),
        }
    }

    /// Builds a placement from `(vertex, multiplicity)` pairs. Multiplicities
    /// of the same vertex accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut p = Self::new();
        for (v, m) in pairs {
            p.add_sensors(v, m)?;
        }
        Ok(p)
    }

    /// Adds `m >= 1` sensors on `v`.
    pub fn add_sensors(&mut self, v: usize, m: usize) -> Result<()> {
        if m == 0 {
            return Err(Error::ZeroMultiplicity { vertex: v });
        }
        *self.mult.entry(v).or_insert(0) += m;
        Ok(())
    }

    /// Number of sensors on `v` (zero off the support).
    pub fn multiplicity(&self, v: usize) -> usize {
        self.mult.get(&v).copied().unwrap_or(0)
    }

    /// Support size `s`.
    pub fn support_size(&self) -> usize {
        self.mult.len()
    }

    /// Total sensor count `d`.
    pub fn total_sensors(&self) -> usize {
        self.mult.values().sum()
    }

    pub fn support(&self) -> VertexSet {
        self.mult.keys().copied().collect()
    }

    pub fn support_vec(&self) -> Vec<usize> {
        self.mult.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult.iter().map(|(&v, &m)| (v, m))
    }

    pub fn is_uniform_single(&self) -> bool {
        self.mult.values().all(|&m| m == 1)
    }
}

/// An exact expected-value polynomial together with placement bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExPoly {
    /// Power-basis coefficients (ascending in `q`).
    pub power: IntPoly,
    /// Subset observation sums `a_0..a_s` when every vertex carries one
    /// sensor; `None` for genuinely multiset placements.
    pub bernstein: Option<Vec<BigInt>>,
    /// Support size `s`.
    pub support_size: usize,
    /// Total number of sensors `d` (equals `s` for set placements).
    pub total_sensors: usize,
}

impl ExPoly {
    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.power.eval(q)
    }

    /// JSON form: `{"power": [...], "bernstein": [...]?, "s": .., "d": ..}`.
    pub fn to_json(&self) -> serde_json::Value {
        let nums = |cs: &[BigInt]| -> Vec<serde_json::Value> {
            cs.iter()
                .map(|c| {
                    serde_json::from_str::<serde_json::Number>(&c.to_string())
                        .expect("integer literal")
                        .into()
                })
                .collect()
        };
        let mut obj = json!({
            "power": nums(&self.power.coeffs_padded(self.total_sensors + 1)),
            "s": self.support_size,
            "d": self.total_sensors,
        });
        if let Some(a) = &self.bernstein {
            obj["bernstein"] = serde_json::Value::Array(nums(a));
        }
        obj
    }
}

impl std::fmt::Display for ExPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.power.fmt(f)
    }
}

/// Hard ceiling on subset enumeration regardless of the caller's cap; the
/// bitmask bookkeeping and the `2^s` running time both break down past it.
const ENUMERATION_CEILING: usize = 30;

fn check_support(g: &Graph, support: &[usize], cap: usize) -> Result<()> {
    for &v in support {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
    }
    let cap = cap.min(ENUMERATION_CEILING);
    if support.len() > cap {
        return Err(Error::CapExceeded {
            size: support.len(),
            cap,
        });
    }
    Ok(())
}

/// Observation counts for every subset of `support`, indexed by bitmask.
pub(crate) fn subset_obs_sizes(g: &Graph, support: &[usize]) -> Vec<u64> {
    let mut engine = Engine::new(g.order());
    let mut out = Vec::with_capacity(1usize << support.len());
    for mask in 0u64..(1u64 << support.len()) {
        let seeds = support
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v);
        out.push(engine.run(g, seeds, None) as u64);
    }
    out
}

/// The subset observation sums `a_k = sum over |W| = k of |Obs(G; W)|`
/// for `k = 0..=|s|`. These are the coefficients of the expected-value
/// polynomial in the basis `q^(s-k) (1-q)^k`.
pub fn subset_observation_sums(g: &Graph, s: &VertexSet) -> Result<Vec<BigInt>> {
    subset_observation_sums_with_cap(g, s, DEFAULT_ENUMERATION_CAP)
}

pub fn subset_observation_sums_with_cap(
    g: &Graph,
    s: &VertexSet,
    cap: usize,
) -> Result<Vec<BigInt>> {
    let support = s.to_vec();
    check_support(g, &support, cap)?;
    let sizes = subset_obs_sizes(g, &support);
    let mut sums = vec![BigInt::zero(); support.len() + 1];
    for (mask, &size) in sizes.iter().enumerate() {
        sums[mask.count_ones() as usize] += size;
    }
    Ok(sums)
}

/// Expands coefficients in the basis `q^(s-k) (1-q)^k` into the power basis.
pub fn subset_basis_to_power(sums: &[BigInt]) -> IntPoly {
    let s = sums.len().saturating_sub(1);
    let mut acc = IntPoly::zero();
    for (k, a) in sums.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        acc = &acc + &IntPoly::one_minus_q_to(k).shift(s - k).scale(a);
    }
    acc
}

/// Recovers the basis coefficients `a_0..a_s` from a power-basis polynomial
/// of degree at most `s`. Exact inverse of [`subset_basis_to_power`].
pub fn power_to_subset_basis(p: &IntPoly, s: usize) -> Result<Vec<BigInt>> {
    if p.degree().is_some_and(|d| d > s) {
        return Err(Error::InvalidParameter(format!(
            "degree {} exceeds basis size {s}",
            p.degree().unwrap()
        )));
    }
    // The coefficient of q^(s-k) collects (-1)^(j-k) C(j, k) a_j over j >= k,
    // which is triangular in k and solvable top down.
    let mut sums = vec![BigInt::zero(); s + 1];
    for k in (0..=s).rev() {
        let mut val = p.coeff(s - k);
        for (j, a_j) in sums.iter().enumerate().skip(k + 1) {
            let term = binomial(j, k) * a_j;
            if (j - k) % 2 == 0 {
                val -= term;
            } else {
                val += term;
            }
        }
        sums[k] = val;
    }
    Ok(sums)
}

/// Exact expected-value polynomial for one sensor on each vertex of `s`.
pub fn expected_polynomial_set(g: &Graph, s: &VertexSet) -> Result<ExPoly> {
    expected_polynomial_set_with_cap(g, s, DEFAULT_ENUMERATION_CAP)
}

pub fn expected_polynomial_set_with_cap(g: &Graph, s: &VertexSet, cap: usize) -> Result<ExPoly> {
    let sums = subset_observation_sums_with_cap(g, s, cap)?;
    Ok(ExPoly {
        power: subset_basis_to_power(&sums),
        support_size: s.len(),
        total_sensors: s.len(),
        bernstein: Some(sums),
    })
}

/// Walks all support subsets, sharing partial survival-weight products along
/// the way; calls `leaf(mask, weight)` once per subset.
fn for_each_subset_weight(
    support: &[usize],
    mults: &[usize],
    leaf: &mut impl FnMut(u64, &IntPoly),
) {
    fn rec(
        idx: usize,
        mask: u64,
        weight: IntPoly,
        mults: &[usize],
        leaf: &mut impl FnMut(u64, &IntPoly),
    ) {
        if idx == mults.len() {
            leaf(mask, &weight);
            return;
        }
        // Vertex idx loses all its sensors: factor q^f.
        rec(idx + 1, mask, weight.shift(mults[idx]), mults, leaf);
        // Vertex idx keeps a sensor: factor 1 - q^f.
        rec(
            idx + 1,
            mask | (1 << idx),
            &weight * &IntPoly::one_minus_q_pow(mults[idx]),
            mults,
            leaf,
        );
    }
    debug_assert_eq!(support.len(), mults.len());
    rec(0, 0, IntPoly::one(), mults, leaf);
}

/// Exact expected-value polynomial for a general (multiset) placement.
pub fn expected_polynomial_multiset(g: &Graph, m: &Placement) -> Result<ExPoly> {
    expected_polynomial_multiset_with_cap(g, m, DEFAULT_ENUMERATION_CAP)
}

pub fn expected_polynomial_multiset_with_cap(
    g: &Graph,
    m: &Placement,
    cap: usize,
) -> Result<ExPoly> {
    let support = m.support_vec();
    check_support(g, &support, cap)?;
    let mults: Vec<usize> = support.iter().map(|&v| m.multiplicity(v)).collect();
    let sizes = subset_obs_sizes(g, &support);
    let mut acc = IntPoly::zero();
    for_each_subset_weight(&support, &mults, &mut |mask, weight| {
        let size = sizes[mask as usize];
        if size != 0 {
            acc = &acc + &weight.scale(&BigInt::from(size));
        }
    });
    let bernstein = if m.is_uniform_single() {
        Some(power_to_subset_basis(&acc, support.len())?)
    } else {
        None
    };
    Ok(ExPoly {
        power: acc,
        bernstein,
        support_size: m.support_size(),
        total_sensors: m.total_sensors(),
    })
}

/// For every vertex, the exact probability polynomial of being observed.
///
/// Summing the returned polynomials over all vertices gives the expected
/// value polynomial.
pub fn per_vertex_probabilities(g: &Graph, m: &Placement) -> Result<Vec<IntPoly>> {
    per_vertex_probabilities_with_cap(g, m, DEFAULT_ENUMERATION_CAP)
}

pub fn per_vertex_probabilities_with_cap(
    g: &Graph,
    m: &Placement,
    cap: usize,
) -> Result<Vec<IntPoly>> {
    let support = m.support_vec();
    check_support(g, &support, cap)?;
    let mults: Vec<usize> = support.iter().map(|&v| m.multiplicity(v)).collect();
    let mut engine = Engine::new(g.order());
    let mut acc = vec![IntPoly::zero(); g.order()];
    for_each_subset_weight(&support, &mults, &mut |mask, weight| {
        let seeds = support
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v);
        engine.run(g, seeds, None);
        for &v in &engine.observed {
            acc[v] = &acc[v] + weight;
        }
    });
    Ok(acc)
}

/// The per-sum degree sets of a placement: `r1` holds `f(S')` over nonempty
/// subsets `S'` of the support, `r2` the same over subsets of size at least
/// two. Every power coefficient of the expected polynomial above degree zero
/// vanishes outside `r1` and is nonpositive on `r1 \ r2`.
pub(crate) fn degree_sets(m: &Placement) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mults: Vec<usize> = m.iter().map(|(_, f)| f).collect();
    let mut r1 = BTreeSet::new();
    let mut r2 = BTreeSet::new();
    for mask in 1u64..(1u64 << mults.len()) {
        let sum: usize = mults
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &f)| f)
            .sum();
        r1.insert(sum);
        if mask.count_ones() >= 2 {
            r2.insert(sum);
        }
    }
    (r1, r2)
}

/// Constraint class of a power coefficient, determined by the placement's
/// degree sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffClass {
    /// Degree not expressible as a subset sensor sum: coefficient must be 0.
    ForcedZero,
    /// Degree only expressible by a single support vertex: coefficient <= 0.
    NonPositive,
    /// Degree reachable by a multi-vertex subset: no sign constraint.
    Unconstrained,
}

#[derive(Clone, Debug)]
pub struct SignAuditEntry {
    pub degree: usize,
    pub class: CoeffClass,
    pub coefficient: BigInt,
    pub ok: bool,
}

/// Outcome of checking every power coefficient against its sign constraint.
#[derive(Clone, Debug)]
pub struct SignAudit {
    pub entries: Vec<SignAuditEntry>,
    /// The constant term, which must equal the observation count of the full
    /// support.
    pub constant: BigInt,
    pub constant_ok: bool,
    pub pass: bool,
}

/// Audits the coefficient signs of the expected polynomial of `m` against
/// the classes derived from its degree sets.
pub fn coefficient_sign_audit(g: &Graph, m: &Placement) -> Result<SignAudit> {
    coefficient_sign_audit_with_cap(g, m, DEFAULT_ENUMERATION_CAP)
}

pub fn coefficient_sign_audit_with_cap(g: &Graph, m: &Placement, cap: usize) -> Result<SignAudit> {
    let ex = expected_polynomial_multiset_with_cap(g, m, cap)?;
    let (r1, r2) = degree_sets(m);
    let mut entries = Vec::new();
    let mut pass = true;
    for degree in 1..=m.total_sensors() {
        let coefficient = ex.power.coeff(degree);
        let class = if r2.contains(&degree) {
            CoeffClass::Unconstrained
        } else if r1.contains(&degree) {
            CoeffClass::NonPositive
        } else {
            CoeffClass::ForcedZero
        };
        let ok = match class {
            CoeffClass::ForcedZero => coefficient.is_zero(),
            CoeffClass::NonPositive => !coefficient.is_positive(),
            CoeffClass::Unconstrained => true,
        };
        pass &= ok;
        entries.push(SignAuditEntry {
            degree,
            class,
            coefficient,
            ok,
        });
    }
    let constant = ex.power.coeff(0);
    let mut engine = Engine::new(g.order());
    let observed = engine.run(g, m.support_vec(), None);
    let constant_ok = constant == BigInt::from(observed);
    Ok(SignAudit {
        entries,
        constant,
        constant_ok,
        pass: pass && constant_ok,
    })
}

/// Outcome of comparing two equal-size expected polynomials exactly.
#[derive(Clone, Debug)]
pub struct CopolyReport {
    pub equal: bool,
    pub left: ExPoly,
    pub right: ExPoly,
    /// First differing power `(k, left coefficient, right coefficient)`.
    pub first_mismatch: Option<(usize, BigInt, BigInt)>,
}

/// Compares the expected polynomials of two placements exactly.
pub fn copolynomial_check(
    g1: &Graph,
    s1: &VertexSet,
    g2: &Graph,
    s2: &VertexSet,
) -> Result<CopolyReport> {
    let left = expected_polynomial_set(g1, s1)?;
    let right = expected_polynomial_set(g2, s2)?;
    let len = left.power.coeffs().len().max(right.power.coeffs().len());
    let mut first_mismatch = None;
    for k in 0..len {
        let (a, b) = (left.power.coeff(k), right.power.coeff(k));
        if a != b {
            first_mismatch = Some((k, a, b));
            break;
        }
    }
    Ok(CopolyReport {
        equal: first_mismatch.is_none(),
        left,
        right,
        first_mismatch,
    })
}

/// True when the expected polynomial of `s` is linear, tested through the
/// subset sums: `a_k = C(s-1, k-1) * a_1` for all `1 <= k <= s`.
pub fn linearity_check(g: &Graph, s: &VertexSet) -> Result<bool> {
    linearity_check_with_cap(g, s, DEFAULT_ENUMERATION_CAP)
}

pub fn linearity_check_with_cap(g: &Graph, s: &VertexSet, cap: usize) -> Result<bool> {
    let sums = subset_observation_sums_with_cap(g, s, cap)?;
    let n = s.len();
    let holds = (1..=n).all(|k| sums[k] == binomial(n - 1, k - 1) * &sums[1]);
    // The sum condition characterizes linearity exactly.
    debug_assert_eq!(
        holds,
        subset_basis_to_power(&sums).degree().unwrap_or(0) <= 1
    );
    Ok(holds)
}

/// Report of the low-degree sum condition against the actual degree.
#[derive(Clone, Debug)]
pub struct DegreeConditionReport {
    /// Whether `a_k` agrees with the combination of `a_1..a_ell` prescribed
    /// by the alpha table for every `k`.
    pub condition_holds: bool,
    /// Whether the expected polynomial has degree at most `ell`.
    pub degree_at_most: bool,
}

/// Checks the sum condition for degree at most `ell` and the actual degree.
///
/// The condition implies the degree bound; the converse is open, so the two
/// flags are reported separately and only the implication is asserted.
pub fn degree_condition_check(
    g: &Graph,
    s: &VertexSet,
    ell: usize,
) -> Result<DegreeConditionReport> {
    degree_condition_check_with_cap(g, s, ell, DEFAULT_ENUMERATION_CAP)
}

pub fn degree_condition_check_with_cap(
    g: &Graph,
    s: &VertexSet,
    ell: usize,
    cap: usize,
) -> Result<DegreeConditionReport> {
    let n = s.len();
    let alpha = crate::alpha::AlphaTable::new(n, ell)?;
    let sums = subset_observation_sums_with_cap(g, s, cap)?;
    let condition_holds = (1..=n).all(|k| {
        let mut combo = BigInt::zero();
        for (i, a_i) in sums.iter().enumerate().take(ell + 1).skip(1) {
            combo += alpha.get(k, i) * a_i;
        }
        combo == sums[k]
    });
    let degree_at_most = subset_basis_to_power(&sums)
        .degree()
        .is_none_or(|d| d <= ell);
    assert!(
        !condition_holds || degree_at_most,
        "sum condition must force degree <= {ell}"
    );
    Ok(DegreeConditionReport {
        condition_holds,
        degree_at_most,
    })
}

fn signed_binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as usize, k as usize)
    }
}

/// For a placement whose expected polynomial is quadratic, checks that every
/// subset sum is the combination of `a_1` and `a_2` forced by the quadratic
/// shape:
///
/// ```text
/// a_k = C(s-2, k-2) a_2 + (C(s-1, k-1) - (s-1) C(s-2, k-2)) a_1
/// ```
///
/// Errors when the polynomial has degree above two.
pub fn quadratic_identity_check(g: &Graph, s: &VertexSet) -> Result<bool> {
    quadratic_identity_check_with_cap(g, s, DEFAULT_ENUMERATION_CAP)
}

pub fn quadratic_identity_check_with_cap(g: &Graph, s: &VertexSet, cap: usize) -> Result<bool> {
    let sums = subset_observation_sums_with_cap(g, s, cap)?;
    let poly = subset_basis_to_power(&sums);
    if poly.degree().is_some_and(|d| d > 2) {
        return Err(Error::InvalidParameter(format!(
            "expected polynomial has degree {}, not at most 2",
            poly.degree().unwrap()
        )));
    }
    let n = s.len() as i64;
    let holds = (1..=s.len()).all(|k| {
        let c2 = signed_binomial(n - 2, k as i64 - 2);
        let c1 = signed_binomial(n - 1, k as i64 - 1) - BigInt::from(n - 1) * &c2;
        sums[k] == &c2 * &sums[2.min(s.len())] + &c1 * &sums[1.min(s.len())]
    });
    Ok(holds)
}

/// Which placement dominates, if either.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonVerdict {
    /// All subset sums equal: identical expected polynomials.
    Equal,
    /// The first placement's sums dominate (first is at least as good).
    FirstDominates { strict: bool },
    /// The second placement's sums dominate.
    SecondDominates { strict: bool },
    /// Sums are incomparable; see the grid sign pattern.
    IncomparableBySums,
}

/// Outcome of comparing two equal-size placements through subset sums.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub verdict: ComparisonVerdict,
    pub first_sums: Vec<BigInt>,
    pub second_sums: Vec<BigInt>,
    /// Whether the pointwise consequence of the verdict held at every grid
    /// point (vacuously true for incomparable sums).
    pub grid_consistent: bool,
    /// Runs `(first index, last index, sign)` of `sign(E_first - E_second)`
    /// over the evaluation grid `q = i/1000`.
    pub sign_runs: Vec<(usize, usize, i8)>,
}

/// Compares placements of equal size: if one's subset sums dominate the
/// other's coordinatewise, its expected polynomial dominates pointwise on
/// `[0, 1]` (strictly on the open interval when any sum is strictly larger).
/// The pointwise consequence is additionally verified on the evaluation
/// grid.
pub fn compare_placements(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<ComparisonReport> {
    compare_placements_with_cap(g, a, b, DEFAULT_ENUMERATION_CAP)
}

pub fn compare_placements_with_cap(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    cap: usize,
) -> Result<ComparisonReport> {
    if a.len() != b.len() {
        return Err(Error::ArityMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let first_sums = subset_observation_sums_with_cap(g, a, cap)?;
    let second_sums = subset_observation_sums_with_cap(g, b, cap)?;
    let mut first_ge = true;
    let mut second_ge = true;
    let mut any_diff = false;
    for (x, y) in first_sums.iter().zip(&second_sums) {
        match x.cmp(y) {
            std::cmp::Ordering::Less => {
                first_ge = false;
                any_diff = true;
            }
            std::cmp::Ordering::Greater => {
                second_ge = false;
                any_diff = true;
            }
            std::cmp::Ordering::Equal => {}
        }
    }
    let verdict = match (first_ge, second_ge, any_diff) {
        (true, true, _) => ComparisonVerdict::Equal,
        (true, false, _) => ComparisonVerdict::FirstDominates { strict: true },
        (false, true, _) => ComparisonVerdict::SecondDominates { strict: true },
        (false, false, _) => ComparisonVerdict::IncomparableBySums,
    };
    let diff = &subset_basis_to_power(&first_sums) - &subset_basis_to_power(&second_sums);
    let mut signs = Vec::with_capacity(GRID_POINTS);
    for i in 0..GRID_POINTS {
        let q = BigRational::new(BigInt::from(i), BigInt::from(GRID_POINTS - 1));
        let val = diff.eval(&q);
        signs.push(if val.is_zero() {
            0i8
        } else if val.is_positive() {
            1
        } else {
            -1
        });
    }
    let mut sign_runs: Vec<(usize, usize, i8)> = Vec::new();
    for (i, &s) in signs.iter().enumerate() {
        match sign_runs.last_mut() {
            Some((_, end, sign)) if *sign == s => *end = i,
            _ => sign_runs.push((i, i, s)),
        }
    }
    let interior = &signs[1..GRID_POINTS - 1];
    let grid_consistent = match verdict {
        ComparisonVerdict::Equal => signs.iter().all(|&s| s == 0),
        ComparisonVerdict::FirstDominates { strict } => {
            signs.iter().all(|&s| s >= 0) && (!strict || interior.iter().all(|&s| s > 0))
        }
        ComparisonVerdict::SecondDominates { strict } => {
            signs.iter().all(|&s| s <= 0) && (!strict || interior.iter().all(|&s| s < 0))
        }
        ComparisonVerdict::IncomparableBySums => true,
    };
    Ok(ComparisonReport {
        verdict,
        first_sums,
        second_sums,
        grid_consistent,
        sign_runs,
    })
}

/// A Monte Carlo estimate of the expected observation count.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard error of the mean (zero when fewer than two trials).
    pub std_error: f64,
    pub trials: u64,
}

/// Estimates the expected observation count at failure probability `q` by
/// simulation with a seeded ChaCha8 generator; reproducible for a fixed
/// seed. Every sensor draws exactly one uniform variate per trial.
pub fn monte_carlo_estimate(
    g: &Graph,
    m: &Placement,
    q: f64,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::ProbabilityRange(q));
    }
    let support = m.support_vec();
    for &v in &support {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let mults: Vec<usize> = support.iter().map(|&v| m.multiplicity(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut engine = Engine::new(g.order());
    let mut survivors = Vec::with_capacity(support.len());
    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    for _ in 0..trials {
        survivors.clear();
        for (i, &v) in support.iter().enumerate() {
            let mut alive = false;
            for _ in 0..mults[i] {
                // A sensor fails when its variate falls below q.
                alive |= rng.gen::<f64>() >= q;
            }
            if alive {
                survivors.push(v);
            }
        }
        let count = engine.run(g, survivors.iter().copied(), None) as u128;
        sum += count;
        sum_sq += count * count;
    }
    let n = trials as f64;
    let mean = sum.to_f64().unwrap() / n;
    let std_error = if trials > 1 {
        let var = (sum_sq.to_f64().unwrap() - n * mean * mean) / (n - 1.0);
        (var.max(0.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        trials,
    })
}
