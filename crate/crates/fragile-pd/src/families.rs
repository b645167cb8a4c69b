//! Named graph families used throughout the library's tests and the CLI:
//! small demonstration graphs for gadget affixing, witnesses realizing
//! arbitrary quadratic expected polynomials, and a layered grid family whose
//! placements separate cleanly under subset-sum comparison.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expected::{compare_placements, ComparisonVerdict};
use crate::gadgets::{affix, GadgetSpec};
use crate::graph::{Graph, StandardKind, VertexSet};
use crate::propagation::{fort_entrance, is_fort, is_power_dominating};

/// A triangle `u, v, w` with two leaves on `v` and two on `w`; the support
/// is `{u, v, w}`. The base host for the gadget demonstrations.
pub fn demo_base() -> (Graph, VertexSet) {
    let mut g = Graph::new(3);
    g.add_edge(0, 1).unwrap();
    g.add_edge(0, 2).unwrap();
    g.add_edge(1, 2).unwrap();
    for v in [1, 1, 2, 2] {
        g.add_leaf(v).unwrap();
    }
    g.set_label(0, "u").unwrap();
    g.set_label(1, "v").unwrap();
    g.set_label(2, "w").unwrap();
    (g, [0, 1, 2].into())
}

/// The demonstration base with a fork/spoon pair affixed on `{u, v, w}`
/// (path lengths `l1`, `l2`), another pair on `{v, w}` (path lengths `l3`,
/// `l4`), and two leaves added to `u`.
pub fn demo_with_gadgets(l1: usize, l2: usize, l3: usize, l4: usize) -> (Graph, VertexSet) {
    let (mut g, s) = demo_base();
    for (targets, spec) in [
        (vec![0usize, 1, 2], GadgetSpec::fork(l1, 3)),
        (vec![0, 1, 2], GadgetSpec::spoon(l2, 3)),
        (vec![1, 2], GadgetSpec::fork(l3, 2)),
        (vec![1, 2], GadgetSpec::spoon(l4, 2)),
    ] {
        g = affix(&g, &targets, &spec).unwrap().graph;
    }
    g.add_leaf(0).unwrap();
    g.add_leaf(0).unwrap();
    (g, s)
}

/// The 43-vertex graph whose expected polynomial is exactly `43 - 43q`:
/// the demonstration base with fork(5)/spoon(0) on `{u, v, w}` and
/// fork(6)/spoon(0) on `{v, w}`. Its subset sums are not the sums of any
/// placement built from vertex-disjoint observation regions, making it the
/// standard witness that linearity does not force such a decomposition.
pub fn linear_witness() -> (Graph, VertexSet) {
    demo_with_gadgets(5, 0, 6, 0)
}

/// Witness graph with a quadratic expected polynomial, built from two paths
/// on three vertices sharing a fork and a spoon across their centers, plus
/// a disjoint clique on `d + 1` vertices and `s - 3` isolated vertices.
///
/// The returned support has size `s`: both centers, one clique vertex, and
/// the isolated vertices. Its expected polynomial is
/// `(t - w - 5) q^2 - (s + 2t + d + 6) q + (s + t + w + d + 11)`.
pub fn quadratic_family(t: usize, w: usize, d: usize, s: usize) -> Result<(Graph, VertexSet)> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!(
            "the quadratic family needs a support of at least 3, got {s}"
        )));
    }
    let mut g = Graph::new(6);
    g.add_edge(0, 1).unwrap();
    g.add_edge(1, 2).unwrap();
    g.add_edge(3, 4).unwrap();
    g.add_edge(4, 5).unwrap();
    let centers = [1usize, 4];
    g = affix(&g, &centers, &GadgetSpec::fork(t, 2))?.graph;
    g = affix(&g, &centers, &GadgetSpec::spoon(w, 2))?.graph;
    let clique_start = g.order();
    g = g.disjoint_union(&Graph::standard(StandardKind::Complete, d + 1)?);
    let iso_start = g.order();
    g = g.disjoint_union(&Graph::new(s - 3));
    g.set_label(1, "a0").unwrap();
    g.set_label(4, "a1").unwrap();
    g.set_label(clique_start, "k0").unwrap();
    let mut support = VertexSet::from([1, 4, clique_start]);
    for v in iso_start..g.order() {
        support.insert(v);
    }
    Ok((g, support))
}

/// Realizes the quadratic `a q^2 - b q + (b - a)` as an expected polynomial
/// by picking parameters for [`quadratic_family`].
///
/// Requires `b >= s + 2a + 16` when `a >= -4`, and `b >= s + 6` when
/// `a <= -5`; below those bounds this recipe has no valid parameters.
pub fn quadratic_realization(s: usize, a: i64, b: i64) -> Result<(Graph, VertexSet)> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!(
            "the quadratic family needs a support of at least 3, got {s}"
        )));
    }
    let s_i = s as i64;
    let (t, w, d) = if a >= -4 {
        let bound = s_i + 2 * a + 16;
        if b < bound {
            return Err(Error::InvalidParameter(format!(
                "need b >= s + 2a + 16 = {bound}, got {b}"
            )));
        }
        (a + 5, 0, b - bound)
    } else {
        let bound = s_i + 6;
        if b < bound {
            return Err(Error::InvalidParameter(format!(
                "need b >= s + 6 = {bound}, got {b}"
            )));
        }
        (0, -a - 5, b - bound)
    };
    quadratic_family(t as usize, w as usize, d as usize, s)
}

/// A one-factorization of the complete graph on players `1..=s` (`s` even):
/// `s - 1` rounds of perfect matchings, produced by the circle method.
pub fn round_robin_factorization(s: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if s < 2 || !s.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "a one-factorization needs an even number of players >= 2, got {s}"
        )));
    }
    let others: Vec<usize> = (1..s).collect();
    let mut rounds = Vec::with_capacity(s - 1);
    for r in 0..s - 1 {
        let rot = |i: usize| others[(i + r) % (s - 1)];
        let mut round = vec![(rot(0).min(s), rot(0).max(s))];
        for i in 1..=(s - 2) / 2 {
            let (x, y) = (rot(i), rot(s - 1 - i));
            round.push((x.min(y), x.max(y)));
        }
        round.sort();
        rounds.push(round);
    }
    Ok(rounds)
}

/// Coordinate bookkeeping for the layered grid family.
///
/// The graph has `s` rows and `eta = ell + 2s` columns, both 1-indexed.
/// Row `i` is a path. Column 2 is a clique (the hub `K`); columns
/// `4, 6, ..., 2s` are perfect matchings taken from a one-factorization, so
/// every vertex outside the hub has degree at most 3. Column `2s` is the
/// reference placement `S`. The odd columns up to `2s - 1` together with
/// the pendant tail of row `i` form a fort whose entrance stays inside the
/// row.
#[derive(Clone, Copy, Debug)]
pub struct GridCoords {
    pub s: usize,
    pub ell: usize,
    pub eta: usize,
}

impl GridCoords {
    /// Vertex at row `i`, column `j` (both 1-indexed).
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.s).contains(&i), "row {i} out of range");
        assert!((1..=self.eta).contains(&j), "column {j} out of range");
        (i - 1) * self.eta + (j - 1)
    }

    pub fn row(&self, i: usize) -> VertexSet {
        (1..=self.eta).map(|j| self.vertex(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> VertexSet {
        (1..=self.s).map(|i| self.vertex(i, j)).collect()
    }

    /// The pendant tail of row `i`: columns past `2s`.
    pub fn pendant(&self, i: usize) -> VertexSet {
        (2 * self.s + 1..=self.eta)
            .map(|j| self.vertex(i, j))
            .collect()
    }

    /// The fort of row `i`: odd columns up to `2s - 1` plus the pendant
    /// tail.
    pub fn fort(&self, i: usize) -> VertexSet {
        let mut f = self.pendant(i);
        for j in (1..2 * self.s).step_by(2) {
            f.insert(self.vertex(i, j));
        }
        f
    }

    /// The hub clique `K` (column 2).
    pub fn hub(&self) -> VertexSet {
        self.column(2)
    }

    /// The reference placement `S` (column `2s`).
    pub fn reference(&self) -> VertexSet {
        self.column(2 * self.s)
    }
}

/// The layered grid on `s * (ell + 2s)` vertices (`s >= 4` even).
pub fn g_family(s: usize, ell: usize) -> Result<(Graph, GridCoords)> {
    if s < 4 || !s.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "the grid family needs even s >= 4, got {s}"
        )));
    }
    let eta = ell + 2 * s;
    let coords = GridCoords { s, ell, eta };
    let mut g = Graph::new(s * eta);
    for i in 1..=s {
        for j in 1..eta {
            g.add_edge(coords.vertex(i, j), coords.vertex(i, j + 1))?;
        }
    }
    for i in 1..=s {
        for i2 in i + 1..=s {
            g.add_edge(coords.vertex(i, 2), coords.vertex(i2, 2))?;
        }
    }
    let rounds = round_robin_factorization(s)?;
    for (r, round) in rounds.iter().enumerate().take(s - 1) {
        let j = 2 * (r + 1) + 2;
        for &(i, i2) in round {
            g.add_edge(coords.vertex(i, j), coords.vertex(i2, j))?;
        }
    }
    Ok((g, coords))
}

/// One sampled comparison against the reference placement.
#[derive(Clone, Debug)]
pub struct SampleComparison {
    pub placement: Vec<usize>,
    /// The reference placement strictly dominated the sample, verified on
    /// the evaluation grid.
    pub strictly_dominated: bool,
}

/// Structural and statistical audit of the layered grid family.
#[derive(Clone, Debug)]
pub struct GridFamilyReport {
    pub s: usize,
    pub ell: usize,
    pub order: usize,
    /// Each row fort is a fort whose union with its entrance is its row.
    pub forts_valid: bool,
    pub rows_disjoint: bool,
    /// Lower bound on the power domination number certified by the forts.
    pub fort_lower_bound: usize,
    pub reference_dominates: bool,
    pub hub_dominates: bool,
    pub all_columns_dominate: bool,
    /// Lower and upper bounds met, pinning the domination number to `s`.
    pub domination_number_is_s: bool,
    /// Observed degrees of the hub vertices (row degree 2 plus the `s - 1`
    /// clique edges).
    pub hub_degrees: Vec<usize>,
    pub samples: Vec<SampleComparison>,
    pub pass: bool,
}

/// Audits the grid family: row forts and their entrances, domination by the
/// hub, the reference column, and every other column, and `sample_count`
/// random `s`-subsets containing a hub vertex, each of which must be
/// strictly dominated by the reference placement (guaranteed for
/// `ell > s^2 * 2^(s+1)`).
pub fn audit_grid_family(
    s: usize,
    ell: usize,
    sample_count: usize,
    seed: u64,
) -> Result<GridFamilyReport> {
    let (g, coords) = g_family(s, ell)?;
    let mut forts_valid = true;
    let mut rows_disjoint = true;
    for i in 1..=s {
        let fort = coords.fort(i);
        let row = coords.row(i);
        let valid = is_fort(&g, &fort)?
            && fort_entrance(&g, &fort)?.union(&fort) == row
            && fort.is_subset(&row);
        forts_valid &= valid;
        for i2 in i + 1..=s {
            rows_disjoint &= row.is_disjoint(&coords.row(i2));
        }
    }
    let reference_dominates = is_power_dominating(&g, &coords.reference())?;
    let hub_dominates = is_power_dominating(&g, &coords.hub())?;
    let mut all_columns_dominate = true;
    for j in 1..=coords.eta {
        all_columns_dominate &= is_power_dominating(&g, &coords.column(j))?;
    }
    let fort_lower_bound = if forts_valid && rows_disjoint { s } else { 0 };
    let domination_number_is_s = fort_lower_bound == s && all_columns_dominate;
    let hub_degrees = coords.hub().iter().map(|v| g.degree(v)).collect();

    let reference = coords.reference();
    let hub: Vec<usize> = coords.hub().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(sample_count);
    let mut pass = forts_valid
        && rows_disjoint
        && domination_number_is_s
        && reference_dominates
        && hub_dominates;
    for _ in 0..sample_count {
        let mut a = VertexSet::singleton(hub[rng.gen_range(0..hub.len())]);
        while a.len() < s {
            a.insert(rng.gen_range(0..g.order()));
        }
        let report = compare_placements(&g, &a, &reference)?;
        let strictly_dominated = report.verdict
            == ComparisonVerdict::SecondDominates { strict: true }
            && report.grid_consistent;
        pass &= strictly_dominated;
        samples.push(SampleComparison {
            placement: a.to_vec(),
            strictly_dominated,
        });
    }
    Ok(GridFamilyReport {
        s,
        ell,
        order: g.order(),
        forts_valid,
        rows_disjoint,
        fort_lower_bound,
        reference_dominates,
        hub_dominates,
        all_columns_dominate,
        domination_number_is_s,
        hub_degrees,
        samples,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expected::expected_polynomial_set;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn demo_base_shape() {
        let (g, s) = demo_base();
        assert_eq!(g.order(), 7);
        assert_eq!(g.size(), 7);
        assert_eq!(s.len(), 3);
        assert_eq!(g.find_label("u"), vec![0]);
    }

    #[test]
    fn linear_witness_shape() {
        let (g, s) = linear_witness();
        assert_eq!(g.order(), 43);
        assert_eq!(s.to_vec(), vec![0, 1, 2]);
        let ex = expected_polynomial_set(&g, &s).unwrap();
        assert_eq!(ex.power.coeff(0), BigInt::from(43));
        assert_eq!(ex.power.coeff(1), BigInt::from(-43));
        assert!(ex.power.degree() == Some(1));
    }

    #[test]
    fn quadratic_family_polynomial() {
        for (t, w, d, s) in [(0, 0, 0, 3), (2, 1, 3, 4), (1, 0, 2, 5)] {
            let (g, sup) = quadratic_family(t, w, d, s).unwrap();
            assert_eq!(sup.len(), s);
            let ex = expected_polynomial_set(&g, &sup).unwrap();
            let (t, w, d, s) = (t as i64, w as i64, d as i64, s as i64);
            assert_eq!(ex.power.coeff(2), BigInt::from(t - w - 5));
            assert_eq!(ex.power.coeff(1), BigInt::from(-(s + 2 * t + d + 6)));
            assert_eq!(ex.power.coeff(0), BigInt::from(s + t + w + d + 11));
            assert!(ex.power.coeff(3).is_zero());
        }
    }

    #[test]
    fn quadratic_realization_recipe() {
        for (s, a, b) in [(3, 0, 30), (4, -9, 12), (5, 7, 40), (3, -4, 11)] {
            let (g, sup) = quadratic_realization(s, a, b).unwrap();
            let ex = expected_polynomial_set(&g, &sup).unwrap();
            assert_eq!(ex.power.coeff(2), BigInt::from(a));
            assert_eq!(ex.power.coeff(1), BigInt::from(-b));
            assert_eq!(ex.power.coeff(0), BigInt::from(b - a));
        }
        assert!(quadratic_realization(3, 0, 18).is_err());
        assert!(quadratic_realization(3, -9, 8).is_err());
    }

    #[test]
    fn round_robin_covers_all_pairs() {
        for s in [2usize, 4, 6, 8, 10] {
            let rounds = round_robin_factorization(s).unwrap();
            assert_eq!(rounds.len(), s - 1);
            let mut seen = std::collections::BTreeSet::new();
            for round in &rounds {
                assert_eq!(round.len(), s / 2);
                let mut used = std::collections::BTreeSet::new();
                for &(x, y) in round {
                    assert!(x < y && (1..=s).contains(&x) && (1..=s).contains(&y));
                    assert!(used.insert(x) && used.insert(y), "round not a matching");
                    assert!(seen.insert((x, y)), "pair repeated across rounds");
                }
            }
            assert_eq!(seen.len(), s * (s - 1) / 2);
        }
        assert!(round_robin_factorization(5).is_err());
    }

    #[test]
    fn grid_shape() {
        let (g, coords) = g_family(4, 5).unwrap();
        assert_eq!(g.order(), 52);
        assert_eq!(coords.eta, 13);
        // Hub degree: two row neighbors plus s - 1 clique edges.
        for v in coords.hub().iter() {
            assert_eq!(g.degree(v), 4 + 1);
        }
        // Everything outside the hub has degree at most 3.
        for v in g.vertices() {
            if !coords.hub().contains(v) {
                assert!(g.degree(v) <= 3, "vertex {v} has degree {}", g.degree(v));
            }
        }
        assert!(g_family(3, 5).is_err());
        assert!(g_family(4, 0).is_ok());
    }

    #[test]
    fn grid_forts_and_domination() {
        let (g, coords) = g_family(4, 2).unwrap();
        for i in 1..=4 {
            let fort = coords.fort(i);
            assert!(is_fort(&g, &fort).unwrap());
            assert_eq!(
                fort_entrance(&g, &fort).unwrap().union(&fort),
                coords.row(i)
            );
        }
        assert!(is_power_dominating(&g, &coords.hub()).unwrap());
        assert!(is_power_dominating(&g, &coords.reference()).unwrap());
    }
}
