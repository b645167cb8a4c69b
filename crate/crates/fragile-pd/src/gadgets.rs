//! Fork and spoon gadgets for steering expected-polynomial coefficients.
//!
//! A gadget is a small graph with distinguished affix vertices, a connection
//! vertex, and a path head carrying an appended path. Affixing identifies
//! the affix vertices with chosen support vertices of a host graph. When
//! every one of those support vertices also has two sensor-free leaf
//! neighbors, the probability that the path head (and each appended path
//! vertex) is observed has a small closed form in the sensor multiplicities,
//! and its degree equals the total multiplicity on the affixed set. Stacking
//! a fork and a spoon per reachable degree and solving for the two path
//! lengths steers each such coefficient of the expected polynomial to any
//! requested integer.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expected::{
    coefficient_sign_audit, degree_sets, expected_polynomial_multiset, per_vertex_probabilities,
    ExPoly, Placement, DEFAULT_ENUMERATION_CAP,
};
use crate::graph::Graph;
use crate::poly::IntPoly;

/// Longest admissible appended path per gadget.
pub const PATH_LENGTH_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Fork,
    Spoon,
}

/// Shape parameters of a gadget: its kind, the number of affix vertices
/// (at least two), and the length of the appended path (possibly zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub affix_count: usize,
    pub path_len: usize,
}

impl GadgetSpec {
    pub fn fork(path_len: usize, affix_count: usize) -> Self {
        Self {
            kind: GadgetKind::Fork,
            affix_count,
            path_len,
        }
    }

    pub fn spoon(path_len: usize, affix_count: usize) -> Self {
        Self {
            kind: GadgetKind::Spoon,
            affix_count,
            path_len,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.affix_count < 2 {
            return Err(Error::InvalidParameter(format!(
                "gadgets need at least two affix vertices, got {}",
                self.affix_count
            )));
        }
        Ok(())
    }
}

/// A built gadget with its distinguished vertices.
#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub graph: Graph,
    /// Affix vertices in order; these get identified with host vertices.
    pub affix: Vec<usize>,
    /// The vertex adjacent to the path head inside the gadget body.
    pub connection: usize,
    /// The degree-one body vertex carrying the appended path.
    pub path_head: usize,
    /// Appended path vertices in order (empty when `path_len` is zero).
    pub path: Vec<usize>,
}

/// A star on `a + 1` leaves with `a` edges subdivided; the subdivided
/// branches end in the affix vertices and the remaining leaf is the path
/// head. Order `2a + 2 + path_len`.
pub fn build_fork(path_len: usize, affix_count: usize) -> Result<GadgetGraph> {
    build(&GadgetSpec::fork(path_len, affix_count))
}

/// The spoon with two affix vertices is a four-cycle with a pendant path
/// head on the connection vertex (order `5 + path_len`); with `a >= 3` affix
/// vertices it is the subdivided incidence structure of the `(a-1)`-subsets
/// of the affix set, plus a connection vertex over the subset side and a
/// pendant path head. Order `a^2 + a + 2 + path_len`.
pub fn build_spoon(path_len: usize, affix_count: usize) -> Result<GadgetGraph> {
    build(&GadgetSpec::spoon(path_len, affix_count))
}

/// Builds the gadget described by `spec`.
pub fn build(spec: &GadgetSpec) -> Result<GadgetGraph> {
    spec.validate()?;
    let a = spec.affix_count;
    let mut g;
    let affix: Vec<usize>;
    let connection;
    let path_head;
    match spec.kind {
        GadgetKind::Fork => {
            // 0 is the hub; branch i has subdivision vertex 1 + 2i and affix
            // vertex 2 + 2i; the unsubdivided leaf 2a + 1 is the path head.
            g = Graph::new(2 * a + 2);
            connection = 0;
            for i in 0..a {
                g.add_edge(0, 1 + 2 * i)?;
                g.add_edge(1 + 2 * i, 2 + 2 * i)?;
            }
            path_head = 2 * a + 1;
            g.add_edge(0, path_head)?;
            affix = (0..a).map(|i| 2 + 2 * i).collect();
        }
        GadgetKind::Spoon if a == 2 => {
            // Four-cycle 0-1-2-3 with path head 4 on the connection vertex 0.
            g = Graph::new(5);
            for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
                g.add_edge(u, v)?;
            }
            connection = 0;
            path_head = 4;
            g.add_edge(connection, path_head)?;
            affix = vec![1, 3];
        }
        GadgetKind::Spoon => {
            // Affix vertices 0..a; subset vertices a..2a (one per
            // (a-1)-subset, in lexicographic order); connection 2a; path
            // head 2a + 1; one subdivision vertex per incidence.
            g = Graph::new(2 * a + 2);
            affix = (0..a).collect();
            connection = 2 * a;
            path_head = 2 * a + 1;
            g.add_edge(connection, path_head)?;
            for (j, subset) in (0..a).combinations(a - 1).enumerate() {
                let b = a + j;
                g.add_edge(connection, b)?;
                for w in subset {
                    let mid = g.add_vertex();
                    g.add_edge(b, mid)?;
                    g.add_edge(mid, w)?;
                }
            }
        }
    }
    let path = g.append_path(path_head, spec.path_len)?;
    Ok(GadgetGraph {
        graph: g,
        affix,
        connection,
        path_head,
        path,
    })
}

/// A gadget affixed onto a host graph. Host identifiers are unchanged.
#[derive(Clone, Debug)]
pub struct Affixed {
    pub graph: Graph,
    pub connection: usize,
    pub path_head: usize,
    pub path: Vec<usize>,
}

/// Affixes the gadget onto `host` by identifying its affix vertices with
/// `targets` (which must be distinct host vertices, one per affix vertex).
pub fn affix(host: &Graph, targets: &[usize], spec: &GadgetSpec) -> Result<Affixed> {
    spec.validate()?;
    if targets.len() != spec.affix_count {
        return Err(Error::ArityMismatch {
            expected: spec.affix_count,
            got: targets.len(),
        });
    }
    let gadget = build(spec)?;
    let pairs: Vec<(usize, usize)> = targets
        .iter()
        .copied()
        .zip(gadget.affix.iter().copied())
        .collect();
    let (graph, map) = host.identify_vertices(&gadget.graph, &pairs)?;
    Ok(Affixed {
        graph,
        connection: map[gadget.connection],
        path_head: map[gadget.path_head],
        path: gadget.path.iter().map(|&v| map[v]).collect(),
    })
}

/// Closed form for the probability that the path head of an affixed gadget
/// is observed, given the sensor multiplicities `f` on the affixed support
/// vertices (in affix order).
///
/// Valid whenever each of those support vertices has at least two leaf
/// neighbors without sensors. Fork: `prod (1 - q^f)`. Spoon on two
/// vertices: `1 - q^(f1+f2)`. Spoon on `a >= 3` vertices:
/// `sum_w q^(f_w) prod_{u != w} (1 - q^(f_u)) + prod (1 - q^f)`.
pub fn path_head_probability(spec: &GadgetSpec, f: &[usize]) -> Result<IntPoly> {
    spec.validate()?;
    if f.len() != spec.affix_count {
        return Err(Error::ArityMismatch {
            expected: spec.affix_count,
            got: f.len(),
        });
    }
    if let Some(i) = f.iter().position(|&m| m == 0) {
        return Err(Error::ZeroMultiplicity { vertex: i });
    }
    let full: IntPoly = f.iter().fold(IntPoly::one(), |acc, &m| {
        &acc * &IntPoly::one_minus_q_pow(m)
    });
    Ok(match spec.kind {
        GadgetKind::Fork => full,
        GadgetKind::Spoon if spec.affix_count == 2 => IntPoly::one_minus_q_pow(f[0] + f[1]),
        GadgetKind::Spoon => {
            let mut acc = full;
            for w in 0..f.len() {
                let mut term = IntPoly::monomial(1, f[w]);
                for (u, &m) in f.iter().enumerate() {
                    if u != w {
                        term = &term * &IntPoly::one_minus_q_pow(m);
                    }
                }
                acc = &acc + &term;
            }
            acc
        }
    })
}

/// Engine-versus-closed-form comparison for one affixed gadget.
#[derive(Clone, Debug)]
pub struct ClosedFormReport {
    /// Head and appended-path probabilities all match the closed form.
    pub matches: bool,
    pub head_matches: bool,
    pub path_matches: bool,
    pub engine_head: IntPoly,
    pub closed_form: IntPoly,
}

/// Affixes the gadget onto `host` at `targets` and verifies that the
/// engine-computed observation probability of the path head, and of every
/// appended path vertex, equals the closed form.
///
/// Preconditions checked: the targets carry sensors of `m`, and each target
/// has at least two leaf neighbors outside the support of `m`.
pub fn verify_closed_form(
    host: &Graph,
    targets: &[usize],
    spec: &GadgetSpec,
    m: &Placement,
) -> Result<ClosedFormReport> {
    let support = m.support();
    for &t in targets {
        if m.multiplicity(t) == 0 {
            return Err(Error::InvalidParameter(format!(
                "affix target {t} carries no sensor"
            )));
        }
        let free_leaves = host
            .neighbors(t)
            .iter()
            .filter(|&&u| host.is_leaf(u) && !support.contains(u))
            .count();
        if free_leaves < 2 {
            return Err(Error::InvalidParameter(format!(
                "affix target {t} needs two sensor-free leaf neighbors, has {free_leaves}"
            )));
        }
    }
    let affixed = affix(host, targets, spec)?;
    let probs = per_vertex_probabilities(&affixed.graph, m)?;
    let f: Vec<usize> = targets.iter().map(|&t| m.multiplicity(t)).collect();
    let closed_form = path_head_probability(spec, &f)?;
    let head_matches = probs[affixed.path_head] == closed_form;
    let path_matches = affixed.path.iter().all(|&v| probs[v] == closed_form);
    Ok(ClosedFormReport {
        matches: head_matches && path_matches,
        head_matches,
        path_matches,
        engine_head: probs[affixed.path_head].clone(),
        closed_form,
    })
}

/// The degree sets of a placement: sums `f(S')` over nonempty subsets of
/// the support (`r1`) and over subsets of size at least two (`r2`). The
/// coefficient-targeting builder can steer exactly the degrees in `r2`.
pub fn sensor_class_sets(m: &Placement) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    if m.support_size() > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            size: m.support_size(),
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    Ok(degree_sets(m))
}

/// Gadget stack chosen for one targeted degree.
#[derive(Clone, Debug)]
pub struct GadgetChoice {
    /// The targeted degree `i` (a multi-vertex sensor sum).
    pub degree: usize,
    /// The affixed support subset, sorted; its multiplicities sum to `i`.
    pub support_subset: Vec<usize>,
    /// Appended path length of the fork.
    pub fork_path_len: u64,
    /// Appended path length of the spoon.
    pub spoon_path_len: u64,
}

/// Result of [`target_coefficients`].
#[derive(Clone, Debug)]
pub struct GadgetBuildReport {
    pub graph: Graph,
    /// Host vertices keep their identifiers `0..host_order` and induce the
    /// original host graph in `graph`.
    pub host_order: usize,
    /// Leaves added per support vertex to establish the closed forms.
    pub added_leaves: BTreeMap<usize, usize>,
    /// One fork/spoon pair per targeted degree, in descending degree order.
    pub choices: Vec<GadgetChoice>,
    /// The verified expected polynomial of the built graph.
    pub polynomial: ExPoly,
}

/// Builds a supergraph of `host` whose expected polynomial under `m` has
/// the requested coefficient at every degree in the multi-vertex sum set
/// `r2` of the placement.
///
/// `targets` must specify exactly the degrees of `r2`. The host, with
/// leaves added so each support vertex has two sensor-free leaf neighbors,
/// is an induced subgraph of the result. Coefficients at other degrees are
/// whatever the construction forces (zero outside the sum set `r1`,
/// nonpositive on `r1 \ r2`).
pub fn target_coefficients(
    host: &Graph,
    m: &Placement,
    targets: &BTreeMap<usize, BigInt>,
) -> Result<GadgetBuildReport> {
    let support = m.support_vec();
    if support.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "coefficient targeting needs a support of at least two vertices, got {}",
            support.len()
        )));
    }
    let (_, r2) = sensor_class_sets(m)?;
    let missing: Vec<usize> = r2
        .iter()
        .filter(|i| !targets.contains_key(i))
        .copied()
        .collect();
    let extra: Vec<usize> = targets
        .keys()
        .filter(|i| !r2.contains(i))
        .copied()
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(Error::TargetMismatch { missing, extra });
    }

    let mut g = host.clone();
    let host_order = host.order();
    let support_set = m.support();
    let mut added_leaves = BTreeMap::new();
    for &v in &support {
        let free = g
            .neighbors(v)
            .iter()
            .filter(|&&u| g.is_leaf(u) && !support_set.contains(u))
            .count();
        if free < 2 {
            for _ in free..2 {
                g.add_leaf(v)?;
            }
            added_leaves.insert(v, 2 - free);
        }
    }

    // Smallest subset (by cardinality, then lexicographically) whose
    // multiplicities sum to each targeted degree.
    let pick_subset = |i: usize| -> Vec<usize> {
        for size in 2..=support.len() {
            for subset in support.iter().copied().combinations(size) {
                if subset.iter().map(|&v| m.multiplicity(v)).sum::<usize>() == i {
                    return subset;
                }
            }
        }
        unreachable!("degree {i} came from the subset sum enumeration")
    };

    // Affix all gadget bodies with zero-length paths first. Appended paths
    // do not change the observation probability of any body vertex, so the
    // polynomial of this skeleton is the path-independent part.
    let degrees: Vec<usize> = r2.iter().rev().copied().collect();
    let mut picks = Vec::with_capacity(degrees.len());
    let mut heads = Vec::with_capacity(degrees.len());
    for &i in &degrees {
        let subset = pick_subset(i);
        let fork_spec = GadgetSpec::fork(0, subset.len());
        let spoon_spec = GadgetSpec::spoon(0, subset.len());
        let fork = affix(&g, &subset, &fork_spec)?;
        g = fork.graph;
        let spoon = affix(&g, &subset, &spoon_spec)?;
        g = spoon.graph;
        heads.push((fork.path_head, spoon.path_head));
        picks.push(subset);
    }
    let skeleton = expected_polynomial_multiset(&g, m)?;

    // Solve for the path lengths degree by degree, descending: every
    // appended path vertex of the pair at degree i' contributes its head's
    // closed form, whose degree is i', so higher pairs are already fixed
    // when degree i is balanced.
    let mut head_polys: Vec<(IntPoly, IntPoly)> = Vec::with_capacity(degrees.len());
    for (idx, &i) in degrees.iter().enumerate() {
        let subset = &picks[idx];
        let f: Vec<usize> = subset.iter().map(|&v| m.multiplicity(v)).collect();
        let fork_poly = path_head_probability(&GadgetSpec::fork(0, subset.len()), &f)?;
        let spoon_poly = path_head_probability(&GadgetSpec::spoon(0, subset.len()), &f)?;
        debug_assert_eq!(fork_poly.degree(), Some(i));
        head_polys.push((fork_poly, spoon_poly));
    }
    let mut choices: Vec<GadgetChoice> = Vec::with_capacity(degrees.len());
    for (idx, &i) in degrees.iter().enumerate() {
        let mut t = targets[&i].clone() - skeleton.power.coeff(i);
        for (prev, choice) in choices.iter().enumerate() {
            let (fork_poly, spoon_poly) = &head_polys[prev];
            t -= fork_poly.coeff(i) * BigInt::from(choice.fork_path_len)
                + spoon_poly.coeff(i) * BigInt::from(choice.spoon_path_len);
        }
        let a = picks[idx].len();
        // Coefficient of q^i: (-1)^a for the fork head, (-1)^(a-1) (a-1)
        // for the spoon head, so psi - (a-1) phi = (-1)^a t.
        let u = if a % 2 == 0 { t } else { -t };
        let (psi, phi) = if u.is_negative() {
            let span = BigInt::from(a - 1);
            let phi = (-&u + (&span - 1)) / &span;
            let psi = &u + &phi * &span;
            (psi, phi)
        } else {
            (u, BigInt::zero())
        };
        let fit = |x: &BigInt| -> Result<u64> {
            x.to_u64()
                .filter(|&v| v <= PATH_LENGTH_CAP)
                .ok_or_else(|| Error::PathLengthCap {
                    degree: i,
                    needed: x.to_string(),
                    cap: PATH_LENGTH_CAP,
                })
        };
        choices.push(GadgetChoice {
            degree: i,
            support_subset: picks[idx].clone(),
            fork_path_len: fit(&psi)?,
            spoon_path_len: fit(&phi)?,
        });
    }

    for (idx, choice) in choices.iter().enumerate() {
        let (fork_head, spoon_head) = heads[idx];
        g.append_path(fork_head, choice.fork_path_len as usize)?;
        g.append_path(spoon_head, choice.spoon_path_len as usize)?;
    }

    let polynomial = expected_polynomial_multiset(&g, m)?;
    for (&i, c) in targets {
        assert_eq!(
            polynomial.power.coeff(i),
            *c,
            "built graph must hit the requested coefficient at degree {i}"
        );
    }
    let audit = coefficient_sign_audit(&g, m)?;
    assert!(audit.pass, "built graph must satisfy the sign constraints");
    Ok(GadgetBuildReport {
        graph: g,
        host_order,
        added_leaves,
        choices,
        polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::StandardKind;

    #[test]
    fn fork_shape() {
        let f = build_fork(3, 2).unwrap();
        assert_eq!(f.graph.order(), 2 * 2 + 2 + 3);
        assert_eq!(f.graph.degree(f.connection), 3);
        assert_eq!(f.affix.len(), 2);
        for &w in &f.affix {
            assert_eq!(f.graph.degree(w), 1);
        }
        assert_eq!(f.path.len(), 3);
        assert!(f.graph.has_edge(f.connection, f.path_head));
    }

    #[test]
    fn spoon_two_shape() {
        let s = build_spoon(0, 2).unwrap();
        assert_eq!(s.graph.order(), 5);
        assert_eq!(s.graph.degree(s.connection), 3);
        for &w in &s.affix {
            assert!(s.graph.has_edge(s.connection, w));
            assert_eq!(s.graph.degree(w), 2);
        }
        assert!(s.path.is_empty());
    }

    #[test]
    fn spoon_large_shape() {
        for a in 3..=5 {
            let s = build_spoon(1, a).unwrap();
            assert_eq!(s.graph.order(), a * a + a + 2 + 1);
            // Connection vertex covers the subset side plus the path head.
            assert_eq!(s.graph.degree(s.connection), a + 1);
            for &w in &s.affix {
                assert_eq!(s.graph.degree(w), a - 1);
            }
        }
    }

    #[test]
    fn affix_identifies_targets() {
        let host = Graph::standard(StandardKind::Complete, 3).unwrap();
        let spec = GadgetSpec::fork(2, 2);
        let out = affix(&host, &[0, 2], &spec).unwrap();
        // Host edges intact, affix vertices merged away.
        assert_eq!(out.graph.order(), 3 + (2 * 2 + 2 + 2) - 2);
        assert!(out.graph.has_edge(0, 1));
        assert!(out.graph.has_edge(0, 2));
        // Each target now touches one subdivision vertex of the fork.
        assert_eq!(out.graph.degree(0), 3);
        assert!(affix(&host, &[0], &spec).is_err());
    }

    #[test]
    fn closed_forms_small() {
        let fork = path_head_probability(&GadgetSpec::fork(0, 2), &[1, 1]).unwrap();
        assert_eq!(
            fork,
            &IntPoly::one_minus_q_pow(1) * &IntPoly::one_minus_q_pow(1)
        );
        let spoon = path_head_probability(&GadgetSpec::spoon(0, 2), &[1, 2]).unwrap();
        assert_eq!(spoon, IntPoly::one_minus_q_pow(3));
        assert!(path_head_probability(&GadgetSpec::fork(0, 2), &[1]).is_err());
        assert!(path_head_probability(&GadgetSpec::fork(0, 2), &[1, 0]).is_err());
    }

    #[test]
    fn verify_closed_form_on_simple_host() {
        // Two support vertices, each with two free leaves.
        let mut host = Graph::new(2);
        host.add_edge(0, 1).unwrap();
        for v in 0..2 {
            host.add_leaf(v).unwrap();
            host.add_leaf(v).unwrap();
        }
        let m = Placement::from_pairs([(0, 1), (1, 2)]).unwrap();
        for spec in [GadgetSpec::fork(2, 2), GadgetSpec::spoon(2, 2)] {
            let report = verify_closed_form(&host, &[0, 1], &spec, &m).unwrap();
            assert!(report.matches, "{spec:?}: {report:?}");
        }
    }

    #[test]
    fn closed_form_precondition_enforced() {
        let mut host = Graph::new(2);
        host.add_edge(0, 1).unwrap();
        let m = Placement::from_pairs([(0, 1), (1, 1)]).unwrap();
        assert!(verify_closed_form(&host, &[0, 1], &GadgetSpec::fork(0, 2), &m).is_err());
    }

    #[test]
    fn target_requires_matching_degrees() {
        let host = Graph::standard(StandardKind::Path, 2).unwrap();
        let m = Placement::from_set(&[0usize, 1].into_iter().collect());
        // r2 = {2}; ask for a degree that is not reachable.
        let mut targets = BTreeMap::new();
        targets.insert(3usize, BigInt::from(1));
        match target_coefficients(&host, &m, &targets) {
            Err(Error::TargetMismatch { missing, extra }) => {
                assert_eq!(missing, vec![2]);
                assert_eq!(extra, vec![3]);
            }
            other => panic!("expected target mismatch, got {other:?}"),
        }
    }

    #[test]
    fn target_small_pair() {
        let host = Graph::standard(StandardKind::Path, 2).unwrap();
        let m = Placement::from_set(&[0usize, 1].into_iter().collect());
        let mut targets = BTreeMap::new();
        targets.insert(2usize, BigInt::from(-7));
        let report = target_coefficients(&host, &m, &targets).unwrap();
        assert_eq!(report.polynomial.power.coeff(2), BigInt::from(-7));
        // Host is induced: the original edge survives and no new edge joins
        // the two host vertices to each other.
        assert!(report.graph.has_edge(0, 1));
        assert_eq!(report.host_order, 2);
    }
}
