//! Rational tropical plane curves: enumeration through boundary-momenta
//! configurations, Block-Gottsche weights, and the vertex-sign expansion of
//! the refined real count.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice::{LatticePoint, LatticePolygon};
use crate::linalg::{solve, Solve};
use crate::qpoly::{qbracket, HalfLaurent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropicalError {
    /// The momenta do not sum to zero.
    NonZeroMomentaSum,
    /// Degenerate configuration: some tree's system admits a positive-
    /// dimensional family, a zero-length internal edge, or a collapsed
    /// (zero-multiplicity) vertex. Carries the offending tree id.
    NonGenericMomenta { tree_id: usize },
    /// Two edge directions at a vertex are parallel.
    ZeroMultiplicity,
    /// Momenta count does not match the degree's leaf count.
    LeafCountMismatch,
}

impl fmt::Display for TropicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalError::NonZeroMomentaSum => write!(f, "momenta must sum to zero"),
            TropicalError::NonGenericMomenta { tree_id } => {
                write!(f, "non-generic momenta (tree {})", tree_id)
            }
            TropicalError::ZeroMultiplicity => write!(f, "parallel directions at a vertex"),
            TropicalError::LeafCountMismatch => {
                write!(f, "momenta count does not match leaf count")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TropicalError {}

/// One unbounded end of the tropical curves under enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeLeaf {
    /// Primitive outward direction (the dual side's outward normal).
    pub direction: LatticePoint,
    pub weight: i64,
    /// Index into `sides()` of the Newton polygon.
    pub side_id: usize,
}

/// The multiset of unbounded-end directions dual to a Newton polygon: side
/// `E_j` contributes `int_length(E_j)` weight-1 leaves in its outward normal
/// direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalDegree {
    pub leaves: Vec<DegreeLeaf>,
}

impl TropicalDegree {
    pub fn of_polygon(poly: &LatticePolygon) -> Self {
        let mut leaves = Vec::new();
        for (side_id, s) in poly.sides().iter().enumerate() {
            for _ in 0..s.int_length {
                leaves.push(DegreeLeaf {
                    direction: s.normal,
                    weight: 1,
                    side_id,
                });
            }
        }
        let sum = leaves.iter().fold(LatticePoint::new(0, 0), |acc, l| {
            LatticePoint::new(acc.a + l.weight * l.direction.a, acc.b + l.weight * l.direction.b)
        });
        debug_assert_eq!(sum, LatticePoint::new(0, 0));
        Self { leaves }
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.len()
    }

    /// Weighted direction vector of leaf `j`.
    pub fn weighted(&self, j: usize) -> LatticePoint {
        let l = self.leaves[j];
        LatticePoint::new(l.weight * l.direction.a, l.weight * l.direction.b)
    }
}

/// Boundary momenta, one per leaf of a `TropicalDegree`, summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentaConfig {
    pub mu: Vec<BigRational>,
}

impl MomentaConfig {
    pub fn new(mu: Vec<BigRational>) -> Result<Self, TropicalError> {
        let s: BigRational = mu.iter().sum();
        if !s.is_zero() {
            return Err(TropicalError::NonZeroMomentaSum);
        }
        Ok(Self { mu })
    }
}

/// An edge of a realized curve's tree. Nodes `0..m` are the labeled leaves;
/// nodes `m..2m-2` are internal. `dir_to_b` is the weighted direction of
/// travel from `a` to `b`; leaf edges have no (finite) length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub dir_to_b: LatticePoint,
    pub length: Option<BigRational>,
}

/// A realized rational tropical curve: a trivalent tree with geometric data
/// satisfying the balancing condition at every internal vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalCurve {
    pub num_leaves: usize,
    pub edges: Vec<TreeEdge>,
    /// Positions of internal vertices, indexed by node id − num_leaves.
    pub positions: Vec<(BigRational, BigRational)>,
    /// Id of the labeled tree shape in generation order.
    pub tree_id: usize,
}

fn wedge_rat(p: &(BigRational, BigRational), d: LatticePoint) -> BigRational {
    &p.0 * BigRational::from(BigInt::from(d.b)) - &p.1 * BigRational::from(BigInt::from(d.a))
}

impl TropicalCurve {
    pub fn num_internal(&self) -> usize {
        self.num_leaves - 2
    }

    fn position(&self, node: usize) -> &(BigRational, BigRational) {
        &self.positions[node - self.num_leaves]
    }

    /// Edges incident to internal node `v`, as (edge index, weighted
    /// direction outgoing from `v`).
    pub fn outgoing(&self, v: usize) -> Vec<(usize, LatticePoint)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.a == v {
                out.push((i, e.dir_to_b));
            } else if e.b == v {
                out.push((i, LatticePoint::new(-e.dir_to_b.a, -e.dir_to_b.b)));
            }
        }
        out
    }

    /// Momentum of leaf `j`: wedge of a point on the leaf ray with the
    /// outgoing weighted direction.
    pub fn momentum(&self, j: usize) -> BigRational {
        let e = self
            .edges
            .iter()
            .find(|e| e.a == j || e.b == j)
            .expect("leaf edge");
        let (attach, dir) = if e.a == j {
            (e.b, LatticePoint::new(-e.dir_to_b.a, -e.dir_to_b.b))
        } else {
            (e.a, e.dir_to_b)
        };
        wedge_rat(self.position(attach), dir)
    }

    /// Σ outgoing weighted directions vanishes at `v`.
    pub fn is_balanced_at(&self, v: usize) -> bool {
        let s = self
            .outgoing(v)
            .iter()
            .fold(LatticePoint::new(0, 0), |acc, &(_, d)| acc.add(d));
        s == LatticePoint::new(0, 0)
    }

    /// Tropical Menelaus at `v`: momenta of the three outgoing supporting
    /// rays sum to zero.
    pub fn check_menelaus_vertex(&self, v: usize) -> bool {
        let p = self.position(v);
        let s: BigRational = self
            .outgoing(v)
            .iter()
            .map(|&(_, d)| wedge_rat(p, d))
            .sum();
        s.is_zero()
    }

    /// |det| of two outgoing weighted directions at `v`.
    pub fn vertex_multiplicity(&self, v: usize) -> Result<i64, TropicalError> {
        let out = self.outgoing(v);
        assert_eq!(out.len(), 3, "internal vertices are trivalent");
        let m = out[0].1.cross(out[1].1).abs();
        if m == 0 {
            return Err(TropicalError::ZeroMultiplicity);
        }
        debug_assert_eq!(m, out[1].1.cross(out[2].1).abs());
        debug_assert_eq!(m, out[0].1.cross(out[2].1).abs());
        Ok(m)
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> {
        self.num_leaves..(2 * self.num_leaves - 2)
    }

    pub fn multiplicities(&self) -> Result<Vec<i64>, TropicalError> {
        self.internal_nodes()
            .map(|v| self.vertex_multiplicity(v))
            .collect()
    }

    /// Π over internal vertices of the q-bracket of the multiplicity.
    pub fn bg_weight(&self) -> Result<HalfLaurent, TropicalError> {
        let mut acc = HalfLaurent::one();
        for m in self.multiplicities()? {
            acc = acc * qbracket(m).expect("positive multiplicity");
        }
        Ok(acc)
    }
}

/// One vertex-sign assignment with its quantum index and sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseTerm {
    /// Sign per internal vertex, in node order.
    pub vertex_signs: Vec<i8>,
    /// 2·(quantum index): Σ s(v)·m(v).
    pub double_index: i64,
    /// (−1)^{#negative vertices}.
    pub sign: i8,
}

/// The 2^V terms of the vertex-sign expansion: each vertex contributes
/// ±m(v)/2 to the quantum index, and each negative vertex flips the sign.
pub fn phase_sign_expansion(curve: &TropicalCurve) -> Result<Vec<PhaseTerm>, TropicalError> {
    let mults = curve.multiplicities()?;
    let v = mults.len();
    let mut out = Vec::with_capacity(1 << v);
    for mask in 0u32..(1 << v) {
        let mut signs = Vec::with_capacity(v);
        let mut double_index = 0i64;
        let mut neg = 0u32;
        for (i, &m) in mults.iter().enumerate() {
            if mask >> i & 1 == 1 {
                signs.push(-1);
                double_index -= m;
                neg += 1;
            } else {
                signs.push(1);
                double_index += m;
            }
        }
        out.push(PhaseTerm {
            vertex_signs: signs,
            double_index,
            sign: if neg % 2 == 0 { 1 } else { -1 },
        });
    }
    Ok(out)
}

/// Check the per-vertex phase condition: with phases σ(E) ∈ {0, π} encoded
/// as 0/1 per edge, every internal vertex satisfies
/// Σ w(E)·σ(E)/π ≡ m(v) (mod 2).
pub fn real_phase_parity_check(
    curve: &TropicalCurve,
    phases: &[u8],
) -> Result<bool, TropicalError> {
    assert_eq!(phases.len(), curve.edges.len());
    for v in curve.internal_nodes() {
        let m = curve.vertex_multiplicity(v)?;
        let mut s = 0i64;
        for (ei, d) in curve.outgoing(v) {
            let w = d.content();
            s += w * phases[ei] as i64;
        }
        if (s - m).rem_euclid(2) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Visit every labeled trivalent tree on `m` leaves exactly once, built by
/// sequential leaf insertion; there are (2m−5)!! of them. The callback
/// receives the edge list (leaves `0..m`, internal nodes `m..2m-2`).
pub fn for_each_labeled_tree(m: usize, mut f: impl FnMut(usize, &[(usize, usize)])) {
    assert!(m >= 3);
    let mut edges: Vec<(usize, usize)> = alloc::vec![(0, m), (1, m), (2, m)];
    let mut tree_id = 0usize;
    fn rec(
        m: usize,
        next_leaf: usize,
        edges: &mut Vec<(usize, usize)>,
        tree_id: &mut usize,
        f: &mut impl FnMut(usize, &[(usize, usize)]),
    ) {
        if next_leaf == m {
            f(*tree_id, edges);
            *tree_id += 1;
            return;
        }
        let new_internal = m + next_leaf - 2;
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            // Split edge (a,b) at a new internal node and hang the leaf.
            edges[i] = (a, new_internal);
            edges.push((new_internal, b));
            edges.push((next_leaf, new_internal));
            rec(m, next_leaf + 1, edges, tree_id, f);
            edges.pop();
            edges.pop();
            edges[i] = (a, b);
        }
    }
    rec(m, 3, &mut edges, &mut tree_id, &mut f);
}

/// Realize one labeled tree shape through the momenta, or report why not.
enum Realization {
    Curve(TropicalCurve),
    /// No curve of this shape passes through the configuration.
    None,
    /// The configuration is degenerate for this shape.
    NonGeneric,
}

fn realize_tree(
    tree_id: usize,
    edges: &[(usize, usize)],
    degree: &TropicalDegree,
    mu: &[BigRational],
) -> Realization {
    let m = degree.num_leaves();
    let n_nodes = 2 * m - 2;

    // Rooted orientation: parent links via a DFS from the first internal
    // node, then weighted subtree direction sums from the leaves up.
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); n_nodes];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push(i);
        adj[b].push(i);
    }
    let root = m;
    let mut parent_edge: Vec<Option<usize>> = alloc::vec![None; n_nodes];
    let mut order: Vec<usize> = Vec::with_capacity(n_nodes);
    let mut stack = alloc::vec![root];
    let mut seen = alloc::vec![false; n_nodes];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &ei in &adj[u] {
            let (a, b) = edges[ei];
            let w = if a == u { b } else { a };
            if !seen[w] {
                seen[w] = true;
                parent_edge[w] = Some(ei);
                stack.push(w);
            }
        }
    }

    // down[v] = Σ weighted leaf directions in the subtree at v.
    let mut down: Vec<LatticePoint> = alloc::vec![LatticePoint::new(0, 0); n_nodes];
    for &u in order.iter().rev() {
        if u < m {
            down[u] = degree.weighted(u);
        }
        if let Some(ei) = parent_edge[u] {
            let (a, b) = edges[ei];
            let p = if a == u { b } else { a };
            let d = down[u];
            down[p] = down[p].add(d);
        }
    }

    // Internal edges get unknown lengths; a zero direction means the shape
    // cannot be realized by a simple curve, so the shape is skipped.
    let mut internal_unknown: Vec<Option<usize>> = alloc::vec![None; edges.len()];
    let mut n_lengths = 0usize;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a >= m && b >= m {
            let child = if parent_edge[a] == Some(i) { a } else { b };
            if down[child] == LatticePoint::new(0, 0) {
                return Realization::None;
            }
            internal_unknown[i] = Some(n_lengths);
            n_lengths += 1;
        }
    }
    debug_assert_eq!(n_lengths, m - 3);

    // Unknowns: anchor (root position, 2) + internal edge lengths.
    // Equation for leaf j: P_j ∧ D_j = μ_j, where P_j is the position of
    // the leaf's internal endpoint, reached from the root by adding
    // length·(downward direction) along each internal edge of the path.
    let n_unknowns = 2 + n_lengths;
    let zero = BigRational::zero();
    let mut a_mat: Vec<Vec<BigRational>> = Vec::with_capacity(m - 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m - 1);
    let int_rat = |v: i64| BigRational::from(BigInt::from(v));
    for j in 0..m - 1 {
        let dj = degree.weighted(j);
        let mut row = alloc::vec![zero.clone(); n_unknowns];
        row[0] = int_rat(dj.b);
        row[1] = int_rat(-dj.a);
        // Walk up from the leaf's internal endpoint to the root.
        let leaf_edge = parent_edge[j].expect("leaf has a parent edge");
        let (a, b) = edges[leaf_edge];
        let mut node = if a == j { b } else { a };
        while node != root {
            let ei = parent_edge[node].expect("path to root");
            let k = internal_unknown[ei].expect("internal edge");
            // Downward direction on this edge is toward `node`.
            let de = down[node];
            row[2 + k] = int_rat(de.cross(dj));
            let (ea, eb) = edges[ei];
            node = if ea == node { eb } else { ea };
        }
        a_mat.push(row);
        rhs.push(mu[j].clone());
    }

    let x = match solve(&a_mat, &rhs) {
        Solve::Unique(x) => x,
        Solve::Inconsistent => return Realization::None,
        Solve::Underdetermined => return Realization::NonGeneric,
    };
    for len in &x[2..] {
        if len.is_zero() {
            return Realization::NonGeneric;
        }
        if len.is_negative() {
            return Realization::None;
        }
    }

    // Internal vertex positions by a second walk from the root.
    let mut positions: Vec<(BigRational, BigRational)> =
        alloc::vec![(zero.clone(), zero.clone()); m - 2];
    positions[0] = (x[0].clone(), x[1].clone());
    for &u in &order {
        if u < m || u == root {
            continue;
        }
        let ei = parent_edge[u].unwrap();
        let k = internal_unknown[ei].expect("internal edge on internal path");
        let (a, b) = edges[ei];
        let p = if a == u { b } else { a };
        let de = down[u];
        let base = positions[p - m].clone();
        positions[u - m] = (
            base.0 + &x[2 + k] * int_rat(de.a),
            base.1 + &x[2 + k] * int_rat(de.b),
        );
    }

    let tree_edges: Vec<TreeEdge> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            // Orient dir_to_b: downward direction points toward the child.
            let child = if parent_edge[b] == Some(i) { b } else { a };
            let d = if child == b {
                down[child]
            } else {
                LatticePoint::new(-down[child].a, -down[child].b)
            };
            TreeEdge {
                a,
                b,
                dir_to_b: d,
                length: internal_unknown[i].map(|k| x[2 + k].clone()),
            }
        })
        .collect();

    let curve = TropicalCurve {
        num_leaves: m,
        edges: tree_edges,
        positions,
        tree_id,
    };

    // A collapsed vertex in an otherwise valid solution signals a
    // degenerate configuration.
    if curve.multiplicities().is_err() {
        return Realization::NonGeneric;
    }
    // The skipped m-th momentum is implied by the zero-sum; verify anyway.
    debug_assert_eq!(curve.momentum(m - 1), mu[m - 1]);
    Realization::Curve(curve)
}

/// All rational tropical curves of the polygon's degree passing through the
/// boundary configuration `mu`, over every labeled trivalent tree shape.
pub fn enumerate_rational(
    poly: &LatticePolygon,
    momenta: &MomentaConfig,
) -> Result<Vec<TropicalCurve>, TropicalError> {
    let degree = TropicalDegree::of_polygon(poly);
    enumerate_degree(&degree, momenta)
}

pub fn enumerate_degree(
    degree: &TropicalDegree,
    momenta: &MomentaConfig,
) -> Result<Vec<TropicalCurve>, TropicalError> {
    let m = degree.num_leaves();
    if momenta.mu.len() != m {
        return Err(TropicalError::LeafCountMismatch);
    }
    // Coincident leaves (same weighted direction and momentum) are the same
    // ray: degenerate by fiat, and they would otherwise surface as singular
    // systems deep in the tree loop.
    for i in 0..m {
        for j in i + 1..m {
            if degree.weighted(i) == degree.weighted(j) && momenta.mu[i] == momenta.mu[j] {
                return Err(TropicalError::NonGenericMomenta { tree_id: 0 });
            }
        }
    }
    // Genericity: a zero-direction sub-multiset with zero momentum sum
    // admits curves with contracted edges.
    if m <= 16 {
        for mask in 1u32..(1 << m) - 1 {
            let mut d = LatticePoint::new(0, 0);
            let mut s = BigRational::zero();
            for j in 0..m {
                if mask >> j & 1 == 1 {
                    d = d.add(degree.weighted(j));
                    s += &momenta.mu[j];
                }
            }
            if d == LatticePoint::new(0, 0) && s.is_zero() {
                return Err(TropicalError::NonGenericMomenta { tree_id: 0 });
            }
        }
    }

    let mut out = Vec::new();
    let mut bad: Option<usize> = None;
    for_each_labeled_tree(m, |tree_id, edges| {
        if bad.is_some() {
            return;
        }
        match realize_tree(tree_id, edges, degree, &momenta.mu) {
            Realization::Curve(c) => out.push(c),
            Realization::None => {}
            Realization::NonGeneric => bad = Some(tree_id),
        }
    });
    if let Some(tree_id) = bad {
        return Err(TropicalError::NonGenericMomenta { tree_id });
    }
    Ok(out)
}

/// Σ of Block-Gottsche weights over all curves through the configuration.
pub fn bg_invariant(
    poly: &LatticePolygon,
    momenta: &MomentaConfig,
) -> Result<HalfLaurent, TropicalError> {
    let curves = enumerate_rational(poly, momenta)?;
    let mut acc = HalfLaurent::zero();
    for c in &curves {
        acc = acc + c.bg_weight()?;
    }
    Ok(acc)
}

/// Σ over curves and vertex-sign assignments of sign·q^{quantum index}:
/// the refined count of real phase structures.
pub fn r_invariant(
    poly: &LatticePolygon,
    momenta: &MomentaConfig,
) -> Result<HalfLaurent, TropicalError> {
    let curves = enumerate_rational(poly, momenta)?;
    let mut acc = HalfLaurent::zero();
    for c in &curves {
        for term in phase_sign_expansion(c)? {
            acc = acc
                + HalfLaurent::monomial(term.double_index, BigInt::from(term.sign as i64));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rectangle, triangle};
    use crate::linalg::{int, rat};
    use alloc::vec;

    fn momenta(vals: &[(i64, i64)]) -> MomentaConfig {
        MomentaConfig::new(vals.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn tree_counts_are_double_factorials() {
        for (m, want) in [(3usize, 1usize), (4, 3), (5, 15), (6, 105)] {
            let mut n = 0;
            for_each_labeled_tree(m, |_, _| n += 1);
            assert_eq!(n, want, "m = {m}");
        }
    }

    #[test]
    fn degree_of_triangle() {
        let d = TropicalDegree::of_polygon(&triangle(2));
        assert_eq!(d.num_leaves(), 6);
        let mut per_side = [0; 3];
        for l in &d.leaves {
            per_side[l.side_id] += 1;
            assert_eq!(l.weight, 1);
        }
        assert_eq!(per_side, [2, 2, 2]);
    }

    #[test]
    fn momenta_must_sum_to_zero() {
        assert_eq!(
            MomentaConfig::new(vec![int(1), int(2)]).unwrap_err(),
            TropicalError::NonZeroMomentaSum
        );
    }

    #[test]
    fn tropical_line_unique() {
        // Leaf directions (0,-1),(1,1),(-1,0); the single vertex sits where
        // the three momenta rays concur.
        let poly = triangle(1);
        let mu = momenta(&[(3, 2), (-4, 1), (5, 2)]);
        let curves = enumerate_rational(&poly, &mu).unwrap();
        assert_eq!(curves.len(), 1);
        let c = &curves[0];
        assert_eq!(c.multiplicities().unwrap(), vec![1]);
        for j in 0..3 {
            assert_eq!(c.momentum(j), mu.mu[j], "leaf {j}");
        }
        for v in c.internal_nodes() {
            assert!(c.is_balanced_at(v));
            assert!(c.check_menelaus_vertex(v));
        }
        assert_eq!(c.bg_weight().unwrap(), HalfLaurent::one());
    }

    #[test]
    fn unit_square_count_is_one() {
        let poly = rectangle(1, 1);
        let mu = momenta(&[(13, 10), (-7, 10), (2, 1), (-26, 10)]);
        let curves = enumerate_rational(&poly, &mu).unwrap();
        assert_eq!(curves.len(), 1);
        let bg = bg_invariant(&poly, &mu).unwrap();
        assert_eq!(bg, HalfLaurent::one());
    }

    #[test]
    fn conic_count_is_one() {
        let poly = triangle(2);
        let mu = momenta(&[
            (137, 100),
            (-211, 100),
            (83, 100),
            (-455, 100),
            (311, 100),
            (135, 100),
        ]);
        let bg = bg_invariant(&poly, &mu).unwrap();
        use num_traits::One;
        assert!(BigInt::from(bg.eval_at_one()).is_one());
        assert!(bg.is_symmetric());
        assert!(bg.has_nonnegative_coeffs());
    }

    #[test]
    fn coincident_parallel_leaves_rejected() {
        let poly = triangle(2);
        let mu = momenta(&[(1, 1), (1, 1), (83, 100), (-455, 100), (311, 100), (-139, 100)]);
        assert!(matches!(
            enumerate_rational(&poly, &mu),
            Err(TropicalError::NonGenericMomenta { .. })
        ));
    }

    #[test]
    fn per_curve_sign_expansion_identity() {
        // Σ_s (−1)^{#neg} q^{Σ s·m/2} = Π_v (q^{m/2} − q^{−m/2}).
        let poly = triangle(2);
        let mu = momenta(&[
            (137, 100),
            (-211, 100),
            (83, 100),
            (-455, 100),
            (311, 100),
            (135, 100),
        ]);
        for c in enumerate_rational(&poly, &mu).unwrap() {
            let mut lhs = HalfLaurent::zero();
            for t in phase_sign_expansion(&c).unwrap() {
                lhs = lhs + HalfLaurent::monomial(t.double_index, BigInt::from(t.sign as i64));
            }
            let mut rhs = HalfLaurent::one();
            for m in c.multiplicities().unwrap() {
                rhs = rhs
                    * (HalfLaurent::monomial(m, BigInt::from(1))
                        + HalfLaurent::monomial(-m, BigInt::from(-1)));
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn refined_identity_small() {
        // R = (q^{1/2} − q^{−1/2})^{m−2} · BG, exactly.
        let cases: Vec<(LatticePolygon, MomentaConfig)> = vec![
            (triangle(1), momenta(&[(3, 2), (-4, 1), (5, 2)])),
            (rectangle(1, 1), momenta(&[(13, 10), (-7, 10), (2, 1), (-26, 10)])),
        ];
        for (poly, mu) in cases {
            let m = poly.boundary_lattice_count() as u32;
            let r = r_invariant(&poly, &mu).unwrap();
            let rhs = HalfLaurent::half_diff().pow(m - 2) * bg_invariant(&poly, &mu).unwrap();
            assert_eq!(r, rhs);
        }
    }

    #[test]
    fn phase_parity_example() {
        let poly = triangle(1);
        let mu = momenta(&[(3, 2), (-4, 1), (5, 2)]);
        let c = &enumerate_rational(&poly, &mu).unwrap()[0];
        // m(v)=1: an odd number of π phases on weight-1 edges passes.
        assert!(real_phase_parity_check(c, &[1, 0, 0]).unwrap());
        assert!(!real_phase_parity_check(c, &[0, 0, 0]).unwrap());
    }
}
