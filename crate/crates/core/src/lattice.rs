//! Exact lattice-polygon primitives: sides, primitive normals, areas, lattice counts.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

/// A point of Z².
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Cross product of `self` and `other` viewed as vectors.
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn sub(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a - other.a, self.b - other.b)
    }

    pub fn add(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a + other.a, self.b + other.b)
    }

    /// gcd of the absolute values of the coordinates (0 for the origin).
    pub fn content(self) -> i64 {
        self.a.gcd(&self.b)
    }

    /// The primitive vector in the same direction. Panics on the origin.
    pub fn primitive(self) -> LatticePoint {
        let g = self.content();
        assert!(g > 0, "zero vector has no direction");
        LatticePoint::new(self.a / g, self.b / g)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// One edge of a lattice polygon, with its primitive outward normal and
/// integer length (one less than the number of lattice points on the edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub endpoints: [LatticePoint; 2],
    pub normal: LatticePoint,
    pub int_length: i64,
}

impl Side {
    /// Primitive tangent vector oriented counterclockwise along the boundary.
    pub fn primitive_tangent(&self) -> LatticePoint {
        self.endpoints[1].sub(self.endpoints[0]).primitive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonError {
    /// Fewer than 3 distinct vertices, zero area, or a reflex/collinear chain
    /// that does not bound a strictly convex region.
    DegeneratePolygon,
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::DegeneratePolygon => write!(f, "degenerate polygon"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PolygonError {}

/// A strictly convex lattice polygon, stored counterclockwise with the
/// lexicographically smallest vertex first. Collinear interior vertices are
/// removed on construction, so equal regions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    pub fn new(input: Vec<LatticePoint>) -> Result<Self, PolygonError> {
        let mut v = input;
        v.dedup();
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        if v.len() < 3 {
            return Err(PolygonError::DegeneratePolygon);
        }

        // Fix counterclockwise orientation by the shoelace sign.
        let mut two_area: i64 = 0;
        for i in 0..v.len() {
            let p = v[i];
            let q = v[(i + 1) % v.len()];
            two_area += p.cross(q);
        }
        if two_area == 0 {
            return Err(PolygonError::DegeneratePolygon);
        }
        if two_area < 0 {
            v.reverse();
        }

        // Drop vertices interior to an edge; any remaining non-left turn
        // means the input was not convex.
        let mut pruned: Vec<LatticePoint> = Vec::with_capacity(v.len());
        for &p in &v {
            pruned.push(p);
        }
        loop {
            let n = pruned.len();
            if n < 3 {
                return Err(PolygonError::DegeneratePolygon);
            }
            let mut removed = false;
            let mut keep: Vec<LatticePoint> = Vec::with_capacity(n);
            for i in 0..n {
                let prev = pruned[(i + n - 1) % n];
                let cur = pruned[i];
                let next = pruned[(i + 1) % n];
                let turn = next.sub(cur).cross(prev.sub(cur));
                if turn == 0 {
                    removed = true; // collinear: skip this vertex
                } else {
                    keep.push(cur);
                }
            }
            pruned = keep;
            if !removed {
                break;
            }
        }
        for i in 0..pruned.len() {
            let n = pruned.len();
            let prev = pruned[(i + n - 1) % n];
            let cur = pruned[i];
            let next = pruned[(i + 1) % n];
            if cur.sub(prev).cross(next.sub(cur)) <= 0 {
                return Err(PolygonError::DegeneratePolygon);
            }
        }

        // Rotate so the lexicographically smallest vertex leads.
        let start = pruned
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.a, p.b))
            .map(|(i, _)| i)
            .unwrap();
        pruned.rotate_left(start);

        Ok(Self { vertices: pruned })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// 2·Area, exact (shoelace). Always positive.
    pub fn double_area(&self) -> i64 {
        let n = self.vertices.len();
        let mut s = 0i64;
        for i in 0..n {
            s += self.vertices[i].cross(self.vertices[(i + 1) % n]);
        }
        s
    }

    /// Edges in counterclockwise order, each with its primitive outward
    /// normal and integer length.
    pub fn sides(&self) -> Vec<Side> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let d = q.sub(p);
            let g = d.content();
            // Rotating the ccw tangent by -90° points away from the interior.
            let normal = LatticePoint::new(d.b / g, -d.a / g);
            out.push(Side {
                endpoints: [p, q],
                normal,
                int_length: g,
            });
        }
        out
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_lattice_count(&self) -> i64 {
        self.sides().iter().map(|s| s.int_length).sum()
    }

    /// Number of interior lattice points, by Pick's formula.
    pub fn interior_lattice_count(&self) -> i64 {
        (self.double_area() - self.boundary_lattice_count()) / 2 + 1
    }

    /// Whether `p` lies in the closed polygon.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            b.sub(a).cross(p.sub(a)) >= 0
        })
    }

    pub fn translate(&self, by: LatticePoint) -> LatticePolygon {
        LatticePolygon::new(self.vertices.iter().map(|p| p.add(by)).collect()).unwrap()
    }
}

/// Convex hull of `(d, 0), (0, d), (0, 0)`: the Newton polygon of degree-`d`
/// plane curves.
pub fn triangle(d: i64) -> LatticePolygon {
    LatticePolygon::new(alloc::vec![
        LatticePoint::new(0, 0),
        LatticePoint::new(d, 0),
        LatticePoint::new(0, d),
    ])
    .unwrap()
}

/// Axis-parallel rectangle `[0, w] × [0, h]`.
pub fn rectangle(w: i64, h: i64) -> LatticePolygon {
    LatticePolygon::new(alloc::vec![
        LatticePoint::new(0, 0),
        LatticePoint::new(w, 0),
        LatticePoint::new(w, h),
        LatticePoint::new(0, h),
    ])
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pt(a: i64, b: i64) -> LatticePoint {
        LatticePoint::new(a, b)
    }

    #[test]
    fn degree_two_triangle_sides() {
        let p = triangle(2);
        let sides = p.sides();
        assert_eq!(sides.len(), 3);
        for s in &sides {
            assert_eq!(s.int_length, 2);
        }
        let normals: Vec<_> = sides.iter().map(|s| s.normal).collect();
        assert!(normals.contains(&pt(0, -1)));
        assert!(normals.contains(&pt(1, 1)));
        assert!(normals.contains(&pt(-1, 0)));
    }

    #[test]
    fn unit_square_sides() {
        let p = rectangle(1, 1);
        let normals: Vec<_> = p.sides().iter().map(|s| s.normal).collect();
        assert_eq!(normals, vec![pt(0, -1), pt(1, 0), pt(0, 1), pt(-1, 0)]);
    }

    #[test]
    fn double_areas() {
        assert_eq!(triangle(1).double_area(), 1);
        assert_eq!(triangle(2).double_area(), 4);
        assert_eq!(rectangle(1, 1).double_area(), 2);
    }

    #[test]
    fn boundary_counts() {
        assert_eq!(triangle(1).boundary_lattice_count(), 3);
        assert_eq!(triangle(2).boundary_lattice_count(), 6);
        assert_eq!(triangle(3).boundary_lattice_count(), 9);
    }

    #[test]
    fn interior_counts() {
        assert_eq!(triangle(2).interior_lattice_count(), 0);
        assert_eq!(triangle(3).interior_lattice_count(), 1);
        // Oracle: brute-force lattice scan over [1,3]² gives the 3 interior
        // points (1,1), (1,2), (2,1) of the size-4 triangle.
        assert_eq!(triangle(4).interior_lattice_count(), 3);
    }

    #[test]
    fn normalization_is_canonical() {
        // Same region entered clockwise, with a collinear midpoint, starting
        // from a different vertex.
        let a = LatticePolygon::new(vec![pt(0, 2), pt(1, 1), pt(2, 0), pt(0, 0)]).unwrap();
        let b = triangle(2);
        assert_eq!(a, b);
        assert_eq!(a.vertices()[0], pt(0, 0));
    }

    #[test]
    fn rejects_degenerate() {
        assert!(LatticePolygon::new(vec![pt(0, 0), pt(1, 1)]).is_err());
        assert!(LatticePolygon::new(vec![pt(0, 0), pt(1, 1), pt(2, 2)]).is_err());
        // Non-convex quadrilateral.
        assert!(LatticePolygon::new(vec![pt(0, 0), pt(4, 0), pt(1, 1), pt(0, 4)]).is_err());
    }

    #[test]
    fn tangents_close_up() {
        for poly in [triangle(3), rectangle(2, 5)] {
            let sum = poly.sides().iter().fold(pt(0, 0), |acc, s| {
                let t = s.primitive_tangent();
                pt(acc.a + s.int_length * t.a, acc.b + s.int_length * t.b)
            });
            assert_eq!(sum, pt(0, 0));
        }
    }

    fn brute_force_counts(poly: &LatticePolygon) -> (i64, i64) {
        let vs = poly.vertices();
        let lo_a = vs.iter().map(|p| p.a).min().unwrap();
        let hi_a = vs.iter().map(|p| p.a).max().unwrap();
        let lo_b = vs.iter().map(|p| p.b).min().unwrap();
        let hi_b = vs.iter().map(|p| p.b).max().unwrap();
        let n = vs.len();
        let mut interior = 0;
        let mut boundary = 0;
        for a in lo_a..=hi_a {
            for b in lo_b..=hi_b {
                let p = pt(a, b);
                let mut strict = true;
                let mut inside = true;
                for i in 0..n {
                    let c = vs[(i + 1) % n].sub(vs[i]).cross(p.sub(vs[i]));
                    if c < 0 {
                        inside = false;
                        break;
                    }
                    if c == 0 {
                        strict = false;
                    }
                }
                if inside {
                    if strict {
                        interior += 1;
                    } else {
                        boundary += 1;
                    }
                }
            }
        }
        (interior, boundary)
    }

    proptest::proptest! {
        #[test]
        fn picks_identity_matches_scan(raw in proptest::collection::vec((-6i64..=6, -6i64..=6), 3..8)) {
            let pts: Vec<_> = raw.into_iter().map(|(a, b)| pt(a, b)).collect();
            if let Ok(poly) = LatticePolygon::new(hull(&pts)) {
                let (i, b) = brute_force_counts(&poly);
                proptest::prop_assert_eq!(poly.boundary_lattice_count(), b);
                proptest::prop_assert_eq!(poly.interior_lattice_count(), i);
                proptest::prop_assert_eq!(poly.double_area(), 2 * i + b - 2);
            }
        }
    }

    /// Andrew monotone-chain hull, used only to feed the property test
    /// convex input.
    fn hull(pts: &[LatticePoint]) -> Vec<LatticePoint> {
        let mut s: Vec<_> = pts.to_vec();
        s.sort_by_key(|p| (p.a, p.b));
        s.dedup();
        if s.len() < 3 {
            return s;
        }
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &s {
            while lower.len() >= 2
                && lower[lower.len() - 1]
                    .sub(lower[lower.len() - 2])
                    .cross(p.sub(lower[lower.len() - 2]))
                    <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in s.iter().rev() {
            while upper.len() >= 2
                && upper[upper.len() - 1]
                    .sub(upper[upper.len() - 2])
                    .cross(p.sub(upper[upper.len() - 2]))
                    <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }
}
