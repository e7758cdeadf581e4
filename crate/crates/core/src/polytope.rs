//! Newton polygons and integral indecomposability.
//!
//! A lattice polygon is a Minkowski sum `A + B` of lattice polygons exactly
//! when some proper sub-multiset of its primitive edge vectors sums to zero;
//! the search below enumerates those sub-multisets. For segments and
//! triangles that reduces to a gcd test on edge vectors.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_integer::Integer;

use crate::error::AlgebraError;
use crate::poly::Polynomial;

pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull vertices, counterclockwise from the lexicographically lowest
/// point, collinear points dropped. One or two points for degenerate input.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
    points: Vec<Point>,
}

impl LatticePolygon {
    /// `None` for an empty point set.
    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Option<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        if points.is_empty() {
            return None;
        }
        points.sort_unstable();
        points.dedup();
        Some(LatticePolygon {
            vertices: convex_hull(&points),
            points,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    /// Boundary edge vectors in counterclockwise order. A segment has two.
    pub fn edges(&self) -> Vec<Point> {
        let v = &self.vertices;
        if v.len() == 1 {
            return Vec::new();
        }
        (0..v.len())
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                (b.0 - a.0, b.1 - a.1)
            })
            .collect()
    }

    pub fn translate(&self, d: Point) -> LatticePolygon {
        let shift = |p: &Point| (p.0 + d.0, p.1 + d.1);
        LatticePolygon {
            vertices: self.vertices.iter().map(shift).collect(),
            points: self.points.iter().map(shift).collect(),
        }
    }

    /// `A + B`; the point set is the set of vertex sums.
    pub fn minkowski_sum(&self, other: &LatticePolygon) -> LatticePolygon {
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| (a.0 + b.0, a.1 + b.1)));
        LatticePolygon::from_points(sums).expect("nonempty")
    }

    fn anchor(&self) -> Point {
        self.vertices[0]
    }

    fn max_abs_coordinate(&self) -> i64 {
        self.vertices
            .iter()
            .map(|p| p.0.abs().max(p.1.abs()))
            .max()
            .unwrap_or(0)
    }
}

/// Newton polygon of `p` in the variables with indices `vars`.
pub fn newton_polygon(p: &Polynomial, vars: (usize, usize)) -> Result<LatticePolygon, AlgebraError> {
    let ring = p.ring();
    let n = ring.nvars();
    if vars.0 >= n || vars.1 >= n || vars.0 == vars.1 {
        return Err(AlgebraError::Precondition("need two distinct variables".into()));
    }
    if p.is_zero() {
        return Err(AlgebraError::Precondition("the zero polynomial has no Newton polygon".into()));
    }
    if let Some(other) = (0..n).find(|&k| k != vars.0 && k != vars.1 && p.involves(k)) {
        return Err(AlgebraError::Precondition(alloc::format!(
            "`{p}` involves `{}`; substitute it first",
            ring.vars().name(other)
        )));
    }
    Ok(LatticePolygon::from_points(p.terms().iter().map(|t| {
        (
            t.monomial.exponent(vars.0) as i64,
            t.monomial.exponent(vars.1) as i64,
        )
    }))
    .unwrap())
}

fn primitive(v: Point) -> (Point, i64) {
    let g = v.0.gcd(&v.1);
    ((v.0 / g, v.1 / g), g)
}

/// Angular order starting just after the downward direction.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| if p.0 > 0 || (p.0 == 0 && p.1 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 * b.1 - a.1 * b.0;
        0.cmp(&c)
    })
}

/// Primitive edge directions with multiplicities, in angular order.
fn primitive_edges(poly: &LatticePolygon) -> Vec<(Point, i64)> {
    let mut out: Vec<(Point, i64)> = Vec::new();
    for e in poly.edges() {
        let (u, g) = primitive(e);
        match out.iter_mut().find(|(w, _)| *w == u) {
            Some(slot) => slot.1 += g,
            None => out.push((u, g)),
        }
    }
    out.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    out
}

/// Polygon traced by the given edge vectors in angular order, translated so
/// its lowest vertex is `anchor`.
fn polygon_from_edges(edges: &[(Point, i64)], anchor: Point) -> LatticePolygon {
    let mut cur = (0, 0);
    let mut pts = alloc::vec![cur];
    for &(u, c) in edges {
        cur = (cur.0 + u.0 * c, cur.1 + u.1 * c);
        pts.push(cur);
    }
    let p = LatticePolygon::from_points(pts).unwrap();
    let a = p.anchor();
    p.translate((anchor.0 - a.0, anchor.1 - a.1))
}

/// Largest number of sub-multisets the exhaustive search will visit.
pub const SEARCH_LIMIT: u64 = 1 << 22;

fn search_size(edges: &[(Point, i64)]) -> u64 {
    edges
        .iter()
        .fold(1u64, |acc, &(_, m)| acc.saturating_mul(m as u64 + 1))
}

/// First Minkowski decomposition `(A, B)` with `A + B = poly`, neither a point,
/// found by enumerating edge sub-multisets in lexicographic order of counts.
/// `A` keeps the lowest vertex of `poly`; `B` has lowest vertex at the origin.
pub fn brute_force_decompose(
    poly: &LatticePolygon,
    bound: u64,
) -> Result<Option<(LatticePolygon, LatticePolygon)>, AlgebraError> {
    let extent = poly.max_abs_coordinate() as u64;
    if extent > bound {
        return Err(AlgebraError::Precondition(alloc::format!(
            "vertex coordinate {extent} exceeds the bound {bound}"
        )));
    }
    let edges = primitive_edges(poly);
    if search_size(&edges) > SEARCH_LIMIT {
        return Err(AlgebraError::Precondition(alloc::format!(
            "edge search space exceeds {SEARCH_LIMIT} sub-multisets"
        )));
    }
    let full: Vec<i64> = edges.iter().map(|e| e.1).collect();
    let mut counts = alloc::vec![0i64; edges.len()];
    loop {
        // Advance like an odometer, last position fastest.
        let mut k = edges.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if counts[k] < full[k] {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
        }
        if counts == full {
            continue;
        }
        let sum = edges
            .iter()
            .zip(&counts)
            .fold((0, 0), |s, (&(u, _), &c)| (s.0 + u.0 * c, s.1 + u.1 * c));
        if sum != (0, 0) {
            continue;
        }
        let part: Vec<(Point, i64)> = edges
            .iter()
            .zip(&counts)
            .filter(|(_, &c)| c > 0)
            .map(|(&(u, _), &c)| (u, c))
            .collect();
        let rest: Vec<(Point, i64)> = edges
            .iter()
            .zip(counts.iter().zip(&full))
            .filter(|(_, (&c, &m))| m > c)
            .map(|(&(u, _), (&c, &m))| (u, m - c))
            .collect();
        return Ok(Some((
            polygon_from_edges(&part, poly.anchor()),
            polygon_from_edges(&rest, (0, 0)),
        )));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndecomposabilityPath {
    /// A single point: vacuous, and says nothing about irreducibility.
    Point,
    /// Segment or triangle whose edge vectors have coordinate gcd one.
    GcdCriterion,
    /// No proper edge sub-multiset sums to zero.
    ExhaustiveSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecomposabilityCertificate {
    pub path: IndecomposabilityPath,
    /// Edge vectors from the anchor vertex used by the gcd test.
    pub edge_vectors: Vec<Point>,
    pub gcd: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposability {
    Indecomposable(IndecomposabilityCertificate),
    Decomposable(LatticePolygon, LatticePolygon),
    Unknown(String),
}

pub fn integrally_indecomposable(poly: &LatticePolygon) -> Decomposability {
    if poly.is_point() {
        return Decomposability::Indecomposable(IndecomposabilityCertificate {
            path: IndecomposabilityPath::Point,
            edge_vectors: Vec::new(),
            gcd: None,
        });
    }
    if poly.is_segment() || poly.is_triangle() {
        let v0 = poly.anchor();
        let vecs: Vec<Point> = poly.vertices[1..]
            .iter()
            .map(|v| (v.0 - v0.0, v.1 - v0.1))
            .collect();
        let g = vecs.iter().fold(0i64, |g, v| g.gcd(&v.0).gcd(&v.1));
        if g == 1 {
            return Decomposability::Indecomposable(IndecomposabilityCertificate {
                path: IndecomposabilityPath::GcdCriterion,
                edge_vectors: vecs,
                gcd: Some(g),
            });
        }
    }
    match brute_force_decompose(poly, u64::MAX) {
        Ok(Some((a, b))) => Decomposability::Decomposable(a, b),
        Ok(None) => Decomposability::Indecomposable(IndecomposabilityCertificate {
            path: IndecomposabilityPath::ExhaustiveSearch,
            edge_vectors: poly.edges(),
            gcd: None,
        }),
        Err(e) => Decomposability::Unknown(alloc::format!("{e}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    /// The content-free part is irreducible over every field.
    Irreducible {
        content: (u32, u32),
        polygon: LatticePolygon,
        certificate: IndecomposabilityCertificate,
    },
    /// Nothing can be concluded from the polygon.
    Unknown {
        content: (u32, u32),
        polygon: LatticePolygon,
        reason: String,
    },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }

    /// Exponents of the two variables divided out before taking the polygon.
    pub fn content(&self) -> (u32, u32) {
        match self {
            IrreducibilityVerdict::Irreducible { content, .. }
            | IrreducibilityVerdict::Unknown { content, .. } => *content,
        }
    }
}

/// Irreducibility of the part of `p` not divisible by either variable, read
/// off its Newton polygon. A decomposable polygon proves nothing.
pub fn irreducibility_verdict(
    p: &Polynomial,
    vars: (usize, usize),
) -> Result<IrreducibilityVerdict, AlgebraError> {
    let poly = newton_polygon(p, vars)?;
    let cx = poly.points().iter().map(|q| q.0).min().unwrap();
    let cy = poly.points().iter().map(|q| q.1).min().unwrap();
    let content = (cx as u32, cy as u32);
    let stripped = LatticePolygon::from_points(poly.points().iter().map(|q| (q.0 - cx, q.1 - cy))).unwrap();
    if stripped.is_point() {
        return Ok(IrreducibilityVerdict::Unknown {
            content,
            polygon: stripped,
            reason: "monomial: the polygon is a point".into(),
        });
    }
    Ok(match integrally_indecomposable(&stripped) {
        Decomposability::Indecomposable(certificate) => IrreducibilityVerdict::Irreducible {
            content,
            polygon: stripped,
            certificate,
        },
        Decomposability::Decomposable(..) => IrreducibilityVerdict::Unknown {
            content,
            polygon: stripped,
            reason: "the Newton polygon decomposes, which does not imply reducibility".into(),
        },
        Decomposability::Unknown(r) => IrreducibilityVerdict::Unknown {
            content,
            polygon: stripped,
            reason: r,
        },
    })
}
