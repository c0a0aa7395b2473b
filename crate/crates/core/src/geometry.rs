//! Polytope representation and the geometric primitives behind the
//! decomposition: projections, facets, fibers, the nonnegative part,
//! triangulation, and Euclidean volume.
//!
//! All predicates are exact; facet enumeration is brute force over
//! d-subsets, which is the right trade at the vertex counts this crate
//! works with.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmath::{sign_of, RatMatrix, Rational};
use crate::perm::Perm;
use crate::simplex;

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| crate::exactmath::rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Drops the last `k` coordinates.
    pub fn project(&self, k: usize) -> Point {
        Point::new(self.coords[..self.coords.len() - k].to_vec())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A full-dimensional polytope given by an ordered vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSpec {
    dim: usize,
    vertices: Vec<Point>,
}

impl PolytopeSpec {
    /// Validates: matching coordinate lengths, pairwise distinct vertices,
    /// and a full-dimensional affine span.
    pub fn new(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("ambient dimension must be at least 1".into()));
        }
        if vertices.is_empty() {
            return Err(Error::Degenerate("empty vertex list".into()));
        }
        if let Some(p) = vertices.iter().find(|p| p.dim() != dim) {
            return Err(Error::Dimension(format!(
                "vertex {p} has {} coordinates, expected {dim}",
                p.dim()
            )));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Degenerate(format!("duplicate vertex {v}")));
            }
        }
        if affine_rank(&vertices) != dim {
            return Err(Error::Degenerate(
                "vertex set does not span a full-dimensional polytope".into(),
            ));
        }
        Ok(Self { dim, vertices })
    }

    pub fn from_integers(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(dim, rows.iter().map(|r| Point::from_integers(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// The dilate mP for a positive integer m.
    pub fn dilate(&self, m: u32) -> Result<PolytopeSpec> {
        if m == 0 {
            return Err(Error::Degenerate("dilation factor must be positive".into()));
        }
        let f = crate::exactmath::rat(m as i64);
        PolytopeSpec::new(
            self.dim,
            self.vertices
                .iter()
                .map(|v| Point::new(v.coords.iter().map(|c| c * &f).collect()))
                .collect(),
        )
    }

    /// Reorders the vertex list; the index list must be a permutation.
    pub fn reorder(&self, order: &[usize]) -> Result<PolytopeSpec> {
        if order.len() != self.vertices.len() {
            return Err(Error::Dimension("order length mismatch".into()));
        }
        PolytopeSpec::new(
            self.dim,
            order.iter().map(|&i| self.vertices[i].clone()).collect(),
        )
    }

    /// Outward-oriented facets with primitive integer normals.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        let coords: Vec<&[Rational]> = self.vertices.iter().map(|v| v.coords.as_slice()).collect();
        Ok(raw_facets(&coords, self.dim)?
            .into_iter()
            .map(|rf| Facet {
                normal: rf.normal,
                offset: rf.offset,
                vertex_indices: rf.on,
            })
            .collect())
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        let facets = self.facets()?;
        Ok(contains_with(x, &facets))
    }
}

/// A facet as a supporting hyperplane `normal . x <= offset` plus the
/// vertices that attain equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub vertex_indices: Vec<usize>,
}

impl Facet {
    pub fn eval(&self, x: &Point) -> Rational {
        dot(&self.normal, &x.coords)
    }

    pub fn is_on(&self, x: &Point) -> bool {
        self.eval(x) == self.offset
    }
}

/// Closed membership: every facet inequality holds.
pub fn contains_with(x: &Point, facets: &[Facet]) -> bool {
    facets.iter().all(|f| f.eval(x) <= f.offset)
}

/// Strict membership in the interior.
pub fn interior_contains_with(x: &Point, facets: &[Facet]) -> bool {
    facets.iter().all(|f| f.eval(x) < f.offset)
}

/// The fiber rho(y, P): the segment of the vertical line over `y` inside P.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub base: Point,
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Fiber {
    pub fn is_empty(&self) -> bool {
        self.lo.is_none()
    }
}

/// Exact fiber over `y` (a point of R^(d-1)) from precomputed facets.
pub fn fiber_with(y: &Point, facets: &[Facet]) -> Fiber {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for f in facets {
        let d = f.normal.len();
        let nd = &f.normal[d - 1];
        let c = &f.offset - dot(&f.normal[..d - 1], &y.coords);
        match sign_of(nd) {
            0 => {
                if c.is_negative() {
                    return Fiber { base: y.clone(), lo: None, hi: None };
                }
            }
            s => {
                let t = c / nd;
                if s > 0 {
                    // n_d * t <= c caps t from above.
                    if hi.as_ref().is_none_or(|h| &t < h) {
                        hi = Some(t);
                    }
                } else if lo.as_ref().is_none_or(|l| &t > l) {
                    lo = Some(t);
                }
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Fiber { base: y.clone(), lo: Some(l), hi: Some(h) },
        _ => Fiber { base: y.clone(), lo: None, hi: None },
    }
}

/// Fiber over `y` in `p`; `y` lives one dimension below `p`.
pub fn fiber(y: &Point, p: &PolytopeSpec) -> Result<Fiber> {
    if y.dim() + 1 != p.dim() {
        return Err(Error::Dimension(format!(
            "fiber base has dimension {}, expected {}",
            y.dim(),
            p.dim() - 1
        )));
    }
    Ok(fiber_with(y, &p.facets()?))
}

/// Membership in the nonnegative part Omega(P) = P minus its negative
/// boundary: the fiber over the projection must exist and `x` must sit
/// strictly above its lower end.
pub fn omega_contains(x: &Point, p: &PolytopeSpec) -> Result<bool> {
    Ok(omega_contains_with(x, &p.facets()?))
}

pub fn omega_contains_with(x: &Point, facets: &[Facet]) -> bool {
    let d = x.dim();
    let fib = fiber_with(&x.project(1), facets);
    match (fib.lo, fib.hi) {
        (Some(lo), Some(hi)) => x.coords[d - 1] > lo && x.coords[d - 1] <= hi,
        _ => false,
    }
}

/// Projection dropping the last `k` coordinates: images of the vertices with
/// duplicates and non-extreme points removed, in first-occurrence order.
pub fn project(p: &PolytopeSpec, k: usize) -> Result<PolytopeSpec> {
    if k >= p.dim() {
        return Err(Error::Dimension(format!(
            "cannot drop {k} of {} coordinates",
            p.dim()
        )));
    }
    if k == 0 {
        return Ok(p.clone());
    }
    let new_dim = p.dim() - k;
    let mut seen = HashSet::new();
    let mut projected: Vec<Point> = Vec::new();
    for v in &p.vertices {
        let q = v.project(k);
        if seen.insert(q.clone()) {
            projected.push(q);
        }
    }
    let coords: Vec<&[Rational]> = projected.iter().map(|q| q.coords.as_slice()).collect();
    let keep = extreme_point_indices(&coords, new_dim)?;
    PolytopeSpec::new(new_dim, keep.into_iter().map(|i| projected[i].clone()).collect())
}

/// Pulling triangulation: cone the lowest-indexed vertex over the
/// recursively triangulated facets that do not contain it. Only original
/// vertices appear; output is a list of vertex index sets.
pub fn triangulate_indices(p: &PolytopeSpec) -> Result<Vec<Vec<usize>>> {
    let coords: Vec<Vec<Rational>> = p.vertices.iter().map(|v| v.coords.clone()).collect();
    let orig: Vec<usize> = (0..coords.len()).collect();
    tri_rec(&coords, &orig, p.dim())
}

pub fn triangulate(p: &PolytopeSpec) -> Result<Vec<PolytopeSpec>> {
    triangulate_indices(p)?
        .into_iter()
        .map(|idxs| {
            PolytopeSpec::new(p.dim(), idxs.iter().map(|&i| p.vertices[i].clone()).collect())
        })
        .collect()
}

fn tri_rec(coords: &[Vec<Rational>], orig: &[usize], dim: usize) -> Result<Vec<Vec<usize>>> {
    let views: Vec<&[Rational]> = coords.iter().map(Vec::as_slice).collect();
    let ext = extreme_point_indices(&views, dim)?;
    let coords: Vec<Vec<Rational>> = ext.iter().map(|&i| coords[i].clone()).collect();
    let orig: Vec<usize> = ext.iter().map(|&i| orig[i]).collect();

    if coords.len() == dim + 1 {
        let mut s = orig;
        s.sort_unstable();
        return Ok(vec![s]);
    }

    // Pivot on the lowest original index for determinism.
    let pivot = orig
        .iter()
        .enumerate()
        .min_by_key(|(_, &o)| o)
        .map(|(i, _)| i)
        .expect("nonempty");

    let views: Vec<&[Rational]> = coords.iter().map(Vec::as_slice).collect();
    let mut out = Vec::new();
    for rf in raw_facets(&views, dim)? {
        if rf.on.contains(&pivot) {
            continue;
        }
        // Drop a coordinate the facet normal does not vanish on; this is an
        // affine bijection of the facet hyperplane onto R^(dim-1).
        let drop = rf
            .normal
            .iter()
            .position(|c| !c.is_zero())
            .expect("facet normal is nonzero");
        let sub_coords: Vec<Vec<Rational>> = rf
            .on
            .iter()
            .map(|&i| {
                let mut row = coords[i].clone();
                row.remove(drop);
                row
            })
            .collect();
        let sub_orig: Vec<usize> = rf.on.iter().map(|&i| orig[i]).collect();
        for sub in tri_rec(&sub_coords, &sub_orig, dim - 1)? {
            let mut s = sub;
            s.push(orig[pivot]);
            s.sort_unstable();
            out.push(s);
        }
    }
    Ok(out)
}

/// Euclidean volume: sum of |det of the bordered vertex matrix| / d! over a
/// triangulation.
pub fn volume(p: &PolytopeSpec) -> Result<Rational> {
    let d = p.dim();
    let mut total = Rational::zero();
    for idxs in triangulate_indices(p)? {
        let rows: Vec<Vec<Rational>> = idxs
            .iter()
            .map(|&i| {
                let mut row = vec![Rational::one()];
                row.extend(p.vertices[i].coords.iter().cloned());
                row
            })
            .collect();
        total += RatMatrix::from_rows(rows)?.determinant()?.abs();
    }
    let mut fact = BigInt::one();
    for i in 2..=d {
        fact *= BigInt::from(i);
    }
    Ok(total / Rational::from_integer(fact))
}

/// Sign of the facet omitted by vertex `i` (0-based) of an ordered
/// general-position simplex, by the determinant-ratio formulas.
pub fn facet_sign(p: &PolytopeSpec, i: usize) -> Result<i8> {
    let d = p.dim();
    if !p.is_simplex() {
        return Err(Error::NotSimplex("facet_sign needs a d-simplex".into()));
    }
    if i > d {
        return Err(Error::Dimension(format!("vertex index {i} out of range")));
    }
    let sign = if i < d {
        // A permutation ending in i: the remaining positions in ascending
        // order, then i.
        let mut images: Vec<usize> = (0..d).filter(|&j| j != i).collect();
        images.push(i);
        let sigma = Perm::from_images(images).expect("valid by construction");
        let top = simplex::x_matrix(p, &sigma, d).determinant()?;
        let bottom = if d == 1 {
            Rational::one()
        } else {
            simplex::x_matrix(p, &sigma, d - 1).determinant()?
        };
        sign_of(&top) * sign_of(&bottom)
    } else {
        let sigma = Perm::identity(d);
        let top = simplex::x_matrix(p, &sigma, d).determinant()?;
        let bottom = simplex::y_matrix(p, &sigma, d).determinant()?;
        -sign_of(&top) * sign_of(&bottom)
    };
    if sign == 0 {
        return Err(Error::GeneralPosition(
            "vanishing determinant in facet sign".into(),
        ));
    }
    Ok(sign)
}

/// Sign of the same facet from the geometric definition: take an interior
/// point of the facet and ask whether it is the top or the bottom of its
/// fiber. Returns 0 for a vertical facet, which general position excludes.
pub fn facet_sign_geometric(p: &PolytopeSpec, i: usize) -> Result<i8> {
    let d = p.dim();
    if !p.is_simplex() {
        return Err(Error::NotSimplex("facet_sign needs a d-simplex".into()));
    }
    let members: Vec<&Point> = p
        .vertices
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, v)| v)
        .collect();
    let n = crate::exactmath::rat(members.len() as i64);
    let centroid = Point::new(
        (0..d)
            .map(|c| {
                members.iter().map(|v| &v.coords[c]).sum::<Rational>() / &n
            })
            .collect(),
    );
    let fib = fiber(&centroid.project(1), p)?;
    let (Some(lo), Some(hi)) = (fib.lo, fib.hi) else {
        return Err(Error::Internal("facet centroid outside projection".into()));
    };
    let z = &centroid.coords[d - 1];
    Ok(if lo == hi {
        0
    } else if *z == hi {
        1
    } else if *z == lo {
        -1
    } else {
        return Err(Error::Internal("facet centroid not on the boundary".into()));
    })
}

/// Witness of a general-position violation: the offending vertex subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPositionWitness {
    /// Level: the subset has k+1 elements and is projected to R^k.
    pub k: usize,
    pub subset: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub ok: bool,
    pub witness: Option<GeneralPositionWitness>,
}

/// Checks that every (k+1)-subset of vertices projects to an affinely
/// independent set in R^k, for k = 1 .. d-1.
pub fn general_position_check(p: &PolytopeSpec) -> GeneralPositionReport {
    let d = p.dim();
    for k in 1..d {
        for subset in combinations(p.vertices.len(), k + 1) {
            if !projected_subset_independent(p, &subset, k) {
                return GeneralPositionReport {
                    ok: false,
                    witness: Some(GeneralPositionWitness { k, subset }),
                };
            }
        }
    }
    GeneralPositionReport { ok: true, witness: None }
}

/// Whether the projections of the subset onto the first `k` coordinates are
/// affinely independent (the bordered determinant test).
pub(crate) fn projected_subset_independent(p: &PolytopeSpec, subset: &[usize], k: usize) -> bool {
    let rows: Vec<Vec<Rational>> = subset
        .iter()
        .map(|&i| {
            let mut row = vec![Rational::one()];
            row.extend(p.vertices[i].coords[..k].iter().cloned());
            row
        })
        .collect();
    let det = RatMatrix::from_rows(rows)
        .and_then(|m| m.determinant())
        .expect("square bordered matrix");
    !det.is_zero()
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// An axis-aligned integer box used for brute-force lattice scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBox {
    pub lo: Vec<BigInt>,
    pub hi: Vec<BigInt>,
}

impl GridBox {
    /// The smallest integer box containing the polytope.
    pub fn bounding(p: &PolytopeSpec) -> GridBox {
        Self::around(p.vertices())
    }

    /// The smallest integer box containing all given points.
    pub fn around(points: &[Point]) -> GridBox {
        let d = points[0].dim();
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for c in 0..d {
            let mut min = points[0].coords[c].clone();
            let mut max = min.clone();
            for p in &points[1..] {
                if p.coords[c] < min {
                    min = p.coords[c].clone();
                }
                if p.coords[c] > max {
                    max = p.coords[c].clone();
                }
            }
            lo.push(min.floor().to_integer());
            hi.push(max.ceil().to_integer());
        }
        GridBox { lo, hi }
    }

    /// Number of lattice points, saturating at `u64::MAX`.
    pub fn cell_count(&self) -> u64 {
        let mut total = BigInt::one();
        for (l, h) in self.lo.iter().zip(&self.hi) {
            if h < l {
                return 0;
            }
            total *= h - l + 1;
        }
        use num_traits::ToPrimitive;
        total.to_u64().unwrap_or(u64::MAX)
    }

    /// Iterates all lattice points, last coordinate fastest.
    pub fn points(&self) -> GridIter {
        GridIter {
            grid: self,
            cur: self.lo.clone(),
            done: self.lo.iter().zip(&self.hi).any(|(l, h)| h < l),
        }
    }
}

pub struct GridIter<'a> {
    grid: &'a GridBox,
    cur: Vec<BigInt>,
    done: bool,
}

impl Iterator for GridIter<'_> {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        let out = Point::new(self.cur.iter().map(|v| Rational::from_integer(v.clone())).collect());
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.grid.hi[i] {
                self.cur[i] += 1;
                break;
            }
            self.cur[i] = self.grid.lo[i].clone();
        }
        Some(out)
    }
}

/// A random d-simplex in general position with small rational coordinates,
/// for property suites. Deterministic for a fixed RNG stream.
pub fn random_general_position_simplex<R: Rng>(
    d: usize,
    rng: &mut R,
    coord_bound: i64,
    allow_halves: bool,
) -> PolytopeSpec {
    loop {
        let vertices: Vec<Point> = (0..=d)
            .map(|_| {
                Point::new(
                    (0..d)
                        .map(|_| {
                            let numer = rng.gen_range(-coord_bound..=coord_bound);
                            let denom = if allow_halves && rng.gen_bool(0.3) { 2 } else { 1 };
                            crate::exactmath::ratio(numer, denom)
                        })
                        .collect(),
                )
            })
            .collect();
        let Ok(p) = PolytopeSpec::new(d, vertices) else {
            continue;
        };
        if general_position_check(&p).ok {
            return p;
        }
    }
}

fn affine_rank(points: &[Point]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| {
            p.coords
                .iter()
                .zip(&base.coords)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).expect("consistent dims").rank()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) struct RawFacet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub on: Vec<usize>,
}

/// Brute-force facet enumeration over `dim`-subsets of the point set. The
/// point set must span R^dim. Output is deduplicated by hyperplane and
/// deterministically ordered.
pub(crate) fn raw_facets(coords: &[&[Rational]], dim: usize) -> Result<Vec<RawFacet>> {
    if coords.iter().any(|c| c.len() != dim) {
        return Err(Error::Dimension("point/dimension mismatch".into()));
    }
    if coords.len() <= dim {
        return Err(Error::Degenerate(
            "too few points for a full-dimensional polytope".into(),
        ));
    }
    let mut planes: BTreeMap<(Vec<BigInt>, BigInt), Vec<usize>> = BTreeMap::new();
    for subset in combinations(coords.len(), dim) {
        let Some((normal, offset)) = hyperplane_through(coords, &subset) else {
            continue;
        };
        // Orient outward; reject non-supporting hyperplanes.
        let mut any_pos = false;
        let mut any_neg = false;
        for c in coords.iter() {
            match sign_of(&(dot(&normal, c) - &offset)) {
                1 => any_pos = true,
                -1 => any_neg = true,
                _ => {}
            }
            if any_pos && any_neg {
                break;
            }
        }
        if any_pos && any_neg {
            continue;
        }
        let (normal, offset) = if any_pos {
            (normal.iter().map(|v| -v).collect(), -offset)
        } else {
            (normal, offset)
        };
        let key = primitive_key(&normal, &offset);
        planes.entry(key).or_insert_with(|| {
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| dot(&normal, c) == offset)
                .map(|(i, _)| i)
                .collect()
        });
    }
    if planes.is_empty() {
        return Err(Error::Degenerate("no supporting hyperplanes found".into()));
    }
    Ok(planes
        .into_iter()
        .map(|((n, b), on)| RawFacet {
            normal: n.into_iter().map(Rational::from_integer).collect(),
            offset: Rational::from_integer(b),
            on,
        })
        .collect())
}

/// Normal and offset of the hyperplane through the subset, or `None` when
/// the subset is affinely dependent. The normal comes from the generalized
/// cross product of the difference vectors.
fn hyperplane_through(coords: &[&[Rational]], subset: &[usize]) -> Option<(Vec<Rational>, Rational)> {
    let dim = coords[subset[0]].len();
    let base = coords[subset[0]];
    let diffs: Vec<Vec<Rational>> = subset[1..]
        .iter()
        .map(|&i| coords[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = Vec::with_capacity(dim);
    for j in 0..dim {
        let minor_rows: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let det = RatMatrix::from_rows(minor_rows)
            .and_then(|m| m.determinant())
            .expect("square minor");
        normal.push(if j % 2 == 0 { det } else { -det });
    }
    if normal.iter().all(Rational::is_zero) {
        return None;
    }
    let offset = dot(&normal, base);
    Some((normal, offset))
}

/// Scales (normal, offset) to a primitive integer vector, preserving
/// orientation.
fn primitive_key(normal: &[Rational], offset: &Rational) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for v in normal.iter().chain(std::iter::once(offset)) {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = normal
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let b = offset.numer() * (&lcm / offset.denom());
    let mut g = b.clone();
    for v in &ints {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v /= &g;
        }
        return (ints, b / g);
    }
    (ints, b)
}

/// Indices of the points that are vertices of the convex hull: those whose
/// active facet normals span the whole space.
pub(crate) fn extreme_point_indices(coords: &[&[Rational]], dim: usize) -> Result<Vec<usize>> {
    if coords.len() == dim + 1 {
        // A spanning set of d+1 points is a simplex; all points are vertices.
        return Ok((0..coords.len()).collect());
    }
    let facets = raw_facets(coords, dim)?;
    let mut active: Vec<Vec<usize>> = vec![Vec::new(); coords.len()];
    for (fi, f) in facets.iter().enumerate() {
        for &i in &f.on {
            active[i].push(fi);
        }
    }
    let mut keep = Vec::new();
    for (i, facet_ids) in active.iter().enumerate() {
        if facet_ids.len() < dim {
            continue;
        }
        let rows: Vec<Vec<Rational>> = facet_ids
            .iter()
            .map(|&fi| facets[fi].normal.clone())
            .collect();
        if RatMatrix::from_rows(rows)?.rank() == dim {
            keep.push(i);
        }
    }
    Ok(keep)
}
