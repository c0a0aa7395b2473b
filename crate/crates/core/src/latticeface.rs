//! The lattice-face property: deciding it, the determinant ratios z(sigma, k)
//! attached to an ordered simplex, the lattice-preserving normalization
//! transform, canonical vertex ordering, and a deterministic instance
//! generator for the property suites.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{rat, sign_of, solve_affine, RatMatrix, Rational};
use crate::geometry::{combinations, general_position_check, Point, PolytopeSpec};
use crate::perm::Perm;
use crate::simplex;

/// The determinant ratios z(sigma, k) = det X(sigma, k) / det Y(sigma, k)
/// for k = 1..d, with z(sigma, 0) = 1 implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZVector {
    pub sigma: Perm,
    pub values: Vec<Rational>,
}

impl ZVector {
    /// z(sigma, k), with the k = 0 convention.
    pub fn z(&self, k: usize) -> Rational {
        if k == 0 {
            Rational::one()
        } else {
            self.values[k - 1].clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Consecutive ratios z(sigma, k) / z(sigma, k-1).
    pub fn ratios(&self) -> Vec<Rational> {
        (1..=self.values.len())
            .map(|k| self.z(k) / self.z(k - 1))
            .collect()
    }

    /// a(sigma, k) = z(sigma, k) / |z(sigma, k-1)|.
    pub fn a_values(&self) -> Vec<Rational> {
        (1..=self.values.len())
            .map(|k| self.z(k) / self.z(k - 1).abs())
            .collect()
    }

    /// Sign of the product of all z values.
    pub fn product_sign(&self) -> i8 {
        self.values.iter().map(sign_of).product()
    }
}

/// Exact z(sigma, k) for k = 1..d on an ordered general-position d-simplex.
pub fn z_values(p: &PolytopeSpec, sigma: &Perm) -> Result<ZVector> {
    let d = p.dim();
    if !p.is_simplex() {
        return Err(Error::NotSimplex("z_values needs a d-simplex".into()));
    }
    if sigma.degree() != d {
        return Err(Error::Dimension("permutation degree mismatch".into()));
    }
    let mut values = Vec::with_capacity(d);
    for k in 1..=d {
        let y = simplex::y_matrix(p, sigma, k).determinant()?;
        if y.is_zero() {
            return Err(Error::GeneralPosition(format!(
                "det Y({sigma}, {k}) = 0"
            )));
        }
        let x = simplex::x_matrix(p, sigma, k).determinant()?;
        values.push(x / y);
    }
    Ok(ZVector { sigma: sigma.clone(), values })
}

/// Whether every consecutive ratio z(sigma, k) / z(sigma, k-1) is an integer.
pub fn ratio_integrality(zv: &ZVector) -> bool {
    zv.ratios().iter().all(Rational::is_integer)
}

/// First violation found when deciding the lattice-face property, scanning
/// levels k = 0..d-1 and subsets in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeFaceWitness {
    /// The subset's projection to R^k is affinely dependent.
    NotGeneralPosition { k: usize, subset: Vec<usize> },
    /// The affine span of the subset carries a non-integer coefficient, so
    /// its lattice does not project onto Z^k. At k = 0 this is a vertex
    /// with a non-integer coordinate.
    NonIntegerCoefficient {
        k: usize,
        subset: Vec<usize>,
        coefficient: Rational,
    },
}

impl std::fmt::Display for LatticeFaceWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let subset_str = |s: &[usize]| {
            s.iter()
                .map(|i| format!("v{}", i + 1))
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Self::NotGeneralPosition { k, subset } => write!(
                f,
                "subset {{{}}} projects to an affinely dependent set in R^{k}",
                subset_str(subset)
            ),
            Self::NonIntegerCoefficient { k, subset, coefficient } => write!(
                f,
                "affine span of {{{}}} has non-integer coefficient {coefficient} over R^{k}",
                subset_str(subset)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFaceReport {
    pub is_lattice_face: bool,
    pub general_position: bool,
    pub witness: Option<LatticeFaceWitness>,
}

/// Decides the lattice-face property: general position plus, for every level
/// k and every (k+1)-subset U, integrality of the affine expression of
/// coordinates k+1..d in terms of the first k on the span of U. That
/// integrality is exactly surjectivity of the projected lattice onto Z^k.
pub fn is_lattice_face(p: &PolytopeSpec) -> LatticeFaceReport {
    let d = p.dim();
    let general_position = general_position_check(p).ok;
    let witness = first_violation(p, d);
    LatticeFaceReport {
        is_lattice_face: witness.is_none(),
        general_position,
        witness,
    }
}

fn first_violation(p: &PolytopeSpec, d: usize) -> Option<LatticeFaceWitness> {
    let n = p.vertices().len();
    // Level 0: every vertex must be a lattice point.
    for (i, v) in p.vertices().iter().enumerate() {
        if let Some(c) = v.coords.iter().find(|c| !c.is_integer()) {
            return Some(LatticeFaceWitness::NonIntegerCoefficient {
                k: 0,
                subset: vec![i],
                coefficient: c.clone(),
            });
        }
    }
    for k in 1..d {
        for subset in combinations(n, k + 1) {
            if !crate::geometry::projected_subset_independent(p, &subset, k) {
                return Some(LatticeFaceWitness::NotGeneralPosition { k, subset });
            }
            if let Some(c) = span_non_integer_coefficient(p, &subset, k) {
                return Some(LatticeFaceWitness::NonIntegerCoefficient {
                    k,
                    subset,
                    coefficient: c,
                });
            }
        }
    }
    None
}

/// On the affine span of the subset, writes coordinates k+1..d as affine
/// functions of the first k coordinates and returns the first non-integer
/// constant or coefficient, if any.
fn span_non_integer_coefficient(
    p: &PolytopeSpec,
    subset: &[usize],
    k: usize,
) -> Option<Rational> {
    let pts: Vec<Vec<Rational>> = subset
        .iter()
        .map(|&i| p.vertex(i).coords.clone())
        .collect();
    let zeros = vec![Rational::zero(); k];
    let base = solve_affine(&pts, &zeros).expect("projection checked independent");
    if let Some(c) = base[k..].iter().find(|c| !c.is_integer()) {
        return Some(c.clone());
    }
    for i in 0..k {
        let mut unit = zeros.clone();
        unit[i] = Rational::one();
        let w = solve_affine(&pts, &unit).expect("projection checked independent");
        for (wj, bj) in w[k..].iter().zip(&base[k..]) {
            let coef = wj - bj;
            if !coef.is_integer() {
                return Some(coef);
            }
        }
    }
    None
}

/// The lattice-preserving normalization: x maps to alpha + x M with M unit
/// upper triangular, sending coordinate k to
/// det Xtilde(sigma, k; x) / det Y(sigma, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineTransform {
    pub translation: Vec<Rational>,
    pub matrix: RatMatrix,
}

impl AffineTransform {
    pub fn apply(&self, x: &Point) -> Point {
        let d = self.translation.len();
        let mut out = self.translation.clone();
        for (k, o) in out.iter_mut().enumerate().take(d) {
            for j in 0..d {
                let m = self.matrix.get(j, k);
                if !m.is_zero() {
                    *o += &x.coords[j] * m;
                }
            }
        }
        Point::new(out)
    }

    /// The inverse map: y maps to (y - alpha) M^{-1}.
    pub fn inverse(&self) -> AffineTransform {
        let inv = self.matrix.inverse().expect("unit triangular is invertible");
        let neg_alpha = Point::new(self.translation.iter().map(|a| -a).collect());
        let shifted = AffineTransform {
            translation: vec![Rational::zero(); self.translation.len()],
            matrix: inv,
        };
        let translation = shifted.apply(&neg_alpha).coords;
        AffineTransform { translation, matrix: shifted.matrix }
    }

    pub fn is_integral(&self) -> bool {
        self.translation.iter().all(Rational::is_integer)
            && self.matrix.has_integer_entries()
    }
}

/// Builds the transform for an ordered general-position simplex. Entries are
/// exact rationals; for a lattice-face simplex they are integers.
pub fn t_sigma(p: &PolytopeSpec, sigma: &Perm) -> Result<AffineTransform> {
    let d = p.dim();
    if !p.is_simplex() {
        return Err(Error::NotSimplex("t_sigma needs a d-simplex".into()));
    }
    let mut y_dets = Vec::with_capacity(d);
    for k in 1..=d {
        let y = simplex::y_matrix(p, sigma, k).determinant()?;
        if y.is_zero() {
            return Err(Error::GeneralPosition(format!("det Y({sigma}, {k}) = 0")));
        }
        y_dets.push(y);
    }
    let minor = |k: usize, j: usize| -> Result<Rational> {
        simplex::xtilde_minor(p, sigma, k, j).determinant()
    };
    let mut translation = Vec::with_capacity(d);
    for k in 1..=d {
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        translation.push(sign * minor(k, 0)? / &y_dets[k - 1]);
    }
    let mut matrix = RatMatrix::identity(d);
    for k in 1..=d {
        for j in 1..k {
            let sign = if (k + j) % 2 == 0 { rat(1) } else { rat(-1) };
            matrix.set(j - 1, k - 1, sign * minor(k, j)? / &y_dets[k - 1]);
        }
    }
    Ok(AffineTransform { translation, matrix })
}

/// As `t_sigma`, but the input is claimed lattice-face, so every entry must
/// come out an integer; fails otherwise.
pub fn t_sigma_lattice(p: &PolytopeSpec, sigma: &Perm) -> Result<AffineTransform> {
    let t = t_sigma(p, sigma)?;
    if !t.is_integral() {
        return Err(Error::NotLatticeFace(format!(
            "normalization for sigma = {sigma} has a non-integer entry"
        )));
    }
    Ok(t)
}

/// Reorders the vertices of a general-position simplex so that both
/// det X(1, d) and det Y(1, d) are positive; returns the lexicographically
/// least such reordering of the input order.
pub fn canonical_order(p: &PolytopeSpec) -> Result<PolytopeSpec> {
    let d = p.dim();
    if !p.is_simplex() {
        return Err(Error::NotSimplex("canonical_order needs a d-simplex".into()));
    }
    let id = Perm::identity(d);
    for order in Perm::all(d + 1) {
        let candidate = p.reorder(order.images())?;
        let x = simplex::x_matrix(&candidate, &id, d).determinant()?;
        if !x.is_positive() {
            continue;
        }
        let y = simplex::y_matrix(&candidate, &id, d).determinant()?;
        if y.is_positive() {
            return Ok(candidate);
        }
    }
    Err(Error::GeneralPosition(
        "no vertex order with positive leading determinants".into(),
    ))
}

const GENERATOR_ATTEMPTS: usize = 4000;

/// Deterministically generates a verified lattice-face d-simplex with
/// coordinates bounded by `bound` in absolute value.
///
/// Candidates come from integer-polynomial moment curves (always
/// lattice-face) and, in low dimension, plain rejection sampling of small
/// integer simplices; both are enriched by dilations, unit upper triangular
/// integer shears, and integer translations, which preserve the property.
/// Every candidate is re-verified by the checker before being returned.
pub fn generate_lattice_face_simplex(d: usize, seed: u64, bound: i64) -> Result<PolytopeSpec> {
    if !(1..=4).contains(&d) {
        return Err(Error::Dimension(format!(
            "generator supports dimensions 1..4, got {d}"
        )));
    }
    if bound < 1 {
        return Err(Error::GenerationFailed("coordinate bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9 * d as u64));
    let tmax = (1..)
        .take_while(|t: &i64| t.checked_pow(d as u32).is_some_and(|p| p <= bound))
        .last()
        .unwrap_or(0);

    for attempt in 0..GENERATOR_ATTEMPTS {
        let use_moment = d > 2 || attempt % 2 == 0;
        let mut vertices: Vec<Vec<i64>> = if use_moment {
            if 2 * tmax + 1 < d as i64 + 1 {
                continue;
            }
            let mut ts: Vec<i64> = (-tmax..=tmax).collect();
            ts.shuffle(&mut rng);
            ts.truncate(d + 1);
            ts.iter()
                .map(|&t| (1..=d as u32).map(|j| t.pow(j)).collect())
                .collect()
        } else {
            let c = bound.min(6);
            (0..=d)
                .map(|_| (0..d).map(|_| rng.gen_range(-c..=c)).collect())
                .collect()
        };

        // Enrichment: shear, translate, dilate. All three preserve the
        // lattice-face property.
        if rng.gen_bool(0.5) {
            let mut shear = vec![vec![0i64; d]; d];
            for (j, row) in shear.iter_mut().enumerate() {
                row[j] = 1;
                for col in row.iter_mut().skip(j + 1) {
                    if rng.gen_bool(0.4) {
                        *col = rng.gen_range(-1..=1);
                    }
                }
            }
            for v in &mut vertices {
                let mut out = vec![0i64; d];
                for (k, o) in out.iter_mut().enumerate() {
                    for (j, vj) in v.iter().enumerate() {
                        *o += vj * shear[j][k];
                    }
                }
                *v = out;
            }
        }
        if rng.gen_bool(0.6) {
            let shift: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
            for v in &mut vertices {
                for (vj, s) in v.iter_mut().zip(&shift) {
                    *vj += s;
                }
            }
        }
        if d <= 2 && rng.gen_bool(0.3) {
            let m = rng.gen_range(2..=3);
            for v in &mut vertices {
                for vj in v.iter_mut() {
                    *vj *= m;
                }
            }
        }

        if vertices.iter().flatten().any(|&c| c.abs() > bound) {
            continue;
        }
        let refs: Vec<&[i64]> = vertices.iter().map(Vec::as_slice).collect();
        let Ok(p) = PolytopeSpec::from_integers(d, &refs) else {
            continue;
        };
        if is_lattice_face(&p).is_lattice_face {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no lattice-face {d}-simplex with coordinate bound {bound} found in {GENERATOR_ATTEMPTS} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;
    use crate::geometry::GridBox;

    fn demo_simplex(k: i64) -> PolytopeSpec {
        PolytopeSpec::from_integers(
            3,
            &[&[0, 0, 0], &[4, 0, 0], &[3, 6, 0], &[2, 2, 10 * k]],
        )
        .unwrap()
    }

    #[test]
    fn accepts_known_lattice_face_triangle() {
        let p = PolytopeSpec::from_integers(2, &[&[0, 0], &[1, 1], &[2, 0]]).unwrap();
        let report = is_lattice_face(&p);
        assert!(report.is_lattice_face);
        assert!(report.general_position);
    }

    #[test]
    fn rejects_triangle_with_halved_lattice() {
        let p = PolytopeSpec::from_integers(2, &[&[0, 0], &[2, 0], &[2, 1]]).unwrap();
        let report = is_lattice_face(&p);
        assert!(!report.is_lattice_face);
        match report.witness.unwrap() {
            LatticeFaceWitness::NonIntegerCoefficient { k, subset, coefficient } => {
                assert_eq!(k, 1);
                assert_eq!(subset, vec![0, 2]);
                assert_eq!(coefficient, ratio(1, 2));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn rejects_vertical_edge_via_general_position() {
        let p = PolytopeSpec::from_integers(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let report = is_lattice_face(&p);
        assert!(!report.is_lattice_face);
        assert!(!report.general_position);
        assert!(matches!(
            report.witness.unwrap(),
            LatticeFaceWitness::NotGeneralPosition { k: 1, subset } if subset == vec![0, 2]
        ));
    }

    #[test]
    fn demo_family_is_lattice_face() {
        for k in 1..=3 {
            assert!(is_lattice_face(&demo_simplex(k)).is_lattice_face);
        }
    }

    #[test]
    fn z_values_of_demo_family() {
        for k in 1..=3i64 {
            let p = demo_simplex(k);
            let zv = z_values(&p, &Perm::identity(3)).unwrap();
            assert_eq!(zv.values, vec![rat(2), rat(2), rat(10 * k)]);
            assert!(ratio_integrality(&zv));
        }
    }

    #[test]
    fn last_z_value_is_permutation_independent() {
        let p = demo_simplex(1);
        let reference = z_values(&p, &Perm::identity(3)).unwrap().z(3);
        for sigma in Perm::all(3) {
            assert_eq!(z_values(&p, &sigma).unwrap().z(3), reference);
        }
    }

    #[test]
    fn z_of_a_segment() {
        let p = PolytopeSpec::from_integers(1, &[&[0], &[7]]).unwrap();
        let zv = z_values(&p, &Perm::identity(1)).unwrap();
        assert_eq!(zv.values, vec![rat(7)]);
    }

    #[test]
    fn ratio_integrality_examples() {
        let zv = ZVector {
            sigma: Perm::identity(2),
            values: vec![rat(1), ratio(3, 2)],
        };
        assert!(!ratio_integrality(&zv));
        let zv = ZVector {
            sigma: Perm::identity(3),
            values: vec![rat(2), rat(2), rat(10)],
        };
        assert!(ratio_integrality(&zv));
    }

    #[test]
    fn ratio_integrality_holds_for_every_sigma_on_lattice_face_input() {
        let p = demo_simplex(2);
        for sigma in Perm::all(3) {
            assert!(ratio_integrality(&z_values(&p, &sigma).unwrap()));
        }
    }

    #[test]
    fn transform_normalizes_the_chain_vertices() {
        // The image of v_{sigma(i)} ends in d+1-i zeros and the image of
        // v_{d+1} is the z vector.
        let p = demo_simplex(1);
        for sigma in Perm::all(3) {
            let t = t_sigma(&p, &sigma).unwrap();
            let zv = z_values(&p, &sigma).unwrap();
            for i in 1..=3usize {
                let img = t.apply(p.vertex(sigma.image(i - 1)));
                for c in &img.coords[i - 1..] {
                    assert!(c.is_zero(), "sigma={sigma} i={i}");
                }
            }
            assert_eq!(t.apply(p.vertex(3)).coords, zv.values);
        }
    }

    #[test]
    fn transform_values_on_demo_simplex() {
        let p = demo_simplex(1);
        let t = t_sigma(&p, &Perm::identity(3)).unwrap();
        assert_eq!(t.apply(p.vertex(0)), Point::from_integers(&[0, 0, 0]));
        assert_eq!(t.apply(p.vertex(3)), Point::from_integers(&[2, 2, 10]));
    }

    #[test]
    fn transform_is_integral_and_unimodular_on_lattice_face_input() {
        for (d, seed) in [(1usize, 3u64), (2, 4), (3, 5)] {
            let p = generate_lattice_face_simplex(d, seed, 12).unwrap();
            for sigma in Perm::all(d) {
                let t = t_sigma_lattice(&p, &sigma).unwrap();
                assert!(t.is_integral());
                assert_eq!(t.matrix.determinant().unwrap(), rat(1));
            }
        }
    }

    #[test]
    fn transform_bijects_the_lattice() {
        let p = demo_simplex(1);
        for sigma in Perm::all(3) {
            let t = t_sigma_lattice(&p, &sigma).unwrap();
            let inv = t.inverse();
            let grid = GridBox {
                lo: vec![(-2).into(), (-2).into(), (-2).into()],
                hi: vec![2.into(), 2.into(), 2.into()],
            };
            for x in grid.points() {
                let y = t.apply(&x);
                assert!(y.is_integral());
                assert_eq!(inv.apply(&y), x);
            }
        }
    }

    #[test]
    fn canonical_order_keeps_valid_input() {
        let p = demo_simplex(1);
        // det X(1,3) = 240 > 0 and det Y(1,3) = 24 > 0 already.
        assert_eq!(canonical_order(&p).unwrap(), p);
    }

    #[test]
    fn canonical_order_postconditions() {
        let mut shuffled = demo_simplex(2).reorder(&[2, 0, 3, 1]).unwrap();
        shuffled = canonical_order(&shuffled).unwrap();
        let id = Perm::identity(3);
        assert!(simplex::x_matrix(&shuffled, &id, 3)
            .determinant()
            .unwrap()
            .is_positive());
        assert!(simplex::y_matrix(&shuffled, &id, 3)
            .determinant()
            .unwrap()
            .is_positive());
    }

    #[test]
    fn swapping_rows_of_valid_order_flips_leading_determinant() {
        let p = demo_simplex(1);
        let swapped = p.reorder(&[1, 0, 2, 3]).unwrap();
        let id = Perm::identity(3);
        assert_eq!(
            simplex::x_matrix(&swapped, &id, 3).determinant().unwrap(),
            -simplex::x_matrix(&p, &id, 3).determinant().unwrap()
        );
    }

    #[test]
    fn generator_produces_verified_instances() {
        for d in 1..=3usize {
            let p = generate_lattice_face_simplex(d, 42 + d as u64, 10).unwrap();
            assert_eq!(p.dim(), d);
            assert!(p.is_simplex());
            assert!(is_lattice_face(&p).is_lattice_face);
            assert!(p.vertices().iter().all(Point::is_integral));
        }
        let p4 = generate_lattice_face_simplex(4, 42, 24).unwrap();
        assert!(is_lattice_face(&p4).is_lattice_face);
    }

    #[test]
    fn generator_is_deterministic_per_seed() {
        let a = generate_lattice_face_simplex(2, 7, 10).unwrap();
        let b = generate_lattice_face_simplex(2, 7, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dilation_preserves_the_property() {
        let p = generate_lattice_face_simplex(2, 9, 8).unwrap();
        let tripled = p.dilate(3).unwrap();
        assert!(is_lattice_face(&tripled).is_lattice_face);
    }

    #[test]
    fn shears_and_translations_preserve_the_property() {
        let p = demo_simplex(1);
        // x2 += x1, x3 += 2 x2, then translate by (1, -2, 3).
        let sheared = PolytopeSpec::new(
            3,
            p.vertices()
                .iter()
                .map(|v| {
                    let c = &v.coords;
                    Point::new(vec![
                        &c[0] + rat(1),
                        &c[1] + &c[0] - rat(2),
                        &c[2] + rat(2) * &c[1] + rat(3),
                    ])
                })
                .collect(),
        )
        .unwrap();
        assert!(is_lattice_face(&sheared).is_lattice_face);
    }

    #[test]
    fn generator_reports_impossible_requests() {
        assert!(matches!(
            generate_lattice_face_simplex(4, 1, 2),
            Err(Error::GenerationFailed(_))
        ));
    }
}
