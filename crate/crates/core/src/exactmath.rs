//! Exact rational scalars, matrices, and univariate polynomials.
//!
//! Everything downstream (projections, determinant ratios, Ehrhart
//! coefficients) is built on these types; no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator > 0.
///
/// `num_rational::BigRational` already maintains both invariants on
/// construction, so it is used directly rather than wrapped.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational from an `i64`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d from `i64` parts. Panics on d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the text form: optional sign, integer, optional `/` followed by a
/// positive integer (e.g. `-3/4`). Anything else is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let body = num_part.strip_prefix(['+', '-']).unwrap_or(num_part);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let numer: BigInt = num_part.parse().map_err(|_| err())?;
    let denom: BigInt = match den_part {
        Some(d) => {
            // The denominator carries no sign in the text form.
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Sign of a rational as -1, 0, or +1.
pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Floor of a rational as a `BigInt`.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// A dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn has_integer_entries(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        RatMatrix::new(self.rows, other.cols, entries)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over the
    /// integers after clearing denominators row by row.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }

        // Scale each row to integers; det(self) = det(int matrix) / scale.
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            a.push(
                (0..n)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect(),
            );
            scale *= lcm;
        }

        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // Exact by the Bareiss invariant.
                    a[i][j] = t / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut det = Rational::new(a[n - 1][n - 1].clone(), scale);
        if sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    /// Rank via exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = a[rank][col].recip();
            for j in col..self.cols {
                let v = &a[rank][j] * &inv;
                a[rank][j] = v;
            }
            for r in 0..self.rows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..self.cols {
                        let v = &a[r][j] - &f * &a[rank][j];
                        a[r][j] = v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan; errors if singular or non-square.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> =
                    (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::Degenerate("singular matrix".into()));
            };
            a.swap(col, p);
            let inv = a[col][col].recip();
            for j in 0..2 * n {
                let v = &a[col][j] * &inv;
                a[col][j] = v;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..2 * n {
                        let v = &a[r][j] - &f * &a[col][j];
                        a[r][j] = v;
                    }
                }
            }
        }
        let entries = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        RatMatrix::new(n, n, entries)
    }
}

/// The unique point whose first `k` coordinates equal `fixed_prefix` and
/// which is affinely dependent on the given `k+1` points.
///
/// Writes the point as an affine combination `w = sum(lambda_i * p_i)` with
/// `sum(lambda_i) = 1` and first coordinates pinned, then solves the
/// `(k+1) x (k+1)` system by Cramer's rule. The system matrix is singular
/// exactly when the points' projections onto the first `k` coordinates are
/// affinely dependent.
pub fn solve_affine(points: &[Vec<Rational>], fixed_prefix: &[Rational]) -> Result<Vec<Rational>> {
    let k = fixed_prefix.len();
    if points.len() != k + 1 {
        return Err(Error::Dimension(format!(
            "need {} points for a prefix of length {k}, got {}",
            k + 1,
            points.len()
        )));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) || k > dim {
        return Err(Error::Dimension("inconsistent point dimensions".into()));
    }

    // Row r of the system: r = 0 is the affine constraint, r = j >= 1 pins
    // coordinate j of the combination.
    let system = |rhs_col: Option<usize>| -> RatMatrix {
        let mut rows = Vec::with_capacity(k + 1);
        for r in 0..=k {
            let row: Vec<Rational> = (0..=k)
                .map(|c| {
                    if Some(c) == rhs_col {
                        if r == 0 {
                            Rational::one()
                        } else {
                            fixed_prefix[r - 1].clone()
                        }
                    } else if r == 0 {
                        Rational::one()
                    } else {
                        points[c][r - 1].clone()
                    }
                })
                .collect();
            rows.push(row);
        }
        RatMatrix::from_rows(rows).expect("square by construction")
    };

    let denom = system(None).determinant()?;
    if denom.is_zero() {
        return Err(Error::GeneralPosition(
            "projected points are affinely dependent".into(),
        ));
    }
    let lambda: Vec<Rational> = (0..=k)
        .map(|c| Ok(system(Some(c)).determinant()? / &denom))
        .collect::<Result<_>>()?;

    let mut w = vec![Rational::zero(); dim];
    for (l, p) in lambda.iter().zip(points) {
        for (wj, pj) in w.iter_mut().zip(p) {
            *wj += l * pj;
        }
    }
    Ok(w)
}

/// Dense univariate polynomial with exact rational coefficients.
///
/// Coefficient index equals degree; no trailing zeros; the empty vector is
/// the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// a*x + b.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if sign_of(c) < 0 { "-" } else { "+" })?;
            } else if sign_of(c) < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinant_identity() {
        assert_eq!(RatMatrix::identity(3).determinant().unwrap(), rat(1));
    }

    #[test]
    fn determinant_equal_rows_is_zero() {
        let a = m(&[&[1, 2, 3], &[1, 2, 3], &[0, 1, 4]]);
        assert_eq!(a.determinant().unwrap(), rat(0));
    }

    #[test]
    fn determinant_bordered_vertex_matrix() {
        // Rows (1,v) for the vertices (0,0,0),(4,0,0),(3,6,0),(2,2,10).
        let a = m(&[&[1, 0, 0, 0], &[1, 4, 0, 0], &[1, 3, 6, 0], &[1, 2, 2, 10]]);
        assert_eq!(a.determinant().unwrap(), rat(240));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(a.determinant(), Err(Error::Dimension(_))));
    }

    #[test]
    fn determinant_with_rational_entries() {
        let a = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 5)],
        ])
        .unwrap();
        assert_eq!(a.determinant().unwrap(), ratio(1, 60));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn solve_affine_single_point() {
        let p = vec![vec![rat(3), rat(-1)]];
        assert_eq!(solve_affine(&p, &[]).unwrap(), p[0]);
    }

    #[test]
    fn solve_affine_on_a_line() {
        // Line through (0,0,0) and (4,0,0), first coordinate pinned to 2.
        let pts = vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(4), rat(0), rat(0)],
        ];
        assert_eq!(
            solve_affine(&pts, &[rat(2)]).unwrap(),
            vec![rat(2), rat(0), rat(0)]
        );
    }

    #[test]
    fn solve_affine_on_a_plane() {
        let pts = vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(4), rat(0), rat(0)],
            vec![rat(3), rat(6), rat(0)],
        ];
        assert_eq!(
            solve_affine(&pts, &[rat(2), rat(2)]).unwrap(),
            vec![rat(2), rat(2), rat(0)]
        );
    }

    #[test]
    fn solve_affine_rejects_degenerate_projection() {
        // Both points project to first coordinate 0.
        let pts = vec![vec![rat(0), rat(0)], vec![rat(0), rat(1)]];
        assert!(matches!(
            solve_affine(&pts, &[rat(1)]),
            Err(Error::GeneralPosition(_))
        ));
    }

    #[test]
    fn solve_affine_output_is_affinely_dependent() {
        let pts = vec![
            vec![rat(1), rat(2), rat(5)],
            vec![rat(3), rat(1), rat(7)],
            vec![rat(0), rat(4), rat(2)],
        ];
        let w = solve_affine(&pts, &[rat(2), rat(2)]).unwrap();
        // Bordered matrix of all four points has rank <= 3, so any 4x4
        // bordered determinant on (1, x, y, z) rows must vanish.
        let mut rows: Vec<Vec<Rational>> = pts
            .iter()
            .chain(std::iter::once(&w))
            .map(|p| {
                let mut row = vec![Rational::one()];
                row.extend(p.iter().cloned());
                row
            })
            .collect();
        rows.truncate(4);
        let det = RatMatrix::from_rows(rows).unwrap().determinant().unwrap();
        assert!(det.is_zero());
    }

    #[test]
    fn poly_add_cancels() {
        let p = UniPoly::x();
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn poly_eval_constant_term() {
        // x^2 - x + 1/6 at 0.
        let p = UniPoly::new(vec![ratio(1, 6), rat(-1), rat(1)]);
        assert_eq!(p.eval(&rat(0)), ratio(1, 6));
    }

    #[test]
    fn poly_compose_with_linear() {
        // x^2 composed with 2x+1 = 4x^2 + 4x + 1.
        let sq = UniPoly::new(vec![rat(0), rat(0), rat(1)]);
        let inner = UniPoly::linear(rat(2), rat(1));
        assert_eq!(
            sq.compose(&inner),
            UniPoly::new(vec![rat(1), rat(4), rat(4)])
        );
    }

    #[test]
    fn parse_rational_grammar() {
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("+7").unwrap(), rat(7));
        assert_eq!(parse_rational("10/5").unwrap(), rat(2));
        for bad in ["3//4", "3/", "/4", "3/-4", "", "1.5", "a", "3 /4", "4/0"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn rational_display_round_trips() {
        for r in [ratio(-3, 4), rat(0), rat(17), ratio(22, 11)] {
            assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
        }

        fn square(n: usize) -> impl Strategy<Value = RatMatrix> {
            proptest::collection::vec(small_rational(), n * n)
                .prop_map(move |v| RatMatrix::new(n, n, v).unwrap())
        }

        proptest! {
            #[test]
            fn det_alternates_under_row_swap(a in square(4), i in 0usize..4, j in 0usize..4) {
                prop_assume!(i != j);
                let d = a.determinant().unwrap();
                let mut b = a.clone();
                for c in 0..4 {
                    let x = a.get(i, c).clone();
                    let y = a.get(j, c).clone();
                    b.set(i, c, y);
                    b.set(j, c, x);
                }
                prop_assert_eq!(b.determinant().unwrap(), -d);
            }

            #[test]
            fn det_is_multiplicative(a in square(3), b in square(3)) {
                let lhs = a.mul(&b).unwrap().determinant().unwrap();
                let rhs = a.determinant().unwrap() * b.determinant().unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn results_stay_reduced(x in small_rational(), y in small_rational()) {
                use num_integer::Integer as _;
                for v in [&x + &y, &x * &y, &x - &y] {
                    prop_assert!(v.denom() > &BigInt::from(0));
                    prop_assert!(v.numer().gcd(v.denom()).is_one() || v.numer().is_zero());
                }
            }
        }
    }
}
