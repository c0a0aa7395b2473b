//! Bernoulli and power-sum polynomials, the extended sum operator, and the
//! nested-sum functionals f_d and g_d, plus the literal enumeration oracle
//! they are differential-tested against.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{floor_int, Rational, UniPoly};

/// Default cap on enumeration work for the brute-force oracles.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The k-th Bernoulli polynomial B_k(x), from the recurrence
/// sum_{j=0}^{k} C(k+1, j) B_j(x) = (k+1) x^k.
pub fn bernoulli_poly(k: usize) -> UniPoly {
    let mut table: Vec<UniPoly> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        // (n+1) x^n minus the lower-order terms, divided by n+1.
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::from_integer(BigInt::from(n as i64 + 1));
        let mut acc = UniPoly::new(coeffs);
        for (j, bj) in table.iter().enumerate() {
            acc = acc.sub(&bj.scale(&Rational::from_integer(binomial(n + 1, j))));
        }
        table.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n as i64 + 1))));
    }
    table.pop().expect("table is nonempty")
}

/// The k-th power sum polynomial P_k(x) = (B_{k+1}(x+1) - B_{k+1}(0)) / (k+1),
/// which interpolates sum_{i=1}^{n} i^k at positive integers (and n+1 at k=0).
pub fn power_sum_poly(k: usize) -> UniPoly {
    let b = bernoulli_poly(k + 1);
    let shifted = b.compose(&UniPoly::linear(Rational::one(), Rational::one()));
    shifted
        .sub(&UniPoly::constant(b.eval(&Rational::zero())))
        .scale(&Rational::new(BigInt::one(), BigInt::from(k as i64 + 1)))
}

/// Power sum polynomials P_0 .. P_max_k, built once and shared.
#[derive(Debug, Clone)]
pub struct PowerSumTable {
    polys: Vec<UniPoly>,
}

impl PowerSumTable {
    pub fn new(max_k: usize) -> Self {
        Self { polys: (0..=max_k).map(power_sum_poly).collect() }
    }

    pub fn max_k(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, k: usize) -> &UniPoly {
        &self.polys[k]
    }

    fn ensure(&mut self, k: usize) {
        while self.polys.len() <= k {
            self.polys.push(power_sum_poly(self.polys.len()));
        }
    }
}

/// The extended sum `sum_{s=1}^{u} h(s) = h_0 u + sum_{k>=1} h_k P_k(u)`
/// for a rational upper bound; agrees with literal summation when `u` is a
/// positive integer.
pub fn extended_sum(h: &UniPoly, u: &Rational) -> Rational {
    let mut table = PowerSumTable::new(h.degree().unwrap_or(0));
    extended_sum_with(&mut table, h, u)
}

pub fn extended_sum_with(table: &mut PowerSumTable, h: &UniPoly, u: &Rational) -> Rational {
    let mut acc = h.coeff(0) * u;
    if let Some(deg) = h.degree() {
        table.ensure(deg);
        for k in 1..=deg {
            let c = h.coeff(k);
            if !c.is_zero() {
                acc += c * table.poly(k).eval(u);
            }
        }
    }
    acc
}

/// Symbolic variant: the upper bound is itself a polynomial, and the sum is
/// returned as a polynomial in the bound's variable.
pub fn extended_sum_poly(h: &UniPoly, u: &UniPoly) -> UniPoly {
    let mut table = PowerSumTable::new(h.degree().unwrap_or(0));
    extended_sum_poly_with(&mut table, h, u)
}

pub fn extended_sum_poly_with(table: &mut PowerSumTable, h: &UniPoly, u: &UniPoly) -> UniPoly {
    let mut acc = u.scale(&h.coeff(0));
    if let Some(deg) = h.degree() {
        table.ensure(deg);
        for k in 1..=deg {
            let c = h.coeff(k);
            if !c.is_zero() {
                acc = acc.add(&table.poly(k).compose(u).scale(&c));
            }
        }
    }
    acc
}

/// The nested-sum functional
/// `f_d(a_1,...,a_d) = sum_{s_1=1}^{a_1} sum_{s_2=1}^{a_2 s_1} ... 1`,
/// with the domain extended to arbitrary rationals through extended sums.
///
/// Evaluated back to front: F_{d+1} = 1 and F_j(t) = sum_{s=1}^{a_j t}
/// F_{j+1}(s); the result is F_1(1).
pub fn f_d(a: &[Rational]) -> Rational {
    assert!(!a.is_empty(), "f_d needs at least one argument");
    let mut table = PowerSumTable::new(a.len());
    let mut current = UniPoly::one();
    for coef in a.iter().rev() {
        let bound = UniPoly::linear(coef.clone(), Rational::zero());
        current = extended_sum_poly_with(&mut table, &current, &bound);
    }
    current.eval(&Rational::one())
}

/// `g_d(b_1,...,b_d) = f_d(b_1/b_0, b_2/b_1, ..., b_d/b_{d-1})` with
/// b_0 = 1; every argument must be nonzero.
pub fn g_d(b: &[Rational]) -> Result<Rational> {
    if let Some(i) = b.iter().position(Rational::is_zero) {
        return Err(Error::ZeroArgument(format!("g_d argument {} is zero", i + 1)));
    }
    let mut prev = Rational::one();
    let ratios: Vec<Rational> = b
        .iter()
        .map(|bi| {
            let r = bi / &prev;
            prev = bi.clone();
            r
        })
        .collect();
    Ok(f_d(&ratios))
}

/// The reflection x -> x for x >= 0 and x -> -x-1 for x < 0; it turns signed
/// sum bounds into nonnegative enumeration limits.
pub fn nbar(x: &Rational) -> Rational {
    if x.is_negative() {
        -x - Rational::one()
    } else {
        x.clone()
    }
}

/// nbar applied after floor, as a nonnegative integer.
pub fn nbar_floor(x: &Rational) -> BigInt {
    let f = floor_int(x);
    if f.is_negative() {
        -f - BigInt::one()
    } else {
        f
    }
}

/// Literal integer enumeration of
/// `sum_{s_1=1}^{nbar(floor(a_1))} sum_{s_2=1}^{nbar(floor(a_2 s_1))} ... 1`
/// with every s_i treated as positive. A sum whose upper bound is 0
/// contributes 0. This is the independent oracle for f_d and g_d.
pub fn nested_sum_signed(a: &[Rational], budget: u64) -> Result<i64> {
    let mut spent = 0u64;
    let total = nested_rec(a, &BigInt::one(), budget, &mut spent)?;
    i64::try_from(total).map_err(|_| Error::BudgetExceeded("count exceeds i64".into()))
}

fn nested_rec(a: &[Rational], prev: &BigInt, budget: u64, spent: &mut u64) -> Result<BigInt> {
    let (head, tail) = a.split_first().expect("nonempty bound list");
    let bound = nbar_floor(&(head * Rational::from_integer(prev.clone())));
    let charge = |spent: &mut u64, units: u64| -> Result<()> {
        *spent = spent.saturating_add(units);
        if *spent > budget {
            return Err(Error::BudgetExceeded(format!(
                "nested enumeration exceeded {budget} iterations"
            )));
        }
        Ok(())
    };
    if tail.is_empty() {
        use num_traits::ToPrimitive;
        charge(spent, bound.to_u64().unwrap_or(u64::MAX))?;
        return Ok(bound);
    }
    let mut acc = BigInt::zero();
    let mut s = BigInt::one();
    while s <= bound {
        charge(spent, 1)?;
        acc += nested_rec(tail, &s, budget, spent)?;
        s += 1;
    }
    Ok(acc)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}
