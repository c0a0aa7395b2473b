//! Matrix builders for an ordered d-simplex v_1 .. v_{d+1}.
//!
//! For a permutation sigma of {1..d} and a level k, the bordered matrix
//! X(sigma, k) stacks rows (1, coords of v_{sigma(i)} truncated to k) for
//! i = 1..k plus (1, v_{d+1} truncated), while Y(sigma, k) keeps only the
//! first k rows truncated to k-1 coordinates. The hatted variants work in
//! coordinates shifted by v_{d+1}.

use num_traits::One;

use crate::exactmath::{RatMatrix, Rational};
use crate::geometry::PolytopeSpec;
use crate::perm::Perm;

fn bordered_row(p: &PolytopeSpec, vertex: usize, width: usize) -> Vec<Rational> {
    let mut row = Vec::with_capacity(width + 1);
    row.push(Rational::one());
    row.extend(p.vertex(vertex).coords[..width].iter().cloned());
    row
}

/// (k+1) x (k+1) matrix with rows (1, x_{sigma(i), 1..k}) and (1, x_{d+1, 1..k}).
pub fn x_matrix(p: &PolytopeSpec, sigma: &Perm, k: usize) -> RatMatrix {
    let d = p.dim();
    let mut rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| bordered_row(p, sigma.image(i), k))
        .collect();
    rows.push(bordered_row(p, d, k));
    RatMatrix::from_rows(rows).expect("square by construction")
}

/// k x k matrix with rows (1, x_{sigma(i), 1..k-1}).
pub fn y_matrix(p: &PolytopeSpec, sigma: &Perm, k: usize) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| bordered_row(p, sigma.image(i), k - 1))
        .collect();
    RatMatrix::from_rows(rows).expect("square by construction")
}

fn shifted_coords(p: &PolytopeSpec, vertex: usize, width: usize) -> Vec<Rational> {
    let apex = p.vertex(p.dim());
    p.vertex(vertex).coords[..width]
        .iter()
        .zip(&apex.coords)
        .map(|(a, b)| a - b)
        .collect()
}

/// k x k matrix of shifted coordinates (x_{sigma(i)} - x_{d+1}), no border.
pub fn xhat_matrix(p: &PolytopeSpec, sigma: &Perm, k: usize) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = (0..k).map(|i| shifted_coords(p, sigma.image(i), k)).collect();
    RatMatrix::from_rows(rows).expect("square by construction")
}

/// k x k bordered matrix of shifted coordinates truncated to k-1.
pub fn yhat_matrix(p: &PolytopeSpec, sigma: &Perm, k: usize) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row = vec![Rational::one()];
            row.extend(shifted_coords(p, sigma.image(i), k - 1));
            row
        })
        .collect();
    RatMatrix::from_rows(rows).expect("square by construction")
}

/// Minor of the k x (k+1) matrix with rows (1, x_{sigma(i), 1..k}) after
/// removing column `j` (column 0 is the border of ones).
pub fn xtilde_minor(p: &PolytopeSpec, sigma: &Perm, k: usize, j: usize) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let full = bordered_row(p, sigma.image(i), k);
            full.into_iter()
                .enumerate()
                .filter(|(c, _)| *c != j)
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).expect("square by construction")
}
