//! Gaussian elimination over exact fields.

use crate::scalars::{GaussRational, Scalar};

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Size heuristic for pivot selection; smaller pivots keep entries small.
    fn weight(&self) -> usize {
        1
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
    fn weight(&self) -> usize {
        self.numer().terms().count() + self.denom().terms().count()
    }
}

impl Field for GaussRational {
    fn zero() -> Self {
        GaussRational::zero()
    }
    fn one() -> Self {
        GaussRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        GaussRational::inv(self)
    }
}

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].weight(), i));
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solution set `particular + span(directions)` of a linear system.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F> {
    pub particular: Vec<F>,
    pub directions: Vec<Vec<F>>,
}

impl<F: Field> AffineSolution<F> {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }
}

/// Solves `a x = b` exactly. `None` when inconsistent.
pub fn solve_affine<F: Field>(a: &[Vec<F>], b: &[F], unknowns: usize) -> Option<AffineSolution<F>> {
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&unknowns) {
        return None;
    }
    let mut particular = vec![F::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][unknowns].clone();
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![F::zero(); unknowns];
            d[f] = F::one();
            for (r, &c) in pivots.iter().enumerate() {
                d[c] = F::zero().sub(&aug[r][f]);
            }
            d
        })
        .collect();
    Some(AffineSolution { particular, directions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = vec![vec![g(1), g(2)], vec![g(2), g(4)]];
        assert_eq!(rank(&m), 1);
        let m = vec![vec![g(0), g(1)], vec![g(-1), g(0)]];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn affine_solution_with_free_variable() {
        // x + y = 2
        let a = vec![vec![g(1), g(1)]];
        let s = solve_affine(&a, &[g(2)], 2).unwrap();
        assert_eq!(s.dimension(), 1);
        assert_eq!(s.particular, vec![g(2), g(0)]);
        assert_eq!(s.directions[0], vec![g(-1), g(1)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![g(1), g(1)], vec![g(1), g(1)]];
        assert!(solve_affine(&a, &[g(1), g(2)], 2).is_none());
    }

    #[test]
    fn symbolic_entries() {
        let w = Scalar::param("w");
        // w x = w^2  ->  x = w
        let a = vec![vec![w.clone()]];
        let s = solve_affine(&a, &[w.mul(&w)], 1).unwrap();
        assert_eq!(s.particular, vec![w]);
    }
}
