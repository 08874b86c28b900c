//! The discrete set `S₀`: `x_i = -z_i - η(Λ_i - 2m_i)`, `m_i = 0..=Λ_i`.

use crate::params::ModelParams;
use num_complex::Complex64 as C64;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Grid {
    lambdas: Vec<u32>,
    points: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Grid {
    /// Points in lexicographic order, last site varying fastest.
    pub fn new(lambdas: &[u32]) -> Self {
        let mut points: Vec<Vec<u32>> = vec![vec![]];
        for &l in lambdas {
            points = points.into_iter().flat_map(|p| (0..=l).map(move |m| [p.clone(), vec![m]].concat())).collect();
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Grid { lambdas: lambdas.to_vec(), points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    pub fn point(&self, k: usize) -> &[u32] {
        &self.points[k]
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of `m` with `m_i` moved by `delta`, if it stays on the grid.
    pub fn neighbour(&self, k: usize, i: usize, delta: i32) -> Option<usize> {
        let mut m = self.points[k].clone();
        let v = m[i] as i64 + delta as i64;
        if v < 0 || v > self.lambdas[i] as i64 {
            return None;
        }
        m[i] = v as u32;
        self.index_of(&m)
    }

    /// Eigenvalue of `h` at point `k`: `Σ(Λ_i - 2m_i)`.
    pub fn h(&self, k: usize) -> i64 {
        self.points[k].iter().zip(&self.lambdas).map(|(&m, &l)| l as i64 - 2 * m as i64).sum()
    }

    pub fn x(&self, params: &ModelParams, k: usize) -> Vec<C64> {
        params
            .sites()
            .iter()
            .zip(&self.points[k])
            .map(|(s, &m)| -s.z - params.eta() * (s.lambda as f64 - 2.0 * m as f64))
            .collect()
    }

    /// The point with every `m_i = 0`.
    pub fn highest_weight(&self) -> usize {
        0
    }
}
