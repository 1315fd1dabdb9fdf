//   Copyright 2026 keydoor developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//! Hyperplane arrangements, markings and cell enumeration.

use std::collections::{BTreeSet, HashSet};

use log::debug;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::Polytope;
use crate::error::{Error, Result};
use crate::tolerance::{EPS_HYPERPLANE, EPS_INT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Neg => -1.0,
            Sign::Pos => 1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Pos => Sign::Neg,
        }
    }
}

/// Sign vector of a point or cell with respect to an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(Vec<Sign>);

impl Marking {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flipped(&self, i: usize) -> Marking {
        let mut s = self.0.clone();
        s[i] = s[i].flip();
        Marking(s)
    }

    /// Number of entries in which two markings differ.
    pub fn distance(&self, other: &Marking) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

/// Hyperplane `{x : normal^T x = offset}` in canonical form: unit normal whose
/// first nonzero component is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    normal: DVector<f64>,
    offset: f64,
}

impl Hyperplane {
    pub fn new(normal: &[f64], offset: f64) -> Result<Self> {
        Self::from_halfspace(normal, offset).map(|(h, _)| h)
    }

    /// Canonical hyperplane bounding `a x <= b`, plus the side of it that the
    /// half-space occupies.
    pub fn from_halfspace(a: &[f64], b: f64) -> Result<(Self, Sign)> {
        let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= EPS_HYPERPLANE {
            return Err(Error::Dimension("hyperplane normal is zero".into()));
        }
        let lead = a
            .iter()
            .find(|v| v.abs() / norm > EPS_HYPERPLANE)
            .copied()
            .unwrap_or(1.0);
        let (scale, side) = if lead < 0.0 {
            (-1.0 / norm, Sign::Pos)
        } else {
            (1.0 / norm, Sign::Neg)
        };
        Ok((
            Self {
                normal: DVector::from_iterator(a.len(), a.iter().map(|v| v * scale)),
                offset: b * scale,
            },
            side,
        ))
    }

    pub fn normal(&self) -> &DVector<f64> {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(n, x)| n * x).sum::<f64>() - self.offset
    }

    /// Points on the hyperplane get `Neg`.
    pub fn side(&self, x: &[f64]) -> Sign {
        if self.eval(x) <= 0.0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn approx_eq(&self, other: &Hyperplane) -> bool {
        self.dim() == other.dim()
            && (self.offset - other.offset).abs() <= 1e-9 * (1.0 + self.offset.abs())
            && (&self.normal - &other.normal).amax() <= 1e-9
    }
}

/// Sum_{i=0..d} C(n, i): the maximum number of cells of `n` hyperplanes in R^d.
pub fn buck_bound(n: usize, d: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for i in 0..=d.min(n) {
        total += binom;
        binom = binom * (n - i) as u128 / (i + 1) as u128;
    }
    total
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    hyperplanes: Vec<Hyperplane>,
    bounding: Polytope,
}

impl Arrangement {
    /// Builds an arrangement, dropping hyperplanes that repeat in canonical form.
    pub fn new(hyperplanes: Vec<Hyperplane>, bounding: Polytope) -> Result<Self> {
        let mut unique: Vec<Hyperplane> = Vec::with_capacity(hyperplanes.len());
        for h in hyperplanes {
            if h.dim() != bounding.dim() {
                return Err(Error::Dimension(format!(
                    "{}-d hyperplane in {}-d arrangement",
                    h.dim(),
                    bounding.dim()
                )));
            }
            if !unique.iter().any(|u| u.approx_eq(&h)) {
                unique.push(h);
            }
        }
        Ok(Self {
            hyperplanes: unique,
            bounding,
        })
    }

    /// Arrangement of every facet hyperplane of `sets` and of `bounding`.
    pub fn from_polytopes(bounding: &Polytope, sets: &[&Polytope]) -> Result<Self> {
        let mut hs = Vec::new();
        for p in std::iter::once(bounding).chain(sets.iter().copied()) {
            for i in 0..p.n_rows() {
                let (a, b) = p.row(i);
                hs.push(Hyperplane::from_halfspace(&a, b)?.0);
            }
        }
        Self::new(hs, bounding.clone())
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn n_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn bounding(&self) -> &Polytope {
        &self.bounding
    }

    pub fn dim(&self) -> usize {
        self.bounding.dim()
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|u| u.approx_eq(h))
    }

    /// For each row of `p`, the arrangement hyperplane it lies on and the sign
    /// a marking must carry there for the cell to sit inside `p`.
    pub fn halfspace_signs(&self, p: &Polytope) -> Result<Vec<(usize, Sign)>> {
        (0..p.n_rows())
            .map(|i| {
                let (a, b) = p.row(i);
                let (h, side) = Hyperplane::from_halfspace(&a, b)?;
                let idx = self.index_of(&h).ok_or_else(|| {
                    Error::Dimension("polytope facet missing from arrangement".into())
                })?;
                Ok((idx, side))
            })
            .collect()
    }

    pub fn marking_of(&self, x: &[f64]) -> Marking {
        Marking(self.hyperplanes.iter().map(|h| h.side(x)).collect())
    }

    /// The cell `bounding ∩ {-s_i (h_i^T x - g_i) <= 0}`; may be empty.
    ///
    /// `Neg` entries select `h_i^T x <= g_i`, `Pos` entries `h_i^T x >= g_i`.
    pub fn marking_to_polytope(&self, m: &Marking) -> Result<Polytope> {
        if m.len() != self.n_hyperplanes() {
            return Err(Error::Dimension(format!(
                "marking of length {} for {} hyperplanes",
                m.len(),
                self.n_hyperplanes()
            )));
        }
        let d = self.dim();
        let n = m.len();
        let mut a = DMatrix::zeros(n, d);
        let mut b = DVector::zeros(n);
        for (i, (h, s)) in self.hyperplanes.iter().zip(m.signs()).enumerate() {
            let sv = -s.value();
            for j in 0..d {
                a[(i, j)] = sv * h.normal[j];
            }
            b[i] = sv * h.offset;
        }
        self.bounding.intersect(&Polytope::new(a, b)?)
    }

    /// Full-dimensional after shrinking every facet by `EPS_INT`.
    pub fn cell_is_nonempty(&self, m: &Marking) -> Result<bool> {
        self.marking_to_polytope(m)?.is_full_dimensional()
    }

    /// Markings of every nonempty full-dimensional cell inside the bounding
    /// polytope, found by breadth-first search over single sign flips.
    pub fn enumerate_cells(&self) -> Result<BTreeSet<Marking>> {
        let (center, _) = self.bounding.chebyshev_center()?;
        let start = self.marking_of(center.as_slice());
        if !self.cell_is_nonempty(&start)? {
            return Err(Error::SolverFailure(
                "cell at the bounding Chebyshev center is empty".into(),
            ));
        }

        // Hyperplanes that miss the interior of the bounding set never separate cells.
        let mut cutting = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let n: Vec<f64> = h.normal.iter().copied().collect();
            let neg: Vec<f64> = n.iter().map(|v| -v).collect();
            let hi = self.bounding.support(&n)?.ok_or(Error::EmptyPolytope)?;
            let lo = -self.bounding.support(&neg)?.ok_or(Error::EmptyPolytope)?;
            if lo < h.offset - EPS_INT && hi > h.offset + EPS_INT {
                cutting.push(i);
            }
        }

        let mut cells = BTreeSet::new();
        let mut tested = HashSet::new();
        tested.insert(start.clone());
        cells.insert(start.clone());
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut candidates = BTreeSet::new();
            for m in &frontier {
                for &i in &cutting {
                    let c = m.flipped(i);
                    if !tested.contains(&c) {
                        candidates.insert(c);
                    }
                }
            }
            tested.extend(candidates.iter().cloned());
            let accepted = candidates
                .into_par_iter()
                .map(|c| Ok(self.cell_is_nonempty(&c)?.then_some(c)))
                .collect::<Result<Vec<_>>>()?;
            frontier = accepted.into_iter().flatten().collect();
            cells.extend(frontier.iter().cloned());
        }
        debug!(
            "enumerated {} cells of {} hyperplanes ({} LPs)",
            cells.len(),
            self.n_hyperplanes(),
            tested.len()
        );
        Ok(cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polytope {
        Polytope::from_box(&[-1.0, -1.0], &[1.0, 1.0]).unwrap()
    }

    #[test]
    fn canonical_form() {
        let (h, s) = Hyperplane::from_halfspace(&[-2.0, 0.0], 1.0).unwrap();
        assert_eq!(h.normal().as_slice(), &[1.0, 0.0]);
        assert_eq!(h.offset(), -0.5);
        assert_eq!(s, Sign::Pos);
        let (h, s) = Hyperplane::from_halfspace(&[0.0, 3.0], 3.0).unwrap();
        assert_eq!(h.normal().as_slice(), &[0.0, 1.0]);
        assert_eq!(h.offset(), 1.0);
        assert_eq!(s, Sign::Neg);
        assert!(Hyperplane::new(&[0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn duplicates_are_merged() {
        let hs = vec![
            Hyperplane::new(&[1.0, 0.0], 0.0).unwrap(),
            Hyperplane::new(&[-2.0, 0.0], 0.0).unwrap(),
            Hyperplane::new(&[0.0, 1.0], 0.0).unwrap(),
        ];
        assert_eq!(Arrangement::new(hs, square()).unwrap().n_hyperplanes(), 2);
    }

    #[test]
    fn empty_arrangement_is_bounding_box() {
        let arr = Arrangement::new(vec![], square()).unwrap();
        let p = arr.marking_to_polytope(&Marking::new(vec![])).unwrap();
        assert_eq!(&p, arr.bounding());
        assert_eq!(arr.enumerate_cells().unwrap().len(), 1);
    }

    #[test]
    fn single_line_left_half() {
        let arr = Arrangement::new(vec![Hyperplane::new(&[1.0, 0.0], 0.0).unwrap()], square())
            .unwrap();
        let p = arr
            .marking_to_polytope(&Marking::new(vec![Sign::Neg]))
            .unwrap();
        assert!(p.contains(&[-0.5, 0.9], 0.0));
        assert!(!p.contains(&[0.5, 0.0], 1e-9));
        assert_eq!(arr.enumerate_cells().unwrap().len(), 2);
    }

    #[test]
    fn crossing_lines_quadrant() {
        let arr = Arrangement::new(
            vec![
                Hyperplane::new(&[1.0, 0.0], 0.0).unwrap(),
                Hyperplane::new(&[0.0, 1.0], 0.0).unwrap(),
            ],
            square(),
        )
        .unwrap();
        let m = Marking::new(vec![Sign::Neg, Sign::Pos]);
        let p = arr.marking_to_polytope(&m).unwrap();
        let witness = [-0.5, 0.5];
        assert!(p.contains(&witness, 0.0));
        assert_eq!(arr.marking_of(&witness), m);
        assert_eq!(arr.enumerate_cells().unwrap().len(), 4);
        assert_eq!(buck_bound(2, 2), 4);
    }

    #[test]
    fn boundary_points_take_negative_sign() {
        let h = Hyperplane::new(&[1.0, 0.0], 0.0).unwrap();
        assert_eq!(h.side(&[0.0, 0.3]), Sign::Neg);
    }

    #[test]
    fn buck_bound_values() {
        assert_eq!(buck_bound(0, 2), 1);
        assert_eq!(buck_bound(3, 2), 7);
        assert_eq!(buck_bound(8, 2), 37);
        assert_eq!(buck_bound(2, 5), 4);
    }
}
