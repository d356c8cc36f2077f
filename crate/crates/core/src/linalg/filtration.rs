use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::subspace::{Space, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A finite filtration with explicit support [lo, hi].
///
/// Increasing: W_k = 0 below lo, W_hi = V. Decreasing: F^lo = V, F^p = 0 above hi.
#[derive(Clone)]
pub struct Filtration<S> {
    space: Space,
    direction: Direction,
    lo: i32,
    steps: Vec<Subspace<S>>,
    zero: Subspace<S>,
    full: Subspace<S>,
}

impl<S: std::fmt::Debug> std::fmt::Debug for Filtration<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for (i, s) in self.steps.iter().enumerate() {
            m.entry(&(self.lo + i as i32), s);
        }
        m.finish()
    }
}

impl<S: Scalar> Filtration<S> {
    /// `steps[i]` is the piece at index `lo + i`.
    pub fn new(space: Space, direction: Direction, lo: i32, steps: Vec<Subspace<S>>) -> Result<Self> {
        for s in &steps {
            space.check(&s.space())?;
        }
        let f = Filtration { space, direction, lo, steps, zero: Subspace::zero(space), full: Subspace::full(space) };
        f.check_chain()?;
        Ok(f.trimmed())
    }

    /// Filtration jumping only at the listed indices: W_k = W_{max key ≤ k}
    /// and F^p = F^{min key ≥ p}. The extreme key must carry the whole space.
    pub fn from_jumps(space: Space, direction: Direction, jumps: &BTreeMap<i32, Subspace<S>>) -> Result<Self> {
        let (Some((&lo, _)), Some((&hi, _))) = (jumps.first_key_value(), jumps.last_key_value()) else {
            // Empty data only describes the zero space.
            if space.dim == 0 {
                return Self::new(space, direction, 0, vec![Subspace::zero(space)]);
            }
            return Err(Error::InvalidFiltration("no steps given".into()));
        };
        let steps = (lo..=hi)
            .map(|k| {
                let key = match direction {
                    Direction::Increasing => jumps.range(..=k).next_back(),
                    Direction::Decreasing => jumps.range(k..).next(),
                };
                key.expect("key within range").1.clone()
            })
            .collect();
        Self::new(space, direction, lo, steps)
    }

    /// W_k = V for k ≥ c, zero below; or F^p = V for p ≤ c, zero above.
    pub fn trivial(space: Space, direction: Direction, c: i32) -> Self {
        Filtration {
            space,
            direction,
            lo: c,
            steps: vec![Subspace::full(space)],
            zero: Subspace::zero(space),
            full: Subspace::full(space),
        }
    }

    fn check_chain(&self) -> Result<()> {
        for (i, pair) in self.steps.windows(2).enumerate() {
            let k = self.lo + i as i32;
            let ok = match self.direction {
                Direction::Increasing => pair[0].is_subspace_of(&pair[1]),
                Direction::Decreasing => pair[1].is_subspace_of(&pair[0]),
            };
            if !ok {
                return Err(Error::InvalidFiltration(format!("chain breaks between indices {k} and {}", k + 1)));
            }
        }
        let end = match self.direction {
            Direction::Increasing => self.steps.last(),
            Direction::Decreasing => self.steps.first(),
        };
        if self.space.dim > 0 && !end.is_some_and(|s| s.is_full()) {
            return Err(Error::InvalidFiltration("extreme step is not the whole space".into()));
        }
        Ok(())
    }

    /// Drops redundant zero and full steps so the support is tight.
    fn trimmed(mut self) -> Self {
        match self.direction {
            Direction::Increasing => {
                while self.steps.len() > 1 && self.steps[self.steps.len() - 2].is_full() {
                    self.steps.pop();
                }
                while self.steps.len() > 1 && self.steps[0].is_zero() {
                    self.steps.remove(0);
                    self.lo += 1;
                }
            }
            Direction::Decreasing => {
                while self.steps.len() > 1 && self.steps[1].is_full() {
                    self.steps.remove(0);
                    self.lo += 1;
                }
                while self.steps.len() > 1 && self.steps[self.steps.len() - 1].is_zero() {
                    self.steps.pop();
                }
            }
        }
        self
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Tight support: the smallest [lo, hi] outside of which the filtration is constant.
    pub fn support(&self) -> (i32, i32) {
        (self.lo, self.lo + self.steps.len() as i32 - 1)
    }

    pub fn get(&self, k: i32) -> &Subspace<S> {
        let (lo, hi) = self.support();
        match self.direction {
            Direction::Increasing if k < lo => &self.zero,
            Direction::Increasing if k > hi => &self.full,
            Direction::Decreasing if k < lo => &self.full,
            Direction::Decreasing if k > hi => &self.zero,
            _ => &self.steps[(k - lo) as usize],
        }
    }

    /// Indices k with a nonzero graded piece, with its dimension.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let (lo, hi) = self.support();
        (lo..=hi)
            .filter_map(|k| {
                let d = match self.direction {
                    Direction::Increasing => self.get(k).dim() - self.get(k - 1).dim(),
                    Direction::Decreasing => self.get(k).dim() - self.get(k + 1).dim(),
                };
                (d > 0).then_some((k, d))
            })
            .collect()
    }

    pub fn same_as(&self, other: &Self) -> bool {
        if self.direction != other.direction || self.space.dim != other.space.dim {
            return false;
        }
        let (a, b) = (self.support(), other.support());
        (a.0.min(b.0) - 1..=a.1.max(b.1) + 1).all(|k| self.get(k).same_as(other.get(k)))
    }

    pub fn conj(&self) -> Self {
        self.map_steps(|s| s.conj())
    }

    fn map_steps(&self, f: impl Fn(&Subspace<S>) -> Subspace<S>) -> Self {
        Filtration {
            space: self.space,
            direction: self.direction,
            lo: self.lo,
            steps: self.steps.iter().map(f).collect(),
            zero: self.zero.clone(),
            full: self.full.clone(),
        }
    }

    /// The filtration on another backend, with tolerance `eps`.
    pub fn cast<T: Scalar>(&self, eps: f64) -> Filtration<T> {
        let space = Space::with_eps(self.space.dim, eps);
        Filtration {
            space,
            direction: self.direction,
            lo: self.lo,
            steps: self.steps.iter().map(|s| s.cast(eps)).collect(),
            zero: Subspace::zero(space),
            full: Subspace::full(space),
        }
    }

    /// Reindex so the piece at k moves to k + d.
    pub fn shift(&self, d: i32) -> Self {
        let mut f = self.clone();
        f.lo += d;
        f
    }

    /// Push forward along an invertible map g (gF)^p = g(F^p).
    pub fn transform(&self, g: &Matrix<S>) -> Self {
        self.map_steps(|s| s.image(g, self.space))
    }

    /// Image under a surjection onto `target` (induced quotient filtration).
    pub fn push_forward(&self, map: &Matrix<S>, target: Space) -> Result<Self> {
        let (lo, hi) = self.support();
        let steps = (lo..=hi).map(|k| self.get(k).image(map, target)).collect();
        Self::new(target, self.direction, lo, steps)
    }

    /// Restriction to a subspace expressed in coordinates of its echelon basis.
    pub fn restrict(&self, sub: &Subspace<S>) -> Result<Self> {
        let target = Space::with_eps(sub.dim(), self.space.eps);
        let (lo, hi) = self.support();
        let mut steps = Vec::new();
        for k in lo..=hi {
            let inter = self.get(k).intersect(sub)?;
            let gens = inter.basis().iter().map(|v| sub.coordinates(v)).collect();
            steps.push(Subspace::span_unchecked(target, gens));
        }
        Self::new(target, self.direction, lo, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gauss;

    #[test]
    fn jumps_fill_gaps() {
        let s = Space::new(2);
        let mut j = BTreeMap::new();
        j.insert(-2, Subspace::<Gauss>::coordinate(s, &[1]));
        j.insert(0, Subspace::full(s));
        let w = Filtration::from_jumps(s, Direction::Increasing, &j).unwrap();
        assert_eq!(w.get(-1).dim(), 1);
        assert_eq!(w.get(-3).dim(), 0);
        assert_eq!(w.get(5).dim(), 2);
        assert_eq!(w.graded_dims(), BTreeMap::from([(-2, 1), (0, 1)]));
    }

    #[test]
    fn inverted_chain_is_rejected() {
        let s = Space::new(2);
        let steps = vec![Subspace::<Gauss>::full(s), Subspace::coordinate(s, &[0])];
        assert!(matches!(Filtration::new(s, Direction::Increasing, 0, steps), Err(Error::InvalidFiltration(_))));
    }

    #[test]
    fn support_is_tight() {
        let s = Space::new(1);
        let steps = vec![Subspace::<Gauss>::zero(s), Subspace::zero(s), Subspace::full(s), Subspace::full(s)];
        let w = Filtration::new(s, Direction::Increasing, -3, steps).unwrap();
        assert_eq!(w.support(), (-1, -1));
        let steps = vec![Subspace::<Gauss>::full(s), Subspace::full(s), Subspace::zero(s)];
        let f = Filtration::new(s, Direction::Decreasing, 0, steps).unwrap();
        assert_eq!(f.support(), (1, 1));
        assert!(f.get(2).is_zero());
    }
}
