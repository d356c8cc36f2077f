//! Seeded random generators for structures, operators, orbits and models.
//!
//! Entries are small rationals or Gaussian rationals, so the same draw is
//! exact on [`Gauss`](crate::Gauss) and well conditioned on floats.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::biextension::P1Point;
use crate::error::{Error, Result};
use crate::genus3::{Model, NodalModel, ReducibleModel, H3_DIM};
use crate::linalg::{Direction, Filtration, Matrix, Space, Subspace};
use crate::mhs::MixedHodgeStructure;
use crate::nilpotent::NilpotentOperator;
use crate::orbit::{make_orbit, NilpotentOrbit};
use crate::scalar::Scalar;

const MAX_ATTEMPTS: usize = 64;

pub struct Sampler {
    rng: StdRng,
}

/// A generated Hodge vector and the first index p of its type.
struct TypedVector<S> {
    p: i32,
    vector: Vec<S>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: StdRng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, range: RangeInclusive<i64>) -> i64 {
        self.rng.gen_range(range)
    }

    /// p/q with |p| ≤ 4 and 1 ≤ q ≤ 4.
    pub fn rational<S: Scalar>(&mut self) -> S {
        S::from_ratio(self.rng.gen_range(-4..=4), self.rng.gen_range(1..=4))
    }

    pub fn nonzero_rational<S: Scalar>(&mut self) -> S {
        let p = self.rng.gen_range(1..=4) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        S::from_ratio(p, self.rng.gen_range(1..=4))
    }

    pub fn complex<S: Scalar>(&mut self) -> S {
        self.rational::<S>() + S::i() * self.rational::<S>()
    }

    /// A complex number with imaginary part in [1/4, 2].
    pub fn upper_half<S: Scalar>(&mut self) -> S {
        self.rational::<S>() + S::i() * S::from_ratio(self.rng.gen_range(1..=8), 4)
    }

    /// A Gaussian rational with real and imaginary parts of size at most 1/4.
    pub fn small_complex<S: Scalar>(&mut self) -> S {
        let mut part = || S::from_ratio(self.rng.gen_range(-2..=2), 8);
        part() + S::i() * part()
    }

    fn complex_vec<S: Scalar>(&mut self, n: usize) -> Vec<S> {
        (0..n).map(|_| self.complex()).collect()
    }

    /// L·U with unit diagonals and entries in {−1, 0, 1}, so det = 1.
    pub fn unimodular<S: Scalar>(&mut self, n: usize) -> Matrix<S> {
        let mut l = Matrix::identity(n);
        let mut u = Matrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = S::from_i64(self.rng.gen_range(-1..=1));
                u[(j, i)] = S::from_i64(self.rng.gen_range(-1..=1));
            }
        }
        &l * &u
    }

    /// A Gaussian rational with real and imaginary parts in [−1, 1].
    pub fn unit_complex<S: Scalar>(&mut self) -> S {
        let mut part = || S::from_ratio(self.rng.gen_range(-4..=4), 4);
        part() + S::i() * part()
    }

    /// A random MHS with total dimension in 1..=max_dim and weights in the
    /// given range: random pure pieces, mixed by unimodular matrices and
    /// lifted with complex components of size at most 1 in lower weights.
    pub fn mhs<S: Scalar>(
        &mut self,
        max_dim: usize,
        weights: RangeInclusive<i32>,
        eps: f64,
    ) -> Result<MixedHodgeStructure<S>> {
        let n = self.rng.gen_range(1..=max_dim);
        let mut blocks: BTreeMap<i32, Vec<(i32, i32)>> = BTreeMap::new();
        let mut left = n;
        while left > 0 {
            let mut k = self.rng.gen_range(weights.clone());
            if k % 2 != 0 && left == 1 {
                k += if weights.contains(&(k + 1)) { 1 } else { -1 };
            }
            let even = k % 2 == 0;
            if even && (left == 1 || self.rng.gen_bool(0.4)) {
                blocks.entry(k).or_default().push((k / 2, k / 2));
                left -= 1;
            } else {
                let spread = if even { 2 * self.rng.gen_range(1..=2) } else { 2 * self.rng.gen_range(0..=1) + 1 };
                let p = (k + spread) / 2;
                blocks.entry(k).or_default().push((p, k - p));
                left -= 2;
            }
        }
        let space = Space::with_eps(n, eps);
        let mut typed: Vec<TypedVector<S>> = Vec::new();
        let mut weight_jumps = BTreeMap::new();
        let mut start = 0;
        for (&k, types) in &blocks {
            let width: usize = types.iter().map(|&(p, q)| if p == q { 1 } else { 2 }).sum();
            let mix = self.unimodular::<S>(width);
            let mut local = Vec::new();
            let mut col = 0;
            for &(p, q) in types {
                let mut e = vec![S::zero(); width];
                e[col] = S::one();
                if p == q {
                    local.push((p, e));
                    col += 1;
                } else {
                    e[col + 1] = self.rational::<S>() + S::i() * S::from_ratio(self.rng.gen_range(2..=8), 4);
                    let conj: Vec<S> = e.iter().map(|x| x.conj()).collect();
                    local.push((p, e));
                    local.push((q, conj));
                    col += 2;
                }
            }
            for (p, v) in local {
                let v = mix.apply(&v);
                let mut full: Vec<S> = (0..start).map(|_| self.unit_complex()).collect();
                full.extend(v);
                full.resize(n, S::zero());
                typed.push(TypedVector { p, vector: full });
            }
            start += width;
            weight_jumps.insert(k, Subspace::coordinate(space, &(0..start).collect::<Vec<_>>()));
        }
        let (plo, phi) = typed.iter().fold((i32::MAX, i32::MIN), |(lo, hi), t| (lo.min(t.p), hi.max(t.p)));
        let mut hodge = BTreeMap::new();
        for p in plo..=phi {
            let gens: Vec<Vec<S>> = typed.iter().filter(|t| t.p >= p).map(|t| t.vector.clone()).collect();
            hodge.insert(p, Subspace::span(space, &gens)?);
        }
        MixedHodgeStructure::new(
            Filtration::from_jumps(space, Direction::Increasing, &weight_jumps)?,
            Filtration::from_jumps(space, Direction::Decreasing, &hodge)?,
        )
    }

    /// A rational automorphism of V preserving W, with unimodular action on
    /// each graded piece.
    pub fn weight_automorphism<S: Scalar>(&mut self, w: &Filtration<S>) -> Result<Matrix<S>> {
        let space = w.space();
        let (lo, hi) = w.support();
        let mut adapted: Vec<Vec<S>> = Vec::new();
        let mut level = Vec::new();
        for k in lo..=hi {
            let mut current = Subspace::span(space, &adapted)?;
            for v in w.get(k).basis() {
                if !current.contains(v) {
                    adapted.push(v.clone());
                    level.push(k);
                    current = Subspace::span(space, &adapted)?;
                }
            }
        }
        let n = space.dim;
        let mut t = Matrix::zeros(n, n);
        let mut i = 0;
        while i < n {
            let width = level[i..].iter().take_while(|&&k| k == level[i]).count();
            let block = self.unimodular::<S>(width);
            for r in 0..width {
                for c in 0..width {
                    t[(i + r, i + c)] = block[(r, c)].clone();
                }
                for c in i + width..n {
                    t[(i + r, c)] = S::from_i64(self.rng.gen_range(-1..=1));
                }
            }
            i += width;
        }
        let basis = Matrix::from_columns(n, &adapted);
        let inv = basis.inverse(space.eps)?;
        Ok(&(&basis * &t) * &inv)
    }

    /// N = P·J·P⁻¹ for the Jordan type `partition` and a unimodular P.
    pub fn conjugated_jordan<S: Scalar>(&mut self, partition: &[usize], eps: f64) -> Result<NilpotentOperator<S>> {
        let n: usize = partition.iter().sum();
        let p = self.unimodular::<S>(n);
        let p_inv = p.inverse(eps)?;
        let j = jordan::<S>(partition);
        NilpotentOperator::new(Space::with_eps(n, eps), &(&p * &j) * &p_inv)
    }

    /// A nilpotent operator of a random Jordan type on dimension n.
    pub fn nilpotent<S: Scalar>(&mut self, n: usize, eps: f64) -> Result<NilpotentOperator<S>> {
        let parts = partitions(n);
        let pick = parts[self.rng.gen_range(0..parts.len())].clone();
        self.conjugated_jordan(&pick, eps)
    }

    /// A biextension orbit with N² = 0 that couples all three weights.
    /// N e_a is a positive multiple of e_b modulo one_dual and the lifts are
    /// small, so the orbit is pure on Gr^W_{−1} for Im z > 1/4.
    ///
    /// Coordinates: one, e_a, `pure_pairs` pairs of a weight −1 structure,
    /// e_b, one_dual. N e_a = n·e_b + d·one_dual and N one = μ·one_dual +
    /// c·e_b; F∞ has F⁻¹ = V and F⁰ spanned by lifts of one, e_a and the
    /// (0,−1) vectors of the pure part.
    pub fn coupled_orbit<S: Scalar>(&mut self, pure_pairs: usize, eps: f64) -> Result<NilpotentOrbit<S>> {
        let mut last = None;
        for _ in 0..MAX_ATTEMPTS {
            match self.try_coupled_orbit(pure_pairs, eps) {
                Ok(o) => return Ok(o),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Degenerate("no orbit drawn".into())))
    }

    fn try_coupled_orbit<S: Scalar>(&mut self, pure_pairs: usize, eps: f64) -> Result<NilpotentOrbit<S>> {
        let dim = 4 + 2 * pure_pairs;
        let (a, b, last) = (1, dim - 2, dim - 1);
        let space = Space::with_eps(dim, eps);
        let e = |i: usize| space.basis_vector::<S>(i);

        let mut n = Matrix::zeros(dim, dim);
        n[(b, a)] = S::from_ratio(self.rng.gen_range(1..=4), self.rng.gen_range(1..=2));
        n[(last, a)] = self.rational();
        n[(last, 0)] = S::from_i64(self.rng.gen_range(-2..=2));
        n[(b, 0)] = self.rational();
        let n = NilpotentOperator::new(space, n)?;

        let lower = |s: &mut Self, from: usize| -> Vec<S> {
            let mut v = vec![S::zero(); dim];
            for x in v.iter_mut().skip(from) {
                *x = s.small_complex();
            }
            v
        };
        let mut f0 = Vec::new();
        let mut one = lower(self, 2);
        one[0] = S::one();
        f0.push(one);
        let mut ea = lower(self, 2);
        ea[a] = S::one();
        f0.push(ea);
        for j in 0..pure_pairs {
            let (u, v) = (2 + 2 * j, 3 + 2 * j);
            let mut h = lower(self, b);
            h[u] = S::one();
            h[v] = self.upper_half();
            f0.push(h);
        }
        let hodge = Filtration::from_jumps(
            space,
            Direction::Decreasing,
            &BTreeMap::from([(-1, Subspace::full(space)), (0, Subspace::span(space, &f0)?)]),
        )?;
        let weight = Filtration::from_jumps(
            space,
            Direction::Increasing,
            &BTreeMap::from([
                (-2, Subspace::span(space, &[e(last)])?),
                (-1, Subspace::coordinate(space, &(1..dim).collect::<Vec<_>>())),
                (0, Subspace::full(space)),
            ]),
        )?;
        make_orbit(n, hodge, weight, e(0), e(last))
    }

    /// A nodal model with Im τ diagonally dominant.
    pub fn nodal_model<S: Scalar>(&mut self) -> Model<S> {
        let tau = self.period_2x2();
        Model::Nodal(NodalModel {
            tau,
            aj_z: self.complex_vec(6),
            aj_w: self.complex_vec(6),
            b: self.complex(),
            mu: S::from_i64(self.rng.gen_range(-2..=2)),
        })
    }

    pub fn reducible_model<S: Scalar>(&mut self) -> Model<S> {
        Model::Reducible(ReducibleModel {
            tau1: self.upper_half(),
            tau2: self.period_2x2(),
            aj_z: self.complex_vec(H3_DIM),
            aj_w: self.complex_vec(H3_DIM),
            b: self.complex(),
        })
    }

    fn period_2x2<S: Scalar>(&mut self) -> [[S; 2]; 2] {
        let off = self.rational::<S>() + S::i() * S::from_ratio(self.rng.gen_range(-1..=1), 4);
        let diag = |s: &mut Self| s.rational::<S>() + S::i() * S::from_ratio(s.rng.gen_range(4..=8), 4);
        [[diag(self), off.clone()], [off, diag(self)]]
    }

    /// Four distinct points of ℙ¹; with `infinity` the last one is ∞.
    pub fn four_points(&mut self, infinity: bool) -> [P1Point; 4] {
        let mut pts: Vec<Complex64> = Vec::new();
        while pts.len() < 4 {
            let z = Complex64::new(self.rng.gen_range(-3.0..3.0), self.rng.gen_range(-3.0..3.0));
            if pts.iter().all(|p| (p - z).norm() > 0.25) {
                pts.push(z);
            }
        }
        let mut out = pts.into_iter().map(P1Point::Finite);
        let first = [out.next(), out.next(), out.next(), out.next()].map(|p| p.expect("four points"));
        if infinity {
            [first[0], first[1], first[2], P1Point::Infinity]
        } else {
            first
        }
    }

    /// A Möbius transformation (a, b, c, d) with ad − bc of modulus ≥ 1/2.
    pub fn mobius(&mut self) -> [Complex64; 4] {
        loop {
            let mut c = || Complex64::new(self.rng.gen_range(-2.0..2.0), self.rng.gen_range(-2.0..2.0));
            let m = [c(), c(), c(), c()];
            if (m[0] * m[3] - m[1] * m[2]).norm() >= 0.5 {
                return m;
            }
        }
    }
}

/// The nilpotent Jordan matrix with blocks of the given sizes: e_i ↦ e_{i+1}
/// inside each block.
pub fn jordan<S: Scalar>(partition: &[usize]) -> Matrix<S> {
    let n = partition.iter().sum();
    let mut m = Matrix::zeros(n, n);
    let mut start = 0;
    for &size in partition {
        for i in start..start + size - 1 {
            m[(i + 1, i)] = S::one();
        }
        start += size;
    }
    m
}

/// All partitions of n in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
