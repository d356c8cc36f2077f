//! Linear-algebra models of the nodal and reducible genus-3 degenerations.
//!
//! H¹ uses the symplectic dual basis (α₁*, α₂*, α₃*, β₁*, β₂*, β₃*) with α₃
//! the vanishing cycle. H³ is Λ³H¹ ⊗ ℚ(2) in the basis of sorted triples, and
//! 𝒱 adjoins `one` in front and `one_dual` at the end, so dim 𝒱 = 22.

use std::collections::BTreeMap;

use crate::biextension::{as_biextension, Biextension};
use crate::error::{Error, Result};
use crate::linalg::{wedge_indices, Direction, Filtration, Matrix, Space, Subspace};
use crate::mhs::{check_morphism, MixedHodgeStructure};
use crate::nilpotent::NilpotentOperator;
use crate::orbit::{make_orbit, NilpotentOrbit};
use crate::scalar::Scalar;

const ALPHA3: usize = 2;
const BETA3: usize = 5;
/// Indices of α₁*, α₂*, β₁*, β₂*.
const NORMALIZATION: [usize; 4] = [0, 1, 3, 4];
/// Dimension of H³.
pub const H3_DIM: usize = 20;
/// Dimension of 𝒱.
pub const V_DIM: usize = H3_DIM + 2;

/// One nodal fibre: C̃₀ of genus 2 with periods τ.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalModel<S> {
    pub tau: [[S; 2]; 2],
    /// Coefficients of the `one` lift on β₃*∧Λ², one per pair of
    /// (α₁*, α₂*, β₁*, β₂*) in lexicographic order.
    pub aj_z: Vec<S>,
    /// Values of the `one_dual` functional on α₃*∧Λ², same indexing.
    pub aj_w: Vec<S>,
    pub b: S,
    /// N(one) = μ·one_dual.
    pub mu: S,
}

/// C₁ ∪ C₂ of genera 1 and 2; C₁ carries the third symplectic pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducibleModel<S> {
    pub tau1: S,
    pub tau2: [[S; 2]; 2],
    /// Coefficients of the `one` lift on all of H³.
    pub aj_z: Vec<S>,
    /// Values of the `one_dual` functional on all of H³.
    pub aj_w: Vec<S>,
    pub b: S,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Model<S> {
    Nodal(NodalModel<S>),
    Reducible(ReducibleModel<S>),
}

/// 𝒬 ⊆ 𝒱_lim and the boundary biextension B = 𝒬/K.
#[derive(Clone, Debug)]
pub struct Boundary<S> {
    pub subspace: Subspace<S>,
    /// 𝒬 in the echelon coordinates of `subspace`.
    pub q: MixedHodgeStructure<S>,
    pub inclusion: Matrix<S>,
    pub one: Vec<S>,
    pub one_dual: Vec<S>,
    pub biextension: Biextension<S>,
    /// f: 𝒬 → B, checked to be a morphism matching the generators.
    pub projection: Matrix<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainTheoremReport {
    pub limit_height: f64,
    pub boundary_height: f64,
    pub gap: f64,
    /// ‖δ_M·ι − ι·δ_𝒬‖.
    pub restriction_distance: f64,
    /// Max entry of δ_{M,0}.
    pub delta_m0_norm: f64,
    pub m_dims: BTreeMap<i32, usize>,
    pub q_dims: BTreeMap<i32, usize>,
    pub boundary_dims: BTreeMap<i32, usize>,
}

impl MainTheoremReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.gap < tol && self.restriction_distance < tol && self.delta_m0_norm < tol
    }
}

fn check_period_2x2<S: Scalar>(tau: &[[S; 2]; 2], eps: f64) -> Result<()> {
    if !(tau[0][1].clone() - tau[1][0].clone()).negligible(1.0, eps) {
        return Err(Error::InvalidPeriod("τ is not symmetric".into()));
    }
    let im = |x: &S| x.to_c64().im;
    let minor1 = im(&tau[0][0]);
    let minor2 = minor1 * im(&tau[1][1]) - im(&tau[0][1]) * im(&tau[1][0]);
    if minor1 <= eps || minor2 <= eps {
        return Err(Error::InvalidPeriod("Im τ is not positive definite".into()));
    }
    Ok(())
}

fn check_len<S>(v: &[S], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: v.len() });
    }
    Ok(())
}

impl<S: Scalar> Model<S> {
    pub fn validate(&self, eps: f64) -> Result<()> {
        match self {
            Model::Nodal(m) => {
                check_period_2x2(&m.tau, eps)?;
                check_len(&m.aj_z, 6)?;
                check_len(&m.aj_w, 6)?;
                if !m.mu.is_real(eps) {
                    return Err(Error::Precondition("μ must be rational".into()));
                }
            }
            Model::Reducible(m) => {
                check_period_2x2(&m.tau2, eps)?;
                if m.tau1.to_c64().im <= eps {
                    return Err(Error::InvalidPeriod("Im τ₁ is not positive".into()));
                }
                check_len(&m.aj_z, H3_DIM)?;
                check_len(&m.aj_w, H3_DIM)?;
            }
        }
        Ok(())
    }

    pub fn b(&self) -> &S {
        match self {
            Model::Nodal(m) => &m.b,
            Model::Reducible(m) => &m.b,
        }
    }

    /// The same model over another backend, through `Complex64`.
    pub fn cast<T: Scalar>(&self) -> Model<T> {
        let c = |x: &S| T::from_c64(x.to_c64());
        let cv = |v: &[S]| v.iter().map(c).collect();
        let ct = |t: &[[S; 2]; 2]| [[c(&t[0][0]), c(&t[0][1])], [c(&t[1][0]), c(&t[1][1])]];
        match self {
            Model::Nodal(m) => Model::Nodal(NodalModel {
                tau: ct(&m.tau),
                aj_z: cv(&m.aj_z),
                aj_w: cv(&m.aj_w),
                b: c(&m.b),
                mu: c(&m.mu),
            }),
            Model::Reducible(m) => Model::Reducible(ReducibleModel {
                tau1: c(&m.tau1),
                tau2: ct(&m.tau2),
                aj_z: cv(&m.aj_z),
                aj_w: cv(&m.aj_w),
                b: c(&m.b),
            }),
        }
    }

    fn is_nodal(&self) -> bool {
        matches!(self, Model::Nodal(_))
    }
}

fn unit<S: Scalar>(dim: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[i] = S::one();
    v
}

/// Pairs of normalization indices in lexicographic order.
fn normalization_pairs() -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for (i, &a) in NORMALIZATION.iter().enumerate() {
        for &b in &NORMALIZATION[i + 1..] {
            out.push([a, b]);
        }
    }
    out
}

/// Position in the H³ basis of the sorted triple {a, b, c}.
fn triple_index(mut t: [usize; 3]) -> usize {
    t.sort_unstable();
    wedge_indices(6, 3).iter().position(|w| w[..] == t[..]).expect("indices below 6")
}

/// H¹_lim with its limit weight filtration, and N.
pub fn build_h1_lim<S: Scalar>(model: &Model<S>, eps: f64) -> Result<(MixedHodgeStructure<S>, NilpotentOperator<S>)> {
    model.validate(eps)?;
    let space = Space::with_eps(6, eps);
    let e = |i| unit::<S>(6, i);
    // ω_j has α-periods δ_ij and β-periods τ_ij.
    let omega = |j: usize, tau: &dyn Fn(usize, usize) -> S, genus: usize| {
        let mut v = e(j);
        for i in 0..genus {
            v[3 + i] = tau(i, j);
        }
        v
    };
    match model {
        Model::Nodal(m) => {
            let tau = |i: usize, j: usize| m.tau[i][j].clone();
            let f1 = vec![omega(0, &tau, 2), omega(1, &tau, 2), e(ALPHA3)];
            let mhs = MixedHodgeStructure::from_generators(
                space,
                &[
                    (0, vec![e(BETA3)]),
                    (1, NORMALIZATION.iter().map(|&i| e(i)).chain([e(BETA3)]).collect()),
                    (2, (0..6).map(e).collect()),
                ],
                &[(0, (0..6).map(e).collect()), (1, f1)],
            )?;
            let n = Matrix::from_fn(6, 6, |i, j| if (i, j) == (BETA3, ALPHA3) { S::one() } else { S::zero() });
            Ok((mhs, NilpotentOperator::new(space, n)?))
        }
        Model::Reducible(m) => {
            let tau = |i: usize, j: usize| match (i, j) {
                (2, 2) => m.tau1.clone(),
                (2, _) | (_, 2) => S::zero(),
                _ => m.tau2[i][j].clone(),
            };
            let f1 = (0..3).map(|j| omega(j, &tau, 3)).collect();
            let mhs = MixedHodgeStructure::from_generators(
                space,
                &[(1, (0..6).map(e).collect())],
                &[(0, (0..6).map(e).collect()), (1, f1)],
            )?;
            Ok((mhs, NilpotentOperator::zero(space)))
        }
    }
}

/// Λ³H¹_lim ⊗ ℚ(2) with the induced N.
pub fn build_h3_lim<S: Scalar>(model: &Model<S>, eps: f64) -> Result<(MixedHodgeStructure<S>, NilpotentOperator<S>)> {
    let (h1, n1) = build_h1_lim(model, eps)?;
    Ok((h1.exterior_power(3)?.tate_twist(2), n1.induced_on_exterior_power(3)?))
}

fn embed<S: Scalar>(h: &[S]) -> Vec<S> {
    let mut v = Vec::with_capacity(V_DIM);
    v.push(S::zero());
    v.extend(h.iter().cloned());
    v.push(S::zero());
    v
}

/// The `one` lift in F⁰ and the `one_dual` functional, as vectors on H³.
fn extension_data<S: Scalar>(model: &Model<S>) -> (Vec<S>, Vec<S>) {
    match model {
        Model::Nodal(m) => {
            let mut a = vec![S::zero(); H3_DIM];
            let mut phi = vec![S::zero(); H3_DIM];
            for (k, [x, y]) in normalization_pairs().into_iter().enumerate() {
                a[triple_index([x, y, BETA3])] = m.aj_z[k].clone();
                phi[triple_index([x, y, ALPHA3])] = m.aj_w[k].clone();
            }
            (a, phi)
        }
        Model::Reducible(m) => (m.aj_z.clone(), m.aj_w.clone()),
    }
}

/// The limit orbit on 𝒱 = ℚ(0)·one ⊕ H³ ⊕ ℚ(1)·one_dual.
pub fn build_v_lim<S: Scalar>(model: &Model<S>, eps: f64) -> Result<NilpotentOrbit<S>> {
    let (h3, n3) = build_h3_lim(model, eps)?;
    v_lim_from(model, &h3, &n3, eps)
}

fn v_lim_from<S: Scalar>(
    model: &Model<S>,
    h3: &MixedHodgeStructure<S>,
    n3: &NilpotentOperator<S>,
    eps: f64,
) -> Result<NilpotentOrbit<S>> {
    let space = Space::with_eps(V_DIM, eps);
    let e = |i| unit::<S>(V_DIM, i);
    let (one, one_dual) = (e(0), e(V_DIM - 1));
    let (a, phi) = extension_data(model);

    let mut lifted_one = embed(&a);
    lifted_one[0] = S::one();
    lifted_one[V_DIM - 1] = model.b().clone();
    let lift = |h: &[S]| {
        let mut v = embed(h);
        v[V_DIM - 1] = h.iter().zip(&phi).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        v
    };

    let (flo, fhi) = h3.hodge().support();
    let mut hodge = BTreeMap::new();
    for p in flo.min(-1)..=fhi.max(0) {
        let mut gens: Vec<Vec<S>> = h3.hodge().get(p).basis().iter().map(|h| lift(h)).collect();
        if p <= 0 {
            gens.push(lifted_one.clone());
        }
        if p <= -1 {
            gens.push(one_dual.clone());
        }
        hodge.insert(p, Subspace::span(space, &gens)?);
    }
    let hodge = Filtration::from_jumps(space, Direction::Decreasing, &hodge)?;

    let middle: Vec<Vec<S>> = (1..V_DIM).map(e).collect();
    let mut weight = BTreeMap::new();
    weight.insert(-2, Subspace::span(space, std::slice::from_ref(&one_dual))?);
    weight.insert(-1, Subspace::span(space, &middle)?);
    weight.insert(0, Subspace::full(space));
    let weight = Filtration::from_jumps(space, Direction::Increasing, &weight)?;

    let mu = match model {
        Model::Nodal(m) => m.mu.clone(),
        Model::Reducible(_) => S::zero(),
    };
    let middle_block = |i: usize| (1..=H3_DIM).contains(&i);
    let n = Matrix::from_fn(V_DIM, V_DIM, |i, j| {
        if (i, j) == (V_DIM - 1, 0) {
            mu.clone()
        } else if middle_block(i) && middle_block(j) {
            n3.matrix()[(i - 1, j - 1)].clone()
        } else {
            S::zero()
        }
    });
    make_orbit(NilpotentOperator::new(space, n)?, hodge, weight, one, one_dual)
}

/// 𝒬 = span(one) + M_{−1} and B = 𝒬/K with K the H³ part of M_{−2}. For
/// the reducible model 𝒬 = 𝒱 and K = 0.
pub fn build_boundary<S: Scalar>(model: &Model<S>, eps: f64) -> Result<Boundary<S>> {
    let (h3, n3) = build_h3_lim(model, eps)?;
    let orbit = v_lim_from(model, &h3, &n3, eps)?;
    boundary_from(model, &orbit, &h3)
}

fn boundary_from<S: Scalar>(
    model: &Model<S>,
    orbit: &NilpotentOrbit<S>,
    h3: &MixedHodgeStructure<S>,
) -> Result<Boundary<S>> {
    let space = orbit.space();
    let limit = orbit.limit_mhs();
    let (subspace, kernel) = if model.is_nodal() {
        let q = orbit.m().get(-1).sum(&Subspace::span(space, &[orbit.one().to_vec()])?)?;
        let k: Vec<Vec<S>> = h3.weight().get(-2).basis().iter().map(|h| embed(h)).collect();
        (q, k)
    } else {
        (Subspace::full(space), Vec::new())
    };
    let (q, inclusion) = limit.restrict(&subspace)?;
    let one = subspace.coordinates(orbit.one());
    let one_dual = subspace.coordinates(orbit.one_dual());
    let kernel: Vec<Vec<S>> = kernel.iter().map(|v| subspace.coordinates(v)).collect();
    let (b_mhs, projection) = q.quotient(&Subspace::span(q.space(), &kernel)?)?;
    check_morphism(&projection, &q, &b_mhs)?;
    let biextension = as_biextension(b_mhs, projection.apply(&one), projection.apply(&one_dual))?;
    Ok(Boundary { subspace, q, inclusion, one, one_dual, biextension, projection })
}

/// Compares H(N, F∞, W) with Ht(B) and checks δ_M·ι = ι·δ_𝒬.
pub fn verify_main_theorem<S: Scalar>(model: &Model<S>, eps: f64) -> Result<MainTheoremReport> {
    let (h3, n3) = build_h3_lim(model, eps)?;
    let orbit = v_lim_from(model, &h3, &n3, eps)?;
    let boundary = boundary_from(model, &orbit, &h3)?;
    let limit_height = orbit.limit_height()?;
    let boundary_height = boundary.biextension.height()?;
    let delta_m = orbit.limit_mhs().delta()?.matrix;
    let delta_q = boundary.q.delta()?.matrix;
    let restriction_distance = (&delta_m * &boundary.inclusion).distance(&(&boundary.inclusion * &delta_q));
    let data = orbit.grading_y_nfw()?;
    Ok(MainTheoremReport {
        limit_height,
        boundary_height,
        gap: (limit_height - boundary_height).abs(),
        restriction_distance,
        delta_m0_norm: data.delta_m[&0].max_abs(),
        m_dims: orbit.m().graded_dims(),
        q_dims: boundary.q.weight_dims(),
        boundary_dims: boundary.biextension.mhs().weight_dims(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::weight_filtration;
    use crate::{Complex64, Gauss};
    use std::f64::consts::PI;

    fn g(re: i64, im: i64, den: i64) -> Gauss {
        Gauss::from_ratio(re, den) + Gauss::i() * Gauss::from_ratio(im, den)
    }

    fn identity_tau() -> [[Gauss; 2]; 2] {
        [[Gauss::i(), Gauss::zero()], [Gauss::zero(), Gauss::i()]]
    }

    fn nodal(aj_z: Vec<Gauss>, aj_w: Vec<Gauss>, b: Gauss, mu: i64) -> Model<Gauss> {
        Model::Nodal(NodalModel { tau: identity_tau(), aj_z, aj_w, b, mu: Gauss::from_i64(mu) })
    }

    fn generic_nodal(mu: i64) -> Model<Gauss> {
        let tau = [[g(1, 2, 3), g(1, 1, 5)], [g(1, 1, 5), g(-1, 3, 2)]];
        let aj_z = (0..6).map(|k| g(k + 1, 2 - k, 7)).collect();
        let aj_w = (0..6).map(|k| g(3 - k, k * k, 5)).collect();
        Model::Nodal(NodalModel { tau, aj_z, aj_w, b: g(1, 3, 4), mu: Gauss::from_i64(mu) })
    }

    fn dims(v: &[(i32, usize)]) -> BTreeMap<i32, usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn period_validation() {
        let zeros = vec![Gauss::zero(); 6];
        let mut bad = [[Gauss::i(), Gauss::one()], [Gauss::zero(), Gauss::i()]];
        let m = |tau| {
            Model::Nodal(NodalModel {
                tau,
                aj_z: zeros.clone(),
                aj_w: zeros.clone(),
                b: Gauss::zero(),
                mu: Gauss::zero(),
            })
        };
        assert!(matches!(m(bad.clone()).validate(0.0), Err(Error::InvalidPeriod(_))));
        bad[0][1] = Gauss::zero();
        bad[1][1] = -Gauss::i();
        assert!(matches!(m(bad).validate(0.0), Err(Error::InvalidPeriod(_))));
        let short = Model::Nodal(NodalModel {
            tau: identity_tau(),
            aj_z: vec![],
            aj_w: zeros,
            b: Gauss::zero(),
            mu: Gauss::zero(),
        });
        assert!(matches!(short.validate(0.0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn nodal_h1() {
        let model = nodal(vec![Gauss::zero(); 6], vec![Gauss::zero(); 6], Gauss::zero(), 0);
        let (h1, n) = build_h1_lim(&model, 0.0).unwrap();
        assert_eq!(h1.weight_dims(), dims(&[(0, 1), (1, 4), (2, 1)]));
        assert_eq!(n.matrix().rank(0.0), 1);
        assert_eq!(n.order(), 2);
        assert!(h1.is_split());
        let m = weight_filtration(&n, 1).unwrap();
        let image = Subspace::full(n.space()).image(n.matrix(), n.space());
        let kernel = Subspace::span(n.space(), &n.matrix().kernel(0.0)).unwrap();
        assert!(m.get(0).same_as(&image));
        assert!(m.get(1).same_as(&kernel));
        assert!(m.get(2).is_full());
        assert!(m.same_as(h1.weight()));
    }

    #[test]
    fn h3_graded_dims() {
        let (h3, n3) = build_h3_lim(&generic_nodal(0), 0.0).unwrap();
        assert_eq!(h3.weight_dims(), dims(&[(-2, 6), (-1, 8), (0, 6)]));
        assert!(n3.matrix().pow(2).is_zero(0.0));
        assert!(weight_filtration(&n3, -1).unwrap().same_as(h3.weight()));
    }

    fn reducible() -> Model<Gauss> {
        Model::Reducible(ReducibleModel {
            tau1: g(1, 3, 2),
            tau2: [[g(0, 2, 1), g(1, 1, 2)], [g(1, 1, 2), g(1, 3, 1)]],
            aj_z: (0..20).map(|k| g(k % 5 - 2, k % 3, 3)).collect(),
            aj_w: (0..20).map(|k| g(1 - k % 4, k % 2, 5)).collect(),
            b: g(-2, 5, 3),
        })
    }

    #[test]
    fn reducible_h1_and_h3() {
        let (h1, n1) = build_h1_lim(&reducible(), 0.0).unwrap();
        assert_eq!(h1.weight_dims(), dims(&[(1, 6)]));
        assert!(n1.is_zero());
        // C₁ carries the third pair, so its Hodge piece is spanned by a vector on {α₃*, β₃*}.
        let c1 = Subspace::coordinate(h1.space(), &[ALPHA3, BETA3]);
        assert_eq!(h1.hodge().get(1).intersect(&c1).unwrap().dim(), 1);
        let (h3, _) = build_h3_lim(&reducible(), 0.0).unwrap();
        assert_eq!(h3.weight_dims(), dims(&[(-1, 20)]));
        let mut by_c1 = BTreeMap::new();
        for w in wedge_indices(6, 3) {
            *by_c1.entry(w.iter().filter(|&&i| i == ALPHA3 || i == BETA3).count()).or_insert(0) += 1;
        }
        assert_eq!(by_c1, [(0, 4), (1, 12), (2, 4)].into_iter().collect());
    }

    #[test]
    fn split_parameters_give_zero() {
        let model = nodal(vec![Gauss::zero(); 6], vec![Gauss::zero(); 6], Gauss::zero(), 0);
        let report = verify_main_theorem(&model, 0.0).unwrap();
        assert_eq!(report.limit_height, 0.0);
        assert_eq!(report.boundary_height, 0.0);
        assert_eq!(report.gap, 0.0);
        assert!(build_v_lim(&model, 0.0).unwrap().limit_mhs().is_split());
    }

    #[test]
    fn nodal_main_theorem() {
        for mu in [0, 2] {
            let report = verify_main_theorem(&generic_nodal(mu), 0.0).unwrap();
            assert_eq!(report.m_dims, dims(&[(-2, 7), (-1, 8), (0, 7)]));
            assert_eq!(report.q_dims, dims(&[(-2, 7), (-1, 8), (0, 1)]));
            assert_eq!(report.boundary_dims, dims(&[(-2, 1), (-1, 8), (0, 1)]));
            assert_eq!(report.delta_m0_norm, 0.0);
            assert_eq!(report.restriction_distance, 0.0);
            assert!((report.boundary_height - 2.0 * PI * 0.75).abs() < 1e-12);
            assert!(report.gap < 1e-12, "{report:?}");
        }
    }

    #[test]
    fn nodal_main_theorem_float() {
        for mu in [0, 2] {
            let exact = verify_main_theorem(&generic_nodal(mu), 0.0).unwrap();
            let float = verify_main_theorem(&generic_nodal(mu).cast::<Complex64>(), 1e-9).unwrap();
            assert_eq!(float.m_dims, exact.m_dims);
            assert_eq!(float.boundary_dims, exact.boundary_dims);
            assert!(float.passed(1e-8), "{float:?}");
            assert!((float.limit_height - exact.limit_height).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_class_and_generators() {
        let model = generic_nodal(0);
        let boundary = build_boundary(&model, 0.0).unwrap();
        let class = boundary.biextension.extension_class().unwrap();
        assert!(class.equivalent(&crate::biextension::ExtensionClass::new(model.b().clone()), 0.0));
        assert_eq!(boundary.projection.apply(&boundary.one), boundary.biextension.one());
        assert_eq!(boundary.projection.apply(&boundary.one_dual), boundary.biextension.one_dual());
        assert!(boundary.subspace.contains(&unit::<Gauss>(V_DIM, 0)));
        let zero_b = nodal(vec![g(1, 1, 1); 6], vec![g(2, -1, 3); 6], Gauss::zero(), 0);
        assert_eq!(build_boundary(&zero_b, 0.0).unwrap().biextension.height().unwrap(), 0.0);
    }

    #[test]
    fn reducible_main_theorem() {
        let model = reducible();
        let orbit = build_v_lim(&model, 0.0).unwrap();
        assert!(orbit.m().same_as(orbit.weight()));
        let report = verify_main_theorem(&model, 0.0).unwrap();
        assert_eq!(report.boundary_dims, dims(&[(-2, 1), (-1, 20), (0, 1)]));
        assert_eq!(report.gap, 0.0);
        let scan = orbit.height_scan(0.3, &[1e-1, 1e-3, 1e-6]).unwrap();
        let hs: Vec<f64> = scan.records.iter().map(|r| *r.h.as_ref().unwrap()).collect();
        assert!(hs.iter().all(|h| (h - report.limit_height).abs() < 1e-12));
    }
}
