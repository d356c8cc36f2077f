use num_rational::BigRational;

use super::*;
use crate::scalar::Gauss;
use crate::Complex64;

fn q(n: i64, d: i64) -> Gauss {
    Gauss::from_ratio(n, d)
}

fn g(re: (i64, i64), im: (i64, i64)) -> Gauss {
    Gauss::new(BigRational::new(re.0.into(), re.1.into()), BigRational::new(im.0.into(), im.1.into()))
}

fn e<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    Space::new(n).basis_vector(i)
}

/// ℚ(0) ⊕ ℚ(1) with F⁰ = span(e₁ + z·e₂).
fn two_step<S: Scalar>(z: S) -> MixedHodgeStructure<S> {
    let s = Space::new(2);
    MixedHodgeStructure::from_generators(
        s,
        &[(-2, vec![e(2, 1)]), (0, vec![e(2, 0), e(2, 1)])],
        &[(-1, vec![e(2, 0), e(2, 1)]), (0, vec![vec![S::one(), z]])],
    )
    .unwrap()
}

#[test]
fn tate_structure_has_single_piece() {
    for a in -2..=2 {
        let t = MixedHodgeStructure::<Gauss>::tate(a, 0.0);
        assert_eq!(t.hodge_numbers(), BTreeMap::from([((-a, -a), 1)]));
        assert!(t.is_split());
    }
}

#[test]
fn two_step_structure_bigrading() {
    let m = two_step(g((1, 3), (2, 5)));
    assert_eq!(m.hodge_numbers(), BTreeMap::from([((-1, -1), 1), ((0, 0), 1)]));
    assert_eq!(m.splitting().piece(0, 0).unwrap(), m.hodge().get(0));
    assert_eq!(m.splitting().piece(-1, -1).unwrap(), m.weight().get(-2));
    assert!(m.conjugation_congruence());
    assert!(!m.is_split());
}

#[test]
fn over_full_hodge_filtration_is_rejected() {
    let s = Space::new(2);
    let all = vec![e::<Gauss>(2, 0), e(2, 1)];
    let r = MixedHodgeStructure::from_generators(s, &[(0, all.clone())], &[(1, all)]);
    assert!(matches!(r, Err(Error::NotMhs { .. })));
}

#[test]
fn genus_one_weight_one_bigrading() {
    let tau = g((1, 2), (3, 2));
    let s = Space::new(2);
    let f1 = vec![Gauss::one(), tau];
    let m = MixedHodgeStructure::from_generators(
        s,
        &[(1, vec![e(2, 0), e(2, 1)])],
        &[(0, vec![e(2, 0), e(2, 1)]), (1, vec![f1])],
    )
    .unwrap();
    assert_eq!(m.splitting().piece(1, 0).unwrap(), m.hodge().get(1));
    assert_eq!(m.splitting().piece(0, 1).unwrap(), &m.hodge().get(1).conj());
    assert!(m.is_split());
    assert!(m.delta().unwrap().matrix.is_zero(0.0));
}

#[test]
fn real_period_is_not_a_weight_one_structure() {
    let s = Space::new(2);
    let f1 = vec![Gauss::one(), q(3, 1)];
    let r = MixedHodgeStructure::from_generators(
        s,
        &[(1, vec![e(2, 0), e(2, 1)])],
        &[(0, vec![e(2, 0), e(2, 1)]), (1, vec![f1])],
    );
    assert!(matches!(r, Err(Error::NotMhs { a: 1, b: 0, .. })), "{r:?}");
}

/// Oracle: for the two-step structure, Y = [[0,0],[2z,−2]] and δ = c·E₂₁ with
/// Ad(e^{−2iδ})Y = Y − 4ic·E₂₁, so conj(Y) = Ad(e^{−2iδ})Y forces c = Im z.
#[test]
fn two_step_delta_matches_hand_solution() {
    let z = g((-7, 4), (5, 3));
    let m = two_step(z.clone());
    let y_hand = Matrix::from_rows(&[vec![q(0, 1), q(0, 1)], vec![z.clone() * q(2, 1), q(-2, 1)]]);
    assert_eq!(m.y(), &y_hand);
    let c = z.im();
    let delta_hand = Matrix::from_rows(&[vec![q(0, 1), q(0, 1)], vec![c.clone(), q(0, 1)]]);
    let two_i = Gauss::i() * q(2, 1);
    let lhs = &(&(&Matrix::identity(2) - &delta_hand.scale(&two_i)) * &y_hand)
        * &(&Matrix::identity(2) + &delta_hand.scale(&two_i));
    assert_eq!(lhs, y_hand.conj());

    let d = m.delta().unwrap();
    assert_eq!(d.matrix, delta_hand);
    assert_eq!(d.residual, 0.0);
    assert_eq!(d.components.keys().copied().collect::<Vec<_>>(), vec![2]);
    assert!(m.split_over_r(&d).unwrap().is_split());
}

#[test]
fn two_step_delta_float() {
    let z = Complex64::new(0.3, -1.7);
    let m = two_step(z);
    let d = m.delta().unwrap();
    assert!((d.matrix[(1, 0)] - Complex64::new(-1.7, 0.0)).norm() < 1e-14);
    assert!(d.residual < 1e-12);
}

#[test]
fn split_structures_have_zero_delta() {
    let m = two_step(q(5, 7));
    assert!(m.is_split());
    assert!(m.delta().unwrap().matrix.is_zero(0.0));
}

#[test]
fn direct_sum_delta_is_block_diagonal() {
    let a = two_step(g((1, 1), (1, 2)));
    let b = two_step(g((0, 1), (-3, 1)));
    let s = direct_sum(&a, &b).unwrap();
    let d = s.delta().unwrap().matrix;
    let da = a.delta().unwrap().matrix;
    let db = b.delta().unwrap().matrix;
    for i in 0..4 {
        for j in 0..4 {
            let expect = match (i < 2, j < 2) {
                (true, true) => da[(i, j)].clone(),
                (false, false) => db[(i - 2, j - 2)].clone(),
                _ => Gauss::zero(),
            };
            assert_eq!(d[(i, j)], expect);
        }
    }
}

#[test]
fn inclusion_and_graph_maps_are_morphisms() {
    let a = two_step(g((1, 1), (1, 2)));
    let b = two_step(g((2, 1), (-1, 3)));
    let s = direct_sum(&a, &b).unwrap();
    let incl = Matrix::from_fn(4, 2, |i, j| if i == j { q(1, 1) } else { q(0, 1) });
    check_morphism(&incl, &a, &s).unwrap();
    check_morphism(&Matrix::identity(2), &a, &a).unwrap();

    // Graph of f = 0·id shifted: g(x, y) = (x, y + f x) with f = identity between equal structures.
    let c = direct_sum(&a, &a).unwrap();
    let graph = Matrix::from_rows(&[
        vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)],
        vec![q(1, 1), q(0, 1), q(1, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1), q(0, 1), q(1, 1)],
    ]);
    check_morphism(&graph, &c, &c).unwrap();

    // Identity between structures with different periods is not a morphism.
    assert!(matches!(check_morphism(&Matrix::identity(2), &a, &b), Err(Error::NotMorphism { filtration: "F", .. })));
}

#[test]
fn graded_pieces_and_twists() {
    let m = two_step(g((1, 1), (1, 2)));
    let gr0 = m.graded_piece(0).unwrap();
    assert_eq!(gr0.hodge_numbers(), BTreeMap::from([((0, 0), 1)]));
    assert_eq!(m.graded_piece(-1).unwrap().dim(), 0);
    let t = MixedHodgeStructure::<Gauss>::tate(1, 0.0);
    assert_eq!(t.graded_piece(-2).unwrap().hodge_numbers(), t.hodge_numbers());
    assert_eq!(t.graded_piece(0).unwrap().dim(), 0);
    let q0 = MixedHodgeStructure::<Gauss>::tate(0, 0.0);
    assert_eq!(q0.tate_twist(3).hodge_numbers(), MixedHodgeStructure::<Gauss>::tate(3, 0.0).hodge_numbers());
}

#[test]
fn dual_negates_types() {
    let m = two_step(g((1, 1), (1, 2)));
    let d = m.dual();
    assert_eq!(d.hodge_numbers(), BTreeMap::from([((0, 0), 1), ((1, 1), 1)]));
    let dd = d.dual();
    assert!(dd.hodge().same_as(m.hodge()));
    assert!(dd.weight().same_as(m.weight()));
}

#[test]
fn exterior_square_of_genus_two_is_pure() {
    // Period matrix [[i, 1/2],[1/2, 2i]]; F¹ spanned by the rows of (I | τ).
    let s = Space::new(4);
    let rows = vec![vec![q(1, 1), q(0, 1), Gauss::i(), q(1, 2)], vec![q(0, 1), q(1, 1), q(1, 2), Gauss::i() * q(2, 1)]];
    let all: Vec<Vec<Gauss>> = (0..4).map(|i| e(4, i)).collect();
    let h = MixedHodgeStructure::from_generators(s, &[(1, all.clone())], &[(0, all), (1, rows)]).unwrap();
    let l2 = h.exterior_power(2).unwrap();
    assert_eq!(l2.dim(), 6);
    assert_eq!(l2.weight_dims(), BTreeMap::from([(2, 6)]));
    assert_eq!(l2.hodge_numbers(), BTreeMap::from([((0, 2), 1), ((1, 1), 4), ((2, 0), 1)]));
}

#[test]
fn zero_space_is_valid() {
    let z = MixedHodgeStructure::<Gauss>::zero(0.0);
    assert!(z.hodge_numbers().is_empty());
    assert!(z.is_split());
    assert_eq!(z.delta().unwrap().matrix.rows(), 0);
}
