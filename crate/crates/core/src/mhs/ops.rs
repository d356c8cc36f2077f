use crate::error::{Error, Result};
use crate::linalg::{Direction, Filtration, Matrix, Space, Subspace};
use crate::mhs::MixedHodgeStructure;
use crate::scalar::Scalar;

/// A verified morphism of mixed Hodge structures.
#[derive(Clone, Debug)]
pub struct Morphism<S> {
    pub matrix: Matrix<S>,
    /// Max-entry size of f∘δ_A − δ_B∘f.
    pub delta_distance: f64,
}

/// Checks compatibility with W and F, strictness on the image, and the
/// commutation f∘δ_A = δ_B∘f.
pub fn check_morphism<S: Scalar>(
    f: &Matrix<S>,
    a: &MixedHodgeStructure<S>,
    b: &MixedHodgeStructure<S>,
) -> Result<Morphism<S>> {
    if f.cols() != a.dim() || f.rows() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: f.cols() });
    }
    if !(0..f.rows()).all(|i| f.row(i).iter().all(|x| x.is_real(a.eps()))) {
        return Err(Error::Precondition("morphism matrix is not rational".into()));
    }
    let image = Subspace::full(a.space()).image(f, b.space());
    check_filtration("W", f, a.weight(), b.weight(), &image, b.space())?;
    check_filtration("F", f, a.hodge(), b.hodge(), &image, b.space())?;

    let da = a.delta()?.matrix;
    let db = b.delta()?.matrix;
    let lhs = f * &da;
    let rhs = &db * f;
    let distance = lhs.distance(&rhs);
    let ok = if S::EXACT {
        lhs == rhs
    } else {
        distance <= 1e3 * a.eps() * (1.0 + f.max_abs()) * (1.0 + da.max_abs() + db.max_abs())
    };
    if !ok {
        return Err(Error::DeltaCommutation { distance });
    }
    Ok(Morphism { matrix: f.clone(), delta_distance: distance })
}

fn check_filtration<S: Scalar>(
    name: &'static str,
    f: &Matrix<S>,
    src: &Filtration<S>,
    dst: &Filtration<S>,
    image: &Subspace<S>,
    target: Space,
) -> Result<()> {
    let (a0, a1) = src.support();
    let (b0, b1) = dst.support();
    for k in a0.min(b0) - 1..=a1.max(b1) + 1 {
        let pushed = src.get(k).image(f, target);
        if !pushed.is_subspace_of(dst.get(k)) {
            return Err(Error::NotMorphism { filtration: name, index: k });
        }
        if !image.intersect(dst.get(k))?.same_as(&pushed) {
            return Err(Error::NotMorphism { filtration: name, index: k });
        }
    }
    Ok(())
}

/// A ⊕ B with A in the leading coordinates.
pub fn direct_sum<S: Scalar>(a: &MixedHodgeStructure<S>, b: &MixedHodgeStructure<S>) -> Result<MixedHodgeStructure<S>> {
    let space = Space::with_eps(a.dim() + b.dim(), a.eps().max(b.eps()));
    let join = |x: &Filtration<S>, y: &Filtration<S>, dir: Direction| -> Result<Filtration<S>> {
        let (x0, x1) = x.support();
        let (y0, y1) = y.support();
        let (lo, hi) = (x0.min(y0), x1.max(y1));
        let steps = (lo..=hi)
            .map(|k| {
                let mut gens: Vec<Vec<S>> = x
                    .get(k)
                    .basis()
                    .iter()
                    .map(|v| v.iter().cloned().chain(std::iter::repeat_n(S::zero(), b.dim())).collect())
                    .collect();
                gens.extend(
                    y.get(k)
                        .basis()
                        .iter()
                        .map(|v| std::iter::repeat_n(S::zero(), a.dim()).chain(v.iter().cloned()).collect()),
                );
                Subspace::span(space, &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        Filtration::new(space, dir, lo, steps)
    };
    let w = join(a.weight(), b.weight(), Direction::Increasing)?;
    let f = join(a.hodge(), b.hodge(), Direction::Decreasing)?;
    MixedHodgeStructure::new(w, f)
}
