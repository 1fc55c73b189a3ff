use super::coordinates::Coordinates;
use super::scalar::Real;

/// Central-difference gradient of `f` at `x` with step `h`.
///
/// `g[j] = (f(x + h e_j) - f(x - h e_j)) / (2h)`. `x` is left unchanged.
pub fn finite_difference_gradient<E, F>(mut f: F, x: &Coordinates<E>, h: E) -> Coordinates<E>
where
    E: Real,
    F: FnMut(&Coordinates<E>) -> E,
{
    assert!(h > E::zero(), "finite-difference step must be positive");
    let mut probe = x.clone();
    let mut gradient = x.zeros_like();
    let two_h = h + h;
    for j in 0..x.len() {
        let original = x[j];
        probe[j] = original + h;
        let forward = f(&probe);
        probe[j] = original - h;
        let backward = f(&probe);
        probe[j] = original;
        gradient[j] = (forward - backward) / two_h;
    }
    gradient
}

/// Largest relative deviation `|a - b| / max(|a|, |b|, floor)` over all entries.
pub fn max_relative_error<E: Real>(a: &Coordinates<E>, b: &Coordinates<E>, floor: E) -> E {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).fold(E::zero(), |worst, (&p, &q)| {
        let scale = p.abs().max(q.abs()).max(floor);
        worst.max((p - q).abs() / scale)
    })
}
