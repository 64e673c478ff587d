use crate::algebra::Field;
use crate::group::{FiniteSubset, GroupElement, GroupSpec, Letter};
use crate::shiftspace::Pattern;

use super::ExampleError;

/// The region on which [`prop81_preimage`] reproduces its input: the ball the
/// target lives on.
pub fn prop81_valid_region(target: &FiniteSubset) -> FiniteSubset {
    target.clone()
}

/// Builds `x` on `ball(n+1)` with `τ(x) = z` on `ball(n)` for the surjective,
/// non-pre-injective automaton on `F₂`.
///
/// `x` is defined by induction on word length with `x(1) = 0`. For a word
/// `u = ks` of length ≥ 1 the neighbour `us⁻¹ = k` is the parent and the
/// other three are children, so `z(u)` can be met by choosing child values:
///
/// | `s`        | child `us'`            | `x(us')`                 |
/// |------------|------------------------|--------------------------|
/// | `a` or `A` | `s' = s`               | `(z₁(u) − x₁(k), 0)`     |
/// | `a` or `A` | `s' = b`               | `(z₂(u), 0)`             |
/// | `b` or `B` | `s' = a`               | `(z₁(u), 0)`             |
/// | `b` or `B` | `s' = s`               | `(z₂(u) − x₁(k), 0)`     |
/// | otherwise  |                        | `(0, 0)`                 |
///
/// At the identity the children are `a` and `b`, taking `z₁(1)` and `z₂(1)`.
pub fn prop81_preimage<F: Field>(z: &Pattern<F>) -> Result<Pattern<F>, ExampleError> {
    let group = GroupSpec::f2();
    let support = z.support();
    let radius = support.iter().map(GroupElement::length).max().unwrap_or(0);
    if z.alphabet_dim() != 2 || support.iter().any(|g| !group.contains(g)) || *support != group.ball(radius) {
        return Err(ExampleError::NotABall(support.to_string()));
    }
    let f = z.field().clone();
    let grown = group.ball(radius + 1);
    let mut x = Pattern::zero(f.clone(), grown.clone(), 2);
    let a = Letter::new(0, false);
    let b = Letter::new(1, false);

    let first = |p: &Pattern<F>, g: &GroupElement| p.get(g).expect("inside the ball")[0].clone();
    let second = |p: &Pattern<F>, g: &GroupElement| p.get(g).expect("inside the ball")[1].clone();

    // canonical order is length first, so parents are filled before children
    for w in grown.iter() {
        let letters = w.letters().expect("free word");
        let Some((&last, prefix)) = letters.split_last() else { continue };
        let u = GroupElement::Free(prefix.to_vec());
        let value = match prefix.split_last() {
            None if last == a => first(z, &u),
            None if last == b => second(z, &u),
            None => f.zero(),
            Some((&s, k)) => {
                let k = GroupElement::Free(k.to_vec());
                let on_a = s.generator == 0;
                if on_a && last == s {
                    f.sub(&first(z, &u), &first(&x, &k))
                } else if on_a && last == b {
                    second(z, &u)
                } else if !on_a && last == a {
                    first(z, &u)
                } else if !on_a && last == s {
                    f.sub(&second(z, &u), &first(&x, &k))
                } else {
                    f.zero()
                }
            }
        };
        x.set(w, vec![value, f.zero()])?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::examples::prop81_automaton;

    #[test]
    fn reproduces_a_target_on_ball_two() {
        let f = PrimeField::new(3).unwrap();
        let ball = GroupSpec::f2().ball(2);
        let values = (0..ball.len() * 2).map(|i| (i as u64 * 7 + 1) % 3).collect();
        let z = Pattern::new(f, ball.clone(), 2, values).unwrap();
        let x = prop81_preimage(&z).unwrap();
        let tau = prop81_automaton(f).automaton;
        assert_eq!(tau.apply_window(&prop81_valid_region(&ball), &x).unwrap(), z);
    }

    #[test]
    fn zero_maps_to_zero() {
        let f = PrimeField::new(2).unwrap();
        let z = Pattern::zero(f, GroupSpec::f2().ball(1), 2);
        assert!(prop81_preimage(&z).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_balls() {
        let f = PrimeField::new(2).unwrap();
        let z = Pattern::zero(f, FiniteSubset::words(&["", "a"]).unwrap(), 2);
        assert!(matches!(prop81_preimage(&z), Err(ExampleError::NotABall(_))));
    }
}
