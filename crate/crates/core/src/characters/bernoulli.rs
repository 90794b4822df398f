use super::{CharValue, CyclotomicElement, DirichletCharacter};
use crate::arithmetic::gcd;
use crate::error::{Error, Result};

// Exponent k with chi(x) = zeta_n^k, n = order(chi).
fn exponent_in(value: CharValue, n: u64) -> Option<u64> {
    value.root().map(|r| r.numerator() * (n / r.denominator()))
}

/// `B_{1,chi} = (1/c) sum_{0 <= x < c} x chi(x)` over the conductor `c`, as
/// an element of `Q(zeta_n)` with `n` the order of `chi`.
pub fn bernoulli_b1(chi: &DirichletCharacter) -> Result<CyclotomicElement> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let n = chi.order();
    let c = chi.conductor();
    let mut raw = vec![0i128; n as usize];
    for x in 1..c {
        if let Some(k) = exponent_in(chi.evaluate_primitive(x), n) {
            raw[k as usize] += x as i128;
        }
    }
    Ok(CyclotomicElement::from_power_sums(n, &raw, c as i128))
}

/// Both sides of the identity
/// `(1/m) sum_{x unit} x chi(x) = B_{1,chi} prod_{l | m, l not | c} (1 - chi(l))`,
/// with `chi(l)` read through the primitive character.
pub fn ber_identity_sides(
    chi: &DirichletCharacter,
) -> Result<(CyclotomicElement, CyclotomicElement)> {
    let b1 = bernoulli_b1(chi)?;
    let n = chi.order();
    let m = chi.modulus();
    let mut raw = vec![0i128; n as usize];
    for x in (1..m).filter(|&x| gcd(x, m) == 1) {
        let k = exponent_in(chi.evaluate(x), n).expect("unit");
        raw[k as usize] += x as i128;
    }
    let lhs = CyclotomicElement::from_power_sums(n, &raw, m as i128);

    let c = chi.conductor();
    let one = CyclotomicElement::from_int(n, 1);
    let mut rhs = b1;
    for l in chi
        .group()
        .factorization()
        .primes()
        .filter(|&l| !c.is_multiple_of(l))
    {
        let k = exponent_in(chi.evaluate_primitive(l), n).expect("coprime to conductor");
        let factor = one.sub(&CyclotomicElement::root(n, k))?;
        rhs = rhs.mul(&factor)?;
    }
    Ok((lhs, rhs))
}

pub fn verify_ber_identity(chi: &DirichletCharacter) -> Result<bool> {
    let (lhs, rhs) = ber_identity_sides(chi)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::UnitGroup;
    use crate::characters::{annihilator_of, character_group, characters_of};
    use std::sync::Arc;

    #[test]
    fn b1_examples() {
        let odd4 = &character_group(4).unwrap()[1];
        assert_eq!(
            bernoulli_b1(odd4).unwrap(),
            CyclotomicElement::from_int(2, -1).scale(1, 2)
        );
        let odd3 = &character_group(3).unwrap()[1];
        assert_eq!(
            bernoulli_b1(odd3).unwrap(),
            CyclotomicElement::from_int(2, -1).scale(1, 3)
        );
        assert!(matches!(
            bernoulli_b1(&character_group(5).unwrap()[0]),
            Err(Error::PrincipalCharacter)
        ));
        for m in 3..=60u64 {
            for chi in character_group(m).unwrap() {
                if !chi.is_principal() && !chi.is_odd() {
                    assert!(bernoulli_b1(&chi).unwrap().is_zero(), "m={m} {chi:?}");
                }
            }
        }
    }

    #[test]
    fn odd_b1_never_vanishes() {
        for m in 3..=60u64 {
            for chi in character_group(m)
                .unwrap()
                .into_iter()
                .filter(|c| c.is_odd())
            {
                assert!(!bernoulli_b1(&chi).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn identity_examples() {
        let odd4 = &character_group(4).unwrap()[1];
        let (l, r) = ber_identity_sides(odd4).unwrap();
        assert_eq!(l, CyclotomicElement::from_int(2, -1).scale(1, 2));
        assert_eq!(l, r);

        let g20 = Arc::new(UnitGroup::new(20).unwrap());
        let lifted = characters_of(&g20)
            .into_iter()
            .find(|c| c.conductor() == 4)
            .unwrap();
        let (l, r) = ber_identity_sides(&lifted).unwrap();
        assert!(l.is_zero() && r.is_zero());

        let g6 = Arc::new(UnitGroup::new(6).unwrap());
        let quad3 = annihilator_of(&g6, &[1]).unwrap();
        assert_eq!(quad3.conductor(), 3);
        let (l, r) = ber_identity_sides(&quad3).unwrap();
        // -1/3 * (1 - (-1))
        assert_eq!(l, CyclotomicElement::from_int(2, -2).scale(1, 3));
        assert_eq!(l, r);
    }

    #[test]
    fn identity_holds_up_to_60() {
        for m in 3..=60u64 {
            for chi in character_group(m)
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_principal())
            {
                assert!(verify_ber_identity(&chi).unwrap(), "m={m} {chi:?}");
            }
        }
    }
}
