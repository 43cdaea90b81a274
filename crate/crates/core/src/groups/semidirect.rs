use crate::error::{Error, Result};

use super::autgroup::CayleyTable;
use super::group::{closure, PermGroup};
use super::perm::Perm;

/// Automorphism of `n` induced by conjugation with `g` (which must
/// normalize `n`), as a permutation of `n`'s element indices.
pub fn conjugation_action(n: &PermGroup, g: &Perm) -> Result<Perm> {
    let img: Vec<u32> = n
        .elements()
        .iter()
        .map(|x| {
            n.index_of(&x.conjugate_by(g))
                .map(|i| i as u32)
                .ok_or_else(|| Error::NotAnAction("conjugation leaves N".into()))
        })
        .collect::<Result<_>>()?;
    Perm::from_images(img)
}

/// `N ⋊ H` where `action[i]` is the automorphism of `N` (a permutation of
/// `N`'s element indices) assigned to `H.generators()[i]`.
///
/// The product acts faithfully on `N`'s elements (by `x -> n·φ_h(x)`) and
/// on `H`'s points, placed after them.
pub fn semidirect(n: &PermGroup, h: &PermGroup, action: &[Perm]) -> Result<PermGroup> {
    if action.len() != h.generators().len() {
        return Err(Error::NotAnAction(format!(
            "{} automorphisms for {} generators",
            action.len(),
            h.generators().len()
        )));
    }
    let table = CayleyTable::new(n);
    let m = n.order();
    for phi in action {
        if phi.degree() != m {
            return Err(Error::NotAnAction("automorphism has wrong degree".into()));
        }
        for x in 0..m {
            for y in 0..m {
                if phi.apply(table.mul(x, y)) != table.mul(phi.apply(x), phi.apply(y)) {
                    return Err(Error::NotAnAction("map is not an automorphism of N".into()));
                }
            }
        }
    }
    let deg = m + h.degree();
    let lift_h = |phi: &Perm, hp: &Perm| -> Perm {
        let mut img: Vec<u32> = phi.images().to_vec();
        img.extend(hp.images().iter().map(|&i| i + m as u32));
        Perm::from_images(img).unwrap()
    };
    // The assignment extends to a homomorphism iff the lifted generators
    // span a copy of H (no extra kernel on the N-part).
    let lifted: Vec<Perm> = h
        .generators()
        .iter()
        .zip(action)
        .map(|(hp, phi)| lift_h(phi, hp))
        .collect();
    let hcopy = closure(deg, &lifted, h.order() + 1)
        .map_err(|_| Error::NotAnAction("relations of H are not respected".into()))?;
    if hcopy.order() != h.order() {
        return Err(Error::NotAnAction("relations of H are not respected".into()));
    }
    let mut gens = lifted;
    for g in n.generators() {
        let gi = n.index_of(g).unwrap();
        let mut img: Vec<u32> = (0..m).map(|x| table.mul(gi, x) as u32).collect();
        img.extend((0..h.degree()).map(|i| (i + m) as u32));
        gens.push(Perm::from_images(img).unwrap());
    }
    closure(deg, &gens, super::group::DEFAULT_CLOSURE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::autgroup::find_isomorphism;

    #[test]
    fn inverting_action_gives_s3() {
        let c3 = PermGroup::cyclic(3);
        let c2 = PermGroup::cyclic(2);
        let inv = c3.elements().iter().map(|x| c3.index_of(&x.inverse()).unwrap() as u32).collect();
        let g = semidirect(&c3, &c2, &[Perm::from_images(inv).unwrap()]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(find_isomorphism(&g, &PermGroup::symmetric(3)).unwrap().is_some());
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let c3 = PermGroup::cyclic(3);
        let c4 = PermGroup::cyclic(4);
        let id = Perm::identity(3);
        let g = semidirect(&c3, &c4, &[id]).unwrap();
        assert_eq!(g.order(), 12);
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_bad_actions() {
        let c3 = PermGroup::cyclic(3);
        let c2 = PermGroup::cyclic(2);
        // swapping identity with another element is not an automorphism
        let bad = Perm::parse_cycles(3, "(0 1)").unwrap();
        assert!(matches!(
            semidirect(&c3, &c2, &[bad]),
            Err(Error::NotAnAction(_))
        ));
        // inversion is an automorphism but C3 generator has order 3: x -> x^-1
        // assigned to a generator of order 3 violates g^3 = 1
        let c3b = PermGroup::cyclic(3);
        let inv: Vec<u32> = c3.elements().iter().map(|x| c3.index_of(&x.inverse()).unwrap() as u32).collect();
        assert!(matches!(
            semidirect(&c3, &c3b, &[Perm::from_images(inv).unwrap()]),
            Err(Error::NotAnAction(_))
        ));
    }
}
