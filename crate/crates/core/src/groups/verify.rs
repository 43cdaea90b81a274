//! Machine checks relating automorphism towers, normalizer towers and the
//! projective groups.

use serde::Serialize;

use crate::error::{Error, Result};

use super::autgroup::{aut_group, find_isomorphism, is_isomorphism, DEFAULT_AUT_CAP};
use super::group::{closure, PermGroup, DEFAULT_CLOSURE_CAP};
use super::perm::Perm;
use super::projective::ProjectiveLine;
use super::semidirect::conjugation_action;
use super::tower::{automorphism_tower, normalizer_tower, DEFAULT_MAX_STEPS};

/// Which group between `Inn(S)` and `Aut(S)` to start from.
#[derive(Clone, Debug)]
pub enum TowerBase {
    Inner,
    Full,
    /// Generators given as permutations of `S`'s element indices.
    Custom(Vec<Perm>),
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleTowerReport {
    pub aut_tower_orders: Vec<usize>,
    pub normalizer_tower_orders: Vec<usize>,
    pub aut_tau: usize,
    pub normalizer_tau: usize,
    /// Per stage: an explicit isomorphism between the two stage groups was
    /// found and checked.
    pub stage_isomorphic: Vec<bool>,
    pub pass: bool,
}

/// Compute the automorphism tower of `G` and the normalizer tower of `G`
/// inside `Aut(S)` and compare them stage by stage.
pub fn verify_simple_tower(s: &PermGroup, base: &TowerBase) -> Result<SimpleTowerReport> {
    if !s.is_simple() || s.is_abelian() {
        return Err(Error::NotSubgroup("S must be simple and non-abelian".into()));
    }
    let a = aut_group(s, DEFAULT_AUT_CAP)?;
    let inn = a.inner_group();
    let g = match base {
        TowerBase::Inner => inn.clone(),
        TowerBase::Full => a.aut.clone(),
        TowerBase::Custom(gens) => closure(s.order(), gens, DEFAULT_CLOSURE_CAP)?,
    };
    if !inn.is_subgroup_of(&g) || !g.is_subgroup_of(&a.aut) {
        return Err(Error::NotSubgroup("need Inn(S) <= G <= Aut(S)".into()));
    }
    let nt = normalizer_tower(&a.aut, &g, DEFAULT_MAX_STEPS)?;
    let at = automorphism_tower(&g, DEFAULT_MAX_STEPS, DEFAULT_AUT_CAP.max(a.aut.order()))?;
    let stages = nt.tau.max(at.tau) + 1;
    let pick = |chain: &[PermGroup], i: usize| chain[i.min(chain.len() - 1)].clone();
    let mut stage_isomorphic = Vec::with_capacity(stages);
    for i in 0..stages {
        let x = pick(&at.chain, i);
        let y = pick(&nt.chain, i);
        let ok = match find_isomorphism(&x, &y)? {
            Some(m) => is_isomorphism(&x, &y, &m),
            None => false,
        };
        stage_isomorphic.push(ok);
    }
    let pass = nt.tau == at.tau && stage_isomorphic.iter().all(|&b| b);
    Ok(SimpleTowerReport {
        aut_tower_orders: at.stage_orders(),
        normalizer_tower_orders: nt.stage_orders(),
        aut_tau: at.tau,
        normalizer_tau: nt.tau,
        stage_isomorphic,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VanDerWaerdenReport {
    pub q: u64,
    pub aut_psl_order: usize,
    pub pgammal_order: usize,
    /// Centralizer of `PSL` in `PΓL` is trivial.
    pub conjugation_injective: bool,
    /// Conjugation images generate exactly `Aut(PSL)`.
    pub conjugation_onto: bool,
    pub pass: bool,
}

/// `Aut(PSL(2,q)) ≅ PΓL(2,q)` through the conjugation representation.
pub fn verify_van_der_waerden(q: u64, aut_cap: usize) -> Result<VanDerWaerdenReport> {
    let line = ProjectiveLine::new(q)?;
    let psl = line.psl();
    let pgl_semi = line.pgammal();
    let a = aut_group(&psl, aut_cap)?;
    let conjugation_injective = pgl_semi.centralizer(psl.generators()).order() == 1;
    let images: Vec<Perm> = pgl_semi
        .generators()
        .iter()
        .map(|g| conjugation_action(&psl, g))
        .collect::<Result<_>>()?;
    let in_aut = images.iter().all(|p| a.aut.contains(p));
    let span = closure(psl.order(), &images, DEFAULT_CLOSURE_CAP)?;
    let conjugation_onto = in_aut && span == a.aut;
    let pass = conjugation_injective
        && conjugation_onto
        && a.aut.order() == pgl_semi.order();
    Ok(VanDerWaerdenReport {
        q,
        aut_psl_order: a.aut.order(),
        pgammal_order: pgl_semi.order(),
        conjugation_injective,
        conjugation_onto,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidirectTowerReport {
    pub q: u64,
    /// `H = <Frob^k>`; `None` for the trivial subgroup.
    pub frobenius_power: Option<u32>,
    pub g_centerless: bool,
    pub pgammal_tower_orders: Vec<usize>,
    pub field_tower_orders: Vec<usize>,
    pub tau: usize,
    /// Per stage: `nor^a_{PΓL}(G) = PGL ⋊ nor^a_{Aut(K)}(H)` as element sets.
    pub stage_equal: Vec<bool>,
    pub pass: bool,
}

/// Check `nor^a_{PΓL(2,q)}(PGL(2,q) ⋊ H) = PGL(2,q) ⋊ nor^a_{Aut(F_q)}(H)`
/// for every stage up to the fixpoint.
pub fn verify_semidirect_tower(q: u64, frobenius_power: Option<u32>) -> Result<SemidirectTowerReport> {
    let line = ProjectiveLine::new(q)?;
    let pgammal = line.pgammal();
    let autk = line.field_automorphisms();
    let hgens: Vec<Perm> = frobenius_power
        .map(|k| vec![line.frobenius_power(k)])
        .unwrap_or_default();
    let h = closure(line.num_points(), &hgens, DEFAULT_CLOSURE_CAP)?;
    let pgl_gens = line.pgl_generators();
    let with_pgl = |extra: &[Perm]| -> Result<PermGroup> {
        let mut gens = pgl_gens.clone();
        gens.extend_from_slice(extra);
        closure(line.num_points(), &gens, DEFAULT_CLOSURE_CAP)
    };
    let g = with_pgl(&hgens)?;
    let g_centerless = g.is_centerless();
    let big = normalizer_tower(&pgammal, &g, DEFAULT_MAX_STEPS)?;
    let small = normalizer_tower(&autk, &h, DEFAULT_MAX_STEPS)?;
    let stages = big.tau.max(small.tau) + 1;
    let mut stage_equal = Vec::with_capacity(stages);
    for i in 0..stages {
        let lhs = &big.chain[i.min(big.chain.len() - 1)];
        let hs = &small.chain[i.min(small.chain.len() - 1)];
        let rhs = with_pgl(hs.generators())?;
        stage_equal.push(lhs == &rhs);
    }
    let pass = g_centerless && big.tau == small.tau && stage_equal.iter().all(|&b| b);
    Ok(SemidirectTowerReport {
        q,
        frobenius_power,
        g_centerless,
        pgammal_tower_orders: big.stage_orders(),
        field_tower_orders: small.stage_orders(),
        tau: big.tau,
        stage_equal,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::projective::psl2;

    #[test]
    fn a5_towers_agree() {
        let a5 = PermGroup::alternating(5);
        let r = verify_simple_tower(&a5, &TowerBase::Inner).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.aut_tower_orders, vec![60, 120]);
        assert_eq!(r.normalizer_tower_orders, vec![60, 120]);
        let r = verify_simple_tower(&a5, &TowerBase::Full).unwrap();
        assert!(r.pass);
        assert_eq!(r.aut_tau, 0);
        assert_eq!(r.normalizer_tau, 0);
    }

    #[test]
    fn psl27_tower() {
        let s = psl2(7).unwrap();
        let r = verify_simple_tower(&s, &TowerBase::Inner).unwrap();
        assert!(r.pass);
        assert_eq!(r.aut_tau, 1);
        assert_eq!(r.aut_tower_orders, vec![168, 336]);
    }

    #[test]
    fn van_der_waerden_small() {
        let r = verify_van_der_waerden(4, DEFAULT_AUT_CAP).unwrap();
        assert!(r.pass);
        assert_eq!(r.aut_psl_order, 120);
        let r = verify_van_der_waerden(5, DEFAULT_AUT_CAP).unwrap();
        assert!(r.pass);
        assert_eq!(r.aut_psl_order, 120);
    }

    #[test]
    fn semidirect_towers() {
        let r = verify_semidirect_tower(4, None).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.tau, 1);
        assert_eq!(*r.pgammal_tower_orders.last().unwrap(), 120);
        let r = verify_semidirect_tower(9, Some(1)).unwrap();
        assert!(r.pass);
        assert!(r.tau <= 1);
        let r = verify_semidirect_tower(8, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.tau, 1);
        assert_eq!(r.pgammal_tower_orders, vec![504, 1512]);
    }
}
