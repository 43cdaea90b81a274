use serde::Serialize;

use crate::error::{Error, Result};

use super::autgroup::aut_group;
use super::group::PermGroup;

/// Default iteration bound for both tower engines.
pub const DEFAULT_MAX_STEPS: usize = 10;

/// A computed tower `G^0, G^1, ...`.
///
/// When `stabilized` is set, `chain` ends with the fixpoint repeated, i.e.
/// `chain[tau + 1]` is `G^(tau+1)`, equal to (automorphism tower:
/// canonically isomorphic to) `chain[tau]`.
#[derive(Clone, Debug)]
pub struct TowerReport {
    pub chain: Vec<PermGroup>,
    pub tau: usize,
    pub stabilized: bool,
    /// For automorphism towers: `embeddings[a][i]` is the index in stage
    /// `a + 1` of the inner automorphism induced by element `i` of stage `a`.
    pub embeddings: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct StageJson {
    stage: usize,
    order: usize,
    stabilized: bool,
}

impl TowerReport {
    pub fn orders(&self) -> Vec<usize> {
        self.chain.iter().map(|g| g.order()).collect()
    }

    /// Orders of `G^0 .. G^tau`.
    pub fn stage_orders(&self) -> Vec<usize> {
        self.chain.iter().take(self.tau + 1).map(|g| g.order()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let stages: Vec<StageJson> = self
            .chain
            .iter()
            .enumerate()
            .map(|(i, g)| StageJson {
                stage: i,
                order: g.order(),
                stabilized: self.stabilized && i >= self.tau,
            })
            .collect();
        serde_json::json!({
            "tau": self.tau,
            "stabilized": self.stabilized,
            "stages": stages,
        })
    }
}

/// Iterate `H -> N_G(H)` until it stops growing.
pub fn normalizer_tower(g: &PermGroup, h: &PermGroup, max_steps: usize) -> Result<TowerReport> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("tower base is not inside the ambient group".into()));
    }
    let mut chain = vec![h.clone()];
    for step in 0..max_steps {
        let cur = chain.last().unwrap();
        let next = g.normalizer(cur)?;
        let done = &next == cur;
        chain.push(next);
        if done {
            return Ok(TowerReport {
                chain,
                tau: step,
                stabilized: true,
                embeddings: Vec::new(),
            });
        }
    }
    let tau = chain.len() - 1;
    Ok(TowerReport {
        chain,
        tau,
        stabilized: false,
        embeddings: Vec::new(),
    })
}

/// Iterate `G -> Aut(G)` through the inner embedding until `Aut = Inn`.
pub fn automorphism_tower(g: &PermGroup, max_steps: usize, cap: usize) -> Result<TowerReport> {
    if !g.is_centerless() {
        return Err(Error::NotCenterless);
    }
    let mut chain = vec![g.clone()];
    let mut embeddings = Vec::new();
    for step in 0..=max_steps {
        let cur = chain.last().unwrap();
        let a = aut_group(cur, cap)?;
        let emb: Vec<u32> = a
            .inner
            .iter()
            .map(|p| a.aut.index_of(p).expect("inner automorphisms lie in Aut") as u32)
            .collect();
        let complete = a.is_complete();
        embeddings.push(emb);
        chain.push(a.aut);
        if complete {
            return Ok(TowerReport {
                chain,
                tau: step,
                stabilized: true,
                embeddings,
            });
        }
        if step == max_steps {
            break;
        }
    }
    let tau = chain.len() - 1;
    Ok(TowerReport {
        chain,
        tau,
        stabilized: false,
        embeddings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::autgroup::DEFAULT_AUT_CAP;
    use crate::groups::perm::Perm;

    #[test]
    fn normalizer_tower_s4() {
        let s4 = PermGroup::symmetric(4);
        let h = s4.subgroup(&[Perm::parse_cycles(4, "(0 1)").unwrap()]).unwrap();
        let t = normalizer_tower(&s4, &h, DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(t.tau, 2);
        assert_eq!(t.orders(), vec![2, 4, 8, 8]);
        assert!(t.stabilized);
    }

    #[test]
    fn normalizer_tower_trivial_cases() {
        let s3 = PermGroup::symmetric(3);
        let t = normalizer_tower(&s3, &s3, 10).unwrap();
        assert_eq!(t.tau, 0);
        let a3 = PermGroup::alternating(3);
        let t = normalizer_tower(&s3, &a3, 10).unwrap();
        assert_eq!(t.tau, 1);
        assert_eq!(t.chain[1], s3);
    }

    #[test]
    fn automorphism_towers() {
        let t = automorphism_tower(&PermGroup::symmetric(3), 10, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(t.tau, 0);
        let t = automorphism_tower(&PermGroup::alternating(5), 10, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(t.tau, 1);
        assert_eq!(t.stage_orders(), vec![60, 120]);
        let t = automorphism_tower(&PermGroup::symmetric(5), 10, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(t.tau, 0);
        assert!(matches!(
            automorphism_tower(&PermGroup::cyclic(3), 10, DEFAULT_AUT_CAP),
            Err(Error::NotCenterless)
        ));
    }
}
