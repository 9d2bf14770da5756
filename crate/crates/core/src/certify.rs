//! Linear-algebra certificates that do not rely on the classification:
//! exact ranks, the block decomposition `H = ⊕ C_f`, and dimension counts.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::comodules::{helem_rank, ComoduleError, Session};
use crate::groups::{FElem, GroupInterface};
use crate::hopf::{BasisKey, HElem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearCert {
    pub description: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub passed: bool,
}

/// Exact rank over the union of supports. `passed` records full rank.
pub fn exact_rank(description: impl Into<String>, vectors: &[HElem]) -> LinearCert {
    let cols = vectors
        .iter()
        .flat_map(|v| v.terms().map(|(k, _)| k.clone()))
        .collect::<BTreeSet<_>>()
        .len();
    let rank = helem_rank(vectors);
    LinearCert {
        description: description.into(),
        rows: vectors.len(),
        cols,
        rank,
        passed: rank == vectors.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSum {
    pub radius: u32,
    /// `(representative, dim C_f)` per block.
    pub blocks: Vec<(FElem, usize)>,
    pub disjoint: bool,
    /// Every basis element with `f` in the ball (all of `H` when `F` is
    /// finite) lies in some block.
    pub exhaustive: bool,
    pub cert: LinearCert,
}

impl DirectSum {
    pub fn passed(&self) -> bool {
        self.disjoint && self.exhaustive && self.cert.passed
    }
}

/// Checks that the blocks `C_f` over the orbits meeting the ball have
/// disjoint supports, are jointly independent, and cover the ball.
pub fn direct_sum_check(session: &Session, radius: u32) -> DirectSum {
    let mp = session.hopf().matched_pair();
    let orbits = mp.orbits_in_ball(radius);
    let mut seen = BTreeSet::new();
    let mut disjoint = true;
    let mut blocks = Vec::with_capacity(orbits.len());
    let mut vectors = Vec::new();
    for o in &orbits {
        let cf = session.cf_subcoalgebra(o);
        blocks.push((o.rep.clone(), cf.dim()));
        for k in cf.keys {
            disjoint &= seen.insert(k.clone());
            vectors.push(HElem::basis(k.g, k.f));
        }
    }
    let exhaustive = mp
        .f()
        .ball(radius)
        .iter()
        .all(|f| (0..mp.g().order()).all(|g| seen.contains(&BasisKey::new(g, f.clone()))));
    DirectSum {
        radius,
        blocks,
        disjoint,
        exhaustive,
        cert: exact_rank("basis of ⊕ C_f", &vectors),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub rep: FElem,
    pub orbit_size: usize,
    pub dims: Vec<usize>,
    pub sum_of_squares: usize,
    pub expected: usize,
    pub passed: bool,
}

/// Per orbit in the ball: `Σ dim_total² = |G|·|O_f|`.
pub fn dimension_audit(session: &Session, radius: u32) -> Result<Vec<AuditRow>, ComoduleError> {
    let mp = session.hopf().matched_pair();
    let n = mp.g().order();
    let mut rows = Vec::new();
    for o in mp.orbits_in_ball(radius) {
        let dims: Vec<usize> = session
            .simples_for_orbit(&o)?
            .iter()
            .map(|d| d.dim_total)
            .collect();
        let sum_of_squares = dims.iter().map(|d| d * d).sum();
        let expected = n * o.len();
        rows.push(AuditRow {
            rep: o.rep.clone(),
            orbit_size: o.len(),
            dims,
            sum_of_squares,
            expected,
            passed: sum_of_squares == expected,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycles::Cocycles;
    use crate::groups::FiniteGroup;
    use crate::hopf::Bicrossed;
    use crate::matched_pair::{negation_matrix, MatchedPair};

    fn session(mp: MatchedPair) -> Session {
        Session::new(Arc::new(Bicrossed::new(Arc::new(mp), Cocycles::trivial())))
    }

    #[test]
    fn drinfeld_blocks_and_audit() {
        let s = session(MatchedPair::conjugation(FiniteGroup::named("S3").unwrap()));
        let ds = direct_sum_check(&s, 0);
        assert!(ds.passed());
        let dims: Vec<usize> = ds.blocks.iter().map(|b| b.1).collect();
        assert_eq!(dims, vec![6, 18, 12]);
        assert_eq!(ds.cert.rank, 36);
        let audit = dimension_audit(&s, 0).unwrap();
        let sums: Vec<Vec<usize>> = audit
            .iter()
            .map(|r| r.dims.iter().map(|d| d * d).collect())
            .collect();
        assert_eq!(sums, vec![vec![1, 1, 4], vec![9, 9], vec![4, 4, 4]]);
        assert!(audit.iter().all(|r| r.passed));
    }

    #[test]
    fn free_abelian_blocks() {
        let s = session(
            MatchedPair::linear_from_generators(
                FiniteGroup::cyclic(2),
                1,
                &[(1, negation_matrix(1))],
            )
            .unwrap(),
        );
        let ds = direct_sum_check(&s, 2);
        assert!(ds.passed());
        assert_eq!(ds.blocks.len(), 3);
        let ds0 = direct_sum_check(&s, 0);
        assert_eq!(ds0.blocks, vec![(FElem::vector(&[0]), 2)]);
    }

    #[test]
    fn rank_of_duplicates() {
        let a = HElem::basis(0, FElem::Finite(0));
        let b = HElem::basis(1, FElem::Finite(0));
        assert_eq!(exact_rank("x", &[a.clone(), b.clone()]).rank, 2);
        let c = exact_rank("x", &[a.clone(), b, a]);
        assert_eq!(c.rank, 2);
        assert!(!c.passed);
    }
}
