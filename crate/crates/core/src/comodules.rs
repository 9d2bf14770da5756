//! Simple right comodules as induced comodules over orbits.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::cocycles::CocycleError;
use crate::cyclotomic::CycNum;
use crate::groups::{FElem, GroupInterface};
use crate::hopf::{BasisKey, Bicrossed, HElem};
use crate::linalg;
use crate::matched_pair::Orbit;
use crate::reps::{self, CharTable, RepError, TwistedChar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComoduleError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("no simple comodule {0}")]
    UnknownSimple(String),
    #[error("coaction matrices rejected: {0}")]
    BadMatrices(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Stable identifier of a simple comodule: canonical orbit representative
/// and position in the stabilizer's character table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimpleId {
    pub f: FElem,
    pub index: usize,
}

impl fmt::Display for SimpleId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{},{}", self.f, self.index)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleDesc {
    pub id: SimpleId,
    #[serde(skip)]
    pub orbit: Arc<Orbit>,
    pub chi: TwistedChar,
    pub dim_v: usize,
    pub dim_total: usize,
}

impl SimpleDesc {
    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }
}

/// The subcoalgebra `C_f = span{p_g # e : e ∈ O_f}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfBasis {
    pub rep: FElem,
    pub keys: Vec<BasisKey>,
    pub is_simple: bool,
    pub antipode_stable: bool,
}

impl CfBasis {
    pub fn dim(&self) -> usize {
        self.keys.len()
    }
}

/// Coaction matrices `a^g` for `g ∈ G_f`, listed in stabilizer order.
pub type CoactionMatrices = Vec<Vec<Vec<CycNum>>>;

/// Shared context for comodule computations on one Hopf algebra. Results
/// are memoized; the caches never change an answer.
pub struct Session {
    h: Arc<Bicrossed>,
    user_tables: BTreeMap<FElem, Vec<Vec<CycNum>>>,
    simples: Mutex<HashMap<FElem, Arc<Vec<SimpleDesc>>>>,
    characters: Mutex<HashMap<SimpleId, Arc<HElem>>>,
}

impl Session {
    pub fn new(h: Arc<Bicrossed>) -> Self {
        Session {
            h,
            user_tables: BTreeMap::new(),
            simples: Mutex::new(HashMap::new()),
            characters: Mutex::new(HashMap::new()),
        }
    }

    /// Replaces the computed stabilizer table for the orbit of `f` with
    /// user-supplied rows (values in stabilizer order).
    pub fn with_user_table(mut self, f: FElem, rows: Vec<Vec<CycNum>>) -> Self {
        let rep = self.h.matched_pair().orbit_of(&f).rep.clone();
        self.user_tables.insert(rep, rows);
        self
    }

    pub fn hopf(&self) -> &Bicrossed {
        &self.h
    }

    pub fn hopf_arc(&self) -> &Arc<Bicrossed> {
        &self.h
    }

    pub fn cf_subcoalgebra(&self, orbit: &Orbit) -> CfBasis {
        let mp = self.h.matched_pair();
        let mut keys: Vec<BasisKey> = orbit
            .elements
            .iter()
            .flat_map(|e| (0..mp.g().order()).map(move |g| BasisKey::new(g, e.clone())))
            .collect();
        keys.sort();
        CfBasis {
            rep: orbit.rep.clone(),
            keys,
            is_simple: orbit.stabilizer.len() == 1,
            antipode_stable: !mp.g_f_finv(&orbit.rep).is_empty(),
        }
    }

    fn stabilizer_table(&self, orbit: &Orbit) -> Result<CharTable, ComoduleError> {
        let mp = self.h.matched_pair();
        let (sub, emb) = mp.g().subgroup(&orbit.stabilizer).map_err(RepError::from)?;
        if let Some(rows) = self.user_tables.get(&orbit.rep) {
            return Ok(reps::user_char_table(&sub, &emb, rows.clone())?);
        }
        let beta = self.h.cocycles().beta_for_orbit(mp, orbit)?;
        Ok(reps::twisted_char_table(&sub, &emb, &beta)?)
    }

    /// One simple comodule per character of the twisted stabilizer algebra,
    /// with the counting identity `Σ dim_total² = |G|·|O_f|` asserted.
    pub fn simples_for_orbit(
        &self,
        orbit: &Arc<Orbit>,
    ) -> Result<Arc<Vec<SimpleDesc>>, ComoduleError> {
        if let Some(s) = self.simples.lock().unwrap().get(&orbit.rep) {
            return Ok(Arc::clone(s));
        }
        let table = self.stabilizer_table(orbit)?;
        let t = orbit.transversal.len();
        let descs: Vec<SimpleDesc> = table
            .chars
            .into_iter()
            .enumerate()
            .map(|(index, chi)| SimpleDesc {
                id: SimpleId {
                    f: orbit.rep.clone(),
                    index,
                },
                orbit: Arc::clone(orbit),
                dim_v: chi.dim,
                dim_total: t * chi.dim,
                chi,
            })
            .collect();
        let total: usize = descs.iter().map(|d| d.dim_total * d.dim_total).sum();
        let expected = self.h.matched_pair().g().order() * orbit.len();
        if total != expected {
            return Err(ComoduleError::Inconsistent(format!(
                "orbit of {}: Σ dim² = {total} but dim C_f = {expected}",
                orbit.rep
            )));
        }
        let descs = Arc::new(descs);
        self.simples
            .lock()
            .unwrap()
            .insert(orbit.rep.clone(), Arc::clone(&descs));
        Ok(descs)
    }

    /// Simples over every orbit meeting the ball, sorted by id.
    pub fn enumerate_simples(&self, radius: u32) -> Result<Vec<SimpleDesc>, ComoduleError> {
        let mut out = Vec::new();
        for orbit in self.h.matched_pair().orbits_in_ball(radius) {
            out.extend(self.simples_for_orbit(&orbit)?.iter().cloned());
        }
        Ok(out)
    }

    /// Looks up a simple by id; its orbit need not lie in any ball.
    pub fn simple(&self, id: &SimpleId) -> Result<SimpleDesc, ComoduleError> {
        let mp = self.h.matched_pair();
        if !mp.f().contains(&id.f) {
            return Err(ComoduleError::UnknownSimple(id.to_string()));
        }
        let orbit = mp.orbit_of(&id.f);
        if orbit.rep != id.f {
            return Err(ComoduleError::UnknownSimple(format!(
                "{id}: {} is not the canonical representative {}",
                id.f, orbit.rep
            )));
        }
        self.simples_for_orbit(&orbit)?
            .get(id.index)
            .cloned()
            .ok_or_else(|| ComoduleError::UnknownSimple(id.to_string()))
    }

    /// `χ(Ṽ) = Σ_{z∈T_f} Σ_{g∈G_f} τ(z⁻¹,g;f)⁻¹ τ(z⁻¹gz,z⁻¹;f) χ_V(g) p_{z⁻¹gz} # (z⁻¹▷f)`.
    pub fn irreducible_character(&self, d: &SimpleDesc) -> Arc<HElem> {
        if let Some(c) = self.characters.lock().unwrap().get(&d.id) {
            return Arc::clone(c);
        }
        let mp = self.h.matched_pair();
        let g = mp.g();
        let tau = &self.h.cocycles().tau;
        let f = &d.orbit.rep;
        let mut out = HElem::zero();
        for (zi, &z) in d.orbit.transversal.iter().enumerate() {
            let zinv = g.inv(z);
            let point = d.orbit.point(zi);
            for (&a, v) in d.chi.elements.iter().zip(&d.chi.values) {
                if v.is_zero() {
                    continue;
                }
                let conj = g.mul(g.mul(zinv, a), z);
                let c = tau
                    .eval(zinv, a, f)
                    .inv()
                    .expect("cocycle values are nonzero")
                    * tau.eval(conj, zinv, f)
                    * v;
                out.add_term(BasisKey::new(conj, point.clone()), c);
            }
        }
        let out = Arc::new(out);
        self.characters
            .lock()
            .unwrap()
            .insert(d.id.clone(), Arc::clone(&out));
        out
    }

    /// The character written with `g ↦ g⁻¹` over `G_f`:
    /// `Σ_z Σ_g τ(z⁻¹,g⁻¹;f)⁻¹ τ(z⁻¹g⁻¹z,z⁻¹;f) χ_V(g⁻¹) p_{z⁻¹g⁻¹z} # (z⁻¹▷f)`.
    pub fn irreducible_character_inverted(&self, d: &SimpleDesc) -> HElem {
        let mp = self.h.matched_pair();
        let g = mp.g();
        let tau = &self.h.cocycles().tau;
        let f = &d.orbit.rep;
        let mut out = HElem::zero();
        for (zi, &z) in d.orbit.transversal.iter().enumerate() {
            let zinv = g.inv(z);
            for &a in &d.chi.elements {
                let ainv = g.inv(a);
                let v = d.chi.at(ainv).expect("stabilizer is closed under inverses");
                let conj = g.mul(g.mul(zinv, ainv), z);
                let c = tau
                    .eval(zinv, ainv, f)
                    .inv()
                    .expect("cocycle values are nonzero")
                    * tau.eval(conj, zinv, f)
                    * v;
                out.add_term(BasisKey::new(conj, d.orbit.point(zi).clone()), c);
            }
        }
        out
    }

    /// The multiplicative matrix with rows and columns indexed by `(z, i)`:
    /// entry `((z',j),(z,i))` is
    /// `Σ_g τ(z'⁻¹,g;f)⁻¹ τ(z'⁻¹gz, z⁻¹;f) a_{ji}^g p_{z'⁻¹gz} # (z⁻¹▷f)`.
    ///
    /// When `dim_v = 1` the matrices default to `a^g = χ_V(g)`. Supplied
    /// matrices are checked against the character and the twisted
    /// multiplicativity `a^x a^y = τ(x,y;f) a^{xy}`.
    pub fn coefficient_matrix(
        &self,
        d: &SimpleDesc,
        matrices: Option<&CoactionMatrices>,
    ) -> Result<Vec<Vec<HElem>>, ComoduleError> {
        let mp = self.h.matched_pair();
        let g = mp.g();
        let tau = &self.h.cocycles().tau;
        let f = &d.orbit.rep;
        let m = d.dim_v;
        let owned;
        let mats = match matrices {
            Some(ms) => {
                self.check_matrices(d, ms)?;
                ms
            }
            None if m == 1 => {
                owned = d
                    .chi
                    .values
                    .iter()
                    .map(|v| vec![vec![v.clone()]])
                    .collect::<CoactionMatrices>();
                &owned
            }
            None => {
                return Err(ComoduleError::BadMatrices(format!(
                    "{}: dimension {m} needs explicit coaction matrices",
                    d.id
                )))
            }
        };
        let t = d.orbit.transversal.len();
        let mut out = vec![vec![HElem::zero(); t * m]; t * m];
        for (zpi, &zp) in d.orbit.transversal.iter().enumerate() {
            let zp_inv = g.inv(zp);
            for (zi, &z) in d.orbit.transversal.iter().enumerate() {
                let z_inv = g.inv(z);
                let point = d.orbit.point(zi);
                for (ai, &a) in d.chi.elements.iter().enumerate() {
                    let target = g.mul(g.mul(zp_inv, a), z);
                    let c = tau
                        .eval(zp_inv, a, f)
                        .inv()
                        .expect("cocycle values are nonzero")
                        * tau.eval(target, z_inv, f);
                    for j in 0..m {
                        for i in 0..m {
                            let v = &mats[ai][j][i];
                            if !v.is_zero() {
                                out[zpi * m + j][zi * m + i]
                                    .add_term(BasisKey::new(target, point.clone()), &c * v);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_matrices(&self, d: &SimpleDesc, ms: &CoactionMatrices) -> Result<(), ComoduleError> {
        let m = d.dim_v;
        let n = d.chi.elements.len();
        let g = self.h.matched_pair().g();
        let tau = &self.h.cocycles().tau;
        if ms.len() != n
            || ms
                .iter()
                .any(|a| a.len() != m || a.iter().any(|r| r.len() != m))
        {
            return Err(ComoduleError::BadMatrices(format!(
                "expected {n} matrices of size {m}×{m}"
            )));
        }
        for (ai, a) in ms.iter().enumerate() {
            let tr = (0..m).fold(CycNum::zero(), |acc, i| acc + &a[i][i]);
            if tr != d.chi.values[ai] {
                return Err(ComoduleError::BadMatrices(format!(
                    "trace at {} is {tr}, character value is {}",
                    d.chi.elements[ai], d.chi.values[ai]
                )));
            }
        }
        let pos: HashMap<usize, usize> = d
            .chi
            .elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        for (xi, &x) in d.chi.elements.iter().enumerate() {
            for (yi, &y) in d.chi.elements.iter().enumerate() {
                let xy = pos[&g.mul(x, y)];
                let t = tau.eval(x, y, &d.orbit.rep);
                for r in 0..m {
                    for c in 0..m {
                        let lhs = (0..m)
                            .fold(CycNum::zero(), |acc, k| acc + &ms[xi][r][k] * &ms[yi][k][c]);
                        if lhs != &t * &ms[xy][r][c] {
                            return Err(ComoduleError::BadMatrices(format!(
                                "a^{x} a^{y} ≠ τ({x},{y};f) a^{{{x}·{y}}} at entry ({r},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The flattened coefficient set `B`, certified independent.
    pub fn coefficient_basis(
        &self,
        d: &SimpleDesc,
        matrices: Option<&CoactionMatrices>,
    ) -> Result<Vec<HElem>, ComoduleError> {
        let b: Vec<HElem> = self
            .coefficient_matrix(d, matrices)?
            .into_iter()
            .flatten()
            .collect();
        let rank = helem_rank(&b);
        if rank != b.len() {
            return Err(ComoduleError::Inconsistent(format!(
                "coefficient set of {} has rank {rank} < {}",
                d.id,
                b.len()
            )));
        }
        Ok(b)
    }
}

/// Exact rank of a list of elements over the union of their supports.
pub fn helem_rank(vs: &[HElem]) -> usize {
    let mut keys: Vec<&BasisKey> = vs.iter().flat_map(|v| v.terms().map(|(k, _)| k)).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<CycNum>> = vs
        .iter()
        .map(|v| keys.iter().map(|k| v.coeff(k)).collect())
        .collect();
    linalg::rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::Cocycles;
    use crate::groups::{FGroup, FiniteGroup};
    use crate::hopf::HTensor;
    use crate::matched_pair::{negation_matrix, MatchedPair};

    fn h_z_z2() -> Arc<Bicrossed> {
        let mp = MatchedPair::linear_from_generators(
            FiniteGroup::cyclic(2),
            1,
            &[(1, negation_matrix(1))],
        )
        .unwrap();
        Arc::new(Bicrossed::new(Arc::new(mp), Cocycles::trivial()))
    }

    fn drinfeld_s3() -> Arc<Bicrossed> {
        let mp = MatchedPair::conjugation(FiniteGroup::named("S3").unwrap());
        Arc::new(Bicrossed::new(Arc::new(mp), Cocycles::trivial()))
    }

    fn v(x: i64) -> FElem {
        FElem::vector(&[x])
    }

    fn assert_multiplicative(h: &Bicrossed, m: &[Vec<HElem>]) {
        let n = m.len();
        for a in 0..n {
            for b in 0..n {
                let mut rhs = HTensor::zero();
                for c in 0..n {
                    for ((l, r), s) in HTensor::pure(&m[a][c], &m[c][b]).terms() {
                        rhs.add_term(l.clone(), r.clone(), s.clone());
                    }
                }
                assert_eq!(h.comul(&m[a][b]), rhs, "Δ entry ({a},{b})");
                let eps = if a == b {
                    CycNum::one()
                } else {
                    CycNum::zero()
                };
                assert_eq!(h.counit(&m[a][b]), eps);
            }
        }
    }

    #[test]
    fn h_z_z2_subcoalgebras_and_simples() {
        let s = Session::new(h_z_z2());
        let mp = s.hopf().matched_pair();
        let o1 = mp.orbit_of(&v(1));
        let cf = s.cf_subcoalgebra(&o1);
        assert_eq!(cf.dim(), 4);
        assert!(cf.is_simple && cf.antipode_stable);
        let simples = s.simples_for_orbit(&o1).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].dim_total, 2);
        let zero = s.simples_for_orbit(&mp.orbit_of(&v(0))).unwrap();
        assert_eq!(
            zero.iter().map(|d| d.dim_total).collect::<Vec<_>>(),
            vec![1, 1]
        );

        // χ = p_1#1 + p_1#(-1)
        let chi = s.irreducible_character(&simples[0]);
        let expected: HElem = [
            (BasisKey::new(0, v(1)), CycNum::one()),
            (BasisKey::new(0, v(-1)), CycNum::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(*chi, expected);
        assert_eq!(s.hopf().counit(&chi), CycNum::from_int(2));

        assert_eq!(s.enumerate_simples(2).unwrap().len(), 4);
        // trivial comodule has character 1
        assert_eq!(*s.irreducible_character(&zero[0]), s.hopf().unit());

        let b = s.coefficient_basis(&simples[0], None).unwrap();
        assert_eq!(b.len(), 4);
        let keys: Vec<BasisKey> = cf.keys.clone();
        for x in &b {
            assert!(x.terms().all(|(k, _)| keys.contains(k)));
        }
        assert_multiplicative(s.hopf(), &s.coefficient_matrix(&simples[0], None).unwrap());
        assert_eq!(
            s.coefficient_basis(&zero[0], None).unwrap(),
            vec![s.hopf().unit()]
        );
    }

    #[test]
    fn drinfeld_s3_simples() {
        let s = Session::new(drinfeld_s3());
        let all = s.enumerate_simples(0).unwrap();
        let dims: Vec<usize> = all.iter().map(|d| d.dim_total).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 3, 2, 2, 2]);
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 36);
        for d in &all {
            let chi = s.irreducible_character(d);
            assert_eq!(s.hopf().counit(&chi), CycNum::from_int(d.dim_total as i64));
            assert_eq!(*chi, s.irreducible_character_inverted(d));
            if d.dim_v == 1 {
                assert_multiplicative(s.hopf(), &s.coefficient_matrix(d, None).unwrap());
            }
        }
        let chars: Vec<HElem> = all
            .iter()
            .map(|d| (*s.irreducible_character(d)).clone())
            .collect();
        assert_eq!(helem_rank(&chars), 8);
    }

    #[test]
    fn user_matrices_for_two_dimensional_irrep() {
        let s = Session::new(drinfeld_s3());
        let all = s.enumerate_simples(0).unwrap();
        let d = all
            .iter()
            .find(|d| d.id.index == 2 && d.orbit.len() == 1)
            .unwrap();
        let g = s.hopf().matched_pair().g();
        // the standard representation on {x_1 + x_2 + x_3 = 0}, basis x_1 - x_2, x_2 - x_3
        let mats: CoactionMatrices = (0..6)
            .map(|a| {
                let p = g.permutation(a).unwrap();
                let img = |i: usize| p[i];
                let e = |i: usize, j: usize| -> [i64; 3] {
                    let mut v = [0; 3];
                    v[img(i)] += 1;
                    v[img(j)] -= 1;
                    v
                };
                let coords = |w: [i64; 3]| [w[0], w[0] + w[1]];
                let c1 = coords(e(0, 1));
                let c2 = coords(e(1, 2));
                (0..2)
                    .map(|r| vec![CycNum::from_int(c1[r]), CycNum::from_int(c2[r])])
                    .collect()
            })
            .collect();
        let b = s.coefficient_basis(d, Some(&mats)).unwrap();
        assert_eq!(b.len(), 4);
        assert_multiplicative(s.hopf(), &s.coefficient_matrix(d, Some(&mats)).unwrap());
        let mut bad = mats.clone();
        bad[1][0][0] = bad[1][0][0].add_ref(&CycNum::one());
        assert!(s.coefficient_basis(d, Some(&bad)).is_err());
    }

    #[test]
    fn trivial_stabilizer_character() {
        // free orbit: G_f = {1}, χ = Σ_g p_1 # (g ▷ f)
        let mp = MatchedPair::trivial(FiniteGroup::cyclic(3), FGroup::FreeAbelian(1));
        let h = Arc::new(Bicrossed::new(Arc::new(mp), Cocycles::trivial()));
        let s = Session::new(h);
        let o = s.hopf().matched_pair().orbit_of(&v(2));
        assert_eq!(s.simples_for_orbit(&o).unwrap().len(), 3);

        let s = Session::new(h_z_z2());
        let o = s.hopf().matched_pair().orbit_of(&v(3));
        let d = &s.simples_for_orbit(&o).unwrap()[0];
        let chi = s.irreducible_character(d);
        let expected: HElem = (0..2)
            .map(|g| {
                (
                    BasisKey::new(0, s.hopf().matched_pair().act_right(g, &v(3))),
                    CycNum::one(),
                )
            })
            .collect();
        assert_eq!(*chi, expected);
    }
}
