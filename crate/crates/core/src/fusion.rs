//! The Grothendieck ring on irreducible characters.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::checks::{witness, LawCheck, Scope, Section};
use crate::comodules::{ComoduleError, Session, SimpleDesc, SimpleId};
use crate::cyclotomic::CycNum;
use crate::groups::FElem;
use crate::hopf::{BasisKey, HElem};
use crate::linalg;

/// Triples checked for associativity by [`FusionRing::verify_based_ring`].
pub const ASSOCIATIVITY_SAMPLES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error(transparent)]
    Comodule(#[from] ComoduleError),
    #[error("orbit of {rep} is needed but lies outside the ball of radius {radius}")]
    BallTooSmall { rep: String, radius: u32 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("closed form does not apply: {0}")]
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub id: SimpleId,
    pub multiplicity: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionRow {
    pub left: SimpleId,
    pub right: SimpleId,
    /// Sorted by id.
    pub summands: Vec<Summand>,
}

impl FusionRow {
    pub fn multiplicity(&self, id: &SimpleId) -> u64 {
        self.summands
            .iter()
            .find(|s| s.id == *id)
            .map_or(0, |s| s.multiplicity)
    }

    pub fn total_dim(&self) -> u64 {
        self.summands
            .iter()
            .map(|s| s.multiplicity * s.dim as u64)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleSummary {
    pub id: SimpleId,
    pub dim: usize,
    pub orbit_size: usize,
    pub dual: SimpleId,
    pub indicator: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTable {
    pub radius: u32,
    pub simples: Vec<SimpleSummary>,
    pub rows: Vec<FusionRow>,
    /// Pairs whose two products differ.
    pub asymmetric_pairs: Vec<(SimpleId, SimpleId)>,
}

impl FusionTable {
    pub fn row(&self, a: &SimpleId, b: &SimpleId) -> Option<&FusionRow> {
        self.rows.iter().find(|r| r.left == *a && r.right == *b)
    }
}

/// Fusion computations on one session; rows and duals are memoized.
pub struct FusionRing {
    session: Arc<Session>,
    rows: Mutex<HashMap<(SimpleId, SimpleId), FusionRow>>,
    duals: Mutex<HashMap<SimpleId, SimpleId>>,
}

fn keys_of<'a>(vs: impl Iterator<Item = &'a HElem>) -> Vec<BasisKey> {
    let mut keys: Vec<BasisKey> = vs.flat_map(|v| v.terms().map(|(k, _)| k.clone())).collect();
    keys.sort();
    keys.dedup();
    keys
}

impl FusionRing {
    pub fn new(session: Arc<Session>) -> Self {
        FusionRing {
            session,
            rows: Mutex::new(HashMap::new()),
            duals: Mutex::new(HashMap::new()),
        }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    /// The unit simple: trivial character over the orbit of `1_F`.
    pub fn unit_id(&self) -> SimpleId {
        SimpleId {
            f: self.session.hopf().matched_pair().f_identity(),
            index: 0,
        }
    }

    fn candidates(
        &self,
        a: &SimpleDesc,
        b: &SimpleDesc,
        radius: Option<u32>,
    ) -> Result<Vec<SimpleDesc>, FusionError> {
        let mp = self.session.hopf().matched_pair();
        let mut out = Vec::new();
        for rep in mp.orbit_product(&a.orbit, &b.orbit) {
            if let Some(r) = radius {
                if rep.norm() > u64::from(r) {
                    return Err(FusionError::BallTooSmall {
                        rep: rep.to_string(),
                        radius: r,
                    });
                }
            }
            let orbit = mp.orbit_of(&rep);
            out.extend(self.session.simples_for_orbit(&orbit)?.iter().cloned());
        }
        Ok(out)
    }

    /// Decomposes `χ(a)χ(b)` over the characters of the simples lying over
    /// the orbits of `O_a O_b`, by an exact linear solve.
    pub fn decompose(&self, a: &SimpleId, b: &SimpleId) -> Result<FusionRow, FusionError> {
        self.decompose_within(a, b, None)
    }

    /// As [`decompose`](Self::decompose), but refuses candidate orbits whose
    /// representative lies outside the ball of the given radius.
    pub fn decompose_within(
        &self,
        a: &SimpleId,
        b: &SimpleId,
        radius: Option<u32>,
    ) -> Result<FusionRow, FusionError> {
        let key = (a.clone(), b.clone());
        if let Some(r) = self.rows.lock().unwrap().get(&key) {
            if radius.is_none() {
                return Ok(r.clone());
            }
        }
        let da = self.session.simple(a)?;
        let db = self.session.simple(b)?;
        let cands = self.candidates(&da, &db, radius)?;
        let h = self.session.hopf();
        let product = h.mul(
            &self.session.irreducible_character(&da),
            &self.session.irreducible_character(&db),
        );
        let chars: Vec<Arc<HElem>> = cands
            .iter()
            .map(|d| self.session.irreducible_character(d))
            .collect();
        let keys = keys_of(chars.iter().map(|c| &**c).chain(std::iter::once(&product)));
        let columns: Vec<Vec<CycNum>> = chars
            .iter()
            .map(|c| keys.iter().map(|k| c.coeff(k)).collect())
            .collect();
        let target: Vec<CycNum> = keys.iter().map(|k| product.coeff(k)).collect();
        let sol = linalg::solve(&columns, &target);
        if !sol.exact {
            return Err(FusionError::Inconsistent(format!(
                "{a} ⊗ {b}: product character is not in the span of the candidate characters"
            )));
        }
        if !sol.unique {
            return Err(FusionError::Inconsistent(format!(
                "{a} ⊗ {b}: candidate characters are linearly dependent"
            )));
        }
        let mut summands = Vec::new();
        for (d, c) in cands.iter().zip(&sol.coefficients) {
            if c.is_zero() {
                continue;
            }
            let m = c
                .to_integer()
                .and_then(|m| u64::try_from(m).ok())
                .ok_or_else(|| {
                    FusionError::Inconsistent(format!("{a} ⊗ {b}: multiplicity of {} is {c}", d.id))
                })?;
            summands.push(Summand {
                id: d.id.clone(),
                multiplicity: m,
                dim: d.dim_total,
            });
        }
        summands.sort_by(|x, y| x.id.cmp(&y.id));
        let row = FusionRow {
            left: a.clone(),
            right: b.clone(),
            summands,
        };
        let expected = (da.dim_total * db.dim_total) as u64;
        if row.total_dim() != expected {
            return Err(FusionError::Inconsistent(format!(
                "{a} ⊗ {b}: Σ mult·dim = {} but dim·dim = {expected}",
                row.total_dim()
            )));
        }
        self.rows.lock().unwrap().insert(key, row.clone());
        Ok(row)
    }

    /// The simple whose character is `S(χ(d))`.
    pub fn dual_of(&self, id: &SimpleId) -> Result<SimpleId, FusionError> {
        if let Some(d) = self.duals.lock().unwrap().get(id) {
            return Ok(d.clone());
        }
        let d = self.session.simple(id)?;
        let h = self.session.hopf();
        let mp = h.matched_pair();
        let target = h.antipode(&self.session.irreducible_character(&d));
        let orbit = mp.orbit_of(&mp.f_inv(&d.orbit.rep));
        let matches: Vec<SimpleId> = self
            .session
            .simples_for_orbit(&orbit)?
            .iter()
            .filter(|c| *self.session.irreducible_character(c) == target)
            .map(|c| c.id.clone())
            .collect();
        match matches.as_slice() {
            [one] => {
                self.duals.lock().unwrap().insert(id.clone(), one.clone());
                Ok(one.clone())
            }
            _ => Err(FusionError::Inconsistent(format!(
                "{id}: S(χ) matches {} simple characters",
                matches.len()
            ))),
        }
    }

    pub fn is_self_dual(&self, id: &SimpleId) -> Result<bool, FusionError> {
        Ok(self.dual_of(id)? == *id)
    }

    /// `ν₂(χ) = ⟨T, m∘Δ(χ)⟩`, required to lie in `{−1, 0, 1}` and to be nonzero
    /// exactly when the simple is self-dual.
    pub fn fs_indicator(&self, id: &SimpleId) -> Result<i64, FusionError> {
        let d = self.session.simple(id)?;
        let h = self.session.hopf();
        let nu = h.integral(&h.mul_delta(&self.session.irreducible_character(&d)));
        let v = nu
            .to_integer()
            .and_then(|v| i64::try_from(v).ok())
            .filter(|v| (-1..=1).contains(v))
            .ok_or_else(|| FusionError::Inconsistent(format!("{id}: ν₂ = {nu}")))?;
        if (v != 0) != self.is_self_dual(id)? {
            return Err(FusionError::Inconsistent(format!(
                "{id}: ν₂ = {v} disagrees with self-duality"
            )));
        }
        Ok(v)
    }

    /// Whether the smash-product hypotheses hold globally: trivial cocycles,
    /// abelian `G` and trivial `⊲`.
    pub fn is_abelian_smash(&self) -> bool {
        let h = self.session.hopf();
        h.cocycles().is_trivial()
            && h.matched_pair().g().is_abelian()
            && h.matched_pair().left_action_trivial()
    }

    /// The two-condition criterion for smash products: `V ≅ V*` and
    /// `G_{f,f⁻¹} ≠ ∅`. `None` outside the abelian smash setting.
    pub fn smash_self_dual_criterion(&self, id: &SimpleId) -> Result<Option<bool>, FusionError> {
        if !self.is_abelian_smash() {
            return Ok(None);
        }
        let d = self.session.simple(id)?;
        let g = self.session.hopf().matched_pair().g();
        let v_self_dual = d
            .chi
            .elements
            .iter()
            .all(|&a| d.chi.at(g.inv(a)) == d.chi.at(a));
        let meets = !self
            .session
            .hopf()
            .matched_pair()
            .g_f_finv(&d.orbit.rep)
            .is_empty();
        Ok(Some(v_self_dual && meets))
    }

    fn find_by_values(
        &self,
        rep: &FElem,
        values: &BTreeMap<usize, CycNum>,
    ) -> Result<SimpleId, FusionError> {
        let mp = self.session.hopf().matched_pair();
        let orbit = mp.orbit_of(rep);
        self.session
            .simples_for_orbit(&orbit)?
            .iter()
            .find(|d| {
                d.chi
                    .elements
                    .iter()
                    .zip(&d.chi.values)
                    .all(|(a, v)| values.get(a) == Some(v))
            })
            .map(|d| d.id.clone())
            .ok_or_else(|| {
                FusionError::Inconsistent(format!(
                    "no simple over {rep} with the product character"
                ))
            })
    }

    /// Closed-form decomposition for smash products with abelian `G`, trivial
    /// `⊲` and a common stabilizer for all nonidentity elements involved.
    ///
    /// Each orbit `O_e ⊆ O_x O_y` enters with multiplicity
    /// `N_e = #{(a,b) ∈ O_x × O_y : ab = e}`, which can exceed one. Over the
    /// unit orbit, the summands are the characters of `G` extending the
    /// product character of `G_x`, and their sum is checked against
    /// `N_1 Σ_{g∈G_x} c^g p_g # 1_F`.
    pub fn smash_shortcut(&self, a: &SimpleId, b: &SimpleId) -> Result<FusionRow, FusionError> {
        if !self.is_abelian_smash() {
            return Err(FusionError::NotApplicable(
                "needs trivial cocycles, abelian G and trivial ⊲".into(),
            ));
        }
        let h = self.session.hopf();
        let mp = h.matched_pair();
        let one = mp.f_identity();
        let da = self.session.simple(a)?;
        let db = self.session.simple(b)?;
        let (x, y) = (&da.orbit.rep, &db.orbit.rep);
        let restrict = |d: &SimpleDesc, on: &[usize]| -> BTreeMap<usize, CycNum> {
            on.iter()
                .map(|&s| (s, d.chi.at(s).expect("subgroup").clone()))
                .collect()
        };
        let product_char = |on: &[usize]| -> BTreeMap<usize, CycNum> {
            let ra = restrict(&da, on);
            let rb = restrict(&db, on);
            on.iter().map(|s| (*s, &ra[s] * &rb[s])).collect()
        };
        let summand = |id: SimpleId, multiplicity: u64| -> Result<Summand, FusionError> {
            let dim = self.session.simple(&id)?.dim_total;
            Ok(Summand {
                id,
                multiplicity,
                dim,
            })
        };
        let mut summands = Vec::new();
        if *x == one || *y == one {
            // cases (1)–(3): a single induced summand over the other orbit
            let (rep, on) = if *x == one {
                (y, &db.orbit.stabilizer)
            } else {
                (x, &da.orbit.stabilizer)
            };
            summands.push(summand(self.find_by_values(rep, &product_char(on))?, 1)?);
        } else {
            if da.orbit.stabilizer != db.orbit.stabilizer {
                return Err(FusionError::NotApplicable(format!("G_{x} ≠ G_{y}")));
            }
            let gx = &da.orbit.stabilizer;
            let c = product_char(gx);
            let mut counts: BTreeMap<FElem, u64> = BTreeMap::new();
            for p in &da.orbit.elements {
                for q in &db.orbit.elements {
                    *counts
                        .entry(mp.orbit_of(&mp.f_mul(p, q)).rep.clone())
                        .or_default() += 1;
                }
            }
            for (e, n) in counts {
                let orbit = mp.orbit_of(&e);
                let size = orbit.len() as u64;
                if n % size != 0 {
                    return Err(FusionError::Inconsistent(format!(
                        "orbit of {e} is hit unevenly"
                    )));
                }
                let n_e = n / size;
                if e != one {
                    if orbit.stabilizer != *gx {
                        return Err(FusionError::NotApplicable(format!("G_{e} ≠ G_{x}")));
                    }
                    summands.push(summand(self.find_by_values(&e, &c)?, n_e)?);
                    continue;
                }
                // case (5): the extensions of c to G over the unit orbit
                let ox = da.orbit.len() as u64;
                if n % ox != 0 {
                    return Err(FusionError::Inconsistent(
                        "unit orbit multiplicity is fractional".into(),
                    ));
                }
                let m = n / ox;
                let mut lhs = HElem::zero();
                for d in self.session.simples_for_orbit(&orbit)?.iter() {
                    if gx.iter().all(|s| d.chi.at(*s) == c.get(s)) {
                        lhs = lhs.add(
                            &self
                                .session
                                .irreducible_character(d)
                                .scale(&CycNum::from_int(m as i64)),
                        );
                        summands.push(summand(d.id.clone(), m)?);
                    }
                }
                let rhs: HElem = c
                    .iter()
                    .map(|(s, v)| {
                        (
                            BasisKey::new(*s, one.clone()),
                            v * &CycNum::from_int(n as i64),
                        )
                    })
                    .collect();
                if lhs != rhs {
                    return Err(FusionError::Inconsistent(
                        "unit-orbit summands miss the aggregate character identity".into(),
                    ));
                }
            }
        }
        summands.sort_by(|p, q| p.id.cmp(&q.id));
        Ok(FusionRow {
            left: a.clone(),
            right: b.clone(),
            summands,
        })
    }

    /// All ordered pairs of simples over the ball, with duals and indicators.
    pub fn fusion_table(&self, radius: u32) -> Result<FusionTable, FusionError> {
        let simples = self.session.enumerate_simples(radius)?;
        let mut summaries = Vec::with_capacity(simples.len());
        for d in &simples {
            summaries.push(SimpleSummary {
                id: d.id.clone(),
                dim: d.dim_total,
                orbit_size: d.orbit_size(),
                dual: self.dual_of(&d.id)?,
                indicator: self.fs_indicator(&d.id)?,
            });
        }
        let mut rows = Vec::with_capacity(simples.len() * simples.len());
        for a in &simples {
            for b in &simples {
                rows.push(self.decompose(&a.id, &b.id)?);
            }
        }
        let n = simples.len();
        let mut asymmetric_pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rows[i * n + j].summands != rows[j * n + i].summands {
                    asymmetric_pairs.push((simples[i].id.clone(), simples[j].id.clone()));
                }
            }
        }
        Ok(FusionTable {
            radius,
            simples: summaries,
            rows,
            asymmetric_pairs,
        })
    }

    /// Based-ring axioms on a computed table. Rows are read from the table;
    /// products leaving it are recomputed.
    pub fn verify_based_ring(&self, table: &FusionTable) -> Section {
        let unit = self.unit_id();
        let dual: HashMap<&SimpleId, &SimpleId> =
            table.simples.iter().map(|s| (&s.id, &s.dual)).collect();
        let dims: HashMap<&SimpleId, usize> =
            table.simples.iter().map(|s| (&s.id, s.dim)).collect();
        let index: HashMap<(&SimpleId, &SimpleId), &FusionRow> = table
            .rows
            .iter()
            .map(|r| ((&r.left, &r.right), r))
            .collect();
        let scope = Scope::Ball(table.radius);
        let show = |r: &FusionRow| {
            r.summands
                .iter()
                .map(|s| format!("{}×({})", s.multiplicity, s.id))
                .collect::<Vec<_>>()
                .join(" + ")
        };

        let mut unit_law = LawCheck::new("1·d = d = d·1", scope);
        let mut unit_mult = LawCheck::new("mult of 1 in d_i·d_j = δ(j, i*)", scope);
        let mut dims_law = LawCheck::new("Σ mult·dim = dim·dim", scope);
        let mut anti = LawCheck::new("N_ij^k = N_{j*i*}^{k*}", scope);
        for r in &table.rows {
            if r.left == unit || r.right == unit {
                let other = if r.left == unit { &r.right } else { &r.left };
                let ok = r.summands.len() == 1
                    && r.summands[0].id == *other
                    && r.summands[0].multiplicity == 1;
                unit_law.record(ok, || {
                    witness([
                        ("left", r.left.to_string()),
                        ("right", r.right.to_string()),
                        ("row", show(r)),
                    ])
                });
            }
            let expected = u64::from(dual.get(&r.left).is_some_and(|d| **d == r.right));
            unit_mult.record(r.multiplicity(&unit) == expected, || {
                witness([
                    ("left", r.left.to_string()),
                    ("right", r.right.to_string()),
                    ("unit_multiplicity", r.multiplicity(&unit).to_string()),
                ])
            });
            if let (Some(da), Some(db)) = (dims.get(&r.left), dims.get(&r.right)) {
                dims_law.record(r.total_dim() == (da * db) as u64, || {
                    witness([
                        ("left", r.left.to_string()),
                        ("right", r.right.to_string()),
                        ("row", show(r)),
                    ])
                });
            }
            let (Some(li), Some(ri)) = (dual.get(&r.left), dual.get(&r.right)) else {
                continue;
            };
            let Some(mirror) = index.get(&(*ri, *li)) else {
                continue;
            };
            let ok = r.summands.len() == mirror.summands.len()
                && r.summands.iter().all(|s| match self.dual_of(&s.id) {
                    Ok(ds) => mirror.multiplicity(&ds) == s.multiplicity,
                    Err(_) => false,
                });
            anti.record(ok, || {
                witness([
                    ("left", r.left.to_string()),
                    ("right", r.right.to_string()),
                    ("row", show(r)),
                    ("mirror", show(mirror)),
                ])
            });
        }

        let mut assoc = LawCheck::new("(d_i d_j) d_k = d_i (d_j d_k)", scope);
        let ids: Vec<&SimpleId> = table.simples.iter().map(|s| &s.id).collect();
        let n = ids.len();
        let total = n * n * n;
        let stride = if total <= ASSOCIATIVITY_SAMPLES {
            1
        } else {
            coprime_stride(total)
        };
        for t in 0..total.min(ASSOCIATIVITY_SAMPLES) {
            let idx = (t * stride) % total;
            let (i, j, k) = (ids[idx / (n * n)], ids[(idx / n) % n], ids[idx % n]);
            let (Some(ij), Some(jk)) = (index.get(&(i, j)), index.get(&(j, k))) else {
                continue;
            };
            let left = self.expand(ij.summands.iter().map(|s| (&s.id, s.multiplicity)), |s| {
                self.decompose(s, k)
            });
            let right = self.expand(jk.summands.iter().map(|s| (&s.id, s.multiplicity)), |s| {
                self.decompose(i, s)
            });
            let ok = matches!((&left, &right), (Ok(l), Ok(r)) if l == r);
            assoc.record(ok, || {
                witness([
                    ("i", i.to_string()),
                    ("j", j.to_string()),
                    ("k", k.to_string()),
                ])
            });
        }
        Section::new(
            "based ring",
            vec![unit_law, unit_mult, dims_law, anti, assoc],
        )
    }

    fn expand<'a>(
        &self,
        terms: impl Iterator<Item = (&'a SimpleId, u64)>,
        mul: impl Fn(&SimpleId) -> Result<FusionRow, FusionError>,
    ) -> Result<BTreeMap<SimpleId, u64>, FusionError> {
        let mut out = BTreeMap::new();
        for (s, m) in terms {
            for t in mul(s)?.summands {
                *out.entry(t.id).or_default() += m * t.multiplicity;
            }
        }
        Ok(out)
    }
}

fn coprime_stride(total: usize) -> usize {
    let mut s = 7919;
    while num_integer::gcd(s, total) != 1 {
        s += 2;
    }
    s
}
