//! Matched pairs `(F, G, ⊲, ▷)`: the left action `▷` of `G` on `F`, the
//! right action `⊲` of `F` on `G`, their laws, and orbit machinery.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::checks::{budget_radius, scope_for, witness, LawCheck, Scope, Section, BINARY_BUDGET};
use crate::groups::{FElem, FGroup, FiniteGroup, GroupInterface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchedPairError {
    #[error("action table: {0}")]
    BadTable(String),
    #[error("linear action: {0}")]
    BadMatrix(String),
    #[error("linear action is not a homomorphism: M({a}·{b}) != M({a})·M({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("{0}")]
    Unsupported(String),
}

/// How the two actions are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Actions {
    /// Finite `F`: `right[g·|F| + f] = g ▷ f`, `left[g·|F| + f] = g ⊲ f`.
    Tables { right: Vec<usize>, left: Vec<usize> },
    /// Free abelian `F = ℤ^r`: `g ▷ v = M_g v` with `⊲` trivial. Matrices are
    /// row-major `r×r`, one per element of `G`.
    Linear { matrices: Vec<Vec<i64>> },
}

/// A validated pair of groups with actions. Law verification is separate
/// (see [`MatchedPair::verify`]).
#[derive(Debug)]
pub struct MatchedPair {
    g: Arc<FiniteGroup>,
    f: FGroup,
    actions: Actions,
    orbit_cache: Mutex<HashMap<FElem, Arc<Orbit>>>,
}

impl MatchedPair {
    /// Finite `F` with explicit tables `right[g][f] = g ▷ f`, `left[g][f] = g ⊲ f`.
    pub fn from_tables(
        g: FiniteGroup,
        f: FiniteGroup,
        right: &[Vec<usize>],
        left: &[Vec<usize>],
    ) -> Result<Self, MatchedPairError> {
        let (ng, nf) = (g.order(), f.order());
        let flatten = |t: &[Vec<usize>], name: &str, bound: usize| {
            if t.len() != ng {
                return Err(MatchedPairError::BadTable(format!(
                    "{name} has {} rows, expected |G| = {ng}",
                    t.len()
                )));
            }
            let mut out = Vec::with_capacity(ng * nf);
            for (i, row) in t.iter().enumerate() {
                if row.len() != nf {
                    return Err(MatchedPairError::BadTable(format!(
                        "{name} row {i} has {} entries, expected |F| = {nf}",
                        row.len()
                    )));
                }
                for (j, &v) in row.iter().enumerate() {
                    if v >= bound {
                        return Err(MatchedPairError::BadTable(format!(
                            "{name}[{i}][{j}] = {v} out of range"
                        )));
                    }
                    out.push(v);
                }
            }
            Ok(out)
        };
        let right = flatten(right, "right action table", nf)?;
        let left = flatten(left, "left action table", ng)?;
        Ok(Self::assemble(
            g,
            FGroup::finite(f),
            Actions::Tables { right, left },
        ))
    }

    /// Both actions trivial: `g ▷ f = f`, `g ⊲ f = g`.
    pub fn trivial(g: FiniteGroup, f: FGroup) -> Self {
        let actions = match &f {
            FGroup::Finite(fg) => {
                let (ng, nf) = (g.order(), fg.order());
                Actions::Tables {
                    right: (0..ng * nf).map(|i| i % nf).collect(),
                    left: (0..ng * nf).map(|i| i / nf).collect(),
                }
            }
            FGroup::FreeAbelian(r) => Actions::Linear {
                matrices: vec![identity_matrix(*r); g.order()],
            },
        };
        Self::assemble(g, f, actions)
    }

    /// `F = G` with `g ▷ f = g f g⁻¹` and trivial `⊲`: the pair behind the
    /// Drinfeld double.
    pub fn conjugation(g: FiniteGroup) -> Self {
        let n = g.order();
        let right = (0..n * n).map(|i| g.conjugate(i / n, i % n)).collect();
        let left = (0..n * n).map(|i| i / n).collect();
        let f = FGroup::finite(g.clone());
        Self::assemble(g, f, Actions::Tables { right, left })
    }

    /// `F = ℤ^r` with one integer matrix per element of `G`.
    pub fn linear(
        g: FiniteGroup,
        rank: usize,
        matrices: Vec<Vec<i64>>,
    ) -> Result<Self, MatchedPairError> {
        if matrices.len() != g.order() {
            return Err(MatchedPairError::BadMatrix(format!(
                "{} matrices given for a group of order {}",
                matrices.len(),
                g.order()
            )));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.len() != rank * rank {
                return Err(MatchedPairError::BadMatrix(format!(
                    "matrix for element {i} has {} entries, expected {}",
                    m.len(),
                    rank * rank
                )));
            }
        }
        if matrices[g.identity()] != identity_matrix(rank) {
            return Err(MatchedPairError::BadMatrix(
                "identity of G must act as the identity matrix".into(),
            ));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if matrices[g.mul(a, b)] != mat_mul(&matrices[a], &matrices[b], rank) {
                    return Err(MatchedPairError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self::assemble(
            g,
            FGroup::FreeAbelian(rank),
            Actions::Linear { matrices },
        ))
    }

    /// Extends generator matrices to all of `G` by `M_{xs} = M_x M_s`, then
    /// validates as in [`MatchedPair::linear`].
    pub fn linear_from_generators(
        g: FiniteGroup,
        rank: usize,
        gens: &[(usize, Vec<i64>)],
    ) -> Result<Self, MatchedPairError> {
        let n = g.order();
        let mut mats: Vec<Option<Vec<i64>>> = vec![None; n];
        mats[g.identity()] = Some(identity_matrix(rank));
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, ms) in gens {
                if *s >= n || ms.len() != rank * rank {
                    return Err(MatchedPairError::BadMatrix(format!(
                        "malformed generator entry for element {s}"
                    )));
                }
                let y = g.mul(x, *s);
                let my = mat_mul(mats[x].as_ref().unwrap(), ms, rank);
                match &mats[y] {
                    Some(existing) if *existing != my => {
                        return Err(MatchedPairError::NotHomomorphism { a: x, b: *s });
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let matrices = mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    MatchedPairError::BadMatrix(format!("generators do not reach element {i}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::linear(g, rank, matrices)
    }

    fn assemble(g: FiniteGroup, f: FGroup, actions: Actions) -> Self {
        MatchedPair {
            g: Arc::new(g),
            f,
            actions,
            orbit_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn f(&self) -> &FGroup {
        &self.f
    }

    pub fn actions(&self) -> &Actions {
        &self.actions
    }

    /// True when `g ⊲ f = g` for all inputs.
    pub fn left_action_trivial(&self) -> bool {
        match &self.actions {
            Actions::Linear { .. } => true,
            Actions::Tables { left, .. } => {
                let nf = left.len() / self.g.order();
                left.iter().enumerate().all(|(i, &v)| v == i / nf)
            }
        }
    }

    /// `g ▷ f`.
    pub fn act_right(&self, g: usize, f: &FElem) -> FElem {
        match (&self.actions, f) {
            (Actions::Tables { right, .. }, FElem::Finite(i)) => {
                let nf = right.len() / self.g.order();
                FElem::Finite(right[g * nf + i])
            }
            (Actions::Linear { matrices }, FElem::Vector(v)) => {
                if g == self.g.identity() {
                    return f.clone();
                }
                let m = &matrices[g];
                let r = v.len();
                FElem::Vector(
                    (0..r)
                        .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
                        .collect(),
                )
            }
            _ => panic!("element {f} does not belong to F"),
        }
    }

    /// `g ⊲ f`.
    pub fn act_left(&self, g: usize, f: &FElem) -> usize {
        match (&self.actions, f) {
            (Actions::Tables { left, .. }, FElem::Finite(i)) => {
                let nf = left.len() / self.g.order();
                left[g * nf + i]
            }
            (Actions::Linear { .. }, FElem::Vector(_)) => g,
            _ => panic!("element {f} does not belong to F"),
        }
    }

    pub fn f_mul(&self, a: &FElem, b: &FElem) -> FElem {
        self.f.mul(a, b)
    }

    pub fn f_inv(&self, a: &FElem) -> FElem {
        self.f.inv(a)
    }

    pub fn f_identity(&self) -> FElem {
        self.f.identity()
    }

    /// Checks the action laws, the two matched-pair laws and the identities
    /// of the inverse lemma for all `g, g' ∈ G` and `f, f'` in the ball.
    /// Laws with two `F`-arguments use the largest sub-radius within budget.
    pub fn verify(&self, radius: u32) -> Section {
        let g = &*self.g;
        let n = g.order();
        let ball = self.f.ball(radius);
        let scope = scope_for(&self.f, radius);
        let r2 = budget_radius(&self.f, radius, n as u64, 2, BINARY_BUDGET);
        let ball2 = self.f.ball(r2);
        let scope2 = scope_for(&self.f, r2);
        let one_f = self.f_identity();
        let one_g = g.identity();
        let gs = |x: usize| x.to_string();

        let mut id_right = LawCheck::new("1_G ▷ f = f", scope);
        let mut id_left = LawCheck::new("1_G ⊲ f = 1_G", scope);
        let mut unit_right = LawCheck::new("g ▷ 1_F = 1_F", scope);
        let mut unit_left = LawCheck::new("g ⊲ 1_F = g", scope);
        let mut act_comp = LawCheck::new("(gg') ▷ f = g ▷ (g' ▷ f)", scope);
        let mut mp_left = LawCheck::new("(gg') ⊲ f = (g ⊲ (g' ▷ f))(g' ⊲ f)", scope);
        let mut inv_right = LawCheck::new("(g ▷ f)⁻¹ = (g ⊲ f) ▷ f⁻¹", scope);
        let mut inv_left = LawCheck::new("(g ⊲ f)⁻¹ = g⁻¹ ⊲ (g ▷ f)", scope);
        let mut range = LawCheck::new("g ▷ f ∈ F", scope);
        let mut mp_right = LawCheck::new("g ▷ (ff') = (g ▷ f)((g ⊲ f) ▷ f')", scope2);
        let mut left_comp = LawCheck::new("g ⊲ (ff') = (g ⊲ f) ⊲ f'", scope2);

        for f in &ball {
            id_right.record(self.act_right(one_g, f) == *f, || {
                witness([("f", f.to_string())])
            });
            id_left.record(self.act_left(one_g, f) == one_g, || {
                witness([("f", f.to_string())])
            });
        }
        for x in 0..n {
            unit_right.record(self.act_right(x, &one_f) == one_f, || {
                witness([("g", gs(x))])
            });
            unit_left.record(self.act_left(x, &one_f) == x, || witness([("g", gs(x))]));
            for f in &ball {
                let xf = self.act_right(x, f);
                let xlf = self.act_left(x, f);
                range.record(self.f.contains(&xf), || {
                    witness([("g", gs(x)), ("f", f.to_string())])
                });
                inv_right.record(
                    self.f_inv(&xf) == self.act_right(xlf, &self.f_inv(f)),
                    || witness([("g", gs(x)), ("f", f.to_string())]),
                );
                inv_left.record(g.inv(xlf) == self.act_left(g.inv(x), &xf), || {
                    witness([("g", gs(x)), ("f", f.to_string())])
                });
                for y in 0..n {
                    let xy = g.mul(x, y);
                    let yf = self.act_right(y, f);
                    act_comp.record(self.act_right(xy, f) == self.act_right(x, &yf), || {
                        witness([("g", gs(x)), ("g'", gs(y)), ("f", f.to_string())])
                    });
                    let rhs = g.mul(self.act_left(x, &yf), self.act_left(y, f));
                    mp_left.record(self.act_left(xy, f) == rhs, || {
                        witness([("g", gs(x)), ("g'", gs(y)), ("f", f.to_string())])
                    });
                }
            }
            for f in &ball2 {
                let xf = self.act_right(x, f);
                let xlf = self.act_left(x, f);
                for f2 in &ball2 {
                    let ff = self.f_mul(f, f2);
                    let lhs = self.act_right(x, &ff);
                    let rhs = self.f_mul(&xf, &self.act_right(xlf, f2));
                    mp_right.record(lhs == rhs, || {
                        witness([("g", gs(x)), ("f", f.to_string()), ("f'", f2.to_string())])
                    });
                    left_comp.record(self.act_left(x, &ff) == self.act_left(xlf, f2), || {
                        witness([("g", gs(x)), ("f", f.to_string()), ("f'", f2.to_string())])
                    });
                }
            }
        }
        let mut checks = vec![
            range, id_right, id_left, unit_right, unit_left, act_comp, left_comp, mp_right,
            mp_left, inv_right, inv_left,
        ];
        if let Actions::Linear { matrices } = &self.actions {
            // M a homomorphism into GL_r(ℤ) and ⊲ trivial give every law globally
            let r = self.f.rank().unwrap_or(0);
            let mut hom = LawCheck::new("M(gg') = M(g)M(g') in GL_r(ℤ)", Scope::Global);
            for a in 0..n {
                for b in 0..n {
                    hom.record(
                        matrices[g.mul(a, b)] == mat_mul(&matrices[a], &matrices[b], r),
                        || witness([("g", gs(a)), ("g'", gs(b))]),
                    );
                }
            }
            if hom.passed() {
                for c in &mut checks {
                    c.scope = Scope::Global;
                }
            }
            checks.push(hom);
        }
        Section::new("matched pair", checks)
    }

    /// The orbit of `f`, with canonical representative `min O_f`. Memoized.
    pub fn orbit_of(&self, f: &FElem) -> Arc<Orbit> {
        if let Some(o) = self.orbit_cache.lock().unwrap().get(f) {
            return Arc::clone(o);
        }
        let rep = (0..self.g.order())
            .map(|x| self.act_right(x, f))
            .min()
            .expect("G is nonempty");
        let orbit = Arc::new(self.build_orbit(rep.clone()));
        let mut cache = self.orbit_cache.lock().unwrap();
        let stored = Arc::clone(cache.entry(rep).or_insert(orbit));
        cache.insert(f.clone(), Arc::clone(&stored));
        stored
    }

    fn build_orbit(&self, rep: FElem) -> Orbit {
        let g = &*self.g;
        let n = g.order();
        let images: Vec<FElem> = (0..n).map(|x| self.act_right(x, &rep)).collect();
        let elements: Vec<FElem> = images
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let stabilizer: Vec<usize> = (0..n).filter(|&x| images[x] == rep).collect();
        // right cosets G_f x; identity first, then table order
        let mut transversal = Vec::new();
        let mut coset_of = vec![usize::MAX; n];
        let mut coset = vec![(0usize, 0usize); n];
        let order = std::iter::once(g.identity()).chain((0..n).filter(|&x| x != g.identity()));
        for x in order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let t = transversal.len();
            transversal.push(x);
            for &h in &stabilizer {
                let y = g.mul(h, x);
                coset_of[y] = t;
                coset[y] = (h, t);
            }
        }
        let point_of: Vec<FElem> = transversal
            .iter()
            .map(|&z| self.act_right(g.inv(z), &rep))
            .collect();
        let index_of_point = point_of
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Orbit {
            rep,
            elements,
            stabilizer,
            transversal,
            coset,
            point_of,
            index_of_point,
        }
    }

    /// `G_{f,f⁻¹} = {g : g ▷ f = f⁻¹}`.
    pub fn g_f_finv(&self, f: &FElem) -> Vec<usize> {
        let finv = self.f_inv(f);
        (0..self.g.order())
            .filter(|&x| self.act_right(x, f) == finv)
            .collect()
    }

    /// Canonical representatives of the orbits partitioning `O_1 · O_2`, sorted.
    pub fn orbit_product(&self, o1: &Orbit, o2: &Orbit) -> Vec<FElem> {
        let mut reps = BTreeSet::new();
        let mut covered = BTreeSet::new();
        for x in &o1.elements {
            for y in &o2.elements {
                let p = self.f_mul(x, y);
                if covered.contains(&p) {
                    continue;
                }
                let o = self.orbit_of(&p);
                covered.extend(o.elements.iter().cloned());
                reps.insert(o.rep.clone());
            }
        }
        reps.into_iter().collect()
    }

    /// Distinct orbits meeting the ball, sorted by representative.
    pub fn orbits_in_ball(&self, radius: u32) -> Vec<Arc<Orbit>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for f in self.f.ball(radius) {
            let o = self.orbit_of(&f);
            if seen.insert(o.rep.clone()) {
                out.push(o);
            }
        }
        out.sort_by(|a, b| a.rep.cmp(&b.rep));
        out
    }
}

/// `O_f` with stabilizer `G_f`, transversal `T_f` (right cosets, `1_G` first)
/// and the decomposition `x = g_x z_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: FElem,
    /// Sorted members of the orbit.
    pub elements: Vec<FElem>,
    /// Sorted members of `G_f`.
    pub stabilizer: Vec<usize>,
    pub transversal: Vec<usize>,
    coset: Vec<(usize, usize)>,
    point_of: Vec<FElem>,
    index_of_point: HashMap<FElem, usize>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: &FElem) -> bool {
        self.index_of_point.contains_key(f)
    }

    /// `(g_x, z_x)` with `x = g_x z_x`, `g_x ∈ G_f`, `z_x ∈ T_f`.
    pub fn coset_decomposition(&self, x: usize) -> (usize, usize) {
        let (h, t) = self.coset[x];
        (h, self.transversal[t])
    }

    /// `z⁻¹ ▷ f` for the `i`-th transversal element `z`.
    pub fn point(&self, i: usize) -> &FElem {
        &self.point_of[i]
    }

    /// Index in `T_f` of the unique `z` with `z⁻¹ ▷ f = e`.
    pub fn transversal_index_of(&self, e: &FElem) -> Option<usize> {
        self.index_of_point.get(e).copied()
    }

    pub fn is_unit_orbit(&self, one: &FElem) -> bool {
        self.rep == *one
    }
}

pub fn identity_matrix(r: usize) -> Vec<i64> {
    (0..r * r).map(|i| i64::from(i / r == i % r)).collect()
}

pub fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += aik * b[k * r + j];
            }
        }
    }
    out
}

/// Matrix of the cyclic shift `e_i ↦ e_{i+1}` on `ℤ^p`.
pub fn cyclic_shift_matrix(p: usize) -> Vec<i64> {
    let mut m = vec![0; p * p];
    for i in 0..p {
        m[((i + 1) % p) * p + i] = 1;
    }
    m
}

/// `-I_r`.
pub fn negation_matrix(r: usize) -> Vec<i64> {
    identity_matrix(r).into_iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_z_z2() -> MatchedPair {
        MatchedPair::linear_from_generators(FiniteGroup::cyclic(2), 1, &[(1, vec![-1])]).unwrap()
    }

    fn z_poly(p: usize) -> MatchedPair {
        MatchedPair::linear_from_generators(
            FiniteGroup::cyclic(p),
            p,
            &[(1, cyclic_shift_matrix(p))],
        )
        .unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    fn v(x: &[i64]) -> FElem {
        FElem::vector(x)
    }

    #[test]
    fn actions() {
        let mp = h_z_z2();
        assert_eq!(mp.act_right(1, &v(&[5])), v(&[-5]));
        assert_eq!(mp.act_right(0, &v(&[5])), v(&[5]));
        assert_eq!(mp.act_left(1, &v(&[5])), 1);
        let zp = z_poly(3);
        assert_eq!(zp.act_right(1, &v(&[1, 2, 3])), v(&[3, 1, 2]));
        assert_eq!(zp.act_right(2, &v(&[1, 2, 3])), v(&[2, 3, 1]));
    }

    #[test]
    fn verification_passes_and_upgrades() {
        let rep = h_z_z2().verify(3);
        assert!(rep.passed);
        assert!(rep.checks.iter().all(|c| c.scope == Scope::Global));
        let d = MatchedPair::conjugation(s3()).verify(0);
        assert!(d.passed);
        assert!(d.checks.iter().all(|c| c.scope == Scope::Exhaustive));
    }

    #[test]
    fn non_homomorphic_table_is_caught() {
        // ▷ swaps 1 and 2 in ℤ_3 for g ≠ 1 but also sends 0 to 1: not an action by automorphisms
        let g = FiniteGroup::cyclic(2);
        let f = FiniteGroup::cyclic(3);
        let right = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let left = vec![vec![0, 0, 0], vec![1, 1, 1]];
        assert!(
            MatchedPair::from_tables(g.clone(), f.clone(), &right, &left)
                .unwrap()
                .verify(0)
                .passed
        );
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0]];
        let rep = MatchedPair::from_tables(g, f, &bad, &left)
            .unwrap()
            .verify(0);
        assert!(!rep.passed);
        let mp = rep
            .checks
            .iter()
            .find(|c| c.law.starts_with("g ▷ (ff')"))
            .unwrap();
        assert!(!mp.passed());
        // oracle: brute force search of violating (g, f, f')
        let brute: Vec<(usize, usize)> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| bad[1][(a + b) % 3] != (bad[1][a] + bad[1][b]) % 3)
            .collect();
        assert_eq!(mp.violations as usize, brute.len());
        assert_eq!(mp.witnesses[0]["g"], "1");
    }

    #[test]
    fn linear_rejects_non_homomorphisms() {
        let err = MatchedPair::linear(FiniteGroup::cyclic(2), 1, vec![vec![1], vec![2]]);
        assert!(matches!(err, Err(MatchedPairError::NotHomomorphism { .. })));
        let err = MatchedPair::linear_from_generators(FiniteGroup::cyclic(3), 1, &[(1, vec![-1])]);
        assert!(err.is_err());
    }

    #[test]
    fn orbits() {
        let mp = h_z_z2();
        let o = mp.orbit_of(&v(&[1]));
        assert_eq!(o.rep, v(&[-1]));
        assert_eq!(o.elements, vec![v(&[-1]), v(&[1])]);
        assert_eq!(o.stabilizer, vec![0]);
        assert_eq!(o.transversal, vec![0, 1]);
        let z = mp.orbit_of(&v(&[0]));
        assert_eq!(z.stabilizer, vec![0, 1]);
        assert_eq!(z.transversal, vec![0]);
        let zp = z_poly(3);
        let c = zp.orbit_of(&v(&[2, 2, 2]));
        assert_eq!(c.stabilizer.len(), 3);
        let m = zp.orbit_of(&v(&[1, 0, 0]));
        assert_eq!(m.len(), 3);
        for (i, &z) in m.transversal.iter().enumerate() {
            assert_eq!(*m.point(i), zp.act_right(zp.g().inv(z), &m.rep));
        }
    }

    #[test]
    fn orbit_invariants_on_conjugation_pair() {
        let mp = MatchedPair::conjugation(s3());
        for f in mp.f().ball(0) {
            let o = mp.orbit_of(&f);
            assert_eq!(o.len() * o.stabilizer.len(), 6);
            assert_eq!(o.transversal.len(), o.len());
            assert_eq!(o.transversal[0], 0);
            let pts: BTreeSet<FElem> = (0..o.len()).map(|i| o.point(i).clone()).collect();
            assert_eq!(pts.len(), o.len());
            for x in 0..6 {
                let (h, z) = o.coset_decomposition(x);
                assert!(o.stabilizer.contains(&h));
                assert_eq!(mp.g().mul(h, z), x);
            }
            // three-way equivalence of the inverse lemma
            let nonempty = !mp.g_f_finv(&f).is_empty();
            let finv_in = o.contains(&mp.f_inv(&f));
            let all_in = o.elements.iter().all(|x| o.contains(&mp.f_inv(x)));
            assert_eq!(nonempty, finv_in);
            assert_eq!(finv_in, all_in);
        }
        assert!(!mp.g_f_finv(&FElem::Finite(2)).is_empty());
    }

    #[test]
    fn g_f_finv_examples() {
        let mp = h_z_z2();
        assert_eq!(mp.g_f_finv(&v(&[1])), vec![1]);
        assert_eq!(mp.g_f_finv(&v(&[0])), vec![0, 1]);
    }

    #[test]
    fn orbit_products() {
        let mp = h_z_z2();
        let o1 = mp.orbit_of(&v(&[1]));
        let o2 = mp.orbit_of(&v(&[2]));
        let o0 = mp.orbit_of(&v(&[0]));
        assert_eq!(mp.orbit_product(&o1, &o1), vec![v(&[0]), v(&[-2])]);
        assert_eq!(mp.orbit_product(&o1, &o2), vec![v(&[-1]), v(&[-3])]);
        assert_eq!(mp.orbit_product(&o2, &o0), vec![v(&[-2])]);
        // disjoint union equals the product set
        let mpr = &mp;
        let prod: BTreeSet<FElem> = o1
            .elements
            .iter()
            .flat_map(|x| o2.elements.iter().map(move |y| mpr.f_mul(x, y)))
            .collect();
        let union: BTreeSet<FElem> = mp
            .orbit_product(&o1, &o2)
            .iter()
            .flat_map(|r| mp.orbit_of(r).elements.clone())
            .collect();
        assert_eq!(prod, union);
    }

    #[test]
    fn orbits_in_ball_are_sorted() {
        let mp = h_z_z2();
        let reps: Vec<FElem> = mp.orbits_in_ball(2).iter().map(|o| o.rep.clone()).collect();
        assert_eq!(reps, vec![v(&[0]), v(&[-1]), v(&[-2])]);
    }
}
