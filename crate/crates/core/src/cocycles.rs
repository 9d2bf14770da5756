//! The cocycle `σ: G×F×F → k^×`, the co-cocycle `τ: G×G×F → k^×`, their
//! laws, unitarity, and the per-orbit 2-cocycle `β_f`.

use std::collections::HashMap;

use thiserror::Error;

use crate::checks::{budget_radius, scope_for, witness, LawCheck, Scope, Section, Witness};
use crate::checks::{BINARY_BUDGET, TERNARY_BUDGET};
use crate::cyclotomic::CycNum;
use crate::groups::{FElem, FGroup, GroupInterface};
use crate::matched_pair::{MatchedPair, Orbit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("{name} value at {key} is zero")]
    ZeroValue { name: &'static str, key: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("{name} key {key} is invalid: {reason}")]
    BadKey {
        name: &'static str,
        key: String,
        reason: String,
    },
    #[error("β_f fails the 2-cocycle identity at ({a},{b},{c})")]
    BetaNotCocycle { a: usize, b: usize, c: usize },
    #[error("β_f is not normalized at ({a},{b})")]
    BetaNotNormalized { a: usize, b: usize },
}

/// How a cocycle is stored. Unlisted arguments take the value 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    Trivial,
    /// Sparse table on a finite `F`.
    Table,
    /// Sparse table on the finite quotient `ℤ^r → ⊕ ℤ_{m_i}`.
    Quotient(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct Sigma {
    kind: CocycleKind,
    entries: HashMap<(usize, FElem, FElem), CycNum>,
}

#[derive(Clone, Debug)]
pub struct Tau {
    kind: CocycleKind,
    entries: HashMap<(usize, usize, FElem), CycNum>,
}

fn reduce(kind: &CocycleKind, f: &FElem) -> FElem {
    match (kind, f) {
        (CocycleKind::Quotient(m), FElem::Vector(v)) => {
            FElem::Vector(v.iter().zip(m).map(|(x, m)| x.rem_euclid(*m)).collect())
        }
        _ => f.clone(),
    }
}

fn check_kind(kind: &CocycleKind, f: &FGroup, name: &'static str) -> Result<(), CocycleError> {
    match (kind, f) {
        (CocycleKind::Trivial, _) => Ok(()),
        (CocycleKind::Table, FGroup::Finite(_)) => Ok(()),
        (CocycleKind::Table, FGroup::FreeAbelian(_)) => Err(CocycleError::Unsupported(format!(
            "{name}: explicit tables need a finite F; use a quotient table for free abelian F"
        ))),
        (CocycleKind::Quotient(m), FGroup::FreeAbelian(r)) => {
            if m.len() != *r || m.iter().any(|&x| x < 1) {
                return Err(CocycleError::Unsupported(format!(
                    "{name}: quotient modulus must list {r} positive integers"
                )));
            }
            Ok(())
        }
        (CocycleKind::Quotient(_), FGroup::Finite(_)) => Err(CocycleError::Unsupported(format!(
            "{name}: quotient tables apply to free abelian F only"
        ))),
    }
}

fn check_f_key(
    kind: &CocycleKind,
    f: &FGroup,
    x: &FElem,
    name: &'static str,
    key: &str,
) -> Result<(), CocycleError> {
    let bad = |reason: &str| CocycleError::BadKey {
        name,
        key: key.to_string(),
        reason: reason.to_string(),
    };
    match kind {
        CocycleKind::Quotient(m) => {
            let v = x
                .as_vector()
                .ok_or_else(|| bad("expected a residue vector"))?;
            if v.len() != m.len() || v.iter().zip(m).any(|(a, b)| *a < 0 || a >= b) {
                return Err(bad("residues must satisfy 0 <= q_i < m_i"));
            }
            Ok(())
        }
        _ if !f.contains(x) => Err(bad("not an element of F")),
        _ => Ok(()),
    }
}

impl Sigma {
    pub fn trivial() -> Self {
        Sigma {
            kind: CocycleKind::Trivial,
            entries: HashMap::new(),
        }
    }

    /// Sparse table; keys are `(g, f, f')` with `f, f'` elements of `F` (kind
    /// `Table`) or residue vectors (kind `Quotient`).
    pub fn table(
        kind: CocycleKind,
        f: &FGroup,
        g_order: usize,
        entries: Vec<((usize, FElem, FElem), CycNum)>,
    ) -> Result<Self, CocycleError> {
        check_kind(&kind, f, "sigma")?;
        let mut map = HashMap::new();
        for ((g, a, b), v) in entries {
            let key = format!("({g}; {a}, {b})");
            if g >= g_order {
                return Err(CocycleError::BadKey {
                    name: "sigma",
                    key,
                    reason: "G element out of range".into(),
                });
            }
            check_f_key(&kind, f, &a, "sigma", &key)?;
            check_f_key(&kind, f, &b, "sigma", &key)?;
            if v.is_zero() {
                return Err(CocycleError::ZeroValue { name: "sigma", key });
            }
            map.insert((g, a, b), v);
        }
        Ok(Sigma { kind, entries: map })
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.values().all(CycNum::is_one)
    }

    /// `σ(g; f, f')`.
    pub fn eval(&self, g: usize, f: &FElem, f2: &FElem) -> CycNum {
        if self.entries.is_empty() {
            return CycNum::one();
        }
        let key = (g, reduce(&self.kind, f), reduce(&self.kind, f2));
        self.entries.get(&key).cloned().unwrap_or_else(CycNum::one)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, FElem, FElem), &CycNum)> {
        self.entries.iter()
    }
}

impl Tau {
    pub fn trivial() -> Self {
        Tau {
            kind: CocycleKind::Trivial,
            entries: HashMap::new(),
        }
    }

    /// Sparse table keyed by `(g, g', f)`.
    pub fn table(
        kind: CocycleKind,
        f: &FGroup,
        g_order: usize,
        entries: Vec<((usize, usize, FElem), CycNum)>,
    ) -> Result<Self, CocycleError> {
        check_kind(&kind, f, "tau")?;
        let mut map = HashMap::new();
        for ((g, h, a), v) in entries {
            let key = format!("({g}, {h}; {a})");
            if g >= g_order || h >= g_order {
                return Err(CocycleError::BadKey {
                    name: "tau",
                    key,
                    reason: "G element out of range".into(),
                });
            }
            check_f_key(&kind, f, &a, "tau", &key)?;
            if v.is_zero() {
                return Err(CocycleError::ZeroValue { name: "tau", key });
            }
            map.insert((g, h, a), v);
        }
        Ok(Tau { kind, entries: map })
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.values().all(CycNum::is_one)
    }

    /// `τ(g, g'; f)`.
    pub fn eval(&self, g: usize, h: usize, f: &FElem) -> CycNum {
        if self.entries.is_empty() {
            return CycNum::one();
        }
        let key = (g, h, reduce(&self.kind, f));
        self.entries.get(&key).cloned().unwrap_or_else(CycNum::one)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, FElem), &CycNum)> {
        self.entries.iter()
    }
}

/// The pair `(σ, τ)`.
#[derive(Clone, Debug)]
pub struct Cocycles {
    pub sigma: Sigma,
    pub tau: Tau,
}

impl Cocycles {
    pub fn trivial() -> Self {
        Cocycles {
            sigma: Sigma::trivial(),
            tau: Tau::trivial(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.sigma.is_trivial() && self.tau.is_trivial()
    }

    /// Lcm of the levels of all stored values.
    pub fn level(&self) -> u32 {
        use num_integer::Integer;
        self.sigma
            .entries
            .values()
            .chain(self.tau.entries.values())
            .fold(1u32, |acc, v| acc.lcm(&v.level()))
    }

    /// Normalizations, the σ- and τ-cocycle laws and the compatibility
    /// condition, with `F`-arguments drawn from the ball.
    pub fn verify(&self, mp: &MatchedPair, radius: u32) -> Section {
        let g = mp.g();
        let n = g.order();
        let fg = mp.f();
        let one_f = mp.f_identity();
        let one_g = g.identity();
        let s = |x: usize| x.to_string();
        let ball = fg.ball(radius);
        let scope = scope_for(fg, radius);
        let r2 = budget_radius(fg, radius, n as u64, 2, BINARY_BUDGET);
        let r3 = budget_radius(fg, radius, 1, 3, TERNARY_BUDGET / n as u64);
        let ball2 = fg.ball(r2);
        let ball3 = fg.ball(r3);

        let mut sig_norm = LawCheck::new("σ(g;1,f) = σ(g;f,1) = 1", scope);
        let mut sig_norm_g = LawCheck::new("σ(1_G;f,f') = 1", scope_for(fg, r2));
        let mut tau_norm = LawCheck::new("τ(1_G,g;f) = τ(g,1_G;f) = 1", scope);
        let mut tau_norm_f = LawCheck::new("τ(g,g';1_F) = 1", Scope::Exhaustive);
        let mut sig_law = LawCheck::new(
            "σ(g⊲f;f',f'')σ(g;f,f'f'') = σ(g;f,f')σ(g;ff',f'')",
            scope_for(fg, r3),
        );
        let mut tau_law =
            LawCheck::new("τ(g,g';g''▷f)τ(gg',g'';f) = τ(g,g'g'';f)τ(g',g'';f)", scope);
        let mut compat = LawCheck::new(
            "σ(gg';f,f')τ(g,g';ff') = σ(g;g'▷f,(g'⊲f)▷f')σ(g';f,f')τ(g,g';f)τ(g⊲(g'▷f),g'⊲f;f')",
            scope_for(fg, r2),
        );

        for a in 0..n {
            for f in &ball {
                sig_norm.record(
                    self.sigma.eval(a, &one_f, f).is_one()
                        && self.sigma.eval(a, f, &one_f).is_one(),
                    || witness([("g", s(a)), ("f", f.to_string())]),
                );
                tau_norm.record(
                    self.tau.eval(one_g, a, f).is_one() && self.tau.eval(a, one_g, f).is_one(),
                    || witness([("g", s(a)), ("f", f.to_string())]),
                );
            }
            for b in 0..n {
                tau_norm_f.record(self.tau.eval(a, b, &one_f).is_one(), || {
                    witness([("g", s(a)), ("g'", s(b))])
                });
            }
        }
        for f in &ball2 {
            for f2 in &ball2 {
                sig_norm_g.record(self.sigma.eval(one_g, f, f2).is_one(), || {
                    witness([("f", f.to_string()), ("f'", f2.to_string())])
                });
            }
        }
        for a in 0..n {
            for f in &ball3 {
                let alf = mp.act_left(a, f);
                for f2 in &ball3 {
                    let ff2 = mp.f_mul(f, f2);
                    let s12 = self.sigma.eval(a, f, f2);
                    for f3 in &ball3 {
                        let lhs =
                            self.sigma.eval(alf, f2, f3) * self.sigma.eval(a, f, &mp.f_mul(f2, f3));
                        let rhs = &s12 * &self.sigma.eval(a, &ff2, f3);
                        sig_law.record(lhs == rhs, || {
                            witness([
                                ("g", s(a)),
                                ("f", f.to_string()),
                                ("f'", f2.to_string()),
                                ("f''", f3.to_string()),
                            ])
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let bc = g.mul(b, c);
                    for f in &ball {
                        let lhs =
                            self.tau.eval(a, b, &mp.act_right(c, f)) * self.tau.eval(ab, c, f);
                        let rhs = self.tau.eval(a, bc, f) * self.tau.eval(b, c, f);
                        tau_law.record(lhs == rhs, || {
                            witness([
                                ("g", s(a)),
                                ("g'", s(b)),
                                ("g''", s(c)),
                                ("f", f.to_string()),
                            ])
                        });
                    }
                }
                for f in &ball2 {
                    let bf = mp.act_right(b, f);
                    let blf = mp.act_left(b, f);
                    let t_abf = self.tau.eval(a, b, f);
                    let a_l_bf = mp.act_left(a, &bf);
                    for f2 in &ball2 {
                        let lhs =
                            self.sigma.eval(ab, f, f2) * self.tau.eval(a, b, &mp.f_mul(f, f2));
                        let rhs = self.sigma.eval(a, &bf, &mp.act_right(blf, f2))
                            * self.sigma.eval(b, f, f2)
                            * &t_abf
                            * self.tau.eval(a_l_bf, blf, f2);
                        compat.record(lhs == rhs, || {
                            witness([
                                ("g", s(a)),
                                ("g'", s(b)),
                                ("f", f.to_string()),
                                ("f'", f2.to_string()),
                            ])
                        });
                    }
                }
            }
        }
        Section::new(
            "cocycles",
            vec![
                sig_norm, sig_norm_g, tau_norm, tau_norm_f, sig_law, tau_law, compat,
            ],
        )
    }

    /// Whether every value of `σ` and `τ` has modulus one. Unlisted values are
    /// 1, so checking the stored entries decides the question for all
    /// arguments; entries are visited in a fixed order and the first failure
    /// is returned as the witness.
    pub fn is_unitary(&self) -> (bool, Option<Witness>) {
        let mut sig: Vec<_> = self.sigma.entries().collect();
        sig.sort_by(|a, b| a.0.cmp(b.0));
        for ((g, f, f2), v) in sig {
            if !v.is_modulus_one() {
                return (
                    false,
                    Some(witness([
                        ("cocycle", "sigma".to_string()),
                        ("g", g.to_string()),
                        ("f", f.to_string()),
                        ("f'", f2.to_string()),
                        ("value", v.to_string()),
                    ])),
                );
            }
        }
        let mut tau: Vec<_> = self.tau.entries().collect();
        tau.sort_by(|a, b| a.0.cmp(b.0));
        for ((g, h, f), v) in tau {
            if !v.is_modulus_one() {
                return (
                    false,
                    Some(witness([
                        ("cocycle", "tau".to_string()),
                        ("g", g.to_string()),
                        ("g'", h.to_string()),
                        ("f", f.to_string()),
                        ("value", v.to_string()),
                    ])),
                );
            }
        }
        (true, None)
    }

    /// `β_f(a, b) = τ(a, b; f)` on the stabilizer of the orbit representative,
    /// checked for normalization and the 2-cocycle identity.
    pub fn beta_for_orbit(&self, mp: &MatchedPair, orbit: &Orbit) -> Result<Beta, CocycleError> {
        let beta = Beta::from_fn(orbit.stabilizer.clone(), |a, b| {
            self.tau.eval(a, b, &orbit.rep)
        });
        let g = mp.g();
        beta.check_with(|a, b| g.mul(a, b), g.identity())?;
        Ok(beta)
    }
}

/// A 2-cocycle on a subgroup, stored densely over the subgroup's elements
/// (ascending parent indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta {
    pub elements: Vec<usize>,
    values: Vec<CycNum>,
}

impl Beta {
    /// Builds `β` from a closure over parent indices.
    pub fn from_fn(elements: Vec<usize>, f: impl Fn(usize, usize) -> CycNum) -> Self {
        let values = elements
            .iter()
            .flat_map(|&a| elements.iter().map(move |&b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Beta { elements, values }
    }

    /// Value at subgroup positions `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &CycNum {
        &self.values[i * self.elements.len() + j]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(CycNum::is_one)
    }

    /// Normalization and `β(a,b)β(ab,c) = β(a,bc)β(b,c)`, using the parent
    /// multiplication recovered from positions.
    pub fn check_with(
        &self,
        mul: impl Fn(usize, usize) -> usize,
        identity: usize,
    ) -> Result<(), CocycleError> {
        let m = self.elements.len();
        let pos: HashMap<usize, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let e = pos[&identity];
        for i in 0..m {
            if !self.at(e, i).is_one() || !self.at(i, e).is_one() {
                return Err(CocycleError::BetaNotNormalized {
                    a: self.elements[i],
                    b: identity,
                });
            }
        }
        for i in 0..m {
            for j in 0..m {
                let ij = pos[&mul(self.elements[i], self.elements[j])];
                for k in 0..m {
                    let jk = pos[&mul(self.elements[j], self.elements[k])];
                    if self.at(i, j) * self.at(ij, k) != self.at(i, jk) * self.at(j, k) {
                        return Err(CocycleError::BetaNotCocycle {
                            a: self.elements[i],
                            b: self.elements[j],
                            c: self.elements[k],
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
