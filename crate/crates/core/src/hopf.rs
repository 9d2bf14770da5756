//! The bicrossed product `H = k^G τ#_σ kF` on the basis `p_g # f`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::checks::{budget_radius, scope_for, witness, LawCheck, Section, Witness};
use crate::checks::{BINARY_BUDGET, TERNARY_BUDGET};
use crate::cocycles::Cocycles;
use crate::cyclotomic::{CycNum, Rational};
use crate::groups::{FElem, GroupInterface};
use crate::matched_pair::MatchedPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("the *-structure needs unitary cocycles; first failing value: {0:?}")]
    NotUnitary(Witness),
}

/// The basis element `p_g # f`. Ordered by `f`, then `g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisKey {
    pub f: FElem,
    pub g: usize,
}

impl BasisKey {
    pub fn new(g: usize, f: FElem) -> Self {
        BasisKey { f, g }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{}#{}", self.g, self.f)
    }
}

/// A finitely supported element of `H`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HElem {
    terms: BTreeMap<BasisKey, CycNum>,
}

impl HElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: usize, f: FElem) -> Self {
        let mut h = Self::zero();
        h.add_term(BasisKey::new(g, f), CycNum::one());
        h
    }

    pub fn add_term(&mut self, key: BasisKey, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &HElem) -> HElem {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HElem) -> HElem {
        self.add(&other.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> HElem {
        if c.is_zero() {
            return HElem::zero();
        }
        HElem {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> CycNum {
        self.terms.get(key).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &CycNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl FromIterator<(BasisKey, CycNum)> for HElem {
    fn from_iter<I: IntoIterator<Item = (BasisKey, CycNum)>>(iter: I) -> Self {
        let mut h = HElem::zero();
        for (k, c) in iter {
            h.add_term(k, c);
        }
        h
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    k.to_string()
                } else {
                    format!("({c})·{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermView<'a> {
    g: usize,
    f: &'a FElem,
    coeff: &'a CycNum,
}

impl Serialize for HElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&TermView {
                g: k.g,
                f: &k.f,
                coeff: c,
            })?;
        }
        seq.end()
    }
}

/// A finitely supported element of `H ⊗ H`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HTensor {
    terms: BTreeMap<(BasisKey, BasisKey), CycNum>,
}

impl HTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: BasisKey, b: BasisKey, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &HElem, b: &HElem) -> Self {
        let mut t = HTensor::zero();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                t.add_term(ka.clone(), kb.clone(), ca * cb);
            }
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BasisKey, BasisKey), &CycNum)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

type Triple = BTreeMap<(BasisKey, BasisKey, BasisKey), CycNum>;

fn add_triple(t: &mut Triple, key: (BasisKey, BasisKey, BasisKey), c: CycNum) {
    if c.is_zero() {
        return;
    }
    let entry = t.entry(key).or_insert_with(CycNum::zero);
    *entry = &*entry + &c;
}

fn trim_triple(t: Triple) -> Triple {
    t.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// The Hopf algebra determined by a matched pair and cocycle data.
#[derive(Debug, Clone)]
pub struct Bicrossed {
    mp: Arc<MatchedPair>,
    coc: Cocycles,
}

impl Bicrossed {
    pub fn new(mp: Arc<MatchedPair>, coc: Cocycles) -> Self {
        Bicrossed { mp, coc }
    }

    pub fn matched_pair(&self) -> &MatchedPair {
        &self.mp
    }

    pub fn matched_pair_arc(&self) -> &Arc<MatchedPair> {
        &self.mp
    }

    pub fn cocycles(&self) -> &Cocycles {
        &self.coc
    }

    fn g_order(&self) -> usize {
        self.mp.g().order()
    }

    /// `Σ_g p_g # 1_F`.
    pub fn unit(&self) -> HElem {
        let one = self.mp.f_identity();
        (0..self.g_order())
            .map(|g| (BasisKey::new(g, one.clone()), CycNum::one()))
            .collect()
    }

    /// `(p_g#f)(p_g'#f') = δ_{g⊲f,g'} σ(g;f,f') p_g # ff'`.
    pub fn mul_basis(&self, a: &BasisKey, b: &BasisKey) -> Option<(BasisKey, CycNum)> {
        if self.mp.act_left(a.g, &a.f) != b.g {
            return None;
        }
        let c = self.coc.sigma.eval(a.g, &a.f, &b.f);
        Some((BasisKey::new(a.g, self.mp.f_mul(&a.f, &b.f)), c))
    }

    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (ka, ca) in a.terms() {
            let target = self.mp.act_left(ka.g, &ka.f);
            for (kb, cb) in b.terms() {
                if kb.g != target {
                    continue;
                }
                let (k, s) = self.mul_basis(ka, kb).expect("checked δ condition");
                out.add_term(k, s * ca * cb);
            }
        }
        out
    }

    /// `Δ(p_g#f) = Σ_x τ(gx⁻¹, x; f) (p_{gx⁻¹} # x▷f) ⊗ (p_x # f)`.
    pub fn comul_basis(&self, k: &BasisKey) -> Vec<(BasisKey, BasisKey, CycNum)> {
        let g = self.mp.g();
        (0..g.order())
            .map(|x| {
                let gx = g.mul(k.g, g.inv(x));
                let c = self.coc.tau.eval(gx, x, &k.f);
                (
                    BasisKey::new(gx, self.mp.act_right(x, &k.f)),
                    BasisKey::new(x, k.f.clone()),
                    c,
                )
            })
            .collect()
    }

    pub fn comul(&self, a: &HElem) -> HTensor {
        let mut t = HTensor::zero();
        for (k, c) in a.terms() {
            for (l, r, s) in self.comul_basis(k) {
                t.add_term(l, r, s * c);
            }
        }
        t
    }

    /// `ε(p_g#f) = δ_{g,1}`.
    pub fn counit(&self, a: &HElem) -> CycNum {
        let e = self.mp.g().identity();
        a.terms()
            .filter(|(k, _)| k.g == e)
            .fold(CycNum::zero(), |acc, (_, c)| acc + c)
    }

    /// `S(p_g#f) = σ(g⁻¹; g▷f, (g▷f)⁻¹)⁻¹ τ(g⁻¹,g;f)⁻¹ p_{(g⊲f)⁻¹} # (g▷f)⁻¹`.
    pub fn antipode_basis(&self, k: &BasisKey) -> (BasisKey, CycNum) {
        let g = self.mp.g();
        let gi = g.inv(k.g);
        let gf = self.mp.act_right(k.g, &k.f);
        let gf_inv = self.mp.f_inv(&gf);
        let c = self.coc.sigma.eval(gi, &gf, &gf_inv) * self.coc.tau.eval(gi, k.g, &k.f);
        let c = c.inv().expect("cocycle values are nonzero");
        (BasisKey::new(g.inv(self.mp.act_left(k.g, &k.f)), gf_inv), c)
    }

    pub fn antipode(&self, a: &HElem) -> HElem {
        a.terms()
            .map(|(k, c)| {
                let (k2, s) = self.antipode_basis(k);
                (k2, s * c)
            })
            .collect()
    }

    /// `(p_g#f)* = conj(σ(g;f,f⁻¹)) p_{g⊲f} # f⁻¹`, extended conjugate-linearly.
    pub fn star(&self, a: &HElem) -> Result<HElem, HopfError> {
        if let (false, Some(w)) = self.coc.is_unitary() {
            return Err(HopfError::NotUnitary(w));
        }
        Ok(a.terms()
            .map(|(k, c)| {
                let finv = self.mp.f_inv(&k.f);
                let s = self.coc.sigma.eval(k.g, &k.f, &finv).conj();
                (
                    BasisKey::new(self.mp.act_left(k.g, &k.f), finv),
                    s * c.conj(),
                )
            })
            .collect())
    }

    /// `⟨T, p_g#f⟩ = δ_{f,1}/|G|`.
    pub fn integral(&self, a: &HElem) -> CycNum {
        let one = self.mp.f_identity();
        let total = a
            .terms()
            .filter(|(k, _)| k.f == one)
            .fold(CycNum::zero(), |acc, (_, c)| acc + c);
        total.scale(&Rational::new(
            BigInt::from(1),
            BigInt::from(self.g_order() as u64),
        ))
    }

    /// `⟨x, y⟩_r = ⟨T, y* x⟩`.
    pub fn haar_gram(&self, x: &HElem, y: &HElem) -> Result<CycNum, HopfError> {
        Ok(self.integral(&self.mul(&self.star(y)?, x)))
    }

    /// `m ∘ (S ⊗ id)` or `m ∘ (id ⊗ S)` applied to a tensor.
    fn mul_legs(&self, t: &HTensor, left_s: bool, right_s: bool) -> HElem {
        let mut out = HElem::zero();
        for ((a, b), c) in t.terms() {
            let (a, ca) = if left_s {
                self.antipode_basis(a)
            } else {
                (a.clone(), CycNum::one())
            };
            let (b, cb) = if right_s {
                self.antipode_basis(b)
            } else {
                (b.clone(), CycNum::one())
            };
            if let Some((k, s)) = self.mul_basis(&a, &b) {
                out.add_term(k, s * ca * cb * c);
            }
        }
        out
    }

    /// `m ∘ Δ`.
    pub fn mul_delta(&self, a: &HElem) -> HElem {
        self.mul_legs(&self.comul(a), false, false)
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn tensor_mul(&self, x: &HTensor, y: &HTensor) -> HTensor {
        let mut out = HTensor::zero();
        for ((a, b), c) in x.terms() {
            for ((a2, b2), c2) in y.terms() {
                if let (Some((l, s1)), Some((r, s2))) =
                    (self.mul_basis(a, a2), self.mul_basis(b, b2))
                {
                    out.add_term(l, r, s1 * s2 * c * c2);
                }
            }
        }
        out
    }

    fn basis_in_ball(&self, radius: u32) -> Vec<BasisKey> {
        let mut keys = Vec::new();
        for f in self.mp.f().ball(radius) {
            for g in 0..self.g_order() {
                keys.push(BasisKey::new(g, f.clone()));
            }
        }
        keys
    }

    /// Every Hopf axiom on basis elements with `f` in the ball. Laws in one
    /// basis element use the full radius; laws in two or three use the
    /// largest sub-radius within the instance budget.
    pub fn verify(&self, radius: u32) -> Section {
        let fg = self.mp.f();
        let n = self.g_order() as u64;
        let scope = scope_for(fg, radius);
        let r2 = budget_radius(fg, radius, n, 2, BINARY_BUDGET);
        let r3 = budget_radius(fg, radius, n, 3, TERNARY_BUDGET);
        let basis = self.basis_in_ball(radius);
        let basis2 = self.basis_in_ball(r2);
        let basis3 = self.basis_in_ball(r3);
        let unit = self.unit();
        let kw = |k: &BasisKey| witness([("g", k.g.to_string()), ("f", k.f.to_string())]);
        let kw2 =
            |a: &BasisKey, b: &BasisKey| witness([("a", a.to_string()), ("b", b.to_string())]);

        let mut unit_law = LawCheck::new("1·b = b = b·1", scope);
        let mut coassoc = LawCheck::new("(Δ⊗id)Δ = (id⊗Δ)Δ", scope);
        let mut counit_law = LawCheck::new("(ε⊗id)Δ = id = (id⊗ε)Δ", scope);
        let mut antipode_law = LawCheck::new("m(S⊗id)Δ = ε(·)1 = m(id⊗S)Δ", scope);
        let mut s2 = LawCheck::new("S² = id", scope);
        let mut integral_law = LawCheck::new("b₍₁₎⟨T,b₍₂₎⟩ = ⟨T,b⟩1", scope);
        let mut unit_maps = LawCheck::new("Δ(1) = 1⊗1, ε(1) = 1, ⟨T,1⟩ = 1", scope);
        let mut assoc = LawCheck::new("(ab)c = a(bc)", scope_for(fg, r3));
        let mut delta_mult = LawCheck::new("Δ(ab) = Δ(a)Δ(b)", scope_for(fg, r2));
        let mut eps_mult = LawCheck::new("ε(ab) = ε(a)ε(b)", scope_for(fg, r2));
        let mut s_anti = LawCheck::new("S(ab) = S(b)S(a)", scope_for(fg, r2));

        unit_maps.record(
            self.comul(&unit) == HTensor::pure(&unit, &unit)
                && self.counit(&unit).is_one()
                && self.integral(&unit).is_one(),
            || witness([("element", "1".to_string())]),
        );

        for k in &basis {
            let b = HElem::basis(k.g, k.f.clone());
            unit_law.record(self.mul(&unit, &b) == b && self.mul(&b, &unit) == b, || {
                kw(k)
            });

            let delta = self.comul_basis(k);
            let mut left = Triple::new();
            let mut right = Triple::new();
            let mut eps_left = HElem::zero();
            let mut eps_right = HElem::zero();
            let mut int_side = HElem::zero();
            for (l, r, c) in &delta {
                for (ll, lr, c2) in self.comul_basis(l) {
                    add_triple(&mut left, (ll, lr, r.clone()), c2 * c);
                }
                for (rl, rr, c2) in self.comul_basis(r) {
                    add_triple(&mut right, (l.clone(), rl, rr), c2 * c);
                }
                let e = self.mp.g().identity();
                if l.g == e {
                    eps_left.add_term(r.clone(), c.clone());
                }
                if r.g == e {
                    eps_right.add_term(l.clone(), c.clone());
                }
                let tr = self.integral(&HElem::basis(r.g, r.f.clone()));
                int_side.add_term(l.clone(), c * &tr);
            }
            coassoc.record(trim_triple(left) == trim_triple(right), || kw(k));
            counit_law.record(eps_left == b && eps_right == b, || kw(k));
            let t = self.comul(&b);
            let expect = unit.scale(&self.counit(&b));
            antipode_law.record(
                self.mul_legs(&t, true, false) == expect
                    && self.mul_legs(&t, false, true) == expect,
                || kw(k),
            );
            s2.record(self.antipode(&self.antipode(&b)) == b, || kw(k));
            integral_law.record(int_side == unit.scale(&self.integral(&b)), || kw(k));
        }

        for a in &basis2 {
            let ea = HElem::basis(a.g, a.f.clone());
            let da = self.comul(&ea);
            for b in &basis2 {
                let eb = HElem::basis(b.g, b.f.clone());
                let ab = self.mul(&ea, &eb);
                delta_mult.record(
                    self.comul(&ab) == self.tensor_mul(&da, &self.comul(&eb)),
                    || kw2(a, b),
                );
                eps_mult.record(
                    self.counit(&ab) == self.counit(&ea) * self.counit(&eb),
                    || kw2(a, b),
                );
                s_anti.record(
                    self.antipode(&ab) == self.mul(&self.antipode(&eb), &self.antipode(&ea)),
                    || kw2(a, b),
                );
            }
        }

        for a in &basis3 {
            for b in &basis3 {
                let ab = self.mul_basis(a, b);
                for c in &basis3 {
                    let lhs = ab
                        .as_ref()
                        .and_then(|(k, s)| self.mul_basis(k, c).map(|(k2, s2)| (k2, s2 * s)));
                    let rhs = self
                        .mul_basis(b, c)
                        .and_then(|(k, s)| self.mul_basis(a, &k).map(|(k2, s2)| (k2, s2 * s)));
                    assoc.record(lhs == rhs, || {
                        witness([
                            ("a", a.to_string()),
                            ("b", b.to_string()),
                            ("c", c.to_string()),
                        ])
                    });
                }
            }
        }
        Section::new(
            "hopf",
            vec![
                unit_maps,
                unit_law,
                assoc,
                coassoc,
                counit_law,
                eps_mult,
                delta_mult,
                antipode_law,
                s_anti,
                s2,
                integral_law,
            ],
        )
    }

    /// The algebraic compact-quantum-group checks: unitarity of the cocycles,
    /// `x** = x`, `(xy)* = y*x*`, conjugate linearity, `Δ(x*) = Δ(x)*⊗*`,
    /// and `⟨b,b⟩_r = 1/|G|`, `⟨b,b'⟩_r = 0` on basis elements.
    pub fn verify_star(&self, radius: u32) -> Result<Section, HopfError> {
        let (ok, w) = self.coc.is_unitary();
        if !ok {
            return Err(HopfError::NotUnitary(w.unwrap_or_default()));
        }
        let fg = self.mp.f();
        let n = self.g_order() as u64;
        let scope = scope_for(fg, radius);
        let r2 = budget_radius(fg, radius, n, 2, BINARY_BUDGET / 4);
        let basis = self.basis_in_ball(radius);
        let basis2 = self.basis_in_ball(r2);
        let kw = |k: &BasisKey| witness([("g", k.g.to_string()), ("f", k.f.to_string())]);
        let inv_g = CycNum::from_rational(Rational::new(BigInt::from(1), BigInt::from(n)));
        let i = CycNum::root_of_unity(1, 4);

        let mut involution = LawCheck::new("x** = x", scope);
        let mut conj_lin = LawCheck::new("(i·x)* = -i·x*", scope);
        let mut coalg = LawCheck::new("Δ(x*) = (*⊗*)Δ(x)", scope);
        let mut norm = LawCheck::new("⟨b,b⟩_r = 1/|G|", scope);
        let mut anti = LawCheck::new("(xy)* = y*x*", scope_for(fg, r2));
        let mut ortho = LawCheck::new("⟨b,b'⟩_r = 0 for b ≠ b'", scope_for(fg, r2));
        let mut unit_star = LawCheck::new("1* = 1", scope);

        let unit = self.unit();
        unit_star.record(self.star(&unit)? == unit, || {
            witness([("element", "1".to_string())])
        });
        for k in &basis {
            let b = HElem::basis(k.g, k.f.clone());
            let bs = self.star(&b)?;
            involution.record(self.star(&bs)? == b, || kw(k));
            conj_lin.record(self.star(&b.scale(&i))? == bs.scale(&-i.clone()), || kw(k));
            let mut lhs = HTensor::zero();
            for (l, r, c) in self.comul_basis(k) {
                let ls = self.star(&HElem::basis(l.g, l.f.clone()))?;
                let rs = self.star(&HElem::basis(r.g, r.f.clone()))?;
                for (kl, cl) in ls.terms() {
                    for (kr, cr) in rs.terms() {
                        lhs.add_term(kl.clone(), kr.clone(), c.conj() * cl * cr);
                    }
                }
            }
            coalg.record(self.comul(&bs) == lhs, || kw(k));
            norm.record(self.haar_gram(&b, &b)? == inv_g, || kw(k));
        }
        for a in &basis2 {
            let ea = HElem::basis(a.g, a.f.clone());
            let sa = self.star(&ea)?;
            for b in &basis2 {
                let eb = HElem::basis(b.g, b.f.clone());
                let lhs = self.star(&self.mul(&ea, &eb))?;
                anti.record(lhs == self.mul(&self.star(&eb)?, &sa), || {
                    witness([("a", a.to_string()), ("b", b.to_string())])
                });
                if a != b {
                    ortho.record(self.haar_gram(&ea, &eb)?.is_zero(), || {
                        witness([("a", a.to_string()), ("b", b.to_string())])
                    });
                }
            }
        }
        Ok(Section::new(
            "compact quantum group",
            vec![unit_star, involution, conj_lin, anti, coalg, norm, ortho],
        ))
    }

    /// Exact Haar positivity for a rational-coefficient element: returns the
    /// value of `⟨x,x⟩_r` when it is a positive rational, `None` otherwise.
    pub fn certified_positive(&self, x: &HElem) -> Result<Option<Rational>, HopfError> {
        let v = self.haar_gram(x, x)?;
        Ok(v.to_rational().filter(|r| *r > Rational::zero()))
    }
}
