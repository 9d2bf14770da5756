//! Finite groups given by multiplication tables, and the group `F` which may
//! be finite or free abelian.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest `|G|` accepted from configuration.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("multiplication table row {row} has length {len}, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table entry ({a},{b}) = {value} is out of range")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("operation is not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group of order {order} exceeds the limit {max}")]
    TooLarge { order: usize, max: usize },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("group is not abelian: {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unknown group name '{0}'")]
    UnknownName(String),
}

/// A validated finite group. Elements are the indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    generators: Option<Vec<usize>>,
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates a full multiplication table (`table[a][b] = a·b`).
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let g = Self::from_rows_unchecked_assoc(rows)?;
        g.check_associative()?;
        Ok(g)
    }

    fn from_rows_unchecked_assoc(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RaggedRow {
                    row: a,
                    len: row.len(),
                    expected: n,
                });
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::OutOfRange { a, b, value: v });
                }
                table.push(v);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or(GroupError::NoInverse(a))?;
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            identity,
            generators: None,
            permutations: None,
        })
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of permutation generators (0-based image lists), enumerated
    /// breadth first from the identity by right multiplication with the
    /// generators. Composition is `(a·b)(i) = a(b(i))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_permutations_bounded(gens, usize::MAX)
    }

    pub fn from_permutations_bounded(gens: &[Vec<usize>], max: usize) -> Result<Self, GroupError> {
        let degree = gens.first().map_or(1, Vec::len);
        for p in gens {
            if p.len() != degree {
                return Err(GroupError::BadPermutation(
                    "generators act on different degrees".into(),
                ));
            }
            let mut seen = vec![false; degree];
            for &i in p {
                if i >= degree || seen[i] {
                    return Err(GroupError::BadPermutation(format!(
                        "{p:?} is not a bijection"
                    )));
                }
                seen[i] = true;
            }
        }
        let compose = |a: &[usize], b: &[usize]| b.iter().map(|&i| a[i]).collect::<Vec<_>>();
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for p in gens {
                let next = compose(&elems[i], p);
                if !index.contains_key(&next) {
                    if elems.len() >= max {
                        return Err(GroupError::TooLarge {
                            order: elems.len() + 1,
                            max,
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let gen_idx: Vec<usize> = gens.iter().map(|p| index[p]).collect();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&compose(a, b)]);
            }
        }
        let mut g = Self::from_flat(n, table)?;
        g.generators = Some(gen_idx);
        g.permutations = Some(elems);
        Ok(g)
    }

    /// `ℤ_n` with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mut g = Self::from_flat(n, table).expect("cyclic table");
        g.generators = Some(if n > 1 { vec![1] } else { vec![] });
        g
    }

    /// Direct product with element `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
            }
        }
        Self::from_flat(n, table).expect("product of groups")
    }

    /// `ℤ_2 × ℤ_2`, element `(a, b)` at index `2a + b`.
    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n <= 1 {
            return Ok(Self::cyclic(1));
        }
        // transposition (0 1) first, then the n-cycle
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations_bounded(&[t, c], 5040)
    }

    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        if n <= 2 {
            return Ok(Self::cyclic(1));
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_permutations_bounded(&gens, 2520)
    }

    /// Dihedral group of order `2m` as symmetries of an `m`-gon.
    pub fn dihedral(m: usize) -> Result<Self, GroupError> {
        if m <= 2 {
            return Ok(match m {
                0 | 1 => Self::cyclic(2),
                _ => Self::klein(),
            });
        }
        let r: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        let s: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
        Self::from_permutations(&[r, s])
    }

    /// Quaternion group as permutations of `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // positions: 1,i,j,k,-1,-i,-j,-k ; left multiplication by i and by j
        let li = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let lj = vec![2, 7, 4, 1, 6, 3, 0, 5];
        Self::from_permutations(&[li, lj]).expect("quaternion group")
    }

    /// Looks up a named group: `S<n>`, `A<n>`, `C<n>`/`Z<n>`, `D<n>` (order `2n`),
    /// `Q8`, `V4`.
    pub fn named(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownName(name.to_string());
        let upper = name.trim().to_ascii_uppercase();
        match upper.as_str() {
            "Q8" => return Ok(Self::quaternion()),
            "V4" | "KLEIN" => return Ok(Self::klein()),
            _ => {}
        }
        let (head, tail) = upper.split_at(1.min(upper.len()));
        let n: usize = tail.parse().map_err(|_| unknown())?;
        match head {
            "S" => Self::symmetric(n),
            "A" => Self::alternating(n),
            "C" | "Z" if n >= 1 => Ok(Self::cyclic(n)),
            "D" if n >= 1 => Self::dihedral(n),
            _ => Err(unknown()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[a].as_slice())
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|a| self.element_order(a))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting().is_none()
    }

    fn first_noncommuting(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order).map(|x| self.conjugate(x, a)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| self.mul(x, a) == self.mul(a, x))
            .collect()
    }

    /// Re-tables a subgroup given as a set of element indices. Returns the new
    /// group and the embedding (new index ↦ old index), sorted ascending.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut emb: Vec<usize> = elems.to_vec();
        emb.sort_unstable();
        emb.dedup();
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        if !pos.contains_key(&self.identity) {
            return Err(GroupError::NotSubgroup("missing identity".into()));
        }
        let m = emb.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &emb {
            for &b in &emb {
                let p = *pos
                    .get(&self.mul(a, b))
                    .ok_or_else(|| GroupError::NotSubgroup(format!("{a}·{b} leaves the subset")))?;
                table.push(p);
            }
        }
        Ok((Self::from_flat(m, table)?, emb))
    }

    /// Invariant factors `d_1 | d_2 | …` with an explicit generating tuple.
    pub fn abelian_invariants(&self) -> Result<AbelianDecomposition, GroupError> {
        if let Some((a, b)) = self.first_noncommuting() {
            return Err(GroupError::NotAbelian(a, b));
        }
        let mut primes = Vec::new();
        let mut rest = self.order;
        let mut p = 2;
        while rest > 1 {
            if rest.is_multiple_of(p) {
                primes.push(p);
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
            p += 1;
        }
        // per prime: cyclic factors (order, generator), decreasing order
        let mut primary: Vec<Vec<(usize, usize)>> = Vec::new();
        for &p in &primes {
            let sylow: Vec<usize> = (0..self.order)
                .filter(|&a| is_power_of(self.element_order(a), p))
                .collect();
            let mut sub: BTreeSet<usize> = BTreeSet::from([self.identity]);
            let mut factors = Vec::new();
            while sub.len() < sylow.len() {
                // element of maximal order modulo the current subgroup
                let (qo, y) = sylow
                    .iter()
                    .map(|&y| (self.order_modulo(y, &sub), y))
                    .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                    .unwrap();
                // adjust by an element of the subgroup so that the order is exact
                let z = sub
                    .iter()
                    .map(|&h| self.mul(y, h))
                    .find(|&z| self.element_order(z) == qo)
                    .expect("p-group basis adjustment always exists");
                factors.push((qo, z));
                let mut next = BTreeSet::new();
                let mut zk = self.identity;
                for _ in 0..qo {
                    for &h in &sub {
                        next.insert(self.mul(zk, h));
                    }
                    zk = self.mul(zk, z);
                }
                sub = next;
            }
            primary.push(factors);
        }
        let k = primary.iter().map(Vec::len).max().unwrap_or(0);
        let mut invariants = Vec::with_capacity(k);
        let mut generators = Vec::with_capacity(k);
        for i in 0..k {
            let mut d = 1;
            let mut g = self.identity;
            for factors in &primary {
                if let Some(&(o, z)) = factors.get(i) {
                    d *= o;
                    g = self.mul(g, z);
                }
            }
            invariants.push(d);
            generators.push(g);
        }
        invariants.reverse();
        generators.reverse();
        Ok(AbelianDecomposition {
            invariants,
            generators,
        })
    }

    fn order_modulo(&self, y: usize, sub: &BTreeSet<usize>) -> usize {
        let mut k = 1;
        let mut x = y;
        while !sub.contains(&x) {
            x = self.mul(x, y);
            k += 1;
        }
        k
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `A ≅ ℤ_{d_1} × … × ℤ_{d_k}` with `generators[i]` of order `invariants[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub invariants: Vec<usize>,
    pub generators: Vec<usize>,
}

impl AbelianDecomposition {
    /// Every element as the product `Π g_i^{e_i}`, listed lexicographically
    /// by exponent tuple. Returns `(exponents, element)` pairs.
    pub fn enumerate(&self, g: &FiniteGroup) -> Vec<(Vec<usize>, usize)> {
        let mut out = vec![(vec![], g.identity())];
        for (&d, &gen) in self.invariants.iter().zip(&self.generators) {
            let mut next = Vec::with_capacity(out.len() * d);
            for (exps, x) in &out {
                let mut y = *x;
                for e in 0..d {
                    let mut v = exps.clone();
                    v.push(e);
                    next.push((v, y));
                    y = g.mul(y, gen);
                }
            }
            out = next;
        }
        out
    }
}

/// Canonical element of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FElem {
    Finite(usize),
    Vector(Box<[i64]>),
}

impl FElem {
    pub fn vector(v: &[i64]) -> Self {
        FElem::Vector(v.into())
    }

    pub fn as_finite(&self) -> Option<usize> {
        match self {
            FElem::Finite(i) => Some(*i),
            FElem::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[i64]> {
        match self {
            FElem::Vector(v) => Some(v),
            FElem::Finite(_) => None,
        }
    }

    fn sup_norm(v: &[i64]) -> u64 {
        v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// Ball radius of the element: sup-norm for vectors, `0` for finite groups.
    pub fn norm(&self) -> u64 {
        match self {
            FElem::Finite(_) => 0,
            FElem::Vector(v) => FElem::sup_norm(v),
        }
    }
}

impl Ord for FElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FElem::Finite(a), FElem::Finite(b)) => a.cmp(b),
            (FElem::Vector(a), FElem::Vector(b)) => FElem::sup_norm(a)
                .cmp(&FElem::sup_norm(b))
                .then_with(|| a.cmp(b)),
            (FElem::Finite(_), FElem::Vector(_)) => Ordering::Less,
            (FElem::Vector(_), FElem::Finite(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for FElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FElem::Finite(i) => write!(f, "{i}"),
            FElem::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            FElem::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

impl Serialize for FElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FElem::Finite(i) => s.serialize_u64(*i as u64),
            FElem::Vector(v) => v.serialize(s),
        }
    }
}

/// The operations a backend for `F` must provide. [`FGroup`] implements it
/// for finite tables and free abelian groups; a new backend (for example a
/// group with solvable word problem and normal forms) plugs in by providing
/// canonical forms, the group law and a finite ball enumeration.
pub trait GroupInterface {
    fn identity(&self) -> FElem;
    fn mul(&self, a: &FElem, b: &FElem) -> FElem;
    fn inv(&self, a: &FElem) -> FElem;
    /// Finite, inversion-closed, identity-containing, nested in `radius`.
    fn ball(&self, radius: u32) -> Vec<FElem>;
    fn is_finite(&self) -> bool;
    /// Checks that `a` is a canonical element of this group.
    fn contains(&self, a: &FElem) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FGroup {
    Finite(Arc<FiniteGroup>),
    FreeAbelian(usize),
}

impl FGroup {
    pub fn finite(g: FiniteGroup) -> Self {
        FGroup::Finite(Arc::new(g))
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            FGroup::FreeAbelian(r) => Some(*r),
            FGroup::Finite(_) => None,
        }
    }

    pub fn finite_group(&self) -> Option<&FiniteGroup> {
        match self {
            FGroup::Finite(g) => Some(g),
            FGroup::FreeAbelian(_) => None,
        }
    }

    /// Parses the textual form produced by `Display` for this backend.
    pub fn parse_elem(&self, s: &str) -> Result<FElem, String> {
        let s = s.trim();
        match self {
            FGroup::Finite(g) => {
                let i: usize = s
                    .parse()
                    .map_err(|_| format!("'{s}' is not an element index"))?;
                if i >= g.order() {
                    return Err(format!(
                        "element index {i} out of range for order {}",
                        g.order()
                    ));
                }
                Ok(FElem::Finite(i))
            }
            FGroup::FreeAbelian(r) => {
                let inner = s
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .unwrap_or(s);
                let v: Vec<i64> = inner
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|_| format!("'{t}' is not an integer"))
                    })
                    .collect::<Result<_, _>>()?;
                if v.len() != *r {
                    return Err(format!("expected a vector of length {r}, got {}", v.len()));
                }
                Ok(FElem::Vector(v.into()))
            }
        }
    }
}

impl GroupInterface for FGroup {
    fn identity(&self) -> FElem {
        match self {
            FGroup::Finite(g) => FElem::Finite(g.identity()),
            FGroup::FreeAbelian(r) => FElem::Vector(vec![0; *r].into()),
        }
    }

    fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        match (self, a, b) {
            (FGroup::Finite(g), FElem::Finite(x), FElem::Finite(y)) => FElem::Finite(g.mul(*x, *y)),
            (FGroup::FreeAbelian(_), FElem::Vector(x), FElem::Vector(y)) => {
                FElem::Vector(x.iter().zip(y.iter()).map(|(p, q)| p + q).collect())
            }
            _ => panic!("element does not belong to this group"),
        }
    }

    fn inv(&self, a: &FElem) -> FElem {
        match (self, a) {
            (FGroup::Finite(g), FElem::Finite(x)) => FElem::Finite(g.inv(*x)),
            (FGroup::FreeAbelian(_), FElem::Vector(x)) => {
                FElem::Vector(x.iter().map(|p| -p).collect())
            }
            _ => panic!("element does not belong to this group"),
        }
    }

    /// Finite: all elements in table order. Free abelian: vectors of sup-norm
    /// at most `radius`, ordered by (sup-norm, lexicographic).
    fn ball(&self, radius: u32) -> Vec<FElem> {
        match self {
            FGroup::Finite(g) => (0..g.order()).map(FElem::Finite).collect(),
            FGroup::FreeAbelian(r) => {
                let r_ = radius as i64;
                let mut vs: Vec<Vec<i64>> = vec![vec![]];
                for _ in 0..*r {
                    vs = vs
                        .into_iter()
                        .flat_map(|v| {
                            (-r_..=r_).map(move |x| {
                                let mut w = v.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                let mut out: Vec<FElem> = vs.into_iter().map(|v| FElem::Vector(v.into())).collect();
                out.sort();
                out
            }
        }
    }

    fn is_finite(&self) -> bool {
        matches!(self, FGroup::Finite(_))
    }

    fn contains(&self, a: &FElem) -> bool {
        match (self, a) {
            (FGroup::Finite(g), FElem::Finite(x)) => *x < g.order(),
            (FGroup::FreeAbelian(r), FElem::Vector(v)) => v.len() == *r,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    /// Oracle: element order census by repeated multiplication.
    fn order_census(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn s3_from_generators() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        // transposition class is found before the 3-cycles
        let classes = g.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(classes[1][0], 1);
        assert_eq!(classes[2][0], 2);
    }

    #[test]
    fn rejects_non_groups() {
        // no identity column
        assert_eq!(
            FiniteGroup::from_table(&[vec![1, 1], vec![1, 1]]),
            Err(GroupError::NoIdentity)
        );
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]]),
            Err(GroupError::RaggedRow { .. })
        ));
        // a loop that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&t),
            Err(GroupError::NotAssociative(..))
        ));
        assert!(FiniteGroup::from_permutations(&[vec![0, 0]]).is_err());
    }

    #[test]
    fn abelian_classes_are_singletons() {
        assert_eq!(
            FiniteGroup::cyclic(2).conjugacy_classes(),
            vec![vec![0], vec![1]]
        );
        assert_eq!(FiniteGroup::cyclic(4).conjugacy_classes().len(), 4);
    }

    #[test]
    fn invariants() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(z2.abelian_invariants().unwrap().invariants, vec![2]);
        let v4 = FiniteGroup::klein();
        assert!(order_census(&v4).iter().all(|&o| o <= 2));
        assert_eq!(v4.abelian_invariants().unwrap().invariants, vec![2, 2]);
        let z6 = FiniteGroup::cyclic(6);
        assert!(order_census(&z6).contains(&6));
        let dec = z6.abelian_invariants().unwrap();
        assert_eq!(dec.invariants, vec![6]);
        assert_eq!(z6.element_order(dec.generators[0]), 6);
        assert!(matches!(
            s3().abelian_invariants(),
            Err(GroupError::NotAbelian(..))
        ));
        let big = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(6));
        let d = big.abelian_invariants().unwrap();
        assert_eq!(d.invariants, vec![2, 12]);
        let all: BTreeSet<usize> = d.enumerate(&big).into_iter().map(|(_, x)| x).collect();
        assert_eq!(all.len(), 24);
        assert!(FiniteGroup::cyclic(1)
            .abelian_invariants()
            .unwrap()
            .invariants
            .is_empty());
    }

    #[test]
    fn named_groups() {
        assert_eq!(FiniteGroup::named("S4").unwrap().order(), 24);
        assert_eq!(FiniteGroup::named("A4").unwrap().order(), 12);
        assert_eq!(FiniteGroup::named("D4").unwrap().order(), 8);
        assert_eq!(FiniteGroup::named("Q8").unwrap().order(), 8);
        assert!(!FiniteGroup::named("Q8").unwrap().is_abelian());
        assert_eq!(FiniteGroup::named("C5").unwrap().exponent(), 5);
        assert!(FiniteGroup::named("X3").is_err());
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.conjugacy_classes().len(), 5);
    }

    #[test]
    fn balls() {
        let z = FGroup::FreeAbelian(1);
        let b: Vec<String> = z.ball(2).iter().map(ToString::to_string).collect();
        assert_eq!(b, vec!["0", "-1", "1", "-2", "2"]);
        assert_eq!(FGroup::finite(s3()).ball(0).len(), 6);
        assert_eq!(FGroup::FreeAbelian(2).ball(1).len(), 9);
        let z2 = FGroup::FreeAbelian(2);
        for r in 0..3 {
            let small = z2.ball(r);
            let big = z2.ball(r + 1);
            assert!(small.iter().all(|x| big.contains(x)));
            assert!(small.iter().all(|x| small.contains(&z2.inv(x))));
            assert!(small.contains(&z2.identity()));
        }
    }

    #[test]
    fn subgroup_retabling() {
        let g = s3();
        let (c, emb) = g.subgroup(&g.centralizer(2)).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(emb[0], 0);
        assert!(g.subgroup(&[0, 1, 2]).is_err());
    }

    #[test]
    fn felem_parsing_and_display() {
        let z3 = FGroup::FreeAbelian(3);
        let v = z3.parse_elem("[1,0,-2]").unwrap();
        assert_eq!(v.to_string(), "[1,0,-2]");
        assert_eq!(
            FGroup::FreeAbelian(1).parse_elem("-4").unwrap().to_string(),
            "-4"
        );
        assert!(z3.parse_elem("[1,2]").is_err());
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,0,-2]");
    }
}
