//! Irreducible (projective) characters of stabilizer subgroups.

mod dixon;

use std::cmp::Ordering;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::cocycles::Beta;
use crate::cyclotomic::CycNum;
use crate::groups::{FiniteGroup, GroupError};
use crate::linalg;

/// Largest central extension handed to the ordinary character provider.
pub const MAX_EXTENSION_ORDER: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("group is not abelian")]
    NotAbelian,
    #[error("cocycle value β({a},{b}) = {value} is not a root of unity")]
    NotRootOfUnity { a: usize, b: usize, value: String },
    #[error("central extension of order {order} exceeds the bound {MAX_EXTENSION_ORDER}")]
    ExtensionTooLarge { order: usize },
    #[error("character table rejected: {0}")]
    Rejected(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A character of a (possibly twisted) group algebra on a subgroup, with
/// values listed in the order of `elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedChar {
    pub elements: Vec<usize>,
    pub values: Vec<CycNum>,
    pub dim: usize,
}

impl TwistedChar {
    /// Value at a parent-group element.
    pub fn at(&self, g: usize) -> Option<&CycNum> {
        self.elements
            .binary_search(&g)
            .ok()
            .map(|i| &self.values[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(CycNum::is_one)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    AbelianDirect,
    ClassAlgebra,
    CentralExtension,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    pub chars: Vec<TwistedChar>,
    pub provenance: Provenance,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

fn dim_of(v: &CycNum) -> Result<usize, RepError> {
    v.to_integer()
        .and_then(|d| usize::try_from(d).ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| {
            RepError::Rejected(format!(
                "value {v} at the identity is not a positive integer"
            ))
        })
}

fn sort_chars(chars: &mut [TwistedChar]) {
    chars.sort_by(|a, b| {
        b.is_trivial()
            .cmp(&a.is_trivial())
            .then(a.dim.cmp(&b.dim))
            .then_with(|| {
                a.values
                    .iter()
                    .zip(&b.values)
                    .map(|(x, y)| x.canonical_cmp(y))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
    });
}

/// Σ dim² = |S|, exact linear independence, and row orthogonality
/// `(1/|S|) Σ χ_i(a) conj(χ_j(a)) = δ_ij`. The conjugate form is valid for
/// twisted characters as long as the cocycle takes unit-modulus values.
fn verify_rows(chars: &[TwistedChar], order: usize) -> Result<(), RepError> {
    let total: usize = chars.iter().map(|c| c.dim * c.dim).sum();
    if total != order {
        return Err(RepError::Rejected(format!(
            "Σ dim² = {total} but the group has order {order}"
        )));
    }
    for (i, a) in chars.iter().enumerate() {
        if a.values.len() != order {
            return Err(RepError::Rejected(format!(
                "character {i} has {} values, expected {order}",
                a.values.len()
            )));
        }
        for (j, b) in chars.iter().enumerate().skip(i) {
            let s = a
                .values
                .iter()
                .zip(&b.values)
                .fold(CycNum::zero(), |acc, (x, y)| acc + x * &y.conj());
            let expected = if i == j {
                CycNum::from_int(order as i64)
            } else {
                CycNum::zero()
            };
            if s != expected {
                return Err(RepError::Rejected(format!(
                    "orthogonality fails for characters {i} and {j}: inner product {s}·|G|⁻¹"
                )));
            }
        }
    }
    let rows: Vec<Vec<CycNum>> = chars.iter().map(|c| c.values.clone()).collect();
    if linalg::rank(&rows) != chars.len() {
        return Err(RepError::Rejected(
            "characters are linearly dependent".into(),
        ));
    }
    Ok(())
}

/// The `|A|` linear characters of an abelian group, listed lexicographically
/// by their exponent tuple against the invariant-factor generators.
pub fn abelian_char_table(a: &FiniteGroup, elements: &[usize]) -> Result<CharTable, RepError> {
    let dec = a.abelian_invariants().map_err(|_| RepError::NotAbelian)?;
    let level = dec.invariants.last().copied().unwrap_or(1).max(1);
    let listing = dec.enumerate(a);
    let mut chars = Vec::with_capacity(a.order());
    for (k, _) in &listing {
        let mut values = vec![CycNum::zero(); a.order()];
        for (e, x) in &listing {
            let exp: usize = k
                .iter()
                .zip(e)
                .zip(&dec.invariants)
                .map(|((ki, ei), di)| ki * ei * (level / di))
                .sum();
            values[*x] = CycNum::root_of_unity(exp as i64, level as u32);
        }
        chars.push(TwistedChar {
            elements: elements.to_vec(),
            values,
            dim: 1,
        });
    }
    Ok(CharTable {
        chars,
        provenance: Provenance::AbelianDirect,
    })
}

/// The full ordinary character table, exact over `Q(ζ_exp)`.
pub fn ordinary_char_table(g: &FiniteGroup, elements: &[usize]) -> Result<CharTable, RepError> {
    if g.is_abelian() {
        return abelian_char_table(g, elements);
    }
    let table = dixon::character_table(g)?;
    let mut chars = table
        .into_iter()
        .map(|values| {
            Ok(TwistedChar {
                dim: dim_of(&values[g.identity()])?,
                elements: elements.to_vec(),
                values,
            })
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    sort_chars(&mut chars);
    verify_rows(&chars, g.order()).map_err(|e| RepError::Inconsistent(e.to_string()))?;
    verify_columns(g, &chars)?;
    Ok(CharTable {
        chars,
        provenance: Provenance::ClassAlgebra,
    })
}

/// `Σ_χ χ(x) conj(χ(y)) = |C_G(x)|` if `x ~ y` and `0` otherwise, on class
/// representatives.
fn verify_columns(g: &FiniteGroup, chars: &[TwistedChar]) -> Result<(), RepError> {
    let reps: Vec<usize> = g.conjugacy_classes().iter().map(|c| c[0]).collect();
    for (i, &x) in reps.iter().enumerate() {
        for &y in &reps[i..] {
            let s = chars.iter().fold(CycNum::zero(), |acc, c| {
                acc + &c.values[x] * &c.values[y].conj()
            });
            let expected = if x == y {
                CycNum::from_int(g.centralizer(x).len() as i64)
            } else {
                CycNum::zero()
            };
            if s != expected {
                return Err(RepError::Inconsistent(format!(
                    "column orthogonality fails at classes of {x} and {y}"
                )));
            }
        }
    }
    Ok(())
}

/// Characters of the `β`-twisted group algebra of `s`, where `β` is indexed by
/// the local element positions of `s`.
///
/// Builds the extension `E = {(a, j)}` with `(a,j)(b,l) = (ab, j+l+c(a,b))`
/// where `β = ζ_m^c`, takes the ordinary characters of `E` on which `(1, 1)`
/// acts by `ζ_m`, and restricts them to `{(a, 0)}`.
pub fn twisted_char_table(
    s: &FiniteGroup,
    elements: &[usize],
    beta: &Beta,
) -> Result<CharTable, RepError> {
    if beta.is_trivial() {
        return ordinary_char_table(s, elements);
    }
    let n = s.order();
    let mut exps = vec![(0u32, 1u32); n * n];
    let mut m = 1u32;
    for a in 0..n {
        for b in 0..n {
            let v = beta.at(a, b);
            let (k, ord) = v
                .root_of_unity_exponent()
                .ok_or_else(|| RepError::NotRootOfUnity {
                    a: elements[a],
                    b: elements[b],
                    value: v.to_string(),
                })?;
            exps[a * n + b] = (k, ord);
            m = m.lcm(&ord);
        }
    }
    let mu = m as usize;
    let order = n * mu;
    if order > MAX_EXTENSION_ORDER {
        return Err(RepError::ExtensionTooLarge { order });
    }
    let c: Vec<usize> = exps
        .iter()
        .map(|&(k, ord)| (k * (m / ord)) as usize)
        .collect();
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|x| {
            let (a, j) = (x / mu, x % mu);
            (0..order)
                .map(|y| {
                    let (b, l) = (y / mu, y % mu);
                    s.mul(a, b) * mu + (j + l + c[a * n + b]) % mu
                })
                .collect()
        })
        .collect();
    let ext = FiniteGroup::from_table(&rows)?;
    let ext_elems: Vec<usize> = (0..order).collect();
    let full = ordinary_char_table(&ext, &ext_elems)?;
    let e = s.identity();
    let zeta = CycNum::root_of_unity(1, m);
    let mut chars: Vec<TwistedChar> = full
        .chars
        .into_iter()
        .filter(|ch| ch.values[e * mu + 1] == &zeta * &ch.values[e * mu])
        .map(|ch| TwistedChar {
            elements: elements.to_vec(),
            values: (0..n).map(|a| ch.values[a * mu].clone()).collect(),
            dim: ch.dim,
        })
        .collect();
    sort_chars(&mut chars);
    verify_rows(&chars, n).map_err(|e| RepError::Inconsistent(e.to_string()))?;
    Ok(CharTable {
        chars,
        provenance: Provenance::CentralExtension,
    })
}

/// Accepts a user-provided table after checking dimensions, independence and
/// row orthogonality. Rows list values in the order of `elements`.
pub fn user_char_table(
    s: &FiniteGroup,
    elements: &[usize],
    rows: Vec<Vec<CycNum>>,
) -> Result<CharTable, RepError> {
    if rows.is_empty() {
        return Err(RepError::Rejected(format!(
            "empty table: Σ dim² = 0 but the group has order {}",
            s.order()
        )));
    }
    let e = s.identity();
    let chars = rows
        .into_iter()
        .map(|values| {
            if values.len() != s.order() {
                return Err(RepError::Rejected(format!(
                    "row has {} values, expected {}",
                    values.len(),
                    s.order()
                )));
            }
            Ok(TwistedChar {
                dim: dim_of(&values[e])?,
                elements: elements.to_vec(),
                values,
            })
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    verify_rows(&chars, s.order())?;
    Ok(CharTable {
        chars,
        provenance: Provenance::UserSupplied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(g: &FiniteGroup) -> Vec<usize> {
        (0..g.order()).collect()
    }

    #[test]
    fn abelian_tables() {
        let z2 = FiniteGroup::cyclic(2);
        let t = abelian_char_table(&z2, &all(&z2)).unwrap();
        assert_eq!(t.chars[0].values, vec![CycNum::one(), CycNum::one()]);
        assert_eq!(t.chars[1].values, vec![CycNum::one(), CycNum::from_int(-1)]);

        let z3 = FiniteGroup::cyclic(3);
        let t = ordinary_char_table(&z3, &all(&z3)).unwrap();
        assert_eq!(t.len(), 3);
        for ch in &t.chars {
            for v in &ch.values {
                assert!(v.pow(3).unwrap().is_one());
            }
        }

        let v4 = FiniteGroup::klein();
        let t = abelian_char_table(&v4, &all(&v4)).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t
            .chars
            .iter()
            .flat_map(|c| &c.values)
            .all(|v| v.is_rational()));
        assert!(
            abelian_char_table(&FiniteGroup::named("S3").unwrap(), &[0, 1, 2, 3, 4, 5]).is_err()
        );
    }

    #[test]
    fn s3_ordinary() {
        let g = FiniteGroup::named("S3").unwrap();
        let t = ordinary_char_table(&g, &all(&g)).unwrap();
        let dims: Vec<usize> = t.chars.iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        let two = &t.chars[2];
        for x in 0..6 {
            let expected = match g.element_order(x) {
                1 => 2,
                2 => 0,
                _ => -1,
            };
            assert_eq!(two.values[x], CycNum::from_int(expected));
        }
    }

    #[test]
    fn larger_groups() {
        for (name, dims) in [
            ("S4", vec![1, 1, 2, 3, 3]),
            ("Q8", vec![1, 1, 1, 1, 2]),
            ("D5", vec![1, 1, 2, 2]),
            ("A5", vec![1, 3, 3, 4, 5]),
        ] {
            let g = FiniteGroup::named(name).unwrap();
            let t = ordinary_char_table(&g, &all(&g)).unwrap();
            let got: Vec<usize> = t.chars.iter().map(|c| c.dim).collect();
            assert_eq!(got, dims, "{name}");
        }
    }

    fn klein_beta(v4: &FiniteGroup) -> Beta {
        // index 2a + b ↔ (a, b)
        Beta::from_fn(all(v4), |x, y| {
            let (b, c) = (x % 2, y / 2);
            CycNum::from_int(if b * c == 1 { -1 } else { 1 })
        })
    }

    #[test]
    fn klein_twisted() {
        let v4 = FiniteGroup::from_table(&[
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        let beta = klein_beta(&v4);
        beta.check_with(|a, b| v4.mul(a, b), 0).unwrap();
        let t = twisted_char_table(&v4, &all(&v4), &beta).unwrap();
        assert_eq!(t.provenance, Provenance::CentralExtension);
        assert_eq!(t.len(), 1);
        assert_eq!(t.chars[0].dim, 2);
        assert_eq!(
            t.chars[0].values,
            vec![
                CycNum::from_int(2),
                CycNum::zero(),
                CycNum::zero(),
                CycNum::zero()
            ]
        );
    }

    #[test]
    fn trivial_beta_matches_ordinary() {
        let g = FiniteGroup::named("S3").unwrap();
        let beta = Beta::from_fn(all(&g), |_, _| CycNum::one());
        let a = twisted_char_table(&g, &all(&g), &beta).unwrap();
        let b = ordinary_char_table(&g, &all(&g)).unwrap();
        assert_eq!(a.chars, b.chars);
    }

    #[test]
    fn user_tables() {
        let g = FiniteGroup::named("S3").unwrap();
        let good: Vec<Vec<CycNum>> = ordinary_char_table(&g, &all(&g))
            .unwrap()
            .chars
            .into_iter()
            .map(|c| c.values)
            .collect();
        assert!(user_char_table(&g, &all(&g), good.clone()).is_ok());
        let mut bad = good;
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        bad[1][t] = bad[1][t].neg_ref();
        let err = user_char_table(&g, &all(&g), bad).unwrap_err();
        assert!(err.to_string().contains("orthogonality"), "{err}");
        assert!(user_char_table(&g, &all(&g), vec![]).is_err());
    }
}
