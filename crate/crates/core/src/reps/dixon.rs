//! Ordinary character tables by the Burnside–Dixon method: common
//! eigenvectors of the class matrices are found over a prime field `F_p`
//! with `p ≡ 1 (mod exp G)`, and character values are lifted back to
//! `Q(ζ_e)` through eigenvalue multiplicities.

use crate::cyclotomic::{CycNum, Rational};
use crate::groups::FiniteGroup;

use super::RepError;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√n`.
fn choose_prime(e: u64, n: u64) -> u64 {
    let mut p = e + 1;
    while !(is_prime(p) && (p * p > 4 * n)) {
        p += e;
    }
    p
}

fn primitive_root_of_unity(e: u64, p: u64) -> u64 {
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let gen = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, phi / q, p) != 1))
        .expect("F_p^× is cyclic");
    pow_mod(gen, phi / e, p)
}

/// Basis of the kernel of `A·B` (as vectors `B c`), where `A` is `r×r` and
/// `B` has the given columns.
fn kernel_in_span(a: &[Vec<u64>], basis: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let r = a.len();
    let k = basis.len();
    // columns of A·B as rows of the r×k matrix
    let mut m: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            basis
                .iter()
                .map(|b| (0..r).fold(0, |acc, j| (acc + a[i][j] * b[j]) % p))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let Some(pr) = (row..r).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = inv_mod(m[row][c], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = m[row].clone();
        for (i, mr) in m.iter_mut().enumerate() {
            if i != row && mr[c] != 0 {
                let f = mr[c];
                for (x, y) in mr.iter_mut().zip(&prow) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut coeffs = vec![0u64; k];
            coeffs[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                coeffs[pc] = (p - m[ri][fc]) % p;
            }
            (0..r)
                .map(|i| (0..k).fold(0, |acc, t| (acc + coeffs[t] * basis[t][i]) % p))
                .collect()
        })
        .collect()
}

/// The ordinary irreducible characters of `g`, each as a value per element.
/// The returned table is verified exactly before it is handed out.
pub fn character_table(g: &FiniteGroup) -> Result<Vec<Vec<CycNum>>, RepError> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let id_class = class_of[g.identity()];
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let e = g.exponent() as u64;
    let p = choose_prime(e, n as u64);

    // M_j[k][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_k}
    let mats: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|j| {
            let mut m = vec![vec![0u64; r]; r];
            for (l, cl) in classes.iter().enumerate() {
                let z = cl[0];
                for &x in &classes[j] {
                    m[class_of[g.mul(g.inv(x), z)]][l] += 1;
                }
            }
            m.iter_mut()
                .for_each(|row| row.iter_mut().for_each(|v| *v %= p));
            m
        })
        .collect();

    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    for m in &mats {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let mut found = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = (0..r)
                    .map(|i| {
                        (0..r)
                            .map(|j| (m[i][j] + if i == j { p - lambda } else { 0 }) % p)
                            .collect()
                    })
                    .collect();
                let ker = kernel_in_span(&shifted, &space, p);
                if !ker.is_empty() {
                    found += ker.len();
                    next.push(ker);
                }
                if found == space.len() {
                    break;
                }
            }
            if found != space.len() {
                return Err(RepError::Inconsistent(
                    "class matrix not diagonalizable mod p".into(),
                ));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(RepError::Inconsistent(
            "class matrices do not separate characters".into(),
        ));
    }

    let h: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let z = primitive_root_of_unity(e, p);
    let e_inv = inv_mod(e % p, p);
    let mut table = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        let scale = inv_mod(v[id_class], p);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let s = (0..r).fold(0, |acc, l| {
            (acc + omega[l] * omega[inv_class[l]] % p * inv_mod(h[l], p)) % p
        });
        let d2 = (n as u64 % p) * inv_mod(s, p) % p;
        let d = (1..=((n as f64).sqrt() as u64 + 1))
            .find(|d| d * d % p == d2 && d * d <= n as u64)
            .ok_or_else(|| RepError::Inconsistent("no valid degree".into()))?;
        let theta: Vec<u64> = (0..r)
            .map(|l| d * omega[l] % p * inv_mod(h[l], p) % p)
            .collect();
        // lift each class value through eigenvalue multiplicities
        let mut class_values = Vec::with_capacity(r);
        for cl in &classes {
            let x = cl[0];
            let mut powers = Vec::with_capacity(e as usize);
            let mut y = g.identity();
            for _ in 0..e {
                powers.push(theta[class_of[y]]);
                y = g.mul(y, x);
            }
            let mut coeffs = Vec::with_capacity(e as usize);
            for k in 0..e {
                let mut acc = 0;
                for (t, val) in powers.iter().enumerate() {
                    let zk = pow_mod(z, (e - (k * t as u64) % e) % e, p);
                    acc = (acc + val * zk) % p;
                }
                let mk = acc * e_inv % p;
                if mk > d {
                    return Err(RepError::Inconsistent(
                        "eigenvalue multiplicity out of range".into(),
                    ));
                }
                coeffs.push(Rational::from_integer((mk as i64).into()));
            }
            class_values.push(CycNum::from_power_sum(&coeffs, e as u32));
        }
        table.push((0..n).map(|x| class_values[class_of[x]].clone()).collect());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert_eq!(choose_prime(6, 6), 7);
        assert_eq!(choose_prime(2, 100), 23);
        let z = primitive_root_of_unity(6, 7);
        assert_eq!(pow_mod(z, 6, 7), 1);
        assert_ne!(pow_mod(z, 3, 7), 1);
        assert_ne!(pow_mod(z, 2, 7), 1);
    }

    #[test]
    fn s3_table() {
        let g = FiniteGroup::named("S3").unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 3);
        let mut dims: Vec<CycNum> = t.iter().map(|c| c[0].clone()).collect();
        dims.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(
            dims,
            vec![CycNum::one(), CycNum::one(), CycNum::from_int(2)]
        );
    }
}
