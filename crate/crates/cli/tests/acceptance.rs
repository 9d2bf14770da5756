//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! verdicts are printed by `cargo test` without `--nocapture`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use bicrossed::certify::{dimension_audit, direct_sum_check};
use bicrossed::checks::Scope;
use bicrossed::cocycles::Beta;
use bicrossed::comodules::{Session, SimpleDesc, SimpleId};
use bicrossed::config::{load_preset, parse_config_file, Config};
use bicrossed::cyclotomic::CycNum;
use bicrossed::fusion::{FusionRing, FusionRow};
use bicrossed::groups::{FElem, FiniteGroup, GroupInterface};
use bicrossed::hopf::{HElem, HTensor};
use bicrossed::report::{self, Status};
use bicrossed::reps::twisted_char_table;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRESETS: [&str; 6] = [
    "h_z_z2",
    "h_z_z2n:2",
    "h_z_z2n:3",
    "z_poly_zp:3",
    "drinfeld:S3",
    "twisted_klein",
];
const TRIVIAL_COCYCLE_PRESETS: [&str; 5] = [
    "h_z_z2",
    "h_z_z2n:2",
    "h_z_z2n:3",
    "z_poly_zp:3",
    "drinfeld:S3",
];

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn preset(name: &str) -> Result<Config, String> {
    load_preset(name).map_err(|e| format!("{name}: {e}"))
}

fn ring(cfg: &Config) -> FusionRing {
    FusionRing::new(Arc::new(cfg.session()))
}

fn v(x: i64) -> FElem {
    FElem::vector(&[x])
}

fn is_finite(cfg: &Config) -> bool {
    cfg.hopf.matched_pair().f().is_finite()
}

fn hopf_axioms() -> Verdict {
    let start = Instant::now();
    let mut reduced = Vec::new();
    for name in &PRESETS[..5] {
        let cfg = preset(name)?;
        let section = cfg.hopf.verify(3);
        if let Some(c) = section.first_failure() {
            return Err(format!(
                "{name}: '{}' fails at {:?}",
                c.law,
                c.witnesses.first()
            ));
        }
        ensure(
            section.checks.len() == 11 && section.checks.iter().all(|c| c.instances > 0),
            || format!("{name}: incomplete law list"),
        )?;
        for c in &section.checks {
            if let Scope::Ball(r) = c.scope {
                if r < 3 {
                    reduced.push(format!("{name} '{}' at R={r}", c.law));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    let mut msg = format!("5 presets, R=3, {secs:.2}s");
    if !reduced.is_empty() {
        msg.push_str(&format!("; budget-limited: {}", reduced.join(", ")));
    }
    Ok(msg)
}

fn classification_counting() -> Verdict {
    let mut orbits = 0;
    for name in PRESETS {
        let cfg = preset(name)?;
        let r = if is_finite(&cfg) { 0 } else { 3 };
        let audit = dimension_audit(&cfg.session(), r).map_err(|e| format!("{name}: {e}"))?;
        if let Some(row) = audit.iter().find(|row| !row.passed) {
            return Err(format!(
                "{name}: orbit of {} has Σ dim² = {} ≠ {}",
                row.rep, row.sum_of_squares, row.expected
            ));
        }
        orbits += audit.len();
    }
    let cfg = preset("drinfeld:S3")?;
    let s = cfg.session();
    let dims: Vec<usize> = dimension_audit(&s, 0)
        .map_err(|e| e.to_string())?
        .into_iter()
        .flat_map(|row| row.dims)
        .collect();
    ensure(dims == [1, 1, 2, 3, 3, 2, 2, 2], || {
        format!("drinfeld:S3 dims {dims:?}")
    })?;
    let total: usize = dims.iter().map(|d| d * d).sum();
    ensure(total == 36, || format!("Σ dim² = {total}"))?;
    let blocks = direct_sum_check(&s, 0);
    ensure(blocks.passed() && blocks.cert.rank == 36, || {
        "C_f blocks do not span H".into()
    })?;
    Ok(format!(
        "{orbits} orbits balance; drinfeld:S3 dims {dims:?}, Σ = 36 = dim H"
    ))
}

fn h_z_z2_structure() -> Verdict {
    let cfg = preset("h_z_z2")?;
    let h = &cfg.hopf;
    let e = |i: i64| HElem::basis(0, v(-i));
    let f = |i: i64| HElem::basis(1, v(i));
    let tensor = |pairs: &[(HElem, HElem)]| {
        let mut t = HTensor::zero();
        for (a, b) in pairs {
            for (ka, ca) in a.terms() {
                for (kb, cb) in b.terms() {
                    t.add_term(ka.clone(), kb.clone(), ca * cb);
                }
            }
        }
        t
    };
    ensure(h.unit() == e(0).add(&f(0)), || "1 ≠ e_0 + f_0".into())?;
    let one = CycNum::one();
    let zero = CycNum::zero();
    for i in -5..=5 {
        for j in -5..=5 {
            ensure(h.mul(&e(i), &e(j)) == e(i + j), || format!("e_{i} e_{j}"))?;
            ensure(h.mul(&f(i), &f(j)) == f(i + j), || format!("f_{i} f_{j}"))?;
            ensure(
                h.mul(&e(i), &f(j)).is_zero() && h.mul(&f(j), &e(i)).is_zero(),
                || format!("e_{i} f_{j}"),
            )?;
        }
        ensure(
            h.comul(&e(i)) == tensor(&[(e(i), e(i)), (f(i), f(-i))]),
            || format!("Δ(e_{i})"),
        )?;
        ensure(
            h.comul(&f(i)) == tensor(&[(e(i), f(i)), (f(i), e(-i))]),
            || format!("Δ(f_{i})"),
        )?;
        ensure(h.counit(&e(i)) == one && h.counit(&f(i)) == zero, || {
            format!("ε at {i}")
        })?;
        ensure(
            h.antipode(&e(i)) == e(-i) && h.antipode(&f(i)) == f(i),
            || format!("S at {i}"),
        )?;
    }

    let s = cfg.session();
    let simples = s.enumerate_simples(5).map_err(|e| e.to_string())?;
    let ids: Vec<String> = simples.iter().map(|d| d.id.to_string()).collect();
    let expected: Vec<String> = ["0,0", "0,1"]
        .into_iter()
        .map(String::from)
        .chain((1..=5).map(|i| format!("-{i},0")))
        .collect();
    ensure(ids == expected, || format!("simples {ids:?}"))?;
    let x = e(0).sub(&f(0));
    ensure(*s.irreducible_character(&simples[0]) == h.unit(), || {
        "χ(k1) ≠ 1".into()
    })?;
    ensure(*s.irreducible_character(&simples[1]) == x, || {
        "χ(kx) ≠ e_0 - f_0".into()
    })?;
    for (i, d) in (1..=5).zip(&simples[2..]) {
        ensure(d.dim_total == 2, || format!("dim C_{i}"))?;
        ensure(*s.irreducible_character(d) == e(i).add(&e(-i)), || {
            format!("χ(C_{i}) ≠ e_i + e_-i")
        })?;
    }
    Ok("relations for |i|,|j| ≤ 5; simples {1, x, C_1..C_5}; χ(C_i) = e_i + e_-i".into())
}

/// Labels of the simples of `H(ℤ, ℤ_2n)`: `kg^i` is the character
/// `g^r ↦ q^{ir}` over the orbit of 0, `E_j^{(k)}` the one with stabilizer
/// character `g^{2s} ↦ w^{sk}` over the orbit of ±j, `q = ζ_2n`, `w = q²`.
struct Example63 {
    n: usize,
    ring: FusionRing,
}

impl Example63 {
    fn find(&self, rep: i64, matches: impl Fn(&SimpleDesc) -> bool) -> Result<SimpleId, String> {
        let mp = self.ring.session().hopf().matched_pair();
        let orbit = mp.orbit_of(&v(rep));
        let simples = self
            .ring
            .session()
            .simples_for_orbit(&orbit)
            .map_err(|e| e.to_string())?;
        let found: Vec<&SimpleDesc> = simples.iter().filter(|d| matches(d)).collect();
        match found[..] {
            [d] => Ok(d.id.clone()),
            _ => Err(format!(
                "{} simples match a label over the orbit of {rep}",
                found.len()
            )),
        }
    }

    fn kg(&self, i: usize) -> Result<SimpleId, String> {
        let m = 2 * self.n;
        self.find(0, |d| {
            (0..m).all(|r| {
                d.chi.at(r) == Some(&CycNum::root_of_unity(((i * r) % m) as i64, m as u32))
            })
        })
    }

    fn e(&self, j: i64, k: usize) -> Result<SimpleId, String> {
        let n = self.n;
        self.find(-j, |d| {
            d.chi.elements.len() == n
                && (0..n).all(|s| {
                    d.chi.at(2 * s) == Some(&CycNum::root_of_unity(((s * k) % n) as i64, n as u32))
                })
        })
    }

    fn check(&self, a: &SimpleId, b: &SimpleId, expected: &[SimpleId]) -> Result<(), String> {
        let mut want: BTreeMap<SimpleId, u64> = BTreeMap::new();
        for x in expected {
            *want.entry(x.clone()).or_default() += 1;
        }
        for (l, r) in [(a, b), (b, a)] {
            let row: FusionRow = self.ring.decompose(l, r).map_err(|e| e.to_string())?;
            let got: BTreeMap<SimpleId, u64> = row
                .summands
                .iter()
                .map(|s| (s.id.clone(), s.multiplicity))
                .collect();
            ensure(got == want, || {
                format!("n={}: ({l})·({r}) = {got:?}, expected {want:?}", self.n)
            })?;
        }
        Ok(())
    }
}

fn example_6_3() -> Verdict {
    let mut rows = 0;
    for n in 1..=3usize {
        let cfg = preset(&format!("h_z_z2n:{n}"))?;
        let x = Example63 {
            n,
            ring: ring(&cfg),
        };
        let m = 2 * n;
        for i in 0..m {
            for i2 in 0..m {
                x.check(&x.kg(i)?, &x.kg(i2)?, &[x.kg((i + i2) % m)?])?;
                rows += 2;
            }
            for j in 1..=4 {
                for k in 0..n {
                    x.check(&x.kg(i)?, &x.e(j, k)?, &[x.e(j, (i + k) % n)?])?;
                    rows += 2;
                }
            }
        }
        for j in 1..=4i64 {
            for j2 in 1..=4i64 {
                for k in 0..n {
                    for l in 0..n {
                        let expected = if j == j2 {
                            vec![
                                x.kg((k + l) % m)?,
                                x.kg((n + k + l) % m)?,
                                x.e(2 * j, (k + l) % n)?,
                            ]
                        } else {
                            vec![x.e(j + j2, (k + l) % n)?, x.e((j - j2).abs(), (k + l) % n)?]
                        };
                        x.check(&x.e(j, k)?, &x.e(j2, l)?, &expected)?;
                        rows += 2;
                    }
                }
            }
            for k in 0..n {
                let d = x.ring.dual_of(&x.e(j, k)?).map_err(|e| e.to_string())?;
                ensure(d == x.e(j, (n - k) % n)?, || {
                    format!("n={n}: S(E_{j}^({k})) = {d}")
                })?;
            }
        }
    }
    Ok(format!(
        "n = 1,2,3, j,j' ≤ 4: {rows} products and all duals match exactly"
    ))
}

fn ball_radius(cfg: &Config) -> u32 {
    if is_finite(cfg) {
        0
    } else {
        4
    }
}

fn frobenius_schur() -> Verdict {
    let mut total = 0;
    let mut counts = [0usize; 3];
    for name in PRESETS {
        let cfg = preset(name)?;
        let r = ring(&cfg);
        for d in r
            .session()
            .enumerate_simples(ball_radius(&cfg))
            .map_err(|e| e.to_string())?
        {
            let nu = r
                .fs_indicator(&d.id)
                .map_err(|e| format!("{name} {}: {e}", d.id))?;
            ensure((-1..=1).contains(&nu), || {
                format!("{name} {}: ν₂ = {nu}", d.id)
            })?;
            let self_dual = r.dual_of(&d.id).map_err(|e| e.to_string())? == d.id;
            ensure((nu != 0) == self_dual, || {
                format!("{name} {}: ν₂ = {nu}, self-dual {self_dual}", d.id)
            })?;
            if name == "h_z_z2" {
                ensure(nu == 1, || format!("h_z_z2 {}: ν₂ = {nu}", d.id))?;
            }
            counts[(nu + 1) as usize] += 1;
            total += 1;
        }
    }
    Ok(format!(
        "{total} simples: ν₂ = -1 ×{}, 0 ×{}, 1 ×{}",
        counts[0], counts[1], counts[2]
    ))
}

fn duality() -> Verdict {
    let mut total = 0;
    let mut criterion = 0;
    for name in PRESETS {
        let cfg = preset(name)?;
        let r = ring(&cfg);
        let mut here = 0;
        for d in r
            .session()
            .enumerate_simples(ball_radius(&cfg))
            .map_err(|e| e.to_string())?
        {
            let dual = r.dual_of(&d.id).map_err(|e| e.to_string())?;
            let back = r.dual_of(&dual).map_err(|e| e.to_string())?;
            ensure(back == d.id, || {
                format!("{name}: dual of dual of {} is {back}", d.id)
            })?;
            if let Some(c) = r
                .smash_self_dual_criterion(&d.id)
                .map_err(|e| e.to_string())?
            {
                ensure(c == (dual == d.id), || {
                    format!("{name} {}: criterion says {c}", d.id)
                })?;
                here += 1;
            }
            total += 1;
        }
        if r.is_abelian_smash() {
            ensure(here > 0, || format!("{name}: criterion never applied"))?;
        }
        criterion += here;
    }
    Ok(format!(
        "involution on {total} simples; smash criterion agrees on {criterion}"
    ))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cqg() -> Verdict {
    for name in TRIVIAL_COCYCLE_PRESETS {
        let cfg = preset(name)?;
        let (ok, _) = cfg.hopf.cocycles().is_unitary();
        ensure(ok, || format!("{name}: not unitary"))?;
        let section = cfg
            .hopf
            .verify_star(3)
            .map_err(|e| format!("{name}: {e}"))?;
        if let Some(c) = section.first_failure() {
            return Err(format!(
                "{name}: '{}' fails at {:?}",
                c.law,
                c.witnesses.first()
            ));
        }
        ensure(
            section
                .checks
                .iter()
                .any(|c| c.law == "⟨b,b⟩_r = 1/|G|" && c.instances > 0),
            || format!("{name}: norm law missing"),
        )?;
    }
    let cfg = parse_config_file(&fixture("sigma_two.toml")).map_err(|e| e.to_string())?;
    let rep = report::run(&report::Command::CqgCheck, &cfg, None);
    ensure(rep.status == Status::Fail && rep.exit_code() == 1, || {
        format!("σ=2 fixture: {:?}", rep.status)
    })?;
    let w = &rep.payload["witness"];
    let expected =
        serde_json::json!({ "cocycle": "sigma", "g": "1", "f": "1", "f'": "1", "value": "2" });
    ensure(*w == expected, || format!("witness {w}"))?;
    Ok(format!(
        "5 presets pass on R=3; σ=2 fixture rejected with {w}"
    ))
}

fn integrality() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pairs = 0;
    for name in PRESETS {
        let cfg = preset(name)?;
        let r = ring(&cfg);
        let simples = r
            .session()
            .enumerate_simples(ball_radius(&cfg))
            .map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let a = &simples[rng.gen_range(0..simples.len())];
            let b = &simples[rng.gen_range(0..simples.len())];
            let row = r
                .decompose(&a.id, &b.id)
                .map_err(|e| format!("{name} ({})·({}): {e}", a.id, b.id))?;
            ensure(row.summands.iter().all(|s| s.multiplicity > 0), || {
                format!("{name}: zero multiplicity")
            })?;
            let want = (a.dim_total * b.dim_total) as u64;
            ensure(row.total_dim() == want, || {
                format!(
                    "{name} ({})·({}): Σ mult·dim = {} ≠ {want}",
                    a.id,
                    b.id,
                    row.total_dim()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} random pairs: exact solves, nonnegative integer multiplicities, dimensions balance"))
}

/// Rank of an integer matrix by fraction-free elimination.
fn rank(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = a * m[i][k] - b * m[r][k];
                }
                let g = m[i].iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn twisted_klein() -> Verdict {
    // β((a,b),(c,d)) = (-1)^{bc}, elements indexed 2a + b
    let beta = |x: usize, y: usize| if (x & 1) * (y >> 1) == 1 { -1i128 } else { 1 };
    let v4 = FiniteGroup::named("V4").map_err(|e| e.to_string())?;
    let mul = |x: usize, y: usize| v4.mul(x, y);

    // brute force on the twisted group algebra: left-regular matrices L_x
    let l: Vec<Vec<Vec<i128>>> = (0..4)
        .map(|x| {
            let mut m = vec![vec![0i128; 4]; 4];
            for y in 0..4 {
                m[mul(x, y)][y] = beta(x, y);
            }
            m
        })
        .collect();
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let lhs = beta(x, y) * beta(mul(x, y), z);
                let rhs = beta(y, z) * beta(x, mul(y, z));
                ensure(lhs == rhs, || "β is not a 2-cocycle".into())?;
            }
        }
    }
    // trace form Tr(L_x L_y) nondegenerate ⇒ semisimple
    let trace_form: Vec<Vec<i128>> = (0..4)
        .map(|x| {
            (0..4)
                .map(|y| {
                    (0..4)
                        .map(|i| (0..4).map(|k| l[x][i][k] * l[y][k][i]).sum::<i128>())
                        .sum()
                })
                .collect()
        })
        .collect();
    ensure(rank(trace_form) == 4, || {
        "twisted algebra is not semisimple".into()
    })?;
    // center: c with Σ_x c_x (L_x L_y - L_y L_x) = 0 for every y
    let mut eqs = Vec::new();
    for y in 0..4 {
        for i in 0..4 {
            for k in 0..4 {
                eqs.push(
                    (0..4)
                        .map(|x| {
                            (0..4)
                                .map(|t| l[x][i][t] * l[y][t][k] - l[y][i][t] * l[x][t][k])
                                .sum::<i128>()
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let center_dim = 4 - rank(eqs);
    // a semisimple algebra of dimension 4 with 1-dimensional center is M_2
    ensure(center_dim == 1, || {
        format!("center has dimension {center_dim}")
    })?;
    let brute: Vec<i128> = (0..4)
        .map(|x| (0..4).map(|i| l[x][i][i]).sum::<i128>() / 2)
        .collect();

    let b = Beta::from_fn(vec![0, 1, 2, 3], |x, y| CycNum::from_int(beta(x, y) as i64));
    let table = twisted_char_table(&v4, &[0, 1, 2, 3], &b).map_err(|e| e.to_string())?;
    ensure(table.chars.len() == 1, || {
        format!("{} twisted characters", table.chars.len())
    })?;
    let chi = &table.chars[0];
    ensure(chi.dim == 2, || format!("dimension {}", chi.dim))?;
    let values: Vec<CycNum> = brute.iter().map(|&c| CycNum::from_int(c as i64)).collect();
    ensure(chi.values == values, || {
        format!("character {:?} ≠ brute force {brute:?}", chi.values)
    })?;

    let cfg = preset("twisted_klein")?;
    let s: Session = cfg.session();
    let orbit = cfg.hopf.matched_pair().orbit_of(&FElem::Finite(1));
    let over = s.simples_for_orbit(&orbit).map_err(|e| e.to_string())?;
    ensure(over.len() == 1 && over[0].dim_v == 2, || {
        "preset disagrees".into()
    })?;
    Ok(
        "one twisted character of dim 2, Σ dim² = 4; brute force: semisimple, center dim 1 (M_2)"
            .into(),
    )
}

fn determinism() -> Verdict {
    let mut bytes = 0;
    for name in PRESETS {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_bicrossed"))
                .args([
                    "fusion-table",
                    "--radius",
                    "4",
                    "--format",
                    "json",
                    "--preset",
                    name,
                ])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || {
            format!("{name}: exit {:?}", a.status.code())
        })?;
        ensure(a.stdout == b.stdout, || format!("{name}: outputs differ"))?;
        bytes += a.stdout.len();
    }
    Ok(format!(
        "6 presets, two runs each, byte-identical ({bytes} bytes per round)"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("Hopf-axiom suite", hopf_axioms),
        ("classification counting", classification_counting),
        ("H(Z,Z2) structure", h_z_z2_structure),
        ("Example 6.3 fusion ring", example_6_3),
        ("Frobenius-Schur indicators", frobenius_schur),
        ("duality", duality),
        ("compact quantum group certification", cqg),
        ("fusion integrality", integrality),
        ("twisted representation oracle", twisted_klein),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
