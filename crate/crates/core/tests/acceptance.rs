//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false`, so the lines show up in plain
//! `cargo test` output.

mod oracle;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nfk::cli::{compare, EquivMode, Fingerprint, Outcome, PrimeEntry};
use nfk::exactmath::int::primes_up_to;
use nfk::ideals::{is_principal, primes_above, ClassBackend, ClassData, Principality};
use nfk::kinvariants::{fingerprint, rank_pi_star, recover_splitting, torsion_order};
use nfk::numberfield::NumberField;
use nfk::semigroupsets::{
    independence_check, intersect, j_family, meet, pdiff_intersect, ConstructibleSet,
    IndependenceMode, Level, Support, SupportedIdeal,
};
use nfk::torsion::{is_good_prime, roots_of_unity};

type Check = Result<String, String>;

fn field(s: &str) -> Arc<NumberField> {
    Arc::new(NumberField::parse(s).expect("test polynomial"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

/// Torsion orders against class orders from both backends.
fn criterion_1() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for poly in ["x", "x^2+1", "x^2+3", "x^2+5", "x^2+23"] {
        let k = field(poly);
        let t = roots_of_unity(&k).map_err(|e| e.to_string())?;
        let search =
            ClassData::with_backend(&k, ClassBackend::Search).map_err(|e| e.to_string())?;
        let forms = if k.is_imaginary_quadratic() {
            Some(ClassData::with_backend(&k, ClassBackend::Forms).map_err(|e| e.to_string())?)
        } else {
            None
        };
        for p in primes_up_to(200) {
            if !k.index_safe(p).map_err(|e| e.to_string())? {
                continue;
            }
            for pr in primes_above(&k, p).map_err(|e| e.to_string())? {
                if !is_good_prime(&k, &t, &pr) {
                    continue;
                }
                let h_search = search
                    .order_of(&pr)
                    .map_err(|e| format!("{poly} {p}: {e}"))?;
                let h_forms = match &forms {
                    Some(cd) => cd.order_of(&pr).map_err(|e| format!("{poly} {p}: {e}"))?,
                    // ℤ is a PID: the prime itself must be found as a generator
                    None => match is_principal(&pr.ideal, None) {
                        Principality::Principal(_) => 1,
                        other => return Err(format!("{poly} {p}: {other:?}")),
                    },
                };
                ensure(h_search == h_forms, || {
                    format!("{poly} p={p}: h_P {h_search} vs {h_forms}")
                })?;
                let top: BigInt = num_traits::pow(pr.norm(), h_search as usize) - 1;
                let (want, r) = top.div_rem(&BigInt::from(t.m));
                ensure(r == BigInt::from(0), || {
                    format!("{poly} p={p}: m does not divide N^h-1")
                })?;
                let cd = forms.as_ref().unwrap_or(&search);
                let got = torsion_order(&k, &t, &pr, cd).map_err(|e| e.to_string())?;
                ensure(got.as_ref() == Some(&want), || {
                    format!("{poly} p={p}: ord {got:?} vs {want}")
                })?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} good primes, {:.1?}", start.elapsed()))
}

/// Recovered splitting numbers equal direct ones past the threshold.
fn criterion_2() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for poly in ["x", "x^2+1"] {
        let k = field(poly);
        let cd = ClassData::automatic(&k).map_err(|e| e.to_string())?;
        let inv = fingerprint(&k, 500, &cd).map_err(|e| e.to_string())?;
        let h = inv.class_number.ok_or("class number unknown")?;
        for p in primes_up_to(500) {
            let lhs = BigInt::from(p - 1);
            let rhs = num_traits::pow(BigInt::from(inv.torsion.p_max), inv.degree * h as usize) - 1;
            if lhs <= BigInt::from(inv.torsion.m) * rhs {
                continue;
            }
            let got = recover_splitting(&inv, p).map_err(|e| format!("{poly} p={p}: {e}"))?;
            let want = k.g_count(p).map_err(|e| e.to_string())?;
            ensure(got == want, || {
                format!("{poly} p={p}: recovered {got}, direct {want}")
            })?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} primes, {:.1?}", start.elapsed()))
}

fn fp(s: &str, bound: u64) -> Result<Fingerprint, String> {
    Fingerprint::compute(&NumberField::parse(s).map_err(|e| e.to_string())?, bound)
        .map_err(|e| e.to_string())
}

/// The equivalence checker on the three reference pairs; the octic pair is
/// confirmed by the brute-force oracle first.
fn criterion_3() -> Check {
    let start = Instant::now();
    let v = compare(&fp("x^2-2", 50)?, &fp("x^2-3", 50)?, EquivMode::G);
    match &v.outcome {
        Outcome::DistinguishedAt {
            p: 7,
            left: PrimeEntry::Split { g: 2, .. },
            right: PrimeEntry::Split { g: 1, .. },
        } => {}
        o => return Err(format!("(a) got {o:?}")),
    }
    let v = compare(&fp("x^2+1", 100)?, &fp("x^2-2*x+2", 100)?, EquivMode::Full);
    ensure(v.outcome == Outcome::EquivalentUpTo(100), || {
        format!("(b) got {:?}", v.outcome)
    })?;

    let left = [-3, 0, 0, 0, 0, 0, 0, 0, 1];
    let right = [-48, 0, 0, 0, 0, 0, 0, 0, 1];
    for p in oracle::primes(2000).into_iter().filter(|&p| p > 3) {
        ensure(
            oracle::factor_degrees(&left, p) == oracle::factor_degrees(&right, p),
            || format!("(c) oracle separates the pair at {p}"),
        )?;
    }
    let (l, r) = (fp("x^8-3", 2000)?, fp("x^8-48", 2000)?);
    for mode in [EquivMode::G, EquivMode::Full] {
        let v = compare(&l, &r, mode);
        ensure(v.outcome == Outcome::EquivalentUpTo(2000), || {
            format!("(c) {}: {:?}", mode.name(), v.outcome)
        })?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("3 pairs, {:.1?}", start.elapsed()))
}

fn criterion_4() -> Check {
    for (poly, want) in [("x^2+1", 2), ("x^2+3", 3), ("x^4+x^3+x^2+x+1", 10)] {
        let k = field(poly);
        let t = roots_of_unity(&k).map_err(|e| e.to_string())?;
        let r = rank_pi_star(&k, &t).map_err(|e| e.to_string())?;
        ensure(r == want, || format!("{poly}: {r} != {want}"))?;
    }
    let k = field("x^2-2");
    let t = roots_of_unity(&k).map_err(|e| e.to_string())?;
    match rank_pi_star(&k, &t) {
        Err(e) if e.to_string() == "not purely imaginary" => {
            Ok("ranks 2, 3, 10; real field refused".into())
        }
        other => Err(format!("x^2-2: {other:?}")),
    }
}

fn criterion_5() -> Check {
    let start = Instant::now();
    for poly in ["x", "x^2+1", "x^2+5", "x^4+x^3+x^2+x+1"] {
        let k = field(poly);
        let n = k.degree();
        let cd = ClassData::automatic(&k).map_err(|e| e.to_string())?;
        let inv = fingerprint(&k, 200, &cd).map_err(|e| e.to_string())?;
        ensure(inv.missing_class_data().is_empty(), || {
            format!("{poly}: class data missing")
        })?;
        ensure(inv.degree_estimate == Some(n), || {
            format!("{poly}: {:?} at 200", inv.degree_estimate)
        })?;
        for b in primes_up_to(200) {
            let d = inv.truncated(b).degree_estimate;
            ensure(d.is_none_or(|d| d <= n), || {
                format!("{poly}: estimate {d:?} > {n} at bound {b}")
            })?;
        }
    }
    Ok(format!("4 fields, {:.1?}", start.elapsed()))
}

fn criterion_6() -> Check {
    let fields = [
        "x",
        "x^2+1",
        "x^2+3",
        "x^2+5",
        "x^2+23",
        "x^2-2",
        "x^2+27",
        "x^3-2",
        "x^4+1",
        "x^4+x^3+x^2+x+1",
        "x^6+x^5+x^4+x^3+x^2+x+1",
    ];
    let mut scanned = 0;
    for poly in fields {
        let k = field(poly);
        let t = roots_of_unity(&k).map_err(|e| e.to_string())?;
        for p in primes_up_to(300) {
            if !k.index_safe(p).map_err(|e| e.to_string())? {
                continue;
            }
            for pr in primes_above(&k, p).map_err(|e| e.to_string())? {
                let good = is_good_prime(&k, &t, &pr);
                let nm1: BigInt = pr.norm() - 1;
                ensure(!good || nm1.is_multiple_of(&BigInt::from(t.m)), || {
                    format!("{poly} p={p}: good but m does not divide N-1")
                })?;
                ensure(p <= t.p_max || good, || {
                    format!("{poly} p={p} > p_max but not good")
                })?;
                scanned += 1;
            }
        }
    }
    Ok(format!(
        "{scanned} primes in {} fields, 0 violations",
        fields.len()
    ))
}

/// Residues of `R/M` with valuations from ideal membership tests; used as
/// the exhaustive reference for intersections.
struct Quotient {
    support: Arc<Support>,
    k: u32,
    h: Vec<Vec<i64>>,
    residues: Vec<Vec<i64>>,
    vals: Vec<Vec<u32>>,
}

impl Quotient {
    fn new(support: &Arc<Support>, k: u32) -> Self {
        let m = support.ideal(&vec![k as i64; support.len()]).unwrap();
        let h: Vec<Vec<i64>> = m
            .basis()
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        let n = h.len();
        let mut residues = vec![vec![0i64; n]];
        for i in 0..n {
            residues = residues
                .into_iter()
                .flat_map(|v| {
                    (0..h[i][i]).map(move |c| {
                        let mut w = v.clone();
                        w[i] = c;
                        w
                    })
                })
                .collect();
        }
        let powers: Vec<Vec<_>> = support
            .primes()
            .iter()
            .map(|pr| (1..=k).map(|j| pr.ideal.pow(j).unwrap()).collect())
            .collect();
        let vals = residues
            .iter()
            .map(|r| {
                let big: Vec<BigInt> = r.iter().map(|&c| BigInt::from(c)).collect();
                powers
                    .iter()
                    .map(|pp| pp.iter().take_while(|a| a.contains(&big)).count() as u32)
                    .collect()
            })
            .collect();
        Quotient {
            support: support.clone(),
            k,
            h,
            residues,
            vals,
        }
    }

    /// Index of `t` after reducing it in place modulo the lattice.
    fn position(&self, t: &mut [i64]) -> usize {
        for (i, row) in self.h.iter().enumerate() {
            let q = t[i].div_euclid(row[i]);
            if q != 0 {
                for (x, y) in t.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
        // residues are listed in mixed-radix order, last coordinate fastest
        t.iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc * self.h[i][i] as usize + c as usize)
    }

    /// Additive and multiplicative residue sets of `x`.
    fn sets(&self, x: &ConstructibleSet) -> (Vec<bool>, Vec<bool>) {
        let size = self.residues.len();
        let (rep, ideal, marked) = match x {
            ConstructibleSet::Empty => return (vec![false; size], vec![false; size]),
            ConstructibleSet::Full { rep, ideal } => (rep, ideal, None),
            ConstructibleSet::PDiff { rep, ideal, marked } => (rep, ideal, Some(*marked)),
        };
        let a = ideal.valuations();
        let b: Vec<i64> = rep.iter().map(|c| i64::try_from(c).unwrap()).collect();
        let above = |v: &[u32]| v.iter().zip(a).all(|(&x, &y)| x as i64 >= y);
        let mut d = vec![0i64; b.len()];
        let add = self
            .residues
            .iter()
            .map(|r| {
                for ((z, x), y) in d.iter_mut().zip(r).zip(&b) {
                    *z = x - y;
                }
                above(&self.vals[self.position(&mut d)])
            })
            .collect();
        let mult = self
            .vals
            .iter()
            .map(|v| {
                above(v)
                    && v.iter().all(|&e| e < self.k)
                    && marked.is_none_or(|m| v[m] as i64 == a[m])
            })
            .collect();
        (add, mult)
    }
}

fn product_eq(x: &(Vec<bool>, Vec<bool>), y: &(Vec<bool>, Vec<bool>)) -> bool {
    let empty = |s: &(Vec<bool>, Vec<bool>)| !s.0.contains(&true) || !s.1.contains(&true);
    (empty(x) && empty(y)) || x == y
}

fn and(x: &[bool], y: &[bool]) -> Vec<bool> {
    x.iter().zip(y).map(|(a, b)| *a && *b).collect()
}

/// Independence of the one-prime families and randomized intersections.
fn criterion_7() -> Check {
    let start = Instant::now();
    let mut families = 0;
    for (poly, p) in [
        ("x", 2),
        ("x", 3),
        ("x", 5),
        ("x^2+1", 2),
        ("x^2+1", 3),
        ("x^2+1", 5),
    ] {
        let k = field(poly);
        for pr in primes_above(&k, p).map_err(|e| e.to_string())? {
            let s = Support::new(&k, vec![pr]).map_err(|e| e.to_string())?;
            let lv = Level::new(&s, 5).map_err(|e| e.to_string())?;
            let fam = j_family(&s, 0, 3).map_err(|e| e.to_string())?;
            let r =
                independence_check(&fam, &lv, IndependenceMode::Full).map_err(|e| e.to_string())?;
            ensure(r.independent, || {
                format!("{poly} above {p}: witness {:?}", r.witness)
            })?;
            families += 1;
        }
    }

    let q = field("x");
    let g = field("x^2+1");
    let contexts = [
        Support::new(
            &q,
            vec![
                primes_above(&q, 2).unwrap().remove(0),
                primes_above(&q, 3).unwrap().remove(0),
            ],
        )
        .unwrap(),
        Support::new(
            &g,
            vec![
                primes_above(&g, 2).unwrap().remove(0),
                primes_above(&g, 5).unwrap().remove(1),
            ],
        )
        .unwrap(),
        Support::new(
            &g,
            vec![
                primes_above(&g, 2).unwrap().remove(0),
                primes_above(&g, 3).unwrap().remove(0),
            ],
        )
        .unwrap(),
        Support::new(&g, primes_above(&g, 5).unwrap()).unwrap(),
    ];
    let quotients: Vec<Quotient> = contexts.iter().map(|s| Quotient::new(s, 3)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20260101);
    let cases = 10_000;
    for case in 0..cases {
        let qt = &quotients[case % quotients.len()];
        let s = &qt.support;
        let n = s.field().degree();
        let marked = rng.gen_range(0..s.len());
        let mut draw = |pdiff: bool| {
            let rep: Vec<BigInt> = (0..n)
                .map(|_| BigInt::from(rng.gen_range(-60..60)))
                .collect();
            let vals: Vec<i64> = (0..s.len()).map(|_| rng.gen_range(0..3)).collect();
            let ideal = SupportedIdeal::new(s, vals).unwrap();
            if pdiff {
                ConstructibleSet::pdiff(&rep, ideal, marked).unwrap()
            } else {
                ConstructibleSet::full(&rep, ideal).unwrap()
            }
        };
        let kinds = case / quotients.len() % 4;
        let (x, y) = (draw(kinds & 1 == 1), draw(kinds & 2 == 2));
        let got = match kinds {
            0 => intersect(&x, &y),
            3 => pdiff_intersect(&x, &y),
            _ => meet(&x, &y),
        }
        .map_err(|e| format!("case {case}: {e}"))?;
        let (sx, sy) = (qt.sets(&x), qt.sets(&y));
        let want = (and(&sx.0, &sy.0), and(&sx.1, &sy.1));
        ensure(product_eq(&qt.sets(&got), &want), || {
            format!("case {case}: {x} ∩ {y} gave {got}")
        })?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{families} families independent, {cases} intersections, {:.1?}",
        start.elapsed()
    ))
}

fn nfk_json(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nfk"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

/// Two runs with the same flags give the same bytes.
fn criterion_8() -> Check {
    let inv = [
        "invariants",
        "--poly",
        "x^2+23",
        "--bound",
        "200",
        "--format",
        "json",
        "--seed",
        "7",
        "--jobs",
        "4",
    ];
    let eq = [
        "equiv", "--left", "x^8-3", "--right", "x^8-48", "--bound", "500", "--mode", "full",
        "--format", "json", "--seed", "7", "--jobs", "4",
    ];
    for (args, code) in [(&inv[..], 0), (&eq[..], 0)] {
        let a = nfk_json(args)?;
        let b = nfk_json(args)?;
        ensure(a.1 == code, || format!("{}: exit {}", args[0], a.1))?;
        ensure(!a.0.is_empty() && a == b, || {
            format!("{}: outputs differ", args[0])
        })?;
        serde_json::from_slice::<serde_json::Value>(&a.0).map_err(|e| e.to_string())?;
    }
    Ok("invariants and equiv byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("torsion-order formula", criterion_1),
        ("splitting recovery", criterion_2),
        ("arithmetic-equivalence checker", criterion_3),
        ("rank formula", criterion_4),
        ("degree formula at finite bound", criterion_5),
        ("good-prime consequences", criterion_6),
        ("combinatorial backbone", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
