//! The octic pair x^8 - 3 and x^8 - 48 against a brute-force factorization
//! oracle, then against the library's fingerprints.

mod oracle;

use nfk::cli::{compare, EquivMode, Fingerprint, PrimeEntry};
use nfk::numberfield::NumberField;

const LEFT: [i64; 9] = [-3, 0, 0, 0, 0, 0, 0, 0, 1];
const RIGHT: [i64; 9] = [-48, 0, 0, 0, 0, 0, 0, 0, 1];

#[test]
fn oracle_sees_identical_splitting() {
    for p in oracle::primes(2000).into_iter().filter(|&p| p > 3) {
        assert_eq!(
            oracle::factor_degrees(&LEFT, p),
            oracle::factor_degrees(&RIGHT, p),
            "p = {p}"
        );
    }
    // a non-equivalent control differs somewhere
    let other = [-12, 0, 0, 0, 0, 0, 0, 0, 1];
    assert!(oracle::primes(200)
        .into_iter()
        .filter(|&p| p > 3)
        .any(|p| oracle::factor_degrees(&LEFT, p) != oracle::factor_degrees(&other, p)));
}

#[test]
fn library_agrees_with_oracle() {
    for (coeffs, s) in [(LEFT, "x^8-3"), (RIGHT, "x^8-48")] {
        let fp = Fingerprint::compute(&NumberField::parse(s).unwrap(), 2000).unwrap();
        for (p, e) in &fp.primes {
            if *p <= 3 {
                continue;
            }
            let PrimeEntry::Split { ef, .. } = e else {
                panic!("{s}: unexpected skip at {p}");
            };
            assert!(ef.iter().all(|&(e, _)| e == 1));
            let mut fs: Vec<usize> = ef.iter().map(|&(_, f)| f as usize).collect();
            fs.sort_unstable();
            assert_eq!(fs, oracle::factor_degrees(&coeffs, *p), "{s} at {p}");
        }
    }
}

#[test]
fn checker_reports_equivalence() {
    let l = Fingerprint::compute(&NumberField::parse("x^8-3").unwrap(), 2000).unwrap();
    let r = Fingerprint::compute(&NumberField::parse("x^8-48").unwrap(), 2000).unwrap();
    for mode in [EquivMode::G, EquivMode::Full] {
        assert!(compare(&l, &r, mode).equivalent());
    }
}
