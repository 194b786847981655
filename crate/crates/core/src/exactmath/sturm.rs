use num_traits::Signed;

use super::poly::{IntPoly, RatPoly};
use crate::error::{Error, Result};

/// Exact number of distinct real roots of a squarefree polynomial, by
/// counting sign changes of its Sturm chain at ±∞.
pub fn real_root_count(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(0);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let chain = sturm_chain(&f.to_rat());
    let at_pos: Vec<i8> = chain.iter().map(|p| sign(p, false)).collect();
    let at_neg: Vec<i8> = chain.iter().map(|p| sign(p, true)).collect();
    Ok(sign_changes(&at_neg) - sign_changes(&at_pos))
}

fn sturm_chain(f: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign(p: &RatPoly, at_negative_infinity: bool) -> i8 {
    let lc = p.leading();
    let s = if lc.is_positive() { 1 } else { -1 };
    if at_negative_infinity && p.degree() % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
