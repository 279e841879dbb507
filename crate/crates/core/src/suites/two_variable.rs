//! Identities in two variables: `h = [[x,y]^2,x]`, `d = [x,y]^3` and the
//! family `d_{k,l} = [x,y]^k [x,y,x^(l)]`.

use crate::algebras::{evaluate_mat, generic_f};
use crate::catalog::{d_cube, dkl, hall};
use crate::freealg::NCPoly;
use crate::report::{timed, ClaimResult};
use crate::tideal::spaces::membership_residuals;
use crate::tideal::{Limits, TidealError};

use super::{clip, show};

pub fn run(l: &Limits) -> Vec<ClaimResult> {
    let mut out = vec![
        timed("two_variable.h_vanishes", "h(C1,C2) = 0", || vanishes(&hall())),
        timed("two_variable.cube_vanishes", "[C1,C2]^3 = 0", || vanishes(&d_cube())),
    ];
    for k in 2..=3 {
        for ll in 0..=3 {
            out.push(timed(&format!("two_variable.dkl_vanishes.k{k}.l{ll}"), "d_{k,l}(C1,C2) = 0 for k >= 2", || vanishes(&dkl(k, ll))));
        }
    }
    for k in 0..=1 {
        for ll in 0..=4 {
            out.push(timed(&format!("two_variable.dkl_nonzero.k{k}.l{ll}"), "d_{k,l}(C1,C2) ≠ 0 for k < 2", || {
                let (c1, c2) = generic_f();
                let v = evaluate_mat(&dkl(k, ll), &[c1, c2])?;
                Ok(ClaimResult::new("", "").verdict(!v.is_zero()).witness(show(&v)))
            }));
        }
    }
    for ll in 0..=3 {
        out.push(timed(&format!("two_variable.d2l_from_h_and_d.l{ll}"), "d_{2,l} lies in T(h, d) at its bidegree", || member(&[hall(), d_cube()], &dkl(2, ll), l)));
    }
    for ll in 0..=2 {
        out.push(timed(&format!("two_variable.d3l_from_d2l.l{ll}"), "d_{3,l} lies in T(d_{2,l}) at its bidegree", || member(&[dkl(2, ll)], &dkl(3, ll), l)));
    }
    out
}

fn vanishes(f: &NCPoly) -> Result<ClaimResult, TidealError> {
    let (c1, c2) = generic_f();
    let v = evaluate_mat(f, &[c1, c2])?;
    let c = ClaimResult::new("", "").verdict(v.is_zero());
    Ok(if v.is_zero() { c } else { c.witness(show(&v)) })
}

fn member(gens: &[NCPoly], f: &NCPoly, l: &Limits) -> Result<ClaimResult, TidealError> {
    let res = membership_residuals(gens, f, l)?;
    let c = ClaimResult::new("", "").dim("degree", f.degree().unwrap_or(0)).verdict(res.is_empty());
    Ok(match res.first() {
        Some(r) => c.witness(format!("residual {}", clip(r, 400))),
        None => c,
    })
}
