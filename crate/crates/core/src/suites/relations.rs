//! Arithmetic in K[X;Y] and the closed forms of elements of `F`.

use crate::algebras::{generic_f, is_central, is_strongly_central_bounded, MatSC};
use crate::catalog::{a_matrices, a_of_k, big_q, c1_pow_closed, c2_pow_closed, h_elements, q, r, s};
use crate::exactlin::Rat;
use crate::report::{timed, ClaimResult};
use crate::supercomm::f_vars::*;
use crate::supercomm::SCPoly;

use super::clip;

pub fn run() -> Vec<ClaimResult> {
    vec![
        timed("relations.h_products", "the sixteen products h_i·y relations", h_products),
        timed("relations.h_in_annihilator", "each h_i annihilates both odd elements defining J", h_annihilator),
        timed("relations.qrs_recurrences", "recurrences among q_n, r_n, s_n for n <= 8", qrs_recurrences),
        timed("relations.q_difference", "x1^n x1'^m - x1^m x1'^n = (x1'-x1)(q_n q_(m-1) - q_m q_(n-1)) for n, m <= 8", q_difference),
        timed("relations.power_closed_forms", "closed forms of C1^n and C2^n for n <= 8", power_closed_forms),
        timed("relations.product_grading", "graded shape of the entries of C1^n C2^m for n, m <= 5", product_grading),
        timed("relations.a_strongly_central", "A0..A3 and K[X]-combinations are strongly central", a_strongly_central),
        timed("relations.ak_reconstruction", "f(C1,C2) = (x1'-x1)^(n-1)(x2'-x2)^(m-1) A(k), k <= 5, cross-multiplied", ak_reconstruction),
        timed("relations.ak_divisible", "the diagonal entry of A(k) is a polynomial, k <= 5", ak_divisible),
    ]
}

fn dx1() -> SCPoly {
    &x1p() - &x1()
}

fn dx2() -> SCPoly {
    &x2p() - &x2()
}

/// `(lhs, rhs, label)` for the displayed products.
fn h_table() -> Vec<(SCPoly, SCPoly, &'static str)> {
    let [h1, h2, h3, h4] = h_elements();
    let z = int(0);
    vec![
        (&h1 * &y1(), z.clone(), "h1 y1 = 0"),
        (&h1 * &y1p(), z.clone(), "h1 y1' = 0"),
        (&h1 * &y2(), z.clone(), "h1 y2 = 0"),
        (&h1 * &y2p(), z.clone(), "h1 y2' = 0"),
        (&h2 * &y1(), z.clone(), "h2 y1 = 0"),
        (&h2 * &y2(), z.clone(), "h2 y2 = 0"),
        (&h3 * &y1p(), z.clone(), "h3 y1' = 0"),
        (&h3 * &y2p(), z, "h3 y2' = 0"),
        (&h2 * &y1p(), &dx1() * &h1, "h2 y1' = (x1'-x1) h1"),
        (&h3 * &y1(), &dx1() * &h1, "h3 y1 = (x1'-x1) h1"),
        (&h2 * &y2p(), &dx2() * &h1, "h2 y2' = (x2'-x2) h1"),
        (&h3 * &y2(), &dx2() * &h1, "h3 y2 = (x2'-x2) h1"),
        (&h4 * &y1(), &dx1() * &h2, "h4 y1 = (x1'-x1) h2"),
        (&h4 * &y2(), &dx2() * &h2, "h4 y2 = (x2'-x2) h2"),
        (&h4 * &y1p(), -&(&dx1() * &h3), "h4 y1' = -(x1'-x1) h3"),
        (&h4 * &y2p(), -&(&dx2() * &h3), "h4 y2' = -(x2'-x2) h3"),
    ]
}

fn failures(rows: impl IntoIterator<Item = (bool, String)>) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for (ok, label) in rows {
        n += 1;
        if !ok {
            bad.push(label);
        }
    }
    (n, bad)
}

fn tally(c: ClaimResult, (n, bad): (usize, Vec<String>)) -> ClaimResult {
    let ok = bad.is_empty();
    let c = c.dim("checked", n).dim("failed", bad.len()).verdict(ok);
    if ok {
        c
    } else {
        c.witness(clip(bad.join("; "), 400))
    }
}

fn h_products() -> Result<ClaimResult, crate::tideal::TidealError> {
    let rows = h_table().into_iter().map(|(l, r, label)| (l == r, label.to_string()));
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

fn h_annihilator() -> Result<ClaimResult, crate::tideal::TidealError> {
    let lo = &(&dx2() * &y1()) - &(&dx1() * &y2());
    let hi = &(&dx2() * &y1p()) - &(&dx1() * &y2p());
    let mut rows = Vec::new();
    for (i, h) in h_elements().iter().enumerate() {
        rows.push(((h * &lo).is_zero(), format!("h{} (x2'-x2)y1 - (x1'-x1)y2", i + 1)));
        rows.push(((h * &hi).is_zero(), format!("h{} (x2'-x2)y1' - (x1'-x1)y2'", i + 1)));
    }
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

fn qrs_recurrences() -> Result<ClaimResult, crate::tideal::TidealError> {
    let mut rows = Vec::new();
    for n in 1..=8i64 {
        rows.push((r(n) == &q(n - 1) + &(&x1() * &r(n - 1)), format!("r_{n}")));
        rows.push((s(n) == &q(n - 1) + &(&x1p() * &s(n - 1)), format!("s_{n}")));
        rows.push((&s(n) + &r(n) == q(n - 1).scale(&Rat::from_int(n + 1)), format!("s_{n} + r_{n}")));
        rows.push((q(n) == &x1().pow(n as u32) + &(&x1p() * &q(n - 1)), format!("q_{n} first form")));
        rows.push((q(n) == &x1p().pow(n as u32) + &(&x1() * &q(n - 1)), format!("q_{n} second form")));
        rows.push((&dx1() * &q(n - 1) == &x1p().pow(n as u32) - &x1().pow(n as u32), format!("(x1'-x1) q_{}", n - 1)));
    }
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

fn q_difference() -> Result<ClaimResult, crate::tideal::TidealError> {
    let mut rows = Vec::new();
    for n in 0..=8i64 {
        for m in 0..=8i64 {
            let lhs = &(&x1().pow(n as u32) * &x1p().pow(m as u32)) - &(&x1().pow(m as u32) * &x1p().pow(n as u32));
            let rhs = &dx1() * &(&(&q(n) * &q(m - 1)) - &(&q(m) * &q(n - 1)));
            rows.push((lhs == rhs, format!("n={n}, m={m}")));
        }
    }
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

fn power_closed_forms() -> Result<ClaimResult, crate::tideal::TidealError> {
    let (c1, c2) = generic_f();
    let mut rows = Vec::new();
    let (mut p1, mut p2) = (MatSC::identity(2, c1.alphabet()), MatSC::identity(2, c1.alphabet()));
    for n in 0..=8u32 {
        rows.push((c1_pow_closed(n) == p1, format!("C1^{n}")));
        rows.push((c2_pow_closed(n) == p2, format!("C2^{n}")));
        p1 = &p1 * &c1;
        p2 = &p2 * &c2;
    }
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

/// Y-degrees present in `p`.
fn y_degrees(p: &SCPoly) -> Vec<u32> {
    let mut d: Vec<u32> = (0..=4).filter(|&k| !p.y_degree_component(k).is_zero()).collect();
    d.dedup();
    d
}

fn product_grading() -> Result<ClaimResult, crate::tideal::TidealError> {
    let mut rows = Vec::new();
    for n in 0..=5u32 {
        for m in 0..=5u32 {
            let p = &c1_pow_closed(n) * &c2_pow_closed(m);
            let (ni, mi) = (n as i64, m as i64);
            let d11 = p.get(0, 0) - &(&x1().pow(n) * &x2().pow(m));
            let d22 = p.get(1, 1) - &(&x1p().pow(n) * &x2p().pow(m));
            let b = &(&(&y1() * &x2p().pow(m)) * &q(ni - 1)) + &(&(&y2() * &x1().pow(n)) * &big_q(mi - 1));
            let c = &(&(&y1p() * &x2().pow(m)) * &q(ni - 1)) + &(&(&y2p() * &x1p().pow(n)) * &big_q(mi - 1));
            let d12 = p.get(0, 1) - &b;
            let d21 = p.get(1, 0) - &c;
            let even_ok = |d: &SCPoly| y_degrees(d).iter().all(|k| *k == 2 || *k == 4);
            let odd_ok = |d: &SCPoly| y_degrees(d).iter().all(|k| *k == 3);
            let ok = even_ok(&d11) && even_ok(&d22) && odd_ok(&d12) && odd_ok(&d21);
            rows.push((ok, format!("n={n}, m={m}")));
        }
    }
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

fn a_strongly_central() -> Result<ClaimResult, crate::tideal::TidealError> {
    let (c1, c2) = generic_f();
    let gens = [c1, c2];
    let a = a_matrices();
    let mut rows: Vec<(bool, String)> = a
        .iter()
        .enumerate()
        .map(|(i, m)| (is_strongly_central_bounded(m, &gens, 3), format!("A{i}")))
        .collect();
    let alphas = [x1(), x2p(), int(1), &x1() * &x2()];
    let combo = a.iter().zip(&alphas).fold(MatSC::zero(2, gens[0].alphabet()), |acc, (m, al)| &acc + &m.scale_left(al));
    rows.push((is_strongly_central_bounded(&combo, &gens, 3), "x1 A0 + x2' A1 + A2 + x1x2 A3".into()));
    rows.push((!is_central(&gens[0], &gens), "C1 is not central".into()));
    Ok(tally(ClaimResult::new("", "").detail("strong centrality tested against all words of length <= 3 in C1, C2"), failures(rows)))
}

/// Index sequences `1, 2, i3, …, ik` with `k <= 5`.
fn ak_indices() -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for k in 2..=5u32 {
        for bits in 0..1u32 << (k - 2) {
            let mut idx = vec![1, 2];
            idx.extend((0..k - 2).map(|b| 1 + ((bits >> b) & 1) as u16));
            out.push(idx);
        }
    }
    out
}

fn label(idx: &[u16]) -> String {
    let v: Vec<String> = idx.iter().map(|i| format!("t{i}")).collect();
    format!("[{}]", v.join(","))
}

fn ak_reconstruction() -> Result<ClaimResult, crate::tideal::TidealError> {
    let rows = ak_indices().into_iter().map(|idx| (a_of_k(&idx).map(|a| a.reconstructs()).unwrap_or(false), label(&idx)));
    Ok(tally(ClaimResult::new("", ""), failures(rows)))
}

fn ak_divisible() -> Result<ClaimResult, crate::tideal::TidealError> {
    let rows: Vec<(bool, String)> =
        ak_indices().into_iter().map(|idx| (a_of_k(&idx).map(|a| a.f_entry.is_some()).unwrap_or(false), label(&idx))).collect();
    let c = tally(ClaimResult::new("", ""), failures(rows));
    Ok(c.non_critical().detail("the numerator is divisible by x_i'-x_i only for even k; the reconstruction holds cross-multiplied"))
}
