//! Generalized Laguerre and Jacobi polynomials with rational parameters,
//! built in exact arithmetic.
//!
//! Both constructors run the classical three-term recurrences. For Jacobi
//! parameters where a recurrence denominator vanishes (possible for
//! sufficiently negative rational `alpha + beta`) the constructor falls back
//! to the closed binomial sum, which stays well defined. Indices below zero
//! yield the zero polynomial; the tridiagonal ladder identities rely on that
//! convention at the edge of the basis.

use std::sync::Arc;

use num::Zero;

use crate::poly::MultiPoly;
use crate::rational::{binom_rational, rat, rint, Rational};

fn univar(name: &str) -> Arc<Vec<String>> {
    Arc::new(vec![name.to_string()])
}

/// `L_n^alpha` in the single variable `var`.
pub fn laguerre(n: i64, alpha: &Rational, var: &str) -> MultiPoly {
    let vars = univar(var);
    if n < 0 {
        return MultiPoly::zero(vars);
    }
    let x = MultiPoly::var(vars.clone(), 0);
    let mut prev = MultiPoly::one(vars.clone()); // L_0
    if n == 0 {
        return prev;
    }
    // L_1 = 1 + alpha - x
    let mut cur = &MultiPoly::constant(vars.clone(), alpha + rint(1)) - &x;
    for k in 1..n {
        // (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
        let kq = rint(k);
        let a = &MultiPoly::constant(vars.clone(), &kq + &kq + rint(1) + alpha) - &x;
        let next = (&(&a * &cur) - &prev.scale(&(&kq + alpha))).scale(&(&kq + rint(1)).recip());
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_j^(alpha,beta)` in the single variable `var`.
pub fn jacobi(j: i64, alpha: &Rational, beta: &Rational, var: &str) -> MultiPoly {
    let vars = univar(var);
    if j < 0 {
        return MultiPoly::zero(vars);
    }
    if j == 0 {
        return MultiPoly::one(vars);
    }
    let z = MultiPoly::var(vars.clone(), 0);
    let ab = alpha + beta;
    // Guard the recurrence denominators 2k(k+a+b)(2k+a+b-2) for k = 2..=j.
    for k in 2..=j {
        let kq = rint(k);
        if (&kq + &ab).is_zero() || (&kq + &kq + &ab - rint(2)).is_zero() {
            return jacobi_series(j, alpha, beta, &vars);
        }
    }
    // P_1 = (a+b+2) z / 2 + (a-b)/2
    let mut prev = MultiPoly::one(vars.clone());
    let mut cur = &z.scale(&((&ab + rint(2)) / rint(2)))
        + &MultiPoly::constant(vars.clone(), (alpha - beta) / rint(2));
    for k in 2..=j {
        let kq = rint(k);
        let c = &kq + &kq + &ab; // 2k + a + b
        let cm1 = &c - rint(1);
        let cm2 = &c - rint(2);
        // 2k(k+a+b)(2k+a+b-2) P_k =
        //   (2k+a+b-1) [ (2k+a+b)(2k+a+b-2) z + a^2 - b^2 ] P_{k-1}
        //   - 2(k+a-1)(k+b-1)(2k+a+b) P_{k-2}
        let lin = &z.scale(&(&c * &cm2))
            + &MultiPoly::constant(vars.clone(), alpha * alpha - beta * beta);
        let t1 = (&lin * &cur).scale(&cm1);
        let t2 = prev.scale(&(rint(2) * (alpha + &kq - rint(1)) * (beta + &kq - rint(1)) * &c));
        let denom = rint(2) * &kq * (&kq + &ab) * &cm2;
        let next = (&t1 - &t2).scale(&denom.recip());
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed form `P_j = sum_s C(j+a, j-s) C(j+b, s) ((z-1)/2)^s ((z+1)/2)^(j-s)`.
fn jacobi_series(j: i64, alpha: &Rational, beta: &Rational, vars: &Arc<Vec<String>>) -> MultiPoly {
    let z = MultiPoly::var(vars.clone(), 0);
    let half = rat(1, 2);
    let zm = (&z - &MultiPoly::one(vars.clone())).scale(&half);
    let zp = (&z + &MultiPoly::one(vars.clone())).scale(&half);
    let mut acc = MultiPoly::zero(vars.clone());
    for s in 0..=j {
        let c = binom_rational(&(alpha + rint(j)), (j - s) as u32)
            * binom_rational(&(beta + rint(j)), s as u32);
        if c.is_zero() {
            continue;
        }
        let term = (&zm.pow(s as u32) * &zp.pow((j - s) as u32)).scale(&c);
        acc = &acc + &term;
    }
    acc
}
