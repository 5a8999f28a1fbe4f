//! Exponent / derivative multi-indices of fixed arity.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::One;

use crate::rational::binom_u32;

/// A vector of naturals with immutable arity. Used both as a monomial
/// exponent vector and as a mixed-partial-derivative index.
///
/// Ordering is graded lexicographic: lower total degree first, ties broken
/// by lexicographic comparison of the exponent vectors. All term maps in the
/// crate are keyed by this order, which makes their contents canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(arity: usize) -> Self {
        MultiIndex(vec![0; arity])
    }

    /// The index with a single 1 in slot `i`.
    pub fn unit(arity: usize, i: usize) -> Self {
        assert!(i < arity, "unit index {i} out of arity {arity}");
        let mut e = vec![0; arity];
        e[i] = 1;
        MultiIndex(e)
    }

    /// `k` in slot `i`, zero elsewhere.
    pub fn single(arity: usize, i: usize, k: u32) -> Self {
        assert!(i < arity);
        let mut e = vec![0; arity];
        e[i] = k;
        MultiIndex(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.arity(), other.arity(), "multi-index arity mismatch");
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise subtraction; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        assert_eq!(self.arity(), other.arity(), "multi-index arity mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `<=`.
    pub fn le_pointwise(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `prod_i C(self_i, lower_i)` — the multi-binomial used by the Leibniz
    /// expansion of operator composition.
    pub fn binom(&self, lower: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (a, b) in self.0.iter().zip(&lower.0) {
            acc *= binom_u32(*a, *b);
        }
        acc
    }

    /// `prod_i (self_i + g_i)! / self_i!` — the integer factor picked up when
    /// a Taylor coefficient map is differentiated by `g`.
    pub fn deriv_scale(&self, g: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (d, gi) in self.0.iter().zip(&g.0) {
            for j in 1..=*gi as u64 {
                acc *= BigInt::from(*d as u64 + j);
            }
        }
        acc
    }

    /// All indices of the given arity with total degree `<= max_degree`, in
    /// graded-lex order.
    pub fn enumerate(arity: usize, max_degree: u32) -> Vec<MultiIndex> {
        fn exact_degree(cur: &mut Vec<u32>, slot: usize, left: u32, out: &mut Vec<MultiIndex>) {
            if slot + 1 == cur.len() {
                cur[slot] = left;
                out.push(MultiIndex(cur.clone()));
                cur[slot] = 0;
                return;
            }
            for v in 0..=left {
                cur[slot] = v;
                exact_degree(cur, slot + 1, left - v, out);
                cur[slot] = 0;
            }
        }
        if arity == 0 {
            return vec![MultiIndex(vec![])];
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; arity];
        for d in 0..=max_degree {
            let mut layer = Vec::new();
            exact_degree(&mut cur, 0, d, &mut layer);
            layer.sort();
            out.extend(layer);
        }
        out
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
