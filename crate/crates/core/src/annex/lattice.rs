use num_bigint::BigInt;
use num_traits::Zero;

use super::WeightSpec;
use crate::arith::{factorial, Rational};

/// `vol(C_H)^2 = (Σ a_i²) / gcd²` for a fundamental domain `C_H` of the
/// lattice `{t ∈ Z^r : Σ a_i t_i = 0}`. Squared to stay rational.
pub fn lattice_volume_squared(w: &WeightSpec) -> Rational {
    let sum: u64 = w.weights().iter().map(|a| a * a).sum();
    let g = w.gcd();
    Rational::new(sum.into(), (g * g).into())
}

/// Calls `f` on every `l ∈ N^r` with `Σ a_i l_i = m`, in lexicographic order.
pub fn for_each_lattice_point<F: FnMut(&[u64])>(a: &[u64], m: u64, mut f: F) {
    let mut l = vec![0u64; a.len()];
    walk(a, 0, m, &mut l, &mut f);
}

fn walk<F: FnMut(&[u64])>(a: &[u64], i: usize, rem: u64, l: &mut [u64], f: &mut F) {
    let last = a.len() - 1;
    if i == last {
        if rem.is_multiple_of(a[i]) {
            l[i] = rem / a[i];
            f(l);
        }
        return;
    }
    for v in 0..=rem / a[i] {
        l[i] = v;
        walk(a, i + 1, rem - v * a[i], l, f);
    }
}

pub fn lattice_point_count(w: &WeightSpec, m: u64) -> u64 {
    let mut count = 0;
    for_each_lattice_point(w.weights(), m, |_| count += 1);
    count
}

/// Integer accumulator that stays in `i128` until it would overflow.
#[derive(Default)]
pub(crate) struct Accumulator {
    fast: i128,
    slow: BigInt,
}

impl Accumulator {
    pub(crate) fn add_i128(&mut self, x: i128) {
        match self.fast.checked_add(x) {
            Some(v) => self.fast = v,
            None => {
                self.slow += BigInt::from(self.fast) + BigInt::from(x);
                self.fast = 0;
            }
        }
    }

    pub(crate) fn add_big(&mut self, x: BigInt) {
        self.slow += x;
    }

    pub(crate) fn total(self) -> BigInt {
        self.slow + BigInt::from(self.fast)
    }
}

/// Exact `Σ_{a·l = m} Π l_i^{p_i} / p_i!` (zero when `gcd(a) ∤ m`).
pub fn lattice_sum_monomial(w: &WeightSpec, p: &[u32], m: u64) -> Rational {
    assert_eq!(
        p.len(),
        w.r(),
        "exponent list length must match the weights"
    );
    let mut acc = Accumulator::default();
    for_each_lattice_point(w.weights(), m, |l| {
        let fast = l.iter().zip(p).try_fold(1i128, |prod, (&li, &pi)| {
            (li as i128)
                .checked_pow(pi)
                .and_then(|x| prod.checked_mul(x))
        });
        match fast {
            Some(v) => acc.add_i128(v),
            None => acc.add_big(
                l.iter()
                    .zip(p)
                    .map(|(&li, &pi)| BigInt::from(li).pow(pi))
                    .product(),
            ),
        }
    });
    let denom: BigInt = p.iter().map(|&pi| factorial(pi as u64)).product();
    let total = acc.total();
    if total.is_zero() {
        return Rational::zero();
    }
    Rational::new(total, denom)
}
