//! Generalized Laguerre polynomials with exact rational coefficients.

use num_traits::Zero;

use crate::scalar::{rat_int, rat_to_f64, Rat};

/// Coefficients of L_k^a(x) in increasing powers of x, generated by the three-term recurrence
/// (j+1) L_{j+1} = (2j+1+a-x) L_j - (j+a) L_{j-1}.
pub fn laguerre(k: u32, a: u32) -> Vec<Rat> {
    let a_r = rat_int(a as i64);
    let mut prev: Vec<Rat> = vec![rat_int(1)];
    if k == 0 {
        return prev;
    }
    let mut cur: Vec<Rat> = vec![&a_r + rat_int(1), rat_int(-1)];
    for j in 1..k {
        let j_r = rat_int(j as i64);
        let mut next = vec![Rat::zero(); cur.len() + 1];
        let c0 = rat_int(2 * j as i64 + 1) + &a_r;
        for (i, c) in cur.iter().enumerate() {
            next[i] += &c0 * c;
            next[i + 1] -= c.clone();
        }
        let c1 = &j_r + &a_r;
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &c1 * c;
        }
        let denom = rat_int(j as i64 + 1);
        for c in next.iter_mut() {
            *c = &*c / &denom;
        }
        prev = cur;
        cur = next;
    }
    cur
}

pub fn laguerre_eval(k: u32, a: u32, x: f64) -> f64 {
    let coeffs = laguerre(k, a);
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + rat_to_f64(c))
}

pub fn laguerre_eval_rat(k: u32, a: u32, x: &Rat) -> Rat {
    laguerre(k, a)
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, factorial, rat};

    #[test]
    fn low_orders() {
        assert_eq!(laguerre(0, 3), vec![rat(1, 1)]);
        assert_eq!(laguerre(1, 1), vec![rat(2, 1), rat(-1, 1)]);
        assert_eq!(laguerre(2, 0), vec![rat(1, 1), rat(-2, 1), rat(1, 2)]);
    }

    #[test]
    fn matches_explicit_sum() {
        for k in 0..8u32 {
            for a in 0..5u32 {
                let explicit: Vec<Rat> = (0..=k)
                    .map(|j| {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        Rat::new(binomial(k + a, k - j) * sign, factorial(j))
                    })
                    .collect();
                assert_eq!(laguerre(k, a), explicit, "k={k} a={a}");
            }
        }
    }

    #[test]
    fn value_at_zero_is_binomial() {
        for k in 0..6u32 {
            for a in 0..4u32 {
                assert_eq!(
                    laguerre_eval_rat(k, a, &Rat::zero()),
                    Rat::from_integer(binomial(k + a, k))
                );
            }
        }
    }
}
