//! Integer arithmetic behind the construction: primality, Jacobi symbols,
//! quadratic-residue row sets, and quadratic Gauss sums.

use crate::{Complex64, Error, Result};

/// A prime modulus of the form `N = 4z + 3` with `z >= 1`.
///
/// Everything in the crate is parameterized by such an `N`; the congruence
/// class is what pins the Gauss sum to `±j·sqrt(N)` and hence makes the
/// column correlations of the sensing matrix constant in modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus {
    n: u64,
    z: u64,
}

impl Modulus {
    /// Validates `n` and wraps it. Rejects anything that is not a prime
    /// congruent to 3 mod 4, or that is below 7 (`z` must be positive).
    pub fn new(n: u64) -> Result<Self> {
        if !is_valid_modulus(n) {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus { n, z: (n - 3) / 4 })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn z(&self) -> u64 {
        self.z
    }
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
///
/// Miller-Rabin with the witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
/// 31, 37}, which is known to be exact for all `n < 3.3e24` and therefore
/// for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// True iff `n` is a prime congruent to 3 mod 4, with `n >= 7`.
pub fn is_valid_modulus(n: u64) -> bool {
    n >= 7 && n % 4 == 3 && is_prime(n)
}

/// The Jacobi symbol `(k / n)` for odd positive `n`.
///
/// Returns 0 iff `gcd(k, n) > 1`; computed by the standard binary
/// reciprocity reduction. `k` may be negative or exceed `n`; the symbol
/// only depends on `k mod n`.
pub fn jacobi_symbol(k: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "jacobi symbol requires an odd positive modulus, got {n}"
        )));
    }
    let mut num = k.rem_euclid(n as i64) as u64;
    let mut den = n;
    let mut sign = 1i32;
    while num != 0 {
        while num % 2 == 0 {
            num /= 2;
            // second supplementary law: (2/den) = -1 iff den = 3, 5 mod 8
            if den % 8 == 3 || den % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut num, &mut den);
        // quadratic reciprocity for odd coprime operands
        if num % 4 == 3 && den % 4 == 3 {
            sign = -sign;
        }
        num %= den;
    }
    if den == 1 {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// Row index list `[p*m^2 mod N]` for `m = 1..=M`, in construction order.
///
/// The indexes are pairwise distinct: `m^2 = m'^2 (mod N)` forces
/// `m = ±m' (mod N)`, and both branches are impossible for distinct
/// `m, m' <= (N-1)/2`. Distinctness is asserted rather than assumed.
pub fn quadratic_residue_rows(params: &crate::SensingParams) -> Vec<u64> {
    let n = params.n();
    let p = params.p() % n;
    let rows: Vec<u64> = (1..=params.m() as u64)
        .map(|m| mul_mod(p, mul_mod(m, m, n), n))
        .collect();
    let mut seen = vec![false; n as usize];
    for &r in &rows {
        assert!(
            !std::mem::replace(&mut seen[r as usize], true),
            "duplicate row index {r} for N={n}, p={p}"
        );
    }
    rows
}

/// Closed-form quadratic Gauss sum `g(k; N) = (k/N) * j * sqrt(N)`.
///
/// Valid for coprime `k, N` with `N > 0` and `N = 3 (mod 4)`; those are
/// exactly the preconditions enforced here. Non-coprime `k` is rejected
/// rather than extended to the degenerate value.
pub fn gauss_sum(k: i64, n: u64) -> Result<Complex64> {
    if n < 3 || n % 4 != 3 {
        return Err(Error::InvalidArgument(format!(
            "gauss sum closed form requires n = 3 (mod 4) and n >= 3, got {n}"
        )));
    }
    let k_red = k.rem_euclid(n as i64) as u64;
    if gcd(k_red, n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    let sign = jacobi_symbol(k, n)? as f64;
    Ok(Complex64::new(0.0, sign * (n as f64).sqrt()))
}

/// Brute-force quadratic Gauss sum: the literal floating-point evaluation
/// of `sum_{m=0}^{N-1} exp(j*2*pi*k*m^2 / N)`. Oracle for [`gauss_sum`].
pub fn gauss_sum_direct(k: i64, n: u64) -> Complex64 {
    assert!(n >= 1, "modulus must be positive");
    let k_red = k.rem_euclid(n as i64) as u64;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..n {
        let r = mul_mod(k_red, mul_mod(m, m, n), n);
        let angle = step * r as f64;
        sum += Complex64::new(angle.cos(), angle.sin());
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SensingParams;

    #[test]
    fn prime_examples() {
        assert!(!is_prime(1));
        assert!(is_prime(103));
        assert!(!is_prime(111)); // 3 * 37
        assert!(is_prime(2));
        assert!(!is_prime(0));
        // spot checks against trial division over a wider range
        for n in 0..2000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "disagreement at {n}");
        }
        // large 64-bit cases
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(18_446_744_073_709_551_555));
    }

    #[test]
    fn valid_modulus_examples() {
        assert!(is_valid_modulus(23));
        assert!(!is_valid_modulus(13)); // 13 = 1 mod 4
        assert!(is_valid_modulus(7));
        assert!(!is_valid_modulus(3)); // below 7: z must be positive
        assert!(!is_valid_modulus(15)); // 3 mod 4 but composite
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(2, 7).unwrap(), 1); // squares mod 7: {1,2,4}
        assert_eq!(jacobi_symbol(3, 7).unwrap(), -1);
        assert_eq!(jacobi_symbol(7, 7).unwrap(), 0);
        assert!(jacobi_symbol(1, 4).is_err());
        assert!(jacobi_symbol(1, 0).is_err());
    }

    #[test]
    fn jacobi_is_completely_multiplicative() {
        for n in [7u64, 11, 15, 23, 45, 103] {
            for k1 in -6i64..30 {
                for k2 in -3i64..25 {
                    let lhs = jacobi_symbol(k1, n).unwrap() * jacobi_symbol(k2, n).unwrap();
                    let rhs = jacobi_symbol(k1 * k2, n).unwrap();
                    assert_eq!(lhs, rhs, "k1={k1} k2={k2} n={n}");
                }
            }
        }
    }

    #[test]
    fn jacobi_matches_residue_enumeration_for_primes() {
        for n in (3..=500u64).filter(|&n| n % 2 == 1 && is_prime(n)) {
            let mut squares = vec![false; n as usize];
            for m in 1..n {
                squares[mul_mod(m, m, n) as usize] = true;
            }
            for k in 0..n {
                let expected = if k == 0 {
                    0
                } else if squares[k as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi_symbol(k as i64, n).unwrap(), expected, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn residue_rows_examples() {
        let p11 = SensingParams::new(11, 1).unwrap();
        assert_eq!(quadratic_residue_rows(&p11), vec![1, 4, 9, 5, 3]);
        let p7 = SensingParams::new(7, 1).unwrap();
        assert_eq!(quadratic_residue_rows(&p7), vec![1, 4, 2]);
        let p7b = SensingParams::new(7, 2).unwrap();
        assert_eq!(quadratic_residue_rows(&p7b), vec![2, 1, 4]);
    }

    #[test]
    fn residue_rows_distinct_for_all_small_moduli() {
        for n in (7..=500).filter(|&n| is_valid_modulus(n)) {
            for p in [1u64, 2, n - 1, n + 5] {
                if gcd(p % n, n) != 1 {
                    continue;
                }
                let params = SensingParams::new(n, p).unwrap();
                let rows = quadratic_residue_rows(&params);
                assert_eq!(rows.len(), params.m());
                let mut sorted = rows.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(sorted.len(), rows.len(), "repeat for N={n}, p={p}");
                assert!(rows.iter().all(|&r| r >= 1 && r < n));
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let g13 = gauss_sum(1, 3).unwrap();
        assert!((g13 - Complex64::new(0.0, 1.7320508075688772)).norm() < 1e-12);
        let g17 = gauss_sum(1, 7).unwrap();
        assert!((g17 - Complex64::new(0.0, 2.6457513110645907)).norm() < 1e-12);
        let g37 = gauss_sum(3, 7).unwrap();
        assert!((g37 - Complex64::new(0.0, -2.6457513110645907)).norm() < 1e-12);
        assert_eq!(gauss_sum(7, 7), Err(Error::NotCoprime { k: 7, n: 7 }));
        assert!(gauss_sum(1, 5).is_err()); // 5 = 1 mod 4
    }

    #[test]
    fn gauss_sum_direct_examples() {
        let d13 = gauss_sum_direct(1, 3);
        assert!((d13 - Complex64::new(0.0, 1.7320508075688772)).norm() < 1e-12);
        let d05 = gauss_sum_direct(0, 5);
        assert!((d05 - Complex64::new(5.0, 0.0)).norm() < 1e-12);
        let d211 = gauss_sum_direct(2, 11);
        assert!((d211 - Complex64::new(0.0, -3.3166247903554)).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_direct_sum_everywhere() {
        for n in (7..=500).filter(|&n| is_valid_modulus(n)) {
            let scale = 1e-9 * (n as f64).sqrt();
            for k in 1..n {
                let closed = gauss_sum(k as i64, n).unwrap();
                let direct = gauss_sum_direct(k as i64, n);
                assert!(
                    (closed - direct).norm() <= scale,
                    "k={k} n={n}: {closed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn gauss_sum_negative_and_large_k_reduce_mod_n() {
        for n in [7u64, 11, 19] {
            for k in [-5i64, -1, 1, 8, 25] {
                if gcd(k.rem_euclid(n as i64) as u64, n) != 1 {
                    continue;
                }
                let a = gauss_sum(k, n).unwrap();
                let b = gauss_sum_direct(k, n);
                assert!((a - b).norm() < 1e-9 * (n as f64).sqrt());
            }
        }
    }
}
