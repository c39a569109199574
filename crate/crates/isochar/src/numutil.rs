//! Small integer helpers shared across modules: primality, gcd, Euler phi,
//! factoring, modular arithmetic on machine words, and cyclotomic
//! polynomials over Z. All inputs stay far below 2^32, so u128 intermediates
//! make overflow a non-issue.

/// Deterministic trial-division primality check; all primes used here are
/// below 10^4.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in ascending order within [lo, hi].
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Distinct prime factors of n, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for p in prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u128, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a mod p for prime p, via Fermat.
pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, (p - 2) as u128, p)
}

/// Inverse of a modulo m for any m with gcd(a, m) = 1, via extended Euclid.
pub fn invmod_any(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Legendre symbol (a/p) in {-1, 0, 1} via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = powmod(r, ((p - 1) / 2) as u128, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Smallest generator of (Z/p)^x.
pub fn primitive_root_mod_p(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    'outer: for g in 2..p {
        for &ell in &factors {
            if powmod(g, ((p - 1) / ell) as u128, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("(Z/p)^x is cyclic for prime p")
}

/// Cyclotomic polynomial Phi_m as integer coefficients, constant term first.
/// Computed by exact division: Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
pub fn cyclotomic(m: u64) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

/// Exact division of integer polynomials (monic divisor), constant first.
/// Panics if the division does not come out exact; cyclotomic recursion
/// guarantees it does.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    assert!(rem.len() > dn);
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}
