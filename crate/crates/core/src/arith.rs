//! Small integer helpers used by the order computations.

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `n` divided by its `p`-part.
pub fn p_prime_part(n: u128, p: u64) -> u128 {
    n / p_part(n, p)
}

/// True for 1, p, p^2, ...
pub fn is_power_of(n: u128, p: u64) -> bool {
    p_part(n, p) == n
}

/// True iff `n` is 1 or a power of a single prime.
pub fn is_prime_power(n: u128) -> bool {
    prime_divisors(n).len() <= 1
}

pub fn coprime(n: u128, p: u64) -> bool {
    !n.is_multiple_of(p as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_helpers() {
        assert_eq!(prime_divisors(72), vec![2, 3]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(p_part(72, 2), 8);
        assert_eq!(p_prime_part(72, 3), 8);
        assert!(is_power_of(1, 5));
        assert!(!is_power_of(12, 2));
        assert!(is_prime_power(49));
        assert!(!is_prime_power(6));
        assert_eq!(lcm(4, 6), 12);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }
}
