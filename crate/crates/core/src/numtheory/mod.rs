//! Integer and modular-arithmetic primitives.

mod factor;
mod modular;
mod primality;
mod sieve;
mod symbols;

pub use factor::{factorize, Factorization, PowerfulPrimes};
pub use modular::{crt, inv_mod, mul_mod, pow_mod};
pub use primality::is_prime;
pub use sieve::{
    primes_between, primes_in_class, primes_up_to, BlockFactorizer, FactorBlock, PrimeClassSet,
    ResidueClass, SIEVE_BLOCK,
};
pub use symbols::{jacobi, legendre, least_nonresidue};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_part_divides_and_grows_with_y() {
        for m in 1..=100_000u64 {
            let f = factorize(m);
            let mut prev = 1;
            for y in [2, 3, 4, 8, 12, 20, 50, 100, 1000, 100_001] {
                for mode in [PowerfulPrimes::Include, PowerfulPrimes::Exclude] {
                    let d = f.smooth_part_3mod4(y, mode);
                    assert_eq!(m % d, 0);
                }
                let d = f.smooth_part_3mod4(y, PowerfulPrimes::Include);
                assert_eq!(d % prev, 0, "m = {m}, y = {y}");
                prev = d;
            }
        }
    }
}
