//! Reference pseudorandom generators.
//!
//! Three generators of deliberately different strength feed the test
//! battery:
//!
//! * `ParkMiller`: the "minimal standard" multiplicative congruential
//!   generator, x' = 16807 x mod (2^31 - 1);
//! * `KnuthLcg`: the 64-bit mixed congruential generator with Knuth's
//!   MMIX multiplier and increment;
//! * `BlumBlumShub`: repeated squaring modulo a product of two primes
//!   congruent to 3 mod 4, emitting the parity of each state.
//!
//! The congruential generators emit the most significant bits of each
//! word (8 of 31 for Park-Miller, 32 of 64 for Knuth, both
//! configurable); Blum-Blum-Shub emits one bit per squaring.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bits::{BitBuilder, BitSequence};
use crate::error::{Error, Result};

/// Park-Miller modulus, the Mersenne prime 2^31 - 1.
pub const PM_MODULUS: u64 = 0x7FFF_FFFF;
/// Park-Miller multiplier.
pub const PM_MULTIPLIER: u64 = 16_807;
/// MMIX multiplier.
pub const KNUTH_MULTIPLIER: u64 = 6_364_136_223_846_793_005;
/// MMIX increment.
pub const KNUTH_INCREMENT: u64 = 1_442_695_040_888_963_407;

/// Multiplicative congruential generator over the Mersenne prime field.
/// The state never leaves [1, 2^31 - 2], so it never sticks at zero.
#[derive(Debug, Clone)]
pub struct ParkMiller {
    x: u64,
}

impl ParkMiller {
    pub fn new(seed: u32) -> Result<Self> {
        let seed = seed as u64;
        if seed == 0 || seed >= PM_MODULUS {
            return Err(Error::config(format!(
                "park-miller seed must lie in [1, {}]",
                PM_MODULUS - 1
            )));
        }
        Ok(ParkMiller { x: seed })
    }

    /// Advances the state and returns it as a 31-bit word.
    #[inline]
    pub fn next_word(&mut self) -> u32 {
        self.x = (PM_MULTIPLIER * self.x) % PM_MODULUS;
        self.x as u32
    }
}

/// 64-bit mixed congruential generator, x' = a x + c mod 2^64.
#[derive(Debug, Clone)]
pub struct KnuthLcg {
    x: u64,
}

impl KnuthLcg {
    pub fn new(seed: u64) -> Self {
        KnuthLcg { x: seed }
    }

    #[inline]
    pub fn next_word(&mut self) -> u64 {
        self.x = self
            .x
            .wrapping_mul(KNUTH_MULTIPLIER)
            .wrapping_add(KNUTH_INCREMENT);
        self.x
    }
}

/// Quadratic-residue generator x' = x^2 mod pq emitting state parity.
#[derive(Debug, Clone)]
pub struct BlumBlumShub {
    x: BigUint,
    m: BigUint,
}

impl BlumBlumShub {
    /// Validates the parameters: p and q must be distinct probable
    /// primes congruent to 3 mod 4, and the seed must satisfy
    /// 2 <= x0 < pq with gcd(x0, pq) = 1.
    pub fn new(p: &BigUint, q: &BigUint, x0: &BigUint) -> Result<Self> {
        let three = BigUint::from(3u8);
        let four = BigUint::from(4u8);
        for (name, prime) in [("p", p), ("q", q)] {
            if prime % &four != three {
                return Err(Error::config(format!("bbs {name} is not 3 mod 4")));
            }
            if !is_probable_prime(prime) {
                return Err(Error::config(format!("bbs {name} is not prime")));
            }
        }
        if p == q {
            return Err(Error::config("bbs primes must be distinct"));
        }
        let m = p * q;
        if x0 < &BigUint::from(2u8) || x0 >= &m {
            return Err(Error::config("bbs seed must lie in [2, pq - 1]"));
        }
        if !x0.gcd(&m).is_one() {
            return Err(Error::config("bbs seed shares a factor with the modulus"));
        }
        Ok(BlumBlumShub { x: x0.clone(), m })
    }

    #[inline]
    pub fn next_bit(&mut self) -> u8 {
        self.x = (&self.x * &self.x) % &self.m;
        if self.x.bit(0) {
            1
        } else {
            0
        }
    }

    #[cfg(test)]
    fn state(&self) -> &BigUint {
        &self.x
    }
}

/// Miller-Rabin with the first twelve primes as bases. Deterministic
/// for inputs below 3.3 * 10^24; a strong probable-prime check beyond.
fn is_probable_prime(n: &BigUint) -> bool {
    let small: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < &BigUint::from(2u8) {
        return false;
    }
    for &b in &small {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in &small {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A fully specified generator configuration, ready to produce bits.
#[derive(Debug, Clone)]
pub enum GeneratorSpec {
    ParkMiller {
        seed: u32,
        /// Most significant bits emitted per word, 1..=31.
        bits_per_word: u32,
    },
    Knuth {
        seed: u64,
        /// Most significant bits emitted per word, 1..=64.
        bits_per_word: u32,
    },
    Bbs {
        p: BigUint,
        q: BigUint,
        x0: BigUint,
    },
}

impl GeneratorSpec {
    pub fn label(&self) -> &'static str {
        match self {
            GeneratorSpec::ParkMiller { .. } => "pm",
            GeneratorSpec::Knuth { .. } => "knuth",
            GeneratorSpec::Bbs { .. } => "bbs",
        }
    }

    /// Produces the first `n` bits of the stream.
    pub fn generate(&self, n: usize) -> Result<BitSequence> {
        let mut b = BitBuilder::with_capacity(n);
        match self {
            GeneratorSpec::ParkMiller { seed, bits_per_word } => {
                if !(1..=31).contains(bits_per_word) {
                    return Err(Error::config("park-miller bits-per-word must lie in 1..=31"));
                }
                let mut g = ParkMiller::new(*seed)?;
                while b.len() < n {
                    let word = g.next_word();
                    let top = (word >> (31 - bits_per_word)) as u64;
                    b.push_bits(top, *bits_per_word as usize);
                }
            }
            GeneratorSpec::Knuth { seed, bits_per_word } => {
                if !(1..=64).contains(bits_per_word) {
                    return Err(Error::config("knuth bits-per-word must lie in 1..=64"));
                }
                let mut g = KnuthLcg::new(*seed);
                while b.len() < n {
                    let word = g.next_word();
                    let top = word >> (64 - bits_per_word);
                    b.push_bits(top, *bits_per_word as usize);
                }
            }
            GeneratorSpec::Bbs { p, q, x0 } => {
                let mut g = BlumBlumShub::new(p, q, x0)?;
                for _ in 0..n {
                    b.push_bit(g.next_bit());
                }
            }
        }
        let seq = b.finish()?;
        seq.prefix(n)
    }

    /// The generator for sequence `k` of a campaign. Congruential seeds are
    /// offset by `k`; the Blum-Blum-Shub start state becomes
    /// (x0 + k)^2 mod pq, which is a quadratic residue and therefore a
    /// clean entry point into the squaring orbit.
    pub fn for_campaign_index(&self, k: usize) -> Result<GeneratorSpec> {
        match self {
            GeneratorSpec::ParkMiller { seed, bits_per_word } => {
                let shifted = *seed as u64 + k as u64;
                if shifted >= PM_MODULUS {
                    return Err(Error::config(format!(
                        "park-miller seed {seed} + {k} leaves [1, 2^31 - 2]"
                    )));
                }
                Ok(GeneratorSpec::ParkMiller {
                    seed: shifted as u32,
                    bits_per_word: *bits_per_word,
                })
            }
            GeneratorSpec::Knuth { seed, bits_per_word } => Ok(GeneratorSpec::Knuth {
                seed: seed.wrapping_add(k as u64),
                bits_per_word: *bits_per_word,
            }),
            GeneratorSpec::Bbs { p, q, x0 } => {
                let m = p * q;
                let base = x0 + BigUint::from(k);
                let derived = (&base * &base) % &m;
                if derived < BigUint::from(2u8) || !derived.gcd(&m).is_one() {
                    return Err(Error::config(format!(
                        "bbs campaign seed x0 + {k} squares to a degenerate state"
                    )));
                }
                Ok(GeneratorSpec::Bbs {
                    p: p.clone(),
                    q: q.clone(),
                    x0: derived,
                })
            }
        }
    }
}
