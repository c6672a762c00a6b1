#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "endoscan/errors.hpp"

namespace endoscan::arith {

// (a * b) mod m with 128-bit intermediate. m >= 1.
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Reduce a signed value into [0, m).
inline uint64_t reduce(int64_t a, uint64_t m) {
    int64_t r = a % static_cast<int64_t>(m);
    if (r < 0) r += static_cast<int64_t>(m);
    return static_cast<uint64_t>(r);
}

// base^exp mod modulus. modulus >= 1; base may be negative.
uint64_t powmod(int64_t base, uint64_t exp, uint64_t modulus);

// Modular inverse of a mod m (gcd(a, m) = 1; throws Error otherwise).
uint64_t invmod(uint64_t a, uint64_t m);

// Legendre symbol (a|p) for odd prime p.
int legendre(int64_t a, uint64_t p);

// Kronecker symbol (d|n), n != 0. Multiplicative extension of Legendre
// with the usual conventions at 2 and at negative n.
int kronecker(int64_t d, int64_t n);

// Square root of a mod prime p; returns the smaller of the two roots.
// nullopt when a is a non-residue.
std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t p);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(uint64_t n);

// Prime-power factorization, primes ascending. factorize(1) = {}.
// Trial division below 10^6, Brent-Pollard rho above (deterministic seeds).
std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n);

// v_p(n) for n != 0.
uint32_t valuation(uint64_t n, uint64_t p);

struct DiscDecomposition {
    int64_t delta;     // = conductor^2 * d_fund
    int64_t d_fund;    // negative fundamental discriminant
    uint64_t conductor;
};

// Split a negative discriminant (delta = 0 or 1 mod 4) as f^2 * d_fund
// with d_fund fundamental. Throws NotADiscriminant for delta = 2,3 mod 4.
DiscDecomposition fundamental_disc(int64_t delta);

// True iff d is a (negative or positive) fundamental discriminant.
bool is_fundamental(int64_t d);

// splitmix64: tiny deterministic generator used to derive per-task seeds
// and for the seeded searches in polyfp/curve.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound) by rejection
    uint64_t below(uint64_t bound) {
        uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do { x = next(); } while (x >= lim);
        return x % bound;
    }
};

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    SplitMix64 g(a ^ (0x632be59bd9b4e019ULL + b));
    g.next();
    return g.next();
}

} // namespace endoscan::arith
