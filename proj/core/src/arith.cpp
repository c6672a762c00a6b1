#include "endoscan/arith.hpp"

#include <algorithm>
#include <numeric>

namespace endoscan::arith {

uint64_t powmod(int64_t base, uint64_t exp, uint64_t modulus) {
    if (modulus == 1) return 0;
    uint64_t b = reduce(base, modulus);
    uint64_t r = 1;
    while (exp) {
        if (exp & 1) r = mulmod(r, b, modulus);
        b = mulmod(b, b, modulus);
        exp >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t m) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw Error("invmod: argument not invertible");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

int legendre(int64_t a, uint64_t p) {
    uint64_t r = reduce(a, p);
    if (r == 0) return 0;
    uint64_t e = powmod(static_cast<int64_t>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

int kronecker(int64_t d, int64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) sign = -sign;
    }
    // peel off factors of 2 using (d|2)
    int tw = 0;
    while (n % 2 == 0) { n /= 2; ++tw; }
    if (tw) {
        if (d % 2 == 0) return 0;
        int64_t dm8 = ((d % 8) + 8) % 8;
        int d2 = (dm8 == 1 || dm8 == 7) ? 1 : -1; // (d|2)
        if (tw % 2 == 1 && d2 == -1) sign = -sign;
    }
    // n now odd; use Jacobi via reciprocity on |d|
    int64_t a = d % n;
    if (a < 0) a += n;
    int result = sign;
    // standard Jacobi(a, n), n odd > 0
    int64_t m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t mm8 = m % 8;
            if (mm8 == 3 || mm8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    if (m != 1) return 0;
    return result;
}

std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(static_cast<int64_t>(a), p) != 1) return std::nullopt;
    uint64_t r;
    if (p % 4 == 3) {
        r = powmod(static_cast<int64_t>(a), (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks; the non-residue search is deterministic.
        uint64_t q = p - 1;
        uint32_t s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        uint64_t z = 2;
        while (legendre(static_cast<int64_t>(z), p) != -1) ++z;
        uint64_t m = s;
        uint64_t c = powmod(static_cast<int64_t>(z), q, p);
        uint64_t t = powmod(static_cast<int64_t>(a), q, p);
        r = powmod(static_cast<int64_t>(a), (q + 1) / 2, p);
        while (t != 1) {
            uint64_t i = 0, t2 = t;
            while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
            uint64_t b = c;
            for (uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    return std::min(r, p - r);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    uint32_t s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (uint64_t base : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(static_cast<int64_t>(base), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (uint32_t i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

uint64_t brent_rho(uint64_t n, uint64_t c0) {
    // Brent's cycle detection; c is stepped deterministically on failure.
    for (uint64_t c = c0;; ++c) {
        uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
        uint64_t r = 1;
        auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = f(y);
            uint64_t k = 0;
            while (k < r && d == 1) {
                ys = y;
                uint64_t lim = std::min<uint64_t>(128, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    uint64_t d = brent_rho(n, 1);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n) {
    std::vector<uint64_t> primes;
    if (n < 1000000) {
        for (uint64_t q = 2; q * q <= n; ++q) {
            while (n % q == 0) { primes.push_back(q); n /= q; }
        }
        if (n > 1) primes.push_back(n);
    } else {
        for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
            while (n % q == 0) { primes.push_back(q); n /= q; }
        }
        factor_rec(n, primes);
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<uint64_t, uint32_t>> out;
    for (uint64_t q : primes) {
        if (!out.empty() && out.back().first == q) ++out.back().second;
        else out.emplace_back(q, 1);
    }
    return out;
}

uint32_t valuation(uint64_t n, uint64_t p) {
    uint32_t v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

DiscDecomposition fundamental_disc(int64_t delta) {
    if (delta >= 0) throw NotADiscriminant("fundamental_disc: delta must be negative");
    int64_t m4 = ((delta % 4) + 4) % 4;
    if (m4 == 2 || m4 == 3) throw NotADiscriminant("fundamental_disc: delta = 2,3 mod 4");
    uint64_t n = static_cast<uint64_t>(-delta);
    uint64_t sq = 1, sf = 1;
    for (auto [q, e] : factorize(n)) {
        for (uint32_t i = 0; i + 1 < e; i += 2) sq *= q;
        if (e % 2) sf *= q;
    }
    int64_t s = -static_cast<int64_t>(sf); // squarefree part, with sign
    DiscDecomposition d{};
    d.delta = delta;
    if (((s % 4) + 4) % 4 == 1) {
        d.d_fund = s;
        d.conductor = sq;
    } else {
        // s = 2,3 mod 4 forces 4 | delta with the square part even
        d.d_fund = 4 * s;
        d.conductor = sq / 2;
    }
    return d;
}

bool is_fundamental(int64_t d) {
    if (d == 0 || d == 1) return false;
    int64_t m4 = ((d % 4) + 4) % 4;
    auto squarefree = [](uint64_t n) {
        for (auto [q, e] : factorize(n)) {
            (void)q;
            if (e > 1) return false;
        }
        return true;
    };
    if (m4 == 1) return squarefree(static_cast<uint64_t>(d < 0 ? -d : d));
    if (m4 == 0) {
        int64_t q = d / 4;
        int64_t qm4 = ((q % 4) + 4) % 4;
        if (qm4 != 2 && qm4 != 3) return false;
        return squarefree(static_cast<uint64_t>(q < 0 ? -q : q));
    }
    return false;
}

} // namespace endoscan::arith
