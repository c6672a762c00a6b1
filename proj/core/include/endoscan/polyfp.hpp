#pragma once

#include <cstdint>
#include <vector>

#include "endoscan/arith.hpp"
#include "endoscan/errors.hpp"

namespace endoscan::polyfp {

// Dense univariate polynomial over F_p, coefficients ascending, no
// trailing zeros. Degrees in this project stay below 100, so schoolbook
// multiplication is fine.
struct PolyFp {
    uint64_t p = 0;
    std::vector<uint64_t> coeffs;

    PolyFp() = default;
    PolyFp(uint64_t p_, std::vector<uint64_t> c) : p(p_), coeffs(std::move(c)) { trim(); }

    static PolyFp zero(uint64_t p) { return PolyFp(p, {}); }
    static PolyFp one(uint64_t p) { return PolyFp(p, {1 % p}); }
    static PolyFp x(uint64_t p) { return PolyFp(p, {0, 1}); }
    static PolyFp constant(uint64_t p, uint64_t c) { return PolyFp(p, {c % p}); }
    // from signed coefficients, ascending
    static PolyFp from_signed(uint64_t p, const std::vector<int64_t>& c);

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; } // -1 for zero
    uint64_t lead() const { return coeffs.back(); }
    uint64_t coeff(size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }

    bool operator==(const PolyFp& o) const { return p == o.p && coeffs == o.coeffs; }
};

PolyFp add(const PolyFp& f, const PolyFp& g);
PolyFp sub(const PolyFp& f, const PolyFp& g);
PolyFp mul(const PolyFp& f, const PolyFp& g);
PolyFp scale(const PolyFp& f, uint64_t c);
PolyFp monic(const PolyFp& f);
// f = q*g + r with deg r < deg g
std::pair<PolyFp, PolyFp> divrem(const PolyFp& f, const PolyFp& g);
PolyFp mod(const PolyFp& f, const PolyFp& g);
uint64_t eval(const PolyFp& f, uint64_t x);
PolyFp derivative(const PolyFp& f);

// Monic gcd; gcd(f, 0) = monic(f). Throws ModulusMismatch on mixed moduli.
PolyFp poly_gcd(const PolyFp& f, const PolyFp& g);

// f^e mod m, deg m >= 1.
PolyFp poly_powmod(const PolyFp& f, uint64_t e, const PolyFp& m);

// All roots of nonzero f in F_p, multiplicity ignored, ascending.
std::vector<uint64_t> fp_roots(const PolyFp& f);

// Full factorization of monic(f) into monic irreducibles with
// multiplicities, sorted by (degree, coefficient sequence). Squarefree
// split + distinct-degree + Cantor-Zassenhaus; the seed drives the
// equal-degree splitting so runs are reproducible. p in {2,3} falls back
// to exhaustive trial division by irreducibles.
std::vector<std::pair<PolyFp, uint32_t>> factor_squarefree_monic(const PolyFp& f, uint64_t seed);

} // namespace endoscan::polyfp
