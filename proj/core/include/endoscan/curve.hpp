#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "endoscan/polyfp.hpp"

namespace endoscan::curve {

// Long Weierstrass model over Q with integer coefficients.
struct CurveSpec {
    int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::string label;

    // model discriminant (b-invariant formula); nonzero for a valid spec
    __int128 discriminant() const;
};

// Reduction mod p. For p >= 5 the model is put in short form
// y^2 = x^3 + Ax + B; p in {2,3} keeps the long coefficients.
struct CurveFp {
    uint64_t p = 0;
    bool short_form = false;
    uint64_t A = 0, B = 0;                     // short form, p >= 5
    uint64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0; // long form, p in {2,3}
};

struct FrobeniusData {
    uint64_t p = 0;
    uint64_t count = 0; // #E(F_p)
    int64_t a_p = 0;    // p + 1 - count
    bool ordinary = false;
};

// Affine point or infinity, for internal group arithmetic and tests.
struct Point {
    uint64_t x = 0, y = 0;
    bool inf = true;
    static Point infinity() { return {}; }
    static Point at(uint64_t x, uint64_t y) { return {x, y, false}; }
    bool operator==(const Point& o) const {
        return inf == o.inf && (inf || (x == o.x && y == o.y));
    }
};

Point ec_add(const CurveFp& E, const Point& P, const Point& Q);
Point ec_neg(const CurveFp& E, const Point& P);
Point ec_mul(const CurveFp& E, unsigned __int128 k, const Point& P);
bool ec_on_curve(const CurveFp& E, const Point& P);

// j-invariant of a short-form curve.
uint64_t j_invariant(const CurveFp& E);

// nullopt when p divides the model discriminant (bad reduction; input
// models are trusted as minimal, so no attempt at a better model is made).
std::optional<CurveFp> reduce_at(const CurveSpec& E, uint64_t p);

// Exhaustive count of #E(F_p) including infinity. Works for any p.
uint64_t count_naive(const CurveFp& E);

// Baby-step giant-step count in the Hasse interval with Mestre's
// quadratic-twist disambiguation. Requires short form and p > 457 (the
// range where the disambiguation is guaranteed). Deterministic for a
// fixed seed. Throws AmbiguousOrder if the order cannot be pinned.
uint64_t count_bsgs(const CurveFp& E, uint64_t seed);

FrobeniusData trace_and_ordinary(const CurveFp& E);

// Division polynomial: the 2-torsion cubic for ell = 2, psi_ell (degree
// (ell^2-1)/2, a polynomial in x alone) for odd ell in {3,5,7,11,13}.
// Requires short form and ell != p.
polyfp::PolyFp division_poly(const CurveFp& E, uint32_t ell);

// True iff Frobenius acts as a scalar on E[ell], ell in {2,3}.
// ell = 2: the 2-torsion cubic splits completely over F_p.
// ell = 3: psi_3 splits completely and the four torsion x-coordinates
// carry uniformly rational (lambda = 1) or uniformly anti-rational
// (lambda = -1) y-coordinates.
bool frob_scalar_on_ell(const CurveFp& E, uint32_t ell);

// Registry: "label a1 a2 a3 a4 a6" per line, decimal, '#' comments.
std::vector<CurveSpec> parse_registry(const std::string& text);
std::vector<CurveSpec> load_registry(const std::string& path);
// Built-in registry of non-CM curves with surjective mod-ell image.
const std::vector<CurveSpec>& builtin_registry();
// Look up a label in the built-in registry (nullopt if absent).
std::optional<CurveSpec> find_curve(const std::string& label);

} // namespace endoscan::curve
