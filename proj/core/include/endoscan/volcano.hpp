#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "endoscan/curve.hpp"

namespace endoscan::volcano {

// Conductor data for End(E mod p) at an ordinary place.
struct EndoResult {
    uint64_t p = 0;
    int64_t d_fund = 0;                 // fundamental discriminant of the CM field
    uint64_t f = 0;                     // conductor of Z[pi]
    uint64_t c = 1;                     // product of ell^{m_ell} over resolved ell
    std::map<uint32_t, uint32_t> m;     // resolved ell -> v_ell(c)
    std::vector<uint32_t> unresolved;   // primes of f left unresolved
    bool fully_resolved = false;
    int64_t delta_v = 0;                // c^2 * d_fund, valid iff fully_resolved
};

// Monic kernel polynomials of the F_p-rational order-ell subgroups.
// ell = 2: one linear factor per root of the 2-torsion cubic. Odd ell:
// the degree-(ell-1)/2 products of psi_ell factors closed under the
// x-coordinate doubling map (a divisor is a kernel polynomial exactly
// when its root set is one subgroup's x-set, and those sets are the
// doubling orbits of total degree (ell-1)/2).
std::vector<polyfp::PolyFp> rational_kernels(const curve::CurveFp& E, uint32_t ell);

// Velu isogeny with the given kernel polynomial; validates that the
// kernel describes a rational subgroup (InvalidKernel otherwise).
curve::CurveFp velu_isogeny(const curve::CurveFp& E, const polyfp::PolyFp& kernel);

// Trace of one volcano walk, for tests and debugging.
struct WalkVertex {
    uint64_t j = 0;          // j-invariant
    size_t kernel_count = 0; // rational ell-isogenies from this vertex
    uint32_t depth = 0;      // distance from the start curve
};

// v_ell(conductor of End(E mod p)), located by walking to the volcano
// floor: a vertex is on the floor iff it exposes exactly one rational
// ell-isogeny, and the distance from E to the floor is v_ell(f) - v_ell(c).
// Bounded breadth-first search; depth never exceeds v_ell(f).
uint32_t conductor_valuation(const curve::CurveFp& E, int64_t a_p, uint32_t ell);
uint32_t conductor_valuation_traced(const curve::CurveFp& E, int64_t a_p, uint32_t ell,
                                    std::vector<WalkVertex>* trace);

// Resolve the conductor at every ell | f with ell in ell_budget and
// ell <= 13; other primes of f are reported unresolved.
EndoResult endo_ring(const curve::CurveFp& E, const curve::FrobeniusData& data,
                     const std::vector<uint32_t>& ell_budget);

} // namespace endoscan::volcano
