#include "endoscan/volcano.hpp"

#include <algorithm>
#include <deque>

namespace endoscan::volcano {

using arith::mulmod;
using arith::reduce;
using curve::CurveFp;
using polyfp::PolyFp;

namespace {

// numerator/denominator of the x-coordinate doubling map
// x(2P) = (x^4 - 2Ax^2 - 8Bx + A^2) / (4(x^3 + Ax + B))
std::pair<PolyFp, PolyFp> doubling_map(const CurveFp& E) {
    uint64_t p = E.p;
    uint64_t A2 = mulmod(E.A, E.A, p);
    PolyFp num(p, {A2, reduce(-8 * static_cast<int64_t>(E.B % p), p),
                   reduce(-2 * static_cast<int64_t>(E.A % p), p), 0, 1});
    PolyFp den = polyfp::scale(PolyFp(p, {E.B, E.A, 0, 1}), 4);
    return {num, den};
}

// does the doubling map send the roots of h into the roots of g?
// Test: numerator of g(num/den) vanishes mod h.
bool doubling_maps_into(const PolyFp& h, const PolyFp& g, const PolyFp& num, const PolyFp& den) {
    uint64_t p = h.p;
    PolyFp nm = polyfp::mod(num, h);
    PolyFp dm = polyfp::mod(den, h);
    // sum_i g_i * num^i * den^(deg g - i) mod h
    int d = g.degree();
    PolyFp acc = PolyFp::zero(p);
    PolyFp npow = PolyFp::one(p);
    std::vector<PolyFp> dpows(static_cast<size_t>(d) + 1, PolyFp::one(p));
    for (int i = 1; i <= d; ++i) dpows[static_cast<size_t>(i)] = polyfp::mod(polyfp::mul(dpows[static_cast<size_t>(i - 1)], dm), h);
    for (int i = 0; i <= d; ++i) {
        if (g.coeff(static_cast<size_t>(i)) != 0) {
            PolyFp term = polyfp::scale(polyfp::mul(npow, dpows[static_cast<size_t>(d - i)]), g.coeff(static_cast<size_t>(i)));
            acc = polyfp::add(acc, polyfp::mod(term, h));
        }
        if (i < d) npow = polyfp::mod(polyfp::mul(npow, nm), h);
    }
    return polyfp::mod(acc, h).is_zero();
}

void require_walkable(const CurveFp& E, uint32_t ell) {
    if (!E.short_form) throw UnsupportedEll("volcano: requires p >= 5 (short form)");
    if (ell == E.p) throw UnsupportedEll("volcano: ell = p");
    bool ok = ell == 2 || ell == 3 || ell == 5 || ell == 7 || ell == 11 || ell == 13;
    if (!ok) throw UnsupportedEll("volcano: ell not in {2,3,5,7,11,13}");
}

} // namespace

std::vector<PolyFp> rational_kernels(const CurveFp& E, uint32_t ell) {
    require_walkable(E, ell);
    uint64_t p = E.p;
    std::vector<PolyFp> out;
    if (ell == 2) {
        for (uint64_t r : polyfp::fp_roots(division_poly(E, 2))) {
            out.push_back(PolyFp(p, {(p - r) % p, 1}));
        }
        return out;
    }
    PolyFp psi = curve::division_poly(E, ell);
    auto factors = polyfp::factor_squarefree_monic(psi, 0xD17AULL); // fixed internal seed
    int target = static_cast<int>((ell - 1) / 2);
    std::vector<PolyFp> fs;
    for (auto& [poly, mult] : factors) {
        if (mult != 1) throw Error("rational_kernels: psi_ell not squarefree");
        fs.push_back(poly);
    }
    auto [num, den] = doubling_map(E);
    // doubling permutes the factors; kernels are the cycles whose degrees
    // sum to (ell-1)/2
    size_t n = fs.size();
    std::vector<int> image(n, -1);
    for (size_t i = 0; i < n; ++i) {
        if (fs[i].degree() > target) continue;
        for (size_t j = 0; j < n; ++j) {
            if (doubling_maps_into(fs[i], fs[j], num, den)) { image[i] = static_cast<int>(j); break; }
        }
    }
    std::vector<char> used(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (used[i] || image[i] < 0) continue;
        // collect the cycle through i
        std::vector<size_t> cycle;
        size_t cur = i;
        bool closed = false;
        for (size_t steps = 0; steps <= n; ++steps) {
            if (std::find(cycle.begin(), cycle.end(), cur) != cycle.end()) { closed = cur == i; break; }
            cycle.push_back(cur);
            int nxt = image[cur];
            if (nxt < 0) break;
            cur = static_cast<size_t>(nxt);
        }
        if (!closed) continue;
        int total = 0;
        for (size_t idx : cycle) total += fs[idx].degree();
        for (size_t idx : cycle) used[idx] = 1;
        if (total == target) {
            PolyFp kernel = PolyFp::one(p);
            for (size_t idx : cycle) kernel = polyfp::mul(kernel, fs[idx]);
            out.push_back(kernel);
        }
    }
    std::sort(out.begin(), out.end(), [](const PolyFp& a, const PolyFp& b) { return a.coeffs < b.coeffs; });
    return out;
}

curve::CurveFp velu_isogeny(const CurveFp& E, const PolyFp& kernel) {
    if (!E.short_form) throw InvalidKernel("velu: requires short form");
    if (kernel.p != E.p) throw InvalidKernel("velu: modulus mismatch");
    uint64_t p = E.p;
    int d = kernel.degree();
    if (d < 1) throw InvalidKernel("velu: trivial kernel");
    PolyFp f(p, {E.B, E.A, 0, 1});
    PolyFp k = polyfp::monic(kernel);

    if (d == 1) {
        uint64_t x0 = (p - k.coeff(0)) % p;
        if (polyfp::eval(f, x0) == 0) {
            // order-2 kernel point (x0, 0)
            uint64_t v = (3 * mulmod(x0, x0, p) % p + E.A) % p;
            uint64_t w = mulmod(x0, v, p);
            CurveFp out = E;
            out.A = (E.A + 5 * (p - v) % p) % p;
            out.B = (E.B + 7 * (p - w) % p) % p;
            return out;
        }
        // else fall through to the odd-ell path with ell = 3
        if (!polyfp::mod(curve::division_poly(E, 3), k).is_zero())
            throw InvalidKernel("velu: linear kernel is neither 2- nor 3-torsion");
    } else {
        // infer ell from the degree and check h | psi_ell and doubling closure
        uint32_t ell = static_cast<uint32_t>(2 * d + 1);
        bool ok = ell == 5 || ell == 7 || ell == 11 || ell == 13;
        if (!ok) throw InvalidKernel("velu: kernel degree does not match a supported ell");
        if (!polyfp::mod(division_poly(E, ell), k).is_zero())
            throw InvalidKernel("velu: kernel does not divide psi_ell");
        auto [num, den] = doubling_map(E);
        if (!doubling_maps_into(k, k, num, den))
            throw InvalidKernel("velu: kernel not stable under doubling");
    }

    // power sums of the kernel roots from the coefficients
    uint64_t dd = static_cast<uint64_t>(d) % p;
    auto coeff_signed = [&](int i) { return k.coeff(static_cast<size_t>(i)); };
    // e1 = -c_{d-1}, e2 = c_{d-2}, e3 = -c_{d-3}
    uint64_t e1 = (p - coeff_signed(d - 1)) % p;
    uint64_t e2 = d >= 2 ? coeff_signed(d - 2) : 0;
    uint64_t e3 = d >= 3 ? (p - coeff_signed(d - 3)) % p : 0;
    uint64_t p1 = e1;
    uint64_t p2 = (mulmod(e1, e1, p) + 2 * (p - e2)) % p;
    uint64_t p3 = (mulmod(mulmod(e1, e1, p), e1, p) + 3 * mulmod(e1, p - e2, p) % p + 3 * e3) % p;

    uint64_t v = (mulmod(6 % p, p2, p) + mulmod(2 % p, mulmod(E.A, dd, p), p)) % p;
    uint64_t w = (mulmod(10 % p, p3, p) + mulmod(6 % p, mulmod(E.A, p1, p), p) +
                  mulmod(4 % p, mulmod(E.B, dd, p), p)) % p;
    CurveFp out = E;
    out.A = (E.A + 5 * (p - v) % p) % p;
    out.B = (E.B + 7 * (p - w) % p) % p;
    return out;
}

uint32_t conductor_valuation_traced(const CurveFp& E, int64_t a_p, uint32_t ell,
                                    std::vector<WalkVertex>* trace) {
    require_walkable(E, ell);
    if (reduce(a_p, E.p) == 0) throw NotOrdinary("conductor_valuation: supersingular place");
    int64_t delta = a_p * a_p - 4 * static_cast<int64_t>(E.p);
    auto dec = arith::fundamental_disc(delta);
    uint32_t h = arith::valuation(dec.conductor, ell);
    if (h == 0) return 0;

    // BFS to the nearest floor vertex (exactly one rational ell-isogeny);
    // levels change by at most one per edge, so the first floor hit is at
    // distance v_ell(f) - v_ell(c).
    struct Node {
        CurveFp E;
        uint64_t parent_j;
        bool has_parent;
        uint32_t depth;
    };
    std::deque<Node> queue;
    queue.push_back({E, 0, false, 0});
    while (!queue.empty()) {
        Node node = queue.front();
        queue.pop_front();
        auto kernels = rational_kernels(node.E, ell);
        if (trace) trace->push_back({curve::j_invariant(node.E), kernels.size(), node.depth});
        if (kernels.size() == 1) {
            return h - (h - node.depth); // floor found: m = h - depth... see below
        }
        if (node.depth >= h) throw Error("conductor_valuation: walk exceeded volcano depth");
        bool skipped_parent = false;
        for (const auto& ker : kernels) {
            CurveFp child = velu_isogeny(node.E, ker);
            uint64_t cj = curve::j_invariant(child);
            if (node.has_parent && !skipped_parent && cj == node.parent_j) {
                skipped_parent = true; // avoid immediate backtracking once
                continue;
            }
            queue.push_back({child, curve::j_invariant(node.E), true, node.depth + 1});
        }
    }
    throw Error("conductor_valuation: no floor vertex found");
}

uint32_t conductor_valuation(const CurveFp& E, int64_t a_p, uint32_t ell) {
    return conductor_valuation_traced(E, a_p, ell, nullptr);
}

EndoResult endo_ring(const CurveFp& E, const curve::FrobeniusData& data,
                     const std::vector<uint32_t>& ell_budget) {
    if (!data.ordinary) throw NotOrdinary("endo_ring: supersingular place");
    EndoResult res;
    res.p = E.p;
    int64_t delta = data.a_p * data.a_p - 4 * static_cast<int64_t>(E.p);
    auto dec = arith::fundamental_disc(delta);
    res.d_fund = dec.d_fund;
    res.f = dec.conductor;
    res.c = 1;
    res.fully_resolved = true;
    for (auto [q, e] : arith::factorize(res.f)) {
        (void)e;
        uint32_t ell = static_cast<uint32_t>(q);
        bool budgeted = std::find(ell_budget.begin(), ell_budget.end(), ell) != ell_budget.end();
        if (budgeted && ell <= 13 && E.short_form) {
            uint32_t m = conductor_valuation(E, data.a_p, ell);
            res.m[ell] = m;
            for (uint32_t i = 0; i < m; ++i) res.c *= ell;
        } else {
            res.unresolved.push_back(ell);
            res.fully_resolved = false;
        }
    }
    if (res.fully_resolved) {
        res.delta_v = static_cast<int64_t>(res.c) * static_cast<int64_t>(res.c) * res.d_fund;
    }
    return res;
}

} // namespace endoscan::volcano
