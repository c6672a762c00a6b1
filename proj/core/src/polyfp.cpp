#include "endoscan/polyfp.hpp"

#include <algorithm>
#include <map>

namespace endoscan::polyfp {

using arith::invmod;
using arith::mulmod;

namespace {

void check_same(const PolyFp& f, const PolyFp& g) {
    if (f.p != g.p) throw ModulusMismatch("polyfp: mixed moduli");
}

} // namespace

PolyFp PolyFp::from_signed(uint64_t p, const std::vector<int64_t>& c) {
    std::vector<uint64_t> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = arith::reduce(c[i], p);
    return PolyFp(p, std::move(r));
}

PolyFp add(const PolyFp& f, const PolyFp& g) {
    check_same(f, g);
    std::vector<uint64_t> c(std::max(f.coeffs.size(), g.coeffs.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        uint64_t v = f.coeff(i) + g.coeff(i);
        c[i] = v >= f.p ? v - f.p : v;
    }
    return PolyFp(f.p, std::move(c));
}

PolyFp sub(const PolyFp& f, const PolyFp& g) {
    check_same(f, g);
    std::vector<uint64_t> c(std::max(f.coeffs.size(), g.coeffs.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        uint64_t a = f.coeff(i), b = g.coeff(i);
        c[i] = a >= b ? a - b : a + f.p - b;
    }
    return PolyFp(f.p, std::move(c));
}

PolyFp mul(const PolyFp& f, const PolyFp& g) {
    check_same(f, g);
    if (f.is_zero() || g.is_zero()) return PolyFp::zero(f.p);
    std::vector<uint64_t> c(f.coeffs.size() + g.coeffs.size() - 1, 0);
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i] == 0) continue;
        for (size_t j = 0; j < g.coeffs.size(); ++j) {
            c[i + j] = (c[i + j] + mulmod(f.coeffs[i], g.coeffs[j], f.p)) % f.p;
        }
    }
    return PolyFp(f.p, std::move(c));
}

PolyFp scale(const PolyFp& f, uint64_t c) {
    c %= f.p;
    std::vector<uint64_t> r(f.coeffs.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = mulmod(f.coeffs[i], c, f.p);
    return PolyFp(f.p, std::move(r));
}

PolyFp monic(const PolyFp& f) {
    if (f.is_zero() || f.lead() == 1) return f;
    return scale(f, invmod(f.lead(), f.p));
}

std::pair<PolyFp, PolyFp> divrem(const PolyFp& f, const PolyFp& g) {
    check_same(f, g);
    if (g.is_zero()) throw Error("polyfp: division by zero");
    PolyFp r = f;
    if (r.degree() < g.degree()) return {PolyFp::zero(f.p), r};
    std::vector<uint64_t> q(static_cast<size_t>(r.degree() - g.degree()) + 1, 0);
    uint64_t linv = invmod(g.lead(), f.p);
    while (!r.is_zero() && r.degree() >= g.degree()) {
        size_t shift = static_cast<size_t>(r.degree() - g.degree());
        uint64_t c = mulmod(r.lead(), linv, f.p);
        q[shift] = c;
        for (size_t i = 0; i < g.coeffs.size(); ++i) {
            uint64_t sub = mulmod(c, g.coeffs[i], f.p);
            uint64_t& slot = r.coeffs[shift + i];
            slot = slot >= sub ? slot - sub : slot + f.p - sub;
        }
        r.trim();
    }
    return {PolyFp(f.p, std::move(q)), r};
}

PolyFp mod(const PolyFp& f, const PolyFp& g) { return divrem(f, g).second; }

uint64_t eval(const PolyFp& f, uint64_t x) {
    uint64_t r = 0;
    x %= f.p;
    for (size_t i = f.coeffs.size(); i-- > 0;) {
        r = (mulmod(r, x, f.p) + f.coeffs[i]) % f.p;
    }
    return r;
}

PolyFp derivative(const PolyFp& f) {
    if (f.coeffs.size() <= 1) return PolyFp::zero(f.p);
    std::vector<uint64_t> c(f.coeffs.size() - 1);
    for (size_t i = 1; i < f.coeffs.size(); ++i) {
        c[i - 1] = mulmod(f.coeffs[i], i % f.p, f.p);
    }
    return PolyFp(f.p, std::move(c));
}

PolyFp poly_gcd(const PolyFp& f, const PolyFp& g) {
    check_same(f, g);
    PolyFp a = f, b = g;
    while (!b.is_zero()) {
        PolyFp r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

PolyFp poly_powmod(const PolyFp& f, uint64_t e, const PolyFp& m) {
    check_same(f, m);
    if (m.degree() < 1) throw Error("poly_powmod: modulus must have degree >= 1");
    PolyFp base = mod(f, m);
    PolyFp r = PolyFp::one(f.p);
    while (e) {
        if (e & 1) r = mod(mul(r, base), m);
        base = mod(mul(base, base), m);
        e >>= 1;
    }
    return r;
}

namespace {

// product of (x - r) splitting of a poly known to split into distinct
// linear factors; seeded gcd splitting.
void split_linear(const PolyFp& f, arith::SplitMix64& rng, std::vector<uint64_t>& out) {
    int d = f.degree();
    if (d <= 0) return;
    uint64_t p = f.p;
    if (d == 1) {
        // root of x + c0 (monic)
        uint64_t c0 = f.coeff(0);
        out.push_back(c0 == 0 ? 0 : p - c0);
        return;
    }
    if (d == 2) {
        // quadratic formula (p odd here; p = 2,3 handled by brute force upstream)
        uint64_t b = f.coeff(1), c = f.coeff(0);
        uint64_t disc = (mulmod(b, b, p) + p - mulmod(4 % p, c, p) % p) % p;
        auto s = arith::sqrt_mod(disc, p);
        if (!s) throw Error("split_linear: quadratic does not split");
        uint64_t inv2 = invmod(2 % p, p);
        uint64_t r1 = mulmod((p - b + *s) % p, inv2, p);
        uint64_t r2 = mulmod((2 * p - b - *s) % p, inv2, p);
        out.push_back(r1);
        out.push_back(r2);
        return;
    }
    // random shift split: gcd(f, (x+a)^((p-1)/2) - 1)
    for (;;) {
        uint64_t a = rng.below(p);
        PolyFp shifted(p, {a, 1});
        PolyFp h = poly_powmod(shifted, (p - 1) / 2, f);
        h = sub(h, PolyFp::one(p));
        PolyFp g = poly_gcd(h, f);
        if (g.degree() > 0 && g.degree() < d) {
            split_linear(g, rng, out);
            split_linear(divrem(f, g).first, rng, out);
            return;
        }
    }
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void cz_split(const PolyFp& f, int d, arith::SplitMix64& rng, std::vector<PolyFp>& out) {
    if (f.degree() == d) {
        out.push_back(monic(f));
        return;
    }
    uint64_t p = f.p;
    // q^d with q = p; exponent (p^d - 1)/2 as 128-bit to be safe
    unsigned __int128 qd = 1;
    for (int i = 0; i < d; ++i) qd *= p;
    unsigned __int128 e = (qd - 1) / 2;
    for (;;) {
        // random polynomial of degree < 2d
        std::vector<uint64_t> c(static_cast<size_t>(2 * d));
        for (auto& v : c) v = rng.below(p);
        PolyFp a(p, std::move(c));
        if (a.is_zero()) continue;
        PolyFp g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            cz_split(g, d, rng, out);
            cz_split(divrem(f, g).first, d, rng, out);
            return;
        }
        // a^e mod f via 128-bit exponent
        PolyFp base = mod(a, f), r = PolyFp::one(p);
        unsigned __int128 ee = e;
        while (ee) {
            if (ee & 1) r = mod(mul(r, base), f);
            base = mod(mul(base, base), f);
            ee >>= 1;
        }
        PolyFp h = sub(r, PolyFp::one(p));
        g = poly_gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            cz_split(g, d, rng, out);
            cz_split(divrem(f, g).first, d, rng, out);
            return;
        }
    }
}

// p-th root of g(x^p) over the prime field: coefficients at multiples of p.
PolyFp pth_root(const PolyFp& f) {
    std::vector<uint64_t> c;
    for (size_t i = 0; i < f.coeffs.size(); i += f.p) c.push_back(f.coeffs[i]);
    return PolyFp(f.p, std::move(c));
}

// exhaustive trial division for p in {2,3}: enumerating candidates in
// degree order guarantees every divisor found is irreducible (its proper
// factors would have been stripped at a smaller degree).
void factor_tiny(const PolyFp& f0, std::vector<std::pair<PolyFp, uint32_t>>& out) {
    uint64_t p = f0.p;
    PolyFp f = monic(f0);
    for (int d = 1; f.degree() > 0 && 2 * d <= f.degree(); ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count && f.degree() >= d; ++idx) {
            std::vector<uint64_t> c(static_cast<size_t>(d) + 1);
            uint64_t t = idx;
            for (int i = 0; i < d; ++i) { c[static_cast<size_t>(i)] = t % p; t /= p; }
            c[static_cast<size_t>(d)] = 1;
            PolyFp cand(p, std::move(c));
            uint32_t mult = 0;
            for (;;) {
                auto [q, r] = divrem(f, cand);
                if (!r.is_zero()) break;
                f = q;
                ++mult;
            }
            if (mult) out.emplace_back(cand, mult);
        }
    }
    if (f.degree() > 0) out.emplace_back(monic(f), 1);
}

} // namespace

std::vector<uint64_t> fp_roots(const PolyFp& f) {
    if (f.is_zero()) throw Error("fp_roots: zero polynomial");
    uint64_t p = f.p;
    std::vector<uint64_t> out;
    if (p <= 31 || static_cast<uint64_t>(f.degree()) + 8 >= p) {
        for (uint64_t x = 0; x < p; ++x) {
            if (eval(f, x) == 0) out.push_back(x);
        }
        return out;
    }
    // g = gcd(f, x^p - x) isolates the distinct linear part
    PolyFp fm = monic(f);
    PolyFp xp = poly_powmod(PolyFp::x(p), p, fm);
    PolyFp g = poly_gcd(sub(xp, PolyFp::x(p)), fm);
    if (g.degree() <= 0) return out;
    // deterministic internal seed from the coefficients
    uint64_t h = 0x9e3779b97f4a7c15ULL ^ p;
    for (uint64_t c : f.coeffs) h = arith::mix_seed(h, c);
    arith::SplitMix64 rng(h);
    split_linear(g, rng, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// squarefree decomposition in characteristic p: pieces are squarefree,
// pairwise coprime, and recompose as prod piece^mult = input.
void squarefree_decompose(const PolyFp& f0, uint32_t outer,
                          std::vector<std::pair<PolyFp, uint32_t>>& pieces) {
    PolyFp f = monic(f0);
    if (f.degree() <= 0) return;
    uint64_t p = f.p;
    PolyFp d = derivative(f);
    if (d.is_zero()) {
        squarefree_decompose(pth_root(f), outer * static_cast<uint32_t>(p), pieces);
        return;
    }
    PolyFp c = poly_gcd(f, d);
    PolyFp w = divrem(f, c).first;
    uint32_t i = 1;
    while (w.degree() > 0) {
        PolyFp y = poly_gcd(w, c);
        PolyFp piece = divrem(w, y).first;
        if (piece.degree() > 0) pieces.emplace_back(piece, outer * i);
        w = y;
        c = divrem(c, y).first;
        ++i;
    }
    if (c.degree() > 0) {
        // remaining part is a polynomial in x^p
        squarefree_decompose(pth_root(c), outer * static_cast<uint32_t>(p), pieces);
    }
}

// distinct-degree + equal-degree factorization of a squarefree monic input
void factor_squarefree(const PolyFp& f, arith::SplitMix64& rng, std::vector<PolyFp>& out) {
    uint64_t p = f.p;
    PolyFp work = f;
    PolyFp xq = mod(PolyFp::x(p), work);
    for (int d = 1; work.degree() > 0; ++d) {
        if (2 * d > work.degree()) {
            out.push_back(work); // leftover is irreducible
            return;
        }
        xq = poly_powmod(xq, p, work);
        PolyFp g = poly_gcd(sub(xq, PolyFp::x(p)), work);
        if (g.degree() > 0) {
            cz_split(g, d, rng, out);
            work = divrem(work, g).first;
            xq = mod(xq, work);
        }
    }
}

} // namespace

std::vector<std::pair<PolyFp, uint32_t>> factor_squarefree_monic(const PolyFp& f, uint64_t seed) {
    if (f.is_zero()) throw Error("factor: zero polynomial");
    std::vector<std::pair<PolyFp, uint32_t>> out;
    uint64_t p = f.p;
    if (f.degree() <= 0) return out;
    if (p <= 3) {
        factor_tiny(f, out);
    } else {
        arith::SplitMix64 rng(arith::mix_seed(seed, p));
        std::vector<std::pair<PolyFp, uint32_t>> pieces;
        squarefree_decompose(f, 1, pieces);
        std::map<std::vector<uint64_t>, uint32_t> acc;
        for (auto& [piece, mult] : pieces) {
            std::vector<PolyFp> irreds;
            factor_squarefree(piece, rng, irreds);
            for (auto& q : irreds) acc[q.coeffs] += mult;
        }
        for (auto& [coeffs, m] : acc) out.emplace_back(PolyFp(p, coeffs), m);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs < b.first.coeffs;
    });
    return out;
}

} // namespace endoscan::polyfp
