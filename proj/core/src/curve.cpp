#include "endoscan/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace endoscan::curve {

using arith::invmod;
using arith::mulmod;
using arith::powmod;
using arith::reduce;
using polyfp::PolyFp;

__int128 CurveSpec::discriminant() const {
    __int128 b2 = static_cast<__int128>(a1) * a1 + 4 * static_cast<__int128>(a2);
    __int128 b4 = 2 * static_cast<__int128>(a4) + static_cast<__int128>(a1) * a3;
    __int128 b6 = static_cast<__int128>(a3) * a3 + 4 * static_cast<__int128>(a6);
    __int128 b8 = static_cast<__int128>(a1) * a1 * a6 + 4 * static_cast<__int128>(a2) * a6 -
                  static_cast<__int128>(a1) * a3 * a4 + static_cast<__int128>(a2) * a3 * a3 -
                  static_cast<__int128>(a4) * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::optional<CurveFp> reduce_at(const CurveSpec& E, uint64_t p) {
    __int128 disc = E.discriminant();
    __int128 r = disc % static_cast<__int128>(p);
    if (r == 0) return std::nullopt;
    CurveFp C;
    C.p = p;
    if (p <= 3) {
        C.short_form = false;
        C.a1 = reduce(E.a1, p);
        C.a2 = reduce(E.a2, p);
        C.a3 = reduce(E.a3, p);
        C.a4 = reduce(E.a4, p);
        C.a6 = reduce(E.a6, p);
        return C;
    }
    // c4, c6 transform; p >= 5 so 48 and 864 are invertible
    int64_t b2 = E.a1 * E.a1 + 4 * E.a2;
    int64_t b4 = 2 * E.a4 + E.a1 * E.a3;
    int64_t b6 = E.a3 * E.a3 + 4 * E.a6;
    __int128 c4 = static_cast<__int128>(b2) * b2 - 24 * static_cast<__int128>(b4);
    __int128 c6 = -static_cast<__int128>(b2) * b2 * b2 + 36 * static_cast<__int128>(b2) * b4 -
                  216 * static_cast<__int128>(b6);
    auto red128 = [&](__int128 v) {
        __int128 m = v % static_cast<__int128>(p);
        if (m < 0) m += p;
        return static_cast<uint64_t>(m);
    };
    uint64_t c4r = red128(c4), c6r = red128(c6);
    C.short_form = true;
    C.A = mulmod((p - c4r) % p, invmod(48 % p, p), p);
    C.B = mulmod((p - c6r) % p, invmod(864 % p, p), p);
    return C;
}

namespace {

uint64_t rhs(const CurveFp& E, uint64_t x) {
    uint64_t p = E.p;
    uint64_t t = (mulmod(mulmod(x, x, p), x, p) + mulmod(E.A, x, p)) % p;
    return (t + E.B) % p;
}

} // namespace

bool ec_on_curve(const CurveFp& E, const Point& P) {
    if (P.inf) return true;
    return mulmod(P.y, P.y, E.p) == rhs(E, P.x);
}

Point ec_neg(const CurveFp& E, const Point& P) {
    if (P.inf) return P;
    return Point::at(P.x, P.y == 0 ? 0 : E.p - P.y);
}

Point ec_add(const CurveFp& E, const Point& P, const Point& Q) {
    uint64_t p = E.p;
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % p == 0) return Point::infinity();
        // doubling
        uint64_t num = (3 * mulmod(P.x, P.x, p) % p + E.A) % p;
        uint64_t den = (2 * P.y) % p;
        uint64_t lam = mulmod(num, invmod(den, p), p);
        uint64_t x3 = (mulmod(lam, lam, p) + 2 * (p - P.x)) % p;
        uint64_t y3 = (mulmod(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
        return Point::at(x3, y3);
    }
    uint64_t num = (Q.y + p - P.y) % p;
    uint64_t den = (Q.x + p - P.x) % p;
    uint64_t lam = mulmod(num, invmod(den, p), p);
    uint64_t x3 = (mulmod(lam, lam, p) + p - P.x + p - Q.x) % p;
    uint64_t y3 = (mulmod(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
    return Point::at(x3, y3);
}

Point ec_mul(const CurveFp& E, unsigned __int128 k, const Point& P) {
    Point R = Point::infinity();
    Point base = P;
    while (k) {
        if (k & 1) R = ec_add(E, R, base);
        base = ec_add(E, base, base);
        k >>= 1;
    }
    return R;
}

uint64_t j_invariant(const CurveFp& E) {
    // j = 1728 * 4A^3 / (4A^3 + 27B^2)
    uint64_t p = E.p;
    uint64_t a3 = mulmod(mulmod(E.A, E.A, p), E.A, p);
    uint64_t num = mulmod(4 % p, a3, p);
    uint64_t den = (num + mulmod(27 % p, mulmod(E.B, E.B, p), p)) % p;
    return mulmod(mulmod(1728 % p, num, p), invmod(den, p), p);
}

uint64_t count_naive(const CurveFp& E) {
    uint64_t p = E.p;
    if (!E.short_form) {
        uint64_t n = 1; // infinity
        for (uint64_t x = 0; x < p; ++x) {
            for (uint64_t y = 0; y < p; ++y) {
                uint64_t lhs = (mulmod(y, y, p) + mulmod(E.a1, mulmod(x, y, p), p) + mulmod(E.a3, y, p)) % p;
                uint64_t r = (mulmod(mulmod(x, x, p), x, p) + mulmod(E.a2, mulmod(x, x, p), p) +
                              mulmod(E.a4, x, p) + E.a6) % p;
                if (lhs == r) ++n;
            }
        }
        return n;
    }
    uint64_t n = 1;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t r = rhs(E, x);
        if (r == 0) n += 1;
        else if (arith::legendre(static_cast<int64_t>(r), p) == 1) n += 2;
    }
    return n;
}

namespace {

// all k in [lo, hi] with k*P = O, by interval baby-step giant-step
std::vector<uint64_t> kill_multiples(const CurveFp& E, const Point& P, uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    if (P.inf) return out; // every k works; caller treats separately
    uint64_t w = hi - lo + 1;
    uint64_t m = static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(w))));
    if (m == 0) m = 1;
    // baby table: x -> list of (j, y) for jP
    std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, uint64_t>>> baby;
    baby.reserve(m * 2);
    Point bj = Point::infinity();
    std::vector<Point> babies(m);
    for (uint64_t j = 0; j < m; ++j) {
        babies[j] = bj;
        if (!bj.inf) baby[bj.x].push_back({j, bj.y});
        bj = ec_add(E, bj, P);
    }
    Point R = ec_mul(E, lo, P);
    Point S = ec_mul(E, m, P);
    for (uint64_t a = 0; lo + a * m <= hi; ++a) {
        // k = lo + a*m + j:  R + jP = O  <=>  R = -jP
        if (R.inf) {
            uint64_t k = lo + a * m;
            if (k <= hi) out.push_back(k);
        } else {
            auto it = baby.find(R.x);
            if (it != baby.end()) {
                for (auto [j, y] : it->second) {
                    if (j == 0) continue; // jP = O handled by R.inf case
                    if ((R.y + y) % E.p == 0) {
                        uint64_t k = lo + a * m + j;
                        if (k <= hi) out.push_back(k);
                    }
                }
            }
        }
        R = ec_add(E, R, S);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// exact order of P given a multiple n with nP = O
uint64_t point_order(const CurveFp& E, const Point& P, uint64_t n) {
    for (auto [q, e] : arith::factorize(n)) {
        for (uint32_t i = 0; i < e; ++i) {
            if (ec_mul(E, n / q, P).inf) n /= q;
            else break;
        }
    }
    return n;
}

// deterministic stream of points on E
struct PointSampler {
    const CurveFp& E;
    arith::SplitMix64 rng;
    PointSampler(const CurveFp& e, uint64_t seed) : E(e), rng(seed) {}
    Point next() {
        for (;;) {
            uint64_t x = rng.below(E.p);
            uint64_t r = rhs(E, x);
            auto y = arith::sqrt_mod(r, E.p);
            if (y) return Point::at(x, *y);
        }
    }
};

// candidates in [lo,hi] divisible by L
std::vector<uint64_t> multiples_in(uint64_t L, uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    uint64_t first = (lo + L - 1) / L * L;
    for (uint64_t k = first; k <= hi; k += L) out.push_back(k);
    return out;
}

uint64_t lcm64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

// Try to pin the group order using up to `rounds` sampled points.
// Returns the surviving candidate list (multiples of the accumulated
// point-order lcm inside the Hasse window).
std::vector<uint64_t> pin_order(const CurveFp& E, uint64_t lo, uint64_t hi, uint64_t seed, int rounds) {
    PointSampler sampler(E, seed);
    uint64_t L = 1;
    std::vector<uint64_t> cands;
    for (int i = 0; i < rounds; ++i) {
        Point P = sampler.next();
        auto kills = kill_multiples(E, P, lo, hi);
        if (kills.empty()) continue; // ordered subgroup larger than window; cannot happen for the full group
        uint64_t ord = point_order(E, P, kills.front());
        L = lcm64(L, ord);
        cands = multiples_in(L, lo, hi);
        if (cands.size() <= 1) return cands;
    }
    return cands;
}

} // namespace

uint64_t count_bsgs(const CurveFp& E, uint64_t seed) {
    if (!E.short_form) throw Error("count_bsgs: requires short form (p >= 5)");
    uint64_t p = E.p;
    if (p <= 457) throw Error("count_bsgs: requires p > 457");
    uint64_t B = static_cast<uint64_t>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
    while ((B + 1) * (B + 1) <= 4 * p) ++B; // exact floor(2 sqrt p)
    while (B * B > 4 * p) --B;
    uint64_t lo = p + 1 - B, hi = p + 1 + B;

    auto cands = pin_order(E, lo, hi, arith::mix_seed(seed, 0xE11), 6);
    if (cands.size() == 1) return cands.front();

    // Quadratic twist: if #E = p+1-t then #E' = p+1+t. Pin the twist and
    // intersect; Mestre guarantees uniqueness for p > 457.
    uint64_t d = 2;
    while (arith::legendre(static_cast<int64_t>(d), p) != -1) ++d;
    CurveFp T;
    T.p = p;
    T.short_form = true;
    T.A = mulmod(E.A, mulmod(d, d, p), p);
    T.B = mulmod(E.B, mulmod(mulmod(d, d, p), d, p), p);
    auto tw = pin_order(T, lo, hi, arith::mix_seed(seed, 0x7157), 6);

    std::vector<uint64_t> joint;
    if (cands.empty()) cands = multiples_in(1, lo, hi);
    if (tw.empty()) tw = multiples_in(1, lo, hi);
    for (uint64_t n : cands) {
        uint64_t twin = 2 * (p + 1) - n;
        if (std::find(tw.begin(), tw.end(), twin) != tw.end()) joint.push_back(n);
    }
    if (joint.size() == 1) return joint.front();
    throw AmbiguousOrder("count_bsgs: could not pin group order at p=" + std::to_string(p));
}

FrobeniusData trace_and_ordinary(const CurveFp& E) {
    FrobeniusData F;
    F.p = E.p;
    F.count = E.p <= 10000 ? count_naive(E) : count_bsgs(E, 0x5eedULL ^ E.p);
    F.a_p = static_cast<int64_t>(E.p) + 1 - static_cast<int64_t>(F.count);
    F.ordinary = (reduce(F.a_p, E.p) != 0);
    return F;
}

PolyFp division_poly(const CurveFp& E, uint32_t ell) {
    if (!E.short_form) throw UnsupportedEll("division_poly: requires short form (p >= 5)");
    if (ell == E.p) throw UnsupportedEll("division_poly: ell = p");
    bool ok = ell == 2 || ell == 3 || ell == 5 || ell == 7 || ell == 11 || ell == 13;
    if (!ok) throw UnsupportedEll("division_poly: ell not in {2,3,5,7,11,13}");
    uint64_t p = E.p;
    PolyFp f(p, {E.B, E.A, 0, 1}); // x^3 + Ax + B
    if (ell == 2) return f;

    // psi_n represented as (poly in x, parity of the y power); products of
    // two odd parities fold one y^2 = f.
    struct Psi {
        PolyFp poly;
        int par = 0;
    };
    auto pmul = [&](const Psi& a, const Psi& b) {
        Psi r{polyfp::mul(a.poly, b.poly), a.par ^ b.par};
        if (a.par & b.par) r.poly = polyfp::mul(r.poly, f);
        return r;
    };
    uint64_t A = E.A, Bc = E.B;
    std::vector<Psi> psi(ell + 3);
    psi[0] = {PolyFp::zero(p), 0};
    psi[1] = {PolyFp::one(p), 0};
    psi[2] = {PolyFp::constant(p, 2), 1};
    // psi3 = 3x^4 + 6Ax^2 + 12Bx - A^2
    psi[3] = {PolyFp(p, {reduce(-static_cast<int64_t>(mulmod(A, A, p)), p),
                         mulmod(12 % p, Bc, p), mulmod(6 % p, A, p), 0, 3 % p}),
              0};
    {
        // psi4 = 4y (x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
        uint64_t A2 = mulmod(A, A, p), A3 = mulmod(A2, A, p), B2 = mulmod(Bc, Bc, p);
        PolyFp q(p, {reduce(-static_cast<int64_t>((8 * B2 % p + A3) % p), p),
                     reduce(-static_cast<int64_t>(mulmod(4 % p, mulmod(A, Bc, p), p)), p),
                     reduce(-static_cast<int64_t>(mulmod(5 % p, A2, p)), p),
                     mulmod(20 % p, Bc, p), mulmod(5 % p, A, p), 0, 1});
        psi[4] = {polyfp::scale(q, 4), 1};
    }
    for (uint32_t n = 5; n <= ell; ++n) {
        if (n % 2 == 1) {
            uint32_t m = (n - 1) / 2;
            Psi t1 = pmul(psi[m + 2], pmul(psi[m], pmul(psi[m], psi[m])));
            Psi t2 = pmul(psi[m - 1], pmul(psi[m + 1], pmul(psi[m + 1], psi[m + 1])));
            if (t1.par != t2.par) throw Error("division_poly: parity mismatch");
            psi[n] = {polyfp::sub(t1.poly, t2.poly), t1.par};
        } else {
            uint32_t m = n / 2;
            Psi t1 = pmul(psi[m + 2], pmul(psi[m - 1], psi[m - 1]));
            Psi t2 = pmul(psi[m - 2], pmul(psi[m + 1], psi[m + 1]));
            Psi diff{polyfp::sub(t1.poly, t2.poly), t1.par};
            Psi prod = pmul(psi[m], diff);
            // prod = 2y * psi_n, parity comes out even with one factor 2f
            auto [q, r] = polyfp::divrem(prod.poly, polyfp::scale(f, 2));
            if (!r.is_zero() || prod.par != 0) throw Error("division_poly: even-index division failed");
            psi[n] = {q, 1};
        }
    }
    PolyFp out = psi[ell].poly;
    if (out.degree() != static_cast<int>((ell * ell - 1) / 2))
        throw Error("division_poly: unexpected degree");
    return out;
}

bool frob_scalar_on_ell(const CurveFp& E, uint32_t ell) {
    if (ell != 2 && ell != 3) throw UnsupportedEll("frob_scalar_on_ell: ell must be 2 or 3");
    if (!E.short_form) throw UnsupportedEll("frob_scalar_on_ell: requires short form");
    uint64_t p = E.p;
    if (ell == 2) {
        PolyFp cubic = division_poly(E, 2);
        return polyfp::fp_roots(cubic).size() == 3;
    }
    PolyFp psi3 = division_poly(E, 3);
    auto roots = polyfp::fp_roots(psi3);
    if (roots.size() != 4) return false;
    int sign = 0;
    for (uint64_t r : roots) {
        uint64_t v = rhs(E, r);
        if (v == 0) return false; // cannot happen for 3-torsion
        int s = arith::legendre(static_cast<int64_t>(v), p);
        if (sign == 0) sign = s;
        else if (sign != s) return false;
    }
    return true;
}

std::vector<CurveSpec> parse_registry(const std::string& text) {
    std::vector<CurveSpec> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        CurveSpec c;
        if (ls >> c.label >> c.a1 >> c.a2 >> c.a3 >> c.a4 >> c.a6) {
            if (c.discriminant() == 0) throw Error("registry: singular model for " + c.label);
            out.push_back(c);
        }
    }
    return out;
}

std::vector<CurveSpec> load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("registry: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_registry(ss.str());
}

const std::vector<CurveSpec>& builtin_registry() {
    static const std::vector<CurveSpec> reg = parse_registry(
        "37a 0 0 1 -1 0\n"
        "389a 0 1 1 -2 0\n"
        "5077a 0 0 1 -7 6\n");
    return reg;
}

std::optional<CurveSpec> find_curve(const std::string& label) {
    for (const auto& c : builtin_registry()) {
        if (c.label == label) return c;
    }
    return std::nullopt;
}

} // namespace endoscan::curve
