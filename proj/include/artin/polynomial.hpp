#pragma once

// Integer polynomials: exact discriminants via fraction-free elimination on
// the Sylvester matrix, plus the mod-p machinery (distinct-degree splitting)
// that drives Frobenius class detection.

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "cyclotomic.hpp"

namespace artin {

// Coefficients ascending: c[0] + c[1] x + ... Leading zeros are trimmed.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly from_json(const nlohmann::json& j) {
        if (!j.is_array() || j.empty())
            throw config_error("polynomial must be a nonempty coefficient array");
        std::vector<Int> c;
        for (const auto& e : j) {
            if (e.is_number_integer())
                c.emplace_back(e.get<long long>());
            else if (e.is_string())
                c.emplace_back(Int(e.get<std::string>()));
            else
                throw config_error("polynomial coefficients must be integers or strings");
        }
        return IntPoly(std::move(c));
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& x : c_) {
            if (x >= std::numeric_limits<long long>::min() &&
                x <= std::numeric_limits<long long>::max())
                arr.push_back(x.convert_to<long long>());
            else
                arr.push_back(x.str());
        }
        return arr;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(std::size_t i) const {
        static const Int zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const Int& leading() const {
        if (c_.empty()) throw domain_error("zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<Int> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(i);
        return IntPoly(std::move(d));
    }

    Int eval(const Int& x) const {
        Int acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    double eval(double x) const {
        double acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].convert_to<double>();
        return acc;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Int& a = c_[i];
            if (a == 0) continue;
            Int mag = a < 0 ? Int(-a) : a;
            if (first) {
                if (a < 0) os << "-";
                first = false;
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            if (i == 0 || mag != 1) os << mag.str();
            if (i >= 1) {
                os << "x";
                if (i >= 2) os << "^" << i;
            }
        }
        return os.str();
    }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    // Machine-integer view of the coefficients, available whenever they all
    // fit in long long; the mod-p layer leans on this to avoid bignum work
    // inside per-prime loops.
    bool fits_small() const { return small_ok_; }
    const std::vector<long long>& small_coeffs() const { return small_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        small_.clear();
        small_ok_ = true;
        for (const auto& x : c_) {
            if (x < std::numeric_limits<long long>::min() ||
                x > std::numeric_limits<long long>::max()) {
                small_.clear();
                small_ok_ = false;
                break;
            }
            small_.push_back(x.convert_to<long long>());
        }
    }
    std::vector<Int> c_;
    std::vector<long long> small_;
    bool small_ok_ = true;
};

// Determinant by the Bareiss fraction-free method; all divisions are exact.
inline Int bareiss_determinant(std::vector<std::vector<Int>> m) {
    std::size_t n = m.size();
    if (n == 0) return Int(1);
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline Int resultant(const IntPoly& f, const IntPoly& g) {
    int n = f.degree(), m = g.degree();
    if (n < 0 || m < 0) return Int(0);
    if (n == 0 && m == 0) return Int(1);
    std::size_t size = static_cast<std::size_t>(n + m);
    std::vector<std::vector<Int>> s(size, std::vector<Int>(size, Int(0)));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] =
                f.coeff(static_cast<std::size_t>(n - i));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            s[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + i)] =
                g.coeff(static_cast<std::size_t>(m - i));
    return bareiss_determinant(std::move(s));
}

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
inline Int discriminant(const IntPoly& f) {
    int n = f.degree();
    if (n < 1) throw domain_error("discriminant needs degree >= 1");
    if (n == 1) return Int(1);
    Int res = resultant(f, f.derivative());
    Int d = res / f.leading();
    long long swaps = static_cast<long long>(n) * (n - 1) / 2;
    return swaps % 2 == 0 ? d : Int(-d);
}

// Rational root test. For monic input an integer root would divide c0.
inline bool has_rational_root(const IntPoly& f) {
    if (f.degree() < 1) return false;
    Int c0 = f.coeff(0);
    if (c0 == 0) return true;
    Int lc = f.leading();
    auto divisors = [](Int v) {
        if (v < 0) v = -v;
        std::vector<Int> ds;
        for (Int d(1); d * d <= v; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        return ds;
    };
    for (const Int& p : divisors(c0))
        for (const Int& q : divisors(lc)) {
            // candidate root +-p/q: check q^n f(p/q) = 0 without rationals
            Int acc_pos(0), acc_neg(0);
            int n = f.degree();
            std::vector<Int> qpow(static_cast<std::size_t>(n) + 1, Int(1));
            for (int i = 1; i <= n; ++i) qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i - 1)] * q;
            Int ppow(1);
            for (int i = 0; i <= n; ++i) {
                Int term = f.coeff(static_cast<std::size_t>(i)) * ppow * qpow[static_cast<std::size_t>(n - i)];
                acc_pos += term;
                acc_neg += (i % 2 == 0) ? term : Int(-term);
                ppow *= p;
            }
            if (acc_pos == 0 || acc_neg == 0) return true;
        }
    return false;
}

// ---------------------------------------------------------------------------
// Arithmetic mod p. Coefficients live in [0, p); p up to 2^62 via 128-bit
// products. Degrees here are tiny (number field defining polynomials), so the
// quadratic algorithms are the right tool.
// ---------------------------------------------------------------------------

namespace modp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // ascending, trimmed

inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

// Both arguments must already be reduced mod p.
inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly reduce(const IntPoly& f, u64 p) {
    Poly r(f.coeffs().size());
    if (f.fits_small()) {
        const auto& sc = f.small_coeffs();
        auto sp = static_cast<long long>(p);
        for (std::size_t i = 0; i < r.size(); ++i) {
            long long m = sc[i] % sp;
            if (m < 0) m += sp;
            r[i] = static_cast<u64>(m);
        }
    } else {
        Int ip(static_cast<long long>(p));
        for (std::size_t i = 0; i < r.size(); ++i) {
            Int m = f.coeffs()[i] % ip;
            if (m < 0) m += ip;
            r[i] = m.convert_to<u64>();
        }
    }
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
    trim(r);
    return r;
}

inline Poly rem(Poly a, const Poly& b, u64 p) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    u64 inv_lead = invmod(b.back(), p);
    while (deg(a) >= deg(b)) {
        u64 q = mulmod(a.back(), inv_lead, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            u64 sub = mulmod(q, b[i], p);
            u64& tgt = a[shift + i];
            tgt = (tgt >= sub) ? (tgt - sub) : (tgt + p - sub);
        }
        trim(a);
    }
    return a;
}

inline Poly monic(Poly f, u64 p) {
    if (f.empty()) return f;
    u64 inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

inline Poly pow_mod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r = {1};
    base = rem(std::move(base), f, p);
    while (e) {
        if (e & 1) r = rem(mul(r, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

inline Poly divide_exact(const Poly& a, const Poly& b, u64 p) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    Poly r = a, q;
    if (a.size() < b.size()) {
        if (!a.empty()) throw computation_error("polynomial division is not exact");
        return {};
    }
    q.assign(a.size() - b.size() + 1, 0);
    u64 inv_lead = invmod(b.back(), p);
    while (deg(r) >= deg(b)) {
        u64 c = mulmod(r.back(), inv_lead, p);
        std::size_t shift = r.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            u64 sub = mulmod(c, b[i], p);
            u64& tgt = r[shift + i];
            tgt = (tgt >= sub) ? (tgt - sub) : (tgt + p - sub);
        }
        trim(r);
    }
    if (!r.empty()) throw computation_error("polynomial division is not exact");
    trim(q);
    return q;
}

inline Poly derivative(const Poly& f, u64 p) {
    if (f.size() <= 1) return {};
    Poly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mulmod(f[i], i % p, p);
    trim(d);
    return d;
}

// f must satisfy f' = 0, i.e. f = g(x^p); returns g. Coefficients are fixed
// by Frobenius (c^p = c in F_p), so this is just index decimation.
inline Poly pth_root(const Poly& f, u64 p) {
    Poly g;
    for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p)) g.push_back(f[i]);
    trim(g);
    return g;
}

// x^p mod (x^3 + b x^2 + c x + d) over F_p, as coefficients of 1, x, x^2.
// Fixed-size binary powering; the per-prime loops in the splitting layer are
// too hot for the allocating Poly arithmetic.
inline std::array<u64, 3> frobenius_residue_cubic(u64 b, u64 c, u64 d, u64 p) {
    using R = std::array<u64, 3>;
    auto mul = [&](const R& u, const R& v) {
        u64 w0 = mulmod(u[0], v[0], p);
        u64 w1 = addmod(mulmod(u[0], v[1], p), mulmod(u[1], v[0], p), p);
        u64 w2 = addmod(mulmod(u[0], v[2], p),
                        addmod(mulmod(u[1], v[1], p), mulmod(u[2], v[0], p), p), p);
        u64 w3 = addmod(mulmod(u[1], v[2], p), mulmod(u[2], v[1], p), p);
        u64 w4 = mulmod(u[2], v[2], p);
        // fold x^4 = -b x^3 - c x^2 - d x, then x^3 = -b x^2 - c x - d
        w3 = submod(w3, mulmod(b, w4, p), p);
        w2 = submod(w2, mulmod(c, w4, p), p);
        w1 = submod(w1, mulmod(d, w4, p), p);
        w2 = submod(w2, mulmod(b, w3, p), p);
        w1 = submod(w1, mulmod(c, w3, p), p);
        w0 = submod(w0, mulmod(d, w3, p), p);
        return R{w0, w1, w2};
    };
    auto mul_x = [&](const R& u) {
        return R{submod(0, mulmod(d, u[2], p), p), submod(u[0], mulmod(c, u[2], p), p),
                 submod(u[1], mulmod(b, u[2], p), p)};
    };
    R r{0, 1 % p, 0};  // x  (top bit of p handled here)
    int bit = 62;
    while (bit >= 0 && !((p >> bit) & 1)) --bit;
    for (--bit; bit >= 0; --bit) {
        r = mul(r, r);
        if ((p >> bit) & 1) r = mul_x(r);
    }
    return r;
}

struct SplittingDegrees {
    bool squarefree = true;
    std::vector<int> degrees;  // sorted ascending, with multiplicity
};

// Distinct-degree splitting of f mod p. When f mod p is not squarefree the
// degrees are not computed and squarefree is false.
inline SplittingDegrees splitting_degrees(const IntPoly& fz, u64 p) {
    SplittingDegrees out;
    Poly f = reduce(fz, p);
    if (deg(f) != fz.degree()) {
        // leading coefficient vanished mod p: treat as ramified-like
        out.squarefree = false;
        return out;
    }
    // Degrees 2 and 3 at odd p resolve by scalar arithmetic: the discriminant
    // detects repeated factors, Euler's criterion reads the factor sign, and
    // only a square cubic discriminant needs the x^p root probe.
    if (deg(f) == 2 && p >= 3) {
        u64 disc = submod(mulmod(f[1], f[1], p), mulmod(4 % p, mulmod(f[2], f[0], p), p), p);
        if (disc == 0) {
            out.squarefree = false;
            return out;
        }
        if (powmod(disc, (p - 1) / 2, p) == 1)
            out.degrees = {1, 1};
        else
            out.degrees = {2};
        return out;
    }
    if (deg(f) == 3 && p >= 5) {
        f = monic(std::move(f), p);
        u64 b = f[2], c = f[1], d = f[0];
        u64 bc = mulmod(b, c, p);
        u64 t1 = mulmod(18 % p, mulmod(bc, d, p), p);
        u64 t2 = mulmod(4 % p, mulmod(mulmod(b, mulmod(b, b, p), p), d, p), p);
        u64 t3 = mulmod(bc, bc, p);
        u64 t4 = mulmod(4 % p, mulmod(c, mulmod(c, c, p), p), p);
        u64 t5 = mulmod(27 % p, mulmod(d, d, p), p);
        u64 disc = submod(submod(addmod(t1, t3, p), t2, p), addmod(t4, t5, p), p);
        if (disc == 0) {
            out.squarefree = false;
            return out;
        }
        if (powmod(disc, (p - 1) / 2, p) != 1) {
            // Frobenius acts as a transposition exactly when disc is a nonsquare
            out.degrees = {1, 2};
            return out;
        }
        auto h = frobenius_residue_cubic(b, c, d, p);
        h[1] = submod(h[1], 1, p);
        if ((h[0] | h[1] | h[2]) == 0) {
            out.degrees = {1, 1, 1};
            return out;
        }
        Poly diffp = {h[0], h[1], h[2]};
        trim(diffp);
        if (deg(gcd(f, diffp, p)) != 0)
            throw computation_error("distinct-degree split inconsistency");
        out.degrees = {3};
        return out;
    }
    f = monic(std::move(f), p);
    Poly fd(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) fd[i - 1] = mulmod(f[i], i % p, p);
    trim(fd);
    Poly g = fd.empty() ? f : gcd(f, fd, p);
    if (deg(g) != 0) {
        out.squarefree = false;
        return out;
    }

    Poly work = f;
    Poly h = {0, 1};  // x
    int d = 0;
    while (deg(work) > 0) {
        ++d;
        if (2 * d > deg(work)) {
            out.degrees.push_back(deg(work));
            break;
        }
        h = pow_mod(std::move(h), p, f, p);  // x^{p^d} mod f
        Poly diff = h;
        // subtract x
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] >= 1) ? diff[1] - 1 : p - 1;
        trim(diff);
        Poly gd = gcd(work, diff, p);
        int k = deg(gd);
        if (k > 0) {
            if (k % d != 0) throw computation_error("distinct-degree split inconsistency");
            for (int i = 0; i < k / d; ++i) out.degrees.push_back(d);
            work = monic(divide_exact(work, gd, p), p);
        }
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    return out;
}

// Distinct degrees of a squarefree polynomial mod p (helper for the shape
// computation below; input must already be squarefree).
inline std::vector<int> ddf_degrees(Poly f, u64 p) {
    f = monic(std::move(f), p);
    std::vector<int> degrees;
    Poly work = f;
    Poly h = {0, 1};
    int d = 0;
    while (deg(work) > 0) {
        ++d;
        if (2 * d > deg(work)) {
            degrees.push_back(deg(work));
            break;
        }
        h = pow_mod(std::move(h), p, f, p);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] >= 1) ? diff[1] - 1 : p - 1;
        trim(diff);
        Poly gd = gcd(work, diff, p);
        int k = deg(gd);
        if (k > 0) {
            if (k % d != 0) throw computation_error("distinct-degree split inconsistency");
            for (int i = 0; i < k / d; ++i) degrees.push_back(d);
            work = monic(divide_exact(work, gd, p), p);
        }
    }
    return degrees;
}

// (degree, multiplicity) of each irreducible factor of f mod p, via
// characteristic-p squarefree decomposition followed by distinct-degree
// splitting of each multiplicity layer. This is what a ramified prime's
// ideal shape is read from when no override is supplied.
inline std::vector<std::pair<int, int>> factor_shapes(const IntPoly& fz, u64 p) {
    std::vector<std::pair<int, int>> shapes;
    // (poly, multiplier) work list handles the f = g(x^p) descent
    std::vector<std::pair<Poly, int>> stack;
    {
        Poly f = reduce(fz, p);
        if (f.empty()) throw domain_error("polynomial vanishes mod p");
        stack.emplace_back(monic(std::move(f), p), 1);
    }
    while (!stack.empty()) {
        auto [f, mult] = stack.back();
        stack.pop_back();
        if (deg(f) == 0) continue;
        Poly fd = derivative(f, p);
        if (fd.empty()) {
            stack.emplace_back(pth_root(f, p), mult * static_cast<int>(p));
            continue;
        }
        Poly c = gcd(f, fd, p);
        Poly w = divide_exact(f, c, p);
        int i = 1;
        while (deg(w) > 0) {
            Poly y = gcd(w, c, p);
            Poly z = divide_exact(w, y, p);
            if (deg(z) > 0)
                for (int dgr : ddf_degrees(z, p)) shapes.emplace_back(dgr, mult * i);
            c = divide_exact(c, y, p);
            w = std::move(y);
            ++i;
        }
        if (deg(c) > 0) stack.emplace_back(std::move(c), mult);
    }
    std::sort(shapes.begin(), shapes.end());
    return shapes;
}

}  // namespace modp

}  // namespace artin
