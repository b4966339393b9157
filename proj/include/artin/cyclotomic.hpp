#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// Character values are stored as rational linear combinations of roots of
// unity. Elements are kept reduced modulo the N-th cyclotomic polynomial
// Phi_N, i.e. expressed in the power basis 1, zeta, ..., zeta^{phi(N)-1}, so
// representation is canonical and equality / orthogonality checks are exact.
// Rendering to complex doubles happens only at the boundary.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <vector>

#include "common.hpp"

namespace artin {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline bool rat_is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

namespace detail {

// Integer polynomials, ascending coefficients, used only to build Phi_N.
using ZPoly = std::vector<Int>;

inline ZPoly zpoly_div_exact(const ZPoly& num, const ZPoly& den) {
    // Exact division of integer polynomials, den monic. Used for
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
    ZPoly rem = num;
    ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        Int coeff = rem[k + den.size() - 1];
        quot[k] = coeff;
        if (coeff != 0) {
            for (std::size_t i = 0; i < den.size(); ++i) rem[k + i] -= coeff * den[i];
        }
    }
    return quot;
}

struct CyclotomicBasis {
    int order = 1;
    int degree = 1;           // phi(order)
    ZPoly phi;                // monic, length degree + 1
    std::vector<ZPoly> zeta_pow;  // zeta^j mod Phi for j in [0, order), length degree each

    static const CyclotomicBasis& get(int order);
};

inline ZPoly cyclotomic_poly(int n, std::map<int, ZPoly>& cache) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    ZPoly result;
    if (n == 1) {
        result = {Int(-1), Int(1)};
    } else {
        ZPoly num(static_cast<std::size_t>(n) + 1, Int(0));
        num[0] = -1;
        num[static_cast<std::size_t>(n)] = 1;
        ZPoly den = {Int(1)};
        for (int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            ZPoly phid = cyclotomic_poly(d, cache);
            ZPoly next(den.size() + phid.size() - 1, Int(0));
            for (std::size_t i = 0; i < den.size(); ++i)
                for (std::size_t j = 0; j < phid.size(); ++j) next[i + j] += den[i] * phid[j];
            den = std::move(next);
        }
        result = zpoly_div_exact(num, den);
    }
    cache[n] = result;
    return result;
}

inline const CyclotomicBasis& CyclotomicBasis::get(int order) {
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<CyclotomicBasis>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return *it->second;
    if (order < 1) throw domain_error("cyclotomic order must be >= 1");

    auto basis = std::make_unique<CyclotomicBasis>();
    basis->order = order;
    static std::map<int, ZPoly> phi_cache;
    basis->phi = cyclotomic_poly(order, phi_cache);
    basis->degree = static_cast<int>(basis->phi.size()) - 1;

    // zeta^j reduced mod Phi. Multiply by x step by step, folding the top
    // coefficient back with the monic relation x^deg = -(phi[0..deg-1]).
    const int deg = basis->degree;
    basis->zeta_pow.resize(static_cast<std::size_t>(order));
    ZPoly cur(static_cast<std::size_t>(deg), Int(0));
    cur[0] = 1;
    for (int j = 0; j < order; ++j) {
        basis->zeta_pow[static_cast<std::size_t>(j)] = cur;
        // cur *= x
        Int top = deg > 0 ? cur[static_cast<std::size_t>(deg) - 1] : Int(0);
        for (int i = deg - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i) - 1];
        if (deg > 0) cur[0] = 0;
        if (top != 0) {
            for (int i = 0; i < deg; ++i) cur[static_cast<std::size_t>(i)] -= top * basis->phi[static_cast<std::size_t>(i)];
        }
    }
    const CyclotomicBasis& ref = *basis;
    cache[order] = std::move(basis);
    return ref;
}

}  // namespace detail

class Cyclotomic {
public:
    Cyclotomic() : order_(1), c_(1, Rat(0)) {}

    explicit Cyclotomic(int order) : order_(order) {
        const auto& b = detail::CyclotomicBasis::get(order);
        c_.assign(static_cast<std::size_t>(b.degree), Rat(0));
    }

    static Cyclotomic from_rational(int order, const Rat& r) {
        Cyclotomic z(order);
        z.c_[0] = r;
        return z;
    }

    static Cyclotomic root_of_unity(int order, long long k) {
        const auto& b = detail::CyclotomicBasis::get(order);
        long long j = k % order;
        if (j < 0) j += order;
        Cyclotomic z(order);
        for (int i = 0; i < b.degree; ++i)
            z.c_[static_cast<std::size_t>(i)] = Rat(b.zeta_pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        return z;
    }

    int order() const { return order_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    // Re-express in Q(zeta_M) for order_ | M.
    Cyclotomic rebased(int new_order) const {
        if (new_order == order_) return *this;
        if (new_order % order_ != 0)
            throw domain_error("cyclotomic rebase requires divisible orders");
        const auto& b = detail::CyclotomicBasis::get(new_order);
        int stride = new_order / order_;
        Cyclotomic z(new_order);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            const auto& row = b.zeta_pow[(k * static_cast<std::size_t>(stride)) % static_cast<std::size_t>(new_order)];
            for (int i = 0; i < b.degree; ++i)
                z.c_[static_cast<std::size_t>(i)] += c_[k] * Rat(row[static_cast<std::size_t>(i)]);
        }
        return z;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        check_same_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        check_same_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Cyclotomic& operator*=(const Rat& r) {
        for (auto& x : c_) x *= r;
        return *this;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rat& r) { return a *= r; }
    friend Cyclotomic operator*(const Rat& r, Cyclotomic a) { return a *= r; }
    friend Cyclotomic operator-(Cyclotomic a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        a.check_same_order(b);
        const auto& basis = detail::CyclotomicBasis::get(a.order_);
        const int deg = basis.degree;
        std::vector<Rat> conv(static_cast<std::size_t>(2 * deg - 1), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        // reduce mod Phi (monic)
        for (std::size_t k = conv.size(); k-- > static_cast<std::size_t>(deg);) {
            Rat lead = conv[k];
            if (lead == 0) continue;
            conv[k] = 0;
            for (int i = 0; i < deg; ++i)
                conv[k - static_cast<std::size_t>(deg) + static_cast<std::size_t>(i)] -= lead * Rat(basis.phi[static_cast<std::size_t>(i)]);
        }
        Cyclotomic z(a.order_);
        for (int i = 0; i < deg; ++i) z.c_[static_cast<std::size_t>(i)] = conv[static_cast<std::size_t>(i)];
        return z;
    }

    // Complex conjugation: zeta -> zeta^{-1}, a Galois automorphism.
    Cyclotomic conj() const {
        const auto& basis = detail::CyclotomicBasis::get(order_);
        Cyclotomic z(order_);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            std::size_t j = (static_cast<std::size_t>(order_) - k) % static_cast<std::size_t>(order_);
            const auto& row = basis.zeta_pow[j];
            for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] += c_[k] * Rat(row[i]);
        }
        return z;
    }

    Cyclotomic real_part() const { return (*this + conj()) * Rat(1, 2); }

    bool operator==(const Cyclotomic& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Rat rational_value() const {
        if (!is_rational()) throw computation_error("cyclotomic value is not rational");
        return c_[0];
    }

    bool is_real() const { return *this == conj(); }

    std::complex<double> to_complex() const {
        double re = 0.0, im = 0.0;
        const double step = 2.0 * 3.14159265358979323846 / order_;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            double v = rat_to_double(c_[k]);
            re += v * std::cos(step * static_cast<double>(k));
            im += v * std::sin(step * static_cast<double>(k));
        }
        return {re, im};
    }

    double to_real() const { return to_complex().real(); }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!first) os << " + ";
            os << c_[k];
            if (k > 0) os << "*z" << order_ << "^" << k;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check_same_order(const Cyclotomic& o) const {
        if (order_ != o.order_)
            throw table_mismatch_error("cyclotomic values live in different fields; rebase first");
    }

    int order_;
    std::vector<Rat> c_;
};

}  // namespace artin
