#pragma once

// Landau-Siegel machinery for quadratic Dirichlet characters: evaluation of
// L(s, chi_d) on the real segment near s = 1, sign-change scans of the Stark
// region, eta correction factors, Stark's floor, and the Deuring-Heilbronn
// repulsion inequalities.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "expint.hpp"
#include "primes.hpp"

namespace artin {

// Kronecker symbol (a|n) for n >= 1.
inline int kronecker_symbol(long long a, long long n) {
    if (n < 1) throw domain_error("kronecker_symbol needs n >= 1");
    if (n == 1) return 1;
    int result = 1;
    // factor of 2 in n
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline bool is_fundamental_discriminant(long long d) {
    if (d == 0 || d == 1) return false;
    long long m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree_ll(d);
    if (m4 != 0) return false;
    long long m = d / 4;
    long long mm = ((m % 4) + 4) % 4;
    return (mm == 2 || mm == 3) && is_squarefree_ll(m);
}

struct QuadraticCharSpec {
    long long d = 0;

    explicit QuadraticCharSpec(long long disc) : d(disc) {
        if (!is_fundamental_discriminant(d))
            throw config_error("d = " + std::to_string(d) + " is not a fundamental discriminant");
    }

    long long q() const { return d < 0 ? -d : d; }
    int chi(long long n) const { return kronecker_symbol(d, n < 0 ? -n : n); }
};

namespace detail {

// zeta(s, x) with the 1/(s-1) pole removed, by Euler-Maclaurin. Smooth
// through s = 1; the dropped pole cancels in mean-zero character sums.
inline double hurwitz_zeta_star(double s, double x) {
    constexpr int M = 24;
    // B_{2k}/(2k)! for k = 1..8
    static constexpr double bern[8] = {
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
        -3617.0 / 10670622842880000.0,
    };
    double acc = 0.0;
    for (int n = 0; n < M; ++n) acc += std::pow(n + x, -s);
    double y = M + x;
    double ly = std::log(y);
    double t = s - 1.0;
    // ((y)^{1-s} - 1)/(s - 1), continuous at s = 1
    double h;
    if (std::fabs(t) < 1e-8)
        h = -ly * (1.0 - t * ly / 2.0 + t * t * ly * ly / 6.0);
    else
        h = std::expm1(-t * ly) / t;
    acc += h;
    double ys = std::pow(y, -s);
    acc += 0.5 * ys;
    double poch = s;          // (s)_{2k-1}, starts at k=1 with (s)_1 = s
    double ypow = ys / y;     // y^{-s-1}
    for (int k = 1; k <= 8; ++k) {
        acc += bern[k - 1] * poch * ypow;
        poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        ypow /= y * y;
    }
    return acc;
}

}  // namespace detail

// L(s, chi_d) for real s near 1, absolute accuracy well under 1e-10.
inline double dirichlet_L_real(const QuadraticCharSpec& spec, double s) {
    if (s <= 0.5 || s > 1.5) throw domain_error("dirichlet_L_real: s outside (0.5, 1.5]");
    long long q = spec.q();
    if (q > 10000000LL)
        throw precision_error("dirichlet_L_real: |d| beyond the 1e7 precision budget");
    kahan_sum acc;
    double xq = 1.0 / static_cast<double>(q);
    for (long long a = 1; a < q; ++a) {
        int c = spec.chi(a);
        if (c == 0) continue;
        double z = detail::hurwitz_zeta_star(s, static_cast<double>(a) * xq);
        acc.add(c > 0 ? z : -z);
    }
    return std::pow(static_cast<double>(q), -s) * acc.value();
}

struct SiegelScan {
    std::optional<double> beta;
    bool anomaly = false;   // a second sign change inside the region
    double region_lo = 0.0; // 1 - 1/(4 log q)
    int evaluations = 0;
};

// Scan [1 - 1/(4 log q), 1) for sign changes of f on a grid of step
// (4 log q)^{-1}/64, refining each change by bisection to 1e-12.
inline SiegelScan scan_region(double q, const std::function<double(double)>& f) {
    if (q < 3) throw domain_error("scan_region needs q >= 3");
    SiegelScan out;
    double width = 1.0 / (4.0 * std::log(q));
    out.region_lo = 1.0 - width;
    double step = width / 64.0;
    double s_hi = 1.0 - 1e-9;

    auto bisect = [&](double lo, double hi, double flo) {
        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = f(mid);
            ++out.evaluations;
            if (fm == 0.0) return mid;
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    std::vector<double> zeros;
    double sprev = out.region_lo;
    double fprev = f(sprev);
    ++out.evaluations;
    bool done = false;
    for (int i = 1; !done; ++i) {
        double s = out.region_lo + i * step;
        if (s >= s_hi) {
            s = s_hi;
            done = true;
        }
        double fv = f(s);
        ++out.evaluations;
        if (fv == 0.0) {
            zeros.push_back(s);
        } else if ((fv < 0) != (fprev < 0)) {
            zeros.push_back(bisect(sprev, s, fprev));
        }
        sprev = s;
        fprev = fv;
    }
    if (!zeros.empty()) out.beta = zeros.front();
    out.anomaly = zeros.size() >= 2;
    return out;
}

inline SiegelScan find_siegel_zero(const QuadraticCharSpec& spec) {
    return scan_region(static_cast<double>(spec.q()),
                       [&](double s) { return dirichlet_L_real(spec, s); });
}

// eta(psi, tau) = exp(-integral_tau^inf t^{beta-2}/log t dt) = exp(-E1((1-beta) log tau)).
inline double eta_T(double beta, double tau) {
    if (beta >= 1.0) throw domain_error("eta_T needs beta < 1");
    if (tau <= 1.0) throw domain_error("eta_T needs tau > 1");
    return std::exp(-expint_e1((1.0 - beta) * std::log(tau)));
}

// eta(psi) = (1 - beta) log q.
inline double eta_plain(double beta, double q) { return (1.0 - beta) * std::log(q); }

// Stark's effective floor shape (D_k q)^{-1/(2 n_k)}.
inline double stark_floor(double D_k, double q, int n_k) {
    if (n_k < 1) throw domain_error("stark_floor needs n_k >= 1");
    return std::pow(D_k * q, -1.0 / (2.0 * n_k));
}

struct DHReport {
    double min_beta = 0.0, max_beta = 0.0;
    double rhs_fixed = 0.0;     // 1 - 1/(12 log(q1 q2))
    double rhs_improved = 0.0;  // 1 - log(c2/((1-max) log(q1 q2)))/(c1 log(q1 q2))
    bool holds_fixed = false;
    bool holds_improved = false;
};

inline DHReport dh_repulsion_check(double q1, double q2, double beta1, double beta2,
                                   double c1 = 12.0, double c2 = 1.0 / 12.0) {
    if (q1 < 3 || q2 < 3) throw domain_error("dh_repulsion_check needs q1, q2 >= 3");
    DHReport r;
    r.min_beta = std::min(beta1, beta2);
    r.max_beta = std::max(beta1, beta2);
    double L = std::log(q1) + std::log(q2);
    r.rhs_fixed = 1.0 - 1.0 / (12.0 * L);
    double gap = (1.0 - r.max_beta) * L;
    r.rhs_improved = gap > 0 ? 1.0 - std::log(c2 / gap) / (c1 * L)
                             : -std::numeric_limits<double>::infinity();
    r.holds_fixed = r.min_beta <= r.rhs_fixed + 1e-15;
    r.holds_improved = r.min_beta <= r.rhs_improved + 1e-15;
    return r;
}

struct SiegelRecord {
    std::string psi_id;
    double q = 0.0;
    std::optional<double> beta;
    double eta_plain_value = 0.0;
    double region_lo = 0.0;
    double stark_floor_value = 0.0;
    bool anomaly = false;
    double scan_time_ms = 0.0;
};

inline SiegelRecord make_siegel_record(std::string psi_id, double q, std::optional<double> beta,
                                       double D_k = 1.0, int n_k = 1) {
    if (q < 3) throw domain_error("siegel record needs conductor q >= 3");
    SiegelRecord r;
    r.psi_id = std::move(psi_id);
    r.q = q;
    r.region_lo = 1.0 - 1.0 / (4.0 * std::log(q));
    r.stark_floor_value = stark_floor(D_k, q, n_k);
    if (beta) {
        if (*beta <= r.region_lo || *beta >= 1.0)
            throw domain_error("declared beta lies outside the Stark region for q");
        r.beta = beta;
        r.eta_plain_value = eta_plain(*beta, q);
    }
    return r;
}

// Members of Psi_{K/k}(G): records whose scan actually found a zero.
inline std::vector<SiegelRecord> psi_set(const std::vector<SiegelRecord>& records) {
    std::vector<SiegelRecord> members;
    for (const auto& r : records)
        if (r.beta && *r.beta > r.region_lo) members.push_back(r);
    return members;
}

}  // namespace artin
