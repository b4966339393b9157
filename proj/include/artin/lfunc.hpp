#pragma once

// Local Euler factors at s = 1, truncated Euler products, kappa estimators,
// and Mertens sums over prime ideals.
//
// Products run over rational primes p <= T: each record contributes the Euler
// factor det(1 - p^{-1} sigma_p | V^{I_p})^{-1} of L(s, chi) over Q. Logs are
// accumulated with compensated summation in fixed chunks of 2^16 primes and
// combined in chunk order, so results are bit-identical for any worker count.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "expint.hpp"
#include "groups.hpp"
#include "primes.hpp"
#include "splitting.hpp"

namespace artin {

struct LocalFactorValue {
    complexd log_value{0.0, 0.0};
    double bracket_radius = 0.0;  // 0 when exact
};

struct KappaOptions {
    enum class Truncation { heuristic, delta_k, none };
    double gamma = euler_gamma;
    Truncation model = Truncation::heuristic;
    double heuristic_c = 1.0;
    double c3 = 1.0, c4 = 1.0, c5 = 1.0;
    unsigned workers = 0;
    bool allow_bracket = true;
};

struct SiegelPoint {
    std::string psi_id;
    double beta = 0.0;
    double q = 0.0;
};

struct SiegelData {
    std::optional<SiegelPoint> exceptional;     // psi_{K/k} with beta_K, if any
    std::map<std::string, double> beta_by_psi;  // members of Psi_{K/k}(G)

    std::optional<double> beta_for(const std::string& psi_id) const {
        auto it = beta_by_psi.find(psi_id);
        if (it != beta_by_psi.end()) return it->second;
        if (exceptional && exceptional->psi_id == psi_id) return exceptional->beta;
        return std::nullopt;
    }
};

struct KappaInterval {
    complexd center{0.0, 0.0};
    double radius = 0.0;
    double T_used = 0.0;                 // single-truncation form
    std::map<std::string, double> T_map; // multi-truncation form
    double eta_factor = 1.0;
    long long pole_order = 0;
    double mult_slack = 1.0;             // 1 when the normalization is exact
    bool truncation_modeled = true;
};

struct TruncatedProduct {
    complexd value{1.0, 0.0};
    double radius = 0.0;      // |value| * (exp(log_radius) - 1)
    complexd log_sum{0.0, 0.0};
    double log_radius = 0.0;  // accumulated bracket radii in log space
};

struct MertensResult {
    double sum = 0.0;
    double slack = 0.0;  // sum - (log log x - log log y)
    double y = 0.0, x = 0.0;
};

// Delta_K(t) = c5 exp(-c4 log t / (log(n^n D_K) + sqrt(n log t))).
inline double delta_K(double t, int n, double D_K, double c3 = 1.0, double c4 = 1.0,
                      double c5 = 1.0) {
    if (n < 1 || D_K < 1.0 || t <= 1.0 || c3 <= 0 || c4 <= 0 || c5 <= 0)
        throw domain_error("delta_K: invalid arguments");
    double ln_field = n * std::log(static_cast<double>(n)) + std::log(D_K);
    double lt = std::log(t);
    if (lt < c3 * ln_field - 1e-12)
        throw domain_error("delta_K: t below the domain threshold (n^n D_K)^c3");
    return c5 * std::exp(-c4 * lt / (ln_field + std::sqrt(n * lt)));
}

namespace detail {

struct CharContext {
    const GroupTable* table = nullptr;
    std::vector<complexd> values;
    double degree = 0.0;      // chi(1)
    double abs_degree = 0.0;  // sum |a_i| psi_i(1), tail-bound weight
    double mu_value = 0.0;
    bool genuine = true;
    long long a_triv = 0;

    explicit CharContext(const VirtualCharacter& chi)
        : table(chi.table().get()),
          values(chi.complex_values()),
          degree(static_cast<double>(chi.degree())),
          abs_degree(static_cast<double>(chi.abs_degree())),
          mu_value(mu(chi).value),
          genuine(chi.is_genuine()),
          a_triv(inner_product_with_trivial(chi)) {}
};

// log sum_m coeff(m)/(m Np^m) for a single Frobenius eigenvalue alpha with
// |alpha| <= 1; equals -Log(1 - alpha/Np) but summed termwise.
inline complexd eigen_log_series(complexd alpha, double Np) {
    complexd acc{0.0, 0.0};
    complexd am{1.0, 0.0};
    double pm = 1.0;
    for (int m = 1; m <= 96; ++m) {
        am *= alpha;
        pm *= Np;
        acc += am / (m * pm);
        if (1.0 / (pm * (1.0 - 1.0 / Np) * m) < 1e-17) break;
    }
    return acc;
}

inline complexd unramified_log(const CharContext& cc, int cls, double Np) {
    complexd acc{0.0, 0.0};
    double pm = 1.0;
    for (int m = 1; m <= 96; ++m) {
        pm *= Np;
        int cm = cc.table->power_class(cls, m);
        acc += cc.values[static_cast<std::size_t>(cm)] / (m * pm);
        if (cc.abs_degree / (pm * (1.0 - 1.0 / Np) * m) < 1e-15) break;
    }
    return acc;
}

// Exact ramified local log for one irreducible from override data.
inline complexd override_log_for_irr(const LocalOverrideEntry& e, double Np) {
    if (e.use_alphas) {
        complexd acc{0.0, 0.0};
        for (const auto& a : e.alphas) {
            if (std::abs(a) > 1.0 + 1e-9)
                throw config_error("ramified override eigenvalue has modulus > 1");
            acc += eigen_log_series(a, Np);
        }
        return acc;
    }
    if (std::abs(e.chi_value) > 1.0 + 1e-9)
        throw config_error(
            "ramified override chi_value has modulus > 1; supply the eigenvalue list instead");
    return eigen_log_series(e.chi_value, Np);
}

// Try to assemble an exact ramified local log for a virtual character from
// per-irreducible override entries. The trivial character never needs an
// entry: its local factor is (1 - 1/p)^{-1} at every prime.
inline std::optional<complexd> ramified_exact_log(const VirtualCharacter& chi,
                                                  const PrimeRecord& rec, double Np) {
    const auto& table = *chi.table();
    static const std::map<std::string, LocalOverrideEntry> empty;
    const auto& local = rec.override_data ? rec.override_data->local : empty;
    complexd acc{0.0, 0.0};
    for (std::size_t i = 0; i < chi.coeffs().size(); ++i) {
        long long a = chi.coeff(i);
        if (a == 0) continue;
        auto it = local.find(table.irr_id(i));
        complexd term;
        if (it != local.end()) {
            term = override_log_for_irr(it->second, Np);
        } else if (static_cast<int>(i) == table.trivial_index()) {
            term = eigen_log_series(complexd{1.0, 0.0}, Np);
        } else {
            return std::nullopt;
        }
        acc += static_cast<double>(a) * term;
    }
    return acc;
}

inline LocalFactorValue local_factor_log_impl(const VirtualCharacter& chi, const CharContext& cc,
                                              const PrimeRecord& rec, bool allow_bracket) {
    double Np = static_cast<double>(rec.p);
    LocalFactorValue out;
    if (!rec.ramified) {
        if (rec.frob_class < 0)
            throw computation_error("unramified record without a Frobenius class");
        out.log_value = unramified_log(cc, rec.frob_class, Np);
        return out;
    }
    if (auto exact = ramified_exact_log(chi, rec, Np)) {
        out.log_value = *exact;
        return out;
    }
    if (!allow_bracket)
        throw ramified_prime_error("prime " + std::to_string(rec.p) +
                                   " is ramified with no override and bracketing is disabled");
    if (!cc.genuine)
        throw domain_error("ramified bracket needs a genuine character (nonnegative coefficients)");
    out.log_value = complexd{(cc.mu_value + cc.degree) / (2.0 * Np), 0.0};
    out.bracket_radius = (cc.degree - cc.mu_value) / (2.0 * Np) + 2.0 * cc.degree / (Np * Np);
    return out;
}

}  // namespace detail

// Local Euler factor of L(s, chi) at s = 1 for the rational prime of rec.
// ideal_index selects an entry of rec.ideals for validation/reporting; the
// factor itself is attached to the base prime.
inline LocalFactorValue local_factor_log(const VirtualCharacter& chi, const PrimeRecord& rec,
                                         std::size_t ideal_index = 0, bool allow_bracket = true) {
    if (!rec.ideals.empty() && ideal_index >= rec.ideals.size())
        throw domain_error("ideal index out of range for prime " + std::to_string(rec.p));
    detail::CharContext cc(chi);
    return detail::local_factor_log_impl(chi, cc, rec, allow_bracket);
}

// Pi_{p <= T} L_p(1, chi), deterministically parallel.
inline TruncatedProduct truncated_product(const VirtualCharacter& chi, const FieldSpec& spec,
                                          double T, const KappaOptions& opts = {}) {
    TruncatedProduct out;
    if (T < 2) return out;
    detail::CharContext cc(chi);
    const auto& primes = primes_up_to(static_cast<std::uint64_t>(T));
    std::size_t nprimes = 0;
    while (nprimes < primes.size() && static_cast<double>(primes[nprimes]) <= T) ++nprimes;

    constexpr std::size_t chunk = 1u << 16;
    std::size_t nchunks = (nprimes + chunk - 1) / chunk;
    struct Partial {
        double re = 0, im = 0, rad = 0;
    };
    std::vector<Partial> parts(nchunks);
    parallel_for_chunks(nchunks, opts.workers, [&](std::size_t ci) {
        kahan_complex_sum logs;
        kahan_sum rads;
        std::size_t lo = ci * chunk, hi = std::min(nprimes, lo + chunk);
        for (std::size_t k = lo; k < hi; ++k) {
            PrimeRecord rec = record_for_prime(spec, primes[k], T);
            LocalFactorValue lf = detail::local_factor_log_impl(chi, cc, rec, opts.allow_bracket);
            logs.add(lf.log_value);
            rads.add(lf.bracket_radius);
        }
        complexd z = logs.value();
        parts[ci] = {z.real(), z.imag(), rads.value()};
    });

    kahan_complex_sum logs;
    kahan_sum rads;
    for (const auto& pt : parts) {
        logs.add(complexd{pt.re, pt.im});
        rads.add(pt.rad);
    }
    out.log_sum = logs.value();
    out.log_radius = rads.value();
    out.value = std::exp(out.log_sum);
    out.radius = std::abs(out.value) * std::expm1(out.log_radius);
    return out;
}

namespace detail {

inline complexd ipow(complexd z, long long e) {
    if (e < 0) return complexd{1.0, 0.0} / ipow(z, -e);
    complexd r{1.0, 0.0};
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

inline double truncation_term(const KappaOptions& opts, const FieldSpec& spec, double T,
                              double abs_degree, bool& modeled) {
    modeled = true;
    switch (opts.model) {
        case KappaOptions::Truncation::heuristic:
            return opts.heuristic_c * abs_degree / std::sqrt(T);
        case KappaOptions::Truncation::delta_k: {
            if (spec.declared_D_K <= 0)
                throw config_error("delta_K truncation model needs a declared D_K in the spec");
            int nK = spec.base_degree * static_cast<int>(spec.group->order());
            return abs_degree * delta_K(T, nK, spec.declared_D_K, opts.c3, opts.c4, opts.c5);
        }
        case KappaOptions::Truncation::none:
        default:
            modeled = false;
            return 0.0;
    }
}

}  // namespace detail

// kappa(chi) ~ eta_tilde(chi,T) (e^gamma log T)^{-<chi,1>} Pi_{p<=T} L_p(1,chi).
inline KappaInterval kappa_estimate(const VirtualCharacter& chi, const FieldSpec& spec, double T,
                                    const std::optional<SiegelData>& siegel = std::nullopt,
                                    const KappaOptions& opts = {}) {
    if (T < 3) throw domain_error("kappa_estimate needs T >= 3");
    TruncatedProduct tp = truncated_product(chi, spec, T, opts);
    KappaInterval out;
    out.pole_order = inner_product_with_trivial(chi);
    out.T_used = T;

    double eta = 1.0;
    if (siegel && siegel->exceptional) {
        const auto& exc = siegel->exceptional.value();
        if (exc.beta >= 1.0 || exc.beta <= 0.0)
            throw domain_error("exceptional zero beta must lie in (0,1)");
        long long a_psi = chi.coeff(static_cast<std::size_t>(chi.table()->irr_index(exc.psi_id)));
        if (a_psi != 0)
            eta = std::exp(-static_cast<double>(a_psi) * expint_e1((1.0 - exc.beta) * std::log(T)));
    }
    out.eta_factor = eta;

    double norm = std::pow(std::exp(opts.gamma) * std::log(T),
                           -static_cast<double>(out.pole_order));
    out.center = eta * norm * tp.value;

    double abs_deg = static_cast<double>(chi.abs_degree());
    bool modeled = true;
    double rtrunc = detail::truncation_term(opts, spec, T, abs_deg, modeled);
    out.truncation_modeled = modeled;
    out.radius = std::abs(out.center) * (std::exp(tp.log_radius) * (1.0 + rtrunc) - 1.0);
    return out;
}

// Prop-style multi-truncation product: each irreducible gets its own cutoff.
// center = Pi_psi (eta(psi,T(psi)) Pi_{p<=T(psi)} L_p(1,psi))^{<chi,psi>} /
// (log T(1_G))^{<chi,1>}; the e^{gamma <chi,1>} normalization gap against
// kappa_estimate is reported as mult_slack.
inline KappaInterval kappa_multi_truncation(const VirtualCharacter& chi, const FieldSpec& spec,
                                            const std::map<std::string, double>& T_map,
                                            const std::optional<SiegelData>& siegel = std::nullopt,
                                            const KappaOptions& opts = {}) {
    const auto& table = *chi.table();
    KappaInterval out;
    out.pole_order = inner_product_with_trivial(chi);
    out.T_map = T_map;

    complexd center{1.0, 0.0};
    double log_radius = 0.0;
    double eta_total = 1.0;
    for (std::size_t i = 0; i < chi.coeffs().size(); ++i) {
        long long a = chi.coeff(i);
        if (a == 0) continue;
        const std::string& psi_id = table.irr_id(i);
        auto it = T_map.find(psi_id);
        if (it == T_map.end())
            throw config_error("no truncation supplied for irreducible '" + psi_id + "'");
        double tau = it->second;
        if (tau < std::exp(1.0) - 1e-12)
            throw domain_error("truncation for '" + psi_id + "' must be >= e");
        VirtualCharacter psi = VirtualCharacter::irreducible(chi.table(), i);
        TruncatedProduct tp = truncated_product(psi, spec, tau, opts);
        double eta = 1.0;
        if (siegel) {
            if (auto beta = siegel->beta_for(psi_id)) {
                if (*beta >= 1.0) throw domain_error("beta must be < 1");
                eta = std::exp(-expint_e1((1.0 - *beta) * std::log(tau)));
            }
        }
        center *= detail::ipow(eta * tp.value, a);
        eta_total *= std::pow(eta, static_cast<double>(a));
        log_radius += std::abs(static_cast<double>(a)) * tp.log_radius;
    }
    if (out.pole_order != 0) {
        double t_triv = T_map.at(table.irr_id(static_cast<std::size_t>(table.trivial_index())));
        center *= std::pow(std::log(t_triv), -static_cast<double>(out.pole_order));
    }
    out.center = center;
    out.eta_factor = eta_total;
    out.mult_slack = std::exp(opts.gamma * static_cast<double>(out.pole_order));
    out.radius = std::abs(center) * std::expm1(log_radius);
    out.truncation_modeled = false;
    return out;
}

// Sum of 1/N(ideal) over prime ideals of the spec's field with y < norm <= x.
inline MertensResult mertens_sum(const std::vector<PrimeRecord>& records, double y, double x) {
    if (x < y || y < 2) throw domain_error("mertens_sum needs x >= y >= 2");
    kahan_sum s;
    for (const auto& rec : records) {
        for (const auto& ideal : rec.ideals) {
            if (ideal.norm_capped) continue;
            double n = static_cast<double>(ideal.norm);
            if (n > y && n <= x) s.add(1.0 / n);
        }
    }
    MertensResult out;
    out.sum = s.value();
    out.slack = out.sum - (std::log(std::log(x)) - std::log(std::log(y)));
    out.y = y;
    out.x = x;
    return out;
}

inline MertensResult mertens_sum(const FieldSpec& spec, double y, double x) {
    if (x < y || y < 2) throw domain_error("mertens_sum needs x >= y >= 2");
    return mertens_sum(prime_ideal_stream(spec, x), y, x);
}

}  // namespace artin
