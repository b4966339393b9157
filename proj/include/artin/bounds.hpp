#pragma once

// Effective bound envelopes for |kappa(chi)|: discriminant-aspect and
// conductor-aspect shapes, their corollaries, the conditional loglog variant,
// telescoping small-prime products, Artin conductor valuations, and
// conductor-discriminant sanity checks. Implied constants are never asserted;
// each envelope is a bare shape and comparisons are reported as ratios.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "exceptional.hpp"
#include "groups.hpp"

namespace artin {

struct ExponentEntry {
    std::string name;
    double value = 0.0;
};

struct EnvelopeReport {
    std::string character_id;
    std::string envelope;  // which shape family this report evaluates
    bool applicable = true;
    double kappa_abs = 0.0;
    double upper_shape = 0.0;
    double lower_shape = 0.0;
    double ratio_hi = 0.0;  // kappa_abs / upper_shape
    double ratio_lo = 0.0;  // kappa_abs / lower_shape
    std::vector<ExponentEntry> exponents;

    void set_kappa(double k) {
        kappa_abs = k;
        ratio_hi = upper_shape > 0 ? kappa_abs / upper_shape : 0.0;
        ratio_lo = lower_shape > 0 ? kappa_abs / lower_shape : 0.0;
    }
};

struct ConductorData {
    std::map<std::string, double> q_psi;  // analytic conductor per irreducible id
    double D_K = 0.0;
    double D_k = 1.0;
    int base_degree = 1;

    double q_for(const std::string& psi_id) const {
        auto it = q_psi.find(psi_id);
        if (it == q_psi.end())
            throw config_error("missing conductor for irreducible '" + psi_id + "'");
        return it->second;
    }

    // q(chi) = prod_psi q(psi)^{<chi,psi>}
    double q_of(const VirtualCharacter& chi) const {
        const auto& tbl = *chi.table();
        double q = 1.0;
        for (std::size_t i = 0; i < tbl.num_irreducibles(); ++i) {
            long long a = chi.coeff(i);
            if (a == 0) continue;
            q *= std::pow(q_for(tbl.irr_id(i)), static_cast<double>(a));
        }
        return q;
    }

    // D_K = prod_psi q(psi)^{psi(1)}
    double predicted_D_K(const GroupTable& tbl) const {
        double d = 1.0;
        for (std::size_t i = 0; i < tbl.num_irreducibles(); ++i)
            d *= std::pow(q_for(tbl.irr_id(i)), static_cast<double>(tbl.irr_degree(i)));
        return d;
    }
};

namespace detail {

inline void require_genuine(const VirtualCharacter& chi, const char* op) {
    if (!chi.is_genuine())
        throw domain_error(std::string(op) + " needs a genuine character (no negative multiplicities)");
}

inline double log_e_Dk(double D_k) {
    if (D_k < 1.0) throw domain_error("base discriminant D_k must be at least 1");
    return std::log(std::exp(1.0) * D_k);
}

// base^e with the convention that a zero exponent never probes the base
inline double shape_pow(double base, double e, const char* what) {
    if (e == 0.0) return 1.0;
    if (base <= 0.0) throw domain_error(std::string(what) + " is nonpositive with a nonzero exponent");
    return std::pow(base, e);
}

}  // namespace detail

// epsilon(chi) = min{ (log q(psi) / (D_k q(psi))^{1/(2 n_k)})^{<chi,psi>} : psi exceptional } cup {1}
inline double epsilon_chi(const VirtualCharacter& chi, const std::vector<SiegelRecord>& members,
                          double D_k, int n_k) {
    if (n_k < 1) throw domain_error("epsilon_chi needs base degree n_k >= 1");
    const auto& tbl = *chi.table();
    double eps = 1.0;
    for (const auto& rec : members) {
        if (!rec.beta) continue;
        if (rec.q < 3) throw domain_error("exceptional member '" + rec.psi_id + "' has conductor < 3");
        long long a = chi.coeff(static_cast<std::size_t>(tbl.irr_index(rec.psi_id)));
        if (a == 0) continue;
        double base = std::log(rec.q) / std::pow(D_k * rec.q, 1.0 / (2.0 * n_k));
        eps = std::min(eps, std::pow(base, static_cast<double>(a)));
    }
    return eps;
}

// Discriminant-aspect envelope:
//   upper (log D_K)^{tilde_chi(1) - <chi,1>}
//   lower (log D_K / D_K^{1/[K:Q]})^{nu} (log D_K)^{mu(tilde_chi) - <chi,1>}
inline EnvelopeReport disc_envelope(const VirtualCharacter& chi, const InductionData& ind,
                                    double D_K, long long nu) {
    detail::require_genuine(chi, "disc_envelope");
    if (D_K < 3.0) throw domain_error("disc_envelope needs D_K >= 3");
    if (nu < 0) throw domain_error("disc_envelope needs nu >= 0");
    EnvelopeReport r;
    r.character_id = chi.label();
    r.envelope = "disc";
    double a_triv = static_cast<double>(inner_product_with_trivial(chi));
    if (ind.mu_tilde >= ind.tilde_degree - 1e-12) {
        // induced character is a multiple of the trivial one; kappa is 1
        r.upper_shape = r.lower_shape = 1.0;
        r.exponents.push_back({"trivial multiple", 0.0});
        return r;
    }
    double logD = std::log(D_K);
    double up_exp = ind.tilde_degree - a_triv;
    double lo_exp = ind.mu_tilde - a_triv;
    long long nK = static_cast<long long>(ind.base_degree) * static_cast<long long>(chi.table()->order());
    r.upper_shape = detail::shape_pow(logD, up_exp, "log D_K");
    r.lower_shape = detail::shape_pow(logD / std::pow(D_K, 1.0 / nK), static_cast<double>(nu),
                                      "log D_K / D_K^{1/[K:Q]}") *
                    detail::shape_pow(logD, lo_exp, "log D_K");
    r.exponents.push_back({"log D_K upper", up_exp});
    r.exponents.push_back({"repelled factor", static_cast<double>(nu)});
    r.exponents.push_back({"log D_K lower", lo_exp});
    r.set_kappa(0.0);
    return r;
}

// Conductor-aspect envelope:
//   upper (log eD_k)^{tilde_chi(1) - chi(1)} (log q)^{chi(1) - <chi,1>}
//   lower eps (log eD_k)^{mu(tilde) - mu(chi)} (log q)^{mu(chi) - <chi,1>}
inline EnvelopeReport cond_envelope(const VirtualCharacter& chi, const InductionData& ind,
                                    double D_k, double q_chi, double epsilon) {
    detail::require_genuine(chi, "cond_envelope");
    if (q_chi < 3.0) throw domain_error("cond_envelope needs q(chi) >= 3");
    if (epsilon <= 0.0) throw domain_error("cond_envelope needs epsilon > 0");
    EnvelopeReport r;
    r.character_id = chi.label();
    r.envelope = "cond";
    double a_triv = static_cast<double>(inner_product_with_trivial(chi));
    double deg = chi.degree();
    double muv = mu(chi).value;
    double led = detail::log_e_Dk(D_k);
    double lq = std::log(q_chi);
    double up_base = ind.tilde_degree - deg;
    double up_cond = deg - a_triv;
    double lo_base = ind.mu_tilde - muv;
    double lo_cond = muv - a_triv;
    r.upper_shape = detail::shape_pow(led, up_base, "log eD_k") *
                    detail::shape_pow(lq, up_cond, "log q(chi)");
    r.lower_shape = epsilon * detail::shape_pow(led, lo_base, "log eD_k") *
                    detail::shape_pow(lq, lo_cond, "log q(chi)");
    r.exponents.push_back({"log eD_k upper", up_base});
    r.exponents.push_back({"log q upper", up_cond});
    r.exponents.push_back({"log eD_k lower", lo_base});
    r.exponents.push_back({"log q lower", lo_cond});
    return r;
}

struct CorollaryShapes {
    EnvelopeReport nonexceptional;  // characters without trivial or quadratic components
    EnvelopeReport irreducibles;    // product over nontrivial irreducible components
    EnvelopeReport decomposed;      // componentwise conductor-aspect bound
};

// The two corollary envelopes plus the componentwise decomposition used for
// base-field and decomposition comparisons.
inline CorollaryShapes corollary_envelopes(const VirtualCharacter& chi, const ConductorData& data,
                                           const InductionData& ind, double epsilon) {
    detail::require_genuine(chi, "corollary_envelopes");
    if (epsilon <= 0.0) throw domain_error("corollary_envelopes needs epsilon > 0");
    const auto& tbl = *chi.table();
    int n_k = data.base_degree;
    if (n_k < 1) throw domain_error("corollary_envelopes needs base degree >= 1");
    double led = detail::log_e_Dk(data.D_k);
    double a_triv = static_cast<double>(inner_product_with_trivial(chi));
    double deg = chi.degree();
    double muv = mu(chi).value;

    CorollaryShapes out;

    // no trivial or quadratic components: q-aspect shape without the
    // exceptional correction
    {
        EnvelopeReport r;
        r.character_id = chi.label();
        r.envelope = "nonexceptional";
        bool clean = inner_product_with_trivial(chi) == 0;
        for (std::size_t i = 0; clean && i < tbl.num_irreducibles(); ++i) {
            if (chi.coeff(i) == 0) continue;
            VirtualCharacter psi = VirtualCharacter::irreducible(chi.table(), i);
            try {
                if (is_potentially_quadratic(psi)) clean = false;
            } catch (const non_irreducible_error&) {
            }
        }
        r.applicable = clean;
        double q_chi = data.q_of(chi);
        if (q_chi < 3.0) q_chi = 3.0;
        double lq = std::log(q_chi);
        r.upper_shape = detail::shape_pow(led, ind.tilde_degree - deg, "log eD_k") *
                        detail::shape_pow(lq, deg, "log q(chi)");
        r.lower_shape = detail::shape_pow(led, ind.mu_tilde - muv, "log eD_k") *
                        detail::shape_pow(lq, muv, "log q(chi)");
        r.exponents.push_back({"log eD_k upper", ind.tilde_degree - deg});
        r.exponents.push_back({"log q upper", deg});
        r.exponents.push_back({"log eD_k lower", ind.mu_tilde - muv});
        r.exponents.push_back({"log q lower", muv});
        out.nonexceptional = std::move(r);
    }

    // product form over nontrivial components with flat base-field exponents
    {
        EnvelopeReport r;
        r.character_id = chi.label();
        r.envelope = "irreducibles";
        double up = detail::shape_pow(led, (n_k - 1) * deg, "log eD_k");
        double lo = epsilon *
                    detail::shape_pow(led, -(n_k - 1) * deg + (n_k - 2) * a_triv, "log eD_k");
        r.exponents.push_back({"log eD_k upper", (n_k - 1) * deg});
        r.exponents.push_back({"log eD_k lower", -(n_k - 1) * deg + (n_k - 2) * a_triv});
        for (std::size_t i = 0; i < tbl.num_irreducibles(); ++i) {
            if (static_cast<int>(i) == tbl.trivial_index()) continue;
            long long a = chi.coeff(i);
            if (a == 0) continue;
            double lqp = std::log(data.q_for(tbl.irr_id(i)));
            double e = static_cast<double>(tbl.irr_degree(i) * a);
            up *= detail::shape_pow(lqp, e, "log q(psi)");
            lo *= detail::shape_pow(lqp, -e, "log q(psi)");
            r.exponents.push_back({"log q(" + tbl.irr_id(i) + ") upper", e});
            r.exponents.push_back({"log q(" + tbl.irr_id(i) + ") lower", -e});
        }
        r.upper_shape = up;
        r.lower_shape = lo;
        out.irreducibles = std::move(r);
    }

    // componentwise shape: apply the conductor-aspect envelope to each
    // irreducible component and multiply
    {
        EnvelopeReport r;
        r.character_id = chi.label();
        r.envelope = "decomposed";
        double up = detail::shape_pow(led, (n_k - 1) * a_triv, "log eD_k");
        double lo = epsilon * detail::shape_pow(led, -a_triv, "log eD_k");
        r.exponents.push_back({"log eD_k trivial-part upper", (n_k - 1) * a_triv});
        r.exponents.push_back({"log eD_k trivial-part lower", -a_triv});
        for (std::size_t i = 0; i < tbl.num_irreducibles(); ++i) {
            if (static_cast<int>(i) == tbl.trivial_index()) continue;
            long long a = chi.coeff(i);
            if (a == 0) continue;
            VirtualCharacter psi = VirtualCharacter::irreducible(chi.table(), i);
            double pd = static_cast<double>(tbl.irr_degree(i));
            double pmu = mu(psi).value;
            double pmu_t = std::max(n_k * pmu, -n_k * pd);
            double lqp = std::log(data.q_for(tbl.irr_id(i)));
            double da = static_cast<double>(a);
            up *= detail::shape_pow(led, (n_k - 1) * pd * da, "log eD_k") *
                  detail::shape_pow(lqp, pd * da, "log q(psi)");
            lo *= detail::shape_pow(led, (pmu_t - pmu) * da, "log eD_k") *
                  detail::shape_pow(lqp, pmu * da, "log q(psi)");
            r.exponents.push_back({"log q(" + tbl.irr_id(i) + ") upper", pd * da});
            r.exponents.push_back({"log q(" + tbl.irr_id(i) + ") lower", pmu * da});
        }
        r.upper_shape = up;
        r.lower_shape = lo;
        out.decomposed = std::move(r);
    }
    return out;
}

// Conditional loglog-aspect envelope (formula evaluation only).
inline EnvelopeReport grh_envelope(const VirtualCharacter& chi, const InductionData& ind,
                                   double D_k, double q_chi) {
    detail::require_genuine(chi, "grh_envelope");
    if (q_chi <= std::exp(1.0)) throw domain_error("grh_envelope needs q(chi) > e");
    EnvelopeReport r;
    r.character_id = chi.label();
    r.envelope = "grh";
    double a_triv = static_cast<double>(inner_product_with_trivial(chi));
    double deg = chi.degree();
    double muv = mu(chi).value;
    double lld = std::log(detail::log_e_Dk(D_k));
    double llq = std::log(std::log(q_chi));
    r.upper_shape = detail::shape_pow(lld, ind.tilde_degree - deg, "log log eD_k") *
                    detail::shape_pow(llq, deg - a_triv, "log log q(chi)");
    r.lower_shape = detail::shape_pow(lld, ind.mu_tilde - muv, "log log eD_k") *
                    detail::shape_pow(llq, muv - a_triv, "log log q(chi)");
    r.exponents.push_back({"loglog eD_k upper", ind.tilde_degree - deg});
    r.exponents.push_back({"loglog q upper", deg - a_triv});
    r.exponents.push_back({"loglog eD_k lower", ind.mu_tilde - muv});
    r.exponents.push_back({"loglog q lower", muv - a_triv});
    return r;
}

struct SmallPrimesLedger {
    std::vector<std::string> order;        // psi ids, trivial last
    std::vector<double> truncations;       // T_1 >= ... >= T_N
    std::vector<double> degree_steps;      // chi_n(1) - chi_{n-1}(1)
    std::vector<double> mu_steps;          // mu(chi_n) - mu(chi_{n-1})
    double upper_shape = 0.0;
    double lower_shape = 0.0;
    double tilde_upper_exponent = 0.0;     // on log T_N
    double tilde_lower_exponent = 0.0;
};

// Telescoped exponent ledger for the layered product over primes up to T_n.
inline SmallPrimesLedger small_primes_envelope(const VirtualCharacter& chi,
                                               const InductionData& ind,
                                               const std::vector<std::pair<std::string, double>>& truncs) {
    detail::require_genuine(chi, "small_primes_envelope");
    if (truncs.empty()) throw domain_error("small_primes_envelope needs a nonempty truncation list");
    const auto& tbl = *chi.table();
    const double e_const = std::exp(1.0);
    for (std::size_t n = 0; n < truncs.size(); ++n) {
        if (truncs[n].second < e_const)
            throw domain_error("truncation for '" + truncs[n].first + "' must be at least e");
        if (n > 0 && truncs[n].second > truncs[n - 1].second + 1e-12)
            throw domain_error("truncations must be nonincreasing");
    }
    if (tbl.irr_index(truncs.back().first) != tbl.trivial_index())
        throw domain_error("the trivial character must come last in the truncation order");

    SmallPrimesLedger led;
    VirtualCharacter partial(chi.table(), std::vector<long long>(tbl.num_irreducibles(), 0));
    double prev_deg = 0.0, prev_mu = 0.0;
    double up = 1.0, lo = 1.0;
    for (const auto& [psi_id, T] : truncs) {
        auto idx = static_cast<std::size_t>(tbl.irr_index(psi_id));
        long long a = chi.coeff(idx);
        partial = partial + a * VirtualCharacter::irreducible(chi.table(), idx);
        double d = partial.degree();
        double m = partial.is_zero() ? 0.0 : mu(partial).value;
        double dstep = d - prev_deg;
        double mstep = m - prev_mu;
        led.order.push_back(psi_id);
        led.truncations.push_back(T);
        led.degree_steps.push_back(dstep);
        led.mu_steps.push_back(mstep);
        up *= detail::shape_pow(std::log(T), dstep, "log T_n");
        lo *= detail::shape_pow(std::log(T), mstep, "log T_n");
        prev_deg = d;
        prev_mu = m;
    }
    double logTN = std::log(truncs.back().second);
    led.tilde_upper_exponent = ind.tilde_degree - chi.degree();
    led.tilde_lower_exponent = ind.mu_tilde - mu(chi).value;
    led.upper_shape = detail::shape_pow(logTN, led.tilde_upper_exponent, "log T_N") * up;
    led.lower_shape = detail::shape_pow(logTN, led.tilde_lower_exponent, "log T_N") * lo;
    return led;
}

struct RamificationLayer {
    long long size = 0;  // |G_i|
    std::vector<std::pair<std::string, long long>> class_counts;
};

// v(f_chi) = sum_i (|G_i|/|G_0|) (chi(1) - (1/|G_i|) sum_{g in G_i} chi(g)),
// computed exactly; the result must be a nonnegative integer.
inline long long artin_conductor_valuation(const VirtualCharacter& chi,
                                           const std::vector<RamificationLayer>& layers) {
    if (layers.empty()) throw domain_error("artin_conductor_valuation needs a nonempty filtration");
    const auto& tbl = *chi.table();
    long long g0 = layers.front().size;
    if (g0 <= 0) throw domain_error("|G_0| must be positive");
    int N = tbl.cyclotomic_order();
    Cyclotomic total(N);
    Cyclotomic deg = chi.value_at(0);
    for (const auto& layer : layers) {
        if (layer.size <= 0) throw domain_error("ramification group sizes must be positive");
        long long nmembers = 0;
        Cyclotomic sum(N);
        for (const auto& [cls, count] : layer.class_counts) {
            if (count < 0) throw domain_error("class counts must be nonnegative");
            sum += chi.value_at(static_cast<std::size_t>(tbl.class_index(cls))) * Rat(count);
            nmembers += count;
        }
        if (nmembers != layer.size)
            throw domain_error("class counts must sum to the ramification group size");
        Cyclotomic inner = deg - sum * Rat(Int(1), Int(layer.size));
        total += inner * Rat(Int(layer.size), Int(g0));
    }
    if (!total.is_rational())
        throw computation_error("conductor valuation is irrational: inconsistent filtration");
    Rat v = total.rational_value();
    if (!rat_is_integer(v) || v < 0)
        throw computation_error("conductor valuation is not a nonnegative integer");
    return boost::multiprecision::numerator(v).convert_to<long long>();
}

struct ConductorCheckReport {
    double q_chi = 0.0;
    double upper_rhs = 0.0;  // D_K^{2 chi(1)/|G|}
    double lower_rhs = 0.0;  // D_K^{1/|G|}
    bool upper_holds = false;
    bool faithful = false;
    bool lower_asserted = false;
    bool lower_holds = false;
    double disc_residual_log = 0.0;  // log D_K - sum psi(1) log q(psi)
};

// q(chi) <= D_K^{2 chi(1)/|G|}; if chi is faithful, q(chi) >= D_K^{1/|G|}.
inline ConductorCheckReport conductor_bounds_check(const ConductorData& data,
                                                   const VirtualCharacter& chi) {
    detail::require_genuine(chi, "conductor_bounds_check");
    if (data.D_K <= 0) throw domain_error("conductor_bounds_check needs D_K > 0");
    const auto& tbl = *chi.table();
    ConductorCheckReport r;
    r.q_chi = data.q_of(chi);
    double order = static_cast<double>(tbl.order());
    r.upper_rhs = std::pow(data.D_K, 2.0 * chi.degree() / order);
    r.lower_rhs = std::pow(data.D_K, 1.0 / order);
    r.upper_holds = r.q_chi <= r.upper_rhs * (1.0 + 1e-9);

    // faithful: no nonidentity class takes the full degree value
    Cyclotomic deg = chi.value_at(0);
    r.faithful = !chi.is_zero();
    for (std::size_t c = 1; c < tbl.classes().size(); ++c) {
        Cyclotomic diff = chi.value_at(c) - deg;
        if (diff.is_zero()) {
            r.faithful = false;
            break;
        }
    }
    r.lower_asserted = r.faithful;
    r.lower_holds = !r.faithful || r.q_chi >= r.lower_rhs * (1.0 - 1e-9);
    r.disc_residual_log = std::log(data.D_K) - std::log(data.predicted_D_K(tbl));
    return r;
}

}  // namespace artin
