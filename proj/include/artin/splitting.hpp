#pragma once

// Splitting data for rational primes in a number field F = Q[x]/(f).
//
// For p not dividing disc(f) the factorization degree pattern of f mod p is
// the cycle type of the Frobenius class; the FieldSpec's pattern map turns it
// into a class of the declared Galois group. Primes dividing disc(f) are
// surfaced as ramified; exact local data comes from user overrides, otherwise
// downstream consumers fall back to bracketing.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "groups.hpp"
#include "polynomial.hpp"
#include "primes.hpp"

namespace artin {

struct IdealEntry {
    std::uint64_t norm = 0;   // p^d; saturated at UINT64_MAX when d log p overflows
    int residue_degree = 1;
    bool ramified = false;
    bool in_range = true;     // norm <= T at stream time
    bool norm_capped = false;
};

// Exact local-factor data for one irreducible at one ramified prime: either
// the Frobenius eigenvalue list on the inertia invariants, or a single trace
// value (enough whenever dim V^I <= 1).
struct LocalOverrideEntry {
    bool use_alphas = false;
    std::vector<complexd> alphas;
    complexd chi_value{0.0, 0.0};
};

struct RamifiedOverride {
    std::vector<std::pair<std::uint64_t, bool>> ideals;  // (norm, ramified) above p in F
    std::map<std::string, LocalOverrideEntry> local;     // irreducible id -> data
};

struct PrimeRecord {
    std::uint64_t p = 0;
    bool ramified = false;
    bool has_override = false;
    int frob_class = -1;  // class index; -1 for ramified primes without a class
    std::vector<IdealEntry> ideals;
    std::optional<RamifiedOverride> override_data;
};

inline std::uint64_t pow_norm(std::uint64_t p, int d, bool& capped) {
    std::uint64_t n = 1;
    capped = false;
    for (int i = 0; i < d; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / p) {
            capped = true;
            return std::numeric_limits<std::uint64_t>::max();
        }
        n *= p;
    }
    return n;
}

inline std::string pattern_key(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end());
    std::ostringstream os;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i) os << ",";
        os << degrees[i];
    }
    return os.str();
}

// Factor degree multiset of f mod p. Signals ramified when f mod p is not
// squarefree (equivalently p | disc f for monic f).
inline std::vector<int> degree_pattern(const IntPoly& f, std::uint64_t p) {
    auto sd = modp::splitting_degrees(f, p);
    if (!sd.squarefree)
        throw ramified_prime_error("p = " + std::to_string(p) + " is ramified for " + f.str());
    return sd.degrees;
}

class FieldSpec {
public:
    std::string id = "field";
    IntPoly poly;
    GroupTablePtr group;
    int base_degree = 1;
    double D_k = 1.0;
    Int disc;
    std::map<std::string, int> class_of_pattern;          // canonical key -> class index
    std::map<std::uint64_t, RamifiedOverride> overrides;
    double declared_D_K = 0.0;                            // 0 = not declared
    std::map<std::string, double> psi_conductors;         // irreducible id -> q(psi)
    bool irreducible_declared = false;

    void validate() {
        if (!group) throw config_error("field spec '" + id + "' has no group table");
        if (poly.degree() < 1) throw config_error("field spec '" + id + "' needs degree >= 1");
        if (!poly.is_monic()) throw config_error("field polynomial must be monic");
        if (base_degree < 1) throw config_error("base degree must be >= 1");
        disc = discriminant(poly);
        disc_fits_ll_ = disc >= Int(std::numeric_limits<long long>::min()) &&
                        disc <= Int(std::numeric_limits<long long>::max());
        if (disc_fits_ll_) disc_ll_ = disc.convert_to<long long>();
        if (poly.degree() >= 2 && has_rational_root(poly))
            throw config_error("field polynomial " + poly.str() + " has a rational root");
        if (poly.degree() > 3 && !irreducible_declared && !certify_irreducible())
            throw config_error("cannot certify irreducibility of " + poly.str() +
                               "; declare it explicitly");
        for (const auto& [key, cls] : class_of_pattern)
            if (cls < 0 || static_cast<std::size_t>(cls) >= group->num_classes())
                throw config_error("pattern '" + key + "' maps to an invalid class index");
    }

    bool disc_divisible_by(std::uint64_t p) const {
        if (disc_fits_ll_) return disc_ll_ % static_cast<long long>(p) == 0;
        return disc % Int(static_cast<long long>(p)) == 0;
    }

    int class_for_pattern(const std::vector<int>& degrees) const {
        auto it = class_of_pattern.find(pattern_key(degrees));
        if (it == class_of_pattern.end())
            throw missing_pattern_error("no class assigned to degree pattern {" +
                                        pattern_key(degrees) + "} in spec '" + id + "'");
        return it->second;
    }

    static FieldSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    long long disc_ll_ = 0;
    bool disc_fits_ll_ = false;

    // An irreducible factorization mod some small unramified p certifies
    // irreducibility over Q.
    bool certify_irreducible() const {
        int n = poly.degree();
        for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                                29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
            if (disc_divisible_by(p)) continue;
            auto sd = modp::splitting_degrees(poly, p);
            if (sd.degrees.size() == 1 && sd.degrees[0] == n) return true;
        }
        return false;
    }
};

inline int frobenius_class(const FieldSpec& spec, std::uint64_t p) {
    return spec.class_for_pattern(degree_pattern(spec.poly, p));
}

inline PrimeRecord record_for_prime(const FieldSpec& spec, std::uint64_t p, double T) {
    PrimeRecord rec;
    rec.p = p;
    bool divides_disc = spec.disc_divisible_by(p);
    auto push_ideal = [&](int d, bool ram) {
        IdealEntry e;
        e.residue_degree = d;
        e.norm = pow_norm(p, d, e.norm_capped);
        e.ramified = ram;
        e.in_range = !e.norm_capped && static_cast<double>(e.norm) <= T;
        rec.ideals.push_back(e);
    };
    if (!divides_disc) {
        auto sd = modp::splitting_degrees(spec.poly, p);
        if (!sd.squarefree)
            throw computation_error("prime " + std::to_string(p) +
                                    " not dividing the discriminant gave a non-squarefree pattern");
        rec.frob_class = spec.class_for_pattern(sd.degrees);
        for (int d : sd.degrees) push_ideal(d, false);
        return rec;
    }
    rec.ramified = true;
    auto it = spec.overrides.find(p);
    if (it != spec.overrides.end()) {
        rec.has_override = true;
        rec.override_data = it->second;
        if (!it->second.ideals.empty()) {
            for (const auto& [norm, ram] : it->second.ideals) {
                IdealEntry e;
                e.norm = norm;
                e.ramified = ram;
                int d = 0;
                for (std::uint64_t v = norm; v > 1 && v % p == 0; v /= p) ++d;
                e.residue_degree = std::max(d, 1);
                e.in_range = static_cast<double>(norm) <= T;
                rec.ideals.push_back(e);
            }
            return rec;
        }
    }
    // No ideal list supplied: read the shape from the factorization of f mod
    // p (correct whenever p does not divide the index of Z[x]/(f) in O_F).
    for (const auto& [d, mult] : modp::factor_shapes(spec.poly, p)) push_ideal(d, mult > 1);
    return rec;
}

// One record per rational prime p <= T, ascending. Deterministic regardless
// of how callers later parallelize over the result.
inline std::vector<PrimeRecord> prime_ideal_stream(const FieldSpec& spec, double T) {
    std::vector<PrimeRecord> out;
    if (T < 2) return out;
    const auto& ps = primes_up_to(static_cast<std::uint64_t>(T));
    out.reserve(ps.size());
    for (std::uint64_t p : ps) {
        if (static_cast<double>(p) > T) break;
        out.push_back(record_for_prime(spec, p, T));
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline complexd json_to_complexd(const nlohmann::json& j) {
    if (j.is_number()) return complexd(j.get<double>(), 0.0);
    if (j.is_string()) return complexd(rat_to_double(parse_rat_string(j.get<std::string>())), 0.0);
    if (j.is_array() && j.size() == 2) {
        auto part = [](const nlohmann::json& v) {
            if (v.is_number()) return v.get<double>();
            if (v.is_string()) return rat_to_double(parse_rat_string(v.get<std::string>()));
            throw config_error("complex parts must be numbers or rational strings");
        };
        return complexd(part(j.at(0)), part(j.at(1)));
    }
    throw config_error("expected a number, \"p/q\" string, or [re, im] pair");
}

inline nlohmann::json complexd_to_json(const complexd& z) {
    if (z.imag() == 0.0) return z.real();
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace detail

inline FieldSpec FieldSpec::from_json(const nlohmann::json& j) {
    FieldSpec spec;
    try {
        spec.id = j.value("id", std::string("field"));
        spec.poly = IntPoly::from_json(j.at("poly"));
        const auto& g = j.at("group");
        spec.group = g.is_string() ? builtin_group(g.get<std::string>()) : GroupTable::from_json(g);
        spec.base_degree = j.value("base_degree", 1);
        spec.D_k = j.value("D_k", 1.0);
        spec.irreducible_declared = j.value("irreducible", false);
        spec.declared_D_K = j.value("D_K", 0.0);
        if (j.contains("psi_conductors"))
            for (auto it = j["psi_conductors"].begin(); it != j["psi_conductors"].end(); ++it)
                spec.psi_conductors[it.key()] = it.value().get<double>();
        if (j.contains("class_of_pattern")) {
            for (auto it = j["class_of_pattern"].begin(); it != j["class_of_pattern"].end(); ++it) {
                std::vector<int> degrees;
                std::istringstream is(it.key());
                std::string tok;
                while (std::getline(is, tok, ',')) degrees.push_back(std::stoi(tok));
                spec.class_of_pattern[pattern_key(degrees)] =
                    spec.group->class_index(it.value().get<std::string>());
            }
        }
        if (j.contains("ramified_overrides")) {
            for (auto it = j["ramified_overrides"].begin(); it != j["ramified_overrides"].end();
                 ++it) {
                std::uint64_t p = std::stoull(it.key());
                RamifiedOverride ov;
                const auto& body = it.value();
                if (body.contains("ideals")) {
                    for (const auto& ie : body["ideals"]) {
                        ov.ideals.emplace_back(ie.at("norm").get<std::uint64_t>(),
                                               ie.value("ramified", false));
                        // spec-style inline chi_values attach trace data
                        if (ie.contains("chi_values")) {
                            for (auto cv = ie["chi_values"].begin(); cv != ie["chi_values"].end();
                                 ++cv) {
                                LocalOverrideEntry e;
                                e.use_alphas = false;
                                e.chi_value = detail::json_to_complexd(cv.value());
                                ov.local[cv.key()] = e;
                            }
                        }
                    }
                }
                if (body.contains("local")) {
                    for (auto lv = body["local"].begin(); lv != body["local"].end(); ++lv) {
                        LocalOverrideEntry e;
                        const auto& payload = lv.value();
                        if (payload.is_object() && payload.contains("alphas")) {
                            e.use_alphas = true;
                            for (const auto& a : payload["alphas"])
                                e.alphas.push_back(detail::json_to_complexd(a));
                        } else if (payload.is_object() && payload.contains("chi_value")) {
                            e.chi_value = detail::json_to_complexd(payload["chi_value"]);
                        } else {
                            e.chi_value = detail::json_to_complexd(payload);
                        }
                        ov.local[lv.key()] = e;
                    }
                }
                spec.overrides[p] = std::move(ov);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("field spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

inline nlohmann::json FieldSpec::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["poly"] = poly.to_json();
    j["group"] = group->name();
    j["base_degree"] = base_degree;
    j["D_k"] = D_k;
    if (declared_D_K > 0) j["D_K"] = declared_D_K;
    if (irreducible_declared) j["irreducible"] = true;
    if (!psi_conductors.empty()) {
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [k, v] : psi_conductors) c[k] = v;
        j["psi_conductors"] = c;
    }
    nlohmann::json cop = nlohmann::json::object();
    for (const auto& [key, cls] : class_of_pattern)
        cop[key] = group->cls(static_cast<std::size_t>(cls)).id;
    j["class_of_pattern"] = cop;
    if (!overrides.empty()) {
        nlohmann::json ovs = nlohmann::json::object();
        for (const auto& [p, ov] : overrides) {
            nlohmann::json body = nlohmann::json::object();
            if (!ov.ideals.empty()) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& [norm, ram] : ov.ideals)
                    arr.push_back({{"norm", norm}, {"ramified", ram}});
                body["ideals"] = arr;
            }
            if (!ov.local.empty()) {
                nlohmann::json loc = nlohmann::json::object();
                for (const auto& [irr, e] : ov.local) {
                    if (e.use_alphas) {
                        nlohmann::json as = nlohmann::json::array();
                        for (const auto& a : e.alphas) as.push_back(detail::complexd_to_json(a));
                        loc[irr] = {{"alphas", as}};
                    } else {
                        loc[irr] = {{"chi_value", detail::complexd_to_json(e.chi_value)}};
                    }
                }
                body["local"] = loc;
            }
            ovs[std::to_string(p)] = body;
        }
        j["ramified_overrides"] = ovs;
    }
    return j;
}

}  // namespace artin
