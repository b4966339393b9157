#pragma once

// Ready-made field specs: the rational field, quadratic fields for
// fundamental discriminants, benchmark non-Galois cubics with exact ramified
// local data, and a generator for squarefree-discriminant S3 cubics. Also the
// base-field comparison shapes for cubic fields viewed over Q versus over
// their resolvent quadratic.

#include <cmath>
#include <string>
#include <vector>

#include "exceptional.hpp"
#include "groups.hpp"
#include "splitting.hpp"

namespace artin {

// All fundamental discriminants with |d| <= bound, by increasing |d|.
inline std::vector<long long> fundamental_discriminants(long long bound) {
    std::vector<long long> out;
    for (long long a = 2; a <= bound; ++a) {
        if (is_fundamental_discriminant(-a)) out.push_back(-a);
        if (is_fundamental_discriminant(a)) out.push_back(a);
    }
    return out;
}

inline FieldSpec rational_field_spec() {
    FieldSpec spec;
    spec.id = "Q";
    spec.poly = IntPoly({Int(0), Int(1)});
    spec.group = cyclic_group(1);
    spec.class_of_pattern["1"] = 0;
    spec.declared_D_K = 1.0;
    spec.psi_conductors["triv"] = 1.0;
    spec.validate();
    return spec;
}

// Q(sqrt(d)) for a fundamental discriminant d, with exact local data at the
// ramified primes: the trivial character keeps eigenvalue 1, the quadratic
// character loses its inertia invariants entirely.
inline FieldSpec quadratic_field_spec(long long d) {
    if (!is_fundamental_discriminant(d))
        throw config_error("d = " + std::to_string(d) + " is not a fundamental discriminant");
    FieldSpec spec;
    spec.id = "quad(" + std::to_string(d) + ")";
    long long m4 = ((d % 4) + 4) % 4;
    if (m4 == 1)
        spec.poly = IntPoly({Int(-(d - 1) / 4), Int(-1), Int(1)});
    else
        spec.poly = IntPoly({Int(-d / 4), Int(0), Int(1)});
    spec.group = cyclic_group(2);
    spec.class_of_pattern["1,1"] = 0;
    spec.class_of_pattern["2"] = 1;
    long long q = d < 0 ? -d : d;
    spec.declared_D_K = static_cast<double>(q);
    spec.psi_conductors["triv"] = 1.0;
    spec.psi_conductors["sgn"] = static_cast<double>(q);
    long long rest = q;
    for (long long p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        RamifiedOverride ov;
        ov.ideals.emplace_back(static_cast<std::uint64_t>(p), true);
        ov.local["triv"] = LocalOverrideEntry{true, {complexd(1.0, 0.0)}, {}};
        ov.local["sgn"] = LocalOverrideEntry{true, {}, {}};
        spec.overrides[static_cast<std::uint64_t>(p)] = std::move(ov);
    }
    if (rest > 1) {
        RamifiedOverride ov;
        ov.ideals.emplace_back(static_cast<std::uint64_t>(rest), true);
        ov.local["triv"] = LocalOverrideEntry{true, {complexd(1.0, 0.0)}, {}};
        ov.local["sgn"] = LocalOverrideEntry{true, {}, {}};
        spec.overrides[static_cast<std::uint64_t>(rest)] = std::move(ov);
    }
    spec.validate();
    return spec;
}

inline FieldSpec gaussian_field_spec() { return quadratic_field_spec(-4); }
inline FieldSpec sqrt5_field_spec() { return quadratic_field_spec(5); }

namespace detail {

// Tame e=2 ramification in a cubic with squarefree discriminant: the prime
// splits as a square times a distinct ideal, both of norm p; the quadratic
// character ramifies fully and the standard character keeps one eigenvalue.
inline RamifiedOverride tame_cubic_override(std::uint64_t p) {
    RamifiedOverride ov;
    ov.ideals.emplace_back(p, true);
    ov.ideals.emplace_back(p, false);
    ov.local["triv"] = LocalOverrideEntry{true, {complexd(1.0, 0.0)}, {}};
    ov.local["sgn"] = LocalOverrideEntry{true, {}, {}};
    ov.local["std"] = LocalOverrideEntry{true, {complexd(1.0, 0.0)}, {}};
    return ov;
}

inline void set_s3_patterns(FieldSpec& spec) {
    spec.class_of_pattern["1,1,1"] = 0;  // 1a
    spec.class_of_pattern["1,2"] = 1;    // 2a
    spec.class_of_pattern["3"] = 2;      // 3a
}

}  // namespace detail

// x^3 + a x + b with squarefree discriminant -4a^3 - 27b^2, Galois closure S3.
inline FieldSpec s3_cubic_spec(long long a, long long b) {
    long long disc = -4 * a * a * a - 27 * b * b;
    FieldSpec spec;
    auto term = [](long long c, const std::string& var) -> std::string {
        if (c == 0) return "";
        std::string mag = (c == 1 || c == -1) && !var.empty() ? "" : std::to_string(std::llabs(c));
        return (c > 0 ? "+" : "-") + mag + var;
    };
    spec.id = "cubic(x^3" + term(a, "x") + term(b, "") + ")";
    spec.poly = IntPoly({Int(b), Int(a), Int(0), Int(1)});
    spec.group = s3_group();
    detail::set_s3_patterns(spec);
    if (!is_squarefree_ll(disc))
        throw config_error("cubic discriminant " + std::to_string(disc) + " is not squarefree");
    long long q = disc < 0 ? -disc : disc;
    spec.psi_conductors["triv"] = 1.0;
    spec.psi_conductors["sgn"] = static_cast<double>(q);
    spec.psi_conductors["std"] = static_cast<double>(q);
    spec.declared_D_K = static_cast<double>(q) * static_cast<double>(q) * static_cast<double>(q);
    long long rest = q;
    for (long long p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        rest /= p;
        spec.overrides[static_cast<std::uint64_t>(p)] = detail::tame_cubic_override(static_cast<std::uint64_t>(p));
    }
    if (rest > 1)
        spec.overrides[static_cast<std::uint64_t>(rest)] =
            detail::tame_cubic_override(static_cast<std::uint64_t>(rest));
    spec.validate();
    return spec;
}

// The three benchmark cubics with known residues.
inline FieldSpec cubic_x3_minus_x_minus_1_spec() { return s3_cubic_spec(-1, -1); }  // disc -23
inline FieldSpec cubic_x3_plus_x_minus_1_spec() { return s3_cubic_spec(1, -1); }    // disc -31

// x^3 - 2: discriminant -108 = (-3) * 6^2, ramified at 2 (tame, e=3) and at
// 3 (wild). Local data derived from the factorization of 2 and 3 in Q(2^{1/3})
// and in Q(sqrt(-3)).
inline FieldSpec cubic_x3_minus_2_spec() {
    FieldSpec spec;
    spec.id = "cubic(x^3-2)";
    spec.poly = IntPoly({Int(-2), Int(0), Int(0), Int(1)});
    spec.group = s3_group();
    detail::set_s3_patterns(spec);
    spec.psi_conductors["triv"] = 1.0;
    spec.psi_conductors["sgn"] = 3.0;
    spec.psi_conductors["std"] = 108.0;
    spec.declared_D_K = 3.0 * 108.0 * 108.0;
    {
        RamifiedOverride ov;  // 2 is totally ramified in the cubic field
        ov.ideals.emplace_back(2, true);
        ov.local["triv"] = LocalOverrideEntry{true, {complexd(1.0, 0.0)}, {}};
        ov.local["sgn"] = LocalOverrideEntry{true, {complexd(-1.0, 0.0)}, {}};  // 2 inert in Q(sqrt(-3))
        ov.local["std"] = LocalOverrideEntry{true, {}, {}};
        spec.overrides[2] = std::move(ov);
    }
    {
        RamifiedOverride ov;  // 3 is wildly and totally ramified
        ov.ideals.emplace_back(3, true);
        ov.local["triv"] = LocalOverrideEntry{true, {complexd(1.0, 0.0)}, {}};
        ov.local["sgn"] = LocalOverrideEntry{true, {}, {}};
        ov.local["std"] = LocalOverrideEntry{true, {}, {}};
        spec.overrides[3] = std::move(ov);
    }
    spec.validate();
    return spec;
}

// At least `count` squarefree-discriminant S3 cubics, smallest coefficients
// first, one field per discriminant.
inline std::vector<FieldSpec> s3_cubic_family(std::size_t count) {
    std::vector<FieldSpec> out;
    std::vector<long long> seen;
    for (long long height = 1; height <= 40 && out.size() < count; ++height) {
        for (long long a = -height; a <= height && out.size() < count; ++a) {
            for (long long b = -height; b <= height && out.size() < count; ++b) {
                if (std::max(std::llabs(a), std::llabs(b)) != height) continue;
                long long disc = -4 * a * a * a - 27 * b * b;
                if (disc == 0 || !is_squarefree_ll(disc)) continue;
                IntPoly f({Int(b), Int(a), Int(0), Int(1)});
                if (has_rational_root(f)) continue;
                bool dup = false;
                for (long long s : seen) dup = dup || s == disc;
                if (dup) continue;
                seen.push_back(disc);
                out.push_back(s3_cubic_spec(a, b));
            }
        }
    }
    if (out.size() < count)
        throw computation_error("cubic family search exhausted before reaching the requested size");
    return out;
}

// Base-field comparison for a cubic of discriminant d f^2: the conductor-aspect
// shapes for the degree-2 character over Q against the degree-1 character over
// the resolvent quadratic Q(sqrt(d)).
struct S3BaseComparison {
    long long d = 0;
    long long f = 0;
    double upper_over_Q = 0.0;     // (log |d| f^2)^2
    double lower_over_Q = 0.0;     // (log |d| f^2)^{-1}
    double upper_over_quad = 0.0;  // (log |d|) (log f^2)
    double lower_over_quad = 0.0;  // ((log |d|)(log f^2))^{-1/2}, infinite at f = 1
    bool quad_base_no_worse = false;
};

// Split a cubic field discriminant D into d f^2 with d fundamental.
inline std::pair<long long, long long> resolvent_split(long long D) {
    if (D == 0) throw domain_error("cubic discriminant must be nonzero");
    long long s = 1;
    long long core = D;
    for (long long p = 2; p * p <= std::llabs(core);) {
        if (core % (p * p) == 0) {
            core /= p * p;
            s *= p;
        } else {
            ++p;
        }
    }
    // core is squarefree now; move a factor of 4 when core is 2 or 3 mod 4
    long long m4 = ((core % 4) + 4) % 4;
    if (m4 == 2 || m4 == 3) {
        if (s % 2 != 0)
            throw domain_error("discriminant " + std::to_string(D) +
                               " does not split as a fundamental discriminant times a square");
        core *= 4;
        s /= 2;
    }
    return {core, s};
}

inline S3BaseComparison s3_base_comparison(long long D) {
    auto [d, f] = resolvent_split(D);
    S3BaseComparison cmp;
    cmp.d = d;
    cmp.f = f;
    double lq = std::log(static_cast<double>(std::llabs(D)));
    double ld = std::log(static_cast<double>(std::llabs(d)));
    double lf2 = 2.0 * std::log(static_cast<double>(f));
    cmp.upper_over_Q = lq * lq;
    cmp.lower_over_Q = 1.0 / lq;
    cmp.upper_over_quad = ld * lf2;
    cmp.lower_over_quad = lf2 > 0 ? 1.0 / std::sqrt(ld * lf2)
                                  : std::numeric_limits<double>::infinity();
    cmp.quad_base_no_worse = cmp.upper_over_quad <= cmp.upper_over_Q + 1e-12;
    return cmp;
}

}  // namespace artin
