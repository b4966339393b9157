#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "artin/bounds.hpp"
#include "artin/families.hpp"

using namespace artin;

namespace {

double exp_named(const EnvelopeReport& r, const std::string& name) {
    for (const auto& e : r.exponents)
        if (e.name == name) return e.value;
    throw std::logic_error("no exponent entry named " + name);
}

SiegelRecord member(std::string id, double q, double beta = 0.995) {
    SiegelRecord rec;
    rec.psi_id = std::move(id);
    rec.q = q;
    rec.beta = beta;
    return rec;
}

ConductorData s3_data_23() {
    ConductorData d;
    d.q_psi = {{"triv", 1.0}, {"sgn", 23.0}, {"std", 23.0}};
    d.D_K = 23.0 * 23.0 * 23.0;
    d.D_k = 1.0;
    d.base_degree = 1;
    return d;
}

}  // namespace

TEST_CASE("epsilon takes the worst exceptional member") {
    auto t = s3_group();
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto std_chi = VirtualCharacter::irreducible(t, 2);

    double base_sgn = std::log(1e4) / std::sqrt(1e4);
    CHECK(epsilon_chi(sgn, {member("sgn", 1e4)}, 1.0, 1) ==
          doctest::Approx(base_sgn).epsilon(1e-15));

    // min over members; exponent follows the multiplicity
    double base_std = std::log(100.0) / std::sqrt(100.0);
    auto both = std::vector<SiegelRecord>{member("sgn", 1e4), member("std", 100.0)};
    CHECK(epsilon_chi(sgn + std_chi, both, 1.0, 1) == doctest::Approx(base_sgn).epsilon(1e-15));
    CHECK(epsilon_chi(2 * std_chi, {member("std", 100.0)}, 1.0, 1) ==
          doctest::Approx(base_std * base_std).epsilon(1e-14));

    // members without a zero, or not present in chi, do not contribute
    SiegelRecord clean = member("sgn", 1e4);
    clean.beta.reset();
    CHECK(epsilon_chi(sgn, {clean}, 1.0, 1) == 1.0);
    CHECK(epsilon_chi(std_chi, {member("sgn", 1e4)}, 1.0, 1) == 1.0);
    CHECK(epsilon_chi(sgn, {}, 1.0, 1) == 1.0);

    CHECK_THROWS_AS(epsilon_chi(sgn, {member("sgn", 1e4)}, 1.0, 0), domain_error);
    CHECK_THROWS_AS(epsilon_chi(sgn, {member("sgn", 2.0)}, 1.0, 1), domain_error);
}

TEST_CASE("discriminant-aspect envelope: quadratic field by hand") {
    auto t = cyclic_group(2);
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto ind = induction_over_Q(sgn);
    double D = 1e4, logD = std::log(D);

    auto r = disc_envelope(sgn, ind, D, 1);
    CHECK(r.upper_shape == doctest::Approx(logD).epsilon(1e-15));
    // (log D / sqrt(D)) * (log D)^{-1} collapses to 1/sqrt(D)
    CHECK(r.lower_shape == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(exp_named(r, "log D_K upper") == 1.0);
    CHECK(exp_named(r, "repelled factor") == 1.0);
    CHECK(exp_named(r, "log D_K lower") == -1.0);

    auto r0 = disc_envelope(sgn, ind, D, 0);
    CHECK(r0.lower_shape == doctest::Approx(1.0 / logD).epsilon(1e-15));

    r.set_kappa(0.005);
    CHECK(r.ratio_hi == doctest::Approx(0.005 / logD).epsilon(1e-15));
    CHECK(r.ratio_lo == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(disc_envelope(sgn, ind, 2.0, 1), domain_error);
    CHECK_THROWS_AS(disc_envelope(sgn, ind, D, -1), domain_error);
}

TEST_CASE("discriminant-aspect envelope: S3 standard character") {
    auto t = s3_group();
    auto std_chi = VirtualCharacter::irreducible(t, 2);
    auto ind = induction_over_Q(std_chi);
    double D = 12167.0, logD = std::log(D);

    auto r = disc_envelope(std_chi, ind, D, 0);
    CHECK(r.upper_shape == doctest::Approx(logD * logD).epsilon(1e-15));
    CHECK(r.lower_shape == doctest::Approx(1.0 / logD).epsilon(1e-15));
}

TEST_CASE("multiples of the trivial character get unit shapes") {
    auto t = cyclic_group(2);
    auto triv = VirtualCharacter::trivial(t);
    for (long long m : {1, 2, 5}) {
        auto chi = m * triv;
        auto r = disc_envelope(chi, induction_over_Q(chi), 100.0, 1);
        CHECK(r.upper_shape == 1.0);
        CHECK(r.lower_shape == 1.0);
        CHECK(r.exponents.size() == 1);
        CHECK(r.exponents.front().name == "trivial multiple");
    }
}

TEST_CASE("conductor-aspect envelope by hand") {
    auto t = s3_group();
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto std_chi = VirtualCharacter::irreducible(t, 2);
    double q = 1e4, lq = std::log(q);

    auto r = cond_envelope(sgn, induction_over_Q(sgn), 1.0, q, 1.0);
    CHECK(r.upper_shape == doctest::Approx(lq).epsilon(1e-15));
    CHECK(r.lower_shape == doctest::Approx(1.0 / lq).epsilon(1e-15));

    auto scaled = cond_envelope(sgn, induction_over_Q(sgn), 1.0, q, 0.25);
    CHECK(scaled.lower_shape == doctest::Approx(0.25 / lq).epsilon(1e-15));

    auto r2 = cond_envelope(std_chi, induction_over_Q(std_chi), 1.0, q, 1.0);
    CHECK(r2.upper_shape == doctest::Approx(lq * lq).epsilon(1e-15));
    CHECK(r2.lower_shape == doctest::Approx(1.0 / lq).epsilon(1e-15));

    // over a quadratic base the closure degree doubles and log eD_k enters
    double led = std::log(std::exp(1.0) * 23.0);
    auto over_quad = cond_envelope(std_chi, make_induction(std_chi, 2), 23.0, q, 1.0);
    CHECK(over_quad.upper_shape == doctest::Approx(led * led * lq * lq).epsilon(1e-14));
    CHECK(over_quad.lower_shape == doctest::Approx(1.0 / (led * lq)).epsilon(1e-14));

    CHECK_THROWS_AS(cond_envelope(sgn, induction_over_Q(sgn), 1.0, 2.0, 1.0), domain_error);
    CHECK_THROWS_AS(cond_envelope(sgn, induction_over_Q(sgn), 1.0, q, 0.0), domain_error);
    CHECK_THROWS_AS(cond_envelope(sgn, induction_over_Q(sgn), 0.5, q, 1.0), domain_error);
}

TEST_CASE("conductor and discriminant exponents telescope to the same totals") {
    for (const auto& t : {s3_group(), d4_group(), d5_group(), f20_group(), cyclic_group(6)}) {
        std::vector<VirtualCharacter> chis;
        for (std::size_t i = 0; i < t->num_irreducibles(); ++i)
            chis.push_back(VirtualCharacter::irreducible(t, i));
        chis.push_back(VirtualCharacter::regular(t));
        for (const auto& chi : chis) {
            auto ind = induction_over_Q(chi);
            if (ind.mu_tilde >= ind.tilde_degree - 1e-12) continue;
            auto disc = disc_envelope(chi, ind, 100.0, 0);
            auto cond = cond_envelope(chi, ind, 1.0, 50.0, 1.0);
            CAPTURE(t->name());
            CAPTURE(chi.label());
            CHECK(exp_named(cond, "log eD_k upper") + exp_named(cond, "log q upper") ==
                  exp_named(disc, "log D_K upper"));
            CHECK(exp_named(cond, "log eD_k lower") + exp_named(cond, "log q lower") ==
                  exp_named(disc, "log D_K lower"));
        }
    }
}

TEST_CASE("nonexceptional corollary applies only without trivial or quadratic parts") {
    auto t = s3_group();
    auto data = s3_data_23();
    auto triv = VirtualCharacter::trivial(t);
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto std_chi = VirtualCharacter::irreducible(t, 2);

    auto on_std = corollary_envelopes(std_chi, data, induction_over_Q(std_chi), 1.0);
    CHECK(on_std.nonexceptional.applicable);
    double lq = std::log(23.0);
    CHECK(on_std.nonexceptional.upper_shape == doctest::Approx(lq * lq).epsilon(1e-15));
    CHECK(on_std.nonexceptional.lower_shape == doctest::Approx(1.0 / lq).epsilon(1e-15));

    auto on_sgn = corollary_envelopes(sgn, data, induction_over_Q(sgn), 1.0);
    CHECK_FALSE(on_sgn.nonexceptional.applicable);
    auto with_triv = corollary_envelopes(triv + std_chi, data,
                                         induction_over_Q(triv + std_chi), 1.0);
    CHECK_FALSE(with_triv.nonexceptional.applicable);
    auto doubled = corollary_envelopes(2 * std_chi, data, induction_over_Q(2 * std_chi), 1.0);
    CHECK(doubled.nonexceptional.applicable);
}

TEST_CASE("decomposed corollary agrees with the conductor envelope on irreducibles") {
    for (const auto& t : {s3_group(), d5_group(), f20_group(), cyclic_group(6)}) {
        ConductorData data;
        data.D_k = 7.0;
        data.base_degree = 2;
        double q = 9.0;
        for (std::size_t i = 0; i < t->num_irreducibles(); ++i)
            data.q_psi[t->irr_id(i)] = (static_cast<int>(i) == t->trivial_index()) ? 1.0 : (q += 4.0);
        data.D_K = data.predicted_D_K(*t);
        for (std::size_t i = 0; i < t->num_irreducibles(); ++i) {
            if (static_cast<int>(i) == t->trivial_index()) continue;
            auto psi = VirtualCharacter::irreducible(t, i);
            auto ind = make_induction(psi, data.base_degree);
            auto shapes = corollary_envelopes(psi, data, ind, 0.5);
            auto cond = cond_envelope(psi, ind, data.D_k, data.q_of(psi), 0.5);
            CAPTURE(t->name());
            CAPTURE(psi.label());
            CHECK(shapes.decomposed.upper_shape ==
                  doctest::Approx(cond.upper_shape).epsilon(1e-12));
            CHECK(shapes.decomposed.lower_shape ==
                  doctest::Approx(cond.lower_shape).epsilon(1e-12));
        }
    }
}

TEST_CASE("irreducibles corollary multiplies per-component conductor logs") {
    auto t = s3_group();
    auto data = s3_data_23();
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto std_chi = VirtualCharacter::irreducible(t, 2);
    auto chi = sgn + std_chi;
    auto shapes = corollary_envelopes(chi, data, induction_over_Q(chi), 1.0);
    double lq = std::log(23.0);
    CHECK(shapes.irreducibles.upper_shape == doctest::Approx(lq * lq * lq).epsilon(1e-14));
    CHECK(shapes.irreducibles.lower_shape == doctest::Approx(1.0 / (lq * lq * lq)).epsilon(1e-14));

    CHECK_THROWS_AS(corollary_envelopes(chi, data, induction_over_Q(chi), 0.0), domain_error);
    auto bad = data;
    bad.base_degree = 0;
    CHECK_THROWS_AS(corollary_envelopes(chi, bad, induction_over_Q(chi), 1.0), domain_error);
}

TEST_CASE("loglog envelope and its domain wall") {
    auto t = cyclic_group(2);
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto ind = induction_over_Q(sgn);
    double q = 1e4, llq = std::log(std::log(q));

    auto r = grh_envelope(sgn, ind, 1.0, q);
    CHECK(r.upper_shape == doctest::Approx(llq).epsilon(1e-15));
    CHECK(r.lower_shape == doctest::Approx(1.0 / llq).epsilon(1e-15));

    CHECK_THROWS_AS(grh_envelope(sgn, ind, 1.0, std::exp(1.0)), domain_error);
    CHECK_THROWS_AS(grh_envelope(sgn, ind, 1.0, 2.0), domain_error);

    // with D_k = 1 the loglog base vanishes: a zero exponent is silently fine,
    // a nonzero one is a domain error rather than a NaN
    CHECK_NOTHROW(grh_envelope(sgn, ind, 1.0, q));
    CHECK_THROWS_AS(grh_envelope(sgn, make_induction(sgn, 2), 1.0, q), domain_error);
    CHECK_NOTHROW(grh_envelope(sgn, make_induction(sgn, 2), 3.0, q));
}

TEST_CASE("negative multiplicities are rejected by every envelope") {
    auto t = s3_group();
    auto triv = VirtualCharacter::trivial(t);
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto chi = triv - sgn;
    auto ind = induction_over_Q(sgn);
    auto data = s3_data_23();
    CHECK_THROWS_AS(disc_envelope(chi, ind, 100.0, 0), domain_error);
    CHECK_THROWS_AS(cond_envelope(chi, ind, 1.0, 100.0, 1.0), domain_error);
    CHECK_THROWS_AS(corollary_envelopes(chi, data, ind, 1.0), domain_error);
    CHECK_THROWS_AS(grh_envelope(chi, ind, 1.0, 100.0), domain_error);
    CHECK_THROWS_AS(small_primes_envelope(chi, ind, {{"triv", 100.0}}), domain_error);
}

TEST_CASE("small-prime truncation ledger telescopes") {
    auto t = s3_group();
    auto reg = VirtualCharacter::regular(t);
    auto ind = induction_over_Q(reg);
    std::vector<std::pair<std::string, double>> truncs = {
        {"std", 1e6}, {"sgn", 1e5}, {"triv", 1e4}};
    auto led = small_primes_envelope(reg, ind, truncs);

    // partial sums 2 std -> 2 std + sgn -> regular
    CHECK(led.degree_steps == std::vector<double>{4.0, 1.0, 1.0});
    CHECK(led.mu_steps == std::vector<double>{-2.0, 1.0, 1.0});
    double s = 0.0;
    for (double d : led.degree_steps) s += d;
    CHECK(s == reg.degree());
    double m = 0.0;
    for (double x : led.mu_steps) m += x;
    CHECK(m == mu(reg).value);

    double l6 = std::log(1e6), l5 = std::log(1e5), l4 = std::log(1e4);
    CHECK(led.tilde_upper_exponent == 0.0);
    CHECK(led.tilde_lower_exponent == 0.0);
    CHECK(led.upper_shape ==
          doctest::Approx(std::pow(l6, 4.0) * l5 * l4).epsilon(1e-13));
    CHECK(led.lower_shape == doctest::Approx(l5 * l4 / (l6 * l6)).epsilon(1e-13));
}

TEST_CASE("small-prime ledger: single component and ordering guards") {
    auto t = s3_group();
    auto std_chi = VirtualCharacter::irreducible(t, 2);
    auto ind = induction_over_Q(std_chi);
    double T = 1e6, lT = std::log(T);
    auto led = small_primes_envelope(std_chi, ind, {{"std", T}, {"sgn", T}, {"triv", T}});
    CHECK(led.upper_shape == doctest::Approx(lT * lT).epsilon(1e-14));
    CHECK(led.lower_shape == doctest::Approx(1.0 / lT).epsilon(1e-14));

    CHECK_THROWS_AS(small_primes_envelope(std_chi, ind, {}), domain_error);
    CHECK_THROWS_AS(small_primes_envelope(std_chi, ind, {{"std", 2.0}, {"triv", 2.0}}),
                    domain_error);
    CHECK_THROWS_AS(small_primes_envelope(std_chi, ind, {{"std", 1e4}, {"triv", 1e5}}),
                    domain_error);
    CHECK_THROWS_AS(small_primes_envelope(std_chi, ind, {{"triv", 1e5}, {"std", 1e4}}),
                    domain_error);
}

TEST_CASE("conductor valuation on tame and wild filtrations") {
    auto t = s3_group();
    auto triv = VirtualCharacter::trivial(t);
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto std_chi = VirtualCharacter::irreducible(t, 2);
    auto reg = VirtualCharacter::regular(t);

    // tame inertia of order 2 at a squarefree-ramified prime
    std::vector<RamificationLayer> tame = {{2, {{"1a", 1}, {"2a", 1}}}};
    CHECK(artin_conductor_valuation(triv, tame) == 0);
    CHECK(artin_conductor_valuation(sgn, tame) == 1);
    CHECK(artin_conductor_valuation(std_chi, tame) == 1);
    // regular character recovers the discriminant valuation |G| sum (|G_i|-1)/|G_0|
    CHECK(artin_conductor_valuation(reg, tame) == 3);

    std::vector<RamificationLayer> wild = {{2, {{"1a", 1}, {"2a", 1}}},
                                           {2, {{"1a", 1}, {"2a", 1}}}};
    CHECK(artin_conductor_valuation(reg, wild) == 6);

    // order-3 inertia: only the standard character pays
    std::vector<RamificationLayer> cyclic3 = {{3, {{"1a", 1}, {"3a", 2}}}};
    CHECK(artin_conductor_valuation(sgn, cyclic3) == 0);
    CHECK(artin_conductor_valuation(std_chi, cyclic3) == 2);
}

TEST_CASE("conductor valuation works at full cyclotomic precision") {
    auto c6 = cyclic_group(6);
    auto chi1 = VirtualCharacter::irreducible(c6, 1);
    std::vector<RamificationLayer> full = {
        {6, {{"1a", 1}, {"6a", 1}, {"3a", 1}, {"2a", 1}, {"3b", 1}, {"6b", 1}}}};
    CHECK(artin_conductor_valuation(chi1, full) == 1);

    auto d5 = d5_group();
    auto psi = VirtualCharacter::irreducible(d5, 2);
    std::vector<RamificationLayer> reflection = {{2, {{"1a", 1}, {"2a", 1}}}};
    CHECK(artin_conductor_valuation(psi, reflection) == 1);

    // a coset that is not a subgroup leaves an irrational average behind
    std::vector<RamificationLayer> skew = {{2, {{"1a", 1}, {"5a", 1}}}};
    CHECK_THROWS_AS(artin_conductor_valuation(psi, skew), computation_error);
}

TEST_CASE("conductor valuation input guards") {
    auto t = s3_group();
    auto triv = VirtualCharacter::trivial(t);
    auto sgn = VirtualCharacter::irreducible(t, 1);
    auto std_chi = VirtualCharacter::irreducible(t, 2);

    CHECK_THROWS_AS(artin_conductor_valuation(triv, {}), domain_error);
    CHECK_THROWS_AS(artin_conductor_valuation(triv, {{0, {{"1a", 0}}}}), domain_error);
    CHECK_THROWS_AS(artin_conductor_valuation(triv, {{2, {{"1a", 1}, {"2a", -1}}}}),
                    domain_error);
    CHECK_THROWS_AS(artin_conductor_valuation(triv, {{2, {{"1a", 1}}}}), domain_error);
    // half-integral value: a size-2 layer mixing identity and a 3-cycle
    CHECK_THROWS_AS(artin_conductor_valuation(std_chi, {{2, {{"1a", 1}, {"3a", 1}}}}),
                    computation_error);
    // negative valuation from a virtual character
    CHECK_THROWS_AS(artin_conductor_valuation(triv - sgn, {{2, {{"1a", 1}, {"2a", 1}}}}),
                    computation_error);
}

TEST_CASE("conductor-discriminant checks: quadratic equality and S3 bounds") {
    {
        ConductorData data;
        data.q_psi = {{"triv", 1.0}, {"sgn", 4.0}};
        data.D_K = 4.0;
        auto t = cyclic_group(2);
        auto sgn = VirtualCharacter::irreducible(t, 1);
        auto r = conductor_bounds_check(data, sgn);
        CHECK(r.q_chi == 4.0);
        CHECK(r.upper_rhs == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(r.upper_holds);
        CHECK(r.faithful);
        CHECK(r.lower_asserted);
        CHECK(r.lower_holds);
        CHECK(r.disc_residual_log == doctest::Approx(0.0).epsilon(1e-14));

        auto rt = conductor_bounds_check(data, VirtualCharacter::trivial(t));
        CHECK_FALSE(rt.faithful);
        CHECK_FALSE(rt.lower_asserted);
        CHECK(rt.lower_holds);
        CHECK(rt.upper_holds);
    }
    {
        auto data = s3_data_23();
        auto t = s3_group();
        auto sgn = VirtualCharacter::irreducible(t, 1);
        auto std_chi = VirtualCharacter::irreducible(t, 2);
        auto reg = VirtualCharacter::regular(t);

        auto r = conductor_bounds_check(data, std_chi);
        CHECK(r.q_chi == doctest::Approx(23.0).epsilon(1e-15));
        CHECK(r.upper_rhs == doctest::Approx(529.0).epsilon(1e-12));
        CHECK(r.upper_holds);
        CHECK(r.faithful);
        CHECK(r.lower_rhs == doctest::Approx(std::sqrt(23.0)).epsilon(1e-12));
        CHECK(r.lower_holds);

        auto rs = conductor_bounds_check(data, sgn);
        CHECK_FALSE(rs.faithful);  // kernel contains the 3-cycles
        CHECK(rs.upper_holds);

        auto rr = conductor_bounds_check(data, reg);
        CHECK(rr.q_chi == doctest::Approx(data.D_K).epsilon(1e-12));
        CHECK(rr.faithful);
        CHECK(rr.lower_holds);
        CHECK(rr.disc_residual_log == doctest::Approx(0.0).epsilon(1e-14));

        ConductorData bad = data;
        bad.D_K = 0.0;
        CHECK_THROWS_AS(conductor_bounds_check(bad, std_chi), domain_error);
        ConductorData missing = data;
        missing.q_psi.erase("std");
        CHECK_THROWS_AS(conductor_bounds_check(missing, std_chi), config_error);
    }
}

TEST_CASE("base-field comparison for cubic discriminants") {
    auto cmp = s3_base_comparison(-108);
    CHECK(cmp.d == -3);
    CHECK(cmp.f == 6);
    double lq = std::log(108.0), ld = std::log(3.0), lf2 = std::log(36.0);
    CHECK(cmp.upper_over_Q == doctest::Approx(lq * lq).epsilon(1e-15));
    CHECK(cmp.lower_over_Q == doctest::Approx(1.0 / lq).epsilon(1e-15));
    CHECK(cmp.upper_over_quad == doctest::Approx(ld * lf2).epsilon(1e-15));
    CHECK(cmp.lower_over_quad == doctest::Approx(1.0 / std::sqrt(ld * lf2)).epsilon(1e-15));
    CHECK(cmp.quad_base_no_worse);

    // squarefree discriminant: conductor of the quadratic part carries it all
    auto flat = s3_base_comparison(-23);
    CHECK(flat.d == -23);
    CHECK(flat.f == 1);
    CHECK(flat.upper_over_quad == 0.0);
    CHECK(std::isinf(flat.lower_over_quad));
    CHECK(flat.quad_base_no_worse);

    CHECK(resolvent_split(12).first == 12);
    CHECK(resolvent_split(-75) == std::pair<long long, long long>(-3, 5));
    CHECK(resolvent_split(-4) == std::pair<long long, long long>(-4, 1));
    CHECK_THROWS_AS(resolvent_split(0), domain_error);
    CHECK_THROWS_AS(resolvent_split(-2), domain_error);
}

TEST_CASE("every generated cubic keeps the quadratic base competitive") {
    for (const auto& spec : s3_cubic_family(12)) {
        auto cmp = s3_base_comparison(spec.disc.convert_to<long long>());
        CAPTURE(spec.id);
        CHECK(is_fundamental_discriminant(cmp.d));
        CHECK(cmp.quad_base_no_worse);
    }
}
