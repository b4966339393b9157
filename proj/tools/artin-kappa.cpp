// Command-line front end: kappa estimates, family scans, Siegel-zero scans,
// bound-envelope checks, and Mertens sums, all emitting CSV or plot data.
//
// Exit codes: 0 success, 2 configuration problem, 3 computation failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "artin/artin.hpp"

namespace {

using nlohmann::json;
using namespace artin;

struct JobConfig {
    std::string command;
    std::string spec_path;
    std::optional<json> spec_inline;
    double T = 0.0;
    std::map<std::string, double> T_map;
    std::string out = "out.csv";
    unsigned workers = 0;
    bool no_timestamp = false;
    bool rigorous = false;
    std::string trunc_model = "heuristic";
    double gamma = euler_gamma;
    double c1 = 12.0, c2 = 1.0 / 12.0, c3 = 1.0, c4 = 1.0, c5 = 1.0;
    std::vector<std::string> chars;
    std::string family;
    long long bound = 0;
    long long count = 0;
    long long d_min = 0, d_max = 0;
    std::vector<long long> d_list;
    double y = 0.0, x = 0.0;
    std::map<std::string, double> siegel_betas;
    std::string exceptional_psi;
    bool compare_bases = false;
    std::string plot_path;
    std::string field_token;
    std::vector<json> field_list;
};

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw config_error("malformed JSON in '" + path + "': " + e.what());
    }
}

void merge_config_file(JobConfig& cfg, const json& j) {
    if (!j.is_object()) throw config_error("job config must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "command") cfg.command = val.get<std::string>();
            else if (key == "spec") {
                if (val.is_string()) cfg.spec_path = val.get<std::string>();
                else cfg.spec_inline = val;
            } else if (key == "T") cfg.T = val.get<double>();
            else if (key == "T_map") cfg.T_map = val.get<std::map<std::string, double>>();
            else if (key == "out") cfg.out = val.get<std::string>();
            else if (key == "workers") cfg.workers = val.get<unsigned>();
            else if (key == "no_timestamp") cfg.no_timestamp = val.get<bool>();
            else if (key == "rigorous") cfg.rigorous = val.get<bool>();
            else if (key == "trunc_model") cfg.trunc_model = val.get<std::string>();
            else if (key == "gamma") cfg.gamma = val.get<double>();
            else if (key == "c1") cfg.c1 = val.get<double>();
            else if (key == "c2") cfg.c2 = val.get<double>();
            else if (key == "c3") cfg.c3 = val.get<double>();
            else if (key == "c4") cfg.c4 = val.get<double>();
            else if (key == "c5") cfg.c5 = val.get<double>();
            else if (key == "chars") cfg.chars = val.get<std::vector<std::string>>();
            else if (key == "family") cfg.family = val.get<std::string>();
            else if (key == "bound") cfg.bound = val.get<long long>();
            else if (key == "count") cfg.count = val.get<long long>();
            else if (key == "d_min") cfg.d_min = val.get<long long>();
            else if (key == "d_max") cfg.d_max = val.get<long long>();
            else if (key == "d_list") cfg.d_list = val.get<std::vector<long long>>();
            else if (key == "y") cfg.y = val.get<double>();
            else if (key == "x") cfg.x = val.get<double>();
            else if (key == "siegel") cfg.siegel_betas = val.get<std::map<std::string, double>>();
            else if (key == "exceptional") cfg.exceptional_psi = val.get<std::string>();
            else if (key == "compare_bases") cfg.compare_bases = val.get<bool>();
            else if (key == "field") cfg.field_token = val.get<std::string>();
            else if (key == "plot") cfg.plot_path = val.get<std::string>();
            else if (key == "fields") cfg.field_list = val.get<std::vector<json>>();
            else throw config_error("unknown config key '" + key + "'");
        } catch (const json::exception& e) {
            throw config_error("bad value for config key '" + key + "': " + e.what());
        }
    }
}

KappaOptions make_options(const JobConfig& cfg) {
    KappaOptions opts;
    opts.gamma = cfg.gamma;
    opts.workers = cfg.workers;
    opts.c3 = cfg.c3;
    opts.c4 = cfg.c4;
    opts.c5 = cfg.c5;
    if (cfg.rigorous || cfg.trunc_model == "none")
        opts.model = KappaOptions::Truncation::none;
    else if (cfg.trunc_model == "delta-k")
        opts.model = KappaOptions::Truncation::delta_k;
    else if (cfg.trunc_model == "heuristic")
        opts.model = KappaOptions::Truncation::heuristic;
    else
        throw config_error("trunc_model must be one of heuristic, delta-k, none");
    return opts;
}

std::optional<SiegelData> make_siegel(const JobConfig& cfg) {
    if (cfg.siegel_betas.empty() && cfg.exceptional_psi.empty()) return std::nullopt;
    SiegelData sd;
    sd.beta_by_psi = cfg.siegel_betas;
    if (!cfg.exceptional_psi.empty()) {
        auto it = cfg.siegel_betas.find(cfg.exceptional_psi);
        if (it == cfg.siegel_betas.end())
            throw config_error("exceptional character '" + cfg.exceptional_psi +
                               "' has no beta in the siegel map");
        sd.exceptional = SiegelPoint{cfg.exceptional_psi, it->second, 0.0};
    }
    return sd;
}

// --field shorthand: "rational", "quad:<d>", "cubic:x3-x-1", "cubic:x3+x-1",
// "cubic:x3-2", or "cubic:<a>,<b>" for x^3+ax+b
FieldSpec builtin_field_spec(const std::string& token) {
    if (token == "rational") return rational_field_spec();
    auto colon = token.find(':');
    if (colon != std::string::npos) {
        std::string kind = token.substr(0, colon), arg = token.substr(colon + 1);
        if (kind == "quad") {
            try {
                return quadratic_field_spec(std::stoll(arg));
            } catch (const std::invalid_argument&) {
                throw config_error("bad discriminant in field token '" + token + "'");
            } catch (const std::out_of_range&) {
                throw config_error("bad discriminant in field token '" + token + "'");
            }
        }
        if (kind == "cubic") {
            if (arg == "x3-x-1") return cubic_x3_minus_x_minus_1_spec();
            if (arg == "x3+x-1") return cubic_x3_plus_x_minus_1_spec();
            if (arg == "x3-2") return cubic_x3_minus_2_spec();
            auto comma = arg.find(',');
            if (comma != std::string::npos) {
                try {
                    return s3_cubic_spec(std::stoll(arg.substr(0, comma)),
                                         std::stoll(arg.substr(comma + 1)));
                } catch (const config_error&) {
                    throw;
                } catch (const std::exception&) {
                    throw config_error("bad coefficients in field token '" + token + "'");
                }
            }
        }
    }
    throw config_error("unknown field token '" + token + "'");
}

FieldSpec load_field_spec(const JobConfig& cfg) {
    if (!cfg.field_token.empty()) return builtin_field_spec(cfg.field_token);
    if (!cfg.spec_path.empty()) return FieldSpec::from_json(parse_json_file(cfg.spec_path));
    if (cfg.spec_inline) return FieldSpec::from_json(*cfg.spec_inline);
    throw config_error("no field spec supplied; use --spec, --field, or the 'spec' config key");
}

std::vector<FieldSpec> load_family(const JobConfig& cfg) {
    std::vector<FieldSpec> fields;
    if (!cfg.field_list.empty()) {
        for (const auto& j : cfg.field_list) fields.push_back(FieldSpec::from_json(j));
    } else if (cfg.family == "quadratic") {
        if (cfg.bound < 3) throw config_error("quadratic family needs bound >= 3");
        for (long long d : fundamental_discriminants(cfg.bound))
            fields.push_back(quadratic_field_spec(d));
    } else if (cfg.family == "s3-cubic") {
        if (cfg.count < 1) throw config_error("s3-cubic family needs count >= 1");
        fields = s3_cubic_family(static_cast<std::size_t>(cfg.count));
    } else if (cfg.family == "cubic-benchmarks") {
        fields.push_back(cubic_x3_minus_x_minus_1_spec());
        fields.push_back(cubic_x3_plus_x_minus_1_spec());
        fields.push_back(cubic_x3_minus_2_spec());
    } else if (!cfg.family.empty()) {
        throw config_error("unknown family '" + cfg.family +
                           "'; expected quadratic, s3-cubic, or cubic-benchmarks");
    } else if (!cfg.field_token.empty() || !cfg.spec_path.empty() || cfg.spec_inline) {
        fields.push_back(load_field_spec(cfg));
    } else {
        throw config_error(
            "no family selected; use --family, --field, --spec, or the 'fields' config key");
    }
    if (fields.empty()) throw config_error("selected family is empty");
    return fields;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::vector<std::string> select_characters(const JobConfig& cfg, const FieldSpec& spec) {
    if (!cfg.chars.empty()) {
        for (const auto& id : cfg.chars) spec.group->irr_index(id);  // validate
        return cfg.chars;
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < spec.group->num_irreducibles(); ++i)
        ids.push_back(spec.group->irr_id(i));
    return ids;
}

std::string default_character(const FieldSpec& spec) {
    // the natural nontrivial character: last irreducible id (std for S3,
    // sgn for C2), overridable with --chars
    return spec.group->irr_id(spec.group->num_irreducibles() - 1);
}

int run_kappa(const JobConfig& cfg) {
    FieldSpec spec = load_field_spec(cfg);
    KappaOptions opts = make_options(cfg);
    auto siegel = make_siegel(cfg);
    bool multi = !cfg.T_map.empty();
    if (!multi && cfg.T < 2) throw config_error("kappa needs --T >= 2 or a T_map");

    CsvFile csv(cfg.out, !cfg.no_timestamp);
    csv.row({"character", "T", "center_re", "center_im", "radius", "eta_factor", "wall_time_ms"});
    for (const auto& id : select_characters(cfg, spec)) {
        auto chi = VirtualCharacter::irreducible(
            spec.group, static_cast<std::size_t>(spec.group->irr_index(id)));
        auto t0 = std::chrono::steady_clock::now();
        KappaInterval ki = multi ? kappa_multi_truncation(chi, spec, cfg.T_map, siegel, opts)
                                 : kappa_estimate(chi, spec, cfg.T, siegel, opts);
        double ms = cfg.no_timestamp ? 0.0 : elapsed_ms(t0);
        double Tcol = multi ? cfg.T_map.at(id) : cfg.T;
        csv.row({id, csv_number(Tcol), csv_number(ki.center.real()), csv_number(ki.center.imag()),
                 csv_number(ki.radius), csv_number(ki.eta_factor), csv_number(ms)});
    }
    return 0;
}

int run_scan_family(const JobConfig& cfg) {
    if (cfg.T < 2) throw config_error("scan-family needs --T >= 2");
    std::vector<FieldSpec> fields = load_family(cfg);
    KappaOptions opts = make_options(cfg);
    auto siegel = make_siegel(cfg);

    struct Row {
        std::string field, character;
        double disc_abs = 0, re = 0, im = 0, radius = 0, eta = 1, ms = 0;
    };
    std::vector<Row> rows(fields.size());
    KappaOptions inner = opts;
    inner.workers = 1;  // parallel per-field; keep the per-field product serial
    parallel_for_chunks(fields.size(), parallel_options{cfg.workers}.resolve(),
                        [&](std::size_t i) {
                            const FieldSpec& spec = fields[i];
                            std::string id = cfg.chars.empty() ? default_character(spec)
                                                               : cfg.chars.front();
                            auto chi = VirtualCharacter::irreducible(
                                spec.group, static_cast<std::size_t>(spec.group->irr_index(id)));
                            auto t0 = std::chrono::steady_clock::now();
                            KappaInterval ki = kappa_estimate(chi, spec, cfg.T, siegel, inner);
                            rows[i] = {spec.id,
                                       id,
                                       std::abs(spec.disc.convert_to<double>()),
                                       ki.center.real(),
                                       ki.center.imag(),
                                       ki.radius,
                                       ki.eta_factor,
                                       cfg.no_timestamp ? 0.0 : elapsed_ms(t0)};
                        });

    CsvFile csv(cfg.out, !cfg.no_timestamp);
    csv.row({"field", "character", "T", "center_re", "center_im", "radius", "eta_factor",
             "wall_time_ms"});
    for (const auto& r : rows)
        csv.row({r.field, r.character, csv_number(cfg.T), csv_number(r.re), csv_number(r.im),
                 csv_number(r.radius), csv_number(r.eta), csv_number(r.ms)});
    if (!cfg.plot_path.empty()) {
        PlotFile plot(cfg.plot_path, !cfg.no_timestamp);
        for (const auto& r : rows) plot.point(r.disc_abs, r.re);
    }
    return 0;
}

int run_siegel_scan(const JobConfig& cfg) {
    std::vector<long long> ds;
    std::vector<bool> warn;
    if (!cfg.d_list.empty()) {
        for (long long d : cfg.d_list) {
            ds.push_back(d);
            warn.push_back(!is_fundamental_discriminant(d));
        }
    } else {
        if (cfg.d_min == 0 && cfg.d_max == 0)
            throw config_error("siegel-scan needs --d-min/--d-max or a d_list");
        if (cfg.d_min > cfg.d_max) throw config_error("d_min must not exceed d_max");
        for (long long d = cfg.d_min; d <= cfg.d_max; ++d)
            if (is_fundamental_discriminant(d)) {
                ds.push_back(d);
                warn.push_back(false);
            }
    }

    struct Row {
        std::optional<double> beta;
        bool anomaly = false;
        double L1 = 0.0;
        double ms = 0.0;
    };
    std::vector<Row> rows(ds.size());
    parallel_options popts{cfg.workers};
    parallel_for_chunks(ds.size(), popts.resolve(), [&](std::size_t i) {
        if (warn[i]) return;
        QuadraticCharSpec qs(ds[i]);
        auto t0 = std::chrono::steady_clock::now();
        SiegelScan scan = find_siegel_zero(qs);
        rows[i].beta = scan.beta;
        rows[i].anomaly = scan.anomaly;
        rows[i].L1 = dirichlet_L_real(qs, 1.0);
        rows[i].ms = cfg.no_timestamp ? 0.0 : elapsed_ms(t0);
    });

    CsvFile csv(cfg.out, !cfg.no_timestamp);
    csv.row({"d", "q", "beta_or_none", "eta_plain", "stark_floor_value", "scan_time_ms"});
    long long zeros = 0, scanned = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        long long q = ds[i] < 0 ? -ds[i] : ds[i];
        if (warn[i]) {
            csv.row({csv_number(ds[i]), csv_number(q), "warning:not-fundamental", "", "", ""});
            continue;
        }
        ++scanned;
        const Row& r = rows[i];
        std::string beta_cell = r.beta ? csv_number(*r.beta) : "none";
        if (r.anomaly) beta_cell += ";anomaly";
        double ep = r.beta ? eta_plain(*r.beta, static_cast<double>(q)) : 0.0;
        if (r.beta) ++zeros;
        csv.row({csv_number(ds[i]), csv_number(q), beta_cell, csv_number(ep),
                 csv_number(stark_floor(1.0, static_cast<double>(q), 1)), csv_number(r.ms)});
    }
    csv.comment("zeros found: " + std::to_string(zeros) + " of " + std::to_string(scanned) +
                " fundamental discriminants scanned");
    if (!cfg.plot_path.empty()) {
        PlotFile plot(cfg.plot_path, !cfg.no_timestamp);
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (!warn[i]) plot.point(static_cast<double>(ds[i]), rows[i].L1);
    }
    std::cout << "siegel-scan: " << zeros << " zeros in " << scanned << " discriminants\n";
    return 0;
}

int run_verify_bounds(const JobConfig& cfg) {
    std::vector<FieldSpec> fields = load_family(cfg);
    JobConfig kcfg = cfg;
    if (kcfg.T < 2) kcfg.T = 1e6;
    KappaOptions opts = make_options(kcfg);

    CsvFile csv(cfg.out, !cfg.no_timestamp);
    csv.row({"field", "character", "envelope", "kappa_abs", "upper_shape", "lower_shape",
             "ratio_hi", "ratio_lo", "D_K", "D_k", "q_chi", "epsilon", "mu", "degree"});

    struct Agg {
        double min_lo = std::numeric_limits<double>::infinity();
        double max_lo = 0.0;
        double min_hi = std::numeric_limits<double>::infinity();
        double max_hi = 0.0;
        long long n = 0;
    };
    std::map<std::string, Agg> agg;
    json basecmp = json::array();
    bool all_no_worse = true;

    for (const FieldSpec& spec : fields) {
        std::string id = cfg.chars.empty() ? default_character(spec) : cfg.chars.front();
        auto chi = VirtualCharacter::irreducible(
            spec.group, static_cast<std::size_t>(spec.group->irr_index(id)));
        if (spec.declared_D_K < 3)
            throw config_error("field '" + spec.id + "' needs a declared D_K >= 3");
        ConductorData data;
        data.q_psi = spec.psi_conductors;
        data.D_K = spec.declared_D_K;
        data.D_k = spec.D_k;
        data.base_degree = spec.base_degree;
        double q_chi = data.q_of(chi);
        double eps = 1.0;  // no exceptional members found at these conductor sizes
        InductionData ind = spec.base_degree == 1 ? induction_over_Q(chi)
                                                  : make_induction(chi, spec.base_degree);
        KappaInterval ki = kappa_estimate(chi, spec, kcfg.T, std::nullopt, opts);
        double kabs = std::abs(ki.center);

        std::vector<EnvelopeReport> reports;
        reports.push_back(disc_envelope(chi, ind, data.D_K, 0));
        reports.push_back(cond_envelope(chi, ind, data.D_k, q_chi, eps));
        CorollaryShapes cs = corollary_envelopes(chi, data, ind, eps);
        reports.push_back(cs.nonexceptional);
        reports.push_back(cs.irreducibles);
        reports.push_back(cs.decomposed);
        if (q_chi > std::exp(1.0)) reports.push_back(grh_envelope(chi, ind, data.D_k, q_chi));

        double muv = mu(chi).value;
        for (EnvelopeReport& r : reports) {
            if (!r.applicable) continue;
            r.set_kappa(kabs);
            csv.row({spec.id, id, r.envelope, csv_number(r.kappa_abs), csv_number(r.upper_shape),
                     csv_number(r.lower_shape), csv_number(r.ratio_hi), csv_number(r.ratio_lo),
                     csv_number(data.D_K), csv_number(data.D_k), csv_number(q_chi),
                     csv_number(eps), csv_number(muv),
                     csv_number(static_cast<long long>(chi.degree()))});
            Agg& a = agg[r.envelope];
            a.min_lo = std::min(a.min_lo, r.ratio_lo);
            a.max_lo = std::max(a.max_lo, r.ratio_lo);
            a.min_hi = std::min(a.min_hi, r.ratio_hi);
            a.max_hi = std::max(a.max_hi, r.ratio_hi);
            ++a.n;
        }

        if (cfg.compare_bases && spec.group->name() == "S3") {
            S3BaseComparison cmp = s3_base_comparison(spec.disc.convert_to<long long>());
            all_no_worse = all_no_worse && cmp.quad_base_no_worse;
            basecmp.push_back({{"field", spec.id},
                               {"d", cmp.d},
                               {"f", cmp.f},
                               {"upper_over_Q", cmp.upper_over_Q},
                               {"upper_over_quad", cmp.upper_over_quad},
                               {"quad_base_no_worse", cmp.quad_base_no_worse}});
        }
    }

    json summary;
    summary["fields"] = fields.size();
    summary["T"] = kcfg.T;
    json envs = json::object();
    for (const auto& [name, a] : agg)
        envs[name] = {{"count", a.n},
                      {"min_ratio_lo", a.min_lo},
                      {"max_ratio_lo", a.max_lo},
                      {"min_ratio_hi", a.min_hi},
                      {"max_ratio_hi", a.max_hi}};
    summary["envelopes"] = envs;
    if (cfg.compare_bases) {
        summary["base_comparison"] = basecmp;
        summary["all_quad_base_no_worse"] = all_no_worse;
    }
    std::ofstream sj(cfg.out + ".summary.json");
    if (!sj) throw config_error("cannot open summary file '" + cfg.out + ".summary.json'");
    sj << summary.dump(2) << "\n";
    return 0;
}

int run_mertens(const JobConfig& cfg) {
    FieldSpec spec = load_field_spec(cfg);
    if (cfg.y < 2 || cfg.x < cfg.y) throw config_error("mertens needs 2 <= y <= x");
    auto t0 = std::chrono::steady_clock::now();
    MertensResult mr = mertens_sum(spec, cfg.y, cfg.x);
    double ms = cfg.no_timestamp ? 0.0 : elapsed_ms(t0);
    CsvFile csv(cfg.out, !cfg.no_timestamp);
    csv.row({"field", "y", "x", "sum", "loglog_diff", "slack", "wall_time_ms"});
    csv.row({spec.id, csv_number(mr.y), csv_number(mr.x), csv_number(mr.sum),
             csv_number(mr.sum - mr.slack), csv_number(mr.slack), csv_number(ms)});
    return 0;
}

int dispatch(const JobConfig& cfg) {
    if (cfg.command == "kappa") return run_kappa(cfg);
    if (cfg.command == "scan-family") return run_scan_family(cfg);
    if (cfg.command == "siegel-scan") return run_siegel_scan(cfg);
    if (cfg.command == "verify-bounds") return run_verify_bounds(cfg);
    if (cfg.command == "mertens") return run_mertens(cfg);
    throw config_error("unknown command '" + cfg.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    JobConfig cfg;
    std::string config_path, T_map_path, chars_csv, d_list_csv;

    CLI::App app{"Artin L-function leading coefficients at s=1: truncated Euler products, "
                 "Siegel-zero scans, and effective bound envelopes"};
    app.require_subcommand(1);

    const std::map<std::string, std::string> sub_help = {
        {"kappa", "leading Laurent coefficient of L(s,chi) at s=1 for one field"},
        {"scan-family", "kappa estimates across a family of fields"},
        {"siegel-scan", "scan real quadratic characters for zeros near s=1"},
        {"verify-bounds", "check kappa against effective bound envelopes"},
        {"mertens", "partial sum of 1/N(p) over prime ideals"},
    };
    std::vector<CLI::App*> subs;
    for (const char* name : {"kappa", "scan-family", "siegel-scan", "verify-bounds", "mertens"}) {
        CLI::App* sub = app.add_subcommand(name, sub_help.at(name));
        sub->add_option("--config", config_path, "job config JSON; flags override its values");
        sub->add_option("--spec", cfg.spec_path, "field spec JSON path");
        sub->add_option("--field", cfg.field_token,
                        "built-in field: rational, quad:<d>, cubic:x3-x-1, cubic:<a>,<b>");
        sub->add_option("--T", cfg.T, "Euler product truncation");
        sub->add_option("--T-map", T_map_path, "JSON file of per-irreducible truncations");
        sub->add_option("--out", cfg.out, "output CSV path");
        sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
        sub->add_flag("--no-timestamp", cfg.no_timestamp,
                      "omit the timestamp header and zero wall-time columns");
        sub->add_flag("--rigorous", cfg.rigorous, "disable the heuristic truncation radius");
        sub->add_option("--trunc-model", cfg.trunc_model, "heuristic, delta-k, or none");
        sub->add_option("--gamma", cfg.gamma, "Euler-Mascheroni constant override");
        sub->add_option("--c1", cfg.c1, "repulsion constant c1");
        sub->add_option("--c2", cfg.c2, "repulsion constant c2");
        sub->add_option("--c3", cfg.c3, "truncation domain constant c3");
        sub->add_option("--c4", cfg.c4, "truncation decay constant c4");
        sub->add_option("--c5", cfg.c5, "truncation scale constant c5");
        sub->add_option("--chars", chars_csv, "comma-separated character ids");
        sub->add_option("--plot", cfg.plot_path, "two-column plot data path");
        if (std::string(name) == "scan-family" || std::string(name) == "verify-bounds") {
            sub->add_option("--family", cfg.family, "quadratic, s3-cubic, or cubic-benchmarks");
            sub->add_option("--bound", cfg.bound, "max |d| for the quadratic family");
            sub->add_option("--count", cfg.count, "size of the s3-cubic family");
        }
        if (std::string(name) == "verify-bounds")
            sub->add_flag("--compare-bases", cfg.compare_bases,
                          "report the resolvent-quadratic base-field comparison");
        if (std::string(name) == "siegel-scan") {
            sub->add_option("--d-min", cfg.d_min, "discriminant range start");
            sub->add_option("--d-max", cfg.d_max, "discriminant range end");
            sub->add_option("--d-list", d_list_csv, "comma-separated discriminants");
        }
        if (std::string(name) == "mertens") {
            sub->add_option("--y", cfg.y, "lower norm cut (exclusive)");
            sub->add_option("--x", cfg.x, "upper norm cut (inclusive)");
        }
        subs.push_back(sub);
    }

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }

        CLI::App* active = app.get_subcommands().front();
        cfg.command = active->get_name();

        if (!config_path.empty()) {
            JobConfig base;
            merge_config_file(base, parse_json_file(config_path));
            if (!base.command.empty() && base.command != cfg.command)
                throw config_error("config file command '" + base.command +
                                   "' disagrees with the subcommand '" + cfg.command + "'");
            // flags given on the command line win over config-file values;
            // not every flag exists on every subcommand
            auto keep = [&](const std::string& flag) {
                const CLI::Option* opt = active->get_option_no_throw(flag);
                return opt != nullptr && opt->count() > 0;
            };
            if (!keep("--spec") && !cfg.spec_inline) {
                cfg.spec_path = base.spec_path;
                cfg.spec_inline = base.spec_inline;
            }
            if (!keep("--field")) cfg.field_token = base.field_token;
            if (!keep("--T")) cfg.T = base.T;
            if (!base.T_map.empty() && T_map_path.empty()) cfg.T_map = base.T_map;
            if (!keep("--out")) cfg.out = base.out;
            if (!keep("--workers")) cfg.workers = base.workers;
            if (!keep("--no-timestamp")) cfg.no_timestamp = base.no_timestamp;
            if (!keep("--rigorous")) cfg.rigorous = base.rigorous;
            if (!keep("--trunc-model")) cfg.trunc_model = base.trunc_model;
            if (!keep("--gamma")) cfg.gamma = base.gamma;
            if (!keep("--c1")) cfg.c1 = base.c1;
            if (!keep("--c2")) cfg.c2 = base.c2;
            if (!keep("--c3")) cfg.c3 = base.c3;
            if (!keep("--c4")) cfg.c4 = base.c4;
            if (!keep("--c5")) cfg.c5 = base.c5;
            if (!keep("--chars")) cfg.chars = base.chars;
            if (!keep("--family") && !base.family.empty()) cfg.family = base.family;
            if (!keep("--bound")) cfg.bound = base.bound ? base.bound : cfg.bound;
            if (!keep("--count")) cfg.count = base.count ? base.count : cfg.count;
            if (!keep("--d-min")) cfg.d_min = base.d_min ? base.d_min : cfg.d_min;
            if (!keep("--d-max")) cfg.d_max = base.d_max ? base.d_max : cfg.d_max;
            if (base.d_list.size() && d_list_csv.empty()) cfg.d_list = base.d_list;
            if (!keep("--y")) cfg.y = base.y ? base.y : cfg.y;
            if (!keep("--x")) cfg.x = base.x ? base.x : cfg.x;
            cfg.siegel_betas = base.siegel_betas;
            cfg.exceptional_psi = base.exceptional_psi;
            if (!keep("--compare-bases")) cfg.compare_bases = base.compare_bases;
            if (!keep("--plot")) cfg.plot_path = base.plot_path;
            cfg.field_list = base.field_list;
        }

        if (!T_map_path.empty()) {
            json j = parse_json_file(T_map_path);
            try {
                cfg.T_map = j.get<std::map<std::string, double>>();
            } catch (const json::exception& e) {
                throw config_error("bad T map in '" + T_map_path + "': " + e.what());
            }
        }
        if (!chars_csv.empty()) {
            cfg.chars.clear();
            std::stringstream ss(chars_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.chars.push_back(tok);
        }
        if (!d_list_csv.empty()) {
            cfg.d_list.clear();
            std::stringstream ss(d_list_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    cfg.d_list.push_back(std::stoll(tok));
                } catch (const std::exception&) {
                    throw config_error("bad discriminant '" + tok + "' in --d-list");
                }
            }
        }

        return dispatch(cfg);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const artin::error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (...) {
        std::cerr << "error: unknown failure\n";
        return 3;
    }
}
