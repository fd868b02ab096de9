#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "shafbound/bounds.hpp"
#include "shafbound/delpezzo.hpp"
#include "shafbound/json_io.hpp"
#include "shafbound/parallel.hpp"
#include "shafbound/quartic.hpp"
#include "shafbound/sunit.hpp"

namespace sb = shafbound;
using sb::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct OutputSink {
    std::string json_file;

    void emit(const Json& result, const Json& manifest) const {
        Json full = result;
        full["manifest"] = manifest;
        const std::string text = full.dump(2) + "\n";
        std::cout << text;
        if (!json_file.empty()) {
            std::ofstream out(json_file, std::ios::binary);
            if (!out) throw sb::InvalidInput("cannot open output file: " + json_file);
            out << text;
        }
    }
};

class ManifestClock {
public:
    ManifestClock(std::string subcommand, Json parameters, Json cap = Json())
        : sub_(std::move(subcommand)), params_(std::move(parameters)), cap_(std::move(cap)),
          start_(std::chrono::steady_clock::now()) {}

    Json finish(const Json& result, const Json& paper_bound_ln_ln = Json()) const {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        Json m;
        m["subcommand"] = sub_;
        m["parameters"] = params_;
        m["version"] = kVersion;
        m["cap"] = cap_;
        m["paper_bound_ln_ln"] = paper_bound_ln_ln;
        m["wall_clock_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        m["digest"] = sb::fnv1a64_hex(result.dump());
        return m;
    }

private:
    std::string sub_;
    Json params_;
    Json cap_;
    std::chrono::steady_clock::time_point start_;
};

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sb::InvalidInput("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw sb::InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

sb::FieldInvariants invariants_from(std::int64_t dk, const std::string& disc, const std::string& ns,
                                    std::int64_t s) {
    sb::FieldInvariants inv;
    inv.d_K = dk;
    try {
        inv.D_K = sb::Int(disc);
        inv.N_S = sb::Int(ns);
    } catch (const std::runtime_error&) {
        throw sb::InvalidInput("malformed integer argument");
    }
    inv.s = s;
    inv.validate();
    return inv;
}

// ln ln of the unconditional height bound over the rationals for this S,
// null when S is empty (the bound needs a nonempty place set).
Json paper_bound_report(int degree_or_zero, const sb::PrimeSet& s) {
    if (s.empty()) return Json();
    sb::FieldInvariants inv;
    inv.d_K = 1;
    inv.D_K = 1;
    inv.N_S = s.norm();
    inv.s = static_cast<std::int64_t>(s.size());
    sb::BoundsOptions opts;
    opts.force_log = true;  // the report only needs the log view
    sb::EffectiveBound b = degree_or_zero == 0 ? sb::unit_equation_height_bound(1, inv, opts)
                                               : sb::dp_point_height_bound(degree_or_zero, inv, opts);
    return b.ln_ln_bound().to_double();
}

Json solutions_json(const std::vector<sb::Rat>& sols) {
    Json arr = Json::array();
    for (const auto& a : sols) {
        arr.push_back(Json{{"num", sb::num(a).str()},
                           {"den", sb::den(a).str()},
                           {"H", sb::height(a).H.str()}});
    }
    return arr;
}

Json enumeration_json(int degree, const sb::PrimeSet& s, const std::string& cap,
                      const std::vector<sb::EnumeratedConfig>& configs,
                      const std::optional<sb::OrbitReport>& orbits) {
    Json out;
    out["degree"] = degree;
    out["primes"] = sb::json_of(s);
    out["cap"] = cap;
    Json cfgs = Json::array();
    for (const auto& ec : configs) {
        Json c = sb::json_of(ec.config);
        Json cert = sb::json_of(ec.certificate);
        c["minors"] = cert["minors"];
        c["verdict"] = cert["verdict"];
        cfgs.push_back(std::move(c));
    }
    out["configs"] = std::move(cfgs);
    if (orbits) {
        Json os = Json::array();
        for (const auto& orbit : orbits->orbits) {
            os.push_back(Json{{"representative", orbit.representative},
                              {"members", orbit.members},
                              {"size", orbit.members.size()}});
        }
        out["orbits"] = std::move(os);
        out["boundary_escapes"] = orbits->boundary_escapes;
    }
    return out;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact S-unit, del Pezzo configuration and plane quartic toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    OutputSink sink;

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate the explicit height and class-number bounds");
    bounds->require_subcommand(1);
    std::int64_t b_dk = 1, b_s = 1, b_l = 1;
    std::string b_disc = "1", b_ns = "1";
    int b_degree = 4;
    bool b_log_only = false, b_factorial = false;

    auto* lenstra = bounds->add_subcommand("lenstra", "class-number bound (d_K + D_K)^d_K");
    lenstra->add_option("--dk", b_dk, "field degree")->required();
    lenstra->add_option("--disc", b_disc, "absolute discriminant")->required();

    auto* uniteq = bounds->add_subcommand("unit-eq", "unit-equation height bound");
    uniteq->add_option("--l", b_l, "extension degree")->required();
    uniteq->add_option("--dk", b_dk, "field degree")->required();
    uniteq->add_option("--disc", b_disc, "absolute discriminant")->required();
    uniteq->add_option("--ns", b_ns, "norm of S")->required();
    uniteq->add_option("--s", b_s, "cardinality of S")->required();
    uniteq->add_flag("--log-only", b_log_only, "skip the exact exponent path");

    auto* bdp = bounds->add_subcommand("dp", "blow-up point height bound for a del Pezzo degree");
    bdp->add_option("--degree", b_degree, "del Pezzo degree 1..4")->required();
    bdp->add_option("--dk", b_dk, "field degree")->required();
    bdp->add_option("--disc", b_disc, "absolute discriminant")->required();
    bdp->add_option("--ns", b_ns, "norm of S")->required();
    bdp->add_option("--s", b_s, "cardinality of S")->required();
    bdp->add_flag("--log-only", b_log_only, "skip the exact exponent path");

    auto* bsplit = bounds->add_subcommand("splitting", "line splitting-field degree bound");
    bsplit->add_option("--degree", b_degree, "del Pezzo degree 1..4")->required();
    bsplit->add_flag("--factorial", b_factorial, "also report the stated constant 240!");

    // sunit
    auto* sunit = app.add_subcommand("sunit", "S-unit arithmetic");
    sunit->require_subcommand(1);
    auto* solve = sunit->add_subcommand("solve", "solve a + (1-a) = 1 in S-units up to a height cap");
    std::string su_primes, su_cap = "100";
    int su_jobs = 1;
    solve->add_option("--primes", su_primes, "comma-separated primes (may be empty)");
    solve->add_option("--cap", su_cap, "height cap")->required();
    solve->add_option("--jobs", su_jobs, "worker count");
    solve->add_option("--json", sink.json_file, "also write the JSON to this file");

    // dp
    auto* dp = app.add_subcommand("dp", "del Pezzo blow-up configurations");
    dp->require_subcommand(1);
    auto* dpe = dp->add_subcommand("enumerate", "enumerate good-reduction configurations");
    int dp_degree = 4, dp_jobs = 1;
    std::string dp_primes, dp_cap = "100";
    bool dp_dedup = false, dp_allow1 = false;
    dpe->add_option("--degree", dp_degree, "del Pezzo degree 1..4")->required();
    dpe->add_option("--primes", dp_primes, "comma-separated primes (may be empty)");
    dpe->add_option("--cap", dp_cap, "height cap for the unit-equation solutions")->required();
    dpe->add_option("--jobs", dp_jobs, "worker count");
    dpe->add_flag("--dedup", dp_dedup, "partition into orbits");
    dpe->add_flag("--allow-degree-1", dp_allow1, "enable the 8-point degree-1 search");
    dpe->add_option("--json", sink.json_file, "also write the JSON to this file");

    // quartic
    auto* quartic = app.add_subcommand("quartic", "plane quartic discriminants and reduction");
    quartic->require_subcommand(1);
    std::string q_form_file, q_config_file, q_primes;
    std::uint64_t q_seed = 1729;
    auto* qdisc = quartic->add_subcommand("disc", "discriminant of a quartic form");
    qdisc->add_option("--form", q_form_file, "form JSON file")->required();
    qdisc->add_option("--seed", q_seed, "seed for retry coordinate changes");
    auto* qfrom = quartic->add_subcommand("from-points", "branch quartic of a 7-point configuration");
    qfrom->add_option("--config", q_config_file, "JSON file with a 7-point \"points\" array")->required();
    qfrom->add_option("--seed", q_seed, "seed for retry coordinate changes");
    auto* qverd = quartic->add_subcommand("verdict", "good-reduction verdict for a quartic");
    qverd->add_option("--form", q_form_file, "form JSON file")->required();
    qverd->add_option("--primes", q_primes, "comma-separated primes (may be empty)");
    qverd->add_option("--seed", q_seed, "seed for retry coordinate changes");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "enumerate, dedup and convert degree-2 configurations");
    int cat_degree = 2, cat_jobs = 1;
    std::string cat_primes, cat_cap = "100";
    std::uint64_t cat_seed = 1729;
    catalog->add_option("--degree", cat_degree, "del Pezzo degree 1..4")->required();
    catalog->add_option("--primes", cat_primes, "comma-separated primes (may be empty)");
    catalog->add_option("--cap", cat_cap, "height cap")->required();
    catalog->add_option("--jobs", cat_jobs, "worker count");
    catalog->add_option("--seed", cat_seed, "seed for retry coordinate changes");
    bool cat_allow1 = false;
    catalog->add_flag("--allow-degree-1", cat_allow1, "enable the 8-point degree-1 search");
    catalog->add_option("--json", sink.json_file, "also write the JSON to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help/version or the diagnostic
        return code == 0 ? 0 : 2;
    }

    auto parse_cap = [](const std::string& text) {
        try {
            return sb::HeightValue(sb::Int(text));
        } catch (const std::runtime_error&) {
            throw sb::InvalidInput("malformed height cap: " + text);
        }
    };

    if (lenstra->parsed()) {
        sb::FieldInvariants inv = invariants_from(b_dk, b_disc, "1", 0);
        ManifestClock clock("bounds lenstra", Json{{"dk", b_dk}, {"disc", b_disc}});
        Json result;
        result["class_number_bound"] = sb::lenstra_class_number_bound(inv).str();
        result["sharp_bound"] = sb::lenstra_sharp_bound(inv).to_double();
        sink.emit(result, clock.finish(result));
        return 0;
    }
    if (uniteq->parsed() || bdp->parsed()) {
        sb::FieldInvariants inv = invariants_from(b_dk, b_disc, b_ns, b_s);
        sb::BoundsOptions opts;
        opts.force_log = b_log_only;
        const bool is_dp = bdp->parsed();
        Json params = is_dp ? Json{{"degree", b_degree}, {"dk", b_dk}, {"disc", b_disc},
                                   {"ns", b_ns}, {"s", b_s}, {"log_only", b_log_only}}
                            : Json{{"l", b_l}, {"dk", b_dk}, {"disc", b_disc},
                                   {"ns", b_ns}, {"s", b_s}, {"log_only", b_log_only}};
        ManifestClock clock(is_dp ? "bounds dp" : "bounds unit-eq", std::move(params));
        sb::EffectiveBound bound = is_dp ? sb::dp_point_height_bound(b_degree, inv, opts)
                                         : sb::unit_equation_height_bound(b_l, inv, opts);
        Json result = sb::json_of(bound);
        if (is_dp) {
            result["weyl_group_order"] = sb::weyl_group_order(b_degree);
            result["splitting_degree_bound"] = sb::splitting_degree_bound(b_degree);
        }
        sink.emit(result, clock.finish(result));
        return 0;
    }
    if (bsplit->parsed()) {
        ManifestClock clock("bounds splitting", Json{{"degree", b_degree}, {"factorial", b_factorial}});
        Json result;
        result["splitting_degree_bound"] = sb::splitting_degree_bound(b_degree);
        result["weyl_group_order"] = sb::weyl_group_order(b_degree);
        if (b_factorial) result["stated_constant_240_factorial"] = sb::splitting_degree_stated_constant().str();
        sink.emit(result, clock.finish(result));
        return 0;
    }
    if (solve->parsed()) {
        sb::PrimeSet s = sb::PrimeSet::parse(su_primes);
        sb::HeightValue cap = parse_cap(su_cap);
        ManifestClock clock("sunit solve",
                            Json{{"primes", su_primes}, {"cap", su_cap}, {"jobs", su_jobs}}, su_cap);
        std::vector<sb::Rat> sols = sb::solve_unit_equation(s, cap, su_jobs);
        Json result;
        result["primes"] = sb::json_of(s);
        result["cap"] = cap.H.str();
        result["solutions"] = solutions_json(sols);
        const Json paper = paper_bound_report(0, s);
        result["paper_bound_ln_ln"] = paper;
        sink.emit(result, clock.finish(result, paper));
        return 0;
    }
    if (dpe->parsed()) {
        sb::PrimeSet s = sb::PrimeSet::parse(dp_primes);
        sb::HeightValue cap = parse_cap(dp_cap);
        sb::EnumerateOptions opts;
        opts.jobs = dp_jobs;
        opts.allow_degree_1 = dp_allow1;
        ManifestClock clock("dp enumerate",
                            Json{{"degree", dp_degree}, {"primes", dp_primes}, {"cap", dp_cap},
                                 {"jobs", dp_jobs}, {"dedup", dp_dedup}},
                            dp_cap);
        std::vector<sb::EnumeratedConfig> configs = sb::enumerate_configs(dp_degree, s, cap, opts);
        std::optional<sb::OrbitReport> orbits;
        if (dp_dedup) orbits = sb::dedup_orbits(configs, dp_jobs);
        Json result = enumeration_json(dp_degree, s, cap.H.str(), configs, orbits);
        const Json paper = paper_bound_report(dp_degree, s);
        result["paper_bound_ln_ln"] = paper;
        sink.emit(result, clock.finish(result, paper));
        return 0;
    }
    if (qdisc->parsed()) {
        sb::TernaryForm f = sb::form_from_json(load_json_file(q_form_file));
        sb::MacaulayOptions mopts;
        mopts.seed = q_seed;
        ManifestClock clock("quartic disc", Json{{"form", q_form_file}, {"seed", q_seed}});
        sb::Rat disc = sb::quartic_discriminant(f, mopts);
        Json result;
        result["discriminant"] = sb::rat_str(disc);
        result["smooth"] = (disc != 0);
        if (disc != 0) {
            sb::Rat prim = sb::quartic_primitive_discriminant(f, mopts);
            result["primitive_discriminant"] = sb::rat_str(prim);
            result["support"] = sb::json_of(sb::discriminant_support(sb::num(prim) * sb::den(prim)));
        }
        sink.emit(result, clock.finish(result));
        return 0;
    }
    if (qfrom->parsed()) {
        Json cfg = load_json_file(q_config_file);
        if (!cfg.contains("points") || !cfg["points"].is_array() || cfg["points"].size() != 7)
            throw sb::InvalidInput("from-points: expected a 7-element \"points\" array");
        std::vector<sb::ProjPointQ> pts;
        for (const auto& pj : cfg["points"]) pts.push_back(sb::point_from_json(pj));
        sb::MacaulayOptions mopts;
        mopts.seed = q_seed;
        ManifestClock clock("quartic from-points", Json{{"config", q_config_file}, {"seed", q_seed}});
        sb::CubicNet net = sb::cubic_net_through_7(pts);
        sb::BranchQuartic branch = sb::branch_quartic(net);
        sb::Rat disc = sb::quartic_primitive_discriminant(branch.form, mopts);
        Json result;
        result["quartic"] = sb::json_of(branch.form);
        result["pullback_factor"] = sb::rat_str(branch.factor);
        Json net_json = Json::array();
        for (const auto& c : net.basis) net_json.push_back(sb::json_of(c));
        result["net"] = std::move(net_json);
        result["discriminant"] = sb::rat_str(disc);
        if (disc != 0) result["support"] = sb::json_of(sb::discriminant_support(sb::num(disc) * sb::den(disc)));
        sink.emit(result, clock.finish(result));
        return 0;
    }
    if (qverd->parsed()) {
        sb::TernaryForm f = sb::form_from_json(load_json_file(q_form_file));
        sb::PrimeSet s = sb::PrimeSet::parse(q_primes);
        sb::MacaulayOptions mopts;
        mopts.seed = q_seed;
        ManifestClock clock("quartic verdict",
                            Json{{"form", q_form_file}, {"primes", q_primes}, {"seed", q_seed}});
        sb::ReductionVerdict v = sb::good_reduction_verdict(f, s, mopts);
        Json result;
        result["smooth"] = !v.singular;
        Json support = Json::array();
        for (const auto& p : v.support) support.push_back(p.str());
        result["disc_support"] = std::move(support);
        if (v.unfactored != 1) result["unfactored_cofactor"] = v.unfactored.str();
        result["cover_requires_2"] = v.cover_requires_2;
        result["verdict"] = v.verdict;
        sink.emit(result, clock.finish(result));
        return 0;
    }
    if (catalog->parsed()) {
        sb::PrimeSet s = sb::PrimeSet::parse(cat_primes);
        sb::HeightValue cap = parse_cap(cat_cap);
        sb::EnumerateOptions eopts;
        eopts.jobs = cat_jobs;
        eopts.allow_degree_1 = cat_allow1;
        sb::MacaulayOptions mopts;
        mopts.seed = cat_seed;
        ManifestClock clock("catalog",
                            Json{{"degree", cat_degree}, {"primes", cat_primes}, {"cap", cat_cap},
                                 {"jobs", cat_jobs}, {"seed", cat_seed}},
                            cat_cap);
        std::vector<sb::EnumeratedConfig> configs = sb::enumerate_configs(cat_degree, s, cap, eopts);
        sb::OrbitReport orbits = sb::dedup_orbits(configs, cat_jobs);
        Json result = enumeration_json(cat_degree, s, cap.H.str(), configs, orbits);
        if (cat_degree == 2) {
            // One quartic per orbit representative, in orbit order.
            std::vector<int> reps;
            for (const auto& orbit : orbits.orbits) reps.push_back(orbit.representative);
            auto quartics = sb::parallel_map_chunks<Json>(
                reps.size(), cat_jobs, [&](std::size_t begin, std::size_t end) {
                    Json local = Json::array();
                    for (std::size_t i = begin; i < end; ++i) {
                        const auto& cfg = configs[static_cast<std::size_t>(reps[i])].config;
                        sb::DpQuarticResult r = sb::quartic_from_dp_config(cfg, mopts);
                        Json q;
                        q["config_index"] = reps[i];
                        q["quartic"] = sb::json_of(r.curve.form);
                        q["pullback_factor"] = sb::rat_str(r.branch.factor);
                        q["discriminant"] = sb::rat_str(r.curve.discriminant);
                        q["disc_support"] = sb::json_of(r.curve.bad_primes);
                        Json excess = Json::array();
                        for (const auto& p : r.excess_primes) excess.push_back(p.str());
                        q["excess_primes"] = std::move(excess);
                        local.push_back(std::move(q));
                    }
                    return local;
                });
            Json flat = Json::array();
            for (const auto& chunk : quartics)
                for (const auto& q : chunk) flat.push_back(q);
            result["quartics"] = std::move(flat);
        }
        const Json paper = paper_bound_report(cat_degree, s);
        result["paper_bound_ln_ln"] = paper;
        sink.emit(result, clock.finish(result, paper));
        return 0;
    }
    throw sb::InvalidInput("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const sb::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const sb::InternalCheck& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
