// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus the measured
// wall time against the budget. Exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sys/wait.h>
#include <functional>
#include <iomanip>
#include <limits>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "shafbound/bounds.hpp"
#include "shafbound/delpezzo.hpp"
#include "shafbound/genpos.hpp"
#include "shafbound/parallel.hpp"
#include "shafbound/quartic.hpp"
#include "shafbound/sunit.hpp"

using namespace shafbound;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

Rat q(long n, long d = 1) { return make_rat(Int(n), Int(d)); }

int jobs_for_host() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 2 : static_cast<int>(std::min(hc, 8u));
}

// ---- criterion 1 -----------------------------------------------------------

void weyl_orders(std::ostringstream& note) {
    require(weyl_group_order(1) == 696729600, "l_1");
    require(weyl_group_order(2) == 2903040, "l_2");
    require(weyl_group_order(3) == 51840, "l_3");
    require(weyl_group_order(4) == 1920, "l_4");
    note << "orders 696729600, 2903040, 51840, 1920";
}

// ---- criterion 2 -----------------------------------------------------------

void bound_evaluation(std::ostringstream& note) {
    FieldInvariants inv;
    inv.d_K = 1;
    inv.D_K = 1;
    inv.N_S = 2;
    inv.s = 1;
    EffectiveBound b = unit_equation_height_bound(1, inv);
    require(b.base == 24, "base must be 24");
    require(b.exponent.is_exact() && b.exponent.value() == 60000, "exponent must be 60000");

    // Independent high-precision value of ln(24^60000), computed here at 512
    // bits and frozen from a 60-digit evaluation: 190683.229820876737...
    BigFloat ln24;
    mpfr_t t;
    mpfr_init2(t, 512);
    mpfr_set_ui(t, 24, MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    mpfr_mul_ui(t, t, 60000, MPFR_RNDN);
    const double independent = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    const double got = b.ln_bound().to_double();
    require(std::abs(got - independent) / independent <= 1e-10, "ln(bound) vs independent evaluation");
    require(std::abs(got - 190683.229820876737) / got <= 1e-10, "ln(bound) to 10 significant digits");

    // Exact and log paths across a 200+ point grid.
    int points = 0;
    for (std::int64_t l : {1, 2, 3, 4})
        for (std::int64_t dk : {1, 2})
            for (long disc : {1L, 5L, 23L})
                for (long ns : {2L, 6L, 30L})
                    for (std::int64_t s : {1, 2, 3}) {
                        FieldInvariants g;
                        g.d_K = dk;
                        g.D_K = disc;
                        g.N_S = ns;
                        g.s = s;
                        EffectiveBound exact = unit_equation_height_bound(l, g);
                        require(exact.exponent.is_exact(), "grid exact path");
                        BoundsOptions lo;
                        lo.force_log = true;
                        EffectiveBound logged = unit_equation_height_bound(l, g, lo);
                        const double a = exact.ln_bound().to_double();
                        const double c = logged.ln_bound().to_double();
                        require(std::abs(a - c) / a <= 1e-9, "grid exact/log agreement");
                        ++points;
                    }
    require(points >= 200, "grid size");
    note << "ln(bound) = " << std::setprecision(16) << got << ", grid points = " << points;
}

// ---- criterion 3 -----------------------------------------------------------

void sunit_solver(std::ostringstream& note) {
    const Int cap(10000);
    {
        std::vector<Rat> sols = solve_unit_equation(PrimeSet({2}), HeightValue(cap));
        std::set<Rat> got(sols.begin(), sols.end());
        require(got == std::set<Rat>{q(-1), q(1, 2), q(2)}, "S={2} solution set");
    }
    PrimeSet s23({2, 3});
    std::vector<Rat> sols = solve_unit_equation(s23, HeightValue(cap));
    std::set<Rat> got(sols.begin(), sols.end());
    require(sols.size() == 21, "S={2,3} must have 21 solutions");
    require(got == oracle::brute_force_unit_equation(s23, cap), "oracle set equality");

    std::set<Rat> orbits;
    for (long rep : {2, 3, 4, 9})
        for (const Rat& a : symmetry_orbit(q(rep))) orbits.insert(a);
    require(got == orbits, "orbit partition of 2, 3, 4, 9");
    note << "21 solutions = orbits of 2, 3, 4, 9; oracle match at cap 10^4";
}

// ---- criterion 4 -----------------------------------------------------------

void degree4_enumeration(std::ostringstream& note) {
    const HeightValue cap(Int(100));
    require(enumerate_configs(4, PrimeSet(), cap).empty(), "S = {} must be empty");
    require(enumerate_configs(4, PrimeSet({2}), cap).empty(), "S = {2} must be empty");

    auto configs = enumerate_configs(4, PrimeSet({2, 3}), cap, {.jobs = jobs_for_host()});
    require(!configs.empty(), "S = {2,3} must be nonempty");
    bool found = false;
    for (const auto& ec : configs) {
        if (ec.config.points()[4] == ProjPointQ(3, 2, 1)) found = true;
        // Re-verify the certificate from scratch.
        require(ec.certificate.verdict, "emitted certificate verdict");
        GoodReductionCertificate fresh = integral_general_position(ec.config);
        require(fresh.verdict, "re-verified verdict");
        require(fresh.minors.size() == ec.certificate.minors.size(), "minor count");
        for (std::size_t i = 0; i < fresh.minors.size(); ++i) {
            require(fresh.minors[i].det == ec.certificate.minors[i].det, "minor determinant");
            require(is_s_unit(Rat(fresh.minors[i].det), ec.config.prime_set()).has_value(),
                    "minor is an S-unit");
        }
    }
    require(found, "frame + (3:2:1) present");
    note << configs.size() << " configs over S={2,3}, all certificates re-verified";
}

// ---- criterion 5 -----------------------------------------------------------

std::size_t check_pullbacks(const std::vector<BlowupConfig>& configs) {
    auto checked = parallel_map_chunks<std::size_t>(
        configs.size(), jobs_for_host(), [&](std::size_t begin, std::size_t end) {
            std::size_t done = 0;
            for (std::size_t i = begin; i < end; ++i) {
                CubicNet net = cubic_net_through_7(configs[i].points());
                BranchQuartic b = branch_quartic(net);
                TernaryForm j = jacobian_sextic(net);
                // 91 exact coefficient equalities, zero tolerance.
                if (!(compose(b.form, net.basis) == scale(b.factor, multiply(j, j))))
                    throw Failure("pullback identity violated");
                ++done;
            }
            return done;
        });
    std::size_t total = 0;
    for (std::size_t c : checked) total += c;
    return total;
}

void pullback_identity(std::ostringstream& note) {
    // The stated catalog: degree 2 over S = {2,3}, cap 100. The full S-unit
    // minor certificate admits no 7-point configuration there (exhaustive,
    // cross-checked by an independent scan), so the identity holds on all of
    // its configurations vacuously.
    auto stated = enumerate_configs(2, PrimeSet({2, 3}), HeightValue(Int(100)),
                                    {.jobs = jobs_for_host()});
    std::size_t stated_checked = 0;
    {
        std::vector<BlowupConfig> cfgs;
        for (const auto& ec : stated) cfgs.push_back(ec.config);
        stated_checked = check_pullbacks(cfgs);
        require(stated_checked == stated.size(), "all stated-catalog configurations checked");
    }

    // Non-vacuous exercise of the same identity: degree-2 configurations over
    // S = {2,3,5,7,11} built from the fixed compatible pair (3,2), (4,3) and
    // every completing third point among the unit-equation candidates.
    PrimeSet wide({2, 3, 5, 7, 11});
    const Rat a5(3), b5(2), a6(4), b6(3);
    std::vector<Rat> units = solve_unit_equation(wide, HeightValue(Int(200)), jobs_for_host());
    std::vector<std::pair<Rat, Rat>> cands;
    for (const Rat& a : units)
        for (const Rat& b : units) {
            if (a == b || !is_s_unit(a - b, wide)) continue;
            if ((a == a5 && b == b5) || (a == a6 && b == b6)) continue;
            cands.emplace_back(a, b);
        }
    auto found_chunks = parallel_map_chunks<std::vector<BlowupConfig>>(
        cands.size(), jobs_for_host(), [&](std::size_t begin, std::size_t end) {
            std::vector<BlowupConfig> local;
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    BlowupConfig c = BlowupConfig::from_extras(
                        2, wide, {{a5, b5}, {a6, b6}, {cands[i].first, cands[i].second}});
                    if (integral_general_position(c).verdict) local.push_back(std::move(c));
                } catch (const InvalidInput&) {
                }
            }
            return local;
        });
    std::vector<BlowupConfig> found;
    for (auto& ch : found_chunks)
        for (auto& c : ch) found.push_back(std::move(c));
    require(found.size() >= 50, "expected at least 50 completing configurations");
    const std::size_t wide_checked = check_pullbacks(found);
    require(wide_checked == found.size(), "all wide-set configurations checked");
    note << "stated {2,3} catalog: " << stated_checked
         << " configs (enumeration is empty there); plus exact identity on " << wide_checked
         << " degree-2 configs over {2,3,5,7,11}";
}

// ---- criterion 6 -----------------------------------------------------------

TernaryForm fermat4() {
    TernaryForm f(4);
    f.set_coeff(4, 0, 0, Rat(1));
    f.set_coeff(0, 4, 0, Rat(1));
    f.set_coeff(0, 0, 4, Rat(1));
    return f;
}

TernaryForm klein4() {
    TernaryForm f(4);
    f.set_coeff(3, 1, 0, Rat(1));
    f.set_coeff(0, 3, 1, Rat(1));
    f.set_coeff(1, 0, 3, Rat(1));
    return f;
}

void discriminant_constants(std::ostringstream& note) {
    require(quartic_discriminant(fermat4()) == Rat(pow_int(Int(2), 54)), "disc(Fermat) = 2^54");

    // The gradient resultant of the Klein quartic is 2^14 * 7^7; its
    // primitive discriminant (universal 2^14 divided out) has support {7}.
    require(quartic_discriminant(klein4()) == Rat(pow_int(Int(2), 14) * pow_int(Int(7), 7)),
            "Res(grad Klein) = 2^14 7^7");
    Rat kd = quartic_primitive_discriminant(klein4());
    DiscSupport sup = discriminant_support(num(kd));
    require(sup.unfactored == 1 && sup.primes == std::vector<Int>{Int(7)}, "Klein support = {7}");

    // Mod-p cross-check for p <= 13: singular somewhere over F_7bar, smooth
    // over every extension tried of the other fields, including p = 2.
    bool seven = false;
    for (int k = 1; k <= 3 && !seven; ++k) seven = oracle::has_singular_point_over(klein4(), 7, k);
    require(seven, "Klein singular over an extension of F_7");
    for (std::uint64_t p : {2ull, 3ull, 5ull, 11ull, 13ull}) {
        for (int k = 1; k <= 2; ++k)
            require(!oracle::has_singular_point_over(klein4(), p, k),
                    "Klein smooth over F_" + std::to_string(p) + "^" + std::to_string(k));
    }

    oracle::Rng rng(161803);
    int done = 0;
    while (done < 20) {
        VecQ v(15);
        for (Eigen::Index t = 0; t < 15; ++t) v[t] = Rat(Int(rng.in(-6, 6)));
        TernaryForm f(4, std::move(v));
        if (f.is_zero()) continue;
        Rat base = quartic_discriminant(f);
        Rat lambda = rng.rational(9, 5);
        if (lambda == 0) continue;
        require(quartic_discriminant(scale(lambda, f)) == pow_rat(lambda, 27) * base,
                "homogeneity lambda^27");

        Mat3Z m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = Int(rng.in(-3, 3));
        if (determinant3(m) == 0) continue;
        std::array<TernaryForm, 3> rows;
        for (int i = 0; i < 3; ++i) {
            TernaryForm lin(1);
            lin.set_coeff(1, 0, 0, Rat(m(i, 0)));
            lin.set_coeff(0, 1, 0, Rat(m(i, 1)));
            lin.set_coeff(0, 0, 1, Rat(m(i, 2)));
            rows[static_cast<std::size_t>(i)] = lin;
        }
        require(quartic_discriminant(compose(f, rows)) == pow_rat(Rat(determinant3(m)), 36) * base,
                "covariance det(M)^36");
        ++done;
    }
    note << "2^54, {7} with mod-p checks, " << done << " homogeneity/covariance instances";
}

// ---- criterion 7 -----------------------------------------------------------

void geometry_oracle(std::ostringstream& note) {
    oracle::Rng rng(271828);
    auto random_point = [&](long h) {
        while (true) {
            Int x(rng.in(-h, h)), y(rng.in(-h, h)), z(rng.in(0, 3) == 0 ? 0 : 1);
            if (x != 0 || y != 0 || z != 0) return ProjPointQ(x, y, z);
        }
    };
    int sets = 0;
    while (sets < 500) {
        // Mix of fully random and planted-degenerate point sets.
        std::vector<ProjPointQ> pts;
        const int kind = sets % 4;
        const long h = kind == 1 ? 3 : 9;
        for (int i = 0; i < 8; ++i) pts.push_back(random_point(h));
        if (kind == 2) {
            // Force three collinear points.
            Int x = pts[0].x() + pts[1].x(), y = pts[0].y() + pts[1].y(),
                z = pts[0].z() + pts[1].z();
            if (x == 0 && y == 0 && z == 0) continue;
            pts[2] = ProjPointQ(x, y, z);
        }
        if (kind == 3) {
            // Put six points on the conic y^2 = xz.
            for (int i = 0; i < 6; ++i) {
                const long t = rng.in(-6, 6);
                pts[static_cast<std::size_t>(i)] = ProjPointQ(Int(1), Int(t), Int(t * t));
            }
        }
        bool distinct = true;
        for (std::size_t a = 0; a < pts.size() && distinct; ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                if (pts[a] == pts[b]) {
                    distinct = false;
                    break;
                }
        if (!distinct) continue;

        // Collinearity vs naive rank of the 3x3 coordinate matrix.
        MatQ tri(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) tri(i, j) = Rat(pts[static_cast<std::size_t>(i)].coords()[j]);
        require(collinear(pts[0], pts[1], pts[2]).degenerate == (oracle::naive_rank(tri) < 3),
                "collinearity agreement");

        // Conic predicate vs naive rank of the 6x6 evaluation matrix.
        MatQ con(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int t = 0; t < 6; ++t) {
                const auto e = TernaryForm::exponents_at(2, t);
                const auto& p = pts[static_cast<std::size_t>(i)];
                con(i, t) = Rat(pow_int(p.x(), static_cast<unsigned long>(e[0])) *
                                pow_int(p.y(), static_cast<unsigned long>(e[1])) *
                                pow_int(p.z(), static_cast<unsigned long>(e[2])));
            }
        std::vector<ProjPointQ> six(pts.begin(), pts.begin() + 6);
        require(conic_determinant(six).degenerate == (oracle::naive_rank(con) < 6),
                "conic agreement");

        // Singular-cubic predicate vs naive rank of the 10x10 matrix.
        const int sing_at = static_cast<int>(rng.below(8));
        MatQ cub(10, 10);
        int row = 0;
        for (int j = 0; j < 8; ++j) {
            if (j == sing_at) continue;
            for (int t = 0; t < 10; ++t) {
                const auto e = TernaryForm::exponents_at(3, t);
                const auto& p = pts[static_cast<std::size_t>(j)];
                cub(row, t) = Rat(pow_int(p.x(), static_cast<unsigned long>(e[0])) *
                                  pow_int(p.y(), static_cast<unsigned long>(e[1])) *
                                  pow_int(p.z(), static_cast<unsigned long>(e[2])));
            }
            ++row;
        }
        for (int axis = 0; axis < 3; ++axis) {
            for (int t = 0; t < 10; ++t) {
                const auto e = TernaryForm::exponents_at(3, t);
                TernaryForm der = derivative(monomial_form(3, e[0], e[1]), axis);
                cub(row, t) = evaluate(der, pts[static_cast<std::size_t>(sing_at)]);
            }
            ++row;
        }
        require(singular_cubic_exists(pts, sing_at).degenerate == (oracle::naive_rank(cub) < 10),
                "singular-cubic agreement");
        ++sets;
    }

    // Cremona: involution plus verdict preservation across every enumerated
    // config of degrees 4 and 3 over S = {2,3}, cap 100 (the degree-3 family
    // is empty there), plus a degree-3 sample over {2,3,5} so the check is
    // not vacuous for 6-point configurations.
    int involutions = 0;
    auto check_family = [&](std::vector<EnumeratedConfig> configs, std::size_t limit) {
        if (configs.size() > limit)
            configs.erase(configs.begin() + static_cast<std::ptrdiff_t>(limit), configs.end());
        if (configs.empty()) return;
        const int n = 9 - configs[0].config.degree();
        for (const auto& ec : configs) {
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c) {
                        BlowupConfig img = cremona_involution(ec.config, {a, b, c});
                        require(integral_general_position(img).verdict, "cremona preserves verdicts");
                        require(cremona_involution(img, {a, b, c}).key() == ec.config.key(),
                                "cremona is an involution");
                        ++involutions;
                    }
        }
    };
    for (int degree : {4, 3}) {
        check_family(enumerate_configs(degree, PrimeSet({2, 3}), HeightValue(Int(100)),
                                       {.jobs = jobs_for_host()}),
                     std::numeric_limits<std::size_t>::max());
    }
    check_family(enumerate_configs(3, PrimeSet({2, 3, 5}), HeightValue(Int(5)),
                                   {.jobs = jobs_for_host()}),
                 200);
    note << "500 random sets, 3 predicates each; " << involutions << " involution checks";
}

// ---- criterion 8 -----------------------------------------------------------

std::string run_catalog_digest(const std::string& params, int jobs) {
    const std::string cmd = std::string(SHAFBOUND_CLI_PATH) + " catalog " + params + " --jobs " +
                            std::to_string(jobs) + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw Failure("cannot launch the CLI");
    std::string out;
    std::array<char, 1 << 16> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) throw Failure("catalog run failed");
    nlohmann::json j = nlohmann::json::parse(out);
    return j["manifest"]["digest"].get<std::string>();
}

void determinism(std::ostringstream& note) {
    // The stated degree-2 catalog, plus a nonempty degree-4 catalog so the
    // comparison covers real enumeration, dedup and serialization work.
    const std::string stated = "--degree 2 --primes 2,3 --cap 100";
    const std::string wide = "--degree 4 --primes 2,3,5 --cap 100";
    const std::string s1 = run_catalog_digest(stated, 1);
    const std::string s3 = run_catalog_digest(stated, 3);
    require(s1 == s3, "stated-catalog digests must agree across --jobs");
    const std::string w1 = run_catalog_digest(wide, 1);
    const std::string w3 = run_catalog_digest(wide, 3);
    require(w1 == w3, "wide-catalog digests must agree across --jobs");
    note << "digests " << s1 << " (degree 2, {2,3}) and " << w1 << " (degree 4, {2,3,5})";
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 weyl-orders", 0.001, weyl_orders},
        {"2 bound-evaluation", 1.0, bound_evaluation},
        {"3 sunit-solver", 5.0, sunit_solver},
        {"4 degree4-enumeration", 30.0, degree4_enumeration},
        {"5 pullback-identity", 600.0, pullback_identity},
        {"6 discriminant-constants", 120.0, discriminant_constants},
        {"7 geometry-oracle", 120.0, geometry_oracle},
        {"8 determinism", 1800.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::ostringstream detail;
        const auto start = Clock::now();
        bool ok = true;
        std::string error;
        try {
            c.body(detail);
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (ok && seconds > c.budget_seconds) {
            ok = false;
            error = "over budget";
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %-26s %9.3fs / %gs  %s\n", ok ? "PASS" : "FAIL",
                    c.name.c_str(), seconds, c.budget_seconds, ok ? detail.str().c_str() : error.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
