#include "shafbound/quartic.hpp"

#include <algorithm>
#include <random>

#include "shafbound/linalg.hpp"

namespace shafbound {

namespace {

// Exponent triples of degree 7, in the fixed form order.
std::vector<std::array<int, 3>> degree7_monomials() {
    std::vector<std::array<int, 3>> mons;
    for (int t = 0; t < TernaryForm::term_count(7); ++t) mons.push_back(TernaryForm::exponents_at(7, t));
    return mons;
}

Int integer_coeff(const TernaryForm& f, int i, int j, int k) {
    const Rat& c = f.coeff(i, j, k);
    check_internal(den(c) == 1, "macaulay: integer coefficients required");
    return num(c);
}

}  // namespace

Int macaulay_resultant_cubics(const std::array<TernaryForm, 3>& cubics) {
    for (const auto& f : cubics)
        if (f.degree() != 3) throw InvalidInput("macaulay_resultant_cubics: cubics required");

    const auto mons = degree7_monomials();
    const int n = static_cast<int>(mons.size());  // 36
    check_internal(n == 36, "macaulay: expected 36 monomials in degree 7");

    // Row for monomial m: m is divisible by x^3, else y^3, else z^3; the row
    // holds the coefficients of (m / v^3) * F_v over all degree-7 monomials.
    MatZ m(n, n);
    m.setZero();
    std::vector<bool> non_reduced(static_cast<std::size_t>(n), false);
    for (int r = 0; r < n; ++r) {
        const auto [a, b, c] = mons[static_cast<std::size_t>(r)];
        int cls;
        std::array<int, 3> q;
        if (a >= 3) {
            cls = 0;
            q = {a - 3, b, c};
        } else if (b >= 3) {
            cls = 1;
            q = {a, b - 3, c};
        } else {
            cls = 2;
            q = {a, b, c - 3};
        }
        non_reduced[static_cast<std::size_t>(r)] = ((a >= 3) + (b >= 3) + (c >= 3)) >= 2;
        const TernaryForm& f = cubics[static_cast<std::size_t>(cls)];
        for (int t = 0; t < TernaryForm::term_count(3); ++t) {
            const auto e = TernaryForm::exponents_at(3, t);
            const Int coeff = integer_coeff(f, e[0], e[1], e[2]);
            if (coeff == 0) continue;
            const int col = TernaryForm::index_of(7, q[0] + e[0], q[1] + e[1]);
            m(r, col) += coeff;
        }
    }

    std::vector<int> sub;
    for (int r = 0; r < n; ++r)
        if (non_reduced[static_cast<std::size_t>(r)]) sub.push_back(r);
    check_internal(sub.size() == 9, "macaulay: expected 9 non-reduced monomials");
    MatZ minor(9, 9);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
            minor(r, c) = m(sub[static_cast<std::size_t>(r)], sub[static_cast<std::size_t>(c)]);

    const Int d_minor = bareiss_determinant(std::move(minor));
    if (d_minor == 0) throw MacaulayDenominatorZero();
    const Int d_full = bareiss_determinant(std::move(m));
    return exact_div(d_full, d_minor);
}

namespace {

Mat3Z random_unimodular(std::mt19937_64& rng) {
    Mat3Z t;
    t.setZero();
    for (int i = 0; i < 3; ++i) t(i, i) = 1;
    // A few elementary operations keep the entries small and det = +-1.
    static constexpr long kMults[4] = {1, -1, 2, -2};
    const int ops = 4 + static_cast<int>(rng() % 3);
    for (int o = 0; o < ops; ++o) {
        const int i = static_cast<int>(rng() % 3);
        int j = static_cast<int>(rng() % 3);
        if (j == i) j = (j + 1) % 3;
        t.row(i) += Int(kMults[rng() % 4]) * t.row(j);
        if (rng() % 2) t.row(i).swap(t.row(j));
    }
    return t;
}

TernaryForm substitute_linear(const TernaryForm& f, const Mat3Z& t) {
    // f(T x): substitute x_i -> sum_j T(i,j) x_j.
    std::array<TernaryForm, 3> rows = {TernaryForm(1), TernaryForm(1), TernaryForm(1)};
    for (int i = 0; i < 3; ++i) {
        TernaryForm lin(1);
        lin.set_coeff(1, 0, 0, Rat(t(i, 0)));
        lin.set_coeff(0, 1, 0, Rat(t(i, 1)));
        lin.set_coeff(0, 0, 1, Rat(t(i, 2)));
        rows[static_cast<std::size_t>(i)] = lin;
    }
    return compose(f, rows);
}

std::array<TernaryForm, 3> gradient(const TernaryForm& f) {
    return {derivative(f, 0), derivative(f, 1), derivative(f, 2)};
}

}  // namespace

bool cubics_have_common_zero(const std::array<TernaryForm, 3>& cubics) {
    for (const auto& f : cubics)
        if (f.degree() != 3) throw InvalidInput("cubics_have_common_zero: cubics required");
    // Rows: g * F_i for every degree-4 monomial g; columns: the 36 degree-7
    // monomials. Without a common zero the three cubics are a regular
    // sequence, the Artinian quotient vanishes in degree 7, and the map is
    // surjective; with a common zero every combination vanishes there.
    MatZ m(45, 36);
    m.setZero();
    int row = 0;
    for (int cls = 0; cls < 3; ++cls) {
        const TernaryForm& f = cubics[static_cast<std::size_t>(cls)];
        for (int g = 0; g < TernaryForm::term_count(4); ++g) {
            const auto q = TernaryForm::exponents_at(4, g);
            for (int t = 0; t < TernaryForm::term_count(3); ++t) {
                const auto e = TernaryForm::exponents_at(3, t);
                const Int coeff = integer_coeff(f, e[0], e[1], e[2]);
                if (coeff == 0) continue;
                m(row, TernaryForm::index_of(7, q[0] + e[0], q[1] + e[1])) += coeff;
            }
            ++row;
        }
    }
    return rank_of(m) < 36;
}

Rat quartic_discriminant(const TernaryForm& f, const MacaulayOptions& opts) {
    if (f.degree() != 4) throw InvalidInput("quartic_discriminant: degree-4 form required");
    if (f.is_zero()) throw InvalidInput("quartic_discriminant: zero form");

    auto [prim, content] = primitive_integer_form(f);
    // disc(content * prim) = content^27 * disc(prim): the resultant of the
    // partials is homogeneous of degree 9 in each of the three cubics.
    const Rat scale_factor = pow_rat(content, 27);

    std::mt19937_64 rng(opts.seed);
    bool zero_ruled_out = false;
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        TernaryForm g = prim;
        if (attempt > 0) {
            // Unimodular change of coordinates: disc is unchanged
            // (det^36 = 1), only the Macaulay denominator moves.
            Mat3Z t = random_unimodular(rng);
            g = substitute_linear(prim, t);
        }
        try {
            Int res = macaulay_resultant_cubics(gradient(g));
            return scale_factor * Rat(res);
        } catch (const MacaulayDenominatorZero&) {
            // Singular forms can zero the denominator for every coordinate
            // change; the surjectivity test settles those exactly.
            if (!zero_ruled_out) {
                if (cubics_have_common_zero(gradient(prim))) return Rat(0);
                zero_ruled_out = true;
            }
        }
    }
    throw Infeasible("quartic_discriminant: Macaulay denominator vanished for every coordinate change");
}

Rat quartic_primitive_discriminant(const TernaryForm& f, const MacaulayOptions& opts) {
    auto [prim, content] = primitive_integer_form(f);
    if (content == 0) throw InvalidInput("quartic_primitive_discriminant: zero form");
    Rat res = quartic_discriminant(prim, opts);
    check_internal(den(res) == 1, "primitive discriminant: non-integer resultant");
    if (res == 0) return Rat(0);
    const Int reduced = exact_div(num(res), pow_int(Int(2), 14));
    return pow_rat(content, 27) * Rat(reduced);
}

namespace {

// Pollard rho with Brent cycle detection; n odd composite, not a prime power
// caller responsibility. Deterministic constants.
Int pollard_rho(const Int& n) {
    for (std::uint64_t c = 1; c < 64; ++c) {
        Int x(2), y(2), d(1);
        const Int cc(c);
        auto step = [&](const Int& v) { return (v * v + cc) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = mp::gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
    return Int(1);  // give up
}

void factor_into(Int v, std::vector<Int>& primes, Int& unfactored) {
    if (v == 1) return;
    // mpz primality is exact below 64 bits via the deterministic checker
    // and trustworthy (BPSW + MR) far beyond the sizes we keep exact.
    const bool small = v <= std::numeric_limits<std::uint64_t>::max();
    const bool prime = small ? is_prime_u64(v.convert_to<std::uint64_t>())
                             : mpz_probab_prime_p(v.backend().data(), 40) != 0;
    if (prime) {
        primes.push_back(v);
        return;
    }
    if (v.convert_to<double>() > 1e38) {  // beyond what rho handles quickly
        unfactored *= v;
        return;
    }
    Int d = pollard_rho(v);
    if (d == 1 || d == v) {
        unfactored *= v;
        return;
    }
    factor_into(d, primes, unfactored);
    factor_into(v / d, primes, unfactored);
}

}  // namespace

DiscSupport discriminant_support(const Int& value) {
    DiscSupport out;
    if (value == 0) return out;
    Int v = abs(value);
    for (std::uint64_t p = 2; p < 20000; p = (p == 2 ? 3 : p + 2)) {
        if (!is_prime_u64(p)) continue;
        const Int pp(p);
        if (v % pp == 0) {
            out.primes.push_back(pp);
            while (v % pp == 0) v /= pp;
        }
        if (v == 1) break;
    }
    if (v != 1) {
        std::vector<Int> rest;
        factor_into(v, rest, out.unfactored);
        std::sort(rest.begin(), rest.end());
        rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
        out.primes.insert(out.primes.end(), rest.begin(), rest.end());
    }
    std::sort(out.primes.begin(), out.primes.end());
    return out;
}

DoubleCoverRecord double_cover_from_quartic(const TernaryForm& f, const MacaulayOptions& opts) {
    if (f.degree() != 4 || f.is_zero()) throw InvalidInput("double_cover_from_quartic: nonzero quartic required");
    auto [prim, content] = primitive_integer_form(f);
    (void)content;
    Rat disc = quartic_primitive_discriminant(prim, opts);
    if (disc == 0) throw InvalidInput("double_cover_from_quartic: quartic is singular");
    DoubleCoverRecord rec;
    rec.quartic = f;
    rec.equation = "w^2 = f(x0, x1, x2)";
    DiscSupport sup = discriminant_support(num(disc));
    rec.bad_primes = sup.primes;
    if (!std::binary_search(rec.bad_primes.begin(), rec.bad_primes.end(), Int(2))) {
        rec.bad_primes.insert(rec.bad_primes.begin(), Int(2));
    }
    check_internal(sup.unfactored == 1, "double_cover_from_quartic: incomplete discriminant factorization");
    return rec;
}

CubicNet cubic_net_through_7(std::span<const ProjPointQ> points) {
    if (points.size() != 7) throw InvalidInput("cubic_net_through_7: exactly seven points required");
    PositionResult pos = general_position(points);
    if (!pos.ok) throw InvalidInput("cubic_net_through_7: points are not in general position");

    MatZ m(7, 10);
    for (Eigen::Index r = 0; r < 7; ++r) {
        const ProjPointQ& p = points[static_cast<std::size_t>(r)];
        for (int t = 0; t < 10; ++t) {
            const auto e = TernaryForm::exponents_at(3, t);
            m(r, t) = pow_int(p.x(), static_cast<unsigned long>(e[0])) *
                      pow_int(p.y(), static_cast<unsigned long>(e[1])) *
                      pow_int(p.z(), static_cast<unsigned long>(e[2]));
        }
    }
    MatZ basis = kernel_basis(m);
    check_internal(basis.cols() == 3, "cubic_net_through_7: kernel dimension is not 3");

    CubicNet net;
    net.points.assign(points.begin(), points.end());
    for (int c = 0; c < 3; ++c) {
        VecQ coeffs(10);
        for (int t = 0; t < 10; ++t) coeffs[t] = Rat(basis(t, c));
        net.basis[static_cast<std::size_t>(c)] = TernaryForm(3, std::move(coeffs));
        for (const auto& p : net.points)
            check_internal(evaluate(net.basis[static_cast<std::size_t>(c)], p) == 0,
                           "cubic_net_through_7: basis cubic does not vanish at a base point");
    }
    return net;
}

TernaryForm jacobian_sextic(const CubicNet& net) {
    std::array<std::array<TernaryForm, 3>, 3> d;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                derivative(net.basis[static_cast<std::size_t>(i)], j);

    auto minor2 = [&](int r1, int r2, int c1, int c2) {
        return add(multiply(d[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)],
                            d[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)]),
                   scale(Rat(-1), multiply(d[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c2)],
                                           d[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c1)])));
    };
    TernaryForm j = add(add(multiply(d[0][0], minor2(1, 2, 1, 2)),
                            scale(Rat(-1), multiply(d[0][1], minor2(1, 2, 0, 2)))),
                        multiply(d[0][2], minor2(1, 2, 0, 1)));
    if (j.is_zero()) throw InternalCheck("jacobian_sextic: net has identically dependent differentials");
    check_internal(j.degree() == 6, "jacobian_sextic: degree bookkeeping failed");
    return j;
}

BranchQuartic branch_quartic(const CubicNet& net) {
    const TernaryForm j = jacobian_sextic(net);
    const TernaryForm j2 = multiply(j, j);  // degree 12, 91 coefficients

    // Columns 0..14: compose(u^a v^b w^c, net) for the degree-4 monomials;
    // column 15: -J^2. A kernel vector is (coeffs of B, c).
    MatQ sys(91, 16);
    for (int t = 0; t < 15; ++t) {
        const auto e = TernaryForm::exponents_at(4, t);
        TernaryForm pulled = compose(monomial_form(4, e[0], e[1]), net.basis);
        check_internal(pulled.degree() == 12, "branch_quartic: pullback degree mismatch");
        for (int r = 0; r < 91; ++r) sys(r, t) = pulled.coeffs()[r];
    }
    for (int r = 0; r < 91; ++r) sys(r, 15) = -j2.coeffs()[r];

    MatZ kernel = kernel_basis(sys);
    check_internal(kernel.cols() == 1, "branch_quartic: solution space dimension is not 1");
    VecZ v = kernel.col(0);
    check_internal(v[15] != 0, "branch_quartic: degenerate solution with c = 0");

    // Normalize: B primitive integer with positive leading coefficient.
    VecZ b_ints = v.head(15);
    Int g = 0;
    for (int t = 0; t < 15; ++t) g = mp::gcd(g, b_ints[t]);
    check_internal(g != 0, "branch_quartic: zero quartic solution");
    int lead_sign = 0;
    for (int t = 0; t < 15; ++t) {
        if (b_ints[t] != 0) {
            lead_sign = b_ints[t] > 0 ? 1 : -1;
            break;
        }
    }
    const Int denom = lead_sign > 0 ? g : -g;
    VecQ b_coeffs(15);
    for (int t = 0; t < 15; ++t) b_coeffs[t] = make_rat(b_ints[t], denom);

    BranchQuartic out;
    out.form = TernaryForm(4, std::move(b_coeffs));
    out.factor = make_rat(v[15], denom);

    // The defining identity, re-verified coefficient by coefficient.
    TernaryForm lhs = compose(out.form, net.basis);
    TernaryForm rhs = scale(out.factor, j2);
    check_internal(lhs == rhs, "branch_quartic: pullback identity violated");
    return out;
}

DpQuarticResult quartic_from_dp_config(const BlowupConfig& config, const MacaulayOptions& opts) {
    if (config.degree() != 2) throw InvalidInput("quartic_from_dp_config: degree-2 configuration required");
    DpQuarticResult res;
    res.net = cubic_net_through_7(config.points());
    res.branch = branch_quartic(res.net);
    res.curve.form = res.branch.form;
    res.curve.discriminant = quartic_primitive_discriminant(res.branch.form, opts);
    check_internal(res.curve.discriminant != 0, "quartic_from_dp_config: branch quartic is singular");
    res.curve.bad_primes = discriminant_support(num(res.curve.discriminant) * den(res.curve.discriminant));
    for (const Int& p : res.curve.bad_primes.primes) {
        const bool in_s = p <= std::numeric_limits<std::uint64_t>::max() &&
                          config.prime_set().contains(p.convert_to<std::uint64_t>());
        if (!in_s && p != 2) res.excess_primes.push_back(p);
    }
    if (res.curve.bad_primes.unfactored != 1) res.excess_primes.push_back(res.curve.bad_primes.unfactored);
    return res;
}

ReductionVerdict good_reduction_verdict(const TernaryForm& f, const PrimeSet& s,
                                        const MacaulayOptions& opts) {
    if (f.degree() != 4 || f.is_zero()) throw InvalidInput("good_reduction_verdict: nonzero quartic required");
    auto [prim, content] = primitive_integer_form(f);
    (void)content;
    ReductionVerdict out;
    out.cover_requires_2 = !s.contains(2);
    Rat disc = quartic_primitive_discriminant(prim, opts);
    if (disc == 0) {
        out.singular = true;
        out.verdict = false;
        return out;
    }
    Int v = abs(num(disc));
    check_internal(den(disc) == 1, "good_reduction_verdict: integer form has non-integer discriminant");
    DiscSupport sup = discriminant_support(v);
    out.support = sup.primes;
    out.unfactored = sup.unfactored;
    out.verdict = sup.unfactored == 1;
    for (const Int& p : sup.primes) {
        const bool in_s = p <= std::numeric_limits<std::uint64_t>::max() &&
                          s.contains(p.convert_to<std::uint64_t>());
        if (!in_s) out.verdict = false;
    }
    return out;
}

long point_count_mod_p(const TernaryForm& f, std::uint64_t p) {
    if (!is_prime_u64(p)) throw InvalidInput("point_count_mod_p: modulus must be prime");
    auto [prim, content] = primitive_integer_form(f);
    (void)content;
    const int d = prim.degree();
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(TernaryForm::term_count(d)));
    bool all_zero = true;
    for (int t = 0; t < TernaryForm::term_count(d); ++t) {
        Int c = num(prim.coeffs()[t]) % Int(p);
        if (c < 0) c += Int(p);
        coeffs[static_cast<std::size_t>(t)] = c.convert_to<std::uint64_t>();
        if (coeffs[static_cast<std::size_t>(t)] != 0) all_zero = false;
    }
    if (all_zero) throw InvalidInput("point_count_mod_p: form vanishes mod p");

    auto eval = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
        std::vector<std::uint64_t> px(static_cast<std::size_t>(d) + 1, 1),
            py(static_cast<std::size_t>(d) + 1, 1), pz(static_cast<std::size_t>(d) + 1, 1);
        for (int e = 1; e <= d; ++e) {
            px[static_cast<std::size_t>(e)] = px[static_cast<std::size_t>(e - 1)] * x % p;
            py[static_cast<std::size_t>(e)] = py[static_cast<std::size_t>(e - 1)] * y % p;
            pz[static_cast<std::size_t>(e)] = pz[static_cast<std::size_t>(e - 1)] * z % p;
        }
        std::uint64_t acc = 0;
        for (int t = 0; t < TernaryForm::term_count(d); ++t) {
            if (coeffs[static_cast<std::size_t>(t)] == 0) continue;
            const auto e = TernaryForm::exponents_at(d, t);
            acc = (acc + coeffs[static_cast<std::size_t>(t)] * px[static_cast<std::size_t>(e[0])] % p *
                             py[static_cast<std::size_t>(e[1])] % p * pz[static_cast<std::size_t>(e[2])]) %
                  p;
        }
        return acc;
    };

    long count = 0;
    for (std::uint64_t y = 0; y < p; ++y)
        for (std::uint64_t z = 0; z < p; ++z)
            if (eval(1, y, z) == 0) ++count;
    for (std::uint64_t z = 0; z < p; ++z)
        if (eval(0, 1, z) == 0) ++count;
    if (eval(0, 0, 1) == 0) ++count;
    return count;
}

QuarticFingerprint equivalence_fingerprint(const TernaryForm& f, const MacaulayOptions& opts) {
    if (f.degree() != 4 || f.is_zero()) throw InvalidInput("equivalence_fingerprint: nonzero quartic required");
    auto [prim, content] = primitive_integer_form(f);
    (void)content;
    Rat disc = quartic_primitive_discriminant(prim, opts);
    if (disc == 0) throw InvalidInput("equivalence_fingerprint: quartic is singular");
    Int v = abs(num(disc));
    QuarticFingerprint fp;
    DiscSupport sup = discriminant_support(v);
    fp.support = sup.primes;
    fp.unfactored = sup.unfactored;
    for (const Int& p : fp.support) {
        long val = 0;
        Int w = v;
        while (w % p == 0) {
            w /= p;
            ++val;
        }
        fp.valuations.push_back(val);
    }
    std::uint64_t p = 2;
    while (fp.point_counts.size() < 5) {
        if (is_prime_u64(p) && v % Int(p) != 0) {
            fp.point_counts.emplace_back(p, point_count_mod_p(prim, p));
        }
        ++p;
    }
    return fp;
}

}  // namespace shafbound
