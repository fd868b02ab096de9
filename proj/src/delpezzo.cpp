#include "shafbound/delpezzo.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "shafbound/linalg.hpp"
#include "shafbound/parallel.hpp"

namespace shafbound {

namespace {

std::string points_key(int degree, std::span<const ProjPointQ> pts) {
    std::string k = std::to_string(degree);
    for (const auto& p : pts) {
        k += '|';
        k += p.x().str();
        k += ',';
        k += p.y().str();
        k += ',';
        k += p.z().str();
    }
    return k;
}

void check_degree(int degree) {
    if (degree < 1 || degree > 4) throw InvalidInput("BlowupConfig: degree must be in 1..4");
}

}  // namespace

BlowupConfig BlowupConfig::from_extras(int degree, PrimeSet s, std::vector<std::pair<Rat, Rat>> extras) {
    check_degree(degree);
    if (extras.size() != static_cast<std::size_t>(5 - degree))
        throw InvalidInput("BlowupConfig: wrong number of extra points for the degree");
    BlowupConfig c;
    c.degree_ = degree;
    c.s_ = std::move(s);
    c.points_.assign(standard_frame().begin(), standard_frame().end());
    const Rat one(1);
    for (const auto& [a, b] : extras) {
        if (a == 0 || b == 0 || a == one || b == one)
            throw InvalidInput("BlowupConfig: extra coordinates 0 and 1 are excluded");
        auto fa = is_s_unit(a, c.s_);
        auto fb = is_s_unit(b, c.s_);
        auto fa1 = is_s_unit(one - a, c.s_);
        auto fb1 = is_s_unit(one - b, c.s_);
        if (!fa || !fb || !fa1 || !fb1)
            throw InvalidInput("BlowupConfig: a_i, b_i, 1-a_i, 1-b_i must all be S-units");
        c.points_.push_back(ProjPointQ::from_affine(a, b));
        c.unit_coords_.emplace_back(std::move(*fa), std::move(*fb));
    }
    PositionResult pos = general_position(c.points_);
    if (!pos.ok) throw InvalidInput("BlowupConfig: points are not in general position");
    c.key_ = points_key(degree, c.points_);
    return c;
}

BlowupConfig BlowupConfig::from_points(int degree, PrimeSet s, std::vector<ProjPointQ> points) {
    check_degree(degree);
    if (points.size() != static_cast<std::size_t>(9 - degree))
        throw InvalidInput("BlowupConfig: wrong number of points for the degree");
    for (int i = 0; i < 4; ++i)
        if (points[static_cast<std::size_t>(i)] != standard_frame()[static_cast<std::size_t>(i)])
            throw InvalidInput("BlowupConfig: first four points must be the standard frame");
    std::vector<std::pair<Rat, Rat>> extras;
    extras.reserve(points.size() - 4);
    for (std::size_t i = 4; i < points.size(); ++i) {
        if (!points[i].is_affine())
            throw InvalidInput("BlowupConfig: extra point lies on the line at infinity");
        extras.push_back(points[i].affine());
    }
    return from_extras(degree, std::move(s), std::move(extras));
}

std::pair<Rat, Rat> BlowupConfig::extra_affine(std::size_t i) const {
    return points_.at(4 + i).affine();
}

GoodReductionCertificate certificate_for_points(std::span<const ProjPointQ> pts, const PrimeSet& s) {
    const int n = static_cast<int>(pts.size());
    if (n < 4 || n > 8) throw InvalidInput("certificate_for_points: between 4 and 8 points required");
    GoodReductionCertificate cert;
    cert.verdict = true;

    auto record = [&](PredicateKind kind, std::vector<int> subset, int sing, Int det) {
        MinorRecord rec;
        rec.kind = kind;
        rec.subset = std::move(subset);
        rec.singular_index = sing;
        if (det != 0) rec.factorization = is_s_unit(Rat(det), s);
        rec.det = std::move(det);
        if (!rec.factorization) cert.verdict = false;
        cert.minors.push_back(std::move(rec));
    };

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                DetResult d = collinear(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)],
                                        pts[static_cast<std::size_t>(c)]);
                record(PredicateKind::Collinear, {a, b, c}, -1, std::move(d.det));
            }

    if (n >= 6) {
        std::vector<int> idx{0, 1, 2, 3, 4, 5};
        while (true) {
            std::vector<ProjPointQ> sub;
            sub.reserve(6);
            for (int ix : idx) sub.push_back(pts[static_cast<std::size_t>(ix)]);
            DetResult d = conic_determinant(sub);
            record(PredicateKind::Conic, idx, -1, std::move(d.det));
            int i = 5;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - 6 + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < 6; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    if (n == 8) {
        std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
        for (int i = 0; i < 8; ++i) {
            DetResult d = singular_cubic_exists(pts, i);
            record(PredicateKind::SingularCubic, all, i, std::move(d.det));
        }
    }
    return cert;
}

GoodReductionCertificate integral_general_position(const BlowupConfig& config) {
    return certificate_for_points(config.points(), config.prime_set());
}

std::pair<std::vector<ProjPointQ>, Mat3Z> frame_normalize(std::span<const ProjPointQ> pts,
                                                          const std::array<int, 4>& frame_indices) {
    for (int ix : frame_indices)
        if (ix < 0 || ix >= static_cast<int>(pts.size()))
            throw InvalidInput("frame_normalize: frame index out of range");
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (frame_indices[static_cast<std::size_t>(a)] == frame_indices[static_cast<std::size_t>(b)])
                throw InvalidInput("frame_normalize: repeated frame index");

    // The normalizing map is the inverse of N = [c3 q3 | c2 q2 | c1 q1] where
    // q1..q4 are the indexed points and N (1,1,1)^T is proportional to q4:
    // then N sends the standard frame to q1..q4 in order.
    const ProjPointQ& q1 = pts[static_cast<std::size_t>(frame_indices[0])];
    const ProjPointQ& q2 = pts[static_cast<std::size_t>(frame_indices[1])];
    const ProjPointQ& q3 = pts[static_cast<std::size_t>(frame_indices[2])];
    const ProjPointQ& q4 = pts[static_cast<std::size_t>(frame_indices[3])];
    Mat3Z cols;
    cols.col(0) = q3.coords();
    cols.col(1) = q2.coords();
    cols.col(2) = q1.coords();
    if (determinant3(cols) == 0) throw InvalidInput("frame_normalize: first three frame points collinear");
    Vec3Z lambda = adjugate(cols) * q4.coords();
    if (lambda[0] == 0 || lambda[1] == 0 || lambda[2] == 0)
        throw InvalidInput("frame_normalize: fourth frame point collinear with two others");
    Mat3Z n;
    for (int c = 0; c < 3; ++c) n.col(c) = lambda[c] * cols.col(c);
    Mat3Z t = adjugate(n);

    // Primitive, first nonzero entry positive: deterministic representative.
    VecZ flat(9);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) flat[3 * r + c] = t(r, c);
    make_primitive(flat, true);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t(r, c) = flat[3 * r + c];

    std::vector<ProjPointQ> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(apply(t, p));
    for (int m = 0; m < 4; ++m)
        check_internal(out[static_cast<std::size_t>(frame_indices[static_cast<std::size_t>(m)])] ==
                           standard_frame()[static_cast<std::size_t>(m)],
                       "frame_normalize: frame image mismatch");
    return {std::move(out), std::move(t)};
}

std::vector<ProjPointQ> cremona_points(std::span<const ProjPointQ> pts,
                                       const std::array<int, 3>& base_indices) {
    const int n = static_cast<int>(pts.size());
    std::set<int> base(base_indices.begin(), base_indices.end());
    if (base.size() != 3) throw InvalidInput("cremona: base indices must be distinct");
    for (int ix : base_indices)
        if (ix < 0 || ix >= n) throw InvalidInput("cremona: base index out of range");
    {
        DetResult d = collinear(pts[static_cast<std::size_t>(base_indices[0])],
                                pts[static_cast<std::size_t>(base_indices[1])],
                                pts[static_cast<std::size_t>(base_indices[2])]);
        if (d.degenerate) throw InvalidInput("cremona: base triple is collinear");
    }
    int aux = -1;
    for (int i = 0; i < n; ++i) {
        if (!base.count(i)) {
            aux = i;
            break;
        }
    }
    check_internal(aux >= 0, "cremona: no auxiliary point available");

    // Send base[0], base[1], base[2] to (1:0:0), (0:1:0), (0:0:1): these are
    // frame slots 2, 1, 0 of the standard frame order.
    auto [moved, t] = frame_normalize(pts, {base_indices[2], base_indices[1], base_indices[0], aux});
    std::vector<ProjPointQ> transformed;
    transformed.reserve(pts.size());
    for (int i = 0; i < n; ++i) {
        const ProjPointQ& p = moved[static_cast<std::size_t>(i)];
        if (base.count(i)) {
            transformed.push_back(p);  // base points stay at the triangle
        } else {
            // General position keeps the other points off the triangle lines,
            // so the image below is never the zero triple.
            transformed.emplace_back(p.y() * p.z(), p.x() * p.z(), p.x() * p.y());
        }
    }
    auto [renormed, t2] = frame_normalize(transformed, {0, 1, 2, 3});
    return renormed;
}

BlowupConfig cremona_involution(const BlowupConfig& config, const std::array<int, 3>& base_indices) {
    return BlowupConfig::from_points(config.degree(), config.prime_set(),
                                     cremona_points(config.points(), base_indices));
}

namespace {

struct ExtraCandidate {
    Rat a, b;
    ProjPointQ point;

    ExtraCandidate(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)), point(ProjPointQ::from_affine(a, b)) {}
};

}  // namespace

std::vector<EnumeratedConfig> enumerate_configs(int degree, const PrimeSet& s, const HeightValue& cap,
                                                const EnumerateOptions& opts) {
    check_degree(degree);
    if (degree == 1 && !opts.allow_degree_1)
        throw InvalidInput("enumerate_configs: degree 1 is gated; set allow_degree_1");

    const std::vector<Rat> units = solve_unit_equation(s, cap, opts.jobs);

    // Single-point viability against the frame alone: the minors involving
    // one extra point are a, b, a-b, 1-a, 1-b up to sign, and a, 1-a, b, 1-b
    // are S-units by construction.
    std::vector<ExtraCandidate> cands;
    for (const Rat& a : units) {
        for (const Rat& b : units) {
            if (a == b) continue;
            if (!is_s_unit(a - b, s)) continue;
            cands.emplace_back(a, b);
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const ExtraCandidate& l, const ExtraCandidate& r) { return l.point < r.point; });

    const int k = 5 - degree;
    const int m = static_cast<int>(cands.size());

    std::vector<EnumeratedConfig> out;
    if (k == 1) {
        auto chunks = parallel_map_chunks<std::vector<EnumeratedConfig>>(
            static_cast<std::size_t>(m), opts.jobs, [&](std::size_t begin, std::size_t end) {
                std::vector<EnumeratedConfig> local;
                for (std::size_t i = begin; i < end; ++i) {
                    BlowupConfig c = BlowupConfig::from_extras(degree, s, {{cands[i].a, cands[i].b}});
                    GoodReductionCertificate cert = integral_general_position(c);
                    if (cert.verdict) local.push_back({std::move(c), std::move(cert)});
                }
                return local;
            });
        for (auto& ch : chunks)
            for (auto& e : ch) out.push_back(std::move(e));
    } else {
        // Pairwise compatibility: the triple minors {P_i, P_j, frame_m} must
        // be S-units and the points distinct. Checked once, reused across
        // subsets.
        std::vector<std::vector<bool>> pair_ok(static_cast<std::size_t>(m),
                                               std::vector<bool>(static_cast<std::size_t>(m), false));
        parallel_map_chunks<int>(
            static_cast<std::size_t>(m), opts.jobs, [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
                        if (j == i || cands[i].point == cands[j].point) continue;
                        bool ok = true;
                        for (const auto& f : standard_frame()) {
                            DetResult d = collinear(cands[i].point, cands[j].point, f);
                            if (d.degenerate || !is_s_unit(Rat(d.det), s)) {
                                ok = false;
                                break;
                            }
                        }
                        pair_ok[i][j] = ok;
                    }
                }
                return 0;
            });

        // Unordered k-subsets with all pairs compatible; the surviving sets
        // get the full certificate once and are emitted in every order.
        std::vector<std::vector<int>> subsets;
        std::vector<int> stack;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(stack.size()) == k) {
                subsets.push_back(stack);
                return;
            }
            for (int i = start; i < m; ++i) {
                bool ok = true;
                for (int prev : stack) {
                    if (!pair_ok[static_cast<std::size_t>(prev)][static_cast<std::size_t>(i)]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                stack.push_back(i);
                rec(i + 1);
                stack.pop_back();
            }
        };
        rec(0);

        auto chunks = parallel_map_chunks<std::vector<EnumeratedConfig>>(
            subsets.size(), opts.jobs, [&](std::size_t begin, std::size_t end) {
                std::vector<EnumeratedConfig> local;
                for (std::size_t si = begin; si < end; ++si) {
                    std::vector<int> sel = subsets[si];
                    std::vector<ProjPointQ> pts(standard_frame().begin(), standard_frame().end());
                    for (int ix : sel) pts.push_back(cands[static_cast<std::size_t>(ix)].point);
                    PositionResult pos = general_position(pts);
                    if (!pos.ok) continue;
                    GoodReductionCertificate cert = certificate_for_points(pts, s);
                    if (!cert.verdict) continue;
                    std::sort(sel.begin(), sel.end());
                    do {
                        std::vector<std::pair<Rat, Rat>> extras;
                        for (int ix : sel)
                            extras.emplace_back(cands[static_cast<std::size_t>(ix)].a,
                                                cands[static_cast<std::size_t>(ix)].b);
                        BlowupConfig c = BlowupConfig::from_extras(degree, s, std::move(extras));
                        GoodReductionCertificate cc = integral_general_position(c);
                        local.push_back({std::move(c), std::move(cc)});
                    } while (std::next_permutation(sel.begin(), sel.end()));
                }
                return local;
            });
        for (auto& ch : chunks)
            for (auto& e : ch) out.push_back(std::move(e));
    }

    std::sort(out.begin(), out.end(),
              [](const EnumeratedConfig& a, const EnumeratedConfig& b) { return a.config < b.config; });
    return out;
}

OrbitReport dedup_orbits(std::span<const EnumeratedConfig> configs, int jobs) {
    OrbitReport report;
    if (configs.empty()) return report;
    const int degree = configs[0].config.degree();
    const PrimeSet& s = configs[0].config.prime_set();
    const int n_points = 9 - degree;

    std::map<std::string, int> universe;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (configs[i].config.degree() != degree || !(configs[i].config.prime_set() == s))
            throw InvalidInput("dedup_orbits: configs must share degree and prime set");
        auto [it, fresh] = universe.emplace(configs[i].config.key(), static_cast<int>(i));
        if (!fresh) throw InvalidInput("dedup_orbits: duplicate config key");
    }

    // Base triples, fixed order.
    std::vector<std::array<int, 3>> triples;
    for (int a = 0; a < n_points; ++a)
        for (int b = a + 1; b < n_points; ++b)
            for (int c = b + 1; c < n_points; ++c) triples.push_back({a, b, c});

    // All neighbor keys of one element: every permutation image (renormalized
    // to the frame) and every Cremona image.
    auto neighbor_keys = [&](const BlowupConfig& cfg) {
        const auto& pts = cfg.points();
        std::vector<std::string> keys;
        std::vector<int> perm(static_cast<std::size_t>(n_points));
        for (int i = 0; i < n_points; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::vector<ProjPointQ> arranged;
        arranged.reserve(static_cast<std::size_t>(n_points));
        do {
            arranged.clear();
            for (int ix : perm) arranged.push_back(pts[static_cast<std::size_t>(ix)]);
            auto [normed, t] = frame_normalize(arranged, {0, 1, 2, 3});
            keys.push_back(points_key(degree, normed));
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (const auto& base : triples) keys.push_back(points_key(degree, cremona_points(pts, base)));
        return keys;
    };

    std::vector<bool> visited(configs.size(), false);
    std::set<std::string> escaped;
    for (std::size_t start = 0; start < configs.size(); ++start) {
        if (visited[start]) continue;
        Orbit orbit;
        std::vector<int> frontier{static_cast<int>(start)};
        visited[start] = true;
        orbit.members.push_back(static_cast<int>(start));
        while (!frontier.empty()) {
            // Neighbor generation is the heavy part; fan it out per frontier.
            auto key_lists = parallel_map_chunks<std::vector<std::vector<std::string>>>(
                frontier.size(), jobs, [&](std::size_t begin, std::size_t end) {
                    std::vector<std::vector<std::string>> local;
                    for (std::size_t fi = begin; fi < end; ++fi)
                        local.push_back(neighbor_keys(configs[static_cast<std::size_t>(frontier[fi])].config));
                    return local;
                });
            std::vector<int> next;
            for (const auto& chunk : key_lists) {
                for (const auto& keys : chunk) {
                    for (const auto& k : keys) {
                        auto it = universe.find(k);
                        if (it == universe.end()) {
                            escaped.insert(k);
                            continue;
                        }
                        if (!visited[static_cast<std::size_t>(it->second)]) {
                            visited[static_cast<std::size_t>(it->second)] = true;
                            orbit.members.push_back(it->second);
                            next.push_back(it->second);
                        }
                    }
                }
            }
            frontier = std::move(next);
        }
        std::sort(orbit.members.begin(), orbit.members.end());
        orbit.representative = orbit.members.front();
        report.orbits.push_back(std::move(orbit));
    }
    report.boundary_escapes = escaped.size();
    return report;
}

}  // namespace shafbound
