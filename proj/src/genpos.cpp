#include "shafbound/genpos.hpp"

#include "shafbound/linalg.hpp"
#include "shafbound/ternary_form.hpp"

namespace shafbound {

namespace {

Int monomial_value(const ProjPointQ& p, int i, int j, int k) {
    return pow_int(p.x(), static_cast<unsigned long>(i)) *
           pow_int(p.y(), static_cast<unsigned long>(j)) *
           pow_int(p.z(), static_cast<unsigned long>(k));
}

// Row of evaluations of all degree-d monomials at p, in the form order.
void monomial_row(MatZ& m, Eigen::Index row, int d, const ProjPointQ& p) {
    for (int t = 0; t < TernaryForm::term_count(d); ++t) {
        const auto e = TernaryForm::exponents_at(d, t);
        m(row, t) = monomial_value(p, e[0], e[1], e[2]);
    }
}

// Row of d/d(axis) of all degree-d monomials, evaluated at p.
void derivative_row(MatZ& m, Eigen::Index row, int d, int axis, const ProjPointQ& p) {
    for (int t = 0; t < TernaryForm::term_count(d); ++t) {
        auto e = TernaryForm::exponents_at(d, t);
        const int power = e[static_cast<std::size_t>(axis)];
        if (power == 0) {
            m(row, t) = 0;
            continue;
        }
        e[static_cast<std::size_t>(axis)] -= 1;
        m(row, t) = Int(power) * monomial_value(p, e[0], e[1], e[2]);
    }
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
template <class Fn>
bool for_each_subset(int n, int k, Fn fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!fn(idx)) return false;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

DetResult collinear(const ProjPointQ& p, const ProjPointQ& q, const ProjPointQ& r) {
    Mat3Z m;
    m.row(0) = p.coords().transpose();
    m.row(1) = q.coords().transpose();
    m.row(2) = r.coords().transpose();
    Int d = determinant3(m);
    return {d == 0, std::move(d)};
}

DetResult conic_determinant(std::span<const ProjPointQ> six) {
    if (six.size() != 6) throw InvalidInput("conic_determinant: exactly six points required");
    MatZ m(6, 6);
    for (Eigen::Index r = 0; r < 6; ++r) monomial_row(m, r, 2, six[static_cast<std::size_t>(r)]);
    Int d = bareiss_determinant(std::move(m));
    return {d == 0, std::move(d)};
}

DetResult singular_cubic_exists(std::span<const ProjPointQ> eight, int i) {
    if (eight.size() != 8) throw InvalidInput("singular_cubic_exists: exactly eight points required");
    if (i < 0 || i >= 8) throw InvalidInput("singular_cubic_exists: index out of range");
    MatZ m(10, 10);
    Eigen::Index r = 0;
    for (int j = 0; j < 8; ++j) {
        if (j == i) continue;
        monomial_row(m, r++, 3, eight[static_cast<std::size_t>(j)]);
    }
    for (int axis = 0; axis < 3; ++axis) derivative_row(m, r++, 3, axis, eight[static_cast<std::size_t>(i)]);
    Int d = bareiss_determinant(std::move(m));
    return {d == 0, std::move(d)};
}

PositionResult general_position(std::span<const ProjPointQ> pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 1 || n > 8) throw InvalidInput("general_position: between 1 and 8 points required");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (pts[static_cast<std::size_t>(a)] == pts[static_cast<std::size_t>(b)])
                throw InvalidInput("general_position: duplicate points");

    PositionResult res;
    auto fail = [&](PredicateKind kind, const std::vector<int>& subset, int sing, Int det) {
        res.ok = false;
        res.witness = PositionWitness{kind, subset, sing, std::move(det)};
        return false;
    };

    bool fine = for_each_subset(n, std::min(n, 3), [&](const std::vector<int>& s) {
        if (s.size() < 3) return true;
        DetResult d = collinear(pts[static_cast<std::size_t>(s[0])], pts[static_cast<std::size_t>(s[1])],
                                pts[static_cast<std::size_t>(s[2])]);
        return d.degenerate ? fail(PredicateKind::Collinear, s, -1, std::move(d.det)) : true;
    });
    if (!fine) return res;

    if (n >= 6) {
        fine = for_each_subset(n, 6, [&](const std::vector<int>& s) {
            std::vector<ProjPointQ> sub;
            sub.reserve(6);
            for (int ix : s) sub.push_back(pts[static_cast<std::size_t>(ix)]);
            DetResult d = conic_determinant(sub);
            return d.degenerate ? fail(PredicateKind::Conic, s, -1, std::move(d.det)) : true;
        });
        if (!fine) return res;
    }

    if (n == 8) {
        std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
        for (int i = 0; i < 8; ++i) {
            DetResult d = singular_cubic_exists(pts, i);
            if (d.degenerate) {
                fail(PredicateKind::SingularCubic, all, i, std::move(d.det));
                return res;
            }
        }
    }
    return res;
}

}  // namespace shafbound
