#include "shafbound/linalg.hpp"

namespace shafbound {

Echelon bareiss_echelon(MatZ a) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    Echelon e;
    e.swap_sign = 1;
    Int prev = 1;
    Eigen::Index pr = 0;
    for (Eigen::Index col = 0; col < n && pr < m; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = pr; i < m; ++i) {
            if (a(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != pr) {
            a.row(piv).swap(a.row(pr));
            e.swap_sign = -e.swap_sign;
        }
        for (Eigen::Index i = pr + 1; i < m; ++i) {
            for (Eigen::Index j = col + 1; j < n; ++j) {
                a(i, j) = exact_div(a(pr, col) * a(i, j) - a(i, col) * a(pr, j), prev);
            }
            a(i, col) = 0;
        }
        prev = a(pr, col);
        e.pivot_cols.push_back(static_cast<int>(col));
        ++pr;
    }
    e.rank = static_cast<int>(pr);
    e.mat = std::move(a);
    return e;
}

Int bareiss_determinant(MatZ a) {
    check_internal(a.rows() == a.cols(), "bareiss_determinant: matrix must be square");
    const Eigen::Index n = a.rows();
    if (n == 0) return Int(1);
    Echelon e = bareiss_echelon(std::move(a));
    if (e.rank < n) return Int(0);
    // After full elimination the last pivot equals the n x n determinant.
    return Int(e.swap_sign) * e.mat(n - 1, n - 1);
}

int rank_of(const MatZ& a) { return bareiss_echelon(a).rank; }

void make_primitive(VecZ& v, bool normalize_sign) {
    Int g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = mp::gcd(g, v[i]);
    if (g == 0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = exact_div(v[i], g);
    if (normalize_sign) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (v[i] != 0) {
                if (v[i] < 0) v = -v;
                break;
            }
        }
    }
}

VecZ clear_to_primitive(const VecQ& v) {
    Int l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) l = mp::lcm(l, den(v[i]));
    VecZ out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(l);
        check_internal(den(scaled) == 1, "clear_to_primitive: scaling did not clear denominator");
        out[i] = num(scaled);
    }
    make_primitive(out, false);
    return out;
}

namespace {

MatZ rows_to_primitive(const MatQ& m) {
    MatZ out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        VecQ row = m.row(i).transpose();
        out.row(i) = clear_to_primitive(row).transpose();
    }
    return out;
}

}  // namespace

MatZ kernel_basis(const MatZ& m) {
    MatQ q = m.cast<Rat>();
    return kernel_basis(q);
}

MatZ kernel_basis(const MatQ& m) {
    const Eigen::Index n = m.cols();
    // Row scaling leaves the kernel unchanged.
    Echelon e = bareiss_echelon(rows_to_primitive(m));
    std::vector<int> free_cols;
    {
        std::size_t p = 0;
        for (int c = 0; c < static_cast<int>(n); ++c) {
            if (p < e.pivot_cols.size() && e.pivot_cols[p] == c) {
                ++p;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    check_internal(e.rank + static_cast<int>(free_cols.size()) == static_cast<int>(n),
                   "kernel_basis: rank + kernel dimension != cols");
    MatZ basis(n, static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        VecQ v = VecQ::Zero(n);
        v[free_cols[k]] = 1;
        for (int t = e.rank - 1; t >= 0; --t) {
            const int pc = e.pivot_cols[static_cast<std::size_t>(t)];
            Rat s = 0;
            for (Eigen::Index j = pc + 1; j < n; ++j) {
                if (v[j] != 0 && e.mat(t, j) != 0) s += Rat(e.mat(t, j)) * v[j];
            }
            v[pc] = -s / Rat(e.mat(t, pc));
        }
        VecZ w = clear_to_primitive(v);
        if (w[free_cols[k]] < 0) w = -w;
        // Exact re-check against the original matrix.
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Rat s = 0;
            for (Eigen::Index j = 0; j < n; ++j) s += m(i, j) * Rat(w[j]);
            check_internal(s == 0, "kernel_basis: M v != 0");
        }
        basis.col(static_cast<Eigen::Index>(k)) = w;
    }
    return basis;
}

Mat3Z adjugate(const Mat3Z& m) {
    Mat3Z a;
    a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return a;
}

Int determinant3(const Mat3Z& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace shafbound
