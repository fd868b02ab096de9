#include "shafbound/ternary_form.hpp"

#include <vector>

namespace shafbound {

TernaryForm::TernaryForm(int degree) : degree_(degree) {
    if (degree < 0) throw InvalidInput("TernaryForm: negative degree");
    coeffs_ = VecQ::Zero(term_count(degree));
}

TernaryForm::TernaryForm(int degree, VecQ coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0) throw InvalidInput("TernaryForm: negative degree");
    if (coeffs_.size() != term_count(degree))
        throw InvalidInput("TernaryForm: coefficient vector has the wrong length");
}

int TernaryForm::index_of(int degree, int i, int j) {
    const int k = degree - i - j;
    if (i < 0 || j < 0 || k < 0) throw InvalidInput("TernaryForm: exponents out of range");
    return (degree - i) * (degree - i + 1) / 2 + (degree - i - j);
}

std::array<int, 3> TernaryForm::exponents_at(int degree, int index) {
    if (index < 0 || index >= term_count(degree))
        throw InvalidInput("TernaryForm: monomial index out of range");
    for (int i = degree; i >= 0; --i) {
        const int block = (degree - i) * (degree - i + 1) / 2;
        const int width = degree - i + 1;
        if (index < block + width) {
            const int j = degree - i - (index - block);
            return {i, j, degree - i - j};
        }
    }
    throw InternalCheck("TernaryForm: index decoding failed");
}

const Rat& TernaryForm::coeff(int i, int j, int k) const {
    if (i + j + k != degree_) throw InvalidInput("TernaryForm: exponents do not sum to the degree");
    return coeffs_[index_of(degree_, i, j)];
}

void TernaryForm::set_coeff(int i, int j, int k, Rat c) {
    if (i + j + k != degree_) throw InvalidInput("TernaryForm: exponents do not sum to the degree");
    coeffs_[index_of(degree_, i, j)] = std::move(c);
}

bool TernaryForm::is_zero() const {
    for (Eigen::Index t = 0; t < coeffs_.size(); ++t)
        if (coeffs_[t] != 0) return false;
    return true;
}

bool TernaryForm::operator==(const TernaryForm& o) const {
    if (degree_ != o.degree_) return false;
    for (Eigen::Index t = 0; t < coeffs_.size(); ++t)
        if (coeffs_[t] != o.coeffs_[t]) return false;
    return true;
}

std::string TernaryForm::str() const {
    std::string out;
    static const char* vars[3] = {"x", "y", "z"};
    for (Eigen::Index t = 0; t < coeffs_.size(); ++t) {
        if (coeffs_[t] == 0) continue;
        const auto e = exponents_at(degree_, static_cast<int>(t));
        std::string term;
        Rat c = coeffs_[t];
        if (c != 1 || (e[0] == 0 && e[1] == 0 && e[2] == 0)) {
            term = c.str();
        }
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            if (!term.empty()) term += "*";
            term += vars[v];
            if (e[v] > 1) term += "^" + std::to_string(e[v]);
        }
        if (out.empty()) {
            out = term;
        } else {
            out += (term.size() && term[0] == '-') ? " - " + term.substr(1) : " + " + term;
        }
    }
    return out.empty() ? "0" : out;
}

namespace {

template <class Scalar>
std::vector<Scalar> power_table(const Scalar& v, int max_exp) {
    std::vector<Scalar> t(static_cast<std::size_t>(max_exp) + 1);
    t[0] = Scalar(1);
    for (int e = 1; e <= max_exp; ++e) t[static_cast<std::size_t>(e)] = t[static_cast<std::size_t>(e - 1)] * v;
    return t;
}

}  // namespace

Rat evaluate(const TernaryForm& f, const Rat& x, const Rat& y, const Rat& z) {
    const int d = f.degree();
    const auto px = power_table(x, d), py = power_table(y, d), pz = power_table(z, d);
    Rat acc = 0;
    for (Eigen::Index t = 0; t < f.coeffs().size(); ++t) {
        if (f.coeffs()[t] == 0) continue;
        const auto e = TernaryForm::exponents_at(d, static_cast<int>(t));
        acc += f.coeffs()[t] * px[static_cast<std::size_t>(e[0])] * py[static_cast<std::size_t>(e[1])] *
               pz[static_cast<std::size_t>(e[2])];
    }
    return acc;
}

Rat evaluate(const TernaryForm& f, const ProjPointQ& p) {
    return evaluate(f, Rat(p.x()), Rat(p.y()), Rat(p.z()));
}

TernaryForm derivative(const TernaryForm& f, int axis) {
    if (axis < 0 || axis > 2) throw InvalidInput("derivative: axis must be 0, 1 or 2");
    if (f.degree() == 0) return TernaryForm(0);
    TernaryForm out(f.degree() - 1);
    for (Eigen::Index t = 0; t < f.coeffs().size(); ++t) {
        if (f.coeffs()[t] == 0) continue;
        auto e = TernaryForm::exponents_at(f.degree(), static_cast<int>(t));
        if (e[static_cast<std::size_t>(axis)] == 0) continue;
        const Rat c = f.coeffs()[t] * Rat(e[static_cast<std::size_t>(axis)]);
        e[static_cast<std::size_t>(axis)] -= 1;
        out.set_coeff(e[0], e[1], e[2], out.coeff(e[0], e[1], e[2]) + c);
    }
    return out;
}

TernaryForm multiply(const TernaryForm& f, const TernaryForm& g) {
    TernaryForm out(f.degree() + g.degree());
    VecQ acc = VecQ::Zero(TernaryForm::term_count(out.degree()));
    for (Eigen::Index a = 0; a < f.coeffs().size(); ++a) {
        if (f.coeffs()[a] == 0) continue;
        const auto ea = TernaryForm::exponents_at(f.degree(), static_cast<int>(a));
        for (Eigen::Index b = 0; b < g.coeffs().size(); ++b) {
            if (g.coeffs()[b] == 0) continue;
            const auto eb = TernaryForm::exponents_at(g.degree(), static_cast<int>(b));
            const int idx = TernaryForm::index_of(out.degree(), ea[0] + eb[0], ea[1] + eb[1]);
            acc[idx] += f.coeffs()[a] * g.coeffs()[b];
        }
    }
    return TernaryForm(out.degree(), std::move(acc));
}

TernaryForm add(const TernaryForm& f, const TernaryForm& g) {
    if (f.degree() != g.degree()) throw InvalidInput("add: degree mismatch");
    return TernaryForm(f.degree(), f.coeffs() + g.coeffs());
}

TernaryForm scale(const Rat& c, const TernaryForm& f) {
    VecQ v = f.coeffs();
    for (Eigen::Index t = 0; t < v.size(); ++t) v[t] *= c;
    return TernaryForm(f.degree(), std::move(v));
}

TernaryForm compose(const TernaryForm& f, const std::array<TernaryForm, 3>& subs) {
    const int e = subs[0].degree();
    if (subs[1].degree() != e || subs[2].degree() != e)
        throw InvalidInput("compose: substitution forms must share one degree");
    const int d = f.degree();
    TernaryForm out(d * e);
    // Cached powers of the substitution forms.
    std::array<std::vector<TernaryForm>, 3> pows;
    for (int v = 0; v < 3; ++v) {
        pows[static_cast<std::size_t>(v)].reserve(static_cast<std::size_t>(d) + 1);
        pows[static_cast<std::size_t>(v)].push_back(TernaryForm(0, VecQ::Ones(1)));
        for (int p = 1; p <= d; ++p)
            pows[static_cast<std::size_t>(v)].push_back(
                multiply(pows[static_cast<std::size_t>(v)].back(), subs[static_cast<std::size_t>(v)]));
    }
    for (Eigen::Index t = 0; t < f.coeffs().size(); ++t) {
        if (f.coeffs()[t] == 0) continue;
        const auto ex = TernaryForm::exponents_at(d, static_cast<int>(t));
        TernaryForm term = multiply(multiply(pows[0][static_cast<std::size_t>(ex[0])],
                                             pows[1][static_cast<std::size_t>(ex[1])]),
                                    pows[2][static_cast<std::size_t>(ex[2])]);
        check_internal(term.degree() == out.degree(), "compose: degree bookkeeping failed");
        out = add(out, scale(f.coeffs()[t], term));
    }
    return out;
}

std::pair<TernaryForm, Rat> primitive_integer_form(const TernaryForm& f) {
    if (f.is_zero()) return {TernaryForm(f.degree()), Rat(0)};
    VecZ ints = clear_to_primitive(f.coeffs());
    // Leading sign convention: first nonzero coefficient positive.
    for (Eigen::Index t = 0; t < ints.size(); ++t) {
        if (ints[t] != 0) {
            if (ints[t] < 0) ints = -ints;
            break;
        }
    }
    VecQ prim(ints.size());
    for (Eigen::Index t = 0; t < ints.size(); ++t) prim[t] = Rat(ints[t]);
    // content = f / primitive, read off at the first nonzero coefficient.
    Rat content = 0;
    for (Eigen::Index t = 0; t < ints.size(); ++t) {
        if (ints[t] != 0) {
            content = f.coeffs()[t] / prim[t];
            break;
        }
    }
    TernaryForm p(f.degree(), std::move(prim));
    check_internal(scale(content, p) == f, "primitive_integer_form: reconstruction failed");
    return {std::move(p), std::move(content)};
}

TernaryForm monomial_form(int degree, int i, int j, Rat c) {
    TernaryForm f(degree);
    f.set_coeff(i, j, degree - i - j, std::move(c));
    return f;
}

}  // namespace shafbound
