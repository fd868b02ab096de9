#include "shafbound/json_io.hpp"

#include <cmath>

namespace shafbound {

std::string rat_str(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

Rat rat_from_str(const std::string& s) {
    const std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw InvalidInput("malformed rational: " + s);
    }
}

Json json_of(const Int& v) { return v.str(); }

Json json_of(const BigFloat& v, int digits) {
    if (!v.finite()) return v.is_inf() ? Json(v.sign() > 0 ? "inf" : "-inf") : Json();
    const double d = v.to_double();
    if (std::isfinite(d)) return d;
    return v.str(digits);
}

Json json_of(const ProjPointQ& p) {
    return Json::array({p.x().str(), p.y().str(), p.z().str()});
}

Json json_of(const TernaryForm& f) {
    Json coeffs = Json::array();
    for (Eigen::Index t = 0; t < f.coeffs().size(); ++t) coeffs.push_back(rat_str(f.coeffs()[t]));
    return Json{{"degree", f.degree()}, {"coeffs", coeffs}};
}

Json json_of(const SUnitQ& u, const PrimeSet& s) {
    Json exps = Json::array();
    for (std::size_t i = 0; i < u.exponents.size(); ++i) {
        if (u.exponents[i] == 0) continue;
        exps.push_back(Json::array({std::to_string(s.primes()[i]), u.exponents[i]}));
    }
    return Json{{"sign", u.sign}, {"exponents", exps}};
}

Json json_of(const PrimeSet& s) {
    Json out = Json::array();
    for (std::uint64_t p : s.primes()) out.push_back(std::to_string(p));
    return out;
}

Json json_of(const EffectiveBound& b) {
    Json out;
    out["base"] = b.base.str();
    if (b.scale != 1) out["scale"] = b.scale.str();
    if (b.exponent.is_exact()) {
        out["exponent"] = b.exponent.value().str();
    } else {
        out["exponent"] = Json{{"ln", b.exponent.ln().str(50)}};
    }
    out["ln_bound"] = json_of(b.ln_bound(), 50);
    out["ln_ln_bound"] = json_of(b.ln_ln_bound(), 50);
    out["provenance"] = Json{{"formula", b.provenance.formula}, {"l", b.provenance.l},
                             {"d_K", b.provenance.d_K},        {"D_K", b.provenance.D_K.str()},
                             {"N_S", b.provenance.N_S.str()},  {"s", b.provenance.s}};
    return out;
}

namespace {

const char* kind_name(PredicateKind k) {
    switch (k) {
        case PredicateKind::Collinear: return "collinear";
        case PredicateKind::Conic: return "conic";
        case PredicateKind::SingularCubic: return "singular_cubic";
    }
    return "?";
}

}  // namespace

Json json_of(const GoodReductionCertificate& cert) {
    Json minors = Json::object();
    for (const auto& m : cert.minors) {
        Json rec{{"subset", m.subset}, {"det", m.det.str()}, {"s_unit", m.factorization.has_value()}};
        if (m.singular_index >= 0) rec["singular_at"] = m.singular_index;
        const char* key = kind_name(m.kind);
        if (!minors.contains(key)) minors[key] = Json::array();
        minors[key].push_back(std::move(rec));
    }
    return Json{{"minors", minors}, {"verdict", cert.verdict}};
}

Json json_of(const BlowupConfig& config) {
    Json pts = Json::array();
    for (const auto& p : config.points()) pts.push_back(json_of(p));
    Json units = Json::array();
    for (std::size_t i = 0; i < config.extra_count(); ++i) {
        const auto [a, b] = config.extra_affine(i);
        units.push_back(Json{{"a", rat_str(a)}, {"b", rat_str(b)}});
    }
    return Json{{"degree", config.degree()}, {"points", pts}, {"extra_coords", units}};
}

Json json_of(const DiscSupport& sup) {
    Json primes = Json::array();
    for (const Int& p : sup.primes) primes.push_back(p.str());
    Json out{{"primes", primes}};
    if (sup.unfactored != 1) out["unfactored_cofactor"] = sup.unfactored.str();
    return out;
}

TernaryForm form_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
        throw InvalidInput("form JSON must carry degree and coeffs");
    const int degree = j.at("degree").get<int>();
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != TernaryForm::term_count(degree))
        throw InvalidInput("form JSON has the wrong number of coefficients");
    VecQ v(TernaryForm::term_count(degree));
    for (Eigen::Index t = 0; t < v.size(); ++t) {
        const auto& c = coeffs[static_cast<std::size_t>(t)];
        if (c.is_string()) {
            v[t] = rat_from_str(c.get<std::string>());
        } else if (c.is_number_integer()) {
            v[t] = Rat(c.get<long long>());
        } else {
            throw InvalidInput("form coefficients must be strings or integers");
        }
    }
    return TernaryForm(degree, std::move(v));
}

ProjPointQ point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw InvalidInput("point JSON must be a 3-element array");
    Int c[3];
    for (int i = 0; i < 3; ++i) {
        const auto& e = j[static_cast<std::size_t>(i)];
        if (e.is_string()) {
            try {
                c[i] = Int(e.get<std::string>());
            } catch (const std::runtime_error&) {
                throw InvalidInput("malformed point coordinate");
            }
        } else if (e.is_number_integer()) {
            c[i] = Int(e.get<long long>());
        } else {
            throw InvalidInput("point coordinates must be strings or integers");
        }
    }
    return ProjPointQ(c[0], c[1], c[2]);
}

}  // namespace shafbound
