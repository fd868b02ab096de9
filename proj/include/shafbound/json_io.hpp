#ifndef SHAFBOUND_JSON_IO_HPP
#define SHAFBOUND_JSON_IO_HPP

#include <json.hpp>

#include "shafbound/bounds.hpp"
#include "shafbound/delpezzo.hpp"
#include "shafbound/quartic.hpp"
#include "shafbound/sunit.hpp"
#include "shafbound/ternary_form.hpp"

namespace shafbound {

using Json = nlohmann::json;

// Potentially large values travel as decimal strings; only ln_* fields are
// floating point.

std::string rat_str(const Rat& r);              // "num/den", or "num" when den == 1
Rat rat_from_str(const std::string& s);

Json json_of(const Int& v);                     // decimal string
Json json_of(const BigFloat& v, int digits);    // JSON number when double-exact enough, else string
Json json_of(const ProjPointQ& p);              // ["x","y","z"]
Json json_of(const TernaryForm& f);             // {"degree": d, "coeffs": [...]}
Json json_of(const SUnitQ& u, const PrimeSet& s);
Json json_of(const PrimeSet& s);
Json json_of(const EffectiveBound& b);
Json json_of(const GoodReductionCertificate& cert);
Json json_of(const BlowupConfig& config);
Json json_of(const DiscSupport& sup);

TernaryForm form_from_json(const Json& j);
ProjPointQ point_from_json(const Json& j);

}  // namespace shafbound

#endif
