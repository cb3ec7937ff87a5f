// JSON encoding of the library's objects. Every top-level document carries
// "schema": 1. Readers throw JsonError naming the offending field as a JSON
// pointer.
#pragma once

#include <string>

#include <json.hpp>

#include "mstab/klattice.hpp"
#include "mstab/limits.hpp"
#include "mstab/strata.hpp"

namespace mstab::io {

using nlohmann::json;

inline constexpr int kSchema = 1;

struct JsonError : UsageError {
  JsonError(const std::string& pointer, const std::string& what)
      : UsageError("bad JSON at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer(pointer) {}
  std::string pointer;
};

enum class Precision { Exact, Numeric };

json to_json(const Quiver& q);
json to_json(const Heart& h);
// Exact mode: Gaussian rationals as [re_num, re_den, im_num, im_den], other
// exact values as {"exact": text, "approx": [re, im]}; numeric mode: [re, im].
json to_json(const CNum& z, Precision p = Precision::Exact);
json to_json(const CentralCharge& z, Precision p = Precision::Exact);
json to_json(const MultiScaleStab& m, Precision p = Precision::Exact);
json to_json(const LaurentPoly& f);
json to_json(const EnhancedLevelGraph& g);
json to_json(const DoubleCover& c);
json to_json(const IntMatrix& m);
json to_json(const TwistGroupData& t);

Quiver quiver_from_json(const json& j, const std::string& at = "");
Heart heart_from_json(const json& j, const std::string& at = "");
// Accepts [re_num, re_den, im_num, im_den], ["re", "im"] rational strings, or
// a single string such as "1/2-3i".
QComplex qcomplex_from_json(const json& j, const std::string& at = "");
CentralCharge charge_from_json(const json& j, const std::string& at = "");
MultiScaleStab msc_from_json(const json& j, const std::string& at = "");
// label -> [[power, re_num, re_den, im_num, im_den], ...] or label -> "text"
LaurentCharge laurent_from_json(const json& j, const std::string& at = "");

// Parses text, mapping syntax errors to JsonError; checks the schema field
// when present.
json parse_document(const std::string& text);

}  // namespace mstab::io
