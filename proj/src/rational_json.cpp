#include <json.hpp>
#include <sstream>

#include "szego/errors.hpp"
#include "szego/format.hpp"
#include "szego/rational.hpp"

namespace szego {

namespace {

Complex parse_pair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigInvalid("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string pair(Complex c) {
  return "[" + format_double(c.real()) + "," + format_double(c.imag()) + "]";
}

}  // namespace

std::string to_json(const PoleSum& f) {
  std::ostringstream os;
  os << "{\"terms\":[";
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) os << ",";
    first = false;
    os << "{\"pole\":" << pair(t.pole) << ",\"coeffs\":[";
    for (int k = 0; k < t.multiplicity(); ++k) os << (k ? "," : "") << pair(t.coeffs[k]);
    os << "]}";
  }
  os << "]}";
  return os.str();
}

PoleSum pole_sum_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigInvalid(std::string("pole sum: ") + e.what());
  }
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ConfigInvalid("pole sum: missing \"terms\" array");
  std::vector<PoleTerm> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("pole") || !t.contains("coeffs") || !t["coeffs"].is_array())
      throw ConfigInvalid("pole sum: each term needs \"pole\" and \"coeffs\"");
    PoleTerm term{parse_pair(t["pole"]), {}};
    for (const auto& c : t["coeffs"]) term.coeffs.push_back(parse_pair(c));
    if (term.coeffs.empty()) throw ConfigInvalid("pole sum: empty coefficient list");
    terms.push_back(std::move(term));
  }
  try {
    return PoleSum(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid(std::string("pole sum: ") + e.what());
  }
}

}  // namespace szego
