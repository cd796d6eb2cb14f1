#include "puresep/state_file.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "puresep/error.hpp"

namespace puresep {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorCode::Parse, msg);
}

std::string number(double v) { return json(v).dump(); }

std::string pair(Complex c) {
  return "[" + number(c.real()) + ", " + number(c.imag()) + "]";
}

std::string dims_list(const Dims& dims) {
  std::string s = "[";
  for (std::size_t k = 0; k < dims.size(); ++k) {
    s += (k ? ", " : "") + std::to_string(dims[k]);
  }
  return s + "]";
}

}  // namespace

StateFile read_state_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("state file must be a JSON object");

  if (!doc.contains("dims")) fail("dims: missing field");
  const json& jd = doc["dims"];
  if (!jd.is_array() || jd.empty()) {
    fail("dims: expected a non-empty list of integers");
  }
  std::vector<std::size_t> dims;
  for (const json& d : jd) {
    if (!d.is_number_integer() || d.get<long long>() < 2) {
      fail("dims: every entry must be an integer >= 2");
    }
    dims.push_back(d.get<std::size_t>());
  }
  std::optional<Dims> parsed_dims;
  try {
    parsed_dims.emplace(dims);
  } catch (const Error& e) {
    fail(e.what());
  }

  if (!doc.contains("amplitudes")) fail("amplitudes: missing field");
  const json& ja = doc["amplitudes"];
  if (!ja.is_array()) fail("amplitudes: expected a list of [re, im] pairs");
  if (ja.size() != parsed_dims->total()) {
    fail("amplitudes: length " + std::to_string(ja.size()) +
         " does not match product of dims " +
         std::to_string(parsed_dims->total()));
  }
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(ja.size()));
  for (std::size_t k = 0; k < ja.size(); ++k) {
    const json& p = ja[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      fail("amplitudes[" + std::to_string(k) + "]: expected an [re, im] pair");
    }
    const double re = p[0].get<double>();
    const double im = p[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      fail("amplitudes[" + std::to_string(k) + "]: not finite");
    }
    amps[static_cast<Eigen::Index>(k)] = Complex(re, im);
  }

  std::optional<std::string> label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("label: expected a string");
    label = doc["label"].get<std::string>();
  }

  PureState state(*parsed_dims, std::move(amps));
  bool normalized = false;
  if (!state.is_normalized(kNormalizationTolerance)) {
    state = normalize(state);
    normalized = true;
  }
  return StateFile{std::move(state), std::move(label), normalized};
}

std::string write_state_file(const PureState& state,
                             const std::optional<std::string>& label) {
  std::ostringstream os;
  os << "{\n";
  if (label) os << "  \"label\": " << json(*label).dump() << ",\n";
  os << "  \"dims\": " << dims_list(state.dims()) << ",\n";
  os << "  \"amplitudes\": [\n";
  const auto& a = state.amplitudes();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    os << "    " << pair(a[k]) << (k + 1 < a.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string write_state_inline(const PureState& state) {
  std::string s = "{\"dims\": " + dims_list(state.dims()) + ", \"amplitudes\": [";
  const auto& a = state.amplitudes();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    s += (k ? ", " : "") + pair(a[k]);
  }
  return s + "]}";
}

}  // namespace puresep
