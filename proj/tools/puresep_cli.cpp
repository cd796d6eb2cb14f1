// puresep command-line tool. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "puresep/puresep.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2, kInternal = 3 };

struct StateDeleter {
  void operator()(psep_state* s) const { psep_state_destroy(s); }
};
struct ReportDeleter {
  void operator()(psep_report* r) const { psep_report_destroy(r); }
};
struct FactorDeleter {
  void operator()(psep_factorization* f) const { psep_factorization_destroy(f); }
};
struct MeasureDeleter {
  void operator()(psep_measures* m) const { psep_measures_destroy(m); }
};
struct StressDeleter {
  void operator()(psep_stress_report* r) const { psep_stress_destroy(r); }
};
using StatePtr = std::unique_ptr<psep_state, StateDeleter>;
using ReportPtr = std::unique_ptr<psep_report, ReportDeleter>;
using FactorPtr = std::unique_ptr<psep_factorization, FactorDeleter>;
using MeasurePtr = std::unique_ptr<psep_measures, MeasureDeleter>;
using StressPtr = std::unique_ptr<psep_stress_report, StressDeleter>;

/// Thrown to leave a command with a given exit code after printing.
struct ExitRequest {
  int code;
};

int exit_code_for(psep_status s) {
  switch (s) {
    case PSEP_OK: return kOk;
    case PSEP_ERR_NOT_SEPARABLE: return kNegative;
    case PSEP_ERR_CRITERION_DISAGREEMENT:
    case PSEP_ERR_INTERNAL: return kInternal;
    default: return kInputError;
  }
}

[[noreturn]] void die(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw ExitRequest{code};
}

void check_status(psep_status s) {
  if (s != PSEP_OK) {
    die(exit_code_for(s), std::string(psep_status_name(s)) + ": " +
                              psep_last_error());
  }
}

// Fixed-point with the rounding noise of exact zeros removed, so human
// output is stable across platforms.
std::string fmt(double v, int precision = 12) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::abs(v) < 0.5 * std::pow(10.0, -precision)) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string fmt_sci(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

std::string join_one_based(const std::vector<std::size_t>& idx) {
  if (idx.empty()) return "none";
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    s += (k ? ", " : "") + std::to_string(idx[k] + 1);
  }
  return s;
}

json one_based(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (std::size_t i : idx) a.push_back(i + 1);
  return a;
}

std::vector<std::size_t> dims_of(const psep_state* s) {
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < psep_state_num_partites(s); ++i) {
    d.push_back(psep_state_dim(s, i));
  }
  return d;
}

std::string dims_text(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t k = 0; k < d.size(); ++k) {
    s += (k ? "," : "") + std::to_string(d[k]);
  }
  return s;
}

StatePtr load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kInputError, "cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  psep_state* raw = nullptr;
  int normalized = 0;
  check_status(psep_state_parse(buf.str().c_str(), &raw, &normalized));
  if (normalized) {
    std::cerr << "warning: input state was not normalized; rescaled to unit "
                 "norm\n";
  }
  return StatePtr(raw);
}

std::string serialize(const psep_state* s, bool inline_form) {
  std::size_t needed = 0;
  check_status(psep_state_serialize(s, inline_form ? 1 : 0, nullptr, 0, &needed));
  std::string text(needed, '\0');
  check_status(psep_state_serialize(s, inline_form ? 1 : 0, text.data(),
                                    text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

json state_json(const psep_state* s) { return json::parse(serialize(s, true)); }

/// Fields shared by every command's --json document.
json envelope(const char* command, const psep_state* s) {
  json doc;
  doc["command"] = command;
  const char* label = psep_state_label(s);
  doc["label"] = label ? json(label) : json();
  doc["dims"] = dims_of(s);
  return doc;
}

void print_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

void validate_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    die(kInputError, "--tol must be a positive finite number");
  }
}

void print_header(const psep_state* s) {
  const char* label = psep_state_label(s);
  std::cout << "state: " << (label ? label : "(unlabeled)") << " (dims "
            << dims_text(dims_of(s)) << ")\n";
}

// ---- check -------------------------------------------------------------

std::string verdict_text(const psep_partite_verdict& v) {
  if (v.borderline) return "borderline";
  return v.separable ? "separable" : "entangled";
}

int cmd_check(const std::string& file, double tol, bool as_json) {
  validate_tol(tol);
  StatePtr state = load_state(file);
  psep_report* raw = nullptr;
  check_status(psep_check(state.get(), tol, &raw));
  ReportPtr report(raw);

  std::vector<psep_partite_verdict> verdicts;
  std::vector<std::size_t> separable;
  for (std::size_t i = 0; i < psep_report_num_partites(raw); ++i) {
    psep_partite_verdict v{};
    check_status(psep_report_partite(raw, i, &v));
    verdicts.push_back(v);
    if (v.separable) separable.push_back(i);
  }
  const bool fully = psep_report_fully_separable(raw) != 0;
  const bool borderline = psep_report_any_borderline(raw) != 0;
  const std::string result = fully        ? "fully separable"
                             : borderline ? "borderline"
                             : separable.empty() ? "entangled"
                                                 : "partially separable";

  if (as_json) {
    json doc = envelope("check", state.get());
    doc["tolerance"] = tol;
    json parts = json::array();
    for (const auto& v : verdicts) {
      parts.push_back({{"partite", v.partite + 1},
                       {"norm_squared", v.norm_squared},
                       {"target", v.target},
                       {"deficit", v.deficit},
                       {"minor_maximum", v.minor_maximum},
                       {"norm_separable", v.norm_separable != 0},
                       {"minor_separable", v.minor_separable != 0},
                       {"borderline", v.borderline != 0},
                       {"separable", v.separable != 0},
                       {"verdict", verdict_text(v)}});
    }
    doc["partites"] = parts;
    doc["fully_separable"] = fully;
    doc["separable_partites"] = one_based(separable);
    doc["result"] = result;
    print_json(doc);
    return kOk;
  }

  print_header(state.get());
  std::cout << "tolerance: " << fmt_sci(tol) << "\n";
  std::cout << "partite  |xi|^2          target          deficit         "
               "minor_max       verdict\n";
  for (const auto& v : verdicts) {
    char line[256];
    std::snprintf(line, sizeof line, "%-8zu %-15s %-15s %-15s %-15s %s\n",
                  v.partite + 1, fmt(v.norm_squared).c_str(),
                  fmt(v.target).c_str(), fmt(v.deficit).c_str(),
                  fmt(v.minor_maximum).c_str(), verdict_text(v).c_str());
    std::cout << line;
  }
  std::cout << "separable partites: " << join_one_based(separable) << "\n";
  std::cout << "result: " << result << "\n";
  return kOk;
}

// ---- factor ------------------------------------------------------------

int cmd_factor(const std::string& file, double tol, bool as_json) {
  validate_tol(tol);
  StatePtr state = load_state(file);
  psep_factorization* raw = nullptr;
  const psep_status st = psep_factorize(state.get(), tol, &raw);
  FactorPtr factors(raw);

  if (st == PSEP_ERR_NOT_SEPARABLE) {
    psep_report* rraw = nullptr;
    check_status(psep_check_norm(state.get(), tol, &rraw));
    ReportPtr report(rraw);
    std::vector<std::size_t> failing;
    for (std::size_t i = 0; i < psep_report_num_partites(rraw); ++i) {
      psep_partite_verdict v{};
      check_status(psep_report_partite(rraw, i, &v));
      if (!v.separable) failing.push_back(i);
    }
    if (as_json) {
      json doc = envelope("factor", state.get());
      doc["tolerance"] = tol;
      doc["result"] = "not separable";
      doc["failing_partites"] = one_based(failing);
      print_json(doc);
    } else {
      print_header(state.get());
      std::cout << "result: not separable\n";
    }
    std::cerr << "error: not separable; failing partites: "
              << join_one_based(failing) << "\n";
    return kNegative;
  }
  check_status(st);

  const double fid = psep_factorization_fidelity(raw);
  if (as_json) {
    json doc = envelope("factor", state.get());
    doc["tolerance"] = tol;
    json list = json::array();
    for (std::size_t i = 0; i < psep_factorization_count(raw); ++i) {
      json f = state_json(psep_factorization_factor(raw, i));
      f["partite"] = i + 1;
      list.push_back(f);
    }
    doc["factors"] = list;
    doc["fidelity"] = fid;
    doc["result"] = "factorized";
    print_json(doc);
    return kOk;
  }

  print_header(state.get());
  for (std::size_t i = 0; i < psep_factorization_count(raw); ++i) {
    std::cout << "factor " << i + 1 << ": "
              << serialize(psep_factorization_factor(raw, i), true) << "\n";
  }
  std::cout << "fidelity: " << fmt(fid) << "\n";
  std::cout << "result: factorized\n";
  return kOk;
}

// ---- coherence ---------------------------------------------------------

int cmd_coherence(const std::string& file, std::size_t partite, bool as_json) {
  StatePtr state = load_state(file);
  const std::size_t n = psep_state_num_partites(state.get());
  if (partite < 1 || partite > n) {
    die(kInputError, "--partite must be in 1.." + std::to_string(n));
  }
  std::size_t len = 0;
  check_status(psep_coherence_vector(state.get(), partite - 1, nullptr, 0, &len));
  std::vector<double> xi(len);
  check_status(psep_coherence_vector(state.get(), partite - 1, xi.data(),
                                     xi.size(), &len));
  double norm2 = 0.0;
  for (double v : xi) norm2 += v * v;
  const double r = static_cast<double>(psep_state_dim(state.get(), partite - 1));
  const double target = 2.0 * (1.0 - 1.0 / r);

  if (as_json) {
    json doc = envelope("coherence", state.get());
    doc["partite"] = partite;
    doc["coherence_vector"] = xi;
    doc["norm_squared"] = norm2;
    doc["target"] = target;
    print_json(doc);
    return kOk;
  }
  print_header(state.get());
  std::cout << "partite: " << partite << " (r = "
            << psep_state_dim(state.get(), partite - 1) << ")\n";
  std::cout << "xi:";
  for (double v : xi) std::cout << " " << fmt(v);
  std::cout << "\n|xi|^2: " << fmt(norm2) << "\n";
  std::cout << "target: " << fmt(target) << "\n";
  return kOk;
}

// ---- measure -----------------------------------------------------------

int cmd_measure(const std::string& file, bool as_json) {
  StatePtr state = load_state(file);
  psep_measures* raw = nullptr;
  check_status(psep_measure(state.get(), &raw));
  MeasurePtr m(raw);
  std::vector<psep_partite_measure> parts;
  for (std::size_t i = 0; i < psep_measures_num_partites(raw); ++i) {
    psep_partite_measure p{};
    check_status(psep_measures_partite(raw, i, &p));
    parts.push_back(p);
  }

  if (as_json) {
    json doc = envelope("measure", state.get());
    json list = json::array();
    for (const auto& p : parts) {
      list.push_back({{"partite", p.partite + 1},
                      {"deficit", p.deficit},
                      {"linear_entropy", p.linear_entropy},
                      {"von_neumann_bits", p.von_neumann_bits}});
    }
    doc["partites"] = list;
    doc["mean_deficit"] = psep_measures_mean_deficit(raw);
    doc["max_deficit"] = psep_measures_max_deficit(raw);
    doc["mean_von_neumann_bits"] = psep_measures_mean_entropy(raw);
    print_json(doc);
    return kOk;
  }
  print_header(state.get());
  std::cout << "partite  deficit         linear_entropy  von_neumann_bits\n";
  for (const auto& p : parts) {
    char line[256];
    std::snprintf(line, sizeof line, "%-8zu %-15s %-15s %s\n", p.partite + 1,
                  fmt(p.deficit).c_str(), fmt(p.linear_entropy).c_str(),
                  fmt(p.von_neumann_bits).c_str());
    std::cout << line;
  }
  std::cout << "mean deficit: " << fmt(psep_measures_mean_deficit(raw)) << "\n";
  std::cout << "max deficit: " << fmt(psep_measures_max_deficit(raw)) << "\n";
  std::cout << "mean von Neumann entropy (bits): "
            << fmt(psep_measures_mean_entropy(raw)) << "\n";
  return kOk;
}

// ---- gen ---------------------------------------------------------------

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size() || item[0] == '-' || item[0] == '+') {
      die(kInputError, "--dims: '" + item + "' is not a positive integer");
    }
    dims.push_back(v);
  }
  if (dims.empty() || text.back() == ',') {
    die(kInputError, "--dims: expected a comma-separated list such as 2,2,2");
  }
  return dims;
}

int cmd_gen(const std::string& kind_name, const std::string& dims_arg,
            std::uint64_t seed, double eps, const std::string& out) {
  psep_kind kind{};
  check_status(psep_kind_from_name(kind_name.c_str(), &kind));
  const auto dims = parse_dims(dims_arg);
  psep_state* raw = nullptr;
  check_status(
      psep_state_generate(kind, dims.data(), dims.size(), seed, eps, &raw));
  StatePtr state(raw);
  check_status(psep_state_set_label(raw, kind_name.c_str()));
  const std::string text = serialize(raw, false);
  if (out.empty() || out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) die(kInputError, "cannot write '" + out + "'");
  f << text;
  if (!f) die(kInputError, "failed writing '" + out + "'");
  return kOk;
}

// ---- stress ------------------------------------------------------------

int cmd_stress(const std::string& dims_arg, std::size_t samples,
               std::uint64_t seed, double tol, bool as_json) {
  validate_tol(tol);
  if (samples == 0) die(kInputError, "--samples must be positive");
  const auto dims = parse_dims(dims_arg);
  psep_stress_report* raw = nullptr;
  check_status(psep_stress(dims.data(), dims.size(), samples, seed, tol, 0, &raw));
  StressPtr report(raw);
  psep_stress_summary s{};
  check_status(psep_stress_get_summary(raw, &s));
  const psep_state* counter = psep_stress_counterexample(raw);
  const std::string result =
      s.disagreements == 0 ? "no counterexample" : "counterexample found";

  if (as_json) {
    json doc;
    doc["command"] = "stress";
    doc["label"] = json();
    doc["dims"] = dims;
    doc["tolerance"] = tol;
    doc["seed"] = seed;
    doc["samples"] = s.samples;
    doc["agreements"] = s.agreements;
    doc["disagreements"] = s.disagreements;
    doc["per_partite_disagreements"] = s.per_partite_disagreements;
    doc["full_disagreements"] = s.full_disagreements;
    doc["fully_separable_samples"] = s.fully_separable_samples;
    doc["partially_separable_samples"] = s.partially_separable_samples;
    doc["max_separable_deficit"] = finite_or_null(s.max_separable_deficit);
    doc["min_entangled_deficit"] = finite_or_null(s.min_entangled_deficit);
    doc["max_separable_minor"] = finite_or_null(s.max_separable_minor);
    doc["min_entangled_minor"] = finite_or_null(s.min_entangled_minor);
    if (counter) {
      doc["counterexample"] = state_json(counter);
      doc["counterexample_index"] = s.counterexample_index;
    } else {
      doc["counterexample"] = json();
      doc["counterexample_index"] = json();
    }
    doc["result"] = result;
    print_json(doc);
  } else {
    std::cout << "dims: " << dims_text(dims) << "\n";
    std::cout << "samples: " << s.samples << " (seed " << seed << ", tolerance "
              << fmt_sci(tol) << ")\n";
    std::cout << "agreements: " << s.agreements << "/" << s.samples << "\n";
    std::cout << "per-partite disagreements: " << s.per_partite_disagreements
              << "\n";
    std::cout << "full-separability disagreements: " << s.full_disagreements
              << "\n";
    std::cout << "fully separable samples: " << s.fully_separable_samples
              << "\n";
    std::cout << "partially separable samples: "
              << s.partially_separable_samples << "\n";
    std::cout << "max deficit among separable partites: "
              << fmt_sci(s.max_separable_deficit) << "\n";
    std::cout << "min deficit among entangled partites: "
              << fmt_sci(s.min_entangled_deficit) << "\n";
    std::cout << "max scaled minor among separable partites: "
              << fmt_sci(s.max_separable_minor) << "\n";
    std::cout << "min scaled minor among entangled partites: "
              << fmt_sci(s.min_entangled_minor) << "\n";
    if (counter) {
      std::cout << "counterexample (sample " << s.counterexample_index
                << "): " << serialize(counter, true) << "\n";
    }
    std::cout << "result: " << result << "\n";
  }
  return s.disagreements == 0 ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability analysis of pure multipartite quantum states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", psep_version());

  double tol = PSEP_DEFAULT_TOLERANCE;
  bool as_json = false;
  std::string file;

  auto* check = app.add_subcommand("check", "Decide full and partial separability");
  check->add_option("file", file, "State file")->required();
  check->add_option("--tol", tol, "Tolerance");
  check->add_flag("--json", as_json, "Machine-readable output");

  auto* factor = app.add_subcommand("factor", "Factorize a separable state");
  factor->add_option("file", file, "State file")->required();
  factor->add_option("--tol", tol, "Tolerance");
  factor->add_flag("--json", as_json, "Machine-readable output");

  std::size_t partite = 0;
  auto* coherence = app.add_subcommand("coherence", "Print a coherence vector");
  coherence->add_option("file", file, "State file")->required();
  coherence->add_option("--partite", partite, "Partite index, 1-based")
      ->required();
  coherence->add_flag("--json", as_json, "Machine-readable output");

  auto* meas = app.add_subcommand("measure", "Entanglement measures");
  meas->add_option("file", file, "State file")->required();
  meas->add_flag("--json", as_json, "Machine-readable output");

  std::string kind;
  std::string dims;
  std::uint64_t seed = 0;
  std::string out;
  double eps = 1e-6;
  auto* gen = app.add_subcommand("gen", "Generate a state file");
  gen->add_option("--kind", kind, "bell|ghz|w|product|haar|near-product")
      ->required();
  gen->add_option("--dims", dims, "Comma-separated local dimensions")
      ->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out, "Output path (default stdout)");
  gen->add_option("--eps", eps, "Noise scale for near-product");

  std::size_t samples = 1000;
  auto* stress = app.add_subcommand(
      "stress", "Cross-check the criteria against the Schmidt oracle");
  stress->add_option("--dims", dims, "Comma-separated local dimensions")
      ->required();
  stress->add_option("--samples", samples, "Number of random states");
  stress->add_option("--seed", seed, "Random seed");
  stress->add_option("--tol", tol, "Tolerance");
  stress->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return cmd_check(file, tol, as_json);
    if (*factor) return cmd_factor(file, tol, as_json);
    if (*coherence) return cmd_coherence(file, partite, as_json);
    if (*meas) return cmd_measure(file, as_json);
    if (*gen) return cmd_gen(kind, dims, seed, eps, out);
    if (*stress) return cmd_stress(dims, samples, seed, tol, as_json);
  } catch (const ExitRequest& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}
