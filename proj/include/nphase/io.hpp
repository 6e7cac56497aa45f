// io.hpp: JSON specs for states and channels, result rows, CSV/JSON output

#pragma once

#include "nphase/bounds.hpp"
#include "nphase/channels.hpp"
#include "nphase/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nphase {

using json = nlohmann::json;

// A configuration problem, located by a JSON pointer (e.g. "/params/2/beta")
// or, for syntax errors, by line and column.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what);
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Entries are numbers (real) or [re, im] pairs, row by row.
ComplexMatrix matrix_from_json(const json& j, const std::string& pointer);
json matrix_to_json(const ComplexMatrix& m);

struct StateSpec {
  std::string kind;  // fock, coherent, thermal, random, matrix
  DensityOperator state;
  double tail_mass;  // number-basis mass dropped by truncation
  std::optional<cplx> coherent_amplitude;
};

// {"kind": "fock", "n": 3, "dim": 8}
// {"kind": "coherent", "z": [re, im], "dim": 240}        (dim optional)
// {"kind": "thermal", "nbar": 1.0, "dim": 40}            (dim optional)
// {"kind": "random", "dim": 32, "mixed": false, "seed": 7} (seed falls back to `seed`)
// {"kind": "matrix", "matrix": [[...], ...]}
StateSpec state_from_json(const json& j, const std::string& pointer, std::optional<std::uint64_t> seed = std::nullopt);

// {"operators": [matrix, ...], "dim_in": d, "dim_out": d}
// {"preset": "depolarizing", "p": 0.3, "dim": 2}
// {"preset": "phase_damping" | "amplitude_damping", "gamma": 0.2}
// {"preset": "identity", "dim": 3}
KrausSet channel_from_json(const json& j, const std::string& pointer);

// 17 significant digits, '.' separator, independent of the locale.
std::string format_double(double x);

struct SweepRow {
  BoundReport report;
  bool has_entropy_sum = true;
  std::optional<std::uint64_t> seed;
  json metadata = json::object();
};

inline constexpr const char* kCsvHeader = "scenario,alpha,beta,s,t,entropy_sum,bound,slack,seed";

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
json rows_to_json(const std::vector<SweepRow>& rows);
json report_to_json(const BoundReport& r);

}  // namespace nphase
