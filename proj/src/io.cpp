#include "nphase/io.hpp"

#include "nphase/random.hpp"

#include <charconv>
#include <cmath>

namespace nphase {

namespace {

using Index = Eigen::Index;

const json& field(const json& j, const std::string& pointer, const char* key) {
  if (!j.is_object()) throw ConfigError(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(pointer + "/" + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& pointer) {
  if (!j.is_number()) throw ConfigError(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(pointer, "expected a finite number");
  return v;
}

std::size_t count(const json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(pointer, "expected a non-negative integer");
  return j.get<std::size_t>();
}

cplx complex_value(const json& j, const std::string& pointer) {
  if (j.is_number()) return {number(j, pointer), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], pointer + "/0"), number(j[1], pointer + "/1")};
  throw ConfigError(pointer, "expected a number or a [re, im] pair");
}

std::optional<std::size_t> optional_count(const json& j, const std::string& pointer, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return count(*it, pointer + "/" + key);
}

// Geometric tail (n̄/(1+n̄))^dim of the Bose–Einstein distribution.
double thermal_tail(double nbar, std::size_t dim) {
  if (nbar == 0.0) return 0.0;
  return std::pow(nbar / (1.0 + nbar), static_cast<double>(dim));
}

}  // namespace

ConfigError::ConfigError(const std::string& where, const std::string& what)
    : std::runtime_error((where.empty() ? std::string("config") : where) + ": " + what), where_(where) {}

ComplexMatrix matrix_from_json(const json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) throw ConfigError(pointer, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ConfigError(pointer + "/0", "expected a non-empty row");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = pointer + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(rp, "rows must all have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) = complex_value(j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

StateSpec state_from_json(const json& j, const std::string& pointer, std::optional<std::uint64_t> seed) {
  const json& kind_j = field(j, pointer, "kind");
  if (!kind_j.is_string()) throw ConfigError(pointer + "/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  try {
    if (kind == "fock") {
      const std::size_t n = count(field(j, pointer, "n"), pointer + "/n");
      const std::size_t dim = optional_count(j, pointer, "dim").value_or(n + 1);
      return {kind, DensityOperator::from_pure(fock_state(n, dim)), 0.0, std::nullopt};
    }
    if (kind == "coherent") {
      const cplx z = complex_value(field(j, pointer, "z"), pointer + "/z");
      const std::size_t dim = optional_count(j, pointer, "dim").value_or(coherent_default_dim(z));
      const PureState psi = coherent_state(z, dim);
      return {kind, DensityOperator::from_pure(psi), poisson_tail_mass(std::norm(z), dim), z};
    }
    if (kind == "thermal") {
      const double nbar = number(field(j, pointer, "nbar"), pointer + "/nbar");
      const std::size_t dim = optional_count(j, pointer, "dim").value_or(nbar >= 0.0 ? thermal_default_dim(nbar) : 1);
      return {kind, thermal_state(nbar, dim), thermal_tail(nbar, dim), std::nullopt};
    }
    if (kind == "random") {
      const std::size_t dim = count(field(j, pointer, "dim"), pointer + "/dim");
      if (dim == 0) throw ConfigError(pointer + "/dim", "must be >= 1");
      bool mixed = false;
      if (auto it = j.find("mixed"); it != j.end()) {
        if (!it->is_boolean()) throw ConfigError(pointer + "/mixed", "expected a boolean");
        mixed = it->get<bool>();
      }
      std::optional<std::uint64_t> s = seed;
      if (auto it = j.find("seed"); it != j.end()) s = count(*it, pointer + "/seed");
      if (!s) throw ConfigError(pointer + "/seed", "a random state needs a seed");
      Rng rng(*s);
      DensityOperator rho = mixed ? random_mixed_state(rng, dim) : DensityOperator::from_pure(random_pure_state(rng, dim));
      return {kind, std::move(rho), 0.0, std::nullopt};
    }
    if (kind == "matrix") {
      return {kind, DensityOperator(matrix_from_json(field(j, pointer, "matrix"), pointer + "/matrix")), 0.0,
              std::nullopt};
    }
  } catch (const ValidationError& e) {
    throw ConfigError(pointer, e.what());
  }
  throw ConfigError(pointer + "/kind", "unknown state kind '" + kind + "'");
}

KrausSet channel_from_json(const json& j, const std::string& pointer) {
  if (!j.is_object()) throw ConfigError(pointer, "expected an object");
  try {
    if (auto it = j.find("preset"); it != j.end()) {
      if (!it->is_string()) throw ConfigError(pointer + "/preset", "expected a string");
      const std::string name = it->get<std::string>();
      if (name == "identity") return identity_channel(count(field(j, pointer, "dim"), pointer + "/dim"));
      if (name == "depolarizing")
        return depolarizing_channel(number(field(j, pointer, "p"), pointer + "/p"),
                                    optional_count(j, pointer, "dim").value_or(2));
      if (name == "phase_damping") return phase_damping_channel(number(field(j, pointer, "gamma"), pointer + "/gamma"));
      if (name == "amplitude_damping")
        return amplitude_damping_channel(number(field(j, pointer, "gamma"), pointer + "/gamma"));
      throw ConfigError(pointer + "/preset", "unknown preset '" + name + "'");
    }
    const json& ops = field(j, pointer, "operators");
    if (!ops.is_array() || ops.empty()) throw ConfigError(pointer + "/operators", "expected a non-empty array");
    std::vector<ComplexMatrix> mats;
    for (std::size_t i = 0; i < ops.size(); ++i)
      mats.push_back(matrix_from_json(ops[i], pointer + "/operators/" + std::to_string(i)));
    const auto din = optional_count(j, pointer, "dim_in");
    const auto dout = optional_count(j, pointer, "dim_out");
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const std::string p = pointer + "/operators/" + std::to_string(i);
      if (din && static_cast<std::size_t>(mats[i].cols()) != *din) throw ConfigError(p, "column count differs from dim_in");
      if (dout && static_cast<std::size_t>(mats[i].rows()) != *dout) throw ConfigError(p, "row count differs from dim_out");
    }
    return KrausSet(std::move(mats));
  } catch (const ValidationError& e) {
    throw ConfigError(pointer, e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const BoundReport& r = row.report;
    os << r.scenario << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << ',' << format_double(r.s)
       << ',' << format_double(r.t) << ',';
    if (row.has_entropy_sum) os << format_double(r.entropy_sum);
    os << ',' << format_double(r.bound) << ',';
    if (row.has_entropy_sum) os << format_double(r.slack);
    os << ',';
    if (row.seed) os << *row.seed;
    os << '\n';
  }
}

json report_to_json(const BoundReport& r) {
  return json{{"scenario", r.scenario}, {"alpha", r.alpha}, {"beta", r.beta},
              {"s", r.s},               {"t", r.t},         {"entropy_sum", r.entropy_sum},
              {"bound", r.bound},       {"slack", r.slack}};
}

json rows_to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json o = report_to_json(row.report);
    if (!row.has_entropy_sum) {
      o["entropy_sum"] = nullptr;
      o["slack"] = nullptr;
    }
    o["seed"] = row.seed ? json(*row.seed) : json(nullptr);
    if (!row.metadata.empty()) o["metadata"] = row.metadata;
    out.push_back(std::move(o));
  }
  return json{{"rows", out}};
}

}  // namespace nphase
