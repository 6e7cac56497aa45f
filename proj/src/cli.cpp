#include "nphase/cli.hpp"

#include "nphase/pegg_barnett.hpp"
#include "nphase/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace nphase {

namespace {

// ---- config parsing -----------------------------------------------------------

const std::set<std::string> kTopLevelKeys = {
    "command", "scenario", "params", "dim",       "dims", "bins", "edges",      "delta",     "state",
    "channels", "trials",  "seed",   "grid", "brute_grid", "remixings", "g", "tolerances", "output"};

const std::set<std::string> kBoundScenarios = {"mub", "pegg_barnett", "angle", "multiphoton"};
const std::set<std::string> kVerifyScenarios = {"theorem1",     "lemma1",       "extremality",       "two_channel",
                                                "theorem2",     "riesz_finite", "riesz_continuous",  "theorem3"};

double get_number(const json& j, const std::string& pointer) {
  if (!j.is_number()) throw ConfigError(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(pointer, "expected a finite number");
  return v;
}

std::size_t get_count(const json& j, const std::string& pointer, std::size_t min_value = 0) {
  if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min_value))
    throw ConfigError(pointer, "expected an integer >= " + std::to_string(min_value));
  return j.get<std::size_t>();
}

std::string get_string(const json& j, const std::string& pointer) {
  if (!j.is_string()) throw ConfigError(pointer, "expected a string");
  return j.get<std::string>();
}

std::vector<std::size_t> count_list(const json& j, const std::string& pointer, std::size_t min_value) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError(pointer, "expected a non-empty list");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_count(j[i], pointer + "/" + std::to_string(i), min_value));
  } else {
    out.push_back(get_count(j, pointer, min_value));
  }
  return out;
}

EntropyParams parse_params_entry(const json& j, const std::string& pointer) {
  if (!j.is_object()) throw ConfigError(pointer, "expected an object with alpha/beta, s, t");
  for (const auto& [key, _] : j.items())
    if (key != "alpha" && key != "beta" && key != "s" && key != "t" && key != "shannon")
      throw ConfigError(pointer + "/" + key, "unknown field");
  const double s = j.contains("s") ? get_number(j["s"], pointer + "/s") : 0.0;
  const double t = j.contains("t") ? get_number(j["t"], pointer + "/t") : 0.0;
  if (j.contains("shannon")) {
    if (!j["shannon"].is_boolean() || !j["shannon"].get<bool>())
      throw ConfigError(pointer + "/shannon", "expected true");
    if (j.contains("alpha") || j.contains("beta"))
      throw ConfigError(pointer, "give either shannon or alpha/beta, not both");
    return {ConjugatePair::shannon(), s, t};
  }
  try {
    if (j.contains("alpha") && j.contains("beta"))
      return {ConjugatePair(get_number(j["alpha"], pointer + "/alpha"), get_number(j["beta"], pointer + "/beta")), s, t};
    if (j.contains("alpha")) return {ConjugatePair::from_alpha(get_number(j["alpha"], pointer + "/alpha")), s, t};
    if (j.contains("beta")) return {ConjugatePair::from_beta(get_number(j["beta"], pointer + "/beta")), s, t};
  } catch (const ValidationError& e) {
    throw ConfigError(pointer, e.what());
  }
  throw ConfigError(pointer, "needs alpha, beta, or shannon");
}

// ---- parallel trials ----------------------------------------------------------

// Runs task(0) … task(n−1) on a small thread pool; results come back in index
// order, and the exception of the lowest failing index is rethrown.
template <class R>
std::vector<R> run_parallel(std::size_t n, const std::function<R(std::size_t)>& task) {
  std::vector<std::optional<R>> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i].emplace(task(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& th : threads) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> result;
  result.reserve(n);
  for (auto& o : out) result.push_back(std::move(*o));
  return result;
}

using TrialReports = std::vector<std::optional<BoundReport>>;  // one slot per parameter entry

// One row per parameter entry: the trial with the smallest slack.
void append_worst(std::vector<SweepRow>& rows, const std::vector<TrialReports>& trials, std::size_t n_params,
                  std::uint64_t seed, const json& extra) {
  for (std::size_t p = 0; p < n_params; ++p) {
    std::optional<std::size_t> worst;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      if (!trials[i][p]) continue;
      ++evaluated;
      if (!worst || trials[i][p]->slack < trials[*worst][p]->slack) worst = i;
    }
    SweepRow row;
    row.seed = seed;
    row.metadata = extra;
    row.metadata["trials"] = trials.size();
    row.metadata["evaluated"] = evaluated;
    if (worst) {
      row.report = *trials[*worst][p];
      row.metadata["worst_trial"] = *worst;
    } else {
      row.has_entropy_sum = false;
    }
    rows.push_back(std::move(row));
  }
}

std::uint64_t require_seed(const ScenarioConfig& cfg) {
  if (!cfg.seed) throw ConfigError("/seed", "a seed is required for randomized scenarios");
  return *cfg.seed;
}

void require_region(const ScenarioConfig& cfg) {
  for (std::size_t i = 0; i < cfg.params.size(); ++i) {
    try {
      select_mu_nu(cfg.params[i].pair, cfg.params[i].s, cfg.params[i].t);
    } catch (const ValidationError& e) {
      throw ConfigError("/params/" + std::to_string(i), e.what());
    }
  }
}

void require_non_shannon(const ScenarioConfig& cfg, const char* why) {
  for (std::size_t i = 0; i < cfg.params.size(); ++i)
    if (cfg.params[i].pair.is_shannon()) throw ConfigError("/params/" + std::to_string(i), why);
}

std::vector<PhasePartition> partitions(const ScenarioConfig& cfg) {
  std::vector<PhasePartition> out;
  if (cfg.edges) out.push_back(*cfg.edges);
  for (std::size_t m : cfg.bins) out.push_back(PhasePartition::equal(m));
  return out;
}

std::vector<std::size_t> dims_or(const ScenarioConfig& cfg, std::vector<std::size_t> fallback) {
  return cfg.dims.empty() ? fallback : cfg.dims;
}

DiscreteDistribution squared_amplitudes(const PureState& psi) {
  std::vector<double> q(psi.dim());
  for (std::size_t n = 0; n < q.size(); ++n) q[n] = std::norm(psi[n]);
  return DiscreteDistribution::normalized(std::move(q), 1e-10, 1e-9);
}

// Row for a norm inequality: the worse direction, with its right-hand side in
// the entropy_sum column and its left-hand side in the bound column.
BoundReport norm_report(const std::string& scenario, const EntropyParams& ep, const NormSource& a, const NormSource& b,
                        double factor) {
  const NormSlack slack = verify_norm_inequality(a, b, factor, ep.pair);
  const bool forward = slack.forward <= slack.backward;
  const double lhs = norm_functional(forward ? a : b, ep.pair.larger());
  const double gap = forward ? slack.forward : slack.backward;
  return make_report(scenario, ep.pair, ep.s, ep.t, lhs + gap, lhs);
}

// ---- verify scenarios ---------------------------------------------------------

void verify_theorem1(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  require_region(cfg);
  for (std::size_t d : dims_or(cfg, {2, 3, 4, 5, 6})) {
    if (d < 2) throw ConfigError("/dims", "dimensions must be >= 2");
    const std::uint64_t dseed = derive_seed(seed, d);
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(dseed, i));
      const DensityOperator rho =
          (i % 2 == 0) ? DensityOperator::from_pure(random_pure_state(rng, d)) : random_mixed_state(rng, d);
      const Povm m = random_projective_povm(rng, d);
      const Povm n = random_projective_povm(rng, d);
      TrialReports out;
      for (const auto& ep : cfg.params) out.push_back(theorem1_bound(m, n, rho, ep.pair, ep.s, ep.t));
      return out;
    });
    append_worst(rows, trials, cfg.params.size(), seed, json{{"dim", d}});
  }
}

void verify_lemma1(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  require_region(cfg);
  require_non_shannon(cfg, "the lemma1 scenario needs a non-Shannon pair");
  for (std::size_t i = 0; i < cfg.g_values.size(); ++i)
    if (!(cfg.g_values[i] > 0.0 && cfg.g_values[i] <= 1.0))
      throw ConfigError("/g/" + std::to_string(i), "g must lie in (0, 1]");
  for (const auto& ep : cfg.params) {
    for (double g : cfg.g_values) {
      const HMinimum brute = brute_force_h_min(g, ep.pair, ep.s, ep.t, cfg.brute_grid);
      SweepRow row;
      row.report = make_report("lemma1", ep.pair, ep.s, ep.t, brute.value, lemma1_min(g, ep.pair, ep.s, ep.t));
      row.metadata = json{{"g", g}, {"xi", brute.xi}, {"zeta", brute.zeta}, {"brute_grid", cfg.brute_grid}};
      rows.push_back(std::move(row));
    }
  }
}

void verify_extremality(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  for (std::size_t i = 0; i < cfg.params.size(); ++i) {
    const EntropyParams& ep = cfg.params[i];
    if (ep.s == 0.0 && ep.pair.alpha() > 1.0)
      throw ConfigError("/params/" + std::to_string(i), "extremality is not claimed for Rényi entropies of order > 1");
  }
  auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    std::uniform_int_distribution<std::size_t> pick(2, 4);
    const std::size_t d = pick(rng);
    const std::size_t k = pick(rng);
    const KrausSet a = random_kraus_set(rng, d, k);
    const DensityOperator rho = random_mixed_state(rng, d);
    const KrausSet ex = extremal_unraveling(a, rho);
    std::vector<KrausSet> remixed;
    for (std::size_t r = 0; r < cfg.remixings; ++r) remixed.push_back(remix_unraveling(a, random_unitary(rng, k)));
    TrialReports out;
    for (const auto& ep : cfg.params) {
      const UnifiedParams up(ep.pair.alpha(), ep.s);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& b : remixed) best = std::min(best, unraveling_entropy(b, rho, up));
      out.push_back(make_report("extremality", ep.pair, ep.s, ep.t, best, unraveling_entropy(ex, rho, up)));
    }
    return out;
  });
  append_worst(rows, trials, cfg.params.size(), seed, json{{"remixings", cfg.remixings}});
}

void verify_two_channel(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  for (std::size_t i = 0; i < cfg.params.size(); ++i) {
    const EntropyParams& ep = cfg.params[i];
    if (!ep.pair.is_shannon() && !(ep.s * ep.t > 0.0))
      throw ConfigError("/params/" + std::to_string(i), "two_channel needs s·t > 0 or the Shannon pair");
  }
  if (!cfg.channels.empty()) {
    // Fixed channels, random input states.
    if (cfg.channels.size() != 2) throw ConfigError("/channels", "two_channel needs exactly two channels");
    const KrausSet a = channel_from_json(cfg.channels[0], "/channels/0");
    const KrausSet b = channel_from_json(cfg.channels[1], "/channels/1");
    if (a.dim_in() != b.dim_in()) throw ConfigError("/channels/1", "input dimension differs from /channels/0");
    const std::size_t d = a.dim_in();
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(seed, i));
      const DensityOperator rho = random_mixed_state(rng, d);
      const KrausSet a_ex = extremal_unraveling(a, rho);
      const KrausSet b_ex = extremal_unraveling(b, rho);
      TrialReports out;
      for (const auto& ep : cfg.params) out.push_back(two_channel_bound(a_ex, b_ex, rho, ep.pair, ep.s, ep.t));
      return out;
    });
    append_worst(rows, trials, cfg.params.size(), seed, json{{"dim", d}, {"channels", "config"}});
    return;
  }
  for (std::size_t d : dims_or(cfg, {2})) {
    if (d < 1) throw ConfigError("/dims", "dimensions must be >= 1");
    const std::uint64_t dseed = derive_seed(seed, d);
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(dseed, i));
      std::uniform_int_distribution<std::size_t> pick(2, 4);
      const std::size_t ka = pick(rng);
      const std::size_t kb = pick(rng);
      const KrausSet a = random_kraus_set(rng, d, ka);
      const KrausSet b = random_kraus_set(rng, d, kb);
      const DensityOperator rho = random_mixed_state(rng, d);
      const KrausSet a_ex = extremal_unraveling(a, rho);
      const KrausSet b_ex = extremal_unraveling(b, rho);
      TrialReports out;
      for (const auto& ep : cfg.params) out.push_back(two_channel_bound(a_ex, b_ex, rho, ep.pair, ep.s, ep.t));
      return out;
    });
    append_worst(rows, trials, cfg.params.size(), seed, json{{"dim", d}});
  }
}

void verify_theorem2(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  require_region(cfg);
  const std::vector<PhasePartition> parts = partitions(cfg);
  if (parts.empty()) throw ConfigError("/bins", "theorem2 needs bins or edges");
  for (std::size_t d : dims_or(cfg, {32})) {
    if (d < 1) throw ConfigError("/dims", "dimensions must be >= 1");
    const std::uint64_t dseed = derive_seed(seed, d);
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(dseed, i));
      const DensityOperator rho = DensityOperator::from_pure(random_pure_state(rng, d));
      TrialReports out;
      for (const auto& part : parts) {
        const NumberPhaseScenario scn(rho, part, cfg.grid);
        for (const auto& ep : cfg.params) out.push_back(theorem2_check(scn, ep.pair, ep.s, ep.t));
      }
      return out;
    });
    // Regroup so that append_worst sees one slot per (partition, params) pair.
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
      std::vector<TrialReports> slice;
      for (const auto& tr : trials)
        slice.emplace_back(tr.begin() + static_cast<std::ptrdiff_t>(pi * cfg.params.size()),
                           tr.begin() + static_cast<std::ptrdiff_t>((pi + 1) * cfg.params.size()));
      append_worst(rows, slice, cfg.params.size(), seed,
                   json{{"dim", d}, {"bins", parts[pi].bins()}, {"max_bin_width", parts[pi].max_width()}});
    }
  }
}

void verify_riesz_finite(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  require_non_shannon(cfg, "norm inequalities need orders other than 1");
  for (std::size_t n : dims_or(cfg, {4, 16, 64})) {
    if (n < 1) throw ConfigError("/dims", "N must be >= 1");
    const std::uint64_t dseed = derive_seed(seed, n);
    const double factor = 1.0 / std::sqrt(static_cast<double>(n + 1));
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(dseed, i));
      const PureState psi = random_pure_state(rng, n + 1);
      const NormSource q = squared_amplitudes(psi);
      const NormSource p = finite_phase_distribution(psi, n);
      TrialReports out;
      for (const auto& ep : cfg.params) out.push_back(norm_report("riesz_finite", ep, q, p, factor));
      return out;
    });
    append_worst(rows, trials, cfg.params.size(), seed, json{{"N", n}});
  }
}

void verify_riesz_continuous(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  require_non_shannon(cfg, "norm inequalities need orders other than 1");
  for (std::size_t d : dims_or(cfg, {32})) {
    if (d < 1) throw ConfigError("/dims", "dimensions must be >= 1");
    const std::uint64_t dseed = derive_seed(seed, d);
    const double factor = 1.0 / std::sqrt(kTwoPi);
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(dseed, i));
      const DensityOperator rho = DensityOperator::from_pure(random_pure_state(rng, d));
      const NormSource q = number_distribution(rho);
      const NormSource p = phase_density(rho, cfg.grid);
      TrialReports out;
      for (const auto& ep : cfg.params) out.push_back(norm_report("riesz_continuous", ep, q, p, factor));
      return out;
    });
    append_worst(rows, trials, cfg.params.size(), seed, json{{"dim", d}});
  }
}

void verify_theorem3(const ScenarioConfig& cfg, std::vector<SweepRow>& rows) {
  const std::uint64_t seed = require_seed(cfg);
  require_region(cfg);
  for (std::size_t d : dims_or(cfg, {32})) {
    if (d < 1) throw ConfigError("/dims", "dimensions must be >= 1");
    const std::uint64_t dseed = derive_seed(seed, d);
    auto trials = run_parallel<TrialReports>(cfg.trials, [&](std::size_t i) {
      Rng rng(derive_seed(dseed, i));
      const DensityOperator rho = DensityOperator::from_pure(random_pure_state(rng, d));
      TrialReports out;
      for (const auto& ep : cfg.params) {
        if (ep.pair.is_shannon() || (ep.s == 0.0 && ep.t == 0.0))
          out.push_back(continuous_renyi_check(rho, ep.pair, cfg.grid));
        else
          out.push_back(continuous_unified_check(rho, ep.pair, ep.s, ep.t, cfg.grid));
      }
      return out;
    });
    append_worst(rows, trials, cfg.params.size(), seed, json{{"dim", d}});
  }
}

// ---- bound scenarios ----------------------------------------------------------

double partition_width(const ScenarioConfig& cfg) {
  if (cfg.delta) return *cfg.delta;
  const auto parts = partitions(cfg);
  if (parts.size() != 1) throw ConfigError("/bins", "give exactly one of delta, a single bins value, or edges");
  return parts.front().max_width();
}

NumberPhaseScenario make_scenario(const StateSpec& spec, const PhasePartition& part, std::size_t grid) {
  try {
    return NumberPhaseScenario(spec.state, part, grid, spec.tail_mass);
  } catch (const ValidationError& e) {
    throw ConfigError("/state", e.what());
  }
}

SweepRow closed_form_row(const std::string& scenario, const EntropyParams& ep, double bound, json metadata) {
  SweepRow row;
  row.report = make_report(scenario, ep.pair, ep.s, ep.t, 0.0, bound);
  row.has_entropy_sum = false;
  row.metadata = std::move(metadata);
  return row;
}

}  // namespace

// ---- parsing --------------------------------------------------------------------

ScenarioConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "the configuration must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kTopLevelKeys.count(key)) throw ConfigError("/" + key, "unknown field");

  ScenarioConfig cfg;
  if (!doc.contains("command")) throw ConfigError("/command", "missing required field");
  cfg.command = get_string(doc["command"], "/command");
  if (cfg.command != "bound" && cfg.command != "verify" && cfg.command != "phase")
    throw ConfigError("/command", "must be bound, verify or phase");
  if (doc.contains("scenario")) cfg.scenario = get_string(doc["scenario"], "/scenario");
  if (cfg.command == "bound" && !kBoundScenarios.count(cfg.scenario))
    throw ConfigError("/scenario", "unknown bound scenario '" + cfg.scenario + "'");
  if (cfg.command == "verify" && !kVerifyScenarios.count(cfg.scenario))
    throw ConfigError("/scenario", "unknown verify scenario '" + cfg.scenario + "'");

  if (doc.contains("params")) {
    const json& p = doc["params"];
    if (!p.is_array() || p.empty()) throw ConfigError("/params", "expected a non-empty list");
    for (std::size_t i = 0; i < p.size(); ++i) cfg.params.push_back(parse_params_entry(p[i], "/params/" + std::to_string(i)));
  } else if (cfg.command != "phase") {
    throw ConfigError("/params", "missing required field");
  }

  if (doc.contains("dim") && doc.contains("dims")) throw ConfigError("/dims", "give dim or dims, not both");
  if (doc.contains("dim")) cfg.dims = count_list(doc["dim"], "/dim", 1);
  if (doc.contains("dims")) cfg.dims = count_list(doc["dims"], "/dims", 1);
  if (doc.contains("bins")) cfg.bins = count_list(doc["bins"], "/bins", 2);
  if (doc.contains("edges")) {
    const json& e = doc["edges"];
    if (!e.is_array()) throw ConfigError("/edges", "expected a list of numbers");
    std::vector<double> edges;
    for (std::size_t i = 0; i < e.size(); ++i) edges.push_back(get_number(e[i], "/edges/" + std::to_string(i)));
    try {
      cfg.edges.emplace(std::move(edges));
    } catch (const ValidationError& ex) {
      throw ConfigError("/edges", ex.what());
    }
  }
  if (doc.contains("delta")) {
    cfg.delta = get_number(doc["delta"], "/delta");
    if (!(*cfg.delta > 0.0 && *cfg.delta < kTwoPi)) throw ConfigError("/delta", "must lie in (0, 2π)");
  }
  if (doc.contains("state")) {
    if (!doc["state"].is_object()) throw ConfigError("/state", "expected an object");
    cfg.state = doc["state"];
  }
  if (doc.contains("channels")) {
    const json& c = doc["channels"];
    if (!c.is_array()) throw ConfigError("/channels", "expected a list");
    for (std::size_t i = 0; i < c.size(); ++i) {
      channel_from_json(c[i], "/channels/" + std::to_string(i));
      cfg.channels.push_back(c[i]);
    }
  }
  if (doc.contains("trials")) cfg.trials = get_count(doc["trials"], "/trials", 1);
  if (doc.contains("seed")) cfg.seed = get_count(doc["seed"], "/seed");
  if (doc.contains("grid")) cfg.grid = get_count(doc["grid"], "/grid", 16);
  if (doc.contains("brute_grid")) cfg.brute_grid = get_count(doc["brute_grid"], "/brute_grid", 512);
  if (doc.contains("remixings")) cfg.remixings = get_count(doc["remixings"], "/remixings", 1);
  if (doc.contains("g")) {
    const json& g = doc["g"];
    if (!g.is_array() || g.empty()) throw ConfigError("/g", "expected a non-empty list");
    cfg.g_values.clear();
    for (std::size_t i = 0; i < g.size(); ++i) cfg.g_values.push_back(get_number(g[i], "/g/" + std::to_string(i)));
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw ConfigError("/tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      if (key == "slack") cfg.slack_tolerance = get_number(value, "/tolerances/slack");
      else if (key == "lemma") cfg.lemma_tolerance = get_number(value, "/tolerances/lemma");
      else throw ConfigError("/tolerances/" + key, "unknown field");
    }
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) throw ConfigError("/output", "expected an object");
    for (const auto& [key, value] : o.items()) {
      if (key == "path") cfg.output_path = get_string(value, "/output/path");
      else if (key == "format") cfg.format = get_string(value, "/output/format");
      else throw ConfigError("/output/" + key, "unknown field");
    }
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("/output/format", "must be csv or json");
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_config(doc);
}

// ---- commands ---------------------------------------------------------------------

SweepResult cmd_bound(const ScenarioConfig& cfg) {
  require_region(cfg);
  SweepResult res;
  const std::string& sc = cfg.scenario;
  if (sc == "mub") {
    if (cfg.dims.empty()) throw ConfigError("/dim", "the mub scenario needs dim");
    for (std::size_t n : cfg.dims)
      for (const auto& ep : cfg.params)
        res.rows.push_back(closed_form_row("mub", ep, mub_bound(n, ep.pair, ep.s, ep.t), json{{"dim", n}}));
  } else if (sc == "angle") {
    const double w = partition_width(cfg);
    for (const auto& ep : cfg.params)
      res.rows.push_back(closed_form_row("angle", ep, angle_bound(w, ep.pair, ep.s, ep.t), json{{"delta", w}}));
  } else if (sc == "pegg_barnett") {
    const auto parts = partitions(cfg);
    if (cfg.state) {
      if (parts.size() != 1) throw ConfigError("/bins", "give a single bins value or edges with a state");
      const StateSpec spec = state_from_json(*cfg.state, "/state", cfg.seed);
      const NumberPhaseScenario scn = make_scenario(spec, parts.front(), cfg.grid);
      for (const auto& ep : cfg.params) {
        SweepRow row;
        row.report = theorem2_check(scn, ep.pair, ep.s, ep.t);
        row.report.scenario = "pegg_barnett";
        row.metadata = json{{"delta", parts.front().max_width()}, {"state", spec.kind}};
        res.rows.push_back(std::move(row));
      }
    } else {
      const double w = partition_width(cfg);
      for (const auto& ep : cfg.params)
        res.rows.push_back(closed_form_row("pegg_barnett", ep, angle_bound(w, ep.pair, ep.s, ep.t), json{{"delta", w}}));
    }
  } else if (sc == "multiphoton") {
    if (cfg.state) {
      const StateSpec spec = state_from_json(*cfg.state, "/state", cfg.seed);
      if (!spec.coherent_amplitude) throw ConfigError("/state/kind", "the multiphoton scenario needs a coherent state");
      const auto parts = partitions(cfg);
      if (parts.size() != 1) throw ConfigError("/bins", "give a single bins value or edges with a state");
      MultiphotonBinned binned = [&] {
        try {
          return multiphoton_binned(*spec.coherent_amplitude, parts.front(), cfg.grid);
        } catch (const ValidationError& e) {
          throw ConfigError("/state", e.what());
        }
      }();
      for (const auto& ep : cfg.params) {
        SweepRow row;
        row.report = multiphoton_check(binned, ep.pair, ep.s, ep.t);
        row.metadata = json{{"delta", binned.max_bin_width}, {"kappa", multiphoton_kappa(ep.pair)}};
        res.rows.push_back(std::move(row));
      }
    } else {
      const double w = partition_width(cfg);
      for (const auto& ep : cfg.params)
        res.rows.push_back(closed_form_row("multiphoton", ep, multiphoton_bound(w, ep.pair, ep.s, ep.t),
                                           json{{"delta", w}, {"kappa", multiphoton_kappa(ep.pair)}}));
    }
  }
  for (const auto& row : res.rows)
    if (row.has_entropy_sum && row.report.slack < -cfg.slack_tolerance) res.failed = true;
  return res;
}

SweepResult cmd_verify(const ScenarioConfig& cfg) {
  SweepResult res;
  const std::string& sc = cfg.scenario;
  if (sc == "theorem1") verify_theorem1(cfg, res.rows);
  else if (sc == "lemma1") verify_lemma1(cfg, res.rows);
  else if (sc == "extremality") verify_extremality(cfg, res.rows);
  else if (sc == "two_channel") verify_two_channel(cfg, res.rows);
  else if (sc == "theorem2") verify_theorem2(cfg, res.rows);
  else if (sc == "riesz_finite") verify_riesz_finite(cfg, res.rows);
  else if (sc == "riesz_continuous") verify_riesz_continuous(cfg, res.rows);
  else if (sc == "theorem3") verify_theorem3(cfg, res.rows);
  for (const auto& row : res.rows) {
    if (!row.has_entropy_sum) continue;
    if (row.report.slack < -cfg.slack_tolerance) res.failed = true;
    if (sc == "lemma1" && row.report.slack > cfg.lemma_tolerance) res.failed = true;
  }
  return res;
}

void cmd_phase(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  if (!cfg.state) throw ConfigError("/state", "the phase command needs a state");
  const StateSpec spec = state_from_json(*cfg.state, "/state", cfg.seed);
  std::vector<PhasePartition> parts = partitions(cfg);
  if (parts.empty()) parts.push_back(PhasePartition::equal(16));
  if (parts.size() != 1) throw ConfigError("/bins", "give a single bins value or edges");
  const PhasePartition& part = parts.front();

  const DensityFunction1D density = [&] {
    try {
      return phase_density(spec.state, cfg.grid);
    } catch (const ValidationError& e) {
      throw ConfigError("/state", e.what());
    }
  }();
  const DiscreteDistribution r = phase_bins(spec.state, part);
  const DiscreteDistribution q = number_distribution(spec.state);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream os(out_dir / name);
    if (!os) throw std::runtime_error("cannot write " + (out_dir / name).string());
    return os;
  };

  {
    std::ofstream os = open("phase_density.csv");
    os << "theta,P\n";
    const auto g = density.grid();
    const auto v = density.values();
    for (std::size_t i = 0; i < g.size(); ++i) os << format_double(g[i]) << ',' << format_double(v[i]) << '\n';
  }
  {
    json j;
    j["state"] = spec.kind;
    j["dim"] = spec.state.dim();
    j["tail_mass"] = spec.tail_mass;
    j["edges"] = std::vector<double>(part.edges().begin(), part.edges().end());
    j["phase_bins"] = std::vector<double>(r.probs().begin(), r.probs().end());
    j["number"] = std::vector<double>(q.probs().begin(), q.probs().end());
    j["density_max"] = density.max_value();
    if (spec.coherent_amplitude && std::abs(*spec.coherent_amplitude) >= 3.0) {
      const cplx z = *spec.coherent_amplitude;
      const DensityFunction1D gauss =
          DensityFunction1D::sample([z](double t) { return gaussian_phase_density(z, t); }, 0.0, kTwoPi, cfg.grid);
      j["gaussian_tv_distance"] = total_variation(density, gauss);
    }
    std::ofstream os = open("binned.json");
    os << j.dump(2) << '\n';
  }
  {
    std::vector<SweepRow> rows;
    const NumberPhaseScenario scn = make_scenario(spec, part, cfg.grid);
    for (std::size_t i = 0; i < cfg.params.size(); ++i) {
      const EntropyParams& ep = cfg.params[i];
      try {
        SweepRow row;
        row.report = theorem2_check(scn, ep.pair, ep.s, ep.t);
        rows.push_back(std::move(row));
      } catch (const ValidationError& e) {
        throw ConfigError("/params/" + std::to_string(i), e.what());
      }
    }
    std::ofstream os = open("entropies.csv");
    write_csv(os, rows);
  }
}

// ---- entry point ------------------------------------------------------------------

int run_cli(int argc, char** argv) {
  CLI::App app{"nphase: unified-entropy uncertainty relations for number, phase and quantum channels"};
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format;
  std::optional<std::size_t> trials;
  bool quiet = false;
  app.add_option("command", command, "bound, verify or phase (defaults to the config's command)")
      ->check(CLI::IsMember({"bound", "verify", "phase"}));
  app.add_option("--config", config_path, "scenario configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override the configuration seed");
  app.add_option("--out", out_path, "output file (bound, verify) or directory (phase)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--trials", trials, "override the number of randomized trials")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "suppress the summary on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    ScenarioConfig cfg = load_config(config_path);
    if (!command.empty() && command != cfg.command)
      throw ConfigError("/command", "config says '" + cfg.command + "' but the command line says '" + command + "'");
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!format.empty()) cfg.format = format;

    if (cfg.command == "phase") {
      const std::filesystem::path dir = cfg.output_path.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.output_path);
      cmd_phase(cfg, dir);
      if (!quiet) std::cerr << "phase: wrote phase_density.csv, binned.json, entropies.csv to " << dir.string() << '\n';
      return kExitOk;
    }

    const SweepResult res = cfg.command == "bound" ? cmd_bound(cfg) : cmd_verify(cfg);
    std::ostringstream body;
    if (cfg.format == "json") body << rows_to_json(res.rows).dump(2) << '\n';
    else write_csv(body, res.rows);
    if (cfg.output_path.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream os(cfg.output_path, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + cfg.output_path);
      os << body.str();
    }
    if (!quiet) {
      double min_slack = std::numeric_limits<double>::infinity();
      for (const auto& row : res.rows)
        if (row.has_entropy_sum) min_slack = std::min(min_slack, row.report.slack);
      std::cerr << cfg.command << ' ' << cfg.scenario << ": " << res.rows.size() << " rows";
      if (std::isfinite(min_slack)) std::cerr << ", min slack " << format_double(min_slack);
      std::cerr << (res.failed ? ", FAILED" : ", ok") << '\n';
    }
    return res.failed ? kExitVerificationFailed : kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace nphase
