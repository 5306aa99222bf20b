#include "thspec/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "thspec/error.hpp"

namespace thspec {

namespace {

template <class T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(fmt::format("distribution: bad field \"{}\": {}", key, e.what()));
  }
}

// Shortest round-trip representation, same as the JSON writer.
std::string number(double x) { return Json(x).dump(); }

}  // namespace

Json distribution_to_json(const DistributionSpec& spec) {
  Json j;
  j["kind"] = std::string(kind_name(spec));
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Bernoulli>) {
          j["p"] = d.p;
        } else if constexpr (std::is_same_v<T, DiscretePmf>) {
          j["values"] = d.values;
          j["probs"] = d.probs;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          j["a"] = d.a;
          j["b"] = d.b;
        } else {
          j["mean"] = d.mean;
          j["stddev"] = d.stddev;
        }
      },
      spec);
  return j;
}

DistributionSpec distribution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("distribution: expected an object with a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  DistributionSpec spec;
  if (kind == "bernoulli") {
    spec = Bernoulli{field(j, "p", 0.5)};
  } else if (kind == "discrete") {
    spec = DiscretePmf{field(j, "values", std::vector<double>{}), field(j, "probs", std::vector<double>{})};
  } else if (kind == "uniform") {
    spec = Uniform{field(j, "a", -1.0), field(j, "b", 1.0)};
  } else if (kind == "gaussian") {
    spec = Gaussian{field(j, "mean", 0.0), field(j, "stddev", 1.0)};
  } else {
    throw ConfigError("distribution: unknown kind \"" + kind + "\"");
  }
  validate(spec);
  return spec;
}

Json spectrum_to_json(const SpectralDistribution& mu) {
  const bool exact = mu.mode() == SpectralDistribution::Mode::Exact;
  Json j;
  j["schema"] = kSchema;
  j["mode"] = exact ? "exact" : "mixture";
  j["n"] = mu.n();
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    Json atom;
    atom["value"] = a.value;
    if (exact)
      atom["mult"] = a.multiplicity;
    else
      atom["weight"] = a.weight;
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

std::string spectrum_to_csv(const SpectralDistribution& mu) {
  const bool exact = mu.mode() == SpectralDistribution::Mode::Exact;
  std::string out = exact ? "value,multiplicity\n" : "value,weight\n";
  for (const auto& a : mu.atoms())
    out += exact ? fmt::format("{},{}\n", number(a.value), a.multiplicity)
                 : fmt::format("{},{}\n", number(a.value), number(a.weight));
  return out;
}

std::string histogram_csv(const SpectralDistribution& mu, double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw ConfigError("histogram: bin width must be positive");
  std::string out = "bin_left,bin_right,mass\n";
  const auto atoms = mu.atoms();
  if (atoms.empty()) return out;
  const double lo = atoms.front().value - 0.5;
  const double hi = atoms.back().value + 0.5;
  const double span = std::ceil((hi - lo) / bin_width);
  if (span > 1e7) throw ConfigError("histogram: more than 1e7 bins, raise --bin-width");
  const auto bins = static_cast<std::size_t>(std::max(1.0, span));
  std::vector<double> mass(bins, 0.0);
  for (const auto& a : atoms) {
    const auto b = static_cast<std::size_t>(std::floor((a.value - lo) / bin_width));
    mass[std::min(b, bins - 1)] += a.weight;
  }
  for (std::size_t b = 0; b < bins; ++b) {
    const double left = lo + static_cast<double>(b) * bin_width;
    out += fmt::format("{},{},{}\n", number(left), number(left + bin_width), number(mass[b]));
  }
  return out;
}

std::size_t edge_count(const CreationSequence& s) {
  std::size_t count = 0;
  for (std::size_t b = 0; b < s.size(); ++b)
    if (s[b]) count += b + (s.variant() == ModelVariant::SelfLoops ? 1 : 0);
  return count;
}

namespace {

std::vector<Edge> vertex_edges(const PeelResult& peeled) {
  std::vector<Edge> edges = graph_from_sequence(peeled.sequence);
  for (auto& e : edges) {
    const std::size_t u = peeled.vertex_at[e.u];
    const std::size_t v = peeled.vertex_at[e.v];
    e = {std::min(u, v), std::max(u, v)};
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

Json graph_to_json(const ThresholdGraph& g, const PeelResult& peeled, std::size_t max_edges) {
  const BlockDecomposition d = decompose(peeled.sequence);
  Json j;
  j["schema"] = kSchema;
  j["n"] = g.n();
  j["theta"] = g.theta();
  j["variant"] = std::string(to_string(g.variant()));
  j["values"] = std::vector<double>(g.values().begin(), g.values().end());
  j["creation_sequence"] = std::vector<int>(peeled.sequence.bits().begin(), peeled.sequence.bits().end());
  std::vector<std::size_t> order;
  for (std::size_t v : peeled.vertex_at) order.push_back(v + 1);
  j["order"] = order;
  j["k"] = d.k;
  j["l"] = d.l;
  j["s1"] = d.s1;
  const std::size_t count = edge_count(peeled.sequence);
  j["edge_count"] = count;
  if (count <= max_edges) {
    Json edges = Json::array();
    Json loops = Json::array();
    for (const auto& e : vertex_edges(peeled)) {
      if (e.u == e.v)
        loops.push_back(e.u + 1);
      else
        edges.push_back({e.u + 1, e.v + 1});
    }
    j["edges"] = std::move(edges);
    if (g.variant() == ModelVariant::SelfLoops) j["loops"] = std::move(loops);
  }
  return j;
}

std::string edge_list(const ThresholdGraph&, const PeelResult& peeled) {
  std::string out;
  for (const auto& e : vertex_edges(peeled)) out += fmt::format("{} {}\n", e.u + 1, e.v + 1);
  return out;
}

Json report_to_json(const ExperimentReport& report, bool per_trial) {
  Json j;
  j["schema"] = kSchema;
  j["check"] = report.check;
  j["n"] = report.n;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["pass"] = report.pass();
  Json stats = Json::array();
  for (const auto& s : report.statistics) {
    Json o;
    o["statistic"] = s.statistic;
    o["mean"] = s.mean;
    o["variance"] = s.variance;
    if (s.limit) {
      o["limit"] = *s.limit;
      o["normalized_variance"] = s.normalized_variance;
    }
    if (s.ks_distance) o["ks_distance"] = *s.ks_distance;
    if (per_trial) {
      o["values"] = s.values;
      if (s.limit) o["normalized"] = s.normalized;
    }
    stats.push_back(std::move(o));
  }
  j["statistics"] = std::move(stats);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json o;
    o["name"] = c.name;
    o["observed"] = c.observed;
    if (c.upper_bound_only) {
      o["bound"] = c.expected;
    } else {
      o["expected"] = c.expected;
      o["tolerance"] = c.tolerance;
    }
    o["pass"] = c.pass;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string report_table(const ExperimentReport& report) {
  std::string out = fmt::format("check {}  n={}  trials={}  seed={}\n", report.check, report.n,
                                report.trials, report.seed);
  if (!report.statistics.empty()) {
    out += fmt::format("{:<28} {:>14} {:>14} {:>10} {:>10}\n", "statistic", "mean", "variance",
                       "norm.var", "KS");
    for (const auto& s : report.statistics)
      out += fmt::format("{:<28} {:>14.8g} {:>14.6g} {:>10} {:>10}\n", s.statistic, s.mean,
                         s.variance, s.limit ? fmt::format("{:.4f}", s.normalized_variance) : "-",
                         s.ks_distance ? fmt::format("{:.4f}", *s.ks_distance) : "-");
  }
  for (const auto& c : report.checks) {
    const std::string target = c.upper_bound_only
                                   ? fmt::format("<= {:.6g}", c.expected)
                                   : fmt::format("{:.8g} +/- {:.3g}", c.expected, c.tolerance);
    out += fmt::format("{} {:<58} {:>14.8g}  {}\n", c.pass ? "PASS" : "FAIL", c.name, c.observed, target);
  }
  out += fmt::format("overall: {}\n", report.pass() ? "PASS" : "FAIL");
  return out;
}

}  // namespace thspec
