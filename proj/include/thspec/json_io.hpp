#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "thspec/asymptotics.hpp"
#include "thspec/distributions.hpp"
#include "thspec/model.hpp"
#include "thspec/spectrum.hpp"

namespace thspec {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "threshold-spectra/v1";

/// {"kind": "bernoulli", "p": ...}, {"kind": "discrete", "values": [...],
/// "probs": [...]}, {"kind": "uniform", "a", "b"}, {"kind": "gaussian",
/// "mean", "stddev"}. Missing parameters take the type defaults.
Json distribution_to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const Json& j);

/// {"schema", "mode", "n", "atoms": [{"value", "mult"}]}; mixture mode
/// writes "weight" instead of "mult".
Json spectrum_to_json(const SpectralDistribution& mu);

/// "value,multiplicity" rows (weight in mixture mode).
std::string spectrum_to_csv(const SpectralDistribution& mu);

/// "bin_left,bin_right,mass" over [min - 0.5, max + 0.5].
std::string histogram_csv(const SpectralDistribution& mu, double bin_width = 0.1);

/// Graph artifact with 1-based vertex ids. Edges are listed when there are
/// at most `max_edges` of them.
Json graph_to_json(const ThresholdGraph& g, const PeelResult& peeled, std::size_t max_edges);

/// "u v" per line, 1-based, sorted; a loop is written "u u".
std::string edge_list(const ThresholdGraph& g, const PeelResult& peeled);

std::size_t edge_count(const CreationSequence& s);

Json report_to_json(const ExperimentReport& report, bool per_trial);
std::string report_table(const ExperimentReport& report);

}  // namespace thspec
