#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "klstress/dist.hpp"
#include "klstress/dominance.hpp"
#include "klstress/scenario.hpp"
#include "klstress/solver.hpp"
#include "klstress/tilt.hpp"

namespace klstress::io {

// Loads a baseline law from CSV (columns value[,weight], optional header)
// or JSON ({"values": [...], "probs": [...]}), chosen by file extension.
DiscreteDistribution load_distribution(const std::string& path);

DiscreteDistribution load_csv(std::istream& in);
DiscreteDistribution load_json(std::istream& in);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

// Doubles are rendered with 17 significant digits so reports round-trip
// and repeated runs are byte-identical.
std::string format_double(double x);

// Report serializers. `inputs` is an optional pre-rendered JSON object
// appended under the "inputs" key; empty string omits it.
std::string stress_report_json(const StressReport& report,
                               const std::string& inputs = "");
std::string tilted_measure_json(const TiltedMeasure& t,
                                const std::string& inputs = "");
std::string sweep_json(std::span<const SweepRow> rows,
                       const std::string& inputs = "");
std::string sweep_csv(std::span<const SweepRow> rows);
std::string scenario_json(const ScenarioSet& s, const std::string& inputs = "");
std::string scenario_csv(const ScenarioSet& s);
std::string weights_csv(std::span<const double> values,
                        std::span<const double> weights);
std::string fsd_json(const FsdResult& result, const TiltParams& params,
                     const std::string& inputs = "");

}  // namespace klstress::io
