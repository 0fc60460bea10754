#include "klstress/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "klstress/errors.hpp"

namespace klstress::io {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

bool parse_number(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string number_array(std::span<const double> xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += format_double(xs[i]);
    }
    out += "]";
    return out;
}

void append_inputs(std::string& out, const std::string& inputs) {
    if (!inputs.empty()) {
        out += ",\"inputs\":";
        out += inputs;
    }
}

}  // namespace

DiscreteDistribution load_csv(std::istream& in) {
    std::vector<double> values;
    std::vector<double> weights;
    bool has_weights = false;
    bool first = true;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        double v = 0.0, w = 0.0;
        if (first) {
            first = false;
            // Header is optional; skip the line if the first field is not numeric.
            if (!parse_number(fields[0], v)) continue;
        }
        if (!parse_number(fields[0], v)) {
            throw InvalidInput("csv: non-numeric value field: " + fields[0]);
        }
        values.push_back(v);
        if (fields.size() > 1 && !fields[1].empty()) {
            if (!parse_number(fields[1], w)) {
                throw InvalidInput("csv: non-numeric weight field: " + fields[1]);
            }
            weights.push_back(w);
            has_weights = true;
        } else if (has_weights) {
            throw InvalidInput("csv: missing weight field");
        }
    }
    if (has_weights && weights.size() != values.size()) {
        throw InvalidInput("csv: inconsistent weight column");
    }
    if (has_weights) {
        return DiscreteDistribution::from_samples(values, weights);
    }
    return DiscreteDistribution::from_samples(values);
}

DiscreteDistribution load_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("json: parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("values") || !j.contains("probs")) {
        throw InvalidInput("json: expected object with \"values\" and \"probs\"");
    }
    std::vector<double> values, probs;
    try {
        values = j.at("values").get<std::vector<double>>();
        probs = j.at("probs").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("json: bad arrays: ") + e.what());
    }
    return DiscreteDistribution::from_samples(values, probs);
}

DiscreteDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open input file: " + path);
    }
    if (ends_with(path, ".json")) return load_json(in);
    return load_csv(in);
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open input file: " + path);
    }
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string stress_report_json(const StressReport& report,
                               const std::string& inputs) {
    std::string out = "{";
    out += "\"a_star\":" + format_double(report.a_star);
    out += ",\"lambda\":";
    if (report.lambda) {
        out += format_double(*report.lambda);
    } else if (report.depletion) {
        out += "\"DEPLETION\"";
    } else {
        out += "null";
    }
    out += ",\"value\":" + format_double(report.value);
    out += ",\"g_at_a\":" + format_double(report.g_at_a);
    out += ",\"kl\":" + format_double(report.kl);
    out += ",\"exceeds_half\":" + json_bool(report.exceeds_half);
    out += ",\"fsd_ok\":" + json_bool(report.fsd_ok);
    out += ",\"fsd_max_violation\":" + format_double(report.fsd_max_violation);
    append_inputs(out, inputs);
    out += "}";
    return out;
}

std::string tilted_measure_json(const TiltedMeasure& t,
                                const std::string& inputs) {
    std::string out = "{";
    out += "\"lambda\":" + format_double(t.params().lambda);
    out += ",\"a\":" + format_double(t.params().a);
    out += ",\"z\":" + format_double(t.z());
    out += ",\"below_factor\":" + format_double(t.below_factor());
    out += ",\"above_factor\":" + format_double(t.above_factor());
    out += ",\"values\":" + number_array(t.base().values());
    out += ",\"probs\":" + number_array(t.tilted_probs());
    append_inputs(out, inputs);
    out += "}";
    return out;
}

std::string sweep_json(std::span<const SweepRow> rows,
                       const std::string& inputs) {
    std::string out = "{\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ",";
        out += "{\"lambda\":" + format_double(rows[i].lambda);
        out += ",\"a_star\":" + format_double(rows[i].a_star);
        out += ",\"phi_star\":" + format_double(rows[i].phi_star);
        out += ",\"kl\":" + format_double(rows[i].kl) + "}";
    }
    out += "]";
    append_inputs(out, inputs);
    out += "}";
    return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "lambda,a_star,phi_star,kl\n";
    for (const auto& row : rows) {
        out += format_double(row.lambda) + "," + format_double(row.a_star) + "," +
               format_double(row.phi_star) + "," + format_double(row.kl) + "\n";
    }
    return out;
}

std::string scenario_json(const ScenarioSet& s, const std::string& inputs) {
    std::string out = "{";
    out += "\"lambda\":" + format_double(s.source.lambda);
    out += ",\"a\":" + format_double(s.source.a);
    out += ",\"seed\":" + std::to_string(s.seed);
    out += ",\"method\":\"";
    out += s.method == ScenarioMethod::kResample ? "RESAMPLE" : "WEIGHTS";
    out += "\"";
    out += ",\"draws\":" + number_array(s.draws);
    append_inputs(out, inputs);
    out += "}";
    return out;
}

std::string scenario_csv(const ScenarioSet& s) {
    std::string out = "scenario\n";
    for (double d : s.draws) out += format_double(d) + "\n";
    return out;
}

std::string weights_csv(std::span<const double> values,
                        std::span<const double> weights) {
    std::string out = "value,weight\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += format_double(values[i]) + "," + format_double(weights[i]) + "\n";
    }
    return out;
}

std::string fsd_json(const FsdResult& result, const TiltParams& params,
                     const std::string& inputs) {
    std::string out = "{";
    out += "\"lambda\":" + format_double(params.lambda);
    out += ",\"a\":" + format_double(params.a);
    out += ",\"fsd_ok\":" + json_bool(result.ok);
    out += ",\"fsd_max_violation\":" + format_double(result.max_violation);
    append_inputs(out, inputs);
    out += "}";
    return out;
}

}  // namespace klstress::io
