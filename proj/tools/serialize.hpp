#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "comb/metrics.hpp"
#include "comb/pipeline.hpp"
#include "comb/synth.hpp"

namespace comb::io {

using Json = nlohmann::ordered_json;

/// Raised for malformed or schema-violating documents; maps to exit code 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const PipelineConfig& cfg);
/// Every key optional; unknown keys and wrong types are rejected, naming the key.
PipelineConfig config_from_json(const Json& doc);

Json to_json(const DetectionReport& report);
struct ReportDoc {
  std::vector<Segment> segments;
  std::vector<Point> nodes;
};
ReportDoc report_from_json(const Json& doc);

Json to_json(const CellGraph& graph);
CellGraph graph_from_json(const Json& doc);

Json to_json(const MatchResult& result);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Compact single-line dump with a trailing newline.
std::string dump(const Json& doc);

}  // namespace comb::io
