#include "serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace comb::io {

namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw SchemaError("unknown config key '" + where + key + "'");
  }
}

template <typename T>
void read_field(const Json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  bool ok = false;
  if constexpr (std::is_same_v<T, bool>) {
    ok = v.is_boolean();
  } else if constexpr (std::is_integral_v<T>) {
    ok = v.is_number_integer();
  } else {
    ok = v.is_number();
  }
  if (!ok) throw SchemaError("config key '" + where + key + "' has the wrong type");
  out = v.get<T>();
}

Json se_json(const SeSpec& se) { return Json{{"shape", to_string(se.shape)}, {"size", se.size}}; }

SeSpec se_from_json(const Json& v, const std::string& where) {
  reject_unknown(v, {"shape", "size"}, where + ".");
  SeSpec se;
  if (v.contains("shape")) {
    if (!v.at("shape").is_string()) throw SchemaError("config key '" + where + ".shape' must be a string");
    try {
      se.shape = se_shape_from_string(v.at("shape").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError("config key '" + where + ".shape': " + e.what());
    }
  }
  read_field(v, "size", se.size, where + ".");
  return se;
}

Json point_json(const Point& p) { return Json::array({p.x, p.y}); }

std::vector<double> numbers(const Json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) {
    throw SchemaError(what + " must be an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw SchemaError(what + " must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

const Json& require(const Json& doc, const char* key, const std::string& what) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(what + " is missing '" + key + "'");
  return doc.at(key);
}

}  // namespace

Json to_json(const PipelineConfig& c) {
  return Json{{"threshold", c.threshold},
              {"invert_input", c.invert_input},
              {"dilate_se", se_json(c.dilate_se)},
              {"erode_se", se_json(c.erode_se)},
              {"skeleton_se", se_json(c.skeleton_se)},
              {"erosion_steps", c.erosion_steps},
              {"hough",
               {{"rho_res", c.hough.rho_res},
                {"theta_res", c.hough.theta_res},
                {"votes_min", c.hough.votes_min},
                {"min_len", c.hough.min_len},
                {"max_gap", c.hough.max_gap},
                {"peak_window", c.hough.peak_window},
                {"claim_support", c.hough.claim_support}}},
              {"canny", {{"sigma", c.canny.sigma}, {"low", c.canny.low}, {"high", c.canny.high}}},
              {"merge_dist", c.merge_dist},
              {"merge_angle", c.merge_angle},
              {"node_radius", c.node_radius}};
}

PipelineConfig config_from_json(const Json& doc) {
  reject_unknown(doc,
                 {"threshold", "invert_input", "dilate_se", "erode_se", "skeleton_se",
                  "erosion_steps", "hough", "canny", "merge_dist", "merge_angle", "node_radius"},
                 "");
  PipelineConfig c;
  read_field(doc, "threshold", c.threshold, "");
  read_field(doc, "invert_input", c.invert_input, "");
  if (doc.contains("dilate_se")) c.dilate_se = se_from_json(doc.at("dilate_se"), "dilate_se");
  if (doc.contains("erode_se")) c.erode_se = se_from_json(doc.at("erode_se"), "erode_se");
  if (doc.contains("skeleton_se")) c.skeleton_se = se_from_json(doc.at("skeleton_se"), "skeleton_se");
  read_field(doc, "erosion_steps", c.erosion_steps, "");
  if (doc.contains("hough")) {
    const Json& h = doc.at("hough");
    reject_unknown(h, {"rho_res", "theta_res", "votes_min", "min_len", "max_gap", "peak_window",
                       "claim_support"},
                   "hough.");
    read_field(h, "rho_res", c.hough.rho_res, "hough.");
    read_field(h, "theta_res", c.hough.theta_res, "hough.");
    read_field(h, "votes_min", c.hough.votes_min, "hough.");
    read_field(h, "min_len", c.hough.min_len, "hough.");
    read_field(h, "max_gap", c.hough.max_gap, "hough.");
    read_field(h, "peak_window", c.hough.peak_window, "hough.");
    read_field(h, "claim_support", c.hough.claim_support, "hough.");
  }
  if (doc.contains("canny")) {
    const Json& k = doc.at("canny");
    reject_unknown(k, {"sigma", "low", "high"}, "canny.");
    read_field(k, "sigma", c.canny.sigma, "canny.");
    read_field(k, "low", c.canny.low, "canny.");
    read_field(k, "high", c.canny.high, "canny.");
  }
  read_field(doc, "merge_dist", c.merge_dist, "");
  read_field(doc, "merge_angle", c.merge_angle, "");
  read_field(doc, "node_radius", c.node_radius, "");
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("invalid config: ") + e.what());
  }
  return c;
}

Json to_json(const DetectionReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.per_stage) stages.push_back({{"label", s.label}, {"segments", s.segments}});
  Json segs = Json::array();
  for (const auto& s : r.segments) segs.push_back({s.x1, s.y1, s.x2, s.y2});
  Json nodes = Json::array();
  for (const auto& p : r.nodes) nodes.push_back(point_json(p));
  return Json{{"config", to_json(r.config)},
              {"per_stage", stages},
              {"segments", segs},
              {"nodes", nodes}};
}

ReportDoc report_from_json(const Json& doc) {
  ReportDoc out;
  const Json& segs = require(doc, "segments", "report");
  if (!segs.is_array()) throw SchemaError("report 'segments' must be an array");
  for (const auto& s : segs) {
    if (!s.is_array() || s.size() != 4) throw SchemaError("report segment must be [x1,y1,x2,y2]");
    for (const auto& v : s) {
      if (!v.is_number_integer()) throw SchemaError("report segment coordinates must be integers");
    }
    out.segments.push_back({s[0].get<int>(), s[1].get<int>(), s[2].get<int>(), s[3].get<int>()});
  }
  if (doc.contains("nodes")) {
    if (!doc.at("nodes").is_array()) throw SchemaError("report 'nodes' must be an array");
    for (const auto& p : doc.at("nodes")) {
      const auto v = numbers(p, 2, "report node");
      out.nodes.push_back({v[0], v[1]});
    }
  }
  return out;
}

Json to_json(const CellGraph& g) {
  Json nodes = Json::array();
  for (const auto& p : g.nodes) nodes.push_back(point_json(p));
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return Json{{"image_size", {g.width, g.height}}, {"nodes", nodes}, {"edges", edges}};
}

CellGraph graph_from_json(const Json& doc) {
  CellGraph g;
  const auto size = numbers(require(doc, "image_size", "truth"), 2, "truth 'image_size'");
  g.width = static_cast<int>(size[0]);
  g.height = static_cast<int>(size[1]);
  const Json& nodes = require(doc, "nodes", "truth");
  if (!nodes.is_array()) throw SchemaError("truth 'nodes' must be an array");
  for (const auto& p : nodes) {
    const auto v = numbers(p, 2, "truth node");
    g.nodes.push_back({v[0], v[1]});
  }
  const Json& edges = require(doc, "edges", "truth");
  if (!edges.is_array()) throw SchemaError("truth 'edges' must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw SchemaError("truth edge must be [i,j] with integer indices");
    }
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  try {
    validate(g);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("invalid truth graph: ") + e.what());
  }
  return g;
}

Json to_json(const MatchResult& r) {
  Json matched = Json::array();
  for (const auto& [g, s] : r.matched) matched.push_back({g, s});
  return Json{{"recall", r.recall},
              {"precision", r.precision},
              {"matched", matched},
              {"unmatched_gt", r.unmatched_gt},
              {"unmatched_detected", r.unmatched_detected}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const Json& doc) { return doc.dump() + "\n"; }

}  // namespace comb::io
