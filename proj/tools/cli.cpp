#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "comb/metrics.hpp"
#include "comb/pipeline.hpp"
#include "comb/synth.hpp"
#include "overlay.hpp"
#include "serialize.hpp"

namespace comb::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GrayImage read_image(const std::string& path) {
  try {
    return load_pnm_file(path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot read image: ") + e.what());
  }
}

PipelineConfig read_config(const std::string& path) {
  if (path.empty()) return {};
  return io::config_from_json(io::read_json_file(path));
}

struct SynthArgs {
  SynthParams params;
  std::string out, truth;
};

struct DetectArgs {
  std::string input, config, out, svg;
  bool invert = false;
};

struct EvalArgs {
  std::string report, truth, out;
  double dist_tol = 3.0, angle_tol_deg = 5.0, coverage = 0.6;
};

struct CompareArgs {
  std::string input, config, out, dump_masks;
  bool invert = false;
};

struct CorpusArgs {
  std::string dir, config;
  double dist_tol = 3.0, angle_tol_deg = 5.0, coverage = 0.6;
};

MatchOptions match_options(double dist_tol, double angle_tol_deg, double coverage) {
  MatchOptions opt{dist_tol, angle_tol_deg * std::numbers::pi / 180.0, coverage};
  if (!(opt.dist_tol > 0) || !(opt.angle_tol > 0) || !(opt.coverage_min > 0) || opt.coverage_min > 1) {
    throw UsageError("tolerances must be positive and coverage in (0, 1]");
  }
  return opt;
}

int cmd_synth(const SynthArgs& a) {
  try {
    validate(a.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto [image, truth] = generate(a.params);
  save_pgm_file(image, a.out);
  io::write_text_file(a.truth, io::dump(io::to_json(truth)));
  return 0;
}

int cmd_detect(const DetectArgs& a) {
  const GrayImage img = read_image(a.input);
  PipelineConfig cfg = read_config(a.config);
  if (a.invert) cfg.invert_input = true;
  const DetectionReport report = detect_edges(img, cfg);
  io::write_text_file(a.out, io::dump(io::to_json(report)));
  if (!a.svg.empty()) {
    io::write_text_file(a.svg, io::render_overlay_svg(img, report.segments, report.nodes));
  }
  return 0;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto report = io::report_from_json(io::read_json_file(a.report));
  const auto truth = io::graph_from_json(io::read_json_file(a.truth));
  const auto result =
      match_segments(report.segments, truth, match_options(a.dist_tol, a.angle_tol_deg, a.coverage));
  io::write_text_file(a.out, io::dump(io::to_json(result)));
  char line[96];
  std::snprintf(line, sizeof line, "recall=%.4f precision=%.4f\n", result.recall, result.precision);
  out << line;
  return 0;
}

int cmd_compare(const CompareArgs& a) {
  const GrayImage img = read_image(a.input);
  PipelineConfig cfg = read_config(a.config);
  if (a.invert) cfg.invert_input = true;
  const auto variants = compare_methods(img, cfg);
  std::string csv = "variant,segments\n";
  for (const auto& v : variants) csv += v.name + "," + std::to_string(v.segments) + "\n";
  io::write_text_file(a.out, csv);
  if (!a.dump_masks.empty()) {
    fs::create_directories(a.dump_masks);
    for (const auto& v : variants) {
      save_pgm_file(binary_to_gray(v.mask), (fs::path(a.dump_masks) / (v.name + ".pgm")).string());
    }
  }
  return 0;
}

int cmd_eval_corpus(const CorpusArgs& a, std::ostream& out) {
  if (!fs::is_directory(a.dir)) throw UsageError("not a directory: " + a.dir);
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    const auto& p = entry.path();
    if (p.extension() == ".pgm" && fs::exists(fs::path(p).replace_extension(".json"))) {
      images.push_back(p);
    }
  }
  std::sort(images.begin(), images.end());
  if (images.empty()) throw UsageError("no <name>.pgm / <name>.json pairs in " + a.dir);
  const PipelineConfig cfg = read_config(a.config);
  const MatchOptions opt = match_options(a.dist_tol, a.angle_tol_deg, a.coverage);

  std::vector<std::future<MatchResult>> jobs;
  for (const auto& p : images) {
    jobs.push_back(std::async(std::launch::async, [&, p] {
      const auto truth = io::graph_from_json(io::read_json_file(fs::path(p).replace_extension(".json").string()));
      return match_segments(detect_edges(read_image(p.string()), cfg).segments, truth, opt);
    }));
  }
  std::vector<MatchResult> results;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    results.push_back(jobs[i].get());
    names.push_back(images[i].stem().string());
  }
  out << format_summary(corpus_report(results, names));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Honeycomb wall and node detector"};
  app.name("comb");
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic honeycomb image and its ground truth");
  s->add_option("--cols", synth.params.cols, "Cells per row")->required();
  s->add_option("--rows", synth.params.rows, "Cell rows")->required();
  s->add_option("--cell", synth.params.cell_radius, "Cell radius in pixels")->required();
  s->add_option("--jitter", synth.params.jitter, "Node jitter as a fraction of the radius");
  s->add_option("--noise", synth.params.noise_sigma, "Gaussian noise sigma");
  s->add_option("--gradient", synth.params.gradient_strength, "Illumination ramp amplitude");
  s->add_option("--blur", synth.params.blur_sigma, "Gaussian blur sigma");
  s->add_option("--thickness", synth.params.wall_thickness, "Wall thickness in pixels");
  s->add_option("--wall", synth.params.wall_intensity, "Wall intensity");
  s->add_option("--background", synth.params.background_intensity, "Background intensity");
  s->add_option("--seed", synth.params.seed, "Random seed");
  s->add_option("--out", synth.out, "Output PGM")->required();
  s->add_option("--truth", synth.truth, "Output ground-truth JSON")->required();

  DetectArgs detect;
  auto* d = app.add_subcommand("detect", "Detect honeycomb walls and nodes");
  d->add_option("--input", detect.input, "Input PGM/PPM")->required();
  d->add_option("--config", detect.config, "Pipeline config JSON");
  d->add_option("--out", detect.out, "Output report JSON")->required();
  d->add_option("--svg", detect.svg, "Optional SVG overlay");
  d->add_flag("--invert", detect.invert, "Walls are darker than the background");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score a detection report against ground truth");
  e->add_option("--report", eval.report, "Report JSON")->required();
  e->add_option("--truth", eval.truth, "Ground-truth JSON")->required();
  e->add_option("--dist-tol", eval.dist_tol, "Distance tolerance in pixels");
  e->add_option("--angle-tol", eval.angle_tol_deg, "Angle tolerance in degrees");
  e->add_option("--coverage", eval.coverage, "Minimum covered fraction of an edge");
  e->add_option("--out", eval.out, "Output metrics JSON")->required();

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "Hough segment counts for every preprocessing variant");
  c->add_option("--input", compare.input, "Input PGM/PPM")->required();
  c->add_option("--config", compare.config, "Pipeline config JSON");
  c->add_option("--out", compare.out, "Output CSV")->required();
  c->add_option("--dump-masks", compare.dump_masks, "Directory for per-variant masks");
  c->add_flag("--invert", compare.invert, "Walls are darker than the background");

  CorpusArgs corpus;
  auto* k = app.add_subcommand("eval-corpus", "Detect and score every <name>.pgm/<name>.json pair");
  k->add_option("--dir", corpus.dir, "Corpus directory")->required();
  k->add_option("--config", corpus.config, "Pipeline config JSON");
  k->add_option("--dist-tol", corpus.dist_tol, "Distance tolerance in pixels");
  k->add_option("--angle-tol", corpus.angle_tol_deg, "Angle tolerance in degrees");
  k->add_option("--coverage", corpus.coverage, "Minimum covered fraction of an edge");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "comb: " << ex.what() << "\n";
    return 2;
  }

  try {
    if (*s) return cmd_synth(synth);
    if (*d) return cmd_detect(detect);
    if (*e) return cmd_eval(eval, out);
    if (*c) return cmd_compare(compare);
    if (*k) return cmd_eval_corpus(corpus, out);
  } catch (const UsageError& ex) {
    err << "comb: " << ex.what() << "\n";
    return 2;
  } catch (const io::SchemaError& ex) {
    err << "comb: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "comb: internal error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace comb::cli
