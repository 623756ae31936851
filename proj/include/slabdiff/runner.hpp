#pragma once

#include "slabdiff/analysis.hpp"
#include "slabdiff/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace slabdiff {

inline constexpr const char *kVersion = "0.1.0";

/// One row of the events file.
struct EventRow {
  Model model = Model::parabolic;
  double u = 0.0;
  ExtremumEvent event;
  std::optional<double> predicted_v;
};

struct RunReport {
  std::string hash;
  std::vector<std::filesystem::path> files;
  std::vector<FieldSlice> fields;
  std::vector<TimeTrace> traces;
  std::vector<EventRow> events;
  SpectralCoefficients coefficients;
};

/// Evaluates every requested model and writes the artifact set into out_dir
/// (created if needed). Identical scenarios produce byte-identical files.
RunReport run_scenario(const Scenario &s, const std::filesystem::path &out_dir);

/// Column layout of field and trace files.
inline constexpr const char *kCsvHeader = "u,v,model,n";
inline constexpr const char *kEventsHeader =
    "model,u,kind,v,value,prominence,predicted_v,rel_error";

/// Minimal SVG polyline chart; one series per (label, x, y).
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_svg(const std::string &title, const std::string &x_label,
                       const std::string &y_label,
                       const std::vector<SvgSeries> &series,
                       const std::vector<double> &guides = {});

} // namespace slabdiff
