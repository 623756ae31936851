#include "slabdiff/runner.hpp"

#include "slabdiff/error.hpp"
#include "slabdiff/fd.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace slabdiff {
namespace fs = std::filesystem;
namespace {

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out)
    throw Error("failed writing '" + path.string() + "'");
}

std::optional<EchoSource> echo_source(const InitialProfile &p) {
  if (std::holds_alternative<Gaussian>(p))
    return EchoSource::center;
  if (std::holds_alternative<SurfaceCosh>(p))
    return EchoSource::surface;
  return std::nullopt;
}

std::optional<double> nearest(const std::vector<double> &xs, double v) {
  std::optional<double> best;
  for (double x : xs)
    if (!best || std::abs(x - v) < std::abs(*best - v))
      best = x;
  return best;
}

void append_row(std::string &out, double u, double v, Model model, double n,
                std::optional<double> u1 = std::nullopt) {
  out += format_double(u);
  out += ',';
  out += format_double(v);
  out += ',';
  out += to_string(model);
  out += ',';
  out += format_double(n);
  if (u1) {
    out += ',';
    out += format_double(*u1);
  }
  out += '\n';
}

} // namespace

RunReport run_scenario(const Scenario &s, const fs::path &out_dir) {
  validate(s);
  RunReport report;
  report.hash = scenario_hash(s);
  report.coefficients = compute_coefficients(s.profile, s.truncation_M);
  const double k0 = report.coefficients.k0;
  const auto params = DimensionlessParams::from_epsilon(s.eps);

  std::vector<SpectralSolution> solutions;
  for (Model m : s.models)
    if (m != Model::fd)
      solutions.emplace_back(m, report.coefficients, s.eps);

  const Grid1D grid = s.u_grid();
  std::string preamble = "# name=" + s.name + " hash=" + report.hash +
                         " version=" + kVersion +
                         " truncation_M=" + std::to_string(s.truncation_M) +
                         " u_grid=uniform:" + std::to_string(grid.size());
  const std::string svg_comment = "<!-- " + preamble.substr(2) + " -->\n";

  std::optional<FdConfig> fd_cfg;
  std::vector<FieldSlice> fd_slices;
  if (s.has(Model::fd) && !s.v_list.empty()) {
    FdConfig cfg;
    cfg.nu = s.fd.nu.value_or(kDefaultFdCells);
    cfg.eps = s.eps;
    cfg.dv = s.fd.dv.value_or(default_dv(cfg.nu, s.eps));
    cfg.v_end = s.v_list.back();
    cfg.snapshot_times = TimeGrid::from_points(s.v_list);
    fd_slices = s.eps > 0.0 ? fd_solve_telegraph(s.profile, cfg)
                            : fd_solve_heat(s.profile, cfg);
    fd_cfg = cfg;
  }

  fs::create_directories(out_dir);
  nlohmann::json meta;
  meta["name"] = s.name;
  meta["hash"] = report.hash;
  meta["version"] = kVersion;
  meta["eps"] = s.eps;
  meta["wave_speed_c"] =
      params.wave_speed_c ? nlohmann::json(*params.wave_speed_c) : nullptr;
  meta["profile"] = report.coefficients.profile_tag;
  meta["truncation_M"] = s.truncation_M;
  meta["k0"] = k0;
  meta["k_tail"] = report.coefficients.tail();
  meta["u_grid"] = {{"kind", "uniform"}, {"points", grid.size()}};
  meta["scenario"] = serialize(s);
  if (fd_cfg) {
    std::vector<double> recorded;
    for (const auto &f : fd_slices)
      recorded.push_back(f.v);
    meta["fd"] = {{"nu", fd_cfg->nu},
                  {"dv", fd_cfg->dv},
                  {"scheme", s.eps > 0.0 ? "telegraph" : "heat"},
                  {"recorded_v", recorded}};
  }

  // Field snapshots.
  for (std::size_t k = 0; k < s.v_list.size(); ++k) {
    const double v = s.v_list[k];
    const auto u1 = [&](double at_v) -> std::optional<double> {
      if (!s.output.wavefront)
        return std::nullopt;
      return 0.5 - *params.wave_speed_c * at_v;
    };
    std::string csv = preamble;
    if (fd_cfg)
      csv += " fd_grid=uniform:" + std::to_string(fd_cfg->nu + 1) +
             " fd_dv=" + format_double(fd_cfg->dv);
    csv += '\n';
    csv += kCsvHeader;
    if (s.output.wavefront)
      csv += ",u1";
    csv += '\n';

    std::vector<SvgSeries> plot;
    for (Model m : s.models) {
      if (m == Model::fd) {
        const FieldSlice &f = fd_slices[k];
        for (std::size_t i = 0; i < f.grid.size(); ++i)
          append_row(csv, f.grid[i], f.v, m, f.values[i], u1(f.v));
        plot.push_back({"fd (v=" + format_double(f.v) + ")",
                        {f.grid.points().begin(), f.grid.points().end()},
                        f.values});
        report.fields.push_back(f);
        continue;
      }
      const auto &sol = *std::find_if(
          solutions.begin(), solutions.end(),
          [m](const SpectralSolution &x) { return x.model() == m; });
      FieldSlice f = sol.field(grid, v);
      for (std::size_t i = 0; i < grid.size(); ++i)
        append_row(csv, grid[i], v, m, f.values[i], u1(v));
      plot.push_back({std::string(to_string(m)),
                      {grid.points().begin(), grid.points().end()},
                      f.values});
      report.fields.push_back(std::move(f));
    }

    const std::string stem = "field_v" + format_double(v);
    if (s.output.csv) {
      write_file(out_dir / (stem + ".csv"), csv);
      report.files.push_back(out_dir / (stem + ".csv"));
    }
    if (s.output.svg) {
      std::vector<double> guides;
      if (s.output.wavefront) {
        const double front = *u1(v);
        guides = {-front, front};
      }
      write_file(out_dir / (stem + ".svg"),
                 svg_comment + render_svg(s.name + ": n(u, v=" + format_double(v) + ")", "u",
                            "n", plot, guides));
      report.files.push_back(out_dir / (stem + ".svg"));
    }
  }

  // Point traces, extrema and monotonicity.
  std::string events_csv = preamble + '\n' + kEventsHeader + '\n';
  nlohmann::json monotonicity = nlohmann::json::object();
  if (!s.trace_u.empty()) {
    const TimeGrid times = s.v_range->grid();
    meta["v_grid"] = {{"kind", "linspace"},
                      {"start", s.v_range->start},
                      {"stop", s.v_range->stop},
                      {"points", s.v_range->count}};
    for (double u : s.trace_u) {
      std::string csv = preamble + " v_grid=linspace:" +
                        format_double(s.v_range->start) + ':' +
                        format_double(s.v_range->stop) + ':' +
                        std::to_string(s.v_range->count) + '\n' + kCsvHeader +
                        '\n';
      std::vector<SvgSeries> plot;
      std::optional<EchoLadder> ladder;
      const auto source = echo_source(s.profile);
      if (source && s.eps > 0.0 && (u == 0.0 || std::abs(u) == 0.5)) {
        const int count = static_cast<int>(
            std::ceil(s.v_range->stop / (0.5 * std::sqrt(s.eps)))) + 2;
        ladder = predict_echo_ladder(*source, u, s.eps, count);
      }

      for (const auto &sol : solutions) {
        TimeTrace tr = sol.trace(u, times);
        for (std::size_t i = 0; i < times.size(); ++i)
          append_row(csv, u, times[i], sol.model(), tr.values[i]);
        plot.push_back({std::string(to_string(sol.model())),
                        {times.points().begin(), times.points().end()},
                        tr.values});
        if (s.output.events) {
          const auto found = detect_extrema(tr, s.output.v_min_cutoff,
                                            s.output.prominence * k0);
          for (const auto &e : found) {
            EventRow row{sol.model(), u, e, std::nullopt};
            if (ladder && e.kind == ExtremumKind::maximum)
              row.predicted_v = nearest(ladder->times, e.v);
            events_csv += std::string(to_string(row.model)) + ',' +
                          format_double(u) + ',' +
                          std::string(to_string(e.kind)) + ',' +
                          format_double(e.v) + ',' + format_double(e.value) +
                          ',' + format_double(e.prominence) + ',';
            if (row.predicted_v)
              events_csv += format_double(*row.predicted_v) + ',' +
                            format_double((e.v - *row.predicted_v) /
                                          *row.predicted_v);
            else
              events_csv += ',';
            events_csv += '\n';
            report.events.push_back(row);
          }
          monotonicity[std::string(to_string(sol.model())) + "@u=" +
                       format_double(u)] = std::string(to_string(
              classify_monotone(tr, s.output.v_min_cutoff,
                                s.output.monotone_slack)));
        }
        report.traces.push_back(std::move(tr));
      }

      const std::string stem = "trace_u" + format_double(u);
      if (s.output.csv) {
        write_file(out_dir / (stem + ".csv"), csv);
        report.files.push_back(out_dir / (stem + ".csv"));
      }
      if (s.output.svg) {
        write_file(out_dir / (stem + ".svg"),
                   svg_comment + render_svg(s.name + ": n(u=" + format_double(u) + ", v)",
                              "v", "n", plot,
                              ladder ? ladder->times : std::vector<double>{}));
        report.files.push_back(out_dir / (stem + ".svg"));
      }
    }
  }
  if (s.output.events) {
    write_file(out_dir / "events.csv", events_csv);
    report.files.push_back(out_dir / "events.csv");
    meta["monotonicity"] = monotonicity;
  }

  std::vector<std::string> names;
  for (const auto &f : report.files)
    names.push_back(f.filename().string());
  meta["files"] = names;
  write_file(out_dir / "run.json", meta.dump(2) + '\n');
  report.files.push_back(out_dir / "run.json");
  return report;
}

} // namespace slabdiff
