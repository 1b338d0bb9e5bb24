#ifndef BOHM_CLI_SCENARIO_HPP
#define BOHM_CLI_SCENARIO_HPP

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bohm/cli/config.hpp"
#include "bohm/energyshell.hpp"
#include "bohm/ensemble.hpp"
#include "bohm/error.hpp"
#include "bohm/imaging.hpp"
#include "bohm/io/csv.hpp"
#include "bohm/io/svg.hpp"
#include "bohm/regime.hpp"
#include "bohm/trajectories.hpp"
#include "bohm/wavecore.hpp"

namespace bohm::cli {

using json = nlohmann::ordered_json;

struct ExitReport {
  int exit_code = exit_code::ok;
  std::vector<std::string> files_written;
  std::string error_name;
  std::string message;
};

namespace detail {

class Writer {
public:
  explicit Writer(const ScenarioConfig &cfg) : dir_(cfg.out_dir), format_(cfg.format) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) throw ConfigError("out_dir '" + cfg.out_dir + "' is not writable");
  }

  void text(const std::string &name, const std::string &content) {
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary);
    os << content;
    if (!os) throw ResourceError("cannot write " + path.string());
    files_.push_back(path.string());
  }

  void json_file(const std::string &name, const json &j) { text(name, j.dump(2) + "\n"); }

  /// Writes `stem`.csv or `stem`.json (array of records) per the configured format.
  void table(const std::string &stem, const io::CsvTable &t) {
    if (format_ == Format::Csv) {
      std::ostringstream os;
      io::write_csv(os, t);
      text(stem + ".csv", os.str());
      return;
    }
    json arr = json::array();
    for (const auto &row : t.rows) {
      json rec = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) rec[t.header[i]] = row[i];
      arr.push_back(rec);
    }
    json_file(stem + ".json", arr);
  }

  [[nodiscard]] std::vector<std::string> files() const { return files_; }

private:
  std::filesystem::path dir_;
  Format format_;
  std::vector<std::string> files_;
};

inline DecayParams decay_params(const ScenarioConfig &c) {
  return {c.num("m1"), c.num("m2"), c.num("alpha"), c.num("sigma")};
}

inline void run_regime(const ScenarioConfig &c, Writer &w) {
  regime::RegimeInput in;
  try {
    in.source_width_L0 = regime::parse_length(c.str("L0"));
    in.wavelength = regime::parse_length(c.str("wavelength"));
  } catch (const DomainError &e) {
    throw ConfigError(e.what());
  }
  const auto tr = regime::alignment_transition(in);
  json j;
  j["T_seconds"] = tr.T_seconds;
  j["R_meters"] = tr.R_meters;
  w.json_file("regime.json", j);
}

inline void run_trajectories(const ScenarioConfig &c, Writer &w) {
  const DecayParams p = decay_params(c);
  const PairWave wave(p);
  const PairState start{c.vec3("r1"), c.vec3("r2"), c.num("t0")};
  const Trajectory traj = integrate_pair(wave, start, c.num("t_end"), c.num("dt"), c.count("stride"));
  io::CsvTable t{{"t", "r1x", "r1y", "r1z", "r2x", "r2y", "r2z"}, {}};
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto &s = traj.states[i];
    t.rows.push_back({traj.times[i], s.r1.x, s.r1.y, s.r1.z, s.r2.x, s.r2.y, s.r2.z});
  }
  w.table("trajectory", t);
  if (c.emit_svg) {
    io::Series s1{t.column("t"), t.column("r1x"), "#1f4e9c"};
    io::Series s2{t.column("t"), t.column("r2x"), "#b23a48"};
    w.text("trajectory.svg", io::render_svg({s1, s2}, {"Pair trajectories", "t", "x", 640, 400, {}, false}));
  }
}

inline void run_ensemble(const ScenarioConfig &c, Writer &w) {
  const EnsembleSpec spec{c.count("n"), c.seed, decay_params(c)};
  spec.validate();
  io::CsvTable t{{"t", "analytic", "empirical", "se"}, {}};
  for (double time : c.list("times")) {
    const auto r = collective_variance(spec, time);
    t.rows.push_back({r.t, r.analytic, r.empirical, r.std_error});
  }
  w.table("ensemble_variance", t);
  const auto h = heisenberg_product(spec);
  json j;
  j["analytic_ratio"] = h.analytic_ratio;
  j["mc_ratio"] = h.mc_ratio;
  j["mc_std_error"] = h.mc_std_error;
  w.json_file("heisenberg.json", j);
  if (c.emit_svg) {
    io::Series a{t.column("t"), t.column("analytic"), "#1f4e9c"};
    io::Series e{t.column("t"), t.column("empirical"), "#b23a48"};
    w.text("ensemble_variance.svg",
           io::render_svg({a, e}, {"Collective-coordinate variance", "t", "variance", 640, 400, {}, false}));
  }
}

inline imaging::ApertureMask mask_from(const ScenarioConfig &c) {
  imaging::ApertureMask m;
  const std::string &shape = c.str("mask");
  if (shape == "open") m.shape = imaging::ApertureMask::Shape::Open;
  else if (shape == "slit") m.shape = imaging::ApertureMask::Shape::Slit;
  else if (shape == "disk") m.shape = imaging::ApertureMask::Shape::Disk;
  else if (shape == "double_slit") m.shape = imaging::ApertureMask::Shape::DoubleSlit;
  else throw ConfigError("key 'mask' must be open, slit, disk or double_slit");
  m.width = c.num("mask_width");
  m.radius = c.num("mask_radius");
  m.separation = c.num("mask_separation");
  const auto center = c.list("mask_center");
  if (center.size() != 2) throw ConfigError("key 'mask_center' needs two components");
  m.center = {center[0], center[1]};
  m.plane_offset = c.num("mask_offset");
  return m;
}

inline void run_imaging(const ScenarioConfig &c, Writer &w) {
  const auto lens = imaging::LensSetup::make(c.num("f"), c.num("S"), c.num("S_prime"));
  const auto mask = mask_from(c);
  const EnsembleSpec spec{c.count("n"), c.seed, decay_params(c)};
  const auto range = c.list("scan_range");
  if (range.size() != 2) throw ConfigError("key 'scan_range' needs two values");
  imaging::ImagingOptions opt;
  opt.p0 = c.num("p0");
  opt.decay_fraction = c.num("decay_fraction");
  opt.scan_lo = range[0];
  opt.scan_hi = range[1];
  opt.record_tracks = c.count("tracks");
  opt.max_attempts = c.count("max_attempts");
  const auto res = imaging::ghost_image_scan(lens, mask, spec, c.count("scan_bins"), opt);

  io::CsvTable img{{"bin_center", "counts"}, {}};
  for (std::size_t i = 0; i < res.image.counts.size(); ++i) img.rows.push_back({res.image.bin_center(i), res.image.counts[i]});
  w.table("image", img);

  io::CsvTable tracks{{"coincidence", "particle", "t", "x", "y", "z"}, {}};
  for (const auto &tr : res.tracks)
    for (const auto &pt : tr.points)
      tracks.rows.push_back({static_cast<double>(tr.coincidence), static_cast<double>(tr.particle), pt.t,
                             pt.position.x, pt.position.y, pt.position.z});
  w.table("imaging_trajectories", tracks);

  json summary;
  summary["accepted"] = res.accepted;
  summary["attempts"] = res.attempts;
  summary["mean"] = res.mean;
  summary["rms"] = res.rms;
  summary["S_prime"] = lens.S_prime;
  w.json_file("image_summary.json", summary);

  if (c.emit_svg) {
    w.text("image.svg", io::render_svg({{img.column("bin_center"), img.column("counts"), "#1f4e9c", true}},
                                       {"Coincidence image", "scan coordinate", "counts", 640, 400, {}, false}));
    if (!res.tracks.empty()) {
      // Unfolded schematic: axial position horizontally, first transverse coordinate vertically.
      const TransverseBasis basis(lens.axis);
      std::vector<io::Series> lines;
      for (const auto &tr : res.tracks) {
        io::Series s;
        s.color = tr.particle == 1 ? "#1f4e9c" : "#b23a48";
        for (const auto &pt : tr.points) {
          s.x.push_back(dot(pt.position, lens.axis));
          s.y.push_back(basis.project(pt.position).u);
        }
        lines.push_back(std::move(s));
      }
      w.text("fig1.svg", io::render_svg(lines, {"Coincidence trajectories", "axial position", "transverse position",
                                                720, 400, {0.0}, false}));
    }
  }
}

inline void run_energyshell(const ScenarioConfig &c, Writer &w) {
  energyshell::EnergyBand band{c.num("E_plus"), c.num("E_minus"), c.num("mu"), 1.0};
  band.validate();
  const double x_max = c.num("x_max");
  const std::size_t n = c.count("points");
  if (!(x_max > 0.0) || n < 2) throw ConfigError("energyshell needs x_max > 0 and points >= 2");
  std::vector<double> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(x_max * static_cast<double>(i) / static_cast<double>(n));
  const auto g = energyshell::g_profile(band, xs);
  io::CsvTable f2{{"x", "g"}, {}}, f3{{"x", "g2"}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    f2.rows.push_back({xs[i], g.values[i]});
    f3.rows.push_back({xs[i], g.values[i] * g.values[i]});
  }
  w.table("fig2", f2);
  w.table("fig3", f3);
  if (c.emit_svg) {
    w.text("fig2.svg", io::render_svg({{xs, f2.column("g"), "#1f4e9c"}}, {"g(x)", "x [λ_c]", "g", 640, 400, {}, false}));
    w.text("fig3.svg",
           io::render_svg({{xs, f3.column("g2"), "#1f4e9c"}}, {"g(x)^2", "x [λ_c]", "g^2", 640, 400, {}, false}));
  }
  if (c.flag("convolution")) {
    const energyshell::SpectralGrid grid{c.count("grid_n"), c.num("grid_half_width")};
    const double alpha = energyshell::alpha_for_density_fwhm(c.num("h_fwhm"));
    const auto r = energyshell::energy_band_convolution(band, alpha, c.num("t"), grid);
    json j;
    j["alpha"] = alpha;
    j["dev_to_h"] = r.dev_to_h;
    j["dev_to_g"] = r.dev_to_g;
    w.json_file("convolution.json", j);
    io::CsvTable cv{{"x", "conv"}, {}};
    for (std::size_t i = 0; i < r.conv.xs.size(); ++i) cv.rows.push_back({r.conv.xs[i], r.conv.values[i]});
    w.table("convolution", cv);
  }
}

} // namespace detail

/// Runs one scenario; library errors become a nonzero exit code carrying the
/// error's name.
inline ExitReport run_scenario(const ScenarioConfig &cfg) {
  ExitReport rep;
  try {
    detail::Writer w(cfg);
    if (cfg.command == "regime") detail::run_regime(cfg, w);
    else if (cfg.command == "trajectories") detail::run_trajectories(cfg, w);
    else if (cfg.command == "ensemble") detail::run_ensemble(cfg, w);
    else if (cfg.command == "imaging") detail::run_imaging(cfg, w);
    else if (cfg.command == "energyshell") detail::run_energyshell(cfg, w);
    else throw ConfigError("unknown command '" + cfg.command + "'");
    rep.files_written = w.files();
  } catch (const Error &e) {
    rep.exit_code = exit_code_for(e);
    rep.error_name = e.name();
    rep.message = e.what();
  } catch (const std::bad_alloc &) {
    rep.exit_code = exit_code::resource;
    rep.error_name = "resource_error";
    rep.message = "out of memory";
  }
  return rep;
}

} // namespace bohm::cli

#endif // BOHM_CLI_SCENARIO_HPP
