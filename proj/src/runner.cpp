#include "decaylab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "decaylab/dclb.hpp"
#include "decaylab/decay_character.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/linear_evolution.hpp"
#include "decaylab/parallel.hpp"
#include "decaylab/simulation.hpp"
#include "decaylab/symbols.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace decaylab {

std::string norm_label(double s) {
  if (s == 0.0) return "l2";
  char buf[32];
  std::snprintf(buf, sizeof buf, "h%g", s);
  return buf;
}

fs::path output_root(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("DECAYLAB_OUT"); env && *env) return env;
  return "runs";
}

namespace {

std::string utc_stamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

// Creates a fresh directory, suffixing -2, -3, ... on collision.
fs::path claim_dir(const fs::path& root, const std::string& id, std::string& used) {
  fs::create_directories(root);
  for (int k = 1;; ++k) {
    used = k == 1 ? id : id + "-" + std::to_string(k);
    const fs::path p = root / used;
    if (fs::create_directory(p)) return p;
  }
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

void write_atomic(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp";
  write_file(tmp, text);
  fs::rename(tmp, p);
}

DissipativeSymbol make_symbol(const ExperimentConfig& c) {
  switch (c.model) {
    case ModelKind::Linear:
      if (c.symbol == "compressible_stokes") return DissipativeSymbol::compressible_stokes(c.dim, c.epsilon);
      return DissipativeSymbol::fractional_laplacian(c.dim, c.alpha, c.kappa, c.components);
    case ModelKind::QG:
      return DissipativeSymbol::fractional_laplacian(2, c.alpha, c.kappa, 1);
    case ModelKind::Compressible:
      return DissipativeSymbol::compressible_stokes(3, c.epsilon);
  }
  throw std::logic_error("unhandled model");
}

// r^* from the config, else estimated from the datum, else from its construction.
CharacterValue resolve_r_star(const ExperimentConfig& c, const SpectralField& datum,
                              std::string& source) {
  if (c.r_star) {
    source = "config";
    return CharacterValue::finite(*c.r_star);
  }
  try {
    const auto est = estimate_character(datum, 0.0);
    source = "estimated (r_hat=" + fmt17(est.r_hat) + ", " + to_string(est.classification) + ")";
    return base_character(est);
  } catch (const InsufficientResolution& e) {
    source = "construction (grid too coarse to estimate)";
    switch (c.datum.kind) {
      case DatumKind::PowerLaw:
      case DatumKind::RandomPhasePowerLaw: return CharacterValue::finite(c.datum.q);
      case DatumKind::Gaussian: return CharacterValue::finite(0.0);
      case DatumKind::Annulus: return CharacterValue::infinite();
    }
  }
  throw std::logic_error("unhandled datum kind");
}

json character_json(const CharacterValue& r) {
  json j;
  j["kind"] = to_string(r.kind);
  if (std::isfinite(r.value)) j["value"] = r.value;
  else j["value"] = nullptr;
  return j;
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string series_csv(const NormTimeSeries& main, const std::vector<double>& s_values,
                       const NormTimeSeries* lin, const NormTimeSeries* diff) {
  std::ostringstream o;
  o << 't';
  for (double s : s_values) o << ',' << norm_label(s) << "_sq";
  if (lin) o << ",lin_l2_sq,diff_l2_sq";
  o << '\n';
  for (std::size_t i = 0; i < main.times.size(); ++i) {
    o << fmt17(main.times[i]);
    for (double v : main.values[i]) o << ',' << fmt17(v);
    if (lin) o << ',' << fmt17(lin->values[i][0]) << ',' << fmt17(diff->values[i][0]);
    o << '\n';
  }
  return o.str();
}

BoundCheck make_check(const std::string& label, double s, BoundModel model,
                      const ExperimentConfig& c, const CharacterValue& r_star,
                      const std::vector<double>& times, const std::vector<double>& values,
                      std::pair<double, double> window, std::pair<double, double> validity,
                      double tol) {
  BoundCheck chk;
  chk.label = label;
  chk.s = s;
  chk.tol = tol;
  try {
    chk.fit = fit_power_law(times, values, window);
  } catch (const FitError& e) {
    chk.note = std::string("fit failed: ") + e.what();
  }
  try {
    const double alpha = c.model == ModelKind::Compressible ||
                                 (c.model == ModelKind::Linear && c.symbol == "compressible_stokes")
                             ? 1.0
                             : c.alpha;
    chk.prediction = predict_bounds(model, alpha, r_star, s, c.epsilon, c.dim);
  } catch (const std::invalid_argument& e) {
    chk.note += (chk.note.empty() ? "" : "; ") + std::string("no prediction: ") + e.what();
  }
  if (chk.fit && chk.prediction) chk.report = check_bounds(*chk.fit, *chk.prediction, tol, validity);
  return chk;
}

json check_json(const BoundCheck& c) {
  json j;
  j["label"] = c.label;
  j["s"] = c.s;
  j["tol"] = c.tol;
  if (c.fit) {
    j["fit"] = {{"exponent", c.fit->exponent},
                {"prefactor", c.fit->prefactor},
                {"t_lo", c.fit->window.first},
                {"t_hi", c.fit->window.second},
                {"residual", c.fit->residual},
                {"n_points", c.fit->n_points}};
  } else {
    j["fit"] = nullptr;
  }
  if (c.prediction) {
    j["prediction"] = {{"model", to_string(c.prediction->model)},
                       {"upper", optional_json(c.prediction->upper)},
                       {"lower", optional_json(c.prediction->lower)},
                       {"regime", c.prediction->regime}};
  } else {
    j["prediction"] = nullptr;
  }
  if (c.report) {
    j["report"] = {{"pass", c.report->pass},
                   {"margin_upper", number_or_null(c.report->margin_upper)},
                   {"margin_lower", number_or_null(c.report->margin_lower)},
                   {"upper_note", c.report->upper_note},
                   {"lower_note", c.report->lower_note}};
  } else {
    j["report"] = nullptr;
  }
  j["note"] = c.note;
  return j;
}

std::string sample_name(std::size_t idx) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sample_%04zu.dclb", idx);
  return buf;
}

}  // namespace

RunOutcome execute_run(ExperimentConfig cfg, const fs::path& out_root, const RunControl& ctl) {
  const auto started = std::chrono::steady_clock::now();
  cfg.datum.seed = cfg.seed;
  cfg.datum.components = cfg.components;
  cfg.validate();
  std::ostream& log = ctl.log ? *ctl.log : std::clog;

  const Grid grid(cfg.dim, cfg.points, cfg.box_length);
  const DissipativeSymbol sym = make_symbol(cfg);
  const SpectralField datum = generate(cfg.datum, grid);

  RunOutcome out;
  out.r_star = resolve_r_star(cfg, datum, out.r_star_source);
  const bool stokes = sym.kind() == DissipativeSymbol::Kind::CompressibleStokes;
  out.validity = box_validity_window(grid, stokes ? 1.0 : cfg.alpha, sym.min_rate_constant());
  if (ctl.window) out.fit_window = *ctl.window;
  else if (cfg.fit_window) out.fit_window = *cfg.fit_window;
  else out.fit_window = {out.validity.first, std::min(out.validity.second, cfg.t_end)};
  {
    const double slack = 1e-9 * out.validity.second;
    if (out.fit_window.first < out.validity.first - slack ||
        out.fit_window.second > out.validity.second + slack)
      throw std::invalid_argument("fit window [" + fmt17(out.fit_window.first) + ", " +
                                  fmt17(out.fit_window.second) + "] leaves validity window [" +
                                  fmt17(out.validity.first) + ", " +
                                  fmt17(out.validity.second) + "]");
  }

  std::vector<double> s_values{0.0};
  for (double s : cfg.s_values)
    if (s != 0.0 && std::find(s_values.begin(), s_values.end(), s) == s_values.end())
      s_values.push_back(s);
  std::sort(s_values.begin() + 1, s_values.end());

  const std::string id = ctl.run_id ? *ctl.run_id : utc_stamp() + "-" + config_hash(cfg).substr(0, 8);
  out.dir = claim_dir(out_root, id, out.run_id);
  fs::create_directories(out.dir / "fields");
  write_file(out.dir / "config.ini", serialize_config(cfg));

  const std::vector<double> times = cfg.sample_times();
  std::vector<std::string> files{"config.ini", "series.csv", "report.txt", "report.csv", "plot.gp"};
  auto checkpoint_due = [&](std::size_t idx) {
    if (idx == 0 || idx + 1 == times.size()) return true;
    return cfg.checkpoint_every > 0 && idx % cfg.checkpoint_every == 0;
  };
  auto save_checkpoint = [&](std::size_t idx, const SpectralField& f) {
    const std::string name = "fields/" + sample_name(idx);
    save_dclb(out.dir / name, f);
    files.push_back(name);
  };

  NormTimeSeries main, lin, diff;
  std::vector<SampleDiagnostics> diagnostics;
  bool nonlinear = cfg.model != ModelKind::Linear;
  if (!nonlinear) {
    main = linear_norm_series(datum, sym, times, s_values);
    for (std::size_t i = 0; i < times.size(); ++i)
      if (checkpoint_due(i)) save_checkpoint(i, evolve_linear(datum, sym, times[i]));
  } else {
    RunOptions opts;
    opts.sample_times = times;
    opts.s_values = s_values;
    opts.on_sample = [&](std::size_t idx, const SolverState& st) {
      if (checkpoint_due(idx)) save_checkpoint(idx, st.field);
      if (ctl.log) log << "  t=" << st.time << " steps=" << st.step_count << "\n";
    };
    SimulationResult res;
    if (cfg.model == ModelKind::QG) {
      QGConfig q{cfg.alpha, cfg.kappa, grid, cfg.dt, cfg.t_end, cfg.cfl_safety};
      res = run_simulation(q, datum, opts);
    } else {
      CompressibleConfig k{cfg.epsilon, grid, cfg.dt, cfg.t_end, cfg.cfl_safety};
      res = run_simulation(k, datum, opts);
    }
    main = std::move(res.nonlinear);
    lin = std::move(res.linear);
    diff = std::move(res.difference);
    diagnostics = std::move(res.diagnostics);
    out.valid = res.valid;
    out.failure = res.failure;
    if (!res.valid && res.last_valid_state) {
      save_dclb(out.dir / "fields" / "last_valid.dclb", res.last_valid_state->field);
      files.push_back("fields/last_valid.dclb");
    }
  }
  write_file(out.dir / "series.csv", series_csv(main, s_values, nonlinear ? &lin : nullptr,
                                                nonlinear ? &diff : nullptr));

  const double tol = cfg.tol ? *cfg.tol : cfg.default_tol();
  if (out.valid) {
    for (double s : s_values) {
      BoundModel m = BoundModel::Linear;
      if (cfg.model == ModelKind::QG) m = s == 0.0 ? BoundModel::QG_L2 : BoundModel::QG_Hs;
      if (cfg.model == ModelKind::Compressible) m = s == 0.0 ? BoundModel::Comp_L2 : BoundModel::Comp_Hs;
      out.checks.push_back(make_check(norm_label(s), s, m, cfg, out.r_star, main.times,
                                      main.column(s), out.fit_window, out.validity, tol));
    }
    if (nonlinear) {
      const BoundModel m = cfg.model == ModelKind::QG ? BoundModel::QG_Difference
                                                      : BoundModel::Comp_Difference;
      const auto w = diff.column(0.0);
      out.checks.push_back(make_check("diff_l2", 0.0, m, cfg, out.r_star, diff.times, w,
                                      difference_fit_window(diff.times, w, out.fit_window),
                                      out.validity, tol));
    }
  }

  std::ostringstream text, csv;
  csv << report_csv_header() << '\n';
  text << "run " << out.run_id << " (" << to_string(cfg.model) << ")\n"
       << "r* = " << (out.r_star.kind == CharacterClass::Finite ? fmt17(out.r_star.value)
                                                                 : to_string(out.r_star.kind))
       << " from " << out.r_star_source << "\n"
       << "validity window [" << out.validity.first << ", " << out.validity.second << "]\n";
  if (!out.valid) text << "INVALID: " << out.failure << "\n";
  for (const auto& c : out.checks) {
    if (c.fit && c.prediction && c.report) {
      text << report_text(c.label, *c.fit, *c.prediction, *c.report, c.tol);
      csv << report_csv_row(c.label, *c.fit, *c.prediction, *c.report, c.tol) << '\n';
    } else {
      text << c.label << ": not checked (" << c.note << ")\n";
      if (c.fit)
        text << "  fitted " << c.fit->exponent << " over [" << c.fit->window.first << ", "
             << c.fit->window.second << "]\n";
    }
  }
  write_file(out.dir / "report.txt", text.str());
  write_file(out.dir / "report.csv", csv.str());

  json m;
  m["run_id"] = out.run_id;
  m["valid"] = out.valid;
  m["failure"] = out.failure;
  m["config"] = serialize_config(cfg);
  m["config_hash"] = config_hash(cfg);
  m["grid"] = {{"dim", grid.dim()},
               {"points", grid.points()},
               {"box_length", grid.box_length()},
               {"xi_min", grid.xi_min()},
               {"nyquist_radius", grid.nyquist_radius()}};
  m["symbol"] = {{"kind", stokes ? "compressible_stokes" : "fractional_laplacian"},
                 {"alpha", stokes ? 1.0 : cfg.alpha},
                 {"kappa", cfg.kappa},
                 {"epsilon", cfg.epsilon},
                 {"components", sym.components()}};
  m["r_star"] = character_json(out.r_star);
  m["r_star_source"] = out.r_star_source;
  m["validity_window"] = {out.validity.first, out.validity.second};
  m["fit_window"] = {out.fit_window.first, out.fit_window.second};
  json checks = json::array();
  for (const auto& c : out.checks) checks.push_back(check_json(c));
  m["checks"] = checks;
  bool all_pass = out.valid;
  for (const auto& c : out.checks) all_pass = all_pass && c.report && c.report->pass;
  m["all_pass"] = all_pass;
  if (!diagnostics.empty()) {
    double worst_law = 0, worst_orth = 0;
    for (const auto& d : diagnostics) {
      worst_law = std::max(worst_law, d.energy_law_residual);
      worst_orth = std::max(worst_orth, d.orthogonality_defect);
    }
    m["diagnostics"] = {{"max_energy_law_residual", worst_law},
                        {"max_orthogonality_defect", worst_orth}};
  }
  files.push_back("manifest.json");
  m["files"] = files;
  m["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_atomic(out.dir / "manifest.json", m.dump(2) + "\n");
  write_plot_script(out.dir);

  out.exit_code = out.valid ? kOk : kBlowUp;
  return out;
}

fs::path write_plot_script(const fs::path& run_dir) {
  const fs::path series = run_dir / "series.csv";
  std::ifstream in(series);
  std::string header;
  if (!in || !std::getline(in, header) || header.rfind("t,", 0) != 0)
    throw std::runtime_error("no series.csv in " + run_dir.string());
  std::vector<std::string> cols;
  {
    std::stringstream ss(header);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  json manifest;
  if (std::ifstream mf(run_dir / "manifest.json"); mf) {
    try {
      mf >> manifest;
    } catch (const json::exception&) {
      manifest = json();
    }
  }
  // One panel per norm; linear part and difference share the L2 panel.
  std::vector<std::string> panels;
  for (std::size_t i = 1; i < cols.size(); ++i)
    if (cols[i] != "lin_l2_sq" && cols[i] != "diff_l2_sq")
      panels.push_back(cols[i].substr(0, cols[i].size() - 3));

  std::ostringstream g;
  g << "# log-log norms against time; dashed lines are predicted upper-bound rates\n"
    << "# anchored at the fitted prefactor.\n"
    << "set terminal pngcairo size " << 640 * panels.size() << ",480\n"
    << "set output 'plot.png'\n"
    << "set datafile separator ','\n"
    << "set logscale xy\n"
    << "set xlabel '1+t'\n"
    << "set key bottom left\n"
    << "set multiplot layout 1," << panels.size() << "\n";
  for (const auto& p : panels) {
    g << "set title '" << p << " squared norm'\n";
    std::vector<std::string> items;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      const std::string& c = cols[i];
      const bool mine = c == p + "_sq" || (p == "l2" && (c == "lin_l2_sq" || c == "diff_l2_sq"));
      if (!mine) continue;
      items.push_back("'series.csv' every ::1 using (1+$1):" + std::to_string(i + 1) +
                      " with lines title '" + c + "'");
    }
    if (manifest.contains("checks")) {
      for (const auto& c : manifest["checks"]) {
        const std::string label = c.value("label", "");
        if (label != p && !(p == "l2" && label == "diff_l2")) continue;
        if (c["fit"].is_null() || c["prediction"].is_null() || c["prediction"]["upper"].is_null())
          continue;
        const double a = c["fit"]["prefactor"].get<double>();
        const double sig = c["prediction"]["upper"].get<double>();
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.17g*x**(-%.17g) with lines dt 2 title '%s slope -%.4g'",
                      a, sig, label.c_str(), sig);
        items.push_back(buf);
      }
    }
    g << "plot ";
    for (std::size_t i = 0; i < items.size(); ++i) g << (i ? ", \\\n     " : "") << items[i];
    g << "\n";
  }
  g << "unset multiplot\n";
  const fs::path out = run_dir / "plot.gp";
  write_file(out, g.str());
  return out;
}

int cmd_character(const fs::path& field_file, const CharacterOptions& opt, std::ostream& out,
                  std::ostream& err) {
  SpectralField field = [&] {
    try {
      return load_dclb(field_file);
    } catch (const std::exception& e) {
      err << "error: " << field_file.string() << ": " << e.what() << "\n";
      throw;
    }
  }();
  for (double s : opt.s_values) {
    DecayCharacterEstimate est;
    try {
      est = estimate_character(field, s);
    } catch (const InsufficientResolution& e) {
      err << "error: " << e.what() << "\n";
      return kBadInput;
    }
    out << "s = " << s << "\n"
        << "  classification: " << to_string(est.classification) << "\n";
    if (est.classification == CharacterClass::Infinite)
      out << "  r_hat: inf\n";
    else
      out << "  r_hat: " << est.r_hat << "\n  r_hat - s: " << est.r_hat_base << "\n";
    out << "  slope: " << est.slope << " +- " << est.slope_stderr << " over "
        << est.shells_used << " shells\n";
    if (!opt.csv.empty()) {
      fs::path p = opt.csv;
      if (opt.s_values.size() > 1) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "_s%g", s);
        p = opt.csv.parent_path() / (opt.csv.stem().string() + buf + opt.csv.extension().string());
      }
      std::ostringstream c;
      c << "rho,mass,slope_local\n";
      for (std::size_t j = 0; j < est.curve.radii.size(); ++j)
        c << fmt17(est.curve.radii[j]) << ',' << fmt17(est.curve.masses[j]) << ','
          << fmt17(est.curve.local_slope(j)) << '\n';
      write_file(p, c.str());
      out << "  curve: " << p.string() << "\n";
    }
  }
  return kOk;
}

std::vector<ExperimentConfig> expand_sweep(const std::string& base_text,
                                           const std::vector<std::string>& vary) {
  std::vector<std::string> texts{serialize_config(parse_config(base_text))};
  for (const auto& spec : vary) {
    const auto eq = spec.find('=');
    const auto dot = spec.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("sweep spec must be section.key=v1,v2,...: '" + spec + "'");
    const std::string section = spec.substr(0, dot);
    std::string key = spec.substr(dot + 1, eq - dot - 1);
    std::vector<std::string> values;
    {
      std::stringstream ss(spec.substr(eq + 1));
      std::string v;
      // Window values carry a comma themselves; split them with ';'.
      const char sep = key == "window" || key == "s_values" ? ';' : ',';
      while (std::getline(ss, v, sep)) values.push_back(v);
    }
    if (values.empty()) throw ConfigError("sweep spec has no values: '" + spec + "'");
    std::vector<std::string> next;
    for (const auto& t : texts) {
      for (auto v : values) {
        std::string k = key;
        if (k == "box_periods") {
          k = "box_length";
          v = fmt17(2.0 * M_PI * std::stod(v));
        }
        std::istringstream in(t);
        std::ostringstream o;
        std::string line, cur;
        bool done = false;
        while (std::getline(in, line)) {
          if (!line.empty() && line.front() == '[') {
            if (cur == section && !done) {
              o << k << " = " << v << "\n";
              done = true;
            }
            cur = line.substr(1, line.find(']') - 1);
          } else if (cur == section && line.rfind(k + " =", 0) == 0) {
            line = k + " = " + v;
            done = true;
          }
          o << line << "\n";
        }
        if (!done) {
          if (cur != section) o << "[" << section << "]\n";
          o << k << " = " << v << "\n";
        }
        next.push_back(o.str());
      }
    }
    texts = std::move(next);
  }
  std::vector<ExperimentConfig> out;
  for (const auto& t : texts) out.push_back(parse_config(t));
  return out;
}

int cmd_sweep(const std::vector<ExperimentConfig>& configs, const fs::path& out_root, int jobs,
              const RunControl& ctl, std::ostream& out, std::ostream& err) {
  jobs = std::max(1, jobs);
  std::vector<RunOutcome> results(configs.size());
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};
  std::mutex io;
  const fs::path sweep_dir = [&] {
    std::string joined;
    for (const auto& c : configs) joined += config_hash(c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : joined) h = (h ^ ch) * 1099511628211ull;
    char buf[32];
    std::snprintf(buf, sizeof buf, "sweep-%08llx", static_cast<unsigned long long>(h >> 32));
    return out_root / (utc_stamp() + "-" + buf);
  }();
  fs::create_directories(sweep_dir);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
          RunControl c = ctl;
          c.run_id = "run" + std::to_string(i) + "-" + config_hash(configs[i]).substr(0, 8);
          c.log = nullptr;
          try {
            results[i] = execute_run(configs[i], sweep_dir, c);
          } catch (const std::exception& e) {
            errors[i] = e.what();
          }
          std::lock_guard lock(io);
          out << "[" << i + 1 << "/" << configs.size() << "] "
              << (errors[i].empty() ? results[i].run_id : "error: " + errors[i]) << "\n";
        }
      });
    }
  }
  // Aggregate over completed manifests, ordered by run id.
  std::vector<std::size_t> order(configs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return results[a].run_id < results[b].run_id; });
  std::ostringstream agg;
  agg << "run_id,valid,label,exponent,upper,lower,pass\n";
  int worst = kOk;
  for (auto i : order) {
    if (!errors[i].empty()) {
      err << "run " << i << ": " << errors[i] << "\n";
      worst = std::max<int>(worst, kBadInput);
      continue;
    }
    const RunOutcome& r = results[i];
    worst = std::max(worst, r.exit_code);
    json m;
    std::ifstream mf(r.dir / "manifest.json");
    mf >> m;
    for (const auto& c : m["checks"]) {
      auto num = [](const json& v) { return v.is_null() ? std::string("none") : fmt17(v.get<double>()); };
      agg << m["run_id"].get<std::string>() << ',' << (m["valid"].get<bool>() ? "true" : "false")
          << ',' << c["label"].get<std::string>() << ','
          << (c["fit"].is_null() ? "none" : num(c["fit"]["exponent"])) << ','
          << (c["prediction"].is_null() ? "none" : num(c["prediction"]["upper"])) << ','
          << (c["prediction"].is_null() ? "none" : num(c["prediction"]["lower"])) << ','
          << (c["report"].is_null() ? "unchecked" : c["report"]["pass"].get<bool>() ? "pass" : "fail")
          << '\n';
    }
  }
  write_file(sweep_dir / "sweep.csv", agg.str());
  out << "sweep summary: " << (sweep_dir / "sweep.csv").string() << "\n";
  return worst;
}

}  // namespace decaylab
