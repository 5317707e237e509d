#include "superapprox/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "superapprox/cutoff.hpp"

namespace superapprox::cli {

namespace {

ExperimentConfig triangle_config(int k, CheckKind check, int n, int m, int ell) {
  ExperimentConfig c;
  c.element = {ElementFamily::lagrange_simplex, k, 2, 1.0};
  c.window.family = WindowFamily::cosine;
  c.window.center = {0.0, 0.0};
  c.check = check;
  c.n = n;
  c.m = m;
  c.ell = ell;
  return c;
}

Preset experiment(std::string name, std::string description, ExperimentConfig c, std::string estimate, double rate) {
  return {std::move(name), std::move(description), std::move(c), std::move(estimate), rate};
}

nlohmann::json json_number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json rate_json(const std::optional<RateFit>& r) {
  if (!r) return nullptr;
  return {{"slope", json_number(r->slope)},
          {"intercept", json_number(r->intercept)},
          {"residual", json_number(r->residual)},
          {"points", r->points}};
}

nlohmann::json certify_window(WindowFamily family, const std::vector<ElementDescriptor>& catalog, int levels) {
  const int jmax = 5;
  const Window w(family, Point{0.0, 0.0}, 1.0, jmax);
  nlohmann::json out{{"family", to_string(family)}, {"d", 1.0}, {"jmax", jmax}, {"ctab", w.ctab()},
                     {"c_dagger", w.c_dagger()}};
  bool ok = true;
  if (family == WindowFamily::cosine) {
    bool bounded = true;
    for (double c : w.ctab()) bounded = bounded && c <= 1.0;
    out["ctab_le_1"] = bounded;
    ok = ok && bounded;
  }
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& desc : catalog) {
    const FiniteElement base = desc.build();
    const Window wd(family, Point(static_cast<std::size_t>(base.dim()), 0.0), 1.0, jmax);
    double max_mean = 0.0, max_dev = 0.0;
    for (int i = 0; i < levels; ++i) {
      const FiniteElement e = element_with_diameter(base, std::ldexp(1.0, -i));
      const WindowOnCell wc = window_mean(wd, e.cell());
      max_mean = std::max(max_mean, std::abs(wc.mean));
      max_dev = std::max(max_dev, certify_deviation(wc));
    }
    const bool mean_ok = max_mean <= wd.c_dagger();
    const bool dev_ok = max_dev <= 1.0;
    ok = ok && mean_ok && dev_ok;
    cells.push_back({{"element", to_json(desc)},
                     {"max_abs_mean", max_mean},
                     {"mean_le_c_dagger", mean_ok},
                     {"max_deviation_ratio", max_dev},
                     {"deviation_le_1", dev_ok}});
  }
  out["cells"] = cells;
  out["pass"] = ok;
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::vector<Preset> list_presets() {
  std::vector<Preset> p;
  p.push_back(experiment("example3-classical-h1", "P1 triangle, n=1, m=l=1: H1 error of the windowed interpolant",
                         triangle_config(1, CheckKind::sa1, 1, 1, 1), "SA1", 1.0));
  p.push_back(experiment("example3-classical-l2", "P1 triangle, n=1, m=l=0: L2 error of the windowed interpolant",
                         triangle_config(1, CheckKind::sa1, 1, 0, 0), "SA1", 1.0));
  p.push_back(experiment("example4-dg", "P1 triangle, n=2, m=l=1, windowed right-hand side",
                         triangle_config(1, CheckKind::sa2, 2, 1, 1), "SA2", 1.0));
  for (int ell = 1; ell <= 3; ++ell)
    p.push_back(experiment("example5-c0ip-l" + std::to_string(ell),
                           "P2 triangle, n=4, m=2, l=" + std::to_string(ell) + ", windowed right-hand side",
                           triangle_config(2, CheckKind::sa2, 4, 2, ell), "SA2", 3.0 - ell));
  {
    ExperimentConfig c;
    c.element = {ElementFamily::lagrange_simplex, 2, 1, 1.0};
    c.window.family = WindowFamily::cosine;
    c.window.center = {0.0};
    c.check = CheckKind::splitting;
    c.n = 3;
    c.m = 2;
    p.push_back(experiment("splitting-identity", "P2 interval, n=3: binomial splitting of the interpolation error", c,
                           "identity", 0.0));
  }
  {
    ExperimentConfig c = triangle_config(2, CheckKind::lemma1, 2, 2, 0);
    c.q = 2;
    c.p = 1;
    p.push_back(experiment("lemma1-p-le-q", "P2 triangle, q=2, p=1, L2 flavor", c, "lemma", 0.0));
    c.q = 1;
    c.p = 2;
    p.push_back(experiment("lemma1-p-gt-q", "P2 triangle, q=1, p=2, L2 flavor", c, "lemma", 0.0));
    c.s = Flavor::linf;
    p.push_back(experiment("lemma1-winf", "P2 triangle, q=1, p=2, sup flavor", c, "lemma", 0.0));
  }
  {
    ExperimentConfig c = triangle_config(2, CheckKind::lemma2, 2, 2, 0);
    c.j = 2;
    p.push_back(experiment("lemma2-switch", "P2 triangle, j=2: mean-window powers against window powers", c, "lemma",
                           0.0));
  }
  p.push_back({"assumption-audit", "constant table for the catalog and window certifications", std::nullopt, "audit",
               0.0});
  return p;
}

Preset find_preset(const std::string& name) {
  for (auto& p : list_presets())
    if (p.name == name) return p;
  throw ConfigError("unknown preset '" + name + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_csv(const std::vector<VerificationReport>& reports) {
  std::string s = "h,trial,lhs,rhs,ratio\n";
  for (const auto& r : reports)
    for (const auto& rec : r.records)
      s += format_double(rec.h) + "," + std::to_string(rec.trial) + "," + format_double(rec.lhs) + "," +
           format_double(rec.rhs) + "," + format_double(rec.ratio) + "\n";
  return s;
}

nlohmann::json report_summary(const VerificationReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  std::map<double, std::pair<double, double>, std::greater<>> by_h;
  for (const auto& rec : r.records) {
    auto& [lhs, ratio] = by_h[rec.h];
    lhs = std::max(lhs, rec.lhs);
    ratio = std::max(ratio, rec.ratio);
  }
  for (const auto& [h, v] : by_h)
    levels.push_back({{"h", h}, {"max_lhs", json_number(v.first)}, {"max_ratio", json_number(v.second)}});
  return {{"config", to_json(r.config)},
          {"check", to_string(r.config.check)},
          {"observed_constant", json_number(r.observed_constant)},
          {"rate", rate_json(r.rate)},
          {"predicted_rate", r.predicted_rate},
          {"rate_checked", r.rate_checked},
          {"rate_ok", r.rate_ok},
          {"trend", {{"slope", json_number(r.trend)}, {"points", r.trend_points}}},
          {"levels", levels},
          {"pass", r.pass},
          {"tolerances",
           {{"trend_max", r.tolerances.trend_max},
            {"rate_slack", r.tolerances.rate_slack},
            {"lhs_floor", r.tolerances.lhs_floor},
            {"splitting_max", r.tolerances.splitting_max}}},
          {"notes", r.notes}};
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("format must be csv or json");
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream f(file, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + file.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw std::runtime_error("write to " + file.string() + " failed");
}

void emit_report(const VerificationReport& r, const std::filesystem::path& dir, const std::string& stem) {
  write_text(dir / (stem + ".csv"), report_csv({r}));
  write_text(dir / (stem + ".json"), report_summary(r).dump(2) + "\n");
}

AuditResult run_audit(const AuditOptions& opt) {
  AuditResult res;
  const auto catalog = desk_catalog();
  for (const auto& desc : catalog) {
    const FiniteElement e = desc.build();
    const int k = e.degree();
    for (int p = 0; p <= k; ++p)
      for (int q = p + 1; q <= k + 1; ++q) {
        res.constants.push_back(estimate_inverse_constant(e, p, q, Flavor::l2));
        if (opt.full_sup_table || q == p + 1)
          res.constants.push_back(estimate_inverse_constant(e, p, q, Flavor::linf, opt.seed));
      }
    for (int p = 0; p <= k; ++p) res.constants.push_back(estimate_l2_linf_constant(e, p));
    for (int ell = 0; ell <= k + 1; ++ell)
      res.constants.push_back(estimate_interp_constant(e, ell, opt.interp_trials, opt.seed));
  }
  for (const auto& c : res.constants) {
    const bool ok = c.degenerate ? c.value == 0.0 : (std::isfinite(c.value) && c.value > 0.0);
    res.pass = res.pass && ok && c.rate_ok;
  }
  res.windows = nlohmann::json::array();
  for (auto fam : {WindowFamily::cosine, WindowFamily::gaussian, WindowFamily::constant}) {
    auto w = certify_window(fam, catalog, opt.h_levels);
    res.pass = res.pass && w["pass"].get<bool>();
    res.windows.push_back(std::move(w));
  }
  return res;
}

std::string constants_csv(const std::vector<ConstantEstimate>& table) {
  std::string s = constants_csv_header();
  for (const auto& c : table) s += constants_csv_row(c);
  return s;
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("SUPERAPPROX_OUT"); env && *env) return env;
  return "superapprox-out";
}

int run(const std::string& target, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<Preset> preset;
  ExperimentConfig cfg;
  std::string stem;
  try {
    try {
      preset = find_preset(target);
      stem = preset->name;
    } catch (const ConfigError&) {
      const std::filesystem::path file(target);
      if (!std::filesystem::is_regular_file(file)) throw ConfigError("unknown preset or missing config file '" + target + "'");
      std::ifstream in(file);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const std::exception& ex) {
        throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
      }
      cfg = experiment_config_from_json(j);
      stem = file.stem().string();
    }
    if (preset && preset->config) cfg = *preset->config;
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.h_levels) {
      cfg.h_levels = *opt.h_levels;
      cfg.h_sequence.clear();
    }
    if (!preset || preset->config) cfg.validate();
  } catch (const ConfigError& ex) {
    err << "configuration error: " << ex.what() << "\n";
    return kExitConfig;
  }

  try {
    std::filesystem::create_directories(opt.out);
    if (preset && !preset->config) {
      AuditOptions ao;
      if (opt.seed) ao.seed = *opt.seed;
      if (opt.h_levels) ao.h_levels = *opt.h_levels;
      const AuditResult a = run_audit(ao);
      const std::string table = constants_csv(a.constants);
      const nlohmann::json summary{{"preset", stem},
                                   {"constants_csv", stem + "-constants.csv"},
                                   {"constants", a.constants.size()},
                                   {"windows", a.windows},
                                   {"pass", a.pass},
                                   {"notes",
                                    {"sup-based constants are sampled lower bounds",
                                     "seminorms sum all multi-indices |alpha| = p without multinomial weights"}}};
      write_text(opt.out / (stem + "-constants.csv"), table);
      write_text(opt.out / (stem + ".json"), summary.dump(2) + "\n");
      out << (opt.format == Format::csv ? table : summary.dump(2) + "\n");
      return a.pass ? kExitPass : kExitFail;
    }
    const VerificationReport r = run_check(cfg);
    emit_report(r, opt.out, stem);
    out << (opt.format == Format::csv ? report_csv({r}) : report_summary(r).dump(2) + "\n");
    return r.pass ? kExitPass : kExitFail;
  } catch (const ConfigError& ex) {
    err << "configuration error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "output error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitConfig;
  }
}

nlohmann::json refit_csv(const std::filesystem::path& csv, std::optional<double> predicted) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot read " + csv.string());
  std::string line;
  if (!std::getline(in, line) || line != "h,trial,lhs,rhs,ratio")
    throw std::runtime_error(csv.string() + " is not a report CSV");
  std::vector<double> order;
  std::map<double, std::pair<double, double>> by_h;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 5) throw std::runtime_error("malformed row in " + csv.string());
    const double h = std::stod(cells[0]);
    const double lhs = std::stod(cells[2]);
    const double ratio = std::stod(cells[4]);
    if (!by_h.count(h)) order.push_back(h);
    auto& [ml, mr] = by_h[h];
    ml = std::max(ml, lhs);
    mr = std::max(mr, ratio);
  }
  std::vector<std::pair<double, double>> ratios, rates;
  for (double h : order) {
    const auto& [ml, mr] = by_h[h];
    if (ml <= 1e-13) continue;
    ratios.emplace_back(h, mr);
    if (predicted) rates.emplace_back(h, mr * std::pow(h, *predicted));
  }
  nlohmann::json out{{"file", csv.string()}, {"levels", order.size()}};
  if (ratios.size() >= 3) {
    const RateFit t = fit_rate(ratios);
    out["trend"] = {{"slope", -t.slope}, {"points", t.points}};
  } else {
    out["trend"] = nullptr;
  }
  if (predicted && rates.size() >= 3) {
    const RateFit r = fit_rate(rates);
    out["rate"] = rate_json(r);
    out["predicted_rate"] = *predicted;
  } else {
    out["rate"] = nullptr;
  }
  return out;
}

}  // namespace superapprox::cli
