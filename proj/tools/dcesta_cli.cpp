// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcesta/dcesta.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& msg) { throw Failure{kExitConfig, msg}; }

void check(dcesta_status st, const char* what) {
  if (st == DCESTA_OK) return;
  const bool config = st == DCESTA_E_ARGUMENT || st == DCESTA_E_CONFIG || st == DCESTA_E_INVALID_CYCLE;
  throw Failure{config ? kExitConfig : kExitNumeric,
                std::string(what) + ": " + dcesta_status_name(st) + ": " + dcesta_last_error()};
}

struct TrajDeleter {
  void operator()(dcesta_trajectory* t) const { dcesta_trajectory_free(t); }
};
struct MooreDeleter {
  void operator()(dcesta_moore* m) const { dcesta_moore_free(m); }
};
using TrajPtr = std::unique_ptr<dcesta_trajectory, TrajDeleter>;
using MoorePtr = std::unique_ptr<dcesta_moore, MooreDeleter>;

// ---- grids -----------------------------------------------------------------

struct Grid {
  bool log = false;
  double a = 0.0;
  double b = 0.0;
  int n = 0;

  std::vector<double> points() const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / (n - 1);
      out[i] = log ? std::exp(std::log(a) + u * (std::log(b) - std::log(a))) : a + u * (b - a);
    }
    out.front() = a;
    out.back() = b;
    return out;
  }
  std::string text() const {
    std::ostringstream os;
    os.precision(17);
    os << (log ? "log:" : "") << a << ':' << b << ':' << n;
    return os.str();
  }
};

double parse_number(const std::string& s, const std::string& flag) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) config_error(flag + ": not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Grid parse_grid(const std::string& spec, const std::string& flag, bool allow_log) {
  auto parts = split(spec, ':');
  Grid g;
  if (!parts.empty() && (parts[0] == "log" || parts[0] == "lin")) {
    if (parts[0] == "log" && !allow_log) config_error(flag + ": log spacing is not supported here");
    g.log = parts[0] == "log";
    parts.erase(parts.begin());
  }
  if (parts.size() != 3) config_error(flag + ": expected a:b:n, got '" + spec + "'");
  g.a = parse_number(parts[0], flag);
  g.b = parse_number(parts[1], flag);
  const double n = parse_number(parts[2], flag);
  if (n != std::floor(n) || n < 2 || n > 1e7) config_error(flag + ": point count must be an integer >= 2");
  g.n = static_cast<int>(n);
  if (!(g.b > g.a)) config_error(flag + ": grid end must exceed its start");
  if (g.log && !(g.a > 0.0)) config_error(flag + ": log grid needs a positive start");
  return g;
}

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_number(p, flag));
  if (out.empty()) config_error(flag + ": empty list");
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// ---- tables ------------------------------------------------------------------

using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::string name;
  ordered_json meta = ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Document {
  std::string command;
  ordered_json config = ordered_json::object();
  std::vector<std::string> notes;
  std::vector<Table> tables;
  std::optional<ordered_json> sidecar;  // written next to CSV output
};

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "null";
}

ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v);
  }
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

void write_header(std::ostream& os, const Document& doc, const Table& t) {
  os << "# dcesta " << dcesta_version() << '\n';
  os << "# command: " << doc.command << '\n';
  os << "# config: " << doc.config.dump() << '\n';
  for (const auto& n : doc.notes) os << "# note: " << n << '\n';
  os << "# table: " << t.name;
  if (!t.meta.empty()) os << ' ' << t.meta.dump();
  os << '\n';
}

void write_csv(std::ostream& os, const Document& doc, const Table& t) {
  write_header(os, doc, t);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

ordered_json to_json(const Document& doc) {
  ordered_json j;
  j["tool"] = "dcesta";
  j["version"] = dcesta_version();
  j["command"] = doc.command;
  j["config"] = doc.config;
  j["notes"] = doc.notes;
  j["tables"] = ordered_json::array();
  for (const auto& t : doc.tables) {
    ordered_json jt;
    jt["name"] = t.name;
    jt["meta"] = t.meta;
    jt["columns"] = t.columns;
    jt["rows"] = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json r = ordered_json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      jt["rows"].push_back(std::move(r));
    }
    j["tables"].push_back(std::move(jt));
  }
  if (doc.sidecar) j["fit"] = *doc.sidecar;
  return j;
}

std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) config_error("cannot open output file " + p.string());
  return os;
}

// Single-table CSV goes to --out as given; several tables become
// <stem>.<table>.csv siblings.
void emit(const Document& doc, const std::string& out, const std::string& format) {
  if (format == "json") {
    const std::string text = to_json(doc).dump(2) + "\n";
    if (out.empty() || out == "-") {
      std::cout << text;
    } else {
      auto os = open_output(out);
      os << text;
    }
    return;
  }
  if (out.empty() || out == "-") {
    for (std::size_t i = 0; i < doc.tables.size(); ++i) {
      if (i) std::cout << '\n';
      write_csv(std::cout, doc, doc.tables[i]);
    }
    if (doc.sidecar) {
      std::cout << "\n# fit: " << doc.sidecar->dump() << '\n';
    }
    return;
  }
  const std::filesystem::path path(out);
  auto sibling = [&](const std::string& tag, const std::string& ext) {
    auto p = path;
    p.replace_filename(path.stem().string() + "." + tag + ext);
    return p;
  };
  if (doc.tables.size() == 1) {
    auto os = open_output(path);
    write_csv(os, doc, doc.tables.front());
  } else {
    for (const auto& t : doc.tables) {
      auto os = open_output(sibling(t.name, path.extension().empty() ? ".csv" : path.extension().string()));
      write_csv(os, doc, t);
    }
  }
  if (doc.sidecar) {
    auto os = open_output(sibling("fit", ".json"));
    os << doc.sidecar->dump(2) << '\n';
  }
}

// ---- shared options ----------------------------------------------------------

struct Common {
  std::string traj;
  std::string out;
  std::string format = "csv";
  double tol_moore = 0.0;  // 0 = library default
  double tol_quad = 0.0;
};

void add_common(CLI::App* app, Common& c, bool with_traj) {
  if (with_traj) app->add_option("--traj", c.traj, "Trajectory JSON file or inline JSON object")->required();
  app->add_option("--out", c.out, "Output path (default: standard output)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--tol-moore", c.tol_moore, "Moore-equation residual budget");
  app->add_option("--tol-quad", c.tol_quad, "Absolute quadrature tolerance");
}

dcesta_moore_options moore_options(const Common& c) {
  dcesta_moore_options o;
  dcesta_moore_options_default(&o);
  if (c.tol_moore != 0.0) {
    if (!(c.tol_moore > 0.0)) config_error("--tol-moore must be positive");
    o.eps_moore = c.tol_moore;
  }
  return o;
}

dcesta_quad_options quad_options(const Common& c) {
  dcesta_quad_options o;
  dcesta_quad_options_default(&o);
  if (c.tol_quad != 0.0) {
    if (!(c.tol_quad > 0.0)) config_error("--tol-quad must be positive");
    o.abs_tol = c.tol_quad;
  }
  return o;
}

TrajPtr load_trajectory(const std::string& spec) {
  std::string text = spec;
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) config_error("--traj is empty");
  if (spec[first] != '{') {
    std::ifstream is(spec, std::ios::binary);
    if (!is) config_error("cannot read trajectory file " + spec);
    std::ostringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  dcesta_trajectory* t = nullptr;
  check(dcesta_trajectory_from_json(text.c_str(), &t), "trajectory");
  return TrajPtr(t);
}

ordered_json describe(const dcesta_trajectory* t) {
  std::size_t needed = 0;
  check(dcesta_trajectory_describe(t, nullptr, 0, &needed), "describe");
  std::string buf(needed + 1, '\0');
  check(dcesta_trajectory_describe(t, buf.data(), buf.size(), &needed), "describe");
  buf.resize(needed);
  return ordered_json::parse(buf);
}

dcesta_trajectory_info info(const dcesta_trajectory* t) {
  dcesta_trajectory_info i;
  check(dcesta_trajectory_info_get(t, &i), "trajectory info");
  return i;
}

ordered_json base_config(const Common& c, const dcesta_trajectory* t) {
  ordered_json j;
  if (t) j["trajectory"] = describe(t);
  const auto mo = moore_options(c);
  const auto qo = quad_options(c);
  j["tol_moore"] = mo.eps_moore;
  j["tol_quad"] = qo.abs_tol;
  j["format"] = c.format;
  return j;
}

// ---- subcommands -------------------------------------------------------------

struct StaArgs {
  Common c;
  std::string t_grid;
};

Document run_sta(const StaArgs& a) {
  auto ref = load_trajectory(a.c.traj);
  const auto in = info(ref.get());
  Grid g;
  if (a.t_grid.empty()) {
    const double margin = 0.25 * std::max(in.initial_length, in.final_length);
    g = {false, in.t_start - in.initial_length - margin, in.t_end + in.final_length + margin, 1000};
  } else {
    g = parse_grid(a.t_grid, "--t-grid", false);
  }
  const auto t = g.points();
  std::vector<double> L_ref(t.size()), L_eff(t.size()), v_eff(t.size());
  check(dcesta_sta_table(ref.get(), t.data(), t.size(), L_ref.data(), L_eff.data(), v_eff.data()), "sta");

  Document doc;
  doc.command = "sta";
  doc.config = base_config(a.c, ref.get());
  doc.config["t_grid"] = g.text();
  Table tab{"sta", {}, {"t", "L_ref", "L_eff", "v_eff"}, {}};
  for (std::size_t i = 0; i < t.size(); ++i) tab.rows.push_back({t[i], L_ref[i], L_eff[i], v_eff[i]});
  doc.tables.push_back(std::move(tab));
  return doc;
}

struct EnergyArgs {
  Common c;
  std::string temps = "0";
  std::string t_grid;
  std::string x_grid;
};

std::string temp_tag(double T) {
  std::string s = format_double(T);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

Document run_energy(const EnergyArgs& a) {
  auto ref = load_trajectory(a.c.traj);
  const auto in = info(ref.get());
  const auto temps = parse_list(a.temps, "--temps");
  for (double T : temps)
    if (!(T >= 0.0)) config_error("--temps: temperatures must be non-negative");
  const Grid tg = a.t_grid.empty() ? Grid{false, in.t_start - in.initial_length, in.t_end + in.final_length, 201}
                                   : parse_grid(a.t_grid, "--t-grid", false);
  const Grid xg = a.x_grid.empty() ? Grid{false, 0.0, std::max(in.initial_length, in.final_length), 101}
                                   : parse_grid(a.x_grid, "--x-grid", false);
  const auto mo = moore_options(a.c);
  const auto qo = quad_options(a.c);

  dcesta_moore* m = nullptr;
  check(dcesta_moore_recursion(ref.get(), &mo, &m), "reference Moore function");
  MoorePtr R_ref(m);
  check(dcesta_moore_wkb(ref.get(), &mo, &m), "shortcut Moore function");
  MoorePtr R_sta(m);

  Document doc;
  doc.command = "energy";
  doc.config = base_config(a.c, ref.get());
  doc.config["temps"] = temps;
  doc.config["t_grid"] = tg.text();
  doc.config["x_grid"] = xg.text();
  doc.notes.push_back("field thermalized at the initial length; occupation frozen along the motion");
  doc.notes.push_back("Qstar is null where the adiabatic energy vanishes");

  const auto t = tg.points();
  const auto x = xg.points();
  for (double T : temps) {
    const dcesta_thermal th{T, in.initial_length};
    std::vector<double> Ttt(t.size() * x.size()), Ttx(t.size() * x.size());
    check(dcesta_density_map(R_sta.get(), th, t.data(), t.size(), x.data(), x.size(), Ttt.data(), Ttx.data()),
          "density map");
    Table dens{"density_sta_T" + temp_tag(T), {{"run", "sta"}, {"T", T}}, {"t", "x", "Ttt", "Ttx"}, {}};
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        dens.rows.push_back({t[i], x[j], Ttt[i * x.size() + j], Ttx[i * x.size() + j]});
    doc.tables.push_back(std::move(dens));
  }
  for (const auto& [run, R] : {std::pair{"reference", R_ref.get()}, std::pair{"sta", R_sta.get()}}) {
    for (double T : temps) {
      const dcesta_thermal th{T, in.initial_length};
      std::vector<double> E(t.size()), E_ad(t.size()), Q(t.size());
      std::vector<int> ok(t.size());
      check(dcesta_energy_curve(R, nullptr, th, t.data(), t.size(), &qo, E.data(), E_ad.data(), Q.data(),
                                ok.data()),
            "energy curve");
      Table q{"qstar_" + std::string(run) + "_T" + temp_tag(T),
              {{"run", run}, {"T", T}},
              {"t", "E", "E_ad", "Qstar"},
              {}};
      for (std::size_t i = 0; i < t.size(); ++i)
        q.rows.push_back({t[i], E[i], E_ad[i], ok[i] ? Cell{Q[i]} : Cell{}});
      doc.tables.push_back(std::move(q));
    }
  }
  return doc;
}

struct CertifyArgs {
  Common c;
  double threshold = 1e-8;
  int samples = 512;
};

Document run_certify(const CertifyArgs& a) {
  if (!(a.threshold > 0.0)) config_error("--threshold must be positive");
  if (a.samples < 2) config_error("--samples must be at least 2");
  auto ref = load_trajectory(a.c.traj);
  dcesta_trajectory* e = nullptr;
  check(dcesta_trajectory_effective(ref.get(), &e), "shortcut trajectory");
  TrajPtr eff(e);
  const auto mo = moore_options(a.c);

  Document doc;
  doc.command = "certify";
  doc.config = base_config(a.c, ref.get());
  doc.config["threshold"] = a.threshold;
  doc.config["samples"] = a.samples;
  doc.notes.push_back("verdict PASS iff the sup deviation of the OUT-region residual is below the threshold");
  Table tab{"certificate",
            {},
            {"run", "period", "sup_deviation", "l2_deviation", "periodicity_error", "threshold", "verdict"},
            {}};
  for (const auto& [run, traj] : {std::pair{"reference", ref.get()}, std::pair{"sta", eff.get()}}) {
    dcesta_residual r;
    check(dcesta_moore_residual(traj, &mo, a.samples, &r), "residual");
    tab.rows.push_back({std::string(run), r.period, r.sup_deviation, r.l2_deviation, r.periodicity_error,
                        a.threshold, std::string(r.sup_deviation < a.threshold ? "PASS" : "FAIL")});
  }
  doc.tables.push_back(std::move(tab));
  return doc;
}

struct OttoArgs {
  Common c;
  double L0 = 1.0;
  double L1 = 0.7;
  double T0 = 1.0;
  double T1 = 5.0;
  std::string tau_grid = "log:0.1:10:25";
  std::string kinds = "reference,sta";
  std::string fit_window = "0.05:0.5";
};

Document run_otto(const OttoArgs& a) {
  const Grid g = parse_grid(a.tau_grid, "--tau-grid", true);
  if (!(g.a > 0.0)) config_error("--tau-grid: durations must be positive");
  const auto win = split(a.fit_window, ':');
  if (win.size() != 2) config_error("--fit-window: expected a:b");
  const double wa = parse_number(win[0], "--fit-window");
  const double wb = parse_number(win[1], "--fit-window");
  if (!(wb > wa)) config_error("--fit-window: end must exceed start");
  std::vector<int> kinds;
  for (const auto& k : split(a.kinds, ',')) {
    if (k == "reference")
      kinds.push_back(0);
    else if (k == "sta")
      kinds.push_back(1);
    else
      config_error("--kinds: unknown stroke kind '" + k + "'");
  }

  dcesta_otto_spec spec;
  dcesta_otto_spec_default(&spec);
  spec.L0 = a.L0;
  spec.L1 = a.L1;
  spec.T0 = a.T0;
  spec.T1 = a.T1;
  spec.moore = moore_options(a.c);
  spec.quad = quad_options(a.c);
  check(dcesta_otto_check(&spec), "cycle");

  Document doc;
  doc.command = "otto";
  doc.config = base_config(a.c, nullptr);
  doc.config["L0"] = a.L0;
  doc.config["L1"] = a.L1;
  doc.config["T0"] = a.T0;
  doc.config["T1"] = a.T1;
  doc.config["tau_grid"] = g.text();
  doc.config["kinds"] = a.kinds;
  doc.config["fit_window"] = a.fit_window;
  doc.notes.push_back("hot bath = max(T0, T1) applied at L1; cold bath = min(T0, T1) applied at L0");
  doc.notes.push_back("P = W / (2 (L0 + L1 + tau)) for both stroke kinds");
  doc.notes.push_back("rows with null work have a stroke wall faster than light");

  const auto taus = g.points();
  Table tab{"otto", {}, {"tau", "stroke_kind", "W", "W_ad", "Q", "eta", "eta_ad", "P"}, {}};
  std::vector<std::vector<dcesta_otto_result>> per_kind;
  for (int k : kinds) {
    spec.stroke_kind = k;
    std::vector<dcesta_otto_result> rows(taus.size());
    check(dcesta_otto_sweep(&spec, taus.data(), taus.size(), rows.data()), "otto sweep");
    per_kind.push_back(std::move(rows));
  }
  for (std::size_t i = 0; i < taus.size(); ++i) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const auto& r = per_kind[k][i];
      tab.rows.push_back({taus[i], std::string(kinds[k] ? "sta" : "reference"), r.W, r.W_ad, r.Q, r.eta, r.eta_ad,
                          r.P});
    }
  }
  doc.tables.push_back(std::move(tab));

  ordered_json fit;
  fit["window"] = {wa, wb};
  const auto ref_it = std::find(kinds.begin(), kinds.end(), 0);
  if (ref_it == kinds.end()) {
    fit["applicable"] = false;
    fit["note"] = "no reference strokes in the sweep";
  } else {
    const auto& rows = per_kind[static_cast<std::size_t>(ref_it - kinds.begin())];
    std::vector<double> ft;
    std::vector<dcesta_otto_result> fr;
    for (std::size_t i = 0; i < taus.size(); ++i)
      if (taus[i] >= wa && taus[i] <= wb) {
        ft.push_back(taus[i]);
        fr.push_back(rows[i]);
      }
    dcesta_fit_report rep;
    const auto st = dcesta_otto_fit(ft.data(), fr.data(), ft.size(), &rep);
    if (st == DCESTA_E_FIT) {
      fit["applicable"] = false;
      fit["note"] = dcesta_last_error();
    } else {
      check(st, "decay fit");
      fit["applicable"] = rep.applicable != 0;
      fit["points_used"] = rep.points_used;
      fit["quantity"] = "W_ad - W of reference cycles";
      if (rep.applicable) {
        fit["exponent"] = rep.exponent;
        fit["stderr"] = rep.stderr_exponent;
        fit["ci95"] = {rep.ci_low, rep.ci_high};
      } else {
        fit["note"] = "no usable rows in the window (walls faster than light or friction below the noise floor)";
      }
    }
  }
  doc.sidecar = std::move(fit);
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moving-mirror cavity toolkit: shortcuts to adiabaticity, energies and Otto cycles"};
  app.set_version_flag("--version", std::string(dcesta_version()));
  app.require_subcommand(1);

  StaArgs sta;
  auto* sta_cmd = app.add_subcommand("sta", "Reference and shortcut trajectories on a time grid");
  sta_cmd->alias("sta-compute");
  add_common(sta_cmd, sta.c, true);
  sta_cmd->add_option("--t-grid", sta.t_grid, "Time grid a:b:n");

  EnergyArgs energy;
  auto* energy_cmd = app.add_subcommand("energy", "Energy density maps and adiabaticity curves");
  add_common(energy_cmd, energy.c, true);
  energy_cmd->add_option("--temps", energy.temps, "Comma-separated temperatures");
  energy_cmd->add_option("--t-grid", energy.t_grid, "Time grid a:b:n");
  energy_cmd->add_option("--x-grid", energy.x_grid, "Position grid a:b:n");

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "OUT-region residual of a trajectory and of its shortcut");
  add_common(cert_cmd, cert.c, true);
  cert_cmd->add_option("--threshold", cert.threshold, "PASS threshold on the sup deviation");
  cert_cmd->add_option("--samples", cert.samples, "Residual samples over one period");

  OttoArgs otto;
  auto* otto_cmd = app.add_subcommand("otto", "Otto-cycle power sweep over the stroke duration");
  add_common(otto_cmd, otto.c, false);
  otto_cmd->add_option("--L0", otto.L0, "Expanded length");
  otto_cmd->add_option("--L1", otto.L1, "Compressed length");
  otto_cmd->add_option("--T0", otto.T0, "Bath temperature paired with L0");
  otto_cmd->add_option("--T1", otto.T1, "Bath temperature paired with L1");
  otto_cmd->add_option("--tau-grid", otto.tau_grid, "Stroke durations log:a:b:n or a:b:n");
  otto_cmd->add_option("--kinds", otto.kinds, "Stroke kinds: reference,sta");
  otto_cmd->add_option("--fit-window", otto.fit_window, "Duration window a:b for the decay fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    Document doc;
    std::string out, format;
    if (sta_cmd->parsed()) {
      doc = run_sta(sta);
      out = sta.c.out;
      format = sta.c.format;
    } else if (energy_cmd->parsed()) {
      doc = run_energy(energy);
      out = energy.c.out;
      format = energy.c.format;
    } else if (cert_cmd->parsed()) {
      doc = run_certify(cert);
      out = cert.c.out;
      format = cert.c.format;
    } else {
      doc = run_otto(otto);
      out = otto.c.out;
      format = otto.c.format;
    }
    emit(doc, out, format);
  } catch (const Failure& f) {
    std::cerr << "dcesta: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "dcesta: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
