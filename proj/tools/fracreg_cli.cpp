// fracreg command-line front end.
//
// Exit codes: 0 success, 1 parameters not locally subcritical, 2 usage or
// input error, 3 symbol cap exceeded (partial results were still written).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracreg/analytic.hpp"
#include "fracreg/model_space.hpp"
#include "fracreg/params.hpp"
#include "fracreg/statistics.hpp"
#include "fracreg/symbol.hpp"

namespace fs = std::filesystem;
using namespace fracreg;

namespace {

constexpr int kExitNotSubcritical = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct Options {
  int N = 2;
  int d = 2;
  std::string rho = "3/2";
  std::string noise = "white";
  std::string mode = "complete";
  std::string maxh = "3/2";
  int iter = 3;
  int max_iter = 200;
  std::string scope = "full";
  std::size_t cap = 10'000'000;
  unsigned threads = 1;
  std::string out;
  std::string format;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_params(CLI::App* app, Options& o) {
  app->add_option("--N", o.N, "Degree of the nonlinearity")->envname("FRACREG_N")->capture_default_str();
  app->add_option("--d", o.d, "Space dimension")->envname("FRACREG_D")->capture_default_str();
  app->add_option("--rho", o.rho, "Fractional order, exact fraction or decimal (0.9 means 9/10)")
      ->envname("FRACREG_RHO")
      ->capture_default_str();
  app->add_option("--noise", o.noise, "\"white\", or the rational part a of the noise regularity a - kappa")
      ->envname("FRACREG_NOISE")
      ->capture_default_str();
}

void add_build(CLI::App* app, Options& o) {
  app->add_option("--mode", o.mode,
                  "complete: iterate to a certified negative sector; fixed: use --maxh and --iter as given")
      ->check(CLI::IsMember({"complete", "fixed"}))
      ->envname("FRACREG_MODE")
      ->capture_default_str();
  app->add_option("--maxh", o.maxh, "Homogeneity threshold (fixed mode)")->envname("FRACREG_MAXH")->capture_default_str();
  app->add_option("--iter", o.iter, "Iterations (fixed mode)")->envname("FRACREG_ITER")->capture_default_str();
  app->add_option("--max-iter", o.max_iter, "Iteration limit (complete mode)")->capture_default_str();
  app->add_option("--scope", o.scope, "full or negative (fixed mode)")
      ->check(CLI::IsMember({"full", "negative"}))
      ->envname("FRACREG_SCOPE")
      ->capture_default_str();
  app->add_option("--cap", o.cap, "Maximum number of stored symbols")->envname("FRACREG_CAP")->capture_default_str();
  app->add_option("--threads", o.threads, "Worker threads")->envname("FRACREG_THREADS")->capture_default_str();
}

void add_output(CLI::App* app, Options& o, std::vector<std::string> formats) {
  app->add_option("--out", o.out, "Output file (directory for split or csv outputs); stdout when empty");
  // Subcommands share o.format, so each one installs its default only when it is selected.
  app->preparse_callback([&o, def = formats.front()](std::size_t) { o.format = def; });
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->default_str(formats.front());
}

Rational parse_or_usage(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad ") + what + ": " + e.what());
  }
}

Parameters make_params(const Options& o, const std::string& rho_text) {
  Rational rho = parse_or_usage(rho_text, "--rho");
  try {
    if (o.noise == "white") return Parameters::white(o.N, o.d, rho);
    return Parameters::with_noise(o.N, o.d, rho, Homogeneity{parse_or_usage(o.noise, "--noise"), -1});
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Parameters make_params(const Options& o) { return make_params(o, o.rho); }

struct BuildResult {
  ModelSpace ms;
  bool capped = false;
  std::string message;
};

BuildResult run_build(const Parameters& p, const Options& o) {
  if (o.threads == 0) throw UsageError("--threads must be >= 1");
  try {
    if (o.mode == "complete") return {build_negative_sector(p, o.max_iter, o.cap, o.threads), false, {}};
    BuildConfig c;
    c.maxh = parse_or_usage(o.maxh, "--maxh");
    c.iter = o.iter;
    c.scope = parse_build_scope(o.scope);
    c.cap = o.cap;
    c.threads = o.threads;
    if (c.maxh < Rational(0) || c.iter < 1) throw UsageError("need --maxh >= 0 and --iter >= 1");
    return {build(p, c), false, {}};
  } catch (const CapExceeded& e) {
    return {e.partial(), true, e.what()};
  }
}

// Writes to --out, or stdout when it is empty or "-".
void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
}

fs::path out_dir(const Options& o) {
  if (o.out.empty() || o.out == "-") throw UsageError("this output needs --out DIR");
  fs::create_directories(o.out);
  return o.out;
}

std::string count_label(const Count& c) { return (c.certified ? "= " : "≥ ") + std::to_string(c.value); }

std::string summary(const ModelSpace& ms) {
  std::ostringstream os;
  os << "c_F " << count_label(c_F(ms)) << ", h_F " << count_label(h_F(ms))
     << (ms.negative_sector_complete() ? " (certified)" : " (lower bound)");
  return os.str();
}

int finish(const BuildResult& r) {
  std::cerr << summary(r.ms) << '\n';
  if (r.capped) {
    std::cerr << "cap exceeded: " << r.message << "; results are partial\n";
    return kExitCap;
  }
  return 0;
}

std::string k_string(const MultiIndex& k, int d) {
  auto padded = k.padded(static_cast<std::size_t>(d) + 1);
  std::string s = "(";
  for (std::size_t i = 0; i < padded.size(); ++i) s += (i ? "," : "") + std::to_string(padded[i]);
  return s + ")";
}

int cmd_check(const Options& o) {
  auto p = make_params(o);
  auto v = is_locally_subcritical(p);
  std::ostringstream os;
  os << "N = " << p.N << ", d = " << p.d << ", rho = " << to_string(p.rho) << '\n';
  os << "alpha0 = " << to_string(p.alpha0) << '\n';
  os << "rho_c = " << to_string(rho_c(p.N, p.d)) << '\n';
  if (v.subcritical) {
    os << "subcritical (" << to_string(v.which) << ")\n";
  } else {
    // On the boundary the kappa-free parts balance exactly and only kappa decides.
    Rational lhs = p.rho * static_cast<std::int64_t>(p.N);
    Rational rhs = -p.alpha0.a * static_cast<std::int64_t>(p.N - 1);
    bool boundary = lhs == rhs || p.alpha0.a + p.rho == Rational(0);
    os << (boundary ? "not subcritical (boundary)" : "not subcritical") << '\n';
  }
  emit(o, os.str());
  return v.subcritical ? 0 : kExitNotSubcritical;
}

int cmd_build(const Options& o) {
  auto r = run_build(make_params(o), o);
  emit(o, to_json(r.ms).dump(2) + "\n");
  return finish(r);
}

int cmd_list(const Options& o) {
  auto r = run_build(make_params(o), o);
  auto neg = negative_sector(r.ms);
  const int d = r.ms.params.d;
  std::ostringstream os;
  if (o.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& e : neg) {
      const auto& t = e.symbol.type();
      arr.push_back({{"symbol", render(e.symbol, static_cast<std::size_t>(d) + 1)},
                     {"p", t.p},
                     {"q", t.q},
                     {"k", t.k.padded(static_cast<std::size_t>(d) + 1).components()},
                     {"a", to_string(e.homogeneity.a)},
                     {"b", e.homogeneity.b}});
    }
    nlohmann::json j{{"certified", r.ms.negative_sector_complete()},
                     {"c_F", c_F(r.ms).value},
                     {"h_F", h_F(r.ms).value},
                     {"elements", arr}};
    os << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    os << "symbol,p,q,k,a,b\n";
    for (const auto& e : neg) {
      const auto& t = e.symbol.type();
      os << '"' << render(e.symbol, static_cast<std::size_t>(d) + 1) << "\"," << t.p << ',' << t.q << ",\""
         << k_string(t.k, d) << "\"," << to_string(e.homogeneity.a) << ',' << e.homogeneity.b << '\n';
    }
  } else {
    os << "# N = " << r.ms.params.N << ", d = " << d << ", rho = " << to_string(r.ms.params.rho) << "; "
       << summary(r.ms) << '\n';
    std::size_t width = 6;
    for (const auto& e : neg) width = std::max(width, render(e.symbol, static_cast<std::size_t>(d) + 1).size());
    os << std::left << std::setw(static_cast<int>(width)) << "symbol" << "  " << std::setw(4) << "p" << std::setw(4)
       << "q" << std::setw(static_cast<int>(2 * d + 5)) << "k"
       << "homogeneity\n";
    for (const auto& e : neg) {
      const auto& t = e.symbol.type();
      os << std::setw(static_cast<int>(width)) << render(e.symbol, static_cast<std::size_t>(d) + 1) << "  "
         << std::setw(4) << t.p << std::setw(4) << t.q << std::setw(static_cast<int>(2 * d + 5)) << k_string(t.k, d)
         << to_string(e.homogeneity) << '\n';
    }
  }
  emit(o, os.str());
  return finish(r);
}

int cmd_stats(const Options& o, bool bare) {
  auto r = run_build(make_params(o), o);
  GraphOptions g;
  g.bare = bare;
  auto rep = make_report(r.ms, g);
  if (o.format == "json") {
    emit(o, to_json(rep).dump(2) + "\n");
  } else {
    auto dir = out_dir(o);
    std::ostringstream size, hom, hom_exact, deg, bare_deg;
    write_size_csv(size, rep.sizes);
    write_homogeneity_csv(hom, rep.homogeneity, false);
    write_homogeneity_csv(hom_exact, rep.homogeneity_exact, true);
    write_degree_csv(deg, rep.degrees);
    write_degree_csv(bare_deg, rep.bare_degrees);
    write_file(dir / "size.csv", size.str());
    write_file(dir / "homogeneity.csv", hom.str());
    write_file(dir / "homogeneity_exact.csv", hom_exact.str());
    write_file(dir / "degree.csv", deg.str());
    write_file(dir / "bare_degree.csv", bare_deg.str());
    write_file(dir / "report.json", to_json(rep).dump(2) + "\n");
  }
  return finish(r);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_scan(const Options& o, const std::string& grid, bool bounds) {
  auto rhos = split_list(grid);
  if (rhos.empty()) throw UsageError("--grid needs at least one rho");
  bool capped = false;
  std::vector<ScanPoint> points;
  std::vector<BoundsRow> rows;
  std::vector<std::size_t> h0;
  for (const auto& text : rhos) {
    auto p = make_params(o, text);
    auto r = run_build(p, o);
    capped = capped || r.capped;
    ScanPoint pt;
    pt.rho = p.rho;
    pt.h_F = h_F(r.ms).value;
    pt.c_F = c_F(r.ms).value;
    pt.certified = r.ms.negative_sector_complete();
    points.push_back(pt);
    h0.push_back(h0_F(r.ms).value);
    if (bounds) {
      if (o.noise != "white") throw UsageError("--bounds needs white noise");
      BoundsRow row;
      row.N = p.N;
      row.d = p.d;
      row.rho = p.rho;
      row.h0 = h0_bounds(p.N, p.d, p.rho);
      row.h0_value = h0.back();
      row.hF = hF_bounds(p.N, p.d, p.rho);
      row.hF_value = pt.h_F;
      row.cF_value = pt.c_F;
      row.dio = dio_count(p.N, p.d, p.rho);
      rows.push_back(row);
    }
    std::cerr << "rho = " << to_string(p.rho) << ": " << summary(r.ms) << '\n';
  }
  std::ostringstream os;
  if (bounds) {
    write_bounds_csv(os, rows);
  } else if (o.format == "json") {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < points.size(); ++i)
      arr.push_back({{"rho", to_string(points[i].rho)},
                     {"h_F", points[i].h_F},
                     {"c_F", points[i].c_F},
                     {"h0_F", h0[i]},
                     {"certified", points[i].certified}});
    nlohmann::json j{{"N", o.N}, {"d", o.d}, {"points", arr}};
    os << j.dump(2) << '\n';
  } else {
    os << "rho,h_F,c_F,h0_F,certified\n";
    for (std::size_t i = 0; i < points.size(); ++i)
      os << to_string(points[i].rho) << ',' << points[i].h_F << ',' << points[i].c_F << ',' << h0[i] << ','
         << (points[i].certified ? "true" : "false") << '\n';
  }
  emit(o, os.str());
  if (capped) std::cerr << "cap exceeded for at least one grid point; those rows are lower bounds\n";
  return capped ? kExitCap : 0;
}

std::vector<ScanPoint> read_scan_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("rho,h_F,c_F", 0) != 0)
    throw UsageError(path + " is not a scan CSV (expected header rho,h_F,c_F,...)");
  std::vector<ScanPoint> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto cells = split_list(line);
    if (cells.size() < 3) throw UsageError("short row in " + path + ": " + line);
    ScanPoint p;
    p.rho = parse_or_usage(cells[0], "rho cell");
    p.h_F = std::stoull(cells[1]);
    p.c_F = std::stoull(cells[2]);
    p.certified = cells.size() < 5 || cells[4] == "true";
    out.push_back(p);
  }
  return out;
}

int cmd_fit(const Options& o, const std::string& input) {
  auto points = read_scan_csv(input);
  ScalingFit f;
  try {
    f = scaling_fit(points, o.N, o.d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool certified = std::all_of(points.begin(), points.end(), [](const ScanPoint& p) { return p.certified; });
  std::ostringstream os;
  if (o.format == "txt") {
    os << "h_F ~ A / gap:            A = " << f.A << "  (envelope " << f.A_lower << " .. " << f.A_upper << ")\n";
    os << "log c_F - 1.5 log gap ~ B + beta d / gap:  B = " << f.B << ", beta = " << f.beta << '\n';
    if (f.beta_reference > 0)
      os << "reference beta_N = " << f.beta_reference << ", relative error = " << f.beta_relative_error << '\n';
    if (!certified) os << "warning: some grid points are lower bounds\n";
  } else {
    nlohmann::json j{{"N", o.N},
                     {"d", o.d},
                     {"points", points.size()},
                     {"all_certified", certified},
                     {"A", f.A},
                     {"A_lower", f.A_lower},
                     {"A_upper", f.A_upper},
                     {"B", f.B},
                     {"beta", f.beta},
                     {"beta_reference", f.beta_reference},
                     {"beta_relative_error", f.beta_relative_error},
                     {"h_residuals", f.h_residuals},
                     {"c_residuals", f.c_residuals},
                     {"hF_times_gap", f.hF_times_gap}};
    os << j.dump(2) << '\n';
  }
  emit(o, os.str());
  return 0;
}

struct Selector {
  std::string type;  // "p,q" or "p,q,k0,...,kd"
  int index = -1;
  std::string encoding;
  std::string split;
};

bool matches_type(const SymbolRecord& r, const std::vector<std::string>& want, int d) {
  const auto& t = r.symbol.type();
  if (std::stoll(want[0]) != t.p || std::stoll(want[1]) != t.q) return false;
  if (want.size() == 2) return t.k.is_zero();
  auto k = t.k.padded(static_cast<std::size_t>(d) + 1);
  if (want.size() == 3 && want[2] == "0") return t.k.is_zero();
  if (want.size() != k.size() + 2) throw UsageError("--type needs p,q or p,q,k0,...,kd");
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::stoul(want[i + 2]) != k[i]) return false;
  return true;
}

int cmd_export(const Options& o, const Selector& sel) {
  auto r = run_build(make_params(o), o);
  if (o.format == "json") {
    emit(o, to_json(r.ms).dump(2) + "\n");
    return finish(r);
  }
  auto neg = negative_sector(r.ms);
  const int d = r.ms.params.d;
  std::vector<Symbol> chosen;
  if (!sel.encoding.empty()) {
    auto s = parse_encoding(sel.encoding);
    for (const auto& e : neg)
      if (e.symbol == s) chosen.push_back(e.symbol);
  } else if (sel.index >= 0) {
    if (static_cast<std::size_t>(sel.index) < neg.size()) chosen.push_back(neg[static_cast<std::size_t>(sel.index)].symbol);
  } else if (!sel.type.empty()) {
    auto want = split_list(sel.type);
    if (want.size() < 2) throw UsageError("--type needs p,q or p,q,k0,...,kd");
    for (const auto& e : neg)
      if (matches_type(e, want, d)) chosen.push_back(e.symbol);
  } else {
    for (const auto& e : neg) chosen.push_back(e.symbol);
  }
  bool selecting = !sel.encoding.empty() || sel.index >= 0 || !sel.type.empty();
  if (selecting && chosen.empty()) {
    std::cerr << "no negative-sector element matches the selection\n";
    return kExitUsage;
  }

  DotOptions dot;
  dot.dims = static_cast<std::size_t>(d) + 1;
  if (!sel.split.empty()) {
    fs::create_directories(sel.split);
    std::ostringstream index;
    index << "file,symbol,p,q\n";
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      std::ostringstream name;
      name << "tree_" << std::setw(5) << std::setfill('0') << i << ".dot";
      dot.graph_name = "tree_" + std::to_string(i);
      write_file(fs::path(sel.split) / name.str(), to_dot(chosen[i], dot));
      index << name.str() << ",\"" << render(chosen[i], dot.dims) << "\"," << chosen[i].type().p << ','
            << chosen[i].type().q << '\n';
    }
    write_file(fs::path(sel.split) / "index.csv", index.str());
  } else if (chosen.size() == 1) {
    emit(o, to_dot(chosen.front(), dot));
  } else {
    dot.graph_name = "forest";
    emit(o, to_dot_forest(chosen, dot));
  }
  return finish(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative-sector enumeration and tree statistics for the fractional Allen-Cahn equation"};
  app.require_subcommand(1);
  Options o;
  std::string grid;
  bool bounds = false;
  bool bare = false;
  std::string input;
  Selector sel;

  auto* check = app.add_subcommand("check", "Report rho_c and local subcriticality (exit 1 if not subcritical)");
  add_params(check, o);
  add_output(check, o, {"txt"});

  auto* build_cmd = app.add_subcommand("build", "Build the model space and write it as JSON");
  add_params(build_cmd, o);
  add_build(build_cmd, o);
  add_output(build_cmd, o, {"json"});

  auto* list = app.add_subcommand("list", "List the negative sector");
  add_params(list, o);
  add_build(list, o);
  add_output(list, o, {"txt", "csv", "json"});

  auto* stats = app.add_subcommand("stats", "Statistics of the negative sector (csv writes files into --out DIR)");
  add_params(stats, o);
  add_build(stats, o);
  add_output(stats, o, {"json", "csv"});
  stats->add_flag("--bare", bare, "Graph measures on bare trees instead of decorated ones");

  auto* scan = app.add_subcommand("scan", "Counts over a grid of rho values");
  add_params(scan, o);
  add_build(scan, o);
  add_output(scan, o, {"csv", "json"});
  scan->add_option("--grid", grid, "Comma-separated rho values, e.g. 1.8,1.75,1.7")->required();
  scan->add_flag("--bounds", bounds, "Emit the closed-form bounds table (CSV) instead");

  auto* fit = app.add_subcommand("fit", "Fit the scaling laws to a scan CSV");
  fit->add_option("--N", o.N, "Degree of the nonlinearity")->envname("FRACREG_N")->capture_default_str();
  fit->add_option("--d", o.d, "Space dimension")->envname("FRACREG_D")->capture_default_str();
  fit->add_option("--in", input, "Scan CSV produced by 'scan'")->required();
  add_output(fit, o, {"json", "txt"});

  auto* exp = app.add_subcommand("export", "Export the model space (json) or negative-sector trees (dot)");
  add_params(exp, o);
  add_build(exp, o);
  add_output(exp, o, {"dot", "json"});
  exp->add_option("--type", sel.type, "Select elements of type p,q (k = 0) or p,q,k0,...,kd");
  exp->add_option("--index", sel.index, "Select one element by its position in the negative sector");
  exp->add_option("--encoding", sel.encoding, "Select one element by canonical encoding");
  exp->add_option("--split", sel.split, "Write one DOT file per tree into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*build_cmd) return cmd_build(o);
    if (*list) return cmd_list(o);
    if (*stats) return cmd_stats(o, bare);
    if (*scan) return cmd_scan(o, grid, bounds);
    if (*fit) return cmd_fit(o, input);
    if (*exp) return cmd_export(o, sel);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotSubcritical& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotSubcritical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
