// diamond: command-line front end.
//
// Exit status: 0 ok, 1 numeric failure (JSON error record on stderr),
// 2 usage error.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "diamond/checks.hpp"
#include "diamond/debug.hpp"
#include "diamond/entanglement.hpp"
#include "diamond/errors.hpp"
#include "diamond/geometry.hpp"
#include "diamond/modes.hpp"
#include "diamond/states.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace diamond;

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::pair<double, double> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected 'a,b', got '" + s + "'");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double x = std::stod(a, &used1);
    const double y = std::stod(b, &used2);
    if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing characters");
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError("expected 'a,b', got '" + s + "'");
  }
}

// "lo:hi:step" -> lo, lo + step, ..., up to hi inclusive.
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
      throw UsageError("bad grid '" + s + "'");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || !(parts[1] >= parts[0]))
    throw UsageError("grid must be lo:hi:step with hi >= lo and step > 0, got '" + s + "'");
  const double count = std::floor((parts[1] - parts[0]) / parts[2] + 1e-9);
  if (count > 1e7) throw UsageError("grid has too many points");
  std::vector<double> g;
  for (long i = 0; i <= static_cast<long>(count); ++i) g.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return g;
}

states::TruncationPolicy parse_policy(const std::string& nmax, const std::optional<double>& tol) {
  if (tol && !(*tol > 0.0)) throw UsageError("--tol must be positive");
  if (nmax == "auto") return states::TruncationPolicy::automatic(tol);
  try {
    std::size_t used = 0;
    const long n = std::stol(nmax, &used);
    if (used != nmax.size() || n < 1) throw std::invalid_argument("n");
    return states::TruncationPolicy::fixed(static_cast<std::size_t>(n), tol);
  } catch (const std::logic_error&) {
    throw UsageError("--nmax must be 'auto' or an integer >= 1, got '" + nmax + "'");
  }
}

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DIAMOND_NUM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

json point_json(const geometry::EventCoords& p) {
  json j{{"frame", geometry::to_string(p.frame)}, {"c1", p.c1}, {"c2", p.c2}};
  if (p.frame == geometry::Frame::DiamondCoords) j["patch"] = geometry::to_string(p.region);
  return j;
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// ---- map -------------------------------------------------------------------

struct MapArgs {
  double alpha = 1.0;
  double lambda = 2.0;
  std::string from = "diamond";
  std::string to = "eta-xi";
  std::string point;
  std::string region = "D";
};

geometry::Region parse_region(const std::string& s) {
  using geometry::Region;
  if (s == "D") return Region::D;
  if (s == "DBar") return Region::DBar;
  if (s == "Future") return Region::DBarBar_FutureImage;
  if (s == "Past") return Region::DBarBar_PastImage;
  throw UsageError("unknown region '" + s + "'");
}

int run_map(const MapArgs& a) {
  const auto chart = geometry::DiamondChart::make(a.alpha, a.lambda);
  const auto [c1, c2] = parse_pair(a.point);
  geometry::EventCoords in;
  geometry::EventCoords dia;
  if (a.from == "diamond") {
    in = dia = geometry::EventCoords::minkowski_diamond(c1, c2);
  } else if (a.from == "rindler") {
    in = geometry::EventCoords::minkowski_rindler(c1, c2);
    dia = geometry::rindler_to_diamond(chart, in);
  } else {
    in = geometry::EventCoords::diamond(c1, c2, parse_region(a.region));
    dia = geometry::diamond_coords_to_minkowski(chart, in);
  }
  geometry::EventCoords out;
  if (a.to == "diamond") {
    out = dia;
  } else if (a.to == "rindler") {
    out = geometry::diamond_to_rindler(chart, dia);
  } else {
    out = geometry::diamond_coords(chart, dia);
  }
  const auto cls = geometry::classify_region(chart, dia);
  json j;
  j["input"] = point_json(in);
  j["output"] = point_json(out);
  j["region"] = geometry::to_string(cls.region);
  j["wedge"] = cls.wedge ? json(geometry::to_string(*cls.wedge)) : json(nullptr);
  j["conformal_factor"] = geometry::conformal_factor(chart, dia);
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---- modes -----------------------------------------------------------------

struct ModesArgs {
  double alpha = 1.0;
  std::string family = "g-int";
  std::string sigma = "plus";
  double freq_hat = 1.0;
  std::string grid = "-0.95:0.95:0.05";
  bool strict = false;
  std::string out;
};

int run_modes(const ModesArgs& a) {
  modes::ModeSpec m;
  m.chart = geometry::DiamondChart::make(a.alpha);
  m.freq_hat = a.freq_hat;
  m.sigma = a.sigma == "plus" ? modes::Sigma::Plus : modes::Sigma::Minus;
  if (a.family == "f") m.family = modes::Family::MinkowskiF;
  else if (a.family == "g-int") m.family = modes::Family::DiamondG_int;
  else if (a.family == "g-ext") m.family = modes::Family::DiamondG_ext;
  else if (a.family == "h-int") m.family = modes::Family::UnruhH_int;
  else m.family = modes::Family::UnruhH_ext;
  const auto grid = parse_grid(a.grid);
  std::ostringstream body;
  body << "null_coord,re,im\n";
  for (double c : grid) {
    const auto v = modes::eval_mode_at(m, c * a.alpha, {a.strict});
    body << num(c * a.alpha) << "," << num(v.real()) << "," << num(v.imag()) << "\n";
  }
  Sink sink(a.out);
  sink.out() << body.str();
  return 0;
}

// ---- bogoliubov ------------------------------------------------------------

struct BogoliubovArgs {
  double alpha = 1.0;
  double omega_hat = 1.0;
  double k_hat = 1.0;
  std::string kind = "beta";
  std::string method = "both";
  std::string region = "int";
  double rel_tol = 1e-10;
};

int run_bogoliubov(const BogoliubovArgs& a) {
  const auto chart = geometry::DiamondChart::make(a.alpha);
  const auto kind = a.kind == "alpha" ? modes::CoefKind::Alpha : modes::CoefKind::Beta;
  const auto region = a.region == "int" ? modes::Support::Int : modes::Support::Ext;
  if (region == modes::Support::Ext && a.method != "quadrature")
    throw UsageError("the closed form covers the interior region only; use --method quadrature with --region ext");
  json j{{"alpha", a.alpha}, {"omega_hat", a.omega_hat}, {"k_hat", a.k_hat}, {"kind", a.kind}, {"region", a.region}};
  std::optional<std::complex<double>> closed, quad;
  if (a.method != "quadrature") {
    closed = modes::bogoliubov_closed_form(chart, a.omega_hat, a.k_hat, kind);
    j["closed"] = complex_json(*closed);
  }
  if (a.method != "closed") {
    quad = modes::bogoliubov_quadrature(chart, a.omega_hat, a.k_hat, kind, region, modes::Sigma::Plus, {a.rel_tol});
    j["quadrature"] = complex_json(*quad);
  }
  if (closed && quad) j["deviation"] = std::abs(*closed - *quad) / std::abs(*quad);
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---- state -----------------------------------------------------------------

struct StateArgs {
  std::optional<double> r;
  std::optional<double> omega_hat;
  std::optional<double> omega;
  double alpha = 1.0;
  std::string nmax = "auto";
  std::optional<double> tol;
  std::string dump = "blocks";
  bool partial_transpose = false;
  std::string out;
};

double resolve_r(const StateArgs& a) {
  const int given = (a.r ? 1 : 0) + (a.omega_hat ? 1 : 0) + (a.omega ? 1 : 0);
  if (given != 1) throw UsageError("give exactly one of --r, --omega-hat, --omega (with --alpha)");
  if (a.r) return *a.r;
  if (a.omega_hat) return modes::squeezing_from_frequency(*a.omega_hat).r;
  return modes::squeezing_from_frequency(geometry::DiamondChart::make(a.alpha), *a.omega).r;
}

int run_state(const StateArgs& a) {
  const double r = resolve_r(a);
  const auto policy = parse_policy(a.nmax, a.tol);
  const auto trunc = states::choose_truncation(r, policy);
  if (a.dump == "dense" && trunc.n_max > states::kMaxDenseBlocks)
    throw UsageError("dense dump limited to n_max <= " + std::to_string(states::kMaxDenseBlocks));
  auto rho = states::build_rho_ad(r, trunc);
  if (a.partial_transpose) rho = states::partial_transpose(rho);

  Sink sink(a.out);
  if (a.dump == "dense") {
    const Eigen::MatrixXd m = rho.dense();
    std::ostringstream body;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) body << (j ? "," : "") << num(m(i, j));
      body << "\n";
    }
    sink.out() << body.str();
    return 0;
  }
  json blocks = json::array();
  for (const auto& b : rho.blocks()) {
    blocks.push_back({{"n", b.n},
                      {"basis", {{b.basis[0].a, b.basis[0].d}, {b.basis[1].a, b.basis[1].d}}},
                      {"diag", {b.diag0, b.diag1}},
                      {"coupling", b.coupling}});
  }
  json singles = json::array();
  for (const auto& s : rho.singles()) singles.push_back({{"basis", {s.basis.a, s.basis.d}}, {"value", s.value}});
  json j{{"r", r},
         {"representation", a.partial_transpose ? "partial_transpose" : "rho_ad"},
         {"n_max", trunc.n_max},
         {"tail_bound", trunc.tail_bound},
         {"dim", rho.dim()},
         {"trace", rho.trace()},
         {"blocks", blocks},
         {"singles", singles}};
  sink.out() << j.dump(2) << "\n";
  return 0;
}

// ---- entanglement, figures -------------------------------------------------

struct EntanglementArgs {
  std::string r_grid;
  std::string lifetime_grid;
  std::optional<double> omega;
  bool alpha_mode = false;
  std::string nmax = "auto";
  std::optional<double> tol;
  std::string format = "csv";
  std::string out;
};

const char* kCsvHeader = "r,neg_log,negativity,s_a,s_d,s_ad,mutual_info,n_max_used,tail_bound\n";

std::string csv_row(const entanglement::EntanglementReport& e) {
  return num(e.r) + "," + num(e.neg_log) + "," + num(e.negativity) + "," + num(e.s_a) + "," + num(e.s_d) + "," +
         num(e.s_ad) + "," + num(e.mutual_info) + "," + std::to_string(e.n_max_used) + "," + num(e.tail_bound) + "\n";
}

json report_json(const entanglement::EntanglementReport& e) {
  return {{"r", e.r},         {"neg_log", e.neg_log}, {"negativity", e.negativity},
          {"s_a", e.s_a},     {"s_d", e.s_d},         {"s_ad", e.s_ad},
          {"mutual_info", e.mutual_info}, {"n_max_used", e.n_max_used}, {"tail_bound", e.tail_bound}};
}

// Raises the first failed point as a numeric error.
std::vector<entanglement::EntanglementReport> run_sweep(const std::vector<double>& grid,
                                                        const states::TruncationPolicy& policy) {
  const auto points = entanglement::sweep(grid, policy, sweep_threads());
  std::vector<entanglement::EntanglementReport> out;
  for (const auto& p : points) {
    if (!p.report) throw NumericError(p.error_kind, "at r = " + num(p.r) + ": " + p.error_message);
    out.push_back(*p.report);
  }
  return out;
}

int run_entanglement(const EntanglementArgs& a) {
  if (a.r_grid.empty() == a.lifetime_grid.empty()) throw UsageError("give exactly one of --r-grid, --lifetime-grid");
  std::vector<double> grid;
  json source;
  if (!a.r_grid.empty()) {
    if (a.omega || a.alpha_mode) throw UsageError("--omega and --alpha-mode go with --lifetime-grid");
    grid = parse_grid(a.r_grid);
  } else {
    if (!a.omega) throw UsageError("--lifetime-grid needs --omega");
    std::vector<double> lifetimes = parse_grid(a.lifetime_grid);
    // --alpha-mode reads the grid as half-lifetimes alpha = T/2.
    if (a.alpha_mode)
      for (double& t : lifetimes) t *= 2.0;
    grid = entanglement::r_from_lifetimes(lifetimes, *a.omega);
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (std::isnan(grid[i])) throw InvalidArgument("lifetime must be > 0, got " + num(lifetimes[i]));
  }
  const auto reports = run_sweep(grid, parse_policy(a.nmax, a.tol));
  std::ostringstream body;
  if (a.format == "csv") {
    body << kCsvHeader;
    for (const auto& e : reports) body << csv_row(e);
  } else {
    json rows = json::array();
    for (const auto& e : reports) rows.push_back(report_json(e));
    body << rows.dump(2) << "\n";
  }
  Sink sink(a.out);
  sink.out() << body.str();
  return 0;
}

struct FiguresArgs {
  std::string out_dir = ".";
};

int run_figures(const FiguresArgs& a) {
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.05 * static_cast<double>(i);
  const auto reports = run_sweep(grid, states::TruncationPolicy::automatic());
  std::ostringstream fig3, fig4;
  fig3 << "r,neg_log\n";
  fig4 << "r,mutual_info\n";
  for (const auto& e : reports) {
    fig3 << num(e.r) << "," << num(e.neg_log) << "\n";
    fig4 << num(e.r) << "," << num(e.mutual_info) << "\n";
  }
  for (const auto& [name, text] : {std::pair{"fig3.csv", fig3.str()}, std::pair{"fig4.csv", fig4.str()}}) {
    Sink sink(a.out_dir + "/" + name);
    sink.out() << text;
  }
  std::cout << "wrote " << a.out_dir << "/fig3.csv " << a.out_dir << "/fig4.csv\n";
  return 0;
}

// ---- selftest --------------------------------------------------------------

struct SelftestArgs {
  std::string inject;
  std::uint64_t seed = checks::kDefaultSeed;
};

int run_selftest(const SelftestArgs& a) {
  std::optional<debug::ScopedFault> fault;
  if (!a.inject.empty()) {
    const auto f = debug::parse_fault(a.inject);
    if (!f) throw UsageError("unknown fault '" + a.inject + "'");
    fault.emplace(*f);
    std::cout << "injected fault: " << debug::to_string(*f) << "\n";
  }
  int passed = 0;
  const auto results = checks::run_suite(a.seed);
  for (const auto& r : results) {
    std::cout << checks::format_line(r, false) << "\n";
    passed += r.pass ? 1 : 0;
  }
  std::cout << passed << "/" << results.size() << " checks passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : kExitNumeric;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal-diamond geometry, modes and Alice-Dave entanglement"};
  app.require_subcommand(1);

  MapArgs map_args;
  auto* map = app.add_subcommand("map", "Convert an event between diamond, Rindler and (eta, xi) coordinates");
  map->add_option("--alpha", map_args.alpha, "Diamond half-lifetime")->capture_default_str();
  map->add_option("--lambda", map_args.lambda, "Dilatation parameter")->capture_default_str();
  map->add_option("--from", map_args.from)->check(CLI::IsMember({"diamond", "rindler", "eta-xi"}))->capture_default_str();
  map->add_option("--to", map_args.to)->check(CLI::IsMember({"diamond", "rindler", "eta-xi"}))->capture_default_str();
  map->add_option("--point", map_args.point, "c1,c2 in length units")->required();
  map->add_option("--region", map_args.region, "Patch for --from eta-xi")
      ->check(CLI::IsMember({"D", "DBar", "Future", "Past"}))
      ->capture_default_str();

  ModesArgs modes_args;
  auto* md = app.add_subcommand("modes", "Tabulate a mode function along its null coordinate");
  md->add_option("--alpha", modes_args.alpha)->capture_default_str();
  md->add_option("--family", modes_args.family)
      ->check(CLI::IsMember({"f", "g-int", "g-ext", "h-int", "h-ext"}))
      ->capture_default_str();
  md->add_option("--sigma", modes_args.sigma)->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();
  md->add_option("--freq-hat", modes_args.freq_hat, "omega*alpha (k*alpha for f)")->capture_default_str();
  md->add_option("--grid", modes_args.grid, "lo:hi:step in units of alpha")->capture_default_str();
  md->add_flag("--strict", modes_args.strict, "Fail outside the support instead of returning 0");
  md->add_option("--out", modes_args.out);

  BogoliubovArgs bog_args;
  auto* bog = app.add_subcommand("bogoliubov", "Bogoliubov coefficient of a diamond mode against a Minkowski mode");
  bog->add_option("--alpha", bog_args.alpha)->capture_default_str();
  bog->add_option("--omega-hat", bog_args.omega_hat)->capture_default_str();
  bog->add_option("--k-hat", bog_args.k_hat)->capture_default_str();
  bog->add_option("--kind", bog_args.kind)->check(CLI::IsMember({"alpha", "beta"}))->capture_default_str();
  bog->add_option("--method", bog_args.method)
      ->check(CLI::IsMember({"closed", "quadrature", "both"}))
      ->capture_default_str();
  bog->add_option("--region", bog_args.region)->check(CLI::IsMember({"int", "ext"}))->capture_default_str();
  bog->add_option("--rel-tol", bog_args.rel_tol, "Quadrature tolerance")->capture_default_str();

  StateArgs state_args;
  auto* st = app.add_subcommand("state", "Alice-Dave density matrix");
  st->add_option("--r", state_args.r, "Squeezing parameter");
  st->add_option("--omega-hat", state_args.omega_hat, "omega*alpha");
  st->add_option("--omega", state_args.omega, "Frequency in inverse length units, with --alpha");
  st->add_option("--alpha", state_args.alpha)->capture_default_str();
  st->add_option("--nmax", state_args.nmax, "auto or N")->capture_default_str();
  st->add_option("--tol", state_args.tol, "Tail tolerance (default 1e-12 in auto mode)");
  st->add_option("--dump", state_args.dump)->check(CLI::IsMember({"blocks", "dense"}))->capture_default_str();
  st->add_flag("--partial-transpose", state_args.partial_transpose, "Emit the partial transpose over Alice");
  st->add_option("--out", state_args.out);

  EntanglementArgs ent_args;
  auto* ent = app.add_subcommand("entanglement", "Entanglement measures over a grid");
  ent->add_option("--r-grid", ent_args.r_grid, "lo:hi:step");
  ent->add_option("--lifetime-grid", ent_args.lifetime_grid, "lo:hi:step of lifetimes T");
  ent->add_option("--omega", ent_args.omega, "Diamond-mode frequency for --lifetime-grid");
  ent->add_flag("--alpha-mode", ent_args.alpha_mode, "Read --lifetime-grid as half-lifetimes alpha");
  ent->add_option("--nmax", ent_args.nmax, "auto or N")->capture_default_str();
  ent->add_option("--tol", ent_args.tol, "Tail tolerance (default 1e-12 in auto mode)");
  ent->add_option("--format", ent_args.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  ent->add_option("--out", ent_args.out);

  FiguresArgs fig_args;
  auto* fig = app.add_subcommand("figures", "Write fig3.csv and fig4.csv over r in [0, 5]");
  fig->add_option("--out-dir", fig_args.out_dir)->capture_default_str();

  SelftestArgs self_args;
  auto* self = app.add_subcommand("selftest", "Run the embedded check suite");
  std::vector<std::string> fault_names;
  for (auto f : debug::all_faults()) fault_names.emplace_back(debug::to_string(f));
  self->add_option("--inject", self_args.inject, "Perturb one closed form")->check(CLI::IsMember(fault_names));
  self->add_option("--seed", self_args.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*map) return run_map(map_args);
    if (*md) return run_modes(modes_args);
    if (*bog) return run_bogoliubov(bog_args);
    if (*st) return run_state(state_args);
    if (*ent) return run_entanglement(ent_args);
    if (*fig) return run_figures(fig_args);
    if (*self) return run_selftest(self_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    print_error(e.kind(), e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
