// hup: command-line front end for campaigns, iteration tables, wandering-set
// tables, spiral samples and lattice scans.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "hup/verification.hpp"

namespace {

constexpr const char* kVersion = "hup 1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> footer;  // extra key/value lines
};

struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = hup::kDefaultSeed;
};

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string cell_csv(const Cell& c) {
  if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
  if (std::holds_alternative<double>(c)) return sci(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<long>(c)) return std::get<long>(c);
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
  }
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

std::string render(const Table& t, const Provenance& p, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const Cell& c : r) row.push_back(cell_json(c));
      j["rows"].push_back(row);
    }
    for (const auto& [k, v] : t.footer) j["summary"][k] = v;
    j["provenance"]["tool"] = kVersion;
    j["provenance"]["command"] = p.command;
    for (const auto& [k, v] : p.parameters) j["provenance"]["parameters"][k] = v;
    j["provenance"]["seed"] = p.seed;
    return j.dump(2) + "\n";
  }
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + cell_csv(r[i]);
    s += "\n";
  }
  for (const auto& [k, v] : t.footer) s += "# " + k + ": " + v + "\n";
  s += std::string("# tool: ") + kVersion + "\n";
  s += "# command: " + p.command + "\n";
  for (const auto& [k, v] : p.parameters) s += "# " + k + " = " + v + "\n";
  s += "# seed: " + std::to_string(p.seed) + "\n";
  return s;
}

/// Writes via a temporary file in the target directory and renames it.
void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") std::cout << content;
  else write_atomic(out, content);
}

std::vector<std::string> split(const std::string& s, char d) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, d)) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " value '" + s + "'");
  }
}

// f-specs: const1, lambda1, kappa1, kappa:A, f0, x2, indicator:A:B, bump:C:W
hup::GridFunction parse_fspec(const std::string& spec, const hup::GridSpec& grid) {
  using hup::ClosedForm;
  using hup::GridFunction;
  auto parts = split(spec, ':');
  const std::string& name = parts.empty() ? spec : parts[0];
  auto arg = [&](std::size_t i) {
    if (parts.size() <= i) throw UsageError("f-spec '" + spec + "' is missing parameters");
    return parse_double(parts[i], "f-spec");
  };
  if (name == "const1" || name == "one") return GridFunction::from_closed_form(grid, ClosedForm::constant(1.0));
  if (name == "lambda1") return GridFunction::from_closed_form(grid, ClosedForm::lambda1());
  if (name == "kappa1") return GridFunction::from_closed_form(grid, ClosedForm::kappa(1.0));
  if (name == "kappa") return GridFunction::from_closed_form(grid, ClosedForm::kappa(arg(1)));
  if (name == "f0") return GridFunction::from_closed_form(grid, ClosedForm::f0());
  if (name == "x2") return GridFunction::from_closed_form(grid, ClosedForm::monomial(2));
  if (name == "indicator") return GridFunction::from_closed_form(grid, ClosedForm::indicator(arg(1), arg(2)));
  if (name == "bump") {
    const double c = arg(1), w = arg(2);
    if (!(w > 0)) throw UsageError("bump width must be positive");
    return GridFunction::from_callable(
        grid, [c, w](double x) { return hup::campaigns::bump_unit((x - c) / w); }, {c - w, c + w});
  }
  throw UsageError("unknown f-spec '" + spec +
                   "' (expected const1, lambda1, kappa1, kappa:A, f0, x2, indicator:A:B or bump:C:W)");
}

hup::LineFunction parse_density(const std::string& spec) {
  auto parts = split(spec, ':');
  const std::string& name = parts.empty() ? spec : parts[0];
  const double pi = std::numbers::pi;
  if (name == "f0") return hup::f0_line_function();
  if (name == "poisson") {
    const double s = parts.size() > 1 ? parse_double(parts[1], "poisson scale") : 1.0;
    if (!(s > 0)) throw UsageError("poisson scale must be positive");
    return hup::LineFunction::decaying([s, pi](double t) { return t > 0 ? s / (pi * (s * s + t * t)) : 0.0; },
                                       hup::Decay::InverseSquare, {0.0});
  }
  if (name == "bump") {
    if (parts.size() < 3) throw UsageError("bump density needs bump:C:W");
    const double c = parse_double(parts[1], "bump center"), w = parse_double(parts[2], "bump width");
    if (!(w > 0) || c - w < 0) throw UsageError("bump density must be supported in [0, inf)");
    return hup::LineFunction::compact([c, w](double t) { return hup::campaigns::bump_unit((t - c) / w); }, c - w, c + w);
  }
  throw UsageError("unknown density '" + spec + "' (expected f0, poisson[:S] or bump:C:W)");
}

struct Common {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = hup::kDefaultSeed;
  bool timing = false;
};

void add_common(CLI::App* sc, Common& c) {
  sc->add_option("--out", c.out, "output path (stdout if omitted)");
  sc->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sc->add_option("--seed", c.seed, "seed for randomized test functions");
  sc->add_flag("--timing", c.timing, "record wall-clock times (breaks byte-identical output)");
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> ids;
  std::vector<std::string> sets;
  std::string out = "reports";
  bool list = false;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  const auto& reg = hup::registry();
  if (a.list) {
    std::cout << hup::registry_listing(reg);
    return 0;
  }
  std::vector<std::string> ids = a.ids;
  if (ids.empty()) throw UsageError("verify needs campaign ids or 'all'");
  if (ids.size() == 1 && ids[0] == "all") ids = hup::campaign_ids(reg);
  hup::Overrides ov;
  for (const std::string& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=v1,v2,...");
    std::vector<double> vals;
    for (const std::string& v : split(s.substr(eq + 1), ',')) vals.push_back(parse_double(v, s.substr(0, eq)));
    ov[s.substr(0, eq)] = vals;
  }
  if (!ov.empty() && ids.size() != 1) throw UsageError("--set applies to a single campaign");
  // Resolve every id before running anything.
  for (const std::string& id : ids) {
    bool found = false;
    for (const auto& camp : reg) found = found || camp.id == id;
    if (!found) hup::run_campaign(id, {}, {}, reg);  // throws UnknownCampaign naming the valid ids
  }
  std::vector<hup::Report> reports;
  for (const std::string& id : ids) {
    hup::Report r = hup::run_campaign(id, ov, {c.seed, c.timing}, reg);
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.campaign_id << " (" << r.checks.size() << " checks)\n";
    write_atomic((std::filesystem::path(a.out) / (id + ".json")).string(), hup::to_json(r).dump(2) + "\n");
    reports.push_back(std::move(r));
  }
  nlohmann::ordered_json summary = hup::summary_json(reports);
  summary["seed"] = c.seed;
  write_atomic((std::filesystem::path(a.out) / "summary.json").string(), summary.dump(2) + "\n");
  std::cerr << summary["passed"].get<int>() << "/" << reports.size() << " campaigns passed\n";
  return hup::all_pass(reports) ? 0 : 1;
}

struct IterateArgs {
  std::string kind = "SubT";
  double beta = 0.5, gamma = 0.5;
  std::string f = "const1";
  int n_max = 10;
  int grid = 0;
  double tol = 1e-8;
  std::vector<double> sub;
};

int cmd_iterate(const IterateArgs& a, const Common& c) {
  const hup::OpKind k = hup::parse_op_kind(a.kind);
  const bool tau = k == hup::OpKind::SubT || k == hup::OpKind::TransferTp || k == hup::OpKind::KoopmanL;
  const double param = tau ? a.beta : a.gamma;
  const hup::OperatorKind op = hup::make_operator(k, param);
  if (op.is_koopman()) throw UsageError("iterate supports the subtransfer and transfer operators");
  if (a.n_max < 0) throw UsageError("--n-max must be nonnegative");
  if (!(a.tol > 0)) throw UsageError("--tol must be positive");
  hup::OperatorConfig cfg;
  cfg.tail_tol = a.tol;
  hup::GridSpec gs = cfg.grid_for(op);
  if (a.grid > 0) gs.panels = a.grid;
  cfg.output_grid = gs;
  std::optional<std::pair<double, double>> sub;
  if (!a.sub.empty()) {
    if (a.sub.size() != 2 || !(a.sub[0] < a.sub[1])) throw UsageError("--sub expects LO,HI with LO < HI");
    sub = std::make_pair(a.sub[0], a.sub[1]);
  }
  hup::GridFunction g = parse_fspec(a.f, gs);
  Table t;
  t.columns = {"n", "l1", "sup", "elapsed_ms"};
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 0; n <= a.n_max; ++n) {
    if (n > 0) g = hup::apply(op, g, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    t.rows.push_back({static_cast<long>(n), hup::l1_norm(g, sub), g.sup_norm(sub), c.timing ? Cell(ms) : Cell()});
  }
  Provenance p{"iterate",
               {{"kind", a.kind},
                {tau ? "beta" : "gamma", num(param)},
                {"f", a.f},
                {"n_max", std::to_string(a.n_max)},
                {"grid_panels", std::to_string(gs.panels)},
                {"tol", num(a.tol)},
                {"sub", sub ? num(sub->first) + "," + num(sub->second) : "full"}},
               c.seed};
  emit(c.out, render(t, p, c.format));
  return 0;
}

struct WanderingArgs {
  std::string family = "tau";
  double beta = 0.5, gamma = 0.5;
  int n_max = 8;
  long resolution = 4096;
  int membership_depth = 2;
};

int cmd_wandering(const WanderingArgs& a, const Common& c) {
  const bool tau = a.family == "tau";
  const double p = tau ? a.beta : a.gamma;
  if (!(p > 0.0 && p < 1.0))
    throw hup::InvalidInput(std::string("wandering: the bounds hold only under the strict hypothesis 0 < ") +
                            (tau ? "beta" : "gamma") + " < 1 (got " + num(p) + ")");
  if (a.n_max < 1) throw UsageError("--n-max must be >= 1");
  if (a.resolution < 1) throw UsageError("--resolution must be >= 1");
  const hup::MapParams mp = tau ? hup::MapParams::tau(p) : hup::MapParams::sigma(p);
  hup::CylinderOptions co;
  co.initial_cells = a.resolution;
  Table t;
  t.columns = {"N", "measure", "bound", "violation", "duality", "unresolved"};
  int violations = 0;
  for (int N = 1; N <= a.n_max; ++N) {
    const hup::WanderingQuery q{mp, N};
    const auto e = hup::wandering_measure_orbits(q, a.membership_depth, {}, co);
    const double b = hup::wandering_bound(q);
    const bool v = e.value > b;
    violations += v;
    t.rows.push_back({static_cast<long>(N), e.value, b, static_cast<long>(v), hup::wandering_measure_duality(q),
                      e.unresolved});
  }
  t.footer.push_back({"violations", std::to_string(violations)});
  Provenance pr{"wandering",
                {{"family", a.family},
                 {tau ? "beta" : "gamma", num(p)},
                 {"weight", tau ? "kappa1" : "lambda1"},
                 {"n_max", std::to_string(a.n_max)},
                 {"resolution", std::to_string(a.resolution)},
                 {"membership_depth", std::to_string(a.membership_depth)}},
                c.seed};
  emit(c.out, render(t, pr, c.format));
  return violations ? 1 : 0;
}

struct SpiralArgs {
  double x_min = 0.1, x_max = 10.0, step = 0.1;
};

int cmd_spiral(const SpiralArgs& a, const Common& c) {
  if (!(a.x_min > 0) || a.x_max < a.x_min) throw UsageError("spiral needs 0 < x-min <= x-max");
  if (!(a.step > 0)) throw UsageError("--step must be positive");
  const long n = static_cast<long>(std::floor((a.x_max - a.x_min) / a.step + 1e-9));
  Table t;
  t.columns = {"x", "ci", "si", "abs_spiral"};
  double mn = std::numeric_limits<double>::infinity(), at = a.x_min;
  for (long k = 0; k <= n; ++k) {
    const double x = a.x_min + k * a.step;
    const hup::cplx s = hup::nielsen_spiral(x);
    const double m = std::abs(s);
    if (m < mn) {
      mn = m;
      at = x;
    }
    t.rows.push_back({x, s.real(), s.imag(), m});
  }
  t.footer.push_back({"min_abs_spiral", sci(mn)});
  t.footer.push_back({"argmin_x", sci(at)});
  Provenance p{"spiral", {{"x_min", num(a.x_min)}, {"x_max", num(a.x_max)}, {"step", num(a.step)}}, c.seed};
  emit(c.out, render(t, p, c.format));
  return 0;
}

struct LatticeArgs {
  std::string density = "f0";
  double alpha = 2.0, beta = 2.0, mass = 2.0 * std::numbers::pi;
  int m_max = 8, n_max = 8;
  std::string quadrant = "full";
  double tol = 1e-10;
};

int cmd_lattice(const LatticeArgs& a, const Common& c) {
  hup::LatticeCross lc{a.alpha, a.beta, a.m_max, a.n_max, hup::parse_quadrant(a.quadrant)};
  hup::HyperbolaMeasure mu{parse_density(a.density), a.mass};
  hup::PvConfig cfg;
  cfg.tol = a.tol;
  const auto scan = hup::lattice_residual_scan(mu, lc, cfg);
  Table t;
  t.columns = {"m", "n", "xi1", "xi2", "re", "im", "residual", "nonconvergence"};
  for (const auto& e : scan.entries)
    t.rows.push_back({static_cast<long>(e.m), static_cast<long>(e.n), e.xi1, e.xi2, e.value.real(), e.value.imag(),
                      e.residual, static_cast<long>(!e.error.empty())});
  t.footer.push_back({"max_residual", sci(scan.max_residual)});
  t.footer.push_back({"nonconvergent_rows", std::to_string(scan.failures)});
  Provenance p{"lattice",
               {{"density", a.density},
                {"alpha", num(a.alpha)},
                {"beta", num(a.beta)},
                {"mass", num(a.mass)},
                {"m_max", std::to_string(a.m_max)},
                {"n_max", std::to_string(a.n_max)},
                {"quadrant", a.quadrant},
                {"tol", num(a.tol)}},
               c.seed};
  emit(c.out, render(t, p, c.format));
  return scan.failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer operators, Hilbert transforms and hyperbola Fourier checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common cv, ci, cw, cs, cl;
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification campaigns ('all' for every campaign)");
  verify->add_option("ids", va.ids, "campaign ids or 'all'");
  verify->add_option("--set", va.sets, "parameter override key=v1,v2 (single campaign only)");
  verify->add_flag("--list", va.list, "print the campaign registry");
  verify->add_option("--out", va.out, "report directory");
  verify->add_option("--seed", cv.seed, "seed for randomized test functions");
  verify->add_flag("--timing", cv.timing, "record wall time in reports");

  IterateArgs ia;
  auto* iter = app.add_subcommand("iterate", "table of L1 and sup norms of operator iterates");
  iter->add_option("--kind", ia.kind, "SubT, SubS, TransferTp or TransferSp");
  iter->add_option("--beta", ia.beta, "tau-family parameter");
  iter->add_option("--gamma", ia.gamma, "sigma-family parameter");
  iter->add_option("--f", ia.f, "input: const1, lambda1, kappa1, kappa:A, f0, x2, indicator:A:B, bump:C:W");
  iter->add_option("--n-max", ia.n_max, "number of iterations");
  iter->add_option("--grid", ia.grid, "base panel count of the output grid (0 = default)");
  iter->add_option("--tol", ia.tol, "tail tolerance");
  iter->add_option("--sub", ia.sub, "restrict norms to LO,HI")->delimiter(',')->expected(2);
  add_common(iter, ci);

  WanderingArgs wa;
  auto* wand = app.add_subcommand("wandering", "weighted measures of wandering sets against their bounds");
  wand->add_option("--family", wa.family, "tau (weight kappa1) or sigma (weight lambda1)")
      ->check(CLI::IsMember({"tau", "sigma"}));
  wand->add_option("--beta", wa.beta, "tau-family parameter, 0 < beta < 1");
  wand->add_option("--gamma", wa.gamma, "sigma-family parameter, 0 < gamma < 1");
  wand->add_option("--n-max", wa.n_max, "largest depth N");
  wand->add_option("--resolution", wa.resolution, "initial cells of the cylinder bisection");
  wand->add_option("--membership-depth", wa.membership_depth, "orbit depth resolved by cylinders");
  add_common(wand, cw);

  SpiralArgs sa;
  auto* spir = app.add_subcommand("spiral", "samples of ci(pi x) + i si(pi x)");
  spir->add_option("--x-min", sa.x_min);
  spir->add_option("--x-max", sa.x_max);
  spir->add_option("--step", sa.step);
  add_common(spir, cs);

  LatticeArgs la;
  auto* lat = app.add_subcommand("lattice", "Fourier transform of a hyperbola measure on a lattice cross");
  lat->add_option("--density", la.density, "f0, poisson[:S] or bump:C:W");
  lat->add_option("--alpha", la.alpha, "lattice step on the first axis");
  lat->add_option("--beta", la.beta, "lattice step on the second axis");
  lat->add_option("--mass", la.mass, "hyperbola mass M");
  lat->add_option("--m-max", la.m_max);
  lat->add_option("--n-max", la.n_max);
  lat->add_option("--quadrant", la.quadrant, "full, ++, +-, -+ or --");
  lat->add_option("--tol", la.tol, "quadrature tolerance");
  add_common(lat, cl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(va, cv);
    if (*iter) return cmd_iterate(ia, ci);
    if (*wand) return cmd_wandering(wa, cw);
    if (*spir) return cmd_spiral(sa, cs);
    if (*lat) return cmd_lattice(la, cl);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hup::UnknownCampaign& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hup::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hup::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
