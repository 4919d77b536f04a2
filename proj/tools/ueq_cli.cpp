#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ueq/extremizer_search.hpp"
#include "ueq/field_io.hpp"
#include "ueq/gaussian_states.hpp"
#include "ueq/identity_suite.hpp"
#include "ueq/suite.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_reports(const std::vector<ueq::EqualityReport>& reports, std::ostream& os) {
  for (const auto& r : reports) {
    os << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << r.identity_id << std::right
       << " rel=" << std::scientific << std::setprecision(3) << r.rel_residual << " tol=" << r.tol;
    if (auto it = r.context.find("state"); it != r.context.end()) os << " state=" << it->second;
    if (auto it = r.context.find("radial.n"); it != r.context.end()) os << " n=" << it->second;
    os << '\n';
  }
  os << std::defaultfloat;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct VerifyArgs {
  std::string suite;
  std::string config;
  ueq::suite::SuiteConfig cfg;
  int n = 0, N = 0, trials = 0, points = 0, dim = 0;
  double L = 0, offset = 0, tol = 0, R = 0;
  std::string scheme;
};

int run_verify(CLI::App& cmd, VerifyArgs& a) {
  using ueq::suite::SuiteConfig;
  SuiteConfig cfg;
  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw std::invalid_argument("cannot read config '" + a.config + "'");
    nlohmann::json j;
    try {
      f >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config '" + a.config + "': " + e.what());
    }
    cfg = ueq::suite::config_from_json(j);
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (!a.suite.empty()) cfg.suite = a.suite;
  if (given("--n")) cfg.n = a.n;
  if (given("--N")) cfg.N = a.N;
  if (given("--L")) cfg.L = a.L;
  if (given("--offset")) cfg.offset = a.offset;
  if (given("--scheme")) cfg.scheme = a.scheme;
  if (given("--tol")) cfg.tol = a.tol;
  if (given("--trials")) cfg.trials = a.trials;
  if (given("--seed")) cfg.seed = a.cfg.seed;
  if (given("--radial")) cfg.radial = true;
  if (given("--R")) cfg.R = a.R;
  if (given("--points")) cfg.points = a.points;
  if (given("--dim")) cfg.dim = a.dim;
  if (given("--out")) cfg.out = a.cfg.out;
  if (given("--csv")) cfg.csv = a.cfg.csv;
  cfg.validate();

  const auto outcome = ueq::suite::run_suite(cfg);
  print_reports(outcome.reports, std::cout);
  if (!cfg.out.empty()) {
    auto f = open_out(cfg.out);
    f << ueq::suite::build_report_document(cfg, outcome, utc_timestamp()).dump(2) << '\n';
  }
  if (!cfg.csv.empty()) {
    auto f = open_out(cfg.csv);
    ueq::suite::write_report_csv(outcome.reports, f);
  }
  std::size_t passed = 0;
  for (const auto& r : outcome.reports) passed += r.passed;
  std::cout << passed << "/" << outcome.reports.size() << " reports passed";
  if (!outcome.failing_ids.empty()) {
    std::cout << "; failing:";
    for (const auto& id : outcome.failing_ids) std::cout << ' ' << id;
  }
  std::cout << '\n';
  return outcome.exit_code;
}

ueq::grid::GridSpec make_grid(int n, int N, double L, double offset, const std::string& scheme) {
  ueq::grid::GridSpec g;
  g.dim = n;
  g.points = N;
  g.half_width = L;
  g.offset = offset;
  g.scheme = ueq::grid::parse_scheme(scheme);
  g.validate();
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifies uncertainty identities and their extremizers numerically."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ueq::suite::kToolName) + " " + ueq::suite::kToolVersion);

  // verify
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run an identity suite and report residuals");
  verify->footer(ueq::suite::describe_defaults() +
                 "\nExit status: 0 all reports passed, 1 some failed, 2 usage or input error.");
  std::string suite_names;
  for (const auto& s : ueq::suite::suite_names()) suite_names += (suite_names.empty() ? "" : "|") + s;
  verify->add_option("suite,--suite", va.suite, "Suite to run: " + suite_names);
  verify->add_option("--n", va.n, "Spatial dimension of R^n");
  verify->add_option("--N", va.N, "Grid points per axis");
  verify->add_option("--L", va.L, "Box half-width, domain [-L, L)^n");
  verify->add_option("--offset", va.offset, "Sample offset in cells (0.5 keeps the origin off the grid)");
  verify->add_option("--scheme", va.scheme, "Derivative scheme: spectral|cd2|cd4");
  verify->add_option("--tol", va.tol, "Relative tolerance for every report");
  verify->add_option("--trials", va.trials, "Random trials (seeds for the search suite)");
  verify->add_option("--seed", va.cfg.seed, "Base RNG seed")->default_val(1);
  verify->add_flag("--radial", "Use the radial quadrature path (hardy, coulomb)");
  verify->add_option("--R", va.R, "Radial quadrature cutoff");
  verify->add_option("--points", va.points, "Radial quadrature points");
  verify->add_option("--dim", va.dim, "Vector dimension for appendix and section2");
  verify->add_option("--out", va.cfg.out, "Write the JSON report here");
  verify->add_option("--csv", va.cfg.csv, "Write a CSV residual table here");
  verify->add_option("--config", va.config, "JSON config; command-line flags override it");

  // search
  std::string functional;
  int s_n = 1, s_N = 256, s_iters = 5000;
  double s_L = 12.0;
  std::uint64_t s_seed = 1;
  std::string s_trace, s_export;
  auto* search = app.add_subcommand("search", "Minimize the sum or product functional from a random start");
  search->add_option("functional", functional, "sum|product")->required()->check(CLI::IsMember({"sum", "product"}));
  search->add_option("--n", s_n, "Spatial dimension (1 or 2)")->capture_default_str();
  search->add_option("--N", s_N, "Grid points per axis")->capture_default_str();
  search->add_option("--L", s_L, "Box half-width")->capture_default_str();
  search->add_option("--seed", s_seed, "Seed of the random start")->capture_default_str();
  search->add_option("--max-iters", s_iters, "Iteration cap")->capture_default_str();
  search->add_option("--trace", s_trace, "Write iteration,value,step CSV here");
  search->add_option("--export", s_export, "Export the final state under this stem");

  // refine
  std::string r_id, r_Ns = "128,256,512", r_scheme = "spectral", r_csv;
  int r_n = 1;
  double r_L = 12.0;
  auto* refine = app.add_subcommand("refine", "Residual of one identity over a sequence of grids");
  refine->add_option("identity", r_id, "Identity id, e.g. xp.canonical")->required();
  refine->add_option("--N", r_Ns, "Comma-separated grid sizes")->capture_default_str();
  refine->add_option("--scheme", r_scheme, "Derivative scheme")->capture_default_str();
  refine->add_option("--n", r_n, "Spatial dimension")->capture_default_str();
  refine->add_option("--L", r_L, "Box half-width")->capture_default_str();
  refine->add_option("--csv", r_csv, "Write the table here instead of stdout");

  // state
  std::string st_kind, st_stem, st_enc = "binary", st_scheme = "spectral";
  int st_n = 1, st_N = 256;
  double st_L = 12.0, st_lambda = 1.0, st_norm = 1.0, st_theta = 0.0, st_sre = -1.0, st_sim = 0.0,
         st_offset = 0.5;
  auto* state = app.add_subcommand("state", "Sample a Gaussian family member and export it");
  state->add_option("kind", st_kind, "coherent|squeezed|squeezed_gen")->required();
  state->add_option("--stem", st_stem, "Output stem (writes <stem>.json and payload)")->required();
  state->add_option("--encoding", st_enc, "binary|csv")->check(CLI::IsMember({"binary", "csv"}))->capture_default_str();
  state->add_option("--n", st_n, "Spatial dimension")->capture_default_str();
  state->add_option("--N", st_N, "Grid points per axis")->capture_default_str();
  state->add_option("--L", st_L, "Box half-width")->capture_default_str();
  state->add_option("--offset", st_offset, "Sample offset in cells")->capture_default_str();
  state->add_option("--scheme", st_scheme, "Derivative scheme recorded with the grid")->capture_default_str();
  state->add_option("--lambda", st_lambda, "Squeezing ratio")->capture_default_str();
  state->add_option("--norm", st_norm, "Target norm")->capture_default_str();
  state->add_option("--theta", st_theta, "Global phase")->capture_default_str();
  state->add_option("--sgn-re", st_sre, "Re of the exponent factor (squeezed_gen)")->capture_default_str();
  state->add_option("--sgn-im", st_sim, "Im of the exponent factor (squeezed_gen)")->capture_default_str();

  // check-state
  std::string cs_header;
  double cs_tol = 1e-8;
  auto* check = app.add_subcommand("check-state", "Run the position/momentum and dilation identities on a stored field");
  check->add_option("header", cs_header, "JSON header written by 'state' or 'search --export'")->required();
  check->add_option("--tol", cs_tol, "Relative tolerance")->capture_default_str();

  // probe
  int p_n = 3, p_pts = 4000;
  std::vector<double> p_R{10.0, 100.0, 1000.0};
  auto* probe = app.add_subcommand("probe", "Ratio of the dilation bound on cut-off power profiles");
  probe->add_option("--n", p_n, "Dimension (>= 3)")->capture_default_str();
  probe->add_option("--R", p_R, "Outer radii")->delimiter(',')->capture_default_str();
  probe->add_option("--points-per-log", p_pts, "Quadrature nodes per unit of log r")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return run_verify(*verify, va);

    if (*search) {
      const auto g = make_grid(s_n, s_N, s_L, 0.5, "spectral");
      ueq::search::SearchOptions opts;
      opts.max_iters = s_iters;
      const auto res = functional == "sum" ? ueq::search::minimize_sum_functional(g, s_seed, opts)
                                           : ueq::search::minimize_product_functional(g, s_seed, opts);
      std::cout << std::setprecision(12) << "functional=" << functional << " value=" << res.value
                << " iterations=" << res.iterations << " converged=" << (res.converged ? "yes" : "no")
                << " fidelity=" << res.fidelity << " lambda_est=" << res.lambda_est << "\n"
                << res.message << '\n';
      if (!s_trace.empty()) {
        auto f = open_out(s_trace);
        ueq::search::write_trace_csv(res, f);
      }
      if (!s_export.empty()) ueq::io::export_field(res.state, s_export);
      return res.converged ? 0 : kExitFailed;
    }

    if (*refine) {
      std::vector<ueq::grid::GridSpec> grids;
      for (int N : parse_int_list(r_Ns)) grids.push_back(make_grid(r_n, N, r_L, 0.5, r_scheme));
      const auto res = ueq::suite::refinement_study(r_id, grids);
      if (r_csv.empty()) {
        ueq::suite::write_refinement_csv(res, std::cout);
      } else {
        auto f = open_out(r_csv);
        ueq::suite::write_refinement_csv(res, f);
      }
      return 0;
    }

    if (*state) {
      ueq::states::GaussianSpec spec;
      switch (ueq::states::parse_kind(st_kind)) {
        case ueq::states::GaussianKind::coherent:
          spec = ueq::states::GaussianSpec::coherent(st_n, st_norm, st_theta);
          break;
        case ueq::states::GaussianKind::squeezed:
          spec = ueq::states::GaussianSpec::squeezed(st_n, st_lambda, st_norm, st_theta);
          break;
        case ueq::states::GaussianKind::squeezed_gen:
          spec = ueq::states::GaussianSpec::squeezed_gen(st_n, st_lambda, {st_sre, st_sim}, st_norm, st_theta);
          break;
      }
      const auto g = make_grid(st_n, st_N, st_L, st_offset, st_scheme);
      const auto field = ueq::states::realize(spec, g);
      ueq::io::export_field(field, st_stem, st_enc == "csv" ? ueq::io::Encoding::csv : ueq::io::Encoding::binary);
      std::cout << ueq::states::to_json(spec).dump() << '\n';
      return 0;
    }

    if (*check) {
      const auto phi = ueq::io::import_field(cs_header);
      auto reps = ueq::identities::verify_position_momentum(phi, cs_tol);
      const auto dil = ueq::identities::verify_dilation_gap(phi, cs_tol);
      reps.insert(reps.end(), dil.begin(), dil.end());
      print_reports(reps, std::cout);
      return ueq::all_passed(reps) ? 0 : kExitFailed;
    }

    if (*probe) {
      const auto res = ueq::search::probe_nonattainment(p_n, p_R, p_pts);
      std::cout << "R,rho,gap,norm_sq\n" << std::setprecision(12);
      for (const auto& row : res.rows) std::cout << row.R << ',' << row.rho << ',' << row.gap << ',' << row.norm_sq << '\n';
      std::cout << "# fitted c=" << res.fitted_c << " strictly_decreasing=" << res.strictly_decreasing
                << " all_above_one=" << res.all_above_one << '\n';
      return res.strictly_decreasing && res.all_above_one ? 0 : kExitFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
