#include "ueq/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ueq/cauchy_schwarz.hpp"
#include "ueq/complex_space.hpp"
#include "ueq/extremizer_search.hpp"
#include "ueq/form_algebra.hpp"
#include "ueq/gaussian_states.hpp"
#include "ueq/hermite.hpp"
#include "ueq/identity_suite.hpp"
#include "ueq/operators.hpp"
#include "ueq/radial.hpp"

namespace ueq::suite {

namespace {

using grid::GridSpec;
using grid::StateField;
using Item = std::function<std::vector<EqualityReport>()>;

// Per-suite defaults.
constexpr int kAppendixTrials = 1000;
constexpr int kSection2Trials = 200;
constexpr int kGridTrials = 50;
constexpr int kDilationTrials = 20;
constexpr int kRadialTrials = 20;
constexpr int kSearchSeeds = 5;
constexpr double kAlgebraicTol = 1e-12;
constexpr double kMomentumTol = 1e-8;
constexpr double kDilationTol = 1e-7;
constexpr double kHardyRadialTol = 1e-8;
constexpr double kCoulombRadialTol = 1e-6;
constexpr double kSingularGridTol = 1e-3;
constexpr double kSearchTol = 1e-4;
constexpr double kSaturationTol = 1e-6;
constexpr double kRadialR = 40.0;
constexpr int kRadialPoints = 20000;
constexpr int kMinDim = 2;
constexpr int kMaxDim = 64;

void tag(std::vector<EqualityReport>& reps, const std::string& key, const std::string& value) {
  for (auto& r : reps) r.context[key] = value;
}

void add_all(ReportAggregator& agg, const std::vector<EqualityReport>& reps) {
  for (const auto& r : reps) agg.add(r);
}

GridSpec grid_for(const SuiteConfig& c, int n, int N, double L) {
  GridSpec g;
  g.dim = c.n.value_or(n);
  g.points = c.N.value_or(N);
  g.half_width = c.L.value_or(L);
  g.offset = c.offset.value_or(0.5);
  g.scheme = c.scheme ? grid::parse_scheme(*c.scheme) : grid::Scheme::spectral_periodic;
  g.validate();
  return g;
}

std::size_t pick_dim(const SuiteConfig& c, std::mt19937_64& rng) {
  if (c.dim) return static_cast<std::size_t>(*c.dim);
  std::uniform_int_distribution<int> d(kMinDim, kMaxDim);
  return static_cast<std::size_t>(d(rng));
}

std::vector<cx> closure_factors(std::mt19937_64& rng) {
  std::vector<cx> f{2.0, -3.0, cx(0.0, 1.0), cx(0.0, -1.0)};
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < 8; ++k) f.push_back(std::polar(1.0, angle(rng)));
  return f;
}

// Parts expected to fire for v = lambda u: real lambda -> 1, 3, 5; imaginary -> 2, 4, 5; otherwise 5.
std::array<bool, 5> expected_parts(cx lambda) {
  const bool real = lambda.imag() == 0.0;
  const bool imag = lambda.real() == 0.0;
  return {real, imag, real, imag, true};
}

EqualityReport closure_report(const std::string& id, const ExtremizerParts& parts, double tol) {
  double worst = 0.0;
  for (const auto& p : parts.parts) {
    if (!p.holds) continue;
    for (double r : p.clause_residuals) worst = std::max(worst, r);
  }
  return make_equality(id, worst, 0.0, kClauseSlack * tol);
}

EqualityReport mismatch_report(const std::string& id, int mismatches) {
  EqualityReport r = make_equality(id, static_cast<double>(mismatches), 0.0, 0.0);
  return r;
}

std::vector<EqualityReport> appendix_suite(const SuiteConfig& c) {
  const double tol = c.tol.value_or(kAlgebraicTol);
  const int trials = c.trials.value_or(kAppendixTrials);
  std::mt19937_64 rng(c.seed);
  ReportAggregator agg;
  for (int t = 0; t < trials; ++t) {
    const std::size_t d = pick_dim(c, rng);
    const auto u = space::random_vector(d, rng);
    const auto v = space::random_vector(d, rng);
    const auto thetas = default_angles(rng);
    add_all(agg, cs_equality_residuals(u, v, thetas, tol));
    agg.add(make_inequality("cs.inequality", std::abs(space::inner(u, v)), norm(u) * norm(v), tol));
  }
  const std::size_t d = pick_dim(c, rng);
  const auto u = space::random_vector(d, rng);
  for (cx lambda : closure_factors(rng)) {
    try {
      const auto parts = extremizer_class(u, lambda * u, tol);
      agg.add(closure_report("cs.closure", parts, tol));
      const auto want = expected_parts(lambda);
      int bad = 0;
      for (int k = 0; k < 5; ++k) bad += parts.part(k + 1) != want[static_cast<std::size_t>(k)];
      agg.add(mismatch_report("cs.closure.expected", bad));
    } catch (const ConsistencyError& e) {
      EqualityReport r = make_equality("cs.closure", 1.0, 0.0, kClauseSlack * tol);
      r.passed = false;
      r.context["error"] = e.what();
      agg.add(r);
    }
  }
  auto out = agg.take();
  tag(out, "space", c.dim ? "C^" + std::to_string(*c.dim) : "C^d, d uniform in [2, 64]");
  return out;
}

std::vector<EqualityReport> section2_suite(const SuiteConfig& c) {
  const double tol = c.tol.value_or(kAlgebraicTol);
  const int trials = c.trials.value_or(kSection2Trials);
  std::mt19937_64 rng(c.seed + 1);
  ReportAggregator agg;
  using Sample = forms::PairSample<space::ComplexVector>;
  for (int t = 0; t < trials; ++t) {
    const std::size_t d = pick_dim(c, rng);
    const auto s = Sample::make(1.0, space::random_vector(d, rng), space::random_vector(d, rng));
    const auto thetas = default_angles(rng);
    add_all(agg, forms::form_identities(s, tol));
    const auto [ab, ba] = forms::decomposition_check(s, tol);
    agg.add(ab);
    agg.add(ba);
    add_all(agg, forms::sr_equalities(s, thetas, tol));
    const auto chain = forms::sr_inequality_chain(s);
    agg.add(make_inequality("sr.chain.schrodinger", chain.schrodinger_bound, chain.product, tol));
    agg.add(make_inequality("sr.chain.robertson", chain.robertson_bound, chain.schrodinger_bound, tol));
  }
  const std::size_t d = pick_dim(c, rng);
  const auto a = space::random_vector(d, rng);
  for (cx lambda : closure_factors(rng)) {
    try {
      const auto parts = forms::extremizer_parts(Sample::make(1.0, a, lambda * a), tol);
      agg.add(closure_report("forms.closure", parts, tol));
      const auto want = expected_parts(lambda);
      int bad = 0;
      for (int k = 0; k < 5; ++k) bad += parts.part(k + 1) != want[static_cast<std::size_t>(k)];
      agg.add(mismatch_report("forms.closure.expected", bad));
    } catch (const ConsistencyError& e) {
      EqualityReport r = make_equality("forms.closure", 1.0, 0.0, kClauseSlack * tol);
      r.passed = false;
      r.context["error"] = e.what();
      agg.add(r);
    }
  }
  auto out = agg.take();
  tag(out, "space", c.dim ? "C^" + std::to_string(*c.dim) : "C^d, d uniform in [2, 64]");
  return out;
}

struct NamedState {
  std::string name;
  StateField field;
  std::optional<states::GaussianSpec> spec;
};

std::vector<NamedState> gaussian_family(const GridSpec& g) {
  std::vector<NamedState> out;
  const auto coh = states::GaussianSpec::coherent(g.dim);
  const auto sq = states::GaussianSpec::squeezed(g.dim, 4.0);
  const auto gen = states::GaussianSpec::squeezed_gen(g.dim, 2.0, std::polar(1.0, 0.75 * std::numbers::pi));
  out.push_back({"coherent", states::realize(coh, g), coh});
  out.push_back({"squeezed", states::realize(sq, g), sq});
  out.push_back({"squeezed_gen", states::realize(gen, g), gen});
  return out;
}

std::vector<EqualityReport> momentum_position_suite(const SuiteConfig& c) {
  const GridSpec g = grid_for(c, 1, 256, 12.0);
  const double tol = c.tol.value_or(kMomentumTol);
  const int trials = c.trials.value_or(kGridTrials);
  ReportAggregator agg;
  const double n = g.dim;
  for (const auto& s : gaussian_family(g)) {
    auto reps = identities::verify_position_momentum(s.field, tol);
    tag(reps, "state", s.name);
    add_all(agg, reps);

    const auto m = states::exact_moments(*s.spec);
    const auto x = grid::position(s.field);
    const auto dx = grid::gradient(s.field);
    agg.add(make_equality("gauss.moments.x", inner(x, x).real(), m.x_norm_sq, kSaturationTol));
    agg.add(make_equality("gauss.moments.grad", inner(dx, dx).real(), m.grad_norm_sq, kSaturationTol));
    agg.add(make_equality("gauss.moments.inner", inner(x, dx), m.inner_x_grad, kSaturationTol));

    const auto sat = identities::classify_position_momentum(s.field, kSaturationTol);
    const bool coherent = s.name == "coherent";
    const bool squeezed = coherent || s.name == "squeezed";
    const int bad = (sat.sum != coherent) + (sat.product != squeezed) + (sat.modulus != true);
    agg.add(mismatch_report("xp.saturation.expected", bad));
    if (coherent) {
      const double phi_sq = inner(s.field, s.field).real();
      agg.add(make_equality("xp.coherent.kennard", norm(x) * norm(dx), n / 2.0 * phi_sq, kSaturationTol));
      agg.add(make_equality("xp.coherent.alignment", norm(x + dx) / std::sqrt(phi_sq), 0.0, kSaturationTol));
    }
  }
  std::mt19937_64 rng(c.seed + 2);
  for (int t = 0; t < trials; ++t) {
    const StateField phi = states::random_smooth_state(g, rng);
    auto reps = identities::verify_position_momentum(phi, tol);
    tag(reps, "state", "random_hermite");
    add_all(agg, reps);
  }
  return agg.take();
}

std::vector<EqualityReport> dilation_suite(const SuiteConfig& c) {
  const GridSpec g = grid_for(c, 1, 256, 12.0);
  const double tol = c.tol.value_or(kDilationTol);
  const int trials = c.trials.value_or(kDilationTrials);
  ReportAggregator agg;
  const StateField coh = states::realize(states::GaussianSpec::coherent(g.dim), g);
  add_all(agg, identities::verify_dilation_gap(coh, tol));
  add_all(agg, identities::verify_dilation_hamiltonian(coh, tol));
  agg.add(grid::generator_consistency({grid::OperatorId::dilation_gen, g, 0}, coh, 1e-3));
  std::mt19937_64 rng(c.seed + 3);
  for (int t = 0; t < trials; ++t) {
    const StateField phi = states::random_smooth_state(g, rng);
    add_all(agg, identities::verify_dilation_gap(phi, tol));
    add_all(agg, identities::verify_dilation_hamiltonian(phi, tol));
  }
  return agg.take();
}

std::vector<radial::RadialProfile> radial_profiles(const SuiteConfig& c, std::uint64_t salt) {
  std::vector<radial::RadialProfile> p{radial::gaussian(), radial::odd_gaussian()};
  std::mt19937_64 rng(c.seed + salt);
  for (int t = 0; t < c.trials.value_or(kRadialTrials); ++t) p.push_back(states::random_radial_profile(rng));
  return p;
}

std::shared_ptr<const radial::RadialQuadrature> radial_quadrature(const SuiteConfig& c, int n) {
  return radial::RadialQuadrature::midpoint(n, c.R.value_or(kRadialR), c.points.value_or(kRadialPoints));
}

std::vector<EqualityReport> hardy_radial_suite(const SuiteConfig& c) {
  const int n = c.n.value_or(3);
  const double tol = c.tol.value_or(kHardyRadialTol);
  const auto q = radial_quadrature(c, n);
  ReportAggregator agg;
  for (const auto& p : radial_profiles(c, 4)) {
    const radial::RadialState s(p, q);
    add_all(agg, identities::verify_hardy(s, tol));
  }
  return agg.take();
}

// Radial test states sampled on a 3-D grid.
std::vector<NamedState> grid_radial_states(const GridSpec& g) {
  auto radial_state = [&](const std::string& name, const radial::RadialProfile& p) {
    return NamedState{name, StateField::sample(g, [&](std::span<const double> x) {
                        double r = 0.0;
                        for (double v : x) r += v * v;
                        return p.value(std::sqrt(r));
                      }), std::nullopt};
  };
  return {radial_state("gaussian", radial::gaussian()),
          radial_state("gaussian_polynomial", radial::gaussian_polynomial({1.0, cx(0.5, 0.25)}, 1.6))};
}

std::vector<EqualityReport> hardy_grid_suite(const SuiteConfig& c) {
  const GridSpec g = grid_for(c, 3, 96, 5.0);
  const double tol = c.tol.value_or(kSingularGridTol);
  ReportAggregator agg;
  for (const auto& s : grid_radial_states(g)) {
    auto reps = identities::verify_hardy(s.field, tol);
    tag(reps, "state", s.name);
    add_all(agg, reps);
  }
  return agg.take();
}

std::vector<EqualityReport> coulomb_radial_suite(const SuiteConfig& c) {
  const double tol = c.tol.value_or(kCoulombRadialTol);
  std::vector<int> dims = c.n ? std::vector<int>{*c.n} : std::vector<int>{3, 5};
  std::vector<EqualityReport> out;
  for (int n : dims) {
    const auto q = radial_quadrature(c, n);
    ReportAggregator agg;
    for (const auto& p : radial_profiles(c, 5)) {
      const radial::RadialState s(p, q);
      const auto rc = identities::verify_radial_coulomb(s, tol);
      add_all(agg, rc);
      const auto h = identities::verify_hardy(s, kHardyRadialTol);
      const auto& a = find_report(rc, "rc.hardy");
      const auto& b = find_report(h, "hardy.equality");
      // The Coulomb-form Hardy line is four times the Hardy equality on the same state.
      agg.add(make_equality("rc.matches_hardy.lhs", a.lhs / 4.0, b.lhs, kHardyRadialTol));
      agg.add(make_equality("rc.matches_hardy.rhs", a.rhs / 4.0, b.rhs, kHardyRadialTol));
    }
    auto reps = agg.take();
    out.insert(out.end(), reps.begin(), reps.end());
  }
  return out;
}

std::vector<EqualityReport> coulomb_grid_suite(const SuiteConfig& c) {
  const GridSpec g = grid_for(c, 3, 96, 5.0);
  const double tol = c.tol.value_or(kSingularGridTol);
  ReportAggregator agg;
  for (const auto& s : grid_radial_states(g)) {
    auto reps = identities::verify_radial_coulomb(s.field, tol);
    tag(reps, "state", s.name);
    add_all(agg, reps);
  }
  return agg.take();
}

std::vector<EqualityReport> search_item(const SuiteConfig& c, bool product, std::uint64_t seed) {
  const GridSpec g = grid_for(c, 1, 256, 12.0);
  const double tol = c.tol.value_or(kSearchTol);
  const double n = g.dim;
  std::vector<EqualityReport> out;
  const std::string prefix = product ? "search.product" : "search.sum";
  const auto res = product ? search::minimize_product_functional(g, seed) : search::minimize_sum_functional(g, seed);
  out.push_back(make_inequality(prefix + ".value", res.value, n, tol));
  out.push_back(make_inequality(prefix + ".floor", n, res.value, tol));
  out.push_back(make_inequality(prefix + ".fidelity", 0.999, res.fidelity, 0.0));
  if (!product) {
    // ||x phi + grad phi||^2 / ||phi||^2 = J - n, measured directly.
    const auto w = grid::position(res.state) + grid::gradient(res.state);
    const double phi_sq = inner(res.state, res.state).real();
    out.push_back(make_inequality("search.sum.alignment", inner(w, w).real() / phi_sq, n * tol, 0.0));
  }
  for (auto& r : out) {
    r.context["seed"] = std::to_string(seed);
    r.context["search.message"] = res.message;
    r.metrics["iterations"] = res.iterations;
    r.metrics["lambda_est"] = res.lambda_est;
    r.metrics["value"] = res.value;
    r.metrics["fidelity"] = res.fidelity;
  }
  return out;
}

std::vector<EqualityReport> probe_item(const SuiteConfig& c) {
  const int n = c.n && *c.n >= 3 ? *c.n : 3;
  const double Rs[] = {10.0, 100.0, 1000.0};
  const auto probe = search::probe_nonattainment(n, Rs);
  std::vector<EqualityReport> out;
  ReportAggregator agg;
  for (std::size_t i = 0; i < probe.rows.size(); ++i) {
    EqualityReport above = make_strict_inequality("search.probe.above_one", 1.0, probe.rows[i].rho, 0.0);
    above.metrics["R"] = probe.rows[i].R;
    agg.add(above);
    if (i > 0) {
      EqualityReport dec =
          make_strict_inequality("search.probe.decreasing", probe.rows[i].rho, probe.rows[i - 1].rho, 0.0);
      dec.metrics["R"] = probe.rows[i].R;
      agg.add(dec);
    }
  }
  out = agg.take();
  for (auto& r : out) {
    r.metrics["fitted_c"] = probe.fitted_c;
    for (const auto& row : probe.rows) {
      std::ostringstream key;
      key << "rho(R=" << row.R << ")";
      r.metrics[key.str()] = row.rho;
    }
  }
  try {
    search::probe_uncut_profile(n);
    out.push_back(mismatch_report("search.probe.uncut_rejected", 1));
  } catch (const radial::NotNormalizable& e) {
    EqualityReport r = mismatch_report("search.probe.uncut_rejected", 0);
    r.context["rejection"] = e.what();
    out.push_back(r);
  }
  return out;
}

std::vector<Item> items_for(const std::string& suite, const SuiteConfig& c) {
  std::vector<Item> items;
  auto named = [&](const std::string& name, Item f) {
    items.push_back([name, f] {
      auto reps = f();
      tag(reps, "suite", name);
      return reps;
    });
  };
  const bool all = suite == "all";
  if (all || suite == "appendix") named("appendix", [c] { return appendix_suite(c); });
  if (all || suite == "section2") named("section2", [c] { return section2_suite(c); });
  if (all || suite == "momentum-position") named("momentum-position", [c] { return momentum_position_suite(c); });
  if (all || suite == "dilation") named("dilation", [c] { return dilation_suite(c); });
  if (all || suite == "hardy") {
    if (all || c.radial) named("hardy", [c] { return hardy_radial_suite(c); });
    if (all || !c.radial) named("hardy", [c] { return hardy_grid_suite(c); });
  }
  if (all || suite == "coulomb") {
    if (all || c.radial) named("coulomb", [c] { return coulomb_radial_suite(c); });
    if (all || !c.radial) named("coulomb", [c] { return coulomb_grid_suite(c); });
  }
  if (all || suite == "search") {
    const int seeds = c.trials.value_or(kSearchSeeds);
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(s);
      named("search", [c, seed] { return search_item(c, false, seed); });
      named("search", [c, seed] { return search_item(c, true, seed); });
    }
    named("search", [c] { return probe_item(c); });
  }
  return items;
}

std::string context_key(const EqualityReport& r) {
  std::string k;
  for (const auto& [a, b] : r.context) k += a + "=" + b + ";";
  return k;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"appendix", "section2", "momentum-position", "dilation",
                                              "hardy",    "coulomb",  "search",            "all"};
  return names;
}

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  if (n && *n < 1) throw std::invalid_argument("--n must be >= 1");
  if (N && *N < 2) throw std::invalid_argument("--N must be >= 2");
  if (L && !(*L > 0.0)) throw std::invalid_argument("--L must be positive");
  if (offset && !(*offset >= 0.0 && *offset < 1.0)) throw std::invalid_argument("--offset must lie in [0, 1)");
  if (scheme) grid::parse_scheme(*scheme);
  if (tol && !(*tol >= 0.0)) throw std::invalid_argument("--tol must be >= 0");
  if (trials && *trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (R && !(*R > 0.0)) throw std::invalid_argument("--R must be positive");
  if (points && *points < 10) throw std::invalid_argument("--points must be >= 10");
  if (dim && *dim < 1) throw std::invalid_argument("--dim must be >= 1");
}

SuiteConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::vector<std::string> keys{"suite", "n",     "N",      "L",      "offset", "scheme", "tol", "trials",
                                             "seed",  "radial", "R",     "points", "dim",    "out",    "csv"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw std::invalid_argument("unknown config key '" + k + "'");
  }
  SuiteConfig c;
  try {
    c.suite = j.value("suite", c.suite);
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("N")) c.N = j.at("N").get<int>();
    if (j.contains("L")) c.L = j.at("L").get<double>();
    if (j.contains("offset")) c.offset = j.at("offset").get<double>();
    if (j.contains("scheme")) c.scheme = j.at("scheme").get<std::string>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    c.seed = j.value("seed", c.seed);
    c.radial = j.value("radial", c.radial);
    if (j.contains("R")) c.R = j.at("R").get<double>();
    if (j.contains("points")) c.points = j.at("points").get<int>();
    if (j.contains("dim")) c.dim = j.at("dim").get<int>();
    c.out = j.value("out", c.out);
    c.csv = j.value("csv", c.csv);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json config_to_json(const SuiteConfig& c) {
  nlohmann::json j;
  j["suite"] = c.suite;
  if (c.n) j["n"] = *c.n;
  if (c.N) j["N"] = *c.N;
  if (c.L) j["L"] = *c.L;
  if (c.offset) j["offset"] = *c.offset;
  if (c.scheme) j["scheme"] = *c.scheme;
  if (c.tol) j["tol"] = *c.tol;
  if (c.trials) j["trials"] = *c.trials;
  j["seed"] = c.seed;
  j["radial"] = c.radial;
  if (c.R) j["R"] = *c.R;
  if (c.points) j["points"] = *c.points;
  if (c.dim) j["dim"] = *c.dim;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.csv.empty()) j["csv"] = c.csv;
  return j;
}

std::string describe_defaults() {
  std::ostringstream os;
  os << "Per-suite defaults (used when the flag is not given):\n"
     << "  appendix           trials=" << kAppendixTrials << " dim=uniform[2,64] tol=" << kAlgebraicTol << "\n"
     << "  section2           trials=" << kSection2Trials << " dim=uniform[2,64] tol=" << kAlgebraicTol << "\n"
     << "  momentum-position  n=1 N=256 L=12 offset=0.5 scheme=spectral trials=" << kGridTrials
     << " tol=" << kMomentumTol << "\n"
     << "  dilation           n=1 N=256 L=12 offset=0.5 scheme=spectral trials=" << kDilationTrials
     << " tol=" << kDilationTol << "\n"
     << "  hardy --radial     n=3 R=" << kRadialR << " points=" << kRadialPoints << " trials=" << kRadialTrials
     << " tol=" << kHardyRadialTol << "\n"
     << "  hardy (grid)       n=3 N=96 L=5 offset=0.5 tol=" << kSingularGridTol << "\n"
     << "  coulomb --radial   n=3 and 5 R=" << kRadialR << " points=" << kRadialPoints << " trials=" << kRadialTrials
     << " tol=" << kCoulombRadialTol << "\n"
     << "  coulomb (grid)     n=3 N=96 L=5 offset=0.5 tol=" << kSingularGridTol << "\n"
     << "  search             n=1 N=256 L=12 trials(seeds)=" << kSearchSeeds << " tol=" << kSearchTol
     << "; probe n=3, R in {10, 100, 1000}\n"
     << "  all                every suite above, hardy and coulomb in both modes\n";
  return os.str();
}

SuiteOutcome run_suite(const SuiteConfig& config) {
  config.validate();
  std::vector<std::future<std::vector<EqualityReport>>> futures;
  for (auto& item : items_for(config.suite, config)) futures.push_back(std::async(std::launch::async, item));
  SuiteOutcome out;
  for (auto& f : futures) {
    auto reps = f.get();
    out.reports.insert(out.reports.end(), std::make_move_iterator(reps.begin()), std::make_move_iterator(reps.end()));
  }
  std::stable_sort(out.reports.begin(), out.reports.end(), [](const EqualityReport& a, const EqualityReport& b) {
    if (a.identity_id != b.identity_id) return a.identity_id < b.identity_id;
    return context_key(a) < context_key(b);
  });
  for (const auto& r : out.reports) {
    if (!r.passed && (out.failing_ids.empty() || out.failing_ids.back() != r.identity_id)) {
      out.failing_ids.push_back(r.identity_id);
    }
  }
  out.exit_code = out.failing_ids.empty() ? 0 : 1;
  return out;
}

nlohmann::json report_to_json(const EqualityReport& r) {
  nlohmann::json j;
  j["identity_id"] = r.identity_id;
  j["lhs"] = {r.lhs.real(), r.lhs.imag()};
  j["rhs"] = {r.rhs.real(), r.rhs.imag()};
  j["abs_residual"] = r.abs_residual;
  j["rel_residual"] = r.rel_residual;
  j["tol"] = r.tol;
  j["relation"] = to_string(r.relation);
  j["passed"] = r.passed;
  j["context"] = r.context;
  j["metrics"] = r.metrics;
  return j;
}

nlohmann::json build_report_document(const SuiteConfig& config, const SuiteOutcome& outcome,
                                     const std::string& timestamp) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : outcome.reports) reports.push_back(report_to_json(r));
  return {{"schema", 1},
          {"header", {{"tool", kToolName}, {"version", kToolVersion}, {"timestamp", timestamp}, {"config", config_to_json(config)}}},
          {"reports", reports}};
}

void write_report_csv(const std::vector<EqualityReport>& reports, std::ostream& os) {
  os << "identity_id,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tol,passed\n";
  os.precision(17);
  for (const auto& r : reports) {
    os << r.identity_id << ',' << r.lhs.real() << ',' << r.lhs.imag() << ',' << r.rhs.real() << ',' << r.rhs.imag()
       << ',' << r.abs_residual << ',' << r.rel_residual << ',' << r.tol << ',' << (r.passed ? 1 : 0) << '\n';
  }
}

RefinementResult refinement_study(const std::string& identity_id, const std::vector<GridSpec>& grids) {
  if (grids.size() < 3) throw std::invalid_argument("refinement_study: needs at least 3 grids");
  for (const auto& g : grids) {
    g.validate();
    if (g.scheme != grids.front().scheme) throw std::invalid_argument("refinement_study: mixed derivative schemes");
    if (g.dim != grids.front().dim) throw std::invalid_argument("refinement_study: mixed dimensions");
  }
  using Verifier = std::vector<EqualityReport> (*)(const StateField&, double);
  Verifier verify = nullptr;
  if (identity_id.rfind("xp.", 0) == 0) {
    verify = &identities::verify_position_momentum;
  } else if (identity_id.rfind("dh.", 0) == 0) {
    verify = &identities::verify_dilation_hamiltonian;
  } else if (identity_id.rfind("dil.", 0) == 0) {
    verify = [](const StateField& f, double t) { return identities::verify_dilation_gap(f, t); };
  } else {
    throw std::invalid_argument("refinement_study: '" + identity_id + "' is not a grid-state identity");
  }
  RefinementResult res;
  res.identity_id = identity_id;
  res.scheme = grids.front().scheme;
  auto sorted = grids;
  std::sort(sorted.begin(), sorted.end(), [](const GridSpec& a, const GridSpec& b) { return a.spacing() > b.spacing(); });
  for (const auto& g : sorted) {
    const StateField phi = states::realize(states::GaussianSpec::coherent(g.dim), g);
    const auto reps = verify(phi, 0.0);
    res.rows.push_back({g.points, g.spacing(), find_report(reps, identity_id).rel_residual});
  }
  const bool positive = std::all_of(res.rows.begin(), res.rows.end(), [](const RefinementRow& r) { return r.residual > 0.0; });
  if (positive) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(res.rows.size());
    for (const auto& r : res.rows) {
      const double x = std::log(r.spacing);
      const double y = std::log(r.residual);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    res.fitted_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return res;
}

void write_refinement_csv(const RefinementResult& r, std::ostream& os) {
  os.precision(17);
  os << "# identity=" << r.identity_id << " scheme=" << grid::to_string(r.scheme);
  if (r.fitted_order) {
    os << " fitted_order=" << *r.fitted_order;
  } else {
    os << " fitted_order=n/a";
  }
  os << "\nN,h,residual\n";
  for (const auto& row : r.rows) os << row.points << ',' << row.spacing << ',' << row.residual << '\n';
}

}  // namespace ueq::suite
