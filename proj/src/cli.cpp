#include "poro/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "poro/counterexample.hpp"
#include "poro/dimension.hpp"
#include "poro/porosity.hpp"
#include "poro/report.hpp"
#include "poro/theorem.hpp"

namespace poro {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<int> parse_digits(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ';')) out.push_back(std::stoi(t));
  return out;
}

double parse_base(const std::string& s) {
  if (s == "e") return std::exp(1.0);
  return std::stod(s);
}

std::map<std::string, std::vector<std::string>> read_kv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("unreadable spec file: " + path);
  std::map<std::string, std::vector<std::string>> kv;
  std::string line;
  while (std::getline(f, line)) {
    std::stringstream ss(line);
    std::string key;
    if (!(ss >> key) || key[0] == '#') continue;
    auto& vals = kv[key];
    std::string v;
    while (ss >> v) vals.push_back(v);
  }
  return kv;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content;
  else
    write_file(out, content);
}

const char* verdict_name(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::certified: return "certified";
    case CertificateVerdict::refuted_at_depth: return "refuted-at-depth";
    default: return "inconclusive";
  }
}

}  // namespace

CascadeMeasure load_measure(const std::string& spec, int max_depth) {
  if (std::filesystem::exists(spec)) {
    auto kv = read_kv_file(spec);
    auto get = [&](const std::string& k) -> const std::vector<std::string>& {
      auto it = kv.find(k);
      if (it == kv.end() || it->second.empty())
        throw std::invalid_argument("measure spec: missing field " + k);
      return it->second;
    };
    if (kv.count("max_depth")) max_depth = std::stoi(get("max_depth")[0]);
    const std::string kind = get("kind")[0];
    if (kind == "lebesgue") return CascadeMeasure::bernoulli(0.5, max_depth);
    if (kind == "bernoulli") return CascadeMeasure::bernoulli(std::stod(get("q")[0]), max_depth);
    if (kind == "counterexample")
      return CascadeMeasure::counterexample(
          kv.count("log_base") ? parse_base(get("log_base")[0]) : std::exp(1.0), max_depth);
    if (kind == "comb") {
      std::vector<int> keep;
      for (const auto& v : get("keep")) keep.push_back(std::stoi(v));
      return CascadeMeasure::comb(std::stoi(get("arity_log")[0]), keep, max_depth);
    }
    if (kind == "custom") {
      const int arity_log = std::stoi(get("arity_log")[0]);
      std::vector<std::vector<double>> rows;
      std::ifstream f(spec);
      std::string line;
      while (std::getline(f, line)) {
        std::stringstream ss(line);
        std::string key;
        ss >> key;
        if (key != "row") continue;
        std::vector<double> row;
        double x;
        while (ss >> x) row.push_back(x);
        rows.push_back(row);
      }
      return CascadeMeasure::custom(arity_log, rows, max_depth);
    }
    throw std::invalid_argument("measure spec: unknown kind " + kind);
  }
  const auto tok = split(spec, ':');
  if (tok[0] == "lebesgue") return CascadeMeasure::bernoulli(0.5, max_depth);
  if (tok[0] == "bernoulli" && tok.size() == 2)
    return CascadeMeasure::bernoulli(std::stod(tok[1]), max_depth);
  if (tok[0] == "counterexample")
    return CascadeMeasure::counterexample(tok.size() > 1 ? parse_base(tok[1]) : std::exp(1.0),
                                          max_depth);
  if (tok[0] == "comb" && tok.size() == 3)
    return CascadeMeasure::comb(std::stoi(tok[1]), parse_digits(tok[2]), max_depth);
  throw std::invalid_argument("measure: unknown spec " + spec);
}

DyadicSet load_set(const std::string& spec, int build_depth) {
  if (std::filesystem::exists(spec)) {
    auto kv = read_kv_file(spec);
    auto get = [&](const std::string& k) -> const std::vector<std::string>& {
      auto it = kv.find(k);
      if (it == kv.end() || it->second.empty())
        throw std::invalid_argument("set spec: missing field " + k);
      return it->second;
    };
    if (kv.count("build_depth")) build_depth = std::stoi(get("build_depth")[0]);
    const std::string kind = get("kind")[0];
    if (kind == "full") return DyadicSet::full(build_depth);
    if (kind == "even-digits-zero") return DyadicSet::even_digits_zero(build_depth);
    if (kind == "comb") {
      std::vector<int> keep;
      for (const auto& v : get("keep")) keep.push_back(std::stoi(v));
      return DyadicSet::comb(std::stoi(get("arity_log")[0]), keep, build_depth);
    }
    if (kind == "example")
      return DyadicSet::example(std::stoi(get("m")[0]), std::stoi(get("k")[0]),
                                std::stoi(get("n")[0]), std::stoi(get("l_max")[0]), build_depth);
    throw std::invalid_argument("set spec: unknown kind " + kind);
  }
  const auto tok = split(spec, ':');
  if (tok[0] == "full") return DyadicSet::full(build_depth);
  if (tok[0] == "even") return DyadicSet::even_digits_zero(build_depth);
  if (tok[0] == "comb" && tok.size() == 3)
    return DyadicSet::comb(std::stoi(tok[1]), parse_digits(tok[2]), build_depth);
  if (tok[0] == "example" && tok.size() == 5)
    return DyadicSet::example(std::stoi(tok[1]), std::stoi(tok[2]), std::stoi(tok[3]),
                              std::stoi(tok[4]), build_depth);
  throw std::invalid_argument("set: unknown spec " + spec);
}

namespace {

int cmd_construct(const std::string& measure, const std::string& set, int depth,
                  const std::string& out) {
  std::string csv;
  if (!measure.empty()) {
    const CascadeMeasure m = load_measure(measure, depth);
    if (m.arity_log() * depth > 22)
      throw std::invalid_argument("construct: depth too large for a full table");
    csv += csv_row({"cube_id", "mass", "log2_mass"});
    const auto masses = m.mass_of_cells(depth, 0, 1ull << (m.arity_log() * depth));
    for (std::uint64_t n = 0; n < masses.size(); ++n)
      csv += csv_row({CubeIndex::from_line_index(m.arity_log(), depth, n).id(),
                      format_double(masses[n]), format_double(std::log2(masses[n]))});
  } else {
    const DyadicSet s = load_set(set, depth);
    csv += csv_row({"depth", "cube_id"});
    const int d = std::min(depth, s.build_depth());
    for (std::uint64_t n : s.survivors_at(d))
      csv += csv_row({std::to_string(d), CubeIndex::from_line_index(1, d, n).id()});
  }
  emit(out, csv);
  return 0;
}

int cmd_porosity(const std::string& measure, const std::string& set, double x, int imax,
                 int offset, int k, double alpha, double eps, int rbits, int depth,
                 const std::string& out) {
  PorosityProfile p;
  if (!measure.empty()) {
    const CascadeMeasure m = load_measure(measure, k * imax + rbits + 2);
    p = porosity_profile(m, x, eps, imax, offset, k, rbits);
  } else {
    const DyadicSet s = load_set(set, depth > 0 ? depth : k * imax + rbits);
    p = porosity_profile(s, x, imax, offset, k, rbits);
  }
  std::string csv = csv_row({"point_id", "offset_t", "scale_j", "radius_log2",
                             "porosity_value", "flag_at_alpha", "slack"});
  for (std::size_t i = 0; i < p.scale_j.size(); ++i) {
    const int j = p.scale_j[i];
    const bool flag = p.value[i] >= alpha - p.slack[i];
    csv += csv_row({"0", std::to_string(offset), std::to_string(j),
                    std::to_string(offset - k * j), format_double(p.value[i]),
                    flag ? "1" : "0", format_double(p.slack[i])});
  }
  emit(out, csv);
  return 0;
}

int cmd_mean_porosity(const std::string& measure, double alpha, double eps, int samples,
                      int depth, std::uint64_t seed, int rbits, const std::string& out) {
  const CascadeMeasure m = load_measure(measure, depth + rbits + 2);
  std::vector<double> fractions(samples);
  for (int s = 0; s < samples; ++s) {
    const SamplePath sp = m.sample_point(seed, depth + rbits + 2, s);
    const PorosityProfile p = porosity_profile(m, sp.value, eps, depth, 0, 1, rbits);
    fractions[s] = mean_porosity_fraction(p, alpha, depth).fraction;
  }
  std::vector<double> sorted = fractions;
  std::sort(sorted.begin(), sorted.end());
  Report rep;
  rep.config = {{"subcommand", "mean-porosity"}, {"measure", measure}, {"alpha", alpha},
                {"epsilon", eps}, {"samples", samples}, {"depth", depth},
                {"seed", seed}, {"resolution_bits", rbits}};
  rep.results.push_back(
      {"median_fraction", "mean-porosity", sorted[samples / 2], 0.0, true});
  rep.results.push_back({"min_fraction", "mean-porosity", sorted.front(), 0.0, true});
  nlohmann::json j = rep.to_json();
  j["fractions"] = fractions;
  emit(out, j.dump(2) + "\n");
  return 0;
}

int cmd_dimension(const std::string& measure, int samples, int depth, std::uint64_t seed,
                  double quantile, int window, const std::string& out) {
  const CascadeMeasure m = load_measure(measure, depth);
  PackingOptions opts;
  opts.quantile = quantile;
  opts.window = window;
  const PackingEstimate est = packing_dimension_estimate(m, samples, depth, seed, opts);
  Report rep;
  rep.config = {{"subcommand", "dimension"}, {"measure", measure}, {"samples", samples},
                {"depth", depth}, {"seed", seed}, {"quantile", quantile},
                {"window", window}};
  rep.results.push_back({"packing_dimension_estimate", "dim-p", est.estimate, 0.0, true});
  emit(out, rep.to_json().dump(2) + "\n");
  return 0;
}

int cmd_certify(const std::string& measure, double D, double tau, int i_min, int depth,
                bool tree, const std::string& out, const std::string& witness_out) {
  const CascadeMeasure m = load_measure(measure, depth);
  if (tau <= 0.0) tau = D / 2.0;
  const CertificateResult res = tree ? dimension_certificate_tree(m, D, tau, i_min, depth)
                                     : dimension_certificate(m, D, tau, i_min, depth);
  std::cout << "verdict: " << verdict_name(res.verdict) << " (D=" << D << ", tau=" << tau
            << ", depth=" << depth << ", S*=" << res.best_cover_sum << ")\n";
  Report rep;
  rep.config = {{"subcommand", "certify"}, {"measure", measure}, {"D", D}, {"tau", tau},
                {"i_min", i_min}, {"depth", depth}, {"tree", tree}};
  rep.results.push_back({"best_cover_sum", "certificate", res.best_cover_sum, 1.0,
                         res.verdict != CertificateVerdict::inconclusive});
  rep.results.push_back({"full_cover_sum", "certificate", res.full_cover_sum, 1.0, true});
  nlohmann::json j = rep.to_json();
  j["verdict"] = verdict_name(res.verdict);
  j["witness_size"] = res.witness.size();
  emit(out, j.dump(2) + "\n");
  if (!witness_out.empty()) {
    std::string csv = csv_row({"cube_id"});
    for (const auto& q : res.witness) csv += csv_row({q.id()});
    write_file(witness_out, csv);
  }
  return 0;
}

int cmd_bound(int d, double p, const std::string& alpha_grid, double alpha, double c_override,
              const std::string& out) {
  std::vector<double> alphas;
  if (!alpha_grid.empty()) {
    const auto tok = split(alpha_grid, ':');
    if (tok.size() != 3) throw std::invalid_argument("bound: alpha-grid must be a:b:n");
    const double a = std::stod(tok[0]), b = std::stod(tok[1]);
    const int n = std::stoi(tok[2]);
    if (n < 1) throw std::invalid_argument("bound: grid size must be positive");
    for (int i = 0; i < n; ++i)
      alphas.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  } else {
    alphas.push_back(alpha);
  }
  std::string csv = csv_row({"alpha", "l", "k", "C", "N", "D0", "bound"});
  for (double a : alphas) {
    const DimBound b = dim_bound(d, p, a, c_override);
    csv += csv_row({format_double(a), std::to_string(b.tc.l), std::to_string(b.tc.k),
                    format_double(b.tc.C), std::to_string(b.tc.N), format_double(b.D0),
                    format_double(b.bound)});
  }
  emit(out, csv);
  return 0;
}

int cmd_claim1(const std::string& measure, int d, double alpha, double p, double D, double eps,
               int n, const std::string& base, int rbits, double c_override,
               const std::string& out) {
  const TheoremConstants tc = constants(d, alpha, c_override);
  if (D <= 0.0) D = dim_bound(d, p, alpha, c_override).D0 + 0.1;
  if (eps <= 0.0) eps = epsilon0(tc, D, std::max(n, 2)) / 2.0;
  CubeIndex q =
      base.empty() ? CubeIndex(tc.k, 1) : CubeIndex::parse(base);
  const int need_depth = tc.k * (q.depth() + n) + rbits + 4;
  const CascadeMeasure m = load_measure(measure, need_depth);
  const Claim1Result res = verify_claim1(m, tc, D, eps, q, n, rbits);
  Report rep;
  rep.config = {{"subcommand", "claim1"}, {"measure", measure}, {"alpha", alpha},
                {"k", tc.k}, {"D", D}, {"epsilon", eps}, {"n", n},
                {"base", q.id()}, {"resolution_bits", rbits}};
  rep.results.push_back({"claim1_lhs", "claim1", res.lhs, res.rhs, res.holds});
  nlohmann::json j = rep.to_json();
  j["porous_cubes"] = res.porous_cubes;
  j["classified_cubes"] = res.classified_cubes;
  j["ratio"] = res.ratio;
  emit(out, j.dump(2) + "\n");
  return res.holds ? 0 : 3;
}

int cmd_counterexample(int depth, double log_base, int l, int m, double p_prime,
                       const std::string& out) {
  const int b = l + m;
  const int imax = depth / b - 1;
  if (imax < 1) throw std::invalid_argument("counterexample: depth too small for l+m blocks");
  const DyadicSet E = DyadicSet::even_digits_zero(depth);
  const CascadeMeasure mu = CascadeMeasure::counterexample(log_base, depth);
  const EtaWeights eta(&E, l, m, log_base);

  Report rep;
  rep.config = {{"subcommand", "counterexample"}, {"depth", depth}, {"log_base", log_base},
                {"l", l}, {"m", m}, {"p_prime", p_prime}};

  // mass of the survivor set against the closed-form product over even levels
  double closed = 1.0;
  for (int j = 2; j <= depth; j += 2) closed *= 1.0 - 1.0 / (std::log(j + 2.0) / std::log(log_base));
  const double mass = measure_of_set_approx(mu, E, depth);
  rep.results.push_back({"set_mass", "mu(E)", mass, closed, std::abs(mass - closed) <= 1e-10});

  for (int i = 1; i <= imax; ++i) {
    const WeightedSum ws = weighted_sum_check(eta, mu, i);
    rep.results.push_back({"osa2_i" + std::to_string(i), "osa2", ws.sum, 1.0, ws.holds});
  }

  // eta products along survivor chains against the explicit c(i) bound
  const auto& leaves = E.survivors_at(imax * b);
  bool chains_ok = true;
  double worst = 0.0;
  const std::size_t step = std::max<std::size_t>(1, leaves.size() / 32);
  for (std::size_t s = 0; s < leaves.size(); s += step) {
    const double prod = eta.eta_product(imax, leaves[s]);
    const double cb = c_bound(imax, l, m, p_prime, log_base);
    worst = std::max(worst, prod / cb);
    if (prod > cb * (1.0 + 1e-12)) chains_ok = false;
  }
  rep.results.push_back({"eta_product_vs_c_bound", "osa1", worst, 1.0, chains_ok});

  emit(out, rep.to_json().dump(2) + "\n");
  return rep.all_pass() ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"porous sets, cascade measures and dimension bounds"};
  app.require_subcommand(1);

  std::string measure, set, out, witness_out, alpha_grid, base;
  double x = 0.0, alpha = 0.49, eps = 0.01, D = 0.0, tau = 0.0, quantile = 0.05;
  double p = 0.5, c_override = 0.0, log_base = std::exp(1.0), p_prime = 1.0;
  int depth = 20, imax = 10, offset = 0, k = 1, rbits = 8, samples = 100;
  int i_min = 1, window = 5, n = 2, d = 1, l = 2, m = 1;
  std::uint64_t seed = 1;
  bool tree = false;
  double eps_claim1 = 0.0;  // 0 selects the derived default

  auto* c_construct = app.add_subcommand("construct", "build an object and export a table");
  c_construct->add_option("--measure", measure);
  c_construct->add_option("--set", set);
  c_construct->add_option("--depth", depth);
  c_construct->add_option("--out", out);

  auto* c_por = app.add_subcommand("porosity", "porosity profile at a point");
  c_por->add_option("--measure", measure);
  c_por->add_option("--set", set);
  c_por->add_option("--x", x)->required();
  c_por->add_option("--imax", imax);
  c_por->add_option("--offset", offset);
  c_por->add_option("--k", k);
  c_por->add_option("--alpha", alpha);
  c_por->add_option("--epsilon", eps);
  c_por->add_option("--resolution-bits", rbits);
  c_por->add_option("--depth", depth);
  c_por->add_option("--out", out);

  auto* c_mean = app.add_subcommand("mean-porosity", "sampled mean porosity fractions");
  c_mean->add_option("--measure", measure)->required();
  c_mean->add_option("--alpha", alpha);
  c_mean->add_option("--epsilon", eps);
  c_mean->add_option("--samples", samples);
  c_mean->add_option("--depth", depth);
  c_mean->add_option("--seed", seed);
  c_mean->add_option("--resolution-bits", rbits);
  c_mean->add_option("--out", out);

  auto* c_dim = app.add_subcommand("dimension", "packing dimension estimate");
  c_dim->add_option("--measure", measure)->required();
  c_dim->add_option("--samples", samples);
  c_dim->add_option("--depth", depth);
  c_dim->add_option("--seed", seed);
  c_dim->add_option("--quantile", quantile);
  c_dim->add_option("--window", window);
  c_dim->add_option("--out", out);

  auto* c_cert = app.add_subcommand("certify", "dimension certificate");
  c_cert->add_option("--measure", measure)->required();
  c_cert->add_option("--D", D)->required();
  c_cert->add_option("--tau", tau);
  c_cert->add_option("--imin", i_min);
  c_cert->add_option("--depth", depth);
  c_cert->add_flag("--tree", tree);
  c_cert->add_option("--out", out);
  c_cert->add_option("--witness-out", witness_out);

  auto* c_bnd = app.add_subcommand("bound", "constants and dimension bound table");
  c_bnd->add_option("--d", d);
  c_bnd->add_option("--p", p);
  c_bnd->add_option("--alpha", alpha);
  c_bnd->add_option("--alpha-grid", alpha_grid);
  c_bnd->add_option("--c", c_override);
  c_bnd->add_option("--out", out);

  auto* c_cl1 = app.add_subcommand("claim1", "finite telescoped product inequality");
  c_cl1->add_option("--measure", measure)->required();
  c_cl1->add_option("--d", d);
  c_cl1->add_option("--alpha", alpha);
  c_cl1->add_option("--p", p);
  c_cl1->add_option("--D", D);
  c_cl1->add_option("--epsilon", eps_claim1);
  c_cl1->add_option("--n", n);
  c_cl1->add_option("--base", base);
  c_cl1->add_option("--resolution-bits", rbits);
  c_cl1->add_option("--c", c_override);
  c_cl1->add_option("--out", out);

  auto* c_ctr = app.add_subcommand("counterexample", "checks on the block-weight measure");
  auto* c_verify = c_ctr->add_subcommand("verify", "run the full check suite");
  c_verify->add_option("--depth", depth);
  c_verify->add_option("--log-base", log_base);
  c_verify->add_option("--l", l);
  c_verify->add_option("--m", m);
  c_verify->add_option("--pprime", p_prime);
  c_verify->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_construct->parsed()) return cmd_construct(measure, set, depth, out);
    if (c_por->parsed())
      return cmd_porosity(measure, set, x, imax, offset, k, alpha, eps, rbits, depth, out);
    if (c_mean->parsed())
      return cmd_mean_porosity(measure, alpha, eps, samples, depth, seed, rbits, out);
    if (c_dim->parsed())
      return cmd_dimension(measure, samples, depth, seed, quantile, window, out);
    if (c_cert->parsed())
      return cmd_certify(measure, D, tau, i_min, depth, tree, out, witness_out);
    if (c_bnd->parsed()) return cmd_bound(d, p, alpha_grid, alpha, c_override, out);
    if (c_cl1->parsed())
      return cmd_claim1(measure, d, alpha, p, D, eps_claim1, n, base, rbits, c_override, out);
    if (c_ctr->parsed()) {
      if (!c_verify->parsed()) throw std::invalid_argument("counterexample: expected `verify`");
      return cmd_counterexample(depth, log_base, l, m, p_prime, out);
    }
    throw std::invalid_argument("no subcommand given");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace poro
