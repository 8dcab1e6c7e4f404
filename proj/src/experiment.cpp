#include "tauberlab/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "tauberlab/csv.hpp"
#include "tauberlab/laplace.hpp"
#include "tauberlab/oscillatory.hpp"
#include "tauberlab/pnt.hpp"
#include "tauberlab/pvariation.hpp"
#include "tauberlab/version.hpp"
#include "tauberlab/zeta.hpp"

namespace tauberlab {

namespace {

using nlohmann::json;

}  // namespace

BoundedSignal make_semigroup_signal(const ElementTable& table,
                                    const DensityFit& fit) {
  auto data = std::make_shared<PsiData>(psi_data_from_table(table));
  BoundedSignal s;
  s.id = "semigroup";
  s.t_max = data->t_end;
  s.eval = [data](double t) -> cplx {
    return {psi_data_eval(*data, t) * std::exp(-t) - 1.0, 0.0};
  };
  s.exact_integral = [data](double T) {
    return psi_excess_integral(*data, 0.0, T);
  };

  // psi(e^t) e^{-t} is decreasing between jumps, so per-cell extremes of f
  // sit at the cell ends; f(0) = -1 before the first prime.
  double sup = 1.0;
  for (std::size_t i = 0; i + 1 <= data->t.size(); ++i) {
    const double hi_t = i + 1 < data->t.size() ? data->t[i + 1] : data->t_end;
    sup = std::max(sup, std::abs(data->v[i] * std::exp(-data->t[i]) - 1.0));
    sup = std::max(sup, std::abs(data->v[i] * std::exp(-hi_t) - 1.0));
  }
  s.sup_bound = sup;

  if (!fit.zero_density) {
    const ElementTable* tp = &table;
    const double A = fit.A, E = fit.envelope_abs;
    s.g_tilde = [tp, A, E](double t) -> cplx {
      const cplx s1{1.0, t};
      const CorrectedValue z0 = zeta_corrected(*tp, s1, A, E, 0);
      const CorrectedValue z1 = zeta_corrected(*tp, s1, A, E, 1);
      return -(z1.value / z0.value) / cplx{1.0, t} - 1.0 / cplx{0.0, t};
    };
    // g(0) = H(1) - 1 with H(s) = -zeta'/zeta(s) - 1/(s-1), extrapolated
    // linearly from s = 1 + 2^{-10}, 1 + 2^{-9}
    auto H_at = [&](double h) {
      const cplx sh{1.0 + h, 0.0};
      const CorrectedValue z0 = zeta_corrected(table, sh, A, E, 0);
      const CorrectedValue z1 = zeta_corrected(table, sh, A, E, 1);
      return -(z1.value / z0.value).real() - 1.0 / h;
    };
    const double H1 = 2.0 * H_at(std::pow(2.0, -10)) - H_at(std::pow(2.0, -9));
    s.has_g0 = true;
    s.g0 = {H1 - 1.0, 0.0};
  }
  return s;
}

namespace {

std::vector<double> random_nodes(Rng& rng, int max_interior) {
  std::vector<double> nodes{0.0, 1.0};
  const int want = rng.uniform_int(0, max_interior);
  for (int i = 0; i < want; ++i) nodes.push_back(rng.uniform(0.0, 1.0));
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> out;
  for (double x : nodes)
    if (out.empty() || x - out.back() >= 1e-4) out.push_back(x);
  if (out.back() != 1.0) out.back() = 1.0;
  return out;
}

}  // namespace

PiecewiseFunction random_step_function(Rng& rng, int max_pieces, double vmax) {
  if (max_pieces < 1)
    throw std::invalid_argument("random_step_function: max_pieces must be >= 1");
  const std::vector<double> nodes = random_nodes(rng, max_pieces - 1);
  std::vector<cplx> values;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    values.emplace_back(rng.uniform(-vmax, vmax), 0.0);
  return PiecewiseFunction::make_step(nodes, values);
}

PiecewiseFunction random_linear_function(Rng& rng, int max_nodes, double vmax) {
  if (max_nodes < 2)
    throw std::invalid_argument("random_linear_function: max_nodes must be >= 2");
  const std::vector<double> nodes = random_nodes(rng, max_nodes - 2);
  std::vector<cplx> values;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    values.emplace_back(rng.uniform(-vmax, vmax), 0.0);
  return PiecewiseFunction::make_linear(nodes, values);
}

namespace {

json parse_config(const RunOptions& opt) {
  if (opt.config_text.empty()) return json::object();
  json j = json::parse(opt.config_text);  // parse_error propagates as schema error
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  return j;
}

struct TableConfig {
  GeneratorSpec gen;
  double q_max = 0.0;
  double x_max = 0.0;
};

TableConfig table_config(const json& j, std::uint64_t default_seed,
                         double default_x_max) {
  json sg = j.contains("semigroup") ? j.at("semigroup") : j;
  if (!sg.is_object())
    throw std::invalid_argument("semigroup config must be a JSON object");
  for (const char* key : {"x_max", "q_max"})
    if (j.contains(key) && !sg.contains(key)) sg[key] = j.at(key);

  TableConfig c;
  const std::string g = sg.value("generator", std::string("classical"));
  if (g == "classical")
    c.gen.kind = GeneratorKind::classical;
  else if (g == "gaussian")
    c.gen.kind = GeneratorKind::gaussian;
  else if (g == "beurling")
    c.gen.kind = GeneratorKind::beurling;
  else if (g == "explicit")
    c.gen.kind = GeneratorKind::explicit_list;
  else
    throw std::invalid_argument("unknown generator '" + g + "'");
  c.gen.A = sg.value("A", 1.0);
  c.gen.gamma = sg.value("gamma", 2.5);
  c.gen.seed = sg.contains("seed") ? sg.at("seed").get<std::uint64_t>()
                                   : default_seed;
  if (sg.contains("norms"))
    c.gen.explicit_norms = sg.at("norms").get<std::vector<double>>();
  else if (c.gen.kind == GeneratorKind::explicit_list)
    throw std::invalid_argument("explicit generator needs a 'norms' array");
  c.x_max = sg.value("x_max", default_x_max);
  c.q_max = sg.value("q_max", c.x_max);
  return c;
}

ElementTable build_from_config(const TableConfig& c) {
  return build_elements(build_primes(c.gen, c.q_max), c.x_max);
}

std::optional<double> density_hint(const TableConfig& c) {
  if (c.gen.kind == GeneratorKind::classical) return 1.0;  // exact density
  return std::nullopt;
}

json base_summary(const std::string& command, const RunOptions& opt) {
  json s;
  s["version"] = TAUBERLAB_VERSION;
  s["command"] = command;
  s["seed"] = opt.seed;
  return s;
}

std::string write_summary(const json& s, const std::string& dir,
                          const std::string& command) {
  const std::string path = dir + "/" + command + "_summary.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << s.dump(2) << "\n";
  return path;
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::runtime_error(std::string(what) + " is not finite");
  return v;
}

RunOutcome cmd_pvar(const json& cfg, const RunOptions& opt) {
  const int count = cfg.value("functions", 200);
  const int max_nodes = cfg.value("max_nodes", 10);
  const std::vector<double> ps =
      cfg.value("p", std::vector<double>{1.0, 1.5, 2.0, 3.0});
  if (count < 1 || max_nodes < 2 || max_nodes > 20 || ps.empty())
    throw std::invalid_argument("pvar: functions >= 1, max_nodes in [2, 20]");

  const std::string csv_path = opt.out_dir + "/pvar.csv";
  CsvWriter csv(csv_path);
  csv.raw_line("f_id,p,value,witness_size,bruteforce_diff");
  int violations = 0;
  double max_diff = 0.0;
  for (int i = 0; i < count; ++i) {
    Rng rng = stream(opt.seed, "pvar.fn." + std::to_string(i));
    const PiecewiseFunction f = random_linear_function(rng, max_nodes, 1.0);
    for (double p : ps) {
      const VariationResult dp = p_variation(f, p);
      double diff = 0.0;
      if (f.nodes.size() <= 12) {
        diff = std::abs(dp.value - p_variation_bruteforce(f, p));
        max_diff = std::max(max_diff, diff);
        if (diff > 1e-12) ++violations;
      }
      csv.row(std::to_string(i), p, dp.value, dp.witness.size(), diff);
    }
  }

  json s = base_summary("pvar", opt);
  s["functions"] = count;
  s["violations"] = violations;
  s["max_bruteforce_diff"] = max_diff;
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, "pvar")};
  out.exit_code = violations ? 1 : 0;
  out.message = violations ? "pvar: dp/bruteforce mismatch" : "pvar: ok";
  return out;
}

RunOutcome cmd_rl_check(const json& cfg, const RunOptions& opt) {
  const int count = cfg.value("functions", 200);
  const int max_pieces = cfg.value("max_pieces", 50);
  const std::vector<double> ps = cfg.value("p", std::vector<double>{1.0, 2.0, 3.0});
  std::vector<double> xs;
  if (cfg.contains("x")) {
    xs = cfg.at("x").get<std::vector<double>>();
  } else {
    for (double x = 0.5; x <= 16384.0; x *= 2.0) xs.push_back(x);
  }
  if (count < 1 || max_pieces < 1 || ps.empty() || xs.empty())
    throw std::invalid_argument("rl-check: needs functions, pieces, p, x");

  std::vector<PiecewiseFunction> fns;
  fns.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = stream(opt.seed, "rl.fn." + std::to_string(i));
    fns.push_back(random_step_function(rng, max_pieces, 1.0));
  }

  std::vector<BoundReport> all;
  int violations = 0;
  double max_ratio = 0.0;
  for (double p : ps) {
    const std::vector<BoundReport> reports = verify_rl(fns, xs, p);
    for (const BoundReport& r : reports) {
      if (r.violation) ++violations;
      if (std::isfinite(r.ratio)) max_ratio = std::max(max_ratio, r.ratio);
    }
    all.insert(all.end(), reports.begin(), reports.end());
  }
  const std::string csv_path = opt.out_dir + "/rl-check.csv";
  write_bound_reports_csv(all, csv_path);

  json s = base_summary("rl-check", opt);
  s["functions"] = count;
  s["checks"] = all.size();
  s["violations"] = violations;
  s["max_ratio"] = max_ratio;
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, "rl-check")};
  out.exit_code = violations ? 1 : 0;
  out.message = violations ? "rl-check: inequality violated" : "rl-check: ok";
  return out;
}

RunOutcome cmd_tauber(const json& cfg, const RunOptions& opt) {
  const std::string sig_id = cfg.value("signal", std::string("exp_linear"));
  const double p = cfg.value("p", 1.0);
  const double k = cfg.value("k", 0.25);
  const std::string rule = cfg.value("R_rule", std::string("sqrt"));
  const std::vector<double> T_grid =
      cfg.value("T_grid", std::vector<double>{10.0, 100.0, 1000.0});

  std::function<double(double)> R_of_T;
  if (rule == "sqrt") {
    R_of_T = [](double T) { return std::sqrt(T); };
  } else if (rule.rfind("power:", 0) == 0) {
    const double e = std::stod(rule.substr(6));
    R_of_T = [e](double T) { return std::pow(T, e); };
  } else if (rule.rfind("fixed:", 0) == 0) {
    const double R = std::stod(rule.substr(6));
    R_of_T = [R](double) { return R; };
  } else {
    throw std::invalid_argument("R_rule must be sqrt, power:<e>, or fixed:<R>");
  }

  const BoundedSignal f = signal_by_id(sig_id);
  const TauberStudyResult study = tauber_convergence_study(f, p, k, R_of_T, T_grid);

  const std::string csv_path = opt.out_dir + "/tauber.csv";
  CsvWriter csv(csv_path);
  csv.raw_line("T,lhs,rhs,ratio,fitted_constant");
  for (const TauberReport& r : study.reports)
    csv.row(r.T, r.lhs, r.rhs, r.ratio, study.fitted_constant);

  json s = base_summary("tauber", opt);
  s["signal"] = sig_id;
  s["p"] = p;
  s["k"] = k;
  s["R_rule"] = rule;
  s["fitted_constant"] = finite_or_throw(study.fitted_constant, "fitted constant");
  s["lhs_decreasing"] = study.lhs_decreasing;
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, "tauber")};
  out.message = "tauber: ok";
  return out;
}

RunOutcome cmd_semigroup_build(const json& cfg, const RunOptions& opt) {
  const TableConfig c = table_config(cfg, opt.seed, 1e4);
  const ElementTable table = build_from_config(c);

  const std::string csv_path = opt.out_dir + "/semigroup-build.csv";
  CsvWriter csv(csv_path);
  csv.raw_line("norm,omega,bigomega,lambda,mu");
  for (std::size_t i = 0; i < table.size(); ++i)
    csv.row(table.norm[i], static_cast<int>(table.omega[i]),
            static_cast<int>(table.bigomega[i]), table.lambda[i],
            static_cast<int>(table.mu[i]));

  json s = base_summary("semigroup-build", opt);
  s["records"] = table.size();
  s["primes"] = table.primes.norms.size();
  s["N_x_max"] = count_N(table, table.x_max);
  s["pi_x_max"] = count_pi(table, table.x_max);
  s["M_x_max"] = count_M(table, table.x_max);
  s["psi_x_max"] = count_psi(table, table.x_max);
  if (table.x_max >= 1e3) {
    const DensityFit fit = fit_density(table, density_hint(c));
    s["A_fit"] = fit.A;
    s["gamma_fit"] = fit.ill_conditioned ? json("unidentifiable") : json(fit.gamma);
    s["envelope_abs"] = fit.envelope_abs;
    s["zero_density"] = fit.zero_density;
    s["ill_conditioned"] = fit.ill_conditioned;
  }
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, "semigroup-build")};
  out.message = "semigroup-build: ok";
  return out;
}

RunOutcome cmd_zeta_scan(const json& cfg, const RunOptions& opt) {
  const TableConfig c = table_config(cfg, opt.seed, 1e5);
  const int level = cfg.value("level", 0);
  std::vector<LemmaId> ids;
  if (cfg.contains("lemmas"))
    for (const auto& name : cfg.at("lemmas"))
      ids.push_back(lemma_from_name(name.get<std::string>()));
  else
    ids = all_lemmas();

  const ElementTable table = build_from_config(c);
  const DensityFit fit = fit_density(table, density_hint(c));

  const std::string csv_path = opt.out_dir + "/zeta-scan.csv";
  CsvWriter csv(csv_path);
  csv.raw_line("lemma_id,a,b,lhs,rhs,ratio,tail_flag");
  json per_lemma = json::object();
  bool all_finite = true;
  for (LemmaId id : ids) {
    const double gamma = cfg.contains("gamma_override")
                             ? cfg.at("gamma_override").get<double>()
                             : default_gamma(id);
    const LemmaDiagnostic d =
        lemma_diagnostic(table, fit, id, gamma, default_grid(id, level));
    for (const LemmaPoint& pt : d.points)
      csv.row(lemma_name(id), pt.a, pt.b, pt.lhs, pt.rhs,
              pt.rhs > 0.0 ? pt.lhs / pt.rhs : 0.0,
              static_cast<int>(pt.tail_flagged));
    json entry;
    entry["fitted_constant"] = d.fitted_constant;
    entry["gamma_used"] = d.gamma_used;
    entry["applicable"] = d.applicable;
    entry["any_tail_flagged"] = d.any_tail_flagged;
    if (id == LemmaId::H_near_1) entry["blowup"] = d.blowup;
    if (!d.note.empty()) entry["note"] = d.note;
    per_lemma[lemma_name(id)] = entry;
    if (d.applicable && !std::isfinite(d.fitted_constant)) all_finite = false;
  }

  json s = base_summary("zeta-scan", opt);
  s["x_max"] = c.x_max;
  s["level"] = level;
  s["lemmas"] = per_lemma;
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, "zeta-scan")};
  out.exit_code = all_finite ? 0 : 1;
  out.message = all_finite ? "zeta-scan: ok" : "zeta-scan: non-finite constant";
  return out;
}

RunOutcome profile_command(const std::string& command, const json& cfg,
                           const RunOptions& opt) {
  const TableConfig c = table_config(cfg, opt.seed, 1e4);
  const ElementTable table = build_from_config(c);

  double gamma = cfg.value("gamma", 0.0);
  if (gamma == 0.0) {
    const DensityFit fit = fit_density(table, density_hint(c));
    // An envelope-bounded residual satisfies the density axiom for every
    // exponent; gamma = 4 puts delta_pnt at its 1/198 cap and keeps
    // delta_mertens at desk scale.
    gamma = fit.ill_conditioned ? 4.0 : fit.gamma;
  }
  const bool is_pnt = command == "pnt";
  const ErrorProfile prof =
      is_pnt ? pnt_profile(table, gamma) : mertens_profile(table, gamma);

  const std::string csv_path = opt.out_dir + "/" + command + ".csv";
  CsvWriter csv(csv_path);
  csv.raw_line("x,count,main_term,raw_error,normalized");
  for (std::size_t i = 0; i < prof.x_grid.size(); ++i) {
    const double x = prof.x_grid[i];
    const double main = is_pnt ? x / std::log(x) : 0.0;
    const long long cnt = is_pnt ? count_pi(table, x) : count_M(table, x);
    csv.row(x, cnt, main, prof.raw_error[i], prof.normalized[i]);
    finite_or_throw(prof.normalized[i], "normalized error");
  }

  json s = base_summary(command, opt);
  s["gamma_used"] = gamma;
  s["delta_used"] = prof.delta_used;
  s["fitted_exponent"] = prof.fit.exponent;
  s["r_squared"] = prof.fit.r_squared;
  s["applicable"] = prof.applicable;
  s["delta_flagged"] = prof.delta_flagged;
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, command)};
  out.message = command + ": ok";
  return out;
}

RunOutcome cmd_identities(const json& cfg, const RunOptions& opt) {
  const TableConfig c = table_config(cfg, opt.seed, 1e4);
  const ElementTable table = build_from_config(c);
  const ConvolutionCheck lam =
      convolution_identity_check(table, ConvolutionKind::lambda_log);
  const ConvolutionCheck mu =
      convolution_identity_check(table, ConvolutionKind::mu_unit);

  const std::string csv_path = opt.out_dir + "/identities.csv";
  CsvWriter csv(csv_path);
  csv.raw_line("identity,max_deviation,worst_record,records_checked");
  csv.row("lambda_log", lam.max_deviation, lam.worst_record, lam.records_checked);
  csv.row("mu_unit", mu.max_deviation, mu.worst_record, mu.records_checked);

  const double worst = std::max(lam.max_deviation, mu.max_deviation);
  json s = base_summary("identities", opt);
  s["records"] = table.size();
  s["max_deviation_lambda"] = lam.max_deviation;
  s["max_deviation_mu"] = mu.max_deviation;
  s["tolerance"] = opt.tolerance;
  RunOutcome out;
  out.files = {csv_path, write_summary(s, opt.out_dir, "identities")};
  out.exit_code = worst > opt.tolerance ? 1 : 0;
  out.message = out.exit_code ? "identities: deviation above tolerance"
                              : "identities: ok";
  return out;
}

}  // namespace

RunOutcome run_command(const std::string& command, const RunOptions& opt) {
  RunOutcome out;
  try {
    std::filesystem::create_directories(opt.out_dir);
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
    const json cfg = parse_config(opt);
    if (command == "pvar") return cmd_pvar(cfg, opt);
    if (command == "rl-check") return cmd_rl_check(cfg, opt);
    if (command == "tauber") return cmd_tauber(cfg, opt);
    if (command == "semigroup-build") return cmd_semigroup_build(cfg, opt);
    if (command == "zeta-scan") return cmd_zeta_scan(cfg, opt);
    if (command == "pnt" || command == "mertens")
      return profile_command(command, cfg, opt);
    if (command == "identities") return cmd_identities(cfg, opt);
    throw std::invalid_argument("unknown command '" + command + "'");
  } catch (const json::exception& e) {
    out.exit_code = 2;
    out.message = std::string("config error: ") + e.what();
  } catch (const std::invalid_argument& e) {
    out.exit_code = 2;
    out.message = std::string("usage error: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.message = std::string("failed: ") + e.what();
  }
  return out;
}

}  // namespace tauberlab
