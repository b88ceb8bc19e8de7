// gqv: batch front-end for the quadratic-variation laboratory.
//
// Subcommands: cumulants, rates, simulate, asclt, hypothesis. Each takes a
// model spec (--model + parameters), writes CSV or JSON to --out (stdout by
// default), and prints a one-line summary per (model, n).
//
// Exit codes: 0 ok, 1 runtime error, 2 check failure, 64 usage.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gqv.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string model;
  double hurst = 0.0;
  double hp = 0.0;
  double k = 0.0;
  std::string grid;
  std::int64_t n = 0;
  std::string n_list;
  std::int64_t reps = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  int threads = 0;
  std::string use = "m_stat";
  bool with_log = false;
  std::string phi = "indicator";
  double chp = 0.0;  // 0 = fit the constant from the psi scan
  std::string raw;   // simulate: optional raw-samples binary
};

struct RuntimeError {
  std::string message;
};

struct CheckFailed {};

[[noreturn]] void die(const std::string& msg) { throw RuntimeError{msg}; }

void check_status(gqv_status st, const std::string& what) {
  if (st != GQV_OK) die(what + ": " + gqv_strerror(st));
}

using ModelPtr = std::unique_ptr<gqv_model, decltype(&gqv_model_free)>;

ModelPtr make_model(const Options& o) {
  gqv_model* m = nullptr;
  gqv_status st;
  if (o.model == "fbm") {
    st = gqv_model_create_fbm(o.hurst, &m);
  } else if (o.model == "subfbm") {
    st = gqv_model_create_subfbm(o.hurst, &m);
  } else if (o.model == "bifbm") {
    st = gqv_model_create_bifbm(o.hp, o.k, &m);
  } else if (o.model == "gsfbm") {
    st = gqv_model_create_gsfbm(o.hp, o.k, &m);
  } else if (o.model == "tabulated") {
    if (o.grid.empty()) die("--grid is required for tabulated models");
    if (!(o.hurst > 0.0)) die("--hurst is required for tabulated models");
    st = gqv_model_create_tabulated(o.grid.c_str(), o.hurst, &m);
  } else {
    die("unknown model '" + o.model + "'");
  }
  check_status(st, "model " + o.model);
  return ModelPtr(m, gqv_model_free);
}

std::string params_string(const Options& o) {
  std::ostringstream s;
  if (o.model == "fbm" || o.model == "subfbm") {
    s << "H=" << o.hurst;
  } else if (o.model == "bifbm" || o.model == "gsfbm") {
    s << "Hp=" << o.hp << ";K=" << o.k;
  } else {
    s << "grid=" << o.grid << ";H=" << o.hurst;
  }
  return s.str();
}

// "a:b:x2" doubling sequences, or comma lists, or a single size.
std::vector<std::int64_t> parse_n_list(const Options& o) {
  std::vector<std::int64_t> ns;
  if (o.n_list.empty()) {
    if (o.n <= 0) die("one of --n or --n-list is required");
    ns.push_back(o.n);
    return ns;
  }
  const std::string& s = o.n_list;
  if (s.find(':') != std::string::npos) {
    std::int64_t a = 0, b = 0;
    long long factor = 0;
    if (std::sscanf(s.c_str(), "%" SCNd64 ":%" SCNd64 ":x%lld", &a, &b, &factor) != 3 ||
        a <= 0 || b < a || factor < 2)
      die("bad --n-list '" + s + "' (expected a:b:x2)");
    for (std::int64_t n = a; n <= b; n *= factor) ns.push_back(n);
    return ns;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const std::int64_t n = std::stoll(tok);
    if (n <= 0) die("bad size in --n-list");
    ns.push_back(n);
  }
  if (ns.empty()) die("empty --n-list");
  return ns;
}

void write_text(const Options& o, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) die("cannot open " + o.out);
  f << body;
  if (!f) die("write failed: " + o.out);
}

std::string render(const Options& o, const std::string& csv, const json& j) {
  return o.format == "json" ? j.dump(2) + "\n" : csv;
}

// ------------------------------------------------------------------
// cumulants
// ------------------------------------------------------------------

int run_cumulants(const Options& o) {
  const ModelPtr model = make_model(o);
  const std::string params = params_string(o);
  std::ostringstream csv;
  csv << "model,params,n,sigma_n_sq,kappa3_f,kappa4_f,kappa3_v,kappa4_v,m_stat\n";
  json rows = json::array();
  for (std::int64_t n : parse_n_list(o)) {
    gqv_cumulant_report r;
    check_status(gqv_cumulants_compute(model.get(), n, &r), "cumulants");
    csv.precision(17);
    csv << o.model << "," << params << "," << n << "," << r.sigma_n_sq << ","
        << r.kappa3_f << "," << r.kappa4_f << "," << r.kappa3_v << ","
        << r.kappa4_v << "," << r.m_stat << "\n";
    rows.push_back({{"n", n},
                    {"sigma_n_sq", r.sigma_n_sq},
                    {"kappa3_f", r.kappa3_f},
                    {"kappa4_f", r.kappa4_f},
                    {"kappa3_v", r.kappa3_v},
                    {"kappa4_v", r.kappa4_v},
                    {"m_stat", r.m_stat}});
    std::fprintf(stderr, "cumulants %s %s n=%" PRId64 " m_stat=%.6g\n",
                 o.model.c_str(), params.c_str(), n, r.m_stat);
  }
  write_text(o, render(o, csv.str(),
                       json{{"model", o.model}, {"params", params}, {"rows", rows}}));
  return kExitOk;
}

// ------------------------------------------------------------------
// rates
// ------------------------------------------------------------------

int run_rates(const Options& o) {
  const ModelPtr model = make_model(o);
  const std::string params = params_string(o);
  const std::vector<std::int64_t> ns = parse_n_list(o);

  gqv_rate_use use;
  if (o.use == "kappa3") use = GQV_USE_KAPPA3;
  else if (o.use == "kappa4") use = GQV_USE_KAPPA4;
  else if (o.use == "m_stat") use = GQV_USE_M_STAT;
  else if (o.use == "ks") use = GQV_USE_KS;
  else die("unknown --use '" + o.use + "'");

  gqv_regime_report rep;
  std::vector<double> points(ns.size());
  check_status(gqv_regime_check(model.get(), ns.data(), ns.size(), use,
                                o.with_log ? 1 : 0, o.reps, o.seed, &rep,
                                points.data()),
               "rates");

  json pts = json::array();
  for (size_t i = 0; i < ns.size(); ++i)
    pts.push_back({{"n", ns[i]}, {"y", points[i]}});
  json j{{"model", o.model},
         {"params", params},
         {"use", o.use},
         {"points", pts},
         {"fitted",
          {{"a", rep.fit.exponent},
           {"b", rep.fit.log_power},
           {"r2", rep.fit.r_squared}}},
         {"theoretical",
          {{"a", rep.theoretical_exponent}, {"b", rep.theoretical_log_power}}},
         {"two_sided", rep.two_sided != 0},
         {"proxy", rep.proxy != 0},
         {"verdict", rep.pass ? "PASS" : "FAIL"}};
  if (std::isfinite(rep.sharper_exponent))
    j["sharper_exponent"] = rep.sharper_exponent;

  std::ostringstream csv;
  csv.precision(17);
  csv << "model,params,use,fitted_a,fitted_b,r2,theoretical_a,theoretical_b,"
         "verdict\n";
  csv << o.model << "," << params << "," << o.use << "," << rep.fit.exponent
      << "," << rep.fit.log_power << "," << rep.fit.r_squared << ","
      << rep.theoretical_exponent << "," << rep.theoretical_log_power << ","
      << (rep.pass ? "PASS" : "FAIL") << "\n";

  write_text(o, render(o, csv.str(), j));
  std::fprintf(stderr, "rates %s %s use=%s fitted=%.4f theoretical=%.4f %s\n",
               o.model.c_str(), params.c_str(), o.use.c_str(), rep.fit.exponent,
               rep.theoretical_exponent, rep.pass ? "PASS" : "FAIL");
  if (!rep.pass) throw CheckFailed{};
  return kExitOk;
}

// ------------------------------------------------------------------
// simulate
// ------------------------------------------------------------------

void write_raw_samples(const std::string& path, std::int64_t n, std::int64_t reps,
                       std::uint64_t seed, const std::vector<double>& samples) {
  std::ofstream f(path, std::ios::binary);
  if (!f) die("cannot open " + path);
  f.write("GQVS", 4);
  const std::uint64_t hdr[3] = {static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(reps), seed};
  f.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  f.write(reinterpret_cast<const char*>(samples.data()),
          static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!f) die("write failed: " + path);
}

int run_simulate(const Options& o) {
  const ModelPtr model = make_model(o);
  const std::string params = params_string(o);
  std::ostringstream csv;
  csv.precision(17);
  csv << "model,params,n,reps,seed,ks,emp_mean,emp_var\n";
  json rows = json::array();
  const std::vector<std::int64_t> ns = parse_n_list(o);
  for (std::int64_t n : ns) {
    std::vector<double> samples(static_cast<size_t>(o.reps));
    gqv_mc_result r;
    check_status(gqv_mc_run(model.get(), n, o.reps, o.seed, o.threads,
                            samples.data(), &r),
                 "simulate");
    csv << o.model << "," << params << "," << n << "," << r.reps << ","
        << r.seed << "," << r.ks_distance << "," << r.empirical_mean << ","
        << r.empirical_var << "\n";
    rows.push_back({{"n", n},
                    {"reps", r.reps},
                    {"seed", r.seed},
                    {"ks", r.ks_distance},
                    {"emp_mean", r.empirical_mean},
                    {"emp_var", r.empirical_var}});
    if (!o.raw.empty()) {
      std::string path = o.raw;
      if (ns.size() > 1) path += "." + std::to_string(n);
      write_raw_samples(path, n, o.reps, o.seed, samples);
    }
    std::fprintf(stderr,
                 "simulate %s %s n=%" PRId64 " reps=%" PRId64 " ks=%.5f\n",
                 o.model.c_str(), params.c_str(), n, o.reps, r.ks_distance);
  }
  write_text(o, render(o, csv.str(),
                       json{{"model", o.model}, {"params", params}, {"rows", rows}}));
  return kExitOk;
}

// ------------------------------------------------------------------
// asclt
// ------------------------------------------------------------------

int run_asclt(const Options& o) {
  const ModelPtr model = make_model(o);
  const std::string params = params_string(o);
  gqv_test_fn fn;
  if (o.phi == "one") fn = GQV_FN_ONE;
  else if (o.phi == "indicator") fn = GQV_FN_INDICATOR_LEQ0;
  else if (o.phi == "square") fn = GQV_FN_SQUARE;
  else die("unknown --phi '" + o.phi + "'");

  std::ostringstream csv;
  csv.precision(17);
  csv << "model,params,n,phi,seed,log_average,target\n";
  json rows = json::array();
  for (std::int64_t n : parse_n_list(o)) {
    gqv_asclt_result r;
    check_status(gqv_asclt_average(model.get(), n, fn, o.seed, &r), "asclt");
    csv << o.model << "," << params << "," << n << "," << o.phi << "," << o.seed
        << "," << r.log_average << "," << r.target << "\n";
    rows.push_back(
        {{"n", n}, {"phi", o.phi}, {"seed", o.seed},
         {"log_average", r.log_average}, {"target", r.target}});
    std::fprintf(stderr,
                 "asclt %s %s n=%" PRId64 " phi=%s avg=%.5f target=%.5f\n",
                 o.model.c_str(), params.c_str(), n, o.phi.c_str(),
                 r.log_average, r.target);
  }
  write_text(o, render(o, csv.str(),
                       json{{"model", o.model}, {"params", params}, {"rows", rows}}));
  return kExitOk;
}

// ------------------------------------------------------------------
// hypothesis
// ------------------------------------------------------------------

int run_hypothesis(const Options& o) {
  const ModelPtr model = make_model(o);
  const std::string params = params_string(o);
  const std::int64_t n = o.n > 0 ? o.n : 512;

  // two passes: fit the constant first, then check against it (or
  // against a user-supplied --chp)
  gqv_psi_report fit_scan;
  check_status(
      gqv_psi_scan(model.get(), 1.0, nullptr, 0, 1e-4, nullptr, &fit_scan),
      "psi scan");
  const double chp =
      o.chp > 0.0 ? o.chp : std::max(fit_scan.fitted_constant * 1.05, 1e-12);

  gqv_psi_report psi;
  check_status(gqv_psi_scan(model.get(), chp, nullptr, 0, 1e-4, nullptr, &psi),
               "psi scan");

  gqv_inc* inc_raw = nullptr;
  check_status(gqv_inc_create(model.get(), n, 0, &inc_raw), "increments");
  std::unique_ptr<gqv_inc, decltype(&gqv_inc_free)> inc(inc_raw, gqv_inc_free);
  gqv_gamma_bound_report gamma;
  check_status(gqv_gamma_bound_check(inc.get(), chp, &gamma), "gamma bound");

  gqv_tail_bound_report tail;
  check_status(
      gqv_increment_tail_bound_check(gqv_model_hurst(model.get()), n, &tail),
      "tail bound");

  const bool pass = psi.pass != 0 && gamma.pass != 0 && tail.pass != 0;
  json checks = json::array();
  checks.push_back({{"check", "psi_bound"},
                    {"fitted_constant", psi.fitted_constant},
                    {"max_ratio", psi.max_ratio},
                    {"pass", psi.pass != 0}});
  checks.push_back({{"check", "gamma_bound"},
                    {"n", n},
                    {"max_ratio", gamma.max_ratio},
                    {"argmax", {gamma.argmax_i, gamma.argmax_j}},
                    {"pass", gamma.pass != 0}});
  checks.push_back({{"check", "increment_tail_bound"},
                    {"n", n},
                    {"max_ratio", tail.max_ratio},
                    {"informational", tail.informational != 0},
                    {"pass", tail.pass != 0}});
  json j{{"model", o.model},
         {"params", params},
         {"c_h_prime", chp},
         {"checks", checks},
         {"verdict", pass ? "PASS" : "FAIL"}};

  std::ostringstream csv;
  csv.precision(17);
  csv << "model,params,check,fitted_constant,max_ratio,pass\n";
  csv << o.model << "," << params << ",psi_bound," << psi.fitted_constant << ","
      << psi.max_ratio << "," << (psi.pass ? 1 : 0) << "\n";
  csv << o.model << "," << params << ",gamma_bound," << chp << ","
      << gamma.max_ratio << "," << (gamma.pass ? 1 : 0) << "\n";
  csv << o.model << "," << params << ",increment_tail_bound,," << tail.max_ratio
      << "," << (tail.pass ? 1 : 0) << "\n";

  // hypothesis reports default to json, the natural shape here
  write_text(o, o.format == "csv" ? csv.str() : j.dump(2) + "\n");
  std::fprintf(stderr, "hypothesis %s %s C'=%.6g %s\n", o.model.c_str(),
               params.c_str(), chp, pass ? "PASS" : "FAIL");
  if (!pass) throw CheckFailed{};
  return kExitOk;
}

void add_common(CLI::App* sub, Options* o) {
  sub->add_option("--model", o->model, "fbm|subfbm|bifbm|gsfbm|tabulated")
      ->required();
  sub->add_option("--hurst", o->hurst, "Hurst index H");
  sub->add_option("--hp", o->hp, "H' for bifbm/gsfbm");
  sub->add_option("--k", o->k, "K for bifbm/gsfbm");
  sub->add_option("--grid", o->grid, "covariance CSV for tabulated models");
  sub->add_option("--n", o->n, "single size n");
  sub->add_option("--n-list", o->n_list, "sizes: a:b:x2 or comma list");
  sub->add_option("--reps", o->reps, "Monte Carlo replicas");
  sub->add_option("--seed", o->seed, "RNG seed");
  sub->add_option("--out", o->out, "output path (default stdout)");
  sub->add_option("--format", o->format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", o->threads, "worker threads (0 = hardware)");
  sub->set_config("--config", "", "flat key=value config; flags override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic-variation laboratory for fractional Gaussian processes"};
  app.require_subcommand(1);

  Options o;
  CLI::App* cum = app.add_subcommand("cumulants", "exact cumulant tables");
  add_common(cum, &o);
  CLI::App* rates = app.add_subcommand("rates", "rate-regime fits");
  add_common(rates, &o);
  rates->add_option("--use", o.use, "kappa3|kappa4|m_stat|ks")
      ->check(CLI::IsMember({"kappa3", "kappa4", "m_stat", "ks"}));
  rates->add_flag("--with-log", o.with_log, "fit a log n correction term");
  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo normality runs");
  add_common(sim, &o);
  sim->add_option("--raw", o.raw, "raw-samples binary output path");
  CLI::App* asclt = app.add_subcommand("asclt", "logarithmic averages on one path");
  add_common(asclt, &o);
  asclt->add_option("--phi", o.phi, "one|indicator|square")
      ->check(CLI::IsMember({"one", "indicator", "square"}));
  CLI::App* hyp = app.add_subcommand("hypothesis", "covariance hypothesis checks");
  add_common(hyp, &o);
  hyp->add_option("--chp", o.chp, "constant C'_H (default: fitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cum->parsed()) return run_cumulants(o);
    if (rates->parsed()) return run_rates(o);
    if (sim->parsed()) return run_simulate(o);
    if (asclt->parsed()) return run_asclt(o);
    if (hyp->parsed()) return run_hypothesis(o);
  } catch (const CheckFailed&) {
    return kExitCheckFailed;
  } catch (const RuntimeError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitUsage;
}
