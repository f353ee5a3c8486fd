#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dwpap/bohr.hpp"
#include "dwpap/errors.hpp"
#include "dwpap/json_io.hpp"
#include "dwpap/kernel.hpp"
#include "dwpap/poly_classify.hpp"
#include "dwpap/transforms.hpp"
#include "dwpap/trig_spec.hpp"
#include "dwpap/weight_classes.hpp"
#include "instances.hpp"
#include "suite.hpp"

namespace {

using dwpap::ordered_json;

struct Opts {
  double t0 = 1.0;
  double ratio = 1.5;
  int steps = 24;
  int window = 5;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 12345;

  std::string mu = "1";
  std::string nu = "1";
  std::string f;
  double kappa = 0.5;
  bool has_kappa = false;
};

dwpap::Schedule schedule_from(const Opts& o) {
  dwpap::Schedule s;
  s.t0 = o.t0;
  s.ratio = o.ratio;
  s.count = o.steps;
  s.window = o.window;
  s.quad_tol = o.tol;
  s.validate();
  return s;
}

void add_schedule_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--T0", o.t0, "first horizon of the evaluation schedule");
  cmd->add_option("--ratio", o.ratio, "geometric step between horizons (> 1)");
  cmd->add_option("--steps", o.steps, "number of schedule points");
  cmd->add_option("--window", o.window, "trailing points used to judge limits");
  cmd->add_option("--tol", o.tol, "quadrature tolerance");
  cmd->add_option("--format", o.format, "output format: json, csv, or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", o.out, "write the report here (curves become CSV sidecars)");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t used = 0;
    double v = std::stod(item, &used);
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("bad number in list: '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::string sidecar_path(const std::string& out, const std::string& name) {
  std::string stem = out;
  if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json")
    stem = stem.substr(0, stem.size() - 5);
  return stem + "." + name + ".csv";
}

using CurveList = std::vector<std::pair<std::string, dwpap::ErgodicCurve>>;
using Printer = std::function<void(std::ostream&)>;

// Writes the report in the chosen format (stdout or --out) and drops one CSV
// sidecar per named curve next to --out.
int emit(const Opts& o, const std::string& command, ordered_json inputs,
         const dwpap::Schedule& s, ordered_json results, const CurveList& curves,
         const Printer& table, const Printer& csv) {
  std::ostringstream body;
  if (o.format == "json") {
    body << dwpap::make_envelope(command, std::move(inputs), s, std::move(results)).dump(2)
         << "\n";
  } else if (o.format == "table") {
    table(body);
  } else {
    csv(body);
  }

  if (o.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream os(o.out);
    if (!os) throw dwpap::EngineError("cannot open output file: " + o.out);
    os << body.str();
    if (!os) throw dwpap::EngineError("failed writing output file: " + o.out);
    for (const auto& [name, curve] : curves)
      dwpap::write_curve_csv(curve, sidecar_path(o.out, name));
  }
  return 0;
}

ordered_json opt_double(bool present, double v) {
  return present ? ordered_json(v) : ordered_json(nullptr);
}

// ---------------- classify ----------------

int run_classify(const Opts& o, const std::string& weight_text, const std::string& vs_text) {
  dwpap::Schedule s = schedule_from(o);
  dwpap::ClassCheckConfig cfg;
  cfg.schedule = s;
  dwpap::Weight w = dwpap::make_weight(weight_text);

  dwpap::PolyClassification pc = dwpap::classify_polynomial(w.expr());
  dwpap::ClassReport rw = dwpap::check_w(w, cfg);
  dwpap::ClassReport rv = dwpap::check_v(w, cfg);
  dwpap::ClassReport rinv = dwpap::check_w_inv(w, cfg);
  dwpap::ClassReport rs = dwpap::check_w_s(w, cfg);
  std::optional<dwpap::ClassReport> req;
  if (!vs_text.empty()) req = dwpap::equivalent(w, dwpap::make_weight(vs_text), cfg);

  ordered_json results;
  results["weight"] = weight_text;
  results["polynomial"] = to_json(pc);
  results["classes"] = ordered_json{{"w", to_json(rw)},
                                    {"v", to_json(rv)},
                                    {"w_inv", to_json(rinv)},
                                    {"w_s", to_json(rs)}};
  if (req) results["equivalent"] = to_json(*req);

  ordered_json inputs = {{"weight", weight_text},
                         {"vs", vs_text.empty() ? ordered_json(nullptr) : ordered_json(vs_text)}};

  auto table = [&](std::ostream& os) {
    os << "weight: " << weight_text << "\n";
    if (pc.is_polynomial)
      os << "polynomial: " << (pc.is_weight ? "weight" : "rejected") << " ("
         << to_string(pc.reason) << ", degree " << pc.degree << ")\n";
    os << "  W     " << to_string(rw.verdict) << "\n";
    os << "  V     " << to_string(rv.verdict) << "\n";
    os << "  W_inv " << to_string(rinv.verdict) << "\n";
    os << "  W_s   " << to_string(rs.verdict) << "\n";
    if (req) os << "  equivalent to " << vs_text << ": " << to_string(req->verdict) << "\n";
  };
  auto csv = [&](std::ostream& os) {
    os << "class,verdict\n";
    os << "w," << to_string(rw.verdict) << "\n";
    os << "v," << to_string(rv.verdict) << "\n";
    os << "w_inv," << to_string(rinv.verdict) << "\n";
    os << "w_s," << to_string(rs.verdict) << "\n";
    if (req) os << "equivalent," << to_string(req->verdict) << "\n";
  };
  return emit(o, "classify", std::move(inputs), s, std::move(results), {}, table, csv);
}

// ---------------- theta ----------------

int run_theta(const Opts& o) {
  dwpap::Schedule s = schedule_from(o);
  dwpap::ThetaResult th = dwpap::theta(dwpap::make_weight(o.mu), dwpap::make_weight(o.nu), s);

  ordered_json inputs = {{"mu", o.mu}, {"nu", o.nu}};
  CurveList curves = {{"theta", th.curve}};
  auto table = [&](std::ostream& os) {
    os << "theta(" << o.mu << ", " << o.nu << "): ";
    if (th.value)
      os << *th.value;
    else
      os << "undecided";
    os << "  [" << to_string(th.curve.verdict.kind) << "]\n";
  };
  auto csv = [&](std::ostream& os) { dwpap::write_curve_csv(th.curve, os); };
  return emit(o, "theta", std::move(inputs), s, to_json(th), curves, table, csv);
}

// ---------------- dwmean ----------------

int run_dwmean(const Opts& o) {
  dwpap::Schedule s = schedule_from(o);
  dwpap::Weight mu = dwpap::make_weight(o.mu);
  dwpap::Weight nu = dwpap::make_weight(o.nu);

  std::optional<dwpap::TrigPoly> pure = dwpap::try_parse_pure_trig(o.f);
  dwpap::MeanResult m = pure ? dwpap::dw_mean(*pure, mu, nu, s)
                             : dwpap::dw_mean(dwpap::parse_function_spec(o.f), mu, nu, s);

  ordered_json inputs = {{"f", o.f}, {"mu", o.mu}, {"nu", o.nu}};
  CurveList curves = {{"mean", m.curve}};
  if (m.theta_curve) curves.emplace_back("theta", *m.theta_curve);
  auto table = [&](std::ostream& os) {
    os << "doubly weighted mean of " << o.f << "\n";
    os << "  estimate: " << dwpap::cvec_json(m.mean_estimate).dump() << "  ["
       << to_string(m.curve.verdict.kind) << "]\n";
    if (m.theta_value) os << "  theta: " << *m.theta_value << "\n";
    if (std::isfinite(m.residual)) os << "  factorization residual: " << m.residual << "\n";
  };
  auto csv = [&](std::ostream& os) { dwpap::write_curve_csv(m.curve, os); };
  return emit(o, "dwmean", std::move(inputs), s, to_json(m), curves, table, csv);
}

// ---------------- spectrum ----------------

int run_spectrum(const Opts& o, const std::string& grid_text, double threshold) {
  dwpap::Schedule s = schedule_from(o);
  std::optional<dwpap::TrigPoly> pure = dwpap::try_parse_pure_trig(o.f);

  dwpap::SpectrumSet set;
  if (!grid_text.empty()) {
    std::vector<double> grid = parse_double_list(grid_text);
    if (pure)
      set = dwpap::bohr_spectrum_scan(*pure, grid, threshold);
    else
      set = dwpap::bohr_spectrum_scan(dwpap::parse_function_spec(o.f), grid, threshold, s);
  } else if (pure) {
    set = dwpap::bohr_spectrum_scan(*pure, pure->frequencies(), threshold);
  } else {
    throw std::invalid_argument("--lambda-grid is required unless the function is a pure "
                                "trigonometric polynomial");
  }

  ordered_json inputs = {{"f", o.f},
                         {"lambda_grid", grid_text.empty() ? ordered_json(nullptr)
                                                           : ordered_json(grid_text)},
                         {"threshold", threshold}};
  auto table = [&](std::ostream& os) {
    os << "spectrum of " << o.f << " (threshold " << threshold << ")\n";
    for (const auto& p : set.points)
      os << "  lambda " << p.lambda << ": " << dwpap::cvec_json(p.value).dump() << "  |a| = "
         << p.magnitude << "\n";
  };
  auto csv = [&](std::ostream& os) {
    os << "lambda,a_re,a_im\n";
    char line[128];
    for (const auto& p : set.points) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.lambda, p.value[0].real(),
                    p.value[0].imag());
      os << line;
    }
  };
  return emit(o, "spectrum", std::move(inputs), s, to_json(set), {}, table, csv);
}

// ---------------- pap0 ----------------

int run_pap0(const Opts& o, bool has_shift, double shift) {
  dwpap::Schedule s = schedule_from(o);
  dwpap::Weight mu = dwpap::make_weight(o.mu);
  dwpap::Weight nu = dwpap::make_weight(o.nu);
  dwpap::FunctionHandle f = dwpap::parse_function_spec(o.f);

  ordered_json inputs = {{"f", o.f},
                         {"mu", o.mu},
                         {"nu", o.nu},
                         {"kappa", opt_double(o.has_kappa, o.kappa)},
                         {"shift", opt_double(has_shift, shift)}};

  if (has_shift) {
    if (o.has_kappa)
      throw std::invalid_argument("--shift and --kappa cannot be combined");
    dwpap::TranslationCheck tc = dwpap::translation_invariance_check(f, shift, mu, nu, s);
    CurveList curves = {{"original", tc.original}, {"shifted", tc.shifted}};
    auto table = [&](std::ostream& os) {
      os << "translation by " << shift << " of " << o.f << "\n";
      os << "  preconditions: " << (tc.preconditions_ok ? "pass" : "fail") << "\n";
      os << "  original: " << to_string(tc.original.verdict.kind) << "\n";
      os << "  shifted:  " << to_string(tc.shifted.verdict.kind) << "\n";
    };
    auto csv = [&](std::ostream& os) { dwpap::write_curve_csv(tc.shifted, os); };
    return emit(o, "pap0", std::move(inputs), s, to_json(tc), curves, table, csv);
  }

  std::optional<dwpap::KappaParam> kappa;
  if (o.has_kappa) kappa.emplace(o.kappa);
  dwpap::ErgodicCurve c = dwpap::membership_pap0(f, mu, nu, s, kappa);
  CurveList curves = {{"membership", c}};
  auto table = [&](std::ostream& os) {
    os << "vanishing-average membership of " << o.f << ": "
       << to_string(c.verdict.kind) << " (final " << c.verdict.final_magnitude << ")\n";
  };
  auto csv = [&](std::ostream& os) { dwpap::write_curve_csv(c, os); };
  return emit(o, "pap0", std::move(inputs), s, ordered_json{{"curve", to_json(c)}}, curves,
              table, csv);
}

// ---------------- convolve ----------------

int run_convolve(const Opts& o, const std::string& kernel_text, double mass,
                 const std::string& t_text, bool membership, bool slow_decay) {
  dwpap::Schedule s = schedule_from(o);
  dwpap::FunctionHandle f = dwpap::parse_function_spec(o.f);
  dwpap::Kernel k = dwpap::parse_kernel(kernel_text, mass);

  ordered_json inputs = {{"f", o.f},
                         {"kernel", kernel_text},
                         {"mass", mass},
                         {"mu", o.mu},
                         {"nu", o.nu},
                         {"membership", membership},
                         {"slow_decay", slow_decay}};

  if (membership) {
    dwpap::ConvMembershipResult r = dwpap::conv_membership(
        f, k, dwpap::make_weight(o.mu), dwpap::make_weight(o.nu), s, slow_decay);
    CurveList curves = {{"membership", r.curve}};
    auto table = [&](std::ostream& os) {
      os << "membership of " << k.label() << " * " << o.f << ": "
         << to_string(r.curve.verdict.kind) << "\n";
      for (const auto& p : r.preconditions)
        os << "  " << p.name << ": " << (p.pass ? "pass" : "fail") << " (" << p.detail << ")\n";
    };
    auto csv = [&](std::ostream& os) { dwpap::write_curve_csv(r.curve, os); };
    return emit(o, "convolve", std::move(inputs), s, to_json(r), curves, table, csv);
  }

  std::vector<double> ts = parse_double_list(t_text);
  ordered_json values = ordered_json::array();
  std::vector<dwpap::CVec> vals;
  for (double t : ts) {
    dwpap::CVec v = dwpap::convolve_value(f, k, t, o.tol);
    vals.push_back(v);
    values.push_back({{"t", t}, {"value", dwpap::cvec_json(v)}});
  }
  ordered_json results = {{"kernel", k.label()}, {"values", std::move(values)}};
  auto table = [&](std::ostream& os) {
    os << k.label() << " * " << o.f << "\n";
    for (std::size_t j = 0; j < ts.size(); ++j)
      os << "  t = " << ts[j] << ": " << dwpap::cvec_json(vals[j]).dump() << "\n";
  };
  auto csv = [&](std::ostream& os) {
    os << "t,R_re,R_im\n";
    char line[128];
    for (std::size_t j = 0; j < ts.size(); ++j) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", ts[j], vals[j][0].real(),
                    vals[j][0].imag());
      os << line;
    }
  };
  return emit(o, "convolve", std::move(inputs), s, std::move(results), {}, table, csv);
}

// ---------------- compose-check ----------------

int run_compose_check(const Opts& o, const std::string& instance, bool mu_set, bool nu_set) {
  dwpap::Schedule s = schedule_from(o);
  const dwpap::CompositionInstance* inst = dwpap::find_composition_instance(instance);
  if (!inst) {
    std::string names;
    for (const auto& c : dwpap::composition_instances())
      names += (names.empty() ? "" : ", ") + c.name;
    throw std::invalid_argument("unknown instance '" + instance + "' (choose from: " + names +
                                ")");
  }
  std::string mu_text = mu_set ? o.mu : inst->mu_text;
  std::string nu_text = nu_set ? o.nu : inst->nu_text;
  dwpap::CompositionResult r =
      dwpap::composition_check(inst->F, inst->h1, inst->h2, dwpap::make_weight(mu_text),
                               dwpap::make_weight(nu_text), s, o.seed);

  ordered_json inputs = {
      {"instance", instance}, {"mu", mu_text}, {"nu", nu_text}, {"seed", o.seed}};
  ordered_json results;
  results["instance"] = instance;
  results["description"] = inst->description;
  results["check"] = to_json(r);
  CurveList curves;
  if (r.lipschitz_ok) {
    curves.emplace_back("remainder", r.remainder_curve);
    curves.emplace_back("tail", r.h2_curve);
    curves.emplace_back("split", r.phi_curve);
  }
  auto table = [&](std::ostream& os) {
    os << "composition instance " << instance << "\n";
    os << "  lipschitz: " << (r.lipschitz_ok ? "pass" : "FAIL") << " (worst "
       << r.lipschitz_worst << ")\n";
    if (r.lipschitz_ok) {
      os << "  remainder: " << to_string(r.remainder_curve.verdict.kind) << " (final "
         << r.remainder_curve.verdict.final_magnitude << ")\n";
      os << "  bound " << r.bound_value << ", slack " << r.slack << " -> "
         << (r.bound_ok ? "pass" : "FAIL") << "\n";
    }
  };
  auto csv = [&](std::ostream& os) { dwpap::write_curve_csv(r.remainder_curve, os); };
  return emit(o, "compose-check", std::move(inputs), s, std::move(results), curves, table, csv);
}

// ---------------- verify-suite ----------------

int run_verify_suite(const Opts& o) {
  dwpap::Schedule s = schedule_from(o);
  dwpap::SuiteReport rep = dwpap::run_suite(s, o.seed);

  ordered_json inputs = {{"seed", o.seed}};
  auto table = [&](std::ostream& os) {
    for (const auto& e : rep.entries) {
      os << e.id << ": " << e.status << "\n";
      for (const auto& i : e.instances) {
        os << "  [" << i.status << "] " << i.description;
        if (!i.reason.empty()) os << " -- " << i.reason;
        os << "\n";
      }
    }
    os << "totals: " << rep.passed << " pass, " << rep.failed << " fail, " << rep.skipped
       << " skipped\n";
  };
  auto csv = [&](std::ostream& os) {
    os << "id,instance,status\n";
    for (const auto& e : rep.entries)
      for (const auto& i : e.instances) {
        std::string desc = i.description;
        for (char& c : desc)
          if (c == ',') c = ';';
        os << e.id << "," << desc << "," << i.status << "\n";
      }
  };
  return emit(o, "verify-suite", std::move(inputs), s, dwpap::suite_json(rep), {}, table, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"doubly weighted almost-periodic analysis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dwpap::kToolVersion));

  Opts o;
  std::string weight_text, vs_text, grid_text, kernel_text, t_text = "0", instance;
  double threshold = 1e-6, mass = 1.0, shift = 0.0;
  bool membership = false, slow_decay = false;

  CLI::App* classify = app.add_subcommand("classify", "weight-class membership of a weight");
  classify->add_option("weight", weight_text, "weight expression, e.g. \"1+x^2\"")->required();
  classify->add_option("--vs", vs_text, "also test equivalence against this weight");
  add_schedule_flags(classify, o);

  CLI::App* theta_cmd = app.add_subcommand("theta", "limit of nu(Q_T)/mu(Q_T)");
  theta_cmd->add_option("--mu", o.mu, "denominator weight");
  theta_cmd->add_option("--nu", o.nu, "numerator weight");
  add_schedule_flags(theta_cmd, o);

  CLI::App* dwmean = app.add_subcommand("dwmean", "doubly weighted mean of a function");
  dwmean->add_option("--f", o.f, "function spec")->required();
  dwmean->add_option("--mu", o.mu, "normalizing weight");
  dwmean->add_option("--nu", o.nu, "integrand weight");
  add_schedule_flags(dwmean, o);

  CLI::App* spectrum = app.add_subcommand("spectrum", "frequency coefficients of a function");
  spectrum->add_option("--f", o.f, "function spec")->required();
  spectrum->add_option("--lambda-grid", grid_text, "comma-separated frequencies to scan");
  spectrum->add_option("--threshold", threshold, "keep frequencies with |a| above this");
  add_schedule_flags(spectrum, o);

  CLI::App* pap0 = app.add_subcommand("pap0", "vanishing weighted-average membership");
  pap0->add_option("--f", o.f, "function spec")->required();
  pap0->add_option("--mu", o.mu, "normalizing weight");
  pap0->add_option("--nu", o.nu, "integrand weight");
  CLI::Option* kappa_opt = pap0->add_option("--kappa", o.kappa, "power-attenuated variant in (0,1)");
  CLI::Option* shift_opt =
      pap0->add_option("--shift", shift, "run the translation-invariance check at this shift");
  add_schedule_flags(pap0, o);

  CLI::App* convolve = app.add_subcommand("convolve", "convolution with a catalog kernel");
  convolve->add_option("--f", o.f, "function spec")->required();
  convolve->add_option("--kernel", kernel_text, "gauss(sigma), laplace(a), or box(R)")
      ->required();
  convolve->add_option("--mass", mass, "kernel mass (default unit)");
  convolve->add_option("--t", t_text, "comma-separated evaluation points");
  convolve->add_flag("--membership", membership,
                     "test vanishing-average membership of the convolution");
  convolve->add_flag("--slow-decay", slow_decay,
                     "accept slowly decaying membership curves (exponent > 0.5)");
  convolve->add_option("--mu", o.mu, "normalizing weight (membership mode)");
  convolve->add_option("--nu", o.nu, "integrand weight (membership mode)");
  add_schedule_flags(convolve, o);

  CLI::App* compose = app.add_subcommand("compose-check", "composition remainder check");
  compose->add_option("--instance", instance, "built-in instance name")->required();
  CLI::Option* cmu = compose->add_option("--mu", o.mu, "normalizing weight");
  CLI::Option* cnu = compose->add_option("--nu", o.nu, "integrand weight");
  compose->add_option("--seed", o.seed, "seed for the Lipschitz probes");
  add_schedule_flags(compose, o);

  CLI::App* suite = app.add_subcommand("verify-suite", "run the whole verification registry");
  suite->add_option("--seed", o.seed, "seed for the randomized probes");
  add_schedule_flags(suite, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    o.has_kappa = kappa_opt->count() > 0;
    if (*classify) return run_classify(o, weight_text, vs_text);
    if (*theta_cmd) return run_theta(o);
    if (*dwmean) return run_dwmean(o);
    if (*spectrum) return run_spectrum(o, grid_text, threshold);
    if (*pap0) return run_pap0(o, shift_opt->count() > 0, shift);
    if (*convolve) return run_convolve(o, kernel_text, mass, t_text, membership, slow_decay);
    if (*compose) return run_compose_check(o, instance, cmu->count() > 0, cnu->count() > 0);
    if (*suite) return run_verify_suite(o);
  } catch (const dwpap::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dwpap::EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
