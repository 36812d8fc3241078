#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acoh/clicks.hpp"
#include "acoh/detector.hpp"
#include "acoh/error.hpp"
#include "acoh/gw.hpp"
#include "acoh/oracle.hpp"
#include "acoh/state_io.hpp"
#include "acoh/statistics.hpp"

namespace acoh::cli {

namespace {

constexpr int kOutputSchemaVersion = 1;

FieldState load_state(const RunConfig& c) {
  if (!c.state_file.empty()) return load_state_file(c.state_file);
  return parse_state(c.state);
}

DetectorCoupling coupling_of(const RunConfig& c) {
  if (c.kappa && (c.gamma0 || c.dt)) throw DomainError("give either --kappa or --gamma0 with --dt, not both");
  if (c.kappa) return DetectorCoupling::from_kappa(*c.kappa, c.eta);
  if (c.gamma0 || c.dt) {
    if (!c.gamma0 || !c.dt) throw DomainError("--gamma0 and --dt must be given together");
    return DetectorCoupling::from_rate(*c.gamma0, *c.dt, c.eta);
  }
  return DetectorCoupling::from_kappa(0.1, c.eta);
}

RouteOptions route_options(const RunConfig& c) {
  RouteOptions o;
  if (c.kernel == "exact") {
    o.kernel = Kernel::Exact;
  } else if (c.kernel == "small-angle") {
    o.kernel = Kernel::SmallAngle;
  } else {
    throw DomainError("--kernel must be exact or small-angle");
  }
  if (c.order == "full") {
    o.order = SeriesOrder::Full;
  } else if (c.order == "leading") {
    o.order = SeriesOrder::Leading;
  } else {
    throw DomainError("--order must be full or leading");
  }
  if (!(c.tail_bound > 0.0) || !(c.tail_bound < 1.0)) throw DomainError("--tail-bound must lie in (0, 1)");
  o.truncation = {c.tail_bound, c.max_dim};
  return o;
}

// Every requested method is checked against the state before any work.
std::vector<Method> methods_for(const RunConfig& c, const FieldState& state) {
  std::vector<Method> out;
  if (c.methods.empty()) {
    if (has_p_function(state)) out.push_back(Method::PRepresentation);
    if (state.is_gaussian() && !has_p_function(state)) out.push_back(Method::GaussianOverlap);
    out.push_back(Method::Oracle);
    return out;
  }
  for (const auto& name : c.methods) {
    const auto m = parse_method(name);
    if (!m) throw DomainError("unknown method '" + name + "' (perturbative, exact, bch, gaussian, oracle)");
    if (*m == Method::PRepresentation && !has_p_function(state)) {
      throw UnsupportedError("method exact needs a closed-form P function; " + state.describe() +
                             " has none (use oracle, bch or perturbative)");
    }
    if (*m == Method::GaussianOverlap && !state.is_gaussian()) {
      throw UnsupportedError("method gaussian needs a Gaussian state; " + state.describe() + " is not");
    }
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  return out;
}

json coupling_json(const DetectorCoupling& k, const RouteOptions& o) {
  return {{"gamma0", num(k.gamma0)}, {"dt", num(k.dt)},     {"eta", num(k.eta)},
          {"kappa", num(k.kappa())}, {"kappa_effective", num(effective_kappa(k))},
          {"kernel", o.kernel == Kernel::Exact ? "exact" : "small-angle"}};
}

json header(const char* command, const FieldState& state) {
  return {{"schema_version", kOutputSchemaVersion}, {"command", command}, {"state", state_to_json(state)},
          {"state_label", state.describe()}};
}

void report_warnings(const RunConfig& c, const std::string& method, const std::vector<std::string>& warnings) {
  if (c.quiet) return;
  for (const auto& w : warnings) std::cerr << "warning [" << method << "]: " << w << "\n";
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw DomainError("--format must be json or csv");
}

std::string cmd_probs(const RunConfig& c) {
  const Format format = parse_format(c.format);
  const FieldState state = load_state(c);
  const DetectorCoupling k = coupling_of(c);
  const RouteOptions opts = route_options(c);
  const std::vector<Method> methods = methods_for(c, state);

  std::vector<CountDistribution> dists;
  for (Method m : methods) {
    dists.push_back(probabilities(state, k, c.n_max, m, opts));
    report_warnings(c, std::string(to_string(m)), dists.back().warnings);
  }

  // Disagreement against the oracle column when present, else the first.
  std::size_t ref = 0;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] == Method::Oracle) ref = i;
  }
  json diagnostics = json::array();
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (i == ref) continue;
    const std::size_t n = std::min(dists[i].probs.size(), dists[ref].probs.size());
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(dists[i].probs[j] - dists[ref].probs[j]);
      if (d > worst) {
        worst = d;
        at = j;
      }
    }
    diagnostics.push_back({{"method", to_string(methods[i])},
                           {"reference", to_string(methods[ref])},
                           {"max_abs_diff", num(worst)},
                           {"at_n", at}});
  }

  if (format == Format::Csv) {
    std::ostringstream os;
    os << "n";
    for (Method m : methods) os << "," << to_string(m);
    os << "\n";
    for (std::size_t n = 0; n <= c.n_max; ++n) {
      os << n;
      for (const auto& d : dists) os << "," << (n < d.probs.size() ? cell(d.probs[n]) : std::string());
      os << "\n";
    }
    return os.str();
  }

  json j = header("probs", state);
  j["coupling"] = coupling_json(k, opts);
  j["n_max"] = c.n_max;
  json cols = json::array();
  for (const auto& d : dists) {
    json col = {{"method", to_string(d.method)}, {"probs", json::array()}, {"warnings", d.warnings}};
    for (double p : d.probs) col["probs"].push_back(num(p));
    col["tail_mass"] = d.tail_mass ? num(*d.tail_mass) : json(nullptr);
    if (d.method == Method::Oracle) {
      col["truncation_mass"] = num(d.truncation_mass);
      col["field_dim"] = d.field_dim;
      col["detector_dim"] = d.detector_dim;
    }
    cols.push_back(col);
  }
  j["columns"] = cols;
  j["diagnostics"] = diagnostics;
  return dump(j);
}

std::string cmd_ratio(const RunConfig& c) {
  const Format format = parse_format(c.format);
  const FieldState state = load_state(c);
  const DetectorCoupling k = coupling_of(c);
  const RouteOptions opts = route_options(c);
  const std::vector<Method> methods = methods_for(c, state);

  struct Row {
    RatioResult ratio;
    std::string label;
    std::vector<std::string> warnings;
  };
  std::vector<Row> rows;
  for (Method m : methods) {
    const CountDistribution d = probabilities(state, k, 3, m, opts);
    report_warnings(c, std::string(to_string(m)), d.warnings);
    Row row{ratio_R(d), {}, d.warnings};
    row.label = row.ratio.r.defined() ? classify_ratio(*row.ratio.r) : "undefined";
    rows.push_back(std::move(row));
  }
  const MaybeValue reference = reference_R(state);

  if (format == Format::Csv) {
    std::ostringstream os;
    os << "method,R,R_prime,label\n";
    for (const auto& r : rows) {
      os << to_string(r.ratio.method) << "," << cell(r.ratio.r) << "," << cell(r.ratio.r_prime) << "," << r.label
         << "\n";
    }
    return os.str();
  }

  json j = header("ratio", state);
  j["coupling"] = coupling_json(k, opts);
  j["reference_R"] = maybe(reference);
  const RatioResult lo = leading_order_ratios(state);
  j["leading_order"] = {{"R", maybe(lo.r)}, {"R_prime", maybe(lo.r_prime)}};
  json results = json::array();
  for (const auto& r : rows) {
    json item = {{"method", to_string(r.ratio.method)},
                 {"R", maybe(r.ratio.r)},
                 {"R_prime", maybe(r.ratio.r_prime)},
                 {"label", r.label},
                 {"components", json::array()},
                 {"warnings", r.warnings}};
    for (double p : r.ratio.components) item["components"].push_back(num(p));
    results.push_back(item);
  }
  j["results"] = results;
  return dump(j);
}

std::string cmd_moments(const RunConfig& c) {
  const Format format = parse_format(c.format);
  const FieldState state = load_state(c);
  const DetectorCoupling k = coupling_of(c);
  const RouteOptions opts = route_options(c);

  const double n = state.mean_number();
  const MaybeValue q = mandel_q(state);
  const StatSummary s = count_summary(state, k, opts.kernel);
  const double approx_var = variance_counts(state, k, opts.kernel, VarianceForm::Approximate);
  const double m1 = analytic_moment(state, 1), m2 = analytic_moment(state, 2), m3 = analytic_moment(state, 3);
  const MaybeValue r_q = q.defined() ? r_from_q(*q, n) : MaybeValue::absent(q.reason);

  if (format == Format::Csv) {
    std::ostringstream os;
    os << "quantity,value\n"
       << "mean_number," << cell(n) << "\n"
       << "mandel_q," << cell(q) << "\n"
       << "moment_1," << cell(m1) << "\n"
       << "moment_2," << cell(m2) << "\n"
       << "moment_3," << cell(m3) << "\n"
       << "mean_counts," << cell(s.mean) << "\n"
       << "variance_counts," << cell(s.variance) << "\n"
       << "variance_counts_approximate," << cell(approx_var) << "\n"
       << "r_from_q," << cell(r_q) << "\n";
    return os.str();
  }

  json j = header("moments", state);
  j["coupling"] = coupling_json(k, opts);
  j["mean_number"] = num(n);
  j["mandel_q"] = maybe(q);
  j["dispersion"] = s.dispersion ? json(std::string(to_string(*s.dispersion))) : json(nullptr);
  j["normal_ordered_moments"] = {num(m1), num(m2), num(m3)};
  j["counts"] = {{"mean", num(s.mean)}, {"variance", num(s.variance)}, {"variance_approximate", num(approx_var)}};
  j["r_from_q"] = maybe(r_q);
  return dump(j);
}

namespace {

ClickExperiment experiment_of(const RunConfig& c) {
  ClickExperiment e;
  e.state = load_state(c);
  const DetectorCoupling k = coupling_of(c);
  // Finite efficiency thins every click, which scales the per-step rate.
  e.gamma0 = k.gamma0 * k.eta;
  e.dt = k.dt;
  e.steps = c.steps;
  e.windows = c.windows;
  e.seed = c.seed;
  e.threads = c.threads;
  if (c.law == "poisson") {
    e.law = ChainLaw::Poisson;
  } else if (c.law == "binomial") {
    e.law = ChainLaw::Binomial;
  } else {
    throw DomainError("--law must be poisson or binomial");
  }
  if (c.windows == 0) throw DomainError("--windows must be at least 1");
  if (c.steps == 0) throw DomainError("--steps must be at least 1");
  validate(e);
  return e;
}

json experiment_json(const ClickExperiment& e) {
  return {{"gamma0", num(e.gamma0)}, {"dt", num(e.dt)},       {"steps", e.steps},
          {"windows", e.windows},    {"seed", e.seed},        {"law", e.law == ChainLaw::Poisson ? "poisson" : "binomial"},
          {"T", num(e.T())},         {"eps", num(e.eps())}};
}

json estimate_json(const Estimate& e) {
  return {{"value", e.value.defined() ? num(*e.value) : json(nullptr)},
          {"stderr", e.stderr_.defined() ? num(*e.stderr_) : json(nullptr)}};
}

}  // namespace

std::string cmd_sample(const RunConfig& c) {
  const Format format = parse_format(c.format);
  const ClickExperiment e = experiment_of(c);
  const CountRecord rec = sample_clicks(e);
  if (rec.clamped > 0 && !c.quiet) {
    std::cerr << "warning: " << rec.clamped << " windows had eps |beta|^2 > 1 and were clamped\n";
  }
  if (format == Format::Csv) {
    std::ostringstream os;
    write_counts_csv(os, rec);
    return os.str();
  }
  json j = header("sample", e.state);
  j["experiment"] = experiment_json(e);
  j["histogram"] = rec.histogram;
  j["clamped"] = rec.clamped;
  j["estimates"] = {{"mean", estimate_json(rec.mean())},         {"variance", estimate_json(rec.variance())},
                    {"excess", estimate_json(rec.excess())},     {"q", estimate_json(rec.q())},
                    {"R", estimate_json(rec.r())},               {"R_prime", estimate_json(rec.r_prime())}};
  j["counts"] = rec.counts;
  return dump(j);
}

std::string cmd_test(const RunConfig& c) {
  const Format format = parse_format(c.format);
  NullTestOptions opts;
  opts.bootstrap = c.bootstrap;
  opts.level = c.level;
  opts.seed = c.seed ^ 0x5eedULL;
  if (!(c.level > 0.0 && c.level < 1.0)) throw DomainError("--level must lie in (0, 1)");
  if (!c.alternatives.empty()) {
    opts.alternatives.clear();
    for (const auto& name : c.alternatives) {
      const auto a = parse_alternative(name);
      if (!a) throw DomainError("unknown alternative '" + name + "' (thermal-mixture, squeezed)");
      opts.alternatives.push_back(*a);
    }
  }

  CountRecord rec;
  json source;
  if (!c.counts_file.empty()) {
    std::ifstream in(c.counts_file);
    if (!in) throw DomainError("cannot open counts file '" + c.counts_file + "'");
    rec = read_counts_csv(in);
    source = {{"counts_file", c.counts_file}};
  } else {
    const ClickExperiment e = experiment_of(c);
    rec = sample_clicks(e);
    source = {{"state", state_to_json(e.state)}, {"experiment", experiment_json(e)}};
  }
  if (rec.windows() == 0) throw DomainError("no windows to test");
  const NullTestReport rep = test_coherent_null(rec, opts);

  if (format == Format::Csv) {
    std::ostringstream os;
    os << "quantity,value\n"
       << "verdict," << to_string(rep.verdict) << "\n"
       << "windows," << rep.windows << "\n"
       << "mean," << cell(rep.mean) << "\n"
       << "statistic," << cell(rep.statistic) << "\n"
       << "p_value," << cell(rep.p_value) << "\n"
       << "dispersion_index," << cell(rep.dispersion_index) << "\n"
       << "dispersion_p_value," << cell(rep.dispersion_p_value) << "\n";
    return os.str();
  }
  json j = {{"schema_version", kOutputSchemaVersion}, {"command", "test"}, {"source", source}};
  j["verdict"] = to_string(rep.verdict);
  j["reason"] = rep.reason;
  j["windows"] = rep.windows;
  j["mean"] = num(rep.mean);
  j["null_log_likelihood"] = num(rep.null_log_likelihood);
  json fits = json::array();
  for (const auto& f : rep.fits) {
    json params = json::array();
    for (double p : f.params) params.push_back(num(p));
    fits.push_back({{"family", to_string(f.family)},
                    {"params", params},
                    {"log_likelihood", num(f.log_likelihood)},
                    {"lrt", num(f.lrt)}});
  }
  j["fits"] = fits;
  j["statistic"] = num(rep.statistic);
  j["p_value"] = maybe(rep.p_value);
  j["dispersion_index"] = maybe(rep.dispersion_index);
  j["dispersion_p_value"] = maybe(rep.dispersion_p_value);
  j["bootstrap"] = rep.bootstrap;
  j["level"] = num(rep.level);
  return dump(j);
}

namespace {

void apply_bar(const std::string& text, gw::ScenarioInputs& in) {
  std::string body = text;
  if (!text.empty() && text.front() != '{') {
    std::ifstream f(text);
    if (!f) throw DomainError("cannot open bar file '" + text + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid bar JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("bar JSON must be an object");
  if (j.contains("mass_kg")) in.bar_mass = gw::kilograms(j.at("mass_kg").get<double>());
  if (j.contains("length_m")) in.bar_length = gw::meters(j.at("length_m").get<double>());
}

}  // namespace

std::string cmd_astro(const RunConfig& c) {
  const Format format = parse_format(c.format);
  std::vector<gw::ScenarioInputs> inputs;
  if (c.chirp_mass_msun || c.frequency_hz) {
    if (!c.chirp_mass_msun || !c.frequency_hz) throw DomainError("--chirp-mass and --frequency go together");
    gw::ScenarioInputs s;
    s.name = c.scenario_name;
    s.chirp = {gw::PhysicalConstants::solar_mass * *c.chirp_mass_msun, gw::hertz(*c.frequency_hz)};
    inputs.push_back(s);
  }
  std::vector<std::string> presets = c.presets;
  if (presets.empty() && inputs.empty()) presets = gw::preset_names();
  for (const auto& p : presets) {
    for (auto& s : gw::preset(p)) inputs.push_back(s);
  }
  std::vector<gw::ScenarioRow> rows;
  for (auto& s : inputs) {
    if (!c.bar.empty()) apply_bar(c.bar, s);
    if (c.mean_n) s.mean_n = *c.mean_n;
    if (c.q) s.q = *c.q;
    rows.push_back(gw::evaluate(s));
  }

  if (format == Format::Csv) {
    std::ostringstream os;
    os << "name,chirp_mass_kg,frequency_hz,dt_max_s,bandwidth_rad_s,gamma0_per_s,kappa,signal,flux_w_m2\n";
    for (const auto& r : rows) {
      os << r.name << "," << cell(r.chirp_mass_kg) << "," << cell(r.frequency_hz) << "," << cell(r.dt_max_s) << ","
         << cell(r.bandwidth_rad_s) << "," << cell(r.gamma0_per_s) << "," << cell(r.kappa) << "," << cell(r.signal)
         << "," << cell(r.flux_w_m2) << "\n";
    }
    return os.str();
  }
  json j = {{"schema_version", kOutputSchemaVersion}, {"command", "astro"}};
  j["reference_bar_gamma0_per_s"] = num(gw::weber_gamma0(gw::reference_bar()).value);
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"name", r.name},
                   {"chirp_mass_kg", num(r.chirp_mass_kg)},
                   {"frequency_hz", num(r.frequency_hz)},
                   {"dt_max_s", num(r.dt_max_s)},
                   {"bandwidth_rad_s", num(r.bandwidth_rad_s)},
                   {"gamma0_per_s", num(r.gamma0_per_s)},
                   {"kappa", num(r.kappa)},
                   {"signal", num(r.signal)},
                   {"flux_w_m2", num(r.flux_w_m2)}});
  }
  j["rows"] = arr;
  return dump(j);
}

}  // namespace acoh::cli
