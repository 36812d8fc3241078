// acoh: counting statistics of quantum fields in resonant detectors.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <iostream>

#include "acoh/error.hpp"
#include "commands.hpp"

namespace {

using acoh::cli::RunConfig;

void add_state(CLI::App* app, RunConfig& c) {
  app->add_option("--state", c.state, "kind:params shorthand or inline JSON")->capture_default_str();
  app->add_option("--state-file", c.state_file, "JSON state file")->check(CLI::ExistingFile);
}

void add_coupling(CLI::App* app, RunConfig& c) {
  auto* kappa = app->add_option("--kappa", c.kappa, "dimensionless coupling sqrt(gamma0 dt) (default 0.1)");
  auto* gamma0 = app->add_option("--gamma0", c.gamma0, "spontaneous-emission rate [1/s]");
  auto* dt = app->add_option("--dt", c.dt, "window or step duration [s]");
  kappa->excludes(gamma0)->excludes(dt);
  app->add_option("--eta", c.eta, "detection efficiency")->capture_default_str();
}

void add_routes(CLI::App* app, RunConfig& c) {
  app->add_option("--methods", c.methods, "perturbative, exact, bch, gaussian, oracle")->delimiter(',');
  app->add_option("--kernel", c.kernel, "exact or small-angle")->capture_default_str();
  app->add_option("--order", c.order, "perturbative series order: full or leading")->capture_default_str();
  app->add_option("--tail-bound", c.tail_bound, "Fock truncation tail bound")->capture_default_str();
  app->add_option("--max-dim", c.max_dim, "largest Fock dimension")->capture_default_str();
}

void add_sampling(CLI::App* app, RunConfig& c) {
  app->add_option("--steps", c.steps, "qubit steps per window")->capture_default_str();
  app->add_option("--windows", c.windows, "number of windows")->capture_default_str();
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--law", c.law, "poisson or binomial")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads")->capture_default_str();
}

void add_output(CLI::App* app, RunConfig& c) {
  app->add_option("--format", c.format, "json or csv")->capture_default_str();
  app->add_option("--out", c.out, "output file ('-' for stdout; default $ACOH_OUTPUT_DIR/<command>.<ext>)");
  app->add_flag("-q,--quiet", c.quiet, "suppress warnings on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting statistics of quantum radiation fields in resonant detectors"};
  app.require_subcommand(1);
  RunConfig c;

  auto* probs = app.add_subcommand("probs", "detector probabilities P_n per method");
  add_state(probs, c);
  add_coupling(probs, c);
  add_routes(probs, c);
  probs->add_option("--nmax", c.n_max, "largest n")->capture_default_str();
  add_output(probs, c);

  auto* ratio = app.add_subcommand("ratio", "ratio tests R and R' with classification");
  add_state(ratio, c);
  add_coupling(ratio, c);
  add_routes(ratio, c);
  add_output(ratio, c);

  auto* moments = app.add_subcommand("moments", "mean, Mandel Q and count variance");
  add_state(moments, c);
  add_coupling(moments, c);
  moments->add_option("--kernel", c.kernel, "exact or small-angle")->capture_default_str();
  add_output(moments, c);

  auto* sample = app.add_subcommand("sample", "Monte Carlo click counts");
  add_state(sample, c);
  add_coupling(sample, c);
  add_sampling(sample, c);
  add_output(sample, c);

  auto* test = app.add_subcommand("test", "coherent-null hypothesis test");
  add_state(test, c);
  add_coupling(test, c);
  add_sampling(test, c);
  test->add_option("--counts", c.counts_file, "counts CSV (window_index,j) instead of sampling")
      ->check(CLI::ExistingFile);
  test->add_option("--alternatives", c.alternatives, "thermal-mixture, squeezed")->delimiter(',');
  test->add_option("--bootstrap", c.bootstrap, "bootstrap replicates")->capture_default_str();
  test->add_option("--level", c.level, "test level")->capture_default_str();
  add_output(test, c);

  auto* astro = app.add_subcommand("astro", "gravitational-wave scenario table");
  astro->add_option("--preset", c.presets, "GW150914, GW170817")->delimiter(',');
  astro->add_option("--chirp-mass", c.chirp_mass_msun, "chirp mass [solar masses]");
  astro->add_option("--frequency", c.frequency_hz, "GW frequency [Hz]");
  astro->add_option("--scenario", c.scenario_name, "name of the custom row")->capture_default_str();
  astro->add_option("--bar", c.bar, "bar JSON {\"mass_kg\":..,\"length_m\":..} inline or as a file");
  astro->add_option("--mean-n", c.mean_n, "mode occupation <n>");
  astro->add_option("--mandel-q", c.q, "Mandel Q of the field");
  add_output(astro, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::string text;
    std::string stem;
    if (*probs) {
      text = acoh::cli::cmd_probs(c), stem = "probs";
    } else if (*ratio) {
      text = acoh::cli::cmd_ratio(c), stem = "ratio";
    } else if (*moments) {
      text = acoh::cli::cmd_moments(c), stem = "moments";
    } else if (*sample) {
      text = acoh::cli::cmd_sample(c), stem = "sample";
    } else if (*test) {
      text = acoh::cli::cmd_test(c), stem = "test";
    } else {
      text = acoh::cli::cmd_astro(c), stem = "astro";
    }
    acoh::cli::emit(text, acoh::cli::resolve_output(c.out, stem, acoh::cli::parse_format(c.format)));
  } catch (const acoh::TruncationError& e) {
    std::cerr << "error: " << e.what() << " (suggested dimension " << e.suggested_dim() << ")\n";
    return 3;
  } catch (const acoh::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const acoh::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
