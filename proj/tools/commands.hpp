#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"

namespace acoh::cli {

struct RunConfig {
  std::string state = "vacuum";
  std::string state_file;
  std::optional<double> kappa;
  std::optional<double> gamma0;
  std::optional<double> dt;
  double eta = 1.0;
  std::string kernel = "exact";
  std::string order = "full";
  std::vector<std::string> methods;
  std::size_t n_max = 3;
  double tail_bound = 1e-10;
  std::size_t max_dim = 4096;

  std::size_t steps = 1;
  std::size_t windows = 1000;
  std::uint64_t seed = 1;
  std::string law = "poisson";
  unsigned threads = 1;
  std::string counts_file;
  std::vector<std::string> alternatives;
  std::size_t bootstrap = 999;
  double level = 0.05;

  std::vector<std::string> presets;
  std::optional<double> chirp_mass_msun;
  std::optional<double> frequency_hz;
  std::string scenario_name = "custom";
  std::string bar;
  std::optional<double> mean_n;
  std::optional<double> q;

  std::string format = "json";
  std::string out;
  bool quiet = false;
};

Format parse_format(const std::string& s);

std::string cmd_probs(const RunConfig& c);
std::string cmd_ratio(const RunConfig& c);
std::string cmd_moments(const RunConfig& c);
std::string cmd_sample(const RunConfig& c);
std::string cmd_test(const RunConfig& c);
std::string cmd_astro(const RunConfig& c);

}  // namespace acoh::cli
