#pragma once

// Brute-force ground truth from the truncated two-mode evolution.

#include <cstddef>
#include <string_view>

#include "acoh/fock.hpp"
#include "acoh/states.hpp"
#include "acoh/types.hpp"

namespace acoh {

struct OracleOptions {
  TruncationPolicy truncation{};
  /// The detector space starts at n_max + 2 levels and is doubled until the
  /// reported probabilities move by less than this.
  double detector_tol = 1e-14;
};

/// P_0..P_nmax from U (rho (x) |0><0|) U^dagger with kappa = sqrt(gamma0 dt).
/// Finite efficiency thins the detector distribution binomially.
/// Throws TruncationError when the field cannot be truncated within policy.
CountDistribution detector_pn_oracle(const FieldState& state, const DetectorCoupling& coupling, std::size_t n_max,
                                     const OracleOptions& options = {});

/// <a^dagger^j a^j> from the truncated number distribution.
double normal_ordered_moment(const FieldState& state, int j, const TruncationPolicy& policy = {});

/// <exp(-lambda a^dagger a)>; lambda >= 0.
double exp_number_expectation(const FieldState& state, double lambda, const TruncationPolicy& policy = {});

/// Operator-word expectation ('A' = a^dagger, 'a' = a) on the truncated density.
cplx word_expectation(const FieldState& state, std::string_view word, const TruncationPolicy& policy = {});

}  // namespace acoh
