#pragma once

// Text and JSON forms of field states.
//
// Shorthand:
//   vacuum
//   coherent:<complex>        e.g. coherent:1+0i, coherent:0.5-0.2i, coherent:2
//   fock:<n>
//   thermal:<n_th>
//   squeezed:<r>
//   gaussian:<x0>,<r>,<phi>,<n_th>
//   custom:<c0>,<c1>,...      real amplitudes, normalized on load
//
// JSON (schema_version 1):
//   {"schema_version": 1, "kind": "coherent", "alpha": [re, im]}
//   {"schema_version": 1, "kind": "fock", "n": 3}
//   {"schema_version": 1, "kind": "thermal", "n_th": 0.5}
//   {"schema_version": 1, "kind": "squeezed", "r": 0.7}
//   {"schema_version": 1, "kind": "gaussian", "x0": 2, "r": 0.5, "phi": 0, "n_th": 1}
//   {"schema_version": 1, "kind": "custom", "amplitudes": [[re, im], ...]}

#include <json.hpp>
#include <string>
#include <string_view>

#include "acoh/states.hpp"

namespace acoh {

inline constexpr int kStateSchemaVersion = 1;

/// Parses "1", "-2.5i", "1+0i", "0.3-1e-2i".
cplx parse_complex(std::string_view text);

/// Shorthand or inline JSON (text starting with '{'). Throws DomainError.
FieldState parse_state(std::string_view text);

FieldState state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const FieldState& state);

/// Reads a JSON state file.
FieldState load_state_file(const std::string& path);

}  // namespace acoh
