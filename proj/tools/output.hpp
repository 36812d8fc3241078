#pragma once

// Number formatting and output routing shared by the subcommands.

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>

#include "acoh/types.hpp"

namespace acoh::cli {

using nlohmann::json;

enum class Format { Json, Csv };

/// x rounded to 12 significant digits; non-finite values become null.
json num(double x);
/// {"value": x | null, "reason": "..."}.
json maybe(const MaybeValue& v);
/// Fixed 12-significant-digit text for CSV cells; empty for non-finite.
std::string cell(double x);
std::string cell(const MaybeValue& v);

/// Where a command writes: --out if given (relative paths resolve against
/// ACOH_OUTPUT_DIR when it is set), else ACOH_OUTPUT_DIR/<stem>.<ext>,
/// else standard output.
std::optional<std::string> resolve_output(const std::string& out, const std::string& stem, Format format);

/// Writes `text` to the resolved destination. Throws DomainError when the
/// file cannot be opened.
void emit(const std::string& text, const std::optional<std::string>& path);

std::string dump(const json& j);

}  // namespace acoh::cli
