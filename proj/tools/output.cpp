#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "acoh/error.hpp"

namespace acoh::cli {

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json maybe(const MaybeValue& v) {
  json j;
  j["value"] = v.defined() ? num(*v) : json(nullptr);
  if (!v.defined()) j["reason"] = v.reason;
  return j;
}

std::string cell(double x) {
  if (!std::isfinite(x)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string cell(const MaybeValue& v) { return v.defined() ? cell(*v) : std::string(); }

std::optional<std::string> resolve_output(const std::string& out, const std::string& stem, Format format) {
  const char* env = std::getenv("ACOH_OUTPUT_DIR");
  const std::filesystem::path dir = (env && *env) ? std::filesystem::path(env) : std::filesystem::path();
  if (out == "-") return std::nullopt;
  if (!out.empty()) {
    const std::filesystem::path p(out);
    return (p.is_relative() && !dir.empty()) ? (dir / p).string() : p.string();
  }
  if (dir.empty()) return std::nullopt;
  return (dir / (stem + (format == Format::Json ? ".json" : ".csv"))).string();
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  const std::filesystem::path p(*path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(p);
  if (!f) throw DomainError("cannot open output file '" + *path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace acoh::cli
