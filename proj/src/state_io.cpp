#include "acoh/state_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "acoh/error.hpp"

namespace acoh {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
  std::string t = trim(text);
  if (t.size() > 1 && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + t + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("state JSON is missing '") + key + "'");
  if (!j.at(key).is_number()) throw DomainError(std::string("state JSON field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

cplx complex_from_json(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_object() && v.contains("re")) return {v.at("re").get<double>(), v.value("im", 0.0)};
  if (v.is_string()) return parse_complex(v.get<std::string>());
  throw DomainError("complex values are written as a number, [re, im], {\"re\":..,\"im\":..} or \"a+bi\"");
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) throw DomainError("empty complex number");
  if (t.back() != 'i') return {parse_double(t, "complex number"), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent or the leading sign.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, "imaginary part");
  };
  if (split_at == std::string::npos) return {0.0, imag_of(t)};
  return {parse_double(t.substr(0, split_at), "real part"), imag_of(t.substr(split_at))};
}

FieldState parse_state(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw DomainError("empty state specification");
  if (t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("invalid state JSON: ") + e.what());
    }
    return state_from_json(j);
  }
  if (t == "vacuum") return make_state(Fock{0});
  const auto colon = t.find(':');
  if (colon == std::string::npos) {
    throw DomainError("state shorthand is kind:params, e.g. coherent:1+0i, fock:3, thermal:0.5, squeezed:0.7, "
                      "gaussian:x0,r,phi,n_th");
  }
  const std::string kind = t.substr(0, colon);
  const std::string args = t.substr(colon + 1);
  if (kind == "coherent") return make_state(Coherent{parse_complex(args)});
  if (kind == "thermal") return make_state(Thermal{parse_double(args, "n_th")});
  if (kind == "squeezed") return make_state(SqueezedVacuum{parse_double(args, "r")});
  if (kind == "fock") {
    const double n = parse_double(args, "n");
    if (n < 0.0 || n != std::floor(n) || n > 1e6) throw DomainError("Fock number must be a non-negative integer");
    return make_state(Fock{static_cast<std::size_t>(n)});
  }
  if (kind == "gaussian") {
    const auto p = split(args, ',');
    if (p.size() != 4) throw DomainError("gaussian shorthand needs x0,r,phi,n_th");
    return make_state(Gaussian{parse_double(p[0], "x0"), parse_double(p[1], "r"), parse_double(p[2], "phi"),
                               parse_double(p[3], "n_th")});
  }
  if (kind == "custom") {
    const auto p = split(args, ',');
    FockVector v;
    v.amplitudes.resize(static_cast<Eigen::Index>(p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) v.amplitudes[static_cast<Eigen::Index>(k)] = parse_complex(p[k]);
    return make_state(Custom{v});
  }
  throw DomainError("unknown state kind '" + kind + "'");
}

FieldState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("state JSON must be an object");
  if (j.contains("schema_version")) {
    if (!j.at("schema_version").is_number_integer() || j.at("schema_version").get<int>() != kStateSchemaVersion) {
      throw DomainError("unsupported state schema_version (expected 1)");
    }
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) throw DomainError("state JSON needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "vacuum") return make_state(Fock{0});
  if (kind == "coherent") {
    if (!j.contains("alpha")) throw DomainError("state JSON is missing 'alpha'");
    return make_state(Coherent{complex_from_json(j.at("alpha"))});
  }
  if (kind == "fock") {
    if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long long>() < 0) {
      throw DomainError("fock state needs a non-negative integer 'n'");
    }
    return make_state(Fock{j.at("n").get<std::size_t>()});
  }
  if (kind == "thermal") return make_state(Thermal{number(j, "n_th")});
  if (kind == "squeezed") return make_state(SqueezedVacuum{number(j, "r")});
  if (kind == "gaussian") {
    return make_state(Gaussian{number(j, "x0"), number(j, "r"), j.contains("phi") ? number(j, "phi") : 0.0,
                               j.contains("n_th") ? number(j, "n_th") : 0.0});
  }
  if (kind == "custom") {
    if (!j.contains("amplitudes") || !j.at("amplitudes").is_array()) {
      throw DomainError("custom state needs an 'amplitudes' array");
    }
    const auto& a = j.at("amplitudes");
    FockVector v;
    v.amplitudes.resize(static_cast<Eigen::Index>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) v.amplitudes[static_cast<Eigen::Index>(k)] = complex_from_json(a[k]);
    return make_state(Custom{v});
  }
  throw DomainError("unknown state kind '" + kind + "'");
}

nlohmann::json state_to_json(const FieldState& state) {
  nlohmann::json j;
  j["schema_version"] = kStateSchemaVersion;
  j["kind"] = state.kind();
  if (state.is<Coherent>()) {
    const cplx a = state.as<Coherent>().alpha;
    j["alpha"] = {a.real(), a.imag()};
  } else if (state.is<Fock>()) {
    j["n"] = state.as<Fock>().n;
  } else if (state.is<Thermal>()) {
    j["n_th"] = state.as<Thermal>().n_th;
  } else if (state.is<SqueezedVacuum>()) {
    j["r"] = state.as<SqueezedVacuum>().r;
  } else if (state.is<Gaussian>()) {
    const auto& g = state.as<Gaussian>();
    j["x0"] = g.x0;
    j["r"] = g.r;
    j["phi"] = g.phi;
    j["n_th"] = g.n_th;
  } else {
    nlohmann::json arr = nlohmann::json::array();
    const auto& v = state.as<Custom>().vector.amplitudes;
    for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back({v[k].real(), v[k].imag()});
    j["amplitudes"] = arr;
  }
  return j;
}

FieldState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

}  // namespace acoh
