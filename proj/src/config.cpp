#include "config.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace plasmon::config {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw Error(ErrorKind::Config, "config", where, message);
}

double number(const json& v, const std::string& where, const char* key) {
  if (!v.is_number()) fail(where, std::string("'") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, std::string("'") + key + "' must be finite");
  return x;
}

int integer(const json& v, const std::string& where, const char* key) {
  if (!v.is_number_integer()) fail(where, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& v, const std::string& where, const char* key) {
  if (!v.is_array()) fail(where, std::string("'") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, where, key));
  return out;
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) fail(where, "unknown key '" + item.key() + "'");
  }
}

curve::CurveParam parse_curve(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail("curve", "expected an object with a string 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "circle") {
      require_keys(j, {"kind", "radius"}, "curve");
      return curve::CurveParam::circle(j.contains("radius") ? number(j["radius"], "curve", "radius") : 1.0);
    }
    if (kind == "ellipse") {
      require_keys(j, {"kind", "a", "b"}, "curve");
      if (!j.contains("a") || !j.contains("b")) fail("curve", "ellipse needs 'a' and 'b'");
      return curve::CurveParam::ellipse(number(j["a"], "curve", "a"), number(j["b"], "curve", "b"));
    }
    if (kind == "fourier") {
      require_keys(j, {"kind", "cos", "sin"}, "curve");
      json coeffs = j;
      coeffs.erase("kind");
      return curve::CurveParam::radial(parse_series(coeffs, "curve"));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail("curve", e.detail());
  }
  fail("curve", "unknown curve kind '" + kind + "' (expected circle, ellipse or fourier)");
}

TrigSeries parse_series(const json& j, const std::string& where) {
  require_keys(j, {"cos", "sin"}, where);
  const std::vector<double> c = j.contains("cos") ? numbers(j["cos"], where, "cos") : std::vector<double>{};
  const std::vector<double> s = j.contains("sin") ? numbers(j["sin"], where, "sin") : std::vector<double>{};
  return TrigSeries(c, s);
}

json series_json(const TrigSeries& s) {
  return json{{"cos", s.cos_coeffs()}, {"sin", s.sin_coeffs()}};
}

sphere::SHField parse_sh_field(const json& j) {
  require_keys(j, {"L", "coeffs"}, "shape");
  if (!j.contains("L")) fail("shape", "missing band limit 'L'");
  const int L = integer(j["L"], "shape", "L");
  if (L < 0) fail("shape", "band limit 'L' must be non-negative");
  sphere::SHField f(L);
  if (!j.contains("coeffs")) return f;
  if (!j["coeffs"].is_array()) fail("shape", "'coeffs' must be an array");
  for (const auto& c : j["coeffs"]) {
    require_keys(c, {"l", "m", "c"}, "shape");
    if (!c.contains("l") || !c.contains("m") || !c.contains("c")) fail("shape", "each coefficient needs l, m and c");
    const int l = integer(c["l"], "shape", "l"), m = integer(c["m"], "shape", "m");
    if (l < 0 || l > L || std::abs(m) > l) fail("shape", "coefficient index outside 0 <= |m| <= l <= L");
    f(l, m) += number(c["c"], "shape", "c");
  }
  return f;
}

json sh_field_json(const sphere::SHField& f) {
  json coeffs = json::array();
  for (int l = 0; l <= f.L; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (f(l, m) != 0.0) coeffs.push_back({{"l", l}, {"m", m}, {"c", f(l, m)}});
    }
  }
  return json{{"L", f.L}, {"coeffs", coeffs}};
}

int get_int(const json& j, const char* key, int fallback) {
  return j.contains(key) ? integer(j[key], "config", key) : fallback;
}

double get_double(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j[key], "config", key) : fallback;
}

bool get_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) fail("config", std::string("'") + key + "' must be a boolean");
  return j[key].get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) fail("config", std::string("'") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::vector<double> get_double_list(const json& j, const char* key, const std::vector<double>& fallback) {
  return j.contains(key) ? numbers(j[key], "config", key) : fallback;
}

}  // namespace plasmon::config
