#pragma once

#include <initializer_list>
#include <json.hpp>
#include <string>
#include <vector>

#include "curve2d.hpp"
#include "sphere3d.hpp"

namespace plasmon::config {

using json = nlohmann::json;

/// Throws a config error naming `where` if `j` is not an object or has keys outside `allowed`.
void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

/// {"kind":"circle","radius":R} | {"kind":"ellipse","a":A,"b":B} | {"kind":"fourier","cos":[...],"sin":[...]}
curve::CurveParam parse_curve(const json& j);

/// {"cos":[...],"sin":[...]}; the sine list starts at sin(t).
TrigSeries parse_series(const json& j, const std::string& where);
json series_json(const TrigSeries& s);

/// {"L":L,"coeffs":[{"l":l,"m":m,"c":c},...]}
sphere::SHField parse_sh_field(const json& j);
json sh_field_json(const sphere::SHField& f);

int get_int(const json& j, const char* key, int fallback);
double get_double(const json& j, const char* key, double fallback);
bool get_bool(const json& j, const char* key, bool fallback);
std::string get_string(const json& j, const char* key, const std::string& fallback);
std::vector<double> get_double_list(const json& j, const char* key, const std::vector<double>& fallback);

}  // namespace plasmon::config
