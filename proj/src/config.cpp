#include "sinegas/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sinegas {

namespace {

std::map<std::string, std::function<void(Config&, const std::string&)>> setters() {
  auto d = [](double Config::* f) {
    return [f](Config& c, const std::string& v) { c.*f = std::stod(v); };
  };
  auto i = [](int Config::* f) {
    return [f](Config& c, const std::string& v) { c.*f = std::stoi(v); };
  };
  return {
      {"s0", d(&Config::s0)},
      {"delta", d(&Config::delta)},
      {"t0", d(&Config::t0)},
      {"c_gap", d(&Config::c_gap)},
      {"c1", d(&Config::c1)},
      {"c2", d(&Config::c2)},
      {"C0", d(&Config::C0)},
      {"cJ", d(&Config::cJ)},
      {"det_tol", d(&Config::det_tol)},
      {"nystrom_factor", d(&Config::nystrom_factor)},
      {"nystrom_pad", i(&Config::nystrom_pad)},
      {"dd_v_threshold", d(&Config::dd_v_threshold)},
      {"tail_modes", i(&Config::tail_modes)},
      {"tail_u_min", d(&Config::tail_u_min)},
      {"tail_cheb", i(&Config::tail_cheb)},
      {"scan_jobs", i(&Config::scan_jobs)},
  };
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
  Config c;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  auto set = setters();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: bad line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto it = set.find(key);
    if (it == set.end())
      throw std::runtime_error("config: unknown key '" + key + "'");
    it->second(c, val);
  }
  c.apply_env();
  return c;
}

void Config::apply_env() {
  for (auto& [key, setter] : setters()) {
    std::string env = "SINEGAS_";
    for (char ch : key) env += static_cast<char>(std::toupper(ch));
    if (const char* val = std::getenv(env.c_str())) setter(*this, val);
  }
}

int Config::order_for(double s) const {
  return static_cast<int>(
             std::ceil(nystrom_factor * (2.0 * s / std::numbers::pi))) +
         nystrom_pad;
}

}  // namespace sinegas
