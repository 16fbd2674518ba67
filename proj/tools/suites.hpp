#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qloop/coeffs.hpp"
#include "qloop/matrix.hpp"
#include "qloop/weyl.hpp"

namespace qloop::cli {

using json = nlohmann::ordered_json;

struct Config {
  int M = 2, N = 1;
  std::string a = "a", b = "b";  // evaluation points; any scalar expression
  int window = 2;
  int order = 6;
  int degree_bound = 3;
  int height = 3;  // pbw-rank
  int nmax = 4;    // appendix-a
  int count = 20;  // monoid
  std::uint64_t seed = 2024;
  std::string Q = "1,-2,1", Pprev = "1";  // weyl-slice
  std::string out;
  json to_json() const;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Check {
  std::string name;
  bool pass = false;
  json witness;
};

const std::vector<std::string>& suite_names();
// Throws ConfigError for invalid or unsupported configurations.
std::vector<Check> run_suite(const std::string& suite, const Config& cfg);
json report(const std::string& suite, const Config& cfg, const std::vector<Check>& checks);

json to_json(const Scalar& s);
json to_json(const ZPoly& p);
json to_json(const Matrix& m);
json to_json(const TorsionTriple& t);
json to_json(const HighestWeightData& h);

// "1,-2,1" -> 1 - 2z + z^2; entries are scalar expressions.
ZPoly parse_poly(const std::string& s);

}  // namespace qloop::cli
