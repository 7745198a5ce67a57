#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptheta/germ.hpp"
#include "ptheta/invariants.hpp"

namespace ptheta {

// Bad input; `field` names the offending JSON path.
struct InputError : std::runtime_error {
  InputError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field(field) {}
  std::string field;
};

struct GermSpec {
  std::string type = "polynomial";  // "polynomial" or "model"
  std::vector<cd> coeffs;           // coefficients of x, x^2, ... (polynomial)
  int k = 1;                        // model
  cd a = -1.0;                      // model
  int N = 60;
};

struct Tolerances {
  double quad_tol = 1e-10;
  double fatou_tol = 1e-16;
  double fourier_tol = 1e-6;
};

struct RunConfig {
  GermSpec germ;
  cd x0 = 0.1;
  int M = 1000;
  Tolerances tol;
  std::vector<cd> s_grid;
  std::vector<double> eps_ladder;
  int modes = 1;
  double H = 2.0;
  std::string out = ".";
  nlohmann::json source;  // the document as read, after overrides
};

cd parse_complex(const nlohmann::json& j, const std::string& field);
nlohmann::json complex_json(cd z);

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides = {});
// Applies "a.b.c" = value overrides; values parse as JSON when possible, else as strings.
void apply_override(nlohmann::json& doc, const std::string& key, const std::string& value);

ParabolicGerm build_germ(const GermSpec& g);

std::uint64_t config_hash(const nlohmann::json& doc);
std::string hex(std::uint64_t h);

nlohmann::json to_json(const EVModulus& M);
EVModulus modulus_from_json(const nlohmann::json& j);

// CSV with a leading comment row carrying the config hash and tolerances.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const RunConfig& cfg, const std::vector<std::string>& columns);
  CsvWriter& row(const std::vector<double>& values);

 private:
  std::ostream& os_;
  std::size_t cols_;
};

std::string format_double(double v);

}  // namespace ptheta
