#include "ptheta/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ptheta {

using nlohmann::json;

cd parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object() && j.contains("re")) {
    double re = j.at("re").is_number() ? j.at("re").get<double>() : throw InputError(field + ".re", "not a number");
    double im = 0.0;
    if (j.contains("im")) {
      if (!j.at("im").is_number()) throw InputError(field + ".im", "not a number");
      im = j.at("im").get<double>();
    }
    return {re, im};
  }
  throw InputError(field, "expected a number, [re, im] or {\"re\":..,\"im\":..}");
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

namespace {

double positive(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field, "not a number");
  double v = j.get<double>();
  if (!(v > 0.0)) throw InputError(field, "must be positive");
  return v;
}

int integer(const json& j, const std::string& field, int lo) {
  if (!j.is_number_integer()) throw InputError(field, "not an integer");
  int v = j.get<int>();
  if (v < lo) throw InputError(field, "must be at least " + std::to_string(lo));
  return v;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw InputError("$", "document must be a JSON object");
  RunConfig c;
  c.source = doc;
  if (!doc.contains("germ")) throw InputError("germ", "missing");
  const json& g = doc.at("germ");
  if (!g.is_object()) throw InputError("germ", "must be an object");
  if (g.contains("type")) {
    if (!g.at("type").is_string()) throw InputError("germ.type", "not a string");
    c.germ.type = g.at("type").get<std::string>();
  }
  if (g.contains("N")) c.germ.N = integer(g.at("N"), "germ.N", 4);
  if (c.germ.type == "model") {
    if (!g.contains("k")) throw InputError("germ.k", "missing");
    c.germ.k = integer(g.at("k"), "germ.k", 1);
    if (!g.contains("a")) throw InputError("germ.a", "missing");
    c.germ.a = parse_complex(g.at("a"), "germ.a");
    if (c.germ.a == cd(0.0)) throw InputError("germ.a", "must be nonzero");
  } else if (c.germ.type == "polynomial") {
    if (!g.contains("coeffs")) throw InputError("germ.coeffs", "missing");
    const json& cs = g.at("coeffs");
    if (!cs.is_array() || cs.empty()) throw InputError("germ.coeffs", "must be a non-empty array");
    for (std::size_t i = 0; i < cs.size(); ++i)
      c.germ.coeffs.push_back(parse_complex(cs[i], "germ.coeffs[" + std::to_string(i) + "]"));
    if (std::abs(c.germ.coeffs[0] - 1.0) > 0) throw InputError("germ.coeffs[0]", "linear coefficient must be 1");
  } else {
    throw InputError("germ.type", "must be \"model\" or \"polynomial\"");
  }
  if (doc.contains("x0")) c.x0 = parse_complex(doc.at("x0"), "x0");
  if (doc.contains("M")) c.M = integer(doc.at("M"), "M", 2);
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) throw InputError("tolerances", "must be an object");
    if (t.contains("quad_tol")) c.tol.quad_tol = positive(t.at("quad_tol"), "tolerances.quad_tol");
    if (t.contains("fatou_tol")) c.tol.fatou_tol = positive(t.at("fatou_tol"), "tolerances.fatou_tol");
    if (t.contains("fourier_tol")) c.tol.fourier_tol = positive(t.at("fourier_tol"), "tolerances.fourier_tol");
  }
  if (doc.contains("s_grid")) {
    const json& s = doc.at("s_grid");
    if (!s.is_array() || s.empty()) throw InputError("s_grid", "must be a non-empty array");
    for (std::size_t i = 0; i < s.size(); ++i) c.s_grid.push_back(parse_complex(s[i], "s_grid[" + std::to_string(i) + "]"));
  } else {
    for (double re : {0.5, 1.0}) c.s_grid.push_back(re);
    c.s_grid.push_back(cd(-1.0, 3.14159));
  }
  if (doc.contains("eps_ladder")) {
    const json& e = doc.at("eps_ladder");
    if (!e.is_array() || e.empty()) throw InputError("eps_ladder", "must be a non-empty array");
    for (std::size_t i = 0; i < e.size(); ++i) c.eps_ladder.push_back(positive(e[i], "eps_ladder[" + std::to_string(i) + "]"));
  }
  if (doc.contains("modes")) c.modes = integer(doc.at("modes"), "modes", 1);
  if (doc.contains("H")) c.H = positive(doc.at("H"), "H");
  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) throw InputError("out", "not a string");
    c.out = doc.at("out").get<std::string>();
  }
  return c;
}

void apply_override(json& doc, const std::string& key, const std::string& value) {
  json v;
  try {
    v = json::parse(value);
  } catch (const json::parse_error&) {
    v = value;
  }
  json* cur = &doc;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw InputError(key, "empty override key");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*cur)[parts[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw InputError(key, "cannot descend into a non-object");
    cur = &next;
  }
  (*cur)[parts.back()] = v;
}

RunConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw InputError("germ_path", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("$", std::string("malformed JSON: ") + e.what());
  }
  for (const auto& [k, v] : overrides) apply_override(doc, k, v);
  return parse_config(doc);
}

ParabolicGerm build_germ(const GermSpec& g) {
  if (g.type == "model") return model_of(g.k, g.a, g.N);
  return from_coefficients(g.coeffs, g.N);
}

std::uint64_t config_hash(const json& doc) {
  // FNV-1a over the canonical dump (keys are sorted by nlohmann::json).
  std::string s = doc.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const EVModulus& M) {
  json arr = json::array();
  for (const auto& e : M.entries) {
    json j;
    j["j"] = e.j;
    j["omega_multiple"] = e.m;
    j["A"] = complex_json(e.A);
    j["method"] = M.method;
    j["C_normalization"] = complex_json(M.normalization);
    j["error"] = e.error;
    j["below_floor"] = e.below_floor;
    arr.push_back(j);
  }
  return arr;
}

EVModulus modulus_from_json(const json& j) {
  if (!j.is_array()) throw InputError("modulus", "expected an array of entries");
  EVModulus M;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string f = "modulus[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_object()) throw InputError(f, "entry must be an object");
    for (const char* key : {"j", "omega_multiple", "A", "method", "C_normalization"})
      if (!e.contains(key)) throw InputError(f + "." + key, "missing");
    EVEntry x;
    x.j = integer(e.at("j"), f + ".j", 1);
    if (!e.at("omega_multiple").is_number_integer()) throw InputError(f + ".omega_multiple", "not an integer");
    x.m = e.at("omega_multiple").get<int>();
    x.A = parse_complex(e.at("A"), f + ".A");
    if (e.contains("error") && e.at("error").is_number()) x.error = e.at("error").get<double>();
    if (e.contains("below_floor") && e.at("below_floor").is_boolean()) x.below_floor = e.at("below_floor").get<bool>();
    M.method = e.at("method").get<std::string>();
    M.normalization = parse_complex(e.at("C_normalization"), f + ".C_normalization");
    M.entries.push_back(x);
  }
  return M;
}

std::string format_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, const RunConfig& cfg, const std::vector<std::string>& columns)
    : os_(os), cols_(columns.size()) {
  os_ << "# config_hash=" << hex(config_hash(cfg.source)) << " quad_tol=" << format_double(cfg.tol.quad_tol)
      << " fatou_tol=" << format_double(cfg.tol.fatou_tol) << " fourier_tol=" << format_double(cfg.tol.fourier_tol)
      << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n';
}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != cols_) throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
  os_ << '\n';
  return *this;
}

}  // namespace ptheta
