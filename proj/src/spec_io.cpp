#include "dhecke/spec_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dhecke/error.hpp"

namespace dhecke {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::size_t parse_index(const std::string& text, const std::string& where) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw InputError(where + ": expected an element index, got \"" + text + "\"");
  return static_cast<std::size_t>(v);
}

}  // namespace

CycNum parse_scalar_json(const Json& j, int conductor, const std::string& where) {
  try {
    if (j.is_number_integer()) return CycNum(j.get<long long>()).coerce(conductor);
    if (j.is_string()) return parse_scalar(j.get<std::string>(), conductor);
    if (j.is_array()) {
      std::vector<std::string> parts;
      for (const Json& x : j) {
        if (!x.is_string()) throw InputError("coefficient arrays must hold strings");
        parts.push_back(x.get<std::string>());
      }
      return cyc_from_strings(conductor, parts);
    }
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a scalar (string, integer or coefficient array)");
}

Json scalar_to_json(const CycNum& x, int conductor) {
  Json out = Json::array();
  for (const auto& s : x.coerce(conductor).to_coeff_strings()) out.push_back(s);
  return out;
}

ParamInput parse_params(const Json& j, int conductor) {
  if (!j.is_object()) throw InputError("params: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "t" && key != "c" && key != "c_by_element") {
      throw InputError("params: unknown field \"" + key + "\"");
    }
  }
  ParamInput in;
  if (j.contains("t")) {
    const Json& t = j.at("t");
    if (!t.is_array()) throw InputError("params.t: expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      in.point.t.push_back(parse_scalar_json(t[i], conductor, "params.t[" + std::to_string(i) + "]"));
    }
  }
  auto parse_map = [&](const char* field) {
    std::map<std::size_t, CycNum> out;
    const Json& c = j.at(field);
    if (!c.is_object()) throw InputError(std::string("params.") + field + ": expected an object");
    for (const auto& [key, value] : c.items()) {
      const std::string where = std::string("params.") + field + "." + key;
      out[parse_index(key, where)] = parse_scalar_json(value, conductor, where);
    }
    return out;
  };
  if (j.contains("c")) in.point.c = parse_map("c");
  if (j.contains("c_by_element")) in.c_by_element = parse_map("c_by_element");
  return in;
}

Json params_to_json(const ParamPoint& p, int conductor) {
  Json out = Json::object();
  out["t"] = Json::array();
  for (const CycNum& x : p.t) out["t"].push_back(scalar_to_json(x, conductor));
  out["c"] = Json::object();
  for (const auto& [rep, v] : p.c) out["c"][std::to_string(rep)] = scalar_to_json(v, conductor);
  return out;
}

GroupSpec parse_group_spec(const Json& j) {
  if (!j.is_object()) throw InputError("spec: expected a JSON object");
  GroupSpec spec;
  const Json& m = require(j, "conductor", "spec");
  if (!m.is_number_integer() || m.get<long long>() < 1) throw InputError("spec.conductor: expected a positive integer");
  if (m.get<long long>() > conductor_cap()) throw InputError("spec.conductor: exceeds the conductor cap");
  spec.conductor = m.get<int>();

  const Json& n = require(j, "dim", "spec");
  if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > static_cast<long long>(kMaxDim)) {
    throw InputError("spec.dim: expected an integer in [1, " + std::to_string(kMaxDim) + "]");
  }
  spec.dim = n.get<std::size_t>();

  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InputError("spec.name: expected a string");
    spec.name = j.at("name").get<std::string>();
  }
  if (j.contains("cap")) {
    const Json& cap = j.at("cap");
    if (!cap.is_number_integer() || cap.get<long long>() < 1) throw InputError("spec.cap: expected a positive integer");
    spec.cap = cap.get<std::size_t>();
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "conductor" && key != "dim" && key != "name" && key != "cap" && key != "generators" &&
        key != "params") {
      throw InputError("spec: unknown field \"" + key + "\"");
    }
  }

  const Json& gens = require(j, "generators", "spec");
  if (!gens.is_array()) throw InputError("spec.generators: expected an array of matrices");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string gw = "spec.generators[" + std::to_string(g) + "]";
    const Json& rows = gens[g];
    if (!rows.is_array() || rows.size() != spec.dim) {
      throw InputError(gw + ": expected " + std::to_string(spec.dim) + " rows");
    }
    Mat mat(spec.dim, spec.dim);
    for (std::size_t r = 0; r < spec.dim; ++r) {
      const std::string rw = gw + "[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != spec.dim) {
        throw InputError(rw + ": expected " + std::to_string(spec.dim) + " entries");
      }
      for (std::size_t c = 0; c < spec.dim; ++c) {
        mat(r, c) = parse_scalar_json(rows[r][c], spec.conductor, rw + "[" + std::to_string(c) + "]");
        if (spec.conductor % mat(r, c).conductor() != 0) {
          throw InputError(rw + "[" + std::to_string(c) + "]: entry does not lie in Q(zeta_" +
                           std::to_string(spec.conductor) + ")");
        }
        mat(r, c) = mat(r, c).coerce(spec.conductor);
      }
    }
    spec.generators.push_back(std::move(mat));
  }
  if (spec.generators.empty()) spec.generators.push_back(Mat::identity(spec.dim).coerce(spec.conductor));

  if (j.contains("params")) spec.params = parse_params(j.at("params"), spec.conductor);
  return spec;
}

GroupSpec load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_group_spec(j);
}

Json to_json(const GroupSpec& spec) {
  Json out = Json::object();
  out["name"] = spec.name;
  out["conductor"] = spec.conductor;
  out["dim"] = spec.dim;
  out["cap"] = spec.cap;
  out["generators"] = Json::array();
  for (const Mat& g : spec.generators) out["generators"].push_back(matrix_to_json(g, spec.conductor));
  if (spec.params) {
    Json p = params_to_json(spec.params->point, spec.conductor);
    if (spec.params->c_by_element) {
      p["c_by_element"] = Json::object();
      for (const auto& [g, v] : *spec.params->c_by_element) {
        p["c_by_element"][std::to_string(g)] = scalar_to_json(v, spec.conductor);
      }
    }
    out["params"] = std::move(p);
  }
  return out;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  auto same_params = [](const std::optional<ParamInput>& x, const std::optional<ParamInput>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->point.t == y->point.t && x->point.c == y->point.c && x->c_by_element == y->c_by_element;
  };
  return a.name == b.name && a.conductor == b.conductor && a.dim == b.dim && a.cap == b.cap &&
         a.generators == b.generators && same_params(a.params, b.params);
}

std::size_t effective_cap(const GroupSpec& spec) {
  if (const char* env = std::getenv("DH_MAX_GROUP_ORDER")) {
    const std::string text(env);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size() || v == 0) {
      throw InputError("DH_MAX_GROUP_ORDER must be a positive integer, got \"" + text + "\"");
    }
    return static_cast<std::size_t>(v);
  }
  return spec.cap;
}

Group build_group(const GroupSpec& spec) {
  Group grp = close_generators(spec.generators, effective_cap(spec), spec.name);
  grp.conductor = spec.conductor;
  return grp;
}

Json matrix_to_json(const Mat& m, int conductor) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c), conductor));
    out.push_back(std::move(row));
  }
  return out;
}

Json kappa_to_json(const KappaMap& k, int conductor) {
  Json out = Json::array();
  for (std::size_t i = 0; i < k.dim(); ++i) {
    for (std::size_t j = i + 1; j < k.dim(); ++j) {
      Json terms = Json::array();
      for (const auto& [g, c] : k.support(i, j)) {
        terms.push_back(Json{{"g", g}, {"coeff", scalar_to_json(c, conductor)}});
      }
      if (terms.empty()) continue;
      out.push_back(Json{{"i", i}, {"j", j}, {"terms", std::move(terms)}});
    }
  }
  return out;
}

Json poly_to_json(const Poly& p, std::size_t dim, int conductor) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.sorted_terms()) {
    std::vector<unsigned> exps(dim);
    for (std::size_t i = 0; i < dim; ++i) exps[i] = m.exponent(i);
    terms.push_back(Json{{"exponents", exps}, {"coeff", scalar_to_json(c, conductor)}});
  }
  return Json{{"text", p.to_string(dim)}, {"terms", std::move(terms)}};
}

Json algebra_to_json(const AlgebraElement& x, std::size_t dim, int conductor) {
  Json terms = Json::array();
  for (const auto& t : x.sorted_terms()) {
    std::vector<unsigned> exps(dim);
    for (std::size_t i = 0; i < dim; ++i) exps[i] = t.mono.exponent(i);
    terms.push_back(Json{{"exponents", exps}, {"g", t.group}, {"coeff", scalar_to_json(t.coeff, conductor)}});
  }
  return Json{{"text", x.to_string(dim)}, {"terms", std::move(terms)}};
}

int report_conductor(int base, const ParamPoint& p) {
  int m = base;
  for (const CycNum& x : p.t) m = lcm_conductor(m, x.conductor());
  for (const auto& [rep, x] : p.c) m = lcm_conductor(m, x.conductor());
  return m;
}

}  // namespace dhecke
