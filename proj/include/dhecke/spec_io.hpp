#pragma once

// JSON encoding of group specs, parameter points, scalars and reports.
//
// Scalars are accepted either as a literal string understood by
// parse_scalar ("1/2", "z4", "1 - 2*z3^2"), as a JSON integer, or as an
// array of power-basis coefficient strings relative to the spec conductor.
// They are always emitted in the array form.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhecke/kappa_space.hpp"
#include "dhecke/pbw_engine.hpp"
#include "dhecke/poly.hpp"

namespace dhecke {

using Json = nlohmann::json;

struct ParamInput {
  ParamPoint point;
  /// Per-element c values. When present they replace `point.c` and may
  /// break conjugation invariance on purpose.
  std::optional<std::map<std::size_t, CycNum>> c_by_element;
};

struct GroupSpec {
  std::string name;
  int conductor = 1;
  std::size_t dim = 0;
  std::size_t cap = kDefaultGroupCap;
  std::vector<Mat> generators;
  std::optional<ParamInput> params;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);
};

/// Throws InputError naming the offending JSON location.
GroupSpec parse_group_spec(const Json& j);
GroupSpec load_group_spec(const std::string& path);
Json to_json(const GroupSpec& spec);

ParamInput parse_params(const Json& j, int conductor);
Json params_to_json(const ParamPoint& p, int conductor);

CycNum parse_scalar_json(const Json& j, int conductor, const std::string& where);
/// Coefficient strings of x embedded in Q(zeta_m); m must be a multiple of
/// x's conductor.
Json scalar_to_json(const CycNum& x, int conductor);

/// Closure honoring the spec cap, overridden by DH_MAX_GROUP_ORDER if set.
Group build_group(const GroupSpec& spec);
std::size_t effective_cap(const GroupSpec& spec);

Json matrix_to_json(const Mat& m, int conductor);
Json kappa_to_json(const KappaMap& k, int conductor);
Json poly_to_json(const Poly& p, std::size_t dim, int conductor);
Json algebra_to_json(const AlgebraElement& x, std::size_t dim, int conductor);

/// Smallest conductor holding the spec conductor and every value in p.
int report_conductor(int base, const ParamPoint& p);

}  // namespace dhecke
