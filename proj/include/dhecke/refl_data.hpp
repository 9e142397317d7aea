#pragma once

// Bireflections, the admissible subset S', the forms Omega_s and the space
// of G-invariant skew forms.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "dhecke/matgroup.hpp"

namespace dhecke {

/// Skew bilinear form (v, w) -> v^T B w.
struct SkewForm {
  Mat matrix;

  CycNum operator()(std::span<const CycNum> v, std::span<const CycNum> w) const;
  CycNum on_basis(std::size_t i, std::size_t j) const { return matrix(i, j); }
  bool is_skew() const;
  /// The pulled-back form (v, w) -> B(g v, g w), i.e. g^T B g.
  SkewForm pullback(const Mat& g) const;

  friend bool operator==(const SkewForm& a, const SkewForm& b) { return a.matrix == b.matrix; }
};

struct SprimeClass {
  std::size_t rep;                    // smallest element index in the class
  std::vector<std::size_t> elements;  // sorted
};

struct ReflectionData {
  std::vector<std::size_t> bireflections;
  std::vector<std::size_t> sprime;
  std::vector<std::size_t> s_subgroup;
  std::vector<SprimeClass> sprime_classes;
  std::map<std::size_t, SkewForm> omega;
  std::vector<SkewForm> invariant_forms;

  std::size_t N() const { return invariant_forms.size(); }
  bool g_equals_s(const Group& grp) const { return s_subgroup.size() == grp.order(); }
  /// Index into sprime_classes of the class holding s, or npos.
  std::size_t class_index(std::size_t s) const;
};

std::vector<std::size_t> bireflections(const Group& grp);

/// Keeps s when every centralizer element acts with determinant 1 on im(id - s).
std::vector<std::size_t> sprime(const Group& grp, std::span<const std::size_t> bireflections);

/// Omega_s for every s in S'. One representative per class is normalized so
/// that Omega_s(u1, u2) = 1 on the column-echelon basis of im(id - s);
/// conjugates are obtained by Omega_{g^-1 s g}(v, w) = Omega_s(g v, g w) and
/// checked against every conjugating element.
std::map<std::size_t, SkewForm> omega_forms(const Group& grp, std::span<const std::size_t> sprime);

/// Echelon-normalized basis of the G-invariant skew forms.
std::vector<SkewForm> invariant_two_forms(const Group& grp);

ReflectionData compute_reflection_data(const Group& grp);

}  // namespace dhecke
