#pragma once

// Finite matrix groups enumerated from generators.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dhecke/linalg.hpp"

namespace dhecke {

inline constexpr std::size_t kDefaultGroupCap = 2000;

/// Closed finite subgroup of GL_n over Q(zeta_m). Index 0 is the identity.
struct Group {
  std::string name;
  std::size_t dim = 0;
  int conductor = 1;
  std::vector<Mat> elements;
  std::vector<std::size_t> generators;  // element indices, deduplicated, identity dropped
  std::vector<std::vector<std::uint32_t>> mult;  // mult[a][b] = index of a*b
  std::vector<std::uint32_t> inv;
  std::vector<std::vector<std::size_t>> classes;  // sorted; ordered by smallest member
  std::vector<std::size_t> class_of;

  std::size_t order() const { return elements.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return mult[a][b]; }
  /// g^{-1} s g
  std::size_t conj(std::size_t s, std::size_t g) const { return mult[mult[inv[g]][s]][g]; }
  const Mat& matrix(std::size_t g) const { return elements[g]; }
};

/// Breadth-first closure. Throws CapExceeded when more than `cap` elements
/// appear and InputError for singular or ill-shaped generators.
Group close_generators(std::span<const Mat> gens, std::size_t cap = kDefaultGroupCap,
                       std::string name = {});

std::vector<std::size_t> centralizer(const Group& g, std::size_t s);

/// Smallest subgroup containing `seeds`. When seeds is conjugation-closed
/// the result is the normal closure.
std::vector<std::size_t> generated_subgroup(const Group& g, std::span<const std::size_t> seeds);

struct FixedMoved {
  std::vector<Vec> fixed;  // basis of ker(id - g)
  std::vector<Vec> moved;  // basis of im(id - g)
};

/// Exact bases of ker(id - g) and im(id - g); throws InternalError if they
/// fail to be complementary.
FixedMoved fixed_and_moved(const Group& grp, std::size_t g);

/// rank(id - g)
std::size_t codim_fixed(const Group& grp, std::size_t g);

}  // namespace dhecke
