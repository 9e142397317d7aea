#include "dhecke/matgroup.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "dhecke/error.hpp"

namespace dhecke {

Group close_generators(std::span<const Mat> gens, std::size_t cap, std::string name) {
  if (gens.empty()) throw InputError("at least one generator is required");
  const std::size_t n = gens.front().rows();
  int m = 1;
  for (const Mat& g : gens) {
    if (!g.square() || g.rows() != n) throw InputError("generators must be square of equal size");
    for (const CycNum& x : g.entries()) m = lcm_conductor(m, x.conductor());
  }
  std::vector<Mat> gs;
  for (const Mat& g : gens) {
    if (det(g).is_zero()) throw InputError("singular generator " + g.to_string());
    gs.push_back(g.coerce(m));
  }

  Group grp;
  grp.name = std::move(name);
  grp.dim = n;
  grp.conductor = m;

  std::unordered_map<Mat, std::size_t, MatHash> index;
  auto insert = [&](Mat mat) -> std::pair<std::size_t, bool> {
    auto [it, fresh] = index.try_emplace(mat, grp.elements.size());
    if (fresh) {
      if (grp.elements.size() >= cap) {
        throw CapExceeded("group closure exceeded " + std::to_string(cap) +
                          " elements (infinite or too large)");
      }
      grp.elements.push_back(std::move(mat));
    }
    return {it->second, fresh};
  };

  insert(Mat::identity(n).coerce(m));
  for (const Mat& g : gs) {
    const std::size_t idx = insert(g).first;
    if (idx != 0 && std::find(grp.generators.begin(), grp.generators.end(), idx) == grp.generators.end()) {
      grp.generators.push_back(idx);
    }
  }

  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < grp.elements.size(); ++i) queue.push_back(i);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t gi : grp.generators) {
      auto [idx, fresh] = insert((grp.elements[cur] * grp.elements[gi]).coerce(m));
      if (fresh) queue.push_back(idx);
    }
  }

  const std::size_t order = grp.elements.size();
  grp.mult.assign(order, std::vector<std::uint32_t>(order));
  grp.inv.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      auto it = index.find((grp.elements[a] * grp.elements[b]).coerce(m));
      if (it == index.end()) throw InternalError("closure is not closed under products");
      grp.mult[a][b] = static_cast<std::uint32_t>(it->second);
      if (it->second == 0) grp.inv[a] = static_cast<std::uint32_t>(b);
    }
  }

  grp.class_of.assign(order, order);
  for (std::size_t s = 0; s < order; ++s) {
    if (grp.class_of[s] != order) continue;
    std::vector<std::size_t> cls;
    for (std::size_t g = 0; g < order; ++g) cls.push_back(grp.conj(s, g));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (std::size_t x : cls) grp.class_of[x] = grp.classes.size();
    grp.classes.push_back(std::move(cls));
  }
  return grp;
}

std::vector<std::size_t> centralizer(const Group& grp, std::size_t s) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < grp.order(); ++g) {
    if (grp.mul(g, s) == grp.mul(s, g)) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> generated_subgroup(const Group& grp, std::span<const std::size_t> seeds) {
  std::vector<bool> in(grp.order(), false);
  in[0] = true;
  std::vector<std::size_t> members{0};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t s : seeds) {
      const std::size_t x = grp.mul(members[i], s);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

FixedMoved fixed_and_moved(const Group& grp, std::size_t g) {
  const Mat id_minus = Mat::identity(grp.dim) - grp.matrix(g);
  FixedMoved fm{kernel_basis(id_minus), column_space_basis(id_minus)};
  std::vector<Vec> all = fm.fixed;
  all.insert(all.end(), fm.moved.begin(), fm.moved.end());
  if (all.size() != grp.dim || rank(Mat::from_columns(all, grp.dim)) != grp.dim) {
    throw InternalError("fixed and moved spaces are not complementary");
  }
  return fm;
}

std::size_t codim_fixed(const Group& grp, std::size_t g) {
  return rank(Mat::identity(grp.dim) - grp.matrix(g));
}

}  // namespace dhecke
