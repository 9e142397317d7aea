#include "dhecke/refl_data.hpp"

#include <algorithm>

#include "dhecke/error.hpp"

namespace dhecke {

namespace {

bool conjugation_closed(const Group& grp, std::span<const std::size_t> set) {
  std::vector<bool> in(grp.order(), false);
  for (auto s : set) in[s] = true;
  for (auto s : set) {
    for (std::size_t g = 0; g < grp.order(); ++g) {
      if (!in[grp.conj(s, g)]) return false;
    }
  }
  return true;
}

// Coordinates of each g*u_k in the basis (u_1, u_2); throws if g does not
// preserve the plane.
Mat restrict_to_plane(const Mat& g, std::span<const Vec> plane) {
  const std::size_t n = g.rows();
  const Mat basis = Mat::from_columns(plane, n);
  Mat out(plane.size(), plane.size());
  for (std::size_t k = 0; k < plane.size(); ++k) {
    const Vec image = g * plane[k];
    Vec coords;
    if (!solve(basis, image, coords)) {
      throw InternalError("centralizer element does not preserve im(id - s)");
    }
    for (std::size_t r = 0; r < plane.size(); ++r) out(r, k) = coords[r];
  }
  return out;
}

}  // namespace

CycNum SkewForm::operator()(std::span<const CycNum> v, std::span<const CycNum> w) const {
  return dot(v, matrix * w);
}

bool SkewForm::is_skew() const { return (matrix + matrix.transpose()).is_zero(); }

SkewForm SkewForm::pullback(const Mat& g) const { return SkewForm{g.transpose() * matrix * g}; }

std::size_t ReflectionData::class_index(std::size_t s) const {
  for (std::size_t i = 0; i < sprime_classes.size(); ++i) {
    const auto& els = sprime_classes[i].elements;
    if (std::binary_search(els.begin(), els.end(), s)) return i;
  }
  return static_cast<std::size_t>(-1);
}

std::vector<std::size_t> bireflections(const Group& grp) {
  std::vector<std::size_t> out;
  for (std::size_t g = 1; g < grp.order(); ++g) {
    if (codim_fixed(grp, g) == 2) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> sprime(const Group& grp, std::span<const std::size_t> birefl) {
  std::vector<std::size_t> out;
  for (std::size_t s : birefl) {
    const FixedMoved fm = fixed_and_moved(grp, s);
    if (fm.moved.size() != 2) throw InternalError("bireflection with moved space of dim != 2");
    bool keep = true;
    for (std::size_t g : centralizer(grp, s)) {
      if (!det(restrict_to_plane(grp.matrix(g), fm.moved)).is_one()) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(s);
  }
  if (!conjugation_closed(grp, out)) throw InternalError("S' is not closed under conjugation");
  return out;
}

std::map<std::size_t, SkewForm> omega_forms(const Group& grp, std::span<const std::size_t> sp) {
  const std::size_t n = grp.dim;
  std::map<std::size_t, SkewForm> forms;
  std::vector<bool> in(grp.order(), false);
  for (auto s : sp) in[s] = true;

  for (std::size_t rep : sp) {
    if (forms.count(rep)) continue;
    const FixedMoved fm = fixed_and_moved(grp, rep);
    std::vector<Vec> cols = fm.fixed;
    cols.insert(cols.end(), fm.moved.begin(), fm.moved.end());
    const Mat p_inv = inverse(Mat::from_columns(cols, n));
    Mat e(n, n);
    e(n - 2, n - 1) = 1;
    e(n - 1, n - 2) = -1;
    const SkewForm base{p_inv.transpose() * e * p_inv};
    if (!base(fm.moved[0], fm.moved[1]).is_one()) throw InternalError("Omega_s normalization failed");
    forms.emplace(rep, base);

    for (std::size_t g = 0; g < grp.order(); ++g) {
      const std::size_t target = grp.conj(rep, g);
      if (!in[target]) throw InternalError("conjugate of an S' element left S'");
      SkewForm candidate = base.pullback(grp.matrix(g));
      auto [it, fresh] = forms.try_emplace(target, std::move(candidate));
      if (!fresh && !(it->second == base.pullback(grp.matrix(g)))) {
        throw InternalError("Omega is not well defined on the class of element " +
                            std::to_string(rep));
      }
    }
  }
  return forms;
}

std::vector<SkewForm> invariant_two_forms(const Group& grp) {
  const std::size_t n = grp.dim;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  if (pairs.empty()) return {};

  std::vector<Vec> rows;
  for (std::size_t gi : grp.generators) {
    const Mat& g = grp.matrix(gi);
    for (std::size_t eq = 0; eq < pairs.size(); ++eq) {
      const auto [i, j] = pairs[eq];
      Vec row(pairs.size());
      for (std::size_t u = 0; u < pairs.size(); ++u) {
        const auto [a, b] = pairs[u];
        row[u] = g(a, i) * g(b, j) - g(b, i) * g(a, j);
      }
      row[eq] -= 1;
      rows.push_back(std::move(row));
    }
  }

  std::vector<Vec> kernel;
  if (rows.empty()) {
    for (std::size_t u = 0; u < pairs.size(); ++u) {
      Vec v(pairs.size());
      v[u] = 1;
      kernel.push_back(std::move(v));
    }
  } else {
    kernel = kernel_basis(Mat::from_rows(rows, pairs.size()));
  }

  std::vector<SkewForm> forms;
  for (const Vec& v : span_basis(kernel, pairs.size())) {
    Mat b(n, n);
    for (std::size_t u = 0; u < pairs.size(); ++u) {
      b(pairs[u].first, pairs[u].second) = v[u];
      b(pairs[u].second, pairs[u].first) = -v[u];
    }
    forms.push_back(SkewForm{std::move(b)});
  }
  for (const auto& f : forms) {
    for (const Mat& g : grp.elements) {
      if (!(f.pullback(g) == f)) throw InternalError("invariant form fails G-invariance");
    }
  }
  return forms;
}

ReflectionData compute_reflection_data(const Group& grp) {
  ReflectionData rd;
  rd.bireflections = bireflections(grp);
  rd.sprime = sprime(grp, rd.bireflections);
  rd.s_subgroup = generated_subgroup(grp, rd.sprime);
  if (!conjugation_closed(grp, rd.bireflections)) {
    throw InternalError("bireflections are not closed under conjugation");
  }
  for (std::size_t g : rd.s_subgroup) {
    if (!det(grp.matrix(g)).is_one()) throw InternalError("normal closure of S' leaves SL(V)");
    if (codim_fixed(grp, g) == 1) throw InternalError("normal closure of S' contains a reflection");
  }

  std::vector<bool> seen(grp.order(), false);
  for (std::size_t s : rd.sprime) {
    if (seen[s]) continue;
    SprimeClass cls{s, grp.classes[grp.class_of[s]]};
    for (auto x : cls.elements) seen[x] = true;
    rd.sprime_classes.push_back(std::move(cls));
  }
  rd.omega = omega_forms(grp, rd.sprime);
  for (const auto& [s, form] : rd.omega) {
    if (!form.is_skew()) throw InternalError("Omega_s is not skew");
  }
  rd.invariant_forms = invariant_two_forms(grp);
  return rd;
}

}  // namespace dhecke
