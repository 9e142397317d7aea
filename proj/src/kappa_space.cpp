#include "dhecke/kappa_space.hpp"

#include <algorithm>
#include <sstream>

#include "dhecke/error.hpp"

namespace dhecke {

KappaMap::KappaMap(std::size_t dim, std::size_t group_order)
    : dim_(dim), order_(group_order), table_(num_pairs(), Vec(group_order)) {}

std::size_t KappaMap::pair_index(std::size_t i, std::size_t j, std::size_t dim) {
  // Row-major enumeration of pairs i < j.
  return i * dim - i * (i + 1) / 2 + (j - i - 1);
}

CycNum KappaMap::coeff(std::size_t i, std::size_t j, std::size_t g) const {
  if (i == j) return CycNum();
  if (i < j) return table_[pair_index(i, j, dim_)][g];
  return -table_[pair_index(j, i, dim_)][g];
}

void KappaMap::set(std::size_t i, std::size_t j, std::size_t g, CycNum value) {
  if (i >= j) throw InternalError("KappaMap::set requires i < j");
  table_[pair_index(i, j, dim_)][g] = std::move(value);
}

std::vector<std::pair<std::size_t, CycNum>> KappaMap::support(std::size_t i, std::size_t j) const {
  std::vector<std::pair<std::size_t, CycNum>> out;
  if (i == j) return out;
  const Vec& row = table_[pair_index(std::min(i, j), std::max(i, j), dim_)];
  for (std::size_t g = 0; g < order_; ++g) {
    if (row[g].is_zero()) continue;
    out.emplace_back(g, i < j ? row[g] : -row[g]);
  }
  return out;
}

bool KappaMap::is_zero() const {
  for (const auto& row : table_) {
    if (!is_zero_vec(row)) return false;
  }
  return true;
}

Vec KappaMap::flatten() const {
  Vec out;
  out.reserve(table_.size() * order_);
  for (const auto& row : table_) out.insert(out.end(), row.begin(), row.end());
  return out;
}

KappaMap KappaMap::from_flat(std::size_t dim, std::size_t group_order, std::span<const CycNum> flat) {
  KappaMap k(dim, group_order);
  if (flat.size() != k.num_pairs() * group_order) throw InternalError("from_flat: length mismatch");
  for (std::size_t p = 0; p < k.table_.size(); ++p) {
    for (std::size_t g = 0; g < group_order; ++g) k.table_[p][g] = flat[p * group_order + g];
  }
  return k;
}

KappaMap& KappaMap::operator+=(const KappaMap& rhs) {
  for (std::size_t p = 0; p < table_.size(); ++p) {
    for (std::size_t g = 0; g < order_; ++g) table_[p][g] += rhs.table_[p][g];
  }
  return *this;
}

KappaMap operator*(const CycNum& s, const KappaMap& k) {
  KappaMap out = k;
  for (auto& row : out.table_) {
    for (auto& x : row) x *= s;
  }
  return out;
}

bool operator==(const KappaMap& a, const KappaMap& b) {
  return a.dim_ == b.dim_ && a.order_ == b.order_ && a.table_ == b.table_;
}

bool ParamPoint::t_is_zero() const {
  return std::all_of(t.begin(), t.end(), [](const CycNum& x) { return x.is_zero(); });
}

std::string ParamPoint::key() const {
  std::ostringstream os;
  os << "t=(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ") c=(";
  bool first = true;
  for (const auto& [rep, v] : c) {
    os << (first ? "" : ",") << rep << ':' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

KappaMap kappa_from_element_values(const Group& grp, const ReflectionData& refl,
                                   std::span<const CycNum> t,
                                   const std::map<std::size_t, CycNum>& c_by_element) {
  if (t.size() != refl.N()) {
    throw InputError("expected " + std::to_string(refl.N()) + " t-parameters, got " +
                     std::to_string(t.size()));
  }
  const std::size_t n = grp.dim;
  KappaMap k(n, grp.order());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      CycNum ident;
      for (std::size_t q = 0; q < t.size(); ++q) ident.add_product(t[q], refl.invariant_forms[q].on_basis(i, j));
      k.set(i, j, 0, ident);
      for (const auto& [s, cs] : c_by_element) {
        auto it = refl.omega.find(s);
        if (it == refl.omega.end()) throw InputError("element " + std::to_string(s) + " is not in S'");
        k.set(i, j, s, cs * it->second.on_basis(i, j));
      }
    }
  }
  return k;
}

KappaMap kappa_from_params(const Group& grp, const ReflectionData& refl, const ParamPoint& p) {
  std::map<std::size_t, CycNum> by_element;
  for (const auto& [rep, value] : p.c) {
    const std::size_t ci = refl.class_index(rep);
    if (ci == static_cast<std::size_t>(-1) || refl.sprime_classes[ci].rep != rep) {
      throw InputError("c-parameter key " + std::to_string(rep) +
                       " is not an S'-class representative");
    }
    for (std::size_t s : refl.sprime_classes[ci].elements) by_element[s] = value;
  }
  return kappa_from_element_values(grp, refl, p.t, by_element);
}

std::vector<KappaMap> theorem_kappa_basis(const Group& grp, const ReflectionData& refl) {
  std::vector<KappaMap> out;
  for (std::size_t q = 0; q < refl.N(); ++q) {
    ParamPoint p;
    p.t.assign(refl.N(), CycNum());
    p.t[q] = 1;
    out.push_back(kappa_from_params(grp, refl, p));
  }
  for (const auto& cls : refl.sprime_classes) {
    ParamPoint p;
    p.t.assign(refl.N(), CycNum());
    p.c[cls.rep] = 1;
    out.push_back(kappa_from_params(grp, refl, p));
  }
  return out;
}

std::vector<Vec> mixed_jacobi_domain(std::size_t n) {
  const std::size_t dim3 = n * n * n;
  auto idx = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  std::vector<Vec> c_tensor_v;
  std::vector<Vec> v_tensor_c;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        Vec x(dim3);
        x[idx(a, b, c)] = 1;
        x[idx(b, a, c)] = -1;
        c_tensor_v.push_back(std::move(x));
        Vec y(dim3);
        y[idx(c, a, b)] = 1;
        y[idx(c, b, a)] = -1;
        v_tensor_c.push_back(std::move(y));
      }
    }
  }
  return intersect_spans(c_tensor_v, v_tensor_c, dim3);
}

std::vector<KappaMap> valid_kappa_basis(const Group& grp, Exec exec) {
  const std::size_t n = grp.dim;
  const std::size_t order = grp.order();
  const KappaMap shape(n, order);
  const std::size_t pairs = shape.num_pairs();
  const std::size_t unknowns = pairs * order;
  if (unknowns == 0) return {};

  auto unknown = [&](std::size_t p, std::size_t g) { return p * order + g; };
  // Adds coef * K_g(a, b) to row, honoring skew-symmetry.
  auto add_k = [&](Vec& row, std::size_t a, std::size_t b, std::size_t g, const CycNum& coef) {
    if (a == b || coef.is_zero()) return;
    if (a < b) {
      row[unknown(KappaMap::pair_index(a, b, n), g)] += coef;
    } else {
      row[unknown(KappaMap::pair_index(b, a, n), g)] -= coef;
    }
  };

  std::vector<std::pair<std::size_t, std::size_t>> pair_list;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pair_list.emplace_back(a, b);
  }

  // Invariance: kappa(gamma v_i, gamma v_j) = gamma kappa(v_i, v_j) gamma^{-1}.
  const std::size_t gens = grp.generators.size();
  std::vector<Vec> inv_rows(gens * order * pairs);
  const auto inv_total = static_cast<long long>(inv_rows.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (long long r = 0; r < inv_total; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const std::size_t gi = ur / (order * pairs);
    const std::size_t h = (ur / pairs) % order;
    const auto [i, j] = pair_list[ur % pairs];
    const std::size_t gamma = grp.generators[gi];
    const Mat& m = grp.matrix(gamma);
    Vec row(unknowns);
    for (std::size_t p = 0; p < pairs; ++p) {
      const auto [a, b] = pair_list[p];
      const CycNum coef = m(a, i) * m(b, j) - m(b, i) * m(a, j);
      if (!coef.is_zero()) row[unknown(p, h)] += coef;
    }
    row[unknown(KappaMap::pair_index(i, j, n), grp.conj(h, gamma))] -= 1;
    inv_rows[ur] = std::move(row);
  }

  // Mixed Jacobi: for x in (C⊗V)∩(V⊗C), sum x_abc (v_a K(b,c) - K(a,b) v_c) = 0,
  // straightened to V ⊗ CG via g v_c = g(v_c) g.
  const std::vector<Vec> domain = mixed_jacobi_domain(n);
  std::vector<Vec> jac_rows(domain.size() * order * n);
  const auto jac_total = static_cast<long long>(jac_rows.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (long long r = 0; r < jac_total; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const std::size_t xi = ur / (order * n);
    const std::size_t g = (ur / n) % order;
    const std::size_t k = ur % n;
    const Vec& x = domain[xi];
    const Mat& m = grp.matrix(g);
    Vec row(unknowns);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          const CycNum& coef = x[(a * n + b) * n + c];
          if (coef.is_zero()) continue;
          if (a == k) add_k(row, b, c, g, coef);
          add_k(row, a, b, g, -(coef * m(k, c)));
        }
      }
    }
    jac_rows[ur] = std::move(row);
  }

  std::vector<Vec> rows;
  rows.reserve(inv_rows.size() + jac_rows.size());
  for (auto& r : inv_rows) {
    if (!is_zero_vec(r)) rows.push_back(std::move(r));
  }
  for (auto& r : jac_rows) {
    if (!is_zero_vec(r)) rows.push_back(std::move(r));
  }

  std::vector<Vec> kernel;
  if (rows.empty()) {
    for (std::size_t u = 0; u < unknowns; ++u) {
      Vec v(unknowns);
      v[u] = 1;
      kernel.push_back(std::move(v));
    }
  } else {
    kernel = kernel_basis(Mat::from_rows(rows, unknowns), exec);
  }

  std::vector<KappaMap> out;
  for (const Vec& v : span_basis(kernel, unknowns)) {
    out.push_back(KappaMap::from_flat(n, order, v));
    if (!is_g_invariant(grp, out.back())) {
      throw InternalError("kappa solution is not invariant under the whole group");
    }
  }
  return out;
}

bool is_g_invariant(const Group& grp, const KappaMap& k) {
  const std::size_t n = grp.dim;
  for (std::size_t gamma = 0; gamma < grp.order(); ++gamma) {
    const Mat& m = grp.matrix(gamma);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t h = 0; h < grp.order(); ++h) {
          CycNum lhs;
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
              const CycNum coef = m(a, i) * m(b, j) - m(b, i) * m(a, j);
              if (!coef.is_zero()) lhs.add_product(coef, k.coeff(a, b, h));
            }
          }
          if (lhs != k.coeff(i, j, grp.conj(h, gamma))) return false;
        }
      }
    }
  }
  return true;
}

CrosscheckReport classification_crosscheck(const Group& grp, const ReflectionData& refl,
                                           std::span<const KappaMap> solution_basis) {
  CrosscheckReport rep;
  const std::vector<KappaMap> theorem = theorem_kappa_basis(grp, refl);
  const std::size_t width = KappaMap(grp.dim, grp.order()).num_pairs() * grp.order();

  std::vector<Vec> a_rows;
  std::vector<Vec> b_rows;
  for (const auto& k : solution_basis) a_rows.push_back(k.flatten());
  for (const auto& k : theorem) b_rows.push_back(k.flatten());
  std::vector<Vec> both = a_rows;
  both.insert(both.end(), b_rows.begin(), b_rows.end());

  auto rank_of = [width](const std::vector<Vec>& rows) -> std::size_t {
    return rows.empty() || width == 0 ? 0 : rank(Mat::from_rows(rows, width));
  };
  const std::size_t ra = rank_of(a_rows);
  const std::size_t rb = rank_of(b_rows);
  const std::size_t rab = rank_of(both);

  rep.dim_solution = ra;
  rep.dim_theorem = rb;
  rep.expected = refl.N() + refl.sprime_classes.size();
  rep.spans_equal = ra == rb && rb == rab;

  std::vector<bool> in_s(grp.order(), false);
  for (auto g : refl.s_subgroup) in_s[g] = true;
  rep.support_ok = true;
  rep.invariance_ok = true;
  std::ostringstream detail;
  std::vector<Vec> form_rows;
  const std::size_t n = grp.dim;
  for (const auto& f : refl.invariant_forms) {
    Vec row;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) row.push_back(f.on_basis(i, j));
    }
    form_rows.push_back(std::move(row));
  }
  const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t form_rank = form_rows.empty() ? 0 : rank(Mat::from_rows(form_rows, pairs));

  for (std::size_t idx = 0; idx < solution_basis.size(); ++idx) {
    const KappaMap& k = solution_basis[idx];
    if (!is_g_invariant(grp, k)) {
      rep.invariance_ok = false;
      detail << "basis element " << idx << " is not G-invariant; ";
    }
    Vec ident;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        ident.push_back(k.coeff(i, j, 0));
        for (const auto& [g, c] : k.support(i, j)) {
          if (g != 0 && !in_s[g]) {
            rep.support_ok = false;
            detail << "basis element " << idx << " has support outside S at element " << g << "; ";
          }
        }
      }
    }
    if (!is_zero_vec(ident)) {
      std::vector<Vec> with = form_rows;
      with.push_back(ident);
      if (rank(Mat::from_rows(with, pairs)) != form_rank) {
        rep.support_ok = false;
        detail << "basis element " << idx << " has identity part outside span{b_i}; ";
      }
    }
  }
  if (!rep.spans_equal) {
    detail << "rank(solution)=" << ra << " rank(theorem)=" << rb << " rank(union)=" << rab << "; ";
  }
  rep.pass = rep.spans_equal && rep.support_ok && rep.invariance_ok && ra == rep.expected &&
             rb == rep.expected && solution_basis.size() == ra;
  rep.detail = detail.str();
  return rep;
}

ParamPoint params_of(const Group& grp, const ReflectionData& refl, const KappaMap& k) {
  const std::vector<KappaMap> theorem = theorem_kappa_basis(grp, refl);
  const Vec target = k.flatten();
  ParamPoint p;
  p.t.assign(refl.N(), CycNum());
  if (theorem.empty()) {
    if (!k.is_zero()) throw InternalError("nonzero kappa but the theorem basis is empty");
    return p;
  }
  std::vector<Vec> cols;
  for (const auto& b : theorem) cols.push_back(b.flatten());
  Vec x;
  if (!solve(Mat::from_columns(cols, target.size()), target, x)) {
    throw InternalError("kappa lies outside the span of the theorem basis");
  }
  for (std::size_t q = 0; q < refl.N(); ++q) p.t[q] = x[q];
  for (std::size_t c = 0; c < refl.sprime_classes.size(); ++c) {
    p.c[refl.sprime_classes[c].rep] = x[refl.N() + c];
  }
  return p;
}

}  // namespace dhecke
