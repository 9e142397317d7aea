#include "dhecke/center_probe.hpp"

#include <algorithm>
#include <map>

#include "dhecke/error.hpp"

namespace dhecke {

AlgebraElement symmetrizer(const Group& grp) {
  AlgebraElement e;
  const CycNum w = CycNum(Rational(1, static_cast<long>(grp.order())));
  for (std::size_t g = 0; g < grp.order(); ++g) e.add(Monomial(), static_cast<std::uint32_t>(g), w);
  return e;
}

std::vector<Poly> invariant_basis(const Group& grp, unsigned d) {
  const std::size_t n = grp.dim;
  const auto monos = monomials_of_degree(n, d);
  const CycNum w = CycNum(Rational(1, static_cast<long>(grp.order())));
  std::vector<Vec> averages;
  averages.reserve(monos.size());
  for (Monomial m : monos) {
    const Poly base = Poly::monomial(m);
    Poly sum;
    for (const Mat& g : grp.elements) sum += act(g, base);
    averages.push_back(coordinates(w * sum, n, d));
  }
  std::vector<Poly> out;
  for (const Vec& v : span_basis(averages, monos.size())) out.push_back(from_coordinates(v, n, d));
  return out;
}

AlgebraElement pbw_lift(const Poly& p) {
  AlgebraElement x;
  for (const auto& [m, c] : p.terms()) x.add(m, 0, c);
  return x;
}

Poly as_poly(const AlgebraElement& x) {
  Poly p;
  for (const auto& [k, c] : x.terms()) {
    if (k.group != 0) throw InternalError("element has a nontrivial group part");
    p.add(k.mono, c);
  }
  return p;
}

AlgebraElement conjugation_average(const PbwEngine& engine, const AlgebraElement& x) {
  const Group& grp = engine.group();
  AlgebraElement sum;
  for (std::size_t g = 0; g < grp.order(); ++g) {
    sum += engine.right_mul_group(engine.left_mul_group(g, x), grp.inv[g]);
  }
  sum *= CycNum(Rational(1, static_cast<long>(grp.order())));
  return sum;
}

namespace {

AlgebraElement hat_commutator(const PbwEngine& engine, const AlgebraElement& ph,
                              const AlgebraElement& qh) {
  AlgebraElement x = engine.multiply(ph, qh);
  x -= engine.multiply(qh, ph);
  return x.collapse_group();
}

struct InvariantTable {
  std::vector<Poly> polys;
  std::vector<unsigned> degrees;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // sorted as documented
};

InvariantTable build_table(const Group& grp, unsigned D) {
  InvariantTable t;
  for (unsigned d = 1; d <= D; ++d) {
    for (Poly& p : invariant_basis(grp, d)) {
      t.polys.push_back(std::move(p));
      t.degrees.push_back(d);
    }
  }
  for (std::size_t a = 0; a < t.polys.size(); ++a) {
    for (std::size_t b = a + 1; b < t.polys.size(); ++b) t.pairs.emplace_back(a, b);
  }
  // Flattened order already sorts by (degree, position), so a stable sort on
  // total degree yields the documented ordering.
  std::stable_sort(t.pairs.begin(), t.pairs.end(), [&](const auto& x, const auto& y) {
    return t.degrees[x.first] + t.degrees[x.second] < t.degrees[y.first] + t.degrees[y.second];
  });
  return t;
}

InvariantPair make_pair_record(const InvariantTable& t, std::pair<std::size_t, std::size_t> pr) {
  return InvariantPair{t.polys[pr.first], t.polys[pr.second], t.degrees[pr.first],
                       t.degrees[pr.second]};
}

}  // namespace

AlgebraElement spherical_commutator(const PbwEngine& engine, const Poly& p, const Poly& q) {
  return hat_commutator(engine, conjugation_average(engine, pbw_lift(p)),
                        conjugation_average(engine, pbw_lift(q)));
}

AlgebraElement spherical_commutator_direct(const PbwEngine& engine, const Poly& p, const Poly& q) {
  const AlgebraElement e = symmetrizer(engine.group());
  const AlgebraElement epe = engine.multiply(engine.multiply(e, pbw_lift(p)), e);
  const AlgebraElement eqe = engine.multiply(engine.multiply(e, pbw_lift(q)), e);
  return engine.multiply(epe, eqe) - engine.multiply(eqe, epe);
}

std::vector<InvariantPair> invariant_pairs(const Group& grp, unsigned D) {
  const InvariantTable t = build_table(grp, D);
  std::vector<InvariantPair> out;
  out.reserve(t.pairs.size());
  for (const auto& pr : t.pairs) out.push_back(make_pair_record(t, pr));
  return out;
}

CommutatorVerdict spherical_commutator_probe(const PbwEngine& engine, unsigned D, Exec exec) {
  const InvariantTable table = build_table(engine.group(), D);
  CommutatorVerdict verdict;
  verdict.degree_bound = D;

  std::vector<AlgebraElement> hats(table.polys.size());
  const auto nh = static_cast<long>(hats.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nh; ++i) hats[i] = conjugation_average(engine, pbw_lift(table.polys[i]));
  } else {
    for (long i = 0; i < nh; ++i) hats[i] = conjugation_average(engine, pbw_lift(table.polys[i]));
  }

  // Batches of equal total degree; the first batch with a nonzero commutator
  // supplies the witness.
  std::size_t begin = 0;
  while (begin < table.pairs.size()) {
    const auto total = [&](std::size_t k) {
      return table.degrees[table.pairs[k].first] + table.degrees[table.pairs[k].second];
    };
    std::size_t end = begin;
    while (end < table.pairs.size() && total(end) == total(begin)) ++end;

    std::vector<AlgebraElement> results(end - begin);
    const auto count = static_cast<long>(results.size());
    auto body = [&](long k) {
      const auto [a, b] = table.pairs[begin + static_cast<std::size_t>(k)];
      results[k] = hat_commutator(engine, hats[a], hats[b]);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long k = 0; k < count; ++k) body(k);
    } else {
      for (long k = 0; k < count; ++k) body(k);
    }
    verdict.pairs_checked += results.size();

    for (std::size_t k = 0; k < results.size(); ++k) {
      if (results[k].is_zero()) continue;
      verdict.commutative = false;
      verdict.witness = make_pair_record(table, table.pairs[begin + k]);
      verdict.commutator = results[k];
      verdict.pairs_checked -= results.size() - k - 1;
      const AlgebraElement direct = spherical_commutator_direct(engine, verdict.witness->p, verdict.witness->q);
      const AlgebraElement expected = engine.multiply(verdict.commutator, symmetrizer(engine.group()));
      verdict.witness_reverified = !direct.is_zero() && direct == expected;
      if (!verdict.witness_reverified) throw InternalError("noncommutativity witness failed re-verification");
      return verdict;
    }
    begin = end;
  }
  return verdict;
}

BracketResult poisson_bracket(const PbwEngine& engine, const Poly& p, const Poly& q) {
  const int a = p.degree();
  const int b = q.degree();
  const AlgebraElement lp = pbw_lift(p);
  const AlgebraElement lq = pbw_lift(q);
  const AlgebraElement x = engine.multiply(lp, lq) - engine.multiply(lq, lp);
  BracketResult r;
  const int top = a + b - 2;
  if (top < 0) {
    r.degree_ok = x.is_zero();
    return r;
  }
  r.degree_ok = x.degree() <= top;
  const AlgebraElement comp = x.homogeneous_component(static_cast<unsigned>(top));
  r.group_free = comp.group_free();
  r.bracket = as_poly(comp.collapse_group());
  return r;
}

Poly leibniz_bracket(const SkewForm& omega, const Poly& p, const Poly& q) {
  const std::size_t n = omega.matrix.rows();
  std::vector<Poly> dp(n), dq(n);
  for (std::size_t i = 0; i < n; ++i) {
    dp[i] = p.derivative(i);
    dq[i] = q.derivative(i);
  }
  Poly out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CycNum& w = omega.matrix(i, j);
      if (w.is_zero()) continue;
      out += w * (dp[i] * dq[j]);
    }
  }
  return out;
}

SkewForm t_form(const ReflectionData& refl, std::size_t dim, const ParamPoint& params) {
  if (params.t.size() != refl.N()) throw InputError("t has the wrong length");
  Mat m(dim, dim);
  for (std::size_t k = 0; k < refl.N(); ++k) m = m + params.t[k] * refl.invariant_forms[k].matrix;
  return SkewForm{m};
}

PoissonReport poisson_crosscheck(const PbwEngine& engine, const ReflectionData& refl,
                                 const ParamPoint& params, unsigned D, Exec exec) {
  const SkewForm omega = t_form(refl, engine.dim(), params);
  const std::vector<InvariantPair> pairs = invariant_pairs(engine.group(), D);
  std::vector<BracketResult> got(pairs.size());
  std::vector<Poly> want(pairs.size());
  const auto count = static_cast<long>(pairs.size());
  auto body = [&](long k) {
    got[k] = poisson_bracket(engine, pairs[k].p, pairs[k].q);
    want[k] = leibniz_bracket(omega, pairs[k].p, pairs[k].q);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) body(k);
  } else {
    for (long k = 0; k < count; ++k) body(k);
  }

  PoissonReport report;
  report.pairs_checked = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (got[k].degree_ok && got[k].bracket == want[k]) continue;
    report.pass = false;
    report.mismatch = pairs[k];
    report.engine_bracket = got[k].bracket;
    report.leibniz = want[k];
    report.detail = got[k].degree_ok ? "bracket differs from the Leibniz extension"
                                     : "commutator exceeds degree a+b-2";
    break;
  }
  return report;
}

TraceReport trace_identity_check(const Group& grp, const KappaMap& kappa, const ReflectionData& refl,
                                 const ParamPoint& params) {
  const SkewForm omega = t_form(refl, grp.dim, params);
  const CycNum order(static_cast<long long>(grp.order()));
  TraceReport r;
  for (std::size_t i = 0; i < grp.dim; ++i) {
    for (std::size_t j = i + 1; j < grp.dim; ++j) {
      // Regular character: |G| at the identity, 0 elsewhere.
      CycNum trace;
      for (const auto& [g, c] : kappa.support(i, j)) {
        if (g == 0) trace += order * c;
      }
      if (trace != order * omega.on_basis(i, j)) {
        r.pass = false;
        r.failures.push_back(std::to_string(i) + "," + std::to_string(j));
      }
    }
  }
  return r;
}

std::vector<ScanRow> dichotomy_scan(const Group& grp, const ReflectionData& refl,
                                    std::span<const ParamPoint> grid, unsigned D, Exec exec) {
  std::vector<KappaMap> kappas;
  kappas.reserve(grid.size());
  for (const ParamPoint& p : grid) kappas.push_back(kappa_from_params(grp, refl, p));

  std::vector<ScanRow> rows(grid.size());
  const auto count = static_cast<long>(grid.size());
  auto body = [&](long k) {
    ScanRow& row = rows[k];
    row.params = grid[k];
    row.key = grid[k].key();
    row.t_zero = grid[k].t_is_zero();
    const PbwEngine engine(grp, kappas[k]);
    row.verdict = spherical_commutator_probe(engine, D, Exec::serial);
    row.consistent = !(row.t_zero && !row.verdict.commutative);
    row.degree_insufficient = !row.t_zero && row.verdict.commutative;
  };
  if (exec == Exec::parallel) {
    // Exceptions must not escape an OpenMP region; record and rethrow.
    std::vector<std::exception_ptr> errors(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (long k = 0; k < count; ++k) body(k);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) { return a.key < b.key; });
  return rows;
}

}  // namespace dhecke
