#include "dhecke/pbw_engine.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "dhecke/error.hpp"

namespace dhecke {

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement AlgebraElement::term(Monomial m, std::uint32_t g, CycNum coeff) {
  AlgebraElement x;
  if (!coeff.is_zero()) x.terms_.emplace(TermKey{m, g}, std::move(coeff));
  return x;
}

void AlgebraElement::add(Monomial m, std::uint32_t g, const CycNum& coeff) {
  if (coeff.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(TermKey{m, g}, coeff);
  if (fresh) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

void AlgebraElement::add_product(Monomial m, std::uint32_t g, const CycNum& a, const CycNum& b) {
  if (a.is_zero() || b.is_zero()) return;
  auto it = terms_.find(TermKey{m, g});
  if (it == terms_.end()) {
    terms_.emplace(TermKey{m, g}, a * b);
    return;
  }
  it->second.add_product(a, b);
  if (it->second.is_zero()) terms_.erase(it);
}

CycNum AlgebraElement::coeff(Monomial m, std::uint32_t g) const {
  auto it = terms_.find(TermKey{m, g});
  return it == terms_.end() ? CycNum() : it->second;
}

int AlgebraElement::degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.mono.degree()));
  return d;
}

AlgebraElement AlgebraElement::homogeneous_component(unsigned d) const {
  AlgebraElement out;
  for (const auto& [k, c] : terms_) {
    if (k.mono.degree() == d) out.terms_.emplace(k, c);
  }
  return out;
}

AlgebraElement AlgebraElement::collapse_group() const {
  AlgebraElement out;
  for (const auto& [k, c] : terms_) out.add(k.mono, 0, c);
  return out;
}

bool AlgebraElement::group_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.group == 0; });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  for (const auto& [k, c] : rhs.terms_) add(k.mono, k.group, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  for (const auto& [k, c] : rhs.terms_) add(k.mono, k.group, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const CycNum& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (const auto& [k, c] : a.terms_) {
    auto it = b.terms_.find(k);
    if (it == b.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

std::vector<AlgebraElement::Term> AlgebraElement::sorted_terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({k.mono, k.group, c});
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    if (x.mono != y.mono) return deglex_less(y.mono, x.mono);
    return x.group < y.group;
  });
  return out;
}

std::string AlgebraElement::to_string(std::size_t dim) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : sorted_terms()) {
    if (!out.empty()) out += " + ";
    out += '(' + t.coeff.to_string() + ')';
    if (!t.mono.is_one()) out += '*' + t.mono.to_string(dim);
    if (t.group != 0) out += "*g" + std::to_string(t.group);
  }
  return out;
}

std::string word_to_string(std::span<const Letter> word) {
  std::string out;
  for (const Letter& l : word) {
    if (!out.empty()) out += ' ';
    if (l.kind == Letter::Kind::vector) {
      out += 'v' + std::to_string(l.index + 1);
    } else {
      out += 'g' + std::to_string(l.index);
    }
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// PbwEngine

namespace {

struct CacheKey {
  std::uint64_t bits;
  std::uint64_t head;  // variable index, group index, or left monomial bits

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.bits * 0x9e3779b97f4a7c15ULL ^ (k.head + 0x632be59bd9b4e019ULL));
  }
};

// Read-mostly memo table. Entries are never replaced once inserted, so
// references handed out stay valid for the engine's lifetime.
class MemoTable {
 public:
  const AlgebraElement* find(const CacheKey& k) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  const AlgebraElement& insert(const CacheKey& k, AlgebraElement value) {
    std::unique_lock lock(mutex_);
    return map_.try_emplace(k, std::move(value)).first->second;
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<CacheKey, AlgebraElement, CacheKeyHash> map_;
};

}  // namespace

struct PbwEngine::Caches {
  MemoTable var_times;
  MemoTable group_times;
  MemoTable mono_product;
};

PbwEngine::PbwEngine(const Group& grp, KappaMap kappa)
    : grp_(&grp), kappa_(std::move(kappa)), caches_(std::make_unique<Caches>()) {
  const std::size_t n = grp.dim;
  if (n > kMaxDim) throw InputError("dimension exceeds the supported maximum of 8");
  if (kappa_.dim() != n || kappa_.group_order() != grp.order()) {
    throw InputError("kappa does not match the group");
  }
  lowering_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      for (auto& [g, c] : kappa_.support(j, i)) {
        lowering_[j * n + i].emplace_back(static_cast<std::uint32_t>(g), std::move(c));
      }
    }
  }
}

PbwEngine::~PbwEngine() = default;

std::size_t PbwEngine::cache_entries() const {
  return caches_->var_times.size() + caches_->group_times.size() + caches_->mono_product.size();
}

void PbwEngine::accumulate_right(AlgebraElement& out, const AlgebraElement& x, std::uint32_t h,
                                 const CycNum& scale) const {
  for (const auto& [k, c] : x.terms()) {
    const auto g = static_cast<std::uint32_t>(grp_->mul(k.group, h));
    out.add_product(k.mono, g, c, scale);
  }
}

void PbwEngine::accumulate_var_times(AlgebraElement& out, std::size_t k, Monomial m,
                                     std::uint32_t h, const CycNum& scale) const {
  accumulate_right(out, var_times_monomial(k, m), h, scale);
}

const AlgebraElement& PbwEngine::var_times_monomial(std::size_t k, Monomial m) const {
  const CacheKey key{m.bits(), k};
  if (const AlgebraElement* hit = caches_->var_times.find(key)) return *hit;
  return caches_->var_times.insert(key, compute_var_times(k, m));
}

const AlgebraElement& PbwEngine::group_times_monomial(std::size_t g, Monomial m) const {
  const CacheKey key{m.bits(), g};
  if (const AlgebraElement* hit = caches_->group_times.find(key)) return *hit;
  return caches_->group_times.insert(key, compute_group_times(g, m));
}

const AlgebraElement& PbwEngine::monomial_product(Monomial a, Monomial b) const {
  const CacheKey key{b.bits(), a.bits()};
  if (const AlgebraElement* hit = caches_->mono_product.find(key)) return *hit;
  return caches_->mono_product.insert(key, compute_monomial_product(a, b));
}

// v_k * m with m = v_i * m' and i the smallest variable of m:
//   i >= k : already ordered
//   i <  k : v_i * NF(v_k m') + kappa(v_k, v_i) * m'
AlgebraElement PbwEngine::compute_var_times(std::size_t k, Monomial m) const {
  const std::size_t i = m.min_var();
  if (m.is_one() || i >= k) return AlgebraElement::term(m * Monomial::var(k), 0, CycNum(1));
  const Monomial rest = m / Monomial::var(i);
  AlgebraElement out;
  for (const auto& [key, c] : var_times_monomial(k, rest).terms()) {
    accumulate_var_times(out, i, key.mono, key.group, c);
  }
  for (const auto& [s, c] : lowering_[k * dim() + i]) {
    out += c * group_times_monomial(s, rest);
  }
  return out;
}

// g * m with m = v_i * m':  sum_a g_{ai} v_a * NF(g m')
AlgebraElement PbwEngine::compute_group_times(std::size_t g, Monomial m) const {
  if (m.is_one()) return AlgebraElement::group_element(static_cast<std::uint32_t>(g));
  if (g == 0) return AlgebraElement::term(m, 0, CycNum(1));
  const std::size_t i = m.min_var();
  const Monomial rest = m / Monomial::var(i);
  const Mat& mat = grp_->matrix(g);
  const AlgebraElement& tail = group_times_monomial(g, rest);
  AlgebraElement out;
  for (std::size_t a = 0; a < dim(); ++a) {
    const CycNum& entry = mat(a, i);
    if (entry.is_zero()) continue;
    for (const auto& [key, c] : tail.terms()) {
      accumulate_var_times(out, a, key.mono, key.group, entry * c);
    }
  }
  return out;
}

// a * b with a = a' * v_l and l the largest variable of a:  a' * NF(v_l b)
AlgebraElement PbwEngine::compute_monomial_product(Monomial a, Monomial b) const {
  if (a.is_one() || b.is_one() || a.max_var() <= b.min_var()) {
    return AlgebraElement::term(a * b, 0, CycNum(1));
  }
  const std::size_t l = a.max_var();
  const Monomial head = a / Monomial::var(l);
  AlgebraElement out;
  for (const auto& [key, c] : var_times_monomial(l, b).terms()) {
    accumulate_right(out, monomial_product(head, key.mono), key.group, c);
  }
  return out;
}

AlgebraElement PbwEngine::left_mul_vector(std::size_t k, const AlgebraElement& x) const {
  if (k >= dim()) throw InputError("vector letter index out of range");
  AlgebraElement out;
  for (const auto& [key, c] : x.terms()) accumulate_var_times(out, k, key.mono, key.group, c);
  return out;
}

AlgebraElement PbwEngine::left_mul_group(std::size_t g, const AlgebraElement& x) const {
  if (g >= grp_->order()) throw InputError("group letter index out of range");
  AlgebraElement out;
  for (const auto& [key, c] : x.terms()) {
    accumulate_right(out, group_times_monomial(g, key.mono), key.group, c);
  }
  return out;
}

AlgebraElement PbwEngine::right_mul_group(const AlgebraElement& x, std::size_t g) const {
  if (g >= grp_->order()) throw InputError("group letter index out of range");
  AlgebraElement out;
  accumulate_right(out, x, static_cast<std::uint32_t>(g), CycNum(1));
  return out;
}

AlgebraElement PbwEngine::normal_form(std::span<const Letter> word) const {
  AlgebraElement x = AlgebraElement::one();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    x = it->kind == Letter::Kind::vector ? left_mul_vector(it->index, x)
                                         : left_mul_group(it->index, x);
  }
  return x;
}

// (m1 g1)(m2 g2) = m1 * NF(g1 m2) * g2
AlgebraElement PbwEngine::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const CycNum scale = ca * cb;
      for (const auto& [km, cm] : group_times_monomial(ka.group, kb.mono).terms()) {
        const auto h = static_cast<std::uint32_t>(grp_->mul(km.group, kb.group));
        accumulate_right(out, monomial_product(ka.mono, km.mono), h, scale * cm);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overlap check

namespace {

struct Overlap {
  std::string kind;
  std::vector<Letter> word;
};

// NF of sum_g coeff_g * prefix * g * suffix.
AlgebraElement nf_group_sum(const PbwEngine& e,
                            std::span<const std::pair<std::uint32_t, CycNum>> sum,
                            std::span<const Letter> prefix, std::span<const Letter> suffix) {
  AlgebraElement out;
  std::vector<Letter> word(prefix.begin(), prefix.end());
  word.push_back(Letter::g(0));
  word.insert(word.end(), suffix.begin(), suffix.end());
  for (const auto& [g, c] : sum) {
    word[prefix.size()] = Letter::g(g);
    out += c * e.normal_form(word);
  }
  return out;
}

std::vector<std::pair<std::uint32_t, CycNum>> kappa_terms(const KappaMap& k, std::size_t a,
                                                          std::size_t b) {
  std::vector<std::pair<std::uint32_t, CycNum>> out;
  for (auto& [g, c] : k.support(a, b)) out.emplace_back(static_cast<std::uint32_t>(g), std::move(c));
  return out;
}

AlgebraElement resolve(const PbwEngine& e, const Overlap& ov) {
  const KappaMap& kap = e.kappa();
  if (ov.kind == "vvv") {
    const std::size_t k = ov.word[0].index, j = ov.word[1].index, i = ov.word[2].index;
    const Letter vi = Letter::v(i), vj = Letter::v(j), vk = Letter::v(k);
    // (v_k v_j) v_i -> v_j v_k v_i + kappa(v_k, v_j) v_i
    const std::vector<Letter> left_word{vj, vk, vi};
    AlgebraElement left = e.normal_form(left_word);
    left += nf_group_sum(e, kappa_terms(kap, k, j), {}, std::span<const Letter>(&vi, 1));
    // v_k (v_j v_i) -> v_k v_i v_j + v_k kappa(v_j, v_i)
    const std::vector<Letter> right_word{vk, vi, vj};
    AlgebraElement right = e.normal_form(right_word);
    right += nf_group_sum(e, kappa_terms(kap, j, i), std::span<const Letter>(&vk, 1), {});
    return left - right;
  }
  const std::size_t g = ov.word[0].index, j = ov.word[1].index, i = ov.word[2].index;
  const Mat& mat = e.group().matrix(g);
  // (g v_j) v_i -> sum_a g_{aj} v_a g v_i
  AlgebraElement left;
  for (std::size_t a = 0; a < e.dim(); ++a) {
    if (mat(a, j).is_zero()) continue;
    const std::vector<Letter> w{Letter::v(a), Letter::g(g), Letter::v(i)};
    left += mat(a, j) * e.normal_form(w);
  }
  // g (v_j v_i) -> g v_i v_j + g kappa(v_j, v_i)
  const std::vector<Letter> w{Letter::g(g), Letter::v(i), Letter::v(j)};
  AlgebraElement right = e.normal_form(w);
  AlgebraElement kap_part;
  for (const auto& [h, c] : kappa_terms(kap, j, i)) {
    kap_part.add(Monomial(), static_cast<std::uint32_t>(e.group().mul(g, h)), c);
  }
  right += kap_part;
  return left - right;
}

}  // namespace

PbwCheckResult pbw_overlap_check(const PbwEngine& engine, Exec exec) {
  const std::size_t n = engine.dim();
  std::vector<Overlap> overlaps;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        overlaps.push_back({"vvv", {Letter::v(k), Letter::v(j), Letter::v(i)}});
      }
    }
  }
  for (std::size_t g : engine.group().generators) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        overlaps.push_back({"gvv", {Letter::g(g), Letter::v(j), Letter::v(i)}});
      }
    }
  }

  std::vector<AlgebraElement> discrepancy(overlaps.size());
  const auto count = static_cast<long>(overlaps.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < count; ++idx) discrepancy[idx] = resolve(engine, overlaps[idx]);
  } else {
    for (long idx = 0; idx < count; ++idx) discrepancy[idx] = resolve(engine, overlaps[idx]);
  }

  PbwCheckResult result;
  result.overlaps_checked = overlaps.size();
  for (std::size_t idx = 0; idx < overlaps.size(); ++idx) {
    if (discrepancy[idx].is_zero()) continue;
    result.pass = false;
    result.witness = OverlapWitness{overlaps[idx].kind, overlaps[idx].word, discrepancy[idx]};
    break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Scaling

std::vector<std::vector<Letter>> probe_words(const Group& grp, unsigned max_len) {
  const std::size_t n = grp.dim;
  std::vector<std::vector<Letter>> plain{{}};
  std::vector<std::vector<Letter>> layer{{}};
  for (unsigned len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        next.push_back(w);
        next.back().push_back(Letter::v(i));
      }
    }
    plain.insert(plain.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<std::vector<Letter>> out = plain;
  for (const auto& w : plain) {
    if (w.empty()) continue;
    for (std::size_t g : grp.generators) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        std::vector<Letter> x = w;
        x.insert(x.begin() + static_cast<long>(pos), Letter::g(g));
        out.push_back(std::move(x));
      }
    }
  }
  return out;
}

ScalingCheckResult scaling_check(const Group& grp, const KappaMap& kappa, const CycNum& mu,
                                 unsigned max_degree) {
  if (mu.is_zero()) throw InputError("scaling factor mu must be nonzero");
  const CycNum lambda = mu * mu;
  const PbwEngine base(grp, kappa);
  const PbwEngine scaled(grp, lambda * kappa);

  std::vector<CycNum> powers{CycNum(1)};
  for (unsigned d = 1; d <= max_degree; ++d) powers.push_back(powers.back() * mu);

  ScalingCheckResult result;
  for (const auto& w : probe_words(grp, max_degree)) {
    ++result.words_checked;
    const auto vletters = static_cast<std::size_t>(
        std::count_if(w.begin(), w.end(), [](const Letter& l) { return l.kind == Letter::Kind::vector; }));
    AlgebraElement lhs = powers[vletters] * base.normal_form(w);
    const AlgebraElement scaled_nf = scaled.normal_form(w);
    AlgebraElement rhs;
    for (const auto& [key, c] : scaled_nf.terms()) {
      rhs.add_product(key.mono, key.group, c, powers[key.mono.degree()]);
    }
    if (lhs != rhs) {
      result.pass = false;
      result.failing_word = w;
      return result;
    }
  }
  return result;
}

}  // namespace dhecke
