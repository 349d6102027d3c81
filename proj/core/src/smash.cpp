#include "koszul/smash.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace koszul {

namespace {

std::string matrix_key(const MatrixS& m) {
  std::string key;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      key += m(r, c).to_string();
      key += ';';
    }
  return key;
}

void require_same(const Subbimodule& a, const Subbimodule& b) {
  if (!(a.context() == b.context() || a.ctx() == b.ctx())) throw ContextMismatch("subbimodules live in different contexts");
}

}  // namespace

// ---------------------------------------------------------------- groups

bool GroupData::validate() const {
  const int n = static_cast<int>(order());
  if (n == 0 || !(elements[0] == MatrixS::identity(dimV))) return false;
  for (int g = 0; g < n; ++g) {
    if (mult[0][g] != g || mult[g][0] != g) return false;
    if (mult[g][inverses[g]] != 0 || mult[inverses[g]][g] != 0) return false;
    for (int h = 0; h < n; ++h) {
      if (!(elements[g] * elements[h] == elements[mult[g][h]])) return false;
      for (int k = 0; k < n; ++k)
        if (mult[mult[g][h]][k] != mult[g][mult[h][k]]) return false;
    }
  }
  std::vector<int> seen(n, 0);
  for (std::size_t c = 0; c < conj_classes.size(); ++c)
    for (int g : conj_classes[c]) {
      if (seen[g]++ || class_of[g] != static_cast<int>(c)) return false;
      for (int h = 0; h < n; ++h)
        if (class_of[conjugate(g, h)] != static_cast<int>(c)) return false;
    }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

GroupData trivial_group(std::size_t dimV) { return group_from_generators(dimV, {}); }

GroupData group_from_generators(std::size_t dimV, const std::vector<MatrixS>& gens, std::size_t order_cap) {
  if (dimV == 0) throw GroupError("dimV must be positive");
  for (const auto& g : gens) {
    if (g.rows() != dimV || g.cols() != dimV) throw GroupError("generator has wrong shape");
    if (rank(g) != dimV) throw GroupError("generator is not invertible");
  }
  GroupData G;
  G.dimV = dimV;
  std::map<std::string, int> index;
  auto add = [&](MatrixS m) {
    auto [it, inserted] = index.emplace(matrix_key(m), static_cast<int>(G.elements.size()));
    if (inserted) {
      if (G.elements.size() >= order_cap) throw GroupError("group order exceeds cap " + std::to_string(order_cap));
      G.elements.push_back(std::move(m));
    }
    return it->second;
  };
  add(MatrixS::identity(dimV));
  G.generators.assign(gens.size(), -1);
  for (std::size_t k = 0; k < G.elements.size(); ++k)
    for (const auto& g : gens) add(G.elements[k] * g);
  for (std::size_t s = 0; s < gens.size(); ++s) G.generators[s] = index.at(matrix_key(gens[s]));
  // drop duplicate / identity generators
  std::vector<int> gen;
  for (int g : G.generators)
    if (g != 0 && std::find(gen.begin(), gen.end(), g) == gen.end()) gen.push_back(g);
  G.generators = gen;

  const int n = static_cast<int>(G.order());
  G.mult.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G.mult[a][b] = index.at(matrix_key(G.elements[a] * G.elements[b]));
  G.inverses.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mult[a][b] == 0) G.inverses[a] = b;
  G.class_of.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (G.class_of[a] >= 0) continue;
    const int c = static_cast<int>(G.conj_classes.size());
    G.conj_classes.emplace_back();
    for (int h = 0; h < n; ++h) {
      int x = G.conjugate(a, h);
      if (G.class_of[x] < 0) {
        G.class_of[x] = c;
        G.conj_classes[c].push_back(x);
      }
    }
    std::sort(G.conj_classes[c].begin(), G.conj_classes[c].end());
  }
  return G;
}

// ---------------------------------------------------------------- context

TensorContext::TensorContext(int conductor, GroupData group) : conductor_(conductor), group_(std::move(group)) {
  if (conductor < 1) throw ScalarError("conductor must be positive");
  if (group_.dimV == 0) throw GroupError("dimV must be positive");
  cols_.resize(group_.order());
  for (std::size_t g = 0; g < group_.order(); ++g) {
    const MatrixS& m = group_.elements[g];
    cols_[g].resize(dimV());
    for (std::size_t j = 0; j < dimV(); ++j)
      for (std::size_t i = 0; i < dimV(); ++i) {
        const Scalar& x = m(i, j);
        if (x.is_zero()) continue;
        if (x.conductor() != 1 && x.conductor() != conductor)
          throw ScalarError("group matrix entry " + x.to_string() + " is not in the declared field");
        cols_[g][j].emplace_back(static_cast<int>(i), x);
      }
  }
}

ContextPtr make_context(int conductor, GroupData group) {
  return std::make_shared<const TensorContext>(conductor, std::move(group));
}

ContextPtr make_field_context(int conductor, std::size_t dimV) { return make_context(conductor, trivial_group(dimV)); }

bool operator==(const TensorContext& a, const TensorContext& b) {
  return a.conductor_ == b.conductor_ && a.group_.dimV == b.group_.dimV && a.group_.elements == b.group_.elements;
}

std::size_t TensorContext::words(std::size_t n) const {
  std::size_t w = 1;
  for (std::size_t i = 0; i < n; ++i) w *= dimV();
  return w;
}

std::size_t TensorContext::filtered_dim(std::size_t n) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i <= n; ++i) s += component_dim(i);
  return s;
}

std::size_t TensorContext::word_index(std::span<const int> letters) const {
  std::size_t w = 0;
  for (int l : letters) {
    if (l < 0 || static_cast<std::size_t>(l) >= dimV()) throw DimensionError("letter out of range");
    w = w * dimV() + static_cast<std::size_t>(l);
  }
  return w;
}

std::vector<int> TensorContext::letters(std::size_t word, std::size_t n) const {
  std::vector<int> out(n);
  for (std::size_t k = n; k-- > 0;) {
    out[k] = static_cast<int>(word % dimV());
    word /= dimV();
  }
  return out;
}

SparseVector TensorContext::act_on_word(int g, std::size_t word, std::size_t n) const {
  if (g == 0) return SparseVector::unit(word);
  std::vector<SparseVector::Entry> cur{{0, Scalar(1)}}, next;
  for (int letter : letters(word, n)) {
    next.clear();
    for (const auto& [idx, c] : cur)
      for (const auto& [i, r] : cols_[g][letter]) next.emplace_back(idx * dimV() + static_cast<std::size_t>(i), c * r);
    std::swap(cur, next);
  }
  return SparseVector(std::move(cur));
}

SparseVector TensorContext::left_act(int g, const SparseVector& x, std::size_t n) const {
  const std::size_t G = group_order();
  std::vector<SparseVector::Entry> out;
  for (const auto& [idx, c] : x.entries()) {
    const int h = static_cast<int>(idx % G);
    const int gh = group_.multiply(g, h);
    const SparseVector acted = act_on_word(g, idx / G, n);
    for (const auto& [w, r] : acted.entries()) out.emplace_back(index(w, gh), c * r);
  }
  return SparseVector(std::move(out));
}

SparseVector TensorContext::right_act(const SparseVector& x, int g) const {
  const std::size_t G = group_order();
  std::vector<SparseVector::Entry> out;
  out.reserve(x.size());
  for (const auto& [idx, c] : x.entries())
    out.emplace_back(index(idx / G, group_.multiply(static_cast<int>(idx % G), g)), c);
  return SparseVector(std::move(out));
}

SparseVector TensorContext::multiply(const SparseVector& a, std::size_t /*i*/, const SparseVector& b,
                                     std::size_t j) const {
  const std::size_t G = group_order();
  const std::size_t wj = words(j);
  std::vector<SparseVector::Entry> out;
  std::unordered_map<std::size_t, SparseVector> cache;  // key g * wj + w
  for (const auto& [ia, ca] : a.entries()) {
    const std::size_t u = ia / G;
    const int g = static_cast<int>(ia % G);
    for (const auto& [ib, cb] : b.entries()) {
      const std::size_t w = ib / G;
      const int gh = group_.multiply(g, static_cast<int>(ib % G));
      Scalar c = ca * cb;
      if (g == 0) {
        out.emplace_back(index(u * wj + w, gh), std::move(c));
        continue;
      }
      auto key = static_cast<std::size_t>(g) * wj + w;
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, act_on_word(g, w, j)).first;
      for (const auto& [w2, r] : it->second.entries()) out.emplace_back(index(u * wj + w2, gh), c * r);
    }
  }
  return SparseVector(std::move(out));
}

SparseVector TensorContext::to_filtered(const SparseVector& x, std::size_t deg, std::size_t top) const {
  if (deg > top) throw DimensionError("degree exceeds filtration top");
  return x.shifted(static_cast<std::ptrdiff_t>(block_offset(top, deg)));
}

SparseVector TensorContext::block(const SparseVector& x, std::size_t top, std::size_t deg) const {
  const std::size_t lo = block_offset(top, deg), hi = lo + component_dim(deg);
  SparseVector out;
  for (const auto& [i, c] : x.entries())
    if (i >= lo && i < hi) out.push_back(i - lo, c);
  return out;
}

SparseVector TensorContext::lift(const SparseVector& x, std::size_t from, std::size_t to) const {
  if (from > to) throw DimensionError("lift to a smaller filtration piece");
  return x.shifted(static_cast<std::ptrdiff_t>(filtered_dim(to) - filtered_dim(from)));
}

SparseVector TensorContext::lower(const SparseVector& x, std::size_t from, std::size_t to) const {
  const std::size_t off = filtered_dim(to) - filtered_dim(from);
  if (!x.empty() && x.leading_index() < off) throw DimensionError("vector does not lie in the smaller filtration piece");
  return x.shifted(-static_cast<std::ptrdiff_t>(off));
}

namespace {

// Calls f(deg, local index, coeff) for each entry of a filtered vector.
template <class F>
void for_each_block(const TensorContext& ctx, const SparseVector& x, std::size_t top, F&& f) {
  std::size_t deg = top;
  std::size_t lo = 0, hi = ctx.component_dim(top);
  for (const auto& [i, c] : x.entries()) {
    while (i >= hi) {
      --deg;
      lo = hi;
      hi += ctx.component_dim(deg);
    }
    f(deg, i - lo, c);
  }
}

}  // namespace

SparseVector TensorContext::filtered_multiply(const SparseVector& a, std::size_t top_a, const SparseVector& b,
                                              std::size_t top_b) const {
  const std::size_t top = top_a + top_b;
  std::vector<SparseVector> parts;
  for (std::size_t i = 0; i <= top_a; ++i) {
    SparseVector ai = block(a, top_a, i);
    if (ai.empty()) continue;
    for (std::size_t j = 0; j <= top_b; ++j) {
      SparseVector bj = block(b, top_b, j);
      if (bj.empty()) continue;
      parts.push_back(to_filtered(multiply(ai, i, bj, j), i + j, top));
    }
  }
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  for (const auto& p : parts) terms.emplace_back(Scalar(1), &p);
  return linear_combination(terms);
}

SparseVector TensorContext::filtered_left_act(int g, const SparseVector& x, std::size_t top) const {
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  std::vector<SparseVector> parts;
  parts.reserve(top + 1);
  for (std::size_t d = 0; d <= top; ++d) {
    SparseVector b = block(x, top, d);
    if (!b.empty()) parts.push_back(to_filtered(left_act(g, b, d), d, top));
  }
  for (const auto& p : parts) terms.emplace_back(Scalar(1), &p);
  return linear_combination(terms);
}

SparseVector TensorContext::filtered_right_act(const SparseVector& x, std::size_t top, int g) const {
  std::vector<SparseVector::Entry> out;
  out.reserve(x.size());
  const std::size_t G = group_order();
  for_each_block(*this, x, top, [&](std::size_t deg, std::size_t local, const Scalar& c) {
    std::size_t idx = index(local / G, group_.multiply(static_cast<int>(local % G), g));
    out.emplace_back(block_offset(top, deg) + idx, c);
  });
  return SparseVector(std::move(out));
}

SparseVector TensorContext::filtered_prefix(std::size_t u, std::size_t a, const SparseVector& x,
                                            std::size_t top) const {
  std::vector<SparseVector::Entry> out;
  out.reserve(x.size());
  for_each_block(*this, x, top, [&](std::size_t deg, std::size_t local, const Scalar& c) {
    out.emplace_back(block_offset(top + a, deg + a) + u * component_dim(deg) + local, c);
  });
  return SparseVector(std::move(out));
}

SparseVector TensorContext::filtered_suffix(const SparseVector& x, std::size_t top, std::size_t w,
                                            std::size_t a) const {
  const std::size_t G = group_order();
  const std::size_t wa = words(a);
  std::vector<SparseVector::Entry> out;
  std::vector<SparseVector> acted(G);
  std::vector<char> have(G, 0);
  for_each_block(*this, x, top, [&](std::size_t deg, std::size_t local, const Scalar& c) {
    const std::size_t word = local / G;
    const int h = static_cast<int>(local % G);
    const std::size_t off = block_offset(top + a, deg + a);
    if (!have[h]) {
      acted[h] = act_on_word(h, w, a);
      have[h] = 1;
    }
    for (const auto& [w2, r] : acted[h].entries()) out.emplace_back(off + index(word * wa + w2, h), c * r);
  });
  return SparseVector(std::move(out));
}

SparseVector TensorContext::encode(std::span<const Term> terms, std::size_t degree) const {
  std::vector<SparseVector::Entry> out;
  for (const auto& t : terms) {
    if (t.word.size() != degree) throw DimensionError("term has wrong length");
    if (t.g < 0 || static_cast<std::size_t>(t.g) >= group_order()) throw DimensionError("group index out of range");
    out.emplace_back(index(word_index(t.word), t.g), t.coeff);
  }
  return SparseVector(std::move(out));
}

SparseVector TensorContext::encode_filtered(std::span<const Term> terms, std::size_t top) const {
  std::vector<SparseVector::Entry> out;
  for (const auto& t : terms) {
    if (t.word.size() > top) throw DimensionError("term longer than filtration top");
    if (t.g < 0 || static_cast<std::size_t>(t.g) >= group_order()) throw DimensionError("group index out of range");
    out.emplace_back(block_offset(top, t.word.size()) + index(word_index(t.word), t.g), t.coeff);
  }
  return SparseVector(std::move(out));
}

std::vector<Term> TensorContext::decode(const SparseVector& x, std::size_t degree) const {
  std::vector<Term> out;
  const std::size_t G = group_order();
  for (const auto& [i, c] : x.entries()) out.push_back({c, letters(i / G, degree), static_cast<int>(i % G)});
  return out;
}

std::vector<Term> TensorContext::decode_filtered(const SparseVector& x, std::size_t top) const {
  std::vector<Term> out;
  const std::size_t G = group_order();
  for_each_block(*this, x, top, [&](std::size_t deg, std::size_t local, const Scalar& c) {
    out.push_back({c, letters(local / G, deg), static_cast<int>(local % G)});
  });
  return out;
}

// ---------------------------------------------------------------- closures

Subspace bimodule_closure(const TensorContext& ctx, std::size_t degree, std::span<const SparseVector> gens) {
  const int n = static_cast<int>(ctx.group_order());
  EchelonBuilder right(ctx.component_dim(degree));
  for (const auto& v : gens)
    for (int h = 0; h < n; ++h) right.insert(ctx.right_act(v, h));
  Subspace s1 = std::move(right).finish();
  if (n == 1) return s1;
  EchelonBuilder both(s1);
  for (const auto& r : s1.rows())
    for (int g = 1; g < n; ++g) both.insert(ctx.left_act(g, r, degree));
  return std::move(both).finish();
}

bool is_bimodule_closed(const TensorContext& ctx, std::size_t degree, const Subspace& s) {
  if (s.ambient_dim() != ctx.component_dim(degree)) return false;
  for (int g : ctx.group().generators)
    for (const auto& r : s.rows())
      if (!s.contains(ctx.left_act(g, r, degree)) || !s.contains(ctx.right_act(r, g))) return false;
  return true;
}

Subspace filtered_closure(const TensorContext& ctx, std::size_t top, std::span<const SparseVector> gens) {
  const int n = static_cast<int>(ctx.group_order());
  EchelonBuilder right(ctx.filtered_dim(top));
  for (const auto& v : gens)
    for (int h = 0; h < n; ++h) right.insert(ctx.filtered_right_act(v, top, h));
  Subspace s1 = std::move(right).finish();
  if (n == 1) return s1;
  EchelonBuilder both(s1);
  for (const auto& r : s1.rows())
    for (int g = 1; g < n; ++g) both.insert(ctx.filtered_left_act(g, r, top));
  return std::move(both).finish();
}

Subspace drop_prefix(const Subspace& s, std::size_t offset, std::size_t new_ambient) {
  std::vector<SparseVector> rows;
  rows.reserve(s.dim());
  for (const auto& r : s.rows()) {
    if (r.leading_index() < offset) throw DimensionError("subspace does not lie in the tail");
    rows.push_back(r.shifted(-static_cast<std::ptrdiff_t>(offset)));
  }
  return Subspace::from_rref_rows(new_ambient, std::move(rows));
}

// ---------------------------------------------------------------- Subbimodule

Subbimodule::Subbimodule(ContextPtr ctx, std::size_t degree, Subspace s, bool)
    : ctx_(std::move(ctx)), degree_(degree), space_(std::move(s)) {
  if (space_.ambient_dim() != ctx_->component_dim(degree_)) throw DimensionError("subspace has wrong ambient dimension");
}

Subbimodule::Subbimodule(ContextPtr ctx, std::size_t degree, Subspace s)
    : Subbimodule(std::move(ctx), degree, std::move(s), true) {
  if (!is_closed()) throw std::invalid_argument("subspace is not closed under the group actions");
}

Subbimodule Subbimodule::trusted(ContextPtr ctx, std::size_t degree, Subspace s) {
  return Subbimodule(std::move(ctx), degree, std::move(s), true);
}

Subbimodule Subbimodule::generated(ContextPtr ctx, std::size_t degree, std::span<const SparseVector> gens) {
  Subspace s = bimodule_closure(*ctx, degree, gens);
  return trusted(std::move(ctx), degree, std::move(s));
}

Subbimodule Subbimodule::zero(ContextPtr ctx, std::size_t degree) {
  std::size_t d = ctx->component_dim(degree);
  return trusted(std::move(ctx), degree, Subspace(d));
}

Subbimodule Subbimodule::full(ContextPtr ctx, std::size_t degree) {
  std::size_t d = ctx->component_dim(degree);
  return trusted(std::move(ctx), degree, Subspace::full(d));
}

Subbimodule sum(const Subbimodule& a, const Subbimodule& b) {
  require_same(a, b);
  if (a.degree() != b.degree()) throw DimensionError("sum of different degrees");
  return Subbimodule::trusted(a.context(), a.degree(), sum(a.space(), b.space()));
}

Subbimodule intersect(const Subbimodule& a, const Subbimodule& b) {
  require_same(a, b);
  if (a.degree() != b.degree()) throw DimensionError("intersection of different degrees");
  return Subbimodule::trusted(a.context(), a.degree(), intersect(a.space(), b.space()));
}

Subbimodule left_power(std::size_t a, const Subbimodule& E) {
  const auto& ctx = E.ctx();
  const std::size_t block = ctx.component_dim(E.degree());
  const std::size_t n = E.degree() + a;
  std::vector<SparseVector> rows;
  rows.reserve(E.dim() * ctx.words(a));
  for (std::size_t u = 0; u < ctx.words(a); ++u)
    for (const auto& r : E.space().rows()) rows.push_back(r.shifted(static_cast<std::ptrdiff_t>(u * block)));
  return Subbimodule::trusted(E.context(), n, Subspace::from_rref_rows(ctx.component_dim(n), std::move(rows)));
}

Subbimodule right_power(const Subbimodule& E, std::size_t a) {
  if (a == 0) return E;
  const auto& ctx = E.ctx();
  const std::size_t n = E.degree() + a;
  if (E.dim() == ctx.component_dim(E.degree())) return Subbimodule::full(E.context(), n);
  EchelonBuilder b(ctx.component_dim(n));
  for (const auto& r : E.space().rows())
    for (std::size_t w = 0; w < ctx.words(a); ++w) {
      // filtered_suffix on a single block equals the homogeneous suffix
      b.insert(ctx.filtered_suffix(r, E.degree(), w, a).shifted(
          -static_cast<std::ptrdiff_t>(ctx.block_offset(n, n))));
    }
  return Subbimodule::trusted(E.context(), n, std::move(b).finish());
}

Subbimodule sandwich(std::size_t i, const Subbimodule& E, std::size_t j) { return left_power(i, right_power(E, j)); }

Subbimodule product_EF(const Subbimodule& E, const Subbimodule& F) {
  require_same(E, F);
  const auto& ctx = E.ctx();
  if (E.dim() == ctx.component_dim(E.degree())) return left_power(E.degree(), F);
  if (F.dim() == ctx.component_dim(F.degree())) return right_power(E, F.degree());
  const std::size_t n = E.degree() + F.degree();
  EchelonBuilder b(ctx.component_dim(n));
  for (const auto& e : E.space().rows())
    for (const auto& f : F.space().rows()) b.insert(ctx.multiply(e, E.degree(), f, F.degree()));
  return Subbimodule::trusted(E.context(), n, std::move(b).finish());
}

std::vector<Subbimodule> ideal_components(const Subbimodule& R, std::size_t nmax) {
  const auto& ctx = R.ctx();
  const std::size_t N = R.degree();
  std::vector<Subbimodule> out;
  out.reserve(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    if (n < N) {
      out.push_back(Subbimodule::zero(R.context(), n));
    } else if (n == N) {
      out.push_back(R);
    } else {
      Subbimodule vi = left_power(1, out[n - 1]);
      EchelonBuilder b(vi.space());
      const std::size_t a = n - N;
      for (const auto& r : R.space().rows())
        for (std::size_t w = 0; w < ctx.words(a); ++w)
          b.insert(ctx.filtered_suffix(r, N, w, a).shifted(-static_cast<std::ptrdiff_t>(ctx.block_offset(n, n))));
      out.push_back(Subbimodule::trusted(R.context(), n, std::move(b).finish()));
    }
  }
  return out;
}

Subbimodule ideal_component(const Subbimodule& R, std::size_t n) { return ideal_components(R, n).back(); }

Subbimodule W(const Subbimodule& R, std::size_t n) {
  const std::size_t N = R.degree();
  if (n < N) throw DimensionError("W_n requires n >= N");
  Subbimodule acc = sandwich(0, R, n - N);
  for (std::size_t i = 1; i <= n - N; ++i) {
    if (acc.dim() == 0) break;
    acc = intersect(acc, sandwich(i, R, n - N - i));
  }
  return acc;
}

bool check_lemma22(const Subbimodule& E, const Subbimodule& Ep, const Subbimodule& F, const Subbimodule& Fp,
                   Lemma22 which) {
  if (E.degree() != Ep.degree() || F.degree() != Fp.degree())
    throw std::invalid_argument("check_lemma22: degree mismatch");
  switch (which) {
    case Lemma22::i:
      return intersect(product_EF(E, F), product_EF(E, Fp)) == product_EF(E, intersect(F, Fp));
    case Lemma22::ii:
      return intersect(product_EF(E, F), product_EF(Ep, F)) == product_EF(intersect(E, Ep), F);
    case Lemma22::iii:
      if (!E.contains(Ep) || !F.contains(Fp)) throw std::invalid_argument("check_lemma22 (iii): need E' in E, F' in F");
      return intersect(product_EF(Ep, F), product_EF(E, Fp)) == product_EF(Ep, Fp);
  }
  return false;
}

// ---------------------------------------------------------------- FilteredSubspace

FilteredSubspace::FilteredSubspace(ContextPtr ctx, std::size_t top, Subspace s, bool)
    : ctx_(std::move(ctx)), top_(top), space_(std::move(s)) {
  if (space_.ambient_dim() != ctx_->filtered_dim(top_)) throw DimensionError("subspace has wrong ambient dimension");
}

FilteredSubspace::FilteredSubspace(ContextPtr ctx, std::size_t top, Subspace s)
    : FilteredSubspace(std::move(ctx), top, std::move(s), true) {
  if (!is_closed()) throw std::invalid_argument("filtered subspace is not closed under the group actions");
}

FilteredSubspace FilteredSubspace::trusted(ContextPtr ctx, std::size_t top, Subspace s) {
  return FilteredSubspace(std::move(ctx), top, std::move(s), true);
}

FilteredSubspace FilteredSubspace::generated(ContextPtr ctx, std::size_t top, std::span<const SparseVector> gens) {
  Subspace s = filtered_closure(*ctx, top, gens);
  return trusted(std::move(ctx), top, std::move(s));
}

bool FilteredSubspace::is_closed() const {
  for (int g : ctx_->group().generators)
    for (const auto& r : space_.rows())
      if (!space_.contains(ctx_->filtered_left_act(g, r, top_)) ||
          !space_.contains(ctx_->filtered_right_act(r, top_, g)))
        return false;
  return true;
}

FilteredSubspace FilteredSubspace::below() const {
  if (top_ == 0) throw DimensionError("F^{-1} is not represented");
  const std::size_t off = ctx_->component_dim(top_);
  return trusted(ctx_, top_ - 1, drop_prefix(space_.intersect_tail(off), off, ctx_->filtered_dim(top_ - 1)));
}

FilteredSubspace FilteredSubspace::lifted(std::size_t to) const {
  if (to < top_) throw DimensionError("lift to a smaller filtration piece");
  const std::size_t off = ctx_->filtered_dim(to) - ctx_->filtered_dim(top_);
  return trusted(ctx_, to, space_.shifted(off, ctx_->filtered_dim(to)));
}

}  // namespace koszul
