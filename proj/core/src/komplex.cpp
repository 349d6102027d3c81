#include "koszul/komplex.hpp"

#include <map>
#include <numeric>
#include <random>

#include "koszul/parallel.hpp"

namespace koszul {

namespace {

int arrangement_sign(const std::vector<int>& order) {
  int s = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) s = -s;
  return s;
}

}  // namespace

std::size_t sparse_rank(std::span<const SparseVector> vectors) {
  std::vector<std::size_t> used;
  for (const auto& v : vectors)
    for (const auto& [i, c] : v.entries()) used.push_back(i);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  EchelonBuilder b(used.size());
  for (const auto& v : vectors) {
    std::vector<SparseVector::Entry> e;
    e.reserve(v.size());
    for (const auto& [i, c] : v.entries())
      e.emplace_back(static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), i) - used.begin()), c);
    b.insert(SparseVector(std::move(e)));
  }
  return b.rank();
}

// ---------------------------------------------------------------------------
// TruncatedU

TruncatedU::TruncatedU(const FilteredPresentation& pres, std::size_t D, unsigned shuffle_seed)
    : pres_(pres), D_(D) {
  const auto& c = ctx();
  J_ = compute_J(pres_, D).back().space();
  const std::size_t total = c.filtered_dim(D);
  index_of_.assign(total, -1);
  std::vector<char> pivot(total, 0);
  for (std::size_t p : J_.pivots()) pivot[p] = 1;
  // lowest degree first: the tail of the top-first layout
  for (std::size_t d = 0; d <= D; ++d) {
    const std::size_t lo = c.block_offset(D, d);
    for (std::size_t k = 0; k < c.component_dim(d); ++k)
      if (!pivot[lo + k]) {
        index_of_[lo + k] = static_cast<long>(coord_.size());
        coord_.push_back(lo + k);
        degree_.push_back(d);
      }
  }
  const std::size_t n = dim();
  const std::size_t G = c.group_order();

  letters_.resize(c.dimV());
  if (D >= 1)
    for (std::size_t v = 0; v < c.dimV(); ++v) letters_[v] = reduce(SparseVector::unit(c.index(v, 0)), 1);
  left_.resize(G * n);
  parallel_for(n, [&](std::size_t i) {
    const std::size_t d = degree_[i];
    SparseVector local = SparseVector::unit(coord_[i] - c.block_offset(D, d));
    for (int g = 0; g < static_cast<int>(G); ++g) left_[g * n + i] = reduce(c.left_act(g, local, d), d);
  });

  // greedy filtered right K-basis
  std::vector<SparseVector> right(G * n);
  parallel_for(n, [&](std::size_t i) {
    const std::size_t d = degree_[i];
    SparseVector local = SparseVector::unit(coord_[i] - c.block_offset(D, d));
    for (int g = 0; g < static_cast<int>(G); ++g) right[i * G + g] = reduce(c.right_act(local, g), d);
  });
  std::mt19937 rng(shuffle_seed);
  EchelonBuilder span(n);
  std::vector<SparseVector> aug;
  std::size_t start = 0;
  for (std::size_t d = 0; d <= D; ++d) {
    std::size_t stop = start;
    while (stop < n && degree_[stop] == d) ++stop;
    std::vector<std::size_t> order(stop - start);
    std::iota(order.begin(), order.end(), start);
    if (shuffle_seed != 0)
      for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng() % k]);
    for (std::size_t i : order) {
      EchelonBuilder local(n);
      for (std::size_t g = 0; g < G; ++g) local.insert(span.residual(right[i * G + g]));
      if (local.rank() < G) continue;
      const std::size_t k = B_.size();
      B_.push_back(i);
      for (std::size_t g = 0; g < G; ++g) {
        span.insert(right[i * G + g]);
        SparseVector row = right[i * G + g];
        row.push_back(n + k * G + g, Scalar(1));
        aug.push_back(std::move(row));
      }
    }
    if (span.rank() != stop)
      throw NotFreeOverK("U^{<=" + std::to_string(d) + "} is not free as a right K-module on a filtered basis");
    start = stop;
  }
  right_aug_ = Subspace::span(n + B_.size() * G, aug);
}

std::size_t TruncatedU::dim_upto(std::size_t n) const {
  return static_cast<std::size_t>(std::upper_bound(degree_.begin(), degree_.end(), n) - degree_.begin());
}

std::size_t TruncatedU::degree_of(const SparseVector& u) const {
  std::size_t d = 0;
  for (const auto& [i, c] : u.entries()) d = std::max(d, degree_[i]);
  return d;
}

SparseVector TruncatedU::reduce(const SparseVector& x, std::size_t top) const {
  if (top > D_) throw DegreeOverflow("degree " + std::to_string(top) + " exceeds the bound " + std::to_string(D_));
  SparseVector r = J_.reduce(ctx().lift(x, top, D_));
  std::vector<SparseVector::Entry> e;
  e.reserve(r.size());
  for (const auto& [i, c] : r.entries()) e.emplace_back(static_cast<std::size_t>(index_of_[i]), c);
  return SparseVector(std::move(e));
}

SparseVector TruncatedU::representative(const SparseVector& u, std::size_t top) const {
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, c] : u.entries()) e.emplace_back(coord_[i], c);
  return ctx().lower(SparseVector(std::move(e)), D_, top);
}

SparseVector TruncatedU::multiply(const SparseVector& a, const SparseVector& b) const {
  const auto& c = ctx();
  std::vector<SparseVector> parts;
  for (const auto& [i, ca] : a.entries())
    for (const auto& [j, cb] : b.entries()) {
      const std::size_t di = degree_[i], dj = degree_[j];
      if (di + dj > D_) throw DegreeOverflow("product leaves U^{<=" + std::to_string(D_) + "}");
      SparseVector ui = SparseVector::unit(coord_[i] - c.block_offset(D_, di), ca);
      SparseVector uj = SparseVector::unit(coord_[j] - c.block_offset(D_, dj), cb);
      parts.push_back(c.to_filtered(c.multiply(ui, di, uj, dj), di + dj, D_));
    }
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  for (const auto& p : parts) terms.emplace_back(Scalar(1), &p);
  return reduce(linear_combination(terms), D_);
}

SparseVector TruncatedU::word(std::size_t w, std::size_t n) const {
  return reduce(ctx().to_filtered(SparseVector::unit(ctx().index(w, 0)), n, n), n);
}

std::vector<TruncatedU::RightTerm> TruncatedU::decompose_right(const SparseVector& u) const {
  const std::size_t n = dim(), G = ctx().group_order();
  SparseVector r = right_aug_.reduce(u);
  std::vector<RightTerm> out;
  for (const auto& [i, c] : r.entries()) {
    if (i < n) throw std::logic_error("right K-basis does not span U");
    const std::size_t k = i - n;
    out.push_back({k / G, static_cast<int>(k % G), -c});
  }
  return out;
}

// ---------------------------------------------------------------------------
// BimoduleComplex

BimoduleComplex::BimoduleComplex(const TruncatedU& U)
    : U_(U), phi_(build_phi(U.presentation())), A_(homogenization(U.presentation())) {
  if (!phi_.is_phi0()) throw std::invalid_argument("the bimodule complex needs phi = phi_0 (phi lands in degree 0)");
  const std::size_t n = U_.dim(), dv = ctx().dimV(), D = bound();
  const auto& B = U_.right_basis();
  bv_.resize(B.size() * dv);
  parallel_for(B.size(), [&](std::size_t b) {
    if (U_.degree(B[b]) + 1 > D) return;
    for (std::size_t v = 0; v < dv; ++v)
      bv_[b * dv + v] = U_.decompose_right(U_.multiply(SparseVector::unit(B[b]), U_.letter(v)));
  });
  vu_.resize(dv * n);
  parallel_for(n, [&](std::size_t u) {
    if (U_.degree(u) + 1 > D) return;
    for (std::size_t v = 0; v < dv; ++v) vu_[v * n + u] = U_.multiply(U_.letter(v), SparseVector::unit(u));
  });
  mu_.resize(B.size() * n);
  parallel_for(B.size(), [&](std::size_t b) {
    for (std::size_t u = 0; u < n; ++u)
      if (U_.degree(B[b]) + U_.degree(u) <= D)
        mu_[b * n + u] = U_.multiply(SparseVector::unit(B[b]), SparseVector::unit(u));
  });
}

std::size_t BimoduleComplex::model_index(std::size_t b, std::size_t w, std::size_t n, std::size_t u) const {
  return (b * ctx().words(n) + w) * U_.dim() + u;
}

std::size_t BimoduleComplex::total_degree(std::size_t idx, std::size_t n) const {
  const std::size_t u = idx % U_.dim();
  const std::size_t b = idx / U_.dim() / ctx().words(n);
  return U_.degree(U_.right_basis()[b]) + n + U_.degree(u);
}

SparseVector BimoduleComplex::embed(const SparseVector& a, const SparseVector& y, std::size_t n,
                                    const SparseVector& c) const {
  const auto& cx = ctx();
  const std::size_t G = cx.group_order();
  std::vector<SparseVector::Entry> out;
  for (const auto& t : U_.decompose_right(a))
    for (const auto& [yi, cy] : y.entries()) {
      const std::size_t w = yi / G;
      const int gh = cx.group().multiply(t.g, static_cast<int>(yi % G));
      SparseVector gw = cx.act_on_word(t.g, w, n);
      std::vector<SparseVector::Entry> hu;
      for (const auto& [u, cu] : c.entries())
        for (const auto& [u2, c2] : U_.group_left(gh, u).entries()) hu.emplace_back(u2, cu * c2);
      SparseVector huv(std::move(hu));
      const Scalar k = t.coeff * cy;
      for (const auto& [w2, cw] : gw.entries()) {
        const Scalar kw = k * cw;
        for (const auto& [u2, cu] : huv.entries()) out.emplace_back(model_index(t.b, w2, n, u2), kw * cu);
      }
    }
  return SparseVector(std::move(out));
}

std::vector<BimoduleComplex::Generator> BimoduleComplex::generators(std::size_t n, std::size_t t) const {
  std::vector<Generator> out;
  if (n > t) return out;
  const auto& B = U_.right_basis();
  const std::size_t rows = A_.Wn(n).space().dim();
  for (std::size_t b = 0; b < B.size(); ++b) {
    const std::size_t db = U_.degree(B[b]);
    if (db + n > t) continue;
    const std::size_t ucount = U_.dim_upto(t - db - n);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t u = 0; u < ucount; ++u) out.push_back({b, r, u});
  }
  return out;
}

SparseVector BimoduleComplex::generator_vector(std::size_t n, const Generator& g) const {
  const std::size_t G = ctx().group_order();
  const auto& x = A_.Wn(n).space().rows()[g.row];
  std::vector<SparseVector::Entry> out;
  for (const auto& [yi, cy] : x.entries())
    for (const auto& [u2, cu] : U_.group_left(static_cast<int>(yi % G), g.u).entries())
      out.emplace_back(model_index(g.b, yi / G, n, u2), cy * cu);
  return SparseVector(std::move(out));
}

std::vector<SparseVector> BimoduleComplex::spanning(std::size_t n, std::size_t t) const {
  const auto gens = generators(n, t);
  std::vector<SparseVector> out(gens.size());
  parallel_for(gens.size(), [&](std::size_t i) { out[i] = generator_vector(n, gens[i]); });
  return out;
}

SparseVector BimoduleComplex::d_left(std::size_t n, const SparseVector& x) const {
  if (n == 0) throw std::invalid_argument("d_left out of level 0");
  const auto& cx = ctx();
  const std::size_t dimU = U_.dim(), dv = cx.dimV(), wn = cx.words(n), wrest = cx.words(n - 1);
  std::vector<SparseVector::Entry> out;
  for (const auto& [idx, c] : x.entries()) {
    const std::size_t u = idx % dimU, w = (idx / dimU) % wn, b = idx / dimU / wn;
    const std::size_t v = w / wrest, rest = w % wrest;
    for (const auto& t : bv_[b * dv + v]) {
      SparseVector gw = cx.act_on_word(t.g, rest, n - 1);
      const Scalar k = c * t.coeff;
      for (const auto& [u2, cu] : U_.group_left(t.g, u).entries())
        for (const auto& [w2, cw] : gw.entries()) out.emplace_back(model_index(t.b, w2, n - 1, u2), k * cw * cu);
    }
  }
  return SparseVector(std::move(out));
}

SparseVector BimoduleComplex::d_right(std::size_t n, const SparseVector& x) const {
  if (n == 0) throw std::invalid_argument("d_right out of level 0");
  const auto& cx = ctx();
  const std::size_t dimU = U_.dim(), dv = cx.dimV(), wn = cx.words(n);
  std::vector<SparseVector::Entry> out;
  for (const auto& [idx, c] : x.entries()) {
    const std::size_t u = idx % dimU, w = (idx / dimU) % wn, b = idx / dimU / wn;
    const std::size_t v = w % dv, rest = w / dv;
    if (U_.degree(u) + 1 > bound()) throw DegreeOverflow("d_right leaves U^{<=D}");
    for (const auto& [u2, cu] : vu_[v * dimU + u].entries()) out.emplace_back(model_index(b, rest, n - 1, u2), c * cu);
  }
  return SparseVector(std::move(out));
}

SparseVector BimoduleComplex::d(std::size_t n, const SparseVector& x, const Scalar& q) const {
  SparseVector out = d_left(n, x);
  out.axpy(-q.pow(static_cast<long>(n) - 1), d_right(n, x));
  return out;
}

SparseMatrix BimoduleComplex::d_left_matrix(std::size_t n, std::size_t t) const {
  const auto span = spanning(n, t);
  SparseMatrix m;
  m.cols = U_.right_basis().size() * ctx().words(n - 1) * U_.dim();
  m.rows.resize(span.size());
  parallel_for(span.size(), [&](std::size_t i) { m.rows[i] = d_left(n, span[i]); });
  return m;
}

SparseMatrix BimoduleComplex::d_right_matrix(std::size_t n, std::size_t t) const {
  const auto span = spanning(n, t);
  SparseMatrix m;
  m.cols = U_.right_basis().size() * ctx().words(n - 1) * U_.dim();
  m.rows.resize(span.size());
  parallel_for(span.size(), [&](std::size_t i) { m.rows[i] = d_right(n, span[i]); });
  return m;
}

SparseVector BimoduleComplex::phi_left(std::size_t n, const Generator& g) const {
  const std::size_t N = this->N();
  const auto& x = A_.Wn(n).space().rows()[g.row];
  return embed(SparseVector::unit(U_.right_basis()[g.b]), phi_.lifted_component(1, n - N, 0, x), n - N,
               SparseVector::unit(g.u));
}

SparseVector BimoduleComplex::phi_right(std::size_t n, const Generator& g) const {
  const std::size_t N = this->N();
  const auto& x = A_.Wn(n).space().rows()[g.row];
  return embed(SparseVector::unit(U_.right_basis()[g.b]), phi_.lifted_component(n - N + 1, 0, 0, x), n - N,
               SparseVector::unit(g.u));
}

SparseVector BimoduleComplex::augmentation(const SparseVector& x) const {
  const std::size_t dimU = U_.dim();
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  for (const auto& [idx, c] : x.entries()) {
    const std::size_t u = idx % dimU, b = idx / dimU;
    if (U_.degree(U_.right_basis()[b]) + U_.degree(u) > bound()) throw DegreeOverflow("mu leaves U^{<=D}");
    terms.emplace_back(c, &mu_[b * dimU + u]);
  }
  return linear_combination(terms);
}

// ---------------------------------------------------------------------------
// checks

namespace {

// Span of vectors with sparse, possibly huge indices.
class CompressedSpan {
 public:
  explicit CompressedSpan(std::span<const SparseVector> vectors) {
    for (const auto& v : vectors)
      for (const auto& [i, c] : v.entries()) used_.push_back(i);
    std::sort(used_.begin(), used_.end());
    used_.erase(std::unique(used_.begin(), used_.end()), used_.end());
    EchelonBuilder b(used_.size());
    for (const auto& v : vectors) b.insert(*map(v));
    space_ = std::move(b).finish();
  }
  bool contains(const SparseVector& v) const {
    auto m = map(v);
    return m && space_.contains(*m);
  }

 private:
  std::optional<SparseVector> map(const SparseVector& v) const {
    std::vector<SparseVector::Entry> e;
    e.reserve(v.size());
    for (const auto& [i, c] : v.entries()) {
      auto it = std::lower_bound(used_.begin(), used_.end(), i);
      if (it == used_.end() || *it != i) return std::nullopt;
      e.emplace_back(static_cast<std::size_t>(it - used_.begin()), c);
    }
    return SparseVector(std::move(e));
  }
  std::vector<std::size_t> used_;
  Subspace space_;
};

bool is_primitive_root(const Scalar& q, std::size_t N) {
  Scalar x(1);
  for (std::size_t k = 1; k < N; ++k) {
    x *= q;
    if (x.is_one()) return false;
  }
  return (x * q).is_one();
}

}  // namespace

NComplexReport check_dN_zero(const BimoduleComplex& cx, const Scalar& q) {
  const std::size_t N = cx.N(), D = cx.bound();
  if (D < N) throw std::invalid_argument("the bound is too small to compose N differentials");
  if (!is_primitive_root(q, N)) throw std::invalid_argument("q is not a primitive N-th root of unity");
  NComplexReport rep;
  rep.N = N;
  rep.bound = D;
  rep.q = q.to_string();

  for (std::size_t n = 1; n <= D; ++n) {
    const auto gens = cx.generators(n, D);
    std::vector<SparseVector> vs(gens.size());
    parallel_for(gens.size(), [&](std::size_t i) { vs[i] = cx.generator_vector(n, gens[i]); });
    const CompressedSpan below(cx.spanning(n - 1, D));
    std::vector<char> lands(gens.size(), 1), commute(gens.size(), 1), zero(gens.size(), 1), fact(gens.size(), 1),
        phi(gens.size(), 1);
    parallel_for(gens.size(), [&](std::size_t i) {
      const SparseVector l = cx.d_left(n, vs[i]), r = cx.d_right(n, vs[i]);
      lands[i] = below.contains(l) && below.contains(r);
      if (n >= 2) commute[i] = cx.d_left(n - 1, r) == cx.d_right(n - 1, l);
      if (n < N) return;
      SparseVector dN = vs[i], lN = vs[i], rN = vs[i];
      for (std::size_t k = n; k > n - N; --k) {
        dN = cx.d(k, dN, q);
        lN = cx.d_left(k, lN);
        rN = cx.d_right(k, rN);
      }
      const SparseVector diff = lN - rN;
      zero[i] = dN.empty();
      fact[i] = dN == diff;
      phi[i] = diff == cx.phi_left(n, gens[i]) - cx.phi_right(n, gens[i]);
    });
    auto all = [](const std::vector<char>& v) { return std::all_of(v.begin(), v.end(), [](char c) { return c != 0; }); };
    rep.lands_in_W = rep.lands_in_W && all(lands);
    rep.commute = rep.commute && all(commute);
    rep.factorization = rep.factorization && all(fact);
    rep.phi_identity = rep.phi_identity && all(phi);
    if (!all(zero)) {
      if (!rep.failing_level) rep.failing_level = n;
      rep.dN_zero = false;
    }
  }
  return rep;
}

SparseVector contracted_d(const BimoduleComplex& cx, std::size_t i, const SparseVector& x) {
  if (i == 0) throw std::invalid_argument("position 0 maps by the augmentation");
  const std::size_t N = cx.N(), m = zeta(i, N);
  if (i % 2 == 1) return cx.d_left(m, x) - cx.d_right(m, x);
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  std::vector<SparseVector> parts;
  parts.reserve(N);
  SparseVector r = x;
  for (std::size_t t = 0; t < N; ++t) {
    if (t > 0) r = cx.d_right(m - t + 1, r);
    SparseVector l = r;
    for (std::size_t s = 0; s + 1 + t < N; ++s) l = cx.d_left(m - t - s, l);
    parts.push_back(std::move(l));
  }
  for (const auto& p : parts) terms.emplace_back(Scalar(1), &p);
  return linear_combination(terms);
}

namespace {

ContractedSlice contracted_slice(const BimoduleComplex& cx, std::size_t t) {
  const std::size_t N = cx.N(), D = cx.bound();
  ContractedSlice sl;
  sl.t = t;
  sl.in_window = t + N <= D;
  sl.dim_U = cx.U().dim_upto(t);
  for (std::size_t i = 0; zeta(i, N) <= t; ++i) {
    const std::size_t m = zeta(i, N);
    const auto span = cx.spanning(m, t);
    std::vector<SparseVector> img(span.size());
    parallel_for(span.size(), [&](std::size_t k) {
      img[k] = i == 0 ? cx.augmentation(span[k]) : contracted_d(cx, i, span[k]);
    });
    sl.w_degrees.push_back(m);
    sl.dims.push_back(sparse_rank(span));
    sl.ranks.push_back(sparse_rank(img));
    if (i >= 1) {
      std::vector<char> ok(img.size(), 1);
      parallel_for(img.size(), [&](std::size_t k) {
        ok[k] = (i == 1 ? cx.augmentation(img[k]) : contracted_d(cx, i - 1, img[k])).empty();
      });
      if (std::find(ok.begin(), ok.end(), 0) != ok.end()) sl.composition_zero = false;
    }
  }
  const std::size_t P = sl.dims.size();
  sl.exact = sl.ranks[0] == sl.dim_U;
  if (!sl.exact) sl.failing_position = 0;
  for (std::size_t i = 0; i < P && sl.exact; ++i) {
    const std::size_t next = i + 1 < P ? sl.ranks[i + 1] : 0;
    if (sl.dims[i] - sl.ranks[i] != next) {
      sl.exact = false;
      sl.failing_position = i;
    }
  }
  sl.exact = sl.exact && sl.composition_zero;
  long e = -static_cast<long>(sl.dim_U);
  for (std::size_t i = 0; i < P; ++i) e += (i % 2 == 0 ? 1 : -1) * static_cast<long>(sl.dims[i]);
  sl.euler = e;
  return sl;
}

}  // namespace

ContractedReport contracted_complex(const BimoduleComplex& cx) {
  ContractedReport rep;
  rep.N = cx.N();
  rep.bound = cx.bound();
  rep.window = rep.bound >= rep.N ? rep.bound - rep.N : 0;
  for (std::size_t t = 0; t <= rep.bound; ++t) {
    rep.slices.push_back(contracted_slice(cx, t));
    const auto& s = rep.slices.back();
    rep.composition_zero = rep.composition_zero && s.composition_zero;
    rep.all_exact = rep.all_exact && s.exact;
    if (s.in_window) rep.window_exact = rep.window_exact && s.exact;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// wedge formulas

namespace {

struct WedgeTerm {
  std::vector<int> L, R;  // positions moved left and right, in product order
  int sign;
};

std::vector<WedgeTerm> wedge_terms(std::size_t m, std::size_t p, WedgeParity parity, WedgeForm form) {
  std::vector<WedgeTerm> out;
  const int mi = static_cast<int>(m);
  if (parity == WedgeParity::odd) {
    for (int k = 0; k < mi; ++k) {
      out.push_back({{k}, {}, k % 2 == 0 ? 1 : -1});
      out.push_back({{}, {k}, (mi - 1 - k) % 2 == 0 ? -1 : 1});
    }
    return out;
  }
  if (parity == WedgeParity::even_reduced && p % 2 != 0) throw std::invalid_argument("the reduced even formula needs p even");
  const std::size_t r = p - 1;
  if (m < r) return out;
  auto rest_of = [&](const std::vector<int>& chosen) {
    std::vector<int> rest;
    for (int k = 0; k < mi; ++k)
      if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) rest.push_back(k);
    return rest;
  };
  auto push = [&](const std::vector<int>& seq, std::size_t s, int sign_override) {
    WedgeTerm t;
    t.L.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(s));
    t.R.assign(seq.begin() + static_cast<std::ptrdiff_t>(s), seq.end());
    if (sign_override != 0) {
      t.sign = sign_override;
    } else {
      std::vector<int> order = t.L;
      for (int k : rest_of(seq)) order.push_back(k);
      order.insert(order.end(), t.R.begin(), t.R.end());
      t.sign = arrangement_sign(order);
    }
    out.push_back(std::move(t));
  };
  // increasing subsets of size p-1
  std::vector<int> sel(r);
  std::iota(sel.begin(), sel.end(), 0);
  while (true) {
    if (form == WedgeForm::corrected && parity == WedgeParity::even) {
      std::vector<int> seq = sel;
      do {
        for (std::size_t s = 0; s <= r; ++s) push(seq, s, 0);
      } while (std::next_permutation(seq.begin(), seq.end()));
    } else {
      int jsum = 0;
      for (int k : sel) jsum += k + 1;
      for (std::size_t s = 0; s <= r; ++s) {
        int sign = 0;
        if (parity == WedgeParity::even_reduced) {
          const std::size_t t = r - s;
          sign = ((jsum + static_cast<int>(p / 2) + static_cast<int>(t)) % 2 == 0) ? 1 : -1;
        }
        push(sel, s, sign);
      }
    }
    // next subset
    int k = static_cast<int>(r) - 1;
    while (k >= 0 && sel[k] == mi - static_cast<int>(r) + k) --k;
    if (k < 0) break;
    ++sel[k];
    for (std::size_t l = k + 1; l < r; ++l) sel[l] = sel[l - 1] + 1;
  }
  return out;
}

}  // namespace

SparseVector wedge_differential(const BimoduleComplex& cx, std::size_t b, const std::vector<int>& I, std::size_t u,
                                WedgeParity parity, WedgeForm form) {
  const auto& U = cx.U();
  const std::size_t m = I.size(), p = cx.N();
  const std::size_t drop = parity == WedgeParity::odd ? 1 : p - 1;
  if (m < drop) throw std::invalid_argument("wedge degree too small for this differential");
  const SparseVector a = SparseVector::unit(U.right_basis()[b]), c = SparseVector::unit(u);
  std::vector<SparseVector> parts;
  std::vector<Scalar> signs;
  for (const auto& t : wedge_terms(m, p, parity, form)) {
    SparseVector left = a, right = c;
    for (int k : t.L) left = U.multiply(left, U.letter(static_cast<std::size_t>(I[k])));
    for (auto it = t.R.rbegin(); it != t.R.rend(); ++it) right = U.multiply(U.letter(static_cast<std::size_t>(I[*it])), right);
    std::vector<int> mid;
    for (std::size_t k = 0; k < m; ++k)
      if (std::find(t.L.begin(), t.L.end(), static_cast<int>(k)) == t.L.end() &&
          std::find(t.R.begin(), t.R.end(), static_cast<int>(k)) == t.R.end())
        mid.push_back(I[k]);
    parts.push_back(cx.embed(left, alternator(cx.ctx(), mid), m - drop, right));
    signs.emplace_back(t.sign);
  }
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  for (std::size_t k = 0; k < parts.size(); ++k) terms.emplace_back(signs[k], &parts[k]);
  return linear_combination(terms);
}

namespace {

struct WedgeGen {
  std::size_t b, tuple, u;
};

std::vector<WedgeGen> wedge_generators(const BimoduleComplex& cx, std::size_t m, std::size_t t, std::size_t tuples) {
  const auto& U = cx.U();
  std::vector<WedgeGen> out;
  for (std::size_t b = 0; b < U.right_basis().size(); ++b) {
    const std::size_t db = U.degree(U.right_basis()[b]);
    if (db + m > t) continue;
    for (std::size_t k = 0; k < tuples; ++k)
      for (std::size_t u = 0; u < U.dim_upto(t - db - m); ++u) out.push_back({b, k, u});
  }
  return out;
}

}  // namespace

SparseMatrix wedge_differentials(const BimoduleComplex& cx, std::size_t i, std::size_t t, WedgeParity parity,
                                 WedgeForm form) {
  if (i == 0) throw std::invalid_argument("no differential out of position 0");
  const std::size_t m = zeta(i, cx.N());
  SparseMatrix out;
  if (m > cx.ctx().dimV()) return out;
  const WedgeBasis basis(cx.ctx().dimV(), m);
  const auto gens = wedge_generators(cx, m, t, basis.size());
  out.rows.resize(gens.size());
  parallel_for(gens.size(), [&](std::size_t k) {
    out.rows[k] = wedge_differential(cx, gens[k].b, basis.tuple(gens[k].tuple), gens[k].u, parity, form);
  });
  return out;
}

SparseMatrix contracted_differentials(const BimoduleComplex& cx, std::size_t i, std::size_t t) {
  if (i == 0) throw std::invalid_argument("no differential out of position 0");
  const std::size_t m = zeta(i, cx.N());
  SparseMatrix out;
  if (m > cx.ctx().dimV()) return out;
  const WedgeBasis basis(cx.ctx().dimV(), m);
  const auto gens = wedge_generators(cx, m, t, basis.size());
  out.rows.resize(gens.size());
  parallel_for(gens.size(), [&](std::size_t k) {
    const auto& U = cx.U();
    SparseVector x = cx.embed(SparseVector::unit(U.right_basis()[gens[k].b]), alternator(cx.ctx(), basis.tuple(gens[k].tuple)),
                              m, SparseVector::unit(gens[k].u));
    out.rows[k] = contracted_d(cx, i, x);
  });
  return out;
}

}  // namespace koszul
