#include "koszul/homogeneous.hpp"

#include "koszul/parallel.hpp"

#include <stdexcept>

namespace koszul {

std::size_t zeta(std::size_t n, std::size_t N) { return (n / 2) * N + (n % 2); }

HomogeneousAlgebra::HomogeneousAlgebra(Subbimodule R, std::string family)
    : R_(std::move(R)), family_(std::move(family)), cache_(std::make_shared<Cache>()) {
  if (R_.degree() < 2) throw std::invalid_argument("relations must have degree N >= 2");
}

const Subbimodule& HomogeneousAlgebra::I(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  while (cache_->ideal.size() <= n) {
    const std::size_t m = cache_->ideal.size();
    if (m < N()) {
      cache_->ideal.push_back(std::make_unique<Subbimodule>(Subbimodule::zero(context(), m)));
    } else if (m == N()) {
      cache_->ideal.push_back(std::make_unique<Subbimodule>(R_));
    } else {
      // I_m = V I_{m-1} + R V^{m-N}
      Subbimodule vi = left_power(1, *cache_->ideal[m - 1]);
      EchelonBuilder b(vi.space());
      Subbimodule rv = right_power(R_, m - N());
      for (const auto& r : rv.space().rows()) b.insert(r);
      cache_->ideal.push_back(std::make_unique<Subbimodule>(Subbimodule::trusted(context(), m, std::move(b).finish())));
    }
  }
  return *cache_->ideal[n];
}

const Subbimodule& HomogeneousAlgebra::Wn(std::size_t n) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->w.find(n);
    if (it != cache_->w.end()) return *it->second;
  }
  Subbimodule w = n < N() ? Subbimodule::full(context(), n) : W(R_, n);
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->w.emplace(n, std::make_unique<Subbimodule>(std::move(w)));
  return *it->second;
}

const Subbimodule& HomogeneousAlgebra::IW(std::size_t a, std::size_t b) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->iw.find({a, b});
    if (it != cache_->iw.end()) return *it->second;
  }
  Subbimodule p = product_EF(I(a), Wn(b));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->iw.emplace(std::make_pair(a, b), std::make_unique<Subbimodule>(std::move(p)));
  return *it->second;
}

std::size_t dim_A(const HomogeneousAlgebra& alg, std::size_t n) { return alg.dim_A(n); }

// ---------------------------------------------------------------- (ec), Tor_3

ECReport check_ec(const HomogeneousAlgebra& alg) {
  ECReport rep;
  const std::size_t N = alg.N();
  const Subbimodule& R = alg.R();
  for (std::size_t n = N + 2; n + 1 <= 2 * N; ++n) {
    const std::size_t a = n - N;
    Subbimodule lhs_left = left_power(a, R);
    Subbimodule rest = Subbimodule::zero(alg.context(), n);
    for (std::size_t i = 0; i + 1 <= a; ++i) rest = sum(rest, sandwich(i, R, a - i));
    Subbimodule lhs = intersect(lhs_left, rest);
    Subbimodule rhs = left_power(a - 1, alg.Wn(N + 1));
    DegreeCheck c{n, lhs == rhs, lhs.dim(), rhs.dim()};
    rep.holds = rep.holds && c.holds;
    rep.per_n.push_back(c);
  }
  return rep;
}

std::string Tor3Verdict::verdict() const {
  if (holds) return "holds_up_to_" + std::to_string(bound);
  if (!ec.holds) {
    for (const auto& c : ec.per_n)
      if (!c.holds) return "fails(" + std::to_string(c.n) + ")";
  }
  return "fails(" + std::to_string(fails_at.value_or(0)) + ")";
}

Tor3Verdict check_tor3_concentration(const HomogeneousAlgebra& alg, std::size_t D) {
  const std::size_t N = alg.N();
  if (D < 2 * N) throw std::invalid_argument("check_tor3_concentration needs D >= 2N");
  Tor3Verdict v;
  v.bound = D;
  v.ec = check_ec(alg);
  const Subbimodule& R = alg.R();
  const Subbimodule& W1 = alg.Wn(N + 1);
  std::vector<DegreeCheck> checks(D + 1 - 2 * N);
  parallel_for(checks.size(), [&](std::size_t k) {
    const std::size_t n = 2 * N + k;
    Subbimodule lhs = intersect(left_power(n - N, R), right_power(alg.I(n - 1), 1));
    Subbimodule rhs = sum(left_power(n - N - 1, W1), product_EF(alg.I(n - N), R));
    checks[k] = {n, lhs == rhs, lhs.dim(), rhs.dim()};
  });
  v.per_n = checks;
  v.holds = v.ec.holds;
  for (const auto& c : checks)
    if (!c.holds) {
      v.holds = false;
      if (!v.fails_at) v.fails_at = c.n;
    }
  return v;
}

// ---------------------------------------------------------------- Koszul complex

KoszulComplexDegree::KoszulComplexDegree(const HomogeneousAlgebra& alg, std::size_t d) : alg_(alg), d_(d) {
  for (std::size_t i = 0; zeta(i, alg.N()) <= d; ++i) b_.push_back(zeta(i, alg.N()));
}

Subbimodule KoszulComplexDegree::chain(std::size_t i) const { return left_power(d_ - b_[i], alg_.Wn(b_[i])); }

std::size_t KoszulComplexDegree::dim(std::size_t i) const {
  return chain(i).dim() - alg_.IW(d_ - b_[i], b_[i]).dim();
}

std::size_t KoszulComplexDegree::rank(std::size_t i) const {
  if (i == 0 || i >= positions()) throw std::out_of_range("no differential at this position");
  const Subbimodule& target_rel = alg_.IW(d_ - b_[i - 1], b_[i - 1]);
  return sum(chain(i), target_rel).dim() - target_rel.dim();
}

Subbimodule KoszulComplexDegree::kernel_preimage(std::size_t i) const {
  if (i == 0) return chain(0);
  return intersect(chain(i), alg_.IW(d_ - b_[i - 1], b_[i - 1]));
}

bool KoszulComplexDegree::composition_zero(std::size_t i) const {
  if (i < 1 || i + 1 >= positions()) return true;
  return alg_.IW(d_ - b_[i - 1], b_[i - 1]).contains(chain(i + 1));
}

std::string KoszulCertificate::verdict() const {
  if (counterexample)
    return "counterexample(d=" + std::to_string(counterexample->first) +
           ", position=" + std::to_string(counterexample->second) + ")";
  if (!verified) return "not_verified";
  return "verified_up_to_" + std::to_string(degree_bound);
}

KoszulCertificate koszul_complex_check(const HomogeneousAlgebra& alg, std::size_t D) {
  KoszulCertificate cert;
  cert.degree_bound = D;
  cert.degrees.resize(D + 1);
  // warm the shared caches in order so parallel slices only read them
  for (std::size_t n = 0; n <= D; ++n) alg.I(n);
  parallel_for(D + 1, [&](std::size_t d) {
    KoszulComplexDegree cx(alg, d);
    KoszulSlice s;
    s.d = d;
    const std::size_t P = cx.positions();
    s.w_degrees.resize(P);
    s.dims.resize(P);
    s.ranks.assign(P, 0);
    for (std::size_t i = 0; i < P; ++i) {
      s.w_degrees[i] = cx.w_degree(i);
      s.dims[i] = cx.dim(i);
      if (i > 0) s.ranks[i] = cx.rank(i);
    }
    for (std::size_t i = 1; i < P; ++i)
      if (!cx.composition_zero(i)) s.composition_zero = false;
    for (std::size_t i = 1; i < P; ++i) {
      const std::size_t in = i + 1 < P ? s.ranks[i + 1] : 0;
      if (in + s.ranks[i] != s.dims[i]) {
        s.exact = false;
        if (!s.failing_position) s.failing_position = i;
      }
    }
    cert.degrees[d] = std::move(s);
  });
  cert.verified = true;
  for (const auto& s : cert.degrees)
    if (!s.exact || !s.composition_zero) {
      cert.verified = false;
      if (!cert.counterexample && s.failing_position) cert.counterexample = {{s.d, *s.failing_position}};
    }
  cert.known_in_all_degrees = alg.family() == "antisymmetrizer" && cert.verified;
  return cert;
}

// ---------------------------------------------------------------- change of rings

HomogeneousAlgebra change_of_rings(const HomogeneousAlgebra& alg, const GroupData& group) {
  const TensorContext& k = alg.ctx();
  if (k.group_order() != 1) throw RingChangeError("change_of_rings expects an algebra over the field");
  if (group.dimV != k.dimV()) throw RingChangeError("group acts on a space of the wrong dimension");
  const std::size_t N = alg.N();
  for (int g = 1; g < static_cast<int>(group.order()); ++g) {
    for (const auto& r : alg.R().space().rows()) {
      // rho(g)^{(x)N} r, field coordinates
      std::vector<SparseVector::Entry> img;
      for (const auto& [w, c] : r.entries()) {
        std::vector<int> letters = k.letters(w, N);
        std::vector<SparseVector::Entry> cur{{0, c}}, next;
        for (int l : letters) {
          next.clear();
          for (const auto& [idx, x] : cur)
            for (std::size_t i = 0; i < k.dimV(); ++i) {
              const Scalar& m = group.elements[g](i, static_cast<std::size_t>(l));
              if (!m.is_zero()) next.emplace_back(idx * k.dimV() + i, x * m);
            }
          std::swap(cur, next);
        }
        for (auto& e : cur) img.push_back(std::move(e));
      }
      if (!alg.R().space().contains(SparseVector(std::move(img))))
        throw RingChangeError("relations are not stable under the group");
    }
  }
  ContextPtr ctx = make_context(k.conductor(), group);
  const std::size_t G = group.order();
  std::vector<SparseVector> gens;
  for (const auto& r : alg.R().space().rows()) {
    std::vector<SparseVector::Entry> e;
    for (const auto& [w, c] : r.entries()) e.emplace_back(w * G, c);
    gens.emplace_back(std::move(e));
  }
  return HomogeneousAlgebra(Subbimodule::generated(ctx, N, gens), alg.family());
}

}  // namespace koszul
