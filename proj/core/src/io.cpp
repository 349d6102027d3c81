#include "koszul/io.hpp"

namespace koszul {

namespace {

template <class T>
json opt_to(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
void opt_from(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null())
    out = j.at(key).get<T>();
  else
    out.reset();
}

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<int> parse_tuple_key(const std::string& key, std::size_t dimV, std::size_t p) {
  json k;
  try {
    k = json::parse(key);
  } catch (const json::exception&) {
    throw InputError("bad wedge index '" + key + "'");
  }
  if (!k.is_array() || k.size() != p) throw InputError("wedge index '" + key + "' must list " + std::to_string(p) + " entries");
  std::vector<int> t;
  for (const auto& e : k) {
    const long v = e.get<long>();
    if (v < 1 || v > static_cast<long>(dimV)) throw InputError("wedge index '" + key + "' out of range");
    t.push_back(static_cast<int>(v - 1));
  }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] >= t[i]) throw InputError("wedge index '" + key + "' is not strictly increasing");
  return t;
}

std::string tuple_key(const std::vector<int>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + "]";
}

MatrixS matrix_from(const json& j, std::size_t n, int conductor) {
  std::vector<Scalar> entries;
  if (!j.is_array()) throw InputError("matrix must be an array");
  for (const auto& row : j) {
    if (row.is_array())
      for (const auto& e : row) entries.push_back(io::scalar_from(e, conductor));
    else
      entries.push_back(io::scalar_from(row, conductor));
  }
  if (entries.size() != n * n) throw InputError("matrix must have " + std::to_string(n * n) + " entries");
  return MatrixS(n, n, std::move(entries));
}

std::vector<Scalar> class_values(const json& j, const GroupData& group, int conductor) {
  std::vector<Scalar> v;
  for (const auto& e : j) v.push_back(io::scalar_from(e, conductor));
  if (v.size() != group.conj_classes.size())
    throw InputError("m lists " + std::to_string(v.size()) + " values for " + std::to_string(group.conj_classes.size()) +
                     " conjugacy classes");
  return class_function(group, v);
}

int conductor_of(const json& j) {
  const int m = j.value("conductor", 1);
  if (m < 1) throw InputError("conductor must be positive");
  return m;
}

}  // namespace

namespace io {

Scalar scalar_from(const json& j, int conductor) {
  if (j.is_number_integer()) return Scalar::rational(mpq_class(j.get<long>()), conductor);
  if (!j.is_string()) throw InputError("scalar must be a string literal or an integer");
  const auto s = j.get<std::string>();
  if (conductor == 1 && s.find("zeta") != std::string::npos)
    throw InputError("field/conductor mismatch: '" + s + "' uses zeta but the conductor is 1");
  try {
    return Scalar::parse(s, conductor);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

json scalar_to(const Scalar& s) { return s.to_string(); }

json context_to(const TensorContext& ctx) {
  json gens = json::array();
  const auto& G = ctx.group();
  for (int g : G.generators) {
    json m = json::array();
    const auto& a = G.elements[g];
    for (std::size_t r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(scalar_to(a(r, c)));
      m.push_back(row);
    }
    gens.push_back(m);
  }
  return {{"conductor", ctx.conductor()}, {"dimV", ctx.dimV()}, {"group_generators", gens}};
}

ContextPtr context_from(const json& j) {
  const int m = conductor_of(j);
  const long n = need(j, "dimV").get<long>();
  if (n < 1) throw InputError("dimV must be positive");
  std::vector<MatrixS> gens;
  if (j.contains("group_generators"))
    for (const auto& g : j.at("group_generators")) {
      MatrixS a = matrix_from(g, static_cast<std::size_t>(n), m);
      if (determinant(a).is_zero()) throw InputError("group generator is singular");
      gens.push_back(std::move(a));
    }
  if (gens.empty()) return make_field_context(m, static_cast<std::size_t>(n));
  try {
    return make_context(m, group_from_generators(static_cast<std::size_t>(n), gens));
  } catch (const std::exception& e) {
    throw InputError(std::string("group: ") + e.what());
  }
}

json terms_to(const std::vector<Term>& terms) {
  json out = json::array();
  for (const auto& t : terms) {
    json w = json::array();
    for (int l : t.word) w.push_back(l + 1);
    out.push_back({{"coeff", scalar_to(t.coeff)}, {"word", w}, {"g", t.g}});
  }
  return out;
}

std::vector<Term> terms_from(const json& j, int conductor) {
  if (!j.is_array()) throw InputError("element must be a list of terms");
  std::vector<Term> out;
  for (const auto& t : j) {
    Term term;
    term.coeff = scalar_from(need(t, "coeff"), conductor);
    for (const auto& l : need(t, "word")) {
      const long v = l.get<long>();
      if (v < 1) throw InputError("word letters are 1-based");
      term.word.push_back(static_cast<int>(v - 1));
    }
    term.g = t.value("g", 0);
    out.push_back(std::move(term));
  }
  return out;
}

json filtered_element_to(const TensorContext& ctx, const SparseVector& x, std::size_t top) {
  return terms_to(ctx.decode_filtered(x, top));
}

SparseVector filtered_element_from(const TensorContext& ctx, const json& terms, std::size_t top) {
  auto t = terms_from(terms, ctx.conductor());
  for (const auto& term : t) {
    if (term.word.size() > top) throw InputError("term of degree " + std::to_string(term.word.size()) + " exceeds N");
    for (int l : term.word)
      if (l >= static_cast<int>(ctx.dimV())) throw InputError("word letter exceeds dimV");
    if (term.g < 0 || term.g >= static_cast<int>(ctx.group_order())) throw InputError("group element index out of range");
  }
  return ctx.encode_filtered(t, top);
}

json psi_to(const PsiMap& psi) {
  WedgeBasis basis(psi.dimV, psi.p);
  json list = json::array();
  for (std::size_t g = 0; g < psi.group_order(); ++g) {
    json values = json::object();
    for (std::size_t t = 0; t < basis.size(); ++t)
      if (!psi.values[g][t].is_zero()) values[tuple_key(basis.tuple(t))] = scalar_to(psi.values[g][t]);
    if (!values.empty()) list.push_back({{"g", g}, {"values", values}});
  }
  return {{"p", psi.p}, {"psi", list}};
}

PsiMap psi_from(const json& j, const GroupData& group, int conductor) {
  const std::string builder = j.value("builder", "");
  try {
    if (builder == "symplectic_reflection") {
      MatrixS omega = matrix_from(need(j, "omega"), group.dimV, conductor);
      return build_symplectic_reflection(group, omega, class_values(need(j, "m"), group, conductor));
    }
    const long p = need(j, "p").get<long>();
    if (p < 2 || p > static_cast<long>(group.dimV)) throw InputError("p must lie in [2, dimV]");
    WedgeBasis basis(group.dimV, static_cast<std::size_t>(p));
    if (builder == "corollary45") {
      std::vector<Scalar> phi(basis.size(), Scalar::rational(0, conductor));
      for (const auto& [k, v] : need(j, "phi").items())
        phi[basis.index(parse_tuple_key(k, group.dimV, static_cast<std::size_t>(p)))] = scalar_from(v, conductor);
      return build_psi_corollary45(group, static_cast<std::size_t>(p), phi, class_values(need(j, "m"), group, conductor));
    }
    if (!builder.empty()) throw InputError("unknown psi builder '" + builder + "'");
    PsiMap psi(group.dimV, static_cast<std::size_t>(p), group.order());
    for (const auto& entry : need(j, "psi")) {
      const long g = need(entry, "g").get<long>();
      if (g < 0 || g >= static_cast<long>(group.order())) throw InputError("psi: group element index out of range");
      for (const auto& [k, v] : need(entry, "values").items())
        psi.at(static_cast<int>(g), basis.index(parse_tuple_key(k, group.dimV, static_cast<std::size_t>(p)))) =
            scalar_from(v, conductor);
    }
    return psi;
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json presentation_to(const FilteredPresentation& pres) {
  json P = json::array();
  for (const auto& r : pres.P.space().rows()) P.push_back(filtered_element_to(*pres.ctx, r, pres.N));
  return {{"context", context_to(*pres.ctx)}, {"N", pres.N}, {"family", pres.family}, {"P", P}};
}

FilteredPresentation presentation_from(const json& j) {
  if (!j.is_object()) throw InputError("presentation must be a JSON object");
  try {
    const std::string builder = j.value("builder", "");
    if (builder == "down_up") {
      const int m = conductor_of(j);
      return build_down_up(scalar_from(need(j, "alpha"), m), scalar_from(need(j, "beta"), m),
                           scalar_from(need(j, "gamma"), m), m);
    }
    if (builder == "lie") {
      const int m = conductor_of(j);
      const long n = need(j, "dimV").get<long>();
      if (n < 1) throw InputError("dimV must be positive");
      std::vector<StructureConstant> f;
      for (const auto& c : need(j, "structure_constants")) {
        if (!c.is_array() || c.size() != 4) throw InputError("structure constant must be [i, j, k, coeff]");
        f.push_back({c[0].get<int>() - 1, c[1].get<int>() - 1, c[2].get<int>() - 1, scalar_from(c[3], m)});
      }
      return build_lie(static_cast<std::size_t>(n), f, m);
    }
    if (builder == "h_psi" || builder == "corollary45" || builder == "symplectic_reflection") {
      ContextPtr ctx = context_from(need(j, "context"));
      const json& pj = builder == "h_psi" ? need(j, "psi") : j;
      PsiMap psi = psi_from(pj, ctx->group(), ctx->conductor());
      return build_H_psi(ctx, psi);
    }
    if (!builder.empty()) throw InputError("unknown builder '" + builder + "'");
    ContextPtr ctx = context_from(need(j, "context"));
    const long N = need(j, "N").get<long>();
    if (N < 2) throw InputError("N must be at least 2");
    std::vector<SparseVector> gens;
    for (const auto& e : need(j, "P")) gens.push_back(filtered_element_from(*ctx, e, static_cast<std::size_t>(N)));
    return FilteredPresentation::from_generators(ctx, static_cast<std::size_t>(N), gens, j.value("family", ""));
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed presentation: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  }
}

}  // namespace io

// ---------------------------------------------------------------------------
// reports

void to_json(json& j, const DegreeCheck& r) {
  j = {{"n", r.n}, {"holds", r.holds}, {"lhs_dim", r.lhs_dim}, {"rhs_dim", r.rhs_dim}};
}
void from_json(const json& j, DegreeCheck& r) {
  r.n = j.at("n");
  r.holds = j.at("holds");
  r.lhs_dim = j.at("lhs_dim");
  r.rhs_dim = j.at("rhs_dim");
}

void to_json(json& j, const ECReport& r) { j = {{"holds", r.holds}, {"per_n", r.per_n}}; }
void from_json(const json& j, ECReport& r) {
  r.holds = j.at("holds");
  r.per_n = j.at("per_n").get<std::vector<DegreeCheck>>();
}

void to_json(json& j, const Tor3Verdict& r) {
  j = {{"bound", r.bound}, {"ec", r.ec},           {"per_n", r.per_n},
       {"holds", r.holds}, {"fails_at", opt_to(r.fails_at)}, {"verdict", r.verdict()}};
}
void from_json(const json& j, Tor3Verdict& r) {
  r.bound = j.at("bound");
  r.ec = j.at("ec").get<ECReport>();
  r.per_n = j.at("per_n").get<std::vector<DegreeCheck>>();
  r.holds = j.at("holds");
  opt_from(j, "fails_at", r.fails_at);
}

void to_json(json& j, const KoszulSlice& r) {
  j = {{"d", r.d},
       {"w_degrees", r.w_degrees},
       {"dims", r.dims},
       {"ranks", r.ranks},
       {"composition_zero", r.composition_zero},
       {"exact", r.exact},
       {"failing_position", opt_to(r.failing_position)}};
}
void from_json(const json& j, KoszulSlice& r) {
  r.d = j.at("d");
  r.w_degrees = j.at("w_degrees").get<std::vector<std::size_t>>();
  r.dims = j.at("dims").get<std::vector<std::size_t>>();
  r.ranks = j.at("ranks").get<std::vector<std::size_t>>();
  r.composition_zero = j.at("composition_zero");
  r.exact = j.at("exact");
  opt_from(j, "failing_position", r.failing_position);
}

void to_json(json& j, const KoszulCertificate& r) {
  j = {{"degree_bound", r.degree_bound},
       {"degrees", r.degrees},
       {"verified", r.verified},
       {"counterexample", opt_to(r.counterexample)},
       {"known_in_all_degrees", r.known_in_all_degrees},
       {"verdict", r.verdict()}};
}
void from_json(const json& j, KoszulCertificate& r) {
  r.degree_bound = j.at("degree_bound");
  r.degrees = j.at("degrees").get<std::vector<KoszulSlice>>();
  r.verified = j.at("verified");
  opt_from(j, "counterexample", r.counterexample);
  r.known_in_all_degrees = j.at("known_in_all_degrees");
}

namespace {

json witness_to(const std::vector<Term>& t) {
  const int m = t.empty() ? 1 : t.front().coeff.conductor();
  return {{"conductor", m}, {"terms", io::terms_to(t)}};
}

std::vector<Term> witness_from(const json& j) { return io::terms_from(j.at("terms"), j.at("conductor").get<int>()); }

}  // namespace

void to_json(json& j, const ConditionJReport& r) {
  j = {{"direct", r.direct},
       {"via_W", r.via_W},
       {"J1", r.J1},
       {"J2", r.J2},
       {"J3", r.J3},
       {"J2_evaluated", r.J2_evaluated},
       {"J2_failing_degree", opt_to(r.J2_failing_degree)},
       {"holds", r.holds()},
       {"witness", witness_to(r.witness)},
       {"witness_image", witness_to(r.witness_image)}};
}
void from_json(const json& j, ConditionJReport& r) {
  r.direct = j.at("direct");
  r.via_W = j.at("via_W");
  r.J1 = j.at("J1");
  r.J2 = j.at("J2");
  r.J3 = j.at("J3");
  r.J2_evaluated = j.at("J2_evaluated");
  opt_from(j, "J2_failing_degree", r.J2_failing_degree);
  r.witness = witness_from(j.at("witness"));
  r.witness_image = witness_from(j.at("witness_image"));
}

void to_json(json& j, const OracleReport& r) {
  j = {{"bound", r.bound},
       {"equalities", r.equalities},
       {"J_dims", r.J_dims},
       {"candidate_gr_dim", r.candidate_gr_dim},
       {"A_dims", r.A_dims},
       {"all_hold", r.all_hold()},
       {"first_failure", opt_to(r.first_failure())}};
}
void from_json(const json& j, OracleReport& r) {
  r.bound = j.at("bound");
  r.equalities = j.at("equalities").get<std::vector<std::pair<std::size_t, bool>>>();
  r.J_dims = j.at("J_dims").get<std::vector<std::size_t>>();
  r.candidate_gr_dim = j.at("candidate_gr_dim").get<std::vector<std::size_t>>();
  r.A_dims = j.at("A_dims").get<std::vector<std::size_t>>();
}

void to_json(json& j, const PBWReport& r) {
  j = {{"condition_I", r.condition_I},
       {"condition_J", opt_to(r.condition_J)},
       {"tor3", opt_to(r.tor3)},
       {"tor3_unconditional", r.tor3_unconditional},
       {"verdict", r.theorem34_verdict},
       {"oracle", r.oracle}};
}
void from_json(const json& j, PBWReport& r) {
  r.condition_I = j.at("condition_I");
  opt_from(j, "condition_J", r.condition_J);
  opt_from(j, "tor3", r.tor3);
  r.tor3_unconditional = j.at("tor3_unconditional");
  r.theorem34_verdict = j.at("verdict");
  r.oracle = j.at("oracle").get<OracleReport>();
}

void to_json(json& j, const ComponentRow& r) {
  j = {{"g", r.g}, {"a", r.a}, {"i", r.i}, {"allowed", r.allowed}, {"vanishes", r.vanishes}};
}
void from_json(const json& j, ComponentRow& r) {
  r.g = j.at("g");
  r.a = j.at("a");
  r.i = j.at("i");
  r.allowed = j.at("allowed");
  r.vanishes = j.at("vanishes");
}

void to_json(json& j, const Theorem44Report& r) {
  j = {{"equivariant", r.equivariant},
       {"components_ok", r.components_ok},
       {"odd_p", r.odd_p},
       {"holds", r.holds()},
       {"table", r.table}};
}
void from_json(const json& j, Theorem44Report& r) {
  r.equivariant = j.at("equivariant");
  r.components_ok = j.at("components_ok");
  r.odd_p = j.at("odd_p");
  r.table = j.at("table").get<std::vector<ComponentRow>>();
}

void to_json(json& j, const NComplexReport& r) {
  j = {{"N", r.N},
       {"bound", r.bound},
       {"q", r.q},
       {"dN_zero", r.dN_zero},
       {"failing_level", opt_to(r.failing_level)},
       {"commute", r.commute},
       {"factorization", r.factorization},
       {"phi_identity", r.phi_identity},
       {"lands_in_W", r.lands_in_W}};
}
void from_json(const json& j, NComplexReport& r) {
  r.N = j.at("N");
  r.bound = j.at("bound");
  r.q = j.at("q");
  r.dN_zero = j.at("dN_zero");
  opt_from(j, "failing_level", r.failing_level);
  r.commute = j.at("commute");
  r.factorization = j.at("factorization");
  r.phi_identity = j.at("phi_identity");
  r.lands_in_W = j.at("lands_in_W");
}

void to_json(json& j, const ContractedSlice& r) {
  j = {{"t", r.t},
       {"w_degrees", r.w_degrees},
       {"dims", r.dims},
       {"ranks", r.ranks},
       {"dim_U", r.dim_U},
       {"composition_zero", r.composition_zero},
       {"exact", r.exact},
       {"failing_position", opt_to(r.failing_position)},
       {"euler", r.euler},
       {"in_window", r.in_window}};
}
void from_json(const json& j, ContractedSlice& r) {
  r.t = j.at("t");
  r.w_degrees = j.at("w_degrees").get<std::vector<std::size_t>>();
  r.dims = j.at("dims").get<std::vector<std::size_t>>();
  r.ranks = j.at("ranks").get<std::vector<std::size_t>>();
  r.dim_U = j.at("dim_U");
  r.composition_zero = j.at("composition_zero");
  r.exact = j.at("exact");
  opt_from(j, "failing_position", r.failing_position);
  r.euler = j.at("euler");
  r.in_window = j.at("in_window");
}

void to_json(json& j, const ContractedReport& r) {
  j = {{"N", r.N},
       {"bound", r.bound},
       {"window", r.window},
       {"slices", r.slices},
       {"composition_zero", r.composition_zero},
       {"window_exact", r.window_exact},
       {"all_exact", r.all_exact}};
}
void from_json(const json& j, ContractedReport& r) {
  r.N = j.at("N");
  r.bound = j.at("bound");
  r.window = j.at("window");
  r.slices = j.at("slices").get<std::vector<ContractedSlice>>();
  r.composition_zero = j.at("composition_zero");
  r.window_exact = j.at("window_exact");
  r.all_exact = j.at("all_exact");
}

}  // namespace koszul
