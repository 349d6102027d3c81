#include "run.hpp"

#include <fstream>
#include <memory>
#include <sstream>

namespace koszul::cli {

void to_json(json& j, const CheckOutcome& c) {
  j = {{"name", c.name}, {"status", c.status}, {"summary", c.summary}, {"report", c.report}};
}
void from_json(const json& j, CheckOutcome& c) {
  c.name = j.at("name");
  c.status = j.at("status");
  c.summary = j.at("summary");
  c.report = j.at("report");
}
void to_json(json& j, const RunReport& r) {
  j = {{"input", r.input},
       {"degree_bound", r.degree_bound},
       {"seed", r.seed},
       {"presentation", r.presentation},
       {"checks", r.checks},
       {"exit_code", r.exit_code}};
}
void from_json(const json& j, RunReport& r) {
  r.input = j.at("input");
  r.degree_bound = j.at("degree_bound");
  r.seed = j.at("seed");
  r.presentation = j.at("presentation");
  r.checks = j.at("checks").get<std::vector<CheckOutcome>>();
  r.exit_code = j.at("exit_code");
}

namespace {

bool is_psi_builder(const json& doc) {
  const std::string b = doc.value("builder", "");
  return b == "h_psi" || b == "corollary45" || b == "symplectic_reflection";
}

// q = zeta_N inside Q(zeta_m), when it exists there
std::optional<Scalar> root_of_unity(std::size_t N, int m) {
  if (N == 2) return Scalar(-1);
  if (m % static_cast<int>(N) != 0) return std::nullopt;
  return Scalar::zeta(m).pow(m / static_cast<long>(N));
}

class Runner {
 public:
  Runner(const RunConfig& cfg, const json& doc)
      : cfg_(cfg), doc_(doc), pres_(io::presentation_from(doc)), D_(cfg.degree_bound) {
    for (const auto& c : cfg.checks) {
      if (c == "all") {
        explicit_ = false;
        continue;
      }
      if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
        throw UsageError("unknown check '" + c + "'");
      selected_.insert(c);
    }
    if (!explicit_) selected_.insert(check_names().begin(), check_names().end());
    if (is_psi_builder(doc)) psi_ = io::psi_from(doc.value("builder", "") == "h_psi" ? doc.at("psi") : doc,
                                                 pres_.ctx->group(), pres_.ctx->conductor());
    const std::size_t N = pres_.N;
    static const std::set<std::string> degree_free{"condition_I", "condition_J", "equivariance", "theorem44"};
    for (const auto& c : selected_)
      if (!degree_free.count(c) && D_ < N)
        throw UsageError("degree bound " + std::to_string(D_) + " is below N = " + std::to_string(N));
    if (selected_.count("pbw") && D_ < 2 * N)
      throw UsageError("pbw needs a degree bound of at least 2N = " + std::to_string(2 * N));
  }

  RunReport run() {
    RunReport r;
    r.input = cfg_.input;
    r.degree_bound = D_;
    r.seed = cfg_.seed;
    const auto& ctx = *pres_.ctx;
    r.presentation = {{"family", pres_.family},         {"N", pres_.N},
                      {"dimV", ctx.dimV()},             {"group_order", ctx.group_order()},
                      {"conductor", ctx.conductor()},   {"dim_P", pres_.P.dim()}};
    I_ = check_condition_I(pres_);
    for (const auto& name : check_names()) {
      if (!selected_.count(name)) continue;
      if (name == "condition_I") condition_I();
      if (name == "condition_J") condition_J();
      if (name == "oracle") oracle();
      if (name == "pbw") pbw();
      if (name == "ec") ec();
      if (name == "tor3") tor3();
      if (name == "koszul_complex") koszul_complex();
      if (name == "equivariance") equivariance();
      if (name == "theorem44") theorem44();
      if (name == "dN_zero") dN_zero();
      if (name == "contraction") contraction();
      if (name == "wedge_agreement") wedge_agreement();
    }
    r.checks = std::move(out_);
    r.exit_code = 0;
    for (const auto& c : r.checks)
      if (c.status == "fail") r.exit_code = 1;
    return r;
  }

 private:
  void push(const std::string& name, bool ok, std::string summary, json report) {
    out_.push_back({name, ok ? "pass" : "fail", std::move(summary), std::move(report)});
  }
  void inapplicable(const std::string& name, const std::string& why) {
    if (explicit_) throw UsageError(name + ": " + why);
    out_.push_back({name, "skipped", why, json::object()});
  }
  const HomogeneousAlgebra& A() {
    if (!A_) A_ = std::make_unique<HomogeneousAlgebra>(homogenization(pres_));
    return *A_;
  }
  // nullptr after recording a failure or a skip for name
  const BimoduleComplex* complex(const std::string& name) {
    if (!I_) {
      push(name, false, "condition_I failed; phi is undefined", json::object());
      return nullptr;
    }
    if (!build_phi(pres_).is_phi0()) {
      inapplicable(name, "phi has components above degree 0; only phi = phi_0 is supported");
      return nullptr;
    }
    if (!cx_) {
      try {
        U_ = std::make_unique<TruncatedU>(pres_, D_, cfg_.seed);
      } catch (const NotFreeOverK& e) {
        inapplicable(name, e.what());
        return nullptr;
      }
      cx_ = std::make_unique<BimoduleComplex>(*U_);
    }
    return cx_.get();
  }

  void condition_I() {
    const std::size_t low = pres_.P.space().intersect_tail(pres_.ctx->component_dim(pres_.N)).dim();
    push("condition_I", I_, I_ ? "P meets F^{N-1} only in 0" : "P contains nonzero elements of degree < N",
         {{"holds", I_}, {"dim_P", pres_.P.dim()}, {"dim_P_below_N", low}});
  }

  void condition_J() {
    if (!I_) {
      push("condition_J", false, "condition_I failed; phi is undefined", json::object());
      return;
    }
    auto J = check_condition_J(pres_);
    std::string s = "conditions J'1, J'2, J'3 hold";
    if (!J.J1)
      s = "J'1 failed";
    else if (!J.J2)
      s = "J'2 failed" + (J.J2_failing_degree ? " at degree " + std::to_string(*J.J2_failing_degree) : std::string());
    else if (!J.J3)
      s = "J'3 failed";
    push("condition_J", J.holds(), s, J);
  }

  void oracle() {
    auto o = oracle_pbw(pres_, D_);
    auto f = o.first_failure();
    push("oracle", o.all_hold(), f ? "J^n cap F^{n-1} differs from J^{n-1} at n = " + std::to_string(*f)
                                  : "J^n cap F^{n-1} = J^{n-1} for N <= n <= D",
         o);
  }

  void pbw() {
    auto p = pbw_verdict(pres_, D_);
    push("pbw", p.certified(), p.theorem34_verdict, p);
  }

  void ec() {
    auto e = check_ec(A());
    push("ec", e.holds, e.holds ? "extra condition holds" : "extra condition fails", e);
  }

  void tor3() {
    auto t = check_tor3_concentration(A(), D_);
    push("tor3", t.holds, t.verdict(), t);
  }

  void koszul_complex() {
    auto c = koszul_complex_check(A(), D_);
    push("koszul_complex", c.verified, c.verdict(), c);
  }

  void equivariance() {
    if (!psi_) return inapplicable("equivariance", "needs an H_psi input");
    const bool ok = check_equivariance(pres_.ctx->group(), *psi_);
    push("equivariance", ok, ok ? "psi is equivariant" : "psi is not equivariant", {{"holds", ok}});
  }

  void theorem44() {
    if (!psi_) return inapplicable("theorem44", "needs an H_psi input");
    auto t = theorem_44_verdict(pres_.ctx->group(), *psi_);
    const bool id = check_identity_41(pres_.ctx->group(), *psi_);
    json j = t;
    j["identity"] = id;
    push("theorem44", t.holds(), t.holds() ? "psi is equivariant and vanishes off the allowed components"
                                           : "H_psi is not Koszul",
         j);
  }

  void dN_zero() {
    auto q = root_of_unity(pres_.N, pres_.ctx->conductor());
    if (!q) {
      if (explicit_)
        throw UsageError("field/conductor mismatch: dN_zero needs a primitive " + std::to_string(pres_.N) +
                         "-th root of unity, absent for conductor " + std::to_string(pres_.ctx->conductor()));
      out_.push_back({"dN_zero", "skipped", "no primitive N-th root of unity in the field", json::object()});
      return;
    }
    const auto* cx = complex("dN_zero");
    if (!cx) return;
    auto rep = check_dN_zero(*cx, *q);
    const bool ok = rep.dN_zero && rep.factorization && rep.commute && rep.lands_in_W && rep.phi_identity;
    push("dN_zero", ok,
         rep.dN_zero ? "d^N = 0 up to the bound"
                     : "d^N is nonzero at level " + std::to_string(rep.failing_level.value_or(0)),
         rep);
  }

  void contraction() {
    const auto* cx = complex("contraction");
    if (!cx) return;
    auto rep = contracted_complex(*cx);
    const bool ok = rep.window_exact && rep.composition_zero;
    push("contraction", ok,
         ok ? "exact at every position for total degree <= " + std::to_string(rep.window)
            : "homology in the window or nonzero composite",
         rep);
  }

  void wedge_agreement() {
    if (!psi_) return inapplicable("wedge_agreement", "needs an H_psi input");
    const auto* cx = complex("wedge_agreement");
    if (!cx) return;
    const std::size_t p = pres_.N;
    json rows = json::array();
    bool ok = true;
    for (std::size_t i = 1; zeta(i, p) <= std::min(D_, pres_.ctx->dimV()); ++i) {
      const auto generic = contracted_differentials(*cx, i, D_);
      const auto own = i % 2 == 1 ? WedgeParity::odd : WedgeParity::even;
      const bool corrected = wedge_differentials(*cx, i, D_, own, WedgeForm::corrected).rows == generic.rows;
      const bool literal = wedge_differentials(*cx, i, D_, own, WedgeForm::literal).rows == generic.rows;
      json row = {{"position", i}, {"wedge_degree", zeta(i, p)}, {"rows", generic.rows.size()},
                  {"corrected", corrected}, {"literal", literal}};
      if (p % 2 == 0 && i % 2 == 0) {
        const bool reduced = wedge_differentials(*cx, i, D_, WedgeParity::even_reduced, WedgeForm::literal).rows == generic.rows;
        row["even_reduced"] = reduced;
        ok = ok && reduced;
      }
      if (p == 2 && i % 2 == 1) {
        const bool same = wedge_differentials(*cx, i, D_, WedgeParity::odd, WedgeForm::literal).rows ==
                          wedge_differentials(*cx, i, D_, WedgeParity::even_reduced, WedgeForm::literal).rows;
        row["odd_equals_even"] = same;
        ok = ok && same;
      }
      ok = ok && corrected;
      rows.push_back(row);
    }
    push("wedge_agreement", ok,
         ok ? "wedge formulas match the contracted differentials" : "a wedge formula disagrees with the differential",
         {{"positions", rows}});
  }

  const RunConfig& cfg_;
  const json& doc_;
  FilteredPresentation pres_;
  std::size_t D_;
  bool explicit_ = true;
  std::set<std::string> selected_;
  std::optional<PsiMap> psi_;
  bool I_ = false;
  std::unique_ptr<HomogeneousAlgebra> A_;
  std::unique_ptr<TruncatedU> U_;
  std::unique_ptr<BimoduleComplex> cx_;
  std::vector<CheckOutcome> out_;
};

std::string join(const json& a) {
  std::string s;
  for (const auto& x : a) s += (s.empty() ? "" : " ") + x.dump();
  return s;
}

std::string format_terms(const json& terms) {
  std::string s;
  for (const auto& t : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + t.at("coeff").get<std::string>() + ")";
    if (t.at("word").empty()) s += "*1";
    for (const auto& l : t.at("word")) s += "*x" + l.dump();
    if (t.at("g").get<int>() != 0) s += "*g" + t.at("g").dump();
  }
  return s.empty() ? "0" : s;
}

void render_details(std::ostringstream& os, const CheckOutcome& c) {
  const json& r = c.report;
  if (r.empty()) return;
  if (c.name == "condition_I") {
    os << "    dim P = " << r.at("dim_P") << ", dim P cap F^{N-1} = " << r.at("dim_P_below_N") << "\n";
  } else if (c.name == "condition_J") {
    os << "    direct " << r.at("direct") << ", via W " << r.at("via_W") << ", J'1 " << r.at("J1") << ", J'2 "
       << (r.at("J2_evaluated").get<bool>() ? r.at("J2").dump() : std::string("not evaluated")) << ", J'3 " << r.at("J3")
       << "\n";
    if (!r.at("witness").at("terms").empty()) {
      os << "    witness: " << format_terms(r.at("witness").at("terms")) << "\n";
      os << "    image:   " << format_terms(r.at("witness_image").at("terms")) << "\n";
    }
  } else if (c.name == "oracle" || c.name == "pbw") {
    const json& o = c.name == "oracle" ? r : r.at("oracle");
    os << "    dim J^n:       " << join(o.at("J_dims")) << "\n";
    os << "    candidate gr:  " << join(o.at("candidate_gr_dim")) << "\n";
    os << "    dim A_n:       " << join(o.at("A_dims")) << "\n";
  } else if (c.name == "ec" || c.name == "tor3") {
    for (const auto& d : r.at("per_n"))
      os << "    n = " << d.at("n") << ": " << d.at("lhs_dim") << " vs " << d.at("rhs_dim") << (d.at("holds").get<bool>() ? "" : "  FAILS")
         << "\n";
  } else if (c.name == "koszul_complex") {
    for (const auto& d : r.at("degrees"))
      os << "    d = " << d.at("d") << ": dims " << join(d.at("dims")) << ", ranks " << join(d.at("ranks"))
         << (d.at("exact").get<bool>() ? ", exact" : ", NOT exact") << "\n";
  } else if (c.name == "theorem44") {
    for (const auto& row : r.at("table"))
      if (!row.at("vanishes").get<bool>())
        os << "    g = " << row.at("g") << ", component " << row.at("i") << " (a = " << row.at("a") << ")"
           << (row.at("allowed").get<bool>() ? " allowed" : " FORBIDDEN") << "\n";
  } else if (c.name == "dN_zero") {
    os << "    q = " << r.at("q").get<std::string>() << ", commute " << r.at("commute") << ", factorization "
       << r.at("factorization") << ", phi identity " << r.at("phi_identity") << ", lands in W " << r.at("lands_in_W")
       << "\n";
  } else if (c.name == "contraction") {
    for (const auto& s : r.at("slices"))
      os << "    t = " << s.at("t") << ": dims " << join(s.at("dims")) << ", ranks " << join(s.at("ranks")) << ", dim U "
         << s.at("dim_U") << (s.at("exact").get<bool>() ? ", exact" : ", NOT exact")
         << (s.at("in_window").get<bool>() ? "" : " (outside window)") << "\n";
  } else if (c.name == "wedge_agreement") {
    for (const auto& p : r.at("positions")) os << "    " << p.dump() << "\n";
  }
}

}  // namespace

RunReport run(const RunConfig& cfg, const json& document) { return Runner(cfg, document).run(); }

std::string render_text(const RunReport& r) {
  std::ostringstream os;
  const auto& p = r.presentation;
  os << "input " << r.input << ": family " << p.at("family").get<std::string>() << ", N = " << p.at("N")
     << ", dim V = " << p.at("dimV") << ", |G| = " << p.at("group_order") << ", conductor " << p.at("conductor")
     << ", D = " << r.degree_bound << "\n";
  for (const auto& c : r.checks) {
    std::string tag = c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "SKIP";
    os << "[" << tag << "] " << c.name << ": " << c.summary << "\n";
    render_details(os, c);
  }
  os << "exit " << r.exit_code << "\n";
  return os.str();
}

int run_main(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "text" && cfg.format != "json") throw UsageError("format must be text or json");
    std::ifstream in(cfg.input);
    if (!in) throw UsageError("cannot read " + cfg.input);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
    RunReport r = run(cfg, doc);
    const std::string text = cfg.format == "json" ? json(r).dump(2) + "\n" : render_text(r);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw UsageError("cannot write " + cfg.out);
      f << text;
    }
    return r.exit_code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  }
  return 2;
}

std::string explain(const std::string& check) {
  static const std::map<std::string, std::string> text{
      {"condition_I",
       "P cap F^{N-1} = 0: no nonzero element of the relation space has filtration degree below N, so every "
       "relation is r - phi(r) with r in R = the top-degree part of P.\nreport: holds, dim_P, dim_P_below_N"},
      {"condition_J",
       "(P V + V P) cap F^N is contained in P. Checked three ways that must agree: directly, as "
       "(phi^{1,N} - phi^{2,N+1})(W_{N+1}) inside P, and as the component conditions J'1 (top part in R), "
       "J'2 (phi_j of the top part cancels the degree-j part, 1 <= j <= N-1) and J'3 (phi_0 of the top part "
       "vanishes).\nreport: direct, via_W, J1, J2, J3, J2_evaluated, J2_failing_degree, witness, witness_image"},
      {"oracle",
       "J^n cap F^{n-1} = J^{n-1} for N <= n <= D, where J^n = sum V^i P V^j; together with the dimensions "
       "dim F^n - dim J^n this is the PBW property up to D.\nreport: bound, equalities, J_dims, candidate_gr_dim, "
       "A_dims"},
      {"pbw",
       "The PBW theorem for N-Koszul homogenization: condition (I), condition (J) and the Tor_3 equalities of the "
       "homogeneous algebra certify that gr U = A.\nreport: condition_I, condition_J, tor3, tor3_unconditional, "
       "verdict, oracle"},
      {"ec",
       "The extra condition: (V^{n-N} R) cap (R V^{n-N} + ... + V^{n-N-1} R V) = V^{n-N-1} W_{N+1} for "
       "N+2 <= n <= 2N-1 (vacuous for N = 2).\nreport: holds, per_n"},
      {"tor3",
       "Tor_3 concentrated in degree N+1: the extra condition plus (V^{n-N} R) cap (I(R)_{n-1} V) = "
       "V^{n-N-1} W_{N+1} + I(R)_{n-N} R for 2N <= n <= D.\nreport: bound, ec, per_n, holds, fails_at, verdict"},
      {"koszul_complex",
       "Exactness of the Koszul complex A (x) W_{zeta(i)} with differentials d and d^{N-1} in every internal "
       "degree d <= D, where zeta(2q) = qN and zeta(2q+1) = qN + 1.\nreport: degree_bound, degrees (dims, ranks, "
       "exact), verified, counterexample, verdict"},
      {"equivariance",
       "psi(rho(g) w) = g psi(w) g^{-1} for all g in the group and w in Lambda^p V.\nreport: holds"},
      {"theorem44",
       "H_psi is Koszul iff psi is equivariant and each psi_g vanishes on Lambda^i(M_g) (x) Lambda^{p-i}(L_g) for "
       "i != dim M_g, where M_g = Image(Id - (-1)^p g) and L_g = Ker(Id - (-1)^p g).\nreport: equivariant, "
       "components_ok, odd_p, holds, identity, table"},
      {"dN_zero",
       "d = d_l - q^{n-1} d_r on U (x) W_n (x) U satisfies d^N = 0 for q a primitive N-th root of unity, using "
       "prod (d_l - q^i d_r) = d_l^N - d_r^N = 1 (x) (phi^{1,N} - phi^{n-N+1,n}) (x) 1.\nreport: N, bound, q, "
       "dN_zero, failing_level, commute, factorization, phi_identity, lands_in_W"},
      {"contraction",
       "The contracted complex U (x) W_{zeta(i)} (x) U with d_l - d_r and sum_t d_l^{N-1-t} d_r^t, augmented by "
       "multiplication onto U, is exact: the Koszul resolution of U. Asserted for total degree <= D - N.\nreport: "
       "N, bound, window, slices (dims, ranks, dim_U, exact, euler, in_window), window_exact"},
      {"wedge_agreement",
       "For H_psi, with W_n identified with Lambda^n V (x) K, the explicit wedge-basis formulas for d and d^{p-1} "
       "agree with the contracted differentials; for p = 2 the odd and even formulas coincide.\nreport: positions "
       "(corrected, literal, even_reduced, odd_equals_even)"},
  };
  auto it = text.find(check);
  if (it == text.end()) throw UsageError("unknown check '" + check + "'");
  return it->second;
}

}  // namespace koszul::cli
