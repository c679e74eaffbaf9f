#include "qdt/dt.hpp"

#include <algorithm>
#include <set>

#include "qdt/kac.hpp"

namespace qdt {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle:
      return "oracle";
    case Provenance::series_extracted:
      return "series-extracted";
    case Provenance::user_supplied:
      return "user-supplied";
  }
  return "oracle";
}

Provenance parse_provenance(std::string_view text) {
  if (text == "oracle") return Provenance::oracle;
  if (text == "series-extracted") return Provenance::series_extracted;
  if (text == "user-supplied") return Provenance::user_supplied;
  throw InvalidInput("unknown provenance '" + std::string(text) + "'");
}

void KacTable::set(const DimVector& d, const LaurentPoly& a, Provenance how) {
  quiver.check_dim(d);
  if (d.is_zero()) throw InvalidInput("Kac tables have no entry for d = 0");
  if (!a.integral()) throw ConsistencyError("Kac polynomial " + a.to_string() + " at d = " + d.key() + " is not integral");
  if (a.is_zero()) {
    entries.erase(d);
    provenance.erase(d);
    return;
  }
  entries[d] = a;
  provenance[d] = how;
}

LaurentPoly KacTable::at(const DimVector& d) const {
  auto it = entries.find(d);
  return it == entries.end() ? LaurentPoly() : it->second;
}

std::vector<DimVector> dimension_vectors(std::size_t vertices, int order) {
  std::vector<DimVector> out;
  for (const auto& d : TruncSeries(std::vector<std::string>(vertices), order).monomials()) {
    if (!d.is_zero()) out.push_back(d);
  }
  return out;
}

KacTable kac_table_from_oracle(const Quiver& q, const SerreConstraint& s, int order, const CensusOptions& options) {
  KacTable table{q, s, {}, {}, order, false};
  for (const auto& d : dimension_vectors(q.vertex_count(), order)) {
    table.set(d, kac_polynomial(q, d, s, std::nullopt, options), Provenance::oracle);
  }
  return table;
}

namespace {

RationalFunction q_power(long k) { return RationalFunction(LaurentPoly::q_power(static_cast<int>(k))); }

Rational int_power(std::uint32_t p, long k) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), p, static_cast<unsigned long>(std::labs(k)));
  Rational out = k >= 0 ? Rational(v) : Rational(Integer(1), v);
  out.canonicalize();
  return out;
}

RationalFunction stack_factor(StackNormalization norm) {
  const LaurentPoly q = LaurentPoly::q();
  return RationalFunction(norm == StackNormalization::standard ? q : LaurentPoly(1), q - LaurentPoly(1));
}

}  // namespace

TruncSeries stack_series_from_kac(const KacTable& k, int order, StackNormalization norm) {
  if (order > k.order) {
    throw InvalidInput("Kac table covers |d| <= " + std::to_string(k.order) + ", series requested to order " +
                       std::to_string(order));
  }
  TruncSeries f(k.quiver.vertices(), order);
  const RationalFunction c = stack_factor(norm);
  for (const auto& [d, a] : k.entries) f.set_coeff(d, RationalFunction(a) * c);
  return pleth_exp(f);
}

KacTable kac_from_stack_series(const TruncSeries& g, const Quiver& q, bool raw_census) {
  if (g.nvars() != q.vertex_count()) throw InvalidInput("series variables do not match the quiver's vertices");
  TruncSeries twisted = g;
  if (raw_census) {
    twisted = TruncSeries(g.variables(), g.order());
    for (const auto& [d, c] : g.terms()) twisted.set_coeff(d, c * q_power(euler_form(q, d, d)));
  }
  const TruncSeries log = pleth_log(twisted);
  const LaurentPoly qq = LaurentPoly::q();
  const RationalFunction factor(qq - LaurentPoly(1), qq);
  KacTable table{q, {}, {}, {}, g.order(), false};
  for (const auto& [d, c] : log.terms()) {
    const RationalFunction a = c * factor;
    if (!a.is_laurent()) {
      throw ConsistencyError("extracted coefficient at d = " + d.key() + " is not a polynomial: " + a.to_string());
    }
    table.set(d, a.num(), Provenance::series_extracted);
  }
  return table;
}

TruncSeries census_stack_series(const Quiver& q, int order, Relations relations, const SerreConstraint& s,
                                const CensusOptions& options) {
  TruncSeries g = TruncSeries::one(q.vertices(), order);
  for (const auto& d : dimension_vectors(q.vertex_count(), order)) {
    const PolynomialFit fit = point_count_polynomial(q, d, relations, s, options);
    g.set_coeff(d, RationalFunction(fit.poly, gl_order_poly(d)));
  }
  return g;
}

long hn_twist(const Quiver& q, const HNType& alpha, Relations relations) {
  return relations == Relations::preprojective ? hn_census_twist_preprojective(q, alpha) : hn_census_twist(q, alpha);
}

Rational hn_semistable_series(const std::map<DimVector, Rational>& total, const Quiver& q,
                              const StabilityCondition& z, const DimVector& d, std::uint32_t p, Relations relations) {
  q.check_dim(d);
  std::map<DimVector, Rational> memo;
  auto sst = [&](auto&& self, const DimVector& e) -> Rational {
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    auto t = total.find(e);
    if (t == total.end()) throw InvalidInput("missing census total for d = " + e.key());
    Rational value = t->second;
    for (const auto& alpha : hn_types(q, z, e)) {
      if (alpha.parts.size() == 1) continue;
      Rational term = int_power(p, hn_twist(q, alpha, relations));
      for (const auto& part : alpha.parts) term *= self(self, part);
      value -= term;
    }
    value.canonicalize();
    memo[e] = value;
    return value;
  };
  return sst(sst, d);
}

bool WallcrossReport::pass() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const WallcrossCoefficient& c) { return c.pass && c.decompositions_match; });
}

std::optional<DimVector> WallcrossReport::first_failure() const {
  for (const auto& c : coefficients) {
    if (!c.pass || !c.decompositions_match) return c.d;
  }
  return std::nullopt;
}

WallcrossReport wallcross_check(const Quiver& q, const StabilityCondition& z, std::uint32_t p, int order,
                                Relations relations, const SerreConstraint& s, const CensusOptions& options,
                                long perturbation) {
  WallcrossReport report{p, order, relations, perturbation, {}};
  const bool twisted = relations == Relations::preprojective;
  const auto dims = dimension_vectors(q.vertex_count(), order);
  std::map<DimVector, Rational> total, sst;
  for (const auto& d : dims) {
    const CensusReport r = run_census({q, d, p, relations, s, z, Classification::none}, options);
    Rational t = r.stack_count;
    Rational ss(*r.semistable_count, gl_order(d, p));
    if (twisted) {
      t *= int_power(p, euler_form(q, d, d));
      ss *= int_power(p, euler_form(q, d, d));
    }
    t.canonicalize();
    ss.canonicalize();
    total[d] = t;
    sst[d] = ss;
  }
  // Slope-ordered factors 1 + sum_{d in Lambda_theta} sst_d t^d.
  std::map<Rational, std::vector<DimVector>, std::greater<>> by_slope;
  for (const auto& d : dims) by_slope[slope(z, d)].push_back(d);
  struct Term {
    DimVector total;
    Rational c;
    std::vector<DimVector> parts;
  };
  std::vector<Term> terms{{DimVector::zero(q.vertex_count()), 1, {}}};
  for (const auto& [theta, group] : by_slope) {
    std::vector<Term> next = terms;
    for (const auto& t : terms) {
      for (const auto& d : group) {
        const DimVector sum = t.total + d;
        if (sum.total() > order) continue;
        Rational c = t.c * sst[d];
        if (!t.total.is_zero()) {
          const long cross = (twisted ? 0 : -euler_form(q, d, t.total)) + perturbation;
          c *= int_power(p, cross);
        }
        auto parts = t.parts;
        parts.push_back(d);
        next.push_back({sum, c, std::move(parts)});
      }
    }
    terms = std::move(next);
  }
  for (const auto& d : dims) {
    WallcrossCoefficient coeff;
    coeff.d = d;
    coeff.lhs = total[d];
    std::set<std::vector<DimVector>> used;
    for (const auto& t : terms) {
      if (t.total != d) continue;
      coeff.rhs += t.c;
      used.insert(t.parts);
    }
    coeff.rhs.canonicalize();
    std::set<std::vector<DimVector>> expected;
    for (const auto& alpha : hn_types(q, z, d)) expected.insert(alpha.parts);
    coeff.pass = coeff.lhs == coeff.rhs;
    coeff.decompositions_match = used == expected;
    report.coefficients.push_back(coeff);
  }
  return report;
}

std::map<DimVector, LaurentPoly> nakajima_series(const Quiver& q, const DimVector& f, int order,
                                                 const KacTable& unframed, const KacTable& framed) {
  q.check_dim(f);
  const Quiver qf = frame_quiver(q, f);
  if (!(framed.quiver == qf)) throw InvalidInput("framed Kac table is not over the framed quiver");
  if (!(unframed.quiver == q)) throw InvalidInput("unframed Kac table is not over the quiver");
  if (unframed.order < order || framed.order < order + 1) throw InvalidInput("Kac tables do not reach the order");
  const std::size_t n = q.vertex_count();
  const RationalFunction c = stack_factor(StackNormalization::standard);

  // Entries with d_inf >= 2 cannot reach the d_inf = 1 slice; those with
  // d_inf = 0 are the Kac polynomials of Q.
  TruncSeries h(qf.vertices(), order + 1);
  for (const auto& [d, a] : unframed.entries) {
    std::vector<int> e{0};
    e.insert(e.end(), d.entries().begin(), d.entries().end());
    h.set_coeff(DimVector(e), RationalFunction(a) * c);
  }
  for (const auto& [e, a] : framed.entries) {
    if (e[0] == 1) h.set_coeff(e, RationalFunction(a) * c);
  }
  const TruncSeries big = pleth_exp(h);
  TruncSeries slice(q.vertices(), order);
  for (const auto& [e, coeff] : big.terms()) {
    if (e[0] != 1) continue;
    slice.set_coeff(DimVector(std::vector<int>(e.entries().begin() + 1, e.entries().end())), coeff);
  }
  const TruncSeries quotient =
      slice * series_invert(stack_series_from_kac(unframed, order)) * RationalFunction(LaurentPoly::q() - LaurentPoly(1));

  std::map<DimVector, LaurentPoly> out;
  for (const auto& d : dimension_vectors(n, order)) {
    std::vector<int> e{1};
    e.insert(e.end(), d.entries().begin(), d.entries().end());
    const DimVector framed_dim(e);
    const RationalFunction w = quotient.coeff(d) * q_power(-euler_form(qf, framed_dim, framed_dim));
    if (!w.is_laurent()) {
      throw ConsistencyError("Nakajima quotient at d = " + d.key() + " is not a polynomial: " + w.to_string());
    }
    out[d] = w.num();
  }
  return out;
}

std::map<DimVector, LaurentPoly> nakajima_series(const Quiver& q, const DimVector& f, int order,
                                                 const CensusOptions& options) {
  const KacTable unframed = kac_table_from_oracle(q, {}, order, options);
  const Quiver qf = frame_quiver(q, f);
  KacTable framed{qf, {}, {}, {}, order + 1, false};
  for (const auto& d : TruncSeries(q.vertices(), order).monomials()) {
    std::vector<int> e{1};
    e.insert(e.end(), d.entries().begin(), d.entries().end());
    const DimVector fd(e);
    framed.set(fd, kac_polynomial(qf, fd, {}, std::nullopt, options), Provenance::oracle);
  }
  return nakajima_series(q, f, order, unframed, framed);
}

namespace {

const std::vector<std::string> kT{"t"};

TruncSeries one_var(int order, int exponent, const RationalFunction& c) {
  return TruncSeries::monomial(kT, order, DimVector({exponent}), c);
}

}  // namespace

TruncSeries char_stack_series(int order) {
  if (order < 1) throw InvalidInput("order must be >= 1");
  TruncSeries f(kT, order);
  const RationalFunction c(LaurentPoly::q() - LaurentPoly(1));
  for (int d = 1; d <= order; ++d) f.set_coeff(DimVector({d}), c);
  return pleth_exp(f);
}

TruncSeries char_stack_product(int order) {
  if (order < 1) throw InvalidInput("order must be >= 1");
  TruncSeries out = TruncSeries::one(kT, order);
  const TruncSeries one = TruncSeries::one(kT, order);
  for (int j = 1; j <= order; ++j) {
    out = out * (one - one_var(order, j, 1));
    out = out * series_invert(one - one_var(order, j, RationalFunction(LaurentPoly::q())));
  }
  return out;
}

TruncSeries hilb3_series(int order) {
  if (order < 1) throw InvalidInput("order must be >= 1");
  TruncSeries out = TruncSeries::one(kT, order);
  for (int m = 1; m <= order; ++m) {
    for (int k = 0; k < m; ++k) {
      // (1 - c t^m)^{-1} = sum_j c^j t^{jm}
      const LaurentPoly c = LaurentPoly::q_power(2 * k + 4 - m);
      TruncSeries geometric(kT, order);
      LaurentPoly power(1);
      for (int j = 0; j * m <= order; ++j) {
        geometric.set_coeff(DimVector({j * m}), RationalFunction(power));
        power *= c;
      }
      out = out * geometric;
    }
  }
  return out;
}

std::vector<LaurentPoly> hilb3_weights(int order) {
  const TruncSeries h = hilb3_series(order);
  std::vector<LaurentPoly> out;
  for (int n = 0; n <= order; ++n) {
    const RationalFunction c = h.coeff(DimVector({n}));
    if (!c.is_laurent()) throw ConsistencyError("Hilb(C^3) coefficient is not a Laurent polynomial");
    out.push_back(c.num() * LaurentPoly::q_power(n * n - n));
  }
  return out;
}

KacTable duality_transform(const KacTable& k) {
  KacTable out = k;
  for (auto& [d, a] : out.entries) a = a.inverted();
  out.laurent = true;
  return out;
}

std::optional<std::pair<int, Rational>> first_nonpositive(const LaurentPoly& a) {
  for (const auto& [e, c] : a.coeffs()) {
    if (c < 0 || c.get_den() != 1) return std::make_pair(e, c);
  }
  return std::nullopt;
}

PositivityReport positivity_report(const std::vector<KacTable>& tables) {
  PositivityReport report;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (const auto& [d, a] : tables[i].entries) {
      ++report.entries_checked;
      if (auto bad = first_nonpositive(a)) report.violations.push_back({i, d, bad->first, bad->second});
    }
  }
  return report;
}

}  // namespace qdt
