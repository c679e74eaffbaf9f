#include "qdt/quiver.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

namespace qdt {

DimVector::DimVector(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw InvalidInput("dimension vector entries must be nonnegative");
  }
}

DimVector DimVector::unit(std::size_t n, std::size_t i) {
  std::vector<int> v(n, 0);
  v.at(i) = 1;
  return DimVector(std::move(v));
}

int DimVector::total() const {
  int s = 0;
  for (int e : entries_) s += e;
  return s;
}

bool DimVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

bool DimVector::leq(const DimVector& other) const {
  if (other.size() != size()) throw InvalidInput("dimension vectors of different length");
  for (std::size_t i = 0; i < size(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

DimVector DimVector::operator+(const DimVector& other) const {
  if (other.size() != size()) throw InvalidInput("dimension vectors of different length");
  std::vector<int> v(entries_);
  for (std::size_t i = 0; i < size(); ++i) v[i] += other.entries_[i];
  return DimVector(std::move(v));
}

DimVector DimVector::operator-(const DimVector& other) const {
  if (other.size() != size()) throw InvalidInput("dimension vectors of different length");
  std::vector<int> v(entries_);
  for (std::size_t i = 0; i < size(); ++i) v[i] -= other.entries_[i];
  return DimVector(std::move(v));
}

DimVector DimVector::scaled(int k) const {
  std::vector<int> v(entries_);
  for (int& e : v) e *= k;
  return DimVector(std::move(v));
}

std::string DimVector::key() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out;
}

DimVector DimVector::parse(std::string_view text) {
  std::vector<int> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InvalidInput("malformed dimension vector '" + std::string(text) + "'");
    }
    v.push_back(value);
    pos = comma + 1;
  }
  return DimVector(std::move(v));
}

Quiver::Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows)
    : vertices_(std::move(vertices)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v).second) throw InvalidInput("duplicate vertex '" + v + "'");
  }
  std::set<std::string> labels;
  for (const auto& a : arrows) {
    if (a.label.empty()) throw InvalidInput("arrow with empty label");
    if (!labels.insert(a.label).second) throw InvalidInput("duplicate arrow label '" + a.label + "'");
    arrows_.push_back(Arrow{a.label, vertex_index(a.source), vertex_index(a.target)});
  }
}

std::size_t Quiver::vertex_index(std::string_view name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) throw InvalidInput("unknown vertex '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Quiver::find_arrow(std::string_view label) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].label == label) return i;
  }
  return std::nullopt;
}

std::vector<ArrowSpec> Quiver::arrow_specs() const {
  std::vector<ArrowSpec> out;
  out.reserve(arrows_.size());
  for (const auto& a : arrows_) out.push_back({a.label, vertices_[a.source], vertices_[a.target]});
  return out;
}

void Quiver::check_dim(const DimVector& d) const {
  if (d.size() != vertices_.size()) {
    throw InvalidInput("dimension vector " + d.key() + " has " + std::to_string(d.size()) +
                       " entries, quiver has " + std::to_string(vertices_.size()) + " vertices");
  }
}

bool Quiver::is_symmetric() const {
  const std::size_t n = vertices_.size();
  std::vector<int> count(n * n, 0);
  for (const auto& a : arrows_) ++count[a.source * n + a.target];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (count[i * n + j] != count[j * n + i]) return false;
    }
  }
  return true;
}

namespace quivers {

Quiver jordan() { return Quiver({"0"}, {{"x", "0", "0"}}); }

Quiver loops(int count) {
  std::vector<ArrowSpec> arrows;
  for (int i = 1; i <= count; ++i) arrows.push_back({"x" + std::to_string(i), "0", "0"});
  return Quiver({"0"}, arrows);
}

Quiver a2() { return Quiver({"1", "2"}, {{"a", "1", "2"}}); }

Quiver point() { return Quiver({"0"}, {}); }

}  // namespace quivers

Quiver double_quiver(const Quiver& q) {
  std::vector<ArrowSpec> arrows = q.arrow_specs();
  const std::size_t n = arrows.size();
  for (std::size_t i = 0; i < n; ++i) {
    arrows.push_back({arrows[i].label + "*", arrows[i].target, arrows[i].source});
  }
  try {
    return Quiver(q.vertices(), arrows);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("cannot double quiver: ") + e.what());
  }
}

Quiver triple_quiver(const Quiver& q) {
  Quiver doubled = double_quiver(q);
  std::vector<ArrowSpec> arrows = doubled.arrow_specs();
  for (const auto& v : q.vertices()) arrows.push_back({"omega_" + v, v, v});
  try {
    return Quiver(q.vertices(), arrows);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("cannot triple quiver: ") + e.what());
  }
}

Quiver frame_quiver(const Quiver& q, const DimVector& f) {
  q.check_dim(f);
  std::vector<std::string> vertices;
  vertices.emplace_back(kFramingVertex);
  for (const auto& v : q.vertices()) vertices.push_back(v);
  std::vector<ArrowSpec> arrows = q.arrow_specs();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    for (int m = 1; m <= f[i]; ++m) {
      const auto& v = q.vertices()[i];
      arrows.push_back({"beta(" + v + "," + std::to_string(m) + ")", std::string(kFramingVertex), v});
    }
  }
  try {
    return Quiver(std::move(vertices), arrows);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("cannot frame quiver: ") + e.what());
  }
}

long euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
  q.check_dim(d);
  q.check_dim(e);
  long value = 0;
  for (std::size_t i = 0; i < d.size(); ++i) value += static_cast<long>(d[i]) * e[i];
  for (const auto& a : q.arrows()) value -= static_cast<long>(d[a.source]) * e[a.target];
  return value;
}

long antisym_form(const Quiver& q, const DimVector& d, const DimVector& e) {
  return euler_form(q, d, e) - euler_form(q, e, d);
}

StabilityCondition::StabilityCondition(std::vector<Rational> real_parts)
    : real_parts_(std::move(real_parts)) {
  for (auto& r : real_parts_) r.canonicalize();
}

StabilityCondition StabilityCondition::degenerate(std::size_t n) {
  return StabilityCondition(std::vector<Rational>(n, Rational(0)));
}

Rational slope(const StabilityCondition& z, const DimVector& d) {
  if (d.size() != z.size()) throw InvalidInput("stability condition and dimension vector differ in length");
  if (d.is_zero()) throw InvalidInput("slope of the zero dimension vector is undefined");
  Rational num = 0;
  for (std::size_t i = 0; i < d.size(); ++i) num += z.real_parts()[i] * d[i];
  Rational result = -num / d.total();
  result.canonicalize();
  return result;
}

namespace {

// All vectors with entries in [0, bound], in lexicographic order.
std::vector<DimVector> box(std::size_t n, const std::vector<int>& bound) {
  std::vector<DimVector> out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace

GenericityReport is_generic(const Quiver& q, const StabilityCondition& z, int bound) {
  if (bound < 1) throw InvalidInput("genericity bound must be >= 1");
  GenericityReport report;
  report.bound = bound;
  const std::size_t n = q.vertex_count();
  std::vector<DimVector> all = box(n, std::vector<int>(n, bound));
  std::vector<std::pair<DimVector, Rational>> nonzero;
  for (auto& d : all) {
    if (!d.is_zero()) nonzero.emplace_back(d, slope(z, d));
  }
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    for (std::size_t j = i + 1; j < nonzero.size(); ++j) {
      if (nonzero[i].second != nonzero[j].second) continue;
      if (antisym_form(q, nonzero[i].first, nonzero[j].first) != 0) {
        report.generic = false;
        report.witness = std::make_pair(nonzero[i].first, nonzero[j].first);
        return report;
      }
    }
  }
  return report;
}

std::vector<HNType> hn_types(const Quiver& q, const StabilityCondition& z, const DimVector& d) {
  q.check_dim(d);
  if (d.is_zero()) throw InvalidInput("HN types are defined for nonzero dimension vectors");
  std::vector<DimVector> candidates = box(d.size(), d.entries());
  std::vector<HNType> out;
  std::vector<DimVector> prefix;
  std::function<void(const DimVector&, const std::optional<Rational>&)> extend =
      [&](const DimVector& rest, const std::optional<Rational>& bound) {
        if (rest.is_zero()) {
          out.push_back(HNType{prefix});
          return;
        }
        for (const auto& e : candidates) {
          if (e.is_zero() || !e.leq(rest)) continue;
          Rational s = slope(z, e);
          if (bound && !(s < *bound)) continue;
          prefix.push_back(e);
          extend(rest - e, s);
          prefix.pop_back();
        }
      };
  extend(d, std::nullopt);
  std::sort(out.begin(), out.end());
  return out;
}

long hn_f(const Quiver& q, const HNType& alpha) {
  long f = 0;
  for (std::size_t j = 0; j < alpha.parts.size(); ++j) {
    for (std::size_t k = j + 1; k < alpha.parts.size(); ++k) {
      f += antisym_form(q, alpha.parts[j], alpha.parts[k]);
    }
  }
  return f;
}

long hn_census_twist(const Quiver& q, const HNType& alpha) {
  long t = 0;
  for (std::size_t j = 0; j < alpha.parts.size(); ++j) {
    for (std::size_t k = j + 1; k < alpha.parts.size(); ++k) {
      t -= euler_form(q, alpha.parts[k], alpha.parts[j]);
    }
  }
  return t;
}

long hn_census_twist_preprojective(const Quiver& q, const HNType& alpha) {
  long t = 0;
  for (std::size_t j = 0; j < alpha.parts.size(); ++j) {
    for (std::size_t k = j + 1; k < alpha.parts.size(); ++k) {
      t -= euler_form(q, alpha.parts[k], alpha.parts[j]) + euler_form(q, alpha.parts[j], alpha.parts[k]);
    }
  }
  return t;
}

std::string SerreConstraint::describe() const {
  if (empty()) return "none";
  std::ostringstream out;
  bool first = true;
  for (const auto& c : clauses) {
    if (!first) out << "; ";
    first = false;
    out << (c.kind == CycleKind::nilpotent ? "nilpotent(" : "invertible(");
    for (std::size_t i = 0; i < c.cycle.size(); ++i) out << (i ? " " : "") << c.cycle[i];
    out << ")";
  }
  if (nilpotent_module) out << (first ? "" : "; ") << "nilpotent-module";
  return out.str();
}

void SerreConstraint::validate(const Quiver& q) const {
  for (const auto& c : clauses) {
    if (c.cycle.empty()) throw InvalidInput("constraint clause with empty cycle");
    std::vector<std::size_t> idx;
    for (const auto& label : c.cycle) {
      auto a = q.find_arrow(label);
      if (!a) throw InvalidInput("constraint refers to unknown arrow '" + label + "'");
      idx.push_back(*a);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& cur = q.arrows()[idx[i]];
      const auto& next = q.arrows()[idx[(i + 1) % idx.size()]];
      if (cur.target != next.source) {
        throw InvalidInput("constraint cycle is not a closed path at arrow '" + cur.label + "'");
      }
    }
  }
}

SerreConstraint SerreConstraint::loops_nilpotent(const Quiver& q) {
  SerreConstraint s;
  for (const auto& a : q.arrows()) {
    if (a.is_loop()) s.clauses.push_back(CycleClause{{a.label}, CycleKind::nilpotent});
  }
  return s;
}

}  // namespace qdt
