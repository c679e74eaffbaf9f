#include "qdt/laurent.hpp"

#include <cstdlib>
#include <sstream>

namespace qdt {

LaurentPoly::LaurentPoly(const Rational& constant) {
  if (constant != 0) coeffs_.emplace(0, constant);
}

LaurentPoly LaurentPoly::monomial(int u_exp, const Rational& coeff) {
  LaurentPoly p;
  if (coeff != 0) p.coeffs_.emplace(u_exp, coeff);
  return p;
}

Rational LaurentPoly::coeff(int u_exp) const {
  auto it = coeffs_.find(u_exp);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set_coeff(int u_exp, const Rational& c) {
  if (c == 0) {
    coeffs_.erase(u_exp);
  } else {
    coeffs_[u_exp] = c;
  }
}

bool LaurentPoly::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

int LaurentPoly::min_exp() const { return coeffs_.begin()->first; }
int LaurentPoly::max_exp() const { return coeffs_.rbegin()->first; }

bool LaurentPoly::even_powers_only() const {
  for (const auto& [e, c] : coeffs_) {
    if (e % 2 != 0) return false;
  }
  return true;
}

bool LaurentPoly::integral() const {
  for (const auto& [e, c] : coeffs_) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) {
      Rational prod = ca * cb;
      auto [it, inserted] = out.coeffs_.try_emplace(ea + eb, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
  } else {
    for (auto& [e, v] : coeffs_) v *= c;
  }
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(*this);
  for (auto& [e, v] : out.coeffs_) v = -v;
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1), base(*this);
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace_hint(out.coeffs_.end(), e + k, c);
  return out;
}

LaurentPoly LaurentPoly::adams(int n) const {
  if (n < 1) throw InvalidInput("Adams operation index must be >= 1");
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace_hint(out.coeffs_.end(), e * n, c);
  return out;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(-e, c);
  return out;
}

Rational LaurentPoly::eval_at_q(long q0) const {
  if (q0 < 1) throw InvalidInput("evaluation point q must be a positive integer");
  Rational value = 0;
  for (const auto& [e, c] : coeffs_) {
    if (e % 2 != 0) {
      throw InvalidInput("odd power u^" + std::to_string(e) +
                         " present; evaluation at u^2 = q needs a Tate-type (even) polynomial");
    }
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(q0), static_cast<unsigned long>(std::abs(e / 2)));
    value += e >= 0 ? Rational(c * power) : Rational(c / power);
  }
  value.canonicalize();
  return value;
}

Rational LaurentPoly::eval_at_one() const {
  Rational value = 0;
  for (const auto& [e, c] : coeffs_) value += c;
  return value;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  const bool in_q = even_powers_only();
  const char* var = in_q ? "q" : "u";
  std::ostringstream out;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const int e = in_q ? it->first / 2 : it->first;
    Rational c = it->second;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    const bool unit = (c == 1);
    if (e == 0) {
      out << c.get_str();
      continue;
    }
    if (!unit) out << c.get_str() << "*";
    out << var;
    if (e != 1) out << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return out.str();
}

}  // namespace qdt
