#include "neq/polynomial.hpp"

#include <algorithm>
#include <set>

namespace neq {

IntPolynomial::IntPolynomial(Integer constant) {
  if (constant != 0) terms_.emplace(Monomial::one(), std::move(constant));
}

IntPolynomial IntPolynomial::variable(int v, Integer coefficient) {
  IntPolynomial p;
  p.add_term(Monomial::linear(v), coefficient);
  return p;
}

int IntPolynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

Integer IntPolynomial::coefficient(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void IntPolynomial::add_term(const Monomial &m, const Integer &coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

int IntPolynomial::variable_bound() const {
  int bound = 0;
  for (const auto &[m, c] : terms_) bound = std::max({bound, m.first + 1, m.second + 1});
  return bound;
}

std::vector<int> IntPolynomial::support() const {
  std::set<int> s;
  for (const auto &[m, c] : terms_) {
    if (m.first >= 0) s.insert(m.first);
    if (m.second >= 0) s.insert(m.second);
  }
  return {s.begin(), s.end()};
}

bool IntPolynomial::only_linear_in(int v) const {
  for (const auto &[m, c] : terms_)
    if (m.degree() == 2 && (m.first == v || m.second == v)) return false;
  return true;
}

IntPolynomial &IntPolynomial::operator+=(const IntPolynomial &o) {
  for (const auto &[m, c] : o.terms_) add_term(m, c);
  return *this;
}

IntPolynomial &IntPolynomial::operator-=(const IntPolynomial &o) {
  for (const auto &[m, c] : o.terms_) add_term(m, -c);
  return *this;
}

IntPolynomial &IntPolynomial::operator*=(const Integer &k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, c] : terms_) c *= k;
  return *this;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial out = *this;
  for (auto &[m, c] : out.terms_) c = -c;
  return out;
}

IntPolynomial operator*(const IntPolynomial &a, const IntPolynomial &b) {
  IntPolynomial out;
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_) {
      if (ma.degree() + mb.degree() > 2) throw DegreeOverflow("polynomial degree would exceed 2");
      std::vector<int> idx;
      for (int v : {ma.first, ma.second, mb.first, mb.second})
        if (v >= 0) idx.push_back(v);
      Monomial m;
      if (idx.size() == 1) m = Monomial::linear(idx[0]);
      if (idx.size() == 2) m = Monomial::quadratic(idx[0], idx[1]);
      out.add_term(m, ca * cb);
    }
  return out;
}

Integer IntPolynomial::evaluate(const std::vector<Integer> &point) const {
  Integer sum = 0;
  for (const auto &[m, c] : terms_) {
    Integer term = c;
    if (m.first >= 0) term *= point.at(m.first);
    if (m.second >= 0) term *= point.at(m.second);
    sum += term;
  }
  return sum;
}

IntPolynomial IntPolynomial::reduced_mod(const Integer &m) const {
  IntPolynomial out;
  for (const auto &[mono, c] : terms_) out.add_term(mono, mod_floor(c, m));
  return out;
}

Integer IntPolynomial::content() const {
  Integer g = 0;
  for (const auto &[m, c] : terms_) g = gcd(g, c);
  return g;
}

IntPolynomial IntPolynomial::substitute(const std::vector<Integer> &offset,
                                        const std::vector<std::vector<Integer>> &basis) const {
  // y_i = offset_i + sum_j basis[j][i] t_j
  auto image = [&](int i) {
    IntPolynomial y(offset.at(i));
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (basis[j].at(i) != 0) y.add_term(Monomial::linear(static_cast<int>(j)), basis[j][i]);
    return y;
  };
  IntPolynomial out;
  for (const auto &[m, c] : terms_) {
    IntPolynomial term(c);
    if (m.first >= 0) term = term * image(m.first);
    if (m.second >= 0) term = term * image(m.second);
    out += term;
  }
  return out;
}

IntPolynomial IntPolynomial::remap(const std::vector<int> &mapping) const {
  IntPolynomial out;
  auto map_index = [&](int v) {
    if (v < 0) return -1;
    int w = mapping.at(v);
    if (w < 0) throw std::out_of_range("remap drops a used unknown");
    return w;
  };
  for (const auto &[m, c] : terms_) {
    int a = map_index(m.first), b = map_index(m.second);
    Monomial mm = m.degree() == 0 ? Monomial::one()
                  : m.degree() == 1 ? Monomial::linear(b)
                                    : Monomial::quadratic(a, b);
    out.add_term(mm, c);
  }
  return out;
}

std::string IntPolynomial::to_string(const std::vector<std::string> &names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int v) {
    return v < static_cast<int>(names.size()) ? names[v] : "y" + std::to_string(v + 1);
  };
  std::string out;
  // Highest degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[m, c] = *it;
    Integer mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    std::string body;
    if (m.degree() == 0) {
      body = mag.str();
    } else {
      if (mag != 1) body = mag.str() + "*";
      if (m.degree() == 2 && m.first == m.second)
        body += name(m.first) + "^2";
      else if (m.degree() == 2)
        body += name(m.first) + "*" + name(m.second);
      else
        body += name(m.second);
    }
    out += body;
  }
  return out;
}

std::string IntPolynomial::to_string() const { return to_string({}); }

} // namespace neq
