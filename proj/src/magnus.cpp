#include "neq/magnus.hpp"

#include "neq/malcev.hpp"

#include <stdexcept>

namespace neq {

void FreeNilpotentSpec::validate() const {
  if (step < 2 || rank < 2) throw std::invalid_argument("free nilpotent spec needs step >= 2 and rank >= 2");
  // Dense storage grows like rank^step.
  std::size_t size = 1, layer = 1;
  for (int L = 1; L <= step; ++L) {
    layer *= static_cast<std::size_t>(rank);
    size += layer;
    if (size > 2'000'000) throw std::invalid_argument("free nilpotent spec too large for dense storage");
  }
}

TruncatedFreePoly::TruncatedFreePoly(FreeNilpotentSpec spec) : spec_(spec) {
  spec_.validate();
  offset_.assign(spec_.step + 2, 0);
  std::size_t layer = 1;
  for (int L = 0; L <= spec_.step; ++L) {
    offset_[L + 1] = offset_[L] + layer;
    layer *= static_cast<std::size_t>(spec_.rank);
  }
  coeffs_.assign(offset_.back(), 0);
  coeffs_[0] = 1;
}

TruncatedFreePoly TruncatedFreePoly::generator(FreeNilpotentSpec spec, int i) {
  if (i < 1 || i > spec.rank)
    throw std::invalid_argument("generator a" + std::to_string(i) + " outside rank " + std::to_string(spec.rank));
  TruncatedFreePoly g(spec);
  if (spec.step >= 1) g.set_coefficient({i - 1}, 1);
  return g;
}

std::size_t TruncatedFreePoly::index(const std::vector<int> &word) const {
  if (static_cast<int>(word.size()) > spec_.step) throw std::out_of_range("monomial longer than the degree cap");
  std::size_t local = 0;
  for (int letter : word) {
    if (letter < 0 || letter >= spec_.rank) throw std::out_of_range("monomial letter outside the rank");
    local = local * spec_.rank + letter;
  }
  return offset_[word.size()] + local;
}

const Integer &TruncatedFreePoly::coefficient(const std::vector<int> &word) const { return coeffs_[index(word)]; }

void TruncatedFreePoly::set_coefficient(const std::vector<int> &word, Integer value) {
  coeffs_[index(word)] = std::move(value);
}

bool TruncatedFreePoly::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

TruncatedFreePoly operator*(const TruncatedFreePoly &u, const TruncatedFreePoly &v) {
  if (!(u.spec_ == v.spec_)) throw std::invalid_argument("multiplying elements of different free nilpotent groups");
  TruncatedFreePoly out(u.spec_);
  out.coeffs_[0] = 0;
  const int p = u.spec_.step;
  const std::size_t q = u.spec_.rank;
  std::vector<std::size_t> width(p + 1, 1);
  for (int L = 1; L <= p; ++L) width[L] = width[L - 1] * q;
  for (int L1 = 0; L1 <= p; ++L1)
    for (std::size_t i1 = 0; i1 < width[L1]; ++i1) {
      const Integer &a = u.coeffs_[u.offset_[L1] + i1];
      if (a == 0) continue;
      for (int L2 = 0; L1 + L2 <= p; ++L2) {
        const std::size_t base = out.offset_[L1 + L2] + i1 * width[L2];
        const std::size_t voff = v.offset_[L2];
        for (std::size_t i2 = 0; i2 < width[L2]; ++i2) {
          const Integer &b = v.coeffs_[voff + i2];
          if (b != 0) out.coeffs_[base + i2] += a * b;
        }
      }
    }
  return out;
}

TruncatedFreePoly TruncatedFreePoly::inverse() const {
  if (coeffs_[0] != 1) throw std::invalid_argument("only elements with constant term 1 are inverted");
  // (1 + u)^-1 = 1 - u + u^2 - ... , evaluated as 1 - u(1 - u(1 - ...)).
  TruncatedFreePoly minus_u = *this;
  minus_u.coeffs_[0] = 0;
  for (auto &c : minus_u.coeffs_) c = -c;
  TruncatedFreePoly acc(spec_);
  for (int k = 0; k < spec_.step; ++k) {
    acc = minus_u * acc;
    acc.coeffs_[0] += 1;
  }
  return acc;
}

TruncatedFreePoly TruncatedFreePoly::power(std::int64_t exponent) const {
  TruncatedFreePoly base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(exponent)
                                 : static_cast<std::uint64_t>(exponent);
  TruncatedFreePoly acc(spec_);
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

std::string TruncatedFreePoly::to_string() const {
  std::string out;
  const int q = spec_.rank;
  for (int L = 0; L <= spec_.step; ++L) {
    for (std::size_t i = offset_[L]; i < offset_[L + 1]; ++i) {
      const Integer &c = coeffs_[i];
      if (c == 0) continue;
      std::vector<int> letters(L);
      std::size_t local = i - offset_[L];
      for (int k = L - 1; k >= 0; --k) {
        letters[k] = static_cast<int>(local % q);
        local /= q;
      }
      Integer mag = abs(c);
      out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      std::string mono;
      for (int k = 0; k < L; ++k) mono += (k ? "*X" : "X") + std::to_string(letters[k] + 1);
      if (L == 0)
        out += mag.str();
      else
        out += (mag == 1 ? "" : mag.str() + "*") + mono;
    }
  }
  return out.empty() ? "0" : out;
}

TruncatedFreePoly commutator(const TruncatedFreePoly &x, const TruncatedFreePoly &y) {
  return x.inverse() * y.inverse() * x * y;
}

TruncatedFreePoly magnus_eval_word(const Word &w, const MagnusAssignment &assignment, FreeNilpotentSpec spec) {
  TruncatedFreePoly acc(spec);
  for (const auto &f : w.factors) {
    TruncatedFreePoly term = std::visit(
        [&](const auto &node) -> TruncatedFreePoly {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, GeneratorFactor>) {
            if (node.kind == GenKind::A) return TruncatedFreePoly::generator(spec, node.index).power(node.exponent);
            if (node.kind == GenKind::C) {
              if (spec.rank < 2) throw std::invalid_argument("'c' needs rank >= 2");
              return commutator(TruncatedFreePoly::generator(spec, 1), TruncatedFreePoly::generator(spec, 2))
                  .power(node.exponent);
            }
            throw std::invalid_argument("generator " + generator_name(node.kind, node.index) +
                                        " has no meaning in a free nilpotent group");
          } else if constexpr (std::is_same_v<T, VariableFactor>) {
            auto it = assignment.find(node.name);
            if (it == assignment.end()) throw UnassignedVariable(node.name);
            if (!(it->second.spec() == spec)) throw std::invalid_argument("variable value lives in another group");
            return it->second.power(node.exponent);
          } else if constexpr (std::is_same_v<T, CommutatorFactor>) {
            return commutator(magnus_eval_word(node.left, assignment, spec),
                              magnus_eval_word(node.right, assignment, spec))
                .power(node.exponent);
          } else {
            return magnus_eval_word(node.inner, assignment, spec).power(node.exponent);
          }
        },
        f.node);
    acc = acc * term;
  }
  return acc;
}

TruncatedFreePoly magnus_eval_word(const Word &w, FreeNilpotentSpec spec) { return magnus_eval_word(w, {}, spec); }

bool magnus_is_identity(const Word &w, const MagnusAssignment &assignment, FreeNilpotentSpec spec) {
  return magnus_eval_word(w, assignment, spec).is_one();
}

bool magnus_holds(const Equation &eq, const MagnusAssignment &assignment, FreeNilpotentSpec spec) {
  return magnus_eval_word(eq.lhs, assignment, spec) == magnus_eval_word(eq.rhs, assignment, spec);
}

MagnusAssignment magnus_assignment(const std::map<std::string, Word> &values, FreeNilpotentSpec spec) {
  MagnusAssignment out;
  for (const auto &[name, w] : values) out.emplace(name, magnus_eval_word(w, spec));
  return out;
}

} // namespace neq
