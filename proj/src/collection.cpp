#include "neq/collection.hpp"

#include "neq/integer.hpp"

namespace neq {

std::vector<Letter> letters_of(const Word &w) {
  std::vector<Letter> out;
  for (const auto &f : w.factors) {
    const auto *g = std::get_if<GeneratorFactor>(&f.node);
    if (!g) throw std::invalid_argument("collection input must be a flat word in generator letters");
    const int sign = g->exponent < 0 ? -1 : 1;
    const std::uint64_t count = g->exponent < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(g->exponent)
                                                : static_cast<std::uint64_t>(g->exponent);
    if (count > 1'000'000) throw std::invalid_argument("exponent too large to expand into letters");
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(Letter{g->kind, g->index, sign});
  }
  return out;
}

Word word_of(const std::vector<Letter> &letters) {
  Word w;
  for (const auto &l : letters) w.factors.push_back(gen(l.kind, l.index, l.sign));
  return w;
}

namespace {

struct XLetter {
  int x;    // x-generator position
  int sign; // +1 / -1
};

struct Central {
  std::int64_t c = 0;
  std::vector<std::int64_t> d;

  void add(const CentralElement &z, std::int64_t times) {
    c = checked::add(c, checked::mul(z.c, times));
    for (std::size_t t = 0; t < d.size(); ++t) d[t] = checked::add(d[t], checked::mul(z.d[t], times));
  }
};

} // namespace

MalcevCoord collection_oracle_nf(const std::vector<Letter> &letters, const MalcevPresentation &p,
                                 std::uint64_t step_budget) {
  const int n = p.a_count();
  Central central;
  central.d.assign(p.d_count(), 0);

  std::vector<XLetter> word;
  for (const auto &l : letters) {
    switch (l.kind) {
    case GenKind::C:
      central.c = checked::add(central.c, l.sign);
      break;
    case GenKind::D:
      if (l.index < 1 || l.index > p.d_count()) throw std::invalid_argument("unknown d generator");
      central.d[l.index - 1] += l.sign;
      break;
    case GenKind::A:
      if (l.index < 1 || l.index > n) throw std::invalid_argument("unknown a generator");
      word.push_back({l.index - 1, l.sign});
      break;
    case GenKind::B: {
      if (l.index < 1 || l.index > p.b_count()) throw std::invalid_argument("unknown b generator");
      const int i = l.index - 1;
      if (l.sign > 0) {
        word.push_back({n + i, 1});
      } else {
        for (std::int64_t k = 0; k + 1 < p.b_orders()[i]; ++k) word.push_back({n + i, 1});
        central.add(p.power(i), -1);
      }
      break;
    }
    }
  }

  std::uint64_t steps = 0;
  auto tick = [&] {
    if (++steps > step_budget) throw RewriteBudgetExceeded("collection exceeded its rewriting step budget");
  };

  // Rewrite until no rule applies: leftmost applicable swap, cancellation,
  // or torsion reduction.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      XLetter &left = word[i];
      XLetter &right = word[i + 1];
      if (left.x == right.x && left.sign == -right.sign) {
        tick();
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(i), word.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
      if (left.x > right.x) {
        tick();
        // x_v^e x_u^f = x_u^f x_v^e [x_v^e, x_u^f],  [x_v^e, x_u^f] = [x_u, x_v]^(-e f)
        central.add(p.commutator(right.x, left.x), -static_cast<std::int64_t>(left.sign) * right.sign);
        std::swap(left, right);
        changed = true;
      }
    }
    if (changed) continue;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i].x < n) continue;
      const int b = word[i].x - n;
      const auto l = static_cast<std::size_t>(p.b_orders()[b]);
      std::size_t run = 0;
      while (i + run < word.size() && word[i + run].x == word[i].x) ++run;
      if (run >= l) {
        tick();
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(i), word.begin() + static_cast<std::ptrdiff_t>(i + l));
        central.add(p.power(b), 1);
        changed = true;
        break;
      }
      i += run - 1;
    }
  }

  MalcevCoord out = identity(p);
  for (const auto &l : word) {
    if (l.x < n)
      out.A[l.x] = checked::add(out.A[l.x], l.sign);
    else
      out.B[l.x - n] += 1;
  }
  out.C = central.c;
  for (int t = 0; t < p.d_count(); ++t) out.D[t] = mod_floor(central.d[t], p.d_orders()[t]);
  return out;
}

} // namespace neq
