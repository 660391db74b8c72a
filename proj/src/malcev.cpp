#include "neq/malcev.hpp"

#include "neq/integer.hpp"

#include <sstream>

namespace neq {

MalcevCoord identity(const MalcevPresentation &p) {
  MalcevCoord g;
  g.A.assign(p.a_count(), 0);
  g.B.assign(p.b_count(), 0);
  g.D.assign(p.d_count(), 0);
  return g;
}

bool is_identity(const MalcevCoord &g) {
  auto zero = [](const CoordVector &v) {
    for (auto x : v)
      if (x != 0) return false;
    return true;
  };
  return g.C == 0 && zero(g.A) && zero(g.B) && zero(g.D);
}

void check_coordinates(const MalcevCoord &g, const MalcevPresentation &p) {
  if (g.A.size() != static_cast<std::size_t>(p.a_count()) || g.B.size() != static_cast<std::size_t>(p.b_count()) ||
      g.D.size() != static_cast<std::size_t>(p.d_count()))
    throw InvalidCoordinates("coordinate vector has the wrong shape for this presentation");
  for (int i = 0; i < p.b_count(); ++i)
    if (g.B[i] < 0 || g.B[i] >= p.b_orders()[i])
      throw InvalidCoordinates("b" + std::to_string(i + 1) + " coordinate " + std::to_string(g.B[i]) +
                               " outside 0.." + std::to_string(p.b_orders()[i] - 1));
  for (int t = 0; t < p.d_count(); ++t)
    if (g.D[t] < 0 || g.D[t] >= p.d_orders()[t])
      throw InvalidCoordinates("d" + std::to_string(t + 1) + " coordinate " + std::to_string(g.D[t]) +
                               " outside 0.." + std::to_string(p.d_orders()[t] - 1));
}

MalcevCoord generator_power(GenKind kind, int index, std::int64_t exponent, const MalcevPresentation &p) {
  MalcevCoord g = identity(p);
  switch (kind) {
  case GenKind::A:
    g.A[index - 1] = exponent;
    break;
  case GenKind::B: {
    const int i = index - 1;
    const std::int64_t l = p.b_orders()[i];
    const std::int64_t rem = mod_floor(exponent, l);
    const std::int64_t wraps = (exponent - rem) / l;
    g.B[i] = rem;
    const CentralElement &z = p.power(i);
    g.C = checked::mul(wraps, z.c);
    for (int t = 0; t < p.d_count(); ++t)
      g.D[t] = mod_floor(checked::mul(mod_floor(wraps, p.d_orders()[t]), z.d[t]), p.d_orders()[t]);
    break;
  }
  case GenKind::C:
    g.C = exponent;
    break;
  case GenKind::D:
    g.D[index - 1] = mod_floor(exponent, p.d_orders()[index - 1]);
    break;
  }
  return g;
}

MalcevCoord multiply(const MalcevCoord &g, const MalcevCoord &h, const MalcevPresentation &p) {
  check_coordinates(g, p);
  check_coordinates(h, p);
  const int n = p.a_count();
  const int r = p.b_count();
  const int s = p.d_count();
  MalcevCoord out;
  out.A.resize(n);
  out.B.resize(r);
  out.D.resize(s);
  for (int i = 0; i < n; ++i) out.A[i] = checked::add(g.A[i], h.A[i]);
  std::int64_t C = checked::add(g.C, h.C);
  for (int t = 0; t < s; ++t) out.D[t] = g.D[t] + h.D[t];

  // Moving x_u^{h_u} left past x_v^{g_v} (u < v) emits [x_u, x_v]^{-h_u g_v}.
  auto x_of = [n](const MalcevCoord &e, int u) { return u < n ? e.A[u] : e.B[u - n]; };
  const int x = p.x_count();
  for (int v = 1; v < x; ++v) {
    const std::int64_t gv = x_of(g, v);
    if (gv == 0) continue;
    for (int u = 0; u < v; ++u) {
      const std::int64_t hu = x_of(h, u);
      if (hu == 0) continue;
      const CentralElement &z = p.commutator(u, v);
      const std::int64_t prod = checked::mul(hu, gv);
      if (z.c != 0) C = checked::sub(C, checked::mul(z.c, prod));
      for (int t = 0; t < s; ++t)
        if (z.d[t] != 0) {
          const std::int64_t k = p.d_orders()[t];
          out.D[t] = mod_floor(out.D[t] - mod_floor(checked::mul(z.d[t], mod_floor(prod, k)), k), k);
        }
    }
  }

  // Torsion wrap-around: b_i^{l_i} is the central element power(i).
  for (int i = 0; i < r; ++i) {
    std::int64_t sum = g.B[i] + h.B[i];
    const std::int64_t l = p.b_orders()[i];
    if (sum >= l) {
      sum -= l;
      const CentralElement &z = p.power(i);
      C = checked::add(C, z.c);
      for (int t = 0; t < s; ++t) out.D[t] += z.d[t];
    }
    out.B[i] = sum;
  }
  for (int t = 0; t < s; ++t) out.D[t] = mod_floor(out.D[t], p.d_orders()[t]);
  out.C = C;
  return out;
}

MalcevCoord inverse(const MalcevCoord &g, const MalcevPresentation &p) {
  // g * (-A, -B mod l, 0, 0) is central; cancel it.
  MalcevCoord h = identity(p);
  for (int i = 0; i < p.a_count(); ++i) h.A[i] = checked::neg(g.A[i]);
  for (int i = 0; i < p.b_count(); ++i) h.B[i] = mod_floor(-g.B[i], p.b_orders()[i]);
  MalcevCoord central = multiply(g, h, p);
  h.C = checked::neg(central.C);
  for (int t = 0; t < p.d_count(); ++t) h.D[t] = mod_floor(-central.D[t], p.d_orders()[t]);
  return h;
}

MalcevCoord power(const MalcevCoord &g, std::int64_t exponent, const MalcevPresentation &p) {
  if (exponent == 1) return g;
  MalcevCoord base = exponent < 0 ? inverse(g, p) : g;
  // |INT64_MIN| handled through unsigned arithmetic.
  std::uint64_t e = exponent < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(exponent)
                                 : static_cast<std::uint64_t>(exponent);
  MalcevCoord acc = identity(p);
  while (e > 0) {
    if (e & 1u) acc = multiply(acc, base, p);
    e >>= 1;
    if (e > 0) base = multiply(base, base, p);
  }
  return acc;
}

MalcevCoord commutator(const MalcevCoord &g, const MalcevCoord &h, const MalcevPresentation &p) {
  return multiply(multiply(inverse(g, p), inverse(h, p), p), multiply(g, h, p), p);
}

namespace {

MalcevCoord eval(const Word &w, const Assignment *assignment, const MalcevPresentation &p) {
  MalcevCoord acc = identity(p);
  for (const auto &f : w.factors) {
    MalcevCoord term = std::visit(
        [&](const auto &node) -> MalcevCoord {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, GeneratorFactor>) {
            return generator_power(node.kind, node.index, node.exponent, p);
          } else if constexpr (std::is_same_v<T, VariableFactor>) {
            if (!assignment) throw UnassignedVariable(node.name);
            auto it = assignment->find(node.name);
            if (it == assignment->end()) throw UnassignedVariable(node.name);
            return power(it->second, node.exponent, p);
          } else if constexpr (std::is_same_v<T, CommutatorFactor>) {
            return power(commutator(eval(node.left, assignment, p), eval(node.right, assignment, p), p),
                         node.exponent, p);
          } else {
            return power(eval(node.inner, assignment, p), node.exponent, p);
          }
        },
        f.node);
    acc = multiply(acc, term, p);
  }
  return acc;
}

} // namespace

MalcevCoord evaluate_word(const Word &w, const Assignment &assignment, const MalcevPresentation &p) {
  for (const auto &[name, value] : assignment) check_coordinates(value, p);
  return eval(w, &assignment, p);
}

MalcevCoord evaluate_word(const Word &w, const MalcevPresentation &p) { return eval(w, nullptr, p); }

Word normal_form_word(const MalcevCoord &g, const MalcevPresentation &p) {
  Word w;
  for (int i = 0; i < p.a_count(); ++i)
    if (g.A[i] != 0) w.factors.push_back(gen(GenKind::A, i + 1, g.A[i]));
  for (int i = 0; i < p.b_count(); ++i)
    if (g.B[i] != 0) w.factors.push_back(gen(GenKind::B, i + 1, g.B[i]));
  if (g.C != 0) w.factors.push_back(gen(GenKind::C, 1, g.C));
  for (int t = 0; t < p.d_count(); ++t)
    if (g.D[t] != 0) w.factors.push_back(gen(GenKind::D, t + 1, g.D[t]));
  return w;
}

std::string format_coord(const MalcevCoord &g) {
  std::ostringstream os;
  auto list = [&](const CoordVector &v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  };
  os << "(";
  if (g.B.empty() && g.D.empty()) {
    list(g.A);
    os << (g.A.empty() ? "" : ",") << g.C;
  } else {
    list(g.A);
    os << " | ";
    list(g.B);
    os << " | " << g.C << " | ";
    list(g.D);
  }
  os << ")";
  return os.str();
}

MalcevCoord coord(std::initializer_list<std::int64_t> a, std::int64_t c) {
  MalcevCoord g;
  g.A.assign(a.begin(), a.end());
  g.C = c;
  return g;
}

} // namespace neq
