#include "neq/search.hpp"

#include <algorithm>

namespace neq {

SearchBudgetExceeded::SearchBudgetExceeded(std::uint64_t budget)
    : std::runtime_error("bounded search exceeded its budget of " + std::to_string(budget) + " assignments") {}

namespace {

inline std::int64_t canonical_value(std::int64_t d) { return d == 0 ? 0 : (d % 2 ? (d + 1) / 2 : -d / 2); }

} // namespace

std::optional<Assignment> bounded_search(const EquationSystem &system, const MalcevPresentation &p,
                                         std::int64_t bound, std::uint64_t budget) {
  if (bound < 0) throw std::invalid_argument("search bound must be non-negative");
  std::vector<std::string> names = system.variables;
  for (const auto &eq : system.equations)
    for (const auto &v : collect_variables(eq))
      if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);

  std::vector<Word> words;
  for (const auto &eq : system.equations) words.push_back(normalized(eq));

  const int n = p.a_count();
  Assignment a;
  std::vector<MalcevCoord *> slots;
  for (const auto &name : names) slots.push_back(&(a[name] = identity(p)));

  // Free coordinates: per variable A1..An, C. Torsion digits: per variable B.., D...
  const int free_count = static_cast<int>(names.size()) * (n + 1);
  std::vector<std::int64_t *> free_slots;
  std::vector<std::pair<std::int64_t *, std::int64_t>> torsion_slots;
  for (auto *g : slots) {
    for (int i = 0; i < n; ++i) free_slots.push_back(&g->A[i]);
    free_slots.push_back(&g->C);
  }
  for (auto *g : slots) {
    for (int i = 0; i < p.b_count(); ++i) torsion_slots.push_back({&g->B[i], p.b_orders()[i]});
    for (int t = 0; t < p.d_count(); ++t) torsion_slots.push_back({&g->D[t], p.d_orders()[t]});
  }

  std::uint64_t visited = 0;
  auto satisfied = [&]() {
    for (const auto &w : words)
      if (!is_identity(evaluate_word(w, a, p))) return false;
    return true;
  };
  // Enumerates torsion digits for the current free tuple.
  auto try_torsion = [&]() {
    for (auto &[slot, order] : torsion_slots) *slot = 0;
    for (;;) {
      if (++visited > budget) throw SearchBudgetExceeded(budget);
      if (satisfied()) return true;
      std::size_t pos = torsion_slots.size();
      while (pos-- > 0) {
        auto &[slot, order] = torsion_slots[pos];
        if (++*slot < order) break;
        *slot = 0;
      }
      if (pos == static_cast<std::size_t>(-1)) return false;
    }
  };

  std::int64_t top = 0;
  auto visit = [&](auto &&self, int i, bool hit) -> bool {
    if (i == free_count) return try_torsion();
    const std::int64_t first = (i == free_count - 1 && !hit) ? std::max<std::int64_t>(top - 1, 0) : 0;
    for (std::int64_t d = first; d <= top; ++d) {
      *free_slots[i] = canonical_value(d);
      if (self(self, i + 1, hit || d >= top - 1)) return true;
    }
    return false;
  };
  for (std::int64_t r = 0; r <= bound; ++r) {
    top = 2 * r;
    if (visit(visit, 0, r == 0)) return a;
    if (free_count == 0) break;
  }
  return std::nullopt;
}

std::optional<Assignment> bounded_search(const Equation &eq, const MalcevPresentation &p, std::int64_t bound,
                                         std::uint64_t budget) {
  return bounded_search(EquationSystem{{eq}, {}}, p, bound, budget);
}

} // namespace neq
