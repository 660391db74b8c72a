#pragma once

#include "neq/presentation.hpp"
#include "neq/word.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace neq {

using CoordVector = boost::container::small_vector<std::int64_t, 6>;

/// Normal form a^A b^B c^C d^D of a group element. B and D are reduced into
/// {0..l_i-1} and {0..k_t-1}.
struct MalcevCoord {
  CoordVector A;
  CoordVector B;
  std::int64_t C = 0;
  CoordVector D;

  friend bool operator==(const MalcevCoord &, const MalcevCoord &) = default;
};

class InvalidCoordinates : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class UnassignedVariable : public std::runtime_error {
public:
  explicit UnassignedVariable(const std::string &name)
      : std::runtime_error("variable '" + name + "' has no assigned value"), name_(name) {}
  const std::string &name() const { return name_; }

private:
  std::string name_;
};

MalcevCoord identity(const MalcevPresentation &p);
bool is_identity(const MalcevCoord &g);

/// Throws InvalidCoordinates unless the shape matches p and B, D are reduced.
void check_coordinates(const MalcevCoord &g, const MalcevPresentation &p);

/// Coordinates of a single generator power.
MalcevCoord generator_power(GenKind kind, int index, std::int64_t exponent, const MalcevPresentation &p);

/// Product g * h.
MalcevCoord multiply(const MalcevCoord &g, const MalcevCoord &h, const MalcevPresentation &p);
MalcevCoord inverse(const MalcevCoord &g, const MalcevPresentation &p);
MalcevCoord power(const MalcevCoord &g, std::int64_t exponent, const MalcevPresentation &p);
/// [g, h] = g^-1 h^-1 g h.
MalcevCoord commutator(const MalcevCoord &g, const MalcevCoord &h, const MalcevPresentation &p);

using Assignment = std::map<std::string, MalcevCoord>;

MalcevCoord evaluate_word(const Word &w, const Assignment &assignment, const MalcevPresentation &p);
MalcevCoord evaluate_word(const Word &w, const MalcevPresentation &p);

/// The normal-form word a1^A1 ... b^B c^C d^D (empty word for the identity).
Word normal_form_word(const MalcevCoord &g, const MalcevPresentation &p);

/// "(A1,...,An | B... | C | D...)" or "(A1,A2,C)" when there is no torsion.
std::string format_coord(const MalcevCoord &g);

/// Convenience for torsion-free presentations: (A..., C).
MalcevCoord coord(std::initializer_list<std::int64_t> a, std::int64_t c);

} // namespace neq
