#ifndef PBRACK_ATOMS_HPP
#define PBRACK_ATOMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pbrack/errors.hpp"

namespace pbrack {

// Atoms are the indeterminates normal forms are built over. Codes order as
// (kind, index), which realizes the declared atom ordering: coordinates by
// index, momenta by index, hbar, parameters alphabetically, then radicals and
// exponentials by interning order.
enum class AtomKind : std::uint32_t {
  Coordinate = 0,
  Momentum = 1,
  Hbar = 2,
  Parameter = 3,
  Radical = 4,
  Exponential = 5,
};

using AtomCode = std::uint32_t;

constexpr std::uint32_t kAtomIndexBits = 26;

constexpr AtomCode atom_code(AtomKind kind, std::uint32_t index) {
  return (static_cast<std::uint32_t>(kind) << kAtomIndexBits) | index;
}
constexpr AtomKind atom_kind(AtomCode code) {
  return static_cast<AtomKind>(code >> kAtomIndexBits);
}
constexpr std::uint32_t atom_index(AtomCode code) {
  return code & ((1u << kAtomIndexBits) - 1);
}

constexpr AtomCode kHbarAtom = atom_code(AtomKind::Hbar, 0);

// Declares dimension n, the names of the canonical coordinates and momenta,
// and any extra scalar parameters. Immutable once constructed.
class PhaseSpace {
public:
  // Default names q1..qn / p1..pn.
  explicit PhaseSpace(std::size_t dimension, std::vector<std::string> parameters = {});
  PhaseSpace(std::vector<std::string> coord_names, std::vector<std::string> momentum_names,
             std::vector<std::string> parameters = {});

  std::size_t dimension() const { return coords_.size(); }
  const std::vector<std::string>& coord_names() const { return coords_; }
  const std::vector<std::string>& momentum_names() const { return momenta_; }
  // Sorted alphabetically; the sort position is the parameter's atom index.
  const std::vector<std::string>& parameters() const { return params_; }

private:
  void validate() const;

  std::vector<std::string> coords_, momenta_, params_;
};

bool is_identifier(const std::string& s);
bool is_reserved_name(const std::string& s);

}  // namespace pbrack

#endif
