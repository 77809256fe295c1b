#ifndef PBRACK_WORKSPACE_HPP
#define PBRACK_WORKSPACE_HPP

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pbrack/atoms.hpp"
#include "pbrack/poly.hpp"

namespace pbrack {

// Owns the phase space plus the interning tables for radical and exponential
// atoms. Interning is the only shared mutable state in the engine; the table
// is append-only and guarded by a mutex, so normal forms built on the same
// workspace may be shared and combined across threads.
class Workspace {
public:
  explicit Workspace(PhaseSpace space) : space_(std::move(space)) {}

  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const PhaseSpace& space() const { return space_; }

  // Coordinates, momenta, hbar and parameters by name; nullopt otherwise.
  std::optional<AtomCode> find_symbol(const std::string& name) const;
  std::string atom_name(AtomCode code) const;

  // Radicand must be a pure polynomial (no radical/exponential atoms); callers
  // canonicalize before interning. Atoms are deduplicated by radicand.
  AtomCode intern_radical(const Poly& radicand);
  // Argument may contain radical atoms but no exponential atoms, and must be
  // nonzero.
  AtomCode intern_exponential(const Poly& argument);

  Poly radicand(AtomCode code) const;
  Poly exp_argument(AtomCode code) const;

  std::size_t radical_count() const;
  std::size_t exponential_count() const;

private:
  PhaseSpace space_;

  mutable std::mutex mutex_;
  std::deque<Poly> radicands_;
  std::map<Poly, std::uint32_t, bool (*)(const Poly&, const Poly&)> radical_ids_{poly_less};
  std::deque<Poly> exp_args_;
  std::map<Poly, std::uint32_t, bool (*)(const Poly&, const Poly&)> exp_ids_{poly_less};
};

using WorkspacePtr = std::shared_ptr<Workspace>;

inline WorkspacePtr make_workspace(PhaseSpace space) {
  return std::make_shared<Workspace>(std::move(space));
}

}  // namespace pbrack

#endif
