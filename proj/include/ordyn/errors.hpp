#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input; `where` is a JSON pointer or "line:col" locator.
struct SchemaError : Error {
  SchemaError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where(std::move(where)) {}
  std::string where;
};

// A relation that fails reflexivity, transitivity or antisymmetry.
struct InvalidRelation : Error {
  InvalidRelation(const std::string& what, std::vector<std::size_t> witness)
      : Error(what), witness(std::move(witness)) {}
  std::vector<std::size_t> witness;
};

struct SpaceTooLarge : Error {
  using Error::Error;
};

struct LatticeError : Error {
  enum class Kind { NotALattice, NotDistributive, InvalidTables };
  LatticeError(Kind kind, const std::string& what, std::vector<std::size_t> witness)
      : Error(what), kind(kind), witness(std::move(witness)) {}
  Kind kind;
  std::vector<std::size_t> witness;
};

struct HypothesisViolated : Error {
  using Error::Error;
};

struct NoCompleteOrbit : Error {
  using Error::Error;
};

struct NotInjectiveHom : Error {
  using Error::Error;
};

struct IncoherentChain : Error {
  using Error::Error;
};

struct InternalInconsistency : Error {
  using Error::Error;
};

}  // namespace ordyn
