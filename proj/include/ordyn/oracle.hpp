#pragma once

#include <cstdint>
#include <optional>

#include "ordyn/dynsys.hpp"

namespace ordyn {

// Definitional evaluation of the limit-set and neighborhood predicates by
// explicit iteration. Orbits of sets are eventually periodic after n steps
// with period dividing the lcm of the cycle lengths, so every "for all large
// t" quantifier is decided on the window [H, 2H] with H = n + lcm.
constexpr std::uint64_t kOracleHorizonGuard = 1'000'000;

// nullopt when H exceeds the guard ("oracle skipped").
std::optional<std::uint64_t> oracle_horizon(const DynSystem& d);

// omega(U) = intersection over t of cl(union of f^s(U), s >= t)
std::optional<PointSet> omega_definitional(const DynSystem& d, PointSet u);
// alpha(U) = intersection over t of cl(union of f^-s(U), s >= t)
std::optional<PointSet> alpha_definitional(const DynSystem& d, PointSet u);
// Exists tau with f^t(cl U) inside int U for every t >= tau.
std::optional<bool> attracting_definitional(const DynSystem& d, PointSet u);
// Exists tau with f^-t(cl U) inside int U for every t >= tau.
std::optional<bool> repelling_definitional(const DynSystem& d, PointSet u);
// f(V) inside V and f^tau(cl V) inside int V for some tau in [1, H].
std::optional<bool> trapping_definitional(const DynSystem& d, PointSet v);

// Union of all invariant (f(S) = S) resp. forward invariant (f(S) inside S)
// subsets of U, by enumerating the subsets of U.
PointSet inv_by_subsets(const DynSystem& d, PointSet u);
PointSet inv_plus_by_subsets(const DynSystem& d, PointSet u);

}  // namespace ordyn
