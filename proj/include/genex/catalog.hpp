#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "genex/method.hpp"

namespace genex {

/// Built-in methods:
///   basic        the basic map alone (order 2)
///   psi4-extrap  psi6-extrap  psi8-extrap   harmonic extrapolation
///   psi22        k=2 two-stage order 4
///   psi32s       k=3 two-stage order 4, pseudo-symplectic order 7
///   psi6-k5-ps9  k=5 palindromic three-stage order 6, pseudo-symplectic order 9
///   psi8-k4      k=4 symmetric five-stage order 8
const std::vector<MethodSpec>& builtin_catalog();

std::optional<MethodSpec> find_builtin(std::string_view name);

}  // namespace genex
