#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tra {

/// Number of eigenvalues below x of the symmetric tridiagonal matrix with diagonal d
/// and off-diagonal e (e.size() == d.size() - 1).
std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x);

/// The count smallest eigenvalues, ascending, by bisection on Sturm counts.
std::vector<double> lowest_eigenvalues(std::span<const double> d, std::span<const double> e,
                                       std::size_t count);

}  // namespace tra
