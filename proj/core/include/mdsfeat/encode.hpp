#pragma once

#include "mdsfeat/embedding.hpp"
#include "mdsfeat/least_squares.hpp"

#include <span>
#include <vector>

namespace mdsfeat {

/// Places a new item into a fitted embedding by minimizing
/// sum_i (||x - x_i|| - dists[i])^2, warm-started at the code of the nearest
/// training item. The returned code never has a higher objective than that
/// initial guess.
std::vector<double> encode_new(const Embedding& train, std::span<const double> dists,
                               const LmOptions& lm = {});

/// The plain encoding objective at a candidate code.
double encode_objective(const Embedding& train, std::span<const double> dists,
                        std::span<const double> code);

} // namespace mdsfeat
