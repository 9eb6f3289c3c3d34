#pragma once

#include <span>

namespace udc {

/// Gauss-Legendre rule on [-1, 1]. Rules are computed once per order and
/// cached for the life of the process.
struct GaussLegendreRule
{
    std::span<double const> nodes;
    std::span<double const> weights;
};

GaussLegendreRule gauss_legendre(int order);

}  // namespace udc
