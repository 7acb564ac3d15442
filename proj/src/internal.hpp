#pragma once

#include "dunkl/special_functions.hpp"

namespace dunkl::detail {

complex hille_hardy_closed(double x, double y, complex z, complex one_minus_z, double mu,
                           const SeriesControl& control);

// 1 - exp(u) without cancellation for small |u|.
complex one_minus_exp(complex u);

}  // namespace dunkl::detail
