#pragma once

#include <string>

namespace isoprof {

/// Fixed 12-significant-digit rendering used for all CSV/JSON numeric output
/// so identical runs are byte-identical.
std::string format_g12(double x);

}  // namespace isoprof
