#pragma once

#include "dehn.hpp"
#include "diagram.hpp"
#include "diagram_io.hpp"
#include "errors.hpp"
#include "presentation.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "small_cancellation.hpp"
#include "torsion.hpp"
#include "words.hpp"

namespace vkd {
inline constexpr char const* kVersion = "0.1.0";
}
