#pragma once

#include "hdx/certifier.hpp"
#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/generators.hpp"
#include "hdx/rational.hpp"
#include "hdx/report.hpp"
#include "hdx/spectral.hpp"
#include "hdx/walk.hpp"

namespace hdx {

inline constexpr const char* kVersion = "0.1.0";

} // namespace hdx
