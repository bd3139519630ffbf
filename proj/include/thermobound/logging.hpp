#pragma once

#include <memory>

#include <spdlog/spdlog.h>

namespace thermobound {

/// Library logger writing to stderr. The level comes from THERMOBOUND_LOG
/// (error, warn, info, debug); default warn.
std::shared_ptr<spdlog::logger> logger();

} // namespace thermobound
