#include "thermobound/logging.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>

namespace thermobound {

namespace {

spdlog::level::level_enum level_from_env() {
    const char *raw = std::getenv("THERMOBOUND_LOG");
    if(raw == nullptr) return spdlog::level::warn;
    const std::string_view v(raw);
    if(v == "error") return spdlog::level::err;
    if(v == "warn") return spdlog::level::warn;
    if(v == "info") return spdlog::level::info;
    if(v == "debug") return spdlog::level::debug;
    return spdlog::level::warn;
}

} // namespace

std::shared_ptr<spdlog::logger> logger() {
    static const std::shared_ptr<spdlog::logger> instance = [] {
        auto log = std::make_shared<spdlog::logger>("thermobound", std::make_shared<spdlog::sinks::stderr_sink_mt>());
        log->set_level(level_from_env());
        log->set_pattern("[%l] %v");
        return log;
    }();
    return instance;
}

} // namespace thermobound
