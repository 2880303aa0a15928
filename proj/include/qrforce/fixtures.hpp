#pragma once

#include <json.hpp>

#include <string_view>

namespace qrf::fixtures {

namespace detail {
std::string_view raw(std::string_view name);
}

// Parsed copies of data/appendix.json, data/classes.json and
// data/exceptional.json, compiled into the library.
const nlohmann::json &appendix();
const nlohmann::json &classes();
const nlohmann::json &exceptional();

} // namespace qrf::fixtures
