#include "qrforce/fixtures.hpp"

namespace qrf::fixtures {

const nlohmann::json &appendix()
{
  static const nlohmann::json j = nlohmann::json::parse(detail::raw("appendix"));
  return j;
}

const nlohmann::json &classes()
{
  static const nlohmann::json j = nlohmann::json::parse(detail::raw("classes"));
  return j;
}

const nlohmann::json &exceptional()
{
  static const nlohmann::json j = nlohmann::json::parse(detail::raw("exceptional"));
  return j;
}

} // namespace qrf::fixtures
