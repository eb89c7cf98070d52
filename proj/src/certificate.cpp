#include "ntri/certificate.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace ntri {

namespace {

constexpr std::array<std::pair<CaseId, std::string_view>, 19> kNames{{
    {CaseId::BaseMop, "base_mop"},
    {CaseId::Reducible, "reducible"},
    {CaseId::C1, "case1"},
    {CaseId::C2, "case2"},
    {CaseId::C3, "case3"},
    {CaseId::C4, "case4"},
    {CaseId::C5, "case5"},
    {CaseId::C6, "case6"},
    {CaseId::C7, "case7"},
    {CaseId::C8, "case8"},
    {CaseId::C9, "case9"},
    {CaseId::C10, "case10"},
    {CaseId::C11, "case11"},
    {CaseId::C12, "case12"},
    {CaseId::Anchored, "anchored"},
    {CaseId::LiftPair, "lift_pair"},
    {CaseId::LiftAnchored, "lift_anchored"},
    {CaseId::ExceptionSearch, "exception_search"},
    {CaseId::OracleFallback, "oracle_fallback"},
}};

}  // namespace

std::string_view to_string(CaseId c) {
  for (const auto& [id, name] : kNames) {
    if (id == c) return name;
  }
  return "unknown";
}

CaseId case_from_string(std::string_view s) {
  for (const auto& [id, name] : kNames) {
    if (name == s) return id;
  }
  throw std::invalid_argument("unknown case id '" + std::string(s) + "'");
}

}  // namespace ntri
