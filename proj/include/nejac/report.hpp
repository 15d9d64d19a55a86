#ifndef NEJAC_REPORT_HPP
#define NEJAC_REPORT_HPP

#include "nejac/division.hpp"
#include "nejac/growth.hpp"
#include "nejac/noether.hpp"
#include "nejac/parse.hpp"
#include "nejac/residues.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nejac {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportContext {
  std::vector<std::string> names;  // display names of Z1..Zn
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int jacobi_extra = 2;
  int division_samples = 5;
};

// Rationals as "p/q" strings, complex numbers as [re, im].
json to_json(const Rational& q);
json to_json(const Complex& c);
std::string display(const Poly& p, const ReportContext& ctx);

json to_json(const ZeroSet& zs);
json infinity_json(const PolyMap& f, const std::vector<InfinityPoint>& pts, std::size_t mu);
json to_json(const NoetherReport& r);
json to_json(const ResidueReport& r, const ReportContext& ctx);
json to_json(const JacobiReport& r, const ReportContext& ctx);
json to_json(const DivisionCertificate& c, const ReportContext& ctx);
json to_json(const GrowthReport& r);
json to_json(const ProperVerdict& v);

struct FullReport {
  json body;
  bool invariants_hold = true;
};

// Every module on one system, with the cross-module invariants checked.
FullReport report_all(const PolyMap& f, const ReportContext& ctx);

// Tool version, input echo, seed and the result.
json envelope(const std::string& command, const SystemFile& sys, const ReportContext& ctx, json result);

// Indented key: value rendering of a report.
std::string render_text(const json& j);

}  // namespace nejac

#endif
