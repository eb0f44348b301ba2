#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schmidtkit/bipartite.hpp"
#include "schmidtkit/multipartite.hpp"
#include "schmidtkit/state.hpp"

namespace schmidtkit {

inline constexpr std::string_view kReportSchemaVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,             // success, Exists, IsProduct
  kExitNegative = 1,       // NotExists, NotProduct
  kExitMalformedInput = 2,
  kExitBadFlags = 3,
  kExitIndeterminate = 4,
};

using Report = nlohmann::ordered_json;

/// Header shared by every report. `digest` is the SHA-256 of the file bytes.
struct ReportContext {
  std::string command;
  std::string digest;
  std::vector<std::size_t> dims;
};

/// "0,2|1" -> {{0, 2}, {1}}. Throws InvalidArgument on bad syntax; the
/// parties themselves are checked by Bipartition::validate.
Bipartition parse_split(std::string_view spec);
std::string format_split(const Bipartition& split);

Report decompose_report(const ReportContext& ctx, const SchmidtDecomposition& d, double tol, double deg_tol);
Report schmidt_test_report(const ReportContext& ctx, const GeneralizedSchmidtResult& r, double tol);
Report product_test_report(const ReportContext& ctx, const ProductTestResult& r, const CountingRecord& counts,
                           double tol);

int exit_code_for(SchmidtVerdict v);
int exit_code_for(ProductVerdict v);

/// Compact dump plus newline. Throws std::logic_error if any number is not
/// finite, which would otherwise be written as null.
std::string serialize(const Report& report);

}  // namespace schmidtkit
