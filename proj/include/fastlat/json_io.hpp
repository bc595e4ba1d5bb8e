#pragma once

#include <string>

#include <json.hpp>

#include "fastlat/construct.hpp"
#include "fastlat/mograph.hpp"

namespace fastlat {

// JSON encodings. Matrices are row-major entry lists of [re, im] pairs;
// partition indices are 1-based on the wire. Doubles are emitted in
// shortest round-trip form, so save/load is lossless at the bit level.

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json basis_to_json(const CodeBasis& basis);
CodeBasis basis_from_json(const nlohmann::json& j);

nlohmann::json partition_to_json(const GroupPartition& partition);
GroupPartition partition_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ComplexityReport& report);
nlohmann::json bound_report_to_json(const BoundReport& report);

/// Reads and validates a code basis; throws std::invalid_argument naming
/// the offending matrix index on invariant violations.
CodeBasis load_code(const std::string& path);
void save_code(const CodeBasis& basis, const std::string& path);

GroupPartition load_partition(const std::string& path, int expected_total);
void save_partition(const GroupPartition& partition, const std::string& path);

}  // namespace fastlat
