#pragma once

// Matrix CSV: one matrix row per line, fields separated by commas,
// surrounding blanks ignored. Values are written in the shortest form that
// parses back to the same double.
//
// Missing values, with MissingPolicy::kEmptyOrNaN: an empty field or the
// token NaN. A sidecar mask file (same shape, 0/1) overrides that: it alone
// decides what is observed, and values under a 0 are zeroed on load.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pmu/dense.hpp"

namespace pmu {

enum class MissingPolicy { kNone, kEmptyOrNaN };

DenseMatrix parse_dense_csv(std::string_view text, std::string_view source = "<string>");
MaskMatrix parse_mask_csv(std::string_view text, std::string_view source = "<string>");
ObservedMatrix parse_observed_csv(std::string_view text, MissingPolicy policy,
                                  const MaskMatrix* sidecar = nullptr,
                                  std::string_view source = "<string>");

DenseMatrix read_dense_csv(const std::filesystem::path& path);
MaskMatrix read_mask_csv(const std::filesystem::path& path);
ObservedMatrix read_observed_csv(const std::filesystem::path& path, MissingPolicy policy,
                                 const std::optional<std::filesystem::path>& mask_path = {});

std::string format_number(double v);
std::string format_csv(const DenseMatrix& m);
std::string format_csv(const MaskMatrix& m);

void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path);
void write_mask_csv(const MaskMatrix& m, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pmu
