#include "pmu/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "pmu/error.hpp"

namespace pmu {
namespace {

struct Cell {
  std::string_view text;
  bool blank() const { return text.empty(); }
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(std::string_view source, std::size_t line, std::size_t field) {
  return std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(field);
}

// Splits into rows of trimmed cells and checks the table is rectangular.
std::vector<std::vector<Cell>> split_table(std::string_view text, std::string_view source) {
  std::vector<std::vector<Cell>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    std::vector<Cell> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back({trim(line.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start))});
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  // A final line holding only whitespace is the trailing newline, not a row.
  while (!rows.empty() && rows.back().size() == 1 && rows.back()[0].blank()) rows.pop_back();
  if (rows.empty()) throw FormatError(FormatIssue::kRaggedRows, std::string(source) + ": no rows");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != width)
      throw FormatError(FormatIssue::kRaggedRows,
                        std::string(source) + ":" + std::to_string(r + 1) + ": row has " +
                            std::to_string(rows[r].size()) + " fields, expected " +
                            std::to_string(width));
  return rows;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string display(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

ObservedMatrix parse_observed_csv(std::string_view text, MissingPolicy policy,
                                  const MaskMatrix* sidecar, std::string_view source) {
  const auto table = split_table(text, source);
  const auto nrows = static_cast<Index>(table.size());
  const auto ncols = static_cast<Index>(table.front().size());
  if (sidecar && (sidecar->rows() != nrows || sidecar->cols() != ncols))
    throw FormatError(FormatIssue::kMaskShapeMismatch,
                      std::string(source) + ": values are " + shape_string(nrows, ncols) +
                          " but the mask is " + shape_string(sidecar->rows(), sidecar->cols()));

  DenseMatrix values(nrows, ncols);
  MaskMatrix mask(nrows, ncols, 1);
  for (Index r = 0; r < nrows; ++r) {
    for (Index c = 0; c < ncols; ++c) {
      const auto& cell = table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      const bool missing_token = cell.blank() || cell.text == "NaN";
      if (sidecar && !sidecar->observed(r, c)) {
        mask.set(r, c, false);
        continue;  // value ignored, zeroed below
      }
      if (missing_token) {
        if (sidecar)
          throw FormatError(FormatIssue::kMissingValue,
                            where(source, r + 1, c + 1) +
                                ": mask marks the entry observed but the value is missing");
        if (policy != MissingPolicy::kEmptyOrNaN) {
          throw FormatError(FormatIssue::kMissingValue,
                            where(source, r + 1, c + 1) +
                                ": missing value (enable the empty-or-NaN missing policy)");
        }
        mask.set(r, c, false);
        continue;
      }
      const auto v = parse_double(cell.text);
      if (!v)
        throw FormatError(FormatIssue::kNonNumeric,
                          where(source, r + 1, c + 1) + ": not a finite number " +
                              display(cell.text));
      values(r, c) = *v;
    }
  }
  return ObservedMatrix(std::move(values), std::move(mask));
}

DenseMatrix parse_dense_csv(std::string_view text, std::string_view source) {
  return parse_observed_csv(text, MissingPolicy::kNone, nullptr, source).values();
}

MaskMatrix parse_mask_csv(std::string_view text, std::string_view source) {
  const auto table = split_table(text, source);
  const auto nrows = static_cast<Index>(table.size());
  const auto ncols = static_cast<Index>(table.front().size());
  MaskMatrix mask(nrows, ncols, 1);
  for (Index r = 0; r < nrows; ++r)
    for (Index c = 0; c < ncols; ++c) {
      const auto t = table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].text;
      if (t == "1")
        mask.set(r, c, true);
      else if (t == "0")
        mask.set(r, c, false);
      else
        throw FormatError(FormatIssue::kMaskValue,
                          where(source, r + 1, c + 1) + ": mask entries must be 0 or 1, got " +
                              display(t));
    }
  return mask;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return std::move(ss).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

DenseMatrix read_dense_csv(const std::filesystem::path& path) {
  return parse_dense_csv(read_text_file(path), path.string());
}

MaskMatrix read_mask_csv(const std::filesystem::path& path) {
  return parse_mask_csv(read_text_file(path), path.string());
}

ObservedMatrix read_observed_csv(const std::filesystem::path& path, MissingPolicy policy,
                                 const std::optional<std::filesystem::path>& mask_path) {
  std::optional<MaskMatrix> sidecar;
  if (mask_path) sidecar = read_mask_csv(*mask_path);
  return parse_observed_csv(read_text_file(path), policy, sidecar ? &*sidecar : nullptr,
                            path.string());
}

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_csv(const DenseMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 20);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_number(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_csv(const MaskMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 2);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += m.observed(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path) {
  write_text_file(path, format_csv(m));
}

void write_mask_csv(const MaskMatrix& m, const std::filesystem::path& path) {
  write_text_file(path, format_csv(m));
}

}  // namespace pmu
