#include "mclex/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mclex/errors.hpp"

namespace mclex {

Matrix::Matrix(std::vector<Column> left, Column right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (right_.empty()) throw ShapeError("matrix has no rows");
  for (const auto& c : left_) {
    if (c.size() != right_.size()) {
      throw ShapeError("left column of height " + std::to_string(c.size()) +
                       " in a matrix with " + std::to_string(right_.size()) +
                       " rows");
    }
  }
  auto visit = [this](VarIndex v) {
    if (v == 0) throw VariableError("variable indices start at 1");
    k_ = std::max(k_, v);
  };
  for (const auto& c : left_) std::for_each(c.begin(), c.end(), visit);
  std::for_each(right_.begin(), right_.end(), visit);
}

Matrix Matrix::from_rows(const std::vector<std::vector<VarIndex>>& rows) {
  if (rows.empty()) throw ShapeError("matrix has no rows");
  const std::size_t width = rows.front().size();
  if (width == 0) throw ShapeError("row 1 has no right entry");
  std::vector<Column> left(width - 1, Column(rows.size()));
  Column right(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      throw ShapeError("row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(width));
    }
    for (std::size_t l = 0; l + 1 < width; ++l) left[l][i] = rows[i][l];
    right[i] = rows[i].back();
  }
  return Matrix(std::move(left), std::move(right));
}

std::vector<VarIndex> Matrix::row(std::size_t i) const {
  std::vector<VarIndex> r;
  r.reserve(left_.size() + 1);
  for (const auto& c : left_) r.push_back(c[i]);
  r.push_back(right_[i]);
  return r;
}

std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
  if (auto c = a.rows() <=> b.rows(); c != 0) return c;
  if (auto c = a.left_count() <=> b.left_count(); c != 0) return c;
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  if (auto c = a.left_ <=> b.left_; c != 0) return c;
  return a.right_ <=> b.right_;
}

namespace {

// Order-preserving map of the values in use onto 1..k.
template <typename T>
std::map<T, VarIndex> contiguous_renaming(const std::vector<T>& values) {
  std::map<T, VarIndex> rename;
  for (T v : values) rename.emplace(v, 0);
  if (rename.size() > std::numeric_limits<VarIndex>::max()) {
    throw VariableError("too many distinct variables");
  }
  VarIndex next = 1;
  for (auto& [v, idx] : rename) idx = next++;
  return rename;
}

}  // namespace

Matrix validate(const RawRows& rows) {
  if (rows.empty()) throw ShapeError("matrix has no rows");
  const std::size_t width = rows.front().size();
  std::vector<long long> all;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      throw ShapeError("row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(width));
    }
    for (long long v : rows[i]) {
      if (v < 1) {
        throw VariableError("variable index " + std::to_string(v) +
                            " is not positive");
      }
      all.push_back(v);
    }
  }
  if (all.empty()) throw VariableError("matrix has no variables");
  auto rename = contiguous_renaming(all);
  std::vector<std::vector<VarIndex>> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (long long v : rows[i]) out[i].push_back(rename.at(v));
  }
  return Matrix::from_rows(out);
}

Matrix validate(const Matrix& m) {
  RawRows rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  return validate(rows);
}

Matrix gen_named(NamedMatrix name) {
  switch (name) {
    case NamedMatrix::Mal:
      return Matrix::from_rows({{1, 2, 2, 1}, {2, 2, 1, 1}});
    case NamedMatrix::Maj:
      return Matrix::from_rows({{1, 1, 2, 1}, {1, 2, 1, 1}, {2, 1, 1, 1}});
    case NamedMatrix::Ari:
      return Matrix::from_rows({{1, 2, 2, 1}, {2, 2, 1, 1}, {1, 2, 1, 1}});
  }
  throw DomainError("unknown named matrix");
}

Matrix gen_mn(int n) {
  if (n < 3) throw DomainError("M_n is defined for n >= 3, got " + std::to_string(n));
  if (n > 64) throw DomainError("M_n is only generated for n <= 64");
  const auto rows = static_cast<std::size_t>(n);
  std::vector<Column> left;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < rows; ++j) {
      Column c(rows, 0);
      c[i] = 1;
      c[j] = 1;
      left.push_back(std::move(c));
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    VarIndex next = 2;
    for (auto& c : left) {
      if (c[r] == 0) c[r] = next++;
    }
  }
  return Matrix(std::move(left), Column(rows, 1));
}

Matrix select_rows(const Matrix& m, const std::vector<std::size_t>& idx) {
  if (idx.empty()) throw ShapeError("row selection is empty");
  for (std::size_t i : idx) {
    if (i >= m.rows()) {
      throw IndexError("row " + std::to_string(i + 1) + " out of range 1.." +
                       std::to_string(m.rows()));
    }
  }
  std::vector<Column> left;
  for (const auto& c : m.left()) {
    Column s;
    for (std::size_t i : idx) s.push_back(c[i]);
    left.push_back(std::move(s));
  }
  Column right;
  for (std::size_t i : idx) right.push_back(m.right()[i]);
  return Matrix(std::move(left), std::move(right));
}

Matrix parse_matrix(std::string_view text) {
  RawRows rows;
  std::size_t line_no = 0;
  std::size_t first_width_line = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }

    std::vector<long long> left;
    std::vector<long long> right;
    bool bar = false;
    std::size_t bar_col = 0;
    std::size_t pos = 0;
    bool any = false;
    while (pos < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      any = true;
      const std::size_t col = pos + 1;
      if (line[pos] == '|') {
        if (bar) throw ParseError("second '|' in row", line_no, col);
        bar = true;
        bar_col = col;
        ++pos;
        continue;
      }
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
             line[end] != '|') {
        ++end;
      }
      long long value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
      if (ec != std::errc{} || ptr != line.data() + end) {
        throw ParseError("expected an integer, got '" +
                             std::string(line.substr(pos, end - pos)) + "'",
                         line_no, col);
      }
      if (value < 1) throw ParseError("variable indices start at 1", line_no, col);
      (bar ? right : left).push_back(value);
      pos = end;
    }
    if (!any) continue;
    if (!bar) throw ParseError("missing '|' before the right entry", line_no, line.size() + 1);
    if (right.empty()) throw ParseError("missing right entry after '|'", line_no, bar_col);
    if (right.size() > 1) throw ParseError("more than one right entry", line_no, bar_col);
    left.push_back(right.front());
    if (!rows.empty() && left.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(left.size() - 1) +
                           " left entries, line " + std::to_string(first_width_line) +
                           " has " + std::to_string(rows.front().size() - 1),
                       line_no, 1);
    }
    if (rows.empty()) first_width_line = line_no;
    rows.push_back(std::move(left));
  }
  if (rows.empty()) throw ParseError("no rows", line_no == 0 ? 1 : line_no, 1);
  return validate(rows);
}

Matrix parse_matrix_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  try {
    auto right = j.at("right").get<std::vector<long long>>();
    auto left = j.at("left").get<std::vector<std::vector<long long>>>();
    RawRows rows(right.size());
    for (std::size_t i = 0; i < right.size(); ++i) {
      for (const auto& c : left) {
        if (c.size() != right.size()) throw ParseError("ragged left column", 1, 1);
        rows[i].push_back(c[i]);
      }
      rows[i].push_back(right[i]);
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != right.size()) {
      throw ParseError("\"n\" does not match the right column", 1, 1);
    }
    return validate(rows);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

std::string render_matrix(const Matrix& m, RenderFormat format) {
  if (format == RenderFormat::Json) {
    nlohmann::json j;
    j["n"] = m.rows();
    j["k"] = m.variables();
    j["left"] = m.left();
    j["right"] = m.right();
    return j.dump();
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& c : m.left()) out << c[i] << ' ';
    out << "| " << m.right()[i] << '\n';
  }
  return out.str();
}

}  // namespace mclex
