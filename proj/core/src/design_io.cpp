// Copyright 2025 The ssd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssd/design_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ssd/criteria.hpp"
#include "ssd/error.hpp"

namespace ssd {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    if (i == line.size()) break;
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

int to_int(const Token& token, int line) {
  int value = 0;
  const char* end = token.text.data() + token.text.size();
  auto [ptr, ec] = std::from_chars(token.text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("expected an integer, found '" + std::string(token.text) +
                         "' at line " + std::to_string(line) + ", column " +
                         std::to_string(token.column),
                     line, token.column);
  }
  return value;
}

[[noreturn]] void fail(const std::string& what, int line, int column) {
  throw ParseError(what + " at line " + std::to_string(line) + ", column " +
                       std::to_string(column),
                   line, column);
}

std::string join_levels(const std::vector<int>& levels) {
  std::string out;
  for (size_t i = 0; i < levels.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(levels[i]);
  }
  return out;
}

}  // namespace

std::optional<std::string> DesignFile::get(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void DesignFile::set(std::string key, std::string value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata.emplace_back(std::move(key), std::move(value));
}

DesignFile parse_design_file(std::string_view text) {
  DesignFile file;
  int runs = -1;
  int factors = -1;
  bool have_levels = false;
  std::vector<Level> data;
  int rows_read = 0;
  int line_no = 0;

  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                      : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (rows_read > 0) fail("metadata after data rows", line_no, 1);
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon != std::string_view::npos) {
        file.metadata.emplace_back(std::string(trim(body.substr(0, colon))),
                                   std::string(trim(body.substr(colon + 1))));
      }
      continue;
    }

    const auto tokens = split(raw);
    if (runs < 0) {
      if (tokens.size() != 2) fail("header must be 'n m'", line_no, 1);
      runs = to_int(tokens[0], line_no);
      factors = to_int(tokens[1], line_no);
      if (runs <= 0 || factors <= 0) {
        fail("run and factor counts must be positive", line_no, 1);
      }
      continue;
    }
    if (!have_levels) {
      if (static_cast<int>(tokens.size()) != factors) {
        fail("expected " + std::to_string(factors) + " level counts, found " +
                 std::to_string(tokens.size()),
             line_no, 1);
      }
      for (const auto& t : tokens) {
        const int q = to_int(t, line_no);
        if (q < 1) fail("level count must be positive", line_no, t.column);
        file.levels.push_back(q);
      }
      have_levels = true;
      data.reserve(static_cast<size_t>(runs) * factors);
      continue;
    }
    if (rows_read == runs) fail("more than " + std::to_string(runs) + " rows", line_no, 1);
    if (static_cast<int>(tokens.size()) != factors) {
      fail("expected " + std::to_string(factors) + " entries, found " +
               std::to_string(tokens.size()),
           line_no, tokens.empty() ? 1 : tokens.back().column);
    }
    for (int j = 0; j < factors; ++j) {
      const int v = to_int(tokens[j], line_no);
      if (v < 0 || v >= file.levels[j]) {
        fail("entry " + std::to_string(v) + " outside 0.." +
                 std::to_string(file.levels[j] - 1) + " for column " +
                 std::to_string(j + 1),
             line_no, tokens[j].column);
      }
      data.push_back(v);
    }
    ++rows_read;
  }
  if (runs < 0) fail("missing header", line_no, 1);
  if (!have_levels) fail("missing level line", line_no, 1);
  if (rows_read != runs) {
    fail("expected " + std::to_string(runs) + " rows, found " +
             std::to_string(rows_read),
         line_no, 1);
  }
  file.entries = IntMatrix(runs, factors, std::move(data));
  return file;
}

std::string format_design_file(const DesignFile& file) {
  std::ostringstream out;
  for (const auto& [k, v] : file.metadata) out << "# " << k << ": " << v << '\n';
  out << file.entries.rows() << ' ' << file.entries.cols() << '\n';
  out << join_levels(file.levels) << '\n';
  for (int i = 0; i < file.entries.rows(); ++i) {
    const auto row = file.entries.row(i);
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << row[j];
    }
    out << '\n';
  }
  return out.str();
}

DesignFile read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_design_file(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

void write_text_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.flush()) throw InvalidArgument("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw InvalidArgument("cannot rename onto " + path.string() + ": " +
                          ec.message());
  }
}

void write_design_file(const std::filesystem::path& path,
                       const DesignFile& file) {
  write_text_atomic(path, format_design_file(file));
}

DesignFile to_file(const DesignMatrix& design) {
  DesignFile file{design.entries(), design.level_vector(), {}};
  file.set("kind", "design");
  return file;
}

DesignFile to_file(const DifferenceMatrix& matrix) {
  DesignFile file{matrix.entries(),
                  std::vector<int>(matrix.columns(), matrix.order()),
                  {}};
  file.set("kind", "difference-matrix");
  file.set("group", matrix.group().name());
  return file;
}

IngestedSource ingest(const DesignFile& file, std::filesystem::path origin) {
  IngestedSource out;
  out.path = std::move(origin);
  out.file = file;
  const std::string where = out.path.empty() ? "input" : out.path.string();
  const std::string kind = file.get("kind").value_or("design");

  auto parse_int = [&](const std::string& key, const std::string& text) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw InvalidArgument(where + ": metadata '" + key +
                            "' is not an integer: " + text);
    }
    return v;
  };

  if (kind == "difference-matrix") {
    const int q = file.levels.empty() ? 0 : file.levels.front();
    for (int v : file.levels) {
      if (v != q) {
        throw InvalidArgument(where +
                              ": a difference matrix needs one level count");
      }
    }
    const Group group = file.get("group") ? Group::parse(*file.get("group"))
                                          : Group::for_order(q);
    if (group.order() != q) {
      throw InvalidArgument(where + ": group " + group.name() +
                            " does not match level count " + std::to_string(q));
    }
    try {
      out.difference_matrix.emplace(file.entries, group);
    } catch (const VerificationError& e) {
      throw VerificationError(where + ": " + e.what());
    }
    out.verified.push_back("difference property over " + group.name());
    return out;
  }
  if (kind != "design") {
    throw InvalidArgument(where + ": unknown kind '" + kind + "'");
  }

  try {
    out.design.emplace(file.entries, file.levels);
  } catch (const InvalidArgument& e) {
    throw VerificationError(where + ": " + e.what());
  }
  out.verified.push_back("balance");
  const DesignMatrix& design = *out.design;

  const auto profile = coincidence_profile(design);
  if (profile.lambda.size() == 1) out.lambda = profile.lambda.begin()->first;
  out.orthogonal_array = !strength_two_violation(design).has_value();

  if (const auto declared = file.get("lambda")) {
    const int want = parse_int("lambda", *declared);
    for (const auto& [value, tally] : profile.lambda) {
      if (value != want) {
        throw VerificationError(
            where + ": declared lambda " + std::to_string(want) + " but rows " +
            std::to_string(tally.witness.first + 1) + " and " +
            std::to_string(tally.witness.second + 1) + " coincide in " +
            std::to_string(value) + " columns");
      }
    }
    out.verified.push_back("constant lambda " + std::to_string(want));
  }
  if (const auto declared = file.get("strength")) {
    const int strength = parse_int("strength", *declared);
    if (strength != 2) {
      throw InvalidArgument(where + ": only strength 2 can be verified");
    }
    if (const auto bad = strength_two_violation(design)) {
      throw VerificationError(where + ": columns " +
                              std::to_string(bad->first + 1) + " and " +
                              std::to_string(bad->second + 1) +
                              " are not orthogonal");
    }
    out.verified.push_back("strength 2");
  }
  if (const auto declared = file.get("difference")) {
    const Group group = Group::parse(*declared);
    try {
      out.difference_matrix.emplace(file.entries, group);
    } catch (const VerificationError& e) {
      throw VerificationError(where + ": " + e.what());
    }
    out.verified.push_back("difference property over " + group.name());
  }
  return out;
}

IngestedSource ingest(const std::filesystem::path& path) {
  return ingest(read_design_file(path), path);
}

}  // namespace ssd
