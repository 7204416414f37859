// Copyright 2026 The coopnet Authors
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

#ifndef COOPNET_TEXT_HPP_
#define COOPNET_TEXT_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coopnet::text {

// Line-oriented reader for the comma-separated dialects used throughout:
// no quoting, no embedded commas, optional trailing '\r'.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next non-blank line into `fields`. Returns false at EOF.
  bool next(std::vector<std::string>& fields);

  // 1-based number of the line most recently returned by next().
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::string> split(std::string_view line, char sep = ',');

// Reads the header row and checks it against `expected`, throwing
// EmptyDatasetError on an empty stream and ParseError on mismatch.
void expect_header(CsvReader& reader, const std::vector<std::string>& expected);

// Strict decimal parse of the whole field; nullopt on garbage or trailing
// characters.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Shortest representation that reads back to the identical double.
std::string format_exact(double v);

// printf("%.*g") with the given significant digits.
std::string format_sig(double v, int digits);

std::string trim(std::string_view s);

}  // namespace coopnet::text

#endif  // COOPNET_TEXT_HPP_
